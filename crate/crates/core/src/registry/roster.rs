//! Every built-in identity.
//!
//! Families use the matrix text form without the `n=` clause, with `p`
//! standing for the modulus. Closed forms use the names documented in
//! [`super::rhs`].

use super::identity::{Claim, Cond, Identity, IdentityBuilder, MetaKind, Status};

const FOUR: &str = "vars=x,y,z,w";

fn eq(rhs: &str) -> Claim {
    Claim::Equals(rhs.to_string())
}

fn unknown(rhs: &str, name: &str, positive: bool, table: &[(u64, i64)]) -> Claim {
    Claim::EqualsWithUnknown {
        rhs: rhs.to_string(),
        unknown: name.to_string(),
        positive,
        table: table.to_vec(),
    }
}

fn p1() -> Vec<Cond> {
    vec![Cond::Prime, Cond::Mod(4, vec![1])]
}

fn p3() -> Vec<Cond> {
    vec![Cond::Prime, Cond::Mod(4, vec![3])]
}

fn with(mut conds: Vec<Cond>, extra: Cond) -> Vec<Cond> {
    conds.push(extra);
    conds
}

/// A family with one branch per residue class of `p` mod 4.
fn split(id: &str, status: Status, min: u64, family: &str, rhs1: &str, rhs3: &str) -> Identity {
    IdentityBuilder::new(id, status)
        .branch(with(p1(), Cond::AtLeast(min)), Some(family), eq(rhs1))
        .branch(with(p3(), Cond::AtLeast(min)), Some(family), eq(rhs3))
        .build()
}

fn fam(range: &str, atoms: &[&str], vars: &str) -> String {
    let mut s = format!("range={range}");
    for a in atoms {
        s.push_str("; atom=");
        s.push_str(a);
    }
    if !vars.is_empty() {
        s.push_str("; ");
        s.push_str(vars);
    }
    s
}

const X_P: &[(u64, i64)] = &[(5, 1), (13, -3), (17, 2), (29, 7), (37, -7), (41, 6), (53, 3), (61, 15)];
const Q_P: &[(u64, i64)] = &[
    (7, 1),
    (11, 1),
    (19, 9),
    (23, 15),
    (31, 24),
    (43, 27),
    (47, 72),
    (59, 62),
    (67, 51),
    (71, 259),
    (79, 82),
    (83, 18),
    (103, 349),
    (107, -68),
    (127, 478),
];
const M_P: &[(u64, i64)] = &[(7, 2), (11, 1), (19, -3), (23, -1), (31, 3), (43, 1), (47, 0), (59, 8)];
const N_P: &[(u64, i64)] = &[(5, 1), (13, 11), (17, 39), (29, 68), (37, 230), (41, 1441), (53, 256)];

/// The printed values of each unknown sequence.
pub fn reference_table(unknown: &str) -> &'static [(u64, i64)] {
    match unknown {
        "x_p" => X_P,
        "q_p" => Q_P,
        "m_p" => M_P,
        "n_p" => N_P,
        _ => &[],
    }
}

fn closed_forms() -> Vec<Identity> {
    use Status::*;
    let half = "0..(p-1)/2";
    let one_half = "1..(p-1)/2";
    let mut v = vec![
        split(
            "chapman.c",
            KnownResult,
            5,
            &fam(one_half, &["j+k-1"], "vars=x"),
            "(-1)^((p-1)/4)*2^((p-1)/2)*(b - a*x)",
            "-2^((p-1)/2)*x",
        ),
        split(
            "chapman.cstar",
            KnownResult,
            5,
            &fam("1..(p+1)/2", &["j+k-1"], "vars=x"),
            "(-1)^((p-1)/4)*2^((p-1)/2)*(p*b*x - a)",
            "2^((p-1)/2)",
        ),
        split(
            "chapman.2.10",
            KnownResult,
            5,
            &fam(half, &["j+k"], "vars=x"),
            "leg(2)*2^((p-1)/2)*(p*b*x - a)",
            "2^((p-1)/2)",
        ),
        split(
            "wwn.evil-x",
            KnownResult,
            3,
            &fam(half, &["j-k"], "vars=x"),
            "leg(2)*p*b'*x - a'",
            "1",
        ),
        IdentityBuilder::new("thm1.1.i.m0", Theorem)
            .branch(vec![Cond::Prime, Cond::AtLeast(7)], Some(&fam(half, &[], FOUR)), eq("0"))
            .build(),
        IdentityBuilder::new("thm1.1.i.m1", Theorem)
            .branch(vec![Cond::Prime, Cond::AtLeast(9)], Some(&fam(one_half, &[], FOUR)), eq("0"))
            .build(),
    ];
    for (m, lo) in [("m0", "0"), ("m1", "1")] {
        for (sign, delta) in [("plus", "j^2-k^2"), ("minus", "-1:j^2-k^2")] {
            let range = format!("{lo}..(p-1)/2");
            v.push(
                IdentityBuilder::new(&format!("thm1.1.ii.{m}.{sign}"), Theorem)
                    .branch(
                        with(p1(), Cond::AtLeast(7)),
                        Some(&fam(&range, &["j^2+k^2", delta], "vars=x")),
                        eq("0"),
                    )
                    .build(),
            );
        }
    }
    v.push(
        IdentityBuilder::new("rem1.1", Conjecture)
            .branch(
                p3(),
                Some(&fam(one_half, &["j^2+k^2", "j^2-k^2"], "vars=x")),
                eq("((p-1)/2*x - 1)*p^((p-3)/4)"),
            )
            .build(),
    );
    for kind in ["i.a", "i.b", "ii"] {
        let meta = match kind {
            "i.a" => MetaKind::JkInvariance,
            "i.b" => MetaKind::JkShift,
            _ => MetaKind::Factorisation,
        };
        v.push(
            IdentityBuilder::new(&format!("thm1.2.{kind}"), Theorem)
                .branch(vec![Cond::Prime], None, Claim::Meta { kind: meta, instances: 4 })
                .build(),
        );
    }
    v.extend([
        split(
            "thm1.3.i",
            Theorem,
            5,
            &fam(half, &["j+k"], "vars=x,y,z"),
            "leg(2)*2^((p-1)/2)*(p*b*x - (y+1)*(z+1)*a)",
            "(y+1)*(z+1)*2^((p-1)/2)",
        ),
        split(
            "thm1.3.ii",
            Theorem,
            3,
            &fam(half, &["j-k"], "vars=x,y,z"),
            "leg(2)*p*b'*x - (1+y)*(1+z)*a'",
            "(1+y)*(1-z)",
        ),
        IdentityBuilder::new("cor1.1.a", Theorem)
            .branch(p3(), Some(&fam(half, &["j-k", "j", "-1:k"], "vars=x")), eq("4"))
            .build(),
        IdentityBuilder::new("cor1.1.b", Theorem)
            .branch(
                with(p3(), Cond::AtLeast(5)),
                Some(&fam(half, &["j+k", "j", "k"], "vars=x")),
                eq("2^((p+3)/2)"),
            )
            .build(),
        split(
            "thm1.4.i",
            Theorem,
            5,
            &fam(one_half, &["j+k-1"], "vars=x,y,z"),
            "leg(2)*2^((p-1)/2)*((y*z - x)*a + (y+1)*(z+1)*b)",
            "2^((p-1)/2)*(y*z - x)",
        ),
        split(
            "thm1.4.ii",
            Theorem,
            5,
            &fam("1..(p+1)/2", &["j+k-1"], "vars=x,y,z"),
            "leg(2)*2^((p-1)/2)*(p*b*(x - y*z) - a*(y+1)*(z+1))",
            "2^((p-1)/2)*(y+1)*(z+1)",
        ),
        IdentityBuilder::new("lem2.2.i", Theorem)
            .branch(p1(), Some(&fam(one_half, &["j+k", "-1:j", "-1:k"], "")), eq("leg(2)*2^((p-1)/2)*p*b"))
            .branch(with(p3(), Cond::AtLeast(5)), Some(&fam(one_half, &["j+k", "-1:j", "-1:k"], "")), eq("0"))
            .build(),
        split(
            "lem2.2.ii",
            Theorem,
            3,
            &fam(one_half, &["j-k", "-1:j", "-1:-k"], ""),
            "leg(2)*p*b'",
            "0",
        ),
    ]);
    for d in 1..=3 {
        v.push(
            IdentityBuilder::new(&format!("st.relation.d{d}"), KnownResult)
                .branch(vec![Cond::Prime, Cond::Coprime(d as u64)], None, Claim::StRelation(d))
                .build(),
        );
    }
    v
}

fn four_variable_families() -> Vec<Identity> {
    use Status::Conjecture as C;
    let half = "0..(p-1)/2";
    let one_half = "1..(p-1)/2";
    let short = "0..(p-3)/2";
    let pm = ["j+k", "j-k"];
    vec![
        split(
            "conj3.1.i",
            C,
            5,
            &fam(half, &["j+k"], FOUR),
            "leg(2)*2^((p-1)/2)*(p*b*x + a*(w*x - (y+1)*(z+1)))",
            "2^((p-1)/2)*((y+1)*(z+1) - w*x)",
        ),
        split(
            "conj3.1.ii",
            C,
            3,
            &fam(half, &["j-k"], FOUR),
            "a'*(w*x - (y+1)*(z+1)) + leg(2)*p*b'*x",
            "w*x + (1+y)*(1-z)",
        ),
        split(
            "conj3.2.i",
            C,
            5,
            &fam(short, &["j+k"], FOUR),
            "leg(2)*2^((p-3)/2)*((p*b - 2*a)*x + (a - 2*b)*(w*x - (y+1)*(z+1)))",
            "2^((p-3)/2)*((w*x - (y+1)*(z+1)) - 2*x)",
        ),
        split(
            "conj3.2.ii",
            C,
            3,
            &fam(short, &["j-k"], FOUR),
            "-a'*x - leg(2)*b'*(w*x - (y+1)*(z+1))",
            "x",
        ),
        split(
            "conj3.3",
            C,
            5,
            &fam("0..(p-5)/2", &["j-k"], FOUR),
            "leg(2)*(2*a' - p*b')*x + (a' - 2*b')*((1+y)*(1+z) - w*x)",
            "w*x + (1+y)*(1-z)",
        ),
        IdentityBuilder::new("conj3.4", C)
            .branch(
                with(p3(), Cond::AtLeast(7)),
                Some(&fam("0..(p-7)/2", &["j-k"], "vars=x")),
                eq("floor((p-2)/3)^2*x"),
            )
            .build(),
        split(
            "conj3.5.i",
            C,
            5,
            &fam(one_half, &["j+k"], FOUR),
            "leg(2)*2^((p-1)/2)*(a*(w - x) + b + (b - 1)*(y + z) - ((p+1)*b - 2)*(w*x - y*z))",
            "-2^((p-1)/2)*(w + x + (-1)^((h-1)/2)*(y + z + 2*y*z - 2*w*x))",
        ),
        split(
            "conj3.5.ii",
            C,
            5,
            &fam(one_half, &["j-k"], FOUR),
            "a'*(w - x) + leg(2)*(b' + (b' - 1)*(y + z) + ((p+1)*b' - 2)*(y*z - w*x))",
            "w + x - (-1)^((h-1)/2)*(y + z)",
        ),
        split(
            "conj3.6.i",
            C,
            5,
            &fam("1..(p-3)/2", &["j+k"], FOUR),
            "leg(2)*2^((p-3)/2)*(b - a*x + (a - 2*b)*w + (b - 1)*(y + z) + ((p+1)*b - 2*(a+1))*(y*z - w*x))",
            "2^((p-3)/2)*(w + x + 2*(w*x - y*z) + (-1)^((h-1)/2)*(y + z + 2*y*z - 2*w*x))",
        ),
        split(
            "conj3.6.ii",
            C,
            5,
            &fam("1..(p-3)/2", &["j-k"], FOUR),
            "(a' - 2*b') + leg(2)*((2*a' - p*b')*x - b'*w) + (a' - 2*b' + 1)*(y + z) + 2*(b' - 1)*(w*x - y*z)",
            "1 + (1 - (-1)^((h-1)/2)*leg(2))*(2*(w*x - y*z) + y - z)",
        ),
        split(
            "conj3.7.i",
            C,
            5,
            &fam(half, &pm, FOUR),
            "leg(2)*p^((p+3)/4)*x",
            "(-1)^((h-1)/2)*p^((p-3)/4)*(p*x + (2 - leg(2))*h*((y+2)*z - w*x))",
        ),
        IdentityBuilder::new("conj3.7.ii", C)
            .branch(
                p1(),
                Some(&fam(half, &["j+k", "-1:j-k"], "vars=y,z")),
                unknown("4*p^((p-5)/4)*x_p*y*z", "x_p", false, X_P),
            )
            .build(),
        IdentityBuilder::new("conj3.8.i.a", C)
            .branch(p1(), Some(&fam(one_half, &["j+k", "-1:j-k"], "")), eq("(-p)^((p-1)/4)"))
            .build(),
        IdentityBuilder::new("conj3.8.i.b", C)
            .branch(
                p1(),
                Some(&fam(one_half, &pm, FOUR)),
                eq("(-p)^((p-5)/4)*(((p-1)/2)^2*w*x - ((p-1)/2*y - 1)*((p-1)/2*z - 1))"),
            )
            .build(),
        IdentityBuilder::new("conj3.8.ii", C)
            .branch(
                with(p3(), Cond::AtLeast(5)),
                Some(&fam(one_half, &pm, "vars=x,y,w")),
                unknown(
                    "(-1)^((h+1)/2)*p^((p-3)/4)*((p-1)/2*y - 1 + (2 - leg(2))*h*(w + x) - leg(2)*(16*q_p/p)*w*x)",
                    "q_p",
                    false,
                    Q_P,
                ),
            )
            .build(),
        IdentityBuilder::new("conj3.9", C)
            .branch(
                with(p1(), Cond::AtLeast(5)),
                Some(&fam(short, &pm, FOUR)),
                eq("leg(2)*p^((p-5)/4)*(p*x - w*x + (y+2)*(z+2))"),
            )
            .branch(
                with(p3(), Cond::AtLeast(5)),
                Some(&fam(short, &pm, "vars=x,y,w")),
                unknown("(-1)^((h+1)/2)*p^((p-7)/4)*(p - 2*m_p*w)*x", "m_p", false, M_P),
            )
            .build(),
    ]
}

fn shifted_families() -> Vec<Identity> {
    use Status::Conjecture as C;
    let half = "0..(p-1)/2";
    let one_half = "1..(p-1)/2";
    let mut v = vec![
        split(
            "conj4.1.i",
            C,
            5,
            &fam(one_half, &["j+k-1"], FOUR),
            "leg(2)*2^((p-1)/2)*((y*z - (w+1)*x)*a + (w*(1-x) + (y+1)*(z+1))*b)",
            "2^((p-1)/2)*(y*z - (w+1)*x)",
        ),
        split(
            "conj4.1.ii",
            C,
            5,
            &fam("1..(p+1)/2", &["j+k-1"], FOUR),
            "leg(2)*2^((p-1)/2)*(p*b*((w+1)*x - y*z) + a*(w*(x-1) - (y+1)*(z+1)))",
            "2^((p-1)/2)*(w*(1-x) + (y+1)*(z+1))",
        ),
        split(
            "conj4.2",
            C,
            5,
            &fam("1..(p-3)/2", &["j+k-1"], FOUR),
            "leg(2)*2^((p-5)/2)*((2 - leg(2))*a - p*b)*x \
             + leg(2)*2^((p-5)/2)*(a + (leg(2) - 2)*b)*(w + y + z + 1) \
             + leg(2)*2^((p-5)/2)*((p-1)*b + (leg(2) - 1)*(a + b))*(y*z - w*x)",
            "2^((p-5)/2)*((leg(2) - 2)*x - w - y - z - 1 + (1 - leg(2))*(y*z - w*x))",
        ),
        split(
            "conj4.3",
            C,
            5,
            &fam(half, &["j+k-1"], FOUR),
            "leg(2)*2^((p-3)/2)*(p*b - 2*a)*(w + y + z + 1) \
             + leg(2)*2^((p-3)/2)*((2*b - a)*p*x + ((p-2)*a - p*b)*(y*z - w*x))",
            "2^((p-3)/2)*(2*w*(1-x) + 2*(y+1)*(z+1) + p*((w+1)*x - y*z))",
        ),
        IdentityBuilder::new("conj4.4", C)
            .branch(
                with(p3(), Cond::AtLeast(5)),
                Some(&fam("0..(p-3)/2", &["j+k-1"], FOUR)),
                eq("2^((p-5)/2)*((p/2*(2 - leg(2)) - 4)*x + (p/2 - 2 - leg(2))*(w + y + z + 1)) \
                    + 2^((p-5)/2)*(p/2*(leg(2) - 1) + 2 - leg(2))*(y*z - w*x)"),
            )
            .build(),
        split(
            "conj4.5",
            C,
            5,
            &fam(half, &["j+k+1"], FOUR),
            "leg(2)*2^((p-1)/2)*p*b*(x + (p-2)/2*(y*z - w*x)) \
             + leg(2)*2^((p-1)/2)*a*(w*(x + (p-2)/2) - (y+1)*(z+1))",
            "2^((p-1)/2)*(w*((p-2)/2 - x) + (y+1)*(z+1))",
        ),
        IdentityBuilder::new("conj4.6", C)
            .branch(
                with(p1(), Cond::AtLeast(5)),
                Some(&fam(one_half, &["j+k+1"], "vars=x,y,z")),
                unknown(
                    "leg(2)*2^((p-3)/2)*((p*b - 2*a)*x + 2*(n_p + b - a)*y*z) \
                     + leg(2)*2^((p-3)/2)*((2*b - a - 1)*(y + z + 1) + 1)",
                    "n_p",
                    true,
                    N_P,
                ),
            )
            .branch(
                with(p3(), Cond::AtLeast(5)),
                Some(&fam(one_half, &["j+k+1"], FOUR)),
                eq("2^((p-3)/2)*(1 - (-1)^((h-1)/2))*(y + z + 2*(y*z - w*x)) \
                    + 2^((p-3)/2)*((p-3)*(y*z - w*x + w/2) - 2*x + 1)"),
            )
            .build(),
        split(
            "conj4.7",
            C,
            5,
            &fam(half, &["j-k+1"], FOUR),
            "(p*b' - a')*(w*(1-x) + (y+1)*(z+1)) + p*(w*x - (y+1)*z + leg(2)*(b' - a')*((1+w)*x - y*z))",
            "1 - leg(2)*p*x + w + y + (p*leg(2)*(-1)^((h-1)/2) - 1)*z \
             + (p*leg(2)*(1 + (-1)^((h-1)/2)) - 1)*(y*z - w*x)",
        ),
        split(
            "conj4.8",
            C,
            5,
            &fam("0..(p-3)/2", &["j-k+1"], FOUR),
            "(p*b' - a')*((w+1)*x - y*z) + leg(2)*(w*x - (y+1)*z) + leg(2)*(b' - a')*(w*(1-x) + (y+1)*(z+1))",
            "x - leg(2)*(w + y - z + 1) - (-1)^((h-1)/2)*z + (1 + (-1)^((h-1)/2) - leg(2))*(w*x - y*z)",
        ),
        split(
            "conj4.9",
            C,
            5,
            &fam(one_half, &["j-k+1"], FOUR),
            "leg(2)*(p-1)/2*((y+1)*z - w*x) + (p*b' - a')*((w+1)*x - y*z) \
             + leg(2)*(b' - a')*(w*(1-x) + (y+1)*(z+1))",
            "(w+1)*x - y*z + leg(2)*((y+1)*(z-1) - w*(x+1)) + (-1)^((h-1)/2)*(p+1)/2*(w*x - (y+1)*z)",
        ),
    ];
    for (tag, d1, d2) in [("pp", 1, 1), ("pm", 1, -1), ("mp", -1, 1), ("mm", -1, -1)] {
        let quad = format!("{d1}:j^2{}k^2", if d2 > 0 { "+" } else { "-" });
        v.push(
            IdentityBuilder::new(&format!("conj4.10.i.{tag}"), C)
                .branch(p1(), Some(&fam(half, &["j+k", "j-k", &quad], "")), Claim::QuadraticResidue(2))
                .build(),
        );
    }
    v.push(
        IdentityBuilder::new("conj4.10.ii", C)
            .branch(p3(), Some(&fam(half, &["j+k", "j^2+k^2"], "")), Claim::QuadraticResidue(2))
            .build(),
    );
    v
}

/// `{c,d}_n` over `2 <= j,k <= n-2`.
pub fn binary_form_family(c: i64, d: i64) -> String {
    format!("range=2..p-2; atom=j^2+({c})*j*k+({d})*k^2")
}

fn binary_form_families() -> Vec<Identity> {
    use Cond::*;
    use Status::Conjecture as C;
    let zero = |id: &str, c, d, conds: Vec<Cond>| {
        IdentityBuilder::new(id, C)
            .branch(conds, Some(&binary_form_family(c, d)), eq("0"))
            .build()
    };
    let divisible = |id: &str, c, d, conds: Vec<Cond>, m: &str| {
        IdentityBuilder::new(id, C)
            .branch(conds, Some(&binary_form_family(c, d)), Claim::DivisibleBy(m.into()))
            .build()
    };
    let m4_1 = || Mod(4, vec![1]);
    vec![
        IdentityBuilder::new("thm5.1", Status::Theorem)
            .branch(vec![m4_1()], None, Claim::JacobsthalCriterion)
            .build(),
        zero("conj5.1.i", 3, 2, vec![m4_1(), SumOfTwoSquares(false)]),
        divisible("conj5.1.ii", 3, 2, vec![Mod(4, vec![3])], "phi(n)/2"),
        IdentityBuilder::new("conj5.1.iii", C)
            .branch(vec![Mod(8, vec![3])], Some(&binary_form_family(3, 2)), Claim::HalfTotientTimesSquare)
            .build(),
        zero("conj5.2.i", 2, 2, vec![Prime, Mod(24, vec![13, 19])]),
        divisible("conj5.2.ii", 2, 2, vec![Prime, Mod(24, vec![17, 23])], "p"),
        zero("conj5.3.i.a", 4, 2, vec![Mod(8, vec![5])]),
        zero("conj5.3.i.b", 8, 8, vec![Mod(8, vec![5])]),
        zero("conj5.3.ii", 3, 3, vec![Mod(12, vec![5])]),
        zero("conj5.4.a", 42, -7, vec![m4_1(), SymbolOver(7, -1)]),
        zero("conj5.4.b", 21, 112, vec![m4_1(), SymbolOver(7, -1)]),
        divisible("conj5.5.i.a", 2, 3, vec![AtLeast(5)], "n"),
        divisible("conj5.5.i.b", 2, 3, vec![AtLeast(5), NotMod(12, vec![1, 11])], "n^2"),
        divisible("conj5.5.ii", 6, 15, vec![AtLeast(9)], "n"),
        zero("conj5.6.i", 5, 5, vec![Mod(20, vec![13, 17]), SumOfTwoSquares(true)]),
        IdentityBuilder::new("conj5.6.ii.a", C)
            .branch(vec![Mod(20, vec![11, 19])], Some(&binary_form_family(5, 5)), Claim::JacobiZero)
            .build(),
        IdentityBuilder::new("conj5.6.ii.b", C)
            .branch(vec![Mod(60, vec![9]), AtLeast(70)], Some(&binary_form_family(5, 5)), Claim::JacobiZero)
            .build(),
        zero("conj5.7.i", 10, 9, vec![Mod(12, vec![5]), SumOfTwoSquares(true)]),
        divisible("conj5.7.ii", 10, 9, vec![Prime, Mod(12, vec![11])], "p"),
        zero("conj5.8.i", 8, 18, vec![Mod(24, vec![13, 17]), SumOfTwoSquares(true)]),
        divisible("conj5.8.ii", 8, 18, vec![Prime, Mod(24, vec![19])], "p^2"),
        divisible("conj5.8.iii", 8, 18, vec![Prime, Mod(24, vec![23])], "p"),
    ]
}

/// The full built-in roster in a fixed order.
pub fn builtin() -> Vec<Identity> {
    let mut v = closed_forms();
    v.extend(four_variable_families());
    v.extend(shifted_families());
    v.extend(binary_form_families());
    v
}
