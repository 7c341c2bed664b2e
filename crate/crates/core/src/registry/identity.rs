use std::fmt;

use serde::Serialize;

use crate::arith::{is_prime, is_sum_of_two_squares, jacobi};
use crate::error::Result;
use crate::matrixgen::MatrixSpec;
use crate::multiaffine::VarSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Theorem,
    Conjecture,
    KnownResult,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Theorem => "theorem",
            Status::Conjecture => "conjecture",
            Status::KnownResult => "known_result",
        })
    }
}

/// One side condition on the modulus `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cond {
    Prime,
    /// `n >= k`.
    AtLeast(u64),
    /// `n mod m` is one of the residues.
    Mod(u64, Vec<u64>),
    /// `n mod m` is none of the residues.
    NotMod(u64, Vec<u64>),
    SumOfTwoSquares(bool),
    /// `(n/a) = value`.
    Jacobi(i64, i64),
    /// `(n/m) = value` with `n` on top.
    SymbolOver(u64, i64),
    /// `gcd(n, d) = 1`.
    Coprime(u64),
}

impl Cond {
    pub fn holds(&self, n: u64) -> bool {
        match self {
            Cond::Prime => is_prime(n),
            Cond::AtLeast(k) => n >= *k,
            Cond::Mod(m, rs) => rs.contains(&(n % m)),
            Cond::NotMod(m, rs) => !rs.contains(&(n % m)),
            Cond::SumOfTwoSquares(b) => is_sum_of_two_squares(n) == *b,
            Cond::Jacobi(a, v) => jacobi(*a, n as i64).map(|s| s.as_i64() == *v).unwrap_or(false),
            Cond::SymbolOver(m, v) => jacobi(n as i64, *m as i64).map(|s| s.as_i64() == *v).unwrap_or(false),
            Cond::Coprime(d) => num_integer::gcd(n, *d) == 1,
        }
    }
}

impl fmt::Display for Cond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |rs: &[u64]| rs.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        match self {
            Cond::Prime => write!(f, "n prime"),
            Cond::AtLeast(k) => write!(f, "n >= {k}"),
            Cond::Mod(m, rs) => write!(f, "n = {} (mod {m})", list(rs)),
            Cond::NotMod(m, rs) => write!(f, "n != {} (mod {m})", list(rs)),
            Cond::SumOfTwoSquares(true) => write!(f, "n = a^2 + b^2"),
            Cond::SumOfTwoSquares(false) => write!(f, "n != a^2 + b^2"),
            Cond::Jacobi(a, v) => write!(f, "({a}/n) = {v}"),
            Cond::SymbolOver(m, v) => write!(f, "(n/{m}) = {v}"),
            Cond::Coprime(d) => write!(f, "gcd(n, {d}) = 1"),
        }
    }
}

/// A matrix family with bounds written in terms of the modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyTemplate {
    /// Everything after the `n=` clause in the matrix text form.
    pub body: String,
}

impl FamilyTemplate {
    pub fn new(body: impl Into<String>) -> Self {
        FamilyTemplate { body: body.into() }
    }

    pub fn instantiate(&self, n: u64) -> Result<MatrixSpec> {
        format!("n={n}; {}", self.body).parse()
    }
}

/// Which of the three displayed meta identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MetaKind {
    /// Adding `(jk/p) w` leaves `|f|_{0..n}` unchanged.
    JkInvariance,
    /// `c |f + (jk/p) w|_{1..n} = c |f|_{1..n} - w |f|_{0..n}`.
    JkShift,
    /// The `x + f + (j/p) y + (k/p) z` factorisation over `0..n`.
    Factorisation,
}

/// What the determinant is claimed to satisfy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Claim {
    /// `det = rhs` as polynomials.
    Equals(String),
    /// `det = rhs` for some integer value of `unknown`.
    EqualsWithUnknown {
        rhs: String,
        unknown: String,
        positive: bool,
        /// Values printed alongside the claim.
        table: Vec<(u64, i64)>,
    },
    /// `det = 0 (mod m)` with `m` an integer expression in `n`.
    DivisibleBy(String),
    /// `det = (phi(n)/2) t^2` for some integer `t`.
    HalfTotientTimesSquare,
    /// `(factor * det / n) = 1`.
    QuadraticResidue(i64),
    /// `(det / n) = 0`.
    JacobiZero,
    /// `sum_x (x(x^2+1)/n) = 0` exactly when `n` is not a sum of two squares.
    JacobsthalCriterion,
    /// The `S(d,p)`, `T(d,p)` relations.
    StRelation(i64),
    /// Randomised instances of a meta identity.
    Meta { kind: MetaKind, instances: usize },
}

impl Claim {
    pub fn unknown(&self) -> Option<&str> {
        match self {
            Claim::EqualsWithUnknown { unknown, .. } => Some(unknown),
            _ => None,
        }
    }

    pub fn table(&self) -> &[(u64, i64)] {
        match self {
            Claim::EqualsWithUnknown { table, .. } => table,
            _ => &[],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub conds: Vec<Cond>,
    /// Absent for claims that involve no matrix.
    pub family: Option<FamilyTemplate>,
    pub claim: Claim,
}

impl Branch {
    pub fn applies(&self, n: u64) -> bool {
        n >= 3 && n % 2 == 1 && self.conds.iter().all(|c| c.holds(n))
    }

    pub fn spec(&self, n: u64) -> Result<Option<MatrixSpec>> {
        self.family.as_ref().map(|f| f.instantiate(n)).transpose()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity {
    pub id: String,
    pub status: Status,
    pub branches: Vec<Branch>,
}

impl Identity {
    /// The first branch whose conditions hold at `n`.
    pub fn branch_for(&self, n: u64) -> Option<&Branch> {
        self.branches.iter().find(|b| b.applies(n))
    }

    pub fn unknown(&self) -> Option<&str> {
        self.branches.iter().find_map(|b| b.claim.unknown())
    }

    /// Variables of every branch family at a sample modulus.
    pub fn vars_at(&self, n: u64) -> Result<Option<VarSet>> {
        Ok(match self.branch_for(n) {
            Some(b) => b.spec(n)?.map(|s| s.vars()),
            None => None,
        })
    }
}

/// Builder used by the roster.
pub struct IdentityBuilder {
    identity: Identity,
}

impl IdentityBuilder {
    pub fn new(id: &str, status: Status) -> Self {
        IdentityBuilder {
            identity: Identity {
                id: id.to_string(),
                status,
                branches: Vec::new(),
            },
        }
    }

    pub fn branch(mut self, conds: Vec<Cond>, family: Option<&str>, claim: Claim) -> Self {
        self.identity.branches.push(Branch {
            conds,
            family: family.map(FamilyTemplate::new),
            claim,
        });
        self
    }

    pub fn build(self) -> Identity {
        self.identity
    }
}
