//! Declarative construction of symbol matrices.
//!
//! An entry at `(j, k)` is
//! `sum_i c_i (Q_i(j,k)/n) + x + y (j/n) + z (k/n) + w (jk/n)` where each
//! `Q_i` is a quadratic [`Atom`]. The four perturbations are rank one, since
//! `(jk/n) = (j/n)(k/n)`.
//!
//! # Text form
//!
//! ```text
//! n=13; rows=0..(n-1)/2; cols=0..(n-1)/2; atom=j+k; atom=-1:j-k; vars=x,y,z,w
//! ```
//!
//! Clauses are separated by `;`. `p` is accepted for `n`, and `range` sets
//! both `rows` and `cols`. Bounds are integer expressions in `n` (or `p`).
//! `atom=<expr>` adds a symbol with coefficient 1 and may repeat;
//! `atom=<c>:<expr>` gives coefficient `c`. `<expr>` is a quadratic in `j`
//! and `k` with integer coefficients. `vars` lists any of `x,y,z,w`
//! (omitted or `none` for a plain matrix).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{is_prime, SymbolTable};
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::matrix::IntMatrix;
use crate::multiaffine::{Assignment, Var, VarSet};

/// `alpha j^2 + beta jk + gamma k^2 + delta j + eps_coef k + zeta`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Atom {
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
    pub delta: i64,
    pub eps_coef: i64,
    pub zeta: i64,
}

impl Atom {
    /// `delta j + eps k + zeta`.
    pub const fn linear(delta: i64, eps_coef: i64, zeta: i64) -> Atom {
        Atom {
            alpha: 0,
            beta: 0,
            gamma: 0,
            delta,
            eps_coef,
            zeta,
        }
    }

    /// `j^2 + c jk + d k^2`.
    pub const fn binary_form(c: i64, d: i64) -> Atom {
        Atom {
            alpha: 1,
            beta: c,
            gamma: d,
            delta: 0,
            eps_coef: 0,
            zeta: 0,
        }
    }

    fn coefficients(&self) -> [i64; 6] {
        [self.alpha, self.beta, self.gamma, self.delta, self.eps_coef, self.zeta]
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients().iter().all(|&c| c == 0)
    }

    /// The value reduced into `[0, n)`.
    #[inline]
    pub fn eval_mod(&self, j: i64, k: i64, n: u64) -> i64 {
        let n = n as i128;
        let (j, k) = (j as i128, k as i128);
        let v = self.alpha as i128 * j * j
            + self.beta as i128 * j * k
            + self.gamma as i128 * k * k
            + self.delta as i128 * j
            + self.eps_coef as i128 * k
            + self.zeta as i128;
        v.rem_euclid(n) as i64
    }

    fn add(self, o: Atom) -> Atom {
        Atom {
            alpha: self.alpha + o.alpha,
            beta: self.beta + o.beta,
            gamma: self.gamma + o.gamma,
            delta: self.delta + o.delta,
            eps_coef: self.eps_coef + o.eps_coef,
            zeta: self.zeta + o.zeta,
        }
    }

    fn scale(self, c: i64) -> Atom {
        Atom {
            alpha: self.alpha * c,
            beta: self.beta * c,
            gamma: self.gamma * c,
            delta: self.delta * c,
            eps_coef: self.eps_coef * c,
            zeta: self.zeta * c,
        }
    }

    fn degree(&self) -> u32 {
        if self.alpha != 0 || self.beta != 0 || self.gamma != 0 {
            2
        } else if self.delta != 0 || self.eps_coef != 0 {
            1
        } else {
            0
        }
    }

    fn mul(self, o: Atom) -> Result<Atom> {
        if self.degree() + o.degree() > 2 {
            return Err(Error::Parse("symbol argument has degree above 2".into()));
        }
        let (a, b) = (self, o);
        Ok(Atom {
            alpha: a.alpha * b.zeta + b.alpha * a.zeta + a.delta * b.delta,
            beta: a.beta * b.zeta + b.beta * a.zeta + a.delta * b.eps_coef + a.eps_coef * b.delta,
            gamma: a.gamma * b.zeta + b.gamma * a.zeta + a.eps_coef * b.eps_coef,
            delta: a.delta * b.zeta + b.delta * a.zeta,
            eps_coef: a.eps_coef * b.zeta + b.eps_coef * a.zeta,
            zeta: a.zeta * b.zeta,
        })
    }

    fn from_expr(e: &Expr) -> Result<Atom> {
        let small = |n: &BigInt| {
            n.to_i64()
                .ok_or_else(|| Error::Parse(format!("coefficient {n} too large")))
        };
        Ok(match e {
            Expr::Num(n) => Atom::linear(0, 0, small(n)?),
            Expr::Ident(s) if s == "j" => Atom::linear(1, 0, 0),
            Expr::Ident(s) if s == "k" => Atom::linear(0, 1, 0),
            Expr::Neg(a) => Atom::from_expr(a)?.scale(-1),
            Expr::Add(a, b) => Atom::from_expr(a)?.add(Atom::from_expr(b)?),
            Expr::Sub(a, b) => Atom::from_expr(a)?.add(Atom::from_expr(b)?.scale(-1)),
            Expr::Mul(a, b) => Atom::from_expr(a)?.mul(Atom::from_expr(b)?)?,
            Expr::Pow(a, b) => {
                let base = Atom::from_expr(a)?;
                match b.as_ref() {
                    Expr::Num(n) if n == &BigInt::from(2) => base.mul(base)?,
                    Expr::Num(n) if n == &BigInt::from(1) => base,
                    Expr::Num(n) if n.is_zero() => Atom::linear(0, 0, 1),
                    _ => return Err(Error::Parse(format!("unsupported exponent in `{e}`"))),
                }
            }
            _ => return Err(Error::Parse(format!("`{e}` is not a quadratic in j, k"))),
        })
    }
}

impl FromStr for Atom {
    type Err = Error;
    fn from_str(s: &str) -> Result<Atom> {
        let a = Atom::from_expr(&Expr::parse(s)?)?;
        if a.is_zero() {
            return Err(Error::Parse(format!("atom `{s}` is identically zero")));
        }
        Ok(a)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["j^2", "j*k", "k^2", "j", "k", ""];
        let mut first = true;
        for (c, name) in self.coefficients().into_iter().zip(names) {
            if c == 0 {
                continue;
            }
            let mag = c.abs();
            let body = match (name.is_empty(), mag) {
                (true, _) => mag.to_string(),
                (false, 1) => name.to_string(),
                (false, _) => format!("{mag}*{name}"),
            };
            match (first, c < 0) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, "+{body}")?,
                (false, true) => write!(f, "-{body}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// An inclusive index interval; `lo > hi` means empty.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IndexRange {
    pub lo: i64,
    pub hi: i64,
}

impl IndexRange {
    pub fn new(lo: i64, hi: i64) -> Self {
        IndexRange { lo, hi }
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1).max(0) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

impl fmt::Display for IndexRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

/// One concrete matrix family at a fixed odd modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixSpec {
    modulus: u64,
    rows: IndexRange,
    cols: IndexRange,
    atoms: Vec<(i64, Atom)>,
    vars: VarSet,
}

impl MatrixSpec {
    pub fn new(
        modulus: u64,
        rows: IndexRange,
        cols: IndexRange,
        atoms: Vec<(i64, Atom)>,
        vars: VarSet,
    ) -> Result<Self> {
        if modulus < 3 || modulus % 2 == 0 {
            return Err(Error::BadModulus(modulus as i64));
        }
        if rows.len() != cols.len() {
            return Err(Error::NotSquare {
                rows: rows.len(),
                cols: cols.len(),
            });
        }
        Ok(MatrixSpec {
            modulus,
            rows,
            cols,
            atoms,
            vars,
        })
    }

    /// Same index range for rows and columns.
    pub fn square(modulus: u64, range: IndexRange, atoms: Vec<(i64, Atom)>, vars: VarSet) -> Result<Self> {
        MatrixSpec::new(modulus, range, range, atoms, vars)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn vars(&self) -> VarSet {
        self.vars
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> IndexRange {
        self.rows
    }

    pub fn cols(&self) -> IndexRange {
        self.cols
    }

    pub fn atoms(&self) -> &[(i64, Atom)] {
        &self.atoms
    }

    pub fn with_vars(mut self, vars: VarSet) -> Self {
        self.vars = vars;
        self
    }

    /// Splits the family into the atom matrix and the two symbol vectors.
    pub fn decompose(&self) -> FamilyDecomposition {
        let table = SymbolTable::new(self.modulus).expect("modulus validated");
        let base = IntMatrix::from_fn(self.dim(), self.dim(), |r, c| {
            let (j, k) = (self.rows.lo + r as i64, self.cols.lo + c as i64);
            self.atoms
                .iter()
                .map(|(coef, atom)| coef * table.get(atom.eval_mod(j, k, self.modulus)))
                .sum()
        });
        FamilyDecomposition {
            base,
            u: self.rows.iter().map(|j| table.get(j)).collect(),
            v: self.cols.iter().map(|k| table.get(k)).collect(),
            vars: self.vars,
        }
    }

    /// The integer matrix at the given values of the enabled variables.
    pub fn build_numeric(&self, assign: &Assignment) -> Result<IntMatrix> {
        self.decompose().assemble(assign)
    }
}

impl fmt::Display for MatrixSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}; rows={}; cols={}", self.modulus, self.rows, self.cols)?;
        for (c, a) in &self.atoms {
            if *c == 1 {
                write!(f, "; atom={a}")?;
            } else {
                write!(f, "; atom={c}:{a}")?;
            }
        }
        if !self.vars.is_empty() {
            write!(f, "; vars={}", self.vars)?;
        }
        Ok(())
    }
}

impl FromStr for MatrixSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<MatrixSpec> {
        let mut modulus: Option<u64> = None;
        let mut rows_src = None;
        let mut cols_src = None;
        let mut atoms = Vec::new();
        let mut vars = VarSet::EMPTY;
        for clause in s.split(';').map(str::trim).filter(|c| !c.is_empty()) {
            let (key, value) = clause
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("clause `{clause}` lacks `=`")))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "n" | "p" => {
                    modulus = Some(
                        value
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad modulus `{value}`")))?,
                    )
                }
                "rows" => rows_src = Some(value.to_string()),
                "cols" => cols_src = Some(value.to_string()),
                "range" => {
                    rows_src = Some(value.to_string());
                    cols_src = Some(value.to_string());
                }
                "atom" => {
                    let (coef, body) = match value.split_once(':') {
                        Some((c, b)) => (
                            c.trim()
                                .parse::<i64>()
                                .map_err(|_| Error::Parse(format!("bad coefficient `{c}`")))?,
                            b,
                        ),
                        None => (1, value),
                    };
                    atoms.push((coef, body.parse()?));
                }
                "vars" => vars = value.parse()?,
                _ => return Err(Error::Parse(format!("unknown key `{key}`"))),
            }
        }
        let n = modulus.ok_or_else(|| Error::Parse("missing `n=`".into()))?;
        let rows = parse_range(rows_src.as_deref().ok_or_else(|| Error::Parse("missing rows".into()))?, n)?;
        let cols = parse_range(cols_src.as_deref().ok_or_else(|| Error::Parse("missing cols".into()))?, n)?;
        MatrixSpec::new(n, rows, cols, atoms, vars)
    }
}

/// Parses `lo..hi` where both ends are integer expressions in `n`/`p`.
pub fn parse_range(src: &str, n: u64) -> Result<IndexRange> {
    let (lo, hi) = src
        .split_once("..")
        .ok_or_else(|| Error::Parse(format!("range `{src}` lacks `..`")))?;
    let lookup = |name: &str| match name {
        "n" | "p" => Some(BigRational::from_integer(n.into())),
        _ => None,
    };
    Ok(IndexRange::new(
        Expr::parse(lo)?.eval_integer(&lookup)?,
        Expr::parse(hi)?.eval_integer(&lookup)?,
    ))
}

/// The atom matrix `M` and the vectors `u_j = (j/n)`, `v_k = (k/n)` with
/// `full = M + x 11^T + y u1^T + z 1v^T + w uv^T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyDecomposition {
    pub base: IntMatrix,
    pub u: Vec<i64>,
    pub v: Vec<i64>,
    pub vars: VarSet,
}

impl FamilyDecomposition {
    pub fn assemble(&self, assign: &Assignment) -> Result<IntMatrix> {
        let value = |var: Var| -> Result<i64> {
            if self.vars.contains(var) {
                assign.require(var)
            } else {
                Ok(0)
            }
        };
        let (x, y, z, w) = (value(Var::X)?, value(Var::Y)?, value(Var::Z)?, value(Var::W)?);
        let n = self.base.rows();
        Ok(IntMatrix::from_fn(n, n, |r, c| {
            let (uj, vk) = (self.u[r], self.v[c]);
            self.base[(r, c)] + x + y * uj + z * vk + w * uj * vk
        }))
    }
}

/// Which of the two Chapman matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChapmanVariant {
    /// `[x + ((j+k-1)/p)]` over `1 <= j,k <= (p-1)/2`.
    C,
    /// The same entries over `1 <= j,k <= (p+1)/2`.
    CStar,
}

pub fn chapman_spec(p: u64, variant: ChapmanVariant) -> Result<MatrixSpec> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let half = (p as i64 - 1) / 2;
    let hi = match variant {
        ChapmanVariant::C => half,
        ChapmanVariant::CStar => half + 1,
    };
    MatrixSpec::square(
        p,
        IndexRange::new(1, hi),
        vec![(1, Atom::linear(1, 1, -1))],
        VarSet::of(&[Var::X]),
    )
}

/// `C_p(x)` or `C*_p(x)` at an integer `x`.
pub fn chapman_matrix(p: u64, variant: ChapmanVariant, x: i64) -> Result<IntMatrix> {
    chapman_spec(p, variant)?.build_numeric(&Assignment::new().set(Var::X, x))
}
