//! Determinants of perturbed families as exact multiaffine polynomials.
//!
//! Each of `x, y, z, w` multiplies a rank-one matrix, so the determinant has
//! degree at most one in each of them. It is recovered from its values at
//! the `2^k` corners of `{0,1}^k` by Moebius inversion over the subset
//! lattice.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::detengine::{det, EngineChoice};
use crate::error::{Error, Result};
use crate::matrixgen::MatrixSpec;

/// One of the four perturbation variables, in canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    Z,
    W,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::X, Var::Y, Var::Z, Var::W];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> char {
        ['x', 'y', 'z', 'w'][self.index()]
    }

    pub fn from_name(c: char) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == c)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// A subset of `{x, y, z, w}` as a bitmask over canonical indices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarSet(u8);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);
    pub const ALL: VarSet = VarSet(0b1111);

    pub fn from_bits(bits: u8) -> VarSet {
        VarSet(bits & 0b1111)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn of(vars: &[Var]) -> VarSet {
        VarSet(vars.iter().fold(0, |m, v| m | 1 << v.index()))
    }

    pub fn contains(self, v: Var) -> bool {
        self.0 & (1 << v.index()) != 0
    }

    pub fn with(self, v: Var) -> VarSet {
        VarSet(self.0 | 1 << v.index())
    }

    pub fn union(self, o: VarSet) -> VarSet {
        VarSet(self.0 | o.0)
    }

    pub fn is_subset_of(self, o: VarSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Var> {
        Var::ALL.into_iter().filter(move |v| self.contains(*v))
    }

    /// Every subset, as canonical bitmasks, ordered by size then
    /// lexicographically in variable order.
    pub fn subsets_canonical(self) -> Vec<VarSet> {
        let mut subs: Vec<VarSet> = (0..=self.0)
            .filter(|&m| m & !self.0 == 0)
            .map(VarSet)
            .collect();
        subs.sort_by_key(|s| (s.len(), s.iter().map(Var::index).collect::<Vec<_>>()));
        subs
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", names.join(","))
    }
}

impl FromStr for VarSet {
    type Err = Error;
    fn from_str(s: &str) -> Result<VarSet> {
        let s = s.trim();
        if s.is_empty() || s == "none" {
            return Ok(VarSet::EMPTY);
        }
        s.split(',').try_fold(VarSet::EMPTY, |acc, part| {
            let part = part.trim();
            let mut chars = part.chars();
            match (chars.next().and_then(Var::from_name), chars.next()) {
                (Some(v), None) => Ok(acc.with(v)),
                _ => Err(Error::Parse(format!("unknown variable `{part}`"))),
            }
        })
    }
}

/// Integer values for some of the variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment([Option<i64>; 4]);

impl Assignment {
    pub fn new() -> Self {
        Assignment::default()
    }

    pub fn set(mut self, v: Var, value: i64) -> Self {
        self.0[v.index()] = Some(value);
        self
    }

    pub fn get(&self, v: Var) -> Option<i64> {
        self.0[v.index()]
    }

    /// The corner of `{0,1}^4` whose ones are exactly `subset`, restricted to
    /// `vars`.
    pub fn corner(vars: VarSet, subset: VarSet) -> Self {
        let mut a = Assignment::new();
        for v in vars.iter() {
            a = a.set(v, i64::from(subset.contains(v)));
        }
        a
    }

    /// The value of `v`, or zero when unset.
    pub fn value_or_zero(&self, v: Var) -> i64 {
        self.get(v).unwrap_or(0)
    }

    pub fn require(&self, v: Var) -> Result<i64> {
        self.get(v).ok_or(Error::MissingVariable(v.name()))
    }
}

/// An integer polynomial of degree at most one in each variable of `vars`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiAffinePoly {
    vars: VarSet,
    /// Indexed by canonical bitmask; entries outside `vars` stay zero.
    coeffs: [BigInt; 16],
}

impl MultiAffinePoly {
    pub fn zero(vars: VarSet) -> Self {
        MultiAffinePoly {
            vars,
            coeffs: Default::default(),
        }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let mut p = MultiAffinePoly::zero(VarSet::EMPTY);
        p.coeffs[0] = c.into();
        p
    }

    pub fn vars(&self) -> VarSet {
        self.vars
    }

    /// Coefficient of the monomial `prod_{v in s} v`.
    pub fn coeff(&self, s: VarSet) -> &BigInt {
        &self.coeffs[s.bits() as usize]
    }

    pub fn set_coeff(&mut self, s: VarSet, c: BigInt) -> Result<()> {
        if !s.is_subset_of(self.vars) {
            return Err(Error::Eval(format!("monomial {s} outside variables {}", self.vars)));
        }
        self.coeffs[s.bits() as usize] = c;
        Ok(())
    }

    /// `(subset, coefficient)` for every monomial, zero or not.
    pub fn terms(&self) -> impl Iterator<Item = (VarSet, &BigInt)> {
        self.vars
            .subsets_canonical()
            .into_iter()
            .map(|s| (s, &self.coeffs[s.bits() as usize]))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The same polynomial over a larger variable set.
    pub fn embed(&self, vars: VarSet) -> Result<Self> {
        if !self.vars.is_subset_of(vars) {
            return Err(Error::Eval(format!("cannot embed {{{}}} into {{{vars}}}", self.vars)));
        }
        Ok(MultiAffinePoly {
            vars,
            coeffs: self.coeffs.clone(),
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        let vars = self.vars.union(other.vars);
        let mut out = MultiAffinePoly::zero(vars);
        for i in 0..16 {
            out.coeffs[i] = &self.coeffs[i] - &other.coeffs[i];
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let vars = self.vars.union(other.vars);
        let mut out = MultiAffinePoly::zero(vars);
        for i in 0..16 {
            out.coeffs[i] = &self.coeffs[i] + &other.coeffs[i];
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = self.clone();
        for v in out.coeffs.iter_mut() {
            *v *= c;
        }
        out
    }

    /// Exact evaluation; every variable of the polynomial needs a value.
    pub fn evaluate(&self, point: &Assignment) -> Result<BigInt> {
        let values: Vec<(Var, i64)> = self
            .vars
            .iter()
            .map(|v| point.require(v).map(|x| (v, x)))
            .collect::<Result<_>>()?;
        let mut total = BigInt::zero();
        for (s, c) in self.terms() {
            if c.is_zero() {
                continue;
            }
            let mono = values
                .iter()
                .filter(|(v, _)| s.contains(*v))
                .fold(BigInt::one(), |acc, (_, x)| acc * *x);
            total += c * mono;
        }
        Ok(total)
    }

    /// Substitutes integer values for the listed variables only.
    pub fn partial_evaluate(&self, point: &Assignment) -> Self {
        let fixed: Vec<(Var, i64)> = self
            .vars
            .iter()
            .filter_map(|v| point.get(v).map(|x| (v, x)))
            .collect();
        let free = VarSet::from_bits(
            self.vars.bits() & !VarSet::of(&fixed.iter().map(|f| f.0).collect::<Vec<_>>()).bits(),
        );
        let mut out = MultiAffinePoly::zero(free);
        for (s, c) in self.terms() {
            let factor = fixed
                .iter()
                .filter(|(v, _)| s.contains(*v))
                .fold(BigInt::one(), |acc, (_, x)| acc * *x);
            let target = VarSet::from_bits(s.bits() & free.bits());
            out.coeffs[target.bits() as usize] += c * factor;
        }
        out
    }

    /// Drops variables whose every coefficient is zero.
    pub fn trimmed(&self) -> Self {
        let mut used = 0u8;
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                used |= i as u8;
            }
        }
        MultiAffinePoly {
            vars: VarSet::from_bits(used),
            coeffs: self.coeffs.clone(),
        }
    }

    /// Coefficients reduced into `[0, m)`.
    pub fn reduce_mod(&self, m: &BigInt) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c = ((&*c % m) + m) % m;
        }
        out
    }

    /// Coefficient map keyed by monomial text, for tests and reports.
    pub fn to_map(&self) -> BTreeMap<String, BigInt> {
        self.terms()
            .filter(|(_, c)| !c.is_zero())
            .map(|(s, c)| (monomial_name(s), c.clone()))
            .collect()
    }
}

fn monomial_name(s: VarSet) -> String {
    if s.is_empty() {
        "1".into()
    } else {
        s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("*")
    }
}

/// Canonical text: terms by subset size then lexicographically, zero terms
/// omitted, e.g. `8 + 8*y + 8*z + 8*y*z` or `-2 - 5*x`.
impl fmt::Display for MultiAffinePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (s, c) in self.terms() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let body = match (s.is_empty(), mag.is_one()) {
                (true, _) => mag.to_string(),
                (false, true) => monomial_name(s),
                (false, false) => format!("{mag}*{}", monomial_name(s)),
            };
            match (first, c.is_negative()) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl FromStr for MultiAffinePoly {
    type Err = Error;

    /// Parses the canonical rendering back (any term order is accepted).
    fn from_str(s: &str) -> Result<Self> {
        let mut poly = MultiAffinePoly::zero(VarSet::EMPTY);
        let cleaned: String = s.split_whitespace().collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms = Vec::new();
        let mut cur = String::new();
        for (i, ch) in cleaned.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        for t in terms {
            let (neg, body) = match t.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, t.strip_prefix('+').unwrap_or(&t)),
            };
            let mut coeff = BigInt::one();
            let mut mono = VarSet::EMPTY;
            for factor in body.split('*') {
                let mut chars = factor.chars();
                match (chars.next().and_then(Var::from_name), chars.next()) {
                    (Some(v), None) => {
                        if mono.contains(v) {
                            return Err(Error::Parse(format!("repeated variable in `{t}`")));
                        }
                        mono = mono.with(v);
                    }
                    _ => {
                        coeff *= factor
                            .parse::<BigInt>()
                            .map_err(|_| Error::Parse(format!("bad factor `{factor}`")))?;
                    }
                }
            }
            if neg {
                coeff = -coeff;
            }
            poly.vars = poly.vars.union(mono);
            poly.coeffs[mono.bits() as usize] += coeff;
        }
        Ok(poly)
    }
}

impl Serialize for MultiAffinePoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for MultiAffinePoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Moebius inversion over the subset lattice:
/// `coeff(S) = sum_{T subset S} (-1)^{|S|-|T|} f(1_T)`.
///
/// `evals` maps each corner (the subset of variables set to 1) to the value
/// there; all `2^|vars|` corners are required.
pub fn interpolate(vars: VarSet, evals: &BTreeMap<VarSet, BigInt>) -> Result<MultiAffinePoly> {
    let expected = 1usize << vars.len();
    let corners = vars.subsets_canonical();
    if corners.iter().any(|c| !evals.contains_key(c)) {
        return Err(Error::IncompleteCorners {
            expected,
            got: evals.keys().filter(|k| k.is_subset_of(vars)).count(),
        });
    }
    let mut poly = MultiAffinePoly::zero(vars);
    for &s in &corners {
        let mut acc = BigInt::zero();
        for &t in &corners {
            if !t.is_subset_of(s) {
                continue;
            }
            let v = &evals[&t];
            if (s.len() - t.len()) % 2 == 0 {
                acc += v;
            } else {
                acc -= v;
            }
        }
        poly.coeffs[s.bits() as usize] = acc;
    }
    Ok(poly)
}

/// The exact determinant of `spec` as a polynomial in its enabled variables.
pub fn det_poly(spec: &MatrixSpec, engine: EngineChoice) -> Result<MultiAffinePoly> {
    let vars = spec.vars();
    let dec = spec.decompose();
    let corners = vars.subsets_canonical();
    let values: Vec<(VarSet, BigInt)> = corners
        .par_iter()
        .map(|&c| {
            let m = dec.assemble(&Assignment::corner(vars, c))?;
            Ok((c, det(&m, engine)?))
        })
        .collect::<Result<_>>()?;
    interpolate(vars, &values.into_iter().collect())
}

/// Second-difference probe `f(v=2) - 2 f(v=1) + f(v=0) = 0` for every
/// variable, with the other variables at random integers in `[-5, 5]`.
pub fn multiaffinity_guard_with<R: Rng>(
    vars: VarSet,
    rng: &mut R,
    probes: usize,
    mut eval: impl FnMut(&Assignment) -> Result<BigInt>,
) -> Result<bool> {
    for _ in 0..probes {
        for v in vars.iter() {
            let mut base = Assignment::new();
            for u in vars.iter() {
                base = base.set(u, rng.gen_range(-5..=5));
            }
            let f0 = eval(&base.clone().set(v, 0))?;
            let f1 = eval(&base.clone().set(v, 1))?;
            let f2 = eval(&base.set(v, 2))?;
            if f2 - f1 * 2 + f0 != BigInt::zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// [`multiaffinity_guard_with`] on the numeric determinants of `spec`.
pub fn multiaffinity_guard<R: Rng>(spec: &MatrixSpec, rng: &mut R, probes: usize) -> Result<bool> {
    multiaffinity_guard_with(spec.vars(), rng, probes, |a| {
        det(&spec.build_numeric(a)?, EngineChoice::Auto)
    })
}
