//! Random instances of the three meta identities relating
//! `f(j,k) = sum_i c_i ((a_i j + b_i k)/p)` to its rank-one perturbations.

use num_bigint::BigInt;
use rand::Rng;

use super::identity::MetaKind;
use crate::arith::SymbolTable;
use crate::detengine::{det, EngineChoice};
use crate::error::Result;
use crate::matrixgen::{Atom, IndexRange, MatrixSpec};
use crate::multiaffine::{det_poly, MultiAffinePoly, Var, VarSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetaInstance {
    pub p: u64,
    /// Upper index bound.
    pub n: i64,
    /// `(c_i, a_i, b_i)`.
    pub terms: Vec<(i64, i64, i64)>,
}

impl MetaInstance {
    fn atoms(&self) -> Vec<(i64, Atom)> {
        self.terms
            .iter()
            .map(|&(c, a, b)| (c, Atom::linear(a, b, 0)))
            .collect()
    }

    /// `(sum c_i (a_i/p), sum c_i (b_i/p))`.
    pub fn marginals(&self) -> (i64, i64) {
        let t = SymbolTable::new(self.p).expect("odd modulus");
        self.terms
            .iter()
            .fold((0, 0), |(s, u), &(c, a, b)| (s + c * t.get(a), u + c * t.get(b)))
    }

    fn det_of(&self, lo: i64, extra: &[(i64, Atom)], engine: EngineChoice) -> Result<BigInt> {
        let mut atoms = self.atoms();
        atoms.extend_from_slice(extra);
        let spec = MatrixSpec::square(self.p, IndexRange::new(lo, self.n), atoms, VarSet::EMPTY)?;
        det(&spec.build_numeric(&Default::default())?, engine)
    }

    fn poly_of(&self, lo: i64, vars: VarSet, engine: EngineChoice) -> Result<MultiAffinePoly> {
        let spec = MatrixSpec::square(self.p, IndexRange::new(lo, self.n), self.atoms(), vars)?;
        det_poly(&spec, engine)
    }
}

/// Draws `m <= 3` terms with small coefficients and an admissible bound.
pub fn random_meta_instance<R: Rng>(rng: &mut R, p: u64, kind: MetaKind) -> MetaInstance {
    let m = rng.gen_range(1..=3);
    let terms = (0..m)
        .map(|_| {
            let mut c = 0;
            while c == 0 {
                c = rng.gen_range(-3..=3);
            }
            (c, rng.gen_range(-6..=6), rng.gen_range(-6..=6))
        })
        .collect();
    let cap = match kind {
        MetaKind::JkInvariance | MetaKind::JkShift => (p as i64 - 1).min(20),
        MetaKind::Factorisation => 20,
    };
    MetaInstance {
        p,
        n: rng.gen_range(1..=cap),
        terms,
    }
}

/// Both sides of the chosen identity as polynomials.
pub fn check_meta(kind: MetaKind, inst: &MetaInstance, engine: EngineChoice) -> Result<(MultiAffinePoly, MultiAffinePoly)> {
    let w = VarSet::of(&[Var::W]);
    let (sa, sb) = inst.marginals();
    let c = BigInt::from(sa * sb);
    Ok(match kind {
        MetaKind::JkInvariance => {
            let lhs = inst.poly_of(0, w, engine)?;
            let rhs = MultiAffinePoly::constant(inst.det_of(0, &[], engine)?).embed(w)?;
            (lhs, rhs)
        }
        MetaKind::JkShift => {
            let lhs = inst.poly_of(1, w, engine)?.scale(&c);
            let mut rhs = MultiAffinePoly::zero(w);
            rhs.set_coeff(VarSet::EMPTY, &c * inst.det_of(1, &[], engine)?)?;
            rhs.set_coeff(w, -inst.det_of(0, &[], engine)?)?;
            (lhs, rhs)
        }
        MetaKind::Factorisation => {
            let xyz = VarSet::of(&[Var::X, Var::Y, Var::Z]);
            let lhs = inst.poly_of(0, xyz, engine)?.scale(&c);
            let f0 = inst.det_of(0, &[], engine)?;
            let reduced = inst.det_of(1, &[(-sa, Atom::linear(1, 0, 0)), (-sb, Atom::linear(0, 1, 0))], engine)?;
            // (y + sa)(z + sb) f0 + c x reduced
            let mut rhs = MultiAffinePoly::zero(xyz);
            rhs.set_coeff(VarSet::of(&[Var::Y, Var::Z]), f0.clone())?;
            rhs.set_coeff(VarSet::of(&[Var::Y]), &f0 * sb)?;
            rhs.set_coeff(VarSet::of(&[Var::Z]), &f0 * sa)?;
            rhs.set_coeff(VarSet::EMPTY, &f0 * (sa * sb))?;
            rhs.set_coeff(VarSet::of(&[Var::X]), &c * reduced)?;
            (lhs, rhs)
        }
    })
}
