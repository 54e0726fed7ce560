//! The orthogonal representation of ỹ(m) on V by transvections:
//! `τ -> r_u`, `a -> r_u r_{v_1}`, `s̃_i -> r_{v_i + v_{i+1}}`.

use crate::gf2ring::{Laurent, Qe, Scalar};
use crate::presentation::{Gen, Representation};
use crate::quadspace::{QuadError, QuadSpace, RMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrthoError {
    #[error("k = {0} is negative")]
    NegativeK(i64),
    #[error(transparent)]
    Quad(#[from] QuadError),
}

#[derive(Debug, Clone)]
pub struct PhiRep {
    space: QuadSpace,
    tau: RMatrix<Laurent>,
    a: RMatrix<Laurent>,
    /// `s̃_i` at index `i - 1`.
    s_tilde: Vec<RMatrix<Laurent>>,
}

impl PhiRep {
    pub fn new(m: usize) -> Result<Self, OrthoError> {
        let space = QuadSpace::new(m)?;
        let tau = space.transvection(&space.gf2_vector::<Laurent>(&[0]))?;
        let r_v1 = space.transvection(&space.gf2_vector::<Laurent>(&[1]))?;
        let a = tau.mul(&r_v1);
        let s_tilde = (1..m)
            .map(|i| space.transvection(&space.gf2_vector::<Laurent>(&[i, i + 1])))
            .collect::<Result<_, _>>()?;
        Ok(PhiRep {
            space,
            tau,
            a,
            s_tilde,
        })
    }

    pub fn space(&self) -> &QuadSpace {
        &self.space
    }

    pub fn m(&self) -> usize {
        self.space.m()
    }

    /// Image of any letter; `None` for an out-of-range index.
    pub fn generator(&self, g: Gen) -> Option<RMatrix<Laurent>> {
        let idx = |i: u8| (i as usize).checked_sub(1).and_then(|k| self.s_tilde.get(k));
        match g {
            Gen::A => Some(self.a.clone()),
            // r_u r_{v_1} inverted is r_{v_1} r_u
            Gen::AInv => Some(self.tau.mul(&self.a).mul(&self.tau)),
            Gen::Tau => Some(self.tau.clone()),
            Gen::S(i) => idx(i).map(|st| self.tau.mul(st)),
            Gen::STilde(i) => idx(i).cloned(),
        }
    }

    /// `phi(a)^-k phi(s_1) phi(a)^k`, by repeated conjugation.
    pub fn iterated_conjugate(&self, k: u64) -> RMatrix<Laurent> {
        let a_inv = self.generator(Gen::AInv).unwrap();
        let s1 = self.generator(Gen::S(1)).unwrap();
        (0..k).fold(s1, |x, _| a_inv.mul(&x).mul(&self.a))
    }
}

impl Representation for PhiRep {
    type Elem = RMatrix<Laurent>;

    fn identity(&self) -> RMatrix<Laurent> {
        RMatrix::identity(self.space.rank())
    }

    fn compose(&self, x: &RMatrix<Laurent>, y: &RMatrix<Laurent>) -> RMatrix<Laurent> {
        x.mul(y)
    }

    fn invert(&self, x: &RMatrix<Laurent>) -> Result<RMatrix<Laurent>, String> {
        x.try_inverse().map_err(|e| e.to_string())
    }

    fn is_identity(&self, x: &RMatrix<Laurent>) -> bool {
        x.is_identity()
    }

    fn primitive(&self, g: Gen) -> Option<RMatrix<Laurent>> {
        match g {
            Gen::A | Gen::Tau | Gen::S(_) => self.generator(g),
            _ => None,
        }
    }

    fn max_index(&self) -> u8 {
        (self.m() - 1) as u8
    }
}

/// `Σ^k = α^-2k + ... + α^2k`, with `Σ^-1 = 0`.
pub fn sigma(k: i64) -> Qe {
    (-k..=k).fold(Qe::zero(), |acc, i| &acc + &Qe::alpha_pow(2 * i))
}

/// The matrix of `phi(s_1)^(phi(a)^k)` assembled from `Σ`-sums in the
/// quadratic extension. For `k = 0` this is `phi(s_1)` itself.
pub fn closed_form_conjugate(m: usize, k: i64) -> Result<RMatrix<Qe>, OrthoError> {
    if k < 0 {
        return Err(OrthoError::NegativeK(k));
    }
    let space = QuadSpace::new(m)?;
    if k == 0 {
        let s1 = PhiRep::new(m)?.generator(Gen::S(1)).unwrap();
        return Ok(s1.map(|x| Qe::from(x.clone())));
    }
    let one = Qe::one();
    let pm = &Qe::alpha_pow(-2 * k) + &Qe::alpha_pow(2 * k);
    let pm1 = &pm + &one;
    let sk1 = sigma(k - 1);
    let sk = sigma(k);
    let n = space.rank();
    let mut out = RMatrix::identity(n);
    let head = [
        [pm1.clone(), pm.clone(), pm.clone()],
        [sk1.clone(), &sk1 + &one, sk1.clone()],
        [sk.clone(), sk.clone(), &sk + &one],
    ];
    for (i, row) in head.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            out.set(i, j, x.clone());
        }
    }
    let tail = [pm1, &sk1 + &one, &sk + &one];
    for i in 3..n {
        for (j, x) in tail.iter().enumerate() {
            out.set(i, j, x.clone());
        }
    }
    Ok(out)
}

/// Drops the `alpha` part of every entry, or `None` if some entry has one.
pub fn to_laurent(m: &RMatrix<Qe>) -> Option<RMatrix<Laurent>> {
    if m.entries().any(|x| x.as_laurent().is_none()) {
        return None;
    }
    Some(m.map(|x| x.as_laurent().unwrap().clone()))
}

/// Whether every entry lies in GF(2)[t].
pub fn entries_in_t_polynomials(m: &RMatrix<Laurent>) -> bool {
    m.entries().all(Laurent::is_t_polynomial)
}

/// The map `u -> u + f_0 w`, `v_1 -> v_1 + f_1 w`, `v_2 -> v_2 + f_2 w`,
/// `v_i -> v_i + (f_0+1) u + (f_1+1) v_1 + (f_2+1) v_2` with
/// `w = u + v_1 + v_2` and `f_2 = f_0 + f_1`.
pub fn commuting_form<S: Scalar>(m: usize, f0: &S, f1: &S) -> RMatrix<S> {
    let n = m + 1;
    let f = [f0.clone(), f1.clone(), f0.add(f1)];
    let mut out = RMatrix::<S>::identity(n);
    for (i, fi) in f.iter().enumerate() {
        for j in 0..3 {
            out.set(i, j, out.get(i, j).add(fi));
        }
    }
    for i in 3..n {
        for (j, fj) in f.iter().enumerate() {
            out.set(i, j, fj.add(&S::one()));
        }
    }
    out
}

/// If `m` is a permutation matrix, the permutation it induces on basis
/// indices (`i -> j` when row `i` is `e_j`).
pub fn as_permutation<S: Scalar>(m: &RMatrix<S>) -> Option<Vec<usize>> {
    (0..m.dim())
        .map(|i| {
            let row = m.row(i);
            let nz: Vec<usize> = (0..row.len()).filter(|&j| !row[j].is_zero()).collect();
            (nz.len() == 1 && row[nz[0]].is_one()).then(|| nz[0])
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Exec;
    use crate::presentation::{schedule, Evaluator, Flavor, Word};

    fn l(e: &[i32]) -> Laurent {
        Laurent::from_exponents(e.iter().copied())
    }

    #[test]
    fn phi_a_rows() {
        let phi = PhiRep::new(4).unwrap();
        let a = phi.generator(Gen::A).unwrap();
        let (t, one, z) = (l(&[2]), l(&[0]), l(&[]));
        assert_eq!(a.row(0), &[one.clone(), t.clone(), z.clone(), z.clone(), z.clone()]);
        assert_eq!(a.row(1), &[one.clone(), l(&[0, 2]), z.clone(), z.clone(), z.clone()]);
        assert_eq!(a.row(3), &[one.clone(), z.clone(), z.clone(), one.clone(), z.clone()]);
        assert!(entries_in_t_polynomials(&a));
    }

    #[test]
    fn phi_tau_and_swap() {
        let phi = PhiRep::new(3).unwrap();
        let tau = phi.generator(Gen::Tau).unwrap();
        assert_eq!(tau.row(2), &[l(&[0]), l(&[]), l(&[0]), l(&[])]);
        let st = phi.generator(Gen::STilde(1)).unwrap();
        assert_eq!(as_permutation(&st), Some(vec![0, 2, 1, 3]));
    }

    #[test]
    fn relators_small_m() {
        for m in 3..=5 {
            let phi = PhiRep::new(m).unwrap();
            let ev = Evaluator::new(&phi).unwrap();
            for (name, ok) in ev.check_schedule(&schedule(m, 6, Flavor::YTilde).unwrap(), Exec::Sequential) {
                assert_eq!(ok, Ok(true), "m={m} {name}");
            }
        }
    }

    #[test]
    fn tau_a_tau_a_is_identity() {
        let phi = PhiRep::new(4).unwrap();
        let ev = Evaluator::new(&phi).unwrap();
        assert!(ev.evaluate(&"t a t a".parse::<Word>().unwrap()).unwrap().is_identity());
    }

    #[test]
    fn closed_form_k1_m4() {
        let c = to_laurent(&closed_form_conjugate(4, 1).unwrap()).unwrap();
        let t = l(&[2]);
        let t1 = l(&[0, 2]);
        let (one, z) = (l(&[0]), l(&[]));
        assert_eq!(&c.row(0)[..3], &[t1.clone(), t.clone(), t.clone()]);
        assert_eq!(&c.row(1)[..3], &[one.clone(), z.clone(), one.clone()]);
        assert_eq!(&c.row(2)[..3], &[t1.clone(), t1.clone(), t.clone()]);
        assert_eq!(c.row(3), &[t1.clone(), z.clone(), t.clone(), one.clone(), z.clone()]);
        // oracle: explicit conjugation of the transvection matrices
        assert_eq!(c, PhiRep::new(4).unwrap().iterated_conjugate(1));
    }

    #[test]
    fn closed_form_matches_conjugation() {
        for m in 3..=4 {
            let phi = PhiRep::new(m).unwrap();
            for k in 0..=6 {
                let c = to_laurent(&closed_form_conjugate(m, k).unwrap()).unwrap();
                assert_eq!(c, phi.iterated_conjugate(k as u64), "m={m} k={k}");
            }
        }
        assert_eq!(closed_form_conjugate(3, -1), Err(OrthoError::NegativeK(-1)));
    }

    #[test]
    fn commuting_forms_commute() {
        let f = commuting_form(5, &l(&[2, 4]), &l(&[0, -2]));
        let g = commuting_form(5, &l(&[6]), &l(&[2]));
        assert_eq!(f.mul(&g), g.mul(&f));
    }

    #[test]
    fn odd_exponent_is_not_t_polynomial() {
        let m = RMatrix::from_rows(vec![vec![Laurent::s()]]);
        assert!(!entries_in_t_polynomials(&m));
    }
}
