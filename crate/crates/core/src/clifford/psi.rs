//! The lift of the orthogonal representation into the pin group:
//! `τ -> u`, `a -> s u v_1`, `s̃_i -> v_i + v_{i+1}`.

use serde::Serialize;

use super::{Algebra, CliffordError, Element};
use crate::gf2ring::{Laurent, Scalar};
use crate::presentation::{Gen, Representation};
use crate::quadspace::{hyperbolic_decompose, RMatrix};

#[derive(Debug, Clone)]
pub struct PsiRep<S> {
    alg: Algebra,
    tau: Element<S>,
    a: Element<S>,
    a_inv: Element<S>,
    s_tilde: Vec<Element<S>>,
}

impl<S: Scalar> PsiRep<S> {
    pub fn new(m: usize) -> Self {
        let alg = Algebra::new(m);
        let tau: Element<S> = alg.u();
        let a = alg
            .mul(&tau, &alg.v(1))
            .scale(&S::from_laurent(&Laurent::s()));
        let a_inv = alg.inverse(&a).expect("pin element");
        let s_tilde = (1..m).map(|i| alg.v::<S>(i).add(&alg.v(i + 1))).collect();
        PsiRep {
            alg,
            tau,
            a,
            a_inv,
            s_tilde,
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn m(&self) -> usize {
        self.alg.m()
    }

    pub fn generator(&self, g: Gen) -> Option<Element<S>> {
        let idx = |i: u8| (i as usize).checked_sub(1).and_then(|k| self.s_tilde.get(k));
        match g {
            Gen::A => Some(self.a.clone()),
            Gen::AInv => Some(self.a_inv.clone()),
            Gen::Tau => Some(self.tau.clone()),
            Gen::S(i) => idx(i).map(|st| self.alg.mul(&self.tau, st)),
            Gen::STilde(i) => idx(i).cloned(),
        }
    }
}

impl<S: Scalar> Representation for PsiRep<S> {
    type Elem = Element<S>;

    fn identity(&self) -> Element<S> {
        Element::one()
    }

    fn compose(&self, x: &Element<S>, y: &Element<S>) -> Element<S> {
        self.alg.mul(x, y)
    }

    fn invert(&self, x: &Element<S>) -> Result<Element<S>, String> {
        self.alg.inverse(x).map_err(|e| e.to_string())
    }

    fn is_identity(&self, x: &Element<S>) -> bool {
        x.is_one()
    }

    fn primitive(&self, g: Gen) -> Option<Element<S>> {
        match g {
            Gen::A | Gen::Tau | Gen::S(_) => self.generator(g),
            _ => None,
        }
    }

    fn max_index(&self) -> u8 {
        (self.m() - 1) as u8
    }
}

/// `(u v_i)^k = a_k + b_k u v_i` with `a_0 = 1, a_1 = 0, b_0 = 0, b_1 = 1`
/// and `x_k = x_{k-1} + t^-1 x_{k-2}`, plus the outcome of checking the
/// identities by direct powering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerSeq {
    pub k: u64,
    pub a: Laurent,
    pub b: Laurent,
    /// `(u v_i)^k = a_k + b_k u v_i` for every `i`.
    pub uv_holds: bool,
    /// `(v_i u)^k = a_k + b_k v_i u` for every `i`.
    pub vu_holds: bool,
    /// `(v_1 u)^k (v_2 u)^k = (u v_2)^k (u v_1)^k`.
    pub swap_holds: bool,
}

impl PowerSeq {
    pub fn all_hold(&self) -> bool {
        self.uv_holds && self.vu_holds && self.swap_holds
    }
}

pub fn power_sequence(k: u64) -> (Laurent, Laurent) {
    let t_inv = Laurent::t_inv();
    let (mut a0, mut a1) = (Laurent::one(), Laurent::zero());
    let (mut b0, mut b1) = (Laurent::zero(), Laurent::one());
    for _ in 0..k {
        let a2 = &a1 + &(&t_inv * &a0);
        let b2 = &b1 + &(&t_inv * &b0);
        (a0, a1) = (a1, a2);
        (b0, b1) = (b1, b2);
    }
    (a0, b0)
}

pub fn power_identities(alg: &Algebra, k: u64) -> PowerSeq {
    let (a, b) = power_sequence(k);
    let u: Element<Laurent> = alg.u();
    let lin = |x: &Element<Laurent>| Element::scalar(a.clone()).add(&x.scale(&b));
    let mut uv_holds = true;
    let mut vu_holds = true;
    for i in 1..=alg.m() {
        let v = alg.v(i);
        let uv = alg.mul(&u, &v);
        let vu = alg.mul(&v, &u);
        uv_holds &= alg.pow(&uv, k) == lin(&uv);
        vu_holds &= alg.pow(&vu, k) == lin(&vu);
    }
    let (v1, v2) = (alg.v(1), alg.v(2));
    let lhs = alg.mul(&alg.pow(&alg.mul(&v1, &u), k), &alg.pow(&alg.mul(&v2, &u), k));
    let rhs = alg.mul(&alg.pow(&alg.mul(&u, &v2), k), &alg.pow(&alg.mul(&u, &v1), k));
    PowerSeq {
        k,
        a,
        b,
        uv_holds,
        vu_holds,
        swap_holds: lhs == rhs,
    }
}

/// `(a u + b v_i)(c u + d v_j) = (c u + d v_j)(a u + b v_i) + (ad + bc + bd)`.
pub fn lemma_commutation_holds(alg: &Algebra, coeffs: [&Laurent; 4], i: usize, j: usize) -> bool {
    let [a, b, c, d] = coeffs;
    let x = alg.u::<Laurent>().scale(a).add(&alg.v(i).scale(b));
    let y = alg.u::<Laurent>().scale(c).add(&alg.v(j).scale(d));
    let extra = &(&(a * d) + &(b * c)) + &(b * d);
    alg.mul(&x, &y) == alg.mul(&y, &x).add(&Element::scalar(extra))
}

#[derive(Debug, Clone)]
pub struct KernelWitness {
    pub z: Element<Laurent>,
    pub spinor_norm: Laurent,
    pub pi: RMatrix<Laurent>,
}

impl KernelWitness {
    pub fn norm_is_one(&self) -> bool {
        self.spinor_norm.is_one()
    }

    pub fn pi_is_identity(&self) -> bool {
        self.pi.is_identity()
    }

    /// `z != 1` yet `pi(z) = 1`: pi is not injective on the pin group.
    pub fn exhibits_non_injectivity(&self) -> bool {
        !self.z.is_one() && self.pi_is_identity() && self.norm_is_one()
    }
}

/// `1 + λ r` for `m = 2 mod 4`, `1 + λ (1 + r)` for `m = 0 mod 4`, where
/// `r = u + v_1 + ... + v_m`.
pub fn kernel_element(alg: &Algebra, lambda: &Laurent) -> Result<KernelWitness, CliffordError> {
    let m = alg.m();
    if m % 2 == 1 {
        return Err(CliffordError::OddM(m));
    }
    let r = alg.vector(&vec![Laurent::one(); alg.generators()]);
    let inner = if m % 4 == 2 { r } else { Element::one().add(&r) };
    let z = Element::one().add(&inner.scale(lambda));
    let spinor_norm = alg.spinor_norm(&z)?;
    let pi = alg.pi_matrix(&z)?;
    Ok(KernelWitness { z, spinor_norm, pi })
}

/// `w = s e f + f e` for the first hyperbolic pair `(e, f)` of V; its spinor
/// norm is `s`, which is not a square unit.
pub fn spinor_witness(alg: &Algebra) -> Result<(Element<Laurent>, Laurent), String> {
    let d = hyperbolic_decompose(alg.space()).map_err(|e| e.to_string())?;
    let (e, f) = &d.pairs[0];
    let (e, f) = (alg.vector(e), alg.vector(f));
    let w = alg
        .mul(&e, &f)
        .scale(&Laurent::s())
        .add(&alg.mul(&f, &e));
    let n = alg.spinor_norm(&w).map_err(|e| e.to_string())?;
    Ok((w, n))
}
