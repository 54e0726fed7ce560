use serde::Serialize;

use super::{Algebra, Element};
use crate::gf2ring::{EvalError, EvalMap, FfMatrix, Laurent};

/// Whether `x` commutes with every generator.
pub fn central_symbolically(alg: &Algebra, x: &Element<Laurent>) -> bool {
    (0..alg.generators()).all(|i| {
        let g = alg.gen(i);
        alg.mul(x, &g) == alg.mul(&g, x)
    })
}

/// Dimension of the center of the algebra after specializing coefficients
/// through `map`: the corank of `X -> ([X, x_g])_g` over the finite field.
pub fn specialized_center_dimension(alg: &Algebra, map: &EvalMap) -> usize {
    let dim = alg.dimension();
    let n = alg.generators();
    let mut mat = FfMatrix::zero(dim, n * dim);
    for mask in 0..dim as u32 {
        let e = Element::monomial(mask, Laurent::one());
        for g in 0..n {
            let x = alg.gen(g);
            let comm = alg.mul(&e, &x).add(&alg.mul(&x, &e));
            for (p, c) in comm.terms() {
                mat.set(mask as usize, g * dim + *p as usize, map.eval_laurent(c));
            }
        }
    }
    dim - mat.rank(map.field())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CenterReport {
    pub m: usize,
    pub one_central: bool,
    /// Whether `r = u + v_1 + ... + v_m` is central.
    pub r_central: bool,
    pub specialized_dimension: usize,
    pub expected_dimension: usize,
    pub n: u32,
    pub modulus: String,
}

impl CenterReport {
    pub fn passes(&self) -> bool {
        self.one_central
            && self.r_central == (self.m % 2 == 0)
            && self.specialized_dimension == self.expected_dimension
    }
}

/// Checks `1` and `r` symbolically and measures the center at the
/// specialization of order `n`.
pub fn center_candidates(m: usize, n: u32) -> Result<CenterReport, EvalError> {
    let alg = Algebra::new(m);
    let map = EvalMap::new(n, None)?;
    let r = alg.vector(&vec![Laurent::one(); alg.generators()]);
    Ok(CenterReport {
        m,
        one_central: central_symbolically(&alg, &Element::one()),
        r_central: central_symbolically(&alg, &r),
        specialized_dimension: specialized_center_dimension(&alg, &map),
        expected_dimension: if m % 2 == 0 { 2 } else { 1 },
        n,
        modulus: map.field().modulus_string(),
    })
}
