//! Sidki's representation η of y(m) by 2^(m-2) square matrices over
//! GF(2)[s, s^-1][α], and its realization inside the Clifford algebra as
//! right multiplication by ψ on the span W of the basis X_m.

use serde::Serialize;

use crate::clifford::{Algebra, Element, PsiRep};
use crate::gf2ring::{EvalMap, FfMatrix, Laurent, Qe};
use crate::presentation::{Gen, Representation};
use crate::quadspace::RMatrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SidkiError {
    #[error("m = {0} out of range ({1})")]
    BadM(usize, &'static str),
}

/// Generator images `a, s_1, ..., s_{m-1}` of η for a given m.
#[derive(Debug, Clone)]
pub struct EtaRep {
    m: usize,
    a: RMatrix<Qe>,
    a_inv: RMatrix<Qe>,
    /// `s_i` at index `i - 1`.
    s: Vec<RMatrix<Qe>>,
}

fn block2(tl: &RMatrix<Qe>, tr: &RMatrix<Qe>, bl: &RMatrix<Qe>, br: &RMatrix<Qe>) -> RMatrix<Qe> {
    let h = tl.dim();
    RMatrix::from_fn(2 * h, |i, j| {
        let blk = match (i < h, j < h) {
            (true, true) => tl,
            (true, false) => tr,
            (false, true) => bl,
            (false, false) => br,
        };
        blk.get(i % h, j % h).clone()
    })
}

impl EtaRep {
    pub fn new(m: usize) -> Result<Self, SidkiError> {
        if !(3..=16).contains(&m) {
            return Err(SidkiError::BadM(m, "need 3 <= m <= 16"));
        }
        let q = |x: u8| if x == 1 { Qe::one() } else { Qe::zero() };
        let mat = |rows: [[u8; 2]; 2]| RMatrix::from_rows(rows.iter().map(|r| r.map(q).to_vec()).collect());
        let mut a = RMatrix::from_rows(vec![
            vec![Qe::alpha(), Qe::zero()],
            vec![Qe::zero(), Qe::alpha_inv()],
        ]);
        let mut s = vec![mat([[1, 0], [1, 1]]), mat([[0, 1], [1, 0]])];
        for _ in 4..=m {
            let h = a.dim();
            let id = RMatrix::<Qe>::identity(h);
            let z = RMatrix::<Qe>::zero(h);
            let a_inv = a.try_inverse().expect("diagonal unit matrix");
            let mut next = vec![block2(&id, &z, &id, &id), block2(&z, &id, &id, &z)];
            next.push(block2(&s[1], &z, &id, &s[1]));
            for prev in &s[2..] {
                next.push(block2(prev, &z, &z, prev));
            }
            a = block2(&a, &z, &z, &a_inv);
            s = next;
        }
        let a_inv = a.try_inverse().expect("diagonal unit matrix");
        Ok(EtaRep { m, a, a_inv, s })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    pub fn generator(&self, g: Gen) -> Option<RMatrix<Qe>> {
        match g {
            Gen::A => Some(self.a.clone()),
            Gen::AInv => Some(self.a_inv.clone()),
            Gen::S(i) => (i as usize)
                .checked_sub(1)
                .and_then(|k| self.s.get(k))
                .cloned(),
            _ => None,
        }
    }
}

impl Representation for EtaRep {
    type Elem = RMatrix<Qe>;

    fn identity(&self) -> RMatrix<Qe> {
        RMatrix::identity(self.dim())
    }

    fn compose(&self, x: &RMatrix<Qe>, y: &RMatrix<Qe>) -> RMatrix<Qe> {
        x.mul(y)
    }

    fn invert(&self, x: &RMatrix<Qe>) -> Result<RMatrix<Qe>, String> {
        x.try_inverse().map_err(|e| e.to_string())
    }

    fn is_identity(&self, x: &RMatrix<Qe>) -> bool {
        x.is_identity()
    }

    fn primitive(&self, g: Gen) -> Option<RMatrix<Qe>> {
        match g {
            Gen::A | Gen::S(_) => self.generator(g),
            _ => None,
        }
    }

    fn max_index(&self) -> u8 {
        (self.m - 1) as u8
    }
}

const UV1: u32 = 0b011;
const UV2: u32 = 0b101;
const V1V2: u32 = 0b110;

/// `w = (s^-1 + α) + α u v_1 + α^-1 u v_2 + s v_1 v_2`; the constant term is
/// `α^2 / s` reduced with `α^2 = sα + 1`.
pub fn eigenvector_w() -> Element<Qe> {
    let c0 = Qe::new(Laurent::monomial(-1), Laurent::one());
    Element::scalar(c0)
        .add(&Element::monomial(UV1, Qe::alpha()))
        .add(&Element::monomial(UV2, Qe::alpha_inv()))
        .add(&Element::monomial(V1V2, Qe::from(Laurent::s())))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BasisFlavor {
    /// Doubling by `s_{m-1}`, then `s_{m-2}`, ..., then `s_2`.
    X,
    /// Increasing products over `{s_2, ..., s_{m-1}}`, by length then lex.
    Y,
}

#[derive(Debug, Clone)]
pub struct WBasis {
    pub m: usize,
    pub flavor: BasisFlavor,
    /// The `s`-indices of the word multiplying `w`, left to right.
    pub words: Vec<Vec<u8>>,
    pub elements: Vec<Element<Qe>>,
}

impl WBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn word_label(&self, k: usize) -> String {
        let mut s = String::from("w");
        for i in &self.words[k] {
            s.push_str(&format!(" s{i}"));
        }
        s
    }
}

pub fn basis(psi: &PsiRep<Qe>, flavor: BasisFlavor) -> Result<WBasis, SidkiError> {
    let m = psi.m();
    if !(3..=8).contains(&m) {
        return Err(SidkiError::BadM(m, "need 3 <= m <= 8"));
    }
    let alg = psi.algebra();
    let s = |j: u8| psi.generator(Gen::S(j)).unwrap();
    let w = eigenvector_w();
    let mut words: Vec<Vec<u8>> = vec![vec![]];
    let mut elements = vec![w.clone()];
    match flavor {
        BasisFlavor::X => {
            for j in (2..m as u8).rev() {
                let sj = s(j);
                for k in 0..elements.len() {
                    let mut word = words[k].clone();
                    word.push(j);
                    elements.push(alg.mul(&elements[k], &sj));
                    words.push(word);
                }
            }
        }
        BasisFlavor::Y => {
            let idx: Vec<u8> = (2..m as u8).collect();
            let mut all: Vec<Vec<u8>> = (1u32..1 << idx.len())
                .map(|bits| {
                    idx.iter()
                        .enumerate()
                        .filter(|(b, _)| bits >> b & 1 == 1)
                        .map(|(_, &i)| i)
                        .collect()
                })
                .collect();
            all.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
            for word in all {
                let el = word.iter().fold(w.clone(), |acc, &j| alg.mul(&acc, &s(j)));
                elements.push(el);
                words.push(word);
            }
        }
    }
    Ok(WBasis {
        m,
        flavor,
        words,
        elements,
    })
}

/// Specializations tried in turn by [`independence_certificate`].
pub const CERTIFICATE_ORDERS: [u32; 3] = [5, 7, 11];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Certificate {
    /// Full rank after specializing at roots of unity of order `n`.
    Independent { n: u32 },
    /// Rank-deficient at every listed specialization; says nothing about
    /// dependence over the ring.
    Inconclusive { tried: Vec<u32> },
}

impl Certificate {
    pub fn is_independent(&self) -> bool {
        matches!(self, Certificate::Independent { .. })
    }
}

/// Rank of the coefficient matrix (elements by monomials) of `els` after
/// specialization through `map`.
pub fn specialized_rank(els: &[Element<Qe>], generators: usize, map: &EvalMap) -> usize {
    let dim = 1usize << generators;
    let mut mat = FfMatrix::zero(els.len(), dim);
    for (i, e) in els.iter().enumerate() {
        for (mask, c) in e.terms() {
            mat.set(i, *mask as usize, map.eval_qe(c));
        }
    }
    mat.rank(map.field())
}

pub fn independence_certificate(els: &[Element<Qe>], generators: usize) -> Certificate {
    for n in CERTIFICATE_ORDERS {
        let map = EvalMap::new(n, None).expect("odd n");
        if specialized_rank(els, generators, &map) == els.len() {
            return Certificate::Independent { n };
        }
    }
    Certificate::Inconclusive {
        tried: CERTIFICATE_ORDERS.to_vec(),
    }
}

/// Whether the two lists span the same submodule, certified at a
/// specialization where both are independent and their union has the same
/// rank.
pub fn same_span(x: &[Element<Qe>], y: &[Element<Qe>], generators: usize) -> bool {
    CERTIFICATE_ORDERS.iter().any(|&n| {
        let map = EvalMap::new(n, None).expect("odd n");
        let rx = specialized_rank(x, generators, &map);
        let ry = specialized_rank(y, generators, &map);
        let union: Vec<Element<Qe>> = x.iter().chain(y).cloned().collect();
        rx == x.len() && ry == y.len() && rx == ry && specialized_rank(&union, generators, &map) == rx
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ActionReport {
    pub generator: String,
    pub ok: bool,
    /// First failing basis row and a monomial where the two sides differ.
    pub witness: Option<(usize, String)>,
}

/// Compares `x_i g` with `sum_j M_ij x_j` for every basis element.
fn compare_action(
    alg: &Algebra,
    basis: &[Element<Qe>],
    g: &Element<Qe>,
    mat: &RMatrix<Qe>,
    label: String,
) -> ActionReport {
    for (i, x) in basis.iter().enumerate() {
        let lhs = alg.mul(x, g);
        let rhs = mat
            .row(i)
            .iter()
            .zip(basis)
            .filter(|(c, _)| !c.is_zero())
            .fold(Element::zero(), |acc, (c, xj)| acc.add(&xj.scale(c)));
        if lhs != rhs {
            let diff = lhs.add(&rhs);
            let mono = alg.monomial_label(diff.terms()[0].0);
            return ActionReport {
                generator: label,
                ok: false,
                witness: Some((i, mono)),
            };
        }
    }
    ActionReport {
        generator: label,
        ok: true,
        witness: None,
    }
}

/// Right multiplication by `ψ(g)` on X_m against `η(g)`, for `g` one of
/// `A`, `AInv` or `S(i)`.
pub fn verify_action(psi: &PsiRep<Qe>, eta: &EtaRep, x: &WBasis, g: Gen) -> ActionReport {
    let (Some(pg), Some(eg)) = (psi.generator(g), eta.generator(g)) else {
        return ActionReport {
            generator: g.to_string(),
            ok: false,
            witness: None,
        };
    };
    compare_action(psi.algebra(), &x.elements, &pg, &eg, g.to_string())
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtendedReport {
    pub certificate: Certificate,
    pub actions: Vec<ActionReport>,
}

impl ExtendedReport {
    pub fn passes(&self) -> bool {
        self.certificate.is_independent() && self.actions.iter().all(|a| a.ok)
    }
}

/// The action of ψ(ỹ(m)) on `X_m ∪ X_m u`: `u` swaps the halves, `a` acts as
/// `diag(η(a), η(a)^-1)`, `s_i` as `diag(η(s_i), η(s_i))`.
pub fn verify_extended_action(psi: &PsiRep<Qe>, eta: &EtaRep, x: &WBasis) -> ExtendedReport {
    let alg = psi.algebra();
    let u: Element<Qe> = alg.u();
    let mut ext = x.elements.clone();
    ext.extend(x.elements.iter().map(|e| alg.mul(e, &u)));
    let certificate = independence_certificate(&ext, alg.generators());
    let h = x.len();
    let id = RMatrix::<Qe>::identity(h);
    let z = RMatrix::<Qe>::zero(h);
    let mut actions = vec![compare_action(alg, &ext, &u, &block2(&z, &id, &id, &z), "u".into())];
    let a = eta.generator(Gen::A).unwrap();
    let a_inv = eta.generator(Gen::AInv).unwrap();
    actions.push(compare_action(
        alg,
        &ext,
        &psi.generator(Gen::A).unwrap(),
        &block2(&a, &z, &z, &a_inv),
        "a".into(),
    ));
    for i in 1..psi.m() as u8 {
        let e = eta.generator(Gen::S(i)).unwrap();
        actions.push(compare_action(
            alg,
            &ext,
            &psi.generator(Gen::S(i)).unwrap(),
            &block2(&e, &z, &z, &e),
            format!("s{i}"),
        ));
    }
    ExtendedReport {
        certificate,
        actions,
    }
}

/// `s_i s_j = s_j s_i + 1` for `|i - j| = 1` and `s_i s_j = s_j s_i` for
/// `|i - j| >= 2`, with `s_i = u (v_i + v_{i+1})`.
pub fn s_commutation_holds(psi: &PsiRep<Qe>) -> bool {
    let alg = psi.algebra();
    let m = psi.m() as u8;
    (1..m).all(|i| {
        (1..m).filter(|&j| j != i).all(|j| {
            let si = psi.generator(Gen::S(i)).unwrap();
            let sj = psi.generator(Gen::S(j)).unwrap();
            let mut rhs = alg.mul(&sj, &si);
            if i.abs_diff(j) == 1 {
                rhs = rhs.add(&Element::one());
            }
            alg.mul(&si, &sj) == rhs
        })
    })
}

/// `η(a)` is diagonal with `α` on even-length words of X_m and `α^-1` on
/// odd-length ones.
pub fn parity_rule_holds(eta: &EtaRep, x: &WBasis) -> bool {
    let a = eta.generator(Gen::A).unwrap();
    a.is_diagonal()
        && x.words.iter().enumerate().all(|(k, word)| {
            let want = if word.len() % 2 == 0 {
                Qe::alpha()
            } else {
                Qe::alpha_inv()
            };
            *a.get(k, k) == want
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Exec;
    use crate::presentation::{schedule, Evaluator, Flavor};

    #[test]
    fn base_case_matrices() {
        let eta = EtaRep::new(3).unwrap();
        let s2 = eta.generator(Gen::S(2)).unwrap();
        assert_eq!(*s2.get(0, 1), Qe::one());
        assert!(s2.get(0, 0).is_zero());
        assert_eq!(eta.dim(), 2);
        assert_eq!(EtaRep::new(6).unwrap().dim(), 16);
    }

    #[test]
    fn eigen_equations() {
        let psi = PsiRep::<Qe>::new(3);
        let alg = psi.algebra();
        let w = eigenvector_w();
        let a = psi.generator(Gen::A).unwrap();
        assert_eq!(alg.mul(&w, &a), w.scale(&Qe::alpha()));
        assert_eq!(alg.mul(&w, &psi.generator(Gen::S(1)).unwrap()), w);
        let suv2 = alg
            .mul(&alg.u(), &alg.v(2))
            .scale(&Qe::from(Laurent::s()));
        assert_eq!(alg.mul(&w, &suv2), w.scale(&Qe::alpha_inv()));
    }

    #[test]
    fn x_basis_order() {
        let psi = PsiRep::<Qe>::new(4);
        let x = basis(&psi, BasisFlavor::X).unwrap();
        let labels: Vec<String> = (0..x.len()).map(|k| x.word_label(k)).collect();
        assert_eq!(labels, ["w", "w s3", "w s2", "w s3 s2"]);
    }

    #[test]
    fn eta_relators() {
        for m in 3..=5 {
            let eta = EtaRep::new(m).unwrap();
            let ev = Evaluator::new(&eta).unwrap();
            for (name, ok) in ev.check_schedule(&schedule(m, 6, Flavor::Y).unwrap(), Exec::Sequential) {
                assert_eq!(ok, Ok(true), "m={m} {name}");
            }
        }
    }

    #[test]
    fn action_small_m() {
        for m in 3..=5 {
            let psi = PsiRep::<Qe>::new(m);
            let eta = EtaRep::new(m).unwrap();
            let x = basis(&psi, BasisFlavor::X).unwrap();
            assert!(independence_certificate(&x.elements, m + 1).is_independent());
            let mut gens = vec![Gen::A, Gen::AInv];
            gens.extend((1..m as u8).map(Gen::S));
            for g in gens {
                let rep = verify_action(&psi, &eta, &x, g);
                assert!(rep.ok, "m={m} {rep:?}");
            }
            assert!(parity_rule_holds(&eta, &x));
            assert!(s_commutation_holds(&psi));
        }
    }

    #[test]
    fn extended_small_m() {
        for m in 3..=4 {
            let psi = PsiRep::<Qe>::new(m);
            let eta = EtaRep::new(m).unwrap();
            let x = basis(&psi, BasisFlavor::X).unwrap();
            let rep = verify_extended_action(&psi, &eta, &x);
            assert!(rep.passes(), "m={m} {rep:?}");
        }
    }

    #[test]
    fn repeated_vector_is_inconclusive() {
        let w = eigenvector_w();
        assert!(!independence_certificate(&[w.clone(), w], 4).is_independent());
    }

    #[test]
    fn x_and_y_span_agree() {
        for m in 3..=5 {
            let psi = PsiRep::<Qe>::new(m);
            let x = basis(&psi, BasisFlavor::X).unwrap();
            let y = basis(&psi, BasisFlavor::Y).unwrap();
            assert!(same_span(&x.elements, &y.elements, m + 1), "m={m}");
        }
    }
}
