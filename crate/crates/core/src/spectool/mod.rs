//! Finite specializations of φ and η, matrix-group enumeration and the
//! small cases of Table 1.

mod bfs;
mod table;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

pub use bfs::{group_order_bfs, DEFAULT_CAP};
pub use table::{expected_order, table1_check, DicksonValue, ExpectedOrder, GroupReport, OrderOutcome, Table1Options};

use crate::exec::Exec;
use crate::gf2ring::{coset_representatives, EvalError, EvalMap, FfElem, FfMatrix, FiniteField, Laurent};
use crate::ortho_rep::{OrthoError, PhiRep};
use crate::presentation::{
    b_word, b_word_untwisted, big_y_schedule_untwisted, schedule, EvalFailure, Evaluator, Flavor, Gen,
    PresentationError, RelationSchedule, Representation,
};
use crate::quadspace::{QuadSpace, RMatrix};
use crate::sidki_rep::{EtaRep, SidkiError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Ortho(#[from] OrthoError),
    #[error(transparent)]
    Sidki(#[from] SidkiError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Word(#[from] EvalFailure),
    #[error("relator {0} is not trivial after specialization")]
    RelatorFailed(String),
    #[error("enumeration passed the cap of {cap} elements ({reached} found)")]
    CapExceeded { cap: u64, reached: u64 },
    #[error("the form is degenerate for even m = {m}; rank(M + 1) mod 2 = {value}")]
    DegenerateForm { m: usize, value: u8 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RepKind {
    Phi,
    Eta,
}

impl fmt::Display for RepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RepKind::Phi => "phi",
            RepKind::Eta => "eta",
        })
    }
}

impl FromStr for RepKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "phi" => Ok(RepKind::Phi),
            "eta" => Ok(RepKind::Eta),
            _ => Err(format!("unknown representation {s}")),
        }
    }
}

/// Generator images of φ or η with coefficients pushed through an
/// evaluation map. For η the image is taken in every simple component of the
/// augmentation ideal at once (block diagonal, one block per cyclotomic
/// coset of 2 mod n).
#[derive(Debug, Clone)]
pub struct SpecializedRep {
    kind: RepKind,
    m: usize,
    map: EvalMap,
    components: Vec<u32>,
    a: FfMatrix,
    tau: Option<FfMatrix>,
    s: Vec<FfMatrix>,
    b: Vec<FfMatrix>,
}

fn block_diag(blocks: &[FfMatrix]) -> FfMatrix {
    let n: usize = blocks.iter().map(|b| b.rows()).sum();
    let mut out = FfMatrix::zero(n, n);
    let mut off = 0;
    for b in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                out.set(off + i, off + j, b.get(i, j));
            }
        }
        off += b.rows();
    }
    out
}

fn eval_phi(map: &EvalMap, x: &RMatrix<Laurent>) -> FfMatrix {
    FfMatrix::from_fn(x.dim(), x.dim(), |i, j| map.eval_laurent(x.get(i, j)))
}

/// Relator schedule checked after specializing: ỹ(m) and Y(m) for φ,
/// y(m) and Y(m) (untwisted b-words) for η.
pub fn specialization_schedule(kind: RepKind, m: usize, kmax: usize) -> Result<RelationSchedule, SpecError> {
    let (mut base, big) = match kind {
        RepKind::Phi => (schedule(m, kmax, Flavor::YTilde)?, schedule(m, kmax, Flavor::BigY)?),
        RepKind::Eta => (schedule(m, kmax, Flavor::Y)?, big_y_schedule_untwisted(m, kmax)?),
    };
    base.relators.extend(big.relators);
    Ok(base)
}

/// Evaluates [`specialization_schedule`] in `rep`; one flag per relator.
pub fn check_relators(rep: &SpecializedRep, kmax: usize, exec: Exec) -> Result<Vec<(String, bool)>, SpecError> {
    let ev = Evaluator::new(rep)?;
    let sched = specialization_schedule(rep.kind, rep.m, kmax)?;
    ev.check_schedule(&sched, exec)
        .into_iter()
        .map(|(name, ok)| Ok((name, ok?)))
        .collect()
}

/// Relator depth used by [`specialize`].
pub const SPECIALIZE_KMAX: usize = 10;

/// Specializes and checks every relator of [`specialization_schedule`] up to
/// `k = 10`.
pub fn specialize(m: usize, n: u32, kind: RepKind) -> Result<SpecializedRep, SpecError> {
    specialize_with(m, n, kind, None, SPECIALIZE_KMAX, Exec::default())
}

/// As [`specialize`] with an explicit modulus, relator depth (`0` skips the
/// check) and execution strategy.
pub fn specialize_with(
    m: usize,
    n: u32,
    kind: RepKind,
    modulus: Option<u64>,
    kmax: usize,
    exec: Exec,
) -> Result<SpecializedRep, SpecError> {
    let map = EvalMap::new(n, modulus)?;
    let rep = match kind {
        RepKind::Phi => {
            let phi = PhiRep::new(m)?;
            let g = |x: Gen| eval_phi(&map, &phi.generator(x).expect("in range"));
            SpecializedRep {
                kind,
                m,
                components: vec![1],
                a: g(Gen::A),
                tau: Some(g(Gen::Tau)),
                s: (1..m).map(|i| g(Gen::S(i as u8))).collect(),
                b: Vec::new(),
                map,
            }
        }
        RepKind::Eta => {
            let eta = EtaRep::new(m)?;
            let components = coset_representatives(n);
            let maps: Vec<EvalMap> = components.iter().map(|&c| map.power(c)).collect();
            let g = |x: Gen| {
                let sym = eta.generator(x).expect("in range");
                let blocks: Vec<FfMatrix> = maps
                    .iter()
                    .map(|mp| FfMatrix::from_fn(sym.dim(), sym.dim(), |i, j| mp.eval_qe(sym.get(i, j))))
                    .collect();
                block_diag(&blocks)
            };
            SpecializedRep {
                kind,
                m,
                a: g(Gen::A),
                tau: None,
                s: (1..m).map(|i| g(Gen::S(i as u8))).collect(),
                b: Vec::new(),
                components,
                map,
            }
        }
    };
    rep.finish(kmax, exec)
}

impl SpecializedRep {
    fn finish(mut self, kmax: usize, exec: Exec) -> Result<Self, SpecError> {
        let ev = Evaluator::new(&self)?;
        let b = (1..=self.m)
            .map(|i| {
                let w = match self.kind {
                    RepKind::Phi => b_word(i, self.m)?,
                    RepKind::Eta => b_word_untwisted(i, self.m)?,
                };
                Ok(ev.evaluate(&w)?)
            })
            .collect::<Result<Vec<_>, SpecError>>()?;
        self.b = b;
        if kmax > 0 {
            if let Some((name, _)) = check_relators(&self, kmax, exec)?.into_iter().find(|(_, ok)| !ok) {
                return Err(SpecError::RelatorFailed(name));
            }
        }
        Ok(self)
    }

    pub fn kind(&self) -> RepKind {
        self.kind
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.map.n()
    }

    pub fn map(&self) -> &EvalMap {
        &self.map
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        self.map.field()
    }

    /// Cyclotomic coset representatives `c` with one block for `α -> ζ^c`.
    pub fn components(&self) -> &[u32] {
        &self.components
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    pub fn a(&self) -> &FfMatrix {
        &self.a
    }

    pub fn tau(&self) -> Option<&FfMatrix> {
        self.tau.as_ref()
    }

    /// `s_i` for `i = 1..m-1`.
    pub fn s(&self, i: usize) -> Option<&FfMatrix> {
        i.checked_sub(1).and_then(|k| self.s.get(k))
    }

    /// `s̃_i = τ s_i`; only for φ.
    pub fn s_tilde(&self, i: usize) -> Option<FfMatrix> {
        Some(self.tau.as_ref()?.mul(self.field(), self.s(i)?))
    }

    /// Images of `b_1, ..., b_m` (untwisted words for η).
    pub fn b_generators(&self) -> &[FfMatrix] {
        &self.b
    }

    /// The generators `a, s_i` and, for φ, `τ`.
    pub fn all_generators(&self) -> Vec<FfMatrix> {
        let mut out = vec![self.a.clone()];
        out.extend(self.tau.iter().cloned());
        out.extend(self.s.iter().cloned());
        out
    }

    /// Whether `x` preserves the specialized quadratic form (φ only).
    pub fn preserves_form(&self, x: &FfMatrix) -> bool {
        self.kind == RepKind::Phi && preserves_specialized_form(&self.map, self.m, x)
    }
}

impl Representation for SpecializedRep {
    type Elem = FfMatrix;

    fn identity(&self) -> FfMatrix {
        FfMatrix::identity(self.dim())
    }

    fn compose(&self, x: &FfMatrix, y: &FfMatrix) -> FfMatrix {
        x.mul(self.field(), y)
    }

    fn invert(&self, x: &FfMatrix) -> Result<FfMatrix, String> {
        // generator images have finite order, so x^-1 = x^(ord - 1)
        let ord = x
            .order(self.field(), 1 << 20)
            .ok_or_else(|| "matrix of unknown order".to_string())?;
        Ok(x.pow(self.field(), ord - 1))
    }

    fn is_identity(&self, x: &FfMatrix) -> bool {
        x.is_identity()
    }

    fn primitive(&self, g: Gen) -> Option<FfMatrix> {
        match g {
            Gen::A => Some(self.a.clone()),
            Gen::Tau => self.tau.clone(),
            Gen::S(i) => self.s(i as usize).cloned(),
            _ => None,
        }
    }

    fn max_index(&self) -> u8 {
        (self.m - 1) as u8
    }
}

fn specialized_q(map: &EvalMap, space: &QuadSpace, x: &[FfElem]) -> FfElem {
    let f = map.field();
    let mut acc = 0;
    let mut prefix = 0;
    for (i, &l) in x.iter().enumerate() {
        if l == 0 {
            continue;
        }
        acc ^= f.mul(f.mul(l, l), map.eval_laurent(space.q_basis(i)));
        acc ^= f.mul(prefix, l);
        prefix ^= l;
    }
    acc
}

fn specialized_bilin(map: &EvalMap, x: &[FfElem], y: &[FfElem]) -> FfElem {
    let f = map.field();
    let sx = x.iter().fold(0, |a, b| a ^ b);
    let sy = y.iter().fold(0, |a, b| a ^ b);
    x.iter().zip(y).fold(f.mul(sx, sy), |a, (&p, &q)| a ^ f.mul(p, q))
}

/// Whether the rows of `x` have the q-values and pairings of the basis.
pub fn preserves_specialized_form(map: &EvalMap, m: usize, x: &FfMatrix) -> bool {
    let Ok(space) = QuadSpace::new(m) else {
        return false;
    };
    let n = space.rank();
    if x.rows() != n || x.cols() != n {
        return false;
    }
    (0..n).all(|i| specialized_q(map, &space, x.row(i)) == map.eval_laurent(space.q_basis(i)))
        && (0..n).all(|i| (i + 1..n).all(|j| specialized_bilin(map, x.row(i), x.row(j)) == space.gram(i, j) as u32))
}

/// Dickson invariant `rank(M + 1) mod 2`. For even m the form has a radical
/// and the value is returned inside [`SpecError::DegenerateForm`].
pub fn dickson(field: &FiniteField, x: &FfMatrix, m: usize) -> Result<u8, SpecError> {
    let value = (x.add(&FfMatrix::identity(x.rows())).rank(field) % 2) as u8;
    if m % 2 == 0 {
        Err(SpecError::DegenerateForm { m, value })
    } else {
        Ok(value)
    }
}

/// Dimension of the radical of the specialized Gram matrix (its entries are
/// 0 and 1, so this does not depend on the map).
pub fn radical_rank(field: &FiniteField, m: usize) -> usize {
    let n = m + 1;
    let gram = FfMatrix::from_fn(n, n, |i, j| (i != j) as u32);
    n - gram.rank(field)
}

/// `q(r)` for `r = u + v_1 + ... + v_m` at the specialization; `None` for
/// odd m, where r is not radical.
pub fn q_of_radical(map: &EvalMap, m: usize) -> Option<FfElem> {
    let space = QuadSpace::new(m).ok()?;
    let r = space.radical_vector()?;
    Some(map.eval_laurent(&space.q_eval(&r)))
}
