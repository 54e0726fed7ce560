//! Verification suites, each producing a list of [`CheckResult`]s. The CLI
//! is a thin front end over these.

use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clifford::{center_candidates, kernel_element, power_identities, spinor_witness, Algebra, PsiRep};
use crate::exec::Exec;
use crate::gf2ring::{coset_representatives, cyclotomic_split, Laurent, Qe, Scalar};
use crate::ortho_rep::{closed_form_conjugate, entries_in_t_polynomials, to_laurent, PhiRep};
use crate::presentation::{
    big_y_schedule_untwisted, random_word, schedule, Evaluator, Flavor, Gen, RelationSchedule, Representation,
};
use crate::quadspace::{hyperbolic_decompose, DecomposeError, HyperbolicDecomposition, QuadSpace, STATE_TABLE};
use crate::report::CheckResult;
use crate::sidki_rep::{
    self, independence_certificate, parity_rule_holds, s_commutation_holds, same_span, verify_action,
    verify_extended_action, BasisFlavor, EtaRep,
};
use crate::spectool::{table1_check, GroupReport, Table1Options};

/// A problem with the requested parameters (as opposed to a failed check).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct SuiteError(pub String);

fn err(e: impl ToString) -> SuiteError {
    SuiteError(e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepSelect {
    Phi,
    Psi,
    Eta,
    /// φ and ψ.
    Both,
    All,
}

impl RepSelect {
    fn has(self, r: RepSelect) -> bool {
        self == r || self == RepSelect::All || (self == RepSelect::Both && matches!(r, RepSelect::Phi | RepSelect::Psi))
    }
}

impl FromStr for RepSelect {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "phi" => Ok(RepSelect::Phi),
            "psi" => Ok(RepSelect::Psi),
            "eta" => Ok(RepSelect::Eta),
            "both" => Ok(RepSelect::Both),
            "all" => Ok(RepSelect::All),
            _ => Err(format!("unknown representation {s} (phi, psi, eta, both, all)")),
        }
    }
}

fn run_schedule<R: Representation>(rep: &R, name: &str, sched: &RelationSchedule, exec: Exec) -> CheckResult
where
    R::Elem: Send,
{
    let ev = match Evaluator::new(rep) {
        Ok(ev) => ev,
        Err(e) => return CheckResult::fail(name, e.to_string()),
    };
    let results = ev.check_schedule(sched, exec);
    let total = results.len();
    let bad: Vec<String> = results
        .into_iter()
        .filter_map(|(n, ok)| match ok {
            Ok(true) => None,
            Ok(false) => Some(n),
            Err(e) => Some(format!("{n}: {e}")),
        })
        .collect();
    let c = CheckResult::compare(name, format!("{total}/{total}"), format!("{}/{total}", total - bad.len()));
    if bad.is_empty() {
        c
    } else {
        c.with_detail(format!("nontrivial: {}", bad.join(", ")))
    }
}

/// Every relator of ỹ(m) under φ and ψ and of y(m) under η; the Y(m)
/// relators under φ, and under η for m <= 6.
pub fn relations(m: usize, kmax: usize, reps: RepSelect, exec: Exec) -> Result<Vec<CheckResult>, SuiteError> {
    let yt = schedule(m, kmax, Flavor::YTilde).map_err(err)?;
    let big = schedule(m, kmax, Flavor::BigY).map_err(err)?;
    let mut out = Vec::new();
    if reps.has(RepSelect::Phi) {
        let phi = PhiRep::new(m).map_err(err)?;
        out.push(run_schedule(&phi, "phi_ytilde", &yt, exec));
        out.push(run_schedule(&phi, "phi_big_y", &big, exec));
    }
    if reps.has(RepSelect::Psi) {
        let psi = PsiRep::<Laurent>::new(m);
        out.push(run_schedule(&psi, "psi_ytilde", &yt, exec));
    }
    if reps.has(RepSelect::Eta) {
        let eta = EtaRep::new(m).map_err(err)?;
        let y = schedule(m, kmax, Flavor::Y).map_err(err)?;
        out.push(run_schedule(&eta, "eta_y", &y, exec));
        if m <= 6 {
            let big_u = big_y_schedule_untwisted(m, kmax).map_err(err)?;
            out.push(run_schedule(&eta, "eta_big_y", &big_u, exec));
        }
    }
    Ok(out)
}

/// `π(ψ(w)) = φ(w)` on the generators and on `words` random words of length
/// at most `max_len`; also checks that ψ of every generator has spinor
/// norm one.
pub fn lifting(m: usize, words: usize, max_len: usize, seed: u64, exec: Exec) -> Result<Vec<CheckResult>, SuiteError> {
    let phi = PhiRep::new(m).map_err(err)?;
    let psi = PsiRep::<Laurent>::new(m);
    let alg = psi.algebra();
    let ev_phi = Evaluator::new(&phi).map_err(err)?;
    let ev_psi = Evaluator::new(&psi).map_err(err)?;
    let mut gens = vec![Gen::A, Gen::AInv, Gen::Tau];
    for i in 1..m as u8 {
        gens.extend([Gen::S(i), Gen::STilde(i)]);
    }
    let mut out = Vec::new();
    let bad_gens: Vec<String> = gens
        .iter()
        .filter(|&&g| alg.pi_matrix(&psi.generator(g).unwrap()).ok() != phi.generator(g))
        .map(|g| g.to_string())
        .collect();
    out.push(CheckResult::from_bool(
        "lift_generators",
        bad_gens.is_empty(),
        format!("differs on {}", bad_gens.join(" ")),
    ));
    let bad_norms: Vec<String> = gens
        .iter()
        .filter(|&&g| !alg.spinor_norm(&psi.generator(g).unwrap()).is_ok_and(|n| n.is_one()))
        .map(|g| g.to_string())
        .collect();
    out.push(CheckResult::from_bool(
        "generator_spinor_norms",
        bad_norms.is_empty(),
        format!("norm != 1 for {}", bad_norms.join(" ")),
    ));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ws: Vec<_> = (0..words)
        .map(|_| {
            let len = rng.gen_range(1..=max_len.max(1));
            random_word(&mut rng, m, len, true)
        })
        .collect();
    let ok = exec.map(&ws, |w| {
        let (Ok(p), Ok(c)) = (ev_phi.evaluate(w), ev_psi.evaluate(w)) else {
            return false;
        };
        alg.pi_matrix(&c).is_ok_and(|x| x == p)
    });
    let bad: Vec<String> = ws
        .iter()
        .zip(&ok)
        .filter(|(_, ok)| !**ok)
        .take(3)
        .map(|(w, _)| w.to_string())
        .collect();
    let passed = ok.iter().filter(|x| **x).count();
    let c = CheckResult::compare("lift_random_words", words, passed);
    out.push(if bad.is_empty() {
        c
    } else {
        c.with_detail(format!("first failures: {}", bad.join(" | ")))
    });
    Ok(out)
}

/// The closed form of `a^-k s_1 a^k` against repeated conjugation, and its
/// entries lying in GF(2)[t].
pub fn closed_form(m: usize, kmax: usize) -> Result<Vec<CheckResult>, SuiteError> {
    let phi = PhiRep::new(m).map_err(err)?;
    let mut out = Vec::new();
    for k in 0..=kmax {
        let cf = closed_form_conjugate(m, k as i64).map_err(err)?;
        let name = format!("closed_form_k{k}");
        out.push(match to_laurent(&cf) {
            None => CheckResult::fail(name, "closed form has entries outside GF(2)[s, s^-1]"),
            Some(l) => {
                let same = l == phi.iterated_conjugate(k as u64);
                let poly = entries_in_t_polynomials(&l);
                CheckResult::from_bool(
                    name,
                    same && poly,
                    if same {
                        "an entry is not a polynomial in t"
                    } else {
                        "differs from the iterated conjugate"
                    },
                )
            }
        });
    }
    Ok(out)
}

/// `(u v_i)^k = a_k + b_k u v_i`, `(v_i u)^k = a_k + b_k v_i u` and
/// `(v_1 u)^k (v_2 u)^k = (u v_2)^k (u v_1)^k`.
pub fn powers(m: usize, kmax: usize, exec: Exec) -> Result<Vec<CheckResult>, SuiteError> {
    if m < 2 {
        return Err(err("need m >= 2"));
    }
    let alg = Algebra::new(m);
    let ks: Vec<u64> = (0..=kmax as u64).collect();
    Ok(exec.map(&ks, |&k| {
        let p = power_identities(&alg, k);
        let mut failed = Vec::new();
        for (ok, what) in [(p.uv_holds, "uv"), (p.vu_holds, "vu"), (p.swap_holds, "swap")] {
            if !ok {
                failed.push(what);
            }
        }
        CheckResult::from_bool(format!("powers_k{k}"), failed.is_empty(), format!("fails: {}", failed.join(" ")))
            .with_actual(format!("a={} b={}", p.a, p.b))
    }))
}

/// The basis X_m of the Sidki submodule: independence, span equal to that of
/// Y_m, and right multiplication by ψ matching η.
pub fn basis(m: usize) -> Result<Vec<CheckResult>, SuiteError> {
    let psi = PsiRep::<Qe>::new(m);
    let eta = EtaRep::new(m).map_err(err)?;
    let x = sidki_rep::basis(&psi, BasisFlavor::X).map_err(err)?;
    let y = sidki_rep::basis(&psi, BasisFlavor::Y).map_err(err)?;
    let gens = psi.algebra().generators();
    let mut out = vec![CheckResult::compare("basis_size", 1usize << (m - 2), x.len())];
    let cert = independence_certificate(&x.elements, gens);
    out.push(CheckResult::from_bool("x_independent", cert.is_independent(), format!("{cert:?}")).with_actual(format!("{cert:?}")));
    out.push(CheckResult::from_bool(
        "x_y_same_span",
        same_span(&x.elements, &y.elements, gens),
        "spans differ at every specialization tried",
    ));
    let mut action_gens = vec![Gen::A, Gen::AInv];
    action_gens.extend((1..m as u8).map(Gen::S));
    for g in action_gens {
        let r = verify_action(&psi, &eta, &x, g);
        out.push(CheckResult::from_bool(
            format!("action_{g}"),
            r.ok,
            format!("{:?}", r.witness),
        ));
    }
    out.push(CheckResult::from_bool("parity_rule", parity_rule_holds(&eta, &x), "η(a) diagonal does not follow word parity"));
    out.push(CheckResult::from_bool("s_commutation", s_commutation_holds(&psi), "s_i s_j relation fails"));
    Ok(out)
}

/// The rank 2^(m-1) module `X_m ∪ X_m u` carrying ψ(ỹ(m)).
pub fn extended(m: usize) -> Result<Vec<CheckResult>, SuiteError> {
    let psi = PsiRep::<Qe>::new(m);
    let eta = EtaRep::new(m).map_err(err)?;
    let x = sidki_rep::basis(&psi, BasisFlavor::X).map_err(err)?;
    let rep = verify_extended_action(&psi, &eta, &x);
    let mut out = vec![CheckResult::from_bool(
        "extended_independent",
        rep.certificate.is_independent(),
        format!("{:?}", rep.certificate),
    )];
    for a in &rep.actions {
        out.push(CheckResult::from_bool(format!("extended_action_{}", a.generator), a.ok, format!("{:?}", a.witness)));
    }
    Ok(out)
}

/// Centrality of 1 and r, the specialized center dimension, kernel
/// elements of π for even m and the spinor-norm witness.
pub fn center(m: usize, n: u32) -> Result<Vec<CheckResult>, SuiteError> {
    let rep = center_candidates(m, n).map_err(err)?;
    let mut out = vec![
        CheckResult::from_bool("one_central", rep.one_central, "1 is not central"),
        CheckResult::compare("r_central", m % 2 == 0, rep.r_central),
        CheckResult::compare("center_dimension", rep.expected_dimension, rep.specialized_dimension)
            .with_detail(format!("n={} modulus {}", rep.n, rep.modulus)),
    ];
    let alg = Algebra::new(m);
    if m % 2 == 0 {
        for (tag, lambda) in [("one", Laurent::one()), ("s", Laurent::s())] {
            let name = format!("kernel_lambda_{tag}");
            out.push(match kernel_element(&alg, &lambda) {
                Ok(w) => CheckResult::from_bool(
                    name,
                    w.exhibits_non_injectivity(),
                    format!("norm one: {}, π(z) = 1: {}", w.norm_is_one(), w.pi_is_identity()),
                ),
                Err(e) => CheckResult::fail(name, e.to_string()),
            });
        }
    }
    if m >= 4 {
        out.push(match spinor_witness(&alg) {
            Ok((_, norm)) => {
                let c = CheckResult::compare("spinor_witness_norm", Laurent::s().to_string(), norm.to_string());
                if norm.is_square_unit() {
                    CheckResult::fail("spinor_witness_norm", "norm is a square unit")
                } else {
                    c
                }
            }
            Err(e) => CheckResult::fail("spinor_witness_norm", e),
        });
    }
    Ok(out)
}

fn vector_label(space: &QuadSpace, v: &[Laurent]) -> String {
    let labels = space.labels();
    let terms: Vec<&str> = v
        .iter()
        .zip(&labels)
        .filter(|(c, _)| !c.is_zero())
        .map(|(_, l)| l.as_str())
        .collect();
    terms.join("+")
}

fn table_row_solves(row: usize) -> bool {
    let (q, (a, b)) = STATE_TABLE[row];
    let val = |(x, y): (bool, bool)| {
        let mut v = Laurent::zero();
        if x {
            v = v.add(&Laurent::t_inv());
        }
        if y {
            v = v.add(&Laurent::one());
        }
        v
    };
    let bit = |x: bool| if x { Laurent::one() } else { Laurent::zero() };
    let (a, b) = (bit(a), bit(b));
    let lhs = a
        .mul(&a)
        .mul(&val(q[0]))
        .add(&b.mul(&b).mul(&val(q[1])))
        .add(&val(q[2]))
        .add(&a)
        .add(&b)
        .add(&a.mul(&b));
    lhs.is_zero()
}

/// Splitting of the rank `rank` module into hyperbolic lines plus a rank 2
/// or 3 residual.
pub fn decompose(rank: usize) -> Result<(Vec<CheckResult>, Option<HyperbolicDecomposition>), SuiteError> {
    if rank < 3 {
        return Err(err("need rank >= 3"));
    }
    let space = QuadSpace::new(rank - 1).map_err(err)?;
    let d = match hyperbolic_decompose(&space) {
        Ok(d) => d,
        Err(DecomposeError::RankTooSmall { residual, .. }) => residual,
        Err(e) => return Ok((vec![CheckResult::fail("decompose", e.to_string())], None)),
    };
    let want_pairs = (rank - if rank % 2 == 0 { 2 } else { 3 }) / 2;
    let mut out = vec![
        CheckResult::compare("pairs", want_pairs, d.pairs.len()),
        CheckResult::compare("residual_rank", if rank % 2 == 0 { 2 } else { 3 }, d.residual.len()),
        match d.check(&space) {
            Ok(()) => CheckResult::pass("invariants"),
            Err(e) => CheckResult::fail("invariants", e),
        },
    ];
    let rows_ok = (0..STATE_TABLE.len()).all(table_row_solves);
    out.push(CheckResult::from_bool("state_table_solutions", rows_ok, "a table row does not solve the pair equation"));
    let periodic = d.steps.windows(5).all(|w| w[0].table_row == w[4].table_row);
    out.push(CheckResult::from_bool("state_period_four", periodic, "table rows are not 4-periodic"));
    for (i, (e, f)) in d.pairs.iter().enumerate() {
        let step = &d.steps[i];
        out.push(
            CheckResult::pass(format!("pair_{}", i + 1)).with_actual(format!(
                "e={} f={} row={}",
                vector_label(&space, e),
                vector_label(&space, f),
                step.table_row
            )),
        );
    }
    let res: Vec<String> = d.residual.iter().map(|v| vector_label(&space, v)).collect();
    out.push(CheckResult::pass("residual").with_actual(res.join(", ")));
    Ok((out, Some(d)))
}

/// Specialization of φ and η at n and, optionally, enumeration of the
/// b-generated groups.
pub fn specialize(m: usize, n: u32, opts: &Table1Options) -> Result<(Vec<CheckResult>, GroupReport), SuiteError> {
    let rep = table1_check(m, n, opts).map_err(err)?;
    let mut out = vec![CheckResult::pass("field")
        .with_actual(format!("GF(2^{}) mod {}", rep.field_degree, rep.field))
        .with_detail(format!("t generates GF(2^{})", rep.t_subfield_degree))];
    if let Some(e) = &rep.expected {
        out.push(CheckResult::pass("table_entry").with_actual(e.label.clone()));
    }
    out.extend(rep.checks.iter().cloned());
    if let Some(order) = rep.full_phi_order.order() {
        out.push(CheckResult::skip("full_phi_image_order", "informational").with_actual(order.to_string()));
    }
    Ok((out, rep))
}

fn coset_sizes(n: u32) -> Vec<u32> {
    let mut sizes: Vec<u32> = coset_representatives(n)
        .into_iter()
        .map(|c| {
            let mut x = (2 * c) % n;
            let mut k = 1;
            while x != c {
                x = (2 * x) % n;
                k += 1;
            }
            k
        })
        .collect();
    sizes.sort_unstable();
    sizes
}

/// Degrees of the simple components of the augmentation ideal of GF(2)C_n,
/// from the factorization of `1 + x + ... + x^(n-1)` and from cyclotomic
/// cosets.
pub fn augmentation(ns: &[u32]) -> Result<Vec<CheckResult>, SuiteError> {
    let mut out = Vec::new();
    for &n in ns {
        let split = cyclotomic_split(n).map_err(err)?;
        let fmt = |v: &[u32]| v.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",");
        out.push(CheckResult::compare(format!("split_n{n}"), fmt(&coset_sizes(n)), fmt(&split)));
        out.push(CheckResult::compare(format!("degree_sum_n{n}"), n - 1, split.iter().sum()));
    }
    Ok(out)
}
