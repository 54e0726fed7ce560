//! Words in the generators of ỹ(m) and the relator lists of y(m), ỹ(m) and
//! Y(m), together with a small contract for evaluating words in any group.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Serialize, Serializer};

use crate::exec::Exec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    A,
    AInv,
    Tau,
    /// `s_i` of y(m), `1 <= i <= m - 1`.
    S(u8),
    /// `s̃_i = τ s_i`.
    STilde(u8),
}

impl Gen {
    pub fn inverse(self) -> Gen {
        match self {
            Gen::A => Gen::AInv,
            Gen::AInv => Gen::A,
            g => g,
        }
    }

    pub fn index(self) -> Option<u8> {
        match self {
            Gen::S(i) | Gen::STilde(i) => Some(i),
            _ => None,
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::A => write!(f, "a"),
            Gen::AInv => write!(f, "A"),
            Gen::Tau => write!(f, "t"),
            Gen::S(i) => write!(f, "s{i}"),
            Gen::STilde(i) => write!(f, "S{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PresentationError {
    #[error("generator index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("cannot parse word at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Gen>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Gen] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).copied().collect())
    }

    /// Formal inverse. `τ`, `s_i` and `s̃_i` are treated as involutions.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|g| g.inverse()).collect())
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        Word(
            std::iter::repeat(base.0)
                .take(k.unsigned_abs() as usize)
                .flatten()
                .collect(),
        )
    }

    /// `x^-1 self x` (right conjugation, `self^x`).
    pub fn conjugate_by(&self, x: &Word) -> Word {
        x.inverse().concat(self).concat(x)
    }

    /// Largest generator index used, if any.
    pub fn max_index(&self) -> Option<u8> {
        self.0.iter().filter_map(|g| g.index()).max()
    }

    pub fn uses_tau(&self) -> bool {
        self.0
            .iter()
            .any(|g| matches!(g, Gen::Tau | Gen::STilde(_)))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl FromStr for Word {
    type Err = PresentationError;

    /// Accepts letters with or without separating whitespace: `"a s1 A t"`
    /// or `"as1At"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bytes = s.as_bytes();
        let mut out = Vec::new();
        let mut pos = 0;
        while pos < bytes.len() {
            let c = bytes[pos];
            pos += 1;
            let g = match c {
                b' ' | b'\t' | b'\n' | b'.' | b'*' => continue,
                b'a' => Gen::A,
                b'A' => Gen::AInv,
                b't' => Gen::Tau,
                b's' | b'S' => {
                    let start = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    let i: u8 = s[start..pos].parse().map_err(|_| PresentationError::Parse {
                        pos: start,
                        msg: "expected generator index".into(),
                    })?;
                    if c == b's' {
                        Gen::S(i)
                    } else {
                        Gen::STilde(i)
                    }
                }
                _ => {
                    return Err(PresentationError::Parse {
                        pos: pos - 1,
                        msg: format!("unexpected {:?}", c as char),
                    })
                }
            };
            out.push(g);
        }
        Ok(Word(out))
    }
}

fn w(letters: &[Gen]) -> Word {
    Word(letters.to_vec())
}

/// `b_1 = a`, `b_i = s̃_{i-1} b_{i-1} s̃_{i-1}`.
pub fn b_word(i: usize, m: usize) -> Result<Word, PresentationError> {
    b_word_with(i, m, Gen::STilde)
}

/// The same recursion conjugating by `s_i` instead of `s̃_i`. Since `τ`
/// inverts `a` and commutes with every `s_i`, this word equals
/// `b_i^((-1)^(i-1))`; it lets representations of y(m) without `τ` see the
/// b-elements.
pub fn b_word_untwisted(i: usize, m: usize) -> Result<Word, PresentationError> {
    b_word_with(i, m, Gen::S)
}

fn b_word_with(i: usize, m: usize, conj: fn(u8) -> Gen) -> Result<Word, PresentationError> {
    if i == 0 || i > m {
        return Err(PresentationError::IndexOutOfRange { index: i, max: m });
    }
    let mut word = w(&[Gen::A]);
    for j in 1..i {
        let s = conj(j as u8);
        word = Word(std::iter::once(s).chain(word.0).chain([s]).collect());
    }
    Ok(word)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// Y(m): `(b_i^k b_j^k)^2` for ordered pairs `i != j`.
    BigY,
    /// y(m): Coxeter relations, `[s_1, s_1^(a^k)]`, `a^(s_i) a`.
    Y,
    /// ỹ(m): y(m) plus `τ^2`, `[τ, s_i]`, `τ a τ a`.
    YTilde,
}

impl FromStr for Flavor {
    type Err = PresentationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Y" | "big-y" => Ok(Flavor::BigY),
            "y" => Ok(Flavor::Y),
            "y-tilde" | "ytilde" | "yt" => Ok(Flavor::YTilde),
            _ => Err(PresentationError::BadParams(format!("unknown flavor {s}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Relator {
    pub name: String,
    pub word: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationSchedule {
    pub m: usize,
    pub kmax: usize,
    pub relators: Vec<Relator>,
}

impl RelationSchedule {
    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.relators.iter().map(|r| r.name.as_str())
    }

    pub fn get(&self, name: &str) -> Option<&Word> {
        self.relators.iter().find(|r| r.name == name).map(|r| &r.word)
    }
}

fn check_params(m: usize, kmax: usize) -> Result<(), PresentationError> {
    if m < 3 {
        return Err(PresentationError::BadParams(format!("m = {m} < 3")));
    }
    if m > 64 {
        return Err(PresentationError::BadParams(format!("m = {m} > 64")));
    }
    if kmax < 1 {
        return Err(PresentationError::BadParams("K must be at least 1".into()));
    }
    Ok(())
}

pub fn schedule(m: usize, kmax: usize, flavor: Flavor) -> Result<RelationSchedule, PresentationError> {
    check_params(m, kmax)?;
    let mut rels = Vec::new();
    let mut push = |name: String, word: Word| rels.push(Relator { name, word });
    match flavor {
        Flavor::BigY => {
            let b: Vec<Word> = (1..=m).map(|i| b_word(i, m)).collect::<Result<_, _>>()?;
            for (name, word) in big_y_relators(m, kmax, &b, |_| 1) {
                push(name, word);
            }
        }
        Flavor::Y | Flavor::YTilde => {
            let s = |i: usize| Gen::S(i as u8);
            for i in 1..m {
                push(format!("s_sq_{i}"), w(&[s(i), s(i)]));
            }
            for i in 1..m - 1 {
                push(format!("braid_{i}{}", i + 1), w(&[s(i), s(i + 1)]).pow(3));
            }
            for i in 1..m {
                for j in i + 2..m {
                    push(format!("far_{i}_{j}"), w(&[s(i), s(j)]).pow(2));
                }
            }
            let a = w(&[Gen::A]);
            for k in 1..=kmax as i64 {
                // [s_1, s_1^(a^k)] with s_1 an involution
                let conj = w(&[s(1)]).conjugate_by(&a.pow(k));
                push(format!("comm_k{k}"), w(&[s(1)]).concat(&conj).pow(2));
            }
            for i in 2..m {
                push(format!("inv_s{i}"), w(&[s(i), Gen::A, s(i), Gen::A]));
            }
            if flavor == Flavor::YTilde {
                push("tau_sq".into(), w(&[Gen::Tau, Gen::Tau]));
                for i in 1..m {
                    push(format!("tau_comm_s{i}"), w(&[Gen::Tau, s(i)]).pow(2));
                }
                push("tau_inverts_a".into(), w(&[Gen::Tau, Gen::A, Gen::Tau, Gen::A]));
            }
        }
    }
    Ok(RelationSchedule {
        m,
        kmax,
        relators: rels,
    })
}

/// The Y(m) relators written with the untwisted b-words, so that they can be
/// evaluated in representations of y(m) alone. Relator names match
/// [`schedule`] with [`Flavor::BigY`].
pub fn big_y_schedule_untwisted(m: usize, kmax: usize) -> Result<RelationSchedule, PresentationError> {
    check_params(m, kmax)?;
    let b: Vec<Word> = (1..=m)
        .map(|i| b_word_untwisted(i, m))
        .collect::<Result<_, _>>()?;
    // untwisted b_i is b_i^((-1)^(i-1))
    let sign = |i: usize| if i % 2 == 1 { 1 } else { -1 };
    let relators = big_y_relators(m, kmax, &b, sign)
        .into_iter()
        .map(|(name, word)| Relator { name, word })
        .collect();
    Ok(RelationSchedule { m, kmax, relators })
}

fn big_y_relators(m: usize, kmax: usize, b: &[Word], sign: impl Fn(usize) -> i64) -> Vec<(String, Word)> {
    let mut out = Vec::new();
    for i in 1..=m {
        for j in 1..=m {
            if i == j {
                continue;
            }
            for k in (1..=kmax as i64).flat_map(|k| [k, -k]) {
                let word = b[i - 1]
                    .pow(sign(i) * k)
                    .concat(&b[j - 1].pow(sign(j) * k))
                    .pow(2);
                out.push((format!("bpair_{i}_{j}_k{k}"), word));
            }
        }
    }
    out
}

/// Uniformly random word. With `with_tau` the alphabet is that of ỹ(m),
/// otherwise only `a`, `a^-1` and the `s_i`.
pub fn random_word<R: Rng>(rng: &mut R, m: usize, len: usize, with_tau: bool) -> Word {
    let mut alphabet = vec![Gen::A, Gen::AInv];
    alphabet.extend((1..m).map(|i| Gen::S(i as u8)));
    if with_tau {
        alphabet.push(Gen::Tau);
        alphabet.extend((1..m).map(|i| Gen::STilde(i as u8)));
    }
    Word((0..len).map(|_| alphabet[rng.gen_range(0..alphabet.len())]).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalFailure {
    #[error("generator {0} has no image in this representation")]
    Unsupported(Gen),
    #[error("image of a is not invertible: {0}")]
    NotInvertible(String),
}

/// A homomorphism target. Only `A`, `Tau` and `S(i)` need images; the
/// evaluator derives `AInv` by inversion and `STilde(i)` as `Tau * S(i)`.
pub trait Representation: Sync {
    type Elem: Clone + Send + Sync;

    fn identity(&self) -> Self::Elem;
    fn compose(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn invert(&self, x: &Self::Elem) -> Result<Self::Elem, String>;
    fn is_identity(&self, x: &Self::Elem) -> bool;
    /// Image of `A`, `Tau` or `S(i)`; `None` when the generator is absent.
    fn primitive(&self, g: Gen) -> Option<Self::Elem>;
    /// Largest valid `S` index (that is, `m - 1`).
    fn max_index(&self) -> u8;
}

/// Caches generator images and evaluates words left to right.
pub struct Evaluator<'r, R: Representation> {
    rep: &'r R,
    a: Option<R::Elem>,
    a_inv: Option<R::Elem>,
    tau: Option<R::Elem>,
    s: Vec<Option<R::Elem>>,
    s_tilde: Vec<Option<R::Elem>>,
}

impl<'r, R: Representation> Evaluator<'r, R> {
    pub fn new(rep: &'r R) -> Result<Self, EvalFailure> {
        let a = rep.primitive(Gen::A);
        let a_inv = match &a {
            Some(x) => Some(rep.invert(x).map_err(EvalFailure::NotInvertible)?),
            None => None,
        };
        let tau = rep.primitive(Gen::Tau);
        let n = rep.max_index() as usize;
        let s: Vec<Option<R::Elem>> = (0..=n)
            .map(|i| if i == 0 { None } else { rep.primitive(Gen::S(i as u8)) })
            .collect();
        let s_tilde = s
            .iter()
            .map(|x| match (x, &tau) {
                (Some(x), Some(t)) => Some(rep.compose(t, x)),
                _ => None,
            })
            .collect();
        Ok(Evaluator {
            rep,
            a,
            a_inv,
            tau,
            s,
            s_tilde,
        })
    }

    pub fn rep(&self) -> &R {
        self.rep
    }

    pub fn image(&self, g: Gen) -> Result<&R::Elem, EvalFailure> {
        let slot = match g {
            Gen::A => &self.a,
            Gen::AInv => &self.a_inv,
            Gen::Tau => &self.tau,
            Gen::S(i) => self.s.get(i as usize).unwrap_or(&None),
            Gen::STilde(i) => self.s_tilde.get(i as usize).unwrap_or(&None),
        };
        slot.as_ref().ok_or(EvalFailure::Unsupported(g))
    }

    pub fn evaluate(&self, word: &Word) -> Result<R::Elem, EvalFailure> {
        let mut acc = self.rep.identity();
        for &g in word.letters() {
            acc = self.rep.compose(&acc, self.image(g)?);
        }
        Ok(acc)
    }

    /// Evaluates every relator (in parallel under [`Exec::Parallel`]) and
    /// reports, in schedule order, whether each is trivial.
    pub fn check_schedule(&self, sched: &RelationSchedule, exec: Exec) -> Vec<(String, Result<bool, EvalFailure>)>
    where
        R::Elem: Send,
        Self: Sync,
    {
        exec.map(&sched.relators, |r| {
            let ok = self.evaluate(&r.word).map(|x| self.rep.is_identity(&x));
            (r.name.clone(), ok)
        })
    }
}
