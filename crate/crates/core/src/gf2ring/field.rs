//! Small binary fields GF(2^d), elements packed as the low `d` bits of a u32.

use std::fmt;

use super::poly;

pub type FfElem = u32;

/// Largest supported extension degree (tables are `2^d` entries).
pub const MAX_DEGREE: u32 = 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("modulus {0:#b} is reducible over GF(2)")]
    Reducible(u64),
    #[error("modulus degree {got} does not match required degree {want}")]
    WrongDegree { got: u32, want: u32 },
    #[error("extension degree {0} outside supported range 1..={MAX_DEGREE}")]
    Unsupported(u32),
}

/// GF(2)[x] / (modulus), with log/exp tables over the smallest primitive
/// element.
pub struct FiniteField {
    degree: u32,
    modulus: u64,
    generator: FfElem,
    exp: Vec<FfElem>,
    log: Vec<u32>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}) mod {:#b}", self.degree, self.modulus)
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, o: &Self) -> bool {
        self.modulus == o.modulus
    }
}

impl Eq for FiniteField {}

impl FiniteField {
    pub fn new(modulus: u64) -> Result<Self, FieldError> {
        let d = poly::degree(modulus as u128).unwrap_or(0);
        if d == 0 || d > MAX_DEGREE {
            return Err(FieldError::Unsupported(d));
        }
        if !poly::is_irreducible(modulus as u128) {
            return Err(FieldError::Reducible(modulus));
        }
        let order = 1usize << d;
        let mult = |a: u64, b: u64| poly::mulmod(a as u128, b as u128, modulus as u128) as u64;
        // smallest primitive element
        let group = order as u64 - 1;
        let primes = prime_factors(group);
        let generator = (2..order as u64)
            .find(|&g| {
                primes.iter().all(|&p| {
                    let mut acc = 1u64;
                    let mut base = g;
                    let mut e = group / p;
                    while e > 0 {
                        if e & 1 == 1 {
                            acc = mult(acc, base);
                        }
                        base = mult(base, base);
                        e >>= 1;
                    }
                    acc != 1
                })
            })
            .unwrap_or(1);
        let mut exp = vec![0; 2 * order];
        let mut log = vec![0; order];
        let mut x = 1u64;
        for i in 0..order - 1 {
            exp[i] = x as FfElem;
            exp[i + order - 1] = x as FfElem;
            log[x as usize] = i as u32;
            x = mult(x, generator);
        }
        Ok(FiniteField {
            degree: d,
            modulus,
            generator: generator as FfElem,
            exp,
            log,
        })
    }

    /// Field of degree `d` with the deterministic default modulus.
    pub fn with_degree(d: u32) -> Result<Self, FieldError> {
        FiniteField::new(default_modulus(d)?)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn order(&self) -> u32 {
        1 << self.degree
    }

    /// The primitive element the log tables are built on.
    pub fn generator(&self) -> FfElem {
        self.generator
    }

    #[inline]
    pub fn mul(&self, a: FfElem, b: FfElem) -> FfElem {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    pub fn inv(&self, a: FfElem) -> Option<FfElem> {
        (a != 0).then(|| {
            let q1 = self.order() - 1;
            self.exp[((q1 - self.log[a as usize]) % q1) as usize]
        })
    }

    /// `a^e` for any integer `e` (a must be nonzero when e < 0).
    pub fn pow(&self, a: FfElem, e: i64) -> FfElem {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let q1 = (self.order() - 1) as i64;
        let k = (self.log[a as usize] as i64 * e.rem_euclid(q1)).rem_euclid(q1);
        self.exp[k as usize]
    }

    /// Discrete log with respect to [`Self::generator`].
    pub fn log(&self, a: FfElem) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    pub fn exp(&self, k: u64) -> FfElem {
        self.exp[(k % (self.order() as u64 - 1)) as usize]
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: FfElem) -> Option<u64> {
        let l = self.log(a)? as u64;
        let q1 = self.order() as u64 - 1;
        Some(q1 / gcd(l, q1))
    }

    /// Degree of the smallest subfield GF(2^e) containing `a`.
    pub fn subfield_degree(&self, a: FfElem) -> u32 {
        let mut x = a;
        for e in 1..=self.degree {
            x = self.mul(x, x);
            if x == a {
                return e;
            }
        }
        self.degree
    }

    /// Little-endian bit string of an element, one char per coefficient.
    pub fn bit_string(&self, a: FfElem) -> String {
        (0..self.degree)
            .map(|i| if (a >> i) & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    /// Human-readable polynomial form of the modulus, e.g. `x^4+x+1`.
    pub fn modulus_string(&self) -> String {
        poly_string(self.modulus)
    }
}

pub fn poly_string(p: u64) -> String {
    let terms: Vec<String> = (0..64)
        .rev()
        .filter(|i| (p >> i) & 1 == 1)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

/// Lowest-weight, then numerically least, irreducible of degree `d`.
/// Gives x^2+x+1, x^3+x+1, x^4+x+1 for d = 2, 3, 4.
pub fn default_modulus(d: u32) -> Result<u64, FieldError> {
    if d == 0 || d > MAX_DEGREE {
        return Err(FieldError::Unsupported(d));
    }
    let lead = 1u64 << d;
    for weight in (2..=d + 1).filter(|w| w % 2 == 1 || *w == 2) {
        let found = (0..lead)
            .map(|low| lead | low)
            .filter(|p| p.count_ones() == weight)
            .find(|&p| poly::is_irreducible(p as u128));
        if let Some(p) = found {
            return Ok(p);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Multiplicative order of 2 modulo odd `n >= 3`.
pub fn order_of_two(n: u32) -> u32 {
    let mut x = 2 % n;
    let mut k = 1;
    while x != 1 {
        x = (x * 2) % n;
        k += 1;
    }
    k
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
