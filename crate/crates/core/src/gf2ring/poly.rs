//! Dense polynomials over GF(2) of degree < 128, packed into a `u128`
//! (bit i is the coefficient of x^i).

pub type Poly = u128;

pub fn degree(p: Poly) -> Option<u32> {
    (p != 0).then(|| 127 - p.leading_zeros())
}

/// Remainder of `a` modulo `m` (m nonzero).
pub fn rem(mut a: Poly, m: Poly) -> Poly {
    let dm = degree(m).expect("division by zero polynomial");
    while let Some(da) = degree(a) {
        if da < dm {
            break;
        }
        a ^= m << (da - dm);
    }
    a
}

/// Quotient and remainder.
pub fn divrem(mut a: Poly, m: Poly) -> (Poly, Poly) {
    let dm = degree(m).expect("division by zero polynomial");
    let mut q = 0;
    while let Some(da) = degree(a) {
        if da < dm {
            break;
        }
        q |= 1 << (da - dm);
        a ^= m << (da - dm);
    }
    (q, a)
}

/// `a * b mod m` by shift-and-add; never forms the double-width product.
pub fn mulmod(a: Poly, b: Poly, m: Poly) -> Poly {
    let dm = degree(m).expect("zero modulus");
    let top = 1u128 << dm;
    let mut a = rem(a, m);
    let mut b = rem(b, m);
    let mut acc = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a & top != 0 {
            a ^= m;
        }
    }
    acc
}

pub fn gcd(mut a: Poly, mut b: Poly) -> Poly {
    while b != 0 {
        let r = rem(a, b);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or irreducibility test: `f` of degree d is irreducible iff
/// gcd(f, x^(2^i) - x) = 1 for every 1 <= i <= d/2.
pub fn is_irreducible(f: Poly) -> bool {
    let Some(d) = degree(f) else { return false };
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let x: Poly = 0b10;
    let mut h = x;
    for _ in 1..=d / 2 {
        h = mulmod(h, h, f);
        if gcd(f, h ^ x) != 1 {
            return false;
        }
    }
    true
}

/// Degrees of the irreducible factors of a squarefree `f`, ascending
/// (distinct-degree factorization).
pub fn factor_degrees_squarefree(mut f: Poly) -> Vec<u32> {
    let mut out = Vec::new();
    let x: Poly = 0b10;
    let mut h = rem(x, f.max(2));
    let mut i = 1;
    while let Some(df) = degree(f) {
        if df < 2 * i {
            break;
        }
        h = mulmod(h, h, f);
        let g = gcd(f, h ^ x);
        let dg = degree(g).unwrap_or(0);
        if dg > 0 {
            out.extend(std::iter::repeat_n(i, (dg / i) as usize));
            f = divrem(f, g).0;
            h = rem(h, f);
        }
        i += 1;
    }
    if let Some(df) = degree(f) {
        if df > 0 {
            out.push(df);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_irreducibles() {
        assert!(is_irreducible(0b111)); // x^2+x+1
        assert!(is_irreducible(0b1011)); // x^3+x+1
        assert!(is_irreducible(0b10011)); // x^4+x+1
        assert!(!is_irreducible(0b101)); // (x+1)^2
        assert!(!is_irreducible(0b10101)); // (x^2+x+1)^2
        assert!(is_irreducible(0b11111)); // x^4+x^3+x^2+x+1
    }

    #[test]
    fn ddf_on_known_product() {
        // (x^2+x+1)(x^3+x+1) = x^5+x^4+1
        assert_eq!(factor_degrees_squarefree(0b110001), vec![2, 3]);
    }
}
