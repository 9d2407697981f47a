use alloc::string::String;
use alloc::vec::Vec;
use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exact rationals. The numerator/denominator are kept coprime with a
/// positive denominator by `num_rational`.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p"`, `"p/q"`, with an optional leading sign (ASCII `-` or `−`).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (neg, body) = if let Some(rest) = s.strip_prefix('-') {
        (true, rest)
    } else if let Some(rest) = s.strip_prefix('\u{2212}') {
        (true, rest)
    } else if let Some(rest) = s.strip_prefix('+') {
        (false, rest)
    } else {
        (false, s)
    };
    let (n, d) = match body.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (body, "1"),
    };
    if n.is_empty() || d.is_empty() || !n.bytes().all(|b| b.is_ascii_digit()) || !d.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let n = BigInt::parse_bytes(n.as_bytes(), 10)?;
    let d = BigInt::parse_bytes(d.as_bytes(), 10)?;
    if d.is_zero() {
        return None;
    }
    let q = Rational::new(n, d);
    Some(if neg { -q } else { q })
}

pub fn format_rational(q: &Rational) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    if q.denom().is_one() {
        let _ = write!(s, "{}", q.numer());
    } else {
        let _ = write!(s, "{}/{}", q.numer(), q.denom());
    }
    s
}

/// Factorization of |n| with sorted prime keys: trial division by small
/// primes, then Miller-Rabin and Pollard-Brent on the cofactor.
pub fn factor_integer(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut primes: Vec<BigInt> = Vec::new();
    if n.is_zero() {
        return Vec::new();
    }
    let mut p = 2u32;
    while p < TRIAL_BOUND {
        let bp = BigInt::from(p);
        if &bp * &bp > n {
            break;
        }
        while (&n % &bp).is_zero() {
            n /= &bp;
            primes.push(bp.clone());
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut stack = Vec::new();
    if !n.is_one() {
        stack.push(n);
    }
    while let Some(m) = stack.pop() {
        if is_probable_prime(&m) {
            primes.push(m);
        } else if let Some(r) = integer_sqrt_exact(&m) {
            stack.push(r.clone());
            stack.push(r);
        } else {
            let d = pollard_brent(&m);
            stack.push(&m / &d);
            stack.push(d);
        }
    }
    primes.sort();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    for q in primes {
        match out.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    out
}

const TRIAL_BOUND: u32 = 1 << 12;

/// Deterministic for `m < 3.3e24`; a strong probable-prime test beyond.
fn is_probable_prime(m: &BigInt) -> bool {
    let two = BigInt::from(2u32);
    if *m < two {
        return false;
    }
    let one = BigInt::one();
    let m1 = m - &one;
    let mut d = m1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let a = BigInt::from(a);
        if (&a % m).is_zero() {
            continue;
        }
        let mut x = a.modpow(&d, m);
        if x == one || x == m1 {
            continue;
        }
        for _ in 1..s {
            x = &x * &x % m;
            if x == m1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A nontrivial factor of an odd composite `m` that is not a square.
fn pollard_brent(m: &BigInt) -> BigInt {
    let one = BigInt::one();
    let mut c = one.clone();
    loop {
        let f = |x: &BigInt| (x * x + &c) % m;
        let mut y = BigInt::from(2u32);
        let mut r = 1u64;
        let mut q = one.clone();
        let mut g = one.clone();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0u64;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..core::cmp::min(128, r - k) {
                    y = f(&y);
                    q = q * (&x - &y).abs() % m;
                }
                g = q.gcd(m);
                k += 128;
            }
            r *= 2;
        }
        if g == *m {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(m);
                if !g.is_one() {
                    break;
                }
            }
        }
        if g != *m {
            return g;
        }
        c += 1u32;
    }
}

/// Squarefree part of a nonzero integer, sign included.
pub fn squarefree_integer(n: &BigInt) -> BigInt {
    let mut r = BigInt::one();
    for (p, e) in factor_integer(n) {
        if e % 2 == 1 {
            r *= p;
        }
    }
    if n.sign() == Sign::Minus {
        -r
    } else {
        r
    }
}

/// Canonical representative of the square class of a nonzero rational:
/// the squarefree integer `d` with `q = d * c^2`.
pub fn square_class(q: &Rational) -> BigInt {
    squarefree_integer(q.numer()) * squarefree_integer(q.denom())
}

/// Exact square root of a rational if it is a perfect square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = integer_sqrt_exact(q.numer())?;
    let d = integer_sqrt_exact(q.denom())?;
    Some(Rational::new(n, d))
}

pub fn integer_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

pub fn lcm_of_denominators<'a, I: IntoIterator<Item = &'a Rational>>(it: I) -> BigInt {
    it.into_iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn factors_large_composites() {
        let p = BigInt::from(1_000_000_007u64);
        let q = BigInt::from(998_244_353u64);
        let n = &p * &p * &q * BigInt::from(12u32);
        let f = factor_integer(&n);
        assert_eq!(f, vec![(BigInt::from(2u32), 2), (BigInt::from(3u32), 1), (q.clone(), 1), (p.clone(), 2)]);
        assert_eq!(squarefree_integer(&-n), -(BigInt::from(3u32) * &q));
        assert_eq!(square_class(&Rational::new(BigInt::from(8u32), &q * &q * &p)), BigInt::from(2u32) * &p);
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-3/7"), Some(rat(-3, 7)));
        assert_eq!(parse_rational("\u{2212}3/7"), Some(rat(-3, 7)));
        assert_eq!(parse_rational("6/4"), Some(rat(3, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(parse_rational("0.5"), None);
        assert_eq!(format_rational(&rat(-6, 4)), "-3/2");
        assert_eq!(format_rational(&int(5)), "5");
    }

    #[test]
    fn square_classes() {
        assert_eq!(square_class(&int(4)), BigInt::from(1));
        assert_eq!(square_class(&int(-8)), BigInt::from(-2));
        assert_eq!(square_class(&rat(3, 4)), BigInt::from(3));
        assert_eq!(square_class(&rat(1, 2)), BigInt::from(2));
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
    }
}
