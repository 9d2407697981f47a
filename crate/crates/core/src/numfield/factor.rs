//! Factorization of rational polynomials into monic irreducibles.
//!
//! Squarefree decomposition (Yun), then for each squarefree part:
//! rescale to a monic integer polynomial, factor modulo the smallest
//! admissible prime with Berlekamp, Hensel-lift past the Mignotte bound and
//! recombine lifted factors by subset search.

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::poly::Poly;
use super::rational::{lcm_of_denominators, Rational};
use crate::error::{Error, Result};

/// Monic irreducible factors of `p` with multiplicities. The product of
/// `f^m` over the output, times the leading coefficient of `p`, is `p`.
/// Factors are sorted by degree, then coefficients.
pub fn factor_rationals(p: &Poly) -> Result<Vec<(Poly, u32)>> {
    if p.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut out = Vec::new();
    for (q, m) in squarefree_decomposition(&p.monic()) {
        for f in factor_squarefree_monic(&q) {
            out.push((f, m));
        }
    }
    out.sort_by(|(a, _), (b, _)| a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs())));
    Ok(out)
}

/// Yun's algorithm: `p = prod q_i^i` with the `q_i` squarefree, pairwise
/// coprime and monic. Only nonconstant `q_i` are returned.
pub fn squarefree_decomposition(p: &Poly) -> Vec<(Poly, u32)> {
    let f = p.monic();
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let df = f.derivative();
    let g = f.gcd(&df);
    let mut c = f.exact_div(&g).expect("gcd divides");
    let mut d = df.exact_div(&g).expect("gcd divides").sub(&c.derivative());
    let mut i = 1;
    while c.degree().unwrap_or(0) > 0 {
        let a = c.gcd(&d);
        c = c.exact_div(&a).expect("gcd divides");
        d = d.exact_div(&a).expect("gcd divides").sub(&c.derivative());
        if a.degree().unwrap_or(0) > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

pub fn is_irreducible(p: &Poly) -> bool {
    match factor_rationals(p) {
        Ok(f) => f.len() == 1 && f[0].1 == 1,
        Err(_) => false,
    }
}

fn factor_squarefree_monic(q: &Poly) -> Vec<Poly> {
    let n = q.degree().expect("nonzero");
    if n <= 1 {
        return vec![q.clone()];
    }
    // q(t) monic rational; f(y) = D^n q(y/D) is monic with integer coefficients.
    let d = lcm_of_denominators(q.coeffs());
    let mut f = Vec::with_capacity(n + 1);
    for (k, c) in q.coeffs().iter().enumerate() {
        let scaled = c * Rational::from_integer(num_traits::pow(d.clone(), n - k));
        debug_assert!(scaled.is_integer());
        f.push(scaled.to_integer());
    }
    factor_monic_integer(&f)
        .into_iter()
        .map(|g| {
            // g(D t) / D^deg g
            let dg = g.len() - 1;
            let coeffs = g
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    Rational::new(c * num_traits::pow(d.clone(), k), num_traits::pow(d.clone(), dg))
                })
                .collect();
            Poly::new(coeffs)
        })
        .collect()
}

// ---- integer polynomial helpers (lowest degree first) ----

type ZPoly = Vec<BigInt>;

fn ztrim(mut p: ZPoly) -> ZPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ztrim(out)
}

fn zmod(a: &[BigInt], m: &BigInt) -> ZPoly {
    ztrim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn zsymmetric(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2u32;
    ztrim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Division of integer polynomials by a monic divisor; `None` if inexact.
fn zdiv_exact_monic(a: &[BigInt], d: &[BigInt]) -> Option<ZPoly> {
    let dd = d.len() - 1;
    if a.len() < d.len() {
        return if a.is_empty() { Some(Vec::new()) } else { None };
    }
    let mut rem: ZPoly = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - dd];
    for k in (0..q.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, x) in d.iter().enumerate() {
            rem[k + j] -= &c * x;
        }
        q[k] = c;
    }
    if rem.iter().all(|c| c.is_zero()) {
        Some(ztrim(q))
    } else {
        None
    }
}

// ---- polynomials over F_p with small p ----

type PPoly = Vec<u64>;

fn ptrim(mut a: PPoly) -> PPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn pinv(a: u64, p: u64) -> u64 {
    // Fermat; p prime.
    ppow(a % p, p - 2, p)
}

fn ppow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn pmul(a: &[u64], b: &[u64], p: u64) -> PPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    ptrim(out)
}

fn psub(a: &[u64], b: &[u64], p: u64) -> PPoly {
    let n = a.len().max(b.len());
    ptrim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

fn pdivrem(a: &[u64], d: &[u64], p: u64) -> (PPoly, PPoly) {
    let dd = d.len() - 1;
    let inv = pinv(d[dd], p);
    let mut rem = a.to_vec();
    if rem.len() <= dd {
        return (Vec::new(), ptrim(rem));
    }
    let mut q = vec![0u64; rem.len() - dd];
    for k in (0..q.len()).rev() {
        let c = rem[k + dd] * inv % p;
        if c == 0 {
            continue;
        }
        for (j, &x) in d.iter().enumerate() {
            rem[k + j] = (rem[k + j] + p - c * x % p) % p;
        }
        q[k] = c;
    }
    rem.truncate(dd);
    (ptrim(q), ptrim(rem))
}

fn pmonic(a: &[u64], p: u64) -> PPoly {
    match a.last() {
        None => Vec::new(),
        Some(&l) => {
            let inv = pinv(l, p);
            a.iter().map(|&c| c * inv % p).collect()
        }
    }
}

fn pgcd(a: &[u64], b: &[u64], p: u64) -> PPoly {
    let (mut a, mut b) = (ptrim(a.to_vec()), ptrim(b.to_vec()));
    while !b.is_empty() {
        let r = pdivrem(&a, &b, p).1;
        a = b;
        b = r;
    }
    pmonic(&a, p)
}

/// `(s, t)` with `s*a + t*b = 1` over F_p, for coprime `a`, `b`.
fn pext_gcd(a: &[u64], b: &[u64], p: u64) -> (PPoly, PPoly) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1): (PPoly, PPoly) = (vec![1], Vec::new());
    let (mut t0, mut t1): (PPoly, PPoly) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = pdivrem(&r0, &r1, p);
        r0 = core::mem::replace(&mut r1, r);
        let s = psub(&s0, &pmul(&q, &s1, p), p);
        s0 = core::mem::replace(&mut s1, s);
        let t = psub(&t0, &pmul(&q, &t1, p), p);
        t0 = core::mem::replace(&mut t1, t);
    }
    let inv = pinv(r0[0], p);
    (
        s0.iter().map(|c| c * inv % p).collect(),
        t0.iter().map(|c| c * inv % p).collect(),
    )
}

fn pderiv(a: &[u64], p: u64) -> PPoly {
    ptrim(a.iter().enumerate().skip(1).map(|(i, &c)| (i as u64 % p) * c % p).collect())
}

fn to_mod_p(f: &[BigInt], p: u64) -> PPoly {
    let pb = BigInt::from(p);
    ptrim(f.iter().map(|c| c.mod_floor(&pb).to_u64().expect("reduced")).collect())
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Berlekamp factorization of a monic squarefree polynomial over F_p.
fn berlekamp(f: &[u64], p: u64) -> Vec<PPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    // Row i holds x^(p*i) mod f.
    let xp = {
        let mut acc: PPoly = vec![1];
        let mut base: PPoly = vec![0, 1];
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = pdivrem(&pmul(&acc, &base, p), f, p).1;
            }
            base = pdivrem(&pmul(&base, &base, p), f, p).1;
            e >>= 1;
        }
        acc
    };
    let mut q = vec![vec![0u64; n]; n];
    let mut row: PPoly = vec![1];
    for qi in q.iter_mut() {
        for (j, &c) in row.iter().enumerate() {
            qi[j] = c;
        }
        row = pdivrem(&pmul(&row, &xp, p), f, p).1;
    }
    // Left kernel of Q - I: solve (Q - I)^T v = 0.
    let mut m = vec![vec![0u64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let v = if i == j { (q[i][j] + p - 1) % p } else { q[i][j] };
            m[j][i] = v;
        }
    }
    let kernel = mod_p_kernel(m, n, p);
    let r = kernel.len();
    let mut factors: Vec<PPoly> = vec![f.to_vec()];
    for v in kernel.iter() {
        if factors.len() == r {
            break;
        }
        let v = ptrim(v.clone());
        if v.len() <= 1 {
            continue;
        }
        let mut next = Vec::new();
        for u in factors.drain(..) {
            if u.len() <= 2 {
                next.push(u);
                continue;
            }
            let mut pending = vec![u];
            for s in 0..p {
                let mut vs = v.clone();
                vs[0] = (vs[0] + p - s % p) % p;
                let mut still = Vec::new();
                for w in pending.drain(..) {
                    if w.len() <= 2 {
                        still.push(w);
                        continue;
                    }
                    let g = pgcd(&w, &vs, p);
                    if g.len() > 1 && g.len() < w.len() {
                        let other = pdivrem(&w, &g, p).0;
                        still.push(g);
                        still.push(pmonic(&other, p));
                    } else {
                        still.push(w);
                    }
                }
                pending = still;
            }
            next.extend(pending);
        }
        factors = next;
    }
    factors
}

fn mod_p_kernel(mut m: Vec<Vec<u64>>, ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..nrows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, pr);
        let inv = pinv(m[r][c], p);
        for j in 0..ncols {
            m[r][j] = m[r][j] * inv % p;
        }
        for i in 0..nrows {
            if i != r && m[i][c] != 0 {
                let fac = m[i][c];
                for j in 0..ncols {
                    m[i][j] = (m[i][j] + p - fac * m[r][j] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == nrows {
            break;
        }
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u64; ncols];
        v[free] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = (p - m[i][free]) % p;
        }
        out.push(v);
    }
    out
}

/// Lifts `f = g0*h0 mod p` (all monic) to `f = g*h mod p^k`.
fn hensel_two(f: &[BigInt], g0: &[u64], h0: &[u64], p: u64, k: u32) -> (ZPoly, ZPoly) {
    let pb = BigInt::from(p);
    let (_, t) = pext_gcd(g0, h0, p);
    let mut g: ZPoly = g0.iter().map(|&c| BigInt::from(c)).collect();
    let mut h: ZPoly = h0.iter().map(|&c| BigInt::from(c)).collect();
    let mut pj = pb.clone();
    for _ in 1..k {
        let gh = zmul(&g, &h);
        let n = f.len().max(gh.len());
        let diff: ZPoly = (0..n)
            .map(|i| f.get(i).cloned().unwrap_or_default() - gh.get(i).cloned().unwrap_or_default())
            .collect();
        let e: ZPoly = diff.iter().map(|c| c / &pj).collect();
        let e = to_mod_p(&e, p);
        if !e.is_empty() {
            let sigma = pdivrem(&pmul(&t, &e, p), g0, p).1;
            let rest = psub(&e, &pmul(h0, &sigma, p), p);
            let tau = pdivrem(&rest, g0, p).0;
            for (i, c) in sigma.iter().enumerate() {
                g[i] += &pj * BigInt::from(*c);
            }
            for (i, c) in tau.iter().enumerate() {
                h[i] += &pj * BigInt::from(*c);
            }
        }
        pj *= &pb;
        g = zmod(&g, &pj);
        h = zmod(&h, &pj);
    }
    (g, h)
}

fn hensel_multi(f: &[BigInt], factors: &[PPoly], p: u64, k: u32, modulus: &BigInt) -> Vec<ZPoly> {
    if factors.len() == 1 {
        return vec![zmod(f, modulus)];
    }
    let mid = factors.len() / 2;
    let prod = |fs: &[PPoly]| fs.iter().fold(vec![1u64], |acc, x| pmul(&acc, x, p));
    let g0 = prod(&factors[..mid]);
    let h0 = prod(&factors[mid..]);
    let (g, h) = hensel_two(f, &g0, &h0, p, k);
    let mut out = hensel_multi(&g, &factors[..mid], p, k, modulus);
    out.extend(hensel_multi(&h, &factors[mid..], p, k, modulus));
    out
}

fn factor_monic_integer(f: &[BigInt]) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let mut p = 3u64;
    loop {
        if is_prime(p) {
            let fp = to_mod_p(f, p);
            let g = pgcd(&fp, &pderiv(&fp, p), p);
            if g.len() == 1 {
                break;
            }
        }
        p += 2;
    }
    let fp = to_mod_p(f, p);
    let modular = berlekamp(&fp, p);
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }
    // Mignotte: every factor has coefficients bounded by 2^n * ||f||_2.
    let norm_sq: BigInt = f.iter().map(|c| c * c).sum();
    let bound = (norm_sq.sqrt() + 1u32) << n;
    let two_b = bound * 2u32;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut modulus = pb.clone();
    while modulus <= two_b {
        modulus *= &pb;
        k += 1;
    }
    let lifted = hensel_multi(f, &modular, p, k, &modulus);

    let mut remaining: Vec<ZPoly> = lifted;
    let mut current: ZPoly = f.to_vec();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut hit = None;
        for subset in Combinations::new(remaining.len(), size) {
            let mut cand: ZPoly = vec![BigInt::one()];
            for &i in &subset {
                cand = zmod(&zmul(&cand, &remaining[i]), &modulus);
            }
            let cand = zsymmetric(&cand, &modulus);
            if let Some(q) = zdiv_exact_monic(&current, &cand) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                found.push(cand);
                current = q;
                let mut idx = 0;
                remaining.retain(|_| {
                    let keep = !subset.contains(&idx);
                    idx += 1;
                    keep
                });
            }
            None => size += 1,
        }
    }
    if current.len() > 1 {
        found.push(current);
    }
    found
}

/// Lexicographic k-subsets of `0..n`.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations { n, idx: (0..k).collect(), done: k > n }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::rational::rat;

    fn product(fs: &[(Poly, u32)]) -> Poly {
        fs.iter().fold(Poly::one(), |acc, (f, m)| acc.mul(&f.pow(*m)))
    }

    #[test]
    fn worked_examples() {
        let f = factor_rationals(&Poly::from_ints(&[-1, 0, 1])).unwrap();
        assert_eq!(f, vec![(Poly::from_ints(&[-1, 1]), 1), (Poly::from_ints(&[1, 1]), 1)]);
        let f = factor_rationals(&Poly::from_ints(&[1, 0, 1])).unwrap();
        assert_eq!(f, vec![(Poly::from_ints(&[1, 0, 1]), 1)]);
        // t^2 - 5/6 t + 1/6 = (t - 1/2)(t - 1/3)
        let p = Poly::new(vec![rat(1, 6), rat(-5, 6), rat(1, 1)]);
        let f = factor_rationals(&p).unwrap();
        assert_eq!(
            f,
            vec![(Poly::linear_root(rat(1, 2)), 1), (Poly::linear_root(rat(1, 3)), 1)]
        );
        assert_eq!(factor_rationals(&Poly::zero()), Err(Error::ZeroInput));
    }

    #[test]
    fn swinnerton_dyer_like_and_multiplicity() {
        // t^4 - 10 t^2 + 1 is irreducible over Q but splits modulo every prime.
        let p = Poly::from_ints(&[1, 0, -10, 0, 1]);
        assert!(is_irreducible(&p));
        // (t^2-2)^2 (t^3 - 3) (t+5)^3 * 7
        let a = Poly::from_ints(&[-2, 0, 1]);
        let b = Poly::from_ints(&[-3, 0, 0, 1]);
        let c = Poly::from_ints(&[5, 1]);
        let p = a.pow(2).mul(&b).mul(&c.pow(3)).scale(&rat(7, 1));
        let f = factor_rationals(&p).unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(product(&f).scale(&rat(7, 1)), p);
    }

    #[test]
    fn cyclotomic_split() {
        // t^12 - 1 = product of cyclotomic polynomials of orders 1,2,3,4,6,12
        let mut c = vec![0i64; 13];
        c[0] = -1;
        c[12] = 1;
        let p = Poly::from_ints(&c);
        let f = factor_rationals(&p).unwrap();
        assert_eq!(f.len(), 6);
        assert!(f.iter().all(|(g, m)| *m == 1 && is_irreducible(g)));
        assert_eq!(product(&f), p);
    }
}
