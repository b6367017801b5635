//! Polynomial gcd over ℤ by reduction modulo word-sized primes.
//!
//! Images modulo 62-bit primes are combined by Chinese remaindering until the
//! lifted candidate stabilises; the candidate is then accepted only if it
//! divides both inputs exactly, so the result never depends on luck.

use super::zpoly::ZPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use std::sync::{Mutex, OnceLock};

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn primes() -> &'static Mutex<Vec<u64>> {
    static PRIMES: OnceLock<Mutex<Vec<u64>>> = OnceLock::new();
    PRIMES.get_or_init(|| Mutex::new(Vec::new()))
}

/// The `i`-th prime below 2^62, counting downwards.
pub(crate) fn nth_prime(i: usize) -> u64 {
    let mut list = primes().lock().expect("prime table poisoned");
    let mut cand = list.last().copied().unwrap_or(1u64 << 62);
    while list.len() <= i {
        cand -= 1;
        while !is_prime(cand) {
            cand -= 1;
        }
        list.push(cand);
    }
    list[i]
}

fn reduce(c: &BigInt, p: u64) -> u64 {
    let r = c.mod_floor(&BigInt::from(p));
    r.to_u64().unwrap()
}

fn reduce_poly(f: &ZPoly, p: u64) -> Vec<u64> {
    let mut v: Vec<u64> = f.coeffs().iter().map(|c| reduce(c, p)).collect();
    trim(&mut v);
    v
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Monic gcd modulo `p`.
fn gcd_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        rem_in_place(&mut a, &b, p);
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&lc) = a.last() {
        let inv = inv_mod(lc, p);
        for x in a.iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
    }
    a
}

fn rem_in_place(a: &mut Vec<u64>, b: &[u64], p: u64) {
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    while a.len() > db {
        let top = a.len() - 1;
        let q = mul_mod(a[top], inv, p);
        if q != 0 {
            let shift = top - db;
            for (j, &bj) in b.iter().enumerate() {
                let t = mul_mod(q, bj, p);
                let x = &mut a[shift + j];
                *x = if *x >= t { *x - t } else { *x + p - t };
            }
        }
        a.pop();
        trim(a);
    }
}

fn symmetric(x: &BigInt, m: &BigInt, half: &BigInt) -> BigInt {
    if x > half {
        x - m
    } else {
        x.clone()
    }
}

/// Greatest common divisor of two integer polynomials, normalised to be
/// primitive with positive leading coefficient (gcd(0, 0) = 0).
pub fn poly_gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_zero() {
        return b.primitive_signed().1;
    }
    if b.is_zero() {
        return a.primitive_signed().1;
    }
    if a.is_constant() || b.is_constant() {
        return ZPoly::one();
    }
    let (_, a) = a.primitive_signed();
    let (_, b) = b.primitive_signed();
    if a == b {
        return a;
    }
    let (a, b) = if a.deg() >= b.deg() { (a, b) } else { (b, a) };
    if a.div_exact(&b).is_some() {
        return b;
    }
    let g = a.lead().unwrap().gcd(b.lead().unwrap());
    let mut modulus = BigInt::zero();
    let mut lifted: Vec<BigInt> = Vec::new();
    let mut best_deg = usize::MAX;
    let mut idx = 0;
    loop {
        let p = nth_prime(idx);
        idx += 1;
        if reduce(a.lead().unwrap(), p) == 0 || reduce(b.lead().unwrap(), p) == 0 {
            continue;
        }
        let ap = reduce_poly(&a, p);
        let bp = reduce_poly(&b, p);
        let mut gp = gcd_mod(&ap, &bp, p);
        let d = gp.len() - 1;
        if d == 0 {
            return ZPoly::one();
        }
        if d > best_deg {
            continue;
        }
        let gm = reduce(&g, p);
        for x in gp.iter_mut() {
            *x = mul_mod(*x, gm, p);
        }
        if d < best_deg {
            best_deg = d;
            modulus = BigInt::from(p);
            let half = &modulus >> 1;
            lifted = gp.iter().map(|&x| symmetric(&BigInt::from(x), &modulus, &half)).collect();
            continue;
        }
        // Chinese remaindering of the new image into the running lift, kept
        // in the symmetric range so that a stable image means a stable lift.
        let pb = BigInt::from(p);
        let m_inv = inv_mod(reduce(&modulus, p), p);
        let new_modulus = &modulus * &pb;
        let half = &new_modulus >> 1;
        let mut changed = false;
        for (h, &r) in lifted.iter_mut().zip(gp.iter()) {
            let hp = reduce(h, p);
            let diff = if r >= hp { r - hp } else { r + p - hp };
            let k = mul_mod(diff, m_inv, p);
            let mut v = &*h + &modulus * BigInt::from(k);
            v = symmetric(&v.mod_floor(&new_modulus), &new_modulus, &half);
            if v != *h {
                changed = true;
            }
            *h = v;
        }
        modulus = new_modulus;
        if !changed {
            let (_, cand) = ZPoly::new(lifted.clone()).primitive_signed();
            if a.div_exact(&cand).is_some() && b.div_exact(&cand).is_some() {
                return cand;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> ZPoly {
        ZPoly::from_i64s(c)
    }

    #[test]
    fn primes_are_prime_and_descending() {
        let a = nth_prime(0);
        let b = nth_prime(1);
        assert!(a < (1 << 62) && b < a);
        assert!(is_prime(a) && is_prime(b));
        assert!(!is_prime(a - 1));
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let g = p(&[3, -7, 0, 11, 5]);
        let a = &g * &p(&[1, 1, 1]);
        let b = &g * &p(&[-2, 0, 9, 4]);
        assert_eq!(poly_gcd(&a, &b), g);
        assert_eq!(poly_gcd(&a.scale(&BigInt::from(-6)), &b.scale(&BigInt::from(4))), g);
    }

    #[test]
    fn coprime_inputs() {
        assert_eq!(poly_gcd(&p(&[1, 1]), &p(&[-1, 1])), ZPoly::one());
    }

    #[test]
    fn large_coefficients() {
        let big = BigInt::from(3).pow(200u32);
        let g = ZPoly::new(vec![big.clone(), BigInt::from(1), -big.clone(), BigInt::from(7)]);
        let a = &g * &ZPoly::new(vec![BigInt::from(5), big.clone() + 1]);
        let b = &g * &ZPoly::new(vec![-big.clone(), BigInt::from(2), BigInt::from(1)]);
        assert_eq!(poly_gcd(&a, &b), g);
    }
}
