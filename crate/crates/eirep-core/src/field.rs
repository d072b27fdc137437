//! Small finite fields F_q with elements packed into `u64`.
//!
//! Prime fields store elements as residues. Extension fields F_{p^e} encode
//! an element sum c_i x^i as the integer sum c_i p^i and multiply through
//! discrete-log tables, which keeps every operation exact and O(1). Table
//! size caps extension fields at order 2^16; prime fields are uncapped
//! (below 2^31 so products fit in u64).

use crate::{Error, Result};
use rand::Rng;

/// Largest permitted extension field order (log table size).
pub const MAX_EXTENSION_ORDER: u64 = 1 << 16;

#[derive(Clone)]
pub struct Fq {
    p: u64,
    e: u32,
    q: u64,
    /// Monic modulus, lowest coefficient first, length e+1. Empty for e = 1.
    modulus: Vec<u64>,
    exp: Vec<u64>,
    log: Vec<u32>,
}

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}
impl Eq for Fq {}

impl std::fmt::Debug for Fq {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.e == 1 {
            write!(fm, "F_{}", self.p)
        } else {
            write!(fm, "F_{}^{} (order {})", self.p, self.e, self.q)
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Fq {
    pub fn prime(p: u64) -> Result<Fq> {
        if !is_prime(p) {
            return Err(Error::Validation(format!("{p} is not prime")));
        }
        if p >= 1 << 31 {
            return Err(Error::Resource(format!("prime {p} too large")));
        }
        Ok(Fq { p, e: 1, q: p, modulus: Vec::new(), exp: Vec::new(), log: Vec::new() })
    }

    /// F_{p^e} with the lexicographically least irreducible monic modulus.
    pub fn extension(p: u64, e: u32) -> Result<Fq> {
        if !is_prime(p) {
            return Err(Error::Validation(format!("{p} is not prime")));
        }
        if e == 0 {
            return Err(Error::Validation("extension degree must be positive".into()));
        }
        if e == 1 {
            return Fq::prime(p);
        }
        let q = (0..e).try_fold(1u64, |acc, _| {
            let next = acc.checked_mul(p)?;
            (next <= MAX_EXTENSION_ORDER).then_some(next)
        });
        let q = q.ok_or_else(|| {
            Error::Resource(format!(
                "extension field order {p}^{e} exceeds the cap of {MAX_EXTENSION_ORDER}"
            ))
        })?;
        let modulus = least_irreducible(p, e)
            .ok_or_else(|| Error::Structure(format!("no irreducible of degree {e} over F_{p}")))?;
        let mut f = Fq { p, e, q, modulus, exp: Vec::new(), log: Vec::new() };
        f.build_tables();
        Ok(f)
    }

    fn build_tables(&mut self) {
        let q = self.q;
        let gen = (2..q)
            .find(|&g| self.mult_order_is_full(g))
            .expect("a finite field has a primitive element");
        let mut exp = Vec::with_capacity((q - 1) as usize);
        let mut log = vec![0u32; q as usize];
        let mut cur = 1u64;
        for i in 0..(q - 1) {
            exp.push(cur);
            log[cur as usize] = i as u32;
            cur = self.mul_slow(cur, gen);
        }
        debug_assert_eq!(cur, 1);
        self.exp = exp;
        self.log = log;
    }

    fn mult_order_is_full(&self, g: u64) -> bool {
        let n = self.q - 1;
        let mut rem = n;
        let mut d = 2;
        while d * d <= rem {
            if rem % d == 0 {
                if self.pow_slow(g, n / d) == 1 {
                    return false;
                }
                while rem % d == 0 {
                    rem /= d;
                }
            }
            d += 1;
        }
        if rem > 1 && self.pow_slow(g, n / rem) == 1 {
            return false;
        }
        true
    }

    fn pow_slow(&self, mut b: u64, mut k: u64) -> u64 {
        let mut acc = 1u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_slow(acc, b);
            }
            b = self.mul_slow(b, b);
            k >>= 1;
        }
        acc
    }

    /// Polynomial multiplication mod the modulus; used only to build tables.
    fn mul_slow(&self, a: u64, b: u64) -> u64 {
        let p = self.p;
        let e = self.e as usize;
        let av = self.decode(a);
        let bv = self.decode(b);
        let mut prod = vec![0u64; 2 * e];
        for (i, &ai) in av.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in bv.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai * bj) % p;
            }
        }
        // Reduce by the monic modulus.
        for d in (e..2 * e).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for k in 0..e {
                let sub = (c * self.modulus[k]) % p;
                prod[d - e + k] = (prod[d - e + k] + p - sub) % p;
            }
        }
        self.encode(&prod[..e])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn decode(&self, mut x: u64) -> Vec<u64> {
        let mut v = vec![0u64; self.e as usize];
        for d in v.iter_mut() {
            *d = x % self.p;
            x /= self.p;
        }
        v
    }

    pub fn encode(&self, coeffs: &[u64]) -> u64 {
        coeffs.iter().rev().fold(0u64, |acc, &c| acc * self.p + (c % self.p))
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.e == 1 {
            let s = a + b;
            if s >= self.p {
                s - self.p
            } else {
                s
            }
        } else {
            // Digitwise base-p addition without carries between digits.
            let mut out = 0u64;
            let (mut x, mut y, mut mult) = (a, b, 1u64);
            for _ in 0..self.e {
                let s = (x % self.p + y % self.p) % self.p;
                out += s * mult;
                mult *= self.p;
                x /= self.p;
                y /= self.p;
            }
            out
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if self.e == 1 {
            if a == 0 {
                0
            } else {
                self.p - a
            }
        } else {
            let mut out = 0u64;
            let (mut x, mut mult) = (a, 1u64);
            for _ in 0..self.e {
                let d = x % self.p;
                out += if d == 0 { 0 } else { (self.p - d) * mult };
                mult *= self.p;
                x /= self.p;
            }
            out
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.e == 1 {
            (a * b) % self.p
        } else if a == 0 || b == 0 {
            0
        } else {
            let n = self.q - 1;
            self.exp[((self.log[a as usize] as u64 + self.log[b as usize] as u64) % n) as usize]
        }
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        if self.e == 1 {
            Some(self.pow(a, self.p - 2))
        } else {
            let n = self.q - 1;
            Some(self.exp[((n - self.log[a as usize] as u64) % n) as usize])
        }
    }

    pub fn div(&self, a: u64, b: u64) -> Option<u64> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, mut b: u64, mut k: u64) -> u64 {
        let mut acc = 1u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            k >>= 1;
        }
        acc
    }

    /// Embed an integer through the prime subfield.
    pub fn from_int(&self, n: i64) -> u64 {
        let p = self.p as i64;
        (n.rem_euclid(p)) as u64
    }

    pub fn elements(&self) -> std::ops::Range<u64> {
        0..self.q
    }

    pub fn rand_elem<R: Rng>(&self, rng: &mut R) -> u64 {
        rng.random_range(0..self.q)
    }

    pub fn rand_nonzero<R: Rng>(&self, rng: &mut R) -> u64 {
        rng.random_range(1..self.q)
    }
}

/// Lexicographically least monic irreducible of degree e over F_p, as a
/// coefficient vector (lowest first, length e+1).
fn least_irreducible(p: u64, e: u32) -> Option<Vec<u64>> {
    let e = e as usize;
    let mut count = 1u64;
    for _ in 0..e {
        count = count.saturating_mul(p);
    }
    for enc in 0..count {
        let mut coeffs = vec![0u64; e + 1];
        let mut x = enc;
        for c in coeffs.iter_mut().take(e) {
            *c = x % p;
            x /= p;
        }
        coeffs[e] = 1;
        if fp_poly_irreducible(p, &coeffs) {
            return Some(coeffs);
        }
    }
    None
}

/// Rabin's test: f of degree e is irreducible over F_p iff x^{p^e} = x mod f
/// and gcd(x^{p^{e/r}} - x, f) = 1 for every prime r dividing e.
fn fp_poly_irreducible(p: u64, f: &[u64]) -> bool {
    let e = f.len() - 1;
    if e == 0 {
        return false;
    }
    if e == 1 {
        return true;
    }
    if f[0] == 0 {
        // x divides f.
        return false;
    }
    let xq = fp_x_pow_pk(p, f, e as u32);
    // x^{p^e} - x must be 0 mod f; both terms have degree < e here.
    let mut diff = xq;
    while diff.len() < 2 {
        diff.push(0);
    }
    diff[1] = (diff[1] + p - 1) % p;
    if !fp_is_zero(&diff) {
        return false;
    }
    let mut rem_e = e;
    let mut r = 2;
    while r * r <= rem_e {
        if rem_e % r == 0 {
            if !fp_coprime_with_x_shift(p, f, (e / r) as u32) {
                return false;
            }
            while rem_e % r == 0 {
                rem_e /= r;
            }
        }
        r += 1;
    }
    if rem_e > 1 && !fp_coprime_with_x_shift(p, f, (e / rem_e) as u32) {
        return false;
    }
    true
}

fn fp_coprime_with_x_shift(p: u64, f: &[u64], k: u32) -> bool {
    let mut g = fp_x_pow_pk(p, f, k);
    while g.len() < 2 {
        g.push(0);
    }
    g[1] = (g[1] + p - 1) % p;
    fp_trim(&mut g);
    let d = fp_gcd(p, f.to_vec(), g);
    d.len() == 1
}

/// x^{p^k} mod f by repeated Frobenius (square-and-multiply on the exponent).
fn fp_x_pow_pk(p: u64, f: &[u64], k: u32) -> Vec<u64> {
    let mut acc = vec![0u64, 1];
    fp_trim(&mut acc);
    for _ in 0..k {
        acc = fp_pow_mod(p, &acc, p, f);
    }
    acc
}

fn fp_pow_mod(p: u64, base: &[u64], mut k: u64, f: &[u64]) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = base.to_vec();
    while k > 0 {
        if k & 1 == 1 {
            acc = fp_mul_mod(p, &acc, &b, f);
        }
        b = fp_mul_mod(p, &b, &b, f);
        k >>= 1;
    }
    acc
}

fn fp_mul_mod(p: u64, a: &[u64], b: &[u64], f: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    fp_rem(p, prod, f)
}

/// prod mod f for monic f.
fn fp_rem(p: u64, mut prod: Vec<u64>, f: &[u64]) -> Vec<u64> {
    let e = f.len() - 1;
    while prod.len() > e {
        let d = prod.len() - 1;
        let c = prod[d];
        prod.pop();
        if c != 0 {
            for k in 0..e {
                let sub = (c * f[k]) % p;
                prod[d - e + k] = (prod[d - e + k] + p - sub) % p;
            }
        }
    }
    fp_trim(&mut prod);
    prod
}

fn fp_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_is_zero(v: &[u64]) -> bool {
    v.iter().all(|&c| c == 0)
}

fn fp_gcd(p: u64, mut a: Vec<u64>, mut b: Vec<u64>) -> Vec<u64> {
    fp_trim(&mut a);
    fp_trim(&mut b);
    while !b.is_empty() {
        // a mod b with b made monic first.
        let lead = *b.last().unwrap();
        if lead != 1 {
            let li = fp_inv_scalar(p, lead);
            for c in b.iter_mut() {
                *c = (*c * li) % p;
            }
        }
        let r = fp_rem(p, a.clone(), &b);
        a = std::mem::replace(&mut b, r);
    }
    if let Some(&lead) = a.last() {
        if lead != 1 {
            let li = fp_inv_scalar(p, lead);
            for c in a.iter_mut() {
                *c = (*c * li) % p;
            }
        }
    }
    a
}

fn fp_inv_scalar(p: u64, a: u64) -> u64 {
    // Fermat.
    let mut acc = 1u64;
    let mut b = a % p;
    let mut k = p - 2;
    while k > 0 {
        if k & 1 == 1 {
            acc = (acc * b) % p;
        }
        b = (b * b) % p;
        k >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_field_axioms(f: &Fq) {
        let q = f.q();
        for a in 0..q {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            for b in 0..q {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in 0..q.min(16) {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn prime_fields() {
        for p in [2u64, 3, 5, 7, 13] {
            let f = Fq::prime(p).unwrap();
            check_field_axioms(&f);
        }
        assert!(Fq::prime(6).is_err());
        assert!(Fq::prime(1).is_err());
    }

    #[test]
    fn f4_and_f8() {
        let f4 = Fq::extension(2, 2).unwrap();
        assert_eq!(f4.q(), 4);
        check_field_axioms(&f4);
        // x^2 + x + 1 is the only irreducible quadratic over F2.
        assert_eq!(f4.decode(f4.mul(2, 2)), vec![1, 1]);

        let f8 = Fq::extension(2, 3).unwrap();
        assert_eq!(f8.q(), 8);
        check_field_axioms(&f8);
    }

    #[test]
    fn f9_and_f25() {
        let f9 = Fq::extension(3, 2).unwrap();
        check_field_axioms(&f9);
        let f25 = Fq::extension(5, 2).unwrap();
        check_field_axioms(&f25);
        // Multiplicative group is cyclic of order q-1: check exponent.
        for a in 1..f25.q() {
            assert_eq!(f25.pow(a, 24), 1);
        }
    }

    #[test]
    fn extension_cap_enforced() {
        assert!(Fq::extension(2, 17).is_err());
        assert!(Fq::extension(251, 3).is_err());
        assert!(Fq::extension(2, 16).is_ok());
    }

    #[test]
    fn frobenius_fixes_prime_subfield() {
        let f = Fq::extension(7, 2).unwrap();
        for a in 0..7u64 {
            assert_eq!(f.pow(a, 7), a);
        }
        // And moves something outside it.
        assert!((7..f.q()).any(|a| f.pow(a, 7) != a));
    }
}
