//! Dense univariate polynomials over [`Fq`], lowest coefficient first.
//!
//! The main consumer is the Meataxe, which factors minimal polynomials of
//! small matrices, so everything here favors clarity over asymptotics:
//! schoolbook multiplication, Euclid's gcd, and Cantor-Zassenhaus splitting
//! with the norm-map trick so exponents never overflow.

use crate::field::Fq;
use rand::Rng;

pub type Poly = Vec<u64>;

pub fn trim(v: &mut Poly) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub fn is_zero(v: &[u64]) -> bool {
    v.iter().all(|&c| c == 0)
}

/// Degree, or None for the zero polynomial.
pub fn deg(v: &[u64]) -> Option<usize> {
    v.iter().rposition(|&c| c != 0)
}

pub fn add(f: &Fq, a: &[u64], b: &[u64]) -> Poly {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = f.add(x, y);
    }
    trim(&mut out);
    out
}

pub fn sub(f: &Fq, a: &[u64], b: &[u64]) -> Poly {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = f.sub(x, y);
    }
    trim(&mut out);
    out
}

pub fn mul(f: &Fq, a: &[u64], b: &[u64]) -> Poly {
    let (da, db) = match (deg(a), deg(b)) {
        (Some(da), Some(db)) => (da, db),
        _ => return Vec::new(),
    };
    let mut out = vec![0u64; da + db + 1];
    for i in 0..=da {
        if a[i] == 0 {
            continue;
        }
        for j in 0..=db {
            out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
        }
    }
    out
}

pub fn scale(f: &Fq, a: &[u64], c: u64) -> Poly {
    let mut out: Poly = a.iter().map(|&x| f.mul(x, c)).collect();
    trim(&mut out);
    out
}

pub fn make_monic(f: &Fq, a: &[u64]) -> Poly {
    match deg(a) {
        None => Vec::new(),
        Some(d) => {
            let inv = f.inv(a[d]).expect("leading coefficient nonzero");
            scale(f, a, inv)
        }
    }
}

/// Division with remainder; divisor must be nonzero.
pub fn divmod(f: &Fq, a: &[u64], b: &[u64]) -> (Poly, Poly) {
    let db = deg(b).expect("division by zero polynomial");
    let lead_inv = f.inv(b[db]).unwrap();
    let mut rem: Poly = a.to_vec();
    trim(&mut rem);
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![0u64; rem.len() - db];
    while let Some(dr) = deg(&rem) {
        if dr < db {
            break;
        }
        let c = f.mul(rem[dr], lead_inv);
        quot[dr - db] = c;
        for k in 0..=db {
            rem[dr - db + k] = f.sub(rem[dr - db + k], f.mul(c, b[k]));
        }
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

pub fn rem(f: &Fq, a: &[u64], b: &[u64]) -> Poly {
    divmod(f, a, b).1
}

pub fn div_exact(f: &Fq, a: &[u64], b: &[u64]) -> Poly {
    let (q, r) = divmod(f, a, b);
    debug_assert!(is_zero(&r), "division was not exact");
    q
}

/// Monic gcd.
pub fn gcd(f: &Fq, a: &[u64], b: &[u64]) -> Poly {
    let mut x: Poly = a.to_vec();
    let mut y: Poly = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = std::mem::replace(&mut y, r);
    }
    make_monic(f, &x)
}

pub fn lcm(f: &Fq, a: &[u64], b: &[u64]) -> Poly {
    if is_zero(a) || is_zero(b) {
        return Vec::new();
    }
    let g = gcd(f, a, b);
    make_monic(f, &mul(f, &div_exact(f, a, &g), b))
}

pub fn mul_mod(f: &Fq, a: &[u64], b: &[u64], m: &[u64]) -> Poly {
    rem(f, &mul(f, a, b), m)
}

pub fn pow_mod(f: &Fq, base: &[u64], mut k: u64, m: &[u64]) -> Poly {
    let mut acc: Poly = vec![1];
    let mut b = rem(f, base, m);
    while k > 0 {
        if k & 1 == 1 {
            acc = mul_mod(f, &acc, &b, m);
        }
        b = mul_mod(f, &b, &b, m);
        k >>= 1;
    }
    acc
}

pub fn derivative(f: &Fq, a: &[u64]) -> Poly {
    let mut out = Vec::new();
    for (i, &c) in a.iter().enumerate().skip(1) {
        out.push(f.mul(c, f.from_int(i as i64)));
    }
    trim(&mut out);
    out
}

pub fn eval(f: &Fq, a: &[u64], x: u64) -> u64 {
    a.iter().rev().fold(0u64, |acc, &c| f.add(f.mul(acc, x), c))
}

/// x^{q^k} mod m by iterated Frobenius.
fn frobenius_power(f: &Fq, k: usize, m: &[u64]) -> Poly {
    let mut acc: Poly = rem(f, &[0, 1], m);
    for _ in 0..k {
        acc = pow_mod(f, &acc, f.q(), m);
    }
    acc
}

/// Rabin irreducibility over F_q.
pub fn is_irreducible(f: &Fq, a: &[u64]) -> bool {
    let n = match deg(a) {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let m = make_monic(f, a);
    let xq = frobenius_power(f, n, &m);
    if !is_zero(&sub(f, &xq, &[0, 1])) {
        return false;
    }
    let mut rem_n = n;
    let mut r = 2;
    let check = |k: usize| -> bool {
        let h = frobenius_power(f, k, &m);
        let g = gcd(f, &sub(f, &h, &[0, 1]), &m);
        deg(&g) == Some(0)
    };
    while r * r <= rem_n {
        if rem_n % r == 0 {
            if !check(n / r) {
                return false;
            }
            while rem_n % r == 0 {
                rem_n /= r;
            }
        }
        r += 1;
    }
    if rem_n > 1 && !check(n / rem_n) {
        return false;
    }
    true
}

/// Full factorization into monic irreducibles with multiplicities, sorted by
/// (degree, coefficients). The input may have any nonzero leading coefficient;
/// that scalar is dropped.
pub fn factor<R: Rng>(f: &Fq, a: &[u64], rng: &mut R) -> Vec<(Poly, usize)> {
    let monic = make_monic(f, a);
    assert!(deg(&monic).is_some(), "cannot factor the zero polynomial");
    let mut out: Vec<(Poly, usize)> = Vec::new();
    for (part, mult) in squarefree_decomposition(f, &monic) {
        for irred in factor_squarefree(f, &part, rng) {
            merge_factor(&mut out, irred, mult);
        }
    }
    out.sort_by(|x, y| (x.0.len(), &x.0).cmp(&(y.0.len(), &y.0)));
    out
}

fn merge_factor(out: &mut Vec<(Poly, usize)>, fac: Poly, mult: usize) {
    for (g, m) in out.iter_mut() {
        if *g == fac {
            *m += mult;
            return;
        }
    }
    out.push((fac, mult));
}

/// Write a monic f as a product of pairwise coprime squarefree parts, each
/// tagged with its multiplicity. Handles the characteristic-p case where the
/// derivative can vanish.
fn squarefree_decomposition(f: &Fq, a: &[u64]) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    if deg(a) == Some(0) {
        return out;
    }
    let da = derivative(f, a);
    if is_zero(&da) {
        // a = b(x^p): take the p-th root and recurse.
        let b = pth_root(f, a);
        for (part, m) in squarefree_decomposition(f, &b) {
            out.push((part, m * f.p() as usize));
        }
        return out;
    }
    let mut c = gcd(f, a, &da);
    let mut w = div_exact(f, a, &c);
    let mut i = 1usize;
    while deg(&w) != Some(0) {
        let y = gcd(f, &w, &c);
        let fac = div_exact(f, &w, &y);
        if deg(&fac) != Some(0) {
            out.push((fac, i));
        }
        w = y.clone();
        c = div_exact(f, &c, &y);
        i += 1;
    }
    if deg(&c) != Some(0) {
        // Whatever remains is a p-th power: its factors have multiplicity
        // divisible by p, so they never collide with the loop's output.
        let b = pth_root(f, &c);
        for (part, m) in squarefree_decomposition(f, &b) {
            out.push((part, m * f.p() as usize));
        }
    }
    out
}

/// b with b(x)^p = a(x), for a a p-th power (all exponents divisible by p).
fn pth_root(f: &Fq, a: &[u64]) -> Poly {
    let p = f.p() as usize;
    let root_exp = f.q() / f.p();
    let mut out = Vec::new();
    for (i, &c) in a.iter().enumerate() {
        if i % p == 0 {
            // c^(q/p) is the p-th root of c in F_q.
            out.push(f.pow(c, root_exp));
        } else {
            debug_assert_eq!(c, 0, "polynomial is not a p-th power");
        }
    }
    trim(&mut out);
    out
}

/// Factor a monic squarefree polynomial.
fn factor_squarefree<R: Rng>(f: &Fq, a: &[u64], rng: &mut R) -> Vec<Poly> {
    let mut out = Vec::new();
    let mut remainder = a.to_vec();
    let mut d = 1usize;
    while let Some(dr) = deg(&remainder) {
        if dr == 0 {
            break;
        }
        if d > dr / 2 {
            out.push(remainder.clone());
            break;
        }
        // Product of all irreducible factors of degree exactly d.
        let h = frobenius_power(f, d, &remainder);
        let g = gcd(f, &sub(f, &h, &[0, 1]), &remainder);
        if deg(&g) != Some(0) {
            equal_degree_split(f, &g, d, rng, &mut out);
            remainder = div_exact(f, &remainder, &g);
        }
        d += 1;
    }
    out
}

/// Cantor-Zassenhaus: split a monic squarefree product of degree-d
/// irreducibles into its factors.
fn equal_degree_split<R: Rng>(f: &Fq, a: &[u64], d: usize, rng: &mut R, out: &mut Vec<Poly>) {
    let da = deg(a).unwrap();
    if da == d {
        out.push(make_monic(f, a));
        return;
    }
    loop {
        // Random polynomial of degree < deg a.
        let mut r: Poly = (0..da).map(|_| f.rand_elem(rng)).collect();
        trim(&mut r);
        if deg(&r).is_none() || deg(&r) == Some(0) {
            continue;
        }
        let g0 = gcd(f, &r, a);
        let candidate = if deg(&g0) != Some(0) {
            g0
        } else if f.p() == 2 {
            // Trace map onto F_2: r + r^2 + r^4 + ... (d·e terms).
            let steps = d * f.e() as usize;
            let mut tr = r.clone();
            let mut cur = r.clone();
            for _ in 1..steps {
                cur = mul_mod(f, &cur, &cur, a);
                tr = add(f, &tr, &cur);
            }
            gcd(f, &tr, a)
        } else {
            // r^{(q^d-1)/2} - 1 via the norm map, avoiding huge exponents:
            // norm = r^{1+q+...+q^{d-1}}, then norm^{(q-1)/2}.
            let mut norm = r.clone();
            let mut cur = r.clone();
            for _ in 1..d {
                cur = pow_mod(f, &cur, f.q(), a);
                norm = mul_mod(f, &norm, &cur, a);
            }
            let s = pow_mod(f, &norm, (f.q() - 1) / 2, a);
            gcd(f, &sub(f, &s, &[1]), a)
        };
        let dc = deg(&candidate);
        if dc != Some(0) && dc != Some(da) {
            equal_degree_split(f, &candidate, d, rng, out);
            equal_degree_split(f, &div_exact(f, a, &candidate), d, rng, out);
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(0x5eed)
    }

    #[test]
    fn divmod_roundtrip() {
        let f = Fq::prime(7).unwrap();
        let a = vec![3, 0, 1, 5, 2];
        let b = vec![4, 1, 6];
        let (q, r) = divmod(&f, &a, &b);
        let back = add(&f, &mul(&f, &q, &b), &r);
        let mut a2 = a.clone();
        trim(&mut a2);
        assert_eq!(back, a2);
        assert!(deg(&r) < deg(&b));
    }

    #[test]
    fn gcd_of_known_product() {
        let f = Fq::prime(5).unwrap();
        let a = vec![1, 1]; // x + 1
        let b = vec![2, 1]; // x + 2
        let c = vec![3, 1]; // x + 3
        let ab = mul(&f, &a, &b);
        let ac = mul(&f, &a, &c);
        assert_eq!(gcd(&f, &ab, &ac), a);
        assert_eq!(lcm(&f, &a, &a), a);
    }

    #[test]
    fn factor_x4_minus_1_over_f5() {
        // Over F5, x^4 - 1 = (x-1)(x-2)(x-3)(x-4).
        let f = Fq::prime(5).unwrap();
        let poly = vec![4, 0, 0, 0, 1];
        let facs = factor(&f, &poly, &mut rng());
        assert_eq!(facs.len(), 4);
        assert!(facs.iter().all(|(g, m)| deg(g) == Some(1) && *m == 1));
        let mut prod: Poly = vec![1];
        for (g, _) in &facs {
            prod = mul(&f, &prod, g);
        }
        assert_eq!(prod, poly);
    }

    #[test]
    fn factor_with_multiplicity_char_p() {
        // (x+1)^2 (x^2+x+1) over F2; note x^2+x+1 is irreducible there.
        let f = Fq::prime(2).unwrap();
        let sq = mul(&f, &[1, 1], &[1, 1]);
        let poly = mul(&f, &sq, &[1, 1, 1]);
        let facs = factor(&f, &poly, &mut rng());
        assert_eq!(facs, vec![(vec![1, 1], 2), (vec![1, 1, 1], 1)]);
    }

    #[test]
    fn factor_pth_power() {
        // (x+2)^3 over F3 has vanishing derivative.
        let f = Fq::prime(3).unwrap();
        let mut poly: Poly = vec![1];
        for _ in 0..3 {
            poly = mul(&f, &poly, &[2, 1]);
        }
        let facs = factor(&f, &poly, &mut rng());
        assert_eq!(facs, vec![(vec![2, 1], 3)]);
    }

    #[test]
    fn factor_large_random_product_roundtrips() {
        let f = Fq::prime(13).unwrap();
        let mut r = rng();
        for _ in 0..20 {
            let d = 1 + (rand::Rng::random_range(&mut r, 0..8usize));
            let mut poly: Poly = (0..d).map(|_| f.rand_elem(&mut r)).collect();
            poly.push(1);
            let facs = factor(&f, &poly, &mut r);
            let mut prod: Poly = vec![1];
            for (g, m) in &facs {
                assert!(is_irreducible(&f, g), "non-irreducible factor {g:?}");
                for _ in 0..*m {
                    prod = mul(&f, &prod, g);
                }
            }
            assert_eq!(prod, poly);
        }
    }

    #[test]
    fn irreducibility_over_extension_field() {
        let f4 = Fq::extension(2, 2).unwrap();
        // x^2 + x + 1 splits over F4 into (x + w)(x + w^2).
        assert!(!is_irreducible(&f4, &[1, 1, 1]));
        let facs = factor(&f4, &[1, 1, 1], &mut rng());
        assert_eq!(facs.len(), 2);
        // Any linear is irreducible.
        assert!(is_irreducible(&f4, &[2, 1]));
    }

    #[test]
    fn char2_equal_degree_splitting() {
        // x^6+x^5+x^4+x^3+x^2+x+1 = (x^3+x+1)(x^3+x^2+1) over F2.
        let f = Fq::prime(2).unwrap();
        let poly = vec![1, 1, 1, 1, 1, 1, 1];
        let facs = factor(&f, &poly, &mut rng());
        // Sorted by coefficient sequence: x^3+x^2+1 before x^3+x+1.
        assert_eq!(facs, vec![(vec![1, 0, 1, 1], 1), (vec![1, 1, 0, 1], 1)]);
    }
}
