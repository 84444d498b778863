//! Univariate polynomials over Q, Z and F_p, with factorization over Q
//! (Berlekamp modulo a small prime, Hensel lifting, subset recombination).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rat::q;

/// Coefficients low to high, no trailing zeros.
pub type QPoly = Vec<BigRational>;

pub fn trim<T: Zero>(mut p: Vec<T>) -> Vec<T> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub fn deg<T>(p: &[T]) -> isize {
    p.len() as isize - 1
}

pub fn q_add(a: &QPoly, b: &QPoly) -> QPoly {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect())
}

pub fn q_sub(a: &QPoly, b: &QPoly) -> QPoly {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

pub fn q_mul(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn q_scale(a: &QPoly, k: &BigRational) -> QPoly {
    trim(a.iter().map(|x| x * k).collect())
}

pub fn q_divrem(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = a.clone();
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut quo = vec![BigRational::zero(); r.len() - db];
    let lead = b[db].recip();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() * &lead;
        for (j, y) in b.iter().enumerate() {
            r[shift + j] -= &c * y;
        }
        quo[shift] = c;
        r = trim(r);
    }
    (trim(quo), r)
}

pub fn q_monic(a: &QPoly) -> QPoly {
    match a.last() {
        None => Vec::new(),
        Some(l) => {
            let inv = l.recip();
            q_scale(a, &inv)
        }
    }
}

pub fn q_gcd(a: &QPoly, b: &QPoly) -> QPoly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let (_, r) = q_divrem(&x, &y);
        x = y;
        y = r;
    }
    q_monic(&x)
}

/// `(g, s, t)` with `s a + t b = g` and `g` monic.
pub fn q_xgcd(a: &QPoly, b: &QPoly) -> (QPoly, QPoly, QPoly) {
    let one = vec![BigRational::one()];
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (one.clone(), Vec::new());
    let (mut t0, mut t1) = (Vec::new(), one);
    while !r1.is_empty() {
        let (qq, r) = q_divrem(&r0, &r1);
        let s = q_sub(&s0, &q_mul(&qq, &s1));
        let t = q_sub(&t0, &q_mul(&qq, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    match r0.last() {
        None => (r0, s0, t0),
        Some(l) => {
            let inv = l.recip();
            (q_scale(&r0, &inv), q_scale(&s0, &inv), q_scale(&t0, &inv))
        }
    }
}

pub fn q_derivative(a: &QPoly) -> QPoly {
    trim(a.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(BigInt::from(i))).collect())
}

/// Monic squarefree part `a / gcd(a, a')`.
pub fn q_squarefree_part(a: &QPoly) -> QPoly {
    let g = q_gcd(a, &q_derivative(a));
    q_monic(&q_divrem(a, &g).0)
}

/// Primitive integer polynomial with positive leading coefficient and the
/// same roots as `a`.
pub fn q_to_primitive_z(a: &QPoly) -> Vec<BigInt> {
    let l = a.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = a.iter().map(|x| (x * q(&l)).to_integer()).collect();
    primitive(&ints)
}

pub fn z_to_q(a: &[BigInt]) -> QPoly {
    a.iter().map(q).collect()
}

fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

fn primitive(a: &[BigInt]) -> Vec<BigInt> {
    let mut c = content(a);
    if c.is_zero() {
        return Vec::new();
    }
    if a.last().is_some_and(|l| l.is_negative()) {
        c = -c;
    }
    trim(a.iter().map(|x| x / &c).collect())
}

// ---- F_p arithmetic -------------------------------------------------------

type FpPoly = Vec<u64>;

fn inv_mod(a: u64, p: u64) -> u64 {
    let e = (a as i128).extended_gcd(&(p as i128));
    e.x.rem_euclid(p as i128) as u64
}

fn fp_trim(mut a: FpPoly) -> FpPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_sub(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    fp_trim((0..n).map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p).collect())
}

fn fp_add(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    fp_trim((0..n).map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p).collect())
}

fn fp_mul(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
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
    fp_trim(out)
}

fn fp_divrem(a: &FpPoly, b: &FpPoly, p: u64) -> (FpPoly, FpPoly) {
    let mut r = a.clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    let mut quo = vec![0u64; r.len() - db];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() * inv % p;
        for (j, &y) in b.iter().enumerate() {
            r[shift + j] = (r[shift + j] + p - c * y % p) % p;
        }
        quo[shift] = c;
        r = fp_trim(r);
    }
    (fp_trim(quo), r)
}

fn fp_monic(a: &FpPoly, p: u64) -> FpPoly {
    match a.last() {
        None => Vec::new(),
        Some(&l) => {
            let inv = inv_mod(l, p);
            a.iter().map(|&x| x * inv % p).collect()
        }
    }
}

fn fp_gcd(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let r = fp_divrem(&x, &y, p).1;
        x = y;
        y = r;
    }
    fp_monic(&x, p)
}

/// `(s, t)` with `s a + t b = 1` for coprime `a`, `b`.
fn fp_xgcd(a: &FpPoly, b: &FpPoly, p: u64) -> (FpPoly, FpPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (FpPoly, FpPoly) = (vec![1], Vec::new());
    let (mut t0, mut t1): (FpPoly, FpPoly) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (qq, r) = fp_divrem(&r0, &r1, p);
        let s = fp_sub(&s0, &fp_mul(&qq, &s1, p), p);
        let t = fp_sub(&t0, &fp_mul(&qq, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let inv = inv_mod(r0[0], p);
    let sc = |v: &FpPoly| fp_trim(v.iter().map(|&x| x * inv % p).collect());
    (sc(&s0), sc(&t0))
}

fn fp_derivative(a: &FpPoly, p: u64) -> FpPoly {
    fp_trim(a.iter().enumerate().skip(1).map(|(i, &c)| (i as u64 % p) * c % p).collect())
}

/// Nullspace basis of an `n x k` matrix over F_p.
fn fp_nullspace(mut a: Vec<Vec<u64>>, k: usize, p: u64) -> Vec<Vec<u64>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        if r == a.len() {
            break;
        }
        let Some(piv) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = inv_mod(a[r][c], p);
        for x in a[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..a.len() {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                let row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&row) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..k)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut x = vec![0u64; k];
            x[f] = 1;
            for (row, &pc) in a.iter().zip(&pivots) {
                x[pc] = (p - row[f]) % p;
            }
            x
        })
        .collect()
}

/// Monic irreducible factors of a monic squarefree polynomial over F_p.
fn berlekamp(f: &FpPoly, p: u64) -> Vec<FpPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.clone()];
    }
    // x^p mod f by repeated squaring
    let mut base: FpPoly = vec![0, 1];
    let mut xp: FpPoly = vec![1];
    let mut e = p;
    while e > 0 {
        if e & 1 == 1 {
            xp = fp_divrem(&fp_mul(&xp, &base, p), f, p).1;
        }
        base = fp_divrem(&fp_mul(&base, &base, p), f, p).1;
        e >>= 1;
    }
    // rows of Q - I
    let mut rows = Vec::with_capacity(n);
    let mut cur: FpPoly = vec![1];
    for i in 0..n {
        let mut row = vec![0u64; n];
        for (j, &c) in cur.iter().enumerate() {
            row[j] = c;
        }
        row[i] = (row[i] + p - 1) % p;
        rows.push(row);
        cur = fp_divrem(&fp_mul(&cur, &xp, p), f, p).1;
    }
    // left nullspace of (Q - I): nullspace of its transpose
    let t: Vec<Vec<u64>> = (0..n).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
    let basis = fp_nullspace(t, n, p);
    let count = basis.len();
    let mut factors = vec![f.clone()];
    for v in basis {
        if factors.len() == count {
            break;
        }
        let v = fp_trim(v);
        if v.len() <= 1 {
            continue;
        }
        let mut next = Vec::new();
        for u in factors {
            if u.len() <= 2 {
                next.push(u);
                continue;
            }
            let mut rest = u;
            for s in 0..p {
                if rest.len() <= 2 {
                    break;
                }
                let shifted = fp_sub(&v, &vec![s], p);
                let g = fp_gcd(&rest, &shifted, p);
                if g.len() > 1 && g.len() < rest.len() {
                    rest = fp_divrem(&rest, &g, p).0;
                    next.push(g);
                }
            }
            next.push(fp_monic(&rest, p));
        }
        factors = next;
    }
    factors.sort();
    factors
}

// ---- lifting and recombination -------------------------------------------

fn modp(x: &BigInt, m: &BigInt) -> BigInt {
    x.mod_floor(m)
}

fn z_mul_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out.iter().map(|x| modp(x, m)).collect())
}

fn to_fp(a: &[BigInt], p: u64) -> FpPoly {
    let pb = BigInt::from(p);
    fp_trim(a.iter().map(|x| modp(x, &pb).to_u64().unwrap()).collect())
}

fn from_fp(a: &FpPoly) -> Vec<BigInt> {
    a.iter().map(|&x| BigInt::from(x)).collect()
}

/// Lifts `F = g h (mod p)` with `g`, `h` monic and coprime to a factorization
/// modulo `p^k`.
fn hensel_pair(f: &[BigInt], g: &FpPoly, h: &FpPoly, p: u64, k: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    let (s, t) = fp_xgcd(g, h, p);
    let pb = BigInt::from(p);
    let mut gz = from_fp(g);
    let mut hz = from_fp(h);
    let mut pk = pb.clone();
    for _ in 1..k {
        let next = &pk * &pb;
        let prod = z_mul_mod(&gz, &hz, &next);
        let n = f.len().max(prod.len());
        let z = BigInt::zero();
        let diff: Vec<BigInt> =
            (0..n).map(|i| modp(&(f.get(i).unwrap_or(&z) - prod.get(i).unwrap_or(&z)), &next) / &pk).collect();
        let e = to_fp(&diff, p);
        let et = fp_mul(&e, &t, p);
        let (qq, dg) = fp_divrem(&et, g, p);
        let dh = fp_add(&fp_mul(&e, &s, p), &fp_mul(&qq, h, p), p);
        for (i, c) in dg.iter().enumerate() {
            gz[i] = modp(&(&gz[i] + &pk * BigInt::from(*c)), &next);
        }
        for (i, c) in dh.iter().enumerate() {
            hz[i] = modp(&(&hz[i] + &pk * BigInt::from(*c)), &next);
        }
        pk = next;
    }
    (gz, hz)
}

fn symmetric(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m / 2;
    trim(
        a.iter()
            .map(|x| {
                let r = modp(x, m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn exact_div_z(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let (quo, rem) = q_divrem(&z_to_q(a), &z_to_q(b));
    if !rem.is_empty() {
        return None;
    }
    quo.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
}

const PRIMES: [u64; 30] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109,
    113, 127,
];

/// Irreducible factors over Z of a squarefree primitive polynomial, each
/// primitive with positive leading coefficient, sorted.
pub fn factor_squarefree_z(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let f = primitive(f);
    if f.len() <= 2 {
        return vec![f];
    }
    let lc = f.last().unwrap().clone();
    let chosen = PRIMES.iter().copied().find(|&p| {
        let fp = to_fp(&f, p);
        fp.len() == f.len() && fp_gcd(&fp, &fp_derivative(&fp, p), p).len() == 1
    });
    let p = chosen.unwrap_or_else(|| {
        // squarefree over Q implies squarefree mod all but finitely many primes
        (131u64..)
            .filter(|n| (2..*n).take_while(|d| d * d <= *n).all(|d| n % d != 0))
            .find(|&p| {
                let fp = to_fp(&f, p);
                fp.len() == f.len() && fp_gcd(&fp, &fp_derivative(&fp, p), p).len() == 1
            })
            .unwrap()
    });
    let modular = berlekamp(&fp_monic(&to_fp(&f, p), p), p);
    if modular.len() == 1 {
        return vec![f];
    }
    let n = f.len() - 1;
    let norm: BigInt = f.iter().map(|c| c.abs()).sum();
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << n) * norm;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut big = pb.clone();
    while big <= bound {
        big *= &pb;
        k += 1;
    }
    // monic target F = f / lc mod p^k
    let e = lc.extended_gcd(&big);
    let lc_inv = modp(&e.x, &big);
    let monic_f: Vec<BigInt> = f.iter().map(|c| modp(&(c * &lc_inv), &big)).collect();

    let mut lifted = Vec::new();
    let mut rest_target = monic_f;
    for i in 0..modular.len() - 1 {
        let g = &modular[i];
        let h = modular[i + 1..].iter().fold(vec![1u64], |acc, x| fp_mul(&acc, x, p));
        let (gz, hz) = hensel_pair(&rest_target, g, &h, p, k);
        lifted.push(gz);
        rest_target = hz;
    }
    lifted.push(rest_target);

    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut cur = f.clone();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut hit = None;
        for subset in combinations(&remaining, size) {
            let lcc = cur.last().unwrap().clone();
            let prod = subset.iter().fold(vec![lcc], |acc, &i| z_mul_mod(&acc, &lifted[i], &big));
            let cand = primitive(&symmetric(&prod, &big));
            if cand.len() < 2 {
                continue;
            }
            if let Some(quo) = exact_div_z(&cur, &cand) {
                hit = Some((subset, cand, quo));
                break;
            }
        }
        match hit {
            Some((subset, cand, quo)) => {
                remaining.retain(|i| !subset.contains(i));
                found.push(cand);
                cur = primitive(&quo);
            }
            None => size += 1,
        }
    }
    found.push(primitive(&cur));
    found.sort();
    found
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        for mut tail in combinations(&items[i + 1..], k - 1) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

/// Monic irreducible factors over Q of a squarefree polynomial.
pub fn factor_squarefree_q(f: &QPoly) -> Vec<QPoly> {
    if f.len() <= 2 {
        return vec![q_monic(f)];
    }
    factor_squarefree_z(&q_to_primitive_z(f)).iter().map(|g| q_monic(&z_to_q(g))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn zmul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    #[test]
    fn factors_x4_minus_1() {
        let f = factor_squarefree_z(&z(&[-1, 0, 0, 0, 1]));
        assert_eq!(f, vec![z(&[-1, 1]), z(&[1, 0, 1]), z(&[1, 1])]);
    }

    #[test]
    fn irreducible_stays_whole() {
        assert_eq!(factor_squarefree_z(&z(&[5, 0, 1])), vec![z(&[5, 0, 1])]);
        // x^4 + 1 splits modulo every prime but is irreducible over Q
        assert_eq!(factor_squarefree_z(&z(&[1, 0, 0, 0, 1])), vec![z(&[1, 0, 0, 0, 1])]);
    }

    #[test]
    fn non_monic_product() {
        let f = zmul(&z(&[1, 2]), &z(&[-3, 0, 5]));
        assert_eq!(factor_squarefree_z(&f), vec![z(&[-3, 0, 5]), z(&[1, 2])]);
    }

    #[test]
    fn combinations_enumerate_all() {
        assert_eq!(combinations(&[0, 1, 2, 3], 2).len(), 6);
        assert_eq!(combinations(&[4, 7], 1), vec![vec![4], vec![7]]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn product_of_distinct_linears_splits(roots in prop::collection::btree_set(-9i64..=9, 1..5)) {
            let f = roots.iter().fold(z(&[1]), |acc, r| zmul(&acc, &z(&[-r, 1])));
            let fs = factor_squarefree_z(&f);
            prop_assert_eq!(fs.len(), roots.len());
            let back = fs.iter().fold(z(&[1]), |acc, g| zmul(&acc, g));
            prop_assert_eq!(back, f);
        }
    }
}
