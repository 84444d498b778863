#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use ringlab::ring::zalgebra::Presentation;
use ringlab::ring::{Element, Ring};

/// A finite table ring together with a free-rank-0 Z-algebra presentation of
/// the same ring, and the coordinate map between them.
pub struct Mirror {
    pub table: Ring,
    pub zalg: Ring,
    to_table: HashMap<Vec<BigInt>, u32>,
    to_zalg: Vec<Vec<i64>>,
}

/// Generic pieces of a presentation: torsion, unity, structure, and the
/// coordinates of every table element.
struct Parts {
    table: Ring,
    torsion: Vec<i64>,
    unity: Vec<i64>,
    structure: Vec<Vec<Vec<i64>>>,
    coords: Vec<Vec<i64>>,
}

fn zmod_parts(n: u32) -> Parts {
    Parts {
        table: Ring::zmod(n).unwrap(),
        torsion: vec![n as i64],
        unity: vec![1],
        structure: vec![vec![vec![1]]],
        coords: (0..n as i64).map(|a| vec![a]).collect(),
    }
}

/// `Z/n[x]/(x^d + m_{d-1} x^{d-1} + ... + m_0)`.
fn poly_parts(n: u32, modulus: &[u32]) -> Parts {
    let d = modulus.len();
    let base = Ring::zmod(n).unwrap();
    let table = Ring::poly_quotient(&base, modulus.to_vec(), "x").unwrap();
    // x^k for k < 2d - 1 as coefficient vectors, reduced by the monic modulus.
    let mut powers: Vec<Vec<i64>> = Vec::new();
    let mut cur = vec![0i64; d];
    cur[0] = 1;
    for _ in 0..2 * d - 1 {
        powers.push(cur.clone());
        let top = cur[d - 1];
        let mut next = vec![0i64; d];
        for i in (1..d).rev() {
            next[i] = cur[i - 1];
        }
        for (i, m) in modulus.iter().enumerate() {
            next[i] = (next[i] - top * *m as i64).rem_euclid(n as i64);
        }
        cur = next;
    }
    let f = table.finite().unwrap();
    Parts {
        torsion: vec![n as i64; d],
        unity: powers[0].clone(),
        structure: (0..d).map(|i| (0..d).map(|j| powers[i + j].clone()).collect()).collect(),
        coords: f.elements().map(|a| f.poly_coefficients(a).unwrap().iter().map(|&c| c as i64).collect()).collect(),
        table,
    }
}

fn product_parts(parts: Vec<Parts>) -> Parts {
    let table = Ring::product(parts.iter().map(|p| p.table.clone()).collect()).unwrap();
    let dims: Vec<usize> = parts.iter().map(|p| p.torsion.len()).collect();
    let m: usize = dims.iter().sum();
    let mut structure = vec![vec![vec![0i64; m]; m]; m];
    let mut off = 0;
    for (p, &k) in parts.iter().zip(&dims) {
        for i in 0..k {
            for j in 0..k {
                structure[off + i][off + j][off..off + k].copy_from_slice(&p.structure[i][j]);
            }
        }
        off += k;
    }
    let f = table.finite().unwrap();
    let coords = f
        .elements()
        .map(|a| f.components(a).iter().zip(&parts).flat_map(|(&c, p)| p.coords[c as usize].clone()).collect())
        .collect();
    Parts {
        torsion: parts.iter().flat_map(|p| p.torsion.clone()).collect(),
        unity: parts.iter().flat_map(|p| p.unity.clone()).collect(),
        structure,
        coords,
        table,
    }
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

impl Mirror {
    fn build(p: Parts) -> Mirror {
        let m = p.torsion.len();
        let pres = Presentation {
            free_rank: 0,
            torsion: big(&p.torsion),
            basis: (0..m).map(|i| format!("b{i}")).collect(),
            unity: big(&p.unity),
            structure: p.structure.iter().map(|row| row.iter().map(|v| big(v)).collect()).collect(),
        };
        let zalg = Ring::zalgebra(&pres).unwrap().with_name(format!("mirror of {}", p.table.name()));
        let to_table = p.coords.iter().enumerate().map(|(i, c)| (big(c), i as u32)).collect();
        Mirror { table: p.table, zalg, to_table, to_zalg: p.coords }
    }

    pub fn table_of(&self, e: &Element) -> u32 {
        self.to_table[e.coords()]
    }

    pub fn zalg_of(&self, a: u32) -> Element {
        self.zalg.coords(big(&self.to_zalg[a as usize]))
    }

    /// Table indices of a set of Z-algebra elements.
    pub fn image(&self, es: &[Element]) -> BTreeSet<u32> {
        es.iter().map(|e| self.table_of(e)).collect()
    }
}

/// Twenty-four free-rank-0 presentations mirroring table rings.
pub fn mirrors() -> Vec<Mirror> {
    let mut out = Vec::new();
    for n in [2, 3, 4, 6, 8, 9, 10, 12, 16, 18, 25, 30] {
        out.push(zmod_parts(n));
    }
    for (n, m) in
        [(2, vec![1, 1]), (2, vec![0, 0]), (2, vec![1, 0]), (3, vec![1, 0]), (4, vec![0, 0]), (2, vec![1, 1, 0])]
    {
        out.push(poly_parts(n, &m));
    }
    out.push(product_parts(vec![zmod_parts(2), zmod_parts(4)]));
    out.push(product_parts(vec![zmod_parts(3), zmod_parts(9)]));
    out.push(product_parts(vec![zmod_parts(2), poly_parts(2, &[0, 0])]));
    out.push(product_parts(vec![poly_parts(2, &[1, 1]), zmod_parts(3)]));
    out.push(product_parts(vec![zmod_parts(2), zmod_parts(2), zmod_parts(4)]));
    out.push(product_parts(vec![zmod_parts(4), poly_parts(2, &[1, 0])]));
    out.into_iter().map(Mirror::build).collect()
}

/// Brute-force annihilator over a table ring.
pub fn ann_oracle(r: &Ring, a: &Element) -> BTreeSet<u32> {
    r.enumerate().unwrap().into_iter().filter(|x| r.is_zero(&r.mul(a, x))).map(|x| x.index()).collect()
}

pub fn nil_oracle(r: &Ring) -> BTreeSet<u32> {
    let es = r.enumerate().unwrap();
    let n = es.len() as u32;
    es.into_iter().filter(|x| r.is_zero(&r.pow(x, n.max(1)))).map(|x| x.index()).collect()
}

/// `∀ a ∈ S ∃ g ∈ S : a g = a`.
pub fn pure_oracle(r: &Ring, s: &BTreeSet<u32>) -> bool {
    s.iter().all(|&a| s.iter().any(|&g| r.mul(&r.idx(a), &r.idx(g)).index() == a))
}

/// Ideals of a finite ring by closing every subset generated by at most two
/// elements; the prime ones, and the minimal among those.
pub fn primes_oracle(r: &Ring) -> Vec<BTreeSet<u32>> {
    let es = r.enumerate().unwrap();
    let closure = |gens: &[&Element]| -> BTreeSet<u32> {
        let mut set: BTreeSet<u32> = BTreeSet::new();
        set.insert(r.zero().index());
        for g in gens {
            for x in &es {
                set.insert(r.mul(g, x).index());
            }
        }
        loop {
            let v: Vec<u32> = set.iter().copied().collect();
            let before = set.len();
            for &a in &v {
                for &b in &v {
                    set.insert(r.add(&r.idx(a), &r.idx(b)).index());
                }
            }
            if set.len() == before {
                return set;
            }
        }
    };
    let mut ideals = BTreeSet::new();
    for a in &es {
        for b in &es {
            ideals.insert(closure(&[a, b]));
        }
    }
    let n = es.len();
    let prime = |p: &BTreeSet<u32>| {
        p.len() < n
            && es.iter().all(|a| {
                es.iter().all(|b| !p.contains(&r.mul(a, b).index()) || p.contains(&a.index()) || p.contains(&b.index()))
            })
    };
    let primes: Vec<BTreeSet<u32>> = ideals.into_iter().filter(prime).collect();
    primes.iter().filter(|p| !primes.iter().any(|q| q != *p && q.is_subset(p))).cloned().collect()
}

/// Every polynomial of degree at most `d` over `r`, coefficients lowest first.
pub fn poly_window(r: &Ring, d: usize) -> Vec<Vec<Element>> {
    let es = r.enumerate().unwrap();
    let mut out = vec![Vec::new()];
    for _ in 0..=d {
        out = out.into_iter().flat_map(|p| es.iter().map(move |c| [p.clone(), vec![c.clone()]].concat())).collect();
    }
    out
}

pub fn poly_mul_is_zero(r: &Ring, f: &[Element], g: &[Element]) -> bool {
    (0..f.len() + g.len() - 1).all(|k| {
        let mut s = r.zero();
        for i in 0..f.len() {
            if k >= i && k - i < g.len() {
                s = r.add(&s, &r.mul(&f[i], &g[k - i]));
            }
        }
        r.is_zero(&s)
    })
}
