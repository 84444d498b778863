//! Finite-rank Z-algebras presented by structure constants.
//!
//! The additive group is `Z^m / Λ` with `Λ = diag(0,…,0,d_1,…,d_t)`: the
//! first `r` coordinates are free, the last `t` are torsion with canonical
//! residues in `[0, d_i)`.

use std::collections::HashSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::int::{identity, is_zero_vec, left_kernel, smith, unit_vec, zero_vec, IntMatrix, IntVec};
use crate::linalg::rat::{self, QVec};
use crate::linalg::upoly::{self, QPoly};
use crate::linalg::Lattice;

/// Largest torsion subgroup that is enumerated element by element.
pub const TORSION_LIMIT: usize = 1 << 16;
/// Largest number of primitive idempotents whose subset sums are enumerated.
pub const PRIMITIVE_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
    pub basis: Vec<String>,
    pub unity: IntVec,
    /// `structure[i][j]` is the coordinate vector of `b_i * b_j`.
    pub structure: Vec<Vec<IntVec>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationReport {
    pub valid: bool,
    pub violations: Vec<(String, Vec<usize>)>,
}

fn canon_with(v: &[BigInt], r: usize, d: &[BigInt]) -> IntVec {
    v.iter().enumerate().map(|(i, x)| if i < r { x.clone() } else { x.mod_floor(&d[i - r]) }).collect()
}

fn bilinear(u: &[BigInt], v: &[BigInt], table: &[Vec<IntVec>], m: usize) -> IntVec {
    let mut out = zero_vec(m);
    for (i, ui) in u.iter().enumerate() {
        if ui.is_zero() {
            continue;
        }
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            let k = ui * vj;
            for (o, c) in out.iter_mut().zip(&table[i][j]) {
                if !c.is_zero() {
                    *o += &k * c;
                }
            }
        }
    }
    out
}

pub fn validate_presentation(p: &Presentation) -> PresentationReport {
    let r = p.free_rank;
    let m = r + p.torsion.len();
    let mut violations = Vec::new();
    let dims_ok = p.basis.len() == m
        && p.unity.len() == m
        && p.structure.len() == m
        && p.structure.iter().all(|row| row.len() == m && row.iter().all(|v| v.len() == m));
    if !dims_ok {
        violations.push(("dimensions".to_string(), vec![]));
        return PresentationReport { valid: false, violations };
    }
    for (i, d) in p.torsion.iter().enumerate() {
        if *d < BigInt::from(2) {
            violations.push(("torsion_invariant".to_string(), vec![r + i]));
        }
    }
    if !violations.is_empty() {
        return PresentationReport { valid: false, violations };
    }
    let d = &p.torsion;
    let canon = |v: &[BigInt]| canon_with(v, r, d);
    let table: Vec<Vec<IntVec>> = p.structure.iter().map(|row| row.iter().map(|v| canon(v)).collect()).collect();
    for i in 0..m {
        for j in i + 1..m {
            if table[i][j] != table[j][i] {
                violations.push(("commutativity".to_string(), vec![i, j]));
            }
        }
    }
    for i in 0..m {
        for j in r..m {
            let scaled: IntVec = p.structure[i][j].iter().map(|x| x * &d[j - r]).collect();
            let in_lambda =
                scaled.iter().enumerate().all(|(k, x)| if k < r { x.is_zero() } else { x.is_multiple_of(&d[k - r]) });
            if !in_lambda {
                violations.push(("lambda_compatibility".to_string(), vec![i, j]));
            }
        }
    }
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                let left = canon(&bilinear(&table[i][j], &unit_vec(m, k), &table, m));
                let right = canon(&bilinear(&unit_vec(m, i), &table[j][k], &table, m));
                if left != right {
                    violations.push(("associativity".to_string(), vec![i, j, k]));
                }
            }
        }
    }
    let unity = canon(&p.unity);
    for i in 0..m {
        if canon(&bilinear(&unity, &unit_vec(m, i), &table, m))
            != unit_vec(m, i)
                .iter()
                .enumerate()
                .map(|(k, x)| if k < r { x.clone() } else { x.mod_floor(&d[k - r]) })
                .collect::<IntVec>()
        {
            violations.push(("unity".to_string(), vec![i]));
        }
    }
    PresentationReport { valid: violations.is_empty(), violations }
}

/// Data of the rational algebra `A = R ⊗ Q` (dimension `r`).
#[derive(Debug, Clone)]
pub struct RationalData {
    /// Trace form `G_ij = Tr(M_{b_i b_j})`.
    pub gram: IntMatrix,
    /// Saturated integer basis of `Rad(A) ∩ Z^r`.
    pub rad: IntMatrix,
    /// Primitive idempotents of `A`, sorted.
    pub primitive: Vec<QVec>,
}

#[derive(Debug)]
pub struct ZAlgebra {
    r: usize,
    d: Vec<BigInt>,
    basis: Vec<String>,
    unity: IntVec,
    table: Vec<Vec<IntVec>>,
    rational: OnceLock<Result<RationalData>>,
    torsion: OnceLock<Result<Vec<IntVec>>>,
    idempotents: OnceLock<Result<Vec<IntVec>>>,
}

/// Data of a quotient map `R -> R / L` computed through Smith normal form.
#[derive(Debug, Clone)]
pub struct ZProjection {
    q: IntMatrix,
    q_inv: IntMatrix,
    /// Columns of the transformed coordinates that survive, free first.
    keep: Vec<usize>,
}

impl ZAlgebra {
    pub fn new(p: &Presentation) -> Result<Self> {
        let report = validate_presentation(p);
        if !report.valid {
            let list: Vec<String> = report.violations.iter().map(|(law, idx)| format!("{law} {idx:?}")).collect();
            return Err(Error::Algebra(list.join("; ")));
        }
        Ok(Self::new_unchecked(p))
    }

    pub(crate) fn new_unchecked(p: &Presentation) -> Self {
        let r = p.free_rank;
        let d = p.torsion.clone();
        let table = p.structure.iter().map(|row| row.iter().map(|v| canon_with(v, r, &d)).collect()).collect();
        ZAlgebra {
            r,
            unity: canon_with(&p.unity, r, &d),
            d,
            basis: p.basis.clone(),
            table,
            rational: OnceLock::new(),
            torsion: OnceLock::new(),
            idempotents: OnceLock::new(),
        }
    }

    pub fn presentation(&self) -> Presentation {
        Presentation {
            free_rank: self.r,
            torsion: self.d.clone(),
            basis: self.basis.clone(),
            unity: self.unity.clone(),
            structure: self.table.clone(),
        }
    }

    pub fn free_rank(&self) -> usize {
        self.r
    }

    pub fn torsion_invariants(&self) -> &[BigInt] {
        &self.d
    }

    pub fn dim(&self) -> usize {
        self.r + self.d.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn is_finite(&self) -> bool {
        self.r == 0
    }

    /// Number of elements when finite.
    pub fn order(&self) -> Option<BigInt> {
        (self.r == 0).then(|| self.d.iter().product())
    }

    pub fn canon(&self, v: &[BigInt]) -> IntVec {
        canon_with(v, self.r, &self.d)
    }

    pub fn zero(&self) -> IntVec {
        zero_vec(self.dim())
    }

    pub fn one(&self) -> IntVec {
        self.unity.clone()
    }

    pub fn basis_vec(&self, i: usize) -> IntVec {
        self.canon(&unit_vec(self.dim(), i))
    }

    pub fn from_int(&self, k: &BigInt) -> IntVec {
        self.canon(&self.unity.iter().map(|x| x * k).collect::<IntVec>())
    }

    pub fn add(&self, a: &[BigInt], b: &[BigInt]) -> IntVec {
        self.canon(&a.iter().zip(b).map(|(x, y)| x + y).collect::<IntVec>())
    }

    pub fn sub(&self, a: &[BigInt], b: &[BigInt]) -> IntVec {
        self.canon(&a.iter().zip(b).map(|(x, y)| x - y).collect::<IntVec>())
    }

    pub fn neg(&self, a: &[BigInt]) -> IntVec {
        self.canon(&a.iter().map(|x| -x).collect::<IntVec>())
    }

    pub fn scale(&self, a: &[BigInt], k: &BigInt) -> IntVec {
        self.canon(&a.iter().map(|x| x * k).collect::<IntVec>())
    }

    pub fn mul(&self, a: &[BigInt], b: &[BigInt]) -> IntVec {
        self.canon(&bilinear(a, b, &self.table, self.dim()))
    }

    pub fn pow(&self, a: &[BigInt], k: u32) -> IntVec {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Multiplication operator: row `j` is `f * b_j`.
    pub fn mult_matrix(&self, f: &[BigInt]) -> IntMatrix {
        (0..self.dim()).map(|j| self.mul(f, &unit_vec(self.dim(), j))).collect()
    }

    /// Basis rows of `Λ`.
    pub fn relation_rows(&self) -> IntMatrix {
        let m = self.dim();
        self.d
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let mut v = zero_vec(m);
                v[self.r + i] = d.clone();
                v
            })
            .collect()
    }

    pub fn relations(&self) -> Lattice {
        Lattice::from_rows(&self.relation_rows(), self.dim())
    }

    /// `R g_1 + … + R g_k + Λ`
    pub fn ideal_lattice(&self, gens: &[IntVec]) -> Lattice {
        let mut rows = self.relation_rows();
        for g in gens {
            rows.extend(self.mult_matrix(g));
        }
        Lattice::from_rows(&rows, self.dim())
    }

    /// `{v : v f ∈ L}` for a lattice `L ⊇ Λ`.
    pub fn colon(&self, l: &Lattice, f: &[BigInt]) -> Lattice {
        let m = self.dim();
        let mut stacked = self.mult_matrix(f);
        stacked.extend(l.basis().iter().cloned());
        let k = left_kernel(&stacked, m);
        let rows: IntMatrix = k.iter().map(|row| row[..m].to_vec()).collect();
        Lattice::from_rows(&rows, m).sum(&self.relations())
    }

    pub fn annihilator(&self, f: &[BigInt]) -> Lattice {
        self.colon(&self.relations(), f)
    }

    /// Elements of the torsion submodule `T` (free coordinates zero).
    pub fn torsion_elements(&self) -> Result<&[IntVec]> {
        self.torsion
            .get_or_init(|| {
                let sizes: Vec<usize> = self
                    .d
                    .iter()
                    .map(|d| d.to_usize().filter(|&s| s <= TORSION_LIMIT))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| Error::Capacity("torsion invariant too large".into()))?;
                let total = sizes.iter().try_fold(1usize, |acc, &s| acc.checked_mul(s));
                match total {
                    Some(t) if t <= TORSION_LIMIT => {}
                    _ => return Err(Error::Capacity("torsion subgroup too large to enumerate".into())),
                }
                let mut out = vec![self.zero()];
                for (i, &s) in sizes.iter().enumerate() {
                    let mut next = Vec::with_capacity(out.len() * s);
                    for v in &out {
                        for c in 0..s {
                            let mut w = v.clone();
                            w[self.r + i] = BigInt::from(c);
                            next.push(w);
                        }
                    }
                    out = next;
                }
                Ok(out)
            })
            .as_ref()
            .map(|v| v.as_slice())
            .map_err(Clone::clone)
    }

    /// All elements of a finite algebra (`r = 0`) in torsion-lexicographic order.
    pub fn enumerate(&self) -> Result<Vec<IntVec>> {
        if self.r > 0 {
            return Err(Error::InfiniteRing("Z-algebra of positive free rank".into()));
        }
        Ok(self.torsion_elements()?.to_vec())
    }

    /// Elements with free coordinates in `[-h, h]`, ordered by height, then
    /// free coordinates (positive before negative), then torsion coordinates.
    pub fn sample(&self, h: u32) -> Result<Vec<IntVec>> {
        let torsion = self.torsion_elements()?;
        let key = |a: i64| (if a > 0 { 2 * a - 1 } else { -2 * a }) as u64;
        let mut out = Vec::new();
        for height in 0..=h as i64 {
            let mut frees: Vec<Vec<i64>> = vec![vec![]];
            for _ in 0..self.r {
                frees = frees
                    .into_iter()
                    .flat_map(|v| {
                        (-height..=height).map(move |a| {
                            let mut w = v.clone();
                            w.push(a);
                            w
                        })
                    })
                    .collect();
            }
            frees.retain(|v| v.iter().map(|a| a.abs()).max().unwrap_or(0) == height);
            frees.sort_by_key(|v| v.iter().map(|&a| key(a)).collect::<Vec<_>>());
            for f in frees {
                for t in torsion {
                    let mut v = t.clone();
                    for (i, a) in f.iter().enumerate() {
                        v[i] = BigInt::from(*a);
                    }
                    out.push(v);
                }
            }
            if self.r == 0 {
                break;
            }
        }
        Ok(out)
    }

    // ---- element predicates -----------------------------------------------

    pub fn is_unit(&self, f: &[BigInt]) -> bool {
        let mut rows = self.mult_matrix(f);
        rows.extend(self.relation_rows());
        Lattice::from_rows(&rows, self.dim()).is_full()
    }

    pub fn is_zero_divisor(&self, f: &[BigInt]) -> bool {
        self.annihilator(f) != self.relations()
    }

    pub fn is_idempotent(&self, f: &[BigInt]) -> bool {
        self.mul(f, f) == self.canon(f)
    }

    fn is_torsion_nilpotent(&self, t: &[BigInt]) -> bool {
        let mut seen = HashSet::new();
        let mut p = self.canon(t);
        loop {
            if is_zero_vec(&p) {
                return true;
            }
            if !seen.insert(p.clone()) {
                return false;
            }
            p = self.mul(&p, t);
        }
    }

    /// Free part nilpotent in `A` (checked as `f^r` having zero free part)
    /// and the torsion power nilpotent by direct powering.
    pub fn is_nilpotent(&self, f: &[BigInt]) -> bool {
        let w = self.pow(f, self.r.max(1) as u32);
        if !is_zero_vec(&w[..self.r]) {
            return false;
        }
        self.is_torsion_nilpotent(&w)
    }

    // ---- the rational algebra A -------------------------------------------

    fn a_mul(&self, x: &[BigRational], y: &[BigRational]) -> QVec {
        let r = self.r;
        let mut out = vec![BigRational::zero(); r];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let k = xi * yj;
                for (o, c) in out.iter_mut().zip(&self.table[i][j][..r]) {
                    if !c.is_zero() {
                        *o += &k * rat::q(c);
                    }
                }
            }
        }
        out
    }

    pub fn a_one(&self) -> QVec {
        rat::to_q(&self.unity[..self.r])
    }

    fn a_eval(&self, p: &QPoly, a: &[BigRational]) -> QVec {
        let mut acc = vec![BigRational::zero(); self.r];
        for c in p.iter().rev() {
            acc = self.a_mul(&acc, a);
            for (x, y) in acc.iter_mut().zip(self.a_one()) {
                *x += c * y;
            }
        }
        acc
    }

    fn a_minpoly(&self, a: &[BigRational]) -> QPoly {
        let mut powers = vec![self.a_one()];
        loop {
            let next = self.a_mul(a, powers.last().unwrap());
            if let Some(c) = rat::solve_left(&powers, &next) {
                let mut p: QPoly = c.into_iter().map(|x| -x).collect();
                p.push(BigRational::one());
                return p;
            }
            powers.push(next);
        }
    }

    /// Rational algebra data: trace form, radical lattice, primitive idempotents.
    pub fn rational(&self) -> Result<&RationalData> {
        self.rational.get_or_init(|| self.compute_rational()).as_ref().map_err(Clone::clone)
    }

    fn compute_rational(&self) -> Result<RationalData> {
        let r = self.r;
        let gram: IntMatrix = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let z = rat::to_q(&self.table[i][j][..r]);
                        (0..r)
                            .map(|k| self.a_mul(&z, &rat::to_q(&unit_vec(r, k)))[k].clone())
                            .fold(BigRational::zero(), |acc, x| acc + x)
                            .to_integer()
                    })
                    .collect()
            })
            .collect();
        let rad = if r == 0 { Vec::new() } else { left_kernel(&gram, r) };
        let dim_ss = r - rad.len();
        let mut primitive = Vec::new();
        if dim_ss > 0 {
            let mut candidates: Vec<QVec> =
                (1..=24i64).map(|t| (0..r).map(|j| rat::qi(t.pow(j as u32))).collect()).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..64 {
                candidates.push((0..r).map(|_| rat::qi(rng.gen_range(-12..=12))).collect());
            }
            let mut split = None;
            for a in &candidates {
                let s = upoly::q_squarefree_part(&self.a_minpoly(a));
                if (s.len() - 1) == dim_ss {
                    split = Some((a.clone(), s));
                    break;
                }
            }
            let (a, s) = split
                .ok_or_else(|| Error::Capacity("no primitive element found for the semisimple quotient".into()))?;
            if dim_ss > 12 {
                return Err(Error::Capacity(format!("semisimple dimension {dim_ss} above 12")));
            }
            for fac in upoly::factor_squarefree_q(&s) {
                let cof = upoly::q_divrem(&s, &fac).0;
                let (_, u, _) = upoly::q_xgcd(&cof, &fac);
                let poly = upoly::q_divrem(&upoly::q_mul(&u, &cof), &s).1;
                let mut e = self.a_eval(&poly, &a);
                for _ in 0..128 {
                    let e2 = self.a_mul(&e, &e);
                    if e2 == e {
                        break;
                    }
                    let e3 = self.a_mul(&e2, &e);
                    e = e2.iter().zip(&e3).map(|(x, y)| rat::qi(3) * x - rat::qi(2) * y).collect();
                }
                if self.a_mul(&e, &e) != e {
                    return Err(Error::Verification("idempotent lifting did not converge".into()));
                }
                primitive.push(e);
            }
            primitive.sort();
            let total = primitive
                .iter()
                .fold(vec![BigRational::zero(); r], |acc, e| acc.iter().zip(e).map(|(x, y)| x + y).collect());
            if total != self.a_one() {
                return Err(Error::Verification("primitive idempotents do not sum to 1".into()));
            }
        }
        Ok(RationalData { gram, rad, primitive })
    }

    /// Multiplication operator of `A` for a rational element.
    pub fn a_mult_matrix(&self, x: &[BigRational]) -> Vec<QVec> {
        (0..self.r).map(|j| self.a_mul(x, &rat::to_q(&unit_vec(self.r, j)))).collect()
    }

    /// Product in `A` of two rational vectors (exposed for spectrum code).
    pub fn a_product(&self, x: &[BigRational], y: &[BigRational]) -> QVec {
        self.a_mul(x, y)
    }

    /// Complete list of idempotents, sorted by coordinates.
    pub fn idempotents(&self) -> Result<&[IntVec]> {
        self.idempotents
            .get_or_init(|| {
                let data = self.rational()?;
                let s = data.primitive.len();
                if s > PRIMITIVE_LIMIT {
                    return Err(Error::Capacity(format!("{s} primitive idempotents")));
                }
                let torsion = self.torsion_elements()?;
                let mut out = Vec::new();
                for mask in 0u32..(1 << s) {
                    let mut u = vec![BigRational::zero(); self.r];
                    for (i, e) in data.primitive.iter().enumerate() {
                        if mask >> i & 1 == 1 {
                            for (x, y) in u.iter_mut().zip(e) {
                                *x += y;
                            }
                        }
                    }
                    let Some(ui) = rat::to_int(&u) else { continue };
                    for t in torsion {
                        let mut v = t.clone();
                        v[..self.r].clone_from_slice(&ui);
                        if self.is_idempotent(&v) {
                            out.push(self.canon(&v));
                        }
                    }
                }
                out.sort();
                out.dedup();
                Ok(out)
            })
            .as_ref()
            .map(|v| v.as_slice())
            .map_err(Clone::clone)
    }

    // ---- quotients ----------------------------------------------------------

    /// Presentation of `R / L` for a lattice `L ⊇ Λ` that is an ideal.
    pub fn quotient(&self, l: &Lattice) -> (Presentation, ZProjection) {
        let m = self.dim();
        let s = smith(l.basis(), m);
        let mut free = Vec::new();
        let mut tors = Vec::new();
        for (i, d) in s.diag.iter().enumerate() {
            if d.is_zero() {
                free.push(i);
            } else if !d.is_one() {
                tors.push(i);
            }
        }
        let keep: Vec<usize> = free.iter().chain(&tors).copied().collect();
        let proj = ZProjection { q: s.q.clone(), q_inv: s.q_inv.clone(), keep: keep.clone() };
        let d: Vec<BigInt> = tors.iter().map(|&i| s.diag[i].clone()).collect();
        let r = free.len();
        let n = keep.len();
        let lifts: Vec<IntVec> = (0..n).map(|k| s.q_inv[keep[k]].clone()).collect();
        let project = |v: &[BigInt]| -> IntVec {
            let w = crate::linalg::int::vec_mat(v, &proj.q, m);
            canon_with(&keep.iter().map(|&i| w[i].clone()).collect::<IntVec>(), r, &d)
        };
        let structure: Vec<Vec<IntVec>> =
            (0..n).map(|i| (0..n).map(|j| project(&self.mul(&lifts[i], &lifts[j]))).collect()).collect();
        let basis: Vec<String> = (0..n)
            .map(|k| {
                let v = self.canon(&lifts[k]);
                let nz: Vec<usize> = (0..m).filter(|&i| !v[i].is_zero()).collect();
                if nz.len() == 1 && v[nz[0]].is_one() {
                    self.basis[nz[0]].clone()
                } else if is_zero_vec(&self.sub(&v, &self.unity)) {
                    "1".to_string()
                } else {
                    format!("e{k}")
                }
            })
            .collect();
        let mut basis = basis;
        let mut seen = HashSet::new();
        for (k, b) in basis.iter_mut().enumerate() {
            if !seen.insert(b.clone()) {
                *b = format!("e{k}");
            }
        }
        let unity = project(&self.unity);
        let pres = Presentation { free_rank: r, torsion: d.clone(), basis, unity, structure };
        (pres, proj)
    }

    // ---- element syntax -----------------------------------------------------

    pub fn format(&self, v: &[BigInt]) -> String {
        let mut out = String::new();
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let name = &self.basis[i];
            let term = if name == "1" {
                c.abs().to_string()
            } else if c.abs().is_one() {
                name.clone()
            } else {
                format!("{}*{}", c.abs(), name)
            };
            if c.is_negative() {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            out.push_str(&term);
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }

    pub fn parse(&self, s: &str) -> Result<IntVec> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(s.to_string());
        let m = self.dim();
        if let Some(inner) = t.strip_prefix('[').and_then(|x| x.strip_suffix(']')) {
            let coords: Vec<BigInt> = if inner.is_empty() {
                Vec::new()
            } else {
                inner.split(',').map(|x| x.parse::<BigInt>().map_err(|_| bad())).collect::<Result<_>>()?
            };
            if coords.len() != m {
                return Err(Error::Parse(format!("{s}: expected {m} coordinates")));
            }
            return Ok(self.canon(&coords));
        }
        if t.is_empty() {
            return Err(bad());
        }
        let mut acc = self.zero();
        let mut terms = Vec::new();
        let mut cur = String::new();
        for (i, ch) in t.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('*') && !cur.ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        for term in terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(b) => (-1, b.to_string()),
                None => (1, term.strip_prefix('+').unwrap_or(&term).to_string()),
            };
            let digits: String = body.chars().take_while(|c| c.is_ascii_digit()).collect();
            let rest = body[digits.len()..].trim_start_matches('*').to_string();
            let coeff = if digits.is_empty() { BigInt::one() } else { digits.parse::<BigInt>().map_err(|_| bad())? }
                * BigInt::from(sign);
            let vec = if rest.is_empty() {
                if digits.is_empty() {
                    return Err(bad());
                }
                self.unity.clone()
            } else {
                let idx = self.basis.iter().position(|b| *b == rest).ok_or_else(bad)?;
                unit_vec(m, idx)
            };
            acc = acc.iter().zip(&vec).map(|(x, y)| x + &coeff * y).collect();
        }
        Ok(self.canon(&acc))
    }
}

impl ZProjection {
    pub fn project(&self, target: &ZAlgebra, v: &[BigInt]) -> IntVec {
        let w = crate::linalg::int::vec_mat(v, &self.q, self.q.len());
        target.canon(&self.keep.iter().map(|&i| w[i].clone()).collect::<IntVec>())
    }

    pub fn lift(&self, w: &[BigInt]) -> IntVec {
        let m = self.q.len();
        let mut full = zero_vec(m);
        for (k, &i) in self.keep.iter().enumerate() {
            full[i] = w[k].clone();
        }
        crate::linalg::int::vec_mat(&full, &self.q_inv, m)
    }

    pub fn identity(m: usize) -> Self {
        ZProjection { q: identity(m), q_inv: identity(m), keep: (0..m).collect() }
    }
}

/// Block-diagonal presentation of a direct product.
pub fn product_presentation(parts: &[Presentation]) -> Presentation {
    let r: usize = parts.iter().map(|p| p.free_rank).sum();
    let m: usize = parts.iter().map(|p| p.free_rank + p.torsion.len()).sum();
    // new index of each (part, old index)
    let mut index = Vec::new();
    let mut free_off = 0;
    let mut tors_off = r;
    for p in parts {
        let mut map = Vec::new();
        for i in 0..p.free_rank + p.torsion.len() {
            if i < p.free_rank {
                map.push(free_off + i);
            } else {
                map.push(tors_off + i - p.free_rank);
            }
        }
        free_off += p.free_rank;
        tors_off += p.torsion.len();
        index.push(map);
    }
    let mut structure = vec![vec![zero_vec(m); m]; m];
    let mut basis = vec![String::new(); m];
    let mut torsion = vec![BigInt::zero(); m - r];
    let mut unity = zero_vec(m);
    for (k, p) in parts.iter().enumerate() {
        let map = &index[k];
        for (i, &ni) in map.iter().enumerate() {
            basis[ni] = if parts.len() > 1 { format!("{}_{}", p.basis[i], k + 1) } else { p.basis[i].clone() };
            unity[ni] = p.unity[i].clone();
            if i >= p.free_rank {
                torsion[ni - r] = p.torsion[i - p.free_rank].clone();
            }
            for (j, &nj) in map.iter().enumerate() {
                for (l, &nl) in map.iter().enumerate() {
                    structure[ni][nj][nl] = p.structure[i][j][l].clone();
                }
            }
        }
    }
    Presentation { free_rank: r, torsion, basis, unity, structure }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn v(xs: &[i64]) -> IntVec {
        xs.iter().map(|&x| b(x)).collect()
    }

    pub(crate) fn deligne() -> Presentation {
        Presentation {
            free_rank: 1,
            torsion: vec![b(2)],
            basis: vec!["1".into(), "x".into()],
            unity: v(&[1, 0]),
            structure: vec![vec![v(&[1, 0]), v(&[0, 1])], vec![v(&[0, 1]), v(&[0, 0])]],
        }
    }

    #[test]
    fn deligne_is_valid_and_x_squared_is_zero() {
        let z = ZAlgebra::new(&deligne()).unwrap();
        let x = z.parse("x").unwrap();
        assert_eq!(z.mul(&x, &x), v(&[0, 0]));
        assert_eq!(z.parse("3+x").unwrap(), v(&[3, 1]));
        assert_eq!(z.format(&v(&[-2, 1])), "-2+x");
        assert!(z.is_nilpotent(&x));
        assert!(!z.is_nilpotent(&v(&[2, 0])));
        assert!(z.is_zero_divisor(&v(&[2, 0])));
        assert!(z.is_unit(&v(&[1, 1])));
    }

    #[test]
    fn asymmetric_table_is_rejected() {
        let mut p = deligne();
        p.structure[0][1] = v(&[0, 0]);
        let rep = validate_presentation(&p);
        assert!(!rep.valid);
        assert!(rep.violations.iter().any(|(law, _)| law == "commutativity"));
    }

    #[test]
    fn lambda_incompatible_table_is_rejected() {
        // x^2 = 1 free, but 2x = 0 forces 2 = 0
        let mut p = deligne();
        p.structure[1][1] = v(&[1, 0]);
        let rep = validate_presentation(&p);
        assert!(rep.violations.iter().any(|(law, _)| law == "lambda_compatibility"));
    }

    #[test]
    fn sample_order_and_count() {
        let z = ZAlgebra::new(&deligne()).unwrap();
        let s = z.sample(2).unwrap();
        assert_eq!(s.len(), 10);
        assert_eq!(s[0], v(&[0, 0]));
        assert_eq!(s[6], v(&[2, 0]));
    }

    #[test]
    fn deligne_idempotents_are_trivial() {
        let z = ZAlgebra::new(&deligne()).unwrap();
        assert_eq!(z.idempotents().unwrap(), &[v(&[0, 0]), v(&[1, 0])]);
    }

    #[test]
    fn split_algebra_has_four_idempotents() {
        // Z[x]/(x^2 - 2x): x^2 = 2x
        let p = Presentation {
            free_rank: 2,
            torsion: vec![],
            basis: vec!["1".into(), "x".into()],
            unity: v(&[1, 0]),
            structure: vec![vec![v(&[1, 0]), v(&[0, 1])], vec![v(&[0, 1]), v(&[0, 2])]],
        };
        let z = ZAlgebra::new(&p).unwrap();
        assert_eq!(z.rational().unwrap().primitive.len(), 2);
        // (x/2) is idempotent in A but not integral
        assert_eq!(z.idempotents().unwrap().len(), 2);
    }

    #[test]
    fn quotient_by_x_is_integers() {
        let z = ZAlgebra::new(&deligne()).unwrap();
        let l = z.ideal_lattice(&[v(&[0, 1])]);
        let (p, proj) = z.quotient(&l);
        assert_eq!(p.free_rank, 1);
        assert!(p.torsion.is_empty());
        let q = ZAlgebra::new(&p).unwrap();
        assert_eq!(proj.project(&q, &v(&[5, 1])), v(&[5]).iter().map(|x| x * q.one()[0].clone()).collect::<IntVec>());
    }
}
