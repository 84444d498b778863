mod common;

use std::collections::BTreeSet;

use common::{poly_mul_is_zero, poly_window};
use proptest::prelude::*;
use ringlab::harness::catalog::catalog_get;
use ringlab::ideal::annihilator;
use ringlab::linalg::int::mat_mul;
use ringlab::poly::{poly_annihilator_bounded, pp_annihilator_idempotent, Poly};
use ringlab::ultra::{star_ideal, support, SetIdeal};
use ringlab::{Element, Ideal, Ring};

const ZALGEBRAS: [&str; 6] = ["deligne", "z_x_x2_minus_2x", "z_omega", "z_cross_z", "z_x_x2", "z_cross_f2"];

fn zalgebra(i: usize) -> Ring {
    catalog_get(ZALGEBRAS[i % ZALGEBRAS.len()]).unwrap().ring().unwrap()
}

fn zelement(r: &Ring, coords: &[i64]) -> Element {
    let m = r.zalg().unwrap().dim();
    r.coords(r.zalg().unwrap().canon(&coords[..m].iter().map(|&c| c.into()).collect::<Vec<_>>()))
}

fn small_product(pick: &[usize]) -> Ring {
    let seeds = [Ring::zmod(2).unwrap(), Ring::zmod(3).unwrap(), Ring::zmod(4).unwrap(), Ring::zmod(9).unwrap()];
    Ring::product(pick.iter().map(|&i| seeds[i % seeds.len()].clone()).collect()).unwrap()
}

/// Finite bases with at most nine elements.
fn small_bases() -> Vec<Ring> {
    let z = |n| Ring::zmod(n).unwrap();
    let f2 = z(2);
    vec![
        z(2),
        z(3),
        z(4),
        z(5),
        z(6),
        z(7),
        z(8),
        z(9),
        Ring::poly_quotient(&f2, vec![1, 1], "a").unwrap(),
        Ring::poly_quotient(&f2, vec![0, 0], "x").unwrap(),
        Ring::product(vec![z(2), z(2)]).unwrap(),
        Ring::product(vec![z(2), z(4)]).unwrap(),
        Ring::product(vec![z(3), z(3)]).unwrap(),
        Ring::product(vec![z(2), z(2), z(2)]).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_matrices(i in 0usize..6, a in prop::collection::vec(-6i64..6, 2), b in prop::collection::vec(-6i64..6, 2)) {
        let r = zalgebra(i);
        let z = r.zalg().unwrap();
        let (f, g) = (zelement(&r, &a), zelement(&r, &b));
        let m = z.dim();
        let canon = |mat: Vec<Vec<num_bigint::BigInt>>| mat.iter().map(|row| z.canon(row)).collect::<Vec<_>>();
        let fg = r.mul(&f, &g);
        prop_assert_eq!(canon(z.mult_matrix(fg.coords())), canon(mat_mul(&z.mult_matrix(f.coords()), &z.mult_matrix(g.coords()), m)));
        let sum = r.add(&f, &g);
        let added: Vec<Vec<_>> = z.mult_matrix(f.coords()).iter().zip(z.mult_matrix(g.coords())).map(|(x, y)| z.add(x, &y)).collect();
        prop_assert_eq!(canon(z.mult_matrix(sum.coords())), canon(added));
        prop_assert_eq!(z.canon(&z.canon(f.coords())), z.canon(f.coords()));
    }

    #[test]
    fn annihilator_grows_zalgebra(i in 0usize..6, a in prop::collection::vec(-3i64..4, 2), b in prop::collection::vec(-3i64..4, 2)) {
        let r = zalgebra(i);
        let (f, g) = (zelement(&r, &a), zelement(&r, &b));
        prop_assert!(annihilator(&r, &f).leq(&annihilator(&r, &r.mul(&f, &g))));
    }

    #[test]
    fn supports(pick in prop::collection::vec(0usize..4, 1..4), x in any::<u32>(), y in any::<u32>()) {
        let r = small_product(&pick);
        let n = r.finite().unwrap().size() as u32;
        let (f, g) = (r.idx(x % n), r.idx(y % n));
        let su = |e: &Element| support(&r, e).unwrap().into_iter().collect::<BTreeSet<_>>();
        let (sf, sg) = (su(&f), su(&g));
        prop_assert!(su(&r.mul(&f, &g)).is_subset(&sf.intersection(&sg).copied().collect()));
        prop_assert!(su(&r.add(&f, &g)).is_subset(&sf.union(&sg).copied().collect()));
        let reduced = pick.iter().all(|&i| i % 4 < 2);
        if reduced {
            prop_assert_eq!(su(&r.pow(&f, 2)), sf.clone());
            prop_assert_eq!(su(&r.pow(&f, 3)), sf);
        }
    }

    #[test]
    fn star_generated_by_indicators(pick in prop::collection::vec(0usize..4, 1..4), mask in any::<u32>()) {
        let r = small_product(&pick);
        let fr = r.finite().unwrap();
        let i = SetIdeal::principal(pick.len(), mask);
        let indicators: Vec<Element> = i
            .members()
            .iter()
            .map(|&s| {
                let comps: Vec<u32> = fr
                    .factors()
                    .unwrap()
                    .iter()
                    .enumerate()
                    .map(|(k, f)| if s & (1 << k) != 0 { f.finite().unwrap().one() } else { f.finite().unwrap().zero() })
                    .collect();
                r.idx(fr.compose(&comps))
            })
            .collect();
        prop_assert_eq!(star_ideal(&r, &i).unwrap(), Ideal::new(&r, &indicators).unwrap());
    }

    #[test]
    fn idempotent_construction_small_bases(b in 0usize..14, coeffs in prop::collection::vec(any::<u32>(), 3)) {
        let base = &small_bases()[b];
        let fr = base.finite().unwrap();
        let f: Vec<Element> = coeffs.iter().map(|&c| base.idx(c % fr.size() as u32)).collect();
        let poly = Poly::new(base, &f).unwrap();
        match pp_annihilator_idempotent(&poly) {
            Ok(e) => {
                let window = poly_window(base, 4);
                let ann: BTreeSet<Vec<u32>> = window
                    .iter()
                    .filter(|g| poly_mul_is_zero(base, &f, g))
                    .map(|g| g.iter().map(|c| c.index()).collect())
                    .collect();
                let multiples: BTreeSet<Vec<u32>> =
                    window.iter().map(|g| g.iter().map(|c| base.mul(c, &e).index()).collect()).collect();
                prop_assert_eq!(ann, multiples);
            }
            Err(ringlab::Error::BaseNotPP) => {
                let reduced = base.enumerate().unwrap().iter().all(|x| !base.is_nilpotent(x) || base.is_zero(x));
                prop_assert!(!reduced);
            }
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}

/// McCoy: a polynomial with a nonzero annihilator in `R[x]` is killed by a
/// nonzero constant. Exhaustive over bases with at most nine elements.
#[test]
fn mccoy_small_bases() {
    for base in small_bases() {
        let window = poly_window(&base, 2);
        let consts = base.enumerate().unwrap();
        for f in &window {
            let poly = Poly::new(&base, f).unwrap();
            let bounded = poly_annihilator_bounded(&poly, 2).unwrap();
            let oracle_nonzero =
                window.iter().any(|g| g.iter().any(|c| !base.is_zero(c)) && poly_mul_is_zero(&base, f, g));
            assert_eq!(bounded.members.iter().any(|g| !g.is_zero()), oracle_nonzero, "{}", base.name());
            let constant = consts.iter().find(|c| !base.is_zero(c) && f.iter().all(|a| base.is_zero(&base.mul(a, c))));
            if oracle_nonzero {
                assert!(constant.is_some(), "{}: {poly}", base.name());
                assert!(bounded.mccoy_witness.is_some(), "{}: {poly}", base.name());
            }
        }
    }
}
