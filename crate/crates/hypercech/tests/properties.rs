use std::sync::Arc;

use proptest::prelude::*;

use hypercech::coeff::{AbelianGroup, CoefficientComplex};
use hypercech::cochain::{is_normalized, normalize, total_d3, Family, TriCochain};
use hypercech::covers::TrivialCover;
use hypercech::group::{FiniteGroup, GroupModel, VectorGroup};
use hypercech::simplicial::{check_simplicial_identities, monotone_maps, Nerve, SimplexMap};
use hypercech::space::FiniteCoveredSpace;
use hypercech::twogroup::extension::{central_extension_group, Cochain2};

fn space() -> FiniteCoveredSpace {
    FiniteCoveredSpace::from_nerve(&FiniteGroup::cyclic(3), &TrivialCover, 4).unwrap()
}

fn cx() -> CoefficientComplex {
    CoefficientComplex::new(AbelianGroup::integers(1), AbelianGroup::cyclic(6), vec![vec![2.0]]).unwrap()
}

/// Fills the cochain from `vals`, cycling through them.
fn fill(s: &FiniteCoveredSpace, cx: &CoefficientComplex, c: &mut TriCochain, vals: &[i64]) {
    let g = cx.group(c.r).clone();
    let mut k = 0;
    let dim = c.dim;
    c.fill(s, |_, _| {
        let mut v: Vec<f64> = (0..dim).map(|_| {
            k += 1;
            vals[k % vals.len()] as f64
        }).collect();
        g.reduce(&mut v);
        v
    });
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn d3_squares_to_zero(vals in prop::collection::vec(-9i64..=9, 1..40), degree in 1usize..=2) {
        let s = space();
        let cx = cx();
        let mut f = Family::zeros(&s, &cx, degree, 0);
        for c in f.comps.values_mut() {
            fill(&s, &cx, c, &vals);
        }
        let dd = total_d3(&s, &cx, &total_d3(&s, &cx, &f).unwrap()).unwrap();
        prop_assert!(dd.is_zero(&s, &cx));
    }

    #[test]
    fn normalize_is_an_idempotent_projection(vals in prop::collection::vec(-9i64..=9, 1..40), shape in 0usize..4) {
        let s = space();
        let cx = cx();
        let (p, q, r) = [(1, 1, 0), (2, 0, 1), (2, 1, 0), (3, 0, 0)][shape];
        let mut c = TriCochain::zeros_in(&s, &cx, p, q, r).unwrap();
        fill(&s, &cx, &mut c, &vals);
        let n = normalize(&s, &cx, &c);
        prop_assert!(is_normalized(&s, &cx, &n));
        prop_assert_eq!(normalize(&s, &cx, &n), n.clone());
        if is_normalized(&s, &cx, &c) {
            prop_assert_eq!(n, c);
        }
    }

    #[test]
    fn simplex_maps_compose_associatively(a in 0usize..10, b in 0usize..6, c in 0usize..4) {
        let f = &monotone_maps(1, 2)[a % monotone_maps(1, 2).len()];
        let g = &monotone_maps(2, 3)[b % monotone_maps(2, 3).len()];
        let h = &monotone_maps(3, 3)[c % monotone_maps(3, 3).len()];
        let left = h.compose(g).unwrap().compose(f).unwrap();
        let right = h.compose(&g.compose(f).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(SimplexMap::identity(3).compose(g).unwrap(), g.clone());
    }

    #[test]
    fn bilinear_extensions_are_associative(
        m in prop::collection::vec(-3.0f64..3.0, 4),
        pts in prop::collection::vec(prop::collection::vec(-2.0f64..2.0, 2), 3),
        zs in prop::collection::vec(-2.0f64..2.0, 3),
    ) {
        let f: Cochain2<Vec<f64>> = Arc::new(move |g: &Vec<f64>, h: &Vec<f64>| {
            vec![m[0] * g[0] * h[0] + m[1] * g[0] * h[1] + m[2] * g[1] * h[0] + m[3] * g[1] * h[1]]
        });
        let e = central_extension_group(f, AbelianGroup::real(1), VectorGroup::new(2), &pts).unwrap();
        let s: Vec<_> = zs.into_iter().map(|z| vec![z]).zip(pts).collect();
        let x = (&s[0], &s[1], &s[2]);
        let l = e.mul(&e.mul(x.0, x.1), x.2);
        let r = e.mul(x.0, &e.mul(x.1, x.2));
        prop_assert!((l.0[0] - r.0[0]).abs() < 1e-9);
    }
}

#[test]
fn nerves_satisfy_the_simplicial_identities() {
    for g in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(4), FiniteGroup::symmetric3()] {
        let r = check_simplicial_identities(&Nerve::new(g), 3);
        assert!(r.passed(), "{r}");
    }
}
