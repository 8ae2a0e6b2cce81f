//! Values frozen from independent sources: hand-computed nerve faces, classical group
//! cohomology, a textbook Smith normal form and matrix exponentials computed with nalgebra.

use approx::assert_abs_diff_eq;
use nalgebra::Matrix3;

use hypercech::coeff::{AbelianGroup, CoefficientComplex};
use hypercech::cochain::{check_cocycle3, CocycleSet};
use hypercech::cohomology::{cohomology_bruteforce, CohomologyOptions};
use hypercech::covers::TrivialCover;
use hypercech::geometry::quadrature::gauss_legendre;
use hypercech::geometry::LieModel;
use hypercech::group::{FiniteGroup, GroupModel};
use hypercech::linalg::smith_diagonal;
use hypercech::simplicial::{Nerve, SimplicialSet};
use hypercech::space::FiniteCoveredSpace;
use hypercech::twogroup::gamma::{two_group_from_cocycle, Obj3};

fn bz(n: usize, level: usize) -> FiniteCoveredSpace {
    FiniteCoveredSpace::from_nerve(&FiniteGroup::cyclic(n), &TrivialCover, level).unwrap()
}

#[test]
fn nerve_faces_of_z3() {
    let n = Nerve::new(FiniteGroup::cyclic(3));
    let x = vec![1, 2];
    assert_eq!(n.face(2, 0, &x), vec![2]);
    assert_eq!(n.face(2, 1, &x), vec![0]);
    assert_eq!(n.face(2, 2, &x), vec![1]);
    assert_eq!(n.degeneracy(1, 0, &vec![2]), vec![0, 2]);
    assert_eq!(n.degeneracy(1, 1, &vec![2]), vec![2, 0]);
    let y = vec![1, 1, 2];
    assert_eq!(n.face(3, 1, &y), vec![2, 2]);
    assert_eq!(n.face(3, 2, &y), vec![1, 0]);
}

#[test]
fn nerve_faces_of_s3_multiply_in_order() {
    let g = FiniteGroup::symmetric3();
    let n = Nerve::new(g.clone());
    for a in 0..6 {
        for b in 0..6 {
            assert_eq!(n.face(2, 1, &vec![a, b]), vec![g.mul(&a, &b)]);
        }
    }
    assert!(!g.is_abelian());
}

#[test]
fn classical_group_cohomology() {
    // H^n(Z/m; Z) = Z, 0, Z/m, 0 and H^n(Z/2; Z/2) = Z/2 for all n
    let s = bz(3, 4);
    let z = CoefficientComplex::only_a(AbelianGroup::integers(1));
    let h = |s: &FiniteCoveredSpace, cx: &CoefficientComplex, d| cohomology_bruteforce(s, cx, d, CohomologyOptions::default()).unwrap().to_string();
    assert_eq!(h(&s, &z, 0), "Z");
    assert_eq!(h(&s, &z, 1), "0");
    assert_eq!(h(&s, &z, 2), "Z/3");
    assert_eq!(h(&s, &z, 3), "0");
    let s2 = bz(2, 4);
    let f2 = CoefficientComplex::only_a(AbelianGroup::cyclic(2));
    for d in 0..=3 {
        assert_eq!(h(&s2, &f2, d), "Z/2");
    }
    // [0 → Z] shifts by one: H²(BZ/3, [0→Z]) = H¹(Z/3; Z) = 0, H³ = H²(Z/3; Z) = Z/3
    let zb = CoefficientComplex::only_b(AbelianGroup::integers(1));
    assert_eq!(h(&s, &zb, 2), "0");
    assert_eq!(h(&s, &zb, 3), "Z/3");
}

#[test]
fn textbook_smith_normal_form() {
    let m = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
    let d: Vec<i128> = smith_diagonal(&m, 3).unwrap().into_iter().map(|x| x.abs()).collect();
    assert_eq!(d, vec![2, 6, 12]);
}

#[test]
fn z2_associator_example() {
    let s = bz(2, 4);
    let cx = CoefficientComplex::only_a(AbelianGroup::cyclic(2));
    let mut phi = CocycleSet::zeros(&s, &cx).unwrap();
    phi.theta.fill(&s, |x, _| vec![if s.level(3).point_labels[x] == "(1,1,1)" { 1.0 } else { 0.0 }]);
    assert!(check_cocycle3(&s, &cx, &phi).unwrap().passed());
    let g = two_group_from_cocycle(&s, &cx, phi, None).unwrap();
    assert!(g.verify().passed());
    let mut ones = Vec::new();
    s.for_each_tuple(3, 0, |w, t| {
        let a = g.associator(&Obj3 { w, iota: t[0], b: [vec![], vec![], vec![]] });
        if a.a[0] != 0.0 {
            ones.push((s.level(3).point_labels[w].clone(), a.a[0]));
        }
    });
    assert_eq!(ones, vec![("(1,1,1)".to_string(), 1.0)]);
}

fn heis(x: &[f64]) -> Matrix3<f64> {
    Matrix3::new(0.0, x[0], x[2], 0.0, 0.0, x[1], 0.0, 0.0, 0.0)
}

#[test]
fn heisenberg_chart_matches_matrix_exponential() {
    let m = LieModel::Heisenberg3;
    let pts = [[0.3, -1.2, 0.7], [1.5, 0.25, -0.4], [-0.8, 0.9, 2.0], [0.0, 0.0, 1.0]];
    for x in &pts {
        for y in &pts {
            let p = heis(x).exp() * heis(y).exp();
            let n = p - Matrix3::identity();
            let log = n - n * n * 0.5;
            let z = m.mul(&x.to_vec(), &y.to_vec());
            assert_abs_diff_eq!(log, heis(&z), epsilon = 1e-12);
        }
    }
}

#[test]
fn gauss_legendre_integrates_polynomials() {
    let nodes = gauss_legendre(4);
    let int = |k: i32| nodes.iter().map(|(x, w)| w * x.powi(k)).sum::<f64>();
    for k in 0..8 {
        assert_abs_diff_eq!(int(k), 1.0 / (k as f64 + 1.0), epsilon = 1e-14);
    }
    assert_abs_diff_eq!(nodes[0].0, 0.5 - 0.5 * (3.0 / 7.0 + 2.0 / 7.0 * 1.2f64.sqrt()).sqrt(), epsilon = 1e-14);
}
