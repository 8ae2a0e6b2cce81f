//! Acceptance suite: one test per criterion, each printing a single `criterion N: PASS|FAIL` line.
//!
//! Run with `cargo test -p hypercech-cli --test acceptance -- --nocapture`.

use std::collections::HashSet;
use std::path::Path;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hypercech::coeff::{AbelianGroup, CoefficientComplex};
use hypercech::cochain::{
    is_degenerate_coordinate, total_d3, CochainSet2, CocycleSet, Family, TriCochain,
};
use hypercech::cohomology::{cocycle_basis_mod_p, cohomology_bruteforce, d_matrix, CohomologyOptions, CoordinateBasis};
use hypercech::covers::{refine_from_level, Predicate, TrivialCover};
use hypercech::geometry::choice::{choice_coboundary, ChoiceChange, ChoicePair};
use hypercech::geometry::construct::{alpha_ij, alpha_ij_boundary, beta_boundary, cocycle_defect, f_tilde, ChainAlgebra};
use hypercech::geometry::report::{chart_ball_cover, differentiable_cocycle_report, lie_samples, CHECK_DEFECT, IDENTITIES};
use hypercech::geometry::synthetic::{emit_cocycle, synthetic_space, SynAlgebra};
use hypercech::geometry::{GeoAlgebra, LieAlgebraCocycle, LieModel};
use hypercech::group::{FiniteGroup, GroupModel, VectorGroup};
use hypercech::linalg::kernel_mod_p;
use hypercech::simplicial::Nerve;
use hypercech::space::FiniteCoveredSpace;
use hypercech::twogroup::crossed::crossed_module_groupoid;
use hypercech::twogroup::equivalence::equivalence_from_coboundary;
use hypercech::twogroup::extension::{
    central_extension_group, check_transgression, local_mult_coordinates, Cochain2, Membership,
};
use hypercech::twogroup::gamma::{two_group_from_cocycle, CoeffSamples, TwoGroup, CHECK_EQUATIONS};

fn verdict(n: usize, ok: bool, start: Instant, limit: Option<Duration>, detail: String) {
    let took = start.elapsed();
    let in_time = limit.map_or(true, |l| took <= l);
    let limit_text = limit.map_or(String::new(), |l| format!(" (limit {}s)", l.as_secs()));
    let pass = ok && in_time;
    println!("criterion {n}: {} {detail}; {:.2}s{limit_text}", if pass { "PASS" } else { "FAIL" }, took.as_secs_f64());
    assert!(ok, "criterion {n}: {detail}");
    assert!(in_time, "criterion {n} took {took:?}{limit_text}");
}

fn trivial(group: &FiniteGroup, max_level: usize) -> FiniteCoveredSpace {
    FiniteCoveredSpace::from_nerve(group, &TrivialCover, max_level).unwrap()
}

/// The cover of the nerve pulled back from two copies of the point.
fn two_index(group: &FiniteGroup, max_level: usize) -> FiniteCoveredSpace {
    let nerve = Arc::new(Nerve::new(group.clone()));
    let all = || -> Predicate<Vec<usize>> { Arc::new(|_: &Vec<usize>| true) };
    let c = refine_from_level(nerve, 0, vec![all(), all()], None).unwrap();
    FiniteCoveredSpace::from_nerve(group, &c, max_level).unwrap()
}

fn z_mod(n: u64) -> AbelianGroup {
    AbelianGroup::cyclic(n)
}

/// `[ℤ/n → ℤ/n]` with the identity.
fn identity_complex(n: u64) -> CoefficientComplex {
    CoefficientComplex::new(z_mod(n), z_mod(n), vec![vec![1.0]]).unwrap()
}

/// `[ℤ/n → ℤ/n]` with the zero map.
fn zero_map_complex(n: u64) -> CoefficientComplex {
    CoefficientComplex::new(z_mod(n), z_mod(n), vec![vec![0.0]]).unwrap()
}

/// Every coordinate `(shape, x, tuple, component)` of a family, in a fixed order.
fn coordinates(space: &FiniteCoveredSpace, f: &Family) -> Vec<((usize, usize, usize), usize, Vec<usize>, usize)> {
    let mut out = Vec::new();
    for (shape, c) in &f.comps {
        space.for_each_tuple(c.p, c.q, |x, t| {
            for k in 0..c.dim {
                out.push((*shape, x, t.to_vec(), k));
            }
        });
    }
    out
}

fn random_cochain(space: &FiniteCoveredSpace, cx: &CoefficientComplex, c: &mut TriCochain, rng: &mut ChaCha8Rng, normalized: bool) {
    let g = cx.group(c.r).clone();
    let dim = c.dim;
    let p = c.p;
    c.fill(space, |x, t| {
        if normalized && is_degenerate_coordinate(space, p, x, t) {
            return vec![0.0; dim];
        }
        let mut v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-5i64..=5) as f64).collect();
        g.reduce(&mut v);
        v
    });
}

#[test]
fn criterion_01_d3_squares_to_zero() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    // ℤ → ℤ² with μ = (2, −3), all arithmetic on small integers
    let cx = CoefficientComplex::new(AbelianGroup::integers(1), AbelianGroup::integers(2), vec![vec![2.0], vec![-3.0]]).unwrap();
    let cases = [
        (FiniteGroup::cyclic(2), 2, 4),
        (FiniteGroup::cyclic(2), 3, 5),
        (FiniteGroup::cyclic(4), 2, 4),
        (FiniteGroup::cyclic(4), 3, 5),
        (FiniteGroup::symmetric3(), 2, 4),
    ];
    let (mut checked, mut bad) = (0, 0);
    for (group, degree, level) in cases {
        let space = trivial(&group, level);
        for _ in 0..20 {
            let mut f = Family::zeros(&space, &cx, degree, 0);
            for c in f.comps.values_mut() {
                random_cochain(&space, &cx, c, &mut rng, false);
            }
            let dd = total_d3(&space, &cx, &total_d3(&space, &cx, &f).unwrap()).unwrap();
            let nonzero = dd.comps.values().any(|c| c.values.iter().any(|&v| v != 0.0));
            checked += 1;
            bad += usize::from(nonzero);
        }
    }
    verdict(1, bad == 0, start, Some(Duration::from_secs(10)), format!("D₃∘D₃ = 0 exactly on {checked} random families ({bad} nonzero)"));
}

/// Images under `D₃` of the unit vectors of a degree, as bit sets over the next degree.
fn unit_images(space: &FiniteCoveredSpace, cx: &CoefficientComplex, degree: usize) -> (usize, Vec<u128>) {
    let here = Family::zeros(space, cx, degree, 0);
    let next = coordinates(space, &Family::zeros(space, cx, degree + 1, 0));
    let coords = coordinates(space, &here);
    assert!(next.len() <= 128);
    let images = coords
        .iter()
        .map(|(shape, x, t, k)| {
            let mut f = here.clone();
            f.comps.get_mut(shape).unwrap().get_mut(*x, t)[*k] = 1.0;
            let d = total_d3(space, cx, &f).unwrap();
            next.iter().enumerate().fold(0u128, |acc, (bit, (s, y, u, c))| {
                let v = d.get(s.0, s.1, s.2).map_or(0.0, |c2| c2.get(*y, u)[*c]);
                if v.rem_euclid(2.0) != 0.0 {
                    acc | 1 << bit
                } else {
                    acc
                }
            })
        })
        .collect();
    (coords.len(), images)
}

fn span_size(images: &[u128]) -> usize {
    let mut seen = HashSet::new();
    for mask in 0u64..1 << images.len() {
        let v = images.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).fold(0u128, |a, (_, b)| a ^ b);
        seen.insert(v);
    }
    seen.len()
}

fn kernel_size(images: &[u128]) -> usize {
    (0u64..1 << images.len())
        .filter(|mask| images.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).fold(0u128, |a, (_, b)| a ^ b) == 0)
        .count()
}

#[test]
fn criterion_02_cohomology_oracle() {
    let group = FiniteGroup::cyclic(2);
    let space = trivial(&group, 4);
    let mut results = Vec::new();
    let mut ok = true;
    let start = Instant::now();
    for (name, cx) in [("[Z/2→0]", CoefficientComplex::only_a(z_mod(2))), ("[0→Z/2]", CoefficientComplex::only_b(z_mod(2)))] {
        let t = Instant::now();
        let h = cohomology_bruteforce(&space, &cx, 3, CohomologyOptions::default()).unwrap().to_string();
        // exhaustive enumeration over F₂: |Z³| / |B³|
        let (_, d3) = unit_images(&space, &cx, 3);
        let (_, d2) = unit_images(&space, &cx, 2);
        let z = kernel_size(&d3);
        let b = span_size(&d2);
        let quotient = z / b;
        let case_ok = h == "Z/2" && z % b == 0 && quotient == 2 && t.elapsed() < Duration::from_secs(60);
        ok &= case_ok;
        results.push(format!("H³(BZ/2,{name}) = {h}, exhaustive |Z|/|B| = {z}/{b} = {quotient} ({:.2}s)", t.elapsed().as_secs_f64()));
    }
    verdict(2, ok, start, Some(Duration::from_secs(120)), results.join("; "));
}

#[test]
fn criterion_03_normalization() {
    let start = Instant::now();
    let int_cx = CoefficientComplex::new(AbelianGroup::integers(1), AbelianGroup::integers(1), vec![vec![2.0]]).unwrap();
    let z2 = FiniteGroup::cyclic(2);
    let z3 = FiniteGroup::cyclic(3);
    let instances: Vec<(&str, FiniteCoveredSpace, CoefficientComplex, Vec<usize>)> = vec![
        ("Z/2 trivial [Z/2→0]", trivial(&z2, 4), CoefficientComplex::only_a(z_mod(2)), vec![1, 2, 3]),
        ("Z/2 trivial [0→Z/2]", trivial(&z2, 4), CoefficientComplex::only_b(z_mod(2)), vec![1, 2, 3]),
        ("Z/2 trivial [Z→Z]·2", trivial(&z2, 4), int_cx.clone(), vec![1, 2, 3]),
        ("Z/3 trivial [Z/3→Z/3]", trivial(&z3, 4), identity_complex(3), vec![1, 2, 3]),
        ("S3 trivial [Z/2→0]", trivial(&FiniteGroup::symmetric3(), 3), CoefficientComplex::only_a(z_mod(2)), vec![1, 2]),
        ("Z/2 two-index [Z/2→Z/2]", two_index(&z2, 3), identity_complex(2), vec![1, 2]),
        ("Z/2 two-index [Z→Z]·2", two_index(&z2, 3), int_cx, vec![1, 2]),
    ];
    let mut compared = 0;
    let mut mismatches = Vec::new();
    for (name, space, cx, degrees) in &instances {
        for &d in degrees {
            for min_level in [0, 1] {
                let o = |normalized| CohomologyOptions { normalized, min_level, force_integer: false };
                let u = cohomology_bruteforce(space, cx, d, o(false)).unwrap();
                let n = cohomology_bruteforce(space, cx, d, o(true)).unwrap();
                compared += 1;
                if u != n {
                    mismatches.push(format!("{name} H^{d} (p≥{min_level}): {u} vs {n}"));
                }
            }
        }
    }
    verdict(
        3,
        mismatches.is_empty(),
        start,
        None,
        format!("normalized = unnormalized invariants on {compared} (instance, degree, truncation) cases {mismatches:?}"),
    );
}

fn to_cocycle(space: &FiniteCoveredSpace, cx: &CoefficientComplex, basis: &CoordinateBasis, v: &[u64]) -> CocycleSet {
    let v: Vec<i128> = v.iter().map(|&x| x as i128).collect();
    CocycleSet::from_family(space, cx, &basis.to_family(space, cx, &v)).unwrap()
}

fn combine(vs: &[Vec<u64>], pick: &[usize], p: u64) -> Vec<u64> {
    let mut out = vec![0; vs[0].len()];
    for &k in pick {
        for (o, x) in out.iter_mut().zip(&vs[k]) {
            *o = (*o + x) % p;
        }
    }
    out
}

#[test]
fn criterion_04_two_group_soundness() {
    let start = Instant::now();
    let group = FiniteGroup::cyclic(2);
    let mut built = 0;
    let mut all_trivial = 0;
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let two = two_index(&group, 4);
    for (name, cx) in [("μ=0", zero_map_complex(2)), ("μ=id", identity_complex(2))] {
        // every normalized cocycle on the trivial cover
        let space = trivial(&group, 4);
        let (basis, ker) = cocycle_basis_mod_p(&space, &cx, 3, 1, true, 2).unwrap();
        for mask in 0u32..1 << ker.len() {
            let pick: Vec<usize> = (0..ker.len()).filter(|k| mask >> k & 1 == 1).collect();
            let v = if ker.is_empty() { vec![0; basis.len()] } else { combine(&ker, &pick, 2) };
            let r = two_group_from_cocycle(&space, &cx, to_cocycle(&space, &cx, &basis, &v), None).unwrap().verify();
            built += 1;
            all_trivial += 1;
            if !r.passed() {
                failures.push(format!("{name} trivial cover mask {mask}: {:?}", r.failing()));
            }
        }

        // two-index cover: a basis of the cocycles plus random sums
        let (basis, ker) = cocycle_basis_mod_p(&two, &cx, 3, 1, true, 2).unwrap();
        let mut picks: Vec<Vec<usize>> = (0..ker.len()).map(|k| vec![k]).collect();
        for _ in 0..8 {
            picks.push((0..ker.len()).filter(|_| rng.gen_bool(0.5)).collect());
        }
        for pick in &picks {
            let phi = to_cocycle(&two, &cx, &basis, &combine(&ker, pick, 2));
            let r = two_group_from_cocycle(&two, &cx, phi, None).unwrap().verify();
            built += 1;
            if !r.passed() {
                failures.push(format!("{name} two-index cocycle {pick:?}: {:?}", r.failing()));
            }
        }
    }

    // with μ = id, μ∘(defect) must vanish, so faults are injected over μ = 0
    let space = two;
    let cx = zero_map_complex(2);
    let (basis, ker) = cocycle_basis_mod_p(&space, &cx, 3, 1, true, 2).unwrap();
    let pick: Vec<usize> = (0..ker.len()).filter(|_| rng.gen_bool(0.5)).collect();
    let phi0 = to_cocycle(&space, &cx, &basis, &combine(&ker, &pick, 2));

    // fault injection: ε with D₃ε supported on exactly one component, normalized when possible
    let systems: Vec<(bool, CoordinateBasis, Vec<Vec<u64>>)> = [true, false]
        .into_iter()
        .map(|normalized| {
            let here = CoordinateBasis::new(&space, &cx, 3, 1, normalized).unwrap();
            let next = CoordinateBasis::new(&space, &cx, 4, 1, normalized).unwrap();
            let d = d_matrix(&space, &cx, &here, &next).unwrap();
            let du: Vec<Vec<u64>> = d.iter().map(|r| r.iter().map(|&x| x.rem_euclid(2) as u64).collect()).collect();
            let shapes = next.coords.iter().map(|c| (c.p, c.q, c.r)).collect::<Vec<_>>();
            (normalized, here, du.into_iter().zip(shapes).map(|(mut r, s)| {
                r.extend([s.0 as u64, s.1 as u64, s.2 as u64]);
                r
            }).collect())
        })
        .collect();
    let isolated = |shape: (usize, usize, usize)| {
        systems.iter().find_map(|(normalized, here, rows)| {
            let n = here.len();
            let in_target = |r: &Vec<u64>| (r[n] as usize, r[n + 1] as usize, r[n + 2] as usize) == shape;
            let others: Vec<Vec<u64>> = rows.iter().filter(|r| !in_target(r)).map(|r| r[..n].to_vec()).collect();
            let hits = |v: &[u64]| rows.iter().filter(|r| in_target(r)).any(|r| r[..n].iter().zip(v).map(|(a, b)| a * b).sum::<u64>() % 2 == 1);
            let eps = kernel_mod_p(&others, n, 2).into_iter().find(|v| hits(v))?;
            Some((*normalized, to_cocycle(&space, &cx, here, &eps)))
        })
    };
    let targets = [(2, 2, 0), (2, 1, 1), (3, 1, 0), (4, 0, 0)];
    let check_of = |shape| CHECK_EQUATIONS.iter().find(|(_, s)| *s == shape).unwrap().0;
    let checks: Vec<&str> = targets.iter().map(|&s| check_of(s)).collect();
    let mut matrix = [[false; 4]; 4];
    let mut missing = Vec::new();
    let mut unnormalized = Vec::new();
    for (row, &shape) in targets.iter().enumerate() {
        let Some((normalized, eps)) = isolated(shape) else {
            missing.push(format!("{shape:?}"));
            continue;
        };
        if !normalized {
            unnormalized.push(format!("{shape:?}"));
        }
        let faulty = phi0.add(&eps, 1.0, &cx);
        let r = TwoGroup::new_unchecked(&space, &cx, faulty, None).unwrap().verify();
        let failing = r.failing();
        for (col, name) in checks.iter().enumerate() {
            matrix[row][col] = failing.contains(name);
        }
        let endpoints = check_of((3, 0, 1));
        if failing.contains(&endpoints) {
            failures.push(format!("fault in {shape:?} also broke {endpoints}"));
        }
    }
    let diagonal = (0..4).all(|r| (0..4).all(|c| matrix[r][c] == (r == c)));
    let rows: Vec<String> = matrix.iter().map(|r| r.iter().map(|&b| if b { '1' } else { '0' }).collect()).collect();
    verdict(
        4,
        failures.is_empty() && missing.is_empty() && diagonal,
        start,
        None,
        format!(
            "{built} cocycles built and verified ({all_trivial} = all on the trivial cover); confusion matrix rows (2,2,0),(2,1,1),(3,1,0),(4,0,0) = [{}]{}{}{}",
            rows.join(" "),
            if missing.is_empty() { String::new() } else { format!("; no isolated fault for {missing:?}") },
            if unnormalized.is_empty() { String::new() } else { format!("; unnormalized fault for {unnormalized:?}") },
            if failures.is_empty() { String::new() } else { format!("; {failures:?}") },
        ),
    );
}

fn random_psi(space: &FiniteCoveredSpace, cx: &CoefficientComplex, rng: &mut ChaCha8Rng) -> CochainSet2 {
    let mut psi = CochainSet2::zeros(space, cx).unwrap();
    for c in psi.components_mut() {
        random_cochain(space, cx, c, rng, true);
    }
    psi
}

/// `φ′ = φ − D₃ψ`.
fn minus_d3(space: &FiniteCoveredSpace, cx: &CoefficientComplex, phi: &CocycleSet, psi: &CochainSet2) -> CocycleSet {
    let d = CocycleSet::from_family(space, cx, &total_d3(space, cx, &psi.to_family()).unwrap()).unwrap();
    phi.add(&d, -1.0, cx)
}

#[test]
fn criterion_05_equivalences() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut passed = 0;
    let mut failures = Vec::new();
    let instances = [
        (trivial(&FiniteGroup::cyclic(3), 4), identity_complex(3), 3u64),
        (two_index(&FiniteGroup::cyclic(2), 4), identity_complex(2), 2u64),
    ];
    for (n, (space, cx, p)) in instances.iter().enumerate() {
        let (basis, ker) = cocycle_basis_mod_p(space, cx, 3, 1, true, *p).unwrap();
        for _ in 0..10 {
            let coeffs: Vec<u64> = ker.iter().map(|_| rng.gen_range(0..*p)).collect();
            let v: Vec<u64> = (0..basis.len()).map(|k| ker.iter().zip(&coeffs).map(|(b, c)| b[k] * c).sum::<u64>() % p).collect();
            let phi = to_cocycle(space, cx, &basis, &v);
            let psi = random_psi(space, cx, &mut rng);
            let phi2 = minus_d3(space, cx, &phi, &psi);
            let g = two_group_from_cocycle(space, cx, phi, None).unwrap();
            let g2 = two_group_from_cocycle(space, cx, phi2, None).unwrap();
            match equivalence_from_coboundary(&g, &g2, psi) {
                Ok(e) => {
                    let r = e.verify();
                    if r.passed() {
                        passed += 1;
                    } else {
                        failures.push(format!("instance {n}: {:?}", r.failing()));
                    }
                }
                Err(e) => failures.push(format!("instance {n}: {e}")),
            }
        }
    }

    // (0, Θ = ghk) on BZ/2 with [Z/2→0]: no ψ at all, normalized or not
    let space = trivial(&FiniteGroup::cyclic(2), 4);
    let cx = CoefficientComplex::only_a(z_mod(2));
    let zero = CocycleSet::zeros(&space, &cx).unwrap();
    let mut theta = zero.clone();
    theta.theta.fill(&space, |x, _| {
        let g = &space.level(3).point_labels[x];
        vec![if g == "(1,1,1)" { 1.0 } else { 0.0 }]
    });
    let psi0 = CochainSet2::zeros(&space, &cx).unwrap();
    let slots = coordinates(&space, &psi0.to_family());
    let mut found = 0;
    for mask in 0u32..1 << slots.len() {
        let mut psi = psi0.clone();
        for (k, (shape, x, t, c)) in slots.iter().enumerate() {
            if mask >> k & 1 == 1 {
                let comp = psi.components_mut().into_iter().find(|d| d.shape() == *shape).unwrap();
                comp.get_mut(*x, t)[*c] = 1.0;
            }
        }
        let candidate = minus_d3(&space, &cx, &zero, &psi);
        if candidate == theta {
            found += 1;
        }
    }
    let searched = 1u32 << slots.len();
    let ok = failures.is_empty() && passed == 20 && found == 0;
    verdict(
        5,
        ok,
        start,
        None,
        format!("{passed}/20 random coboundary equivalences verified; exhaustive search over {searched} ψ for (0, ghk) found {found} {failures:?}"),
    );
}

fn plane() -> GeoAlgebra {
    GeoAlgebra::new(LieModel::Abelian(2), LieAlgebraCocycle::area_form(2)).unwrap()
}

fn heisenberg() -> GeoAlgebra {
    GeoAlgebra::new(LieModel::Heisenberg3, LieAlgebraCocycle::area_form(3)).unwrap()
}

fn point(rng: &mut ChaCha8Rng, n: usize, r: f64) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-r..=r)).collect()
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

#[test]
fn criterion_06_plane_identities() {
    let start = Instant::now();
    let a = plane();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut f_err, mut defect, mut beta_res, mut alpha_res) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let mut open = 0;
    for _ in 0..100 {
        let (g, h, k) = (point(&mut rng, 2, 2.0), point(&mut rng, 2, 2.0), point(&mut rng, 2, 2.0));
        let analytic = 0.5 * (g[0] * h[1] - g[1] * h[0]);
        f_err = f_err.max((f_tilde(&a, &g, &h)[0] - analytic).abs());
        defect = defect.max(max_abs(&cocycle_defect(&a, &g, &h, &k)));
        let b = a.boundary_check(&a.beta(&g, &h), &beta_boundary(&a, &g, &h));
        beta_res = beta_res.max(b.residual);
        let (i, j) = (point(&mut rng, 2, 0.3), point(&mut rng, 2, 0.3));
        let m = a.boundary_check(&alpha_ij(&a, &i, &j, &g, &h), &alpha_ij_boundary(&a, &i, &j, &g, &h));
        alpha_res = alpha_res.max(m.residual);
        open += usize::from(!b.closed) + usize::from(!m.closed);
    }
    let ok = f_err < 1e-8 && defect < 1e-8 && beta_res < 1e-10 && alpha_res < 1e-10 && open == 0;
    verdict(
        6,
        ok,
        start,
        Some(Duration::from_secs(30)),
        format!(
            "ℝ²: |F̃ − ½ω| ≤ {f_err:.1e}, defect ≤ {defect:.1e} on 100 triples, ∂β̃ residual {beta_res:.1e}, ∂α_ij residual {alpha_res:.1e}, {open} unmatched boundaries"
        ),
    );
}

#[test]
fn criterion_07_heisenberg_identities() {
    let start = Instant::now();
    let a = heisenberg();
    let cover = chart_ball_cover(&LieModel::Heisenberg3, 0.5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let samples = lie_samples(&cover, 20, &mut rng, 1.0, 0.05).unwrap();
    let r = differentiable_cocycle_report(&a, &samples, 1e-6);
    let mut worst = Vec::new();
    let mut ok = r.passed();
    for name in IDENTITIES.iter().chain([&CHECK_DEFECT]) {
        match r.get(name) {
            Some(e) => {
                ok &= e.passed();
                worst.push(format!("{:.1e}", e.max_residual));
            }
            None => {
                ok = false;
                worst.push("missing".into());
            }
        }
    }
    verdict(
        7,
        ok,
        start,
        Some(Duration::from_secs(300)),
        format!("Heisenberg, 20 samples: identity and defect residuals [{}], failing {:?}", worst.join(", "), r.failing()),
    );
}

#[test]
fn criterion_08_choice_independence() {
    let start = Instant::now();
    let a = heisenberg();
    let cover = chart_ball_cover(&LieModel::Heisenberg3, 0.5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let samples = lie_samples(&cover, 5, &mut rng, 1.0, 0.05).unwrap();
    let mut parts = Vec::new();
    let mut ok = true;
    for (name, change) in [("reparametrized paths", ChoiceChange::Paths), ("ω + b∘[·,·]", ChoiceChange::Cocycle { b: vec![vec![0.0, 0.0, 0.5]] })] {
        let pair = ChoicePair::new(&a, change).unwrap();
        let r = choice_coboundary(&pair, &samples, 1e-6);
        ok &= r.passed();
        parts.push(format!("{name}: max residual {:.1e}, failing {:?}", r.max_residual(), r.failing()));
    }
    verdict(8, ok, start, None, parts.join("; "));
}

#[test]
fn criterion_09_non_discrete_periods() {
    let start = Instant::now();
    let sqrt2 = std::f64::consts::SQRT_2;
    let cx = CoefficientComplex::new(AbelianGroup::integers(2), AbelianGroup::real(1), vec![vec![1.0, sqrt2]]).unwrap();
    let s = CoeffSamples::default_for(&cx);
    let cm = crossed_module_groupoid(cx);
    let arrows: Vec<_> = s.a.iter().flat_map(|a| s.b.iter().map(|b| cm.arrow(a.clone(), b.clone()))).collect();
    let crossed = cm.verify(&arrows);

    let group = FiniteGroup::cyclic(3);
    let alg = SynAlgebra::random(group.clone(), vec![vec![1.0, sqrt2]], 2, 3).unwrap();
    let space = synthetic_space(&group, &[0, 1, 2]).unwrap();
    let cx = alg.complex();
    let phi = emit_cocycle(&alg, &space).unwrap();
    let built = two_group_from_cocycle(&space.space, &cx, phi, None).map(|g| g.verify());

    let dir = std::env::temp_dir().join(format!("hypercech-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let emitted = dir.join("emitted.json");
    let scenario = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios/synthetic_sqrt2.json");
    let bin = env!("CARGO_BIN_EXE_hypercech");
    let integrate = Command::new(bin).args(["integrate", scenario.to_str().unwrap(), "--out", emitted.to_str().unwrap()]).output().unwrap();
    let check = Command::new(bin).args(["check-complex", emitted.to_str().unwrap()]).output().unwrap();
    std::fs::remove_dir_all(&dir).ok();

    let built_ok = matches!(&built, Ok(r) if r.passed());
    let ok = crossed.passed() && built_ok && integrate.status.success() && check.status.success();
    verdict(
        9,
        ok,
        start,
        None,
        format!(
            "[Z²→R] with μ=(1,√2): crossed module {} on {} arrows, cocycle-built 2-group over Z/3 {}, integrate → check-complex exit codes {:?}/{:?}",
            if crossed.passed() { "passes" } else { "fails" },
            arrows.len(),
            match &built {
                Ok(r) if r.passed() => "passes".to_string(),
                Ok(r) => format!("fails {:?}", r.failing()),
                Err(e) => format!("rejected: {e}"),
            },
            integrate.status.code(),
            check.status.code(),
        ),
    );
}

/// Candidates `½ω + 𝚍c` (cocycles) and `½ω + ε·q` with `𝚍q ≠ 0`.
fn candidate(rng: &mut ChaCha8Rng) -> (Cochain2<Vec<f64>>, bool) {
    let half = |g: &Vec<f64>, h: &Vec<f64>| 0.5 * (g[0] * h[1] - g[1] * h[0]);
    let (a, b, c) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    let eps = rng.gen_range(0.1..1.0);
    match rng.gen_range(0..4) {
        0 => {
            let f = move |g: &Vec<f64>| a * g[0] * g[0] + b * g[0] * g[1] + c * g[1].sin();
            (Arc::new(move |g: &Vec<f64>, h: &Vec<f64>| {
                let gh = vec![g[0] + h[0], g[1] + h[1]];
                vec![half(g, h) + f(h) - f(&gh) + f(g)]
            }), true)
        }
        1 => (Arc::new(move |g: &Vec<f64>, h: &Vec<f64>| vec![half(g, h) + a * g[0] * h[1] + b * g[1] * h[1]]), true),
        2 => (Arc::new(move |g: &Vec<f64>, h: &Vec<f64>| vec![half(g, h) + eps * g[0] * h[1] * h[1]]), false),
        _ => (Arc::new(move |g: &Vec<f64>, h: &Vec<f64>| vec![half(g, h) + eps * g[0].sin() * h[1]]), false),
    }
}

#[test]
fn criterion_10_central_extensions() {
    let start = Instant::now();
    let g = VectorGroup::new(2);
    let grid: Vec<Vec<f64>> = vec![vec![0.0, 0.0], vec![1.0, -0.5], vec![0.25, 2.0], vec![-1.5, 0.75], vec![0.6, 0.4]];
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (mut agree, mut cocycles) = (0, 0);
    for _ in 0..50 {
        let (f, is_cocycle) = candidate(&mut rng);
        let accepted = central_extension_group(f, AbelianGroup::real(1), g.clone(), &grid).is_ok();
        agree += usize::from(accepted == is_cocycle);
        cocycles += usize::from(is_cocycle);
    }

    let f: Cochain2<Vec<f64>> = Arc::new(|g: &Vec<f64>, h: &Vec<f64>| vec![0.5 * (g[0] * h[1] - g[1] * h[0])]);
    let v: Membership<Vec<f64>> = Arc::new(|i: &Vec<f64>, x: &Vec<f64>| (x[0] - i[0]).abs() < 1.0 && (x[1] - i[1]).abs() < 1.0);
    let indices: Vec<Vec<f64>> = vec![vec![0.0, 0.0], vec![0.5, 0.0], vec![0.0, 0.5], vec![-0.4, 0.3]];
    let points: Vec<Vec<f64>> = (0..30).map(|_| point(&mut rng, 2, 0.5)).collect();
    let trans = check_transgression(&g, &AbelianGroup::real(1), &f, &v, &indices, &points);
    let triples = trans.get("δ̌(τf) = 0").map_or(0, |e| e.checked);

    // s_i(x) = (0,i)(0,i⁻¹x); s_i(x)s_j(y) = (f_ij(x,y), 1)·s_ij(xy)
    let ext = central_extension_group(f.clone(), AbelianGroup::real(1), g.clone(), &grid).unwrap();
    let section = |i: &Vec<f64>, x: &Vec<f64>| ext.mul(&(vec![0.0], i.clone()), &(vec![0.0], g.mul(&g.inv(i), x)));
    let mut mult_err = 0.0f64;
    let mut evaluated = 0;
    for i in &indices {
        for j in &indices {
            for x in &points {
                for y in &points {
                    if let Ok(c) = local_mult_coordinates(&g, &f, &v, i, j, x, y) {
                        let lhs = ext.mul(&section(i, x), &section(j, y));
                        let rhs = section(&g.mul(i, j), &g.mul(x, y));
                        mult_err = mult_err.max((lhs.0[0] - rhs.0[0] - c[0]).abs());
                        evaluated += 1;
                    }
                }
            }
        }
    }
    let ok = agree == 50 && trans.passed() && triples > 0 && evaluated > 0 && mult_err < 1e-10;
    verdict(
        10,
        ok,
        start,
        None,
        format!(
            "{agree}/50 candidates classified correctly ({cocycles} cocycles); δ̌(τf) = 0 on {triples} samples; local multiplication vs direct product ≤ {mult_err:.1e} at {evaluated} points"
        ),
    );
}
