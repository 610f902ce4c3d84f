mod common;

use hdx_core::random::{stream_rng, StreamRng};
use hdx_core::spectral::{
    check_cheeger_buser, cheeger_constant, garland_check, harmonic_dimension, hodge_decompose,
    lift_decay_profile, ramanujan_certify, real_betti, solve_p, sorted_eigenvalues, spectral_gap,
    Graph, OperatorBundle, RealCochain, EIGEN_TOL,
};
use hdx_core::SimplicialComplex;
use nalgebra::{DMatrix, DVector, SymmetricEigen};
use proptest::prelude::*;
use rand::Rng;

fn random_vector(rng: &mut StreamRng, len: usize) -> DVector<f64> {
    DVector::from_fn(len, |_, _| rng.gen_range(-1.0..1.0))
}

fn close(a: f64, b: f64, scale: f64) -> bool {
    (a - b).abs() <= 1e-9 * scale.max(1.0)
}

#[test]
fn coboundary_adjoint_under_weighted_inner_product() {
    let mut rng = stream_rng(11, &[]);
    for (name, x) in common::suite() {
        let ops = OperatorBundle::assemble(&x).unwrap();
        for i in 0..x.dim() as isize {
            for _ in 0..3 {
                let f = random_vector(&mut rng, ops.cells(i));
                let g = random_vector(&mut rng, ops.cells(i + 1));
                let lhs = ops.inner(i + 1, &(ops.delta(i) * &f), &g);
                let rhs = ops.inner(i, &f, &(ops.delta_adjoint(i) * &g));
                assert!(
                    close(lhs, rhs, lhs.abs()),
                    "{name}: ⟨δf,g⟩ = {lhs}, ⟨f,δ*g⟩ = {rhs}"
                );
            }
        }
    }
}

#[test]
fn laplacians_are_self_adjoint_and_nonnegative() {
    let mut rng = stream_rng(12, &[]);
    for (name, x) in common::suite() {
        let ops = OperatorBundle::assemble(&x).unwrap();
        for i in 0..=x.dim() as isize {
            let ops_i = [
                ops.up(i).unwrap(),
                ops.down(i).unwrap(),
                ops.laplacian(i).unwrap(),
            ];
            for l in &ops_i {
                let f = random_vector(&mut rng, ops.cells(i));
                let g = random_vector(&mut rng, ops.cells(i));
                let lhs = ops.inner(i, &(l * &f), &g);
                let rhs = ops.inner(i, &f, &(l * &g));
                assert!(close(lhs, rhs, lhs.abs()), "{name} degree {i}");
                assert!(ops.inner(i, &(l * &f), &f) >= -1e-9, "{name} degree {i}");
            }
            let spec = sorted_eigenvalues(&ops.symmetric_laplacian(i));
            assert!(spec[0] >= -EIGEN_TOL, "{name} degree {i}: {}", spec[0]);
        }
    }
}

#[test]
fn harmonic_dimension_is_real_betti_number() {
    for (name, x) in common::suite() {
        let want = common::betti_rational(&x);
        assert_eq!(real_betti(&x), want, "{name}");
        for i in 0..=x.dim() as isize {
            assert_eq!(
                harmonic_dimension(&x, i).unwrap(),
                want[i as usize],
                "{name} degree {i}"
            );
        }
    }
}

#[test]
fn gap_positive_iff_real_cohomology_vanishes() {
    for (name, x) in common::suite() {
        let betti = common::betti_rational(&x);
        for i in 0..x.dim() as isize {
            let gap = spectral_gap(&x, i).unwrap();
            assert_eq!(
                gap > EIGEN_TOL,
                betti[i as usize] == 0,
                "{name} degree {i}: λ = {gap}"
            );
        }
    }
}

#[test]
fn surfaces_have_their_known_cohomology() {
    assert_eq!(real_betti(&common::torus()), vec![0, 2, 1]);
    // F2 sees the twist, R does not
    assert_eq!(real_betti(&common::projective_plane()), vec![0, 0, 0]);
    assert!(spectral_gap(&common::projective_plane(), 1).unwrap() > 0.0);
    assert_eq!(real_betti(&common::tetrahedron_boundary()), vec![0, 0, 1]);
}

#[test]
fn complete_two_complex_gaps() {
    for n in 4..=8usize {
        let x = SimplicialComplex::complete(n, 2).unwrap();
        let nf = n as f64;
        assert!(
            close(spectral_gap(&x, 0).unwrap(), 2.0 * nf / (nf - 1.0), 1.0),
            "n = {n}"
        );
        assert!(
            close(spectral_gap(&x, 1).unwrap(), nf / (nf - 2.0), 1.0),
            "n = {n}"
        );
    }
}

#[test]
fn garland_bound_on_suite() {
    for (name, x) in common::suite() {
        if x.dim() < 2 {
            continue;
        }
        let r = garland_check(&x).unwrap();
        assert!(r.holds, "{name}: {r:?}");
    }
    for n in 4..=8 {
        let r = garland_check(&SimplicialComplex::complete(n, 2).unwrap()).unwrap();
        assert!(close(r.lambda_top, r.bound, 1.0), "n = {n}: {r:?}");
    }
}

fn adjacency(g: &Graph) -> DMatrix<f64> {
    let mut a = DMatrix::zeros(g.n(), g.n());
    for (u, v) in g.edges() {
        a[(u, v)] = 1.0;
        a[(v, u)] = 1.0;
    }
    a
}

#[test]
fn regular_graph_invariants() {
    for (n, k, g) in common::small_regular_graphs(7) {
        let x = g.to_complex().unwrap();
        let mut eig: Vec<f64> = SymmetricEigen::new(adjacency(&g))
            .eigenvalues
            .iter()
            .copied()
            .collect();
        eig.sort_by(|a, b| b.total_cmp(a));
        let kf = k as f64;
        assert!(close(eig[0], kf, kf));
        // λ^(0) of the graph is 1 - λ2(A)/k
        let gap = spectral_gap(&x, 0).unwrap();
        assert!(close(gap, 1.0 - eig[1] / kf, 1.0), "n={n} k={k}");
        assert_eq!(cheeger_constant(&g).unwrap(), common::brute_cheeger(&g));
        let cb = check_cheeger_buser(&g).unwrap();
        assert!(cb.holds, "{cb:?}");
        assert!(close(cb.lambda1, gap, 1.0));

        let bipartite = eig.last().is_some_and(|&v| close(v, -kf, kf));
        let end = if bipartite { eig.len() - 1 } else { eig.len() };
        let mu = eig[1..end].iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let v = ramanujan_certify(&g).unwrap();
        assert_eq!(v.bipartite, bipartite);
        assert!(close(v.mu, mu, kf));
        if (mu - v.bound).abs() > 1e-6 {
            assert_eq!(v.ramanujan, mu < v.bound, "n={n} k={k} μ={mu}");
        }
    }
}

#[test]
fn hodge_decomposition_of_random_cochains() {
    let mut rng = stream_rng(13, &[]);
    for (name, x) in common::suite() {
        let betti = common::betti_rational(&x);
        let ops = OperatorBundle::assemble(&x).unwrap();
        for i in 0..=x.dim() as isize {
            let f = RealCochain::new(
                i,
                random_vector(&mut rng, ops.cells(i))
                    .iter()
                    .copied()
                    .collect(),
            );
            let h = hodge_decompose(&x, &f).unwrap();
            let r = h.residuals;
            assert!(
                r.reconstruction <= 1e-9 && r.orthogonality <= 1e-9 && r.harmonicity <= 1e-9,
                "{name} {i}: {r:?}"
            );
            let fnorm = ops.inner(i, &f.values, &f.values).sqrt();
            let harmonic_norm = ops.inner(i, &h.harmonic.values, &h.harmonic.values).sqrt();
            assert_eq!(
                harmonic_norm > 1e-6 * fnorm,
                betti[i as usize] > 0,
                "{name} degree {i}: ‖h‖ = {harmonic_norm}"
            );
            if i > 0 {
                let b = ops.delta(i - 1) * &h.coboundary_preimage;
                assert!((b - &h.coboundary.values).norm() <= 1e-9);
            }
        }
    }
}

/// Unit eigenvector of the adjacency matrix for the eigenvalue nearest `lambda`.
fn eigenvector(g: &Graph, lambda: f64) -> (f64, Vec<f64>) {
    let e = SymmetricEigen::new(adjacency(g));
    let j = (0..g.n())
        .min_by(|&a, &b| {
            (e.eigenvalues[a] - lambda)
                .abs()
                .total_cmp(&(e.eigenvalues[b] - lambda).abs())
        })
        .unwrap();
    (
        e.eigenvalues[j],
        e.eigenvectors.column(j).iter().copied().collect(),
    )
}

#[test]
fn lifted_averages_follow_the_radial_recurrence() {
    let cases = [
        (Graph::heawood(), 2f64.sqrt()),
        (Graph::heawood(), -(2f64.sqrt())),
        (Graph::petersen(), 1.0),
        (Graph::petersen(), -2.0),
        (Graph::complete(4), -1.0),
    ];
    for (g, target) in cases {
        let (lambda, f) = eigenvector(&g, target);
        let q = (g.regular_degree().unwrap() - 1) as f64;
        for base in [0, 3] {
            let r = lift_decay_profile(&g, &f, base, 8).unwrap();
            let want = common::radial_recurrence(lambda, q, f[base], 8);
            for (a, b) in r.averages.iter().zip(&want) {
                assert!((a - b).abs() <= 1e-9, "λ={lambda} base={base}: {a} vs {b}");
            }
        }
    }
}

proptest! {
    #[test]
    fn solve_p_is_monotone_and_inverts(q in 1.5f64..50.0, a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let lo = 2.0 * q.sqrt();
        let hi = q + 1.0;
        let (a, b) = (a.min(b), a.max(b));
        let (la, lb) = (lo + a * (hi - lo), lo + b * (hi - lo));
        let (pa, pb) = (solve_p(la, q).unwrap(), solve_p(lb, q).unwrap());
        prop_assert!(pa >= 2.0 && pa <= pb);
        if pa.is_finite() && pa > 2.0 {
            let back = q.powf(1.0 / pa) + q.powf(1.0 - 1.0 / pa);
            prop_assert!((back - la).abs() <= 1e-9 * hi);
        }
    }

    #[test]
    fn solve_p_rejects_outside_the_interval(q in 1.5f64..50.0, eps in 1e-6f64..1.0) {
        prop_assert!(solve_p(2.0 * q.sqrt() - eps, q).is_err());
        prop_assert!(solve_p(q + 1.0 + eps, q).is_err());
    }
}
