//! Oracles and fixtures shared by the integration tests and the acceptance run.
//! Everything here is written independently of the library's algorithms.
#![allow(dead_code)]

use hdx_core::random::{generate, Model, ModelSpec};
use hdx_core::spectral::Graph;
use hdx_core::{Rational, SimplicialComplex};

/// Every connected k-regular graph on n vertices, up to relabeling: vertex 0 is adjacent to
/// 1..=k and the remaining edges are chosen by backtracking in lexicographic order.
pub fn regular_graphs(n: usize, k: usize) -> Vec<Graph> {
    if k == 0 || k >= n || (n * k) % 2 == 1 {
        return Vec::new();
    }
    let pairs: Vec<(usize, usize)> = (1..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let mut deg = vec![0usize; n];
    let mut chosen: Vec<(usize, usize)> = (1..=k).map(|v| (0, v)).collect();
    deg[0] = k;
    deg[1..=k].fill(1);
    let mut out = Vec::new();
    extend(n, k, &pairs, 0, &mut deg, &mut chosen, &mut out);
    out
}

fn extend(
    n: usize,
    k: usize,
    pairs: &[(usize, usize)],
    at: usize,
    deg: &mut Vec<usize>,
    chosen: &mut Vec<(usize, usize)>,
    out: &mut Vec<Graph>,
) {
    if deg.iter().all(|&d| d == k) {
        let g = Graph::new(n, chosen).unwrap();
        if g.is_connected() {
            out.push(g);
        }
        return;
    }
    if at == pairs.len() {
        return;
    }
    let (a, b) = pairs[at];
    // every pair involving a is behind us once we move past the last (a, n-1)
    if b == n - 1 && deg[a] + 1 < k {
        return;
    }
    if deg[a] < k && deg[b] < k {
        deg[a] += 1;
        deg[b] += 1;
        chosen.push((a, b));
        extend(n, k, pairs, at + 1, deg, chosen, out);
        chosen.pop();
        deg[a] -= 1;
        deg[b] -= 1;
    }
    if !(b == n - 1 && deg[a] < k) {
        extend(n, k, pairs, at + 1, deg, chosen, out);
    }
}

/// All connected regular graphs with 2..=max_n vertices (any degree).
pub fn small_regular_graphs(max_n: usize) -> Vec<(usize, usize, Graph)> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        for k in 1..n {
            for g in regular_graphs(n, k) {
                out.push((n, k, g));
            }
        }
    }
    out
}

fn edges_of(g: &Graph) -> Vec<(usize, usize)> {
    g.edges()
}

/// h(G) by direct enumeration of all vertex subsets.
pub fn brute_cheeger(g: &Graph) -> Rational {
    let n = g.n();
    let edges = edges_of(g);
    let mut best: Option<Rational> = None;
    for mask in 1u32..(1u32 << n) - 1 {
        let a = mask.count_ones() as i64;
        let cut = edges
            .iter()
            .filter(|&&(u, v)| ((mask >> u) & 1) != ((mask >> v) & 1))
            .count() as i64;
        let r = Rational::new(cut, a.min(n as i64 - a));
        best = Some(best.map_or(r, |b| b.min(r)));
    }
    best.unwrap()
}

/// 𝒽_0 of a graph from the definition: min over vertex sets f not in {∅, V} of
/// ‖δf‖ / min(‖f‖, ‖f + 1‖), with w(v) = deg(v)/2|E| and w(e) = 1/|E|.
pub fn brute_h0(g: &Graph) -> Rational {
    let n = g.n();
    let edges = edges_of(g);
    let m = edges.len() as i64;
    let deg: Vec<i64> = (0..n).map(|v| g.neighbors(v).len() as i64).collect();
    let mut best: Option<Rational> = None;
    for mask in 1u32..(1u32 << n) - 1 {
        let cut = edges
            .iter()
            .filter(|&&(u, v)| ((mask >> u) & 1) != ((mask >> v) & 1))
            .count() as i64;
        let inside: i64 = (0..n)
            .filter(|&v| (mask >> v) & 1 == 1)
            .map(|v| deg[v])
            .sum();
        let outside = 2 * m - inside;
        let num = Rational::new(cut, m);
        let den = Rational::new(inside.min(outside), 2 * m);
        let r = num / den;
        best = Some(best.map_or(r, |b| b.min(r)));
    }
    best.unwrap()
}

/// Rank over Z/p of an integer matrix given by rows.
pub fn rank_mod_p(rows: &[Vec<i64>]) -> usize {
    const P: i64 = 2_147_483_647;
    let mut m: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| v.rem_euclid(P)).collect())
        .collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = pow_mod(m[rank][c], P - 2, P);
        for v in m[rank].iter_mut() {
            *v = *v * inv % P;
        }
        let pivot = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (v, p) in row.iter_mut().zip(&pivot) {
                    *v = (*v - f * p).rem_euclid(P);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: i64, mut e: i64, p: i64) -> i64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Signed coboundary δ_i built from the faces directly: rows are (i+1)-cells.
pub fn integer_coboundary(x: &SimplicialComplex, i: isize) -> Vec<Vec<i64>> {
    let lower = x.faces(i);
    x.faces(i + 1)
        .iter()
        .map(|f| {
            lower
                .iter()
                .map(|g| {
                    if !g.is_subface_of(f) {
                        return 0;
                    }
                    let missing = f
                        .vertices()
                        .iter()
                        .position(|v| !g.vertices().contains(v))
                        .unwrap();
                    if missing % 2 == 0 {
                        1
                    } else {
                        -1
                    }
                })
                .collect()
        })
        .collect()
}

/// β_i(X; Q) for i = 0..=d (reduced), from exact ranks modulo a large prime.
pub fn betti_rational(x: &SimplicialComplex) -> Vec<usize> {
    let d = x.dim() as isize;
    let rank = |i: isize| {
        if i < -1 || i >= d {
            0
        } else {
            rank_mod_p(&integer_coboundary(x, i))
        }
    };
    (0..=d)
        .map(|i| x.count(i) - rank(i) - rank(i - 1))
        .collect()
}

/// Spherical averages on the (q+1)-regular tree of an eigenfunction with eigenvalue λ,
/// from F(1) = λF(0)/(q+1) and λF(r) = qF(r+1) + F(r-1).
pub fn radial_recurrence(lambda: f64, q: f64, f0: f64, radius: usize) -> Vec<f64> {
    let mut out = vec![f0];
    if radius == 0 {
        return out;
    }
    out.push(lambda * f0 / (q + 1.0));
    for r in 1..radius {
        let next = (lambda * out[r] - out[r - 1]) / q;
        out.push(next);
    }
    out
}

/// The boundary of the 3-simplex.
pub fn tetrahedron_boundary() -> SimplicialComplex {
    SimplicialComplex::complete(4, 2).unwrap()
}

/// Six-vertex real projective plane: H^1(F2) ≠ 0 while H^1(R) = 0.
pub fn projective_plane() -> SimplicialComplex {
    let t: [[u32; 3]; 10] = [
        [1, 2, 3],
        [1, 3, 4],
        [1, 4, 5],
        [1, 5, 6],
        [1, 2, 6],
        [2, 3, 5],
        [2, 4, 5],
        [2, 4, 6],
        [3, 4, 6],
        [3, 5, 6],
    ];
    let faces: Vec<Vec<u32>> = t
        .iter()
        .map(|f| f.iter().map(|v| v - 1).collect())
        .collect();
    SimplicialComplex::from_maximal_faces(6, &faces).unwrap()
}

/// Seven-vertex torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7.
pub fn torus() -> SimplicialComplex {
    let mut faces = Vec::new();
    for i in 0..7u32 {
        for t in [[i, (i + 1) % 7, (i + 3) % 7], [i, (i + 2) % 7, (i + 3) % 7]] {
            let mut f = t.to_vec();
            f.sort_unstable();
            faces.push(f);
        }
    }
    SimplicialComplex::from_maximal_faces(7, &faces).unwrap()
}

/// Pure complexes used across the property checks.
pub fn suite() -> Vec<(String, SimplicialComplex)> {
    let mut out: Vec<(String, SimplicialComplex)> = Vec::new();
    for (n, d) in [(3, 1), (5, 1), (4, 2), (5, 2), (6, 2), (5, 3), (6, 3)] {
        out.push((
            format!("complete({n},{d})"),
            SimplicialComplex::complete(n, d).unwrap(),
        ));
    }
    out.push(("petersen".into(), Graph::petersen().to_complex().unwrap()));
    out.push(("heawood".into(), Graph::heawood().to_complex().unwrap()));
    out.push(("cycle(6)".into(), Graph::cycle(6).to_complex().unwrap()));
    out.push((
        "two-triangles".into(),
        Graph::new(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
            .unwrap()
            .to_complex()
            .unwrap(),
    ));
    out.push(("rp2".into(), projective_plane()));
    out.push(("torus".into(), torus()));
    for seed in 0..6 {
        let spec = ModelSpec::new(Model::Lm, 8, 2).with_p(0.35).with_seed(seed);
        out.push((
            format!("lm-pure({seed})"),
            generate(&spec).unwrap().complex.pure_part().complex,
        ));
    }
    for seed in 0..3 {
        let spec = ModelSpec::new(Model::Y, 9, 2).with_k(3).with_seed(seed);
        out.push((
            format!("y({seed})"),
            generate(&spec).unwrap().complex.pure_part().complex,
        ));
        let spec = ModelSpec::new(Model::W, 9, 2)
            .with_k(3)
            .with_seed(seed)
            .with_delta0(0.5);
        out.push((
            format!("w({seed})"),
            generate(&spec).unwrap().complex.pure_part().complex,
        ));
    }
    out
}
