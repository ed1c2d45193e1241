use rand::Rng;

use super::{subdivide, EdgeSubset, Graph};

/// Path on `n` vertices (`n - 1` edges).
pub fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("path is simple")
}

/// Cycle on `n >= 3` vertices.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
}

/// Star `K_{1,d}` with center 0.
pub fn star(d: usize) -> Graph {
    Graph::new(d + 1, (1..=d).map(|i| (0, i))).expect("star is simple")
}

pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::new(n, edges).expect("complete graph is simple")
}

/// Spider `(K_{1,d})_t`: every edge of the star stretched into a path of
/// length `t`.
pub fn spider(d: usize, t: usize) -> Graph {
    let s = star(d);
    subdivide(&s, &EdgeSubset::all(&s), t).expect("t >= 1")
}

/// The 4-cycle 0-1-2-3 with a pendant vertex 4 attached at 0. Edge 0 is
/// the cycle edge `0-1`.
pub fn square_with_pendant() -> Graph {
    Graph::new(5, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 4)]).expect("simple")
}

/// Two hubs (0 and 1) joined by `k` internally disjoint paths of length
/// `len >= 2`.
pub fn theta(k: usize, len: usize) -> Graph {
    assert!(len >= 2);
    let mut edges = Vec::new();
    let mut next = 2;
    for _ in 0..k {
        let mut prev = 0;
        for _ in 1..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, 1));
    }
    Graph::new(next, edges).expect("theta graph is simple")
}

/// Adds a path of length `len` between `u` and `v` through `len - 1` new
/// vertices. `u == v` hangs a cycle of length `len` off `u`.
pub fn attach_path(g: &Graph, u: usize, v: usize, len: usize) -> Graph {
    assert!(len >= 1 && u < g.n() && v < g.n());
    assert!(len >= 3 || u != v, "a closed attachment needs length >= 3");
    let mut edges = g.edges().to_vec();
    let mut prev = u;
    let mut next = g.n();
    for _ in 1..len {
        edges.push((prev, next));
        prev = next;
        next += 1;
    }
    edges.push((prev, v));
    Graph::new(next, edges).expect("attachment keeps the graph simple")
}

/// Erdős–Rényi `G(n, p)`; pairs are visited in lexicographic order so the
/// result depends only on the RNG state.
pub fn erdos_renyi<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("G(n,p) is simple")
}
