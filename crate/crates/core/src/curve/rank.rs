//! Baker–Norine ranks of divisors on graphs, via q-reduced divisors.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_traits::{One, Zero};

use crate::error::Result;
use crate::rational::Rational;
use crate::util::multisets;

use super::graph::{CurveDivisor, CurvePoint, TropicalCurveGraph};

fn distances(adj: &[std::collections::BTreeMap<usize, i64>], q: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    dist[q] = 0;
    let mut queue = VecDeque::from([q]);
    while let Some(u) = queue.pop_front() {
        for &v in adj[u].keys() {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

fn fire(adj: &[std::collections::BTreeMap<usize, i64>], d: &mut [i64], set: &[bool]) {
    for u in (0..d.len()).filter(|&u| set[u]) {
        for (&v, &m) in &adj[u] {
            if !set[v] {
                d[u] -= m;
                d[v] += m;
            }
        }
    }
}

/// The unique `q`-reduced divisor linearly equivalent to `d`.
pub fn q_reduce(g: &TropicalCurveGraph, d: &[i64], q: usize) -> Vec<i64> {
    let adj = g.adjacency();
    let dist = distances(&adj, q);
    let mut d = d.to_vec();
    // push the debt towards q: firing a distance ball never lowers anything outside it
    while let Some(k) = (0..d.len()).filter(|&v| v != q && d[v] < 0).map(|v| dist[v]).min() {
        let ball: Vec<bool> = dist.iter().map(|&x| x < k).collect();
        fire(&adj, &mut d, &ball);
    }
    // Dhar's burning algorithm
    loop {
        let mut burnt = vec![false; d.len()];
        burnt[q] = true;
        let mut changed = true;
        while changed {
            changed = false;
            for v in 0..d.len() {
                if burnt[v] {
                    continue;
                }
                let fire_edges: i64 = adj[v].iter().filter(|(u, _)| burnt[**u]).map(|(_, m)| m).sum();
                if fire_edges > d[v] {
                    burnt[v] = true;
                    changed = true;
                }
            }
        }
        if burnt.iter().all(|&b| b) {
            return d;
        }
        let unburnt: Vec<bool> = burnt.iter().map(|b| !b).collect();
        fire(&adj, &mut d, &unburnt);
    }
}

pub fn is_equivalent_to_effective(g: &TropicalCurveGraph, d: &[i64]) -> bool {
    q_reduce(g, d, 0)[0] >= 0
}

/// `r(D)` for a divisor on the vertices of `g`, by the recursion
/// `r(D) = 1 + min_v r(D − v)` memoized on reduced representatives.
pub fn rank_on_graph(g: &TropicalCurveGraph, d: &[i64]) -> i64 {
    fn go(g: &TropicalCurveGraph, d: Vec<i64>, memo: &mut HashMap<Vec<i64>, i64>) -> i64 {
        let d = q_reduce(g, &d, 0);
        if d[0] < 0 {
            return -1;
        }
        if let Some(&r) = memo.get(&d) {
            return r;
        }
        let mut best = i64::MAX;
        for v in 0..d.len() {
            let mut e = d.clone();
            e[v] -= 1;
            best = best.min(go(g, e, memo));
            if best == -1 {
                break;
            }
        }
        let r = best + 1;
        memo.insert(d, r);
        r
    }
    go(g, d.to_vec(), &mut HashMap::new())
}

/// `r(D)` on a loopless graph model whose vertices include the support of
/// `d`. Ranks on a model agree with the metric rank only without loops, so
/// every bare loop gets a vertex.
pub fn baker_norine_rank(c: &TropicalCurveGraph, d: &CurveDivisor) -> Result<i64> {
    let mut points = d.support();
    for (e, &(u, v)) in c.edges().iter().enumerate() {
        if u == v && !points.iter().any(|p| matches!(p, CurvePoint::Edge { edge, .. } if *edge == e)) {
            points.push(CurvePoint::Edge { edge: e, slot: 0 });
        }
    }
    let model = c.subdivide(points.iter())?;
    Ok(rank_on_graph(&model.graph, &model.on_vertices(d)?))
}

/// Divisor classes via the inverse of the reduced Laplacian: two divisors
/// of equal degree are equivalent iff their images differ by an integer
/// vector.
struct Classes {
    inverse: Vec<Vec<Rational>>,
}

impl Classes {
    fn new(g: &TropicalCurveGraph) -> Self {
        let adj = g.adjacency();
        let n = adj.len() - 1;
        // reduced Laplacian with vertex 0 removed, augmented by the identity
        let mut m: Vec<Vec<Rational>> = (1..=n)
            .map(|i| {
                let mut row = vec![Rational::zero(); 2 * n];
                row[i - 1] = Rational::from_integer(adj[i].values().sum::<i64>().into());
                for (&j, &k) in &adj[i] {
                    if j != 0 {
                        row[j - 1] -= Rational::from_integer(k.into());
                    }
                }
                row[n + i - 1] = Rational::one();
                row
            })
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&r| !m[r][c].is_zero()).expect("connected graphs have invertible reduced Laplacians");
            m.swap(c, p);
            let pivot = m[c][c].clone();
            m[c].iter_mut().for_each(|x| *x /= pivot.clone());
            for r in 0..n {
                if r != c && !m[r][c].is_zero() {
                    let f = m[r][c].clone();
                    let pivot_row = m[c].clone();
                    m[r].iter_mut().zip(pivot_row).for_each(|(x, y)| *x -= f.clone() * y);
                }
            }
        }
        Self { inverse: m.into_iter().map(|row| row[n..].to_vec()).collect() }
    }

    fn key(&self, d: &[i64]) -> (i64, Vec<Rational>) {
        let frac = self
            .inverse
            .iter()
            .map(|row| {
                let x: Rational = row.iter().zip(&d[1..]).map(|(a, &b)| a.clone() * Rational::from_integer(b.into())).sum();
                x.clone() - x.floor()
            })
            .collect();
        (d.iter().sum(), frac)
    }
}

/// `r(D)` by exhausting effective divisors and testing linear equivalence
/// with the Laplacian lattice. Exponential; an oracle for small graphs.
pub fn brute_force_rank(g: &TropicalCurveGraph, d: &[i64]) -> i64 {
    let deg: i64 = d.iter().sum();
    if deg < 0 {
        return -1;
    }
    let n = g.vertex_count();
    let classes = Classes::new(g);
    let effective = |m: usize| -> BTreeSet<(i64, Vec<Rational>)> {
        multisets(n, m)
            .into_iter()
            .map(|s| {
                let mut e = vec![0; n];
                s.iter().for_each(|&v| e[v] += 1);
                classes.key(&e)
            })
            .collect()
    };
    for r in 0..=deg {
        let targets = effective((deg - r) as usize);
        let all = multisets(n, r as usize).into_iter().all(|s| {
            let mut e = d.to_vec();
            s.iter().for_each(|&v| e[v] -= 1);
            targets.contains(&classes.key(&e))
        });
        if !all {
            return r - 1;
        }
    }
    deg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loops_are_subdivided() {
        // a circle as one vertex with a loop: r(v) = 0 and r(K - v) = -1
        let c = TropicalCurveGraph::circle();
        let d = CurveDivisor::new(vec![(CurvePoint::Vertex(0), 1)]);
        assert_eq!(baker_norine_rank(&c, &d).unwrap(), 0);
        assert_eq!(baker_norine_rank(&c, &c.canonical_divisor().minus(&d)).unwrap(), -1);
    }

    #[test]
    fn trivial_divisor_has_rank_zero() {
        for g in [TropicalCurveGraph::circle(), TropicalCurveGraph::theta()] {
            assert_eq!(rank_on_graph(&g, &vec![0; g.vertex_count()]), 0);
        }
    }

    #[test]
    fn reduction_is_a_canonical_form() {
        let g = TropicalCurveGraph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        let a = q_reduce(&g, &[0, 1, -1], 0);
        assert_eq!(a, vec![-1, 0, 1]);
        assert_eq!(q_reduce(&g, &[1, -2, 1], 0), vec![0, 0, 0]);
        assert_eq!(q_reduce(&g, &[3, 0, 0], 1), q_reduce(&g, &[1, 1, 1], 1));
        assert!(!is_equivalent_to_effective(&g, &[1, -1, 0]));
    }

    #[test]
    fn theta_graph_in_the_riemann_roch_regime() {
        let g = TropicalCurveGraph::theta();
        for d in 3..=6 {
            let model = g.subdivide(&[CurvePoint::Edge { edge: 0, slot: 0 }]).unwrap();
            let mut v = vec![0; 3];
            v[2] = d;
            assert_eq!(rank_on_graph(&model.graph, &v), d - 2);
            assert_eq!(brute_force_rank(&model.graph, &v), d - 2);
        }
    }

    #[test]
    fn oracle_agrees_on_small_graphs() {
        let k4 = TropicalCurveGraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        for d in [[1, 1, 0, 0], [2, 0, 0, 0], [1, 1, 1, 0], [3, -1, 0, 0], [2, 2, 0, 0]] {
            assert_eq!(rank_on_graph(&k4, &d), brute_force_rank(&k4, &d), "{d:?}");
        }
    }
}
