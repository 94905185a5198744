use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::util::UnionFind;

/// A compact tropical curve up to edge lengths: a connected multigraph,
/// loops allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalCurveGraph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

/// A point of the curve: a vertex, or the `slot`-th of the marked points
/// inside an edge, counted from its first endpoint. Only the order of the
/// slots along one edge matters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CurvePoint {
    Vertex(usize),
    Edge { edge: usize, slot: usize },
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Vertex(v) => write!(f, "v{v}"),
            CurvePoint::Edge { edge, slot } => write!(f, "e{edge}.{slot}"),
        }
    }
}

impl std::str::FromStr for CurvePoint {
    type Err = Error;

    /// `"3"` or `"v3"` for a vertex, `"e2.1"` for a point inside edge 2.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a curve point: {s:?}"));
        if let Some(rest) = s.strip_prefix('e') {
            let (e, k) = rest.split_once('.').ok_or_else(bad)?;
            return Ok(CurvePoint::Edge { edge: e.parse().map_err(|_| bad())?, slot: k.parse().map_err(|_| bad())? });
        }
        s.strip_prefix('v').unwrap_or(s).parse().map(CurvePoint::Vertex).map_err(|_| bad())
    }
}

impl TropicalCurveGraph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if vertices == 0 {
            return Err(Error::InvalidGraph("no vertices".into()));
        }
        if let Some((i, _)) = edges.iter().enumerate().find(|(_, (u, v))| *u >= vertices || *v >= vertices) {
            return Err(Error::InvalidGraph(format!("edge {i} has an endpoint outside 0..{vertices}")));
        }
        let g = Self { vertices, edges };
        if g.components() != 1 {
            return Err(Error::InvalidGraph("the graph is disconnected".into()));
        }
        Ok(g)
    }

    /// One vertex with a loop.
    pub fn circle() -> Self {
        Self { vertices: 1, edges: vec![(0, 0)] }
    }

    /// Two vertices joined by three edges.
    pub fn theta() -> Self {
        Self { vertices: 2, edges: vec![(0, 1); 3] }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    fn components(&self) -> usize {
        let mut uf = UnionFind::new(self.vertices);
        for &(u, v) in &self.edges {
            uf.union(u, v);
        }
        uf.count()
    }

    pub fn genus(&self) -> i64 {
        self.edges.len() as i64 - self.vertices as i64 + 1
    }

    pub fn euler_char(&self) -> i64 {
        1 - self.genus()
    }

    /// Loops count twice.
    pub fn valence(&self, v: usize) -> usize {
        self.edges.iter().map(|&(a, b)| usize::from(a == v) + usize::from(b == v)).sum()
    }

    pub fn canonical_divisor(&self) -> CurveDivisor {
        CurveDivisor::new((0..self.vertices).map(|v| (CurvePoint::Vertex(v), self.valence(v) as i64 - 2)))
    }

    /// Checks that a point refers to this graph.
    pub fn check_point(&self, p: &CurvePoint) -> Result<()> {
        match *p {
            CurvePoint::Vertex(v) if v >= self.vertices => Err(Error::OutOfRange(format!("no vertex {v}"))),
            CurvePoint::Edge { edge, .. } if edge >= self.edges.len() => Err(Error::OutOfRange(format!("no edge {edge}"))),
            _ => Ok(()),
        }
    }

    /// Inserts a vertex for every marked edge point. Vertices of `self` keep
    /// their indices.
    pub fn subdivide<'a>(&self, points: impl IntoIterator<Item = &'a CurvePoint>) -> Result<Subdivided> {
        let mut slots: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        let mut map = BTreeMap::new();
        for p in points {
            self.check_point(p)?;
            if let CurvePoint::Edge { edge, slot } = *p {
                slots.entry(edge).or_default().insert(slot);
            }
        }
        for v in 0..self.vertices {
            map.insert(CurvePoint::Vertex(v), v);
        }
        let mut n = self.vertices;
        let mut edges = Vec::new();
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            let mut prev = u;
            for &slot in slots.get(&e).into_iter().flatten() {
                map.insert(CurvePoint::Edge { edge: e, slot }, n);
                edges.push((prev, n));
                prev = n;
                n += 1;
            }
            edges.push((prev, v));
        }
        Ok(Subdivided { graph: Self { vertices: n, edges }, map })
    }

    /// Vertex-indexed adjacency with multiplicities, loops dropped.
    pub(crate) fn adjacency(&self) -> Vec<BTreeMap<usize, i64>> {
        let mut adj = vec![BTreeMap::new(); self.vertices];
        for &(u, v) in &self.edges {
            if u != v {
                *adj[u].entry(v).or_insert(0) += 1;
                *adj[v].entry(u).or_insert(0) += 1;
            }
        }
        adj
    }
}

/// A graph model with the given points as vertices.
#[derive(Clone, Debug)]
pub struct Subdivided {
    pub graph: TropicalCurveGraph,
    pub map: BTreeMap<CurvePoint, usize>,
}

impl Subdivided {
    pub fn vertex_of(&self, p: &CurvePoint) -> usize {
        self.map[p]
    }

    /// The divisor as a vertex vector; its points must be among the marked ones.
    pub fn on_vertices(&self, d: &CurveDivisor) -> Result<Vec<i64>> {
        let mut out = vec![0; self.graph.vertex_count()];
        for (p, c) in d.iter() {
            let v = self.map.get(p).ok_or_else(|| Error::OutOfRange(format!("{p} is not a vertex of the model")))?;
            out[*v] += c;
        }
        Ok(out)
    }
}

/// A finite formal sum of curve points.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CurveDivisor {
    coeffs: BTreeMap<CurvePoint, i64>,
}

impl CurveDivisor {
    pub fn new(terms: impl IntoIterator<Item = (CurvePoint, i64)>) -> Self {
        let mut d = Self::default();
        for (p, c) in terms {
            d.add_at(p, c);
        }
        d
    }

    /// The reduced divisor of a set of points.
    pub fn of_points(points: &[CurvePoint]) -> Self {
        Self::new(points.iter().map(|p| (*p, 1)))
    }

    fn add_at(&mut self, p: CurvePoint, c: i64) {
        let e = self.coeffs.entry(p).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(&p);
        }
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.values().sum()
    }

    pub fn get(&self, p: &CurvePoint) -> i64 {
        self.coeffs.get(p).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CurvePoint, i64)> + '_ {
        self.coeffs.iter().map(|(p, c)| (p, *c))
    }

    pub fn support(&self) -> Vec<CurvePoint> {
        self.coeffs.keys().copied().collect()
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|&c| c >= 0)
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut d = self.clone();
        for (p, c) in other.iter() {
            d.add_at(*p, c);
        }
        d
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }

    pub fn negated(&self) -> Self {
        Self::new(self.iter().map(|(p, c)| (*p, -c)))
    }
}

/// A random connected multigraph: a random tree plus extra edges and loops.
pub fn random_curve(rng: &mut impl Rng, max_vertices: usize, max_extra: usize) -> TropicalCurveGraph {
    let n = rng.gen_range(1..=max_vertices.max(1));
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    for _ in 0..rng.gen_range(0..=max_extra) {
        edges.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    TropicalCurveGraph::new(n, edges).expect("contains a spanning tree")
}

/// Up to `count` random distinct points, each a vertex of valence 2 or an
/// edge point.
pub fn random_regular_points(g: &TropicalCurveGraph, rng: &mut impl Rng, count: usize) -> Vec<CurvePoint> {
    let mut pts = BTreeSet::new();
    for _ in 0..count {
        let p = if rng.gen_bool(0.2) {
            let v = rng.gen_range(0..g.vertex_count());
            if g.valence(v) != 2 {
                continue;
            }
            CurvePoint::Vertex(v)
        } else if g.edges().is_empty() {
            continue;
        } else {
            CurvePoint::Edge { edge: rng.gen_range(0..g.edges().len()), slot: rng.gen_range(0..4) }
        };
        pts.insert(p);
    }
    pts.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_and_euler_characteristic() {
        assert_eq!((TropicalCurveGraph::circle().genus(), TropicalCurveGraph::circle().euler_char()), (1, 0));
        assert_eq!((TropicalCurveGraph::theta().genus(), TropicalCurveGraph::theta().euler_char()), (2, -1));
        let tree = TropicalCurveGraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert_eq!((tree.genus(), tree.euler_char()), (0, 1));
        assert!(TropicalCurveGraph::new(3, vec![(0, 1)]).is_err());
        assert!(TropicalCurveGraph::new(2, vec![(0, 2)]).is_err());
    }

    #[test]
    fn canonical_divisors() {
        assert_eq!(TropicalCurveGraph::circle().canonical_divisor().degree(), 0);
        assert!(TropicalCurveGraph::circle().canonical_divisor().support().is_empty());
        let k = TropicalCurveGraph::theta().canonical_divisor();
        assert_eq!((k.get(&CurvePoint::Vertex(0)), k.get(&CurvePoint::Vertex(1)), k.degree()), (1, 1, 2));
        let star = TropicalCurveGraph::new(5, (1..5).map(|v| (0, v)).collect()).unwrap();
        let k = star.canonical_divisor();
        assert_eq!(k.get(&CurvePoint::Vertex(0)), 2);
        assert!((1..5).all(|v| k.get(&CurvePoint::Vertex(v)) == -1));
    }

    #[test]
    fn subdivision_keeps_the_topology() {
        let g = TropicalCurveGraph::theta();
        let pts = [CurvePoint::Edge { edge: 1, slot: 5 }, CurvePoint::Edge { edge: 1, slot: 2 }];
        let s = g.subdivide(&pts).unwrap();
        assert_eq!(s.graph.vertex_count(), 4);
        assert_eq!(s.graph.genus(), 2);
        assert_eq!(s.vertex_of(&pts[1]), 2);
        assert!(g.subdivide(&[CurvePoint::Edge { edge: 3, slot: 0 }]).is_err());
    }

    #[test]
    fn divisor_arithmetic_and_parsing() {
        let a: CurvePoint = "e2.1".parse().unwrap();
        assert_eq!(a, CurvePoint::Edge { edge: 2, slot: 1 });
        assert_eq!("v3".parse::<CurvePoint>().unwrap(), CurvePoint::Vertex(3));
        assert_eq!("4".parse::<CurvePoint>().unwrap(), CurvePoint::Vertex(4));
        assert!("e2".parse::<CurvePoint>().is_err());
        let d = CurveDivisor::of_points(&[a, CurvePoint::Vertex(0)]);
        assert_eq!(d.minus(&d), CurveDivisor::default());
        assert_eq!(d.plus(&d).degree(), 4);
        assert!(!d.negated().is_effective());
    }
}
