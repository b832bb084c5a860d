//! Graph-domain solvers: the layered time-expanded decision on abstract
//! graphs, the per-cell geodesic distance primitive on geometric graphs, the
//! Blue-on-graph escape decision, and a small-instance SDW(H, G) search.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::geom::PolylineCurve;
use crate::{Error, Result};

type Pt = (f64, f64);

fn edist(a: Pt, b: Pt) -> f64 {
    ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt()
}

fn check_edges(n: usize, edges: &[(usize, usize)]) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for &(u, v) in edges {
        if u >= n || v >= n {
            return Err(Error::InvalidInstance(format!("edge ({u}, {v}) out of range")));
        }
        if u == v {
            return Err(Error::InvalidInstance(format!("self loop at {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::InvalidInstance(format!("duplicate edge ({u}, {v})")));
        }
    }
    // Connectivity.
    if n > 0 {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::InvalidInstance("graph is not connected".into()));
        }
    }
    Ok(())
}

/// Unweighted simple connected graph with precomputed hop distances.
pub struct AbstractGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub adj: Vec<Vec<usize>>,
    hop: Vec<Vec<usize>>,
}

impl AbstractGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInstance("graph needs at least one vertex".into()));
        }
        check_edges(n, &edges)?;
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let hop = (0..n)
            .map(|s| {
                let mut d = vec![usize::MAX; n];
                d[s] = 0;
                let mut q = std::collections::VecDeque::from([s]);
                while let Some(u) = q.pop_front() {
                    for &v in &adj[u] {
                        if d[v] == usize::MAX {
                            d[v] = d[u] + 1;
                            q.push_back(v);
                        }
                    }
                }
                d
            })
            .collect();
        Ok(AbstractGraph { n, edges, adj, hop })
    }

    pub fn hop_distance(&self, u: usize, v: usize) -> usize {
        self.hop[u][v]
    }
}

/// Layered reachability: can Blue (speed s in hops per Red step) stay at hop
/// distance >= delta from Red while Red walks the vertex path `red_path`?
/// With `blue_start` unset, any surviving first-layer vertex may start.
pub fn decide_abstract(
    g: &AbstractGraph,
    red_path: &[usize],
    speed: usize,
    delta: usize,
    blue_start: Option<usize>,
) -> Result<bool> {
    if red_path.is_empty() {
        return Err(Error::InvalidInstance("red path must be nonempty".into()));
    }
    if delta == 0 {
        return Err(Error::ParamOutOfRange(0.0, 1.0, g.n as f64));
    }
    for &v in red_path {
        if v >= g.n {
            return Err(Error::InvalidInstance(format!("red vertex {v} out of range")));
        }
    }
    for w in red_path.windows(2) {
        if g.hop[w[0]][w[1]] > 1 {
            return Err(Error::InvalidInstance(format!(
                "red path vertices {} and {} are not adjacent",
                w[0], w[1]
            )));
        }
    }
    if let Some(b) = blue_start {
        if b >= g.n {
            return Err(Error::InvalidInstance(format!("blue start {b} out of range")));
        }
    }
    // Layer i keeps the vertices at hop distance >= delta from r_i (deleting
    // the open delta-ball around Red); move edges allow hop distance <= speed.
    let survives = |i: usize, v: usize| g.hop[v][red_path[i]] >= delta;
    let mut reach: Vec<bool> = match blue_start {
        Some(b) => (0..g.n).map(|v| v == b && survives(0, v)).collect(),
        None => (0..g.n).map(|v| survives(0, v)).collect(),
    };
    for i in 1..red_path.len() {
        reach = (0..g.n)
            .map(|u| {
                survives(i, u) && (0..g.n).any(|v| reach[v] && g.hop[v][u] <= speed)
            })
            .collect();
    }
    Ok(reach.iter().any(|&x| x))
}

/// Straight-line embedded graph with Euclidean edge lengths.
pub struct GeometricGraph {
    pub nodes: Vec<Pt>,
    pub edges: Vec<(usize, usize)>,
    /// Per node: (neighbor, edge index).
    pub adj: Vec<Vec<(usize, usize)>>,
    elen: Vec<f64>,
    node_dist: Vec<Vec<f64>>,
}

impl GeometricGraph {
    pub fn new(nodes: Vec<Pt>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = nodes.len();
        if n == 0 {
            return Err(Error::InvalidInstance("graph needs at least one node".into()));
        }
        check_edges(n, &edges)?;
        let elen: Vec<f64> = edges.iter().map(|&(u, v)| edist(nodes[u], nodes[v])).collect();
        if elen.iter().any(|&l| l <= 1e-12) {
            return Err(Error::InvalidInstance("zero-length edge".into()));
        }
        let mut adj = vec![Vec::new(); n];
        for (k, &(u, v)) in edges.iter().enumerate() {
            adj[u].push((v, k));
            adj[v].push((u, k));
        }
        let mut g = GeometricGraph {
            nodes,
            edges,
            adj,
            elen,
            node_dist: Vec::new(),
        };
        g.node_dist = (0..n).map(|s| g.dijkstra(s, &[])).collect();
        Ok(g)
    }

    pub fn edge_len(&self, k: usize) -> f64 {
        self.elen[k]
    }

    pub fn node_distance(&self, u: usize, v: usize) -> f64 {
        self.node_dist[u][v]
    }

    /// Dijkstra from `src`, skipping the listed edge indices.
    fn dijkstra(&self, src: usize, skip: &[usize]) -> Vec<f64> {
        let n = self.nodes.len();
        let mut d = vec![f64::INFINITY; n];
        d[src] = 0.0;
        let mut done = vec![false; n];
        loop {
            let mut u = usize::MAX;
            let mut best = f64::INFINITY;
            for i in 0..n {
                if !done[i] && d[i] < best {
                    best = d[i];
                    u = i;
                }
            }
            if u == usize::MAX {
                break;
            }
            done[u] = true;
            for &(v, k) in &self.adj[u] {
                if skip.contains(&k) {
                    continue;
                }
                if d[u] + self.elen[k] < d[v] {
                    d[v] = d[u] + self.elen[k];
                }
            }
        }
        d
    }

    /// Locate a 2D point on some edge: (edge index, arclength from endpoint 0).
    pub fn locate(&self, p: Pt, tol: f64) -> Option<(usize, f64)> {
        let mut best: Option<(f64, usize, f64)> = None;
        for (k, &(u, v)) in self.edges.iter().enumerate() {
            let (a, b) = (self.nodes[u], self.nodes[v]);
            let ab = (b.0 - a.0, b.1 - a.1);
            let t = (((p.0 - a.0) * ab.0 + (p.1 - a.1) * ab.1) / (self.elen[k] * self.elen[k]))
                .clamp(0.0, 1.0);
            let c = (a.0 + t * ab.0, a.1 + t * ab.1);
            let d = edist(p, c);
            if d <= tol && best.map_or(true, |(bd, _, _)| d < bd) {
                best = Some((d, k, t * self.elen[k]));
            }
        }
        best.map(|(_, k, x)| (k, x))
    }
}

/// Geodesic distance between interior points of two distinct edges, as the
/// minimum of four linear functions of the arclength offsets (x, y). The
/// endpoint distances are taken on the graph with both edges removed, so each
/// term is an achievable route.
#[derive(Debug, Clone, Copy)]
pub struct CellDistanceFunction {
    /// d(e0, f1), d(e0, f0), d(e1, f1), d(e1, f0) avoiding e and f.
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
    pub d4: f64,
    pub le: f64,
    pub lf: f64,
}

impl CellDistanceFunction {
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        (x + self.d2 + y)
            .min(x + self.d1 + self.lf - y)
            .min(self.le - x + self.d4 + y)
            .min(self.le - x + self.d3 + self.lf - y)
    }
}

pub fn geodesic_cell_distance(
    g: &GeometricGraph,
    e: usize,
    f: usize,
) -> Result<CellDistanceFunction> {
    if e >= g.edges.len() || f >= g.edges.len() {
        return Err(Error::InvalidInstance("edge index out of range".into()));
    }
    if e == f {
        return Err(Error::InvalidInstance(
            "cell distance needs two distinct edges".into(),
        ));
    }
    let skip = [e, f];
    let from_e0 = g.dijkstra(g.edges[e].0, &skip);
    let from_e1 = g.dijkstra(g.edges[e].1, &skip);
    let (f0, f1) = g.edges[f];
    Ok(CellDistanceFunction {
        d1: from_e0[f1],
        d2: from_e0[f0],
        d3: from_e1[f1],
        d4: from_e1[f0],
        le: g.elen[e],
        lf: g.elen[f],
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphMetric {
    Euclidean,
    GraphGeodesic,
}

/// Free sub-intervals of [0, 1] under a set of forbidden open intervals.
fn subtract_forbidden(mut forbidden: Vec<(f64, f64)>, hi: f64) -> Vec<(f64, f64)> {
    forbidden.retain(|&(a, b)| b > 0.0 && a < hi && b > a);
    forbidden.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let mut free = Vec::new();
    let mut cur = 0.0;
    for (a, b) in forbidden {
        if a > cur {
            free.push((cur, a.min(hi)));
        }
        cur = cur.max(b);
        if cur >= hi {
            return free;
        }
    }
    if cur < hi {
        free.push((cur, hi));
    }
    free
}

/// Decide whether Blue, moving continuously (and reversibly) on the geometric
/// graph G with unbounded speed, can keep separation >= delta from Red for
/// the whole traversal of the polyline `red`. Blue starts anywhere free.
pub fn decide_blue_on_graph(
    red: &PolylineCurve,
    g: &GeometricGraph,
    delta: f64,
    metric: GraphMetric,
) -> Result<bool> {
    if red.dim != 2 {
        return Err(Error::DimMismatch(red.dim, 2));
    }
    if delta <= 0.0 {
        return Ok(true);
    }
    let samples_per_edge = 64;
    let n = red.len();
    let params: Vec<f64> = if n == 1 {
        vec![1.0]
    } else {
        let k = samples_per_edge * (n - 1);
        (0..=k).map(|i| 1.0 + (n - 1) as f64 * i as f64 / k as f64).collect()
    };
    // Red positions; for the geodesic metric Red must lie on edges of G.
    let red_pts: Vec<Pt> = params
        .iter()
        .map(|&t| {
            let v = red.point_at(t)?;
            Ok((v[0], v[1]))
        })
        .collect::<Result<_>>()?;
    let red_loc: Option<Vec<(usize, f64)>> = match metric {
        GraphMetric::Euclidean => None,
        GraphMetric::GraphGeodesic => Some(
            red_pts
                .iter()
                .map(|&p| {
                    g.locate(p, 1e-6).ok_or_else(|| {
                        Error::InvalidInstance(
                            "geodesic metric requires the red path to lie on graph edges".into(),
                        )
                    })
                })
                .collect::<Result<_>>()?,
        ),
    };
    let m = g.edges.len();
    // Free intervals (in arclength) per blue edge for one red sample.
    let free_on_edge = |step: usize, k: usize| -> Vec<(f64, f64)> {
        let lf = g.elen[k];
        match metric {
            GraphMetric::Euclidean => {
                let p = red_pts[step];
                let (u, v) = g.edges[k];
                let (a, b) = (g.nodes[u], g.nodes[v]);
                // |a + (y/lf)(b-a) - p|^2 < delta^2 as a quadratic in y.
                let dir = ((b.0 - a.0) / lf, (b.1 - a.1) / lf);
                let w = (a.0 - p.0, a.1 - p.1);
                let qa = 1.0;
                let qb = 2.0 * (dir.0 * w.0 + dir.1 * w.1);
                let qc = w.0 * w.0 + w.1 * w.1 - delta * delta;
                let disc = qb * qb - 4.0 * qa * qc;
                if disc <= 0.0 {
                    return vec![(0.0, lf)];
                }
                let r = disc.sqrt();
                subtract_forbidden(vec![((-qb - r) / 2.0, (-qb + r) / 2.0)], lf)
            }
            GraphMetric::GraphGeodesic => {
                let (e, x) = red_loc.as_ref().unwrap()[step];
                let le = g.elen[e];
                let (e0, e1) = g.edges[e];
                let (f0, f1) = g.edges[k];
                let mut forbidden = Vec::new();
                // Route terms through endpoint pairs; each gives a linear
                // constraint on y.
                let d = &g.node_dist;
                // x + d(e0,f0) + y >= delta
                forbidden.push((f64::NEG_INFINITY, delta - x - d[e0][f0]));
                // (le-x) + d(e1,f0) + y >= delta
                forbidden.push((f64::NEG_INFINITY, delta - (le - x) - d[e1][f0]));
                // x + d(e0,f1) + (lf-y) >= delta
                forbidden.push((x + d[e0][f1] + lf - delta, f64::INFINITY));
                // (le-x) + d(e1,f1) + (lf-y) >= delta
                forbidden.push(((le - x) + d[e1][f1] + lf - delta, f64::INFINITY));
                if k == e {
                    // Direct along-edge route.
                    forbidden.push((x - delta, x + delta));
                }
                subtract_forbidden(forbidden, lf)
            }
        }
    };
    let vertex_free = |step: usize, u: usize| -> bool {
        match metric {
            GraphMetric::Euclidean => edist(red_pts[step], g.nodes[u]) >= delta,
            GraphMetric::GraphGeodesic => {
                let (e, x) = red_loc.as_ref().unwrap()[step];
                let (e0, e1) = g.edges[e];
                let le = g.elen[e];
                (x + g.node_dist[e0][u]).min(le - x + g.node_dist[e1][u]) >= delta
            }
        }
    };
    // Pieces of the free region at one time step, glued at free vertices.
    struct Step {
        pieces: Vec<(usize, f64, f64)>,
        comp: Vec<usize>,
    }
    let build_step = |step: usize| -> Step {
        let mut pieces = Vec::new();
        for k in 0..m {
            for (lo, hi) in free_on_edge(step, k) {
                pieces.push((k, lo, hi));
            }
        }
        let mut comp: Vec<usize> = (0..pieces.len()).collect();
        fn find(comp: &mut Vec<usize>, mut a: usize) -> usize {
            while comp[a] != a {
                comp[a] = comp[comp[a]];
                a = comp[a];
            }
            a
        }
        for u in 0..g.nodes.len() {
            if !vertex_free(step, u) {
                continue;
            }
            let mut touching = Vec::new();
            for (i, &(k, lo, hi)) in pieces.iter().enumerate() {
                let (f0, f1) = g.edges[k];
                if (f0 == u && lo <= 1e-9) || (f1 == u && hi >= g.elen[k] - 1e-9) {
                    touching.push(i);
                }
            }
            for w in touching.windows(2) {
                let (a, b) = (find(&mut comp, w[0]), find(&mut comp, w[1]));
                comp[a] = b;
            }
        }
        let roots: Vec<usize> = (0..pieces.len())
            .map(|i| find(&mut comp, i))
            .collect();
        Step { pieces, comp: roots }
    };
    let mut prev = build_step(0);
    let mut alive: Vec<bool> = vec![true; prev.pieces.len()];
    if prev.pieces.is_empty() {
        return Ok(false);
    }
    for step in 1..params.len() {
        let cur = build_step(step);
        let mut comp_alive = std::collections::HashSet::new();
        for (i, &(k, lo, hi)) in cur.pieces.iter().enumerate() {
            for (j, &(pk, plo, phi)) in prev.pieces.iter().enumerate() {
                if alive[j] && pk == k && lo.max(plo) < hi.min(phi) + 1e-12 {
                    comp_alive.insert(cur.comp[i]);
                    break;
                }
            }
        }
        alive = (0..cur.pieces.len())
            .map(|i| comp_alive.contains(&cur.comp[i]))
            .collect();
        if !alive.iter().any(|&a| a) {
            return Ok(false);
        }
        prev = cur;
    }
    Ok(true)
}

/// Small-instance SDW(H, G) decision: can Red fully traverse every edge of H
/// (backtracking allowed, whole edges at a time) while Blue moves on G with
/// unbounded speed keeping Euclidean separation >= delta at every sampled
/// configuration? States are (Red vertex, covered-edge set, Blue subdivision
/// node), capped at 10^6.
pub fn sdw_graphs_small(
    h: &GeometricGraph,
    g: &GeometricGraph,
    delta: f64,
    resolution: usize,
) -> Result<bool> {
    let res = resolution.max(2);
    let mh = h.edges.len();
    if mh > 20 {
        return Err(Error::StateCapExceeded(1 << mh));
    }
    // Subdivide G: original nodes first, then res-1 interior nodes per edge.
    let mut pts: Vec<Pt> = g.nodes.clone();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); g.nodes.len()];
    for &(u, v) in &g.edges {
        let (a, b) = (g.nodes[u], g.nodes[v]);
        let mut prev = u;
        for k in 1..res {
            let t = k as f64 / res as f64;
            let id = pts.len();
            pts.push((a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1)));
            adj.push(Vec::new());
            adj[prev].push(id);
            adj[id].push(prev);
            prev = id;
        }
        adj[prev].push(v);
        adj[v].push(prev);
    }
    let gn = pts.len();
    let full: u64 = if mh == 64 { u64::MAX } else { (1u64 << mh) - 1 };
    let states = h.nodes.len() << mh;
    if states.saturating_mul(gn) > 1_000_000 {
        return Err(Error::StateCapExceeded(states.saturating_mul(gn)));
    }
    let free_wrt = |rp: Pt| -> Vec<bool> { pts.iter().map(|&p| edist(rp, p) >= delta).collect() };
    let expand = |set: &mut Vec<bool>, free: &[bool]| {
        let mut stack: Vec<usize> = (0..gn).filter(|&i| set[i]).collect();
        while let Some(i) = stack.pop() {
            for &j in &adj[i] {
                if free[j] && !set[j] {
                    set[j] = true;
                    stack.push(j);
                }
            }
        }
    };
    // Blue end nodes reachable while Red walks edge k from `from`, starting
    // from blue node `b0`. Memoized; independent of the covered set.
    let mut memo: HashMap<(usize, usize, usize), Vec<usize>> = HashMap::new();
    let mut blue_after =
        |k: usize, from: usize, b0: usize| -> Vec<usize> {
            if let Some(v) = memo.get(&(k, from, b0)) {
                return v.clone();
            }
            let (u, v) = h.edges[k];
            let to = if from == u { v } else { u };
            let (a, b) = (h.nodes[from], h.nodes[to]);
            let mut set = vec![false; gn];
            set[b0] = true;
            let mut ok = true;
            for s in 1..=res {
                let t = s as f64 / res as f64;
                let rp = (a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1));
                let free = free_wrt(rp);
                for i in 0..gn {
                    set[i] = set[i] && free[i];
                }
                expand(&mut set, &free);
                if !set.iter().any(|&x| x) {
                    ok = false;
                    break;
                }
            }
            let out: Vec<usize> = if ok {
                (0..gn).filter(|&i| set[i]).collect()
            } else {
                Vec::new()
            };
            memo.insert((k, from, b0), out.clone());
            out
        };
    // BFS over (red vertex, covered set, blue node).
    let mut seen = std::collections::HashSet::new();
    let mut queue = std::collections::VecDeque::new();
    for u in 0..h.nodes.len() {
        let free = free_wrt(h.nodes[u]);
        let mut set = free.clone();
        expand(&mut set, &free);
        for b in 0..gn {
            if set[b] && seen.insert((u, 0u64, b)) {
                queue.push_back((u, 0u64, b));
            }
        }
    }
    while let Some((u, covered, b)) = queue.pop_front() {
        if covered == full {
            return Ok(true);
        }
        for &(w, k) in &h.adj[u] {
            let nc = covered | (1u64 << k);
            for nb in blue_after(k, u, b) {
                if seen.insert((w, nc, nb)) {
                    queue.push_back((w, nc, nb));
                }
            }
        }
    }
    Ok(false)
}

#[derive(Serialize, Deserialize)]
struct GeometricGraphFile {
    nodes: Vec<(f64, f64)>,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct AbstractGraphFile {
    n: usize,
    edges: Vec<(usize, usize)>,
}

pub fn parse_geometric_graph(s: &str) -> Result<GeometricGraph> {
    let f: GeometricGraphFile = serde_json::from_str(s)?;
    GeometricGraph::new(f.nodes, f.edges)
}

pub fn serialize_geometric_graph(g: &GeometricGraph) -> String {
    serde_json::to_string_pretty(&GeometricGraphFile {
        nodes: g.nodes.clone(),
        edges: g.edges.clone(),
    })
    .expect("graph serialization cannot fail")
}

pub fn parse_abstract_graph(s: &str) -> Result<AbstractGraph> {
    let f: AbstractGraphFile = serde_json::from_str(s)?;
    AbstractGraph::new(f.n, f.edges)
}
