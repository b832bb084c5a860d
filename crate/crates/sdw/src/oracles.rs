//! Independent brute-force and discretized oracles backing the property and
//! acceptance tests. These deliberately share no geometry code with the
//! solver modules: predicates and distances are reimplemented locally in the
//! simplest possible way.

use std::collections::{HashMap, HashSet};

use crate::geom::PolylineCurve;
use crate::tree::WeightedTree;
use crate::{Error, Result};

/// Discretization parameters for grid oracles.
#[derive(Debug, Clone, Copy)]
pub struct GridConfig {
    /// Samples per curve edge / spatial axis / tree edge.
    pub resolution: usize,
    pub max_states: usize,
}

impl GridConfig {
    pub fn with_resolution(resolution: usize) -> Self {
        GridConfig {
            resolution: resolution.max(2),
            max_states: 10_000_000,
        }
    }
}

fn euclid(p: &[f64], q: &[f64]) -> f64 {
    p.iter()
        .zip(q)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

fn sample_params(n: usize, res: usize) -> Vec<f64> {
    if n == 1 {
        return vec![1.0];
    }
    let k = res * (n - 1);
    (0..=k).map(|i| 1.0 + (n - 1) as f64 * i as f64 / k as f64).collect()
}

fn curve_at(c: &PolylineCurve, t: f64) -> Vec<f64> {
    let n = c.points.len();
    let i = (t.floor() as usize).clamp(1, n.max(2) - 1);
    let lam = t - i as f64;
    if n == 1 {
        return c.points[0].clone();
    }
    c.points[i - 1]
        .iter()
        .zip(&c.points[i])
        .map(|(a, b)| a + lam * (b - a))
        .collect()
}

/// Monotone BFS over sampled parameter pairs: YES iff some monotone grid
/// path from (start, start) to (end, end) keeps distance >= delta at all
/// grid nodes.
pub fn oracle_grid_curves(
    red: &PolylineCurve,
    blue: &PolylineCurve,
    delta: f64,
    cfg: &GridConfig,
) -> Result<bool> {
    let rp = sample_params(red.len(), cfg.resolution);
    let bp = sample_params(blue.len(), cfg.resolution);
    if rp.len() * bp.len() > cfg.max_states {
        return Err(Error::StateCapExceeded(rp.len() * bp.len()));
    }
    let reds: Vec<Vec<f64>> = rp.iter().map(|&t| curve_at(red, t)).collect();
    let blues: Vec<Vec<f64>> = bp.iter().map(|&t| curve_at(blue, t)).collect();
    let free = |i: usize, j: usize| euclid(&reds[i], &blues[j]) >= delta;
    if !free(0, 0) {
        return Ok(false);
    }
    let (ni, nj) = (rp.len(), bp.len());
    let mut reach = vec![false; ni * nj];
    reach[0] = true;
    for i in 0..ni {
        for j in 0..nj {
            if reach[i * nj + j] || !free(i, j) {
                continue;
            }
            let from_left = j > 0 && reach[i * nj + j - 1];
            let from_down = i > 0 && reach[(i - 1) * nj + j];
            let from_diag = i > 0 && j > 0 && reach[(i - 1) * nj + j - 1];
            if from_left || from_down || from_diag {
                reach[i * nj + j] = true;
            }
        }
    }
    Ok(reach[ni * nj - 1])
}

/// Exhaustive max-min over all monotone vertex traversals, by memoized
/// recursion from the start pair.
pub fn oracle_dff_exhaustive(p: &PolylineCurve, q: &PolylineCurve) -> Result<f64> {
    let (n, m) = (p.len(), q.len());
    if n + m > 16 {
        return Err(Error::StateCapExceeded(n + m));
    }
    fn go(
        p: &PolylineCurve,
        q: &PolylineCurve,
        i: usize,
        j: usize,
        memo: &mut HashMap<(usize, usize), f64>,
    ) -> f64 {
        if let Some(&v) = memo.get(&(i, j)) {
            return v;
        }
        let d = euclid(&p.points[i], &q.points[j]);
        let (n, m) = (p.len(), q.len());
        let v = if i == n - 1 && j == m - 1 {
            d
        } else {
            let mut best = f64::NEG_INFINITY;
            if i + 1 < n {
                best = best.max(go(p, q, i + 1, j, memo));
            }
            if j + 1 < m {
                best = best.max(go(p, q, i, j + 1, memo));
            }
            if i + 1 < n && j + 1 < m {
                best = best.max(go(p, q, i + 1, j + 1, memo));
            }
            d.min(best)
        };
        memo.insert((i, j), v);
        v
    }
    Ok(go(p, q, 0, 0, &mut HashMap::new()))
}

/// Product-grid BFS for k agents in 1D (k <= 3 in practice): all agents step
/// monotonically; every adjacent pair must keep distance > delta at nodes.
pub fn oracle_grid_k_agents(curves: &[Vec<f64>], delta: f64, res: usize) -> Result<bool> {
    assert!(curves.len() == 2 || curves.len() == 3);
    let grids: Vec<Vec<f64>> = curves
        .iter()
        .map(|c| {
            let pc = PolylineCurve::from_1d(c);
            sample_params(c.len(), res)
                .iter()
                .map(|&t| curve_at(&pc, t)[0])
                .collect()
        })
        .collect();
    let sizes: Vec<usize> = grids.iter().map(|g| g.len()).collect();
    let total: usize = sizes.iter().product();
    if total > 20_000_000 {
        return Err(Error::StateCapExceeded(total));
    }
    if curves.len() == 2 {
        let ok = |i: usize, j: usize| (grids[1][j] - grids[0][i]).abs() > delta;
        let (ni, nj) = (sizes[0], sizes[1]);
        if !ok(0, 0) {
            return Ok(false);
        }
        let mut reach = vec![false; ni * nj];
        reach[0] = true;
        for i in 0..ni {
            for j in 0..nj {
                if reach[i * nj + j] || !ok(i, j) {
                    continue;
                }
                if (j > 0 && reach[i * nj + j - 1])
                    || (i > 0 && reach[(i - 1) * nj + j])
                    || (i > 0 && j > 0 && reach[(i - 1) * nj + j - 1])
                {
                    reach[i * nj + j] = true;
                }
            }
        }
        return Ok(reach[ni * nj - 1]);
    }
    let ok = |i: usize, j: usize, k: usize| {
        grids[1][j] - grids[0][i] > delta && grids[2][k] - grids[1][j] > delta
    };
    let (ni, nj, nk) = (sizes[0], sizes[1], sizes[2]);
    let idx = |i: usize, j: usize, k: usize| (i * nj + j) * nk + k;
    if !ok(0, 0, 0) {
        return Ok(false);
    }
    let mut reach = vec![false; total];
    reach[0] = true;
    for i in 0..ni {
        for j in 0..nj {
            for k in 0..nk {
                if reach[idx(i, j, k)] || !ok(i, j, k) {
                    continue;
                }
                'scan: for di in 0..=1usize {
                    for dj in 0..=1usize {
                        for dk in 0..=1usize {
                            if di + dj + dk == 0 || di > i || dj > j || dk > k {
                                continue;
                            }
                            if reach[idx(i - di, j - dj, k - dk)] {
                                reach[idx(i, j, k)] = true;
                                break 'scan;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(reach[total - 1])
}

/// Single-cell monotone grid search between two segments. Entry sets are
/// given as intervals on the left (t) and bottom (s) sides; returns
/// reachability flags for the grid points of the right and top sides.
#[allow(clippy::too_many_arguments)]
pub fn oracle_cell_reach(
    red_a: &[f64],
    red_b: &[f64],
    blue_a: &[f64],
    blue_b: &[f64],
    delta: f64,
    entries_left: &[(f64, f64)],
    entries_bottom: &[(f64, f64)],
    res: usize,
) -> (Vec<bool>, Vec<bool>) {
    let pt = |a: &[f64], b: &[f64], t: f64| -> Vec<f64> {
        a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect()
    };
    let free = |s: f64, t: f64| euclid(&pt(red_a, red_b, s), &pt(blue_a, blue_b, t)) >= delta;
    let g = |i: usize| i as f64 / res as f64;
    let in_any = |x: f64, set: &[(f64, f64)]| set.iter().any(|&(a, b)| x >= a - 1e-12 && x <= b + 1e-12);
    let n = res + 1;
    let mut reach = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            if !free(g(i), g(j)) {
                continue;
            }
            let mut r = (i == 0 && in_any(g(j), entries_left))
                || (j == 0 && in_any(g(i), entries_bottom));
            if !r {
                r = (i > 0 && reach[(i - 1) * n + j])
                    || (j > 0 && reach[i * n + j - 1])
                    || (i > 0 && j > 0 && reach[(i - 1) * n + j - 1]);
            }
            reach[i * n + j] = r;
        }
    }
    let right: Vec<bool> = (0..n).map(|j| reach[(n - 1) * n + j]).collect();
    let top: Vec<bool> = (0..n).map(|i| reach[i * n + n - 1]).collect();
    (right, top)
}

/// One-sided sweep oracle: Red walks its curve forward while Blue moves in
/// any direction on a closed curve. Between red steps, Blue may relocate
/// anywhere within its current free connected component.
pub fn oracle_one_sided_closed(
    red: &PolylineCurve,
    blue_cycle: &[Vec<f64>],
    blue_start: Option<usize>,
    delta: f64,
    cfg: &GridConfig,
) -> Result<bool> {
    let m = blue_cycle.len();
    let res = cfg.resolution;
    // Blue nodes: res samples per cyclic edge.
    let mut nodes: Vec<Vec<f64>> = Vec::with_capacity(m * res);
    for e in 0..m {
        let a = &blue_cycle[e];
        let b = &blue_cycle[(e + 1) % m];
        for k in 0..res {
            let t = k as f64 / res as f64;
            nodes.push(a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect());
        }
    }
    let nn = nodes.len();
    let red_params = sample_params(red.len(), res);
    if nn * red_params.len() > cfg.max_states {
        return Err(Error::StateCapExceeded(nn * red_params.len()));
    }
    let free_at = |rp: &[f64]| -> Vec<bool> {
        nodes.iter().map(|q| euclid(rp, q) >= delta).collect()
    };
    let expand = |set: &mut Vec<bool>, free: &[bool]| {
        // cyclic 1D connectivity
        loop {
            let mut changed = false;
            for i in 0..nn {
                if set[i] {
                    continue;
                }
                if free[i] && (set[(i + 1) % nn] || set[(i + nn - 1) % nn]) {
                    set[i] = true;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
    };
    let r0 = curve_at(red, red_params[0]);
    let f0 = free_at(&r0);
    let mut set: Vec<bool> = match blue_start {
        Some(i) => {
            let mut s = vec![false; nn];
            if !f0[i] {
                return Ok(false);
            }
            s[i] = true;
            s
        }
        None => f0.clone(),
    };
    expand(&mut set, &f0);
    for &t in red_params.iter().skip(1) {
        let rp = curve_at(red, t);
        let f = free_at(&rp);
        for i in 0..nn {
            set[i] = set[i] && f[i];
        }
        expand(&mut set, &f);
        if !set.iter().any(|&x| x) {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Polygon helpers (oracle-local; intentionally not shared with solvers)

fn seg_orient(a: (f64, f64), b: (f64, f64), c: (f64, f64)) -> f64 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

fn segs_properly_cross(p: (f64, f64), q: (f64, f64), a: (f64, f64), b: (f64, f64)) -> bool {
    // Endpoints within 1e-9 of the other segment's line count as touching,
    // not crossing; computed boundary points carry that much noise.
    let tpq = 1e-9 * (q.0 - p.0).hypot(q.1 - p.1);
    let tab = 1e-9 * (b.0 - a.0).hypot(b.1 - a.1);
    let d1 = seg_orient(p, q, a);
    let d2 = seg_orient(p, q, b);
    let d3 = seg_orient(a, b, p);
    let d4 = seg_orient(a, b, q);
    ((d1 > tpq && d2 < -tpq) || (d1 < -tpq && d2 > tpq))
        && ((d3 > tab && d4 < -tab) || (d3 < -tab && d4 > tab))
}

fn point_in_poly(poly: &[(f64, f64)], p: (f64, f64)) -> bool {
    // On-boundary counts as inside (within a small tolerance).
    let n = poly.len();
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        let cross = seg_orient(a, b, p);
        let len2 = (b.0 - a.0).powi(2) + (b.1 - a.1).powi(2);
        if cross.abs() < 1e-9 * len2.sqrt().max(1.0) {
            let dot = (p.0 - a.0) * (b.0 - a.0) + (p.1 - a.1) * (b.1 - a.1);
            if dot >= -1e-12 && dot <= len2 + 1e-12 {
                return true;
            }
        }
    }
    let mut inside = false;
    let mut j = n - 1;
    for i in 0..n {
        if (poly[i].1 > p.1) != (poly[j].1 > p.1) {
            let xint = poly[j].0 + (p.1 - poly[j].1) / (poly[i].1 - poly[j].1) * (poly[i].0 - poly[j].0);
            if p.0 < xint {
                inside = !inside;
            }
        }
        j = i;
    }
    inside
}

fn visible(poly: &[(f64, f64)], p: (f64, f64), q: (f64, f64)) -> bool {
    let n = poly.len();
    for i in 0..n {
        if segs_properly_cross(p, q, poly[i], poly[(i + 1) % n]) {
            return false;
        }
    }
    for f in [0.25, 0.5, 0.75] {
        let mid = (p.0 + f * (q.0 - p.0), p.1 + f * (q.1 - p.1));
        if !point_in_poly(poly, mid) {
            return false;
        }
    }
    true
}

/// Geodesic distance inside a simple polygon via Dijkstra on the visibility
/// graph over polygon vertices augmented with the two query points.
pub fn oracle_geodesic_distance(poly: &[(f64, f64)], p: (f64, f64), q: (f64, f64)) -> f64 {
    let mut pts: Vec<(f64, f64)> = poly.to_vec();
    pts.push(p);
    pts.push(q);
    let n = pts.len();
    let (pi, qi) = (n - 2, n - 1);
    let mut dist = vec![f64::INFINITY; n];
    dist[pi] = 0.0;
    let mut done = vec![false; n];
    loop {
        let mut u = usize::MAX;
        let mut best = f64::INFINITY;
        for i in 0..n {
            if !done[i] && dist[i] < best {
                best = dist[i];
                u = i;
            }
        }
        if u == usize::MAX || u == qi {
            break;
        }
        done[u] = true;
        for v in 0..n {
            if done[v] || v == u {
                continue;
            }
            if visible(poly, pts[u], pts[v]) {
                let w = ((pts[u].0 - pts[v].0).powi(2) + (pts[u].1 - pts[v].1).powi(2)).sqrt();
                if dist[u] + w < dist[v] {
                    dist[v] = dist[u] + w;
                }
            }
        }
    }
    dist[qi]
}

/// Time-expanded escape search in a polygon: Blue occupies free grid points
/// (geodesic distance to Red at least delta) and may relocate within its
/// free connected component between Red samples.
pub fn oracle_escape_grid(
    poly: &[(f64, f64)],
    b: (f64, f64),
    red: &PolylineCurve,
    delta: f64,
    cfg: &GridConfig,
) -> Result<bool> {
    let res = cfg.resolution;
    let (mut xmin, mut ymin, mut xmax, mut ymax) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for &(x, y) in poly {
        xmin = xmin.min(x);
        ymin = ymin.min(y);
        xmax = xmax.max(x);
        ymax = ymax.max(y);
    }
    let step = ((xmax - xmin).max(ymax - ymin)) / res as f64;
    let mut nodes: Vec<(f64, f64)> = Vec::new();
    let mut index: HashMap<(i64, i64), usize> = HashMap::new();
    let cols = ((xmax - xmin) / step).ceil() as i64 + 1;
    let rows = ((ymax - ymin) / step).ceil() as i64 + 1;
    for gy in 0..=rows {
        for gx in 0..=cols {
            let p = (xmin + gx as f64 * step, ymin + gy as f64 * step);
            if point_in_poly(poly, p) {
                index.insert((gx, gy), nodes.len());
                nodes.push(p);
            }
        }
    }
    let nn = nodes.len();
    if nn == 0 {
        return Ok(false);
    }
    // 8-neighbor adjacency with an interior check on the connecting segment.
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nn];
    for (&(gx, gy), &i) in &index {
        for (dx, dy) in [(1i64, 0i64), (0, 1), (1, 1), (1, -1)] {
            if let Some(&j) = index.get(&(gx + dx, gy + dy)) {
                if visible(poly, nodes[i], nodes[j]) {
                    adj[i].push(j);
                    adj[j].push(i);
                }
            }
        }
    }
    // Vertex-to-vertex geodesic table and per-node visible vertex lists.
    let nv = poly.len();
    let mut vdist = vec![vec![f64::INFINITY; nv]; nv];
    for i in 0..nv {
        for j in 0..nv {
            if i == j {
                vdist[i][j] = 0.0;
            } else if visible(poly, poly[i], poly[j]) {
                vdist[i][j] =
                    ((poly[i].0 - poly[j].0).powi(2) + (poly[i].1 - poly[j].1).powi(2)).sqrt();
            }
        }
    }
    for k in 0..nv {
        for i in 0..nv {
            for j in 0..nv {
                let via = vdist[i][k] + vdist[k][j];
                if via < vdist[i][j] {
                    vdist[i][j] = via;
                }
            }
        }
    }
    let vis_verts: Vec<Vec<usize>> = nodes
        .iter()
        .map(|&p| (0..nv).filter(|&v| visible(poly, p, poly[v])).collect())
        .collect();
    let red_params = sample_params(red.len(), res);
    if red_params.len() * nn > cfg.max_states {
        return Err(Error::StateCapExceeded(red_params.len() * nn));
    }
    let geo_to_red = |rp: (f64, f64), node: usize| -> f64 {
        let p = nodes[node];
        let mut best = f64::INFINITY;
        if visible(poly, p, rp) {
            best = ((p.0 - rp.0).powi(2) + (p.1 - rp.1).powi(2)).sqrt();
        }
        // distances from red point to each vertex
        for &v in &vis_verts[node] {
            let pv = ((p.0 - poly[v].0).powi(2) + (p.1 - poly[v].1).powi(2)).sqrt();
            for w in 0..nv {
                if vdist[v][w].is_finite() && visible(poly, poly[w], rp) {
                    let rw = ((poly[w].0 - rp.0).powi(2) + (poly[w].1 - rp.1).powi(2)).sqrt();
                    best = best.min(pv + vdist[v][w] + rw);
                }
            }
        }
        best
    };
    // Precompute per-step red-to-vertex distances to avoid the inner loops.
    let free_sets: Vec<Vec<bool>> = red_params
        .iter()
        .map(|&t| {
            let rpv = curve_at(red, t);
            let rp = (rpv[0], rpv[1]);
            let mut to_vert = vec![f64::INFINITY; nv];
            for w in 0..nv {
                if visible(poly, poly[w], rp) {
                    let rw = ((poly[w].0 - rp.0).powi(2) + (poly[w].1 - rp.1).powi(2)).sqrt();
                    for v in 0..nv {
                        if vdist[v][w].is_finite() {
                            to_vert[v] = to_vert[v].min(vdist[v][w] + rw);
                        }
                    }
                }
            }
            (0..nn)
                .map(|i| {
                    let p = nodes[i];
                    let mut d = if visible(poly, p, rp) {
                        ((p.0 - rp.0).powi(2) + (p.1 - rp.1).powi(2)).sqrt()
                    } else {
                        f64::INFINITY
                    };
                    for &v in &vis_verts[i] {
                        let pv =
                            ((p.0 - poly[v].0).powi(2) + (p.1 - poly[v].1).powi(2)).sqrt();
                        d = d.min(pv + to_vert[v]);
                    }
                    d >= delta
                })
                .collect()
        })
        .collect();
    let _ = geo_to_red;
    let expand = |set: &mut Vec<bool>, free: &[bool]| {
        let mut stack: Vec<usize> = (0..nn).filter(|&i| set[i]).collect();
        while let Some(i) = stack.pop() {
            for &j in &adj[i] {
                if free[j] && !set[j] {
                    set[j] = true;
                    stack.push(j);
                }
            }
        }
    };
    // Blue starts at b: seed with nearby free grid nodes visible from b.
    let mut set = vec![false; nn];
    for i in 0..nn {
        let d = ((nodes[i].0 - b.0).powi(2) + (nodes[i].1 - b.1).powi(2)).sqrt();
        if d <= 1.6 * step && free_sets[0][i] && visible(poly, nodes[i], b) {
            set[i] = true;
        }
    }
    // b itself must be free at the first red position.
    let rpv = curve_at(red, red_params[0]);
    if oracle_geodesic_distance(poly, (rpv[0], rpv[1]), b) < delta {
        return Ok(false);
    }
    expand(&mut set, &free_sets[0]);
    for f in free_sets.iter().skip(1) {
        for i in 0..nn {
            set[i] = set[i] && f[i];
        }
        expand(&mut set, f);
        if !set.iter().any(|&x| x) {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Tree game

/// Enumerate all cyclic depth-first tours (every root, every child order),
/// invoking `f` with the vertex sequence of one period. `f` returning false
/// short-circuits the enumeration; the return value is whether all invoked
/// tours returned true.
pub fn for_each_dfs_tour(tree: &WeightedTree, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn rec(
        adj: &[Vec<usize>],
        v: usize,
        parent: Option<usize>,
        tour: &mut Vec<usize>,
        cont: &mut dyn FnMut(&mut Vec<usize>) -> bool,
    ) -> bool {
        let children: Vec<usize> = adj[v]
            .iter()
            .copied()
            .filter(|&c| Some(c) != parent)
            .collect();
        if children.is_empty() {
            return cont(tour);
        }
        permute(&children, &mut Vec::new(), &mut vec![false; children.len()], &mut |order| {
            order_rec(adj, v, parent, order, 0, tour, cont)
        })
    }
    fn order_rec(
        adj: &[Vec<usize>],
        v: usize,
        parent: Option<usize>,
        order: &[usize],
        k: usize,
        tour: &mut Vec<usize>,
        cont: &mut dyn FnMut(&mut Vec<usize>) -> bool,
    ) -> bool {
        if k == order.len() {
            return cont(tour);
        }
        let c = order[k];
        tour.push(c);
        let ok = rec(adj, c, Some(v), tour, &mut |t| {
            t.push(v);
            let ok = order_rec(adj, v, parent, order, k + 1, t, cont);
            t.pop();
            ok
        });
        tour.pop();
        ok
    }
    fn permute(
        items: &[usize],
        cur: &mut Vec<usize>,
        used: &mut Vec<bool>,
        f: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if cur.len() == items.len() {
            return f(cur);
        }
        for i in 0..items.len() {
            if used[i] {
                continue;
            }
            used[i] = true;
            cur.push(items[i]);
            let ok = permute(items, cur, used, f);
            cur.pop();
            used[i] = false;
            if !ok {
                return false;
            }
        }
        true
    }
    let adj = tree.adjacency();
    for root in 0..tree.n {
        let mut tour = vec![root];
        let ok = rec(&adj, root, None, &mut tour, &mut |t| f(t));
        if !ok {
            return false;
        }
    }
    true
}

/// Adversarial game search on a tree: YES iff Blue (unbounded speed, points
/// discretized at edge subdivisions) can maintain distance >= value forever
/// against every depth-first tour of Red.
pub fn oracle_tree_game(tree: &WeightedTree, value: f64, cfg: &GridConfig) -> Result<bool> {
    if tree.n > 12 {
        return Err(Error::StateCapExceeded(tree.n));
    }
    if value <= 0.0 {
        return Ok(true);
    }
    let res = cfg.resolution.clamp(2, 8);
    // Subdivision nodes: original vertices plus res-1 interior points per edge.
    let mut coords: Vec<(usize, usize, f64)> = (0..tree.n).map(|v| (v, v, 0.0)).collect();
    for &(u, v, _) in &tree.edges {
        for k in 1..res {
            coords.push((u, v, k as f64 / res as f64));
        }
    }
    let nn = coords.len();
    if nn > 64 {
        return Err(Error::StateCapExceeded(nn));
    }
    // Distances between subdivision nodes via vertex-to-vertex distances.
    let vd = tree.all_pairs();
    let edge_len: HashMap<(usize, usize), f64> = tree
        .edges
        .iter()
        .flat_map(|&(u, v, w)| [((u, v), w), ((v, u), w)])
        .collect();
    let node_dist = |a: usize, b: usize| -> f64 {
        let (ua, va, ta) = coords[a];
        let (ub, vb, tb) = coords[b];
        let la = if ua == va { 0.0 } else { edge_len[&(ua, va)] };
        let lb = if ub == vb { 0.0 } else { edge_len[&(ub, vb)] };
        if ua == ub && va == vb && ua != va {
            let through = (ta * la + tb * lb).min((la - ta * la) + (lb - tb * lb));
            return ((ta - tb).abs() * la).min(through);
        }
        let mut best = f64::INFINITY;
        for (ea, da) in [(ua, ta * la), (va, la - ta * la)] {
            for (eb, db) in [(ub, tb * lb), (vb, lb - tb * lb)] {
                best = best.min(da + vd[ea][eb] + db);
            }
        }
        best
    };
    let mut dmat = vec![vec![0.0f64; nn]; nn];
    for a in 0..nn {
        for b in 0..nn {
            dmat[a][b] = node_dist(a, b);
        }
    }
    // Bitmask adjacency along edges.
    let mut adj = vec![0u64; nn];
    let mut connect = |a: usize, b: usize| {
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    };
    let mut edge_nodes: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, &(u, v, t)) in coords.iter().enumerate() {
        if u != v {
            edge_nodes.entry((u, v)).or_default().push(i);
            let _ = t;
        }
    }
    for (&(u, v), interior) in &edge_nodes {
        let mut chain = vec![u];
        chain.extend(interior.iter().copied());
        chain.push(v);
        for w in chain.windows(2) {
            connect(w[0], w[1]);
        }
    }
    let node_of_vertex = |v: usize| v; // vertices come first in coords
    let expand = |mut set: u64, free: u64| -> u64 {
        loop {
            let mut grow = 0u64;
            let mut s = set;
            while s != 0 {
                let i = s.trailing_zeros() as usize;
                s &= s - 1;
                grow |= adj[i];
            }
            let new = set | (grow & free);
            if new == set {
                return set;
            }
            set = new;
        }
    };
    let eps = 1e-9;
    let survives_tour = |tour: &[usize]| -> bool {
        // Red positions over one period: subdivision nodes along each tour edge.
        let mut red_seq: Vec<usize> = vec![node_of_vertex(tour[0])];
        for w in tour.windows(2) {
            let (u, v) = (w[0], w[1]);
            let interior: Vec<usize> = if let Some(list) = edge_nodes.get(&(u, v)) {
                list.clone()
            } else {
                let mut l = edge_nodes.get(&(v, u)).cloned().unwrap_or_default();
                l.reverse();
                l
            };
            red_seq.extend(interior);
            red_seq.push(node_of_vertex(v));
        }
        let free_of = |r: usize| -> u64 {
            let mut f = 0u64;
            for i in 0..nn {
                if dmat[r][i] >= value - eps {
                    f |= 1 << i;
                }
            }
            f
        };
        let frees: Vec<u64> = red_seq.iter().map(|&r| free_of(r)).collect();
        let run_period = |start: u64| -> u64 {
            let mut set = start;
            for f in frees.iter().skip(1) {
                set = expand(set & f, *f);
                if set == 0 {
                    return 0;
                }
            }
            set & frees[0]
        };
        let mut set = expand(frees[0], frees[0]);
        let mut seen: HashSet<u64> = HashSet::new();
        loop {
            if set == 0 {
                return false;
            }
            if !seen.insert(set) {
                return true; // periodic and never empty
            }
            set = run_period(set);
        }
    };
    Ok(for_each_dfs_tour(tree, &mut |tour| survives_tour(tour)))
}

// ---------------------------------------------------------------------------
// Abstract graph game

/// Brute-force survival search for Blue on an abstract graph: state is
/// (step, blue vertex); Blue needs hop distance >= delta from Red at every
/// step and can move at most `speed` hops between steps.
pub fn oracle_abstract_game(
    adj: &[Vec<usize>],
    red_path: &[usize],
    speed: usize,
    delta: usize,
    blue_start: Option<usize>,
) -> bool {
    let n = adj.len();
    let hops = {
        let mut d = vec![vec![usize::MAX; n]; n];
        for (s, row) in d.iter_mut().enumerate() {
            row[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &adj[u] {
                    if row[v] == usize::MAX {
                        row[v] = row[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
        }
        d
    };
    let k = red_path.len();
    let mut alive: Vec<bool> = (0..n).map(|v| hops[v][red_path[k - 1]] >= delta).collect();
    for step in (0..k - 1).rev() {
        let prev = alive;
        alive = (0..n)
            .map(|v| {
                hops[v][red_path[step]] >= delta
                    && (0..n).any(|w| hops[v][w] <= speed && prev[w])
            })
            .collect();
    }
    match blue_start {
        Some(b) => alive[b],
        None => alive.iter().any(|&x| x),
    }
}

/// Time-expanded escape on a geometric graph: Blue occupies subdivision
/// nodes of G and relocates within its free component between Red samples.
pub fn oracle_graph_escape_grid(
    red: &PolylineCurve,
    g_nodes: &[(f64, f64)],
    g_edges: &[(usize, usize)],
    delta: f64,
    res: usize,
    geodesic: bool,
) -> Result<bool> {
    // Subdivision nodes: graph vertices plus res-1 interior points per edge.
    let mut pts: Vec<(f64, f64)> = g_nodes.to_vec();
    let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); g_nodes.len()];
    for &(u, v) in g_edges {
        let (a, b) = (g_nodes[u], g_nodes[v]);
        let len = ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt();
        let seg = len / res as f64;
        let mut prev = u;
        for k in 1..res {
            let t = k as f64 / res as f64;
            let id = pts.len();
            pts.push((a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1)));
            adj.push(Vec::new());
            adj[prev].push((id, seg));
            adj[id].push((prev, seg));
            prev = id;
        }
        adj[prev].push((v, seg));
        adj[v].push((prev, seg));
    }
    let nn = pts.len();
    let red_params = sample_params(red.len(), res);
    if nn * red_params.len() > 10_000_000 {
        return Err(Error::StateCapExceeded(nn * red_params.len()));
    }
    let dijkstra_from = |src: usize| -> Vec<f64> {
        let mut d = vec![f64::INFINITY; nn];
        d[src] = 0.0;
        let mut done = vec![false; nn];
        loop {
            let mut u = usize::MAX;
            let mut best = f64::INFINITY;
            for i in 0..nn {
                if !done[i] && d[i] < best {
                    best = d[i];
                    u = i;
                }
            }
            if u == usize::MAX {
                break;
            }
            done[u] = true;
            for &(v, w) in &adj[u] {
                if d[u] + w < d[v] {
                    d[v] = d[u] + w;
                }
            }
        }
        d
    };
    let free_at = |t: f64| -> Vec<bool> {
        let rv = curve_at(red, t);
        let rp = (rv[0], rv[1]);
        if !geodesic {
            return (0..nn)
                .map(|i| ((rp.0 - pts[i].0).powi(2) + (rp.1 - pts[i].1).powi(2)).sqrt() >= delta)
                .collect();
        }
        let nearest = (0..nn)
            .min_by(|&a, &b| {
                let da = (rp.0 - pts[a].0).powi(2) + (rp.1 - pts[a].1).powi(2);
                let db = (rp.0 - pts[b].0).powi(2) + (rp.1 - pts[b].1).powi(2);
                da.partial_cmp(&db).unwrap()
            })
            .unwrap();
        let d = dijkstra_from(nearest);
        (0..nn).map(|i| d[i] >= delta).collect()
    };
    let expand = |set: &mut Vec<bool>, free: &[bool]| {
        let mut stack: Vec<usize> = (0..nn).filter(|&i| set[i]).collect();
        while let Some(i) = stack.pop() {
            for &(j, _) in &adj[i] {
                if free[j] && !set[j] {
                    set[j] = true;
                    stack.push(j);
                }
            }
        }
    };
    let f0 = free_at(red_params[0]);
    let mut set = f0.clone();
    expand(&mut set, &f0);
    for &t in red_params.iter().skip(1) {
        let f = free_at(t);
        for i in 0..nn {
            set[i] = set[i] && f[i];
        }
        expand(&mut set, &f);
        if !set.iter().any(|&x| x) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Geodesic distance on a geometric graph between a point at arclength `x`
/// along edge `e` and a point at arclength `y` along edge `f`, computed by
/// splitting the edges at the query points and running Dijkstra.
pub fn oracle_split_edge_distance(
    nodes: &[(f64, f64)],
    edges: &[(usize, usize)],
    e: usize,
    x: f64,
    f: usize,
    y: f64,
) -> f64 {
    let elen = |k: usize| -> f64 {
        let (u, v) = edges[k];
        let (a, b) = (nodes[u], nodes[v]);
        ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt()
    };
    let n = nodes.len();
    let pe = n;
    let pf = n + 1;
    let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n + 2];
    let add = |a: usize, b: usize, w: f64, adj: &mut Vec<Vec<(usize, f64)>>| {
        adj[a].push((b, w));
        adj[b].push((a, w));
    };
    for (k, &(u, v)) in edges.iter().enumerate() {
        if k != e && k != f {
            add(u, v, elen(k), &mut adj);
        }
    }
    let (eu, ev) = edges[e];
    add(pe, eu, x, &mut adj);
    add(pe, ev, elen(e) - x, &mut adj);
    let (fu, fv) = edges[f];
    add(pf, fu, y, &mut adj);
    add(pf, fv, elen(f) - y, &mut adj);
    if e == f {
        add(pe, pf, (x - y).abs(), &mut adj);
    }
    let mut dist = vec![f64::INFINITY; n + 2];
    dist[pe] = 0.0;
    let mut done = vec![false; n + 2];
    loop {
        let mut u = usize::MAX;
        let mut best = f64::INFINITY;
        for i in 0..n + 2 {
            if !done[i] && dist[i] < best {
                best = dist[i];
                u = i;
            }
        }
        if u == usize::MAX {
            break;
        }
        done[u] = true;
        for &(v, w) in &adj[u] {
            if dist[u] + w < dist[v] {
                dist[v] = dist[u] + w;
            }
        }
    }
    dist[pf]
}
