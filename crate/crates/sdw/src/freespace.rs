//! Continuous max-min separation between two polygonal curves via a
//! "flipped" free-space diagram: per cell the forbidden region (distance
//! below the threshold) is an open convex sublevel set of a quadratic, and
//! a monotone traversal must avoid it. Exit reachability per cell follows
//! from a chain-blocking argument: a monotone path from p to q exists iff
//! the forbidden set does not meet both the upper-left and the lower-right
//! boundary chains of the rectangle spanned by p and q.

use crate::geom::{dist, point_segment_distance, ClosedCurve, PolylineCurve, Schedule, SeparationMetric};
use crate::{Error, Result, EPS_VAL};

const INF: f64 = 1e18;
const TINY: f64 = 1e-14;

type Iv = (f64, f64);

fn overlap_open_closed(open: Option<Iv>, x: f64, y: f64) -> bool {
    match open {
        Some((a, b)) => a < y && x < b,
        None => false,
    }
}

/// Squared-distance quadratic over one red edge x one blue edge:
/// `Q(s, t) = |w + s u - t v|^2` with `u, v` the edge vectors and
/// `w` the offset between the edge start points.
#[derive(Debug, Clone)]
pub struct CellQuadratic {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    e: f64,
    f: f64,
}

fn solve_open_sublevel(aa: f64, bb: f64, cc: f64) -> Option<Iv> {
    // Open solution interval of aa x^2 + bb x + cc < 0 with aa >= 0.
    if aa < TINY {
        if bb.abs() < TINY {
            return if cc < 0.0 { Some((-INF, INF)) } else { None };
        }
        let r = -cc / bb;
        return if bb > 0.0 { Some((-INF, r)) } else { Some((r, INF)) };
    }
    let disc = bb * bb - 4.0 * aa * cc;
    if disc <= 0.0 {
        return None;
    }
    let sq = disc.sqrt();
    Some(((-bb - sq) / (2.0 * aa), (-bb + sq) / (2.0 * aa)))
}

impl CellQuadratic {
    pub fn new(red_a: &[f64], red_b: &[f64], blue_a: &[f64], blue_b: &[f64]) -> Self {
        let dim = red_a.len();
        let mut a = 0.0;
        let mut b = 0.0;
        let mut c = 0.0;
        let mut d = 0.0;
        let mut e = 0.0;
        let mut f = 0.0;
        for k in 0..dim {
            let u = red_b[k] - red_a[k];
            let v = blue_b[k] - blue_a[k];
            let w = red_a[k] - blue_a[k];
            a += u * u;
            b += -2.0 * u * v;
            c += v * v;
            d += 2.0 * w * u;
            e += -2.0 * w * v;
            f += w * w;
        }
        CellQuadratic { a, b, c, d, e, f }
    }

    pub fn q(&self, s: f64, t: f64) -> f64 {
        self.a * s * s + self.b * s * t + self.c * t * t + self.d * s + self.e * t + self.f
    }

    /// Open t-interval of the forbidden set on the vertical line at `s`.
    pub(crate) fn fvert(&self, s: f64, d2: f64) -> Option<Iv> {
        solve_open_sublevel(self.c, self.b * s + self.e, self.a * s * s + self.d * s + self.f - d2)
    }

    /// Open s-interval of the forbidden set on the horizontal line at `t`.
    pub(crate) fn fhorz(&self, t: f64, d2: f64) -> Option<Iv> {
        solve_open_sublevel(self.a, self.b * t + self.d, self.c * t * t + self.e * t + self.f - d2)
    }

    /// Minimum of Q over the closed unit cell.
    pub fn min_q(&self) -> f64 {
        let mut best = f64::INFINITY;
        for &(s, t) in &[(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)] {
            best = best.min(self.q(s, t));
        }
        // Edge minima.
        for s in [0.0, 1.0] {
            // minimize over t: 2c t + (b s + e) = 0
            if self.c > TINY {
                let t = -(self.b * s + self.e) / (2.0 * self.c);
                if (0.0..=1.0).contains(&t) {
                    best = best.min(self.q(s, t));
                }
            }
        }
        for t in [0.0, 1.0] {
            if self.a > TINY {
                let s = -(self.b * t + self.d) / (2.0 * self.a);
                if (0.0..=1.0).contains(&s) {
                    best = best.min(self.q(s, t));
                }
            }
        }
        // Interior stationary point.
        let det = 4.0 * self.a * self.c - self.b * self.b;
        if det > TINY {
            let s = (self.b * self.e - 2.0 * self.c * self.d) / det;
            let t = (self.b * self.d - 2.0 * self.a * self.e) / det;
            if (0.0..=1.0).contains(&s) && (0.0..=1.0).contains(&t) {
                best = best.min(self.q(s, t));
            }
        }
        best
    }

    /// Maximum of Q over the closed unit cell (convexity: attained at a corner).
    pub fn max_q(&self) -> f64 {
        [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)]
            .iter()
            .map(|&(s, t)| self.q(s, t))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Minimum of Q over `s in [0,1]` at fixed t (convex in t overall).
    fn min_q_at_t(&self, t: f64) -> f64 {
        let mut best = self.q(0.0, t).min(self.q(1.0, t));
        if self.a > TINY {
            let s = -(self.b * t + self.d) / (2.0 * self.a);
            if (0.0..=1.0).contains(&s) {
                best = best.min(self.q(s, t));
            }
        }
        best
    }

    fn min_q_at_s(&self, s: f64) -> f64 {
        let mut best = self.q(s, 0.0).min(self.q(s, 1.0));
        if self.c > TINY {
            let t = -(self.b * s + self.e) / (2.0 * self.c);
            if (0.0..=1.0).contains(&t) {
                best = best.min(self.q(s, t));
            }
        }
        best
    }

    /// t-projection of the forbidden set intersected with the unit cell,
    /// found by bisection on the convex function `t -> min_s Q(s, t)`.
    pub(crate) fn t_extent(&self, d2: f64) -> Option<Iv> {
        extent(|t| self.min_q_at_t(t), d2)
    }

    pub(crate) fn s_extent(&self, d2: f64) -> Option<Iv> {
        extent(|s| self.min_q_at_s(s), d2)
    }

    /// Does the open forbidden set block every monotone path across the
    /// rectangle `[s0, s1] x [t0, t1]`?
    pub(crate) fn blocked(&self, d2: f64, s0: f64, s1: f64, t0: f64, t1: f64) -> bool {
        let ul = overlap_open_closed(self.fvert(s0, d2), t0, t1)
            || overlap_open_closed(self.fhorz(t1, d2), s0, s1);
        if !ul {
            return false;
        }
        overlap_open_closed(self.fhorz(t0, d2), s0, s1)
            || overlap_open_closed(self.fvert(s1, d2), t0, t1)
    }
}

/// Locate `{x in [0,1] : g(x) < d2}` for convex `g` by ternary search plus
/// bisection on both flanks.
fn extent(g: impl Fn(f64) -> f64, d2: f64) -> Option<Iv> {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..80 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if g(m1) < g(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    let xmin = 0.5 * (lo + hi);
    if g(xmin) >= d2 {
        return None;
    }
    let left = if g(0.0) < d2 {
        0.0
    } else {
        let (mut a, mut b) = (0.0, xmin);
        for _ in 0..60 {
            let m = 0.5 * (a + b);
            if g(m) < d2 {
                b = m;
            } else {
                a = m;
            }
        }
        0.5 * (a + b)
    };
    let right = if g(1.0) < d2 {
        1.0
    } else {
        let (mut a, mut b) = (xmin, 1.0);
        for _ in 0..60 {
            let m = 0.5 * (a + b);
            if g(m) < d2 {
                a = m;
            } else {
                b = m;
            }
        }
        0.5 * (a + b)
    };
    Some((left, right))
}

/// Closed free t-intervals on the vertical line at `s` of a cell: the
/// complement of the open forbidden interval within `[0, 1]`.
pub fn cell_free_intervals(cell: &CellQuadratic, delta: f64, s: f64) -> Vec<Iv> {
    let d2 = delta * delta;
    match cell.fvert(s, d2) {
        None => vec![(0.0, 1.0)],
        Some((a, b)) => {
            let mut out = Vec::new();
            if a > 0.0 {
                out.push((0.0, a.min(1.0)));
            }
            if b < 1.0 {
                out.push((b.max(0.0), 1.0));
            }
            out
        }
    }
}

fn probe_points(a: f64, b: f64, cands: &[f64]) -> Vec<f64> {
    let mut pts = vec![a, b];
    for &c in cands {
        if c > a && c < b {
            pts.push(c);
        }
    }
    pts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let mut out = Vec::with_capacity(pts.len() * 2);
    for i in 0..pts.len() {
        out.push(pts[i]);
        if i + 1 < pts.len() {
            out.push(0.5 * (pts[i] + pts[i + 1]));
        }
    }
    out
}

/// Like `entry_exists`, but returns a passing point and prefers interior
/// probes so chosen waypoints stay strictly inside reachable intervals
/// (their endpoints can sit exactly on the open forbidden boundary).
fn pick_entry(
    entries: &[Iv],
    cap: f64,
    cands: &[f64],
    mut test: impl FnMut(f64) -> bool,
) -> Option<f64> {
    for &(a, b) in entries {
        let hi = b.min(cap);
        if a > hi + TINY {
            continue;
        }
        let pts = probe_points(a, hi.max(a), cands);
        // Breakpoints sit at even indices, midpoints at odd ones.
        let mut interior: Vec<f64> = pts.iter().skip(1).step_by(2).copied().collect();
        for k in (0..pts.len()).step_by(2) {
            let p = pts[k];
            for off in [1e-7, 1e-9] {
                let span = (hi - a).max(1e-6);
                interior.push((p + off * span).min(hi));
                interior.push((p - off * span).max(a));
            }
        }
        for p in interior.into_iter().chain(pts) {
            if test(p) {
                return Some(p);
            }
        }
    }
    None
}

fn entry_exists(entries: &[Iv], cap: f64, cands: &[f64], mut test: impl FnMut(f64) -> bool) -> bool {
    for &(a, b) in entries {
        let hi = b.min(cap);
        if a > hi + TINY {
            continue;
        }
        for p in probe_points(a, hi.max(a), cands) {
            if test(p) {
                return true;
            }
        }
    }
    false
}

struct CellCtx {
    d2: f64,
    textent: Option<Iv>,
    sextent: Option<Iv>,
    fv0: Option<Iv>,
    fv1: Option<Iv>,
    fh0: Option<Iv>,
    fh1: Option<Iv>,
}

impl CellCtx {
    fn new(cell: &CellQuadratic, d2: f64) -> Self {
        CellCtx {
            d2,
            textent: cell.t_extent(d2),
            sextent: cell.s_extent(d2),
            fv0: cell.fvert(0.0, d2),
            fv1: cell.fvert(1.0, d2),
            fh0: cell.fhorz(0.0, d2),
            fh1: cell.fhorz(1.0, d2),
        }
    }
}

fn exit_right(cell: &CellQuadratic, ctx: &CellCtx, y: f64, left: &[Iv], bottom: &[Iv]) -> bool {
    if cell.q(1.0, y) < ctx.d2 {
        return false;
    }
    let mut t0_cands: Vec<f64> = Vec::new();
    if let Some((a, b)) = ctx.fv0 {
        t0_cands.extend([a, b]);
    }
    if let Some((a, b)) = ctx.fv1 {
        t0_cands.extend([a, b]);
    }
    if let Some((a, b)) = ctx.textent {
        t0_cands.extend([a, b]);
    }
    if entry_exists(left, y, &t0_cands, |t0| !cell.blocked(ctx.d2, 0.0, 1.0, t0, y)) {
        return true;
    }
    let mut s0_cands: Vec<f64> = Vec::new();
    if let Some((a, b)) = ctx.sextent {
        s0_cands.extend([a, b]);
    }
    if let Some((a, b)) = cell.fhorz(y, ctx.d2) {
        s0_cands.extend([a, b]);
    }
    if let Some((_, b)) = ctx.fh0 {
        s0_cands.push(b);
    }
    entry_exists(bottom, 1.0, &s0_cands, |s0| !cell.blocked(ctx.d2, s0, 1.0, 0.0, y))
}

fn exit_top(cell: &CellQuadratic, ctx: &CellCtx, x: f64, left: &[Iv], bottom: &[Iv]) -> bool {
    if cell.q(x, 1.0) < ctx.d2 {
        return false;
    }
    let mut s0_cands: Vec<f64> = Vec::new();
    if let Some((a, b)) = ctx.fh0 {
        s0_cands.extend([a, b]);
    }
    if let Some((a, b)) = ctx.fh1 {
        s0_cands.extend([a, b]);
    }
    if let Some((a, b)) = ctx.sextent {
        s0_cands.extend([a, b]);
    }
    if entry_exists(bottom, x, &s0_cands, |s0| !cell.blocked(ctx.d2, s0, x, 0.0, 1.0)) {
        return true;
    }
    let mut t0_cands: Vec<f64> = Vec::new();
    if let Some((a, b)) = ctx.textent {
        t0_cands.extend([a, b]);
    }
    if let Some((a, b)) = cell.fvert(x, ctx.d2) {
        t0_cands.extend([a, b]);
    }
    if let Some((_, b)) = ctx.fv0 {
        t0_cands.push(b);
    }
    entry_exists(left, 1.0, &t0_cands, |t0| !cell.blocked(ctx.d2, 0.0, x, t0, 1.0))
}

/// Classify `[0, 1]` into reachable/unreachable intervals of a predicate
/// that is piecewise constant away from the candidate breakpoints, with
/// recursive refinement around undetected flips.
fn classify(cands: &[f64], mut f: impl FnMut(f64) -> bool) -> Vec<Iv> {
    let mut pts: Vec<f64> = vec![0.0, 1.0];
    for &c in cands {
        if c > 0.0 && c < 1.0 {
            pts.push(c);
        }
    }
    pts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    pts.dedup_by(|a, b| (*a - *b).abs() < 1e-13);

    fn refine(
        a: f64,
        b: f64,
        fa: bool,
        fb: bool,
        f: &mut impl FnMut(f64) -> bool,
        depth: usize,
        budget: &mut usize,
        out: &mut Vec<(f64, f64, bool)>,
    ) {
        let m = 0.5 * (a + b);
        if depth == 0 || b - a < 1e-11 || *budget == 0 {
            let fm = f(m);
            out.push((a, m, fa || fm));
            out.push((m, b, fb || fm));
            return;
        }
        *budget -= 1;
        let fm = f(m);
        let f1 = f(a + 0.25 * (b - a));
        let f3 = f(a + 0.75 * (b - a));
        if fa == fm && fm == fb && f1 == fm && f3 == fm {
            out.push((a, b, fm));
            return;
        }
        refine(a, m, fa, fm, f, depth - 1, budget, out);
        refine(m, b, fm, fb, f, depth - 1, budget, out);
    }

    let vals: Vec<bool> = pts.iter().map(|&p| f(p)).collect();
    let mut pieces: Vec<(f64, f64, bool)> = Vec::new();
    // Bound total work: a flip-dense predicate (numerical noise near a
    // tangency) would otherwise make the recursion exponential.
    let mut budget = 20_000usize;
    for i in 0..pts.len() - 1 {
        refine(pts[i], pts[i + 1], vals[i], vals[i + 1], &mut f, 42, &mut budget, &mut pieces);
    }
    let mut out: Vec<Iv> = Vec::new();
    for (a, b, v) in pieces {
        if !v {
            continue;
        }
        // Gaps below 1e-9 are classification noise, not real blockage;
        // merging them keeps the interval lists from proliferating.
        match out.last_mut() {
            Some(last) if a - last.1 < 1e-9 => last.1 = b,
            _ => out.push((a, b)),
        }
    }
    // Isolated reachable breakpoints (touching configurations).
    for (i, &p) in pts.iter().enumerate() {
        if vals[i] && !out.iter().any(|&(a, b)| p >= a - 1e-12 && p <= b + 1e-12) {
            out.push((p, p));
        }
    }
    out.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    out
}

/// Propagate closed entry intervals on the left (t values at s=0) and
/// bottom (s values at t=0) edges of a cell to its right and top edges.
pub fn propagate_cell(
    cell: &CellQuadratic,
    delta: f64,
    left: &[Iv],
    bottom: &[Iv],
) -> (Vec<Iv>, Vec<Iv>) {
    if left.is_empty() && bottom.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let d2 = delta * delta;
    if cell.max_q() < d2 {
        return (Vec::new(), Vec::new());
    }
    if cell.min_q() >= d2 {
        let left_min = left.iter().map(|iv| iv.0).fold(f64::INFINITY, f64::min);
        let bottom_min = bottom.iter().map(|iv| iv.0).fold(f64::INFINITY, f64::min);
        let right = if !bottom.is_empty() {
            vec![(0.0, 1.0)]
        } else {
            vec![(left_min, 1.0)]
        };
        let top = if !left.is_empty() {
            vec![(0.0, 1.0)]
        } else {
            vec![(bottom_min, 1.0)]
        };
        return (right, top);
    }
    let ctx = CellCtx::new(cell, d2);
    let mut y_cands: Vec<f64> = Vec::new();
    for iv in [ctx.fv0, ctx.fv1, ctx.textent] {
        if let Some((a, b)) = iv {
            y_cands.extend([a, b]);
        }
    }
    for &(a, b) in left {
        y_cands.extend([a, b]);
    }
    let mut bottom_probe_s: Vec<f64> = bottom.iter().flat_map(|&(a, b)| [a, b]).collect();
    if let Some((_, b)) = ctx.fh0 {
        bottom_probe_s.push(b);
    }
    for &s0 in &bottom_probe_s {
        if let Some((a, b)) = cell.fvert(s0, d2) {
            y_cands.extend([a, b]);
        }
    }
    let right = classify(&y_cands, |y| exit_right(cell, &ctx, y, left, bottom));

    let mut x_cands: Vec<f64> = Vec::new();
    for iv in [ctx.fh0, ctx.fh1, ctx.sextent] {
        if let Some((a, b)) = iv {
            x_cands.extend([a, b]);
        }
    }
    for &(a, b) in bottom {
        x_cands.extend([a, b]);
    }
    let mut left_probe_t: Vec<f64> = left.iter().flat_map(|&(a, b)| [a, b]).collect();
    if let Some((_, b)) = ctx.fv0 {
        left_probe_t.push(b);
    }
    for &t0 in &left_probe_t {
        if let Some((a, b)) = cell.fhorz(t0, d2) {
            x_cands.extend([a, b]);
        }
    }
    let top = classify(&x_cands, |x| exit_top(cell, &ctx, x, left, bottom));
    (right, top)
}

fn contains(set: &[Iv], x: f64, eps: f64) -> bool {
    set.iter().any(|&(a, b)| x >= a - eps && x <= b + eps)
}

fn point_to_curve_min(p: &[f64], c: &PolylineCurve) -> f64 {
    if c.len() == 1 {
        return dist(p, &c.points[0]);
    }
    c.points
        .windows(2)
        .map(|w| point_segment_distance(p, &w[0], &w[1]))
        .fold(f64::INFINITY, f64::min)
}

fn check_pair(red: &PolylineCurve, blue: &PolylineCurve) -> Result<()> {
    if red.dim != blue.dim {
        return Err(Error::DimMismatch(red.dim, blue.dim));
    }
    Ok(())
}

/// Decision: can the two curves be traversed (monotonically, start to end)
/// while keeping Euclidean separation at least `delta` throughout?
pub fn decide_ff(red: &PolylineCurve, blue: &PolylineCurve, delta: f64) -> Result<bool> {
    check_pair(red, blue)?;
    let (n, m) = (red.len(), blue.len());
    if n == 1 && m == 1 {
        return Ok(dist(&red.points[0], &blue.points[0]) >= delta);
    }
    if n == 1 {
        return Ok(point_to_curve_min(&red.points[0], blue) >= delta);
    }
    if m == 1 {
        return Ok(point_to_curve_min(&blue.points[0], red) >= delta);
    }
    if dist(&red.points[0], &blue.points[0]) < delta
        || dist(&red.points[n - 1], &blue.points[m - 1]) < delta
    {
        return Ok(false);
    }
    let mut left_next: Vec<Vec<Iv>> = vec![Vec::new(); m - 1];
    let mut last_right: Vec<Iv> = Vec::new();
    for i in 0..n - 1 {
        let mut bottom: Vec<Iv> = Vec::new();
        let mut any = false;
        for j in 0..m - 1 {
            let mut left = std::mem::take(&mut left_next[j]);
            if i == 0 && j == 0 {
                left.push((0.0, 0.0));
                bottom = vec![(0.0, 0.0)];
            }
            if left.is_empty() && bottom.is_empty() {
                continue;
            }
            let cell = CellQuadratic::new(
                &red.points[i],
                &red.points[i + 1],
                &blue.points[j],
                &blue.points[j + 1],
            );
            let (right, top) = propagate_cell(&cell, delta, &left, &bottom);
            if !right.is_empty() || !top.is_empty() {
                any = true;
            }
            if i == n - 2 && j == m - 2 {
                last_right = right.clone();
            }
            left_next[j] = right;
            bottom = top;
        }
        if !any {
            return Ok(false);
        }
    }
    Ok(contains(&last_right, 1.0, 1e-9))
}

#[derive(Clone, Copy)]
enum Side {
    Right,
    Top,
}

/// Decision with a witness schedule on YES. Blue positions in the schedule
/// are `[blue parameter]` rows; red parameters live in `[1, n]`.
pub fn decide_ff_witness(
    red: &PolylineCurve,
    blue: &PolylineCurve,
    delta: f64,
) -> Result<Option<Schedule>> {
    check_pair(red, blue)?;
    let (n, m) = (red.len(), blue.len());
    if n == 1 || m == 1 {
        if !decide_ff(red, blue, delta)? {
            return Ok(None);
        }
        let schedule = Schedule {
            breakpoints: vec![
                (0.0, 1.0, vec![1.0]),
                (1.0, n as f64, vec![m as f64]),
            ],
            domain_tag: "curve".into(),
        };
        return Ok(Some(schedule));
    }
    if dist(&red.points[0], &blue.points[0]) < delta
        || dist(&red.points[n - 1], &blue.points[m - 1]) < delta
    {
        return Ok(None);
    }
    let cell_at = |i: usize, j: usize| {
        CellQuadratic::new(
            &red.points[i],
            &red.points[i + 1],
            &blue.points[j],
            &blue.points[j + 1],
        )
    };
    // Full reachability tables for backtracking.
    let mut rights: Vec<Vec<Vec<Iv>>> = vec![vec![Vec::new(); m - 1]; n - 1];
    let mut tops: Vec<Vec<Vec<Iv>>> = vec![vec![Vec::new(); m - 1]; n - 1];
    for i in 0..n - 1 {
        for j in 0..m - 1 {
            let mut left = if i == 0 { Vec::new() } else { rights[i - 1][j].clone() };
            let mut bottom = if j == 0 { Vec::new() } else { tops[i][j - 1].clone() };
            if i == 0 && j == 0 {
                left.push((0.0, 0.0));
                bottom.push((0.0, 0.0));
            }
            if left.is_empty() && bottom.is_empty() {
                continue;
            }
            let (right, top) = propagate_cell(&cell_at(i, j), delta, &left, &bottom);
            rights[i][j] = right;
            tops[i][j] = top;
        }
    }
    if !contains(&rights[n - 2][m - 2], 1.0, 1e-9) {
        return Ok(None);
    }
    // Backtrack from the global end corner. Waypoints are gathered end-first
    // in global parameters (red in [1, n], blue in [1, m]).
    let mut waypoints: Vec<(f64, f64)> = vec![(n as f64, m as f64)];
    let (mut i, mut j) = (n - 2, m - 2);
    let mut side = Side::Right;
    let mut coord = 1.0f64;
    loop {
        let cell = cell_at(i, j);
        // Slightly relaxed threshold: forward interval classification carries
        // ~1e-11 parameter noise, so exit coordinates can sit marginally
        // inside the exact forbidden set. The witness tolerance absorbs this.
        let d2 = delta * delta * (1.0 - 1e-9);
        let ctx = CellCtx::new(&cell, d2);
        let (qs, qt) = match side {
            Side::Right => (1.0, coord),
            Side::Top => (coord, 1.0),
        };
        let mut left = if i == 0 { Vec::new() } else { rights[i - 1][j].clone() };
        let mut bottom = if j == 0 { Vec::new() } else { tops[i][j - 1].clone() };
        if i == 0 && j == 0 {
            left.push((0.0, 0.0));
            bottom.push((0.0, 0.0));
        }
        // Find an unblocked entry for this exit.
        let mut entry: Option<(f64, f64)> = None;
        let mut t0_cands: Vec<f64> = Vec::new();
        for iv in [ctx.fv0, ctx.textent, cell.fvert(qs, d2)] {
            if let Some((a, b)) = iv {
                t0_cands.extend([a, b]);
            }
        }
        let found_t0 = pick_entry(&left, qt, &t0_cands, |t0| {
            !cell.blocked(d2, 0.0, qs, t0, qt) && cell.q(0.0, t0) >= d2 - 1e-9
        });
        if let Some(t0) = found_t0 {
            entry = Some((0.0, t0));
        } else {
            let mut s0_cands: Vec<f64> = Vec::new();
            for iv in [ctx.fh0, ctx.sextent, cell.fhorz(qt, d2)] {
                if let Some((a, b)) = iv {
                    s0_cands.extend([a, b]);
                }
            }
            let found_s0 = pick_entry(&bottom, qs, &s0_cands, |s0| {
                !cell.blocked(d2, s0, qs, 0.0, qt) && cell.q(s0, 0.0) >= d2 - 1e-9
            });
            if let Some(s0) = found_s0 {
                entry = Some((s0, 0.0));
            }
        }
        let (ps, pt) = entry.ok_or_else(|| {
            Error::InvalidInstance("witness backtrack failed to find an entry".into())
        })?;
        // Route within the cell along whichever chain the forbidden set
        // misses: lower-right first, else upper-left.
        let lr_hit = overlap_open_closed(cell.fhorz(pt, d2), ps, qs)
            || overlap_open_closed(cell.fvert(qs, d2), pt, qt);
        let mid = if !lr_hit { (qs, pt) } else { (ps, qt) };
        let gl = |s: f64, t: f64| ((i + 1) as f64 + s, (j + 1) as f64 + t);
        waypoints.push(gl(mid.0, mid.1));
        waypoints.push(gl(ps, pt));
        if ps == 0.0 {
            if i == 0 {
                break;
            }
            i -= 1;
            side = Side::Right;
            coord = pt;
        } else {
            if j == 0 {
                break;
            }
            j -= 1;
            side = Side::Top;
            coord = ps;
        }
    }
    waypoints.push((1.0, 1.0));
    waypoints.reverse();
    waypoints.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-12 && (a.1 - b.1).abs() < 1e-12);
    let k = waypoints.len();
    let breakpoints = waypoints
        .into_iter()
        .enumerate()
        .map(|(idx, (r, b))| (idx as f64 / (k - 1) as f64, r, vec![b]))
        .collect();
    Ok(Some(Schedule {
        breakpoints,
        domain_tag: "curve".into(),
    }))
}

/// Candidate critical separation values: vertex-vertex distances,
/// vertex-edge distances, and same-side vertex-pair bisector events on
/// opposite edges. Gated by a product cap; callers fall back to bisection.
pub fn critical_values(red: &PolylineCurve, blue: &PolylineCurve, cap: usize) -> Option<Vec<f64>> {
    let (n, m) = (red.len(), blue.len());
    let type3 = n * n * m + m * m * n;
    if type3 > cap {
        return None;
    }
    let mut out = Vec::new();
    for p in &red.points {
        for q in &blue.points {
            out.push(dist(p, q));
        }
    }
    for p in &red.points {
        for e in blue.points.windows(2) {
            out.push(point_segment_distance(p, &e[0], &e[1]));
        }
    }
    for q in &blue.points {
        for e in red.points.windows(2) {
            out.push(point_segment_distance(q, &e[0], &e[1]));
        }
    }
    let mut bisector = |a: &[f64], b: &[f64], e0: &[f64], e1: &[f64]| {
        // Point x(t) on the edge with |x - a| = |x - b|; linear in t.
        let dim = a.len();
        let mut num = 0.0;
        let mut den = 0.0;
        for k in 0..dim {
            let u = e1[k] - e0[k];
            let ab = b[k] - a[k];
            num += ab * (e0[k] - 0.5 * (a[k] + b[k]));
            den += ab * u;
        }
        if den.abs() < TINY {
            return;
        }
        let t = -num / den;
        if (0.0..=1.0).contains(&t) {
            let x: Vec<f64> = e0.iter().zip(e1).map(|(p0, p1)| p0 + t * (p1 - p0)).collect();
            out.push(dist(&x, a));
        }
    };
    for ai in 0..n {
        for bi in ai + 1..n {
            for e in blue.points.windows(2) {
                bisector(&red.points[ai], &red.points[bi], &e[0], &e[1]);
            }
        }
    }
    for ai in 0..m {
        for bi in ai + 1..m {
            for e in red.points.windows(2) {
                bisector(&blue.points[ai], &blue.points[bi], &e[0], &e[1]);
            }
        }
    }
    out.retain(|v| v.is_finite());
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    Some(out)
}

/// Optimal separation value: the largest `delta` for which `decide_ff`
/// holds. Uses the critical-value candidate list when small enough and
/// falls back to plain bisection otherwise.
pub fn ff_value(red: &PolylineCurve, blue: &PolylineCurve) -> Result<f64> {
    check_pair(red, blue)?;
    let (n, m) = (red.len(), blue.len());
    if n == 1 && m == 1 {
        return Ok(dist(&red.points[0], &blue.points[0]));
    }
    if n == 1 {
        return Ok(point_to_curve_min(&red.points[0], blue));
    }
    if m == 1 {
        return Ok(point_to_curve_min(&blue.points[0], red));
    }
    let upper = dist(&red.points[0], &blue.points[0])
        .min(dist(&red.points[n - 1], &blue.points[m - 1]));
    if upper <= 0.0 {
        return Ok(0.0);
    }
    if let Some(mut cands) = critical_values(red, blue, 2_000_000) {
        cands.retain(|&v| v > 0.0 && v <= upper + 1e-12);
        cands.push(upper);
        cands.sort_by(|a, b| a.partial_cmp(b).unwrap());
        cands.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        // Largest YES candidate; the decision is monotone in delta.
        let (mut lo, mut hi) = (0usize, cands.len());
        // Invariant: everything below lo is YES, everything at/after hi is NO.
        while lo < hi {
            let mid = (lo + hi) / 2;
            // Probe a hair below the candidate: at delta exactly equal to a
            // critical value the boundary-touching path sits on the edge of
            // the open forbidden set, where rounding can flip the decision.
            let probe = cands[mid] - 1e-9 * cands[mid].max(1.0);
            if decide_ff(red, blue, probe.max(0.0))? {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        let c_lo = if lo == 0 { 0.0 } else { cands[lo - 1] };
        let c_hi = if lo < cands.len() { cands[lo] } else { upper };
        // Most thresholds are candidate events; keep the exact candidate when
        // the decision flips right above it. Otherwise the threshold is a
        // three-edge event not in the list: bisect the bracket.
        let eps = 1e-9 * c_hi.max(1.0);
        if lo > 0 && !decide_ff(red, blue, c_lo + eps)? {
            return Ok(c_lo);
        }
        let (mut blo, mut bhi) = (c_lo, c_hi);
        while bhi - blo > 1e-12 * upper.max(1.0) {
            let mid = 0.5 * (blo + bhi);
            if decide_ff(red, blue, mid)? {
                blo = mid;
            } else {
                bhi = mid;
            }
        }
        return Ok(blo);
    }
    let (mut lo, mut hi) = (0.0f64, upper);
    if decide_ff(red, blue, upper)? {
        return Ok(upper);
    }
    while hi - lo > EPS_VAL * upper.max(1.0) {
        let mid = 0.5 * (lo + hi);
        if decide_ff(red, blue, mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

// ---------------------------------------------------------------------------
// One-sided reachability: Red advances monotonically along its curve, Blue
// moves freely (both directions) on a closed curve. Components of the free
// set on the cycle are propagated across finely sampled Red positions.

fn cycle_components(frees: &[Vec<Iv>]) -> Vec<Vec<(usize, Iv)>> {
    // frees[j]: closed free t-intervals on cyclic edge j. Components merge
    // intervals that touch across edge boundaries (t=1 of j with t=0 of j+1).
    let m = frees.len();
    let mut comp_id: Vec<Vec<usize>> = frees
        .iter()
        .map(|f| vec![usize::MAX; f.len()])
        .collect();
    let mut comps: Vec<Vec<(usize, Iv)>> = Vec::new();
    for j in 0..m {
        for k in 0..frees[j].len() {
            if comp_id[j][k] != usize::MAX {
                continue;
            }
            let id = comps.len();
            comps.push(Vec::new());
            let mut stack = vec![(j, k)];
            while let Some((jj, kk)) = stack.pop() {
                if comp_id[jj][kk] != usize::MAX {
                    continue;
                }
                comp_id[jj][kk] = id;
                let iv = frees[jj][kk];
                comps[id].push((jj, iv));
                if iv.1 >= 1.0 - 1e-9 {
                    let nj = (jj + 1) % m;
                    for (nk, &niv) in frees[nj].iter().enumerate() {
                        if niv.0 <= 1e-9 && comp_id[nj][nk] == usize::MAX {
                            stack.push((nj, nk));
                        }
                    }
                }
                if iv.0 <= 1e-9 {
                    let pj = (jj + m - 1) % m;
                    for (pk, &piv) in frees[pj].iter().enumerate() {
                        if piv.1 >= 1.0 - 1e-9 && comp_id[pj][pk] == usize::MAX {
                            stack.push((pj, pk));
                        }
                    }
                }
            }
        }
    }
    comps
}

fn pieces_overlap(a: &[(usize, Iv)], b: &[(usize, Iv)]) -> bool {
    a.iter().any(|&(j, (x0, x1))| {
        b.iter()
            .any(|&(jj, (y0, y1))| j == jj && x0 <= y1 + 1e-12 && y0 <= x1 + 1e-12)
    })
}

/// One-sided decision: starting from `blue_start` (a cyclic parameter in
/// `[1, m+1)`, or `None` for "anywhere free"), can Blue stay at separation
/// at least `delta` while Red walks its whole curve? Red is sampled at
/// `samples_per_edge` positions per edge; free intervals per Red sample are
/// exact for the Euclidean metric.
pub fn reachability_one_sided(
    red: &PolylineCurve,
    blue: &ClosedCurve,
    blue_start: Option<f64>,
    delta: f64,
    metric: &SeparationMetric,
    samples_per_edge: usize,
) -> Result<bool> {
    let m = blue.len();
    let spe = samples_per_edge.max(1);
    let n_steps = if red.len() == 1 { 1 } else { spe * (red.len() - 1) + 1 };
    let red_param = |k: usize| {
        if red.len() == 1 {
            1.0
        } else {
            1.0 + (red.len() - 1) as f64 * k as f64 / (n_steps - 1) as f64
        }
    };
    let free_sets = |rp: &[f64]| -> Result<Vec<Vec<Iv>>> {
        let mut out = Vec::with_capacity(m);
        for j in 0..m {
            let a = &blue.points[j];
            let b = &blue.points[(j + 1) % m];
            match metric {
                SeparationMetric::Euclidean => {
                    let cell = CellQuadratic::new(rp, rp, a, b);
                    out.push(cell_free_intervals(&cell, delta, 0.0));
                }
                SeparationMetric::PolygonGeodesic(_) => {
                    // No closed form; sample the edge and take conservative
                    // sub-intervals whose sampled endpoints are both free.
                    let samples = 24usize;
                    let free: Vec<bool> = (0..=samples)
                        .map(|k| {
                            let t = k as f64 / samples as f64;
                            let p: Vec<f64> =
                                a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect();
                            Ok::<bool, Error>(metric.eval(rp, &p)? >= delta)
                        })
                        .collect::<Result<_>>()?;
                    let mut ivs: Vec<Iv> = Vec::new();
                    let mut run: Option<usize> = None;
                    for k in 0..=samples {
                        if free[k] {
                            if run.is_none() {
                                run = Some(k);
                            }
                        } else if let Some(s) = run.take() {
                            ivs.push((s as f64 / samples as f64, (k - 1) as f64 / samples as f64));
                        }
                    }
                    if let Some(s) = run {
                        ivs.push((s as f64 / samples as f64, 1.0));
                    }
                    out.push(ivs);
                }
            }
        }
        Ok(out)
    };
    let rp0 = red.point_at(red_param(0))?;
    let f0 = free_sets(&rp0)?;
    let comps0 = cycle_components(&f0);
    let mut alive: Vec<Vec<(usize, Iv)>> = match blue_start {
        Some(p) => {
            if !(1.0..m as f64 + 1.0).contains(&p) {
                return Err(Error::ParamOutOfRange(p, 1.0, m as f64 + 1.0));
            }
            let j = (p.floor() as usize - 1).min(m - 1);
            let t = p - (j + 1) as f64;
            let home: Vec<Vec<(usize, Iv)>> = comps0
                .iter()
                .filter(|c| pieces_overlap(c, &[(j, (t, t))]))
                .cloned()
                .collect();
            if home.is_empty() {
                return Ok(false);
            }
            home
        }
        None => comps0,
    };
    for k in 1..n_steps {
        let rp = red.point_at(red_param(k))?;
        let f = free_sets(&rp)?;
        let comps = cycle_components(&f);
        let seed: Vec<(usize, Iv)> = alive.into_iter().flatten().collect();
        alive = comps
            .into_iter()
            .filter(|c| pieces_overlap(c, &seed))
            .collect();
        if alive.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}
