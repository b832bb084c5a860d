//! Geodesic machinery inside a simple polygon and the polygon separation
//! problems: escaping a red agent on a geodesic path, escaping a red agent on
//! an arbitrary path (via the boundary reduction), and the social distance
//! width of closed curves and polygons.

use serde::{Deserialize, Serialize};

use crate::freespace::{ff_value, reachability_one_sided};
use crate::geom::{ClosedCurve, PolylineCurve, SeparationMetric};
use crate::{Error, Result, EPS_GEOM};

type Pt = (f64, f64);

fn sub(a: Pt, b: Pt) -> Pt {
    (a.0 - b.0, a.1 - b.1)
}

fn cross(a: Pt, b: Pt) -> f64 {
    a.0 * b.1 - a.1 * b.0
}

fn d2(a: Pt, b: Pt) -> f64 {
    let (dx, dy) = sub(a, b);
    dx * dx + dy * dy
}

fn edist(a: Pt, b: Pt) -> f64 {
    d2(a, b).sqrt()
}

fn lerp_pt(a: Pt, b: Pt, t: f64) -> Pt {
    (a.0 + (b.0 - a.0) * t, a.1 + (b.1 - a.1) * t)
}

fn orient(a: Pt, b: Pt, c: Pt) -> f64 {
    cross(sub(b, a), sub(c, a))
}

fn on_segment(p: Pt, a: Pt, b: Pt, tol: f64) -> bool {
    let ab = sub(b, a);
    let ap = sub(p, a);
    let len2 = ab.0 * ab.0 + ab.1 * ab.1;
    if len2 == 0.0 {
        return edist(p, a) <= tol;
    }
    let t = (ap.0 * ab.0 + ap.1 * ab.1) / len2;
    let t = t.clamp(0.0, 1.0);
    edist(p, lerp_pt(a, b, t)) <= tol
}

/// Closest point on segment [a,b] to p, returned with its parameter in [0,1].
fn closest_on_segment(p: Pt, a: Pt, b: Pt) -> (Pt, f64) {
    let ab = sub(b, a);
    let len2 = ab.0 * ab.0 + ab.1 * ab.1;
    if len2 == 0.0 {
        return (a, 0.0);
    }
    let t = ((p.0 - a.0) * ab.0 + (p.1 - a.1) * ab.1) / len2;
    let t = t.clamp(0.0, 1.0);
    (lerp_pt(a, b, t), t)
}

fn segs_properly_cross(a: Pt, b: Pt, c: Pt, d: Pt) -> bool {
    // Endpoints within 1e-9 of the other segment's line count as touching,
    // not crossing; computed boundary points carry that much noise.
    let tcd = 1e-9 * edist(c, d);
    let tab = 1e-9 * edist(a, b);
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    ((d1 > tcd && d2 < -tcd) || (d1 < -tcd && d2 > tcd))
        && ((d3 > tab && d4 < -tab) || (d3 < -tab && d4 > tab))
}

/// A simple polygon with vertices in counterclockwise order.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplePolygon {
    pub vertices: Vec<Pt>,
}

impl SimplePolygon {
    pub fn new(vertices: Vec<Pt>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::InvalidInstance("polygon needs at least 3 vertices".into()));
        }
        for i in 0..n {
            for j in i + 1..n {
                if edist(vertices[i], vertices[j]) <= EPS_GEOM {
                    return Err(Error::InvalidInstance(format!(
                        "repeated vertices {i} and {j}"
                    )));
                }
            }
        }
        for i in 0..n {
            let (a, b) = (vertices[i], vertices[(i + 1) % n]);
            for j in 0..n {
                // Skip the edge itself and the two adjacent edges.
                if j == i || (j + 1) % n == i || (i + 1) % n == j {
                    continue;
                }
                let (c, d) = (vertices[j], vertices[(j + 1) % n]);
                if segs_properly_cross(a, b, c, d)
                    || on_segment(c, a, b, EPS_GEOM)
                    || on_segment(a, c, d, EPS_GEOM)
                {
                    return Err(Error::InvalidInstance(format!(
                        "edges {i} and {j} intersect"
                    )));
                }
            }
        }
        let poly = SimplePolygon { vertices };
        if poly.signed_area() <= 0.0 {
            return Err(Error::InvalidInstance("polygon must be counterclockwise".into()));
        }
        Ok(poly)
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn signed_area(&self) -> f64 {
        let n = self.n();
        let mut s = 0.0;
        for i in 0..n {
            s += cross(self.vertices[i], self.vertices[(i + 1) % n]);
        }
        s / 2.0
    }

    pub fn perimeter(&self) -> f64 {
        let n = self.n();
        (0..n)
            .map(|i| edist(self.vertices[i], self.vertices[(i + 1) % n]))
            .sum()
    }

    pub fn bbox(&self) -> (Pt, Pt) {
        let mut lo = (f64::INFINITY, f64::INFINITY);
        let mut hi = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for &(x, y) in &self.vertices {
            lo = (lo.0.min(x), lo.1.min(y));
            hi = (hi.0.max(x), hi.1.max(y));
        }
        (lo, hi)
    }

    /// Point-in-polygon test; boundary points count as inside.
    pub fn contains(&self, p: Pt) -> bool {
        let n = self.n();
        for i in 0..n {
            if on_segment(p, self.vertices[i], self.vertices[(i + 1) % n], 1e-9) {
                return true;
            }
        }
        let mut inside = false;
        let mut j = n - 1;
        for i in 0..n {
            let (xi, yi) = self.vertices[i];
            let (xj, yj) = self.vertices[j];
            if (yi > p.1) != (yj > p.1)
                && p.0 < (xj - xi) * (p.1 - yi) / (yj - yi) + xi
            {
                inside = !inside;
            }
            j = i;
        }
        inside
    }

    pub fn on_boundary(&self, p: Pt, tol: f64) -> bool {
        let n = self.n();
        (0..n).any(|i| on_segment(p, self.vertices[i], self.vertices[(i + 1) % n], tol))
    }

    /// Cyclic boundary point at parameter t in [0, n): edge floor(t), fraction
    /// fract(t).
    pub fn boundary_point(&self, t: f64) -> Pt {
        let n = self.n();
        let t = t.rem_euclid(n as f64);
        let i = (t.floor() as usize).min(n - 1);
        lerp_pt(self.vertices[i], self.vertices[(i + 1) % n], t - i as f64)
    }

    /// Cyclic boundary parameter of a point lying on the boundary.
    pub fn boundary_param(&self, p: Pt, tol: f64) -> Option<f64> {
        let n = self.n();
        let mut best: Option<(f64, f64)> = None;
        for i in 0..n {
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
            let (c, t) = closest_on_segment(p, a, b);
            let d = edist(p, c);
            if d <= tol && best.map_or(true, |(bd, _)| d < bd) {
                best = Some((d, i as f64 + t));
            }
        }
        best.map(|(_, t)| t)
    }

    pub fn boundary_curve(&self) -> ClosedCurve {
        ClosedCurve::new(2, self.vertices.iter().map(|&(x, y)| vec![x, y]).collect())
            .expect("polygon vertices form a valid closed curve")
    }

    /// True if the open segment pq stays inside the polygon.
    pub fn sees(&self, p: Pt, q: Pt) -> bool {
        let n = self.n();
        for i in 0..n {
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
            if segs_properly_cross(p, q, a, b) {
                return false;
            }
        }
        // The segment may still leave the polygon through a vertex or run
        // outside along a boundary line; probe interior points.
        for k in 1..=5 {
            let m = lerp_pt(p, q, k as f64 / 6.0);
            if !self.contains(m) {
                return false;
            }
        }
        true
    }
}

/// Visibility-graph shortest-path structure for geodesic queries.
pub struct GeodesicIndex {
    poly: SimplePolygon,
    vdist: Vec<Vec<f64>>,
}

impl GeodesicIndex {
    pub fn new(poly: &SimplePolygon) -> Self {
        let n = poly.n();
        let v = &poly.vertices;
        let mut vdist = vec![vec![f64::INFINITY; n]; n];
        for i in 0..n {
            vdist[i][i] = 0.0;
            for j in i + 1..n {
                if poly.sees(v[i], v[j]) {
                    let d = edist(v[i], v[j]);
                    vdist[i][j] = d;
                    vdist[j][i] = d;
                }
            }
        }
        for k in 0..n {
            for i in 0..n {
                if vdist[i][k].is_infinite() {
                    continue;
                }
                for j in 0..n {
                    let through = vdist[i][k] + vdist[k][j];
                    if through < vdist[i][j] {
                        vdist[i][j] = through;
                    }
                }
            }
        }
        GeodesicIndex {
            poly: poly.clone(),
            vdist,
        }
    }

    pub fn polygon(&self) -> &SimplePolygon {
        &self.poly
    }

    pub fn vertex_distance(&self, i: usize, j: usize) -> f64 {
        self.vdist[i][j]
    }

    fn check_inside(&self, p: Pt) -> Result<()> {
        if self.poly.contains(p) {
            Ok(())
        } else {
            Err(Error::OutsidePolygon(p.0, p.1))
        }
    }

    /// Geodesic distance between two points of the polygon.
    pub fn distance_pt(&self, p: Pt, q: Pt) -> Result<f64> {
        self.check_inside(p)?;
        self.check_inside(q)?;
        if self.poly.sees(p, q) {
            return Ok(edist(p, q));
        }
        let n = self.poly.n();
        let v = &self.poly.vertices;
        let dp: Vec<f64> = (0..n)
            .map(|i| if self.poly.sees(p, v[i]) { edist(p, v[i]) } else { f64::INFINITY })
            .collect();
        let dq: Vec<f64> = (0..n)
            .map(|j| if self.poly.sees(q, v[j]) { edist(q, v[j]) } else { f64::INFINITY })
            .collect();
        let mut best = f64::INFINITY;
        for i in 0..n {
            if dp[i].is_infinite() {
                continue;
            }
            for j in 0..n {
                let cand = dp[i] + self.vdist[i][j] + dq[j];
                if cand < best {
                    best = cand;
                }
            }
        }
        if best.is_infinite() {
            return Err(Error::InvalidInstance(
                "no geodesic found; degenerate visibility".into(),
            ));
        }
        Ok(best)
    }

    /// Geodesic distance with slice endpoints (2D only).
    pub fn distance(&self, p: &[f64], q: &[f64]) -> Result<f64> {
        if p.len() != 2 || q.len() != 2 {
            return Err(Error::DimMismatch(p.len(), 2));
        }
        self.distance_pt((p[0], p[1]), (q[0], q[1]))
    }
}

pub fn geodesic_distance(idx: &GeodesicIndex, p: Pt, q: Pt) -> Result<f64> {
    idx.distance_pt(p, q)
}

/// One circular arc of a geodesic disk boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskArc {
    /// Arc center: the disk center or a polygon vertex.
    pub center: Pt,
    /// Arc radius: r minus the geodesic distance from the disk center.
    pub radius: f64,
}

/// Geodesic disk D = {p in P : d(center, p) <= r}, described by the arcs that
/// can appear on its boundary plus verified boundary sample points.
#[derive(Debug, Clone)]
pub struct GeodesicDiskRegion {
    pub center: Pt,
    pub r: f64,
    pub arcs: Vec<DiskArc>,
    pub boundary_samples: Vec<Pt>,
}

impl GeodesicDiskRegion {
    pub fn contains(&self, idx: &GeodesicIndex, p: Pt) -> Result<bool> {
        Ok(idx.distance_pt(self.center, p)? <= self.r + EPS_GEOM)
    }
}

pub fn geodesic_disk(idx: &GeodesicIndex, center: Pt, r: f64) -> Result<GeodesicDiskRegion> {
    idx.check_inside(center)?;
    if r < 0.0 {
        return Err(Error::ParamOutOfRange(r, 0.0, f64::INFINITY));
    }
    let mut arcs = vec![DiskArc { center, radius: r }];
    for &v in &idx.poly.vertices {
        let d = idx.distance_pt(center, v)?;
        if d < r - EPS_GEOM {
            arcs.push(DiskArc {
                center: v,
                radius: r - d,
            });
        }
    }
    let mut boundary_samples = Vec::new();
    if r <= EPS_GEOM {
        boundary_samples.push(center);
    } else {
        for arc in &arcs {
            if arc.radius <= EPS_GEOM {
                continue;
            }
            for k in 0..64 {
                let th = 2.0 * std::f64::consts::PI * k as f64 / 64.0;
                let p = (
                    arc.center.0 + arc.radius * th.cos(),
                    arc.center.1 + arc.radius * th.sin(),
                );
                if idx.poly.contains(p) {
                    if let Ok(d) = idx.distance_pt(center, p) {
                        // Keep only points that genuinely lie on the disk
                        // boundary (the geodesic realizes this arc's center).
                        if (d - r).abs() <= 1e-6 {
                            boundary_samples.push(p);
                        }
                    }
                }
            }
        }
    }
    Ok(GeodesicDiskRegion {
        center,
        r,
        arcs,
        boundary_samples,
    })
}

/// Connected components of P minus a geodesic disk, each identified by the
/// boundary-of-P arc it owns. Arcs are cyclic parameter intervals (start, end)
/// with end possibly exceeding n for wraparound; a full free boundary is the
/// single arc (0, n).
#[derive(Debug, Clone)]
pub struct ComponentDecomposition {
    pub arcs: Vec<(f64, f64)>,
}

impl ComponentDecomposition {
    pub fn count(&self) -> usize {
        self.arcs.len()
    }
}

pub fn components_minus_disk(
    idx: &GeodesicIndex,
    disk: &GeodesicDiskRegion,
) -> Result<ComponentDecomposition> {
    let n = idx.poly.n();
    let per_edge = 96usize;
    let total = n * per_edge;
    let step = n as f64 / total as f64;
    let free_at = |t: f64| -> Result<bool> {
        Ok(idx.distance_pt(disk.center, idx.poly.boundary_point(t))? > disk.r)
    };
    let free: Vec<bool> = (0..total)
        .map(|k| free_at(k as f64 * step))
        .collect::<Result<_>>()?;
    if free.iter().all(|&f| f) {
        return Ok(ComponentDecomposition {
            arcs: vec![(0.0, n as f64)],
        });
    }
    if free.iter().all(|&f| !f) {
        return Ok(ComponentDecomposition { arcs: vec![] });
    }
    // Bisect each sign change to sharpen the arc endpoints.
    let refine = |mut a: f64, mut b: f64, free_at_a: bool| -> Result<f64> {
        for _ in 0..40 {
            let m = 0.5 * (a + b);
            if free_at(m)? == free_at_a {
                a = m;
            } else {
                b = m;
            }
        }
        Ok(0.5 * (a + b))
    };
    let mut arcs = Vec::new();
    // Walk cyclically starting from a forbidden sample.
    let start = free.iter().position(|&f| !f).unwrap();
    let mut k = 0;
    while k < total {
        let i = (start + k) % total;
        if free[i] {
            // Arc begins at the transition before i.
            let prev = (start + k - 1) % total;
            let a = refine(prev as f64 * step, prev as f64 * step + step, false)?;
            let mut len = 1;
            while len < total && free[(i + len) % total] {
                len += 1;
            }
            let last = (i + len - 1) % total;
            let b = refine(last as f64 * step, last as f64 * step + step, true)?;
            let b = if b >= a { b } else { b + n as f64 };
            arcs.push((a, b));
            k += len + 1;
        } else {
            k += 1;
        }
    }
    Ok(ComponentDecomposition { arcs })
}

/// Minimum geodesic distance from p to any point of the path R.
pub fn distance_point_to_path(idx: &GeodesicIndex, p: Pt, red: &PolylineCurve) -> Result<f64> {
    idx.check_inside(p)?;
    if red.dim != 2 {
        return Err(Error::DimMismatch(red.dim, 2));
    }
    let pts: Vec<Pt> = red.points.iter().map(|v| (v[0], v[1])).collect();
    for &q in &pts {
        if !idx.poly.contains(q) {
            return Err(Error::OutsidePolygon(q.0, q.1));
        }
    }
    let mut best = f64::INFINITY;
    for &q in &pts {
        best = best.min(idx.distance_pt(p, q)?);
    }
    let verts = &idx.poly.vertices;
    for w in pts.windows(2) {
        let (a, b) = (w[0], w[1]);
        // Straight candidate: Euclidean foot of p, when visible.
        let (c, _) = closest_on_segment(p, a, b);
        if idx.poly.sees(p, c) {
            best = best.min(edist(p, c));
        }
        // Bent candidates: route through a polygon vertex that sees its own
        // foot on the segment.
        for &v in verts {
            let (cv, _) = closest_on_segment(v, a, b);
            if idx.poly.sees(v, cv) {
                best = best.min(idx.distance_pt(p, v)? + edist(v, cv));
            }
        }
        // Sampled sweep with local refinement around interior minima.
        let samples = 32;
        let f = |t: f64| idx.distance_pt(p, lerp_pt(a, b, t));
        let mut vals = Vec::with_capacity(samples + 1);
        for k in 0..=samples {
            vals.push(f(k as f64 / samples as f64)?);
        }
        for k in 0..=samples {
            best = best.min(vals[k]);
            let is_local_min = (k == 0 || vals[k] <= vals[k - 1])
                && (k == samples || vals[k] <= vals[k + 1]);
            if is_local_min && k > 0 && k < samples {
                let (mut lo, mut hi) =
                    ((k - 1) as f64 / samples as f64, (k + 1) as f64 / samples as f64);
                for _ in 0..50 {
                    let m1 = lo + (hi - lo) / 3.0;
                    let m2 = hi - (hi - lo) / 3.0;
                    if f(m1)? <= f(m2)? {
                        hi = m2;
                    } else {
                        lo = m1;
                    }
                }
                best = best.min(f(0.5 * (lo + hi))?);
            }
        }
    }
    Ok(best)
}

fn red_as_points(red: &PolylineCurve) -> Result<Vec<Pt>> {
    if red.dim != 2 {
        return Err(Error::DimMismatch(red.dim, 2));
    }
    Ok(red.points.iter().map(|v| (v[0], v[1])).collect())
}

fn check_red_inside(poly: &SimplePolygon, pts: &[Pt]) -> Result<()> {
    for &q in pts {
        if !poly.contains(q) {
            return Err(Error::OutsidePolygon(q.0, q.1));
        }
    }
    Ok(())
}

/// Grid flood fill over the free region P minus the disk of radius `delta`
/// around `center`; returns free nodes labeled with component ids plus a
/// lookup for arbitrary free points.
struct FreeGrid {
    nodes: Vec<Pt>,
    comp: Vec<usize>,
    step: f64,
}

impl FreeGrid {
    fn build(idx: &GeodesicIndex, center: Pt, delta: f64, res: usize) -> Result<FreeGrid> {
        let (lo, hi) = idx.poly.bbox();
        let span = (hi.0 - lo.0).max(hi.1 - lo.1).max(1e-9);
        let step = span / res as f64;
        let nx = ((hi.0 - lo.0) / step).ceil() as usize + 1;
        let ny = ((hi.1 - lo.1) / step).ceil() as usize + 1;
        let mut nodes = Vec::new();
        let mut id = vec![vec![usize::MAX; ny]; nx];
        for ix in 0..nx {
            for iy in 0..ny {
                let p = (lo.0 + ix as f64 * step, lo.1 + iy as f64 * step);
                if !idx.poly.contains(p) {
                    continue;
                }
                if idx.distance_pt(center, p)? <= delta {
                    continue;
                }
                id[ix][iy] = nodes.len();
                nodes.push(p);
            }
        }
        // Union free neighbors whose connecting segment stays inside P.
        let mut comp: Vec<usize> = (0..nodes.len()).collect();
        fn find(comp: &mut Vec<usize>, mut a: usize) -> usize {
            while comp[a] != a {
                comp[a] = comp[comp[a]];
                a = comp[a];
            }
            a
        }
        for ix in 0..nx {
            for iy in 0..ny {
                let a = id[ix][iy];
                if a == usize::MAX {
                    continue;
                }
                for (dx, dy) in [(1i64, 0i64), (0, 1), (1, 1), (1, -1)] {
                    let (jx, jy) = (ix as i64 + dx, iy as i64 + dy);
                    if jx < 0 || jy < 0 || jx as usize >= nx || jy as usize >= ny {
                        continue;
                    }
                    let b = id[jx as usize][jy as usize];
                    if b == usize::MAX {
                        continue;
                    }
                    if idx.poly.sees(nodes[a], nodes[b]) {
                        let (ra, rb) = (find(&mut comp, a), find(&mut comp, b));
                        comp[ra] = rb;
                    }
                }
            }
        }
        let roots: Vec<usize> = (0..nodes.len())
            .map(|i| find(&mut comp, i))
            .collect();
        Ok(FreeGrid {
            nodes,
            comp: roots,
            step,
        })
    }

    /// Component id of a free point: the component of the nearest visible free
    /// node within a short hop.
    fn component_of(&self, poly: &SimplePolygon, p: Pt) -> Option<usize> {
        let mut best: Option<(f64, usize)> = None;
        for (i, &q) in self.nodes.iter().enumerate() {
            let d = edist(p, q);
            if d <= 1.6 * self.step
                && poly.sees(p, q)
                && best.map_or(true, |(bd, _)| d < bd)
            {
                best = Some((d, self.comp[i]));
            }
        }
        best.map(|(_, c)| c)
    }
}

/// Decide whether Blue at b can keep geodesic distance > delta from Red
/// forever while Red walks the geodesic path `red`. On YES returns a safe
/// point Blue can sit on.
pub fn decide_escape_geodesic_red(
    idx: &GeodesicIndex,
    b: Pt,
    red: &PolylineCurve,
    delta: f64,
) -> Result<Option<Pt>> {
    idx.check_inside(b)?;
    let pts = red_as_points(red)?;
    check_red_inside(&idx.poly, &pts)?;
    let len: f64 = pts.windows(2).map(|w| edist(w[0], w[1])).sum();
    let shortest = idx.distance_pt(pts[0], pts[pts.len() - 1])?;
    if len - shortest > 1e-7 {
        return Err(Error::NotGeodesic { len, shortest });
    }
    let start = pts[0];
    if idx.distance_pt(b, start)? <= delta {
        return Ok(None);
    }
    let clearance = |p: Pt| distance_point_to_path(idx, p, red);
    // Safe-point candidates restricted to Blue's component of P minus the
    // start disk.
    let grid = FreeGrid::build(idx, start, delta, 72)?;
    let b_comp = grid.component_of(&idx.poly, b);
    let mut best = (clearance(b)?, b);
    let consider = |p: Pt, best: &mut (f64, Pt)| -> Result<()> {
        let c = clearance(p)?;
        if c > best.0 {
            *best = (c, p);
        }
        Ok(())
    };
    if let Some(bc) = b_comp {
        for (i, &p) in grid.nodes.iter().enumerate() {
            if grid.comp[i] == bc {
                consider(p, &mut best)?;
            }
        }
        for &v in &idx.poly.vertices {
            if idx.distance_pt(start, v)? > delta
                && grid.component_of(&idx.poly, v) == Some(bc)
            {
                consider(v, &mut best)?;
            }
        }
        // Boundary arc samples with golden-section refinement.
        let disk = geodesic_disk(idx, start, delta)?;
        let comps = components_minus_disk(idx, &disk)?;
        for &(a0, a1) in &comps.arcs {
            let probe = idx.poly.boundary_point(0.5 * (a0 + a1));
            if grid.component_of(&idx.poly, probe) != Some(bc) {
                continue;
            }
            let g = |t: f64| -> Result<f64> {
                distance_point_to_path(idx, idx.poly.boundary_point(t), red)
            };
            let samples = 256;
            let mut vals = Vec::with_capacity(samples + 1);
            for k in 0..=samples {
                let t = a0 + (a1 - a0) * k as f64 / samples as f64;
                vals.push((t, g(t)?));
            }
            for k in 0..=samples {
                consider(idx.poly.boundary_point(vals[k].0), &mut best)?;
                let local_max = (k == 0 || vals[k].1 >= vals[k - 1].1)
                    && (k == samples || vals[k].1 >= vals[k + 1].1);
                if local_max && k > 0 && k < samples {
                    let (mut lo, mut hi) = (vals[k - 1].0, vals[k + 1].0);
                    for _ in 0..45 {
                        let m1 = lo + (hi - lo) / 3.0;
                        let m2 = hi - (hi - lo) / 3.0;
                        if g(m1)? >= g(m2)? {
                            hi = m2;
                        } else {
                            lo = m1;
                        }
                    }
                    consider(idx.poly.boundary_point(0.5 * (lo + hi)), &mut best)?;
                }
            }
        }
    }
    if best.0 > delta {
        Ok(Some(best.1))
    } else {
        Ok(None)
    }
}

/// Decide whether Blue starting on the boundary at b can keep geodesic
/// distance >= delta from Red along an arbitrary path, via the boundary
/// reduction: Blue may stay on the boundary of P without loss.
pub fn decide_escape_arbitrary_red(
    idx: &GeodesicIndex,
    b: Pt,
    red: &PolylineCurve,
    delta: f64,
) -> Result<bool> {
    let pts = red_as_points(red)?;
    check_red_inside(&idx.poly, &pts)?;
    let t_b = idx
        .poly
        .boundary_param(b, 1e-7)
        .ok_or(Error::BlueStartNotOnBoundary)?;
    if idx.distance_pt(b, pts[0])? < delta {
        return Ok(false);
    }
    let blue = idx.poly.boundary_curve();
    let metric = SeparationMetric::PolygonGeodesic(idx);
    reachability_one_sided(red, &blue, Some(t_b + 1.0), delta, &metric, 24)
}

/// Social distance width of two closed curves: maximize the flipped Fréchet
/// value over all pairs of vertex start points, traversing each curve once
/// around.
pub fn sdw_closed_curves(rc: &ClosedCurve, bc: &ClosedCurve) -> Result<f64> {
    let mut best: f64 = 0.0;
    for s in 0..rc.len() {
        let red = rc.rotated_open(s);
        for y in 0..bc.len() {
            let blue = bc.rotated_open(y);
            best = best.max(ff_value(&red, &blue)?);
        }
    }
    Ok(best)
}

/// Social distance width of a simple polygon: both agents traverse its
/// boundary.
pub fn sdw_polygon(poly: &SimplePolygon) -> Result<f64> {
    let boundary = poly.boundary_curve();
    sdw_closed_curves(&boundary, &boundary)
}

#[derive(Serialize, Deserialize)]
struct PolygonFile {
    vertices: Vec<(f64, f64)>,
}

pub fn parse_polygon(s: &str) -> Result<SimplePolygon> {
    let f: PolygonFile = serde_json::from_str(s)?;
    SimplePolygon::new(f.vertices)
}

pub fn serialize_polygon(poly: &SimplePolygon) -> String {
    serde_json::to_string_pretty(&PolygonFile {
        vertices: poly.vertices.clone(),
    })
    .expect("polygon serialization cannot fail")
}
