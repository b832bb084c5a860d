//! Shared geometric primitives: polyline curves with the `[1, n]`
//! parameterization, traversal schedules, separation metrics, and the
//! JSON instance formats used by every solver and by the CLI.

use serde::{Deserialize, Serialize};

use crate::{Error, Result, EPS_GEOM};

pub fn dist(p: &[f64], q: &[f64]) -> f64 {
    debug_assert_eq!(p.len(), q.len());
    p.iter()
        .zip(q)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

pub fn lerp(p: &[f64], q: &[f64], t: f64) -> Vec<f64> {
    p.iter().zip(q).map(|(a, b)| a + t * (b - a)).collect()
}

/// Minimum Euclidean distance from `p` to the segment `a`-`b`.
pub fn point_segment_distance(p: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let dd: f64 = a.iter().zip(b).map(|(x, y)| (y - x) * (y - x)).sum();
    if dd <= 0.0 {
        return dist(p, a);
    }
    let t: f64 = p
        .iter()
        .zip(a.iter().zip(b))
        .map(|(pc, (ac, bc))| (pc - ac) * (bc - ac))
        .sum::<f64>()
        / dd;
    let t = t.clamp(0.0, 1.0);
    dist(p, &lerp(a, b, t))
}

/// An open polygonal curve in `R^d`, parameterized over `[1, n]`:
/// parameter `i + λ` maps to `(1-λ)·points[i] + λ·points[i+1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolylineCurve {
    pub dim: usize,
    pub points: Vec<Vec<f64>>,
}

impl PolylineCurve {
    pub fn new(dim: usize, points: Vec<Vec<f64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInstance("dim must be positive".into()));
        }
        if points.is_empty() {
            return Err(Error::InvalidInstance("curve needs at least one vertex".into()));
        }
        for p in &points {
            if p.len() != dim {
                return Err(Error::DimMismatch(p.len(), dim));
            }
            if p.iter().any(|c| !c.is_finite()) {
                return Err(Error::InvalidInstance("non-finite coordinate".into()));
            }
        }
        Ok(PolylineCurve { dim, points })
    }

    pub fn from_1d(values: &[f64]) -> Self {
        PolylineCurve {
            dim: 1,
            points: values.iter().map(|&v| vec![v]).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Point at parameter `t ∈ [1, n]`.
    pub fn point_at(&self, t: f64) -> Result<Vec<f64>> {
        let n = self.points.len() as f64;
        if !(1.0 - EPS_GEOM..=n + EPS_GEOM).contains(&t) {
            return Err(Error::ParamOutOfRange(t, 1.0, n));
        }
        let t = t.clamp(1.0, n);
        let i = (t.floor() as usize).min(self.points.len() - 1).max(1);
        let lam = t - i as f64;
        if lam <= 0.0 || i == self.points.len() {
            return Ok(self.points[i - 1].clone());
        }
        Ok(lerp(&self.points[i - 1], &self.points[i], lam))
    }

    pub fn max_edge_len(&self) -> f64 {
        self.points
            .windows(2)
            .map(|w| dist(&w[0], &w[1]))
            .fold(0.0, f64::max)
    }

    pub fn arc_length(&self) -> f64 {
        self.points.windows(2).map(|w| dist(&w[0], &w[1])).sum()
    }
}

/// A closed polygonal curve; the edge from the last vertex back to the first
/// is implicit, and the parameterization is modular over the vertex count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosedCurve {
    pub dim: usize,
    pub points: Vec<Vec<f64>>,
}

impl ClosedCurve {
    pub fn new(dim: usize, points: Vec<Vec<f64>>) -> Result<Self> {
        let c = PolylineCurve::new(dim, points)?;
        Ok(ClosedCurve {
            dim: c.dim,
            points: c.points,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Open copy starting at vertex `start`, going once around and returning
    /// to the start vertex (`n + 1` vertices).
    pub fn rotated_open(&self, start: usize) -> PolylineCurve {
        let n = self.points.len();
        let mut pts = Vec::with_capacity(n + 1);
        for k in 0..=n {
            pts.push(self.points[(start + k) % n].clone());
        }
        PolylineCurve {
            dim: self.dim,
            points: pts,
        }
    }
}

/// Piecewise-linear witness of a coordinated traversal. Breakpoints are
/// `(time, red parameter, blue position)`; the blue position encoding is
/// owned by the domain that produced the schedule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    pub breakpoints: Vec<(f64, f64, Vec<f64>)>,
    #[serde(default)]
    pub domain_tag: String,
}

impl Schedule {
    pub fn validate(&self) -> Result<()> {
        if self.breakpoints.len() < 2 {
            return Err(Error::ScheduleMismatch("need at least two breakpoints".into()));
        }
        let first = self.breakpoints.first().unwrap().0;
        let last = self.breakpoints.last().unwrap().0;
        if first != 0.0 || last != 1.0 {
            return Err(Error::ScheduleMismatch("times must span [0, 1]".into()));
        }
        for w in self.breakpoints.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(Error::ScheduleMismatch("times must strictly increase".into()));
            }
            if w[1].1 + EPS_GEOM < w[0].1 {
                return Err(Error::ScheduleMismatch("red parameter must be non-decreasing".into()));
            }
        }
        Ok(())
    }
}

/// How the blue position component of a schedule is interpreted.
pub enum BlueDomain<'a> {
    /// Blue position is `[param]` on the given curve.
    Curve(&'a PolylineCurve),
    /// Blue position is a point in `R^d`; interpolation is straight-line.
    FreePoint(usize),
}

impl BlueDomain<'_> {
    fn point(&self, a: &[f64], b: &[f64], frac: f64) -> Result<Vec<f64>> {
        match self {
            BlueDomain::Curve(c) => {
                let t = a[0] + frac * (b[0] - a[0]);
                c.point_at(t)
            }
            BlueDomain::FreePoint(dim) => {
                if a.len() != *dim || b.len() != *dim {
                    return Err(Error::DimMismatch(a.len(), *dim));
                }
                Ok(lerp(a, b, frac))
            }
        }
    }
}

/// Separation metric between a red and a blue point.
#[derive(Clone, Copy)]
pub enum SeparationMetric<'a> {
    Euclidean,
    PolygonGeodesic(&'a crate::polygon::GeodesicIndex),
}

impl SeparationMetric<'_> {
    pub fn eval(&self, p: &[f64], q: &[f64]) -> Result<f64> {
        match self {
            SeparationMetric::Euclidean => Ok(dist(p, q)),
            SeparationMetric::PolygonGeodesic(idx) => idx.distance(p, q),
        }
    }
}

/// Sampled lower bound on the minimum separation achieved by a schedule.
/// Exact at breakpoints; `samples_per_leg` extra times are checked per leg.
pub fn simulate_min_distance(
    schedule: &Schedule,
    red: &PolylineCurve,
    blue: &BlueDomain,
    metric: &SeparationMetric,
    samples_per_leg: usize,
) -> Result<f64> {
    schedule.validate()?;
    let mut min = f64::INFINITY;
    for w in schedule.breakpoints.windows(2) {
        let (_, r0, ref b0) = w[0];
        let (_, r1, ref b1) = w[1];
        for k in 0..=samples_per_leg + 1 {
            let frac = k as f64 / (samples_per_leg + 1) as f64;
            let rp = red.point_at(r0 + frac * (r1 - r0))?;
            let bp = blue.point(b0, b1, frac)?;
            min = min.min(metric.eval(&rp, &bp)?);
        }
    }
    Ok(min)
}

// ---------------------------------------------------------------------------
// Instance file I/O

#[derive(Serialize, Deserialize)]
struct CurveFile {
    dim: usize,
    points: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "is_false")]
    closed: bool,
}

fn is_false(b: &bool) -> bool {
    !b
}

pub fn parse_curve(s: &str) -> Result<PolylineCurve> {
    let f: CurveFile = serde_json::from_str(s)?;
    if f.closed {
        return Err(Error::InvalidInstance("expected an open curve".into()));
    }
    PolylineCurve::new(f.dim, f.points)
}

pub fn parse_closed_curve(s: &str) -> Result<ClosedCurve> {
    let f: CurveFile = serde_json::from_str(s)?;
    ClosedCurve::new(f.dim, f.points)
}

pub fn serialize_curve(c: &PolylineCurve) -> String {
    serde_json::to_string(&CurveFile {
        dim: c.dim,
        points: c.points.clone(),
        closed: false,
    })
    .unwrap()
}

pub fn serialize_closed_curve(c: &ClosedCurve) -> String {
    serde_json::to_string(&CurveFile {
        dim: c.dim,
        points: c.points.clone(),
        closed: true,
    })
    .unwrap()
}

#[derive(Serialize, Deserialize)]
struct ScheduleFile {
    breakpoints: Vec<Vec<f64>>,
}

pub fn parse_schedule(s: &str) -> Result<Schedule> {
    let f: ScheduleFile = serde_json::from_str(s)?;
    let mut breakpoints = Vec::with_capacity(f.breakpoints.len());
    for row in f.breakpoints {
        if row.len() < 3 {
            return Err(Error::InvalidInstance(
                "schedule rows need time, red parameter, and a blue position".into(),
            ));
        }
        breakpoints.push((row[0], row[1], row[2..].to_vec()));
    }
    Ok(Schedule {
        breakpoints,
        domain_tag: String::new(),
    })
}

pub fn serialize_schedule(s: &Schedule) -> String {
    let rows: Vec<Vec<f64>> = s
        .breakpoints
        .iter()
        .map(|(t, r, b)| {
            let mut row = vec![*t, *r];
            row.extend_from_slice(b);
            row
        })
        .collect();
    serde_json::to_string(&ScheduleFile { breakpoints: rows }).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_at_endpoints_and_interior() {
        let c = PolylineCurve::new(2, vec![vec![0.0, 0.0], vec![2.0, 0.0]]).unwrap();
        assert_eq!(c.point_at(1.0).unwrap(), vec![0.0, 0.0]);
        assert_eq!(c.point_at(1.5).unwrap(), vec![1.0, 0.0]);
        let c3 =
            PolylineCurve::new(2, vec![vec![0.0, 0.0], vec![2.0, 0.0], vec![2.0, 2.0]]).unwrap();
        assert_eq!(c3.point_at(2.25).unwrap(), vec![2.0, 0.5]);
        assert!(c3.point_at(3.5).is_err());
    }

    #[test]
    fn segment_distance_cases() {
        assert_eq!(
            point_segment_distance(&[0.0, 1.0], &[-1.0, 0.0], &[1.0, 0.0]),
            1.0
        );
        assert_eq!(
            point_segment_distance(&[3.0, 0.0], &[0.0, 0.0], &[1.0, 0.0]),
            2.0
        );
        assert!(point_segment_distance(&[0.0, 0.0], &[0.0, 0.0], &[5.0, 5.0]).abs() < 1e-12);
    }

    #[test]
    fn point_at_is_lipschitz() {
        let c = PolylineCurve::new(
            2,
            vec![vec![0.0, 0.0], vec![3.0, 0.0], vec![3.0, 1.0], vec![0.5, 2.0]],
        )
        .unwrap();
        let l = c.max_edge_len();
        let mut prev = c.point_at(1.0).unwrap();
        let steps = 4000;
        for k in 1..=steps {
            let t = 1.0 + 3.0 * k as f64 / steps as f64;
            let p = c.point_at(t).unwrap();
            let dt = 3.0 / steps as f64;
            assert!(dist(&prev, &p) <= l * dt + 1e-12);
            prev = p;
        }
    }

    #[test]
    fn simulate_static_pair() {
        let red = PolylineCurve::new(2, vec![vec![0.0, 0.0]]).unwrap();
        let sched = Schedule {
            breakpoints: vec![(0.0, 1.0, vec![3.0, 4.0]), (1.0, 1.0, vec![3.0, 4.0])],
            domain_tag: "free".into(),
        };
        let v = simulate_min_distance(
            &sched,
            &red,
            &BlueDomain::FreePoint(2),
            &SeparationMetric::Euclidean,
            4,
        )
        .unwrap();
        assert!((v - 5.0).abs() < 1e-12);
    }

    #[test]
    fn simulate_moving_red_fixed_blue() {
        // Red (0,0)->(1,0), Blue fixed at (0,1), one midpoint sample.
        let red = PolylineCurve::new(2, vec![vec![0.0, 0.0], vec![1.0, 0.0]]).unwrap();
        let sched = Schedule {
            breakpoints: vec![(0.0, 1.0, vec![0.0, 1.0]), (1.0, 2.0, vec![0.0, 1.0])],
            domain_tag: "free".into(),
        };
        let v = simulate_min_distance(
            &sched,
            &red,
            &BlueDomain::FreePoint(2),
            &SeparationMetric::Euclidean,
            1,
        )
        .unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn simulate_crossing_hits_zero() {
        let red = PolylineCurve::from_1d(&[0.0, 10.0]);
        let blue = PolylineCurve::from_1d(&[10.0, 0.0]);
        let sched = Schedule {
            breakpoints: vec![(0.0, 1.0, vec![1.0]), (1.0, 2.0, vec![2.0])],
            domain_tag: "curve".into(),
        };
        let v = simulate_min_distance(
            &sched,
            &red,
            &BlueDomain::Curve(&blue),
            &SeparationMetric::Euclidean,
            1,
        )
        .unwrap();
        assert!(v.abs() < 1e-12);
    }

    #[test]
    fn curve_file_round_trip() {
        let c = PolylineCurve::new(2, vec![vec![0.125, -3.0], vec![1.0 / 3.0, 7e-11]]).unwrap();
        let s = serialize_curve(&c);
        assert_eq!(parse_curve(&s).unwrap(), c);
        let cc = ClosedCurve::new(2, c.points.clone()).unwrap();
        let s = serialize_closed_curve(&cc);
        assert_eq!(parse_closed_curve(&s).unwrap(), cc);
    }

    #[test]
    fn schedule_round_trip_and_validation() {
        let s = Schedule {
            breakpoints: vec![(0.0, 1.0, vec![0.5]), (0.25, 1.5, vec![0.75]), (1.0, 2.0, vec![1.0])],
            domain_tag: String::new(),
        };
        s.validate().unwrap();
        assert_eq!(parse_schedule(&serialize_schedule(&s)).unwrap(), s);
        let bad = Schedule {
            breakpoints: vec![(0.0, 2.0, vec![0.0]), (1.0, 1.0, vec![0.0])],
            domain_tag: String::new(),
        };
        assert!(bad.validate().is_err());
    }
}
