//! Adversarial instance generators built from orthogonal-vectors inputs,
//! plus seeded random instances for the property suites.
//!
//! The 2D construction places both curves on a 0.25-grid so that an
//! orthogonal pair allows separation 1 while its absence caps the value at
//! sqrt(5)/(2*sqrt(2)); the 1D discrete construction has the analogous gap
//! between 1 and 2/3.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::geom::PolylineCurve;
use crate::graph::GeometricGraph;
use crate::polygon::SimplePolygon;
use crate::tree::WeightedTree;
use crate::{Error, Result};

/// Approximation gap constant of the 2D construction.
pub const ALPHA_2D: f64 = 1.118033988749895 / 1.4142135623730951; // sqrt(5)/2 / sqrt(2)

/// An orthogonal-vectors instance: two lists of binary vectors of common
/// even dimension (odd inputs are zero-padded).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OVInstance {
    pub u: Vec<Vec<u8>>,
    pub v: Vec<Vec<u8>>,
}

impl OVInstance {
    pub fn new(mut u: Vec<Vec<u8>>, mut v: Vec<Vec<u8>>) -> Result<Self> {
        if u.is_empty() || v.is_empty() {
            return Err(Error::InvalidInstance("OV instance needs nonempty sides".into()));
        }
        let d = u.iter().chain(&v).map(|x| x.len()).max().unwrap();
        let d = if d % 2 == 0 { d } else { d + 1 };
        for x in u.iter_mut().chain(v.iter_mut()) {
            if x.iter().any(|&b| b > 1) {
                return Err(Error::InvalidInstance("vector entries must be 0/1".into()));
            }
            x.resize(d, 0);
        }
        Ok(OVInstance { u, v })
    }

    pub fn dim(&self) -> usize {
        self.u[0].len()
    }

    pub fn has_orthogonal_pair(&self) -> bool {
        self.u.iter().any(|ui| {
            self.v
                .iter()
                .any(|vj| ui.iter().zip(vj).all(|(&a, &b)| a * b == 0))
        })
    }
}

// Fixed gadget points of the 2D construction.
const X: [f64; 2] = [-1.5, 0.0];
const R_PT: [f64; 2] = [-0.75, 0.0];
const R_PRIME: [f64; 2] = [-0.5, 0.0];
const B_PT: [f64; 2] = [0.25, 0.0];
const B_PRIME: [f64; 2] = [0.5, 0.0];
const CU: [[f64; 2]; 2] = [[0.0, 0.75], [0.0, 0.25]];
const CD: [[f64; 2]; 2] = [[0.0, -0.75], [0.0, -0.25]];
const U_PT: [f64; 2] = [0.0, 0.5];
const D_PT: [f64; 2] = [0.0, -0.5];
const P: [[f64; 2]; 8] = [
    [0.25, 0.5],
    [0.5, 0.25],
    [0.5, -0.25],
    [0.25, -0.5],
    [-0.25, -0.5],
    [-0.5, -0.25],
    [-0.5, 0.25],
    [-0.25, 0.5],
];
const S1: [f64; 2] = [1.0, 0.5];
const T1: [f64; 2] = [1.0, -0.5];
const S2: [f64; 2] = [0.25, -0.25];
const T2: [f64; 2] = [0.25, 0.25];

fn push2(out: &mut Vec<Vec<f64>>, p: [f64; 2]) {
    out.push(p.to_vec());
}

fn red_vector_gadget(out: &mut Vec<Vec<f64>>, u: &[u8]) {
    push2(out, R_PRIME);
    for k in 0..u.len() / 2 {
        let odd = u[2 * k] as usize;
        let even = u[2 * k + 1] as usize;
        push2(out, P[6]);
        push2(out, P[7]);
        push2(out, U_PT);
        push2(out, CU[odd]);
        push2(out, U_PT);
        push2(out, P[7]);
        push2(out, P[6]);
        push2(out, P[5]);
        push2(out, P[4]);
        push2(out, D_PT);
        push2(out, CD[even]);
        push2(out, D_PT);
        push2(out, P[4]);
        push2(out, P[5]);
    }
    push2(out, R_PRIME);
}

fn blue_vector_gadget(out: &mut Vec<Vec<f64>>, v: &[u8]) {
    push2(out, B_PRIME);
    for k in 0..v.len() / 2 {
        let odd = v[2 * k] as usize;
        let even = v[2 * k + 1] as usize;
        push2(out, P[2]);
        push2(out, P[3]);
        push2(out, D_PT);
        push2(out, CD[odd]);
        push2(out, D_PT);
        push2(out, P[3]);
        push2(out, P[2]);
        push2(out, P[1]);
        push2(out, P[0]);
        push2(out, U_PT);
        push2(out, CU[even]);
        push2(out, U_PT);
        push2(out, P[0]);
        push2(out, P[1]);
    }
    push2(out, B_PRIME);
}

/// Planar curve pair with value at least 1 iff the instance has an
/// orthogonal pair and at most `ALPHA_2D` otherwise.
pub fn gen_ov_2d(inst: &OVInstance) -> (PolylineCurve, PolylineCurve) {
    let mut red: Vec<Vec<f64>> = Vec::new();
    push2(&mut red, X);
    red.push(vec![0.0, 0.0]);
    push2(&mut red, S2);
    for ui in &inst.u {
        push2(&mut red, R_PT);
        red_vector_gadget(&mut red, ui);
    }
    push2(&mut red, R_PT);
    push2(&mut red, T2);
    red.push(vec![0.0, 0.0]);
    push2(&mut red, X);

    let mut blue: Vec<Vec<f64>> = Vec::new();
    for vj in &inst.v {
        push2(&mut blue, S1);
        push2(&mut blue, B_PT);
        blue_vector_gadget(&mut blue, vj);
        push2(&mut blue, B_PT);
        push2(&mut blue, T1);
    }
    (
        PolylineCurve::new(2, red).unwrap(),
        PolylineCurve::new(2, blue).unwrap(),
    )
}

// 1D gadget coordinates.
const W1: f64 = 5.0 / 3.0;
const W2: f64 = -5.0 / 3.0;
const X1: f64 = -1.0;
const X2: f64 = 1.0;
const S_PT: f64 = 0.0;
// a-points (Red) by parity and bit; b-points (Blue) mirror them.
const A_ODD: [f64; 2] = [-2.0 / 3.0, -1.0 / 3.0];
const A_EVEN: [f64; 2] = [2.0 / 3.0, 1.0 / 3.0];
const B_ODD: [f64; 2] = [2.0 / 3.0, 1.0 / 3.0];
const B_EVEN: [f64; 2] = [-2.0 / 3.0, -1.0 / 3.0];

/// 1D discrete sequences with dFF at least 1 iff an orthogonal pair exists
/// and at most 2/3 otherwise.
pub fn gen_ov_1d_discrete(inst: &OVInstance) -> (PolylineCurve, PolylineCurve) {
    let d = inst.dim();
    let n = inst.u.len().max(inst.v.len());
    let mut blue: Vec<f64> = Vec::new();
    for vj in &inst.v {
        blue.push(W1);
        for (k, &bit) in vj.iter().enumerate() {
            blue.push(if k % 2 == 0 { B_ODD[bit as usize] } else { B_EVEN[bit as usize] });
        }
        blue.push(W2);
    }
    // Filler: D*(N-1) points alternating between the far a-points.
    let filler: Vec<f64> = (0..d * n.saturating_sub(1))
        .map(|k| if k % 2 == 0 { A_ODD[0] } else { A_EVEN[0] })
        .collect();
    let mut red: Vec<f64> = filler.clone();
    red.push(X1);
    for ui in &inst.u {
        red.push(S_PT);
        for (k, &bit) in ui.iter().enumerate() {
            red.push(if k % 2 == 0 { A_ODD[bit as usize] } else { A_EVEN[bit as usize] });
        }
    }
    red.push(S_PT);
    red.push(X2);
    red.extend(&filler);
    (PolylineCurve::from_1d(&red), PolylineCurve::from_1d(&blue))
}

// ---------------------------------------------------------------------------
// Seeded random instances

pub fn random_curve(rng: &mut ChaCha8Rng, dim: usize, n: usize, span: f64) -> PolylineCurve {
    PolylineCurve::new(
        dim,
        (0..n)
            .map(|_| (0..dim).map(|_| rng.gen_range(-span..span)).collect())
            .collect(),
    )
    .unwrap()
}

/// Star-shaped (hence simple) polygon: random radii at sorted random angles.
/// Draws are retried when the angle spacing degenerates numerically.
pub fn random_polygon(rng: &mut ChaCha8Rng, n: usize) -> SimplePolygon {
    assert!(n >= 3);
    loop {
        let mut angles: Vec<f64> = (0..n)
            .map(|_| rng.gen_range(0.0..2.0 * std::f64::consts::PI))
            .collect();
        angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
        // Distinct, well-separated angles keep edges non-degenerate.
        if angles.windows(2).any(|w| w[1] - w[0] < 1e-2)
            || angles[0] + 2.0 * std::f64::consts::PI - angles[n - 1] < 1e-2
        {
            continue;
        }
        let pts: Vec<(f64, f64)> = angles
            .iter()
            .map(|&a| {
                let r = rng.gen_range(1.0..5.0);
                (r * a.cos(), r * a.sin())
            })
            .collect();
        if let Ok(p) = SimplePolygon::new(pts) {
            return p;
        }
    }
}

pub fn random_tree(rng: &mut ChaCha8Rng, n: usize, weighted: bool) -> WeightedTree {
    let edges = (1..n)
        .map(|v| {
            let u = rng.gen_range(0..v);
            let w = if weighted { rng.gen_range(0.5..4.0) } else { 1.0 };
            (u, v, w)
        })
        .collect();
    WeightedTree::new(n.max(1), edges).unwrap()
}

/// Connected geometric graph: random spanning tree plus extra edges.
pub fn random_geometric_graph(rng: &mut ChaCha8Rng, n: usize, extra: usize) -> GeometricGraph {
    let nodes: Vec<(f64, f64)> = (0..n)
        .map(|_| (rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)))
        .collect();
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    for _ in 0..extra {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b && !edges.contains(&(a, b)) && !edges.contains(&(b, a)) {
            edges.push((a, b));
        }
    }
    GeometricGraph::new(nodes, edges).unwrap()
}

/// All binary vectors of dimension `d`.
pub fn all_binary_vectors(d: usize) -> Vec<Vec<u8>> {
    (0..1usize << d)
        .map(|mask| (0..d).map(|k| ((mask >> k) & 1) as u8).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discrete::dff_value;
    use crate::geom::dist;
    use rand::SeedableRng;

    #[test]
    fn alpha_distances_hold() {
        // The gadget's critical pairs all sit at exactly alpha.
        let pairs: Vec<([f64; 2], [f64; 2])> = vec![
            (S1, T2),
            (T1, S2),
            (CU[1], P[3]),
            (CU[1], P[4]),
            (CD[1], P[0]),
            (CD[1], P[7]),
            (R_PT, CU[1]),
            (R_PT, CD[1]),
        ];
        for (a, b) in pairs {
            assert!((dist(&a, &b) - ALPHA_2D).abs() < 1e-12, "{a:?} {b:?}");
        }
        assert!((ALPHA_2D - 5f64.sqrt() / (2.0 * 2f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn no_1d_distance_in_gap() {
        // The 1D points admit no pairwise red-blue distance strictly
        // between 2/3 and 1.
        let reds = [W1, W2, X1, X2, S_PT, A_ODD[0], A_ODD[1], A_EVEN[0], A_EVEN[1]];
        let blues = [W1, W2, B_ODD[0], B_ODD[1], B_EVEN[0], B_EVEN[1]];
        for &a in &reds {
            for &b in &blues {
                let d = (a - b).abs();
                assert!(
                    d <= 2.0 / 3.0 + 1e-12 || d >= 1.0 - 1e-12,
                    "gap distance {d} between {a} and {b}"
                );
            }
        }
    }

    #[test]
    fn odd_dimension_padded() {
        let inst = OVInstance::new(vec![vec![1, 0, 1]], vec![vec![0, 1, 0]]).unwrap();
        assert_eq!(inst.dim(), 4);
    }

    #[test]
    fn dff_gadget_small_cases() {
        // Orthogonal pair present.
        let yes = OVInstance::new(vec![vec![1, 0]], vec![vec![0, 1]]).unwrap();
        let (r, b) = gen_ov_1d_discrete(&yes);
        assert!(dff_value(&r, &b) >= 1.0 - 1e-12);
        // No orthogonal pair.
        let no = OVInstance::new(vec![vec![1, 1]], vec![vec![1, 1]]).unwrap();
        let (r, b) = gen_ov_1d_discrete(&no);
        assert!(dff_value(&r, &b) <= 2.0 / 3.0 + 1e-12);
    }

    #[test]
    fn ff_gadget_small_cases() {
        use crate::freespace::decide_ff;
        let yes = OVInstance::new(vec![vec![0, 0]], vec![vec![0, 0]]).unwrap();
        let (r, b) = gen_ov_2d(&yes);
        assert!(decide_ff(&r, &b, 1.0).unwrap());
        let no = OVInstance::new(vec![vec![1, 1], vec![1, 1]], vec![vec![1, 1]]).unwrap();
        let (r, b) = gen_ov_2d(&no);
        assert!(!decide_ff(&r, &b, ALPHA_2D + 2e-9).unwrap());
    }

    #[test]
    fn seeded_generation_reproducible() {
        let a = random_curve(&mut ChaCha8Rng::seed_from_u64(5), 2, 8, 4.0);
        let b = random_curve(&mut ChaCha8Rng::seed_from_u64(5), 2, 8, 4.0);
        assert_eq!(a, b);
        let t = random_tree(&mut ChaCha8Rng::seed_from_u64(6), 7, true);
        let t2 = random_tree(&mut ChaCha8Rng::seed_from_u64(6), 7, true);
        assert_eq!(t, t2);
    }
}
