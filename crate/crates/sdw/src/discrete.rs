//! Discrete flipped Fréchet measure: the max-min dynamic program over
//! vertex-sequence traversals, with witness extraction.

use crate::geom::{dist, PolylineCurve};

/// Value of the discrete max-min measure: the best achievable minimum pair
/// distance over all monotone traversals of the two vertex sequences.
///
/// Recurrence: `OPT[i][j] = min(‖P[i]-Q[j]‖, max(OPT[i-1][j], OPT[i][j-1],
/// OPT[i-1][j-1]))`, with missing predecessors excluded from the max.
pub fn dff_value(p: &PolylineCurve, q: &PolylineCurve) -> f64 {
    dff_table(p, q).0[p.len() - 1][q.len() - 1]
}

#[derive(Clone, Copy, PartialEq)]
enum Move {
    None,
    Left,
    Down,
    Diag,
}

fn dff_table(p: &PolylineCurve, q: &PolylineCurve) -> (Vec<Vec<f64>>, Vec<Vec<Move>>) {
    let n = p.len();
    let m = q.len();
    // Pairwise distances once; the DP itself is dimension-free.
    let d: Vec<Vec<f64>> = p
        .points
        .iter()
        .map(|pi| q.points.iter().map(|qj| dist(pi, qj)).collect())
        .collect();
    let mut val = vec![vec![0.0f64; m]; n];
    let mut pred = vec![vec![Move::None; m]; n];
    for i in 0..n {
        for j in 0..m {
            if i == 0 && j == 0 {
                val[0][0] = d[0][0];
                continue;
            }
            let mut best = f64::NEG_INFINITY;
            let mut mv = Move::None;
            // Tie order diag > left > down keeps witnesses deterministic.
            if i > 0 && j > 0 && val[i - 1][j - 1] > best {
                best = val[i - 1][j - 1];
                mv = Move::Diag;
            }
            if j > 0 && val[i][j - 1] > best {
                best = val[i][j - 1];
                mv = Move::Left;
            }
            if i > 0 && val[i - 1][j] > best {
                best = val[i - 1][j];
                mv = Move::Down;
            }
            val[i][j] = d[i][j].min(best);
            pred[i][j] = mv;
        }
    }
    (val, pred)
}

/// A traversal achieving `dff_value`, as 1-based `(i, j)` index pairs from
/// `(1, 1)` to `(n, m)`.
pub fn dff_witness(p: &PolylineCurve, q: &PolylineCurve) -> Vec<(usize, usize)> {
    let (_, pred) = dff_table(p, q);
    let mut path = Vec::new();
    let (mut i, mut j) = (p.len() - 1, q.len() - 1);
    loop {
        path.push((i + 1, j + 1));
        match pred[i][j] {
            Move::None => break,
            Move::Left => j -= 1,
            Move::Down => i -= 1,
            Move::Diag => {
                i -= 1;
                j -= 1;
            }
        }
    }
    path.reverse();
    path
}

/// Minimum pair distance along a traversal; the witness contract is that
/// this equals `dff_value` exactly.
pub fn traversal_min_distance(
    p: &PolylineCurve,
    q: &PolylineCurve,
    traversal: &[(usize, usize)],
) -> f64 {
    traversal
        .iter()
        .map(|&(i, j)| dist(&p.points[i - 1], &q.points[j - 1]))
        .fold(f64::INFINITY, f64::min)
}

/// Checks the step rule: starts at (1,1), ends at (n,m), steps from (i,j) to
/// (i,j+1), (i+1,j), or (i+1,j+1).
pub fn traversal_is_valid(n: usize, m: usize, traversal: &[(usize, usize)]) -> bool {
    if traversal.first() != Some(&(1, 1)) || traversal.last() != Some(&(n, m)) {
        return false;
    }
    traversal.windows(2).all(|w| {
        let (di, dj) = (w[1].0 as i64 - w[0].0 as i64, w[1].1 as i64 - w[0].1 as i64);
        (0..=1).contains(&di) && (0..=1).contains(&dj) && di + dj > 0
    })
}
