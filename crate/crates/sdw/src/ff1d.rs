//! Near-linear decision and optimization of the continuous max-min
//! separation for curves on the real line, plus the k-agent extension.
//!
//! The decision works on a shifted pair: agent order on the line cannot
//! change while separation stays positive, so "separation > δ" becomes
//! "the upper curve, shifted down by δ, stays strictly above the lower one".

use crate::geom::PolylineCurve;
use crate::{Error, Result};

/// Outcome of the extreme-point reduction on a shifted pair.
pub enum Reduction {
    /// An extreme-point condition is violated; no traversal exists.
    No,
    /// Two canonical subproblems (suffixes from the extreme points, and the
    /// reversed prefixes); the overall answer is their conjunction.
    Subproblems {
        b_max_index: usize,
        r_min_index: usize,
        suffix: (Vec<f64>, Vec<f64>),
        reversed_prefix: (Vec<f64>, Vec<f64>),
    },
}

fn argmax_first(v: &[f64]) -> usize {
    let mut best = 0;
    for (i, &x) in v.iter().enumerate() {
        if x > v[best] {
            best = i;
        }
    }
    best
}

fn argmin_first(v: &[f64]) -> usize {
    let mut best = 0;
    for (i, &x) in v.iter().enumerate() {
        if x < v[best] {
            best = i;
        }
    }
    best
}

/// Reduce `(R, B, δ)` to canonical subproblems. `B` is shifted by `-δ`
/// first; the roles are fixed so that `R` starts below the shifted `B`.
pub fn reduce_to_canonical(red: &[f64], blue: &[f64], delta: f64) -> Result<Reduction> {
    let (low, high) = match orient(red, blue, delta) {
        Some(pair) => pair,
        None => return Ok(Reduction::No),
    };
    if low[0] >= high[0] {
        return Err(Error::InvalidInstance(
            "shifted start gap must be positive".into(),
        ));
    }
    let bi = argmax_first(&high);
    let ri = argmin_first(&low);
    // Lemma items (i): everything of the low curve left of b_max, everything
    // of the high curve right of r_min.
    if low.iter().any(|&x| x >= high[bi]) || high.iter().any(|&x| x <= low[ri]) {
        return Ok(Reduction::No);
    }
    let suffix = (low[ri..].to_vec(), high[bi..].to_vec());
    let mut rp: Vec<f64> = low[..=ri].to_vec();
    rp.reverse();
    let mut bp: Vec<f64> = high[..=bi].to_vec();
    bp.reverse();
    Ok(Reduction::Subproblems {
        b_max_index: bi,
        r_min_index: ri,
        suffix,
        reversed_prefix: (rp, bp),
    })
}

/// Pick the lower/upper roles after the δ shift, or None when the start
/// gap already fails.
fn orient(red: &[f64], blue: &[f64], delta: f64) -> Option<(Vec<f64>, Vec<f64>)> {
    if blue[0] - red[0] > delta {
        Some((red.to_vec(), blue.iter().map(|&x| x - delta).collect()))
    } else if red[0] - blue[0] > delta {
        Some((blue.to_vec(), red.iter().map(|&x| x - delta).collect()))
    } else {
        None
    }
}

/// Waypoints `(low index, high index)` of a feasible traversal of a
/// canonical instance; exactly one agent moves per leg.
fn decide_canonical(low: &[f64], high: &[f64]) -> Option<Vec<(usize, usize)>> {
    let mut lo = 0usize; // offsets into the full slices
    let mut hi = 0usize;
    let mut waypoints = vec![(0usize, 0usize)];
    loop {
        let l = &low[lo..];
        let h = &high[hi..];
        let (n, m) = (l.len(), h.len());
        let b_min = h.iter().cloned().fold(f64::INFINITY, f64::min);
        let r_max = l.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if b_min <= l[0] || r_max >= h[0] {
            return None;
        }
        if b_min > r_max || h[m - 1] > r_max {
            // High traverses to its end while low waits, then low finishes.
            waypoints.push((lo, hi + m - 1));
            waypoints.push((lo + n - 1, hi + m - 1));
            return Some(waypoints);
        }
        // Last high vertex strictly above r_max; exists since h[0] > r_max.
        let j_plus = (0..m).rev().find(|&j| h[j] > r_max).unwrap();
        // Low's last visit to r_max, then its leftmost vertex afterwards.
        let k = (0..n).rev().find(|&i| l[i] == r_max).unwrap();
        if k == n - 1 {
            return None; // low ends at r_max >= h[m-1]
        }
        let i_minus = k + 1 + argmin_first(&l[k + 1..]);
        waypoints.push((lo, hi + j_plus));
        waypoints.push((lo + i_minus, hi + j_plus));
        lo += i_minus;
        hi += j_plus;
    }
}

/// Feasible traversal of the shifted pair as `(low index, high index)`
/// waypoints over the full curves, or None.
fn decide_shifted(low: &[f64], high: &[f64]) -> Option<Vec<(usize, usize)>> {
    if high[0] <= low[0] {
        return None;
    }
    let bi = argmax_first(high);
    let ri = argmin_first(low);
    if low.iter().any(|&x| x >= high[bi]) || high.iter().any(|&x| x <= low[ri]) {
        return None;
    }
    let mut rp: Vec<f64> = low[..=ri].to_vec();
    rp.reverse();
    let mut bp: Vec<f64> = high[..=bi].to_vec();
    bp.reverse();
    let pre = decide_canonical(&rp, &bp)?;
    let suf = decide_canonical(&low[ri..], &high[bi..])?;
    // Prefix waypoints run from the extreme points back to the starts; play
    // them backwards, then append the suffix.
    let mut waypoints: Vec<(usize, usize)> = pre
        .iter()
        .rev()
        .map(|&(u, v)| (ri - u, bi - v))
        .collect();
    waypoints.extend(suf.iter().skip(1).map(|&(u, v)| (ri + u, bi + v)));
    Some(waypoints)
}

/// YES iff a coordinated traversal keeps |R - B| strictly above `delta`
/// at all times.
pub fn decide_1d(red: &[f64], blue: &[f64], delta: f64) -> bool {
    decide_1d_witness(red, blue, delta).is_some()
}

/// As `decide_1d`, returning traversal waypoints `(red param, blue param)`
/// in the curves' `[1, n]` parameterization.
pub fn decide_1d_witness(red: &[f64], blue: &[f64], delta: f64) -> Option<Vec<(f64, f64)>> {
    let swapped = match orient(red, blue, delta) {
        None => return None,
        Some(_) => red[0] - blue[0] > delta,
    };
    let (low, high) = orient(red, blue, delta).unwrap();
    let wps = decide_shifted(&low, &high)?;
    Some(
        wps.into_iter()
            .map(|(l, h)| {
                if swapped {
                    // low role = blue, high role = red
                    ((h + 1) as f64, (l + 1) as f64)
                } else {
                    ((l + 1) as f64, (h + 1) as f64)
                }
            })
            .collect(),
    )
}

/// Supremum separation maintainable by some traversal. Attained at a
/// vertex pair, so the search runs over all pairwise vertex distances.
pub fn ff_value_1d(red: &[f64], blue: &[f64]) -> f64 {
    let mut cands: Vec<f64> = vec![0.0];
    for &r in red {
        for &b in blue {
            cands.push((b - r).abs());
        }
    }
    cands.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cands.dedup();
    // decide(δ) is YES exactly below the supremum, so the value is the
    // first candidate answering NO.
    let mut lo = 0usize;
    let mut hi = cands.len();
    while lo < hi {
        let mid = (lo + hi) / 2;
        if decide_1d(red, blue, cands[mid]) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    if lo == cands.len() {
        *cands.last().unwrap()
    } else {
        cands[lo]
    }
}

/// k-agent decision: can all agents traverse their curves while every
/// adjacent pair keeps separation strictly above `delta`?
///
/// Agents are ordered left-to-right and cannot cross in 1D, so adjacent
/// pairs suffice. Each curve is shifted by `-(i-1)·δ` and agents are
/// aligned sequentially against the previous agent's fixed trajectory.
pub fn decide_1d_k_agents(curves: &[Vec<f64>], delta: f64) -> Result<bool> {
    if curves.is_empty() {
        return Err(Error::InvalidInstance("no agents".into()));
    }
    for w in curves.windows(2) {
        if w[1][0] - w[0][0] <= delta {
            return Ok(false); // initial positions already violate separation
        }
    }
    if curves.len() == 1 {
        return Ok(true);
    }
    let shifted: Vec<Vec<f64>> = curves
        .iter()
        .enumerate()
        .map(|(i, c)| c.iter().map(|&x| x - i as f64 * delta).collect())
        .collect();
    // First pair: both free.
    let mut wps = match decide_shifted(&shifted[0], &shifted[1]) {
        Some(w) => w,
        None => return Ok(false),
    };
    let mut traj = expand_high_trajectory(&shifted[0], &shifted[1], &wps);
    for next in shifted.iter().skip(2) {
        // The previous agent's trajectory is fixed as a curve; any monotone
        // re-timing of it propagates back through the earlier witnesses.
        wps = match decide_shifted(&traj, next) {
            Some(w) => w,
            None => return Ok(false),
        };
        traj = expand_high_trajectory(&traj, next, &wps);
    }
    Ok(true)
}

/// Spatial trajectory of the high agent along a witness, with every vertex
/// the agent passes through included.
fn expand_high_trajectory(low: &[f64], high: &[f64], wps: &[(usize, usize)]) -> Vec<f64> {
    let _ = low;
    let mut traj = vec![high[wps[0].1]];
    for w in wps.windows(2) {
        let (h0, h1) = (w[0].1, w[1].1);
        for j in h0 + 1..=h1 {
            traj.push(high[j]);
        }
        if h0 == h1 {
            traj.push(high[h1]); // low moved; high held its position
        }
    }
    traj
}

/// Checks a witness: monotone parameters, endpoints, and strict separation
/// at every sampled configuration along each leg.
pub fn witness_min_separation(red: &[f64], blue: &[f64], wps: &[(f64, f64)]) -> f64 {
    let rc = PolylineCurve::from_1d(red);
    let bc = PolylineCurve::from_1d(blue);
    let mut min = f64::INFINITY;
    for w in wps.windows(2) {
        for k in 0..=16 {
            let f = k as f64 / 16.0;
            let rp = rc.point_at(w[0].0 + f * (w[1].0 - w[0].0)).unwrap()[0];
            let bp = bc.point_at(w[0].1 + f * (w[1].1 - w[0].1)).unwrap()[0];
            min = min.min((rp - bp).abs());
        }
    }
    // Vertices passed through by the moving agent in each leg.
    for w in wps.windows(2) {
        let (r0, r1) = (w[0].0, w[1].0);
        let (b0, b1) = (w[0].1, w[1].1);
        if (r1 - r0).abs() > 0.0 {
            for i in r0.ceil() as usize..=r1.floor() as usize {
                let f = (i as f64 - r0) / (r1 - r0);
                let bp = bc.point_at(b0 + f * (b1 - b0)).unwrap()[0];
                min = min.min((red[i - 1] - bp).abs());
            }
        }
        if (b1 - b0).abs() > 0.0 {
            for j in b0.ceil() as usize..=b1.floor() as usize {
                let f = (j as f64 - b0) / (b1 - b0);
                let rp = rc.point_at(r0 + f * (r1 - r0)).unwrap()[0];
                min = min.min((rp - blue[j - 1]).abs());
            }
        }
    }
    min
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{oracle_grid_curves, oracle_grid_k_agents, GridConfig};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn static_pair() {
        assert!(decide_1d(&[0.0, 0.0], &[5.0, 5.0], 4.0));
        assert!(!decide_1d(&[0.0, 0.0], &[5.0, 5.0], 5.0));
        assert_eq!(ff_value_1d(&[0.0, 0.0], &[5.0, 5.0]), 5.0);
    }

    #[test]
    fn crossing_forces_zero() {
        assert!(!decide_1d(&[0.0, 10.0], &[10.0, 0.0], 0.0));
        assert_eq!(ff_value_1d(&[0.0, 10.0], &[10.0, 0.0]), 0.0);
    }

    #[test]
    fn reduction_examples() {
        match reduce_to_canonical(&[0.0], &[5.0], 1.0).unwrap() {
            Reduction::Subproblems { suffix, reversed_prefix, .. } => {
                assert_eq!(suffix.0, vec![0.0]);
                assert_eq!(suffix.1, vec![4.0]);
                assert_eq!(reversed_prefix.0, vec![0.0]);
            }
            Reduction::No => panic!("expected subproblems"),
        }
        // R contains 6 >= b_max = 5.
        assert!(matches!(
            reduce_to_canonical(&[0.0, 6.0], &[5.0, 5.0], 0.0).unwrap(),
            Reduction::No
        ));
        match reduce_to_canonical(&[0.0, 1.0, 0.0], &[3.0, 2.0, 3.0], 0.0).unwrap() {
            Reduction::Subproblems { b_max_index, r_min_index, .. } => {
                // First occurrences of the extremes.
                assert_eq!(b_max_index, 0);
                assert_eq!(r_min_index, 0);
            }
            Reduction::No => panic!("expected subproblems"),
        }
    }

    #[test]
    fn witness_is_sound() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut yes = 0;
        for _ in 0..500 {
            let n = rng.gen_range(1..=8);
            let m = rng.gen_range(1..=8);
            let r: Vec<f64> = (0..n).map(|_| rng.gen_range(0..12) as f64).collect();
            let b: Vec<f64> = (0..m).map(|_| rng.gen_range(0..12) as f64).collect();
            let delta = rng.gen_range(0.0..4.0);
            if let Some(w) = decide_1d_witness(&r, &b, delta) {
                yes += 1;
                assert!(w.first().unwrap() == &(1.0, 1.0));
                assert!(w.last().unwrap() == &(n as f64, m as f64));
                assert!(w.windows(2).all(|p| p[1].0 >= p[0].0 && p[1].1 >= p[0].1));
                let sep = witness_min_separation(&r, &b, &w);
                assert!(sep > delta - 1e-12, "sep {sep} <= delta {delta}");
            }
        }
        assert!(yes > 30, "too few YES instances exercised: {yes}");
    }

    #[test]
    fn agrees_with_grid_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let cfg = GridConfig::with_resolution(64);
        for _ in 0..300 {
            let n = rng.gen_range(2..=8);
            let m = rng.gen_range(2..=8);
            let r: Vec<f64> = (0..n).map(|_| rng.gen_range(0..10) as f64).collect();
            let b: Vec<f64> = (0..m).map(|_| rng.gen_range(0..10) as f64).collect();
            let value = ff_value_1d(&r, &b);
            let delta = rng.gen_range(0.0..6.0);
            let max_edge = PolylineCurve::from_1d(&r)
                .max_edge_len()
                .max(PolylineCurve::from_1d(&b).max_edge_len());
            if (delta - value).abs() <= 2.0 * max_edge / 64.0 {
                continue;
            }
            let rc = PolylineCurve::from_1d(&r);
            let bc = PolylineCurve::from_1d(&b);
            let oracle = oracle_grid_curves(&rc, &bc, delta, &cfg).unwrap();
            assert_eq!(decide_1d(&r, &b, delta), oracle, "r={r:?} b={b:?} d={delta}");
        }
    }

    #[test]
    fn monotone_in_delta_and_reflection_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let n = rng.gen_range(1..=7);
            let m = rng.gen_range(1..=7);
            let r: Vec<f64> = (0..n).map(|_| rng.gen_range(-6.0..6.0)).collect();
            let b: Vec<f64> = (0..m).map(|_| rng.gen_range(-6.0..6.0)).collect();
            let d1: f64 = rng.gen_range(0.0..5.0);
            let d2 = rng.gen_range(0.0..d1.max(1e-9));
            if decide_1d(&r, &b, d1) {
                assert!(decide_1d(&r, &b, d2));
            }
            let rr: Vec<f64> = r.iter().map(|&x| -x).collect();
            let bb: Vec<f64> = b.iter().map(|&x| -x).collect();
            assert_eq!(decide_1d(&r, &b, d1), decide_1d(&rr, &bb, d1));
        }
    }

    #[test]
    fn value_bracketing() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..200 {
            let n = rng.gen_range(1..=8);
            let m = rng.gen_range(1..=8);
            let r: Vec<f64> = (0..n).map(|_| rng.gen_range(0..10) as f64).collect();
            let b: Vec<f64> = (0..m).map(|_| rng.gen_range(0..10) as f64).collect();
            let v = ff_value_1d(&r, &b);
            if v > 0.0 {
                assert!(decide_1d(&r, &b, v - 1e-6));
            }
            assert!(!decide_1d(&r, &b, v + 1e-6));
            // Matches the exhaustive candidate sweep.
            let mut best = 0.0f64;
            for &rv in &r {
                for &bv in &b {
                    let c = (bv - rv).abs();
                    if c > best && decide_1d(&r, &b, c - 1e-9) && !decide_1d(&r, &b, c) {
                        best = c;
                    }
                }
            }
            assert!((v - best).abs() < 1e-12);
        }
    }

    #[test]
    fn k_agents_basics() {
        // Three static agents with pairwise gaps of 5.
        let curves = vec![vec![0.0], vec![5.0], vec![10.0]];
        assert!(decide_1d_k_agents(&curves, 4.0).unwrap());
        assert!(!decide_1d_k_agents(&curves, 5.0).unwrap());
        // k = 2 reduces to decide_1d.
        let r = vec![0.0, 4.0, 1.0, 5.0];
        let b = vec![7.0, 3.0, 8.0, 2.0];
        for delta in [0.25, 0.5, 1.0, 2.0] {
            assert_eq!(
                decide_1d_k_agents(&[r.clone(), b.clone()], delta).unwrap(),
                decide_1d(&r, &b, delta)
            );
        }
    }

    #[test]
    fn k3_agrees_with_product_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..60 {
            let mut curves = Vec::new();
            let mut base = 0.0;
            for _ in 0..3 {
                let n = rng.gen_range(1..=4);
                let mut c: Vec<f64> = (0..n).map(|_| base + rng.gen_range(0..4) as f64).collect();
                c[0] = base;
                curves.push(c);
                base += rng.gen_range(3..6) as f64;
            }
            let delta = rng.gen_range(0.5..3.0);
            let max_edge: f64 = curves
                .iter()
                .map(|c| PolylineCurve::from_1d(c).max_edge_len())
                .fold(0.0, f64::max);
            // Margin rule around the solver's threshold.
            let mut lo = 0.0;
            let mut hi = 16.0;
            for _ in 0..40 {
                let mid = 0.5 * (lo + hi);
                if decide_1d_k_agents(&curves, mid).unwrap() {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            if (delta - lo).abs() <= 2.0 * max_edge.max(1.0) / 32.0 {
                continue;
            }
            let oracle = oracle_grid_k_agents(&curves, delta, 32).unwrap();
            assert_eq!(
                decide_1d_k_agents(&curves, delta).unwrap(),
                oracle,
                "curves={curves:?} delta={delta}"
            );
        }
    }
}
