//! Social distance width on trees: Red runs a perpetual depth-first tour,
//! Blue moves with unbounded speed under the tree (geodesic) metric. The
//! optimum equals the largest "2-outlier radius" over vertices: remove a
//! root, take the furthest-vertex distance of each resulting subtree, and
//! keep the third largest.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Undirected tree with positive edge weights, vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedTree {
    pub n: usize,
    pub edges: Vec<(usize, usize, f64)>,
}

impl WeightedTree {
    pub fn new(n: usize, edges: Vec<(usize, usize, f64)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInstance("tree needs at least one vertex".into()));
        }
        if edges.len() != n - 1 {
            return Err(Error::InvalidInstance(format!(
                "tree on {n} vertices needs {} edges, got {}",
                n - 1,
                edges.len()
            )));
        }
        for &(u, v, w) in &edges {
            if u >= n || v >= n || u == v {
                return Err(Error::InvalidInstance(format!("bad edge ({u}, {v})")));
            }
            if !(w > 0.0) || !w.is_finite() {
                return Err(Error::InvalidInstance(format!("bad edge weight {w}")));
            }
        }
        let t = WeightedTree { n, edges };
        // Connectivity: n-1 edges plus reaching every vertex from 0.
        let adj = t.adjacency();
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
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
            return Err(Error::InvalidInstance("tree is not connected".into()));
        }
        Ok(t)
    }

    pub fn unweighted(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        WeightedTree::new(n, edges.iter().map(|&(u, v)| (u, v, 1.0)).collect())
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v, _) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    fn weighted_adjacency(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v, w) in &self.edges {
            adj[u].push((v, w));
            adj[v].push((u, w));
        }
        adj
    }

    /// Tree distances from `root`, with the parent of each vertex.
    pub fn distances_from(&self, root: usize) -> (Vec<f64>, Vec<usize>) {
        let adj = self.weighted_adjacency();
        let mut dist = vec![f64::INFINITY; self.n];
        let mut parent = vec![usize::MAX; self.n];
        dist[root] = 0.0;
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for &(v, w) in &adj[u] {
                if dist[v].is_infinite() {
                    dist[v] = dist[u] + w;
                    parent[v] = u;
                    stack.push(v);
                }
            }
        }
        (dist, parent)
    }

    pub fn all_pairs(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|r| self.distances_from(r).0).collect()
    }

    /// Geodesic distance from `v` to the path between `a` and `b`.
    pub fn dist_to_path(&self, d: &[Vec<f64>], v: usize, a: usize, b: usize) -> f64 {
        0.5 * (d[v][a] + d[v][b] - d[a][b])
    }
}

/// Endpoints and length of a longest simple path.
pub fn tree_diameter(tree: &WeightedTree) -> (usize, usize, f64) {
    let (d0, _) = tree.distances_from(0);
    let a = (0..tree.n).max_by(|&x, &y| d0[x].partial_cmp(&d0[y]).unwrap()).unwrap();
    let (da, _) = tree.distances_from(a);
    let b = (0..tree.n).max_by(|&x, &y| da[x].partial_cmp(&da[y]).unwrap()).unwrap();
    (a, b, da[b])
}

/// The 2-outlier radius at `root` plus its three witnesses: furthest
/// vertices in three distinct subtrees of the root's removal, ordered by
/// non-increasing distance. Returns distance 0 and no witnesses when fewer
/// than three subtrees exist.
pub fn two_outlier_radius(tree: &WeightedTree, root: usize) -> (f64, Option<[usize; 3]>) {
    let (dist, parent) = tree.distances_from(root);
    // Subtree of v = the root child on the path root -> v.
    let mut branch = vec![usize::MAX; tree.n];
    for v in 0..tree.n {
        if v == root {
            continue;
        }
        let mut x = v;
        while parent[x] != root {
            x = parent[x];
        }
        branch[v] = x;
    }
    // Furthest vertex per subtree.
    let mut best: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
    for v in 0..tree.n {
        if v == root {
            continue;
        }
        let e = best.entry(branch[v]).or_insert(v);
        if dist[v] > dist[*e] {
            *e = v;
        }
    }
    let mut tops: Vec<usize> = best.into_values().collect();
    tops.sort_by(|&x, &y| dist[y].partial_cmp(&dist[x]).unwrap());
    if tops.len() < 3 {
        return (0.0, None);
    }
    ((dist[tops[2]]), Some([tops[0], tops[1], tops[2]]))
}

/// Blue's optimal stationing: the best root, its three witnesses, and the
/// achieved separation value.
#[derive(Debug, Clone, PartialEq)]
pub struct BlueStrategy {
    pub root: usize,
    pub witnesses: Option<[usize; 3]>,
    pub value: f64,
}

/// Optimal separation on the tree, found by scanning every vertex.
pub fn tree_sdw(tree: &WeightedTree) -> f64 {
    blue_strategy(tree).value
}

pub fn blue_strategy(tree: &WeightedTree) -> BlueStrategy {
    let mut best = BlueStrategy {
        root: 0,
        witnesses: None,
        value: 0.0,
    };
    for r in 0..tree.n {
        let (val, wit) = two_outlier_radius(tree, r);
        if wit.is_some() && val > best.value {
            best = BlueStrategy {
                root: r,
                witnesses: wit,
                value: val,
            };
        }
    }
    best
}

/// Same optimum, restricted to vertices on one diameter path.
pub fn tree_sdw_on_diameter(tree: &WeightedTree) -> f64 {
    let (a, b, _) = tree_diameter(tree);
    let (_, parent) = tree.distances_from(a);
    let mut path = vec![b];
    let mut x = b;
    while x != a {
        x = parent[x];
        path.push(x);
    }
    path.iter()
        .map(|&r| two_outlier_radius(tree, r).0)
        .fold(0.0, f64::max)
}

/// Minimum separation when Blue plays the witness-cycling strategy against
/// one period of the given depth-first tour (a closed vertex walk).
///
/// Blue sits at the witness whose subtree (under the strategy root) Red
/// enters last. While Red stays outside that subtree its distance to Blue
/// is at least the root-to-witness distance, which is at least the value.
/// Before Red can enter, the depth-first tour has to finish both other
/// subtrees, so Red touches another witness — at that moment Red is at
/// least the value away from the root and Blue re-parks (through the root)
/// at whichever witness's subtree is now entered last.
pub fn simulate_blue_strategy(tree: &WeightedTree, strategy: &BlueStrategy, tour: &[usize]) -> f64 {
    let wit = match strategy.witnesses {
        Some(w) => w,
        None => return 0.0,
    };
    let root = strategy.root;
    let d = tree.all_pairs();
    let (_, parent) = tree.distances_from(root);
    let branch_of = |v: usize| -> usize {
        if v == root {
            return usize::MAX;
        }
        let mut x = v;
        while parent[x] != root {
            x = parent[x];
        }
        x
    };
    let wbranch: [usize; 3] = [branch_of(wit[0]), branch_of(wit[1]), branch_of(wit[2])];
    let steps = tour.len();
    // Steps until Red's vertex next lies in witness i's subtree (tour[k]
    // itself excluded).
    let next_entry = |k: usize, i: usize| -> usize {
        (1..=steps)
            .find(|&s| branch_of(tour[(k + s) % steps]) == wbranch[i])
            .unwrap_or(usize::MAX)
    };
    // Initial position: subtree entered last counting from Red's start.
    let mut blue_i = (0..3).max_by_key(|&i| next_entry(steps - 1, i)).unwrap();
    let mut min_sep = f64::INFINITY;
    // Simulate a few periods so the steady-state cycle is exercised.
    for period in 0..3 {
        for k in 0..steps {
            let v = tour[k];
            let u = tour[(k + steps - 1) % steps];
            let blue = wit[blue_i];
            if !(period == 0 && k == 0) {
                // Red traverses edge u -> v; Blue is parked at a vertex, so
                // the minimum over the edge is attained at an endpoint.
                min_sep = min_sep.min(d[blue][u].min(d[blue][v]));
            } else {
                min_sep = min_sep.min(d[blue][v]);
            }
            if wit.contains(&v) && v != blue {
                // Never target the subtree Red is standing in.
                let target = (0..3)
                    .filter(|&i| i != blue_i && wbranch[i] != branch_of(v))
                    .max_by_key(|&i| next_entry(k, i));
                let Some(target) = target else { continue };
                if next_entry(k, target) > next_entry(k, blue_i) {
                    // Jump along the geodesic blue -> target while Red holds
                    // at v; the closest approach is to that whole path.
                    min_sep = min_sep.min(tree.dist_to_path(&d, v, blue, wit[target]));
                    blue_i = target;
                }
            }
        }
    }
    min_sep
}

/// A canonical depth-first tour: rooted at `root`, children in index order.
pub fn canonical_dfs_tour(tree: &WeightedTree, root: usize) -> Vec<usize> {
    let adj = tree.adjacency();
    let mut tour = vec![root];
    fn rec(adj: &[Vec<usize>], v: usize, parent: usize, tour: &mut Vec<usize>) {
        for &c in &adj[v] {
            if c == parent {
                continue;
            }
            tour.push(c);
            rec(adj, c, v, tour);
            tour.push(v);
        }
    }
    rec(&adj, root, usize::MAX, &mut tour);
    tour.pop();
    if tour.is_empty() {
        tour.push(root);
    }
    tour
}

// ---------------------------------------------------------------------------
// JSON I/O

#[derive(Serialize, Deserialize)]
struct TreeFile {
    n: usize,
    edges: Vec<(usize, usize, f64)>,
}

pub fn parse_tree(s: &str) -> Result<WeightedTree> {
    let f: TreeFile = serde_json::from_str(s)?;
    WeightedTree::new(f.n, f.edges)
}

pub fn serialize_tree(t: &WeightedTree) -> String {
    serde_json::to_string(&TreeFile {
        n: t.n,
        edges: t.edges.clone(),
    })
    .unwrap()
}
