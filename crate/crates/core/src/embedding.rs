//! The homeomorphic-embedding relation between signed plane trees.
//!
//! `t1 ↪ t2` holds when `t1` is reachable from `t2` by leaf deletions,
//! removals of a unary root, and contractions of unary paths into edges,
//! all respecting the plane order. [`embeds`] decides it with a bottom-up
//! dynamic program; [`oracle_embeds`] explores the reduction closure directly
//! and is meant for cross-checking on small inputs.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tree::{PlaneTree, Sign};

/// Default size guard for [`oracle_embeds`].
pub const ORACLE_MAX_SIZE: usize = 8;

/// Label order used when matching a vertex of the small tree against one of
/// the large tree. The sign alphabet carries the empty order, so label
/// reduction never applies and only equal labels match.
fn label_fits(small: Sign, large: Sign) -> bool {
    small == large
}

/// Certificate for `t1 ↪ t2`, in preorder indices of each tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingWitness {
    /// Pairs `(vertex of t1, vertex of t2)`.
    pub vertex_map: Vec<(usize, usize)>,
    /// One descending path of `t2` per edge of `t1`, endpoints included,
    /// listed by the child endpoint in preorder of `t1`.
    pub edge_paths: Vec<Vec<usize>>,
}

impl EmbeddingWitness {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("witness serializes")
    }

    pub fn from_json(text: &str) -> Result<EmbeddingWitness> {
        Ok(serde_json::from_str(text)?)
    }
}

/// DP tables for one `(t1, t2)` pair.
///
/// `fits[u][v]`: the subtree of `t1` at `u` embeds with `u` sent to `v`.
/// `below[u][v]`: `fits[u][x]` for some `x` in the subtree of `v`.
struct Table<'a> {
    small: &'a PlaneTree,
    large: &'a PlaneTree,
    fits: Vec<bool>,
    below: Vec<bool>,
}

impl<'a> Table<'a> {
    fn new(small: &'a PlaneTree, large: &'a PlaneTree) -> Self {
        let (n1, n2) = (small.len(), large.len());
        let mut table = Table { small, large, fits: vec![false; n1 * n2], below: vec![false; n1 * n2] };
        // Children carry larger preorder indices, so reverse order is bottom-up.
        for u in (0..n1).rev() {
            for v in (0..n2).rev() {
                let fits = label_fits(small.label(u), large.label(v))
                    && small.subtree_size(u) <= large.subtree_size(v)
                    && table.match_children(u, v).is_some();
                let below = fits || large.children(v).iter().any(|&c| table.below[u * n2 + c]);
                table.fits[u * n2 + v] = fits;
                table.below[u * n2 + v] = below;
            }
        }
        table
    }

    fn fits(&self, u: usize, v: usize) -> bool {
        self.fits[u * self.large.len() + v]
    }

    fn below(&self, u: usize, v: usize) -> bool {
        self.below[u * self.large.len() + v]
    }

    /// Leftmost order-preserving assignment of the children of `u` to
    /// distinct children subtrees of `v`. Greedy is optimal for subsequence
    /// matching.
    fn match_children(&self, u: usize, v: usize) -> Option<Vec<usize>> {
        let targets = self.large.children(v);
        let mut chosen = Vec::with_capacity(self.small.children(u).len());
        let mut next = 0;
        for &c in self.small.children(u) {
            let offset = targets[next..].iter().position(|&y| self.below(c, y))?;
            chosen.push(targets[next + offset]);
            next += offset + 1;
        }
        Some(chosen)
    }

    fn anchor(&self) -> Option<usize> {
        (0..self.large.len()).find(|&v| self.fits(0, v))
    }

    /// Preorder-first vertex `x` in the subtree of `y` with `fits(u, x)`.
    fn first_fit_below(&self, u: usize, y: usize) -> usize {
        (y..y + self.large.subtree_size(y)).find(|&x| self.fits(u, x)).expect("below() promised a fit")
    }

    fn witness(&self) -> Option<EmbeddingWitness> {
        let anchor = self.anchor()?;
        let n1 = self.small.len();
        let mut image = vec![usize::MAX; n1];
        let mut paths = vec![Vec::new(); n1];
        image[0] = anchor;
        for u in 0..n1 {
            // parents precede children in preorder, so image[u] is set
            let v = image[u];
            let entered = self.match_children(u, v).expect("fits() promised a match");
            for (&c, &y) in self.small.children(u).iter().zip(&entered) {
                let x = self.first_fit_below(c, y);
                let mut path = vec![x];
                let mut z = x;
                while z != v {
                    z = self.large.parent(z).expect("x lies below v");
                    path.push(z);
                }
                path.reverse();
                image[c] = x;
                paths[c] = path;
            }
        }
        Some(EmbeddingWitness {
            vertex_map: image.iter().copied().enumerate().collect(),
            edge_paths: paths.into_iter().skip(1).collect(),
        })
    }
}

/// Decides `t1 ↪ t2`.
pub fn embeds(t1: &PlaneTree, t2: &PlaneTree) -> bool {
    if t1.len() > t2.len()
        || t1.count_label(Sign::Plus) > t2.count_label(Sign::Plus)
        || t1.count_label(Sign::Minus) > t2.count_label(Sign::Minus)
    {
        return false;
    }
    Table::new(t1, t2).anchor().is_some()
}

/// A witness for `t1 ↪ t2`, or `None` when there is no embedding. The root
/// of `t1` goes to the preorder-first feasible vertex of `t2`, and children
/// are matched leftmost-first.
pub fn embed_witness(t1: &PlaneTree, t2: &PlaneTree) -> Option<EmbeddingWitness> {
    if t1.len() > t2.len() {
        return None;
    }
    Table::new(t1, t2).witness()
}

/// Checks every structural requirement of a witness for `t1 ↪ t2`.
pub fn verify_witness(t1: &PlaneTree, t2: &PlaneTree, w: &EmbeddingWitness) -> bool {
    let (n1, n2) = (t1.len(), t2.len());
    let mut image = vec![usize::MAX; n1];
    let mut used = vec![false; n2];
    for &(x, y) in &w.vertex_map {
        if x >= n1 || y >= n2 || image[x] != usize::MAX || used[y] {
            return false;
        }
        if !label_fits(t1.label(x), t2.label(y)) {
            return false;
        }
        image[x] = y;
        used[y] = true;
    }
    if image.contains(&usize::MAX) || w.edge_paths.len() != n1 - 1 {
        return false;
    }
    let preimage = |y: usize| image.iter().position(|&i| i == y);

    // path_of[c]: the path realizing the edge parent(c) -> c
    let mut path_of: Vec<Option<&Vec<usize>>> = vec![None; n1];
    let mut interior = vec![false; n2];
    for path in &w.edge_paths {
        if path.len() < 2 || path.iter().any(|&z| z >= n2) {
            return false;
        }
        if path.windows(2).any(|s| t2.parent(s[1]) != Some(s[0])) {
            return false;
        }
        let (Some(p), Some(c)) = (preimage(path[0]), preimage(*path.last().unwrap())) else {
            return false;
        };
        if t1.parent(c) != Some(p) || path_of[c].is_some() {
            return false;
        }
        path_of[c] = Some(path);
        for &z in &path[1..path.len() - 1] {
            if used[z] || interior[z] {
                return false;
            }
            interior[z] = true;
        }
    }
    // Children of each mapped vertex must enter distinct child subtrees of
    // its image in the same left-to-right order.
    for u in 0..n1 {
        let targets = t2.children(image[u]);
        let mut last: Option<usize> = None;
        for &c in t1.children(u) {
            let entered = path_of[c].expect("every edge has a path")[1];
            let Some(pos) = targets.iter().position(|&y| y == entered) else {
                return false;
            };
            if last.is_some_and(|l| pos <= l) {
                return false;
            }
            last = Some(pos);
        }
    }
    true
}

/// Decides `t1 ↪ t2` by breadth-first search over the reduction closure of
/// `t2`, with the default guard `|t2| <= ORACLE_MAX_SIZE`.
pub fn oracle_embeds(t1: &PlaneTree, t2: &PlaneTree) -> Result<bool> {
    oracle_embeds_with_limit(t1, t2, ORACLE_MAX_SIZE)
}

pub fn oracle_embeds_with_limit(t1: &PlaneTree, t2: &PlaneTree, max_size: usize) -> Result<bool> {
    if t2.len() > max_size {
        return Err(Error::GuardExceeded { what: "oracle tree size", actual: t2.len(), limit: max_size });
    }
    let target = t1.to_text();
    let mut seen: HashSet<String> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(t2.to_text());
    queue.push_back(t2.clone());
    while let Some(t) = queue.pop_front() {
        if t.len() == t1.len() {
            if t.to_text() == target {
                return Ok(true);
            }
            continue;
        }
        for next in t.single_reductions() {
            if next.len() >= t1.len() && seen.insert(next.to_text()) {
                queue.push_back(next);
            }
        }
    }
    Ok(false)
}

/// Canonical texts of every tree reachable from `t` by reductions,
/// `t` included.
pub fn minor_closure(t: &PlaneTree, max_size: usize) -> Result<HashSet<String>> {
    if t.len() > max_size {
        return Err(Error::GuardExceeded { what: "oracle tree size", actual: t.len(), limit: max_size });
    }
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(t.to_text());
    queue.push_back(t.clone());
    while let Some(cur) = queue.pop_front() {
        for next in cur.single_reductions() {
            if seen.insert(next.to_text()) {
                queue.push_back(next);
            }
        }
    }
    Ok(seen)
}
