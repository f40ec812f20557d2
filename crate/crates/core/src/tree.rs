//! Signed plane trees.
//!
//! A [`PlaneTree`] is a rooted tree whose vertices carry a sign and whose
//! children are linearly ordered. Every value is stored in preorder, so the
//! root is vertex `0` and the subtree of `v` occupies the index range
//! `v..v + subtree_size(v)`. Operations that derive a new tree renumber it in
//! preorder.
//!
//! Text grammar (whitespace allowed between tokens):
//!
//! ```text
//! Tree     := Sign Children?
//! Sign     := '+' | '-'
//! Children := '(' Tree (',' Tree)* ')'
//! ```

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn from_byte(b: u8) -> Option<Sign> {
        match b {
            b'+' => Some(Sign::Plus),
            b'-' => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Raw vertex record, as accepted by [`PlaneTree::from_records`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexRecord {
    pub label: Sign,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Vertex {
    label: Sign,
    parent: Option<usize>,
    children: Vec<usize>,
    size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlaneTree {
    vertices: Vec<Vertex>,
}

impl PlaneTree {
    pub fn leaf(label: Sign) -> PlaneTree {
        PlaneTree { vertices: vec![Vertex { label, parent: None, children: Vec::new(), size: 1 }] }
    }

    /// Builds a tree with root `label` and the given subtrees as ordered children.
    pub fn node(label: Sign, subtrees: Vec<PlaneTree>) -> PlaneTree {
        let mut labels = vec![label];
        let mut parents = vec![None];
        for sub in &subtrees {
            let offset = labels.len();
            for (i, v) in sub.vertices.iter().enumerate() {
                labels.push(v.label);
                parents.push(Some(match v.parent {
                    Some(p) => p + offset,
                    None => 0,
                }));
                debug_assert_eq!(labels.len() - 1, offset + i);
            }
        }
        PlaneTree::from_preorder(labels, parents)
    }

    /// Validates arbitrary vertex records and renumbers them in preorder.
    pub fn from_records(records: &[VertexRecord], root: usize) -> Result<PlaneTree> {
        let n = records.len();
        if n == 0 {
            return Err(Error::InvalidTree("no vertices".into()));
        }
        if root >= n {
            return Err(Error::InvalidTree(format!("root {root} out of range")));
        }
        let mut owner: Vec<Option<usize>> = vec![None; n];
        for (v, rec) in records.iter().enumerate() {
            if v == root {
                if rec.parent.is_some() {
                    return Err(Error::InvalidTree("root has a parent".into()));
                }
            } else if rec.parent.is_none() {
                return Err(Error::InvalidTree(format!("vertex {v} has no parent")));
            }
            for &c in &rec.children {
                if c >= n {
                    return Err(Error::InvalidTree(format!("child {c} out of range")));
                }
                if owner[c].is_some() {
                    return Err(Error::InvalidTree(format!("vertex {c} listed as a child twice")));
                }
                owner[c] = Some(v);
            }
        }
        for (v, rec) in records.iter().enumerate() {
            if rec.parent != owner[v] {
                return Err(Error::InvalidTree(format!("parent of vertex {v} disagrees with children lists")));
            }
        }
        // Traverse from the root; anything unreached lies on a cycle.
        let mut map = vec![usize::MAX; n];
        let mut labels = Vec::with_capacity(n);
        let mut parents = Vec::with_capacity(n);
        let mut stack = vec![(root, None)];
        while let Some((v, parent)) = stack.pop() {
            if map[v] != usize::MAX {
                return Err(Error::InvalidTree("cycle detected".into()));
            }
            map[v] = labels.len();
            labels.push(records[v].label);
            parents.push(parent);
            for &c in records[v].children.iter().rev() {
                stack.push((c, Some(map[v])));
            }
        }
        if labels.len() != n {
            return Err(Error::InvalidTree("not connected".into()));
        }
        Ok(PlaneTree::from_preorder(labels, parents))
    }

    /// `parents[i] < i` for every non-root vertex, and children appear in
    /// increasing index order, which is exactly preorder.
    pub(crate) fn from_preorder(labels: Vec<Sign>, parents: Vec<Option<usize>>) -> PlaneTree {
        let n = labels.len();
        let mut vertices: Vec<Vertex> = labels
            .into_iter()
            .zip(&parents)
            .map(|(label, &parent)| Vertex { label, parent, children: Vec::new(), size: 1 })
            .collect();
        for v in 1..n {
            let p = parents[v].expect("non-root vertex without parent");
            vertices[p].children.push(v);
        }
        for v in (1..n).rev() {
            let p = parents[v].unwrap();
            vertices[p].size += vertices[v].size;
        }
        PlaneTree { vertices }
    }

    /// Rebuilds the tree reachable from `root` where `children_of` gives the
    /// (old-index) ordered children of each old vertex.
    fn rebuild<F>(&self, root: usize, children_of: F) -> PlaneTree
    where
        F: Fn(usize) -> Vec<usize>,
    {
        let mut labels = Vec::new();
        let mut parents = Vec::new();
        let mut stack = vec![(root, None)];
        while let Some((v, parent)) = stack.pop() {
            let id = labels.len();
            labels.push(self.vertices[v].label);
            parents.push(parent);
            for c in children_of(v).into_iter().rev() {
                stack.push((c, Some(id)));
            }
        }
        PlaneTree::from_preorder(labels, parents)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    /// Always false: the empty tree is not representable.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn label(&self, v: usize) -> Sign {
        self.vertices[v].label
    }

    pub fn labels(&self) -> impl Iterator<Item = Sign> + '_ {
        self.vertices.iter().map(|v| v.label)
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.vertices[v].parent
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.vertices[v].children
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.vertices[v].children.is_empty()
    }

    pub fn subtree_size(&self, v: usize) -> usize {
        self.vertices[v].size
    }

    /// True iff `d` lies in the subtree of `a` and differs from it.
    pub fn is_strict_descendant(&self, a: usize, d: usize) -> bool {
        d > a && d < a + self.vertices[a].size
    }

    /// Edges `(parent, child)` listed by child in preorder.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..self.len()).map(|v| (self.vertices[v].parent.unwrap(), v))
    }

    pub fn count_label(&self, label: Sign) -> usize {
        self.labels().filter(|&l| l == label).count()
    }

    pub fn records(&self) -> Vec<VertexRecord> {
        self.vertices
            .iter()
            .map(|v| VertexRecord { label: v.label, parent: v.parent, children: v.children.clone() })
            .collect()
    }

    pub fn parse(text: &str) -> Result<PlaneTree> {
        Parser::new(text).parse()
    }

    /// Canonical text: no whitespace, children in stored order.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.len() * 3);
        // (vertex, index of next child to emit)
        let mut stack: Vec<(usize, usize)> = vec![(0, 0)];
        out.push(self.vertices[0].label.as_char());
        while let Some(top) = stack.last_mut() {
            let (v, next) = *top;
            let children = &self.vertices[v].children;
            if next < children.len() {
                top.1 += 1;
                out.push(if next == 0 { '(' } else { ',' });
                let c = children[next];
                out.push(self.vertices[c].label.as_char());
                stack.push((c, 0));
            } else {
                if !children.is_empty() {
                    out.push(')');
                }
                stack.pop();
            }
        }
        out
    }

    /// Removes the leaf `v` together with its parent edge.
    pub fn delete_leaf(&self, v: usize) -> Result<PlaneTree> {
        if v >= self.len() {
            return Err(Error::NoSuchVertex(v));
        }
        if !self.is_leaf(v) {
            return Err(Error::NotALeaf(v));
        }
        if self.len() == 1 {
            return Err(Error::SingletonTree);
        }
        Ok(self.rebuild(0, |x| self.children(x).iter().copied().filter(|&c| c != v).collect()))
    }

    /// Removes a root with a single child and reroots at that child.
    pub fn strip_root(&self) -> Result<PlaneTree> {
        match self.children(0) {
            [child] => Ok(self.rebuild(*child, |x| self.children(x).to_vec())),
            other => Err(Error::RootNotUnary(other.len())),
        }
    }

    /// Replaces the descending path `u -> ... -> w` by the single edge
    /// `u -> w`. Interior vertices must have exactly one child. A path that
    /// is already an edge leaves the tree unchanged.
    pub fn contract_path(&self, u: usize, w: usize) -> Result<PlaneTree> {
        if u >= self.len() {
            return Err(Error::NoSuchVertex(u));
        }
        if w >= self.len() {
            return Err(Error::NoSuchVertex(w));
        }
        if !self.is_strict_descendant(u, w) {
            return Err(Error::NotADescendant { ancestor: u, descendant: w });
        }
        let mut first_interior = None;
        let mut x = self.parent(w).unwrap();
        while x != u {
            let k = self.children(x).len();
            if k != 1 {
                return Err(Error::BranchingPath { vertex: x, children: k });
            }
            first_interior = Some(x);
            x = self.parent(x).unwrap();
        }
        let Some(first) = first_interior else {
            return Ok(self.clone());
        };
        Ok(self.rebuild(0, |x| {
            if x == u {
                self.children(u).iter().map(|&c| if c == first { w } else { c }).collect()
            } else {
                self.children(x).to_vec()
            }
        }))
    }

    /// Every tree obtained by exactly one leaf deletion, root strip, or
    /// contraction of a path of length at least two. May contain repeats.
    pub fn single_reductions(&self) -> Vec<PlaneTree> {
        let mut out = Vec::new();
        if self.len() == 1 {
            return out;
        }
        for v in 0..self.len() {
            if self.is_leaf(v) {
                out.push(self.delete_leaf(v).expect("leaf of a non-singleton tree"));
            }
        }
        if let Ok(t) = self.strip_root() {
            out.push(t);
        }
        for u in 0..self.len() {
            for &m in self.children(u) {
                // walk down through unary vertices starting at m
                let mut x = m;
                while let [next] = self.children(x) {
                    out.push(self.contract_path(u, *next).expect("unary interior path"));
                    x = *next;
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> TreeJson {
        fn build(t: &PlaneTree, v: usize) -> TreeJson {
            TreeJson {
                label: t.label(v).as_char().to_string(),
                children: t.children(v).iter().map(|&c| build(t, c)).collect(),
            }
        }
        build(self, 0)
    }

    pub fn from_json(json: &TreeJson) -> Result<PlaneTree> {
        let label = match json.label.as_str() {
            "+" => Sign::Plus,
            "-" => Sign::Minus,
            other => return Err(Error::InvalidTree(format!("bad label {other:?}"))),
        };
        let subtrees = json.children.iter().map(PlaneTree::from_json).collect::<Result<Vec<_>>>()?;
        Ok(PlaneTree::node(label, subtrees))
    }
}

impl fmt::Display for PlaneTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for PlaneTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PlaneTree::parse(s)
    }
}

/// Nested JSON form `{"label": "+", "children": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeJson {
    pub label: String,
    pub children: Vec<TreeJson>,
}

/// Labelled plane isomorphism.
pub fn equal(t1: &PlaneTree, t2: &PlaneTree) -> bool {
    t1 == t2
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { bytes: text.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax { offset: self.pos, message: message.into() }
    }

    fn expected(&self, what: &str) -> Error {
        match self.bytes.get(self.pos) {
            None => self.error(format!("expected {what}, found end of input")),
            Some(&b) => self.error(format!("expected {what}, found {:?}", b as char)),
        }
    }

    fn sign(&mut self) -> Result<Sign> {
        match self.peek().and_then(Sign::from_byte) {
            Some(s) => {
                self.pos += 1;
                Ok(s)
            }
            None => Err(self.expected("'+' or '-'")),
        }
    }

    fn parse(mut self) -> Result<PlaneTree> {
        if self.peek().is_none() {
            return Err(Error::EmptyInput);
        }
        let mut labels = vec![self.sign()?];
        let mut parents = vec![None];
        // open vertices whose child lists are still being read
        let mut open: Vec<usize> = Vec::new();
        let mut last = 0;
        if self.peek() == Some(b'(') {
            self.pos += 1;
            open.push(last);
            loop {
                labels.push(self.sign()?);
                parents.push(Some(*open.last().unwrap()));
                last = labels.len() - 1;
                if self.peek() == Some(b'(') {
                    self.pos += 1;
                    open.push(last);
                    continue;
                }
                // close as many lists as needed, then expect a separator
                loop {
                    match self.peek() {
                        Some(b',') => {
                            self.pos += 1;
                            break;
                        }
                        Some(b')') => {
                            self.pos += 1;
                            open.pop();
                            if open.is_empty() {
                                break;
                            }
                        }
                        _ => return Err(self.expected("',' or ')'")),
                    }
                }
                if open.is_empty() {
                    break;
                }
            }
        }
        if self.peek().is_some() {
            return Err(self.error("trailing input"));
        }
        Ok(PlaneTree::from_preorder(labels, parents))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> PlaneTree {
        PlaneTree::parse(s).unwrap()
    }

    #[test]
    fn parse_reads_children_in_order() {
        let tree = t("+(+,-)");
        assert_eq!(tree.len(), 3);
        assert_eq!(tree.label(0), Sign::Plus);
        assert_eq!(tree.children(0), &[1, 2]);
        assert_eq!(tree.label(1), Sign::Plus);
        assert_eq!(tree.label(2), Sign::Minus);
    }

    #[test]
    fn parse_ignores_whitespace() {
        assert_eq!(t(" - ( + ) "), t("-(+)"));
        assert_eq!(t("\t+(\n-( + ),+ )"), t("+(-(+),+)"));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            PlaneTree::parse("+("),
            Err(Error::Syntax { offset: 2, message: "expected '+' or '-', found end of input".into() })
        );
        assert_eq!(PlaneTree::parse(""), Err(Error::EmptyInput));
        assert_eq!(PlaneTree::parse("   "), Err(Error::EmptyInput));
        assert!(matches!(PlaneTree::parse("+()"), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(PlaneTree::parse("+(+"), Err(Error::Syntax { offset: 3, .. })));
        assert!(matches!(PlaneTree::parse("+)"), Err(Error::Syntax { offset: 1, .. })));
        assert!(matches!(PlaneTree::parse("+,+"), Err(Error::Syntax { offset: 1, .. })));
        assert!(matches!(PlaneTree::parse("+(+))"), Err(Error::Syntax { offset: 4, .. })));
        assert!(matches!(PlaneTree::parse("x"), Err(Error::Syntax { offset: 0, .. })));
    }

    #[test]
    fn to_text_is_canonical() {
        assert_eq!(PlaneTree::leaf(Sign::Plus).to_text(), "+");
        assert_eq!(PlaneTree::node(Sign::Minus, vec![PlaneTree::leaf(Sign::Plus)]).to_text(), "-(+)");
        assert_eq!(t(" +( -(+ , -), +)").to_text(), "+(-(+,-),+)");
    }

    #[test]
    fn deep_path_does_not_overflow() {
        let n = 200_000;
        let text = format!("{}{}", "+(".repeat(n), "-".to_string() + &")".repeat(n));
        let tree = t(&text);
        assert_eq!(tree.len(), n + 1);
        assert_eq!(tree.to_text(), text);
    }

    #[test]
    fn delete_leaf_cases() {
        assert_eq!(t("+(+,-)").delete_leaf(2).unwrap(), t("+(+)"));
        assert_eq!(t("+(+,-)").delete_leaf(1).unwrap(), t("+(-)"));
        assert_eq!(t("+(+,-)").delete_leaf(0), Err(Error::NotALeaf(0)));
        assert_eq!(t("+").delete_leaf(0), Err(Error::SingletonTree));
        assert_eq!(t("+(+)").delete_leaf(5), Err(Error::NoSuchVertex(5)));
    }

    #[test]
    fn strip_root_cases() {
        assert_eq!(t("+(-)").strip_root().unwrap(), t("-"));
        assert_eq!(t("+(-(+,+))").strip_root().unwrap(), t("-(+,+)"));
        assert_eq!(t("+(+,-)").strip_root(), Err(Error::RootNotUnary(2)));
        assert_eq!(t("+").strip_root(), Err(Error::RootNotUnary(0)));
    }

    #[test]
    fn contract_path_cases() {
        assert_eq!(t("+(-(+))").contract_path(0, 2).unwrap(), t("+(+)"));
        assert_eq!(t("+(+)").contract_path(0, 1).unwrap(), t("+(+)"));
        // w keeps the slot of the first interior vertex
        assert_eq!(t("+(+,-(-(+)),-)").contract_path(0, 4).unwrap(), t("+(+,+,-)"));
        assert_eq!(t("+(-(+,+))").contract_path(0, 2), Err(Error::BranchingPath { vertex: 1, children: 2 }));
        assert_eq!(t("+(+,-)").contract_path(1, 2), Err(Error::NotADescendant { ancestor: 1, descendant: 2 }));
        assert!(t("+(+)").contract_path(0, 0).is_err());
    }

    #[test]
    fn records_round_trip_and_validation() {
        let tree = t("+(-(+),+)");
        assert_eq!(PlaneTree::from_records(&tree.records(), 0).unwrap(), tree);

        // same tree with scrambled indices: root is 2
        let recs = vec![
            VertexRecord { label: Sign::Minus, parent: Some(2), children: vec![3] },
            VertexRecord { label: Sign::Plus, parent: Some(2), children: vec![] },
            VertexRecord { label: Sign::Plus, parent: None, children: vec![0, 1] },
            VertexRecord { label: Sign::Plus, parent: Some(0), children: vec![] },
        ];
        assert_eq!(PlaneTree::from_records(&recs, 2).unwrap(), tree);

        let mut bad = recs.clone();
        bad[1].parent = Some(0);
        assert!(PlaneTree::from_records(&bad, 2).is_err());
        let mut dup = recs.clone();
        dup[2].children = vec![0, 0];
        assert!(PlaneTree::from_records(&dup, 2).is_err());
        assert!(PlaneTree::from_records(&[], 0).is_err());
        let cyc = vec![
            VertexRecord { label: Sign::Plus, parent: None, children: vec![] },
            VertexRecord { label: Sign::Plus, parent: Some(2), children: vec![2] },
            VertexRecord { label: Sign::Plus, parent: Some(1), children: vec![1] },
        ];
        assert!(PlaneTree::from_records(&cyc, 0).is_err());
    }

    #[test]
    fn json_form() {
        let tree = t("-(+,-(+))");
        let json = serde_json::to_string(&tree.to_json()).unwrap();
        assert_eq!(
            json,
            r#"{"label":"-","children":[{"label":"+","children":[]},{"label":"-","children":[{"label":"+","children":[]}]}]}"#
        );
        let back: TreeJson = serde_json::from_str(&json).unwrap();
        assert_eq!(PlaneTree::from_json(&back).unwrap(), tree);
    }

    #[test]
    fn equality_is_plane_and_labelled() {
        assert!(equal(&t("+(+,-)"), &t("+(+,-)")));
        assert!(!equal(&t("+(+,-)"), &t("+(-,+)")));
        assert!(!equal(&t("+"), &t("-")));
    }

    #[test]
    fn single_reductions_of_path() {
        let mut got: Vec<String> = t("+(-(+))").single_reductions().iter().map(|t| t.to_text()).collect();
        got.sort();
        assert_eq!(got, vec!["+(+)", "+(-)", "-(+)"]);
    }
}
