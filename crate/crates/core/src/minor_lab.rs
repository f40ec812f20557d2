//! The minor order on bounded universes of trees: relation tables, Hasse
//! diagrams, minor-closed predicates, excluded-minor mining, monotonicity
//! audits and fingerprint classes.
//!
//! Sweeps run in parallel with rayon; results are collected in index order,
//! so every output is independent of the number of worker threads.

use std::collections::HashMap;
use std::fmt::{self, Write as _};
use std::ops::Range;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::embedding::embeds;
use crate::enumerate::enumerate;
use crate::error::{Error, Result};
use crate::invariants::{self, fingerprint, Fingerprint};
use crate::tree::{PlaneTree, Sign};

/// Default bound on `nmax` for pairwise sweeps (about 3,500 trees).
pub const DEFAULT_GUARD: usize = 6;

/// All trees with at most `nmax` vertices, ordered by size and then by
/// enumeration order.
#[derive(Debug, Clone)]
pub struct Universe {
    nmax: usize,
    trees: Vec<PlaneTree>,
    texts: Vec<String>,
    starts: Vec<usize>,
}

impl Universe {
    pub fn new(nmax: usize) -> Result<Universe> {
        if nmax < 1 {
            return Err(Error::ZeroSize);
        }
        let mut trees = Vec::new();
        let mut starts = vec![0, 0];
        for k in 1..=nmax {
            trees.extend(enumerate(k)?);
            starts.push(trees.len());
        }
        let texts = trees.iter().map(PlaneTree::to_text).collect();
        Ok(Universe { nmax, trees, texts, starts })
    }

    pub fn nmax(&self) -> usize {
        self.nmax
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn trees(&self) -> &[PlaneTree] {
        &self.trees
    }

    pub fn tree(&self, i: usize) -> &PlaneTree {
        &self.trees[i]
    }

    pub fn text(&self, i: usize) -> &str {
        &self.texts[i]
    }

    /// Index range of the trees with exactly `k` vertices.
    pub fn size_range(&self, k: usize) -> Range<usize> {
        if k == 0 || k > self.nmax {
            return 0..0;
        }
        self.starts[k]..self.starts[k + 1]
    }

    pub fn index_of(&self, t: &PlaneTree) -> Option<usize> {
        let range = self.size_range(t.len());
        let text = t.to_text();
        range.into_iter().find(|&i| self.texts[i] == text)
    }
}

pub fn universe(nmax: usize) -> Result<Universe> {
    Universe::new(nmax)
}

fn check_guard(nmax: usize, guard: usize) -> Result<()> {
    if nmax > guard {
        return Err(Error::GuardExceeded { what: "universe size bound", actual: nmax, limit: guard });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SizeStats {
    pub size: usize,
    pub trees: usize,
    /// Relation pairs whose smaller tree has this size.
    pub relation_pairs: usize,
    pub hasse_pairs: usize,
}

/// Strict minor relation on a universe, as index pairs `(i, j)` with
/// `trees[i] ↪ trees[j]` and `i != j`, sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetReport {
    pub relation_pairs: Vec<(usize, usize)>,
    pub hasse_pairs: Vec<(usize, usize)>,
    pub stats: Vec<SizeStats>,
}

impl PosetReport {
    /// Graphviz digraph with one node per tree and one edge per cover pair.
    pub fn to_dot(&self, u: &Universe) -> String {
        let mut out = String::from("digraph minors {\n  rankdir=BT;\n");
        for i in 0..u.len() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", u.text(i));
        }
        for &(i, j) in &self.hasse_pairs {
            let _ = writeln!(out, "  n{i} -> n{j};");
        }
        out.push_str("}\n");
        out
    }

    /// `i,j,cover` rows for every relation pair; `cover` is 1 on Hasse pairs.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j,cover\n");
        let mut hasse = self.hasse_pairs.iter().peekable();
        for &(i, j) in &self.relation_pairs {
            let cover = hasse.peek() == Some(&&(i, j));
            if cover {
                hasse.next();
            }
            let _ = writeln!(out, "{i},{j},{}", u8::from(cover));
        }
        out
    }
}

pub fn poset(u: &Universe) -> Result<PosetReport> {
    poset_with_guard(u, DEFAULT_GUARD)
}

pub fn poset_with_guard(u: &Universe, guard: usize) -> Result<PosetReport> {
    check_guard(u.nmax(), guard)?;
    let relation_pairs = relation(u);
    let hasse_pairs = transitive_reduction(u.len(), &relation_pairs);
    let stats = (1..=u.nmax())
        .map(|k| {
            let range = u.size_range(k);
            SizeStats {
                size: k,
                trees: range.len(),
                relation_pairs: relation_pairs.iter().filter(|(i, _)| range.contains(i)).count(),
                hasse_pairs: hasse_pairs.iter().filter(|(i, _)| range.contains(i)).count(),
            }
        })
        .collect();
    Ok(PosetReport { relation_pairs, hasse_pairs, stats })
}

/// Equal-size embeddings are identities, so only strictly smaller trees can
/// be strict minors.
fn relation(u: &Universe) -> Vec<(usize, usize)> {
    let below: Vec<Vec<usize>> = (0..u.len())
        .into_par_iter()
        .map(|j| {
            let smaller = 0..u.size_range(u.tree(j).len()).start;
            smaller.filter(|&i| embeds(u.tree(i), u.tree(j))).collect()
        })
        .collect();
    let mut pairs: Vec<(usize, usize)> =
        below.into_iter().enumerate().flat_map(|(j, is)| is.into_iter().map(move |i| (i, j))).collect();
    pairs.sort_unstable();
    pairs
}

/// Cover pairs of a transitively closed strict order given as sorted pairs.
fn transitive_reduction(n: usize, pairs: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut succ = vec![FixedBitSet::with_capacity(n); n];
    let mut pred = vec![FixedBitSet::with_capacity(n); n];
    for &(i, j) in pairs {
        succ[i].insert(j);
        pred[j].insert(i);
    }
    pairs.par_iter().copied().filter(|&(i, j)| succ[i].is_disjoint(&pred[j])).collect()
}

/// A named property of trees, such as `genus_le:2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Predicate {
    pub name: String,
    pub params: Vec<i64>,
    pub knots_only: bool,
}

const REGISTRY: &[(&str, usize, bool)] = &[
    ("size_le", 1, false),
    ("genus_le", 1, false),
    ("all_positive", 0, false),
    ("sig_abs_le", 1, false),
    ("det_le", 1, false),
    ("top_defect_ub_le", 1, true),
];

impl Predicate {
    pub fn parse(spec: &str) -> Result<Predicate> {
        let mut parts = spec.trim().split(':');
        let name = parts.next().unwrap_or_default();
        let &(_, arity, knots_only) =
            REGISTRY.iter().find(|(n, _, _)| *n == name).ok_or_else(|| Error::UnknownPredicate(spec.to_string()))?;
        let params = parts
            .map(|p| p.trim().parse::<i64>().map_err(|_| Error::BadPredicateParameter(spec.to_string())))
            .collect::<Result<Vec<_>>>()?;
        if params.len() != arity {
            return Err(Error::BadPredicateParameter(spec.to_string()));
        }
        Ok(Predicate { name: name.to_string(), params, knots_only })
    }

    fn param(&self) -> i64 {
        self.params[0]
    }

    /// True when `t` lies in the predicate's domain.
    pub fn applies_to(&self, t: &PlaneTree) -> bool {
        !self.knots_only || invariants::boundary_components(t) == 1
    }
}

impl FromStr for Predicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Predicate::parse(s)
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        for p in &self.params {
            write!(f, ":{p}")?;
        }
        Ok(())
    }
}

pub fn evaluate(p: &Predicate, t: &PlaneTree) -> Result<bool> {
    if p.knots_only {
        let b = invariants::boundary_components(t);
        if b != 1 {
            return Err(Error::DomainViolation { predicate: p.to_string(), tree: t.to_text(), components: b });
        }
    }
    let k = || p.param();
    Ok(match p.name.as_str() {
        "size_le" => (t.len() as i64) <= k(),
        "genus_le" => (invariants::genus(t) as i64) <= k(),
        "all_positive" => t.labels().all(|l| l == Sign::Plus),
        "sig_abs_le" => invariants::signature(t).abs() <= k(),
        "det_le" => k() >= 0 && invariants::determinant(t) <= BigUint::from(k() as u64),
        "top_defect_ub_le" => invariants::top_defect_upper_bound(t)? <= k(),
        other => return Err(Error::UnknownPredicate(other.to_string())),
    })
}

/// True iff no member of `family` is a minor of `t`.
pub fn check_excluded_family(t: &PlaneTree, family: &[PlaneTree]) -> bool {
    !family.iter().any(|f| embeds(f, t))
}

pub fn minimal_excluded(p: &Predicate, nmax: usize) -> Result<Vec<PlaneTree>> {
    minimal_excluded_with_guard(p, nmax, DEFAULT_GUARD)
}

/// Trees of the universe that violate `p` while every strictly smaller minor
/// satisfies it. For knot-only predicates the universe is restricted to knot
/// trees. Sorted by canonical text.
pub fn minimal_excluded_with_guard(p: &Predicate, nmax: usize, guard: usize) -> Result<Vec<PlaneTree>> {
    check_guard(nmax, guard)?;
    let u = universe(nmax)?;
    let domain: Vec<bool> = u.trees().par_iter().map(|t| p.applies_to(t)).collect();
    let holds: Vec<bool> = u
        .trees()
        .par_iter()
        .zip(&domain)
        .map(|(t, &d)| if d { evaluate(p, t) } else { Ok(true) })
        .collect::<Result<_>>()?;
    let violating: Vec<usize> = (0..u.len()).filter(|&i| domain[i] && !holds[i]).collect();
    let minimal: Vec<usize> = violating
        .par_iter()
        .copied()
        .filter(|&j| {
            let t = u.tree(j);
            violating.iter().take_while(|&&i| u.tree(i).len() < t.len()).all(|&i| !embeds(u.tree(i), t))
        })
        .collect();
    let mut out: Vec<PlaneTree> = minimal.into_iter().map(|i| u.tree(i).clone()).collect();
    out.sort_by_cached_key(PlaneTree::to_text);
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Betti,
    Genus,
    /// `g - |σ|/2` on knot trees; audited empirically, not claimed monotone.
    TopDefectBound,
}

impl Quantity {
    fn value(self, t: &PlaneTree) -> Option<i64> {
        match self {
            Quantity::Betti => Some(invariants::betti(t) as i64),
            Quantity::Genus => Some(invariants::genus(t) as i64),
            Quantity::TopDefectBound => invariants::top_defect_upper_bound(t).ok(),
        }
    }
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "betti" => Ok(Quantity::Betti),
            "genus" => Ok(Quantity::Genus),
            "top_defect_ub" => Ok(Quantity::TopDefectBound),
            other => Err(Error::UnknownQuantity(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub sub: String,
    pub sup: String,
    pub sub_value: i64,
    pub sup_value: i64,
}

pub fn audit_monotone(quantity: &str, nmax: usize) -> Result<Vec<Violation>> {
    audit_monotone_with_guard(quantity.parse()?, nmax, DEFAULT_GUARD)
}

/// Every relation pair `t1 ↪ t2` of `universe(nmax)` with
/// `quantity(t1) > quantity(t2)`. Pairs outside the quantity's domain are
/// skipped.
pub fn audit_monotone_with_guard(quantity: Quantity, nmax: usize, guard: usize) -> Result<Vec<Violation>> {
    check_guard(nmax, guard)?;
    let u = universe(nmax)?;
    let values: Vec<Option<i64>> = u.trees().par_iter().map(|t| quantity.value(t)).collect();
    let pairs = relation(&u);
    Ok(pairs
        .into_iter()
        .filter_map(|(i, j)| match (values[i], values[j]) {
            (Some(a), Some(b)) if a > b => {
                Some(Violation { sub: u.text(i).to_string(), sup: u.text(j).to_string(), sub_value: a, sup_value: b })
            }
            _ => None,
        })
        .collect())
}

/// Trees of size `n` grouped by equal fingerprint. Members are sorted by
/// canonical text and classes by their first member.
pub fn fingerprint_classes(n: usize) -> Result<Vec<(Fingerprint, Vec<PlaneTree>)>> {
    let trees: Vec<PlaneTree> = enumerate(n)?.collect();
    let prints: Vec<Fingerprint> = trees.par_iter().map(fingerprint).collect();
    let mut groups: HashMap<Fingerprint, Vec<PlaneTree>> = HashMap::new();
    for (t, fp) in trees.into_iter().zip(prints) {
        groups.entry(fp).or_default().push(t);
    }
    let mut classes: Vec<(Fingerprint, Vec<PlaneTree>)> = groups
        .into_iter()
        .map(|(fp, mut members)| {
            members.sort_by_cached_key(PlaneTree::to_text);
            (fp, members)
        })
        .collect();
    classes.sort_by_cached_key(|(_, members)| members[0].to_text());
    Ok(classes)
}
