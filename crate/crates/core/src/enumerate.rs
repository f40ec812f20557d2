//! Exhaustive enumeration, ranking and uniform sampling of signed plane trees.
//!
//! Order of `enumerate(n)`: shapes first, as balanced-parenthesis words of
//! length `2(n-1)` in lexicographic order with `'(' < ')'` (each `(` opens a
//! new child of the current vertex). Within one shape, the preorder sign
//! vector runs lexicographically with `'+' < '-'`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::tree::{PlaneTree, Sign};

pub fn catalan(m: usize) -> BigUint {
    binomial(2 * m, m) / BigUint::from(m + 1)
}

fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Number of signed plane trees with `n` vertices: `2^n * Catalan(n - 1)`.
pub fn count(n: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::ZeroSize);
    }
    Ok(catalan(n - 1) << n)
}

/// Ballot count: descending-free walks of `len` unit steps from `height`
/// back to zero that never go below zero.
fn completions(len: usize, height: usize) -> BigUint {
    if height > len || (len - height) % 2 == 1 {
        return BigUint::zero();
    }
    let ups = (len - height) / 2;
    let all = binomial(len, ups);
    if ups == 0 {
        all
    } else {
        all - binomial(len, ups - 1)
    }
}

/// Shape word for a tree: `true` is `'('`, `false` is `')'`.
fn shape_word(tree: &PlaneTree) -> Vec<bool> {
    let mut word = Vec::with_capacity(2 * tree.len());
    // preorder order equals the order in which `(` are written
    let mut stack: Vec<(usize, usize)> = vec![(0, 0)];
    while let Some(top) = stack.last_mut() {
        let (v, next) = *top;
        if let Some(&c) = tree.children(v).get(next) {
            top.1 += 1;
            word.push(true);
            stack.push((c, 0));
        } else {
            if v != 0 {
                word.push(false);
            }
            stack.pop();
        }
    }
    word
}

fn build(word: &[bool], labels: &[Sign]) -> PlaneTree {
    let mut parents = vec![None];
    let mut cursor = 0;
    for &open in word {
        if open {
            parents.push(Some(cursor));
            cursor = parents.len() - 1;
        } else {
            cursor = parents[cursor].expect("balanced word");
        }
    }
    PlaneTree::from_preorder(labels.to_vec(), parents)
}

/// Advances `word` to the next balanced word in lexicographic order.
fn next_word(word: &mut [bool]) -> bool {
    let len = word.len();
    let m = len / 2;
    let mut opens = word.iter().filter(|&&b| b).count();
    let mut height = 2 * opens as isize - len as isize; // height after the full word is 0
    debug_assert_eq!(height, 0);
    // Scan right to left, keeping the height *before* position i.
    for i in (0..len).rev() {
        if word[i] {
            opens -= 1;
            height -= 1;
            // flip '(' to ')' needs height >= 1 before i
            if height >= 1 {
                word[i] = false;
                let remaining_opens = m - opens;
                for (k, slot) in word[i + 1..].iter_mut().enumerate() {
                    *slot = k < remaining_opens;
                }
                return true;
            }
        } else {
            height += 1;
        }
    }
    false
}

fn next_labels(labels: &mut [Sign]) -> bool {
    for slot in labels.iter_mut().rev() {
        match slot {
            Sign::Plus => {
                *slot = Sign::Minus;
                return true;
            }
            Sign::Minus => *slot = Sign::Plus,
        }
    }
    false
}

/// Restartable sequence of all signed plane trees of a fixed size.
#[derive(Debug, Clone)]
pub struct Enumeration {
    word: Vec<bool>,
    labels: Vec<Sign>,
    done: bool,
}

impl Enumeration {
    /// Sequence starting at position `index` of `enumerate(n)`.
    pub fn starting_at(n: usize, index: &BigUint) -> Result<Enumeration> {
        let total = count(n)?;
        if index >= &total {
            return Ok(Enumeration { word: Vec::new(), labels: Vec::new(), done: true });
        }
        let (word, labels) = unrank_parts(n, index);
        Ok(Enumeration { word, labels, done: false })
    }
}

impl Iterator for Enumeration {
    type Item = PlaneTree;

    fn next(&mut self) -> Option<PlaneTree> {
        if self.done {
            return None;
        }
        let tree = build(&self.word, &self.labels);
        if !next_labels(&mut self.labels) && !next_word(&mut self.word) {
            self.done = true;
        }
        Some(tree)
    }
}

pub fn enumerate(n: usize) -> Result<Enumeration> {
    Enumeration::starting_at(n, &BigUint::zero())
}

fn unrank_parts(n: usize, index: &BigUint) -> (Vec<bool>, Vec<Sign>) {
    let (mut shape, sign_index) = index.div_rem(&(BigUint::one() << n));
    let len = 2 * (n - 1);
    let mut word = Vec::with_capacity(len);
    let mut height = 0;
    for pos in 0..len {
        let rest = len - pos - 1;
        let with_open = completions(rest, height + 1);
        if shape < with_open {
            word.push(true);
            height += 1;
        } else {
            shape -= with_open;
            word.push(false);
            height -= 1;
        }
    }
    let labels = (0..n).map(|k| if sign_index.bit((n - 1 - k) as u64) { Sign::Minus } else { Sign::Plus }).collect();
    (word, labels)
}

/// The tree at position `index` of `enumerate(n)`.
pub fn unrank(n: usize, index: &BigUint) -> Result<PlaneTree> {
    let total = count(n)?;
    if index >= &total {
        return Err(Error::InvalidTree(format!("index {index} out of range for size {n}")));
    }
    let (word, labels) = unrank_parts(n, index);
    Ok(build(&word, &labels))
}

/// Position of `tree` in `enumerate(tree.len())`.
pub fn rank(tree: &PlaneTree) -> BigUint {
    let n = tree.len();
    let word = shape_word(tree);
    let mut shape = BigUint::zero();
    let mut height = 0;
    for (pos, &open) in word.iter().enumerate() {
        let rest = word.len() - pos - 1;
        if open {
            height += 1;
        } else {
            shape += completions(rest, height + 1);
            height -= 1;
        }
    }
    let mut signs = BigUint::zero();
    for l in tree.labels() {
        signs <<= 1;
        if l == Sign::Minus {
            signs += 1u32;
        }
    }
    (shape << n) + signs
}

/// Uniform draw from `enumerate(n)`, determined by `seed`.
pub fn random_tree(n: usize, seed: u64) -> Result<PlaneTree> {
    let total = count(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bits = total.bits();
    let bytes = bits.div_ceil(8) as usize;
    let excess = (bytes as u64 * 8 - bits) as u32;
    let mut buf = vec![0u8; bytes];
    let index = loop {
        rng.fill_bytes(&mut buf);
        // big-endian; clear the bits above `bits`
        buf[0] &= 0xffu8.checked_shr(excess).unwrap_or(0);
        let candidate = BigUint::from_bytes_be(&buf);
        if candidate < total {
            break candidate;
        }
    };
    unrank(n, &index)
}
