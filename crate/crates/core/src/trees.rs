//! Complete increasing binary trees and their statistics.
//!
//! A tree of size `n` carries the labels `1..=n`, is increasing along every
//! root-to-leaf path, and every node is a leaf or has two children, except
//! (for even `n`) a single rightmost node with exactly one left child.
//! Reading the labels in in-order (left-to-right projection) gives a
//! down-up alternating permutation, and the map is a bijection.
//!
//! Statistics:
//! - [`StatRecord::eoc`]: the leaf ending the minimal chain,
//! - [`StatRecord::pom`]: the parent of the leaf labeled `n`,
//! - [`StatRecord::ent`]: the label of the rightmost node.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Node label. Labels are `1..=n`; `0` is used internally as "none".
pub type Label = u32;

const NONE: Label = 0;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("child {child} is not larger than its parent {parent}")]
    NotIncreasing { parent: Label, child: Label },
    #[error("bad arity: {0}")]
    BadArity(String),
    #[error("bad labels: {0}")]
    BadLabels(String),
    #[error("inconsistent parent/child maps: {0}")]
    Inconsistent(String),
    #[error("word {0:?} is not a down-up alternating permutation")]
    NotAlternating(Vec<Label>),
    #[error("statistic undefined for a tree of size {0}")]
    TooSmall(usize),
}

/// Unvalidated tree maps, in the interchange layout.
///
/// Arrays are indexed by label starting at label 1 (element `i` describes
/// label `i + 1`) and use `0` for "none".
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawTree {
    pub n: usize,
    pub parent: Vec<Label>,
    pub left: Vec<Label>,
    pub right: Vec<Label>,
}

/// A validated complete increasing tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IncTree {
    n: usize,
    // Indexed by label; slot 0 is unused.
    parent: Vec<Label>,
    left: Vec<Label>,
    right: Vec<Label>,
}

fn opt(l: Label) -> Option<Label> {
    (l != NONE).then_some(l)
}

impl IncTree {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn parent(&self, label: Label) -> Option<Label> {
        opt(self.parent[label as usize])
    }

    pub fn left(&self, label: Label) -> Option<Label> {
        opt(self.left[label as usize])
    }

    pub fn right(&self, label: Label) -> Option<Label> {
        opt(self.right[label as usize])
    }

    pub fn is_leaf(&self, label: Label) -> bool {
        self.left[label as usize] == NONE && self.right[label as usize] == NONE
    }

    /// Children of `label` in planar order.
    pub fn children(&self, label: Label) -> impl Iterator<Item = Label> {
        [self.left[label as usize], self.right[label as usize]]
            .into_iter()
            .filter(|&c| c != NONE)
    }

    /// The node with maximum abscissa: follow right children from the root.
    pub fn rightmost(&self) -> Label {
        let mut a = 1;
        while let Some(r) = self.right(a) {
            a = r;
        }
        a
    }

    /// The unique node with a single child; present exactly when `n` is even.
    pub fn one_child_node(&self) -> Option<Label> {
        self.n.is_multiple_of(2).then(|| self.rightmost())
    }

    pub fn to_raw(&self) -> RawTree {
        RawTree {
            n: self.n,
            parent: self.parent[1..].to_vec(),
            left: self.left[1..].to_vec(),
            right: self.right[1..].to_vec(),
        }
    }

    /// Builds the tree of an alternating word without re-checking alternation.
    ///
    /// The root is the minimum letter; the factors to its left and right give
    /// the two subtrees. Built in one pass with the usual Cartesian-tree stack.
    fn from_word_unchecked(word: &[Label]) -> IncTree {
        let n = word.len();
        let mut parent = vec![NONE; n + 1];
        let mut left = vec![NONE; n + 1];
        let mut right = vec![NONE; n + 1];
        let mut stack: Vec<Label> = Vec::with_capacity(n);
        for &x in word {
            let mut last = NONE;
            while let Some(&top) = stack.last() {
                if top > x {
                    last = top;
                    stack.pop();
                } else {
                    break;
                }
            }
            if last != NONE {
                left[x as usize] = last;
                parent[last as usize] = x;
            }
            if let Some(&top) = stack.last() {
                right[top as usize] = x;
                parent[x as usize] = top;
            }
            stack.push(x);
        }
        IncTree {
            n,
            parent,
            left,
            right,
        }
    }
}

/// Validates raw maps against the complete increasing tree axioms.
pub fn validate(raw: &RawTree) -> Result<IncTree, TreeError> {
    let n = raw.n;
    if n == 0 {
        return Err(TreeError::BadLabels("empty tree".into()));
    }
    for (name, arr) in [("parent", &raw.parent), ("left", &raw.left), ("right", &raw.right)] {
        if arr.len() != n {
            return Err(TreeError::BadLabels(format!(
                "{name} has {} entries, expected {n}",
                arr.len()
            )));
        }
        if let Some(&bad) = arr.iter().find(|&&l| l as usize > n) {
            return Err(TreeError::BadLabels(format!("{name} references label {bad} > {n}")));
        }
    }
    let with_slot = |v: &Vec<Label>| {
        let mut out = Vec::with_capacity(n + 1);
        out.push(NONE);
        out.extend_from_slice(v);
        out
    };
    let t = IncTree {
        n,
        parent: with_slot(&raw.parent),
        left: with_slot(&raw.left),
        right: with_slot(&raw.right),
    };

    if t.parent[1] != NONE {
        return Err(TreeError::BadLabels(format!("root 1 has parent {}", t.parent[1])));
    }
    for x in 1..=n as Label {
        let (l, r) = (t.left[x as usize], t.right[x as usize]);
        if l != NONE && l == r {
            return Err(TreeError::Inconsistent(format!("{x} has {l} as both children")));
        }
        for c in [l, r] {
            if c == NONE {
                continue;
            }
            if c <= x {
                return Err(TreeError::NotIncreasing { parent: x, child: c });
            }
            if t.parent[c as usize] != x {
                return Err(TreeError::Inconsistent(format!(
                    "{c} is a child of {x} but its parent is {}",
                    t.parent[c as usize]
                )));
            }
        }
    }
    for x in 2..=n as Label {
        let p = t.parent[x as usize];
        if p == NONE {
            return Err(TreeError::Inconsistent(format!("non-root {x} has no parent")));
        }
        if t.left[p as usize] != x && t.right[p as usize] != x {
            return Err(TreeError::Inconsistent(format!(
                "parent of {x} is {p} but {p} does not list it as a child"
            )));
        }
        if p >= x {
            return Err(TreeError::NotIncreasing { parent: p, child: x });
        }
    }

    // Arity. Parents are strictly smaller, so the maps already form a tree rooted at 1.
    let one_child: Vec<Label> = (1..=n as Label)
        .filter(|&x| (t.left[x as usize] == NONE) != (t.right[x as usize] == NONE))
        .collect();
    if n % 2 == 1 {
        if let Some(x) = one_child.first() {
            return Err(TreeError::BadArity(format!("node {x} has one child but n={n} is odd")));
        }
    } else {
        match one_child.as_slice() {
            [x] => {
                let x = *x;
                if t.right[x as usize] != NONE {
                    return Err(TreeError::BadArity(format!("one-child node {x} has a right child")));
                }
                if t.rightmost() != x {
                    return Err(TreeError::BadArity(format!(
                        "one-child node {x} is not the rightmost node"
                    )));
                }
            }
            _ => {
                return Err(TreeError::BadArity(format!(
                    "expected exactly one one-child node, found {one_child:?}"
                )))
            }
        }
    }
    Ok(t)
}

/// A down-up alternating permutation `w1 > w2 < w3 > w4 ...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AltPerm(Vec<Label>);

pub fn is_alternating(word: &[Label]) -> bool {
    word.windows(2)
        .enumerate()
        .all(|(i, w)| if i % 2 == 0 { w[0] > w[1] } else { w[0] < w[1] })
}

impl AltPerm {
    pub fn new(word: Vec<Label>) -> Result<Self, TreeError> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &x in &word {
            if x == 0 || x as usize > n || std::mem::replace(&mut seen[x as usize], true) {
                return Err(TreeError::BadLabels(format!("{word:?} is not a permutation of 1..{n}")));
            }
        }
        if !is_alternating(&word) {
            return Err(TreeError::NotAlternating(word));
        }
        Ok(AltPerm(word))
    }

    pub fn word(&self) -> &[Label] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for AltPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl FromStr for AltPerm {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let word = s
            .split_whitespace()
            .map(|tok| {
                tok.parse::<Label>()
                    .map_err(|_| TreeError::BadLabels(format!("not a label: {tok:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        AltPerm::new(word)
    }
}

/// In-order reading of the labels.
pub fn project(t: &IncTree) -> AltPerm {
    let mut out = Vec::with_capacity(t.n);
    let mut stack = Vec::new();
    let mut cur = 1;
    while cur != NONE || !stack.is_empty() {
        while cur != NONE {
            stack.push(cur);
            cur = t.left[cur as usize];
        }
        let x = stack.pop().expect("non-empty");
        out.push(x);
        cur = t.right[x as usize];
    }
    AltPerm(out)
}

pub fn tree_from_perm(p: &AltPerm) -> IncTree {
    IncTree::from_word_unchecked(&p.0)
}

/// Checks the word and builds its tree.
pub fn tree_from_word(word: &[Label]) -> Result<IncTree, TreeError> {
    let p = AltPerm::new(word.to_vec())?;
    Ok(tree_from_perm(&p))
}

/// Lexicographic generator of the down-up alternating permutations of
/// `1..=n` that start with a fixed prefix.
///
/// [`AltPerms::advance`] hands out a borrowed word without allocating; the
/// [`Iterator`] impl clones it into an [`AltPerm`].
#[derive(Debug, Clone)]
pub struct AltPerms {
    n: usize,
    prefix_len: usize,
    word: Vec<Label>,
    used: Vec<bool>,
    started: bool,
    done: bool,
}

impl AltPerms {
    pub fn new(n: usize) -> Self {
        Self::with_prefix(n, &[])
    }

    /// Generator restricted to words beginning with `prefix`. An invalid or
    /// over-long prefix yields nothing.
    pub fn with_prefix(n: usize, prefix: &[Label]) -> Self {
        let mut used = vec![false; n + 1];
        let mut ok = prefix.len() <= n && is_alternating(prefix);
        for &x in prefix {
            if x == 0 || x as usize > n || used[x as usize] {
                ok = false;
                break;
            }
            used[x as usize] = true;
        }
        let mut word = vec![0; n];
        if ok {
            word[..prefix.len()].copy_from_slice(prefix);
        }
        AltPerms {
            n,
            prefix_len: prefix.len(),
            word,
            used,
            started: false,
            done: !ok,
        }
    }

    fn fits(&self, pos: usize, v: Label) -> bool {
        if self.used[v as usize] {
            return false;
        }
        match pos {
            0 => true,
            p if p % 2 == 1 => v < self.word[p - 1],
            p => v > self.word[p - 1],
        }
    }

    /// Moves to the next word and returns it, or `None` when exhausted.
    pub fn advance(&mut self) -> Option<&[Label]> {
        if self.done {
            return None;
        }
        let n = self.n;
        let (mut pos, mut min) = if !self.started {
            self.started = true;
            if self.prefix_len == n {
                return Some(&self.word);
            }
            (self.prefix_len, 1)
        } else {
            if self.prefix_len == n {
                self.done = true;
                return None;
            }
            let last = self.word[n - 1];
            self.used[last as usize] = false;
            (n - 1, last + 1)
        };
        loop {
            match (min..=n as Label).find(|&v| self.fits(pos, v)) {
                Some(v) => {
                    self.word[pos] = v;
                    self.used[v as usize] = true;
                    if pos + 1 == n {
                        return Some(&self.word);
                    }
                    pos += 1;
                    min = 1;
                }
                None => {
                    if pos == self.prefix_len {
                        self.done = true;
                        return None;
                    }
                    pos -= 1;
                    let v = self.word[pos];
                    self.used[v as usize] = false;
                    min = v + 1;
                }
            }
        }
    }
}

impl Iterator for AltPerms {
    type Item = AltPerm;

    fn next(&mut self) -> Option<AltPerm> {
        self.advance().map(|w| AltPerm(w.to_vec()))
    }
}

/// All alternating prefixes of length `min(len, n)`, in lexicographic order.
/// Generators over these prefixes partition the full stream.
pub fn prefixes(n: usize, len: usize) -> Vec<Vec<Label>> {
    let len = len.min(n);
    let mut out: Vec<Vec<Label>> = Vec::new();
    fn rec(n: usize, len: usize, cur: &mut Vec<Label>, out: &mut Vec<Vec<Label>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in 1..=n as Label {
            if cur.contains(&v) {
                continue;
            }
            cur.push(v);
            if is_alternating(cur) {
                rec(n, len, cur, out);
            }
            cur.pop();
        }
    }
    rec(n, len, &mut Vec::new(), &mut out);
    out
}

/// Every complete increasing tree of size `n`, once each, ordered by projection.
pub fn enumerate(n: usize) -> impl Iterator<Item = IncTree> {
    let mut gen = AltPerms::new(n);
    std::iter::from_fn(move || gen.advance().map(IncTree::from_word_unchecked))
}

/// Trees whose projection starts with `prefix`.
pub fn enumerate_with_prefix(n: usize, prefix: &[Label]) -> impl Iterator<Item = IncTree> {
    let mut gen = AltPerms::with_prefix(n, prefix);
    std::iter::from_fn(move || gen.advance().map(IncTree::from_word_unchecked))
}

/// `1 = a1 -> a2 -> ... -> aj`, following the smaller (or only) child until a leaf.
///
/// The single-node tree gives `(1)`.
pub fn minimal_chain(t: &IncTree) -> Vec<Label> {
    let mut chain = vec![1];
    let mut a = 1;
    while let Some(next) = t.children(a).min() {
        chain.push(next);
        a = next;
    }
    chain
}

fn end_of_minimal_chain(t: &IncTree) -> Label {
    let mut a = 1;
    while let Some(next) = t.children(a).min() {
        a = next;
    }
    a
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StatRecord {
    pub eoc: Label,
    pub pom: Label,
    pub ent: Label,
}

/// `eoc`, `pom` and `ent` of `t`; undefined for the one-node tree.
pub fn stats(t: &IncTree) -> Result<StatRecord, TreeError> {
    if t.n < 2 {
        return Err(TreeError::TooSmall(t.n));
    }
    Ok(StatRecord {
        eoc: end_of_minimal_chain(t),
        pom: t.parent[t.n],
        ent: t.rightmost(),
    })
}
