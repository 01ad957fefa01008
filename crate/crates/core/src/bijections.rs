//! Constructive maps between classes of secant trees, and exhaustive
//! verification of injectivity, codomain and statistic transport.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::trees::{self, minimal_chain, stats, validate, IncTree, Label, RawTree, StatRecord, TreeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("image is not a valid tree: {0}")]
    Tree(#[from] TreeError),
}

type Result<T> = std::result::Result<T, MapError>;

/// Mutable copy of a tree's maps; dead nodes and links to them vanish on [`Draft::finish`].
struct Draft {
    parent: Vec<Label>,
    left: Vec<Label>,
    right: Vec<Label>,
    alive: Vec<bool>,
}

impl Draft {
    fn of(t: &IncTree) -> Self {
        let n = t.size();
        let mut d = Draft {
            parent: vec![0; n + 1],
            left: vec![0; n + 1],
            right: vec![0; n + 1],
            alive: vec![true; n + 1],
        };
        d.alive[0] = false;
        for v in 1..=n as Label {
            d.parent[v as usize] = t.parent(v).unwrap_or(0);
            d.left[v as usize] = t.left(v).unwrap_or(0);
            d.right[v as usize] = t.right(v).unwrap_or(0);
        }
        d
    }

    fn kill(&mut self, v: Label) {
        self.alive[v as usize] = false;
    }

    fn finish(&self, relabel: impl Fn(Label) -> Label) -> Result<IncTree> {
        let n = self.alive.iter().filter(|&&a| a).count();
        let mut raw = RawTree {
            n,
            parent: vec![0; n],
            left: vec![0; n],
            right: vec![0; n],
        };
        let map = |v: Label| {
            if v != 0 && self.alive[v as usize] {
                relabel(v)
            } else {
                0
            }
        };
        for v in 1..self.alive.len() as Label {
            if !self.alive[v as usize] {
                continue;
            }
            let nv = relabel(v);
            if nv == 0 || nv as usize > n {
                return Err(TreeError::BadLabels(format!("{v} relabeled to {nv}")).into());
            }
            let i = nv as usize - 1;
            raw.parent[i] = map(self.parent[v as usize]);
            raw.left[i] = map(self.left[v as usize]);
            raw.right[i] = map(self.right[v as usize]);
        }
        Ok(validate(&raw)?)
    }
}

fn stats_of(t: &IncTree) -> Result<StatRecord> {
    Ok(stats(t)?)
}

fn require(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(MapError::PreconditionViolated(what()))
    }
}

fn even_at_least_4(t: &IncTree) -> Result<()> {
    let n = t.size();
    require(n.is_multiple_of(2) && n >= 4, || format!("size {n} is not an even size >= 4"))
}

/// Domain `eoc = 2`: drop the root and its leaf child 2, node 3 becomes the
/// root, labels shift down by 2. `pom` drops by 2.
pub fn first_row_map(t: &IncTree) -> Result<IncTree> {
    even_at_least_4(t)?;
    let s = stats_of(t)?;
    require(s.eoc == 2, || format!("eoc is {}, not 2", s.eoc))?;
    let mut d = Draft::of(t);
    d.kill(1);
    d.kill(2);
    d.finish(|j| j - 2)
}

/// Domain `pom = 2n-1`: delete the rightmost path `2n-1 -> 2n`. `eoc` is kept.
pub fn rightmost_column_map(t: &IncTree) -> Result<IncTree> {
    even_at_least_4(t)?;
    let n = t.size() as Label;
    let s = stats_of(t)?;
    require(s.pom == n - 1, || format!("pom is {}, not {}", s.pom, n - 1))?;
    let mut d = Draft::of(t);
    d.kill(n - 1);
    d.kill(n);
    d.finish(|j| j)
}

/// Domain `pom = 2n-1`: three trees with `pom = 2n-2`.
///
/// The first swaps labels `2n-2` and `2n-1`. The other two delete the path
/// `2n-1 -> 2n` and hang `2n-1` and `2n` as the two children of the former
/// leaf `2n-2`, in both planar orders.
pub fn tripling_map(t: &IncTree) -> Result<[IncTree; 3]> {
    even_at_least_4(t)?;
    let n = t.size() as Label;
    let s = stats_of(t)?;
    require(s.pom == n - 1, || format!("pom is {}, not {}", s.pom, n - 1))?;
    require(t.is_leaf(n - 2), || format!("node {} is not a leaf", n - 2))?;

    let swap = |j: Label| match j {
        j if j == n - 2 => n - 1,
        j if j == n - 1 => n - 2,
        j => j,
    };
    let t1 = Draft::of(t).finish(swap)?;

    let cherry = |first: Label, second: Label| -> Result<IncTree> {
        let mut d = Draft::of(t);
        let p = d.parent[(n - 1) as usize];
        if d.right[p as usize] == n - 1 {
            d.right[p as usize] = 0;
        } else {
            d.left[p as usize] = 0;
        }
        for (v, slot) in [(first, 0), (second, 1)] {
            d.parent[v as usize] = n - 2;
            d.left[v as usize] = 0;
            d.right[v as usize] = 0;
            if slot == 0 {
                d.left[(n - 2) as usize] = v;
            } else {
                d.right[(n - 2) as usize] = v;
            }
        }
        d.finish(|j| j)
    };
    Ok([t1, cherry(n - 1, n)?, cherry(n, n - 1)?])
}

/// Domain `pom = 1`: drop the root and its leaf child `2n`, node 2 becomes
/// the root, labels shift down by 1. `eoc` drops by 1.
pub fn pom1_map(t: &IncTree) -> Result<IncTree> {
    even_at_least_4(t)?;
    let s = stats_of(t)?;
    require(s.pom == 1, || format!("pom is {}, not 1", s.pom))?;
    let mut d = Draft::of(t);
    d.kill(1);
    d.kill(t.size() as Label);
    d.finish(|j| j - 1)
}

/// Domain `eoc = 2n`, with minimal chain `1 = a_1 -> ... -> a_{j-1} = k -> 2n`.
///
/// Deletes `k` and `2n`, relabels `a_i` to `a_{i+1} - 1` for `i <= j-2` and
/// every other label `b` to `b - 1`. The image has `ent = k - 1`.
pub fn entringer_map(t: &IncTree) -> Result<IncTree> {
    let n = t.size();
    require(n.is_multiple_of(2) && n >= 4, || format!("size {n} is not an even size >= 4"))?;
    let s = stats_of(t)?;
    require(s.eoc == n as Label, || format!("eoc is {}, not {n}", s.eoc))?;
    let chain = minimal_chain(t);
    let j = chain.len();
    let k = chain[j - 2];
    let mut relabel: Vec<Label> = (0..=n as Label).map(|b| b.saturating_sub(1)).collect();
    for i in 0..j - 2 {
        relabel[chain[i] as usize] = chain[i + 1] - 1;
    }
    let mut d = Draft::of(t);
    d.kill(k);
    d.kill(n as Label);
    d.finish(|b| relabel[b as usize])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapKind {
    FirstRow,
    RightmostColumn,
    Tripling,
    Pom1,
    Entringer,
}

impl MapKind {
    pub const ALL: [MapKind; 5] = [
        MapKind::FirstRow,
        MapKind::RightmostColumn,
        MapKind::Tripling,
        MapKind::Pom1,
        MapKind::Entringer,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MapKind::FirstRow => "first_row",
            MapKind::RightmostColumn => "rightmost_column",
            MapKind::Tripling => "tripling",
            MapKind::Pom1 => "pom1",
            MapKind::Entringer => "entringer",
        }
    }

    fn in_domain(self, two_n: Label, s: &StatRecord) -> bool {
        match self {
            MapKind::FirstRow => s.eoc == 2,
            MapKind::RightmostColumn | MapKind::Tripling => s.pom == two_n - 1,
            MapKind::Pom1 => s.pom == 1,
            MapKind::Entringer => s.eoc == two_n,
        }
    }

    fn apply(self, t: &IncTree) -> Result<Vec<IncTree>> {
        Ok(match self {
            MapKind::FirstRow => vec![first_row_map(t)?],
            MapKind::RightmostColumn => vec![rightmost_column_map(t)?],
            MapKind::Tripling => tripling_map(t)?.to_vec(),
            MapKind::Pom1 => vec![pom1_map(t)?],
            MapKind::Entringer => vec![entringer_map(t)?],
        })
    }

    /// Size of the trees in the codomain.
    fn codomain_size(self, two_n: usize) -> usize {
        match self {
            MapKind::Tripling => two_n,
            _ => two_n - 2,
        }
    }

    fn in_codomain(self, two_n: Label, s: &StatRecord) -> bool {
        match self {
            MapKind::Tripling => s.pom == two_n - 2,
            _ => true,
        }
    }

    /// The statistic tracked on the domain side and the one it is sent to.
    fn tracked(self, s: &StatRecord) -> Label {
        match self {
            MapKind::FirstRow | MapKind::Entringer => s.pom,
            _ => s.eoc,
        }
    }

    fn transported(self, s: &StatRecord) -> Label {
        match self {
            MapKind::FirstRow => s.pom,
            MapKind::Entringer => s.ent,
            _ => s.eoc,
        }
    }

    fn transport_ok(self, two_n: Label, before: &StatRecord, after: &StatRecord) -> bool {
        match self {
            MapKind::FirstRow => after.pom + 2 == before.pom,
            MapKind::RightmostColumn => after.eoc == before.eoc,
            MapKind::Tripling => {
                after.pom == two_n - 2 && (before.eoc >= two_n - 2 || after.eoc == before.eoc)
            }
            MapKind::Pom1 => after.eoc + 1 == before.eoc,
            MapKind::Entringer => after.ent + 1 == before.pom,
        }
    }
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapReport {
    pub map: String,
    pub two_n: usize,
    /// Trees in the domain.
    pub domain: usize,
    /// Distinct image trees.
    pub image: usize,
    pub injective: bool,
    pub transport_ok: bool,
    /// Trees in the stated codomain.
    pub codomain: usize,
    /// The image is exactly the codomain.
    pub onto: bool,
    /// Domain count by the tracked statistic (`pom` for first_row and
    /// entringer, `eoc` otherwise).
    pub domain_profile: BTreeMap<Label, usize>,
    /// Image count by the transported statistic (`pom`, `ent` or `eoc`).
    pub image_profile: BTreeMap<Label, usize>,
    pub collisions: Vec<String>,
    pub failures: Vec<String>,
}

impl MapReport {
    pub fn ok(&self) -> bool {
        self.injective && self.transport_ok && self.onto && self.failures.is_empty()
    }
}

fn all_trees(n: usize) -> Vec<IncTree> {
    trees::prefixes(n, 2.min(n))
        .into_par_iter()
        .flat_map_iter(|p| trees::enumerate_with_prefix(n, &p).collect::<Vec<_>>())
        .collect()
}

/// Runs `kind` over every tree of size `two_n` in its domain.
pub fn verify_map(kind: MapKind, two_n: usize) -> std::result::Result<MapReport, MapError> {
    if two_n % 2 == 1 || two_n < 4 {
        return Err(MapError::PreconditionViolated(format!(
            "size {two_n} is not an even size >= 4"
        )));
    }
    let top = two_n as Label;
    let domain: Vec<(IncTree, StatRecord)> = all_trees(two_n)
        .into_iter()
        .filter_map(|t| {
            let s = stats(&t).ok()?;
            kind.in_domain(top, &s).then_some((t, s))
        })
        .collect();

    let mut failures = Vec::new();
    let mut seen: HashMap<IncTree, String> = HashMap::new();
    let mut collisions = Vec::new();
    let mut transport_ok = true;
    let mut domain_profile = BTreeMap::new();
    let mut image_profile = BTreeMap::new();
    let mut total_images = 0usize;

    for (t, s) in &domain {
        *domain_profile.entry(kind.tracked(s)).or_insert(0) += 1;
        let src = trees::project(t).to_string();
        let images = match kind.apply(t) {
            Ok(v) => v,
            Err(e) => {
                failures.push(format!("{src}: {e}"));
                continue;
            }
        };
        for (idx, img) in images.into_iter().enumerate() {
            total_images += 1;
            let si = stats(&img)?;
            if !kind.transport_ok(top, s, &si) {
                transport_ok = false;
                failures.push(format!("{src} -> {}: statistics {s:?} -> {si:?}", trees::project(&img)));
            }
            if !kind.in_codomain(top, &si) || img.size() != kind.codomain_size(two_n) {
                failures.push(format!("{src} -> {}: outside the codomain", trees::project(&img)));
            }
            *image_profile.entry(kind.transported(&si)).or_insert(0) += 1;
            let tag = format!("{src}#{idx}");
            if let Some(prev) = seen.insert(img.clone(), tag.clone()) {
                collisions.push(format!("{prev} and {tag} -> {}", trees::project(&img)));
            }
        }
    }

    let codomain_trees: Vec<IncTree> = all_trees(kind.codomain_size(two_n))
        .into_iter()
        .filter(|t| stats(t).is_ok_and(|s| kind.in_codomain(top, &s)))
        .collect();
    let onto = seen.len() == codomain_trees.len()
        && codomain_trees.iter().all(|t| seen.contains_key(t));

    Ok(MapReport {
        map: kind.name().to_string(),
        two_n,
        domain: domain.len(),
        image: seen.len(),
        injective: collisions.is_empty() && seen.len() == total_images,
        transport_ok,
        codomain: codomain_trees.len(),
        onto,
        domain_profile,
        image_profile,
        collisions,
        failures,
    })
}
