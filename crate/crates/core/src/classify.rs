//! Equivalence classification of standard GPM sets.
//!
//! Two standard sets are Clifford-operators-based equivalent when one is
//! reached from the other by a left multiplication (standardizing at some
//! pivot member) followed by a Clifford conjugation. The class of a set is
//! computed as the closure of `{ W(pivot† M) : pivot in M, W unimodular }`;
//! a single pass is already closed (the relation is an equivalence), and
//! the breadth-first construction verifies that on every orbit it builds.
//!
//! Two classification drivers are provided:
//!
//! - [`classify_all`] scans every standard l-set in lexicographic order and
//!   removes whole orbits as it goes (method I);
//! - [`classify_extension`] grows an (l-1)-classification by one GPM,
//!   classifying only the extension family of its representatives
//!   (method II). Both emit identical representative lists.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clifford::{enumerate, CliffordMap};
use crate::error::{Error, Result};
use crate::gpm::Gpm;
use crate::set::GbsSet;

/// Whether a classification retains full member lists or class sizes only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Emit {
    Reps,
    Members,
}

/// Which classification driver produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Method I: scan the full universe of standard l-sets.
    Full,
    /// Method II: extend the representatives of an (l-1)-classification.
    Incremental,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Full => "full",
            Method::Incremental => "incremental",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Method::Full),
            "incremental" => Ok(Method::Incremental),
            other => Err(Error::Parse(format!(
                "unknown method {other:?}, expected \"full\" or \"incremental\""
            ))),
        }
    }
}

/// Options shared by the classification drivers.
#[derive(Debug, Clone, Copy)]
pub struct ClassifyOptions {
    pub emit: Emit,
    /// Worker threads for orbit expansion; 1 means fully sequential.
    /// Results are byte-identical for every worker count.
    pub workers: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            emit: Emit::Members,
            workers: 1,
        }
    }
}

/// One equivalence class: its lexicographically smallest standard member,
/// the full orbit size, and optionally a member list.
///
/// For method I the members are the whole orbit; for method II they are the
/// orbit's intersection with the extension family that was classified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivClass {
    pub representative: GbsSet,
    pub size: u64,
    pub members: Option<Vec<GbsSet>>,
}

/// A complete classification of the standard l-sets over one modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub d: u32,
    pub l: usize,
    pub method: Method,
    /// Number of standard l-sets, `C(d^2 - 1, l - 1)`. Class sizes sum to
    /// this when the classes partition the universe.
    pub universe_size: u64,
    /// Classes in discovery order, which coincides with ascending
    /// representative order.
    pub classes: Vec<EquivClass>,
}

impl Classification {
    pub fn representatives(&self) -> impl Iterator<Item = &GbsSet> {
        self.classes.iter().map(|c| &c.representative)
    }
}

/// Exact binomial coefficient; the classification universes stay far below
/// u64 range.
pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc as u64
}

/// All images of one set under a single (pivot, map) pass.
fn images_of(m: &GbsSet, maps: &[CliffordMap]) -> Vec<GbsSet> {
    let mut out = Vec::with_capacity(m.len() * maps.len());
    for pivot in m.members() {
        let standardized = m
            .standardize_by(*pivot)
            .expect("pivot is drawn from the member list");
        for w in maps {
            out.push(standardized.apply_map(w));
        }
    }
    out
}

/// One pass of pivot standardization and Clifford conjugation over a
/// standard set. [`orbit`] is the closure of this map; the two agree on
/// every input (single-pass sufficiency), which the property suite checks.
pub fn one_round_images(seed: &GbsSet) -> Result<BTreeSet<GbsSet>> {
    if !seed.is_standard() {
        return Err(Error::NonStandardSet);
    }
    let maps = enumerate(seed.d())?;
    Ok(images_of(seed, &maps).into_iter().collect())
}

fn build_pool(workers: usize) -> Option<rayon::ThreadPool> {
    if workers <= 1 {
        None
    } else {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .expect("worker pool"),
        )
    }
}

/// Breadth-first closure over (pivot, map) images. Terminates after the
/// first round that discovers nothing new, so the construction doubles as
/// a closure check of the single-pass equivalence argument.
fn orbit_members(
    seed: &GbsSet,
    maps: &[CliffordMap],
    pool: Option<&rayon::ThreadPool>,
) -> Result<BTreeSet<GbsSet>> {
    if !seed.is_standard() {
        return Err(Error::NonStandardSet);
    }
    let mut all: BTreeSet<GbsSet> = BTreeSet::new();
    all.insert(seed.clone());
    let mut frontier = vec![seed.clone()];
    while !frontier.is_empty() {
        let batches: Vec<Vec<GbsSet>> = match pool {
            Some(p) => p.install(|| frontier.par_iter().map(|m| images_of(m, maps)).collect()),
            None => frontier.iter().map(|m| images_of(m, maps)).collect(),
        };
        let mut next = Vec::new();
        for image in batches.into_iter().flatten() {
            if !all.contains(&image) {
                all.insert(image.clone());
                next.push(image);
            }
        }
        frontier = next;
    }
    Ok(all)
}

/// The full equivalence class of a standard set, members retained and
/// sorted. Errors on non-standard input.
pub fn orbit(seed: &GbsSet, workers: usize) -> Result<EquivClass> {
    let maps = enumerate(seed.d())?;
    let pool = build_pool(workers);
    let members = orbit_members(seed, &maps, pool.as_ref())?;
    let representative = members
        .first()
        .expect("orbit contains its seed")
        .clone();
    Ok(EquivClass {
        representative,
        size: members.len() as u64,
        members: Some(members.into_iter().collect()),
    })
}

fn check_cardinality(d: u32, l: usize) -> Result<()> {
    if l < 2 || l > d as usize {
        return Err(Error::CardinalityOutOfRange { l, max: d as usize });
    }
    Ok(())
}

/// Method I: classify every standard l-set over `Z_d`.
///
/// Candidates stream in lexicographic order; each unclassified candidate
/// seeds an orbit whose members are removed from the pool. Classes are
/// emitted in discovery order, so representatives ascend and each one is
/// the least member of its class.
pub fn classify_all(d: u32, l: usize, opts: &ClassifyOptions) -> Result<Classification> {
    let maps = enumerate(d)?;
    check_cardinality(d, l)?;
    let identity = Gpm::identity(d);
    let points: Vec<Gpm> = (0..d * d)
        .map(|i| Gpm::new(d, i / d, i % d))
        .filter(|g| !g.is_identity())
        .collect();
    let pool = build_pool(opts.workers);

    let mut visited: HashSet<GbsSet> = HashSet::new();
    let mut classes = Vec::new();
    for combo in points.iter().copied().combinations(l - 1) {
        let mut members = Vec::with_capacity(l);
        members.push(identity);
        members.extend(combo);
        let candidate = GbsSet::from_sorted_unchecked(d, members);
        if visited.contains(&candidate) {
            continue;
        }
        let orb = orbit_members(&candidate, &maps, pool.as_ref())?;
        assert_eq!(
            orb.first(),
            Some(&candidate),
            "scan order guarantees the seed is its class minimum"
        );
        let size = orb.len() as u64;
        let retained = match opts.emit {
            Emit::Members => Some(orb.iter().cloned().collect()),
            Emit::Reps => None,
        };
        visited.extend(orb);
        classes.push(EquivClass {
            representative: candidate,
            size,
            members: retained,
        });
    }

    let universe_size = binomial(u64::from(d) * u64::from(d) - 1, (l - 1) as u64);
    debug_assert_eq!(visited.len() as u64, universe_size);
    Ok(Classification {
        d,
        l,
        method: Method::Full,
        universe_size,
        classes,
    })
}

/// The trivial classification of 1-sets: the single class `{(0,0)}`.
/// Extending it reproduces [`classify_all`] at l = 2.
pub fn identity_base(d: u32) -> Classification {
    let singleton = GbsSet::canonicalize([Gpm::identity(d)]).expect("singleton identity set");
    Classification {
        d,
        l: 1,
        method: Method::Full,
        universe_size: 1,
        classes: vec![EquivClass {
            representative: singleton.clone(),
            size: 1,
            members: Some(vec![singleton]),
        }],
    }
}

/// Method II: classify the family obtained by adding one GPM to each
/// representative of `base`.
///
/// The extension family is classified by intersecting full orbits with it;
/// reported class sizes are full orbit sizes, while retained members are
/// the intersections (which partition the family). Representatives come
/// out identical to method I at the same parameters.
pub fn classify_extension(base: &Classification, opts: &ClassifyOptions) -> Result<Classification> {
    let d = base.d;
    let maps = enumerate(d)?;
    let l = base.l + 1;
    check_cardinality(d, l)?;
    if base.classes.is_empty() {
        return Err(Error::ClassificationMismatch(
            "base classification has no classes".into(),
        ));
    }
    for class in &base.classes {
        if class.representative.d() != d || class.representative.len() != base.l {
            return Err(Error::ClassificationMismatch(format!(
                "base representative {} does not match d={d}, l={}",
                class.representative, base.l
            )));
        }
    }

    let points: Vec<Gpm> = (0..d * d).map(|i| Gpm::new(d, i / d, i % d)).collect();
    let mut family: BTreeSet<GbsSet> = BTreeSet::new();
    for class in &base.classes {
        let rep = &class.representative;
        for g in points.iter().copied().filter(|g| !rep.contains(*g)) {
            let mut members = rep.members().to_vec();
            members.push(g);
            family.insert(GbsSet::canonicalize(members).expect("extension set is nonempty"));
        }
    }

    let pool = build_pool(opts.workers);
    let mut remaining = family.clone();
    let mut classes = Vec::new();
    while let Some(seed) = remaining.first().cloned() {
        let orb = orbit_members(&seed, &maps, pool.as_ref())?;
        debug_assert_eq!(orb.first(), Some(&seed));
        let mut intersection = Vec::new();
        for member in &orb {
            if family.contains(member) {
                remaining.remove(member);
                intersection.push(member.clone());
            }
        }
        classes.push(EquivClass {
            representative: seed,
            size: orb.len() as u64,
            members: match opts.emit {
                Emit::Members => Some(intersection),
                Emit::Reps => None,
            },
        });
    }

    let universe_size = binomial(u64::from(d) * u64::from(d) - 1, (l - 1) as u64);
    Ok(Classification {
        d,
        l,
        method: Method::Incremental,
        universe_size,
        classes,
    })
}

/// Looks up the class containing `s` in a completed classification.
///
/// The orbit of `s` yields its canonical representative (the orbit
/// minimum); an essential-power-vector index narrows the candidate classes
/// first, which is safe because the vector is a conjugation invariant and
/// the final match is by representative equality, not by vector.
pub fn class_of<'c>(s: &GbsSet, classification: &'c Classification) -> Result<&'c EquivClass> {
    if s.d() != classification.d {
        return Err(Error::ClassificationMismatch(format!(
            "set has d={}, classification has d={}",
            s.d(),
            classification.d
        )));
    }
    if s.len() != classification.l {
        return Err(Error::ClassificationMismatch(format!(
            "set has {} members, classification covers l={}",
            s.len(),
            classification.l
        )));
    }
    if !s.is_standard() {
        return Err(Error::NonStandardSet);
    }
    let maps = enumerate(classification.d)?;
    let orb = orbit_members(s, &maps, None)?;
    let representative = orb.first().expect("orbit contains its seed");
    let pv = representative.power_vector();
    classification
        .classes
        .iter()
        .filter(|class| class.representative.power_vector() == pv)
        .find(|class| &class.representative == representative)
        .ok_or(Error::NotInUniverse)
}
