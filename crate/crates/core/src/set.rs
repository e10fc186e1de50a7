//! Canonical handling of GPM sets: sorted storage, standardization via left
//! multiplication, lexicographic order, essential power vectors, and the
//! textual set syntax `"(m,n);(m,n);..."`.

use std::cmp::Ordering;
use std::fmt;

use crate::clifford::CliffordMap;
use crate::error::{Error, Result};
use crate::gpm::Gpm;

/// A set of distinct GPMs over one modulus, kept in strictly increasing
/// lexicographic order.
///
/// A set is *standard* when it contains the identity `(0,0)`; standard sets
/// correspond to GBS sets containing the canonical maximally entangled
/// state. The sorted member sequence doubles as the set's canonical form:
/// it is the dictionary key for orbit bookkeeping and the quantity compared
/// when a class representative (the lexicographically smallest member) is
/// extracted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GbsSet {
    d: u32,
    members: Vec<Gpm>,
}

impl GbsSet {
    /// Builds the canonical form of a raw GPM collection: deduplicated and
    /// sorted. Fails on an empty collection or mixed moduli.
    pub fn canonicalize(raw: impl IntoIterator<Item = Gpm>) -> Result<Self> {
        let mut members: Vec<Gpm> = raw.into_iter().collect();
        let first = *members.first().ok_or(Error::EmptySet)?;
        let d = first.d();
        if members.iter().any(|g| g.d() != d) {
            return Err(Error::MixedModuli);
        }
        members.sort_unstable();
        members.dedup();
        Ok(Self { d, members })
    }

    /// Members are already strictly increasing and share `d`.
    pub(crate) fn from_sorted_unchecked(d: u32, members: Vec<Gpm>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(members.iter().all(|g| g.d() == d));
        Self { d, members }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false // canonicalize rejects empty input
    }

    pub fn members(&self) -> &[Gpm] {
        &self.members
    }

    pub fn contains(&self, g: Gpm) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    /// Whether the set contains the identity GPM.
    pub fn is_standard(&self) -> bool {
        self.members[0].is_identity()
    }

    /// Left multiplication by `pivot†`: maps each member `x` to
    /// `pivot† ∘ x`. The pivot must be a member, so the result is standard.
    pub fn standardize_by(&self, pivot: Gpm) -> Result<GbsSet> {
        if !self.contains(pivot) {
            return Err(Error::PivotNotMember {
                pivot: pivot.to_string(),
            });
        }
        let inv = pivot.dagger();
        GbsSet::canonicalize(self.members.iter().map(|x| inv.compose(*x)))
    }

    /// Elementwise image under a determinant-one map, re-canonicalized.
    /// Cardinality and the standard flag are preserved.
    pub fn apply_map(&self, w: &CliffordMap) -> GbsSet {
        assert_eq!(
            self.d,
            w.d(),
            "modulus mismatch: set d={} vs map d={}",
            self.d,
            w.d()
        );
        let mut members: Vec<Gpm> = self.members.iter().map(|g| w.apply(*g)).collect();
        members.sort_unstable();
        GbsSet { d: self.d, members }
    }

    /// Ascending essential powers of the members.
    pub fn power_vector(&self) -> PowerVector {
        let mut powers: Vec<u32> = self
            .members
            .iter()
            .map(|g| g.power_profile().essential_power)
            .collect();
        powers.sort_unstable();
        PowerVector(powers)
    }

    /// Returns the set with the identity prepended (the expansion of the
    /// display shorthand that omits the common element `(0,0)`).
    pub fn with_identity(&self) -> GbsSet {
        if self.is_standard() {
            return self.clone();
        }
        let mut members = Vec::with_capacity(self.members.len() + 1);
        members.push(Gpm::identity(self.d));
        members.extend_from_slice(&self.members);
        GbsSet { d: self.d, members }
    }

    /// Parses `"(m,n);(m,n);..."` with optional whitespace. The identity is
    /// *not* inserted implicitly; use [`GbsSet::with_identity`] for that.
    pub fn parse(text: &str, d: u32) -> Result<GbsSet> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(Error::EmptySet);
        }
        let members = trimmed
            .split(';')
            .map(|item| Gpm::parse(item, d))
            .collect::<Result<Vec<_>>>()?;
        GbsSet::canonicalize(members)
    }
}

impl fmt::Display for GbsSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Elementwise lexicographic comparison of two same-size, same-modulus
/// sets. This is the total order used to pick class representatives.
pub fn lex_compare(a: &GbsSet, b: &GbsSet) -> Result<Ordering> {
    if a.d() != b.d() {
        return Err(Error::MixedModuli);
    }
    if a.len() != b.len() {
        return Err(Error::ClassificationMismatch(format!(
            "cannot compare sets of sizes {} and {}",
            a.len(),
            b.len()
        )));
    }
    Ok(a.members.cmp(&b.members))
}

/// The sorted essential powers of a set's members, a conjugation invariant.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PowerVector(pub Vec<u32>);

impl fmt::Display for PowerVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{canonicalizer_for, enumerate};

    fn set(d: u32, pairs: &[(u32, u32)]) -> GbsSet {
        GbsSet::canonicalize(pairs.iter().map(|&(m, n)| Gpm::new(d, m, n))).unwrap()
    }

    #[test]
    fn canonicalize_sorts_m_major() {
        let s = set(6, &[(2, 2), (0, 0), (0, 2), (2, 0)]);
        assert_eq!(s.to_string(), "(0,0);(0,2);(2,0);(2,2)");
        let s = set(6, &[(1, 0), (0, 1)]);
        assert_eq!(s.to_string(), "(0,1);(1,0)");
    }

    #[test]
    fn canonicalize_dedupes() {
        let s = set(6, &[(0, 1), (0, 1)]);
        assert_eq!(s.len(), 1);
        assert_eq!(s.to_string(), "(0,1)");
    }

    #[test]
    fn canonicalize_rejects_empty_and_mixed() {
        assert_eq!(GbsSet::canonicalize([]), Err(Error::EmptySet));
        assert_eq!(
            GbsSet::canonicalize([Gpm::new(6, 0, 1), Gpm::new(5, 0, 1)]),
            Err(Error::MixedModuli)
        );
    }

    #[test]
    fn standardize_by_matches_worked_two_set() {
        // {(0,0),(0,1)} standardized by (0,1) becomes {(0,0),(0,5)}
        let s = set(6, &[(0, 0), (0, 1)]);
        assert_eq!(
            s.standardize_by(Gpm::new(6, 0, 1)).unwrap(),
            set(6, &[(0, 0), (0, 5)])
        );
    }

    #[test]
    fn standardize_by_identity_is_noop() {
        let s = set(6, &[(0, 0), (1, 2), (3, 4)]);
        assert_eq!(s.standardize_by(Gpm::identity(6)).unwrap(), s);
    }

    #[test]
    fn standardize_by_subtracts_componentwise() {
        let s = set(6, &[(1, 2), (3, 4)]);
        assert_eq!(
            s.standardize_by(Gpm::new(6, 1, 2)).unwrap(),
            set(6, &[(0, 0), (2, 2)])
        );
    }

    #[test]
    fn standardize_by_rejects_non_member() {
        let s = set(6, &[(0, 0), (0, 1)]);
        assert!(matches!(
            s.standardize_by(Gpm::new(6, 1, 1)),
            Err(Error::PivotNotMember { .. })
        ));
    }

    #[test]
    fn apply_map_identity_is_noop() {
        let s = set(6, &[(0, 0), (2, 3), (4, 1)]);
        assert_eq!(s.apply_map(&CliffordMap::identity(6)), s);
    }

    #[test]
    fn apply_map_composes_with_canonicalizer() {
        let s = set(6, &[(0, 0), (2, 3)]);
        let w = canonicalizer_for(Gpm::new(6, 2, 3)).unwrap();
        assert_eq!(s.apply_map(&w), set(6, &[(0, 0), (0, 1)]));
    }

    #[test]
    fn apply_map_preserves_cardinality_and_standardness() {
        let s = set(6, &[(0, 0), (0, 3), (1, 4), (5, 5)]);
        for w in enumerate(6).unwrap().iter() {
            let image = s.apply_map(w);
            assert_eq!(image.len(), s.len());
            assert!(image.is_standard());
        }
    }

    #[test]
    fn power_vector_fixtures() {
        // {X, X^3 Z^3, Z^4, X^2} on C^6
        let s = set(6, &[(1, 0), (3, 3), (0, 4), (2, 0)]);
        assert_eq!(s.power_vector(), PowerVector(vec![1, 2, 2, 3]));

        // {X^12, Z^3, X^3 Z^4, X^5 Z^15} on C^30
        let s = set(30, &[(12, 0), (0, 3), (3, 4), (5, 15)]);
        assert_eq!(s.power_vector(), PowerVector(vec![1, 3, 5, 6]));

        // {X^4 Z^6, X^6 Z^12, X^2, X^3 Z^5} on C^30
        let s = set(30, &[(4, 6), (6, 12), (2, 0), (3, 5)]);
        assert_eq!(s.power_vector(), PowerVector(vec![1, 2, 2, 6]));
    }

    #[test]
    fn power_vector_invariant_under_every_map() {
        let s = set(6, &[(0, 0), (0, 3), (1, 4), (5, 5)]);
        let pv = s.power_vector();
        for w in enumerate(6).unwrap().iter() {
            assert_eq!(s.apply_map(w).power_vector(), pv);
        }
    }

    #[test]
    fn power_vector_not_invariant_under_standardization() {
        // Left multiplication can change essential powers: a search over
        // standard d=6 sets finds counterexamples at l = 3 (never at l = 2,
        // where negation preserves every gcd).
        let mut counterexample = None;
        'outer: for a in 1..36u32 {
            for b in (a + 1)..36 {
                let s = set(6, &[(0, 0), (a / 6, a % 6), (b / 6, b % 6)]);
                if s.len() != 3 {
                    continue;
                }
                let pv = s.power_vector();
                for pivot in s.members() {
                    let std = s.standardize_by(*pivot).unwrap();
                    if std.power_vector() != pv {
                        counterexample = Some((s.clone(), *pivot, std));
                        break 'outer;
                    }
                }
            }
        }
        let (s, pivot, std) = counterexample.expect("search should find a counterexample");
        assert_ne!(s.power_vector(), std.power_vector(), "pivot {pivot}");

        // And the concrete witness: {(0,0),(0,1),(0,2)} pivoted at (0,1).
        let s = set(6, &[(0, 0), (0, 1), (0, 2)]);
        assert_eq!(s.power_vector(), PowerVector(vec![0, 1, 2]));
        let std = s.standardize_by(Gpm::new(6, 0, 1)).unwrap();
        assert_eq!(std.power_vector(), PowerVector(vec![0, 1, 1]));
    }

    #[test]
    fn lex_compare_examples() {
        let a = set(6, &[(0, 0), (0, 1)]);
        let b = set(6, &[(0, 0), (1, 0)]);
        assert_eq!(lex_compare(&a, &b).unwrap(), Ordering::Less);
        assert_eq!(lex_compare(&a, &a).unwrap(), Ordering::Equal);

        let a = set(6, &[(0, 0), (0, 1), (0, 2)]);
        let b = set(6, &[(0, 0), (0, 1), (0, 3)]);
        assert_eq!(lex_compare(&a, &b).unwrap(), Ordering::Less);
    }

    #[test]
    fn lex_compare_rejects_mismatches() {
        let a = set(6, &[(0, 0), (0, 1)]);
        let b = set(6, &[(0, 0), (0, 1), (0, 2)]);
        assert!(lex_compare(&a, &b).is_err());
        let c = set(5, &[(0, 0), (0, 1)]);
        assert_eq!(lex_compare(&a, &c), Err(Error::MixedModuli));
    }

    #[test]
    fn parse_accepts_whitespace_and_shorthand_expansion() {
        let s = GbsSet::parse(" (0,0) ; (0,2)\t; (2,0); (2,2) ", 6).unwrap();
        assert_eq!(s.to_string(), "(0,0);(0,2);(2,0);(2,2)");

        let shorthand = GbsSet::parse("(0,1);(3,2)", 6).unwrap();
        assert!(!shorthand.is_standard());
        let full = shorthand.with_identity();
        assert_eq!(full.to_string(), "(0,0);(0,1);(3,2)");
        assert_eq!(full.with_identity(), full);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(GbsSet::parse("", 6).is_err());
        assert!(GbsSet::parse("(0,0);(x,1)", 6).is_err());
        assert!(GbsSet::parse("(0,0),(0,1)", 6).is_err());
    }
}
