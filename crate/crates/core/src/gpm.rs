//! Generalized Pauli matrices up to global phase.
//!
//! `X^m Z^n` on `C^d` is identified by its exponent pair `(m, n)` over
//! `Z_d`. Products pick up powers of `omega = exp(2 pi i / d)` from
//! reordering `X` and `Z`; those phases are quotiented out at the type
//! level, so equality, composition and inversion are pure exponent
//! arithmetic. What survives the quotient is exactly what the equivalence
//! classification and the LOCC criterion consume: exponent pairs, essential
//! orders/powers, the symplectic form, and difference sets.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::residue::{gcd3, Residue};
use crate::set::GbsSet;

/// A generalized Pauli matrix `X^m Z^n` on `C^d`, phases discarded.
///
/// Ordering is lexicographic on `(m, n)`, which is the order used for set
/// canonicalization and class representatives throughout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gpm {
    m: Residue,
    n: Residue,
}

impl Gpm {
    pub fn new(d: u32, m: u32, n: u32) -> Self {
        Self {
            m: Residue::new(m, d),
            n: Residue::new(n, d),
        }
    }

    /// Builds a GPM from signed exponents, reducing Euclidean-style.
    pub fn from_signed(d: u32, m: i64, n: i64) -> Self {
        Self {
            m: Residue::from_signed(m, d),
            n: Residue::from_signed(n, d),
        }
    }

    pub fn identity(d: u32) -> Self {
        Self::new(d, 0, 0)
    }

    pub fn d(self) -> u32 {
        self.m.modulus()
    }

    /// The `X` exponent `m`.
    pub fn x_exp(self) -> u32 {
        self.m.value()
    }

    /// The `Z` exponent `n`.
    pub fn z_exp(self) -> u32 {
        self.n.value()
    }

    pub fn is_identity(self) -> bool {
        self.m.is_zero() && self.n.is_zero()
    }

    /// Product up to phase: exponents add componentwise mod d.
    pub fn compose(self, other: Self) -> Self {
        Self {
            m: self.m + other.m,
            n: self.n + other.n,
        }
    }

    /// Inverse up to phase: `(m, n)` goes to `(-m, -n)`.
    pub fn dagger(self) -> Self {
        Self {
            m: -self.m,
            n: -self.n,
        }
    }

    /// Essential order and power of this GPM.
    ///
    /// The essential order is the smallest positive `a` with
    /// `U^a ≈ I` (equality up to phase); it equals `d / gcd(m, n, d)` for a
    /// nontrivial GPM. The essential power is `gcd(m, n, d)`, or 0 for the
    /// identity. Both are invariant under Clifford conjugation.
    pub fn power_profile(self) -> PowerProfile {
        if self.is_identity() {
            return PowerProfile {
                essential_order: 1,
                essential_power: 0,
            };
        }
        let p = gcd3(self.m.value(), self.n.value(), self.d());
        PowerProfile {
            essential_order: self.d() / p,
            essential_power: p,
        }
    }

    /// The commutation exponent `(a.n * b.m - a.m * b.n) mod d`.
    ///
    /// `X^a Z^b` and `X^m Z^n` commute exactly when this vanishes; it is
    /// preserved by every determinant-one map and serves as a cheap class
    /// invariant.
    pub fn symplectic_form(self, other: Self) -> Residue {
        self.n * other.m - self.m * other.n
    }

    /// Parses the textual form `(m,n)`, accepting surrounding whitespace
    /// and signed integers (reduced mod d).
    pub fn parse(text: &str, d: u32) -> Result<Self> {
        let inner = text
            .trim()
            .strip_prefix('(')
            .and_then(|rest| rest.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected \"(m,n)\", got {text:?}")))?;
        let mut parts = inner.splitn(2, ',');
        let mut next_int = || -> Result<i64> {
            let field = parts
                .next()
                .ok_or_else(|| Error::Parse(format!("expected two exponents in {text:?}")))?;
            field
                .trim()
                .parse::<i64>()
                .map_err(|e| Error::Parse(format!("bad exponent {:?}: {e}", field.trim())))
        };
        let m = next_int()?;
        let n = next_int()?;
        Ok(Self::from_signed(d, m, n))
    }
}

impl fmt::Display for Gpm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m.value(), self.n.value())
    }
}

/// Essential order and essential power of a GPM.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PowerProfile {
    pub essential_order: u32,
    pub essential_power: u32,
}

/// The difference set `ΔS = {U_j U_k† | j != k}` of a GPM set, identified
/// by exponent differences and deduplicated.
///
/// Never contains the identity (members are distinct), is closed under
/// [`Gpm::dagger`], and has at most `l(l-1)` elements. These are the
/// orthogonality constraints of the one-way LOCC criterion.
pub fn difference_set(s: &GbsSet) -> Result<BTreeSet<Gpm>> {
    if s.len() < 2 {
        return Err(Error::SetTooSmall {
            min: 2,
            got: s.len(),
        });
    }
    let mut out = BTreeSet::new();
    for (j, a) in s.members().iter().enumerate() {
        for (k, b) in s.members().iter().enumerate() {
            if j != k {
                out.insert(a.compose(b.dagger()));
            }
        }
    }
    Ok(out)
}
