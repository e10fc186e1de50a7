//! The classical (symplectic) representation of single-qudit Clifford
//! operators: 2x2 determinant-one matrices over `Z_d` acting linearly on
//! GPM exponent pairs.
//!
//! Conjugating `X^m Z^n` by a Clifford unitary with representation
//! `W = [[a1, b1], [a2, b2]]` sends `(m, n)` to
//! `(a1*m + b1*n, a2*m + b2*n)` mod d. Only this action matters here; the
//! d x d unitary realizing `W` is never materialized. For even d the lift
//! from a determinant-one matrix to a genuine Clifford unitary has known
//! phase-convention subtleties; all determinant-one matrices are treated as
//! Clifford representations, which is the convention the classification
//! uses throughout.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::gpm::Gpm;
use crate::residue::{ext_gcd, gcd3, Residue};

/// Enumeration is capped: `d^4` candidate tuples are filtered per call, and
/// every classification target sits far below the cap.
pub const MAX_ENUMERATION_D: u32 = 50;

/// A 2x2 determinant-one matrix `[[a1, b1], [a2, b2]]` over `Z_d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CliffordMap {
    a1: Residue,
    b1: Residue,
    a2: Residue,
    b2: Residue,
}

impl CliffordMap {
    /// Builds a map from entries in row-major order, checking the
    /// determinant condition.
    pub fn new(d: u32, entries: [u32; 4]) -> Result<Self> {
        let [a1, b1, a2, b2] = entries.map(|e| Residue::new(e, d));
        let det = a1 * b2 - b1 * a2;
        if det.value() != 1 {
            return Err(Error::NotUnimodular { d, det: det.value() });
        }
        Ok(Self { a1, b1, a2, b2 })
    }

    /// Like [`CliffordMap::new`] but reduces signed entries first.
    pub fn from_signed(d: u32, entries: [i64; 4]) -> Result<Self> {
        Self::new(
            d,
            entries.map(|e| Residue::from_signed(e, d).value()),
        )
    }

    pub fn identity(d: u32) -> Self {
        Self::new(d, [1, 0, 0, 1]).expect("identity is unimodular")
    }

    pub fn d(&self) -> u32 {
        self.a1.modulus()
    }

    /// Entries in row-major order `[a1, b1, a2, b2]`.
    pub fn entries(&self) -> [u32; 4] {
        [
            self.a1.value(),
            self.b1.value(),
            self.a2.value(),
            self.b2.value(),
        ]
    }

    /// The image of `(m, n)` under conjugation:
    /// `(a1*m + b1*n, a2*m + b2*n)` mod d.
    pub fn apply(&self, g: Gpm) -> Gpm {
        assert_eq!(
            self.d(),
            g.d(),
            "modulus mismatch: map d={} vs GPM d={}",
            self.d(),
            g.d()
        );
        let d = self.d();
        let m = Residue::new(g.x_exp(), d);
        let n = Residue::new(g.z_exp(), d);
        Gpm::new(
            d,
            (self.a1 * m + self.b1 * n).value(),
            (self.a2 * m + self.b2 * n).value(),
        )
    }

    /// Matrix product `self * other`, so that
    /// `u.compose(&v).apply(g) == u.apply(v.apply(g))`.
    pub fn compose(&self, other: &CliffordMap) -> CliffordMap {
        assert_eq!(
            self.d(),
            other.d(),
            "modulus mismatch: {} vs {}",
            self.d(),
            other.d()
        );
        CliffordMap {
            a1: self.a1 * other.a1 + self.b1 * other.a2,
            b1: self.a1 * other.b1 + self.b1 * other.b2,
            a2: self.a2 * other.a1 + self.b2 * other.a2,
            b2: self.a2 * other.b1 + self.b2 * other.b2,
        }
    }

    /// The inverse map; with determinant one this is the adjugate.
    pub fn inverse(&self) -> CliffordMap {
        CliffordMap {
            a1: self.b2,
            b1: -self.b1,
            a2: -self.a2,
            b2: self.a1,
        }
    }
}

impl fmt::Display for CliffordMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a1, b1, a2, b2] = self.entries();
        write!(f, "[[{a1},{b1}],[{a2},{b2}]]")
    }
}

fn table_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<CliffordMap>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<CliffordMap>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// All determinant-one 2x2 matrices over `Z_d`, each exactly once, in
/// row-major order over the entries.
///
/// The table for each d is built on first use by filtering all `d^4` entry
/// tuples and cached immutably for the life of the process; concurrent
/// callers share one table.
pub fn enumerate(d: u32) -> Result<Arc<Vec<CliffordMap>>> {
    if !(2..=MAX_ENUMERATION_D).contains(&d) {
        return Err(Error::UnsupportedDimension {
            d,
            min: 2,
            max: MAX_ENUMERATION_D,
        });
    }
    if let Some(table) = table_cache().lock().unwrap().get(&d) {
        return Ok(Arc::clone(table));
    }
    let mut maps = Vec::new();
    for a1 in 0..d {
        for b1 in 0..d {
            for a2 in 0..d {
                for b2 in 0..d {
                    let det = (u64::from(a1) * u64::from(b2) + u64::from(d) * u64::from(d)
                        - u64::from(b1) * u64::from(a2))
                        % u64::from(d);
                    if det == 1 {
                        maps.push(CliffordMap {
                            a1: Residue::new(a1, d),
                            b1: Residue::new(b1, d),
                            a2: Residue::new(a2, d),
                            b2: Residue::new(b2, d),
                        });
                    }
                }
            }
        }
    }
    let table = Arc::new(maps);
    table_cache()
        .lock()
        .unwrap()
        .entry(d)
        .or_insert_with(|| Arc::clone(&table));
    Ok(table)
}

/// Builds the map sending a nontrivial `(s, t)` to `(0, gcd(s, t, d))`,
/// its canonical conjugation image.
///
/// The construction composes two unimodular row operations. With
/// `b = gcd(s, t)`, `p1*s + q1*t = b`, `a = gcd(d, b)` and
/// `p2*d + q2*b = a`:
///
/// ```text
/// first  = [[t/b, -s/b], [p1, q1]]    sends (s, t) to (0, b)
/// second = [[b/a, -d/a], [p2, q2]]    sends (0, b) to (0, a)
/// ```
///
/// Division entries are exact integer quotients taken before reduction
/// mod d.
pub fn canonicalizer_for(g: Gpm) -> Result<CliffordMap> {
    if g.is_identity() {
        return Err(Error::IdentityNotCanonicalizable);
    }
    let d = i64::from(g.d());
    let s = i64::from(g.x_exp());
    let t = i64::from(g.z_exp());

    let pair = ext_gcd(s, t);
    let b = pair.gcd;
    let first = CliffordMap::from_signed(g.d(), [t / b, -(s / b), pair.x, pair.y])?;

    let full = ext_gcd(d, b);
    let a = full.gcd;
    let second = CliffordMap::from_signed(g.d(), [b / a, -(d / a), full.x, full.y])?;

    let w = second.compose(&first);
    debug_assert_eq!(
        w.apply(g),
        Gpm::new(g.d(), 0, gcd3(g.x_exp(), g.z_exp(), g.d()))
    );
    Ok(w)
}
