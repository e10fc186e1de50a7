//! Exact arithmetic over the ring `Z_d` and the extended-gcd machinery
//! behind the Clifford canonicalizer constructors.
//!
//! Binary operations on [`Residue`] values require equal moduli and panic
//! otherwise: a mixed-modulus operand is always a programming error, never
//! an input condition. Input validation happens at the parsing boundary.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;

/// A value reduced into `[0, d)` together with its modulus `d`.
///
/// The modulus travels with every value so that one process can work with
/// several dimensions at once (for example d = 5 and d = 6 checks in a
/// single run).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Residue {
    value: u32,
    modulus: u32,
}

impl Residue {
    /// Wraps `value` into `[0, d)`. The modulus must be at least 2.
    pub fn new(value: u32, modulus: u32) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2, got {modulus}");
        Self {
            value: value % modulus,
            modulus,
        }
    }

    /// Euclidean (always nonnegative) reduction of a signed integer,
    /// so `-1` becomes `d - 1`.
    pub fn from_signed(value: i64, modulus: u32) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2, got {modulus}");
        Self {
            value: value.rem_euclid(i64::from(modulus)) as u32,
            modulus,
        }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn require_same_modulus(self, other: Self) {
        assert_eq!(
            self.modulus, other.modulus,
            "modulus mismatch: {} vs {}",
            self.modulus, other.modulus
        );
    }
}

impl Add for Residue {
    type Output = Residue;

    fn add(self, rhs: Residue) -> Residue {
        self.require_same_modulus(rhs);
        Residue {
            value: (self.value + rhs.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl Sub for Residue {
    type Output = Residue;

    fn sub(self, rhs: Residue) -> Residue {
        self.require_same_modulus(rhs);
        Residue {
            value: (self.value + self.modulus - rhs.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl Mul for Residue {
    type Output = Residue;

    fn mul(self, rhs: Residue) -> Residue {
        self.require_same_modulus(rhs);
        let wide = u64::from(self.value) * u64::from(rhs.value);
        Residue {
            value: (wide % u64::from(self.modulus)) as u32,
            modulus: self.modulus,
        }
    }
}

impl Neg for Residue {
    type Output = Residue;

    fn neg(self) -> Residue {
        Residue {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Result of the extended Euclidean algorithm: `x * a + y * b = gcd`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BezoutTriple {
    pub gcd: i64,
    pub x: i64,
    pub y: i64,
}

/// Extended Euclidean algorithm over the integers.
///
/// Returns `(g, x, y)` with `x * a + y * b = g = gcd(a, b) > 0`.
/// Panics when both inputs are zero.
pub fn ext_gcd(a: i64, b: i64) -> BezoutTriple {
    assert!(a != 0 || b != 0, "ext_gcd(0, 0) is undefined");
    let e = a.extended_gcd(&b);
    debug_assert_eq!(e.x * a + e.y * b, e.gcd);
    debug_assert!(e.gcd > 0);
    BezoutTriple {
        gcd: e.gcd,
        x: e.x,
        y: e.y,
    }
}

/// Greatest common divisor of three values, with `gcd3(0, 0, d) = d`.
///
/// This is the essential power of the GPM `X^a Z^b` on `C^d` when
/// `(a, b) != (0, 0)`.
pub fn gcd3(a: u32, b: u32, d: u32) -> u32 {
    debug_assert!(d >= 2);
    a.gcd(&b).gcd(&d)
}
