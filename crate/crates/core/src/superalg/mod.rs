//! Exact supercommutative polynomial arithmetic with parity and weight
//! bookkeeping.
//!
//! Everything downstream (atlases, tangent prolongation, parity reversion,
//! polarization) is built on the types here: coordinates carry a Grassmann
//! parity and a multi-weight, monomials are kept in a canonical sorted form
//! with all Koszul signs folded into exact rational coefficients, and maps
//! between charts substitute coordinates homomorphically.

mod chart;
mod deriv;
mod map;
mod poly;


pub use chart::{same_chart, Chart, ChartRef, CoordName, CoordinateSymbol};
pub use deriv::Derivation;
pub use map::PolynomialMap;
pub use poly::{Polynomial, Term};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rational coefficient.
pub type Coeff = BigRational;

pub fn coeff_int(v: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(v))
}

pub fn coeff_ratio(num: i64, den: i64) -> Coeff {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Grassmann parity of a coordinate or a homogeneous function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn is_odd(self) -> bool {
        matches!(self, Parity::Odd)
    }

    pub fn from_u32(v: u32) -> Parity {
        if v.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl std::ops::Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

/// Weight of a coordinate: a tuple of non-negative integers, one entry per
/// grading slot of the ambient bundle kind. Length 1 for N-weighted bundles,
/// length n with entries in {0,1} for n-vector bundles.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(pub Vec<u32>);

impl Weight {
    pub fn zero(slots: usize) -> Weight {
        Weight(vec![0; slots])
    }

    pub fn slots(&self) -> usize {
        self.0.len()
    }

    pub fn entry(&self, slot: usize) -> u32 {
        self.0[slot - 1]
    }

    /// Total weight `|w|`.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&v| v == 0)
    }

    pub fn is_binary(&self) -> bool {
        self.0.iter().all(|&v| v <= 1)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        debug_assert_eq!(self.slots(), other.slots());
        Weight(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn scaled(&self, k: u32) -> Weight {
        Weight(self.0.iter().map(|v| v * k).collect())
    }

    /// Right action of a permutation: `(w^s)(k) = w(s(k))`.
    pub fn permuted(&self, sigma: &crate::perm::Perm) -> Weight {
        debug_assert_eq!(self.slots(), sigma.len());
        Weight((1..=self.slots()).map(|k| self.entry(sigma.apply(k))).collect())
    }

    /// Parity induced by the total weight mod 2.
    pub fn induced_parity(&self) -> Parity {
        Parity::from_u32(self.total())
    }
}

impl std::fmt::Display for Weight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Weight classification of a polynomial.
///
/// The zero polynomial is homogeneous of every weight, encoded as the
/// wildcard [`WeightClass::Any`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightClass {
    Any,
    Homogeneous(Weight),
    Inhomogeneous,
}

impl WeightClass {
    /// Does this classification allow weight `w`?
    pub fn admits(&self, w: &Weight) -> bool {
        match self {
            WeightClass::Any => true,
            WeightClass::Homogeneous(own) => own == w,
            WeightClass::Inhomogeneous => false,
        }
    }
}

/// Parity classification of a polynomial; zero is the wildcard `Any`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParityClass {
    Any,
    Homogeneous(Parity),
    Mixed,
}

impl ParityClass {
    pub fn admits(&self, p: Parity) -> bool {
        match self {
            ParityClass::Any => true,
            ParityClass::Homogeneous(own) => *own == p,
            ParityClass::Mixed => false,
        }
    }
}
