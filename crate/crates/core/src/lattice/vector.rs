//! Integer lattice points of `Z^d`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

/// A point of `Z^d` with exact componentwise arithmetic.
///
/// The derived `Ord` is lexicographic, which fixes the deterministic
/// ordering used for every generator list, layer and report in the crate.
/// Arithmetic is checked: coordinate overflow is a defect and panics
/// rather than wrapping.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector {
    coords: Vec<i64>,
}

impl LatticeVector {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticeVector { coords }
    }

    pub fn zero(dim: usize) -> Self {
        LatticeVector {
            coords: vec![0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Exact inner product, accumulated in 128 bits.
    pub fn dot(&self, other: &LatticeVector) -> i128 {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| a as i128 * b as i128)
            .fold(0i128, |acc, x| {
                acc.checked_add(x).expect("dot product overflow")
            })
    }

    pub fn scale(&self, k: i64) -> Self {
        LatticeVector {
            coords: self
                .coords
                .iter()
                .map(|&c| c.checked_mul(k).expect("lattice coordinate overflow"))
                .collect(),
        }
    }

    /// Divide by the gcd of the coordinates. Zero stays zero.
    pub fn primitive(&self) -> Self {
        let g = self
            .coords
            .iter()
            .fold(0i64, |acc, &c| gcd_i64(acc, c.abs()));
        if g <= 1 {
            return self.clone();
        }
        LatticeVector {
            coords: self.coords.iter().map(|&c| c / g).collect(),
        }
    }

    /// True iff `other` is a positive rational multiple of `self`.
    pub fn parallel_same_direction(&self, other: &LatticeVector) -> bool {
        if self.dim() != other.dim() || self.is_zero() || other.is_zero() {
            return false;
        }
        // all 2x2 minors vanish
        for i in 0..self.dim() {
            for j in (i + 1)..self.dim() {
                let m = self.coords[i] as i128 * other.coords[j] as i128
                    - self.coords[j] as i128 * other.coords[i] as i128;
                if m != 0 {
                    return false;
                }
            }
        }
        // same direction: positive dot product
        self.dot(other) > 0
    }

    pub fn leq_componentwise(&self, other: &LatticeVector) -> bool {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords.iter().zip(&other.coords).all(|(a, b)| a <= b)
    }
}

pub(crate) fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, other: &LatticeVector) -> LatticeVector {
        debug_assert_eq!(self.dim(), other.dim());
        LatticeVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| a.checked_add(b).expect("lattice coordinate overflow"))
                .collect(),
        }
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, other: &LatticeVector) -> LatticeVector {
        debug_assert_eq!(self.dim(), other.dim());
        LatticeVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| a.checked_sub(b).expect("lattice coordinate overflow"))
                .collect(),
        }
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector {
            coords: self.coords.iter().map(|&c| -c).collect(),
        }
    }
}

fn fmt_tuple(coords: &[i64], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "(")?;
    for (i, c) in coords.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{c}")?;
    }
    write!(f, ")")
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_tuple(&self.coords, f)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_tuple(&self.coords, f)
    }
}

/// Convenience constructor used heavily in tests: `vec2![1, 2]`.
#[macro_export]
macro_rules! lv {
    ($($c:expr),* $(,)?) => {
        $crate::lattice::LatticeVector::new(vec![$($c as i64),*])
    };
}
