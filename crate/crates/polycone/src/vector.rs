//! Dense coordinate vectors over a [`Scalar`].

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A point of the primal space or a linear functional of the dual space.
///
/// In finite dimension the dual is identified with the primal, so one type
/// serves for both; the duality pairing is [`RVector::dot`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RVector<T> {
    coords: Vec<T>,
}

impl<T: Scalar> RVector<T> {
    /// Wraps a coordinate list; empty vectors are not allowed.
    pub fn new(coords: Vec<T>) -> Self {
        assert!(!coords.is_empty(), "zero-dimensional vector");
        RVector { coords }
    }

    /// The zero vector of the given dimension.
    pub fn zero(dim: usize) -> Self {
        Self::new(vec![T::zero(); dim])
    }

    /// The `i`-th standard unit vector of the given dimension.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut coords = vec![T::zero(); dim];
        coords[i] = T::one();
        Self::new(coords)
    }

    /// Builds a vector from machine integers.
    pub fn from_ints(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&c| T::from_int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<T> {
        self.coords
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.coords.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Duality pairing `⟨self, other⟩`.
    pub fn dot(&self, other: &Self) -> T {
        assert_eq!(self.dim(), other.dim(), "dot of mismatched dimensions");
        let mut acc = T::zero();
        for (a, b) in self.coords.iter().zip(other.coords.iter()) {
            if !a.is_zero() && !b.is_zero() {
                acc = acc + a.clone() * b.clone();
            }
        }
        acc
    }

    /// Componentwise scaling.
    pub fn scale(&self, factor: &T) -> Self {
        Self::new(
            self.coords
                .iter()
                .map(|c| c.clone() * factor.clone())
                .collect(),
        )
    }

    /// `‖·‖∞`, exact for exact scalars.
    pub fn norm_linf(&self) -> T {
        let mut best = T::zero();
        for c in &self.coords {
            let a = c.abs();
            if a.cmp_total(&best) == std::cmp::Ordering::Greater {
                best = a;
            }
        }
        best
    }

    /// `‖·‖₁`, exact for exact scalars.
    pub fn norm_l1(&self) -> T {
        let mut acc = T::zero();
        for c in &self.coords {
            acc = acc + c.abs();
        }
        acc
    }

    /// Rescales into the canonical representative of the spanned ray.
    pub fn canonicalized_ray(mut self) -> Self {
        T::canonicalize_ray(&mut self.coords);
        self
    }

    /// Lexicographic total order (used for deterministic canonical listings).
    pub fn cmp_lex(&self, other: &Self) -> std::cmp::Ordering {
        for (a, b) in self.coords.iter().zip(other.coords.iter()) {
            match a.cmp_total(b) {
                std::cmp::Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.dim().cmp(&other.dim())
    }

    /// Errs unless the vector has dimension `dim`.
    pub fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() == dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: dim,
                found: self.dim(),
            })
        }
    }

    /// Coordinates converted to `f64` (display / float oracles only).
    pub fn to_f64_lossy(&self) -> Vec<f64> {
        self.coords.iter().map(|c| c.to_f64_lossy()).collect()
    }
}

/// Canonicalizes a generator list: drop zero vectors, scale each to its
/// canonical ray representative, sort lexicographically, remove duplicates.
pub fn canonicalize_rays<T: Scalar>(rays: Vec<RVector<T>>) -> Vec<RVector<T>> {
    let mut out: Vec<RVector<T>> = rays
        .into_iter()
        .filter(|r| !r.is_zero())
        .map(|r| r.canonicalized_ray())
        .collect();
    out.sort_by(|a, b| a.cmp_lex(b));
    out.dedup();
    out
}

impl<T: Scalar> Add for &RVector<T> {
    type Output = RVector<T>;

    fn add(self, rhs: Self) -> RVector<T> {
        assert_eq!(self.dim(), rhs.dim());
        RVector::new(
            self.coords
                .iter()
                .zip(rhs.coords.iter())
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }
}

impl<T: Scalar> Sub for &RVector<T> {
    type Output = RVector<T>;

    fn sub(self, rhs: Self) -> RVector<T> {
        assert_eq!(self.dim(), rhs.dim());
        RVector::new(
            self.coords
                .iter()
                .zip(rhs.coords.iter())
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        )
    }
}

impl<T: Scalar> Neg for &RVector<T> {
    type Output = RVector<T>;

    fn neg(self) -> RVector<T> {
        RVector::new(self.coords.iter().map(|c| -c.clone()).collect())
    }
}

impl<T> Index<usize> for RVector<T> {
    type Output = T;

    fn index(&self, i: usize) -> &T {
        &self.coords[i]
    }
}

impl<T: fmt::Display> fmt::Display for RVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl<T: fmt::Debug> fmt::Debug for RVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c:?}")?;
        }
        write!(f, ")")
    }
}
