//! Ten-component vectors indexed by the ordered strategy pairs `(m, n)`, `m < n`.
//!
//! Every eigencycle set, myopic strength column and measured angular momentum
//! shares this shape. The component order is fixed:
//! `12, 13, 14, 15, 23, 24, 25, 34, 35, 45`.

use std::fmt;
use std::ops::{Add, Index, Mul, Sub};

/// Number of strategies in the game.
pub const N_STRATEGIES: usize = 5;

/// Number of two-dimensional subspaces, `N (N - 1) / 2`.
pub const N_SUBSPACES: usize = 10;

/// 1-based strategy pairs in canonical order.
pub const SUBSPACE_PAIRS: [(usize, usize); N_SUBSPACES] = [
    (1, 2),
    (1, 3),
    (1, 4),
    (1, 5),
    (2, 3),
    (2, 4),
    (2, 5),
    (3, 4),
    (3, 5),
    (4, 5),
];

/// Position of the pair `(m, n)` (1-based, `m < n`) in [`SUBSPACE_PAIRS`].
pub fn pair_index(m: usize, n: usize) -> Option<usize> {
    SUBSPACE_PAIRS.iter().position(|&p| p == (m, n))
}

/// Label such as `"12"` for the component at `index`.
pub fn pair_label(index: usize) -> String {
    let (m, n) = SUBSPACE_PAIRS[index];
    format!("{m}{n}")
}

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct SubspaceVector(pub [f64; N_SUBSPACES]);

impl SubspaceVector {
    pub const fn new(values: [f64; N_SUBSPACES]) -> Self {
        Self(values)
    }

    pub const fn zeros() -> Self {
        Self([0.0; N_SUBSPACES])
    }

    pub fn values(&self) -> &[f64; N_SUBSPACES] {
        &self.0
    }

    /// Component for the subspace `(m, n)`, 1-based; swapped order negates.
    pub fn get(&self, m: usize, n: usize) -> Option<f64> {
        if m < n {
            pair_index(m, n).map(|i| self.0[i])
        } else {
            pair_index(n, m).map(|i| -self.0[i])
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        self.0.iter().copied()
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self(self.0.map(|v| v * factor))
    }

    /// Unit-norm copy, or `None` for the zero vector.
    pub fn normalized(&self) -> Option<Self> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| self.scaled(1.0 / n))
    }

    /// Componentwise mean; `None` for an empty slice.
    pub fn mean_of(vectors: &[Self]) -> Option<Self> {
        if vectors.is_empty() {
            return None;
        }
        let mut acc = [0.0; N_SUBSPACES];
        for v in vectors {
            for (a, x) in acc.iter_mut().zip(v.0.iter()) {
                *a += x;
            }
        }
        let n = vectors.len() as f64;
        Some(Self(acc.map(|a| a / n)))
    }
}

impl Index<usize> for SubspaceVector {
    type Output = f64;

    fn index(&self, index: usize) -> &f64 {
        &self.0[index]
    }
}

impl Add for SubspaceVector {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let mut out = self.0;
        for (o, r) in out.iter_mut().zip(rhs.0.iter()) {
            *o += r;
        }
        Self(out)
    }
}

impl Sub for SubspaceVector {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + rhs.scaled(-1.0)
    }
}

impl Mul<f64> for SubspaceVector {
    type Output = Self;

    fn mul(self, rhs: f64) -> Self {
        self.scaled(rhs)
    }
}

impl fmt::Display for SubspaceVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}: {v:.4}", pair_label(i))?;
        }
        write!(f, ")")
    }
}
