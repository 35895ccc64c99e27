use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::Subset;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// Relative tolerance (per unit of group order) for the zero-sum condition.
pub const BALANCE_TOLERANCE: f64 = 1e-9;

/// A complex-valued function on a group of order `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupFunction {
    values: Vec<Complex64>,
    balanced: bool,
}

impl GroupFunction {
    /// Fails if any value is not finite.
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        if let Some(i) = values.iter().position(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "function value at element {i} is not finite"
            )));
        }
        Ok(GroupFunction {
            values,
            balanced: false,
        })
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn constant(order: usize, c: Complex64) -> Self {
        GroupFunction {
            values: vec![c; order],
            balanced: false,
        }
    }

    pub fn zero(order: usize) -> Self {
        let mut f = Self::constant(order, Complex64::new(0.0, 0.0));
        f.balanced = true;
        f
    }

    /// Point mass at `a`.
    pub fn delta(order: usize, a: usize) -> Self {
        let mut f = Self::constant(order, Complex64::new(0.0, 0.0));
        f.values[a] = Complex64::new(1.0, 0.0);
        f
    }

    /// Characteristic function of `set`.
    pub fn indicator(set: &Subset) -> Self {
        let mut f = Self::constant(set.order(), Complex64::new(0.0, 0.0));
        for i in set.iter() {
            f.values[i] = Complex64::new(1.0, 0.0);
        }
        f
    }

    /// `1_A - |A|/n`, the balanced part of a characteristic function.
    pub fn balanced_indicator(set: &Subset) -> Self {
        let d = set.density();
        let mut f = Self::indicator(set);
        for v in f.values.iter_mut() {
            v.re -= d;
        }
        f.balanced = true;
        f
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn get(&self, x: usize) -> Complex64 {
        self.values[x]
    }

    pub fn sum(&self) -> Complex64 {
        self.values.iter().sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum()
    }

    pub fn max_modulus(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Whether the values sum to zero within `1e-9 · n`.
    pub fn sums_to_zero(&self) -> bool {
        self.sum().norm() <= BALANCE_TOLERANCE * self.order().max(1) as f64
    }

    /// The balanced flag; only ever set when the zero-sum condition holds.
    pub fn is_balanced(&self) -> bool {
        self.balanced
    }

    /// Sets the balanced flag after checking the zero-sum condition.
    pub fn into_balanced(mut self) -> Result<Self> {
        if !self.sums_to_zero() {
            return Err(Error::InvalidArgument(format!(
                "function sums to {} rather than zero",
                self.sum()
            )));
        }
        self.balanced = true;
        Ok(self)
    }

    /// `x ↦ f(x)·u`
    pub fn scaled(&self, u: Complex64) -> Self {
        GroupFunction {
            values: self.values.iter().map(|v| v * u).collect(),
            balanced: self.balanced,
        }
    }
}

/// On-disk function: `{"group": descriptor, "re": [...], "im": [...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupFunctionFile {
    pub group: String,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl GroupFunctionFile {
    pub fn new(group: &FiniteGroup, f: &GroupFunction) -> Self {
        GroupFunctionFile {
            group: group.descriptor().to_string(),
            re: f.values.iter().map(|v| v.re).collect(),
            im: f.values.iter().map(|v| v.im).collect(),
        }
    }

    pub fn to_function(&self, group: &FiniteGroup) -> Result<GroupFunction> {
        let n = group.order();
        if self.re.len() != n || self.im.len() != n {
            return Err(Error::OrderMismatch {
                expected: n,
                found: self.re.len().max(self.im.len()),
            });
        }
        GroupFunction::new(
            self.re
                .iter()
                .zip(&self.im)
                .map(|(&r, &i)| Complex64::new(r, i))
                .collect(),
        )
    }
}
