use serde::{Deserialize, Serialize};

use super::poly::NCPolynomial;
use super::theta::ThetaParams;
use crate::arith::GaussianRational;
use crate::error::{Error, Result};

/// Dense `rows × cols` matrix over the algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct AlgebraMatrix {
    rows: usize,
    cols: usize,
    theta: ThetaParams,
    entries: Vec<NCPolynomial>,
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<NCPolynomial>,
}

impl TryFrom<MatrixJson> for AlgebraMatrix {
    type Error = Error;
    fn try_from(j: MatrixJson) -> Result<Self> {
        AlgebraMatrix::new(j.rows, j.cols, j.entries)
    }
}

impl From<AlgebraMatrix> for MatrixJson {
    fn from(m: AlgebraMatrix) -> Self {
        MatrixJson { rows: m.rows, cols: m.cols, entries: m.entries }
    }
}

/// Outcome of [`AlgebraMatrix::is_projector`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectorReport {
    /// `M² − M`
    pub idempotent_residual: AlgebraMatrix,
    /// `M* − M`
    pub selfadjoint_residual: AlgebraMatrix,
    pub ok: bool,
}

/// Outcome of [`AlgebraMatrix::assert_scalar_projector`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScalarProjectorReport {
    pub all_scalar: bool,
    /// First entry of positive degree, if any.
    pub offending: Option<(usize, usize, NCPolynomial)>,
}

impl AlgebraMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<NCPolynomial>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}×{cols} matrix",
                entries.len()
            )));
        }
        let theta = entries[0].theta().clone();
        if entries.iter().any(|e| e.theta() != &theta) {
            return Err(Error::ThetaMismatch);
        }
        Ok(Self { rows, cols, theta, entries })
    }

    pub fn zeros(rows: usize, cols: usize, theta: ThetaParams) -> Self {
        let entries = vec![NCPolynomial::zero(theta.clone()); rows * cols];
        Self { rows, cols, theta, entries }
    }

    pub fn identity(n: usize, theta: ThetaParams) -> Self {
        let mut m = Self::zeros(n, n, theta.clone());
        for i in 0..n {
            m.entries[i * n + i] = NCPolynomial::one(theta.clone());
        }
        m
    }

    /// A matrix of constants, row-major.
    pub fn from_scalars(rows: usize, cols: usize, theta: ThetaParams, vals: Vec<GaussianRational>) -> Result<Self> {
        let entries = vals.into_iter().map(|c| NCPolynomial::constant(theta.clone(), c)).collect();
        Self::new(rows, cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn theta(&self) -> &ThetaParams {
        &self.theta
    }

    pub fn get(&self, i: usize, j: usize) -> &NCPolynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[NCPolynomial] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}×{} times {}×{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Self::zeros(self.rows, o.cols, self.theta.clone());
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = NCPolynomial::zero(self.theta.clone());
                for k in 0..self.cols {
                    acc = acc.try_add(&self.get(i, k).nc_multiply(o.get(k, j))?)?;
                }
                out.entries[i * o.cols + j] = acc;
            }
        }
        Ok(out)
    }

    fn zip_with(&self, o: &Self, f: impl Fn(&NCPolynomial, &NCPolynomial) -> Result<NCPolynomial>) -> Result<Self> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}×{} against {}×{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let entries = self.entries.iter().zip(&o.entries).map(|(a, b)| f(a, b)).collect::<Result<_>>()?;
        Self::new(self.rows, self.cols, entries)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.zip_with(o, |a, b| a.try_add(b))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.zip_with(o, |a, b| a.try_sub(b))
    }

    /// Conjugate transpose with entrywise algebra adjoints.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows, self.theta.clone());
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[j * self.rows + i] = self.get(i, j).adjoint();
            }
        }
        out
    }

    /// Block diagonal `diag(self, o)`.
    pub fn direct_sum(&self, o: &Self) -> Result<Self> {
        if self.theta != o.theta {
            return Err(Error::ThetaMismatch);
        }
        let (r, c) = (self.rows + o.rows, self.cols + o.cols);
        let mut out = Self::zeros(r, c, self.theta.clone());
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[i * c + j] = self.get(i, j).clone();
            }
        }
        for i in 0..o.rows {
            for j in 0..o.cols {
                out.entries[(self.rows + i) * c + self.cols + j] = o.get(i, j).clone();
            }
        }
        Ok(out)
    }

    pub fn is_projector(&self) -> Result<ProjectorReport> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!("{}×{} is not square", self.rows, self.cols)));
        }
        let idempotent_residual = self.mul(self)?.sub(self)?;
        let selfadjoint_residual = self.adjoint().sub(self)?;
        let ok = idempotent_residual.is_zero() && selfadjoint_residual.is_zero();
        Ok(ProjectorReport { idempotent_residual, selfadjoint_residual, ok })
    }

    /// Checks that a projector has only degree-0 entries.
    pub fn assert_scalar_projector(&self) -> Result<ScalarProjectorReport> {
        if !self.is_projector()?.ok {
            return Err(Error::NotAProjector);
        }
        let offending = (0..self.rows)
            .flat_map(|i| (0..self.cols).map(move |j| (i, j)))
            .find(|&(i, j)| !self.get(i, j).is_scalar())
            .map(|(i, j)| (i, j, self.get(i, j).clone()));
        Ok(ScalarProjectorReport { all_scalar: offending.is_none(), offending })
    }
}
