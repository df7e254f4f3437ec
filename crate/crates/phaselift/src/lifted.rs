//! The lifted measurement operator A, its adjoint, tangent-space
//! projections at e₁e₁*, and the mean operator S with its inverse.
//!
//! Scaling conventions: the physical measurement of a signal x under one
//! unitary U is the intensity vector |Ux|², i.e. entries uᵢ*Xuᵢ of the
//! lifted X = xx* with uᵢ the conjugated i-th row of U. With
//! `scaled = true` every entry additionally carries the factor
//! s = √(n(n+1)), which normalizes E[(1/m)A*A] to X ↦ X + Tr(X)·I.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;

use crate::ensembles::{sample_haar, CMatrix, CVector, UnitarySample};
use crate::error::{Error, Result};
use crate::stream::FieldTag;

/// Dense Hermitian matrix; construction symmetrizes so the stored entries
/// satisfy X = X* exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    entries: CMatrix,
}

impl HermitianMatrix {
    /// Symmetrize (M + M*)/2. The defect ‖M − M*‖_F of the input is the
    /// caller's responsibility; the result is exactly Hermitian.
    pub fn new(m: CMatrix) -> Self {
        let h = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
        Self { entries: h }
    }

    /// Wrap entries already known to be exactly Hermitian (sums, real
    /// scalings and projections of Hermitian matrices stay exact).
    pub(crate) fn from_hermitian_unchecked(entries: CMatrix) -> Self {
        debug_assert!({
            let defect = (&entries - entries.adjoint()).norm();
            defect <= 1e-12 * entries.norm().max(1.0)
        });
        Self { entries }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            entries: CMatrix::zeros(n, n),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            entries: CMatrix::identity(n, n),
        }
    }

    /// Rank-one lift xx*.
    pub fn from_rank_one(x: &CVector) -> Self {
        let n = x.len();
        let mut m = CMatrix::zeros(n, n);
        for j in 0..n {
            let xj = x[j].conj();
            for i in 0..n {
                m[(i, j)] = x[i] * xj;
            }
        }
        // force exact conjugate symmetry of the float products
        Self::new(m)
    }

    /// e_k e_k*.
    pub fn basis_projector(n: usize, k: usize) -> Self {
        let mut m = CMatrix::zeros(n, n);
        m[(k, k)] = Complex64::new(1.0, 0.0);
        Self { entries: m }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.entries
    }

    pub fn into_matrix(self) -> CMatrix {
        self.entries
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.entries[(i, i)].re).sum()
    }

    pub fn frob_norm(&self) -> f64 {
        self.entries.norm()
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.entries[(i, j)]
    }

    /// Real inner product ⟨X, Y⟩ = Tr(XY) of Hermitian matrices.
    pub fn inner(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            .re
    }

    /// Eigendecomposition with eigenvalues sorted ascending. Eigenvalues of
    /// a Hermitian matrix are real; columns of the returned matrix are the
    /// matching orthonormal eigenvectors.
    pub fn eigh(&self) -> Result<(DVector<f64>, CMatrix)> {
        let n = self.dim();
        if n == 0 {
            return Ok((DVector::zeros(0), CMatrix::zeros(0, 0)));
        }
        let se = self
            .entries
            .clone()
            .try_symmetric_eigen(f64::EPSILON, 10_000)
            .ok_or(Error::EigenFailure)?;
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by(|&a, &b| se.eigenvalues[a].total_cmp(&se.eigenvalues[b]));
        let vals = DVector::from_fn(n, |i, _| se.eigenvalues[idx[i]]);
        let mut vecs = CMatrix::zeros(n, n);
        for (col, &k) in idx.iter().enumerate() {
            vecs.set_column(col, &se.eigenvectors.column(k));
        }
        Ok((vals, vecs))
    }

    pub fn scale(&self, a: f64) -> Self {
        Self::from_hermitian_unchecked(&self.entries * Complex64::new(a, 0.0))
    }
}

impl std::ops::Add for &HermitianMatrix {
    type Output = HermitianMatrix;
    fn add(self, rhs: &HermitianMatrix) -> HermitianMatrix {
        HermitianMatrix::from_hermitian_unchecked(&self.entries + &rhs.entries)
    }
}

impl std::ops::Sub for &HermitianMatrix {
    type Output = HermitianMatrix;
    fn sub(self, rhs: &HermitianMatrix) -> HermitianMatrix {
        HermitianMatrix::from_hermitian_unchecked(&self.entries - &rhs.entries)
    }
}

impl std::ops::Neg for &HermitianMatrix {
    type Output = HermitianMatrix;
    fn neg(self) -> HermitianMatrix {
        HermitianMatrix::from_hermitian_unchecked(-&self.entries)
    }
}

/// r Haar samples defining the measurement map together with the scaling
/// convention.
#[derive(Debug, Clone)]
pub struct MeasurementEnsemble {
    unitaries: Vec<UnitarySample>,
    n: usize,
    pub scaled: bool,
}

impl MeasurementEnsemble {
    pub fn from_unitaries(unitaries: Vec<UnitarySample>, scaled: bool) -> Result<Self> {
        let first = unitaries.first().ok_or(Error::EmptyEnsemble)?;
        let n = first.dim();
        if n == 0 {
            return Err(Error::InvalidDimension { got: 0, min: 1 });
        }
        let field = first.field;
        for u in &unitaries {
            if u.dim() != n {
                return Err(Error::MixedEnsemble("unitaries of different size".into()));
            }
            if u.field != field {
                return Err(Error::MixedEnsemble("unitaries over different fields".into()));
            }
        }
        Ok(Self { unitaries, n, scaled })
    }

    /// Sample r fresh Haar unitaries from one generator.
    pub fn sample<R: Rng + ?Sized>(
        rng: &mut R,
        n: usize,
        r: usize,
        field: FieldTag,
        scaled: bool,
    ) -> Result<Self> {
        if r == 0 {
            return Err(Error::EmptyEnsemble);
        }
        let unitaries = (0..r)
            .map(|_| sample_haar(rng, n, field))
            .collect::<Result<Vec<_>>>()?;
        Self::from_unitaries(unitaries, scaled)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.unitaries.len()
    }

    pub fn m(&self) -> usize {
        self.n * self.r()
    }

    pub fn field(&self) -> FieldTag {
        self.unitaries[0].field
    }

    pub fn unitaries(&self) -> &[UnitarySample] {
        &self.unitaries
    }

    /// √(n(n+1)) when scaled, 1 otherwise.
    pub fn scale_factor(&self) -> f64 {
        if self.scaled {
            (self.n as f64 * (self.n as f64 + 1.0)).sqrt()
        } else {
            1.0
        }
    }

    pub fn with_scaled(mut self, scaled: bool) -> Self {
        self.scaled = scaled;
        self
    }

    /// Concatenate two ensembles over the same field and dimension.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        let mut unitaries = self.unitaries.clone();
        unitaries.extend(other.unitaries.iter().cloned());
        Self::from_unitaries(unitaries, self.scaled)
    }
}

/// Length-m vector of intensity measurements.
#[derive(Debug, Clone, PartialEq)]
pub struct IntensityVector {
    pub values: DVector<f64>,
}

impl IntensityVector {
    pub fn new(values: DVector<f64>) -> Self {
        Self { values }
    }

    pub fn zeros(m: usize) -> Self {
        Self {
            values: DVector::zeros(m),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.len() == 0
    }

    pub fn norm(&self) -> f64 {
        self.values.norm()
    }

    pub fn l1_norm(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).sum()
    }
}

/// A(X): entry (k,i) is s · uᵢ*Xuᵢ for row i of unitary k. The exact value
/// is real; the roundoff imaginary residue is checked and discarded.
pub fn forward(ens: &MeasurementEnsemble, x: &HermitianMatrix) -> Result<IntensityVector> {
    let n = ens.n();
    if x.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: x.dim(),
        });
    }
    let s = ens.scale_factor();
    let imag_tol = 1e-11 * x.frob_norm().max(1.0);
    let mut values = DVector::zeros(ens.m());
    for (k, u) in ens.unitaries().iter().enumerate() {
        // (U X U*)_{ii} = Σ_c (U X)_{ic} conj(U_{ic})
        let t = &u.entries * x.matrix();
        for i in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for c in 0..n {
                acc += t[(i, c)] * u.entries[(i, c)].conj();
            }
            if acc.im.abs() > imag_tol {
                return Err(Error::NonRealMeasurement { imag: acc.im });
            }
            values[k * n + i] = s * acc.re;
        }
    }
    Ok(IntensityVector::new(values))
}

/// A*(y) = s · Σᵢ yᵢ uᵢuᵢ*.
pub fn adjoint(ens: &MeasurementEnsemble, y: &IntensityVector) -> Result<HermitianMatrix> {
    let n = ens.n();
    if y.len() != ens.m() {
        return Err(Error::LengthMismatch {
            expected: ens.m(),
            got: y.len(),
        });
    }
    let s = Complex64::new(ens.scale_factor(), 0.0);
    let mut acc = CMatrix::zeros(n, n);
    for (k, u) in ens.unitaries().iter().enumerate() {
        // Σ_i y_i u_i u_i* = U^H diag(y) U with u_i the conjugated rows of U
        let mut dy_u = u.entries.clone();
        for i in 0..n {
            let w = Complex64::new(y.values[k * n + i], 0.0);
            for c in 0..n {
                dy_u[(i, c)] *= w;
            }
        }
        acc += u.entries.adjoint() * dy_u;
    }
    Ok(HermitianMatrix::new(acc * s))
}

/// Projection onto the tangent space T at e₁e₁*: X_T = PX + XP − PXP.
pub fn project_t(x: &HermitianMatrix) -> HermitianMatrix {
    let xp = project_t_perp(x);
    x - &xp
}

/// Projection onto T⊥: (I−P) X (I−P) zeroes the first row and column.
pub fn project_t_perp(x: &HermitianMatrix) -> HermitianMatrix {
    let mut m = x.matrix().clone();
    let n = x.dim();
    for i in 0..n {
        m[(0, i)] = Complex64::new(0.0, 0.0);
        m[(i, 0)] = Complex64::new(0.0, 0.0);
    }
    HermitianMatrix::from_hermitian_unchecked(m)
}

/// S(X) = X + Tr(X)·I, the n→∞-free form of E[(1/m) A*A] for the scaled
/// operator.
pub fn mean_op_s(x: &HermitianMatrix) -> HermitianMatrix {
    let n = x.dim();
    let t = Complex64::new(x.trace(), 0.0);
    let mut m = x.matrix().clone();
    for i in 0..n {
        m[(i, i)] += t;
    }
    HermitianMatrix::from_hermitian_unchecked(m)
}

/// S⁻¹(X) = X − Tr(X)/(n+1)·I.
pub fn mean_op_s_inv(x: &HermitianMatrix) -> HermitianMatrix {
    let n = x.dim();
    let t = Complex64::new(x.trace() / (n as f64 + 1.0), 0.0);
    let mut m = x.matrix().clone();
    for i in 0..n {
        m[(i, i)] -= t;
    }
    HermitianMatrix::from_hermitian_unchecked(m)
}

/// Hermitian matrix with iid Gaussian-derived entries, for tests and
/// probes.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize, field: FieldTag) -> Result<HermitianMatrix> {
    let g = crate::ensembles::sample_gaussian_matrix(rng, n, field)?;
    Ok(HermitianMatrix::new(g))
}

/// Random unit vector over the field.
pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R, n: usize, field: FieldTag) -> Result<CVector> {
    let g = crate::ensembles::sample_gaussian_vector(rng, n, field)?;
    let nn = g.norm();
    if nn == 0.0 {
        return Err(Error::DegenerateInput("zero gaussian draw".into()));
    }
    Ok(g / Complex64::new(nn, 0.0))
}
