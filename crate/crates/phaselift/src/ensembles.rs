//! Gaussian and Haar-distributed sampling, the Gram–Schmidt coupling, and
//! the Lipschitz surrogate maps used in distributional property tests.
//!
//! Haar sampling is QR of a Gaussian matrix with the R-diagonal phases
//! normalized; without that correction QR output is not Haar-distributed.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::stream::FieldTag;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// One Haar-distributed unitary (or orthogonal) matrix.
#[derive(Debug, Clone)]
pub struct UnitarySample {
    pub entries: CMatrix,
    pub field: FieldTag,
}

impl UnitarySample {
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    /// ‖U*U − I‖_F, which construction keeps at roundoff level.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.dim();
        let mut g = self.entries.adjoint() * &self.entries;
        for i in 0..n {
            g[(i, i)] -= Complex64::new(1.0, 0.0);
        }
        g.norm()
    }
}

/// Constants of the surrogate truncation maps: `c1 >> 1` steers the
/// `sqrt(n/c1)` floor of the first map, `c2 in (0,1)` the `sqrt(c2)` floor
/// of the second.
#[derive(Debug, Clone, Copy)]
pub struct SurrogateConfig {
    pub c1: f64,
    pub c2: f64,
}

impl SurrogateConfig {
    pub fn new(c1: f64, c2: f64) -> Result<Self> {
        if !(c1 > 1.0) {
            return Err(Error::InvalidConfig(format!("c1 = {c1} must exceed 1")));
        }
        if !(c2 > 0.0 && c2 < 1.0) {
            return Err(Error::InvalidConfig(format!("c2 = {c2} must lie in (0,1)")));
        }
        Ok(Self { c1, c2 })
    }
}

impl Default for SurrogateConfig {
    fn default() -> Self {
        Self { c1: 100.0, c2: 0.25 }
    }
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R, field: FieldTag) -> Complex64 {
    match field {
        FieldTag::Real => Complex64::new(rng.sample(StandardNormal), 0.0),
        FieldTag::Complex => {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
        }
    }
}

/// iid N(0,1) (real) or CN(0,1) (complex: N(0,1/2) per real component)
/// entries, so E‖z‖² = n in both fields.
pub fn sample_gaussian_vector<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    field: FieldTag,
) -> Result<CVector> {
    if n == 0 {
        return Err(Error::InvalidDimension { got: 0, min: 1 });
    }
    Ok(CVector::from_fn(n, |_, _| complex_gaussian(rng, field)))
}

/// iid Gaussian n×n matrix over the selected field.
pub fn sample_gaussian_matrix<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    field: FieldTag,
) -> Result<CMatrix> {
    if n == 0 {
        return Err(Error::InvalidDimension { got: 0, min: 1 });
    }
    Ok(CMatrix::from_fn(n, n, |_, _| complex_gaussian(rng, field)))
}

/// Haar-distributed sample from U(n) or O(n): QR of a Gaussian matrix with
/// each Q column multiplied by the phase of the matching R diagonal entry.
pub fn sample_haar<R: Rng + ?Sized>(rng: &mut R, n: usize, field: FieldTag) -> Result<UnitarySample> {
    let g = sample_gaussian_matrix(rng, n, field)?;
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        let d = r[(j, j)];
        let m = d.norm();
        let phase = if m > 0.0 { d / m } else { Complex64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    Ok(UnitarySample { entries: q, field })
}

fn norm(v: &CVector) -> f64 {
    v.norm()
}

/// x / ‖x‖.
fn normalize_exact(v: &CVector) -> Result<CVector> {
    let nv = norm(v);
    if nv == 0.0 || !nv.is_finite() {
        return Err(Error::DegenerateInput("zero or non-finite vector".into()));
    }
    Ok(v / Complex64::new(nv, 0.0))
}

/// The coupling that realizes the first two Haar columns from a pair of iid
/// Gaussian vectors: u1 = z/‖z‖, u2 = normalized component of ζ/‖ζ‖
/// orthogonal to u1.
pub fn gram_schmidt_pair(zeta: &CVector, z: &CVector) -> Result<(CVector, CVector)> {
    if zeta.len() != z.len() {
        return Err(Error::DimensionMismatch {
            expected: z.len(),
            got: zeta.len(),
        });
    }
    let u1 = normalize_exact(z)?;
    let v_zeta = normalize_exact(zeta)?;
    let overlap = u1.dotc(&v_zeta);
    let t = &v_zeta - &u1 * overlap;
    let u2 = normalize_exact(&t)
        .map_err(|_| Error::DegenerateInput("inputs are collinear".into()))?;
    Ok((u1, u2))
}

/// x / max(‖x‖, sqrt(n/c1)). Total function; Lipschitz with constant
/// 2·sqrt(c1/n).
pub fn surrogate_v1(x: &CVector, cfg: &SurrogateConfig, n: usize) -> CVector {
    let floor = (n as f64 / cfg.c1).sqrt();
    let d = norm(x).max(floor);
    x / Complex64::new(d, 0.0)
}

/// x / max(‖x‖, sqrt(c2)). Total function; Lipschitz with constant
/// 2/sqrt(c2).
pub fn surrogate_v2(x: &CVector, cfg: &SurrogateConfig) -> CVector {
    let d = norm(x).max(cfg.c2.sqrt());
    x / Complex64::new(d, 0.0)
}
