//! Dense complex-matrix primitives sized for dimensions 2..=1024.
//!
//! Everything here is a pure function of its inputs. Propagators are computed
//! by spectral decomposition, which is exact to round-off for Hermitian
//! generators and needs no step-size tuning at these dimensions.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use thiserror::Error;

/// Dense complex matrix in the bare basis (or a tensor-product basis).
pub type CMat = DMatrix<C64>;
/// Dense complex vector.
pub type CVec = DVector<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Relative tolerance on `‖M − M†‖_F` below which a matrix is accepted as
/// Hermitian. Model builders produce exactly Hermitian matrices, so a
/// violation signals a caller bug.
pub const HERMITICITY_TOL: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum NumericsError {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian: ‖M − M†‖_F = {deviation:.3e} exceeds {tol:.3e}·‖M‖_F")]
    NotHermitian { deviation: f64, tol: f64 },
    #[error("shape mismatch: {a_rows}x{a_cols} vs {b_rows}x{b_cols}")]
    ShapeMismatch {
        a_rows: usize,
        a_cols: usize,
        b_rows: usize,
        b_cols: usize,
    },
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending and each
/// paired with the matching column of `vectors`.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub vectors: CMat,
}

impl Spectrum {
    /// Orthogonal projector onto the span of the selected eigenvector columns.
    pub fn projector(&self, columns: &[usize]) -> CMat {
        projector_from_columns(&self.vectors, columns)
    }
}

/// Projector `Σ v_k v_k†` over the selected columns of `basis`.
///
/// Downstream code must never rely on the eigensolver's basis choice inside a
/// degenerate cluster; the cluster projector is the only well-defined object.
pub fn projector_from_columns(basis: &CMat, columns: &[usize]) -> CMat {
    let n = basis.nrows();
    let mut p = CMat::zeros(n, n);
    for &c in columns {
        let v = basis.column(c);
        for i in 0..n {
            for j in 0..n {
                p[(i, j)] += v[i] * v[j].conj();
            }
        }
    }
    p
}

fn check_hermitian(m: &CMat) -> Result<(), NumericsError> {
    if m.nrows() != m.ncols() {
        return Err(NumericsError::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    let dev = (m - m.adjoint()).norm();
    let scale = m.norm().max(1.0);
    if dev > HERMITICITY_TOL * scale {
        return Err(NumericsError::NotHermitian {
            deviation: dev,
            tol: HERMITICITY_TOL,
        });
    }
    Ok(())
}

/// Hermitian eigendecomposition with eigenvalues sorted ascending.
pub fn hermitian_eig(m: &CMat) -> Result<Spectrum, NumericsError> {
    check_hermitian(m)?;
    // Symmetrize first so the decomposition sees an exactly Hermitian input.
    let sym = (m + m.adjoint()).scale(0.5);
    let eig = sym.symmetric_eigen();
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut vectors = CMat::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    Ok(Spectrum {
        eigenvalues,
        vectors,
    })
}

/// Unitary propagator `e^{-iHt}` of a Hermitian generator, via its spectrum.
pub fn expm_ih(h: &CMat, t: f64) -> Result<CMat, NumericsError> {
    let spec = hermitian_eig(h)?;
    let n = h.nrows();
    let phases: Vec<C64> = spec
        .eigenvalues
        .iter()
        .map(|&lam| (-I * lam * t).exp())
        .collect();
    // U = V e^{-iΛt} V†
    let mut u = CMat::zeros(n, n);
    for (k, &ph) in phases.iter().enumerate() {
        let v = spec.vectors.column(k);
        for i in 0..n {
            let vi = v[i] * ph;
            for j in 0..n {
                u[(i, j)] += vi * v[j].conj();
            }
        }
    }
    Ok(u)
}

/// Frobenius distance `‖A − B‖_F`.
pub fn frobenius_distance(a: &CMat, b: &CMat) -> Result<f64, NumericsError> {
    if a.nrows() != b.nrows() || a.ncols() != b.ncols() {
        return Err(NumericsError::ShapeMismatch {
            a_rows: a.nrows(),
            a_cols: a.ncols(),
            b_rows: b.nrows(),
            b_cols: b.ncols(),
        });
    }
    Ok((a - b).norm())
}

/// Largest entrywise modulus of `A − B`.
pub fn max_entry_distance(a: &CMat, b: &CMat) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}
