//! The four-level control Hamiltonian family, its analytic dressed frame,
//! gauge potentials/fields over the control parameters, and the five-pod
//! system with its large-detuning reduction.
//!
//! Units: natural units with ħ = 1; all frequencies in rad/s.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numerics::{self, CMat, CVec, NumericsError, ZERO};

#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("degenerate controls: sin(α)·sin(θ) = 0 makes Ω₁ = 0 and the detuning formulas singular")]
    DegenerateControls,
    #[error("control parameter out of domain: {0}")]
    InvalidControls(String),
    #[error("finite-difference step {step} leaves the valid parameter domain at {param}")]
    StepTooLarge { step: f64, param: String },
    #[error("detuning too small for the large-detuning reduction: Δ₅ = {delta5} ≤ 10·max Ω′ = {limit}")]
    DetuningTooSmall { delta5: f64, limit: f64 },
    #[error("invalid five-pod spec: {0}")]
    InvalidFivePod(String),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Control parameterization (θ, α, φ, Ω₀) of the four-level Hamiltonian family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ControlParams {
    pub theta: f64,
    pub alpha: f64,
    pub phi: f64,
    pub omega0: f64,
}

impl ControlParams {
    pub fn new(theta: f64, alpha: f64, phi: f64, omega0: f64) -> Result<Self, ModelError> {
        if !(theta > 0.0 && theta < std::f64::consts::PI) {
            return Err(ModelError::InvalidControls(format!(
                "theta = {theta} must lie strictly inside (0, π)"
            )));
        }
        if !(0.0..=std::f64::consts::PI).contains(&alpha) {
            return Err(ModelError::InvalidControls(format!(
                "alpha = {alpha} must lie in [0, π]"
            )));
        }
        if omega0 <= 0.0 || !omega0.is_finite() {
            return Err(ModelError::InvalidControls(format!(
                "omega0 = {omega0} must be positive and finite"
            )));
        }
        Ok(Self {
            theta,
            alpha,
            phi,
            omega0,
        })
    }

    /// The base point θ = α = π/2, φ = 0 at which the dressed frame reduces to
    /// the simple bare-state combinations.
    pub fn base_point(omega0: f64) -> Self {
        Self {
            theta: std::f64::consts::FRAC_PI_2,
            alpha: std::f64::consts::FRAC_PI_2,
            phi: 0.0,
            omega0,
        }
    }
}

/// The six physical couplings of the four-level Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RabiSet {
    pub omega1: f64,
    pub omega2: f64,
    pub omega3: f64,
    pub omega4: f64,
    pub delta3: f64,
    pub delta4: f64,
}

/// cot with an exact zero at θ = π/2 so the base point is representable
/// exactly.
fn cot(theta: f64) -> f64 {
    if theta == std::f64::consts::FRAC_PI_2 {
        0.0
    } else {
        theta.cos() / theta.sin()
    }
}

/// Rabi frequencies and detunings from the (θ, α, Ω₀) parameterization:
/// Ω₁ = Ω₀ sinα sinθ, Ω₂ = 2Ω₀ cosα cotθ, Ω₃ = √2 Ω₀ sinα cosθ,
/// Ω₄ = √2 Ω₀ cosα, with Δ₃ = Ω₃²/Ω₁ − Ω₁ and Δ₄ = Ω₄²/Ω₁ − Ω₁.
pub fn rabi_from_controls(p: &ControlParams) -> Result<RabiSet, ModelError> {
    let s_th = p.theta.sin();
    let s_al = p.alpha.sin();
    if s_th * s_al == 0.0 {
        return Err(ModelError::DegenerateControls);
    }
    let omega1 = p.omega0 * s_al * s_th;
    let omega2 = 2.0 * p.omega0 * p.alpha.cos() * cot(p.theta);
    let omega3 = std::f64::consts::SQRT_2 * p.omega0 * s_al * p.theta.cos();
    let omega4 = std::f64::consts::SQRT_2 * p.omega0 * p.alpha.cos();
    let delta3 = omega3 * omega3 / omega1 - omega1;
    let delta4 = omega4 * omega4 / omega1 - omega1;
    Ok(RabiSet {
        omega1,
        omega2,
        omega3,
        omega4,
        delta3,
        delta4,
    })
}

/// The four-level interaction Hamiltonian (bare basis, with the global ½
/// factor):
///
/// ```text
///       ⎛ 0        Ω₁e^{iφ}  Ω₃        Ω₄e^{iφ} ⎞
/// H = ½ ⎜ Ω₁e^{-iφ} 0        Ω₃e^{-iφ} Ω₄       ⎟
///       ⎜ Ω₃       Ω₃e^{iφ}  Δ₃        Ω₂e^{iφ} ⎟
///       ⎝ Ω₄e^{-iφ} Ω₄       Ω₂e^{-iφ} Δ₄       ⎠
/// ```
pub fn build_h4(r: &RabiSet, phi: f64) -> CMat {
    let e = C64::from_polar(1.0, phi);
    let ec = e.conj();
    let half = C64::new(0.5, 0.0);
    let o1 = C64::new(r.omega1, 0.0);
    let o2 = C64::new(r.omega2, 0.0);
    let o3 = C64::new(r.omega3, 0.0);
    let o4 = C64::new(r.omega4, 0.0);
    let d3 = C64::new(r.delta3, 0.0);
    let d4 = C64::new(r.delta4, 0.0);
    let rows = [
        [ZERO, o1 * e, o3, o4 * e],
        [o1 * ec, ZERO, o3 * ec, o4],
        [o3, o3 * e, d3, o2 * e],
        [o4 * ec, o4, o2 * ec, d4],
    ];
    CMat::from_fn(4, 4, |i, j| half * rows[i][j])
}

/// The analytic dressed eigenframe. The first three vectors span the
/// degenerate lowest eigen subspace; the fourth is the separated upper state.
#[derive(Debug, Clone)]
pub struct DressedFrame {
    pub vectors: [CVec; 4],
    pub lowest_eigenvalue: f64,
    pub upper_eigenvalue: f64,
}

impl DressedFrame {
    pub fn vector(&self, k: usize) -> &CVec {
        &self.vectors[k]
    }

    /// Projector onto the degenerate triple, in the bare basis.
    pub fn triple_projector(&self) -> CMat {
        let mut p = CMat::zeros(4, 4);
        for v in &self.vectors[..3] {
            p += v * v.adjoint();
        }
        p
    }

    /// Matrix whose columns are the dressed vectors (bare → dressed change of
    /// basis).
    pub fn as_matrix(&self) -> CMat {
        let mut m = CMat::zeros(4, 4);
        for (k, v) in self.vectors.iter().enumerate() {
            m.set_column(k, v);
        }
        m
    }
}

/// The analytic dressed states
///
/// ```text
/// |λ₁⟩ = (|1⟩ − e^{-iφ}|2⟩)/√2
/// |λ₂⟩ = cosθ|b⟩ − sinθ|3⟩
/// |λ₃⟩ = cosα|c⟩ − e^{-iφ} sinα|4⟩
/// |λ₄⟩ = sinα|c⟩ + e^{-iφ} cosα|4⟩
/// ```
///
/// with |b⟩ = (|1⟩ + e^{-iφ}|2⟩)/√2 and |c⟩ = sinθ|b⟩ + cosθ|3⟩. These form a
/// smooth gauge over the parameter domain; gauge quantities are always
/// evaluated on this frame, never on raw eigensolver output, because
/// degenerate clusters make numerical eigenvectors gauge-discontinuous.
pub fn dressed_frame(p: &ControlParams) -> Result<DressedFrame, ModelError> {
    let r = rabi_from_controls(p)?;
    let ep = C64::from_polar(1.0, -p.phi);
    let inv_sqrt2 = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let (s_th, c_th) = (p.theta.sin(), p.theta.cos());
    let (s_al, c_al) = (p.alpha.sin(), p.alpha.cos());

    let lam1 = CVec::from_vec(vec![inv_sqrt2, -inv_sqrt2 * ep, ZERO, ZERO]);
    let b = CVec::from_vec(vec![inv_sqrt2, inv_sqrt2 * ep, ZERO, ZERO]);
    let mut c = b.scale(s_th);
    c[2] += C64::new(c_th, 0.0);
    let mut lam2 = b.scale(c_th);
    lam2[2] -= C64::new(s_th, 0.0);
    let mut lam3 = c.scale(c_al);
    lam3[3] -= ep * s_al;
    let mut lam4 = c.scale(s_al);
    lam4[3] += ep * c_al;

    let h = build_h4(&r, p.phi);
    let expect = |v: &CVec| (v.adjoint() * &h * v)[(0, 0)].re;
    let lowest = expect(&lam1);
    let upper = expect(&lam4);
    Ok(DressedFrame {
        vectors: [lam1, lam2, lam3, lam4],
        lowest_eigenvalue: lowest,
        upper_eigenvalue: upper,
    })
}

/// Which control parameter a derivative acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ParamLabel {
    Theta,
    Alpha,
    Phi,
}

fn shifted(p: &ControlParams, mu: ParamLabel, delta: f64) -> Result<ControlParams, ModelError> {
    let mut q = *p;
    match mu {
        ParamLabel::Theta => q.theta += delta,
        ParamLabel::Alpha => q.alpha += delta,
        ParamLabel::Phi => q.phi += delta,
    }
    ControlParams::new(q.theta, q.alpha, q.phi, q.omega0).map_err(|_| ModelError::StepTooLarge {
        step: delta.abs() * 2.0,
        param: format!("{mu:?}"),
    })
}

/// Default central-difference step, in radians.
pub const FD_STEP: f64 = 1e-5;

/// Gauge connection component A_μ = i⟨λ_j|∂_μ|λ_k⟩ over a dressed-state pair,
/// evaluated by central finite differences on the analytic frame.
///
/// `pair` is 1-based into the dressed triple, e.g. (1, 2).
pub fn gauge_connection(
    p: &ControlParams,
    mu: ParamLabel,
    pair: (usize, usize),
    step: f64,
) -> Result<CMat, ModelError> {
    let plus = dressed_frame(&shifted(p, mu, step / 2.0)?)?;
    let minus = dressed_frame(&shifted(p, mu, -step / 2.0)?)?;
    let here = dressed_frame(p)?;
    let idx = [pair.0 - 1, pair.1 - 1];
    let mut a = CMat::zeros(2, 2);
    for (r, &j) in idx.iter().enumerate() {
        for (c, &k) in idx.iter().enumerate() {
            let dk = (plus.vector(k) - minus.vector(k)).scale(1.0 / step);
            a[(r, c)] = numerics::I * (here.vector(j).adjoint() * dk)[(0, 0)];
        }
    }
    Ok(a)
}

/// Result of a gauge-field evaluation over one dressed-state pair.
#[derive(Debug, Clone)]
pub struct GaugeResult {
    pub a_theta: CMat,
    pub a_alpha: CMat,
    pub f_matrix: CMat,
}

/// Gauge field F_{lm,θα} = ∂_θ A_α − ∂_α A_θ − i[A_θ, A_α] over the pair `lm`
/// (1-based), by nested central differences of the connection.
pub fn gauge_field(
    p: &ControlParams,
    lm: (usize, usize),
    step: f64,
) -> Result<GaugeResult, ModelError> {
    let a_theta = gauge_connection(p, ParamLabel::Theta, lm, step)?;
    let a_alpha = gauge_connection(p, ParamLabel::Alpha, lm, step)?;

    let a_alpha_tp = gauge_connection(&shifted(p, ParamLabel::Theta, step / 2.0)?, ParamLabel::Alpha, lm, step)?;
    let a_alpha_tm = gauge_connection(&shifted(p, ParamLabel::Theta, -step / 2.0)?, ParamLabel::Alpha, lm, step)?;
    let a_theta_ap = gauge_connection(&shifted(p, ParamLabel::Alpha, step / 2.0)?, ParamLabel::Theta, lm, step)?;
    let a_theta_am = gauge_connection(&shifted(p, ParamLabel::Alpha, -step / 2.0)?, ParamLabel::Theta, lm, step)?;

    let d_theta_a_alpha = (a_alpha_tp - a_alpha_tm).scale(1.0 / step);
    let d_alpha_a_theta = (a_theta_ap - a_theta_am).scale(1.0 / step);
    let comm = &a_theta * &a_alpha - &a_alpha * &a_theta;
    let f = d_theta_a_alpha - d_alpha_a_theta - comm.map(|z| numerics::I * z);
    Ok(GaugeResult {
        a_theta,
        a_alpha,
        f_matrix: f,
    })
}

/// The five-pod system: five levels, each of the first four coupled only to
/// the common fifth with detuning Δ₅.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FivePodSpec {
    pub omegap1: f64,
    pub omegap2: f64,
    pub omegap3: f64,
    pub omegap4: f64,
    pub delta5: f64,
    pub phi: f64,
}

impl FivePodSpec {
    pub fn new(
        omegap1: f64,
        omegap2: f64,
        omegap3: f64,
        omegap4: f64,
        delta5: f64,
        phi: f64,
    ) -> Result<Self, ModelError> {
        if omegap1 != omegap2 {
            return Err(ModelError::InvalidFivePod(format!(
                "Ω′₁ = {omegap1} must equal Ω′₂ = {omegap2}"
            )));
        }
        let spec = Self {
            omegap1,
            omegap2,
            omegap3,
            omegap4,
            delta5,
            phi,
        };
        let limit = 10.0 * spec.max_rabi();
        if delta5 <= limit {
            return Err(ModelError::DetuningTooSmall { delta5, limit });
        }
        Ok(spec)
    }

    pub fn max_rabi(&self) -> f64 {
        self.omegap1
            .abs()
            .max(self.omegap2.abs())
            .max(self.omegap3.abs())
            .max(self.omegap4.abs())
    }
}

/// The five-pod interaction Hamiltonian (½ prefactor, natural units):
/// the fifth column holds the only couplings and the (5,5) entry is −Δ₅.
pub fn build_five_pod(s: &FivePodSpec) -> CMat {
    let e = C64::from_polar(1.0, s.phi);
    let mut h = CMat::zeros(5, 5);
    let coup = [
        C64::new(s.omegap1, 0.0),
        C64::new(s.omegap2, 0.0) * e.conj(),
        C64::new(s.omegap3, 0.0),
        C64::new(s.omegap4, 0.0) * e.conj(),
    ];
    for (i, &c) in coup.iter().enumerate() {
        h[(i, 4)] = c * 0.5;
        h[(4, i)] = c.conj() * 0.5;
    }
    h[(4, 4)] = C64::new(-s.delta5, 0.0);
    h
}

/// Adiabatic elimination of the common level: effective couplings
/// Ω₁₁ = Ω′₁²/2Δ₅, Ω₁₃ = Ω′₁Ω′₃/2Δ₅, Ω₁₄ = Ω′₁Ω′₄/2Δ₅, Ω₃₄ = Ω′₃Ω′₄/2Δ₅ and
/// detunings Δ₃₁ = (Ω′₃²−Ω′₁²)/2Δ₅, Δ₄₁ = (Ω′₄²−Ω′₁²)/2Δ₅, repackaged as a
/// `RabiSet` (Ω₁←Ω₁₁, Ω₂←Ω₃₄, Ω₃←Ω₁₃, Ω₄←Ω₁₄).
pub fn reduce_five_pod(s: &FivePodSpec) -> Result<(RabiSet, f64), ModelError> {
    let limit = 10.0 * s.max_rabi();
    if s.delta5 <= limit {
        return Err(ModelError::DetuningTooSmall {
            delta5: s.delta5,
            limit,
        });
    }
    let d = 2.0 * s.delta5;
    let r = RabiSet {
        omega1: s.omegap1 * s.omegap1 / d,
        omega2: s.omegap3 * s.omegap4 / d,
        omega3: s.omegap1 * s.omegap3 / d,
        omega4: s.omegap1 * s.omegap4 / d,
        delta3: (s.omegap3 * s.omegap3 - s.omegap1 * s.omegap1) / d,
        delta4: (s.omegap4 * s.omegap4 - s.omegap1 * s.omegap1) / d,
    };
    Ok((r, s.phi))
}

/// Lowest-cluster eigenprojector of a Hermitian matrix: the span of all
/// eigenvectors within `gap_tol` of the smallest eigenvalue.
pub fn lowest_cluster_projector(h: &CMat, gap_tol: f64) -> Result<CMat, ModelError> {
    let spec = numerics::hermitian_eig(h)?;
    let lo = spec.eigenvalues[0];
    let cols: Vec<usize> = spec
        .eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, &lam)| lam - lo <= gap_tol)
        .map(|(k, _)| k)
        .collect();
    Ok(spec.projector(&cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{frobenius_distance, hermitian_eig, ONE};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI};

    #[test]
    fn rabi_base_point() {
        let p = ControlParams::base_point(1.0);
        let r = rabi_from_controls(&p).unwrap();
        assert_abs_diff_eq!(r.omega1, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.omega2, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.omega3, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.omega4, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.delta3, -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.delta4, -1.0, epsilon = 1e-12);
    }

    #[test]
    fn rabi_product_identity_point() {
        let p = ControlParams::new(FRAC_PI_3, FRAC_PI_4, 0.0, 1.0).unwrap();
        let r = rabi_from_controls(&p).unwrap();
        assert_abs_diff_eq!(r.omega1, 0.612372, epsilon = 1e-6);
        assert_abs_diff_eq!(r.omega2, 0.816497, epsilon = 1e-6);
        assert_abs_diff_eq!(r.omega3, 0.5, epsilon = 1e-6);
        assert_abs_diff_eq!(r.omega4, 1.0, epsilon = 1e-6);
        assert_abs_diff_eq!(r.omega1 * r.omega2, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(r.omega1 * r.omega2, r.omega3 * r.omega4, epsilon = 1e-12);
    }

    #[test]
    fn rabi_product_identity_sweep() {
        for i in 1..8 {
            for j in 1..8 {
                let p =
                    ControlParams::new(PI * i as f64 / 8.0, PI * j as f64 / 8.0, 0.3, 1.7).unwrap();
                let r = rabi_from_controls(&p).unwrap();
                assert_abs_diff_eq!(r.omega1 * r.omega2, r.omega3 * r.omega4, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn rabi_degenerate_controls() {
        let p = ControlParams {
            theta: FRAC_PI_2,
            alpha: 0.0,
            phi: 0.0,
            omega0: 1.0,
        };
        assert_eq!(
            rabi_from_controls(&p),
            Err(ModelError::DegenerateControls)
        );
    }

    #[test]
    fn h4_base_point_entries() {
        let p = ControlParams::base_point(1.0);
        let h = build_h4(&rabi_from_controls(&p).unwrap(), p.phi);
        assert_abs_diff_eq!(h[(0, 1)].re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(h[(2, 2)].re, -0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(h[(3, 3)].re, -0.5, epsilon = 1e-12);
        for (i, j) in [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
            assert!(h[(i, j)].norm() <= 1e-15);
        }
    }

    #[test]
    fn h4_threefold_degeneracy() {
        for i in 1..6 {
            for j in 1..6 {
                let p = ControlParams::new(
                    PI / 6.0 + (i as f64) * 0.1 * PI,
                    PI / 6.0 + (j as f64) * 0.1 * PI,
                    0.4,
                    1.0,
                )
                .unwrap();
                let h = build_h4(&rabi_from_controls(&p).unwrap(), p.phi);
                let s = hermitian_eig(&h).unwrap();
                assert!(s.eigenvalues[1] - s.eigenvalues[0] <= 1e-10);
                assert!(s.eigenvalues[2] - s.eigenvalues[1] <= 1e-10);
                assert!(s.eigenvalues[3] - s.eigenvalues[2] > 1e-3);
            }
        }
    }

    #[test]
    fn h4_phase_is_diagonal_conjugation() {
        let p = ControlParams::new(1.1, 0.9, 0.0, 1.0).unwrap();
        let r = rabi_from_controls(&p).unwrap();
        let phi = 0.7;
        let h0 = build_h4(&r, 0.0);
        let hphi = build_h4(&r, phi);
        let d = CMat::from_diagonal(&CVec::from_vec(vec![
            ONE,
            C64::from_polar(1.0, -phi),
            ONE,
            C64::from_polar(1.0, -phi),
        ]));
        let conj = &d * h0 * d.adjoint();
        assert!(frobenius_distance(&hphi, &conj).unwrap() <= 1e-14);
    }

    #[test]
    fn dressed_frame_base_point() {
        let p = ControlParams::base_point(1.0);
        let f = dressed_frame(&p).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let want = [
            vec![s, -s, 0.0, 0.0],
            vec![0.0, 0.0, -1.0, 0.0],
            vec![0.0, 0.0, 0.0, -1.0],
            vec![s, s, 0.0, 0.0],
        ];
        for (k, w) in want.iter().enumerate() {
            for (i, &wi) in w.iter().enumerate() {
                assert_abs_diff_eq!(f.vector(k)[i].re, wi, epsilon = 1e-12);
                assert_abs_diff_eq!(f.vector(k)[i].im, 0.0, epsilon = 1e-12);
            }
        }
        assert_abs_diff_eq!(f.lowest_eigenvalue, -0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(f.upper_eigenvalue, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn dressed_frame_orthonormal_and_diagonalizing() {
        for (theta, alpha, phi) in [
            (1.0, 0.8, 0.3),
            (FRAC_PI_3, FRAC_PI_4, 1.9),
            (2.2, 2.4, 5.0),
        ] {
            let p = ControlParams::new(theta, alpha, phi, 1.3).unwrap();
            let f = dressed_frame(&p).unwrap();
            let v = f.as_matrix();
            let gram = v.adjoint() * &v;
            assert!(frobenius_distance(&gram, &CMat::identity(4, 4)).unwrap() <= 1e-12);
            let h = build_h4(&rabi_from_controls(&p).unwrap(), p.phi);
            let hd = v.adjoint() * &h * &v;
            for i in 0..4 {
                for j in 0..4 {
                    if i != j {
                        assert!(hd[(i, j)].norm() <= 1e-10 * p.omega0);
                    }
                }
            }
        }
    }

    #[test]
    fn dressed_projector_matches_eigensolver() {
        for (theta, alpha) in [(0.9, 1.1), (FRAC_PI_3, 2.0), (2.5, 0.7)] {
            let p = ControlParams::new(theta, alpha, 0.6, 1.0).unwrap();
            let f = dressed_frame(&p).unwrap();
            let h = build_h4(&rabi_from_controls(&p).unwrap(), p.phi);
            let pn = lowest_cluster_projector(&h, 1e-8).unwrap();
            assert!(frobenius_distance(&f.triple_projector(), &pn).unwrap() <= 1e-10);
        }
    }

    #[test]
    fn gauge_connection_hermitian() {
        for (theta, alpha) in [(1.0, 0.9), (1.4, 2.0), (2.1, 1.2)] {
            let p = ControlParams::new(theta, alpha, 0.2, 1.0).unwrap();
            for mu in [ParamLabel::Theta, ParamLabel::Alpha] {
                for pair in [(1, 2), (2, 3), (1, 3)] {
                    let a = gauge_connection(&p, mu, pair, FD_STEP).unwrap();
                    assert!(frobenius_distance(&a, &a.adjoint()).unwrap() <= 1e-8);
                }
            }
        }
    }

    #[test]
    fn gauge_connection_lam1_theta_independent() {
        let p = ControlParams::new(FRAC_PI_2, FRAC_PI_2, 0.0, 1.0).unwrap();
        let a = gauge_connection(&p, ParamLabel::Theta, (1, 2), FD_STEP).unwrap();
        // |λ₁⟩ has no θ dependence, so the (1,1) element vanishes.
        assert!(a[(0, 0)].norm() <= 1e-8);
        assert!(a.iter().all(|z| z.norm() <= 1.0 + 1e-8));
    }

    #[test]
    fn gauge_connection_step_too_large() {
        let p = ControlParams::new(1e-6, 1.0, 0.0, 1.0).unwrap();
        assert!(matches!(
            gauge_connection(&p, ParamLabel::Theta, (1, 2), 1e-5),
            Err(ModelError::StepTooLarge { .. })
        ));
    }

    #[test]
    fn gauge_field_pairs_12_13_vanish() {
        let p = ControlParams::new(1.2, 1.0, 0.0, 1.0).unwrap();
        for lm in [(1, 2), (1, 3)] {
            let g = gauge_field(&p, lm, FD_STEP).unwrap();
            assert!(g.f_matrix.norm() <= 1e-6, "F{lm:?} = {}", g.f_matrix.norm());
        }
    }

    #[test]
    fn gauge_field_23_structure() {
        let p = ControlParams::new(1.2, 1.0, 0.0, 1.0).unwrap();
        let g = gauge_field(&p, (2, 3), FD_STEP).unwrap();
        assert!(g.f_matrix[(0, 0)].norm() <= 1e-6);
        assert!(g.f_matrix[(1, 1)].norm() <= 1e-6);
        let off = g.f_matrix[(0, 1)];
        assert!(off.re.abs() <= 1e-6);
        assert!((g.f_matrix[(1, 0)] + off).norm() <= 1e-6);
    }

    #[test]
    fn five_pod_structure() {
        let s = FivePodSpec::new(0.0, 0.0, 0.0, 0.0, 1.0, 0.0);
        // zero Rabi passes the detuning policy trivially
        let s = s.unwrap();
        let h = build_five_pod(&s);
        for i in 0..4 {
            assert_eq!(h[(i, i)], ZERO);
        }
        assert_abs_diff_eq!(h[(4, 4)].re, -1.0, epsilon = 1e-15);
    }

    #[test]
    fn five_pod_hermitian_and_pod_pattern() {
        let s = FivePodSpec::new(1.0, 1.0, 0.7, 0.3, 100.0, 0.4).unwrap();
        let h = build_five_pod(&s);
        assert!(frobenius_distance(&h, &h.adjoint()).unwrap() <= 1e-15);
        // couplings live only in row/column 5
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    assert_eq!(h[(i, j)], ZERO);
                }
            }
        }
    }

    #[test]
    fn reduce_five_pod_uniform() {
        let s = FivePodSpec::new(1.0, 1.0, 1.0, 1.0, 100.0, 0.0).unwrap();
        let (r, _) = reduce_five_pod(&s).unwrap();
        for w in [r.omega1, r.omega2, r.omega3, r.omega4] {
            assert_abs_diff_eq!(w, 0.005, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(r.delta3, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.delta4, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn reduce_five_pod_product_identity() {
        let s = FivePodSpec::new(0.9, 0.9, 0.5, 1.2, 200.0, 0.1).unwrap();
        let (r, _) = reduce_five_pod(&s).unwrap();
        assert_abs_diff_eq!(r.omega1 * r.omega2, r.omega3 * r.omega4, epsilon = 1e-15);
        // RabiSet detuning invariants hold for the reduced couplings
        assert_abs_diff_eq!(
            r.delta3,
            r.omega3 * r.omega3 / r.omega1 - r.omega1,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            r.delta4,
            r.omega4 * r.omega4 / r.omega1 - r.omega1,
            epsilon = 1e-12
        );
    }

    #[test]
    fn reduce_five_pod_detuning_policy() {
        assert!(matches!(
            FivePodSpec::new(1.0, 1.0, 1.0, 1.0, 5.0, 0.0),
            Err(ModelError::DetuningTooSmall { .. })
        ));
    }
}
