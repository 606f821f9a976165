//! Braid letters, timed pulse schedules, and propagation of pure and mixed
//! states through them.
//!
//! A schedule is piecewise constant: rectangular pulses over a background
//! Hamiltonian window. Propagation multiplies exact segment propagators over
//! every breakpoint, so there is no ODE stepping error anywhere.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{build_h4, rabi_from_controls, ControlParams, DressedFrame, ModelError};
use crate::numerics::{self, expm_ih, CMat, CVec, NumericsError};

#[derive(Debug, Error, PartialEq)]
pub enum BraidingError {
    #[error("time {t} outside schedule range [0, {total}]")]
    OutOfRange { t: f64, total: f64 },
    #[error("eta = {0} outside [0, 1]")]
    EtaOutOfRange(f64),
    #[error("amplitudes not normalized: Σ|cᵢ|² = {0}")]
    NotNormalized(f64),
    #[error("invalid pulse: {0}")]
    InvalidPulse(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Dressed-state pair a braid letter acts on (1-based labels of the triple).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Pair {
    P12,
    P23,
    P13,
}

impl Pair {
    /// Zero-based indices into the dressed frame.
    pub fn indices(self) -> (usize, usize) {
        match self {
            Pair::P12 => (0, 1),
            Pair::P23 => (1, 2),
            Pair::P13 => (0, 2),
        }
    }

    /// The triple member left untouched by the letter.
    pub fn spectator(self) -> usize {
        match self {
            Pair::P12 => 2,
            Pair::P23 => 0,
            Pair::P13 => 1,
        }
    }
}

impl std::fmt::Display for Pair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Pair::P12 => write!(f, "12"),
            Pair::P23 => write!(f, "23"),
            Pair::P13 => write!(f, "13"),
        }
    }
}

/// Crossing orientation: over-crossings rotate with −i, under-crossings
/// with +i (realized by the opposite-sign generator).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    Over,
    Under,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Over => 1.0,
            Orientation::Under => -1.0,
        }
    }
}

/// A single braid crossing: which pair, which orientation, which pulse phase.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BraidLetter {
    pub pair: Pair,
    pub orientation: Orientation,
    pub phase: f64,
}

impl BraidLetter {
    pub fn new(pair: Pair, orientation: Orientation, phase: f64) -> Self {
        Self {
            pair,
            orientation,
            phase,
        }
    }

    pub fn over(pair: Pair, phase: f64) -> Self {
        Self::new(pair, Orientation::Over, phase)
    }

    pub fn under(pair: Pair, phase: f64) -> Self {
        Self::new(pair, Orientation::Under, phase)
    }
}

/// A timed rectangular pulse realizing one braid letter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PulseEvent {
    pub letter: BraidLetter,
    pub start: f64,
    pub duration: f64,
    pub rabi: f64,
}

impl PulseEvent {
    pub fn new(letter: BraidLetter, start: f64, duration: f64, rabi: f64) -> Result<Self, BraidingError> {
        if start < 0.0 || !start.is_finite() {
            return Err(BraidingError::InvalidPulse(format!(
                "start = {start} must be nonnegative"
            )));
        }
        if duration <= 0.0 || rabi <= 0.0 {
            return Err(BraidingError::InvalidPulse(format!(
                "duration = {duration} and rabi = {rabi} must be positive"
            )));
        }
        Ok(Self {
            letter,
            start,
            duration,
            rabi,
        })
    }

    /// An exact-π pulse (area Ω·T = π).
    pub fn ideal_pi_event(letter: BraidLetter, start: f64, rabi: f64) -> Result<Self, BraidingError> {
        Self::new(letter, start, std::f64::consts::PI / rabi, rabi)
    }

    pub fn area(&self) -> f64 {
        self.rabi * self.duration
    }

    pub fn end(&self) -> f64 {
        self.start + self.duration
    }

    fn active_at(&self, t: f64) -> bool {
        t >= self.start && t < self.end()
    }
}

/// Timed pulses over a background Hamiltonian window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    pub pulses: Vec<PulseEvent>,
    pub background: ControlParams,
    pub total_time: f64,
}

impl Schedule {
    pub fn new(
        pulses: Vec<PulseEvent>,
        background: ControlParams,
        total_time: f64,
    ) -> Result<Self, BraidingError> {
        let max_end = pulses.iter().map(|p| p.end()).fold(0.0, f64::max);
        if total_time < max_end {
            return Err(BraidingError::InvalidPulse(format!(
                "total_time = {total_time} shorter than last pulse end {max_end}"
            )));
        }
        Ok(Self {
            pulses,
            background,
            total_time,
        })
    }

    /// Total time during which the background Hamiltonian is active, i.e.
    /// total_time minus the measure of the union of the pulse intervals.
    pub fn background_time(&self) -> f64 {
        let mut intervals: Vec<(f64, f64)> = self
            .pulses
            .iter()
            .map(|p| (p.start.max(0.0), p.end().min(self.total_time)))
            .filter(|(a, b)| b > a)
            .collect();
        intervals.sort_by(|a, b| f64::total_cmp(&a.0, &b.0));
        let mut active = 0.0;
        let mut cursor = 0.0f64;
        for (a, b) in intervals {
            let a = a.max(cursor);
            if b > a {
                active += b - a;
                cursor = b;
            }
        }
        self.total_time - active
    }

    /// Segment breakpoints: 0, every pulse start and end, total_time.
    fn breakpoints(&self) -> Vec<f64> {
        let mut ts = vec![0.0, self.total_time];
        for p in &self.pulses {
            ts.push(p.start);
            ts.push(p.end().min(self.total_time));
        }
        ts.sort_by(f64::total_cmp);
        ts.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
        ts
    }
}

/// Ideal π operator of a braid letter in the bare basis:
/// ∓i(|λ_k⟩⟨λ_j|e^{iφ} + |λ_j⟩⟨λ_k|e^{−iφ}) + |λ_l⟩⟨λ_l| + |λ₄⟩⟨λ₄|
/// (− for over, + for under).
pub fn ideal_pi(letter: &BraidLetter, frame: &DressedFrame) -> CMat {
    let (k, j) = letter.pair.indices();
    let l = letter.pair.spectator();
    let e = C64::from_polar(1.0, letter.phase);
    let pre = -numerics::I * letter.orientation.sign();
    let vk = frame.vector(k);
    let vj = frame.vector(j);
    let mut u = (vk * vj.adjoint() * e + vj * vk.adjoint() * e.conj()) * pre;
    u += frame.vector(l) * frame.vector(l).adjoint();
    u += frame.vector(3) * frame.vector(3).adjoint();
    u
}

/// Pulse generator H_kj = (Ω/2)(|λ_k⟩⟨λ_j|e^{iφ} + h.c.) in the bare basis.
///
/// At the base-point frame this reproduces the literal three-level and
/// two-level coupling matrices for pairs (1,2) and (2,3).
pub fn pulse_hamiltonian(letter: &BraidLetter, rabi: f64, frame: &DressedFrame) -> CMat {
    let (k, j) = letter.pair.indices();
    let e = C64::from_polar(1.0, letter.phase);
    let half = C64::new(rabi / 2.0, 0.0);
    let vk = frame.vector(k);
    let vj = frame.vector(j);
    (vk * vj.adjoint() * e + vj * vk.adjoint() * e.conj()) * half
}

/// Instantaneous generator of a schedule.
///
/// When at least one pulse is active, the active pulse generators add
/// (under-orientation pulses contribute with negated sign so `e^{+iH T}`
/// results) and the background is suppressed. In a gap the background
/// Hamiltonian applies.
pub fn assemble_generator(s: &Schedule, t: f64) -> Result<CMat, BraidingError> {
    if t < 0.0 || t > s.total_time {
        return Err(BraidingError::OutOfRange {
            t,
            total: s.total_time,
        });
    }
    let frame = crate::model::dressed_frame(&s.background)?;
    let active: Vec<&PulseEvent> = s.pulses.iter().filter(|p| p.active_at(t)).collect();
    if active.is_empty() {
        let r = rabi_from_controls(&s.background)?;
        return Ok(build_h4(&r, s.background.phi));
    }
    let mut h = CMat::zeros(4, 4);
    for p in active {
        let hp = pulse_hamiltonian(&p.letter, p.rabi, &frame);
        h += hp.scale(p.letter.orientation.sign());
    }
    Ok(h)
}

/// Pure 4-level state in the bare basis.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    pub amplitudes: CVec,
}

impl PureState {
    pub fn new(amplitudes: CVec) -> Result<Self, BraidingError> {
        let norm2: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm2 - 1.0).abs() > 1e-12 {
            return Err(BraidingError::NotNormalized(norm2));
        }
        Ok(Self { amplitudes })
    }

    /// State with the given dressed-basis amplitudes, expressed in the bare
    /// basis.
    pub fn from_dressed(amplitudes: &[C64; 4], frame: &DressedFrame) -> Result<Self, BraidingError> {
        let mut v = CVec::zeros(4);
        for (k, a) in amplitudes.iter().enumerate() {
            v += frame.vector(k).scale_c(*a);
        }
        Self::new(v)
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }
}

trait ScaleC {
    fn scale_c(&self, a: C64) -> CVec;
}

impl ScaleC for CVec {
    fn scale_c(&self, a: C64) -> CVec {
        self.map(|z| z * a)
    }
}

/// 4x4 density operator in the bare basis.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    pub rho: CMat,
}

impl DensityMatrix {
    pub fn new(rho: CMat) -> Result<Self, BraidingError> {
        let tr: C64 = (0..4).map(|i| rho[(i, i)]).sum();
        if (tr.re - 1.0).abs() > 1e-12 || tr.im.abs() > 1e-12 {
            return Err(BraidingError::NotNormalized(tr.re));
        }
        let spec = numerics::hermitian_eig(&rho)?;
        if spec.eigenvalues.iter().any(|&lam| lam < -1e-12) {
            return Err(BraidingError::InvalidPulse(format!(
                "density matrix not positive semidefinite: min eigenvalue {}",
                spec.eigenvalues[0]
            )));
        }
        Ok(Self { rho })
    }

    pub fn purity(&self) -> f64 {
        (&self.rho * &self.rho).trace().re
    }
}

/// Input density operator with tunable coherence: diagonal |cᵢ|² and
/// off-diagonal η cᵢ cⱼ*. Pure at η = 1, classical mixture at η = 0.
pub fn mixed_input(c: &[C64; 4], eta: f64) -> Result<DensityMatrix, BraidingError> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(BraidingError::EtaOutOfRange(eta));
    }
    let norm2: f64 = c.iter().map(|a| a.norm_sqr()).sum();
    if (norm2 - 1.0).abs() > 1e-12 {
        return Err(BraidingError::NotNormalized(norm2));
    }
    let rho = CMat::from_fn(4, 4, |i, j| {
        if i == j {
            C64::new(c[i].norm_sqr(), 0.0)
        } else {
            C64::new(eta, 0.0) * c[i] * c[j].conj()
        }
    });
    DensityMatrix::new(rho)
}

/// Time-ordered list of exact segment propagators for a schedule, one per
/// breakpoint interval.
fn segment_propagators(s: &Schedule) -> Result<Vec<(f64, f64, CMat)>, BraidingError> {
    let ts = s.breakpoints();
    let mut segs = Vec::with_capacity(ts.len().saturating_sub(1));
    for w in ts.windows(2) {
        let (t0, t1) = (w[0], w[1]);
        if t1 - t0 <= 0.0 {
            continue;
        }
        let h = assemble_generator(s, 0.5 * (t0 + t1))?;
        let u = expm_ih(&h, t1 - t0)?;
        segs.push((t0, t1, u));
    }
    Ok(segs)
}

/// Total propagator of the schedule: the ordered product of all segment
/// propagators.
pub fn total_propagator(s: &Schedule) -> Result<CMat, BraidingError> {
    let mut u = CMat::identity(4, 4);
    for (_, _, useg) in segment_propagators(s)? {
        u = useg * u;
    }
    Ok(u)
}

/// Trajectory of states at uniformly spaced sample times, plus the exact
/// final state.
#[derive(Debug, Clone)]
pub struct Trajectory<S> {
    pub times: Vec<f64>,
    pub states: Vec<S>,
}

fn sample_times(total: f64, samples: usize) -> Vec<f64> {
    (0..samples)
        .map(|k| total * k as f64 / (samples - 1) as f64)
        .collect()
}

/// Piecewise-constant exact propagation of a pure state with uniform output
/// sampling. The last sample is the exact final state.
pub fn propagate(
    s: &Schedule,
    psi0: &PureState,
    samples: usize,
) -> Result<Trajectory<PureState>, BraidingError> {
    assert!(samples >= 2, "need at least 2 samples");
    let segs = segment_propagators(s)?;
    let times = sample_times(s.total_time, samples);
    let mut states = Vec::with_capacity(samples);
    for &t in &times {
        let mut psi = psi0.amplitudes.clone();
        for (t0, t1, u) in &segs {
            if t <= *t0 {
                break;
            }
            if t >= *t1 {
                psi = u * psi;
            } else {
                // partial segment: re-exponentiate over the clipped duration
                let h = assemble_generator(s, 0.5 * (t0 + t1))?;
                psi = expm_ih(&h, t - t0)? * psi;
                break;
            }
        }
        states.push(PureState { amplitudes: psi });
    }
    Ok(Trajectory { times, states })
}

/// Density-matrix counterpart of [`propagate`]: ρ → UρU† per segment.
pub fn propagate_density(
    s: &Schedule,
    rho0: &DensityMatrix,
    samples: usize,
) -> Result<Trajectory<DensityMatrix>, BraidingError> {
    assert!(samples >= 2, "need at least 2 samples");
    let segs = segment_propagators(s)?;
    let times = sample_times(s.total_time, samples);
    let mut states = Vec::with_capacity(samples);
    for &t in &times {
        let mut u = CMat::identity(4, 4);
        for (t0, t1, useg) in &segs {
            if t <= *t0 {
                break;
            }
            if t >= *t1 {
                u = useg * u;
            } else {
                let h = assemble_generator(s, 0.5 * (t0 + t1))?;
                u = expm_ih(&h, t - t0)? * u;
                break;
            }
        }
        let rho = &u * &rho0.rho * u.adjoint();
        states.push(DensityMatrix { rho });
    }
    Ok(Trajectory { times, states })
}

/// Populations of the four dressed states: |⟨λᵢ|ψ⟩|² or ⟨λᵢ|ρ|λᵢ⟩.
pub fn dressed_populations_pure(state: &PureState, frame: &DressedFrame) -> [f64; 4] {
    let mut p = [0.0; 4];
    for (k, slot) in p.iter_mut().enumerate() {
        *slot = (frame.vector(k).adjoint() * &state.amplitudes)[(0, 0)].norm_sqr();
    }
    p
}

/// Dressed populations of a density matrix.
pub fn dressed_populations_density(rho: &DensityMatrix, frame: &DressedFrame) -> [f64; 4] {
    let mut p = [0.0; 4];
    for (k, slot) in p.iter_mut().enumerate() {
        let v = frame.vector(k);
        *slot = (v.adjoint() * &rho.rho * v)[(0, 0)].re;
    }
    p
}

/// Sequential schedule builder used by the scans and the figure presets:
/// letters are placed in word order, each preceded by a background window.
///
/// Layout: background for `lead`, then pulses separated by background `gap`s,
/// then background for `tail`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchedulePolicy {
    pub rabi: f64,
    pub lead: f64,
    pub gap: f64,
    pub tail: f64,
}

impl Default for SchedulePolicy {
    /// The standard scenario: Ω = 1, T = π, background windows of length T
    /// before, between, and after the pulses.
    fn default() -> Self {
        Self {
            rabi: 1.0,
            lead: std::f64::consts::PI,
            gap: std::f64::consts::PI,
            tail: std::f64::consts::PI,
        }
    }
}

impl SchedulePolicy {
    pub fn pulse_duration(&self) -> f64 {
        std::f64::consts::PI / self.rabi
    }

    /// Build a sequential schedule from the given letters over the default
    /// base-point background.
    pub fn schedule(
        &self,
        letters: &[BraidLetter],
        background: ControlParams,
    ) -> Result<Schedule, BraidingError> {
        let dur = self.pulse_duration();
        let mut pulses = Vec::with_capacity(letters.len());
        let mut t = self.lead;
        for (i, letter) in letters.iter().enumerate() {
            if i > 0 {
                t += self.gap;
            }
            pulses.push(PulseEvent::new(*letter, t, dur, self.rabi)?);
            t += dur;
        }
        Schedule::new(pulses, background, t + self.tail)
    }
}
