//! Topological diagnostics of braid words: rank relabeling, the K function
//! (discrete and continuously extended), writhe, phase-scan response curves,
//! coherence scans over mixed inputs, and the breaking-dynamics probe.

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::braiding::{
    dressed_populations_density, dressed_populations_pure, mixed_input, propagate,
    propagate_density, BraidLetter, BraidingError, Orientation, Pair, PulseEvent, PureState,
    Schedule, SchedulePolicy,
};
use crate::model::{build_h4, dressed_frame, rabi_from_controls, ControlParams, ModelError};
use crate::numerics::{expm_ih, CMat, NumericsError};

#[derive(Debug, Error, PartialEq)]
pub enum AnalysisError {
    #[error("tied populations: |{a} − {b}| within tolerance {eps}")]
    TiedPopulations { a: f64, b: f64, eps: f64 },
    #[error("output populations are not a permutation of the input within tolerance {eps}")]
    NotAPermutation { eps: f64 },
    #[error("unsupported pair (1,3) in the breaking probe: no generator convention is defined")]
    UnsupportedPair,
    #[error(transparent)]
    Braiding(#[from] BraidingError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Default tie tolerance on populations: separates genuine permutation
/// plateaus from transition-region outputs at the scale of the scenarios here.
pub const TIE_EPS: f64 = 1e-6;

/// An ordered sequence of braid crossings. Words read left to right in time:
/// the first letter is applied first.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BraidWord {
    pub letters: Vec<BraidLetter>,
}

impl BraidWord {
    pub fn new(letters: Vec<BraidLetter>) -> Self {
        Self { letters }
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

/// How a K value was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KMode {
    Discrete,
    Continuous,
}

/// Value of the K classification function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KValue {
    pub value: f64,
    pub mode: KMode,
}

/// Rank scores: the largest population gets m, the smallest gets 1.
pub fn rank_relabel(populations: &[f64], eps: f64) -> Result<Vec<usize>, AnalysisError> {
    let m = populations.len();
    for i in 0..m {
        for j in i + 1..m {
            if (populations[i] - populations[j]).abs() <= eps {
                return Err(AnalysisError::TiedPopulations {
                    a: populations[i],
                    b: populations[j],
                    eps,
                });
            }
        }
    }
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| populations[a].total_cmp(&populations[b]));
    let mut scores = vec![0usize; m];
    for (rank, &idx) in order.iter().enumerate() {
        scores[idx] = rank + 1; // smallest value gets score 1
    }
    Ok(scores)
}

/// Discrete K function: match each output population to the input level it
/// came from (nearest value within `eps`, each input used once), take that
/// level's score Aᵢ, and form K = Π Aᵢ^i.
pub fn k_discrete(
    input_pops: &[f64],
    output_pops: &[f64],
    eps: f64,
) -> Result<KValue, AnalysisError> {
    let m = input_pops.len();
    assert_eq!(m, output_pops.len());
    let scores = rank_relabel(input_pops, eps)?;
    // greedy nearest-value assignment with a consistency check
    let mut used = vec![false; m];
    let mut k = 1.0f64;
    for (i, &out) in output_pops.iter().enumerate() {
        let mut best: Option<(usize, f64)> = None;
        for (j, &inp) in input_pops.iter().enumerate() {
            if used[j] {
                continue;
            }
            let d = (out - inp).abs();
            if best.is_none_or(|(_, bd)| d < bd) {
                best = Some((j, d));
            }
        }
        let (j, d) = best.ok_or(AnalysisError::NotAPermutation { eps })?;
        if d > eps {
            return Err(AnalysisError::NotAPermutation { eps });
        }
        used[j] = true;
        k *= (scores[j] as f64).powi(i as i32 + 1);
    }
    Ok(KValue {
        value: k,
        mode: KMode::Discrete,
    })
}

/// Continuous extension of the K function.
///
/// Each output population is mapped to a real score by the piecewise-linear
/// interpolant through the points (input value → input score), clamped to
/// [1, m]; K = Π scoreᵢ^i. Agrees with [`k_discrete`] whenever the output is
/// an exact permutation of the input.
pub fn k_continuous(input_pops: &[f64], output_pops: &[f64]) -> Result<KValue, AnalysisError> {
    let m = input_pops.len();
    assert_eq!(m, output_pops.len());
    let scores = rank_relabel(input_pops, TIE_EPS)?;
    // knots sorted by input value
    let mut knots: Vec<(f64, f64)> = input_pops
        .iter()
        .zip(&scores)
        .map(|(&v, &s)| (v, s as f64))
        .collect();
    knots.sort_by(|a, b| a.0.total_cmp(&b.0));

    let interp = |v: f64| -> f64 {
        if v <= knots[0].0 {
            return knots[0].1;
        }
        if v >= knots[m - 1].0 {
            return knots[m - 1].1;
        }
        for w in knots.windows(2) {
            let (x0, y0) = w[0];
            let (x1, y1) = w[1];
            if v <= x1 {
                return y0 + (y1 - y0) * (v - x0) / (x1 - x0);
            }
        }
        knots[m - 1].1
    };

    let mut k = 1.0f64;
    for (i, &out) in output_pops.iter().enumerate() {
        let s = interp(out).clamp(1.0, m as f64);
        k *= s.powi(i as i32 + 1);
    }
    Ok(KValue {
        value: k,
        mode: KMode::Continuous,
    })
}

/// Writhe: +1 per over-crossing, −1 per under-crossing.
pub fn writhe(word: &BraidWord) -> i64 {
    word.letters
        .iter()
        .map(|l| match l.orientation {
            Orientation::Over => 1,
            Orientation::Under => -1,
        })
        .sum()
}

/// Sampled diagnostic curve over a strictly increasing parameter grid.
#[derive(Debug, Clone)]
pub struct ScanCurve<V> {
    pub parameter: String,
    pub samples: Vec<f64>,
    pub values: Vec<V>,
}

/// Which letters' phases follow the scanned φ. `None` means all of them.
#[derive(Debug, Clone, Default)]
pub struct PhaseMask(pub Option<Vec<bool>>);

impl PhaseMask {
    fn tracks(&self, index: usize) -> bool {
        match &self.0 {
            None => true,
            Some(mask) => mask.get(index).copied().unwrap_or(false),
        }
    }
}

fn word_with_phase(word: &BraidWord, phi: f64, mask: &PhaseMask) -> Vec<BraidLetter> {
    word.letters
        .iter()
        .enumerate()
        .map(|(i, l)| {
            let mut l = *l;
            if mask.tracks(i) {
                l.phase = phi;
            }
            l
        })
        .collect()
}

/// Response curve F(φ) = ⟨ψ_f|ψ_i⟩ of a braid word against the pulse phase.
pub fn phase_scan(
    word: &BraidWord,
    phi_samples: &[f64],
    psi0: &PureState,
    policy: &SchedulePolicy,
    background: ControlParams,
    mask: &PhaseMask,
) -> Result<ScanCurve<C64>, AnalysisError> {
    let h0 = build_h4(&rabi_from_controls(&background)?, background.phi);
    let mut values = Vec::with_capacity(phi_samples.len());
    for &phi in phi_samples {
        let letters = word_with_phase(word, phi, mask);
        let s = policy.schedule(&letters, background)?;
        let traj = propagate(&s, psi0, 2)?;
        let psif = &traj.states.last().unwrap().amplitudes;
        // comoving dressed frame: strip the background dynamical phase so
        // that sequential exact-π schedules reduce to the bare π operators
        let comoving = expm_ih(&h0, -s.background_time())?;
        let f = ((comoving * psif).adjoint() * &psi0.amplitudes)[(0, 0)];
        values.push(f);
    }
    Ok(ScanCurve {
        parameter: "phi".into(),
        samples: phi_samples.to_vec(),
        values,
    })
}

/// Result of a coherence scan: dressed populations per φ plus the
/// peak-to-peak oscillation amplitude of each population.
#[derive(Debug, Clone)]
pub struct CoherenceScan {
    pub curve: ScanCurve<[f64; 4]>,
    pub peak_to_peak: [f64; 4],
}

/// Dressed-population response of a (possibly overlapping) schedule against φ
/// for a mixed input of coherence η.
///
/// `overlap` shifts every pulse after the first back in time by that amount,
/// so `overlap = 0` is the sequential layout and positive values overlap
/// consecutive pulses. Sequential exact-π schedules are provably φ-flat; the
/// φ-dependence reported in the overlap regime scales with η.
#[allow(clippy::too_many_arguments)]
pub fn coherence_scan(
    word: &BraidWord,
    eta: f64,
    phi_samples: &[f64],
    c: &[C64; 4],
    policy: &SchedulePolicy,
    background: ControlParams,
    mask: &PhaseMask,
    overlap: f64,
) -> Result<CoherenceScan, AnalysisError> {
    let frame = dressed_frame(&background)?;
    let rho0 = mixed_input(c, eta)?;
    let mut values = Vec::with_capacity(phi_samples.len());
    for &phi in phi_samples {
        let letters = word_with_phase(word, phi, mask);
        let mut s = policy.schedule(&letters, background)?;
        for (i, p) in s.pulses.iter_mut().enumerate() {
            if i > 0 {
                p.start = (p.start - overlap * i as f64).max(0.0);
            }
        }
        let s = Schedule::new(s.pulses, s.background, s.total_time)?;
        let traj = propagate_density(&s, &rho0, 2)?;
        values.push(dressed_populations_density(
            traj.states.last().unwrap(),
            &frame,
        ));
    }
    let mut ptp = [0.0; 4];
    for (i, slot) in ptp.iter_mut().enumerate() {
        let lo = values.iter().map(|v| v[i]).fold(f64::INFINITY, f64::min);
        let hi = values.iter().map(|v| v[i]).fold(f64::NEG_INFINITY, f64::max);
        *slot = hi - lo;
    }
    Ok(CoherenceScan {
        curve: ScanCurve {
            parameter: "phi".into(),
            samples: phi_samples.to_vec(),
            values,
        },
        peak_to_peak: ptp,
    })
}

/// The symmetry-breaking generator added to every pulse in the breaking
/// probe, scaled by `omega_g`:
///
/// ```text
///      ⎛  0 −1  0  0 ⎞
/// Hg = ⎜ −1  0  0  0 ⎟ · Ω_g
///      ⎜  0  0 −1  0 ⎟
///      ⎝  0  0  0 −1 ⎠
/// ```
///
/// Hg is diagonal in the base-point dressed basis, so it never mixes the
/// degenerate triple with λ₄.
pub fn breaking_hamiltonian(omega_g: f64) -> CMat {
    let mut h = CMat::zeros(4, 4);
    let w = C64::new(-omega_g, 0.0);
    h[(0, 1)] = w;
    h[(1, 0)] = w;
    h[(2, 2)] = w;
    h[(3, 3)] = w;
    h
}

/// Breaking-dynamics probe: replace each π pulse's generator by Hg ± H_kj
/// (sign by orientation) and return the final dressed populations.
///
/// Only pairs (1,2) and (2,3) are supported; there is no stated generator
/// convention for (1,3), so it is rejected rather than guessed.
pub fn breaking_probe(
    word: &BraidWord,
    omega_g: f64,
    psi0: &PureState,
    policy: &SchedulePolicy,
    background: ControlParams,
) -> Result<[f64; 4], AnalysisError> {
    if word.letters.iter().any(|l| l.pair == Pair::P13) {
        return Err(AnalysisError::UnsupportedPair);
    }
    let frame = dressed_frame(&background)?;
    let hg = breaking_hamiltonian(omega_g);
    let t = policy.pulse_duration();
    let mut psi = psi0.amplitudes.clone();
    for letter in &word.letters {
        let hkj =
            crate::braiding::pulse_hamiltonian(letter, policy.rabi, &frame);
        let h = &hg + hkj.scale(letter.orientation.sign());
        psi = expm_ih(&h, t)? * psi;
    }
    let out = PureState { amplitudes: psi };
    Ok(dressed_populations_pure(&out, &frame))
}

/// K-vs-Δt scan of the two-pulse braid {π₂₃,u, π₁₂,o}: π₁₂,o starts at `t1`
/// and π₂₃,u at `t1 + Δt`. Positive Δt beyond the pulse duration gives the
/// π₁₂-first order, negative Δt the reversed order, and |Δt| < T overlaps
/// the pulses.
pub fn k_scan(
    dt_samples: &[f64],
    t1: f64,
    policy: &SchedulePolicy,
    background: ControlParams,
    psi0: &PureState,
) -> Result<ScanCurve<KValue>, AnalysisError> {
    let frame = dressed_frame(&background)?;
    let input_triple: Vec<f64> = dressed_populations_pure(psi0, &frame)[..3].to_vec();
    let dur = policy.pulse_duration();
    let mut values = Vec::with_capacity(dt_samples.len());
    for &dt in dt_samples {
        let t2 = t1 + dt;
        assert!(t2 >= 0.0, "t1 too small for Δt = {dt}");
        let p12 = PulseEvent::new(
            BraidLetter::over(Pair::P12, 0.0),
            t1,
            dur,
            policy.rabi,
        )?;
        let p23 = PulseEvent::new(
            BraidLetter::under(Pair::P23, 0.0),
            t2,
            dur,
            policy.rabi,
        )?;
        let total = t1.max(t2) + dur + policy.tail;
        let s = Schedule::new(vec![p12, p23], background, total)?;
        let traj = propagate(&s, psi0, 2)?;
        let out = dressed_populations_pure(traj.states.last().unwrap(), &frame);
        values.push(k_continuous(&input_triple, &out[..3])?);
    }
    Ok(ScanCurve {
        parameter: "dt".into(),
        samples: dt_samples.to_vec(),
        values,
    })
}
