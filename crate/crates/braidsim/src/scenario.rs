//! Config-driven experiment runner: parse a TOML scenario description, run
//! the named experiment, and emit a deterministic numeric table as CSV or
//! JSON.

use std::path::Path;

use num_complex::Complex64 as C64;
use serde::Deserialize;

use crate::analysis::{
    breaking_probe, coherence_scan, phase_scan, BraidWord, PhaseMask, TIE_EPS,
};
use crate::braiding::{
    dressed_populations_pure, propagate, BraidLetter, Orientation, Pair, PulseEvent, PureState,
    Schedule, SchedulePolicy,
};
use crate::manybody::{build_pauli_sum, realize_pi_via_hamiltonian, xxyy_coupling, BasisLabel};
use crate::model::{
    build_h4, dressed_frame, gauge_field, rabi_from_controls, ControlParams, FD_STEP,
};
use crate::numerics::hermitian_eig;
use crate::qutrit::{synth_x3, synth_z3, PhaseSign};

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

/// Process exit codes: 0 success, 2 config error, 3 computation error,
/// 4 I/O error.
#[derive(Debug, thiserror::Error)]
pub enum ScenarioError {
    #[error("config parse error: {0}")]
    Parse(String),
    #[error("config validation error: {0}")]
    Validation(String),
    #[error("computation error in {operation}: {message}")]
    Computation { operation: String, message: String },
    #[error("I/O error: {0}")]
    Io(String),
}

impl ScenarioError {
    pub fn exit_code(&self) -> i32 {
        match self {
            ScenarioError::Parse(_) | ScenarioError::Validation(_) => 2,
            ScenarioError::Computation { .. } => 3,
            ScenarioError::Io(_) => 4,
        }
    }

    fn comp<E: std::fmt::Display>(operation: &str) -> impl Fn(E) -> ScenarioError + '_ {
        move |e| ScenarioError::Computation {
            operation: operation.to_string(),
            message: e.to_string(),
        }
    }
}

/// The experiments the CLI can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScenarioKind {
    Spectrum,
    Evolve,
    KScan,
    PhaseScan,
    EtaScan,
    BreakProbe,
    Qutrit,
    Manybody,
    Gauge,
}

pub const SCENARIO_NAMES: [(&str, ScenarioKind); 9] = [
    ("spectrum", ScenarioKind::Spectrum),
    ("evolve", ScenarioKind::Evolve),
    ("kscan", ScenarioKind::KScan),
    ("phasescan", ScenarioKind::PhaseScan),
    ("etascan", ScenarioKind::EtaScan),
    ("breakprobe", ScenarioKind::BreakProbe),
    ("qutrit", ScenarioKind::Qutrit),
    ("manybody", ScenarioKind::Manybody),
    ("gauge", ScenarioKind::Gauge),
];

fn parse_kind(name: &str) -> Result<ScenarioKind, ScenarioError> {
    SCENARIO_NAMES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, k)| *k)
        .ok_or_else(|| {
            let valid: Vec<&str> = SCENARIO_NAMES.iter().map(|(n, _)| *n).collect();
            ScenarioError::Validation(format!(
                "scenario: unknown name {name:?}; valid names are {valid:?}"
            ))
        })
}

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawControls {
    theta: Option<f64>,
    alpha: Option<f64>,
    phi: Option<f64>,
    omega0: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPulse {
    pair: String,
    orientation: String,
    phase: Option<f64>,
    start: f64,
    duration: Option<f64>,
    rabi: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScan {
    parameter: String,
    from: f64,
    to: f64,
    samples: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    path: String,
    format: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    scenario: String,
    controls: Option<RawControls>,
    /// dressed-basis amplitudes as (re, im) pairs
    initial_state: Option<Vec<[f64; 2]>>,
    pulses: Option<Vec<RawPulse>>,
    scan: Option<RawScan>,
    eta: Option<f64>,
    omega_g: Option<f64>,
    /// time by which consecutive scan pulses are pulled together
    overlap: Option<f64>,
    /// start time of the first pulse in kscan
    t1: Option<f64>,
    /// braid words as letter lists like ["12o", "23u", "12o"]
    words: Option<Vec<Vec<String>>>,
    output: Option<RawOutput>,
}

/// Validated scenario configuration with defaults applied.
#[derive(Debug, Clone)]
pub struct ScenarioConfig {
    pub kind: ScenarioKind,
    pub controls: ControlParams,
    pub initial_state: [C64; 4],
    pub pulses: Vec<PulseEvent>,
    pub scan: Option<(String, f64, f64, usize)>,
    pub eta: f64,
    pub omega_g: f64,
    pub overlap: f64,
    pub t1: f64,
    pub words: Vec<BraidWord>,
    pub output: Option<(String, OutputFormat)>,
    pub tie_eps: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

fn parse_letter(s: &str, field: &str) -> Result<BraidLetter, ScenarioError> {
    let (pair, orient) = s.split_at(s.len().saturating_sub(1));
    let pair = match pair {
        "12" => Pair::P12,
        "23" => Pair::P23,
        "13" => Pair::P13,
        _ => {
            return Err(ScenarioError::Validation(format!(
                "{field}: invalid pair {pair:?}; expected 12, 23 or 13"
            )))
        }
    };
    let orientation = match orient {
        "o" => Orientation::Over,
        "u" => Orientation::Under,
        _ => {
            return Err(ScenarioError::Validation(format!(
                "{field}: invalid orientation {orient:?}; expected o or u"
            )))
        }
    };
    Ok(BraidLetter::new(pair, orientation, 0.0))
}

fn parse_pulse(raw: &RawPulse, idx: usize) -> Result<PulseEvent, ScenarioError> {
    let field = format!("pulses[{idx}]");
    let letter = {
        let mut l = parse_letter(
            &format!(
                "{}{}",
                raw.pair,
                match raw.orientation.as_str() {
                    "over" => "o",
                    "under" => "u",
                    other => {
                        return Err(ScenarioError::Validation(format!(
                            "{field}.orientation: invalid value {other:?}; expected over or under"
                        )))
                    }
                }
            ),
            &field,
        )?;
        l.phase = raw.phase.unwrap_or(0.0);
        l
    };
    let rabi = raw.rabi.unwrap_or(1.0);
    let duration = raw.duration.unwrap_or(PI / rabi);
    PulseEvent::new(letter, raw.start, duration, rabi)
        .map_err(|e| ScenarioError::Validation(format!("{field}: {e}")))
}

/// Parse and validate a TOML scenario configuration, filling in the default
/// scenario constants (Ω = 1, T = π, θ = α = π/2, φ = 0, the standard
/// initial superposition).
pub fn parse_config(text: &str) -> Result<ScenarioConfig, ScenarioError> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| ScenarioError::Parse(e.to_string()))?;
    let kind = parse_kind(&raw.scenario)?;

    let c = raw.controls.unwrap_or_default();
    let controls = ControlParams::new(
        c.theta.unwrap_or(FRAC_PI_2),
        c.alpha.unwrap_or(FRAC_PI_2),
        c.phi.unwrap_or(0.0),
        c.omega0.unwrap_or(1.0),
    )
    .map_err(|e| ScenarioError::Validation(format!("controls: {e}")))?;

    let initial_state = match raw.initial_state {
        None => default_initial_state(),
        Some(v) => {
            if v.len() != 4 {
                return Err(ScenarioError::Validation(format!(
                    "initial_state: expected 4 amplitudes, got {}",
                    v.len()
                )));
            }
            let amps = [
                C64::new(v[0][0], v[0][1]),
                C64::new(v[1][0], v[1][1]),
                C64::new(v[2][0], v[2][1]),
                C64::new(v[3][0], v[3][1]),
            ];
            let norm2: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
            if (norm2 - 1.0).abs() > 1e-9 {
                return Err(ScenarioError::Validation(format!(
                    "initial_state: amplitudes not normalized (Σ|aᵢ|² = {norm2})"
                )));
            }
            amps
        }
    };

    let pulses = raw
        .pulses
        .unwrap_or_default()
        .iter()
        .enumerate()
        .map(|(i, p)| parse_pulse(p, i))
        .collect::<Result<Vec<_>, _>>()?;

    let scan = match raw.scan {
        None => None,
        Some(s) => {
            if s.samples < 2 {
                return Err(ScenarioError::Validation(format!(
                    "scan.samples: need at least 2, got {}",
                    s.samples
                )));
            }
            if s.to <= s.from {
                return Err(ScenarioError::Validation(format!(
                    "scan: `to` = {} must exceed `from` = {}",
                    s.to, s.from
                )));
            }
            Some((s.parameter, s.from, s.to, s.samples))
        }
    };

    let eta = raw.eta.unwrap_or(1.0);
    if !(0.0..=1.0).contains(&eta) {
        return Err(ScenarioError::Validation(format!(
            "eta: {eta} outside [0, 1]"
        )));
    }

    let words = raw
        .words
        .unwrap_or_default()
        .iter()
        .enumerate()
        .map(|(wi, w)| {
            w.iter()
                .map(|s| parse_letter(s, &format!("words[{wi}]")))
                .collect::<Result<Vec<_>, _>>()
                .map(BraidWord::new)
        })
        .collect::<Result<Vec<_>, _>>()?;

    let output = match raw.output {
        None => None,
        Some(o) => {
            let fmt = match o.format.as_str() {
                "csv" => OutputFormat::Csv,
                "json" => OutputFormat::Json,
                other => {
                    return Err(ScenarioError::Validation(format!(
                        "output.format: invalid value {other:?}; expected csv or json"
                    )))
                }
            };
            Some((o.path, fmt))
        }
    };

    Ok(ScenarioConfig {
        kind,
        controls,
        initial_state,
        pulses,
        scan,
        eta,
        omega_g: raw.omega_g.unwrap_or(1.0),
        overlap: raw.overlap.unwrap_or(1.5 * PI),
        t1: raw.t1.unwrap_or(3.0 * PI),
        words,
        output,
        tie_eps: TIE_EPS,
    })
}

/// The standard initial superposition √0.4, √0.3, √0.2, √0.1 over the
/// dressed states.
pub fn default_initial_state() -> [C64; 4] {
    [
        C64::new(0.4f64.sqrt(), 0.0),
        C64::new(0.3f64.sqrt(), 0.0),
        C64::new(0.2f64.sqrt(), 0.0),
        C64::new(0.1f64.sqrt(), 0.0),
    ]
}

/// Named figure presets: ready-made configs for the standard experiments.
pub fn preset(name: &str) -> Option<&'static str> {
    match name {
        // π₁₂,o then π₂₃,u, φ = π/2
        "fig2a" => Some(
            r#"
scenario = "evolve"

[[pulses]]
pair = "12"
orientation = "over"
phase = 1.5707963267948966
start = 3.141592653589793

[[pulses]]
pair = "23"
orientation = "under"
phase = 1.5707963267948966
start = 9.42477796076938
"#,
        ),
        // reversed order
        "fig2b" => Some(
            r#"
scenario = "evolve"

[[pulses]]
pair = "23"
orientation = "under"
phase = 1.5707963267948966
start = 3.141592653589793

[[pulses]]
pair = "12"
orientation = "over"
phase = 1.5707963267948966
start = 9.42477796076938
"#,
        ),
        "fig3a" => Some(
            r#"
scenario = "kscan"

[scan]
parameter = "dt"
from = -6.283185307179586
to = 6.283185307179586
samples = 201
"#,
        ),
        "fig4d" => Some(
            r#"
scenario = "phasescan"

[scan]
parameter = "phi"
from = 0.0
to = 6.283185307179586
samples = 64
"#,
        ),
        "fig6" => Some(
            r#"
scenario = "breakprobe"
omega_g = 1.0
words = [["12o", "23u", "12u"], ["12o", "23u", "12o"]]
"#,
        ),
        _ => None,
    }
}

/// Rectangular numeric result table.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl ResultTable {
    fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

fn linspace(from: f64, to: f64, samples: usize) -> Vec<f64> {
    (0..samples)
        .map(|k| from + (to - from) * k as f64 / (samples - 1) as f64)
        .collect()
}

/// The four three-letter words of the wringing-pattern comparison, phases
/// tracked by the scan.
fn wringing_words() -> Vec<BraidWord> {
    let mk = |a: Orientation, b: Orientation| {
        BraidWord::new(vec![
            BraidLetter::new(Pair::P12, Orientation::Over, 0.0),
            BraidLetter::new(Pair::P23, b, 0.0),
            BraidLetter::new(Pair::P12, a, 0.0),
        ])
    };
    // last-letter-first operator notation: word lists run in time order
    vec![
        mk(Orientation::Over, Orientation::Under),
        mk(Orientation::Under, Orientation::Over),
        mk(Orientation::Under, Orientation::Under),
        mk(Orientation::Over, Orientation::Over),
    ]
}

/// Run a validated scenario. Identical inputs produce identical tables.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<ResultTable, ScenarioError> {
    match cfg.kind {
        ScenarioKind::Spectrum => run_spectrum(cfg),
        ScenarioKind::Evolve => run_evolve(cfg),
        ScenarioKind::KScan => run_kscan(cfg),
        ScenarioKind::PhaseScan => run_phasescan(cfg),
        ScenarioKind::EtaScan => run_etascan(cfg),
        ScenarioKind::BreakProbe => run_breakprobe(cfg),
        ScenarioKind::Qutrit => run_qutrit(cfg),
        ScenarioKind::Manybody => run_manybody(cfg),
        ScenarioKind::Gauge => run_gauge(cfg),
    }
}

fn grid_9x9() -> Vec<f64> {
    linspace(PI / 6.0, 5.0 * PI / 6.0, 9)
}

fn run_spectrum(cfg: &ScenarioConfig) -> Result<ResultTable, ScenarioError> {
    let mut table = ResultTable::new(&["theta", "alpha", "lam1", "lam2", "lam3", "lam4"]);
    for &theta in &grid_9x9() {
        for &alpha in &grid_9x9() {
            let p = ControlParams::new(theta, alpha, cfg.controls.phi, cfg.controls.omega0)
                .map_err(ScenarioError::comp("spectrum"))?;
            let r = rabi_from_controls(&p).map_err(ScenarioError::comp("rabi_from_controls"))?;
            let h = build_h4(&r, p.phi);
            let s = hermitian_eig(&h).map_err(ScenarioError::comp("hermitian_eig"))?;
            table.push(vec![
                theta,
                alpha,
                s.eigenvalues[0],
                s.eigenvalues[1],
                s.eigenvalues[2],
                s.eigenvalues[3],
            ]);
        }
    }
    Ok(table)
}

fn initial_pure_state(cfg: &ScenarioConfig) -> Result<PureState, ScenarioError> {
    let frame = dressed_frame(&cfg.controls).map_err(ScenarioError::comp("dressed_frame"))?;
    PureState::from_dressed(&cfg.initial_state, &frame)
        .map_err(ScenarioError::comp("initial_state"))
}

fn run_evolve(cfg: &ScenarioConfig) -> Result<ResultTable, ScenarioError> {
    let frame = dressed_frame(&cfg.controls).map_err(ScenarioError::comp("dressed_frame"))?;
    let psi0 = initial_pure_state(cfg)?;
    let max_end = cfg
        .pulses
        .iter()
        .map(|p| p.end())
        .fold(0.0f64, f64::max);
    let total = max_end + PI;
    let s = Schedule::new(cfg.pulses.clone(), cfg.controls, total)
        .map_err(ScenarioError::comp("schedule"))?;
    let traj = propagate(&s, &psi0, 200).map_err(ScenarioError::comp("propagate"))?;
    let mut table = ResultTable::new(&["t", "P1", "P2", "P3", "P4"]);
    for (t, st) in traj.times.iter().zip(&traj.states) {
        let p = dressed_populations_pure(st, &frame);
        table.push(vec![*t, p[0], p[1], p[2], p[3]]);
    }
    Ok(table)
}

fn run_kscan(cfg: &ScenarioConfig) -> Result<ResultTable, ScenarioError> {
    let (_, from, to, samples) = cfg
        .scan
        .clone()
        .unwrap_or(("dt".into(), -2.0 * PI, 2.0 * PI, 201));
    let dts = linspace(from, to, samples);
    let policy = SchedulePolicy::default();
    let psi0 = initial_pure_state(cfg)?;
    let scan = crate::analysis::k_scan(&dts, cfg.t1, &policy, cfg.controls, &psi0)
        .map_err(ScenarioError::comp("k_scan"))?;
    let mut table = ResultTable::new(&["dt", "K"]);
    for (dt, k) in scan.samples.iter().zip(&scan.values) {
        table.push(vec![*dt, k.value]);
    }
    Ok(table)
}

fn run_phasescan(cfg: &ScenarioConfig) -> Result<ResultTable, ScenarioError> {
    let (_, from, to, samples) = cfg
        .scan
        .clone()
        .unwrap_or(("phi".into(), 0.0, 2.0 * PI, 64));
    let phis = linspace(from, to, samples);
    let psi0 = initial_pure_state(cfg)?;
    let policy = SchedulePolicy::default();
    let words = if cfg.words.is_empty() {
        wringing_words()
    } else {
        cfg.words.clone()
    };
    if words.len() != 4 {
        return Err(ScenarioError::Validation(format!(
            "words: phasescan expects exactly 4 words, got {}",
            words.len()
        )));
    }
    let mut curves = Vec::new();
    for w in &words {
        let c = phase_scan(
            w,
            &phis,
            &psi0,
            &policy,
            cfg.controls,
            &PhaseMask::default(),
        )
        .map_err(ScenarioError::comp("phase_scan"))?;
        curves.push(c);
    }
    let mut table = ResultTable::new(&[
        "phi", "reF_w1", "reF_w2", "reF_w3", "reF_w4", "imF_w1", "imF_w2", "imF_w3", "imF_w4",
    ]);
    for (i, &phi) in phis.iter().enumerate() {
        let mut row = vec![phi];
        for c in &curves {
            row.push(c.values[i].re);
        }
        for c in &curves {
            row.push(c.values[i].im);
        }
        table.push(row);
    }
    Ok(table)
}

fn run_etascan(cfg: &ScenarioConfig) -> Result<ResultTable, ScenarioError> {
    let (_, from, to, samples) = cfg
        .scan
        .clone()
        .unwrap_or(("phi".into(), 0.0, 2.0 * PI, 64));
    let phis = linspace(from, to, samples);
    let word = if cfg.words.is_empty() {
        BraidWord::new(vec![
            BraidLetter::over(Pair::P12, 0.0),
            BraidLetter::under(Pair::P23, 0.0),
        ])
    } else {
        cfg.words[0].clone()
    };
    // φ₁₂ fixed at 0, the scanned φ drives the later letters
    let mask = PhaseMask(Some(
        (0..word.letters.len()).map(|i| i > 0).collect(),
    ));
    let policy = SchedulePolicy::default();
    let scan = coherence_scan(
        &word,
        cfg.eta,
        &phis,
        &cfg.initial_state,
        &policy,
        cfg.controls,
        &mask,
        cfg.overlap,
    )
    .map_err(ScenarioError::comp("coherence_scan"))?;
    let mut table = ResultTable::new(&["phi", "P1", "P2", "P3", "P4"]);
    for (phi, p) in scan.curve.samples.iter().zip(&scan.curve.values) {
        table.push(vec![*phi, p[0], p[1], p[2], p[3]]);
    }
    Ok(table)
}

fn run_breakprobe(cfg: &ScenarioConfig) -> Result<ResultTable, ScenarioError> {
    let words = if cfg.words.is_empty() {
        vec![
            BraidWord::new(vec![
                BraidLetter::over(Pair::P12, 0.0),
                BraidLetter::under(Pair::P23, 0.0),
                BraidLetter::under(Pair::P12, 0.0),
            ]),
            BraidWord::new(vec![
                BraidLetter::over(Pair::P12, 0.0),
                BraidLetter::under(Pair::P23, 0.0),
                BraidLetter::over(Pair::P12, 0.0),
            ]),
        ]
    } else {
        cfg.words.clone()
    };
    let psi0 = initial_pure_state(cfg)?;
    let policy = SchedulePolicy::default();
    let mut table = ResultTable::new(&["word", "P1", "P2", "P3", "P4"]);
    for (i, w) in words.iter().enumerate() {
        let p = breaking_probe(w, cfg.omega_g, &psi0, &policy, cfg.controls)
            .map_err(ScenarioError::comp("breaking_probe"))?;
        table.push(vec![(i + 1) as f64, p[0], p[1], p[2], p[3]]);
    }
    Ok(table)
}

fn run_qutrit(cfg: &ScenarioConfig) -> Result<ResultTable, ScenarioError> {
    let frame = dressed_frame(&cfg.controls).map_err(ScenarioError::comp("dressed_frame"))?;
    let x3 = synth_x3(&frame);
    let mut table = ResultTable::new(&[
        "phi3",
        "x3_pattern_distance",
        "z3_offdiag",
        "z3_phase_step",
        "phase_sign",
    ]);
    for phi3 in [0.0, FRAC_PI_4, FRAC_PI_2] {
        let z3 = synth_z3(phi3, &frame);
        let block = |i: usize| {
            (frame.vector(i).adjoint() * &z3.unitary * frame.vector(i))[(0, 0)]
        };
        let step = (block(1) / block(0)).arg().abs();
        let sign = match z3.phase_sign {
            PhaseSign::Plus => 1.0,
            PhaseSign::Minus => -1.0,
            PhaseSign::Undetermined => 0.0,
        };
        table.push(vec![
            phi3,
            x3.pattern_distance,
            z3.pattern_distance,
            step,
            sign,
        ]);
    }
    Ok(table)
}

fn run_manybody(_cfg: &ScenarioConfig) -> Result<ResultTable, ScenarioError> {
    let cases = [
        (false, "01", "10"), // XX+YY on (|01⟩, |10⟩): the working pairing
        (false, "00", "11"), // XX+YY on (|00⟩, |11⟩): flagged mismatch
        (true, "00", "11"),  // XX−YY on (|00⟩, |11⟩): the corrected pairing
    ];
    let mut table = ResultTable::new(&["case", "minus_coupling", "block_distance", "leakage"]);
    for (i, (minus, k, j)) in cases.iter().enumerate() {
        let h = build_pauli_sum(&xxyy_coupling(1.0, *minus), 2)
            .map_err(ScenarioError::comp("build_pauli_sum"))?;
        let k = BasisLabel::parse(k).unwrap();
        let j = BasisLabel::parse(j).unwrap();
        let rep = realize_pi_via_hamiltonian(&h, (&k, &j), PI, Orientation::Over)
            .map_err(ScenarioError::comp("realize_pi_via_hamiltonian"))?;
        table.push(vec![
            (i + 1) as f64,
            *minus as u8 as f64,
            rep.block_distance,
            rep.leakage,
        ]);
    }
    Ok(table)
}

fn run_gauge(cfg: &ScenarioConfig) -> Result<ResultTable, ScenarioError> {
    let grid = linspace(PI / 6.0, 5.0 * PI / 6.0, 5);
    let mut table = ResultTable::new(&["theta", "alpha", "reF23_12", "imF23_12"]);
    for &theta in &grid {
        for &alpha in &grid {
            let p = ControlParams::new(theta, alpha, cfg.controls.phi, cfg.controls.omega0)
                .map_err(ScenarioError::comp("gauge"))?;
            let g = gauge_field(&p, (2, 3), FD_STEP)
                .map_err(ScenarioError::comp("gauge_field"))?;
            let f12 = g.f_matrix[(0, 1)];
            table.push(vec![theta, alpha, f12.re, f12.im]);
        }
    }
    Ok(table)
}

fn fmt_num(x: f64) -> String {
    // scientific notation with 12 significant digits
    format!("{x:.11e}")
}

/// Serialize a table as CSV: header line, scientific notation with 12
/// significant digits, LF line endings.
pub fn to_csv(table: &ResultTable) -> String {
    let mut out = String::new();
    out.push_str(&table.columns.join(","));
    out.push('\n');
    for row in &table.rows {
        let cells: Vec<String> = row.iter().map(|&x| fmt_num(x)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Serialize a table as JSON with the same numeric precision as the CSV.
pub fn to_json(table: &ResultTable) -> String {
    let cols: Vec<String> = table
        .columns
        .iter()
        .map(|c| serde_json::to_string(c).expect("string encoding"))
        .collect();
    let mut out = String::new();
    out.push_str("{\"columns\":[");
    out.push_str(&cols.join(","));
    out.push_str("],\"rows\":[");
    let rows: Vec<String> = table
        .rows
        .iter()
        .map(|row| {
            let cells: Vec<String> = row.iter().map(|&x| fmt_num(x)).collect();
            format!("[{}]", cells.join(","))
        })
        .collect();
    out.push_str(&rows.join(","));
    out.push_str("]}\n");
    out
}

/// Write a table to `path` in the requested format.
pub fn write_output(
    table: &ResultTable,
    format: OutputFormat,
    path: &Path,
) -> Result<(), ScenarioError> {
    let text = match format {
        OutputFormat::Csv => to_csv(table),
        OutputFormat::Json => to_json(table),
    };
    std::fs::write(path, text).map_err(|e| ScenarioError::Io(format!("{}: {e}", path.display())))
}
