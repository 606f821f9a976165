//! N-qubit composite-state braiding: Pauli-string Hamiltonian assembly,
//! the composite braiding operator between two product-basis labels, and
//! verification of which basis pairs a given coupling actually braids.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numerics::{self, expm_ih, CMat, NumericsError, ONE, ZERO};

/// Desk-scale cap on the number of qubits (dense 2^N matrices).
pub const MAX_QUBITS: usize = 10;

#[derive(Debug, Error, PartialEq)]
pub enum ManybodyError {
    #[error("term length {got} does not match system size {want}")]
    SizeMismatch { got: usize, want: usize },
    #[error("system size {0} exceeds the dense-matrix cap of {MAX_QUBITS} qubits")]
    TooLarge(usize),
    #[error("braiding pair labels must differ")]
    SameLabel,
    #[error("label length {got} does not match system size {want}")]
    LabelMismatch { got: usize, want: usize },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Single-site Pauli factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PauliOp {
    I,
    X,
    Y,
    Z,
}

impl PauliOp {
    fn matrix(self) -> CMat {
        let i = numerics::I;
        match self {
            PauliOp::I => CMat::identity(2, 2),
            PauliOp::X => CMat::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]),
            PauliOp::Y => CMat::from_row_slice(2, 2, &[ZERO, -i, i, ZERO]),
            PauliOp::Z => CMat::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE]),
        }
    }
}

/// One term of a Pauli-string Hamiltonian: a real coefficient times a tensor
/// product of per-site factors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PauliTerm {
    pub coefficient: f64,
    pub factors: Vec<PauliOp>,
}

impl PauliTerm {
    pub fn new(coefficient: f64, factors: Vec<PauliOp>) -> Self {
        Self {
            coefficient,
            factors,
        }
    }
}

/// Product-basis label |ξ⟩ = |ε₁⟩⊗…⊗|ε_N⟩, first bit most significant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisLabel {
    pub bits: Vec<bool>,
}

impl BasisLabel {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    /// Parse a bit string like "01".
    pub fn parse(s: &str) -> Option<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect::<Option<Vec<bool>>>()
            .map(Self::new)
    }

    pub fn index(&self) -> usize {
        self.bits
            .iter()
            .fold(0usize, |acc, &b| (acc << 1) | b as usize)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }
}

fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// Sum of Kronecker products of single-site Pauli matrices. Hermitian for
/// real coefficients.
pub fn build_pauli_sum(terms: &[PauliTerm], n: usize) -> Result<CMat, ManybodyError> {
    if n > MAX_QUBITS {
        return Err(ManybodyError::TooLarge(n));
    }
    let dim = 1usize << n;
    let mut h = CMat::zeros(dim, dim);
    for term in terms {
        if term.factors.len() != n {
            return Err(ManybodyError::SizeMismatch {
                got: term.factors.len(),
                want: n,
            });
        }
        let mut m = CMat::identity(1, 1);
        for op in &term.factors {
            m = kron(&m, &op.matrix());
        }
        h += m.map(|z| z * term.coefficient);
    }
    Ok(h)
}

/// Crossing orientation, shared with the four-level braiding module.
pub use crate::braiding::Orientation;

/// Composite braiding operator between two product-basis labels:
/// ∓i(|ξ_k⟩⟨ξ_j|e^{iφ} + h.c.) + Σ_{l≠k,j} |ξ_l⟩⟨ξ_l|.
pub fn composite_pi(
    k: &BasisLabel,
    j: &BasisLabel,
    phi: f64,
    orientation: Orientation,
) -> Result<CMat, ManybodyError> {
    if k.len() != j.len() {
        return Err(ManybodyError::LabelMismatch {
            got: j.len(),
            want: k.len(),
        });
    }
    if k == j {
        return Err(ManybodyError::SameLabel);
    }
    let n = k.len();
    if n > MAX_QUBITS {
        return Err(ManybodyError::TooLarge(n));
    }
    let dim = 1usize << n;
    let (ki, ji) = (k.index(), j.index());
    let mut u = CMat::zeros(dim, dim);
    for l in 0..dim {
        if l != ki && l != ji {
            u[(l, l)] = ONE;
        }
    }
    let pre = -numerics::I * orientation.sign();
    let e = C64::from_polar(1.0, phi);
    u[(ki, ji)] = pre * e;
    u[(ji, ki)] = pre * e.conj();
    Ok(u)
}

/// Result of realizing a braiding pulse from a many-body Hamiltonian.
#[derive(Debug, Clone)]
pub struct RealizationReport {
    pub unitary: CMat,
    /// max over labels outside the pair of the total transition probability
    /// out of that label
    pub leakage: f64,
    /// max entrywise distance to [`composite_pi`] on the 2x2 pair block
    pub block_distance: f64,
}

/// Evolve `U = e^{∓iHT}` and report how well it realizes the composite
/// braiding operator on the pair `(k, j)`.
///
/// The leakage report flags couplings that do not actually connect the
/// requested pair: a coupling like XX+YY braids |01⟩↔|10⟩ while XX−YY braids
/// |00⟩↔|11⟩.
pub fn realize_pi_via_hamiltonian(
    h: &CMat,
    pair: (&BasisLabel, &BasisLabel),
    t: f64,
    orientation: Orientation,
) -> Result<RealizationReport, ManybodyError> {
    let (k, j) = pair;
    if k == j {
        return Err(ManybodyError::SameLabel);
    }
    let signed = h.map(|z| z * orientation.sign());
    let u = expm_ih(&signed, t)?;
    let dim = u.nrows();
    let (ki, ji) = (k.index(), j.index());

    let mut leakage = 0.0f64;
    for l in 0..dim {
        if l == ki || l == ji {
            continue;
        }
        let out: f64 = (0..dim)
            .filter(|&m| m != l)
            .map(|m| u[(m, l)].norm_sqr())
            .sum();
        leakage = leakage.max(out);
    }

    let ideal = composite_pi(k, j, 0.0, orientation)?;
    let mut block_distance = 0.0f64;
    for &a in &[ki, ji] {
        for &b in &[ki, ji] {
            block_distance = block_distance.max((u[(a, b)] - ideal[(a, b)]).norm());
        }
    }
    Ok(RealizationReport {
        unitary: u,
        leakage,
        block_distance,
    })
}

/// Convenience: the 2-qubit coupling (XX+YY)/4 and (XX−YY)/4 scaled by Ω.
pub fn xxyy_coupling(omega: f64, minus: bool) -> Vec<PauliTerm> {
    let sign = if minus { -1.0 } else { 1.0 };
    vec![
        PauliTerm::new(omega / 4.0, vec![PauliOp::X, PauliOp::X]),
        PauliTerm::new(sign * omega / 4.0, vec![PauliOp::Y, PauliOp::Y]),
    ]
}
