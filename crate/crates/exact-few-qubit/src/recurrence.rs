use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use spin_quantum::{build_floquet, unitary_eigen, CMatrix, Complex, Params, Spin};

use crate::{ExactError, Result};

/// Kick strength handed to [`recurrence_predicate`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KValue {
    /// `k = (num/den)·π`, exact.
    PiMultiple(Ratio<i64>),
    /// A floating value; rationality cannot be decided.
    Numeric(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Recurrence {
    Periodic { period: u64 },
    Aperiodic,
    Unknown,
}

fn lcm_of_denominators(rotations: &[Ratio<i64>]) -> u64 {
    rotations.iter().fold(1u64, |acc, r| acc.lcm(&(r.denom().unsigned_abs())))
}

/// `2cos γ = s` with `s ∈ {−1, 0, 1}` gives `γ/(2π)`.
fn gamma_rotation(s: i64) -> Ratio<i64> {
    match s {
        0 => Ratio::new(1, 4),
        1 => Ratio::new(1, 6),
        _ => Ratio::new(1, 3),
    }
}

/// `sin(xπ)` for `x ∈ ½ℤ`.
fn half_integer_sine(x: Ratio<i64>) -> i64 {
    let twice = (x * 2).to_integer();
    match twice.rem_euclid(4) {
        1 => 1,
        3 => -1,
        _ => 0,
    }
}

/// Periodicity of the `p = π/2` dynamics at 2, 3 or 4 qubits.
///
/// With `r = k/π`:
/// * 2 qubits: always periodic, rotation numbers `1/4` and `r/8`.
/// * 3 qubits: `2cos γ = sin(rπ/3)` is an algebraic integer whose conjugates
///   all lie in `[−1, 1]`, so `γ/π` is rational only when it is `1/3`, `1/2` or
///   `2/3`, i.e. when `2r/3 ∈ ℤ`. Rotation numbers `γ/(2π)` and `1/4`.
/// * 4 qubits: the same argument with `sin(rπ/2)` needs `r ∈ ℤ`. Rotation
///   numbers `r/16`, `1/4` and `γ/(2π)`.
///
/// The period is the least common multiple of the denominators.
pub fn recurrence_predicate(qubits: u32, k: KValue) -> Result<Recurrence> {
    if !(2..=4).contains(&qubits) {
        return Err(ExactError::Unsupported(format!("recurrence predicate for {qubits} qubits")));
    }
    let r = match k {
        KValue::PiMultiple(r) => r,
        KValue::Numeric(x) if x == 0.0 => Ratio::from_integer(0),
        KValue::Numeric(x) if x.is_finite() => return Ok(Recurrence::Unknown),
        KValue::Numeric(x) => return Err(ExactError::Domain(format!("non-finite k {x}"))),
    };
    let quarter = Ratio::new(1, 4);
    let rotations = match qubits {
        2 => vec![quarter, r / 8],
        3 => {
            let x = r / 3;
            if !(x * 2).is_integer() {
                return Ok(Recurrence::Aperiodic);
            }
            vec![gamma_rotation(half_integer_sine(x)), quarter]
        }
        _ => {
            if !r.is_integer() {
                return Ok(Recurrence::Aperiodic);
            }
            vec![gamma_rotation(half_integer_sine(r / 2)), quarter, r / 16]
        }
    };
    Ok(Recurrence::Periodic { period: lcm_of_denominators(&rotations) })
}

/// `k = 2πj`, `πj` or `jπ/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KChoice {
    TwoPiJ,
    PiJ,
    HalfPiJ,
}

impl KChoice {
    pub fn k(&self, spin: Spin) -> f64 {
        let j = spin.j();
        match self {
            KChoice::TwoPiJ => 2.0 * std::f64::consts::PI * j,
            KChoice::PiJ => std::f64::consts::PI * j,
            KChoice::HalfPiJ => std::f64::consts::FRAC_PI_2 * j,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecurrenceScan {
    pub j: f64,
    pub qubits: u32,
    pub k: f64,
    pub choice: Option<KChoice>,
    pub cutoff: u64,
    /// First `n` with `Uⁿ = e^{iφ}·I`.
    pub period: Option<u64>,
    /// `φ ∈ [0, 2π)`.
    pub phase: Option<f64>,
    /// `max |Uⁿ − e^{iφ}I|` at the reported `n`.
    pub deviation: Option<f64>,
}

const IDENTITY_TOL: f64 = 1e-8;

fn matrix_power(u: &CMatrix, mut n: u64) -> CMatrix {
    let mut base = u.clone();
    let mut acc = CMatrix::identity(u.nrows(), u.ncols());
    while n > 0 {
        if n & 1 == 1 {
            acc = &acc * &base;
        }
        n >>= 1;
        if n > 0 {
            base = &base * &base;
        }
    }
    acc
}

fn wrap(x: f64) -> f64 {
    x.rem_euclid(std::f64::consts::TAU)
}

/// Searches `n ≤ cutoff` for `Uⁿ = e^{iφ}·I` at `p = π/2`.
///
/// Candidates come from the eigenphases (all `nθᵢ` equal mod 2π) and are
/// confirmed on the matrix power with `max |Uⁿ − e^{iφ}I| < 1e-8`.
pub fn large_system_recurrence_check(spin: Spin, choice: KChoice, cutoff: u64) -> Result<RecurrenceScan> {
    let mut scan = identity_recurrence_scan(spin, choice.k(spin), cutoff)?;
    scan.choice = Some(choice);
    Ok(scan)
}

/// [`large_system_recurrence_check`] at an arbitrary `k`.
pub fn identity_recurrence_scan(spin: Spin, k: f64, cutoff: u64) -> Result<RecurrenceScan> {
    let u = build_floquet(&Params::kicked(k), spin)?.u;
    let eig = unitary_eigen(&u)?;
    let base = eig.phases[0];
    let rel: Vec<f64> = eig.phases.iter().map(|t| t - base).collect();
    let mut scan = RecurrenceScan {
        j: spin.j(),
        qubits: spin.qubits(),
        k,
        choice: None,
        cutoff,
        period: None,
        phase: None,
        deviation: None,
    };
    for n in 1..=cutoff {
        let tol = 1e-6 + n as f64 * 1e-9;
        let nf = n as f64;
        let aligned = rel.iter().all(|d| {
            let w = wrap(nf * d);
            w.min(std::f64::consts::TAU - w) < tol
        });
        if !aligned {
            continue;
        }
        let un = matrix_power(&u, n);
        let z = un.trace() / Complex::new(un.nrows() as f64, 0.0);
        let phase = Complex::from_polar(1.0, z.arg());
        let dev = (&un - CMatrix::identity(un.nrows(), un.ncols()) * phase).iter().fold(0.0_f64, |m, x| m.max(x.norm()));
        if dev < IDENTITY_TOL {
            scan.period = Some(n);
            scan.phase = Some(wrap(z.arg()));
            scan.deviation = Some(dev);
            break;
        }
    }
    Ok(scan)
}
