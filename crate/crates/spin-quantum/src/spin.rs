use serde::{Deserialize, Serialize};

use crate::{QuantumError, Result};

/// Spin quantum number stored as `2j` (the qubit count).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Spin {
    twice: u32,
}

impl Spin {
    /// Accepts `j` with `2j` a positive integer.
    pub fn new(j: f64) -> Result<Self> {
        let t = 2.0 * j;
        if !(t.is_finite() && t >= 1.0 && (t - t.round()).abs() < 1e-9 && t <= u32::MAX as f64) {
            return Err(QuantumError::Domain(format!("j must be a positive multiple of 1/2, got {j}")));
        }
        Ok(Self { twice: t.round() as u32 })
    }

    pub fn from_qubits(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(QuantumError::Domain("need at least one qubit".into()));
        }
        Ok(Self { twice: n })
    }

    pub fn j(&self) -> f64 {
        self.twice as f64 / 2.0
    }

    pub fn qubits(&self) -> u32 {
        self.twice
    }

    /// `2j + 1`.
    pub fn dim(&self) -> usize {
        self.twice as usize + 1
    }

    /// `m` at basis index `a`.
    pub fn m(&self, a: usize) -> f64 {
        self.j() - a as f64
    }

    pub fn is_half_integer(&self) -> bool {
        self.twice % 2 == 1
    }
}
