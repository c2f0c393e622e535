//! The `σ_y^{⊗2j}` parity and its eigenbasis.
//!
//! With `W_q` the symmetric state with `q` flipped qubits (basis index `q`),
//! `σ_y^{⊗2j} W_q = i^{2j−2q} W_{2j−q}`, so
//! `Φ_q^± = (W_q ± i^{2j−2q} W_{2j−q}) / √2` for `q < j`, and for integer `j`
//! the middle state `W_j` is itself `Φ_j^+`.

use crate::{CMatrix, Complex, QuantumError, Result, Spin};

fn i_pow(n: i64) -> Complex {
    [Complex::new(1.0, 0.0), Complex::new(0.0, 1.0), Complex::new(-1.0, 0.0), Complex::new(0.0, -1.0)][n.rem_euclid(4) as usize]
}

/// Matrix of `σ_y^{⊗2j}` on the symmetric subspace.
pub fn parity_operator(spin: Spin) -> CMatrix {
    let n = spin.qubits() as usize;
    let mut p = CMatrix::zeros(n + 1, n + 1);
    for q in 0..=n {
        p[(n - q, q)] = i_pow(n as i64 - 2 * q as i64);
    }
    p
}

/// Orthonormal columns spanning the `+1` and `−1` parity sectors.
#[derive(Debug, Clone)]
pub struct ParityBasis {
    pub plus: CMatrix,
    pub minus: CMatrix,
}

impl ParityBasis {
    /// `[plus | minus]` as one unitary.
    pub fn full(&self) -> CMatrix {
        let n = self.plus.nrows();
        let mut out = CMatrix::zeros(n, n);
        out.columns_mut(0, self.plus.ncols()).copy_from(&self.plus);
        out.columns_mut(self.plus.ncols(), self.minus.ncols()).copy_from(&self.minus);
        out
    }
}

/// Columns ordered `Φ_0, Φ_1, …` within each sector.
pub fn parity_basis(spin: Spin) -> ParityBasis {
    let n = spin.qubits() as usize;
    let pairs = n.div_ceil(2);
    let n_plus = n / 2 + 1;
    let mut plus = CMatrix::zeros(n + 1, n_plus);
    let mut minus = CMatrix::zeros(n + 1, pairs);
    let r = std::f64::consts::FRAC_1_SQRT_2;
    for q in 0..pairs {
        let ph = i_pow(n as i64 - 2 * q as i64);
        plus[(q, q)] = Complex::new(r, 0.0);
        plus[(n - q, q)] = ph * r;
        minus[(q, q)] = Complex::new(r, 0.0);
        minus[(n - q, q)] = -ph * r;
    }
    if n % 2 == 0 {
        plus[(n / 2, n / 2)] = Complex::new(1.0, 0.0);
    }
    ParityBasis { plus, minus }
}

/// `U` restricted to each parity sector.
#[derive(Debug, Clone)]
pub struct ParityBlocks {
    pub plus: CMatrix,
    pub minus: CMatrix,
    pub leakage: f64,
}

fn column_entries(b: &CMatrix) -> Vec<Vec<(usize, Complex)>> {
    b.column_iter()
        .map(|c| c.iter().enumerate().filter(|(_, z)| **z != Complex::new(0.0, 0.0)).map(|(i, z)| (i, *z)).collect())
        .collect()
}

/// `Lᴴ U R` for basis matrices with at most two entries per column.
fn sandwich(left: &CMatrix, u: &CMatrix, right: &CMatrix) -> CMatrix {
    let l = column_entries(left);
    let r = column_entries(right);
    CMatrix::from_fn(l.len(), r.len(), |a, b| {
        let mut acc = Complex::new(0.0, 0.0);
        for &(i, x) in &l[a] {
            for &(j, y) in &r[b] {
                acc += x.conj() * u[(i, j)] * y;
            }
        }
        acc
    })
}

/// `max |⟨Φ^±|U|Φ^∓⟩|`.
pub fn block_leakage(u: &CMatrix, basis: &ParityBasis) -> f64 {
    let a = sandwich(&basis.plus, u, &basis.minus);
    let b = sandwich(&basis.minus, u, &basis.plus);
    a.iter().chain(b.iter()).map(|c| c.norm()).fold(0.0, f64::max)
}

/// Splits `U` into its parity blocks; leakage above `tol` is an error.
pub fn split_blocks(u: &CMatrix, spin: Spin, tol: f64) -> Result<ParityBlocks> {
    let basis = parity_basis(spin);
    let leakage = block_leakage(u, &basis);
    if !(leakage <= tol) {
        return Err(QuantumError::SymmetryViolation { leakage });
    }
    Ok(ParityBlocks {
        plus: sandwich(&basis.plus, u, &basis.plus),
        minus: sandwich(&basis.minus, u, &basis.minus),
        leakage,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::max_abs_diff;

    #[test]
    fn basis_vectors_are_parity_eigenvectors() {
        for q in 1..9 {
            let spin = Spin::from_qubits(q).unwrap();
            let p = parity_operator(spin);
            let b = parity_basis(spin);
            assert_eq!(b.plus.ncols() + b.minus.ncols(), spin.dim());
            assert!(max_abs_diff(&(&p * &b.plus), &b.plus) < 1e-15);
            assert!(max_abs_diff(&(&p * &b.minus), &(-&b.minus)) < 1e-15);
            let f = b.full();
            assert!(max_abs_diff(&(f.adjoint() * &f), &CMatrix::identity(spin.dim(), spin.dim())) < 1e-15);
            let u = crate::build_floquet(&crate::Params::kicked(1.7), spin).unwrap().u;
            assert!(max_abs_diff(&sandwich(&b.plus, &u, &b.minus), &(b.plus.adjoint() * &u * &b.minus)) < 1e-15);
        }
    }

    #[test]
    fn three_qubit_phases() {
        // Φ₀^± = (e₀ ∓ i e₃)/√2, Φ₁^± = (e₁ ± i e₂)/√2.
        let b = parity_basis(Spin::from_qubits(3).unwrap());
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((b.plus[(3, 0)] - Complex::new(0.0, -r)).norm() < 1e-16);
        assert!((b.plus[(2, 1)] - Complex::new(0.0, r)).norm() < 1e-16);
        assert!((b.minus[(3, 0)] - Complex::new(0.0, r)).norm() < 1e-16);
    }
}
