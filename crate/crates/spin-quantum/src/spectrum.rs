//! Eigendecomposition of unitaries and the binary eigenphase dump.

use std::io::{Read, Write};

use nalgebra::SymmetricEigen;
use serde::{Deserialize, Serialize};

use crate::{CMatrix, Complex, QuantumError, Result};

/// Eigenphases in `[0, 2π)`, ascending, with matching eigenvector columns.
#[derive(Debug, Clone)]
pub struct UnitaryEigen {
    pub phases: Vec<f64>,
    pub vectors: CMatrix,
    /// `max_i ‖U v_i − e^{iθ_i} v_i‖`.
    pub residual: f64,
}

const SHIFTS: [f64; 6] = [0.329_713_5, 1.234_567_89, 2.703_915_2, 4.012_345_6, 5.432_1, 0.777_777];

/// Diagonalises a unitary through its Cayley transform.
///
/// With `U' = e^{−ia} U`, `H = i (I − U')(I + U')⁻¹` is Hermitian with
/// eigenvalues `tan(θ/2)`, so a Hermitian solver gives orthonormal eigenvectors
/// even for clustered phases. The shift `a` is retried if `U'` is close to `−1`.
pub fn unitary_eigen(u: &CMatrix) -> Result<UnitaryEigen> {
    let n = u.nrows();
    if n != u.ncols() {
        return Err(QuantumError::Domain("matrix is not square".into()));
    }
    if n == 0 {
        return Ok(UnitaryEigen { phases: vec![], vectors: CMatrix::zeros(0, 0), residual: 0.0 });
    }
    let tol = 1e-10 * (n as f64).sqrt().max(1.0);
    let mut best: Option<UnitaryEigen> = None;
    for a in SHIFTS {
        let Some(e) = cayley(u, a) else { continue };
        if e.residual < tol {
            return Ok(e);
        }
        if best.as_ref().is_none_or(|b| e.residual < b.residual) {
            best = Some(e);
        }
    }
    let r = best.map(|b| b.residual).unwrap_or(f64::NAN);
    Err(QuantumError::Internal(format!("unitary eigensolver did not converge: best residual {r:e} for n={n}")))
}

fn cayley(u: &CMatrix, a: f64) -> Option<UnitaryEigen> {
    let n = u.nrows();
    let shifted = u * Complex::from_polar(1.0, -a);
    let id = CMatrix::identity(n, n);
    let lhs = &id + &shifted;
    let rhs = (&id - &shifted) * Complex::new(0.0, 1.0);
    let h = lhs.lu().solve(&rhs)?;
    let h = (&h + h.adjoint()) * Complex::new(0.5, 0.0);
    let eig = SymmetricEigen::try_new(h, 1e-15, 0)?;
    let tau = std::f64::consts::TAU;
    let mut order: Vec<(f64, usize)> =
        eig.eigenvalues.iter().enumerate().map(|(i, &l)| ((2.0 * l.atan() + a).rem_euclid(tau), i)).collect();
    order.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut vectors = CMatrix::zeros(n, n);
    let mut residual = 0.0_f64;
    for (col, &(ph, i)) in order.iter().enumerate() {
        let v = eig.eigenvectors.column(i);
        vectors.set_column(col, &v);
        let r = (u * v - v * Complex::from_polar(1.0, ph)).norm();
        residual = residual.max(r);
    }
    Some(UnitaryEigen { phases: order.iter().map(|o| if o.0 >= tau { 0.0 } else { o.0 }).collect(), vectors, residual })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DumpBlock {
    pub label: String,
    pub len: usize,
}

/// JSON header of an eigenphase dump.
///
/// File layout: `u64` LE header length, the header as UTF-8 JSON, then the
/// phases of every block in order as LE `f64`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DumpHeader {
    pub format: String,
    pub dtype: String,
    pub j: f64,
    pub params: crate::Params,
    pub blocks: Vec<DumpBlock>,
}

impl DumpHeader {
    pub const FORMAT: &'static str = "qkt-eigenphases-v1";

    pub fn new(j: f64, params: crate::Params, blocks: &[(&str, &[f64])]) -> Self {
        Self {
            format: Self::FORMAT.into(),
            dtype: "<f8".into(),
            j,
            params,
            blocks: blocks.iter().map(|(l, v)| DumpBlock { label: (*l).into(), len: v.len() }).collect(),
        }
    }
}

pub fn write_eigenphase_dump<W: Write>(mut w: W, j: f64, params: crate::Params, blocks: &[(&str, &[f64])]) -> Result<()> {
    let header = DumpHeader::new(j, params, blocks);
    let json = serde_json::to_vec(&header).map_err(|e| QuantumError::Internal(e.to_string()))?;
    w.write_all(&(json.len() as u64).to_le_bytes())?;
    w.write_all(&json)?;
    for (_, v) in blocks {
        for x in v.iter() {
            w.write_all(&x.to_le_bytes())?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn read_eigenphase_dump<R: Read>(mut r: R) -> Result<(DumpHeader, Vec<Vec<f64>>)> {
    let mut len = [0u8; 8];
    r.read_exact(&mut len)?;
    let len = u64::from_le_bytes(len) as usize;
    if len > 1 << 24 {
        return Err(QuantumError::Domain(format!("implausible header length {len}")));
    }
    let mut json = vec![0u8; len];
    r.read_exact(&mut json)?;
    let header: DumpHeader = serde_json::from_slice(&json).map_err(|e| QuantumError::Domain(format!("bad dump header: {e}")))?;
    if header.format != DumpHeader::FORMAT || header.dtype != "<f8" {
        return Err(QuantumError::Domain(format!("unsupported dump format {} / {}", header.format, header.dtype)));
    }
    let mut out = Vec::with_capacity(header.blocks.len());
    let mut buf = [0u8; 8];
    for b in &header.blocks {
        let mut v = Vec::with_capacity(b.len);
        for _ in 0..b.len {
            r.read_exact(&mut buf)?;
            v.push(f64::from_le_bytes(buf));
        }
        out.push(v);
    }
    Ok((header, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{build_floquet, Params, Spin};

    #[test]
    fn diagonal_unitary() {
        let ph = [0.1, 3.0, 6.0, 3.0 + 1e-9];
        let u = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(4, ph.iter().map(|&p| Complex::from_polar(1.0, p))));
        let e = unitary_eigen(&u).unwrap();
        let mut want = ph.to_vec();
        want.sort_by(f64::total_cmp);
        for (a, b) in e.phases.iter().zip(&want) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn phases_reconstruct_unitary() {
        let u = build_floquet(&Params::kicked(4.0), Spin::new(6.0).unwrap()).unwrap().u;
        let e = unitary_eigen(&u).unwrap();
        let d = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(13, e.phases.iter().map(|&p| Complex::from_polar(1.0, p))));
        let back = &e.vectors * d * e.vectors.adjoint();
        assert!(crate::max_abs_diff(&back, &u) < 1e-12);
        assert!(e.phases.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn dump_round_trip() {
        let a = [0.5, 1.5, 6.0];
        let b = [2.0];
        let mut buf = Vec::new();
        write_eigenphase_dump(&mut buf, 1.5, Params::kicked(3.0), &[("plus", &a), ("minus", &b)]).unwrap();
        let (h, v) = read_eigenphase_dump(buf.as_slice()).unwrap();
        assert_eq!(h.blocks.len(), 2);
        assert_eq!(v, vec![a.to_vec(), b.to_vec()]);
        assert!(read_eigenphase_dump(&buf[..buf.len() - 3]).is_err());
    }
}
