use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use spin_quantum::{parity_basis, split_blocks, unitary_eigen, CMatrix, FloquetOperator, Params};

use crate::{DiagnosticsError, Result};

/// Off-block leakage above this is a symmetry violation.
pub const LEAKAGE_TOL: f64 = 1e-8;
/// A Φ vector with `|⟨Φ|U|Φ⟩| > 1 − SINGLET_TOL` is split off on its own.
pub const SINGLET_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockLabel {
    Plus,
    Minus,
    Singlet,
}

impl BlockLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            BlockLabel::Plus => "plus",
            BlockLabel::Minus => "minus",
            BlockLabel::Singlet => "singlet",
        }
    }
}

/// Sorted eigenphases in `[0, 2π)` of one symmetry block.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumBlock {
    pub label: BlockLabel,
    pub eigenphases: Vec<f64>,
    pub j: f64,
    pub params: Params,
}

impl SpectrumBlock {
    pub fn len(&self) -> usize {
        self.eigenphases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenphases.is_empty()
    }
}

/// A block with its eigenvectors as `|j, m⟩` columns, in phase order.
#[derive(Debug, Clone)]
pub struct EigenBlock {
    pub spectrum: SpectrumBlock,
    pub vectors: CMatrix,
}

fn wrap(x: f64) -> f64 {
    let t = x.rem_euclid(std::f64::consts::TAU);
    if t >= std::f64::consts::TAU {
        0.0
    } else {
        t
    }
}

fn diagonalise(block: &CMatrix, basis: &CMatrix, label: BlockLabel, u: &FloquetOperator) -> Result<Vec<EigenBlock>> {
    let n = block.nrows();
    let singlets: Vec<usize> = (0..n).filter(|&i| block[(i, i)].norm() > 1.0 - SINGLET_TOL).collect();
    let rest: Vec<usize> = (0..n).filter(|i| !singlets.contains(i)).collect();
    let mk = |label, eigenphases, vectors| EigenBlock {
        spectrum: SpectrumBlock { label, eigenphases, j: u.spin.j(), params: u.params },
        vectors,
    };
    let mut out = Vec::new();
    if !rest.is_empty() {
        let sub = block.select_rows(&rest).select_columns(&rest);
        let eig = unitary_eigen(&sub)?;
        let vectors = basis.select_columns(&rest) * &eig.vectors;
        out.push(mk(label, eig.phases, vectors));
    }
    for i in singlets {
        out.push(mk(BlockLabel::Singlet, vec![wrap(block[(i, i)].arg())], basis.columns(i, 1).into_owned()));
    }
    Ok(out)
}

/// Parity-resolved eigendecomposition: plus, minus, then any singlets.
pub fn eigen_system(u: &FloquetOperator) -> Result<Vec<EigenBlock>> {
    let defect = u.unitarity_defect();
    if !(defect < 1e-10) {
        return Err(DiagnosticsError::Precondition(format!("operator not unitary: defect {defect:e}")));
    }
    let blocks = split_blocks(&u.u, u.spin, LEAKAGE_TOL)?;
    let basis = parity_basis(u.spin);
    let parts = [(blocks.plus, basis.plus, BlockLabel::Plus), (blocks.minus, basis.minus, BlockLabel::Minus)];
    let done: Vec<Vec<EigenBlock>> =
        parts.par_iter().map(|(b, v, l)| diagonalise(b, v, *l, u)).collect::<Result<_>>()?;
    let (mut main, mut singles): (Vec<_>, Vec<_>) =
        done.into_iter().flatten().partition(|b| b.spectrum.label != BlockLabel::Singlet);
    main.append(&mut singles);
    Ok(main)
}

/// Eigenphases only.
pub fn eigen_blocks(u: &FloquetOperator) -> Result<Vec<SpectrumBlock>> {
    Ok(eigen_system(u)?.into_iter().map(|b| b.spectrum).collect())
}
