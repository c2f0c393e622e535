use serde::{Deserialize, Serialize};

use crate::{Real, SpherePoint, TopParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Symmetry {
    /// π rotation about y: `F∘Ry = Ry∘F`.
    Ry,
    /// π rotation about x: `F²∘Rx = Rx∘F²`.
    Rx,
    /// Time reversal `T`: `F∘T∘F = T`.
    T,
    /// Second time reversal `T̃`: `F∘T̃∘F = T̃`.
    Ttilde,
}

pub fn symmetry_apply<T: Real>(pt: &SpherePoint<T>, which: Symmetry, params: &TopParams<T>) -> SpherePoint<T> {
    let (x, y, z) = (pt.x, pt.y, pt.z);
    match which {
        Symmetry::Ry => SpherePoint::new(-x, y, -z),
        Symmetry::Rx => SpherePoint::new(x, -y, -z),
        Symmetry::T => {
            let (s, c) = params.p.sin_cos();
            SpherePoint::new(-x * c - z * s, y, z * c - x * s)
        }
        Symmetry::Ttilde => {
            let (s, c) = params.p.sin_cos();
            SpherePoint::new(x * c + z * s, y, -z * c + x * s)
        }
    }
}
