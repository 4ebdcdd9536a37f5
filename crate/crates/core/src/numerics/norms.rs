use std::fmt;
use std::str::FromStr;

use crate::scalar::Scalar;

use super::DenseMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NormKind {
    L1,
    L2,
    Linf,
}

impl fmt::Display for NormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NormKind::L1 => "l1",
            NormKind::L2 => "l2",
            NormKind::Linf => "linf",
        })
    }
}

impl FromStr for NormKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "l1" => Ok(NormKind::L1),
            "l2" => Ok(NormKind::L2),
            "linf" => Ok(NormKind::Linf),
            other => Err(format!("unknown norm `{other}`")),
        }
    }
}

pub fn norm<T: Scalar>(x: &[T], kind: NormKind) -> T {
    match kind {
        NormKind::L1 => x.iter().map(|v| v.abs()).sum(),
        NormKind::L2 => {
            // Scaled to avoid overflow on large entries.
            let scale = norm(x, NormKind::Linf);
            if scale == T::zero() {
                return T::zero();
            }
            let ss: T = x.iter().map(|&v| (v / scale) * (v / scale)).sum();
            scale * ss.sqrt()
        }
        NormKind::Linf => x
            .iter()
            .fold(T::zero(), |m, v| if v.abs() > m { v.abs() } else { m }),
    }
}

/// Induced `l1 -> l1` norm: the largest column `l1` norm.
pub fn l1_operator_norm<T: Scalar>(a: &DenseMatrix<T>) -> T {
    (0..a.cols())
        .map(|j| norm(a.column(j), NormKind::L1))
        .fold(T::zero(), T::max)
}
