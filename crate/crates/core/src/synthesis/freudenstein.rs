use serde::{Deserialize, Serialize};

use super::SynthesisError;
use crate::linkage::LinkageParams;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkLengths {
    pub l1: f64,
    pub l2: f64,
    pub l3: f64,
    pub l4: f64,
}

impl LinkLengths {
    /// Lengths applied to a template that supplies offsets and auxiliary members.
    pub fn into_params(self, template: &LinkageParams) -> LinkageParams {
        template.with_lengths(self.l1, self.l2, self.l3, self.l4)
    }
}

const PIVOT_TOL: f64 = 1e-10;

/// Solves `A x = b` for a 3x3 system by Gaussian elimination with partial
/// pivoting. `None` when a pivot falls below `PIVOT_TOL`.
fn solve3(mut a: [[f64; 3]; 3], mut b: [f64; 3]) -> Option<[f64; 3]> {
    for col in 0..3 {
        let pivot = (col..3)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        if a[pivot][col].abs() < PIVOT_TOL {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..3 {
            let f = a[row][col] / a[col][col];
            let pivot_row = a[col];
            for (v, p) in a[row][col..].iter_mut().zip(&pivot_row[col..]) {
                *v -= f * p;
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let tail: f64 = (row + 1..3).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - tail) / a[row][row];
    }
    Some(x)
}

/// Exact three-position function generation.
///
/// Each `(crank, rocker)` pair (radians) gives one linear equation
/// `-K1 cos(crank) + K2 cos(rocker) + K3 = cos(crank - rocker)` in the
/// length ratios `K1 = l4/l3`, `K2 = l4/l1`,
/// `K3 = (l1^2 - l2^2 + l3^2 + l4^2) / (2 l1 l3)`.
pub fn freudenstein_three_position(
    pairs: &[(f64, f64); 3],
    ground: f64,
) -> Result<LinkLengths, SynthesisError> {
    let mut a = [[0.0; 3]; 3];
    let mut b = [0.0; 3];
    for (i, &(crank, rocker)) in pairs.iter().enumerate() {
        a[i] = [-crank.cos(), rocker.cos(), 1.0];
        b[i] = (crank - rocker).cos();
    }
    let [k1, k2, k3] = solve3(a, b).ok_or(SynthesisError::SingularSystem)?;
    if !(k1 > 0.0 && k2 > 0.0) {
        return Err(SynthesisError::NegativeLink { k1, k2 });
    }
    let l1 = ground / k2;
    let l3 = ground / k1;
    let l2_squared = l1 * l1 + l3 * l3 + ground * ground - 2.0 * l1 * l3 * k3;
    if l2_squared.is_nan() || l2_squared <= 0.0 {
        return Err(SynthesisError::ImaginaryCoupler { l2_squared });
    }
    Ok(LinkLengths {
        l1,
        l2: l2_squared.sqrt(),
        l3,
        l4: ground,
    })
}
