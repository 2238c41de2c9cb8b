use std::f64::consts::PI;

use num_rational::BigRational;
use serde::Serialize;

use super::graph::{build_graph, default_anchors, SMode};
use super::probability::{finite_connection_probabilities_with, Backend};
use super::DimerError;
use crate::combinatorics::Signature;
use crate::webs::matrix_m;

/// Conformal map from the rectangle `[0, width] × [0, height]` onto the upper
/// half-plane, sending the bottom side onto `[-1, 1]` with the corners at
/// `±1` and `±1/k`. Evaluated at a point `c` of the bottom side, via Jacobi
/// theta series: `sn(u) = (θ₃/θ₂) θ₁(v)/θ₄(v)` with `v = πu/(2K)` and nome
/// `q = exp(−π K'/K)`, `K'/K = 2 height / width`.
pub fn rectangle_to_half_plane(c: f64, width: f64, height: f64) -> f64 {
    let q = (-PI * 2.0 * height / width).exp();
    let terms = 40;
    let theta2: f64 = 2.0 * (0..terms).map(|n| q.powf((n as f64 + 0.5).powi(2))).sum::<f64>();
    let theta3: f64 = 1.0 + 2.0 * (1..terms).map(|n| q.powi(n * n)).sum::<f64>();
    // u ranges over [−K, K] along the bottom side; v = πu/(2K).
    let v = PI / 2.0 * (2.0 * c / width - 1.0);
    let theta1: f64 = 2.0
        * (0..terms)
            .map(|n| {
                let sgn = if n % 2 == 0 { 1.0 } else { -1.0 };
                sgn * q.powf((n as f64 + 0.5).powi(2)) * ((2 * n + 1) as f64 * v).sin()
            })
            .sum::<f64>();
    let theta4: f64 = 1.0
        + 2.0
            * (1..terms)
                .map(|n| {
                    let sgn = if n % 2 == 0 { 1.0 } else { -1.0 };
                    sgn * q.powi(n * n) * (2.0 * n as f64 * v).cos()
                })
                .sum::<f64>();
    theta3 / theta2 * theta1 / theta4
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceRow {
    pub size: usize,
    pub lambda: usize,
    pub finite_pr: f64,
    pub limit_p: f64,
    pub rel_err: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceStudy {
    pub signature: Vec<u8>,
    pub tableau: usize,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceStudy {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("size,lambda,finite_pr,limit_p,rel_err\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{:.12},{:.12},{:.6e}\n",
                r.size, r.lambda, r.finite_pr, r.limit_p, r.rel_err
            ));
        }
        out
    }

    fn errors(&self, size: usize) -> Vec<f64> {
        self.rows
            .iter()
            .filter(|r| r.size == size)
            .map(|r| r.rel_err)
            .collect()
    }

    /// Whether, for every `λ`, the error at the largest size is at most the
    /// error at the smallest size.
    pub fn errors_shrink(&self) -> bool {
        let (Some(lo), Some(hi)) = (
            self.rows.iter().map(|r| r.size).min(),
            self.rows.iter().map(|r| r.size).max(),
        ) else {
            return false;
        };
        self.errors(lo)
            .iter()
            .zip(self.errors(hi))
            .all(|(a, b)| b <= *a + 1e-12)
    }
}

/// Finite-size probabilities on `width × width/2` grids compared with the
/// scaling limit at the images of the anchor columns under the rectangle's
/// conformal map. Sizes are processed in parallel; rows come out ordered by
/// size and then by `λ`.
pub fn convergence_study(
    sig: &Signature,
    t: usize,
    sizes: &[usize],
    mode: SMode,
    backend: Backend,
) -> Result<ConvergenceStudy, DimerError> {
    if sizes.len() < 2 {
        return Err(DimerError::TooFewSizes);
    }
    let basis = matrix_m(sig)?;
    let results: Vec<Result<Vec<ConvergenceRow>, DimerError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = sizes
            .iter()
            .map(|&width| {
                let basis = &basis;
                scope.spawn(move || -> Result<Vec<ConvergenceRow>, DimerError> {
                    let height = (width / 2).max(1);
                    let anchors = default_anchors(width, sig, mode);
                    let g = build_graph(width, height, sig, &anchors, mode)?;
                    let x: Vec<BigRational> = anchors
                        .iter()
                        .map(|&c| {
                            let v = rectangle_to_half_plane(c as f64, width as f64, height as f64);
                            BigRational::from_float(v).expect("finite coordinate")
                        })
                        .collect();
                    let mut report = finite_connection_probabilities_with(basis, &g, t, backend)?;
                    report.attach_limits(basis, &x)?;
                    Ok(report
                        .rows
                        .into_iter()
                        .map(|r| ConvergenceRow {
                            size: width,
                            lambda: r.lambda,
                            finite_pr: r.finite_f64,
                            limit_p: r.limit.as_ref().map_or(f64::NAN, |p| {
                                num_traits::ToPrimitive::to_f64(p).unwrap_or(f64::NAN)
                            }),
                            rel_err: r.rel_err.unwrap_or(f64::NAN),
                        })
                        .collect())
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    let mut rows = Vec::new();
    for r in results {
        rows.extend(r?);
    }
    rows.sort_by_key(|r| (r.size, r.lambda));
    Ok(ConvergenceStudy {
        signature: sig.s().to_vec(),
        tableau: t,
        rows,
    })
}
