//! Tabulated profile curves.
//!
//! Positions and derivatives are taken from the local degree-6 polynomial
//! interpolant through the seven table nodes nearest the query point, so jet
//! accuracy follows the table spacing (`h^6`, `h^5`, `h^4` for orders 1-3).
//! Tables that are not unit-speed are reparametrized by numerically
//! integrated arc length before use.

use super::{Ambient, CurveError, CurveJet, V3};
use crate::numeric::{adaptive_simpson, poly_jet3, INTERP_POINTS};

/// Relative tolerance of the arc-length quadrature.
const ARCLEN_TOL: f64 = 1e-10;
/// Unit-speed residual under which a table is accepted as-is.
const UNIT_SPEED_SKIP: f64 = 1e-9;
/// Node spacing the interpolation window aims for. Differentiating exact
/// f64 samples twice amplifies roundoff like `eps / h^2`, so on fine tables
/// the window strides over nodes to reach this spacing (near the roundoff /
/// truncation optimum for second derivatives).
const TARGET_SPACING: f64 = 6e-3;

#[derive(Debug, Clone)]
pub struct TabulatedCurve {
    ambient: Ambient,
    u: Vec<f64>,
    x1: Vec<f64>,
    x2: Vec<f64>,
    r: Vec<f64>,
    stride: usize,
}

impl TabulatedCurve {
    pub(super) fn new(
        ambient: Ambient,
        u: Vec<f64>,
        x1: Vec<f64>,
        x2: Vec<f64>,
        r: Vec<f64>,
    ) -> Result<Self, CurveError> {
        let n = u.len();
        if n < INTERP_POINTS {
            return Err(CurveError::InsufficientSamples {
                got: n,
                need: INTERP_POINTS,
            });
        }
        if x1.len() != n || x2.len() != n || r.len() != n {
            return Err(CurveError::InvalidSamples(
                "sample columns have mismatched lengths".into(),
            ));
        }
        for w in u.windows(2) {
            if !(w[1] > w[0]) {
                return Err(CurveError::InvalidSamples(
                    "parameter values must be strictly increasing".into(),
                ));
            }
        }
        let finite = |v: &[f64]| v.iter().all(|c| c.is_finite());
        if !(finite(&u) && finite(&x1) && finite(&x2) && finite(&r)) {
            return Err(CurveError::InvalidSamples("non-finite sample value".into()));
        }
        let stride = window_stride(&u);
        let raw = TabulatedCurve {
            ambient,
            u,
            x1,
            x2,
            r,
            stride,
        };
        raw.reparametrize_by_arc_length()
    }

    /// Number of nodes the post-hoc evaluation grids should keep away from
    /// the table ends, where the interpolation window turns one-sided.
    pub fn interior_margin(&self) -> usize {
        3 * self.stride
    }

    pub fn len(&self) -> usize {
        self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.u[0], *self.u.last().unwrap())
    }

    pub fn columns(&self) -> (&[f64], &[f64], &[f64], &[f64]) {
        (&self.u, &self.x1, &self.x2, &self.r)
    }

    pub(super) fn jet(&self, u: f64) -> Result<CurveJet, CurveError> {
        let (s, n) = (self.stride, self.u.len());
        let span = 6 * s;
        let center = self.u.partition_point(|&x| x < u);
        let start = center.saturating_sub(3 * s).min(n - 1 - span);
        let idx: Vec<usize> = (0..INTERP_POINTS).map(|i| start + i * s).collect();
        let pick = |col: &[f64]| -> Vec<f64> { idx.iter().map(|&i| col[i]).collect() };
        let xs = pick(&self.u);
        let j1 = poly_jet3(&xs, &pick(&self.x1), u);
        let j2 = poly_jet3(&xs, &pick(&self.x2), u);
        let jr = poly_jet3(&xs, &pick(&self.r), u);
        Ok(CurveJet {
            u,
            p: V3::new(j1[0], j2[0], jr[0]),
            d1: V3::new(j1[1], j2[1], jr[1]),
            d2: V3::new(j1[2], j2[2], jr[2]),
            d3: V3::new(j1[3], j2[3], jr[3]),
        })
    }

    fn speed(&self, u: f64) -> f64 {
        let jet = self.jet(u).expect("interior evaluation");
        self.ambient.inner3(jet.d1, jet.d1).abs().sqrt()
    }

    /// Returns a table parametrized by arc length. Tables that are already
    /// unit-speed within [`UNIT_SPEED_SKIP`] are passed through untouched so
    /// constructor output keeps its exact node values.
    fn reparametrize_by_arc_length(self) -> Result<TabulatedCurve, CurveError> {
        let n = self.u.len();
        let mut max_residual: f64 = 0.0;
        for &u in &self.u {
            let jet = self.jet(u)?;
            max_residual = max_residual.max((self.ambient.inner3(jet.d1, jet.d1) - 1.0).abs());
        }
        if max_residual <= UNIT_SPEED_SKIP {
            return Ok(self);
        }

        // Cumulative arc length at the original nodes.
        let mut s = Vec::with_capacity(n);
        s.push(0.0);
        for i in 1..n {
            let seg = adaptive_simpson(&|t| self.speed(t), self.u[i - 1], self.u[i], ARCLEN_TOL);
            if !(seg > 0.0) {
                return Err(CurveError::InvalidSamples(format!(
                    "non-positive arc length over [{}, {}]",
                    self.u[i - 1],
                    self.u[i]
                )));
            }
            s.push(s[i - 1] + seg);
        }
        let total = *s.last().unwrap();

        // Invert s(u) on an even arc-length grid by bisection + Newton,
        // keeping the original parameter origin.
        let u0 = self.u[0];
        let arc_targets: Vec<f64> = (0..n).map(|j| total * j as f64 / (n - 1) as f64).collect();
        let new_params: Vec<f64> = arc_targets.iter().map(|s| u0 + s).collect();
        let mut new_u = Vec::with_capacity(n);
        for (j, &target) in arc_targets.iter().enumerate() {
            if j == 0 {
                new_u.push(self.u[0]);
                continue;
            }
            if j == n - 1 {
                new_u.push(*self.u.last().unwrap());
                continue;
            }
            let k = s.partition_point(|&v| v < target).clamp(1, n - 1);
            let (mut lo, mut hi) = (self.u[k - 1], self.u[k]);
            let base = s[k - 1];
            let mut mid = 0.5 * (lo + hi);
            for _ in 0..80 {
                let val = base + adaptive_simpson(&|t| self.speed(t), self.u[k - 1], mid, ARCLEN_TOL)
                    - target;
                if val.abs() <= 1e-13 * (1.0 + total) {
                    break;
                }
                if val > 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
                let newton = mid - val / self.speed(mid);
                mid = if newton > lo && newton < hi {
                    newton
                } else {
                    0.5 * (lo + hi)
                };
            }
            new_u.push(mid);
        }

        let mut x1 = Vec::with_capacity(n);
        let mut x2 = Vec::with_capacity(n);
        let mut r = Vec::with_capacity(n);
        for &u in &new_u {
            let jet = self.jet(u)?;
            x1.push(jet.p.x1);
            x2.push(jet.p.x2);
            r.push(jet.p.r);
        }
        let stride = window_stride(&new_params);
        Ok(TabulatedCurve {
            ambient: self.ambient,
            u: new_params,
            x1,
            x2,
            r,
            stride,
        })
    }
}

/// Stride bringing the interpolation-window spacing near [`TARGET_SPACING`],
/// clamped so seven strided nodes always fit in the table.
fn window_stride(u: &[f64]) -> usize {
    let n = u.len();
    let median = (u[n - 1] - u[0]) / (n - 1) as f64;
    let max_stride = (n - 1) / (INTERP_POINTS - 1);
    ((TARGET_SPACING / median).round() as usize).clamp(1, max_stride.max(1))
}
