//! Small numerical kernels shared across the crate: local polynomial
//! differentiation of tabulated data, high-order central stencils, adaptive
//! Simpson quadrature and a fixed-step classical RK4 integrator.

/// Number of nodes used for local polynomial interpolation of tables.
pub const INTERP_POINTS: usize = 7;

/// Value and first three derivatives of the Newton-form interpolant through
/// `(xs[i], ys[i])`, evaluated at `x`.
///
/// The nodes must be distinct; accuracy is that of degree-6 polynomial
/// interpolation, so derivative errors scale like `h^6`, `h^5`, `h^4` for
/// orders 1-3 on tables of spacing `h`.
pub fn poly_jet3(xs: &[f64], ys: &[f64], x: f64) -> [f64; 4] {
    let n = xs.len();
    debug_assert_eq!(n, ys.len());
    debug_assert!(n >= 4);
    // Divided differences in place: coeffs[i] = f[x_0..x_i].
    let mut coeffs = ys.to_vec();
    for order in 1..n {
        for i in (order..n).rev() {
            coeffs[i] = (coeffs[i] - coeffs[i - 1]) / (xs[i] - xs[i - order]);
        }
    }
    // Horner evaluation of the Newton form carrying derivatives.
    let mut val = coeffs[n - 1];
    let (mut d1, mut d2, mut d3) = (0.0, 0.0, 0.0);
    for i in (0..n - 1).rev() {
        let dx = x - xs[i];
        d3 = 3.0 * d2 + dx * d3;
        d2 = 2.0 * d1 + dx * d2;
        d1 = val + dx * d1;
        val = coeffs[i] + dx * val;
    }
    [val, d1, d2, d3]
}

/// Start index of the `len` consecutive nodes of the sorted grid `us`
/// nearest to `u` (clamped at the ends).
pub fn interp_window(us: &[f64], u: f64, len: usize) -> usize {
    debug_assert!(us.len() >= len);
    let pos = us.partition_point(|&x| x < u);
    let half = len / 2;
    pos.saturating_sub(half).min(us.len() - len)
}

/// 4th-order central first derivative on a 5-point stencil.
pub fn d1_central<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) / (12.0 * h)
}

/// 4th-order central second derivative on a 5-point stencil.
pub fn d2_central<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) - f(x - 2.0 * h))
        / (12.0 * h * h)
}

/// Adaptive composite Simpson quadrature of `f` over `[a, b]` to relative
/// tolerance `rel_tol` (with an absolute floor for near-zero integrals).
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel_tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let eps = rel_tol * whole.abs().max(1e-3);
    simpson_rec(f, a, b, fa, fm, fb, whole, eps, 48)
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        left + right + delta / 15.0
    } else {
        simpson_rec(f, a, m, fa, flm, fm, left, eps * 0.5, depth - 1)
            + simpson_rec(f, m, b, fm, frm, fb, right, eps * 0.5, depth - 1)
    }
}

/// Classical fixed-step RK4. Advances `y` from `u0` over `steps` steps of
/// size `h` and hands `(u_i, y_i)` to `record` at every node, including the
/// initial one. Returns the final state.
pub fn rk4<const N: usize, F, R>(
    f: F,
    u0: f64,
    y0: [f64; N],
    h: f64,
    steps: usize,
    mut record: R,
) -> [f64; N]
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
    R: FnMut(usize, f64, &[f64; N]),
{
    let mut y = y0;
    record(0, u0, &y);
    for i in 0..steps {
        let u = u0 + i as f64 * h;
        let k1 = f(u, &y);
        let k2 = f(u + 0.5 * h, &add_scaled(&y, &k1, 0.5 * h));
        let k3 = f(u + 0.5 * h, &add_scaled(&y, &k2, 0.5 * h));
        let k4 = f(u + h, &add_scaled(&y, &k3, h));
        for j in 0..N {
            y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
        record(i + 1, u0 + (i + 1) as f64 * h, &y);
    }
    y
}

#[inline]
fn add_scaled<const N: usize>(y: &[f64; N], k: &[f64; N], s: f64) -> [f64; N] {
    let mut out = *y;
    for j in 0..N {
        out[j] += s * k[j];
    }
    out
}

/// Eigendecomposition of the symmetric matrix `[[a, b], [b, c]]`.
///
/// Returns `((l1, q1), (l2, q2))` with `l1 >= l2` and orthonormal
/// eigenvectors whose first nonzero component is positive.
pub fn sym_eigen2(a: f64, b: f64, c: f64) -> ((f64, [f64; 2]), (f64, [f64; 2])) {
    if b.abs() <= 1e-300 {
        return if a >= c {
            ((a, [1.0, 0.0]), (c, [0.0, 1.0]))
        } else {
            ((c, [0.0, 1.0]), (a, [1.0, 0.0]))
        };
    }
    let mid = 0.5 * (a + c);
    let disc = (0.25 * (a - c) * (a - c) + b * b).sqrt();
    let l1 = mid + disc;
    let l2 = mid - disc;
    // Eigenvector of l1: pick the better-conditioned row of (M - l1 I).
    let v = if (l1 - a).abs() > (l1 - c).abs() {
        [b, l1 - a]
    } else {
        [l1 - c, b]
    };
    let norm = (v[0] * v[0] + v[1] * v[1]).sqrt();
    let mut q1 = [v[0] / norm, v[1] / norm];
    if q1[0] < 0.0 || (q1[0] == 0.0 && q1[1] < 0.0) {
        q1 = [-q1[0], -q1[1]];
    }
    let mut q2 = [-q1[1], q1[0]];
    if q2[0] < 0.0 || (q2[0] == 0.0 && q2[1] < 0.0) {
        q2 = [-q2[0], -q2[1]];
    }
    ((l1, q1), (l2, q2))
}

/// Determinant of the matrix with rows `a, b, c`.
#[inline]
pub fn det3(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> f64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
}
