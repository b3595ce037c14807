//! Indefinite linear algebra in `R^4_1`.
//!
//! Vectors carry coordinates in a fixed orthonormal system `(e1, e2, e3, e4)`
//! with the flat metric `dx1^2 + dx2^2 + dx3^2 - dx4^2`. The Euclidean metric
//! on the same coordinates is provided alongside, since the rotational-surface
//! theory is cross-checked against its `R^4` counterpart.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeric::sym_eigen2;

/// A vector in coordinates `(e1, e2, e3, e4)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec4(pub [f64; 4]);

impl Vec4 {
    pub const ZERO: Vec4 = Vec4([0.0; 4]);

    #[inline]
    pub fn new(x1: f64, x2: f64, x3: f64, x4: f64) -> Self {
        Vec4([x1, x2, x3, x4])
    }

    /// Standard basis vector `e_i`, `i` in `1..=4`.
    pub fn basis(i: usize) -> Self {
        assert!((1..=4).contains(&i), "basis index out of range");
        let mut v = [0.0; 4];
        v[i - 1] = 1.0;
        Vec4(v)
    }

    /// Euclidean norm of the coordinate tuple. Used for residual reporting,
    /// where the indefinite norm would vanish on nonzero vectors.
    #[inline]
    pub fn norm_e(&self) -> f64 {
        dot(*self, *self).sqrt()
    }

    /// 1-norm of the coordinates.
    #[inline]
    pub fn norm_1(&self) -> f64 {
        self.0.iter().map(|c| c.abs()).sum()
    }

    #[inline]
    pub fn scale(&self, s: f64) -> Self {
        Vec4([self.0[0] * s, self.0[1] * s, self.0[2] * s, self.0[3] * s])
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }
}

impl std::ops::Add for Vec4 {
    type Output = Vec4;
    #[inline]
    fn add(self, o: Vec4) -> Vec4 {
        Vec4([
            self.0[0] + o.0[0],
            self.0[1] + o.0[1],
            self.0[2] + o.0[2],
            self.0[3] + o.0[3],
        ])
    }
}

impl std::ops::Sub for Vec4 {
    type Output = Vec4;
    #[inline]
    fn sub(self, o: Vec4) -> Vec4 {
        Vec4([
            self.0[0] - o.0[0],
            self.0[1] - o.0[1],
            self.0[2] - o.0[2],
            self.0[3] - o.0[3],
        ])
    }
}

impl std::ops::Neg for Vec4 {
    type Output = Vec4;
    #[inline]
    fn neg(self) -> Vec4 {
        self.scale(-1.0)
    }
}

impl std::ops::Mul<f64> for Vec4 {
    type Output = Vec4;
    #[inline]
    fn mul(self, s: f64) -> Vec4 {
        self.scale(s)
    }
}

impl std::ops::Index<usize> for Vec4 {
    type Output = f64;
    #[inline]
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// Indefinite inner product `u1 v1 + u2 v2 + u3 v3 - u4 v4`.
#[inline]
pub fn inner(u: Vec4, v: Vec4) -> f64 {
    u.0[0] * v.0[0] + u.0[1] * v.0[1] + u.0[2] * v.0[2] - u.0[3] * v.0[3]
}

/// Euclidean dot product on the same coordinates.
#[inline]
pub fn dot(u: Vec4, v: Vec4) -> f64 {
    u.0[0] * v.0[0] + u.0[1] * v.0[1] + u.0[2] * v.0[2] + u.0[3] * v.0[3]
}

/// Metric of the ambient 4-space a surface lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric4 {
    /// Signature `(+,+,+,-)`.
    Minkowski,
    /// Signature `(+,+,+,+)`.
    Euclidean,
}

impl Metric4 {
    #[inline]
    pub fn inner(&self, u: Vec4, v: Vec4) -> f64 {
        match self {
            Metric4::Minkowski => inner(u, v),
            Metric4::Euclidean => dot(u, v),
        }
    }
}

/// Determinant of the matrix with rows `a, b, c, d`.
pub fn det4(a: Vec4, b: Vec4, c: Vec4, d: Vec4) -> f64 {
    let m = [a.0, b.0, c.0, d.0];
    let minor = |r0: usize, r1: usize, r2: usize, c0: usize, c1: usize, c2: usize| -> f64 {
        m[r0][c0] * (m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1])
            - m[r0][c1] * (m[r1][c0] * m[r2][c2] - m[r1][c2] * m[r2][c0])
            + m[r0][c2] * (m[r1][c0] * m[r2][c1] - m[r1][c1] * m[r2][c0])
    };
    m[0][0] * minor(1, 2, 3, 1, 2, 3) - m[0][1] * minor(1, 2, 3, 0, 2, 3)
        + m[0][2] * minor(1, 2, 3, 0, 1, 3)
        - m[0][3] * minor(1, 2, 3, 0, 1, 2)
}

/// Causal character of a vector with respect to the Minkowski metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CausalClass {
    Spacelike,
    Timelike,
    Lightlike,
}

/// Scale-aware default tolerance for lightlike detection.
#[inline]
pub fn classification_tol(v: Vec4) -> f64 {
    1e-9 * (1.0 + v.norm_1())
}

/// Classifies `v` by the sign of `<v,v>` against `tol >= 0`.
pub fn causal_character(v: Vec4, tol: f64) -> CausalClass {
    debug_assert!(tol >= 0.0);
    let q = inner(v, v);
    if q > tol {
        CausalClass::Spacelike
    } else if q < -tol {
        CausalClass::Timelike
    } else {
        CausalClass::Lightlike
    }
}

/// An orthonormal frame of the normal plane of a spacelike tangent plane.
///
/// The signs `sign_n1 = <n1,n1>` and `sign_n2 = <n2,n2>` are `(+1, -1)` for
/// frames built by [`orthonormal_normal_frame`], `(+1, +1)` in the Euclidean
/// ambient, and `(eps, -eps)` for the closed-form rotational frames.
#[derive(Debug, Clone, Copy)]
pub struct NormalFrame {
    pub n1: Vec4,
    pub n2: Vec4,
    pub sign_n1: f64,
    pub sign_n2: f64,
}

impl NormalFrame {
    /// The sign `<n1,n1>`, conventionally called `epsilon` for Minkowski frames.
    #[inline]
    pub fn epsilon(&self) -> f64 {
        self.sign_n1
    }

    /// Components `(h1, h2)` of a normal vector `w = h1 n1 + h2 n2` in this
    /// frame, using the stated metric.
    pub fn components(&self, metric: Metric4, w: Vec4) -> (f64, f64) {
        (
            self.sign_n1 * metric.inner(w, self.n1),
            self.sign_n2 * metric.inner(w, self.n2),
        )
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FrameError {
    /// The tangent Gram determinant is not positive: the supplied vectors do
    /// not span a nondegenerate spacelike plane.
    #[error("degenerate tangent plane (Gram determinant {det:.3e})")]
    DegenerateTangentPlane { det: f64 },
    /// The induced normal metric is not of the expected signature, which
    /// signals non-spacelike input.
    #[error("normal space is not of the expected signature (eigenvalues {0:.3e}, {1:.3e})")]
    NormalSpaceNotLorentzian(f64, f64),
}

/// Builds the positively oriented orthonormal normal frame of the spacelike
/// plane spanned by `(zu, zv)`, with `n1` spacelike and `n2` timelike.
///
/// The basis completion appends the two standard basis vectors with smallest
/// absolute tangential projection coefficients (ties broken by index), removes
/// their tangential parts, and orthonormalizes the residual pair through the
/// eigendecomposition of its 2x2 normal Gram matrix. The result is a
/// deterministic function of `(zu, zv)`; `n2` is flipped if
/// `det(zu, zv, n1, n2) < 0`.
pub fn orthonormal_normal_frame(zu: Vec4, zv: Vec4) -> Result<NormalFrame, FrameError> {
    normal_frame_in(Metric4::Minkowski, zu, zv)
}

/// Euclidean counterpart of [`orthonormal_normal_frame`]: both normals are
/// unit spacelike and the quadruple `(zu, zv, n1, n2)` is positively oriented.
pub fn euclidean_normal_frame(zu: Vec4, zv: Vec4) -> Result<NormalFrame, FrameError> {
    normal_frame_in(Metric4::Euclidean, zu, zv)
}

fn normal_frame_in(metric: Metric4, zu: Vec4, zv: Vec4) -> Result<NormalFrame, FrameError> {
    let e = metric.inner(zu, zu);
    let f = metric.inner(zu, zv);
    let g = metric.inner(zv, zv);
    let gram_det = e * g - f * f;
    let tol = 1e-12 * (1.0 + e * e + f * f + g * g);
    if gram_det <= tol || e <= 0.0 {
        return Err(FrameError::DegenerateTangentPlane { det: gram_det });
    }

    // Tangential projection coefficients of w: solve [E F; F G] (a, b)^T = rhs.
    let tangential = |w: Vec4| -> (f64, f64) {
        let p = metric.inner(w, zu);
        let q = metric.inner(w, zv);
        ((g * p - f * q) / gram_det, (e * q - f * p) / gram_det)
    };

    let mut scored: Vec<(f64, usize)> = (1..=4)
        .map(|i| {
            let (a, b) = tangential(Vec4::basis(i));
            (a.abs() + b.abs(), i)
        })
        .collect();
    scored.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let residual = |i: usize| -> Vec4 {
        let w = Vec4::basis(i);
        let (a, b) = tangential(w);
        w - zu.scale(a) - zv.scale(b)
    };
    // Walk candidates in score order; each completion vector must leave a
    // residual (Euclidean-)independent of what was already collected.
    let mut picked: Vec<Vec4> = Vec::with_capacity(2);
    for &(_, i) in &scored {
        let w = residual(i);
        let mut rej = w;
        for p in &picked {
            rej = rej - p.scale(dot(rej, *p) / dot(*p, *p));
        }
        if dot(rej, rej) > 1e-12 * (1.0 + dot(w, w)) {
            picked.push(w);
            if picked.len() == 2 {
                break;
            }
        }
    }
    let [w1, w2] = picked[..] else {
        return Err(FrameError::DegenerateTangentPlane { det: gram_det });
    };

    // Orthonormalize the residual pair through its normal Gram matrix.
    let a = metric.inner(w1, w1);
    let b = metric.inner(w1, w2);
    let c = metric.inner(w2, w2);
    let ((l1, q1), (l2, q2)) = sym_eigen2(a, b, c);
    let sig_tol = 1e-10 * (1.0 + a.abs() + c.abs());
    let combine = |q: [f64; 2]| w1.scale(q[0]) + w2.scale(q[1]);

    let (n1, n2, sign_n2) = match metric {
        Metric4::Minkowski => {
            if l1 <= sig_tol || l2 >= -sig_tol {
                return Err(FrameError::NormalSpaceNotLorentzian(l1, l2));
            }
            (
                combine(q1).scale(1.0 / l1.sqrt()),
                combine(q2).scale(1.0 / (-l2).sqrt()),
                -1.0,
            )
        }
        Metric4::Euclidean => {
            if l1 <= sig_tol || l2 <= sig_tol {
                return Err(FrameError::NormalSpaceNotLorentzian(l1, l2));
            }
            (
                combine(q1).scale(1.0 / l1.sqrt()),
                combine(q2).scale(1.0 / l2.sqrt()),
                1.0,
            )
        }
    };

    let n2 = if det4(zu, zv, n1, n2) < 0.0 { -n2 } else { n2 };
    Ok(NormalFrame {
        n1,
        n2,
        sign_n1: 1.0,
        sign_n2,
    })
}
