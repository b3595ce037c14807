//! Shared fixtures for the criterion benchmarks.

use minksurf_core::curve::{Ambient, Family, ProfileCurve};
use minksurf_core::rotational::RotationalSurface;

pub fn pseudocircle_surface() -> RotationalSurface {
    RotationalSurface::new(
        ProfileCurve::from_family(
            Ambient::Hyperbolic,
            Family::MinkPseudocircle { a: 1.0 },
            (-1.2, 1.2),
        )
        .expect("pseudocircle profile"),
    )
}

pub fn helix_surface() -> RotationalSurface {
    RotationalSurface::new(
        ProfileCurve::from_family(
            Ambient::Hyperbolic,
            Family::Helix {
                slope: 0.75,
                omega: 1.0,
                r0: 2.0,
            },
            (-1.0, 1.0),
        )
        .expect("helix profile"),
    )
}
