//! The profile-spec document format: a JSON description of a profile curve,
//! either as a named analytic family with parameters or as a sample table.
//!
//! ```json
//! { "ambient": "hyperbolic",
//!   "source": { "family": "mink-pseudocircle", "params": { "a": 1.0 } },
//!   "domain": [-1.2, 1.2] }
//! ```
//!
//! ```json
//! { "ambient": "elliptic",
//!   "source": { "samples": { "u": [...], "x1": [...], "x2": [...], "r": [...] } },
//!   "domain": [0.0, 2.0] }
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Ambient, CurveError, Family, ProfileCurve};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProfileSpec {
    pub ambient: Ambient,
    pub source: SourceSpec,
    pub domain: [f64; 2],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SourceSpec {
    Family {
        family: String,
        #[serde(default)]
        params: BTreeMap<String, f64>,
    },
    Samples { samples: SampleColumns },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SampleColumns {
    pub u: Vec<f64>,
    pub x1: Vec<f64>,
    pub x2: Vec<f64>,
    pub r: Vec<f64>,
}

impl ProfileSpec {
    pub fn build(&self) -> Result<ProfileCurve, CurveError> {
        let domain = (self.domain[0], self.domain[1]);
        match &self.source {
            SourceSpec::Family { family, params } => {
                let fam = Family::from_params(family, params)?;
                ProfileCurve::from_family(self.ambient, fam, domain)
            }
            SourceSpec::Samples { samples } => {
                let curve = ProfileCurve::from_samples(
                    self.ambient,
                    samples.u.clone(),
                    samples.x1.clone(),
                    samples.x2.clone(),
                    samples.r.clone(),
                )?;
                // The stated domain may shrink the table's natural one.
                let (lo, hi) = curve.domain();
                if domain.0 < lo - 1e-9 || domain.1 > hi + 1e-9 {
                    return Err(CurveError::InvalidSamples(format!(
                        "declared domain [{}, {}] exceeds the sample range [{lo}, {hi}]",
                        domain.0, domain.1
                    )));
                }
                Ok(curve)
            }
        }
    }

    /// Serializes a profile back into the document format.
    pub fn from_curve(curve: &ProfileCurve) -> ProfileSpec {
        let source = if let Some(fam) = curve.family() {
            SourceSpec::Family {
                family: fam.name().to_string(),
                params: fam.params(),
            }
        } else {
            let (u, x1, x2, r) = curve.table().unwrap().columns();
            SourceSpec::Samples {
                samples: SampleColumns {
                    u: u.to_vec(),
                    x1: x1.to_vec(),
                    x2: x2.to_vec(),
                    r: r.to_vec(),
                },
            }
        };
        let (lo, hi) = curve.domain();
        ProfileSpec {
            ambient: curve.ambient(),
            source,
            domain: [lo, hi],
        }
    }
}

/// Parses a profile-spec document.
pub fn profile_from_json(text: &str) -> Result<ProfileCurve, CurveError> {
    let spec: ProfileSpec =
        serde_json::from_str(text).map_err(|e| CurveError::InvalidSamples(e.to_string()))?;
    spec.build()
}

/// Renders a profile as a profile-spec document.
pub fn profile_to_json(curve: &ProfileCurve) -> String {
    serde_json::to_string_pretty(&ProfileSpec::from_curve(curve)).expect("profile serialization")
}
