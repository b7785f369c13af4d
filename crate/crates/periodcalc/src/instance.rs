//! On-disk instance format.
//!
//! Instances are JSON documents; every half-integer travels as its doubled
//! integer value, which keeps the encoding bit-exact. A document names the
//! archimedean shape (`d`, `places`), the rank data, and one or two spectra:
//! either explicit exponent lists / highest weights for a pair, or a
//! Harish-Chandra parameter with a descent index `q`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::descent::pi_prime_infinity_type;
use crate::shape::{CMShape, ShapeError};
use crate::spectral::{
    infinity_type_from_weight, HCParameter, HighestWeight, InfinityType, SpectralError,
    WeightAtPlace,
};

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Descent(#[from] crate::descent::DescentError),
    #[error("places list has {got} entries but d = {d}")]
    PlaceCount { got: usize, d: usize },
    #[error("representation data needs exactly one of `highest_weights` or `infinity_types_doubled`")]
    AmbiguousRepData,
    #[error("instance provides both `pi_prime` and `hc_parameter_doubled`; exactly one pair source is allowed")]
    BothPairSources,
    #[error("missing field: {0}")]
    Missing(&'static str),
    #[error("`{field}` has {got} per-place entries but d = {d}")]
    PerPlaceCount {
        field: &'static str,
        got: usize,
        d: usize,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PlaceSpec {
    pub label: String,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub v0: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, Default)]
pub struct RepSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub highest_weights: Option<Vec<WeightSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub infinity_types_doubled: Option<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WeightSpec {
    pub iota: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bar: Option<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceOptions {
    /// Accept parameters below the regularity gate, with a warning.
    #[serde(default)]
    pub allow_irregular: bool,
    /// Rationality of archimedean pairings (on by default).
    #[serde(default = "default_true")]
    pub lvarch: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
}

fn default_true() -> bool {
    true
}

impl Default for InstanceOptions {
    fn default() -> Self {
        InstanceOptions {
            allow_irregular: false,
            lvarch: true,
            seed: None,
            format: None,
        }
    }
}

/// Raw document as stored on disk.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceFile {
    pub d: usize,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_prime: Option<usize>,
    #[serde(default)]
    pub places: Vec<PlaceSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi: Option<RepSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi_prime: Option<RepSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hc_parameter_doubled: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
    #[serde(default)]
    pub options: InstanceOptions,
}

/// Validated instance with resolved spectra.
#[derive(Clone, Debug)]
pub struct Instance {
    pub shape: CMShape,
    pub n: usize,
    pub n_prime: Option<usize>,
    pub pi: Option<InfinityType>,
    pub pi_prime: Option<InfinityType>,
    pub hc: Option<HCParameter>,
    pub q: Option<usize>,
    pub options: InstanceOptions,
}

fn resolve_rep(spec: &RepSpec, n: usize, d: usize) -> Result<InfinityType, InstanceError> {
    match (&spec.highest_weights, &spec.infinity_types_doubled) {
        (Some(weights), None) => {
            if weights.len() != d {
                return Err(InstanceError::PerPlaceCount {
                    field: "highest_weights",
                    got: weights.len(),
                    d,
                });
            }
            let per_place = weights
                .iter()
                .map(|w| WeightAtPlace {
                    iota: w.iota.clone(),
                    bar: w.bar.clone().unwrap_or_else(|| w.iota.clone()),
                })
                .collect();
            let mu = HighestWeight::new(n, per_place)?;
            Ok(infinity_type_from_weight(&mu)?)
        }
        (None, Some(doubled)) => {
            if doubled.len() != d {
                return Err(InstanceError::PerPlaceCount {
                    field: "infinity_types_doubled",
                    got: doubled.len(),
                    d,
                });
            }
            Ok(InfinityType::from_doubled(n, doubled.clone())?)
        }
        _ => Err(InstanceError::AmbiguousRepData),
    }
}

impl Instance {
    pub fn from_file(file: &InstanceFile) -> Result<Instance, InstanceError> {
        let shape = if file.places.is_empty() {
            CMShape::with_default_labels(file.d)
        } else {
            if file.places.len() != file.d {
                return Err(InstanceError::PlaceCount {
                    got: file.places.len(),
                    d: file.d,
                });
            }
            let v0 = file.places.iter().position(|p| p.v0);
            CMShape::new(file.places.iter().map(|p| p.label.clone()).collect(), v0)?
        };
        if file.pi_prime.is_some() && file.hc_parameter_doubled.is_some() {
            return Err(InstanceError::BothPairSources);
        }
        let pi = file
            .pi
            .as_ref()
            .map(|spec| resolve_rep(spec, file.n, file.d))
            .transpose()?;
        let pi_prime = match (&file.pi_prime, file.n_prime) {
            (Some(spec), Some(np)) => Some(resolve_rep(spec, np, file.d)?),
            (Some(_), None) => return Err(InstanceError::Missing("n_prime")),
            (None, _) => None,
        };
        let hc = file
            .hc_parameter_doubled
            .as_ref()
            .map(|rows| {
                if rows.len() != file.d {
                    return Err(InstanceError::PerPlaceCount {
                        field: "hc_parameter_doubled",
                        got: rows.len(),
                        d: file.d,
                    });
                }
                HCParameter::from_doubled(file.n, rows.clone()).map_err(InstanceError::from)
            })
            .transpose()?;
        Ok(Instance {
            shape,
            n: file.n,
            n_prime: file.n_prime,
            pi,
            pi_prime,
            hc,
            q: file.q,
            options: file.options.clone(),
        })
    }

    pub fn from_json_str(s: &str) -> Result<Instance, InstanceError> {
        let file: InstanceFile = serde_json::from_str(s)?;
        Instance::from_file(&file)
    }

    /// The exponent pair `(a, b)`: explicit when both spectra are given,
    /// otherwise derived from the parameter and descent index.
    pub fn pair(&self) -> Result<(InfinityType, InfinityType), InstanceError> {
        if let (Some(a), Some(b)) = (&self.pi, &self.pi_prime) {
            return Ok((a.clone(), b.clone()));
        }
        if let Some(hc) = &self.hc {
            let q = self.q.ok_or(InstanceError::Missing("q"))?;
            let a = crate::period::replay::infinity_type_of_parameter(hc)
                .map_err(|_| InstanceError::Missing("hc_parameter_doubled"))?;
            let b = pi_prime_infinity_type(hc, q, self.shape.v0_or_first())?;
            return Ok((a, b));
        }
        Err(InstanceError::Missing("pi_prime or hc_parameter_doubled"))
    }

    pub fn require_hc(&self) -> Result<(&HCParameter, usize), InstanceError> {
        let hc = self
            .hc
            .as_ref()
            .ok_or(InstanceError::Missing("hc_parameter_doubled"))?;
        let q = self.q.ok_or(InstanceError::Missing("q"))?;
        Ok((hc, q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pair_instance() {
        let text = r#"{
            "d": 1,
            "n": 3,
            "n_prime": 2,
            "places": [{"label": "v0", "v0": true}],
            "pi": {"infinity_types_doubled": [[8, 0, -8]]},
            "pi_prime": {"infinity_types_doubled": [[7, 1]]}
        }"#;
        let inst = Instance::from_json_str(text).unwrap();
        let (a, b) = inst.pair().unwrap();
        assert_eq!(a.n, 3);
        assert_eq!(b.n, 2);
        assert!(inst.options.lvarch);
    }

    #[test]
    fn parses_descent_instance_and_derives_pair() {
        let text = r#"{
            "d": 1,
            "n": 3,
            "hc_parameter_doubled": [[14, 0, -14]],
            "q": 1
        }"#;
        let inst = Instance::from_json_str(text).unwrap();
        let (a, b) = inst.pair().unwrap();
        assert_eq!(a.n, 3);
        assert_eq!(b.per_place[0][0].doubled(), 13);
    }

    #[test]
    fn rejects_double_pair_source() {
        let text = r#"{
            "d": 1,
            "n": 3,
            "n_prime": 2,
            "pi_prime": {"infinity_types_doubled": [[7, 1]]},
            "hc_parameter_doubled": [[14, 0, -14]],
            "q": 1
        }"#;
        assert!(matches!(
            Instance::from_json_str(text),
            Err(InstanceError::BothPairSources)
        ));
    }

    #[test]
    fn weight_input_resolves_through_conversion() {
        let text = r#"{
            "d": 1,
            "n": 3,
            "pi": {"highest_weights": [{"iota": [2, 0, -2]}]}
        }"#;
        let inst = Instance::from_json_str(text).unwrap();
        let a = inst.pi.unwrap();
        let doubled: Vec<i64> = a.per_place[0].iter().map(|h| h.doubled()).collect();
        assert_eq!(doubled, vec![6, 0, -6]);
    }
}
