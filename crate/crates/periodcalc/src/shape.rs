//! Archimedean shape of a CM field: places, a distinguished place, and
//! embeddings.
//!
//! A CM field of degree `2d` has `d` archimedean places; each place carries an
//! ordered pair of conjugate complex embeddings. The engine only ever needs
//! the labels of the places, the flag selecting the first member of each
//! conjugate pair, and (for descent constructions) one distinguished place
//! `v0`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Index of an archimedean place (0-based into the place list).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PlaceId(pub usize);

/// A complex embedding: a place together with a conjugation flag.
///
/// `barred = false` selects the embedding belonging to the fixed CM type Σ.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Embedding {
    pub place: PlaceId,
    pub barred: bool,
}

impl Embedding {
    pub fn unbarred(place: PlaceId) -> Self {
        Embedding { place, barred: false }
    }

    pub fn barred(place: PlaceId) -> Self {
        Embedding { place, barred: true }
    }

    pub fn conjugate(self) -> Self {
        Embedding {
            place: self.place,
            barred: !self.barred,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ShapeError {
    #[error("a CM shape needs at least one archimedean place")]
    Empty,
    #[error("duplicate place label `{0}`")]
    DuplicateLabel(String),
    #[error("more than one place marked v0")]
    MultipleDistinguished,
    #[error("place index {0} out of range (d = {1})")]
    PlaceOutOfRange(usize, usize),
}

/// The archimedean layout: `d` labelled places, at most one marked `v0`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CMShape {
    labels: Vec<String>,
    v0: Option<PlaceId>,
}

impl CMShape {
    pub fn new(labels: Vec<String>, v0: Option<usize>) -> Result<Self, ShapeError> {
        if labels.is_empty() {
            return Err(ShapeError::Empty);
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(ShapeError::DuplicateLabel(l.clone()));
            }
        }
        if let Some(ix) = v0 {
            if ix >= labels.len() {
                return Err(ShapeError::PlaceOutOfRange(ix, labels.len()));
            }
        }
        Ok(CMShape {
            labels,
            v0: v0.map(PlaceId),
        })
    }

    /// Shape with places `v0, v1, …` and the first one distinguished.
    pub fn with_default_labels(d: usize) -> Self {
        let labels = (0..d).map(|i| format!("v{i}")).collect();
        CMShape {
            labels,
            v0: Some(PlaceId(0)),
        }
    }

    pub fn d(&self) -> usize {
        self.labels.len()
    }

    pub fn places(&self) -> impl Iterator<Item = PlaceId> + '_ {
        (0..self.labels.len()).map(PlaceId)
    }

    pub fn label(&self, place: PlaceId) -> &str {
        &self.labels[place.0]
    }

    pub fn v0(&self) -> Option<PlaceId> {
        self.v0
    }

    /// The distinguished place, defaulting to the first one.
    pub fn v0_or_first(&self) -> PlaceId {
        self.v0.unwrap_or(PlaceId(0))
    }

    /// All embeddings of the CM type Σ (one unbarred embedding per place).
    pub fn sigma(&self) -> Vec<Embedding> {
        self.places().map(Embedding::unbarred).collect()
    }

    /// All conjugate embeddings Σ̄.
    pub fn sigma_bar(&self) -> Vec<Embedding> {
        self.places().map(Embedding::barred).collect()
    }

    pub fn describe_embedding(&self, e: Embedding) -> String {
        if e.barred {
            format!("~{}", self.label(e.place))
        } else {
            self.label(e.place).to_string()
        }
    }
}

impl fmt::Display for CMShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d={} places=[", self.d())?;
        for (i, l) in self.labels.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{l}")?;
            if self.v0 == Some(PlaceId(i)) {
                write!(f, "*")?;
            }
        }
        write!(f, "]")
    }
}
