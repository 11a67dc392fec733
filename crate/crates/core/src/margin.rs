//! Truncation margins.
//!
//! Every finite check of a statement about an infinite structure is labeled:
//! `Exact` when the truncation provably decides it, `SoundOnly` when a
//! witness could have been lost to the truncation (a positive answer is
//! still trustworthy), and `BoundaryExcluded` when the instance does not fit.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Margin {
    Exact,
    SoundOnly,
    BoundaryExcluded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Bounded {
    /// `None` iff the margin is `BoundaryExcluded`.
    pub value: Option<bool>,
    pub margin: Margin,
}

impl Bounded {
    pub fn exact(v: bool) -> Bounded {
        Bounded {
            value: Some(v),
            margin: Margin::Exact,
        }
    }

    pub fn sound_only(v: bool) -> Bounded {
        Bounded {
            value: Some(v),
            margin: Margin::SoundOnly,
        }
    }

    pub fn excluded() -> Bounded {
        Bounded {
            value: None,
            margin: Margin::BoundaryExcluded,
        }
    }

    pub fn is_true(&self) -> bool {
        self.value == Some(true)
    }

    pub fn is_false(&self) -> bool {
        self.value == Some(false)
    }
}
