use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

/// A non-negative integer or `+inf`.
///
/// Used for bounds (where `min*` of an empty list is unbounded), girth of
/// acyclic graphs and diameter of disconnected graphs. Serializes as a JSON
/// number or the string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Extended {
    Finite(u64),
    Infinite,
}

impl Extended {
    pub fn is_finite(self) -> bool {
        matches!(self, Extended::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Extended::Finite(v) => Some(v),
            Extended::Infinite => None,
        }
    }
}

impl From<u64> for Extended {
    fn from(v: u64) -> Self {
        Extended::Finite(v)
    }
}

impl From<Option<u64>> for Extended {
    fn from(v: Option<u64>) -> Self {
        v.map_or(Extended::Infinite, Extended::Finite)
    }
}

impl PartialOrd for Extended {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Extended {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Extended::Finite(a), Extended::Finite(b)) => a.cmp(b),
            (Extended::Finite(_), Extended::Infinite) => Ordering::Less,
            (Extended::Infinite, Extended::Finite(_)) => Ordering::Greater,
            (Extended::Infinite, Extended::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialEq<u64> for Extended {
    fn eq(&self, other: &u64) -> bool {
        *self == Extended::Finite(*other)
    }
}

impl PartialOrd<u64> for Extended {
    fn partial_cmp(&self, other: &u64) -> Option<Ordering> {
        Some(self.cmp(&Extended::Finite(*other)))
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(v) => write!(f, "{v}"),
            Extended::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Extended {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Extended::Finite(v) => serializer.serialize_u64(*v),
            Extended::Infinite => serializer.serialize_str("inf"),
        }
    }
}
