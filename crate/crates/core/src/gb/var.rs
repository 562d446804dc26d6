use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Structured variable identifiers.
///
/// * `Basis`: `x<block>_<index>`, one variable per basis (block 1) or per
///   duplicated basis (block 2) of a single matroid.
/// * `Pair`: `z<block>_<j>_<k>`, pairs of bases from two matroids.
/// * `Elim`: `s<row>`, auxiliary variables of the elimination oracle.
///
/// The derived order is (kind, block, indices).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VariableId {
    Basis { block: u8, index: u32 },
    Pair { block: u8, j: u32, k: u32 },
    Elim(u32),
}

impl VariableId {
    pub fn x(block: u8, index: usize) -> Self {
        VariableId::Basis {
            block,
            index: index as u32,
        }
    }

    pub fn z(block: u8, j: usize, k: usize) -> Self {
        VariableId::Pair {
            block,
            j: j as u32,
            k: k as u32,
        }
    }

    pub fn s(row: usize) -> Self {
        VariableId::Elim(row as u32)
    }

    pub fn is_elim(self) -> bool {
        matches!(self, VariableId::Elim(_))
    }
}

impl fmt::Display for VariableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            VariableId::Basis { block, index } => write!(f, "x{block}_{index}"),
            VariableId::Pair { block, j, k } => write!(f, "z{block}_{j}_{k}"),
            VariableId::Elim(r) => write!(f, "s{r}"),
        }
    }
}

impl fmt::Debug for VariableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed variable name {0:?}")]
pub struct VariableParseError(pub String);

impl FromStr for VariableId {
    type Err = VariableParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || VariableParseError(s.to_string());
        let (kind, rest) = s.split_at_checked(1).ok_or_else(err)?;
        let nums: Vec<u32> = rest
            .split('_')
            .map(|p| {
                if p.is_empty() || !p.bytes().all(|b| b.is_ascii_digit()) {
                    Err(err())
                } else {
                    p.parse().map_err(|_| err())
                }
            })
            .collect::<Result<_, _>>()?;
        let block = |b: u32| u8::try_from(b).map_err(|_| err());
        match (kind, nums.as_slice()) {
            ("x", &[b, index]) => Ok(VariableId::Basis {
                block: block(b)?,
                index,
            }),
            ("z", &[b, j, k]) => Ok(VariableId::Pair {
                block: block(b)?,
                j,
                k,
            }),
            ("s", &[r]) => Ok(VariableId::Elim(r)),
            _ => Err(err()),
        }
    }
}

impl Serialize for VariableId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for VariableId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for v in [VariableId::x(2, 17), VariableId::z(1, 3, 10), VariableId::s(4)] {
            assert_eq!(v.to_string().parse::<VariableId>().unwrap(), v);
        }
        assert_eq!(VariableId::x(1, 3).to_string(), "x1_3");
        assert_eq!(VariableId::z(2, 1, 4).to_string(), "z2_1_4");
        assert_eq!(VariableId::s(7).to_string(), "s7");
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "x", "x1", "x1_", "y1_2", "z1_2", "s", "x1_-2", "x999_1"] {
            assert!(bad.parse::<VariableId>().is_err(), "{bad}");
        }
    }
}
