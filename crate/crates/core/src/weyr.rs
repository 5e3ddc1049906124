//! The Weyr characteristic `(W, r*, s*)` of a pencil.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{LabError, Result};
use crate::partition::{Partition, StarPartition};
use crate::pencil::EigenvalueLabel;

/// Regular part: eigenvalue to Weyr partition `w(λ)`. Only nonzero partitions are kept.
pub type RegularPart = BTreeMap<EigenvalueLabel, Partition>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeyrCharacteristic {
    regular: RegularPart,
    col_star: StarPartition,
    row_star: StarPartition,
}

impl WeyrCharacteristic {
    pub fn new(regular: RegularPart, col_star: StarPartition, row_star: StarPartition) -> Self {
        let regular = regular.into_iter().filter(|(_, w)| !w.is_zero()).collect();
        WeyrCharacteristic {
            regular,
            col_star,
            row_star,
        }
    }

    pub fn regular(&self) -> &RegularPart {
        &self.regular
    }

    /// `w(λ)`, the zero partition off the spectrum.
    pub fn w(&self, lambda: &EigenvalueLabel) -> Partition {
        self.regular.get(lambda).cloned().unwrap_or_default()
    }

    pub fn col_star(&self) -> &StarPartition {
        &self.col_star
    }

    pub fn row_star(&self) -> &StarPartition {
        &self.row_star
    }

    pub fn spectrum(&self) -> impl Iterator<Item = &EigenvalueLabel> {
        self.regular.keys()
    }

    /// `|W|`, the sum of all regular weights.
    pub fn regular_weight(&self) -> usize {
        self.regular.values().map(Partition::weight).sum()
    }

    /// Normal rank `|W| + |r| + |s|`.
    pub fn rank(&self) -> usize {
        self.regular_weight() + self.col_star.tail().weight() + self.row_star.tail().weight()
    }

    /// Ambient `(m, n) = (rank + s0, rank + r0)`.
    pub fn dims(&self) -> (usize, usize) {
        let rho = self.rank();
        (rho + self.row_star.zeroth(), rho + self.col_star.zeroth())
    }

    /// The characteristic of the transposed pencil: `r*` and `s*` swapped.
    pub fn transpose(&self) -> Self {
        WeyrCharacteristic {
            regular: self.regular.clone(),
            col_star: self.row_star.clone(),
            row_star: self.col_star.clone(),
        }
    }

    pub fn with_regular(&self, regular: RegularPart) -> Self {
        WeyrCharacteristic::new(regular, self.col_star.clone(), self.row_star.clone())
    }

    pub fn with_col_star(&self, col_star: StarPartition) -> Self {
        WeyrCharacteristic {
            col_star,
            ..self.clone()
        }
    }

    pub fn with_row_star(&self, row_star: StarPartition) -> Self {
        WeyrCharacteristic {
            row_star,
            ..self.clone()
        }
    }

    /// `Σ_λ z_1(λ)`, where `z_1(λ) = #{i : w_i(λ) >= 1}` is the largest partial multiplicity.
    pub fn total_z1(&self) -> usize {
        self.regular.values().map(Partition::len).sum()
    }
}

impl fmt::Display for WeyrCharacteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .regular
            .iter()
            .map(|(l, w)| format!("w({l})={w}"))
            .collect();
        parts.push(format!("r*={}", self.col_star));
        parts.push(format!("s*={}", self.row_star));
        write!(f, "{{{}}}", parts.join("; "))
    }
}

#[derive(Serialize, Deserialize)]
struct RegularEntry {
    lambda: EigenvalueLabel,
    weyr: Partition,
}

#[derive(Serialize, Deserialize)]
struct WeyrRepr {
    regular: Vec<RegularEntry>,
    r_star: StarPartition,
    s_star: StarPartition,
}

impl Serialize for WeyrCharacteristic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WeyrRepr {
            regular: regular_to_entries(&self.regular),
            r_star: self.col_star.clone(),
            s_star: self.row_star.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeyrCharacteristic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = WeyrRepr::deserialize(d)?;
        let regular = regular_from_entries(r.regular).map_err(serde::de::Error::custom)?;
        Ok(WeyrCharacteristic::new(regular, r.r_star, r.s_star))
    }
}

fn regular_to_entries(regular: &RegularPart) -> Vec<RegularEntry> {
    regular
        .iter()
        .map(|(l, w)| RegularEntry {
            lambda: l.clone(),
            weyr: w.clone(),
        })
        .collect()
}

fn regular_from_entries(entries: Vec<RegularEntry>) -> Result<RegularPart> {
    let mut out = RegularPart::new();
    for e in entries {
        if out.insert(e.lambda.clone(), e.weyr).is_some() {
            return Err(LabError::input(format!(
                "eigenvalue {} listed twice",
                e.lambda
            )));
        }
    }
    Ok(out.into_iter().filter(|(_, w)| !w.is_zero()).collect())
}

/// Serializes a bare regular part in the same `[{"lambda", "weyr"}]` form.
pub fn regular_to_json(regular: &RegularPart) -> serde_json::Value {
    serde_json::to_value(regular_to_entries(regular)).expect("plain data")
}

pub fn regular_from_json(value: serde_json::Value) -> Result<RegularPart> {
    let entries: Vec<RegularEntry> = serde_json::from_value(value)?;
    regular_from_entries(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat_frac;

    #[test]
    fn json_shape_and_ordering() {
        let mut reg = RegularPart::new();
        reg.insert(EigenvalueLabel::Infinity, Partition::new(vec![1]).unwrap());
        reg.insert(
            EigenvalueLabel::Finite(rat_frac(3, 2)),
            Partition::new(vec![2, 1]).unwrap(),
        );
        reg.insert(EigenvalueLabel::int(0), Partition::new(vec![2]).unwrap());
        reg.insert(EigenvalueLabel::int(5), Partition::zero());
        let w = WeyrCharacteristic::new(
            reg,
            StarPartition::from_sequence(&[1, 1]).unwrap(),
            StarPartition::default(),
        );
        let text = serde_json::to_string(&w).unwrap();
        assert_eq!(
            text,
            concat!(
                r#"{"regular":[{"lambda":"0","weyr":[2]},{"lambda":"3/2","weyr":[2,1]},{"lambda":"inf","weyr":[1]}],"#,
                r#""r_star":{"zeroth":1,"tail":[1]},"s_star":{"zeroth":0,"tail":[]}}"#
            )
        );
        let back: WeyrCharacteristic = serde_json::from_str(&text).unwrap();
        assert_eq!(back, w);
        assert_eq!(w.rank(), 7);
        assert_eq!(w.dims(), (7, 8));
    }

    #[test]
    fn rejects_bad_json() {
        let dup = r#"{"regular":[{"lambda":"0","weyr":[1]},{"lambda":"0","weyr":[2]}],
                      "r_star":{"zeroth":0,"tail":[]},"s_star":{"zeroth":0,"tail":[]}}"#;
        assert!(serde_json::from_str::<WeyrCharacteristic>(dup).is_err());
        let bad_star =
            r#"{"regular":[],"r_star":{"zeroth":0,"tail":[1]},"s_star":{"zeroth":0,"tail":[]}}"#;
        assert!(serde_json::from_str::<WeyrCharacteristic>(bad_star).is_err());
        let unsorted = r#"{"regular":[{"lambda":"0","weyr":[1,2]}],"r_star":{"zeroth":0,"tail":[]},"s_star":{"zeroth":0,"tail":[]}}"#;
        assert!(serde_json::from_str::<WeyrCharacteristic>(unsorted).is_err());
    }
}
