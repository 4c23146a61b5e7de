use serde::{Deserialize, Serialize};

use super::{EnriquesModel, RootLabel, RANK};
use crate::error::{Error, Result};
use crate::lattice::{parse_rational, GramMatrix, LatticeVector};

/// JSON layout of a model: basis order, the 20 labelled classes with
/// rational coordinates as strings, `H`, and the 20×20 pairing table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelDocument {
    pub basis: Vec<RootLabel>,
    pub classes: Vec<ClassEntry>,
    pub quasi_polarization: Vec<String>,
    pub gram20: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub label: RootLabel,
    pub coords: Vec<String>,
}

fn strings(v: &LatticeVector) -> Vec<String> {
    v.coords().iter().map(ToString::to_string).collect()
}

fn vector(coords: &[String]) -> Result<LatticeVector> {
    if coords.len() != RANK {
        return Err(Error::DimensionMismatch { expected: RANK, found: coords.len() });
    }
    coords.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>>>().map(LatticeVector::new)
}

impl ModelDocument {
    pub fn from_model(m: &EnriquesModel) -> Self {
        Self {
            basis: m.basis_order().to_vec(),
            classes: RootLabel::ALL
                .iter()
                .map(|&label| ClassEntry { label, coords: strings(m.class_vector(label)) })
                .collect(),
            quasi_polarization: strings(m.h()),
            gram20: m.gram20().to_vec(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Pretty JSON with one row of the pairing table per line.
    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n");
        out += &format!("  \"basis\": {},\n", serde_json::to_string(&self.basis).expect("labels serialize"));
        out += "  \"classes\": [\n";
        for (k, c) in self.classes.iter().enumerate() {
            let sep = if k + 1 == self.classes.len() { "" } else { "," };
            out += &format!(
                "    {{\"label\": \"{}\", \"coords\": {}}}{sep}\n",
                c.label,
                serde_json::to_string(&c.coords).expect("strings serialize")
            );
        }
        out += "  ],\n";
        out += &format!(
            "  \"quasi_polarization\": {},\n",
            serde_json::to_string(&self.quasi_polarization).expect("strings serialize")
        );
        out += "  \"gram20\": [\n";
        for (k, row) in self.gram20.iter().enumerate() {
            let sep = if k + 1 == self.gram20.len() { "" } else { "," };
            out += &format!("    {}{sep}\n", serde_json::to_string(row).expect("ints serialize"));
        }
        out += "  ]\n}\n";
        out
    }

    /// Structural checks only: labels in canonical order, shapes, and a
    /// symmetric basis block. Content is checked by validation and the table
    /// verification.
    pub fn into_model(self) -> Result<EnriquesModel> {
        if self.basis != RootLabel::ALL[..RANK] {
            return Err(Error::Parse("basis must be E1,E2,E3,E4,E12,E13,E14,E23,E24,E34".into()));
        }
        let labels: Vec<RootLabel> = self.classes.iter().map(|c| c.label).collect();
        if labels != RootLabel::ALL {
            return Err(Error::Parse("classes must list the 20 labels in canonical order".into()));
        }
        if self.gram20.len() != 20 || self.gram20.iter().any(|r| r.len() != 20) {
            return Err(Error::Parse("gram20 must be a 20x20 integer matrix".into()));
        }
        let classes = self.classes.iter().map(|c| vector(&c.coords)).collect::<Result<Vec<_>>>()?;
        let h = vector(&self.quasi_polarization)?;
        let block: Vec<Vec<i64>> = self.gram20[..RANK].iter().map(|r| r[..RANK].to_vec()).collect();
        let gram10 = GramMatrix::from_integers(&block)?;
        Ok(EnriquesModel::from_parts(gram10, classes, h, self.gram20))
    }
}
