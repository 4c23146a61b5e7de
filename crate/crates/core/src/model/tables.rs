use serde::Serialize;

use super::{EnriquesModel, RootLabel};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableFailure {
    pub a: RootLabel,
    pub b: RootLabel,
    pub expected: i64,
    pub found: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableCheck {
    pub name: &'static str,
    pub checked: usize,
    pub failures: Vec<TableFailure>,
}

impl TableCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub tables: Vec<TableCheck>,
}

impl TableReport {
    pub fn all_passed(&self) -> bool {
        self.tables.iter().all(TableCheck::passed)
    }

    pub fn table(&self, name: &str) -> Option<&TableCheck> {
        self.tables.iter().find(|t| t.name == name)
    }
}

fn shares(a: (u8, u8), b: (u8, u8)) -> bool {
    a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1
}

/// Expected pairing for each table; `None` means the pair is not covered.
type Rule = fn(RootLabel, RootLabel) -> Option<i64>;

const TABLES: [(&str, Rule); 9] = {
    use RootLabel::*;
    [
        ("norms", |a, b| (a == b).then_some(-2)),
        ("10A adjacency", |a, b| match (a, b) {
            (Vertex(_), Vertex(_)) | (Edge(..), Edge(..)) if a != b => Some(0),
            (Vertex(k), Edge(i, j)) => Some(if k == i || k == j { 1 } else { 0 }),
            _ => None,
        }),
        ("(E_k, F_ij)", |a, b| match (a, b) {
            (Vertex(_), F(..)) => Some(0),
            _ => None,
        }),
        ("(E_kl, F_ij)", |a, b| match (a, b) {
            (Edge(k, l), F(i, j)) => Some(if (k, l) == (i, j) { 2 } else { 0 }),
            _ => None,
        }),
        ("(G_i, E_j)", |a, b| match (a, b) {
            (G(i), Vertex(j)) => Some(if i == j { 2 } else { 0 }),
            _ => None,
        }),
        ("(G_i, E_kl)", |a, b| match (a, b) {
            (G(_), Edge(..)) => Some(0),
            _ => None,
        }),
        ("(G_i, F_kl)", |a, b| match (a, b) {
            (G(i), F(k, l)) => Some(if i != k && i != l { 2 } else { 0 }),
            _ => None,
        }),
        ("(G_i, G_j)", |a, b| match (a, b) {
            (G(i), G(j)) if i != j => Some(2),
            _ => None,
        }),
        // The 6B graph: a single edge between index-sharing pairs and a
        // double edge between complementary pairs.
        ("(F_ij, F_kl)", |a, b| match (a, b) {
            (F(i, j), F(k, l)) if a != b => Some(if shares((i, j), (k, l)) { 1 } else { 2 }),
            _ => None,
        }),
    ]
};

/// Checks every stated pairing against the stored 20×20 table. Both orders
/// `(a, b)` and `(b, a)` are checked so an asymmetric edit is caught.
pub fn verify_tables(m: &EnriquesModel) -> TableReport {
    let tables = TABLES
        .iter()
        .map(|&(name, rule)| {
            let mut checked = 0;
            let mut failures = Vec::new();
            for a in RootLabel::ALL {
                for b in RootLabel::ALL {
                    let Some(expected) = rule(a, b) else {
                        continue;
                    };
                    for (x, y) in [(a, b), (b, a)] {
                        checked += 1;
                        let found = m.pairing(x, y);
                        if found != expected {
                            failures.push(TableFailure { a: x, b: y, expected, found });
                        }
                    }
                }
            }
            TableCheck { name, checked, failures }
        })
        .collect();
    TableReport { tables }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::build_model;

    #[test]
    fn model_passes_every_table() {
        let report = verify_tables(&build_model().unwrap());
        for t in &report.tables {
            assert!(t.passed(), "{}: {:?}", t.name, t.failures);
            assert!(t.checked > 0);
        }
    }

    #[test]
    fn injected_sign_flip_is_flagged() {
        let m = build_model().unwrap();
        let mut doc = m.to_document();
        // flip the sign of G4
        let g4 = RootLabel::G(4);
        doc.classes[g4.index()].coords = doc.classes[g4.index()]
            .coords
            .iter()
            .map(|c| format!("{}", -crate::lattice::parse_rational(c).unwrap()))
            .collect();
        for l in RootLabel::ALL {
            if l != g4 {
                doc.gram20[g4.index()][l.index()] *= -1;
                doc.gram20[l.index()][g4.index()] *= -1;
            }
        }
        let flipped = doc.into_model().unwrap();
        let report = verify_tables(&flipped);
        assert!(!report.all_passed());
        let t = report.table("(G_i, E_j)").unwrap();
        assert!(t.failures.contains(&TableFailure { a: g4, b: RootLabel::Vertex(4), expected: 2, found: -2 }));
    }
}
