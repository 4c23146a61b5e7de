use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::{CoxeterDiagram, Subset};
use crate::error::{Error, Result};
use crate::lattice::Definiteness;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AffineLetter {
    A,
    D,
    E,
}

/// An affine Dynkin type `Ã_n`, `D̃_n` or `Ẽ_n`; `rank` is the subscript and
/// the diagram has `rank + 1` vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AffineType {
    pub letter: AffineLetter,
    pub rank: usize,
}

impl AffineType {
    pub fn new(letter: AffineLetter, rank: usize) -> Result<Self> {
        let ok = match letter {
            AffineLetter::A => rank >= 1,
            AffineLetter::D => rank >= 4,
            AffineLetter::E => (6..=8).contains(&rank),
        };
        if ok {
            Ok(Self { letter, rank })
        } else {
            Err(Error::Parse(format!("no affine type {letter:?}{rank}")))
        }
    }

    pub fn vertex_count(self) -> usize {
        self.rank + 1
    }
}

/// E before D before A, larger rank first: the order used in type strings.
impl Ord for AffineType {
    fn cmp(&self, other: &Self) -> Ordering {
        let key = |t: &Self| {
            (
                match t.letter {
                    AffineLetter::E => 0,
                    AffineLetter::D => 1,
                    AffineLetter::A => 2,
                },
                std::cmp::Reverse(t.rank),
            )
        };
        key(self).cmp(&key(other))
    }
}

impl PartialOrd for AffineType {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for AffineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}~", self.letter, self.rank)
    }
}

impl FromStr for AffineType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_end_matches('~');
        let bad = || Error::Parse(format!("invalid affine type `{s}`"));
        let mut chars = body.chars();
        let letter = match chars.next() {
            Some('A') => AffineLetter::A,
            Some('D') => AffineLetter::D,
            Some('E') => AffineLetter::E,
            _ => return Err(bad()),
        };
        let rank = chars.as_str().parse().map_err(|_| bad())?;
        Self::new(letter, rank)
    }
}

impl Serialize for AffineType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Shape-template recognition on the induced graph. Weight-2 edges occur
/// only in `Ã_1`; inside any larger set a double edge already gives an
/// indefinite 3-vertex Gram.
fn template(d: &CoxeterDiagram, s: Subset) -> Option<AffineType> {
    let vs = d.members(s);
    let n = vs.len();
    let mut edges = 0;
    for (a, &u) in vs.iter().enumerate() {
        for &v in &vs[a + 1..] {
            match d.weight(u, v) {
                0 => {}
                1 => edges += 1,
                2 if n == 2 => return Some(AffineType { letter: AffineLetter::A, rank: 1 }),
                _ => return None,
            }
        }
    }
    let degree = |v: usize| (d.neighbours(v) & s).count_ones() as usize;
    if n >= 3 && edges == n && vs.iter().all(|&v| degree(v) == 2) {
        return Some(AffineType { letter: AffineLetter::A, rank: n - 1 });
    }
    if edges + 1 != n {
        return None;
    }
    let branches: Vec<usize> = vs.iter().copied().filter(|&v| degree(v) >= 3).collect();
    // arm length from a branch vertex through `first`, stopping at a leaf or
    // another branch vertex (returned as `None` in the second slot then)
    let arm = |from: usize, first: usize| -> (usize, Option<usize>) {
        let (mut prev, mut cur, mut len) = (from, first, 1);
        loop {
            if degree(cur) >= 3 {
                return (len, Some(cur));
            }
            if degree(cur) == 1 {
                return (len, None);
            }
            let next = (d.neighbours(cur) & s & !(1 << prev)).trailing_zeros() as usize;
            prev = cur;
            cur = next;
            len += 1;
        }
    };
    let arms = |b: usize| -> Vec<(usize, Option<usize>)> {
        d.members(d.neighbours(b) & s).into_iter().map(|u| arm(b, u)).collect()
    };
    match branches.as_slice() {
        [c] if degree(*c) == 4 && n == 5 => Some(AffineType { letter: AffineLetter::D, rank: 4 }),
        [c] if degree(*c) == 3 => {
            let mut lens: Vec<usize> = arms(*c).into_iter().map(|(l, _)| l).collect();
            lens.sort_unstable_by(|a, b| b.cmp(a));
            let rank = match lens.as_slice() {
                [2, 2, 2] => 6,
                [3, 3, 1] => 7,
                [5, 2, 1] => 8,
                _ => return None,
            };
            Some(AffineType { letter: AffineLetter::E, rank })
        }
        [b1, b2] if degree(*b1) == 3 && degree(*b2) == 3 => {
            let two_leaves = |b: usize| {
                let a = arms(b);
                a.iter().filter(|&&(l, end)| l == 1 && end.is_none()).count() == 2
                    && a.iter().filter(|&&(_, end)| end.is_some()).count() == 1
            };
            (two_leaves(*b1) && two_leaves(*b2)).then_some(AffineType { letter: AffineLetter::D, rank: n - 1 })
        }
        _ => None,
    }
}

/// Affine type of a connected subset, or `None` when it is not affine.
/// The template answer must agree with the corank-1 semidefinite test.
pub fn classify_component(d: &CoxeterDiagram, s: Subset) -> Result<Option<AffineType>> {
    if !d.is_connected(s) {
        return Err(Error::Disconnected);
    }
    let by_template = template(d, s);
    let definiteness = d.definiteness(s);
    let by_form = definiteness == Definiteness::NegativeSemidefiniteCorank(1);
    if by_template.is_some() != by_form {
        let names: Vec<String> = d.labels(s).iter().map(ToString::to_string).collect();
        return Err(Error::RecognitionConflict {
            subset: names.join(","),
            template: by_template.map_or("not affine".into(), |t| t.to_string()),
            definiteness: format!("{definiteness:?}"),
        });
    }
    Ok(by_template)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::build_diagram;
    use crate::model::{build_model, RootLabel};

    fn diagram() -> CoxeterDiagram {
        build_diagram(&build_model().unwrap()).unwrap()
    }

    fn subset(d: &CoxeterDiagram, names: &[&str]) -> Subset {
        let labels: Vec<RootLabel> = names.iter().map(|x| x.parse().unwrap()).collect();
        d.subset_of(&labels).unwrap()
    }

    #[test]
    fn named_components() {
        let d = diagram();
        let t = |names: &[&str]| classify_component(&d, subset(&d, names)).unwrap();
        assert_eq!(t(&["E12", "F12"]).unwrap().to_string(), "A1~");
        assert_eq!(t(&["E1", "E12", "E2", "E23", "E3", "E13"]).unwrap().to_string(), "A5~");
        assert_eq!(t(&["E1", "E12"]), None);
        assert_eq!(t(&["G1", "G2"]).unwrap().to_string(), "A1~");
        // double edges inside a triangle: indefinite
        assert_eq!(t(&["G1", "G2", "G3"]), None);
        assert!(matches!(classify_component(&d, subset(&d, &["E1", "E23"])), Err(Error::Disconnected)));
    }

    /// Standard affine diagrams built from scratch, checked against the
    /// template and the semidefinite test together.
    #[test]
    fn templates_on_abstract_graphs() {
        fn graph(n: usize, edges: &[(usize, usize)]) -> CoxeterDiagram {
            let mut w = vec![vec![0; n]; n];
            for &(a, b) in edges {
                w[a][b] = 1;
                w[b][a] = 1;
            }
            CoxeterDiagram::new(RootLabel::ALL[..n].to_vec(), w).unwrap()
        }
        let path = |n: usize| (0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>();
        let cases: Vec<(CoxeterDiagram, Option<&str>)> = vec![
            (graph(4, &[(0, 1), (0, 2), (0, 3)]), None),
            (graph(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]), Some("D4~")),
            (graph(6, &[(0, 1), (0, 2), (0, 3), (3, 4), (3, 5)]), Some("D5~")),
            (graph(8, &[(0, 1), (0, 2), (0, 3), (3, 4), (4, 5), (5, 6), (5, 7)]), Some("D7~")),
            (graph(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]), Some("E6~")),
            (graph(8, &[(0, 1), (1, 2), (2, 3), (0, 4), (4, 5), (5, 6), (0, 7)]), Some("E7~")),
            (graph(9, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 6), (6, 7), (0, 8)]), Some("E8~")),
            (graph(6, &path(6)), None),
            // E7 finite: arms (3, 2, 1)
            (graph(7, &[(0, 1), (1, 2), (2, 3), (0, 4), (4, 5), (0, 6)]), None),
            // arms (2, 2, 3): hyperbolic T_{3,3,4}
            (graph(8, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6), (6, 7)]), None),
            (graph(3, &[(0, 1), (1, 2), (2, 0)]), Some("A2~")),
            (graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]), None),
        ];
        for (g, expected) in cases {
            let got = classify_component(&g, g.full()).unwrap();
            assert_eq!(got.map(|t| t.to_string()).as_deref(), expected);
        }
    }

    #[test]
    fn type_strings_roundtrip_and_order() {
        for s in ["A1~", "A7~", "D4~", "D6~", "E6~", "E7~", "E8~"] {
            assert_eq!(s.parse::<AffineType>().unwrap().to_string(), s);
        }
        assert!("E9~".parse::<AffineType>().is_err());
        assert!("D3~".parse::<AffineType>().is_err());
        let mut v: Vec<AffineType> = ["A1~", "E7~", "A2~", "D6~"].iter().map(|s| s.parse().unwrap()).collect();
        v.sort();
        let names: Vec<String> = v.iter().map(ToString::to_string).collect();
        assert_eq!(names, ["E7~", "D6~", "A2~", "A1~"]);
    }
}
