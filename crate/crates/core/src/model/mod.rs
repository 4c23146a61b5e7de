//! The rank-10 lattice spanned by the 10A configuration, its 20 named roots
//! and the quasi-polarization `H`.
//!
//! Coordinates are always written in the fixed basis
//! `(E1, E2, E3, E4, E12, E13, E14, E23, E24, E34)`.

mod io;
mod label;
mod tables;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::{
    coordinates_in, determinant, inner_product, inverse, lattice_basis, rat, smith_invariants, solve, to_i64,
    GramMatrix, LatticeVector, Rational,
};

pub use io::ModelDocument;
pub(crate) use label::PAIRS;
pub use label::{Configuration, RootLabel};
pub use tables::{verify_tables, TableCheck, TableFailure, TableReport};

/// Lattice rank.
pub const RANK: usize = 10;

/// The frozen lattice model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnriquesModel {
    gram10: GramMatrix,
    classes: Vec<LatticeVector>,
    h: LatticeVector,
    gram20: Vec<Vec<i64>>,
}

/// The 10A graph: `E_i` meets `E_ij` once, nothing else meets.
fn ten_a_gram() -> GramMatrix {
    let basis = &RootLabel::ALL[..RANK];
    let rows: Vec<Vec<i64>> = basis
        .iter()
        .map(|&a| {
            basis
                .iter()
                .map(|&b| match (a, b) {
                    _ if a == b => -2,
                    (RootLabel::Vertex(k), RootLabel::Edge(i, j)) | (RootLabel::Edge(i, j), RootLabel::Vertex(k))
                        if k == i || k == j =>
                    {
                        1
                    }
                    _ => 0,
                })
                .collect()
        })
        .collect();
    GramMatrix::from_integers(&rows).expect("symmetric by construction")
}

/// Builds the model from the 10A intersection graph.
///
/// `F_ij` is the unique rational vector with `(E_k, F_ij) = 0` and
/// `(E_kl, F_ij) = 2·[{k,l} = {i,j}]`; `G_i` is the hexagon of curves
/// disjoint from `E_i` minus `E_i`.
pub fn build_model() -> Result<EnriquesModel> {
    let gram10 = ten_a_gram();
    let mut classes = Vec::with_capacity(20);
    for k in 0..RANK {
        classes.push(LatticeVector::unit(RANK, k));
    }
    for &(i, j) in &label::PAIRS {
        let rhs: Vec<i64> =
            RootLabel::ALL[..RANK].iter().map(|&b| if b == RootLabel::Edge(i, j) { 2 } else { 0 }).collect();
        classes.push(solve(&gram10, &LatticeVector::from_integers(&rhs))?);
    }
    for i in 1..=4u8 {
        let mut g = -&classes[RootLabel::Vertex(i).index()];
        for b in &RootLabel::ALL[..RANK] {
            let hexagon = match *b {
                RootLabel::Vertex(j) => j != i,
                RootLabel::Edge(j, k) => j != i && k != i,
                _ => false,
            };
            if hexagon {
                g = &g + &classes[b.index()];
            }
        }
        classes.push(g);
    }
    let h = quasi_polarization(&classes);
    let gram20 = pairings(&gram10, &classes)?;
    let model = EnriquesModel { gram10, classes, h, gram20 };
    model.validate()?;
    Ok(model)
}

fn quasi_polarization(classes: &[LatticeVector]) -> LatticeVector {
    classes[..RANK].iter().fold(LatticeVector::zero(RANK), |acc, c| &acc + c)
}

fn pairings(gram10: &GramMatrix, classes: &[LatticeVector]) -> Result<Vec<Vec<i64>>> {
    classes
        .iter()
        .map(|a| {
            classes
                .iter()
                .map(|b| {
                    let p = inner_product(a, b, gram10)?;
                    to_i64(&p).ok_or_else(|| Error::ModelInvariant(format!("non-integral pairing {p}")))
                })
                .collect()
        })
        .collect()
}

/// Smith invariants and discriminant of a sublattice.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SublatticeInvariants {
    pub rank: usize,
    pub smith: Vec<i64>,
    pub discriminant: String,
}

impl EnriquesModel {
    pub(crate) fn from_parts(
        gram10: GramMatrix,
        classes: Vec<LatticeVector>,
        h: LatticeVector,
        gram20: Vec<Vec<i64>>,
    ) -> Self {
        Self { gram10, classes, h, gram20 }
    }

    /// The basis labels, in coordinate order.
    pub fn basis_order(&self) -> &'static [RootLabel] {
        &RootLabel::ALL[..RANK]
    }

    pub fn gram10(&self) -> &GramMatrix {
        &self.gram10
    }

    /// Stored 20×20 pairings, indexed by [`RootLabel::index`].
    pub fn gram20(&self) -> &[Vec<i64>] {
        &self.gram20
    }

    pub fn pairing(&self, a: RootLabel, b: RootLabel) -> i64 {
        self.gram20[a.index()][b.index()]
    }

    pub fn class_vector(&self, label: RootLabel) -> &LatticeVector {
        &self.classes[label.index()]
    }

    pub fn class_vector_by_name(&self, name: &str) -> Result<&LatticeVector> {
        Ok(self.class_vector(name.parse()?))
    }

    /// Parses either comma-separated coordinates (`1,0,-1/2,...`) or an
    /// integer combination of labels (`G4`, `2E1+E12-E4`, `H`).
    pub fn parse_vector(&self, text: &str) -> Result<LatticeVector> {
        let text = text.trim();
        if text.contains(',') {
            let v: LatticeVector = text.parse()?;
            if v.dim() != RANK {
                return Err(Error::DimensionMismatch { expected: RANK, found: v.dim() });
            }
            return Ok(v);
        }
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty vector".into()));
        }
        let mut total = LatticeVector::zero(RANK);
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'-' => (-1, &rest[1..]),
                b'+' => (1, &rest[1..]),
                _ => (1, rest),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let term = &body[..end];
            rest = &body[end..];
            let split = term.find(|c: char| !c.is_ascii_digit()).unwrap_or(term.len());
            let coefficient: i64 = match &term[..split] {
                "" => 1,
                digits => digits.parse().map_err(|_| Error::Parse(format!("invalid coefficient in `{term}`")))?,
            };
            let name = &term[split..];
            if name.is_empty() {
                return Err(Error::Parse(format!("term `{term}` has no label")));
            }
            let class = if name == "H" { &self.h } else { self.class_vector(name.parse()?) };
            total = total.add_scaled(&rat(sign * coefficient), class);
        }
        Ok(total)
    }

    /// The quasi-polarization `H = Σ E_i + Σ E_ij`.
    pub fn h(&self) -> &LatticeVector {
        &self.h
    }

    /// Exact pairing of two coordinate vectors.
    pub fn inner(&self, v: &LatticeVector, w: &LatticeVector) -> Result<Rational> {
        inner_product(v, w, &self.gram10)
    }

    pub fn norm(&self, v: &LatticeVector) -> Result<Rational> {
        self.inner(v, v)
    }

    /// `(v, H)`.
    pub fn degree(&self, v: &LatticeVector) -> Result<Rational> {
        self.inner(v, &self.h)
    }

    /// Pairings of `v` with all 20 roots, as exact rationals.
    pub fn root_pairings(&self, v: &LatticeVector) -> Result<Vec<Rational>> {
        let gv = self.gram10.apply(v)?;
        Ok(self
            .classes
            .iter()
            .map(|c| c.coords().iter().zip(gv.coords()).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
            .collect())
    }

    /// Checks the structural invariants of the model.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::ModelInvariant(msg));
        if self.classes.len() != 20 || self.gram20.len() != 20 || self.gram20.iter().any(|r| r.len() != 20) {
            return bad("expected 20 classes and a 20x20 pairing table".into());
        }
        let det = determinant(&self.gram10);
        if det != rat(-64) {
            return bad(format!("10A determinant is {det}, expected -64"));
        }
        if self.h != quasi_polarization(&self.classes) {
            return bad("H differs from the sum of the 10A classes".into());
        }
        let computed = pairings(&self.gram10, &self.classes)?;
        for (a, la) in RootLabel::ALL.iter().enumerate() {
            for (b, lb) in RootLabel::ALL.iter().enumerate() {
                let v = self.gram20[a][b];
                if v != computed[a][b] {
                    return bad(format!("stored ({la},{lb}) = {v} but coordinates give {}", computed[a][b]));
                }
                let allowed = if a == b { v == -2 } else { (0..=2).contains(&v) };
                if !allowed {
                    return bad(format!("({la},{lb}) = {v} outside the allowed range"));
                }
            }
        }
        Ok(())
    }

    /// Invariants of the lattice generated by the given classes.
    pub fn sublattice_invariants(&self, labels: &[RootLabel]) -> Result<SublatticeInvariants> {
        let gens: Vec<LatticeVector> = labels.iter().map(|&l| self.class_vector(l).clone()).collect();
        let basis = lattice_basis(&gens);
        let gram = self.gram10.gram_of(&basis)?;
        let smith = smith_invariants(gram.rows())?
            .into_iter()
            .map(|x| i64::try_from(x).map_err(|_| Error::ModelInvariant("invariant too large".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(SublatticeInvariants { rank: basis.len(), smith, discriminant: determinant(&gram).to_string() })
    }

    /// Invariants of the lattice generated by the 16 curve classes.
    pub fn curve_lattice_invariants(&self) -> Result<SublatticeInvariants> {
        self.sublattice_invariants(&RootLabel::curves().collect::<Vec<_>>())
    }

    /// A Z-basis of the lattice generated by the 16 curve classes.
    pub fn curve_lattice_basis(&self) -> Vec<LatticeVector> {
        let gens: Vec<LatticeVector> = RootLabel::curves().map(|l| self.class_vector(l).clone()).collect();
        lattice_basis(&gens)
    }

    /// Glue vector `v` with `NS = L + Z·v`, where `L` is the curve lattice
    /// and `NS` its unique even unimodular overlattice. `None` when `L` is
    /// already unimodular. Only index-2 gluing is supported.
    pub fn neron_severi_glue(&self) -> Result<Option<LatticeVector>> {
        let basis = self.curve_lattice_basis();
        let gram = self.gram10.gram_of(&basis)?;
        let det = determinant(&gram);
        if det == rat(1) || det == rat(-1) {
            return Ok(None);
        }
        if det != rat(4) && det != rat(-4) {
            return Err(Error::ModelInvariant(format!("curve lattice discriminant {det} is not ±1 or ±4")));
        }
        let inv = inverse(&gram)?;
        let dual: Vec<LatticeVector> = inv
            .iter()
            .map(|row| row.iter().zip(&basis).fold(LatticeVector::zero(RANK), |acc, (c, b)| acc.add_scaled(c, b)))
            .collect();
        let in_lattice =
            |v: &LatticeVector| coordinates_in(&basis, v).is_some_and(|c| c.iter().all(|x| x.is_integer()));
        let mut classes: Vec<LatticeVector> = Vec::new();
        for mask in 1u32..(1 << dual.len()) {
            let v = (0..dual.len())
                .filter(|k| mask >> k & 1 == 1)
                .fold(LatticeVector::zero(RANK), |acc, k| &acc + &dual[k]);
            let norm = self.norm(&v)?;
            let even = norm.is_integer() && (norm.to_integer() % num_bigint::BigInt::from(2)).is_zero();
            if even
                && !in_lattice(&v)
                && in_lattice(&v.scale(&rat(2)))
                && !classes.iter().any(|w| in_lattice(&(&v - w)))
            {
                classes.push(v);
            }
        }
        match classes.len() {
            1 => Ok(classes.pop()),
            n => Err(Error::ModelInvariant(format!("curve lattice has {n} even overlattices of index 2"))),
        }
    }

    /// A Z-basis of the even unimodular overlattice of the curve lattice.
    pub fn neron_severi_basis(&self) -> Result<Vec<LatticeVector>> {
        let mut gens = self.curve_lattice_basis();
        gens.extend(self.neron_severi_glue()?);
        Ok(lattice_basis(&gens))
    }

    /// Serializable form of the model.
    pub fn to_document(&self) -> ModelDocument {
        ModelDocument::from_model(self)
    }

    pub fn to_json(&self) -> String {
        self.to_document().to_json()
    }

    /// Loads a model document. Only structural problems are errors; call
    /// [`EnriquesModel::validate`] or [`verify_tables`] to check content.
    pub fn from_json(text: &str) -> Result<Self> {
        ModelDocument::parse(text)?.into_model()
    }

    /// The model shipped with the crate.
    pub fn bundled() -> Self {
        Self::from_json(BUNDLED_MODEL).expect("bundled model parses")
    }
}

/// Golden serialization of [`build_model`].
pub const BUNDLED_MODEL: &str = include_str!("../../data/model.json");

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::reflect;

    fn model() -> EnriquesModel {
        build_model().unwrap()
    }

    #[test]
    fn parse_vector_forms() {
        let m = model();
        assert_eq!(m.parse_vector("G4").unwrap(), LatticeVector::from_integers(&[1, 1, 1, -1, 1, 1, 0, 1, 0, 0]));
        assert_eq!(m.parse_vector("2E1 + E12 - E1").unwrap(), m.parse_vector("E1+E12").unwrap());
        assert_eq!(m.parse_vector("H").unwrap(), *m.h());
        assert_eq!(m.parse_vector("0,0,0,0,0,0,0,0,0,1/2").unwrap().coords()[9], Rational::new(1.into(), 2.into()));
        assert!(matches!(m.parse_vector("1,2"), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(m.parse_vector("E5"), Err(Error::UnknownLabel(_))));
        assert!(matches!(m.parse_vector("3"), Err(Error::Parse(_))));
    }

    fn v(m: &EnriquesModel, s: &str) -> LatticeVector {
        m.class_vector_by_name(s).unwrap().clone()
    }

    #[test]
    fn named_pairings() {
        let m = model();
        let p = |a: &str, b: &str| m.pairing(a.parse().unwrap(), b.parse().unwrap());
        assert_eq!(p("E1", "E1"), -2);
        assert_eq!(p("E1", "E12"), 1);
        assert_eq!(p("E1", "E23"), 0);
        assert_eq!(p("E23", "F23"), 2);
        assert_eq!(p("G1", "G2"), 2);
        assert_eq!(p("G1", "F23"), 2);
        assert_eq!(p("G1", "F12"), 0);
    }

    #[test]
    fn class_vectors() {
        let m = model();
        assert_eq!(v(&m, "E1"), LatticeVector::from_integers(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 0]));
        assert_eq!(v(&m, "G4"), LatticeVector::from_integers(&[1, 1, 1, -1, 1, 1, 0, 1, 0, 0]));
        // F14 solves gram10 · c = 2 e_{E14}
        let f14 = v(&m, "F14");
        let mut rhs = vec![0; 10];
        rhs[RootLabel::Edge(1, 4).index()] = 2;
        assert_eq!(m.gram10().apply(&f14).unwrap(), LatticeVector::from_integers(&rhs));
        assert_eq!(m.norm(&f14).unwrap(), rat(-2));
        assert_eq!(f14.to_string(), "0,1,1,0,1/2,1/2,-1,1,1/2,1/2");
        assert!(matches!(m.class_vector_by_name("X9"), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn quasi_polarization_degrees() {
        let m = model();
        assert_eq!(m.norm(m.h()).unwrap(), rat(4));
        assert_eq!(m.degree(&v(&m, "G4")).unwrap(), rat(2));
        assert_eq!(m.degree(&v(&m, "E1")).unwrap(), rat(1));
        assert_eq!(m.degree(&v(&m, "E12")).unwrap(), rat(0));
    }

    #[test]
    fn build_is_deterministic() {
        assert_eq!(model(), model());
    }

    /// Rewrites the golden file: `cargo test -p enriques-lattice regenerate_golden -- --ignored`.
    #[test]
    #[ignore]
    fn regenerate_golden_model() {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/model.json");
        std::fs::write(path, model().to_json()).unwrap();
    }

    #[test]
    fn bundled_document_matches_construction() {
        let m = model();
        assert_eq!(m.to_json(), BUNDLED_MODEL);
        assert_eq!(EnriquesModel::bundled(), m);
    }

    #[test]
    fn permutation_action_preserves_pairings() {
        let m = model();
        for perm in crate::group::Permutation::all() {
            let image: Vec<RootLabel> = RootLabel::ALL.iter().map(|l| l.permuted(|i| perm.apply(i))).collect();
            let mut sorted = image.clone();
            sorted.sort();
            assert_eq!(sorted, RootLabel::ALL.to_vec());
            for (a, la) in RootLabel::ALL.iter().enumerate() {
                for (b, lb) in RootLabel::ALL.iter().enumerate() {
                    assert_eq!(m.pairing(*la, *lb), m.pairing(image[a], image[b]));
                }
            }
        }
    }

    #[test]
    fn g_reflections_fix_the_expected_classes() {
        let m = model();
        for i in 1..=4u8 {
            let g = v(&m, &format!("G{i}"));
            let e_i = v(&m, &format!("E{i}"));
            assert_eq!(reflect(&e_i, &g, m.gram10()).unwrap(), e_i.add_scaled(&rat(2), &g));
            for l in &RootLabel::ALL[..RANK] {
                if *l != RootLabel::Vertex(i) {
                    let x = m.class_vector(*l);
                    assert_eq!(&reflect(x, &g, m.gram10()).unwrap(), x);
                }
            }
        }
    }

    #[test]
    fn sublattice_invariants() {
        let m = model();
        let ten_a = m.sublattice_invariants(&RootLabel::ALL[..RANK]).unwrap();
        assert_eq!(ten_a.discriminant, "-64");
        assert_eq!(ten_a.smith.iter().product::<i64>(), 64);
        let e1 = m.sublattice_invariants(&[RootLabel::Vertex(1)]).unwrap();
        assert_eq!(e1.smith, vec![2]);
        assert_eq!(e1.rank, 1);
        // all twenty roots lie in the rational span of the basis
        let all = m.sublattice_invariants(&RootLabel::ALL).unwrap();
        assert_eq!(all.rank, 10);
    }

    #[test]
    fn validate_rejects_corruption() {
        let mut m = model();
        m.gram20[3][19] = -2;
        assert!(matches!(m.validate(), Err(Error::ModelInvariant(_))));
    }
}
