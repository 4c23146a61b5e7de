use std::collections::HashMap;

use serde::Serialize;

use super::{gcd_all, serialize_sigma_word, Coords, OrbitContext, Verdict};
use crate::coxeter::{build_diagram, enumerate_max_parabolics, AffineType, ParabolicSubdiagram};
use crate::error::{Error, Result};
use crate::lattice::{kernel_basis, GramMatrix, LatticeVector};
use crate::model::{EnriquesModel, RootLabel, RANK};

/// Diagram types in the order used for `type_index`.
const DIAGRAM_TYPES: [&str; 5] = ["E7~+A1~", "E6~+A2~", "D6~+A1~+A1~", "A7~+A1~", "A5~+A2~+A1~"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ComponentKind {
    /// Only curve classes from 10A and 6B.
    Curves,
    /// Curve classes together with some `G_i`.
    Mixed,
    /// Only classes from 4C.
    FourC,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberComponent {
    pub vertices: Vec<RootLabel>,
    #[serde(rename = "type")]
    pub affine: AffineType,
    pub kind: ComponentKind,
    /// The kernel vector of the component equals `m·f`.
    pub m: i64,
    pub null_vector: LatticeVector,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Fiber {
    #[serde(rename = "type")]
    pub affine: AffineType,
    pub multiple: bool,
}

/// One of the isotropic rays cut out by a maximal parabolic subdiagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PencilRay {
    pub ray_index: usize,
    /// 1..=5 by diagram type, 0 for a type outside the five expected ones.
    pub type_index: u8,
    pub diagram_type: String,
    /// Fiber types joined with `+`; a multiple fiber is prefixed by `2`.
    pub singular_fibers: String,
    pub fibers: Vec<Fiber>,
    pub mw_rank: usize,
    /// Primitive generator `f` of the ray in the Neron-Severi lattice; the
    /// fiber class of the pencil is `2f`.
    pub ray: LatticeVector,
    pub components: Vec<FiberComponent>,
    pub diagram: ParabolicSubdiagram,
    #[serde(skip)]
    pub(crate) coords: Coords,
}

/// Aggregated row of the pencil table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PencilTypeRow {
    pub type_index: u8,
    pub diagram_type: String,
    pub singular_fibers: String,
    pub mw_rank: usize,
    pub count: usize,
}

#[derive(Clone, Debug)]
pub struct PencilTable {
    rays: Vec<PencilRay>,
    lookup: HashMap<Coords, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PencilReport {
    pub input: LatticeVector,
    /// True when the input was `2f` rather than `f`.
    pub input_is_fiber_class: bool,
    #[serde(serialize_with = "serialize_sigma_word")]
    pub word: Vec<u8>,
    pub ray_index: usize,
    pub type_index: u8,
    pub diagram_type: String,
    pub singular_fibers: String,
    pub fibers: Vec<Fiber>,
    pub mw_rank: usize,
    pub ray: LatticeVector,
    pub components: Vec<FiberComponent>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum PencilClassification {
    Pencil(PencilReport),
    /// The reduced vector pairs negatively with a curve class, so it is not
    /// nef and does not define a pencil.
    NotNefReduced {
        input: LatticeVector,
        representative: LatticeVector,
        #[serde(serialize_with = "serialize_sigma_word")]
        word: Vec<u8>,
        witness: RootLabel,
        pairing: i64,
    },
}

impl PencilClassification {
    pub fn report(&self) -> Option<&PencilReport> {
        match self {
            Self::Pencil(r) => Some(r),
            Self::NotNefReduced { .. } => None,
        }
    }
}

impl PencilTable {
    pub(crate) fn build(ctx: &OrbitContext<'_>) -> Result<Self> {
        let diagram = build_diagram(ctx.model())?;
        let maximal = enumerate_max_parabolics(&diagram)?;
        let mut rays = Vec::with_capacity(maximal.len());
        for (k, p) in maximal.into_iter().enumerate() {
            rays.push(ctx.pencil_ray(k + 1, &diagram, p)?);
        }
        let mut lookup = HashMap::new();
        for (k, r) in rays.iter().enumerate() {
            lookup.entry(r.coords).or_insert(k);
        }
        Ok(Self { rays, lookup })
    }

    pub fn rays(&self) -> &[PencilRay] {
        &self.rays
    }

    pub fn distinct_rays(&self) -> usize {
        self.lookup.len()
    }

    pub(crate) fn find(&self, c: &Coords) -> Option<&PencilRay> {
        self.lookup.get(c).map(|&k| &self.rays[k])
    }

    pub fn ray_of(&self, ctx: &OrbitContext<'_>, f: &LatticeVector) -> Result<Option<&PencilRay>> {
        Ok(self.find(&ctx.scale(f)?))
    }

    /// Rays grouped by type, in `type_index` order.
    pub fn type_rows(&self) -> Vec<PencilTypeRow> {
        let mut rows: Vec<PencilTypeRow> = Vec::new();
        let mut sorted: Vec<&PencilRay> = self.rays.iter().collect();
        sorted.sort_by_key(|r| (r.type_index == 0, r.type_index, r.diagram_type.clone()));
        for r in sorted {
            match rows.last_mut() {
                Some(row)
                    if row.diagram_type == r.diagram_type
                        && row.singular_fibers == r.singular_fibers
                        && row.mw_rank == r.mw_rank =>
                {
                    row.count += 1
                }
                _ => rows.push(PencilTypeRow {
                    type_index: r.type_index,
                    diagram_type: r.diagram_type.clone(),
                    singular_fibers: r.singular_fibers.clone(),
                    mw_rank: r.mw_rank,
                    count: 1,
                }),
            }
        }
        rows
    }

    /// CSV with columns `type,singular_fibers,mw_rank,count`.
    pub fn type_rows_csv(&self) -> String {
        let mut out = String::from("type,singular_fibers,mw_rank,count\n");
        for row in self.type_rows() {
            out.push_str(&format!("{},{},{},{}\n", row.type_index, row.singular_fibers, row.mw_rank, row.count));
        }
        out
    }
}

impl OrbitContext<'_> {
    fn pencil_ray(
        &self,
        ray_index: usize,
        diagram: &crate::coxeter::CoxeterDiagram,
        p: ParabolicSubdiagram,
    ) -> Result<PencilRay> {
        let mut nulls = Vec::with_capacity(p.components.len());
        for c in &p.components {
            let gram = GramMatrix::from_integers(&diagram.gram(c.subset))?;
            let kernel = kernel_basis(&gram);
            if kernel.len() != 1 {
                return Err(Error::ModelInvariant(format!("component {:?} has corank {}", c.vertices, kernel.len())));
            }
            let weights = kernel[0].to_i64().ok_or_else(|| Error::ModelInvariant("kernel too large".into()))?;
            let mut v = [0i64; RANK];
            for (label, n) in c.vertices.iter().zip(&weights) {
                let r = self.root(*label);
                for k in 0..RANK {
                    v[k] += n * r[k];
                }
            }
            nulls.push(v);
        }
        let f = self.primitive_part(&nulls[0])?.0;
        let mut components = Vec::new();
        let mut fibers = Vec::new();
        let mut mw_rank = 0;
        for (c, v) in p.components.iter().zip(&nulls) {
            let m = multiple_of(v, &f).ok_or_else(|| {
                Error::ModelInvariant(format!("null vector of {:?} is not a multiple of the ray", c.vertices))
            })?;
            if m > 2 {
                return Err(Error::ModelInvariant(format!(
                    "null vector of {:?} is {m} times the half fiber",
                    c.vertices
                )));
            }
            let curves = c.vertices.iter().filter(|l| l.is_curve()).count();
            let kind = match curves {
                0 => ComponentKind::FourC,
                n if n == c.vertices.len() => ComponentKind::Curves,
                _ => ComponentKind::Mixed,
            };
            match kind {
                ComponentKind::FourC => mw_rank += 1,
                ComponentKind::Curves => fibers.push(Fiber { affine: c.affine, multiple: m == 1 }),
                ComponentKind::Mixed => fibers.push(Fiber { affine: c.affine, multiple: false }),
            }
            components.push(FiberComponent {
                vertices: c.vertices.clone(),
                affine: c.affine,
                kind,
                m,
                null_vector: self.unscale(v),
            });
        }
        let singular_fibers = fibers
            .iter()
            .map(|f| if f.multiple { format!("2{}", f.affine) } else { f.affine.to_string() })
            .collect::<Vec<_>>()
            .join("+");
        let diagram_type = p.type_name();
        let type_index = DIAGRAM_TYPES.iter().position(|t| *t == diagram_type).map_or(0, |k| k as u8 + 1);
        Ok(PencilRay {
            ray_index,
            type_index,
            diagram_type,
            singular_fibers,
            fibers,
            mw_rank,
            ray: self.unscale(&f),
            components,
            diagram: p,
            coords: f,
        })
    }

    /// Splits `v` as `g·f` with `f` primitive in the Neron-Severi lattice.
    pub(crate) fn primitive_part(&self, v: &Coords) -> Result<(Coords, i64)> {
        let coords = self.ns_coords(v).ok_or_else(|| Error::NotInLattice(self.unscale(v).to_string()))?;
        let g = gcd_all(&coords);
        if g == 0 {
            return Err(Error::Precondition("zero vector".into()));
        }
        Ok((v.map(|x| x / g), g))
    }

    pub fn classify_pencil(&self, x: &LatticeVector) -> Result<PencilClassification> {
        let c = self.scale(x)?;
        let norm = self.pair(&c, &c).ok_or_else(|| Error::NotInLattice(x.to_string()))?;
        if norm != 0 {
            return Err(Error::WrongNorm { expected: 0, found: norm.to_string() });
        }
        if self.degree(&c) <= 0 {
            return Err(Error::Precondition(format!("(f,H) = {} is not positive", self.degree(&c))));
        }
        let (f, g) = self.primitive_part(&c)?;
        if g > 2 {
            return Err(Error::NotPrimitive(x.to_string()));
        }
        let (rep, mut word, verdict) = self.sigma_descend(&f)?;
        word.reverse();
        if verdict != Verdict::InFundamentalDomain {
            return Err(Error::ModelInvariant("isotropic descent left the positive cone".into()));
        }
        if let Some(witness) = RootLabel::curves().find(|&l| self.pair_root(&rep, l) < 0) {
            return Ok(PencilClassification::NotNefReduced {
                input: x.clone(),
                representative: self.unscale(&rep),
                word,
                witness,
                pairing: self.pair_root(&rep, witness),
            });
        }
        let table = self.pencil_table()?;
        let ray = table.find(&rep).ok_or_else(|| {
            Error::ModelInvariant(format!("nef ray {} is not among the parabolic rays", self.unscale(&rep)))
        })?;
        Ok(PencilClassification::Pencil(PencilReport {
            input: x.clone(),
            input_is_fiber_class: g == 2,
            word,
            ray_index: ray.ray_index,
            type_index: ray.type_index,
            diagram_type: ray.diagram_type.clone(),
            singular_fibers: ray.singular_fibers.clone(),
            fibers: ray.fibers.clone(),
            mw_rank: ray.mw_rank,
            ray: ray.ray.clone(),
            components: ray.components.clone(),
        }))
    }

    /// Reduces with all 20 reflections and returns the parabolic ray reached.
    pub fn chamber_ray(&self, x: &LatticeVector) -> Result<Option<&PencilRay>> {
        let c = self.scale(x)?;
        let (f, _) = self.primitive_part(&c)?;
        let (rep, _) = self.chamber_descend(&f)?;
        Ok(self.pencil_table()?.find(&rep))
    }
}

fn multiple_of(v: &Coords, f: &Coords) -> Option<i64> {
    let k = f.iter().position(|&x| x != 0)?;
    if v[k] % f[k] != 0 {
        return None;
    }
    let m = v[k] / f[k];
    (m > 0 && v.iter().zip(f).all(|(a, b)| *a == m * b)).then_some(m)
}

pub fn classify_pencil(f: &LatticeVector, m: &EnriquesModel) -> Result<PencilClassification> {
    OrbitContext::new(m)?.classify_pencil(f)
}

/// The rays of all maximal parabolic subdiagrams, in census order.
pub fn pencil_rays(m: &EnriquesModel) -> Result<Vec<PencilRay>> {
    Ok(OrbitContext::new(m)?.pencil_table()?.rays().to_vec())
}
