//! The full verification run behind `enriques verify`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use serde_json::{json, Value};

use crate::coxeter::{
    build_diagram, check_finite_volume, diagram_automorphisms, dotted_entries, enumerate_max_parabolics,
};
use crate::error::{Error, Result};
use crate::group::{check_parity, to_isometry, GroupElement};
use crate::lattice::{determinant, rat, LatticeVector};
use crate::model::{verify_tables, EnriquesModel, RootLabel};
use crate::orbits::{verify_orbit_characterizations, CurveOrbit, OrbitContext, PencilClassification};

/// Expected values checked by the verification run.
pub mod expected {
    pub const DETERMINANT: i64 = -64;
    pub const AUTOMORPHISM_ORDER: usize = 24;
    pub const CURVE_CLASSES: usize = 16;
    pub const PENCIL_RAYS: usize = 29;
    pub const MAXIMAL_PARABOLICS: usize = 29;
    /// `(type, count, vertex census from 10A/6B/4C)` of the maximal
    /// parabolic subdiagrams.
    pub const PARABOLIC_CENSUS: [(&str, usize, [usize; 3]); 5] = [
        ("E7~+A1~", 12, [8, 1, 1]),
        ("E6~+A2~", 4, [7, 3, 0]),
        ("D6~+A1~+A1~", 6, [8, 1, 2]),
        ("A7~+A1~", 3, [8, 2, 0]),
        ("A5~+A2~+A1~", 4, [7, 3, 1]),
    ];
    /// `(type index, singular fibers, Mordell-Weil rank, count)`; the
    /// multiple fiber is marked with a leading `2`.
    pub const PENCIL_TABLE: [(u8, &str, usize, usize); 5] = [
        (1, "E7~+A1~", 0, 12),
        (2, "E6~+A2~", 0, 4),
        (3, "D6~+A1~", 1, 6),
        (4, "A7~+A1~", 0, 3),
        (5, "2A5~+A2~+A1~", 0, 4),
    ];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Section {
    pub name: String,
    pub status: Status,
    pub details: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub sections: Vec<Section>,
    pub summary: Summary,
    pub exit_status: i32,
    /// Rows `(type, singular fibers, Mordell-Weil rank, count)` as computed.
    pub pencil_table: Vec<(u8, String, usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Degree bound for the enumeration cross-checks.
    pub max_degree: i64,
    /// Word length of the ball used for the orbit characterizations.
    pub max_word_len: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { max_degree: 8, max_word_len: 4 }
    }
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.exit_status == 0
    }

    pub fn section(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Plain-text summary with the pencil table.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.sections {
            let mark = match s.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
            };
            out.push_str(&format!("{mark:<5} {}\n", s.name));
        }
        out.push_str(&format!("\n{} of {} sections passed\n\n", self.summary.passed, self.summary.total));
        out.push_str(&pencil_table_text(&self.pencil_table));
        out
    }

    /// CSV with columns `type,singular_fibers,mw_rank,count`.
    pub fn pencil_table_csv(&self) -> String {
        let mut out = String::from("type,singular_fibers,mw_rank,count\n");
        for (t, fibers, mw, count) in &self.pencil_table {
            out.push_str(&format!("{t},{fibers},{mw},{count}\n"));
        }
        out
    }
}

pub fn pencil_table_text(rows: &[(u8, String, usize, usize)]) -> String {
    let mut out = format!("{:<5} {:<16} {:<18} {}\n", "type", "singular fibers", "Mordell-Weil rank", "number");
    for (t, fibers, mw, count) in rows {
        out.push_str(&format!("{:<5} {:<16} {:<18} {}\n", format!("{t})"), fibers, mw, count));
    }
    out
}

fn section(name: &str, outcome: Result<(bool, Value)>) -> Section {
    let (ok, details) = outcome.unwrap_or_else(|e| (false, json!({ "error": e.to_string() })));
    Section { name: name.into(), status: if ok { Status::Pass } else { Status::Fail }, details }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn strip_multiplicity(fibers: &str) -> String {
    fibers.split('+').map(|f| f.strip_prefix('2').unwrap_or(f)).collect::<Vec<_>>().join("+")
}

/// Runs every check in order. Failures are recorded in the report; the
/// function itself does not fail.
pub fn run_verification(m: &EnriquesModel, opts: &VerifyOptions) -> VerificationReport {
    let mut sections = Vec::new();
    let mut pencil_table = Vec::new();

    sections.push(section("tables", {
        let r = verify_tables(m);
        let consistency = m.validate();
        let mut details = to_value(&r);
        details["consistency"] = match &consistency {
            Ok(()) => json!("ok"),
            Err(e) => json!(e.to_string()),
        };
        Ok((r.all_passed() && consistency.is_ok(), details))
    }));

    sections.push(section(
        "determinant",
        (|| {
            let det = determinant(m.gram10());
            let curve = m.curve_lattice_invariants()?;
            let glue = m.neron_severi_glue()?;
            Ok((
                det == rat(expected::DETERMINANT),
                json!({ "determinant": det.to_string(), "curve_lattice": curve, "neron_severi_glue": glue }),
            ))
        })(),
    ));

    let diagram = build_diagram(m);
    sections.push(section(
        "diagram_sanity",
        (|| {
            let dotted = dotted_entries(m.gram20());
            let d = diagram.clone()?;
            let lanner: Vec<Vec<RootLabel>> = d.lanner_subdiagrams().into_iter().map(|s| d.labels(s)).collect();
            Ok((dotted.is_empty() && lanner.is_empty(), json!({ "dotted": dotted, "lanner": lanner })))
        })(),
    ));

    sections.push(section(
        "parabolic_census",
        (|| {
            let d = diagram.clone()?;
            let maximal = enumerate_max_parabolics(&d)?;
            let mut types: BTreeMap<String, (usize, BTreeSet<[usize; 3]>)> = BTreeMap::new();
            for p in &maximal {
                let e = types.entry(p.type_name()).or_default();
                e.0 += 1;
                e.1.insert(p.census);
            }
            let ok = maximal.len() == expected::MAXIMAL_PARABOLICS
                && types.len() == expected::PARABOLIC_CENSUS.len()
                && expected::PARABOLIC_CENSUS.iter().all(|(t, count, census)| {
                    types.get(*t).is_some_and(|(c, cs)| c == count && cs.len() == 1 && cs.contains(census))
                });
            let summary: Vec<Value> =
                types.iter().map(|(t, (c, cs))| json!({ "type": t, "count": c, "census": cs })).collect();
            let entries: Vec<_> = maximal.iter().map(|p| p.census_entry()).collect();
            Ok((ok, json!({ "count": maximal.len(), "types": summary, "entries": entries })))
        })(),
    ));

    sections.push(section(
        "finite_volume",
        (|| {
            let r = check_finite_volume(&diagram.clone()?)?;
            let counterexamples: Vec<_> = r.counterexamples().collect();
            Ok((
                r.finite_volume,
                json!({
                    "maximal_parabolics": r.maximal_parabolics,
                    "connected_parabolics": r.connected_parabolics,
                    "counterexamples": counterexamples,
                }),
            ))
        })(),
    ));

    sections.push(section(
        "automorphisms",
        (|| {
            let r = diagram_automorphisms(&diagram.clone()?);
            Ok((r.order == expected::AUTOMORPHISM_ORDER && r.equals_s4_image, to_value(&r)))
        })(),
    ));

    sections.push(section("parity", Ok((check_parity(m), json!({ "pairings_with_4c_even": check_parity(m) })))));

    sections.push(section("sigma_action", sigma_action(m)));

    let ctx = OrbitContext::new(m);
    sections.push(section(
        "curve_orbits",
        (|| {
            let ctx = ctx.as_ref().map_err(Clone::clone)?;
            let mut sextuples = BTreeSet::new();
            let mut self_classified = true;
            for l in RootLabel::curves() {
                let c = ctx.classify_curve_class(m.class_vector(l))?;
                self_classified &= c.curve() == Some(l);
                sextuples.insert(c.sextuple);
            }
            let mut g_rejected = true;
            for i in 1..=4 {
                let c = ctx.classify_curve_class(m.class_vector(RootLabel::G(i)))?;
                g_rejected &= matches!(c.orbit, CurveOrbit::NotInCurveOrbit { .. });
            }
            Ok((
                sextuples.len() == expected::CURVE_CLASSES && self_classified && g_rejected,
                json!({
                    "distinct_sextuples": sextuples.len(),
                    "curves_classify_to_themselves": self_classified,
                    "g_classes_not_in_curve_orbit": g_rejected,
                }),
            ))
        })(),
    ));

    sections.push(section(
        "pencil_rays",
        (|| {
            let ctx = ctx.as_ref().map_err(Clone::clone)?;
            let table = ctx.pencil_table()?;
            Ok((
                table.rays().len() == expected::PENCIL_RAYS && table.distinct_rays() == expected::PENCIL_RAYS,
                json!({ "rays": table.rays().len(), "distinct": table.distinct_rays() }),
            ))
        })(),
    ));

    sections.push(section(
        "pencil_table",
        (|| {
            let ctx = ctx.as_ref().map_err(Clone::clone)?;
            let rows = ctx.pencil_table()?.type_rows();
            pencil_table = rows.iter().map(|r| (r.type_index, r.singular_fibers.clone(), r.mw_rank, r.count)).collect();
            let matches_rows = rows.len() == expected::PENCIL_TABLE.len()
                && rows.iter().zip(expected::PENCIL_TABLE).all(|(r, (t, fibers, mw, count))| {
                    r.type_index == t
                        && strip_multiplicity(&r.singular_fibers) == strip_multiplicity(fibers)
                        && r.mw_rank == mw
                        && r.count == count
                });
            let type5_multiple = rows.iter().any(|r| r.type_index == 5 && r.singular_fibers.starts_with("2A5~"));
            let multiple: Vec<Value> = rows
                .iter()
                .filter(|r| r.singular_fibers.split('+').any(|f| f.starts_with('2')))
                .map(|r| json!({ "type": r.type_index, "singular_fibers": r.singular_fibers }))
                .collect();
            Ok((matches_rows && type5_multiple, json!({ "rows": rows, "types_with_multiple_fibers": multiple })))
        })(),
    ));

    sections.push(section(
        "enumeration",
        (|| {
            let ctx = ctx.as_ref().map_err(Clone::clone)?;
            enumeration_checks(ctx, opts.max_degree)
        })(),
    ));

    sections.push(section(
        "orbit_characterizations",
        (|| {
            let ctx = ctx.as_ref().map_err(Clone::clone)?;
            let ball = ctx.orbit_ball(opts.max_word_len)?;
            let r = verify_orbit_characterizations(&ball);
            Ok((r.passed && ball.all_valid, to_value(&r)))
        })(),
    ));

    let passed = sections.iter().filter(|s| s.status == Status::Pass).count();
    let summary = Summary { total: sections.len(), passed, failed: sections.len() - passed };
    let exit_status = if summary.failed == 0 { 0 } else { 1 };
    VerificationReport { sections, summary, exit_status, pencil_table }
}

fn sigma_action(m: &EnriquesModel) -> Result<(bool, Value)> {
    for i in 1..=4u8 {
        let norm = m.norm(m.class_vector(RootLabel::G(i)))?;
        if norm != rat(-2) {
            return Err(Error::NotARoot(norm.to_string()));
        }
    }
    let e = |s: &str| -> Result<LatticeVector> { Ok(m.class_vector_by_name(s)?.clone()) };
    let hexagon = ["E1", "E12", "E2", "E23", "E3", "E13"]
        .iter()
        .try_fold(LatticeVector::zero(m.gram10().dim()), |acc, s| Ok::<_, Error>(&acc + &e(s)?))?;
    let expected_image = &hexagon.scale(&rat(2)) - &e("E4")?;
    let sigma4 = to_isometry(&GroupElement::sigma(4)?, m);
    let image = sigma4.apply(&e("E4")?);
    let mut fixed = true;
    let mut isometries = true;
    for i in 1..=4u8 {
        let s = to_isometry(&GroupElement::sigma(i)?, m);
        isometries &= s.preserves(m.gram10());
        for l in RootLabel::ALL
            .iter()
            .filter(|l| matches!(l, RootLabel::Vertex(j) if *j != i) || matches!(l, RootLabel::Edge(..)))
        {
            fixed &= s.apply(m.class_vector(*l)) == *m.class_vector(*l);
        }
    }
    Ok((
        image == expected_image && fixed && isometries,
        json!({
            "sigma4_e4": image,
            "expected": expected_image,
            "fixes_other_vertices_and_edges": fixed,
            "isometries": isometries,
        }),
    ))
}

fn enumeration_checks(ctx: &OrbitContext<'_>, max_degree: i64) -> Result<(bool, Value)> {
    let roots = ctx.enumerate_vectors(-2, max_degree, false)?;
    let mut curves = BTreeSet::new();
    let mut reasons: BTreeMap<String, usize> = BTreeMap::new();
    for v in &roots {
        let c = ctx.classify_curve_class(&v.vector)?;
        let key = match &c.orbit {
            CurveOrbit::Curve { .. } => {
                curves.insert(v.vector.to_string());
                "Curve".to_string()
            }
            CurveOrbit::NotInCurveOrbit { reason } => format!("{reason:?}"),
        };
        *reasons.entry(key).or_default() += 1;
    }
    // every curve of degree d is reached from a representative in at most
    // d/2 steps, since each σ_i step changes the degree by at least 2
    let ball = ctx.orbit_ball((max_degree / 2) as usize)?;
    let ball_curves: BTreeSet<String> =
        ball.vertices.iter().filter(|v| v.degree > 0 && v.degree <= max_degree).map(|v| v.vector.to_string()).collect();

    let isotropic = ctx.enumerate_vectors(0, max_degree, true)?;
    let table = ctx.pencil_table()?;
    let mut nef = 0usize;
    let mut not_nef = 0usize;
    let mut unmatched = 0usize;
    let mut by_type: BTreeMap<u8, usize> = BTreeMap::new();
    for v in &isotropic {
        match ctx.classify_pencil(&v.vector)? {
            PencilClassification::Pencil(r) => {
                nef += 1;
                *by_type.entry(r.type_index).or_default() += 1;
            }
            PencilClassification::NotNefReduced { .. } => {
                not_nef += 1;
                if ctx.chamber_ray(&v.vector)?.is_none() {
                    unmatched += 1;
                }
            }
        }
    }
    let ok = curves == ball_curves && unmatched == 0 && table.rays().len() == expected::PENCIL_RAYS;
    Ok((
        ok,
        json!({
            "max_degree": max_degree,
            "roots": roots.len(),
            "root_classification": reasons,
            "curves_found": curves.len(),
            "curves_in_ball": ball_curves.len(),
            "primitive_isotropic": isotropic.len(),
            "nef_pencils": nef,
            "nef_pencils_by_type": by_type,
            "not_nef": not_nef,
            "not_nef_outside_chamber_rays": unmatched,
        }),
    ))
}
