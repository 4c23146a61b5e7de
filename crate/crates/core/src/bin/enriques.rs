use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use enriques_lattice::coxeter::{build_diagram, diagram_automorphisms, enumerate_max_parabolics, enumerate_parabolics};
use enriques_lattice::group::{faithfulness_check, to_isometry, GroupElement};
use enriques_lattice::model::{EnriquesModel, RootLabel};
use enriques_lattice::orbits::{verify_orbit_characterizations, CurveOrbit, OrbitContext, PencilClassification};
use enriques_lattice::report::{run_verification, VerifyOptions};
use enriques_lattice::Error;

const EXIT_VERIFY: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;

/// Exact lattice computations for the 10A+6B+4C Enriques model.
#[derive(Parser)]
#[command(name = "enriques", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Load the model from a JSON file instead of the bundled one.
    #[arg(long, global = true, value_name = "FILE")]
    model: Option<PathBuf>,
    /// Worker threads for the parallel searches.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every verification section.
    Verify {
        #[arg(long, default_value_t = 8)]
        max_degree: i64,
        #[arg(long, default_value_t = 4)]
        max_word_len: usize,
        /// Print only the pencil table as CSV.
        #[arg(long, conflicts_with = "json")]
        csv: bool,
    },
    /// Print the 20×20 pairing matrix of the named roots.
    Gram,
    /// List the maximal parabolic subdiagrams.
    Parabolics {
        /// Include every parabolic subdiagram, not just the maximal ones.
        #[arg(long)]
        all: bool,
    },
    /// Automorphism group of the weighted diagram.
    Automorphisms,
    /// Reduce a vector by the σ_i, or by all 20 reflections with --chamber.
    Reduce {
        vector: String,
        #[arg(long)]
        chamber: bool,
    },
    /// Classify a (-2)-vector or an isotropic vector.
    Classify {
        #[command(subcommand)]
        kind: ClassifyKind,
    },
    /// Enumerate lattice vectors of a given norm and bounded degree.
    Enumerate {
        #[arg(long, allow_hyphen_values = true)]
        norm: i64,
        #[arg(long, default_value_t = 4)]
        max_degree: i64,
        /// Keep only primitive vectors.
        #[arg(long)]
        primitive: bool,
        /// Classify each vector (curve orbit for norm -2, pencil for norm 0).
        #[arg(long)]
        classify: bool,
    },
    /// Images of the 16 curves under words of bounded length.
    Ball {
        #[arg(long, default_value_t = 2)]
        max_word_len: usize,
        /// Also check the subgraph characterizations of the curve orbits.
        #[arg(long)]
        characterize: bool,
    },
    /// Arithmetic in S4 ⋉ (C2*C2*C2*C2); elements are written `(1 2) s1 s3`.
    Group(GroupArgs),
}

#[derive(Subcommand)]
enum ClassifyKind {
    /// Orbit of a (-2)-vector.
    Curve { vector: String },
    /// Pencil type of a primitive isotropic vector.
    Pencil { vector: String },
}

#[derive(Args)]
struct GroupArgs {
    #[arg(value_enum)]
    op: GroupOp,
    elements: Vec<String>,
    /// Word length bound for `faithfulness`.
    #[arg(long, default_value_t = 6)]
    max_word_len: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupOp {
    NormalForm,
    Multiply,
    Inverse,
    Isometry,
    Faithfulness,
}

enum Failure {
    Verification,
    ClosedOutput,
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            Self::ClosedOutput
        } else {
            Self::Io(e.to_string())
        }
    }
}

macro_rules! out {
    ($($arg:tt)*) => {
        write!(io::stdout(), $($arg)*)?
    };
}

macro_rules! outln {
    ($($arg:tt)*) => {
        writeln!(io::stdout(), $($arg)*)?
    };
}

fn load_model(path: Option<&PathBuf>) -> Result<EnriquesModel, Failure> {
    match path {
        None => Ok(EnriquesModel::bundled()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?;
            Ok(EnriquesModel::from_json(&text)?)
        }
    }
}

fn print_json<T: Serialize>(v: &T) -> Result<(), Failure> {
    outln!("{}", serde_json::to_string_pretty(v).expect("serializable"));
    Ok(())
}

fn words(word: &[u8]) -> String {
    if word.is_empty() {
        "[]".into()
    } else {
        word.iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join(" ")
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let json = cli.json;
    let m = load_model(cli.model.as_ref())?;
    match cli.command {
        Command::Verify { max_degree, max_word_len, csv } => {
            let report = run_verification(&m, &VerifyOptions { max_degree, max_word_len });
            if json {
                outln!("{}", report.to_json());
            } else if csv {
                out!("{}", report.pencil_table_csv());
            } else {
                out!("{}", report.to_text());
            }
            if !report.passed() {
                return Err(Failure::Verification);
            }
        }
        Command::Gram => {
            if json {
                print_json(&serde_json::json!({ "labels": RootLabel::ALL, "gram": m.gram20() }))?;
            } else {
                out!("{:>4}", "");
                for l in RootLabel::ALL {
                    out!("{:>4}", l.to_string());
                }
                outln!();
                for (l, row) in RootLabel::ALL.iter().zip(m.gram20()) {
                    out!("{:>4}", l.to_string());
                    for x in row {
                        out!("{x:>4}");
                    }
                    outln!();
                }
            }
        }
        Command::Parabolics { all } => {
            let d = build_diagram(&m)?;
            let list = if all { enumerate_parabolics(&d)? } else { enumerate_max_parabolics(&d)? };
            let entries: Vec<_> = list.iter().map(|p| p.census_entry()).collect();
            if json {
                print_json(&entries)?;
            } else {
                let mut counts: Vec<(String, usize)> = Vec::new();
                for e in &entries {
                    let names: Vec<String> = e.vertices.iter().map(ToString::to_string).collect();
                    outln!("{:<14} {:?} {}", e.type_name, e.census, names.join(" "));
                    match counts.iter_mut().find(|c| c.0 == e.type_name) {
                        Some(c) => c.1 += 1,
                        None => counts.push((e.type_name.clone(), 1)),
                    }
                }
                outln!();
                for (t, c) in counts {
                    outln!("{t}: {c}");
                }
                outln!("total: {}", entries.len());
            }
        }
        Command::Automorphisms => {
            let r = diagram_automorphisms(&build_diagram(&m)?);
            if json {
                print_json(&r)?;
            } else {
                outln!("order: {}", r.order);
                outln!("equals the S4 index action: {}", r.equals_s4_image);
                for g in &r.generators {
                    let moved: Vec<String> = g.iter().map(|(a, b)| format!("{a}->{b}")).collect();
                    outln!("generator: {}", moved.join(" "));
                }
            }
        }
        Command::Reduce { vector, chamber } => {
            let ctx = OrbitContext::new(&m)?;
            let x = m.parse_vector(&vector)?;
            if chamber {
                let r = ctx.reduce_to_chamber(&x)?;
                if json {
                    print_json(&r)?;
                } else {
                    outln!("representative: {}", r.representative);
                    outln!("word: {}", if r.word.is_empty() { "[]".into() } else { r.word.join(" ") });
                }
            } else {
                let r = ctx.sigma_reduce(&x)?;
                if json {
                    print_json(&r)?;
                } else {
                    outln!("representative: {}", r.representative);
                    outln!("word: {}", words(&r.word));
                    outln!("verdict: {:?}", r.verdict);
                }
            }
        }
        Command::Classify { kind } => {
            let ctx = OrbitContext::new(&m)?;
            match kind {
                ClassifyKind::Curve { vector } => {
                    let r = ctx.classify_curve_class(&m.parse_vector(&vector)?)?;
                    if json {
                        print_json(&r)?;
                    } else {
                        outln!("sextuple: {:?}", r.sextuple);
                        match &r.orbit {
                            CurveOrbit::Curve { curve, word } => outln!("Curve {curve}, word {}", words(word)),
                            CurveOrbit::NotInCurveOrbit { reason } => outln!("NotInCurveOrbit ({reason:?})"),
                        }
                    }
                }
                ClassifyKind::Pencil { vector } => {
                    let r = ctx.classify_pencil(&m.parse_vector(&vector)?)?;
                    if json {
                        print_json(&r)?;
                    } else {
                        match &r {
                            PencilClassification::Pencil(p) => {
                                outln!("type {} ({})", p.type_index, p.diagram_type);
                                outln!("singular fibers: {}", p.singular_fibers);
                                outln!("Mordell-Weil rank: {}", p.mw_rank);
                                outln!("ray: {} (word {})", p.ray, words(&p.word));
                            }
                            PencilClassification::NotNefReduced { representative, witness, pairing, .. } => {
                                outln!("not nef: reduced to {representative}, ({witness}, f) = {pairing}");
                            }
                        }
                    }
                }
            }
        }
        Command::Enumerate { norm, max_degree, primitive, classify } => {
            let ctx = OrbitContext::new(&m)?;
            let list = ctx.enumerate_vectors(norm, max_degree, primitive)?;
            if classify {
                let mut rows = Vec::with_capacity(list.len());
                for v in &list {
                    let verdict = if norm == -2 {
                        serde_json::to_value(ctx.classify_curve_class(&v.vector)?)
                    } else if v.primitive {
                        serde_json::to_value(ctx.classify_pencil(&v.vector)?)
                    } else {
                        Ok(serde_json::Value::Null)
                    }
                    .expect("serializable");
                    rows.push(serde_json::json!({ "vector": v.vector, "degree": v.degree, "classification": verdict }));
                }
                if json {
                    print_json(&rows)?;
                } else {
                    for r in rows {
                        let verdict = r["classification"]["verdict"].as_str().unwrap_or("-").to_string();
                        outln!("{} {} {verdict}", r["degree"], v_text(&r["vector"]));
                    }
                }
            } else if json {
                print_json(&list)?;
            } else {
                for v in &list {
                    outln!("{} {}", v.degree, v.vector);
                }
                outln!("total: {}", list.len());
            }
        }
        Command::Ball { max_word_len, characterize } => {
            let ctx = OrbitContext::new(&m)?;
            let ball = ctx.orbit_ball(max_word_len)?;
            let report = characterize.then(|| verify_orbit_characterizations(&ball));
            if json {
                print_json(&serde_json::json!({ "ball": ball, "characterizations": report }))?;
            } else {
                for v in &ball.vertices {
                    outln!("{:<4} {:<20} degree {:<3} {}", v.id, v.name, v.degree, v.vector);
                }
                outln!("vertices: {}, edges: {}", ball.len(), ball.edges.len());
                if let Some(r) = report {
                    for e in &r.entries {
                        let status = if e.passed { "pass" } else { "FAIL" };
                        let found = e.witness.as_ref().map_or("none".into(), |w| w.join(" "));
                        outln!("{status} {} {:?} expected {} witness {found}", e.curve, e.property, e.expected);
                    }
                }
            }
        }
        Command::Group(args) => run_group(&m, args, json)?,
    }
    Ok(())
}

fn v_text(v: &serde_json::Value) -> String {
    v.as_array().map(|a| a.iter().filter_map(|x| x.as_str()).collect::<Vec<_>>().join(",")).unwrap_or_default()
}

fn run_group(m: &EnriquesModel, args: GroupArgs, json: bool) -> Result<(), Failure> {
    let elements: Vec<GroupElement> = args.elements.iter().map(|e| e.parse()).collect::<Result<_, Error>>()?;
    let arity = |n: usize| -> Result<(), Failure> {
        if elements.len() == n {
            Ok(())
        } else {
            Err(Error::Parse(format!("expected {n} element(s), found {}", elements.len())).into())
        }
    };
    let show = |g: &GroupElement| -> Result<(), Failure> {
        if json {
            print_json(g)?;
        } else {
            outln!("{g}");
        }
        Ok(())
    };
    match args.op {
        GroupOp::NormalForm => {
            arity(1)?;
            show(&elements[0])?;
        }
        GroupOp::Multiply => {
            if elements.is_empty() {
                return Err(Error::Parse("expected at least one element".into()).into());
            }
            let product = elements.iter().skip(1).fold(elements[0].clone(), |acc, g| acc.multiply(g));
            show(&product)?;
        }
        GroupOp::Inverse => {
            arity(1)?;
            show(&elements[0].inverse())?;
        }
        GroupOp::Isometry => {
            arity(1)?;
            let matrix = to_isometry(&elements[0], m);
            let rows: Vec<Vec<String>> =
                matrix.rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
            if json {
                print_json(&rows)?;
            } else {
                for r in rows {
                    outln!("{}", r.iter().map(|x| format!("{x:>4}")).collect::<String>());
                }
            }
        }
        GroupOp::Faithfulness => {
            arity(0)?;
            let r = faithfulness_check(m, args.max_word_len);
            if json {
                print_json(&r)?;
            } else {
                outln!(
                    "{} elements, {} distinct matrices, all isometries: {}",
                    r.elements,
                    r.distinct_matrices,
                    r.all_isometries
                );
            }
            if !r.passed() {
                return Err(Failure::Verification);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_PRECONDITION);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::ClosedOutput) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(EXIT_VERIFY),
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_PRECONDITION)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_parse_error() { EXIT_PARSE } else { EXIT_PRECONDITION })
        }
    }
}
