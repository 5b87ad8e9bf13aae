//! `spindex`: spin-network blocks, tetrahedron indices and the 3D-index of
//! ideal triangulations from the command line.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use spindex_core::blocks::{self, AdmissibleTriple, SixColors};
use spindex_core::statesum;
use spindex_core::surfaces;
use spindex_core::tetindex::{self, IndexLabel, QuadTriple};
use spindex_core::{Error, QSeries, Triangulation};

#[derive(Debug, Parser)]
#[command(
    name = "spindex",
    version,
    about = "Exact q-series for spin networks and the 3D-index"
)]
struct Cli {
    /// Truncation order in half-exponents; coefficients up to q^(P/2) are reported.
    #[arg(long, global = true, default_value_t = 10, value_parser = clap::value_parser!(i64).range(0..))]
    prec: i64,

    #[arg(long, global = true, value_enum, default_value_t = Output::Machine)]
    output: Output,

    /// Worker threads for parallel enumeration.
    #[arg(long, global = true, env = "SPINDEX_THREADS", value_parser = clap::value_parser!(usize))]
    threads: Option<usize>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Machine,
    Text,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Evaluate a spin-network block exactly.
    #[command(subcommand)]
    Block(BlockCmd),
    /// Compare hat blocks with their large-color limits.
    StabCheck {
        /// Target order in half-exponents (inclusive).
        #[arg(long, default_value_t = 20)]
        order: i64,
        #[arg(long, default_value_t = 25)]
        shift_max: u64,
        #[arg(long, default_value_t = 3)]
        max_color: u64,
    },
    /// The tetrahedron index I_Δ(m, e).
    #[command(allow_negative_numbers = true)]
    TetIndex { m: i64, e: i64 },
    /// J_Δ(a, b, c).
    #[command(allow_negative_numbers = true)]
    JDelta { a: i64, b: i64, c: i64 },
    /// J^FKB(a, b, c).
    #[command(allow_negative_numbers = true)]
    JFkb { a: i64, b: i64, c: i64 },
    /// Inspect a triangulation.
    #[command(subcommand)]
    Tri(TriCmd),
    /// The state sum TV^(N).
    TvSum {
        tri: String,
        #[arg(long = "N", alias = "n")]
        n: u64,
    },
    /// The limit of the state sums and the constant terms of their growth.
    Fkb {
        tri: String,
        #[command(flatten)]
        nmax: NMax,
    },
    /// The index at (0, 0) as a sum over normal surface classes.
    IndexNs {
        tri: String,
        #[command(flatten)]
        coord: MaxCoord,
    },
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Debug, Args)]
struct NMax {
    #[arg(long, default_value_t = 40)]
    nmax: u32,
}

#[derive(Debug, Args)]
struct MaxCoord {
    #[arg(long, default_value_t = 12)]
    max_coord: u32,
}

#[derive(Debug, Subcommand)]
enum BlockCmd {
    U {
        a: u64,
        #[arg(long)]
        hat: bool,
    },
    Theta {
        a: u64,
        b: u64,
        c: u64,
        #[arg(long)]
        hat: bool,
    },
    Tet {
        a: u64,
        b: u64,
        e: u64,
        d: u64,
        c: u64,
        f: u64,
        #[arg(long)]
        hat: bool,
    },
}

#[derive(Debug, Subcommand)]
enum TriCmd {
    /// Edge, face and vertex classes.
    Info { tri: String },
}

#[derive(Debug, Subcommand)]
enum VerifyCmd {
    /// J^FKB = J_Δ on the cube |a|, |b|, |c| <= range.
    Prop1 {
        #[arg(long, default_value_t = 4)]
        range: i64,
    },
    /// Normal-surface and state-sum routes to the index agree.
    Thm1 {
        tri: String,
        #[command(flatten)]
        nmax: NMax,
        #[command(flatten)]
        coord: MaxCoord,
    },
}

enum Failure {
    Usage(String),
    Mismatch,
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InadmissibleTriple(..)
            | Error::InadmissibleSix { .. }
            | Error::EmptyTet { .. }
            | Error::UnnormalizedLimit(..)
            | Error::Triangulation(_)
            | Error::Gluing(_)
            | Error::UnknownFixture(_)
            | Error::Record(_) => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

struct Out {
    mode: Output,
}

/// A closed stdout (e.g. piping into `head`) is not an error.
fn emit(line: impl std::fmt::Display) {
    let _ = writeln!(std::io::stdout().lock(), "{line}");
}

impl Out {
    fn series(&self, label: &str, s: &QSeries) {
        match self.mode {
            Output::Machine => {
                let mut v = serde_json::to_value(s.to_record()).expect("record serializes");
                v.as_object_mut().unwrap().insert("label".into(), label.into());
                emit(v);
            }
            Output::Text => emit(format_args!("{label} = {s}")),
        }
    }

    fn value(&self, label: &str, v: Value) {
        match self.mode {
            Output::Machine => {
                let mut obj = match v {
                    Value::Object(m) => m,
                    other => {
                        let mut m = serde_json::Map::new();
                        m.insert("value".into(), other);
                        m
                    }
                };
                obj.insert("label".into(), label.into());
                emit(Value::Object(obj));
            }
            Output::Text => match v {
                Value::Object(m) => {
                    let body: Vec<String> = m.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    emit(format_args!("{label}: {}", body.join(" ")));
                }
                other => emit(format_args!("{label}: {other}")),
            },
        }
    }
}

fn load(tri: &str) -> Result<Triangulation, Failure> {
    if let Ok(t) = Triangulation::fixture(tri) {
        return Ok(t);
    }
    let text = std::fs::read_to_string(tri)
        .map_err(|e| Failure::Usage(format!("`{tri}` is neither a fixture nor a readable file: {e}")))?;
    Ok(Triangulation::parse(&text)?)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let prec2 = cli.prec + 1;
    let out = Out { mode: cli.output };
    match cli.cmd {
        Cmd::Block(b) => block(&out, b, prec2)?,
        Cmd::StabCheck {
            order,
            shift_max,
            max_color,
        } => stab_check(&out, order + 1, shift_max, max_color)?,
        Cmd::TetIndex { m, e } => out.series(
            &format!("I_delta({m},{e})"),
            &tetindex::i_delta(IndexLabel { m, e }, prec2),
        ),
        Cmd::JDelta { a, b, c } => out.series(
            &format!("J_delta({a},{b},{c})"),
            &tetindex::j_delta(&QuadTriple::new(a, b, c), prec2),
        ),
        Cmd::JFkb { a, b, c } => out.series(
            &format!("J_fkb({a},{b},{c})"),
            &tetindex::j_fkb(&QuadTriple::new(a, b, c), prec2),
        ),
        Cmd::Tri(TriCmd::Info { tri }) => tri_info(&out, &load(&tri)?),
        Cmd::TvSum { tri, n } => {
            let t = load(&tri)?;
            out.series(&format!("TV({n})"), &statesum::tv_n(&t, n, prec2));
        }
        Cmd::Fkb { tri, nmax } => {
            let t = load(&tri)?;
            let r = statesum::fkb_limit(&t, prec2, nmax.nmax)?;
            out.series("I_fkb", &r.i_fkb);
            out.series("I0", &r.i0);
            out.series("2I1", &r.two_i1);
            out.value("N_used", json!(r.n_used));
        }
        Cmd::IndexNs { tri, coord } => {
            let t = load(&tri)?;
            out.series("I_ns", &surfaces::index_series(&t, prec2, coord.max_coord)?);
        }
        Cmd::Verify(VerifyCmd::Prop1 { range }) => {
            let r = tetindex::verify_prop1(range, prec2);
            let passed = r.passed();
            out.value("prop1", serde_json::to_value(&r).expect("report serializes"));
            if !passed {
                return Err(Failure::Mismatch);
            }
        }
        Cmd::Verify(VerifyCmd::Thm1 { tri, nmax, coord }) => {
            let t = load(&tri)?;
            let r = surfaces::verify_thm1(&t, prec2, nmax.nmax, coord.max_coord)?;
            out.series("I_ns", &r.normal_surfaces);
            out.series("I_fkb", &r.state_sum.i_fkb);
            out.value(
                "diff",
                json!({"agree": r.agree(), "first_mismatch_exp2": r.first_mismatch, "N_used": r.state_sum.n_used}),
            );
            if !r.agree() {
                return Err(Failure::Mismatch);
            }
        }
    }
    Ok(())
}

fn block(out: &Out, b: BlockCmd, prec2: i64) -> Result<(), Failure> {
    match b {
        BlockCmd::U { a, hat } => {
            let u = blocks::unknot(a);
            if hat {
                out.series(&format!("hat U({a})"), &u.hat()?.truncate(prec2));
            } else {
                out.series(&format!("U({a})"), &u);
            }
        }
        BlockCmd::Theta { a, b, c, hat } => {
            let t = AdmissibleTriple::new(a, b, c)?;
            let label = format!("Theta({a},{b},{c})");
            if hat {
                out.series(&format!("hat {label}"), &blocks::hat_theta(&t, prec2)?);
            } else {
                out.series(&label, &blocks::theta(&t));
            }
        }
        BlockCmd::Tet { a, b, e, d, c, f, hat } => {
            let s = SixColors::new(a, b, e, d, c, f)?;
            let label = format!("Tet({a},{b},{e};{d},{c},{f})");
            if hat {
                out.series(&format!("hat {label}"), &blocks::hat_tet(&s, prec2)?);
            } else {
                out.series(&label, &blocks::tet(&s));
            }
        }
    }
    Ok(())
}

fn stab_check(out: &Out, order2: i64, shift_max: u64, max_color: u64) -> Result<(), Failure> {
    let mut ok = true;
    out.series("theta_limit", &blocks::theta_limit(order2));
    for t in blocks::admissible_triples(max_color) {
        let r = blocks::theta_stabilization(&t, order2, shift_max)?;
        ok &= r.stabilized();
        let (a, b, c) = t.colors();
        out.value("theta", json!({"colors": [a, b, c], "first_n": r.first_n}));
    }
    for s in blocks::admissible_six(max_color) {
        let r = blocks::tet_stabilization(&s, order2, shift_max)?;
        ok &= r.stabilized();
        let signed = if r.stabilized() {
            r.first_n
        } else {
            blocks::tet_stabilization_signed(&s, order2, shift_max)?.first_n
        };
        out.value(
            "tet",
            json!({
                "colors": [s.a, s.b, s.e, s.d, s.c, s.f],
                "s_star": s.st().s_starred(),
                "first_n": r.first_n,
                "first_n_signed_limit": signed,
            }),
        );
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn tri_info(out: &Out, t: &Triangulation) {
    out.value("tets", json!(t.num_tets()));
    for e in t.edge_classes() {
        out.value(
            "edge_class",
            json!({"id": e.id, "degree": e.degree(), "incidences": e.incidences}),
        );
    }
    for f in t.face_classes() {
        out.value(
            "face_class",
            json!({"id": f.id, "tet": f.tet, "face": f.face, "edges": f.edges}),
        );
    }
    for v in t.vertex_classes() {
        out.value(
            "vertex_class",
            json!({"id": v.id, "corners": v.corners, "link_euler": v.link_euler}),
        );
    }
    let labels = t.tet_edge_labels();
    for (j, row) in labels.0.iter().enumerate() {
        out.value("tet_edges", json!({"tet": j, "edge_classes": row}));
    }
    for j in 0..t.num_tets() {
        let nb: Vec<Value> = (0..4)
            .map(|f| {
                let (k, g, p) = t.neighbor(j, f);
                json!([k, g, p.images()])
            })
            .collect();
        out.value("tet_faces", json!({"tet": j, "glued_to": nb}));
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .expect("global thread pool is configured once");
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
