use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use leibniz_core::covering::{gpd_cov_roundtrip_ok, xmod_cov_roundtrip_ok};
use leibniz_core::enumerate::enumerate_leibniz_with_budget;
use leibniz_core::io::serialize_compact;
use leibniz_core::{
    action_groupoid, check_covering, check_covering_xmod, covering_class, delta, eta, fixtures, lift, parse,
    roundtrip_cov_action, roundtrip_delta_eta, roundtrip_eta_delta, semidirect, serialize, CoveringXModMorphism,
    Document, Error, FieldSpec, Kind, Matrix, Report, Scalar, Structure,
};

#[derive(Parser)]
#[command(name = "leibniz", version, about = "Exact computations with Leibniz algebras, crossed modules and groupoids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a document of any kind and print its report.
    Validate {
        file: PathBuf,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Build a new structure from an existing one.
    Build {
        #[command(subcommand)]
        what: Build,
    },
    /// Convert between crossed modules and internal groupoids.
    Convert {
        #[command(subcommand)]
        what: Convert,
    },
    /// Decide whether a morphism is a covering.
    Check {
        #[command(subcommand)]
        what: Check,
    },
    /// Build and verify the comparison isomorphism for an xmod, a groupoid
    /// or a covering.
    Roundtrip { file: PathBuf },
    /// Lift an arrow of the base groupoid along a covering.
    Lift {
        file: PathBuf,
        /// Comma-separated arrow coordinates in the base groupoid.
        #[arg(long, allow_hyphen_values = true)]
        arrow: String,
        /// Comma-separated object coordinates in the covering groupoid.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Enumerate structures over a small prime field, one compact document per line.
    Enumerate {
        #[arg(long, value_enum, default_value = "leibniz")]
        kind: EnumKind,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = leibniz_core::enumerate::DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Print a shipped fixture document, or list fixture names.
    Fixtures {
        #[arg(long, conflicts_with = "list", required_unless_present = "list")]
        name: Option<String>,
        #[arg(long)]
        list: bool,
        /// `rational` (default) or a prime.
        #[arg(long, default_value = "rational")]
        field: String,
    },
}

#[derive(Subcommand)]
enum Build {
    /// Semidirect product split extension of an action.
    Semidirect { file: PathBuf },
    /// Action groupoid of a groupoid action.
    ActionGroupoid {
        file: PathBuf,
        /// Print the projection covering instead of the groupoid.
        #[arg(long)]
        projection: bool,
    },
}

#[derive(Subcommand)]
enum Convert {
    /// Crossed module to internal groupoid.
    Delta { file: PathBuf },
    /// Internal groupoid to crossed module.
    Eta { file: PathBuf },
}

#[derive(Subcommand)]
enum Check {
    /// Groupoid morphism covering test.
    Covering {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Crossed module morphism covering test.
    CoveringXmod {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumKind {
    Leibniz,
}

/// Failure modes mapped onto exit codes.
enum Failure {
    /// Exit 1: the input is well formed but fails validation.
    Invalid(String),
    /// Exit 2: malformed input or wrong document kind.
    Malformed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invalid(_) | Error::NotComposable | Error::BasePointMismatch => Failure::Invalid(e.to_string()),
            _ => Failure::Malformed(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Invalid(msg)) => {
            eprintln!("invalid: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Malformed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_doc(path: &PathBuf) -> Result<Document, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Malformed(format!("stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))?
    };
    Ok(parse(&text)?)
}

fn wrong_kind(doc: &Document, wanted: &[Kind]) -> Failure {
    let wanted: Vec<_> = wanted.iter().map(|k| k.label()).collect();
    Failure::Malformed(format!("expected a {} document, found {}", wanted.join(" or "), doc.kind().label()))
}

/// Rejects a structure that fails validation after printing its report to
/// stderr.
fn require_valid(s: &Structure) -> Result<(), Failure> {
    let r = s.report();
    if r.valid() {
        Ok(())
    } else {
        eprint!("{}", r.to_table());
        Err(Failure::Invalid(format!("input {} fails validation", r.kind.label())))
    }
}

fn emit(text: &str) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| Failure::Malformed(format!("stdout: {e}")))
}

fn emit_doc(s: Structure) -> Outcome {
    emit(&serialize(&Document::new(s)))?;
    Ok(true)
}

fn print_report(r: &Report, as_json: bool) -> Result<(), Failure> {
    if as_json {
        emit(&format!("{}\n", serde_json::to_string_pretty(&r.to_json()).expect("json")))
    } else {
        emit(&r.to_table())
    }
}

fn parse_field(s: &str) -> Result<FieldSpec, Failure> {
    if s == "rational" || s == "Q" {
        return Ok(FieldSpec::Rational);
    }
    let p: u32 = s
        .parse()
        .map_err(|_| Failure::Malformed(format!("field must be `rational` or a prime, got `{s}`")))?;
    Ok(FieldSpec::prime(p)?)
}

fn parse_vector(f: FieldSpec, s: &str) -> Result<Vec<Scalar>, Failure> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|c| Ok(f.parse_scalar(c.trim())?)).collect()
}

fn format_vector(v: &[Scalar]) -> String {
    v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Validate { file, json } => {
            let doc = read_doc(&file)?;
            let r = doc.body.report();
            print_report(&r, json)?;
            Ok(r.valid())
        }
        Command::Build { what } => build(what),
        Command::Convert { what } => convert(what),
        Command::Check { what } => check(what),
        Command::Roundtrip { file } => roundtrip(&file),
        Command::Lift { file, arrow, at } => {
            let doc = read_doc(&file)?;
            let Structure::GpdMorphism(p) = &doc.body else {
                return Err(wrong_kind(&doc, &[Kind::GpdMorphism]));
            };
            require_valid(&doc.body)?;
            let f = p.target().arrows().field();
            let g = parse_vector(f, &arrow)?;
            let x = parse_vector(f, &at)?;
            if !check_covering(p) {
                return Err(Failure::Invalid("morphism is not a covering".into()));
            }
            let lifted = lift(p, &g, &x)?;
            emit(&format!("{}\n", format_vector(&lifted)))?;
            Ok(true)
        }
        Command::Enumerate { kind: EnumKind::Leibniz, dim, p, budget } => {
            let algs = enumerate_leibniz_with_budget(dim, p, budget)?;
            let mut text = String::new();
            for a in algs {
                text.push_str(&serialize_compact(&Document::new(Structure::Algebra(a))));
                text.push('\n');
            }
            emit(&text)?;
            Ok(true)
        }
        Command::Fixtures { name, list, field } => {
            let f = parse_field(&field)?;
            let all = fixtures::fixtures_over(f);
            if list {
                let names: String = all.iter().map(|x| format!("{}\n", x.name)).collect();
                emit(&names)?;
                return Ok(true);
            }
            let name = name.expect("clap enforces --name or --list");
            let fx = all
                .into_iter()
                .find(|x| x.name == name)
                .ok_or_else(|| Failure::Malformed(format!("unknown fixture `{name}` (try --list)")))?;
            emit_doc(fx.payload)
        }
    }
}

fn build(what: Build) -> Outcome {
    match what {
        Build::Semidirect { file } => {
            let doc = read_doc(&file)?;
            let Structure::Action(act) = &doc.body else {
                return Err(wrong_kind(&doc, &[Kind::Action]));
            };
            require_valid(&doc.body)?;
            let (_, ext) = semidirect(act)?;
            emit_doc(Structure::Extension(ext))
        }
        Build::ActionGroupoid { file, projection } => {
            let doc = read_doc(&file)?;
            let Structure::GpdAction(a) = &doc.body else {
                return Err(wrong_kind(&doc, &[Kind::GpdAction]));
            };
            require_valid(&doc.body)?;
            let (g, q) = action_groupoid(a)?;
            if projection {
                emit_doc(Structure::GpdMorphism(q))
            } else {
                emit_doc(Structure::Groupoid(g))
            }
        }
    }
}

fn convert(what: Convert) -> Outcome {
    match what {
        Convert::Delta { file } => {
            let doc = read_doc(&file)?;
            let Structure::XMod(x) = &doc.body else {
                return Err(wrong_kind(&doc, &[Kind::Xmod]));
            };
            require_valid(&doc.body)?;
            emit_doc(Structure::Groupoid(delta(x)?))
        }
        Convert::Eta { file } => {
            let doc = read_doc(&file)?;
            let Structure::Groupoid(g) = &doc.body else {
                return Err(wrong_kind(&doc, &[Kind::Groupoid]));
            };
            require_valid(&doc.body)?;
            emit_doc(Structure::XMod(eta(g)?))
        }
    }
}

fn check(what: Check) -> Outcome {
    let (file, as_json) = match &what {
        Check::Covering { file, json } | Check::CoveringXmod { file, json } => (file, *json),
    };
    let doc = read_doc(file)?;
    let report = match (&what, &doc.body) {
        (Check::Covering { .. }, Structure::GpdMorphism(p)) => {
            let mut r = doc.body.report();
            let covering = r.valid() && check_covering(p);
            r.info.retain(|(name, _)| *name != "covering");
            r.checks.push(("covering", covering));
            if covering {
                let class = covering_class(p)?;
                r.info.push(("transitive", class.transitive.to_string()));
                r.info.push(("universal", class.universal.to_string()));
            }
            r
        }
        (Check::CoveringXmod { .. }, Structure::XModMorphism(m)) => {
            let mut r = doc.body.report();
            let covering = r.valid() && check_covering_xmod(m);
            r.checks.push(("covering", covering));
            r
        }
        (Check::Covering { .. }, _) => return Err(wrong_kind(&doc, &[Kind::GpdMorphism])),
        (Check::CoveringXmod { .. }, _) => return Err(wrong_kind(&doc, &[Kind::XmodMorphism])),
    };
    print_report(&report, as_json)?;
    Ok(report.valid())
}

fn matrix_json(m: &Matrix) -> serde_json::Value {
    let rows: Vec<Vec<String>> = (0..m.rows()).map(|r| m.row(r).iter().map(|c| c.to_string()).collect()).collect();
    json!(rows)
}

fn roundtrip(file: &PathBuf) -> Outcome {
    let doc = read_doc(file)?;
    require_valid(&doc.body)?;
    let out = match &doc.body {
        Structure::XMod(x) => {
            let m = roundtrip_eta_delta(x)?;
            let ok = m.report().all_ok() && m.f1().is_bijective() && m.f0().is_bijective();
            json!({
                "kind": "xmod",
                "verified": ok,
                "l1": matrix_json(m.f1().matrix()),
                "l0": matrix_json(m.f0().matrix()),
            })
        }
        Structure::Groupoid(g) => {
            let m = roundtrip_delta_eta(g)?;
            json!({
                "kind": "groupoid",
                "verified": m.is_isomorphism(),
                "arrows": matrix_json(m.on_arrows().matrix()),
                "objects": matrix_json(m.on_objects().matrix()),
            })
        }
        Structure::GpdMorphism(p) => {
            if !check_covering(p) {
                return Err(Failure::Invalid("morphism is not a covering".into()));
            }
            let (fwd, back) = roundtrip_cov_action(p)?;
            let ok = fwd.is_isomorphism() && back.is_isomorphism() && gpd_cov_roundtrip_ok(p)?;
            json!({
                "kind": "covering",
                "verified": ok,
                "arrows": matrix_json(fwd.on_arrows().matrix()),
                "objects": matrix_json(fwd.on_objects().matrix()),
                "inverse_arrows": matrix_json(back.on_arrows().matrix()),
                "inverse_objects": matrix_json(back.on_objects().matrix()),
            })
        }
        Structure::XModMorphism(m) => {
            let c = CoveringXModMorphism::new(m.clone())?;
            json!({
                "kind": "covering_xmod",
                "verified": xmod_cov_roundtrip_ok(&c)?,
                "lifting": matrix_json(&leibniz_core::covering::xmod_lifting_matrix(&c)?),
            })
        }
        _ => return Err(wrong_kind(&doc, &[Kind::Xmod, Kind::Groupoid, Kind::GpdMorphism, Kind::XmodMorphism])),
    };
    let verified = out["verified"].as_bool().unwrap_or(false);
    emit(&format!("{out}\n"))?;
    if verified {
        Ok(true)
    } else {
        Err(Failure::Invalid("round trip failed to verify".into()))
    }
}
