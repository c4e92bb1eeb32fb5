use std::io::Read;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use factorsys::cohomology::{self, Cochain};
use factorsys::io::{document_value, to_canonical_string};
use factorsys::{
    extract_factor_system, fixtures, random, Algebra, Document, Error, Extension, FactorSystem, FieldSpec, Matrix,
    Section, Variety, Verdict, Violation,
};

const OK: u8 = 0;
const FAILED: u8 = 1;
const USAGE: u8 = 2;
const UNDECIDED: u8 = 3;

/// Factor systems, extensions and cohomology of small algebras.
///
/// File arguments accept a path, `-` for stdin, or `fixture:<name>`.
#[derive(Parser)]
#[command(name = "factorsys", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    Algebra,
    Fs,
    Ext,
}

#[derive(Subcommand)]
enum Command {
    /// Verify an algebra, factor system or extension document.
    Check { kind: CheckKind, file: String },
    /// Build the extension of a factor system, with its canonical section.
    Extend { fs: String },
    /// Read off the factor system of an extension along a section.
    Extract {
        ext: String,
        /// linear_map document; defaults to the canonical section
        #[arg(long)]
        section: Option<String>,
    },
    /// Transport a factor system along a linear map E: B → A.
    Transport {
        fs: String,
        #[arg(long = "map")]
        map: String,
    },
    /// Search for an equivalence E between two factor systems.
    Equiv {
        fs1: String,
        fs2: String,
        #[arg(long, default_value_t = factorsys::DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Search for a map E witnessing that a factor system splits.
    Split {
        fs: String,
        #[arg(long, default_value_t = factorsys::DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Central second cohomology of an algebra.
    H2 {
        b: String,
        #[arg(long = "coeff-dim", default_value_t = 1)]
        coeff_dim: usize,
    },
    /// Fact / split / Ext dimensions for abelian A and a fixed action.
    ExtGroup {
        a: String,
        b: String,
        /// factor_system document supplying the action; zero action if omitted
        #[arg(long)]
        action: Option<String>,
    },
    /// Apply the Leibniz coboundary to a cochain.
    D {
        #[arg(long)]
        n: usize,
        cochain: String,
        b: String,
    },
    /// Leibniz cohomology dimensions with trivial coefficients.
    Hn {
        b: String,
        #[arg(long)]
        n: usize,
        #[arg(long = "coeff-dim", default_value_t = 1)]
        coeff_dim: usize,
    },
    /// Apply an arrow of the functor diagram.
    Functor {
        alg: String,
        #[arg(long)]
        to: String,
    },
    /// A random valid algebra over GF(p).
    Random {
        variety: String,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Number of factor-system identity families of a variety.
    Mu { variety: String },
    /// Print a built-in algebra.
    Fixture { name: String },
}

fn read_document(arg: &str) -> anyhow::Result<Document> {
    if let Some(name) = arg.strip_prefix("fixture:") {
        return Ok(Document::Algebra(fixtures::fixture(name)?));
    }
    let text = if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        s
    } else {
        std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?
    };
    factorsys::parse_document(&text).with_context(|| format!("parsing {arg}"))
}

fn expect_kind(arg: &str, doc: &Document, kind: &str) -> anyhow::Result<()> {
    if doc.kind() != kind {
        return Err(Error::Parse {
            path: arg.to_string(),
            reason: format!("expected a {kind} document, found {}", doc.kind()),
        }
        .into());
    }
    Ok(())
}

fn read_algebra(arg: &str) -> anyhow::Result<Algebra> {
    match read_document(arg)? {
        Document::Algebra(a) => Ok(a),
        doc => expect_kind(arg, &doc, "algebra").map(|_| unreachable!()),
    }
}

fn read_fs(arg: &str) -> anyhow::Result<FactorSystem> {
    match read_document(arg)? {
        Document::FactorSystem(fs) => Ok(fs),
        doc => expect_kind(arg, &doc, "factor_system").map(|_| unreachable!()),
    }
}

fn read_ext(arg: &str) -> anyhow::Result<(Extension, Option<Section>)> {
    match read_document(arg)? {
        Document::Extension { ext, section } => Ok((ext, section)),
        doc => expect_kind(arg, &doc, "extension").map(|_| unreachable!()),
    }
}

fn read_map(arg: &str) -> anyhow::Result<Matrix> {
    match read_document(arg)? {
        Document::LinearMap(m) => Ok(m),
        doc => expect_kind(arg, &doc, "linear_map").map(|_| unreachable!()),
    }
}

fn parse_variety(s: &str) -> anyhow::Result<Variety> {
    Ok(s.parse::<Variety>()?)
}

fn print(v: &Value) {
    print!("{}", to_canonical_string(v));
}

fn print_doc(doc: &Document) {
    print(&document_value(doc));
}

fn violation_value(v: &Violation) -> Value {
    json!({
        "name": v.name,
        "indices": v.indices,
        "residual": v.residual.iter().map(ToString::to_string).collect::<Vec<_>>(),
    })
}

fn report_value(violations: &[Violation]) -> Value {
    json!({
        "ok": violations.is_empty(),
        "violations": violations.iter().map(violation_value).collect::<Vec<_>>(),
    })
}

fn status(ok: bool) -> u8 {
    if ok {
        OK
    } else {
        FAILED
    }
}

fn vectors_value(vs: &[factorsys::Vector]) -> Value {
    Value::Array(
        vs.iter()
            .map(|v| Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect()))
            .collect(),
    )
}

fn print_verdict(verdict: Verdict, negative: &str) -> u8 {
    match verdict {
        Verdict::Witness(e) => {
            print_doc(&Document::LinearMap(e));
            OK
        }
        Verdict::None => {
            print(&json!({ "verdict": negative }));
            FAILED
        }
        Verdict::Undecided => {
            print(&json!({ "verdict": "undecided" }));
            UNDECIDED
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    Ok(match cli.command {
        Command::Check { kind, file } => match kind {
            CheckKind::Algebra => {
                let r = read_algebra(&file)?.verify();
                print(&report_value(&r.violations));
                status(r.ok())
            }
            CheckKind::Fs => {
                let r = read_fs(&file)?.verify();
                let mut v = report_value(&r.violations);
                v["identity_family_count"] = json!(r.identity_family_count);
                print(&v);
                status(r.ok())
            }
            CheckKind::Ext => {
                let (ext, section) = read_ext(&file)?;
                let mut violations = ext.verify().violations;
                if let Some(t) = &section {
                    violations.extend(ext.check_section(t).violations);
                }
                let mut v = report_value(&violations);
                v["central"] = json!(violations.is_empty() && ext.is_central());
                print(&v);
                status(violations.is_empty())
            }
        },
        Command::Extend { fs } => {
            let (ext, t) = read_fs(&fs)?.construct_extension()?;
            print_doc(&Document::Extension { ext, section: Some(t) });
            OK
        }
        Command::Extract { ext, section } => {
            let (ext, _) = read_ext(&ext)?;
            let t = match section {
                Some(path) => Section { t: read_map(&path)? },
                None => ext.make_section()?,
            };
            let report = ext.check_section(&t);
            if !report.ok() {
                bail!(Error::PreimageOutsideImage(format!(
                    "invalid section: {}",
                    report.names().join(", ")
                )));
            }
            print_doc(&Document::FactorSystem(extract_factor_system(&ext, &t)?));
            OK
        }
        Command::Transport { fs, map } => {
            let fs = read_fs(&fs)?;
            print_doc(&Document::FactorSystem(fs.transport(&read_map(&map)?)?));
            OK
        }
        Command::Equiv { fs1, fs2, budget } => {
            let (fs1, fs2) = (read_fs(&fs1)?, read_fs(&fs2)?);
            print_verdict(factorsys::find_equivalence(&fs1, &fs2, budget), "inequivalent")
        }
        Command::Split { fs, budget } => {
            let fs = read_fs(&fs)?;
            print_verdict(factorsys::find_split_witness(&fs, budget)?, "nonsplit")
        }
        Command::H2 { b, coeff_dim } => {
            let h = cohomology::central_h2(coeff_dim, &read_algebra(&b)?);
            let (z2, b2, h2) = h.dims();
            print(&json!({"z2": z2, "b2": b2, "h2": h2, "basis": vectors_value(&h.h2_basis)}));
            OK
        }
        Command::ExtGroup { a, b, action } => {
            let (a, b) = (read_algebra(&a)?, read_algebra(&b)?);
            let action = match action {
                Some(path) => {
                    let fs = read_fs(&path)?;
                    if fs.a() != &a || fs.b() != &b {
                        bail!(Error::DimensionMismatch(format!(
                            "{path} is a factor system of different algebras"
                        )));
                    }
                    fs.action().clone()
                }
                None => factorsys::Action::zero(a.variety(), a.field(), a.dim(), b.dim()),
            };
            let d = cohomology::ext_dim(&a, &b, &action)?;
            print(&json!({"fact": d.fact, "split": d.split, "ext": d.ext}));
            OK
        }
        Command::D { n, cochain, b } => {
            let (field, c) = match read_document(&cochain)? {
                Document::Cochain { field, cochain } => (field, cochain),
                doc => return expect_kind(&cochain, &doc, "cochain").map(|_| unreachable!()),
            };
            if c.n != n {
                bail!(Error::DimensionMismatch(format!(
                    "--n {n} but the cochain has arity {}",
                    c.n
                )));
            }
            let b = read_algebra(&b)?;
            if b.field() != field {
                bail!(Error::FieldMismatch(format!(
                    "cochain over {field}, algebra over {}",
                    b.field()
                )));
            }
            let out: Cochain = cohomology::leibniz_coboundary(&b, &c)?;
            print_doc(&Document::Cochain { field, cochain: out });
            OK
        }
        Command::Hn { b, n, coeff_dim } => {
            let d = cohomology::leibniz_hn(&read_algebra(&b)?, coeff_dim, n)?;
            print(&json!({"zn": d.zn, "bn": d.bn, "hn": d.hn}));
            OK
        }
        Command::Functor { alg, to } => {
            let out = read_algebra(&alg)?.functor_map(parse_variety(&to)?)?;
            print_doc(&Document::Algebra(out));
            OK
        }
        Command::Random { variety, dim, p, seed } => {
            let field = FieldSpec::prime(p)?;
            print_doc(&Document::Algebra(random::random_algebra(
                parse_variety(&variety)?,
                field,
                dim,
                seed,
            )));
            OK
        }
        Command::Mu { variety } => {
            println!("{}", parse_variety(&variety)?.mu());
            OK
        }
        Command::Fixture { name } => {
            print_doc(&Document::Algebra(fixtures::fixture(&name)?));
            OK
        }
    })
}

/// Input problems exit with 2; failed preconditions with 1.
fn error_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(
            Error::InvalidFactorSystem(_)
            | Error::PreimageOutsideImage(_)
            | Error::SingularFrame
            | Error::NotAbelian
            | Error::IncompatibleAction(_)
            | Error::NotACocycle,
        ) => FAILED,
        _ => USAGE,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(error_code(&err))
        }
    }
}
