use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use homotope_core::families::{
    catalog, catalog_json, family, instantiate, normal_form, verify_table, ConstructionKind, NormalFormKind, SizeKind,
};
use homotope_core::groups::{run_group_checks, GroupCheck};
use homotope_core::homotope::Axiom;
use homotope_core::involution::sign_label;
use homotope_core::{Error, Matrix, Ring};

#[derive(Parser)]
#[command(name = "homotope", version)]
#[command(about = "Exact checks for homotopes of classical Lie algebras, Lie triple systems and groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,

    /// Write the report here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Sizes {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,

    /// Comma-separated sizes, e.g. `1,2,2,1` for r,r',s,s'
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<usize>>,

    /// Q, QI or HQ; defaults to the first ring the object is defined over
    #[arg(long)]
    ring: Option<Ring>,
}

#[derive(Subcommand)]
enum Command {
    /// Closure and LTS axioms for a catalog family on seeded parameters
    Axioms {
        #[arg(long)]
        family: String,
        #[command(flatten)]
        sizes: Sizes,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// The verified 4×4 (space, parameter) table of a construction
    Table {
        #[arg(long)]
        construction: ConstructionKind,
        #[command(flatten)]
        sizes: Sizes,
        #[arg(long, default_value_t = 5)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Joint eigenspaces of a construction's involution pair
    Eigenspaces {
        #[arg(long)]
        construction: ConstructionKind,
        #[command(flatten)]
        sizes: Sizes,
        #[command(flatten)]
        output: Output,
    },
    /// Group law, homomorphism, tangent and membership checks on n×n matrices
    Group {
        #[arg(long, default_value = "all")]
        check: GroupCheck,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value = "Q")]
        ring: Ring,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Normal form of a parameter matrix read from a JSON file
    NormalForm {
        #[arg(long)]
        kind: NormalFormKind,
        /// `{"rows","cols","ring","entries"}` with entries as strings
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// The shipped family catalog
    ListFamilies {
        #[command(flatten)]
        output: Output,
    },
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

const WARN_ABOVE: usize = 4;

fn resolve_sizes(s: &Sizes, kind: SizeKind) -> Result<Vec<usize>, Failure> {
    let v = if let Some(v) = &s.sizes {
        v.clone()
    } else {
        match (kind, s.n, s.p, s.q) {
            (SizeKind::Square, Some(n), None, None) => vec![n],
            (SizeKind::Rect, None, Some(p), Some(q)) => vec![p, q],
            (SizeKind::Rect, Some(n), None, None) => vec![n, n],
            (SizeKind::Four, Some(n), None, None) => vec![n; 4],
            _ => {
                return Err(Failure::Usage(format!("expected sizes ({}); use --n, --p/--q or --sizes", kind.names().join(","))))
            }
        }
    };
    if v.len() != kind.arity() {
        return Err(Failure::Usage(format!("expected {} sizes ({}), got {}", kind.arity(), kind.names().join(","), v.len())));
    }
    if v.contains(&0) {
        return Err(Failure::Usage("sizes must be at least 1".into()));
    }
    if v.iter().any(|&x| x > WARN_ABOVE) {
        eprintln!("warning: sizes above {WARN_ABOVE} make exhaustive checks slow");
    }
    Ok(v)
}

fn construction_sizes(s: &Sizes, kind: ConstructionKind) -> Result<Vec<usize>, Failure> {
    resolve_sizes(s, if kind.is_rectangular() { SizeKind::Rect } else { SizeKind::Square })
}

fn emit(output: &Output, json: &Value, md: impl FnOnce() -> String) -> Result<(), Failure> {
    let text = match output.format {
        Format::Json => serde_json::to_string_pretty(json).expect("reports serialize") + "\n",
        Format::Md => md(),
    };
    match &output.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| Failure::Usage(e.to_string()))
        }
    }
}

fn mark(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

fn cmd_axioms(label: &str, sizes: &Sizes, samples: usize, seed: u64, output: &Output) -> Outcome {
    let info = homotope_core::families::lookup(label)?;
    let v = resolve_sizes(sizes, info.sizes)?;
    let fam = family(label, &v, sizes.ring)?;
    let report = fam.check(samples, seed)?;
    let json = json!({ "family": info, "report": report.to_json() });
    emit(output, &json, || {
        let mut md = format!("## {} over {} at sizes {:?}\n\n", info.label, fam.ring, v);
        md.push_str(&format!("alpha = {}, {}; dim V = {}\n\n", info.alpha, info.parameters, fam.space.dim()));
        md.push_str("| sample | closure | LT1 | LT2 | LT3 |\n|---|---|---|---|---|\n");
        for s in &report.samples {
            let ax = |a: Axiom| {
                s.lts
                    .as_ref()
                    .and_then(|l| l.as_array())
                    .and_then(|l| l.iter().find(|r| r["axiom"] == json!(a)))
                    .map(|r| mark(r["pass"] == json!(true)))
                    .unwrap_or("-")
            };
            md.push_str(&format!(
                "| {} | {} | {} | {} | {} |\n",
                s.index,
                mark(s.closure),
                ax(Axiom::LT1),
                ax(Axiom::LT2),
                ax(Axiom::LT3)
            ));
        }
        md.push_str(&format!("\nall pass: {}\n", report.all_pass()));
        md
    })?;
    Ok(report.all_pass())
}

fn cmd_table(kind: ConstructionKind, sizes: &Sizes, samples: usize, seed: u64, output: &Output) -> Outcome {
    let v = construction_sizes(sizes, kind)?;
    let c = instantiate(kind, &v, sizes.ring)?;
    let table = verify_table(&c, samples, seed)?;
    emit(output, &table.to_json(), || table.to_markdown())?;
    Ok(table.all_verified())
}

fn cmd_eigenspaces(kind: ConstructionKind, sizes: &Sizes, output: &Output) -> Outcome {
    let v = construction_sizes(sizes, kind)?;
    let c = instantiate(kind, &v, sizes.ring)?;
    let direct = c.decomposition.verify()?;
    let mut models = true;
    for m in &c.models {
        models &= m.is_bijection_onto(c.piece(&m.signs)?)?;
    }
    let mut json = c.to_json();
    json["dims"] = json!(c.dims());
    json["direct_sum"] = json!(direct);
    json["models_verified"] = json!(models);
    emit(output, &json, || {
        let mut md = format!("## {} over {}\n\n| piece | model | dim |\n|---|---|---|\n", c.name(), c.ring);
        for (s, p) in c.decomposition.pieces() {
            let model = c.model(s).map(|m| m.model.as_str()).unwrap_or("");
            md.push_str(&format!("| {} | {} | {} |\n", sign_label(s), model, p.dim()));
        }
        md.push_str(&format!("\ndirect sum: {direct}, models: {models}\n"));
        md
    })?;
    Ok(direct && models)
}

fn cmd_group(check: GroupCheck, n: usize, ring: Ring, samples: usize, seed: u64, output: &Output) -> Outcome {
    let report = run_group_checks(check, n, ring, samples, seed)?;
    emit(output, &report.to_json(), || {
        let mut md = format!("## group checks, n = {n} over {ring}\n\n| check | trials | passed |\n|---|---|---|\n");
        for c in &report.checks {
            md.push_str(&format!("| {} | {} | {} |\n", c.check.name(), c.trials, c.passed));
        }
        for c in &report.checks {
            for f in &c.failures {
                md.push_str(&format!("\n- {}: {f}", c.check.name()));
            }
        }
        md.push_str(&format!("\nall pass: {}\n", report.all_pass()));
        md
    })?;
    Ok(report.all_pass())
}

fn cmd_normal_form(kind: NormalFormKind, input: &PathBuf, output: &Output) -> Outcome {
    let text = fs::read_to_string(input).map_err(|e| Failure::Usage(format!("{}: {e}", input.display())))?;
    let a: Matrix = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", input.display())))?;
    let nf = normal_form(&a, kind)?;
    let identity = nf.verify_identity()?;
    let iso = nf.verify_isomorphism()?;
    let mut json = nf.to_json();
    json["identity_verified"] = json!(identity);
    json["isomorphism_verified"] = json!(iso);
    emit(output, &json, || {
        let mut md = format!("## {kind} normal form over {}\n\n", a.ring());
        md.push_str(&format!("- A = {}\n- A_nf = {}\n- left = {}\n- right = {}\n", nf.a, nf.a_nf, nf.left, nf.right));
        md.push_str(&format!("- rank = {}\n", nf.rank));
        if let Some(s) = nf.signature {
            md.push_str(&format!("- signs: {} positive, {} negative, {} zero\n", s.positive, s.negative, s.zero));
        }
        md.push_str(&format!("- A_nf = left·A·right: {identity}\n- homotopes isomorphic: {iso}\n"));
        md
    })?;
    Ok(identity && iso)
}

fn cmd_list(output: &Output) -> Outcome {
    emit(output, &catalog_json(), || {
        let mut md = String::from("| label | table | V+ | V- | alpha | parameters | rings | G | H |\n|---|---|---|---|---|---|---|---|---|\n");
        for f in catalog() {
            let rings: Vec<&str> = f.rings.iter().map(|r| r.name()).collect();
            md.push_str(&format!(
                "| {} | {} | {} | {} | {} | {} | {} | {} | {} |\n",
                f.label,
                f.table,
                f.v_plus,
                f.v_minus,
                f.alpha,
                f.parameters,
                rings.join(", "),
                f.g,
                f.h
            ));
        }
        md
    })?;
    Ok(true)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Axioms { family, sizes, samples, seed, output } => cmd_axioms(&family, &sizes, samples, seed, &output),
        Command::Table { construction, sizes, samples, seed, output } => cmd_table(construction, &sizes, samples, seed, &output),
        Command::Eigenspaces { construction, sizes, output } => cmd_eigenspaces(construction, &sizes, &output),
        Command::Group { check, n, ring, samples, seed, output } => cmd_group(check, n, ring, samples, seed, &output),
        Command::NormalForm { kind, input, output } => cmd_normal_form(kind, &input, &output),
        Command::ListFamilies { output } => cmd_list(&output),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli).and_then(|ok| if ok { Ok(()) } else { Err(Failure::Verification) }) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
