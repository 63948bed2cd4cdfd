//! `kduality`: complexes in, homology and duality verdicts out.

mod input;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use kduality::{
    dk_cw, homology, verify_chain_duality, CheckResult, Conventions, DualityContext, HomologySummary, Status, Variant,
    VerifyOptions,
};

use input::ComplexFile;

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "kduality", version, about = "Chain duality over a finite simplicial complex")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simplex counts and the number of dual cells.
    Info {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Integer homology of ΔK, ΔK^{-*} or C(DK).
    Homology(HomologyArgs),
    /// Run the verification suite; exit 1 if any check fails.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct HomologyArgs {
    file: PathBuf,
    #[arg(long, value_enum, default_value = "delta")]
    complex: Selector,
    /// Homology of the colimit (the default).
    #[arg(long, conflicts_with = "per_object")]
    colim: bool,
    /// Homology of [C](σ) at every object.
    #[arg(long)]
    per_object: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Selector {
    Delta,
    DeltaDual,
    Cdk,
}

impl Selector {
    fn name(self) -> &'static str {
        match self {
            Selector::Delta => "delta",
            Selector::DeltaDual => "delta-dual",
            Selector::Cdk => "cdk",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    K,
    Kop,
    Both,
}

#[derive(Args)]
struct VerifyArgs {
    file: PathBuf,
    #[arg(long, value_enum, default_value = "both")]
    variant: VariantArg,
    #[arg(long, default_value_t = 10)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    json: bool,
    /// Record wall-clock times per check (output is then no longer reproducible).
    #[arg(long)]
    timings: bool,
    /// Debugging: use a wrong sign in the symmetry isomorphism.
    #[arg(long)]
    inject_sign_fault: bool,
}

#[derive(Serialize)]
struct InfoDoc {
    schema: u32,
    command: &'static str,
    f_vector: Vec<usize>,
    dk_cells: usize,
}

#[derive(Serialize)]
struct ObjectHomology {
    object: String,
    homology: HomologySummary,
}

#[derive(Serialize)]
struct HomologyDoc {
    schema: u32,
    command: &'static str,
    complex: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    colim: Option<HomologySummary>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    per_object: Vec<ObjectHomology>,
}

#[derive(Serialize)]
struct Summary {
    total: usize,
    pass: usize,
    fail: usize,
    skipped: usize,
    info: usize,
}

#[derive(Serialize)]
struct VerifyDoc<'a> {
    schema: u32,
    command: &'static str,
    f_vector: Vec<usize>,
    variants: Vec<&'static str>,
    samples: usize,
    seed: u64,
    passed: bool,
    summary: Summary,
    checks: &'a [CheckResult],
}

fn print_json<T: Serialize>(doc: &T) {
    println!("{}", serde_json::to_string_pretty(doc).expect("documents serialise"));
}

fn load(path: &Path) -> Result<ComplexFile, ExitCode> {
    ComplexFile::read(path).map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    })
}

fn info(file: PathBuf, json: bool) -> Result<ExitCode, ExitCode> {
    let f = load(&file)?;
    let fv = f.complex.f_vector();
    let cells = dk_cw(&f.complex).len();
    if json {
        print_json(&InfoDoc {
            schema: SCHEMA,
            command: "info",
            f_vector: fv,
            dk_cells: cells,
        });
    } else {
        let fv: Vec<String> = fv.iter().map(usize::to_string).collect();
        println!("f-vector {}; DK cells {cells}", fv.join(","));
    }
    Ok(ExitCode::SUCCESS)
}

fn failure(e: kduality::Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::FAILURE
}

fn homology_cmd(a: HomologyArgs) -> Result<ExitCode, ExitCode> {
    let f = load(&a.file)?;
    let ctx = DualityContext::new(f.complex);
    let c = match a.complex {
        Selector::Delta => ctx.delta().clone(),
        Selector::DeltaDual => ctx.codelta().clone(),
        Selector::Cdk => ctx.cdk_chain(),
    };
    let mut doc = HomologyDoc {
        schema: SCHEMA,
        command: "homology",
        complex: a.complex.name(),
        colim: None,
        per_object: Vec::new(),
    };
    if a.per_object {
        let p = c.poset().clone();
        for o in 0..p.len() {
            doc.per_object.push(ObjectHomology {
                object: p.label(o).to_string(),
                homology: homology(&c.embedded_at(o)).map_err(failure)?,
            });
        }
    } else {
        doc.colim = Some(homology(&c.colim()).map_err(failure)?);
    }
    if a.json {
        print_json(&doc);
        return Ok(ExitCode::SUCCESS);
    }
    let table = |h: &HomologySummary, indent: &str| {
        if h.groups.is_empty() {
            println!("{indent}(zero complex)");
        }
        for g in &h.groups {
            let torsion: Vec<String> = g.torsion.iter().map(|t| t.to_string()).collect();
            println!(
                "{indent}H{:<3} betti {:<3} torsion [{}]   {g}",
                g.degree,
                g.betti,
                torsion.join(", ")
            );
        }
    };
    if let Some(h) = &doc.colim {
        println!("{} colim: {h}", doc.complex);
        table(h, "  ");
    }
    for o in &doc.per_object {
        println!("{} at {}: {}", doc.complex, o.object, o.homology);
        table(&o.homology, "  ");
    }
    Ok(ExitCode::SUCCESS)
}

fn verify_cmd(a: VerifyArgs) -> Result<ExitCode, ExitCode> {
    let f = load(&a.file)?;
    let variants = match a.variant {
        VariantArg::K => vec![Variant::K],
        VariantArg::Kop => vec![Variant::KOp],
        VariantArg::Both => Variant::BOTH.to_vec(),
    };
    let opts = VerifyOptions {
        variants: variants.clone(),
        samples: a.samples,
        seed: a.seed,
        conventions: Conventions {
            faulty_swap: a.inject_sign_fault,
        },
        timings: a.timings,
    };
    let mut report = verify_chain_duality(&f.complex, &opts).map_err(failure)?;
    for (name, d) in &f.dissections {
        report.extend(d.check(&format!("file-{name}")));
    }
    let passed = report.all_passed();
    if a.json {
        print_json(&VerifyDoc {
            schema: SCHEMA,
            command: "verify",
            f_vector: f.complex.f_vector(),
            variants: variants.iter().map(|v| v.name()).collect(),
            samples: a.samples,
            seed: a.seed,
            passed,
            summary: Summary {
                total: report.checks.len(),
                pass: report.count(Status::Pass),
                fail: report.count(Status::Fail),
                skipped: report.count(Status::Skipped),
                info: report.count(Status::Info),
            },
            checks: &report.checks,
        });
    } else {
        for c in &report.checks {
            let tag = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
                Status::Info => "info",
            };
            let ms = c.elapsed_ms.map(|t| format!(" {t}ms")).unwrap_or_default();
            println!("{tag}  {:<36} {}{ms}", c.id, c.citation);
            for w in &c.witnesses {
                println!("      {w}");
            }
        }
        println!(
            "{} checks: {} pass, {} fail, {} skipped, {} info",
            report.checks.len(),
            report.count(Status::Pass),
            report.count(Status::Fail),
            report.count(Status::Skipped),
            report.count(Status::Info)
        );
    }
    if passed {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("failing checks: {}", report.failing_ids().join(" "));
        Ok(ExitCode::FAILURE)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let r = match cli.command {
        Command::Info { file, json } => info(file, json),
        Command::Homology(a) => homology_cmd(a),
        Command::Verify(a) => verify_cmd(a),
    };
    r.unwrap_or_else(|code| code)
}
