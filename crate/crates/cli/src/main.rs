//! `silting`: command-line front end.
//!
//! Exit codes: 0 success, 1 error, 2 verification mismatch (fixtures,
//! certificates, classification), 3 budget exhausted.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use silting_core::aepsilon::{build_a_epsilon, source_sink_simplify};
use silting_core::algebra::{build_based_algebra, BasedAlgebra};
use silting_core::borel_schur::{borel_schur_presentation_n2, borel_schur_quiver, structural_checks, BorelSchurParams};
use silting_core::certificate::{
    classification_report, concealed_certificate, run_certificate, standard_certificates, Construction, Evidence,
};
use silting_core::dsl::write_presentation;
use silting_core::emit::{emit_dot, graph_csv, graph_json};
use silting_core::explore::{
    all_sign_vectors, enumerate_2silt, enumerate_2silt_epsilon, format_sign_vector, parse_sign_vector, Exploration,
    Status, DEFAULT_BUDGET,
};
use silting_core::fixture::{verify_fixture, FixtureStatus};
use silting_core::mutation::Kernel;
use silting_core::named::{borel_schur_params, resolve_presentation};
use silting_core::normalize::normalize_presentation;
use silting_core::quiver::Presentation;
use silting_core::{Error, Fp, Rational, Result, Scalar};

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

#[derive(Parser)]
#[command(name = "silting", version, about = "Two-term silting complexes of bound quiver algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
    /// Worker threads (default: all cores). Outputs do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Ground field: `rat` or `fp:<q>` with q in 2, 3, 5, 7, 11, 13.
    #[arg(long, global = true, default_value = "rat")]
    scalar: String,
}

#[derive(Args, Clone, Default)]
struct Source {
    /// Built-in name (bs:n,r,p, square, bipartite-a3, linear:n, field,
    /// concealed:<target>) or a DSL path.
    #[arg(long)]
    algebra: Option<String>,
    /// DSL file.
    #[arg(long)]
    dsl: Option<PathBuf>,
}

#[derive(Args, Clone, Default)]
struct Output {
    /// Comma-separated formats: json, csv, dot, dsl.
    #[arg(long, value_delimiter = ',')]
    emit: Vec<String>,
    /// Directory for artifacts; without it a single format goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build an algebra and print its dimension, quiver and Hom table.
    Algebra {
        #[command(flatten)]
        src: Source,
        #[command(flatten)]
        out: Output,
    },
    /// Enumerate all basic two-term silting complexes.
    Enumerate {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        /// Also write each summand's complex into the JSON output.
        #[arg(long)]
        complexes: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Enumerate one sign region, or `--epsilon all` for a table of counts.
    EnumerateSign {
        #[command(flatten)]
        src: Source,
        #[arg(long, allow_hyphen_values = true)]
        epsilon: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long)]
        complexes: bool,
        #[command(flatten)]
        out: Output,
    },
    /// The reduced algebra of a sign vector.
    Aepsilon {
        #[command(flatten)]
        src: Source,
        #[arg(long, allow_hyphen_values = true)]
        epsilon: String,
        #[command(flatten)]
        out: Output,
    },
    /// Generate a Borel-Schur algebra.
    BorelSchur {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Run τ-tilting infiniteness certificates (all built-in ones by default).
    Certify {
        #[command(flatten)]
        src: Source,
        /// Target name: a3sq, a5bi, d6, e7-27, e7-p1.
        #[arg(long)]
        target: Option<String>,
        /// Elements to kill, comma separated.
        #[arg(long, value_delimiter = ',')]
        kill: Vec<String>,
        /// Vertices to keep (truncation), comma separated.
        #[arg(long, value_delimiter = ',')]
        keep: Vec<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Check fixture files.
    VerifyFixtures {
        files: Vec<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Classification verdicts with their evidence.
    Report {
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Single r; default sweeps 1..=7.
        #[arg(long)]
        r: Option<usize>,
        /// Single p; default sweeps 0, 2, 3, 5, 7.
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[command(flatten)]
        out: Output,
    },
}

/// Outcome of a command other than an error.
enum Outcome {
    Ok,
    Mismatch,
    Budget,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch) => ExitCode::from(2),
        Ok(Outcome::Budget) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(Error::Invalid("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Error::Invalid(e.to_string()))?;
    }
    let mode = cli.scalar.trim();
    if mode == "rat" {
        return dispatch::<Rational>(cli.cmd);
    }
    let q: u64 = mode
        .strip_prefix("fp:")
        .and_then(|q| q.parse().ok())
        .ok_or_else(|| Error::Invalid(format!("bad --scalar `{mode}`; use rat or fp:<q>")))?;
    match q {
        2 => dispatch::<Fp<2>>(cli.cmd),
        3 => dispatch::<Fp<3>>(cli.cmd),
        5 => dispatch::<Fp<5>>(cli.cmd),
        7 => dispatch::<Fp<7>>(cli.cmd),
        11 => dispatch::<Fp<11>>(cli.cmd),
        13 => dispatch::<Fp<13>>(cli.cmd),
        _ => Err(Error::Invalid(format!("fp:{q} is not supported; primes available: {PRIMES:?}"))),
    }
}

fn source_name(src: &Source) -> Result<String> {
    match (&src.algebra, &src.dsl) {
        (Some(a), None) => Ok(a.clone()),
        (None, Some(p)) => Ok(p.display().to_string()),
        (Some(_), Some(_)) => Err(Error::Invalid("give either --algebra or --dsl, not both".into())),
        (None, None) => Err(Error::Invalid("missing --algebra or --dsl".into())),
    }
}

fn load_presentation(src: &Source) -> Result<Presentation> {
    match &src.dsl {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
            silting_core::dsl::parse_presentation(&text)
        }
        None => resolve_presentation(&source_name(src)?, None),
    }
}

fn check_formats(out: &Output, allowed: &[&str]) -> Result<()> {
    for f in &out.emit {
        if !allowed.contains(&f.as_str()) {
            return Err(Error::Invalid(format!("--emit {f} is not available here (allowed: {})", allowed.join(", "))));
        }
    }
    if out.out.is_none() && out.emit.len() > 1 {
        return Err(Error::Invalid("several --emit formats need --out".into()));
    }
    Ok(())
}

fn file_stem(name: &str, eps: Option<&[i8]>) -> String {
    let mut s: String =
        name.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '.' { c } else { '-' }).collect();
    if let Some(e) = eps {
        s.push('_');
        s.extend(e.iter().map(|&x| if x > 0 { 'p' } else { 'm' }));
    }
    s
}

/// Writes `text` to `dir/name` through a temporary file in the same directory.
fn write_atomic(dir: &Path, name: &str, text: &str) -> Result<PathBuf> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    let io = |e: std::io::Error| Error::Io(e.to_string());
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(text.as_bytes()).map_err(io)?;
    #[cfg(unix)]
    {
        use std::os::unix::fs::PermissionsExt;
        tmp.as_file().set_permissions(std::fs::Permissions::from_mode(0o644)).map_err(io)?;
    }
    let path = dir.join(name);
    tmp.persist(&path).map_err(|e| Error::Io(e.to_string()))?;
    Ok(path)
}

/// Sends each artifact to its file, or the only one to stdout.
fn deliver(out: &Output, stem: &str, artifacts: Vec<(&str, String)>) -> Result<()> {
    match &out.out {
        Some(dir) => {
            for (ext, text) in artifacts {
                let p = write_atomic(dir, &format!("{stem}.{ext}"), &text)?;
                eprintln!("wrote {}", p.display());
            }
        }
        None => {
            for (_, text) in artifacts {
                print!("{text}");
            }
        }
    }
    Ok(())
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn format_table(t: &[Vec<usize>]) -> String {
    t.iter().map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>().join("\n")
}

fn algebra_summary<S: Scalar>(a: &BasedAlgebra<S>) -> serde_json::Value {
    let q = a.quiver();
    json!({
        "vertices": a.labels(),
        "dim": a.dim(),
        "arrows": q.arrows.iter().map(|ar| json!([q.vertices[ar.source].clone(), q.vertices[ar.target].clone()])).collect::<Vec<_>>(),
        "minimal_relations": a.minimal_relation_count(),
        "loewy_length": a.loewy_length(),
        "hom_dims": a.hom_dim_table(),
    })
}

fn print_algebra<S: Scalar>(a: &BasedAlgebra<S>) {
    let q = a.quiver();
    println!("vertices: {}", a.labels().join(" "));
    println!("dimension: {}", a.dim());
    println!("arrows: {}", q.arrows.len());
    for ar in &q.arrows {
        println!("  {} -> {}", q.vertices[ar.source], q.vertices[ar.target]);
    }
    println!("minimal relations: {}", a.minimal_relation_count());
    println!("dim Hom(P_i, P_j) (row i, column j):\n{}", format_table(&a.hom_dim_table()));
}

fn exploration_outcome(ex: &Exploration) -> Outcome {
    if ex.report.status == Status::BudgetExhausted {
        Outcome::Budget
    } else {
        Outcome::Ok
    }
}

fn summary_line(ex: &Exploration) -> String {
    let status = match ex.report.status {
        Status::Complete => "complete",
        Status::BudgetExhausted => "inconclusive (budget exhausted)",
    };
    format!(
        "{} nodes, {} τ-tilting, {} edges, {}",
        ex.graph.len(),
        ex.graph.tau_count(),
        ex.graph.edges.len(),
        status
    )
}

fn emit_graph<S: Scalar>(
    k: &Kernel<S>,
    name: &str,
    eps: Option<&[i8]>,
    ex: &Exploration,
    complexes: bool,
    out: &Output,
) -> Result<()> {
    let mut artifacts = Vec::new();
    for f in &out.emit {
        let text = match f.as_str() {
            "json" => to_json(&graph_json(k, name, eps, ex, complexes)),
            "csv" => graph_csv(&ex.graph),
            "dot" => emit_dot(&ex.graph),
            _ => unreachable!("checked"),
        };
        artifacts.push((f.as_str(), text));
    }
    deliver(out, &file_stem(name, eps), artifacts)
}

fn dispatch<S: Scalar>(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Algebra { src, out } => {
            check_formats(&out, &["json", "dsl"])?;
            let pres = load_presentation(&src)?;
            let a = build_based_algebra::<S>(&pres)?;
            if out.emit.is_empty() {
                print_algebra(&a);
                return Ok(Outcome::Ok);
            }
            let mut artifacts = Vec::new();
            for f in &out.emit {
                let text = match f.as_str() {
                    "json" => to_json(&algebra_summary(&a)),
                    _ => write_presentation(&normalize_presentation(&pres)?),
                };
                artifacts.push((f.as_str(), text));
            }
            deliver(&out, &file_stem(&source_name(&src)?, None), artifacts)?;
            Ok(Outcome::Ok)
        }
        Command::Enumerate { src, budget, complexes, out } => {
            check_formats(&out, &["json", "csv", "dot"])?;
            let name = source_name(&src)?;
            let a = build_based_algebra::<S>(&load_presentation(&src)?)?;
            let k = Kernel::new(&a);
            let ex = enumerate_2silt(&k, budget);
            eprintln!("{name}: {} ({} ms)", summary_line(&ex), ex.report.millis);
            if out.emit.is_empty() {
                println!("{}", summary_line(&ex));
            }
            emit_graph(&k, &name, None, &ex, complexes, &out)?;
            Ok(exploration_outcome(&ex))
        }
        Command::EnumerateSign { src, epsilon, budget, complexes, out } => {
            check_formats(&out, &["json", "csv", "dot"])?;
            let name = source_name(&src)?;
            let pres = load_presentation(&src)?;
            let n = pres.quiver.num_vertices();
            if epsilon.trim() == "all" {
                if !out.emit.is_empty() {
                    return Err(Error::Invalid("--epsilon all prints a table and takes no --emit".into()));
                }
                let a = build_based_algebra::<S>(&pres)?;
                let k = Kernel::new(&a);
                let mut outcome = Outcome::Ok;
                let (mut total, mut tau) = (0, 0);
                for e in all_sign_vectors(n) {
                    let ex = enumerate_2silt_epsilon(&k, &e, budget)?;
                    println!("{} {} {}", format_sign_vector(&e), ex.graph.len(), ex.graph.tau_count());
                    total += ex.graph.len();
                    tau += ex.graph.tau_count();
                    if !ex.is_complete() {
                        outcome = Outcome::Budget;
                    }
                }
                println!("total {total} {tau}");
                return Ok(outcome);
            }
            let eps = parse_sign_vector(&epsilon)?;
            if eps.len() != n {
                return Err(Error::Invalid(format!("--epsilon has {} entries, the algebra has {n} vertices", eps.len())));
            }
            let a = build_based_algebra::<S>(&pres)?;
            let k = Kernel::new(&a);
            let ex = enumerate_2silt_epsilon(&k, &eps, budget)?;
            eprintln!("{name} {}: {} ({} ms)", format_sign_vector(&eps), summary_line(&ex), ex.report.millis);
            if out.emit.is_empty() {
                println!("{}", summary_line(&ex));
            }
            emit_graph(&k, &name, Some(&eps), &ex, complexes, &out)?;
            Ok(exploration_outcome(&ex))
        }
        Command::Aepsilon { src, epsilon, out } => {
            check_formats(&out, &["json"])?;
            let name = source_name(&src)?;
            let pres = load_presentation(&src)?;
            let eps = parse_sign_vector(&epsilon)?;
            if eps.len() != pres.quiver.num_vertices() {
                return Err(Error::Invalid("--epsilon has the wrong length".into()));
            }
            let a = build_based_algebra::<S>(&pres)?;
            let ae = build_a_epsilon(&a, &eps)?;
            let simplify = source_sink_simplify(&a, &eps, borel_schur_params(&name))?;
            if out.emit.is_empty() {
                print_algebra(&ae);
                let label = |v: &Vec<usize>| v.iter().map(|&i| a.labels()[i].clone()).collect::<Vec<_>>().join(" ");
                println!("isolated sources with sign -: {}", label(&simplify.isolated_sources));
                println!("isolated sinks with sign +: {}", label(&simplify.isolated_sinks));
                if let Some(ok) = simplify.one_point_reduction {
                    println!("one-point reduction agrees: {ok}");
                }
                return Ok(Outcome::Ok);
            }
            let mut v = algebra_summary(&ae);
            v["epsilon"] = json!(format_sign_vector(&eps));
            v["simplify"] = serde_json::to_value(&simplify).expect("serializable");
            deliver(&out, &file_stem(&format!("{name}-aeps"), Some(&eps)), vec![("json", to_json(&v))])?;
            Ok(Outcome::Ok)
        }
        Command::BorelSchur { n, r, p, out } => {
            check_formats(&out, &["dsl", "json"])?;
            let params = BorelSchurParams::new(n, r, p)?;
            let stem = format!("bs-{n}-{r}-p{p}");
            if n != 2 {
                if out.emit.iter().any(|f| f == "dsl") {
                    return Err(Error::Invalid("relations are only available for n = 2".into()));
                }
                let q = borel_schur_quiver(params);
                let v = json!({
                    "n": n, "r": r, "p": p,
                    "vertices": q.vertices,
                    "arrows": q.arrows.iter().map(|ar| json!([ar.name, q.vertices[ar.source], q.vertices[ar.target]])).collect::<Vec<_>>(),
                    "note": "quiver only"
                });
                deliver(&out, &stem, vec![("json", to_json(&v))])?;
                return Ok(Outcome::Ok);
            }
            let pres = borel_schur_presentation_n2(r, p)?;
            let rep = structural_checks::<S>(r, p)?;
            if out.emit.is_empty() {
                print!("{}", write_presentation(&pres));
                println!(
                    "# dim {}, acyclic {}, schurian {}, anti-automorphism {}, one-point extension {}",
                    rep.dim, rep.acyclic, rep.schurian, rep.anti_automorphism, rep.one_point_extension
                );
            } else {
                let mut artifacts = Vec::new();
                for f in &out.emit {
                    let text = match f.as_str() {
                        "dsl" => write_presentation(&pres),
                        _ => to_json(&json!({
                            "n": n, "r": r, "p": p, "dim": rep.dim,
                            "acyclic": rep.acyclic, "schurian": rep.schurian,
                            "anti_automorphism": rep.anti_automorphism,
                            "one_point_extension": rep.one_point_extension,
                            "nonzero_hom_entries": rep.nonzero_hom_entries,
                        })),
                    };
                    artifacts.push((f.as_str(), text));
                }
                deliver(&out, &stem, artifacts)?;
            }
            Ok(if rep.all_pass() { Outcome::Ok } else { Outcome::Mismatch })
        }
        Command::Certify { src, target, kill, keep, out } => {
            check_formats(&out, &["json"])?;
            let certs = match target {
                Some(t) => {
                    let name = source_name(&src)?;
                    let a = build_based_algebra::<S>(&load_presentation(&src)?)?;
                    let c = if keep.is_empty() {
                        Construction::Quotient(kill)
                    } else {
                        Construction::Truncation { vertices: keep, kill }
                    };
                    vec![concealed_certificate(&name, &a, &c, &t)?]
                }
                None => standard_certificates().iter().map(run_certificate::<S>).collect::<Result<_>>()?,
            };
            for c in &certs {
                println!(
                    "{} {} -> {} ({}): dims {}/{}, relations {}/{}, {}",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.source,
                    c.target,
                    c.target_type,
                    c.dims.0,
                    c.dims.1,
                    c.relations.0,
                    c.relations.1,
                    match &c.permutation {
                        Some(p) => format!("vertex match {p:?}"),
                        None => "no vertex match".into(),
                    }
                );
            }
            if !out.emit.is_empty() {
                deliver(&out, "certificates", vec![("json", to_json(&certs))])?;
            }
            Ok(if certs.iter().all(|c| c.pass) { Outcome::Ok } else { Outcome::Mismatch })
        }
        Command::VerifyFixtures { files, budget } => {
            if files.is_empty() {
                return Err(Error::Invalid("no fixture files given".into()));
            }
            let (mut mismatch, mut exhausted) = (false, false);
            for f in &files {
                let rep = verify_fixture::<S>(f, budget)?;
                let status = match rep.status {
                    FixtureStatus::Pass => "PASS",
                    FixtureStatus::Mismatch => {
                        mismatch = true;
                        "MISMATCH"
                    }
                    FixtureStatus::BudgetExhausted => {
                        exhausted = true;
                        "INCONCLUSIVE"
                    }
                };
                println!(
                    "{status} {}: {} (expected {}){}{}",
                    rep.fixture,
                    rep.count,
                    rep.expect_count,
                    if rep.gmatrices_checked { ", g-matrices checked" } else { "" },
                    rep.first_difference.map(|d| format!("; {d}")).unwrap_or_default()
                );
            }
            Ok(if mismatch {
                Outcome::Mismatch
            } else if exhausted {
                Outcome::Budget
            } else {
                Outcome::Ok
            })
        }
        Command::Report { n, r, p, budget, out } => {
            check_formats(&out, &["json"])?;
            let rs: Vec<usize> = r.map_or((1..=7).collect(), |r| vec![r]);
            let ps: Vec<u64> = p.map_or(vec![0, 2, 3, 5, 7], |p| vec![p]);
            let mut reports = Vec::new();
            let mut outcome = Outcome::Ok;
            for &p in &ps {
                for &r in &rs {
                    let rep = classification_report::<S>(n, r, p, budget)?;
                    let evidence = match &rep.evidence {
                        Evidence::Enumeration { nodes } => format!("enumeration, {nodes} nodes"),
                        Evidence::Inconclusive { budget } => format!("enumeration inconclusive at budget {budget}"),
                        Evidence::Certificate { certificate, base_r, chain_verified } => format!(
                            "{} certificate on S⁺(2,{base_r}) {}, truncation chain {}",
                            certificate.target_type,
                            if certificate.pass { "passes" } else { "fails" },
                            if *chain_verified { "verified" } else { "fails" }
                        ),
                        Evidence::Citation { note } => note.clone(),
                    };
                    let verdict = match rep.verdict {
                        silting_core::certificate::Verdict::Finite => "finite",
                        silting_core::certificate::Verdict::Infinite => "infinite",
                    };
                    println!("S⁺({n},{r}) p={p}: {verdict} ({evidence})");
                    match rep.supported {
                        Some(false) => outcome = Outcome::Mismatch,
                        None if matches!(rep.evidence, Evidence::Inconclusive { .. }) => {
                            if !matches!(outcome, Outcome::Mismatch) {
                                outcome = Outcome::Budget;
                            }
                        }
                        _ => {}
                    }
                    reports.push(rep);
                }
            }
            if !out.emit.is_empty() {
                deliver(&out, "classification", vec![("json", to_json(&reports))])?;
            }
            Ok(outcome)
        }
    }
}
