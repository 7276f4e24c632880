use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use mg_core::chains::{build_chain, ChainCoordinates};
use mg_core::dot::{emit_dot, Hasse};
use mg_core::duality::{algebra_from_space, dual_space, MGSpace};
use mg_core::enumerate::enumerate_algebras;
use mg_core::free::{count_checks, free_algebra, FreePresentation};
use mg_core::glivenko::{glivenko, GlivenkoError};
use mg_core::serial::{algebra_from_json, algebra_to_json, space_from_json, space_to_json};
use mg_core::terms::{catalog_by_label, check_identity_with_budget, parse_identity};
use mg_core::varieties::{discriminator_check, height_params, memberships, width_of, Family, VarietyTag};
use mg_core::verify::run_paper_suite;
use mg_core::{Config, FiniteMGAlgebra};

/// Free algebras up to this many elements are materialized.
const MATERIALIZE_CAP: usize = 1 << 12;

#[derive(Parser)]
#[command(name = "mg", version, about = "Finite monadic Gödel algebras")]
struct Cli {
    /// Print the JSON report instead of the summary.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the chain C_(m, m0, ..., mr).
    Chain {
        /// m followed by the parts, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        coords: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check an identity on an algebra.
    Check {
        #[command(flatten)]
        input: AlgebraInput,
        /// An equation such as "A(x|y) = Ax | Ay".
        #[arg(long, conflicts_with = "name")]
        identity: Option<String>,
        /// A catalogued identity: M1..M6, prelinearity, L1..L14, alpha_k, H_n, HE_n.
        #[arg(long)]
        name: Option<String>,
    },
    /// Structural classification, width, heights and variety memberships.
    Classify {
        #[command(flatten)]
        input: AlgebraInput,
        /// Largest variety parameter tested.
        #[arg(long, default_value_t = 4)]
        max_param: usize,
    },
    /// Dual space of an algebra.
    Dual {
        #[command(flatten)]
        input: AlgebraInput,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write a Hasse diagram; "-" for standard output.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Validate a space and optionally write its algebra.
    Space {
        #[arg(long)]
        validate: PathBuf,
        #[arg(long)]
        algebra_out: Option<PathBuf>,
    },
    /// The Glivenko homomorphism of an algebra in W_1.
    Glivenko {
        #[command(flatten)]
        input: AlgebraInput,
    },
    /// The free algebra on n generators in W_1.
    Free {
        #[arg(long)]
        n: usize,
        /// Run the counting checks.
        #[arg(long)]
        counts: bool,
        /// Write the dual space.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write a Hasse diagram of the dual space.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Draw only the quantifier-image part of the poset.
        #[arg(long, requires = "dot")]
        exists_only: bool,
        /// Accept three generators.
        #[arg(long)]
        allow_three: bool,
    },
    /// Enumerate algebras up to isomorphism.
    Enumerate {
        #[arg(long)]
        max_size: usize,
        /// Write each algebra as JSON into this directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Run the invariant suites.
    Verify {
        #[arg(long, default_value = "paper")]
        suite: String,
        #[arg(long, default_value_t = 6)]
        max_size: usize,
    },
    /// Hasse diagram of a space, of the dual of an algebra, or of a free algebra.
    Dot {
        #[arg(long, group = "source")]
        space: Option<PathBuf>,
        #[arg(long, group = "source")]
        algebra: Option<PathBuf>,
        #[arg(long, group = "source")]
        free: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct AlgebraInput {
    /// Algebra JSON file.
    #[arg(long)]
    algebra: PathBuf,
}

/// Malformed input and I/O problems; both exit with status 2.
#[derive(Debug)]
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

struct Outcome {
    report: Value,
    summary: String,
    ok: bool,
}

impl Outcome {
    fn ok(report: Value, summary: String) -> Self {
        Outcome { report, summary, ok: true }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let mut config = Config::from_env();
    if let Some(threads) = config.parallelism {
        // Only fails if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    if let Command::Free { allow_three: true, .. } = cli.command {
        config.allow_free_three = true;
    }
    match run(&cli.command, &config) {
        Ok(outcome) => {
            let text = if cli.json {
                let mut t = serde_json::to_string_pretty(&outcome.report).expect("plain data serializes");
                t.push('\n');
                t
            } else {
                outcome.summary
            };
            // A closed pipe downstream is not an error of ours.
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure(msg)) => {
            eprintln!("mg: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: &Command, config: &Config) -> Result<Outcome, Failure> {
    match command {
        Command::Chain { coords, out } => chain(coords, out.as_deref()),
        Command::Check { input, identity, name } => check(&load_algebra(&input.algebra)?, identity, name, config),
        Command::Classify { input, max_param } => classify(&load_algebra(&input.algebra)?, *max_param, config),
        Command::Dual { input, out, dot } => dual(&load_algebra(&input.algebra)?, out.as_deref(), dot.as_deref()),
        Command::Space { validate, algebra_out } => space(validate, algebra_out.as_deref(), config),
        Command::Glivenko { input } => glivenko_cmd(&load_algebra(&input.algebra)?),
        Command::Free { n, counts, out, dot, exists_only, .. } => {
            free(*n, *counts, out.as_deref(), dot.as_deref(), *exists_only, config)
        }
        Command::Enumerate { max_size, out_dir } => enumerate(*max_size, out_dir.as_deref(), config),
        Command::Verify { suite, max_size } => verify(suite, *max_size, config),
        Command::Dot { space, algebra, free, out } => dot(space.as_deref(), algebra.as_deref(), *free, out.as_deref(), config),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    if path == Path::new("-") {
        let _ = std::io::stdout().lock().write_all(text.as_bytes());
        return Ok(());
    }
    fs::write(path, text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_algebra(path: &Path) -> Result<FiniteMGAlgebra, Failure> {
    algebra_from_json(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_space(path: &Path) -> Result<MGSpace, Failure> {
    space_from_json(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("plain data serializes")
}

fn chain(list: &[usize], out: Option<&Path>) -> Result<Outcome, Failure> {
    let coords = ChainCoordinates::from_list(list)?;
    let algebra = build_chain(&coords);
    let text = algebra_to_json(&algebra);
    let mut summary = format!("C{coords}: {} elements, image {:?}\n", algebra.size(), algebra.image());
    match out {
        Some(path) => {
            write(path, &text)?;
            let _ = writeln!(summary, "written to {}", path.display());
        }
        None => summary.push_str(&format!("{text}\n")),
    }
    let report = json!({
        "coords": coords,
        "size": algebra.size(),
        "algebra": serde_json::from_str::<Value>(&text)?,
    });
    Ok(Outcome::ok(report, summary))
}

fn check(
    algebra: &FiniteMGAlgebra,
    identity: &Option<String>,
    name: &Option<String>,
    config: &Config,
) -> Result<Outcome, Failure> {
    let identity = match (identity, name) {
        (Some(text), None) => parse_identity(text)?,
        (None, Some(label)) => catalog_by_label(label)?,
        _ => return Err(Failure("give exactly one of --identity and --name".into())),
    };
    let found = check_identity_with_budget(algebra, &identity, config.identity_budget)?;
    let summary = match &found {
        None => format!("{} holds\n", identity.name),
        Some(c) => {
            let values: Vec<String> = c.assignment.iter().map(|(v, a)| format!("{v}={a}")).collect();
            format!("{} fails at {}: lhs {} rhs {}\n", identity.name, values.join(" "), c.lhs, c.rhs)
        }
    };
    let report = json!({ "identity": identity.name, "holds": found.is_none(), "counterexample": found });
    Ok(Outcome { report, summary, ok: found.is_none() })
}

fn classify(algebra: &FiniteMGAlgebra, max_param: usize, config: &Config) -> Result<Outcome, Failure> {
    let class = algebra.classify();
    let width = if class.fsi { Some(width_of(algebra, config)?) } else { None };
    let heights = height_params(algebra, config)?;
    let discriminator = discriminator_check(algebra);
    let table = memberships(algebra, max_param, config)?;
    let mut rows = Vec::new();
    for family in [Family::W, Family::H, Family::HExists] {
        let least = if family == Family::W { 1 } else { 2 };
        for p in least..=max_param {
            let tag = VarietyTag::new(family, p)?;
            rows.push((tag.to_string(), table[&tag]));
        }
    }
    let mut summary = String::new();
    let _ = writeln!(summary, "size={} fsi={} si={} simple={}", algebra.size(), class.fsi, class.si, class.simple);
    match &width {
        Some(w) => {
            let _ = writeln!(summary, "width={} orthogonal={:?} prime_cover={:?}", w.k, w.orthogonal.elements(), w.prime_cover);
        }
        None => summary.push_str("width=n/a (not fsi)\n"),
    }
    let _ = writeln!(summary, "(nH,nHE)=({},{})", heights.n_h, heights.n_he);
    let _ = writeln!(summary, "discriminator={discriminator}");
    let members: Vec<&str> = rows.iter().filter(|(_, h)| *h).map(|(t, _)| t.as_str()).collect();
    let _ = writeln!(summary, "in: {}", members.join(" "));
    let report = json!({
        "size": algebra.size(),
        "classification": class,
        "width": width,
        "heights": heights,
        "discriminator": discriminator,
        "memberships": rows.iter().map(|(t, h)| json!({"variety": t, "holds": h})).collect::<Vec<_>>(),
    });
    Ok(Outcome::ok(report, summary))
}

fn dual(algebra: &FiniteMGAlgebra, out: Option<&Path>, dot: Option<&Path>) -> Result<Outcome, Failure> {
    let d = dual_space(algebra)?;
    let text = space_to_json(&d.space);
    let mut summary = format!(
        "{} points, {} classes, primes {:?}\n",
        d.space.size(),
        d.space.classes().len(),
        d.primes
    );
    if let Some(path) = out {
        write(path, &text)?;
        let _ = writeln!(summary, "space written to {}", path.display());
    }
    if let Some(path) = dot {
        write(path, &emit_dot(&Hasse::of_dual(&d))?)?;
    }
    let report = json!({ "primes": d.primes, "space": serde_json::from_str::<Value>(&text)? });
    Ok(Outcome::ok(report, summary))
}

fn space(path: &Path, algebra_out: Option<&Path>, config: &Config) -> Result<Outcome, Failure> {
    let space = load_space(path)?;
    match space.validate(config.subset_scan_cap) {
        Ok(v) => {
            let mut summary = format!(
                "valid MG-space: {} points, {} classes, exhaustive={}\n",
                space.size(),
                space.classes().len(),
                v.exhaustive
            );
            let mut size = None;
            if let Some(out) = algebra_out {
                let a = algebra_from_space(&space, config.subset_scan_cap, MATERIALIZE_CAP)?;
                write(out, &algebra_to_json(&a.algebra))?;
                let _ = writeln!(summary, "algebra of {} elements written to {}", a.algebra.size(), out.display());
                size = Some(a.algebra.size());
            }
            let report = json!({
                "valid": true,
                "points": space.size(),
                "exhaustive": v.exhaustive,
                "increasing_sets": v.increasing_sets,
                "algebra_size": size,
            });
            Ok(Outcome::ok(report, summary))
        }
        Err(e) => Ok(Outcome {
            report: json!({ "valid": false, "reason": e.to_string() }),
            summary: format!("invalid: {e}\n"),
            ok: false,
        }),
    }
}

fn glivenko_cmd(algebra: &FiniteMGAlgebra) -> Result<Outcome, Failure> {
    let r = match glivenko(algebra) {
        Ok(r) => r,
        Err(GlivenkoError::NotInW1(c)) => {
            return Ok(Outcome {
                summary: format!("not in W_1: alpha_1 fails at {:?}\n", c.assignment),
                report: json!({ "in_w1": false, "counterexample": c }),
                ok: false,
            })
        }
        Err(e) => return Err(e.into()),
    };
    let carrier = &r.reg.carrier;
    let g: Vec<usize> = algebra.elements().map(|a| carrier[r.g.apply(a)]).collect();
    let mut summary = String::new();
    let _ = writeln!(summary, "Reg carrier: {carrier:?}");
    let _ = writeln!(summary, "g: {g:?}");
    let _ = writeln!(summary, "kernel D: {:?}", r.kernel);
    let _ = writeln!(summary, "Reg -> A/D isomorphism: {:?}", r.iso.map());
    let _ = writeln!(summary, "quotient semisimple: {}", r.semisimple);
    let report = json!({
        "in_w1": true,
        "carrier": carrier,
        "g": g,
        "kernel": r.kernel,
        "quotient_size": r.quotient.size(),
        "iso": r.iso.map(),
        "semisimple": r.semisimple,
    });
    Ok(Outcome { report, summary, ok: r.semisimple && r.g.surjective() })
}

fn free(
    n: usize,
    counts: bool,
    out: Option<&Path>,
    dot: Option<&Path>,
    exists_only: bool,
    config: &Config,
) -> Result<Outcome, Failure> {
    let p = FreePresentation::build(n, config)?;
    let algebra = match free_algebra(n, config, MATERIALIZE_CAP) {
        Ok(f) => Some(f.algebra.algebra.size()),
        Err(_) => None,
    };
    let mut summary = format!(
        "existsPi={} pi={} algebra={}\n",
        p.exists_pi.len(),
        p.pi.size(),
        algebra.map_or("not materialized".to_string(), |s| s.to_string())
    );
    let mut ok = true;
    let count_report = if counts {
        let c = count_checks(&p.exists_pi, config)?;
        let _ = writeln!(summary, "minimal={} ({})", c.minimal, c.simple_counts
            .iter()
            .map(|s| format!("m={}: {} vs formula {}", s.m, s.enumerated, s.formula))
            .collect::<Vec<_>>()
            .join(", "));
        let _ = writeln!(summary, "function sum={} maxima agree={}", c.function_sum, c.maxima_agree);
        let _ = writeln!(
            summary,
            "simple part: product of {} elements, generated={}",
            c.simple_product_size, c.simple_product_generated
        );
        let _ = writeln!(summary, "all checks pass={}", c.all_pass);
        ok = c.all_pass;
        Some(c)
    } else {
        None
    };
    if let Some(path) = out {
        write(path, &space_to_json(&p.pi.space))?;
    }
    if let Some(path) = dot {
        let h = if exists_only { Hasse::of_exists_pi(&p) } else { Hasse::of_free(&p) };
        write(path, &emit_dot(&h)?)?;
    }
    let report = json!({
        "n": n,
        "existsPi": p.exists_pi.len(),
        "pi": p.pi.size(),
        "algebra": algebra,
        "nodes": p.exists_pi.nodes.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        "counts": count_report,
    });
    Ok(Outcome { report, summary, ok })
}

fn enumerate(max_size: usize, out_dir: Option<&Path>, config: &Config) -> Result<Outcome, Failure> {
    let all = enumerate_algebras(max_size, config)?;
    let mut per_size = vec![[0usize; 4]; max_size + 1];
    for a in &all {
        let c = a.classify();
        let row = &mut per_size[a.size()];
        row[0] += 1;
        row[1] += usize::from(c.fsi);
        row[2] += usize::from(c.si);
        row[3] += usize::from(c.simple);
    }
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir).map_err(|e| Failure(format!("{}: {e}", dir.display())))?;
        let mut index = vec![0usize; max_size + 1];
        for a in &all {
            index[a.size()] += 1;
            write(&dir.join(format!("mg-{}-{}.json", a.size(), index[a.size()])), &algebra_to_json(a))?;
        }
    }
    let mut summary = String::from("size algebras fsi si simple\n");
    let mut rows = Vec::new();
    for (size, r) in per_size.iter().enumerate().skip(2) {
        let _ = writeln!(summary, "{size:>4} {:>8} {:>3} {:>2} {:>6}", r[0], r[1], r[2], r[3]);
        rows.push(json!({"size": size, "algebras": r[0], "fsi": r[1], "si": r[2], "simple": r[3]}));
    }
    let _ = writeln!(summary, "total {}", all.len());
    Ok(Outcome::ok(json!({ "max_size": max_size, "total": all.len(), "sizes": rows }), summary))
}

fn verify(suite: &str, max_size: usize, config: &Config) -> Result<Outcome, Failure> {
    if suite != "paper" {
        return Err(Failure(format!("unknown suite {suite:?}; available: paper")));
    }
    let report = run_paper_suite(max_size, config).map_err(Failure)?;
    let mut summary = String::new();
    for s in &report.suites {
        let status = if s.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(summary, "{status} {:<15} checked={:<6} failed={}", s.name, s.checked, s.failed);
        for f in &s.failures {
            let _ = writeln!(summary, "     {f}");
        }
    }
    let _ = writeln!(summary, "{}", if report.passed { "all suites pass" } else { "some suites fail" });
    Ok(Outcome { ok: report.passed, report: to_value(&report), summary })
}

fn dot(
    space: Option<&Path>,
    algebra: Option<&Path>,
    free: Option<usize>,
    out: Option<&Path>,
    config: &Config,
) -> Result<Outcome, Failure> {
    let h = match (space, algebra, free) {
        (Some(path), None, None) => Hasse::of_space(&load_space(path)?),
        (None, Some(path), None) => Hasse::of_dual(&dual_space(&load_algebra(path)?)?),
        (None, None, Some(n)) => Hasse::of_free(&FreePresentation::build(n, config)?),
        _ => return Err(Failure("give exactly one of --space, --algebra and --free".into())),
    };
    let text = emit_dot(&h)?;
    let points = h.labels.len();
    match out {
        Some(path) => {
            write(path, &text)?;
            Ok(Outcome::ok(json!({ "points": points, "path": path }), format!("{points} points written to {}\n", path.display())))
        }
        None => Ok(Outcome::ok(json!({ "points": points, "dot": text }), text)),
    }
}
