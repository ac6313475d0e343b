use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use zetacheck::catalog;
use zetacheck::congruence::{full_report, ReportError, ReportOptions, VerificationReport};
use zetacheck::counting::{count_tower, Arithmetic, CountConfig, CountError};
use zetacheck::hodge::{
    ax_katz_kappa, hodge_numbers, hodge_polygon, hodge_type, verify_12a, CompleteIntersectionSpec, HodgeDiamond,
    HodgeError,
};
use zetacheck::input::{InputError, VarietyInput};
use zetacheck::zeta::intpoly::render;
use zetacheck::zeta::{
    complete_intersection_zeta, extract_middle_factor, newton_polygon, pade_reconstruct, series_from_counts,
    RationalZeta, ZetaError,
};

const PASS: u8 = 0;
const CHECK_FAILED: u8 = 1;
const INPUT_ERROR: u8 = 2;
const BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "zetacheck", version, about = "Point counts, zeta functions and Hodge-theoretic congruences over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count points of X and of its complement over F_{q^s}, s = 1..S.
    Count(VarietyArgs),
    /// Reconstruct the zeta function from counts.
    Zeta {
        #[command(flatten)]
        variety: VarietyArgs,
        /// Numerator degree bound; forces generic rational reconstruction.
        #[arg(long, requires = "den_degree")]
        num_degree: Option<usize>,
        /// Denominator degree bound.
        #[arg(long, requires = "num_degree")]
        den_degree: Option<usize>,
    },
    /// Run every applicable congruence check and emit a report.
    Verify {
        #[command(flatten)]
        variety: VarietyArgs,
        /// Replace the Ax-Katz exponent in the count-level checks.
        #[arg(long)]
        kappa_override: Option<u32>,
        /// Add 1 to N_s at this level before checking.
        #[arg(long, hide = true)]
        corrupt_count: Option<usize>,
    },
    /// Hodge numbers of a smooth complete intersection.
    Hodge {
        /// Ambient projective dimension.
        #[arg(long)]
        n: u32,
        /// Comma-separated degrees of the defining forms.
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u32>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check the blow-up diamond identity over a grid of (κ, d, n).
    #[command(name = "12a")]
    Blowup {
        #[arg(long, default_value_t = 3)]
        kappa_max: u32,
        #[arg(long, default_value_t = 5)]
        d_max: u32,
        #[arg(long, default_value_t = 8)]
        n_max: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// List the built-in examples, or print one as an input document.
    Catalog {
        name: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct OutputArgs {
    /// Emit JSON.
    #[arg(long, conflicts_with = "text")]
    json: bool,
    /// Emit plain text (the default).
    #[arg(long)]
    text: bool,
}

#[derive(Args)]
struct VarietyArgs {
    /// Input document (JSON).
    #[arg(long, conflicts_with = "catalog", required_unless_present = "catalog")]
    input: Option<PathBuf>,
    /// Built-in example name.
    #[arg(long)]
    catalog: Option<String>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    d: Option<u32>,
    /// Tower height.
    #[arg(long = "S")]
    s: Option<usize>,
    /// Worker threads for counting.
    #[arg(long)]
    workers: Option<usize>,
    /// Maximum number of polynomial-system evaluations.
    #[arg(long)]
    budget: Option<u64>,
    /// Use log/exp table arithmetic where the field is small enough.
    #[arg(long)]
    tables: bool,
    #[command(flatten)]
    output: OutputArgs,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Failure {
            code: INPUT_ERROR,
            message: message.to_string(),
        }
    }
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::input(e)
    }
}

impl From<CountError> for Failure {
    fn from(e: CountError) -> Self {
        let code = match e {
            CountError::BudgetExceeded { .. } => BUDGET,
            CountError::Inconsistent(_) => CHECK_FAILED,
            CountError::Field(_) | CountError::EmptyTower => INPUT_ERROR,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<ZetaError> for Failure {
    fn from(e: ZetaError) -> Self {
        let code = match e {
            ZetaError::InsufficientCounts { .. } | ZetaError::InvalidInput(_) => INPUT_ERROR,
            _ => CHECK_FAILED,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<HodgeError> for Failure {
    fn from(e: HodgeError) -> Self {
        let code = match e {
            HodgeError::InvalidSpec(_) => INPUT_ERROR,
            HodgeError::InternalInconsistency(_) => CHECK_FAILED,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<ReportError> for Failure {
    fn from(e: ReportError) -> Self {
        match e {
            ReportError::Input(e) => e.into(),
            ReportError::Count(e) => e.into(),
            ReportError::Zeta(e) => e.into(),
            ReportError::Hodge(e) => e.into(),
            e @ ReportError::DegreeMismatch { .. } => Failure {
                code: CHECK_FAILED,
                message: e.to_string(),
            },
        }
    }
}

impl VarietyArgs {
    fn load(&self) -> Result<VarietyInput, Failure> {
        let mut input = match (&self.input, &self.catalog) {
            (Some(path), _) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
                VarietyInput::from_json(&text)?
            }
            (None, Some(name)) => catalog::lookup(name)
                .ok_or_else(|| Failure::input(format!("no catalog entry named {name:?}")))?
                .to_input(self.p, self.d, self.s),
            (None, None) => return Err(Failure::input("one of --input or --catalog is required")),
        };
        if self.input.is_some() {
            input.p = self.p.unwrap_or(input.p);
            input.d = self.d.unwrap_or(input.d);
            input.s = self.s.unwrap_or(input.s);
        }
        if self.budget.is_some() {
            input.budget = self.budget;
        }
        input.validate()?;
        Ok(input)
    }

    fn config(&self, input: &VarietyInput) -> CountConfig {
        let mut config = CountConfig::default();
        if let Some(w) = self.workers {
            config = config.with_workers(w.max(1));
        }
        if let Some(b) = input.budget {
            config = config.with_budget(b);
        }
        if self.tables {
            config = config.with_arithmetic(Arithmetic::Tables);
        }
        config
    }
}

fn print_json(value: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn cmd_count(args: &VarietyArgs) -> Result<u8, Failure> {
    let input = args.load()?;
    let system = input.validate()?;
    let counts = count_tower(&system, input.p, input.d, input.s, &args.config(&input))?;
    if args.output.json {
        print_json(&json!({ "variety": input.name, "counts": counts }));
    } else {
        println!("{} over F_{}", input.name, counts.q());
        for (s, (x, u)) in counts.counts.iter().zip(&counts.complement_counts).enumerate() {
            println!("s = {}: |X| = {x}, |U| = {u}", s + 1);
        }
    }
    Ok(PASS)
}

fn diamond_of(n: u32, degrees: &[u32]) -> Result<HodgeDiamond, HodgeError> {
    if degrees.is_empty() {
        Ok(HodgeDiamond::projective_space(n))
    } else {
        hodge_numbers(&CompleteIntersectionSpec::new(n, degrees.to_vec())?)
    }
}

fn cmd_zeta(args: &VarietyArgs, bounds: Option<(usize, usize)>) -> Result<u8, Failure> {
    let input = args.load()?;
    let system = input.validate()?;
    let counts = count_tower(&system, input.p, input.d, input.s, &args.config(&input))?;
    let series = series_from_counts(&counts, false);
    let q = counts.q();
    let (zeta, middle): (RationalZeta, Option<Vec<_>>) = match bounds {
        Some((num, den)) => (pade_reconstruct(&series, num, den)?, None),
        None if input.flags.smooth == Some(true) && input.flags.complete_intersection != Some(false) => {
            let dia = diamond_of(system.ambient_dim() as u32, system.degrees())?;
            let middle = extract_middle_factor(&series, dia.m, dia.primitive_middle_dim() as usize)?;
            (complete_intersection_zeta(&middle, &q, dia.m), Some(middle))
        }
        None => {
            return Err(Failure::input(
                "smoothness is not asserted; pass --num-degree and --den-degree for generic reconstruction",
            ))
        }
    };
    let numerator_polygon = newton_polygon(&zeta.numerator, input.p, input.d)?;
    let denominator_polygon = newton_polygon(&zeta.denominator, input.p, input.d)?;
    if args.output.json {
        print_json(&json!({
            "variety": input.name,
            "q": q.to_string(),
            "middle_factor": middle.as_ref().map(|m| m.iter().map(ToString::to_string).collect::<Vec<_>>()),
            "zeta": zeta,
            "numerator_newton": numerator_polygon,
            "denominator_newton": denominator_polygon,
        }));
    } else {
        println!("{} over F_{q}", input.name);
        if let Some(m) = &middle {
            println!("middle factor: {}", render(m));
        }
        println!("numerator:   {}", render(&zeta.numerator));
        println!("denominator: {}", render(&zeta.denominator));
        println!("numerator slopes:   {}", slopes(&numerator_polygon.slope_multiset()));
        println!("denominator slopes: {}", slopes(&denominator_polygon.slope_multiset()));
    }
    Ok(PASS)
}

fn slopes<T: ToString>(s: &[T]) -> String {
    if s.is_empty() {
        return "(none)".into();
    }
    s.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn print_report_text(r: &VerificationReport) {
    println!("{} over F_{} (n = {}, degrees {:?})", r.variety, r.field.q, r.n, r.degrees);
    let counts: Vec<String> = r.counts.counts.iter().map(ToString::to_string).collect();
    println!("counts: {}", counts.join(", "));
    let show = |k: Option<u32>| k.map_or("none".to_string(), |k| k.to_string());
    println!("κ (Ax-Katz): {}", show(r.kappa_axkatz));
    if let Some(h) = r.kappa_hodge {
        if h.no_primitive {
            println!("κ (Hodge type): {} (no primitive cohomology)", h.value);
        } else {
            println!("κ (Hodge type): {}", h.value);
        }
    }
    if let Some(z) = &r.zeta {
        println!("middle factor: {}", z.middle_factor_text);
    }
    for c in &r.checks {
        println!("  {:<24} {}", c.name, if c.pass { "pass" } else { "FAIL" });
    }
    for note in &r.notes {
        println!("note: {note}");
    }
    println!("{}", if r.pass { "PASS" } else { "FAIL" });
}

fn cmd_verify(args: &VarietyArgs, kappa_override: Option<u32>, corrupt_level: Option<usize>) -> Result<u8, Failure> {
    let input = args.load()?;
    let options = ReportOptions {
        kappa_override,
        corrupt_level,
    };
    let report = full_report(&input, &options, &args.config(&input))?;
    if args.output.json {
        print_json(&report);
    } else {
        print_report_text(&report);
    }
    if !report.pass {
        eprintln!("failed checks: {}", report.failed_checks().join(", "));
        Ok(CHECK_FAILED)
    } else if report.provenance.truncated_by_budget {
        eprintln!(
            "budget truncated the tower to S = {} of {}",
            report.provenance.s_computed, report.provenance.s_requested
        );
        Ok(BUDGET)
    } else {
        Ok(PASS)
    }
}

fn cmd_hodge(n: u32, degrees: &[u32], output: &OutputArgs) -> Result<u8, Failure> {
    let spec = CompleteIntersectionSpec::new(n, degrees.to_vec())?;
    let diamond = hodge_numbers(&spec)?;
    let ht = hodge_type(&diamond);
    let kappa = ax_katz_kappa(n, degrees);
    let polygon = hodge_polygon(&diamond, true);
    if output.json {
        print_json(&json!({
            "n": n,
            "degrees": spec.degrees,
            "dimension": diamond.m,
            "diamond": diamond,
            "hodge_type": ht,
            "kappa_axkatz": kappa,
            "primitive_hodge_polygon": polygon,
        }));
    } else {
        println!("complete intersection of degrees {:?} in P^{n}, dimension {}", spec.degrees, diamond.m);
        println!("{}", diamond.render());
        let prim: Vec<String> = diamond.h_prim.iter().map(ToString::to_string).collect();
        println!("primitive middle: {}", prim.join(" "));
        if ht.no_primitive {
            println!("Hodge type: {} (no primitive cohomology)", ht.value);
        } else {
            println!("Hodge type: {}", ht.value);
        }
        println!("Ax-Katz κ: {}", kappa.map_or("none".into(), |k| k.to_string()));
        println!("primitive Hodge slopes: {}", slopes(&polygon.slope_multiset()));
    }
    Ok(PASS)
}

fn cmd_blowup(kappa_max: u32, d_max: u32, n_max: u32, output: &OutputArgs) -> Result<u8, Failure> {
    let mut verdicts = Vec::new();
    for kappa in 1..=kappa_max {
        for d in 1..=d_max {
            for n in kappa..=n_max {
                verdicts.push(verify_12a(kappa, d, n)?);
            }
        }
    }
    let all = verdicts.iter().all(|v| v.holds);
    if output.json {
        print_json(&json!({ "all_hold": all, "verdicts": verdicts }));
    } else {
        println!("{:>3} {:>3} {:>3}  holds  low-rows  equivalence", "κ", "d", "n");
        for v in &verdicts {
            println!(
                "{:>3} {:>3} {:>3}  {:<5}  {:<8}  {}",
                v.kappa, v.d, v.n, v.holds, v.low_rows_vanish, v.equivalence_holds
            );
        }
        let held = verdicts.iter().filter(|v| v.holds).count();
        println!("{held} of {} hold", verdicts.len());
    }
    Ok(if all { PASS } else { CHECK_FAILED })
}

fn cmd_catalog(name: Option<&str>, output: &OutputArgs) -> Result<u8, Failure> {
    match name {
        Some(name) => {
            let entry = catalog::lookup(name).ok_or_else(|| Failure::input(format!("no catalog entry named {name:?}")))?;
            print_json(&entry.default_input());
        }
        None if output.json => {
            let docs: Vec<_> = catalog::entries().iter().map(|e| e.default_input()).collect();
            print_json(&docs);
        }
        None => {
            for e in catalog::entries() {
                println!("{:<26} P^{} p={} S={}  {}", e.name, e.n, e.p, e.s, e.description);
            }
        }
    }
    Ok(PASS)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Count(args) => cmd_count(&args),
        Command::Zeta {
            variety,
            num_degree,
            den_degree,
        } => cmd_zeta(&variety, num_degree.zip(den_degree)),
        Command::Verify {
            variety,
            kappa_override,
            corrupt_count,
        } => cmd_verify(&variety, kappa_override, corrupt_count),
        Command::Hodge { n, degrees, output } => cmd_hodge(n, &degrees, &output),
        Command::Blowup {
            kappa_max,
            d_max,
            n_max,
            output,
        } => cmd_blowup(kappa_max, d_max, n_max, &output),
        Command::Catalog { name, output } => cmd_catalog(name.as_deref(), &output),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { INPUT_ERROR } else { PASS });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
