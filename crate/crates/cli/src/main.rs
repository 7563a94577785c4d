use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gogmagog::asm::{all_asms, AsmJson};
use gogmagog::bijection::{forward_run, gog_to_gogam_n2, gogam_to_gog_n2, statistic_x11, RuleTag};
use gogmagog::enumerate::{count, count_asms, generate, FamilySpec};
use gogmagog::schutzenberger::{check_composition_order, schutzenberger};
use gogmagog::tableau::gt_to_ssyt;
use gogmagog::triangle::TriangleJson;
use gogmagog::verify::{verify, Suite};
use gogmagog::{Asm, FamilyKind, GtTriangle};
use serde_json::json;

#[derive(Parser)]
#[command(name = "gogmagog", version, about = "Gog, Magog and GOGAm triangles, ASMs and the (n,2) trapezoid bijection")]
struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for verify and enumerate (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that FILE holds a member of the given family
    Validate {
        #[arg(long)]
        kind: Kind,
        /// Restrict to (n,K) trapezoids
        #[arg(long, value_name = "K")]
        trapezoid: Option<usize>,
        file: PathBuf,
    },
    /// Convert between representations
    Convert {
        #[arg(long)]
        from: Kind,
        #[arg(long)]
        to: Target,
        /// Required (and must be 2) for gog <-> gogam
        #[arg(long, value_name = "K")]
        trapezoid: Option<usize>,
        file: PathBuf,
    },
    /// Apply the Schützenberger involution to a Gelfand-Tsetlin triangle
    Schutzenberger { file: PathBuf },
    /// Count the members of a family
    Count {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// List the members of a family, separated by blank lines
    Enumerate {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Run an exhaustive property suite
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[arg(long)]
        n: usize,
    },
    /// Rule histograms and x(1,1) preservation for (n,2) trapezoids
    Stats {
        #[arg(long)]
        n: usize,
    },
}

#[derive(clap::Args)]
struct FamilyArgs {
    #[arg(long)]
    kind: Kind,
    #[arg(long)]
    n: usize,
    /// Trapezoid width
    #[arg(long)]
    k: Option<usize>,
    /// Entry bound (required for gt)
    #[arg(long)]
    bound: Option<i32>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Gt,
    Gog,
    Magog,
    Gogam,
    Asm,
}

impl Kind {
    fn family(self) -> Option<FamilyKind> {
        match self {
            Kind::Gt => Some(FamilyKind::Gt),
            Kind::Gog => Some(FamilyKind::Gog),
            Kind::Magog => Some(FamilyKind::Magog),
            Kind::Gogam => Some(FamilyKind::Gogam),
            Kind::Asm => None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    Gog,
    Magog,
    Gogam,
    Asm,
    Ssyt,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: gogmagog::Error| e.to_string())
}

/// Exit status 1: the input or a property check failed. Status 2: the
/// request itself could not be carried out.
enum Failure {
    Check(String),
    Usage(String),
}

impl From<gogmagog::Error> for Failure {
    fn from(e: gogmagog::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: cannot configure {threads} threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Check(msg)) => {
            eprint!("{msg}");
            if !msg.ends_with('\n') {
                eprintln!();
            }
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Validate { kind, trapezoid, file } => validate(cli.json, *kind, *trapezoid, file),
        Command::Convert { from, to, trapezoid, file } => convert(cli.json, *from, *to, *trapezoid, file),
        Command::Schutzenberger { file } => {
            self_test()?;
            let t = read_triangle(file)?;
            require(t.is_gt(), || format!("not a Gelfand-Tsetlin triangle:\n{}", reasons(&t, FamilyKind::Gt, None)))?;
            Ok(render_triangle(cli.json, &schutzenberger(&t)))
        }
        Command::Count { family } => count_family(cli.json, family),
        Command::Enumerate { family } => enumerate(cli.json, family),
        Command::Verify { suite, n } => {
            self_test()?;
            let report = verify(*suite, *n)?;
            let text = if cli.json {
                format!("{}\n", serde_json::to_string_pretty(&report).expect("report serializes"))
            } else {
                report.to_text()
            };
            if report.passed() {
                Ok(text)
            } else {
                // the report still goes to stdout; the status carries the verdict
                print!("{text}");
                Err(Failure::Check(format!("suite {} failed with {} failures", report.suite, report.failure_count)))
            }
        }
        Command::Stats { n } => {
            self_test()?;
            stats(cli.json, *n)
        }
    }
}

fn self_test() -> Result<(), Failure> {
    check_composition_order().map_err(|e| Failure::Check(format!("internal self-test failed: {e}")))
}

fn require(ok: bool, msg: impl FnOnce() -> String) -> Result<(), Failure> {
    if ok {
        Ok(())
    } else {
        Err(Failure::Check(msg()))
    }
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
    }
}

fn is_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

fn read_triangle(path: &PathBuf) -> Result<GtTriangle, Failure> {
    let text = read_input(path)?;
    if is_json(&text) {
        let json: TriangleJson =
            serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        Ok(GtTriangle::from_json(&json)?)
    } else {
        Ok(GtTriangle::parse_text(&text)?)
    }
}

fn read_asm(path: &PathBuf) -> Result<Asm, Failure> {
    let text = read_input(path)?;
    if is_json(&text) {
        let json: AsmJson = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        Ok(Asm::from_json(&json)?)
    } else {
        Ok(Asm::parse_text(&text)?)
    }
}

fn render_triangle(json: bool, t: &GtTriangle) -> String {
    if json {
        format!("{}\n", serde_json::to_string(&t.to_json()).expect("triangle serializes"))
    } else {
        t.to_text()
    }
}

fn render_asm(json: bool, a: &Asm) -> String {
    if json {
        format!("{}\n", serde_json::to_string(&a.to_json()).expect("matrix serializes"))
    } else {
        a.to_text()
    }
}

fn reasons(t: &GtTriangle, kind: FamilyKind, k: Option<usize>) -> String {
    t.membership_violations(kind, k).iter().map(|r| format!("  {r}\n")).collect()
}

fn validate(json: bool, kind: Kind, trapezoid: Option<usize>, file: &PathBuf) -> Outcome {
    let problems: Vec<String> = match kind.family() {
        None => {
            if trapezoid.is_some() {
                return Err(Failure::Usage("--trapezoid does not apply to asm".into()));
            }
            read_asm(file)?.validate().iter().map(|v| v.to_string()).collect()
        }
        Some(family) => {
            let t = read_triangle(file)?;
            if family == FamilyKind::Gogam {
                self_test()?;
            }
            if let Some(k) = trapezoid {
                if k == 0 || k > t.n() {
                    return Err(Failure::Usage(format!("--trapezoid {k} outside 1..={}", t.n())));
                }
            }
            t.membership_violations(family, trapezoid)
        }
    };
    let label = match trapezoid {
        Some(k) => format!("{} ({k}-trapezoid)", kind_name(kind)),
        None => kind_name(kind).to_string(),
    };
    if json {
        let out = json!({ "kind": kind_name(kind), "trapezoid": trapezoid, "valid": problems.is_empty(), "violations": problems });
        let text = format!("{out}\n");
        if problems.is_empty() {
            return Ok(text);
        }
        print!("{text}");
        return Err(Failure::Check(format!("not a valid {label}")));
    }
    if problems.is_empty() {
        Ok(format!("valid {label}\n"))
    } else {
        let mut msg = format!("not a valid {label}:\n");
        for p in problems {
            let _ = writeln!(msg, "  {p}");
        }
        Err(Failure::Check(msg))
    }
}

fn kind_name(kind: Kind) -> &'static str {
    kind.family().map_or("asm", FamilyKind::name)
}

fn require_member(t: &GtTriangle, kind: FamilyKind, k: Option<usize>) -> Result<(), Failure> {
    let bad = t.membership_violations(kind, k);
    require(bad.is_empty(), || {
        let mut msg = format!("input is not a {}:\n", kind.name());
        for b in bad {
            let _ = writeln!(msg, "  {b}");
        }
        msg
    })
}

fn convert(json: bool, from: Kind, to: Target, trapezoid: Option<usize>, file: &PathBuf) -> Outcome {
    let needs_two = matches!((from, to), (Kind::Gog, Target::Gogam) | (Kind::Gogam, Target::Gog));
    if needs_two && trapezoid != Some(2) {
        return Err(Failure::Usage("gog <-> gogam conversion is only defined for --trapezoid 2".into()));
    }
    if !needs_two && trapezoid.is_some() {
        return Err(Failure::Usage("--trapezoid only applies to gog <-> gogam".into()));
    }
    match (from, to) {
        (Kind::Gog, Target::Asm) => {
            let t = read_triangle(file)?;
            require_member(&t, FamilyKind::Gog, None)?;
            Ok(render_asm(json, &Asm::from_gog(&t)))
        }
        (Kind::Asm, Target::Gog) => {
            let a = read_asm(file)?;
            let bad = a.validate();
            require(bad.is_empty(), || {
                let lines: Vec<String> = bad.iter().map(|v| format!("  {v}\n")).collect();
                format!("input is not an alternating sign matrix:\n{}", lines.concat())
            })?;
            Ok(render_triangle(json, &a.to_gog()))
        }
        (Kind::Magog, Target::Gogam) | (Kind::Gogam, Target::Magog) => {
            self_test()?;
            let t = read_triangle(file)?;
            let family = from.family().expect("triangle kind");
            require_member(&t, family, None)?;
            Ok(render_triangle(json, &schutzenberger(&t)))
        }
        (Kind::Gog, Target::Gogam) => {
            let t = read_triangle(file)?;
            require_member(&t, FamilyKind::Gog, Some(2))?;
            let (out, _) = gog_to_gogam_n2(&t).map_err(|e| Failure::Check(e.to_string()))?;
            Ok(render_triangle(json, &out))
        }
        (Kind::Gogam, Target::Gog) => {
            self_test()?;
            let t = read_triangle(file)?;
            require_member(&t, FamilyKind::Gogam, Some(2))?;
            let (out, _) = gogam_to_gog_n2(&t).map_err(|e| Failure::Check(e.to_string()))?;
            Ok(render_triangle(json, &out))
        }
        (Kind::Gt, Target::Ssyt) => {
            let t = read_triangle(file)?;
            require_member(&t, FamilyKind::Gt, None)?;
            let s = gt_to_ssyt(&t);
            if json {
                Ok(format!("{}\n", json!({ "n": t.n(), "rows_bottom_up": s.rows })))
            } else {
                Ok(s.to_string())
            }
        }
        _ => Err(Failure::Usage(format!(
            "no conversion from {} to {}",
            kind_name(from),
            to.to_possible_value().expect("named").get_name()
        ))),
    }
}

fn family_spec(args: &FamilyArgs) -> Result<FamilySpec, Failure> {
    let kind = args.kind.family().ok_or_else(|| Failure::Usage("asm has no family spec".into()))?;
    let spec = FamilySpec { kind, n: args.n, k: args.k, bound: args.bound };
    spec.check()?;
    if kind == FamilyKind::Gogam {
        self_test()?;
    }
    Ok(spec)
}

fn check_asm_args(args: &FamilyArgs) -> Result<(), Failure> {
    if args.k.is_some() || args.bound.is_some() {
        return Err(Failure::Usage("--k and --bound do not apply to asm".into()));
    }
    if args.n == 0 {
        return Err(Failure::Usage("n must be at least 1".into()));
    }
    Ok(())
}

fn count_family(json: bool, args: &FamilyArgs) -> Outcome {
    let total = if args.kind == Kind::Asm {
        check_asm_args(args)?;
        count_asms(args.n)
    } else {
        count(&family_spec(args)?)?
    };
    if json {
        Ok(format!(
            "{}\n",
            json!({ "kind": kind_name(args.kind), "n": args.n, "k": args.k, "bound": args.bound, "count": total.to_string() })
        ))
    } else {
        Ok(format!("{total}\n"))
    }
}

fn enumerate(json: bool, args: &FamilyArgs) -> Outcome {
    let items: Vec<String> = if args.kind == Kind::Asm {
        check_asm_args(args)?;
        all_asms(args.n).iter().map(|a| render_asm(json, a)).collect()
    } else {
        generate(&family_spec(args)?)?.map(|t| render_triangle(json, &t)).collect()
    };
    // text objects are separated by blank lines; JSON objects one per line
    Ok(if json { items.concat() } else { items.join("\n") })
}

fn stats(json: bool, n_max: usize) -> Outcome {
    if n_max == 0 {
        return Err(Failure::Usage("n must be at least 1".into()));
    }
    let mut rows = Vec::new();
    let mut broken = Vec::new();
    for n in 1..=n_max {
        let gogs: Vec<GtTriangle> = generate(&FamilySpec::new(FamilyKind::Gog, n))?
            .filter(|t| t.is_trapezoid(FamilyKind::Gog, 2))
            .collect();
        let mut rules: BTreeMap<&str, u64> = RuleTag::NAMES.iter().map(|&r| (r, 0)).collect();
        let mut x11_gog: BTreeMap<i32, u64> = BTreeMap::new();
        let mut x11_gogam: BTreeMap<i32, u64> = BTreeMap::new();
        let mut preserved = 0u64;
        for g in &gogs {
            let run = forward_run(g).map_err(|e| Failure::Check(e.to_string()))?;
            for tag in &run.trace {
                *rules.entry(tag.name()).or_default() += 1;
            }
            let (before, after) = (statistic_x11(g), statistic_x11(&run.output));
            *x11_gog.entry(before).or_default() += 1;
            *x11_gogam.entry(after).or_default() += 1;
            if before == after {
                preserved += 1;
            } else {
                broken.push(g.compact());
            }
        }
        rows.push(json!({
            "n": n, "trapezoids": gogs.len(), "rules": rules, "x11_preserved": preserved,
            "x11_gog": x11_gog, "x11_gogam": x11_gogam,
        }));
    }
    let out = if json {
        format!("{}\n", serde_json::to_string_pretty(&json!({ "n": n_max, "sizes": rows })).expect("serializes"))
    } else {
        let mut s = String::from("(n,2) Gog trapezoids: rules applied by the forward map\n");
        let _ = writeln!(s, "{:>3} {:>8} {}", "n", "count", RuleTag::NAMES.map(|r| format!("{r:>8}")).concat());
        for row in &rows {
            let num = |v: &serde_json::Value| v.as_u64().unwrap_or(0);
            let counts: String = RuleTag::NAMES.iter().map(|r| format!("{:>8}", num(&row["rules"][r]))).collect();
            let _ = writeln!(s, "{:>3} {:>8} {counts}", num(&row["n"]), num(&row["trapezoids"]));
        }
        s.push_str("\nx(1,1) distribution, Gog side -> GOGAm side\n");
        for row in &rows {
            let _ = writeln!(
                s,
                "n={}: preserved {}/{}; gog {}; gogam {}",
                row["n"], row["x11_preserved"], row["trapezoids"], row["x11_gog"], row["x11_gogam"]
            );
        }
        s
    };
    if broken.is_empty() {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::Check(format!("x(1,1) not preserved on {}", broken.join("; "))))
    }
}
