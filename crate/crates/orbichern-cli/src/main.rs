//! Command-line surface for the orbichern engines: subgroup-growth
//! sequences, homomorphism censuses, generating functions, symbolic
//! expansions, and the exact verification suites. Every invocation is
//! deterministic given its arguments; all numbers print as exact fractions.
//!
//! Exit codes: 0 success, 1 verification inequality, 2 usage error,
//! 3 enumeration budget exhausted.

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use orbichern::diagalg::{
    dey_wohlfahrt_rhs, dey_wohlfahrt_wreath_rhs, lemma_dey_lhs, wreath_base_assignment,
    BaseClass, BaseElement, DiagElement,
};
use orbichern::diagalg::{bryan_fulman_series, hom_oracle_lhs};
use orbichern::finmodel::{lemma_dey_check, lemma_deyg_check, verify_symmetric, verify_wreath, GSet};
use orbichern::grp::{free_abelian_j, j_sequence, u_sequence, Budget, FiniteGroup, GroupSpec};
use orbichern::homcount::{census_sym, census_wreath, hom_count_into, wreath_total_series};
use orbichern::qexact::{Rat, Series};
use orbichern::{Error, Result};

#[derive(Parser)]
#[command(
    name = "orbichern",
    version,
    about = "Exact generating-function calculus for symmetric and wreath quotients"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the subgroup-growth sequence j_1..j_R of a group.
    Jseq {
        /// Source group: 1, Z, Z^m, Z/d, Zp(p), or a presentation <a,b|...>
        #[arg(long)]
        group: String,
        /// Largest index R
        #[arg(long)]
        max: usize,
        /// Also print u_d (index-d subgroups up to conjugacy in S_d terms)
        #[arg(long)]
        conjugacy: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Count homomorphisms into S_n or G wr S_n, stratified by cycle type.
    Homcount {
        /// Source group specification
        #[arg(long)]
        source: String,
        /// Target family
        #[arg(long, value_enum)]
        target: TargetKind,
        /// Number of letters n
        #[arg(long)]
        n: usize,
        /// Base group for wreath targets: 1, Z/d, or S_k
        #[arg(long)]
        base: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate a named generating function to order N.
    Gf {
        #[arg(long, value_enum)]
        theorem: Theorem,
        /// Source group A (dw, dw-wreath, muller)
        #[arg(long)]
        group: Option<String>,
        /// Finite target group G (dw-wreath, tamanoi, muller)
        #[arg(long)]
        target: Option<String>,
        /// Euler characteristic value, an exact rational (macdonald,
        /// bryan-fulman, and non-symbolic dw)
        #[arg(long, allow_hyphen_values = true)]
        chi: Option<String>,
        /// Rank m of the free-abelian source (bryan-fulman, tamanoi)
        #[arg(long)]
        rank: Option<u32>,
        /// Truncation order N (coefficients of z^0..z^N)
        #[arg(long)]
        order: usize,
        /// Print the symbolic diagonal-operator expansion instead of numbers
        #[arg(long)]
        symbolic: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the symbolic diagonal-operator expansion of an identity's
    /// right-hand side.
    Expand {
        #[arg(long, value_enum)]
        theorem: SymTheorem,
        /// Source group A
        #[arg(long)]
        group: String,
        /// Truncation order N
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run a verification suite over its default matrix; exit 0 iff every
    /// equality holds exactly.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Enumeration budget (integer or scientific, e.g. 1e7); overrides
        /// ORBICHERN_BUDGET
        #[arg(long)]
        budget: Option<String>,
        /// Cap every truncation order in the matrix
        #[arg(long)]
        max_order: Option<usize>,
        /// Restrict to source groups with this exact name (e.g. Z^2)
        #[arg(long)]
        group: Option<String>,
    },
    /// Verify the wreath identities on a finite G-set read from JSON.
    Model {
        /// Path to a GSet file: {"points": k, "group": [cycles], "action": [tables]}
        #[arg(long)]
        input: String,
        /// Source group A
        #[arg(long)]
        source: String,
        /// Truncation order N
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value_t = ModelSuite::Theorem2)]
        suite: ModelSuite,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TargetKind {
    Sym,
    Wreath,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Theorem {
    /// exp(Σ_r j_r(A)/r · z^r D^r) — symmetric products
    Dw,
    /// exp(Σ_r 1/r · z^r D^r(1^{(A;r)})) — wreath quotients
    DwWreath,
    /// (1−z)^{−χ}
    Macdonald,
    /// ∏(1−z^{j_1⋯j_{m−1}})^{−j_1^{m−2}⋯j_{m−2}·χ}
    BryanFulman,
    /// ∏_r (1−z^r)^{−j(m−1;r)·χ_m}
    Tamanoi,
    /// exp(Σ_B |Hom(B,G)|/(|G|·|A:B|) · z^{|A:B|})
    Muller,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SymTheorem {
    Dw,
    DwWreath,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Theorem1,
    Theorem2,
    LemmaDey,
    LemmaDeyg,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelSuite {
    Theorem2,
    LemmaDeyg,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::BudgetExceeded { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Jseq {
            group,
            max,
            conjugacy,
            format,
        } => cmd_jseq(&group, max, conjugacy, format),
        Command::Homcount {
            source,
            target,
            n,
            base,
            format,
        } => cmd_homcount(&source, target, n, base.as_deref(), format),
        Command::Gf {
            theorem,
            group,
            target,
            chi,
            rank,
            order,
            symbolic,
            format,
        } => cmd_gf(
            theorem,
            group.as_deref(),
            target.as_deref(),
            chi.as_deref(),
            rank,
            order,
            symbolic,
            format,
        ),
        Command::Expand {
            theorem,
            group,
            order,
            format,
        } => cmd_expand(theorem, &group, order, format),
        Command::Verify {
            suite,
            budget,
            max_order,
            group,
        } => cmd_verify(suite, budget.as_deref(), max_order, group.as_deref()),
        Command::Model {
            input,
            source,
            order,
            suite,
        } => cmd_model(&input, &source, order, suite),
    }
}

/// Budget resolution order: --budget flag, ORBICHERN_BUDGET, built-in default.
fn resolve_budget(flag: Option<&str>) -> Result<Budget> {
    let text = match flag {
        Some(s) => Some(s.to_string()),
        None => std::env::var("ORBICHERN_BUDGET").ok(),
    };
    match text {
        None => Ok(Budget::default()),
        Some(s) => parse_budget(&s).map(|cap| Budget { cap }),
    }
}

/// Accepts plain integers and scientific notation such as `1e7`.
fn parse_budget(s: &str) -> Result<u128> {
    let s = s.trim();
    if let Ok(v) = s.parse::<u128>() {
        return Ok(v);
    }
    let v: f64 = s
        .parse()
        .map_err(|_| Error::Parse(format!("budget `{s}` is not a number")))?;
    if !v.is_finite() || v < 1.0 || v >= u128::MAX as f64 {
        return Err(Error::Parse(format!("budget `{s}` out of range")));
    }
    Ok(v as u128)
}

/// Finite groups nameable on the command line: `1`, `Z/d`, `S_n`.
fn finite_group_from_str(s: &str) -> Result<FiniteGroup> {
    let s = s.trim();
    if s == "1" {
        return Ok(FiniteGroup::trivial(1));
    }
    if let Some(d) = s.strip_prefix("Z/") {
        let d: usize = d
            .parse()
            .map_err(|_| Error::Parse(format!("bad cyclic order in `{s}`")))?;
        if d == 0 {
            return Err(Error::Parse("Z/0 is not finite".into()));
        }
        return Ok(FiniteGroup::cyclic(d));
    }
    if let Some(n) = s.strip_prefix("S_") {
        let n: usize = n
            .parse()
            .map_err(|_| Error::Parse(format!("bad symmetric degree in `{s}`")))?;
        return Ok(FiniteGroup::symmetric(n));
    }
    Err(Error::Parse(format!(
        "unknown finite group `{s}` (expected 1, Z/d, or S_n)"
    )))
}

fn series_text(s: &Series) -> String {
    (0..=s.trunc())
        .map(|k| s.coeff(k).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn print_json<T: serde::Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string(value).expect("serialization cannot fail")
    );
}

fn cmd_jseq(group: &str, max: usize, conjugacy: bool, format: Format) -> Result<ExitCode> {
    let spec: GroupSpec = group.parse()?;
    let budget = resolve_budget(None)?;
    if max == 0 {
        return Err(Error::Invalid("--max must be at least 1".into()));
    }
    let jseq = j_sequence(&spec, max, budget)?;
    let j: Vec<u64> = (1..=max).map(|r| jseq.j(r)).collect();
    let u: Option<Vec<u64>> = if conjugacy {
        let m = u_sequence(&spec, max, budget)?;
        Some((1..=max).map(|d| m[&d]).collect())
    } else {
        None
    };
    match format {
        Format::Text => {
            println!(
                "{}",
                j.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
            );
            if let Some(u) = &u {
                println!(
                    "{}",
                    u.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
                );
            }
        }
        Format::Json => {
            let mut obj = serde_json::Map::new();
            obj.insert("group".into(), spec.to_string().into());
            obj.insert("max".into(), max.into());
            obj.insert("j".into(), j.clone().into());
            if let Some(u) = &u {
                obj.insert("u".into(), u.clone().into());
            }
            print_json(&serde_json::Value::Object(obj));
        }
        Format::Csv => {
            let mut out = String::new();
            out.push_str(if u.is_some() { "r,j,u\n" } else { "r,j\n" });
            for r in 1..=max {
                match &u {
                    Some(u) => out.push_str(&format!("{r},{},{}\n", j[r - 1], u[r - 1])),
                    None => out.push_str(&format!("{r},{}\n", j[r - 1])),
                }
            }
            print!("{out}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_homcount(
    source: &str,
    target: TargetKind,
    n: usize,
    base: Option<&str>,
    format: Format,
) -> Result<ExitCode> {
    let spec: GroupSpec = source.parse()?;
    let budget = resolve_budget(None)?;
    let census = match target {
        TargetKind::Sym => {
            if base.is_some() {
                return Err(Error::Invalid("--base only applies to wreath targets".into()));
            }
            census_sym(&spec, n, budget)?
        }
        TargetKind::Wreath => {
            let base = base.ok_or_else(|| {
                Error::Invalid("wreath targets need --base (1, Z/d, or S_k)".into())
            })?;
            let g = finite_group_from_str(base)?;
            census_wreath(&spec, &g, n, budget)?
        }
    };
    match format {
        Format::Text => {
            for (ty, count) in &census.counts {
                println!("{ty} {count}");
            }
            println!("total {}", census.total);
        }
        Format::Json => print_json(&census.to_json()),
        Format::Csv => print!("{}", census.to_csv()),
    }
    Ok(ExitCode::SUCCESS)
}

fn require<T>(opt: Option<T>, what: &str, theorem: &str) -> Result<T> {
    opt.ok_or_else(|| Error::Invalid(format!("--{what} is required for --theorem {theorem}")))
}

fn parse_chi(chi: Option<&str>, theorem: &str) -> Result<Rat> {
    let s = require(chi, "chi", theorem)?;
    s.parse()
}

#[allow(clippy::too_many_arguments)]
fn cmd_gf(
    theorem: Theorem,
    group: Option<&str>,
    target: Option<&str>,
    chi: Option<&str>,
    rank: Option<u32>,
    order: usize,
    symbolic: bool,
    format: Format,
) -> Result<ExitCode> {
    if format == Format::Csv {
        return Err(Error::Invalid("gf output is text or json".into()));
    }
    let budget = resolve_budget(None)?;
    if symbolic {
        let elem = match theorem {
            Theorem::Dw => symbolic_dw(require(group, "group", "dw")?, order, budget)?,
            Theorem::DwWreath => {
                symbolic_dw_wreath(require(group, "group", "dw-wreath")?, order, budget)?
            }
            _ => {
                return Err(Error::Invalid(
                    "--symbolic applies to dw and dw-wreath only".into(),
                ))
            }
        };
        match format {
            Format::Text => println!("{}", elem.pretty()),
            _ => print_json(&elem),
        }
        return Ok(ExitCode::SUCCESS);
    }
    let series = match theorem {
        Theorem::Macdonald => {
            let chi = parse_chi(chi, "macdonald")?;
            Series::euler_product(&[(1usize, chi)].into(), order)?
        }
        Theorem::Dw => {
            let spec: GroupSpec = require(group, "group", "dw")?.parse()?;
            let chi = parse_chi(chi, "dw")?;
            let symbol = BaseClass::new("c")?;
            let jseq = j_sequence(&spec, order.max(1), budget)?;
            let elem = dey_wohlfahrt_rhs(&jseq, &BaseElement::class(symbol.clone()), order)?;
            elem.degree_specialize(&[(symbol, chi)].into())?
        }
        Theorem::DwWreath => {
            let spec: GroupSpec = require(group, "group", "dw-wreath")?.parse()?;
            let g = finite_group_from_str(require(target, "target", "dw-wreath")?)?;
            let assignment = wreath_base_assignment(&spec, order.max(1), budget)?;
            let elem = dey_wohlfahrt_wreath_rhs(&assignment, order)?;
            // specialize each base symbol e[B] to |Hom(B,G)|/|G|
            let order_g = Rat::from(g.order() as u64);
            let mut values: BTreeMap<BaseClass, Rat> = BTreeMap::new();
            for (&r, beta) in &assignment {
                let b = orbichern::homcount::index_subgroup_type(&spec, r)?
                    .expect("assignment keys have subgroups");
                for (symbol, _) in beta.terms() {
                    if !values.contains_key(symbol) {
                        let h = hom_count_into(&b, &g, budget)?;
                        values.insert(symbol.clone(), Rat::from(h) / order_g.clone());
                    }
                }
            }
            elem.degree_specialize(&values)?
        }
        Theorem::BryanFulman => {
            let m = require(rank, "rank", "bryan-fulman")?;
            let chi = parse_chi(chi, "bryan-fulman")?;
            bryan_fulman_series(m, &chi, order)?
        }
        Theorem::Tamanoi => {
            let m = require(rank, "rank", "tamanoi")?;
            if m == 0 {
                return Err(Error::Invalid("tamanoi needs rank m ≥ 1".into()));
            }
            let g = finite_group_from_str(require(target, "target", "tamanoi")?)?;
            let chi_m = Rat::from(hom_count_into(&GroupSpec::FreeAbelian(m), &g, budget)?)
                / Rat::from(g.order() as u64);
            let lower = free_abelian_j(m - 1, order.max(1))?;
            let exponents: BTreeMap<usize, Rat> = (1..=order)
                .filter(|&r| lower[r - 1] > 0)
                .map(|r| (r, &Rat::from(lower[r - 1]) * &chi_m))
                .collect();
            Series::euler_product(&exponents, order)?
        }
        Theorem::Muller => {
            let spec: GroupSpec = require(group, "group", "muller")?.parse()?;
            let g = finite_group_from_str(require(target, "target", "muller")?)?;
            wreath_total_series(&spec, &g, order, budget)?
        }
    };
    match format {
        Format::Text => println!("{}", series_text(&series)),
        _ => print_json(&series),
    }
    Ok(ExitCode::SUCCESS)
}

fn symbolic_dw(group: &str, order: usize, budget: Budget) -> Result<DiagElement> {
    let spec: GroupSpec = group.parse()?;
    let jseq = j_sequence(&spec, order.max(1), budget)?;
    dey_wohlfahrt_rhs(&jseq, &BaseElement::class(BaseClass::new("c")?), order)
}

fn symbolic_dw_wreath(group: &str, order: usize, budget: Budget) -> Result<DiagElement> {
    let spec: GroupSpec = group.parse()?;
    let assignment = wreath_base_assignment(&spec, order.max(1), budget)?;
    dey_wohlfahrt_wreath_rhs(&assignment, order)
}

fn cmd_expand(theorem: SymTheorem, group: &str, order: usize, format: Format) -> Result<ExitCode> {
    let budget = resolve_budget(None)?;
    let elem = match theorem {
        SymTheorem::Dw => symbolic_dw(group, order, budget)?,
        SymTheorem::DwWreath => symbolic_dw_wreath(group, order, budget)?,
    };
    match format {
        Format::Text => println!("{}", elem.pretty()),
        Format::Json => print_json(&elem),
        Format::Csv => return Err(Error::Invalid("expand output is text or json".into())),
    }
    Ok(ExitCode::SUCCESS)
}

// ------------------------------------------------------------------
// verification suites

#[derive(Clone, Copy, PartialEq, Eq)]
enum CaseStatus {
    Ok,
    Mismatch,
    Budget,
}

impl CaseStatus {
    fn as_str(self) -> &'static str {
        match self {
            CaseStatus::Ok => "ok",
            CaseStatus::Mismatch => "mismatch",
            CaseStatus::Budget => "budget",
        }
    }
}

struct SuiteRun {
    cases: Vec<serde_json::Value>,
    any_mismatch: bool,
    any_budget: bool,
}

impl SuiteRun {
    fn new() -> Self {
        SuiteRun {
            cases: Vec::new(),
            any_mismatch: false,
            any_budget: false,
        }
    }

    fn push(&mut self, mut case: serde_json::Map<String, serde_json::Value>, status: CaseStatus) {
        case.insert("status".into(), status.as_str().into());
        match status {
            CaseStatus::Mismatch => self.any_mismatch = true,
            CaseStatus::Budget => self.any_budget = true,
            CaseStatus::Ok => {}
        }
        self.cases.push(serde_json::Value::Object(case));
    }

    /// Folds a library result into a case row: Ok(true) passes, Ok(false)
    /// is an inequality, and budget exhaustion is kept distinct from both.
    fn push_result(
        &mut self,
        mut case: serde_json::Map<String, serde_json::Value>,
        outcome: Result<(bool, serde_json::Value)>,
    ) -> Result<()> {
        match outcome {
            Ok((true, detail)) => {
                case.insert("detail".into(), detail);
                self.push(case, CaseStatus::Ok);
            }
            Ok((false, detail)) => {
                case.insert("detail".into(), detail);
                self.push(case, CaseStatus::Mismatch);
            }
            Err(Error::BudgetExceeded { needed, cap }) => {
                case.insert(
                    "detail".into(),
                    serde_json::json!({ "needed": needed.to_string(), "cap": cap.to_string() }),
                );
                self.push(case, CaseStatus::Budget);
            }
            Err(e) => return Err(e),
        }
        Ok(())
    }
}

fn theorem1_sources() -> Vec<(GroupSpec, usize)> {
    vec![
        (GroupSpec::Trivial, 5),
        (GroupSpec::FreeAbelian(1), 5),
        (GroupSpec::FreeAbelian(2), 5),
        (GroupSpec::FreeAbelian(3), 4),
        (GroupSpec::Cyclic(2), 5),
        (GroupSpec::Cyclic(3), 5),
        (GroupSpec::Cyclic(4), 5),
    ]
}

fn wreath_sources() -> Vec<GroupSpec> {
    vec![
        GroupSpec::Trivial,
        GroupSpec::FreeAbelian(1),
        GroupSpec::FreeAbelian(2),
        GroupSpec::Cyclic(2),
        GroupSpec::Cyclic(3),
        GroupSpec::Cyclic(4),
    ]
}

/// The finite-model matrix: every (X, G) pair, with a label for reports.
fn model_matrix() -> Result<Vec<GSet>> {
    Ok(vec![
        GSet::natural(FiniteGroup::trivial(1))?,
        GSet::natural(FiniteGroup::trivial(2))?,
        GSet::natural(FiniteGroup::trivial(3))?,
        GSet::point(FiniteGroup::cyclic(2))?,
        GSet::natural(FiniteGroup::cyclic(2))?,
        GSet::from_generator_tables(FiniteGroup::cyclic(2), 3, &[vec![1, 0, 2]])?,
        GSet::point(FiniteGroup::cyclic(3))?,
        GSet::natural(FiniteGroup::cyclic(3))?,
        GSet::point(FiniteGroup::symmetric(3))?,
        GSet::natural(FiniteGroup::symmetric(3))?,
    ])
}

fn model_order(x: &GSet, cap: Option<usize>) -> usize {
    let n = if x.group().order() == 1 && x.points() <= 2 {
        5
    } else {
        3
    };
    n.min(cap.unwrap_or(usize::MAX))
}

fn keeps(filter: Option<&str>, spec: &GroupSpec) -> bool {
    filter.map_or(true, |f| f == spec.to_string())
}

fn run_theorem1(
    run: &mut SuiteRun,
    budget: Budget,
    max_order: Option<usize>,
    filter: Option<&str>,
) -> Result<()> {
    let symbol = BaseClass::new("c")?;
    let alpha = BaseElement::class(symbol);
    for (spec, n) in theorem1_sources() {
        if !keeps(filter, &spec) {
            continue;
        }
        let n = n.min(max_order.unwrap_or(usize::MAX));
        let mut case = serde_json::Map::new();
        case.insert("identity".into(), "three-way".into());
        case.insert("source".into(), spec.to_string().into());
        case.insert("order".into(), n.into());
        let outcome = (|| {
            let jseq = j_sequence(&spec, n.max(1), budget)?;
            let rhs = dey_wohlfahrt_rhs(&jseq, &alpha, n)?;
            let lemma = lemma_dey_lhs(&jseq, &alpha, n)?;
            let oracle = hom_oracle_lhs(&spec, &alpha, n, budget)?;
            let ok = rhs == lemma && lemma == oracle;
            Ok((ok, serde_json::json!({ "routes": ["hom-census", "cycle-type", "exp"] })))
        })();
        run.push_result(case, outcome)?;
    }
    Ok(())
}

fn verify_case_row(x: &GSet, spec: &GroupSpec, n: usize) -> serde_json::Map<String, serde_json::Value> {
    let mut case = serde_json::Map::new();
    case.insert("source".into(), spec.to_string().into());
    case.insert("group".into(), x.group().label().to_string().into());
    case.insert("points".into(), x.points().into());
    case.insert("order".into(), n.into());
    case
}

fn run_theorem2(
    run: &mut SuiteRun,
    budget: Budget,
    max_order: Option<usize>,
    filter: Option<&str>,
) -> Result<()> {
    for x in model_matrix()? {
        let n = model_order(&x, max_order);
        for spec in wreath_sources() {
            if !keeps(filter, &spec) {
                continue;
            }
            if x.group().order() == 1 {
                let mut case = verify_case_row(&x, &spec, n);
                case.insert("identity".into(), "symmetric".into());
                let outcome = verify_symmetric(&spec, x.points(), n, budget)
                    .map(|r| (r.ok, r.to_json()));
                run.push_result(case, outcome)?;
            }
            let mut case = verify_case_row(&x, &spec, n);
            case.insert("identity".into(), "wreath".into());
            let outcome = verify_wreath(&spec, &x, n, budget).map(|r| (r.ok, r.to_json()));
            run.push_result(case, outcome)?;
        }
    }
    Ok(())
}

fn run_lemma_dey(
    run: &mut SuiteRun,
    budget: Budget,
    max_order: Option<usize>,
    filter: Option<&str>,
) -> Result<()> {
    for (spec, cap) in theorem1_sources() {
        if !keeps(filter, &spec) {
            continue;
        }
        for points in 1..=3usize {
            let n = if points <= 2 { cap.min(5) } else { 3 };
            let n = n.min(max_order.unwrap_or(usize::MAX));
            let mut case = serde_json::Map::new();
            case.insert("identity".into(), "dey".into());
            case.insert("source".into(), spec.to_string().into());
            case.insert("points".into(), points.into());
            case.insert("order".into(), n.into());
            let outcome = lemma_dey_check(&spec, points, n, budget).map(|r| (r.ok, r.to_json()));
            run.push_result(case, outcome)?;
        }
    }
    Ok(())
}

fn run_lemma_deyg(
    run: &mut SuiteRun,
    budget: Budget,
    max_order: Option<usize>,
    filter: Option<&str>,
) -> Result<()> {
    for x in model_matrix()? {
        let n = model_order(&x, max_order).min(3);
        for spec in wreath_sources() {
            if !keeps(filter, &spec) {
                continue;
            }
            let mut case = verify_case_row(&x, &spec, n);
            case.insert("identity".into(), "deyg".into());
            let outcome = lemma_deyg_check(&spec, &x, n, budget).map(|r| (r.ok, r.to_json()));
            run.push_result(case, outcome)?;
        }
    }
    Ok(())
}

fn cmd_verify(
    suite: Suite,
    budget: Option<&str>,
    max_order: Option<usize>,
    filter: Option<&str>,
) -> Result<ExitCode> {
    let budget = resolve_budget(budget)?;
    let mut run = SuiteRun::new();
    let name = match suite {
        Suite::Theorem1 => "theorem1",
        Suite::Theorem2 => "theorem2",
        Suite::LemmaDey => "lemma-dey",
        Suite::LemmaDeyg => "lemma-deyg",
        Suite::All => "all",
    };
    match suite {
        Suite::Theorem1 => run_theorem1(&mut run, budget, max_order, filter)?,
        Suite::Theorem2 => run_theorem2(&mut run, budget, max_order, filter)?,
        Suite::LemmaDey => run_lemma_dey(&mut run, budget, max_order, filter)?,
        Suite::LemmaDeyg => run_lemma_deyg(&mut run, budget, max_order, filter)?,
        Suite::All => {
            run_theorem1(&mut run, budget, max_order, filter)?;
            run_theorem2(&mut run, budget, max_order, filter)?;
            run_lemma_dey(&mut run, budget, max_order, filter)?;
            run_lemma_deyg(&mut run, budget, max_order, filter)?;
        }
    }
    if run.cases.is_empty() {
        eprintln!("warning: the filter matched no cases; passing vacuously");
    }
    let ok = !run.any_mismatch && !run.any_budget;
    let report = serde_json::json!({
        "suite": name,
        "cases": run.cases,
        "ok": ok,
    });
    print_json(&report);
    if run.any_mismatch {
        Ok(ExitCode::from(1))
    } else if run.any_budget {
        Ok(ExitCode::from(3))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

fn cmd_model(input: &str, source: &str, order: usize, suite: ModelSuite) -> Result<ExitCode> {
    let text = std::fs::read_to_string(input)
        .map_err(|e| Error::Parse(format!("cannot read {input}: {e}")))?;
    let x = GSet::from_json(&text)?;
    let spec: GroupSpec = source.parse()?;
    let budget = resolve_budget(None)?;
    let (ok, report) = match suite {
        ModelSuite::Theorem2 => {
            let r = verify_wreath(&spec, &x, order, budget)?;
            (r.ok, r.to_json())
        }
        ModelSuite::LemmaDeyg => {
            let r = lemma_deyg_check(&spec, &x, order, budget)?;
            (r.ok, r.to_json())
        }
    };
    print_json(&report);
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
