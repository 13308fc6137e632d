mod output;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use ambistack::game::{paper_example, parse_game, serialize_game, GameError, Params};
use ambistack::gaps::{gap_report, GapOptions};
use ambistack::hardness::{solve_by_components, solve_vc_via_game, reduce, Graph, HardnessError, Variant};
use ambistack::rational::rat;
use ambistack::responses::{classical_payoff, evaluate_commitment, maxmin_response};
use ambistack::solvers::{
    algorithm1, approximation_constant, classical_coupled, decoupled_isv, grid_oracle, pure_subset_bruteforce, IntervalEvaluator,
    Mode, SolveError, SolveReport, DEFAULT_PATTERN_BUDGET, DEFAULT_SUBSET_BUDGET,
};
use ambistack::{random, CommitmentSet, CoupledGame, Rational, TieBreak};
use clap::{Args, Parser, Subcommand};
use output::{Field, Format};

#[derive(Parser)]
#[command(name = "ambistack", version, about = "Coupled Stackelberg games with ambiguous commitments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute an optimal commitment for a game file.
    Solve(SolveArgs),
    /// Report ambiguity and coupling gaps for a game file.
    Gaps(GapsArgs),
    /// Write one of the built-in example games.
    Example(ExampleArgs),
    /// Build (and optionally solve) the vertex-cover reduction of a graph.
    ReduceVc(ReduceArgs),
    /// Run the randomized property checks.
    Suite(SuiteArgs),
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Write output to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    game: PathBuf,
    #[arg(long, value_parser = parse_mode)]
    mode: Mode,
    #[arg(long, default_value = "1/100")]
    epsilon: Rational,
    /// Grid spacing for grid-oracle mode.
    #[arg(long, default_value = "1/100")]
    step: Rational,
    /// leader, lex or adversarial.
    #[arg(long)]
    tiebreak: Option<TieBreak>,
    /// Limit on enumerated response patterns or commitment subsets.
    #[arg(long)]
    budget: Option<u64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct GapsArgs {
    #[arg(long)]
    game: PathBuf,
    #[arg(long, default_value = "1/100")]
    epsilon: Rational,
    #[arg(long, default_value = "leader")]
    tiebreak: TieBreak,
    #[arg(long)]
    budget: Option<u64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ExampleArgs {
    /// zs-gap, coupling-gap, pure-unbounded or frac-opt.
    #[arg(long)]
    name: String,
    /// Example parameter such as D=10; repeatable.
    #[arg(long = "param", value_parser = parse_param)]
    params: Vec<(String, Rational)>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, default_value = "full", value_parser = parse_variant)]
    variant: Variant,
    /// Solve the reduction and print the selected vertices.
    #[arg(long)]
    solve: bool,
    /// Handle each connected component separately.
    #[arg(long)]
    components: bool,
    #[arg(long)]
    budget: Option<u64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SuiteArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random instances per check.
    #[arg(long, default_value_t = 50)]
    count: u64,
    #[command(flatten)]
    output: OutputArgs,
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse()
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse()
}

fn parse_param(s: &str) -> Result<(String, Rational), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected KEY=VALUE, got {s:?}"))?;
    let v = v.trim().parse::<Rational>().map_err(|e| format!("{k}: {e}"))?;
    Ok((k.trim().to_string(), v))
}

enum CliError {
    Input(String),
    Budget(String),
    Check(String),
}

impl From<GameError> for CliError {
    fn from(e: GameError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<HardnessError> for CliError {
    fn from(e: HardnessError) -> Self {
        match e {
            HardnessError::Solve(s) => s.into(),
            HardnessError::DisconnectedGraph(_) => CliError::Input(format!("{e} (pass --components)")),
            _ => CliError::Input(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn read(path: &Path) -> CliResult<Vec<u8>> {
    fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_game(path: &Path) -> CliResult<CoupledGame> {
    parse_game(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn emit(text: &str, out: Option<&Path>) -> CliResult<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn positive(name: &str, r: &Rational) -> CliResult<()> {
    if r.is_positive() {
        Ok(())
    } else {
        Err(CliError::Input(format!("--{name} must be positive, got {r}")))
    }
}

fn budget_or(b: Option<u64>, default: u64) -> CliResult<u64> {
    match b {
        Some(0) => Err(CliError::Input("--budget must be positive".into())),
        Some(b) => Ok(b),
        None => Ok(default),
    }
}

fn names(g: &CoupledGame) -> impl Iterator<Item = &str> {
    g.followers.iter().map(|f| f.name.as_str())
}

fn report_field(g: &CoupledGame, r: &SolveReport) -> Field {
    let followers = names(g)
        .zip(&r.per_follower)
        .map(|(name, o)| {
            Field::obj([
                ("name", Field::text(name)),
                ("response", Field::strategy(&o.representative)),
                ("maxmin_value", Field::num(&o.maxmin_value)),
                ("support", Field::indices(&o.support)),
            ])
        })
        .collect();
    let mut entries = vec![
        ("mode", Field::text(r.mode.as_str())),
        ("tiebreak", Field::text(r.tiebreak.as_str())),
        ("value", Field::num(&r.value)),
        ("commitment", Field::commitment(&r.commitment)),
        ("extreme_values", Field::nums(&r.extreme_values)),
        ("candidates_examined", Field::Int(r.candidates_examined)),
    ];
    if let Some(e) = &r.epsilon_used {
        entries.push(("epsilon_used", Field::num(e)));
    }
    entries.push(("followers", Field::List(followers)));
    Field::obj(entries)
}

fn leader_only(mode: Mode, t: Option<TieBreak>) -> CliResult<()> {
    match t {
        Some(t) if t != TieBreak::LeaderFavorable => {
            Err(CliError::Input(format!("{mode} commitments are defined under leader-favorable tie-breaking, got {t}")))
        }
        _ => Ok(()),
    }
}

fn cmd_solve(a: SolveArgs) -> CliResult<()> {
    positive("epsilon", &a.epsilon)?;
    positive("step", &a.step)?;
    let g = load_game(&a.game)?;
    let t = a.tiebreak.unwrap_or(TieBreak::LeaderFavorable);
    let field = match a.mode {
        Mode::Classical => {
            leader_only(a.mode, a.tiebreak)?;
            let sol = classical_coupled(&g, budget_or(a.budget, DEFAULT_PATTERN_BUDGET)?)?;
            let c = CommitmentSet::singleton(sol.strategy.clone());
            let r = SolveReport::verified(&g, Mode::Classical, t, c, &sol.value, sol.patterns_examined, None);
            let Field::Obj(mut entries) = report_field(&g, &r) else { unreachable!() };
            entries.insert(3, ("strategy".into(), Field::strategy(&sol.strategy)));
            entries.insert(4, ("pattern".into(), Field::indices(&sol.pattern)));
            Field::Obj(entries)
        }
        Mode::Decoupled => {
            leader_only(a.mode, a.tiebreak)?;
            let d = decoupled_isv(&g, budget_or(a.budget, DEFAULT_PATTERN_BUDGET)?)?;
            let per = names(&g)
                .zip(&d.per_follower)
                .enumerate()
                .map(|(i, (name, s))| {
                    let alone = g.restricted_to(i);
                    assert_eq!(classical_payoff(&alone, &s.strategy, TieBreak::LeaderFavorable), s.value, "stale value for {name}");
                    Field::obj([
                        ("name", Field::text(name)),
                        ("value", Field::num(&s.value)),
                        ("strategy", Field::strategy(&s.strategy)),
                        ("action", Field::Int(s.pattern[0] as u64)),
                    ])
                })
                .collect();
            Field::obj([
                ("mode", Field::text("decoupled")),
                ("tiebreak", Field::text("leader")),
                ("isv", Field::num(&d.isv)),
                ("followers", Field::List(per)),
            ])
        }
        Mode::Ambiguous2xm => report_field(&g, &algorithm1(&g, &a.epsilon, t)?),
        Mode::GridOracle => report_field(&g, &grid_oracle(&g, &a.step, t)?),
        Mode::PureSubset => report_field(&g, &pure_subset_bruteforce(&g, t, budget_or(a.budget, DEFAULT_SUBSET_BUDGET)?)?),
    };
    emit(&field.render(a.output.format), a.output.out.as_deref())
}

fn cmd_gaps(a: GapsArgs) -> CliResult<()> {
    positive("epsilon", &a.epsilon)?;
    let g = load_game(&a.game)?;
    let opts = GapOptions {
        tiebreak: a.tiebreak,
        epsilon: a.epsilon,
        pattern_budget: budget_or(a.budget, DEFAULT_PATTERN_BUDGET)?,
        subset_budget: budget_or(a.budget, DEFAULT_SUBSET_BUDGET)?,
    };
    let rep = gap_report(&g, &opts)?;
    assert_eq!(classical_payoff(&g, &rep.classical.strategy, TieBreak::LeaderFavorable), rep.classical.value, "stale classical value");
    let field = Field::obj([
        ("w_star", Field::num(rep.w_star())),
        ("w_star_mode", Field::text(rep.best.mode.as_str())),
        ("w_star_commitment", Field::commitment(&rep.best.commitment)),
        ("v_star", Field::num(rep.v_star())),
        ("v_star_strategy", Field::strategy(&rep.classical.strategy)),
        ("isv", Field::num(&rep.isv)),
        ("per_follower_classical", Field::nums(&rep.per_follower_classical)),
        ("ambiguity_gap", Field::opt(&rep.ambiguity_gap)),
        ("coupling_gap", Field::opt(&rep.coupling_gap)),
        ("ambiguity_advantage", Field::Bool(rep.ambiguity_advantage)),
        ("coupling_advantage", Field::Bool(rep.coupling_advantage)),
        ("shared_classical_optimum", Field::Bool(rep.shared_classical_optimum)),
        ("tiebreak", Field::text(rep.best.tiebreak.as_str())),
    ]);
    emit(&field.render(a.output.format), a.output.out.as_deref())
}

fn cmd_example(a: ExampleArgs) -> CliResult<()> {
    let params: Params = a.params.into_iter().collect();
    let g = paper_example(&a.name, &params)?;
    emit(&serialize_game(&g), a.out.as_deref())
}

fn cmd_reduce_vc(a: ReduceArgs) -> CliResult<()> {
    let text = String::from_utf8(read(&a.graph)?).map_err(|_| CliError::Input("graph file is not UTF-8".into()))?;
    let graph: Graph = text.parse().map_err(|e: HardnessError| CliError::Input(format!("{}: {e}", a.graph.display())))?;
    let budget = budget_or(a.budget, DEFAULT_SUBSET_BUDGET)?;
    let fmt = a.output.format;
    let out = a.output.out.as_deref();
    match (a.solve, a.components) {
        (false, false) => emit(&serialize_game(&reduce(&graph, a.variant)?), out),
        (false, true) => {
            let mut parts = Vec::new();
            for vertices in graph.components() {
                let game = if vertices.len() == 1 {
                    serde_json::Value::Null
                } else {
                    serde_json::from_str(&serialize_game(&reduce(&graph.induced(&vertices), a.variant)?)).expect("valid JSON")
                };
                parts.push(serde_json::json!({ "vertices": vertices, "game": game }));
            }
            let mut s = serde_json::to_string_pretty(&parts).expect("serializable");
            s.push('\n');
            emit(&s, out)
        }
        (true, false) => {
            let sol = solve_vc_via_game(&graph, a.variant, budget)?;
            let field = Field::obj([
                ("variant", Field::text(a.variant.as_str())),
                ("vertices", Field::Int(graph.vertex_count() as u64)),
                ("cover", Field::indices(&sol.cover)),
                ("value", Field::num(&sol.value)),
                ("candidates_examined", Field::Int(sol.report.candidates_examined)),
            ]);
            emit(&field.render(fmt), out)
        }
        (true, true) => {
            let (parts, cover) = solve_by_components(&graph, a.variant, budget)?;
            let comps = parts
                .iter()
                .map(|p| {
                    Field::obj([
                        ("vertices", Field::indices(&p.vertices)),
                        ("cover", Field::indices(&p.cover)),
                        ("value", p.solution.as_ref().map_or(Field::Missing, |s| Field::num(&s.value))),
                    ])
                })
                .collect();
            let field = Field::obj([
                ("variant", Field::text(a.variant.as_str())),
                ("vertices", Field::Int(graph.vertex_count() as u64)),
                ("cover", Field::indices(&cover)),
                ("components", Field::List(comps)),
            ]);
            emit(&field.render(fmt), out)
        }
    }
}

struct Check {
    name: &'static str,
    run: fn(&mut random::GameRng) -> bool,
}

const CHECKS: [Check; 4] = [
    Check {
        name: "interval evaluator matches linear programming",
        run: |r| {
            let g = random::game(r, 2, 2, 4);
            let (lo, hi) = random::interval(r, 12);
            let c = CommitmentSet::interval(lo.clone(), hi.clone()).expect("ordered");
            TieBreak::ALL.iter().all(|&t| {
                let ev = IntervalEvaluator::new(&g, t).expect("two actions");
                ev.evaluate(&lo, &hi).w() == evaluate_commitment(&g, &c, t).w
                    && (0..2).all(|fi| ev.response(fi, &lo, &hi) == maxmin_response(&c, &g.followers[fi], t).representative)
            })
        },
    },
    Check {
        name: "single follower gains nothing from ambiguity",
        run: |r| {
            let g = random::game(r, 2, 1, 5);
            let v = classical_coupled(&g, DEFAULT_PATTERN_BUDGET).expect("small").value;
            TieBreak::ALL.iter().all(|&t| algorithm1(&g, &rat(1, 100), t).expect("two actions").value <= v)
        },
    },
    Check {
        name: "zero-sum games have no coupling advantage",
        run: |r| {
            let g = random::zero_sum_game(r, 2, 3, 4);
            let isv = decoupled_isv(&g, DEFAULT_PATTERN_BUDGET).expect("small").isv;
            algorithm1(&g, &rat(1, 100), TieBreak::LeaderFavorable).expect("two actions").value <= isv
        },
    },
    Check {
        name: "interval search is within eps*k*C of the grid oracle",
        run: |r| {
            let g = random::reduce_columns(&random::game(r, 2, 3, 4));
            let eps = rat(1, 50);
            let w = algorithm1(&g, &eps, TieBreak::LeaderFavorable).expect("two actions").value;
            let o = grid_oracle(&g, &rat(1, 100), TieBreak::LeaderFavorable).expect("two actions").value;
            w >= &o - &(&eps * &Rational::from(3) * &approximation_constant(&g))
        },
    },
];

fn cmd_suite(a: SuiteArgs) -> CliResult<()> {
    let mut rows = Vec::new();
    let mut failed = 0;
    for (i, check) in CHECKS.iter().enumerate() {
        let mut r = random::rng(a.seed.wrapping_add(i as u64));
        let failures = (0..a.count).filter(|_| !(check.run)(&mut r)).count() as u64;
        failed += failures;
        rows.push(Field::obj([
            ("check", Field::text(check.name)),
            ("instances", Field::Int(a.count)),
            ("failures", Field::Int(failures)),
        ]));
    }
    let field = Field::obj([("seed", Field::Int(a.seed)), ("checks", Field::List(rows))]);
    emit(&field.render(a.output.format), a.output.out.as_deref())?;
    if failed > 0 {
        return Err(CliError::Check(format!("{failed} property violations")));
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Gaps(a) => cmd_gaps(a),
        Command::Example(a) => cmd_example(a),
        Command::ReduceVc(a) => cmd_reduce_vc(a),
        Command::Suite(a) => cmd_suite(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    std::panic::set_hook(Box::new(|info| eprintln!("internal invariant violation: {info}")));
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(CliError::Input(m))) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Ok(Err(CliError::Budget(m))) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
        Ok(Err(CliError::Check(m))) => {
            eprintln!("error: {m}");
            ExitCode::from(4)
        }
        Err(_) => ExitCode::from(4),
    }
}
