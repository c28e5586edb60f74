use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use election_game::coalition::DEFAULT_COALITION_CAP;
use election_game::io::{self, Metadata};
use election_game::sat::{compare_with_sat, DEFAULT_GADGET_EPSILON};
use election_game::{
    approx_ratio_all_first, build_gadget, check_dominance, check_monotone,
    coalition_incentive_delta, deviation_graph, enumerate_psne, fixtures, fpt_psne, generate,
    price_of_anarchy, secce_transform, CnfFormula, CoalitionStructure, DominanceCase, EgoismMode,
    EnsembleSpec, Error, FptOptions, GameInstance, GeneratorConfig, Hardmax, Profile, SearchLimits,
    Softmax, WinProb,
};

type Result<T> = std::result::Result<T, Error>;

/// Random contexts tried by the monotonicity check on large games.
const MONOTONE_TRIALS: usize = 10_000;

#[derive(Parser)]
#[command(
    name = "election-game",
    version,
    about = "Equilibria of multi-party election games"
)]
struct Cli {
    #[command(flatten)]
    global: Global,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Winning-probability rule
    #[arg(long, value_enum, default_value_t = Rule::Softmax, global = true)]
    wp: Rule,

    /// Deviations must gain more than this to count
    #[arg(long, default_value_t = 0.0, global = true)]
    tau: f64,

    /// Sort candidates by own-party utility when loading
    #[arg(long, global = true)]
    normalize: bool,

    /// Seed for generators
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,

    /// Refuse exhaustive scans above this many profiles
    #[arg(long, default_value_t = SearchLimits::default().max_profiles, global = true)]
    max_profiles: u64,
}

impl Global {
    fn wp(&self) -> &'static dyn WinProb {
        match self.wp {
            Rule::Hardmax => &Hardmax,
            Rule::Softmax => &Softmax,
        }
    }

    fn limits(&self) -> SearchLimits {
        SearchLimits {
            max_profiles: self.max_profiles,
        }
    }

    fn tau(&self) -> Result<f64> {
        if self.tau.is_finite() && self.tau >= 0.0 {
            Ok(self.tau)
        } else {
            Err(Error::InvalidParameter(format!(
                "tau must be >= 0, got {}",
                self.tau
            )))
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Rule {
    Hardmax,
    Softmax,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Brute,
    Fpt,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    None,
    Egoistic,
    StronglyEgoistic,
}

impl From<Mode> for EgoismMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::None => EgoismMode::None,
            Mode::Egoistic => EgoismMode::Egoistic,
            Mode::StronglyEgoistic => EgoismMode::StronglyEgoistic,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Load and validate an instance
    Validate { instance: String },
    /// Egoism, strong egoism, monotonicity and dominance report
    Info { instance: String },
    /// Find pure Nash equilibria
    Psne {
        instance: String,
        #[arg(long, value_enum, default_value_t = Method::Brute)]
        method: Method,
        /// Print search statistics of the parameterized method
        #[arg(long)]
        stats: bool,
        /// Skip the monotonicity check before the parameterized search
        #[arg(long)]
        no_verify: bool,
    },
    /// Approximation factor of the all-first profile
    ApproxCheck { instance: String },
    /// Price of anarchy and stability
    Poa {
        instance: String,
        /// Print one CSV record instead of text
        #[arg(long)]
        csv: bool,
    },
    /// Improving-deviation graph
    DeviationGraph {
        instance: String,
        /// Write Graphviz output to this file (`-` for stdout)
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Keep only each party's best-response edge
        #[arg(long)]
        best_response_only: bool,
    },
    /// Coalition game and leaving incentives
    Coalitions {
        instance: String,
        /// Blocks of one-based parties, e.g. `1,2|3`
        #[arg(long)]
        coalitions: String,
        /// Report only this one-based party
        #[arg(long)]
        member: Option<usize>,
        /// Member candidates per coalition, e.g. `1,2|1`; all choices when absent
        #[arg(long, requires = "member")]
        choices: Option<String>,
        /// Write the coalition game to this file
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the SAT gadget for a DIMACS formula
    ReduceSat {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long, default_value_t = DEFAULT_GADGET_EPSILON)]
        epsilon: f64,
        /// Write the gadget instance to this file
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a seeded random instance
    Generate {
        #[arg(long, default_value_t = 3)]
        parties: usize,
        #[arg(long, default_value_t = 2)]
        candidates: usize,
        #[arg(long, default_value_t = 100.0)]
        beta: f64,
        #[arg(long, value_enum, default_value_t = Mode::Egoistic)]
        mode: Mode,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Built-in instances
    Fixtures {
        #[command(subcommand)]
        action: FixtureAction,
    },
    /// Analyse a seeded ensemble and write CSV
    Ensemble {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 2)]
        min_parties: usize,
        #[arg(long, default_value_t = 4)]
        max_parties: usize,
        #[arg(long, default_value_t = 3)]
        max_candidates: usize,
        #[arg(long, default_value_t = 100.0)]
        beta: f64,
        #[arg(long, value_enum, default_value_t = Mode::Egoistic)]
        mode: Mode,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum FixtureAction {
    List,
    /// Print a fixture document; `table3:M,BETA,EPS` sets the family parameters
    Emit {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load(spec: &str, normalize: bool) -> Result<GameInstance> {
    match spec.strip_prefix("fixtures:") {
        Some(name) => fixtures::by_name(name),
        None => io::load(spec, normalize).map(|(g, _)| g),
    }
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) if p != Path::new("-") => Ok(fs::write(p, text)?),
        _ => {
            print!("{text}");
            Ok(())
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map_or("-".into(), |v| format!("{v:.6}"))
}

/// Parses `1,2|1` into zero-based tuples, one per block.
fn parse_choices(spec: &str) -> Result<Vec<Vec<usize>>> {
    spec.split('|')
        .map(|block| {
            block
                .split(',')
                .map(|t| match t.trim().parse::<usize>() {
                    Ok(k) if k >= 1 => Ok(k - 1),
                    _ => Err(Error::InvalidParameter(format!(
                        "bad candidate {t:?} in {spec:?}"
                    ))),
                })
                .collect()
        })
        .collect()
}

fn info(g: &GameInstance, o: &Global) -> Result<()> {
    println!("parties {}", g.num_parties());
    for i in 0..g.num_parties() {
        println!("  {}: {} candidates", g.party_name(i), g.num_candidates(i));
    }
    println!("beta {}", g.beta());
    println!("profiles {}", g.profile_count());
    match g.egoism_violation() {
        None => println!("egoistic yes"),
        Some(v) => println!("egoistic no ({v})"),
    }
    match g.strong_egoism_violation() {
        None => println!("strongly egoistic yes"),
        Some(v) => println!("strongly egoistic no ({v})"),
    }
    let wp = o.wp();
    match check_monotone(g, wp, MONOTONE_TRIALS) {
        None => println!("{} monotone yes", wp.name()),
        Some(v) => println!("{} monotone no ({v})", wp.name()),
    }
    if g.is_egoistic() {
        let line = match check_dominance(g, wp)? {
            DominanceCase::AllFirst(p) => format!("all-first equilibrium {p}"),
            DominanceCase::AllFirstUnique(p) => {
                format!("all-first equilibrium {p}, strictly dominant")
            }
            DominanceCase::AllButOne {
                free_party,
                profile,
            } => {
                format!(
                    "equilibrium {profile} via best response of party {}",
                    free_party + 1
                )
            }
            DominanceCase::NotApplicable => "not applicable".into(),
        };
        println!("dominance {line}");
        let r = fpt_psne(
            g,
            wp,
            FptOptions {
                refine: true,
                verify_monotone: None,
            },
        )?
        .reduced;
        let depths: Vec<String> = r.depths.iter().map(usize::to_string).collect();
        println!("depths {}", depths.join(","));
        println!(
            "irresolute {} refined depth {} search size {}",
            r.k,
            r.refined_depth,
            r.search_size()
        );
    }
    Ok(())
}

fn psne(g: &GameInstance, o: &Global, method: Method, stats: bool, no_verify: bool) -> Result<()> {
    let wp = o.wp();
    match method {
        Method::Brute => {
            let eq = enumerate_psne(g, wp, o.tau()?, o.limits())?;
            if eq.is_empty() {
                println!("no PSNE");
            }
            for p in eq {
                println!("{p}");
            }
        }
        Method::Fpt => {
            if o.tau != 0.0 {
                return Err(Error::InvalidParameter(
                    "the parameterized search finds exact equilibria only; drop --tau".into(),
                ));
            }
            let verify = (!no_verify).then_some(MONOTONE_TRIALS);
            let out = fpt_psne(
                g,
                wp,
                FptOptions {
                    refine: true,
                    verify_monotone: verify,
                },
            )?;
            match &out.profile {
                Some(p) => println!("{p}"),
                None => println!("no PSNE"),
            }
            if stats {
                let r = &out.reduced;
                println!(
                    "k={} depth={} refined_depth={} profiles_evaluated={} deviation_checks={}",
                    r.k,
                    r.depth,
                    r.refined_depth,
                    out.stats.profiles_evaluated,
                    out.stats.deviation_checks
                );
            }
        }
    }
    Ok(())
}

fn poa(g: &GameInstance, o: &Global, csv_out: bool) -> Result<()> {
    let r = price_of_anarchy(g, o.wp(), o.tau()?, o.limits())?;
    if csv_out {
        let mut w = csv::Writer::from_writer(std::io::stdout());
        let row = [
            o.wp().name().to_string(),
            r.optimal_profile.to_string(),
            r.optimal_sw.to_string(),
            r.num_psne.to_string(),
            r.worst_psne
                .as_ref()
                .map_or(String::new(), |(p, _)| p.to_string()),
            r.worst_psne
                .as_ref()
                .map_or(String::new(), |(_, sw)| sw.to_string()),
            r.poa.map_or(String::new(), |x| x.to_string()),
            r.pos.map_or(String::new(), |x| x.to_string()),
        ];
        w.write_record([
            "wp",
            "optimal_profile",
            "optimal_sw",
            "num_psne",
            "worst_psne",
            "worst_sw",
            "poa",
            "pos",
        ])
        .and_then(|_| w.write_record(&row))
        .and_then(|_| w.flush().map_err(csv::Error::from))
        .map_err(|e| Error::Io(e.to_string()))?;
        return Ok(());
    }
    println!("optimum {} SW {:.6}", r.optimal_profile, r.optimal_sw);
    println!("equilibria {}", r.num_psne);
    if let (Some((wp_, wsw)), Some((bp, bsw))) = (&r.worst_psne, &r.best_psne) {
        println!("worst {wp_} SW {wsw:.6}");
        println!("best {bp} SW {bsw:.6}");
    }
    println!("PoA {}", fmt_opt(r.poa));
    println!("PoS {}", fmt_opt(r.pos));
    Ok(())
}

fn approx(g: &GameInstance, o: &Global) -> Result<()> {
    let r = approx_ratio_all_first(g, o.wp())?;
    println!("profile {}", r.profile);
    println!("alpha {:.6}", r.alpha);
    match &r.witness {
        Some(d) => println!("witness {d}"),
        None => println!("witness none (all-first is an equilibrium)"),
    }
    let bound = 1.0 + std::f64::consts::E;
    println!("within 1+e {}", yes_no(r.alpha <= bound));
    Ok(())
}

fn graph(g: &GameInstance, o: &Global, dot: Option<&Path>, best_only: bool) -> Result<()> {
    let dg = deviation_graph(g, o.wp(), o.tau()?, best_only, o.limits())?;
    if let Some(path) = dot {
        write_out(Some(path), &dg.to_dot())?;
        if path == Path::new("-") {
            return Ok(());
        }
    }
    println!("nodes {} edges {}", dg.profiles.len(), dg.edges.len());
    let sinks: Vec<String> = dg.sinks().iter().map(Profile::to_string).collect();
    println!(
        "sinks {}",
        if sinks.is_empty() {
            "none".into()
        } else {
            sinks.join(" ")
        }
    );
    match dg.find_cycle() {
        Some(c) => {
            let nodes: Vec<String> = c.iter().map(|&k| dg.profiles[k].to_string()).collect();
            println!("cycle {}", nodes.join(" -> "));
        }
        None => println!("cycle none"),
    }
    Ok(())
}

struct CoalitionArgs<'a> {
    spec: &'a str,
    member: Option<usize>,
    choices: Option<&'a str>,
    out: Option<&'a Path>,
}

fn coalitions(g: &GameInstance, o: &Global, a: CoalitionArgs) -> Result<()> {
    let m = g.num_parties();
    let cs = CoalitionStructure::parse(a.spec, m)?;
    let cg = secce_transform(g, &cs, DEFAULT_COALITION_CAP)?;
    println!("structure {cs}");
    println!(
        "coalition game: {} coalitions, candidates {:?}, beta {}{}",
        cg.instance.num_parties(),
        cg.instance.candidate_counts(),
        cg.instance.beta(),
        if cg.beta_scaled { " (raised)" } else { "" }
    );
    println!("egoistic {}", yes_no(cg.instance.is_egoistic()));
    if cg.instance.num_parties() >= 2 {
        let eq = enumerate_psne(&cg.instance, o.wp(), o.tau()?, o.limits())?;
        let shown: Vec<String> = eq.iter().map(|p| format!("{p}={}", cg.expand(p))).collect();
        println!(
            "equilibria {}",
            if shown.is_empty() {
                "none".into()
            } else {
                shown.join(" ")
            }
        );
    }
    if let Some(path) = a.out {
        let meta = Metadata {
            source: Some(format!("coalitions {cs}")),
            ..Metadata::default()
        };
        io::store(path, &cg.instance, &meta)?;
    }
    let members: Vec<usize> = match a.member {
        Some(0) => {
            return Err(Error::InvalidParameter(
                "parties are numbered from 1".into(),
            ))
        }
        Some(k) => vec![k - 1],
        None => cs
            .blocks()
            .iter()
            .filter(|b| b.len() >= 2)
            .flatten()
            .copied()
            .collect(),
    };
    if let Some(spec) = a.choices {
        let choices = parse_choices(spec)?;
        let d = coalition_incentive_delta(g, &cs, o.wp(), members[0], &choices)?;
        println!(
            "party {} inside {:.6} alone {:.6} delta {:.6}",
            members[0] + 1,
            d.inside,
            d.alone,
            d.delta
        );
        return Ok(());
    }
    g.check_profile_space(o.limits())?;
    for member in members {
        let mut worst: Option<(f64, Profile)> = None;
        for s in g.profiles() {
            let choices: Vec<Vec<usize>> = cs
                .blocks()
                .iter()
                .map(|b| b.iter().map(|&i| s.get(i)).collect())
                .collect();
            let d = coalition_incentive_delta(g, &cs, o.wp(), member, &choices)?.delta;
            if worst.as_ref().map_or(true, |(w, _)| d > *w) {
                worst = Some((d, s));
            }
        }
        if let Some((d, s)) = worst {
            println!("party {} max delta {d:.6} at {s}", member + 1);
        }
    }
    Ok(())
}

fn reduce_sat(o: &Global, cnf: &Path, epsilon: f64, out: Option<&Path>) -> Result<()> {
    let formula = CnfFormula::parse_dimacs(&fs::read_to_string(cnf)?)?;
    let gg = build_gadget(&formula, epsilon)?;
    if let Some(path) = out {
        let meta = Metadata {
            source: Some(format!("gadget of {}", cnf.display())),
            note: Some(format!("formula {formula}; evaluate with the gadget rule")),
            ..Metadata::default()
        };
        io::store(path, &gg.instance, &meta)?;
    }
    let label = cnf.display().to_string();
    println!(
        "{}",
        compare_with_sat(label, &formula, epsilon, o.limits())?
    );
    Ok(())
}

fn ensemble(o: &Global, spec: EnsembleSpec, out: Option<&Path>) -> Result<()> {
    let sink: Box<dyn std::io::Write> = match out {
        Some(p) if p != Path::new("-") => Box::new(fs::File::create(p)?),
        _ => Box::new(std::io::stdout()),
    };
    let mut w = csv::Writer::from_writer(sink);
    let csv_err = |e: csv::Error| Error::Io(e.to_string());
    w.write_record([
        "index",
        "seed",
        "parties",
        "candidates",
        "wp",
        "num_psne",
        "poa",
        "pos",
        "alpha",
        "k",
        "profiles_evaluated",
    ])
    .map_err(csv_err)?;
    let tau = o.tau()?;
    for (k, inst) in spec.instances().enumerate() {
        let (seed, g) = inst?;
        let counts: Vec<String> = g.candidate_counts().iter().map(usize::to_string).collect();
        for wp in [&Hardmax as &dyn WinProb, &Softmax] {
            let r = price_of_anarchy(&g, wp, tau, o.limits())?;
            let (alpha, k_irr, evaluated) = if g.is_egoistic() {
                let a = approx_ratio_all_first(&g, wp)?.alpha;
                let f = fpt_psne(&g, wp, FptOptions::default())?;
                (
                    a.to_string(),
                    f.reduced.k.to_string(),
                    f.stats.profiles_evaluated.to_string(),
                )
            } else {
                (String::new(), String::new(), String::new())
            };
            w.write_record([
                k.to_string(),
                seed.to_string(),
                g.num_parties().to_string(),
                counts.join(" "),
                wp.name().to_string(),
                r.num_psne.to_string(),
                r.poa.map_or(String::new(), |x| x.to_string()),
                r.pos.map_or(String::new(), |x| x.to_string()),
                alpha,
                k_irr,
                evaluated,
            ])
            .map_err(csv_err)?;
        }
    }
    w.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let o = &cli.global;
    match cli.command {
        Command::Validate { instance } => {
            let g = load(&instance, o.normalize)?;
            println!(
                "valid: {} parties, candidates {:?}, beta {}",
                g.num_parties(),
                g.candidate_counts(),
                g.beta()
            );
            Ok(())
        }
        Command::Info { instance } => info(&load(&instance, o.normalize)?, o),
        Command::Psne {
            instance,
            method,
            stats,
            no_verify,
        } => psne(&load(&instance, o.normalize)?, o, method, stats, no_verify),
        Command::ApproxCheck { instance } => approx(&load(&instance, o.normalize)?, o),
        Command::Poa { instance, csv } => poa(&load(&instance, o.normalize)?, o, csv),
        Command::DeviationGraph {
            instance,
            dot,
            best_response_only,
        } => graph(
            &load(&instance, o.normalize)?,
            o,
            dot.as_deref(),
            best_response_only,
        ),
        Command::Coalitions {
            instance,
            coalitions: spec,
            member,
            choices,
            out,
        } => coalitions(
            &load(&instance, o.normalize)?,
            o,
            CoalitionArgs {
                spec: &spec,
                member,
                choices: choices.as_deref(),
                out: out.as_deref(),
            },
        ),
        Command::ReduceSat { cnf, epsilon, out } => reduce_sat(o, &cnf, epsilon, out.as_deref()),
        Command::Generate {
            parties,
            candidates,
            beta,
            mode,
            out,
        } => {
            let cfg = GeneratorConfig::uniform(parties, candidates, beta, mode.into(), o.seed);
            let g = generate(&cfg)?;
            let meta = Metadata {
                source: Some("generate".into()),
                seed: Some(o.seed),
                note: Some(format!(
                    "{:?}, {parties} parties x {candidates} candidates",
                    cfg.mode
                )),
            };
            write_out(out.as_deref(), &io::render_instance(&g, &meta))
        }
        Command::Fixtures {
            action: FixtureAction::List,
        } => {
            for name in fixtures::NAMES {
                println!("{name}");
            }
            Ok(())
        }
        Command::Fixtures {
            action: FixtureAction::Emit { name, out },
        } => {
            let g = fixtures::by_name(&name)?;
            let meta = Metadata {
                source: Some(format!("fixtures:{name}")),
                ..Metadata::default()
            };
            write_out(out.as_deref(), &io::render_instance(&g, &meta))
        }
        Command::Ensemble {
            count,
            min_parties,
            max_parties,
            max_candidates,
            beta,
            mode,
            out,
        } => {
            let spec = EnsembleSpec {
                count,
                min_parties,
                max_parties,
                max_candidates,
                beta,
                mode: mode.into(),
                seed: o.seed,
            };
            ensemble(o, spec, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let report = serde_json::json!({ "error": e.kind(), "message": e.to_string() });
            eprintln!("{report}");
            ExitCode::from(2)
        }
    }
}
