mod args;

use std::io::{self, BufRead, Write};
use std::process::ExitCode;

use canonlab::bijections::{self, Bijection, Trace};
use canonlab::families;
use canonlab::tableaux::{self, canon_to_tableau, enumerate_dyck_paths, syt2_to_dyck, dyck_to_syt2};
use canonlab::verify::{self, Params, Report, Suite};
use canonlab::words::{self, descent_set, plateau_set};
use canonlab::{
    BivariatePolynomial, CanonWord, Config, DyckPath, Error, IndexSet, Permutation, RectTableau,
    Strategy, Word,
};
use clap::Parser;
use serde_json::{json, Value};

use args::{
    ApplyArgs, BijCmd, Cli, Command, ConvertArgs, ConvertTarget, EnumerateCmd, Format, MapKind,
    PolyCmd, StatsArgs, TableauInput, VerifyArgs,
};

enum Failure {
    /// A verification suite found a counterexample.
    Verification,
    Domain(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    if let Some(workers) = cli.workers {
        canonlab::par::configure_workers(workers)?;
    }
    let cfg = Config {
        max_cells: cli.max_cells,
        max_perm_n: Config::default().max_perm_n,
        canon_max_n: cli.canon_max_n,
        canon_max_k: cli.canon_max_k,
        series_order: cli.series_order,
        strategy: if cli.sequential {
            Strategy::Sequential
        } else {
            Strategy::Parallel
        },
    };
    cfg.validate()?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Enumerate { what } => enumerate(what, &cfg, json, &mut out),
        Command::Stats(a) => stats(a, json, &mut out),
        Command::Poly { family } => poly(family, &cfg, json, &mut out),
        Command::Bij { action } => match action {
            BijCmd::Apply(a) => apply(a, json, &mut out),
            BijCmd::Counterexample { n, k } => counterexample(*n, *k, &cfg, json, &mut out),
        },
        Command::Convert(a) => convert(a, json, &mut out),
        Command::Verify(a) => run_verify(a, &cfg, json || a.json, &mut out),
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Domain(Error::InvalidParameter(msg.into()))
}

fn parse_sigma(s: &str) -> Result<Permutation, Error> {
    s.parse()
}

fn print_json(out: &mut impl Write, v: &impl serde::Serialize) -> Outcome {
    writeln!(out, "{}", serde_json::to_string(v).expect("values serialize"))?;
    Ok(())
}

/// The tableau from `--tableau-word`/`--tableau-grid`, if given.
fn flag_tableau(input: &TableauInput) -> Result<Option<RectTableau>, Error> {
    match (&input.tableau_word, &input.tableau_grid) {
        (Some(w), _) => RectTableau::parse_word(w).map(Some),
        (None, Some(g)) => RectTableau::parse_grid(g).map(Some),
        (None, None) => Ok(None),
    }
}

/// The flag tableau, or else every nonblank stdin line as a tableau word.
fn input_tableaux(input: &TableauInput) -> Result<Vec<RectTableau>, Failure> {
    if let Some(t) = flag_tableau(input)? {
        return Ok(vec![t]);
    }
    let mut all = Vec::new();
    for line in io::stdin().lock().lines() {
        let line = line?;
        if !line.trim().is_empty() {
            all.push(RectTableau::parse_word(&line)?);
        }
    }
    if all.is_empty() {
        return Err(usage("no tableau given (use --tableau-word, --tableau-grid or stdin)"));
    }
    Ok(all)
}

fn enumerate(what: &EnumerateCmd, cfg: &Config, json: bool, out: &mut impl Write) -> Outcome {
    match what {
        EnumerateCmd::Syt { n, k, grid, limit } => {
            let iter = tableaux::enumerate_tableaux_capped(*n, *k, cfg.max_cells)?;
            for t in iter.take(limit.unwrap_or(usize::MAX)) {
                if json {
                    print_json(out, &t)?;
                } else if *grid {
                    writeln!(out, "{}", t.grid_string())?;
                } else {
                    writeln!(out, "{t}")?;
                }
            }
        }
        EnumerateCmd::Canon { n, k, sigma, limit } => {
            if *n > cfg.canon_max_n || *k > cfg.canon_max_k {
                return Err(Failure::Domain(Error::CapExceeded {
                    what: if *n > cfg.canon_max_n { "n" } else { "k" },
                    value: if *n > cfg.canon_max_n { *n } else { *k },
                    bound: if *n > cfg.canon_max_n { cfg.canon_max_n } else { cfg.canon_max_k },
                }));
            }
            let sigmas: Vec<Permutation> = match sigma {
                Some(s) => vec![parse_sigma(s)?],
                None => words::enumerate_permutations(*n)?.collect(),
            };
            let syt: Vec<RectTableau> =
                tableaux::collect_tableaux(*n, *k, cfg.max_cells, cfg.strategy)?;
            let mut left = limit.unwrap_or(usize::MAX);
            'outer: for sigma in &sigmas {
                for t in &syt {
                    if left == 0 {
                        break 'outer;
                    }
                    left -= 1;
                    let w = t.to_canon(sigma)?;
                    if json {
                        print_json(out, &w)?;
                    } else {
                        writeln!(out, "{w}")?;
                    }
                }
            }
        }
        EnumerateCmd::Dyck { n, limit } => {
            if *n == 0 || *n > families::MAX_DYCK_N {
                return Err(usage(format!(
                    "Dyck semilength must lie in [1, {}]",
                    families::MAX_DYCK_N
                )));
            }
            for p in enumerate_dyck_paths(*n).into_iter().take(limit.unwrap_or(usize::MAX)) {
                if json {
                    print_json(out, &json!({"path": p.to_string(), "high_peaks": p.high_peaks(), "low_peaks": p.low_peaks()}))?;
                } else {
                    writeln!(out, "{p}")?;
                }
            }
        }
    }
    Ok(())
}

fn tableau_stats(t: &RectTableau, sigma: Option<&Permutation>) -> Result<Value, Error> {
    let mut v = json!({
        "word": t.word(),
        "n": t.n(),
        "k": t.k(),
        "des_set": t.des_set(),
        "des": t.des(),
        "asc_set": t.asc_set(),
        "asc": t.asc(),
        "plat_set": t.plat_set(),
        "plat": t.plat(),
    });
    if let Some(sigma) = sigma {
        let set = t.des_sigma_set(sigma)?;
        v["sigma"] = json!(sigma);
        v["des_sigma"] = json!(set.len());
        v["des_sigma_set"] = json!(set);
        v["canon"] = json!(t.to_canon(sigma)?.word());
    }
    Ok(v)
}

fn write_tableau_stats(out: &mut impl Write, t: &RectTableau, sigma: Option<&Permutation>) -> Outcome {
    writeln!(out, "tableau: {t} (n={} k={})", t.n(), t.k())?;
    writeln!(out, "Des={} des={}", t.des_set(), t.des())?;
    writeln!(out, "Asc={} asc={}", t.asc_set(), t.asc())?;
    writeln!(out, "plat={} plat={}", t.plat_set(), t.plat())?;
    if let Some(sigma) = sigma {
        let set = t.des_sigma_set(sigma)?;
        writeln!(out, "sigma: {sigma}")?;
        writeln!(out, "Des_sigma={} des_sigma={}", set, set.len())?;
        writeln!(out, "canon: {}", t.to_canon(sigma)?)?;
    }
    Ok(())
}

fn stats(a: &StatsArgs, json: bool, out: &mut impl Write) -> Outcome {
    let sigma = a.sigma.as_deref().map(parse_sigma).transpose()?;
    if let Some(w) = &a.word {
        let word: Word = w.parse()?;
        let e = word.entries();
        let canon = CanonWord::infer(word.clone()).ok();
        if json {
            print_json(
                out,
                &json!({
                    "word": e,
                    "des_set": descent_set(e),
                    "des": descent_set(e).len(),
                    "plat_set": plateau_set(e),
                    "plat": plateau_set(e).len(),
                    "voice": canon.as_ref().map(|c| c.voice()),
                }),
            )?;
        } else {
            writeln!(out, "word: {word}")?;
            writeln!(out, "Des={} des={}", descent_set(e), descent_set(e).len())?;
            writeln!(out, "plat={} plat={}", plateau_set(e), plateau_set(e).len())?;
            match canon {
                Some(c) => writeln!(out, "canon: voice {} (n={} k={})", c.voice(), c.n(), c.k())?,
                None => writeln!(out, "canon: no")?,
            }
        }
        return Ok(());
    }
    let all = input_tableaux(&a.tableau)?;
    for (i, t) in all.iter().enumerate() {
        if json {
            print_json(out, &tableau_stats(t, sigma.as_ref())?)?;
        } else {
            if i > 0 {
                writeln!(out)?;
            }
            write_tableau_stats(out, t, sigma.as_ref())?;
        }
    }
    Ok(())
}

fn poly(family: &PolyCmd, cfg: &Config, json: bool, out: &mut impl Write) -> Outcome {
    let p: BivariatePolynomial = match family {
        PolyCmd::Eulerian { n } => families::eulerian(*n, cfg)?,
        PolyCmd::Narayana { n } => families::narayana_dyck(*n)?,
        PolyCmd::GenNarayana { n, k } => families::gen_narayana(*n, *k, cfg)?,
        PolyCmd::ClosedForm { n, k } => families::closed_form_polynomial(*n, *k)?,
        PolyCmd::Canon { n, k, sigma: None } => families::canon_poly(*n, *k, cfg)?,
        PolyCmd::Canon { n, k, sigma: Some(s) } => {
            families::canon_poly_sigma(*n, *k, &parse_sigma(s)?, cfg)?
        }
    };
    if json {
        print_json(out, &p)
    } else {
        writeln!(out, "{p}")?;
        Ok(())
    }
}

fn need<T: Copy>(v: Option<T>, flag: &str, map: &str) -> Result<T, Failure> {
    v.ok_or_else(|| usage(format!("--map {map} needs {flag}")))
}

/// The traced form of `a.map`, or `None` for the inverse maps.
fn bijection(a: &ApplyArgs) -> Result<Option<Bijection>, Failure> {
    let name = a.map.to_possible_value_name();
    let sigma = || -> Result<Permutation, Failure> {
        Ok(parse_sigma(a.sigma.as_deref().ok_or_else(|| usage(format!("--map {name} needs --sigma")))?)?)
    };
    let set = || -> Result<IndexSet, Failure> {
        Ok(a.set.as_deref().ok_or_else(|| usage(format!("--map {name} needs --set")))?.parse()?)
    };
    Ok(Some(match a.map {
        MapKind::RowSwap => Bijection::RowSwap {
            r: need(a.r, "--r", &name)?,
            s: need(a.s, "--s", &name)?,
        },
        MapKind::CyclicRowSwap => Bijection::CyclicRowSwap {
            r: need(a.r, "--r", &name)?,
            s: need(a.s, "--s", &name)?,
        },
        MapKind::DescentRemoval => Bijection::DescentRemoval {
            l: need(a.l, "--l", &name)?,
            m: need(a.m, "--m", &name)?,
        },
        MapKind::DescentSetRemoval => Bijection::DescentSetRemoval(set()?),
        MapKind::SigmaToLayered => Bijection::SigmaToLayered(sigma()?),
        MapKind::SigmaToLayeredCyclic => Bijection::SigmaToLayeredCyclic(sigma()?),
        MapKind::SigmaToIdentity => Bijection::SigmaToIdentity(sigma()?),
        MapKind::DescentSetRestoration
        | MapKind::LayeredToSigma
        | MapKind::LayeredToSigmaCyclic
        | MapKind::IdentityToSigma => return Ok(None),
    }))
}

fn apply_one(a: &ApplyArgs, t: &RectTableau) -> Result<(RectTableau, Option<Trace>), Failure> {
    if let Some(b) = bijection(a)? {
        let (image, trace) = b.apply_traced(t)?;
        return Ok((image, Some(trace)));
    }
    let name = a.map.to_possible_value_name();
    let sigma = || -> Result<Permutation, Failure> {
        Ok(parse_sigma(a.sigma.as_deref().ok_or_else(|| usage(format!("--map {name} needs --sigma")))?)?)
    };
    let image = match a.map {
        MapKind::DescentSetRestoration => {
            let set: IndexSet = a
                .set
                .as_deref()
                .ok_or_else(|| usage(format!("--map {name} needs --set")))?
                .parse()?;
            bijections::descent_set_restoration(t, &set)?
        }
        MapKind::LayeredToSigma => bijections::layered_to_sigma(t, &sigma()?)?,
        MapKind::LayeredToSigmaCyclic => bijections::layered_to_sigma_cyclic(t, &sigma()?)?,
        MapKind::IdentityToSigma => bijections::identity_to_sigma(t, &sigma()?)?,
        _ => unreachable!("forward maps are traced"),
    };
    Ok((image, None))
}

fn apply(a: &ApplyArgs, json: bool, out: &mut impl Write) -> Outcome {
    if a.trace && bijection(a)?.is_none() {
        return Err(usage(format!(
            "--trace is not available for --map {}",
            a.map.to_possible_value_name()
        )));
    }
    for t in input_tableaux(&a.tableau)? {
        let (image, trace) = apply_one(a, &t)?;
        if json {
            let mut v = json!({"input": t, "output": image});
            if a.trace {
                v["trace"] = json!(trace.unwrap_or_default().steps);
            }
            print_json(out, &v)?;
            continue;
        }
        if a.grid {
            writeln!(out, "{}", image.grid_string())?;
        } else {
            writeln!(out, "{image}")?;
        }
        if let Some(trace) = trace.filter(|_| a.trace) {
            if !trace.steps.is_empty() {
                writeln!(out, "{}", trace.to_json_lines())?;
            }
        }
    }
    Ok(())
}

fn counterexample(n: usize, k: usize, cfg: &Config, json: bool, out: &mut impl Write) -> Outcome {
    if n > cfg.canon_max_n {
        return Err(Failure::Domain(Error::CapExceeded {
            what: "n",
            value: n,
            bound: cfg.canon_max_n,
        }));
    }
    let syt = tableaux::collect_tableaux(n, k, cfg.max_cells, cfg.strategy)?;
    let witness = bijections::find_joint_distribution_witness(&syt, n, cfg.strategy)?;
    if json {
        return print_json(out, &json!({"n": n, "k": k, "witness": witness}));
    }
    match witness {
        Some(w) => {
            writeln!(out, "sigma: {}", w.sigma)?;
            writeln!(out, "tau: {}", w.tau)?;
            writeln!(out, "Des(sigma) = Des(tau) = {}", w.sigma.descent_set())?;
            writeln!(
                out,
                "#{{T : Des_sigma(T) = {}, plat(T) = {}}} = {}, #{{T : Des_tau(T) = {}, plat(T) = {}}} = {}",
                w.des_set, w.plat, w.count_sigma, w.des_set, w.plat, w.count_tau
            )?;
        }
        None => writeln!(out, "no counterexample for n={n} k={k}")?,
    }
    Ok(())
}

fn convert(a: &ConvertArgs, json: bool, out: &mut impl Write) -> Outcome {
    let tableau = || -> Result<RectTableau, Failure> {
        if let Some(t) = flag_tableau(&a.tableau)? {
            return Ok(t);
        }
        if let Some(p) = &a.path {
            return Ok(dyck_to_syt2(&p.parse::<DyckPath>()?));
        }
        if let Some(c) = &a.canon {
            return Ok(canon_to_tableau(&CanonWord::infer(c.parse()?)?).1);
        }
        Err(usage("no input given (use --tableau-word, --tableau-grid, --path or --canon)"))
    };
    let (text, value) = match a.target {
        ConvertTarget::Word => {
            let t = tableau()?;
            (t.word_string(), json!(t))
        }
        ConvertTarget::Grid => {
            let t = tableau()?;
            (t.grid_string(), json!({"n": t.n(), "k": t.k(), "grid": t.to_grid()}))
        }
        ConvertTarget::Dyck => {
            let p = syt2_to_dyck(&tableau()?)?;
            (p.to_string(), json!({"path": p.to_string(), "high_peaks": p.high_peaks(), "low_peaks": p.low_peaks()}))
        }
        ConvertTarget::Matching => {
            let canon = match (&a.canon, &a.sigma) {
                (Some(c), _) => CanonWord::infer(c.parse()?)?,
                (None, Some(s)) => tableau()?.to_canon(&parse_sigma(s)?)?,
                (None, None) => {
                    return Err(usage("matching needs --canon, or a tableau with --sigma"))
                }
            };
            let m = tableaux::canon2_to_matching(&canon)?;
            (m.to_string(), json!({"canon": canon.word(), "arcs": m.arcs(), "nonnesting": m.is_nonnesting()}))
        }
    };
    if json {
        print_json(out, &value)
    } else {
        writeln!(out, "{text}")?;
        Ok(())
    }
}

fn run_verify(a: &VerifyArgs, cfg: &Config, json: bool, out: &mut impl Write) -> Outcome {
    let suites: Vec<Suite> = if a.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![a.suite.parse()?]
    };
    let mut all_passed = true;
    for suite in suites {
        let instances: Vec<Params> = if !a.instance.is_empty() {
            if suite.is_series() {
                return Err(usage(format!("suite {suite} takes --max-n, not --instance")));
            }
            a.instance.iter().map(|&(n, k)| Params::Shape { n, k }).collect()
        } else if a.max_n.is_some() || a.max_k.is_some() {
            let default_n = if suite.is_series() { cfg.series_order } else { 4 };
            suite.bounded_instances(a.max_n.unwrap_or(default_n), a.max_k.unwrap_or(3))
        } else {
            suite.default_instances(cfg)
        };
        let report: Report = verify::run_suite(suite, &instances, cfg)?;
        if json {
            write!(out, "{}", report.to_json_lines())?;
        } else {
            write!(out, "{}", report.to_table())?;
        }
        out.flush()?;
        all_passed &= report.passed();
    }
    if all_passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

trait ValueName {
    fn to_possible_value_name(&self) -> String;
}

impl ValueName for MapKind {
    fn to_possible_value_name(&self) -> String {
        clap::ValueEnum::to_possible_value(self)
            .map(|v| v.get_name().to_string())
            .unwrap_or_default()
    }
}
