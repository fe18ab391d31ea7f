//! Exhaustive verification of the polynomial identities and bijection
//! properties over finite parameter grids.
//!
//! Every suite runs over an explicit list of instances, reports one
//! [`InstanceResult`] per instance in parameter order, and attaches a
//! [`Witness`] with a replay command to every failure.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bijections::{
    cyclic_row_swap, descent_removal, identity_to_sigma, layered_to_sigma,
    layered_to_sigma_cyclic, row_swap, sigma_to_identity, sigma_to_layered,
    sigma_to_layered_cyclic,
};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::families::{self, check_canon_bounds};
use crate::par::{self, Strategy};
use crate::poly::BivariatePolynomial;
use crate::tableaux::{collect_tableaux, RectTableau};
use crate::words::{enumerate_permutations, reverse_layered, IndexSet, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Main,
    PerSigma,
    Bij,
    LemmaFF,
    LemmaG,
    Symmetry,
    Ndes,
    Equidist,
    GfEulerian,
    GfNarayana,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Main,
        Suite::PerSigma,
        Suite::Bij,
        Suite::LemmaFF,
        Suite::LemmaG,
        Suite::Symmetry,
        Suite::Ndes,
        Suite::Equidist,
        Suite::GfEulerian,
        Suite::GfNarayana,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Main => "main",
            Suite::PerSigma => "per-sigma",
            Suite::Bij => "bij",
            Suite::LemmaFF => "lemma-fF",
            Suite::LemmaG => "lemma-g",
            Suite::Symmetry => "symmetry",
            Suite::Ndes => "ndes",
            Suite::Equidist => "equidist",
            Suite::GfEulerian => "gf-eulerian",
            Suite::GfNarayana => "gf-narayana",
        }
    }

    /// Series suites are parameterized by a truncation order instead of `(n, k)`.
    pub fn is_series(self) -> bool {
        matches!(self, Suite::GfEulerian | Suite::GfNarayana)
    }

    /// The default grid: `n <= 4, k <= 3`, plus the larger cases each suite
    /// is expected to cover.
    pub fn default_instances(self, cfg: &Config) -> Vec<Params> {
        let extra: &[(usize, usize)] = match self {
            Suite::Main => &[(5, 2), (5, 3), (4, 4)],
            Suite::Symmetry => &[(5, 2), (5, 3)],
            Suite::LemmaG => &[(5, 1), (5, 2), (5, 3)],
            _ => &[],
        };
        match self {
            Suite::GfEulerian | Suite::GfNarayana => vec![Params::Series {
                order: cfg.series_order,
            }],
            Suite::Ndes => (1..=16)
                .flat_map(|n| (1..=16 / n).map(move |k| Params::Shape { n, k }))
                .collect(),
            _ => {
                let mut grid = Self::grid(4, 3);
                grid.extend(extra.iter().map(|&(n, k)| Params::Shape { n, k }));
                grid
            }
        }
    }

    /// All `(n, k)` with `n <= max_n` and `k <= max_k`; series suites use
    /// `max_n` as the truncation order.
    pub fn bounded_instances(self, max_n: usize, max_k: usize) -> Vec<Params> {
        if self.is_series() {
            vec![Params::Series { order: max_n }]
        } else {
            Self::grid(max_n, max_k)
        }
    }

    fn grid(max_n: usize, max_k: usize) -> Vec<Params> {
        (1..=max_n)
            .flat_map(|n| (1..=max_k).map(move |k| Params::Shape { n, k }))
            .collect()
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

impl Serialize for Suite {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Parameters of one instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(untagged)]
pub enum Params {
    Shape { n: usize, k: usize },
    Series { order: usize },
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Params::Shape { n, k } => write!(f, "n={n} k={k}"),
            Params::Series { order } => write!(f, "order={order}"),
        }
    }
}

/// A serialized counterexample.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    /// The identity that failed.
    pub identity: String,
    pub data: Value,
    /// CLI command reproducing the failure.
    pub replay: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InstanceResult {
    pub suite: Suite,
    pub params: Params,
    pub status: Status,
    /// Number of elementary comparisons made.
    pub checks: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl InstanceResult {
    fn new(suite: Suite, params: Params, checks: u64, witness: Option<Witness>) -> Self {
        InstanceResult {
            suite,
            params,
            status: if witness.is_none() { Status::Pass } else { Status::Fail },
            checks,
            witness,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub suite: Suite,
    pub instances: Vec<InstanceResult>,
    pub elapsed: Duration,
}

#[derive(Serialize)]
struct Summary<'a> {
    suite: Suite,
    summary: bool,
    params: Vec<&'a Params>,
    instances: usize,
    passed: usize,
    failed: usize,
    elapsed_ms: u128,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.instances.iter().all(InstanceResult::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &InstanceResult> {
        self.instances.iter().filter(|r| !r.passed())
    }

    /// One JSON object per instance, then a summary object carrying the timing.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.instances {
            out.push_str(&serde_json::to_string(r).expect("report serializes"));
            out.push('\n');
        }
        let failed = self.failures().count();
        let summary = Summary {
            suite: self.suite,
            summary: true,
            params: self.instances.iter().map(|r| &r.params).collect(),
            instances: self.instances.len(),
            passed: self.instances.len() - failed,
            failed,
            elapsed_ms: self.elapsed.as_millis(),
        };
        out.push_str(&serde_json::to_string(&summary).expect("summary serializes"));
        out.push('\n');
        out
    }

    /// Human-readable table; failing rows are followed by their witness.
    pub fn to_table(&self) -> String {
        let mut out = format!("{:<12} {:<12} {:<6} {:>10}\n", "suite", "params", "status", "checks");
        for r in &self.instances {
            let status = if r.passed() { "pass" } else { "FAIL" };
            out.push_str(&format!(
                "{:<12} {:<12} {:<6} {:>10}\n",
                self.suite.name(),
                r.params.to_string(),
                status,
                r.checks
            ));
            if let Some(w) = &r.witness {
                out.push_str(&format!("  identity: {}\n  data: {}\n  replay: {}\n", w.identity, w.data, w.replay));
            }
        }
        let failed = self.failures().count();
        out.push_str(&format!(
            "{}: {} instances, {} failed, {:.2}s\n",
            self.suite.name(),
            self.instances.len(),
            failed,
            self.elapsed.as_secs_f64()
        ));
        out
    }
}

/// Runs `suite` over `instances`, sorted by parameters.
///
/// Instances run concurrently under `cfg.strategy`; any bound violation
/// aborts the whole suite.
pub fn run_suite(suite: Suite, instances: &[Params], cfg: &Config) -> Result<Report> {
    cfg.validate()?;
    let start = Instant::now();
    let mut sorted = instances.to_vec();
    sorted.sort();
    sorted.dedup();
    let results = par::map_collect(cfg.strategy, &sorted, |&params| run_instance(suite, params, cfg));
    Ok(Report {
        suite,
        instances: results.into_iter().collect::<Result<_>>()?,
        elapsed: start.elapsed(),
    })
}

pub fn run_instance(suite: Suite, params: Params, cfg: &Config) -> Result<InstanceResult> {
    match (suite, params) {
        (Suite::GfEulerian, Params::Series { order }) => check_gf_eulerian(order, cfg),
        (Suite::GfNarayana, Params::Series { order }) => check_gf_narayana(order),
        (_, Params::Shape { n, k }) if !suite.is_series() => match suite {
            Suite::Main => check_main(n, k, cfg),
            Suite::PerSigma => check_per_sigma(n, k, cfg),
            Suite::Bij => check_bij_property(n, k, cfg),
            Suite::LemmaFF => check_lemma_f(n, k, cfg),
            Suite::LemmaG => check_lemma_g(n, k, cfg),
            Suite::Symmetry => check_symmetry(n, k, cfg),
            Suite::Ndes => check_ndes(n, k, cfg),
            Suite::Equidist => check_equidistribution(n, k, cfg),
            Suite::GfEulerian | Suite::GfNarayana => unreachable!(),
        },
        _ => Err(Error::InvalidParameter(format!(
            "suite {suite} does not take parameters {params}"
        ))),
    }
}

fn replay(suite: Suite, params: Params) -> String {
    match params {
        Params::Shape { n, k } => format!("canonlab verify --suite {suite} --instance {n},{k}"),
        Params::Series { order } => format!("canonlab verify --suite {suite} --max-n {order}"),
    }
}

/// Compares two polynomials; on mismatch the witness names the lowest
/// monomial (in `(deg_t, deg_u)` order) whose coefficients differ.
pub fn poly_identity(
    identity: &str,
    lhs: &BivariatePolynomial,
    rhs: &BivariatePolynomial,
    context: Value,
    replay: String,
) -> Option<Witness> {
    let diff = lhs - rhs;
    let ((dt, du), _) = diff.terms().next()?;
    Some(Witness {
        identity: identity.to_string(),
        data: json!({
            "context": context,
            "lhs": lhs.to_string(),
            "rhs": rhs.to_string(),
            "monomial": {"t": dt, "u": du},
            "lhs_coeff": lhs.coeff(dt, du).to_string(),
            "rhs_coeff": rhs.coeff(dt, du).to_string(),
        }),
        replay,
    })
}

/// Compares two coefficient sequences indexed by `h`.
fn sequence_identity(identity: &str, lhs: &[BigInt], rhs: &[BigInt], replay: String) -> Option<Witness> {
    let len = lhs.len().max(rhs.len());
    let at = |v: &[BigInt], h: usize| v.get(h).cloned().unwrap_or_else(BigInt::zero);
    let h = (0..len).find(|&h| at(lhs, h) != at(rhs, h))?;
    Some(Witness {
        identity: identity.to_string(),
        data: json!({
            "h": h,
            "lhs": lhs.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "rhs": rhs.iter().map(ToString::to_string).collect::<Vec<_>>(),
        }),
        replay,
    })
}

fn tableau_witness(identity: &str, t: &RectTableau, data: Value, replay: String) -> Witness {
    let mut data = data;
    data["tableau"] = json!(t.word_string());
    Witness {
        identity: identity.to_string(),
        data,
        replay,
    }
}

fn bij_command(map: &str, args: &str, t: &RectTableau) -> String {
    format!("canonlab bij apply --map {map} {args} --tableau-word \"{}\"", t.word_string())
}

fn sigma_arg(sigma: &Permutation) -> String {
    format!("--sigma \"{sigma}\"")
}

fn permutations(n: usize) -> Result<Vec<Permutation>> {
    Ok(enumerate_permutations(n)?.collect())
}

/// First failure over `items` in order, together with the total check count.
fn sweep<T: Sync>(
    cfg: &Config,
    items: &[T],
    check: impl Fn(&T) -> Result<(u64, Option<Witness>)> + Sync + Send,
) -> Result<(u64, Option<Witness>)> {
    let results = par::map_collect(cfg.strategy, items, check);
    let mut total = 0;
    for r in results {
        let (checks, witness) = r?;
        total += checks;
        if witness.is_some() {
            return Ok((total, witness));
        }
    }
    Ok((total, None))
}

/// `C^k_n(t,u) = A_n(t) N_{n,k}(t,u)`, with the left side enumerated over
/// canon permutations and the right side over `S_n` and `SYT(k^n)` separately.
pub fn check_main(n: usize, k: usize, cfg: &Config) -> Result<InstanceResult> {
    check_canon_bounds(n, k, cfg)?;
    let lhs = families::canon_poly(n, k, cfg)?;
    let rhs = &families::eulerian(n, cfg)? * &families::gen_narayana(n, k, cfg)?;
    let params = Params::Shape { n, k };
    let witness = poly_identity(
        "C^k_n = A_n * N_{n,k}",
        &lhs,
        &rhs,
        json!({"n": n, "k": k}),
        replay(Suite::Main, params),
    );
    Ok(InstanceResult::new(Suite::Main, params, 1, witness))
}

/// `C^{k,sigma}_n = t^{des sigma} N_{n,k}` for every `sigma` in `S_n`.
pub fn check_per_sigma(n: usize, k: usize, cfg: &Config) -> Result<InstanceResult> {
    check_canon_bounds(n, k, cfg)?;
    let narayana = families::gen_narayana(n, k, cfg)?;
    let params = Params::Shape { n, k };
    let perms = permutations(n)?;
    let inner = Config {
        strategy: Strategy::Sequential,
        ..cfg.clone()
    };
    let (checks, witness) = sweep(cfg, &perms, |sigma| {
        let lhs = families::canon_poly_sigma(n, k, sigma, &inner)?;
        let rhs = narayana.shift_t(sigma.des() as u32);
        Ok((
            1,
            poly_identity(
                "C^{k,sigma}_n = t^{des sigma} N_{n,k}",
                &lhs,
                &rhs,
                json!({"n": n, "k": k, "sigma": sigma.to_string()}),
                replay(Suite::PerSigma, params),
            ),
        ))
    })?;
    Ok(InstanceResult::new(Suite::PerSigma, params, checks, witness))
}

/// `des_sigma(T) = asc(phi_sigma(T)) + des(sigma)`, `plat` preserved,
/// `phi_sigma` injective and inverted by `phi_sigma^{-1}`.
pub fn check_bij_property(n: usize, k: usize, cfg: &Config) -> Result<InstanceResult> {
    check_canon_bounds(n, k, cfg)?;
    let tableaux = collect_tableaux(n, k, cfg.max_cells, Strategy::Sequential)?;
    let perms = permutations(n)?;
    let params = Params::Shape { n, k };
    let (checks, witness) = sweep(cfg, &perms, |sigma| {
        let args = sigma_arg(sigma);
        let mut seen: HashSet<Vec<u32>> = HashSet::with_capacity(tableaux.len());
        let mut checks = 0;
        for t in &tableaux {
            checks += 1;
            let image = sigma_to_identity(t, sigma)?;
            let data = json!({
                "sigma": sigma.to_string(),
                "image": image.word_string(),
                "des_sigma": t.des_sigma(sigma),
                "asc_image": image.asc(),
                "des_of_sigma": sigma.des(),
                "plat": t.plat(),
                "plat_image": image.plat(),
            });
            let cmd = bij_command("phi", &args, t);
            if t.des_sigma(sigma) != image.asc() + sigma.des() || t.plat() != image.plat() {
                let w = tableau_witness("des_sigma(T) = asc(phi(T)) + des(sigma), plat(T) = plat(phi(T))", t, data, cmd);
                return Ok((checks, Some(w)));
            }
            if identity_to_sigma(&image, sigma)? != *t {
                return Ok((checks, Some(tableau_witness("phi^{-1}(phi(T)) = T", t, data, cmd))));
            }
            if !seen.insert(image.word().to_vec()) {
                return Ok((checks, Some(tableau_witness("phi injective", t, data, cmd))));
            }
        }
        Ok((checks, None))
    })?;
    Ok(InstanceResult::new(Suite::Bij, params, checks, witness))
}

/// For every `sigma` and rows `r, s` with `|r - s| > 1` and
/// `sigma_s = sigma_r + 1`, with `tau` the swap of those two entries:
/// `des_sigma(T) = des_tau(f_rs(T))`, `plat` preserved,
/// `Des_sigma(T) = Des_tau(F_rs(T))`; `f_rs = f_sr` is an involution and
/// `F_sr` inverts `F_rs`.
pub fn check_lemma_f(n: usize, k: usize, cfg: &Config) -> Result<InstanceResult> {
    check_canon_bounds(n, k, cfg)?;
    let tableaux = collect_tableaux(n, k, cfg.max_cells, Strategy::Sequential)?;
    let mut cases = Vec::new();
    for sigma in permutations(n)? {
        for r in 1..=n {
            for s in 1..=n {
                if r.abs_diff(s) > 1 && sigma.at(s) == sigma.at(r) + 1 {
                    let mut tau = sigma.entries().to_vec();
                    tau.swap(r - 1, s - 1);
                    cases.push((sigma.clone(), Permutation::new(tau)?, r, s));
                }
            }
        }
    }
    let params = Params::Shape { n, k };
    let (checks, witness) = sweep(cfg, &cases, |(sigma, tau, r, s)| {
        let (r, s) = (*r, *s);
        let args = format!("--r {r} --s {s}");
        let mut checks = 0;
        for t in &tableaux {
            checks += 1;
            let f = row_swap(t, r, s)?;
            let big_f = cyclic_row_swap(t, r, s)?;
            let data = json!({
                "sigma": sigma.to_string(),
                "tau": tau.to_string(),
                "r": r,
                "s": s,
                "f": f.word_string(),
                "F": big_f.word_string(),
            });
            let failed = if t.des_sigma(sigma) != f.des_sigma(tau) || t.plat() != f.plat() {
                Some(("des_sigma(T) = des_tau(f_rs(T)), plat(T) = plat(f_rs(T))", "f"))
            } else if t.des_sigma_set(sigma)? != big_f.des_sigma_set(tau)? {
                Some(("Des_sigma(T) = Des_tau(F_rs(T))", "F"))
            } else if row_swap(&f, r, s)? != *t || row_swap(t, s, r)? != f {
                Some(("f_rs(f_rs(T)) = T, f_rs = f_sr", "f"))
            } else if cyclic_row_swap(&big_f, s, r)? != *t {
                Some(("F_sr(F_rs(T)) = T", "F"))
            } else {
                None
            };
            if let Some((identity, map)) = failed {
                let w = tableau_witness(identity, t, data, bij_command(map, &args, t));
                return Ok((checks, Some(w)));
            }
        }
        Ok((checks, None))
    })?;
    Ok(InstanceResult::new(Suite::LemmaFF, params, checks, witness))
}

/// For every nonempty `S` in `[n-1]` with `m = max S`, `S' = S \ {m}`,
/// `l = max S'` (or 0): `des_lambda(T) = des_lambda'(g_lm(T)) + 1`, `plat`
/// preserved, `g_lm` an involution, where `lambda`, `lambda'` are the
/// reverse-layered permutations of `S`, `S'`.
pub fn check_lemma_g(n: usize, k: usize, cfg: &Config) -> Result<InstanceResult> {
    check_canon_bounds(n, k, cfg)?;
    let tableaux = collect_tableaux(n, k, cfg.max_cells, Strategy::Sequential)?;
    let sets: Vec<IndexSet> = IndexSet::all_subsets(n - 1).filter(|s| !s.is_empty()).collect();
    let params = Params::Shape { n, k };
    let (checks, witness) = sweep(cfg, &sets, |set| {
        let m = set.max().expect("nonempty");
        let reduced = IndexSet::new(set.elements().iter().copied().filter(|&i| i != m).collect());
        let l = reduced.elements().last().copied().unwrap_or(0);
        let lambda = reverse_layered(n, set)?;
        let lambda_reduced = reverse_layered(n, &reduced)?;
        let args = format!("--l {l} --m {m}");
        let mut checks = 0;
        for t in &tableaux {
            checks += 1;
            let g = descent_removal(t, l, m)?;
            let failed = if t.des_sigma(&lambda) != g.des_sigma(&lambda_reduced) + 1 || t.plat() != g.plat() {
                Some("des_lambda(T) = des_lambda'(g_lm(T)) + 1, plat(T) = plat(g_lm(T))")
            } else if descent_removal(&g, l, m)? != *t {
                Some("g_lm(g_lm(T)) = T")
            } else {
                None
            };
            if let Some(identity) = failed {
                let data = json!({
                    "set": set.to_string(),
                    "l": l,
                    "m": m,
                    "lambda": lambda.to_string(),
                    "lambda_reduced": lambda_reduced.to_string(),
                    "g": g.word_string(),
                });
                return Ok((checks, Some(tableau_witness(identity, t, data, bij_command("g", &args, t)))));
            }
        }
        Ok((checks, None))
    })?;
    Ok(InstanceResult::new(Suite::LemmaG, params, checks, witness))
}

fn palindrome_witness(identity: &str, coeffs: &[BigInt], center: usize, replay: String) -> Option<Witness> {
    let at = |h: usize| coeffs.get(h).cloned().unwrap_or_else(BigInt::zero);
    let bad = (0..coeffs.len().max(center + 1)).find(|&h| h > center || at(h) != at(center - h));
    bad.map(|h| Witness {
        identity: identity.to_string(),
        data: json!({
            "h": h,
            "center": center,
            "coefficients": coeffs.iter().map(ToString::to_string).collect::<Vec<_>>(),
        }),
        replay,
    })
}

/// The descent distribution of canon permutations is symmetric about
/// `k(n-1)/2`; `N_{n,k}(t,1)` is palindromic about `(n-1)(k-1)` and equal to
/// `N_{k,n}(t,1)`.
pub fn check_symmetry(n: usize, k: usize, cfg: &Config) -> Result<InstanceResult> {
    check_canon_bounds(n, k, cfg)?;
    let params = Params::Shape { n, k };
    let rp = replay(Suite::Symmetry, params);
    let canon = families::canon_poly(n, k, cfg)?.t_coefficients();
    let witness = match palindrome_witness(
        "#{des = h} = #{des = k(n-1) - h} on canon permutations",
        &canon,
        k * (n - 1),
        rp.clone(),
    ) {
        Some(w) => Some(w),
        None => narayana_symmetries(n, k, cfg, &rp)?,
    };
    Ok(InstanceResult::new(Suite::Symmetry, params, 3, witness))
}

fn narayana_symmetries(n: usize, k: usize, cfg: &Config, rp: &str) -> Result<Option<Witness>> {
    let asc = families::gen_narayana(n, k, cfg)?.t_coefficients();
    let transposed = families::gen_narayana(k, n, cfg)?.t_coefficients();
    Ok(palindrome_witness("N(n,k,h) = N(n,k,(n-1)(k-1)-h)", &asc, (n - 1) * (k - 1), rp.to_string())
        .or_else(|| sequence_identity("N(n,k,h) = N(k,n,h)", &asc, &transposed, rp.to_string())))
}

/// `#{T : des T = h + n - 1} = N(n,k,h) = #{T : asc T = h}` with `N` from the
/// closed form, plus both symmetries of `N`.
pub fn check_ndes(n: usize, k: usize, cfg: &Config) -> Result<InstanceResult> {
    let params = Params::Shape { n, k };
    let rp = replay(Suite::Ndes, params);
    let asc = families::gen_narayana(n, k, cfg)?.t_coefficients();
    let des = families::tableau_des_polynomial(n, k, cfg)?.t_coefficients();
    let top = (n - 1) * (k - 1);
    let closed: Vec<BigInt> = (0..=top)
        .map(|h| families::closed_form_count(n, k, h))
        .collect::<Result<_>>()?;
    let mut shifted = vec![BigInt::zero(); n - 1];
    shifted.extend(closed.iter().cloned());
    let witness = sequence_identity("closed form N(n,k,h) = #{T : asc T = h}", &closed, &asc, rp.clone())
        .or_else(|| sequence_identity("#{T : des T = h + n - 1} = N(n,k,h)", &des, &shifted, rp.clone()));
    let witness = match witness {
        Some(w) => Some(w),
        None => narayana_symmetries(n, k, cfg, &rp)?,
    };
    Ok(InstanceResult::new(Suite::Ndes, params, (3 * (top + 1)) as u64, witness))
}

/// For `sigma`, `tau` with equal descent sets: `f_tau^{-1} o f_sigma` carries
/// `(des_sigma, plat)` to `(des_tau, plat)` injectively, and
/// `F_tau^{-1} o F_sigma` carries `Des_sigma` to `Des_tau`.
pub fn check_equidistribution(n: usize, k: usize, cfg: &Config) -> Result<InstanceResult> {
    check_canon_bounds(n, k, cfg)?;
    let tableaux = collect_tableaux(n, k, cfg.max_cells, Strategy::Sequential)?;
    let perms = permutations(n)?;
    let pairs: Vec<(Permutation, Permutation)> = perms
        .iter()
        .flat_map(|sigma| {
            perms
                .iter()
                .filter(|tau| tau.descent_set() == sigma.descent_set())
                .map(move |tau| (sigma.clone(), tau.clone()))
        })
        .collect();
    let params = Params::Shape { n, k };
    let (checks, witness) = sweep(cfg, &pairs, |(sigma, tau)| {
        let mut seen: HashSet<Vec<u32>> = HashSet::with_capacity(tableaux.len());
        let mut checks = 0;
        for t in &tableaux {
            checks += 1;
            let u = layered_to_sigma(&sigma_to_layered(t, sigma)?, tau)?;
            let v = layered_to_sigma_cyclic(&sigma_to_layered_cyclic(t, sigma)?, tau)?;
            let failed = if t.des_sigma(sigma) != u.des_sigma(tau) || t.plat() != u.plat() {
                Some(("des_sigma(T) = des_tau(f_tau^{-1}(f_sigma(T))), plat preserved", "fsigma"))
            } else if t.des_sigma_set(sigma)? != v.des_sigma_set(tau)? {
                Some(("Des_sigma(T) = Des_tau(F_tau^{-1}(F_sigma(T)))", "Fsigma"))
            } else if !seen.insert(u.word().to_vec()) {
                Some(("f_tau^{-1} o f_sigma injective", "fsigma"))
            } else {
                None
            };
            if let Some((identity, map)) = failed {
                let data = json!({
                    "sigma": sigma.to_string(),
                    "tau": tau.to_string(),
                    "f_image": u.word_string(),
                    "F_image": v.word_string(),
                });
                let cmd = bij_command(map, &sigma_arg(sigma), t);
                return Ok((checks, Some(tableau_witness(identity, t, data, cmd))));
            }
        }
        Ok((checks, None))
    })?;
    Ok(InstanceResult::new(Suite::Equidist, params, checks, witness))
}

/// Perturbs the coefficient of `z^order` by one and confirms the check
/// notices exactly there.
fn perturbation_detected(
    polys: &[BivariatePolynomial],
    check: impl Fn(&[BivariatePolynomial]) -> Result<families::SeriesCheck>,
) -> Result<bool> {
    let order = polys.len() - 1;
    let mut perturbed = polys.to_vec();
    perturbed[order] = &perturbed[order] + &BivariatePolynomial::one();
    Ok(check(&perturbed)?.first_failure == Some(order))
}

fn series_result(
    suite: Suite,
    order: usize,
    identity: &str,
    polys: &[BivariatePolynomial],
    check: impl Fn(&[BivariatePolynomial]) -> Result<families::SeriesCheck>,
) -> Result<InstanceResult> {
    let params = Params::Series { order };
    let outcome = check(polys)?;
    let coefficients: Vec<String> = polys.iter().map(ToString::to_string).collect();
    let witness = match outcome.first_failure {
        Some(z) => Some(Witness {
            identity: identity.to_string(),
            data: json!({"order": z, "coefficients": coefficients}),
            replay: replay(suite, params),
        }),
        None if !perturbation_detected(polys, &check)? => Some(Witness {
            identity: format!("{identity} (perturbed coefficient at z^{order} detected)"),
            data: json!({"order": order, "coefficients": coefficients}),
            replay: replay(suite, params),
        }),
        None => None,
    };
    Ok(InstanceResult::new(suite, params, (order + 1) as u64 * 2, witness))
}

/// `(t - e^{(t-1)z}) sum A_n z^n/n! = t - 1` through `z^order`.
pub fn check_gf_eulerian(order: usize, cfg: &Config) -> Result<InstanceResult> {
    let mut polys = vec![BivariatePolynomial::one()];
    for n in 1..=order {
        polys.push(families::eulerian(n, cfg)?);
    }
    series_result(
        Suite::GfEulerian,
        order,
        "(t - e^{(t-1)z}) sum A_n z^n/n! = t - 1",
        &polys,
        families::check_eulerian_egf,
    )
}

/// `(2/F - 1 - (1+t-2u)z)^2 = 1 - 2(1+t)z + (1-t)^2 z^2` through `z^order`.
pub fn check_gf_narayana(order: usize) -> Result<InstanceResult> {
    let mut polys = vec![BivariatePolynomial::one()];
    for n in 1..=order {
        polys.push(families::narayana_dyck(n)?);
    }
    series_result(
        Suite::GfNarayana,
        order,
        "(2/F - 1 - (1+t-2u)z)^2 = 1 - 2(1+t)z + (1-t)^2 z^2",
        &polys,
        families::check_narayana_gf,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(n: usize, k: usize) -> Params {
        Params::Shape { n, k }
    }

    #[test]
    fn suite_names_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
        }
        assert!("everything".parse::<Suite>().is_err());
    }

    #[test]
    fn small_instances_pass() {
        let cfg = Config::default();
        for suite in Suite::ALL {
            let instances = if suite.is_series() {
                vec![Params::Series { order: 4 }]
            } else {
                vec![shape(2, 2), shape(1, 3), shape(3, 2)]
            };
            let report = run_suite(suite, &instances, &cfg).unwrap();
            assert!(report.passed(), "{}", report.to_table());
        }
    }

    #[test]
    fn poly_identity_reports_lowest_differing_monomial() {
        let lhs: BivariatePolynomial = "t + u^2 + t^2".parse().unwrap();
        let rhs: BivariatePolynomial = "t + 2*u^2 + t^2".parse().unwrap();
        let w = poly_identity("x", &lhs, &rhs, json!({}), "r".into()).unwrap();
        assert_eq!(w.data["monomial"], json!({"t": 0, "u": 2}));
        assert_eq!(w.data["lhs_coeff"], json!("1"));
        assert_eq!(w.data["rhs_coeff"], json!("2"));
        assert!(poly_identity("x", &lhs, &lhs, json!({}), "r".into()).is_none());
    }

    #[test]
    fn sequence_and_palindrome_witnesses() {
        let v = |xs: &[i64]| xs.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert!(sequence_identity("x", &v(&[1, 2]), &v(&[1, 2, 0]), "r".into()).is_none());
        let w = sequence_identity("x", &v(&[1, 2]), &v(&[1, 3]), "r".into()).unwrap();
        assert_eq!(w.data["h"], json!(1));
        assert!(palindrome_witness("p", &v(&[1, 4, 1]), 2, "r".into()).is_none());
        assert_eq!(palindrome_witness("p", &v(&[1, 4, 2]), 2, "r".into()).unwrap().data["h"], json!(0));
        assert!(palindrome_witness("p", &v(&[1, 4, 1]), 1, "r".into()).is_some());
    }

    #[test]
    fn report_is_order_stable() {
        let cfg = Config::default();
        let a = run_suite(Suite::Main, &[shape(3, 2), shape(1, 1), shape(2, 2)], &cfg).unwrap();
        let b = run_suite(Suite::Main, &[shape(2, 2), shape(3, 2), shape(1, 1)], &Config::sequential()).unwrap();
        assert_eq!(a.instances, b.instances);
        let params: Vec<_> = a.instances.iter().map(|r| r.params).collect();
        assert_eq!(params, vec![shape(1, 1), shape(2, 2), shape(3, 2)]);
        let strip = |r: &Report| {
            r.to_json_lines()
                .lines()
                .filter(|l| !l.contains("elapsed_ms"))
                .map(String::from)
                .collect::<Vec<_>>()
        };
        assert_eq!(strip(&a), strip(&b));
    }

    #[test]
    fn json_lines_shape() {
        let report = run_suite(Suite::Main, &[shape(2, 2)], &Config::default()).unwrap();
        let lines: Vec<Value> = report
            .to_json_lines()
            .lines()
            .map(|l| serde_json::from_str(l).unwrap())
            .collect();
        assert_eq!(
            lines[0],
            json!({"suite": "main", "params": {"n": 2, "k": 2}, "status": "pass", "checks": 1})
        );
        assert_eq!(lines[1]["summary"], json!(true));
        assert_eq!(lines[1]["failed"], json!(0));
    }

    #[test]
    fn bounds_are_enforced() {
        let cfg = Config::default();
        assert!(run_suite(Suite::Main, &[shape(6, 2)], &cfg).is_err());
        assert!(run_suite(Suite::Main, &[Params::Series { order: 3 }], &cfg).is_err());
        assert!(run_suite(Suite::Ndes, &[shape(7, 3)], &cfg).is_err());
    }

    #[test]
    fn series_perturbation_is_caught() {
        let cfg = Config::default();
        let mut polys = vec![BivariatePolynomial::one()];
        for n in 1..=5 {
            polys.push(families::eulerian(n, &cfg).unwrap());
        }
        assert!(perturbation_detected(&polys, families::check_eulerian_egf).unwrap());
        polys[3] = &polys[3] + &BivariatePolynomial::t();
        let r = series_result(Suite::GfEulerian, 5, "egf", &polys, families::check_eulerian_egf).unwrap();
        assert!(!r.passed());
        assert_eq!(r.witness.unwrap().data["order"], json!(3));
    }
}
