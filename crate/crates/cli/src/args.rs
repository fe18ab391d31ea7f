use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "canonlab", version, about = "Canon permutations, rectangular tableaux and their descent polynomials")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Worker threads for the parallel kernels.
    #[arg(long, global = true, env = "CANONLAB_WORKERS")]
    pub workers: Option<usize>,

    /// Run every kernel on the calling thread.
    #[arg(long, global = true)]
    pub sequential: bool,

    /// Largest kn for tableau enumeration.
    #[arg(long, global = true, default_value_t = 20)]
    pub max_cells: usize,

    /// Largest n for canon-permutation enumeration.
    #[arg(long, global = true, default_value_t = 5)]
    pub canon_max_n: usize,

    /// Largest k for canon-permutation enumeration.
    #[arg(long, global = true, default_value_t = 4)]
    pub canon_max_k: usize,

    /// Truncation order of the generating-function checks.
    #[arg(long, global = true, default_value_t = 8)]
    pub series_order: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List tableaux, canon permutations or Dyck paths.
    Enumerate {
        #[command(subcommand)]
        what: EnumerateCmd,
    },
    /// Descent, ascent and plateau statistics of tableaux or words.
    Stats(StatsArgs),
    /// Compute a polynomial family.
    Poly {
        #[command(subcommand)]
        family: PolyCmd,
    },
    /// Apply a bijection, or search for a distribution counterexample.
    Bij {
        #[command(subcommand)]
        action: BijCmd,
    },
    /// Convert between tableau words, grids, matchings and Dyck paths.
    Convert(ConvertArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
}

#[derive(Subcommand, Debug)]
pub enum EnumerateCmd {
    /// Standard Young tableaux of shape k^n, as tableau words.
    Syt {
        n: usize,
        k: usize,
        /// Print grids instead of words.
        #[arg(long)]
        grid: bool,
        /// Stop after this many.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Canon permutations of {1^k, ..., n^k}.
    Canon {
        n: usize,
        k: usize,
        /// Only those with this voice.
        #[arg(long)]
        sigma: Option<String>,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Dyck paths of semilength n.
    Dyck {
        n: usize,
        #[arg(long)]
        limit: Option<usize>,
    },
}

#[derive(Args, Debug, Default)]
pub struct TableauInput {
    /// Tableau word, e.g. "1 2 1 2".
    #[arg(long, conflicts_with = "tableau_grid")]
    pub tableau_word: Option<String>,
    /// Tableau rows separated by '/', e.g. "1 3/2 4".
    #[arg(long)]
    pub tableau_grid: Option<String>,
}

#[derive(Args, Debug)]
pub struct StatsArgs {
    #[command(flatten)]
    pub tableau: TableauInput,
    /// Permutation for the sigma-descent statistics.
    #[arg(long)]
    pub sigma: Option<String>,
    /// A plain word (or canon permutation) instead of a tableau.
    #[arg(long, conflicts_with_all = ["tableau_word", "tableau_grid"])]
    pub word: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum PolyCmd {
    /// A_n(t), by enumeration of S_n.
    Eulerian { n: usize },
    /// Narayana polynomial over Dyck paths of semilength n (t: high peaks, u: low peaks).
    Narayana { n: usize },
    /// N_{n,k}(t,u) over SYT(k^n) (t: ascents, u: plateaus).
    GenNarayana { n: usize, k: usize },
    /// sum_h N(n,k,h) t^h from the closed form.
    #[command(name = "sulanke", alias = "closed-form")]
    ClosedForm { n: usize, k: usize },
    /// C^k_n(t,u) over canon permutations (t: descents, u: plateaus).
    Canon {
        n: usize,
        k: usize,
        /// Restrict to canon permutations with this voice.
        #[arg(long)]
        sigma: Option<String>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum MapKind {
    /// f_rs (needs --r, --s).
    #[value(name = "f")]
    RowSwap,
    /// F_rs (needs --r, --s).
    #[value(name = "F")]
    CyclicRowSwap,
    /// g_lm (needs --l, --m).
    #[value(name = "g")]
    DescentRemoval,
    /// g_S (needs --set).
    #[value(name = "gS")]
    DescentSetRemoval,
    /// Inverse of g_S (needs --set).
    #[value(name = "gS-inv")]
    DescentSetRestoration,
    /// f_sigma (needs --sigma).
    #[value(name = "fsigma")]
    SigmaToLayered,
    /// F_sigma (needs --sigma).
    #[value(name = "Fsigma")]
    SigmaToLayeredCyclic,
    /// Inverse of f_sigma (needs --sigma).
    #[value(name = "fsigma-inv")]
    LayeredToSigma,
    /// Inverse of F_sigma (needs --sigma).
    #[value(name = "Fsigma-inv")]
    LayeredToSigmaCyclic,
    /// phi_sigma = g_{Des sigma} o f_sigma (needs --sigma).
    #[value(name = "phi")]
    SigmaToIdentity,
    /// Inverse of phi_sigma (needs --sigma).
    #[value(name = "phi-inv")]
    IdentityToSigma,
}

#[derive(Subcommand, Debug)]
pub enum BijCmd {
    /// Apply a map to a tableau (flags or stdin, one word per line).
    Apply(ApplyArgs),
    /// Search S_n pairs with equal descent sets for unequal (Des_sigma, plat) distributions.
    Counterexample { n: usize, k: usize },
}

#[derive(Args, Debug)]
pub struct ApplyArgs {
    #[arg(long, value_enum)]
    pub map: MapKind,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub l: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    /// Index set, e.g. "{2,5,6}".
    #[arg(long)]
    pub set: Option<String>,
    #[arg(long)]
    pub sigma: Option<String>,
    #[command(flatten)]
    pub tableau: TableauInput,
    /// Print the image as a grid.
    #[arg(long)]
    pub grid: bool,
    /// Print every elementary step as a JSON line.
    #[arg(long)]
    pub trace: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConvertTarget {
    Word,
    Grid,
    Matching,
    Dyck,
}

#[derive(Args, Debug)]
pub struct ConvertArgs {
    #[arg(value_enum)]
    pub target: ConvertTarget,
    #[command(flatten)]
    pub tableau: TableauInput,
    /// A canon permutation.
    #[arg(long)]
    pub canon: Option<String>,
    /// A Dyck path, e.g. "UUDD".
    #[arg(long)]
    pub path: Option<String>,
    /// Voice used to turn a tableau into a canon permutation.
    #[arg(long)]
    pub sigma: Option<String>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Suite name, or "all".
    #[arg(long)]
    pub suite: String,
    /// Grid bound on n (the truncation order for series suites).
    #[arg(long)]
    pub max_n: Option<usize>,
    /// Grid bound on k.
    #[arg(long)]
    pub max_k: Option<usize>,
    /// Explicit instance "N,K"; repeatable.
    #[arg(long, value_parser = parse_instance)]
    pub instance: Vec<(usize, usize)>,
    /// JSON-lines report (same as --format json).
    #[arg(long)]
    pub json: bool,
}

fn parse_instance(s: &str) -> Result<(usize, usize), String> {
    let (n, k) = s
        .split_once(',')
        .ok_or_else(|| format!("expected N,K, got `{s}`"))?;
    let parse = |x: &str| {
        x.trim()
            .parse::<usize>()
            .map_err(|e| format!("bad number `{x}`: {e}"))
    };
    Ok((parse(n)?, parse(k)?))
}
