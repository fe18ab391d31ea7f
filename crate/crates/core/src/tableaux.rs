//! Rectangular standard Young tableaux stored as tableau words.
//!
//! A tableau `T` in `SYT(k^n)` (n rows, k columns) is stored as the word
//! `row(1) row(2) ... row(kn)`. A word over `[n]` with `k` copies of each
//! letter is a tableau word exactly when it satisfies the ballot condition:
//! every prefix has at least as many `j`s as `(j+1)`s.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par::{self, Strategy};
use crate::words::{self, check_multiset, CanonWord, IndexSet, Permutation, Word};

/// Default bound on the number of cells `kn` for exhaustive enumeration.
pub const DEFAULT_MAX_CELLS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawTableau")]
pub struct RectTableau {
    n: usize,
    k: usize,
    word: Vec<u32>,
}

#[derive(Deserialize)]
struct RawTableau {
    n: usize,
    k: usize,
    word: Vec<u32>,
}

impl TryFrom<RawTableau> for RectTableau {
    type Error = Error;
    fn try_from(raw: RawTableau) -> Result<Self> {
        RectTableau::from_word(raw.n, raw.k, &raw.word)
    }
}

impl RectTableau {
    /// Validates the multiset content and the ballot condition.
    pub fn from_word(n: usize, k: usize, word: &[u32]) -> Result<Self> {
        check_multiset(word, n, k)?;
        check_ballot(word, n)?;
        Ok(RectTableau {
            n,
            k,
            word: word.to_vec(),
        })
    }

    /// Infers `n` from the largest letter and `k` from the length.
    pub fn from_word_infer(word: &[u32]) -> Result<Self> {
        let n = word.iter().copied().max().unwrap_or(0) as usize;
        if n == 0 || word.len() % n != 0 {
            return Err(Error::WrongMultiset {
                n,
                k: 0,
                reason: format!(
                    "length {} is not a multiple of the largest entry",
                    word.len()
                ),
            });
        }
        RectTableau::from_word(n, word.len() / n, word)
    }

    pub(crate) fn from_word_unchecked(n: usize, k: usize, word: Vec<u32>) -> Self {
        debug_assert!(check_ballot(&word, n).is_ok());
        RectTableau { n, k, word }
    }

    /// The single tableau of shape `k^n` whose word is `1^k 2^k ... n^k`.
    pub fn row_reading(n: usize, k: usize) -> Self {
        let word = (1..=n as u32)
            .flat_map(|r| std::iter::repeat(r).take(k))
            .collect();
        RectTableau { n, k, word }
    }

    /// Builds a tableau from its rows. Entries must be a permutation of
    /// `1..=kn` with rows and columns strictly increasing.
    pub fn from_grid(grid: &[Vec<u32>]) -> Result<Self> {
        let n = grid.len();
        if n == 0 {
            return Err(Error::GridShape("grid has no rows".into()));
        }
        let k = grid[0].len();
        if k == 0 {
            return Err(Error::GridShape("grid has an empty row".into()));
        }
        if let Some(r) = grid.iter().position(|row| row.len() != k) {
            return Err(Error::GridShape(format!(
                "row {} has length {} instead of {k}",
                r + 1,
                grid[r].len()
            )));
        }
        let cells = n * k;
        let mut word = vec![0u32; cells];
        for (r, row) in grid.iter().enumerate() {
            for &v in row {
                let i = v as usize;
                if i == 0 || i > cells {
                    return Err(Error::GridShape(format!(
                        "entry {v} outside 1..={cells}"
                    )));
                }
                if word[i - 1] != 0 {
                    return Err(Error::GridShape(format!("entry {v} repeated")));
                }
                word[i - 1] = r as u32 + 1;
            }
        }
        for r in 0..n {
            for c in 0..k {
                let v = grid[r][c];
                if (c > 0 && grid[r][c - 1] >= v) || (r > 0 && grid[r - 1][c] >= v) {
                    return Err(Error::GridOrder { row: r + 1, col: c + 1 });
                }
            }
        }
        Ok(RectTableau { n, k, word })
    }

    /// Parses the grid form `"1 3 6/2 4 9/..."`.
    pub fn parse_grid(s: &str) -> Result<Self> {
        let rows = s
            .split('/')
            .map(words::parse_entries)
            .collect::<Result<Vec<_>>>()?;
        RectTableau::from_grid(&rows)
    }

    /// Parses the word form `"1 2 1 2 ..."`, inferring the shape.
    pub fn parse_word(s: &str) -> Result<Self> {
        RectTableau::from_word_infer(&words::parse_entries(s)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn cells(&self) -> usize {
        self.n * self.k
    }

    /// The tableau word `row(1) ... row(kn)`.
    pub fn word(&self) -> &[u32] {
        &self.word
    }

    pub fn into_word(self) -> Vec<u32> {
        self.word
    }

    /// Row of entry `i` (1-indexed).
    pub fn row(&self, i: usize) -> usize {
        self.word[i - 1] as usize
    }

    pub fn to_grid(&self) -> Vec<Vec<u32>> {
        let mut grid = vec![Vec::with_capacity(self.k); self.n];
        for (i, &r) in self.word.iter().enumerate() {
            grid[r as usize - 1].push(i as u32 + 1);
        }
        grid
    }

    pub fn grid_string(&self) -> String {
        self.to_grid()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("/")
    }

    pub fn word_string(&self) -> String {
        self.to_string()
    }

    /// `{ i : sigma_{row(i)} > sigma_{row(i+1)} }`.
    pub fn des_sigma_set(&self, sigma: &Permutation) -> Result<IndexSet> {
        self.check_sigma(sigma)?;
        let s = sigma.entries();
        Ok(self
            .word
            .windows(2)
            .enumerate()
            .filter(|(_, p)| s[p[0] as usize - 1] > s[p[1] as usize - 1])
            .map(|(i, _)| i + 1)
            .collect())
    }

    /// Number of sigma-descents. Panics if `sigma` has the wrong length.
    pub fn des_sigma(&self, sigma: &Permutation) -> usize {
        assert_eq!(sigma.len(), self.n, "sigma length must equal the row count");
        des_sigma_of_word(&self.word, sigma.entries())
    }

    fn check_sigma(&self, sigma: &Permutation) -> Result<()> {
        if sigma.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                actual: sigma.len(),
            });
        }
        Ok(())
    }

    /// Positions with `row(i) = row(i+1)`.
    pub fn plat_set(&self) -> IndexSet {
        words::plateau_set(&self.word)
    }

    /// Positions with `row(i) > row(i+1)`.
    pub fn asc_set(&self) -> IndexSet {
        words::descent_set(&self.word)
    }

    /// Positions with `row(i) < row(i+1)`.
    pub fn des_set(&self) -> IndexSet {
        self.word
            .windows(2)
            .enumerate()
            .filter(|(_, p)| p[0] < p[1])
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn plat(&self) -> usize {
        words::plateau_count(&self.word)
    }

    pub fn asc(&self) -> usize {
        words::descent_count(&self.word)
    }

    pub fn des(&self) -> usize {
        self.word.windows(2).filter(|p| p[0] < p[1]).count()
    }

    /// The canon permutation `sigma_{row(1)} ... sigma_{row(kn)}`.
    pub fn to_canon(&self, sigma: &Permutation) -> Result<CanonWord> {
        self.check_sigma(sigma)?;
        let s = sigma.entries();
        let pi: Vec<u32> = self.word.iter().map(|&r| s[r as usize - 1]).collect();
        let des = words::descent_set(&pi);
        if des != self.des_sigma_set(sigma)? || words::plateau_set(&pi) != self.plat_set() {
            return Err(Error::Internal(format!(
                "canon image of {self} under {sigma} does not carry its statistics"
            )));
        }
        let word = Word::new(pi)?;
        Ok(CanonWord::from_parts(word, self.n, self.k, sigma.clone()))
    }
}

impl fmt::Display for RectTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        words::write_spaced(f, &self.word)
    }
}

#[inline]
pub(crate) fn des_sigma_of_word(word: &[u32], sigma: &[u32]) -> usize {
    word.windows(2)
        .filter(|p| sigma[p[0] as usize - 1] > sigma[p[1] as usize - 1])
        .count()
}

/// Checks the ballot condition for a word over `[n]`.
pub fn check_ballot(word: &[u32], n: usize) -> Result<()> {
    let mut counts = vec![0usize; n + 2];
    for (i, &e) in word.iter().enumerate() {
        let v = e as usize;
        if v == 0 || v > n {
            return Err(Error::WrongMultiset {
                n,
                k: 0,
                reason: format!("entry {e} out of range"),
            });
        }
        counts[v] += 1;
        if v > 1 && counts[v] > counts[v - 1] {
            return Err(Error::NotBallot {
                position: i + 1,
                row_above: v - 1,
                row_below: v,
            });
        }
    }
    Ok(())
}

pub fn tableau_to_canon(t: &RectTableau, sigma: &Permutation) -> Result<CanonWord> {
    t.to_canon(sigma)
}

/// Inverse of [`tableau_to_canon`]: `row(i)` is the position of `w_i` in the voice.
pub fn canon_to_tableau(w: &CanonWord) -> (Permutation, RectTableau) {
    let sigma = w.voice().clone();
    let mut pos = vec![0u32; w.n() + 1];
    for (i, &v) in sigma.entries().iter().enumerate() {
        pos[v as usize] = i as u32 + 1;
    }
    let word = w.word().entries().iter().map(|&v| pos[v as usize]).collect();
    (sigma, RectTableau::from_word_unchecked(w.n(), w.k(), word))
}

/// `(kn)! / prod_{i<n, j<k} (i + j + 1)`.
pub fn hook_length_count(n: usize, k: usize) -> BigUint {
    let mut num = BigUint::one();
    for i in 1..=n * k {
        num *= BigUint::from(i);
    }
    let mut den = BigUint::one();
    for i in 0..n {
        for j in 0..k {
            den *= BigUint::from(i + j + 1);
        }
    }
    num / den
}

fn check_shape(n: usize, k: usize, max_cells: usize) -> Result<()> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidParameter("n and k must be at least 1".into()));
    }
    if n * k > max_cells {
        return Err(Error::CapExceeded {
            what: "kn",
            value: n * k,
            bound: max_cells,
        });
    }
    Ok(())
}

/// Lexicographic stream over `SYT(k^n)`.
#[derive(Clone, Debug)]
pub struct Tableaux {
    n: usize,
    k: usize,
    counts: Vec<usize>,
    current: Option<Vec<u32>>,
}

pub fn enumerate_tableaux(n: usize, k: usize) -> Result<Tableaux> {
    enumerate_tableaux_capped(n, k, DEFAULT_MAX_CELLS)
}

pub fn enumerate_tableaux_capped(n: usize, k: usize, max_cells: usize) -> Result<Tableaux> {
    check_shape(n, k, max_cells)?;
    Ok(Tableaux {
        n,
        k,
        counts: vec![0; n + 1],
        current: Some(RectTableau::row_reading(n, k).word),
    })
}

impl Tableaux {
    #[inline]
    fn can_place(&self, v: usize) -> bool {
        self.counts[v] < self.k && (v == 1 || self.counts[v - 1] > self.counts[v])
    }

    /// Lexicographic successor of `w`, or `None` at the last word.
    fn successor(&mut self, mut w: Vec<u32>) -> Option<Vec<u32>> {
        let cells = w.len();
        self.counts.iter_mut().for_each(|c| *c = 0);
        for &e in &w {
            self.counts[e as usize] += 1;
        }
        for i in (0..cells).rev() {
            let old = w[i] as usize;
            self.counts[old] -= 1;
            if let Some(v) = (old + 1..=self.n).find(|&v| self.can_place(v)) {
                w[i] = v as u32;
                self.counts[v] += 1;
                // smallest completion
                for slot in w.iter_mut().skip(i + 1) {
                    let v = (1..=self.n)
                        .find(|&v| self.can_place(v))
                        .expect("a ballot prefix always extends");
                    *slot = v as u32;
                    self.counts[v] += 1;
                }
                return Some(w);
            }
        }
        None
    }
}

impl Iterator for Tableaux {
    type Item = RectTableau;

    fn next(&mut self) -> Option<RectTableau> {
        let cur = self.current.take()?;
        self.current = self.successor(cur.clone());
        Some(RectTableau::from_word_unchecked(self.n, self.k, cur))
    }
}

/// All ballot prefixes of length `len` (for shape `k^n`), in lexicographic order.
pub fn ballot_prefixes(n: usize, k: usize, len: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut buf = Vec::with_capacity(len);
    let mut counts = vec![0usize; n + 1];
    extend_prefixes(n, k, len, &mut buf, &mut counts, &mut |w| out.push(w.to_vec()));
    out
}

fn extend_prefixes<F: FnMut(&[u32])>(
    n: usize,
    k: usize,
    len: usize,
    buf: &mut Vec<u32>,
    counts: &mut [usize],
    visit: &mut F,
) {
    if buf.len() == len {
        visit(buf);
        return;
    }
    for v in 1..=n {
        if counts[v] < k && (v == 1 || counts[v - 1] > counts[v]) {
            counts[v] += 1;
            buf.push(v as u32);
            extend_prefixes(n, k, len, buf, counts, visit);
            buf.pop();
            counts[v] -= 1;
        }
    }
}

/// Visits every tableau word extending `prefix`, in lexicographic order.
/// `prefix` must itself satisfy the ballot condition.
pub fn for_each_completion<F: FnMut(&[u32])>(n: usize, k: usize, prefix: &[u32], mut visit: F) {
    let mut counts = vec![0usize; n + 1];
    for &e in prefix {
        counts[e as usize] += 1;
    }
    let mut buf = Vec::with_capacity(n * k);
    buf.extend_from_slice(prefix);
    extend_prefixes(n, k, n * k, &mut buf, &mut counts, &mut visit);
}

/// Prefix length used to split `SYT(k^n)` into independent work units.
/// Depends only on the shape, so partitioning is reproducible.
pub fn split_depth(n: usize, k: usize) -> usize {
    const TARGET_UNITS: usize = 256;
    let cells = n * k;
    let mut depth = 0;
    while depth < cells && ballot_prefixes(n, k, depth).len() < TARGET_UNITS {
        depth += 1;
    }
    depth
}

/// Folds over all tableau words of `SYT(k^n)`, partitioned by word prefix.
///
/// Each work unit starts from `identity()` and folds its words in
/// lexicographic order; unit results are combined with `reduce`.
pub fn fold_tableau_words<A, I, F, R>(
    n: usize,
    k: usize,
    max_cells: usize,
    strategy: Strategy,
    identity: I,
    fold: F,
    reduce: R,
) -> Result<A>
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(&mut A, &[u32]) + Sync + Send,
    R: Fn(A, A) -> A + Sync + Send,
{
    check_shape(n, k, max_cells)?;
    let prefixes = ballot_prefixes(n, k, split_depth(n, k));
    Ok(par::map_reduce(
        strategy,
        &prefixes,
        &identity,
        |prefix| {
            let mut acc = identity();
            for_each_completion(n, k, prefix, |w| fold(&mut acc, w));
            acc
        },
        reduce,
    ))
}

/// All of `SYT(k^n)` in lexicographic order, built in parallel.
pub fn collect_tableaux(
    n: usize,
    k: usize,
    max_cells: usize,
    strategy: Strategy,
) -> Result<Vec<RectTableau>> {
    check_shape(n, k, max_cells)?;
    let prefixes = ballot_prefixes(n, k, split_depth(n, k));
    let chunks = par::map_collect(strategy, &prefixes, |prefix| {
        let mut out = Vec::new();
        for_each_completion(n, k, prefix, |w| {
            out.push(RectTableau::from_word_unchecked(n, k, w.to_vec()))
        });
        out
    });
    Ok(chunks.into_iter().flatten().collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Step {
    U,
    D,
}

/// A Dyck path of semilength `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DyckPath {
    steps: Vec<bool>,
}

impl DyckPath {
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        let mut height = 0i64;
        for (i, s) in steps.iter().enumerate() {
            height += if *s == Step::U { 1 } else { -1 };
            if height < 0 {
                return Err(Error::InvalidParameter(format!(
                    "Dyck path goes below the axis after step {}",
                    i + 1
                )));
            }
        }
        if height != 0 {
            return Err(Error::InvalidParameter("Dyck path does not return to the axis".into()));
        }
        Ok(DyckPath {
            steps: steps.into_iter().map(|s| s == Step::U).collect(),
        })
    }

    pub fn semilength(&self) -> usize {
        self.steps.len() / 2
    }

    pub fn steps(&self) -> impl Iterator<Item = Step> + '_ {
        self.steps.iter().map(|&up| if up { Step::U } else { Step::D })
    }

    /// Heights of each `UD` peak.
    fn peak_heights(&self) -> impl Iterator<Item = usize> + '_ {
        let mut height = 0usize;
        let mut heights = Vec::new();
        for i in 0..self.steps.len() {
            if self.steps[i] {
                height += 1;
                if i + 1 < self.steps.len() && !self.steps[i + 1] {
                    heights.push(height);
                }
            } else {
                height -= 1;
            }
        }
        heights.into_iter()
    }

    pub fn high_peaks(&self) -> usize {
        self.peak_heights().filter(|&h| h > 1).count()
    }

    pub fn low_peaks(&self) -> usize {
        self.peak_heights().filter(|&h| h == 1).count()
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for up in &self.steps {
            f.write_str(if *up { "U" } else { "D" })?;
        }
        Ok(())
    }
}

impl std::str::FromStr for DyckPath {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let steps = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                'U' | 'u' => Ok(Step::U),
                'D' | 'd' => Ok(Step::D),
                other => Err(Error::Parse(format!("bad Dyck step {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        DyckPath::new(steps)
    }
}

/// All Dyck paths of semilength `n`, with `U < D`, in lexicographic order.
pub fn enumerate_dyck_paths(n: usize) -> Vec<DyckPath> {
    fn go(n: usize, ups: usize, downs: usize, buf: &mut Vec<bool>, out: &mut Vec<DyckPath>) {
        if ups == n && downs == n {
            out.push(DyckPath { steps: buf.clone() });
            return;
        }
        if ups < n {
            buf.push(true);
            go(n, ups + 1, downs, buf, out);
            buf.pop();
        }
        if downs < ups {
            buf.push(false);
            go(n, ups, downs + 1, buf, out);
            buf.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 0, 0, &mut Vec::with_capacity(2 * n), &mut out);
    out
}

/// Step `i` is `U` exactly when entry `i` sits in the first column.
pub fn syt2_to_dyck(t: &RectTableau) -> Result<DyckPath> {
    if t.k() != 2 {
        return Err(Error::InvalidParameter(format!(
            "Dyck path bijection needs k = 2, got k = {}",
            t.k()
        )));
    }
    let mut seen = vec![false; t.n() + 1];
    let steps = t
        .word()
        .iter()
        .map(|&r| !std::mem::replace(&mut seen[r as usize], true))
        .collect();
    let path = DyckPath { steps };
    if path.high_peaks() != t.asc() || path.low_peaks() != t.plat() {
        return Err(Error::Internal(format!(
            "Dyck image of {t} does not send (asc, plat) to (high, low) peaks"
        )));
    }
    Ok(path)
}

/// Inverse of [`syt2_to_dyck`]: the j-th `U` and the j-th `D` fill row j.
pub fn dyck_to_syt2(path: &DyckPath) -> RectTableau {
    let (mut ups, mut downs) = (0u32, 0u32);
    let word = path
        .steps
        .iter()
        .map(|&up| {
            if up {
                ups += 1;
                ups
            } else {
                downs += 1;
                downs
            }
        })
        .collect();
    RectTableau::from_word_unchecked(path.semilength(), 2, word)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arc {
    pub left: usize,
    pub right: usize,
    pub label: u32,
}

/// A perfect matching of `[2n]` with labelled arcs, sorted by left endpoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LabeledMatching {
    arcs: Vec<Arc>,
}

impl LabeledMatching {
    pub fn new(mut arcs: Vec<Arc>) -> Result<Self> {
        let n = arcs.len();
        arcs.sort_by_key(|a| a.left);
        let mut used = vec![false; 2 * n + 1];
        let mut labels = vec![false; n + 1];
        for a in &arcs {
            if a.left >= a.right || a.right > 2 * n || a.left == 0 {
                return Err(Error::InvalidParameter(format!("bad arc {a:?}")));
            }
            for e in [a.left, a.right] {
                if std::mem::replace(&mut used[e], true) {
                    return Err(Error::InvalidParameter(format!("endpoint {e} used twice")));
                }
            }
            let l = a.label as usize;
            if l == 0 || l > n || std::mem::replace(&mut labels[l], true) {
                return Err(Error::InvalidParameter(format!("bad label {}", a.label)));
            }
        }
        let m = LabeledMatching { arcs };
        if !m.is_nonnesting() {
            return Err(Error::InvalidParameter("matching has nested arcs".into()));
        }
        Ok(m)
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Left endpoints and right endpoints appear in the same order.
    pub fn is_nonnesting(&self) -> bool {
        self.arcs.windows(2).all(|p| p[0].right < p[1].right)
    }

    /// Reads the label of the arc through each point `1..=2n`.
    pub fn to_word(&self) -> Word {
        let mut w = vec![0u32; 2 * self.arcs.len()];
        for a in &self.arcs {
            w[a.left - 1] = a.label;
            w[a.right - 1] = a.label;
        }
        Word::new(w).expect("labels are positive")
    }
}

impl fmt::Display for LabeledMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.arcs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "({},{}:{})", a.left, a.right, a.label)?;
        }
        Ok(())
    }
}

pub fn canon2_to_matching(w: &CanonWord) -> Result<LabeledMatching> {
    if w.k() != 2 {
        return Err(Error::InvalidParameter(format!(
            "matching view needs k = 2, got k = {}",
            w.k()
        )));
    }
    let mut first = vec![0usize; w.n() + 1];
    let mut arcs = Vec::with_capacity(w.n());
    for (i, &v) in w.word().entries().iter().enumerate() {
        let slot = &mut first[v as usize];
        if *slot == 0 {
            *slot = i + 1;
        } else {
            arcs.push(Arc {
                left: *slot,
                right: i + 1,
                label: v,
            });
        }
    }
    arcs.sort_by_key(|a| a.left);
    let m = LabeledMatching { arcs };
    if !m.is_nonnesting() {
        return Err(Error::Internal(format!("canon word {w} produced a nesting")));
    }
    Ok(m)
}
