//! Statistic-carrying bijections on `SYT(k^n)`, all acting on tableau words.
//!
//! * [`row_swap`] (`f_rs`) and [`cyclic_row_swap`] (`F_rs`) permute letters
//!   inside maximal blocks over two non-adjacent rows `{r, s}`.
//! * [`descent_removal`] (`g_lm`) re-interleaves the subsequences of rows
//!   `X = [1, l]`, `Y = (l, m]` and `Z = (m, n]`.
//! * [`sigma_to_layered`], [`descent_set_removal`] and [`sigma_to_identity`]
//!   compose them along a transposition schedule and a descent-set chain.
//!
//! Every produced word is re-validated against the ballot condition.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::par::{self, Strategy};
use crate::tableaux::{check_ballot, RectTableau};
use crate::words::{self, enumerate_permutations, IndexSet, Permutation};

/// A maximal run of a word whose letters all lie in a two-letter alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Run {
    /// 1-indexed, inclusive.
    pub start: usize,
    /// 1-indexed, inclusive.
    pub end: usize,
    /// Both letters occur in the run.
    pub mixed: bool,
}

/// Maximal runs of a host word over a designated two-letter alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    pub runs: Vec<Run>,
}

impl BlockDecomposition {
    pub fn new(word: &[u32], a: u32, b: u32) -> Self {
        let mut runs = Vec::new();
        let mut i = 0;
        while i < word.len() {
            if word[i] != a && word[i] != b {
                i += 1;
                continue;
            }
            let start = i;
            while i < word.len() && (word[i] == a || word[i] == b) {
                i += 1;
            }
            let mixed = word[start..i].iter().any(|&c| c != word[start]);
            runs.push(Run {
                start: start + 1,
                end: i,
                mixed,
            });
        }
        BlockDecomposition { runs }
    }
}

/// The word over `{x, y, z}` recording which of `X`, `Y`, `Z` each row lies in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplifiedWord(Vec<Letter>);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Letter {
    X,
    Y,
    Z,
}

impl SimplifiedWord {
    pub fn new(word: &[u32], l: usize, m: usize) -> Self {
        SimplifiedWord(
            word.iter()
                .map(|&r| {
                    let r = r as usize;
                    if r <= l {
                        Letter::X
                    } else if r <= m {
                        Letter::Y
                    } else {
                        Letter::Z
                    }
                })
                .collect(),
        )
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }
}

impl fmt::Display for SimplifiedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            f.write_str(match l {
                Letter::X => "x",
                Letter::Y => "y",
                Letter::Z => "z",
            })?;
        }
        Ok(())
    }
}

/// Rewrites a two-letter block: unchanged if it starts and ends with the
/// same letter, otherwise each consecutive pair of runs `p^a q^b` becomes `q^b p^a`.
fn swap_run_pairs<T: Copy + PartialEq>(block: &mut [T]) {
    let len = block.len();
    if len < 2 || block[0] == block[len - 1] {
        return;
    }
    let mut runs: Vec<(T, usize)> = Vec::new();
    for &c in block.iter() {
        match runs.last_mut() {
            Some((letter, count)) if *letter == c => *count += 1,
            _ => runs.push((c, 1)),
        }
    }
    debug_assert!(runs.len() % 2 == 0);
    let mut out = Vec::with_capacity(len);
    for pair in runs.chunks(2) {
        for &(letter, count) in [pair[1], pair[0]].iter() {
            out.extend(std::iter::repeat(letter).take(count));
        }
    }
    block.copy_from_slice(&out);
}

/// Cyclic rewrite of a block over `{r, s}`: cut at every `s` followed by `r`
/// (reading the block cyclically); each cyclic subblock `r^a s^b` becomes
/// `s^b r^a` in the same positions.
fn rotate_subblocks(block: &mut [u32], r: u32, s: u32) {
    let len = block.len();
    if !(block.contains(&r) && block.contains(&s)) {
        return;
    }
    let cuts: Vec<usize> = (0..len)
        .filter(|&c| block[c] == s && block[(c + 1) % len] == r)
        .collect();
    let orig = block.to_vec();
    for (idx, &cut) in cuts.iter().enumerate() {
        let next = cuts[(idx + 1) % cuts.len()];
        let span = if next > cut { next - cut } else { next + len - cut };
        let positions: Vec<usize> = (1..=span).map(|d| (cut + d) % len).collect();
        let a = positions.iter().filter(|&&p| orig[p] == r).count();
        for (i, &p) in positions.iter().enumerate() {
            block[p] = if i < span - a { s } else { r };
        }
    }
}

fn check_rows(t: &RectTableau, r: usize, s: usize) -> Result<()> {
    let n = t.n();
    for row in [r, s] {
        if row == 0 || row > n {
            return Err(Error::InvalidParameter(format!(
                "row index {row} outside [1, {n}]"
            )));
        }
    }
    if r.abs_diff(s) <= 1 {
        return Err(Error::AdjacentRows { r, s });
    }
    Ok(())
}

fn rewrite_blocks(word: &mut [u32], r: u32, s: u32, rewrite: impl Fn(&mut [u32])) {
    for run in BlockDecomposition::new(word, r, s).runs {
        if run.mixed {
            rewrite(&mut word[run.start - 1..run.end]);
        }
    }
}

fn revalidated(t: &RectTableau, word: Vec<u32>, what: &str) -> Result<RectTableau> {
    check_ballot(&word, t.n())
        .map_err(|e| Error::Internal(format!("{what} produced an invalid tableau word: {e}")))?;
    Ok(RectTableau::from_word_unchecked(t.n(), t.k(), word))
}

/// `f_rs`: pairwise run swap inside every maximal `{r, s}`-block. An involution.
pub fn row_swap(t: &RectTableau, r: usize, s: usize) -> Result<RectTableau> {
    check_rows(t, r, s)?;
    let mut word = t.word().to_vec();
    rewrite_blocks(&mut word, r as u32, s as u32, swap_run_pairs);
    revalidated(t, word, "f_rs")
}

/// `F_rs`: cyclic subblock rotation inside every maximal `{r, s}`-block.
/// Its inverse is `cyclic_row_swap(_, s, r)`.
pub fn cyclic_row_swap(t: &RectTableau, r: usize, s: usize) -> Result<RectTableau> {
    check_rows(t, r, s)?;
    let mut word = t.word().to_vec();
    let (rr, ss) = (r as u32, s as u32);
    rewrite_blocks(&mut word, rr, ss, |b| rotate_subblocks(b, rr, ss));
    revalidated(t, word, "F_rs")
}

/// `g_lm`: applies the run-pair swap to every maximal `{x, z}`-block of the
/// simplified word, keeping the `X`, `Y` and `Z` subsequences intact.
pub fn descent_removal(t: &RectTableau, l: usize, m: usize) -> Result<RectTableau> {
    if !(l < m && m <= t.n()) {
        return Err(Error::InvalidParameter(format!(
            "descent removal needs 0 <= l < m <= n, got l={l}, m={m}, n={}",
            t.n()
        )));
    }
    let word = t.word();
    let mut simplified = SimplifiedWord::new(word, l, m).0;
    let mut i = 0;
    while i < simplified.len() {
        if simplified[i] == Letter::Y {
            i += 1;
            continue;
        }
        let start = i;
        while i < simplified.len() && simplified[i] != Letter::Y {
            i += 1;
        }
        swap_run_pairs(&mut simplified[start..i]);
    }
    let class = |r: u32| SimplifiedWord::new(&[r], l, m).0[0];
    let mut queues: HashMap<Letter, std::vec::IntoIter<u32>> = [Letter::X, Letter::Y, Letter::Z]
        .into_iter()
        .map(|c| {
            let sub: Vec<u32> = word.iter().copied().filter(|&r| class(r) == c).collect();
            (c, sub.into_iter())
        })
        .collect();
    let out = simplified
        .iter()
        .map(|c| queues.get_mut(c).and_then(Iterator::next).expect("letter counts preserved"))
        .collect();
    revalidated(t, out, "g_lm")
}

/// Pairs `(l, m)` of the chain for `set = {i_1 < ... < i_d}` in application order:
/// `(i_{d-1}, i_d), ..., (i_1, i_2), (0, i_1)`.
pub fn removal_chain(set: &IndexSet) -> Vec<(usize, usize)> {
    let mut chain: Vec<(usize, usize)> = std::iter::once(0)
        .chain(set.elements().iter().copied())
        .collect::<Vec<_>>()
        .windows(2)
        .map(|p| (p[0], p[1]))
        .collect();
    chain.reverse();
    chain
}

/// One applied elementary map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub step: String,
    pub params: Vec<usize>,
    pub before: Vec<u32>,
    pub after: Vec<u32>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Trace {
    pub steps: Vec<TraceStep>,
}

impl Trace {
    pub fn step_names(&self) -> Vec<&str> {
        self.steps.iter().map(|s| s.step.as_str()).collect()
    }

    /// One JSON object per line.
    pub fn to_json_lines(&self) -> String {
        self.steps
            .iter()
            .map(|s| serde_json::to_string(s).expect("trace steps serialize"))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

fn step_name(letter: &str, a: usize, b: usize) -> String {
    if a < 10 && b < 10 {
        format!("{letter}_{a}{b}")
    } else {
        format!("{letter}_{a},{b}")
    }
}

/// The elementary and composite maps, with parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bijection {
    RowSwap { r: usize, s: usize },
    CyclicRowSwap { r: usize, s: usize },
    DescentRemoval { l: usize, m: usize },
    DescentSetRemoval(IndexSet),
    SigmaToLayered(Permutation),
    SigmaToLayeredCyclic(Permutation),
    SigmaToIdentity(Permutation),
}

impl Bijection {
    pub fn apply(&self, t: &RectTableau) -> Result<RectTableau> {
        Ok(self.apply_traced(t)?.0)
    }

    pub fn apply_traced(&self, t: &RectTableau) -> Result<(RectTableau, Trace)> {
        let mut trace = Trace::default();
        let mut cur = t.clone();
        let mut record = |cur: &mut RectTableau, name: String, params: Vec<usize>, next: RectTableau| {
            trace.steps.push(TraceStep {
                step: name,
                params,
                before: cur.word().to_vec(),
                after: next.word().to_vec(),
            });
            *cur = next;
        };
        match self {
            Bijection::RowSwap { r, s } => {
                let next = row_swap(&cur, *r, *s)?;
                record(&mut cur, step_name("f", *r, *s), vec![*r, *s], next);
            }
            Bijection::CyclicRowSwap { r, s } => {
                let next = cyclic_row_swap(&cur, *r, *s)?;
                record(&mut cur, step_name("F", *r, *s), vec![*r, *s], next);
            }
            Bijection::DescentRemoval { l, m } => {
                let next = descent_removal(&cur, *l, *m)?;
                record(&mut cur, step_name("g", *l, *m), vec![*l, *m], next);
            }
            Bijection::DescentSetRemoval(set) => {
                check_set(&cur, set)?;
                for (l, m) in removal_chain(set) {
                    let next = descent_removal(&cur, l, m)?;
                    record(&mut cur, step_name("g", l, m), vec![l, m], next);
                }
            }
            Bijection::SigmaToLayered(sigma) | Bijection::SigmaToLayeredCyclic(sigma) => {
                check_sigma(&cur, sigma)?;
                let cyclic = matches!(self, Bijection::SigmaToLayeredCyclic(_));
                for (r, s) in words::transposition_schedule(sigma)? {
                    let (next, letter) = if cyclic {
                        (cyclic_row_swap(&cur, r, s)?, "F")
                    } else {
                        (row_swap(&cur, r, s)?, "f")
                    };
                    record(&mut cur, step_name(letter, r, s), vec![r, s], next);
                }
            }
            Bijection::SigmaToIdentity(sigma) => {
                check_sigma(&cur, sigma)?;
                for (r, s) in words::transposition_schedule(sigma)? {
                    let next = row_swap(&cur, r, s)?;
                    record(&mut cur, step_name("f", r, s), vec![r, s], next);
                }
                for (l, m) in removal_chain(&sigma.descent_set()) {
                    let next = descent_removal(&cur, l, m)?;
                    record(&mut cur, step_name("g", l, m), vec![l, m], next);
                }
            }
        }
        Ok((cur, trace))
    }
}

fn check_sigma(t: &RectTableau, sigma: &Permutation) -> Result<()> {
    if sigma.len() != t.n() {
        return Err(Error::LengthMismatch {
            expected: t.n(),
            actual: sigma.len(),
        });
    }
    Ok(())
}

fn check_set(t: &RectTableau, set: &IndexSet) -> Result<()> {
    set.check_within(t.n().saturating_sub(1))
}

/// `f_sigma`: row swaps along the transposition schedule of `sigma`.
pub fn sigma_to_layered(t: &RectTableau, sigma: &Permutation) -> Result<RectTableau> {
    Bijection::SigmaToLayered(sigma.clone()).apply(t)
}

/// `F_sigma`: cyclic row swaps along the transposition schedule of `sigma`.
pub fn sigma_to_layered_cyclic(t: &RectTableau, sigma: &Permutation) -> Result<RectTableau> {
    Bijection::SigmaToLayeredCyclic(sigma.clone()).apply(t)
}

/// `f_sigma^{-1}`: the schedule undone in reverse order (each `f_rs` is an involution).
pub fn layered_to_sigma(t: &RectTableau, sigma: &Permutation) -> Result<RectTableau> {
    check_sigma(t, sigma)?;
    let mut cur = t.clone();
    for (r, s) in words::transposition_schedule(sigma)?.into_iter().rev() {
        cur = row_swap(&cur, r, s)?;
    }
    Ok(cur)
}

/// `F_sigma^{-1}`: each `F_rs` undone by `F_sr`, in reverse order.
pub fn layered_to_sigma_cyclic(t: &RectTableau, sigma: &Permutation) -> Result<RectTableau> {
    check_sigma(t, sigma)?;
    let mut cur = t.clone();
    for (r, s) in words::transposition_schedule(sigma)?.into_iter().rev() {
        cur = cyclic_row_swap(&cur, s, r)?;
    }
    Ok(cur)
}

/// `g_S`.
pub fn descent_set_removal(t: &RectTableau, set: &IndexSet) -> Result<RectTableau> {
    Bijection::DescentSetRemoval(set.clone()).apply(t)
}

/// `g_S^{-1}`: the chain applied in the opposite order.
pub fn descent_set_restoration(t: &RectTableau, set: &IndexSet) -> Result<RectTableau> {
    check_set(t, set)?;
    let mut cur = t.clone();
    for (l, m) in removal_chain(set).into_iter().rev() {
        cur = descent_removal(&cur, l, m)?;
    }
    Ok(cur)
}

/// `phi_sigma = g_{Des(sigma)} o f_sigma`, carrying `(des_sigma, plat)` to
/// `(asc + des(sigma), plat)`.
pub fn sigma_to_identity(t: &RectTableau, sigma: &Permutation) -> Result<RectTableau> {
    Bijection::SigmaToIdentity(sigma.clone()).apply(t)
}

/// `phi_sigma^{-1}`.
pub fn identity_to_sigma(t: &RectTableau, sigma: &Permutation) -> Result<RectTableau> {
    let layered = descent_set_restoration(t, &sigma.descent_set())?;
    layered_to_sigma(&layered, sigma)
}

/// Witness that `(Des_sigma, plat)` and `(Des_tau, plat)` differ in distribution
/// although `Des(sigma) = Des(tau)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JointDistributionWitness {
    pub sigma: Permutation,
    pub tau: Permutation,
    pub des_set: IndexSet,
    pub plat: usize,
    pub count_sigma: usize,
    pub count_tau: usize,
}

/// Searches pairs with equal descent sets, in lexicographic order, for one on
/// which the joint statistic `(Des_sigma, plat)` is not equidistributed.
pub fn find_joint_distribution_witness(
    tableaux: &[RectTableau],
    n: usize,
    strategy: Strategy,
) -> Result<Option<JointDistributionWitness>> {
    let perms: Vec<Permutation> = enumerate_permutations(n)?.collect();
    let histograms: Vec<BTreeMap<(IndexSet, usize), usize>> =
        par::map_collect(strategy, &perms, |sigma| {
            let mut h = BTreeMap::new();
            for t in tableaux {
                let key = (t.des_sigma_set(sigma).expect("length checked"), t.plat());
                *h.entry(key).or_insert(0) += 1;
            }
            h
        });
    for (i, sigma) in perms.iter().enumerate() {
        for (j, tau) in perms.iter().enumerate().skip(i + 1) {
            if sigma.descent_set() != tau.descent_set() {
                continue;
            }
            let (hs, ht) = (&histograms[i], &histograms[j]);
            let diff = hs
                .iter()
                .map(|(key, &c)| (key, c, ht.get(key).copied().unwrap_or(0)))
                .chain(
                    ht.iter()
                        .filter(|(key, _)| !hs.contains_key(*key))
                        .map(|(key, &c)| (key, 0, c)),
                )
                .find(|(_, a, b)| a != b);
            if let Some(((set, plat), a, b)) = diff {
                return Ok(Some(JointDistributionWitness {
                    sigma: sigma.clone(),
                    tau: tau.clone(),
                    des_set: set.clone(),
                    plat: *plat,
                    count_sigma: a,
                    count_tau: b,
                }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::reverse_layered;

    fn digits(s: &str) -> Vec<u32> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| c.to_digit(10).unwrap())
            .collect()
    }

    fn grid(s: &str) -> RectTableau {
        RectTableau::parse_grid(s).unwrap()
    }

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn block_rules_on_mixed_block() {
        // s r r s s s r r with r = 1, s = 2
        let mut b = digits("21122211");
        swap_run_pairs(&mut b);
        assert_eq!(b, digits("11211222"));
        let mut b = digits("21122211");
        rotate_subblocks(&mut b, 1, 2);
        assert_eq!(b, digits("12221121"));
        let mut single = digits("111");
        rotate_subblocks(&mut single, 1, 3);
        assert_eq!(single, digits("111"));
    }

    #[test]
    fn block_decomposition_covers_runs() {
        let w = digits("121314221311324233424344");
        let d = BlockDecomposition::new(&w, 1, 3);
        let spans: Vec<_> = d.runs.iter().map(|r| (r.start, r.end, r.mixed)).collect();
        assert_eq!(
            spans,
            vec![
                (1, 1, false),
                (3, 5, true),
                (9, 13, true),
                (17, 18, false),
                (22, 22, false)
            ]
        );
    }

    fn swap_example() -> RectTableau {
        grid("1 3 5 9 11 12/2 7 8 14 16 20/4 10 13 17 18 22/6 15 19 21 23 24")
    }

    #[test]
    fn row_swaps_on_example() {
        let t = swap_example();
        assert_eq!(t.word(), digits("12 131 422 13113 242 33 424 3 44"));
        let f = row_swap(&t, 1, 3).unwrap();
        assert_eq!(f.word(), digits("12 131 422 31311 242 33 424 3 44"));
        assert_eq!(
            f,
            grid("1 3 5 10 12 13/2 7 8 14 16 20/4 9 11 17 18 22/6 15 19 21 23 24")
        );
        let big = cyclic_row_swap(&t, 1, 3).unwrap();
        assert_eq!(big.word(), digits("12 113 422 31311 242 33 424 3 44"));
        assert_eq!(
            big,
            grid("1 3 4 10 12 13/2 7 8 14 16 20/5 9 11 17 18 22/6 15 19 21 23 24")
        );
        let (sigma, tau) = (perm("2 4 3 1"), perm("3 4 2 1"));
        assert_eq!(t.des_sigma(&sigma), 10);
        assert_eq!(f.des_sigma(&tau), 10);
        assert_eq!((t.plat(), f.plat()), (4, 4));
        assert_eq!(
            t.des_sigma_set(&sigma).unwrap().to_string(),
            "{2,4,5,8,10,14,16,18,20,22}"
        );
        assert_eq!(t.des_sigma_set(&sigma).unwrap(), big.des_sigma_set(&tau).unwrap());
    }

    #[test]
    fn row_swap_rejects_adjacent_rows() {
        let t = swap_example();
        assert_eq!(row_swap(&t, 1, 2), Err(Error::AdjacentRows { r: 1, s: 2 }));
        assert_eq!(cyclic_row_swap(&t, 3, 3), Err(Error::AdjacentRows { r: 3, s: 3 }));
        assert!(row_swap(&t, 1, 5).is_err());
        let plain = RectTableau::row_reading(4, 3);
        assert_eq!(row_swap(&plain, 1, 3).unwrap(), plain);
    }

    fn removal_input() -> RectTableau {
        grid("1 5 10/2 8 15/3 11 18/4 13 19/6 14 21/7 16 22/9 17 23/12 20 24")
    }

    fn removal_output() -> RectTableau {
        grid("1 5 9/2 7 17/3 11 18/4 13 19/6 14 21/8 15 22/10 16 23/12 20 24")
    }

    #[test]
    fn descent_removal_example() {
        let t = removal_input();
        assert_eq!(
            SimplifiedWord::new(t.word(), 2, 5).to_string(),
            "xxyyxyzxzxyzyyxzzyyzyzzz"
        );
        let g = descent_removal(&t, 2, 5).unwrap();
        assert_eq!(
            SimplifiedWord::new(g.word(), 2, 5).to_string(),
            "xxyyxyxzxzyzyyzzxyyzyzzz"
        );
        assert_eq!(g, removal_output());
        let lambda = reverse_layered(8, &IndexSet::new(vec![2, 5])).unwrap();
        let lambda2 = reverse_layered(8, &IndexSet::new(vec![2])).unwrap();
        assert_eq!(lambda.to_string(), "7 8 4 5 6 1 2 3");
        assert_eq!(lambda2.to_string(), "7 8 1 2 3 4 5 6");
        assert_eq!(t.des_sigma(&lambda), 9);
        assert_eq!(g.des_sigma(&lambda2), 8);
        assert_eq!((t.plat(), g.plat()), (0, 0));
        assert_eq!(descent_removal(&g, 2, 5).unwrap(), t);
    }

    #[test]
    fn descent_removal_parameters() {
        let t = removal_input();
        assert_eq!(descent_removal(&t, 0, 5).unwrap(), t);
        assert!(descent_removal(&t, 5, 5).is_err());
        assert!(descent_removal(&t, 2, 9).is_err());
    }

    #[test]
    fn removal_chain_example() {
        let t = grid("1 5 10/2 8 15/3 11 17/4 13 18/6 14 20/7 16 22/9 19 23/12 21 24");
        let set = IndexSet::new(vec![2, 5, 6]);
        let (out, trace) = Bijection::DescentSetRemoval(set.clone())
            .apply_traced(&t)
            .unwrap();
        assert_eq!(trace.step_names(), vec!["g_56", "g_25", "g_02"]);
        assert_eq!(trace.steps[0].after, removal_input().word());
        assert_eq!(trace.steps[1].after, removal_output().word());
        assert_eq!(out, removal_output());
        let lambda = reverse_layered(8, &set).unwrap();
        assert_eq!(lambda.to_string(), "7 8 4 5 6 3 1 2");
        assert_eq!(t.des_sigma(&lambda), 10);
        assert_eq!(out.asc(), 7);
        assert_eq!((t.plat(), out.plat()), (0, 0));
        assert_eq!(descent_set_restoration(&out, &set).unwrap(), t);
        assert_eq!(descent_set_removal(&t, &IndexSet::empty()).unwrap(), t);
    }

    #[test]
    fn phi_example() {
        let t = grid("1 3 4 9/2 7 8 13/5 10 12 15/6 11 14 16");
        let sigma = perm("3 1 4 2");
        let (out, trace) = Bijection::SigmaToIdentity(sigma.clone())
            .apply_traced(&t)
            .unwrap();
        assert_eq!(trace.step_names(), vec!["f_13", "f_24", "g_13", "g_01"]);
        let after: Vec<RectTableau> = trace
            .steps
            .iter()
            .map(|s| RectTableau::from_word(4, 4, &s.after).unwrap())
            .collect();
        assert_eq!(after[0], grid("1 4 5 10/2 7 8 13/3 9 12 15/6 11 14 16"));
        assert_eq!(after[1], grid("1 4 5 10/2 6 7 14/3 9 12 15/8 11 13 16"));
        assert_eq!(sigma_to_layered(&t, &sigma).unwrap(), after[1]);
        assert_eq!(after[2], grid("1 4 5 11/2 6 7 14/3 9 12 15/8 10 13 16"));
        assert_eq!(out, grid("1 4 5 11/2 6 7 14/3 9 12 15/8 10 13 16"));
        assert_eq!(t.des_sigma(&sigma), 6);
        assert_eq!(out.asc(), 4);
        assert_eq!(sigma.des(), 2);
        assert_eq!((t.plat(), out.plat()), (2, 2));
        assert_eq!(identity_to_sigma(&out, &sigma).unwrap(), t);
    }

    #[test]
    fn identity_cases_have_empty_traces() {
        let t = grid("1 3 4 9/2 7 8 13/5 10 12 15/6 11 14 16");
        let (out, trace) = Bijection::SigmaToIdentity(Permutation::identity(4))
            .apply_traced(&t)
            .unwrap();
        assert_eq!(out, t);
        assert!(trace.steps.is_empty());
        let layered = perm("4 2 3 1");
        assert_eq!(sigma_to_layered(&t, &layered).unwrap(), t);
    }

    #[test]
    fn trace_json_lines() {
        let t = grid("1 3 4 9/2 7 8 13/5 10 12 15/6 11 14 16");
        let (_, trace) = Bijection::SigmaToIdentity(perm("3 1 4 2"))
            .apply_traced(&t)
            .unwrap();
        let lines: Vec<serde_json::Value> = trace
            .to_json_lines()
            .lines()
            .map(|l| serde_json::from_str(l).unwrap())
            .collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0]["step"], "f_13");
        assert_eq!(lines[3]["params"], serde_json::json!([0, 1]));
    }

    #[test]
    fn reverse_permutation_sends_des_to_shifted_asc() {
        let sigma = Permutation::decreasing(3);
        for t in crate::tableaux::enumerate_tableaux(3, 3).unwrap() {
            let out = sigma_to_identity(&t, &sigma).unwrap();
            assert_eq!(t.des(), out.asc() + 2);
            assert_eq!(t.plat(), out.plat());
        }
    }
}
