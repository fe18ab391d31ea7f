//! Words over the positive integers, permutations, descent and plateau sets,
//! reverse-layered permutations and the canon condition.
//!
//! Positions are 1-indexed everywhere: `descent_set` of a word of length `m`
//! is a subset of `{1, ..., m-1}`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Word(Vec<u32>);

impl Word {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if let Some(position) = entries.iter().position(|&e| e == 0) {
            return Err(Error::NonPositiveEntry {
                position: position + 1,
            });
        }
        Ok(Word(entries))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }

    pub fn descent_set(&self) -> IndexSet {
        descent_set(&self.0)
    }

    pub fn plateau_set(&self) -> IndexSet {
        plateau_set(&self.0)
    }
}

impl TryFrom<Vec<u32>> for Word {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Word::new(v)
    }
}

impl From<Word> for Vec<u32> {
    fn from(w: Word) -> Self {
        w.0
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_spaced(f, &self.0)
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Word::new(parse_entries(s)?)
    }
}

/// A permutation of `1..=n` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        let n = entries.len();
        let mut seen = vec![false; n + 1];
        for &e in &entries {
            let v = e as usize;
            if v == 0 || v > n {
                return Err(Error::NotPermutation {
                    n,
                    reason: format!("entry {e} out of range"),
                });
            }
            if seen[v] {
                return Err(Error::NotPermutation {
                    n,
                    reason: format!("entry {e} repeated"),
                });
            }
            seen[v] = true;
        }
        Ok(Permutation(entries))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u32).collect())
    }

    /// `n ... 2 1`
    pub fn decreasing(n: usize) -> Self {
        Permutation((1..=n as u32).rev().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// Entry at 1-indexed position `i`.
    pub fn at(&self, i: usize) -> u32 {
        self.0[i - 1]
    }

    /// 1-indexed position of `value`.
    pub fn position_of(&self, value: u32) -> usize {
        self.0
            .iter()
            .position(|&e| e == value)
            .map(|p| p + 1)
            .expect("value present in permutation")
    }

    pub fn descent_set(&self) -> IndexSet {
        descent_set(&self.0)
    }

    pub fn des(&self) -> usize {
        descent_count(&self.0)
    }

    pub fn reversed(&self) -> Permutation {
        Permutation(self.0.iter().rev().copied().collect())
    }

    pub fn inversions(&self) -> usize {
        let mut count = 0;
        for i in 0..self.0.len() {
            for j in i + 1..self.0.len() {
                if self.0[i] > self.0[j] {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn is_reverse_layered(&self) -> bool {
        *self == reverse_layered_unchecked(self.len(), &self.descent_set())
    }

    pub fn to_word(&self) -> Word {
        Word(self.0.clone())
    }
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_spaced(f, &self.0)
    }
}

impl FromStr for Permutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Permutation::new(parse_entries(s)?)
    }
}

/// A finite set of positive integers, kept sorted and deduplicated.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<usize>", into = "Vec<usize>")]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(mut elements: Vec<usize>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        IndexSet(elements)
    }

    pub fn empty() -> Self {
        IndexSet(Vec::new())
    }

    pub fn elements(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn max(&self) -> Option<usize> {
        self.0.last().copied()
    }

    /// Checks that every element lies in `[1, max]`.
    pub fn check_within(&self, max: usize) -> Result<()> {
        match self.0.iter().find(|&&i| i == 0 || i > max) {
            Some(&index) => Err(Error::IndexOutOfRange { index, max }),
            None => Ok(()),
        }
    }

    /// All subsets of `[1, max]`, in order of their bitmask.
    pub fn all_subsets(max: usize) -> impl Iterator<Item = IndexSet> {
        (0u64..1 << max).map(move |mask| {
            IndexSet((1..=max).filter(|i| mask >> (i - 1) & 1 == 1).collect())
        })
    }
}

impl FromIterator<usize> for IndexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        IndexSet::new(iter.into_iter().collect())
    }
}

impl From<Vec<usize>> for IndexSet {
    fn from(v: Vec<usize>) -> Self {
        IndexSet::new(v)
    }
}

impl From<IndexSet> for Vec<usize> {
    fn from(s: IndexSet) -> Self {
        s.0
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (idx, e) in self.0.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl FromStr for IndexSet {
    type Err = Error;
    /// Accepts `{2,4,7}`, `2,4,7` or `2 4 7`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim();
        let inner = inner
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .unwrap_or(inner);
        inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad set element {t:?}: {e}")))
            })
            .collect()
    }
}

pub(crate) fn write_spaced<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    for (idx, e) in items.iter().enumerate() {
        if idx > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{e}")?;
    }
    Ok(())
}

/// Parses whitespace-separated decimal integers.
pub fn parse_entries(s: &str) -> Result<Vec<u32>> {
    s.split_whitespace()
        .map(|t| {
            t.parse::<u32>()
                .map_err(|e| Error::Parse(format!("bad integer {t:?}: {e}")))
        })
        .collect()
}

pub fn descent_set(w: &[u32]) -> IndexSet {
    IndexSet(
        w.windows(2)
            .enumerate()
            .filter(|(_, p)| p[0] > p[1])
            .map(|(i, _)| i + 1)
            .collect(),
    )
}

pub fn plateau_set(w: &[u32]) -> IndexSet {
    IndexSet(
        w.windows(2)
            .enumerate()
            .filter(|(_, p)| p[0] == p[1])
            .map(|(i, _)| i + 1)
            .collect(),
    )
}

#[inline]
pub fn descent_count(w: &[u32]) -> usize {
    w.windows(2).filter(|p| p[0] > p[1]).count()
}

#[inline]
pub fn plateau_count(w: &[u32]) -> usize {
    w.windows(2).filter(|p| p[0] == p[1]).count()
}

/// Lexicographic stream over the permutations of `1..=n`.
#[derive(Clone, Debug)]
pub struct Permutations {
    current: Option<Vec<u32>>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let cur = self.current.take()?;
        let mut succ = cur.clone();
        if next_permutation(&mut succ) {
            self.current = Some(succ);
        }
        Some(Permutation(cur))
    }
}

pub fn enumerate_permutations(n: usize) -> Result<Permutations> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "permutation length n must be at least 1".into(),
        ));
    }
    Ok(Permutations {
        current: Some((1..=n as u32).collect()),
    })
}

/// Rearranges `v` into its lexicographic successor; returns false at the last one.
pub(crate) fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// The unique reverse-layered permutation of `[n]` with descent set `set`.
pub fn reverse_layered(n: usize, set: &IndexSet) -> Result<Permutation> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    set.check_within(n - 1)?;
    Ok(reverse_layered_unchecked(n, set))
}

fn reverse_layered_unchecked(n: usize, set: &IndexSet) -> Permutation {
    // Layer j covers positions (i_j, i_{j+1}] and holds n-i_{j+1}+1 ..= n-i_j.
    let mut cuts = Vec::with_capacity(set.len() + 2);
    cuts.push(0);
    cuts.extend_from_slice(set.elements());
    cuts.push(n);
    let mut entries = Vec::with_capacity(n);
    for pair in cuts.windows(2) {
        let (lo, hi) = (pair[0], pair[1]);
        entries.extend((n - hi + 1..=n - lo).map(|v| v as u32));
    }
    Permutation(entries)
}

/// The sequence of transpositions carrying `sigma` to the reverse-layered
/// permutation with the same descent set.
///
/// At each step `m` is the largest value whose position differs from its
/// position in the target `lambda`, `r` is the position of `m` in `lambda`,
/// and `s` is the position of `current[r] + 1` in the current permutation.
/// Pairs are returned in application order.
pub fn transposition_schedule(sigma: &Permutation) -> Result<Vec<(usize, usize)>> {
    let n = sigma.len();
    let lambda = reverse_layered_unchecked(n, &sigma.descent_set());
    let mut current = sigma.0.clone();
    let mut pos = vec![0usize; n + 1];
    for (i, &v) in current.iter().enumerate() {
        pos[v as usize] = i + 1;
    }
    let mut lambda_pos = vec![0usize; n + 1];
    for (i, &v) in lambda.0.iter().enumerate() {
        lambda_pos[v as usize] = i + 1;
    }
    let mut schedule = Vec::new();
    let mut inversions = sigma.inversions();
    while let Some(m) = (1..=n).rev().find(|&v| pos[v] != lambda_pos[v]) {
        let r = lambda_pos[m];
        let low = current[r - 1] as usize;
        if low == n {
            return Err(Error::Internal(format!(
                "transposition rule: entry at position {r} is {n}, no successor value"
            )));
        }
        let s = pos[low + 1];
        if r.abs_diff(s) <= 1 {
            return Err(Error::Internal(format!(
                "transposition rule produced adjacent positions ({r},{s}) on {}",
                Permutation(current.clone())
            )));
        }
        current.swap(r - 1, s - 1);
        pos[low] = s;
        pos[low + 1] = r;
        let next_inv = count_inversions(&current);
        if next_inv <= inversions || descent_set(&current) != sigma.descent_set() {
            return Err(Error::Internal(format!(
                "transposition ({r},{s}) did not preserve descents / increase inversions"
            )));
        }
        inversions = next_inv;
        schedule.push((r, s));
    }
    Ok(schedule)
}

fn count_inversions(v: &[u32]) -> usize {
    let mut c = 0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                c += 1;
            }
        }
    }
    c
}

/// Checks that `w` holds exactly `k` copies of each of `1..=n`.
pub fn check_multiset(w: &[u32], n: usize, k: usize) -> Result<()> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidParameter("n and k must be at least 1".into()));
    }
    if w.len() != n * k {
        return Err(Error::WrongMultiset {
            n,
            k,
            reason: format!("word has length {} instead of {}", w.len(), n * k),
        });
    }
    let mut counts = vec![0usize; n + 1];
    for &e in w {
        let v = e as usize;
        if v == 0 || v > n {
            return Err(Error::WrongMultiset {
                n,
                k,
                reason: format!("entry {e} out of range"),
            });
        }
        counts[v] += 1;
    }
    if let Some(v) = (1..=n).find(|&v| counts[v] != k) {
        return Err(Error::WrongMultiset {
            n,
            k,
            reason: format!("value {v} occurs {} times", counts[v]),
        });
    }
    Ok(())
}

/// The subsequence of `j`-th-from-left copies of each value.
pub fn voice(w: &[u32], j: usize, n: usize, k: usize) -> Result<Word> {
    check_multiset(w, n, k)?;
    if j == 0 || j > k {
        return Err(Error::InvalidParameter(format!(
            "voice index {j} outside [1, {k}]"
        )));
    }
    Ok(Word(voice_unchecked(w, j, n)))
}

fn voice_unchecked(w: &[u32], j: usize, n: usize) -> Vec<u32> {
    let mut seen = vec![0usize; n + 1];
    let mut out = Vec::with_capacity(n);
    for &e in w {
        seen[e as usize] += 1;
        if seen[e as usize] == j {
            out.push(e);
        }
    }
    out
}

/// Returns the common voice if all `k` voices agree.
pub fn is_canon(w: &[u32], n: usize, k: usize) -> Result<Option<Permutation>> {
    Ok(canon_voice(w, n, k)?.ok())
}

/// Like [`is_canon`], but reports which voices disagree.
pub(crate) fn canon_voice(w: &[u32], n: usize, k: usize) -> Result<Result<Permutation>> {
    check_multiset(w, n, k)?;
    let first = voice_unchecked(w, 1, n);
    for j in 2..=k {
        let other = voice_unchecked(w, j, n);
        if other != first {
            return Ok(Err(Error::NotCanon {
                first: 1,
                first_voice: Word(first).to_string(),
                other: j,
                other_voice: Word(other).to_string(),
            }));
        }
    }
    Ok(Ok(Permutation(first)))
}

/// A canon permutation of the multiset `{1^k, ..., n^k}` together with its voice.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CanonWord {
    n: usize,
    k: usize,
    word: Word,
    voice: Permutation,
}

impl CanonWord {
    pub fn new(word: Word, n: usize, k: usize) -> Result<Self> {
        let voice = canon_voice(word.entries(), n, k)??;
        Ok(CanonWord { n, k, word, voice })
    }

    /// Infers `n` as the largest entry and `k` as `len / n`.
    pub fn infer(word: Word) -> Result<Self> {
        let n = word.entries().iter().copied().max().unwrap_or(0) as usize;
        if n == 0 || word.len() % n != 0 {
            return Err(Error::WrongMultiset {
                n,
                k: 0,
                reason: format!("length {} is not a multiple of the largest entry", word.len()),
            });
        }
        let k = word.len() / n;
        CanonWord::new(word, n, k)
    }

    pub(crate) fn from_parts(word: Word, n: usize, k: usize, voice: Permutation) -> Self {
        CanonWord { n, k, word, voice }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn voice(&self) -> &Permutation {
        &self.voice
    }
}

impl fmt::Display for CanonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.word.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn digits(s: &str) -> Vec<u32> {
        s.chars().map(|c| c.to_digit(10).unwrap()).collect()
    }

    fn set(v: &[usize]) -> IndexSet {
        IndexSet::new(v.to_vec())
    }

    fn perm(s: &str) -> Permutation {
        Permutation::new(digits(s)).unwrap()
    }

    #[test]
    fn descent_sets() {
        assert_eq!(
            descent_set(&digits("353513415421242")),
            set(&[2, 4, 7, 9, 10, 11, 14])
        );
        assert_eq!(descent_set(&[1, 2, 3, 4]), IndexSet::empty());
        assert_eq!(descent_set(&digits("3532521414")), set(&[2, 3, 5, 6, 8]));
    }

    #[test]
    fn plateau_sets() {
        assert_eq!(plateau_set(&digits("1122")), set(&[1, 3]));
        assert_eq!(plateau_set(&digits("353513415421242")), IndexSet::empty());
        assert_eq!(plateau_set(&[1]), IndexSet::empty());
    }

    #[test]
    fn permutations_in_lex_order() {
        let all: Vec<String> = enumerate_permutations(3)
            .unwrap()
            .map(|p| p.entries().iter().map(|d| d.to_string()).collect())
            .collect();
        assert_eq!(all, ["123", "132", "213", "231", "312", "321"]);
        assert_eq!(enumerate_permutations(1).unwrap().count(), 1);
        assert_eq!(enumerate_permutations(5).unwrap().count(), 120);
        assert!(enumerate_permutations(0).is_err());
    }

    #[test]
    fn reverse_layered_examples() {
        assert_eq!(reverse_layered(9, &set(&[3, 4, 7])).unwrap(), perm("789634512"));
        assert_eq!(reverse_layered(8, &set(&[2, 5, 6])).unwrap(), perm("78456312"));
        assert_eq!(reverse_layered(4, &IndexSet::empty()).unwrap(), perm("1234"));
        assert!(matches!(
            reverse_layered(4, &set(&[4])),
            Err(Error::IndexOutOfRange { index: 4, max: 3 })
        ));
    }

    #[test]
    fn reverse_layered_has_requested_descents() {
        for n in 1..=8 {
            for s in IndexSet::all_subsets(n - 1) {
                let lambda = reverse_layered(n, &s).unwrap();
                assert_eq!(lambda.descent_set(), s);
                assert!(lambda.is_reverse_layered());
            }
        }
    }

    #[test]
    fn schedule_examples() {
        assert_eq!(
            transposition_schedule(&perm("14235")).unwrap(),
            vec![(2, 5), (1, 3), (1, 4), (1, 5)]
        );
        assert_eq!(
            transposition_schedule(&perm("3142")).unwrap(),
            vec![(1, 3), (2, 4)]
        );
        assert!(transposition_schedule(&perm("4231")).unwrap().is_empty());
    }

    #[test]
    fn schedule_reaches_reverse_layered_for_all_small_permutations() {
        for n in 1..=7 {
            for sigma in enumerate_permutations(n).unwrap() {
                let schedule = transposition_schedule(&sigma).unwrap();
                let mut cur = sigma.entries().to_vec();
                for (r, s) in schedule {
                    assert!(r.abs_diff(s) > 1);
                    assert_eq!(cur[s - 1], cur[r - 1] + 1);
                    cur.swap(r - 1, s - 1);
                }
                let target = reverse_layered(n, &sigma.descent_set()).unwrap();
                assert_eq!(cur, target.entries());
            }
        }
    }

    #[test]
    fn voices() {
        let w = digits("351335212514424");
        assert_eq!(voice(&w, 2, 5, 3).unwrap().entries(), digits("35124"));
        let w = digits("3532521414");
        assert_eq!(voice(&w, 1, 5, 2).unwrap().entries(), digits("35214"));
        assert_eq!(voice(&digits("3142"), 1, 4, 1).unwrap().entries(), digits("3142"));
        assert!(voice(&digits("1123"), 1, 2, 2).is_err());
    }

    #[test]
    fn canon_examples() {
        assert_eq!(
            is_canon(&digits("351335212514424"), 5, 3).unwrap(),
            Some(perm("35124"))
        );
        assert_eq!(
            is_canon(&digits("3532521414"), 5, 2).unwrap(),
            Some(perm("35214"))
        );
        assert_eq!(is_canon(&digits("112221"), 2, 3).unwrap(), None);
        assert!(is_canon(&digits("11222"), 2, 3).is_err());
    }

    #[test]
    fn parsing_and_display() {
        let s: IndexSet = "{2,4,7}".parse().unwrap();
        assert_eq!(s.to_string(), "{2,4,7}");
        assert_eq!("{}".parse::<IndexSet>().unwrap(), IndexSet::empty());
        let p: Permutation = "3 1 4 2".parse().unwrap();
        assert_eq!(p.to_string(), "3 1 4 2");
        assert!("3 1 4 4".parse::<Permutation>().is_err());
        assert!("1 0 2".parse::<Word>().is_err());
    }
}
