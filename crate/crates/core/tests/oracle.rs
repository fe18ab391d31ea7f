//! Brute-force oracles, written without the library's enumerators, compared
//! against the library's polynomial families.

use std::collections::BTreeMap;

use canonlab::bijections::find_joint_distribution_witness;
use canonlab::families;
use canonlab::tableaux::{collect_tableaux, hook_length_count};
use canonlab::{BivariatePolynomial, Config, Permutation, Strategy};
use num_bigint::BigInt;

/// Every arrangement of the multiset `{1^k, ..., n^k}`, by recursion on counts.
fn multiset_words(n: usize, k: usize) -> Vec<Vec<u32>> {
    fn go(counts: &mut [usize], buf: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if counts.iter().all(|&c| c == 0) {
            out.push(buf.clone());
            return;
        }
        for v in 0..counts.len() {
            if counts[v] > 0 {
                counts[v] -= 1;
                buf.push(v as u32 + 1);
                go(counts, buf, out);
                buf.pop();
                counts[v] += 1;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut vec![k; n], &mut Vec::new(), &mut out);
    out
}

/// The `j`-th voice: the `j`-th-from-left copy of each value, in order of position.
fn voices_agree(w: &[u32], n: usize, k: usize) -> bool {
    let mut seen = vec![0usize; n + 1];
    let mut voices = vec![Vec::new(); k];
    for &v in w {
        voices[seen[v as usize]].push(v);
        seen[v as usize] += 1;
    }
    voices.windows(2).all(|p| p[0] == p[1])
}

fn ballot(w: &[u32], n: usize) -> bool {
    let mut counts = vec![0usize; n + 2];
    w.iter().all(|&r| {
        counts[r as usize] += 1;
        r == 1 || counts[r as usize] <= counts[r as usize - 1]
    })
}

fn des(w: &[u32]) -> usize {
    w.windows(2).filter(|p| p[0] > p[1]).count()
}

fn plat(w: &[u32]) -> usize {
    w.windows(2).filter(|p| p[0] == p[1]).count()
}

fn poly_of(pairs: impl Iterator<Item = (usize, usize)>) -> BivariatePolynomial {
    let mut p = BivariatePolynomial::zero();
    for (a, b) in pairs {
        p.add_term(BigInt::from(1), a as u32, b as u32);
    }
    p
}

const SMALL: [(usize, usize); 9] = [(1, 1), (1, 3), (2, 2), (2, 3), (3, 2), (3, 3), (4, 2), (2, 4), (3, 1)];

#[test]
fn canon_poly_matches_brute_force() {
    let cfg = Config::default();
    for (n, k) in SMALL {
        let words = multiset_words(n, k);
        let brute = poly_of(
            words
                .iter()
                .filter(|w| voices_agree(w, n, k))
                .map(|w| (des(w), plat(w))),
        );
        assert_eq!(families::canon_poly(n, k, &cfg).unwrap(), brute, "n={n} k={k}");
    }
}

#[test]
fn canon_poly_sigma_matches_brute_force() {
    let cfg = Config::default();
    for (n, k) in [(3, 2), (3, 3), (2, 3)] {
        let words = multiset_words(n, k);
        for sigma in canonlab::words::enumerate_permutations(n).unwrap() {
            let brute = poly_of(
                words
                    .iter()
                    .filter(|w| voices_agree(w, n, k))
                    .filter(|w| {
                        let first: Vec<u32> = {
                            let mut seen = vec![false; n + 1];
                            w.iter()
                                .copied()
                                .filter(|&v| !std::mem::replace(&mut seen[v as usize], true))
                                .collect()
                        };
                        first == sigma.entries()
                    })
                    .map(|w| (des(w), plat(w))),
            );
            assert_eq!(families::canon_poly_sigma(n, k, &sigma, &cfg).unwrap(), brute);
        }
    }
}

#[test]
fn tableau_families_match_ballot_filter() {
    let cfg = Config::default();
    for (n, k) in SMALL.iter().copied().chain([(4, 3), (3, 4), (5, 2)]) {
        let ballots: Vec<Vec<u32>> = multiset_words(n, k).into_iter().filter(|w| ballot(w, n)).collect();
        assert_eq!(BigInt::from(ballots.len()), hook_length_count(n, k).into());
        let asc_poly = poly_of(ballots.iter().map(|w| (des(w), plat(w))));
        assert_eq!(families::gen_narayana(n, k, &cfg).unwrap(), asc_poly, "n={n} k={k}");
        let des_poly = poly_of(
            ballots
                .iter()
                .map(|w| (w.windows(2).filter(|p| p[0] < p[1]).count(), plat(w))),
        );
        assert_eq!(families::tableau_des_polynomial(n, k, &cfg).unwrap(), des_poly);
        let listed: Vec<Vec<u32>> = collect_tableaux(n, k, 20, Strategy::Parallel)
            .unwrap()
            .into_iter()
            .map(|t| t.into_word())
            .collect();
        assert_eq!(listed, ballots);
    }
}

/// `A(n, d) = (d + 1) A(n-1, d) + (n - d) A(n-1, d-1)`.
#[test]
fn eulerian_matches_recurrence() {
    let cfg = Config::default();
    let mut row = vec![BigInt::from(1)];
    for n in 1..=9usize {
        if n > 1 {
            let mut next = vec![BigInt::from(0); n];
            for d in 0..n {
                let keep = row.get(d).cloned().unwrap_or_default() * BigInt::from(d + 1);
                let bump = if d > 0 { row[d - 1].clone() * BigInt::from(n - d) } else { BigInt::from(0) };
                next[d] = keep + bump;
            }
            row = next;
        }
        let mut expected = BivariatePolynomial::zero();
        for (d, c) in row.iter().enumerate() {
            expected.add_term(c.clone(), d as u32, 0);
        }
        assert_eq!(families::eulerian(n, &cfg).unwrap(), expected, "n={n}");
    }
}

fn binomial(n: u64, r: u64) -> BigInt {
    (0..r).fold(BigInt::from(1), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// Paths are counted by total peaks (high plus low) with the Narayana numbers
/// `(1/n) C(n, j) C(n, j-1)`.
#[test]
fn narayana_dyck_peak_counts() {
    for n in 1..=8u64 {
        let p = families::narayana_dyck(n as usize).unwrap();
        let mut by_peaks: BTreeMap<u64, BigInt> = BTreeMap::new();
        for ((a, b), c) in p.terms() {
            *by_peaks.entry(u64::from(a + b)).or_default() += c;
        }
        let expected: BTreeMap<u64, BigInt> = (1..=n)
            .map(|j| (j, binomial(n, j) * binomial(n, j - 1) / BigInt::from(n)))
            .collect();
        assert_eq!(by_peaks, expected, "n={n}");
    }
}

#[test]
fn closed_form_matches_ballot_filter() {
    for (n, k) in SMALL.iter().copied().chain([(4, 3), (5, 2), (2, 5)]) {
        let ballots: Vec<Vec<u32>> = multiset_words(n, k).into_iter().filter(|w| ballot(w, n)).collect();
        for h in 0..=(n - 1) * (k - 1) {
            let brute = ballots.iter().filter(|w| des(w) == h).count();
            assert_eq!(families::closed_form_count(n, k, h).unwrap(), BigInt::from(brute), "n={n} k={k} h={h}");
        }
    }
}

/// The smallest shape on which `(Des_sigma, plat)` and `(Des_tau, plat)`
/// are not equidistributed although `Des(sigma) = Des(tau)`.
#[test]
fn joint_distribution_witness_for_three_by_three() {
    let (n, k) = (3, 3);
    let sigma: Permutation = "1 3 2".parse().unwrap();
    let tau: Permutation = "2 3 1".parse().unwrap();
    assert_eq!(sigma.descent_set(), tau.descent_set());
    let key = |w: &[u32], p: &Permutation| -> (Vec<usize>, usize) {
        let s = p.entries();
        let set = (1..w.len())
            .filter(|&i| s[w[i - 1] as usize - 1] > s[w[i] as usize - 1])
            .collect();
        (set, plat(w))
    };
    let ballots: Vec<Vec<u32>> = multiset_words(n, k).into_iter().filter(|w| ballot(w, n)).collect();
    let target = (vec![2, 3, 6, 8], 1);
    assert_eq!(ballots.iter().filter(|w| key(w, &sigma) == target).count(), 1);
    assert_eq!(ballots.iter().filter(|w| key(w, &tau) == target).count(), 0);

    let syt = collect_tableaux(n, k, 20, Strategy::Sequential).unwrap();
    let w = find_joint_distribution_witness(&syt, n, Strategy::Parallel).unwrap().unwrap();
    assert_eq!((w.sigma, w.tau), (sigma, tau));
    assert_eq!((w.des_set.elements().to_vec(), w.plat), target);
    assert_eq!((w.count_sigma, w.count_tau), (1, 0));

    for (n, k) in [(2, 2), (3, 2), (4, 2), (5, 2), (2, 3)] {
        let syt = collect_tableaux(n, k, 20, Strategy::Sequential).unwrap();
        assert!(find_joint_distribution_witness(&syt, n, Strategy::Parallel).unwrap().is_none(), "n={n} k={k}");
    }
}
