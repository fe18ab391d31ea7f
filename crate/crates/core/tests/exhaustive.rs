use std::collections::HashSet;

use canonlab::bijections::{cyclic_row_swap, descent_removal, row_swap};
use canonlab::tableaux::{
    collect_tableaux, dyck_to_syt2, enumerate_dyck_paths, enumerate_tableaux, hook_length_count,
    syt2_to_dyck,
};
use canonlab::{RectTableau, Strategy};
use num_bigint::BigUint;

fn shapes(max_cells: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=max_cells).flat_map(move |n| (1..=max_cells / n).map(move |k| (n, k)))
}

#[test]
fn enumeration_matches_hook_formula() {
    for (n, k) in shapes(18) {
        let count = enumerate_tableaux(n, k).unwrap().count();
        assert_eq!(BigUint::from(count), hook_length_count(n, k), "n={n} k={k}");
    }
}

#[test]
fn enumerations_agree_across_strategies() {
    for (n, k) in shapes(12) {
        let iter: Vec<RectTableau> = enumerate_tableaux(n, k).unwrap().collect();
        assert_eq!(collect_tableaux(n, k, 20, Strategy::Sequential).unwrap(), iter);
        assert_eq!(collect_tableaux(n, k, 20, Strategy::Parallel).unwrap(), iter);
    }
}

#[test]
fn elementary_maps_are_involutions() {
    for (n, k) in shapes(12) {
        let all = collect_tableaux(n, k, 20, Strategy::Parallel).unwrap();
        for r in 1..=n {
            for s in (1..=n).filter(|&s| s.abs_diff(r) > 1) {
                let mut images = HashSet::new();
                for t in &all {
                    let f = row_swap(t, r, s).unwrap();
                    assert_eq!(row_swap(&f, r, s).unwrap(), *t);
                    assert_eq!(row_swap(t, s, r).unwrap(), f);
                    let big_f = cyclic_row_swap(t, r, s).unwrap();
                    assert_eq!(cyclic_row_swap(&big_f, s, r).unwrap(), *t);
                    images.insert(big_f);
                }
                assert_eq!(images.len(), all.len());
            }
        }
        for m in 1..=n {
            for l in 0..m {
                for t in &all {
                    let g = descent_removal(t, l, m).unwrap();
                    assert_eq!(descent_removal(&g, l, m).unwrap(), *t);
                    if l == 0 {
                        assert_eq!(g, *t);
                    }
                }
            }
        }
    }
}

#[test]
fn dyck_paths_biject_with_two_row_tableaux() {
    for n in 1..=7 {
        let all = collect_tableaux(n, 2, 20, Strategy::Sequential).unwrap();
        let mut paths = HashSet::new();
        for t in &all {
            let p = syt2_to_dyck(t).unwrap();
            assert_eq!(dyck_to_syt2(&p), *t);
            assert_eq!(p.high_peaks(), t.asc());
            assert_eq!(p.low_peaks(), t.plat());
            paths.insert(p);
        }
        let listed: HashSet<_> = enumerate_dyck_paths(n).into_iter().collect();
        assert_eq!(paths, listed, "n={n}");
    }
}
