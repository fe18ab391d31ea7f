//! The polynomial families: Eulerian, Narayana (Dyck paths), generalized
//! Narayana (tableaux), the closed-form generalized Narayana numbers, canon
//! polynomials, and the generating-function identities.
//!
//! Every family is computed by direct enumeration of its defining objects;
//! no family is derived from another.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::par;
use crate::poly::{BivariatePolynomial, Histogram, Rational, RationalPoly};
use crate::series::TruncatedSeries;
use crate::tableaux::{self, des_sigma_of_word, enumerate_dyck_paths};
use crate::words::{self, enumerate_permutations, next_permutation, Permutation};

/// Largest semilength accepted by [`narayana_dyck`].
pub const MAX_DYCK_N: usize = 12;

fn check_positive(n: usize, k: usize) -> Result<()> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidParameter("n and k must be at least 1".into()));
    }
    Ok(())
}

/// `A_n(t) = sum over S_n of t^des`, by enumeration.
pub fn eulerian(n: usize, cfg: &Config) -> Result<BivariatePolynomial> {
    check_positive(n, 1)?;
    if n > cfg.max_perm_n {
        return Err(Error::CapExceeded {
            what: "n",
            value: n,
            bound: cfg.max_perm_n,
        });
    }
    // one work unit per leading entry
    let leads: Vec<u32> = (1..=n as u32).collect();
    let hist = par::map_reduce(
        cfg.strategy,
        &leads,
        || Histogram::new(n, 1),
        |&lead| {
            let mut h = Histogram::new(n, 1);
            let mut p: Vec<u32> = std::iter::once(lead)
                .chain((1..=n as u32).filter(|&v| v != lead))
                .collect();
            loop {
                h.record(words::descent_count(&p), 0);
                if !next_permutation(&mut p) || p[0] != lead {
                    break;
                }
            }
            h
        },
        Histogram::merge,
    );
    Ok(BivariatePolynomial::from_histogram(&hist))
}

/// `N^_n(t, u)`: Dyck paths of semilength `n` by high peaks (`t`) and low peaks (`u`).
pub fn narayana_dyck(n: usize) -> Result<BivariatePolynomial> {
    check_positive(n, 1)?;
    if n > MAX_DYCK_N {
        return Err(Error::CapExceeded {
            what: "n",
            value: n,
            bound: MAX_DYCK_N,
        });
    }
    let mut p = BivariatePolynomial::zero();
    for path in enumerate_dyck_paths(n) {
        p.add_term(BigInt::one(), path.high_peaks() as u32, path.low_peaks() as u32);
    }
    Ok(p)
}

fn tableau_histogram(
    n: usize,
    k: usize,
    cfg: &Config,
    stat: impl Fn(&[u32]) -> (usize, usize) + Sync + Send,
) -> Result<Histogram> {
    check_positive(n, k)?;
    let cells = n * k;
    tableaux::fold_tableau_words(
        n,
        k,
        cfg.max_cells,
        cfg.strategy,
        || Histogram::new(cells, cells),
        |h, w| {
            let (a, b) = stat(w);
            h.record(a, b);
        },
        Histogram::merge,
    )
}

/// `N_{n,k}(t, u) = sum over SYT(k^n) of t^asc u^plat`.
pub fn gen_narayana(n: usize, k: usize, cfg: &Config) -> Result<BivariatePolynomial> {
    let h = tableau_histogram(n, k, cfg, |w| (words::descent_count(w), words::plateau_count(w)))?;
    Ok(BivariatePolynomial::from_histogram(&h))
}

/// `sum over SYT(k^n) of t^des u^plat` (descents of the tableau, `row(i) < row(i+1)`).
pub fn tableau_des_polynomial(n: usize, k: usize, cfg: &Config) -> Result<BivariatePolynomial> {
    let h = tableau_histogram(n, k, cfg, |w| {
        (
            w.windows(2).filter(|p| p[0] < p[1]).count(),
            words::plateau_count(w),
        )
    })?;
    Ok(BivariatePolynomial::from_histogram(&h))
}

/// `sum over SYT(k^n) of t^{des_sigma} u^plat`, straight from the tableau statistic.
pub fn des_sigma_polynomial(
    n: usize,
    k: usize,
    sigma: &Permutation,
    cfg: &Config,
) -> Result<BivariatePolynomial> {
    if sigma.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: sigma.len(),
        });
    }
    let s = sigma.entries();
    let h = tableau_histogram(n, k, cfg, |w| (des_sigma_of_word(w, s), words::plateau_count(w)))?;
    Ok(BivariatePolynomial::from_histogram(&h))
}

fn binomial(n: u64, r: u64) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..r {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `N(n, k, h)` from the alternating closed form, with exact rationals.
pub fn closed_form_count(n: usize, k: usize, h: usize) -> Result<BigInt> {
    check_positive(n, k)?;
    let top = (k - 1) * (n - 1);
    if h > top {
        return Err(Error::InvalidParameter(format!(
            "h = {h} outside [0, (k-1)(n-1)] = [0, {top}]"
        )));
    }
    let cells = (n * k) as u64;
    let mut sum = Rational::zero();
    for l in 0..=h {
        let mut product = Rational::one();
        for i in 0..n {
            for j in 0..k {
                let base = (i + j + 1) as i64;
                product *= Rational::new((base + l as i64).into(), base.into());
            }
        }
        let term = product * Rational::from_integer(binomial(cells + 1, (h - l) as u64));
        if (h - l).is_odd() {
            sum -= term;
        } else {
            sum += term;
        }
    }
    if !sum.is_integer() || sum.is_negative() {
        return Err(Error::Internal(format!(
            "closed form for N({n},{k},{h}) evaluated to {sum}, not a nonnegative integer"
        )));
    }
    Ok(sum.to_integer())
}

/// `sum_h N(n, k, h) t^h` from the closed form.
pub fn closed_form_polynomial(n: usize, k: usize) -> Result<BivariatePolynomial> {
    check_positive(n, k)?;
    let mut p = BivariatePolynomial::zero();
    for h in 0..=(k - 1) * (n - 1) {
        p.add_term(closed_form_count(n, k, h)?, h as u32, 0);
    }
    Ok(p)
}

pub(crate) fn check_canon_bounds(n: usize, k: usize, cfg: &Config) -> Result<()> {
    check_positive(n, k)?;
    if n > cfg.canon_max_n {
        return Err(Error::CapExceeded {
            what: "n",
            value: n,
            bound: cfg.canon_max_n,
        });
    }
    if k > cfg.canon_max_k {
        return Err(Error::CapExceeded {
            what: "k",
            value: k,
            bound: cfg.canon_max_k,
        });
    }
    Ok(())
}

fn canon_histogram(n: usize, k: usize, sigmas: &[Vec<u32>], cfg: &Config) -> Result<Histogram> {
    let cells = n * k;
    let (hist, _) = tableaux::fold_tableau_words(
        n,
        k,
        cfg.max_cells,
        cfg.strategy,
        || (Histogram::new(cells, cells), vec![0u32; cells]),
        |(h, pi), w| {
            for s in sigmas {
                for (slot, &r) in pi.iter_mut().zip(w) {
                    *slot = s[r as usize - 1];
                }
                h.record(words::descent_count(pi), words::plateau_count(pi));
            }
        },
        |(a, buf), (b, _)| (a.merge(b), buf),
    )?;
    Ok(hist)
}

/// `C^k_n(t, u) = sum over canon permutations of t^des u^plat`.
///
/// Canon words are produced as images `sigma_{row(1)} ... sigma_{row(kn)}`
/// of pairs `(sigma, T)` and their descents and plateaus read off the word.
pub fn canon_poly(n: usize, k: usize, cfg: &Config) -> Result<BivariatePolynomial> {
    check_canon_bounds(n, k, cfg)?;
    let sigmas: Vec<Vec<u32>> = enumerate_permutations(n)?.map(|p| p.entries().to_vec()).collect();
    Ok(BivariatePolynomial::from_histogram(&canon_histogram(n, k, &sigmas, cfg)?))
}

/// `C^{k,sigma}_n(t, u)`: canon permutations with voice `sigma`.
pub fn canon_poly_sigma(
    n: usize,
    k: usize,
    sigma: &Permutation,
    cfg: &Config,
) -> Result<BivariatePolynomial> {
    check_canon_bounds(n, k, cfg)?;
    if sigma.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: sigma.len(),
        });
    }
    let sigmas = vec![sigma.entries().to_vec()];
    Ok(BivariatePolynomial::from_histogram(&canon_histogram(n, k, &sigmas, cfg)?))
}

/// Outcome of a truncated-series identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesCheck {
    pub order: usize,
    pub first_failure: Option<usize>,
}

impl SeriesCheck {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Checks `(t - e^{(t-1)z}) * sum_n A_n z^n / n! = t - 1` through `z^N`,
/// where `eulerians = [A_0, ..., A_N]`.
pub fn check_eulerian_egf(eulerians: &[BivariatePolynomial]) -> Result<SeriesCheck> {
    let order = series_order(eulerians)?;
    let egf = TruncatedSeries::from_coeffs(
        order,
        eulerians
            .iter()
            .enumerate()
            .map(|(i, a)| a.to_rational().scale(&Rational::new(BigInt::one(), factorial(i))))
            .collect(),
    );
    let t = RationalPoly::t();
    let t_minus_one = &t - &RationalPoly::one();
    let exponential = TruncatedSeries::monomial(order, t_minus_one.clone(), 1).exp()?;
    let lhs = TruncatedSeries::constant(order, t).sub(&exponential).mul(&egf);
    let rhs = TruncatedSeries::constant(order, t_minus_one);
    Ok(SeriesCheck {
        order,
        first_failure: lhs.first_difference(&rhs),
    })
}

/// Computes `A_1 .. A_N` by enumeration (with `A_0 = 1`) and checks the EGF.
pub fn verify_eulerian_egf(order: usize, cfg: &Config) -> Result<SeriesCheck> {
    let mut polys = vec![BivariatePolynomial::one()];
    for n in 1..=order {
        polys.push(eulerian(n, cfg)?);
    }
    check_eulerian_egf(&polys)
}

/// Checks the squared form of the Narayana generating function,
/// `(2/F - 1 - (1+t-2u) z)^2 = 1 - 2(1+t) z + (1-t)^2 z^2`, for
/// `F = sum_n N^_n z^n` given as `[N^_0, ..., N^_N]`.
pub fn check_narayana_gf(narayanas: &[BivariatePolynomial]) -> Result<SeriesCheck> {
    let order = series_order(narayanas)?;
    let f = TruncatedSeries::from_coeffs(
        order,
        narayanas.iter().map(BivariatePolynomial::to_rational).collect(),
    );
    let one = RationalPoly::one();
    let t = RationalPoly::t();
    let two = Rational::from_integer(2.into());
    let linear = &(&one + &t) - &RationalPoly::u().scale(&two);
    let root = f
        .inverse()?
        .scale(&two)
        .sub(&TruncatedSeries::constant(order, one.clone()))
        .sub(&TruncatedSeries::monomial(order, linear, 1));
    let one_minus_t = &one - &t;
    let rhs = TruncatedSeries::from_coeffs(
        order,
        vec![
            one.clone(),
            (&one + &t).scale(&-two),
            &one_minus_t * &one_minus_t,
        ],
    );
    Ok(SeriesCheck {
        order,
        first_failure: root.square().first_difference(&rhs),
    })
}

/// Computes `N^_1 .. N^_N` from Dyck paths (with `N^_0 = 1`) and checks the GF.
pub fn verify_narayana_gf(order: usize) -> Result<SeriesCheck> {
    let mut polys = vec![BivariatePolynomial::one()];
    for n in 1..=order {
        polys.push(narayana_dyck(n)?);
    }
    check_narayana_gf(&polys)
}

fn series_order(polys: &[BivariatePolynomial]) -> Result<usize> {
    match polys.len() {
        0 | 1 => Err(Error::InvalidParameter(
            "series check needs coefficients through at least z^1".into(),
        )),
        len => Ok(len - 1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> BivariatePolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn eulerian_small() {
        let cfg = Config::default();
        assert_eq!(eulerian(1, &cfg).unwrap(), p("1"));
        assert_eq!(eulerian(2, &cfg).unwrap(), p("1 + t"));
        assert_eq!(eulerian(3, &cfg).unwrap(), p("1 + 4*t + t^2"));
        assert!(eulerian(0, &cfg).is_err());
        assert!(matches!(eulerian(11, &cfg), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn narayana_small() {
        assert_eq!(narayana_dyck(1).unwrap(), p("u"));
        assert_eq!(narayana_dyck(2).unwrap(), p("t + u^2"));
        assert!(narayana_dyck(13).is_err());
    }

    #[test]
    fn gen_narayana_small() {
        let cfg = Config::default();
        assert_eq!(gen_narayana(1, 4, &cfg).unwrap(), p("u^3"));
        assert_eq!(gen_narayana(2, 2, &cfg).unwrap(), p("t + u^2"));
        assert_eq!(gen_narayana(3, 2, &cfg).unwrap().at_u_one(), p("1 + 3*t + t^2"));
    }

    #[test]
    fn closed_form_small() {
        assert_eq!(closed_form_count(2, 2, 0).unwrap(), BigInt::from(1));
        assert_eq!(closed_form_count(2, 2, 1).unwrap(), BigInt::from(1));
        let counts: Vec<BigInt> = (0..=2).map(|h| closed_form_count(3, 2, h).unwrap()).collect();
        assert_eq!(counts, vec![1.into(), 3.into(), 1.into()]);
        assert!(closed_form_count(3, 2, 3).is_err());
        for n in 1..=4 {
            for k in 1..=4 {
                assert_eq!(closed_form_polynomial(n, k).unwrap(), closed_form_polynomial(k, n).unwrap());
            }
        }
    }

    #[test]
    fn canon_small() {
        let cfg = Config::default();
        assert_eq!(canon_poly(2, 2, &cfg).unwrap(), p("t + u^2 + t^2 + t*u^2"));
        assert_eq!(canon_poly(1, 3, &cfg).unwrap(), p("u^2"));
        let sigma: Permutation = "2 1".parse().unwrap();
        assert_eq!(canon_poly_sigma(2, 2, &sigma, &cfg).unwrap(), p("t^2 + t*u^2"));
        assert!(matches!(canon_poly(6, 2, &cfg), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn generating_functions() {
        let cfg = Config::default();
        assert!(verify_eulerian_egf(8, &cfg).unwrap().passed());
        assert!(verify_eulerian_egf(1, &cfg).unwrap().passed());
        assert!(verify_narayana_gf(8).unwrap().passed());
        assert!(verify_narayana_gf(1).unwrap().passed());
    }

    #[test]
    fn perturbations_are_detected() {
        let cfg = Config::default();
        let mut a: Vec<_> = std::iter::once(BivariatePolynomial::one())
            .chain((1..=8).map(|n| eulerian(n, &cfg).unwrap()))
            .collect();
        a[3] = &a[3] + &BivariatePolynomial::t();
        assert_eq!(check_eulerian_egf(&a).unwrap().first_failure, Some(3));

        let mut nar: Vec<_> = std::iter::once(BivariatePolynomial::one())
            .chain((1..=8).map(|n| narayana_dyck(n).unwrap()))
            .collect();
        nar[2] = &nar[2] + &BivariatePolynomial::u();
        assert_eq!(check_narayana_gf(&nar).unwrap().first_failure, Some(2));
    }
}
