//! The umbral pairing and Sheffer sequence machinery.
//!
//! A series `f = sum_k c_k t^k` acts as a linear functional on polynomials
//! through `<t^k | x^n> = n! delta_{n,k}`, so `<f | p> = sum_k c_k k! p_k`,
//! and as a linear operator through `t^k p = p^{(k)}`. A Sheffer pair
//! `(g, f)` -- `g` invertible, `f` delta -- determines the unique sequence
//! `s_n` with `<g f^k | s_n> = n! delta_{n,k}`.
//!
//! `sheffer_poly` builds `s_n` two ways that share only the compositional
//! inverse of `f`:
//!
//! - `Generating`: expand the generating series `g(fbar)^{-1} e^{y fbar(t)}`
//!   at `n + 1` rational points `y` and interpolate the degree-`n` value
//!   polynomial exactly.
//! - `Conjugate`: read the monomial coefficients off the pairing,
//!   `s_n = sum_j <g(fbar)^{-1} fbar^j | x^n> / j! x^j`.

use crate::combinatorics::factorial;
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::series::TruncatedSeries;
use num::{One, Zero};

/// A series in its role as a linear functional on polynomials.
pub type LinearFunctional = TruncatedSeries;

/// `<f | p>`. The functional must be stored to at least `deg p` terms.
pub fn pair(f: &LinearFunctional, p: &Polynomial) -> Result<Rational> {
    let Some(deg) = p.degree() else {
        return Ok(Rational::zero());
    };
    if f.truncation_order() < deg {
        return Err(Error::InsufficientTruncation {
            order: f.truncation_order(),
            degree: deg,
        });
    }
    let mut acc = Rational::zero();
    let mut kfact = num::BigInt::from(1);
    for (k, pk) in p.coeffs().iter().enumerate() {
        if k > 0 {
            kfact *= k;
        }
        if pk.is_zero() {
            continue;
        }
        let ck = &f.coeffs()[k];
        if !ck.is_zero() {
            acc += ck * pk * Rational::from_integer(kfact.clone());
        }
    }
    Ok(acc)
}

/// `f(t) p(x) = sum_k c_k p^{(k)}(x)`: the series acting as a differential
/// operator. Degree never increases.
pub fn apply(f: &TruncatedSeries, p: &Polynomial) -> Result<Polynomial> {
    let Some(deg) = p.degree() else {
        return Ok(Polynomial::zero());
    };
    if f.truncation_order() < deg {
        return Err(Error::InsufficientTruncation {
            order: f.truncation_order(),
            degree: deg,
        });
    }
    let mut acc = Polynomial::zero();
    let mut dp = p.clone();
    for k in 0..=deg {
        let ck = &f.coeffs()[k];
        if !ck.is_zero() {
            acc = &acc + &dp.scale(ck);
        }
        dp = dp.derivative();
    }
    Ok(acc)
}

/// A Sheffer pair `(g, f)`: invertible `g`, delta `f`, stored at a common
/// truncation order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShefferPair {
    g: TruncatedSeries,
    f: TruncatedSeries,
}

impl ShefferPair {
    pub fn new(g: TruncatedSeries, f: TruncatedSeries) -> Result<Self> {
        if !g.is_invertible() {
            return Err(Error::NotInvertibleSeries);
        }
        if !f.is_delta() {
            return Err(Error::NotDeltaSeries);
        }
        let n = g.truncation_order().min(f.truncation_order());
        Ok(ShefferPair {
            g: g.truncate(n),
            f: f.truncate(n),
        })
    }

    /// The Appell pair `(g, t)` at `g`'s truncation order.
    pub fn appell(g: TruncatedSeries) -> Result<Self> {
        let n = g.truncation_order();
        ShefferPair::new(g, TruncatedSeries::t(n.max(1)))
    }

    pub fn g(&self) -> &TruncatedSeries {
        &self.g
    }

    pub fn f(&self) -> &TruncatedSeries {
        &self.f
    }

    pub fn truncation_order(&self) -> usize {
        self.g.truncation_order()
    }

    /// `g(fbar)^{-1}` and `fbar`, the data of the generating form.
    fn conjugate_data(&self) -> Result<(TruncatedSeries, TruncatedSeries)> {
        let fbar = self.f.revert()?;
        let a = self.g.compose(&fbar)?.invert()?;
        Ok((a, fbar))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShefferMethod {
    Generating,
    Conjugate,
}

/// The degree-`n` Sheffer polynomial of the pair.
pub fn sheffer_poly(pair: &ShefferPair, n: usize, method: ShefferMethod) -> Result<Polynomial> {
    if pair.truncation_order() < n {
        return Err(Error::InsufficientTruncation {
            order: pair.truncation_order(),
            degree: n,
        });
    }
    let (a, fbar) = pair.conjugate_data()?;
    match method {
        ShefferMethod::Conjugate => {
            let n_fact = Rational::from_integer(factorial(n));
            let mut coeffs = Vec::with_capacity(n + 1);
            let mut w = a;
            for j in 0..=n {
                let jf = Rational::from_integer(factorial(j));
                coeffs.push(w.coeff(n) * &n_fact / jf);
                if j < n {
                    w = &w * &fbar;
                }
            }
            Ok(Polynomial::from_coeffs(coeffs))
        }
        ShefferMethod::Generating => {
            let n_fact = Rational::from_integer(factorial(n));
            let points: Result<Vec<(Rational, Rational)>> = (0..=n)
                .map(|i| {
                    let y = Rational::from_integer(i.into());
                    let e = fbar.scale(&y).exp()?;
                    let value = (&a * &e).coeff(n) * &n_fact;
                    Ok((y, value))
                })
                .collect();
            Ok(Polynomial::interpolate(&points?))
        }
    }
}

/// One step of the Sheffer recurrence
/// `s_{n+1} = (x - g'(t)/g(t)) (1/f'(t)) s_n`.
pub fn sheffer_recurrence_step(
    pair: &ShefferPair,
    s_n: &Polynomial,
    _n: usize,
) -> Result<Polynomial> {
    // Both derived series live one order below the pair; the caller's
    // truncation must leave that margin.
    let fp = pair.f.derivative();
    let q = apply(&fp.invert()?, s_n)?;
    let log_deriv = pair.g.derivative().div(&pair.g)?;
    Ok(&q.mul_x() - &apply(&log_deriv, &q)?)
}

/// Coefficients `c_k` with `p = sum_k c_k s_k(x)`, from
/// `c_k = <g f^k | p> / k!`. Length is `deg p + 1` (empty for `p = 0`).
pub fn expand_in_sheffer_basis(p: &Polynomial, sheffer: &ShefferPair) -> Result<Vec<Rational>> {
    let Some(deg) = p.degree() else {
        return Ok(Vec::new());
    };
    let mut out = Vec::with_capacity(deg + 1);
    let mut w = sheffer.g.clone();
    for k in 0..=deg {
        let kf = Rational::from_integer(factorial(k));
        out.push(pair(&w, p)? / kf);
        if k < deg {
            w = &w * &sheffer.f;
        }
    }
    Ok(out)
}

/// Lower-triangular change of basis between two Sheffer sequences:
/// `s_n = sum_m entries[n][m] r_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionMatrix {
    entries: Vec<Vec<Rational>>,
    source: ShefferPair,
    target: ShefferPair,
}

impl ConnectionMatrix {
    pub fn n_max(&self) -> usize {
        self.entries.len() - 1
    }

    /// `C_{n,m}`; zero above the diagonal.
    pub fn entry(&self, n: usize, m: usize) -> Rational {
        if m <= n {
            self.entries[n][m].clone()
        } else {
            Rational::zero()
        }
    }

    pub fn row(&self, n: usize) -> &[Rational] {
        &self.entries[n]
    }

    pub fn source(&self) -> &ShefferPair {
        &self.source
    }

    pub fn target(&self) -> &ShefferPair {
        &self.target
    }

    /// `sum_m C_{n,m} basis[m]` -- the change of basis applied to concrete
    /// target polynomials.
    pub fn resum(&self, n: usize, basis: &[Polynomial]) -> Polynomial {
        let mut acc = Polynomial::zero();
        for (m, c) in self.entries[n].iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &basis[m].scale(c);
            }
        }
        acc
    }

    /// Matrix product (both lower-triangular, same size).
    pub fn multiply(&self, rhs: &ConnectionMatrix) -> Vec<Vec<Rational>> {
        let n_max = self.n_max();
        (0..=n_max)
            .map(|n| {
                (0..=n)
                    .map(|m| {
                        let mut acc = Rational::zero();
                        for j in m..=n {
                            acc += self.entry(n, j) * rhs.entry(j, m);
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(n, row)| {
            row.iter()
                .enumerate()
                .all(|(m, c)| if m == n { c.is_one() } else { c.is_zero() })
        })
    }
}

/// Connection coefficients from `source ~ (g, f)` to `target ~ (h, l)`:
/// `C_{n,m} = <h(fbar)/g(fbar) l(fbar)^m | x^n> / m!`.
pub fn connection_matrix(
    source: &ShefferPair,
    target: &ShefferPair,
    n_max: usize,
) -> Result<ConnectionMatrix> {
    let trunc = source.truncation_order().min(target.truncation_order());
    if trunc < n_max {
        return Err(Error::InsufficientTruncation {
            order: trunc,
            degree: n_max,
        });
    }
    let fbar = source.f.revert()?;
    let u = target.g.compose(&fbar)?.div(&source.g.compose(&fbar)?)?;
    let v = target.f.compose(&fbar)?;

    let mut entries = vec![Vec::new(); n_max + 1];
    let mut w = u;
    for m in 0..=n_max {
        let m_fact = Rational::from_integer(factorial(m));
        for (n, row) in entries.iter_mut().enumerate().take(n_max + 1).skip(m) {
            let n_fact = Rational::from_integer(factorial(n));
            row.push(w.coeff(n) * &n_fact / &m_fact);
        }
        if m < n_max {
            w = &w * &v;
        }
    }
    // Rows were filled column-by-column in order, so row n holds m = 0..=n.
    Ok(ConnectionMatrix {
        entries,
        source: source.clone(),
        target: target.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};
    use proptest::prelude::*;

    fn xn(n: usize) -> Polynomial {
        Polynomial::monomial(n, Rational::one())
    }

    /// `(1/(1-t), e^t - 1)`: invertible g, non-trivial delta f.
    fn synthetic_pair(trunc: usize) -> ShefferPair {
        ShefferPair::new(
            TruncatedSeries::geometric(trunc),
            TruncatedSeries::expm1(trunc),
        )
        .unwrap()
    }

    #[test]
    fn pairing_examples() {
        let t2 = TruncatedSeries::t(4).pow(2);
        assert_eq!(pair(&t2, &xn(2)).unwrap(), rat_int(2));

        let e = TruncatedSeries::exp_t(&rat_int(1), 4);
        let p = &xn(2) + &Polynomial::one();
        assert_eq!(pair(&e, &p).unwrap(), rat_int(2)); // p(1)

        assert_eq!(pair(&TruncatedSeries::one(4), &xn(3)).unwrap(), rat_int(0));
    }

    #[test]
    fn pairing_requires_enough_truncation() {
        let f = TruncatedSeries::one(2);
        assert_eq!(
            pair(&f, &xn(3)),
            Err(Error::InsufficientTruncation {
                order: 2,
                degree: 3
            })
        );
        assert_eq!(pair(&f, &Polynomial::zero()).unwrap(), rat_int(0));
    }

    #[test]
    fn apply_examples() {
        assert_eq!(
            apply(&TruncatedSeries::t(4), &xn(3)).unwrap(),
            Polynomial::monomial(2, rat_int(3))
        );
        // e^t shifts by 1.
        let e = TruncatedSeries::exp_t(&rat_int(1), 4);
        assert_eq!(apply(&e, &xn(2)).unwrap(), xn(2).shift(&rat_int(1)));
        let p = Polynomial::from_coeffs(vec![rat(1, 3), rat_int(5), rat(-2, 7)]);
        assert_eq!(apply(&TruncatedSeries::one(4), &p).unwrap(), p);
    }

    #[test]
    fn apply_shift_matches_eval_pairing() {
        // <e^{yt} | p> = p(y) with y = -3/2.
        let y = rat(-3, 2);
        let e = TruncatedSeries::exp_t(&y, 6);
        let p = Polynomial::from_coeffs(vec![rat_int(2), rat(1, 2), rat_int(0), rat(5, 3)]);
        assert_eq!(pair(&e, &p).unwrap(), p.eval(&y));
        assert_eq!(apply(&e, &p).unwrap(), p.shift(&y));
    }

    #[test]
    fn sheffer_pair_validation() {
        let n = 4;
        assert_eq!(
            ShefferPair::new(TruncatedSeries::t(n), TruncatedSeries::t(n)),
            Err(Error::NotInvertibleSeries)
        );
        assert_eq!(
            ShefferPair::new(TruncatedSeries::one(n), TruncatedSeries::one(n)),
            Err(Error::NotDeltaSeries)
        );
    }

    #[test]
    fn identity_pair_gives_monomials() {
        let pair_ = ShefferPair::appell(TruncatedSeries::one(8)).unwrap();
        for n in 0..=7 {
            assert_eq!(
                sheffer_poly(&pair_, n, ShefferMethod::Generating).unwrap(),
                xn(n)
            );
            assert_eq!(
                sheffer_poly(&pair_, n, ShefferMethod::Conjugate).unwrap(),
                xn(n)
            );
        }
    }

    #[test]
    fn squared_bernoulli_pair_degree_two() {
        // g = ((e^t - 1)/t)^2, f = t gives x^2 - 2x + 5/6 at n = 2.
        let n = 6;
        let e_over_t = TruncatedSeries::from_fn(n, |i| {
            Rational::one() / Rational::from_integer(factorial(i + 1))
        });
        let pair_ = ShefferPair::appell(e_over_t.pow(2)).unwrap();
        let expected = Polynomial::from_coeffs(vec![rat(5, 6), rat_int(-2), rat_int(1)]);
        assert_eq!(
            sheffer_poly(&pair_, 2, ShefferMethod::Generating).unwrap(),
            expected
        );
        assert_eq!(
            sheffer_poly(&pair_, 2, ShefferMethod::Conjugate).unwrap(),
            expected
        );
    }

    #[test]
    fn methods_agree_on_synthetic_pair() {
        let pair_ = synthetic_pair(9);
        for n in 0..=8 {
            let a = sheffer_poly(&pair_, n, ShefferMethod::Generating).unwrap();
            let b = sheffer_poly(&pair_, n, ShefferMethod::Conjugate).unwrap();
            assert_eq!(a, b, "methods disagree at n = {n}");
            assert_eq!(a.degree(), Some(n));
        }
    }

    #[test]
    fn recurrence_step_on_identity_pair() {
        let pair_ = ShefferPair::appell(TruncatedSeries::one(8)).unwrap();
        for n in 0..=6 {
            assert_eq!(
                sheffer_recurrence_step(&pair_, &xn(n), n).unwrap(),
                xn(n + 1)
            );
        }
    }

    #[test]
    fn recurrence_step_hermite_pair() {
        // g = e^{nu t^2 / 2}: g'/g = nu t, so x -> x^2 - nu.
        let nu = rat(3, 4);
        let half_nu_t2 = TruncatedSeries::from_fn(6, |i| {
            if i == 2 {
                &nu / rat_int(2)
            } else {
                Rational::zero()
            }
        });
        let g = half_nu_t2.exp().unwrap();
        let pair_ = ShefferPair::appell(g).unwrap();
        let got = sheffer_recurrence_step(&pair_, &xn(1), 1).unwrap();
        assert_eq!(
            got,
            Polynomial::from_coeffs(vec![-&nu, Rational::zero(), Rational::one()])
        );
    }

    #[test]
    fn recurrence_step_matches_direct_construction() {
        let pair_ = synthetic_pair(10);
        let mut s = Polynomial::one();
        for n in 0..=7 {
            let next = sheffer_recurrence_step(&pair_, &s, n).unwrap();
            assert_eq!(
                next,
                sheffer_poly(&pair_, n + 1, ShefferMethod::Conjugate).unwrap()
            );
            s = next;
        }
    }

    #[test]
    fn biorthogonality_synthetic_pair() {
        let trunc = 8;
        let pair_ = synthetic_pair(trunc);
        for n in 0..=6usize {
            let s_n = sheffer_poly(&pair_, n, ShefferMethod::Conjugate).unwrap();
            let mut w = pair_.g().clone();
            for k in 0..=6usize {
                let expected = if k == n {
                    Rational::from_integer(factorial(n))
                } else {
                    Rational::zero()
                };
                assert_eq!(pair(&w, &s_n).unwrap(), expected, "<g f^{k} | s_{n}>");
                w = &w * pair_.f();
            }
        }
    }

    #[test]
    fn expansion_is_basis_dual() {
        let pair_ = synthetic_pair(8);
        let s3 = sheffer_poly(&pair_, 3, ShefferMethod::Conjugate).unwrap();
        assert_eq!(
            expand_in_sheffer_basis(&s3, &pair_).unwrap(),
            vec![rat_int(0), rat_int(0), rat_int(0), rat_int(1)]
        );
        assert!(expand_in_sheffer_basis(&Polynomial::zero(), &pair_)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn expansion_resums_to_input() {
        let pair_ = synthetic_pair(8);
        let basis: Vec<Polynomial> = (0..=5)
            .map(|n| sheffer_poly(&pair_, n, ShefferMethod::Conjugate).unwrap())
            .collect();
        let p = Polynomial::from_coeffs(vec![
            rat(1, 2),
            rat_int(-4),
            rat(3, 7),
            rat_int(0),
            rat_int(2),
            rat(1, 6),
        ]);
        let c = expand_in_sheffer_basis(&p, &pair_).unwrap();
        let mut acc = Polynomial::zero();
        for (k, ck) in c.iter().enumerate() {
            acc = &acc + &basis[k].scale(ck);
        }
        assert_eq!(acc, p);
    }

    #[test]
    fn addition_law_on_synthetic_pair() {
        // s_n(x + y) = sum_k C(n,k) s_k(y) p_{n-k}(x), p_n = g(t) s_n.
        let pair_ = synthetic_pair(9);
        let n = 5;
        let s: Vec<Polynomial> = (0..=n)
            .map(|m| sheffer_poly(&pair_, m, ShefferMethod::Conjugate).unwrap())
            .collect();
        let p: Vec<Polynomial> = s.iter().map(|sm| apply(pair_.g(), sm).unwrap()).collect();
        for y in [rat_int(1), rat(-1, 2), rat(2, 3)] {
            let lhs = s[n].shift(&y);
            let mut rhs = Polynomial::zero();
            for k in 0..=n {
                let c = crate::combinatorics::binomial_u(n, k) * s[k].eval(&y);
                rhs = &rhs + &p[n - k].scale(&c);
            }
            assert_eq!(lhs, rhs, "addition law fails at y = {y}");
        }
    }

    #[test]
    fn lowering_holds_for_general_delta_f() {
        // f(t) s_n = n s_{n-1} with f = e^t - 1, exercising a non-Appell pair.
        let pair_ = synthetic_pair(17);
        let members: Vec<Polynomial> = (0..=16)
            .map(|n| sheffer_poly(&pair_, n, ShefferMethod::Conjugate).unwrap())
            .collect();
        for n in 1..=16usize {
            assert_eq!(
                apply(pair_.f(), &members[n]).unwrap(),
                members[n - 1].scale(&rat_int(n as i64)),
                "lowering at n = {n}"
            );
        }
        assert_eq!(apply(pair_.f(), &members[0]).unwrap(), Polynomial::zero());
    }

    #[test]
    fn connection_to_self_is_identity() {
        let pair_ = synthetic_pair(8);
        let m = connection_matrix(&pair_, &pair_, 6).unwrap();
        assert!(m.is_identity());
    }

    #[test]
    fn connection_expands_source_in_target() {
        let source = synthetic_pair(8);
        let target = ShefferPair::appell(TruncatedSeries::exp_t(&rat(1, 2), 8)).unwrap();
        let m = connection_matrix(&source, &target, 6).unwrap();
        let target_polys: Vec<Polynomial> = (0..=6)
            .map(|n| sheffer_poly(&target, n, ShefferMethod::Conjugate).unwrap())
            .collect();
        for n in 0..=6 {
            let s_n = sheffer_poly(&source, n, ShefferMethod::Conjugate).unwrap();
            assert_eq!(m.resum(n, &target_polys), s_n, "row {n}");
        }
    }

    #[test]
    fn connection_round_trip_is_identity() {
        let a = synthetic_pair(8);
        let b = ShefferPair::appell(TruncatedSeries::exp_t(&rat(-2, 3), 8)).unwrap();
        let ab = connection_matrix(&a, &b, 6).unwrap();
        let ba = connection_matrix(&b, &a, 6).unwrap();
        let prod = ab.multiply(&ba);
        for (n, row) in prod.iter().enumerate() {
            for (m, c) in row.iter().enumerate() {
                let expected = if m == n {
                    Rational::one()
                } else {
                    Rational::zero()
                };
                assert_eq!(c, &expected, "entry ({n},{m})");
            }
        }
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-9i64..=9, 1i64..=5).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        /// <f | x p> = <df/dt | p>, with one spare order on f.
        #[test]
        fn derivative_duality(
            fc in proptest::collection::vec(arb_rational(), 8),
            pc in proptest::collection::vec(arb_rational(), 1..=6),
        ) {
            let f = TruncatedSeries::from_coeffs(fc);
            let p = Polynomial::from_coeffs(pc);
            let lhs = pair(&f, &p.mul_x()).unwrap();
            let rhs = pair(&f.derivative(), &p).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        /// <fg | p> = <f | g p> = <g | f p>.
        #[test]
        fn pairing_product_adjunction(
            fc in proptest::collection::vec(arb_rational(), 7),
            gc in proptest::collection::vec(arb_rational(), 7),
            pc in proptest::collection::vec(arb_rational(), 1..=6),
        ) {
            let f = TruncatedSeries::from_coeffs(fc);
            let g = TruncatedSeries::from_coeffs(gc);
            let p = Polynomial::from_coeffs(pc);
            let all = pair(&(&f * &g), &p).unwrap();
            prop_assert_eq!(&all, &pair(&f, &apply(&g, &p).unwrap()).unwrap());
            prop_assert_eq!(&all, &pair(&g, &apply(&f, &p).unwrap()).unwrap());
        }
    }
}
