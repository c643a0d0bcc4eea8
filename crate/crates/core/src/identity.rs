//! The identity suite: every structural law and closed-form identity relating
//! the mixed family `HB_n^{(nu,k)}` to the other families, as executable
//! exact-equality checks.
//!
//! Each [`IdentityId`] names one check recipe. The two sides of a check are
//! built by disjoint code paths: the left side comes straight from the
//! generating-function family constructors, while the right side is assembled
//! from family constructors, Stirling numbers, binomial coefficients, and
//! Bernoulli numbers only -- never from intermediates of the left side's
//! computation. A check passes only when the difference polynomial is zero;
//! there are no tolerances.
//!
//! [`verify_grid`] runs a set of identities over a parameter grid with
//! memoized family tables. The memoization is observationally pure: a fresh
//! [`Workspace`] gives identical reports.

use crate::combinatorics::binomial_u;
use crate::error::{Error, Result};
use crate::families::{self, FamilyParams};
use crate::poly::Polynomial;
use crate::rational::{int_pow, rat, rat_int, Rational};
use crate::series::TruncatedSeries;
use crate::umbral;
use num::{BigInt, One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::rc::Rc;
use std::str::FromStr;

/// Tags for the checkable identities.
///
/// `prop26` through `frobenius_connection54` are the closed-form expansions
/// and recurrences of the mixed family; `lowering25`, `biorthogonality`, and
/// `eq14_duality` are the structural laws of the umbral machinery itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum IdentityId {
    /// `HB_n` as a Hermite-weighted sum of poly-Bernoulli polynomials.
    Prop26,
    /// `HB_n` as a polylog-weighted sum of shifted Hermite polynomials.
    Thm27,
    /// `HB_n` fully expanded over shifted monomials `(x - j)^{n-2l}`.
    Thm28,
    /// `HB_n` over Hermite polynomials with Stirling-number weights.
    Thm29,
    /// The monomial coefficients of `HB_n` in closed form.
    Thm30,
    /// The Appell addition law `HB_n(x+y) = sum_j C(n,j) HB_j(x) y^{n-j}`.
    Addition31,
    /// Three-term recurrence with a Bernoulli-number correction sum.
    Recurrence39,
    /// The recurrence rearranged for the index-(k-1) convolution (n >= 3).
    Rearranged40,
    /// Recurrence from differentiating the generating kernel (n >= 2).
    Recurrence43,
    /// Scalar two-way evaluation identity for the mixed numbers.
    Evaluation46,
    /// Connection coefficients onto higher-order Bernoulli polynomials.
    BernoulliConnection50,
    /// Connection coefficients onto Frobenius-Euler polynomials.
    FrobeniusConnection54,
    /// Lowering: `d/dx` maps the degree-n member to n times degree n-1.
    Lowering25,
    /// `<g f^j | s_n> = n! delta_{n,j}` for the concrete Sheffer pairs.
    Biorthogonality,
    /// Pairing duality `<f | x p> = <df/dt | p>`.
    Eq14Duality,
}

impl IdentityId {
    pub const ALL: [IdentityId; 15] = [
        IdentityId::Prop26,
        IdentityId::Thm27,
        IdentityId::Thm28,
        IdentityId::Thm29,
        IdentityId::Thm30,
        IdentityId::Addition31,
        IdentityId::Recurrence39,
        IdentityId::Rearranged40,
        IdentityId::Recurrence43,
        IdentityId::Evaluation46,
        IdentityId::BernoulliConnection50,
        IdentityId::FrobeniusConnection54,
        IdentityId::Lowering25,
        IdentityId::Biorthogonality,
        IdentityId::Eq14Duality,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            IdentityId::Prop26 => "prop26",
            IdentityId::Thm27 => "thm27",
            IdentityId::Thm28 => "thm28",
            IdentityId::Thm29 => "thm29",
            IdentityId::Thm30 => "thm30",
            IdentityId::Addition31 => "addition31",
            IdentityId::Recurrence39 => "recurrence39",
            IdentityId::Rearranged40 => "rearranged40",
            IdentityId::Recurrence43 => "recurrence43",
            IdentityId::Evaluation46 => "evaluation46",
            IdentityId::BernoulliConnection50 => "bernoulli_connection50",
            IdentityId::FrobeniusConnection54 => "frobenius_connection54",
            IdentityId::Lowering25 => "lowering25",
            IdentityId::Biorthogonality => "biorthogonality",
            IdentityId::Eq14Duality => "eq14_duality",
        }
    }

    /// Smallest `n` the identity is stated for.
    pub fn n_floor(&self) -> usize {
        match self {
            IdentityId::Rearranged40 => 3,
            IdentityId::Recurrence43 => 2,
            _ => 0,
        }
    }

    /// Whether the check consumes the Bernoulli/Frobenius-Euler order `r`.
    pub fn uses_r(&self) -> bool {
        matches!(
            self,
            IdentityId::BernoulliConnection50
                | IdentityId::FrobeniusConnection54
                | IdentityId::Biorthogonality
        )
    }

    /// Whether the check consumes the Frobenius-Euler parameter `lambda`.
    pub fn uses_lambda(&self) -> bool {
        matches!(
            self,
            IdentityId::FrobeniusConnection54 | IdentityId::Biorthogonality
        )
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentityId {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        IdentityId::ALL
            .iter()
            .find(|id| id.as_str() == s)
            .copied()
            .ok_or_else(|| format!("unknown identity {s:?}"))
    }
}

/// Outcome of one identity check at one parameter point.
///
/// `equal` holds exactly when `diff = lhs - rhs` is the zero polynomial. For
/// multi-part checks (several families, several sample points) `lhs`/`rhs`
/// expose the first failing part, or the first part when all pass, and
/// `equal` covers all parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub identity: IdentityId,
    pub n: usize,
    pub params: FamilyParams,
    pub lhs: Polynomial,
    pub rhs: Polynomial,
    pub equal: bool,
    pub diff: Polynomial,
}

impl IdentityReport {
    /// The JSON record consumed by the `verify` command: rationals use the
    /// canonical "p/q" form and `diff_coefficients` is empty on success.
    pub fn to_json(&self) -> serde_json::Value {
        let mut params = serde_json::Map::new();
        params.insert("n".into(), serde_json::json!(self.n));
        params.insert("nu".into(), serde_json::json!(self.params.nu.to_string()));
        params.insert("k".into(), serde_json::json!(self.params.k));
        if self.identity.uses_r() {
            params.insert("r".into(), serde_json::json!(self.params.r));
        }
        if self.identity.uses_lambda() {
            params.insert(
                "lambda".into(),
                serde_json::json!(self.params.lambda.to_string()),
            );
        }
        serde_json::json!({
            "identity": self.identity.as_str(),
            "params": params,
            "equal": self.equal,
            "diff_coefficients": self.diff.coeff_strings(),
        })
    }

    pub fn to_json_line(&self) -> String {
        self.to_json().to_string()
    }
}

/// Parameter grid for [`verify_grid`]. Each identity iterates only over the
/// dimensions it uses; unused dimensions are pinned to the first value.
#[derive(Debug, Clone)]
pub struct GridSpec {
    pub n_max: usize,
    pub nu_values: Vec<Rational>,
    pub k_values: Vec<i32>,
    pub r_values: Vec<u32>,
    pub lambda_values: Vec<Rational>,
}

impl GridSpec {
    /// The quick profile: `n <= 12`, `k in -2..=2`, `nu in {1, 1/2}`,
    /// `r in {0,1,2}`, `lambda in {2, -1}`.
    pub fn quick() -> Self {
        GridSpec {
            n_max: 12,
            nu_values: vec![rat_int(1), rat(1, 2)],
            k_values: (-2..=2).collect(),
            r_values: vec![0, 1, 2],
            lambda_values: vec![rat_int(2), rat_int(-1)],
        }
    }

    /// The full profile: `n <= 24`, `k in -3..=3`, `nu in {1, -1, 1/2, 3}`,
    /// `r in 0..=4`, `lambda in {2, -1, 1/3, 5/7}`.
    pub fn full() -> Self {
        GridSpec {
            n_max: 24,
            nu_values: vec![rat_int(1), rat_int(-1), rat(1, 2), rat_int(3)],
            k_values: (-3..=3).collect(),
            r_values: (0..=4).collect(),
            lambda_values: vec![rat_int(2), rat_int(-1), rat(1, 3), rat(5, 7)],
        }
    }
}

/// Check one identity at one point with a fresh workspace.
pub fn check_identity(id: IdentityId, n: usize, params: &FamilyParams) -> Result<IdentityReport> {
    Workspace::new(n).check(id, n, params)
}

/// Run `ids` over the grid. Reports come in deterministic order: identities
/// in the given order, then `n` ascending (respecting each identity's
/// n-floor), then `nu`, `k`, `r`, `lambda` in grid order.
///
/// `fault`, when set, corrupts one coefficient of the named identity's right
/// side before comparison -- a mutation hook for exercising failure paths.
pub fn verify_grid(
    ids: &[IdentityId],
    grid: &GridSpec,
    fault: Option<IdentityId>,
) -> Result<Vec<IdentityReport>> {
    let mut ws = Workspace::new(grid.n_max);
    let mut reports = Vec::new();
    let pinned_r = grid.r_values.first().copied().unwrap_or(0);
    let pinned_lambda = grid
        .lambda_values
        .first()
        .cloned()
        .unwrap_or_else(|| rat_int(2));
    for &id in ids {
        let r_values: &[u32] = if id.uses_r() {
            &grid.r_values
        } else {
            std::slice::from_ref(&pinned_r)
        };
        let lambda_values: &[Rational] = if id.uses_lambda() {
            &grid.lambda_values
        } else {
            std::slice::from_ref(&pinned_lambda)
        };
        for n in id.n_floor()..=grid.n_max {
            for nu in &grid.nu_values {
                for &k in &grid.k_values {
                    for &r in r_values {
                        for lambda in lambda_values {
                            let params = FamilyParams::new(nu.clone(), k, r, lambda.clone())?;
                            let inject = fault == Some(id);
                            reports.push(ws.check_with_fault(id, n, &params, inject)?);
                        }
                    }
                }
            }
        }
    }
    Ok(reports)
}

type Table = Rc<Vec<Polynomial>>;

/// Memoized family tables shared across checks. All entries are pure
/// functions of the keys; sharing a workspace never changes any report.
pub struct Workspace {
    /// Tables hold members `0..=n_max + 1`; the spare slot feeds the
    /// recurrences that reach one degree above the checked level.
    n_max: usize,
    bernoulli: Vec<Rational>,
    stirling: Vec<Vec<BigInt>>,
    factorials: Vec<Rational>,
    hb: BTreeMap<(i32, Rational), Table>,
    pb: BTreeMap<i32, Table>,
    hermite: BTreeMap<Rational, Table>,
    bernoulli_r: BTreeMap<u32, Table>,
    frobenius: BTreeMap<(u32, Rational), Table>,
    hb_g: BTreeMap<(i32, Rational), Rc<TruncatedSeries>>,
    pb_g: BTreeMap<i32, Rc<TruncatedSeries>>,
    hermite_g: BTreeMap<Rational, Rc<TruncatedSeries>>,
    bernoulli_r_g: BTreeMap<u32, Rc<TruncatedSeries>>,
    frobenius_g: BTreeMap<(u32, Rational), Rc<TruncatedSeries>>,
    hb_kernel: BTreeMap<(i32, Rational), Rc<TruncatedSeries>>,
    /// Values `HB_j(l)` at integer points `l = 0..=eval_l_max`.
    hb_evals: BTreeMap<(i32, Rational), Rc<Vec<Vec<Rational>>>>,
    eval_l_max: u32,
    /// Biorthogonality pairing rows, keyed by the pair each row belongs to,
    /// so a row is computed once per family parameter point.
    bio_rows: BTreeMap<(BioKey, usize), Rc<Polynomial>>,
}

/// Identifies one concrete Sheffer pair in the biorthogonality cache.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum BioKey {
    Hb(i32, Rational),
    Pb(i32),
    Hermite(Rational),
    BernoulliR(u32),
    Frobenius(u32, Rational),
}

impl Workspace {
    pub fn new(n_max: usize) -> Self {
        let mut factorials = Vec::with_capacity(n_max + 3);
        let mut f = Rational::one();
        factorials.push(f.clone());
        for i in 1..=n_max + 2 {
            f *= rat_int(i as i64);
            factorials.push(f.clone());
        }
        Workspace {
            n_max,
            bernoulli: families::bernoulli_numbers(n_max + 2),
            stirling: families::stirling2_table(n_max + 1),
            factorials,
            hb: BTreeMap::new(),
            pb: BTreeMap::new(),
            hermite: BTreeMap::new(),
            bernoulli_r: BTreeMap::new(),
            frobenius: BTreeMap::new(),
            hb_g: BTreeMap::new(),
            pb_g: BTreeMap::new(),
            hermite_g: BTreeMap::new(),
            bernoulli_r_g: BTreeMap::new(),
            frobenius_g: BTreeMap::new(),
            hb_kernel: BTreeMap::new(),
            hb_evals: BTreeMap::new(),
            eval_l_max: 8,
            bio_rows: BTreeMap::new(),
        }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn check(
        &mut self,
        id: IdentityId,
        n: usize,
        params: &FamilyParams,
    ) -> Result<IdentityReport> {
        self.check_with_fault(id, n, params, false)
    }

    /// As [`Workspace::check`], optionally corrupting the first right-hand
    /// side by one unit before comparison.
    pub fn check_with_fault(
        &mut self,
        id: IdentityId,
        n: usize,
        params: &FamilyParams,
        inject_fault: bool,
    ) -> Result<IdentityReport> {
        let floor = id.n_floor();
        if n < floor {
            return Err(Error::OutOfStatedRange {
                identity: id.as_str(),
                n,
                floor,
            });
        }
        if n > self.n_max {
            // Grow: tables are keyed by parameters only, so rebuild at the
            // larger size.
            *self = Workspace::new(n);
        }
        let mut sides = match id {
            IdentityId::Prop26 => self.prop26(n, params)?,
            IdentityId::Thm27 => self.thm27(n, params)?,
            IdentityId::Thm28 => self.thm28(n, params)?,
            IdentityId::Thm29 => self.thm29(n, params)?,
            IdentityId::Thm30 => self.thm30(n, params)?,
            IdentityId::Addition31 => self.addition31(n, params)?,
            IdentityId::Recurrence39 => self.recurrence39(n, params)?,
            IdentityId::Rearranged40 => self.rearranged40(n, params)?,
            IdentityId::Recurrence43 => self.recurrence43(n, params)?,
            IdentityId::Evaluation46 => self.evaluation46(n, params)?,
            IdentityId::BernoulliConnection50 => self.bernoulli_connection50(n, params)?,
            IdentityId::FrobeniusConnection54 => self.frobenius_connection54(n, params)?,
            IdentityId::Lowering25 => self.lowering25(n, params)?,
            IdentityId::Biorthogonality => self.biorthogonality(n, params)?,
            IdentityId::Eq14Duality => self.eq14_duality(n, params)?,
        };
        if inject_fault {
            let rhs = &sides[0].1;
            sides[0].1 = rhs + &Polynomial::one();
        }
        let equal = sides.iter().all(|(lhs, rhs)| lhs == rhs);
        let (lhs, rhs) = sides
            .iter()
            .find(|(lhs, rhs)| lhs != rhs)
            .unwrap_or(&sides[0])
            .clone();
        let diff = &lhs - &rhs;
        Ok(IdentityReport {
            identity: id,
            n,
            params: params.clone(),
            lhs,
            rhs,
            equal,
            diff,
        })
    }

    // -- cached tables ------------------------------------------------------

    fn table_len(&self) -> usize {
        self.n_max + 1
    }

    fn hb_t(&mut self, nu: &Rational, k: i32) -> Result<Table> {
        let key = (k, nu.clone());
        if let Some(t) = self.hb.get(&key) {
            return Ok(t.clone());
        }
        let t = Rc::new(families::hb_table(self.table_len(), nu, k)?);
        self.hb.insert(key, t.clone());
        Ok(t)
    }

    fn pb_t(&mut self, k: i32) -> Table {
        let len = self.table_len();
        self.pb
            .entry(k)
            .or_insert_with(|| Rc::new(families::poly_bernoulli_table(len, k)))
            .clone()
    }

    fn hermite_t(&mut self, nu: &Rational) -> Result<Table> {
        if let Some(t) = self.hermite.get(nu) {
            return Ok(t.clone());
        }
        let t = Rc::new(families::hermite_table(self.table_len(), nu)?);
        self.hermite.insert(nu.clone(), t.clone());
        Ok(t)
    }

    fn bernoulli_r_t(&mut self, r: u32) -> Table {
        let len = self.table_len();
        self.bernoulli_r
            .entry(r)
            .or_insert_with(|| Rc::new(families::bernoulli_poly_table(len, r)))
            .clone()
    }

    fn frobenius_t(&mut self, r: u32, lambda: &Rational) -> Result<Table> {
        let key = (r, lambda.clone());
        if let Some(t) = self.frobenius.get(&key) {
            return Ok(t.clone());
        }
        let t = Rc::new(families::frobenius_euler_table(
            self.table_len(),
            r,
            lambda,
        )?);
        self.frobenius.insert(key, t.clone());
        Ok(t)
    }

    fn stirling(&mut self, n: usize, m: usize) -> Rational {
        if m > n {
            return Rational::zero();
        }
        if n >= self.stirling.len() {
            // bernoulli_connection50 reaches S_2(n + r, r); grow as needed.
            self.stirling = families::stirling2_table(n);
        }
        Rational::from_integer(self.stirling[n][m].clone())
    }

    fn bernoulli(&self, n: usize) -> &Rational {
        &self.bernoulli[n]
    }

    // -- check recipes ------------------------------------------------------
    //
    // Each returns (lhs, rhs) component pairs. The left side is the family
    // member itself; the right side is assembled from the theorem statement.

    /// `HB_n(x) = sum_{m<=n/2} C(n,2m) (2m)!/m! (-nu/2)^m B^{(k)}_{n-2m}(x)`.
    fn prop26(&mut self, n: usize, p: &FamilyParams) -> Result<Sides> {
        let lhs = self.hb_t(&p.nu, p.k)?[n].clone();
        let pb = self.pb_t(p.k);
        let mut acc = Vec::new();
        for m in 0..=n / 2 {
            let w = binomial_u(n, 2 * m) * &self.factorials[2 * m] / &self.factorials[m]
                * neg_half_pow(&p.nu, m);
            acc_scaled(&mut acc, &pb[n - 2 * m], &w);
        }
        Ok(vec![(lhs, Polynomial::from_coeffs(acc))])
    }

    /// `HB_n(x) = sum_m (m+1)^{-k} sum_{j<=m} C(m,j) (-1)^j H_n(x - j)`,
    /// with the shifted-Hermite terms grouped by `j`.
    fn thm27(&mut self, n: usize, p: &FamilyParams) -> Result<Sides> {
        let lhs = self.hb_t(&p.nu, p.k)?[n].clone();
        let h_n = self.hermite_t(&p.nu)?[n].clone();
        let rhs = thm27_sum(&h_n, n, p.k);
        Ok(vec![(lhs, rhs)])
    }

    /// `HB_n(x)` as a double sum over shifted monomials `(x-j)^{n-2l}`.
    fn thm28(&mut self, n: usize, p: &FamilyParams) -> Result<Sides> {
        let lhs = self.hb_t(&p.nu, p.k)?[n].clone();
        let s = alternating_polylog_weights(n, p.k);
        let l_weights: Vec<Rational> = (0..=n / 2)
            .map(|l| {
                binomial_u(n, 2 * l) * &self.factorials[2 * l] / &self.factorials[l]
                    * neg_half_pow(&p.nu, l)
            })
            .collect();
        let mut acc = Vec::new();
        for (j, sj) in s.iter().enumerate() {
            if sj.is_zero() {
                continue;
            }
            // Powers of (x - j), built once per shift point.
            let base = Polynomial::from_coeffs(vec![rat_int(-(j as i64)), rat_int(1)]);
            let mut powers = Vec::with_capacity(n + 1);
            powers.push(Polynomial::one());
            for _ in 0..n {
                powers.push(&powers[powers.len() - 1] * &base);
            }
            for (l, lw) in l_weights.iter().enumerate() {
                acc_scaled(&mut acc, &powers[n - 2 * l], &(lw * sj));
            }
        }
        Ok(vec![(lhs, Polynomial::from_coeffs(acc))])
    }

    /// `HB_n(x) = (-1)^n sum_a {sum_m (-1)^{a+m} m!/(m+1)^k C(n,a)
    /// S_2(n-a,m)} H_a(x)`.
    fn thm29(&mut self, n: usize, p: &FamilyParams) -> Result<Sides> {
        let lhs = self.hb_t(&p.nu, p.k)?[n].clone();
        let hermite = self.hermite_t(&p.nu)?;
        let mut acc = Vec::new();
        for a in 0..=n {
            let cna = binomial_u(n, a);
            let mut w = Rational::zero();
            for m in 0..=n - a {
                let s2 = self.stirling(n - a, m);
                let term = &self.factorials[m] * int_pow(m as i64 + 1, -p.k) * s2;
                if (a + m) % 2 == 0 {
                    w += term;
                } else {
                    w -= term;
                }
            }
            acc_scaled(&mut acc, &hermite[a], &(w * cna));
        }
        let mut rhs = Polynomial::from_coeffs(acc);
        if n % 2 == 1 {
            rhs = -&rhs;
        }
        Ok(vec![(lhs, rhs)])
    }

    /// Monomial coefficients of `HB_n` from poly-Bernoulli numbers.
    fn thm30(&mut self, n: usize, p: &FamilyParams) -> Result<Sides> {
        let lhs = self.hb_t(&p.nu, p.k)?[n].clone();
        let pb = self.pb_t(p.k);
        let coeffs = (0..=n)
            .map(|j| {
                let mut acc = Rational::zero();
                for l in 0..=(n - j) / 2 {
                    acc += binomial_u(n, j) * binomial_u(n - j, 2 * l) * &self.factorials[2 * l]
                        / &self.factorials[l]
                        * neg_half_pow(&p.nu, l)
                        * pb[n - j - 2 * l].coeff(0);
                }
                acc
            })
            .collect();
        Ok(vec![(lhs, Polynomial::from_coeffs(coeffs))])
    }

    /// Addition law, checked bivariately (Kronecker-embedded) and at three
    /// rational `y` samples.
    fn addition31(&mut self, n: usize, p: &FamilyParams) -> Result<Sides> {
        let hb = self.hb_t(&p.nu, p.k)?;
        let mut sides = Vec::new();

        // Bivariate comparison: embed x^a y^b as x^{a + (n+1) b}, which is
        // faithful since every x-degree here is at most n.
        let stride = n + 1;
        let mut lhs_biv = vec![Rational::zero(); stride * stride];
        for (i, ci) in hb[n].coeffs().iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            let mut bin = BigInt::from(1); // C(i, a), a ascending
            for a in 0..=i {
                if a > 0 {
                    bin = bin * (i - a + 1) / a;
                }
                lhs_biv[a + stride * (i - a)] += ci * Rational::from_integer(bin.clone());
            }
        }
        let mut rhs_biv = vec![Rational::zero(); stride * stride];
        for j in 0..=n {
            let cnj = binomial_u(n, j);
            for (a, ca) in hb[j].coeffs().iter().enumerate() {
                if !ca.is_zero() {
                    rhs_biv[a + stride * (n - j)] += ca * &cnj;
                }
            }
        }
        sides.push((
            Polynomial::from_coeffs(lhs_biv),
            Polynomial::from_coeffs(rhs_biv),
        ));

        for y in [rat_int(1), rat(-1, 2), rat(2, 3)] {
            let lhs = hb[n].shift(&y);
            let mut acc = Vec::new();
            let mut y_pow = Rational::one();
            // y^{n-j}, accumulated from j = n downward.
            for j in (0..=n).rev() {
                acc_scaled(&mut acc, &hb[j], &(binomial_u(n, j) * &y_pow));
                y_pow *= &y;
            }
            sides.push((lhs, Polynomial::from_coeffs(acc)));
        }
        Ok(sides)
    }

    /// `HB_{n+1} = x HB_n - nu n HB_{n-1}
    ///  - (1/(n+1)) sum_l C(n+1,l) B_l (HB^{(k)}_{n+1-l} - HB^{(k-1)}_{n+1-l})`.
    fn recurrence39(&mut self, n: usize, p: &FamilyParams) -> Result<Sides> {
        let hb_k = self.hb_t(&p.nu, p.k)?;
        let hb_km1 = self.hb_t(&p.nu, p.k - 1)?;
        let lhs = hb_k[n + 1].clone();
        let mut rhs = hb_k[n].mul_x();
        if n >= 1 {
            // At n = 0 the nu*n coefficient vanishes, so the negative-index
            // term contributes nothing.
            rhs = &rhs - &hb_k[n - 1].scale(&(&p.nu * rat_int(n as i64)));
        }
        let over = Rational::one() / rat_int(n as i64 + 1);
        for l in 0..=n + 1 {
            let w = binomial_u(n + 1, l) * self.bernoulli(l) * &over;
            if w.is_zero() {
                continue;
            }
            let delta = &hb_k[n + 1 - l] - &hb_km1[n + 1 - l];
            rhs = &rhs - &delta.scale(&w);
        }
        Ok(vec![(lhs, rhs)])
    }

    /// `sum_l C(n,l) B_l HB^{(k-1)}_{n-l} = (n+1) HB^{(k)}_n
    ///  - n(x + 1/2) HB^{(k)}_{n-1} + n(n-1)(nu + 1/12) HB^{(k)}_{n-2}
    ///  + sum_{l<=n-3} C(n,l) B_{n-l} HB^{(k)}_l`, for n >= 3.
    fn rearranged40(&mut self, n: usize, p: &FamilyParams) -> Result<Sides> {
        let hb_k = self.hb_t(&p.nu, p.k)?;
        let hb_km1 = self.hb_t(&p.nu, p.k - 1)?;
        let mut lhs = Polynomial::zero();
        for l in 0..=n {
            let w = binomial_u(n, l) * self.bernoulli(l);
            if !w.is_zero() {
                lhs = &lhs + &hb_km1[n - l].scale(&w);
            }
        }
        let x_plus_half = Polynomial::from_coeffs(vec![rat(1, 2), rat_int(1)]);
        let nn = rat_int(n as i64);
        let mut rhs = hb_k[n].scale(&rat_int(n as i64 + 1));
        rhs = &rhs - &(&x_plus_half * &hb_k[n - 1]).scale(&nn);
        let w2 = &nn * rat_int(n as i64 - 1) * (&p.nu + rat(1, 12));
        rhs = &rhs + &hb_k[n - 2].scale(&w2);
        for l in 0..=n - 3 {
            let w = binomial_u(n, l) * self.bernoulli(n - l);
            if !w.is_zero() {
                rhs = &rhs + &hb_k[l].scale(&w);
            }
        }
        Ok(vec![(lhs, rhs)])
    }

    /// `HB_n = -nu(n-1) HB_{n-2} + x HB_{n-1} + (1/n) sum_l C(n,l) B_l
    /// (HB^{(k-1)}_{n-l} - HB^{(k)}_{n-l})`, for n >= 2.
    fn recurrence43(&mut self, n: usize, p: &FamilyParams) -> Result<Sides> {
        let hb_k = self.hb_t(&p.nu, p.k)?;
        let hb_km1 = self.hb_t(&p.nu, p.k - 1)?;
        let lhs = hb_k[n].clone();
        let mut rhs = &hb_k[n - 1].mul_x() - &hb_k[n - 2].scale(&(&p.nu * rat_int(n as i64 - 1)));
        let over = Rational::one() / rat_int(n as i64);
        for l in 0..=n {
            let w = binomial_u(n, l) * self.bernoulli(l) * &over;
            if w.is_zero() {
                continue;
            }
            let delta = &hb_km1[n - l] - &hb_k[n - l];
            rhs = &rhs + &delta.scale(&w);
        }
        Ok(vec![(lhs, rhs)])
    }

    /// Scalar identity: alternating binomial transform of the mixed numbers
    /// equals a double sum over poly-Bernoulli and Hermite numbers.
    fn evaluation46(&mut self, n: usize, p: &FamilyParams) -> Result<Sides> {
        let hb = self.hb_t(&p.nu, p.k)?;
        let pb_km1 = self.pb_t(p.k - 1);
        let hermite = self.hermite_t(&p.nu)?;
        let mut lhs = Rational::zero();
        for m in 0..=n {
            let term = binomial_u(n + 1, m) * hb[m].coeff(0);
            if (n - m).is_multiple_of(2) {
                lhs += term;
            } else {
                lhs -= term;
            }
        }
        let mut rhs = Rational::zero();
        for m in 0..=n {
            let b_m = pb_km1[m].coeff(0);
            if b_m.is_zero() {
                continue;
            }
            for l in m..=n {
                let h = hermite[n - l].coeff(0);
                if h.is_zero() {
                    continue;
                }
                let term = binomial_u(l, m) * binomial_u(n + 1, l + 1) * &b_m * &h;
                if (l - m) % 2 == 0 {
                    rhs += term;
                } else {
                    rhs -= term;
                }
            }
        }
        Ok(vec![(Polynomial::constant(lhs), Polynomial::constant(rhs))])
    }

    /// `HB_n(x) = sum_m {C(n,m) sum_l C(n-m,l)/C(l+r,r) S_2(l+r,r)
    /// HB_{n-m-l}} B^{(r)}_m(x)` -- expansion over higher-order Bernoulli.
    fn bernoulli_connection50(&mut self, n: usize, p: &FamilyParams) -> Result<Sides> {
        let hb = self.hb_t(&p.nu, p.k)?;
        let bern_r = self.bernoulli_r_t(p.r);
        let r = p.r as usize;
        let lhs = hb[n].clone();
        let mut acc = Vec::new();
        for m in 0..=n {
            let mut w = Rational::zero();
            for l in 0..=n - m {
                let s2 = self.stirling(l + r, r);
                w += binomial_u(n - m, l) / binomial_u(l + r, r) * s2 * hb[n - m - l].coeff(0);
            }
            w *= binomial_u(n, m);
            acc_scaled(&mut acc, &bern_r[m], &w);
        }
        Ok(vec![(lhs, Polynomial::from_coeffs(acc))])
    }

    /// `HB_n(x) = (1-lambda)^{-r} sum_m C(n,m) {sum_l C(r,l) (-lambda)^{r-l}
    /// HB_{n-m}(l)} H^{(r)}_m(x|lambda)` -- expansion over Frobenius-Euler.
    fn frobenius_connection54(&mut self, n: usize, p: &FamilyParams) -> Result<Sides> {
        let hb = self.hb_t(&p.nu, p.k)?;
        let fe = self.frobenius_t(p.r, &p.lambda)?;
        let evals = self.hb_evals(&p.nu, p.k, p.r)?;
        let lhs = hb[n].clone();
        let scale = (Rational::one() - &p.lambda).pow(p.r as i32);
        // (-lambda)^{r-l} and C(r,l), precomputed over the short l-range.
        let lambda_pows: Vec<Rational> = (0..=p.r).map(|i| (-&p.lambda).pow(i as i32)).collect();
        let mut acc = Vec::new();
        for m in 0..=n {
            let mut w = Rational::zero();
            for l in 0..=p.r {
                w += binomial_u(p.r as usize, l as usize)
                    * &lambda_pows[(p.r - l) as usize]
                    * &evals[n - m][l as usize];
            }
            w = w * binomial_u(n, m) / &scale;
            acc_scaled(&mut acc, &fe[m], &w);
        }
        Ok(vec![(lhs, Polynomial::from_coeffs(acc))])
    }

    /// Lowering for all three `(nu, k)` families: `d/dx p_n = n p_{n-1}`.
    /// At `n = 0` the right side is zero by the vanishing coefficient.
    fn lowering25(&mut self, n: usize, p: &FamilyParams) -> Result<Sides> {
        let tables = [
            self.pb_t(p.k),
            self.hermite_t(&p.nu)?,
            self.hb_t(&p.nu, p.k)?,
        ];
        let sides = tables
            .iter()
            .map(|t| {
                let lhs = t[n].derivative();
                let rhs = if n == 0 {
                    Polynomial::zero()
                } else {
                    t[n - 1].scale(&rat_int(n as i64))
                };
                (lhs, rhs)
            })
            .collect();
        Ok(sides)
    }

    /// `<g f^j | s_n> = n! delta_{n,j}` for each concrete pair, packaged as
    /// the expansion row equaling `x^n`.
    fn biorthogonality(&mut self, n: usize, p: &FamilyParams) -> Result<Sides> {
        let keys = [
            BioKey::Hb(p.k, p.nu.clone()),
            BioKey::Pb(p.k),
            BioKey::Hermite(p.nu.clone()),
            BioKey::BernoulliR(p.r),
            BioKey::Frobenius(p.r, p.lambda.clone()),
        ];
        let expected = Polynomial::monomial(n, Rational::one());
        keys.into_iter()
            .map(|key| Ok(((*self.bio_row(key, n)?).clone(), expected.clone())))
            .collect()
    }

    /// One pairing row `j -> <g t^j | s_n> / n!` for a concrete pair. All
    /// pairs here have `f = t`, so `<g t^j | s_n> = sum_{i>=j} g_{i-j} i!
    /// s_{n,i}`. Rows depend only on the pair's own parameters and are
    /// cached accordingly.
    fn bio_row(&mut self, key: BioKey, n: usize) -> Result<Rc<Polynomial>> {
        if let Some(row) = self.bio_rows.get(&(key.clone(), n)) {
            return Ok(row.clone());
        }
        let (g, table): (Rc<TruncatedSeries>, Table) = match &key {
            BioKey::Hb(k, nu) => (self.hb_g(&nu.clone(), *k)?, self.hb_t(&nu.clone(), *k)?),
            BioKey::Pb(k) => (self.pb_g(*k), self.pb_t(*k)),
            BioKey::Hermite(nu) => {
                let nu = nu.clone();
                (self.hermite_g(&nu)?, self.hermite_t(&nu)?)
            }
            BioKey::BernoulliR(r) => (self.bernoulli_r_g(*r), self.bernoulli_r_t(*r)),
            BioKey::Frobenius(r, lambda) => {
                let lambda = lambda.clone();
                (
                    self.frobenius_g(*r, &lambda)?,
                    self.frobenius_t(*r, &lambda)?,
                )
            }
        };
        let g_coeffs = g.coeffs();
        let s_coeffs = table[n].coeffs();
        let coeffs: Vec<Rational> = (0..=n)
            .map(|j| {
                let mut acc = Rational::zero();
                for i in j..=n {
                    let gi = &g_coeffs[i - j];
                    let si = &s_coeffs[i];
                    if !gi.is_zero() && !si.is_zero() {
                        acc += gi * si * &self.factorials[i];
                    }
                }
                acc / &self.factorials[n]
            })
            .collect();
        let row = Rc::new(Polynomial::from_coeffs(coeffs));
        self.bio_rows.insert((key, n), row.clone());
        Ok(row)
    }

    /// `<f | x p> = <df/dt | p>` on two deterministic series/polynomial
    /// pairs built from the parameters, with one spare truncation order.
    fn eq14_duality(&mut self, n: usize, p: &FamilyParams) -> Result<Sides> {
        let ramp = Polynomial::from_coeffs((0..=n).map(|i| rat_int(i as i64 + 1)).collect());
        let kernel = self.hb_kernel(&p.nu, p.k)?;
        let exp_nu = TruncatedSeries::exp_t(&p.nu, n + 2);
        let herm_n = self.hermite_t(&p.nu)?[n].clone();
        let cases: [(&TruncatedSeries, Polynomial); 2] = [(&kernel, ramp), (&exp_nu, herm_n)];
        let mut sides = Vec::with_capacity(cases.len());
        for (f, poly) in cases {
            let lhs = umbral::pair(f, &poly.mul_x())?;
            let rhs = umbral::pair(&f.derivative(), &poly)?;
            sides.push((Polynomial::constant(lhs), Polynomial::constant(rhs)));
        }
        Ok(sides)
    }

    // -- cached g-series for the concrete pairs -----------------------------

    fn hb_g(&mut self, nu: &Rational, k: i32) -> Result<Rc<TruncatedSeries>> {
        let key = (k, nu.clone());
        if let Some(g) = self.hb_g.get(&key) {
            return Ok(g.clone());
        }
        let pair = families::hb_pair(nu, k, self.table_len())?;
        let g = Rc::new(pair.g().clone());
        self.hb_g.insert(key, g.clone());
        Ok(g)
    }

    fn pb_g(&mut self, k: i32) -> Rc<TruncatedSeries> {
        let len = self.table_len();
        self.pb_g
            .entry(k)
            .or_insert_with(|| Rc::new(families::poly_bernoulli_pair(k, len).g().clone()))
            .clone()
    }

    fn hermite_g(&mut self, nu: &Rational) -> Result<Rc<TruncatedSeries>> {
        if let Some(g) = self.hermite_g.get(nu) {
            return Ok(g.clone());
        }
        let pair = families::hermite_pair(nu, self.table_len())?;
        let g = Rc::new(pair.g().clone());
        self.hermite_g.insert(nu.clone(), g.clone());
        Ok(g)
    }

    fn bernoulli_r_g(&mut self, r: u32) -> Rc<TruncatedSeries> {
        let len = self.table_len();
        self.bernoulli_r_g
            .entry(r)
            .or_insert_with(|| Rc::new(families::bernoulli_order_pair(r, len).g().clone()))
            .clone()
    }

    fn frobenius_g(&mut self, r: u32, lambda: &Rational) -> Result<Rc<TruncatedSeries>> {
        let key = (r, lambda.clone());
        if let Some(g) = self.frobenius_g.get(&key) {
            return Ok(g.clone());
        }
        let pair = families::frobenius_euler_pair(r, lambda, self.table_len())?;
        let g = Rc::new(pair.g().clone());
        self.frobenius_g.insert(key, g.clone());
        Ok(g)
    }

    /// The mixed kernel at order `n_max + 2`; pairing against polynomials of
    /// any lower degree only reads a prefix, so one copy serves every level.
    fn hb_kernel(&mut self, nu: &Rational, k: i32) -> Result<Rc<TruncatedSeries>> {
        let key = (k, nu.clone());
        if let Some(s) = self.hb_kernel.get(&key) {
            return Ok(s.clone());
        }
        let s = Rc::new(families::hb_kernel(nu, k, self.n_max + 2)?);
        self.hb_kernel.insert(key, s.clone());
        Ok(s)
    }

    /// `HB_j(l)` for `j <= n_max + 1` and integer `l <= max(8, r)`.
    fn hb_evals(&mut self, nu: &Rational, k: i32, r: u32) -> Result<Rc<Vec<Vec<Rational>>>> {
        if r > self.eval_l_max {
            self.eval_l_max = r;
            self.hb_evals.clear();
        }
        let key = (k, nu.clone());
        if let Some(e) = self.hb_evals.get(&key) {
            return Ok(e.clone());
        }
        let table = self.hb_t(nu, k)?;
        let points: Vec<Rational> = (0..=self.eval_l_max).map(|l| rat_int(l as i64)).collect();
        let evals: Vec<Vec<Rational>> = table
            .iter()
            .map(|poly| points.iter().map(|x| poly.eval(x)).collect())
            .collect();
        let e = Rc::new(evals);
        self.hb_evals.insert(key, e.clone());
        Ok(e)
    }
}

type Sides = Vec<(Polynomial, Polynomial)>;

/// `acc += w * p`, accumulating into a raw coefficient vector to avoid
/// intermediate polynomial allocations in the long identity sums.
fn acc_scaled(acc: &mut Vec<Rational>, p: &Polynomial, w: &Rational) {
    if w.is_zero() {
        return;
    }
    let coeffs = p.coeffs();
    if acc.len() < coeffs.len() {
        acc.resize(coeffs.len(), Rational::zero());
    }
    for (i, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            acc[i] += c * w;
        }
    }
}

/// `(-nu/2)^m`.
fn neg_half_pow(nu: &Rational, m: usize) -> Rational {
    (-nu / rat_int(2)).pow(m as i32)
}

/// `w_j = (-1)^j sum_{m=j}^{m_top} C(m,j)/(m+1)^k`: the weight the shifted
/// argument `x - j` picks up in the polylog-kernel expansions. Accumulated by
/// walking the Pascal triangle row by row.
fn alternating_polylog_weights(m_top: usize, k: i32) -> Vec<Rational> {
    let mut weights = vec![Rational::zero(); m_top + 1];
    let mut row: Vec<BigInt> = vec![BigInt::from(1)];
    for m in 0..=m_top {
        if m > 0 {
            let mut next = Vec::with_capacity(m + 1);
            next.push(BigInt::from(1));
            for j in 1..m {
                next.push(&row[j - 1] + &row[j]);
            }
            next.push(BigInt::from(1));
            row = next;
        }
        let q = int_pow(m as i64 + 1, -k);
        for (j, c) in row.iter().enumerate() {
            weights[j] += Rational::from_integer(c.clone()) * &q;
        }
    }
    for (j, w) in weights.iter_mut().enumerate() {
        if j % 2 == 1 {
            *w = -w.clone();
        }
    }
    weights
}

/// The shifted-Hermite sum of `thm27`, with the `m`-sum running to `m_top`
/// (the theorem takes `m_top = n`; larger values must not change the result,
/// since `(1 - e^{-t})^m` annihilates degree-`n` polynomials for `m > n`).
pub fn thm27_sum(h_n: &Polynomial, m_top: usize, k: i32) -> Polynomial {
    let weights = alternating_polylog_weights(m_top, k);
    let mut acc = Vec::new();
    for (j, wj) in weights.iter().enumerate() {
        if wj.is_zero() {
            continue;
        }
        acc_scaled(&mut acc, &h_n.shift(&rat_int(-(j as i64))), wj);
    }
    Polynomial::from_coeffs(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{hb, poly_bernoulli};

    fn params(nu: Rational, k: i32) -> FamilyParams {
        FamilyParams::new(nu, k, 1, rat_int(2)).unwrap()
    }

    fn params_full(nu: Rational, k: i32, r: u32, lambda: Rational) -> FamilyParams {
        FamilyParams::new(nu, k, r, lambda).unwrap()
    }

    #[test]
    fn prop26_small_example() {
        // At n = 2, nu = 1, k = 1 both sides are B_2^{(1)}(x) - nu, i.e.
        // x^2 + x + 1/6 - 1.
        let report = check_identity(IdentityId::Prop26, 2, &params(rat_int(1), 1)).unwrap();
        assert!(report.equal);
        let expected = Polynomial::from_coeffs(vec![rat(-5, 6), rat_int(1), rat_int(1)]);
        assert_eq!(report.lhs, expected);
        assert_eq!(report.rhs, expected);
        assert!(report.diff.is_zero());
    }

    #[test]
    fn prop26_matches_manual_sum() {
        // Independent assembly of the right side for one point.
        let nu = rat(1, 2);
        let k = -1;
        let n = 5;
        let mut manual = Polynomial::zero();
        for m in 0..=n / 2 {
            let w = binomial_u(n, 2 * m)
                * Rational::from_integer(crate::combinatorics::factorial(2 * m))
                / Rational::from_integer(crate::combinatorics::factorial(m))
                * neg_half_pow(&nu, m);
            manual = &manual + &poly_bernoulli(n - 2 * m, k).scale(&w);
        }
        assert_eq!(manual, hb(n, &nu, k).unwrap());
    }

    #[test]
    fn all_identities_pass_at_small_levels() {
        let p = params_full(rat(1, 2), 2, 2, rat_int(-1));
        let mut ws = Workspace::new(8);
        for id in IdentityId::ALL {
            for n in id.n_floor()..=8 {
                let report = ws.check(id, n, &p).unwrap();
                assert!(
                    report.equal,
                    "{id} fails at n = {n}: diff = {}",
                    report.diff
                );
            }
        }
    }

    #[test]
    fn negative_k_levels_pass() {
        let p = params_full(rat_int(3), -2, 1, rat(5, 7));
        let mut ws = Workspace::new(6);
        for id in IdentityId::ALL {
            for n in id.n_floor()..=6 {
                assert!(ws.check(id, n, &p).unwrap().equal, "{id} at n = {n}");
            }
        }
    }

    #[test]
    fn evaluation46_base_case() {
        // n = 0: both sides are 1.
        let report = check_identity(IdentityId::Evaluation46, 0, &params(rat(1, 2), 2)).unwrap();
        assert!(report.equal);
        assert_eq!(report.lhs, Polynomial::one());
        assert_eq!(report.rhs, Polynomial::one());
    }

    #[test]
    fn frobenius54_degree_one_example() {
        let p = params_full(rat_int(1), 1, 1, rat_int(2));
        let report = check_identity(IdentityId::FrobeniusConnection54, 1, &p).unwrap();
        assert!(report.equal);
        assert_eq!(
            report.lhs,
            Polynomial::from_coeffs(vec![rat(1, 2), rat_int(1)])
        );
    }

    #[test]
    fn lowering25_level_one() {
        let report = check_identity(IdentityId::Lowering25, 1, &params(rat_int(1), 1)).unwrap();
        assert!(report.equal);
        assert_eq!(report.lhs, Polynomial::one());
    }

    #[test]
    fn recurrence39_holds_at_level_zero() {
        // The nu*n*HB_{n-1} term vanishes by its coefficient at n = 0.
        for k in [-1, 0, 2] {
            let report =
                check_identity(IdentityId::Recurrence39, 0, &params(rat(1, 2), k)).unwrap();
            assert!(report.equal, "k = {k}");
        }
    }

    #[test]
    fn floors_are_enforced() {
        let p = params(rat_int(1), 1);
        assert_eq!(
            check_identity(IdentityId::Rearranged40, 2, &p),
            Err(Error::OutOfStatedRange {
                identity: "rearranged40",
                n: 2,
                floor: 3
            })
        );
        assert_eq!(
            check_identity(IdentityId::Recurrence43, 1, &p),
            Err(Error::OutOfStatedRange {
                identity: "recurrence43",
                n: 1,
                floor: 2
            })
        );
    }

    #[test]
    fn thm27_sum_is_stable_under_longer_m_sum() {
        // Extending the m-sum beyond n must not change the result.
        let nu = rat(1, 2);
        let k = 2;
        for n in 0..=8usize {
            let h_n = crate::families::hermite(n, &nu).unwrap();
            let base = thm27_sum(&h_n, n, k);
            let extended = thm27_sum(&h_n, n + 5, k);
            assert_eq!(base, extended, "n = {n}");
            assert_eq!(base, hb(n, &nu, k).unwrap());
        }
    }

    #[test]
    fn bernoulli50_at_r_zero_collapses_to_monomial_expansion() {
        // S_2(l, 0) = delta_{l,0} turns the coefficient into C(n,m) HB_{n-m}.
        let p = params_full(rat(1, 2), 1, 0, rat_int(2));
        let n = 6;
        let report = check_identity(IdentityId::BernoulliConnection50, n, &p).unwrap();
        assert!(report.equal);
        let hb_table = families::hb_table(n, &p.nu, p.k).unwrap();
        let mut expected = Polynomial::zero();
        for m in 0..=n {
            let w = binomial_u(n, m) * hb_table[n - m].coeff(0);
            expected = &expected + &Polynomial::monomial(m, w);
        }
        assert_eq!(report.rhs, expected);
    }

    #[test]
    fn fault_injection_flips_equal() {
        let p = params(rat_int(1), 1);
        let mut ws = Workspace::new(4);
        let clean = ws
            .check_with_fault(IdentityId::Prop26, 3, &p, false)
            .unwrap();
        assert!(clean.equal);
        let faulty = ws
            .check_with_fault(IdentityId::Prop26, 3, &p, true)
            .unwrap();
        assert!(!faulty.equal);
        assert_eq!(faulty.diff, Polynomial::constant(rat_int(-1)));
    }

    #[test]
    fn verify_grid_orders_and_passes() {
        let grid = GridSpec {
            n_max: 4,
            nu_values: vec![rat_int(1), rat(1, 2)],
            k_values: vec![-1, 1],
            r_values: vec![0, 1],
            lambda_values: vec![rat_int(2)],
        };
        let ids = [IdentityId::Prop26, IdentityId::BernoulliConnection50];
        let reports = verify_grid(&ids, &grid, None).unwrap();
        // prop26 ignores r: 5 n-values x 2 nu x 2 k; the connection uses r.
        assert_eq!(reports.len(), 5 * 2 * 2 + 5 * 2 * 2 * 2);
        assert!(reports.iter().all(|r| r.equal));
        // Deterministic ordering: first block is prop26 at n = 0.
        assert_eq!(reports[0].identity, IdentityId::Prop26);
        assert_eq!(reports[0].n, 0);
        let reports2 = verify_grid(&ids, &grid, None).unwrap();
        assert_eq!(reports, reports2);
    }

    #[test]
    fn verify_grid_fault_reports_failures() {
        let grid = GridSpec {
            n_max: 3,
            nu_values: vec![rat_int(1)],
            k_values: vec![1],
            r_values: vec![0],
            lambda_values: vec![rat_int(2)],
        };
        let ids = [IdentityId::Prop26, IdentityId::Thm27];
        let reports = verify_grid(&ids, &grid, Some(IdentityId::Thm27)).unwrap();
        for r in &reports {
            assert_eq!(r.equal, r.identity != IdentityId::Thm27);
        }
    }

    #[test]
    fn empty_id_set_gives_empty_reports() {
        let reports = verify_grid(&[], &GridSpec::quick(), None).unwrap();
        assert!(reports.is_empty());
    }

    #[test]
    fn json_record_shape() {
        let p = params_full(rat(1, 2), -1, 2, rat_int(-1));
        let report = check_identity(IdentityId::FrobeniusConnection54, 2, &p).unwrap();
        let value = report.to_json();
        assert_eq!(value["identity"], "frobenius_connection54");
        assert_eq!(value["equal"], true);
        assert_eq!(value["params"]["n"], 2);
        assert_eq!(value["params"]["nu"], "1/2");
        assert_eq!(value["params"]["k"], -1);
        assert_eq!(value["params"]["r"], 2);
        assert_eq!(value["params"]["lambda"], "-1");
        assert_eq!(value["diff_coefficients"].as_array().unwrap().len(), 0);
        // Identities that ignore r and lambda omit them from the record.
        let report = check_identity(IdentityId::Prop26, 1, &p).unwrap();
        let value = report.to_json();
        assert!(value["params"].get("r").is_none());
        assert!(value["params"].get("lambda").is_none());
    }

    #[test]
    fn identity_id_round_trips() {
        for id in IdentityId::ALL {
            assert_eq!(id.as_str().parse::<IdentityId>().unwrap(), id);
        }
        assert!("thm99".parse::<IdentityId>().is_err());
    }
}
