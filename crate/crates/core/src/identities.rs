//! Identity checkers.
//!
//! Each checker evaluates both sides of one identity along separate code
//! paths and records a row per n. The only shared inputs are the sieve and
//! p̄ values. Left sides are built from A(a, α, β; n) using S(k, n) from the
//! series route. Right sides come from divisor sums, factorization-based
//! arithmetic functions and the M̄_k generating function.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock, RwLock};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{
    divisor_sums, eval, ArithError, ArithmeticSequence, Domain, ModulusParams, SequenceKind,
    Sieve, Value,
};
use crate::coeff::{Coefficient, Number, Real};
use crate::overpartitions::{
    a_from_s_tables, distinct_nonoverlined_sum, pbar_table, s_tables, OverpartitionError, STable,
};
use crate::qseries::{
    euler_product, gauss_theta, mbar_gf, overpartition_gf, ProductSign, TruncatedSeries,
};

/// Relative residual allowed in the float (von Mangoldt) domain.
pub const FLOAT_REL_TOL: f64 = 1e-9;
/// Absolute floor under [`FLOAT_REL_TOL`].
pub const FLOAT_ABS_FLOOR: f64 = 1e-12;
/// Enumeration-backed rows in the φ suite stop here.
pub const SUITE_ENUMERATION_MAX: u64 = 25;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum IdentityError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Overpartition(#[from] OverpartitionError),
    #[error("sequence `{seq}` takes a negative value at {n}; the inequality needs nonnegative weights")]
    NegativeWeights { seq: String, n: u64 },
}

/// Parameters a report was computed for; absent fields do not apply.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seq: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
}

impl Params {
    fn modulus(seq: &ArithmeticSequence, m: ModulusParams) -> Self {
        Params {
            seq: Some(seq.name()),
            alpha: Some(m.alpha()),
            beta: Some(m.beta()),
            k: None,
        }
    }

    fn with_k(mut self, k: u64) -> Self {
        self.k = Some(k);
        self
    }

    fn only_k(k: u64) -> Self {
        Params {
            k: Some(k),
            ..Params::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRow {
    pub n: u64,
    pub lhs: Number,
    pub rhs: Number,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub identity_id: String,
    pub params: Params,
    /// Inclusive n-range checked.
    pub range: (u64, u64),
    pub rows: Vec<CheckRow>,
    /// Observations that are not violations.
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn violations(&self) -> impl Iterator<Item = &CheckRow> {
        self.rows.iter().filter(|r| !r.pass)
    }

    fn build(
        identity_id: impl Into<String>,
        params: Params,
        rows: Vec<CheckRow>,
        started: Instant,
    ) -> Self {
        let range = match (rows.first(), rows.last()) {
            (Some(a), Some(b)) => (a.n, b.n),
            _ => (0, 0),
        };
        IdentityReport {
            identity_id: identity_id.into(),
            params,
            range,
            rows,
            notes: Vec::new(),
            elapsed: started.elapsed(),
        }
    }
}

fn agree<C: Coefficient>(lhs: &C, rhs: &C) -> bool {
    if C::EXACT {
        lhs == rhs
    } else {
        let mut diff = lhs.clone();
        diff -= rhs;
        let diff = diff.to_f64().abs();
        diff <= FLOAT_ABS_FLOOR || diff <= FLOAT_REL_TOL * lhs.to_f64().abs().max(rhs.to_f64().abs())
    }
}

fn equality_row<C: Coefficient>(n: u64, lhs: C, rhs: C) -> CheckRow {
    CheckRow {
        n,
        pass: agree(&lhs, &rhs),
        lhs: lhs.to_number(),
        rhs: rhs.to_number(),
    }
}

/// v(n) + 2 Σ_{j=1}^{k} (−1)^j v(n − j²), with v = 0 at negative arguments;
/// `k = None` sums every j with j² ≤ n.
fn theta_combination<C: Coefficient>(values: &[C], n: usize, k: Option<u64>) -> C {
    let mut acc = values[n].clone();
    let mut j = 1usize;
    while j * j <= n && k.is_none_or(|k| j as u64 <= k) {
        let term = values[n - j * j].clone() + values[n - j * j].clone();
        if j.is_multiple_of(2) {
            acc += &term;
        } else {
            acc -= &term;
        }
        j += 1;
    }
    acc
}

fn signed<C: Coefficient>(value: C, k: u64) -> C {
    if k.is_multiple_of(2) {
        value
    } else {
        -value
    }
}

/// Σ_{j=1}^{n} w(j) · t(n − j), with `w[j-1] = w(j)`.
fn convolve<C: Coefficient>(weights: &[C], table: &[C], n: usize) -> C {
    let mut acc = C::zero();
    for j in 1..=n {
        acc.add_product(&weights[j - 1], &table[n - j]);
    }
    acc
}

/// `[f(1), ..., f(n_max)]` for a named function, read off the factorization.
fn function_values(sieve: &Sieve, name: &str, n_max: u64) -> Result<Vec<BigInt>, ArithError> {
    (1..=n_max)
        .map(|n| match eval(sieve, name, n)? {
            Value::Int(v) => Ok(v),
            Value::Float(_) => Err(ArithError::DomainMismatch(name.into())),
        })
        .collect()
}

/// Shared, lazily built inputs for checks up to `n_max`.
///
/// Every cache is write-once; a `Verifier` can be shared across threads.
#[derive(Debug)]
pub struct Verifier {
    n_max: u64,
    sieve: Arc<Sieve>,
    s_tables: OnceLock<Vec<STable>>,
    pbar_gf: OnceLock<Vec<BigInt>>,
    mbar: RwLock<BTreeMap<u64, Arc<Vec<BigInt>>>>,
}

impl Verifier {
    pub fn new(n_max: u64) -> Self {
        Verifier {
            n_max,
            sieve: Arc::new(Sieve::new(n_max + 1)),
            s_tables: OnceLock::new(),
            pbar_gf: OnceLock::new(),
            mbar: RwLock::new(BTreeMap::new()),
        }
    }

    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    pub fn sieve(&self) -> &Arc<Sieve> {
        &self.sieve
    }

    pub fn sequence(&self, kind: SequenceKind) -> ArithmeticSequence {
        ArithmeticSequence::new(kind, self.sieve.clone())
    }

    fn s_tables(&self) -> &[STable] {
        self.s_tables.get_or_init(|| s_tables(self.n_max))
    }

    /// p̄(0..=n_max) from the product generating function.
    fn pbar_gf(&self) -> &[BigInt] {
        self.pbar_gf
            .get_or_init(|| overpartition_gf(self.n_max as usize).into_coeffs())
    }

    /// M̄_k(0..=n_max) from its generating function.
    pub fn mbar(&self, k: u64) -> Arc<Vec<BigInt>> {
        if let Some(v) = self.mbar.read().expect("mbar cache").get(&k) {
            return v.clone();
        }
        let table = Arc::new(mbar_gf(k as usize, self.n_max as usize).into_coeffs());
        self.mbar
            .write()
            .expect("mbar cache")
            .entry(k)
            .or_insert(table)
            .clone()
    }

    fn a_values<C: Coefficient>(
        &self,
        a: &ArithmeticSequence,
        m: ModulusParams,
    ) -> Result<Vec<C>, IdentityError> {
        Ok(a_from_s_tables(a, m, self.s_tables())?)
    }

    /// p̄(n) + 2 Σ (−1)^j p̄(n − j²) = δ_{0,n}, p̄ from the product gf.
    pub fn check_rec(&self) -> IdentityReport {
        let started = Instant::now();
        let p = self.pbar_gf();
        let rows = (0..=self.n_max)
            .map(|n| {
                let lhs = theta_combination(p, n as usize, None);
                let rhs = if n == 0 { BigInt::one() } else { BigInt::zero() };
                equality_row(n, lhs, rhs)
            })
            .collect();
        IdentityReport::build("rec", Params::default(), rows, started)
    }

    /// (q;q)∞ / (−q;q)∞ = 1 + 2 Σ (−1)ⁿ q^{n²}, coefficient by coefficient.
    pub fn check_gauss(&self) -> IdentityReport {
        let started = Instant::now();
        let order = self.n_max as usize;
        let lhs = euler_product(ProductSign::Minus, order)
            .mul(
                &euler_product(ProductSign::Plus, order)
                    .invert()
                    .expect("unit constant term"),
            )
            .expect("equal orders");
        let rhs = gauss_theta(None, order);
        IdentityReport::build("gauss", Params::default(), series_rows(&lhs, &rhs), started)
    }

    /// (−q;q)∞/(q;q)∞ · (1 + 2 Σ_{j≤k} (−1)^j q^{j²}) − 1 = (−1)^k Σ M̄_k(n) qⁿ.
    pub fn check_eq4(&self, k: u64) -> IdentityReport {
        let started = Instant::now();
        let order = self.n_max as usize;
        let lhs = overpartition_gf(order)
            .mul(&gauss_theta(Some(k as usize), order))
            .and_then(|s| s.sub(&TruncatedSeries::one(order)))
            .expect("equal orders");
        let mbar = mbar_gf(k as usize, order);
        let rhs = if k.is_multiple_of(2) { mbar } else { -mbar };
        IdentityReport::build("eq4", Params::only_k(k), series_rows(&lhs, &rhs), started)
    }

    /// (−1)^k (A(n) + 2 Σ_{j≤k} (−1)^j A(n − j²) − B(n)) = Σ_j B(j) M̄_k(n − j).
    pub fn check_th2(
        &self,
        a: &ArithmeticSequence,
        m: ModulusParams,
        k: u64,
    ) -> Result<IdentityReport, IdentityError> {
        match a.domain() {
            Domain::Exact => self.th2_in::<BigInt>(a, m, k),
            Domain::Float => self.th2_in::<Real>(a, m, k),
        }
    }

    fn theorem_sides<C: Coefficient>(
        &self,
        a: &ArithmeticSequence,
        m: ModulusParams,
        k: u64,
    ) -> Result<Vec<(u64, C, C)>, IdentityError> {
        let a_vals: Vec<C> = self.a_values(a, m)?;
        let b: Vec<C> = divisor_sums(a, m, self.n_max)?;
        let mbar: Vec<C> = self.mbar(k).iter().map(C::from_bigint).collect();
        Ok((1..=self.n_max)
            .map(|n| {
                let idx = n as usize;
                let mut inner = theta_combination(&a_vals, idx, Some(k));
                inner -= &b[idx - 1];
                (n, signed(inner, k), convolve(&b, &mbar, idx))
            })
            .collect())
    }

    fn th2_in<C: Coefficient>(
        &self,
        a: &ArithmeticSequence,
        m: ModulusParams,
        k: u64,
    ) -> Result<IdentityReport, IdentityError> {
        let started = Instant::now();
        let rows = self
            .theorem_sides::<C>(a, m, k)?
            .into_iter()
            .map(|(n, lhs, rhs)| equality_row(n, lhs, rhs))
            .collect();
        Ok(IdentityReport::build(
            "th2",
            Params::modulus(a, m).with_k(k),
            rows,
            started,
        ))
    }

    /// The sign pattern of the theorem's left side for nonnegative weights.
    ///
    /// A row passes when the left side is ≥ 0, and > 0 at every
    /// n ≥ (k+1)² where the right-side convolution is nonzero. Points
    /// n ≥ (k+1)² with a zero convolution are listed in the notes.
    pub fn check_c3(
        &self,
        a: &ArithmeticSequence,
        m: ModulusParams,
        k: u64,
    ) -> Result<IdentityReport, IdentityError> {
        match a.domain() {
            Domain::Exact => self.c3_in::<BigInt>(a, m, k),
            Domain::Float => self.c3_in::<Real>(a, m, k),
        }
    }

    fn c3_in<C: Coefficient>(
        &self,
        a: &ArithmeticSequence,
        m: ModulusParams,
        k: u64,
    ) -> Result<IdentityReport, IdentityError> {
        let started = Instant::now();
        let weights: Vec<C> = a.values(self.n_max.max(1))?;
        if let Some(i) = weights.iter().position(|w| w.signum_i8() < 0) {
            return Err(IdentityError::NegativeWeights {
                seq: a.name(),
                n: i as u64 + 1,
            });
        }
        let relevant = m.max_index(self.n_max) as usize;
        let nonzero = weights[..relevant.min(weights.len())]
            .iter()
            .any(|w| !w.is_zero());
        let threshold = (k + 1) * (k + 1);
        let mut zero_rhs = Vec::new();
        let rows = self
            .theorem_sides::<C>(a, m, k)?
            .into_iter()
            .map(|(n, lhs, rhs)| {
                let strict_needed = n >= threshold && rhs.signum_i8() != 0;
                if n >= threshold && rhs.signum_i8() == 0 && nonzero {
                    zero_rhs.push(n);
                }
                let sign = lhs.signum_i8();
                let pass = sign >= 0 && (!strict_needed || sign > 0);
                CheckRow {
                    n,
                    lhs: lhs.to_number(),
                    rhs: rhs.to_number(),
                    pass,
                }
            })
            .collect();
        let mut report =
            IdentityReport::build("c3", Params::modulus(a, m).with_k(k), rows, started);
        if !zero_rhs.is_empty() {
            report.notes.push(format!(
                "right side vanishes at n >= (k+1)^2 for n in {zero_rhs:?}; strictness not asserted there"
            ));
        }
        Ok(report)
    }

    /// A(n) + 2 Σ_{j≥1} (−1)^j A(n − j²) = B(n).
    pub fn check_th1(
        &self,
        a: &ArithmeticSequence,
        m: ModulusParams,
    ) -> Result<IdentityReport, IdentityError> {
        match a.domain() {
            Domain::Exact => self.th1_in::<BigInt>(a, m),
            Domain::Float => self.th1_in::<Real>(a, m),
        }
    }

    fn th1_in<C: Coefficient>(
        &self,
        a: &ArithmeticSequence,
        m: ModulusParams,
    ) -> Result<IdentityReport, IdentityError> {
        let started = Instant::now();
        let a_vals: Vec<C> = self.a_values(a, m)?;
        let b: Vec<C> = divisor_sums(a, m, self.n_max)?;
        let rows = (1..=self.n_max)
            .map(|n| {
                let lhs = theta_combination(&a_vals, n as usize, None);
                equality_row(n, lhs, b[n as usize - 1].clone())
            })
            .collect();
        Ok(IdentityReport::build(
            "th1",
            Params::modulus(a, m),
            rows,
            started,
        ))
    }

    /// p̄(n) = Σ_{k=1}^{n+1} S(k, n+1) μ(k), p̄ from the recurrence.
    pub fn check_mu_decomposition(&self) -> Result<IdentityReport, IdentityError> {
        let started = Instant::now();
        let p = pbar_table(self.n_max);
        let tables = s_tables(self.n_max + 1);
        let mu = function_values(&self.sieve, "mu", self.n_max + 1)?;
        let rows = (0..=self.n_max)
            .map(|n| {
                let t = &tables[n as usize + 1];
                let rhs: BigInt = (1..=n + 1).map(|k| t.get(k) * &mu[k as usize - 1]).sum();
                equality_row(n, p[n as usize].clone(), rhs)
            })
            .collect();
        Ok(IdentityReport::build(
            "mu_decomp",
            Params::default(),
            rows,
            started,
        ))
    }

    /// Reports for one specialization f of the theorem at (α, β) = (1, 0),
    /// with B(f, 1, 0; n) replaced by the closed form `target(n)`:
    /// the p̄ convolution, the truncated form for k = 1..=k_max and the
    /// limiting form.
    fn specialization(
        &self,
        prefix: &str,
        kind: SequenceKind,
        target: &[BigInt],
        k_max: u64,
    ) -> Result<Vec<IdentityReport>, IdentityError> {
        let a = self.sequence(kind);
        let u = ModulusParams::unrestricted();
        let a_vals: Vec<BigInt> = self.a_values(&a, u)?;
        let p = pbar_table(self.n_max);
        let params = Params::modulus(&a, u);
        let mut reports = Vec::new();

        let started = Instant::now();
        let rows = (0..=self.n_max)
            .map(|n| equality_row(n, a_vals[n as usize].clone(), convolve(target, &p, n as usize)))
            .collect();
        reports.push(IdentityReport::build(
            format!("{prefix}.pbar_convolution"),
            params.clone(),
            rows,
            started,
        ));

        for k in 1..=k_max {
            let started = Instant::now();
            let mbar = self.mbar(k);
            let rows = (1..=self.n_max)
                .map(|n| {
                    let idx = n as usize;
                    let mut inner = theta_combination(&a_vals, idx, Some(k));
                    inner -= &target[idx - 1];
                    equality_row(n, signed(inner, k), convolve(target, &mbar, idx))
                })
                .collect();
            reports.push(IdentityReport::build(
                format!("{prefix}.truncated"),
                params.clone().with_k(k),
                rows,
                started,
            ));
        }

        let started = Instant::now();
        let rows = (1..=self.n_max)
            .map(|n| {
                let lhs = theta_combination(&a_vals, n as usize, None);
                equality_row(n, lhs, target[n as usize - 1].clone())
            })
            .collect();
        reports.push(IdentityReport::build(
            format!("{prefix}.limit"),
            params,
            rows,
            started,
        ));
        Ok(reports)
    }

    /// Euler φ at (1, 0), where B(φ, 1, 0; n) = n, plus the parity remark
    /// and the enumeration count of distinct non-overlined parts.
    pub fn check_phi_suite(&self, k_max: u64) -> Result<Vec<IdentityReport>, IdentityError> {
        let ids: Vec<BigInt> = (1..=self.n_max).map(BigInt::from).collect();
        let mut reports = self.specialization("phi", SequenceKind::Phi, &ids, k_max)?;

        let a = self.sequence(SequenceKind::Phi);
        let u = ModulusParams::unrestricted();
        let a_vals: Vec<BigInt> = self.a_values(&a, u)?;

        let started = Instant::now();
        let rows = (0..=self.n_max)
            .map(|n| {
                let lhs = &a_vals[n as usize] % 2;
                equality_row(n, lhs, BigInt::from(n % 2))
            })
            .collect();
        reports.push(IdentityReport::build(
            "phi.parity",
            Params::modulus(&a, u),
            rows,
            started,
        ));

        let started = Instant::now();
        let p = pbar_table(self.n_max);
        let rows = (0..=self.n_max.min(SUITE_ENUMERATION_MAX))
            .map(|n| {
                let brute = distinct_nonoverlined_sum(n)?;
                Ok(equality_row(n, brute, convolve(&ids, &p, n as usize)))
            })
            .collect::<Result<Vec<_>, IdentityError>>()?;
        reports.push(IdentityReport::build(
            "phi.distinct_parts_enumeration",
            Params::default(),
            rows,
            started,
        ));
        Ok(reports)
    }

    /// Prime parts: χ at (1, 0), where B(χ, 1, 0; n) = ω(n).
    pub fn check_prime_suite(&self, k_max: u64) -> Result<Vec<IdentityReport>, IdentityError> {
        let omega = function_values(&self.sieve, "omega", self.n_max)?;
        self.specialization("prime", SequenceKind::Chi, &omega, k_max)
    }

    /// Squarefree parts: |μ| with 2^ω(n), the alternating statistic on odd
    /// and even n, and 2^ω with σ₀(n²).
    pub fn check_squarefree_suite(&self, k_max: u64) -> Result<Vec<IdentityReport>, IdentityError> {
        let two_pow = function_values(&self.sieve, "two_pow_omega", self.n_max)?;
        let mut reports =
            self.specialization("squarefree", SequenceKind::AbsMu, &two_pow, k_max)?;

        let alt = self.sequence(SequenceKind::AltAbsMu);
        let u = ModulusParams::unrestricted();
        let a_vals: Vec<BigInt> = self.a_values(&alt, u)?;
        for k in 1..=k_max {
            let mbar = self.mbar(k);
            let mut by_parity: [Vec<CheckRow>; 2] = [Vec::new(), Vec::new()];
            let started = Instant::now();
            for n in 1..=self.n_max {
                let idx = n as usize;
                let mut inner = theta_combination(&a_vals, idx, Some(k));
                if n % 2 == 1 {
                    inner -= &two_pow[idx - 1];
                }
                let rhs: BigInt = (1..=n.div_ceil(2))
                    .map(|j| &two_pow[(2 * j - 2) as usize] * &mbar[(n + 1 - 2 * j) as usize])
                    .sum();
                by_parity[(n % 2) as usize].push(equality_row(n, signed(inner, k), rhs));
            }
            let [even, odd] = by_parity;
            reports.push(IdentityReport::build(
                "squarefree.alternating_odd",
                Params::modulus(&alt, u).with_k(k),
                odd,
                started,
            ));
            reports.push(IdentityReport::build(
                "squarefree.alternating_even",
                Params::modulus(&alt, u).with_k(k),
                even,
                started,
            ));
        }

        let sigma0_sq = function_values(&self.sieve, "sigma0_sq", self.n_max)?;
        reports.extend(self.specialization(
            "squarefree.sigma0_sq",
            SequenceKind::TwoPowOmega,
            &sigma0_sq,
            k_max,
        )?);
        Ok(reports)
    }

    /// Theorem checks over sequences × moduli × k = 1..=k_max, in grid order.
    pub fn th2_grid(
        &self,
        kinds: &[SequenceKind],
        moduli: &[ModulusParams],
        k_max: u64,
    ) -> Result<Vec<IdentityReport>, IdentityError> {
        let points = grid_points(kinds, moduli, k_max);
        points
            .par_iter()
            .map(|&(kind, m, k)| self.check_th2(&self.sequence(kind), m, k))
            .collect()
    }

    /// Sign-pattern checks on the same grid; sequences must be nonnegative.
    pub fn c3_grid(
        &self,
        kinds: &[SequenceKind],
        moduli: &[ModulusParams],
        k_max: u64,
    ) -> Result<Vec<IdentityReport>, IdentityError> {
        let points = grid_points(kinds, moduli, k_max);
        points
            .par_iter()
            .map(|&(kind, m, k)| self.check_c3(&self.sequence(kind), m, k))
            .collect()
    }

    pub fn th1_grid(
        &self,
        kinds: &[SequenceKind],
        moduli: &[ModulusParams],
    ) -> Result<Vec<IdentityReport>, IdentityError> {
        let points: Vec<_> = kinds
            .iter()
            .flat_map(|&kind| moduli.iter().map(move |&m| (kind, m)))
            .collect();
        points
            .par_iter()
            .map(|&(kind, m)| self.check_th1(&self.sequence(kind), m))
            .collect()
    }
}

fn grid_points(
    kinds: &[SequenceKind],
    moduli: &[ModulusParams],
    k_max: u64,
) -> Vec<(SequenceKind, ModulusParams, u64)> {
    let mut points = Vec::new();
    for &kind in kinds {
        for &m in moduli {
            for k in 1..=k_max {
                points.push((kind, m, k));
            }
        }
    }
    points
}

fn series_rows(lhs: &TruncatedSeries, rhs: &TruncatedSeries) -> Vec<CheckRow> {
    lhs.coeffs()
        .iter()
        .zip(rhs.coeffs())
        .enumerate()
        .map(|(n, (l, r))| equality_row(n as u64, l.clone(), r.clone()))
        .collect()
}
