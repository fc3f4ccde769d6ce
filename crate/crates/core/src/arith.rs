//! Sieved arithmetic functions and the restricted divisor sum B(a, α, β; n).
//!
//! Nothing here touches power series, so these values can serve as an
//! oracle for the Lambert-series coefficients in [`crate::qseries`].

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use serde::Serialize;

use crate::coeff::Coefficient;

/// Largest exponent accepted for σ_t and J_t.
pub const MAX_PARAMETER: u32 = 8;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ArithError {
    #[error("unknown sequence `{0}`")]
    UnknownSequence(String),
    #[error("argument {n} exceeds the sieve limit {limit}")]
    OutOfRange { n: u64, limit: u64 },
    #[error("arithmetic functions are defined for n >= 1")]
    ZeroArgument,
    #[error("sequence `{0}` has float values and cannot be read exactly")]
    DomainMismatch(String),
    #[error("invalid modulus: need 0 <= beta < alpha, got alpha={alpha}, beta={beta}")]
    InvalidModulus { alpha: u64, beta: u64 },
    #[error("parameter t={0} is outside the supported range")]
    UnsupportedParameter(u32),
}

/// Smallest-prime-factor table.
#[derive(Debug, Clone)]
pub struct Sieve {
    spf: Vec<u32>,
}

impl Sieve {
    /// Linear sieve over `1..=limit`.
    pub fn new(limit: u64) -> Self {
        let limit = limit.max(1) as usize;
        let mut spf = vec![0u32; limit + 1];
        let mut primes: Vec<u32> = Vec::new();
        spf[1] = 1;
        for i in 2..=limit {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            let si = spf[i];
            for &p in &primes {
                let m = i * p as usize;
                if p > si || m > limit {
                    break;
                }
                spf[m] = p;
            }
        }
        Sieve { spf }
    }

    pub fn limit(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }

    fn check(&self, n: u64) -> Result<(), ArithError> {
        if n == 0 {
            Err(ArithError::ZeroArgument)
        } else if n > self.limit() {
            Err(ArithError::OutOfRange {
                n,
                limit: self.limit(),
            })
        } else {
            Ok(())
        }
    }

    /// Smallest prime factor; `spf(1) == 1`.
    pub fn spf(&self, n: u64) -> Result<u64, ArithError> {
        self.check(n)?;
        Ok(self.spf[n as usize] as u64)
    }

    pub fn is_prime(&self, n: u64) -> Result<bool, ArithError> {
        Ok(n > 1 && self.spf(n)? == n)
    }

    pub fn factorize(&self, n: u64) -> Result<Factorization, ArithError> {
        self.check(n)?;
        let mut rest = n as usize;
        let mut factors: Vec<(u64, u32)> = Vec::new();
        while rest > 1 {
            let p = self.spf[rest] as usize;
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            factors.push((p as u64, e));
        }
        Ok(Factorization(factors))
    }

    /// All positive divisors, ascending.
    pub fn divisors(&self, n: u64) -> Result<Vec<u64>, ArithError> {
        let f = self.factorize(n)?;
        let mut divs = vec![1u64];
        for &(p, e) in f.factors() {
            let len = divs.len();
            let mut pk = 1;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        Ok(divs)
    }
}

/// Prime factorization as ascending `(prime, exponent)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization(Vec<(u64, u32)>);

impl Factorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.0
    }

    /// ω(n)
    pub fn distinct_primes(&self) -> u32 {
        self.0.len() as u32
    }

    /// Ω(n)
    pub fn total_primes(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&(_, e)| e == 1)
    }

    pub fn value(&self) -> u64 {
        self.0.iter().map(|&(p, e)| p.pow(e)).product()
    }
}

/// The pair (α, β) selecting divisors e = αd − β.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ModulusParams {
    alpha: u64,
    beta: u64,
}

impl ModulusParams {
    pub fn new(alpha: u64, beta: u64) -> Result<Self, ArithError> {
        if beta < alpha {
            Ok(ModulusParams { alpha, beta })
        } else {
            Err(ArithError::InvalidModulus { alpha, beta })
        }
    }

    /// (α, β) = (1, 0): every divisor, every part.
    pub fn unrestricted() -> Self {
        ModulusParams { alpha: 1, beta: 0 }
    }

    pub fn alpha(&self) -> u64 {
        self.alpha
    }

    pub fn beta(&self) -> u64 {
        self.beta
    }

    /// αk − β for k ≥ 1.
    pub fn part(&self, k: u64) -> u64 {
        debug_assert!(k >= 1);
        self.alpha * k - self.beta
    }

    /// The index k with αk − β = e, if there is one.
    pub fn index_of(&self, e: u64) -> Option<u64> {
        let shifted = e + self.beta;
        (shifted.is_multiple_of(self.alpha) && shifted >= self.alpha).then(|| shifted / self.alpha)
    }

    /// Largest k with αk − β ≤ n (0 when none).
    pub fn max_index(&self, n: u64) -> u64 {
        (n + self.beta) / self.alpha
    }

    /// Every pair with α ≤ `alpha_max`, ordered by (α, β).
    pub fn grid(alpha_max: u64) -> Vec<ModulusParams> {
        (1..=alpha_max)
            .flat_map(|alpha| (0..alpha).map(move |beta| ModulusParams { alpha, beta }))
            .collect()
    }
}

impl fmt::Display for ModulusParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.alpha, self.beta)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Exact,
    Float,
}

/// The weight sequences the identities are specialized to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SequenceKind {
    Zero,
    One,
    Id,
    Mu,
    AbsMu,
    /// (−1)^{n+1} |μ(n)|
    AltAbsMu,
    Phi,
    /// Liouville λ
    Liouville,
    /// von Mangoldt Λ, float domain
    Mangoldt,
    Omega,
    TwoPowOmega,
    Sigma(u32),
    Jordan(u32),
    /// prime indicator
    Chi,
    NChi,
    /// σ₀(n²)
    Sigma0Sq,
}

impl SequenceKind {
    pub fn domain(&self) -> Domain {
        match self {
            SequenceKind::Mangoldt => Domain::Float,
            _ => Domain::Exact,
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        !matches!(
            self,
            SequenceKind::Mu | SequenceKind::AltAbsMu | SequenceKind::Liouville
        )
    }

    /// Exact-domain sequences used by the truncated-theta grid checks.
    pub fn theorem_grid() -> Vec<SequenceKind> {
        use SequenceKind::*;
        vec![
            One,
            Mu,
            Phi,
            AbsMu,
            AltAbsMu,
            Chi,
            NChi,
            Sigma(1),
            Jordan(2),
            TwoPowOmega,
            Liouville,
        ]
    }

    fn exact_value(&self, n: u64, f: &Factorization) -> BigInt {
        use SequenceKind::*;
        let omega = f.distinct_primes();
        match *self {
            Zero => BigInt::zero(),
            One => BigInt::one(),
            Id => BigInt::from(n),
            Mu => {
                if !f.is_squarefree() {
                    BigInt::zero()
                } else if omega.is_multiple_of(2) {
                    BigInt::one()
                } else {
                    -BigInt::one()
                }
            }
            AbsMu => BigInt::from(f.is_squarefree() as u8),
            AltAbsMu => {
                if !f.is_squarefree() {
                    BigInt::zero()
                } else if n % 2 == 1 {
                    BigInt::one()
                } else {
                    -BigInt::one()
                }
            }
            Phi => f
                .factors()
                .iter()
                .map(|&(p, e)| BigInt::from(p).pow(e - 1) * (p - 1))
                .product(),
            Liouville => {
                if f.total_primes().is_multiple_of(2) {
                    BigInt::one()
                } else {
                    -BigInt::one()
                }
            }
            Omega => BigInt::from(omega),
            TwoPowOmega => BigInt::one() << omega,
            Sigma(t) => f
                .factors()
                .iter()
                .map(|&(p, e)| {
                    let pt = BigInt::from(p).pow(t);
                    let mut term = BigInt::one();
                    let mut acc = BigInt::one();
                    for _ in 0..e {
                        term *= &pt;
                        acc += &term;
                    }
                    acc
                })
                .product(),
            Jordan(t) => f
                .factors()
                .iter()
                .map(|&(p, e)| {
                    let pt = BigInt::from(p).pow(t);
                    pt.clone().pow(e - 1) * (pt - 1)
                })
                .product(),
            Chi => BigInt::from((omega == 1 && f.total_primes() == 1) as u8),
            NChi => {
                if omega == 1 && f.total_primes() == 1 {
                    BigInt::from(n)
                } else {
                    BigInt::zero()
                }
            }
            Sigma0Sq => f
                .factors()
                .iter()
                .map(|&(_, e)| BigInt::from(2 * e + 1))
                .product(),
            Mangoldt => unreachable!("float-domain sequence"),
        }
    }

    fn value(&self, n: u64, f: &Factorization) -> Value {
        match self {
            SequenceKind::Mangoldt => match f.factors() {
                [(p, _)] => Value::Float((*p as f64).ln()),
                _ => Value::Float(0.0),
            },
            _ => Value::Int(self.exact_value(n, f)),
        }
    }
}

impl fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use SequenceKind::*;
        match self {
            Zero => f.write_str("zero"),
            One => f.write_str("one"),
            Id => f.write_str("id"),
            Mu => f.write_str("mu"),
            AbsMu => f.write_str("abs_mu"),
            AltAbsMu => f.write_str("alt_abs_mu"),
            Phi => f.write_str("phi"),
            Liouville => f.write_str("lambda"),
            Mangoldt => f.write_str("mangoldt"),
            Omega => f.write_str("omega"),
            TwoPowOmega => f.write_str("two_pow_omega"),
            Sigma(t) => write!(f, "sigma_{t}"),
            Jordan(t) => write!(f, "jordan_{t}"),
            Chi => f.write_str("chi"),
            NChi => f.write_str("n_chi"),
            Sigma0Sq => f.write_str("sigma0_sq"),
        }
    }
}

impl FromStr for SequenceKind {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        use SequenceKind::*;
        let parameter = |rest: &str| -> Result<u32, ArithError> {
            let t: u32 = rest
                .parse()
                .map_err(|_| ArithError::UnknownSequence(s.to_string()))?;
            if t > MAX_PARAMETER {
                return Err(ArithError::UnsupportedParameter(t));
            }
            Ok(t)
        };
        Ok(match s {
            "zero" => Zero,
            "one" => One,
            "id" => Id,
            "mu" => Mu,
            "abs_mu" => AbsMu,
            "alt_abs_mu" => AltAbsMu,
            "phi" => Phi,
            "lambda" => Liouville,
            "mangoldt" => Mangoldt,
            "omega" => Omega,
            "two_pow_omega" => TwoPowOmega,
            "chi" => Chi,
            "n_chi" => NChi,
            "sigma0_sq" => Sigma0Sq,
            _ => {
                if let Some(rest) = s.strip_prefix("sigma_") {
                    Sigma(parameter(rest)?)
                } else if let Some(rest) = s.strip_prefix("jordan_") {
                    match parameter(rest)? {
                        0 => return Err(ArithError::UnsupportedParameter(0)),
                        t => Jordan(t),
                    }
                } else {
                    return Err(ArithError::UnknownSequence(s.to_string()));
                }
            }
        })
    }
}

/// A single sequence value in its native domain.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(BigInt),
    Float(f64),
}

impl Value {
    pub fn to_coefficient<C: Coefficient>(&self, name: &str) -> Result<C, ArithError> {
        match self {
            Value::Int(v) => Ok(C::from_bigint(v)),
            Value::Float(x) => C::from_f64(*x).ok_or_else(|| ArithError::DomainMismatch(name.into())),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(v) => write!(f, "{v}"),
            Value::Float(x) => write!(f, "{x}"),
        }
    }
}

/// Evaluate a named arithmetic function at `n`.
pub fn eval(sieve: &Sieve, name: &str, n: u64) -> Result<Value, ArithError> {
    let kind: SequenceKind = name.parse()?;
    Ok(kind.value(n, &sieve.factorize(n)?))
}

/// A named weight sequence {a_n}, n ≥ 1, memoized on first use.
///
/// The memo grows under a write lock; values never change once stored.
#[derive(Debug)]
pub struct ArithmeticSequence {
    kind: SequenceKind,
    sieve: Arc<Sieve>,
    memo: RwLock<Vec<Value>>,
}

impl ArithmeticSequence {
    pub fn new(kind: SequenceKind, sieve: Arc<Sieve>) -> Self {
        ArithmeticSequence {
            kind,
            sieve,
            memo: RwLock::new(Vec::new()),
        }
    }

    pub fn named(name: &str, sieve: Arc<Sieve>) -> Result<Self, ArithError> {
        Ok(Self::new(name.parse()?, sieve))
    }

    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    pub fn name(&self) -> String {
        self.kind.to_string()
    }

    pub fn domain(&self) -> Domain {
        self.kind.domain()
    }

    pub fn sieve(&self) -> &Arc<Sieve> {
        &self.sieve
    }

    /// Fill the memo for `1..=n`.
    pub fn prefill(&self, n: u64) -> Result<(), ArithError> {
        if n == 0 {
            return Ok(());
        }
        if self.memo.read().expect("memo lock").len() as u64 >= n {
            return Ok(());
        }
        self.sieve.check(n)?;
        let mut memo = self.memo.write().expect("memo lock");
        for m in memo.len() as u64 + 1..=n {
            let f = self.sieve.factorize(m)?;
            memo.push(self.kind.value(m, &f));
        }
        Ok(())
    }

    pub fn value(&self, n: u64) -> Result<Value, ArithError> {
        if n == 0 {
            return Err(ArithError::ZeroArgument);
        }
        if let Some(v) = self.memo.read().expect("memo lock").get(n as usize - 1) {
            return Ok(v.clone());
        }
        self.prefill(n)?;
        Ok(self.memo.read().expect("memo lock")[n as usize - 1].clone())
    }

    /// a_n in the coefficient domain `C`.
    pub fn get<C: Coefficient>(&self, n: u64) -> Result<C, ArithError> {
        self.value(n)?.to_coefficient(&self.name())
    }

    /// `[a_1, ..., a_n]` in domain `C`.
    pub fn values<C: Coefficient>(&self, n: u64) -> Result<Vec<C>, ArithError> {
        self.prefill(n)?;
        let name = self.name();
        let memo = self.memo.read().expect("memo lock");
        memo[..n as usize]
            .iter()
            .map(|v| v.to_coefficient(&name))
            .collect()
    }
}

/// B(a, α, β; n): sum of a_d over d ≥ 1 with (αd − β) | n.
pub fn divisor_sum<C: Coefficient>(
    a: &ArithmeticSequence,
    m: ModulusParams,
    n: u64,
) -> Result<C, ArithError> {
    let mut total = C::zero();
    for e in a.sieve().divisors(n)? {
        if let Some(d) = m.index_of(e) {
            total += &a.get::<C>(d)?;
        }
    }
    Ok(total)
}

/// `[B(a, α, β; 1), ..., B(a, α, β; n_max)]`.
pub fn divisor_sums<C: Coefficient>(
    a: &ArithmeticSequence,
    m: ModulusParams,
    n_max: u64,
) -> Result<Vec<C>, ArithError> {
    (1..=n_max).map(|n| divisor_sum(a, m, n)).collect()
}

/// Σ_{d|n} (−1)^{1+d} |μ(d)|.
pub fn alt_abs_mu_divisor_sum(sieve: &Sieve, n: u64) -> Result<i64, ArithError> {
    let mut total = 0i64;
    for d in sieve.divisors(n)? {
        if sieve.factorize(d)?.is_squarefree() {
            total += if d % 2 == 1 { 1 } else { -1 };
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn sieve(limit: u64) -> Arc<Sieve> {
        Arc::new(Sieve::new(limit))
    }

    fn int(sieve: &Sieve, name: &str, n: u64) -> i64 {
        match eval(sieve, name, n).unwrap() {
            Value::Int(v) => i64::try_from(v).unwrap(),
            Value::Float(_) => panic!("float"),
        }
    }

    /// Trial-division factorization; independent of the sieve.
    fn trial_factor(mut n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut p = 2;
        while p * p <= n {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            if e > 0 {
                out.push((p, e));
            }
            p += 1;
        }
        if n > 1 {
            out.push((n, 1));
        }
        out
    }

    fn trial_divisors(n: u64) -> Vec<u64> {
        (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn smallest_prime_factors() {
        let s = Sieve::new(10);
        assert_eq!(s.spf(9).unwrap(), 3);
        assert_eq!(s.spf(7).unwrap(), 7);
        assert_eq!(s.spf(1).unwrap(), 1);
        assert_eq!(s.spf(11), Err(ArithError::OutOfRange { n: 11, limit: 10 }));
        assert_eq!(s.spf(0), Err(ArithError::ZeroArgument));
    }

    #[test]
    fn mertens_at_one_million() {
        let s = Sieve::new(1_000_000);
        let mut mertens = 0i64;
        for n in 1..=1_000_000u64 {
            let f = s.factorize(n).unwrap();
            if f.is_squarefree() {
                mertens += if f.distinct_primes().is_multiple_of(2) { 1 } else { -1 };
            }
        }
        // Independent sieve-of-Eratosthenes computation gives M(10^6) = 212.
        assert_eq!(mertens, 212);

        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..1000 {
            let n = rng.gen_range(1..=1_000_000u64);
            assert_eq!(s.factorize(n).unwrap().factors(), trial_factor(n).as_slice());
        }
    }

    #[test]
    fn definition_cases() {
        let s = Sieve::new(200);
        assert_eq!(int(&s, "mu", 6), 1);
        assert_eq!(int(&s, "mu", 4), 0);
        assert_eq!(int(&s, "mu", 30), -1);
        assert_eq!(int(&s, "mu", 1), 1);
        assert_eq!(int(&s, "phi", 1), 1);
        assert_eq!(int(&s, "phi", 12), 4);
        assert_eq!(int(&s, "two_pow_omega", 12), 4);
        assert_eq!(int(&s, "sigma0_sq", 12), 15);
        assert_eq!(int(&s, "lambda", 12), -1);
        assert_eq!(int(&s, "omega", 60), 3);
        assert_eq!(int(&s, "chi", 1), 0);
        assert_eq!(int(&s, "chi", 7), 1);
        assert_eq!(int(&s, "chi", 49), 0);
        assert_eq!(int(&s, "n_chi", 13), 13);
        assert_eq!(int(&s, "alt_abs_mu", 6), -1);
        assert_eq!(int(&s, "alt_abs_mu", 15), 1);
        assert_eq!(int(&s, "sigma_0", 12), 6);
        assert_eq!(int(&s, "sigma_1", 12), 28);
        assert_eq!(int(&s, "sigma_2", 6), 50);
        assert_eq!(int(&s, "jordan_2", 6), 24);
        assert_eq!(int(&s, "jordan_1", 10), 4);
        assert_eq!(int(&s, "id", 9), 9);
        match eval(&s, "mangoldt", 8).unwrap() {
            Value::Float(x) => assert!((x - 2f64.ln()).abs() < 1e-15),
            _ => panic!(),
        }
        assert_eq!(eval(&s, "mangoldt", 6).unwrap(), Value::Float(0.0));
    }

    #[test]
    fn sigma0_sq_by_divisor_enumeration() {
        // Σ_{d|12} 2^ω(d) = 1+2+2+2+4+4 and the divisors of 144 number 15.
        let s = Sieve::new(200);
        let lhs: i64 = trial_divisors(12)
            .into_iter()
            .map(|d| 1i64 << trial_factor(d).len())
            .sum();
        assert_eq!(lhs, 15);
        assert_eq!(trial_divisors(144).len(), 15);
        assert_eq!(int(&s, "sigma0_sq", 12), 15);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!("nope".parse::<SequenceKind>(), Err(ArithError::UnknownSequence(_))));
        assert_eq!(
            "sigma_9".parse::<SequenceKind>(),
            Err(ArithError::UnsupportedParameter(9))
        );
        assert!("jordan_0".parse::<SequenceKind>().is_err());
        for kind in SequenceKind::theorem_grid() {
            assert_eq!(kind.to_string().parse::<SequenceKind>().unwrap(), kind);
        }
    }

    #[test]
    fn float_sequence_rejects_exact_reads() {
        let a = ArithmeticSequence::new(SequenceKind::Mangoldt, sieve(10));
        assert!(matches!(a.get::<BigInt>(2), Err(ArithError::DomainMismatch(_))));
        assert!((a.get::<f64>(9).unwrap() - 3f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn modulus_params() {
        assert_eq!(
            ModulusParams::new(2, 3),
            Err(ArithError::InvalidModulus { alpha: 2, beta: 3 })
        );
        assert!(ModulusParams::new(2, 2).is_err());
        let m = ModulusParams::new(3, 1).unwrap();
        assert_eq!(m.part(1), 2);
        assert_eq!(m.index_of(5), Some(2));
        assert_eq!(m.index_of(1), None);
        assert_eq!(m.index_of(4), None);
        assert_eq!(m.max_index(7), 2);
        assert_eq!(ModulusParams::grid(4).len(), 10);
    }

    #[test]
    fn divisor_sum_examples() {
        let s = sieve(100);
        let phi = ArithmeticSequence::new(SequenceKind::Phi, s.clone());
        let one = ArithmeticSequence::new(SequenceKind::One, s.clone());
        let chi = ArithmeticSequence::new(SequenceKind::Chi, s.clone());
        let u = ModulusParams::unrestricted();
        assert_eq!(divisor_sum::<BigInt>(&phi, u, 17).unwrap(), BigInt::from(17));
        let even = ModulusParams::new(2, 0).unwrap();
        assert_eq!(divisor_sum::<BigInt>(&one, even, 7).unwrap(), BigInt::zero());
        assert_eq!(divisor_sum::<BigInt>(&chi, u, 60).unwrap(), BigInt::from(3));
        // odd divisors of 6: 1, 3
        let odd = ModulusParams::new(2, 1).unwrap();
        assert_eq!(divisor_sum::<BigInt>(&one, odd, 6).unwrap(), BigInt::from(2));
    }

    #[test]
    fn alternating_squarefree_divisor_sum() {
        let s = Sieve::new(10_000);
        assert_eq!(alt_abs_mu_divisor_sum(&s, 15).unwrap(), 4);
        assert_eq!(alt_abs_mu_divisor_sum(&s, 2).unwrap(), 0);
        // 945 = 3^3 * 5 * 7
        let direct: i64 = trial_divisors(945)
            .into_iter()
            .filter(|&d| trial_factor(d).iter().all(|&(_, e)| e == 1))
            .map(|d| if d % 2 == 1 { 1 } else { -1 })
            .sum();
        assert_eq!(direct, 8);
        assert_eq!(alt_abs_mu_divisor_sum(&s, 945).unwrap(), 8);
        for n in 1..=10_000u64 {
            let expected = if n % 2 == 1 { 1i64 << trial_factor(n).len() } else { 0 };
            assert_eq!(alt_abs_mu_divisor_sum(&s, n).unwrap(), expected, "n={n}");
        }
    }

    #[test]
    fn divisor_level_identities() {
        let s = sieve(10_000);
        let one = ArithmeticSequence::new(SequenceKind::One, s.clone());
        let phi = ArithmeticSequence::new(SequenceKind::Phi, s.clone());
        let tpo = ArithmeticSequence::new(SequenceKind::TwoPowOmega, s.clone());
        let u = ModulusParams::unrestricted();
        for n in 1..=10_000u64 {
            let count = divisor_sum::<BigInt>(&one, u, n).unwrap();
            assert_eq!(count, BigInt::from(s.divisors(n).unwrap().len()));
            assert_eq!(divisor_sum::<BigInt>(&phi, u, n).unwrap(), BigInt::from(n));
            let sq = trial_factor(n).iter().map(|&(_, e)| 2 * e as i64 + 1).product::<i64>();
            assert_eq!(divisor_sum::<BigInt>(&tpo, u, n).unwrap(), BigInt::from(sq));
        }
        for n in 1..=300u64 {
            assert_eq!(s.divisors(n).unwrap(), trial_divisors(n));
        }
    }

    #[test]
    fn multiplicativity() {
        let s = Sieve::new(10_000);
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        let names = ["mu", "phi", "two_pow_omega", "sigma_1", "sigma_3", "jordan_2"];
        let mut checked = 0;
        while checked < 500 {
            let a = rng.gen_range(1..=100u64);
            let b = rng.gen_range(1..=100u64);
            if gcd(a, b) != 1 {
                continue;
            }
            for name in names {
                let ab = eval(&s, name, a * b).unwrap();
                let (Value::Int(x), Value::Int(y)) =
                    (eval(&s, name, a).unwrap(), eval(&s, name, b).unwrap())
                else {
                    panic!()
                };
                assert_eq!(ab, Value::Int(x * y), "{name}({a}*{b})");
            }
            checked += 1;
        }
    }

    #[test]
    fn concurrent_memo_reads() {
        let a = Arc::new(ArithmeticSequence::new(SequenceKind::Phi, sieve(1000)));
        let handles: Vec<_> = (0..4)
            .map(|t| {
                let a = a.clone();
                std::thread::spawn(move || {
                    (1..=1000u64)
                        .rev()
                        .step_by(t + 1)
                        .map(|n| a.get::<BigInt>(n).unwrap())
                        .sum::<BigInt>()
                })
            })
            .collect();
        for h in handles {
            h.join().unwrap();
        }
        assert_eq!(a.get::<BigInt>(1000).unwrap(), BigInt::from(400));
    }
}
