//! Overpartitions: enumeration and the statistics p̄(n), S(k,n), M̄_k(n),
//! A(a, α, β; n), each available through at least two independent routes.

use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{divisor_sums, ArithError, ArithmeticSequence, ModulusParams};
use crate::coeff::Coefficient;
use crate::qseries::{lambert_series, mbar_gf, overpartition_gf, Series, TruncatedSeries};

/// Largest n the enumeration routes accept.
pub const ENUMERATION_CAP: u64 = 40;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OverpartitionError {
    #[error("enumeration is capped at n = {cap}, got n = {n}")]
    EnumerationCap { n: u64, cap: u64 },
    #[error("invalid overpartition: {0}")]
    Invalid(&'static str),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

fn check_cap(n: u64) -> Result<(), OverpartitionError> {
    if n > ENUMERATION_CAP {
        Err(OverpartitionError::EnumerationCap {
            n,
            cap: ENUMERATION_CAP,
        })
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Part {
    pub size: u32,
    pub overlined: bool,
}

/// One overpartition: parts in nonincreasing size, with the overlined copy
/// of a size (at most one) listed first among equal sizes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Overpartition {
    parts: Vec<Part>,
}

impl Overpartition {
    pub fn new(parts: Vec<Part>) -> Result<Self, OverpartitionError> {
        for w in parts.windows(2) {
            let (a, b) = (w[0], w[1]);
            if a.size < b.size {
                return Err(OverpartitionError::Invalid("parts must be nonincreasing"));
            }
            if a.size == b.size && b.overlined {
                return Err(OverpartitionError::Invalid(
                    "only the first occurrence of a size may be overlined",
                ));
            }
        }
        if parts.iter().any(|p| p.size == 0) {
            return Err(OverpartitionError::Invalid("parts must be positive"));
        }
        Ok(Overpartition { parts })
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|p| p.size as u64).sum()
    }

    /// Total occurrences of `size`, overlined or not.
    pub fn multiplicity(&self, size: u32) -> usize {
        self.parts.iter().filter(|p| p.size == size).count()
    }

    pub fn nonoverlined_count(&self, size: u32) -> usize {
        self.parts
            .iter()
            .filter(|p| p.size == size && !p.overlined)
            .count()
    }

    pub fn overlined_weight(&self) -> u64 {
        self.parts
            .iter()
            .filter(|p| p.overlined)
            .map(|p| p.size as u64)
            .sum()
    }

    /// Sum of the distinct sizes that occur at least once non-overlined.
    pub fn distinct_nonoverlined_sum(&self) -> u64 {
        let mut last = 0;
        let mut total = 0;
        for p in self.parts.iter().filter(|p| !p.overlined) {
            if p.size != last {
                total += p.size as u64;
                last = p.size;
            }
        }
        total
    }

    /// The M̄_k predicate: the least part size exceeding `k` occurs at
    /// least k+1 times, overlined copy included.
    pub fn first_part_above_repeats(&self, k: u32) -> bool {
        match self.parts.iter().rev().find(|p| p.size > k) {
            Some(p) => self.multiplicity(p.size) > k as usize,
            None => false,
        }
    }
}

impl fmt::Display for Overpartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("()");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", p.size)?;
            if p.overlined {
                f.write_str("*")?;
            }
        }
        Ok(())
    }
}

/// Iterator over the overpartitions of `n`.
///
/// Underlying partitions come in reverse lexicographic order; for each, the
/// overlined subsets of its distinct sizes follow a binary counter whose
/// bit i belongs to the i-th largest size.
#[derive(Debug, Clone)]
pub struct Overpartitions {
    partition: Option<Vec<u32>>,
    distinct: Vec<u32>,
    mask: u64,
}

impl Overpartitions {
    fn new(n: u32) -> Self {
        let partition = if n == 0 { Vec::new() } else { vec![n] };
        let mut it = Overpartitions {
            partition: Some(partition),
            distinct: Vec::new(),
            mask: 0,
        };
        it.refresh_distinct();
        it
    }

    fn refresh_distinct(&mut self) {
        self.distinct.clear();
        if let Some(p) = &self.partition {
            for &s in p {
                if self.distinct.last() != Some(&s) {
                    self.distinct.push(s);
                }
            }
        }
        self.mask = 0;
    }

    fn advance_partition(&mut self) {
        let Some(p) = self.partition.as_mut() else {
            return;
        };
        let Some(pos) = p.iter().rposition(|&x| x > 1) else {
            self.partition = None;
            return;
        };
        let mut remainder: u32 = p[pos + 1..].iter().sum::<u32>() + 1;
        p.truncate(pos + 1);
        p[pos] -= 1;
        let cap = p[pos];
        while remainder > 0 {
            let take = remainder.min(cap);
            p.push(take);
            remainder -= take;
        }
        self.refresh_distinct();
    }
}

impl Iterator for Overpartitions {
    type Item = Overpartition;

    fn next(&mut self) -> Option<Overpartition> {
        let p = self.partition.as_ref()?;
        let mut parts = Vec::with_capacity(p.len());
        let mut prev = 0;
        let mut idx = 0usize;
        for &s in p {
            let first = s != prev;
            if first && prev != 0 {
                idx += 1;
            }
            prev = s;
            let overlined = first && (self.mask >> idx) & 1 == 1;
            parts.push(Part { size: s, overlined });
        }
        let out = Overpartition { parts };
        self.mask += 1;
        if self.mask >> self.distinct.len() != 0 {
            self.advance_partition();
        }
        Some(out)
    }
}

/// All overpartitions of `n`; n = 0 yields the empty overpartition once.
pub fn enumerate(n: u32) -> Overpartitions {
    Overpartitions::new(n)
}

/// Per-n totals gathered in one enumeration pass.
#[derive(Debug, Clone, PartialEq)]
pub struct EnumerationTally {
    pub n: u64,
    pub count: BigInt,
    /// `s[k-1]` = S(k, n)
    pub s: Vec<BigInt>,
    pub overlined_weight: BigInt,
    pub distinct_nonoverlined_sum: BigInt,
}

impl EnumerationTally {
    pub fn of(n: u64) -> Result<Self, OverpartitionError> {
        check_cap(n)?;
        let mut count = 0u64;
        let mut s = vec![0u64; n as usize];
        let mut overlined = 0u64;
        let mut distinct = 0u64;
        for op in enumerate(n as u32) {
            count += 1;
            for p in op.parts().iter().filter(|p| !p.overlined) {
                s[p.size as usize - 1] += 1;
            }
            overlined += op.overlined_weight();
            distinct += op.distinct_nonoverlined_sum();
        }
        Ok(EnumerationTally {
            n,
            count: count.into(),
            s: s.into_iter().map(BigInt::from).collect(),
            overlined_weight: overlined.into(),
            distinct_nonoverlined_sum: distinct.into(),
        })
    }
}

fn pbar_memo() -> &'static RwLock<Vec<BigInt>> {
    static MEMO: OnceLock<RwLock<Vec<BigInt>>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(vec![BigInt::one()]))
}

/// `[p̄(0), ..., p̄(n_max)]` from p̄(n) = 2 Σ_{j≥1} (−1)^{j+1} p̄(n − j²).
pub fn pbar_table(n_max: u64) -> Vec<BigInt> {
    let n_max = n_max as usize;
    {
        let memo = pbar_memo().read().expect("pbar memo");
        if memo.len() > n_max {
            return memo[..=n_max].to_vec();
        }
    }
    let mut memo = pbar_memo().write().expect("pbar memo");
    for n in memo.len()..=n_max {
        let mut acc = BigInt::zero();
        let mut j = 1usize;
        while j * j <= n {
            if j % 2 == 1 {
                acc += &memo[n - j * j];
            } else {
                acc -= &memo[n - j * j];
            }
            j += 1;
        }
        memo.push(acc * 2);
    }
    memo[..=n_max].to_vec()
}

/// p̄(n), zero for negative n.
pub fn pbar(n: i64) -> BigInt {
    if n < 0 {
        return BigInt::zero();
    }
    pbar_table(n as u64).pop().expect("nonempty table")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMethod {
    /// Coefficient extraction from a generating function.
    Series,
    /// Brute-force enumeration (n ≤ [`ENUMERATION_CAP`]).
    Enumerate,
}

/// S(k, n) for every k at one n.
#[derive(Debug, Clone, PartialEq)]
pub struct STable {
    n: u64,
    values: Vec<BigInt>,
}

impl STable {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// S(k, n); zero for k > n.
    pub fn get(&self, k: u64) -> BigInt {
        if k == 0 {
            return BigInt::zero();
        }
        self.values
            .get(k as usize - 1)
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// `[S(1,n), ..., S(n,n)]`
    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn compute(n: u64, method: CountMethod) -> Result<Self, OverpartitionError> {
        match method {
            CountMethod::Enumerate => {
                let t = EnumerationTally::of(n)?;
                Ok(STable { n, values: t.s })
            }
            CountMethod::Series => Ok(s_tables(n).pop().expect("nonempty")),
        }
    }
}

/// The S-generating function q^k/(1−q^k) · (−q;q)∞/(q;q)∞ for one k.
fn s_column(gf: &TruncatedSeries, k: usize) -> TruncatedSeries {
    let mut col = gf.shift(k);
    col.div_one_minus(k);
    col
}

/// `STable`s for n = 0..=n_max, all from the series route.
pub fn s_tables(n_max: u64) -> Vec<STable> {
    let order = n_max as usize;
    let gf = overpartition_gf(order);
    let mut tables: Vec<STable> = (0..=n_max)
        .map(|n| STable {
            n,
            values: Vec::with_capacity(n as usize),
        })
        .collect();
    for k in 1..=order {
        let col = s_column(&gf, k);
        for (n, table) in tables.iter_mut().enumerate().skip(k) {
            table.values.push(col.coeff(n).clone());
        }
    }
    tables
}

/// S(k, n): non-overlined parts equal to k across all overpartitions of n.
pub fn s_count(k: u64, n: u64, method: CountMethod) -> Result<BigInt, OverpartitionError> {
    assert!(k >= 1, "S(k, n) needs k >= 1");
    match method {
        CountMethod::Series => {
            if k > n {
                return Ok(BigInt::zero());
            }
            let gf = overpartition_gf(n as usize);
            Ok(s_column(&gf, k as usize).coeff(n as usize).clone())
        }
        CountMethod::Enumerate => {
            check_cap(n)?;
            let size = k as u32;
            Ok(enumerate(n as u32)
                .map(|op| op.nonoverlined_count(size))
                .sum::<usize>()
                .into())
        }
    }
}

/// `[M̄_k(0), ..., M̄_k(n_max)]`
pub fn mbar_table(k: u64, n_max: u64, method: CountMethod) -> Result<Vec<BigInt>, OverpartitionError> {
    assert!(k >= 1, "M̄_k needs k >= 1");
    match method {
        CountMethod::Series => Ok(mbar_gf(k as usize, n_max as usize).into_coeffs()),
        CountMethod::Enumerate => {
            check_cap(n_max)?;
            Ok((0..=n_max)
                .map(|n| {
                    enumerate(n as u32)
                        .filter(|op| op.first_part_above_repeats(k as u32))
                        .count()
                        .into()
                })
                .collect())
        }
    }
}

/// M̄_k(n), zero for negative n.
pub fn mbar(k: u64, n: i64, method: CountMethod) -> Result<BigInt, OverpartitionError> {
    if n < 0 {
        return Ok(BigInt::zero());
    }
    Ok(mbar_table(k, n as u64, method)?.pop().expect("nonempty"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AMethod {
    /// Σ_k S(αk−β, n) a_k with S from the series route.
    Direct,
    /// Coefficient of (−q;q)∞/(q;q)∞ · Lambert series.
    Gf,
    /// Σ_j B(a, α, β; j) p̄(n − j) with B from divisor sums and p̄ from the recurrence.
    Convolution,
    /// Weighted count over the enumerated overpartitions.
    Enumerate,
}

/// `[A(a, α, β; 0), ..., A(a, α, β; n_max)]` in coefficient domain `C`.
pub fn a_table<C: Coefficient>(
    a: &ArithmeticSequence,
    m: ModulusParams,
    n_max: u64,
    method: AMethod,
) -> Result<Vec<C>, OverpartitionError> {
    let order = n_max as usize;
    match method {
        AMethod::Direct => {
            let tables = s_tables(n_max);
            a_from_s_tables(a, m, &tables)
        }
        AMethod::Gf => {
            let gf: Series<C> = overpartition_gf(order).to_domain();
            let lambert: Series<C> = lambert_series(a, m, order)?;
            Ok(gf.mul(&lambert).expect("equal orders").into_coeffs())
        }
        AMethod::Convolution => {
            let b: Vec<C> = divisor_sums(a, m, n_max)?;
            let p: Vec<C> = pbar_table(n_max).iter().map(C::from_bigint).collect();
            let mut out = vec![C::zero(); order + 1];
            for (n, slot) in out.iter_mut().enumerate() {
                for j in 1..=n {
                    slot.add_product(&b[j - 1], &p[n - j]);
                }
            }
            Ok(out)
        }
        AMethod::Enumerate => {
            check_cap(n_max)?;
            let weights: Vec<C> = if n_max == 0 {
                Vec::new()
            } else {
                a.values(m.max_index(n_max).max(1))?
            };
            let mut out = vec![C::zero(); order + 1];
            for (n, slot) in out.iter_mut().enumerate() {
                for op in enumerate(n as u32) {
                    for p in op.parts().iter().filter(|p| !p.overlined) {
                        if let Some(k) = m.index_of(p.size as u64) {
                            *slot += &weights[k as usize - 1];
                        }
                    }
                }
            }
            Ok(out)
        }
    }
}

/// The direct route on precomputed S tables (index n = table position).
pub fn a_from_s_tables<C: Coefficient>(
    a: &ArithmeticSequence,
    m: ModulusParams,
    tables: &[STable],
) -> Result<Vec<C>, OverpartitionError> {
    let n_max = tables.len().saturating_sub(1) as u64;
    let kmax = m.max_index(n_max);
    let weights: Vec<C> = if kmax == 0 { Vec::new() } else { a.values(kmax)? };
    Ok(tables
        .iter()
        .map(|t| {
            let mut acc = C::zero();
            for k in 1..=m.max_index(t.n()) {
                let s = t.get(m.part(k));
                if !s.is_zero() {
                    acc.add_product(&C::from_bigint(&s), &weights[k as usize - 1]);
                }
            }
            acc
        })
        .collect())
}

/// A(a, α, β; n), zero for n ≤ 0.
pub fn a_stat<C: Coefficient>(
    a: &ArithmeticSequence,
    m: ModulusParams,
    n: i64,
    method: AMethod,
) -> Result<C, OverpartitionError> {
    if n <= 0 {
        return Ok(C::zero());
    }
    Ok(a_table(a, m, n as u64, method)?.pop().expect("nonempty"))
}

/// Brute force: over all overpartitions of n, the sum of distinct sizes
/// occurring at least once non-overlined.
pub fn distinct_nonoverlined_sum(n: u64) -> Result<BigInt, OverpartitionError> {
    Ok(EnumerationTally::of(n)?.distinct_nonoverlined_sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{SequenceKind, Sieve};
    use std::collections::HashSet;
    use std::sync::Arc;

    fn op(spec: &str) -> Overpartition {
        if spec == "()" {
            return Overpartition::new(vec![]).unwrap();
        }
        let parts = spec
            .split_whitespace()
            .map(|t| match t.strip_suffix('*') {
                Some(s) => Part { size: s.parse().unwrap(), overlined: true },
                None => Part { size: t.parse().unwrap(), overlined: false },
            })
            .collect();
        Overpartition::new(parts).unwrap()
    }

    fn listing(n: u32) -> Vec<String> {
        enumerate(n).map(|o| o.to_string()).collect()
    }

    fn seq(kind: SequenceKind) -> ArithmeticSequence {
        ArithmeticSequence::new(kind, Arc::new(Sieve::new(200)))
    }

    #[test]
    fn overpartitions_of_three_in_order() {
        assert_eq!(
            listing(3),
            ["3", "3*", "2 1", "2* 1", "2 1*", "2* 1*", "1 1 1", "1* 1 1"]
        );
        assert_eq!(listing(0), ["()"]);
    }

    #[test]
    fn overpartitions_of_five_match_listed_set() {
        let listed = [
            "5", "5*", "4 1", "4* 1", "4 1*", "4* 1*", "3 2", "3* 2", "3 2*", "3* 2*", "3 1 1",
            "3* 1 1", "3 1* 1", "3* 1* 1", "2 2 1", "2* 2 1", "2 2 1*", "2* 2 1*", "2 1 1 1",
            "2* 1 1 1", "2 1* 1 1", "2* 1* 1 1", "1 1 1 1 1", "1* 1 1 1 1",
        ];
        let got: HashSet<String> = listing(5).into_iter().collect();
        assert_eq!(got.len(), 24);
        assert_eq!(got, listed.iter().map(|s| s.to_string()).collect());
    }

    #[test]
    fn invalid_overpartitions_rejected() {
        let bad = vec![
            Part { size: 2, overlined: false },
            Part { size: 2, overlined: true },
        ];
        assert!(Overpartition::new(bad).is_err());
        let bad = vec![
            Part { size: 1, overlined: false },
            Part { size: 2, overlined: false },
        ];
        assert!(Overpartition::new(bad).is_err());
    }

    #[test]
    fn enumeration_yields_distinct_valid_overpartitions() {
        for n in 0..=12 {
            let all: Vec<_> = enumerate(n).collect();
            let unique: HashSet<_> = all.iter().cloned().collect();
            assert_eq!(unique.len(), all.len());
            for o in &all {
                assert_eq!(o.weight(), n as u64);
                assert!(Overpartition::new(o.parts().to_vec()).is_ok());
            }
        }
    }

    #[test]
    fn pbar_values() {
        assert_eq!(pbar(3), BigInt::from(8));
        assert_eq!(pbar(4), BigInt::from(14));
        assert_eq!(pbar(-5), BigInt::zero());
        let expected: Vec<i64> = vec![1, 2, 4, 8, 14, 24, 40, 64, 100, 154, 232];
        let got: Vec<i64> = pbar_table(10).iter().map(|v| i64::try_from(v).unwrap()).collect();
        assert_eq!(got, expected);
        for n in 0..=25u32 {
            assert_eq!(pbar(n as i64), BigInt::from(enumerate(n).count()), "n={n}");
        }
        assert_eq!(pbar_table(300), overpartition_gf(300).into_coeffs());
    }

    #[test]
    fn s_values() {
        let s4: Vec<BigInt> = (1..=4).map(|k| s_count(k, 4, CountMethod::Series).unwrap()).collect();
        assert_eq!(s4, [15, 5, 2, 1].map(BigInt::from));
        assert_eq!(s_count(5, 4, CountMethod::Series).unwrap(), BigInt::zero());
        let s5 = STable::compute(5, CountMethod::Series).unwrap();
        assert_eq!(s5.values(), &[29, 10, 4, 2, 1].map(BigInt::from));
        assert_eq!(STable::compute(5, CountMethod::Enumerate).unwrap(), s5);
        assert_eq!(s_count(3, 5, CountMethod::Enumerate).unwrap(), BigInt::from(4));
        assert!(matches!(
            s_count(1, 41, CountMethod::Enumerate),
            Err(OverpartitionError::EnumerationCap { n: 41, cap: 40 })
        ));
    }

    #[test]
    fn mbar_listed_example() {
        let listed = [
            "4 4 4", "4* 4 4", "3 3 3 3", "3* 3 3 3", "3 3 3 2 1", "3 3 3 2* 1", "3 3 3 2 1*",
            "3 3 3 2* 1*", "3* 3 3 2 1", "3* 3 3 2* 1", "3* 3 3 2 1*", "3* 3 3 2* 1*",
            "3 3 3 1 1 1", "3 3 3 1* 1 1", "3* 3 3 1 1 1", "3* 3 3 1* 1 1",
        ];
        let got: HashSet<String> = enumerate(12)
            .filter(|o| o.first_part_above_repeats(2))
            .map(|o| o.to_string())
            .collect();
        assert_eq!(got, listed.iter().map(|s| s.to_string()).collect());
        assert_eq!(mbar(2, 12, CountMethod::Series).unwrap(), BigInt::from(16));
        assert_eq!(mbar(2, 12, CountMethod::Enumerate).unwrap(), BigInt::from(16));
        assert_eq!(mbar(3, -1, CountMethod::Series).unwrap(), BigInt::zero());
    }

    /// The other reading of "first part larger than k": the largest part.
    fn largest_part_repeats(o: &Overpartition, k: u32) -> bool {
        match o.parts().first() {
            Some(p) if p.size > k => o.multiplicity(p.size) > k as usize,
            _ => false,
        }
    }

    #[test]
    fn mbar_reading_is_least_part_above_k() {
        for k in 1..=3u64 {
            let gf = mbar_table(k, 25, CountMethod::Series).unwrap();
            let least = mbar_table(k, 25, CountMethod::Enumerate).unwrap();
            assert_eq!(gf, least, "k={k}");
        }
        let gf = mbar_table(1, 7, CountMethod::Series).unwrap();
        let largest = enumerate(7).filter(|o| largest_part_repeats(o, 1)).count();
        assert_eq!(gf[7], BigInt::from(16));
        assert_eq!(largest, 12);
    }

    #[test]
    fn a_expansion_at_four() {
        // A(a,1,0;4) = 15a₁ + 5a₂ + 2a₃ + a₄
        let u = ModulusParams::unrestricted();
        for kind in [SequenceKind::One, SequenceKind::Chi, SequenceKind::Phi] {
            let a = seq(kind);
            let expected: BigInt = [15, 5, 2, 1]
                .iter()
                .enumerate()
                .map(|(i, c)| BigInt::from(*c) * a.get::<BigInt>(i as u64 + 1).unwrap())
                .sum();
            for method in [AMethod::Direct, AMethod::Gf, AMethod::Convolution, AMethod::Enumerate] {
                assert_eq!(a_stat::<BigInt>(&a, u, 4, method).unwrap(), expected, "{kind} {method:?}");
            }
        }
        assert_eq!(a_stat::<BigInt>(&seq(SequenceKind::One), u, 4, AMethod::Direct).unwrap(), BigInt::from(23));
        assert_eq!(a_stat::<BigInt>(&seq(SequenceKind::Chi), u, 4, AMethod::Direct).unwrap(), BigInt::from(7));
        // A(a,2,0;4) = 5a₁ + a₂ and A(a,2,1;4) = 15a₁ + 2a₂
        let one = seq(SequenceKind::One);
        let m20 = ModulusParams::new(2, 0).unwrap();
        let m21 = ModulusParams::new(2, 1).unwrap();
        assert_eq!(a_stat::<BigInt>(&one, m20, 4, AMethod::Direct).unwrap(), BigInt::from(6));
        assert_eq!(a_stat::<BigInt>(&one, m21, 4, AMethod::Direct).unwrap(), BigInt::from(17));
    }

    #[test]
    fn a_worked_examples() {
        let u = ModulusParams::unrestricted();
        assert_eq!(a_stat::<BigInt>(&seq(SequenceKind::Chi), u, 5, AMethod::Enumerate).unwrap(), BigInt::from(15));
        assert_eq!(a_stat::<BigInt>(&seq(SequenceKind::AbsMu), u, 5, AMethod::Enumerate).unwrap(), BigInt::from(44));
        assert_eq!(a_stat::<BigInt>(&seq(SequenceKind::AltAbsMu), u, 5, AMethod::Direct).unwrap(), BigInt::from(24));
        assert_eq!(a_stat::<BigInt>(&seq(SequenceKind::Phi), u, -3, AMethod::Gf).unwrap(), BigInt::zero());
        let mu = a_table::<BigInt>(&seq(SequenceKind::Mu), u, 60, AMethod::Direct).unwrap();
        for (n, v) in mu.iter().enumerate().skip(1) {
            assert_eq!(*v, pbar(n as i64 - 1), "n={n}");
        }
    }

    #[test]
    fn floor_n_over_alpha_bound_drops_terms() {
        // With k ≤ ⌊n/α⌋ instead of ⌊(n+β)/α⌋, (α,β,n) = (2,1,5) loses k = 3 (part 5).
        let one = seq(SequenceKind::One);
        let m = ModulusParams::new(2, 1).unwrap();
        let gf = a_stat::<BigInt>(&one, m, 5, AMethod::Gf).unwrap();
        let s5 = STable::compute(5, CountMethod::Series).unwrap();
        let truncated: BigInt = (1..=5 / 2).map(|k| s5.get(m.part(k))).sum();
        let inclusive: BigInt = (1..=m.max_index(5)).map(|k| s5.get(m.part(k))).sum();
        assert_eq!(inclusive, gf);
        assert_eq!(&gf - &truncated, BigInt::from(1));
    }

    #[test]
    fn distinct_sum_small_values() {
        assert_eq!(distinct_nonoverlined_sum(0).unwrap(), BigInt::zero());
        assert_eq!(distinct_nonoverlined_sum(4).unwrap(), BigInt::from(26));
        assert_eq!(op("3* 3 2 1*").distinct_nonoverlined_sum(), 5);
        assert_eq!(op("()").distinct_nonoverlined_sum(), 0);
    }

    #[test]
    fn float_domain_a() {
        let lam = seq(SequenceKind::Mangoldt);
        let u = ModulusParams::unrestricted();
        let direct = a_table::<f64>(&lam, u, 30, AMethod::Direct).unwrap();
        let gf = a_table::<f64>(&lam, u, 30, AMethod::Gf).unwrap();
        let conv = a_table::<f64>(&lam, u, 30, AMethod::Convolution).unwrap();
        for n in 0..=30 {
            assert!(crate::coeff::close_enough(direct[n], gf[n], 1e-9, 1e-12));
            assert!(crate::coeff::close_enough(direct[n], conv[n], 1e-9, 1e-12));
        }
        assert!(a_table::<BigInt>(&lam, u, 5, AMethod::Direct).is_err());
    }
}
