//! Truncated formal power series in q and the q-series used by the
//! overpartition identities.
//!
//! A series of order `N` stores the coefficients of q^0..=q^N. Binary
//! operations require equal orders. Infinite products are truncated by
//! skipping every factor whose lowest nontrivial exponent exceeds `N`,
//! since such a factor is 1 modulo q^{N+1}.

use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;

use crate::arith::{ArithError, ArithmeticSequence, ModulusParams};
use crate::coeff::Coefficient;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("constant term is not a unit")]
    NonUnitConstant,
    #[error("a series needs at least one coefficient")]
    Empty,
}

/// Coefficients of q^0..=q^N over the ring `C`.
#[derive(Clone, PartialEq)]
pub struct Series<C> {
    coeffs: Vec<C>,
}

/// Exact big-integer series.
pub type TruncatedSeries = Series<BigInt>;

/// Float-coefficient series, used for von Mangoldt weights.
pub type FloatSeries = Series<f64>;

impl<C: Coefficient> Series<C> {
    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![C::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0, C::one())
    }

    /// `c·q^exp`, or the zero series when `exp > order`.
    pub fn monomial(order: usize, exp: usize, c: C) -> Self {
        let mut s = Self::zero(order);
        if exp <= order {
            s.coeffs[exp] = c;
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<C>) -> Result<Self, SeriesError> {
        if coeffs.is_empty() {
            Err(SeriesError::Empty)
        } else {
            Ok(Series { coeffs })
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &C {
        &self.coeffs[i]
    }

    /// Coefficient of q^i, zero for negative or out-of-range `i`.
    pub fn coeff_or_zero(&self, i: i64) -> C {
        usize::try_from(i)
            .ok()
            .and_then(|i| self.coeffs.get(i))
            .cloned()
            .unwrap_or_else(C::zero)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// Drop terms above `order`, or pad with zeros.
    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs: Vec<C> = self.coeffs.iter().take(order + 1).cloned().collect();
        coeffs.resize(order + 1, C::zero());
        Series { coeffs }
    }

    fn same_order(&self, rhs: &Self) -> Result<(), SeriesError> {
        if self.order() == rhs.order() {
            Ok(())
        } else {
            Err(SeriesError::OrderMismatch {
                left: self.order(),
                right: rhs.order(),
            })
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, SeriesError> {
        self.same_order(rhs)?;
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, SeriesError> {
        self.same_order(rhs)?;
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        Ok(out)
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, rhs: &Self) -> Result<Self, SeriesError> {
        self.same_order(rhs)?;
        let n = self.order();
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=n - i].iter().enumerate() {
                out.coeffs[i + j].add_product(a, b);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|a| a.mul_ref(c)).collect(),
        }
    }

    /// Multiply by q^exp, keeping the order.
    pub fn shift(&self, exp: usize) -> Self {
        let mut out = Self::zero(self.order());
        for (i, a) in self.coeffs.iter().enumerate() {
            if i + exp > self.order() {
                break;
            }
            out.coeffs[i + exp] = a.clone();
        }
        out
    }

    /// Multiplicative inverse via the forward recurrence
    /// t_n = −c₀⁻¹ Σ_{i=1..n} s_i t_{n−i}.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        let c0_inv = self.coeffs[0]
            .unit_inverse()
            .ok_or(SeriesError::NonUnitConstant)?;
        let n = self.order();
        let mut out: Vec<C> = Vec::with_capacity(n + 1);
        out.push(c0_inv.clone());
        for m in 1..=n {
            let mut acc = C::zero();
            for i in 1..=m {
                acc.add_product(&self.coeffs[i], &out[m - i]);
            }
            out.push(-acc.mul_ref(&c0_inv));
        }
        Ok(Series { coeffs: out })
    }

    /// In place: multiply by (1 + sign·q^exp); `exp ≥ 1`.
    pub fn mul_binomial(&mut self, exp: usize, sign: ProductSign) {
        debug_assert!(exp >= 1);
        let n = self.order();
        if exp > n {
            return;
        }
        for i in (exp..=n).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(i);
            match sign {
                ProductSign::Plus => hi[0] += &lo[i - exp],
                ProductSign::Minus => hi[0] -= &lo[i - exp],
            }
        }
    }

    /// In place: divide by (1 − q^exp), i.e. multiply by Σ_m q^{m·exp}; `exp ≥ 1`.
    pub fn div_one_minus(&mut self, exp: usize) {
        debug_assert!(exp >= 1);
        let n = self.order();
        for i in exp..=n {
            let (lo, hi) = self.coeffs.split_at_mut(i);
            hi[0] += &lo[i - exp];
        }
    }

    /// Coefficient-wise conversion to floats.
    pub fn to_float(&self) -> FloatSeries {
        Series {
            coeffs: self.coeffs.iter().map(Coefficient::to_f64).collect(),
        }
    }
}

impl<C: Coefficient> Neg for Series<C> {
    type Output = Series<C>;

    fn neg(self) -> Self::Output {
        Series {
            coeffs: self.coeffs.into_iter().map(Neg::neg).collect(),
        }
    }
}

impl<C: fmt::Debug> fmt::Debug for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series(O(q^{}) ", self.coeffs.len())?;
        f.debug_list().entries(&self.coeffs).finish()?;
        f.write_str(")")
    }
}

impl<C: Coefficient + fmt::Display> fmt::Display for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.signum_i8() < 0;
            let c = if negative && !first { -c.clone() } else { c.clone() };
            if !first {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            let unit = i > 0 && (c.is_one() || (-c.clone()).is_one());
            let sign = if unit && c.signum_i8() < 0 { "-" } else { "" };
            match (i, unit) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => write!(f, "{sign}q")?,
                (1, false) => write!(f, "{c}q")?,
                (_, true) => write!(f, "{sign}q^{i}")?,
                (_, false) => write!(f, "{c}q^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.coeffs.len())
    }
}

impl TruncatedSeries {
    /// The same coefficients read in another domain.
    pub fn to_domain<C: Coefficient>(&self) -> Series<C> {
        Series {
            coeffs: self.coeffs.iter().map(C::from_bigint).collect(),
        }
    }
}

impl FloatSeries {
    /// Coefficient-wise comparison with relative tolerance and absolute floor.
    pub fn approx_eq(&self, other: &FloatSeries, rel: f64, abs_floor: f64) -> bool {
        self.order() == other.order()
            && self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .all(|(a, b)| crate::coeff::close_enough(*a, *b, rel, abs_floor))
    }
}

/// Sign inside a q-Pochhammer factor: `Minus` gives (1 − q^j), `Plus` (1 + q^j).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductSign {
    Minus,
    Plus,
}

/// Π_{j=start}^{start+count−1} (1 ± q^j) truncated at `order`; `count = None`
/// runs the product to infinity.
pub fn pochhammer(sign: ProductSign, start: usize, count: Option<usize>, order: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::one(order);
    let start = start.max(1);
    let end = count.map_or(order, |c| (start + c).saturating_sub(1).min(order));
    for j in start..=end {
        s.mul_binomial(j, sign);
    }
    s
}

/// (q;q)∞ for `Minus`, (−q;q)∞ for `Plus`.
pub fn euler_product(sign: ProductSign, order: usize) -> TruncatedSeries {
    pochhammer(sign, 1, None, order)
}

/// Σ p̄(n) qⁿ = (−q;q)∞ / (q;q)∞.
pub fn overpartition_gf(order: usize) -> TruncatedSeries {
    let den = euler_product(ProductSign::Minus, order)
        .invert()
        .expect("(q;q)∞ has constant term 1");
    euler_product(ProductSign::Plus, order)
        .mul(&den)
        .expect("equal orders")
}

/// 1 + 2 Σ_{n=1}^{k_max} (−1)ⁿ q^{n²}; `None` for the full theta series.
pub fn gauss_theta(k_max: Option<usize>, order: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::one(order);
    let mut n = 1usize;
    while n * n <= order && k_max.is_none_or(|k| n <= k) {
        s.coeffs[n * n] = BigInt::from(if n.is_multiple_of(2) { 2 } else { -2 });
        n += 1;
    }
    s
}

/// Σ_{n≥1} a_n q^{αn−β} / (1 − q^{αn−β}); coefficient of qⁿ is B(a, α, β; n).
pub fn lambert_series<C: Coefficient>(
    a: &ArithmeticSequence,
    m: ModulusParams,
    order: usize,
) -> Result<Series<C>, ArithError> {
    let mut s = Series::<C>::zero(order);
    let mut d = 1u64;
    loop {
        let e = m.part(d) as usize;
        if e > order {
            break;
        }
        let w = a.get::<C>(d)?;
        if !w.is_zero() {
            for t in (e..=order).step_by(e) {
                s.coeffs[t] += &w;
            }
        }
        d += 1;
    }
    Ok(s)
}

/// Σ M̄_k(n) qⁿ =
/// 2(−q;q)_k/(q;q)_k · Σ_{j≥0} q^{(k+1)(k+j+1)} (−q^{k+j+2};q)∞ / ((1−q^{k+j+1})(q^{k+j+2};q)∞).
///
/// Each tail term is built at the reduced order `order − (k+1)(k+j+1)`
/// and shifted into place.
pub fn mbar_gf(k: usize, order: usize) -> TruncatedSeries {
    assert!(k >= 1, "mbar_gf needs k >= 1");
    let mut tail = TruncatedSeries::zero(order);
    let mut j = 0usize;
    loop {
        let lead = (k + 1) * (k + j + 1);
        if lead > order {
            break;
        }
        let reduced = order - lead;
        let smallest = k + j + 1;
        let mut term = TruncatedSeries::one(reduced);
        term.div_one_minus(smallest);
        for i in smallest + 1..=reduced {
            term.mul_binomial(i, ProductSign::Plus);
            term.div_one_minus(i);
        }
        for (t, c) in term.coeffs.into_iter().enumerate() {
            tail.coeffs[lead + t] += &c;
        }
        j += 1;
    }
    let mut head = TruncatedSeries::monomial(order, 0, BigInt::from(2));
    for i in 1..=k.min(order) {
        head.mul_binomial(i, ProductSign::Plus);
        head.div_one_minus(i);
    }
    head.mul(&tail).expect("equal orders")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{SequenceKind, Sieve};
    use num_traits::Zero;
    use std::sync::Arc;

    fn ints(v: &[i64]) -> TruncatedSeries {
        TruncatedSeries::from_coeffs(v.iter().map(|&x| BigInt::from(x)).collect()).unwrap()
    }

    fn as_i64(s: &TruncatedSeries) -> Vec<i64> {
        s.coeffs().iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    /// Partition counts by the coin-change recurrence.
    fn partition_counts(n: usize) -> Vec<i64> {
        let mut p = vec![0i64; n + 1];
        p[0] = 1;
        for part in 1..=n {
            for t in part..=n {
                p[t] += p[t - part];
            }
        }
        p
    }

    #[test]
    fn add_cancels() {
        let s = ints(&[1, 1]).add(&ints(&[1, -1])).unwrap();
        assert_eq!(as_i64(&s), vec![2, 0]);
        let z = TruncatedSeries::zero(1);
        assert_eq!(ints(&[3, 4]).add(&z).unwrap(), ints(&[3, 4]));
    }

    #[test]
    fn order_mismatch_rejected() {
        let err = ints(&[1, 1]).add(&ints(&[1])).unwrap_err();
        assert_eq!(err, SeriesError::OrderMismatch { left: 1, right: 0 });
        assert!(ints(&[1, 1]).mul(&ints(&[1, 2, 3])).is_err());
        assert_eq!(TruncatedSeries::from_coeffs(vec![]), Err(SeriesError::Empty));
    }

    #[test]
    fn euler_products_sum() {
        let s = euler_product(ProductSign::Minus, 10)
            .add(&euler_product(ProductSign::Plus, 10))
            .unwrap();
        // (1 − q − q² + …) + (1 + q + q² + …)
        assert_eq!(as_i64(&s)[..3], [2, 0, 0]);
    }

    #[test]
    fn products() {
        assert_eq!(as_i64(&ints(&[1, 1, 0]).mul(&ints(&[1, -1, 0])).unwrap()), vec![1, 0, -1]);
        let s = ints(&[3, -1, 4, 1]);
        assert_eq!(s.mul(&TruncatedSeries::one(3)).unwrap(), s);
    }

    #[test]
    fn inversion() {
        assert_eq!(as_i64(&ints(&[1, -1, 0, 0]).invert().unwrap()), vec![1, 1, 1, 1]);
        let s = ints(&[-1, 5, -2, 7, 0, 3]);
        assert_eq!(s.invert().unwrap().invert().unwrap(), s);
        assert_eq!(ints(&[2, 1]).invert(), Err(SeriesError::NonUnitConstant));
        assert_eq!(ints(&[0, 1]).invert(), Err(SeriesError::NonUnitConstant));

        let p = euler_product(ProductSign::Minus, 40).invert().unwrap();
        assert_eq!(as_i64(&p), partition_counts(40));
    }

    #[test]
    fn euler_product_hand_expansion() {
        assert_eq!(as_i64(&euler_product(ProductSign::Minus, 4)), vec![1, -1, -1, 0, 0]);
        assert_eq!(as_i64(&euler_product(ProductSign::Plus, 0)), vec![1]);
        assert_eq!(as_i64(&euler_product(ProductSign::Plus, 6)), vec![1, 1, 1, 2, 2, 3, 4]);
    }

    #[test]
    fn three_factor_product_keeps_q4() {
        // (1−q)(1−q²)(1−q³) = 1 − q − q² + q⁴ + O(q⁵); the fourth factor cancels q⁴.
        let three = pochhammer(ProductSign::Minus, 1, Some(3), 4);
        assert_eq!(as_i64(&three), vec![1, -1, -1, 0, 1]);
    }

    #[test]
    fn overpartition_numbers() {
        assert_eq!(as_i64(&overpartition_gf(6)), vec![1, 2, 4, 8, 14, 24, 40]);
        let prod = overpartition_gf(60).mul(&gauss_theta(None, 60)).unwrap();
        assert_eq!(prod, TruncatedSeries::one(60));
    }

    #[test]
    fn theta() {
        assert_eq!(as_i64(&gauss_theta(None, 5)), vec![1, -2, 0, 0, 2, 0]);
        assert_eq!(gauss_theta(Some(0), 5), TruncatedSeries::one(5));
        assert_eq!(as_i64(&gauss_theta(Some(1), 5)), vec![1, -2, 0, 0, 0, 0]);
        let ratio = euler_product(ProductSign::Minus, 50)
            .mul(&euler_product(ProductSign::Plus, 50).invert().unwrap())
            .unwrap();
        assert_eq!(ratio, gauss_theta(None, 50));
    }

    #[test]
    fn lambert_examples() {
        let sieve = Arc::new(Sieve::new(100));
        let u = ModulusParams::unrestricted();
        let mu = ArithmeticSequence::new(SequenceKind::Mu, sieve.clone());
        let s: TruncatedSeries = lambert_series(&mu, u, 10).unwrap();
        assert_eq!(s, TruncatedSeries::monomial(10, 1, BigInt::from(1)));

        let phi = ArithmeticSequence::new(SequenceKind::Phi, sieve.clone());
        let s: TruncatedSeries = lambert_series(&phi, u, 10).unwrap();
        assert_eq!(as_i64(&s), (0..=10).collect::<Vec<_>>());

        let one = ArithmeticSequence::new(SequenceKind::One, sieve.clone());
        let s: TruncatedSeries = lambert_series(&one, ModulusParams::new(2, 1).unwrap(), 6).unwrap();
        let odd_divisors_of_6 = (1..=6).filter(|d| 6 % d == 0 && d % 2 == 1).count() as i64;
        assert_eq!(as_i64(&s)[6], odd_divisors_of_6);
        assert_eq!(odd_divisors_of_6, 2);
    }

    #[test]
    fn lambert_float_domain() {
        let sieve = Arc::new(Sieve::new(100));
        let lam = ArithmeticSequence::new(SequenceKind::Mangoldt, sieve);
        let s: FloatSeries = lambert_series(&lam, ModulusParams::unrestricted(), 30).unwrap();
        // Σ_{d|n} Λ(d) = log n
        for n in 1..=30 {
            assert!((s.coeff(n) - (n as f64).ln()).abs() < 1e-12, "n={n}");
        }
        assert!(lambert_series::<BigInt>(&lam, ModulusParams::unrestricted(), 5).is_err());
    }

    #[test]
    fn mbar_known_values() {
        let g = mbar_gf(2, 12);
        assert_eq!(*g.coeff(12), BigInt::from(16));
        for k in 1..=4 {
            let g = mbar_gf(k, 40);
            for n in 0..(k + 1) * (k + 1) {
                assert!(g.coeff(n).is_zero(), "k={k} n={n}");
            }
            assert_eq!(*g.coeff((k + 1) * (k + 1)), BigInt::from(2));
        }
        // truncation consistency
        assert_eq!(mbar_gf(1, 30).truncate(12), mbar_gf(1, 12));
    }

    #[test]
    fn float_series_helpers() {
        let a = ints(&[1, 2, 3]).to_float();
        let b = FloatSeries::from_coeffs(vec![1.0, 2.0, 3.0 + 1e-12]).unwrap();
        assert!(a.approx_eq(&b, 1e-9, 1e-12));
        assert!(!a.approx_eq(&FloatSeries::zero(2), 1e-9, 1e-12));
        let inv = FloatSeries::from_coeffs(vec![2.0, 1.0]).unwrap().invert().unwrap();
        assert_eq!(inv.coeffs(), &[0.5, -0.25]);
    }

    #[test]
    fn shift_and_display() {
        let s = ints(&[1, 2, 0, 0]).shift(2);
        assert_eq!(as_i64(&s), vec![0, 0, 1, 2]);
        assert_eq!(ints(&[1, -2, 0, 3]).to_string(), "1 - 2q + 3q^3 + O(q^4)");
        assert_eq!(ints(&[0, -1, 1, -1]).to_string(), "-q + q^2 - q^3 + O(q^4)");
        assert_eq!(ints(&[0, 0]).to_string(), "0 + O(q^2)");
    }
}
