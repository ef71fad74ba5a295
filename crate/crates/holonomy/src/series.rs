//! Exact truncated power series in one and two variables, rational-function
//! expansion with infinite product tails, and the closed-form series
//! identities used by the resolution and census layers.
//!
//! All coefficients are arbitrary-precision integers. Division is only ever
//! requested against series whose constant term is a unit (±1); anything
//! else is reported as an error rather than silently rounded.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// A power series in one variable truncated at a fixed order: `coeffs[d]` is
/// the coefficient of t^d, and degrees above `coeffs.len() - 1` are unknown.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series1 {
    pub coeffs: Vec<BigInt>,
}

impl Series1 {
    /// The zero series truncated at `order`.
    pub fn zero(order: usize) -> Self {
        Series1 { coeffs: vec![BigInt::zero(); order + 1] }
    }

    /// The constant series 1.
    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// A polynomial, padded or truncated to `order`.
    pub fn from_ints(c: &[i64], order: usize) -> Self {
        let mut s = Self::zero(order);
        for (d, &v) in c.iter().enumerate().take(order + 1) {
            s.coeffs[d] = BigInt::from(v);
        }
        s
    }

    pub fn from_bigints(c: &[BigInt], order: usize) -> Self {
        let mut s = Self::zero(order);
        for (d, v) in c.iter().enumerate().take(order + 1) {
            s.coeffs[d] = v.clone();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, d: usize) -> &BigInt {
        &self.coeffs[d]
    }

    pub fn add(&self, other: &Series1) -> Series1 {
        let order = self.order().min(other.order());
        let mut out = Series1::zero(order);
        for d in 0..=order {
            out.coeffs[d] = &self.coeffs[d] + &other.coeffs[d];
        }
        out
    }

    pub fn sub(&self, other: &Series1) -> Series1 {
        let order = self.order().min(other.order());
        let mut out = Series1::zero(order);
        for d in 0..=order {
            out.coeffs[d] = &self.coeffs[d] - &other.coeffs[d];
        }
        out
    }

    pub fn mul(&self, other: &Series1) -> Series1 {
        let order = self.order().min(other.order());
        let mut out = Series1::zero(order);
        for a in 0..=order.min(self.order()) {
            if self.coeffs[a].is_zero() {
                continue;
            }
            for b in 0..=(order - a).min(other.order()) {
                if !other.coeffs[b].is_zero() {
                    out.coeffs[a + b] += &self.coeffs[a] * &other.coeffs[b];
                }
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> Series1 {
        let mut out = Series1::one(self.order());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Multiplicative inverse; the constant term must be ±1.
    pub fn inverse(&self) -> Result<Series1> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::ZeroConstantDenominator);
        }
        if !c0.magnitude().is_one() {
            return Err(Error::Invalid(format!(
                "series inversion needs a unit constant term, got {c0}"
            )));
        }
        let order = self.order();
        let mut inv = Series1::zero(order);
        inv.coeffs[0] = c0.clone(); // 1/±1 = ±1
        for d in 1..=order {
            let mut acc = BigInt::zero();
            for a in 1..=d {
                if !self.coeffs[a].is_zero() {
                    acc += &self.coeffs[a] * &inv.coeffs[d - a];
                }
            }
            inv.coeffs[d] = -acc * c0;
        }
        Ok(inv)
    }

    /// Substitute t → −t.
    pub fn alternate(&self) -> Series1 {
        let mut out = self.clone();
        for d in (1..out.coeffs.len()).step_by(2) {
            out.coeffs[d] = -&out.coeffs[d];
        }
        out
    }

    /// Substitute t → t^n (truncating at the same order).
    pub fn inflate(&self, n: usize) -> Series1 {
        let order = self.order();
        let mut out = Series1::zero(order);
        for d in 0..=order / n {
            out.coeffs[d * n] = self.coeffs[d].clone();
        }
        out
    }

    pub fn eq_through(&self, other: &Series1, order: usize) -> bool {
        let z = BigInt::zero();
        (0..=order).all(|d| self.coeffs.get(d).unwrap_or(&z) == other.coeffs.get(d).unwrap_or(&z))
    }
}

impl fmt::Display for Series1 {
    /// Renders as `c0 + c1*t + c2*t^2 + …`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() && !(d == 0 && self.coeffs.iter().all(|v| v.is_zero())) {
                continue;
            }
            let mag = c.magnitude();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match d {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag}*t")?,
                _ => write!(f, "{mag}*t^{d}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// 1 − t^n truncated at `order`.
pub fn one_minus_tn(n: usize, order: usize) -> Series1 {
    let mut s = Series1::one(order);
    if n <= order {
        s.coeffs[n] = -BigInt::one();
    }
    s
}

/// Exponent rule for the eventual tail of an infinite product
/// ∏_{n ≥ start} (1 − t^n)^{e_n}: e_n cycles through `cycle` starting at
/// `start` (so a constant tail is a one-element cycle).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductTail {
    pub start: usize,
    pub cycle: Vec<i64>,
}

impl ProductTail {
    pub fn exponent(&self, n: usize) -> i64 {
        self.cycle[(n - self.start) % self.cycle.len()]
    }
}

/// A rational function times an infinite product ∏ (1 − t^n)^{e_n}, the
/// closed forms the dual Hilbert series come in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeriesExpr {
    /// Polynomial coefficients, low degree first.
    pub numerator: Vec<BigInt>,
    pub denominator: Vec<BigInt>,
    /// Explicit product factors (n, e_n); negative exponents allowed.
    pub factors: Vec<(usize, i64)>,
    /// Optional rule for all n ≥ tail.start not already listed explicitly.
    pub tail: Option<ProductTail>,
}

impl RationalSeriesExpr {
    pub fn rational(numerator: &[i64], denominator: &[i64]) -> Self {
        RationalSeriesExpr {
            numerator: numerator.iter().map(|&v| BigInt::from(v)).collect(),
            denominator: denominator.iter().map(|&v| BigInt::from(v)).collect(),
            factors: Vec::new(),
            tail: None,
        }
    }

    pub fn with_factors(mut self, factors: &[(usize, i64)]) -> Self {
        self.factors.extend_from_slice(factors);
        self
    }

    pub fn with_tail(mut self, start: usize, cycle: &[i64]) -> Self {
        self.tail = Some(ProductTail { start, cycle: cycle.to_vec() });
        self
    }

    /// Exact expansion through `order`; product factors with n > order are
    /// dropped (they cannot affect coefficients ≤ order).
    pub fn expand(&self, order: usize) -> Result<Series1> {
        let num = Series1::from_bigints(&self.numerator, order);
        let den = Series1::from_bigints(&self.denominator, order);
        if den.coeffs[0].is_zero() {
            return Err(Error::ZeroConstantDenominator);
        }
        let mut out = num.mul(&den.inverse()?);
        let mut apply = |n: usize, e: i64| -> Result<()> {
            if n > order || e == 0 {
                return Ok(());
            }
            let base = one_minus_tn(n, order);
            let base = if e < 0 { base.inverse()? } else { base };
            out = out.mul(&base.pow(e.unsigned_abs() as usize));
            Ok(())
        };
        for &(n, e) in &self.factors {
            apply(n, e)?;
        }
        if let Some(tail) = &self.tail {
            for n in tail.start..=order {
                if self.factors.iter().any(|&(m, _)| m == n) {
                    continue;
                }
                apply(n, tail.exponent(n))?;
            }
        }
        Ok(out)
    }
}

/// A power series in two variables x (homological degree) and y (internal
/// degree), truncated at separate bounds in each variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series2 {
    pub x_bound: usize,
    pub y_bound: usize,
    coeffs: BTreeMap<(usize, usize), BigInt>,
}

impl Series2 {
    pub fn zero(x_bound: usize, y_bound: usize) -> Self {
        Series2 { x_bound, y_bound, coeffs: BTreeMap::new() }
    }

    pub fn one(x_bound: usize, y_bound: usize) -> Self {
        let mut s = Self::zero(x_bound, y_bound);
        s.set(0, 0, BigInt::one());
        s
    }

    pub fn coeff(&self, i: usize, j: usize) -> BigInt {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        if i > self.x_bound || j > self.y_bound {
            return;
        }
        if v.is_zero() {
            self.coeffs.remove(&(i, j));
        } else {
            self.coeffs.insert((i, j), v);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &BigInt) {
        if i > self.x_bound || j > self.y_bound || v.is_zero() {
            return;
        }
        let slot = self.coeffs.entry((i, j)).or_default();
        *slot += v;
        if slot.is_zero() {
            self.coeffs.remove(&(i, j));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &BigInt)> {
        self.coeffs.iter()
    }

    /// Substitute t → xy into a one-variable series.
    pub fn from_diagonal(s: &Series1, x_bound: usize, y_bound: usize) -> Self {
        let mut out = Self::zero(x_bound, y_bound);
        for d in 0..=s.order().min(x_bound).min(y_bound) {
            out.set(d, d, s.coeffs[d].clone());
        }
        out
    }

    pub fn add(&self, other: &Series2) -> Series2 {
        let mut out = Series2::zero(self.x_bound.min(other.x_bound), self.y_bound.min(other.y_bound));
        for (&(i, j), v) in &self.coeffs {
            out.add_to(i, j, v);
        }
        for (&(i, j), v) in &other.coeffs {
            out.add_to(i, j, v);
        }
        out
    }

    pub fn sub(&self, other: &Series2) -> Series2 {
        let mut out = Series2::zero(self.x_bound.min(other.x_bound), self.y_bound.min(other.y_bound));
        for (&(i, j), v) in &self.coeffs {
            out.add_to(i, j, v);
        }
        for (&(i, j), v) in &other.coeffs {
            out.add_to(i, j, &-v);
        }
        out
    }

    pub fn mul(&self, other: &Series2) -> Series2 {
        let mut out = Series2::zero(self.x_bound.min(other.x_bound), self.y_bound.min(other.y_bound));
        for (&(a, b), u) in &self.coeffs {
            for (&(c, d), v) in &other.coeffs {
                if a + c <= out.x_bound && b + d <= out.y_bound {
                    out.add_to(a + c, b + d, &(u * v));
                }
            }
        }
        out
    }

    /// Multiplicative inverse; the constant term must be ±1.
    pub fn inverse(&self) -> Result<Series2> {
        let c0 = self.coeff(0, 0);
        if c0.is_zero() {
            return Err(Error::ZeroConstantDenominator);
        }
        if !c0.magnitude().is_one() {
            return Err(Error::Invalid(format!(
                "two-variable inversion needs a unit constant term, got {c0}"
            )));
        }
        let mut inv = Series2::zero(self.x_bound, self.y_bound);
        inv.set(0, 0, c0.clone());
        // Solve (self · inv) = 1 coefficient by coefficient in graded order.
        for total in 1..=(self.x_bound + self.y_bound) {
            for i in 0..=total.min(self.x_bound) {
                let j = total - i;
                if j > self.y_bound {
                    continue;
                }
                let mut acc = BigInt::zero();
                for (&(a, b), v) in &self.coeffs {
                    if (a, b) != (0, 0) && a <= i && b <= j {
                        let w = inv.coeff(i - a, j - b);
                        if !w.is_zero() {
                            acc += v * w;
                        }
                    }
                }
                if !acc.is_zero() {
                    inv.set(i, j, -acc * &c0);
                }
            }
        }
        Ok(inv)
    }

    pub fn eq_through_total_degree(&self, other: &Series2, bound: usize) -> bool {
        let keys: std::collections::BTreeSet<(usize, usize)> =
            self.coeffs.keys().chain(other.coeffs.keys()).copied().collect();
        keys.into_iter().filter(|&(i, j)| i + j <= bound).all(|(i, j)| self.coeff(i, j) == other.coeff(i, j))
    }
}

/// Expand a two-variable rational function num/den through the given bounds.
/// Polynomials are given as (x-exponent, y-exponent, coefficient) terms.
pub fn expand2(num: &[(usize, usize, i64)], den: &[(usize, usize, i64)], x_bound: usize, y_bound: usize) -> Result<Series2> {
    let build = |terms: &[(usize, usize, i64)]| {
        let mut p = Series2::zero(x_bound, y_bound);
        for &(i, j, c) in terms {
            p.add_to(i, j, &BigInt::from(c));
        }
        p
    };
    let num = build(num);
    let den = build(den);
    Ok(num.mul(&den.inverse()?))
}

/// The double Poincaré series P(x,y) determined by the L_n closed form
///
///   1/P(x,y) = (1 − (−x)^{2−n}) / dual(xy) + R(−xy) · (−x)^{2−n},
///
/// where R is the (polynomial) Hilbert series of the quotient algebra and
/// `dual` the Hilbert series of its quadratic dual. The negative powers of x
/// must cancel between the two summands; surviving ones are reported as
/// `NonCancellation` rather than discarded.
pub fn lofwall_formula(r_poly: &Series1, dual: &Series1, n: usize, order: usize) -> Result<Series2> {
    if n < 3 {
        return Err(Error::Invalid(format!("the closed form needs n >= 3, got {n}")));
    }
    let s = n - 2;
    let inv_dual = dual.inverse()?;
    // Multiply through by x^s: the x^{-s} pieces contribute diagonal terms
    // sign·(R(−t) − 1/dual(t)) at t^k, which must vanish for k < s.
    let diff = r_poly.alternate().sub(&inv_dual);
    for k in 0..s.min(diff.order() + 1) {
        if !diff.coeffs[k].is_zero() {
            return Err(Error::NonCancellation { n });
        }
    }
    let sign_neg = s % 2 == 1; // (−1)^s
    let mut inv_p = Series2::from_diagonal(&inv_dual, order, order);
    for k in s..=order.min(diff.order()) {
        let v = if sign_neg { -&diff.coeffs[k] } else { diff.coeffs[k].clone() };
        inv_p.add_to(k - s, k, &v);
    }
    inv_p.inverse()
}

/// Poincaré series of a trivial (square-zero) extension: P_S / (1 − xy·P_S^M).
pub fn trivial_extension_series(p_s: &Series2, p_s_m: &Series2) -> Result<Series2> {
    let x_bound = p_s.x_bound.min(p_s_m.x_bound);
    let y_bound = p_s.y_bound.min(p_s_m.y_bound);
    let mut den = Series2::one(x_bound, y_bound);
    for (&(i, j), v) in p_s_m.terms() {
        den.add_to(i + 1, j + 1, &-v);
    }
    Ok(p_s.mul(&den.inverse()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn s(c: &[i64], order: usize) -> Series1 {
        Series1::from_ints(c, order)
    }

    #[test]
    fn geometric_series() {
        let e = RationalSeriesExpr::rational(&[1], &[1, -1]);
        let g = e.expand(4).unwrap();
        assert_eq!(g, s(&[1, 1, 1, 1, 1], 4));
    }

    #[test]
    fn inverse_multiplies_to_one() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..20 {
            let mut c: Vec<i64> = (0..9).map(|_| rng.gen_range(-4..=4)).collect();
            c[0] = if rng.gen_bool(0.5) { 1 } else { -1 };
            let f = s(&c, 8);
            assert_eq!(f.mul(&f.inverse().unwrap()), Series1::one(8));
        }
    }

    #[test]
    fn ring_laws_on_random_series() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..20 {
            let r = |rng: &mut StdRng| {
                let c: Vec<i64> = (0..9).map(|_| rng.gen_range(-5..=5)).collect();
                s(&c, 8)
            };
            let (a, b, c) = (r(&mut rng), r(&mut rng), r(&mut rng));
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            assert_eq!(a.mul(&b), b.mul(&a));
        }
    }

    /// Closed-form oracle: the coefficients of (1−t)^4/(1−2t)^5 are
    /// Σ_m binom(k−m+4, 4)·2^{k−m}·(−1)^m·binom(4, m).
    #[test]
    fn rational_expansion_matches_binomial_oracle() {
        let e = RationalSeriesExpr::rational(&[1, -4, 6, -4, 1], &[1, -10, 40, -80, 80, -32]);
        let got = e.expand(6).unwrap();
        let binom = |n: i64, k: i64| -> i64 {
            (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
        };
        for k in 0..=6i64 {
            let expected: i64 = (0..=4.min(k))
                .map(|m| binom(k - m + 4, 4) * (1i64 << (k - m)) * if m % 2 == 0 { 1 } else { -1 } * binom(4, m))
                .sum();
            assert_eq!(got.coeff(k as usize), &BigInt::from(expected), "degree {k}");
        }
        // frozen values of the oracle above
        let frozen: Vec<BigInt> = [1, 6, 26, 96, 321, 1002, 2972].map(BigInt::from).into();
        assert_eq!(got.coeffs, frozen);
    }

    #[test]
    fn product_factors_and_tail() {
        // ∏_{n≥1}(1−t^n) — pentagonal number theorem through degree 12.
        let e = RationalSeriesExpr::rational(&[1], &[1]).with_tail(1, &[1]);
        let got = e.expand(12).unwrap();
        let expected = s(&[1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1], 12);
        assert_eq!(got, expected);
        // explicit factors shadow the tail at the same n
        let e2 = RationalSeriesExpr::rational(&[1], &[1]).with_factors(&[(1, 0)]).with_tail(1, &[1]);
        let got2 = e2.expand(6).unwrap();
        let no_first = RationalSeriesExpr::rational(&[1], &[1]).with_tail(2, &[1]).expand(6).unwrap();
        assert_eq!(got2, no_first);
    }

    #[test]
    fn expr_times_reciprocal_is_one() {
        let e = RationalSeriesExpr::rational(&[1, -1], &[1, -2, 0, 4]).with_factors(&[(2, 2), (3, -1)]);
        let r = RationalSeriesExpr::rational(&[1, -2, 0, 4], &[1, -1]).with_factors(&[(2, -2), (3, 1)]);
        assert_eq!(e.expand(10).unwrap().mul(&r.expand(10).unwrap()), Series1::one(10));
    }

    #[test]
    fn zero_constant_denominator_rejected() {
        let e = RationalSeriesExpr::rational(&[1], &[0, 1]);
        assert!(matches!(e.expand(3), Err(Error::ZeroConstantDenominator)));
    }

    #[test]
    fn two_variable_inverse_round_trip() {
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..10 {
            let mut f = Series2::zero(5, 5);
            f.set(0, 0, BigInt::one());
            for i in 0..=5usize {
                for j in 0..=5usize {
                    if (i, j) != (0, 0) && rng.gen_bool(0.4) {
                        f.set(i, j, BigInt::from(rng.gen_range(-3..=3i64)));
                    }
                }
            }
            let g = f.mul(&f.inverse().unwrap());
            assert!(g.eq_through_total_degree(&Series2::one(5, 5), 5));
        }
    }

    /// The flagship closed form: with R = 1+5t+7t² and dual = (1−t)/(1−2t)³,
    /// the n = 3 formula must produce P with
    /// 1/P = (1 − 6xy + 12x²y² − x²y³ − 8x³y³)/(1 − xy).
    #[test]
    fn lofwall_formula_flagship() {
        let r = s(&[1, 5, 7], 12);
        let dual = RationalSeriesExpr::rational(&[1, -1], &[1, -6, 12, -8]).expand(12).unwrap();
        let p = lofwall_formula(&r, &dual, 3, 10).unwrap();
        let expected = expand2(
            &[(0, 0, 1), (1, 1, -6), (2, 2, 12), (2, 3, -1), (3, 3, -8)],
            &[(0, 0, 1), (1, 1, -1)],
            10,
            10,
        )
        .unwrap()
        .inverse()
        .unwrap();
        assert!(p.eq_through_total_degree(&expected, 10));
    }

    #[test]
    fn lofwall_non_cancellation() {
        // R(−t) and 1/dual(t) disagree already in degree 0 < s when the
        // inputs are inconsistent.
        let r = s(&[1, 3], 8);
        let dual = RationalSeriesExpr::rational(&[1], &[1, -2]).expand(8).unwrap();
        assert!(matches!(lofwall_formula(&r, &dual, 4, 8), Err(Error::NonCancellation { n: 4 })));
    }

    #[test]
    fn trivial_extension_edge_cases() {
        let p_s = expand2(&[(0, 0, 1)], &[(0, 0, 1), (1, 1, -2)], 6, 6).unwrap();
        // zero module: extension returns P_S
        let zero = Series2::zero(6, 6);
        assert_eq!(trivial_extension_series(&p_s, &zero).unwrap(), p_s);
        // P_S = 1: geometric series in xy·P_S^M with P_S^M = 1
        let one = Series2::one(6, 6);
        let geo = trivial_extension_series(&one, &one).unwrap();
        for k in 0..=6 {
            assert_eq!(geo.coeff(k, k), BigInt::one());
        }
    }

    /// Building (1.17)-shaped data from the trivial-extension formula: with
    /// P_S = 1/(1−2xy)² and P_S^M = 1/(1−xy) + xy²/((1−xy)(1−2xy)²), the
    /// extension series must equal (1−xy)/(1−6xy+12x²y²−x²y³−8x³y³).
    #[test]
    fn trivial_extension_flagship() {
        let p_s = expand2(&[(0, 0, 1)], &[(0, 0, 1), (1, 1, -4), (2, 2, 4)], 8, 10).unwrap();
        let a = expand2(&[(0, 0, 1)], &[(0, 0, 1), (1, 1, -1)], 8, 10).unwrap();
        let b = expand2(
            &[(1, 2, 1)],
            &[(0, 0, 1), (1, 1, -5), (2, 2, 8), (3, 3, -4)],
            8,
            10,
        )
        .unwrap();
        let p_s_m = a.add(&b);
        let got = trivial_extension_series(&p_s, &p_s_m).unwrap();
        let expected = expand2(
            &[(0, 0, 1), (1, 1, -1)],
            &[(0, 0, 1), (1, 1, -6), (2, 2, 12), (2, 3, -1), (3, 3, -8)],
            8,
            10,
        )
        .unwrap();
        assert!(got.eq_through_total_degree(&expected, 8));
    }

    #[test]
    fn display_format() {
        assert_eq!(s(&[1, 0, -2, 3], 3).to_string(), "1 - 2*t^2 + 3*t^3");
        assert_eq!(Series1::zero(2).to_string(), "0");
    }
}
