//! Exact multivariate Laurent polynomials and truncated `q`-power series.
//!
//! [`LaurentPoly`] is a sparse map from exponent vectors in `Z^n` to nonzero
//! big integers, kept in lexicographic order so that structural equality is
//! mathematical equality. [`CharacterSeries`] is a truncated power series in
//! `q` whose coefficients are Laurent polynomials in `t_1..t_n`, and
//! [`IntSeries`] is its integer counterpart.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::json;

/// Default truncation order for series computations.
pub const DEFAULT_ORDER: usize = 40;

/// An exponent vector `alpha` in `Z^n`, standing for `t_1^alpha_1 ... t_n^alpha_n`.
pub type Exponent = Vec<i32>;

/// Sparse Laurent polynomial in `t_1..t_n` with big-integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c.into());
        p
    }

    /// `c * t^alpha`; the variable count is `alpha.len()`.
    pub fn monomial(alpha: Exponent, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(alpha.len());
        p.add_term(alpha, c.into());
        p
    }

    /// The variable `t_{i+1}` (zero-based index `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(
            i < nvars,
            "variable index {i} out of range for {nvars} variables"
        );
        let mut alpha = vec![0; nvars];
        alpha[i] = 1;
        Self::monomial(alpha, 1)
    }

    pub fn from_terms<I, C>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero(nvars);
        for (alpha, c) in terms {
            if alpha.len() != nvars {
                return Err(Error::ExponentLength {
                    expected: nvars,
                    got: alpha.len(),
                });
            }
            p.add_term(alpha, c.into());
        }
        Ok(p)
    }

    pub fn num_vars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic order of exponents.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &BigInt)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, alpha: &[i32]) -> BigInt {
        self.terms.get(alpha).cloned().unwrap_or_default()
    }

    /// Lex-greatest term.
    pub fn leading_term(&self) -> Option<(&Exponent, &BigInt)> {
        self.terms.last_key_value()
    }

    /// Lex-smallest term.
    pub fn trailing_term(&self) -> Option<(&Exponent, &BigInt)> {
        self.terms.first_key_value()
    }

    pub(crate) fn add_term(&mut self, alpha: Exponent, c: BigInt) {
        debug_assert_eq!(alpha.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(alpha) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`, in place.
    pub(crate) fn add_scaled(&mut self, other: &Self, c: &BigInt) {
        for (a, x) in &other.terms {
            self.add_term(a.clone(), x * c);
        }
    }

    /// `self += c * t^alpha * other`, in place.
    pub(crate) fn add_shifted(&mut self, other: &Self, alpha: &[i32], c: &BigInt) {
        debug_assert_eq!(alpha.len(), self.nvars);
        for (a, x) in &other.terms {
            let e = a.iter().zip(alpha).map(|(u, v)| u + v).collect();
            self.add_term(e, x * c);
        }
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(Error::VarCountMismatch {
                left: self.nvars,
                right: other.nvars,
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), -c);
        }
        Ok(out)
    }

    /// Exact product with zero terms pruned.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = Self::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let e: Exponent = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(a, x)| (a.clone(), x * c)).collect(),
        }
    }

    /// `self * c * t^alpha`.
    pub fn mul_monomial(&self, alpha: &[i32], c: &BigInt) -> Self {
        assert_eq!(alpha.len(), self.nvars, "exponent length mismatch");
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(a, x)| (a.iter().zip(alpha).map(|(u, v)| u + v).collect(), x * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Per-coordinate minimum and maximum exponents, or `None` for zero.
    fn exponent_box(&self) -> Option<(Vec<i32>, Vec<i32>)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let mut lo = first.clone();
        let mut hi = first.clone();
        for a in it {
            for i in 0..self.nvars {
                lo[i] = lo[i].min(a[i]);
                hi[i] = hi[i].max(a[i]);
            }
        }
        Some((lo, hi))
    }

    /// Exact quotient `self / divisor`.
    ///
    /// Leading-term elimination under lex order. Any quotient monomial must
    /// lie in the box bounded per coordinate by the minimum and maximum
    /// degrees of dividend and divisor, so a step leaving that box, or a
    /// leading coefficient that does not divide exactly, means no Laurent
    /// quotient exists.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        self.check_vars(divisor)?;
        let Some((dlo, dhi)) = divisor.exponent_box() else {
            return Err(Error::DivisionByZero);
        };
        let mut quotient = Self::zero(self.nvars);
        let Some((alo, ahi)) = self.exponent_box() else {
            return Ok(quotient);
        };
        let qlo: Vec<i32> = alo.iter().zip(&dlo).map(|(a, d)| a - d).collect();
        let qhi: Vec<i32> = ahi.iter().zip(&dhi).map(|(a, d)| a - d).collect();
        let (dlead, dcoeff) = divisor.leading_term().expect("nonzero divisor");
        let mut rem = self.clone();
        while let Some((rlead, rcoeff)) = rem.leading_term() {
            let alpha: Exponent = rlead.iter().zip(dlead).map(|(r, d)| r - d).collect();
            let in_box = (0..self.nvars).all(|i| qlo[i] <= alpha[i] && alpha[i] <= qhi[i]);
            let (c, r) = rcoeff.div_rem(dcoeff);
            if !in_box || !r.is_zero() {
                return Err(Error::NotDivisible);
            }
            rem = &rem - &divisor.mul_monomial(&alpha, &c);
            quotient.add_term(alpha, c);
        }
        Ok(quotient)
    }

    /// True iff invariant under every permutation of the variables,
    /// checked on adjacent transpositions.
    pub fn is_symmetric(&self) -> bool {
        (0..self.nvars.saturating_sub(1)).all(|i| {
            self.terms.iter().all(|(a, c)| {
                let mut b = a.clone();
                b.swap(i, i + 1);
                self.terms.get(&b) == Some(c)
            })
        })
    }

    /// Sum of all coefficients (evaluation at `t = (1, ..., 1)`).
    pub fn eval_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// The part of total degree `d` in `t`.
    pub fn homogeneous_part(&self, d: i64) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(a, _)| a.iter().map(|&x| i64::from(x)).sum::<i64>() == d)
                .map(|(a, c)| (a.clone(), c.clone()))
                .collect(),
        }
    }

    /// Keeps only the terms whose exponent satisfies `keep`.
    pub fn filter_terms(&self, mut keep: impl FnMut(&[i32]) -> bool) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(a, _)| keep(a))
                .map(|(a, c)| (a.clone(), c.clone()))
                .collect(),
        }
    }
}

impl Default for LaurentPoly {
    fn default() -> Self {
        Self::zero(0)
    }
}

impl<'a> Add for &'a LaurentPoly {
    type Output = LaurentPoly;

    /// # Panics
    /// On variable-count mismatch; use [`LaurentPoly::checked_add`] to handle it.
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("LaurentPoly addition")
    }
}

impl<'a> Sub for &'a LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("LaurentPoly subtraction")
    }
}

impl<'a> Mul for &'a LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("LaurentPoly multiplication")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(a, c)| (a.clone(), -c)).collect(),
        }
    }
}

pub(crate) fn write_monomial(f: &mut fmt::Formatter<'_>, alpha: &[i32]) -> fmt::Result {
    let mut first = true;
    for (i, &e) in alpha.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "t{}", i + 1)?;
        } else {
            write!(f, "t{}^{}", i + 1, e)?;
        }
    }
    if first {
        f.write_str("1")?;
    }
    Ok(())
}

/// Terms in descending lex order, e.g. `t1^2 + 2*t1*t2 - t2^-1`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (a, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            match (idx, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let is_const = a.iter().all(|&e| e == 0);
            if is_const {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, a)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly[{}]({})", self.nvars, self)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    #[serde(
        serialize_with = "json::serialize_bigint_string",
        deserialize_with = "json::deserialize_bigint"
    )]
    coeff: BigInt,
    alpha: Exponent,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (alpha, coeff) in &self.terms {
            seq.serialize_element(&TermRecord {
                coeff: coeff.clone(),
                alpha: alpha.clone(),
            })?;
        }
        seq.end()
    }
}

/// The variable count is taken from the records; an empty array yields the
/// zero polynomial in zero variables, which [`CharacterSeries`] re-tags.
impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let records = Vec::<TermRecord>::deserialize(d)?;
        let nvars = records.first().map_or(0, |r| r.alpha.len());
        LaurentPoly::from_terms(nvars, records.into_iter().map(|r| (r.alpha, r.coeff)))
            .map_err(serde::de::Error::custom)
    }
}

/// Truncated power series in `q` with Laurent-polynomial coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CharacterSeries {
    nvars: usize,
    coeffs: Vec<LaurentPoly>,
}

impl CharacterSeries {
    /// Builds a series from its coefficients; the order is `coeffs.len() - 1`.
    pub fn new(nvars: usize, coeffs: Vec<LaurentPoly>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput(
                "a series needs at least one coefficient".into(),
            ));
        }
        let coeffs = coeffs
            .into_iter()
            .map(|c| {
                if c.is_zero() {
                    Ok(LaurentPoly::zero(nvars))
                } else if c.nvars != nvars {
                    Err(Error::VarCountMismatch {
                        left: nvars,
                        right: c.nvars,
                    })
                } else {
                    Ok(c)
                }
            })
            .collect::<Result<_>>()?;
        Ok(CharacterSeries { nvars, coeffs })
    }

    pub fn zero(nvars: usize, order: usize) -> Self {
        CharacterSeries {
            nvars,
            coeffs: vec![LaurentPoly::zero(nvars); order + 1],
        }
    }

    pub fn one(nvars: usize, order: usize) -> Self {
        let mut s = Self::zero(nvars, order);
        s.coeffs[0] = LaurentPoly::one(nvars);
        s
    }

    pub fn num_vars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `q^d`.
    pub fn coeff(&self, d: usize) -> &LaurentPoly {
        &self.coeffs[d]
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<LaurentPoly> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        CharacterSeries {
            nvars: self.nvars,
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(Error::VarCountMismatch {
                left: self.nvars,
                right: other.nvars,
            })
        }
    }

    /// Pointwise sum truncated to the smaller order.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|d| &self.coeffs[d] + &other.coeffs[d])
            .collect();
        Ok(CharacterSeries {
            nvars: self.nvars,
            coeffs,
        })
    }

    /// Cauchy product truncated to the smaller order.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|d| {
                let mut acc = LaurentPoly::zero(self.nvars);
                for i in 0..=d {
                    let (a, b) = (&self.coeffs[i], &other.coeffs[d - i]);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect();
        Ok(CharacterSeries {
            nvars: self.nvars,
            coeffs,
        })
    }

    /// Expansion of `1 / (1 - t^alpha q^k)` through `q^order`.
    pub fn geometric(alpha: &[i32], k: u32, order: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::FactorNotExpandable {
                alpha: alpha.to_vec(),
                k: 0,
            });
        }
        let nvars = alpha.len();
        let mut s = Self::zero(nvars, order);
        let k = k as usize;
        for (j, d) in (0..=order).step_by(k).enumerate() {
            let e: Exponent = alpha.iter().map(|&a| a * j as i32).collect();
            s.coeffs[d] = LaurentPoly::monomial(e, 1);
        }
        Ok(s)
    }

    /// In-place division by `(1 - t^alpha q^k)`, `k >= 1`.
    pub(crate) fn divide_by_factor(&mut self, alpha: &[i32], k: usize) {
        debug_assert!(k >= 1);
        let one = BigInt::one();
        for d in k..self.coeffs.len() {
            let (low, high) = self.coeffs.split_at_mut(d);
            high[0].add_shifted(&low[d - k], alpha, &one);
        }
    }

    pub fn map_coeffs<T>(&self, f: impl FnMut(&LaurentPoly) -> T) -> Vec<T> {
        self.coeffs.iter().map(f).collect()
    }
}

#[derive(Serialize)]
struct SeriesOut<'a> {
    vars: usize,
    order: usize,
    coeffs: &'a [LaurentPoly],
}

#[derive(Deserialize)]
struct SeriesIn {
    #[serde(default)]
    vars: Option<usize>,
    order: usize,
    coeffs: Vec<LaurentPoly>,
}

impl Serialize for CharacterSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesOut {
            vars: self.nvars,
            order: self.order(),
            coeffs: &self.coeffs,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CharacterSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = SeriesIn::deserialize(d)?;
        if raw.coeffs.len() != raw.order + 1 {
            return Err(D::Error::custom(format!(
                "series of order {} needs {} coefficients, got {}",
                raw.order,
                raw.order + 1,
                raw.coeffs.len()
            )));
        }
        let nvars = raw
            .vars
            .or_else(|| raw.coeffs.iter().find(|c| !c.is_zero()).map(|c| c.nvars))
            .ok_or_else(|| D::Error::custom("cannot infer variable count of an all-zero series"))?;
        CharacterSeries::new(nvars, raw.coeffs).map_err(D::Error::custom)
    }
}

/// Truncated power series in `q` with big-integer coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "IntSeriesRepr", into = "IntSeriesRepr")]
pub struct IntSeries {
    coeffs: Vec<BigInt>,
}

impl IntSeries {
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput(
                "a series needs at least one coefficient".into(),
            ));
        }
        Ok(IntSeries { coeffs })
    }

    pub fn from_i64s(values: &[i64]) -> Self {
        assert!(
            !values.is_empty(),
            "a series needs at least one coefficient"
        );
        IntSeries {
            coeffs: values.iter().map(|&v| BigInt::from(v)).collect(),
        }
    }

    pub fn zero(order: usize) -> Self {
        IntSeries {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, d: usize) -> &BigInt {
        &self.coeffs[d]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [BigInt] {
        &mut self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        IntSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Coefficients as `i64`, or `None` if any overflows.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }
}

impl fmt::Display for IntSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

#[derive(Serialize, Deserialize)]
struct IntSeriesRepr {
    order: usize,
    #[serde(
        serialize_with = "json::serialize_bigint_vec",
        deserialize_with = "json::deserialize_bigint_vec"
    )]
    coeffs: Vec<BigInt>,
}

impl From<IntSeries> for IntSeriesRepr {
    fn from(s: IntSeries) -> Self {
        IntSeriesRepr {
            order: s.order(),
            coeffs: s.coeffs,
        }
    }
}

impl TryFrom<IntSeriesRepr> for IntSeries {
    type Error = String;

    fn try_from(r: IntSeriesRepr) -> std::result::Result<Self, String> {
        if r.coeffs.len() != r.order + 1 {
            return Err(format!(
                "series of order {} needs {} coefficients, got {}",
                r.order,
                r.order + 1,
                r.coeffs.len()
            ));
        }
        IntSeries::new(r.coeffs).map_err(|e| e.to_string())
    }
}
