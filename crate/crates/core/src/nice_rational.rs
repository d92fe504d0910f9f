//! Rational functions `P(t, q) / prod (1 - t^alpha q^k)` with an explicit
//! multiset of binomial denominator factors.
//!
//! The denominator is never multiplied out. [`NiceRational::decompose`]
//! completes each factor to the symmetric block `e^lambda_k` and expands the
//! resulting numerator in the Schur basis, one `q`-degree at a time.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json;
use crate::laurent::{write_monomial, CharacterSeries, Exponent, LaurentPoly};
use crate::schur::{schur_expand, schur_poly, GenPartition};

/// The binomial `1 - t^alpha q^k`. Ordered by `alpha` (lex), then `k`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DenomFactor {
    pub alpha: Exponent,
    pub k: u32,
}

impl fmt::Display for DenomFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t_free = self.alpha.iter().all(|&a| a == 0);
        f.write_str("(1 - ")?;
        if !t_free {
            write_monomial(f, &self.alpha)?;
        }
        match (t_free, self.k) {
            (_, 0) => {}
            (true, 1) => f.write_str("q")?,
            (true, k) => write!(f, "q^{k}")?,
            (false, 1) => f.write_str("*q")?,
            (false, k) => write!(f, "*q^{k}")?,
        }
        f.write_str(")")
    }
}

/// Polynomial in `q` with Laurent coefficients; index is the `q`-degree,
/// trailing zeros trimmed (the zero polynomial is empty).
type QPoly = Vec<LaurentPoly>;

fn qpoly_trim(mut p: QPoly) -> QPoly {
    while p.last().is_some_and(LaurentPoly::is_zero) {
        p.pop();
    }
    p
}

fn qpoly_add(a: &[LaurentPoly], b: &[LaurentPoly], nvars: usize) -> QPoly {
    let len = a.len().max(b.len());
    let zero = LaurentPoly::zero(nvars);
    qpoly_trim(
        (0..len)
            .map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero))
            .collect(),
    )
}

fn qpoly_mul(a: &[LaurentPoly], b: &[LaurentPoly], nvars: usize) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![LaurentPoly::zero(nvars); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    qpoly_trim(out)
}

/// In-place multiplication by `1 - t^alpha q^k`.
fn qpoly_mul_factor(p: &mut QPoly, alpha: &[i32], k: usize, nvars: usize) {
    if p.is_empty() {
        return;
    }
    let minus_one = -BigInt::one();
    p.resize(p.len() + k, LaurentPoly::zero(nvars));
    for d in (0..p.len()).rev() {
        if d < k || p[d - k].is_zero() {
            continue;
        }
        if k == 0 {
            let own = p[d].clone();
            p[d].add_shifted(&own, alpha, &minus_one);
        } else {
            let (low, high) = p.split_at_mut(d);
            high[0].add_shifted(&low[d - k], alpha, &minus_one);
        }
    }
    let trimmed = qpoly_trim(std::mem::take(p));
    *p = trimmed;
}

/// A nice rational function in `t_1..t_n` and `q`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NiceRational {
    nvars: usize,
    numerator: QPoly,
    denominator: BTreeMap<DenomFactor, u32>,
}

impl NiceRational {
    /// Builds `sum c t^alpha q^r / prod (1 - t^alpha q^k)^mult`.
    ///
    /// Numerator terms are `(coeff, alpha, qpow)`; denominator entries are
    /// `(alpha, k, mult)`. Duplicates are merged.
    pub fn new<N, D, C>(nvars: usize, numerator: N, denominator: D) -> Result<Self>
    where
        N: IntoIterator<Item = (C, Exponent, u32)>,
        D: IntoIterator<Item = (Exponent, u32, u32)>,
        C: Into<BigInt>,
    {
        let mut num: QPoly = Vec::new();
        for (c, alpha, r) in numerator {
            if alpha.len() != nvars {
                return Err(Error::ExponentLength {
                    expected: nvars,
                    got: alpha.len(),
                });
            }
            let r = r as usize;
            if num.len() <= r {
                num.resize(r + 1, LaurentPoly::zero(nvars));
            }
            num[r].add_term(alpha, c.into());
        }
        let mut f = NiceRational {
            nvars,
            numerator: qpoly_trim(num),
            denominator: BTreeMap::new(),
        };
        for (alpha, k, mult) in denominator {
            if alpha.len() != nvars {
                return Err(Error::ExponentLength {
                    expected: nvars,
                    got: alpha.len(),
                });
            }
            if k == 0 && alpha.iter().all(|&a| a == 0) {
                return Err(Error::ZeroFactor);
            }
            if mult > 0 {
                *f.denominator.entry(DenomFactor { alpha, k }).or_insert(0) += mult;
            }
        }
        Ok(f)
    }

    pub fn one(nvars: usize) -> Self {
        NiceRational {
            nvars,
            numerator: vec![LaurentPoly::one(nvars)],
            denominator: BTreeMap::new(),
        }
    }

    /// A polynomial in `q` with Laurent coefficients (empty denominator).
    pub fn from_q_coeffs(nvars: usize, coeffs: Vec<LaurentPoly>) -> Result<Self> {
        if let Some(bad) = coeffs
            .iter()
            .find(|c| !c.is_zero() && c.num_vars() != nvars)
        {
            return Err(Error::VarCountMismatch {
                left: nvars,
                right: bad.num_vars(),
            });
        }
        let coeffs = coeffs
            .into_iter()
            .map(|c| {
                if c.is_zero() {
                    LaurentPoly::zero(nvars)
                } else {
                    c
                }
            })
            .collect();
        Ok(NiceRational {
            nvars,
            numerator: qpoly_trim(coeffs),
            denominator: BTreeMap::new(),
        })
    }

    /// Multiplies the denominator by `(1 - t^alpha q^k)^mult`.
    pub fn with_factor(mut self, alpha: Exponent, k: u32, mult: u32) -> Result<Self> {
        if alpha.len() != self.nvars {
            return Err(Error::ExponentLength {
                expected: self.nvars,
                got: alpha.len(),
            });
        }
        if k == 0 && alpha.iter().all(|&a| a == 0) {
            return Err(Error::ZeroFactor);
        }
        if mult > 0 {
            *self
                .denominator
                .entry(DenomFactor { alpha, k })
                .or_insert(0) += mult;
        }
        Ok(self)
    }

    pub fn num_vars(&self) -> usize {
        self.nvars
    }

    /// Numerator coefficients by `q`-degree.
    pub fn numerator(&self) -> &[LaurentPoly] {
        &self.numerator
    }

    /// Numerator terms `(coeff, alpha, qpow)`, ordered by `qpow` then `alpha`.
    pub fn numerator_terms(&self) -> impl Iterator<Item = (&BigInt, &Exponent, u32)> + '_ {
        self.numerator
            .iter()
            .enumerate()
            .flat_map(|(r, p)| p.terms().map(move |(a, c)| (c, a, r as u32)))
    }

    pub fn denominator(&self) -> impl Iterator<Item = (&DenomFactor, u32)> + '_ {
        self.denominator.iter().map(|(f, &m)| (f, m))
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

    fn check_expandable(&self) -> Result<()> {
        match self.denominator.keys().find(|f| f.k == 0) {
            Some(f) => Err(Error::FactorNotExpandable {
                alpha: f.alpha.clone(),
                k: 0,
            }),
            None => Ok(()),
        }
    }

    /// Power series expansion through `q^order`.
    pub fn series(&self, order: usize) -> Result<CharacterSeries> {
        self.check_expandable()?;
        let mut coeffs = vec![LaurentPoly::zero(self.nvars); order + 1];
        for (slot, c) in coeffs.iter_mut().zip(&self.numerator) {
            *slot = c.clone();
        }
        let mut s = CharacterSeries::new(self.nvars, coeffs)?;
        for (f, &m) in &self.denominator {
            for _ in 0..m {
                s.divide_by_factor(&f.alpha, f.k as usize);
            }
        }
        Ok(s)
    }

    /// Substitutes `t_i -> t_i q`: a term `t^alpha q^r` becomes
    /// `t^alpha q^(r + |alpha|)`, in numerator and denominator alike.
    pub fn substitute_tq(&self) -> Result<Self> {
        fn shift(alpha: &[i32], r: u32) -> Result<u32> {
            let total: i64 = alpha.iter().map(|&a| i64::from(a)).sum::<i64>() + i64::from(r);
            u32::try_from(total).map_err(|_| Error::NegativeQPower {
                alpha: alpha.to_vec(),
                qpow: total,
            })
        }
        let numerator = self
            .numerator_terms()
            .map(|(c, a, r)| Ok((c.clone(), a.clone(), shift(a, r)?)))
            .collect::<Result<Vec<_>>>()?;
        let denominator = self
            .denominator
            .iter()
            .map(|(f, &m)| Ok((f.alpha.clone(), shift(&f.alpha, f.k)?, m)))
            .collect::<Result<Vec<_>>>()?;
        NiceRational::new(self.nvars, numerator, denominator)
    }

    /// Product: numerators multiply, denominator multisets add.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut denominator = self.denominator.clone();
        for (f, &m) in &other.denominator {
            *denominator.entry(f.clone()).or_insert(0) += m;
        }
        Ok(NiceRational {
            nvars: self.nvars,
            numerator: qpoly_mul(&self.numerator, &other.numerator, self.nvars),
            denominator,
        })
    }

    /// Sum over the common denominator (per-factor maximum multiplicity).
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut common = self.denominator.clone();
        for (f, &m) in &other.denominator {
            let e = common.entry(f.clone()).or_insert(0);
            *e = (*e).max(m);
        }
        let lift = |g: &Self| {
            let mut num = g.numerator.clone();
            for (f, &m) in &common {
                let have = g.denominator.get(f).copied().unwrap_or(0);
                for _ in have..m {
                    qpoly_mul_factor(&mut num, &f.alpha, f.k as usize, self.nvars);
                }
            }
            num
        };
        Ok(NiceRational {
            nvars: self.nvars,
            numerator: qpoly_add(&lift(self), &lift(other), self.nvars),
            denominator: common,
        })
    }

    /// Rewrites the denominator as a product of blocks `e^lambda_k` and
    /// expands the numerator in the Schur basis per `q`-degree.
    ///
    /// Factors are grouped by `(sort_desc(alpha), k)`. Each group needs as
    /// many copies of `e^lambda_k` as its most frequent factor; the numerator
    /// absorbs every complementary factor.
    pub fn decompose(&self) -> Result<Decomposition> {
        self.check_expandable()?;
        let mut groups: BTreeMap<(GenPartition, u32), BTreeMap<&Exponent, u32>> = BTreeMap::new();
        for (f, &m) in &self.denominator {
            groups
                .entry((GenPartition::sorted_from(&f.alpha), f.k))
                .or_default()
                .insert(&f.alpha, m);
        }
        let mut numerator = self.numerator.clone();
        let mut blocks = BTreeMap::new();
        for ((lam, k), members) in groups {
            let copies = members.values().copied().max().unwrap_or(0);
            let s = schur_poly(&lam, self.nvars)?;
            for (beta, c) in s.terms() {
                let want = BigInt::from(copies) * c;
                let have = BigInt::from(members.get(beta).copied().unwrap_or(0));
                let extra: u64 = (want - have)
                    .try_into()
                    .expect("a permutation of lambda has coefficient 1 in s_lambda");
                for _ in 0..extra {
                    qpoly_mul_factor(&mut numerator, beta, k as usize, self.nvars);
                }
            }
            blocks.insert((lam, k), copies);
        }
        let mut terms = Vec::new();
        for (r, p) in numerator.iter().enumerate() {
            if !p.is_symmetric() {
                return Err(Error::NonSymmetric { degree: Some(r) });
            }
            let e = schur_expand(p)?;
            terms.extend(e.terms().map(|(m, mu)| DecompositionTerm {
                m: m.clone(),
                mu: mu.clone(),
                r: r as u32,
            }));
        }
        Ok(Decomposition {
            nvars: self.nvars,
            blocks,
            terms,
        })
    }
}

impl fmt::Display for NiceRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .numerator
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(r, p)| match r {
                0 => format!("({p})"),
                1 => format!("({p})*q"),
                _ => format!("({p})*q^{r}"),
            })
            .collect();
        if parts.is_empty() {
            f.write_str("0")?;
        } else {
            f.write_str(&parts.join(" + "))?;
        }
        if !self.denominator.is_empty() {
            f.write_str(" / ")?;
            for (i, (fac, m)) in self.denominator.iter().enumerate() {
                if i > 0 {
                    f.write_str("*")?;
                }
                write!(f, "{fac}")?;
                if *m > 1 {
                    write!(f, "^{m}")?;
                }
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct NumeratorRecord {
    #[serde(
        serialize_with = "json::serialize_bigint_number",
        deserialize_with = "json::deserialize_bigint"
    )]
    coeff: BigInt,
    alpha: Exponent,
    #[serde(default)]
    qpow: u32,
}

fn one_u32() -> u32 {
    1
}

#[derive(Serialize, Deserialize)]
struct DenominatorRecord {
    alpha: Exponent,
    #[serde(default)]
    qpow: u32,
    #[serde(default = "one_u32")]
    mult: u32,
}

#[derive(Serialize, Deserialize)]
struct NiceRationalRepr {
    vars: usize,
    numerator: Vec<NumeratorRecord>,
    #[serde(default)]
    denominator: Vec<DenominatorRecord>,
}

impl Serialize for NiceRational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        NiceRationalRepr {
            vars: self.nvars,
            numerator: self
                .numerator_terms()
                .map(|(c, a, r)| NumeratorRecord {
                    coeff: c.clone(),
                    alpha: a.clone(),
                    qpow: r,
                })
                .collect(),
            denominator: self
                .denominator
                .iter()
                .map(|(f, &m)| DenominatorRecord {
                    alpha: f.alpha.clone(),
                    qpow: f.k,
                    mult: m,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for NiceRational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = NiceRationalRepr::deserialize(d)?;
        NiceRational::new(
            r.vars,
            r.numerator.into_iter().map(|t| (t.coeff, t.alpha, t.qpow)),
            r.denominator.into_iter().map(|t| (t.alpha, t.qpow, t.mult)),
        )
        .map_err(serde::de::Error::custom)
    }
}

/// One summand `m * s_mu * q^r` of a decomposed numerator.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DecompositionTerm {
    #[serde(serialize_with = "json::serialize_bigint_number")]
    pub m: BigInt,
    pub mu: GenPartition,
    pub r: u32,
}

/// `f = sum m_{mu,r} s_mu q^r / prod_{(lambda,k) in A} e^lambda_k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Decomposition {
    nvars: usize,
    blocks: BTreeMap<(GenPartition, u32), u32>,
    terms: Vec<DecompositionTerm>,
}

impl Decomposition {
    pub fn num_vars(&self) -> usize {
        self.nvars
    }

    /// The multiset `A` as `(lambda, k, multiplicity)`.
    pub fn blocks(&self) -> impl Iterator<Item = (&GenPartition, u32, u32)> + '_ {
        self.blocks.iter().map(|((lam, k), &m)| (lam, *k, m))
    }

    /// Ordered by `r`, then `mu` lex-descending.
    pub fn terms(&self) -> &[DecompositionTerm] {
        &self.terms
    }

    /// Reassembles `sum m s_mu q^r / prod e^lambda_k` as a [`NiceRational`].
    pub fn to_nice_rational(&self) -> Result<NiceRational> {
        let n = self.nvars;
        let mut numerator: QPoly = Vec::new();
        for t in &self.terms {
            let r = t.r as usize;
            if numerator.len() <= r {
                numerator.resize(r + 1, LaurentPoly::zero(n));
            }
            numerator[r] = &numerator[r] + &schur_poly(&t.mu, n)?.scale(&t.m);
        }
        let mut denominator = Vec::new();
        for ((lam, k), &copies) in &self.blocks {
            for (alpha, c) in schur_poly(lam, n)?.terms() {
                let mult: u32 = (c * BigInt::from(copies))
                    .try_into()
                    .map_err(|_| Error::InvalidInput("block multiplicity overflow".into()))?;
                denominator.push((alpha.clone(), *k, mult));
            }
        }
        let mut f = NiceRational::new(
            n,
            std::iter::empty::<(BigInt, Exponent, u32)>(),
            denominator,
        )?;
        f.numerator = qpoly_trim(numerator);
        Ok(f)
    }
}

#[derive(Serialize)]
struct BlockRecord<'a> {
    lam: &'a GenPartition,
    k: u32,
    mult: u32,
}

impl Serialize for Decomposition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            vars: usize,
            blocks: Vec<BlockRecord<'a>>,
            terms: &'a [DecompositionTerm],
        }
        Repr {
            vars: self.nvars,
            blocks: self
                .blocks()
                .map(|(lam, k, mult)| BlockRecord { lam, k, mult })
                .collect(),
            terms: &self.terms,
        }
        .serialize(s)
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("numerator: ")?;
        if self.terms.is_empty() {
            f.write_str("0")?;
        }
        for (i, t) in self.terms.iter().enumerate() {
            let neg = t.m < BigInt::zero();
            let mag = if neg { -&t.m } else { t.m.clone() };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "s{}", t.mu)?;
            match t.r {
                0 => {}
                1 => f.write_str("*q")?,
                r => write!(f, "*q^{r}")?,
            }
        }
        f.write_str("\nblocks:")?;
        for (lam, k, m) in self.blocks() {
            write!(f, " e^{lam}_{k}")?;
            if m > 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(n: usize, terms: &[(&[i32], i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(n, terms.iter().map(|(a, c)| (a.to_vec(), *c))).unwrap()
    }

    fn part(p: &[i32]) -> GenPartition {
        GenPartition::new(p.to_vec()).unwrap()
    }

    fn one_over(n: usize, factors: &[(&[i32], u32, u32)]) -> NiceRational {
        NiceRational::new(
            n,
            [(1, vec![0; n], 0)],
            factors.iter().map(|(a, k, m)| (a.to_vec(), *k, *m)),
        )
        .unwrap()
    }

    #[test]
    fn rejects_zero_factor_and_bad_lengths() {
        assert_eq!(
            NiceRational::new(2, [(1, vec![0, 0], 0)], [(vec![0, 0], 0, 1)]),
            Err(Error::ZeroFactor)
        );
        assert!(matches!(
            NiceRational::new(2, [(1, vec![0], 0)], []),
            Err(Error::ExponentLength { .. })
        ));
    }

    #[test]
    fn series_of_product_of_geometrics() {
        let f = one_over(2, &[(&[1, 0], 1, 1), (&[0, 1], 1, 1)]);
        let s = f.series(4).unwrap();
        assert_eq!(
            s.coeff(2),
            &lp(2, &[(&[2, 0], 1), (&[1, 1], 1), (&[0, 2], 1)])
        );
    }

    #[test]
    fn series_of_bare_numerator() {
        let f = NiceRational::new(2, [(1, vec![1, 1], 2)], std::iter::empty()).unwrap();
        let s = f.series(3).unwrap();
        assert!(s.coeff(0).is_zero() && s.coeff(1).is_zero() && s.coeff(3).is_zero());
        assert_eq!(s.coeff(2), &lp(2, &[(&[1, 1], 1)]));
    }

    #[test]
    fn series_rejects_k_zero() {
        let f = one_over(2, &[(&[1, 0], 0, 1)]);
        assert_eq!(
            f.series(3),
            Err(Error::FactorNotExpandable {
                alpha: vec![1, 0],
                k: 0
            })
        );
    }

    #[test]
    fn substitution_examples() {
        let f = one_over(1, &[(&[1], 0, 1)]);
        let g = f.substitute_tq().unwrap();
        let facs: Vec<_> = g.denominator().map(|(f, m)| (f.clone(), m)).collect();
        assert_eq!(
            facs,
            vec![(
                DenomFactor {
                    alpha: vec![1],
                    k: 1
                },
                1
            )]
        );

        let c = NiceRational::new(2, [(7, vec![0, 0], 3)], std::iter::empty()).unwrap();
        assert_eq!(c.substitute_tq().unwrap(), c);

        let second = NiceRational::new(
            2,
            [(1, vec![1, 1], 0)],
            [(vec![1, 0], 0, 2), (vec![0, 1], 0, 2), (vec![1, 1], 0, 1)],
        )
        .unwrap();
        let s = second.substitute_tq().unwrap();
        let facs: Vec<_> = s
            .denominator()
            .map(|(f, m)| (f.alpha.clone(), f.k, m))
            .collect();
        assert_eq!(
            facs,
            vec![(vec![0, 1], 1, 2), (vec![1, 0], 1, 2), (vec![1, 1], 2, 1)]
        );
        let num: Vec<_> = s
            .numerator_terms()
            .map(|(c, a, r)| (c.clone(), a.clone(), r))
            .collect();
        assert_eq!(num, vec![(BigInt::from(1), vec![1, 1], 2)]);
    }

    #[test]
    fn substitution_negative_power() {
        let f = NiceRational::new(2, [(1, vec![-1, 0], 0)], std::iter::empty()).unwrap();
        assert_eq!(
            f.substitute_tq(),
            Err(Error::NegativeQPower {
                alpha: vec![-1, 0],
                qpow: -1
            })
        );
    }

    #[test]
    fn add_and_mul_identities() {
        let a = one_over(2, &[(&[1, 0], 1, 1), (&[1, 1], 2, 1)]);
        assert_eq!(a.checked_mul(&NiceRational::one(2)).unwrap(), a);

        let g = one_over(1, &[(&[0], 1, 1)]);
        let two = g.checked_add(&g).unwrap();
        let expected = NiceRational::new(1, [(2, vec![0], 0)], [(vec![0], 1, 1)]).unwrap();
        assert_eq!(two, expected);

        assert!(matches!(
            a.checked_add(&g),
            Err(Error::VarCountMismatch { left: 2, right: 1 })
        ));
    }

    #[test]
    fn decompose_single_block() {
        let f = one_over(2, &[(&[1, 1], 2, 1)]);
        let d = f.decompose().unwrap();
        assert_eq!(d.blocks().collect::<Vec<_>>(), vec![(&part(&[1, 1]), 2, 1)]);
        assert_eq!(
            d.terms(),
            &[DecompositionTerm {
                m: BigInt::from(1),
                mu: part(&[0, 0]),
                r: 0
            }]
        );
    }

    #[test]
    fn decompose_full_orbit() {
        let f = one_over(2, &[(&[1, 0], 1, 1), (&[0, 1], 1, 1)]);
        let d = f.decompose().unwrap();
        assert_eq!(d.blocks().collect::<Vec<_>>(), vec![(&part(&[1, 0]), 1, 1)]);
        assert_eq!(
            d.terms(),
            &[DecompositionTerm {
                m: BigInt::from(1),
                mu: part(&[0, 0]),
                r: 0
            }]
        );
    }

    #[test]
    fn decompose_rejects_non_symmetric() {
        let f = one_over(2, &[(&[1, 0], 1, 1)]);
        assert_eq!(f.decompose(), Err(Error::NonSymmetric { degree: Some(1) }));
    }

    #[test]
    fn decompose_uneven_multiplicities() {
        // 1 / ((1 - t1 q)^2 (1 - t2 q)) needs two copies of e^(1,0)_1 and a
        // compensating (1 - t2 q) upstairs, which leaves it non-symmetric
        let f = one_over(2, &[(&[1, 0], 1, 2), (&[0, 1], 1, 1)]);
        assert!(matches!(f.decompose(), Err(Error::NonSymmetric { .. })));

        // (1 - t1 q) / ((1 - t1 q)^2 (1 - t2 q)) is symmetric in disguise
        let g = NiceRational::new(
            2,
            [(1, vec![0, 0], 0), (-1, vec![1, 0], 1)],
            [(vec![1, 0], 1, 2), (vec![0, 1], 1, 1)],
        )
        .unwrap();
        let d = g.decompose().unwrap();
        assert_eq!(d.blocks().collect::<Vec<_>>(), vec![(&part(&[1, 0]), 1, 2)]);
        let plain = one_over(2, &[(&[1, 0], 1, 1), (&[0, 1], 1, 1)]);
        assert_eq!(
            d.to_nice_rational().unwrap().series(12).unwrap(),
            plain.series(12).unwrap()
        );
    }

    #[test]
    fn decomposition_reexpands() {
        let f = NiceRational::new(
            2,
            [
                (1, vec![0, 0], 0),
                (3, vec![1, 1], 1),
                (-2, vec![2, -1], 2),
                (-2, vec![-1, 2], 2),
            ],
            [
                (vec![1, 0], 1, 1),
                (vec![0, 1], 1, 1),
                (vec![2, 0], 2, 1),
                (vec![0, 2], 2, 1),
            ],
        )
        .unwrap();
        let d = f.decompose().unwrap();
        let back = d.to_nice_rational().unwrap();
        assert_eq!(back.series(15).unwrap(), f.series(15).unwrap());
        // (2,0) and (0,2) complete with (1 - t1 t2 q^2)
        assert!(d
            .blocks()
            .any(|(lam, k, m)| lam == &part(&[2, 0]) && k == 2 && m == 1));
    }

    #[test]
    fn json_round_trip_and_defaults() {
        let text = r#"{"vars": 2,
            "numerator": [{"coeff": 1, "alpha": [0, 0]}],
            "denominator": [{"alpha": [1, 0], "qpow": 1}, {"alpha": [0, 1], "qpow": 1, "mult": 1}]}"#;
        let f: NiceRational = serde_json::from_str(text).unwrap();
        assert_eq!(f, one_over(2, &[(&[1, 0], 1, 1), (&[0, 1], 1, 1)]));
        let again: NiceRational =
            serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
        assert_eq!(again, f);
        assert!(serde_json::from_str::<NiceRational>(
            r#"{"vars": 1, "numerator": [{"coeff": 1, "alpha": [0], "qpow": -1}]}"#
        )
        .is_err());
    }

    #[test]
    fn display() {
        let f = one_over(2, &[(&[1, 0], 1, 2), (&[1, 1], 2, 1)]);
        assert_eq!(f.to_string(), "(1) / (1 - t1*q)^2*(1 - t1*t2*q^2)");
    }
}
