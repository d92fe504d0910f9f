//! Generalized partitions, Schur polynomials and Schur expansions.
//!
//! Characters of irreducible `GL_n`-modules are computed two ways: by
//! enumerating semistandard Young tableaux ([`schur_poly`]) and by dividing
//! the alternant by the Vandermonde product ([`schur_poly_bialternant`]).
//! Negative parts are handled by twisting with a power of the determinant.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::json;
use crate::laurent::{Exponent, LaurentPoly};

/// A weakly decreasing integer vector; entries may be negative.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GenPartition(Vec<i32>);

impl GenPartition {
    pub fn new(parts: Vec<i32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition { parts });
        }
        Ok(GenPartition(parts))
    }

    /// The all-zero partition with `n` parts.
    pub fn zero(n: usize) -> Self {
        GenPartition(vec![0; n])
    }

    /// Sorts an exponent vector into weakly decreasing order.
    pub fn sorted_from(alpha: &[i32]) -> Self {
        let mut parts = alpha.to_vec();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        GenPartition(parts)
    }

    pub fn parts(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&p| p == 0)
    }

    /// Smallest part, or 0 for the empty partition.
    pub fn last(&self) -> i32 {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn size(&self) -> i64 {
        self.0.iter().map(|&p| i64::from(p)).sum()
    }

    /// Adds `c` to every part (a determinant twist).
    pub fn shifted(&self, c: i32) -> Self {
        GenPartition(self.0.iter().map(|p| p + c).collect())
    }
}

impl fmt::Display for GenPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

impl Serialize for GenPartition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GenPartition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        GenPartition::new(Vec::<i32>::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

fn check_parts(lam: &GenPartition, n: usize) -> Result<()> {
    if lam.len() == n {
        Ok(())
    } else {
        Err(Error::PartCountMismatch {
            expected: n,
            got: lam.len(),
        })
    }
}

/// Depth-first filler for semistandard tableaux, column by column.
struct TableauFiller<'a> {
    n: usize,
    cells: Vec<(usize, usize)>,
    heights: Vec<usize>,
    grid: Vec<Vec<usize>>,
    content: Vec<usize>,
    cap: Option<&'a [usize]>,
}

impl<'a> TableauFiller<'a> {
    fn new(n: usize, shape: &'a [usize], cap: Option<&'a [usize]>) -> Self {
        let width = shape.first().copied().unwrap_or(0);
        let heights: Vec<usize> = (0..width)
            .map(|j| shape.iter().take_while(|&&r| r > j).count())
            .collect();
        let cells = (0..width)
            .flat_map(|j| (0..heights[j]).map(move |i| (i, j)))
            .collect();
        TableauFiller {
            n,
            cells,
            heights,
            grid: shape.iter().map(|&r| vec![0; r]).collect(),
            content: vec![0; n],
            cap,
        }
    }

    fn run(&mut self, visit: &mut impl FnMut(&[usize])) {
        self.fill(0, visit);
    }

    fn fill(&mut self, idx: usize, visit: &mut impl FnMut(&[usize])) {
        let Some(&(i, j)) = self.cells.get(idx) else {
            visit(&self.content);
            return;
        };
        // entries are 0-based values standing for 1..=n
        let mut lo = 0;
        if j > 0 {
            lo = lo.max(self.grid[i][j - 1]);
        }
        if i > 0 {
            lo = lo.max(self.grid[i - 1][j] + 1);
        }
        // leave room for the strictly increasing cells below in this column
        let below = self.heights[j] - 1 - i;
        let Some(hi) = self.n.checked_sub(1 + below) else {
            return;
        };
        for v in lo..=hi {
            if let Some(cap) = self.cap {
                if self.content[v] >= cap[v] {
                    continue;
                }
            }
            self.grid[i][j] = v;
            self.content[v] += 1;
            self.fill(idx + 1, visit);
            self.content[v] -= 1;
        }
    }
}

fn nonnegative_shape(lam: &GenPartition) -> Result<Vec<usize>> {
    lam.parts()
        .iter()
        .map(|&p| {
            usize::try_from(p).map_err(|_| Error::NegativeParts {
                parts: lam.0.clone(),
            })
        })
        .collect()
}

/// Character of `L_lambda` by semistandard tableau enumeration.
///
/// For `lambda_n < 0` this is `(t_1...t_n)^{lambda_n}` times the Schur
/// polynomial of `lambda - lambda_n (1,...,1)`.
pub fn schur_poly(lam: &GenPartition, n: usize) -> Result<LaurentPoly> {
    check_parts(lam, n)?;
    let twist = lam.last().min(0);
    let base = lam.shifted(-twist);
    let shape = nonnegative_shape(&base)?;
    let mut out = LaurentPoly::zero(n);
    let one = BigInt::from(1);
    TableauFiller::new(n, &shape, None).run(&mut |content| {
        let alpha: Exponent = content.iter().map(|&c| c as i32 + twist).collect();
        out.add_term(alpha, one.clone());
    });
    Ok(out)
}

/// All permutations of `0..n` with their signs.
fn signed_permutations(n: usize) -> Vec<(Vec<usize>, i32)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<(Vec<usize>, i32)>) {
        let n = used.len();
        if prefix.len() == n {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| prefix[i] > prefix[j])
                .count();
            out.push((prefix.clone(), if inversions % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

/// Character of `L_lambda` as the alternant of `lambda + delta` divided
/// exactly by the Vandermonde product `prod_{i<j} (t_i - t_j)`.
pub fn schur_poly_bialternant(lam: &GenPartition, n: usize) -> Result<LaurentPoly> {
    check_parts(lam, n)?;
    let shifted: Vec<i32> = lam
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| p + (n - 1 - i) as i32)
        .collect();
    let mut alternant = LaurentPoly::zero(n);
    for (sigma, sign) in signed_permutations(n) {
        let mut alpha = vec![0; n];
        for (i, &s) in sigma.iter().enumerate() {
            alpha[s] = shifted[i];
        }
        alternant.add_term(alpha, BigInt::from(sign));
    }
    let mut vandermonde = LaurentPoly::one(n);
    for i in 0..n {
        for j in i + 1..n {
            let diff = &LaurentPoly::var(n, i) - &LaurentPoly::var(n, j);
            vandermonde = &vandermonde * &diff;
        }
    }
    alternant.exact_div(&vandermonde)
}

/// Integer combination `sum m_lambda s_lambda`, canonically ordered
/// lex-descending on the partitions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SchurExpansion {
    nvars: usize,
    terms: BTreeMap<GenPartition, BigInt>,
}

impl SchurExpansion {
    pub fn zero(nvars: usize) -> Self {
        SchurExpansion {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BigInt, GenPartition)>,
    {
        let mut out = Self::zero(nvars);
        for (c, lam) in terms {
            check_parts(&lam, nvars)?;
            out.add(lam, c);
        }
        Ok(out)
    }

    fn add(&mut self, lam: GenPartition, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(lam) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.nvars
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// `(coefficient, partition)` pairs, lex-descending on partitions.
    pub fn terms(&self) -> impl Iterator<Item = (&BigInt, &GenPartition)> + '_ {
        self.terms.iter().rev().map(|(lam, c)| (c, lam))
    }

    pub fn coeff(&self, lam: &GenPartition) -> BigInt {
        self.terms.get(lam).cloned().unwrap_or_default()
    }

    /// Re-expands `sum m_lambda s_lambda` as a Laurent polynomial.
    pub fn to_poly(&self) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero(self.nvars);
        for (lam, c) in &self.terms {
            out = &out + &schur_poly(lam, self.nvars)?.scale(c);
        }
        Ok(out)
    }
}

impl fmt::Display for SchurExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (c, lam)) in self.terms().enumerate() {
            let neg = c.sign() == num_bigint::Sign::Minus;
            let mag = if neg { -c } else { c.clone() };
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if mag != BigInt::from(1) {
                write!(f, "{mag}*")?;
            }
            write!(f, "s{lam}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct ExpansionRecord {
    #[serde(
        serialize_with = "json::serialize_bigint_number",
        deserialize_with = "json::deserialize_bigint"
    )]
    coeff: BigInt,
    lam: GenPartition,
}

impl Serialize for SchurExpansion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (c, lam) in self.terms() {
            seq.serialize_element(&ExpansionRecord {
                coeff: c.clone(),
                lam: lam.clone(),
            })?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for SchurExpansion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let records = Vec::<ExpansionRecord>::deserialize(d)?;
        let nvars = records.first().map_or(0, |r| r.lam.len());
        SchurExpansion::from_terms(nvars, records.into_iter().map(|r| (r.coeff, r.lam)))
            .map_err(serde::de::Error::custom)
    }
}

/// Expands a symmetric Laurent polynomial in the Schur basis.
///
/// Works on dominant monomials only (weakly decreasing exponents), which
/// determine a symmetric polynomial. Repeatedly peels off the lex-greatest
/// one, `t^mu`, with `coeff * s_mu`; `s_mu` has lex-leading coefficient 1,
/// so the remainder's leading term strictly drops.
pub fn schur_expand(p: &LaurentPoly) -> Result<SchurExpansion> {
    if !p.is_symmetric() {
        return Err(Error::NonSymmetric { degree: None });
    }
    let n = p.num_vars();
    let dominant = |q: &LaurentPoly| q.filter_terms(|a| a.windows(2).all(|w| w[0] >= w[1]));
    let mut rem = dominant(p);
    let mut out = SchurExpansion::zero(n);
    while let Some((mu, c)) = rem.leading_term() {
        let lam = GenPartition::new(mu.clone()).expect("dominant exponents are weakly decreasing");
        let c = c.clone();
        rem.add_scaled(&dominant(&schur_poly(&lam, n)?), &-&c);
        out.add(lam, c);
    }
    Ok(out)
}

/// Kostka number: semistandard tableaux of shape `lam` and content `mu`.
pub fn kostka(lam: &GenPartition, mu: &[i32]) -> Result<u64> {
    let shape = nonnegative_shape(lam)?;
    check_parts(lam, mu.len())?;
    if mu.iter().any(|&m| m < 0) || lam.size() != mu.iter().map(|&m| i64::from(m)).sum::<i64>() {
        return Ok(0);
    }
    let cap: Vec<usize> = mu.iter().map(|&m| m as usize).collect();
    let mut count = 0u64;
    TableauFiller::new(mu.len(), &shape, Some(&cap)).run(&mut |content| {
        if content == cap.as_slice() {
            count += 1;
        }
    });
    Ok(count)
}

/// One factor `(1 - t^alpha q^k)` of `e^lambda_k` with its multiplicity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EFactor {
    pub alpha: Exponent,
    pub k: u32,
    pub mult: u64,
}

/// The factor list of `e^lambda_k = prod (1 - t^alpha q^k)` over the
/// monomials of `s_lambda`, each with multiplicity its coefficient.
pub fn e_factor(lam: &GenPartition, k: u32) -> Result<Vec<EFactor>> {
    let s = schur_poly(lam, lam.len())?;
    Ok(s.terms()
        .map(|(alpha, c)| EFactor {
            alpha: alpha.clone(),
            k,
            mult: c
                .to_u64()
                .expect("Schur coefficients are small and positive"),
        })
        .collect())
}
