//! Recovering a closed form `P(q) / prod (1 - q^d_j)` from a series prefix.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json;
use crate::laurent::IntSeries;

/// Trailing coefficients of the cleared numerator that must vanish.
pub const DEFAULT_GUARD: usize = 5;
/// Extra terms beyond `2L` required by [`find_recurrence`].
pub const RECURRENCE_MARGIN: usize = 4;
pub const SEARCH_MAX_SUM: u32 = 60;
pub const SEARCH_MAX_PART: u32 = 30;

/// `numerator / prod (1 - q^d)` for `d` in `denom_degrees`, checked against
/// the source series through `q^verified_to`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FittedForm {
    numerator: Vec<BigInt>,
    denom_degrees: Vec<u32>,
    verified_to: usize,
}

impl FittedForm {
    pub fn numerator(&self) -> &[BigInt] {
        &self.numerator
    }

    /// Sorted ascending.
    pub fn denom_degrees(&self) -> &[u32] {
        &self.denom_degrees
    }

    pub fn verified_to(&self) -> usize {
        self.verified_to
    }

    pub fn series(&self, order: usize) -> IntSeries {
        expand_hilbert_serre(&self.numerator, &self.denom_degrees, order)
    }

    pub fn report(&self) -> FitReport {
        FitReport {
            fit: true,
            numerator: self.numerator.clone(),
            denominator_degrees: self.denom_degrees.clone(),
            verified_to: self.verified_to,
        }
    }
}

impl fmt::Display for FittedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        write_q_poly(
            f,
            self.numerator
                .iter()
                .map(|c| (c.is_negative(), c.abs().to_string())),
        )?;
        write!(f, ") / ")?;
        write_denominator(f, &self.denom_degrees)
    }
}

/// Report shape shared by the CLI and the FFI layer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FitReport {
    pub fit: bool,
    #[serde(
        serialize_with = "json::serialize_bigint_vec",
        deserialize_with = "json::deserialize_bigint_vec"
    )]
    pub numerator: Vec<BigInt>,
    pub denominator_degrees: Vec<u32>,
    pub verified_to: usize,
}

impl FitReport {
    pub fn no_fit(denominator_degrees: Vec<u32>, verified_to: usize) -> Self {
        FitReport {
            fit: false,
            numerator: Vec::new(),
            denominator_degrees,
            verified_to,
        }
    }
}

fn write_q_poly<I>(f: &mut fmt::Formatter<'_>, coeffs: I) -> fmt::Result
where
    I: IntoIterator<Item = (bool, String)>,
{
    let mut first = true;
    for (d, (neg, abs)) in coeffs.into_iter().enumerate() {
        if abs == "0" {
            continue;
        }
        match (first, neg) {
            (true, true) => f.write_str("-")?,
            (true, false) => {}
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
        }
        first = false;
        match d {
            0 => f.write_str(&abs)?,
            _ => {
                if abs != "1" {
                    write!(f, "{abs}*")?;
                }
                f.write_str("q")?;
                if d > 1 {
                    write!(f, "^{d}")?;
                }
            }
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

fn write_denominator(f: &mut fmt::Formatter<'_>, degs: &[u32]) -> fmt::Result {
    if degs.is_empty() {
        return f.write_str("1");
    }
    let mut i = 0;
    while i < degs.len() {
        let d = degs[i];
        let run = degs[i..].iter().take_while(|&&e| e == d).count();
        match d {
            1 => f.write_str("(1 - q)")?,
            _ => write!(f, "(1 - q^{d})")?,
        }
        if run > 1 {
            write!(f, "^{run}")?;
        }
        i += run;
    }
    Ok(())
}

/// Expands `num / prod (1 - q^d)` through `q^order`.
pub fn expand_hilbert_serre(num: &[BigInt], degs: &[u32], order: usize) -> IntSeries {
    let mut s: Vec<BigInt> = (0..=order)
        .map(|i| num.get(i).cloned().unwrap_or_default())
        .collect();
    for &d in degs {
        let d = d as usize;
        for i in d..=order {
            let prev = s[i - d].clone();
            s[i] += prev;
        }
    }
    IntSeries::new(s).expect("nonempty")
}

fn check_degrees(degs: &[u32]) -> Result<()> {
    if degs.contains(&0) {
        return Err(Error::InvalidInput(
            "denominator degrees must be at least 1".into(),
        ));
    }
    Ok(())
}

/// Clears the denominator `prod (1 - q^d)` from `c` and accepts the result
/// as a numerator when its top `guard` coefficients vanish.
pub fn fit_numerator(c: &IntSeries, degs: &[u32], guard: usize) -> Result<FittedForm> {
    check_degrees(degs)?;
    let order = c.order();
    let needed = degs.iter().map(|&d| d as usize).sum::<usize>() + guard;
    if needed > order {
        return Err(Error::InsufficientPrefix { order, needed });
    }
    let mut p = c.coeffs().to_vec();
    for &d in degs {
        let d = d as usize;
        for i in (d..=order).rev() {
            let prev = p[i - d].clone();
            p[i] -= prev;
        }
    }
    let tail = order + 1 - guard;
    if let Some(degree) = (tail..=order).find(|&i| !p[i].is_zero()) {
        return Err(Error::NoFit { degree });
    }
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    let mut denom_degrees = degs.to_vec();
    denom_degrees.sort_unstable();
    let form = FittedForm {
        numerator: p,
        denom_degrees,
        verified_to: order,
    };
    assert_eq!(
        &form.series(order),
        c,
        "fitted form must re-expand to its source"
    );
    Ok(form)
}

/// Outcome of [`search_denominators`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub fit: Option<FittedForm>,
    /// Largest `sum d_j` examined; smaller than requested when the prefix is short.
    pub max_sum: u32,
    pub max_part: u32,
}

const MODULUS: u64 = (1 << 61) - 1;

fn reduce(c: &BigInt) -> u64 {
    c.mod_floor(&BigInt::from(MODULUS))
        .to_u64()
        .expect("residue fits")
}

struct Sieve<'a> {
    order: usize,
    tail: usize,
    max_part: u32,
    base: &'a [u64],
}

impl Sieve<'_> {
    fn tail_vanishes(&self, s: &[u64]) -> bool {
        s[self.tail..].iter().all(|&x| x == 0)
    }

    fn apply(&self, s: &mut [u64], d: usize) {
        for i in (d..=self.order).rev() {
            let (a, b) = (s[i], s[i - d]);
            s[i] = if a >= b { a - b } else { a + MODULUS - b };
        }
    }

    fn run(&self, first: u32, budget: u32) -> Vec<Vec<u32>> {
        let mut found = Vec::new();
        let mut parts = vec![first];
        let mut buf = self.base.to_vec();
        self.apply(&mut buf, first as usize);
        self.descend(&mut parts, buf, budget - first, &mut found);
        found
    }

    fn descend(&self, parts: &mut Vec<u32>, s: Vec<u64>, budget: u32, found: &mut Vec<Vec<u32>>) {
        if self.tail_vanishes(&s) {
            found.push(parts.clone());
        }
        let lo = *parts.last().expect("nonempty");
        for d in lo..=self.max_part.min(budget) {
            let mut next = s.clone();
            self.apply(&mut next, d as usize);
            parts.push(d);
            self.descend(parts, next, budget - d, found);
            parts.pop();
        }
    }
}

/// Searches denominator multisets with `sum d_j <= max_sum` and every
/// `d_j <= max_part`, smallest sum first and ties broken by the ascending
/// part list compared lexicographically. Returns the first that fits.
pub fn search_denominators(
    c: &IntSeries,
    guard: usize,
    max_sum: u32,
    max_part: u32,
) -> Result<SearchOutcome> {
    let order = c.order();
    if guard > order {
        return Err(Error::InsufficientPrefix {
            order,
            needed: guard,
        });
    }
    let max_sum = max_sum.min(u32::try_from(order - guard).unwrap_or(u32::MAX));
    let max_part = max_part.min(max_sum);
    let base: Vec<u64> = c.coeffs().iter().map(reduce).collect();
    let sieve = Sieve {
        order,
        tail: order + 1 - guard,
        max_part,
        base: &base,
    };
    let mut candidates: Vec<Vec<u32>> = (1..=max_part)
        .into_par_iter()
        .flat_map_iter(|first| sieve.run(first, max_sum))
        .collect();
    if sieve.tail_vanishes(&base) {
        candidates.push(Vec::new());
    }
    candidates.sort_by(|a, b| {
        let (sa, sb) = (a.iter().sum::<u32>(), b.iter().sum::<u32>());
        sa.cmp(&sb).then_with(|| a.cmp(b))
    });
    let fit = candidates
        .iter()
        .find_map(|degs| fit_numerator(c, degs, guard).ok());
    Ok(SearchOutcome {
        fit,
        max_sum,
        max_part,
    })
}

/// Minimal linear recurrence of a series prefix, as a rational function
/// `numerator / denom_poly` with `denom_poly(0) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceGuess {
    pub found: bool,
    /// Linear complexity of the prefix; may exceed the requested bound when
    /// `found` is false.
    pub order: usize,
    pub denom_poly: Vec<BigRational>,
    pub numerator: Vec<BigRational>,
}

impl RecurrenceGuess {
    pub fn series(&self, order: usize) -> Vec<BigRational> {
        let mut s = vec![BigRational::zero(); order + 1];
        for i in 0..=order {
            let mut v = self.numerator.get(i).cloned().unwrap_or_default();
            for (j, cj) in self.denom_poly.iter().enumerate().skip(1).take(i) {
                v -= cj * &s[i - j];
            }
            s[i] = v;
        }
        s
    }
}

impl fmt::Display for RecurrenceGuess {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.found {
            return write!(f, "no recurrence (linear complexity {})", self.order);
        }
        let terms = |p: &[BigRational]| -> Vec<(bool, String)> {
            p.iter()
                .map(|c| (c.is_negative(), c.abs().to_string()))
                .collect()
        };
        write!(f, "(")?;
        write_q_poly(f, terms(&self.numerator))?;
        write!(f, ") / (")?;
        write_q_poly(f, terms(&self.denom_poly))?;
        write!(f, ")")
    }
}

fn berlekamp_massey(s: &[BigRational]) -> (Vec<BigRational>, usize) {
    let mut conn = vec![BigRational::one()];
    let mut prev = vec![BigRational::one()];
    let mut len = 0usize;
    let mut shift = 1usize;
    let mut prev_disc = BigRational::one();
    for n in 0..s.len() {
        let mut disc = s[n].clone();
        for i in 1..=len.min(conn.len() - 1) {
            disc += &conn[i] * &s[n - i];
        }
        if disc.is_zero() {
            shift += 1;
            continue;
        }
        let coef = &disc / &prev_disc;
        let snapshot = conn.clone();
        if conn.len() < prev.len() + shift {
            conn.resize(prev.len() + shift, BigRational::zero());
        }
        for (i, b) in prev.iter().enumerate() {
            conn[i + shift] -= &coef * b;
        }
        if 2 * len <= n {
            len = n + 1 - len;
            prev = snapshot;
            prev_disc = disc;
            shift = 1;
        } else {
            shift += 1;
        }
    }
    while conn.len() > 1 && conn.last().is_some_and(Zero::is_zero) {
        conn.pop();
    }
    (conn, len)
}

/// Finds the minimal linear recurrence of order at most `max_order` that
/// the whole prefix satisfies.
pub fn find_recurrence(c: &IntSeries, max_order: usize) -> Result<RecurrenceGuess> {
    let needed = 2 * max_order + RECURRENCE_MARGIN;
    if c.order() < needed {
        return Err(Error::InsufficientPrefix {
            order: c.order(),
            needed,
        });
    }
    let s: Vec<BigRational> = c
        .coeffs()
        .iter()
        .map(|x| BigRational::from_integer(x.clone()))
        .collect();
    let (denom_poly, len) = berlekamp_massey(&s);
    if len > max_order {
        return Ok(RecurrenceGuess {
            found: false,
            order: len,
            denom_poly: Vec::new(),
            numerator: Vec::new(),
        });
    }
    let mut numerator: Vec<BigRational> = (0..len)
        .map(|i| {
            denom_poly
                .iter()
                .take(i + 1)
                .enumerate()
                .map(|(j, cj)| cj * &s[i - j])
                .sum()
        })
        .collect();
    while numerator.last().is_some_and(Zero::is_zero) {
        numerator.pop();
    }
    let guess = RecurrenceGuess {
        found: true,
        order: len,
        denom_poly,
        numerator,
    };
    assert_eq!(
        guess.series(c.order()),
        s,
        "recurrence must reproduce its prefix"
    );
    Ok(guess)
}
