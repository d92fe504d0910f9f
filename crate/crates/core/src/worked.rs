//! Built-in generators and oracles: the two-variable FHL series, the Nagata
//! invariant series, the `floor(d beta)` semigroup series, and a brute-force
//! invariant count on tensor powers of `K^2`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::invariants::GroupSpec;
use crate::laurent::IntSeries;
use crate::nice_rational::NiceRational;

/// `1/((1-t1)(1-t2)) + t1 t2/((1-t1)^2 (1-t2)^2 (1-t1 t2))` over the common
/// denominator `(1-t1)^2 (1-t2)^2 (1-t1 t2)`.
pub fn fhl_series() -> NiceRational {
    let first = NiceRational::new(
        2,
        [(1, vec![0, 0], 0)],
        [(vec![1, 0], 0, 1), (vec![0, 1], 0, 1)],
    )
    .expect("valid factors");
    let second = NiceRational::new(
        2,
        [(1, vec![1, 1], 0)],
        [(vec![1, 0], 0, 2), (vec![0, 1], 0, 2), (vec![1, 1], 0, 1)],
    )
    .expect("valid factors");
    first.checked_add(&second).expect("same variable count")
}

fn binom(n: i128, k: i128) -> i128 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `dim R_(d,m)` from the closed formula for the Nagata counterexample.
pub fn nagata_dim(d: u64, m: i64) -> u64 {
    let (d, m) = (i128::from(d), i128::from(m));
    let v = if m <= 0 {
        binom(d + 2, 2)
    } else if d >= 3 * m {
        binom(d + 2, 2) - 9 * binom(m + 1, 2)
    } else {
        0
    };
    u64::try_from(v).expect("dimension is nonnegative and fits")
}

/// Coefficient of `q^(9n)` in the Nagata invariant series.
pub fn nagata_cn(n: u64) -> u64 {
    let n_i = i64::try_from(n).expect("n fits in i64");
    let dim = |m: i64| nagata_dim(n.checked_add_signed(m).expect("n + m >= 0"), m);
    let positive: u64 = (1..=n_i / 2).map(dim).sum();
    let rest: u64 = (-n_i..=0).map(dim).sum();
    positive + rest
}

/// Nagata invariant series through `q^order`, supported on multiples of 9.
pub fn nagata_series(order: usize) -> IntSeries {
    let mut coeffs = vec![BigInt::zero(); order + 1];
    for (n, slot) in coeffs.iter_mut().step_by(9).enumerate() {
        *slot = BigInt::from(nagata_cn(n as u64));
    }
    IntSeries::new(coeffs).expect("nonempty")
}

/// Checks the partial-sum identities behind the Nagata closed form at `n`.
pub fn nagata_identity_check(n: u64) -> bool {
    let ni = i128::from(n);
    let tail: i128 = (-ni..=0).map(|m| binom(ni + m + 2, 2)).sum();
    if tail != binom(ni + 3, 3) {
        return false;
    }
    let s = ni / 2;
    let partial: i128 = (1..=s)
        .map(|m| i128::from(nagata_dim((ni + m) as u64, m as i64)))
        .sum();
    let (poly, binoms) = if n.is_multiple_of(2) {
        (
            10 * s * s * s + 3 * s * s - 7 * s,
            10 * binom(s, 3) + 11 * binom(s, 2) + s,
        )
    } else {
        (
            10 * s * s * s + 18 * s * s + 8 * s,
            10 * binom(s, 3) + 16 * binom(s, 2) + 6 * s,
        )
    };
    let identities_hold = n == 0 || (poly % 6 == 0 && partial == poly / 6 && partial == binoms);
    // definition of c_n as a sum over all m >= -n against the split form
    let direct: u64 = (-(n as i64)..=(n as i64))
        .map(|m| nagata_dim(n.checked_add_signed(m).expect("n + m >= 0"), m))
        .sum();
    identities_hold && direct == nagata_cn(n)
}

/// `(a + b sqrt(d)) / c` with `c > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticIrrational {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
    squarefree: bool,
}

fn is_squarefree(d: &BigInt) -> bool {
    if d.is_zero() {
        return false;
    }
    let mut p = BigInt::from(2);
    while &p * &p <= *d {
        if (d % (&p * &p)).is_zero() {
            return false;
        }
        p += 1;
    }
    true
}

// sign of u + v sqrt(d), d >= 0
fn sign_of(u: &BigInt, v: &BigInt, d: &BigInt) -> std::cmp::Ordering {
    use std::cmp::Ordering::*;
    let su = u.sign();
    let sv = if d.is_zero() {
        num_bigint::Sign::NoSign
    } else {
        v.sign()
    };
    let to_ord = |s: num_bigint::Sign| match s {
        num_bigint::Sign::Minus => Less,
        num_bigint::Sign::NoSign => Equal,
        num_bigint::Sign::Plus => Greater,
    };
    if sv == num_bigint::Sign::NoSign {
        return to_ord(su);
    }
    if su == num_bigint::Sign::NoSign || su == sv {
        return to_ord(sv);
    }
    // opposite signs: compare u^2 with v^2 d
    match (u * u).cmp(&(v * v * d)) {
        Equal => Equal,
        Greater => to_ord(su),
        Less => to_ord(sv),
    }
}

impl QuadraticIrrational {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self> {
        let (a, b, c, d) = (a.into(), b.into(), c.into(), d.into());
        if !c.is_positive() {
            return Err(Error::InvalidIrrational(format!(
                "denominator {c} must be positive"
            )));
        }
        if d.is_negative() {
            return Err(Error::InvalidIrrational(format!(
                "radicand {d} must be nonnegative"
            )));
        }
        let squarefree = is_squarefree(&d);
        Ok(QuadraticIrrational {
            a,
            b,
            c,
            d,
            squarefree,
        })
    }

    pub fn rational(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        Self::new(p, 0, q, 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.squarefree
    }

    /// True when the value is rational (`b = 0` or a perfect-square radicand).
    pub fn is_rational(&self) -> bool {
        self.b.is_zero() || {
            let r = self.d.sqrt();
            &r * &r == self.d
        }
    }

    /// `floor(n * value)`, exact.
    pub fn floor_mul(&self, n: &BigInt) -> BigInt {
        let nb = n * &self.b;
        let radicand = &nb * &nb * &self.d;
        let root = radicand.sqrt();
        let exact = &root * &root == radicand;
        let floor_y = if !nb.is_negative() {
            root
        } else if exact {
            -root
        } else {
            -root - 1
        };
        (n * &self.a + floor_y).div_floor(&self.c)
    }

    fn check_unit_interval(&self) -> Result<()> {
        let positive = sign_of(&self.a, &self.b, &self.d).is_gt();
        let below_one = sign_of(&(&self.a - &self.c), &self.b, &self.d).is_lt();
        if positive && below_one {
            Ok(())
        } else {
            Err(Error::BetaOutOfRange)
        }
    }
}

impl fmt::Display for QuadraticIrrational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let paren = !self.c.is_one() && !self.b.is_zero() && !self.a.is_zero();
        if paren {
            f.write_str("(")?;
        }
        if !self.a.is_zero() || self.b.is_zero() {
            write!(f, "{}", self.a)?;
        }
        if !self.b.is_zero() {
            let sep = match (self.a.is_zero(), self.b.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            f.write_str(sep)?;
            if !self.b.abs().is_one() {
                write!(f, "{}*", self.b.abs())?;
            }
            write!(f, "sqrt({})", self.d)?;
        }
        if paren {
            f.write_str(")")?;
        }
        if !self.c.is_one() {
            write!(f, "/{}", self.c)?;
        }
        Ok(())
    }
}

impl FromStr for QuadraticIrrational {
    type Err = Error;

    /// Accepts `p/q`, an integer, or `a,b,c,d` for `(a + b sqrt(d)) / c`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidIrrational(format!("cannot parse {s:?}"));
        let int = |t: &str| t.trim().parse::<BigInt>().map_err(|_| bad());
        let fields: Vec<&str> = s.split(',').collect();
        match fields.as_slice() {
            [a, b, c, d] => Self::new(int(a)?, int(b)?, int(c)?, int(d)?),
            [single] => match single.split_once('/') {
                Some((p, q)) => Self::rational(int(p)?, int(q)?),
                None => Self::rational(int(single)?, 1),
            },
            _ => Err(bad()),
        }
    }
}

/// `1` at `d = 0`, otherwise `1 + floor(d beta)`.
pub fn semigroup_coeff(beta: &QuadraticIrrational, d: u64) -> Result<BigInt> {
    beta.check_unit_interval()?;
    if d == 0 {
        return Ok(BigInt::one());
    }
    Ok(beta.floor_mul(&BigInt::from(d)) + 1)
}

pub fn semigroup_series(beta: &QuadraticIrrational, order: usize) -> Result<IntSeries> {
    beta.check_unit_interval()?;
    let coeffs = (0..=order as u64)
        .map(|d| semigroup_coeff(beta, d))
        .collect::<Result<Vec<_>>>()?;
    IntSeries::new(coeffs)
}

/// `floor(d beta) - floor((d-1) beta)` at `q^d` for `d >= 1`, zero at `q^0`.
pub fn semigroup_differences(beta: &QuadraticIrrational, order: usize) -> Result<IntSeries> {
    beta.check_unit_interval()?;
    let floors: Vec<BigInt> = (0..=order as u64)
        .map(|d| beta.floor_mul(&BigInt::from(d)))
        .collect();
    let mut coeffs = vec![BigInt::zero()];
    coeffs.extend(floors.windows(2).map(|w| &w[1] - &w[0]));
    IntSeries::new(coeffs)
}

/// Smallest period `p <= max_period` (then smallest offset `N <= max_offset`)
/// with `c_(d+p) = c_d` for all `N <= d <= order - p`. A candidate needs at
/// least two full periods after the offset.
pub fn detect_eventual_period(
    c: &IntSeries,
    max_offset: usize,
    max_period: usize,
) -> Option<(usize, usize)> {
    let s = c.coeffs();
    let order = c.order();
    for p in 1..=max_period.min(order) {
        let offset = (0..=order - p)
            .rev()
            .find(|&d| s[d + p] != s[d])
            .map_or(0, |d| d + 1);
        if offset <= max_offset && order >= offset + 2 * p {
            return Some((offset, p));
        }
    }
    None
}

pub const ORACLE_MAX_DEGREE: usize = 12;

fn eliminate<T>(rows: Vec<Vec<T>>) -> Option<usize>
where
    T: Integer + Signed + Clone + CheckedMul + CheckedSub,
{
    let mut pivots: Vec<(usize, Vec<T>)> = Vec::new();
    for mut row in rows {
        for (col, prow) in &pivots {
            let x = row[*col].clone();
            if x.is_zero() {
                continue;
            }
            let p = prow[*col].clone();
            let g = p.gcd(&x);
            let (fp, fx) = (p / g.clone(), x / g);
            for (r, pr) in row.iter_mut().zip(prow) {
                *r = r.checked_mul(&fp)?.checked_sub(&pr.checked_mul(&fx)?)?;
            }
        }
        let Some(lead) = row.iter().position(|v| !v.is_zero()) else {
            continue;
        };
        let g = row.iter().fold(T::zero(), |acc, v| acc.gcd(v));
        for v in &mut row {
            *v = v.clone() / g.clone();
        }
        pivots.push((lead, row));
        pivots.sort_by_key(|(c, _)| *c);
    }
    Some(pivots.len())
}

/// Rank over the rationals of an integer matrix given by rows.
fn exact_rank(rows: Vec<Vec<i64>>) -> usize {
    let wide: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| i128::from(v)).collect())
        .collect();
    eliminate(wide).unwrap_or_else(|| {
        let big = rows
            .into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect();
        eliminate::<BigInt>(big).expect("big integers do not overflow")
    })
}

// Basis tensors of (K^2)^{(x)d} are bit masks: bit i set means the i-th
// factor is the second basis vector.
fn weight_block(d: usize, k: u32) -> Vec<u32> {
    (0u32..1 << d).filter(|b| b.count_ones() == k).collect()
}

/// Dimension of the `G`-invariants in `(K^2)^{(x)d}` by direct linear algebra:
/// joint kernels of Lie algebra operators for connected groups, admissible
/// basis tensors for diagonal groups.
pub fn tensor_invariant_dim_oracle(g: &GroupSpec, n: usize, d: usize) -> Result<u64> {
    if n != 2 || g.n() != 2 {
        return Err(Error::UnsupportedSize(format!(
            "oracle supports n = 2 only, got n = {n}"
        )));
    }
    if d > ORACLE_MAX_DEGREE {
        return Err(Error::UnsupportedSize(format!(
            "oracle supports degree at most {ORACLE_MAX_DEGREE}, got {d}"
        )));
    }
    g.validate()?;
    if let Some(fixed) = (0u32..1 << d)
        .map(|b| {
            let k = b.count_ones() as i32;
            g.fixes_monomial(&[d as i32 - k, k])
        })
        .collect::<Option<Vec<bool>>>()
    {
        return Ok(fixed.into_iter().filter(|&f| f).count() as u64);
    }
    // raising moves a set bit to clear (weight k -> k-1), lowering the reverse
    let (raise, lower, diagonal) = match g {
        GroupSpec::MaximalUnipotent { .. } => (true, false, false),
        GroupSpec::SpecialLinear { .. } => (true, true, false),
        GroupSpec::FullGL { .. } => (true, true, true),
        _ => unreachable!("diagonal groups handled above"),
    };
    let mut total = 0u64;
    for k in 0..=d as u32 {
        let cols = weight_block(d, k);
        let mut rows: Vec<Vec<i64>> = Vec::new();
        let mut push_operator = |target_k: u32, flip_set: bool| {
            let targets = weight_block(d, target_k);
            let mut block = vec![vec![0i64; cols.len()]; targets.len()];
            for (j, &b) in cols.iter().enumerate() {
                for i in 0..d {
                    let bit = 1u32 << i;
                    if (b & bit != 0) == flip_set {
                        let image = b ^ bit;
                        let r = targets.binary_search(&image).expect("weight preserved");
                        block[r][j] += 1;
                    }
                }
            }
            rows.extend(block);
        };
        if raise && k > 0 {
            push_operator(k - 1, true);
        }
        if lower && (k as usize) < d {
            push_operator(k + 1, false);
        }
        if diagonal {
            // e11 and e22 act by the counts of each basis vector
            for scale in [d as i64 - i64::from(k), i64::from(k)] {
                for c in 0..cols.len() {
                    let mut row = vec![0i64; cols.len()];
                    row[c] = scale;
                    rows.push(row);
                }
            }
        }
        let rank = if rows.is_empty() { 0 } else { exact_rank(rows) };
        total += (cols.len() - rank) as u64;
    }
    Ok(total)
}
