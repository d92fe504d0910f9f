//! The linear map `D` sending `ch(L_lambda)` to `dim L_lambda^G`, and its
//! coefficient-wise extension from formal character series to Hilbert
//! series of invariant subspaces.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{CharacterSeries, IntSeries, LaurentPoly};
use crate::nice_rational::NiceRational;
use crate::schur::{schur_expand, schur_poly, GenPartition};

/// A subgroup `G <= GL_n` from one of the supported classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", try_from = "GroupSpecRepr", into = "GroupSpecRepr")]
pub enum GroupSpec {
    FullGL {
        n: usize,
    },
    SpecialLinear {
        n: usize,
    },
    /// Diagonal torus; one weight vector per torus coordinate. A monomial
    /// `t^a` is fixed iff `w . a = 0` for every weight `w`.
    DiagonalTorus {
        n: usize,
        weights: Vec<Vec<i32>>,
    },
    /// Upper unitriangular matrices.
    MaximalUnipotent {
        n: usize,
    },
    /// Cyclic group of order `order` acting by `diag(z^e_1, ..., z^e_n)`.
    CyclicDiagonal {
        n: usize,
        order: u32,
        exponents: Vec<i32>,
    },
}

impl GroupSpec {
    pub fn n(&self) -> usize {
        match self {
            GroupSpec::FullGL { n }
            | GroupSpec::SpecialLinear { n }
            | GroupSpec::DiagonalTorus { n, .. }
            | GroupSpec::MaximalUnipotent { n }
            | GroupSpec::CyclicDiagonal { n, .. } => *n,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        if n == 0 {
            return Err(Error::InvalidGroup("n must be at least 1".into()));
        }
        match self {
            GroupSpec::DiagonalTorus { weights, .. } => {
                if let Some(w) = weights.iter().find(|w| w.len() != n) {
                    return Err(Error::InvalidGroup(format!(
                        "torus weight {w:?} has length {}, expected {n}",
                        w.len()
                    )));
                }
            }
            GroupSpec::CyclicDiagonal {
                order, exponents, ..
            } => {
                if *order == 0 {
                    return Err(Error::InvalidGroup(
                        "cyclic order must be at least 1".into(),
                    ));
                }
                if exponents.len() != n {
                    return Err(Error::InvalidGroup(format!(
                        "cyclic exponents have length {}, expected {n}",
                        exponents.len()
                    )));
                }
            }
            _ => {}
        }
        Ok(())
    }

    fn is_diagonal(&self) -> bool {
        matches!(
            self,
            GroupSpec::DiagonalTorus { .. } | GroupSpec::CyclicDiagonal { .. }
        )
    }

    /// For diagonal groups: whether the monomial `t^a` is fixed.
    pub fn fixes_monomial(&self, a: &[i32]) -> Option<bool> {
        let dot = |w: &[i32]| -> i64 {
            w.iter()
                .zip(a)
                .map(|(&x, &y)| i64::from(x) * i64::from(y))
                .sum()
        };
        match self {
            GroupSpec::DiagonalTorus { weights, .. } => Some(weights.iter().all(|w| dot(w) == 0)),
            GroupSpec::CyclicDiagonal {
                order, exponents, ..
            } => Some(dot(exponents).rem_euclid(i64::from(*order)) == 0),
            _ => None,
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum GroupSpecRepr {
    Gl {
        n: usize,
    },
    Sl {
        n: usize,
    },
    Torus {
        n: usize,
        weights: Vec<Vec<i32>>,
    },
    Unipotent {
        n: usize,
    },
    Cyclic {
        n: usize,
        order: u32,
        exponents: Vec<i32>,
    },
}

impl TryFrom<GroupSpecRepr> for GroupSpec {
    type Error = Error;

    fn try_from(r: GroupSpecRepr) -> Result<Self> {
        let g = match r {
            GroupSpecRepr::Gl { n } => GroupSpec::FullGL { n },
            GroupSpecRepr::Sl { n } => GroupSpec::SpecialLinear { n },
            GroupSpecRepr::Torus { n, weights } => GroupSpec::DiagonalTorus { n, weights },
            GroupSpecRepr::Unipotent { n } => GroupSpec::MaximalUnipotent { n },
            GroupSpecRepr::Cyclic {
                n,
                order,
                exponents,
            } => GroupSpec::CyclicDiagonal {
                n,
                order,
                exponents,
            },
        };
        g.validate()?;
        Ok(g)
    }
}

impl From<GroupSpec> for GroupSpecRepr {
    fn from(g: GroupSpec) -> Self {
        match g {
            GroupSpec::FullGL { n } => GroupSpecRepr::Gl { n },
            GroupSpec::SpecialLinear { n } => GroupSpecRepr::Sl { n },
            GroupSpec::DiagonalTorus { n, weights } => GroupSpecRepr::Torus { n, weights },
            GroupSpec::MaximalUnipotent { n } => GroupSpecRepr::Unipotent { n },
            GroupSpec::CyclicDiagonal {
                n,
                order,
                exponents,
            } => GroupSpecRepr::Cyclic {
                n,
                order,
                exponents,
            },
        }
    }
}

/// `dim L_lambda^G`.
pub fn d_schur(g: &GroupSpec, lam: &GenPartition) -> Result<BigInt> {
    let n = g.n();
    if lam.len() != n {
        return Err(Error::PartCountMismatch {
            expected: n,
            got: lam.len(),
        });
    }
    let indicator = |b: bool| if b { BigInt::one() } else { BigInt::zero() };
    Ok(match g {
        GroupSpec::FullGL { .. } => indicator(lam.is_zero()),
        GroupSpec::SpecialLinear { .. } => indicator(lam.parts().windows(2).all(|w| w[0] == w[1])),
        // the highest-weight line, for every lambda including det twists
        GroupSpec::MaximalUnipotent { .. } => BigInt::one(),
        GroupSpec::DiagonalTorus { .. } | GroupSpec::CyclicDiagonal { .. } => {
            fixed_coefficient_sum(g, &schur_poly(lam, n)?)
        }
    })
}

fn fixed_coefficient_sum(g: &GroupSpec, p: &LaurentPoly) -> BigInt {
    p.terms()
        .filter(|(a, _)| g.fixes_monomial(a) == Some(true))
        .map(|(_, c)| c)
        .sum()
}

fn check_input(g: &GroupSpec, p: &LaurentPoly) -> Result<()> {
    if !p.is_zero() && p.num_vars() != g.n() {
        return Err(Error::VarCountMismatch {
            left: g.n(),
            right: p.num_vars(),
        });
    }
    if !p.is_symmetric() {
        return Err(Error::NonSymmetric { degree: None });
    }
    Ok(())
}

/// `D(p)` for a symmetric Laurent polynomial `p`.
///
/// Diagonal groups filter monomials directly; the other classes go through
/// the Schur expansion.
pub fn d_character(g: &GroupSpec, p: &LaurentPoly) -> Result<BigInt> {
    check_input(g, p)?;
    if g.is_diagonal() {
        Ok(fixed_coefficient_sum(g, p))
    } else {
        d_character_via_schur(g, p)
    }
}

/// `D(p)` computed as `sum m_lambda D(s_lambda)` over the Schur expansion,
/// for every group class.
pub fn d_character_via_schur(g: &GroupSpec, p: &LaurentPoly) -> Result<BigInt> {
    check_input(g, p)?;
    let mut total = BigInt::zero();
    for (m, lam) in schur_expand(p)?.terms() {
        total += m * d_schur(g, lam)?;
    }
    Ok(total)
}

/// Hilbert series of the invariant subspace: `D` applied per `q`-degree.
pub fn hilbert_invariants(g: &GroupSpec, ch: &CharacterSeries) -> Result<IntSeries> {
    g.validate()?;
    let coeffs = ch
        .coeffs()
        .par_iter()
        .enumerate()
        .map(|(d, p)| {
            d_character(g, p).map_err(|e| match e {
                Error::NonSymmetric { .. } => Error::NonSymmetric { degree: Some(d) },
                other => other,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    IntSeries::new(coeffs)
}

/// Character of the tensor algebra on `K^n`: `(t_1 + ... + t_n)^d` at `q^d`.
pub fn free_algebra_character(n: usize, order: usize) -> CharacterSeries {
    let linear = (0..n).fold(LaurentPoly::zero(n), |acc, i| {
        &acc + &LaurentPoly::var(n, i)
    });
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut power = LaurentPoly::one(n);
    for _ in 0..=order {
        let next = &power * &linear;
        coeffs.push(power);
        power = next;
    }
    CharacterSeries::new(n, coeffs).expect("nonempty series")
}

/// Pipeline input: a multigraded nice rational function (substituted
/// `t_i -> t_i q` before expansion), an explicit character series, or the
/// tensor algebra generator, which has no nice rational form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CharacterSource {
    Multigraded(NiceRational),
    Series(CharacterSeries),
    FreeAlgebra { vars: usize },
}

impl CharacterSource {
    /// Dispatches on the keys present: `numerator`, `coeffs`, or `generator`.
    pub fn from_json(text: &str) -> Result<Self> {
        let bad = |e: serde_json::Error| Error::InvalidInput(e.to_string());
        let value: serde_json::Value = serde_json::from_str(text).map_err(bad)?;
        let has = |k: &str| value.get(k).is_some();
        if has("generator") {
            let name = value["generator"].as_str().unwrap_or_default();
            if name != "free_algebra" {
                return Err(Error::InvalidInput(format!("unknown generator {name:?}")));
            }
            let vars = value
                .get("vars")
                .and_then(serde_json::Value::as_u64)
                .filter(|&v| v >= 1)
                .ok_or_else(|| Error::InvalidInput("generator needs \"vars\" >= 1".into()))?;
            Ok(CharacterSource::FreeAlgebra {
                vars: vars as usize,
            })
        } else if has("numerator") {
            serde_json::from_value(value)
                .map(CharacterSource::Multigraded)
                .map_err(bad)
        } else if has("coeffs") {
            serde_json::from_value(value)
                .map(CharacterSource::Series)
                .map_err(bad)
        } else {
            Err(Error::InvalidInput(
                "expected a nice rational function, a character series, or a generator".into(),
            ))
        }
    }

    pub fn num_vars(&self) -> usize {
        match self {
            CharacterSource::Multigraded(f) => f.num_vars(),
            CharacterSource::Series(s) => s.num_vars(),
            CharacterSource::FreeAlgebra { vars } => *vars,
        }
    }

    /// Character series through `q^order`.
    pub fn character(&self, order: usize) -> Result<CharacterSeries> {
        match self {
            CharacterSource::Multigraded(f) => f.substitute_tq()?.series(order),
            CharacterSource::Series(s) if s.order() < order => Err(Error::InsufficientPrefix {
                order: s.order(),
                needed: order,
            }),
            CharacterSource::Series(s) => Ok(s.truncate(order)),
            CharacterSource::FreeAlgebra { vars } => Ok(free_algebra_character(*vars, order)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(p: &[i32]) -> GenPartition {
        GenPartition::new(p.to_vec()).unwrap()
    }

    fn lp(n: usize, terms: &[(&[i32], i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(n, terms.iter().map(|(a, c)| (a.to_vec(), *c))).unwrap()
    }

    fn torus() -> GroupSpec {
        GroupSpec::DiagonalTorus {
            n: 2,
            weights: vec![vec![1, -1]],
        }
    }

    #[test]
    fn d_schur_examples() {
        let sl = GroupSpec::SpecialLinear { n: 2 };
        assert_eq!(d_schur(&sl, &part(&[1, 1])).unwrap(), BigInt::from(1));
        assert_eq!(d_schur(&sl, &part(&[2, 0])).unwrap(), BigInt::from(0));
        assert_eq!(d_schur(&torus(), &part(&[1, 0])).unwrap(), BigInt::from(0));
        assert_eq!(d_schur(&torus(), &part(&[1, 1])).unwrap(), BigInt::from(1));
        let gl = GroupSpec::FullGL { n: 2 };
        assert_eq!(d_schur(&gl, &part(&[0, 0])).unwrap(), BigInt::from(1));
        assert_eq!(d_schur(&gl, &part(&[1, 1])).unwrap(), BigInt::from(0));
        let u = GroupSpec::MaximalUnipotent { n: 2 };
        assert_eq!(d_schur(&u, &part(&[0, -3])).unwrap(), BigInt::from(1));
    }

    #[test]
    fn d_schur_part_count_mismatch() {
        let sl = GroupSpec::SpecialLinear { n: 3 };
        assert_eq!(
            d_schur(&sl, &part(&[1, 1])),
            Err(Error::PartCountMismatch {
                expected: 3,
                got: 2
            })
        );
    }

    #[test]
    fn d_character_examples() {
        let p = lp(2, &[(&[2, 0], 1), (&[1, 1], 2), (&[0, 2], 1)]);
        assert_eq!(d_character(&torus(), &p).unwrap(), BigInt::from(2));
        assert_eq!(
            d_character_via_schur(&torus(), &p).unwrap(),
            BigInt::from(2)
        );

        let gl = GroupSpec::FullGL { n: 2 };
        let ch = free_algebra_character(2, 6);
        for d in 1..=6 {
            assert_eq!(d_character(&gl, ch.coeff(d)).unwrap(), BigInt::zero());
        }
        let u = GroupSpec::MaximalUnipotent { n: 2 };
        assert_eq!(d_character(&u, &p).unwrap(), BigInt::from(2));
    }

    #[test]
    fn d_character_rejects_non_symmetric() {
        assert_eq!(
            d_character(&torus(), &LaurentPoly::var(2, 0)),
            Err(Error::NonSymmetric { degree: None })
        );
    }

    #[test]
    fn hilbert_series_examples() {
        let ch = free_algebra_character(2, 6);
        let sl = hilbert_invariants(&GroupSpec::SpecialLinear { n: 2 }, &ch).unwrap();
        assert_eq!(sl, IntSeries::from_i64s(&[1, 0, 1, 0, 2, 0, 5]));
        let u = hilbert_invariants(&GroupSpec::MaximalUnipotent { n: 2 }, &ch).unwrap();
        assert_eq!(u, IntSeries::from_i64s(&[1, 1, 2, 3, 6, 10, 20]));
    }

    #[test]
    fn hilbert_series_reports_degree() {
        let coeffs = vec![LaurentPoly::one(2), LaurentPoly::var(2, 0)];
        let ch = CharacterSeries::new(2, coeffs).unwrap();
        assert_eq!(
            hilbert_invariants(&torus(), &ch),
            Err(Error::NonSymmetric { degree: Some(1) })
        );
    }

    #[test]
    fn free_algebra_examples() {
        let ch = free_algebra_character(2, 5);
        assert_eq!(ch.coeff(0), &LaurentPoly::one(2));
        assert_eq!(
            ch.coeff(2),
            &lp(2, &[(&[2, 0], 1), (&[1, 1], 2), (&[0, 2], 1)])
        );
        for d in 0..=5 {
            assert_eq!(ch.coeff(d).eval_ones(), BigInt::from(1u64 << d));
        }
    }

    #[test]
    fn character_sources() {
        let free =
            CharacterSource::from_json(r#"{"generator": "free_algebra", "vars": 2}"#).unwrap();
        assert_eq!(free, CharacterSource::FreeAlgebra { vars: 2 });
        assert_eq!(free.character(3).unwrap(), free_algebra_character(2, 3));

        let rational = CharacterSource::from_json(
            r#"{"vars": 1, "numerator": [{"coeff": 1, "alpha": [0]}], "denominator": [{"alpha": [1]}]}"#,
        )
        .unwrap();
        let ch = rational.character(3).unwrap();
        assert_eq!(ch.coeff(3), &LaurentPoly::monomial(vec![3], 1));

        let series = CharacterSource::from_json(&serde_json::to_string(&ch).unwrap()).unwrap();
        assert_eq!(series.character(2).unwrap(), ch.truncate(2));
        assert_eq!(
            series.character(5),
            Err(Error::InsufficientPrefix {
                order: 3,
                needed: 5
            })
        );

        for bad in [
            r#"{"generator": "other", "vars": 2}"#,
            r#"{"vars": 2}"#,
            "[1",
            r#"{"generator": "free_algebra"}"#,
        ] {
            assert!(matches!(
                CharacterSource::from_json(bad),
                Err(Error::InvalidInput(_))
            ));
        }
    }

    #[test]
    fn group_json() {
        let g: GroupSpec =
            serde_json::from_str(r#"{"type": "torus", "n": 2, "weights": [[1,-1]]}"#).unwrap();
        assert_eq!(g, torus());
        let c: GroupSpec =
            serde_json::from_str(r#"{"type":"cyclic","n":2,"order":5,"exponents":[1,-1]}"#)
                .unwrap();
        assert_eq!(
            c,
            GroupSpec::CyclicDiagonal {
                n: 2,
                order: 5,
                exponents: vec![1, -1]
            }
        );
        for (text, g) in [
            (r#"{"type":"sl","n":2}"#, GroupSpec::SpecialLinear { n: 2 }),
            (r#"{"type":"gl","n":3}"#, GroupSpec::FullGL { n: 3 }),
            (
                r#"{"type":"unipotent","n":2}"#,
                GroupSpec::MaximalUnipotent { n: 2 },
            ),
        ] {
            assert_eq!(serde_json::from_str::<GroupSpec>(text).unwrap(), g);
            assert_eq!(serde_json::to_string(&g).unwrap(), text);
        }
        assert!(
            serde_json::from_str::<GroupSpec>(r#"{"type":"torus","n":2,"weights":[[1]]}"#).is_err()
        );
        assert!(serde_json::from_str::<GroupSpec>(
            r#"{"type":"cyclic","n":1,"order":0,"exponents":[1]}"#
        )
        .is_err());
        assert!(serde_json::from_str::<GroupSpec>(r#"{"type":"so","n":2}"#).is_err());
    }
}
