use charq::invariants::{
    d_character, d_character_via_schur, free_algebra_character, hilbert_invariants, GroupSpec,
};
use charq::reconstruct::{expand_hilbert_serre, find_recurrence, fit_numerator};
use charq::worked::{
    detect_eventual_period, fhl_series, nagata_series, semigroup_differences, QuadraticIrrational,
};
use charq::{
    schur_expand, schur_poly, schur_poly_bialternant, GenPartition, LaurentPoly, NiceRational,
    SchurExpansion,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn poly(nvars: usize, lo: i32, hi: i32, max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(
        (-5i64..=5, prop::collection::vec(lo..=hi, nvars)),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        LaurentPoly::from_terms(nvars, terms.into_iter().map(|(c, a)| (a, c))).unwrap()
    })
}

fn nonzero_poly(nvars: usize) -> impl Strategy<Value = LaurentPoly> {
    poly(nvars, -2, 2, 4).prop_filter("nonzero", |p| !p.is_zero())
}

fn gen_partition(n: usize, lo: i32, hi: i32) -> impl Strategy<Value = GenPartition> {
    prop::collection::vec(lo..=hi, n).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        GenPartition::new(v).unwrap()
    })
}

fn symmetric_poly(n: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-3i64..=3, gen_partition(n, -1, 3)), 0..=3).prop_map(move |terms| {
        let mut p = LaurentPoly::zero(n);
        for (c, lam) in terms {
            p = &p + &schur_poly(&lam, n).unwrap().scale(&BigInt::from(c));
        }
        p
    })
}

/// A rational function with denominator factors of positive q-degree and
/// nonnegative t-degree, so the q-expansion has polynomial coefficients.
fn expandable_rational(nvars: usize) -> impl Strategy<Value = NiceRational> {
    let num = prop::collection::vec(
        (-3i64..=3, prop::collection::vec(0i32..=2, nvars), 0u32..=2),
        1..=3,
    );
    let den = prop::collection::vec(
        (prop::collection::vec(0i32..=1, nvars), 1u32..=2, 1u32..=2),
        0..=2,
    );
    (num, den).prop_map(move |(n, d)| NiceRational::new(nvars, n, d).unwrap())
}

fn group(n: usize) -> impl Strategy<Value = GroupSpec> {
    let weights = prop::collection::vec(-2i32..=2, n);
    let exps = prop::collection::vec(-4i32..=4, n);
    prop_oneof![
        Just(GroupSpec::FullGL { n }),
        Just(GroupSpec::SpecialLinear { n }),
        Just(GroupSpec::MaximalUnipotent { n }),
        weights.prop_map(move |w| GroupSpec::DiagonalTorus {
            n,
            weights: vec![w]
        }),
        (2u32..=5, exps).prop_map(move |(order, exponents)| GroupSpec::CyclicDiagonal {
            n,
            order,
            exponents,
        }),
    ]
}

fn series_eq(a: &NiceRational, b: &NiceRational, order: usize) -> bool {
    a.series(order).unwrap() == b.series(order).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_div_inverts_mul(a in poly(2, -2, 2, 4), b in nonzero_poly(2)) {
        let prod = &a * &b;
        prop_assert_eq!(prod.exact_div(&b).unwrap(), a);
    }

    #[test]
    fn poly_mul_is_commutative_and_associative(
        a in poly(3, -1, 2, 3), b in poly(3, -1, 2, 3), c in poly(3, -1, 2, 3)
    ) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!((&a * &b).eval_ones(), a.eval_ones() * b.eval_ones());
    }

    #[test]
    fn homogeneous_parts_sum_back(a in poly(2, -2, 3, 6)) {
        let mut total = LaurentPoly::zero(2);
        for d in -4..=6 {
            total = &total + &a.homogeneous_part(d);
        }
        prop_assert_eq!(total, a);
    }

    #[test]
    fn symmetric_products_stay_symmetric(a in symmetric_poly(3), b in symmetric_poly(3)) {
        prop_assert!((&a * &b).is_symmetric());
    }

    #[test]
    fn tableaux_match_bialternant(lam in gen_partition(3, -2, 3)) {
        prop_assert_eq!(schur_poly(&lam, 3).unwrap(), schur_poly_bialternant(&lam, 3).unwrap());
    }

    #[test]
    fn schur_expansion_round_trips(
        terms in prop::collection::vec((1i64..=4, gen_partition(3, -1, 3)), 0..=4)
    ) {
        let mut expected = std::collections::BTreeMap::new();
        for (c, lam) in &terms {
            *expected.entry(lam.clone()).or_insert_with(BigInt::zero) += BigInt::from(*c);
        }
        let e = SchurExpansion::from_terms(3, terms.iter().map(|(c, l)| (BigInt::from(*c), l.clone())))
            .unwrap();
        let p = e.to_poly().unwrap();
        let back = schur_expand(&p).unwrap();
        prop_assert_eq!(back.to_poly().unwrap(), p);
        for (lam, c) in expected {
            prop_assert_eq!(back.coeff(&lam), c);
        }
    }

    #[test]
    fn dimension_of_schur_is_weyl_count(lam in gen_partition(3, 0, 4)) {
        // Weyl dimension formula for GL_3
        let l = lam.parts();
        let num = (l[0] - l[1] + 1) * (l[0] - l[2] + 2) * (l[1] - l[2] + 1);
        prop_assert_eq!(schur_poly(&lam, 3).unwrap().eval_ones(), BigInt::from(num / 2));
    }

    #[test]
    fn series_is_a_ring_homomorphism(a in expandable_rational(2), b in expandable_rational(2)) {
        let order = 8;
        let (sa, sb) = (a.series(order).unwrap(), b.series(order).unwrap());
        prop_assert_eq!(a.checked_mul(&b).unwrap().series(order).unwrap(), sa.checked_mul(&sb).unwrap());
        prop_assert_eq!(a.checked_add(&b).unwrap().series(order).unwrap(), sa.checked_add(&sb).unwrap());
    }

    #[test]
    fn substitution_spreads_homogeneous_parts(p in poly(2, 0, 3, 5)) {
        let f = NiceRational::from_q_coeffs(2, vec![p.clone()]).unwrap();
        let s = f.substitute_tq().unwrap().series(6).unwrap();
        for d in 0..=6 {
            prop_assert_eq!(s.coeff(d), &p.homogeneous_part(d as i64));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn decomposition_is_sound(
        num in symmetric_poly(2),
        k in 1u32..=2,
        lam in gen_partition(2, 0, 1).prop_filter("nonzero", |l| !l.is_zero()),
    ) {
        let mut f = NiceRational::from_q_coeffs(2, vec![LaurentPoly::zero(2), num]).unwrap();
        let mut alphas = Vec::new();
        let parts = lam.parts().to_vec();
        alphas.push(parts.clone());
        alphas.push(vec![parts[1], parts[0]]);
        alphas.dedup();
        for a in alphas {
            f = f.with_factor(a, k, 1).unwrap();
        }
        let d = f.decompose().unwrap();
        prop_assert!(series_eq(&d.to_nice_rational().unwrap(), &f, 10));
    }

    #[test]
    fn direct_and_schur_paths_agree(g in group(3), p in symmetric_poly(3)) {
        prop_assert_eq!(d_character(&g, &p).unwrap(), d_character_via_schur(&g, &p).unwrap());
    }

    #[test]
    fn cyclic_agrees_with_torus_in_low_degree(
        exps in prop::collection::vec(-1i32..=1, 2),
        m in 3u32..=6,
    ) {
        let torus = GroupSpec::DiagonalTorus { n: 2, weights: vec![exps.clone()] };
        let cyclic = GroupSpec::CyclicDiagonal {
            n: 2,
            order: m,
            exponents: exps,
        };
        let ch = free_algebra_character(2, m as usize - 1);
        prop_assert_eq!(
            hilbert_invariants(&torus, &ch).unwrap(),
            hilbert_invariants(&cyclic, &ch).unwrap()
        );
    }

    #[test]
    fn invariant_dimensions_are_nonnegative(g in group(2)) {
        let h = hilbert_invariants(&g, &free_algebra_character(2, 7)).unwrap();
        prop_assert!(h.coeffs().iter().all(|c| *c >= BigInt::zero()));
        prop_assert_eq!(h.coeff(0), &BigInt::one());
    }

    #[test]
    fn fit_recovers_numerator(
        num in prop::collection::vec(-4i64..=4, 1..=5),
        degs in prop::collection::vec(1u32..=4, 0..=3),
    ) {
        let num: Vec<BigInt> = num.into_iter().map(BigInt::from).collect();
        let c = expand_hilbert_serre(&num, &degs, 30);
        let form = fit_numerator(&c, &degs, 5).unwrap();
        let mut trimmed = num.clone();
        while trimmed.len() > 1 && trimmed.last().is_some_and(Zero::is_zero) {
            trimmed.pop();
        }
        prop_assert_eq!(form.numerator(), &trimmed[..]);
        prop_assert_eq!(form.series(40), expand_hilbert_serre(&num, &degs, 40));
    }

    #[test]
    fn empty_denominator_fits_exactly_polynomials(
        num in prop::collection::vec(-4i64..=4, 1..=6),
        d in 1u32..=3,
    ) {
        let num: Vec<BigInt> = num.into_iter().map(BigInt::from).collect();
        let poly = expand_hilbert_serre(&num, &[], 20);
        prop_assert!(fit_numerator(&poly, &[], 5).is_ok());
        // (1 - q^d) divides num iff each residue class mod d sums to zero
        let divisible = (0..d as usize).all(|r| {
            num.iter().skip(r).step_by(d as usize).sum::<BigInt>().is_zero()
        });
        let rational = expand_hilbert_serre(&num, &[d], 20);
        prop_assert_eq!(fit_numerator(&rational, &[], 5).is_ok(), divisible);
    }

    #[test]
    fn recurrence_found_for_rational_series(
        num in prop::collection::vec(-3i64..=3, 1..=3),
        degs in prop::collection::vec(1u32..=3, 1..=3),
    ) {
        let num: Vec<BigInt> = num.into_iter().map(BigInt::from).collect();
        let bound = degs.iter().sum::<u32>() as usize + num.len();
        let c = expand_hilbert_serre(&num, &degs, 2 * bound + 8);
        let guess = find_recurrence(&c, bound).unwrap();
        prop_assert!(guess.found);
        prop_assert!(guess.order <= bound);
        let back = guess.series(c.order());
        for (x, y) in back.iter().zip(c.coeffs()) {
            prop_assert_eq!(x.numer(), y);
            prop_assert!(x.denom().is_one());
        }
    }

    #[test]
    fn semigroup_differences_are_bits(a in -5i64..=5, b in 1i64..=3, c in 2i64..=9, d in 2i64..=13) {
        let beta = QuadraticIrrational::new(a, b, c, d).unwrap();
        let Ok(diffs) = semigroup_differences(&beta, 80) else { return Ok(()) };
        prop_assert!(diffs.coeffs().iter().all(|x| x.is_zero() || x.is_one()));
    }

    #[test]
    fn rational_beta_period_divides_denominator(p in 2i64..=12, s in 1i64..=11) {
        let s = 1 + (s - 1) % (p - 1);
        let beta = QuadraticIrrational::rational(s, p).unwrap();
        let diffs = semigroup_differences(&beta, 200).unwrap();
        let (_, period) = detect_eventual_period(&diffs, 100, 50).unwrap();
        prop_assert_eq!(p as usize % period, 0);
    }
}

#[test]
fn fhl_is_symmetric_under_swap() {
    let s = fhl_series().substitute_tq().unwrap().series(12).unwrap();
    for d in 0..=12 {
        let c = s.coeff(d);
        for (a, v) in c.terms() {
            assert_eq!(&c.coeff(&[a[1], a[0]]), v);
        }
    }
}

#[test]
fn fhl_data_file_matches_builtin() {
    let text = include_str!("../data/fhl.json");
    let parsed: NiceRational = serde_json::from_str(text).unwrap();
    assert!(series_eq(
        &parsed.substitute_tq().unwrap(),
        &fhl_series().substitute_tq().unwrap(),
        15
    ));
}

#[test]
fn nagata_series_matches_closed_form() {
    let order = 9 * 240;
    let mut num = vec![BigInt::zero(); 46];
    for (i, v) in [1, 4, 7, 10, 10, 4].into_iter().enumerate() {
        num[9 * i] = BigInt::from(v);
    }
    assert_eq!(
        nagata_series(order),
        expand_hilbert_serre(&num, &[18; 4], order)
    );
}
