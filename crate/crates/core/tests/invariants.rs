use eposic::channels::{enumerate_ec, EposicChannel, Superoperator};
use eposic::clebsch::{projection_q, CgIndex};
use eposic::covariant::{
    analyze_family, classify, decompose, family_superoperator, phi_e11_diagonal, positivity_threshold,
    witness_vector, Branch, CovariantClass,
};
use eposic::scalar::{rational, ExactScalar, Rational, Sign};
use eposic::space::{exact_pool, rho_matrix, LinOp, SpaceLabel};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=9).prop_map(|(n, d)| rational(n, d))
}

/// Sums of `(a + b i)·√d` over a few small radicands, so radicals genuinely mix.
fn scalar() -> impl Strategy<Value = ExactScalar> {
    prop::collection::vec((small_rational(), small_rational(), 1u64..=12), 0..4).prop_map(|terms| {
        terms.into_iter().fold(ExactScalar::zero(), |acc, (re, im, d)| {
            &acc + &(&ExactScalar::complex(re, im) * &ExactScalar::sqrt_int(d))
        })
    })
}

fn weights(k: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(0i64..=10, k).prop_map(|raw| {
        let total: i64 = raw.iter().sum();
        if total == 0 {
            let mut w = vec![rational(0, 1); raw.len()];
            w[0] = rational(1, 1);
            w
        } else {
            raw.iter().map(|&x| rational(x, total)).collect()
        }
    })
}

fn mixture(ec: &[EposicChannel], w: &[Rational]) -> Superoperator {
    let mut parts = ec.iter().zip(w).map(|(ch, x)| ch.superoperator().scale(&ExactScalar::from_rational(x.clone())));
    let first = parts.next().expect("EC is never empty");
    parts.fold(first, |acc, p| acc.try_add(&p).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_ring_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
    }

    #[test]
    fn norm_is_real_and_nonnegative(a in scalar()) {
        let n = a.norm_sqr();
        prop_assert!(n.is_real());
        let sign = n.real_sign().unwrap();
        prop_assert_eq!(sign == Sign::Zero, a.is_zero());
        prop_assert!(sign != Sign::Negative);
        prop_assert!((n.to_f64() - a.to_complex().norm_sqr()).abs() < 1e-8 * (1.0 + n.to_f64()));
    }

    #[test]
    fn sqrt_squares_back(n in 0i64..=200, d in 1i64..=50) {
        let q = rational(n, d);
        let s = ExactScalar::sqrt_rational(&q).unwrap();
        prop_assert_eq!(&s * &s, ExactScalar::from_rational(q));
    }

    #[test]
    fn text_round_trip(a in scalar()) {
        let text = a.to_string();
        let back: ExactScalar = text.parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn rationals_stay_reduced(a in scalar(), b in scalar()) {
        for (_, g) in (&a * &b).terms() {
            for q in [&g.re, &g.im] {
                prop_assert!(*q.denom() >= 1.into());
                prop_assert_eq!(num_integer::Integer::gcd(q.numer(), q.denom()), 1.into());
            }
        }
    }

    #[test]
    fn labels_have_product_dimension(degrees in prop::collection::vec(0i32..5, 1..4)) {
        let label = degrees.iter().fold(SpaceLabel::new(vec![]), |acc, &d| acc.tensor(&SpaceLabel::p(d)));
        let want: usize = degrees.iter().map(|&d| d as usize + 1).product();
        prop_assert_eq!(label.dim(), want);
        prop_assert_eq!(label.conj().conj(), label);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn decomposition_round_trip((r, m, w) in (0u32..=4, 0u32..=4).prop_flat_map(|(r, m)| {
        (Just(r), Just(m), weights(r.min(m) as usize + 1))
    })) {
        let d = decompose(&mixture(&enumerate_ec(r, m), &w)).unwrap();
        prop_assert!(d.is_covariant());
        let got: Vec<_> = d.lambdas.iter().map(|l| l.as_rational().unwrap()).collect();
        prop_assert_eq!(got, w);
    }

    #[test]
    fn distinct_weights_give_distinct_maps((r, m, w1, w2) in (0u32..=3, 1u32..=3).prop_flat_map(|(r, m)| {
        let k = r.min(m) as usize + 1;
        (Just(r), Just(m), weights(k), weights(k))
    })) {
        let ec = enumerate_ec(r, m);
        let (s1, s2) = (mixture(&ec, &w1), mixture(&ec, &w2));
        prop_assert_eq!(s1.choi == s2.choi, w1 == w2);
    }

    #[test]
    fn classification_is_covariant(
        (r, m, w) in (0u32..=3, 0u32..=3).prop_flat_map(|(r, m)| (Just(r), Just(m), weights(r.min(m) as usize + 1))),
        g in 0usize..5,
        perturb in any::<bool>(),
    ) {
        let mut s = mixture(&enumerate_ec(r, m), &w);
        if perturb {
            let space = SpaceLabel::p_pbar(m as i32, r as i32);
            let mut bump = LinOp::zeros(space.clone(), space);
            bump.set(0, 0, ExactScalar::one());
            s = Superoperator::new(r, m, &s.choi + &bump).unwrap();
        }
        let g = &exact_pool()[g];
        let (rr, rm) = (rho_matrix(r, g), rho_matrix(m, g));
        let conjugated = Superoperator::from_map(r, m, |a| {
            let inner = s.apply(&(&(&rr.adjoint() * a) * &rr)).unwrap();
            &(&rm * &inner) * &rm.adjoint()
        });
        let (c1, c2) = (classify(&s).unwrap(), classify(&conjugated).unwrap());
        prop_assert_eq!(&c1.decomposition.lambdas, &c2.decomposition.lambdas);
        if !perturb {
            prop_assert_eq!(c1.class, CovariantClass::CovariantChannel);
            prop_assert_eq!(c2.class, CovariantClass::CovariantChannel);
        }
    }

    #[test]
    fn eigen_relation_for_rational_alpha(m in 1u32..=8, num in 1i64..=30, den in 1i64..=30) {
        prop_assume!(num <= den);
        let alpha = rational(num, den);
        let s = family_superoperator(m, &alpha).unwrap();
        let v = witness_vector(m);
        let lambda = ExactScalar::from_rational(-rational(2, m as i64) * &alpha);
        prop_assert_eq!(s.choi.apply(&v), v.scale(&lambda));
    }

    #[test]
    fn positivity_verdict_is_consistent(m in 1u32..=6, num in -10i64..=10, den in 1i64..=10) {
        let alpha = rational(num, den);
        let v = analyze_family(m, &alpha).unwrap();
        prop_assert!(!v.is_cp || v.is_positive);
        prop_assert_eq!(v.witness.is_some(), !v.is_cp);
        prop_assert_eq!(v.is_positive, alpha <= v.threshold);
        prop_assert_eq!(v.not_n_positive_for_n_gt_1, !v.is_cp);
    }
}

#[test]
fn threshold_is_tight_for_small_degrees() {
    for m in 1..=8u32 {
        let t = ExactScalar::from_rational(positivity_threshold(m).unwrap());
        let plus = phi_e11_diagonal(m, Branch::Plus).unwrap();
        let minus = phi_e11_diagonal(m, Branch::Minus).unwrap();
        let diag: Vec<_> = plus.iter().zip(&minus).map(|(p, q)| p - &(q * &t)).collect();
        assert!(diag.iter().all(|d| d.real_sign().unwrap() != Sign::Negative), "m={m}");
        assert!(diag.iter().any(ExactScalar::is_zero), "m={m}");
    }
}

#[test]
fn q_projections_are_orthogonal_idempotents() {
    for m in 0..=4 {
        for r in 0..=4 {
            let qs: Vec<_> = (0..=m.min(r)).map(|l| projection_q(m, r, l).unwrap()).collect();
            let mut sum = LinOp::zeros(qs[0].domain().clone(), qs[0].domain().clone());
            for (a, qa) in qs.iter().enumerate() {
                for (b, qb) in qs.iter().enumerate() {
                    let prod = qa * qb;
                    if a == b {
                        assert_eq!(&prod, qa);
                    } else {
                        assert!(prod.is_zero());
                    }
                }
                sum = &sum + qa;
            }
            assert!(sum.is_identity(), "Σ q_l ≠ I at m={m} r={r}");
        }
    }
}

#[test]
fn extreme_points_sit_in_their_own_ec_slot() {
    for ix in CgIndex::all_up_to(4) {
        let ec = enumerate_ec(ix.r(), ix.m());
        let slot = (ix.m() - ix.h()) as usize;
        assert_eq!(ec[slot].index(), ix);
    }
}
