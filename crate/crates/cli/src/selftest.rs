//! The invariant suite behind `eposic selftest`.

use eposic::channels::{
    commutes_with_group, enumerate_ec, is_unital_scaled, kraus_from_alpha, kraus_symmetry_report, verify_channel,
    EposicChannel, KrausSet, Superoperator,
};
use eposic::clebsch::{
    alpha_from_table, alpha_via_operators, cg_coefficient_closed, cg_coefficient_recursive, eta_flip_identity_check,
    flip_alpha_identity_check, projection_q, CgIndex,
};
use eposic::covariant::{analyze_family, decompose, family_superoperator, positivity_threshold, witness_vector};
use eposic::scalar::{parity_sign, rational, ExactScalar, Rational};
use eposic::space::{exact_pool, LinOp, SpaceLabel};
use serde::Serialize;

use crate::cache::EpsilonSource;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub checked: usize,
    pub failed: usize,
    /// First failing case, if any.
    pub detail: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SelftestReport {
    pub max_degree: u32,
    pub passed: bool,
    pub results: Vec<CheckResult>,
}

impl SelftestReport {
    pub fn failing(&self) -> Vec<&'static str> {
        self.results.iter().filter(|r| !r.passed()).map(|r| r.name).collect()
    }
}

struct Tally {
    name: &'static str,
    checked: usize,
    failed: usize,
    detail: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Self { name, checked: 0, failed: 0, detail: None }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            self.detail.get_or_insert_with(what);
        }
    }

    fn finish(self) -> CheckResult {
        CheckResult { name: self.name, checked: self.checked, failed: self.failed, detail: self.detail }
    }
}

fn factorial(k: u32) -> Rational {
    (1..=k as i64).fold(rational(1, 1), |acc, x| acc * rational(x, 1))
}

/// Everything that depends on the ε tables goes through `source`, so a bad
/// table shows up under a named invariant.
pub fn selftest(max_degree: u32, source: &dyn EpsilonSource) -> SelftestReport {
    let indices = CgIndex::all_up_to(max_degree);
    let alphas: Vec<(CgIndex, LinOp)> = indices.iter().map(|&ix| (ix, alpha_from_table(&source.table(ix)))).collect();
    let kraus: Vec<(CgIndex, KrausSet)> = alphas.iter().map(|(ix, a)| (*ix, kraus_from_alpha(*ix, a))).collect();
    let chois: Vec<(CgIndex, LinOp)> = kraus.iter().map(|(ix, k)| (*ix, k.choi())).collect();
    let mut results = Vec::new();

    let mut t = Tally::new("alpha_isometry");
    for (ix, a) in &alphas {
        t.check((&a.adjoint() * a).is_identity(), || format!("α*α ≠ I at {ix}"));
    }
    results.push(t.finish());

    let mut t = Tally::new("alpha_completeness");
    for m in 0..=max_degree {
        for n in 0..=max_degree {
            let space = SpaceLabel::pp(m as i32, n as i32);
            let mut sum = LinOp::zeros(space.clone(), space);
            for (_, a) in alphas.iter().filter(|(ix, _)| ix.m() == m && ix.n() == n) {
                sum = &sum + &(a * &a.adjoint());
            }
            t.check(sum.is_identity(), || format!("Σ_h αα* ≠ I at m={m} n={n}"));
        }
    }
    results.push(t.finish());

    let mut t = Tally::new("alpha_operator_oracle");
    for (ix, a) in &alphas {
        t.check(*a == alpha_via_operators(*ix), || format!("table and operator constructions differ at {ix}"));
    }
    results.push(t.finish());

    let mut recursion = Tally::new("c_recursion_closed_form");
    let mut swap = Tally::new("c_swap_relation");
    for ix in &indices {
        let (m, n, h) = (ix.m(), ix.n(), ix.h());
        let closed = cg_coefficient_closed(m, n, h).expect("valid index");
        recursion.check(closed == cg_coefficient_recursive(m, n, h).expect("valid index"), || format!("at {ix}"));
        let other = cg_coefficient_closed(n, m, h).expect("valid index");
        let ratio = factorial(m - h) / factorial(n - h);
        swap.check(closed == &ratio * &ratio * other, || format!("at {ix}"));
    }
    results.push(recursion.finish());
    results.push(swap.finish());

    let mut reflect = Tally::new("epsilon_reflection_symmetry");
    let mut swapped = Tally::new("epsilon_swap_symmetry");
    for ix in &indices {
        let table = source.table(*ix);
        let other = source.table(ix.swapped());
        let sign = parity_sign(ix.h() as i64);
        for (i, j, v) in table.iter() {
            let mirror = &sign * &table.get(ix.r() - i, ix.n() - j);
            reflect.check(*v == mirror, || format!("ε_{i}^{j} at {ix}"));
            let partner = &sign * &other.get(i, ix.l(i, j));
            swapped.check(*v == partner, || format!("ε_{i}^{j} at {ix}"));
        }
    }
    results.push(reflect.finish());
    results.push(swapped.finish());

    let mut t = Tally::new("kraus_completeness");
    for (ix, k) in &kraus {
        t.check(k.is_complete(), || format!("Σ T_j*T_j ≠ I at {ix}"));
    }
    results.push(t.finish());

    let mut t = Tally::new("kraus_symmetries");
    for ix in &indices {
        let report = kraus_symmetry_report(&EposicChannel::from_index(*ix));
        t.check(report.all(), || format!("{ix}: {report:?}"));
    }
    results.push(t.finish());

    let mut t = Tally::new("choi_projection");
    for (ix, c) in &chois {
        let q = projection_q(ix.m(), ix.r(), ix.m() - ix.h()).expect("valid projection");
        let expected = q.scale_rational(&rational(ix.r() as i64 + 1, ix.n() as i64 + 1));
        t.check(*c == expected, || format!("C ≠ ((r+1)/(n+1)) q at {ix}"));
    }
    results.push(t.finish());

    let mut t = Tally::new("covariance_pool");
    let pool = exact_pool();
    for (ix, c) in &chois {
        for (k, g) in pool.iter().enumerate() {
            t.check(commutes_with_group(c, ix.m(), ix.r(), g), || format!("{ix}, pool element {k}"));
        }
    }
    results.push(t.finish());

    let mut t = Tally::new("complement_sign_identities");
    for ix in &indices {
        t.check(flip_alpha_identity_check(*ix) && eta_flip_identity_check(*ix), || format!("at {ix}"));
    }
    results.push(t.finish());

    let mut axioms = Tally::new("channel_axioms");
    let mut unital = Tally::new("unitality");
    for (ix, c) in &chois {
        let s = Superoperator::new(ix.r(), ix.m(), c.clone()).expect("Choi label");
        let report = verify_channel(&s);
        axioms.check(report.is_channel, || format!("{ix}: {report:?}"));
        unital.check(is_unital_scaled(&EposicChannel::from_index(*ix)), || format!("at {ix}"));
    }
    results.push(axioms.finish());
    results.push(unital.finish());

    let mut card = Tally::new("ec_cardinality");
    let mut extreme = Tally::new("decomposition_extreme_points");
    for r in 0..=max_degree {
        for m in 0..=max_degree {
            let ec = enumerate_ec(r, m);
            card.check(ec.len() as u32 == r.min(m) + 1, || format!("|EC({r},{m})| = {}", ec.len()));
        }
    }
    for (ix, c) in &chois {
        let s = Superoperator::new(ix.r(), ix.m(), c.clone()).expect("Choi label");
        let ok = decompose(&s).is_ok_and(|d| {
            d.is_covariant()
                && d.lambdas.iter().enumerate().all(|(l, x)| {
                    let want = if l as u32 == ix.m() - ix.h() { 1 } else { 0 };
                    *x == ExactScalar::from_int(want)
                })
        });
        extreme.check(ok, || format!("{ix} does not decompose to itself"));
    }
    results.push(card.finish());
    results.push(extreme.finish());

    let mut threshold = Tally::new("positivity_threshold");
    let mut witness = Tally::new("positivity_witness");
    for m in 1..=max_degree.max(1) {
        let t = positivity_threshold(m).expect("m >= 1");
        threshold.check(t == rational(1, m as i64 + 2), || format!("threshold {t} at m={m}"));
        let at = analyze_family(m, &t).expect("m >= 1");
        threshold.check(at.is_positive && !at.is_cp && at.diagonal[0].is_zero(), || format!("not tight at m={m}"));
        for alpha in [rational(1, 8), rational(1, 3), rational(1, 1)] {
            let s = family_superoperator(m, &alpha).expect("m >= 1");
            let v = witness_vector(m);
            let lambda = ExactScalar::from_rational(-rational(2, m as i64) * &alpha);
            witness.check(s.choi.apply(&v) == v.scale(&lambda), || format!("m={m} α={alpha}"));
        }
    }
    results.push(threshold.finish());
    results.push(witness.finish());

    results.sort_by_key(|r| r.name);
    let passed = results.iter().all(CheckResult::passed);
    SelftestReport { max_degree, passed, results }
}
