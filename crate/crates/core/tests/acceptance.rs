//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line per
//! criterion and exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use eposic::channels::{
    commutes_with_group, dual, enumerate_ec, float_covariance_defect, is_unital_scaled, kraus_symmetry_report,
    verify_channel, EposicChannel, Superoperator,
};
use eposic::clebsch::{
    alpha_closed, alpha_via_operators, cg_coefficient_closed, cg_coefficient_recursive, epsilon_table,
    eta_flip_identity_check, flip_alpha_identity_check, projection_q, CgIndex,
};
use eposic::covariant::{
    analyze_family, decompose, phi_e11_diagonal, positivity_threshold, positivity_threshold_argmin, witness_vector,
    Branch,
};
use eposic::scalar::{parity_sign, rational, ExactScalar, Rational};
use eposic::space::{exact_pool, matrix_unit, sample_su2, LinOp, SpaceLabel};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sqrt_q(n: i64, d: i64) -> ExactScalar {
    ExactScalar::sqrt_rational(&rational(n, d)).unwrap()
}

fn c1_isometry_completeness() -> Outcome {
    let mut count = 0;
    for m in 0..=5 {
        for n in 0..=5 {
            let space = SpaceLabel::pp(m as i32, n as i32);
            let mut sum = LinOp::zeros(space.clone(), space);
            let alphas: Vec<_> = (0..=m.min(n)).map(|h| alpha_closed(CgIndex::new(m, n, h).unwrap())).collect();
            for (h, a) in alphas.iter().enumerate() {
                ensure((&a.adjoint() * a).is_identity(), || format!("α*α ≠ I at ({m},{n},{h})"))?;
                for (s, b) in alphas.iter().enumerate().filter(|&(s, _)| s != h) {
                    ensure((&a.adjoint() * b).is_zero(), || format!("α_h*α_s ≠ 0 at ({m},{n}) h={h} s={s}"))?;
                }
                sum = &sum + &(a * &a.adjoint());
                count += 1;
            }
            ensure(sum.is_identity(), || format!("Σ_h αα* ≠ I at ({m},{n})"))?;
        }
    }
    Ok(format!("{count} isometries, orthogonality and completeness exact"))
}

fn c2_dual_construction() -> Outcome {
    let all = CgIndex::all_up_to(5);
    for &ix in &all {
        ensure(alpha_closed(ix) == alpha_via_operators(ix), || format!("constructions differ at {ix}"))?;
    }
    Ok(format!("{} indices agree entrywise", all.len()))
}

fn c3_coefficients() -> Outcome {
    let mut count = 0;
    for m in 0..=8 {
        for n in 0..=8 {
            for h in 0..=m.min(n) {
                let closed = cg_coefficient_closed(m, n, h).unwrap();
                ensure(closed == cg_coefficient_recursive(m, n, h).unwrap(), || format!("c differs at ({m},{n},{h})"))?;
                let swapped = cg_coefficient_closed(n, m, h).unwrap();
                let ratio = |k: u32| Rational::from_integer(num_bigint::BigInt::from((1..=k as u64).product::<u64>()));
                let expect = ratio(m - h).pow(2) / ratio(n - h).pow(2) * swapped;
                ensure(closed == expect, || format!("c_(m,n,h) vs c_(n,m,h) at ({m},{n},{h})"))?;
                count += 1;
            }
        }
    }
    for ix in CgIndex::all_up_to(5) {
        let t = epsilon_table(ix);
        let sw = epsilon_table(ix.swapped());
        let sign = parity_sign(ix.h() as i64);
        for (i, j, v) in t.iter() {
            let mirrored = &sign * &t.get(ix.r() - i, ix.n() - j);
            ensure(*v == mirrored, || format!("ε reflection symmetry at {ix} i={i} j={j}"))?;
            let swapped = &sign * &sw.get(i, ix.l(i, j));
            ensure(*v == swapped, || format!("ε swap symmetry at {ix} i={i} j={j}"))?;
        }
    }
    for m in 1..=8u32 {
        let mi = m as i64;
        let a = epsilon_table(CgIndex::new(m, 1, 0).unwrap());
        let b = epsilon_table(CgIndex::new(m, 1, 1).unwrap());
        ensure(a.get(1, 0) == sqrt_q(mi, mi + 1), || format!("ε_1^0(m,1,0) at m={m}"))?;
        ensure(a.get(1, 1) == sqrt_q(1, mi + 1), || format!("ε_1^1(m,1,0) at m={m}"))?;
        ensure(b.get(0, 0) == sqrt_q(1, mi + 1), || format!("ε_0^0(m,1,1) at m={m}"))?;
        ensure(b.get(0, 1) == -sqrt_q(mi, mi + 1), || format!("ε_0^1(m,1,1) at m={m}"))?;
    }
    Ok(format!("{count} coefficients; ε symmetries for m,n<=5; special values for m<=8"))
}

fn c4_choi_theorem() -> Outcome {
    let all = CgIndex::all_up_to(5);
    for &ix in &all {
        let ch = EposicChannel::from_index(ix);
        let c = ch.choi();
        ensure(*c == ch.choi_via_projection(), || format!("C ≠ ((r+1)/(n+1)) q at {ix}"))?;
        ensure(c.trace() == ExactScalar::from_int(ix.r() as i64 + 1), || format!("tr C ≠ r+1 at {ix}"))?;
        let q = projection_q(ix.m(), ix.r(), ix.m() - ix.h()).unwrap();
        ensure(q.trace() == ExactScalar::from_int(ix.n() as i64 + 1), || format!("tr q ≠ n+1 at {ix}"))?;
    }
    Ok(format!("{} Choi matrices", all.len()))
}

fn c5_covariance() -> Outcome {
    let all = CgIndex::all_up_to(5);
    let pool = exact_pool();
    for &ix in &all {
        let ch = EposicChannel::from_index(ix);
        for (k, g) in pool.iter().enumerate() {
            ensure(commutes_with_group(ch.choi(), ix.m(), ix.r(), g), || format!("exact commutant fails at {ix}, pool[{k}]"))?;
        }
    }
    // Exact action-level covariance on a basis of End(P_r), for a spread of channels.
    for ix in CgIndex::all_up_to(3) {
        let ch = EposicChannel::from_index(ix);
        let pr = SpaceLabel::p(ix.r() as i32);
        for g in &pool[2..] {
            let (rr, rm) = (eposic::space::rho_matrix(ix.r(), g), eposic::space::rho_matrix(ix.m(), g));
            for i in 0..pr.dim() {
                for j in 0..pr.dim() {
                    let a = matrix_unit(&pr, i, j);
                    let lhs = ch.apply(&(&(&rr * &a) * &rr.adjoint())).unwrap();
                    let rhs = &(&rm * &ch.apply(&a).unwrap()) * &rm.adjoint();
                    ensure(lhs == rhs, || format!("Φ(ρAρ*) ≠ ρΦ(A)ρ* at {ix}"))?;
                }
            }
        }
    }
    let total = 10_000;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst = 0.0f64;
    let per = total / all.len();
    let extra = total % all.len();
    for (k, &ix) in all.iter().enumerate() {
        let count = per + usize::from(k < extra);
        let samples: Vec<_> = (0..count).map(|_| sample_su2(&mut rng)).collect();
        let ch = EposicChannel::from_index(ix);
        worst = worst.max(float_covariance_defect(ch.choi(), ix.m(), ix.r(), &samples));
    }
    ensure(worst <= 1e-9, || format!("float commutator norm {worst:e} > 1e-9"))?;
    Ok(format!("{} channels x 5 pool elements exact; {total} Haar samples, max defect {worst:.1e}", all.len()))
}

fn c6_kraus_symmetries() -> Outcome {
    let all = CgIndex::all_up_to(5);
    for &ix in &all {
        let report = kraus_symmetry_report(&EposicChannel::from_index(ix));
        ensure(report.all(), || format!("{ix}: {report:?}"))?;
    }
    Ok(format!("{} channels, three identities each", all.len()))
}

fn c7_complement_dual() -> Outcome {
    for ix in CgIndex::all_up_to(5) {
        ensure(flip_alpha_identity_check(ix), || format!("flip α sign identity at {ix}"))?;
        ensure(eta_flip_identity_check(ix), || format!("flip (J⊗J*) η identity at {ix}"))?;
    }
    let mut pairs = 0usize;
    for ix in CgIndex::all_up_to(4) {
        let ch = EposicChannel::from_index(ix);
        let (scale, target) = dual(&ch);
        let (pr, pm) = (SpaceLabel::p(ix.r() as i32), SpaceLabel::p(ix.m() as i32));
        let images: Vec<Vec<LinOp>> = (0..pr.dim())
            .map(|i| (0..pr.dim()).map(|j| ch.apply(&matrix_unit(&pr, i, j)).unwrap()).collect())
            .collect();
        let scale = ExactScalar::from_rational(scale);
        for k in 0..pm.dim() {
            for l in 0..pm.dim() {
                let b = matrix_unit(&pm, k, l);
                let dual_b = target.apply(&b).unwrap().scale(&scale);
                ensure(dual_b == ch.apply_dual(&b).unwrap(), || format!("Σ T* B T ≠ scaled dual at {ix}"))?;
                for i in 0..pr.dim() {
                    for j in 0..pr.dim() {
                        // ⟨E_kl|Φ(E_ij)⟩ = Φ(E_ij)[k,l], ⟨Φ*(E_kl)|E_ij⟩ = conj(Φ*(E_kl)[i,j])
                        ensure(*images[i][j].get(k, l) == dual_b.get(i, j).conj(), || {
                            format!("pairing fails at {ix} (k,l,i,j)=({k},{l},{i},{j})")
                        })?;
                        pairs += 1;
                    }
                }
            }
        }
        // Complement via the environment trace, on a dense test operator.
        let a = LinOp::from_fn(pr.clone(), pr.clone(), |i, j| {
            ExactScalar::complex(rational((i * 2 + j) as i64 - 3, 1), rational(i as i64 - j as i64, 2))
        });
        let comp = eposic::channels::complementary(&ch);
        ensure(ch.apply_environment(&a).unwrap() == comp.apply(&a).unwrap(), || format!("complement at {ix}"))?;
    }
    for h in 0..=2u32 {
        for m in h..=4 {
            let ch = EposicChannel::new(m, 2 * h, h).unwrap();
            let (scale, target) = dual(&ch);
            ensure(scale == rational(1, 1) && target == ch, || format!("Φ_({m},{},{h}) not self-dual", 2 * h))?;
            let pm = SpaceLabel::p(m as i32);
            for k in 0..pm.dim() {
                for l in 0..pm.dim() {
                    let b = matrix_unit(&pm, k, l);
                    ensure(ch.apply_dual(&b).unwrap() == ch.apply(&b).unwrap(), || format!("self-dual action at m={m} h={h}"))?;
                }
            }
        }
    }
    Ok(format!("sign identities m,n<=5; {pairs} exact dual pairings m,n<=4; self-duality h<=2"))
}

fn random_weights(rng: &mut ChaCha8Rng, k: usize) -> Vec<Rational> {
    let raw: Vec<i64> = (0..k).map(|_| rng.gen_range(0..20)).collect();
    let total: i64 = raw.iter().sum::<i64>().max(1);
    let mut w: Vec<Rational> = raw.iter().map(|&x| rational(x, total)).collect();
    if raw.iter().all(|&x| x == 0) {
        w[0] = rational(1, 1);
    }
    w
}

fn c8_convex_structure() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for r in 0..=4u32 {
        for m in 0..=4u32 {
            let ec = enumerate_ec(r, m);
            let weights = random_weights(&mut rng, ec.len());
            let mut s: Option<Superoperator> = None;
            for (w, ch) in weights.iter().zip(&ec) {
                let part = ch.superoperator().scale(&ExactScalar::from_rational(w.clone()));
                s = Some(match s {
                    None => part,
                    Some(acc) => acc.try_add(&part).unwrap(),
                });
            }
            let d = decompose(&s.unwrap()).unwrap();
            ensure(d.is_covariant(), || format!("nonzero residual at r={r} m={m}"))?;
            let got: Vec<_> = d.lambdas.iter().map(|l| l.as_rational()).collect();
            let want: Vec<_> = weights.iter().cloned().map(Some).collect();
            ensure(got == want, || format!("weights {want:?} came back as {got:?} at r={r} m={m}"))?;

            // Gram matrix of the q projections is diagonal with entries tr(q_l) > 0.
            let qs: Vec<_> = (0..=r.min(m)).map(|l| projection_q(m, r, l).unwrap()).collect();
            for (a, qa) in qs.iter().enumerate() {
                for (b, qb) in qs.iter().enumerate() {
                    let g = qa.hs_inner(qb).unwrap();
                    let ok = if a == b { g == qa.trace() && !g.is_zero() } else { g.is_zero() };
                    ensure(ok, || format!("q projections not independent at r={r} m={m}"))?;
                }
            }
        }
    }
    for r in 0..=8 {
        for m in 0..=8 {
            let ec = enumerate_ec(r, m);
            ensure(ec.len() as u32 == r.min(m) + 1, || format!("|EC({r},{m})| = {}", ec.len()))?;
            for ch in &ec {
                ensure(ch.input_degree() == r && ch.output_degree() == m, || format!("EC({r},{m}) lists {ch}"))?;
            }
        }
    }
    Ok("round-trip r,m<=4; |EC| for r,m<=8; q projections independent".into())
}

fn c9_positivity_family() -> Outcome {
    for m in 1..=8u32 {
        let t = positivity_threshold(m).unwrap();
        ensure(t == rational(1, m as i64 + 2), || format!("threshold {t} at m={m}"))?;
        let (_, p) = positivity_threshold_argmin(m).unwrap();
        // f-index 0 is E_{m-j,m-j} with j = m-1.
        ensure(p == 0, || format!("argmin at f-index {p}, m={m}"))?;
        let plus = phi_e11_diagonal(m, Branch::Plus).unwrap();
        let minus = phi_e11_diagonal(m, Branch::Minus).unwrap();
        let tee = ExactScalar::from_rational(t.clone());
        let diag: Vec<_> = plus.iter().zip(&minus).map(|(a, b)| a - &(b * &tee)).collect();
        ensure(diag.iter().all(|d| d.real_sign() != Ok(eposic::scalar::Sign::Negative)), || format!("negative entry at threshold, m={m}"))?;
        ensure(diag[0].is_zero(), || format!("no tight zero at m={m}"))?;
        let v = analyze_family(m, &t).unwrap();
        ensure(v.is_positive && !v.is_cp, || format!("verdict at threshold, m={m}"))?;
        let above = analyze_family(m, &(t + rational(1, 1000))).unwrap();
        ensure(!above.is_positive, || format!("positive above threshold, m={m}"))?;

        for alpha in [rational(1, 8), rational(1, 3), rational(1, 1)] {
            let s = eposic::covariant::family_superoperator(m, &alpha).unwrap();
            let w = witness_vector(m);
            let lambda = ExactScalar::from_rational(-rational(2, m as i64) * &alpha);
            ensure(s.choi.apply(&w) == w.scale(&lambda), || format!("eigen-relation at m={m} α={alpha}"))?;
        }
    }
    let v = analyze_family(1, &rational(1, 3)).unwrap();
    let witness = v.witness.as_ref().map(|(e, _)| e.to_string());
    ensure(v.is_positive && !v.is_cp && witness.as_deref() == Some("(-2/3)"), || format!("qubit verdict {v:?}"))?;
    Ok("threshold 1/(m+2) tight for m<=8; eigen-relation for α in {1/8,1/3,1}; qubit verdict".into())
}

fn c10_channel_axioms() -> Outcome {
    let all = CgIndex::all_up_to(5);
    let mut float_only = 0;
    for &ix in &all {
        let ch = EposicChannel::from_index(ix);
        let report = verify_channel(&ch.superoperator());
        ensure(report.is_channel, || format!("{ix}: {report:?}"))?;
        ensure(report.psd_float, || format!("{ix}: float eigenvalue {}", report.min_eigenvalue))?;
        if report.psd_exact.is_none() {
            float_only += 1;
        }
        ensure(is_unital_scaled(&ch), || format!("Φ(I) ≠ ((r+1)/(m+1)) I at {ix}"))?;
    }
    ensure(float_only == 0, || format!("{float_only} channels lacked an exact PSD certificate"))?;
    Ok(format!("{} channels: partial trace, PSD (exact and float), unitality", all.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("1 isometry and completeness", c1_isometry_completeness),
        ("2 dual construction oracle", c2_dual_construction),
        ("3 coefficient identities", c3_coefficients),
        ("4 Choi projection theorem", c4_choi_theorem),
        ("5 covariance", c5_covariance),
        ("6 Kraus symmetries", c6_kraus_symmetries),
        ("7 complementary and dual", c7_complement_dual),
        ("8 convex structure", c8_convex_structure),
        ("9 positive non-CP family", c9_positivity_family),
        ("10 channel axioms", c10_channel_axioms),
    ];
    let started = Instant::now();
    let mut failed = 0;
    for (name, run) in criteria {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail} ({secs:.1}s)"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail} ({secs:.1}s)");
            }
        }
    }
    println!("acceptance: {} of 10 passed in {:.1}s", 10 - failed, started.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
