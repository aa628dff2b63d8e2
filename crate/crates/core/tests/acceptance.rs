//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{battery, c3_blocks, transpositions, Case};
use fundom::audit::{
    effectiveness, facet_elements_generate, fix_orthogonality_check, min_generating_size,
    verify_fundamental_domain, AuditLimits,
};
use fundom::constructions::{dirichlet_domain, gdd, k_universal_vector, ssp, ssp_reduced, GammaStrategy};
use fundom::lexmax::{in_closure_lex, in_lex, is_lex_closed};
use fundom::sampling::{trial_rng, RationalGrid};
use fundom::{ConeSystem, PermGroup, RatVec};
use num_bigint::BigUint;
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const CAP: usize = 1_000_000;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T>(r: fundom::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn order_at_most(g: &PermGroup, bound: u64) -> bool {
    g.order() <= BigUint::from(bound)
}

/// Every construction the library offers, skipping the ones that enumerate
/// the whole group when it is large.
fn builder_outputs(g: &PermGroup) -> Result<Vec<(&'static str, ConeSystem)>, String> {
    let mut out = vec![
        ("ssp", ssp(g)),
        ("ssp-reduced", ssp_reduced(g)),
        ("gdd canonical", ok(gdd(g, &GammaStrategy::CanonicalBasis, CAP))?),
        ("gdd orbit-weights:2", ok(gdd(g, &GammaStrategy::PerOrbitWeights(2), CAP))?),
    ];
    if order_at_most(g, 40_320) {
        out.push(("gdd k-universal:2", ok(gdd(g, &GammaStrategy::KUniversal(2), CAP))?));
        let alpha = ok(k_universal_vector(g.degree(), 2))?;
        out.push(("dirichlet k-universal:2", ok(dirichlet_domain(g, &alpha, CAP))?));
    }
    Ok(out)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    for n in [6usize, 9] {
        let g = c3_blocks(n);
        let m = (n / 3) as u32;
        let x: Vec<i64> = (0..n).map(|j| if j % 3 == 2 { 0 } else { 1 }).collect();
        let orbit = ok(g.orbit_of_points(&x, CAP))?;
        ensure!(orbit.len() == 3usize.pow(m), "n={n}: orbit size {} != {}", orbit.len(), 3usize.pow(m));

        let cone = ssp(&g);
        let mut in_ssp = 0;
        for y in &orbit {
            if ok(cone.classify(&RatVec::from_ints(y)))?.is_member() {
                in_ssp += 1;
            }
        }
        ensure!(in_ssp == 2usize.pow(m), "n={n}: |SSP ∩ orbit| = {in_ssp} != {}", 2usize.pow(m));

        let lambda_ssp = ok(effectiveness(&g, &cone, 20))?.lambda;
        ensure!(lambda_ssp == 2usize.pow(m), "n={n}: Λ(ssp) = {lambda_ssp}");

        let domain = ok(gdd(&g, &GammaStrategy::PerOrbitWeights(2), CAP))?;
        ensure!(domain.len() == 2 * n / 3, "n={n}: gdd has {} inequalities", domain.len());
        let lambda_gdd = ok(effectiveness(&g, &domain, 20))?.lambda;
        ensure!(lambda_gdd == 1, "n={n}: Λ(gdd) = {lambda_gdd}");
        notes.push(format!(
            "n={n}: orbit {}, SSP reps {in_ssp}, Λ(ssp) {lambda_ssp}, gdd {} ineqs Λ {lambda_gdd}",
            orbit.len(),
            domain.len()
        ));
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(5), "took {elapsed:.2?}");
    Ok(notes.join("; "))
}

fn criterion_2() -> Outcome {
    let mut cases = battery(10);
    for n in [9, 10] {
        cases.push(Case {
            name: format!("S_{n}"),
            group: PermGroup::symmetric(n),
            symmetric_product: true,
        });
    }
    for c in &cases {
        let n = c.group.degree();
        let f = c.group.orbits_on_indices().len();
        let reduced = ssp_reduced(&c.group);
        ensure!(reduced.len() <= n - f, "{}: {} inequalities > n - f = {}", c.name, reduced.len(), n - f);
        let core = ssp(&c.group).irredundant_core();
        ensure!(
            core.len() == reduced.len(),
            "{}: irredundant core {} != reduced {}",
            c.name,
            core.len(),
            reduced.len()
        );
    }
    Ok(format!("{} groups with n <= 10", cases.len()))
}

fn criterion_3() -> Outcome {
    for n in [4, 6, 8] {
        let g = transpositions(n);
        let reduced = ssp_reduced(&g).len();
        ensure!(reduced == n / 2, "n={n}: ssp_reduced has {reduced} inequalities");
        let gens = ok(min_generating_size(&g, 1 << 10))?;
        ensure!(gens == n / 2, "n={n}: min generating size {gens}");
    }
    Ok("n = 4, 6, 8 give n/2 facets and n/2 generators".into())
}

fn criterion_4() -> Outcome {
    let grid = RationalGrid::default();
    let mut groups = 0;
    let mut samples = 0;
    let mut tied = 0;
    for c in battery(7).into_iter().filter(|c| order_at_most(&c.group, 5040)) {
        let n = c.group.degree();
        let cone = ssp(&c.group);
        for t in 0..1000u64 {
            let x = grid.sample(n, &mut trial_rng(4, t));
            let ssp_member = ok(cone.classify(&x))?.is_member();
            let closure = ok(in_closure_lex(&c.group, &x, CAP))?;
            ensure!(ssp_member == closure, "{}: disagreement at {x}", c.name);
            let mut sorted = x.coords().to_vec();
            sorted.sort();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                tied += 1;
            }
            samples += 1;
        }
        groups += 1;
    }
    Ok(format!("{samples} samples over {groups} groups agree, {tied} with tied coordinates"))
}

fn criterion_5() -> Outcome {
    let mut cases = battery(8);
    for n in [9, 12] {
        cases.push(Case {
            name: format!("C_3 blocks (n={n})"),
            group: c3_blocks(n),
            symmetric_product: false,
        });
    }
    let limits = AuditLimits::default();
    let mut systems = 0;
    let mut sampled = 0;
    for c in &cases {
        for (label, cone) in builder_outputs(&c.group)? {
            let r = ok(verify_fundamental_domain(&c.group, &cone, 1000, 5, &limits))?;
            ensure!(r.coverage_failures == 0, "{} / {label}: {} coverage failures", c.name, r.coverage_failures);
            ensure!(r.interior_collisions == 0, "{} / {label}: {} interior collisions", c.name, r.interior_collisions);
            let b = r.binary_orbit_coverage.ok_or(format!("{}: binary check skipped", c.name))?;
            ensure!(
                b.orbits_total == b.orbits_with_rep,
                "{} / {label}: {} of {} binary orbits without a representative",
                c.name,
                b.orbits_total - b.orbits_with_rep,
                b.orbits_total
            );
            if r.collision_check == fundom::audit::CollisionCheck::Sampled {
                sampled += 1;
            }
            systems += 1;
        }
    }
    Ok(format!(
        "{systems} systems over {} groups, 1000 trials each, {sampled} with sampled collision checks",
        cases.len()
    ))
}

fn criterion_6() -> Outcome {
    let cases = battery(12);
    let mut checked = 0;
    for c in &cases {
        let alpha = ok(k_universal_vector(c.group.degree(), 2))?;
        let cone = ok(dirichlet_domain(&c.group, &alpha, CAP))?;
        let lambda = ok(effectiveness(&c.group, &cone, 20))?.lambda;
        ensure!(lambda == 1, "{}: Λ = {lambda}", c.name);
        checked += 1;
    }
    Ok(format!("Λ = 1 on {checked} groups with n <= 12"))
}

fn criterion_7() -> Outcome {
    let cases = battery(12);
    let mut closed = 0;
    for c in &cases {
        let lex_closed = is_lex_closed(&c.group);
        ensure!(
            lex_closed == c.symmetric_product,
            "{}: is_lex_closed = {lex_closed}",
            c.name
        );
        let lambda = ok(effectiveness(&c.group, &ssp(&c.group), 20))?.lambda;
        ensure!((lambda == 1) == lex_closed, "{}: Λ(ssp) = {lambda}, closed = {lex_closed}", c.name);
        closed += lex_closed as usize;
    }
    let c3 = PermGroup::cyclic(3);
    let report = ok(effectiveness(&c3, &ssp(&c3), 20))?;
    ensure!(
        report.lambda == 2 && report.witness_representatives == vec![vec![1, 1, 0], vec![1, 0, 1]],
        "C_3 witness {:?}",
        report.witness_representatives
    );
    Ok(format!(
        "{closed} of {} groups closed; C_3 witness {{110, 101}}",
        cases.len()
    ))
}

fn criterion_8() -> Outcome {
    let cases = battery(8);
    let mut emitted = 0;
    let mut cores = 0;
    for c in &cases {
        let g = &c.group;
        for (label, cone) in builder_outputs(g)? {
            ensure!(fix_orthogonality_check(&cone), "{} / {label}: fix-orthogonality fails", c.name);
            emitted += cone.len();
            // Redundancy elimination is one LP per inequality; skip the
            // full-group systems once they get large.
            if cone.len() <= 720 {
                let core = cone.irredundant_core();
                ensure!(fix_orthogonality_check(&core), "{} / {label}: core fix-orthogonality", c.name);
                ensure!(facet_elements_generate(g, &core), "{} / {label}: facet elements do not generate", c.name);
                cores += 1;
            }
        }

        let canonical = ok(gdd(g, &GammaStrategy::CanonicalBasis, CAP))?;
        ensure!(canonical.mutually_implies(&ssp(g)), "{}: gdd(canonical) differs from ssp", c.name);

        if order_at_most(g, 5040) {
            let n = g.degree();
            let descending = RatVec::from_ints(&(0..n as i64).rev().collect::<Vec<_>>());
            for gamma in [ok(k_universal_vector(n, 2))?, descending] {
                let a = ok(gdd(g, &GammaStrategy::Explicit(vec![gamma.clone()]), CAP))?;
                let b = ok(dirichlet_domain(g, &gamma, CAP))?;
                ensure!(a.mutually_implies(&b), "{}: gdd({gamma}) differs from its Dirichlet domain", c.name);
            }
        }
    }

    let mut points = 0;
    for c in cases.iter().filter(|c| order_at_most(&c.group, 5040)) {
        let n = c.group.degree();
        for bound in 1..=3i64 {
            let k = bound as u64 + 1;
            let alpha = ok(k_universal_vector(n, k))?;
            let cone = ok(dirichlet_domain(&c.group, &alpha, CAP))?.compile();
            let total = (bound as u64 + 1).pow(n as u32);
            let xs: Vec<Vec<i64>> = if total <= 5000 {
                (0..total)
                    .map(|mut code| {
                        (0..n)
                            .map(|_| {
                                let d = (code % k) as i64;
                                code /= k;
                                d
                            })
                            .collect()
                    })
                    .collect()
            } else {
                let mut rng = trial_rng(8, bound as u64);
                (0..2000).map(|_| (0..n).map(|_| rng.gen_range(0..=bound)).collect()).collect()
            };
            for x in xs {
                let lex = ok(in_lex(&c.group, &RatVec::from_ints(&x), CAP))?;
                let member = cone.classify_i64(&x).is_member();
                ensure!(lex == member, "{}: B={bound}, x={x:?}: in_lex {lex}, F_k {member}", c.name);
                points += 1;
            }
        }
    }
    Ok(format!(
        "{emitted} emitted inequalities, {cores} irredundant systems, {points} finite-k points"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("C_3 block family", criterion_1),
        ("facet bound n - f", criterion_2),
        ("lower-bound family n/2", criterion_3),
        ("lex closure equals SSP", criterion_4),
        ("GDD correctness", criterion_5),
        ("binary uniqueness of the 2-universal Dirichlet domain", criterion_6),
        ("lex closedness of symmetric products", criterion_7),
        ("structural invariants", criterion_8),
    ];
    let mut failures = 0;
    for (k, (title, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|panic| {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {title} [{detail}] ({secs:.2}s)", k + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {}: FAIL  {title}: {why} ({secs:.2}s)", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
