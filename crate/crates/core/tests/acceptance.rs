//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit status
//! if any criterion fails.

use std::collections::{HashSet, VecDeque};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use psl2kit::field::{gf8_labeling, Gf8Cubic};
use psl2kit::group::PermGroup;
use psl2kit::projline::{MoebiusMap, Permutation, ProjLine};
use psl2kit::psl2::{certify_simplicity, psl2_order, psl2_perm_group, sl2_group};
use psl2kit::search::{constrained_search, full_search};
use psl2kit::verifier::{
    build_exceptional, classify, corollary_check, Verdict, EXCEPTIONAL_INVOLUTIONS,
};

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn order_formulas() -> Outcome {
    for p in [3u64, 5, 7, 11, 13, 17, 19] {
        let order = psl2_perm_group(p).map_err(|e| e.to_string())?.order();
        let expected = (p * p * p - p) / 2;
        ensure(order == expected as u128, || {
            format!("PSL(2,{p}) has order {order}, expected {expected}")
        })?;
    }
    let order = psl2_perm_group(8).map_err(|e| e.to_string())?.order();
    ensure(order == 8 * 8 * 8 - 8 && psl2_order(8) == 504, || {
        format!("PSL(2,8) has order {order}")
    })
}

fn simplicity() -> Outcome {
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13] {
        let g = psl2_perm_group(q).map_err(|e| e.to_string())?;
        let simple = g.is_simple().map_err(|e| e.to_string())?;
        let expected = q > 3;
        ensure(simple == expected, || {
            format!("is_simple(PSL(2,{q})) = {simple}")
        })?;
        if q > 3 {
            let cert = certify_simplicity(q).map_err(|e| e.to_string())?;
            ensure(cert.verdict && cert.reverify(), || {
                format!("certificate for q = {q} fails")
            })?;
            ensure(cert.verdict == simple, || {
                format!("certificate disagrees at q = {q}")
            })?;
        }
    }
    Ok(())
}

fn lemma_chain() -> Outcome {
    for p in [5u32, 7, 11, 13] {
        let g = psl2_perm_group(p as u64).map_err(|e| e.to_string())?;
        let report = classify(&g, p).map_err(|e| e.to_string())?.report;
        ensure(
            report.verdict == Verdict::ContainsNegativeReciprocal,
            || format!("p = {p}: verdict {}", report.verdict.as_str()),
        )?;
        let failed: Vec<&str> = report.failed_checks().map(|c| c.id.as_str()).collect();
        ensure(failed.is_empty(), || format!("p = {p}: failed {failed:?}"))?;
        let branch: &[&str] = if p % 4 == 1 {
            &[
                "lemma-3.2",
                "lemma-3.3",
                "corollary-3.4",
                "corollary-3.5",
                "prop-3.6",
            ]
        } else {
            &[
                "lemma-4.1",
                "corollary-4.2",
                "lemma-4.3",
                "lemma-4.4",
                "prop-4.5",
            ]
        };
        for id in ["lemma-2.1", "lemma-2.4", "lemma-2.5", "lemma-2.6"]
            .iter()
            .chain(branch)
        {
            ensure(report.check(id).is_some(), || {
                format!("p = {p}: missing {id}")
            })?;
        }
    }
    Ok(())
}

fn exceptional_case() -> Outcome {
    let cubics = [
        Gf8Cubic::XCubedPlusXPlusOne,
        Gf8Cubic::XCubedPlusXSquaredPlusOne,
    ];
    for ((c, text), cubic) in EXCEPTIONAL_INVOLUTIONS.into_iter().zip(cubics) {
        let g = build_exceptional(c).map_err(|e| e.to_string())?;
        ensure(g.order() == 168, || {
            format!("variant {c}: order {}", g.order())
        })?;
        let result = classify(&g, 7).map_err(|e| e.to_string())?;
        ensure(
            result.report.verdict == Verdict::Exceptional && result.report.all_passed(),
            || format!("variant {c}: verdict {}", result.report.verdict.as_str()),
        )?;
        ensure(result.report.witness == text, || {
            format!("variant {c}: λ = {}", result.report.witness)
        })?;
        let normal = PermGroup::generated_by(8, result.dichotomy.normal_subgroup.clone())
            .map_err(|e| e.to_string())?;
        ensure(normal.order() == 8 && g.is_normal(&normal), || {
            format!("variant {c}: no normal subgroup of order 8")
        })?;
        let labeling = gf8_labeling(cubic);
        let transported =
            PermGroup::new(labeling.semilinear_affine_generators()).map_err(|e| e.to_string())?;
        ensure(transported.same_elements(&g), || {
            format!("variant {c}: differs from the transported GF(8) group")
        })?;
    }
    Ok(())
}

fn rediscovery() -> Outcome {
    let mut hashes = Vec::new();
    for p in [5u32, 7] {
        let full = full_search(p).map_err(|e| e.to_string())?;
        let constrained = constrained_search(p).map_err(|e| e.to_string())?;
        let expected = if p == 7 { 3 } else { 1 };
        ensure(full.groups.len() == expected, || {
            format!("full_search({p}) found {}", full.groups.len())
        })?;
        ensure(
            full.element_hashes() == constrained.element_hashes(),
            || format!("searches disagree at p = {p}"),
        )?;
        ensure(full.matches_classification(), || {
            format!("p = {p}: inconsistent groups")
        })?;
        hashes.push(full);
    }
    ensure(hashes[0].groups[0].contains_negative_reciprocal, || {
        "p = 5 group lacks -1/z".into()
    })?;
    let psl7 = psl2_perm_group(7).map_err(|e| e.to_string())?;
    let mut expected: Vec<String> = [
        psl7,
        build_exceptional(3).unwrap(),
        build_exceptional(5).unwrap(),
    ]
    .iter()
    .map(|g| {
        format!(
            "{:016x}",
            psl2kit::search::element_set_hash(&g.elements().unwrap())
        )
    })
    .collect();
    expected.sort();
    ensure(hashes[1].element_hashes() == expected, || {
        "p = 7 groups are not PSL(2,7) and the two exceptional groups".into()
    })?;
    for p in [11u32, 13] {
        let out = constrained_search(p).map_err(|e| e.to_string())?;
        ensure(
            out.groups.len() == 1 && out.matches_classification(),
            || format!("constrained_search({p}) found {}", out.groups.len()),
        )?;
    }
    Ok(())
}

fn corollary_pipeline() -> Outcome {
    for p in [5u32, 7, 11, 13] {
        let g = psl2_perm_group(p as u64).map_err(|e| e.to_string())?;
        let count = g.sylow_count(p as u64).map_err(|e| e.to_string())?;
        ensure(count == p as u128 + 1, || {
            format!("p = {p}: {count} Sylow subgroups")
        })?;
        let report = corollary_check(p).map_err(|e| e.to_string())?;
        let check = report.check("corollary").ok_or("no corollary check")?;
        ensure(check.pass && report.all_passed(), || {
            format!(
                "p = {p}: relabeled action check failed: {:?}",
                check.counterexample
            )
        })?;
    }
    Ok(())
}

fn numeric_spot_checks() -> Outcome {
    let labeling = gf8_labeling(Gf8Cubic::XCubedPlusXPlusOne);
    let f = labeling.field();
    let z = labeling.zeta();
    let pow = |e: i64| f.pow(z, e).unwrap();
    for (lhs_exp, rhs_exp) in [(1, 3), (2, 6), (4, 5)] {
        ensure(f.add(f.one(), pow(lhs_exp)) == pow(rhs_exp), || {
            format!("1 + ζ^{lhs_exp} != ζ^{rhs_exp}")
        })?;
    }
    let m7 = |x: i64| x.rem_euclid(7);
    ensure(m7(3i64.pow(3)) == 6 && m7(3i64.pow(4) + 3) == 0, || {
        "c = 3 relations".into()
    })?;
    ensure(m7(3 * 5) == 1, || "3c = 1 for c = 5".into())?;
    for p in [5u64, 13] {
        let g = psl2_perm_group(p).map_err(|e| e.to_string())?;
        let count: u64 = g
            .elements()
            .map_err(|e| e.to_string())?
            .iter()
            .map(|x| x.cycles().iter().filter(|c| c.len() == 2).count() as u64)
            .sum();
        let expected = (p * p + p) / 2 * ((p - 1) / 2);
        ensure(count == expected, || {
            format!("p = {p}: |X| = {count}, expected {expected}")
        })?;
    }
    Ok(())
}

fn closure_order(degree: usize, gens: &[Permutation]) -> usize {
    let id = Permutation::identity(degree);
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.compose(&x).unwrap();
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen.len()
}

fn random_perm(rng: &mut StdRng, n: usize) -> Permutation {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    Permutation::from_images(&v).unwrap()
}

fn random_moebius(rng: &mut StdRng, line: &ProjLine) -> MoebiusMap {
    let f = line.field();
    let q = f.order();
    loop {
        let e = |rng: &mut StdRng| f.elem(rng.random_range(0..q)).unwrap();
        let (a, b, c) = (e(rng), e(rng), e(rng));
        if a.is_zero() {
            continue;
        }
        let d = f.div(f.add(f.one(), f.mul(b, c)), a).unwrap();
        return MoebiusMap::new(f, a, b, c, d).unwrap();
    }
}

fn property_suites() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let primes = [3u32, 5, 7, 11, 13, 17, 19];
    for p in primes {
        let n = p as usize + 1;
        let id = Permutation::identity(n);
        for _ in 0..10_000 {
            let (a, b, c) = (
                random_perm(&mut rng, n),
                random_perm(&mut rng, n),
                random_perm(&mut rng, n),
            );
            let left = a.compose(&b).unwrap().compose(&c).unwrap();
            let right = a.compose(&b.compose(&c).unwrap()).unwrap();
            ensure(left == right, || format!("associativity fails at p = {p}"))?;
            ensure(
                a.compose(&a.inverse()).unwrap() == id && a.inverse().compose(&a).unwrap() == id,
                || format!("inverse fails at p = {p}"),
            )?;
            ensure(
                b.compose(&id).unwrap() == b && id.compose(&c).unwrap() == c,
                || format!("identity fails at p = {p}"),
            )?;
        }
    }

    let mut groups: Vec<(String, PermGroup)> = Vec::new();
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 17, 19] {
        groups.push((format!("PSL(2,{q})"), psl2_perm_group(q).unwrap()));
    }
    for q in [3u64, 5, 7] {
        groups.push((
            format!("SL(2,{q}) image"),
            sl2_group(q).unwrap().perm_image(),
        ));
    }
    for c in [3, 5] {
        groups.push((format!("exceptional {c}"), build_exceptional(c).unwrap()));
    }
    for (name, g) in &groups {
        if g.order() <= 5000 {
            let closure = closure_order(g.degree(), g.generators());
            ensure(g.order() == closure as u128, || {
                format!("{name}: chain order {} vs closure {closure}", g.order())
            })?;
        }
    }

    for p in primes {
        let line = ProjLine::prime(p).unwrap();
        let f = line.field();
        for _ in 0..1_000 {
            let m = random_moebius(&mut rng, &line);
            let k = random_moebius(&mut rng, &line);
            let lhs = line.moebius_perm(&m.then_after(f, &k));
            let rhs = line
                .moebius_perm(&m)
                .compose(&line.moebius_perm(&k))
                .unwrap();
            ensure(lhs == rhs, || {
                format!("Moebius homomorphism fails at p = {p}")
            })?;
        }
    }

    for p in [3u64, 5, 7, 11, 13] {
        let g = psl2_perm_group(p).unwrap();
        let worst = g
            .elements()
            .unwrap()
            .iter()
            .filter(|x| !x.is_identity())
            .map(|x| x.fixed_points().len())
            .max()
            .unwrap_or(0);
        ensure(worst <= 2, || {
            format!("p = {p}: element fixing {worst} points")
        })?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("order formulas", order_formulas),
        ("simplicity", simplicity),
        ("lemma chain", lemma_chain),
        ("exceptional case", exceptional_case),
        ("classification rediscovery", rediscovery),
        ("corollary pipeline", corollary_pipeline),
        ("numeric spot-checks", numeric_spot_checks),
        ("property suites", property_suites),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("PASS  {} {name} ({secs:.2}s)", i + 1),
            Err(msg) => {
                failures += 1;
                println!("FAIL  {} {name} ({secs:.2}s): {msg}", i + 1);
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
