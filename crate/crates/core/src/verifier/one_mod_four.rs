//! The branch for `p ≡ 1 (mod 4)`: every element of `K̄` is an involution,
//! which pins the twist to `-1` and forces `z -> -1/z` into the group.

use serde_json::json;

use super::{Branch, Case, CheckResult, KBarAnalysis, Setting, StabilizerDecomposition, Verdict};
use crate::projline::Permutation;

pub(crate) fn run(s: &Setting, dec: &StabilizerDecomposition) -> Branch {
    let mut checks = vec![
        count_two_orbits(s, dec),
        kbar_involutions(s, dec),
        inverting_twist(s, dec),
    ];

    let (check, lambda_c) = inverse_on_squares(s, dec);
    checks.push(check);
    let Some((lambda, c)) = lambda_c else {
        return Branch::undetermined(checks);
    };
    checks.push(negative_reciprocal_in_group(s, &lambda, c));

    let inversion = s.negative_reciprocal();
    let contained = s.g.contains(&inversion);
    let n = super::compute_twist(s.p, &lambda).map(|t| t.n).unwrap_or(0);
    Branch {
        checks,
        verdict: if contained {
            Verdict::ContainsNegativeReciprocal
        } else {
            Verdict::Undetermined
        },
        witness: contained.then_some(inversion),
        normal_subgroup: Vec::new(),
        analysis: Some(KBarAnalysis {
            lambda,
            n,
            c,
            case: Case::OneModFour,
        }),
    }
}

/// Pairs (element, 2-cycle of that element), counted directly over the
/// whole group.
fn count_two_orbits(s: &Setting, dec: &StabilizerDecomposition) -> CheckResult {
    let p = s.p as u64;
    let total: u64 = s
        .elements
        .iter()
        .map(|g| g.cycles().iter().filter(|c| c.len() == 2).count() as u64)
        .sum();
    let expected = (p * p + p) / 2 * ((p - 1) / 2);
    let swapping_zero_inf = s
        .elements
        .iter()
        .filter(|g| g.apply(0) == s.inf() && g.apply(s.inf()) == 0)
        .count();
    let witness = json!({
        "count": total,
        "expected": expected,
        "elements_with_orbit_0_inf": swapping_zero_inf,
    });
    let ce = if total != expected {
        Some(json!({ "count": total }))
    } else if swapping_zero_inf != dec.k_bar.len() || swapping_zero_inf as u64 != (p - 1) / 2 {
        Some(json!({ "elements_with_orbit_0_inf": swapping_zero_inf }))
    } else {
        None
    };
    CheckResult::from_counterexample("lemma-3.2", witness, ce)
}

fn kbar_involutions(s: &Setting, dec: &StabilizerDecomposition) -> CheckResult {
    let p = s.p as usize;
    let minus = s.scaling(p as u32 - 1);
    let class_size = if s.g.contains(&minus) {
        s.g.class_size(&minus)
    } else {
        0
    };
    let bound = (p * p + p) / 2;
    let bad = dec.k_bar.iter().find(|t| t.order() != 2);
    let witness = json!({
        "k_bar": dec.k_bar,
        "class_size_of_negation": class_size,
        "class_size_lower_bound": bound,
    });
    let ce = match bad {
        Some(t) => Some(json!({ "tau": t, "order": t.order() })),
        None if class_size < bound => Some(json!({ "class_size_of_negation": class_size })),
        None => None,
    };
    CheckResult::from_counterexample("lemma-3.3", witness, ce)
}

/// Conjugation by any element of `K̄` inverts `K`.
fn inverting_twist(s: &Setting, dec: &StabilizerDecomposition) -> CheckResult {
    let half = s.half();
    let mut ce = None;
    'outer: for tau in &dec.k_bar {
        for sigma in &dec.k {
            if sigma.conjugate_by(tau) != sigma.inverse() {
                ce = Some(json!({ "tau": tau, "sigma": sigma }));
                break 'outer;
            }
        }
        match super::compute_twist(s.p, tau) {
            Ok(t) if t.n_mod_half == (half - 1) % half => {}
            _ => {
                ce = Some(json!({ "tau": tau, "twist_not_minus_one": true }));
                break;
            }
        }
    }
    let witness = json!({ "n_mod_half": (half - 1) % half, "half": half });
    CheckResult::from_counterexample("corollary-3.4", witness, ce)
}

/// The element of `K̄` fixing 1 inverts squares and acts as `z -> c/z`
/// on non-squares.
fn inverse_on_squares(
    s: &Setting,
    dec: &StabilizerDecomposition,
) -> (CheckResult, Option<(Permutation, u32)>) {
    let zp = s.zp();
    let fixing_one: Vec<&Permutation> = dec.k_bar.iter().filter(|l| l.apply(1) == 1).collect();
    if fixing_one.len() != 1 {
        let ce = json!({ "elements_fixing_1": fixing_one });
        return (CheckResult::failed("corollary-3.5", json!({}), ce), None);
    }
    let lambda = fixing_one[0].clone();
    let image = |z: u32| lambda.apply(z as usize) as u32;
    let bad_square = s.residues().iter().find(|&&z| image(z) != zp.inv(z));
    let constants: Vec<u32> = s
        .non_residues()
        .iter()
        .map(|&z| zp.mul(image(z), z))
        .collect();
    let c = constants[0];
    let witness = json!({ "lambda": lambda, "c": c });
    let ce = if let Some(z) = bad_square {
        Some(json!({ "z": z, "lambda_z": image(*z) }))
    } else if constants.iter().any(|&k| k != c) {
        Some(json!({ "constants_on_non_squares": constants }))
    } else {
        None
    };
    (
        CheckResult::from_counterexample("corollary-3.5", witness, ce),
        Some((lambda, c)),
    )
}

/// `α(z) = 1 - λ(z)` has order 3 and `α⁻¹(z) = λ(1 - z)`; evaluating both
/// at a square `x` with `x - 1` a non-square forces `c = 1`.
fn negative_reciprocal_in_group(s: &Setting, lambda: &Permutation, c: u32) -> CheckResult {
    let zp = s.zp();
    let p = s.p;
    let alpha = s.affine_after(lambda, p - 1, 1);
    let one_minus = s.affine_after(&s.line.identity(), p - 1, 1);
    let alpha_inv = lambda.after(&one_minus);
    let alpha_in_g = s.g.contains(&alpha);
    let order_three = alpha.order() == 3;
    let inverse_ok = alpha.after(&alpha_inv).is_identity();

    let x = s
        .residues()
        .iter()
        .copied()
        .find(|&x| s.classes.is_non_residue(zp.sub(x, 1)));
    let pointwise = x.map(|x| {
        let x_minus_1 = zp.sub(x, 1);
        let via_alpha = alpha.after(&alpha).apply(x as usize) as u32;
        let via_inverse = alpha_inv.apply(x as usize) as u32;
        // (x - 1 - cx)/(x - 1) and -c/(x - 1)
        let formula_left = zp.mul(zp.sub(x_minus_1, zp.mul(c, x)), zp.inv(x_minus_1));
        let formula_right = zp.mul(zp.neg(c), zp.inv(x_minus_1));
        (x, via_alpha, via_inverse, formula_left, formula_right)
    });
    let inversion = s.negative_reciprocal();
    let contained = s.g.contains(&inversion);
    let witness = json!({
        "alpha": alpha,
        "x": pointwise.map(|t| t.0),
        "alpha_alpha_x": pointwise.map(|t| t.1),
        "alpha_inverse_x": pointwise.map(|t| t.2),
        "c": c,
        "negative_reciprocal": inversion,
    });
    let ce = if !alpha_in_g || !order_three || !inverse_ok {
        Some(
            json!({ "alpha_in_group": alpha_in_g, "order_three": order_three, "inverse_formula": inverse_ok }),
        )
    } else if let Some((_, a, b, fl, fr)) =
        pointwise.filter(|t| t.1 != t.2 || t.1 != t.3 || t.2 != t.4)
    {
        Some(json!({ "alpha_alpha_x": a, "alpha_inverse_x": b, "formula": [fl, fr] }))
    } else if pointwise.is_none() {
        Some(json!({ "no_square_x_with_non_square_x_minus_1": true }))
    } else if c != 1 {
        Some(json!({ "c": c }))
    } else if !contained {
        Some(json!({ "negative_reciprocal_missing": inversion }))
    } else {
        None
    };
    CheckResult::from_counterexample("prop-3.6", witness, ce)
}
