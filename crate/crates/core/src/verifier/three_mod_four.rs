//! The branch for `p ≡ 3 (mod 4)`.
//!
//! A unique involution `λ ∈ K̄` is singled out by `-λ(1)λ(-1) = 1`. With
//! `c = λ(1)`, the main case `c = -1` leads to `λ(z) = -1/z`; any other `c`
//! forces `p = 7` and one of two exceptional involutions.

use serde_json::json;

use super::corollary::{build_exceptional, exceptional_involution};
use super::{
    compute_twist, Branch, Case, CheckResult, KBarAnalysis, Setting, StabilizerDecomposition,
    Verdict,
};
use crate::group::PermGroup;
use crate::projline::Permutation;

pub(crate) fn run(s: &Setting, dec: &StabilizerDecomposition) -> Branch {
    let mut checks = Vec::new();
    let (check, lambda) = unique_normalized_involution(s, dec);
    checks.push(check);
    let Some(lambda) = lambda else {
        return Branch::undetermined(checks);
    };

    let (check, c, n) = power_map_form(s, &lambda);
    checks.push(check);
    let Some(n) = n else {
        return Branch::undetermined(checks);
    };
    let alpha = order_three_element(s, &lambda, c);
    checks.push(alpha.check.clone());

    if c == s.p - 1 {
        checks.push(fixed_points_of_power_map(s, n));
        let check = negative_reciprocal_case(s, &lambda, n);
        let established = check.pass;
        checks.push(check);
        let inversion = s.negative_reciprocal();
        let contained = s.g.contains(&inversion);
        return Branch {
            checks,
            verdict: if contained {
                Verdict::ContainsNegativeReciprocal
            } else {
                Verdict::Undetermined
            },
            witness: (contained || established).then_some(inversion),
            normal_subgroup: Vec::new(),
            analysis: Some(KBarAnalysis {
                lambda,
                n,
                c,
                case: Case::ThreeModFourMain,
            }),
        };
    }

    let special = Special {
        s,
        lambda: &lambda,
        alpha: &alpha.alpha,
        alpha_inv: &alpha.alpha_inv,
        c,
        n,
    };
    checks.push(special.power_identities());
    checks.push(special.quadratic_relation());
    checks.push(special.cube_relation());
    let (check, normal) = special.exceptional_identification();
    checks.push(check);
    let found = !normal.is_empty();
    Branch {
        checks,
        verdict: if found {
            Verdict::Exceptional
        } else {
            Verdict::Undetermined
        },
        witness: Some(lambda.clone()),
        normal_subgroup: normal,
        analysis: Some(KBarAnalysis {
            lambda,
            n,
            c,
            case: Case::ThreeModFourSpecial,
        }),
    }
}

fn unique_normalized_involution(
    s: &Setting,
    dec: &StabilizerDecomposition,
) -> (CheckResult, Option<Permutation>) {
    let zp = s.zp();
    let minus_one = s.p as usize - 1;
    let candidates: Vec<&Permutation> = dec
        .k_bar
        .iter()
        .filter(|l| {
            let prod = zp.mul(l.apply(1) as u32, l.apply(minus_one) as u32);
            zp.neg(prod) == 1
        })
        .collect();
    if candidates.len() != 1 {
        let ce = json!({ "candidates": candidates });
        return (CheckResult::failed("lemma-4.1", json!({}), ce), None);
    }
    let lambda = candidates[0].clone();
    let involution = lambda.order() == 2;
    let negation = s.scaling(s.p - 1);
    let negation_class = s.g.contains(&negation).then(|| s.g.class_size(&negation));
    let witness = json!({
        "lambda": lambda,
        "k_bar_scanned": dec.k_bar.len(),
        "class_size_of_negation": negation_class,
    });
    let ce = (!involution).then(|| json!({ "lambda_order": lambda.order() }));
    (
        CheckResult::from_counterexample("lemma-4.1", witness, ce),
        Some(lambda),
    )
}

/// `λ(z) = c z^n` on squares, `c⁻¹ z^n` on non-squares, `c ∈ N`, `c^n = c`.
fn power_map_form(s: &Setting, lambda: &Permutation) -> (CheckResult, u32, Option<u32>) {
    let zp = s.zp();
    let c = lambda.apply(1) as u32;
    let twist = match compute_twist(s.p, lambda) {
        Ok(t) => t,
        Err(_) => {
            let ce = json!({ "no_twist_exponent": true });
            return (
                CheckResult::failed("corollary-4.2", json!({ "c": c }), ce),
                c,
                None,
            );
        }
    };
    let n = twist.n;
    let image = |z: u32| lambda.apply(z as usize) as u32;
    let c_inv = zp.inv(c);
    let bad_r = s
        .residues()
        .iter()
        .find(|&&z| image(z) != zp.mul(c, zp.pow(z, n as i64)));
    let bad_n = s
        .non_residues()
        .iter()
        .find(|&&z| image(z) != zp.mul(c_inv, zp.pow(z, n as i64)));
    let witness = json!({ "c": c, "n": n, "c_is_non_square": s.classes.is_non_residue(c) });
    let ce = if !s.classes.is_non_residue(c) {
        Some(json!({ "c_is_square": c }))
    } else if !twist.is_odd() {
        Some(json!({ "n_even": n }))
    } else if let Some(z) = bad_r.or(bad_n) {
        Some(json!({ "z": z, "lambda_z": image(*z) }))
    } else if zp.pow(c, n as i64) != c {
        Some(json!({ "c_pow_n": zp.pow(c, n as i64) }))
    } else {
        None
    };
    (
        CheckResult::from_counterexample("corollary-4.2", witness, ce),
        c,
        Some(n),
    )
}

struct AlphaData {
    check: CheckResult,
    alpha: Permutation,
    alpha_inv: Permutation,
}

/// `α(z) = 1 - c⁻¹λ(z)` lies in the group, has order 3, and
/// `α⁻¹(z) = λ(c(1 - z))` at every point.
fn order_three_element(s: &Setting, lambda: &Permutation, c: u32) -> AlphaData {
    let zp = s.zp();
    let alpha = s.affine_after(lambda, zp.neg(zp.inv(c)), 1);
    let c_one_minus = s.affine_after(&s.line.identity(), zp.neg(c), c);
    let alpha_inv = lambda.after(&c_one_minus);
    let in_group = s.g.contains(&alpha);
    let order = alpha.order();
    let mismatch = s
        .line
        .points()
        .find(|&z| alpha.inverse().apply(z) != alpha_inv.apply(z));
    let witness = json!({
        "alpha": alpha,
        "alpha_inverse": alpha_inv,
        "alpha_0": alpha.apply(0),
        "alpha_inf": alpha.apply(s.inf()),
        "alpha_1": alpha.apply(1),
    });
    let ce = if !in_group {
        Some(json!({ "alpha_not_in_group": alpha }))
    } else if order != 3 {
        Some(json!({ "alpha_order": order }))
    } else {
        mismatch.map(|z| json!({ "point": z }))
    };
    AlphaData {
        check: CheckResult::from_counterexample("lemma-4.3", witness, ce),
        alpha,
        alpha_inv,
    }
}

fn fixed_points_of_power_map(s: &Setting, n: u32) -> CheckResult {
    let zp = s.zp();
    let solutions: Vec<u32> = (1..s.p).filter(|&x| zp.pow(x, n as i64) == x).collect();
    let expected = vec![1, s.p - 1];
    let witness = json!({ "solutions": solutions, "n": n });
    let ce = (solutions != expected).then(|| json!({ "solutions": solutions }));
    CheckResult::from_counterexample("lemma-4.4", witness, ce)
}

fn negative_reciprocal_case(s: &Setting, lambda: &Permutation, n: u32) -> CheckResult {
    let inversion = s.negative_reciprocal();
    let n_is_minus_one = n == s.p - 2;
    let witness = json!({ "n": n, "lambda": lambda, "negative_reciprocal": inversion });
    let ce = if !n_is_minus_one {
        Some(json!({ "n_not_minus_one_mod_p_minus_1": n }))
    } else if *lambda != inversion {
        Some(json!({ "lambda": lambda }))
    } else if !s.g.contains(&inversion) {
        Some(json!({ "negative_reciprocal_missing": inversion }))
    } else {
        None
    };
    CheckResult::from_counterexample("prop-4.5", witness, ce)
}

/// Data for `c != -1`.
struct Special<'s, 'a> {
    s: &'s Setting<'a>,
    lambda: &'s Permutation,
    alpha: &'s Permutation,
    alpha_inv: &'s Permutation,
    c: u32,
    n: u32,
}

impl Special<'_, '_> {
    /// Powers `x` of `-c` with `1 - x` a non-square.
    fn admissible_powers(&self) -> Vec<u32> {
        let zp = self.s.zp();
        let base = zp.neg(self.c);
        let mut powers: Vec<u32> = (0..self.s.p as i64 - 1).map(|i| zp.pow(base, i)).collect();
        powers.sort_unstable();
        powers.dedup();
        powers
            .into_iter()
            .filter(|&x| self.s.classes.is_non_residue(zp.sub(1, x)))
            .collect()
    }

    fn power_identities(&self) -> CheckResult {
        let zp = self.s.zp();
        let (c, n) = (self.c, self.n as i64);
        let at = |perm: &Permutation, x: u32| perm.apply(x as usize) as u32;
        let mut rows = Vec::new();
        let mut ce = None;
        let xs = self.admissible_powers();
        for &x in &xs {
            let t = zp.pow(zp.sub(1, x), n);
            let x_inv = zp.inv(x);
            let aa = self.alpha.after(self.alpha);
            let expect = [
                zp.sub(1, zp.mul(zp.pow(c, -2), t)),
                zp.add(1, zp.mul(x_inv, t)),
                zp.mul(zp.pow(c, 2), t),
                zp.neg(zp.mul(x_inv, t)),
            ];
            let actual = [
                at(&aa, x),
                at(&aa, x_inv),
                at(self.alpha_inv, x),
                at(self.alpha_inv, x_inv),
            ];
            if expect != actual {
                ce.get_or_insert(json!({ "x": x, "expected": expect, "actual": actual }));
            }
            rows.push(json!({ "x": x, "values": actual }));
        }
        if xs.is_empty() {
            ce = Some(json!({ "no_admissible_power": true }));
        }
        CheckResult::from_counterexample("lemma-5.1", json!({ "rows": rows }), ce)
    }

    fn quadratic_relation(&self) -> CheckResult {
        let zp = self.s.zp();
        let c = self.c;
        let lhs = |x: u32| zp.add(zp.add(zp.pow(c, 2), zp.pow(c, -2)), zp.mul(2, zp.inv(x)));
        let xs = self.admissible_powers();
        let bad = xs.iter().find(|&&x| lhs(x) != 0);
        let witness = json!({ "xs": xs });
        let ce = bad.map(|&x| json!({ "x": x, "value": lhs(x) }));
        CheckResult::from_counterexample("lemma-5.2", witness, ce)
    }

    fn cube_relation(&self) -> CheckResult {
        let zp = self.s.zp();
        let c = self.c;
        let minus_one = self.s.p - 1;
        let c3 = zp.pow(c, 3);
        let c4 = zp.pow(c, 4);
        let first = zp.add(c4, 3);
        let second = zp.add(zp.mul(3, c4), 1);
        let non_sq = |x: u32| self.s.classes.is_non_residue(zp.sub(1, x));
        let x = [zp.pow(c, 2), zp.pow(c, -2)]
            .into_iter()
            .find(|&x| non_sq(x));
        let y = [zp.neg(c), zp.neg(zp.inv(c))]
            .into_iter()
            .find(|&y| non_sq(y));
        let witness = json!({
            "c_cubed": c3,
            "c4_plus_3": first,
            "three_c4_plus_1": second,
            "x": x,
            "y": y,
        });
        let ce = if c3 != minus_one {
            Some(json!({ "c_cubed": c3 }))
        } else if first != 0 && second != 0 {
            Some(json!({ "c4_plus_3": first, "three_c4_plus_1": second }))
        } else if x.is_none() || y.is_none() || x != y {
            Some(json!({ "x": x, "y": y }))
        } else {
            None
        };
        CheckResult::from_counterexample("lemma-5.3", witness, ce)
    }

    /// Pins `p = 7` and `λ`, and exhibits the normal subgroup of order 8
    /// made of the identity and the fixed-point-free involutions.
    fn exceptional_identification(&self) -> (CheckResult, Vec<Permutation>) {
        let s = self.s;
        let zp = s.zp();
        let expected_lambda = exceptional_involution(self.c);
        let lambda_ok = s.p == 7 && expected_lambda.as_ref() == Some(self.lambda);
        let power_is_identity = (1..s.p).all(|z| zp.pow(z, self.n as i64) == z);

        let mut fpf: Vec<Permutation> = s
            .elements
            .iter()
            .filter(|g| g.order() == 2 && g.fixed_points().is_empty())
            .cloned()
            .collect();
        fpf.insert(0, s.g.identity());
        let closed = fpf
            .iter()
            .all(|a| fpf.iter().all(|b| fpf.contains(&a.after(b))));
        let normal_gens = if closed && fpf.len() == 8 {
            let v = s.g.subgroup_from_elements(fpf.iter().cloned());
            if s.g.is_normal(&v) {
                v.generators().to_vec()
            } else {
                Vec::new()
            }
        } else {
            Vec::new()
        };

        let f = s.line.field();
        let u = PermGroup::new(vec![
            s.line.translation(f.one()),
            s.scaling(2),
            self.lambda.clone(),
        ])
        .expect("nonempty");
        let u_order = u.order();
        let u_in_g = u.is_subgroup_of(s.g);
        let matches_reference = build_exceptional(self.c)
            .map(|e| e.same_elements(&u))
            .unwrap_or(false);

        let witness = json!({
            "p": s.p,
            "c": self.c,
            "lambda": self.lambda,
            "z_pow_n_is_z": power_is_identity,
            "generated_order": u_order.to_string(),
            "normal_subgroup": fpf,
            "normal_subgroup_generators": normal_gens,
        });
        let ce = if !lambda_ok {
            Some(json!({ "p": s.p, "c": self.c, "lambda": self.lambda }))
        } else if !power_is_identity {
            Some(json!({ "n": self.n }))
        } else if u_order != 168 || !u_in_g || !matches_reference {
            Some(json!({
                "generated_order": u_order.to_string(),
                "contained": u_in_g,
                "matches_reference": matches_reference,
            }))
        } else if normal_gens.is_empty() {
            Some(json!({ "fixed_point_free_involutions": fpf.len() - 1, "closed": closed }))
        } else {
            None
        };
        (
            CheckResult::from_counterexample("prop-5.4", witness, ce),
            normal_gens,
        )
    }
}
