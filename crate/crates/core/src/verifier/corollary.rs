//! The exceptional groups at `p = 7`, the `p = 3` case, and the
//! identification of a simple group of order `(p³ - p)/2` through its
//! action on Sylow `p`-subgroups.

use std::collections::BTreeMap;

use serde_json::json;

use super::{verify, CheckResult, Setting, Verdict, VerificationReport, VerifyError};
use crate::group::PermGroup;
use crate::projline::{Permutation, ProjLine};
use crate::psl2::psl2_perm_group;

/// The involution `λ` of each exceptional group, keyed by `c = λ(1)`.
pub const EXCEPTIONAL_INVOLUTIONS: [(u32, &str); 2] =
    [(3, "(0 inf)(1 3)(2 6)(4 5)"), (5, "(0 inf)(1 5)(2 3)(4 6)")];

pub(crate) fn exceptional_involution(c: u32) -> Option<Permutation> {
    EXCEPTIONAL_INVOLUTIONS
        .iter()
        .find(|(v, _)| *v == c)
        .map(|(_, text)| Permutation::parse_cycles(8, text).expect("valid cycle text"))
}

/// `<z -> z + 1, z -> 2z, λ>` on the projective line over `Z/7`, of order 168.
pub fn build_exceptional(variant: u32) -> Result<PermGroup, VerifyError> {
    let lambda = exceptional_involution(variant).ok_or(VerifyError::BadVariant(variant))?;
    let line = ProjLine::prime(7).expect("7 is prime");
    let f = line.field();
    let gens = vec![
        line.translation(f.one()),
        line.scaling(f.from_int(2)).expect("nonzero"),
        lambda,
    ];
    Ok(PermGroup::new(gens).expect("nonempty"))
}

/// At `p = 3` the group is the alternating group on the four points and
/// contains `(0 inf)(1 2)`, which is `z -> -1/z`.
pub(crate) fn p3_case_for(s: &Setting) -> (CheckResult, Permutation) {
    let witness_perm = Permutation::parse_cycles(4, "(0 inf)(1 2)").expect("valid cycle text");
    let order = s.g.order();
    let all_even = s.elements.iter().all(Permutation::is_even);
    let contains = s.g.contains(&witness_perm);
    let simple = s.g.is_simple().unwrap_or(true);
    let witness = json!({
        "order": order.to_string(),
        "all_even": all_even,
        "contains": witness_perm,
        "is_simple": simple,
    });
    let ce = if order != 12 || !all_even {
        Some(json!({ "order": order.to_string(), "all_even": all_even }))
    } else if !contains {
        Some(json!({ "missing": witness_perm }))
    } else if simple {
        Some(json!({ "is_simple": true }))
    } else {
        None
    };
    (
        CheckResult::from_counterexample("p3-case", witness, ce),
        witness_perm,
    )
}

/// Runs the chain on `PSL(2, 3)`.
pub fn p3_case_check() -> VerificationReport {
    let g = psl2_perm_group(3).expect("q = 3 is supported");
    verify(&g, 3).expect("p = 3 is an odd prime").report
}

/// Relabels the conjugation action of `PSL(2, p)` on its Sylow
/// `p`-subgroups as an action on `Z/p ∪ {∞}` and checks it against the
/// projective action. The relabeled group is then classified.
pub fn corollary_check(p: u32) -> Result<VerificationReport, VerifyError> {
    if !(5..=13).contains(&p) {
        return Err(VerifyError::UnsupportedPrime(p));
    }
    let g = psl2_perm_group(p as u64).map_err(|_| VerifyError::NotOddPrime(p))?;
    let line = ProjLine::prime(p).map_err(|_| VerifyError::NotOddPrime(p))?;
    let elements = g.elements()?;
    let simple = g.is_simple()?;
    let sylow_count = g.sylow_count(p as u64)?;

    let sylows = sylow_subgroups(&elements, p);
    let index: BTreeMap<&[Permutation], usize> = sylows
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_slice(), i))
        .collect();
    let act = |g: &Permutation, i: usize| -> usize {
        let image = conjugate_set(&sylows[i], g);
        index[image.as_slice()]
    };

    let sigma = line.translation(line.field().one());
    let inf = line.infinity();
    let fixed_by_sigma: Vec<usize> = (0..sylows.len()).filter(|&i| act(&sigma, i) == i).collect();
    let mut label = vec![usize::MAX; sylows.len()];
    let mut labeling_ok = fixed_by_sigma.len() == 1;
    if labeling_ok {
        label[fixed_by_sigma[0]] = inf;
        // Sylows are sorted as element sets, so the first unlabeled one is
        // the smallest.
        let mut q = (0..sylows.len())
            .find(|&i| label[i] == usize::MAX)
            .unwrap_or(0);
        for i in 0..p as usize {
            if label[q] != usize::MAX {
                labeling_ok = false;
                break;
            }
            label[q] = i;
            q = act(&sigma, q);
        }
    }

    // Each Sylow fixes exactly one point; that point is its preimage.
    let fixed_point = |i: usize| -> Option<usize> {
        let gen = sylows[i].iter().find(|x| !x.is_identity())?;
        let fixed = gen.fixed_points();
        (fixed.len() == 1).then(|| fixed[0])
    };
    let beta: Option<Vec<usize>> = labeling_ok
        .then(|| {
            let mut beta = vec![usize::MAX; line.size()];
            for i in 0..sylows.len() {
                beta[fixed_point(i)?] = label[i];
            }
            beta.iter().all(|&b| b != usize::MAX).then_some(beta)
        })
        .flatten();

    let relabel = |g: &Permutation| -> Permutation {
        let mut images = vec![0usize; line.size()];
        for i in 0..sylows.len() {
            images[label[i]] = label[act(g, i)];
        }
        line.perm_from_images(&images)
            .expect("conjugation permutes Sylows")
    };

    let mut ce = None;
    let mut relabeled = None;
    if !simple {
        ce = Some(json!({ "is_simple": false }));
    } else if sylow_count != p as u128 + 1 || sylows.len() != p as usize + 1 {
        ce = Some(json!({ "sylow_count": sylow_count.to_string() }));
    } else if !labeling_ok {
        ce = Some(json!({ "sigma_fixed_sylows": fixed_by_sigma.len() }));
    } else if let Some(beta) = &beta {
        let mismatch = elements.iter().find(|x| {
            let r = relabel(x);
            line.points().any(|z| r.apply(beta[z]) != beta[x.apply(z)])
        });
        if let Some(x) = mismatch {
            ce = Some(json!({ "not_equivariant": x }));
        } else if relabel(&sigma) != sigma {
            ce = Some(json!({ "sigma_label_action": relabel(&sigma) }));
        } else {
            let gens = g.generators().iter().map(relabel).collect();
            relabeled = Some(PermGroup::new(gens)?);
        }
    } else {
        ce = Some(json!({ "no_point_bijection": true }));
    }

    let doubly = relabeled.as_ref().map(PermGroup::is_doubly_transitive);
    let bijection: Option<Vec<String>> = beta.as_ref().map(|b| {
        b.iter()
            .map(|&x| {
                if x == inf {
                    "inf".to_owned()
                } else {
                    x.to_string()
                }
            })
            .collect()
    });
    let witness = json!({
        "is_simple": simple,
        "sylow_count": sylow_count.to_string(),
        "sylow_fixed_by_sigma": fixed_by_sigma,
        "point_to_label": bijection,
        "sylow_action_doubly_transitive": doubly,
    });
    let corollary = CheckResult::from_counterexample("corollary", witness, ce);

    let mut checks = vec![corollary];
    let (verdict, witness) = match &relabeled {
        Some(h) => {
            let c = verify(h, p)?;
            checks.extend(c.report.checks);
            (c.report.verdict, c.report.witness)
        }
        None => (Verdict::Undetermined, String::new()),
    };
    Ok(VerificationReport {
        p,
        verdict,
        witness,
        checks,
    })
}

/// Sylow `p`-subgroups as sorted element lists, in sorted order.
fn sylow_subgroups(elements: &[Permutation], p: u32) -> Vec<Vec<Permutation>> {
    let mut out: Vec<Vec<Permutation>> = elements
        .iter()
        .filter(|g| g.order() == p as u64)
        .map(|g| {
            let mut members: Vec<Permutation> = (0..p as i64).map(|i| g.pow(i)).collect();
            members.sort_unstable();
            members
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn conjugate_set(set: &[Permutation], g: &Permutation) -> Vec<Permutation> {
    let mut image: Vec<Permutation> = set.iter().map(|x| x.conjugate_by(g)).collect();
    image.sort_unstable();
    image
}
