//! Mechanical verification of the classification of transitive groups of
//! order `(p³ - p)/2` on `Z/p ∪ {∞}` that contain the translations.
//!
//! Every step checks a universally quantified statement by exhausting the
//! relevant finite set. A failing step is recorded and the chain carries on
//! where it still makes sense, so a defective candidate group produces the
//! longest possible diagnostic report.

mod corollary;
mod one_mod_four;
mod report;
mod three_mod_four;

use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::field::{quadratic_classes, Field, FieldElem, QuadraticClasses};
use crate::group::{GroupError, PermGroup};
use crate::projline::{Permutation, ProjLine};

pub use corollary::{build_exceptional, corollary_check, p3_case_check, EXCEPTIONAL_INVOLUTIONS};
pub use report::{CheckResult, Verdict, VerificationReport};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u32),
    #[error("group acts on {got} points, expected {expected}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("hypotheses of the classification do not hold")]
    HypothesesFail(Box<VerificationReport>),
    #[error("no exponent n with tau(az) = a^n tau(z) for all a in R")]
    NoTwistExponent,
    #[error("permutation does not interchange 0 and infinity")]
    NotInKBar,
    #[error("exceptional variant must be 3 or 5, got {0}")]
    BadVariant(u32),
    #[error("prime {0} is outside the supported range for this check")]
    UnsupportedPrime(u32),
}

/// Residue arithmetic on plain `u32` residues of `Z/p`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Zp<'a> {
    pub field: &'a Field,
    pub p: u32,
}

impl<'a> Zp<'a> {
    pub fn new(field: &'a Field) -> Self {
        Zp {
            field,
            p: field.characteristic(),
        }
    }

    fn e(&self, x: u32) -> FieldElem {
        self.field.elem(x).expect("residue below p")
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        (a + self.p - b) % self.p
    }

    pub fn neg(&self, a: u32) -> u32 {
        (self.p - a) % self.p
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.field.inv(self.e(a)).expect("nonzero").index()
    }

    pub fn pow(&self, a: u32, e: i64) -> u32 {
        self.field.pow(self.e(a), e).expect("nonzero base").index()
    }
}

/// The group under test together with the data every step needs.
pub(crate) struct Setting<'a> {
    pub g: &'a PermGroup,
    pub p: u32,
    pub line: ProjLine,
    pub classes: QuadraticClasses,
    pub elements: Vec<Permutation>,
}

impl<'a> Setting<'a> {
    fn new(g: &'a PermGroup, p: u32) -> Result<Self, VerifyError> {
        let classes = quadratic_classes(p).map_err(|_| VerifyError::NotOddPrime(p))?;
        let line = ProjLine::prime(p).map_err(|_| VerifyError::NotOddPrime(p))?;
        if g.degree() != line.size() {
            return Err(VerifyError::DegreeMismatch {
                expected: line.size(),
                got: g.degree(),
            });
        }
        let elements = g.elements()?;
        Ok(Setting {
            g,
            p,
            line,
            classes,
            elements,
        })
    }

    pub fn zp(&self) -> Zp<'_> {
        Zp::new(self.line.field())
    }

    pub fn inf(&self) -> usize {
        self.p as usize
    }

    pub fn half(&self) -> u32 {
        (self.p - 1) / 2
    }

    pub fn residues(&self) -> &[u32] {
        &self.classes.residues
    }

    pub fn non_residues(&self) -> &[u32] {
        &self.classes.non_residues
    }

    pub fn scaling(&self, a: u32) -> Permutation {
        let f = self.line.field();
        self.line.scaling(f.from_int(a as i64)).expect("nonzero")
    }

    pub fn negative_reciprocal(&self) -> Permutation {
        self.line.negative_reciprocal()
    }

    /// `z -> mul · perm(z) + add`, sending `z` to infinity where `perm` does.
    pub fn affine_after(&self, perm: &Permutation, mul: u32, add: u32) -> Permutation {
        let zp = self.zp();
        let inf = self.inf();
        self.line
            .perm_from_fn(|pt| match perm.apply(pt) {
                x if x == inf => inf,
                x => zp.add(zp.mul(mul, x as u32), add) as usize,
            })
            .expect("affine maps are bijective")
    }
}

/// Theorem hypotheses: order `(p³ - p)/2`, transitive, all translations.
pub fn check_hypotheses(g: &PermGroup, p: u32) -> Result<CheckResult, VerifyError> {
    let line = ProjLine::prime(p).map_err(|_| VerifyError::NotOddPrime(p))?;
    if p == 2 {
        return Err(VerifyError::NotOddPrime(p));
    }
    if g.degree() != line.size() {
        return Err(VerifyError::DegreeMismatch {
            expected: line.size(),
            got: g.degree(),
        });
    }
    let expected = (p as u128).pow(3).saturating_sub(p as u128) / 2;
    let order = g.order();
    let transitive = g.is_transitive();
    let f = line.field();
    let missing: Vec<u32> = (0..p)
        .filter(|&a| !g.contains(&line.translation(f.from_int(a as i64))))
        .collect();
    let witness = json!({
        "order": order.to_string(),
        "expected_order": expected.to_string(),
        "transitive": transitive,
        "translations_contained": missing.is_empty(),
    });
    let counterexample = if order != expected {
        Some(json!({ "order": order.to_string() }))
    } else if !transitive {
        Some(json!({ "orbits": g.orbits() }))
    } else if !missing.is_empty() {
        Some(json!({ "missing_translations": missing }))
    } else {
        None
    };
    Ok(CheckResult::from_counterexample(
        "hypotheses",
        witness,
        counterexample,
    ))
}

pub fn check_double_transitivity(g: &PermGroup) -> CheckResult {
    let transitive = g.is_transitive();
    let doubly = g.is_doubly_transitive();
    let witness = json!({
        "transitive": transitive,
        "stabilizer_of_0_orbits": g.point_stabilizer(0).orbits(),
    });
    let ce = (!doubly).then(|| json!({ "doubly_transitive": false }));
    CheckResult::from_counterexample("lemma-2.1", witness, ce)
}

/// Elements fixing both 0 and infinity, and elements interchanging them.
#[derive(Debug, Clone, Serialize)]
pub struct StabilizerDecomposition {
    pub k: Vec<Permutation>,
    pub k_bar: Vec<Permutation>,
}

impl StabilizerDecomposition {
    /// `|H| = |K| + |K̄|`, the setwise stabilizer of `{0, ∞}`.
    pub fn h_order(&self) -> usize {
        self.k.len() + self.k_bar.len()
    }

    pub fn h(&self) -> impl Iterator<Item = &Permutation> {
        self.k.iter().chain(&self.k_bar)
    }
}

pub fn decompose_stabilizers(
    g: &PermGroup,
    p: u32,
) -> Result<StabilizerDecomposition, VerifyError> {
    let setting = Setting::new(g, p)?;
    Ok(decompose(&setting))
}

fn decompose(s: &Setting) -> StabilizerDecomposition {
    let inf = s.inf();
    let k = s
        .elements
        .iter()
        .filter(|x| x.apply(0) == 0 && x.apply(inf) == inf)
        .cloned()
        .collect();
    let k_bar = s
        .elements
        .iter()
        .filter(|x| x.apply(0) == inf && x.apply(inf) == 0)
        .cloned()
        .collect();
    StabilizerDecomposition { k, k_bar }
}

fn check_decomposition(s: &Setting, dec: &StabilizerDecomposition) -> CheckResult {
    let half = s.half() as usize;
    let closed = dec
        .k
        .iter()
        .all(|a| dec.k.iter().all(|b| dec.k.contains(&a.after(b))));
    let coset = dec.k_bar.first().is_some_and(|lam| {
        let mut lk: Vec<Permutation> = dec.k.iter().map(|x| lam.after(x)).collect();
        lk.sort_unstable();
        lk == dec.k_bar
    });
    let witness = json!({
        "k_order": dec.k.len(),
        "k_bar_order": dec.k_bar.len(),
        "h_order": dec.h_order(),
        "k_closed": closed,
        "k_bar_is_coset": coset,
    });
    let ce = if dec.k.len() != half || dec.k_bar.len() != half {
        Some(json!({ "expected_size": half }))
    } else if !closed {
        Some(json!({ "k_not_closed": true }))
    } else if !coset {
        Some(json!({ "k_bar_not_a_coset": true }))
    } else {
        None
    };
    CheckResult::from_counterexample("def-2.2", witness, ce)
}

fn check_stabilizer_structure(s: &Setting, dec: &StabilizerDecomposition) -> CheckResult {
    let mut scalings: Vec<Permutation> = s.residues().iter().map(|&a| s.scaling(a)).collect();
    scalings.sort_unstable();
    let cyclic = dec.k.iter().any(|x| x.order() as usize == dec.k.len());
    let worst = s
        .elements
        .iter()
        .filter(|x| !x.is_identity())
        .max_by_key(|x| x.fixed_points().len());
    let max_fixed = worst.map_or(0, |x| x.fixed_points().len());
    let witness = json!({
        "k": dec.k,
        "residues": s.residues(),
        "k_cyclic": cyclic,
        "max_fixed_points": max_fixed,
    });
    let ce = if dec.k != scalings {
        Some(json!({ "k_differs_from_residue_scalings": scalings }))
    } else if !cyclic {
        Some(json!({ "k_not_cyclic": true }))
    } else if max_fixed > 2 {
        Some(json!({ "element": worst, "fixed_points": worst.map(|x| x.fixed_points()) }))
    } else {
        None
    };
    CheckResult::from_counterexample("lemma-2.4", witness, ce)
}

fn check_residue_action(s: &Setting, dec: &StabilizerDecomposition) -> CheckResult {
    let one_mod_four = s.p % 4 == 1;
    let minus_one_square = s.classes.minus_one_is_square();
    let bad = dec.k_bar.iter().find(|tau| {
        let sends_r_to_r = s
            .residues()
            .iter()
            .all(|&x| s.classes.is_residue(tau.apply(x as usize) as u32));
        let sends_n_to_n = s
            .non_residues()
            .iter()
            .all(|&x| s.classes.is_non_residue(tau.apply(x as usize) as u32));
        let sends_r_to_n = s
            .residues()
            .iter()
            .all(|&x| s.classes.is_non_residue(tau.apply(x as usize) as u32));
        let sends_n_to_r = s
            .non_residues()
            .iter()
            .all(|&x| s.classes.is_residue(tau.apply(x as usize) as u32));
        if one_mod_four {
            !(sends_r_to_r && sends_n_to_n)
        } else {
            !(sends_r_to_n && sends_n_to_r)
        }
    });
    let witness = json!({
        "minus_one_is_square": minus_one_square,
        "action": if one_mod_four { "stabilizes" } else { "interchanges" },
        "k_bar_checked": dec.k_bar.len(),
    });
    let ce = if minus_one_square != one_mod_four {
        Some(json!({ "minus_one_is_square": minus_one_square }))
    } else {
        bad.map(|tau| json!({ "tau": tau }))
    };
    CheckResult::from_counterexample("lemma-2.5", witness, ce)
}

/// The exponent `n` with `τ(az) = a^n τ(z)` for all `a ∈ R`, `z ∈ (Z/p)*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Twist {
    /// `n` modulo `(p - 1)/2`, the order of `R`.
    pub n_mod_half: u32,
    /// Smallest odd representative modulo `p - 1`, when one exists.
    pub n: u32,
}

impl Twist {
    pub fn is_odd(&self) -> bool {
        self.n % 2 == 1
    }
}

/// Finds the twist exponent of `tau`, checking the identity on all
/// `|R| · (p - 1)` pairs.
pub fn compute_twist(p: u32, tau: &Permutation) -> Result<Twist, VerifyError> {
    let line = ProjLine::prime(p).map_err(|_| VerifyError::NotOddPrime(p))?;
    let classes = quadratic_classes(p).map_err(|_| VerifyError::NotOddPrime(p))?;
    let inf = p as usize;
    if tau.degree() != line.size() || tau.apply(0) != inf || tau.apply(inf) != 0 {
        return Err(VerifyError::NotInKBar);
    }
    let zp = Zp::new(line.field());
    let half = (p - 1) / 2;
    let n_mod_half = (0..half.max(1))
        .find(|&n| {
            classes.residues.iter().all(|&a| {
                (1..p).all(|z| {
                    let lhs = tau.apply(zp.mul(a, z) as usize) as u32;
                    let rhs = zp.mul(zp.pow(a, n as i64), tau.apply(z as usize) as u32);
                    lhs == rhs
                })
            })
        })
        .ok_or(VerifyError::NoTwistExponent)?;
    let n = [n_mod_half, n_mod_half + half]
        .into_iter()
        .find(|n| n % 2 == 1)
        .unwrap_or(n_mod_half);
    Ok(Twist { n_mod_half, n })
}

fn check_twists(s: &Setting, dec: &StabilizerDecomposition) -> CheckResult {
    let half = s.half() as u64;
    let mut twists = Vec::new();
    let mut ce = None;
    for tau in &dec.k_bar {
        match compute_twist(s.p, tau) {
            Ok(t) => {
                let n = t.n as u64;
                if (n * n - 1) % half != 0 || !t.is_odd() {
                    ce.get_or_insert(json!({ "tau": tau, "n": t.n }));
                }
                twists.push(json!({ "tau": tau, "n": t.n, "n_mod_half": t.n_mod_half }));
            }
            Err(_) => {
                ce.get_or_insert(json!({ "tau": tau, "no_twist_exponent": true }));
            }
        }
    }
    if dec.k_bar.is_empty() {
        ce = Some(json!({ "k_bar_empty": true }));
    }
    CheckResult::from_counterexample("lemma-2.6", json!({ "twists": twists }), ce)
}

/// Which branch the chain took.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Case {
    #[serde(rename = "p1mod4")]
    OneModFour,
    #[serde(rename = "p3mod4-main")]
    ThreeModFourMain,
    #[serde(rename = "p3mod4-special")]
    ThreeModFourSpecial,
}

/// The distinguished element of `K̄` and its constants.
#[derive(Debug, Clone, Serialize)]
pub struct KBarAnalysis {
    pub lambda: Permutation,
    /// Odd twist exponent.
    pub n: u32,
    /// `λ(1)`, or the constant on non-squares when `p ≡ 1 (mod 4)`.
    pub c: u32,
    pub case: Case,
}

#[derive(Debug, Clone, Serialize)]
pub struct Dichotomy {
    pub verdict: Verdict,
    pub witness: Option<Permutation>,
    /// Generators of the normal subgroup of order 8 in the exceptional case.
    pub normal_subgroup: Vec<Permutation>,
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub report: VerificationReport,
    pub dichotomy: Dichotomy,
    pub decomposition: Option<StabilizerDecomposition>,
    pub analysis: Option<KBarAnalysis>,
}

/// Runs the whole chain and always returns a report; the verdict is
/// `hypotheses-failed` if the group does not satisfy the hypotheses.
pub fn verify(g: &PermGroup, p: u32) -> Result<Classification, VerifyError> {
    let hypotheses = check_hypotheses(g, p)?;
    if !hypotheses.pass {
        let report = VerificationReport {
            p,
            verdict: Verdict::HypothesesFailed,
            witness: String::new(),
            checks: vec![hypotheses],
        };
        return Ok(Classification {
            report,
            dichotomy: Dichotomy {
                verdict: Verdict::HypothesesFailed,
                witness: None,
                normal_subgroup: Vec::new(),
            },
            decomposition: None,
            analysis: None,
        });
    }
    let s = Setting::new(g, p)?;
    let mut checks = vec![hypotheses];

    if p == 3 {
        let (check, witness) = corollary::p3_case_for(&s);
        let verdict = if check.pass && s.g.contains(&witness) {
            Verdict::ContainsNegativeReciprocal
        } else {
            Verdict::Undetermined
        };
        checks.push(check);
        return Ok(finish(
            p,
            checks,
            verdict,
            Some(witness),
            Vec::new(),
            None,
            None,
        ));
    }

    checks.push(check_double_transitivity(g));
    let dec = decompose(&s);
    checks.push(check_decomposition(&s, &dec));
    checks.push(check_stabilizer_structure(&s, &dec));
    checks.push(check_residue_action(&s, &dec));
    checks.push(check_twists(&s, &dec));

    let branch = if p % 4 == 1 {
        one_mod_four::run(&s, &dec)
    } else {
        three_mod_four::run(&s, &dec)
    };
    checks.extend(branch.checks);

    let verdict = branch.verdict;
    let theorem = check_conclusion(&s, verdict, &branch.normal_subgroup);
    checks.push(theorem);
    Ok(finish(
        p,
        checks,
        verdict,
        branch.witness,
        branch.normal_subgroup,
        Some(dec),
        branch.analysis,
    ))
}

fn finish(
    p: u32,
    checks: Vec<CheckResult>,
    verdict: Verdict,
    witness: Option<Permutation>,
    normal_subgroup: Vec<Permutation>,
    decomposition: Option<StabilizerDecomposition>,
    analysis: Option<KBarAnalysis>,
) -> Classification {
    let report = VerificationReport {
        p,
        verdict,
        witness: witness
            .as_ref()
            .map(ToString::to_string)
            .unwrap_or_default(),
        checks,
    };
    Classification {
        report,
        dichotomy: Dichotomy {
            verdict,
            witness,
            normal_subgroup,
        },
        decomposition,
        analysis,
    }
}

/// Verdict (a) needs `z -> -1/z` in the group; verdict (b) needs `p = 7`,
/// no `z -> -1/z`, and a normal subgroup of order 8.
fn check_conclusion(s: &Setting, verdict: Verdict, normal: &[Permutation]) -> CheckResult {
    let has_inversion = s.g.contains(&s.negative_reciprocal());
    let normal_order = if normal.is_empty() {
        0
    } else {
        let n = PermGroup::generated_by(s.g.degree(), normal.to_vec()).expect("same degree");
        if s.g.is_normal(&n) {
            n.order()
        } else {
            0
        }
    };
    let ok = match verdict {
        Verdict::ContainsNegativeReciprocal => has_inversion,
        Verdict::Exceptional => s.p == 7 && !has_inversion && normal_order == 8,
        _ => false,
    };
    let witness = json!({
        "verdict": verdict.as_str(),
        "contains_negative_reciprocal": has_inversion,
        "normal_subgroup_order": normal_order.to_string(),
    });
    let ce = (!ok).then(|| json!({ "verdict_not_established": verdict.as_str() }));
    CheckResult::from_counterexample("theorem", witness, ce)
}

/// Like [`verify`], but hypothesis failure is an error carrying the report.
pub fn classify(g: &PermGroup, p: u32) -> Result<Classification, VerifyError> {
    let c = verify(g, p)?;
    if c.report.verdict == Verdict::HypothesesFailed {
        return Err(VerifyError::HypothesesFail(Box::new(c.report)));
    }
    Ok(c)
}

/// Outcome of one branch of the chain.
pub(crate) struct Branch {
    pub checks: Vec<CheckResult>,
    pub verdict: Verdict,
    pub witness: Option<Permutation>,
    pub normal_subgroup: Vec<Permutation>,
    pub analysis: Option<KBarAnalysis>,
}

impl Branch {
    fn undetermined(checks: Vec<CheckResult>) -> Self {
        Branch {
            checks,
            verdict: Verdict::Undetermined,
            witness: None,
            normal_subgroup: Vec::new(),
            analysis: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psl2::psl2_perm_group;

    fn psl2(p: u32) -> PermGroup {
        psl2_perm_group(p as u64).unwrap()
    }

    fn assert_all_pass(report: &VerificationReport) {
        let failed: Vec<&str> = report.failed_checks().map(|c| c.id.as_str()).collect();
        assert!(failed.is_empty(), "failed checks: {failed:?}");
    }

    #[test]
    fn psl2_of_small_primes_gives_verdict_a() {
        for p in [5, 7, 11, 13] {
            let c = classify(&psl2(p), p).unwrap();
            assert_eq!(
                c.report.verdict,
                Verdict::ContainsNegativeReciprocal,
                "p = {p}"
            );
            assert_all_pass(&c.report);
            assert_eq!(c.report.witness, c.dichotomy.witness.unwrap().to_string());
            assert!(c.report.check("theorem").is_some());
        }
    }

    #[test]
    fn branch_ids_follow_residue_of_p() {
        let ids = |p| -> Vec<String> {
            let c = classify(&psl2(p), p).unwrap();
            c.report.checks.iter().map(|c| c.id.clone()).collect()
        };
        let five = ids(5);
        assert!(five.contains(&"prop-3.6".to_owned()));
        assert!(!five.contains(&"lemma-4.1".to_owned()));
        let seven = ids(7);
        assert!(seven.contains(&"prop-4.5".to_owned()));
        assert!(!seven.iter().any(|id| id.ends_with("5.1")));
    }

    #[test]
    fn exceptional_groups_give_verdict_b() {
        for (c, text) in EXCEPTIONAL_INVOLUTIONS {
            let g = build_exceptional(c).unwrap();
            assert_eq!(g.order(), 168);
            let result = classify(&g, 7).unwrap();
            assert_eq!(result.report.verdict, Verdict::Exceptional);
            assert_all_pass(&result.report);
            assert_eq!(result.report.witness, text);
            let analysis = result.analysis.unwrap();
            assert_eq!(analysis.c, c);
            assert_eq!(analysis.case, Case::ThreeModFourSpecial);
            let normal =
                PermGroup::generated_by(8, result.dichotomy.normal_subgroup.clone()).unwrap();
            assert_eq!(normal.order(), 8);
            assert!(g.is_normal(&normal));
        }
    }

    #[test]
    fn exceptional_groups_are_distinct() {
        let a = build_exceptional(3).unwrap();
        let b = build_exceptional(5).unwrap();
        let psl = psl2(7);
        assert!(!a.same_elements(&b));
        assert!(!a.same_elements(&psl));
        assert!(!b.same_elements(&psl));
        assert_eq!(
            build_exceptional(4).unwrap_err(),
            VerifyError::BadVariant(4)
        );
    }

    #[test]
    fn exceptional_matches_transported_semilinear_group() {
        use crate::field::{gf8_labeling, Gf8Cubic};
        for (c, cubic) in [
            (3, Gf8Cubic::XCubedPlusXPlusOne),
            (5, Gf8Cubic::XCubedPlusXSquaredPlusOne),
        ] {
            let labeling = gf8_labeling(cubic);
            let t = PermGroup::new(labeling.semilinear_affine_generators()).unwrap();
            assert!(t.same_elements(&build_exceptional(c).unwrap()));
        }
    }

    #[test]
    fn stabilizer_sizes() {
        for p in [5u32, 7, 11, 13] {
            let dec = decompose_stabilizers(&psl2(p), p).unwrap();
            assert_eq!(dec.k.len(), (p as usize - 1) / 2);
            assert_eq!(dec.k_bar.len(), (p as usize - 1) / 2);
            assert_eq!(dec.h_order(), p as usize - 1);
        }
        let dec = decompose_stabilizers(&psl2(7), 7).unwrap();
        let mut k: Vec<String> = dec.k.iter().map(ToString::to_string).collect();
        k.sort();
        assert_eq!(k, ["()", "(1 2 4)(3 6 5)", "(1 4 2)(3 5 6)"]);
    }

    #[test]
    fn twist_of_negative_reciprocal_is_minus_one() {
        for p in [5u32, 7, 11, 13] {
            let line = ProjLine::prime(p).unwrap();
            let t = compute_twist(p, &line.negative_reciprocal()).unwrap();
            assert!(t.is_odd());
            assert_eq!(t.n_mod_half, ((p - 1) / 2 - 1) % ((p - 1) / 2));
        }
        let lambda = Permutation::parse_cycles(8, EXCEPTIONAL_INVOLUTIONS[0].1).unwrap();
        let t = compute_twist(7, &lambda).unwrap();
        assert!(t.is_odd());
        assert_eq!(lambda.apply(1), 3);
    }

    #[test]
    fn twist_rejects_maps_outside_k_bar() {
        let line = ProjLine::prime(7).unwrap();
        let t = line.translation(line.field().one());
        assert_eq!(compute_twist(7, &t).unwrap_err(), VerifyError::NotInKBar);
    }

    #[test]
    fn hypotheses_failure_is_reported() {
        let line = ProjLine::prime(7).unwrap();
        let g = PermGroup::new(vec![line.translation(line.field().one())]).unwrap();
        let report = verify(&g, 7).unwrap().report;
        assert_eq!(report.verdict, Verdict::HypothesesFailed);
        assert_eq!(report.checks.len(), 1);
        assert!(matches!(
            classify(&g, 7),
            Err(VerifyError::HypothesesFail(_))
        ));
        let err = verify(&psl2(5), 7).unwrap_err();
        assert!(matches!(err, VerifyError::DegreeMismatch { .. }));
    }

    #[test]
    fn p3_case() {
        let report = p3_case_check();
        assert_eq!(report.verdict, Verdict::ContainsNegativeReciprocal);
        assert_eq!(report.witness, "(0 inf)(1 2)");
        assert_all_pass(&report);
        let g = psl2(3);
        assert_eq!(g.order(), 12);
        assert!(!g.is_simple().unwrap());
    }

    #[test]
    fn sylow_relabeling_recovers_projective_action() {
        for p in [5, 7, 11] {
            let report = corollary_check(p).unwrap();
            assert_all_pass(&report);
            assert_eq!(report.verdict, Verdict::ContainsNegativeReciprocal);
            let w = &report.check("corollary").unwrap().witness;
            assert_eq!(w["sylow_count"], (p + 1).to_string());
            assert_eq!(w["sylow_action_doubly_transitive"], true);
        }
        assert_eq!(
            corollary_check(17).unwrap_err(),
            VerifyError::UnsupportedPrime(17)
        );
    }

    #[test]
    fn reports_are_deterministic() {
        let a = classify(&psl2(7), 7).unwrap().report.to_json();
        let b = classify(&psl2(7), 7).unwrap().report.to_json();
        assert_eq!(a, b);
    }
}
