//! Brute-force enumeration of the groups covered by the classification.
//!
//! Let `G` act on `Z/p ∪ {∞}` with order `(p³ - p)/2` and contain the
//! translations. The stabilizer `K` of `0` and `∞` is the group of maps
//! `z -> az` with `a` a nonzero square, and for any `λ ∈ G` swapping `0` and
//! `∞` the subgroup `⟨translations, K, λ⟩` has a point stabilizer of `∞`
//! of order `p(p - 1)/2` and is transitive, so it has order at least
//! `(p³ - p)/2` and therefore equals `G`. Enumerating `λ` over all maps
//! swapping `0` and `∞` thus finds every such `G`. For each group found,
//! the search re-checks that dropping `λ` leaves a group of order
//! `p(p - 1)/2`.
//!
//! [`full_search`] tries every bijection on the nonzero residues.
//! [`constrained_search`] only tries `λ(z) = c z^n` on squares and
//! `d z^n` on non-squares, with `n` odd and `(p - 1)/2 | n² - 1`.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::field::{is_prime, primitive_root, quadratic_classes};
use crate::group::{GroupError, PermGroup};
use crate::projline::{Permutation, ProjLine};
use crate::verifier::{check_hypotheses, verify, Verdict, VerifyError};

pub const MAX_CONSTRAINED_PRIME: u32 = 31;
pub const MAX_FULL_PRIME: u32 = 7;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SearchError {
    #[error("{0} is not an odd prime")]
    NotPrime(u32),
    #[error("p = {p} is too large for this search mode (at most {max})")]
    PTooLarge { p: u32, max: u32 },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Full,
    Constrained,
}

/// One distinct group, identified by its element set.
#[derive(Debug, Clone, Serialize)]
pub struct FoundGroup {
    /// FNV-1a 64 hash of the sorted element images, in hex.
    pub element_hash: String,
    pub order: u128,
    /// First `λ` in iteration order producing this group.
    pub lambda: Permutation,
    /// Number of candidates producing this group.
    pub hits: usize,
    pub hypotheses_hold: bool,
    /// Order of `⟨translations, K⟩`, which must be `p(p - 1)/2`.
    pub order_without_lambda: u128,
    pub verdict: Verdict,
    pub all_checks_pass: bool,
    pub contains_negative_reciprocal: bool,
    pub equals_psl2: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchOutcome {
    pub p: u32,
    pub mode: SearchMode,
    pub target_order: u128,
    /// Candidate maps tried, including those that are not bijections.
    pub candidates: usize,
    pub non_bijective: usize,
    pub groups: Vec<FoundGroup>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SearchOutcome {
    /// One group for `p != 7`, three for `p = 7`, all consistent.
    pub fn matches_classification(&self) -> bool {
        let expected = if self.p == 7 { 3 } else { 1 };
        let consistent = self.groups.iter().all(|g| {
            g.hypotheses_hold
                && g.all_checks_pass
                && g.order_without_lambda == self.target_order / (self.p as u128 + 1)
                && match g.verdict {
                    Verdict::ContainsNegativeReciprocal => g.equals_psl2,
                    Verdict::Exceptional => self.p == 7 && !g.contains_negative_reciprocal,
                    _ => false,
                }
        });
        self.groups.len() == expected && consistent
    }

    pub fn element_hashes(&self) -> Vec<&str> {
        self.groups
            .iter()
            .map(|g| g.element_hash.as_str())
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("outcome serializes")
    }
}

struct Context {
    p: u32,
    line: ProjLine,
    base: Vec<Permutation>,
    target: u128,
}

impl Context {
    fn new(p: u32, max: u32) -> Result<Self, SearchError> {
        if p == 2 || !is_prime(p as u64) {
            return Err(SearchError::NotPrime(p));
        }
        if p > max {
            return Err(SearchError::PTooLarge { p, max });
        }
        let line = ProjLine::prime(p).map_err(|_| SearchError::NotPrime(p))?;
        let f = line.field();
        let g = primitive_root(p).map_err(|_| SearchError::NotPrime(p))?;
        let square = f.mul(f.from_int(g as i64), f.from_int(g as i64));
        let base = vec![
            line.translation(f.one()),
            line.scaling(square).expect("nonzero"),
        ];
        let target = ((p as u128).pow(3) - p as u128) / 2;
        Ok(Context {
            p,
            line,
            base,
            target,
        })
    }

    /// `λ` sending `0 <-> ∞` and `z -> images[z - 1]` on nonzero residues.
    fn lambda(&self, nonzero_images: &[usize]) -> Option<Permutation> {
        let inf = self.line.infinity();
        let mut images = Vec::with_capacity(self.line.size());
        images.push(inf);
        images.extend_from_slice(nonzero_images);
        images.push(0);
        self.line.perm_from_images(&images).ok()
    }

    fn group_with(&self, lambda: &Permutation) -> Option<PermGroup> {
        let mut gens = self.base.clone();
        gens.push(lambda.clone());
        PermGroup::new_bounded(gens, self.target)
            .ok()
            .flatten()
            .filter(|g| g.order() == self.target)
    }

    fn run(
        &self,
        mode: SearchMode,
        candidates: Vec<Vec<usize>>,
        started: Instant,
    ) -> Result<SearchOutcome, SearchError> {
        let total = candidates.len();
        let lambdas: Vec<Option<Permutation>> = candidates.iter().map(|c| self.lambda(c)).collect();
        let non_bijective = lambdas.iter().filter(|l| l.is_none()).count();
        let built: Vec<Option<(Permutation, PermGroup)>> = lambdas
            .into_par_iter()
            .map(|l| l.and_then(|l| self.group_with(&l).map(|g| (l, g))))
            .collect();

        // Deduplicate in candidate order; equal orders plus containment of
        // the generators means equal element sets.
        let mut distinct: Vec<(Permutation, PermGroup, usize)> = Vec::new();
        for (lambda, group) in built.into_iter().flatten() {
            match distinct.iter_mut().find(|(_, g, _)| g.contains(&lambda)) {
                Some(entry) => entry.2 += 1,
                None => distinct.push((lambda, group, 1)),
            }
        }

        let psl2 = PermGroup::new(vec![self.base[0].clone(), self.line.negative_reciprocal()])?;
        let mut by_hash = BTreeMap::new();
        for (lambda, group, hits) in distinct {
            let found = self.describe(&group, lambda, hits, &psl2)?;
            by_hash.insert(found.element_hash.clone(), found);
        }
        Ok(SearchOutcome {
            p: self.p,
            mode,
            target_order: self.target,
            candidates: total,
            non_bijective,
            groups: by_hash.into_values().collect(),
            elapsed: started.elapsed(),
        })
    }

    fn describe(
        &self,
        group: &PermGroup,
        lambda: Permutation,
        hits: usize,
        psl2: &PermGroup,
    ) -> Result<FoundGroup, SearchError> {
        let elements = group.elements()?;
        let hypotheses_hold = check_hypotheses(group, self.p)?.pass;
        let without = PermGroup::new(self.base.clone())?.order();
        let report = verify(group, self.p)?.report;
        Ok(FoundGroup {
            element_hash: format!("{:016x}", element_set_hash(&elements)),
            order: group.order(),
            lambda,
            hits,
            hypotheses_hold,
            order_without_lambda: without,
            verdict: report.verdict,
            all_checks_pass: report.all_passed(),
            contains_negative_reciprocal: group.contains(&self.line.negative_reciprocal()),
            equals_psl2: group.same_elements(psl2),
        })
    }
}

/// FNV-1a over the images of the elements in sorted order.
pub fn element_set_hash(elements: &[Permutation]) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut sorted: Vec<&Permutation> = elements.iter().collect();
    sorted.sort_unstable();
    let mut h = OFFSET;
    for g in sorted {
        for &b in g.image_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(PRIME);
        }
    }
    h
}

/// Every bijection of the nonzero residues, completed by `0 <-> ∞`.
pub fn full_search(p: u32) -> Result<SearchOutcome, SearchError> {
    let started = Instant::now();
    let ctx = Context::new(p, MAX_FULL_PRIME)?;
    let candidates = (1..p as usize)
        .permutations(p as usize - 1)
        .collect::<Vec<_>>();
    ctx.run(SearchMode::Full, candidates, started)
}

/// Power maps twisted by a constant on each square class.
pub fn constrained_search(p: u32) -> Result<SearchOutcome, SearchError> {
    let started = Instant::now();
    let ctx = Context::new(p, MAX_CONSTRAINED_PRIME)?;
    let classes = quadratic_classes(p).map_err(|_| SearchError::NotPrime(p))?;
    let f = ctx.line.field();
    let half = (p as u64 - 1) / 2;
    let exponents = (1..p as u64 - 1).filter(|n| n % 2 == 1 && (n * n - 1) % half == 0);
    let mut candidates = Vec::new();
    for n in exponents {
        for c in 1..p {
            for d in 1..p {
                let images = (1..p)
                    .map(|z| {
                        let scale = if classes.is_residue(z) { c } else { d };
                        let zn = f.pow(f.from_int(z as i64), n as i64).expect("nonzero");
                        f.mul(f.from_int(scale as i64), zn).index() as usize
                    })
                    .collect();
                candidates.push(images);
            }
        }
    }
    ctx.run(SearchMode::Constrained, candidates, started)
}

/// Runs `mode` at `p`.
pub fn search(p: u32, mode: SearchMode) -> Result<SearchOutcome, SearchError> {
    match mode {
        SearchMode::Full => full_search(p),
        SearchMode::Constrained => constrained_search(p),
    }
}
