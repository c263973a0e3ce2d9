//! Conjugacy classes, normal closures, simplicity and Sylow counts.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use super::{GroupError, PermGroup, MEMBER_LIST_LIMIT};
use crate::field::is_prime;
use crate::projline::Permutation;

#[derive(Debug, Clone, Serialize)]
pub struct ConjugacyClass {
    /// Smallest member in image-sequence order.
    pub representative: Permutation,
    pub size: usize,
    /// Present when the group order is at most [`MEMBER_LIST_LIMIT`].
    #[serde(skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<Permutation>>,
}

impl PermGroup {
    /// Classes ordered by representative; sizes sum to the group order.
    pub fn conjugacy_classes(&self) -> Result<Vec<ConjugacyClass>, GroupError> {
        let elems = self.elements()?;
        let index: HashMap<&Permutation, usize> =
            elems.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let keep_members = self.order() <= MEMBER_LIST_LIMIT;
        let mut class_of = vec![usize::MAX; elems.len()];
        let mut classes = Vec::new();
        for start in 0..elems.len() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            class_of[start] = id;
            let mut members = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                for g in &self.generators {
                    let j = index[&elems[i].conjugate_by(g)];
                    if class_of[j] == usize::MAX {
                        class_of[j] = id;
                        members.push(j);
                        queue.push_back(j);
                    }
                }
            }
            members.sort_unstable();
            classes.push(ConjugacyClass {
                representative: elems[start].clone(),
                size: members.len(),
                members: keep_members.then(|| members.iter().map(|&i| elems[i].clone()).collect()),
            });
        }
        Ok(classes)
    }

    /// Size of the conjugacy class of `g`, by orbit under conjugation.
    pub fn class_size(&self, g: &Permutation) -> usize {
        let mut seen = BTreeSet::from([g.clone()]);
        let mut queue = VecDeque::from([g.clone()]);
        while let Some(x) = queue.pop_front() {
            for s in &self.generators {
                let y = x.conjugate_by(s);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        seen.len()
    }

    /// Smallest normal subgroup containing every seed.
    pub fn normal_closure(&self, seeds: &[Permutation]) -> Result<PermGroup, GroupError> {
        if let Some(s) = seeds.iter().find(|s| !self.contains(s)) {
            return Err(GroupError::SeedNotInGroup(s.to_string()));
        }
        let mut closure = self.subgroup_from_elements(seeds.iter().cloned());
        'grow: loop {
            for h in closure.generators.clone() {
                for g in &self.generators {
                    let c = h.conjugate_by(g);
                    if !closure.contains(&c) {
                        let mut gens = closure.generators.clone();
                        gens.push(c);
                        closure = self.derived(self.degree, gens);
                        continue 'grow;
                    }
                }
            }
            return Ok(closure);
        }
    }

    /// `h` is a normal subgroup of `self`: a subgroup closed under
    /// conjugation by the generators.
    pub fn is_normal(&self, h: &PermGroup) -> bool {
        h.is_subgroup_of(self)
            && h.generators.iter().all(|x| {
                self.generators
                    .iter()
                    .all(|g| h.contains(&x.conjugate_by(g)))
            })
    }

    /// Nontrivial, and the normal closure of every non-identity class is
    /// the whole group.
    pub fn is_simple(&self) -> Result<bool, GroupError> {
        if self.order() == 1 {
            return Ok(false);
        }
        for class in self.conjugacy_classes()? {
            if class.representative.is_identity() {
                continue;
            }
            if self.normal_closure(&[class.representative])?.order() != self.order() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Number of Sylow `prime`-subgroups.
    pub fn sylow_count(&self, prime: u64) -> Result<u128, GroupError> {
        let (sylow_order, _) = self.sylow_order(prime)?;
        if sylow_order == prime as u128 {
            return self.count_cyclic_subgroups_of_prime_order(prime);
        }
        let sylow = self.sylow_subgroup(prime)?;
        let elems = self.elements()?;
        let normalizer = elems
            .iter()
            .filter(|g| {
                sylow
                    .generators
                    .iter()
                    .all(|x| sylow.contains(&x.conjugate_by(g)))
            })
            .count() as u128;
        Ok(self.order() / normalizer)
    }

    /// `(prime^v, v)` with `prime^v` the exact power dividing the order.
    fn sylow_order(&self, prime: u64) -> Result<(u128, u32), GroupError> {
        if !is_prime(prime) {
            return Err(GroupError::NotPrime(prime));
        }
        let order = self.order();
        if order % prime as u128 != 0 {
            return Err(GroupError::PrimeDoesNotDivideOrder { prime, order });
        }
        let (mut power, mut v, mut rest) = (1u128, 0, order);
        while rest % prime as u128 == 0 {
            rest /= prime as u128;
            power *= prime as u128;
            v += 1;
        }
        Ok((power, v))
    }

    /// Distinct subgroups generated by elements of order `prime`,
    /// deduplicated as element sets.
    pub fn count_cyclic_subgroups_of_prime_order(&self, prime: u64) -> Result<u128, GroupError> {
        let mut subgroups = BTreeSet::new();
        for g in self.elements()? {
            if g.order() == prime {
                let mut members: Vec<Permutation> = (0..prime as i64).map(|i| g.pow(i)).collect();
                members.sort_unstable();
                subgroups.insert(members);
            }
        }
        Ok(subgroups.len() as u128)
    }

    /// One Sylow subgroup, grown greedily from elements of prime-power order.
    ///
    /// A proper `prime`-subgroup always has an element of prime-power order
    /// in its normalizer outside it, so the greedy pass cannot get stuck.
    pub fn sylow_subgroup(&self, prime: u64) -> Result<PermGroup, GroupError> {
        let (target, _) = self.sylow_order(prime)?;
        let is_power = |mut n: u128| {
            while n % prime as u128 == 0 {
                n /= prime as u128;
            }
            n == 1
        };
        let candidates: Vec<Permutation> = self
            .elements()?
            .into_iter()
            .filter(|g| !g.is_identity() && is_power(g.order() as u128))
            .collect();
        let mut current = self.derived(self.degree, Vec::new());
        while current.order() < target {
            let before = current.order();
            for x in &candidates {
                if current.contains(x) {
                    continue;
                }
                let mut gens = current.generators.clone();
                gens.push(x.clone());
                let bigger = self.derived(self.degree, gens);
                if is_power(bigger.order()) {
                    current = bigger;
                    if current.order() == target {
                        break;
                    }
                }
            }
            assert!(current.order() > before, "greedy Sylow growth stalled");
        }
        Ok(current)
    }
}
