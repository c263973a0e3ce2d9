//! Permutation groups backed by a base and strong generating set.
//!
//! Everything that needs the full element list (setwise stabilizers,
//! conjugacy classes, simplicity) refuses to run above an enumeration cap
//! instead of degrading to sampling.

mod chain;
mod classes;

use std::collections::VecDeque;

use thiserror::Error;

use crate::projline::Permutation;
use chain::StabChain;

pub use classes::ConjugacyClass;

/// Default bound on the number of elements an operation may enumerate.
pub const DEFAULT_ENUMERATION_CAP: u128 = 20_000;

/// Groups up to this order keep explicit member lists in their classes.
pub const MEMBER_LIST_LIMIT: u128 = 5_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("a group needs at least one generator")]
    NoGenerators,
    #[error("generators act on different point sets ({left} vs {right} points)")]
    DomainMismatch { left: usize, right: usize },
    #[error("group of order {order} exceeds the enumeration cap {cap}")]
    GroupTooLargeForEnumeration { order: u128, cap: u128 },
    #[error("seed {0} is not an element of the group")]
    SeedNotInGroup(String),
    #[error("{prime} does not divide the group order {order}")]
    PrimeDoesNotDivideOrder { prime: u64, order: u128 },
    #[error("{0} is not prime")]
    NotPrime(u64),
}

#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
    cap: u128,
}

impl PermGroup {
    /// The group generated by `gens`, which must share one degree.
    pub fn new(gens: Vec<Permutation>) -> Result<Self, GroupError> {
        let degree = gens.first().ok_or(GroupError::NoGenerators)?.degree();
        Self::with_base(degree, gens, &[])
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            chain: StabChain::build(degree, &[], &[], None).expect("unbounded"),
            cap: DEFAULT_ENUMERATION_CAP,
        }
    }

    /// Like [`PermGroup::new`] but allows an empty generator list.
    pub fn generated_by(degree: usize, gens: Vec<Permutation>) -> Result<Self, GroupError> {
        Self::with_base(degree, gens, &[])
    }

    fn with_base(
        degree: usize,
        gens: Vec<Permutation>,
        base_prefix: &[usize],
    ) -> Result<Self, GroupError> {
        check_degrees(degree, &gens)?;
        let chain = StabChain::build(degree, &gens, base_prefix, None).expect("unbounded");
        Ok(PermGroup {
            degree,
            generators: gens,
            chain,
            cap: DEFAULT_ENUMERATION_CAP,
        })
    }

    /// Builds `<gens>` unless its order provably exceeds `max_order`, in
    /// which case `Ok(None)` is returned early.
    pub fn new_bounded(
        gens: Vec<Permutation>,
        max_order: u128,
    ) -> Result<Option<Self>, GroupError> {
        let degree = gens.first().ok_or(GroupError::NoGenerators)?.degree();
        check_degrees(degree, &gens)?;
        Ok(StabChain::build(degree, &gens, &[], Some(max_order))
            .ok()
            .map(|chain| PermGroup {
                degree,
                generators: gens,
                chain,
                cap: DEFAULT_ENUMERATION_CAP,
            }))
    }

    pub fn with_enumeration_cap(mut self, cap: u128) -> Self {
        self.cap = cap;
        self
    }

    pub fn enumeration_cap(&self) -> u128 {
        self.cap
    }

    fn derived(&self, degree: usize, gens: Vec<Permutation>) -> PermGroup {
        PermGroup::generated_by(degree, gens)
            .expect("same degree")
            .with_enumeration_cap(self.cap)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain.base()
    }

    /// Strong generators, deduplicated, in level order.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for level in &self.chain.levels {
            for g in &level.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// Orbit lengths along the base; their product is the order.
    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.chain.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> u128 {
        self.chain.order()
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    /// Exact membership by sifting through the stabilizer chain.
    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain.contains(g)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    /// Same set of elements.
    pub fn same_elements(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    fn check_cap(&self) -> Result<(), GroupError> {
        if self.order() > self.cap {
            return Err(GroupError::GroupTooLargeForEnumeration {
                order: self.order(),
                cap: self.cap,
            });
        }
        Ok(())
    }

    /// All elements, sorted lexicographically by image sequence.
    pub fn elements(&self) -> Result<Vec<Permutation>, GroupError> {
        self.check_cap()?;
        let mut elems = self.chain.elements();
        elems.sort_unstable();
        Ok(elems)
    }

    /// Sorted orbit of a point.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut queue = VecDeque::from([point]);
        let mut out = vec![point];
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = g.apply(x);
                if !std::mem::replace(&mut seen[y], true) {
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// All orbits, each sorted, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut covered = vec![false; self.degree];
        let mut out = Vec::new();
        for x in 0..self.degree {
            if !covered[x] {
                let orb = self.orbit(x);
                for &y in &orb {
                    covered[y] = true;
                }
                out.push(orb);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(0).len() == self.degree
    }

    /// Transitive, with the stabilizer of point 0 transitive on the rest.
    pub fn is_doubly_transitive(&self) -> bool {
        if !self.is_transitive() {
            return false;
        }
        if self.degree < 2 {
            return true;
        }
        self.point_stabilizer(0).orbit(1).len() == self.degree - 1
    }

    pub fn point_stabilizer(&self, point: usize) -> PermGroup {
        let with_point_first =
            StabChain::build(self.degree, &self.generators, &[point], None).expect("unbounded");
        let gens = with_point_first
            .levels
            .get(1)
            .map(|l| l.gens.clone())
            .unwrap_or_default();
        self.derived(self.degree, gens)
    }

    /// Stabilizer of a point set, found by filtering the element list.
    pub fn setwise_stabilizer(&self, set: &[usize]) -> Result<PermGroup, GroupError> {
        let mut inside = vec![false; self.degree];
        for &x in set {
            inside[x] = true;
        }
        let members = self
            .elements()?
            .into_iter()
            .filter(|g| set.iter().all(|&x| inside[g.apply(x)]));
        Ok(self.subgroup_from_elements(members))
    }

    /// The subgroup generated by `elems`, keeping only generators that
    /// enlarge the group built so far.
    pub fn subgroup_from_elements(
        &self,
        elems: impl IntoIterator<Item = Permutation>,
    ) -> PermGroup {
        let mut sub = self.derived(self.degree, Vec::new());
        for g in elems {
            if !sub.contains(&g) {
                let mut gens = sub.generators.clone();
                gens.push(g);
                sub = self.derived(self.degree, gens);
            }
        }
        sub
    }
}

fn check_degrees(degree: usize, gens: &[Permutation]) -> Result<(), GroupError> {
    match gens.iter().find(|g| g.degree() != degree) {
        Some(g) => Err(GroupError::DomainMismatch {
            left: degree,
            right: g.degree(),
        }),
        None => Ok(()),
    }
}

#[cfg(test)]
pub(crate) mod oracle {
    use std::collections::{HashSet, VecDeque};

    use crate::projline::Permutation;

    /// Closure of the generators under composition, by breadth-first search.
    pub fn closure(degree: usize, gens: &[Permutation]) -> HashSet<Permutation> {
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
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projline::ProjLine;

    fn psl2(p: u32) -> (ProjLine, PermGroup) {
        let l = ProjLine::prime(p).unwrap();
        let g = PermGroup::new(vec![
            l.translation(l.field().one()),
            l.negative_reciprocal(),
        ])
        .unwrap();
        (l, g)
    }

    #[test]
    fn small_orders() {
        let l = ProjLine::prime(7).unwrap();
        let f = l.field();
        let t = PermGroup::new(vec![l.translation(f.one())]).unwrap();
        assert_eq!(t.order(), 7);
        let (_, g) = psl2(7);
        assert_eq!(g.order(), 168);
        let affine = PermGroup::new(vec![
            l.translation(f.one()),
            l.scaling(f.from_int(3)).unwrap(),
        ])
        .unwrap();
        let closure = oracle::closure(8, affine.generators());
        assert_eq!(closure.len(), 42);
        assert_eq!(affine.order(), 42);
        assert_eq!(PermGroup::trivial(8).order(), 1);
        assert_eq!(
            PermGroup::new(vec![]).unwrap_err(),
            GroupError::NoGenerators
        );
    }

    #[test]
    fn degree_mismatch_rejected() {
        let a = Permutation::identity(4);
        let b = Permutation::identity(5);
        assert_eq!(
            PermGroup::new(vec![a, b]).unwrap_err(),
            GroupError::DomainMismatch { left: 4, right: 5 }
        );
    }

    #[test]
    fn membership() {
        let (l, g) = psl2(7);
        let w = l.perm_from_cycles("(0 inf)(1 6)(2 3)(4 5)").unwrap();
        assert!(g.contains(&w));
        let lam = l.perm_from_cycles("(0 inf)(1 3)(2 6)(4 5)").unwrap();
        assert!(!g.contains(&lam));
        assert!(!g.contains(&Permutation::identity(5)));
    }

    #[test]
    fn elements_are_sorted_and_complete() {
        let (_, g) = psl2(5);
        let elems = g.elements().unwrap();
        assert_eq!(elems.len(), 60);
        assert!(elems.windows(2).all(|w| w[0] < w[1]));
        let closure = oracle::closure(6, g.generators());
        assert!(elems.iter().all(|e| closure.contains(e)));
        let capped = g.clone().with_enumeration_cap(10);
        assert_eq!(
            capped.elements().unwrap_err(),
            GroupError::GroupTooLargeForEnumeration { order: 60, cap: 10 }
        );
    }

    #[test]
    fn transitivity() {
        let (l, g) = psl2(7);
        assert!(g.is_doubly_transitive());
        let t = PermGroup::new(vec![l.translation(l.field().one())]).unwrap();
        assert!(!t.is_transitive());
        assert_eq!(t.orbits(), vec![vec![0, 1, 2, 3, 4, 5, 6], vec![7]]);
    }

    #[test]
    fn stabilizers() {
        let (l, g) = psl2(7);
        assert_eq!(g.point_stabilizer(l.infinity()).order(), 21);
        assert_eq!(g.setwise_stabilizer(&[0, 7]).unwrap().order(), 6);
        let t = PermGroup::new(vec![l.translation(l.field().one())]).unwrap();
        assert_eq!(t.point_stabilizer(0).order(), 1);
        for pt in g.base() {
            assert_eq!(
                g.order(),
                g.orbit(pt).len() as u128 * g.point_stabilizer(pt).order()
            );
        }
    }

    #[test]
    fn bounded_build_gives_up_early() {
        let sym8 = PermGroup::new_bounded(
            vec![
                Permutation::parse_cycles(8, "(0 1 2 3 4 5 6 inf)").unwrap(),
                Permutation::parse_cycles(8, "(0 1)").unwrap(),
            ],
            168,
        )
        .unwrap();
        assert!(sym8.is_none());
        let (_, g) = psl2(7);
        let again = PermGroup::new_bounded(g.generators().to_vec(), 168)
            .unwrap()
            .unwrap();
        assert_eq!(again.order(), 168);
    }

    #[test]
    fn large_symmetric_group_order() {
        let n = 20;
        let cycle: Vec<usize> = (1..=n).map(|i| i % n).collect();
        let mut swap: Vec<usize> = (0..n).collect();
        swap.swap(0, 1);
        let g = PermGroup::new(vec![
            Permutation::from_images(&cycle).unwrap(),
            Permutation::from_images(&swap).unwrap(),
        ])
        .unwrap();
        assert_eq!(g.order(), (1..=20u128).product::<u128>());
    }
}
