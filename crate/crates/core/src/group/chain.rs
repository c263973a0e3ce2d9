//! Deterministic Schreier-Sims.

use crate::projline::Permutation;

#[derive(Debug, Clone)]
pub(crate) struct Level {
    pub base_point: usize,
    /// Strong generators fixing every earlier base point.
    pub gens: Vec<Permutation>,
    /// `transversal[x]` maps the base point to `x`, for `x` in the orbit.
    pub transversal: Vec<Option<Permutation>>,
    pub orbit: Vec<usize>,
}

impl Level {
    fn new(base_point: usize, degree: usize) -> Self {
        let mut level = Level {
            base_point,
            gens: Vec::new(),
            transversal: Vec::new(),
            orbit: Vec::new(),
        };
        level.rebuild_orbit(degree);
        level
    }

    fn rebuild_orbit(&mut self, degree: usize) {
        let mut transversal = vec![None; degree];
        transversal[self.base_point] = Some(Permutation::identity(degree));
        let mut orbit = vec![self.base_point];
        let mut head = 0;
        while head < orbit.len() {
            let y = orbit[head];
            head += 1;
            let uy = transversal[y]
                .clone()
                .expect("orbit point has a representative");
            for s in &self.gens {
                let z = s.apply(y);
                if transversal[z].is_none() {
                    transversal[z] = Some(s.after(&uy));
                    orbit.push(z);
                }
            }
        }
        self.transversal = transversal;
        self.orbit = orbit;
    }
}

/// Stabilizer chain with base and strong generating set.
#[derive(Debug, Clone)]
pub(crate) struct StabChain {
    pub degree: usize,
    pub levels: Vec<Level>,
}

/// Returned when a bounded build proves the group is larger than allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct OrderExceeded;

impl StabChain {
    pub fn order(&self) -> u128 {
        self.levels
            .iter()
            .fold(1u128, |acc, l| acc.saturating_mul(l.orbit.len() as u128))
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    /// Sifts `g` starting at level `from`. Returns the residue and the level
    /// where sifting stopped (`levels.len()` if it ran through).
    pub fn sift(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (m, level) in self.levels.iter().enumerate().skip(from) {
            let beta = h.apply(level.base_point);
            match &level.transversal[beta] {
                None => return (h, m),
                Some(u) => h = u.inverse().after(&h),
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && {
            let (h, m) = self.sift(g, 0);
            m == self.levels.len() && h.is_identity()
        }
    }

    /// Builds a chain for `<gens>` whose base starts with `base_prefix`.
    /// Gives up once the group is provably larger than `bound`.
    pub fn build(
        degree: usize,
        gens: &[Permutation],
        base_prefix: &[usize],
        bound: Option<u128>,
    ) -> Result<StabChain, OrderExceeded> {
        let mut chain = StabChain {
            degree,
            levels: base_prefix.iter().map(|&b| Level::new(b, degree)).collect(),
        };
        let mut strong: Vec<Permutation> = Vec::new();
        for g in gens {
            if !g.is_identity() && !strong.contains(g) {
                strong.push(g.clone());
            }
        }
        for g in &strong {
            if chain
                .levels
                .iter()
                .all(|l| g.apply(l.base_point) == l.base_point)
            {
                let b = g.smallest_moved_point().expect("non-identity");
                chain.levels.push(Level::new(b, degree));
            }
        }
        for i in 0..chain.levels.len() {
            let fixed: Vec<usize> = chain.levels[..i].iter().map(|l| l.base_point).collect();
            chain.levels[i].gens = strong
                .iter()
                .filter(|g| fixed.iter().all(|&b| g.apply(b) == b))
                .cloned()
                .collect();
            chain.levels[i].rebuild_orbit(degree);
        }
        chain.check_bound(bound)?;

        let mut i = chain.levels.len() as isize - 1;
        while i >= 0 {
            let level = i as usize;
            match chain.find_missing_schreier_generator(level) {
                None => i -= 1,
                Some((h, j)) => {
                    if j == chain.levels.len() {
                        let b = h.smallest_moved_point().expect("non-identity residue");
                        chain.levels.push(Level::new(b, degree));
                    }
                    for l in level + 1..=j {
                        chain.levels[l].gens.push(h.clone());
                        chain.levels[l].rebuild_orbit(degree);
                    }
                    chain.check_bound(bound)?;
                    i = j as isize;
                }
            }
        }
        Ok(chain)
    }

    fn check_bound(&self, bound: Option<u128>) -> Result<(), OrderExceeded> {
        match bound {
            Some(b) if self.order() > b => Err(OrderExceeded),
            _ => Ok(()),
        }
    }

    /// First Schreier generator of `level` that does not sift through the
    /// levels below it, with the residue and the level where it stopped.
    fn find_missing_schreier_generator(&self, level: usize) -> Option<(Permutation, usize)> {
        let lv = &self.levels[level];
        for &beta in &lv.orbit {
            let u_beta = lv.transversal[beta].as_ref().expect("orbit point");
            for x in &lv.gens {
                let gamma = x.apply(beta);
                let u_gamma = lv.transversal[gamma].as_ref().expect("orbit is closed");
                let schreier = u_gamma.inverse().after(&x.after(u_beta));
                if schreier.is_identity() {
                    continue;
                }
                let (h, j) = self.sift(&schreier, level + 1);
                if !h.is_identity() {
                    return Some((h, j));
                }
            }
        }
        None
    }

    /// Every element, as products of transversal representatives.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let reps: Vec<&Permutation> = level
                .orbit
                .iter()
                .map(|&x| level.transversal[x].as_ref().expect("orbit point"))
                .collect();
            out = reps
                .iter()
                .flat_map(|u| out.iter().map(move |g| u.after(g)))
                .collect();
        }
        out
    }
}
