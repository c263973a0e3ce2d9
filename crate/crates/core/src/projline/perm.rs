use std::fmt;

use serde::{Serialize, Serializer};

use super::PermError;

/// Largest degree a [`Permutation`] can have.
pub const MAX_DEGREE: usize = 256;

/// A bijection of `{0, .., n-1}` stored as its image sequence.
///
/// The last point, `n - 1`, plays the role of infinity when the permutation
/// is printed or parsed in cycle notation.
///
/// Ordering is lexicographic on image sequences.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= MAX_DEGREE);
        Permutation {
            images: (0..degree).map(|i| i as u8).collect(),
        }
    }

    pub fn from_images(images: &[usize]) -> Result<Self, PermError> {
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(PermError::TooManyPoints(n));
        }
        let mut seen = vec![false; n];
        for &x in images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(PermError::NotABijection);
            }
        }
        Ok(Permutation {
            images: images.iter().map(|&x| x as u8).collect(),
        })
    }

    /// Builds a permutation from disjoint cycles; unlisted points are fixed.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        if degree > MAX_DEGREE {
            return Err(PermError::TooManyPoints(degree));
        }
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(PermError::UnknownPoint(x.to_string()));
                }
                if std::mem::replace(&mut used[x], true) {
                    return Err(PermError::OverlappingCycles(x));
                }
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Permutation::from_images(&images)
    }

    /// Parses cycle notation such as `"(0 inf)(1 3)(2 6)(4 5)"`.
    ///
    /// Tokens are decimal points or `inf` (also `∞`) for point `degree - 1`.
    /// An empty string or `()` is the identity.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self, PermError> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| PermError::ParseError(format!("expected '(' at {rest:?}")))?;
            let close = body
                .find(')')
                .ok_or_else(|| PermError::ParseError("unclosed cycle".into()))?;
            let cycle = body[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| parse_point(degree, t))
                .collect::<Result<Vec<_>, _>>()?;
            cycles.push(cycle);
            rest = body[close + 1..].trim_start();
        }
        Permutation::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    pub(crate) fn image_bytes(&self) -> &[u8] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| i == x as usize)
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DomainMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.after(other))
    }

    /// Unchecked `self ∘ other` for same-degree permutations.
    #[inline]
    pub(crate) fn after(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other
                .images
                .iter()
                .map(|&x| self.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u8; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u8;
        }
        Permutation { images }
    }

    /// `g ∘ self ∘ g⁻¹`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        let mut images = vec![0u8; self.degree()];
        for i in 0..self.degree() {
            images[g.apply(i)] = g.images[self.apply(i)];
        }
        Permutation { images }
    }

    pub fn pow(&self, e: i64) -> Permutation {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.after(&sq);
            }
            sq = sq.after(&sq);
            e >>= 1;
        }
        acc
    }

    /// Nontrivial cycles, each rotated to start at its smallest point and
    /// sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Lengths of all cycles, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lens.extend(std::iter::repeat_n(1, self.fixed_points().len()));
        lens.sort_unstable();
        lens
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&i| self.apply(i) == i).collect()
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        (0..self.degree()).find(|&i| self.apply(i) != i)
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }
}

fn parse_point(degree: usize, token: &str) -> Result<usize, PermError> {
    if token == "inf" || token == "∞" {
        return degree
            .checked_sub(1)
            .ok_or_else(|| PermError::UnknownPoint(token.into()));
    }
    match token.parse::<usize>() {
        Ok(x) if x + 1 < degree => Ok(x),
        _ => Err(PermError::UnknownPoint(token.into())),
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        let inf = self.degree() - 1;
        for cycle in cycles {
            f.write_str("(")?;
            for (i, &x) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                if x == inf {
                    f.write_str("inf")?;
                } else {
                    write!(f, "{x}")?;
                }
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
