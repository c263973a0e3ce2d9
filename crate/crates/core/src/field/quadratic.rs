use serde::Serialize;

use super::{is_prime, FieldError};

/// Squares and non-squares in `(Z/p)*`, both sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadraticClasses {
    pub p: u32,
    pub residues: Vec<u32>,
    pub non_residues: Vec<u32>,
}

impl QuadraticClasses {
    /// Whether a nonzero residue is a square. Zero is neither.
    pub fn is_residue(&self, x: u32) -> bool {
        self.residues.binary_search(&(x % self.p)).is_ok()
    }

    pub fn is_non_residue(&self, x: u32) -> bool {
        self.non_residues.binary_search(&(x % self.p)).is_ok()
    }

    pub fn minus_one_is_square(&self) -> bool {
        self.is_residue(self.p - 1)
    }
}

pub fn quadratic_classes(p: u32) -> Result<QuadraticClasses, FieldError> {
    if p == 2 || !is_prime(p as u64) {
        return Err(FieldError::NotOddPrime(p as u64));
    }
    let mut is_square = vec![false; p as usize];
    for a in 1..p as u64 {
        is_square[(a * a % p as u64) as usize] = true;
    }
    let (residues, non_residues) = (1..p).partition(|&x| is_square[x as usize]);
    Ok(QuadraticClasses {
        p,
        residues,
        non_residues,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn primes_to(n: u32) -> impl Iterator<Item = u32> {
        (3..=n).filter(|&p| is_prime(p as u64))
    }

    #[test]
    fn small_primes() {
        let c7 = quadratic_classes(7).unwrap();
        assert_eq!(c7.residues, vec![1, 2, 4]);
        assert_eq!(c7.non_residues, vec![3, 5, 6]);
        let c5 = quadratic_classes(5).unwrap();
        assert_eq!(c5.residues, vec![1, 4]);
        assert_eq!(c5.non_residues, vec![2, 3]);
        assert!(quadratic_classes(13).unwrap().is_residue(12));
    }

    #[test]
    fn rejects_non_odd_primes() {
        for n in [0, 1, 2, 9, 15] {
            assert_eq!(quadratic_classes(n), Err(FieldError::NotOddPrime(n as u64)));
        }
    }

    #[test]
    fn multiplication_respects_classes() {
        for p in primes_to(101) {
            let c = quadratic_classes(p).unwrap();
            assert_eq!(c.residues.len(), (p as usize - 1) / 2);
            assert_eq!(c.non_residues.len(), (p as usize - 1) / 2);
            let class = |x: u32| c.is_residue(x);
            for a in 1..p {
                for b in 1..p {
                    let prod = (a as u64 * b as u64 % p as u64) as u32;
                    assert_eq!(class(prod), class(a) == class(b), "p={p} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn minus_one_square_iff_one_mod_four() {
        for p in primes_to(101) {
            let c = quadratic_classes(p).unwrap();
            assert_eq!(c.minus_one_is_square(), p % 4 == 1, "p={p}");
        }
    }
}
