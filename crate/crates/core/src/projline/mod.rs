//! The projective line over a finite field and its permutations.
//!
//! Points are numbered by field element index, with infinity stored as the
//! last point `q`. Composition is right-to-left throughout the crate:
//! `a.compose(&b)` applies `b` first.

mod perm;

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::field::{Field, FieldElem, FieldError};

pub use perm::{Permutation, MAX_DEGREE};

/// A point of a projective line: a field element index, or `q` for infinity.
pub type Point = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("image sequence is not a bijection")]
    NotABijection,
    #[error("expected {expected} images, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("cannot parse cycle notation: {0}")]
    ParseError(String),
    #[error("point {0} appears in more than one cycle")]
    OverlappingCycles(usize),
    #[error("unknown point {0:?}")]
    UnknownPoint(String),
    #[error("permutations act on different point sets ({left} vs {right} points)")]
    DomainMismatch { left: usize, right: usize },
    #[error("scaling by zero is not a permutation")]
    ZeroScaling,
    #[error("Moebius map needs determinant 1")]
    NonUnitDeterminant,
    #[error("permutations on {0} points are not supported")]
    TooManyPoints(usize),
}

/// `F ∪ {∞}` for a finite field `F`.
#[derive(Debug, Clone)]
pub struct ProjLine {
    field: Arc<Field>,
}

impl ProjLine {
    pub fn new(field: Field) -> Self {
        ProjLine {
            field: Arc::new(field),
        }
    }

    pub fn from_shared(field: Arc<Field>) -> Self {
        ProjLine { field }
    }

    /// `Z/p ∪ {∞}`.
    pub fn prime(p: u32) -> Result<Self, FieldError> {
        Ok(ProjLine::new(Field::prime(p)?))
    }

    pub fn with_order(q: u64) -> Result<Self, FieldError> {
        Ok(ProjLine::new(Field::with_order(q)?))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn shared_field(&self) -> Arc<Field> {
        Arc::clone(&self.field)
    }

    pub fn size(&self) -> usize {
        self.field.order() as usize + 1
    }

    pub fn infinity(&self) -> Point {
        self.field.order() as usize
    }

    pub fn point(&self, e: FieldElem) -> Point {
        e.index() as usize
    }

    /// The field element at a finite point, `None` at infinity.
    pub fn elem(&self, pt: Point) -> Option<FieldElem> {
        (pt < self.infinity()).then(|| self.field.elem(pt as u32).expect("finite point"))
    }

    pub fn points(&self) -> std::ops::Range<Point> {
        0..self.size()
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.size())
    }

    pub fn perm_from_images(&self, images: &[usize]) -> Result<Permutation, PermError> {
        if images.len() != self.size() {
            return Err(PermError::WrongLength {
                expected: self.size(),
                got: images.len(),
            });
        }
        Permutation::from_images(images)
    }

    pub fn perm_from_cycles(&self, text: &str) -> Result<Permutation, PermError> {
        Permutation::parse_cycles(self.size(), text)
    }

    /// Tabulates a point map into a permutation.
    pub fn perm_from_fn(&self, f: impl Fn(Point) -> Point) -> Result<Permutation, PermError> {
        let images: Vec<usize> = self.points().map(f).collect();
        self.perm_from_images(&images)
    }

    /// Lifts a map on field elements that sends 0 and infinity to each other
    /// or fixes them, given the images of 0 and infinity explicitly.
    pub fn perm_from_elem_fn(
        &self,
        at_infinity: Point,
        f: impl Fn(FieldElem) -> Point,
    ) -> Result<Permutation, PermError> {
        self.perm_from_fn(|pt| match self.elem(pt) {
            Some(z) => f(z),
            None => at_infinity,
        })
    }

    /// `z -> z + a`, fixing infinity.
    pub fn translation(&self, a: FieldElem) -> Permutation {
        let f = &self.field;
        self.perm_from_elem_fn(self.infinity(), |z| self.point(f.add(z, a)))
            .expect("translations are bijective")
    }

    /// `z -> a z`, fixing 0 and infinity.
    pub fn scaling(&self, a: FieldElem) -> Result<Permutation, PermError> {
        if a.is_zero() {
            return Err(PermError::ZeroScaling);
        }
        let f = &self.field;
        Ok(self
            .perm_from_elem_fn(self.infinity(), |z| self.point(f.mul(a, z)))
            .expect("nonzero scalings are bijective"))
    }

    /// `z -> -1/z`.
    pub fn negative_reciprocal(&self) -> Permutation {
        let f = &self.field;
        let m = MoebiusMap::new(f, f.zero(), f.neg(f.one()), f.one(), f.zero()).expect("det = 1");
        self.moebius_perm(&m)
    }

    /// The permutation `z -> (az + b)/(cz + d)`.
    pub fn moebius_perm(&self, m: &MoebiusMap) -> Permutation {
        self.perm_from_fn(|pt| m.apply(&self.field, pt, self.infinity()))
            .expect("invertible Moebius maps are bijective")
    }
}

/// `z -> (az + b)/(cz + d)` with `ad - bc = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct MoebiusMap {
    pub a: FieldElem,
    pub b: FieldElem,
    pub c: FieldElem,
    pub d: FieldElem,
}

impl MoebiusMap {
    pub fn new(
        field: &Field,
        a: FieldElem,
        b: FieldElem,
        c: FieldElem,
        d: FieldElem,
    ) -> Result<Self, PermError> {
        let det = field.sub(field.mul(a, d), field.mul(b, c));
        if det != field.one() {
            return Err(PermError::NonUnitDeterminant);
        }
        Ok(MoebiusMap { a, b, c, d })
    }

    /// Matrix product `self · other`, which acts as `self ∘ other`.
    pub fn then_after(&self, field: &Field, other: &MoebiusMap) -> MoebiusMap {
        let (m, n) = (self, other);
        let dot = |x: FieldElem, y: FieldElem, z: FieldElem, w: FieldElem| {
            field.add(field.mul(x, y), field.mul(z, w))
        };
        MoebiusMap {
            a: dot(m.a, n.a, m.b, n.c),
            b: dot(m.a, n.b, m.b, n.d),
            c: dot(m.c, n.a, m.d, n.c),
            d: dot(m.c, n.b, m.d, n.d),
        }
    }

    pub fn negated(&self, field: &Field) -> MoebiusMap {
        MoebiusMap {
            a: field.neg(self.a),
            b: field.neg(self.b),
            c: field.neg(self.c),
            d: field.neg(self.d),
        }
    }

    fn apply(&self, field: &Field, pt: Point, infinity: Point) -> Point {
        if pt == infinity {
            return if self.c.is_zero() {
                infinity
            } else {
                field.div(self.a, self.c).expect("c != 0").index() as usize
            };
        }
        let z = field.elem(pt as u32).expect("finite point");
        let den = field.add(field.mul(self.c, z), self.d);
        if den.is_zero() {
            return infinity;
        }
        let num = field.add(field.mul(self.a, z), self.b);
        field.div(num, den).expect("den != 0").index() as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(p: u32) -> ProjLine {
        ProjLine::prime(p).unwrap()
    }

    #[test]
    fn images_validation() {
        let l = line(5);
        let id = l.perm_from_images(&[0, 1, 2, 3, 4, 5]).unwrap();
        assert!(id.is_identity());
        assert_eq!(
            l.perm_from_images(&[0, 0, 2, 3, 4, 5]),
            Err(PermError::NotABijection)
        );
        assert_eq!(
            l.perm_from_images(&[0, 1, 2]),
            Err(PermError::WrongLength {
                expected: 6,
                got: 3
            })
        );
    }

    #[test]
    fn cycle_notation() {
        let l = line(7);
        let lam = l.perm_from_cycles("(0 inf)(1 3)(2 6)(4 5)").unwrap();
        assert_eq!(lam.apply(0), 7);
        assert_eq!(lam.apply(7), 0);
        assert_eq!(lam.apply(1), 3);
        assert_eq!(lam.to_string(), "(0 inf)(1 3)(2 6)(4 5)");
        let from_images = l.perm_from_images(&[7, 3, 6, 1, 5, 4, 2, 0]).unwrap();
        assert_eq!(lam, from_images);

        let second = l.perm_from_cycles("(0 inf)(1 5)(2 3)(4 6)").unwrap();
        assert_eq!(second.to_string(), "(0 inf)(1 5)(2 3)(4 6)");

        let seven = l.perm_from_cycles("(0 1 2 3 4 5 6)").unwrap();
        assert_eq!(seven, l.translation(l.field().one()));
        assert!(l.perm_from_cycles("").unwrap().is_identity());
        assert!(l.perm_from_cycles("()").unwrap().is_identity());
        assert_eq!(l.identity().to_string(), "()");
    }

    #[test]
    fn cycle_notation_errors() {
        let l = line(7);
        assert_eq!(
            l.perm_from_cycles("(0 1)(1 2)"),
            Err(PermError::OverlappingCycles(1))
        );
        assert!(matches!(
            l.perm_from_cycles("(0 7)"),
            Err(PermError::UnknownPoint(_))
        ));
        assert!(matches!(
            l.perm_from_cycles("(0 x)"),
            Err(PermError::UnknownPoint(_))
        ));
        assert!(matches!(
            l.perm_from_cycles("0 1"),
            Err(PermError::ParseError(_))
        ));
        assert!(matches!(
            l.perm_from_cycles("(0 1"),
            Err(PermError::ParseError(_))
        ));
    }

    #[test]
    fn composition_convention() {
        let l = line(7);
        let f = l.field();
        let t1 = l.translation(f.from_int(1));
        let t2 = l.translation(f.from_int(2));
        assert_eq!(t1.compose(&t2).unwrap(), l.translation(f.from_int(3)));

        let s = l.negative_reciprocal();
        assert!(s.compose(&s).unwrap().is_identity());

        // apply b first, then a
        let sc = l.scaling(f.from_int(2)).unwrap();
        let composed = sc.compose(&t1).unwrap();
        for x in l.points() {
            assert_eq!(composed.apply(x), sc.apply(t1.apply(x)));
        }

        let l5 = line(5);
        let c = l5.perm_from_cycles("(0 1 2 3 4)").unwrap();
        assert_eq!(c.inverse().to_string(), "(0 4 3 2 1)");
        assert_eq!(
            c.compose(&l.identity()),
            Err(PermError::DomainMismatch { left: 6, right: 8 })
        );
    }

    #[test]
    fn cycles_fixed_points_order() {
        let l13 = line(13);
        let neg = l13.scaling(l13.field().from_int(-1)).unwrap();
        assert_eq!(neg.fixed_points(), vec![0, 13]);

        let l5 = line(5);
        let s = l5.negative_reciprocal();
        // -1/z mod 5: 1 -> 4, 2 -> 2, 3 -> 3, 4 -> 1
        assert_eq!(s.to_string(), "(0 inf)(1 4)");
        assert_eq!(s.fixed_points(), vec![2, 3]);
        assert_eq!(s.order(), 2);

        let id = line(7).identity();
        assert_eq!(id.fixed_points().len(), 8);
        assert_eq!(id.order(), 1);
    }

    #[test]
    fn moebius_images() {
        let l = line(7);
        let f = l.field();
        let (zero, one) = (f.zero(), f.one());
        let upper = MoebiusMap::new(f, one, one, zero, one).unwrap();
        assert_eq!(l.moebius_perm(&upper).to_string(), "(0 1 2 3 4 5 6)");

        let w = MoebiusMap::new(f, zero, f.neg(one), one, zero).unwrap();
        // oracle: evaluate -1/z at every finite point mod 7
        let expect: Vec<usize> = (0..8)
            .map(|z| match z {
                0 => 7,
                7 => 0,
                z => (1..7).find(|y| (y * z + 1) % 7 == 0).unwrap(),
            })
            .collect();
        assert_eq!(l.moebius_perm(&w), l.perm_from_images(&expect).unwrap());
        assert_eq!(l.moebius_perm(&w).to_string(), "(0 inf)(1 6)(2 3)(4 5)");

        let two = f.from_int(2);
        let diag = MoebiusMap::new(f, two, zero, zero, f.inv(two).unwrap()).unwrap();
        assert_eq!(l.moebius_perm(&diag), l.scaling(f.from_int(4)).unwrap());

        assert_eq!(
            MoebiusMap::new(f, two, zero, zero, two),
            Err(PermError::NonUnitDeterminant)
        );
    }

    #[test]
    fn translations_and_scalings() {
        let l = line(7);
        let f = l.field();
        assert_eq!(l.translation(f.one()).to_string(), "(0 1 2 3 4 5 6)");
        assert!(l.scaling(f.one()).unwrap().is_identity());
        assert_eq!(l.scaling(f.from_int(3)).unwrap().order(), 6);
        assert_eq!(l.scaling(f.zero()), Err(PermError::ZeroScaling));
    }

    #[test]
    fn conjugation_and_powers() {
        let l = line(11);
        let f = l.field();
        let t = l.translation(f.one());
        let s = l.scaling(f.from_int(3)).unwrap();
        // s t s^-1 = translation by 3
        assert_eq!(t.conjugate_by(&s), l.translation(f.from_int(3)));
        assert_eq!(t.pow(11), l.identity());
        assert_eq!(t.pow(-1), t.inverse());
        assert_eq!(t.pow(4), l.translation(f.from_int(4)));
    }

    #[test]
    fn extension_field_line() {
        let l = ProjLine::with_order(4).unwrap();
        assert_eq!(l.size(), 5);
        let f = l.field();
        let t = l.translation(f.one());
        // characteristic 2: translations are involutions
        assert_eq!(t.order(), 2);
        assert_eq!(l.negative_reciprocal().fixed_points().len(), 1);
    }
}
