//! GF(8) relabeled as the projective line `Z/7 ∪ {∞}`.
//!
//! With `ζ` a root of the chosen cubic, `0 ↦ ∞` and `ζ^i ↦ i`. Under this
//! bijection multiplication by `ζ` becomes `z -> z + 1` and squaring becomes
//! `z -> 2z`.

use super::{Field, FieldElem, FieldError, FieldSpec};
use crate::projline::{Permutation, Point, ProjLine};

/// The two irreducible cubics over `Z/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gf8Cubic {
    /// `ζ³ + ζ + 1 = 0`
    XCubedPlusXPlusOne,
    /// `ζ³ + ζ² + 1 = 0`
    XCubedPlusXSquaredPlusOne,
}

impl Gf8Cubic {
    pub fn modulus(self) -> [u32; 4] {
        match self {
            Gf8Cubic::XCubedPlusXPlusOne => [1, 1, 0, 1],
            Gf8Cubic::XCubedPlusXSquaredPlusOne => [1, 0, 1, 1],
        }
    }
}

#[derive(Debug, Clone)]
pub struct Gf8Labeling {
    field: Field,
    line: ProjLine,
    zeta: FieldElem,
    /// field element index -> point
    point_of: Vec<Point>,
    /// point -> field element
    elem_of: Vec<FieldElem>,
}

pub fn gf8_labeling(cubic: Gf8Cubic) -> Gf8Labeling {
    gf8_labeling_with_modulus(&cubic.modulus()).expect("both cubics are irreducible")
}

/// Labeling for an arbitrary monic cubic over `Z/2`, low degree first.
pub fn gf8_labeling_with_modulus(modulus: &[u32]) -> Result<Gf8Labeling, FieldError> {
    if modulus.len() != 4 {
        return Err(FieldError::BadModulus);
    }
    let field = Field::new(FieldSpec {
        p: 2,
        k: 3,
        modulus: modulus.to_vec(),
    })?;
    let line = ProjLine::prime(7).expect("7 is prime");
    // the residue class of x, i.e. a root of the modulus
    let zeta = field.elem(2)?;

    let mut point_of = vec![line.infinity(); 8];
    let mut elem_of = vec![FieldElem::ZERO; 8];
    let mut x = field.one();
    for i in 0..7 {
        point_of[x.index() as usize] = i;
        elem_of[i] = x;
        x = field.mul(x, zeta);
    }
    assert_eq!(x, field.one(), "zeta has order 7 in GF(8)*");

    let labeling = Gf8Labeling {
        field,
        line,
        zeta,
        point_of,
        elem_of,
    };
    debug_assert_eq!(
        labeling.mul_zeta(),
        labeling.line.translation(labeling.line.field().one())
    );
    debug_assert_eq!(
        labeling.square(),
        labeling
            .line
            .scaling(labeling.line.field().from_int(2))
            .unwrap()
    );
    Ok(labeling)
}

impl Gf8Labeling {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn line(&self) -> &ProjLine {
        &self.line
    }

    pub fn zeta(&self) -> FieldElem {
        self.zeta
    }

    pub fn point_of(&self, x: FieldElem) -> Point {
        self.point_of[x.index() as usize]
    }

    pub fn elem_of(&self, pt: Point) -> FieldElem {
        self.elem_of[pt]
    }

    /// Transports a bijection of GF(8) to a permutation of `Z/7 ∪ {∞}`.
    pub fn transport(&self, map: impl Fn(&Field, FieldElem) -> FieldElem) -> Permutation {
        self.line
            .perm_from_fn(|pt| self.point_of(map(&self.field, self.elem_of(pt))))
            .expect("map must be a bijection of GF(8)")
    }

    /// The map of GF(8) a permutation of the line corresponds to, as a table
    /// indexed by field element index.
    pub fn pull_back(&self, perm: &Permutation) -> Vec<FieldElem> {
        self.field
            .elements()
            .map(|x| self.elem_of(perm.apply(self.point_of(x))))
            .collect()
    }

    /// `x -> x + 1`.
    pub fn add_one(&self) -> Permutation {
        self.transport(|f, x| f.add(x, f.one()))
    }

    /// `x -> ζx`.
    pub fn mul_zeta(&self) -> Permutation {
        let zeta = self.zeta;
        self.transport(move |f, x| f.mul(zeta, x))
    }

    /// `x -> x²`.
    pub fn square(&self) -> Permutation {
        self.transport(|f, x| f.mul(x, x))
    }

    /// Generators of the semilinear affine group of GF(8), transported.
    pub fn semilinear_affine_generators(&self) -> Vec<Permutation> {
        vec![self.add_one(), self.mul_zeta(), self.square()]
    }
}
