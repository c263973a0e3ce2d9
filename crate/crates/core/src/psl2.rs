//! `SL(2, q)` as matrices and `PSL(2, q)` as a permutation group on the
//! projective line, plus witness-producing simplicity certificates.
//!
//! A certificate takes every normal subgroup `N` of `SL(2, q)` generated by a
//! non-scalar conjugacy class and shows, by explicit matrices, that
//! `N` contains the lower unitriangular group `P`, hence its transpose `P'`,
//! hence everything.

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::field::{gcd, is_prime, prime_power, Field, FieldElem, FieldError};
use crate::group::PermGroup;
use crate::projline::{MoebiusMap, Permutation, ProjLine};

/// Largest field order with full matrix enumeration.
pub const MAX_MATRIX_FIELD: u64 = 13;
/// Largest prime for the two-generator permutation construction.
pub const MAX_PRIME_FIELD: u64 = 19;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Psl2Error {
    #[error("field of order {0} is outside the supported range")]
    FieldTooLarge(u64),
    #[error("field of order {0} is too small: it needs more than 3 elements")]
    FieldTooSmall(u64),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("subgroup contains only scalar matrices")]
    OnlyScalars,
    #[error("subgroup is not normal in SL(2, q)")]
    NotNormal,
    #[error("no factorisation target = u * B with u lower unitriangular and B in the subgroup")]
    DecompositionFails,
    #[error("matrix does not have determinant 1")]
    NotInSl2,
}

/// A 2x2 matrix `(a b; c d)` over a finite field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Mat2 {
    pub a: FieldElem,
    pub b: FieldElem,
    pub c: FieldElem,
    pub d: FieldElem,
}

impl Mat2 {
    pub fn new(a: FieldElem, b: FieldElem, c: FieldElem, d: FieldElem) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Mat2::new(
            FieldElem::ONE,
            FieldElem::ZERO,
            FieldElem::ZERO,
            FieldElem::ONE,
        )
    }

    /// `(1 0; r 1)`, an element of `P`.
    pub fn lower(r: FieldElem) -> Self {
        Mat2::new(FieldElem::ONE, FieldElem::ZERO, r, FieldElem::ONE)
    }

    /// `(1 r; 0 1)`, an element of `P'`.
    pub fn upper(r: FieldElem) -> Self {
        Mat2::new(FieldElem::ONE, r, FieldElem::ZERO, FieldElem::ONE)
    }

    pub fn diag(a: FieldElem, d: FieldElem) -> Self {
        Mat2::new(a, FieldElem::ZERO, FieldElem::ZERO, d)
    }

    pub fn det(&self, f: &Field) -> FieldElem {
        f.sub(f.mul(self.a, self.d), f.mul(self.b, self.c))
    }

    pub fn mul(&self, f: &Field, o: &Mat2) -> Mat2 {
        let dot = |x, y, z, w| f.add(f.mul(x, y), f.mul(z, w));
        Mat2 {
            a: dot(self.a, o.a, self.b, o.c),
            b: dot(self.a, o.b, self.b, o.d),
            c: dot(self.c, o.a, self.d, o.c),
            d: dot(self.c, o.b, self.d, o.d),
        }
    }

    /// Inverse of a determinant-1 matrix.
    pub fn inverse_sl2(&self, f: &Field) -> Mat2 {
        Mat2::new(self.d, f.neg(self.b), f.neg(self.c), self.a)
    }

    /// `g · self · g⁻¹` for `g` in `SL(2, q)`.
    pub fn conjugate_by(&self, f: &Field, g: &Mat2) -> Mat2 {
        g.mul(f, self).mul(f, &g.inverse_sl2(f))
    }

    pub fn is_scalar(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d
    }

    pub fn is_lower_unitriangular(&self) -> bool {
        self.a == FieldElem::ONE && self.b.is_zero() && self.d == FieldElem::ONE
    }

    pub fn as_moebius(&self, f: &Field) -> Result<MoebiusMap, Psl2Error> {
        MoebiusMap::new(f, self.a, self.b, self.c, self.d).map_err(|_| Psl2Error::NotInSl2)
    }
}

pub fn sl2_order(q: u64) -> u64 {
    q * (q * q - 1)
}

pub fn psl2_order(q: u64) -> u64 {
    sl2_order(q) / gcd(2, (q - 1) as u32) as u64
}

/// `SL(2, q)` with its full matrix list.
#[derive(Debug, Clone)]
pub struct Sl2 {
    line: ProjLine,
    /// Sorted.
    elements: Vec<Mat2>,
}

pub fn sl2_group(q: u64) -> Result<Sl2, Psl2Error> {
    if q > MAX_MATRIX_FIELD {
        return Err(Psl2Error::FieldTooLarge(q));
    }
    let line = ProjLine::with_order(q)?;
    let f = line.field();
    let mut elements = Vec::with_capacity(sl2_order(q) as usize);
    for a in f.elements() {
        for b in f.elements() {
            for c in f.elements() {
                for d in f.elements() {
                    let m = Mat2::new(a, b, c, d);
                    if m.det(f) == f.one() {
                        elements.push(m);
                    }
                }
            }
        }
    }
    Ok(Sl2 { line, elements })
}

/// The permutation group `PSL(2, q)` on the `q + 1` points of the line.
///
/// Primes up to 19 use `<z -> z + 1, z -> -1/z>`; other prime powers up to
/// 13 use the Moebius images of the unitriangular groups.
pub fn psl2_perm_group(q: u64) -> Result<PermGroup, Psl2Error> {
    let (_, k) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
    if k == 1 && is_prime(q) {
        if q > MAX_PRIME_FIELD {
            return Err(Psl2Error::FieldTooLarge(q));
        }
        let line = ProjLine::with_order(q)?;
        let gens = vec![
            line.translation(line.field().one()),
            line.negative_reciprocal(),
        ];
        return Ok(PermGroup::new(gens).expect("nonempty"));
    }
    if q > MAX_MATRIX_FIELD {
        return Err(Psl2Error::FieldTooLarge(q));
    }
    let line = ProjLine::with_order(q)?;
    Ok(PermGroup::new(unitriangular_images(&line)).expect("nonempty"))
}

fn unitriangular_images(line: &ProjLine) -> Vec<Permutation> {
    let f = line.field();
    f.nonzero()
        .flat_map(|r| [Mat2::upper(r), Mat2::lower(r)])
        .map(|m| line.moebius_perm(&m.as_moebius(f).expect("unitriangular")))
        .collect()
}

/// A subgroup of `SL(2, q)` stored as its sorted element set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixSubgroup {
    elements: BTreeSet<Mat2>,
}

impl MatrixSubgroup {
    pub fn contains(&self, m: &Mat2) -> bool {
        self.elements.contains(m)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Mat2> {
        self.elements.iter()
    }
}

impl Sl2 {
    pub fn line(&self) -> &ProjLine {
        &self.line
    }

    pub fn field(&self) -> &Field {
        self.line.field()
    }

    pub fn shared_field(&self) -> Arc<Field> {
        self.line.shared_field()
    }

    pub fn q(&self) -> u64 {
        self.field().order() as u64
    }

    pub fn matrices(&self) -> &[Mat2] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, m: &Mat2) -> bool {
        m.det(self.field()) == self.field().one()
    }

    /// `P`: the lower unitriangular matrices.
    pub fn lower_group(&self) -> Vec<Mat2> {
        self.field().elements().map(Mat2::lower).collect()
    }

    /// `P'`: the upper unitriangular matrices.
    pub fn upper_group(&self) -> Vec<Mat2> {
        self.field().elements().map(Mat2::upper).collect()
    }

    /// `P ∪ P'`, which generates the group.
    pub fn generators(&self) -> Vec<Mat2> {
        let f = self.field();
        f.nonzero()
            .flat_map(|r| [Mat2::lower(r), Mat2::upper(r)])
            .collect()
    }

    /// The scalar matrices of determinant 1.
    pub fn center(&self) -> Vec<Mat2> {
        self.elements
            .iter()
            .copied()
            .filter(Mat2::is_scalar)
            .collect()
    }

    /// The subgroup generated by `gens`, by breadth-first closure.
    pub fn subgroup(&self, gens: &[Mat2]) -> MatrixSubgroup {
        let f = self.field();
        let mut elements = BTreeSet::from([Mat2::identity()]);
        let mut queue = VecDeque::from([Mat2::identity()]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = g.mul(f, &x);
                if elements.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        MatrixSubgroup { elements }
    }

    pub fn conjugacy_class(&self, m: &Mat2) -> Vec<Mat2> {
        let f = self.field();
        let gens = self.generators();
        let mut seen = BTreeSet::from([*m]);
        let mut queue = VecDeque::from([*m]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = x.conjugate_by(f, g);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Conjugacy classes in order of their smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<Mat2>> {
        let mut done = BTreeSet::new();
        let mut classes = Vec::new();
        for m in &self.elements {
            if !done.contains(m) {
                let class = self.conjugacy_class(m);
                done.extend(class.iter().copied());
                classes.push(class);
            }
        }
        classes
    }

    /// Smallest normal subgroup containing `seeds`.
    pub fn normal_closure(&self, seeds: &[Mat2]) -> MatrixSubgroup {
        let mut gens = BTreeSet::new();
        for s in seeds {
            gens.extend(self.conjugacy_class(s));
        }
        self.subgroup(&gens.into_iter().collect::<Vec<_>>())
    }

    pub fn is_normal(&self, n: &MatrixSubgroup) -> bool {
        let f = self.field();
        let gens = self.generators();
        n.iter()
            .all(|x| gens.iter().all(|g| n.contains(&x.conjugate_by(f, g))))
    }

    pub fn to_perm(&self, m: &Mat2) -> Result<Permutation, Psl2Error> {
        Ok(self.line.moebius_perm(&m.as_moebius(self.field())?))
    }

    /// Image of the whole group on the projective line.
    pub fn perm_image(&self) -> PermGroup {
        PermGroup::new(unitriangular_images(&self.line)).expect("nonempty")
    }
}

/// An element of `n` with nonzero upper-right entry.
///
/// When every element has `b = 0` the subgroup is made of upper triangular
/// matrices, and normality forces it to be diagonal; a non-scalar diagonal
/// `(a 0; 0 d)` conjugated by `(1 1; 0 1)` has `b = d - a != 0`.
pub fn upper_entry_witness(sl2: &Sl2, n: &MatrixSubgroup) -> Result<(Mat2, bool), Psl2Error> {
    if !sl2.is_normal(n) {
        return Err(Psl2Error::NotNormal);
    }
    if n.iter().all(Mat2::is_scalar) {
        return Err(Psl2Error::OnlyScalars);
    }
    if let Some(m) = n.iter().find(|m| !m.b.is_zero()) {
        return Ok((*m, false));
    }
    let f = sl2.field();
    let diag = n
        .iter()
        .find(|m| !m.is_scalar())
        .expect("non-scalar element exists");
    let conj = diag.conjugate_by(f, &Mat2::upper(f.one()));
    debug_assert!(!conj.b.is_zero() && n.contains(&conj));
    Ok((conj, true))
}

/// Writes `target = u · B` with `u` lower unitriangular and `B` in `n`,
/// scanning the `q` choices of `u`.
pub fn lower_times_member(
    sl2: &Sl2,
    target: &Mat2,
    n: &MatrixSubgroup,
) -> Result<(Mat2, Mat2), Psl2Error> {
    let f = sl2.field();
    if !sl2.contains(target) {
        return Err(Psl2Error::NotInSl2);
    }
    for r in f.elements() {
        let u = Mat2::lower(r);
        let b = u.inverse_sl2(f).mul(f, target);
        if n.contains(&b) {
            return Ok((u, b));
        }
    }
    Err(Psl2Error::DecompositionFails)
}

/// Certificate for one normal subgroup generated by a non-scalar class.
#[derive(Debug, Clone, Serialize)]
pub struct ClassCertificate {
    pub representative: Mat2,
    pub class_size: usize,
    pub closure_order: usize,
    /// Element of the closure with nonzero upper-right entry.
    pub upper_entry_witness: Mat2,
    pub witness_by_conjugation: bool,
    /// `a ∉ {0, 1, -1}` and `d = a⁻¹`.
    pub a: FieldElem,
    pub d: FieldElem,
    /// `diag(a, d) = (1 0; -r 1) · B`.
    pub r: FieldElem,
    pub lower_factor: Mat2,
    pub member: Mat2,
    /// `(x, y)` with `(A B A⁻¹) B⁻¹ = (1 0; y 1)` for `A = (1 0; x 1)`.
    pub commutators: Vec<(FieldElem, FieldElem)>,
    pub contains_lower: bool,
    pub contains_upper: bool,
    pub is_whole_group: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SimplicityCertificate {
    pub q: u64,
    pub sl2_order: usize,
    pub psl2_order: u64,
    pub classes: Vec<ClassCertificate>,
    /// Every non-scalar normal closure is `SL(2, q)`, so `PSL(2, q)` is simple.
    pub verdict: bool,
}

/// Certifies that every normal subgroup of `SL(2, q)` containing a
/// non-scalar matrix is the whole group.
pub fn certify_simplicity(q: u64) -> Result<SimplicityCertificate, Psl2Error> {
    if q <= 3 {
        return Err(Psl2Error::FieldTooSmall(q));
    }
    let sl2 = sl2_group(q)?;
    let f = sl2.field();
    let neg_one = f.neg(f.one());
    let a = f
        .nonzero()
        .find(|&x| x != f.one() && x != neg_one)
        .expect("q > 3");
    let d = f.inv(a)?;
    let diag = Mat2::diag(a, d);
    let lower = sl2.lower_group();
    let upper = sl2.upper_group();
    let swap = Mat2::new(f.zero(), f.one(), neg_one, f.zero());

    let mut classes = Vec::new();
    for class in sl2.conjugacy_classes() {
        let rep = class[0];
        if rep.is_scalar() {
            continue;
        }
        let n = sl2.normal_closure(&[rep]);
        let (witness, by_conj) = upper_entry_witness(&sl2, &n)?;
        let (u, member) = lower_times_member(&sl2, &diag, &n)?;
        let r = f.neg(u.c);
        let member_inv = member.inverse_sl2(f);
        let commutators: Vec<(FieldElem, FieldElem)> = lower
            .iter()
            .map(|am| {
                let comm = member.conjugate_by(f, am).mul(f, &member_inv);
                debug_assert!(comm.is_lower_unitriangular());
                (am.c, comm.c)
            })
            .collect();
        let images: BTreeSet<FieldElem> = commutators.iter().map(|&(_, y)| y).collect();
        let contains_lower = images.len() == q as usize
            && commutators
                .iter()
                .all(|&(_, y)| n.contains(&Mat2::lower(y)));
        // P' = w P w⁻¹ with w = (0 1; -1 0)
        let contains_upper = contains_lower
            && lower.iter().all(|m| {
                let c = m.conjugate_by(f, &swap);
                upper.contains(&c) && n.contains(&c)
            });
        classes.push(ClassCertificate {
            representative: rep,
            class_size: class.len(),
            closure_order: n.order(),
            upper_entry_witness: witness,
            witness_by_conjugation: by_conj,
            a,
            d,
            r,
            lower_factor: u,
            member,
            commutators,
            contains_lower,
            contains_upper,
            is_whole_group: contains_upper && n.order() == sl2.order(),
        });
    }
    let generated = sl2.subgroup(&sl2.generators()).order() == sl2.order();
    let verdict = generated && classes.iter().all(|c| c.is_whole_group);
    Ok(SimplicityCertificate {
        q,
        sl2_order: sl2.order(),
        psl2_order: psl2_order(q),
        classes,
        verdict,
    })
}

impl SimplicityCertificate {
    /// Recomputes every recorded matrix identity.
    pub fn reverify(&self) -> bool {
        let Ok(f) = Field::with_order(self.q) else {
            return false;
        };
        let one = f.one();
        let all_y: BTreeSet<FieldElem> = f.elements().collect();
        self.classes.iter().all(|c| {
            let diag = Mat2::diag(c.a, c.d);
            let member_inv = c.member.inverse_sl2(&f);
            let shape = c.member == Mat2::new(c.a, f.zero(), f.mul(c.r, c.a), c.d);
            let factor = c.lower_factor == Mat2::lower(f.neg(c.r))
                && c.lower_factor.mul(&f, &c.member) == diag;
            let comms = c.commutators.iter().all(|&(x, y)| {
                let am = Mat2::lower(x);
                c.member.conjugate_by(&f, &am).mul(&f, &member_inv) == Mat2::lower(y)
                    // (1 0; x(1 - d²) 1)
                    && y == f.mul(x, f.sub(one, f.mul(c.d, c.d)))
            });
            let onto = c
                .commutators
                .iter()
                .map(|&(_, y)| y)
                .collect::<BTreeSet<_>>()
                == all_y;
            c.a != one
                && c.a != f.neg(one)
                && f.mul(c.a, c.d) == one
                && !c.upper_entry_witness.b.is_zero()
                && c.upper_entry_witness.det(&f) == one
                && c.member.det(&f) == one
                && shape
                && factor
                && comms
                && onto
                && c.is_whole_group == (c.closure_order == self.sl2_order)
        }) && self.verdict == self.classes.iter().all(|c| c.is_whole_group)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_orders() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13] {
            let sl2 = sl2_group(q).unwrap();
            assert_eq!(sl2.order() as u64, sl2_order(q), "q={q}");
            assert_eq!(sl2.perm_image().order(), psl2_order(q) as u128, "q={q}");
            assert_eq!(psl2_perm_group(q).unwrap().order(), psl2_order(q) as u128);
        }
        assert_eq!(sl2_group(7).unwrap().order(), 336);
        assert_eq!(psl2_order(7), 168);
        assert_eq!(psl2_order(8), 504);
        assert_eq!(psl2_order(2), 6);
        assert_eq!(sl2_group(16).unwrap_err(), Psl2Error::FieldTooLarge(16));
    }

    #[test]
    fn prime_two_generator_path() {
        for p in [3u64, 5, 7, 11, 13, 17, 19] {
            assert_eq!(
                psl2_perm_group(p).unwrap().order(),
                ((p * p * p - p) / 2) as u128
            );
        }
        assert_eq!(psl2_perm_group(4).unwrap().order(), 60);
        assert_eq!(
            psl2_perm_group(23).unwrap_err(),
            Psl2Error::FieldTooLarge(23)
        );
        assert!(matches!(
            psl2_perm_group(6),
            Err(Psl2Error::Field(FieldError::NotPrimePower(6)))
        ));
    }

    #[test]
    fn kernel_is_plus_minus_identity() {
        let sl2 = sl2_group(7).unwrap();
        let f = sl2.field();
        for m in sl2.matrices() {
            let neg = Mat2::new(f.neg(m.a), f.neg(m.b), f.neg(m.c), f.neg(m.d));
            assert_eq!(sl2.to_perm(m).unwrap(), sl2.to_perm(&neg).unwrap());
        }
        let kernel: Vec<&Mat2> = sl2
            .matrices()
            .iter()
            .filter(|m| sl2.to_perm(m).unwrap().is_identity())
            .collect();
        assert_eq!(kernel.len(), 2);
    }

    #[test]
    fn unitriangular_groups_generate() {
        for q in [4u64, 5, 9] {
            let sl2 = sl2_group(q).unwrap();
            assert_eq!(sl2.lower_group().len() as u64, q);
            assert_eq!(sl2.upper_group().len() as u64, q);
            assert_eq!(sl2.subgroup(&sl2.generators()).order(), sl2.order());
        }
    }

    #[test]
    fn upper_entry_witnesses() {
        let sl2 = sl2_group(5).unwrap();
        let f = sl2.field();
        let whole = sl2.subgroup(&sl2.generators());
        let (w, by_conj) = upper_entry_witness(&sl2, &whole).unwrap();
        assert!(!w.b.is_zero() && !by_conj);

        let sl7 = sl2_group(7).unwrap();
        let t = Mat2::upper(sl7.field().one());
        let n = sl7.normal_closure(&[t]);
        assert!(!upper_entry_witness(&sl7, &n).unwrap().0.b.is_zero());

        let center = sl2.subgroup(&sl2.center());
        assert_eq!(center.order(), 2);
        assert_eq!(
            upper_entry_witness(&sl2, &center),
            Err(Psl2Error::OnlyScalars)
        );

        let borel = sl2.subgroup(&[
            Mat2::upper(f.one()),
            Mat2::diag(f.from_int(2), f.from_int(3)),
        ]);
        assert_eq!(upper_entry_witness(&sl2, &borel), Err(Psl2Error::NotNormal));
    }

    #[test]
    fn decompositions() {
        let sl2 = sl2_group(5).unwrap();
        let f = sl2.field();
        let whole = sl2.subgroup(&sl2.generators());
        let m = Mat2::upper(f.from_int(2));
        let (u, b) = lower_times_member(&sl2, &m, &whole).unwrap();
        assert_eq!(u, Mat2::identity());
        assert_eq!(b, m);

        let target = Mat2::diag(f.from_int(2), f.from_int(3));
        let (u, b) = lower_times_member(&sl2, &target, &whole).unwrap();
        assert!(u.is_lower_unitriangular());
        let r = f.neg(u.c);
        assert_eq!(
            b,
            Mat2::new(
                f.from_int(2),
                f.zero(),
                f.mul(r, f.from_int(2)),
                f.from_int(3)
            )
        );

        let sl7 = sl2_group(7).unwrap();
        let f7 = sl7.field();
        let n = sl7.normal_closure(&[Mat2::diag(f7.from_int(3), f7.from_int(5))]);
        for target in sl7.matrices() {
            let (u, b) = lower_times_member(&sl7, target, &n).unwrap();
            assert_eq!(u.mul(f7, &b), *target);
        }
    }

    #[test]
    fn certificates() {
        for q in [4u64, 5, 7] {
            let cert = certify_simplicity(q).unwrap();
            assert!(cert.verdict, "q={q}");
            assert!(cert.reverify(), "q={q}");
        }
        assert_eq!(
            certify_simplicity(3).unwrap_err(),
            Psl2Error::FieldTooSmall(3)
        );
    }

    #[test]
    fn tampered_certificate_fails_reverification() {
        let mut cert = certify_simplicity(5).unwrap();
        cert.classes[0].commutators[1].1 = cert.classes[0].commutators[2].1;
        assert!(!cert.reverify());
    }
}
