//! Blades, signatures and multivectors of Cl(p,q) with p + q = 3.
//!
//! Coordinates are stored densely in the fixed order
//! `[1, e12, e23, e13, e1, e2, e3, e123]`, which is also the order used by
//! every report and by the text form.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::QS3Scalar;

/// Diagonal quadratic form `diag(λ1, λ2, λ3)` with each `λi = ±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    lambdas: [i8; 3],
}

impl Signature {
    pub const ALL: [Signature; 4] = [
        Signature { lambdas: [1, 1, 1] },
        Signature { lambdas: [1, 1, -1] },
        Signature { lambdas: [1, -1, -1] },
        Signature { lambdas: [-1, -1, -1] },
    ];

    /// Canonical form: the first `p` generators square to +1.
    pub fn new(p: u8, q: u8) -> Result<Self> {
        if p as u16 + q as u16 != 3 {
            return Err(Error::InvalidSignature { p, q });
        }
        let mut lambdas = [-1i8; 3];
        for l in lambdas.iter_mut().take(p as usize) {
            *l = 1;
        }
        Ok(Self { lambdas })
    }

    pub fn from_lambdas(lambdas: [i8; 3]) -> Result<Self> {
        if lambdas.iter().any(|l| *l != 1 && *l != -1) {
            return Err(Error::Invalid(format!("lambdas {lambdas:?} must be ±1")));
        }
        Ok(Self { lambdas })
    }

    pub fn lambdas(&self) -> [i8; 3] {
        self.lambdas
    }

    pub fn lambda(&self, i: usize) -> i8 {
        self.lambdas[i]
    }

    pub fn p(&self) -> u8 {
        self.lambdas.iter().filter(|l| **l == 1).count() as u8
    }

    pub fn q(&self) -> u8 {
        3 - self.p()
    }

    /// `λ1λ2λ3`, the sign with `c² = -λ1λ2λ3`.
    pub fn lambda_product(&self) -> i8 {
        self.lambdas.iter().product()
    }
}

/// Accepts `3,0` or `(3,0)`.
impl std::str::FromStr for Signature {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let bad = || Error::Invalid(format!("signature '{s}' is not of the form p,q"));
        let (p, q) = t.split_once(',').ok_or_else(bad)?;
        let p = p.trim().parse::<u8>().map_err(|_| bad())?;
        let q = q.trim().parse::<u8>().map_err(|_| bad())?;
        Signature::new(p, q)
    }
}

serde_as_str!(Signature);

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p(), self.q())
    }
}

/// A basis blade, stored as a generator bitmask (bit `i` ⇔ `e_{i+1}`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Blade(u8);

/// Masks in coordinate order.
const ORDER: [u8; 8] = [0b000, 0b011, 0b110, 0b101, 0b001, 0b010, 0b100, 0b111];
pub const NAMES: [&str; 8] = ["1", "e12", "e23", "e13", "e1", "e2", "e3", "e123"];
const INDEX_OF_MASK: [usize; 8] = [0, 4, 5, 1, 6, 3, 2, 7];

impl Blade {
    pub const SCALAR: Blade = Blade(0b000);
    pub const E1: Blade = Blade(0b001);
    pub const E2: Blade = Blade(0b010);
    pub const E3: Blade = Blade(0b100);
    pub const E12: Blade = Blade(0b011);
    pub const E23: Blade = Blade(0b110);
    pub const E13: Blade = Blade(0b101);
    pub const E123: Blade = Blade(0b111);

    pub fn from_mask(mask: u8) -> Self {
        Blade(mask & 0b111)
    }

    pub fn from_index(i: usize) -> Self {
        Blade(ORDER[i])
    }

    pub fn all() -> impl Iterator<Item = Blade> {
        (0..8).map(Blade::from_index)
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    pub fn index(self) -> usize {
        INDEX_OF_MASK[self.0 as usize]
    }

    pub fn grade(self) -> u32 {
        self.0.count_ones()
    }

    pub fn name(self) -> &'static str {
        NAMES[self.index()]
    }

    pub fn from_name(name: &str) -> Option<Self> {
        NAMES.iter().position(|n| *n == name).map(Blade::from_index)
    }

    /// Product of two basis blades: `(sign, blade)` with `sign = ±1`.
    ///
    /// The sign is the parity of the transpositions needed to sort the
    /// concatenated generator list, times `λi` for every generator that
    /// appears twice and cancels.
    pub fn product(self, other: Blade, sig: Signature) -> (i8, Blade) {
        let (a, b) = (self.0, other.0);
        let mut swaps = 0u32;
        for i in 0..3 {
            if b >> i & 1 == 1 {
                swaps += (a >> (i + 1)).count_ones();
            }
        }
        let mut sign: i8 = if swaps % 2 == 0 { 1 } else { -1 };
        let common = a & b;
        for i in 0..3 {
            if common >> i & 1 == 1 {
                sign *= sig.lambda(i);
            }
        }
        (sign, Blade(a ^ b))
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The two named subalgebras: rotors (even part) and pseudoscalars.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Subalgebra {
    Rot,
    Ps,
}

impl Subalgebra {
    /// Coordinate indices spanning the subalgebra.
    pub fn indices(self) -> &'static [usize] {
        match self {
            Subalgebra::Rot => &[0, 1, 2, 3],
            Subalgebra::Ps => &[0, 7],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Subalgebra::Rot => "Rot",
            Subalgebra::Ps => "Ps",
        }
    }
}

pub type Coords = [QS3Scalar; 8];

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Multivector {
    coords: Coords,
    sig: Signature,
}

impl Multivector {
    pub fn zero(sig: Signature) -> Self {
        Self {
            coords: Default::default(),
            sig,
        }
    }

    pub fn one(sig: Signature) -> Self {
        Self::scalar(sig, QS3Scalar::one())
    }

    pub fn scalar(sig: Signature, s: QS3Scalar) -> Self {
        let mut m = Self::zero(sig);
        m.coords[0] = s;
        m
    }

    pub fn blade(sig: Signature, b: Blade) -> Self {
        let mut m = Self::zero(sig);
        m.coords[b.index()] = QS3Scalar::one();
        m
    }

    pub fn basis(sig: Signature, i: usize) -> Self {
        Self::blade(sig, Blade::from_index(i))
    }

    /// The pseudoscalar `c = e1e2e3`.
    pub fn pseudoscalar(sig: Signature) -> Self {
        Self::blade(sig, Blade::E123)
    }

    pub fn from_coords(sig: Signature, coords: Coords) -> Self {
        Self { coords, sig }
    }

    pub fn from_ints(sig: Signature, v: [i64; 8]) -> Self {
        Self {
            coords: v.map(QS3Scalar::from_int),
            sig,
        }
    }

    pub fn sig(&self) -> Signature {
        self.sig
    }

    pub fn coords(&self) -> &Coords {
        &self.coords
    }

    pub fn into_coords(self) -> Coords {
        self.coords
    }

    pub fn coord(&self, i: usize) -> &QS3Scalar {
        &self.coords[i]
    }

    pub fn set_coord(&mut self, i: usize, v: QS3Scalar) {
        self.coords[i] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(QS3Scalar::is_zero)
    }

    pub fn scalar_part(&self) -> &QS3Scalar {
        &self.coords[0]
    }

    pub fn scale(&self, s: &QS3Scalar) -> Self {
        Self {
            coords: std::array::from_fn(|i| &self.coords[i] * s),
            sig: self.sig,
        }
    }

    pub fn with_sig(&self, sig: Signature) -> Self {
        Self {
            coords: self.coords.clone(),
            sig,
        }
    }

    pub fn ensure_same_sig(&self, other: &Self) -> Result<()> {
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch {
                left: self.sig.to_string(),
                right: other.sig.to_string(),
            });
        }
        Ok(())
    }

    /// Multiplies each coordinate by the sign assigned to its grade.
    pub fn grade_signs(&self, signs: [i8; 4]) -> Self {
        Self {
            coords: std::array::from_fn(|i| {
                if signs[Blade::from_index(i).grade() as usize] < 0 {
                    -&self.coords[i]
                } else {
                    self.coords[i].clone()
                }
            }),
            sig: self.sig,
        }
    }

    fn keep(&self, pred: impl Fn(Blade) -> bool) -> Self {
        Self {
            coords: std::array::from_fn(|i| {
                if pred(Blade::from_index(i)) {
                    self.coords[i].clone()
                } else {
                    QS3Scalar::zero()
                }
            }),
            sig: self.sig,
        }
    }

    pub fn grade_project(&self, k: u32) -> Self {
        self.keep(|b| b.grade() == k)
    }

    /// `(even, odd)`: grades {0,2} and {1,3}.
    pub fn even_odd_split(&self) -> (Self, Self) {
        (
            self.keep(|b| b.grade() % 2 == 0),
            self.keep(|b| b.grade() % 2 == 1),
        )
    }

    /// `(x·c₊, x·c₋)` with `c± = (1 ± c)/2`.
    pub fn pseudoscalar_split(&self) -> (Self, Self) {
        let (cp, cm) = pseudoscalar_idempotents(self.sig);
        (mul_same(self, &cp), mul_same(self, &cm))
    }

    pub fn in_subalgebra(&self, which: Subalgebra) -> bool {
        let idx = which.indices();
        (0..8).all(|i| idx.contains(&i) || self.coords[i].is_zero())
    }

    pub fn require_subalgebra(&self, which: Subalgebra) -> Result<()> {
        if self.in_subalgebra(which) {
            Ok(())
        } else {
            Err(Error::NotInSubalgebra {
                element: self.to_string(),
                subalgebra: which.name(),
            })
        }
    }

    pub fn geometric_product(&self, other: &Self) -> Result<Self> {
        self.ensure_same_sig(other)?;
        Ok(mul_same(self, other))
    }
}

/// `(c₊, c₋) = ((1+c)/2, (1-c)/2)`.
pub fn pseudoscalar_idempotents(sig: Signature) -> (Multivector, Multivector) {
    let half = QS3Scalar::frac(1, 2);
    let mut cp = Multivector::zero(sig);
    cp.coords[0] = half.clone();
    cp.coords[7] = half.clone();
    let mut cm = cp.clone();
    cm.coords[7] = -&half;
    (cp, cm)
}

/// Geometric product of coordinate vectors; the caller guarantees both
/// operands carry `sig`.
pub fn gp_coords(sig: Signature, x: &Coords, y: &Coords) -> Coords {
    let mut out: Coords = Default::default();
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        let bi = Blade::from_index(i);
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            let (s, b) = bi.product(Blade::from_index(j), sig);
            let v = xi * yj;
            if s > 0 {
                out[b.index()] += &v;
            } else {
                out[b.index()] -= &v;
            }
        }
    }
    out
}

/// Geometric product assuming equal signatures (asserted in debug builds).
pub(crate) fn mul_same(x: &Multivector, y: &Multivector) -> Multivector {
    debug_assert_eq!(x.sig, y.sig);
    Multivector {
        coords: gp_coords(x.sig, &x.coords, &y.coords),
        sig: x.sig,
    }
}

pub fn geometric_product(x: &Multivector, y: &Multivector) -> Result<Multivector> {
    x.geometric_product(y)
}

/// Elementwise operators panic on a signature mismatch; products return
/// errors instead.
impl<'a> Add<&'a Multivector> for &'a Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        assert_eq!(self.sig, rhs.sig, "adding multivectors of different signatures");
        Multivector {
            coords: std::array::from_fn(|i| &self.coords[i] + &rhs.coords[i]),
            sig: self.sig,
        }
    }
}

impl<'a> Sub<&'a Multivector> for &'a Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        assert_eq!(self.sig, rhs.sig, "subtracting multivectors of different signatures");
        Multivector {
            coords: std::array::from_fn(|i| &self.coords[i] - &rhs.coords[i]),
            sig: self.sig,
        }
    }
}

impl Add for Multivector {
    type Output = Multivector;
    fn add(self, rhs: Multivector) -> Multivector {
        &self + &rhs
    }
}

impl Sub for Multivector {
    type Output = Multivector;
    fn sub(self, rhs: Multivector) -> Multivector {
        &self - &rhs
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        Multivector {
            coords: std::array::from_fn(|i| -&self.coords[i]),
            sig: self.sig,
        }
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        -&self
    }
}

/// Canonical text form, e.g. `1 + 2 e12 - 1/2 e123`.
impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::expr::print_canonical(self))
    }
}

impl Serialize for Multivector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multivector{}[{}]", self.sig, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s30() -> Signature {
        Signature::new(3, 0).unwrap()
    }

    #[test]
    fn signature_bookkeeping() {
        for sig in Signature::ALL {
            assert_eq!(sig.p() + sig.q(), 3);
            assert_eq!(Signature::new(sig.p(), sig.q()).unwrap(), sig);
        }
        assert!(Signature::new(2, 2).is_err());
        assert_eq!(Signature::new(2, 1).unwrap().lambdas(), [1, 1, -1]);
    }

    #[test]
    fn blade_order_is_a_bijection() {
        for i in 0..8 {
            assert_eq!(Blade::from_index(i).index(), i);
        }
        assert_eq!(Blade::E13.index(), 3);
        assert_eq!(Blade::E123.grade(), 3);
        assert_eq!(Blade::from_name("e23"), Some(Blade::E23));
        assert_eq!(Blade::from_name("e4"), None);
    }

    #[test]
    fn generator_squares() {
        for sig in Signature::ALL {
            for (i, b) in [Blade::E1, Blade::E2, Blade::E3].into_iter().enumerate() {
                assert_eq!(b.product(b, sig), (sig.lambda(i), Blade::SCALAR));
            }
            let [l1, l2, l3] = sig.lambdas();
            assert_eq!(Blade::E12.product(Blade::E12, sig), (-l1 * l2, Blade::SCALAR));
            assert_eq!(Blade::E23.product(Blade::E23, sig), (-l2 * l3, Blade::SCALAR));
            assert_eq!(Blade::E13.product(Blade::E13, sig), (-l1 * l3, Blade::SCALAR));
            assert_eq!(
                Blade::E123.product(Blade::E123, sig),
                (-l1 * l2 * l3, Blade::SCALAR)
            );
        }
        assert_eq!(Blade::E123.product(Blade::E123, s30()), (-1, Blade::SCALAR));
    }

    #[test]
    fn bivector_relations() {
        for sig in Signature::ALL {
            let [l1, l2, l3] = sig.lambdas();
            assert_eq!(Blade::E12.product(Blade::E23, sig), (l2, Blade::E13));
            assert_eq!(Blade::E23.product(Blade::E13, sig), (l3, Blade::E12));
            assert_eq!(Blade::E13.product(Blade::E12, sig), (l1, Blade::E23));
        }
    }

    #[test]
    fn geometric_product_examples() {
        let sig = s30();
        let x = Multivector::from_ints(sig, [3, 0, 1, 0, 2, 0, 0, 5]);
        let one = Multivector::one(sig);
        assert_eq!(one.geometric_product(&x).unwrap(), x);
        let e1 = Multivector::blade(sig, Blade::E1);
        let e2 = Multivector::blade(sig, Blade::E2);
        assert_eq!(
            e1.geometric_product(&e2).unwrap(),
            Multivector::blade(sig, Blade::E12)
        );
        let a = &one + &e1;
        let b = &one - &e1;
        assert!(a.geometric_product(&b).unwrap().is_zero());
        let other = Multivector::one(Signature::new(2, 1).unwrap());
        assert!(matches!(
            one.geometric_product(&other),
            Err(Error::SignatureMismatch { .. })
        ));
    }

    #[test]
    fn associativity_on_basis_triples() {
        for sig in Signature::ALL {
            for i in 0..8 {
                for j in 0..8 {
                    for k in 0..8 {
                        let (a, b, c) = (
                            Multivector::basis(sig, i),
                            Multivector::basis(sig, j),
                            Multivector::basis(sig, k),
                        );
                        let l = mul_same(&mul_same(&a, &b), &c);
                        let r = mul_same(&a, &mul_same(&b, &c));
                        assert_eq!(l, r, "{sig} {i} {j} {k}");
                    }
                }
            }
        }
    }

    #[test]
    fn subalgebras_are_closed() {
        for sig in Signature::ALL {
            for which in [Subalgebra::Rot, Subalgebra::Ps] {
                for &i in which.indices() {
                    for &j in which.indices() {
                        let p = mul_same(&Multivector::basis(sig, i), &Multivector::basis(sig, j));
                        assert!(p.in_subalgebra(which));
                    }
                }
            }
        }
    }

    #[test]
    fn pseudoscalar_is_central() {
        for sig in Signature::ALL {
            let c = Multivector::pseudoscalar(sig);
            for i in 0..8 {
                let b = Multivector::basis(sig, i);
                assert_eq!(mul_same(&c, &b), mul_same(&b, &c));
            }
            let c2 = mul_same(&c, &c);
            assert_eq!(
                c2,
                Multivector::scalar(sig, QS3Scalar::from_int(-sig.lambda_product() as i64))
            );
            let (cp, cm) = pseudoscalar_idempotents(sig);
            let idempotent = mul_same(&cp, &cp) == cp && mul_same(&cm, &cm) == cm;
            assert_eq!(idempotent, sig.lambda_product() == -1);
        }
    }

    #[test]
    fn grade_projection_partitions() {
        let sig = s30();
        let x = Multivector::from_ints(sig, [1, 1, 0, 0, 1, 0, 0, 0]);
        assert_eq!(x.grade_project(1), Multivector::blade(sig, Blade::E1));
        let y = Multivector::from_ints(sig, [1, 2, 3, 4, 5, 6, 7, 8]);
        let sum = (0..4).fold(Multivector::zero(sig), |acc, k| &acc + &y.grade_project(k));
        assert_eq!(sum, y);
        let c = Multivector::pseudoscalar(sig);
        assert_eq!(c.grade_project(3), c);
    }

    #[test]
    fn even_odd_examples() {
        let sig = s30();
        let one = Multivector::one(sig);
        let e1 = Multivector::blade(sig, Blade::E1);
        assert_eq!((&one + &e1).even_odd_split(), (one.clone(), e1.clone()));
        let e12 = Multivector::blade(sig, Blade::E12);
        assert_eq!(e12.even_odd_split(), (e12.clone(), Multivector::zero(sig)));
        let c = Multivector::pseudoscalar(sig);
        assert_eq!(c.even_odd_split(), (Multivector::zero(sig), c.clone()));
    }

    #[test]
    fn pseudoscalar_split_examples() {
        let sig = s30();
        let (cp, cm) = pseudoscalar_idempotents(sig);
        assert_eq!(Multivector::one(sig).pseudoscalar_split(), (cp, cm));
        let e1 = Multivector::blade(sig, Blade::E1);
        let e23 = Multivector::blade(sig, Blade::E23);
        let half = QS3Scalar::frac(1, 2);
        let (p, m) = e1.pseudoscalar_split();
        assert_eq!(p, (&e1 + &e23).scale(&half));
        assert_eq!(m, (&e1 - &e23).scale(&half));
        assert_eq!(&p + &m, e1);
    }

    #[test]
    fn membership() {
        let sig = s30();
        let one = Multivector::one(sig);
        assert!((&one + &Multivector::blade(sig, Blade::E12)).in_subalgebra(Subalgebra::Rot));
        assert!(!Multivector::blade(sig, Blade::E1).in_subalgebra(Subalgebra::Rot));
        assert!((&one + &Multivector::pseudoscalar(sig)).in_subalgebra(Subalgebra::Ps));
    }
}
