//! The deformed bilinear products on the 8-dimensional carrier, the
//! order-three map τ, and the para products on the Rot and Ps subalgebras.
//!
//! Each of the octonionic-type products is a sum of four geometric products
//! of split parts:
//!
//! ```text
//! x·y = x₊y₊   + ỹ₋x₋ + y₋x₊  + x₋ỹ₊
//! x•y = x̃₊ỹ₊  + ỹ₋x₋ - y₋x̃₊ - x₋y₊
//! x*y = τ(x̃₊)τ²(ỹ₊) + τ²(ỹ₋)τ(x₋) - τ²(y₋)τ(x̃₊) - τ(x₋)τ²(y₊)
//! ```
//!
//! The `-` variants flip the sign of the second and third terms.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::clifford::{mul_same, Coords, Multivector, Subalgebra};
use crate::error::{Error, Result};
use crate::involutions::{clifford_conjugation, full_grade_inversion, grade_inversion};
use crate::linalg::{LinearMap, Matrix};
use crate::scalar::QS3Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TauVariant {
    /// Signs exactly as printed; not of order three.
    PaperLiteral,
    /// 120° rotations in the (e1, e3) and (e2, e23) planes.
    Corrected,
    Custom(Box<LinearMap>),
}

impl TauVariant {
    pub fn name(&self) -> &'static str {
        match self {
            TauVariant::PaperLiteral => "paper",
            TauVariant::Corrected => "corrected",
            TauVariant::Custom(_) => "custom",
        }
    }

    pub fn custom(map: LinearMap) -> Result<Self> {
        if !map.is_invertible() {
            return Err(Error::SingularMatrix("custom tau".into()));
        }
        Ok(TauVariant::Custom(Box::new(map)))
    }

    /// Loads an 8x8 matrix from JSON: an array of 8 rows of 8 scalar strings,
    /// where entry `[i][j]` is the coefficient of blade `i` in `τ(blade j)`.
    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let rows: Vec<Vec<String>> = serde_json::from_str(&text)?;
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| crate::expr::parse_scalar(s))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if rows.len() != 8 || rows.iter().any(|r| r.len() != 8) {
            return Err(Error::Invalid("tau matrix must be 8x8".into()));
        }
        Self::custom(LinearMap::from_matrix(&Matrix::from_rows(rows))?)
    }

    pub fn map(&self) -> LinearMap {
        match self {
            TauVariant::PaperLiteral => tau_map(false),
            TauVariant::Corrected => tau_map(true),
            TauVariant::Custom(m) => (**m).clone(),
        }
    }
}

impl FromStr for TauVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(TauVariant::PaperLiteral),
            "corrected" => Ok(TauVariant::Corrected),
            other => match other.strip_prefix("file:") {
                Some(path) => TauVariant::from_json_file(Path::new(path)),
                None => Err(Error::Invalid(format!("unknown tau variant '{other}'"))),
            },
        }
    }
}

impl fmt::Display for TauVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn tau_map(corrected: bool) -> LinearMap {
    let h = QS3Scalar::frac(-1, 2);
    let s = QS3Scalar::from_parts(0, 1, 1, 2);
    // The printed images of e3 and e23 carry +√3/2; the rotation needs -√3/2.
    let back = if corrected { -&s } else { s.clone() };
    let unit = |i: usize| {
        let mut c: Coords = Default::default();
        c[i] = QS3Scalar::one();
        c
    };
    let pair = |i: usize, a: &QS3Scalar, j: usize, b: &QS3Scalar| {
        let mut c: Coords = Default::default();
        c[i] = a.clone();
        c[j] = b.clone();
        c
    };
    // indices: 0:1 1:e12 2:e23 3:e13 4:e1 5:e2 6:e3 7:e123
    LinearMap::from_images([
        unit(0),
        unit(1),
        pair(2, &h, 5, &back),
        unit(3),
        pair(4, &h, 6, &s),
        pair(5, &h, 2, &s),
        pair(6, &h, 4, &back),
        unit(7),
    ])
}

/// `τ^power(x)` for the given variant.
pub fn tau(x: &Multivector, v: &TauVariant) -> Multivector {
    v.map().apply(x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProductId {
    Clifford,
    Dot,
    Bullet,
    Star,
    DotMinus,
    BulletMinus,
    StarMinus,
    RotParaTilde,
    PsParaBar,
    /// `τ(x̄)·τ²(ȳ)` with the bar the full grade inversion.
    StarComposed,
}

impl ProductId {
    pub const ALL: [ProductId; 10] = [
        ProductId::Clifford,
        ProductId::Dot,
        ProductId::Bullet,
        ProductId::Star,
        ProductId::DotMinus,
        ProductId::BulletMinus,
        ProductId::StarMinus,
        ProductId::RotParaTilde,
        ProductId::PsParaBar,
        ProductId::StarComposed,
    ];

    /// The six products of the 8-dimensional algebra table, in column order.
    pub const OCTONIONIC: [ProductId; 6] = [
        ProductId::Dot,
        ProductId::Bullet,
        ProductId::Star,
        ProductId::DotMinus,
        ProductId::BulletMinus,
        ProductId::StarMinus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProductId::Clifford => "clifford",
            ProductId::Dot => "dot",
            ProductId::Bullet => "bullet",
            ProductId::Star => "star",
            ProductId::DotMinus => "dot-",
            ProductId::BulletMinus => "bullet-",
            ProductId::StarMinus => "star-",
            ProductId::RotParaTilde => "rot-para",
            ProductId::PsParaBar => "ps-para",
            ProductId::StarComposed => "star-composed",
        }
    }

    /// The subalgebra a product is restricted to, if any.
    pub fn domain(self) -> Option<Subalgebra> {
        match self {
            ProductId::RotParaTilde => Some(Subalgebra::Rot),
            ProductId::PsParaBar => Some(Subalgebra::Ps),
            _ => None,
        }
    }

    pub fn uses_tau(self) -> bool {
        matches!(
            self,
            ProductId::Star | ProductId::StarMinus | ProductId::StarComposed
        )
    }
}

impl fmt::Display for ProductId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

serde_as_str!(ProductId);

impl FromStr for ProductId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ProductId::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown product '{s}'")))
    }
}

/// How `x₊` / `x₋` are read inside the four-term products.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum SplitInterpretation {
    /// Even grades / odd grades.
    #[default]
    EvenOdd,
    /// `x c₊` / `x c₋` with the pseudoscalar idempotents.
    PseudoscalarIdempotent,
}

impl SplitInterpretation {
    pub fn name(self) -> &'static str {
        match self {
            SplitInterpretation::EvenOdd => "evenodd",
            SplitInterpretation::PseudoscalarIdempotent => "pseudoscalar",
        }
    }

    pub fn split(self, x: &Multivector) -> (Multivector, Multivector) {
        match self {
            SplitInterpretation::EvenOdd => x.even_odd_split(),
            SplitInterpretation::PseudoscalarIdempotent => x.pseudoscalar_split(),
        }
    }
}

impl fmt::Display for SplitInterpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

serde_as_str!(SplitInterpretation);

impl FromStr for SplitInterpretation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "evenodd" => Ok(SplitInterpretation::EvenOdd),
            "pseudoscalar" => Ok(SplitInterpretation::PseudoscalarIdempotent),
            other => Err(Error::Invalid(format!("unknown split '{other}'"))),
        }
    }
}

/// A fully specified bilinear product: id, τ and split reading, with τ and
/// τ² precomputed.
#[derive(Clone, Debug)]
pub struct Product {
    id: ProductId,
    tau: TauVariant,
    split: SplitInterpretation,
    tau1: LinearMap,
    tau2: LinearMap,
}

impl Product {
    pub fn new(id: ProductId, tau: TauVariant, split: SplitInterpretation) -> Self {
        let tau1 = tau.map();
        let tau2 = tau1.compose(&tau1);
        Self {
            id,
            tau,
            split,
            tau1,
            tau2,
        }
    }

    /// Corrected τ, even/odd split.
    pub fn standard(id: ProductId) -> Self {
        Self::new(id, TauVariant::Corrected, SplitInterpretation::EvenOdd)
    }

    pub fn id(&self) -> ProductId {
        self.id
    }

    pub fn tau(&self) -> &TauVariant {
        &self.tau
    }

    pub fn split(&self) -> SplitInterpretation {
        self.split
    }

    pub fn tau_map(&self) -> &LinearMap {
        &self.tau1
    }

    pub fn apply(&self, x: &Multivector, y: &Multivector) -> Result<Multivector> {
        x.ensure_same_sig(y)?;
        if let Some(sub) = self.id.domain() {
            x.require_subalgebra(sub)?;
            y.require_subalgebra(sub)?;
        }
        Ok(self.apply_unchecked(x, y))
    }

    /// Same as [`Product::apply`] without signature or domain checks.
    pub(crate) fn apply_unchecked(&self, x: &Multivector, y: &Multivector) -> Multivector {
        match self.id {
            ProductId::Clifford => mul_same(x, y),
            ProductId::Dot => self.dot(x, y, 1),
            ProductId::DotMinus => self.dot(x, y, -1),
            ProductId::Bullet => self.bullet(x, y, 1),
            ProductId::BulletMinus => self.bullet(x, y, -1),
            ProductId::Star => self.star(x, y, 1),
            ProductId::StarMinus => self.star(x, y, -1),
            ProductId::StarComposed => {
                let a = self.tau1.apply(&full_grade_inversion(x));
                let b = self.tau2.apply(&full_grade_inversion(y));
                self.dot(&a, &b, 1)
            }
            ProductId::RotParaTilde => {
                mul_same(&clifford_conjugation(x), &clifford_conjugation(y))
            }
            ProductId::PsParaBar => mul_same(&grade_inversion(x), &grade_inversion(y)),
        }
    }

    fn sum_terms(t: [Multivector; 4], sign23: i8) -> Multivector {
        let [t1, t2, t3, t4] = t;
        let mid = &t2 + &t3;
        if sign23 > 0 {
            &(&t1 + &mid) + &t4
        } else {
            &(&t1 - &mid) + &t4
        }
    }

    fn dot(&self, x: &Multivector, y: &Multivector, sign23: i8) -> Multivector {
        let (xp, xm) = self.split.split(x);
        let (yp, ym) = self.split.split(y);
        Self::sum_terms(
            [
                mul_same(&xp, &yp),
                mul_same(&clifford_conjugation(&ym), &xm),
                mul_same(&ym, &xp),
                mul_same(&xm, &clifford_conjugation(&yp)),
            ],
            sign23,
        )
    }

    fn bullet(&self, x: &Multivector, y: &Multivector, sign23: i8) -> Multivector {
        let (xp, xm) = self.split.split(x);
        let (yp, ym) = self.split.split(y);
        let xpt = clifford_conjugation(&xp);
        Self::sum_terms(
            [
                mul_same(&xpt, &clifford_conjugation(&yp)),
                mul_same(&clifford_conjugation(&ym), &xm),
                -mul_same(&ym, &xpt),
                -mul_same(&xm, &yp),
            ],
            sign23,
        )
    }

    fn star(&self, x: &Multivector, y: &Multivector, sign23: i8) -> Multivector {
        let (xp, xm) = self.split.split(x);
        let (yp, ym) = self.split.split(y);
        let t1 = |m: &Multivector| self.tau1.apply(m);
        let t2 = |m: &Multivector| self.tau2.apply(m);
        let xpt = clifford_conjugation(&xp);
        Self::sum_terms(
            [
                mul_same(&t1(&xpt), &t2(&clifford_conjugation(&yp))),
                mul_same(&t2(&clifford_conjugation(&ym)), &t1(&xm)),
                -mul_same(&t2(&ym), &t1(&xpt)),
                -mul_same(&t1(&xm), &t2(&yp)),
            ],
            sign23,
        )
    }
}

pub fn dot_product(x: &Multivector, y: &Multivector) -> Result<Multivector> {
    Product::standard(ProductId::Dot).apply(x, y)
}

pub fn bullet_product(x: &Multivector, y: &Multivector) -> Result<Multivector> {
    Product::standard(ProductId::Bullet).apply(x, y)
}

pub fn star_product(x: &Multivector, y: &Multivector, v: &TauVariant) -> Result<Multivector> {
    Product::new(ProductId::Star, v.clone(), SplitInterpretation::EvenOdd).apply(x, y)
}

pub fn star_composed(x: &Multivector, y: &Multivector, v: &TauVariant) -> Result<Multivector> {
    Product::new(ProductId::StarComposed, v.clone(), SplitInterpretation::EvenOdd).apply(x, y)
}

/// Sign-flipped variant of `dot`, `bullet` or `star`.
pub fn minus_variant(
    parent: ProductId,
    x: &Multivector,
    y: &Multivector,
    v: &TauVariant,
) -> Result<Multivector> {
    let id = match parent {
        ProductId::Dot => ProductId::DotMinus,
        ProductId::Bullet => ProductId::BulletMinus,
        ProductId::Star => ProductId::StarMinus,
        other => {
            return Err(Error::Invalid(format!(
                "{other} has no sign-flipped variant"
            )))
        }
    };
    Product::new(id, v.clone(), SplitInterpretation::EvenOdd).apply(x, y)
}

pub fn para_sub_product(x: &Multivector, y: &Multivector, which: Subalgebra) -> Result<Multivector> {
    let id = match which {
        Subalgebra::Rot => ProductId::RotParaTilde,
        Subalgebra::Ps => ProductId::PsParaBar,
    };
    Product::standard(id).apply(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{Blade, Signature};
    use crate::involutions::norm_star;

    fn s30() -> Signature {
        Signature::new(3, 0).unwrap()
    }

    fn b(blade: Blade) -> Multivector {
        Multivector::blade(s30(), blade)
    }

    fn one() -> Multivector {
        Multivector::one(s30())
    }

    #[test]
    fn tau_fixes_the_printed_blades() {
        for v in [TauVariant::PaperLiteral, TauVariant::Corrected] {
            assert_eq!(tau(&one(), &v), one());
            assert_eq!(tau(&b(Blade::E12), &v), b(Blade::E12));
            assert_eq!(tau(&b(Blade::E13), &v), b(Blade::E13));
            assert_eq!(tau(&b(Blade::E123), &v), b(Blade::E123));
        }
    }

    #[test]
    fn corrected_tau_has_order_three() {
        let m = TauVariant::Corrected.map();
        let cube = m.compose(&m).compose(&m);
        assert_eq!(cube, LinearMap::identity());
        let e1 = b(Blade::E1);
        let v = TauVariant::Corrected;
        assert_eq!(tau(&tau(&tau(&e1, &v), &v), &v), e1);
    }

    #[test]
    fn literal_tau_is_not_of_order_three() {
        let v = TauVariant::PaperLiteral;
        let e1 = b(Blade::E1);
        assert_ne!(tau(&tau(&tau(&e1, &v), &v), &v), e1);
        // (e1, e3) block [[-1/2, √3/2], [√3/2, -1/2]] has determinant -1/2
        let m = v.map();
        let det = &(&m.image(4)[4] * &m.image(6)[6]) - &(&m.image(6)[4] * &m.image(4)[6]);
        assert_eq!(det, QS3Scalar::frac(-1, 2));
    }

    #[test]
    fn dot_examples() {
        assert_eq!(dot_product(&b(Blade::E1), &b(Blade::E1)).unwrap(), -one());
        assert_eq!(dot_product(&b(Blade::E1), &b(Blade::E2)).unwrap(), b(Blade::E12));
        let e12 = dot_product(&b(Blade::E1), &b(Blade::E2)).unwrap();
        let left = dot_product(&e12, &b(Blade::E3)).unwrap();
        let e23 = dot_product(&b(Blade::E2), &b(Blade::E3)).unwrap();
        let right = dot_product(&b(Blade::E1), &e23).unwrap();
        assert_eq!(left, b(Blade::E123));
        assert_eq!(right, -b(Blade::E123));
    }

    #[test]
    fn bullet_examples() {
        assert_eq!(bullet_product(&one(), &b(Blade::E1)).unwrap(), -b(Blade::E1));
        assert_eq!(bullet_product(&one(), &one()).unwrap(), one());
        let inner = bullet_product(&b(Blade::E1), &b(Blade::E1)).unwrap();
        assert_eq!(bullet_product(&b(Blade::E1), &inner).unwrap(), b(Blade::E1));
    }

    #[test]
    fn star_examples() {
        let v = TauVariant::Corrected;
        assert_eq!(star_product(&one(), &one(), &v).unwrap(), one());
        assert_eq!(star_product(&one(), &b(Blade::E12), &v).unwrap(), -b(Blade::E12));
    }

    #[test]
    fn minus_examples() {
        let v = TauVariant::Corrected;
        let e1 = b(Blade::E1);
        assert_eq!(minus_variant(ProductId::Dot, &e1, &e1, &v).unwrap(), one());
        let e12 = b(Blade::E12);
        assert_eq!(minus_variant(ProductId::Dot, &e12, &e12, &v).unwrap(), -one());
        assert_eq!(minus_variant(ProductId::Dot, &one(), &one(), &v).unwrap(), one());
        assert!(minus_variant(ProductId::Clifford, &one(), &one(), &v).is_err());
    }

    #[test]
    fn star_composed_examples() {
        let v = TauVariant::Corrected;
        assert_eq!(star_composed(&one(), &one(), &v).unwrap(), one());
        let x = Multivector::from_ints(s30(), [1, 0, 2, -1, 0, 3, 1, -2]);
        let y = Multivector::from_ints(s30(), [0, 1, -1, 2, 2, 0, 1, 1]);
        let p = star_composed(&x, &y, &v).unwrap();
        assert_eq!(norm_star(&p), &norm_star(&x) * &norm_star(&y));
    }

    #[test]
    fn para_sub_examples() {
        let sig = s30();
        let e12 = b(Blade::E12);
        assert_eq!(para_sub_product(&one(), &e12, Subalgebra::Rot).unwrap(), -e12.clone());
        assert_eq!(para_sub_product(&e12, &e12, Subalgebra::Rot).unwrap(), -one());
        let c = Multivector::pseudoscalar(sig);
        assert_eq!(para_sub_product(&one(), &c, Subalgebra::Ps).unwrap(), -c.clone());
        assert!(matches!(
            para_sub_product(&b(Blade::E1), &one(), Subalgebra::Rot),
            Err(Error::NotInSubalgebra { .. })
        ));
    }

    #[test]
    fn product_names_roundtrip() {
        for p in ProductId::ALL {
            assert_eq!(p.name().parse::<ProductId>().unwrap(), p);
        }
        assert!("cross".parse::<ProductId>().is_err());
        assert_eq!("corrected".parse::<TauVariant>().unwrap(), TauVariant::Corrected);
        assert!("file:/nonexistent/tau.json".parse::<TauVariant>().is_err());
    }

    #[test]
    fn singular_custom_tau_is_rejected() {
        let zero = LinearMap::from_matrix(&Matrix::zeros(8, 8)).unwrap();
        assert!(matches!(TauVariant::custom(zero), Err(Error::SingularMatrix(_))));
    }
}
