//! Grade involutions and the four norms built from them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::clifford::{mul_same, Multivector, Subalgebra};
use crate::error::{Error, Result};
use crate::scalar::QS3Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InvolutionId {
    Reversion,
    GradeInversion,
    CliffordConjugation,
    FullGradeInversion,
}

impl InvolutionId {
    pub const ALL: [InvolutionId; 4] = [
        InvolutionId::Reversion,
        InvolutionId::GradeInversion,
        InvolutionId::CliffordConjugation,
        InvolutionId::FullGradeInversion,
    ];

    /// Sign applied to grades 0..=3.
    ///
    /// Full grade inversion is `x₊† - x₋` with the even/odd split, which
    /// fixes the scalar and negates everything else.
    pub fn grade_signs(self) -> [i8; 4] {
        match self {
            InvolutionId::Reversion => [1, 1, -1, -1],
            InvolutionId::GradeInversion => [1, -1, 1, -1],
            InvolutionId::CliffordConjugation => [1, -1, -1, 1],
            InvolutionId::FullGradeInversion => [1, -1, -1, -1],
        }
    }

    pub fn apply(self, x: &Multivector) -> Multivector {
        x.grade_signs(self.grade_signs())
    }
}

pub fn reversion(x: &Multivector) -> Multivector {
    InvolutionId::Reversion.apply(x)
}

pub fn grade_inversion(x: &Multivector) -> Multivector {
    InvolutionId::GradeInversion.apply(x)
}

pub fn clifford_conjugation(x: &Multivector) -> Multivector {
    InvolutionId::CliffordConjugation.apply(x)
}

pub fn full_grade_inversion(x: &Multivector) -> Multivector {
    InvolutionId::FullGradeInversion.apply(x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NormId {
    NStar,
    NTilde,
    NDagger,
    NBar,
}

impl NormId {
    pub fn name(self) -> &'static str {
        match self {
            NormId::NStar => "nstar",
            NormId::NTilde => "ntilde",
            NormId::NDagger => "ndagger",
            NormId::NBar => "nbar",
        }
    }

    /// Scalar value of the norm; `ntilde` must land on the scalar line and
    /// `nbar` only accepts pseudoscalar-subalgebra inputs.
    pub fn eval(self, x: &Multivector) -> Result<QS3Scalar> {
        match self {
            NormId::NStar => Ok(norm_star(x)),
            NormId::NDagger => Ok(norm_dagger(x)),
            NormId::NBar => norm_bar(x),
            NormId::NTilde => {
                let n = norm_tilde(x)?;
                if !n.coord(7).is_zero() {
                    return Err(Error::NotScalarValued {
                        norm: self.name(),
                        element: x.to_string(),
                    });
                }
                Ok(n.scalar_part().clone())
            }
        }
    }
}

impl fmt::Display for NormId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

serde_as_str!(NormId);

impl FromStr for NormId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nstar" => Ok(NormId::NStar),
            "ntilde" => Ok(NormId::NTilde),
            "ndagger" => Ok(NormId::NDagger),
            "nbar" => Ok(NormId::NBar),
            other => Err(Error::Invalid(format!("unknown norm '{other}'"))),
        }
    }
}

/// Weights of the diagonal form `n*` in coordinate order:
/// `(1, λ1λ2, λ2λ3, λ1λ3, λ1, λ2, λ3, λ1λ2λ3)`.
pub fn norm_star_weights(sig: crate::clifford::Signature) -> [i8; 8] {
    let [l1, l2, l3] = sig.lambdas();
    [1, l1 * l2, l2 * l3, l1 * l3, l1, l2, l3, l1 * l2 * l3]
}

pub fn norm_star(x: &Multivector) -> QS3Scalar {
    let w = norm_star_weights(x.sig());
    let mut acc = QS3Scalar::zero();
    for (c, wi) in x.coords().iter().zip(w) {
        if c.is_zero() {
            continue;
        }
        let sq = c.square();
        if wi > 0 {
            acc += &sq;
        } else {
            acc -= &sq;
        }
    }
    acc
}

/// `x x̃`, which always lies in the pseudoscalar subalgebra.
pub fn norm_tilde(x: &Multivector) -> Result<Multivector> {
    let n = mul_same(x, &clifford_conjugation(x));
    if !n.in_subalgebra(Subalgebra::Ps) {
        return Err(Error::InvariantViolation(format!(
            "x x~ = {n} is not in Ps for x = {x}"
        )));
    }
    Ok(n)
}

/// Grade-0 part of `x x†`.
pub fn norm_dagger(x: &Multivector) -> QS3Scalar {
    mul_same(x, &reversion(x)).scalar_part().clone()
}

/// Grade-0 part of `z z̄` for `z` in Ps; equals `a² + λ1λ2λ3 b²`.
pub fn norm_bar(z: &Multivector) -> Result<QS3Scalar> {
    z.require_subalgebra(Subalgebra::Ps)?;
    Ok(mul_same(z, &grade_inversion(z)).scalar_part().clone())
}

/// `⟨x, y⟩ = n(x + y) - n(x) - n(y)`.
pub fn polarize(norm: NormId, x: &Multivector, y: &Multivector) -> Result<QS3Scalar> {
    x.ensure_same_sig(y)?;
    let s = norm.eval(&(x + y))?;
    Ok(&(&s - &norm.eval(x)?) - &norm.eval(y)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{Blade, Signature};

    fn s(p: u8, q: u8) -> Signature {
        Signature::new(p, q).unwrap()
    }

    fn b(sig: Signature, blade: Blade) -> Multivector {
        Multivector::blade(sig, blade)
    }

    #[test]
    fn involution_examples() {
        let sig = s(3, 0);
        assert_eq!(reversion(&b(sig, Blade::E12)), -b(sig, Blade::E12));
        assert_eq!(reversion(&b(sig, Blade::E1)), b(sig, Blade::E1));
        assert_eq!(grade_inversion(&b(sig, Blade::E1)), -b(sig, Blade::E1));
        assert_eq!(grade_inversion(&b(sig, Blade::E12)), b(sig, Blade::E12));
        assert_eq!(clifford_conjugation(&b(sig, Blade::E1)), -b(sig, Blade::E1));
        assert_eq!(clifford_conjugation(&b(sig, Blade::E123)), b(sig, Blade::E123));
        assert_eq!(full_grade_inversion(&Multivector::one(sig)), Multivector::one(sig));
        assert_eq!(full_grade_inversion(&b(sig, Blade::E12)), -b(sig, Blade::E12));
    }

    #[test]
    fn reversion_of_a_product() {
        for sig in Signature::ALL {
            let x = b(sig, Blade::E12);
            let y = b(sig, Blade::E23);
            assert_eq!(
                reversion(&mul_same(&x, &y)),
                mul_same(&reversion(&y), &reversion(&x))
            );
        }
    }

    #[test]
    fn involutions_square_to_identity_and_respect_products() {
        for sig in Signature::ALL {
            for i in 0..8 {
                let x = Multivector::basis(sig, i);
                for inv in InvolutionId::ALL {
                    assert_eq!(inv.apply(&inv.apply(&x)), x);
                }
                assert_eq!(
                    clifford_conjugation(&x),
                    reversion(&grade_inversion(&x))
                );
                for j in 0..8 {
                    let y = Multivector::basis(sig, j);
                    let xy = mul_same(&x, &y);
                    assert_eq!(
                        reversion(&xy),
                        mul_same(&reversion(&y), &reversion(&x))
                    );
                    assert_eq!(
                        clifford_conjugation(&xy),
                        mul_same(&clifford_conjugation(&y), &clifford_conjugation(&x))
                    );
                    assert_eq!(
                        grade_inversion(&xy),
                        mul_same(&grade_inversion(&x), &grade_inversion(&y))
                    );
                }
            }
        }
    }

    #[test]
    fn norm_star_examples() {
        for sig in Signature::ALL {
            assert_eq!(
                norm_star(&b(sig, Blade::E123)),
                QS3Scalar::from_int(sig.lambda_product() as i64)
            );
        }
        let sig = s(3, 0);
        let x = &Multivector::one(sig) + &b(sig, Blade::E1);
        assert_eq!(norm_star(&x), QS3Scalar::from_int(2));
        let w = norm_star_weights(s(2, 1));
        assert_eq!(w.iter().filter(|v| **v > 0).count(), 4);
    }

    #[test]
    fn polarization_examples() {
        let sig = s(3, 0);
        let e1 = b(sig, Blade::E1);
        let e2 = b(sig, Blade::E2);
        assert_eq!(polarize(NormId::NStar, &e1, &e1).unwrap(), QS3Scalar::from_int(2));
        assert!(polarize(NormId::NStar, &e1, &e2).unwrap().is_zero());
        let x = Multivector::from_ints(sig, [1, 2, 3, 4, 5, 6, 7, 8]);
        assert!(polarize(NormId::NStar, &x, &Multivector::zero(sig))
            .unwrap()
            .is_zero());
        assert_eq!(
            polarize(NormId::NStar, &x, &x).unwrap(),
            norm_star(&x).scale_int(2)
        );
    }

    #[test]
    fn norm_tilde_examples() {
        let sig = s(3, 0);
        let one = Multivector::one(sig);
        assert_eq!(norm_tilde(&b(sig, Blade::E12)).unwrap(), one);
        assert_eq!(norm_tilde(&one).unwrap(), one);
        // e1 · (e1)~ = e1 · (-e1) = -λ1
        assert_eq!(norm_tilde(&b(sig, Blade::E1)).unwrap(), -&one);
        for sig in Signature::ALL {
            let x = Multivector::from_ints(sig, [1, -2, 3, 1, 2, 0, -1, 5]);
            assert!(norm_tilde(&x).unwrap().in_subalgebra(Subalgebra::Ps));
        }
    }

    #[test]
    fn norm_dagger_examples() {
        let sig = s(3, 0);
        let one = Multivector::one(sig);
        let e1 = b(sig, Blade::E1);
        assert_eq!(norm_dagger(&e1), QS3Scalar::one());
        assert_eq!(norm_dagger(&(&one + &e1)), QS3Scalar::from_int(2));
        assert_eq!(norm_dagger(&b(sig, Blade::E123)), QS3Scalar::one());
        let x = Multivector::from_ints(sig, [1, 2, 3, 4, 5, 6, 7, 8]);
        assert_eq!(norm_dagger(&x), QS3Scalar::from_int(204));
    }

    #[test]
    fn norm_bar_examples() {
        let c30 = Multivector::pseudoscalar(s(3, 0));
        let one30 = Multivector::one(s(3, 0));
        assert_eq!(norm_bar(&(&one30 + &c30)).unwrap(), QS3Scalar::from_int(2));
        assert_eq!(
            norm_bar(&Multivector::pseudoscalar(s(0, 3))).unwrap(),
            QS3Scalar::from_int(-1)
        );
        assert_eq!(norm_bar(&one30).unwrap(), QS3Scalar::one());
        assert!(norm_bar(&b(s(3, 0), Blade::E1)).is_err());
    }

    #[test]
    fn ntilde_is_multiplicative_on_basis_pairs() {
        for sig in Signature::ALL {
            for i in 0..8 {
                for j in 0..8 {
                    let x = Multivector::basis(sig, i);
                    let y = Multivector::basis(sig, j);
                    let lhs = norm_tilde(&mul_same(&x, &y)).unwrap();
                    let rhs = mul_same(&norm_tilde(&x).unwrap(), &norm_tilde(&y).unwrap());
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn norm_names_roundtrip() {
        for n in [NormId::NStar, NormId::NTilde, NormId::NDagger, NormId::NBar] {
            assert_eq!(n.name().parse::<NormId>().unwrap(), n);
        }
        assert!("nfoo".parse::<NormId>().is_err());
    }
}
