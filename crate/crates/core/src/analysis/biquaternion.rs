use serde::Serialize;

use super::{Verdict, Witness};
use crate::clifford::{mul_same, Multivector, Signature};
use crate::involutions::{clifford_conjugation, InvolutionId};
use crate::scalar::QS3Scalar;

/// `x = q0 + q1 c` with `q0, q1` in Rot.
///
/// `q0` is the even part; the odd part equals `q1 c`, and `c⁻¹ = -λ1λ2λ3 c`.
pub fn biquaternion_decompose(x: &Multivector) -> (Multivector, Multivector) {
    let sig = x.sig();
    let (even, odd) = x.even_odd_split();
    let c = Multivector::pseudoscalar(sig);
    let q1 = mul_same(&odd, &c).scale(&QS3Scalar::from_int(-(sig.lambda_product() as i64)));
    (even, q1)
}

pub fn biquaternion_recompose(q0: &Multivector, q1: &Multivector) -> Multivector {
    q0 + &mul_same(q1, &Multivector::pseudoscalar(q0.sig()))
}

#[derive(Clone, Debug, Serialize)]
pub struct TensorRow {
    pub involution: InvolutionId,
    pub rule: &'static str,
    pub verdict: Verdict,
}

/// The rule each involution follows on `(q0, q1)`.
fn rule(inv: InvolutionId) -> Option<(&'static str, fn(&Multivector, &Multivector) -> (Multivector, Multivector))> {
    match inv {
        InvolutionId::Reversion => Some(("(q0, q1) -> (q0~, -q1~)", |a, b| {
            (clifford_conjugation(a), -clifford_conjugation(b))
        })),
        InvolutionId::GradeInversion => Some(("(q0, q1) -> (q0, -q1)", |a, b| (a.clone(), -b))),
        InvolutionId::CliffordConjugation => Some(("(q0, q1) -> (q0~, q1~)", |a, b| {
            (clifford_conjugation(a), clifford_conjugation(b))
        })),
        InvolutionId::FullGradeInversion => None,
    }
}

/// Checks the three decomposable involution rows on the basis, plus the
/// reconstruction `x = q0 + q1 c`.
pub fn verify_biquaternion_rows(sig: Signature) -> Vec<TensorRow> {
    InvolutionId::ALL
        .into_iter()
        .filter_map(|inv| rule(inv).map(|r| (inv, r)))
        .map(|(inv, (text, f))| {
            let first = (0..8).find_map(|i| {
                let x = Multivector::basis(sig, i);
                let (q0, q1) = biquaternion_decompose(&x);
                let lhs = biquaternion_decompose(&inv.apply(&x));
                let rhs = f(&q0, &q1);
                let ok = lhs == rhs
                    && biquaternion_recompose(&q0, &q1) == x
                    && q0.in_subalgebra(crate::clifford::Subalgebra::Rot)
                    && q1.in_subalgebra(crate::clifford::Subalgebra::Rot);
                (!ok).then(|| Witness {
                    identity: text.to_string(),
                    inputs: vec![x.to_string()],
                    lhs: format!("({}, {})", lhs.0, lhs.1),
                    rhs: format!("({}, {})", rhs.0, rhs.1),
                })
            });
            TensorRow {
                involution: inv,
                rule: text,
                verdict: Verdict::from_first(first),
            }
        })
        .collect()
}
