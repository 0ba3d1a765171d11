//! Seeded random exact elements for fuzzed suites.

use rand::Rng;

use crate::clifford::{Multivector, Signature};
use crate::scalar::QS3Scalar;

/// `a + b√3` with small numerators and denominators; `b = 0` half the time.
pub fn random_scalar<R: Rng + ?Sized>(rng: &mut R) -> QS3Scalar {
    let a = QS3Scalar::frac(rng.gen_range(-5..=5), rng.gen_range(1..=4));
    if rng.gen_bool(0.5) {
        a
    } else {
        let b = QS3Scalar::frac(rng.gen_range(-3..=3), rng.gen_range(1..=3));
        &a + &(&b * &QS3Scalar::sqrt3())
    }
}

/// Each coordinate is zero with probability 1/3, otherwise [`random_scalar`].
pub fn random_multivector<R: Rng + ?Sized>(rng: &mut R, sig: Signature) -> Multivector {
    let mut m = Multivector::zero(sig);
    for k in 0..8 {
        if rng.gen_range(0..3) != 0 {
            m.set_coord(k, random_scalar(rng));
        }
    }
    m
}
