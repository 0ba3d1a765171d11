use serde::Serialize;

use super::{Algebra, AlgebraHandle, Flag, Verdict, Witness};
use crate::clifford::{Multivector, Signature};
use crate::error::{Error, Result};
use crate::involutions::NormId;
use crate::products::ProductId;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub commutative: Verdict,
    pub associative: Verdict,
    pub alternative: Verdict,
    pub flexible: Verdict,
}

impl Flags {
    pub fn get(&self, flag: Flag) -> &Verdict {
        match flag {
            Flag::Commutative => &self.commutative,
            Flag::Associative => &self.associative,
            Flag::Alternative => &self.alternative,
            Flag::Flexible => &self.flexible,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyReport {
    pub algebra: String,
    pub signature: Signature,
    pub product: ProductId,
    pub tau: String,
    pub split: String,
    pub carrier: String,
    pub dim: usize,
    pub norm: NormId,
    pub unit: Option<Multivector>,
    pub paraunit: Option<Multivector>,
    pub idempotent_witness: Option<Multivector>,
    pub flags: Flags,
    pub composition: Verdict,
    pub symmetric_composition: Verdict,
    pub norm_signature: (usize, usize),
    pub intrinsic_norm_signature: Option<(usize, usize)>,
    pub der_dim: usize,
    pub label: String,
    pub notes: Vec<String>,
}

fn hurwitz_letter(dim: usize) -> Option<&'static str> {
    match dim {
        1 => Some("R"),
        2 => Some("C"),
        4 => Some("H"),
        8 => Some("O"),
        _ => None,
    }
}

/// `""` for a definite form, `"_s"` for a hyperbolic one.
fn split_suffix((plus, minus): (usize, usize), dim: usize) -> Option<&'static str> {
    if plus + minus != dim {
        None
    } else if minus == 0 || plus == 0 {
        Some("")
    } else if plus == minus {
        Some("_s")
    } else {
        None
    }
}

/// Classify under the carrier's default norm.
pub fn classify(handle: &AlgebraHandle) -> Result<PropertyReport> {
    classify_with_norm(handle, handle.carrier.default_norm())
}

pub fn classify_with_norm(handle: &AlgebraHandle, norm: NormId) -> Result<PropertyReport> {
    let alg = Algebra::new(handle)?;
    let dim = alg.dim();
    let mut notes = Vec::new();

    let unit = match alg.find_unit() {
        Ok(u) => u,
        Err(Error::NonUniqueUnit(d)) => {
            notes.push(format!("unit equations have a {d}-dimensional solution family"));
            None
        }
        Err(e) => return Err(e),
    };
    let paraunit = if unit.is_some() { None } else { alg.find_paraunit() };
    let idempotent = alg.idempotent_witness();

    let flags = Flags {
        commutative: alg.check_flag(Flag::Commutative),
        associative: alg.check_flag(Flag::Associative),
        alternative: alg.check_flag(Flag::Alternative),
        flexible: alg.check_flag(Flag::Flexible),
    };
    let composition = alg.verify_composition(norm)?;
    let symmetric = alg.symmetric_composition_check(norm)?;
    let form = alg.norm_form(norm)?;
    let norm_signature = form.signature();
    let der_dim = alg.derivation_dimension();

    let intrinsic = match &unit {
        Some(u) => match alg.intrinsic_norm_from_unit(u) {
            Ok(q) => Some(q.signature()),
            Err(e) => {
                notes.push(format!("intrinsic norm: {e}"));
                None
            }
        },
        None => None,
    };

    let suffix = split_suffix(norm_signature, dim);
    let label = match (&unit, &paraunit, suffix) {
        (Some(_), _, Some(s)) if composition.holds() && intrinsic.is_some() => {
            hurwitz_letter(dim).map(|l| format!("{l}{s}"))
        }
        (None, Some(_), Some(s)) if composition.holds() && symmetric.holds() => {
            hurwitz_letter(dim).map(|l| format!("p{l}{s}"))
        }
        (None, None, Some(s))
            if dim == 8 && composition.holds() && symmetric.holds() && der_dim == 8 =>
        {
            Some(format!("Okubo{s}"))
        }
        _ => None,
    }
    .unwrap_or_else(|| "unrecognized".to_string());

    Ok(PropertyReport {
        algebra: handle.to_string(),
        signature: handle.sig,
        product: handle.product,
        tau: handle.tau.name().to_string(),
        split: handle.split.name().to_string(),
        carrier: handle.carrier.name().to_string(),
        dim,
        norm,
        unit: unit.map(|u| alg.to_multivector(&u)),
        paraunit: paraunit.map(|u| alg.to_multivector(&u)),
        idempotent_witness: idempotent.map(|u| alg.to_multivector(&u)),
        flags,
        composition,
        symmetric_composition: symmetric,
        norm_signature,
        intrinsic_norm_signature: intrinsic,
        der_dim,
        label,
        notes,
    })
}

/// The label printed for `(G(p,q), product)` in the octonionic table.
pub fn claimed_octonionic_label(sig: Signature, product: ProductId) -> Option<&'static str> {
    let definite = sig.p() == 3;
    Some(match (product, definite) {
        (ProductId::Dot | ProductId::DotMinus, true) => "O",
        (ProductId::Dot | ProductId::DotMinus, false) => "O_s",
        (ProductId::Bullet | ProductId::BulletMinus, true) => "pO",
        (ProductId::Bullet | ProductId::BulletMinus, false) => "pO_s",
        (ProductId::Star | ProductId::StarMinus, true) => "Okubo",
        (ProductId::Star | ProductId::StarMinus, false) => "Okubo_s",
        _ => return None,
    })
}

fn plain(identity: &str, lhs: String, rhs: String) -> Witness {
    Witness {
        identity: identity.to_string(),
        inputs: Vec::new(),
        lhs,
        rhs,
    }
}

/// `None` when the computed label equals `claimed`; otherwise the first
/// property the claimed family needs that the report refutes.
pub fn mismatch_witness(report: &PropertyReport, claimed: &str) -> Option<Witness> {
    if report.label == claimed {
        return None;
    }
    let para = claimed.starts_with('p');
    let okubo = claimed.starts_with("Okubo");
    let split = claimed.ends_with("_s");

    let mut required: Vec<&Verdict> = vec![&report.composition];
    if okubo || para {
        required.push(&report.symmetric_composition);
    } else {
        required.push(&report.flags.alternative);
    }
    required.push(&report.flags.flexible);
    if let Some(w) = required.into_iter().find_map(Verdict::witness) {
        return Some(w.clone());
    }

    let show = |m: &Option<Multivector>| m.as_ref().map_or("none".to_string(), |u| u.to_string());
    if !para && !okubo && report.unit.is_none() {
        return Some(plain(
            "exists u: u*x = x*u = x",
            "no solution".into(),
            "a unit".into(),
        ));
    }
    if para && report.paraunit.is_none() {
        return Some(plain(
            "exists paraunit",
            show(&report.unit),
            "a paraunit".into(),
        ));
    }
    if okubo && (report.unit.is_some() || report.paraunit.is_some()) {
        let found = report.unit.as_ref().or(report.paraunit.as_ref());
        return Some(plain(
            "no unit and no paraunit",
            found.map(|u| u.to_string()).unwrap_or_default(),
            "none".into(),
        ));
    }
    let (plus, minus) = report.norm_signature;
    let hyperbolic = plus == minus;
    if split != hyperbolic {
        return Some(plain(
            &format!("signature of {}", report.norm),
            format!("({plus},{minus})"),
            if split {
                format!("({0},{0})", report.dim / 2)
            } else {
                format!("({},0)", report.dim)
            },
        ));
    }
    if okubo && report.der_dim != 8 {
        return Some(plain(
            "dim Der",
            report.der_dim.to_string(),
            "8".into(),
        ));
    }
    Some(plain("label", report.label.clone(), claimed.to_string()))
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifyCell {
    pub signature: Signature,
    pub product: ProductId,
    pub claimed: String,
    pub computed: String,
    pub verdict: &'static str,
    pub witness: Option<Witness>,
}

impl ClassifyCell {
    pub fn from_report(report: &PropertyReport, claimed: &str) -> Self {
        let witness = mismatch_witness(report, claimed);
        Self {
            signature: report.signature,
            product: report.product,
            claimed: claimed.to_string(),
            computed: report.label.clone(),
            verdict: if witness.is_none() { "match" } else { "mismatch" },
            witness,
        }
    }
}
