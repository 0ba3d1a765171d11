//! Live regeneration of the property and identity tables.

use rayon::prelude::*;
use serde::Serialize;

use super::classify::{classify, claimed_octonionic_label, ClassifyCell, PropertyReport};
use super::{Algebra, AlgebraHandle, Carrier, Flag, Verdict, Witness};
use crate::clifford::{Multivector, Signature};
use crate::error::Result;
use crate::involutions::{full_grade_inversion, NormId};
use crate::products::{tau, Product, ProductId, TauVariant};

fn sig(p: u8, q: u8) -> Signature {
    Signature::new(p, q).expect("valid signature")
}

/// Printed flags for one family: commutative, associative, alternative,
/// flexible, composition. The totally ordered column is not computed.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ClaimedFlags {
    pub commutative: bool,
    pub associative: bool,
    pub alternative: bool,
    pub flexible: bool,
    pub composition: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Table1Row {
    pub label: &'static str,
    pub realization: String,
    pub totally_ordered: &'static str,
    pub claimed: ClaimedFlags,
    pub computed_label: String,
    pub commutative: Verdict,
    pub associative: Verdict,
    pub alternative: Verdict,
    pub flexible: Verdict,
    pub composition: Verdict,
    pub agrees: bool,
}

/// One realization per composition algebra, with the flags it is printed with.
pub fn table1_realizations() -> Vec<(&'static str, AlgebraHandle, ClaimedFlags)> {
    let f = |c, a, alt, fl| ClaimedFlags {
        commutative: c,
        associative: a,
        alternative: alt,
        flexible: fl,
        composition: true,
    };
    let hurwitz_r = f(true, true, true, true);
    let hurwitz_c = f(true, true, true, true);
    let hurwitz_h = f(false, true, true, true);
    let hurwitz_o = f(false, false, true, true);
    let para_c = f(true, false, false, true);
    let para = f(false, false, false, true);
    let h = |p, q, id| AlgebraHandle::new(sig(p, q), id);
    vec![
        ("R", h(3, 0, ProductId::Clifford).with_carrier(Carrier::Scalar), hurwitz_r),
        ("C", h(3, 0, ProductId::Clifford).with_carrier(Carrier::Ps), hurwitz_c),
        ("C_s", h(0, 3, ProductId::Clifford).with_carrier(Carrier::Ps), hurwitz_c),
        ("H", h(3, 0, ProductId::Clifford).with_carrier(Carrier::Rot), hurwitz_h),
        ("H_s", h(2, 1, ProductId::Clifford).with_carrier(Carrier::Rot), hurwitz_h),
        ("O", h(3, 0, ProductId::Dot), hurwitz_o),
        ("O_s", h(2, 1, ProductId::Dot), hurwitz_o),
        ("pC", h(3, 0, ProductId::PsParaBar), para_c),
        ("pC_s", h(0, 3, ProductId::PsParaBar), para_c),
        ("pH", h(3, 0, ProductId::RotParaTilde), para),
        ("pH_s", h(2, 1, ProductId::RotParaTilde), para),
        ("pO", h(3, 0, ProductId::Bullet), para),
        ("pO_s", h(2, 1, ProductId::Bullet), para),
        ("Okubo", h(3, 0, ProductId::Star), para),
        ("Okubo_s", h(2, 1, ProductId::Star), para),
    ]
}

pub fn table1() -> Result<Vec<Table1Row>> {
    table1_realizations()
        .into_par_iter()
        .map(|(label, handle, claimed)| {
            let r = classify(&handle)?;
            let agrees = r.flags.commutative.holds() == claimed.commutative
                && r.flags.associative.holds() == claimed.associative
                && r.flags.alternative.holds() == claimed.alternative
                && r.flags.flexible.holds() == claimed.flexible
                && r.composition.holds() == claimed.composition
                && r.label == label;
            Ok(Table1Row {
                label,
                realization: handle.to_string(),
                totally_ordered: "not computed",
                claimed,
                computed_label: r.label,
                commutative: r.flags.commutative,
                associative: r.flags.associative,
                alternative: r.flags.alternative,
                flexible: r.flags.flexible,
                composition: r.composition,
                agrees,
            })
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Table2Cell {
    pub row: &'static str,
    pub column: &'static str,
    pub identity: String,
    pub trivial: bool,
    pub verdict: Verdict,
}

/// Exact check of `lhs(x, y) = rhs(x, y)` on all basis pairs.
pub fn check_basis_pairs(
    sig: Signature,
    identity: &str,
    lhs: impl Fn(&Multivector, &Multivector) -> Result<Multivector> + Sync,
    rhs: impl Fn(&Multivector, &Multivector) -> Result<Multivector> + Sync,
) -> Result<Verdict> {
    let found = (0..64)
        .into_par_iter()
        .map(|t| -> Result<Option<Witness>> {
            let x = Multivector::basis(sig, t / 8);
            let y = Multivector::basis(sig, t % 8);
            let (l, r) = (lhs(&x, &y)?, rhs(&x, &y)?);
            Ok((l != r).then(|| Witness {
                identity: identity.to_string(),
                inputs: vec![x.to_string(), y.to_string()],
                lhs: l.to_string(),
                rhs: r.to_string(),
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Verdict::from_first(found.into_iter().flatten().next()))
}

/// The nine inter-product identities in (3,0) with the given τ.
pub fn table2(tau_variant: &TauVariant) -> Result<Vec<Table2Cell>> {
    let s = sig(3, 0);
    let p = |id| Product::new(id, tau_variant.clone(), Default::default());
    let (dot, bullet, star) = (p(ProductId::Dot), p(ProductId::Bullet), p(ProductId::Star));
    let t1 = |x: &Multivector| tau(x, tau_variant);
    let t2 = |x: &Multivector| tau(&tau(x, tau_variant), tau_variant);
    let bar = full_grade_inversion;
    let e = {
        let alg = Algebra::new(&AlgebraHandle::new(s, ProductId::Star).with_tau(tau_variant.clone()))?;
        alg.idempotent_witness()
            .map(|v| alg.to_multivector(&v))
            .unwrap_or_else(|| Multivector::one(s))
    };
    let one = Multivector::one(s);
    let trivial = |row, column, expr: &str| Table2Cell {
        row,
        column,
        identity: expr.to_string(),
        trivial: true,
        verdict: Verdict::Holds,
    };

    let mut cells = Vec::with_capacity(9);
    cells.push(trivial("x*y", "Okubo", "x*y = x*y"));
    cells.push(Table2Cell {
        row: "x*y",
        column: "pO",
        identity: "x*y = tau(x) . tau^2(y) with the bullet product".into(),
        trivial: false,
        verdict: check_basis_pairs(
            s,
            "x*y = tau(x) bullet tau^2(y)",
            |x, y| star.apply(x, y),
            |x, y| bullet.apply(&t1(x), &t2(y)),
        )?,
    });
    cells.push(Table2Cell {
        row: "x*y",
        column: "O",
        identity: "x*y = tau(bar x) . tau^2(bar y) with the dot product".into(),
        trivial: false,
        verdict: check_basis_pairs(
            s,
            "x*y = tau(bar x) dot tau^2(bar y)",
            |x, y| star.apply(x, y),
            |x, y| dot.apply(&t1(&bar(x)), &t2(&bar(y))),
        )?,
    });
    cells.push(Table2Cell {
        row: "x bullet y",
        column: "Okubo",
        identity: "x bullet y = tau^2(x) * tau(y)".into(),
        trivial: false,
        verdict: check_basis_pairs(
            s,
            "x bullet y = tau^2(x) * tau(y)",
            |x, y| bullet.apply(x, y),
            |x, y| star.apply(&t2(x), &t1(y)),
        )?,
    });
    cells.push(trivial("x bullet y", "pO", "x bullet y = x bullet y"));
    cells.push(Table2Cell {
        row: "x bullet y",
        column: "O",
        identity: "x bullet y = bar x dot bar y".into(),
        trivial: false,
        verdict: check_basis_pairs(
            s,
            "x bullet y = bar x dot bar y",
            |x, y| bullet.apply(x, y),
            |x, y| dot.apply(&bar(x), &bar(y)),
        )?,
    });
    cells.push(Table2Cell {
        row: "x dot y",
        column: "Okubo",
        identity: format!("x dot y = (e*x)*(y*e), e = {e}"),
        trivial: false,
        verdict: check_basis_pairs(
            s,
            &format!("x dot y = (e*x)*(y*e), e = {e}"),
            |x, y| dot.apply(x, y),
            |x, y| star.apply(&star.apply(&e, x)?, &star.apply(y, &e)?),
        )?,
    });
    cells.push(Table2Cell {
        row: "x dot y",
        column: "pO",
        identity: "x dot y = (1 bullet x) bullet (y bullet 1)".into(),
        trivial: false,
        verdict: check_basis_pairs(
            s,
            "x dot y = (1 bullet x) bullet (y bullet 1)",
            |x, y| dot.apply(x, y),
            |x, y| bullet.apply(&bullet.apply(&one, x)?, &bullet.apply(y, &one)?),
        )?,
    });
    cells.push(trivial("x dot y", "O", "x dot y = x dot y"));
    Ok(cells)
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyRow {
    pub property: &'static str,
    pub claimed: [String; 3],
    pub computed: [String; 3],
}

#[derive(Clone, Debug, Serialize)]
pub struct Section2Table {
    pub columns: [String; 3],
    pub rows: Vec<PropertyRow>,
    pub reports: Vec<PropertyReport>,
}

/// The unital / paraunital / alternative / flexible / composition /
/// automorphism table for dot, bullet and star in (3,0).
pub fn section2(tau_variant: &TauVariant) -> Result<Section2Table> {
    let handles = [ProductId::Dot, ProductId::Bullet, ProductId::Star]
        .map(|id| AlgebraHandle::new(sig(3, 0), id).with_tau(tau_variant.clone()));
    let reports: Vec<PropertyReport> = handles
        .par_iter()
        .map(classify)
        .collect::<Result<_>>()?;
    let yn = |b: bool| if b { "Yes" } else { "No" }.to_string();
    let claim = |a: &str, b: &str, c: &str| [a.to_string(), b.to_string(), c.to_string()];
    let computed = |f: &dyn Fn(&PropertyReport) -> String| {
        [f(&reports[0]), f(&reports[1]), f(&reports[2])]
    };
    let rows = vec![
        PropertyRow {
            property: "Unital",
            claimed: claim("Yes", "No", "No"),
            computed: computed(&|r| yn(r.unit.is_some())),
        },
        PropertyRow {
            property: "Paraunital",
            claimed: claim("No", "Yes", "No"),
            computed: computed(&|r| yn(r.paraunit.is_some())),
        },
        PropertyRow {
            property: "Alternative",
            claimed: claim("Yes", "No", "No"),
            computed: computed(&|r| yn(r.flags.get(Flag::Alternative).holds())),
        },
        PropertyRow {
            property: "Flexible",
            claimed: claim("Yes", "Yes", "Yes"),
            computed: computed(&|r| yn(r.flags.get(Flag::Flexible).holds())),
        },
        PropertyRow {
            property: "Composition",
            claimed: claim("Yes", "Yes", "Yes"),
            computed: computed(&|r| yn(r.composition.holds())),
        },
        PropertyRow {
            property: "dim Der",
            claimed: claim("14", "14", "8"),
            computed: computed(&|r| r.der_dim.to_string()),
        },
    ];
    Ok(Section2Table {
        columns: claim("O", "pO", "Okubo"),
        rows,
        reports,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SubalgebraRow {
    pub signature: Signature,
    pub subalgebra: &'static str,
    pub norm: NormId,
    pub expected_signature: (usize, usize),
    pub computed_signature: (usize, usize),
    pub composition: Verdict,
    pub label: String,
}

impl SubalgebraRow {
    pub fn agrees(&self) -> bool {
        self.expected_signature == self.computed_signature && self.composition.holds()
    }
}

/// Norm signatures of (Rot, ñ) and (Ps, n̄) under the geometric product.
pub fn section3() -> Result<Vec<SubalgebraRow>> {
    let mut jobs = Vec::new();
    for s in Signature::ALL {
        let rot = if s.p() == 3 || s.p() == 0 { (4, 0) } else { (2, 2) };
        let ps = if s.lambda_product() == 1 { (2, 0) } else { (1, 1) };
        jobs.push((s, Carrier::Rot, "Rot", NormId::NTilde, rot));
        jobs.push((s, Carrier::Ps, "Ps", NormId::NBar, ps));
    }
    jobs.into_par_iter()
        .map(|(s, carrier, name, norm, expected)| {
            let handle = AlgebraHandle::new(s, ProductId::Clifford).with_carrier(carrier);
            let alg = Algebra::new(&handle)?;
            let report = classify(&handle)?;
            Ok(SubalgebraRow {
                signature: s,
                subalgebra: name,
                norm,
                expected_signature: expected,
                computed_signature: alg.norm_form(norm)?.signature(),
                composition: alg.verify_composition(norm)?,
                label: report.label,
            })
        })
        .collect()
}

/// The 4 × 6 matrix of signatures against the six octonionic products.
pub fn classify_all(tau_variant: &TauVariant) -> Result<Vec<ClassifyCell>> {
    let mut handles = Vec::new();
    for s in Signature::ALL {
        for id in ProductId::OCTONIONIC {
            handles.push(AlgebraHandle::new(s, id).with_tau(tau_variant.clone()));
        }
    }
    handles
        .par_iter()
        .map(|h| {
            let report = classify(h)?;
            let claimed = claimed_octonionic_label(h.sig, h.product).expect("octonionic product");
            Ok(ClassifyCell::from_report(&report, claimed))
        })
        .collect()
}
