use super::*;
use crate::clifford::Blade;

fn s(p: u8, q: u8) -> Signature {
    Signature::new(p, q).unwrap()
}

fn alg(p: u8, q: u8, id: ProductId) -> Algebra {
    Algebra::new(&AlgebraHandle::new(s(p, q), id)).unwrap()
}

#[test]
fn dot_in_30_is_octonions() {
    let a = alg(3, 0, ProductId::Dot);
    assert_eq!(a.find_unit().unwrap(), Some(a.unit_vector(0)));
    assert!(a.find_paraunit().is_none());
    assert!(a.check_flag(Flag::Alternative).holds());
    assert!(a.check_flag(Flag::Flexible).holds());
    assert!(!a.check_flag(Flag::Associative).holds());
    assert!(a.verify_composition(NormId::NStar).unwrap().holds());
    assert_eq!(a.derivation_dimension(), 14);
    let q = a.intrinsic_norm_from_unit(&a.unit_vector(0)).unwrap();
    assert_eq!(q.signature(), (8, 0));
    assert_eq!(q.polar, a.gram(NormId::NStar).unwrap());
}

#[test]
fn dot_symmetric_composition_witness() {
    let a = alg(3, 0, ProductId::Dot);
    let v = a.symmetric_composition_check(NormId::NStar).unwrap();
    assert!(!v.holds());
}

#[test]
fn bullet_in_30_is_para_octonions() {
    let a = alg(3, 0, ProductId::Bullet);
    assert_eq!(a.find_unit().unwrap(), None);
    assert_eq!(a.find_paraunit(), Some(a.unit_vector(0)));
    assert!(a.check_flag(Flag::Flexible).holds());
    assert!(!a.check_flag(Flag::Alternative).holds());
    assert!(a.symmetric_composition_check(NormId::NStar).unwrap().holds());
    assert_eq!(a.derivation_dimension(), 14);
}

#[test]
fn literal_star_has_no_unit_and_breaks_composition() {
    let a = alg(3, 0, ProductId::Star);
    assert_eq!(a.find_unit().unwrap(), None);
    assert_eq!(a.find_paraunit(), None);
    assert_eq!(a.idempotent_witness(), Some(a.unit_vector(0)));
    let v = a.verify_composition(NormId::NStar).unwrap();
    assert!(v.witness().is_some());
}

#[test]
fn star_composed_composes_in_30() {
    let a = alg(3, 0, ProductId::StarComposed);
    assert!(a.verify_composition(NormId::NStar).unwrap().holds());
}

#[test]
fn clifford_with_ndagger_is_not_composition() {
    let a = alg(3, 0, ProductId::Clifford);
    let v = a.verify_composition(NormId::NDagger).unwrap();
    assert!(v.witness().is_some());
    assert!(a.check_flag(Flag::Associative).holds());
}

#[test]
fn rot_clifford_is_associative_quaternions() {
    let h = AlgebraHandle::new(s(3, 0), ProductId::Clifford).with_carrier(Carrier::Rot);
    let r = classify(&h).unwrap();
    assert_eq!(r.label, "H");
    assert!(r.flags.associative.holds());
    assert!(!r.flags.commutative.holds());
}

#[test]
fn split_labels() {
    let r = classify(&AlgebraHandle::new(s(2, 1), ProductId::Dot)).unwrap();
    assert_eq!(r.label, "O_s");
    assert_eq!(r.intrinsic_norm_signature, Some((4, 4)));
    let r = classify(&AlgebraHandle::new(s(2, 1), ProductId::Bullet)).unwrap();
    assert_eq!(r.label, "pO_s");
    let r = classify(&AlgebraHandle::new(s(3, 0), ProductId::Bullet)).unwrap();
    assert_eq!(r.label, "pO");
}

#[test]
fn para_subalgebras() {
    let r = classify(&AlgebraHandle::new(s(3, 0), ProductId::RotParaTilde)).unwrap();
    assert_eq!(r.label, "pH");
    assert!(r.flags.flexible.holds());
    assert!(!r.flags.associative.holds());
    let r = classify(&AlgebraHandle::new(s(3, 0), ProductId::PsParaBar)).unwrap();
    assert_eq!(r.label, "pC");
    assert!(r.flags.commutative.holds());
    let r = classify(&AlgebraHandle::new(s(0, 3), ProductId::PsParaBar)).unwrap();
    assert_eq!(r.label, "pC_s");
}

#[test]
fn unit_and_paraunit_are_exclusive() {
    for sig in Signature::ALL {
        for id in ProductId::ALL {
            let a = alg(sig.p(), sig.q(), id);
            if let Ok(Some(_)) = a.find_unit() {
                assert!(a.find_paraunit().is_none(), "{sig} {id}");
            }
        }
    }
}

#[test]
fn automorphisms() {
    let a = alg(3, 0, ProductId::Clifford);
    assert!(a.automorphism_check(&Matrix::identity(8)).unwrap().holds());
    let gi = crate::linalg::LinearMap::from_images(std::array::from_fn(|j| {
        crate::involutions::grade_inversion(&Multivector::basis(s(3, 0), j)).into_coords()
    }));
    assert!(a.automorphism_check(&gi.to_matrix()).unwrap().holds());
    let r = a.automorphism_check(&Matrix::zeros(8, 8));
    assert!(matches!(r, Err(Error::SingularMatrix(_))));
}

#[test]
fn corrected_tau_is_an_isometry_in_30() {
    let a = alg(3, 0, ProductId::Dot);
    let m = TauVariant::Corrected.map().to_matrix();
    assert!(a.isometry_check(&m, NormId::NStar).unwrap().holds());
}

#[test]
fn biquaternion_example() {
    let x = Multivector::blade(s(3, 0), Blade::E1);
    let (q0, q1) = biquaternion_decompose(&x);
    assert!(q0.is_zero());
    assert_eq!(q1, -Multivector::blade(s(3, 0), Blade::E23));
    for sig in Signature::ALL {
        assert!(verify_biquaternion_rows(sig).iter().all(|r| r.verdict.holds()));
    }
}

#[test]
fn section3_signatures() {
    let rows = tables::section3().unwrap();
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|r| r.agrees()), "{rows:#?}");
}

#[test]
fn table2_verified_rows() {
    let cells = tables::table2(&TauVariant::Corrected).unwrap();
    let get = |id: &str| cells.iter().find(|c| c.identity == id).unwrap();
    assert!(get("x bullet y = bar x dot bar y").verdict.holds());
    assert!(get("x dot y = (1 bullet x) bullet (y bullet 1)").verdict.holds());
}

