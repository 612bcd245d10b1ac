use num_rational::BigRational;

use super::*;
use crate::field::Field;
use crate::presentation::parse_presentation;

fn session(text: &str) -> Session {
    Session::new(
        parse_presentation(text).unwrap(),
        Field::Rationals,
        (200, 40),
        EngineOptions::default(),
    )
    .unwrap()
}

fn chi(s: &Session, v: &[i64]) -> Character {
    Character::from_integers(&s.abelianization, v).unwrap()
}

fn check_cert(s: &Session, v: &Verdict, c: &Character) {
    if let Some(cert) = v.certificate() {
        cert.verify(&s.complex, c).unwrap();
    }
}

#[test]
fn z_both_degrees_vanish() {
    let s = session("gens t");
    for sign in [1, -1] {
        let c = chi(&s, &[sign]);
        let v = check_homology_vanishing(&s.complex, &c, (0, 1), &s.options).unwrap();
        assert!(v.vanishes(), "{v:?}");
        check_cert(&s, &v, &c);
        let v = check_cohomology_vanishing(&s.complex, &c, (0, 1), &s.options).unwrap();
        assert!(v.vanishes(), "{v:?}");
        check_cert(&s, &v, &c);
        assert_eq!(v.certificate().unwrap().cone.strict(), vec![vec![sign]]);
    }
}

#[test]
fn free_group_is_never_in_sigma() {
    let s = session("gens x y");
    for v in [[1, 0], [1, 1], [2, -3], [0, -1]] {
        let verdict = sigma_membership(&s.complex, &chi(&s, &v), &s.options).unwrap();
        assert!(!verdict.vanishes());
    }
}

#[test]
fn bs12_one_sign() {
    let s = session("gens a t\nrel t a t^-1 a^-2");
    let plus = sigma_membership(&s.complex, &chi(&s, &[1]), &s.options).unwrap();
    let minus = sigma_membership(&s.complex, &chi(&s, &[-1]), &s.options).unwrap();
    assert!(plus.vanishes() != minus.vanishes(), "{plus:?} {minus:?}");
    assert!(minus.vanishes());
    check_cert(&s, &minus, &chi(&s, &[-1]));
}

#[test]
fn klein_cd_drop() {
    let s = session("gens a t\nrel t a t^-1 a");
    let (r, v) = cd_drop_report(&s, &chi(&s, &[1]), 2).unwrap();
    assert!(v[0].vanishes() && v[1].vanishes(), "{}", r.to_json());
    assert_eq!(
        r.conclusion,
        "cd(ker) = 1; kernel free of rank 1 (Stallings-Swan)"
    );
    check_cert(&s, &v[0], &chi(&s, &[1]));
    check_cert(&s, &v[1], &chi(&s, &[-1]));
}

#[test]
fn bs23_top_cohomology_undecided() {
    let s = session("gens a t\nrel t a^2 t^-1 a^-3");
    for sign in [1, -1] {
        let c = chi(&s, &[sign]);
        let h2 = check_homology_vanishing(&s.complex, &c, (2, 2), &s.options).unwrap();
        assert!(h2.vanishes());
    }
    let (r, v) = cd_drop_report(&s, &chi(&s, &[1]), 2).unwrap();
    assert!(!(v[0].vanishes() && v[1].vanishes()));
    assert!(
        r.conclusion.contains("not residually finite"),
        "{}",
        r.conclusion
    );
}

#[test]
fn z2_cover() {
    let s = session("gens x y\nrel x y x^-1 y^-1");
    let rep = cover_sphere(&s, &[vec![1, 0], vec![0, 1]], 2, 16).unwrap();
    assert!(rep.covered, "{}", rep.to_json());
    assert!(rep.cones.len() <= 8);
}

#[test]
fn scaling_invariance() {
    let s = session("gens a t\nrel t a t^-1 a^-2");
    let c = chi(&s, &[-1]);
    let half = Character::from_vector(
        &s.abelianization,
        &[BigRational::new((-7).into(), 2.into())],
    )
    .unwrap();
    let a = sigma_membership(&s.complex, &c, &s.options).unwrap();
    let b = sigma_membership(&s.complex, &half, &s.options).unwrap();
    assert_eq!(a.label(), b.label());
    assert_eq!(a.certificate().unwrap().cone, b.certificate().unwrap().cone);
}

#[test]
fn monotone_restriction() {
    let s = session("gens x y\nrel x y x^-1 y^-1");
    let c = chi(&s, &[1, 2]);
    let v2 = sigma_star_membership(&s.complex, &c, 2, 2, &s.options).unwrap();
    let cert = v2.certificate().unwrap();
    let r = cert.restrict(2, 2).unwrap();
    r.verify(&s.complex, &c).unwrap();
}

#[test]
fn one_relator_rule_errors() {
    let p = parse_presentation("gens a\nrel a^2").unwrap();
    let s = session("gens a t\nrel t a t^-1 a^-2");
    assert_eq!(
        one_relator_h2_rule(&p, &chi(&s, &[1])).unwrap_err(),
        Error::ProperPowerRelator
    );
    assert!(one_relator_h2_rule(&s.presentation, &chi(&s, &[1]))
        .unwrap()
        .vanishes());
}

#[test]
fn degree_out_of_range() {
    let s = session("gens a b c\nrel a b a^-1 b^-1\nrel a c a^-1 c^-1");
    let c = chi(&s, &[1, 0, 0]);
    assert!(matches!(
        sigma_star_membership(&s.complex, &c, 3, 1, &s.options),
        Err(Error::DegreeOutOfRange { degree: 3, top: 2 })
    ));
}
