use num_rational::BigRational;

use novsig::complexes::dualize;
use novsig::engine::{
    cd_drop_report, check_homology_vanishing, cover_sphere, one_relator_h2_rule, polyz_series,
    sigma_star_report, virtual_search, StructuralReason,
};
use novsig::laurent::{laurent_character, to_chain_complex, LaurentComplex, LaurentMatrix};
use novsig::{parse_presentation, Character, EngineOptions, Error, Field, Session, Verdict};

fn session(text: &str) -> Session {
    Session::new(
        parse_presentation(text).unwrap(),
        Field::Rationals,
        (200, 40),
        EngineOptions::default(),
    )
    .unwrap()
}

fn ints(s: &Session, v: &[i64]) -> Character {
    Character::from_integers(&s.abelianization, v).unwrap()
}

const KLEIN: &str = "group Klein\ngens a t\nrel t a t^-1 a";
const BS12: &str = "group BS(1,2)\ngens a t\nrel t a t^-1 a^-2";

#[test]
fn bs12_cd_drop_is_unknown() {
    let s = session(BS12);
    let (r, v) = cd_drop_report(&s, &ints(&s, &[1]), 2).unwrap();
    assert!(!(v[0].vanishes() && v[1].vanishes()));
    assert!(r.conclusion.starts_with("Unknown"), "{}", r.conclusion);
    assert!(!r.conclusive);
}

#[test]
fn surface_h2_vanishes_by_the_one_relator_rule() {
    let s = session("gens a b c d\nrel a b a^-1 b^-1 c d c^-1 d^-1");
    for v in [[1, 0, 0, 0], [2, -1, 3, 1], [0, 0, 0, -1]] {
        let chi = ints(&s, &v);
        assert!(one_relator_h2_rule(&s.presentation, &chi)
            .unwrap()
            .vanishes());
        let e = check_homology_vanishing(&s.complex, &chi, (2, 2), &s.options).unwrap();
        let cert = e.certificate().unwrap();
        assert_eq!(
            cert.structural,
            vec![(2, StructuralReason::OneRelatorDomain)]
        );
        assert!(cert.cone.is_full());
    }
}

#[test]
fn one_relator_rule_rejects_torsion() {
    let p = parse_presentation("gens a\nrel a^2").unwrap();
    let s = session("gens t");
    assert_eq!(
        one_relator_h2_rule(&p, &ints(&s, &[1])).unwrap_err(),
        Error::ProperPowerRelator
    );
}

#[test]
fn rank_one_cover_is_cd_drop() {
    let s = session(KLEIN);
    let cover = cover_sphere(&s, &[vec![0], vec![1]], 2, 4).unwrap();
    assert!(cover.covered, "{}", cover.to_json());
    assert_eq!(cover.conclusion, "covered by 2 cones; cd(N) <= 1");
    let (r, _) = cd_drop_report(&s, &ints(&s, &[1]), 2).unwrap();
    assert!(r.conclusive);
}

#[test]
fn free_group_cover_reports_a_witness() {
    let s = session("group F2\ngens x y");
    let cover = cover_sphere(&s, &[vec![1, 0], vec![0, 1]], 1, 12).unwrap();
    assert!(!cover.covered);
    assert!(cover.cones.is_empty());
    assert!(cover.uncovered_witness.is_some());
    assert!(cover.conclusion.starts_with("not covered"));
}

#[test]
fn cover_rejects_maps_that_do_not_kill_relators() {
    let s = session(BS12);
    assert!(matches!(
        cover_sphere(&s, &[vec![1], vec![0]], 2, 4),
        Err(Error::QuotientNotDefined(1))
    ));
}

#[test]
fn polyz_series_of_z2() {
    let s = session("gens x y\nrel x y x^-1 y^-1");
    let q = [vec![1, 0], vec![0, 1]];
    let series = polyz_series(&s, &q, &[]).unwrap();
    assert_eq!(series.rank, 2);
    assert_eq!(series.characters.len(), 2);
    let swapped = polyz_series(&s, &q, &[1, 0]).unwrap();
    assert_ne!(series.characters, swapped.characters);
    let single = polyz_series(&s, &[vec![1], vec![0]], &[]).unwrap();
    assert_eq!(single.characters.len(), 1);
}

#[test]
fn virtual_search_examples() {
    let p = parse_presentation(KLEIN).unwrap();
    let kb = (200, 40);
    let opts = EngineOptions::default();
    let trivial = vec![vec![vec![0], vec![0]]];
    let r = virtual_search(&p, Field::Rationals, kb, &opts, &trivial, 2).unwrap();
    assert_eq!(r.found, Some(0));

    let bs = parse_presentation(BS12).unwrap();
    let r = virtual_search(&bs, Field::Rationals, kb, &opts, &trivial, 2).unwrap();
    assert_eq!(r.found, None);

    let r = virtual_search(&p, Field::Rationals, kb, &opts, &[], 2).unwrap();
    assert!(r.entries.is_empty() && r.found.is_none());
}

#[test]
fn zero_complex_vanishes_with_full_cone() {
    let lc = LaurentComplex::new(
        Field::Rationals,
        vec![0, 0],
        vec![LaurentMatrix::zeros(Field::Rationals, 0, 0)],
    )
    .unwrap();
    let c = to_chain_complex(&lc).unwrap();
    let v = check_homology_vanishing(&c, &laurent_character(1), (0, 1), &EngineOptions::default())
        .unwrap();
    let cert = v.certificate().unwrap();
    assert!(cert.cone.is_full() && cert.contraction.is_empty());
}

#[test]
fn dual_of_dual_is_the_complex() {
    let s = session(BS12);
    let d = dualize(&dualize(&s.complex));
    for i in 1..=s.complex.top() as isize {
        assert_eq!(d.boundary(i), s.complex.boundary(i));
    }
}

#[test]
fn sigma_star_two_implies_one_on_z2() {
    let s = session("gens x y\nrel x y x^-1 y^-1");
    let chi = s
        .character(&[
            BigRational::new(5.into(), 3.into()),
            BigRational::from_integer((-2).into()),
        ])
        .unwrap();
    let (two, v2) = sigma_star_report(&s, &chi, 2, 2).unwrap();
    let (_, v1) = sigma_star_report(&s, &chi, 2, 1).unwrap();
    assert!(two.conclusive);
    for (a, b) in v2.iter().zip(&v1) {
        assert!(!a.vanishes() || b.vanishes());
        assert!(!matches!(b, Verdict::NonVanishingCertified(_)));
    }
}
