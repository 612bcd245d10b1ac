use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;

const Q: Field = Field::Rationals;

fn p(low: i64, c: &[i64]) -> LaurentPoly {
    LaurentPoly::from_ints(Q, low, c)
}

fn check_snf(a: &LaurentMatrix) -> SnfResult {
    let s = snf(a);
    assert_eq!(s.u.mul(a).mul(&s.v), s.diagonal);
    for (k, d) in s.invariants.iter().enumerate() {
        assert_eq!(s.diagonal.get(k, k), d);
        if k > 0 {
            assert!(d.div_exact(&s.invariants[k - 1]).is_some());
        }
    }
    s
}

#[test]
fn snf_examples() {
    let t1 = p(0, &[-1, 1]);
    let s = check_snf(&LaurentMatrix::from_rows(Q, vec![vec![t1.clone()]], 1));
    assert_eq!(s.invariants, vec![p(0, &[-1, 1])]);
    let z = LaurentPoly::zero(Q);
    let s = check_snf(&LaurentMatrix::from_rows(
        Q,
        vec![vec![t1.clone(), z.clone()], vec![z, t1]],
        2,
    ));
    assert_eq!(s.invariants.len(), 2);
    let s = check_snf(&LaurentMatrix::from_rows(
        Q,
        vec![
            vec![p(0, &[2]), p(1, &[1])],
            vec![p(1, &[1]), p(0, &[-1, 0, 1])],
        ],
        2,
    ));
    // det = 2t^2 - 2 - t^2 = t^2 - 2
    assert_eq!(s.invariants, vec![LaurentPoly::one(Q), p(0, &[-2, 0, 1])]);
}

#[test]
fn fraction_field_dims() {
    let t1 = p(0, &[-1, 1]);
    let c = LaurentComplex::new(
        Q,
        vec![1, 1],
        vec![LaurentMatrix::from_rows(Q, vec![vec![t1]], 1)],
    )
    .unwrap();
    assert_eq!(homology_dims_fraction_field(&c), vec![0, 0]);
    assert!(finite_domination_check(&c));
    assert_eq!(homology_k_dims(&c).unwrap(), vec![Some(1), Some(0)]);
    let r = ranicki_verify(&c);
    assert!(r.agree && r.finitely_dominated && r.novikov_acyclic);

    let zero = LaurentComplex::new(Q, vec![1, 1], vec![LaurentMatrix::zeros(Q, 1, 1)]).unwrap();
    assert_eq!(homology_dims_fraction_field(&zero), vec![1, 1]);
    let r = ranicki_verify(&zero);
    assert!(r.agree && !r.finitely_dominated);
}

#[test]
fn torsion_sum_is_dominated() {
    let d = LaurentMatrix::from_rows(
        Q,
        vec![
            vec![p(0, &[-1, 1]), LaurentPoly::zero(Q)],
            vec![LaurentPoly::zero(Q), p(0, &[-3, 0, 1])],
        ],
        2,
    );
    let c = LaurentComplex::new(Q, vec![2, 2], vec![d]).unwrap();
    assert!(finite_domination_check(&c));
    assert_eq!(homology_k_dims(&c).unwrap(), vec![Some(3), Some(0)]);
}

#[test]
fn not_a_complex() {
    let t1 = p(0, &[-1, 1]);
    let d = LaurentMatrix::from_rows(Q, vec![vec![t1.clone()]], 1);
    assert_eq!(
        LaurentComplex::new(Q, vec![1, 1, 1], vec![d.clone(), d]).unwrap_err(),
        Error::NotAComplex(2)
    );
}

#[test]
fn json_round_trip() {
    let text = "[[[[[0,-1,1],[1,1,1]]]]]";
    let c = complex_from_json(text, Q).unwrap();
    assert_eq!(c.ranks(), &[1, 1]);
    let back = complex_from_json(&complex_to_json(&c), Q).unwrap();
    assert_eq!(back, c);
    assert!(complex_from_json("[[[[[0,1,0]]]]]", Q).is_err());
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let c = random_complex(&mut rng, Q);
        assert_eq!(complex_from_json(&complex_to_json(&c), Q).unwrap(), c);
    }
}

#[test]
fn random_complexes_respect_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut acyclic = 0;
    for _ in 0..100 {
        let c = random_complex(&mut rng, Q);
        assert!(c.ranks().iter().all(|&r| r <= 4));
        assert!(c.boundaries().iter().all(|d| d.max_span() <= 3));
        let r = ranicki_verify(&c);
        assert!(r.agree);
        acyclic += usize::from(r.novikov_acyclic);
    }
    assert!((20..=80).contains(&acyclic), "{acyclic}");
}

#[test]
fn bridge_to_group_ring() {
    let t1 = p(-1, &[2, 0, 1]);
    let c = LaurentComplex::new(
        Q,
        vec![1, 1],
        vec![LaurentMatrix::from_rows(Q, vec![vec![t1]], 1)],
    )
    .unwrap();
    let g = to_chain_complex(&c).unwrap();
    assert_eq!(
        g.boundary(1).get(0, 0).display_with(&["t".to_string()]),
        "t + 2*t^-1"
    );
    let back = complex_from_group(&g, &laurent_character(1)).unwrap();
    assert_eq!(back, c);
}
