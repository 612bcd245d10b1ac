//! Seeded random three-term complexes over `k[t, t^-1]`.

use rand::Rng;

use super::{LaurentComplex, LaurentMatrix, LaurentPoly};
use crate::field::Field;

fn random_poly<R: Rng>(rng: &mut R, field: Field) -> LaurentPoly {
    if rng.gen_bool(0.1) {
        return LaurentPoly::zero(field);
    }
    let span = rng.gen_range(0..=3usize);
    let mut c: Vec<i64> = (0..=span).map(|_| rng.gen_range(-3..=3)).collect();
    for end in [0, span] {
        while c[end] == 0 {
            c[end] = rng.gen_range(-3..=3);
        }
    }
    LaurentPoly::from_ints(field, 0, &c)
}

/// A change of basis `row_a += c row_b` in degree `i`, and its inverse on `D_{i+1}`.
fn elementary(
    ds: &mut [LaurentMatrix],
    ranks: &[usize],
    i: usize,
    a: usize,
    b: usize,
    c: i64,
    field: Field,
) {
    let f = LaurentPoly::from_ints(field, 0, &[c]);
    if i >= 1 {
        ds[i - 1].add_row_multiple(a, b, &f);
    }
    if i + 1 < ranks.len() {
        ds[i].add_col_multiple(b, a, &f.neg());
    }
}

/// Ranks at most 4, entries of span at most 3, `C_2 -> C_1 -> C_0`.
///
/// Built as a sum of elementary pieces `k[t^+-] --f--> k[t^+-]` and lone free
/// modules, then scrambled by constant changes of basis and degree shifts, so
/// roughly half of the instances are acyclic over `k(t)`.
pub fn random_complex<R: Rng>(rng: &mut R, field: Field) -> LaurentComplex {
    loop {
        let a = rng.gen_range(0..=2usize);
        let b = rng.gen_range(0..=2usize);
        let mut lone = [0usize; 3];
        if rng.gen_bool(0.5) {
            lone[rng.gen_range(0..3)] += 1;
        }
        let ranks = [a + lone[0], a + b + lone[1], b + lone[2]];
        if ranks.iter().any(|&r| r > 4) || ranks.iter().all(|&r| r == 0) {
            continue;
        }
        let mut d1 = LaurentMatrix::zeros(field, ranks[1], ranks[0]);
        let mut d2 = LaurentMatrix::zeros(field, ranks[2], ranks[1]);
        for k in 0..a {
            d1.set(k, k, random_poly(rng, field));
        }
        for k in 0..b {
            d2.set(k, a + k, random_poly(rng, field));
        }
        let mut ds = vec![d1, d2];
        for i in 0..3 {
            let r = ranks[i];
            if r < 2 {
                continue;
            }
            for _ in 0..rng.gen_range(1..=3) {
                let x = rng.gen_range(0..r);
                let mut y = rng.gen_range(0..r);
                while y == x {
                    y = rng.gen_range(0..r);
                }
                let c = [-2, -1, 1, 2][rng.gen_range(0..4)];
                elementary(&mut ds, &ranks, i, x, y, c, field);
            }
        }
        let shifts: Vec<i64> = (0..3).map(|_| rng.gen_range(-1..=1)).collect();
        for i in 1..3 {
            let s = shifts[i] - shifts[i - 1];
            let m = &mut ds[i - 1];
            for r in 0..m.rows {
                m.scale_row(r, &LaurentPoly::t_pow(field, s));
            }
        }
        return LaurentComplex::new(field, ranks.to_vec(), ds).expect("built as a complex");
    }
}
