//! Integer Smith and Hermite normal forms, and the abelianization of a
//! presentation.

use num_integer::Integer;
use serde::Serialize;

use super::{Presentation, Word};

type Mat = Vec<Vec<i128>>;

fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

/// Diagonalizes `a` (m x n) in place by unimodular row and column operations,
/// returning the column transform `v` with `u * a * v = d`.
fn smith_in_place(a: &mut Mat, cols: usize) -> Mat {
    let m = a.len();
    let n = cols;
    let mut v = identity(n);
    let swap_cols = |a: &mut Mat, v: &mut Mat, i: usize, j: usize| {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
        for row in v.iter_mut() {
            row.swap(i, j);
        }
    };
    // col j -= q * col k
    let col_sub = |a: &mut Mat, v: &mut Mat, j: usize, k: usize, q: i128| {
        for row in a.iter_mut() {
            row[j] -= q * row[k];
        }
        for row in v.iter_mut() {
            row[j] -= q * row[k];
        }
    };
    for t in 0..m.min(n) {
        loop {
            // smallest nonzero entry in the lower-right block
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { return v };
            a.swap(t, pi);
            swap_cols(a, &mut v, t, pj);
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..m {
                let q = Integer::div_floor(&a[i][t], &p);
                if q != 0 {
                    let (top, rest) = a.split_at_mut(i);
                    for (x, y) in rest[0].iter_mut().zip(top[t].iter()) {
                        *x -= q * y;
                    }
                }
                if a[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let q = Integer::div_floor(&a[t][j], &p);
                if q != 0 {
                    col_sub(a, &mut v, j, t, q);
                }
                if a[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into row t
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    let (top, rest) = a.split_at_mut(i);
                    for (x, y) in top[t].iter_mut().zip(rest[0].iter()) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            a[t][t] = -a[t][t];
        }
    }
    v
}

/// Invariant factors of an integer matrix (nonzero diagonal of its Smith form).
pub fn smith_invariants(a: &[Vec<i64>], cols: usize) -> Vec<i64> {
    let mut m: Mat = a
        .iter()
        .map(|r| r.iter().map(|&x| i128::from(x)).collect())
        .collect();
    smith_in_place(&mut m, cols);
    (0..m.len().min(cols))
        .map(|i| m[i][i].abs() as i64)
        .filter(|&d| d != 0)
        .collect()
}

/// Row-style Hermite normal form: echelon rows, positive pivots, entries above
/// each pivot reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hermite_rows(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut a: Mat = rows
        .iter()
        .map(|r| r.iter().map(|&x| i128::from(x)).collect())
        .collect();
    let n = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..n {
        if r == a.len() {
            break;
        }
        loop {
            let piv = (r..a.len())
                .filter(|&i| a[i][c] != 0)
                .min_by_key(|&i| a[i][c].abs());
            let Some(pi) = piv else { break };
            a.swap(r, pi);
            let mut done = true;
            for i in r + 1..a.len() {
                let q = Integer::div_floor(&a[i][c], &a[r][c]);
                if q != 0 {
                    let (top, rest) = a.split_at_mut(i);
                    for (x, y) in rest[0].iter_mut().zip(top[r].iter()) {
                        *x -= q * y;
                    }
                }
                if a[i][c] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[r][c] == 0 {
            continue;
        }
        if a[r][c] < 0 {
            for x in a[r].iter_mut() {
                *x = -*x;
            }
        }
        for i in 0..r {
            let q = Integer::div_floor(&a[i][c], &a[r][c]);
            if q != 0 {
                let (top, rest) = a.split_at_mut(r);
                for (x, y) in top[i].iter_mut().zip(rest[0].iter()) {
                    *x -= q * y;
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    a.into_iter()
        .map(|row| row.into_iter().map(|x| x as i64).collect())
        .collect()
}

/// The abelianization `G_ab = Z^b + torsion` together with the projection of
/// every generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianizationData {
    pub num_generators: usize,
    pub free_rank: usize,
    /// Invariant factors greater than one, each dividing the next.
    pub torsion_factors: Vec<i64>,
    /// Row `i` is the image of generator `i` in the free part `Z^b`.
    pub free_projection: Vec<Vec<i64>>,
    /// Row `i` is the image of generator `i` in the torsion part.
    pub torsion_projection: Vec<Vec<i64>>,
}

impl AbelianizationData {
    /// Image of a word in the free part.
    pub fn project_free(&self, w: &Word) -> Vec<i64> {
        let mut out = vec![0i64; self.free_rank];
        for &l in w.letters() {
            let row = &self.free_projection[(l.unsigned_abs() - 1) as usize];
            let s = if l > 0 { 1 } else { -1 };
            for (o, x) in out.iter_mut().zip(row) {
                *o += s * x;
            }
        }
        out
    }

    /// Image of a word in the torsion part, reduced modulo the factors.
    pub fn project_torsion(&self, w: &Word) -> Vec<i64> {
        let mut out = vec![0i64; self.torsion_factors.len()];
        for &l in w.letters() {
            let row = &self.torsion_projection[(l.unsigned_abs() - 1) as usize];
            let s = if l > 0 { 1 } else { -1 };
            for (o, x) in out.iter_mut().zip(row) {
                *o += s * x;
            }
        }
        for (o, d) in out.iter_mut().zip(&self.torsion_factors) {
            *o = o.rem_euclid(*d);
        }
        out
    }

    /// Names for the free basis: a generator mapping onto the basis vector if
    /// one exists, otherwise `e<k>`.
    pub fn basis_names(&self, generators: &[String]) -> Vec<String> {
        (0..self.free_rank)
            .map(|k| {
                let unit: Vec<i64> = (0..self.free_rank).map(|j| i64::from(j == k)).collect();
                self.free_projection
                    .iter()
                    .position(|row| *row == unit)
                    .map_or_else(|| format!("e{}", k + 1), |i| generators[i].clone())
            })
            .collect()
    }

    /// `Z^b + Z/d1 + ...`
    pub fn summary(&self) -> String {
        let mut parts = Vec::new();
        if self.free_rank > 0 || self.torsion_factors.is_empty() {
            parts.push(format!("Z^{}", self.free_rank));
        }
        for d in &self.torsion_factors {
            parts.push(format!("Z/{d}"));
        }
        parts.join(" + ")
    }
}

/// Smith normal form of the relator exponent matrix.
pub fn abelianize(p: &Presentation) -> AbelianizationData {
    let n = p.num_generators();
    let mut a: Mat = p
        .relators
        .iter()
        .map(|r| r.exponent_vector(n).into_iter().map(i128::from).collect())
        .collect();
    let v = smith_in_place(&mut a, n);
    let diag: Vec<i128> = (0..n)
        .map(|i| if i < a.len() { a[i][i] } else { 0 })
        .collect();
    let rank = diag.iter().take_while(|&&d| d != 0).count();

    // Free part: columns rank.. of v, canonicalized by a Hermite form of the transpose.
    let free_t: Vec<Vec<i64>> = (rank..n)
        .map(|j| (0..n).map(|i| v[i][j] as i64).collect())
        .collect();
    let free_t = hermite_rows(&free_t);
    let free_rank = free_t.len();
    let free_projection = (0..n)
        .map(|i| free_t.iter().map(|row| row[i]).collect())
        .collect();

    let tors: Vec<usize> = (0..rank).filter(|&i| diag[i] > 1).collect();
    let torsion_factors: Vec<i64> = tors.iter().map(|&i| diag[i] as i64).collect();
    let torsion_projection = (0..n)
        .map(|g| {
            tors.iter()
                .map(|&i| v[g][i].rem_euclid(diag[i]) as i64)
                .collect()
        })
        .collect();

    AbelianizationData {
        num_generators: n,
        free_rank,
        torsion_factors,
        free_projection,
        torsion_projection,
    }
}
