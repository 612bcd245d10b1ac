//! Exact decision procedures over `k[t, t^-1]`, used as an independent oracle.
//!
//! For the untwisted univariate case a complex is acyclic over both Novikov
//! rings exactly when it is acyclic over `k(t)`, and finitely dominated over
//! `k` exactly when all its homology is `k[t, t^-1]`-torsion.

mod io;
mod poly;
mod random;

use std::sync::Arc;

use serde::Serialize;

pub use io::{complex_from_json, complex_to_json};
pub use poly::{LaurentMatrix, LaurentPoly};
pub use random::random_complex;

use crate::complexes::{ChainComplex, ComplexKind};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groupring::{GroupRing, GroupRingMatrix};
use crate::presentation::{parse_presentation, Character, Presentation, Word};

/// `U A V = diag(invariants)` with `U`, `V` invertible over `k[t, t^-1]`.
#[derive(Debug, Clone)]
pub struct SnfResult {
    pub u: LaurentMatrix,
    pub v: LaurentMatrix,
    /// Nonzero invariant factors, normalized monic with lowest exponent 0.
    pub invariants: Vec<LaurentPoly>,
    pub diagonal: LaurentMatrix,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }
}

/// Smith normal form by Euclidean elimination on spans.
pub fn snf(a: &LaurentMatrix) -> SnfResult {
    let field = a.field();
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = LaurentMatrix::identity(field, m);
    let mut v = LaurentMatrix::identity(field, n);
    let mut invariants = vec![];
    for k in 0..m.min(n) {
        loop {
            let mut best: Option<(i64, usize, usize)> = None;
            for i in k..m {
                for j in k..n {
                    let s = d.get(i, j).span();
                    if s >= 0 && best.is_none_or(|b| s < b.0) {
                        best = Some((s, i, j));
                    }
                }
            }
            let Some((_, pi, pj)) = best else {
                return finish(u, v, d, invariants);
            };
            d.swap_rows(k, pi);
            u.swap_rows(k, pi);
            d.swap_cols(k, pj);
            v.swap_cols(k, pj);
            let piv = d.get(k, k).clone();
            let mut clean = true;
            for i in k + 1..m {
                if d.get(i, k).is_zero() {
                    continue;
                }
                let (q, r) = d.get(i, k).div_rem(&piv);
                d.add_row_multiple(i, k, &q.neg());
                u.add_row_multiple(i, k, &q.neg());
                clean &= r.is_zero();
            }
            for j in k + 1..n {
                if d.get(k, j).is_zero() {
                    continue;
                }
                let (q, r) = d.get(k, j).div_rem(&piv);
                d.add_col_multiple(j, k, &q.neg());
                v.add_col_multiple(j, k, &q.neg());
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }
            let bad =
                (k + 1..m).find(|&i| (k + 1..n).any(|j| d.get(i, j).div_exact(&piv).is_none()));
            if let Some(i) = bad {
                d.add_row_multiple(k, i, &LaurentPoly::one(field));
                u.add_row_multiple(k, i, &LaurentPoly::one(field));
                continue;
            }
            let (normal, unit) = piv.normalize();
            let inv = unit.unit_inverse().expect("monomial");
            d.scale_row(k, &inv);
            u.scale_row(k, &inv);
            invariants.push(normal);
            break;
        }
    }
    finish(u, v, d, invariants)
}

fn finish(
    u: LaurentMatrix,
    v: LaurentMatrix,
    d: LaurentMatrix,
    invariants: Vec<LaurentPoly>,
) -> SnfResult {
    SnfResult {
        u,
        v,
        invariants,
        diagonal: d,
    }
}

/// Rank over `k(t)` by fraction-free Gaussian elimination.
pub fn rank_fraction_field(a: &LaurentMatrix) -> usize {
    let mut m = a.clone();
    let mut row = 0;
    for col in 0..m.cols {
        let Some(p) = (row..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
            continue;
        };
        m.swap_rows(row, p);
        let piv = m.get(row, col).clone();
        for i in row + 1..m.rows {
            let f = m.get(i, col).clone();
            if f.is_zero() {
                continue;
            }
            m.scale_row(i, &piv);
            m.add_row_multiple(i, row, &f.neg());
        }
        row += 1;
        if row == m.rows {
            break;
        }
    }
    row
}

/// `C_top -> ... -> C_0` over `k[t, t^-1]`, row-vector convention as in [`ChainComplex`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentComplex {
    field: Field,
    ranks: Vec<usize>,
    boundaries: Vec<LaurentMatrix>,
}

impl LaurentComplex {
    /// `boundaries[i - 1]` is `D_i: C_i -> C_{i-1}`, of shape `r_i x r_{i-1}`.
    pub fn new(field: Field, ranks: Vec<usize>, boundaries: Vec<LaurentMatrix>) -> Result<Self> {
        if ranks.is_empty() || boundaries.len() + 1 != ranks.len() {
            return Err(Error::InvalidInput(
                "need one more rank than boundary maps".into(),
            ));
        }
        for (k, d) in boundaries.iter().enumerate() {
            if d.rows != ranks[k + 1] || d.cols != ranks[k] {
                return Err(Error::DimensionMismatch {
                    expected: ranks[k + 1] * ranks[k],
                    got: d.rows * d.cols,
                });
            }
        }
        for k in 1..boundaries.len() {
            if !boundaries[k].mul(&boundaries[k - 1]).is_zero() {
                return Err(Error::NotAComplex(k + 1));
            }
        }
        Ok(LaurentComplex {
            field,
            ranks,
            boundaries,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn top(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn rank(&self, i: isize) -> usize {
        if i < 0 {
            0
        } else {
            self.ranks.get(i as usize).copied().unwrap_or(0)
        }
    }

    pub fn boundaries(&self) -> &[LaurentMatrix] {
        &self.boundaries
    }

    pub fn boundary(&self, i: isize) -> LaurentMatrix {
        if i >= 1 && (i as usize) <= self.boundaries.len() {
            self.boundaries[i as usize - 1].clone()
        } else {
            LaurentMatrix::zeros(self.field, self.rank(i), self.rank(i - 1))
        }
    }
}

/// `dim_{k(t)} H_i` for every degree.
pub fn homology_dims_fraction_field(c: &LaurentComplex) -> Vec<usize> {
    let rk: Vec<usize> = (0..=c.top() + 1)
        .map(|i| rank_fraction_field(&c.boundary(i as isize)))
        .collect();
    (0..=c.top())
        .map(|i| c.ranks[i] - rk[i] - rk[i + 1])
        .collect()
}

/// `dim_k H_i` when `H_i` is torsion, `None` when it has a free summand.
///
/// The torsion of `H_i` is `k[t,t^-1]^{r_i} / im D_{i+1}` restricted to its
/// torsion, whose dimension is the total span of the invariant factors.
pub fn homology_k_dims(c: &LaurentComplex) -> Result<Vec<Option<usize>>> {
    let s: Vec<SnfResult> = (0..=c.top() + 1)
        .map(|i| snf(&c.boundary(i as isize)))
        .collect();
    Ok((0..=c.top())
        .map(|i| {
            let free = c.ranks[i] - s[i].rank() - s[i + 1].rank();
            (free == 0).then(|| s[i + 1].invariants.iter().map(|d| d.span() as usize).sum())
        })
        .collect())
}

/// Finite domination over `k`: every homology module is torsion, decided by SNF.
pub fn finite_domination_check(c: &LaurentComplex) -> bool {
    let r: Vec<usize> = (0..=c.top() + 1)
        .map(|i| snf(&c.boundary(i as isize)).rank())
        .collect();
    (0..=c.top()).all(|i| c.ranks[i] == r[i] + r[i + 1])
}

/// Both sides of the finite-domination criterion, computed independently.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RanickiRecord {
    pub finitely_dominated: bool,
    pub novikov_acyclic: bool,
    pub fraction_field_dims: Vec<usize>,
    pub agree: bool,
}

impl std::fmt::Display for RanickiRecord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "finite domination: {}; Novikov-acyclic: {}; Ranicki: {}",
            self.finitely_dominated,
            self.novikov_acyclic,
            if self.agree { "AGREE" } else { "DISAGREE" }
        )
    }
}

pub fn ranicki_verify(c: &LaurentComplex) -> RanickiRecord {
    let finitely_dominated = finite_domination_check(c);
    let dims = homology_dims_fraction_field(c);
    let novikov_acyclic = dims.iter().all(|&d| d == 0);
    RanickiRecord {
        finitely_dominated,
        novikov_acyclic,
        fraction_field_dims: dims,
        agree: finitely_dominated == novikov_acyclic,
    }
}

/// The presentation `<t | >`.
pub fn laurent_presentation() -> Presentation {
    parse_presentation("gens t").expect("valid")
}

/// The character `t -> sign` on `<t | >`.
pub fn laurent_character(sign: i64) -> Character {
    let ab = crate::presentation::abelianize(&laurent_presentation());
    Character::from_integers(&ab, &[sign]).expect("rank one")
}

fn t_word(e: i64) -> Word {
    let g = if e >= 0 { 1 } else { -1 };
    Word::from_raw(vec![g; e.unsigned_abs() as usize])
}

/// The same complex over the group ring of `<t | >`.
pub fn to_chain_complex(c: &LaurentComplex) -> Result<ChainComplex> {
    let ring: Arc<GroupRing> = GroupRing::free(1, c.field);
    let boundaries = c
        .boundaries
        .iter()
        .map(|d| {
            let rows = (0..d.rows)
                .map(|i| {
                    (0..d.cols)
                        .map(|j| {
                            ring.from_terms(
                                d.get(i, j)
                                    .terms()
                                    .iter()
                                    .map(|(e, x)| (t_word(*e), x.clone())),
                            )
                        })
                        .collect()
                })
                .collect();
            GroupRingMatrix::from_rows(rows, d.cols)
        })
        .collect::<Result<Vec<_>>>()?;
    ChainComplex::new(ring, c.ranks.clone(), boundaries, ComplexKind::Laurent)
}

/// Pushes a complex over `k[G]` to `k[t, t^-1]` along an integral character.
pub fn complex_from_group(c: &ChainComplex, chi: &Character) -> Result<LaurentComplex> {
    let field = c.ring().field();
    let boundaries = c
        .boundaries()
        .iter()
        .map(|d| {
            let rows = (0..d.rows)
                .map(|i| {
                    (0..d.cols)
                        .map(|j| {
                            LaurentPoly::from_terms(
                                field,
                                d.get(i, j)
                                    .terms()
                                    .iter()
                                    .map(|(w, x)| (chi.height(w), x.clone())),
                            )
                        })
                        .collect()
                })
                .collect();
            LaurentMatrix::from_rows(field, rows, d.cols)
        })
        .collect();
    LaurentComplex::new(field, c.ranks().to_vec(), boundaries)
}

#[cfg(test)]
mod tests;
