//! Pivoted elimination over truncated Novikov elements.
//!
//! A pivot is an entry whose lowest stratum is a single term; such entries are
//! units of the Novikov ring and are inverted by a geometric series. Entries
//! cleared by a pivot are set to exactly zero, which is their true value.

use crate::error::Error;
use crate::novikov::{NovikovElem, NovikovMatrix, Precision};

/// A pivot used during elimination, with the support vectors that keep its
/// lowest term strictly lowest.
#[derive(Debug, Clone, PartialEq)]
pub struct Pivot {
    pub row: usize,
    pub col: usize,
    pub height: i64,
    pub conditions: Vec<Vec<i64>>,
}

/// `P D Q = W` with `W` zero in pivot rows and columns except at the pivots.
#[derive(Debug, Clone)]
pub struct Elimination {
    w: NovikovMatrix,
    p: NovikovMatrix,
    q: NovikovMatrix,
    pivots: Vec<Pivot>,
    inverses: Vec<NovikovElem>,
    cap: Precision,
}

/// Why a system could not be solved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstruction {
    /// The right-hand side has a component outside the pivoted span and the
    /// remaining block is zero up to precision.
    Rank { line: usize },
    /// The remaining block has nonzero entries, none with a single lowest term.
    NoMonomialPivot { entries: usize },
    /// Truncated series grew past the term budget.
    TermBudget { terms: usize },
    /// A normal form grew past the word-length budget.
    WordLength { limit: usize },
}

/// Longest normal form allowed during elimination.
pub const WORD_LIMIT: usize = 256;

/// Largest number of stored terms allowed in one truncated entry.
pub const TERM_BUDGET: usize = 2000;

pub(crate) fn check_budget(m: &NovikovMatrix) -> Result<(), Obstruction> {
    if m.ring().overflowed() {
        return Err(Obstruction::WordLength { limit: WORD_LIMIT });
    }
    match m.entries().iter().map(|e| e.len()).max() {
        Some(n) if n > TERM_BUDGET => Err(Obstruction::TermBudget { terms: n }),
        _ => Ok(()),
    }
}

impl std::fmt::Display for Obstruction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Obstruction::Rank { line } => write!(f, "rank obstruction at line {line}"),
            Obstruction::NoMonomialPivot { entries } => {
                write!(
                    f,
                    "no monomial-unit pivot among {entries} remaining entries"
                )
            }
            Obstruction::TermBudget { terms } => {
                write!(f, "series reached {terms} terms, over budget")
            }
            Obstruction::WordLength { limit } => write!(f, "normal forms exceeded {limit} letters"),
        }
    }
}

fn pivot_conditions(e: &NovikovElem) -> Vec<Vec<i64>> {
    let vs = e.support_vectors();
    let Some(lead) = vs.first() else {
        return vec![];
    };
    vs[1..]
        .iter()
        .map(|v| v.iter().zip(lead).map(|(a, b)| a - b).collect::<Vec<i64>>())
        .filter(|v| v.iter().any(|&x| x != 0))
        .collect()
}

impl Elimination {
    /// Eliminates `d`, computing only terms below `height`.
    pub fn new(d: &NovikovMatrix, height: i64) -> Result<Elimination, Obstruction> {
        let ring = d.ring().clone();
        let cap = Some(height);
        let (m, n) = (d.rows, d.cols);
        let mut w = d.clone();
        let mut p = NovikovMatrix::identity(&ring, m);
        let mut q = NovikovMatrix::identity(&ring, n);
        let mut pivots = Vec::new();
        let mut inverses = Vec::new();
        let mut used_rows = vec![false; m];
        let mut used_cols = vec![false; n];
        loop {
            let mut best: Option<(i64, usize, usize, usize)> = None;
            for i in (0..m).filter(|&i| !used_rows[i]) {
                for j in (0..n).filter(|&j| !used_cols[j]) {
                    if let Some((h, _, _)) = w.get(i, j).monomial_unit() {
                        let key = (h, w.get(i, j).len(), i, j);
                        if best.is_none_or(|b| key < b) {
                            best = Some(key);
                        }
                    }
                }
            }
            let Some((h, _, r, c)) = best else { break };
            let piv = w.get(r, c).clone();
            let inv = match piv.invert_bounded(height, TERM_BUDGET) {
                Ok(inv) => inv,
                Err(Error::TermBudget(n)) => return Err(Obstruction::TermBudget { terms: n }),
                Err(_) => break,
            };
            // Rows: row_i -= (w[i][c] inv) row_r
            for i in (0..m).filter(|&i| i != r) {
                if w.get(i, c).is_zero() {
                    continue;
                }
                let f = w.get(i, c).mul_capped(&inv, cap);
                for j in 0..n {
                    if j == c {
                        continue;
                    }
                    let t = f.mul_capped(w.get(r, j), cap);
                    if !t.is_zero() || !t.is_exact() {
                        let v = w.get(i, j).checked_sub(&t).expect("same ring");
                        w.set(i, j, v);
                    }
                }
                w.set(i, c, ring.zero());
                for j in 0..m {
                    let t = f.mul_capped(p.get(r, j), cap);
                    if !t.is_zero() || !t.is_exact() {
                        let v = p.get(i, j).checked_sub(&t).expect("same ring");
                        p.set(i, j, v);
                    }
                }
            }
            // Columns: col_k -= col_c (inv w[r][k]); only row r is affected in w.
            for k in (0..n).filter(|&k| k != c) {
                if w.get(r, k).is_zero() {
                    w.set(r, k, ring.zero());
                    continue;
                }
                let f = inv.mul_capped(w.get(r, k), cap);
                for i in 0..n {
                    let t = q.get(i, c).mul_capped(&f, cap);
                    if !t.is_zero() || !t.is_exact() {
                        let v = q.get(i, k).checked_sub(&t).expect("same ring");
                        q.set(i, k, v);
                    }
                }
                w.set(r, k, ring.zero());
            }
            check_budget(&w)?;
            check_budget(&p)?;
            check_budget(&q)?;
            used_rows[r] = true;
            used_cols[c] = true;
            pivots.push(Pivot {
                row: r,
                col: c,
                height: h,
                conditions: pivot_conditions(&piv),
            });
            inverses.push(inv);
        }
        Ok(Elimination {
            w,
            p,
            q,
            pivots,
            inverses,
            cap,
        })
    }

    pub fn pivots(&self) -> &[Pivot] {
        &self.pivots
    }

    fn leftover_entries(&self) -> usize {
        let pr: Vec<usize> = self.pivots.iter().map(|p| p.row).collect();
        let pc: Vec<usize> = self.pivots.iter().map(|p| p.col).collect();
        let mut count = 0;
        for i in (0..self.w.rows).filter(|i| !pr.contains(i)) {
            for j in (0..self.w.cols).filter(|j| !pc.contains(j)) {
                if !self.w.get(i, j).is_zero() {
                    count += 1;
                }
            }
        }
        count
    }

    fn obstruction(&self, line: usize) -> Obstruction {
        match self.leftover_entries() {
            0 => Obstruction::Rank { line },
            entries => Obstruction::NoMonomialPivot { entries },
        }
    }

    /// Solves `X D = E`.
    pub fn solve_left(&self, e: &NovikovMatrix) -> Result<NovikovMatrix, Obstruction> {
        let ring = self.w.ring().clone();
        let (m, n) = (self.w.rows, self.w.cols);
        let eq = e.mul_capped(&self.q, self.cap).expect("shapes agree");
        check_budget(&eq)?;
        let pivot_cols: Vec<usize> = self.pivots.iter().map(|p| p.col).collect();
        for c in (0..n).filter(|c| !pivot_cols.contains(c)) {
            if (0..eq.rows).any(|i| !eq.get(i, c).is_zero()) {
                return Err(self.obstruction(c));
            }
        }
        let mut y = NovikovMatrix::zeros(&ring, e.rows, m);
        for (piv, inv) in self.pivots.iter().zip(&self.inverses) {
            for i in 0..e.rows {
                y.set(i, piv.row, eq.get(i, piv.col).mul_capped(inv, self.cap));
            }
        }
        let x = y.mul_capped(&self.p, self.cap).expect("shapes agree");
        check_budget(&x)?;
        Ok(x)
    }

    /// Solves `D X = E`.
    pub fn solve_right(&self, e: &NovikovMatrix) -> Result<NovikovMatrix, Obstruction> {
        let ring = self.w.ring().clone();
        let (m, n) = (self.w.rows, self.w.cols);
        let pe = self.p.mul_capped(e, self.cap).expect("shapes agree");
        check_budget(&pe)?;
        let pivot_rows: Vec<usize> = self.pivots.iter().map(|p| p.row).collect();
        for r in (0..m).filter(|r| !pivot_rows.contains(r)) {
            if (0..pe.cols).any(|j| !pe.get(r, j).is_zero()) {
                return Err(self.obstruction(r));
            }
        }
        let mut z = NovikovMatrix::zeros(&ring, n, e.cols);
        for (piv, inv) in self.pivots.iter().zip(&self.inverses) {
            for j in 0..e.cols {
                z.set(piv.col, j, inv.mul_capped(pe.get(piv.row, j), self.cap));
            }
        }
        let x = self.q.mul_capped(&z, self.cap).expect("shapes agree");
        check_budget(&x)?;
        Ok(x)
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::field::Field;
    use crate::groupring::{GroupRing, GroupRingMatrix};
    use crate::novikov::NovikovRing;
    use crate::presentation::{abelianize, knuth_bendix, parse_presentation, Character, Word};

    #[test]
    fn solves_z_unit() {
        let p = parse_presentation("gens t").unwrap();
        let ab = abelianize(&p);
        let gr = GroupRing::new(Arc::new(knuth_bendix(&p, 10, 10)), Field::Rationals).unwrap();
        let ring =
            NovikovRing::new(gr.clone(), Character::from_integers(&ab, &[1]).unwrap()).unwrap();
        let t_minus_1 = gr.from_int_terms(&[(1, Word::generator(0)), (-1, Word::empty())]);
        let d = NovikovMatrix::exact(
            &ring,
            &GroupRingMatrix::from_rows(vec![vec![t_minus_1]], 1).unwrap(),
        );
        let el = Elimination::new(&d, 8).unwrap();
        assert_eq!(el.pivots().len(), 1);
        let x = el.solve_left(&NovikovMatrix::identity(&ring, 1)).unwrap();
        let prod = x.get(0, 0) * d.get(0, 0);
        let one = ring.one();
        assert_eq!(prod.truncate(6).unwrap(), one.truncate(6).unwrap());
        let zero = NovikovMatrix::zeros(&ring, 1, 1);
        let el = Elimination::new(&zero, 8).unwrap();
        assert_eq!(
            el.solve_left(&NovikovMatrix::identity(&ring, 1))
                .unwrap_err(),
            Obstruction::Rank { line: 0 }
        );
    }
}
