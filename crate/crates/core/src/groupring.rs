//! Exact arithmetic in the group ring `k[G]`, with normal-form words as basis,
//! and Fox calculus.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::presentation::{knuth_bendix, Presentation, RewritingSystem, Word};

/// The group ring of a group with a complete rewriting system, over a field.
#[derive(Debug)]
pub struct GroupRing {
    rs: Arc<RewritingSystem>,
    field: Field,
}

/// A finite sum `sum c_g g` with `g` in normal form and `c_g != 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupRingElem {
    terms: BTreeMap<Word, Scalar>,
}

impl GroupRingElem {
    pub fn zero() -> Self {
        GroupRingElem::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Word, Scalar> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> Option<&Scalar> {
        self.terms.get(w)
    }

    /// Adds `c * w` for a word `w` already in normal form.
    fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// Writes the element with generator names, e.g. `1 - a^2`.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            match (w.is_empty(), abs.is_one()) {
                (true, _) => out.push_str(&abs.to_string()),
                (false, true) => out.push_str(&w.display_with(names)),
                (false, false) => out.push_str(&format!("{abs}*{}", w.display_with(names))),
            }
        }
        out
    }
}

impl GroupRing {
    /// Fails unless the rewriting system is complete.
    pub fn new(rs: Arc<RewritingSystem>, field: Field) -> Result<Arc<GroupRing>> {
        if !rs.is_complete() {
            return Err(Error::RewritingIncomplete);
        }
        Ok(Arc::new(GroupRing { rs, field }))
    }

    /// `k[F_n]` for the free group on `n` generators.
    pub fn free(n: usize, field: Field) -> Arc<GroupRing> {
        let p = Presentation::new("F", (1..=n).map(|i| format!("g{i}")).collect(), vec![])
            .expect("free presentation is valid");
        GroupRing::new(Arc::new(knuth_bendix(&p, 8, 8)), field).expect("free completion")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rewriting_system(&self) -> &Arc<RewritingSystem> {
        &self.rs
    }

    pub fn num_generators(&self) -> usize {
        self.rs.num_generators()
    }

    pub fn normal_form(&self, w: &Word) -> Word {
        self.rs.reduce(w)
    }

    pub fn zero(&self) -> GroupRingElem {
        GroupRingElem::zero()
    }

    pub fn one(&self) -> GroupRingElem {
        self.monomial(self.field.one(), &Word::empty())
    }

    pub fn constant(&self, c: i64) -> GroupRingElem {
        self.monomial(self.field.from_i64(c), &Word::empty())
    }

    pub fn monomial(&self, c: Scalar, w: &Word) -> GroupRingElem {
        let mut e = GroupRingElem::zero();
        e.add_term(self.normal_form(w), c);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Scalar)>>(&self, terms: I) -> GroupRingElem {
        let mut e = GroupRingElem::zero();
        for (w, c) in terms {
            e.add_term(self.normal_form(&w), c);
        }
        e
    }

    /// Shorthand for integer coefficients.
    pub fn from_int_terms(&self, terms: &[(i64, Word)]) -> GroupRingElem {
        self.from_terms(
            terms
                .iter()
                .map(|(c, w)| (w.clone(), self.field.from_i64(*c))),
        )
    }

    /// Checks that every coefficient lives in this ring's field.
    pub fn check_field(&self, a: &GroupRingElem) -> Result<()> {
        if a.terms.values().all(|c| c.field() == self.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, a: &GroupRingElem, b: &GroupRingElem) -> GroupRingElem {
        let mut out = a.clone();
        for (w, c) in &b.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self, a: &GroupRingElem) -> GroupRingElem {
        GroupRingElem {
            terms: a.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, a: &GroupRingElem, b: &GroupRingElem) -> GroupRingElem {
        let mut out = a.clone();
        for (w, c) in &b.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &Scalar, a: &GroupRingElem) -> GroupRingElem {
        if c.is_zero() {
            return GroupRingElem::zero();
        }
        GroupRingElem {
            terms: a.terms.iter().map(|(w, x)| (w.clone(), c * x)).collect(),
        }
    }

    pub fn mul(&self, a: &GroupRingElem, b: &GroupRingElem) -> GroupRingElem {
        let mut out = GroupRingElem::zero();
        for (u, x) in &a.terms {
            for (v, y) in &b.terms {
                out.add_term(self.rs.multiply(u, v), x * y);
            }
        }
        out
    }

    /// `sum c_g g -> sum c_g g^-1`.
    pub fn involute(&self, a: &GroupRingElem) -> GroupRingElem {
        self.from_terms(a.terms.iter().map(|(w, c)| (w.inverse(), c.clone())))
    }

    /// Sum of coefficients.
    pub fn augmentation(&self, a: &GroupRingElem) -> Scalar {
        a.terms.values().fold(self.field.zero(), |acc, c| &acc + c)
    }

    /// Fox derivative `d r / d x_g`, projected to `k[G]`.
    pub fn fox_derivative(&self, r: &Word, g: usize) -> GroupRingElem {
        let letters = r.letters();
        let x = g as i32 + 1;
        let mut out = GroupRingElem::zero();
        for (i, &l) in letters.iter().enumerate() {
            if l == x {
                out.add_term(
                    self.normal_form(&Word::from_raw(letters[..i].to_vec())),
                    self.field.one(),
                );
            } else if l == -x {
                out.add_term(
                    self.normal_form(&Word::from_raw(letters[..=i].to_vec())),
                    -self.field.one(),
                );
            }
        }
        out
    }

    /// Matrix with entry `(r, x) = d r / d x`.
    pub fn fox_matrix(&self, relators: &[Word]) -> GroupRingMatrix {
        let n = self.num_generators();
        let mut m = GroupRingMatrix::zeros(relators.len(), n);
        for (i, r) in relators.iter().enumerate() {
            for g in 0..n {
                m.set(i, g, self.fox_derivative(r, g));
            }
        }
        m
    }

    pub fn mat_mul(&self, a: &GroupRingMatrix, b: &GroupRingMatrix) -> Result<GroupRingMatrix> {
        if a.cols != b.rows {
            return Err(Error::DimensionMismatch {
                expected: a.cols,
                got: b.rows,
            });
        }
        let mut out = GroupRingMatrix::zeros(a.rows, b.cols);
        for i in 0..a.rows {
            for j in 0..b.cols {
                let mut acc = GroupRingElem::zero();
                for k in 0..a.cols {
                    let x = a.get(i, k);
                    let y = b.get(k, j);
                    if !x.is_zero() && !y.is_zero() {
                        acc = self.add(&acc, &self.mul(x, y));
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mat_sub(&self, a: &GroupRingMatrix, b: &GroupRingMatrix) -> Result<GroupRingMatrix> {
        if (a.rows, a.cols) != (b.rows, b.cols) {
            return Err(Error::DimensionMismatch {
                expected: a.rows * a.cols,
                got: b.rows * b.cols,
            });
        }
        let entries = a
            .entries
            .iter()
            .zip(&b.entries)
            .map(|(x, y)| self.sub(x, y))
            .collect();
        Ok(GroupRingMatrix {
            rows: a.rows,
            cols: a.cols,
            entries,
        })
    }

    pub fn identity(&self, n: usize) -> GroupRingMatrix {
        let mut m = GroupRingMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, self.one());
        }
        m
    }

    /// Transpose with every entry involuted.
    pub fn involute_transpose(&self, a: &GroupRingMatrix) -> GroupRingMatrix {
        let mut out = GroupRingMatrix::zeros(a.cols, a.rows);
        for i in 0..a.rows {
            for j in 0..a.cols {
                out.set(j, i, self.involute(a.get(i, j)));
            }
        }
        out
    }
}

/// A dense matrix over `k[G]`, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupRingMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<GroupRingElem>,
}

impl GroupRingMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        GroupRingMatrix {
            rows,
            cols,
            entries: vec![GroupRingElem::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<GroupRingElem>>, cols: usize) -> Result<Self> {
        let r = rows.len();
        let mut entries = Vec::with_capacity(r * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(GroupRingMatrix {
            rows: r,
            cols,
            entries,
        })
    }

    pub fn get(&self, i: usize, j: usize) -> &GroupRingElem {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: GroupRingElem) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn entries(&self) -> &[GroupRingElem] {
        &self.entries
    }

    pub fn display_with(&self, names: &[String]) -> String {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let cells: Vec<String> = (0..self.cols)
                    .map(|j| self.get(i, j).display_with(names))
                    .collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

impl fmt::Display for GroupRingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=64).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.display_with(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{parse_presentation, DEFAULT_MAX_LEN, DEFAULT_MAX_RULES};

    fn ring(text: &str) -> (Presentation, Arc<GroupRing>) {
        let p = parse_presentation(text).unwrap();
        let rs = Arc::new(knuth_bendix(&p, DEFAULT_MAX_RULES, DEFAULT_MAX_LEN));
        (p.clone(), GroupRing::new(rs, Field::Rationals).unwrap())
    }

    fn w(v: &[i32]) -> Word {
        Word::from_raw(v.to_vec())
    }

    #[test]
    fn bs12_fox_derivatives() {
        let (p, r) = ring("gens a t\nrel t a t^-1 a^-2");
        let dt = r.fox_derivative(&p.relators[0], 1);
        assert_eq!(dt, r.from_int_terms(&[(1, w(&[])), (-1, w(&[1, 1]))]));
        let da = r.fox_derivative(&p.relators[0], 0);
        assert_eq!(
            da,
            r.from_int_terms(&[(1, w(&[2])), (-1, w(&[1])), (-1, w(&[]))])
        );
        assert_eq!(
            r.mul(
                &r.monomial(r.field().one(), &w(&[2])),
                &r.monomial(r.field().one(), &w(&[1]))
            ),
            r.monomial(r.field().one(), &w(&[1, 1, 2]))
        );
    }

    #[test]
    fn z_arithmetic() {
        let (_, r) = ring("gens t");
        let one_plus = r.from_int_terms(&[(1, w(&[])), (1, w(&[1]))]);
        let one_minus = r.from_int_terms(&[(1, w(&[])), (-1, w(&[1]))]);
        assert_eq!(
            r.mul(&one_plus, &one_minus),
            r.from_int_terms(&[(1, w(&[])), (-1, w(&[1, 1]))])
        );
        assert!(r.mul(&one_plus, &r.zero()).is_zero());
        assert_eq!(r.augmentation(&one_minus), r.field().zero());
        assert_eq!(r.augmentation(&r.constant(3)), r.field().from_i64(3));
        assert_eq!(r.augmentation(&r.zero()), r.field().zero());
    }

    #[test]
    fn involution() {
        let (_, r) = ring("gens a b");
        let x = r.from_int_terms(&[(1, w(&[])), (2, w(&[1]))]);
        assert_eq!(
            r.involute(&x),
            r.from_int_terms(&[(1, w(&[])), (2, w(&[-1]))])
        );
        let ab = r.from_int_terms(&[(1, w(&[1, 2]))]);
        assert_eq!(r.involute(&ab), r.from_int_terms(&[(1, w(&[-2, -1]))]));
    }

    #[test]
    fn incomplete_system_is_refused() {
        let p = parse_presentation("gens a t\nrel t a t^-1 a^-2").unwrap();
        let rs = crate::presentation::knuth_bendix_with_order(
            &p,
            crate::presentation::WordOrder::ShortLex,
            5,
            5,
        );
        assert_eq!(
            GroupRing::new(Arc::new(rs), Field::Rationals).err(),
            Some(Error::RewritingIncomplete)
        );
    }

    #[test]
    fn display() {
        let (p, r) = ring("gens a t\nrel t a t^-1 a^-2");
        let e = r.fox_derivative(&p.relators[0], 1);
        assert_eq!(e.display_with(&p.generators), "1 - a^2");
    }
}
