//! Laurent polynomials `k[t, t^-1]` and their matrices.

use std::collections::BTreeMap;
use std::fmt;

use crate::field::{Field, Scalar};

/// A finitely supported `exponent -> coefficient` map with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    field: Field,
    terms: BTreeMap<i64, Scalar>,
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mono = match e {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{e}"),
            };
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{abs}{mono}")?;
            }
        }
        Ok(())
    }
}

impl LaurentPoly {
    pub fn zero(field: Field) -> Self {
        LaurentPoly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: Field) -> Self {
        Self::monomial(field.one(), 0)
    }

    pub fn monomial(c: Scalar, e: i64) -> Self {
        let mut p = Self::zero(c.field());
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    /// `t^e`.
    pub fn t_pow(field: Field, e: i64) -> Self {
        Self::monomial(field.one(), e)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Scalar)>>(field: Field, terms: I) -> Self {
        let mut p = Self::zero(field);
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    /// Integer coefficients, lowest exponent first.
    pub fn from_ints(field: Field, low: i64, coeffs: &[i64]) -> Self {
        Self::from_terms(
            field,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (low + i as i64, field.from_i64(c))),
        )
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> &BTreeMap<i64, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn low(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn high(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `high - low`; the Euclidean norm of the ring. Zero has span `-1`.
    pub fn span(&self) -> i64 {
        match (self.low(), self.high()) {
            (Some(l), Some(h)) => h - l,
            _ => -1,
        }
    }

    /// Units are the nonzero monomials.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    fn add_term(&mut self, e: i64, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let v = match self.terms.get(&e) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if v.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, v);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c);
        }
        r
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            field: self.field,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero(self.field);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                r.add_term(a + b, &(x * y));
            }
        }
        r
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_terms(self.field, self.terms.iter().map(|(e, x)| (*e, x * c)))
    }

    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            field: self.field,
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Inverse of a unit.
    pub fn unit_inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        Some(Self::monomial(c.inv()?, -e))
    }

    /// Associate with lowest exponent 0 and leading coefficient 1, and the unit `u` with `self = u * normal`.
    pub fn normalize(&self) -> (Self, Self) {
        let Some(low) = self.low() else {
            return (self.clone(), Self::one(self.field));
        };
        let lead = self.terms.values().next_back().unwrap().clone();
        let inv = lead.inv().expect("nonzero");
        (self.shift(-low).scale(&inv), Self::monomial(lead, low))
    }

    /// `self = q * d + r` with `span(r) < span(d)`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero");
        let field = self.field;
        let (Some(la), Some(ld)) = (self.low(), d.low()) else {
            return (Self::zero(field), Self::zero(field));
        };
        // polynomial long division on t^-la self and t^-ld d
        let mut rem = self.shift(-la);
        let dd = d.shift(-ld);
        let dh = dd.high().unwrap();
        let lead_inv = dd.terms[&dh].inv().expect("nonzero");
        let mut q = Self::zero(field);
        while let Some(rh) = rem.high() {
            if rh < dh {
                break;
            }
            let c = &rem.terms[&rh] * &lead_inv;
            let m = Self::monomial(c, rh - dh);
            rem = rem.sub(&m.mul(&dd));
            q = q.add(&m);
        }
        (q.shift(la - ld), rem.shift(la))
    }

    /// Exact quotient when `d` divides `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Substitutes a field element for `t`, for nonzero `x`.
    pub fn eval(&self, x: &Scalar) -> Scalar {
        let inv = x.inv().expect("evaluation point must be nonzero");
        let mut acc = self.field.zero();
        for (e, c) in &self.terms {
            let base = if *e >= 0 { x.clone() } else { inv.clone() };
            let mut p = self.field.one();
            for _ in 0..e.unsigned_abs() {
                p = &p * &base;
            }
            acc = &acc + &(c * &p);
        }
        acc
    }
}

/// A dense matrix over `k[t, t^-1]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentMatrix {
    pub rows: usize,
    pub cols: usize,
    field: Field,
    data: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        LaurentMatrix {
            rows,
            cols,
            field,
            data: vec![LaurentPoly::zero(field); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one(field));
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<LaurentPoly>>, cols: usize) -> Self {
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, r) in rows.into_iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            for (j, x) in r.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "shape mismatch");
        let mut r = Self::zeros(self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = LaurentPoly::zero(self.field);
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), o.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                r.set(i, j, acc);
            }
        }
        r
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row_a += f * row_b`.
    pub fn add_row_multiple(&mut self, a: usize, b: usize, f: &LaurentPoly) {
        for j in 0..self.cols {
            let v = self.get(a, j).add(&f.mul(self.get(b, j)));
            self.set(a, j, v);
        }
    }

    /// `col_a += col_b * f`.
    pub fn add_col_multiple(&mut self, a: usize, b: usize, f: &LaurentPoly) {
        for i in 0..self.rows {
            let v = self.get(i, a).add(&self.get(i, b).mul(f));
            self.set(i, a, v);
        }
    }

    pub fn scale_row(&mut self, a: usize, f: &LaurentPoly) {
        for j in 0..self.cols {
            let v = f.mul(self.get(a, j));
            self.set(a, j, v);
        }
    }

    /// Max entry span, `-1` for the zero matrix.
    pub fn max_span(&self) -> i64 {
        self.data.iter().map(|x| x.span()).max().unwrap_or(-1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclidean_division() {
        let f = Field::Rationals;
        let a = LaurentPoly::from_ints(f, -1, &[1, 0, 0, 2]); // t^-1 + 2t^2
        let d = LaurentPoly::from_ints(f, 0, &[-1, 1]); // t - 1
        let (q, r) = a.div_rem(&d);
        assert_eq!(q.mul(&d).add(&r), a);
        assert!(r.span() < d.span());
        assert_eq!(d.to_string(), "-1 + t");
        let (n, u) = LaurentPoly::from_ints(f, 2, &[4, 2]).normalize();
        assert_eq!(n.to_string(), "2 + t");
        assert_eq!(u.to_string(), "2t^2");
    }
}
