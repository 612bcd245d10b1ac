//! Open rational polyhedral cones in character space, and a small exact
//! Fourier–Motzkin solver.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{project, NovikovElem};
use crate::error::{Error, Result};
use crate::presentation::Character;

fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    if g == 0 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

/// `{psi : <psi, w> > 0 for every w in strict}`, an open cone.
///
/// Vectors are stored primitive and sorted, so equal cones compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SupportCone {
    #[serde(skip)]
    dim: usize,
    strict: BTreeSet<Vec<i64>>,
}

impl SupportCone {
    /// The whole character space minus the origin.
    pub fn full(dim: usize) -> Self {
        SupportCone {
            dim,
            strict: BTreeSet::new(),
        }
    }

    pub fn from_vectors<I: IntoIterator<Item = Vec<i64>>>(dim: usize, vectors: I) -> Self {
        let mut c = Self::full(dim);
        for v in vectors {
            c.add(&v);
        }
        c
    }

    pub fn add(&mut self, v: &[i64]) {
        debug_assert_eq!(v.len(), self.dim);
        self.strict.insert(primitive(v));
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn strict(&self) -> Vec<Vec<i64>> {
        self.strict.iter().cloned().collect()
    }

    pub fn is_full(&self) -> bool {
        self.strict.is_empty()
    }

    /// Contains a zero constraint, hence no character.
    pub fn is_trivially_empty(&self) -> bool {
        self.strict.iter().any(|v| v.iter().all(|&x| x == 0))
    }

    pub fn contains(&self, psi: &Character) -> Result<bool> {
        if psi.rank() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: psi.rank(),
            });
        }
        Ok(!psi.is_zero() && self.contains_coords(psi.coords()))
    }

    pub fn contains_coords(&self, psi: &[BigRational]) -> bool {
        self.strict.iter().all(|w| {
            let s = w.iter().zip(psi).fold(BigRational::zero(), |acc, (&x, p)| {
                acc + p * BigRational::from_integer(x.into())
            });
            s.is_positive()
        })
    }

    pub fn intersect(&self, other: &SupportCone) -> SupportCone {
        SupportCone {
            dim: self.dim,
            strict: self.strict.union(&other.strict).cloned().collect(),
        }
    }

    /// `{-psi : psi in self}`.
    pub fn negate(&self) -> SupportCone {
        SupportCone {
            dim: self.dim,
            strict: self
                .strict
                .iter()
                .map(|v| v.iter().map(|x| -x).collect())
                .collect(),
        }
    }
}

/// Cone of characters on which every support vector with nonzero pairing
/// keeps the sign it has at `chi`.
pub fn support_cone(elems: &[NovikovElem], chi: &Character) -> SupportCone {
    let mut cone = SupportCone::full(chi.rank());
    for e in elems {
        for (_, w, _) in e.terms() {
            let v = project(chi.free_projection(), w);
            let s = chi.pair(&v);
            if s.is_positive() {
                cone.add(&v);
            } else if s.is_negative() {
                cone.add(&v.iter().map(|x| -x).collect::<Vec<_>>());
            }
        }
    }
    cone
}

type Row = (Vec<BigRational>, BigRational);

/// A point `x` with `a . x <= b` for every row, if one exists.
pub fn fm_feasible(rows: &[Row], nvars: usize) -> Option<Vec<BigRational>> {
    // stages[k] holds the system over variables 0..nvars-k.
    let mut stages: Vec<Vec<Row>> = vec![dedup(rows.to_vec())];
    for k in (0..nvars).rev() {
        let sys = stages.last().unwrap();
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut next = Vec::new();
        for (a, b) in sys {
            if a[k].is_positive() {
                pos.push((a, b));
            } else if a[k].is_negative() {
                neg.push((a, b));
            } else {
                next.push((a[..k].to_vec(), b.clone()));
            }
        }
        for (ap, bp) in &pos {
            for (an, bn) in &neg {
                let fp = -&an[k];
                let fn_ = ap[k].clone();
                let a: Vec<BigRational> = (0..k).map(|i| &ap[i] * &fp + &an[i] * &fn_).collect();
                let b = *bp * &fp + *bn * &fn_;
                next.push((a, b));
            }
        }
        let next = dedup(next);
        if next
            .iter()
            .any(|(a, b)| a.iter().all(|x| x.is_zero()) && b.is_negative())
        {
            return None;
        }
        stages.push(next);
    }
    // Back-substitution: stage nvars - k constrains variable k - 1 given the earlier ones.
    let mut x: Vec<BigRational> = Vec::with_capacity(nvars);
    for k in 0..nvars {
        let sys = &stages[nvars - k - 1];
        let mut lo: Option<BigRational> = None;
        let mut hi: Option<BigRational> = None;
        for (a, b) in sys {
            let rest = (0..k).fold(b.clone(), |acc, i| acc - &a[i] * &x[i]);
            let c = &a[k];
            if c.is_positive() {
                let v = rest / c;
                hi = Some(match hi {
                    Some(h) if h < v => h,
                    _ => v,
                });
            } else if c.is_negative() {
                let v = rest / c;
                lo = Some(match lo {
                    Some(l) if l > v => l,
                    _ => v,
                });
            }
        }
        let v = match (lo, hi) {
            (Some(l), Some(h)) => {
                if l > h {
                    return None;
                }
                (l + h) / BigRational::from_integer(2.into())
            }
            (Some(l), None) => l,
            (None, Some(h)) => h,
            (None, None) => BigRational::zero(),
        };
        x.push(v);
    }
    Some(x)
}

fn dedup(rows: Vec<Row>) -> Vec<Row> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (a, b) in rows {
        // normalize by the first nonzero |coefficient|
        let scale = a
            .iter()
            .chain(std::iter::once(&b))
            .find(|x| !x.is_zero())
            .map(|x| x.abs());
        let (a, b) = match scale {
            Some(s) => (a.iter().map(|x| x / &s).collect::<Vec<_>>(), &b / &s),
            None => (a, b),
        };
        if a.iter().all(|x| x.is_zero()) && !b.is_negative() {
            continue;
        }
        let key = (a.clone(), b.clone());
        if seen.insert(key) {
            out.push((a, b));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn membership_is_strict() {
        let c = SupportCone::from_vectors(1, [vec![1]]);
        assert!(c.contains_coords(&[BigRational::new(1.into(), 7.into())]));
        assert!(!c.contains_coords(&[q(0)]));
        let full = SupportCone::full(2);
        assert!(full.contains_coords(&[q(1), q(-3)]));
        let quad = SupportCone::from_vectors(2, [vec![2, 0], vec![0, 1]]);
        assert_eq!(quad.strict(), vec![vec![0, 1], vec![1, 0]]);
        assert!(quad.contains_coords(&[q(1), q(1)]));
        assert!(!quad.contains_coords(&[q(1), q(-1)]));
    }

    #[test]
    fn fourier_motzkin() {
        // x + y <= 1, -x <= 0, -y <= 0
        let rows = vec![
            (vec![q(1), q(1)], q(1)),
            (vec![q(-1), q(0)], q(0)),
            (vec![q(0), q(-1)], q(0)),
        ];
        let x = fm_feasible(&rows, 2).unwrap();
        for (a, b) in &rows {
            assert!(&a[0] * &x[0] + &a[1] * &x[1] <= *b);
        }
        // x <= -1, -x <= -1 is infeasible
        let bad = vec![(vec![q(1)], q(-1)), (vec![q(-1)], q(-1))];
        assert!(fm_feasible(&bad, 1).is_none());
        assert_eq!(fm_feasible(&[], 0), Some(vec![]));
    }
}
