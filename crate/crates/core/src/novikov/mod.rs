//! Truncated series in the Novikov completion of `k[G]` at a character.
//!
//! An element stores its terms of height below a precision `T` (or all of
//! them, when exact). Heights are those of the primitive integral rescaling of
//! the character, so they are integers.

mod cone;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::ToPrimitive;

pub use cone::{fm_feasible, support_cone, SupportCone};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::groupring::{GroupRing, GroupRingElem, GroupRingMatrix};
use crate::presentation::{Character, Word};

/// `None` stands for `+infinity`.
pub type Precision = Option<i64>;

fn pmin(a: Precision, b: Precision) -> Precision {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => Some(x.min(y)),
    }
}

fn padd(a: Precision, b: Precision) -> Precision {
    Some(a? + b?)
}

fn below(h: i64, p: Precision) -> bool {
    p.is_none_or(|t| h < t)
}

/// The Novikov ring of `k[G]` at a nonzero character.
#[derive(Debug)]
pub struct NovikovRing {
    ring: Arc<GroupRing>,
    chi: Character,
    word_limit: usize,
    overflow: AtomicBool,
}

impl NovikovRing {
    pub fn new(ring: Arc<GroupRing>, chi: Character) -> Result<Arc<NovikovRing>> {
        if chi.is_zero() {
            return Err(Error::ZeroCharacter);
        }
        if chi.generator_heights().len() != ring.num_generators() {
            return Err(Error::DimensionMismatch {
                expected: ring.num_generators(),
                got: chi.generator_heights().len(),
            });
        }
        Ok(Arc::new(NovikovRing {
            ring,
            chi,
            word_limit: usize::MAX,
            overflow: AtomicBool::new(false),
        }))
    }

    /// A ring whose products drop terms with normal forms longer than
    /// `limit`, recording that this happened. Results computed after an
    /// overflow are not trustworthy; see [`overflowed`](Self::overflowed).
    pub fn with_word_limit(
        ring: Arc<GroupRing>,
        chi: Character,
        limit: usize,
    ) -> Result<Arc<NovikovRing>> {
        let r = Self::new(ring, chi)?;
        let mut r = Arc::try_unwrap(r).expect("fresh");
        r.word_limit = limit;
        Ok(Arc::new(r))
    }

    pub fn overflowed(&self) -> bool {
        self.overflow.load(Ordering::Relaxed)
    }

    pub fn character(&self) -> &Character {
        &self.chi
    }

    pub fn group_ring(&self) -> &Arc<GroupRing> {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field()
    }

    pub fn height(&self, w: &Word) -> i64 {
        self.chi.height(w)
    }

    /// Least nonzero `|height|` of a generator.
    pub fn unit_height(&self) -> i64 {
        self.chi.unit_height()
    }

    /// Converts an integral height back to a rational value of the character.
    pub fn rational_height(&self, h: i64) -> BigRational {
        BigRational::from_integer(h.into()) / self.chi.integral_scale()
    }

    pub fn zero(self: &Arc<Self>) -> NovikovElem {
        NovikovElem {
            ring: self.clone(),
            terms: BTreeMap::new(),
            precision: None,
        }
    }

    pub fn one(self: &Arc<Self>) -> NovikovElem {
        self.exact(&self.ring.one())
    }

    /// Promotes a group-ring element (exact, precision `+inf`).
    pub fn exact(self: &Arc<Self>, e: &GroupRingElem) -> NovikovElem {
        let terms = e
            .terms()
            .iter()
            .map(|(w, c)| ((self.height(w), w.clone()), c.clone()))
            .collect();
        NovikovElem {
            ring: self.clone(),
            terms,
            precision: None,
        }
    }

    pub fn monomial(self: &Arc<Self>, c: Scalar, w: &Word) -> NovikovElem {
        self.exact(&self.ring.monomial(c, w))
    }

    fn same(&self, other: &NovikovRing) -> bool {
        std::ptr::eq(self, other) || (self.chi == other.chi && Arc::ptr_eq(&self.ring, &other.ring))
    }
}

/// A truncated element of the Novikov ring: exact below its precision.
#[derive(Clone)]
pub struct NovikovElem {
    ring: Arc<NovikovRing>,
    terms: BTreeMap<(i64, Word), Scalar>,
    precision: Precision,
}

impl fmt::Debug for NovikovElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NovikovElem")
            .field("terms", &self.terms)
            .field("precision", &self.precision)
            .finish()
    }
}

impl PartialEq for NovikovElem {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same(&other.ring)
            && self.terms == other.terms
            && self.precision == other.precision
    }
}

impl PartialEq for NovikovMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same(&other.ring)
            && self.rows == other.rows
            && self.cols == other.cols
            && self.entries == other.entries
    }
}

impl NovikovElem {
    pub fn ring(&self) -> &Arc<NovikovRing> {
        &self.ring
    }

    /// Truncation height in integral units; `None` when exact.
    pub fn precision(&self) -> Precision {
        self.precision
    }

    /// Truncation height as a value of the character.
    pub fn truncation_height(&self) -> Option<BigRational> {
        self.precision.map(|t| self.ring.rational_height(t))
    }

    pub fn is_exact(&self) -> bool {
        self.precision.is_none()
    }

    /// No stored terms (zero up to precision).
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Word, &Scalar)> {
        self.terms.iter().map(|((h, w), c)| (*h, w, c))
    }

    pub fn min_height(&self) -> Option<i64> {
        self.terms.keys().next().map(|(h, _)| *h)
    }

    /// Lower bound for the heights of the true element: the least stored
    /// height, or the precision when nothing is stored.
    fn floor(&self) -> Precision {
        self.min_height().or(self.precision)
    }

    /// Stored terms as a group-ring element.
    pub fn to_group_ring(&self) -> GroupRingElem {
        self.ring
            .ring
            .from_terms(self.terms.iter().map(|((_, w), c)| (w.clone(), c.clone())))
    }

    fn check(&self, other: &NovikovElem) -> Result<()> {
        if self.ring.same(&other.ring) {
            Ok(())
        } else {
            Err(Error::CharacterMismatch)
        }
    }

    fn with_terms(
        &self,
        terms: BTreeMap<(i64, Word), Scalar>,
        precision: Precision,
    ) -> NovikovElem {
        NovikovElem {
            ring: self.ring.clone(),
            terms,
            precision,
        }
    }

    /// Keeps the terms of height `< t`.
    pub fn truncate(&self, t: i64) -> Result<NovikovElem> {
        if let Some(p) = self.precision {
            if t > p {
                return Err(Error::TruncationAboveKnowledge {
                    requested: self.ring.rational_height(t).to_string(),
                    known: self.ring.rational_height(p).to_string(),
                });
            }
        }
        Ok(self.truncate_unchecked(Some(t)))
    }

    /// Truncation at a rational value of the character.
    pub fn truncate_at(&self, t: &BigRational) -> Result<NovikovElem> {
        let scaled = (t * self.ring.chi.integral_scale()).ceil().to_integer();
        let h = scaled
            .to_i64()
            .ok_or_else(|| Error::InvalidInput(format!("height {t} out of range")))?;
        self.truncate(h)
    }

    fn truncate_unchecked(&self, t: Precision) -> NovikovElem {
        let p = pmin(self.precision, t);
        let terms = match p {
            None => self.terms.clone(),
            Some(p) => self
                .terms
                .iter()
                .take_while(|((h, _), _)| *h < p)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        };
        self.with_terms(terms, p)
    }

    pub fn checked_add(&self, other: &NovikovElem) -> Result<NovikovElem> {
        self.check(other)?;
        Ok(self.combine(other, false))
    }

    pub fn checked_sub(&self, other: &NovikovElem) -> Result<NovikovElem> {
        self.check(other)?;
        Ok(self.combine(other, true))
    }

    pub fn checked_mul(&self, other: &NovikovElem) -> Result<NovikovElem> {
        self.check(other)?;
        Ok(self.mul_capped(other, None))
    }

    fn combine(&self, other: &NovikovElem, negate: bool) -> NovikovElem {
        let p = pmin(self.precision, other.precision);
        let mut terms: BTreeMap<(i64, Word), Scalar> = self
            .terms
            .iter()
            .filter(|((h, _), _)| below(*h, p))
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        for ((h, w), c) in &other.terms {
            if !below(*h, p) {
                break;
            }
            let c = if negate { -c } else { c.clone() };
            accumulate(&mut terms, (*h, w.clone()), c);
        }
        self.with_terms(terms, p)
    }

    /// Product, computing only terms below `cap` (the result's precision is
    /// lowered to `cap` accordingly).
    pub fn mul_capped(&self, other: &NovikovElem, cap: Precision) -> NovikovElem {
        let natural = pmin(
            padd(self.floor(), other.precision),
            padd(self.precision, other.floor()),
        );
        let p = pmin(natural, cap);
        let mut terms = BTreeMap::new();
        let Some(b_min) = other.min_height() else {
            return self.with_terms(terms, p);
        };
        let rs = self.ring.ring.rewriting_system();
        for ((ha, wa), ca) in &self.terms {
            if !below(ha + b_min, p) {
                break;
            }
            for ((hb, wb), cb) in &other.terms {
                let h = ha + hb;
                if !below(h, p) {
                    break;
                }
                let Some(w) = rs.multiply_bounded(wa, wb, self.ring.word_limit) else {
                    self.ring.overflow.store(true, Ordering::Relaxed);
                    continue;
                };
                accumulate(&mut terms, (h, w), ca * cb);
            }
        }
        self.with_terms(terms, p)
    }

    pub fn scale(&self, c: &Scalar) -> NovikovElem {
        if c.is_zero() {
            return self.with_terms(BTreeMap::new(), self.precision);
        }
        self.with_terms(
            self.terms.iter().map(|(k, v)| (k.clone(), c * v)).collect(),
            self.precision,
        )
    }

    /// Lowest height and the terms sitting there.
    pub fn lowest_stratum(&self) -> Result<(i64, GroupRingElem)> {
        let h = self.min_height().ok_or(Error::ZeroElement)?;
        let part = self.ring.ring.from_terms(
            self.terms
                .iter()
                .take_while(|((x, _), _)| *x == h)
                .map(|((_, w), c)| (w.clone(), c.clone())),
        );
        Ok((h, part))
    }

    /// The lowest term `c g` when the lowest stratum is a single term.
    pub fn monomial_unit(&self) -> Option<(i64, &Word, &Scalar)> {
        let mut it = self.terms.iter();
        let ((h, w), c) = it.next()?;
        match it.next() {
            Some(((h2, _), _)) if h2 == h => None,
            _ => Some((*h, w, c)),
        }
    }

    /// Inverse `u` with `self * u = 1` up to height `target` (or up to the
    /// highest height the precision of `self` allows).
    ///
    /// Writes `self = c g (1 - p)` with `p` of positive height and returns
    /// `(1 + p + p^2 + ...) g^-1 c^-1`.
    pub fn invert(&self, target: i64) -> Result<NovikovElem> {
        self.invert_bounded(target, usize::MAX)
    }

    /// [`invert`](Self::invert), failing with `TermBudget` once the series
    /// holds more than `max_terms` terms.
    pub fn invert_bounded(&self, target: i64, max_terms: usize) -> Result<NovikovElem> {
        if self.terms.is_empty() {
            return Err(Error::ZeroElement);
        }
        let Some((mu, g, c)) = self.monomial_unit() else {
            let (_, part) = self.lowest_stratum()?;
            return Err(Error::NotMonomialUnit(part.len()));
        };
        let ring = &self.ring;
        let c_inv = c.inv().expect("stored coefficients are nonzero");
        let g_inv = g.inverse();
        let lead_inv = ring.monomial(c_inv, &g_inv);
        // q = (c g)^-1 self = 1 - p
        let q = lead_inv.mul_capped(self, None);
        let s = pmin(Some(target), padd(self.precision, Some(-mu))).expect("finite target");
        let p = ring.one().combine(&q, true).truncate_unchecked(Some(s));
        let mut acc = ring.one().truncate_unchecked(Some(s));
        let mut power = ring.one();
        loop {
            power = power.mul_capped(&p, Some(s));
            if power.is_zero() {
                break;
            }
            acc = acc.combine(&power, false);
            if acc.len() > max_terms || power.len() > max_terms {
                return Err(Error::TermBudget(max_terms));
            }
        }
        acc.precision = Some(s);
        Ok(acc.mul_capped(&lead_inv, None))
    }

    /// Abelianized free-part images of the stored support.
    pub fn support_vectors(&self) -> Vec<Vec<i64>> {
        let chi = &self.ring.chi;
        self.terms
            .keys()
            .map(|(_, w)| project(chi.free_projection(), w))
            .collect()
    }

    pub fn display_with(&self, names: &[String]) -> String {
        let body = self.to_group_ring().display_with(names);
        match self.truncation_height() {
            None => body,
            Some(t) => format!("{body} + O({t})"),
        }
    }
}

pub(crate) fn project(free_projection: &[Vec<i64>], w: &Word) -> Vec<i64> {
    let b = free_projection.first().map_or(0, |r| r.len());
    let mut out = vec![0i64; b];
    for &l in w.letters() {
        let row = &free_projection[(l.unsigned_abs() - 1) as usize];
        for (o, x) in out.iter_mut().zip(row) {
            if l > 0 {
                *o += x;
            } else {
                *o -= x;
            }
        }
    }
    out
}

fn accumulate(terms: &mut BTreeMap<(i64, Word), Scalar>, key: (i64, Word), c: Scalar) {
    if c.is_zero() {
        return;
    }
    match terms.entry(key) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            let s = e.get() + &c;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

impl Add for &NovikovElem {
    type Output = NovikovElem;
    fn add(self, o: &NovikovElem) -> NovikovElem {
        self.checked_add(o).expect("operands share a Novikov ring")
    }
}

impl Sub for &NovikovElem {
    type Output = NovikovElem;
    fn sub(self, o: &NovikovElem) -> NovikovElem {
        self.checked_sub(o).expect("operands share a Novikov ring")
    }
}

impl Mul for &NovikovElem {
    type Output = NovikovElem;
    fn mul(self, o: &NovikovElem) -> NovikovElem {
        self.checked_mul(o).expect("operands share a Novikov ring")
    }
}

impl Neg for &NovikovElem {
    type Output = NovikovElem;
    fn neg(self) -> NovikovElem {
        self.with_terms(
            self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
            self.precision,
        )
    }
}

/// A dense matrix of Novikov elements, row-major.
#[derive(Debug, Clone)]
pub struct NovikovMatrix {
    ring: Arc<NovikovRing>,
    pub rows: usize,
    pub cols: usize,
    entries: Vec<NovikovElem>,
}

impl NovikovMatrix {
    pub fn zeros(ring: &Arc<NovikovRing>, rows: usize, cols: usize) -> Self {
        NovikovMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: &Arc<NovikovRing>, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    /// Exact promotion of a group-ring matrix.
    pub fn exact(ring: &Arc<NovikovRing>, m: &GroupRingMatrix) -> Self {
        NovikovMatrix {
            ring: ring.clone(),
            rows: m.rows,
            cols: m.cols,
            entries: m.entries().iter().map(|e| ring.exact(e)).collect(),
        }
    }

    pub fn ring(&self) -> &Arc<NovikovRing> {
        &self.ring
    }

    pub fn get(&self, i: usize, j: usize) -> &NovikovElem {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: NovikovElem) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[NovikovElem] {
        &self.entries
    }

    pub fn mul_capped(&self, other: &NovikovMatrix, cap: Precision) -> Result<NovikovMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: Option<NovikovElem> = None;
                for k in 0..self.cols {
                    let x = self.get(i, k);
                    let y = other.get(k, j);
                    if x.is_exact() && x.is_zero() || y.is_exact() && y.is_zero() {
                        continue;
                    }
                    let t = x.mul_capped(y, cap);
                    acc = Some(match acc {
                        None => t,
                        Some(a) => a.combine(&t, false),
                    });
                }
                entries.push(acc.unwrap_or_else(|| self.ring.zero()));
            }
        }
        Ok(NovikovMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    pub fn sub(&self, other: &NovikovMatrix) -> Result<NovikovMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                got: other.rows * other.cols,
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.combine(b, true))
            .collect();
        Ok(NovikovMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Stored terms of every entry, as a group-ring matrix.
    pub fn to_group_ring(&self) -> GroupRingMatrix {
        let rows = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j).to_group_ring())
                    .collect()
            })
            .collect();
        GroupRingMatrix::from_rows(rows, self.cols).expect("consistent shape")
    }

    pub fn min_precision(&self) -> Precision {
        self.entries
            .iter()
            .fold(None, |acc, e| pmin(acc, e.precision))
    }
}
