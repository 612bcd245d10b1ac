//! Cone certificates: finite partial chain contractions whose residual is
//! strictly positive on an open cone of characters.
//!
//! For maps `h_i: C_i -> C_{i+1}` with finite support put
//! `N_i = I - D_i h_{i-1} - h_i D_{i+1}`. If every `N_i` in a window `[a, b]`
//! only involves group elements of positive height, then `f = I - N` is
//! invertible there by a Neumann series, and `f = Dh + hD` is null-homotopic.
//! Hence the homology vanishes in degrees `a+1..=b` (and in `a` when nothing
//! sits below it). Positivity is a finite set of strict linear inequalities in
//! the character, which is the cone.

use num_rational::BigRational;

use super::solve::Pivot;
use crate::complexes::{dualize, ChainComplex};
use crate::groupring::GroupRingMatrix;
use crate::novikov::SupportCone;
use crate::presentation::Character;

/// A degree certified without elimination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructuralReason {
    /// `C_i = 0`.
    ZeroModule,
    /// Degree 2 of the Lyndon resolution of a torsion-free one-relator group:
    /// the Novikov ring has no zero divisors, so the nonzero row `D_2` is injective.
    OneRelatorDomain,
}

impl std::fmt::Display for StructuralReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            StructuralReason::ZeroModule => "zero chain module",
            StructuralReason::OneRelatorDomain => "one-relator domain rule",
        })
    }
}

/// A pivot in user-facing terms.
#[derive(Debug, Clone, PartialEq)]
pub struct SideCondition {
    /// Homology degree of the complex the elimination ran on.
    pub working_degree: usize,
    pub row: usize,
    pub col: usize,
    /// Support vectors (original character orientation) that must stay positive.
    pub vectors: Vec<Vec<i64>>,
}

impl SideCondition {
    pub(crate) fn from_pivot(p: &Pivot, degree: usize, negate: bool) -> Self {
        let vectors = p
            .conditions
            .iter()
            .map(|v| {
                if negate {
                    v.iter().map(|x| -x).collect()
                } else {
                    v.clone()
                }
            })
            .collect();
        SideCondition {
            working_degree: degree,
            row: p.row,
            col: p.col,
            vectors,
        }
    }
}

/// Exact proof that Novikov (co)homology vanishes in a range of degrees, for
/// every character of an open cone.
#[derive(Debug, Clone, PartialEq)]
pub struct ConeCertificate {
    /// Certified degrees, in the convention of the query.
    pub degree_range: (usize, usize),
    pub cohomology: bool,
    /// Homology window of the working complex (the dual one for cohomology)
    /// on which the residual is positive.
    pub window: Option<(usize, usize)>,
    /// `h_{a-1}, ..., h_b` for the window `[a, b]`.
    pub contraction: Vec<GroupRingMatrix>,
    /// `N_a, ..., N_b`.
    pub residuals: Vec<GroupRingMatrix>,
    pub cone: SupportCone,
    /// Working truncation height in integral units of the character.
    pub height_used: i64,
    pub height_value: BigRational,
    pub side_conditions: Vec<SideCondition>,
    pub structural: Vec<(usize, StructuralReason)>,
}

impl ConeCertificate {
    /// A certificate needing no contraction (all degrees structural).
    pub fn structural(
        degree_range: (usize, usize),
        cohomology: bool,
        rank: usize,
        reasons: Vec<(usize, StructuralReason)>,
    ) -> Self {
        ConeCertificate {
            degree_range,
            cohomology,
            window: None,
            contraction: vec![],
            residuals: vec![],
            cone: SupportCone::full(rank),
            height_used: 0,
            height_value: BigRational::from_integer(0.into()),
            side_conditions: vec![],
            structural: reasons,
        }
    }

    /// Homology degrees of the working complex made acyclic by the window.
    pub fn window_degrees(&self, working: &ChainComplex) -> Option<(usize, usize)> {
        let (a, b) = self.window?;
        let start = if a == 0 || working.rank(a as isize - 1) == 0 {
            a
        } else {
            a + 1
        };
        Some((start, b))
    }

    /// Degrees of this certificate mapped into the working complex.
    fn working_degree(&self, d: usize, top: usize) -> Option<usize> {
        if self.cohomology {
            top.checked_sub(d)
        } else {
            Some(d)
        }
    }

    /// Independent re-verification against the original complex and character.
    ///
    /// Recomputes every residual exactly, checks strict positivity of its
    /// support, checks that the cone forces that positivity, that the cone
    /// contains `chi`, and that every degree in the range is accounted for.
    pub fn verify(&self, complex: &ChainComplex, chi: &Character) -> Result<(), String> {
        let working = if self.cohomology {
            dualize(complex)
        } else {
            complex.clone()
        };
        let phi = if self.cohomology {
            chi.negate()
        } else {
            chi.clone()
        };
        let ring = working.ring();
        let top = working.top();

        if !self.cone.contains(chi).map_err(|e| e.to_string())? {
            return Err("cone does not contain the character".into());
        }
        if let Some((a, b)) = self.window {
            if self.contraction.len() != b - a + 2 || self.residuals.len() != b - a + 1 {
                return Err("contraction data has the wrong length".into());
            }
            for (k, i) in (a..=b).enumerate() {
                let ii = i as isize;
                let h_prev = &self.contraction[k];
                let h_next = &self.contraction[k + 1];
                let id = ring.identity(working.rank(ii));
                let t1 = ring
                    .mat_mul(&working.boundary(ii), h_prev)
                    .map_err(|e| e.to_string())?;
                let t2 = ring
                    .mat_mul(h_next, &working.boundary(ii + 1))
                    .map_err(|e| e.to_string())?;
                let n = ring
                    .mat_sub(&ring.mat_sub(&id, &t1).map_err(|e| e.to_string())?, &t2)
                    .map_err(|e| e.to_string())?;
                if n != self.residuals[k] {
                    return Err(format!("residual in degree {i} does not match"));
                }
                for e in n.entries() {
                    for w in e.terms().keys() {
                        if phi.height(w) <= 0 {
                            return Err(format!("residual in degree {i} is not strictly positive"));
                        }
                        let mut v = crate::novikov::project(phi.free_projection(), w);
                        if self.cohomology {
                            v.iter_mut().for_each(|x| *x = -*x);
                        }
                        if !self
                            .cone
                            .strict()
                            .iter()
                            .any(|s| is_positive_multiple(s, &v))
                        {
                            return Err(format!(
                                "cone does not force positivity of a residual term in degree {i}"
                            ));
                        }
                    }
                }
            }
        }
        let (lo, hi) = self.degree_range;
        let covered = self.window_degrees(&working);
        for d in lo..=hi {
            if self.structural.iter().any(|(s, _)| *s == d) {
                continue;
            }
            let Some(w) = self.working_degree(d, top) else {
                return Err(format!(
                    "degree {d} is outside the complex and not structural"
                ));
            };
            match covered {
                Some((x, y)) if x <= w && w <= y => {}
                _ => {
                    return Err(format!(
                        "degree {d} is not covered by the contraction window"
                    ))
                }
            }
        }
        for (d, reason) in &self.structural {
            let ok = match reason {
                StructuralReason::ZeroModule => match self.working_degree(*d, top) {
                    Some(w) => working.rank(w as isize) == 0,
                    None => true,
                },
                StructuralReason::OneRelatorDomain => {
                    !self.cohomology && *d == 2 && complex.one_relator_torsion_free && !complex.dual
                }
            };
            if !ok {
                return Err(format!("structural claim for degree {d} does not apply"));
            }
        }
        Ok(())
    }

    /// The same proof, read as a certificate for a smaller range of degrees.
    pub fn restrict(&self, lo: usize, hi: usize) -> Option<ConeCertificate> {
        let (a, b) = self.degree_range;
        if lo < a || hi > b || lo > hi {
            return None;
        }
        let mut c = self.clone();
        c.degree_range = (lo, hi);
        c.structural.retain(|(d, _)| lo <= *d && *d <= hi);
        Some(c)
    }
}

fn is_positive_multiple(prim: &[i64], v: &[i64]) -> bool {
    // v = k * prim for some k > 0
    let mut k: Option<(i64, i64)> = None;
    for (&p, &x) in prim.iter().zip(v) {
        if p == 0 {
            if x != 0 {
                return false;
            }
            continue;
        }
        match k {
            None => {
                if (x > 0) != (p > 0) || x == 0 {
                    return false;
                }
                k = Some((x, p));
            }
            Some((kx, kp)) => {
                if x as i128 * kp as i128 != kx as i128 * p as i128 {
                    return false;
                }
            }
        }
    }
    k.is_some()
}
