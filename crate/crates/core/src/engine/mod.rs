//! Certified vanishing of Novikov (co)homology.
//!
//! Every positive answer is a [`ConeCertificate`]: a finite partial chain
//! contraction whose residual is exactly computed and strictly positive on an
//! open cone of characters containing the queried one.

mod certificate;
mod contraction;
mod cover;
mod report;
mod solve;

use num_rational::BigRational;
use serde::Serialize;

pub use certificate::{ConeCertificate, SideCondition, StructuralReason};
pub use cover::{cover_sphere, polyz_series, CoverReport, PolyZSeries};
pub use report::{
    baumslag_solitar_parameters, cd_drop_report, sigma_report, sigma_star_report, virtual_search,
    ComplexInfo, QueryRecord, Report, SearchEntry, SearchReport, Session,
};
pub use solve::{Elimination, Obstruction, Pivot};

use crate::complexes::{dualize, ChainComplex};
use crate::error::{Error, Result};
use crate::presentation::{Character, Presentation};

/// Outcome of a vanishing query.
#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Vanishes(Box<ConeCertificate>),
    NonVanishingCertified(NonVanishingReason),
    Inconclusive {
        max_height_tried: BigRational,
        obstruction: String,
    },
}

/// Sound rules for non-vanishing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum NonVanishingReason {
    /// Both differentials at a nonzero chain module are zero.
    ZeroDifferentials { degree: usize },
}

impl std::fmt::Display for NonVanishingReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NonVanishingReason::ZeroDifferentials { degree } => {
                write!(
                    f,
                    "both differentials vanish at the nonzero module in degree {degree}"
                )
            }
        }
    }
}

impl Verdict {
    pub fn vanishes(&self) -> bool {
        matches!(self, Verdict::Vanishes(_))
    }

    pub fn certificate(&self) -> Option<&ConeCertificate> {
        match self {
            Verdict::Vanishes(c) => Some(c),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Vanishes(_) => "vanishes",
            Verdict::NonVanishingCertified(_) => "nonvanishing",
            Verdict::Inconclusive { .. } => "inconclusive",
        }
    }
}

/// Engine configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineOptions {
    /// Truncation heights tried, as multiples of the character's unit height.
    pub schedule: Vec<i64>,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions::with_cap(64)
    }
}

impl EngineOptions {
    /// Doubling schedule `4, 8, 16, ...` up to `cap` (at least one step).
    pub fn with_cap(cap: i64) -> Self {
        let cap = cap.max(1);
        let mut schedule = vec![];
        let mut t = 4.min(cap);
        while t <= cap {
            schedule.push(t);
            t *= 2;
        }
        EngineOptions { schedule }
    }

    pub fn cap(&self) -> i64 {
        self.schedule.last().copied().unwrap_or(0)
    }
}

/// Which degrees a query needs, after structural rules.
enum Plan {
    NonVanishing(NonVanishingReason),
    Work {
        structural: Vec<(usize, StructuralReason)>,
        /// Working-complex degrees still to prove.
        need: Option<(usize, usize)>,
    },
}

fn plan(
    working: &ChainComplex,
    degrees: (usize, usize),
    to_working: impl Fn(usize) -> Option<usize>,
    one_relator: bool,
) -> Plan {
    let mut structural = vec![];
    let mut need: Option<(usize, usize)> = None;
    for d in degrees.0..=degrees.1 {
        let Some(w) = to_working(d).filter(|&w| w <= working.top()) else {
            structural.push((d, StructuralReason::ZeroModule));
            continue;
        };
        let wi = w as isize;
        if working.rank(wi) == 0 {
            structural.push((d, StructuralReason::ZeroModule));
            continue;
        }
        if one_relator && d == 2 {
            structural.push((d, StructuralReason::OneRelatorDomain));
            continue;
        }
        if working.boundary(wi).is_zero() && working.boundary(wi + 1).is_zero() {
            return Plan::NonVanishing(NonVanishingReason::ZeroDifferentials { degree: d });
        }
        need = Some(match need {
            None => (w, w),
            Some((a, b)) => (a.min(w), b.max(w)),
        });
    }
    Plan::Work { structural, need }
}

fn run(
    original: &ChainComplex,
    chi: &Character,
    degrees: (usize, usize),
    cohomology: bool,
    opts: &EngineOptions,
) -> Result<Verdict> {
    if chi.is_zero() {
        return Err(Error::ZeroCharacter);
    }
    if degrees.0 > degrees.1 {
        return Err(Error::InvalidInput(format!(
            "empty degree range {}..{}",
            degrees.0, degrees.1
        )));
    }
    let working = if cohomology {
        dualize(original)
    } else {
        original.clone()
    };
    let phi = if cohomology {
        chi.negate()
    } else {
        chi.clone()
    };
    let top = original.top();
    let one_relator = !cohomology && original.one_relator_torsion_free && !original.dual;
    let p = if cohomology {
        plan(&working, degrees, |d| top.checked_sub(d), one_relator)
    } else {
        plan(&working, degrees, Some, one_relator)
    };
    let (structural, need) = match p {
        Plan::NonVanishing(r) => return Ok(Verdict::NonVanishingCertified(r)),
        Plan::Work { structural, need } => (structural, need),
    };
    let Some((lo, hi)) = need else {
        return Ok(Verdict::Vanishes(Box::new(ConeCertificate::structural(
            degrees,
            cohomology,
            chi.rank(),
            structural,
        ))));
    };
    let unit = phi.unit_height();
    let mut last = String::from("empty height schedule");
    let mut tried = 0;
    for &m in &opts.schedule {
        let cap = m * unit;
        tried = cap;
        match contraction::contract(&working, &phi, lo, hi, cap) {
            Ok(done) => {
                let (cone, side_conditions) =
                    contraction::contraction_cone(&done, &phi, cohomology);
                let cert = ConeCertificate {
                    degree_range: degrees,
                    cohomology,
                    window: Some(done.window),
                    contraction: done.h,
                    residuals: done.residuals,
                    cone,
                    height_used: cap,
                    height_value: BigRational::from_integer(cap.into()) / phi.integral_scale(),
                    side_conditions,
                    structural: structural.clone(),
                };
                if let Err(e) = cert.verify(original, chi) {
                    last = format!("certificate rejected: {e}");
                    continue;
                }
                return Ok(Verdict::Vanishes(Box::new(cert)));
            }
            Err(f) => {
                last = f.to_string();
                if f.is_budget() {
                    break;
                }
            }
        }
    }
    Ok(Verdict::Inconclusive {
        max_height_tried: BigRational::from_integer(tried.into()) / phi.integral_scale(),
        obstruction: last,
    })
}

/// Does `H_i(C; Nov^chi)` vanish for `i` in `degrees`?
pub fn check_homology_vanishing(
    c: &ChainComplex,
    chi: &Character,
    degrees: (usize, usize),
    opts: &EngineOptions,
) -> Result<Verdict> {
    run(c, chi, degrees, false, opts)
}

/// Does `H^i(C; Nov^chi)` vanish for `i` in `degrees`?
///
/// Computed as homology of the dual complex at `-chi` in the mirrored degree.
pub fn check_cohomology_vanishing(
    c: &ChainComplex,
    chi: &Character,
    degrees: (usize, usize),
    opts: &EngineOptions,
) -> Result<Verdict> {
    run(c, chi, degrees, true, opts)
}

/// `chi` lies in the BNS invariant when homology vanishes in degrees 0 and 1.
pub fn sigma_membership(
    c: &ChainComplex,
    chi: &Character,
    opts: &EngineOptions,
) -> Result<Verdict> {
    check_homology_vanishing(c, chi, (0, 1), opts)
}

/// `H^i(C; Nov^chi) = 0` for `n - m < i <= n`, with `n` the asserted cohomological dimension.
pub fn sigma_star_membership(
    c: &ChainComplex,
    chi: &Character,
    n: usize,
    m: usize,
    opts: &EngineOptions,
) -> Result<Verdict> {
    if m == 0 {
        return Err(Error::InvalidInput("m must be at least 1".into()));
    }
    if n > c.top() && !c.exactness_known {
        return Err(Error::DegreeOutOfRange {
            degree: n,
            top: c.top(),
        });
    }
    let lo = (n + 1).saturating_sub(m);
    check_cohomology_vanishing(c, chi, (lo, n), opts)
}

/// Degree-2 homology of a torsion-free one-relator group vanishes for every nonzero character.
pub fn one_relator_h2_rule(p: &Presentation, chi: &Character) -> Result<Verdict> {
    if p.relators.len() != 1 {
        return Err(Error::NotOneRelator(p.relators.len()));
    }
    if p.relator_is_proper_power(0) {
        return Err(Error::ProperPowerRelator);
    }
    if chi.is_zero() {
        return Err(Error::ZeroCharacter);
    }
    Ok(Verdict::Vanishes(Box::new(ConeCertificate::structural(
        (2, 2),
        false,
        chi.rank(),
        vec![(2, StructuralReason::OneRelatorDomain)],
    ))))
}

#[cfg(test)]
mod tests;
