//! Group-level reports built on top of the vanishing queries.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::{check_homology_vanishing, sigma_star_membership, EngineOptions, Verdict};
use crate::complexes::{standard_complex, ChainComplex, ComplexKind};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groupring::GroupRing;
use crate::laurent::{complex_from_group, homology_k_dims};
use crate::novikov::SupportCone;
use crate::presentation::{
    abelianize, knuth_bendix, reidemeister_schreier, AbelianizationData, Character, Permutation,
    Presentation, RewritingSystem,
};

/// Everything derived from one presentation that queries need.
#[derive(Debug, Clone)]
pub struct Session {
    pub presentation: Presentation,
    pub rewriting: Arc<RewritingSystem>,
    pub ring: Arc<GroupRing>,
    pub abelianization: AbelianizationData,
    pub complex: ChainComplex,
    pub options: EngineOptions,
}

impl Session {
    /// Completes the rewriting system and builds the standard complex.
    pub fn new(
        p: Presentation,
        field: Field,
        kb: (usize, usize),
        options: EngineOptions,
    ) -> Result<Session> {
        let rewriting = Arc::new(knuth_bendix(&p, kb.0, kb.1));
        let ring = GroupRing::new(rewriting.clone(), field)?;
        let abelianization = abelianize(&p);
        let complex = standard_complex(&p, &ring)?;
        Ok(Session {
            presentation: p,
            rewriting,
            ring,
            abelianization,
            complex,
            options,
        })
    }

    pub fn field(&self) -> Field {
        self.ring.field()
    }

    pub fn character(&self, coords: &[BigRational]) -> Result<Character> {
        Character::from_vector(&self.abelianization, coords)
    }

    pub fn basis_names(&self) -> Vec<String> {
        self.abelianization
            .basis_names(&self.presentation.generators)
    }

    fn report(
        &self,
        cd_assertion: Option<usize>,
        queries: Vec<QueryRecord>,
        conclusion: String,
    ) -> Report {
        Report {
            group: self.presentation.name.clone(),
            field: self.field().to_string(),
            basis: self.basis_names(),
            complex: ComplexInfo {
                kind: self.complex.kind,
                exactness_known: self.complex.exactness_known,
            },
            cd_assertion,
            queries,
            intersection_cone: None,
            conclusion,
            conclusive: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ComplexInfo {
    pub kind: ComplexKind,
    pub exactness_known: bool,
}

/// One verdict in a report.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct QueryRecord {
    pub character: Vec<String>,
    pub sign: String,
    /// `"homology"` or `"cohomology"`.
    pub convention: String,
    pub degrees: [usize; 2],
    pub verdict: String,
    pub height_used: Option<String>,
    pub cone: Option<SupportCone>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl QueryRecord {
    pub fn new(
        chi: &Character,
        sign: i32,
        cohomology: bool,
        degrees: (usize, usize),
        v: &Verdict,
    ) -> Self {
        let (height_used, cone, detail) = match v {
            Verdict::Vanishes(c) => (
                Some(c.height_value.to_string()),
                Some(c.cone.clone()),
                (!c.structural.is_empty()).then(|| {
                    c.structural
                        .iter()
                        .map(|(d, r)| format!("degree {d}: {r}"))
                        .collect::<Vec<_>>()
                        .join("; ")
                }),
            ),
            Verdict::NonVanishingCertified(r) => (None, None, Some(r.to_string())),
            Verdict::Inconclusive {
                max_height_tried,
                obstruction,
            } => (
                Some(max_height_tried.to_string()),
                None,
                Some(obstruction.clone()),
            ),
        };
        QueryRecord {
            character: chi.coords_display(),
            sign: if sign >= 0 { "+" } else { "-" }.into(),
            convention: if cohomology { "cohomology" } else { "homology" }.into(),
            degrees: [degrees.0, degrees.1],
            verdict: v.label().into(),
            height_used,
            cone,
            detail,
        }
    }
}

/// Report JSON with stable keys.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub group: String,
    pub field: String,
    pub basis: Vec<String>,
    pub complex: ComplexInfo,
    pub cd_assertion: Option<usize>,
    pub queries: Vec<QueryRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub intersection_cone: Option<SupportCone>,
    pub conclusion: String,
    /// No query was inconclusive and a definite conclusion was reached.
    pub conclusive: bool,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// BNS membership of `chi` and `-chi`.
pub fn sigma_report(s: &Session, chi: &Character) -> Result<(Report, [Verdict; 2])> {
    let neg = chi.negate();
    let vp = check_homology_vanishing(&s.complex, chi, (0, 1), &s.options)?;
    let vn = check_homology_vanishing(&s.complex, &neg, (0, 1), &s.options)?;
    let queries = vec![
        QueryRecord::new(chi, 1, false, (0, 1), &vp),
        QueryRecord::new(chi, -1, false, (0, 1), &vn),
    ];
    let part = |v: &Verdict, sign: &str| match v {
        Verdict::Vanishes(_) => format!("{sign}chi in Sigma"),
        Verdict::NonVanishingCertified(_) => format!("{sign}chi not in Sigma"),
        Verdict::Inconclusive { .. } => format!("{sign}chi undecided"),
    };
    let conclusion = format!("{}; {}", part(&vp, "+"), part(&vn, "-"));
    let mut r = s.report(None, queries, conclusion);
    r.conclusive =
        !matches!(vp, Verdict::Inconclusive { .. }) && !matches!(vn, Verdict::Inconclusive { .. });
    Ok((r, [vp, vn]))
}

/// `H^i(G; Nov^{+-chi}) = 0` for `n - m < i <= n`.
pub fn sigma_star_report(
    s: &Session,
    chi: &Character,
    n: usize,
    m: usize,
) -> Result<(Report, [Verdict; 2])> {
    let neg = chi.negate();
    let vp = sigma_star_membership(&s.complex, chi, n, m, &s.options)?;
    let vn = sigma_star_membership(&s.complex, &neg, n, m, &s.options)?;
    let degrees = ((n + 1).saturating_sub(m), n);
    let queries = vec![
        QueryRecord::new(chi, 1, true, degrees, &vp),
        QueryRecord::new(chi, -1, true, degrees, &vn),
    ];
    let part = |v: &Verdict, sign: &str| match v {
        Verdict::Vanishes(_) => format!("{sign}chi in Sigma*_{m}"),
        Verdict::NonVanishingCertified(_) => format!("{sign}chi not in Sigma*_{m}"),
        Verdict::Inconclusive { .. } => format!("{sign}chi undecided"),
    };
    let conclusion = format!("{}; {} (assuming cd = {n})", part(&vp, "+"), part(&vn, "-"));
    let mut r = s.report(Some(n), queries, conclusion);
    r.conclusive =
        !matches!(vp, Verdict::Inconclusive { .. }) && !matches!(vn, Verdict::Inconclusive { .. });
    Ok((r, [vp, vn]))
}

/// Primitive integral multiple of an integral character.
fn primitive_integral(s: &Session, chi: &Character) -> Result<Character> {
    if chi.coords().iter().any(|x| !x.is_integer()) {
        return Err(Error::NonIntegralCharacter);
    }
    if chi.is_zero() {
        return Err(Error::ZeroCharacter);
    }
    let g = chi
        .coords()
        .iter()
        .fold(BigInt::zero(), |acc, x| acc.gcd(&x.to_integer()));
    let v: Vec<BigRational> = chi
        .coords()
        .iter()
        .map(|x| x / BigRational::from_integer(g.clone()))
        .collect();
    s.character(&v)
}

/// `(m, n)` when the single relator is `x y^m x^-1 y^-n` up to rotation, inversion and renaming.
pub fn baumslag_solitar_parameters(p: &Presentation) -> Option<(i64, i64)> {
    if p.relators.len() != 1 {
        return None;
    }
    let r = p.relators[0].letters();
    let len = r.len();
    let inverse: Vec<i32> = r.iter().rev().map(|l| -l).collect();
    for word in [r.to_vec(), inverse] {
        for shift in 0..len {
            let w: Vec<i32> = word[shift..]
                .iter()
                .chain(&word[..shift])
                .copied()
                .collect();
            if let Some(mn) = match_bs(&w) {
                return Some(mn);
            }
        }
    }
    None
}

fn match_bs(w: &[i32]) -> Option<(i64, i64)> {
    let x = *w.first()?;
    let mut i = 1;
    let y = w.get(i).copied()?.abs();
    if y == x.abs() {
        return None;
    }
    let run = |i: &mut usize| -> i64 {
        let Some(&first) = w.get(*i) else { return 0 };
        if first.abs() != y {
            return 0;
        }
        let mut k = 0;
        while w.get(*i) == Some(&first) {
            *i += 1;
            k += 1;
        }
        if first > 0 {
            k
        } else {
            -k
        }
    };
    let m = run(&mut i);
    if m == 0 || w.get(i) != Some(&-x) {
        return None;
    }
    i += 1;
    let k = run(&mut i);
    (k != 0 && i == w.len()).then_some((m, -k))
}

/// Kernel rank of `chi` via the `Q[t, t^-1]` Alexander complex, when finite.
fn kernel_betti_1(s: &Session, chi: &Character) -> Option<usize> {
    let lc = complex_from_group(&s.complex, chi).ok()?;
    homology_k_dims(&lc).ok()?.get(1).copied().flatten()
}

/// Does `ker chi` have cohomological dimension `n - 1`?
pub fn cd_drop_report(s: &Session, chi: &Character, n: usize) -> Result<(Report, [Verdict; 2])> {
    let chi = primitive_integral(s, chi)?;
    let (mut r, verdicts) = sigma_star_report(s, &chi, n, 1)?;
    let [vp, vn] = &verdicts;
    match (vp, vn) {
        (Verdict::Vanishes(cp), Verdict::Vanishes(cn)) => {
            let mut conclusion = format!("cd(ker) = {}", n.saturating_sub(1));
            if n == 2 && s.complex.exactness_known {
                conclusion.push_str("; kernel free (Stallings-Swan)");
                if let Some(b) = kernel_betti_1(s, &chi) {
                    conclusion = format!("cd(ker) = 1; kernel free of rank {b} (Stallings-Swan)");
                }
            }
            r.intersection_cone = Some(cp.cone.intersect(&cn.cone.negate()));
            r.conclusion = conclusion;
            r.conclusive = true;
        }
        _ => {
            let mut conclusion = format!("Unknown: +chi {}, -chi {}", vp.label(), vn.label());
            if let Some((m, k)) = baumslag_solitar_parameters(&s.presentation) {
                if m.abs() != k.abs() && m.abs() > 1 && k.abs() > 1 {
                    conclusion.push_str(&format!(
                        "; BS({m},{k}) is not residually finite, hence not virtually free-by-cyclic"
                    ));
                }
            }
            r.conclusion = conclusion;
            r.conclusive = false;
        }
    }
    Ok((r, verdicts))
}

/// One subgroup tried by [`virtual_search`].
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchEntry {
    pub index: usize,
    pub subgroup: String,
    pub generators: usize,
    pub relators: usize,
    pub tried: Vec<Report>,
    pub success: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchReport {
    pub group: String,
    pub cd_assertion: usize,
    pub entries: Vec<SearchEntry>,
    pub found: Option<usize>,
}

/// Primitive integral vectors with entries in `-1..=1`, nonzero, first nonzero entry positive.
fn small_characters(rank: usize, limit: usize) -> Vec<Vec<i64>> {
    let mut out = vec![];
    let total = 3usize.pow(rank.min(6) as u32);
    for code in 0..total {
        let v: Vec<i64> = (0..rank)
            .map(|i| {
                if i < 6 {
                    ((code / 3usize.pow(i as u32)) % 3) as i64 - 1
                } else {
                    0
                }
            })
            .collect();
        if v.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0) {
            out.push(v);
        }
    }
    out.sort_by_key(|v| {
        (
            v.iter().filter(|&&x| x != 0).count(),
            std::cmp::Reverse(v.clone()),
        )
    });
    out.truncate(limit);
    out
}

/// Tries finite-index subgroups, given by permutation representations, for
/// an integral character whose kernel drops cohomological dimension.
pub fn virtual_search(
    p: &Presentation,
    field: Field,
    kb: (usize, usize),
    options: &EngineOptions,
    reps: &[Vec<Permutation>],
    n: usize,
) -> Result<SearchReport> {
    let mut entries = vec![];
    let mut found = None;
    for (k, rep) in reps.iter().enumerate() {
        let sub = reidemeister_schreier(p, rep)?;
        let session = Session::new(sub, field, kb, options.clone())?;
        let mut tried = vec![];
        let mut success = false;
        for v in small_characters(session.abelianization.free_rank, 8) {
            let chi = Character::from_integers(&session.abelianization, &v)?;
            let (r, _) = cd_drop_report(&session, &chi, n)?;
            success = r.conclusive;
            tried.push(r);
            if success {
                break;
            }
        }
        entries.push(SearchEntry {
            index: rep.first().map_or(1, |g| g.len()),
            subgroup: session.presentation.to_string(),
            generators: session.presentation.num_generators(),
            relators: session.presentation.relators.len(),
            tried,
            success,
        });
        if success {
            found = Some(k);
            break;
        }
    }
    Ok(SearchReport {
        group: p.name.clone(),
        cd_assertion: n,
        entries,
        found,
    })
}
