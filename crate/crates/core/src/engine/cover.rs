//! Covering the character sphere of a co-abelian subgroup by certificate cones.

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::report::{QueryRecord, Session};
use super::{sigma_star_membership, Verdict};
use crate::error::{Error, Result};
use crate::novikov::fm_feasible;
use crate::presentation::{Character, CharacterSphere};

/// The flag `Z^d > Z^{d-1} > ... > Z` and its distinguished characters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PolyZSeries {
    pub rank: usize,
    /// Ordered basis of `Z^d`.
    pub basis: Vec<Vec<i64>>,
    /// `characters[j]` is primitive on level `j` (spanned by `basis[j..]`),
    /// written in the standard coordinates of `Z^d`.
    pub characters: Vec<Vec<i64>>,
}

/// `basis_order` permutes the standard basis; the identity when empty.
pub fn polyz_series(
    s: &Session,
    quotient: &[Vec<i64>],
    basis_order: &[usize],
) -> Result<PolyZSeries> {
    let d = quotient.first().map_or(0, |r| r.len());
    CharacterSphere::from_quotient(&s.abelianization, quotient, d)?;
    let order: Vec<usize> = if basis_order.is_empty() {
        (0..d).collect()
    } else {
        basis_order.to_vec()
    };
    let mut sorted = order.clone();
    sorted.sort_unstable();
    if sorted != (0..d).collect::<Vec<_>>() {
        return Err(Error::InvalidInput(
            "basis order is not a permutation".into(),
        ));
    }
    let unit = |k: usize| (0..d).map(|i| i64::from(i == k)).collect::<Vec<i64>>();
    let basis: Vec<Vec<i64>> = order.iter().map(|&k| unit(k)).collect();
    Ok(PolyZSeries {
        rank: d,
        characters: basis.clone(),
        basis,
    })
}

/// Outcome of [`cover_sphere`].
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CoverReport {
    pub group: String,
    pub field: String,
    pub quotient_rank: usize,
    pub cd_assertion: usize,
    pub degrees: [usize; 2],
    pub samples: Vec<Vec<i64>>,
    pub queries: Vec<QueryRecord>,
    /// Cones pulled back to sphere coordinates.
    pub cones: Vec<Vec<Vec<i64>>>,
    pub covered: bool,
    pub uncovered_witness: Option<Vec<String>>,
    pub series: PolyZSeries,
    pub conclusion: String,
}

impl CoverReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Primitive vectors of `Z^d` ordered by max-norm, then lexicographically from the top.
pub fn farey_directions(d: usize, limit: usize) -> Vec<Vec<i64>> {
    if d == 1 {
        // the only primitive vectors
        return [vec![1], vec![-1]].into_iter().take(limit).collect();
    }
    let mut out = vec![];
    let mut norm = 1i64;
    while out.len() < limit && d > 0 {
        let mut layer: Vec<Vec<i64>> = vec![];
        let side = (2 * norm + 1) as usize;
        let total = side.checked_pow(d as u32).unwrap_or(usize::MAX);
        for code in 0..total.min(1 << 20) {
            let v: Vec<i64> = (0..d)
                .map(|i| ((code / side.pow(i as u32)) % side) as i64 - norm)
                .collect();
            let max = v.iter().map(|x| x.abs()).max().unwrap_or(0);
            let g = v.iter().fold(0i64, |a, &x| a.gcd(&x));
            if max == norm && g == 1 {
                layer.push(v);
            }
        }
        // axes first, then by number of nonzero entries, then descending
        layer.sort_by_key(|v| {
            (
                v.iter().filter(|&&x| x != 0).count(),
                std::cmp::Reverse(v.clone()),
            )
        });
        out.extend(layer);
        norm += 1;
    }
    out.truncate(limit);
    out
}

fn pull_back(sphere: &CharacterSphere, v: &[i64]) -> Vec<i64> {
    // (B^T v)_k = <basis_k, v>; basis entries are rational, scale to integers
    let vals: Vec<BigRational> = sphere
        .basis
        .iter()
        .map(|b| {
            b.iter().zip(v).fold(BigRational::zero(), |acc, (x, &y)| {
                acc + x * BigRational::from_integer(y.into())
            })
        })
        .collect();
    let l = vals
        .iter()
        .fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<num_bigint::BigInt> = vals
        .iter()
        .map(|x| (x * BigRational::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints
        .iter()
        .fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x));
    ints.iter()
        .map(|x| {
            let y = if g.is_zero() { x.clone() } else { x / &g };
            i64::try_from(y).expect("cone vector fits in i64")
        })
        .collect()
}

fn inside(cone: &[Vec<i64>], phi: &[BigRational]) -> bool {
    cone.iter().all(|v| {
        v.iter()
            .zip(phi)
            .fold(BigRational::zero(), |acc, (&a, x)| {
                acc + x * BigRational::from_integer(a.into())
            })
            .is_positive()
    })
}

/// A nonzero point of `R^d` outside every open cone, if one exists.
pub fn uncovered_point(cones: &[Vec<Vec<i64>>], d: usize) -> Option<Vec<BigRational>> {
    let q = |x: i64| BigRational::from_integer(x.into());
    // Normalize by the max-norm coordinate: phi_i = s, |phi_j| <= 1.
    for i in 0..d {
        for s in [1i64, -1] {
            let mut base = vec![];
            for j in 0..d {
                let mut e = vec![q(0); d];
                e[j] = q(1);
                let ne: Vec<BigRational> = e.iter().map(|x| -x).collect();
                if j == i {
                    base.push((e, q(s)));
                    base.push((ne, q(-s)));
                } else {
                    base.push((e, q(1)));
                    base.push((ne, q(1)));
                }
            }
            if let Some(w) = search(cones, base, d) {
                return Some(w);
            }
        }
    }
    None
}

type Row = (Vec<BigRational>, BigRational);

fn search(cones: &[Vec<Vec<i64>>], rows: Vec<Row>, d: usize) -> Option<Vec<BigRational>> {
    let w = fm_feasible(&rows, d)?;
    let Some(c) = cones.iter().find(|c| inside(c, &w)) else {
        return Some(w);
    };
    // w is strictly inside c; leave c through one of its walls
    for v in c {
        let mut next = rows.clone();
        next.push((
            v.iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect(),
            BigRational::zero(),
        ));
        if let Some(found) = search(cones, next, d) {
            return Some(found);
        }
    }
    None
}

/// Tries to cover the sphere of characters vanishing on the kernel of
/// `quotient` (generator images in `Z^d`) by cones on which cohomology
/// vanishes in degrees `n - d < i <= n`.
pub fn cover_sphere(
    s: &Session,
    quotient: &[Vec<i64>],
    n: usize,
    budget: usize,
) -> Result<CoverReport> {
    let d = quotient.first().map_or(0, |r| r.len());
    if d == 0 {
        return Err(Error::InvalidInput(
            "quotient rank must be at least 1".into(),
        ));
    }
    for (k, r) in s.presentation.relators.iter().enumerate() {
        let e = r.exponent_vector(s.presentation.num_generators());
        let img: Vec<i64> = (0..d)
            .map(|j| e.iter().zip(quotient).map(|(a, row)| a * row[j]).sum())
            .collect();
        if img.iter().any(|&x| x != 0) {
            return Err(Error::QuotientNotDefined(k + 1));
        }
    }
    let sphere = CharacterSphere::from_quotient(&s.abelianization, quotient, d)?;
    let series = polyz_series(s, quotient, &[])?;
    let degrees = ((n + 1).saturating_sub(d), n);
    let mut samples = vec![];
    let mut queries = vec![];
    let mut cones: Vec<Vec<Vec<i64>>> = vec![];
    let mut covered = false;
    let candidates = farey_directions(d, budget.saturating_mul(64).max(2 * d));
    for phi in candidates {
        if samples.len() >= budget {
            break;
        }
        let phi_q: Vec<BigRational> = phi
            .iter()
            .map(|&x| BigRational::from_integer(x.into()))
            .collect();
        if cones.iter().any(|c| inside(c, &phi_q)) {
            continue;
        }
        let chi = Character::from_vector(&s.abelianization, &sphere.embed(&phi_q))?;
        let v = sigma_star_membership(&s.complex, &chi, n, d, &s.options)?;
        queries.push(QueryRecord::new(&chi, 1, true, degrees, &v));
        samples.push(phi);
        if let Verdict::Vanishes(cert) = &v {
            let pulled: Vec<Vec<i64>> = cert
                .cone
                .strict()
                .iter()
                .map(|w| pull_back(&sphere, w))
                .collect();
            cones.push(pulled);
            if uncovered_point(&cones, d).is_none() {
                covered = true;
                break;
            }
        }
    }
    let witness = if covered {
        None
    } else {
        uncovered_point(&cones, d)
    };
    let conclusion = if covered {
        format!(
            "covered by {} cones; cd(N) <= {}",
            cones.len(),
            n.saturating_sub(d)
        )
    } else {
        format!(
            "not covered after {} samples ({} cones); cd(N) undecided",
            samples.len(),
            cones.len()
        )
    };
    Ok(CoverReport {
        group: s.presentation.name.clone(),
        field: s.field().to_string(),
        quotient_rank: d,
        cd_assertion: n,
        degrees: [degrees.0, degrees.1],
        samples,
        queries,
        cones,
        covered,
        uncovered_witness: witness.map(|w| w.iter().map(|x| x.to_string()).collect()),
        series,
        conclusion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn farey_order_starts_with_axes() {
        let v = farey_directions(2, 8);
        assert_eq!(v[..4], [vec![1, 0], vec![0, 1], vec![0, -1], vec![-1, 0]]);
        assert_eq!(v.len(), 8);
        assert_eq!(farey_directions(1, 100), vec![vec![1], vec![-1]]);
    }

    #[test]
    fn half_planes_cover_the_circle() {
        let h = |a: i64, b: i64| vec![vec![a, b]];
        assert!(uncovered_point(&[h(1, 0), h(-1, 0)], 2).is_some());
        assert!(uncovered_point(&[h(1, 0), h(-1, 0), h(0, 1), h(0, -1)], 2).is_none());
        let w = uncovered_point(&[h(1, 0), h(0, 1)], 2).unwrap();
        assert!(w[0] <= BigRational::zero() && w[1] <= BigRational::zero());
    }
}
