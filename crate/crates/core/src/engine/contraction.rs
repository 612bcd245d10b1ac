//! Building partial chain contractions degree by degree.

use super::certificate::SideCondition;
use super::solve::{check_budget, Elimination, Obstruction, Pivot, WORD_LIMIT};
use crate::complexes::{tensor_novikov_bounded, ChainComplex, NovikovComplex};
use crate::groupring::GroupRingMatrix;
use crate::novikov::{project, NovikovMatrix, SupportCone};
use crate::presentation::Character;

/// A contraction whose exact residual is positive on `window`.
#[derive(Debug, Clone)]
pub(crate) struct Contraction {
    pub window: (usize, usize),
    /// Working degrees made acyclic.
    pub certified: (usize, usize),
    pub h: Vec<GroupRingMatrix>,
    pub residuals: Vec<GroupRingMatrix>,
    pub pivots: Vec<(usize, Pivot)>,
}

#[derive(Debug, Clone)]
pub(crate) enum Failure {
    Blocked {
        degree: usize,
        obstruction: Obstruction,
    },
    NotPositive {
        degree: usize,
    },
}

impl Failure {
    /// Larger heights only make the series longer.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Failure::Blocked {
                obstruction: Obstruction::TermBudget { .. } | Obstruction::WordLength { .. },
                ..
            }
        )
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Blocked {
                degree,
                obstruction,
            } => write!(f, "degree {degree}: {obstruction}"),
            Failure::NotPositive { degree } => {
                write!(f, "degree {degree}: residual not yet positive")
            }
        }
    }
}

/// Contraction maps of a sweep and the pivots they used.
type Sweep = (Vec<NovikovMatrix>, Vec<(usize, Pivot)>);

fn identity_minus(nc: &NovikovComplex, n: usize, m: &NovikovMatrix) -> NovikovMatrix {
    NovikovMatrix::identity(&nc.ring, n)
        .sub(m)
        .expect("shapes agree")
}

/// Window `[0, hi]`: `h_i` from `h_i D_{i+1} = I - D_i h_{i-1}`.
fn bottom_up(nc: &NovikovComplex, hi: usize, cap: i64) -> Result<Sweep, Failure> {
    let mut hs = vec![NovikovMatrix::zeros(&nc.ring, 0, nc.rank(0))];
    let mut pivots = Vec::new();
    for i in 0..=hi {
        let ii = i as isize;
        let prev = hs.last().unwrap();
        let dh = nc
            .boundary(ii)
            .mul_capped(prev, Some(cap))
            .expect("shapes agree");
        check_budget(&dh).map_err(|obstruction| Failure::Blocked {
            degree: i,
            obstruction,
        })?;
        let e = identity_minus(nc, nc.rank(ii), &dh);
        let el = Elimination::new(&nc.boundary(ii + 1), cap).map_err(|obstruction| {
            Failure::Blocked {
                degree: i,
                obstruction,
            }
        })?;
        let x = el.solve_left(&e).map_err(|obstruction| Failure::Blocked {
            degree: i,
            obstruction,
        })?;
        pivots.extend(el.pivots().iter().map(|p| (i + 1, p.clone())));
        hs.push(x);
    }
    Ok((hs, pivots))
}

/// Window `[a, top]`: `h_{i-1}` from `D_i h_{i-1} = I - h_i D_{i+1}`, starting at `h_top = 0`.
fn top_down(nc: &NovikovComplex, a: usize, cap: i64) -> Result<Sweep, Failure> {
    let top = nc.top();
    let mut hs = vec![NovikovMatrix::zeros(&nc.ring, nc.rank(top as isize), 0)];
    let mut pivots = Vec::new();
    for i in (a..=top).rev() {
        let ii = i as isize;
        let next = hs.last().unwrap();
        let hd = next
            .mul_capped(&nc.boundary(ii + 1), Some(cap))
            .expect("shapes agree");
        check_budget(&hd).map_err(|obstruction| Failure::Blocked {
            degree: i,
            obstruction,
        })?;
        let e = identity_minus(nc, nc.rank(ii), &hd);
        let el =
            Elimination::new(&nc.boundary(ii), cap).map_err(|obstruction| Failure::Blocked {
                degree: i,
                obstruction,
            })?;
        let x = el.solve_right(&e).map_err(|obstruction| Failure::Blocked {
            degree: i,
            obstruction,
        })?;
        pivots.extend(el.pivots().iter().map(|p| (i, p.clone())));
        hs.push(x);
    }
    hs.reverse();
    Ok((hs, pivots))
}

/// Exact residuals `N_i = I - D_i h_{i-1} - h_i D_{i+1}` for `i` in the window.
pub(crate) fn residuals(
    c: &ChainComplex,
    window: (usize, usize),
    h: &[GroupRingMatrix],
) -> Vec<GroupRingMatrix> {
    let ring = c.ring();
    (window.0..=window.1)
        .enumerate()
        .map(|(k, i)| {
            let ii = i as isize;
            let t1 = ring.mat_mul(&c.boundary(ii), &h[k]).expect("shapes agree");
            let t2 = ring
                .mat_mul(&h[k + 1], &c.boundary(ii + 1))
                .expect("shapes agree");
            let n = ring
                .mat_sub(&ring.identity(c.rank(ii)), &t1)
                .expect("shapes agree");
            ring.mat_sub(&n, &t2).expect("shapes agree")
        })
        .collect()
}

fn finish(
    c: &ChainComplex,
    phi: &Character,
    window: (usize, usize),
    hs: Vec<NovikovMatrix>,
    pivots: Vec<(usize, Pivot)>,
) -> Result<Contraction, Failure> {
    if let Some(m) = hs.first() {
        check_budget(m).map_err(|obstruction| Failure::Blocked {
            degree: window.0,
            obstruction,
        })?;
    }
    let h: Vec<GroupRingMatrix> = hs.iter().map(|m| m.to_group_ring()).collect();
    let res = residuals(c, window, &h);
    for (k, n) in res.iter().enumerate() {
        if n.entries()
            .iter()
            .any(|e| e.terms().keys().any(|w| phi.height(w) <= 0))
        {
            return Err(Failure::NotPositive {
                degree: window.0 + k,
            });
        }
    }
    let (a, b) = window;
    let start = if a == 0 || c.rank(a as isize - 1) == 0 {
        a
    } else {
        a + 1
    };
    Ok(Contraction {
        window,
        certified: (start, b),
        h,
        residuals: res,
        pivots,
    })
}

/// Tries to make working degrees `lo..=hi` acyclic at truncation height `cap`.
pub(crate) fn contract(
    c: &ChainComplex,
    phi: &Character,
    lo: usize,
    hi: usize,
    cap: i64,
) -> Result<Contraction, Failure> {
    let nc = tensor_novikov_bounded(c, phi, cap, WORD_LIMIT).expect("character checked by caller");
    let first = bottom_up(&nc, hi, cap).and_then(|(hs, pv)| finish(c, phi, (0, hi), hs, pv));
    if first.is_ok() {
        return first;
    }
    if first.as_ref().is_err_and(|e| e.is_budget()) {
        return first;
    }
    let a = lo.saturating_sub(1);
    match top_down(&nc, a, cap).and_then(|(hs, pv)| finish(c, phi, (a, c.top()), hs, pv)) {
        Ok(done) if done.certified.0 <= lo => Ok(done),
        Ok(_) => first,
        Err(e) => Err(match first {
            // prefer reporting the more informative failure
            Err(Failure::NotPositive { .. }) => first.unwrap_err(),
            _ => e,
        }),
    }
}

/// The cone of a contraction, in the orientation of the original character.
pub(crate) fn contraction_cone(
    done: &Contraction,
    phi: &Character,
    negate: bool,
) -> (SupportCone, Vec<SideCondition>) {
    let sign = if negate { -1 } else { 1 };
    let mut cone = SupportCone::full(phi.rank());
    for n in &done.residuals {
        for e in n.entries() {
            for w in e.terms().keys() {
                let v: Vec<i64> = project(phi.free_projection(), w)
                    .iter()
                    .map(|x| sign * x)
                    .collect();
                cone.add(&v);
            }
        }
    }
    let side: Vec<SideCondition> = done
        .pivots
        .iter()
        .map(|(d, p)| SideCondition::from_pivot(p, *d, negate))
        .collect();
    for s in &side {
        for v in &s.vectors {
            cone.add(v);
        }
    }
    (cone, side)
}
