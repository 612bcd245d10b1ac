//! Chain complexes of free `k[G]`-modules.
//!
//! Elements of `C_i = k[G]^{r_i}` are row vectors and the boundary
//! `D_i: C_i -> C_{i-1}` acts by right multiplication, so `D_i` is an
//! `r_i x r_{i-1}` matrix and `D_{i+1} D_i = 0`.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groupring::{GroupRing, GroupRingElem, GroupRingMatrix};
use crate::novikov::{NovikovMatrix, NovikovRing};
use crate::presentation::{Character, Presentation, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ComplexKind {
    /// Cellular chains of the presentation 2-complex of the universal cover.
    Presentation,
    /// The Lyndon resolution of a torsion-free one-relator group.
    Lyndon,
    /// A complex over `k[t, t^-1]` supplied directly.
    Laurent,
}

impl std::fmt::Display for ComplexKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ComplexKind::Presentation => "presentation",
            ComplexKind::Lyndon => "lyndon",
            ComplexKind::Laurent => "laurent",
        })
    }
}

/// `C_top -> ... -> C_1 -> C_0` over `k[G]`.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    ring: Arc<GroupRing>,
    ranks: Vec<usize>,
    boundaries: Vec<GroupRingMatrix>,
    pub kind: ComplexKind,
    /// The complex is a resolution of the trivial module.
    pub exactness_known: bool,
    pub one_relator_torsion_free: bool,
    /// Degrees are reversed and matrices involuted.
    pub dual: bool,
}

impl PartialEq for ChainComplex {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring)
            && self.ranks == other.ranks
            && self.boundaries == other.boundaries
            && self.kind == other.kind
            && self.exactness_known == other.exactness_known
            && self.one_relator_torsion_free == other.one_relator_torsion_free
            && self.dual == other.dual
    }
}

impl ChainComplex {
    /// `boundaries[i - 1]` is `D_i`. Checks shapes and `D_{i+1} D_i = 0`.
    pub fn new(
        ring: Arc<GroupRing>,
        ranks: Vec<usize>,
        boundaries: Vec<GroupRingMatrix>,
        kind: ComplexKind,
    ) -> Result<ChainComplex> {
        if ranks.is_empty() || boundaries.len() + 1 != ranks.len() {
            return Err(Error::DimensionMismatch {
                expected: ranks.len().saturating_sub(1),
                got: boundaries.len(),
            });
        }
        for (k, d) in boundaries.iter().enumerate() {
            let i = k + 1;
            if d.rows != ranks[i] {
                return Err(Error::DimensionMismatch {
                    expected: ranks[i],
                    got: d.rows,
                });
            }
            if d.cols != ranks[i - 1] {
                return Err(Error::DimensionMismatch {
                    expected: ranks[i - 1],
                    got: d.cols,
                });
            }
        }
        for k in 1..boundaries.len() {
            let composite = ring.mat_mul(&boundaries[k], &boundaries[k - 1])?;
            if !composite.is_zero() {
                return Err(Error::NotAComplex(k + 1));
            }
        }
        Ok(ChainComplex {
            ring,
            ranks,
            boundaries,
            kind,
            exactness_known: false,
            one_relator_torsion_free: false,
            dual: false,
        })
    }

    pub fn ring(&self) -> &Arc<GroupRing> {
        &self.ring
    }

    /// Highest degree.
    pub fn top(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Rank of `C_i`; zero outside `0..=top`.
    pub fn rank(&self, i: isize) -> usize {
        if i < 0 {
            0
        } else {
            self.ranks.get(i as usize).copied().unwrap_or(0)
        }
    }

    /// `D_i` for any integer `i`; zero matrices of the right shape outside `1..=top`.
    pub fn boundary(&self, i: isize) -> GroupRingMatrix {
        if i >= 1 && (i as usize) <= self.boundaries.len() {
            self.boundaries[i as usize - 1].clone()
        } else {
            GroupRingMatrix::zeros(self.rank(i), self.rank(i - 1))
        }
    }

    pub fn boundaries(&self) -> &[GroupRingMatrix] {
        &self.boundaries
    }

    /// Re-checks `D_{i+1} D_i = 0` for every `i`.
    pub fn verify(&self) -> Result<()> {
        for k in 1..self.boundaries.len() {
            if !self
                .ring
                .mat_mul(&self.boundaries[k], &self.boundaries[k - 1])?
                .is_zero()
            {
                return Err(Error::NotAComplex(k + 1));
            }
        }
        Ok(())
    }

    /// Label used in reports.
    pub fn label(&self) -> String {
        if self.dual {
            format!("dual of {} complex", self.kind)
        } else {
            format!("{} complex", self.kind)
        }
    }
}

/// `k[G]^{|R|} -> k[G]^{|X|} -> k[G]` with the Fox matrix and the column `x - 1`.
pub fn presentation_complex(p: &Presentation, ring: &Arc<GroupRing>) -> Result<ChainComplex> {
    let n = p.num_generators();
    if ring.num_generators() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: ring.num_generators(),
        });
    }
    let mut d1 = GroupRingMatrix::zeros(n, 1);
    for g in 0..n {
        d1.set(
            g,
            0,
            ring.from_int_terms(&[(1, Word::generator(g)), (-1, Word::empty())]),
        );
    }
    let d2 = ring.fox_matrix(&p.relators);
    let mut c = ChainComplex::new(
        ring.clone(),
        vec![1, n, p.relators.len()],
        vec![d1, d2],
        ComplexKind::Presentation,
    )?;
    // Free groups: the 1-complex is a tree's chains, hence a resolution.
    c.exactness_known = p.relators.is_empty();
    Ok(c)
}

/// The presentation complex of a torsion-free one-relator group, flagged as a
/// resolution (Lyndon identity theorem).
pub fn lyndon_complex(p: &Presentation, ring: &Arc<GroupRing>) -> Result<ChainComplex> {
    if p.relators.len() != 1 {
        return Err(Error::NotOneRelator(p.relators.len()));
    }
    if p.relator_is_proper_power(0) {
        return Err(Error::ProperPowerRelator);
    }
    let mut c = presentation_complex(p, ring)?;
    c.kind = ComplexKind::Lyndon;
    c.exactness_known = true;
    c.one_relator_torsion_free = true;
    Ok(c)
}

/// The best complex available: Lyndon when it applies, else the presentation complex.
pub fn standard_complex(p: &Presentation, ring: &Arc<GroupRing>) -> Result<ChainComplex> {
    if p.is_torsion_free_one_relator() {
        lyndon_complex(p, ring)
    } else {
        presentation_complex(p, ring)
    }
}

/// Involution-transposed complex with degrees reversed: `D'_j = (D_{top-j+1})^*`.
pub fn dualize(c: &ChainComplex) -> ChainComplex {
    let top = c.top();
    let ranks: Vec<usize> = (0..=top).map(|j| c.ranks[top - j]).collect();
    let boundaries = (1..=top)
        .map(|j| c.ring.involute_transpose(&c.boundaries[top - j]))
        .collect();
    ChainComplex {
        ring: c.ring.clone(),
        ranks,
        boundaries,
        kind: c.kind,
        exactness_known: c.exactness_known,
        one_relator_torsion_free: c.one_relator_torsion_free,
        dual: !c.dual,
    }
}

/// A chain complex with Novikov coefficients.
#[derive(Debug, Clone)]
pub struct NovikovComplex {
    pub ring: Arc<NovikovRing>,
    pub ranks: Vec<usize>,
    /// `boundaries[i - 1]` is `D_i`.
    pub boundaries: Vec<NovikovMatrix>,
    /// Working truncation height for elimination.
    pub height: i64,
}

impl NovikovComplex {
    pub fn top(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn rank(&self, i: isize) -> usize {
        if i < 0 {
            0
        } else {
            self.ranks.get(i as usize).copied().unwrap_or(0)
        }
    }

    pub fn boundary(&self, i: isize) -> NovikovMatrix {
        if i >= 1 && (i as usize) <= self.boundaries.len() {
            self.boundaries[i as usize - 1].clone()
        } else {
            NovikovMatrix::zeros(&self.ring, self.rank(i), self.rank(i - 1))
        }
    }
}

/// Promotes every entry to an exact Novikov element at `chi`.
pub fn tensor_novikov(c: &ChainComplex, chi: &Character, height: i64) -> Result<NovikovComplex> {
    tensor_novikov_bounded(c, chi, height, usize::MAX)
}

/// [`tensor_novikov`] over a ring that refuses normal forms longer than `word_limit`.
pub fn tensor_novikov_bounded(
    c: &ChainComplex,
    chi: &Character,
    height: i64,
    word_limit: usize,
) -> Result<NovikovComplex> {
    let ring = NovikovRing::with_word_limit(c.ring.clone(), chi.clone(), word_limit)?;
    let boundaries = c
        .boundaries
        .iter()
        .map(|d| NovikovMatrix::exact(&ring, d))
        .collect();
    Ok(NovikovComplex {
        ring,
        ranks: c.ranks.clone(),
        boundaries,
        height,
    })
}

/// Column vector `(x_i - 1)`, handy for tests and bridges.
pub fn augmentation_column(ring: &GroupRing) -> Vec<GroupRingElem> {
    (0..ring.num_generators())
        .map(|g| ring.from_int_terms(&[(1, Word::generator(g)), (-1, Word::empty())]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::presentation::{
        abelianize, knuth_bendix, parse_presentation, DEFAULT_MAX_LEN, DEFAULT_MAX_RULES,
    };

    fn setup(text: &str) -> (Presentation, Arc<GroupRing>) {
        let p = parse_presentation(text).unwrap();
        let rs = Arc::new(knuth_bendix(&p, DEFAULT_MAX_RULES, DEFAULT_MAX_LEN));
        let r = GroupRing::new(rs, Field::Rationals).unwrap();
        (p, r)
    }

    #[test]
    fn bs12_complex() {
        let (p, r) = setup("gens a t\nrel t a t^-1 a^-2");
        let c = presentation_complex(&p, &r).unwrap();
        assert_eq!(c.ranks(), &[1, 2, 1]);
        assert!(!c.exactness_known);
        let d2 = c.boundary(2);
        assert_eq!(d2.get(0, 1).display_with(&p.generators), "1 - a^2");
        assert!(r.mat_mul(&c.boundary(2), &c.boundary(1)).unwrap().is_zero());
    }

    #[test]
    fn free_and_cyclic() {
        let (p, r) = setup("gens x y");
        let c = presentation_complex(&p, &r).unwrap();
        assert_eq!(c.ranks(), &[1, 2, 0]);
        assert!(c.exactness_known);
        let (q, s) = setup("gens t");
        let z = presentation_complex(&q, &s).unwrap();
        let d = dualize(&z);
        assert_eq!(d.ranks(), &[0, 1, 1]);
        assert_eq!(
            d.boundary(2).get(0, 0).display_with(&q.generators),
            "-1 + t^-1"
        );
        assert_eq!(dualize(&d), z);
    }

    #[test]
    fn lyndon_checks() {
        let (p, r) = setup("gens a t\nrel t^-1 a^2 t a^-3");
        let c = lyndon_complex(&p, &r).unwrap();
        assert!(c.exactness_known && c.one_relator_torsion_free);
        let (q, s) = setup("gens a\nrel a^2");
        assert_eq!(
            lyndon_complex(&q, &s).err(),
            Some(Error::ProperPowerRelator)
        );
        let (k, t) = setup("gens a t\nrel t a t^-1 a");
        assert!(lyndon_complex(&k, &t).is_ok());
        let (z, u) = setup("gens x y");
        assert_eq!(lyndon_complex(&z, &u).err(), Some(Error::NotOneRelator(0)));
    }

    #[test]
    fn novikov_lowest_strata() {
        let (p, r) = setup("gens a t\nrel t a t^-1 a^-2");
        let ab = abelianize(&p);
        let c = presentation_complex(&p, &r).unwrap();
        let chi = Character::from_integers(&ab, &[1]).unwrap();
        let nc = tensor_novikov(&c, &chi, 4).unwrap();
        let e = nc.boundary(2).get(0, 0).clone();
        let (h, part) = e.lowest_stratum().unwrap();
        assert_eq!(h, 0);
        assert_eq!(part.len(), 2);
        let zero = Character::from_integers(&ab, &[0]).unwrap();
        assert_eq!(
            tensor_novikov(&c, &zero, 4).err(),
            Some(Error::ZeroCharacter)
        );
    }

    #[test]
    fn not_a_complex_is_rejected() {
        let (_, r) = setup("gens t");
        let one = GroupRingMatrix::from_rows(vec![vec![r.one()]], 1).unwrap();
        let err = ChainComplex::new(
            r.clone(),
            vec![1, 1, 1],
            vec![one.clone(), one],
            ComplexKind::Laurent,
        );
        assert_eq!(err.err(), Some(Error::NotAComplex(2)));
    }
}
