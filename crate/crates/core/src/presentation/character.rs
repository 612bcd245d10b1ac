//! Rational characters `G -> Q` in the free abelianization basis.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{smith_invariants, AbelianizationData, Word};
use crate::error::{Error, Result};

/// A rational character `chi`, stored by its coordinates on the free part of
/// the abelianization.
///
/// Heights are computed on the primitive integral multiple of `chi`, so all
/// height arithmetic is in `i64`. Positive rescalings of a character share the
/// same integral heights.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Character {
    coords: Vec<BigRational>,
    values: Vec<BigRational>,
    heights: Vec<i64>,
    integral_scale: BigRational,
    free_projection: Vec<Vec<i64>>,
}

impl Character {
    /// The character `g -> <v, proj(g)>`.
    pub fn from_vector(ab: &AbelianizationData, v: &[BigRational]) -> Result<Self> {
        if v.len() != ab.free_rank {
            return Err(Error::DimensionMismatch {
                expected: ab.free_rank,
                got: v.len(),
            });
        }
        let values: Vec<BigRational> = ab
            .free_projection
            .iter()
            .map(|row| {
                row.iter().zip(v).fold(BigRational::zero(), |acc, (&p, x)| {
                    acc + x * BigRational::from_integer(p.into())
                })
            })
            .collect();
        let denom_lcm = values
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = values
            .iter()
            .map(|x| (x * BigRational::from_integer(denom_lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let (heights, integral_scale) = if g.is_zero() {
            (vec![0; values.len()], BigRational::one())
        } else {
            let h = ints
                .iter()
                .map(|x| (x / &g).to_i64().expect("character height fits in i64"))
                .collect();
            (h, BigRational::new(denom_lcm, g))
        };
        Ok(Character {
            coords: v.to_vec(),
            values,
            heights,
            integral_scale,
            free_projection: ab.free_projection.clone(),
        })
    }

    pub fn from_integers(ab: &AbelianizationData, v: &[i64]) -> Result<Self> {
        let v: Vec<BigRational> = v
            .iter()
            .map(|&x| BigRational::from_integer(x.into()))
            .collect();
        Self::from_vector(ab, &v)
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    /// `chi(x_i)` for every generator.
    pub fn generator_values(&self) -> &[BigRational] {
        &self.values
    }

    /// Values of the primitive integral rescaling on the generators.
    pub fn generator_heights(&self) -> &[i64] {
        &self.heights
    }

    /// The positive rational `q` with `q * chi` primitive integral.
    pub fn integral_scale(&self) -> &BigRational {
        &self.integral_scale
    }

    pub fn is_zero(&self) -> bool {
        self.heights.iter().all(|&h| h == 0)
    }

    /// Height of a word under the primitive integral rescaling.
    pub fn height(&self, w: &Word) -> i64 {
        w.letters()
            .iter()
            .map(|&l| {
                let h = self.heights[(l.unsigned_abs() - 1) as usize];
                if l > 0 {
                    h
                } else {
                    -h
                }
            })
            .sum()
    }

    /// Exact rational value `chi(w)`.
    pub fn value(&self, w: &Word) -> BigRational {
        BigRational::from_integer(self.height(w).into()) / &self.integral_scale
    }

    /// Least nonzero `|height|` of a generator; zero for the zero character.
    pub fn unit_height(&self) -> i64 {
        self.heights
            .iter()
            .map(|h| h.abs())
            .filter(|&h| h > 0)
            .min()
            .unwrap_or(0)
    }

    pub fn negate(&self) -> Character {
        Character {
            coords: self.coords.iter().map(|x| -x).collect(),
            values: self.values.iter().map(|x| -x).collect(),
            heights: self.heights.iter().map(|h| -h).collect(),
            integral_scale: self.integral_scale.clone(),
            free_projection: self.free_projection.clone(),
        }
    }

    /// Coordinates of the primitive integral rescaling in the free basis.
    pub fn primitive_coords(&self) -> Vec<i64> {
        let scaled: Vec<BigInt> = {
            let l = self
                .coords
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            self.coords
                .iter()
                .map(|x| (x * BigRational::from_integer(l.clone())).to_integer())
                .collect()
        };
        let g = scaled.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if g.is_zero() {
            return vec![0; scaled.len()];
        }
        scaled
            .iter()
            .map(|x| (x / &g).to_i64().expect("coordinate fits in i64"))
            .collect()
    }

    /// `<chi, w>` for a vector `w` of the free part; its sign is what cones test.
    pub fn pair(&self, w: &[i64]) -> BigRational {
        self.coords
            .iter()
            .zip(w)
            .fold(BigRational::zero(), |acc, (c, &x)| {
                acc + c * BigRational::from_integer(x.into())
            })
    }

    /// Whether `chi` and `other` are positive multiples of each other.
    pub fn same_ray(&self, other: &Character) -> bool {
        self.heights == other.heights
    }

    pub fn free_projection(&self) -> &[Vec<i64>] {
        &self.free_projection
    }

    pub fn coords_display(&self) -> Vec<String> {
        self.coords.iter().map(|c| c.to_string()).collect()
    }

    pub fn is_positive_on(&self, w: &[i64]) -> bool {
        self.pair(w).is_positive()
    }
}

/// Characters vanishing on the kernel `N` of a surjection `q: G -> Z^d`.
///
/// `basis` has `d` vectors of the ambient character space; the character
/// `phi o q` has coordinates `sum_k phi_k basis[k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterSphere {
    pub ambient_rank: usize,
    pub basis: Vec<Vec<BigRational>>,
}

impl CharacterSphere {
    /// `q` gives, for each generator, its image in `Z^d`.
    pub fn from_quotient(ab: &AbelianizationData, q: &[Vec<i64>], d: usize) -> Result<Self> {
        let n = ab.num_generators;
        if q.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: q.len(),
            });
        }
        if let Some(row) = q.iter().find(|r| r.len() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: row.len(),
            });
        }
        let inv = smith_invariants(q, d);
        if inv.len() != d || inv.iter().any(|&x| x != 1) {
            return Err(Error::NotSurjective(d));
        }
        // Solve P M = Q over Q; P (n x b) has full column rank.
        let b = ab.free_rank;
        let p = &ab.free_projection;
        let mut aug: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                p[i].iter()
                    .chain(q[i].iter())
                    .map(|&x| BigRational::from_integer(x.into()))
                    .collect()
            })
            .collect();
        let mut row = 0;
        let mut pivots = Vec::new();
        for c in 0..b {
            let Some(pr) = (row..n).find(|&i| !aug[i][c].is_zero()) else {
                continue;
            };
            aug.swap(row, pr);
            let inv_p = aug[row][c].recip();
            for x in aug[row].iter_mut() {
                *x *= &inv_p;
            }
            for i in 0..n {
                if i != row && !aug[i][c].is_zero() {
                    let f = aug[i][c].clone();
                    let src = aug[row].clone();
                    for (x, y) in aug[i].iter_mut().zip(src) {
                        *x -= &f * y;
                    }
                }
            }
            pivots.push(c);
            row += 1;
        }
        if aug[row..]
            .iter()
            .any(|r| r[b..].iter().any(|x| !x.is_zero()))
        {
            return Err(Error::NotSurjective(d));
        }
        let mut basis = vec![vec![BigRational::zero(); b]; d];
        for (r, &c) in pivots.iter().enumerate() {
            for k in 0..d {
                basis[k][c] = aug[r][b + k].clone();
            }
        }
        Ok(CharacterSphere {
            ambient_rank: b,
            basis,
        })
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `phi o q` in the ambient character space.
    pub fn embed(&self, phi: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.ambient_rank];
        for (coef, v) in phi.iter().zip(&self.basis) {
            for (o, x) in out.iter_mut().zip(v) {
                *o += coef * x;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{abelianize, parse_presentation};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn bs12_basis_character() {
        let ab = abelianize(&parse_presentation("gens a t\nrel t a t^-1 a^-2").unwrap());
        let chi = Character::from_vector(&ab, &[q(1, 1)]).unwrap();
        assert_eq!(chi.generator_heights(), &[0, 1]);
        let chi = Character::from_vector(&ab, &[q(2, 3)]).unwrap();
        assert_eq!(chi.generator_heights(), &[0, 1]);
        assert_eq!(chi.integral_scale(), &q(3, 2));
        assert_eq!(chi.value(&Word::from_raw(vec![2, 2])), q(4, 3));
        assert!(matches!(
            Character::from_vector(&ab, &[q(1, 1), q(1, 1)]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn z2_character_values() {
        let ab = abelianize(&parse_presentation("gens x y\nrel x y x^-1 y^-1").unwrap());
        let chi = Character::from_integers(&ab, &[1, -1]).unwrap();
        assert_eq!(chi.generator_heights(), &[1, -1]);
        assert_eq!(chi.negate().generator_heights(), &[-1, 1]);
        assert_eq!(chi.unit_height(), 1);
    }

    #[test]
    fn sphere_from_identity_quotient() {
        let ab = abelianize(&parse_presentation("gens x y\nrel x y x^-1 y^-1").unwrap());
        let s = CharacterSphere::from_quotient(&ab, &[vec![1, 0], vec![0, 1]], 2).unwrap();
        assert_eq!(
            s.basis,
            vec![vec![q(1, 1), q(0, 1)], vec![q(0, 1), q(1, 1)]]
        );
        assert_eq!(
            CharacterSphere::from_quotient(&ab, &[vec![2, 0], vec![0, 1]], 2),
            Err(Error::NotSurjective(2))
        );
    }
}
