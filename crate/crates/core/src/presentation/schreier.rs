//! Reidemeister–Schreier presentations of finite-index subgroups given by a
//! permutation action.

use std::collections::{BTreeSet, HashMap, VecDeque};

use super::{Letter, Presentation, Word};
use crate::error::{Error, Result};

/// A permutation of `{0, .., n-1}`; point `0` is the base point.
/// The action is on the right: `c . x = perm_x[c]`.
pub type Permutation = Vec<usize>;

fn act(images: &[Permutation], inverses: &[Permutation], c: usize, l: Letter) -> usize {
    let g = (l.unsigned_abs() - 1) as usize;
    if l > 0 {
        images[g][c]
    } else {
        inverses[g][c]
    }
}

fn invert(p: &Permutation) -> Option<Permutation> {
    let mut inv = vec![usize::MAX; p.len()];
    for (i, &j) in p.iter().enumerate() {
        if j >= p.len() || inv[j] != usize::MAX {
            return None;
        }
        inv[j] = i;
    }
    Some(inv)
}

/// Presentation of the stabilizer of point `0`.
///
/// Coset representatives form a shortlex-least Schreier transversal; the
/// generator `x_c` stands for `rep(c) x rep(c.x)^-1`. Trivial Tietze moves then
/// drop empty relators and generators killed by a length-one relator.
pub fn reidemeister_schreier(p: &Presentation, images: &[Permutation]) -> Result<Presentation> {
    let k = p.num_generators();
    if images.len() != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            got: images.len(),
        });
    }
    let n = images.first().map_or(1, |x| x.len());
    let mut inverses = Vec::with_capacity(k);
    for (g, img) in images.iter().enumerate() {
        if img.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: img.len(),
            });
        }
        inverses.push(invert(img).ok_or_else(|| {
            Error::NotAHomomorphism(format!(
                "image of `{}` is not a permutation",
                p.generators[g]
            ))
        })?);
    }
    for (i, r) in p.relators.iter().enumerate() {
        for c in 0..n {
            let end = r
                .letters()
                .iter()
                .fold(c, |d, &l| act(images, &inverses, d, l));
            if end != c {
                return Err(Error::NotAHomomorphism(format!(
                    "relator {i} moves point {}",
                    c + 1
                )));
            }
        }
    }
    if n == 1 {
        return Ok(p.clone());
    }

    // Shortlex-least transversal by breadth-first search in alphabet order.
    let alphabet: Vec<Letter> = (1..=k as Letter).flat_map(|g| [g, -g]).collect();
    let mut rep: Vec<Option<Word>> = vec![None; n];
    rep[0] = Some(Word::empty());
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for &l in &alphabet {
            let d = act(images, &inverses, c, l);
            if rep[d].is_none() {
                rep[d] = Some(rep[c].as_ref().unwrap().concat(&Word::from_raw(vec![l])));
                queue.push_back(d);
            }
        }
    }
    let rep: Vec<Word> = rep
        .into_iter()
        .collect::<Option<_>>()
        .ok_or(Error::NotTransitive)?;

    // Schreier generators (c, x) that are not tree edges.
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut names = Vec::new();
    for (g, name) in p.generators.iter().enumerate() {
        for c in 0..n {
            let d = images[g][c];
            let gamma = rep[c].mul(&Word::generator(g)).mul(&rep[d].inverse());
            if !gamma.is_empty() {
                index.insert((c, g), names.len());
                names.push(format!("{name}_{}", c + 1));
            }
        }
    }

    let mut relators = Vec::new();
    for r in &p.relators {
        for c in 0..n {
            let mut letters = Vec::new();
            let mut cur = c;
            for &l in r.letters() {
                let g = (l.unsigned_abs() - 1) as usize;
                if l > 0 {
                    if let Some(&s) = index.get(&(cur, g)) {
                        letters.push(s as Letter + 1);
                    }
                    cur = images[g][cur];
                } else {
                    let prev = inverses[g][cur];
                    if let Some(&s) = index.get(&(prev, g)) {
                        letters.push(-(s as Letter + 1));
                    }
                    cur = prev;
                }
            }
            relators.push(Word::new(letters));
        }
    }
    let (names, relators) = simplify(names, relators);
    Presentation::new(format!("{} (index {n})", p.name), names, relators)
}

/// Drops trivial relators and generators equal to the identity; dedupes.
fn simplify(mut names: Vec<String>, mut relators: Vec<Word>) -> (Vec<String>, Vec<Word>) {
    loop {
        relators = relators
            .iter()
            .map(|r| r.cyclically_reduce())
            .filter(|r| !r.is_empty())
            .collect();
        let killed = if names.len() > 1 {
            relators
                .iter()
                .find(|r| r.len() == 1)
                .map(|r| r.letters()[0].unsigned_abs() as Letter)
        } else {
            None
        };
        let Some(g) = killed else { break };
        names.remove((g - 1) as usize);
        relators = relators
            .iter()
            .map(|r| {
                Word::new(
                    r.letters()
                        .iter()
                        .filter(|l| l.abs() != g)
                        .map(|&l| if l.abs() > g { l - l.signum() } else { l })
                        .collect(),
                )
            })
            .collect();
    }
    let mut seen = BTreeSet::new();
    relators.retain(|r| seen.insert(r.clone()));
    (names, relators)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{abelianize, parse_presentation};

    #[test]
    fn index_two_in_z() {
        let p = parse_presentation("gens t").unwrap();
        let h = reidemeister_schreier(&p, &[vec![1, 0]]).unwrap();
        assert_eq!(h.generators.len(), 1);
        assert!(h.relators.is_empty());
    }

    #[test]
    fn nielsen_schreier_rank() {
        let p = parse_presentation("gens x y").unwrap();
        let h = reidemeister_schreier(&p, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(h.generators.len(), 3);
        assert!(h.relators.is_empty());
    }

    #[test]
    fn index_one_is_identity() {
        let p = parse_presentation("gens a t\nrel t a t^-1 a^-2").unwrap();
        assert_eq!(reidemeister_schreier(&p, &[vec![0], vec![0]]).unwrap(), p);
    }

    #[test]
    fn errors() {
        let p = parse_presentation("gens a\nrel a^3").unwrap();
        assert!(matches!(
            reidemeister_schreier(&p, &[vec![1, 0]]),
            Err(Error::NotAHomomorphism(_))
        ));
        let f = parse_presentation("gens x").unwrap();
        assert_eq!(
            reidemeister_schreier(&f, &[vec![1, 0, 2]]),
            Err(Error::NotTransitive)
        );
    }

    #[test]
    fn z2_double_cover_is_z2() {
        let p = parse_presentation("gens x y\nrel x y x^-1 y^-1").unwrap();
        let h = reidemeister_schreier(&p, &[vec![1, 0], vec![0, 1]]).unwrap();
        let ab = abelianize(&h);
        assert_eq!(ab.free_rank, 2);
        assert!(ab.torsion_factors.is_empty());
    }

    #[test]
    fn klein_orientation_cover_is_torus() {
        let p = parse_presentation("gens a t\nrel t a t^-1 a").unwrap();
        // t -> (1 2), a fixed
        let h = reidemeister_schreier(&p, &[vec![0, 1], vec![1, 0]]).unwrap();
        let ab = abelianize(&h);
        assert_eq!(ab.free_rank, 2);
        assert!(ab.torsion_factors.is_empty());
    }
}
