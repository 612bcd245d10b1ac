//! Finite presentations: parsing, rewriting, abelianization, characters and
//! subgroup presentations.

mod abelian;
mod character;
mod parse;
mod rewriting;
mod schreier;
mod word;

use std::fmt;

pub use abelian::{abelianize, hermite_rows, smith_invariants, AbelianizationData};
pub use character::{Character, CharacterSphere};
pub use parse::{parse_presentation, parse_word_over};
pub use rewriting::{
    compare_words, knuth_bendix, knuth_bendix_with_order, RewritingSystem, WordOrder,
    DEFAULT_MAX_LEN, DEFAULT_MAX_RULES,
};
pub use schreier::{reidemeister_schreier, Permutation};
pub use word::{free_reduce, letter_from_rank, letter_rank, Letter, Word};

use crate::error::{Error, Result};

/// A finite presentation `<generators | relators>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub name: String,
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl Presentation {
    /// Validates generators and cyclically reduces every relator.
    pub fn new(
        name: impl Into<String>,
        generators: Vec<String>,
        relators: Vec<Word>,
    ) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::EmptyGeneratorList);
        }
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(Error::DuplicateGenerator(g.clone()));
            }
        }
        let mut reduced = Vec::with_capacity(relators.len());
        for (i, r) in relators.into_iter().enumerate() {
            if let Some(&l) = r
                .letters()
                .iter()
                .find(|l| **l == 0 || l.unsigned_abs() as usize > generators.len())
            {
                return Err(Error::UnknownGenerator(format!("#{l}")));
            }
            let c = r.cyclically_reduce();
            if c.is_empty() {
                return Err(Error::EmptyRelator(i));
            }
            reduced.push(c);
        }
        Ok(Presentation {
            name: name.into(),
            generators,
            relators: reduced,
        })
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    /// Whether relator `i` is `w^k` for some `k >= 2`.
    pub fn relator_is_proper_power(&self, i: usize) -> bool {
        self.relators[i].primitive_root().1 >= 2
    }

    /// One relator that is not a proper power.
    pub fn is_torsion_free_one_relator(&self) -> bool {
        self.relators.len() == 1 && !self.relator_is_proper_power(0)
    }

    pub fn word_to_string(&self, w: &Word) -> String {
        w.display_with(&self.generators)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "group {}", self.name)?;
        writeln!(f, "gens {}", self.generators.join(" "))?;
        for r in &self.relators {
            writeln!(f, "rel {}", self.word_to_string(r))?;
        }
        Ok(())
    }
}
