use std::cmp::Ordering;
use std::fmt;

/// A letter is a signed, 1-based generator index: `k` is generator `k - 1`,
/// `-k` its inverse.
pub type Letter = i32;

/// Position of a letter in the alphabet order `x1 < X1 < x2 < X2 < ...`.
#[inline]
pub fn letter_rank(l: Letter) -> u32 {
    debug_assert!(l != 0);
    2 * (l.unsigned_abs() - 1) + u32::from(l < 0)
}

#[inline]
pub fn letter_from_rank(r: u32) -> Letter {
    let g = (r / 2 + 1) as Letter;
    if r.is_multiple_of(2) {
        g
    } else {
        -g
    }
}

/// A word in the generators and their inverses.
///
/// Ordered shortlex, with the alphabet order of [`letter_rank`].
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds a word and freely reduces it.
    pub fn new(letters: Vec<Letter>) -> Self {
        free_reduce(&Word(letters))
    }

    /// Builds a word without reducing. Callers guarantee the invariant they need.
    pub fn from_raw(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn generator(index: usize) -> Self {
        Word(vec![index as Letter + 1])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&l| -l).collect())
    }

    /// Concatenation followed by free reduction.
    pub fn mul(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        for &l in &other.0 {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Plain concatenation without reduction.
    pub fn concat(&self, other: &Word) -> Word {
        let mut out = Vec::with_capacity(self.len() + other.len());
        out.extend_from_slice(&self.0);
        out.extend_from_slice(&other.0);
        Word(out)
    }

    /// Exponent sum of each generator.
    pub fn exponent_vector(&self, num_generators: usize) -> Vec<i64> {
        let mut v = vec![0i64; num_generators];
        for &l in &self.0 {
            let g = (l.unsigned_abs() - 1) as usize;
            v[g] += if l > 0 { 1 } else { -1 };
        }
        v
    }

    pub fn max_generator(&self) -> usize {
        self.0
            .iter()
            .map(|l| l.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != -w[1])
    }

    /// Removes matching inverse pairs from both ends.
    pub fn cyclically_reduce(&self) -> Word {
        let w = free_reduce(self);
        let s = &w.0;
        let (mut i, mut j) = (0usize, s.len());
        while j >= i + 2 && s[i] == -s[j - 1] {
            i += 1;
            j -= 1;
        }
        Word(s[i..j].to_vec())
    }

    /// Returns `(root, k)` with `self == root^k` and `k` maximal.
    pub fn primitive_root(&self) -> (Word, usize) {
        let n = self.0.len();
        for d in 1..=n {
            if !n.is_multiple_of(d) {
                continue;
            }
            if (d..n).all(|i| self.0[i] == self.0[i - d]) {
                return (Word(self.0[..d].to_vec()), n / d);
            }
        }
        (self.clone(), 1)
    }

    /// Writes the word with the given generator names, using `^k` for runs.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == l {
                j += 1;
            }
            let run = (j - i) as i64;
            let exp = if l > 0 { run } else { -run };
            let name = &names[(l.unsigned_abs() - 1) as usize];
            if exp == 1 {
                parts.push(name.clone());
            } else {
                parts.push(format!("{name}^{exp}"));
            }
            i = j;
        }
        parts.join(" ")
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| {
            for (a, b) in self.0.iter().zip(other.0.iter()) {
                match letter_rank(*a).cmp(&letter_rank(*b)) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.0)
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word::new(v)
    }
}

/// Cancels adjacent `x x^-1` pairs.
pub fn free_reduce(w: &Word) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(w.0.len());
    for &l in &w.0 {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_reduction_examples() {
        assert_eq!(
            free_reduce(&Word::from_raw(vec![1, -1, 2])),
            Word::from_raw(vec![2])
        );
        assert_eq!(free_reduce(&Word::empty()), Word::empty());
        assert_eq!(
            free_reduce(&Word::from_raw(vec![1, 2, -2, 1])),
            Word::from_raw(vec![1, 1])
        );
        assert_eq!(
            free_reduce(&Word::from_raw(vec![1, 2, -2, -1])),
            Word::empty()
        );
    }

    #[test]
    fn shortlex_order() {
        let x = Word::from_raw(vec![1]);
        let xi = Word::from_raw(vec![-1]);
        let y = Word::from_raw(vec![2]);
        assert!(x < xi && xi < y);
        assert!(y < Word::from_raw(vec![1, 1]));
        assert!(Word::from_raw(vec![1, 2]) < Word::from_raw(vec![2, 1]));
    }

    #[test]
    fn cyclic_reduction_and_roots() {
        let w = Word::from_raw(vec![2, 1, 1, -2]);
        assert_eq!(w.cyclically_reduce(), Word::from_raw(vec![1, 1]));
        assert_eq!(
            Word::from_raw(vec![1, 2, 1, 2]).primitive_root(),
            (Word::from_raw(vec![1, 2]), 2)
        );
        assert_eq!(Word::from_raw(vec![1, 1, 2]).primitive_root().1, 1);
    }

    #[test]
    fn rank_roundtrip() {
        for l in [1, -1, 2, -2, 7, -7] {
            assert_eq!(letter_from_rank(letter_rank(l)), l);
        }
    }
}
