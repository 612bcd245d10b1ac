//! String rewriting for group presentations: bounded Knuth–Bendix completion
//! and normal forms.
//!
//! The alphabet is `x1 < X1 < x2 < X2 < ...` (generator order of the
//! presentation, each inverse right after its generator). Two reduction
//! orderings are available: shortlex, and the wreath-product ordering in which
//! generator `i` sits on level `i`. The wreath ordering completes finitely on
//! many groups (Baumslag–Solitar, surface and torus-knot groups) where shortlex
//! does not.

use std::cmp::Ordering;
use std::collections::HashMap;

use serde::Serialize;

use super::word::{letter_from_rank, letter_rank, Word};
use super::Presentation;
use crate::error::{Error, Result};

/// Reduction ordering used to orient rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum WordOrder {
    ShortLex,
    /// Wreath-product ordering; blocks between top-level letters are compared
    /// from the right.
    Wreath,
}

type Code = Vec<u32>;

fn to_code(w: &Word) -> Code {
    w.letters().iter().map(|&l| letter_rank(l)).collect()
}

fn from_code(c: &[u32]) -> Word {
    Word::from_raw(c.iter().map(|&r| letter_from_rank(r)).collect())
}

fn shortlex_cmp(u: &[u32], v: &[u32]) -> Ordering {
    u.len().cmp(&v.len()).then_with(|| u.cmp(v))
}

fn wreath_cmp_at(u: &[u32], v: &[u32], level: i64) -> Ordering {
    if level < 0 {
        return Ordering::Equal;
    }
    let lvl = level as u32;
    let split = |w: &[u32]| {
        let mut hi = Vec::new();
        let mut blocks: Vec<Vec<u32>> = vec![Vec::new()];
        for &c in w {
            if c / 2 == lvl {
                hi.push(c);
                blocks.push(Vec::new());
            } else {
                blocks.last_mut().unwrap().push(c);
            }
        }
        (hi, blocks)
    };
    let (hu, bu) = split(u);
    let (hv, bv) = split(v);
    match shortlex_cmp(&hu, &hv) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..bu.len()).rev() {
        match wreath_cmp_at(&bu[i], &bv[i], level - 1) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    Ordering::Equal
}

fn order_cmp(order: WordOrder, u: &[u32], v: &[u32]) -> Ordering {
    match order {
        WordOrder::ShortLex => shortlex_cmp(u, v),
        WordOrder::Wreath => {
            let level = u
                .iter()
                .chain(v.iter())
                .map(|&c| (c / 2) as i64)
                .max()
                .unwrap_or(-1);
            wreath_cmp_at(u, v, level)
        }
    }
}

/// Compares two words in the given reduction ordering.
pub fn compare_words(order: WordOrder, u: &Word, v: &Word) -> Ordering {
    order_cmp(order, &to_code(u), &to_code(v))
}

#[derive(Debug, Clone, Default)]
struct RuleSet {
    rules: Vec<Option<(Code, Code)>>,
    index: HashMap<Code, usize>,
    max_lhs: usize,
}

impl RuleSet {
    fn reduce(&self, w: &[u32]) -> Code {
        let mut input: Vec<u32> = w.iter().rev().copied().collect();
        let mut out: Code = Vec::with_capacity(w.len());
        while let Some(c) = input.pop() {
            out.push(c);
            let n = out.len();
            for len in 1..=self.max_lhs.min(n) {
                if let Some(&id) = self.index.get(&out[n - len..]) {
                    let rhs = &self.rules[id].as_ref().expect("indexed rule is alive").1;
                    out.truncate(n - len);
                    input.extend(rhs.iter().rev());
                    break;
                }
            }
        }
        out
    }

    /// `reduce`, giving up once the word being rewritten exceeds `limit` letters.
    fn reduce_bounded(&self, w: &[u32], limit: usize) -> Option<Code> {
        let mut input: Vec<u32> = w.iter().rev().copied().collect();
        let mut out: Code = Vec::with_capacity(w.len());
        while let Some(c) = input.pop() {
            out.push(c);
            let n = out.len();
            for len in 1..=self.max_lhs.min(n) {
                if let Some(&id) = self.index.get(&out[n - len..]) {
                    let rhs = &self.rules[id].as_ref().expect("indexed rule is alive").1;
                    out.truncate(n - len);
                    input.extend(rhs.iter().rev());
                    break;
                }
            }
            if out.len() + input.len() > limit {
                return None;
            }
        }
        Some(out)
    }

    fn alive(&self) -> usize {
        self.index.len()
    }

    fn recompute_max_lhs(&mut self) {
        self.max_lhs = self.index.keys().map(|k| k.len()).max().unwrap_or(0);
    }
}

fn contains(hay: &[u32], needle: &[u32]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

/// A finite rewriting system for a group presentation.
#[derive(Debug, Clone)]
pub struct RewritingSystem {
    num_generators: usize,
    order: WordOrder,
    set: RuleSet,
    complete: bool,
}

impl RewritingSystem {
    pub fn num_generators(&self) -> usize {
        self.num_generators
    }

    pub fn order(&self) -> WordOrder {
        self.order
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Rules as `(lhs, rhs)` pairs, sorted by left-hand side in shortlex order.
    pub fn rules(&self) -> Vec<(Word, Word)> {
        let mut out: Vec<(Word, Word)> = self
            .set
            .rules
            .iter()
            .flatten()
            .map(|(l, r)| (from_code(l), from_code(r)))
            .collect();
        out.sort();
        out
    }

    /// Number of rules other than the free cancellations `x X -> 1`, `X x -> 1`.
    pub fn rules_beyond_free_reduction(&self) -> usize {
        self.set
            .rules
            .iter()
            .flatten()
            .filter(|(l, r)| {
                !(l.len() == 2 && r.is_empty() && l[0] / 2 == l[1] / 2 && l[0] != l[1])
            })
            .count()
    }

    /// Rewrites with the current rules, whether or not the system is complete.
    pub fn reduce(&self, w: &Word) -> Word {
        from_code(&self.set.reduce(&to_code(w)))
    }

    /// Normal form of `w`; refuses unless completion succeeded.
    pub fn normal_form(&self, w: &Word) -> Result<Word> {
        if !self.complete {
            return Err(Error::RewritingIncomplete);
        }
        Ok(self.reduce(w))
    }

    /// Normal form of a product of two words.
    pub fn multiply(&self, u: &Word, v: &Word) -> Word {
        self.reduce(&u.concat(v))
    }

    /// Normal form of `u v`, or `None` if rewriting passes through a word
    /// longer than `limit`.
    pub fn multiply_bounded(&self, u: &Word, v: &Word, limit: usize) -> Option<Word> {
        self.set
            .reduce_bounded(&to_code(&u.concat(v)), limit)
            .map(|c| from_code(&c))
    }

    pub fn is_identity(&self, w: &Word) -> Result<bool> {
        Ok(self.normal_form(w)?.is_empty())
    }

    /// Checks every overlap of left-hand sides for a common reduct.
    pub fn critical_pairs_resolve(&self) -> bool {
        let rules: Vec<&(Code, Code)> = self.set.rules.iter().flatten().collect();
        for a in &rules {
            for b in &rules {
                let (la, ra) = (&a.0, &a.1);
                let (lb, rb) = (&b.0, &b.1);
                for k in 1..la.len().min(lb.len()) {
                    if la[la.len() - k..] == lb[..k] {
                        let mut w1 = ra.clone();
                        w1.extend_from_slice(&lb[k..]);
                        let mut w2 = la[..la.len() - k].to_vec();
                        w2.extend_from_slice(rb);
                        if self.set.reduce(&w1) != self.set.reduce(&w2) {
                            return false;
                        }
                    }
                }
                if la.len() > lb.len() && contains(la, lb) {
                    return false;
                }
            }
        }
        true
    }
}

struct Completion {
    order: WordOrder,
    set: RuleSet,
    pending: Vec<(Code, Code)>,
    max_rules: usize,
    max_len: usize,
}

#[derive(Debug)]
struct BoundExceeded;

impl Completion {
    fn process(&mut self) -> std::result::Result<(), BoundExceeded> {
        while let Some((u, v)) = self.pending.pop() {
            let u = self.set.reduce(&u);
            let v = self.set.reduce(&v);
            if u == v {
                continue;
            }
            if u.len().max(v.len()) > self.max_len {
                return Err(BoundExceeded);
            }
            let (lhs, rhs) = match order_cmp(self.order, &u, &v) {
                Ordering::Greater => (u, v),
                _ => (v, u),
            };
            let id = self.set.rules.len();
            // Rules whose left side now contains a redex go back to the queue.
            for j in 0..id {
                let Some((l, _)) = &self.set.rules[j] else {
                    continue;
                };
                if contains(l, &lhs) {
                    let (l, r) = self.set.rules[j].take().unwrap();
                    self.set.index.remove(&l);
                    self.pending.push((l, r));
                }
            }
            self.set.index.insert(lhs.clone(), id);
            self.set.rules.push(Some((lhs, rhs)));
            self.set.recompute_max_lhs();
            for j in 0..id {
                let needs = match &self.set.rules[j] {
                    Some((_, r)) => {
                        let new_lhs = &self.set.rules[id].as_ref().unwrap().0;
                        contains(r, new_lhs)
                    }
                    None => false,
                };
                if needs {
                    let r = self.set.rules[j].as_ref().unwrap().1.clone();
                    let r = self.set.reduce(&r);
                    self.set.rules[j].as_mut().unwrap().1 = r;
                }
            }
            if self.set.alive() > self.max_rules {
                return Err(BoundExceeded);
            }
        }
        Ok(())
    }

    fn overlaps(&mut self, a: usize, b: usize) {
        let (Some((la, ra)), Some((lb, rb))) = (&self.set.rules[a], &self.set.rules[b]) else {
            return;
        };
        for k in 1..la.len().min(lb.len()) {
            if la[la.len() - k..] == lb[..k] {
                let mut w1 = ra.clone();
                w1.extend_from_slice(&lb[k..]);
                let mut w2 = la[..la.len() - k].to_vec();
                w2.extend_from_slice(rb);
                self.pending.push((w1, w2));
            }
        }
    }

    fn run(mut self) -> (RuleSet, bool) {
        if self.process().is_err() {
            return (self.set, false);
        }
        let mut j = 0;
        while j < self.set.rules.len() {
            for i in 0..=j {
                if self.set.rules[j].is_none() {
                    break;
                }
                if self.set.rules[i].is_none() {
                    continue;
                }
                self.overlaps(i, j);
                if i != j {
                    self.overlaps(j, i);
                }
                if self.process().is_err() {
                    return (self.set, false);
                }
            }
            j += 1;
        }
        (self.set, true)
    }
}

/// Bounded Knuth–Bendix completion in a fixed ordering.
pub fn knuth_bendix_with_order(
    p: &Presentation,
    order: WordOrder,
    max_rules: usize,
    max_len: usize,
) -> RewritingSystem {
    let n = p.generators.len();
    let mut pending = Vec::new();
    for g in 0..n as u32 {
        pending.push((vec![2 * g, 2 * g + 1], vec![]));
        pending.push((vec![2 * g + 1, 2 * g], vec![]));
    }
    for r in &p.relators {
        pending.push((to_code(r), vec![]));
    }
    // Processed in input order.
    pending.reverse();
    let completion = Completion {
        order,
        set: RuleSet::default(),
        pending,
        max_rules: max_rules.max(1),
        max_len: max_len.max(1),
    };
    let (set, complete) = completion.run();
    RewritingSystem {
        num_generators: n,
        order,
        set,
        complete,
    }
}

/// Bounded Knuth–Bendix completion: shortlex first, then the wreath ordering.
///
/// The returned system has `is_complete() == true` iff one of the attempts
/// terminated within the bounds.
pub fn knuth_bendix(p: &Presentation, max_rules: usize, max_len: usize) -> RewritingSystem {
    let shortlex = knuth_bendix_with_order(p, WordOrder::ShortLex, max_rules, max_len);
    if shortlex.complete {
        return shortlex;
    }
    let wreath = knuth_bendix_with_order(p, WordOrder::Wreath, max_rules, max_len);
    if wreath.complete {
        wreath
    } else {
        shortlex
    }
}

/// Default completion bounds.
pub const DEFAULT_MAX_RULES: usize = 200;
pub const DEFAULT_MAX_LEN: usize = 40;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn w(v: &[i32]) -> Word {
        Word::from_raw(v.to_vec())
    }

    #[test]
    fn z2_completes_with_commutation_rule() {
        let p = parse_presentation("gens x y\nrel x y x^-1 y^-1").unwrap();
        let rs = knuth_bendix(&p, 50, 20);
        assert!(rs.is_complete());
        assert_eq!(rs.order(), WordOrder::ShortLex);
        assert!(rs.rules().contains(&(w(&[2, 1]), w(&[1, 2]))));
        assert_eq!(rs.normal_form(&w(&[2, 1])).unwrap(), w(&[1, 2]));
        assert_eq!(rs.normal_form(&Word::empty()).unwrap(), Word::empty());
        assert!(rs.critical_pairs_resolve());
    }

    #[test]
    fn bs12_completes_in_wreath_order() {
        let p = parse_presentation("gens a t\nrel t a t^-1 a^-2").unwrap();
        assert!(!knuth_bendix_with_order(&p, WordOrder::ShortLex, 60, 30).is_complete());
        let rs = knuth_bendix(&p, DEFAULT_MAX_RULES, DEFAULT_MAX_LEN);
        assert!(rs.is_complete());
        assert!(rs.rules().len() <= 16);
        // t a t^-1 = a^2
        assert_eq!(rs.normal_form(&w(&[2, 1, -2])).unwrap(), w(&[1, 1]));
        assert!(rs.critical_pairs_resolve());
    }

    #[test]
    fn free_group_needs_no_extra_rules() {
        let p = parse_presentation("gens x y").unwrap();
        let rs = knuth_bendix(&p, 10, 10);
        assert!(rs.is_complete());
        assert_eq!(rs.rules_beyond_free_reduction(), 0);
        assert_eq!(rs.rules().len(), 4);
    }

    #[test]
    fn incomplete_system_refuses_normal_forms() {
        let p = parse_presentation("gens a t\nrel t a t^-1 a^-2").unwrap();
        let rs = knuth_bendix_with_order(&p, WordOrder::ShortLex, 10, 10);
        assert!(!rs.is_complete());
        assert_eq!(rs.normal_form(&w(&[1])), Err(Error::RewritingIncomplete));
    }

    #[test]
    fn test_groups_complete() {
        for text in [
            "gens a t\nrel t a t^-1 a",
            "gens a t\nrel t^-1 a^2 t a^-3",
            "gens a b c d\nrel a b a^-1 b^-1 c d c^-1 d^-1",
            "gens x y\nrel x^2 y^-3",
            "gens a t\nrel t a t^-1 a^-3",
        ] {
            let p = parse_presentation(text).unwrap();
            let rs = knuth_bendix(&p, DEFAULT_MAX_RULES, DEFAULT_MAX_LEN);
            assert!(rs.is_complete(), "{text}");
            assert!(rs.critical_pairs_resolve(), "{text}");
            for r in &p.relators {
                assert!(rs.is_identity(r).unwrap());
            }
        }
    }

    #[test]
    fn wreath_order_examples() {
        // a a t > t a in the wreath order with t above a
        let u = w(&[1, 1, 2]);
        let v = w(&[2, 1]);
        assert_eq!(compare_words(WordOrder::Wreath, &v, &u), Ordering::Greater);
        assert_eq!(compare_words(WordOrder::ShortLex, &v, &u), Ordering::Less);
    }
}
