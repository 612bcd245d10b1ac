//! Text format for finite presentations.
//!
//! ```text
//! # Baumslag-Solitar BS(1,2)
//! group BS(1,2)
//! gens a t
//! rel t a t^-1 a^-2
//! ```
//!
//! A word is a whitespace-separated list of generator symbols, each with an
//! optional `^<integer>` exponent. The `gens` line is mandatory; `group` and
//! `rel` lines are optional.

use super::word::{free_reduce, Letter, Word};
use super::Presentation;
use crate::error::{Error, Result};

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn valid_symbol(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

/// Splits a line into tokens with their 1-based starting columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn parse_word(toks: &[(usize, &str)], line_no: usize, generators: &[String]) -> Result<Word> {
    let mut letters: Vec<Letter> = Vec::new();
    for &(col, tok) in toks {
        let (sym, exp) = match tok.split_once('^') {
            Some((s, e)) => {
                let e: i64 = e.parse().map_err(|_| {
                    syntax(line_no, col + s.len() + 1, format!("bad exponent `{e}`"))
                })?;
                (s, e)
            }
            None => (tok, 1),
        };
        if !valid_symbol(sym) {
            return Err(syntax(line_no, col, format!("bad symbol `{sym}`")));
        }
        let g = generators
            .iter()
            .position(|n| n == sym)
            .ok_or_else(|| Error::UnknownGenerator(sym.to_string()))?;
        let l = g as Letter + 1;
        let l = if exp < 0 { -l } else { l };
        for _ in 0..exp.unsigned_abs() {
            letters.push(l);
        }
    }
    Ok(Word::from_raw(letters))
}

/// Parses the presentation file format.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut name: Option<String> = None;
    let mut generators: Option<Vec<String>> = None;
    let mut raw_relators: Vec<(usize, Vec<(usize, String)>)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let toks = tokens(line);
        let Some(&(col, keyword)) = toks.first() else {
            continue;
        };
        match keyword {
            "group" => {
                if toks.len() < 2 {
                    return Err(syntax(line_no, col, "missing group name"));
                }
                name = Some(toks[1..].iter().map(|t| t.1).collect::<Vec<_>>().join(" "));
            }
            "gens" => {
                if generators.is_some() {
                    return Err(syntax(line_no, col, "duplicate `gens` line"));
                }
                let mut gens: Vec<String> = Vec::new();
                for &(c, t) in &toks[1..] {
                    if !valid_symbol(t) {
                        return Err(syntax(line_no, c, format!("bad generator symbol `{t}`")));
                    }
                    if gens.iter().any(|g| g == t) {
                        return Err(Error::DuplicateGenerator(t.to_string()));
                    }
                    gens.push(t.to_string());
                }
                generators = Some(gens);
            }
            "rel" => {
                raw_relators.push((
                    line_no,
                    toks[1..].iter().map(|&(c, t)| (c, t.to_string())).collect(),
                ));
            }
            other => {
                return Err(syntax(line_no, col, format!("unknown keyword `{other}`")));
            }
        }
    }

    let generators = generators.ok_or(Error::EmptyGeneratorList)?;
    if generators.is_empty() {
        return Err(Error::EmptyGeneratorList);
    }
    let mut relators = Vec::with_capacity(raw_relators.len());
    for (line_no, toks) in raw_relators {
        let toks: Vec<(usize, &str)> = toks.iter().map(|(c, t)| (*c, t.as_str())).collect();
        relators.push(parse_word(&toks, line_no, &generators)?);
    }
    Presentation::new(
        name.unwrap_or_else(|| "G".to_string()),
        generators,
        relators,
    )
}

/// Parses a single word over the generators of `p`, in the file syntax.
pub fn parse_word_over(p: &Presentation, text: &str) -> Result<Word> {
    let toks = tokens(text);
    Ok(free_reduce(&parse_word(&toks, 1, &p.generators)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_bs12() {
        let p = parse_presentation("gens a t\nrel t a t^-1 a^-2").unwrap();
        assert_eq!(p.generators, vec!["a", "t"]);
        assert_eq!(p.relators.len(), 1);
        assert_eq!(p.relators[0].letters(), &[2, 1, -2, -1, -1]);
    }

    #[test]
    fn empty_relator_is_rejected() {
        assert_eq!(
            parse_presentation("gens a\nrel a a^-1"),
            Err(Error::EmptyRelator(0))
        );
    }

    #[test]
    fn parses_z2_with_comments() {
        let p = parse_presentation(
            "# free abelian\ngroup Z2\ngens x y\nrel x y x^-1 y^-1 # commutator\n",
        )
        .unwrap();
        assert_eq!(p.name, "Z2");
        assert_eq!(p.relators[0].len(), 4);
    }

    #[test]
    fn reports_errors() {
        assert_eq!(
            parse_presentation("gens b\nrel a"),
            Err(Error::UnknownGenerator("a".into()))
        );
        assert_eq!(
            parse_presentation("group G\n"),
            Err(Error::EmptyGeneratorList)
        );
        assert_eq!(parse_presentation("gens\n"), Err(Error::EmptyGeneratorList));
        assert!(matches!(
            parse_presentation("gens a\nrel a^x"),
            Err(Error::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_presentation("gens a b\nfoo a"),
            Err(Error::Syntax {
                line: 2,
                column: 1,
                ..
            })
        ));
        assert_eq!(
            parse_presentation("gens a a"),
            Err(Error::DuplicateGenerator("a".into()))
        );
    }

    #[test]
    fn relators_are_cyclically_reduced() {
        let p = parse_presentation("gens a b\nrel b a a b^-1").unwrap();
        assert_eq!(p.relators[0].letters(), &[1, 1]);
    }
}
