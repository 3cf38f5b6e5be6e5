//! Constraint-language parser.
//!
//! ```text
//! atom := set op set
//! op   := "_||_" | "_||_p" | "_||_c" | "⊥" | "⊥p" | "⊥c"
//! set  := "{}" | ident ("," ident)*
//! ```
//!
//! A constraint file holds one atom per line; `#` starts a comment.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::atom::{Atom, ConstraintSet, Modality};
use crate::error::ParseError;
use crate::relation::{AttrSet, Vocabulary};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Ident(String),
    Comma,
    EmptySet,
    Op(Modality),
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '-' | '.' | '\'')
}

struct Lexer<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    _src: &'a str,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str, line: usize) -> Self {
        Lexer {
            chars: src.chars().collect(),
            pos: 0,
            line,
            _src: src,
        }
    }

    fn error(&self, column: usize, message: String) -> ParseError {
        ParseError {
            line: self.line,
            column: column + 1,
            message,
        }
    }

    fn starts_with(&self, s: &str) -> bool {
        s.chars()
            .enumerate()
            .all(|(k, c)| self.chars.get(self.pos + k) == Some(&c))
    }

    fn modality_suffix(&mut self) -> Modality {
        let m = match self.chars.get(self.pos) {
            Some('p') => Modality::Possible,
            Some('c') => Modality::Certain,
            _ => return Modality::Plain,
        };
        // `⊥ps` reads as `⊥` followed by the attribute `ps`
        match self.chars.get(self.pos + 1) {
            Some(&c) if is_ident_char(c) => Modality::Plain,
            _ => {
                self.pos += 1;
                m
            }
        }
    }

    fn tokens(mut self) -> Result<Vec<(Token, usize)>, ParseError> {
        let mut out = Vec::new();
        while self.pos < self.chars.len() {
            let c = self.chars[self.pos];
            let start = self.pos;
            if c.is_whitespace() {
                self.pos += 1;
            } else if c == ',' {
                self.pos += 1;
                out.push((Token::Comma, start));
            } else if c == '{' {
                self.pos += 1;
                while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
                    self.pos += 1;
                }
                if self.chars.get(self.pos) != Some(&'}') {
                    return Err(self.error(start, "expected `{}` for the empty set".to_string()));
                }
                self.pos += 1;
                out.push((Token::EmptySet, start));
            } else if self.starts_with("_||_") {
                self.pos += 4;
                let m = self.modality_suffix();
                out.push((Token::Op(m), start));
            } else if c == '⊥' {
                self.pos += 1;
                let m = self.modality_suffix();
                out.push((Token::Op(m), start));
            } else if is_ident_char(c) {
                let mut name = String::new();
                while self.pos < self.chars.len() && is_ident_char(self.chars[self.pos]) && !self.starts_with("_||_") {
                    name.push(self.chars[self.pos]);
                    self.pos += 1;
                }
                out.push((Token::Ident(name), start));
            } else {
                return Err(self.error(start, format!("unexpected character `{c}`")));
            }
        }
        Ok(out)
    }
}

/// Resolves attribute names while parsing.
trait Resolver {
    fn resolve(&mut self, name: &str) -> Option<usize>;
}

impl Resolver for &Vocabulary {
    fn resolve(&mut self, name: &str) -> Option<usize> {
        self.index_of(name)
    }
}

impl Resolver for &mut Vocabulary {
    fn resolve(&mut self, name: &str) -> Option<usize> {
        self.intern(name).ok()
    }
}

fn parse_line<R: Resolver>(text: &str, line: usize, mut resolver: R) -> Result<Atom, ParseError> {
    let lexer = Lexer::new(text, line);
    let end = lexer.chars.len();
    let tokens = lexer.tokens()?;
    let err = |column: usize, message: String| ParseError {
        line,
        column: column + 1,
        message,
    };
    let mut it = tokens.into_iter().peekable();

    let mut parse_set = |it: &mut core::iter::Peekable<alloc::vec::IntoIter<(Token, usize)>>,
                         what: &str|
     -> Result<AttrSet, ParseError> {
        match it.next() {
            Some((Token::EmptySet, _)) => Ok(AttrSet::EMPTY),
            Some((Token::Ident(first), col)) => {
                let mut set = AttrSet::EMPTY;
                let mut name = first;
                let mut col = col;
                loop {
                    let i = resolver
                        .resolve(&name)
                        .ok_or_else(|| err(col, format!("unknown attribute `{name}`")))?;
                    set = set.with(i);
                    if !matches!(it.peek(), Some((Token::Comma, _))) {
                        return Ok(set);
                    }
                    let (_, comma) = it.next().expect("peeked");
                    match it.next() {
                        Some((Token::Ident(n), c)) => {
                            name = n;
                            col = c;
                        }
                        Some((_, c)) => return Err(err(c, "expected an attribute name".to_string())),
                        None => return Err(err(comma + 1, "expected an attribute name".to_string())),
                    }
                }
            }
            Some((_, c)) => Err(err(c, format!("expected {what} attribute set"))),
            None => Err(err(end, format!("expected {what} attribute set"))),
        }
    };

    let lhs = parse_set(&mut it, "a left-hand")?;
    let modality = match it.next() {
        Some((Token::Op(m), _)) => m,
        Some((_, c)) => return Err(err(c, "expected an independence operator".to_string())),
        None => return Err(err(end, "expected an independence operator".to_string())),
    };
    let rhs = parse_set(&mut it, "a right-hand")?;
    if let Some((_, c)) = it.next() {
        return Err(err(c, "unexpected input after the atom".to_string()));
    }
    Ok(Atom::new(lhs, rhs, modality))
}

/// Parses one atom against a fixed vocabulary.
pub fn parse_atom(text: &str, vocab: &Vocabulary) -> Result<Atom, ParseError> {
    parse_line(text, 1, vocab)
}

/// Parses one atom, adding unseen attribute names to `vocab`.
pub fn parse_atom_interning(text: &str, vocab: &mut Vocabulary) -> Result<Atom, ParseError> {
    parse_line(text, 1, vocab)
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Parses a constraint file. Attribute names are interned in order of first
/// appearance, after any names already present in `vocab`.
pub fn parse_constraints(text: &str, vocab: Vocabulary) -> Result<ConstraintSet, ParseError> {
    let mut set = ConstraintSet::new(vocab);
    for (n, raw) in text.lines().enumerate() {
        let body = strip_comment(raw);
        if body.trim().is_empty() {
            continue;
        }
        let atom = parse_line(body, n + 1, set.vocabulary_mut())?;
        set.insert(atom).expect("atom resolved against this vocabulary");
    }
    Ok(set)
}

/// Parses a constraint file against a fixed vocabulary.
pub fn parse_constraints_strict(text: &str, vocab: &Vocabulary) -> Result<ConstraintSet, ParseError> {
    let mut set = ConstraintSet::new(vocab.clone());
    for (n, raw) in text.lines().enumerate() {
        let body = strip_comment(raw);
        if body.trim().is_empty() {
            continue;
        }
        let atom = parse_line(body, n + 1, vocab)?;
        set.insert(atom).expect("atom resolved against this vocabulary");
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atom::Notation;

    fn vocab() -> Vocabulary {
        Vocabulary::new(["e", "s", "g", "status", "gender", "X1", "X2", "Y1"]).unwrap()
    }

    #[test]
    fn parses_grammar_examples() {
        let v = vocab();
        let a = parse_atom("e _||_p s", &v).unwrap();
        assert_eq!(a, Atom::possible(v.set(["e"]).unwrap(), v.set(["s"]).unwrap()));

        let a = parse_atom("status,gender _||_c {}", &v).unwrap();
        assert_eq!(a, Atom::certain(v.set(["status", "gender"]).unwrap(), AttrSet::EMPTY));

        let a = parse_atom("X1,X2 _||_ Y1", &v).unwrap();
        assert_eq!(a, Atom::plain(v.set(["X1", "X2"]).unwrap(), v.set(["Y1"]).unwrap()));
    }

    #[test]
    fn unicode_operators() {
        let v = vocab();
        assert_eq!(parse_atom("e ⊥p s", &v).unwrap().modality, Modality::Possible);
        assert_eq!(parse_atom("e⊥c s", &v).unwrap().modality, Modality::Certain);
        assert_eq!(parse_atom("e ⊥ s", &v).unwrap().modality, Modality::Plain);
        assert_eq!(parse_atom("e_||_s", &v).unwrap().modality, Modality::Plain);
        assert_eq!(parse_atom("{ } _||_c e", &v).unwrap().lhs, AttrSet::EMPTY);
    }

    #[test]
    fn errors_carry_positions() {
        let v = vocab();
        let e = parse_atom("e _||_p q", &v).unwrap_err();
        assert_eq!(e.column, 9);
        assert!(e.message.contains("unknown attribute"));

        let e = parse_atom("e s", &v).unwrap_err();
        assert_eq!(e.column, 3);

        let e = parse_atom("e _||_", &v).unwrap_err();
        assert_eq!(e.column, 7);

        let e = parse_atom("e, _||_ s", &v).unwrap_err();
        assert_eq!(e.column, 4);

        assert!(parse_atom("e _||_ s s", &v).is_err());
        assert!(parse_atom("e { _||_ s", &v).is_err());
        assert!(parse_atom("e ; s", &v).is_err());
    }

    #[test]
    fn constraint_files_skip_comments() {
        let text = "# running example\ne _||_c s   # first\n\ne,s _||_p g\n";
        let set = parse_constraints(text, Vocabulary::default()).unwrap();
        assert_eq!(set.len(), 2);
        assert_eq!(set.vocabulary().names(), ["e", "s", "g"]);

        let e = parse_constraints("e _||_ s\ne _||_ ?", Vocabulary::default()).unwrap_err();
        assert_eq!((e.line, e.column), (2, 8));
    }

    #[test]
    fn round_trips_through_renderer() {
        let v = vocab();
        for text in ["e _||_p s", "status,gender _||_c {}", "{} _||_ {}", "e,s,g _||_c e"] {
            let a = parse_atom(text, &v).unwrap();
            for n in [Notation::Ascii, Notation::Unicode] {
                assert_eq!(parse_atom(&a.render(&v, n), &v).unwrap(), a);
            }
        }
    }
}
