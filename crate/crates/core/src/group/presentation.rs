//! Text form of finite presentations, e.g. `<x, y | x^2, y^3, x*y*x*y>`.
//! Words are `*`-joined powers of generators; there are no parentheses.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use super::word::{free_reduce, GroupWord, Letter};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("duplicate generator `{name}` at line {line}, column {column}")]
    DuplicateGenerator {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("unknown generator `{name}` at line {line}, column {column}")]
    UnknownGenerator {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("relator {index} is trivial after free reduction")]
    EmptyRelator { index: usize },
    #[error("relator letter refers to generator {generator}, but only {count} generators exist")]
    GeneratorOutOfRange { generator: usize, count: usize },
}

/// Generators and freely reduced, nonempty relators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    generators: Vec<String>,
    relators: Vec<GroupWord>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relators: Vec<GroupWord>) -> Result<Self, ParseError> {
        let mut seen = HashMap::new();
        for name in &generators {
            if seen.insert(name.as_str(), ()).is_some() {
                return Err(ParseError::DuplicateGenerator {
                    name: name.clone(),
                    line: 0,
                    column: 0,
                });
            }
        }
        let mut reduced = Vec::with_capacity(relators.len());
        for (index, r) in relators.into_iter().enumerate() {
            if let Some(g) = r.max_generator() {
                if g >= generators.len() {
                    return Err(ParseError::GeneratorOutOfRange {
                        generator: g,
                        count: generators.len(),
                    });
                }
            }
            let r = free_reduce(r.letters().iter().copied());
            if r.is_empty() {
                return Err(ParseError::EmptyRelator { index });
            }
            reduced.push(r);
        }
        Ok(GroupPresentation {
            generators,
            relators: reduced,
        })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[GroupWord] {
        &self.relators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Parses a single word over this presentation's generators.
    pub fn parse_word(&self, text: &str) -> Result<GroupWord, ParseError> {
        parse_word(text, &self.generators)
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} | ", self.generators.join(", "))?;
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", r.display(&self.generators))?;
        }
        f.write_str(">")
    }
}

pub fn parse_presentation(text: &str) -> Result<GroupPresentation, ParseError> {
    let tokens = tokenize(text)?;
    let mut p = Parser { tokens, pos: 0 };

    p.expect(&Tok::Open)?;
    let mut generators: Vec<String> = Vec::new();
    if !p.peek_is(&Tok::Bar) {
        loop {
            let (name, line, column) = p.ident()?;
            if generators.contains(&name) {
                return Err(ParseError::DuplicateGenerator { name, line, column });
            }
            generators.push(name);
            if p.peek_is(&Tok::Comma) {
                p.pos += 1;
            } else {
                break;
            }
        }
    }
    p.expect(&Tok::Bar)?;

    let mut relators = Vec::new();
    if !p.peek_is(&Tok::Close) {
        loop {
            let index = relators.len();
            let word = p.word(&generators)?;
            if word.is_empty() {
                return Err(ParseError::EmptyRelator { index });
            }
            relators.push(word);
            if p.peek_is(&Tok::Comma) {
                p.pos += 1;
            } else {
                break;
            }
        }
    }
    p.expect(&Tok::Close)?;
    p.end()?;

    Ok(GroupPresentation {
        generators,
        relators,
    })
}

/// Parses `x^2*y^-1` style words; `1` is the identity.
pub fn parse_word<S: AsRef<str>>(text: &str, generators: &[S]) -> Result<GroupWord, ParseError> {
    let names: Vec<String> = generators.iter().map(|s| s.as_ref().to_string()).collect();
    let tokens = tokenize(text)?;
    let mut p = Parser { tokens, pos: 0 };
    let w = p.word(&names)?;
    p.end()?;
    Ok(w)
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Bar,
    Comma,
    Star,
    Caret,
    Minus,
    Plus,
    Ident(String),
    Number(String),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Open => f.write_str("`<`"),
            Tok::Close => f.write_str("`>`"),
            Tok::Bar => f.write_str("`|`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Number(s) => write!(f, "number `{s}`"),
        }
    }
}

struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, column);
        let single = match c {
            '<' => Some(Tok::Open),
            '>' => Some(Tok::Close),
            '|' => Some(Tok::Bar),
            ',' => Some(Tok::Comma),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '-' => Some(Tok::Minus),
            '+' => Some(Tok::Plus),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Spanned {
                tok,
                line: tl,
                column: tc,
            });
            i += 1;
            column += 1;
        } else if c == '\n' {
            i += 1;
            line += 1;
            column = 1;
        } else if c.is_whitespace() {
            i += 1;
            column += 1;
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            column += i - start;
            out.push(Spanned {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line: tl,
                column: tc,
            });
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            column += i - start;
            out.push(Spanned {
                tok: Tok::Number(chars[start..i].iter().collect()),
                line: tl,
                column: tc,
            });
        } else {
            return Err(ParseError::Syntax {
                line: tl,
                column: tc,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Spanned> {
        self.tokens.get(self.pos)
    }

    fn peek_is(&self, tok: &Tok) -> bool {
        self.peek().is_some_and(|s| &s.tok == tok)
    }

    fn error_here(&self, message: String) -> ParseError {
        let (line, column) = match self.peek() {
            Some(s) => (s.line, s.column),
            None => self
                .tokens
                .last()
                .map(|s| (s.line, s.column + 1))
                .unwrap_or((1, 1)),
        };
        ParseError::Syntax {
            line,
            column,
            message,
        }
    }

    fn describe_next(&self) -> String {
        match self.peek() {
            Some(s) => s.tok.to_string(),
            None => "end of input".to_string(),
        }
    }

    fn expect(&mut self, tok: &Tok) -> Result<(), ParseError> {
        if self.peek_is(tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error_here(format!("expected {tok}, found {}", self.describe_next())))
        }
    }

    fn end(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.error_here(format!("unexpected {}", self.describe_next()))),
        }
    }

    fn ident(&mut self) -> Result<(String, usize, usize), ParseError> {
        match self.peek() {
            Some(Spanned {
                tok: Tok::Ident(name),
                line,
                column,
            }) => {
                let out = (name.clone(), *line, *column);
                self.pos += 1;
                Ok(out)
            }
            _ => Err(self.error_here(format!(
                "expected identifier, found {}",
                self.describe_next()
            ))),
        }
    }

    fn word(&mut self, generators: &[String]) -> Result<GroupWord, ParseError> {
        let mut letters = Vec::new();
        loop {
            self.atom(generators, &mut letters)?;
            if self.peek_is(&Tok::Star) {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(free_reduce(letters))
    }

    fn atom(&mut self, generators: &[String], letters: &mut Vec<Letter>) -> Result<(), ParseError> {
        let generator = match self.peek() {
            Some(Spanned {
                tok: Tok::Number(n),
                ..
            }) if n == "1" => {
                self.pos += 1;
                None
            }
            Some(Spanned {
                tok: Tok::Ident(_),
                ..
            }) => {
                let (name, line, column) = self.ident()?;
                match generators.iter().position(|g| *g == name) {
                    Some(g) => Some(g),
                    None => return Err(ParseError::UnknownGenerator { name, line, column }),
                }
            }
            _ => {
                return Err(self.error_here(format!(
                    "expected generator, found {}",
                    self.describe_next()
                )))
            }
        };
        let mut exponent: i64 = 1;
        if self.peek_is(&Tok::Caret) {
            self.pos += 1;
            let negative = if self.peek_is(&Tok::Minus) {
                self.pos += 1;
                true
            } else {
                if self.peek_is(&Tok::Plus) {
                    self.pos += 1;
                }
                false
            };
            let magnitude = match self.peek() {
                Some(Spanned {
                    tok: Tok::Number(n),
                    ..
                }) => n.parse::<i64>().ok(),
                _ => None,
            };
            let Some(magnitude) = magnitude else {
                return Err(self.error_here(format!(
                    "expected exponent, found {}",
                    self.describe_next()
                )));
            };
            self.pos += 1;
            exponent = if negative { -magnitude } else { magnitude };
        }
        if let Some(g) = generator {
            letters.extend_from_slice(GroupWord::power(g, exponent).letters());
        }
        Ok(())
    }
}
