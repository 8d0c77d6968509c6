//! Strict parser for regular expressions.
//!
//! The accepted language is exactly the usual one with priorities
//! star > concatenation > union: postfix stars may stack (`a**` is valid),
//! parentheses must enclose a whole expression (`()` is invalid), and the
//! empty string is invalid. Every valid input has a unique parse, returned
//! in flattened variadic form.

use super::{Ast, LetterStyle, Regex};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at position {pos}: {msg}")]
pub struct ParseError {
    /// Character offset into the input.
    pub pos: usize,
    pub msg: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Plus,
    Star,
    LParen,
    RParen,
    Epsilon,
    Empty,
    Letter(u32),
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::iter::Enumerate<std::str::Chars<'a>>>,
    k: u32,
    saw_alpha: bool,
    saw_indexed: bool,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str, k: u32) -> Lexer<'a> {
        Lexer {
            chars: text.chars().enumerate().peekable(),
            k,
            saw_alpha: false,
            saw_indexed: false,
        }
    }

    fn letter(&self, pos: usize, idx: u32) -> Result<Tok, ParseError> {
        if idx < self.k {
            Ok(Tok::Letter(idx))
        } else {
            Err(ParseError {
                pos,
                msg: format!("letter index {idx} out of range for alphabet size {}", self.k),
            })
        }
    }

    fn next_tok(&mut self) -> Result<Option<(usize, Tok)>, ParseError> {
        let (pos, c) = loop {
            match self.chars.next() {
                None => return Ok(None),
                Some((_, c)) if c.is_whitespace() => continue,
                Some(pc) => break pc,
            }
        };
        let tok = match c {
            '+' => Tok::Plus,
            '*' => Tok::Star,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '@' | 'ε' => Tok::Epsilon,
            '#' | '∅' => Tok::Empty,
            '0'..='9' => self.letter(pos, c as u32 - '0' as u32)?,
            'a' if matches!(self.chars.peek(), Some((_, d)) if d.is_ascii_digit()) => {
                // `a` followed by digits is the indexed letter form.
                let mut idx: u32 = 0;
                while let Some((_, d)) = self.chars.peek().copied() {
                    if let Some(v) = d.to_digit(10) {
                        idx = idx
                            .checked_mul(10)
                            .and_then(|x| x.checked_add(v))
                            .ok_or_else(|| ParseError {
                                pos,
                                msg: "letter index too large".into(),
                            })?;
                        self.chars.next();
                    } else {
                        break;
                    }
                }
                self.saw_indexed = true;
                self.letter(pos, idx)?
            }
            'a'..='z' => {
                self.saw_alpha = true;
                self.letter(pos, c as u32 - 'a' as u32)?
            }
            other => {
                return Err(ParseError {
                    pos,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        };
        Ok(Some((pos, tok)))
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.at).map(|&(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|&(p, _)| p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1;
        self.at += 1;
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    /// union := concat ('+' concat)*
    fn union(&mut self) -> Result<Ast, ParseError> {
        let mut parts = vec![self.concatenation()?];
        while self.peek() == Some(Tok::Plus) {
            self.bump();
            parts.push(self.concatenation()?);
        }
        Ok(Ast::union(parts))
    }

    /// concat := factor+
    fn concatenation(&mut self) -> Result<Ast, ParseError> {
        let mut parts = vec![self.factor()?];
        loop {
            match self.peek() {
                Some(Tok::Plus) | Some(Tok::RParen) | None => break,
                _ => parts.push(self.factor()?),
            }
        }
        Ok(Ast::concat(parts))
    }

    /// factor := atom '*'*
    fn factor(&mut self) -> Result<Ast, ParseError> {
        let mut e = self.atom()?;
        while self.peek() == Some(Tok::Star) {
            self.bump();
            e = Ast::star(e);
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<Ast, ParseError> {
        match self.peek() {
            Some(Tok::Letter(i)) => {
                self.bump();
                Ok(Ast::Letter(i))
            }
            Some(Tok::Epsilon) => {
                self.bump();
                Ok(Ast::Epsilon)
            }
            Some(Tok::Empty) => {
                self.bump();
                Ok(Ast::Empty)
            }
            Some(Tok::LParen) => {
                self.bump();
                let inner = self.union()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.bump();
                        Ok(inner)
                    }
                    _ => self.err("expected `)`"),
                }
            }
            Some(Tok::RParen) => self.err("unmatched `)`"),
            Some(Tok::Star) => self.err("`*` must follow an expression"),
            Some(Tok::Plus) => self.err("`+` must follow an expression"),
            None => self.err("expected an expression"),
        }
    }
}

/// Parses `text` over an alphabet of `k` letters.
pub fn parse_regex(text: &str, k: u32) -> Result<Regex, ParseError> {
    assert!(k >= 1, "alphabet size must be positive");
    let mut lexer = Lexer::new(text, k);
    let mut toks = Vec::new();
    while let Some(t) = lexer.next_tok()? {
        toks.push(t);
    }
    let style = if lexer.saw_indexed {
        LetterStyle::Indexed
    } else if lexer.saw_alpha {
        LetterStyle::LowerAlpha
    } else {
        LetterStyle::for_alphabet(k)
    };
    let mut p = Parser {
        toks,
        at: 0,
        end: text.chars().count(),
    };
    let ast = p.union()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(Regex { k, ast, style })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regex::SizeMeasure;

    #[test]
    fn parses_running_example() {
        let r = parse_regex("(0+10)*(1+@)", 2).unwrap();
        let expected = Ast::concat(vec![
            Ast::star(Ast::union(vec![
                Ast::Letter(0),
                Ast::concat(vec![Ast::Letter(1), Ast::Letter(0)]),
            ])),
            Ast::union(vec![Ast::Letter(1), Ast::Epsilon]),
        ]);
        assert_eq!(r.ast, expected);
        // Unicode spellings are accepted too.
        let r2 = parse_regex("(0+10)*(1+ε)", 2).unwrap();
        assert_eq!(r2.ast, expected);
    }

    #[test]
    fn double_star_allowed() {
        let r = parse_regex("a**", 1).unwrap();
        assert_eq!(r.ast, Ast::star(Ast::star(Ast::Letter(0))));
        assert_eq!(r.style, LetterStyle::LowerAlpha);
    }

    #[test]
    fn empty_parens_rejected() {
        let e = parse_regex("()", 1).unwrap_err();
        assert_eq!(e.pos, 1);
        assert!(parse_regex("", 1).is_err());
        assert!(parse_regex("a+", 1).is_err());
        assert!(parse_regex("*a", 1).is_err());
        assert!(parse_regex("(a", 1).is_err());
        assert!(parse_regex("a)", 1).is_err());
    }

    #[test]
    fn letter_conventions() {
        assert_eq!(parse_regex("a12", 13).unwrap().ast, Ast::Letter(12));
        assert_eq!(
            parse_regex("ba", 2).unwrap().ast,
            Ast::concat(vec![Ast::Letter(1), Ast::Letter(0)])
        );
        assert!(parse_regex("2", 2).is_err());
        assert!(parse_regex("c", 2).is_err());
    }

    #[test]
    fn roundtrip_examples() {
        for (text, k) in [
            ("(0+10)*(1+@)", 2),
            ("0*1*", 2),
            ("((0+1)*0)*", 2),
            ("#", 1),
            ("@", 1),
            ("0**", 1),
            ("(0+@)(1+@)", 2),
        ] {
            let r = parse_regex(text, k).unwrap();
            let rendered = r.render();
            assert_eq!(rendered, text.replace('ε', "@"));
            let r2 = parse_regex(&rendered, k).unwrap();
            assert_eq!(r.ast, r2.ast);
            assert_eq!(
                r.size(SizeMeasure::Ordinary),
                rendered.chars().count()
            );
        }
    }
}
