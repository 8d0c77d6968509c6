//! Regular-expression syntax trees and size measures.
//!
//! Expressions are over the alphabet `a_0 .. a_{k-1}` together with
//! `+` (union), implicit concatenation, `*` (Kleene star), the empty-word
//! constant and the empty-set constant. Union and concatenation are kept
//! in flattened variadic form: a `Union` never has a `Union` child and a
//! `Concat` never has a `Concat` child, and both have at least two
//! children. The `Optional` node (`r?`) is internal to the star-normal-form
//! machinery and never produced by parsing or accepted by rendering.
//!
//! Text syntax: `+`, `*`, parentheses, `@` or `ε` for the empty word,
//! `#` or `∅` for the empty set. Letters are single digits (index 0-9),
//! single lowercase letters (`a` = 0, `b` = 1, ...), or `a<number>`; an
//! `a` immediately followed by digits is always the indexed form.

mod parse;
mod predicates;
mod ssnf;

pub use parse::{parse_regex, ParseError};
pub use predicates::{is_collapsible, is_irreducible, Collapsibility};
pub use ssnf::ssnf;

use std::fmt;

/// Node of a regular-expression syntax tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ast {
    /// The empty language.
    Empty,
    /// The language containing only the empty word.
    Epsilon,
    /// A single alphabet symbol, by index.
    Letter(u32),
    /// Union of at least two alternatives.
    Union(Vec<Ast>),
    /// Concatenation of at least two factors.
    Concat(Vec<Ast>),
    /// Kleene star.
    Star(Box<Ast>),
    /// `r?` (the language plus the empty word); internal to SSNF.
    Optional(Box<Ast>),
}

impl Ast {
    /// Builds a union, flattening nested unions. A single child is
    /// returned as-is; an empty list is the empty language.
    pub fn union(children: Vec<Ast>) -> Ast {
        let mut flat = Vec::with_capacity(children.len());
        for c in children {
            match c {
                Ast::Union(cs) => flat.extend(cs),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => Ast::Empty,
            1 => flat.pop().unwrap(),
            _ => Ast::Union(flat),
        }
    }

    /// Builds a concatenation, flattening nested concatenations. A single
    /// child is returned as-is; an empty list is the empty word.
    pub fn concat(children: Vec<Ast>) -> Ast {
        let mut flat = Vec::with_capacity(children.len());
        for c in children {
            match c {
                Ast::Concat(cs) => flat.extend(cs),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => Ast::Epsilon,
            1 => flat.pop().unwrap(),
            _ => Ast::Concat(flat),
        }
    }

    pub fn star(child: Ast) -> Ast {
        Ast::Star(Box::new(child))
    }

    /// True iff the empty word belongs to the denoted language.
    pub fn nullable(&self) -> bool {
        match self {
            Ast::Empty | Ast::Letter(_) => false,
            Ast::Epsilon | Ast::Star(_) | Ast::Optional(_) => true,
            Ast::Union(cs) => cs.iter().any(Ast::nullable),
            Ast::Concat(cs) => cs.iter().all(Ast::nullable),
        }
    }

    /// True iff the tree contains an `Empty` node.
    pub fn contains_empty_set(&self) -> bool {
        match self {
            Ast::Empty => true,
            Ast::Epsilon | Ast::Letter(_) => false,
            Ast::Union(cs) | Ast::Concat(cs) => cs.iter().any(Ast::contains_empty_set),
            Ast::Star(c) | Ast::Optional(c) => c.contains_empty_set(),
        }
    }

    /// True iff the tree contains an `Optional` node.
    pub fn contains_optional(&self) -> bool {
        match self {
            Ast::Empty | Ast::Epsilon | Ast::Letter(_) => false,
            Ast::Union(cs) | Ast::Concat(cs) => cs.iter().any(Ast::contains_optional),
            Ast::Optional(_) => true,
            Ast::Star(c) => c.contains_optional(),
        }
    }

    /// Size of the expression under the given measure.
    pub fn size(&self, measure: SizeMeasure) -> usize {
        match measure {
            SizeMeasure::Ordinary => self.ordinary_len(Prec::Top),
            SizeMeasure::ReversePolish => self.rpn_len(),
            SizeMeasure::Alphabetic => self.alphabetic_width(),
        }
    }

    /// Ordinary length: symbols of the minimally parenthesized rendering,
    /// counting each letter, constant, operator and parenthesis as one.
    fn ordinary_len(&self, ctx: Prec) -> usize {
        let bare = match self {
            Ast::Empty | Ast::Epsilon | Ast::Letter(_) => 1,
            Ast::Union(cs) => {
                cs.iter().map(|c| c.ordinary_len(Prec::Union)).sum::<usize>() + cs.len() - 1
            }
            Ast::Concat(cs) => cs.iter().map(|c| c.ordinary_len(Prec::Concat)).sum(),
            Ast::Star(c) | Ast::Optional(c) => c.ordinary_len(Prec::Star) + 1,
        };
        if self.needs_parens(ctx) {
            bare + 2
        } else {
            bare
        }
    }

    /// Reverse polish length: nodes of the syntax tree with variadic
    /// operators split into binary applications.
    fn rpn_len(&self) -> usize {
        match self {
            Ast::Empty | Ast::Epsilon | Ast::Letter(_) => 1,
            Ast::Union(cs) | Ast::Concat(cs) => {
                cs.iter().map(Ast::rpn_len).sum::<usize>() + cs.len() - 1
            }
            Ast::Star(c) | Ast::Optional(c) => c.rpn_len() + 1,
        }
    }

    /// Number of alphabet-letter occurrences.
    fn alphabetic_width(&self) -> usize {
        match self {
            Ast::Empty | Ast::Epsilon => 0,
            Ast::Letter(_) => 1,
            Ast::Union(cs) | Ast::Concat(cs) => cs.iter().map(Ast::alphabetic_width).sum(),
            Ast::Star(c) | Ast::Optional(c) => c.alphabetic_width(),
        }
    }

    fn needs_parens(&self, ctx: Prec) -> bool {
        match self {
            Ast::Union(_) => ctx >= Prec::Concat,
            Ast::Concat(_) => ctx >= Prec::Star,
            _ => false,
        }
    }

    /// Renders in ordinary syntax with minimal parentheses.
    pub fn render(&self, style: LetterStyle) -> String {
        let mut out = String::new();
        self.render_into(&mut out, Prec::Top, style);
        out
    }

    fn render_into(&self, out: &mut String, ctx: Prec, style: LetterStyle) {
        let parens = self.needs_parens(ctx);
        if parens {
            out.push('(');
        }
        match self {
            Ast::Empty => out.push('#'),
            Ast::Epsilon => out.push('@'),
            Ast::Letter(i) => style.push_letter(out, *i),
            Ast::Union(cs) => {
                for (j, c) in cs.iter().enumerate() {
                    if j > 0 {
                        out.push('+');
                    }
                    c.render_into(out, Prec::Union, style);
                }
            }
            Ast::Concat(cs) => {
                for c in cs {
                    c.render_into(out, Prec::Concat, style);
                }
            }
            Ast::Star(c) => {
                c.render_into(out, Prec::Star, style);
                out.push('*');
            }
            Ast::Optional(c) => {
                c.render_into(out, Prec::Star, style);
                out.push('?');
            }
        }
        if parens {
            out.push(')');
        }
    }

    /// Renders in reverse polish syntax with an explicit `•` for each
    /// binary concatenation.
    pub fn render_rpn(&self, style: LetterStyle) -> String {
        let mut out = String::new();
        self.render_rpn_into(&mut out, style);
        out
    }

    fn render_rpn_into(&self, out: &mut String, style: LetterStyle) {
        match self {
            Ast::Empty => out.push('∅'),
            Ast::Epsilon => out.push('ε'),
            Ast::Letter(i) => style.push_letter(out, *i),
            Ast::Union(cs) | Ast::Concat(cs) => {
                let op = if matches!(self, Ast::Union(_)) { '+' } else { '•' };
                cs[0].render_rpn_into(out, style);
                for c in &cs[1..] {
                    c.render_rpn_into(out, style);
                    out.push(op);
                }
            }
            Ast::Star(c) => {
                c.render_rpn_into(out, style);
                out.push('*');
            }
            Ast::Optional(c) => {
                c.render_rpn_into(out, style);
                out.push('?');
            }
        }
    }

    /// Largest letter index plus one, i.e. the smallest alphabet that
    /// accommodates the expression.
    pub fn min_alphabet(&self) -> u32 {
        match self {
            Ast::Empty | Ast::Epsilon => 0,
            Ast::Letter(i) => i + 1,
            Ast::Union(cs) | Ast::Concat(cs) => {
                cs.iter().map(Ast::min_alphabet).max().unwrap_or(0)
            }
            Ast::Star(c) | Ast::Optional(c) => c.min_alphabet(),
        }
    }
}

/// Rendering context precedence: star binds tighter than concatenation,
/// which binds tighter than union.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Top,
    Union,
    Concat,
    Star,
}

/// The three size measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum SizeMeasure {
    /// Symbols of the minimally parenthesized string, parentheses included.
    Ordinary,
    /// Nodes of the syntax tree (explicit concatenation operator).
    ReversePolish,
    /// Alphabet-letter occurrences only.
    Alphabetic,
}

impl SizeMeasure {
    pub const ALL: [SizeMeasure; 3] = [
        SizeMeasure::Ordinary,
        SizeMeasure::ReversePolish,
        SizeMeasure::Alphabetic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SizeMeasure::Ordinary => "ordinary",
            SizeMeasure::ReversePolish => "rpn",
            SizeMeasure::Alphabetic => "alphabetic",
        }
    }
}

impl std::str::FromStr for SizeMeasure {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "ordinary" | "ord" => Ok(SizeMeasure::Ordinary),
            "rpn" | "reverse-polish" | "reverse_polish" => Ok(SizeMeasure::ReversePolish),
            "alphabetic" | "alph" => Ok(SizeMeasure::Alphabetic),
            _ => Err(format!("unknown size measure `{s}`")),
        }
    }
}

impl fmt::Display for SizeMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How letter indices appear in text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LetterStyle {
    /// `0`, `1`, ..., `9` (alphabets up to 10 letters).
    Digits,
    /// `a`, `b`, ..., `z` (alphabets up to 26 letters).
    LowerAlpha,
    /// `a0`, `a1`, ... (any alphabet size).
    Indexed,
}

impl LetterStyle {
    /// Style to use for an alphabet of `k` letters when no preference is
    /// known: digits for small alphabets, `a<i>` beyond ten letters.
    pub fn for_alphabet(k: u32) -> LetterStyle {
        if k <= 10 {
            LetterStyle::Digits
        } else {
            LetterStyle::Indexed
        }
    }

    fn push_letter(self, out: &mut String, i: u32) {
        push_letter(out, self, i)
    }
}

/// Appends the text form of letter `i` under a style.
pub fn push_letter(out: &mut String, style: LetterStyle, i: u32) {
    match style {
        LetterStyle::Digits if i < 10 => out.push((b'0' + i as u8) as char),
        LetterStyle::LowerAlpha if i < 26 => out.push((b'a' + i as u8) as char),
        _ => {
            out.push('a');
            out.push_str(&i.to_string());
        }
    }
}

/// A regular expression together with its alphabet size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Regex {
    pub k: u32,
    pub ast: Ast,
    /// Letter style seen while parsing (used to render answers the way
    /// the input spelled them).
    pub style: LetterStyle,
}

impl Regex {
    pub fn new(k: u32, ast: Ast) -> Regex {
        Regex {
            k,
            ast,
            style: LetterStyle::for_alphabet(k),
        }
    }

    pub fn size(&self, measure: SizeMeasure) -> usize {
        self.ast.size(measure)
    }

    pub fn render(&self) -> String {
        self.ast.render(self.style)
    }

    pub fn render_rpn(&self) -> String {
        self.ast.render_rpn(self.style)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn running_example() -> Ast {
        // (0+10)*(1+@)
        Ast::concat(vec![
            Ast::star(Ast::union(vec![
                Ast::Letter(0),
                Ast::concat(vec![Ast::Letter(1), Ast::Letter(0)]),
            ])),
            Ast::union(vec![Ast::Letter(1), Ast::Epsilon]),
        ])
    }

    #[test]
    fn sizes_of_running_example() {
        let e = running_example();
        assert_eq!(e.size(SizeMeasure::Ordinary), 12);
        assert_eq!(e.size(SizeMeasure::ReversePolish), 10);
        assert_eq!(e.size(SizeMeasure::Alphabetic), 4);
    }

    #[test]
    fn render_minimal_parens() {
        let e = running_example();
        assert_eq!(e.render(LetterStyle::Digits), "(0+10)*(1+@)");
        assert_eq!(Ast::Letter(0).render(LetterStyle::Digits), "0");
        assert_eq!(
            Ast::union(vec![Ast::Letter(0), Ast::Letter(1)]).render(LetterStyle::Digits),
            "0+1"
        );
    }

    #[test]
    fn render_rpn_explicit_concat() {
        let e = running_example();
        let s = e.render_rpn(LetterStyle::Digits);
        assert_eq!(s, "010•+*1ε+•");
        assert_eq!(s.chars().count(), e.size(SizeMeasure::ReversePolish));
    }

    #[test]
    fn ordinary_length_matches_rendering() {
        let cases = [
            running_example(),
            Ast::star(Ast::star(Ast::Letter(0))),
            Ast::union(vec![
                Ast::Epsilon,
                Ast::concat(vec![Ast::Letter(0), Ast::star(Ast::Letter(1))]),
            ]),
            Ast::star(Ast::concat(vec![
                Ast::union(vec![Ast::Letter(0), Ast::Epsilon]),
                Ast::Letter(1),
            ])),
        ];
        for e in cases {
            assert_eq!(
                e.size(SizeMeasure::Ordinary),
                e.render(LetterStyle::Digits).chars().count(),
                "expression {:?}",
                e
            );
        }
    }

    #[test]
    fn nullable_basics() {
        assert!(Ast::star(Ast::Letter(0)).nullable());
        assert!(!Ast::Letter(0).nullable());
        assert!(Ast::concat(vec![
            Ast::star(Ast::Letter(0)),
            Ast::union(vec![Ast::Letter(1), Ast::Epsilon]),
        ])
        .nullable());
        assert!(!Ast::Empty.nullable());
    }

    #[test]
    fn builders_flatten() {
        let u = Ast::union(vec![
            Ast::Letter(0),
            Ast::union(vec![Ast::Letter(1), Ast::Letter(2)]),
        ]);
        assert_eq!(
            u,
            Ast::Union(vec![Ast::Letter(0), Ast::Letter(1), Ast::Letter(2)])
        );
        let c = Ast::concat(vec![
            Ast::concat(vec![Ast::Letter(0), Ast::Letter(1)]),
            Ast::Letter(2),
        ]);
        assert_eq!(
            c,
            Ast::Concat(vec![Ast::Letter(0), Ast::Letter(1), Ast::Letter(2)])
        );
    }
}
