//! Strong star normal form.
//!
//! The normal form is defined on an alternative syntax in which `ε` and
//! `∅` never occur inside non-atomic expressions; the `?` operator stands
//! in for `∪ {ε}`. Two mutually recursive operators do the work: `∘`
//! strips the empty word from a language's expression, and `•` rewrites
//! star bodies through `∘` so that no starred subexpression (and no `+ε`
//! summand) denotes the empty word. The transformation preserves the
//! language and never increases any of the three size measures.

use super::Ast;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum SsnfError {
    #[error("strong star normal form is undefined for expressions containing ∅")]
    ContainsEmptySet,
}

/// Strong star normal form of `ast`.
///
/// A standalone `∅` or `ε` atom is returned unchanged; `∅` anywhere else
/// is rejected. `Union` summands equal to `ε` are converted to the
/// `?`-form on entry and converted back (as a trailing `+ε`) on exit.
pub fn ssnf(ast: &Ast) -> Result<Ast, SsnfError> {
    if matches!(ast, Ast::Empty) {
        return Ok(Ast::Empty);
    }
    if ast.contains_empty_set() {
        return Err(SsnfError::ContainsEmptySet);
    }
    Ok(match to_alt(ast) {
        None => Ast::Epsilon,
        Some(alt) => from_alt(&bullet(&alt)),
    })
}

/// Conversion into the alternative syntax. `None` encodes the expression
/// `ε` (it only survives as a whole expression).
fn to_alt(ast: &Ast) -> Option<Ast> {
    match ast {
        Ast::Empty => unreachable!("rejected before conversion"),
        Ast::Epsilon => None,
        Ast::Letter(i) => Some(Ast::Letter(*i)),
        Ast::Union(cs) => {
            let mut saw_eps = false;
            let mut parts = Vec::new();
            for c in cs {
                match to_alt(c) {
                    None => saw_eps = true,
                    Some(p) => parts.push(p),
                }
            }
            if parts.is_empty() {
                None
            } else {
                let u = Ast::union(parts);
                Some(if saw_eps { Ast::Optional(Box::new(u)) } else { u })
            }
        }
        Ast::Concat(cs) => {
            let parts: Vec<Ast> = cs.iter().filter_map(to_alt).collect();
            if parts.is_empty() {
                None
            } else {
                Some(Ast::concat(parts))
            }
        }
        Ast::Star(c) => to_alt(c).map(Ast::star),
        Ast::Optional(c) => to_alt(c).map(|inner| Ast::Optional(Box::new(inner))),
    }
}

/// The `•` operator.
fn bullet(r: &Ast) -> Ast {
    match r {
        Ast::Letter(i) => Ast::Letter(*i),
        Ast::Union(cs) => Ast::union(cs.iter().map(bullet).collect()),
        Ast::Concat(cs) => Ast::concat(cs.iter().map(bullet).collect()),
        Ast::Star(c) => Ast::star(circ(&bullet(c))),
        Ast::Optional(c) => {
            if c.nullable() {
                bullet(c)
            } else {
                Ast::Optional(Box::new(bullet(c)))
            }
        }
        Ast::Empty | Ast::Epsilon => unreachable!("alternative syntax has no constants"),
    }
}

/// The `∘` operator: removes the empty word where present. A nullable
/// concatenation splits into the union of its factors' `∘`-forms.
pub(crate) fn circ(r: &Ast) -> Ast {
    match r {
        Ast::Letter(i) => Ast::Letter(*i),
        Ast::Union(cs) => Ast::union(cs.iter().map(circ).collect()),
        Ast::Optional(c) | Ast::Star(c) => circ(c),
        Ast::Concat(cs) => {
            if r.nullable() {
                Ast::union(cs.iter().map(circ).collect())
            } else {
                r.clone()
            }
        }
        Ast::Empty | Ast::Epsilon => unreachable!("alternative syntax has no constants"),
    }
}

/// Back to standard syntax: each surviving `?` becomes a union with a
/// trailing `ε` summand.
fn from_alt(r: &Ast) -> Ast {
    match r {
        Ast::Letter(i) => Ast::Letter(*i),
        Ast::Union(cs) => Ast::union(cs.iter().map(from_alt).collect()),
        Ast::Concat(cs) => Ast::concat(cs.iter().map(from_alt).collect()),
        Ast::Star(c) => Ast::star(from_alt(c)),
        Ast::Optional(c) => Ast::union(vec![from_alt(c), Ast::Epsilon]),
        Ast::Empty | Ast::Epsilon => unreachable!("alternative syntax has no constants"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regex::{parse_regex, LetterStyle, SizeMeasure};

    fn norm(text: &str, k: u32) -> String {
        ssnf(&parse_regex(text, k).unwrap().ast)
            .unwrap()
            .render(LetterStyle::LowerAlpha)
    }

    #[test]
    fn omitted_star_forms() {
        assert_eq!(norm("a**", 1), "a*");
        assert_eq!(norm("(a+@)*", 1), "a*");
        assert_eq!(norm("a*+@", 1), "a*");
        assert_eq!(norm("a+@+@", 1), "a+@");
    }

    #[test]
    fn optional_factors_under_star() {
        let input = Ast::star(Ast::concat(vec![
            Ast::Optional(Box::new(Ast::Letter(0))),
            Ast::Optional(Box::new(Ast::Letter(1))),
        ]));
        let out = ssnf(&input).unwrap();
        assert_eq!(
            out,
            Ast::star(Ast::union(vec![Ast::Letter(0), Ast::Letter(1)]))
        );
    }

    #[test]
    fn atoms_untouched() {
        assert_eq!(norm("a", 1), "a");
        assert_eq!(norm("@", 1), "@");
        assert_eq!(ssnf(&Ast::Empty).unwrap(), Ast::Empty);
        assert!(ssnf(&parse_regex("a+#", 1).unwrap().ast).is_err());
    }

    #[test]
    fn sizes_never_grow() {
        for (text, k) in [
            ("a**", 1),
            ("(a+@)*", 1),
            ("(a*b*)*", 2),
            ("((a+@)(b+@))*", 2),
            ("a*+@+b", 2),
            ("(@+a)(@+b)", 2),
            ("@a", 1),
            ("@*", 1),
        ] {
            let r = parse_regex(text, k).unwrap().ast;
            let s = ssnf(&r).unwrap();
            for m in SizeMeasure::ALL {
                assert!(
                    s.size(m) <= r.size(m),
                    "{text}: {m} grew from {} to {}",
                    r.size(m),
                    s.size(m)
                );
            }
            assert_eq!(ssnf(&s).unwrap(), s, "not idempotent on {text}");
        }
    }

    #[test]
    fn circ_shrinks_nullable_expressions() {
        // On the alternative syntax, the ∘ of a nullable expression whose
        // language is not {ε} is at least one symbol shorter.
        let cases = [
            Ast::star(Ast::Letter(0)),
            Ast::Optional(Box::new(Ast::Letter(0))),
            Ast::concat(vec![
                Ast::Optional(Box::new(Ast::Letter(0))),
                Ast::star(Ast::Letter(1)),
            ]),
            Ast::union(vec![
                Ast::star(Ast::Letter(0)),
                Ast::concat(vec![Ast::Letter(1), Ast::Letter(1)]),
            ]),
        ];
        for r in cases {
            assert!(r.nullable());
            let c = circ(&r);
            assert!(
                c.size(SizeMeasure::Ordinary) <= r.size(SizeMeasure::Ordinary) - 1,
                "∘ failed to shrink {:?}",
                r
            );
            assert!(!c.nullable(), "∘ output still nullable for {:?}", r);
        }
    }
}
