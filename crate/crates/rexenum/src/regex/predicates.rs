//! Syntactic-redundancy predicates.
//!
//! An expression is collapsible when it can be shrunk by one of three
//! semantic rewrites: it mentions the empty-set constant inside a larger
//! expression, a concatenation factor denotes exactly `{ε}`, or a union
//! has a `{ε}` summand next to a summand that already contains the empty
//! word. Irreducible expressions are the uncollapsible ones with no double
//! star; minimal expressions are always irreducible.

use super::{Ast, SizeMeasure};
use crate::automata::{is_epsilon_language, to_dfa};

/// Outcome of the collapsibility test. The numbered conditions follow the
/// order in which they are checked; the first match is reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Collapsibility {
    /// Contains the empty-set constant and has ordinary length > 1.
    EmptySetInside,
    /// Some concatenation has a factor denoting exactly `{ε}`.
    EpsilonFactor,
    /// Some union has a `{ε}` summand and another summand containing ε.
    EpsilonSummand,
    Uncollapsible,
}

impl Collapsibility {
    pub fn is_collapsible(self) -> bool {
        self != Collapsibility::Uncollapsible
    }

    /// Condition number (1, 2, or 3) or None for uncollapsible.
    pub fn condition(self) -> Option<u8> {
        match self {
            Collapsibility::EmptySetInside => Some(1),
            Collapsibility::EpsilonFactor => Some(2),
            Collapsibility::EpsilonSummand => Some(3),
            Collapsibility::Uncollapsible => None,
        }
    }
}

/// Whether the language of `ast` is exactly `{ε}`. Decided on the minimal
/// DFA; the predicate is semantic, not syntactic.
fn denotes_epsilon_only(ast: &Ast, k: u32) -> bool {
    // Cheap cut: an expression whose language contains a letter can be
    // detected syntactically in the common cases.
    match ast {
        Ast::Epsilon => true,
        Ast::Letter(_) | Ast::Empty => false,
        _ => is_epsilon_language(&to_dfa(ast, k).expect("predicate automata are small")),
    }
}

fn contains_epsilon(ast: &Ast, k: u32) -> bool {
    // Nullability needs no automaton unless ∅ occurs: structural
    // nullability treats ∅ as non-nullable, which is exact.
    let _ = k;
    ast.nullable()
}

/// Applies the three collapsibility conditions in order.
pub fn is_collapsible(ast: &Ast, k: u32) -> Collapsibility {
    if ast.contains_empty_set() && ast.size(SizeMeasure::Ordinary) > 1 {
        return Collapsibility::EmptySetInside;
    }
    if has_epsilon_factor(ast, k) {
        return Collapsibility::EpsilonFactor;
    }
    if has_epsilon_summand(ast, k) {
        return Collapsibility::EpsilonSummand;
    }
    Collapsibility::Uncollapsible
}

fn has_epsilon_factor(ast: &Ast, k: u32) -> bool {
    match ast {
        Ast::Empty | Ast::Epsilon | Ast::Letter(_) => false,
        Ast::Concat(cs) => {
            cs.iter().any(|c| denotes_epsilon_only(c, k)) || cs.iter().any(|c| has_epsilon_factor(c, k))
        }
        Ast::Union(cs) => cs.iter().any(|c| has_epsilon_factor(c, k)),
        Ast::Star(c) | Ast::Optional(c) => has_epsilon_factor(c, k),
    }
}

fn has_epsilon_summand(ast: &Ast, k: u32) -> bool {
    match ast {
        Ast::Empty | Ast::Epsilon | Ast::Letter(_) => false,
        Ast::Union(cs) => {
            let here = cs.iter().enumerate().any(|(i, f)| {
                denotes_epsilon_only(f, k)
                    && cs
                        .iter()
                        .enumerate()
                        .any(|(j, g)| i != j && contains_epsilon(g, k))
            });
            here || cs.iter().any(|c| has_epsilon_summand(c, k))
        }
        Ast::Concat(cs) => cs.iter().any(|c| has_epsilon_summand(c, k)),
        Ast::Star(c) | Ast::Optional(c) => has_epsilon_summand(c, k),
    }
}

fn has_double_star(ast: &Ast) -> bool {
    match ast {
        Ast::Empty | Ast::Epsilon | Ast::Letter(_) => false,
        Ast::Union(cs) | Ast::Concat(cs) => cs.iter().any(has_double_star),
        Ast::Star(c) => matches!(c.as_ref(), Ast::Star(_)) || has_double_star(c),
        Ast::Optional(c) => has_double_star(c),
    }
}

/// Uncollapsible, no double star. Superfluous parentheses cannot occur in
/// the flattened tree form, so the check is purely structural beyond the
/// collapsibility test.
pub fn is_irreducible(ast: &Ast, k: u32) -> bool {
    !is_collapsible(ast, k).is_collapsible() && !has_double_star(ast)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regex::parse_regex;

    fn coll(text: &str, k: u32) -> Collapsibility {
        is_collapsible(&parse_regex(text, k).unwrap().ast, k)
    }

    #[test]
    fn lone_empty_set_is_uncollapsible() {
        assert_eq!(coll("#", 1), Collapsibility::Uncollapsible);
        assert_eq!(coll("#+0", 1), Collapsibility::EmptySetInside);
        assert_eq!(coll("#*", 1).condition(), Some(1));
    }

    #[test]
    fn epsilon_factor_collapses() {
        assert_eq!(coll("@0", 1), Collapsibility::EpsilonFactor);
        assert_eq!(coll("0@", 1), Collapsibility::EpsilonFactor);
        // The {ε}-ness of a factor is semantic: (@+@) denotes {ε} too,
        // but ∅-containment is checked first when ∅ occurs.
        assert_eq!(coll("(@+@)0", 1), Collapsibility::EpsilonFactor);
        assert_eq!(coll("(#*)0", 1), Collapsibility::EmptySetInside);
    }

    #[test]
    fn epsilon_summand_collapses() {
        assert_eq!(coll("@+0*", 1), Collapsibility::EpsilonSummand);
        assert_eq!(coll("0*+@", 1), Collapsibility::EpsilonSummand);
        // ε + letter does not collapse: the other summand lacks ε.
        assert_eq!(coll("@+0", 1), Collapsibility::Uncollapsible);
    }

    #[test]
    fn irreducibility() {
        let k = 1;
        assert!(!is_irreducible(&parse_regex("0**", k).unwrap().ast, k));
        assert!(is_irreducible(&parse_regex("0*", k).unwrap().ast, k));
        assert!(!is_irreducible(&parse_regex("@0", k).unwrap().ast, k));
        assert!(is_irreducible(&parse_regex("0+@", k).unwrap().ast, k));
        assert!(is_irreducible(&parse_regex("(0+10)*(1+@)", 2).unwrap().ast, 2));
    }
}
