//! Starred tries: a trie representation for certain regular languages in
//! which a node may carry a Kleene-starred letter, and its reconstruction
//! from the language alone.
//!
//! A valid starred trie satisfies three structural conditions:
//!
//! 1. every starred node's parent is a non-starred letter node (never the
//!    root);
//! 2. a starred node has no sibling, and its parent, when labeled with the
//!    same letter, has no sibling either;
//! 3. a starred node has no child labeled with the same letter.
//!
//! Under these conditions distinct tries denote distinct languages, and
//! [`star_trie`] recovers the trie from a DFA of the language.

use super::{canonical_key, dfa_star, left_quotient, letter_dfa, AutomataError, Dfa};
use crate::regex::Ast;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrieLabel {
    Letter(u32),
    StarLetter(u32),
    /// An ε leaf records that the word ending at the parent is in the
    /// language even though the parent has further children.
    Eps,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrieNode {
    pub label: TrieLabel,
    pub children: Vec<TrieNode>,
}

/// Rooted ordered tree; the root is unlabeled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarTrie {
    pub k: u32,
    pub roots: Vec<TrieNode>,
}

impl StarTrie {
    /// Checks the structural conditions and child ordering (letters in
    /// index order, a starred child alone, an ε child last).
    pub fn validate(&self) -> Result<(), String> {
        check_letter_order(&self.roots)?;
        let root_multi = self.roots.len() > 1;
        for r in &self.roots {
            match r.label {
                TrieLabel::Letter(_) => {}
                _ => return Err("root children must be non-starred letters".into()),
            }
            validate_node(r, root_multi, self.k)?;
        }
        Ok(())
    }

    /// Indented text rendering, one node per line.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for r in &self.roots {
            dump_node(r, 0, &mut out);
        }
        out
    }
}

fn dump_node(n: &TrieNode, depth: usize, out: &mut String) {
    for _ in 0..depth {
        out.push_str("  ");
    }
    match n.label {
        TrieLabel::Letter(i) => out.push_str(&format!("{i}\n")),
        TrieLabel::StarLetter(i) => out.push_str(&format!("{i}*\n")),
        TrieLabel::Eps => out.push_str("ε\n"),
    }
    for c in &n.children {
        dump_node(c, depth + 1, out);
    }
}

fn check_letter_order(children: &[TrieNode]) -> Result<(), String> {
    let mut last: Option<u32> = None;
    for (idx, c) in children.iter().enumerate() {
        match c.label {
            TrieLabel::Letter(i) => {
                if let Some(p) = last {
                    if i <= p {
                        return Err("letter children out of order".into());
                    }
                }
                last = Some(i);
            }
            TrieLabel::Eps => {
                if idx + 1 != children.len() {
                    return Err("ε child must come last".into());
                }
            }
            TrieLabel::StarLetter(_) => {
                if children.len() != 1 {
                    return Err("a starred child may not have siblings".into());
                }
            }
        }
    }
    Ok(())
}

fn validate_node(n: &TrieNode, has_sibling: bool, k: u32) -> Result<(), String> {
    let own_letter = match n.label {
        TrieLabel::Letter(i) | TrieLabel::StarLetter(i) => i,
        TrieLabel::Eps => unreachable!("ε children are checked before recursing"),
    };
    if own_letter >= k {
        return Err(format!("letter {own_letter} out of range"));
    }
    check_letter_order(&n.children)?;
    let child_has_sibling = n.children.len() > 1;
    for c in &n.children {
        match c.label {
            TrieLabel::Eps => {
                if !c.children.is_empty() {
                    return Err("ε nodes must be leaves".into());
                }
            }
            TrieLabel::StarLetter(b) => {
                // Condition 1: the parent of a star is a plain letter node.
                let a = match n.label {
                    TrieLabel::Letter(a) => a,
                    _ => return Err("a starred node's parent must be unstarred".into()),
                };
                // Condition 2, second half.
                if a == b && has_sibling {
                    return Err(
                        "a starred node may not repeat a parent that has siblings".into()
                    );
                }
                validate_node(c, child_has_sibling, k)?;
            }
            TrieLabel::Letter(x) => {
                // Condition 3.
                if matches!(n.label, TrieLabel::StarLetter(b) if b == x) {
                    return Err(
                        "a starred node may not have an identically-labeled child".into()
                    );
                }
                validate_node(c, child_has_sibling, k)?;
            }
        }
    }
    Ok(())
}

/// Reconstructs the starred trie of the language of `d`.
///
/// The language must be nonempty and must not contain the empty word.
/// For languages produced by valid starred tries the reconstruction is
/// exact; for other languages the procedure still terminates but the
/// result is unspecified.
pub fn star_trie(d: &Dfa) -> Result<StarTrie, AutomataError> {
    let d = d.minimize();
    if d.accepts_epsilon() || d.is_empty_language() {
        return Err(AutomataError::StarTrieDomain);
    }
    let k = d.k();
    let mut roots = Vec::new();
    for a in 0..k {
        let qa = left_quotient(&d, a);
        if !qa.is_empty_language() {
            roots.push(help(&qa, a));
        }
    }
    Ok(StarTrie { k, roots })
}

/// Decides whether, for all n ≥ 0, the language quotiented n times by `b`
/// still meets `ε + (Σ∖{b})Σ*`. The start-state orbit under `b` is finite,
/// so the universal condition is checked on the orbit until it cycles.
fn starred_condition(d: &Dfa, b: u32) -> bool {
    let co = d.coreachable();
    let mut q = d.start();
    let mut seen = vec![false; d.states()];
    loop {
        if seen[q as usize] {
            return true;
        }
        seen[q as usize] = true;
        let meets = d.is_final(q)
            || (0..d.k()).any(|c| c != b && co[d.step(q, c) as usize]);
        if !meets {
            return false;
        }
        q = d.step(q, b);
    }
}

fn help(lang: &Dfa, a: u32) -> TrieNode {
    let k = lang.k();
    let co = lang.coreachable();
    let quotient_nonempty =
        |b: u32| -> bool { co[lang.step(lang.start(), b) as usize] };

    for b in 0..k {
        if quotient_nonempty(b) && starred_condition(lang, b) {
            // The starred child is unique and has no siblings.
            let mut star_children = Vec::new();
            let bstar = dfa_star(&letter_dfa(k, b), super::DEFAULT_STATE_CAP)
                .expect("letter star is tiny");
            if canonical_key(lang) != canonical_key(&bstar) {
                for c in 0..k {
                    if c != b && quotient_nonempty(c) {
                        star_children.push(help(&left_quotient(lang, c), c));
                    }
                }
                if lang.accepts(&[b]) {
                    star_children.push(TrieNode { label: TrieLabel::Eps, children: Vec::new() });
                }
            }
            return TrieNode {
                label: TrieLabel::Letter(a),
                children: vec![TrieNode {
                    label: TrieLabel::StarLetter(b),
                    children: star_children,
                }],
            };
        }
    }

    let mut children = Vec::new();
    for b in 0..k {
        if quotient_nonempty(b) {
            children.push(help(&left_quotient(lang, b), b));
        }
    }
    if lang.accepts_epsilon() && !children.is_empty() {
        children.push(TrieNode { label: TrieLabel::Eps, children: Vec::new() });
    }
    TrieNode { label: TrieLabel::Letter(a), children }
}

/// The regular expression whose shape mirrors the trie: single children
/// concatenate, multiple children become a union, and an ε child becomes
/// a leading `ε +` summand.
pub fn trie_to_regex(trie: &StarTrie) -> Ast {
    let branches: Vec<Ast> = trie.roots.iter().map(branch).collect();
    Ast::union(branches)
}

fn branch(n: &TrieNode) -> Ast {
    let head = match n.label {
        TrieLabel::Letter(i) => Ast::Letter(i),
        TrieLabel::StarLetter(i) => Ast::star(Ast::Letter(i)),
        TrieLabel::Eps => return Ast::Epsilon,
    };
    if n.children.is_empty() {
        head
    } else {
        Ast::concat(vec![head, group(&n.children)])
    }
}

fn group(children: &[TrieNode]) -> Ast {
    let has_eps = matches!(children.last().map(|c| c.label), Some(TrieLabel::Eps));
    let parts: Vec<Ast> = children
        .iter()
        .filter(|c| c.label != TrieLabel::Eps)
        .map(branch)
        .collect();
    if has_eps {
        let mut v = vec![Ast::Epsilon];
        v.extend(parts);
        Ast::union(v)
    } else {
        Ast::union(parts)
    }
}

/// Structural inverse of [`trie_to_regex`]: reads the trie off an
/// expression of the shape the trie grammars generate. Returns `None`
/// for expressions outside that shape.
pub fn expr_to_trie(ast: &Ast, k: u32) -> Option<StarTrie> {
    let branches: Vec<&Ast> = match ast {
        Ast::Union(cs) => cs.iter().collect(),
        other => vec![other],
    };
    let mut roots = Vec::new();
    for b in branches {
        roots.push(branch_to_node(b)?);
    }
    Some(StarTrie { k, roots })
}

fn branch_to_node(ast: &Ast) -> Option<TrieNode> {
    match ast {
        Ast::Letter(a) => Some(TrieNode { label: TrieLabel::Letter(*a), children: Vec::new() }),
        Ast::Concat(cs) => match cs.first()? {
            Ast::Letter(a) => chain_to_node(TrieLabel::Letter(*a), &cs[1..]),
            _ => None,
        },
        _ => None,
    }
}

fn chain_to_node(label: TrieLabel, rest: &[Ast]) -> Option<TrieNode> {
    if rest.is_empty() {
        return Some(TrieNode { label, children: Vec::new() });
    }
    match &rest[0] {
        Ast::Letter(c) => {
            let child = chain_to_node(TrieLabel::Letter(*c), &rest[1..])?;
            Some(TrieNode { label, children: vec![child] })
        }
        Ast::Star(inner) => {
            let b = match inner.as_ref() {
                Ast::Letter(b) => *b,
                _ => return None,
            };
            let star_children = match rest.len() {
                1 => Vec::new(),
                2 => group_children(&rest[1])?,
                _ => return None,
            };
            Some(TrieNode {
                label,
                children: vec![TrieNode { label: TrieLabel::StarLetter(b), children: star_children }],
            })
        }
        group if rest.len() == 1 => {
            Some(TrieNode { label, children: group_children(group)? })
        }
        _ => None,
    }
}

fn group_children(g: &Ast) -> Option<Vec<TrieNode>> {
    match g {
        Ast::Union(parts) => {
            let mut out = Vec::new();
            let mut with_eps = false;
            for (i, p) in parts.iter().enumerate() {
                if matches!(p, Ast::Epsilon) {
                    if i != 0 {
                        return None;
                    }
                    with_eps = true;
                } else {
                    out.push(branch_to_node(p)?);
                }
            }
            if with_eps {
                out.push(TrieNode { label: TrieLabel::Eps, children: Vec::new() });
            }
            Some(out)
        }
        other => Some(vec![branch_to_node(other)?]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::to_dfa;
    use crate::regex::{parse_regex, LetterStyle};

    fn trie_of(text: &str, k: u32) -> StarTrie {
        let ast = parse_regex(text, k).unwrap().ast;
        star_trie(&to_dfa(&ast, k).unwrap()).unwrap()
    }

    #[test]
    fn plain_trie_reconstruction() {
        // A star-free language reconstructs to a plain trie; reading the
        // trie back yields the factored expression.
        let t = trie_of("01(2+34+5)+67(@+8)", 9);
        t.validate().unwrap();
        let e = trie_to_regex(&t);
        assert_eq!(e.render(LetterStyle::Digits), "01(2+34+5)+67(@+8)");
    }

    #[test]
    fn starred_trie_reconstruction() {
        let t = trie_of("01*(2+34*+5)+67*(@+8)", 9);
        t.validate().unwrap();
        let e = trie_to_regex(&t);
        assert_eq!(e.render(LetterStyle::Digits), "01*(2+34*+5)+67*(@+8)");
    }

    #[test]
    fn zero_zero_star_not_star_zero() {
        // The canonical representative of { 0^n : n ≥ 1 } is 00*, so the
        // trie is a 0-node with a 0*-child, not the other way round.
        let t = trie_of("0*0", 1);
        t.validate().unwrap();
        assert_eq!(t.roots.len(), 1);
        assert_eq!(t.roots[0].label, TrieLabel::Letter(0));
        assert_eq!(t.roots[0].children.len(), 1);
        assert_eq!(t.roots[0].children[0].label, TrieLabel::StarLetter(0));
        assert!(t.roots[0].children[0].children.is_empty());
        let e = trie_to_regex(&t);
        assert_eq!(e.render(LetterStyle::Digits), "00*");
    }

    #[test]
    fn rejects_epsilon_and_empty() {
        let eps = to_dfa(&parse_regex("@", 1).unwrap().ast, 1).unwrap();
        assert!(star_trie(&eps).is_err());
        let empty = to_dfa(&parse_regex("#", 1).unwrap().ast, 1).unwrap();
        assert!(star_trie(&empty).is_err());
        let nullable = to_dfa(&parse_regex("0*", 1).unwrap().ast, 1).unwrap();
        assert!(star_trie(&nullable).is_err());
    }

    #[test]
    fn expr_to_trie_inverts_trie_to_regex() {
        for (text, k) in [
            ("01(2+34+5)+67(@+8)", 9),
            ("01*(2+34*+5)+67*(@+8)", 9),
            ("00*", 1),
            ("0", 3),
            ("0(@+1)", 2),
            ("01*2", 3),
        ] {
            let reconstructed = trie_of(text, k);
            let syntactic = expr_to_trie(&parse_regex(text, k).unwrap().ast, k)
                .unwrap_or_else(|| panic!("{text} should be trie-shaped"));
            assert_eq!(reconstructed, syntactic, "trie mismatch for {text}");
        }
    }

    #[test]
    fn starred_condition_prefers_star_over_sibling_order() {
        // 2*(1+3)-shaped language below 0: the starred child wins even
        // though letter 1 has a nonempty quotient and is checked first.
        let t = trie_of("02*(1+3)", 4);
        t.validate().unwrap();
        let e = trie_to_regex(&t);
        assert_eq!(e.render(LetterStyle::Digits), "02*(1+3)");
    }
}
