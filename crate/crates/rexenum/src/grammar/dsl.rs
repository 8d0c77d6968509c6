//! Line-oriented grammar DSL.
//!
//! ```text
//! # comment
//! %start S;
//! S -> M | U ;
//! M -> '0' M '1' M | ;
//! U -> '0' S | '0' M '1' U ;
//! '(' : ord=1, rpn=0, alph=0 ;
//! ```
//!
//! Quoted tokens are terminals (default weight 1 under every measure,
//! overridable per terminal); bare names are nonterminals and must have a
//! rule. A statement ends at `;`; alternatives are separated by `|`; an
//! empty alternative derives the empty string. Terminals whose text
//! matches a regex token (`+ * ( ) @ # •`, a digit, or a letter) get the
//! corresponding expression role so that grammar-generated expressions
//! can be interpreted; other terminals are opaque.

use super::{CfgBuilder, GrammarError, TokenRole, WeightedCfg};
use std::collections::{HashMap, HashSet};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Name(String),
    Quoted(String),
    Arrow,
    Pipe,
    Semi,
    Colon,
    Comma,
    Eq,
    Directive(String),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, GrammarError> {
    let mut toks = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = match line.find('#') {
            Some(i) => &line[..i],
            None => line,
        };
        let mut chars = line.chars().peekable();
        let lineno = lineno + 1;
        while let Some(&c) = chars.peek() {
            match c {
                c if c.is_whitespace() => {
                    chars.next();
                }
                '\'' => {
                    chars.next();
                    let mut s = String::new();
                    loop {
                        match chars.next() {
                            Some('\'') => break,
                            Some(ch) => s.push(ch),
                            None => {
                                return Err(GrammarError::Dsl {
                                    line: lineno,
                                    msg: "unterminated quoted terminal".into(),
                                })
                            }
                        }
                    }
                    toks.push((lineno, Tok::Quoted(s)));
                }
                '-' => {
                    chars.next();
                    if chars.peek() == Some(&'>') {
                        chars.next();
                        toks.push((lineno, Tok::Arrow));
                    } else {
                        return Err(GrammarError::Dsl {
                            line: lineno,
                            msg: "expected `->`".into(),
                        });
                    }
                }
                '|' => {
                    chars.next();
                    toks.push((lineno, Tok::Pipe));
                }
                ';' => {
                    chars.next();
                    toks.push((lineno, Tok::Semi));
                }
                ':' => {
                    chars.next();
                    toks.push((lineno, Tok::Colon));
                }
                ',' => {
                    chars.next();
                    toks.push((lineno, Tok::Comma));
                }
                '=' => {
                    chars.next();
                    toks.push((lineno, Tok::Eq));
                }
                '%' => {
                    chars.next();
                    let mut s = String::new();
                    while let Some(&ch) = chars.peek() {
                        if ch.is_alphanumeric() || ch == '_' {
                            s.push(ch);
                            chars.next();
                        } else {
                            break;
                        }
                    }
                    toks.push((lineno, Tok::Directive(s)));
                }
                _ => {
                    let mut s = String::new();
                    while let Some(&ch) = chars.peek() {
                        if ch.is_whitespace() || "'|;:,=%".contains(ch) || ch == '-' {
                            break;
                        }
                        s.push(ch);
                        chars.next();
                    }
                    if s.is_empty() {
                        return Err(GrammarError::Dsl {
                            line: lineno,
                            msg: format!("unexpected character `{c}`"),
                        });
                    }
                    toks.push((lineno, Tok::Name(s)));
                }
            }
        }
    }
    Ok(toks)
}

fn guess_role(text: &str) -> TokenRole {
    let mut chars = text.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => match c {
            '+' => TokenRole::Plus,
            '*' => TokenRole::Star,
            '(' => TokenRole::LParen,
            ')' => TokenRole::RParen,
            '@' | 'ε' => TokenRole::Epsilon,
            '#' | '∅' => TokenRole::EmptySet,
            '•' => TokenRole::ConcatOp,
            '0'..='9' => TokenRole::Letter(c as u32 - '0' as u32),
            'a'..='z' => TokenRole::Letter(c as u32 - 'a' as u32),
            _ => TokenRole::Opaque,
        },
        _ => TokenRole::Opaque,
    }
}

/// Parses the DSL into a grammar. The alphabet size is the number of
/// distinct letter-role terminals (at least 1).
pub fn parse_grammar(text: &str) -> Result<WeightedCfg, GrammarError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(GrammarError::Dsl { line: 1, msg: "empty grammar".into() });
    }

    // First pass: collect rule left-hand sides and alphabet size.
    let mut lhs_names: HashSet<String> = HashSet::new();
    let mut max_letter: Option<u32> = None;
    {
        let mut i = 0;
        while i < toks.len() {
            if let (Tok::Name(n), Some((_, Tok::Arrow))) = (&toks[i].1, toks.get(i + 1)) {
                lhs_names.insert(n.clone());
                i += 2;
            } else {
                if let Tok::Quoted(q) = &toks[i].1 {
                    if let TokenRole::Letter(idx) = guess_role(q) {
                        max_letter = Some(max_letter.unwrap_or(0).max(idx));
                    }
                }
                i += 1;
            }
        }
    }
    let k = max_letter.map(|m| m + 1).unwrap_or(1);
    let mut b = CfgBuilder::new("dsl", k);
    let mut ruled: HashSet<String> = HashSet::new();
    let mut overrides: HashMap<String, [u32; 3]> = HashMap::new();

    let mut i = 0;
    let line_of = |i: usize| toks.get(i).map(|t| t.0).unwrap_or_else(|| toks.last().unwrap().0);
    while i < toks.len() {
        match &toks[i].1 {
            Tok::Directive(d) if d == "start" => {
                let name = match toks.get(i + 1) {
                    Some((_, Tok::Name(n))) => n.clone(),
                    _ => {
                        return Err(GrammarError::Dsl {
                            line: line_of(i),
                            msg: "%start needs a nonterminal name".into(),
                        })
                    }
                };
                if !lhs_names.contains(&name) {
                    return Err(GrammarError::Dsl {
                        line: line_of(i),
                        msg: format!("start symbol `{name}` has no rule"),
                    });
                }
                if !matches!(toks.get(i + 2), Some((_, Tok::Semi))) {
                    return Err(GrammarError::Dsl {
                        line: line_of(i),
                        msg: "missing `;` after %start".into(),
                    });
                }
                b.nt(&name);
                b.start(&name);
                i += 3;
            }
            Tok::Directive(d) => {
                return Err(GrammarError::Dsl {
                    line: line_of(i),
                    msg: format!("unknown directive %{d}"),
                })
            }
            Tok::Quoted(q) => {
                // Weight override: 'tok' : ord=.., rpn=.., alph=.. ;
                let text = q.clone();
                if !matches!(toks.get(i + 1), Some((_, Tok::Colon))) {
                    return Err(GrammarError::Dsl {
                        line: line_of(i),
                        msg: "expected `:` for a weight override".into(),
                    });
                }
                i += 2;
                let mut w = overrides.get(&text).copied().unwrap_or([1, 1, 1]);
                loop {
                    let key = match &toks.get(i).map(|t| &t.1) {
                        Some(Tok::Name(n)) => n.clone(),
                        _ => {
                            return Err(GrammarError::Dsl {
                                line: line_of(i),
                                msg: "expected ord/rpn/alph".into(),
                            })
                        }
                    };
                    if !matches!(toks.get(i + 1), Some((_, Tok::Eq))) {
                        return Err(GrammarError::Dsl {
                            line: line_of(i),
                            msg: "expected `=`".into(),
                        });
                    }
                    let val = match toks.get(i + 2) {
                        Some((_, Tok::Name(v))) => v.parse::<u32>().map_err(|_| {
                            GrammarError::Dsl {
                                line: line_of(i),
                                msg: format!("bad weight `{v}`"),
                            }
                        })?,
                        _ => {
                            return Err(GrammarError::Dsl {
                                line: line_of(i),
                                msg: "expected a weight value".into(),
                            })
                        }
                    };
                    let slot = match key.as_str() {
                        "ord" | "ordinary" => 0,
                        "rpn" => 1,
                        "alph" | "alphabetic" => 2,
                        other => {
                            return Err(GrammarError::Dsl {
                                line: line_of(i),
                                msg: format!("unknown measure `{other}` in weight override"),
                            })
                        }
                    };
                    w[slot] = val;
                    i += 3;
                    match toks.get(i) {
                        Some((_, Tok::Comma)) => i += 1,
                        Some((_, Tok::Semi)) => {
                            i += 1;
                            break;
                        }
                        _ => {
                            return Err(GrammarError::Dsl {
                                line: line_of(i),
                                msg: "expected `,` or `;`".into(),
                            })
                        }
                    }
                }
                overrides.insert(text, w);
            }
            Tok::Name(lhs) => {
                let lhs = lhs.clone();
                if !matches!(toks.get(i + 1), Some((_, Tok::Arrow))) {
                    return Err(GrammarError::Dsl {
                        line: line_of(i),
                        msg: format!("expected `->` after `{lhs}`"),
                    });
                }
                if !ruled.insert(lhs.clone()) {
                    return Err(GrammarError::Dsl {
                        line: line_of(i),
                        msg: format!(
                            "duplicate rule for `{lhs}`; write alternatives with `|`"
                        ),
                    });
                }
                i += 2;
                let lhs_i = b.nt(&lhs);
                let mut alt: Vec<super::Sym> = Vec::new();
                loop {
                    match toks.get(i).map(|t| t.1.clone()) {
                        Some(Tok::Quoted(q)) => {
                            let role = guess_role(&q);
                            let t = b.terminal(&q, role, [1, 1, 1]);
                            alt.push(super::Sym::T(t));
                            i += 1;
                        }
                        Some(Tok::Name(n)) => {
                            if !lhs_names.contains(&n) {
                                return Err(GrammarError::Dsl {
                                    line: line_of(i),
                                    msg: format!("undeclared symbol `{n}` (quote terminals)"),
                                });
                            }
                            let nt = b.nt(&n);
                            alt.push(super::Sym::Nt(nt));
                            i += 1;
                        }
                        Some(Tok::Pipe) => {
                            b.raw_production(lhs_i, std::mem::take(&mut alt));
                            i += 1;
                        }
                        Some(Tok::Semi) => {
                            b.raw_production(lhs_i, std::mem::take(&mut alt));
                            i += 1;
                            break;
                        }
                        _ => {
                            return Err(GrammarError::Dsl {
                                line: line_of(i),
                                msg: "rule not terminated with `;`".into(),
                            })
                        }
                    }
                }
            }
            other => {
                return Err(GrammarError::Dsl {
                    line: line_of(i),
                    msg: format!("unexpected token {other:?}"),
                })
            }
        }
    }

    for (text, w) in overrides {
        if !b.set_weights(&text, w) {
            return Err(GrammarError::Dsl {
                line: 1,
                msg: format!("weight override for unused terminal '{text}'"),
            });
        }
    }
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regex::SizeMeasure;

    const ITE: &str = "S -> M | U;\nM -> '0' M '1' M | ;\nU -> '0' S | '0' M '1' U;";

    #[test]
    fn if_then_else_grammar() {
        let cfg = parse_grammar(ITE).unwrap();
        assert_eq!(cfg.nonterminals().len(), 3);
        assert_eq!(cfg.start(), 0);
        let sys = cfg.commutative_image(SizeMeasure::Ordinary);
        let m = sys.var_index("M").unwrap();
        let eq = &sys.equations[m];
        assert_eq!(eq.0.len(), 2);
        assert!(eq.0.iter().any(|mo| mo.xpow == 0 && mo.vars.is_empty()));
        assert!(eq.0.iter().any(|mo| mo.xpow == 2 && mo.vars == vec![(m, 2)]));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_grammar("").is_err());
        assert!(parse_grammar("S -> T;").is_err()); // undeclared T
        assert!(parse_grammar("S -> 'a'; S -> 'b';").is_err()); // duplicate
        assert!(matches!(
            parse_grammar("S -> 'a'"),
            Err(GrammarError::Dsl { .. })
        )); // missing ;
    }

    #[test]
    fn start_directive_and_overrides() {
        let g = "%start B;\nA -> 'x';\nB -> '(' A ')';\n'(': ord=1, rpn=0, alph=0;\n')': ord=1, rpn=0, alph=0;";
        let cfg = parse_grammar(g).unwrap();
        assert_eq!(cfg.nt_name(cfg.start()), "B");
        let sys = cfg.commutative_image(SizeMeasure::ReversePolish);
        let b = sys.var_index("B").unwrap();
        let a = sys.var_index("A").unwrap();
        // B = A under rpn (parens weigh 0 there after the override)
        assert_eq!(sys.equations[b].0.len(), 1);
        assert_eq!(sys.equations[b].0[0].xpow, 0);
        assert_eq!(sys.equations[b].0[0].vars, vec![(a, 1)]);
    }
}
