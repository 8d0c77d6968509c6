//! Weighted context-free grammars and their commutative images.
//!
//! A [`WeightedCfg`] is a context-free grammar whose terminals carry one
//! size weight per measure and a token role describing the expression
//! fragment they stand for. One grammar instance serves all three
//! measures: implicit concatenation is materialized as a pseudo-terminal
//! of weight (0, 1, 0) so that reverse polish length comes out right,
//! and parentheses weigh (1, 0, 0).
//!
//! The commutative image maps every terminal to `x^w` and every
//! production alternative to a product, yielding one polynomial equation
//! per nonterminal ([`PolySystem`]); truncated power-series solutions of
//! that system count the grammar's derivations by weight.

mod builtin;
mod dsl;

pub use builtin::{builtin_grammar, builtin_system, BuiltinFamily};
pub use dsl::parse_grammar;

use crate::regex::SizeMeasure;
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrammarError {
    #[error("grammar `{name}` is not defined for alphabet size {k}")]
    BadAlphabet { name: String, k: u32 },
    #[error("line {line}: {msg}")]
    Dsl { line: usize, msg: String },
}

/// What a terminal token contributes to the expression being generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenRole {
    Letter(u32),
    Epsilon,
    EmptySet,
    Plus,
    Star,
    LParen,
    RParen,
    /// Implicit concatenation between adjacent factors.
    ConcatOp,
    /// A terminal with no expression meaning (user grammars).
    Opaque,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Terminal {
    pub text: String,
    pub role: TokenRole,
    /// Weights under (ordinary, reverse polish, alphabetic).
    pub weights: [u32; 3],
}

impl Terminal {
    pub fn weight(&self, m: SizeMeasure) -> u32 {
        match m {
            SizeMeasure::Ordinary => self.weights[0],
            SizeMeasure::ReversePolish => self.weights[1],
            SizeMeasure::Alphabetic => self.weights[2],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sym {
    Nt(usize),
    T(usize),
}

/// Expression shape of a production's right-hand side. `Slot(i)` refers to
/// the i-th nonterminal occurrence, left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Template {
    Slot(usize),
    Letter(u32),
    Epsilon,
    EmptySet,
    Union(Vec<Template>),
    Concat(Vec<Template>),
    Star(Box<Template>),
}

#[derive(Debug, Clone)]
pub struct Production {
    pub lhs: usize,
    pub rhs: Vec<Sym>,
    /// Expression shape, when the RHS has one.
    pub template: Option<Template>,
}

#[derive(Debug, Clone)]
pub struct WeightedCfg {
    pub name: String,
    pub k: u32,
    nonterminals: Vec<String>,
    start: usize,
    terminals: Vec<Terminal>,
    productions: Vec<Production>,
    prods_of: Vec<Vec<usize>>,
}

impl WeightedCfg {
    pub fn start(&self) -> usize {
        self.start
    }

    pub fn nonterminals(&self) -> &[String] {
        &self.nonterminals
    }

    pub fn nt_name(&self, i: usize) -> &str {
        &self.nonterminals[i]
    }

    pub fn nt_index(&self, name: &str) -> Option<usize> {
        self.nonterminals.iter().position(|n| n == name)
    }

    pub fn terminals(&self) -> &[Terminal] {
        &self.terminals
    }

    pub fn productions(&self) -> &[Production] {
        &self.productions
    }

    pub fn prods_of(&self, nt: usize) -> &[usize] {
        &self.prods_of[nt]
    }

    /// Total terminal weight of a production under a measure.
    pub fn const_weight(&self, p: &Production, m: SizeMeasure) -> u64 {
        p.rhs
            .iter()
            .map(|s| match s {
                Sym::T(t) => self.terminals[*t].weight(m) as u64,
                Sym::Nt(_) => 0,
            })
            .sum()
    }

    /// Nonterminal occurrences of a production's RHS, in order.
    pub fn slots<'a>(&self, p: &'a Production) -> impl Iterator<Item = usize> + 'a {
        p.rhs.iter().filter_map(|s| match s {
            Sym::Nt(n) => Some(*n),
            Sym::T(_) => None,
        })
    }

    /// Minimal derivable weight per nonterminal (None = unproductive).
    pub fn min_weights(&self, m: SizeMeasure) -> Vec<Option<u64>> {
        const INF: u64 = u64::MAX / 4;
        let mut w = vec![INF; self.nonterminals.len()];
        loop {
            let mut changed = false;
            for p in &self.productions {
                let mut total = self.const_weight(p, m);
                for nt in self.slots(p) {
                    total = total.saturating_add(w[nt]);
                }
                if total < w[p.lhs] {
                    w[p.lhs] = total;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        w.into_iter().map(|x| (x < INF).then_some(x)).collect()
    }

    /// Nonterminals reachable from the start symbol.
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.nonterminals.len()];
        let mut stack = vec![self.start];
        seen[self.start] = true;
        while let Some(a) = stack.pop() {
            for &pi in &self.prods_of[a] {
                for nt in self.slots(&self.productions[pi]) {
                    if !seen[nt] {
                        seen[nt] = true;
                        stack.push(nt);
                    }
                }
            }
        }
        seen
    }

    /// Edges `A -> B` such that a B-derivation of some weight n can appear
    /// inside an A-derivation of the same weight n (every other symbol of
    /// the production can weigh zero). Cycles among these edges mean the
    /// grammar has infinitely many derivations of a single weight.
    fn zero_context_edges(&self, m: SizeMeasure) -> Vec<Vec<usize>> {
        let minw = self.min_weights(m);
        let mut edges = vec![Vec::new(); self.nonterminals.len()];
        for p in &self.productions {
            if self.const_weight(p, m) != 0 {
                continue;
            }
            let slots: Vec<usize> = self.slots(p).collect();
            if slots.iter().any(|&nt| minw[nt].is_none()) {
                continue; // an unproductive symbol blocks every derivation
            }
            for (i, &b) in slots.iter().enumerate() {
                let others_zero = slots
                    .iter()
                    .enumerate()
                    .all(|(j, &nt)| j == i || minw[nt] == Some(0));
                if others_zero {
                    edges[p.lhs].push(b);
                }
            }
        }
        edges
    }

    /// Checks that only finitely many derivations exist per weight.
    pub fn validate_size_proper(&self, m: SizeMeasure) -> SizeProperness {
        let reach = self.reachable();
        let minw = self.min_weights(m);
        let edges = self.zero_context_edges(m);
        // Iterative DFS cycle detection restricted to useful nonterminals.
        let n = self.nonterminals.len();
        let mut state = vec![0u8; n]; // 0 unvisited, 1 on stack, 2 done
        let mut parent: Vec<usize> = vec![usize::MAX; n];
        for root in 0..n {
            if !reach[root] || minw[root].is_none() || state[root] != 0 {
                continue;
            }
            let mut stack = vec![(root, 0usize)];
            state[root] = 1;
            while let Some(&mut (v, ref mut ei)) = stack.last_mut() {
                if *ei < edges[v].len() {
                    let to = edges[v][*ei];
                    *ei += 1;
                    if !reach[to] || minw[to].is_none() {
                        continue;
                    }
                    match state[to] {
                        0 => {
                            state[to] = 1;
                            parent[to] = v;
                            stack.push((to, 0));
                        }
                        1 => {
                            let mut cycle = vec![self.nonterminals[to].clone()];
                            let mut cur = v;
                            while cur != to {
                                cycle.push(self.nonterminals[cur].clone());
                                cur = parent[cur];
                            }
                            cycle.reverse();
                            return SizeProperness::Improper { cycle };
                        }
                        _ => {}
                    }
                } else {
                    state[v] = 2;
                    stack.pop();
                }
            }
        }
        SizeProperness::Proper
    }

    /// Order in which nonterminals must be filled within one weight level:
    /// if `A -> B` is a zero-context edge, B precedes A. Requires a proper
    /// grammar.
    pub fn same_weight_order(&self, m: SizeMeasure) -> Vec<usize> {
        topo_order(&self.zero_context_edges(m))
    }

    /// The commutative image: one equation `N = p_N(x; N_1..N_m)` per
    /// nonterminal, with every terminal replaced by `x^weight`.
    pub fn commutative_image(&self, m: SizeMeasure) -> PolySystem {
        let mut equations: Vec<Polynomial> = vec![Polynomial::zero(); self.nonterminals.len()];
        for p in &self.productions {
            let xpow = self.const_weight(p, m);
            let mut vars: Vec<(usize, u32)> = Vec::new();
            for nt in self.slots(p) {
                match vars.iter_mut().find(|(v, _)| *v == nt) {
                    Some((_, e)) => *e += 1,
                    None => vars.push((nt, 1)),
                }
            }
            vars.sort_unstable();
            equations[p.lhs].0.push(Monomial { coeff: BigInt::from(1), xpow, vars });
        }
        for eq in &mut equations {
            eq.normalize();
        }
        PolySystem {
            vars: self.nonterminals.clone(),
            start: self.start,
            equations,
        }
    }
}

fn topo_order(edges: &[Vec<usize>]) -> Vec<usize> {
    let n = edges.len();
    let mut order = Vec::with_capacity(n);
    let mut state = vec![0u8; n];
    // Iterative post-order DFS: dependencies come before dependents.
    for root in 0..n {
        if state[root] != 0 {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        state[root] = 1;
        while let Some(&mut (v, ref mut ei)) = stack.last_mut() {
            if *ei < edges[v].len() {
                let to = edges[v][*ei];
                *ei += 1;
                if state[to] == 0 {
                    state[to] = 1;
                    stack.push((to, 0));
                }
            } else {
                state[v] = 2;
                order.push(v);
                stack.pop();
            }
        }
    }
    order
}

/// Verdict of [`WeightedCfg::validate_size_proper`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SizeProperness {
    Proper,
    /// A derivation cycle of weight zero through the named nonterminals.
    Improper { cycle: Vec<String> },
}

impl SizeProperness {
    pub fn is_proper(&self) -> bool {
        matches!(self, SizeProperness::Proper)
    }
}

// ---------------------------------------------------------------------------
// Polynomial systems
// ---------------------------------------------------------------------------

/// Monomial `coeff * x^xpow * Π vars_i^e_i` (vars sorted by index).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: BigInt,
    pub xpow: u64,
    pub vars: Vec<(usize, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial(pub Vec<Monomial>);

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial(Vec::new())
    }

    /// Merges equal monomials and drops zero coefficients.
    pub fn normalize(&mut self) {
        self.0.sort_by(|a, b| (a.xpow, &a.vars).cmp(&(b.xpow, &b.vars)));
        let mut out: Vec<Monomial> = Vec::with_capacity(self.0.len());
        for mono in self.0.drain(..) {
            match out.last_mut() {
                Some(last) if last.xpow == mono.xpow && last.vars == mono.vars => {
                    last.coeff += mono.coeff;
                }
                _ => out.push(mono),
            }
        }
        out.retain(|m| !m.coeff.is_zero());
        self.0 = out;
    }
}

/// One polynomial equation per nonterminal: `vars[i] = equations[i]`.
#[derive(Debug, Clone)]
pub struct PolySystem {
    pub vars: Vec<String>,
    pub start: usize,
    pub equations: Vec<Polynomial>,
}

impl PolySystem {
    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Order for same-degree coefficient computations: if computing
    /// `[x^n]` of variable `i` needs `[x^n]` of variable `j`, then `j`
    /// precedes `i`. Sound for systems that came from proper grammars.
    pub fn same_degree_order(&self) -> Vec<usize> {
        let n = self.vars.len();
        // Which variables admit a nonzero constant term.
        let mut has_const = vec![false; n];
        loop {
            let mut changed = false;
            for (i, eq) in self.equations.iter().enumerate() {
                if has_const[i] {
                    continue;
                }
                let c = eq
                    .0
                    .iter()
                    .any(|mo| mo.xpow == 0 && mo.vars.iter().all(|&(v, _)| has_const[v]));
                if c {
                    has_const[i] = true;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let mut edges = vec![Vec::new(); n];
        for (i, eq) in self.equations.iter().enumerate() {
            for mo in &eq.0 {
                if mo.xpow != 0 {
                    continue;
                }
                for (pos, &(v, _)) in mo.vars.iter().enumerate() {
                    let others_const = mo.vars.iter().enumerate().all(|(q, &(w, e))| {
                        if q == pos {
                            e == 1 || has_const[w]
                        } else {
                            has_const[w]
                        }
                    });
                    if others_const {
                        edges[i].push(v);
                    }
                }
            }
        }
        topo_order(&edges)
    }
}

// ---------------------------------------------------------------------------
// Builder (used by the builtin families and the DSL)
// ---------------------------------------------------------------------------

pub(crate) struct CfgBuilder {
    name: String,
    k: u32,
    nonterminals: Vec<String>,
    nt_map: HashMap<String, usize>,
    terminals: Vec<Terminal>,
    t_map: HashMap<String, usize>,
    productions: Vec<Production>,
    start: Option<String>,
}

impl CfgBuilder {
    pub fn new(name: &str, k: u32) -> CfgBuilder {
        CfgBuilder {
            name: name.to_string(),
            k,
            nonterminals: Vec::new(),
            nt_map: HashMap::new(),
            terminals: Vec::new(),
            t_map: HashMap::new(),
            productions: Vec::new(),
            start: None,
        }
    }

    pub fn start(&mut self, name: &str) {
        self.start = Some(name.to_string());
    }

    pub fn nt(&mut self, name: &str) -> usize {
        if let Some(&i) = self.nt_map.get(name) {
            return i;
        }
        let i = self.nonterminals.len();
        self.nonterminals.push(name.to_string());
        self.nt_map.insert(name.to_string(), i);
        i
    }

    pub fn terminal(&mut self, text: &str, role: TokenRole, weights: [u32; 3]) -> usize {
        if let Some(&i) = self.t_map.get(text) {
            return i;
        }
        let i = self.terminals.len();
        self.terminals.push(Terminal { text: text.to_string(), role, weights });
        self.t_map.insert(text.to_string(), i);
        i
    }

    pub fn set_weights(&mut self, text: &str, weights: [u32; 3]) -> bool {
        match self.t_map.get(text) {
            Some(&i) => {
                self.terminals[i].weights = weights;
                true
            }
            None => false,
        }
    }

    /// Is this token one of the standard regex terminals?
    fn regex_terminal(&mut self, tok: &str) -> Option<usize> {
        let (role, weights) = match tok {
            "+" => (TokenRole::Plus, [1, 1, 0]),
            "*" => (TokenRole::Star, [1, 1, 0]),
            "(" => (TokenRole::LParen, [1, 0, 0]),
            ")" => (TokenRole::RParen, [1, 0, 0]),
            "@" => (TokenRole::Epsilon, [1, 1, 0]),
            "#" => (TokenRole::EmptySet, [1, 1, 0]),
            "•" => (TokenRole::ConcatOp, [0, 1, 0]),
            _ => {
                let idx = tok.strip_prefix('a')?.parse::<u32>().ok()?;
                assert!(idx < self.k, "letter a{idx} out of range for k={}", self.k);
                (TokenRole::Letter(idx), [1, 1, 1])
            }
        };
        Some(self.terminal(tok, role, weights))
    }

    /// Adds one production. Tokens are whitespace-separated; the regex
    /// tokens `+ * ( ) @ # •` and letters `a0 a1 ...` become terminals,
    /// everything else a nonterminal.
    pub fn rule(&mut self, lhs: &str, rhs: &str) {
        let lhs_i = self.nt(lhs);
        let mut syms = Vec::new();
        for tok in rhs.split_whitespace() {
            match self.regex_terminal(tok) {
                Some(t) => syms.push(Sym::T(t)),
                None => {
                    let n = self.nt(tok);
                    syms.push(Sym::Nt(n));
                }
            }
        }
        self.productions.push(Production { lhs: lhs_i, rhs: syms, template: None });
    }

    pub fn raw_production(&mut self, lhs: usize, rhs: Vec<Sym>) {
        self.productions.push(Production { lhs, rhs, template: None });
    }

    pub fn finish(mut self) -> WeightedCfg {
        let start = match &self.start {
            Some(s) => *self.nt_map.get(s).expect("start symbol undefined"),
            None => 0,
        };
        let mut prods_of = vec![Vec::new(); self.nonterminals.len()];
        for (i, p) in self.productions.iter().enumerate() {
            prods_of[p.lhs].push(i);
        }
        for p in &mut self.productions {
            p.template = extract_template(&p.rhs, &self.terminals).ok();
        }
        WeightedCfg {
            name: self.name,
            k: self.k,
            nonterminals: self.nonterminals,
            start,
            terminals: self.terminals,
            productions: self.productions,
            prods_of,
        }
    }
}

/// Reads the expression shape off a production RHS: `+` separates union
/// branches, `*` stars the preceding factor, parentheses group, the
/// concatenation marker is adjacency, and nonterminals are slots.
fn extract_template(rhs: &[Sym], terminals: &[Terminal]) -> Result<Template, String> {
    struct P<'a> {
        rhs: &'a [Sym],
        terminals: &'a [Terminal],
        at: usize,
        slot: usize,
    }
    impl P<'_> {
        fn peek_role(&self) -> Option<TokenRole> {
            self.rhs.get(self.at).map(|s| match s {
                Sym::Nt(_) => TokenRole::Opaque,
                Sym::T(t) => self.terminals[*t].role,
            })
        }
        fn union(&mut self) -> Result<Template, String> {
            let mut parts = vec![self.concat()?];
            while matches!(self.peek_role(), Some(TokenRole::Plus)) {
                self.at += 1;
                parts.push(self.concat()?);
            }
            Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Template::Union(parts) })
        }
        fn concat(&mut self) -> Result<Template, String> {
            let mut parts = vec![self.factor()?];
            loop {
                if matches!(self.peek_role(), Some(TokenRole::ConcatOp)) {
                    self.at += 1;
                }
                match self.peek_role() {
                    None | Some(TokenRole::Plus) | Some(TokenRole::RParen) => break,
                    _ => parts.push(self.factor()?),
                }
            }
            Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Template::Concat(parts) })
        }
        fn factor(&mut self) -> Result<Template, String> {
            let mut t = self.atom()?;
            while matches!(self.peek_role(), Some(TokenRole::Star)) {
                self.at += 1;
                t = Template::Star(Box::new(t));
            }
            Ok(t)
        }
        fn atom(&mut self) -> Result<Template, String> {
            let sym = self.rhs.get(self.at).ok_or("expected a symbol")?;
            match sym {
                Sym::Nt(_) => {
                    self.at += 1;
                    let s = self.slot;
                    self.slot += 1;
                    Ok(Template::Slot(s))
                }
                Sym::T(t) => {
                    let role = self.terminals[*t].role;
                    self.at += 1;
                    match role {
                        TokenRole::Letter(i) => Ok(Template::Letter(i)),
                        TokenRole::Epsilon => Ok(Template::Epsilon),
                        TokenRole::EmptySet => Ok(Template::EmptySet),
                        TokenRole::LParen => {
                            let inner = self.union()?;
                            match self.peek_role() {
                                Some(TokenRole::RParen) => {
                                    self.at += 1;
                                    Ok(inner)
                                }
                                _ => Err("expected `)`".into()),
                            }
                        }
                        other => Err(format!("unexpected token role {other:?}")),
                    }
                }
            }
        }
    }
    if rhs.is_empty() {
        return Ok(Template::Epsilon);
    }
    let mut p = P { rhs, terminals, at: 0, slot: 0 };
    let t = p.union()?;
    if p.at != rhs.len() {
        return Err("trailing symbols".into());
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builder_and_image() {
        // The if-then-else grammar, with opaque unit-weight terminals.
        let mut b = CfgBuilder::new("ite", 1);
        b.start("S");
        let t0 = b.terminal("'0'", TokenRole::Opaque, [1, 1, 1]);
        let t1 = b.terminal("'1'", TokenRole::Opaque, [1, 1, 1]);
        let (s, m, u) = (b.nt("S"), b.nt("M"), b.nt("U"));
        b.raw_production(s, vec![Sym::Nt(m)]);
        b.raw_production(s, vec![Sym::Nt(u)]);
        b.raw_production(m, vec![Sym::T(t0), Sym::Nt(m), Sym::T(t1), Sym::Nt(m)]);
        b.raw_production(m, vec![]);
        b.raw_production(u, vec![Sym::T(t0), Sym::Nt(s)]);
        b.raw_production(u, vec![Sym::T(t0), Sym::Nt(m), Sym::T(t1), Sym::Nt(u)]);
        let cfg = b.finish();

        assert!(cfg.validate_size_proper(SizeMeasure::Ordinary).is_proper());
        let sys = cfg.commutative_image(SizeMeasure::Ordinary);
        // S = M + U
        assert_eq!(sys.equations[0].0.len(), 2);
        // M = x^2 M^2 + 1
        let meq = &sys.equations[1];
        assert_eq!(meq.0.len(), 2);
        assert!(meq.0.iter().any(|mo| mo.xpow == 0 && mo.vars.is_empty()));
        assert!(meq.0.iter().any(|mo| mo.xpow == 2 && mo.vars == vec![(1, 2)]));
    }

    #[test]
    fn zero_weight_cycle_detected() {
        // S -> ( S ) | a0 is improper under alphabetic width (parentheses
        // weigh nothing there) but proper under ordinary length.
        let mut b = CfgBuilder::new("wrap", 1);
        b.start("S");
        b.rule("S", "( S )");
        b.rule("S", "a0");
        let cfg = b.finish();
        assert!(cfg.validate_size_proper(SizeMeasure::Ordinary).is_proper());
        match cfg.validate_size_proper(SizeMeasure::Alphabetic) {
            SizeProperness::Improper { cycle } => assert!(cycle.contains(&"S".to_string())),
            SizeProperness::Proper => panic!("expected improper"),
        }
    }

    #[test]
    fn template_shapes() {
        let mut b = CfgBuilder::new("t", 3);
        b.start("K");
        b.rule("K", "( A ) *");
        b.rule("K", "a0 • a1 * • E");
        b.rule("K", "A + @");
        b.rule("A", "a2");
        b.rule("E", "a2");
        let cfg = b.finish();
        let p = &cfg.productions()[0];
        assert_eq!(p.template, Some(Template::Star(Box::new(Template::Slot(0)))));
        let p = &cfg.productions()[1];
        assert_eq!(
            p.template,
            Some(Template::Concat(vec![
                Template::Letter(0),
                Template::Star(Box::new(Template::Letter(1))),
                Template::Slot(0),
            ]))
        );
        let p = &cfg.productions()[2];
        assert_eq!(
            p.template,
            Some(Template::Union(vec![Template::Slot(0), Template::Epsilon]))
        );
    }
}
