//! Finite automata: construction from expressions, minimization, canonical
//! byte keys, and the language operations the census needs.
//!
//! Every [`Dfa`] is complete (a dead state is explicit where needed) and
//! the output of [`Dfa::minimize`] is relabeled by breadth-first search
//! from the start state in letter order, so two minimal automata accept
//! the same language iff they are structurally equal, and iff their
//! [`canonical_key`] bytes are equal.

mod star_trie;

pub use star_trie::{expr_to_trie, star_trie, trie_to_regex, StarTrie, TrieLabel, TrieNode};

use crate::regex::Ast;
use std::collections::HashMap;
use thiserror::Error;

/// Default bound on determinization output size.
pub const DEFAULT_STATE_CAP: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomataError {
    #[error("state cap of {cap} states exceeded while constructing an automaton")]
    StateCap { cap: usize },
    #[error("star-trie reconstruction requires a nonempty language without the empty word")]
    StarTrieDomain,
}

/// Complete deterministic finite automaton over letters `0..k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dfa {
    k: u32,
    start: u32,
    finals: Vec<bool>,
    /// Row-major transition table: `table[state * k + letter]`.
    table: Vec<u32>,
}

impl Dfa {
    pub fn new(k: u32, start: u32, finals: Vec<bool>, table: Vec<u32>) -> Dfa {
        let n = finals.len();
        assert!(k >= 1);
        assert_eq!(table.len(), n * k as usize);
        assert!((start as usize) < n);
        assert!(table.iter().all(|&t| (t as usize) < n));
        Dfa { k, start, finals, table }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn states(&self) -> usize {
        self.finals.len()
    }

    pub fn start(&self) -> u32 {
        self.start
    }

    pub fn is_final(&self, q: u32) -> bool {
        self.finals[q as usize]
    }

    pub fn step(&self, q: u32, letter: u32) -> u32 {
        self.table[q as usize * self.k as usize + letter as usize]
    }

    /// Runs a word from the start state.
    pub fn accepts(&self, word: &[u32]) -> bool {
        let mut q = self.start;
        for &c in word {
            q = self.step(q, c);
        }
        self.is_final(q)
    }

    pub fn accepts_epsilon(&self) -> bool {
        self.is_final(self.start)
    }

    /// True iff no word is accepted.
    pub fn is_empty_language(&self) -> bool {
        !self.coreachable()[self.start as usize]
    }

    /// States from which some final state is reachable.
    pub fn coreachable(&self) -> Vec<bool> {
        let n = self.states();
        let mut preds: Vec<Vec<u32>> = vec![Vec::new(); n];
        for q in 0..n {
            for c in 0..self.k as usize {
                preds[self.table[q * self.k as usize + c] as usize].push(q as u32);
            }
        }
        let mut co = vec![false; n];
        let mut stack: Vec<u32> = (0..n as u32).filter(|&q| self.finals[q as usize]).collect();
        for &q in &stack {
            co[q as usize] = true;
        }
        while let Some(q) = stack.pop() {
            for &p in &preds[q as usize] {
                if !co[p as usize] {
                    co[p as usize] = true;
                    stack.push(p);
                }
            }
        }
        co
    }

    /// Minimal automaton for the same language, BFS-relabeled. Idempotent:
    /// re-minimizing returns a structurally equal automaton.
    pub fn minimize(&self) -> Dfa {
        let reach = self.restrict_reachable();
        let block_of = hopcroft(&reach);
        reach.quotient(&block_of)
    }

    /// Keeps only states reachable from the start, renumbered in BFS order.
    fn restrict_reachable(&self) -> Dfa {
        let n = self.states();
        let k = self.k as usize;
        let mut order = Vec::with_capacity(n);
        let mut new_id = vec![u32::MAX; n];
        new_id[self.start as usize] = 0;
        order.push(self.start);
        let mut head = 0;
        while head < order.len() {
            let q = order[head] as usize;
            head += 1;
            for c in 0..k {
                let t = self.table[q * k + c];
                if new_id[t as usize] == u32::MAX {
                    new_id[t as usize] = order.len() as u32;
                    order.push(t);
                }
            }
        }
        let m = order.len();
        let mut table = vec![0u32; m * k];
        let mut finals = vec![false; m];
        for (i, &q) in order.iter().enumerate() {
            finals[i] = self.finals[q as usize];
            for c in 0..k {
                table[i * k + c] = new_id[self.table[q as usize * k + c] as usize];
            }
        }
        Dfa { k: self.k, start: 0, finals, table }
    }

    /// Collapses states by block id and BFS-relabels.
    fn quotient(&self, block_of: &[u32]) -> Dfa {
        let k = self.k as usize;
        let nblocks = block_of.iter().copied().max().unwrap_or(0) as usize + 1;
        let mut rep = vec![u32::MAX; nblocks];
        for (q, &b) in block_of.iter().enumerate() {
            if rep[b as usize] == u32::MAX {
                rep[b as usize] = q as u32;
            }
        }
        let mut table = vec![0u32; nblocks * k];
        let mut finals = vec![false; nblocks];
        for b in 0..nblocks {
            let q = rep[b] as usize;
            finals[b] = self.finals[q];
            for c in 0..k {
                table[b * k + c] = block_of[self.table[q * k + c] as usize];
            }
        }
        let quo = Dfa {
            k: self.k,
            start: block_of[self.start as usize],
            finals,
            table,
        };
        quo.restrict_reachable()
    }

    /// Graphviz DOT rendering, for debugging.
    pub fn to_dot(&self) -> String {
        use std::fmt::Write;
        let mut s = String::from("digraph dfa {\n  rankdir=LR;\n  node [shape=circle];\n");
        let _ = writeln!(s, "  init [shape=point];\n  init -> s{};", self.start);
        for q in 0..self.states() {
            if self.finals[q] {
                let _ = writeln!(s, "  s{q} [shape=doublecircle];");
            }
            for c in 0..self.k {
                let _ = writeln!(s, "  s{q} -> s{} [label=\"{c}\"];", self.step(q as u32, c));
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Hopcroft partition refinement. Input must have all states reachable.
/// Returns the block id of each state; block ids follow the first state
/// of each block in input order.
fn hopcroft(d: &Dfa) -> Vec<u32> {
    let n = d.states();
    let k = d.k as usize;
    if n == 0 {
        return Vec::new();
    }

    // Inverse transitions, grouped by letter.
    let mut inv_start = vec![0u32; n * k + 1];
    for q in 0..n {
        for c in 0..k {
            inv_start[d.table[q * k + c] as usize * k + c + 1] += 1;
        }
    }
    for i in 0..n * k {
        inv_start[i + 1] += inv_start[i];
    }
    let mut inv = vec![0u32; n * k];
    let mut fill = inv_start.clone();
    for q in 0..n {
        for c in 0..k {
            let t = d.table[q * k + c] as usize;
            inv[fill[t * k + c] as usize] = q as u32;
            fill[t * k + c] += 1;
        }
    }

    // Partition as a permutation of states with per-block segments.
    let mut elems: Vec<u32> = (0..n as u32).collect();
    elems.sort_by_key(|&q| !d.finals[q as usize]);
    let nfinal = d.finals.iter().filter(|&&f| f).count();
    let mut pos = vec![0u32; n];
    for (i, &q) in elems.iter().enumerate() {
        pos[q as usize] = i as u32;
    }
    let mut blk = vec![0u32; n];
    let mut blk_start: Vec<u32> = Vec::with_capacity(16);
    let mut blk_len: Vec<u32> = Vec::with_capacity(16);
    let mut marked: Vec<u32> = Vec::with_capacity(16);
    if nfinal == 0 || nfinal == n {
        blk_start.push(0);
        blk_len.push(n as u32);
    } else {
        blk_start.extend([0, nfinal as u32]);
        blk_len.extend([nfinal as u32, (n - nfinal) as u32]);
        for i in nfinal..n {
            blk[elems[i] as usize] = 1;
        }
    }
    marked.resize(blk_start.len(), 0);

    let mut in_work = vec![false; blk_start.len() * k];
    let mut work: Vec<(u32, u32)> = Vec::new();
    if blk_start.len() == 2 {
        let smaller = if blk_len[0] <= blk_len[1] { 0 } else { 1 };
        for c in 0..k {
            work.push((smaller, c as u32));
            in_work[smaller as usize * k + c] = true;
        }
    }

    let mut preimage: Vec<u32> = Vec::new();
    let mut touched: Vec<u32> = Vec::new();
    while let Some((a_blk, c)) = work.pop() {
        in_work[a_blk as usize * k + c as usize] = false;
        // Preimage of block `a_blk` under letter `c`.
        preimage.clear();
        let (s, l) = (blk_start[a_blk as usize] as usize, blk_len[a_blk as usize] as usize);
        for i in s..s + l {
            let t = elems[i] as usize;
            let lo = inv_start[t * k + c as usize] as usize;
            let hi = inv_start[t * k + c as usize + 1] as usize;
            preimage.extend_from_slice(&inv[lo..hi]);
        }
        touched.clear();
        for &p in &preimage {
            let b = blk[p as usize];
            if marked[b as usize] == 0 {
                touched.push(b);
            }
            // Swap p into the marked prefix of its block.
            let m = marked[b as usize];
            let dst = blk_start[b as usize] + m;
            let src = pos[p as usize];
            if dst != src {
                let other = elems[dst as usize];
                elems.swap(dst as usize, src as usize);
                pos[other as usize] = src;
                pos[p as usize] = dst;
            }
            marked[b as usize] = m + 1;
        }
        for &b in &touched {
            let m = marked[b as usize];
            marked[b as usize] = 0;
            if m == blk_len[b as usize] {
                continue;
            }
            // Split: block b keeps the marked prefix, new block takes the rest.
            let nb = blk_start.len() as u32;
            blk_start.push(blk_start[b as usize] + m);
            blk_len.push(blk_len[b as usize] - m);
            blk_len[b as usize] = m;
            marked.push(0);
            let (ns, nl) = (blk_start[nb as usize] as usize, blk_len[nb as usize] as usize);
            for i in ns..ns + nl {
                blk[elems[i] as usize] = nb;
            }
            in_work.resize(blk_start.len() * k, false);
            for letter in 0..k {
                if in_work[b as usize * k + letter] {
                    in_work[nb as usize * k + letter] = true;
                    work.push((nb, letter as u32));
                } else {
                    let smaller = if blk_len[b as usize] <= blk_len[nb as usize] { b } else { nb };
                    in_work[smaller as usize * k + letter] = true;
                    work.push((smaller, letter as u32));
                }
            }
        }
    }
    blk
}

/// Canonical byte key of a minimal DFA: version byte, `k`, state count
/// (32-bit little-endian), row-major transition table of the BFS
/// relabeling, then a final-state bitmap (LSB first). Two regular
/// languages are equal iff the keys of their minimal DFAs are equal.
pub fn canonical_key(d: &Dfa) -> Vec<u8> {
    let c = d.restrict_reachable();
    let n = c.states();
    let k = c.k as usize;
    let mut out = Vec::with_capacity(1 + 8 + 4 * n * k + n / 8 + 1);
    out.push(0x01);
    out.extend_from_slice(&c.k.to_le_bytes());
    out.extend_from_slice(&(n as u32).to_le_bytes());
    for &t in &c.table {
        out.extend_from_slice(&t.to_le_bytes());
    }
    let mut bitmap = vec![0u8; n.div_ceil(8)];
    for (q, &f) in c.finals.iter().enumerate() {
        if f {
            bitmap[q / 8] |= 1 << (q % 8);
        }
    }
    out.extend_from_slice(&bitmap);
    out
}

/// One-state automaton for the empty language.
pub fn empty_dfa(k: u32) -> Dfa {
    Dfa::new(k, 0, vec![false], vec![0; k as usize])
}

/// Automaton for the language containing only the empty word.
pub fn eps_dfa(k: u32) -> Dfa {
    let k_ = k as usize;
    let mut table = vec![1u32; 2 * k_];
    table[k_..].fill(1);
    Dfa::new(k, 0, vec![true, false], table)
}

/// Automaton for the single-letter word `a_i`, in BFS-canonical form.
pub fn letter_dfa(k: u32, i: u32) -> Dfa {
    let k_ = k as usize;
    if k == 1 {
        // start -0-> accept, accept -0-> sink
        return Dfa::new(1, 0, vec![false, true, false], vec![1, 2, 2]);
    }
    // BFS from the start discovers the sink first unless the letter is 0.
    let (accept, sink) = if i == 0 { (1u32, 2u32) } else { (2u32, 1u32) };
    let mut table = vec![sink; 3 * k_];
    table[i as usize] = accept;
    let mut finals = vec![false; 3];
    finals[accept as usize] = true;
    Dfa::new(k, 0, finals, table)
}

/// True iff the minimal form of `d` accepts exactly the empty word.
pub fn is_epsilon_language(d: &Dfa) -> bool {
    let m = d.minimize();
    m.accepts_epsilon() && {
        let co = m.coreachable();
        (0..m.k).all(|c| !co[m.step(m.start, c) as usize])
    }
}

// ---------------------------------------------------------------------------
// NFA with epsilon transitions (Thompson construction, determinization)
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Default)]
struct NState {
    eps: Vec<u32>,
    edges: Vec<(u32, u32)>,
}

#[derive(Debug, Clone)]
pub struct Nfa {
    k: u32,
    states: Vec<NState>,
    start: u32,
    accept: Vec<u32>,
}

impl Nfa {
    fn add_state(&mut self) -> u32 {
        self.states.push(NState::default());
        (self.states.len() - 1) as u32
    }

    /// Thompson construction.
    pub fn from_ast(ast: &Ast, k: u32) -> Nfa {
        let mut nfa = Nfa { k, states: Vec::new(), start: 0, accept: Vec::new() };
        let (s, a) = nfa.build(ast);
        nfa.start = s;
        nfa.accept = vec![a];
        nfa
    }

    fn build(&mut self, ast: &Ast) -> (u32, u32) {
        match ast {
            Ast::Empty => (self.add_state(), self.add_state()),
            Ast::Epsilon => {
                let s = self.add_state();
                let a = self.add_state();
                self.states[s as usize].eps.push(a);
                (s, a)
            }
            Ast::Letter(i) => {
                let s = self.add_state();
                let a = self.add_state();
                self.states[s as usize].edges.push((*i, a));
                (s, a)
            }
            Ast::Union(cs) => {
                let s = self.add_state();
                let a = self.add_state();
                for c in cs {
                    let (cs_, ca) = self.build(c);
                    self.states[s as usize].eps.push(cs_);
                    self.states[ca as usize].eps.push(a);
                }
                (s, a)
            }
            Ast::Concat(cs) => {
                let mut first = None;
                let mut prev: Option<u32> = None;
                for c in cs {
                    let (cs_, ca) = self.build(c);
                    if let Some(p) = prev {
                        self.states[p as usize].eps.push(cs_);
                    } else {
                        first = Some(cs_);
                    }
                    prev = Some(ca);
                }
                (first.unwrap(), prev.unwrap())
            }
            Ast::Star(c) => {
                let s = self.add_state();
                let a = self.add_state();
                let (cs_, ca) = self.build(c);
                self.states[s as usize].eps.extend([cs_, a]);
                self.states[ca as usize].eps.extend([cs_, a]);
                (s, a)
            }
            Ast::Optional(c) => {
                let s = self.add_state();
                let a = self.add_state();
                let (cs_, ca) = self.build(c);
                self.states[s as usize].eps.extend([cs_, a]);
                self.states[ca as usize].eps.push(a);
                (s, a)
            }
        }
    }

    fn closure(&self, set: &mut Vec<u32>) {
        let mut seen = vec![false; self.states.len()];
        for &q in set.iter() {
            seen[q as usize] = true;
        }
        let mut head = 0;
        while head < set.len() {
            let q = set[head] as usize;
            head += 1;
            for &t in &self.states[q].eps {
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    set.push(t);
                }
            }
        }
        set.sort_unstable();
    }

    /// Subset construction to a complete DFA.
    pub fn determinize(&self, cap: usize) -> Result<Dfa, AutomataError> {
        let k = self.k as usize;
        let is_accept = {
            let mut v = vec![false; self.states.len()];
            for &a in &self.accept {
                v[a as usize] = true;
            }
            v
        };
        let mut subsets: HashMap<Box<[u32]>, u32> = HashMap::new();
        let mut order: Vec<Box<[u32]>> = Vec::new();
        let mut table: Vec<u32> = Vec::new();
        let mut finals: Vec<bool> = Vec::new();

        let mut start_set = vec![self.start];
        self.closure(&mut start_set);
        let start_key: Box<[u32]> = start_set.into();
        subsets.insert(start_key.clone(), 0);
        order.push(start_key);
        let mut head = 0;
        while head < order.len() {
            let cur = order[head].clone();
            head += 1;
            finals.push(cur.iter().any(|&q| is_accept[q as usize]));
            for c in 0..k {
                let mut next: Vec<u32> = Vec::new();
                for &q in cur.iter() {
                    for &(l, t) in &self.states[q as usize].edges {
                        if l as usize == c {
                            next.push(t);
                        }
                    }
                }
                next.sort_unstable();
                next.dedup();
                self.closure(&mut next);
                let key: Box<[u32]> = next.into();
                let id = match subsets.get(&key) {
                    Some(&id) => id,
                    None => {
                        let id = order.len() as u32;
                        if order.len() >= cap {
                            return Err(AutomataError::StateCap { cap });
                        }
                        subsets.insert(key.clone(), id);
                        order.push(key);
                        id
                    }
                };
                table.push(id);
            }
        }
        Ok(Dfa::new(self.k, 0, finals, table))
    }
}

/// Minimal DFA of the language of `ast` over alphabet size `k`.
pub fn to_dfa(ast: &Ast, k: u32) -> Result<Dfa, AutomataError> {
    to_dfa_capped(ast, k, DEFAULT_STATE_CAP)
}

pub fn to_dfa_capped(ast: &Ast, k: u32, cap: usize) -> Result<Dfa, AutomataError> {
    debug_assert!(ast.min_alphabet() <= k);
    Ok(Nfa::from_ast(ast, k).determinize(cap)?.minimize())
}

/// Minimal DFA of the union of two languages (product construction).
pub fn dfa_union(a: &Dfa, b: &Dfa, cap: usize) -> Result<Dfa, AutomataError> {
    assert_eq!(a.k, b.k);
    let k = a.k as usize;
    let mut map: HashMap<(u32, u32), u32> = HashMap::new();
    let mut order: Vec<(u32, u32)> = vec![(a.start, b.start)];
    map.insert((a.start, b.start), 0);
    let mut table = Vec::new();
    let mut finals = Vec::new();
    let mut head = 0;
    while head < order.len() {
        let (p, q) = order[head];
        head += 1;
        finals.push(a.is_final(p) || b.is_final(q));
        for c in 0..k as u32 {
            let t = (a.step(p, c), b.step(q, c));
            let id = match map.get(&t) {
                Some(&id) => id,
                None => {
                    let id = order.len() as u32;
                    if order.len() >= cap {
                        return Err(AutomataError::StateCap { cap });
                    }
                    map.insert(t, id);
                    order.push(t);
                    id
                }
            };
            table.push(id);
        }
    }
    Ok(Dfa::new(a.k, 0, finals, table).minimize())
}

/// Minimal DFA of the intersection of two languages.
pub fn dfa_intersect(a: &Dfa, b: &Dfa, cap: usize) -> Result<Dfa, AutomataError> {
    assert_eq!(a.k, b.k);
    let k = a.k as usize;
    let mut map: HashMap<(u32, u32), u32> = HashMap::new();
    let mut order: Vec<(u32, u32)> = vec![(a.start, b.start)];
    map.insert((a.start, b.start), 0);
    let mut table = Vec::new();
    let mut finals = Vec::new();
    let mut head = 0;
    while head < order.len() {
        let (p, q) = order[head];
        head += 1;
        finals.push(a.is_final(p) && b.is_final(q));
        for c in 0..k as u32 {
            let t = (a.step(p, c), b.step(q, c));
            let id = match map.get(&t) {
                Some(&id) => id,
                None => {
                    let id = order.len() as u32;
                    if order.len() >= cap {
                        return Err(AutomataError::StateCap { cap });
                    }
                    map.insert(t, id);
                    order.push(t);
                    id
                }
            };
            table.push(id);
        }
    }
    Ok(Dfa::new(a.k, 0, finals, table).minimize())
}

/// NFA wrapper around a DFA fragment; used to stitch concatenations and stars.
fn import_dfa(nfa: &mut Nfa, d: &Dfa) -> (u32, Vec<u32>) {
    let base = nfa.states.len() as u32;
    for q in 0..d.states() {
        let mut st = NState::default();
        for c in 0..d.k {
            st.edges.push((c, base + d.step(q as u32, c)));
        }
        nfa.states.push(st);
    }
    let finals = (0..d.states() as u32)
        .filter(|&q| d.is_final(q))
        .map(|q| base + q)
        .collect();
    (base + d.start, finals)
}

/// Minimal DFA of the concatenation of two languages.
pub fn dfa_concat(a: &Dfa, b: &Dfa, cap: usize) -> Result<Dfa, AutomataError> {
    assert_eq!(a.k, b.k);
    let mut nfa = Nfa { k: a.k, states: Vec::new(), start: 0, accept: Vec::new() };
    let (sa, fa) = import_dfa(&mut nfa, a);
    let (sb, fb) = import_dfa(&mut nfa, b);
    for f in fa {
        nfa.states[f as usize].eps.push(sb);
    }
    nfa.start = sa;
    nfa.accept = fb;
    Ok(nfa.determinize(cap)?.minimize())
}

/// Minimal DFA of the Kleene star of a language.
pub fn dfa_star(a: &Dfa, cap: usize) -> Result<Dfa, AutomataError> {
    let mut nfa = Nfa { k: a.k, states: Vec::new(), start: 0, accept: Vec::new() };
    let (sa, fa) = import_dfa(&mut nfa, a);
    let q0 = nfa.add_state();
    nfa.states[q0 as usize].eps.push(sa);
    for &f in &fa {
        nfa.states[f as usize].eps.push(sa);
    }
    nfa.start = q0;
    let mut accept = fa;
    accept.push(q0);
    nfa.accept = accept;
    Ok(nfa.determinize(cap)?.minimize())
}

/// Minimal DFA of the left quotient `a_letter^{-1} L`.
pub fn left_quotient(d: &Dfa, letter: u32) -> Dfa {
    let mut q = d.clone();
    q.start = d.step(d.start, letter);
    q.minimize()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regex::parse_regex;

    fn dfa(text: &str, k: u32) -> Dfa {
        to_dfa(&parse_regex(text, k).unwrap().ast, k).unwrap()
    }

    /// All words over `0..k` of length at most `maxlen`, lexicographic by
    /// length; the brute-force equivalence oracle.
    pub(crate) fn words(k: u32, maxlen: usize) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        let mut level: Vec<Vec<u32>> = vec![vec![]];
        for _ in 0..maxlen {
            let mut next = Vec::new();
            for w in &level {
                for c in 0..k {
                    let mut w2 = w.clone();
                    w2.push(c);
                    next.push(w2);
                }
            }
            out.extend(next.iter().cloned());
            level = next;
        }
        out
    }

    #[test]
    fn same_language_same_minimal_dfa() {
        // (a+b)* and (b*a*)* denote the same language.
        let d1 = dfa("(a+b)*", 2);
        let d2 = dfa("(b*a*)*", 2);
        assert_eq!(d1, d2);
        assert_eq!(canonical_key(&d1), canonical_key(&d2));
        assert_eq!(d1.states(), 1);
    }

    #[test]
    fn empty_set_dfa() {
        let d = dfa("#", 1);
        assert_eq!(d.states(), 1);
        assert!(d.is_empty_language());
        assert_eq!(d, empty_dfa(1));
    }

    #[test]
    fn no_consecutive_ones() {
        // (0+10)*(1+ε) is exactly the words without "11".
        let d = dfa("(0+10)*(1+@)", 2);
        for w in words(2, 8) {
            let has11 = w.windows(2).any(|p| p == [1, 1]);
            assert_eq!(d.accepts(&w), !has11, "word {w:?}");
        }
    }

    #[test]
    fn minimize_idempotent_and_identity() {
        let all = Dfa::new(1, 0, vec![true], vec![0]);
        assert_eq!(all.minimize(), all);
        let d = dfa("a*", 1);
        assert_eq!(d.states(), 1);
        assert!(d.is_final(0));
        let again = d.minimize();
        assert_eq!(d, again);
    }

    #[test]
    fn minimize_preserves_language_on_random_dfas() {
        // Deterministic LCG so the test is reproducible.
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut rng = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 33) as u32
        };
        for _ in 0..200 {
            let n = 6;
            let k = 2;
            let table: Vec<u32> = (0..n * k).map(|_| rng() % n as u32).collect();
            let finals: Vec<bool> = (0..n).map(|_| rng() % 2 == 0).collect();
            let d = Dfa::new(k as u32, 0, finals, table);
            let m = d.minimize();
            assert!(m.states() <= d.states());
            for w in words(2, 12) {
                assert_eq!(d.accepts(&w), m.accepts(&w));
            }
            assert_eq!(m.minimize(), m);
        }
    }

    #[test]
    fn canonical_key_distinguishes() {
        let da = dfa("a", 2);
        let db = dfa("b", 2);
        assert_ne!(canonical_key(&da), canonical_key(&db));
    }

    #[test]
    fn language_ops() {
        let a = dfa("a", 2);
        let b = dfa("b", 2);
        let cap = DEFAULT_STATE_CAP;
        // union(L, L) = L
        assert_eq!(dfa_union(&a, &a, cap).unwrap(), a);
        // star(star(L)) = star(L)
        let sa = dfa_star(&a, cap).unwrap();
        assert_eq!(dfa_star(&sa, cap).unwrap(), sa);
        // concat(a, b) accepts exactly {ab}
        let ab = dfa_concat(&a, &b, cap).unwrap();
        for w in words(2, 4) {
            assert_eq!(ab.accepts(&w), w == [0, 1], "word {w:?}");
        }
        assert_eq!(ab, dfa("ab", 2));
    }

    #[test]
    fn quotients() {
        let ab = dfa("ab", 2);
        assert_eq!(left_quotient(&ab, 0), dfa("b", 2));
        let astar = dfa("a*", 1);
        assert_eq!(left_quotient(&astar, 0), astar);
        // Quotient by a letter the language does not start with is empty.
        assert!(left_quotient(&ab, 1).is_empty_language());
    }

    #[test]
    fn epsilon_language_predicate() {
        assert!(is_epsilon_language(&eps_dfa(2)));
        assert!(is_epsilon_language(&dfa("@+@", 2)));
        assert!(is_epsilon_language(&dfa("#*", 2)));
        assert!(!is_epsilon_language(&dfa("a*", 2)));
        assert!(!is_epsilon_language(&dfa("#", 2)));
    }

    #[test]
    fn primitive_dfas_are_minimal() {
        for k in 1..4 {
            assert_eq!(empty_dfa(k).minimize(), empty_dfa(k));
            assert_eq!(eps_dfa(k).minimize(), eps_dfa(k));
            for i in 0..k {
                assert_eq!(letter_dfa(k, i).minimize(), letter_dfa(k, i));
            }
        }
    }

    #[test]
    fn optional_node_accepted_by_thompson() {
        use crate::regex::Ast;
        let opt = Ast::Optional(Box::new(Ast::Letter(0)));
        let d = to_dfa(&opt, 1).unwrap();
        assert!(d.accepts(&[]));
        assert!(d.accepts(&[0]));
        assert!(!d.accepts(&[0, 0]));
    }
}
