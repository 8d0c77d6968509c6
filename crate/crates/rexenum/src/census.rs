//! Exact enumeration of distinct regular languages by minimal expression
//! size.
//!
//! A dynamic program walks expression sizes in ascending order. For every
//! nonterminal and size it combines smaller representatives through each
//! production, builds the minimal DFA of every candidate bottom-up from
//! the stored sub-DFAs, and keeps one representative per canonical DFA
//! key per nonterminal — a language that already appeared for the same
//! nonterminal at this or a smaller size is dropped. Minimal sizes
//! survive this pruning because any occurrence of a subexpression can be
//! replaced by the same-nonterminal, same-language representative of
//! equal or smaller size.
//!
//! The start symbol's first-seen sizes, plus the two constant atoms (the
//! empty set and the empty word, which the normal-form grammars never
//! generate), give the per-size counts of distinct languages.

mod golden;

pub use golden::{golden_cells, GoldenCell};

use crate::automata::{
    canonical_key, dfa_concat, dfa_star, dfa_union, empty_dfa, eps_dfa, letter_dfa,
    AutomataError, Dfa,
};
use crate::cancel::CancelToken;
use crate::grammar::{Template, TokenRole, WeightedCfg};
use crate::regex::{LetterStyle, SizeMeasure};
use rayon::prelude::*;
use std::collections::HashMap;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("grammar `{grammar}` is not size-proper under {measure}: zero-weight cycle through {cycle:?}")]
    Improper {
        grammar: String,
        measure: SizeMeasure,
        cycle: Vec<String>,
    },
    #[error("automaton construction hit a resource cap on witness `{witness}`: {source}")]
    Automata {
        witness: String,
        source: AutomataError,
    },
    #[error("memory budget of {budget} bytes exceeded ({used} bytes in buckets) and no spill directory is configured")]
    MemBudget { budget: usize, used: usize },
    #[error("cancelled by deadline or request")]
    Cancelled,
    #[error("spill I/O failed: {0}")]
    Io(#[from] std::io::Error),
    #[error("grammar error: {0}")]
    Grammar(#[from] crate::grammar::GrammarError),
}

#[derive(Debug, Clone)]
pub struct CensusOptions {
    /// Cap on determinization size per composition.
    pub state_cap: usize,
    /// Budget for in-memory buckets before spilling to disk.
    pub mem_budget: usize,
    /// Directory for spilled buckets (required only if the budget trips).
    pub spill_dir: Option<PathBuf>,
    /// Rayon worker count; 0 uses the global default.
    pub workers: usize,
    pub cancel: CancelToken,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            state_cap: 1 << 16,
            mem_budget: 3 << 30,
            spill_dir: None,
            workers: 0,
            cancel: CancelToken::none(),
        }
    }
}

/// One language representative: canonical key, minimal DFA, and the
/// lexicographically smallest witness expression of the first size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LangRep {
    pub key: Box<[u8]>,
    pub dfa: Dfa,
    pub witness: String,
}

impl LangRep {
    fn approx_bytes(&self) -> usize {
        self.key.len() + self.witness.len() + self.dfa.states() * self.dfa.k() as usize * 4 + 96
    }
}

/// A per-(nonterminal, size) set of representatives, possibly on disk.
enum Bucket {
    Mem(Vec<LangRep>),
    Disk { path: PathBuf, count: usize },
}

impl Bucket {
    fn len(&self) -> usize {
        match self {
            Bucket::Mem(v) => v.len(),
            Bucket::Disk { count, .. } => *count,
        }
    }

    fn load(&self) -> Result<Vec<LangRep>, CensusError> {
        match self {
            Bucket::Mem(v) => Ok(v.clone()),
            Bucket::Disk { path, count } => {
                let mut r = BufReader::new(std::fs::File::open(path)?);
                let mut out = Vec::with_capacity(*count);
                for _ in 0..*count {
                    out.push(read_entry(&mut r)?);
                }
                Ok(out)
            }
        }
    }
}

fn write_entry(w: &mut impl Write, e: &LangRep) -> std::io::Result<()> {
    let kb = &e.key;
    w.write_all(&(kb.len() as u32).to_le_bytes())?;
    w.write_all(kb)?;
    let wb = e.witness.as_bytes();
    w.write_all(&(wb.len() as u32).to_le_bytes())?;
    w.write_all(wb)?;
    let d = &e.dfa;
    let (k, n) = (d.k(), d.states());
    w.write_all(&k.to_le_bytes())?;
    w.write_all(&(n as u32).to_le_bytes())?;
    w.write_all(&d.start().to_le_bytes())?;
    let mut finals = vec![0u8; n.div_ceil(8)];
    for q in 0..n {
        if d.is_final(q as u32) {
            finals[q / 8] |= 1 << (q % 8);
        }
    }
    w.write_all(&finals)?;
    for q in 0..n as u32 {
        for c in 0..k {
            w.write_all(&d.step(q, c).to_le_bytes())?;
        }
    }
    Ok(())
}

fn read_entry(r: &mut impl Read) -> std::io::Result<LangRep> {
    fn u32_of(r: &mut impl Read) -> std::io::Result<u32> {
        let mut b = [0u8; 4];
        r.read_exact(&mut b)?;
        Ok(u32::from_le_bytes(b))
    }
    let klen = u32_of(r)? as usize;
    let mut key = vec![0u8; klen];
    r.read_exact(&mut key)?;
    let wlen = u32_of(r)? as usize;
    let mut wit = vec![0u8; wlen];
    r.read_exact(&mut wit)?;
    let k = u32_of(r)?;
    let n = u32_of(r)? as usize;
    let start = u32_of(r)?;
    let mut finals_b = vec![0u8; n.div_ceil(8)];
    r.read_exact(&mut finals_b)?;
    let finals: Vec<bool> = (0..n).map(|q| finals_b[q / 8] & (1 << (q % 8)) != 0).collect();
    let mut table = Vec::with_capacity(n * k as usize);
    for _ in 0..n * k as usize {
        table.push(u32_of(r)?);
    }
    Ok(LangRep {
        key: key.into(),
        witness: String::from_utf8(wit).expect("witnesses are ASCII"),
        dfa: Dfa::new(k, start, finals, table),
    })
}

/// The full DP state after a run.
pub struct Enumeration {
    pub measure: SizeMeasure,
    pub max_size: u64,
    nt_count: usize,
    buckets: Vec<Vec<Bucket>>, // [nt][size]
    /// Per nonterminal: canonical key -> first size seen.
    first_size: Vec<HashMap<Box<[u8]>, u64>>,
    mem_used: usize,
    spill_seq: usize,
}

impl Enumeration {
    /// Representatives first seen for `nt` at exactly `size`.
    pub fn bucket(&self, nt: usize, size: u64) -> Result<Vec<LangRep>, CensusError> {
        self.buckets[nt][size as usize].load()
    }

    pub fn bucket_len(&self, nt: usize, size: u64) -> usize {
        self.buckets[nt][size as usize].len()
    }

    pub fn first_size_of(&self, nt: usize, key: &[u8]) -> Option<u64> {
        self.first_size[nt].get(key).copied()
    }

    pub fn nt_count(&self) -> usize {
        self.nt_count
    }
}

/// Runs the deduplicating DP for every nonterminal up to `max_size`.
pub fn enumerate_expressions(
    cfg: &WeightedCfg,
    measure: SizeMeasure,
    max_size: u64,
    opts: &CensusOptions,
) -> Result<Enumeration, CensusError> {
    match cfg.validate_size_proper(measure) {
        crate::grammar::SizeProperness::Proper => {}
        crate::grammar::SizeProperness::Improper { cycle } => {
            return Err(CensusError::Improper {
                grammar: cfg.name.clone(),
                measure,
                cycle,
            })
        }
    }
    let nt_count = cfg.nonterminals().len();
    let order = cfg.same_weight_order(measure);
    let minw = cfg.min_weights(measure);
    let style = LetterStyle::for_alphabet(cfg.k);

    let mut enumeration = Enumeration {
        measure,
        max_size,
        nt_count,
        buckets: (0..nt_count)
            .map(|_| Vec::with_capacity(max_size as usize + 1))
            .collect(),
        first_size: vec![HashMap::new(); nt_count],
        mem_used: 0,
        spill_seq: 0,
    };

    let pool = make_pool(opts.workers);

    for n in 0..=max_size {
        for &nt in &order {
            if opts.cancel.cancelled() {
                return Err(CensusError::Cancelled);
            }
            let entries = fill_bucket(cfg, measure, &enumeration, &minw, nt, n, style, opts, &pool)?;
            let bytes: usize = entries.iter().map(LangRep::approx_bytes).sum();
            for e in &entries {
                enumeration.first_size[nt].insert(e.key.clone(), n);
            }
            enumeration.mem_used += bytes;
            enumeration.buckets[nt].push(Bucket::Mem(entries));
            if enumeration.mem_used > opts.mem_budget {
                spill_largest(&mut enumeration, opts)?;
            }
        }
        // Buckets are pushed in `order`, not nonterminal order; fix up so
        // that buckets[nt][n] indexes by size.
        debug_assert!(enumeration.buckets.iter().all(|b| b.len() == n as usize + 1));
    }
    Ok(enumeration)
}

/// Candidate generation for one (nonterminal, size) cell.
#[allow(clippy::too_many_arguments)]
fn fill_bucket(
    cfg: &WeightedCfg,
    measure: SizeMeasure,
    enumeration: &Enumeration,
    minw: &[Option<u64>],
    nt: usize,
    n: u64,
    style: LetterStyle,
    opts: &CensusOptions,
    pool: &Option<rayon::ThreadPool>,
) -> Result<Vec<LangRep>, CensusError> {
    // Tasks: (production, weight split).
    let mut tasks: Vec<(usize, Vec<u64>)> = Vec::new();
    for &pi in cfg.prods_of(nt) {
        let p = &cfg.productions()[pi];
        let w0 = cfg.const_weight(p, measure);
        if w0 > n {
            continue;
        }
        let slots: Vec<usize> = cfg.slots(p).collect();
        let mins: Vec<u64> = slots
            .iter()
            .map(|&s| minw[s].unwrap_or(u64::MAX / 4))
            .collect();
        splits(n - w0, &mins, &mut |ws| tasks.push((pi, ws.to_vec())));
    }

    let run = |tasks: &[(usize, Vec<u64>)]| -> Result<HashMap<Box<[u8]>, LangRep>, CensusError> {
        tasks
            .par_iter()
            .map(|(pi, ws)| compose_task(cfg, enumeration, *pi, ws, style, opts))
            .try_reduce(HashMap::new, |mut a, b| {
                for (k, v) in b {
                    merge_min(&mut a, k, v);
                }
                Ok(a)
            })
    };
    let merged = match pool {
        Some(p) => p.install(|| run(&tasks)),
        None => run(&tasks),
    }?;

    // Deterministic order; drop languages seen at smaller sizes.
    let mut entries: Vec<LangRep> = merged
        .into_values()
        .filter(|e| enumeration.first_size[nt].get(&e.key).is_none())
        .collect();
    entries.sort_by(|a, b| a.key.cmp(&b.key));
    Ok(entries)
}

fn merge_min(map: &mut HashMap<Box<[u8]>, LangRep>, key: Box<[u8]>, v: LangRep) {
    match map.get_mut(&key) {
        None => {
            map.insert(key, v);
        }
        Some(cur) => {
            if v.witness < cur.witness {
                *cur = v;
            }
        }
    }
}

/// All compositions of `total` into `mins.len()` parts with part i at
/// least `mins[i]`.
fn splits(total: u64, mins: &[u64], f: &mut impl FnMut(&[u64])) {
    fn rec(i: usize, left: u64, mins: &[u64], acc: &mut Vec<u64>, f: &mut impl FnMut(&[u64])) {
        if i == mins.len() {
            if left == 0 {
                f(acc);
            }
            return;
        }
        let rest: u64 = mins[i + 1..].iter().sum();
        if left < mins[i] + rest {
            return;
        }
        for w in mins[i]..=(left - rest) {
            acc.push(w);
            rec(i + 1, left - w, mins, acc, f);
            acc.pop();
        }
    }
    if mins.is_empty() {
        if total == 0 {
            f(&[]);
        }
        return;
    }
    let mut acc = Vec::with_capacity(mins.len());
    rec(0, total, mins, &mut acc, f);
}

/// One (production, split) task: the cartesian product over representative
/// buckets, composed into candidates.
fn compose_task(
    cfg: &WeightedCfg,
    enumeration: &Enumeration,
    pi: usize,
    ws: &[u64],
    style: LetterStyle,
    opts: &CensusOptions,
) -> Result<HashMap<Box<[u8]>, LangRep>, CensusError> {
    let p = &cfg.productions()[pi];
    let slots: Vec<usize> = cfg.slots(p).collect();
    let template = p.template.as_ref().expect("census grammars are expression-shaped");

    let mut out = HashMap::new();
    let sub_buckets: Vec<Vec<LangRep>> = slots
        .iter()
        .zip(ws)
        .map(|(&s, &w)| enumeration.buckets[s][w as usize].load())
        .collect::<Result<_, _>>()?;
    if sub_buckets.iter().any(|b| b.is_empty()) {
        return Ok(out);
    }

    let mut idx = vec![0usize; slots.len()];
    loop {
        if opts.cancel.cancelled() {
            return Err(CensusError::Cancelled);
        }
        let parts: Vec<&LangRep> = idx
            .iter()
            .zip(&sub_buckets)
            .map(|(&i, b)| &b[i])
            .collect();
        let witness = instantiate_witness(cfg, p, &parts, style);
        let dfa = eval_template(template, &parts, cfg.k, opts.state_cap).map_err(|source| {
            CensusError::Automata { witness: witness.clone(), source }
        })?;
        let key: Box<[u8]> = canonical_key(&dfa).into();
        merge_min(&mut out, key.clone(), LangRep { key, dfa, witness });

        // Advance the odometer.
        let mut i = slots.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < sub_buckets[i].len() {
                break;
            }
            idx[i] = 0;
        }
    }
}

/// The generated string: terminal surfaces with sub-witnesses spliced in.
fn instantiate_witness(
    cfg: &WeightedCfg,
    p: &crate::grammar::Production,
    parts: &[&LangRep],
    style: LetterStyle,
) -> String {
    let mut s = String::new();
    let mut slot = 0;
    for sym in &p.rhs {
        match sym {
            crate::grammar::Sym::Nt(_) => {
                s.push_str(&parts[slot].witness);
                slot += 1;
            }
            crate::grammar::Sym::T(t) => {
                let term = &cfg.terminals()[*t];
                match term.role {
                    TokenRole::Letter(i) =>

                    {
                        let mut tmp = String::new();
                        crate::regex::push_letter(&mut tmp, style, i);
                        s.push_str(&tmp);
                    }
                    TokenRole::Epsilon => s.push('@'),
                    TokenRole::EmptySet => s.push('#'),
                    TokenRole::Plus => s.push('+'),
                    TokenRole::Star => s.push('*'),
                    TokenRole::LParen => s.push('('),
                    TokenRole::RParen => s.push(')'),
                    TokenRole::ConcatOp => {}
                    TokenRole::Opaque => s.push_str(&term.text),
                }
            }
        }
    }
    s
}

/// Bottom-up DFA of a template instantiation.
fn eval_template(
    t: &Template,
    parts: &[&LangRep],
    k: u32,
    cap: usize,
) -> Result<Dfa, AutomataError> {
    match t {
        Template::Slot(i) => Ok(parts[*i].dfa.clone()),
        Template::Letter(i) => Ok(letter_dfa(k, *i)),
        Template::Epsilon => Ok(eps_dfa(k)),
        Template::EmptySet => Ok(empty_dfa(k)),
        Template::Union(cs) => {
            let mut acc = eval_template(&cs[0], parts, k, cap)?;
            for c in &cs[1..] {
                let d = eval_template(c, parts, k, cap)?;
                acc = dfa_union(&acc, &d, cap)?;
            }
            Ok(acc)
        }
        Template::Concat(cs) => {
            let mut acc = eval_template(&cs[0], parts, k, cap)?;
            for c in &cs[1..] {
                let d = eval_template(c, parts, k, cap)?;
                acc = dfa_concat(&acc, &d, cap)?;
            }
            Ok(acc)
        }
        Template::Star(c) => {
            let d = eval_template(c, parts, k, cap)?;
            dfa_star(&d, cap)
        }
    }
}

fn make_pool(workers: usize) -> Option<rayon::ThreadPool> {
    if workers == 0 {
        None
    } else {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .expect("thread pool"),
        )
    }
}

fn spill_largest(e: &mut Enumeration, opts: &CensusOptions) -> Result<(), CensusError> {
    let dir = match &opts.spill_dir {
        Some(d) => d.clone(),
        None => {
            return Err(CensusError::MemBudget {
                budget: opts.mem_budget,
                used: e.mem_used,
            })
        }
    };
    std::fs::create_dir_all(&dir)?;
    // Spill the largest in-memory buckets until under half the budget.
    while e.mem_used > opts.mem_budget / 2 {
        let mut best: Option<(usize, usize, usize)> = None; // nt, size, bytes
        for (nt, row) in e.buckets.iter().enumerate() {
            for (sz, b) in row.iter().enumerate() {
                if let Bucket::Mem(v) = b {
                    let bytes: usize = v.iter().map(LangRep::approx_bytes).sum();
                    if bytes > 0 && best.map(|(_, _, bb)| bytes > bb).unwrap_or(true) {
                        best = Some((nt, sz, bytes));
                    }
                }
            }
        }
        let (nt, sz, bytes) = match best {
            Some(b) => b,
            None => break,
        };
        let path = dir.join(format!("bucket-{}-{}-{}.bin", nt, sz, e.spill_seq));
        e.spill_seq += 1;
        if let Bucket::Mem(v) = &e.buckets[nt][sz] {
            let mut w = BufWriter::new(std::fs::File::create(&path)?);
            for entry in v {
                write_entry(&mut w, entry)?;
            }
            w.flush()?;
            let count = v.len();
            e.buckets[nt][sz] = Bucket::Disk { path, count };
            e.mem_used -= bytes;
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Census tables
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum LanguageClass {
    Finite,
    General,
}

impl LanguageClass {
    pub fn name(self) -> &'static str {
        match self {
            LanguageClass::Finite => "finite",
            LanguageClass::General => "general",
        }
    }
}

impl std::str::FromStr for LanguageClass {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "finite" => Ok(LanguageClass::Finite),
            "general" => Ok(LanguageClass::General),
            _ => Err(format!("unknown language class `{s}` (finite|general)")),
        }
    }
}

/// Which normal-form grammar drives the census.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CensusGrammar {
    Improved,
    Simple,
    /// Unary-concatenation variant (k = 1 only).
    Unary,
}

impl CensusGrammar {
    pub fn family(self, class: LanguageClass) -> crate::grammar::BuiltinFamily {
        use crate::grammar::BuiltinFamily as F;
        match (self, class) {
            (CensusGrammar::Improved, LanguageClass::General) => F::ImprovedSsnf,
            (CensusGrammar::Improved, LanguageClass::Finite) => F::ImprovedSsnfFinite,
            (CensusGrammar::Simple, LanguageClass::General) => F::SimpleNf,
            (CensusGrammar::Simple, LanguageClass::Finite) => F::SimpleNfFinite,
            (CensusGrammar::Unary, LanguageClass::General) => F::SimpleNfUnary,
            (CensusGrammar::Unary, LanguageClass::Finite) => F::SimpleNfUnaryFinite,
        }
    }
}

/// Counts of languages whose minimal representing expression has each
/// size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusTable {
    pub measure: SizeMeasure,
    pub k: u32,
    pub class: LanguageClass,
    /// rows[n] = number of languages first denotable at size n.
    pub rows: Vec<u64>,
}

impl CensusTable {
    pub fn min_row(&self) -> usize {
        match self.measure {
            SizeMeasure::Alphabetic => 0,
            _ => 1,
        }
    }

    /// TSV rendering: a comment header, then `n<TAB>count` rows.
    pub fn to_tsv(&self) -> String {
        let mut s = format!(
            "# measure={} k={} class={}\n",
            self.measure.name(),
            self.k,
            self.class.name()
        );
        for (n, c) in self.rows.iter().enumerate().skip(self.min_row()) {
            s.push_str(&format!("{n}\t{c}\n"));
        }
        s
    }
}

pub struct CensusResult {
    pub table: CensusTable,
    pub enumeration: Enumeration,
    pub grammar: WeightedCfg,
}

/// Runs the census: grammar languages by first size, plus the ∅ and {ε}
/// atoms at their own sizes (ordinary/rpn size 1, alphabetic width 0).
pub fn census(
    k: u32,
    measure: SizeMeasure,
    class: LanguageClass,
    max_size: u64,
    grammar: CensusGrammar,
    opts: &CensusOptions,
) -> Result<CensusResult, CensusError> {
    let cfg = crate::grammar::builtin_grammar(grammar.family(class), k)?;
    let enumeration = enumerate_expressions(&cfg, measure, max_size, opts)?;
    let mut rows = vec![0u64; max_size as usize + 1];
    for n in 0..=max_size {
        rows[n as usize] = enumeration.bucket_len(cfg.start(), n) as u64;
    }
    let atom_size = match measure {
        SizeMeasure::Alphabetic => 0,
        _ => 1,
    };
    if atom_size <= max_size as usize {
        rows[atom_size] += 2; // ∅ and {ε}, never grammar-generated
    }
    Ok(CensusResult {
        table: CensusTable { measure, k, class, rows },
        enumeration,
        grammar: cfg,
    })
}

/// True iff the two grammars induce identical census tables.
pub fn cross_check_census(
    a: CensusGrammar,
    b: CensusGrammar,
    k: u32,
    measure: SizeMeasure,
    class: LanguageClass,
    max_size: u64,
    opts: &CensusOptions,
) -> Result<bool, CensusError> {
    let ta = census(k, measure, class, max_size, a, opts)?;
    let tb = census(k, measure, class, max_size, b, opts)?;
    Ok(ta.table.rows == tb.table.rows)
}

/// Writes one shortest witness per language: `size<TAB>expression` lines,
/// ascending by (size, expression).
pub fn emit_witnesses(result: &CensusResult, out: &mut impl Write) -> Result<(), CensusError> {
    let start = result.grammar.start();
    let atom_size = match result.table.measure {
        SizeMeasure::Alphabetic => 0u64,
        _ => 1,
    };
    for n in 0..result.table.rows.len() as u64 {
        let mut lines: Vec<String> = Vec::new();
        if n == atom_size {
            lines.push("#".to_string());
            lines.push("@".to_string());
        }
        if n <= result.enumeration.max_size {
            for rep in result.enumeration.bucket(start, n)? {
                lines.push(rep.witness);
            }
        }
        lines.sort();
        for l in lines {
            writeln!(out, "{n}\t{l}")?;
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Plain generation (no deduplication): all derivations by weight
// ---------------------------------------------------------------------------

/// All generated strings of each size up to `max_size` for the start
/// symbol (every parse tree, no language dedup). The per-bucket `cap`
/// guards against runaway growth; exceeding it is an error.
pub fn generate_expressions(
    cfg: &WeightedCfg,
    measure: SizeMeasure,
    max_size: u64,
    cap: usize,
) -> Result<Vec<Vec<String>>, CensusError> {
    match cfg.validate_size_proper(measure) {
        crate::grammar::SizeProperness::Proper => {}
        crate::grammar::SizeProperness::Improper { cycle } => {
            return Err(CensusError::Improper {
                grammar: cfg.name.clone(),
                measure,
                cycle,
            })
        }
    }
    let nt_count = cfg.nonterminals().len();
    let order = cfg.same_weight_order(measure);
    let minw = cfg.min_weights(measure);
    let style = LetterStyle::for_alphabet(cfg.k);
    let mut buckets: Vec<Vec<Vec<String>>> = vec![Vec::new(); nt_count];

    for n in 0..=max_size {
        for &nt in &order {
            let mut out: Vec<String> = Vec::new();
            for &pi in cfg.prods_of(nt) {
                let p = &cfg.productions()[pi];
                let w0 = cfg.const_weight(p, measure);
                if w0 > n {
                    continue;
                }
                let slots: Vec<usize> = cfg.slots(p).collect();
                let mins: Vec<u64> = slots
                    .iter()
                    .map(|&s| minw[s].unwrap_or(u64::MAX / 4))
                    .collect();
                let mut err = None;
                splits(n - w0, &mins, &mut |ws| {
                    if err.is_some() {
                        return;
                    }
                    // Cartesian product of sub-strings.
                    let subs: Vec<&Vec<String>> = slots
                        .iter()
                        .zip(ws)
                        .map(|(&s, &w)| &buckets[s][w as usize])
                        .collect();
                    if subs.iter().any(|b| b.is_empty()) {
                        return;
                    }
                    let mut idx = vec![0usize; slots.len()];
                    loop {
                        let parts: Vec<&str> =
                            idx.iter().zip(&subs).map(|(&i, b)| b[i].as_str()).collect();
                        out.push(witness_from_strs(cfg, p, &parts, style));
                        if out.len() > cap {
                            err = Some(());
                            return;
                        }
                        let mut i = slots.len();
                        loop {
                            if i == 0 {
                                return;
                            }
                            i -= 1;
                            idx[i] += 1;
                            if idx[i] < subs[i].len() {
                                break;
                            }
                            idx[i] = 0;
                        }
                    }
                });
                if err.is_some() {
                    return Err(CensusError::MemBudget { budget: cap, used: cap + 1 });
                }
            }
            buckets[nt].push(out);
        }
    }
    Ok(buckets.swap_remove(cfg.start()))
}

fn witness_from_strs(
    cfg: &WeightedCfg,
    p: &crate::grammar::Production,
    parts: &[&str],
    style: LetterStyle,
) -> String {
    let mut s = String::new();
    let mut slot = 0;
    for sym in &p.rhs {
        match sym {
            crate::grammar::Sym::Nt(_) => {
                s.push_str(parts[slot]);
                slot += 1;
            }
            crate::grammar::Sym::T(t) => {
                let term = &cfg.terminals()[*t];
                match term.role {
                    TokenRole::Letter(i) => crate::regex::push_letter(&mut s, style, i),
                    TokenRole::Epsilon => s.push('@'),
                    TokenRole::EmptySet => s.push('#'),
                    TokenRole::Plus => s.push('+'),
                    TokenRole::Star => s.push('*'),
                    TokenRole::LParen => s.push('('),
                    TokenRole::RParen => s.push(')'),
                    TokenRole::ConcatOp => {}
                    TokenRole::Opaque => s.push_str(&term.text),
                }
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::{builtin_grammar, BuiltinFamily};

    #[test]
    fn finite_unary_ordinary_counts() {
        let opts = CensusOptions::default();
        let r = census(
            1,
            SizeMeasure::Ordinary,
            LanguageClass::Finite,
            10,
            CensusGrammar::Improved,
            &opts,
        )
        .unwrap();
        assert_eq!(&r.table.rows[1..], &[3, 1, 2, 3, 3, 5, 5, 8, 9, 14]);
    }

    #[test]
    fn general_unary_ordinary_counts() {
        let opts = CensusOptions::default();
        let r = census(
            1,
            SizeMeasure::Ordinary,
            LanguageClass::General,
            8,
            CensusGrammar::Improved,
            &opts,
        )
        .unwrap();
        assert_eq!(&r.table.rows[1..], &[3, 2, 3, 4, 5, 9, 12, 17]);
    }

    #[test]
    fn alphabetic_row_zero_is_two() {
        let opts = CensusOptions::default();
        let r = census(
            1,
            SizeMeasure::Alphabetic,
            LanguageClass::General,
            2,
            CensusGrammar::Improved,
            &opts,
        )
        .unwrap();
        assert_eq!(r.table.rows[0], 2);
        assert_eq!(r.table.rows[1], 3);
    }

    #[test]
    fn empty_run_is_empty() {
        let cfg = builtin_grammar(BuiltinFamily::SimpleNfFinite, 1).unwrap();
        let e = enumerate_expressions(&cfg, SizeMeasure::Ordinary, 0, &CensusOptions::default())
            .unwrap();
        for nt in 0..e.nt_count() {
            assert_eq!(e.bucket_len(nt, 0), 0);
        }
    }

    #[test]
    fn prefix_chain_languages_all_distinct() {
        // No duplicates dropped: every generated expression denotes a
        // distinct language.
        let cfg = builtin_grammar(BuiltinFamily::PrefixChain, 2).unwrap();
        let gen = generate_expressions(&cfg, SizeMeasure::Ordinary, 12, 1 << 20).unwrap();
        let e = enumerate_expressions(&cfg, SizeMeasure::Ordinary, 12, &CensusOptions::default())
            .unwrap();
        for n in 0..=12u64 {
            assert_eq!(
                gen[n as usize].len(),
                e.bucket_len(cfg.start(), n),
                "dropped duplicates at size {n}"
            );
        }
    }

    #[test]
    fn spill_roundtrip_is_identical() {
        let dir = std::env::temp_dir().join(format!("rexenum-spill-{}", std::process::id()));
        let tiny = CensusOptions {
            mem_budget: 4 << 10,
            spill_dir: Some(dir.clone()),
            ..CensusOptions::default()
        };
        let a = census(
            1,
            SizeMeasure::Ordinary,
            LanguageClass::Finite,
            9,
            CensusGrammar::Improved,
            &tiny,
        )
        .unwrap();
        let b = census(
            1,
            SizeMeasure::Ordinary,
            LanguageClass::Finite,
            9,
            CensusGrammar::Improved,
            &CensusOptions::default(),
        )
        .unwrap();
        assert_eq!(a.table, b.table);
        let _ = std::fs::remove_dir_all(dir);
    }

    #[test]
    fn witness_files_are_deterministic() {
        let r = census(
            2,
            SizeMeasure::Ordinary,
            LanguageClass::Finite,
            5,
            CensusGrammar::Improved,
            &CensusOptions::default(),
        )
        .unwrap();
        let mut buf1 = Vec::new();
        emit_witnesses(&r, &mut buf1).unwrap();
        let mut buf2 = Vec::new();
        emit_witnesses(&r, &mut buf2).unwrap();
        assert_eq!(buf1, buf2);
        let text = String::from_utf8(buf1).unwrap();
        assert!(text.contains("1\t#"));
        assert!(text.contains("1\t@"));
        assert!(text.contains("1\t0"));
        // Every witness parses and has the stated size.
        for line in text.lines() {
            let (n, w) = line.split_once('\t').unwrap();
            let n: usize = n.parse().unwrap();
            let ast = crate::regex::parse_regex(w, 2).unwrap().ast;
            assert_eq!(ast.size(SizeMeasure::Ordinary), n, "line {line}");
        }
    }
}
