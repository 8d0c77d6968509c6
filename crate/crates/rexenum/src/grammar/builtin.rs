//! The built-in grammar families.
//!
//! Each family instantiates to a concrete [`WeightedCfg`] for a given
//! alphabet size. The trie families carry index-family productions
//! (`Z`-sums over increasing index sequences) that are expanded
//! explicitly for generation; for the analysis pipeline,
//! [`builtin_system`] emits a symmetry-reduced polynomial system in which
//! all letter-indexed nonterminals are identified and the `Z`-sums become
//! binomial-weighted powers. Both routes have the same series.

use super::{CfgBuilder, GrammarError, Monomial, PolySystem, Polynomial, WeightedCfg};
use crate::regex::SizeMeasure;
use num_bigint::BigInt;
use num_integer::binomial;

/// Grammar families available as `builtin:<name>,k=<k>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinFamily {
    /// All valid regular expressions.
    ValidRegex,
    /// Nested prefix chains `w1(ε+w2(ε+...))`.
    PrefixChain,
    /// Star-free expressions mirroring tries (distinct finite languages).
    Trie,
    /// Starred-trie expressions (distinct regular languages).
    StarTrie,
    /// Normalized expressions: ordered variadic sums, no redundant stars.
    SimpleNf,
    /// SimpleNf with commutative-concatenation ordering (unary alphabets).
    SimpleNfUnary,
    /// Strong-star-normal-form expressions with ε-flavor tracking.
    ImprovedSsnf,
    /// Star-free restrictions of the normal-form grammars.
    SimpleNfFinite,
    SimpleNfUnaryFinite,
    ImprovedSsnfFinite,
}

impl BuiltinFamily {
    pub const ALL: [BuiltinFamily; 10] = [
        BuiltinFamily::ValidRegex,
        BuiltinFamily::PrefixChain,
        BuiltinFamily::Trie,
        BuiltinFamily::StarTrie,
        BuiltinFamily::SimpleNf,
        BuiltinFamily::SimpleNfUnary,
        BuiltinFamily::ImprovedSsnf,
        BuiltinFamily::SimpleNfFinite,
        BuiltinFamily::SimpleNfUnaryFinite,
        BuiltinFamily::ImprovedSsnfFinite,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinFamily::ValidRegex => "valid-regex",
            BuiltinFamily::PrefixChain => "prefix-chain",
            BuiltinFamily::Trie => "trie",
            BuiltinFamily::StarTrie => "star-trie",
            BuiltinFamily::SimpleNf => "simple-nf",
            BuiltinFamily::SimpleNfUnary => "simple-nf-unary",
            BuiltinFamily::ImprovedSsnf => "improved-ssnf",
            BuiltinFamily::SimpleNfFinite => "simple-nf-finite",
            BuiltinFamily::SimpleNfUnaryFinite => "simple-nf-unary-finite",
            BuiltinFamily::ImprovedSsnfFinite => "improved-ssnf-finite",
        }
    }
}

impl std::str::FromStr for BuiltinFamily {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        BuiltinFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown builtin grammar `{s}`"))
    }
}

/// Instantiates a family for alphabet size `k`.
pub fn builtin_grammar(family: BuiltinFamily, k: u32) -> Result<WeightedCfg, GrammarError> {
    if k == 0 {
        return Err(GrammarError::BadAlphabet { name: family.name().into(), k });
    }
    let unary_only = matches!(
        family,
        BuiltinFamily::SimpleNfUnary | BuiltinFamily::SimpleNfUnaryFinite
    );
    if unary_only && k != 1 {
        return Err(GrammarError::BadAlphabet { name: family.name().into(), k });
    }
    Ok(match family {
        BuiltinFamily::ValidRegex => valid_regex(k),
        BuiltinFamily::PrefixChain => prefix_chain(k),
        BuiltinFamily::Trie => trie(k),
        BuiltinFamily::StarTrie => star_trie(k),
        BuiltinFamily::SimpleNf => simple_nf(k, true),
        BuiltinFamily::SimpleNfFinite => simple_nf(k, false),
        BuiltinFamily::SimpleNfUnary => simple_nf_unary(true),
        BuiltinFamily::SimpleNfUnaryFinite => simple_nf_unary(false),
        BuiltinFamily::ImprovedSsnf => improved_ssnf(k, true),
        BuiltinFamily::ImprovedSsnfFinite => improved_ssnf(k, false),
    })
}

fn valid_regex(k: u32) -> WeightedCfg {
    let mut b = CfgBuilder::new("valid-regex", k);
    b.start("S");
    b.rule("S", "E+");
    b.rule("S", "E.");
    b.rule("S", "G");
    b.rule("E+", "E+ + F");
    b.rule("E+", "F + F");
    b.rule("F", "E.");
    b.rule("F", "G");
    b.rule("E.", "E. • G");
    b.rule("E.", "G • G");
    b.rule("G", "E*");
    b.rule("G", "C");
    b.rule("G", "P");
    b.rule("C", "#");
    b.rule("C", "@");
    for i in 0..k {
        b.rule("C", &format!("a{i}"));
    }
    b.rule("E*", "G *");
    b.rule("P", "( S )");
    b.finish()
}

fn prefix_chain(k: u32) -> WeightedCfg {
    let mut b = CfgBuilder::new("prefix-chain", k);
    b.start("S");
    b.rule("S", "Y");
    b.rule("S", "Y • ( @ + S )");
    for i in 0..k {
        b.rule("Y", &format!("a{i} • Y"));
        b.rule("Y", &format!("a{i}"));
    }
    b.finish()
}

/// All strictly increasing index sequences of length ≥ 2 over `0..k`.
fn increasing_sequences(k: u32, exclude: Option<u32>) -> Vec<Vec<u32>> {
    let letters: Vec<u32> = (0..k).filter(|&i| Some(i) != exclude).collect();
    let m = letters.len();
    let mut out = Vec::new();
    for mask in 0u32..(1 << m) {
        if mask.count_ones() < 2 {
            continue;
        }
        out.push(
            (0..m)
                .filter(|&j| mask & (1 << j) != 0)
                .map(|j| letters[j])
                .collect(),
        );
    }
    out.sort();
    out
}

fn sum_rule(parts: &[String]) -> String {
    parts.join(" + ")
}

fn trie(k: u32) -> WeightedCfg {
    let mut b = CfgBuilder::new("trie", k);
    b.start("S");
    b.rule("S", "Y");
    b.rule("S", "Z");
    b.rule("E", "Y");
    b.rule("E", "( Z )");
    b.rule("E", "( @ + S )");
    for i in 0..k {
        b.rule("Y", &format!("P{i}"));
    }
    for seq in increasing_sequences(k, None) {
        let parts: Vec<String> = seq.iter().map(|i| format!("P{i}")).collect();
        b.rule("Z", &sum_rule(&parts));
    }
    for i in 0..k {
        b.rule(&format!("P{i}"), &format!("a{i}"));
        b.rule(&format!("P{i}"), &format!("a{i} • E"));
    }
    // Z must exist as a nonterminal even when it has no productions (k=1).
    b.nt("Z");
    b.finish()
}

fn star_trie(k: u32) -> WeightedCfg {
    let mut b = CfgBuilder::new("star-trie", k);
    b.start("S");
    b.rule("S", "Y");
    b.rule("S", "Z");
    b.rule("E", "Y");
    b.rule("E", "( Z )");
    b.rule("E", "( @ + Y' )");
    b.rule("E", "( @ + Z )");
    for i in 0..k {
        b.rule(&format!("E{i}"), &format!("Y{i}"));
        b.rule(&format!("E{i}"), &format!("( Z{i} )"));
        b.rule(&format!("E{i}"), &format!("( @ + Y{i}' )"));
        b.rule(&format!("E{i}"), &format!("( @ + Z{i} )"));
    }
    for i in 0..k {
        b.rule("Y", &format!("P{i}"));
        b.rule("Y'", &format!("P{i}'"));
        for j in 0..k {
            if i != j {
                b.rule(&format!("Y{i}"), &format!("P{j}"));
                b.rule(&format!("Y{i}'"), &format!("P{j}'"));
            }
        }
    }
    for seq in increasing_sequences(k, None) {
        let parts: Vec<String> = seq.iter().map(|i| format!("P{i}'")).collect();
        b.rule("Z", &sum_rule(&parts));
    }
    for i in 0..k {
        for seq in increasing_sequences(k, Some(i)) {
            let parts: Vec<String> = seq.iter().map(|j| format!("P{j}'")).collect();
            b.rule(&format!("Z{i}"), &sum_rule(&parts));
        }
    }
    for i in 0..k {
        b.rule(&format!("P{i}"), &format!("a{i}"));
        b.rule(&format!("P{i}"), &format!("a{i} • E"));
        b.rule(&format!("P{i}'"), &format!("a{i}"));
        b.rule(&format!("P{i}'"), &format!("a{i} • E"));
        for j in 0..k {
            b.rule(&format!("P{i}"), &format!("a{i} • a{j} *"));
            b.rule(&format!("P{i}"), &format!("a{i} • a{j} * • E{j}"));
            if i != j {
                b.rule(&format!("P{i}'"), &format!("a{i} • a{j} *"));
                b.rule(&format!("P{i}'"), &format!("a{i} • a{j} * • E{j}"));
            }
        }
    }
    // Index families may be empty for k=1 but must exist.
    b.nt("Z");
    for i in 0..k {
        b.nt(&format!("Z{i}"));
        b.nt(&format!("Y{i}"));
        b.nt(&format!("Y{i}'"));
    }
    b.finish()
}

fn simple_nf(k: u32, with_star: bool) -> WeightedCfg {
    let name = if with_star { "simple-nf" } else { "simple-nf-finite" };
    let mut b = CfgBuilder::new(name, k);
    b.start("S");
    for alt in ["Q", "A", "T", "C"] {
        b.rule("S", alt);
    }
    for alt in ["A + @", "T + @", "C + @"] {
        b.rule("Q", alt);
    }
    b.rule("A", "T + A_T");
    b.rule("A", "C + A_C");
    b.rule("A_T", "T");
    b.rule("A_T", "T + A_T");
    b.rule("A_T", "A_C");
    b.rule("A_C", "C");
    b.rule("A_C", "C + A_C");
    for i in 0..k {
        b.rule("T", &format!("a{i}"));
    }
    b.rule("C", "C0 • C0");
    b.rule("C", "C0 • C");
    b.rule("C0", "( Q )");
    b.rule("C0", "( A )");
    b.rule("C0", "T");
    if with_star {
        b.rule("S", "K");
        b.rule("A", "K + A_K");
        b.rule("A_C", "A_K");
        b.rule("A_K", "K");
        b.rule("A_K", "K + A_K");
        b.rule("C0", "K");
        b.rule("K", "( A ) *");
        b.rule("K", "T *");
        b.rule("K", "( C ) *");
    }
    b.finish()
}

fn simple_nf_unary(with_star: bool) -> WeightedCfg {
    let name = if with_star { "simple-nf-unary" } else { "simple-nf-unary-finite" };
    let mut b = CfgBuilder::new(name, 1);
    b.start("S");
    for alt in ["Q", "A", "T", "C"] {
        b.rule("S", alt);
    }
    for alt in ["A + @", "T + @", "C + @"] {
        b.rule("Q", alt);
    }
    b.rule("A", "T + A_T");
    b.rule("A", "C + A_C");
    b.rule("A_T", "T");
    b.rule("A_T", "T + A_T");
    b.rule("A_T", "A_C");
    b.rule("A_C", "C");
    b.rule("A_C", "C + A_C");
    b.rule("T", "a0");
    // Concatenation is commutative over one letter, so factors are ordered
    // by kind just like summands. The bare-A alternative of C_A is
    // parenthesized like its siblings.
    b.rule("C", "( Q ) • C_Q");
    b.rule("C", "( A ) • C_A");
    b.rule("C", "T • C_T");
    b.rule("C_Q", "( Q )");
    b.rule("C_Q", "( Q ) • C_Q");
    b.rule("C_Q", "C_A");
    b.rule("C_A", "( A )");
    b.rule("C_A", "( A ) • C_A");
    b.rule("C_A", "C_T");
    b.rule("C_T", "T");
    b.rule("C_T", "T • C_T");
    if with_star {
        b.rule("S", "K");
        b.rule("A", "K + A_K");
        b.rule("A_C", "A_K");
        b.rule("A_K", "K");
        b.rule("A_K", "K + A_K");
        b.rule("C", "K • C_K");
        b.rule("C_T", "C_K");
        b.rule("C_K", "K");
        b.rule("C_K", "K • C_K");
        b.rule("K", "( A ) *");
        b.rule("K", "T *");
        b.rule("K", "( C ) *");
    }
    b.finish()
}

fn improved_ssnf(k: u32, with_star: bool) -> WeightedCfg {
    let name = if with_star { "improved-ssnf" } else { "improved-ssnf-finite" };
    let mut b = CfgBuilder::new(name, k);
    b.start("S");
    b.rule("S", "S+");
    b.rule("S", "S-");
    for alt in ["Q+", "A+", "C+"] {
        b.rule("S+", alt);
    }
    for alt in ["A-", "T-", "C-"] {
        b.rule("S-", alt);
    }
    for alt in ["A- + @", "T- + @", "C- + @"] {
        b.rule("Q+", alt);
    }
    b.rule("A+", "T- + A+C");
    b.rule("A+", "C- + A+C");
    b.rule("A+", "A- + A+C");
    b.rule("A+", "C+ + A+C");
    b.rule("A-", "T- + A-T");
    b.rule("A-", "C- + A-C");
    b.rule("A-T", "T-");
    b.rule("A-T", "T- + A-T");
    b.rule("A-T", "A-C");
    b.rule("A+C", "C+");
    b.rule("A+C", "C+ + A+C");
    b.rule("A-C", "C-");
    b.rule("A-C", "C- + A-C");
    for i in 0..k {
        b.rule("T-", &format!("a{i}"));
    }
    b.rule("C+", "C+0 • C+0");
    b.rule("C+", "C+0 • C+");
    b.rule("C-", "C-0 • C-0");
    b.rule("C-", "C-0 • C+0");
    b.rule("C-", "C+0 • C-0");
    b.rule("C-", "C-0 • C-");
    b.rule("C-", "C-0 • C+");
    b.rule("C-", "C+0 • C-");
    b.rule("C+0", "( Q+ )");
    b.rule("C+0", "( A+ )");
    b.rule("C-0", "( A- )");
    b.rule("C-0", "T-");
    if with_star {
        b.rule("S+", "K+");
        b.rule("A+", "K+ + A+K");
        b.rule("A+C", "A+K");
        b.rule("A+K", "K+");
        b.rule("A+K", "K+ + A+K");
        b.rule("C+0", "K+");
        b.rule("K+", "( A- ) *");
        b.rule("K+", "T- *");
        b.rule("K+", "( C- ) *");
    }
    b.finish()
}

// ---------------------------------------------------------------------------
// Symmetry-reduced polynomial systems
// ---------------------------------------------------------------------------

/// Token weights under a measure: letter, plus, star, one parenthesis,
/// epsilon, concatenation marker.
fn token_weights(m: SizeMeasure) -> (u64, u64, u64, u64, u64, u64) {
    match m {
        SizeMeasure::Ordinary => (1, 1, 1, 1, 1, 0),
        SizeMeasure::ReversePolish => (1, 1, 1, 0, 1, 1),
        SizeMeasure::Alphabetic => (1, 0, 0, 0, 0, 0),
    }
}

/// The polynomial system used by the analysis pipeline.
///
/// For the trie families this is the symmetry-reduced system: all letter
/// positions are identified, so the index families `P_i`, `E_i`, `Z_i`
/// collapse to single variables, and the `Z`-sums of `t+1` distinct
/// summands become `C(k, t+1) x^{t·w_+} P^{t+1}`. For every other family
/// it is the plain commutative image of the expanded grammar.
pub fn builtin_system(
    family: BuiltinFamily,
    k: u32,
    m: SizeMeasure,
) -> Result<PolySystem, GrammarError> {
    match family {
        BuiltinFamily::Trie => Ok(trie_system(k, m)),
        BuiltinFamily::StarTrie => Ok(star_trie_system(k, m)),
        _ => Ok(builtin_grammar(family, k)?.commutative_image(m)),
    }
}

struct SysBuilder {
    vars: Vec<String>,
    equations: Vec<Polynomial>,
}

impl SysBuilder {
    fn new(vars: &[&str]) -> SysBuilder {
        SysBuilder {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            equations: vec![Polynomial::zero(); vars.len()],
        }
    }

    fn var(&self, name: &str) -> usize {
        self.vars.iter().position(|v| v == name).unwrap()
    }

    fn add(&mut self, lhs: &str, coeff: i64, xpow: u64, vars: &[(&str, u32)]) {
        self.add_big(lhs, BigInt::from(coeff), xpow, vars);
    }

    fn add_big(&mut self, lhs: &str, coeff: BigInt, xpow: u64, vars: &[(&str, u32)]) {
        let lhs = self.var(lhs);
        let mut vs: Vec<(usize, u32)> =
            vars.iter().map(|(n, e)| (self.var(n), *e)).collect();
        vs.sort_unstable();
        self.equations[lhs].0.push(Monomial { coeff, xpow, vars: vs });
    }

    fn finish(mut self, start: &str) -> PolySystem {
        for eq in &mut self.equations {
            eq.normalize();
        }
        let start = self.var(start);
        PolySystem { vars: self.vars, start, equations: self.equations }
    }
}

fn trie_system(k: u32, m: SizeMeasure) -> PolySystem {
    let (l, p, _r, g, e, cat) = token_weights(m);
    let kk = k as u64;
    let mut b = SysBuilder::new(&["S", "E", "Y", "Z", "P"]);
    // S = Y + Z
    b.add("S", 1, 0, &[("Y", 1)]);
    b.add("S", 1, 0, &[("Z", 1)]);
    // E = Y + (Z) + (ε+S)
    b.add("E", 1, 0, &[("Y", 1)]);
    b.add("E", 1, 2 * g, &[("Z", 1)]);
    b.add("E", 1, 2 * g + e + p, &[("S", 1)]);
    // Y = k P
    b.add_big("Y", BigInt::from(kk), 0, &[("P", 1)]);
    // Z = Σ_{t≥1} C(k, t+1) x^{t·w+} P^{t+1}
    for t in 1..k as u64 {
        let c = binomial(BigInt::from(kk), BigInt::from(t + 1));
        b.add_big("Z", c, t * p, &[("P", (t + 1) as u32)]);
    }
    // P = a + a·E
    b.add("P", 1, l, &[]);
    b.add("P", 1, l + cat, &[("E", 1)]);
    b.finish("S")
}

fn star_trie_system(k: u32, m: SizeMeasure) -> PolySystem {
    let (l, p, r, g, e, cat) = token_weights(m);
    let kk = k as i64;
    let mut b = SysBuilder::new(&[
        "S", "E", "EI", "Y", "Y'", "YI", "YI'", "Z", "ZI", "P", "P'",
    ]);
    b.add("S", 1, 0, &[("Y", 1)]);
    b.add("S", 1, 0, &[("Z", 1)]);
    // E = Y + (Z) + (ε+Y') + (ε+Z)
    b.add("E", 1, 0, &[("Y", 1)]);
    b.add("E", 1, 2 * g, &[("Z", 1)]);
    b.add("E", 1, 2 * g + e + p, &[("Y'", 1)]);
    b.add("E", 1, 2 * g + e + p, &[("Z", 1)]);
    b.add("EI", 1, 0, &[("YI", 1)]);
    b.add("EI", 1, 2 * g, &[("ZI", 1)]);
    b.add("EI", 1, 2 * g + e + p, &[("YI'", 1)]);
    b.add("EI", 1, 2 * g + e + p, &[("ZI", 1)]);
    b.add("Y", kk, 0, &[("P", 1)]);
    b.add("Y'", kk, 0, &[("P'", 1)]);
    b.add("YI", kk - 1, 0, &[("P", 1)]);
    b.add("YI'", kk - 1, 0, &[("P'", 1)]);
    for t in 1..k as u64 {
        let c = binomial(BigInt::from(k as u64), BigInt::from(t + 1));
        b.add_big("Z", c, t * p, &[("P'", (t + 1) as u32)]);
    }
    for t in 1..(k as u64).saturating_sub(1) + 1 {
        // ZI ranges over k-1 letters; C(k-1, t+1) vanishes when t+1 > k-1.
        let c = binomial(BigInt::from(k as u64 - 1), BigInt::from(t + 1));
        if c != BigInt::from(0) {
            b.add_big("ZI", c, t * p, &[("P'", (t + 1) as u32)]);
        }
    }
    // P = a + a·E + Σ_j a·a_j* + Σ_j a·a_j*·E_j
    b.add("P", 1, l, &[]);
    b.add("P", 1, l + cat, &[("E", 1)]);
    b.add("P", kk, 2 * l + cat + r, &[]);
    b.add("P", kk, 2 * l + 2 * cat + r, &[("EI", 1)]);
    b.add("P'", 1, l, &[]);
    b.add("P'", 1, l + cat, &[("E", 1)]);
    b.add("P'", kk - 1, 2 * l + cat + r, &[]);
    b.add("P'", kk - 1, 2 * l + 2 * cat + r, &[("EI", 1)]);
    b.finish("S")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::Sym;

    #[test]
    fn prefix_chain_image() {
        let cfg = builtin_grammar(BuiltinFamily::PrefixChain, 2).unwrap();
        let sys = cfg.commutative_image(SizeMeasure::Ordinary);
        let s = sys.var_index("S").unwrap();
        let y = sys.var_index("Y").unwrap();
        // S = Y + Y S x^4
        let eq = &sys.equations[s];
        assert_eq!(eq.0.len(), 2);
        assert!(eq.0.iter().any(|mo| mo.xpow == 0 && mo.vars == vec![(y, 1)]));
        assert!(eq
            .0
            .iter()
            .any(|mo| mo.xpow == 4 && mo.vars == vec![(s, 1), (y, 1)]));
        // Y = 2x Y + 2x
        let eq = &sys.equations[y];
        assert!(eq
            .0
            .iter()
            .any(|mo| mo.xpow == 1 && mo.vars.is_empty() && mo.coeff == 2.into()));
        assert!(eq
            .0
            .iter()
            .any(|mo| mo.xpow == 1 && mo.vars == vec![(y, 1)] && mo.coeff == 2.into()));
    }

    #[test]
    fn trie_z_expansion_count() {
        // 2^3 - 3 - 1 = 4 Z-productions for k=3.
        let cfg = builtin_grammar(BuiltinFamily::Trie, 3).unwrap();
        let z = cfg.nt_index("Z").unwrap();
        assert_eq!(cfg.prods_of(z).len(), 4);
        let k1 = builtin_grammar(BuiltinFamily::Trie, 1).unwrap();
        let z1 = k1.nt_index("Z").unwrap();
        assert_eq!(k1.prods_of(z1).len(), 0);
        assert_eq!(k1.nonterminals().len(), 5); // S, E, Y, P0, Z
    }

    #[test]
    fn families_instantiate_and_are_proper_where_expected() {
        for fam in BuiltinFamily::ALL {
            for k in 1..=3u32 {
                let cfg = match builtin_grammar(fam, k) {
                    Ok(c) => c,
                    Err(_) => continue, // unary-only families
                };
                assert!(
                    cfg.validate_size_proper(SizeMeasure::Ordinary).is_proper(),
                    "{} k={k} improper under ordinary",
                    cfg.name
                );
                if fam != BuiltinFamily::ValidRegex {
                    for m in [SizeMeasure::ReversePolish, SizeMeasure::Alphabetic] {
                        assert!(
                            cfg.validate_size_proper(m).is_proper(),
                            "{} k={k} improper under {m}",
                            cfg.name
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn valid_regex_proper_only_under_ordinary() {
        // Redundant parentheses weigh nothing under reverse polish length
        // or alphabetic width, so (a), ((a)), ... flood a single weight.
        let cfg = builtin_grammar(BuiltinFamily::ValidRegex, 1).unwrap();
        assert!(cfg.validate_size_proper(SizeMeasure::Ordinary).is_proper());
        assert!(!cfg.validate_size_proper(SizeMeasure::Alphabetic).is_proper());
        assert!(!cfg.validate_size_proper(SizeMeasure::ReversePolish).is_proper());
    }

    #[test]
    fn every_builtin_production_has_a_template() {
        for fam in BuiltinFamily::ALL {
            for k in 1..=3u32 {
                if let Ok(cfg) = builtin_grammar(fam, k) {
                    for p in cfg.productions() {
                        assert!(
                            p.template.is_some(),
                            "{} k={k}: no template for {:?}",
                            cfg.name,
                            p.rhs
                                .iter()
                                .map(|s| match s {
                                    Sym::Nt(n) => cfg.nt_name(*n).to_string(),
                                    Sym::T(t) => cfg.terminals()[*t].text.clone(),
                                })
                                .collect::<Vec<_>>()
                        );
                    }
                }
            }
        }
    }
}
