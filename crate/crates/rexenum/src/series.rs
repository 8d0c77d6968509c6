//! Exact truncated power-series solutions of polynomial systems.
//!
//! A proper system `N_i = p_i(x; N_1..N_m)` has a unique vector of formal
//! power-series solutions with the combinatorial meaning "number of
//! derivations of weight n". [`solve_series`] computes them
//! coefficient-by-coefficient: degree n of every right-hand side depends
//! only on degrees < n, plus same-degree values of variables earlier in
//! the system's same-degree order. This matches the least fixed point of
//! the round-based iteration from the all-zero assignment (a round-based
//! reference implementation backs the tests).

use crate::grammar::PolySystem;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("improper system: series for `{symbol}` does not stabilize (weight-0 cycle)")]
    NonConvergent { symbol: String },
    #[error("unknown symbol `{symbol}`")]
    UnknownSymbol { symbol: String },
}

/// Exact coefficients `a_0..a_N` of a generating function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    pub fn from_rationals(coeffs: Vec<BigRational>) -> TruncatedSeries {
        TruncatedSeries { coeffs }
    }

    pub fn from_integers(coeffs: Vec<BigInt>) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: coeffs
                .into_iter()
                .map(|c| BigRational::from_integer(c))
                .collect(),
        }
    }

    /// Truncation order N (highest exact degree).
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &BigRational {
        &self.coeffs[n]
    }

    /// Integer coefficient vector; None if any coefficient is fractional.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Decimal strings, exactness preserved (JSON export format).
    pub fn decimal_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

/// Solves the system and returns the series of `symbol` to order `n_max`.
///
/// The caller is responsible for size-properness (grammar systems should
/// pass `validate_size_proper` first); an improper system is detected by
/// the round-based stabilization check in debug builds and may loop in
/// release builds only if that contract is violated.
pub fn solve_series(
    system: &PolySystem,
    symbol: &str,
    n_max: usize,
) -> Result<TruncatedSeries, SeriesError> {
    let idx = system
        .var_index(symbol)
        .ok_or_else(|| SeriesError::UnknownSymbol { symbol: symbol.to_string() })?;
    let all = solve_all(system, n_max)?;
    Ok(TruncatedSeries::from_integers(all[idx].clone()))
}

/// Series for every variable, as integer coefficients.
///
/// Degree n of a right-hand side can involve the degree-n coefficient of
/// another variable only through a monomial of x-weight zero whose other
/// factors admit constant terms; the system's same-degree order makes
/// those coefficients available in time, and in the remaining cases the
/// missing top coefficient is multiplied by a zero constant term, so
/// treating it as zero is exact.
pub fn solve_all(system: &PolySystem, n_max: usize) -> Result<Vec<Vec<BigInt>>, SeriesError> {
    let nvars = system.vars.len();
    let order = system.same_degree_order();
    let mut coeffs: Vec<Vec<BigInt>> = vec![Vec::with_capacity(n_max + 1); nvars];

    // Per-monomial prefix products over degrees 0..n-1 (final values only):
    // prefix[j][d] = [x^d] (f_0 ... f_j).
    struct MonoState {
        factors: Vec<usize>,
        prefix: Vec<Vec<BigInt>>,
    }
    let mut states: Vec<Vec<MonoState>> = Vec::with_capacity(nvars);
    for eq in &system.equations {
        let mut v = Vec::with_capacity(eq.0.len());
        for mono in &eq.0 {
            let mut factors = Vec::new();
            for &(var, e) in &mono.vars {
                for _ in 0..e {
                    factors.push(var);
                }
            }
            let prefix = vec![Vec::new(); factors.len()];
            v.push(MonoState { factors, prefix });
        }
        states.push(v);
    }

    for n in 0..=n_max {
        // Phase A: extend caches with the (now final) degree n-1 values.
        if n > 0 {
            let d = n - 1;
            for (vi, eq_states) in states.iter_mut().enumerate() {
                let _ = vi;
                for st in eq_states.iter_mut() {
                    for j in 0..st.factors.len() {
                        debug_assert_eq!(st.prefix[j].len(), d);
                        let val = if j == 0 {
                            coeffs[st.factors[0]][d].clone()
                        } else {
                            let f = &coeffs[st.factors[j]];
                            let prev = &st.prefix[j - 1];
                            let mut acc = BigInt::zero();
                            for (i, p) in prev.iter().enumerate().take(d + 1) {
                                let fc = &f[d - i];
                                if !p.is_zero() && !fc.is_zero() {
                                    acc += p * fc;
                                }
                            }
                            acc
                        };
                        st.prefix[j].push(val);
                    }
                }
            }
        }

        // Phase B: compute degree n of every variable in same-degree order.
        for &vi in &order {
            let mut total = BigInt::zero();
            for (mi, mono) in system.equations[vi].0.iter().enumerate() {
                let xp = mono.xpow as usize;
                if xp > n {
                    continue;
                }
                let t = n - xp;
                let st = &states[vi][mi];
                if st.factors.is_empty() {
                    if t == 0 {
                        total += &mono.coeff;
                    }
                    continue;
                }
                let contrib = if t < n {
                    st.prefix[st.factors.len() - 1][t].clone()
                } else {
                    // Top coefficient: fold over prefixes, reading a
                    // factor's unavailable degree-n value as zero.
                    let top_of = |v: usize| -> BigInt {
                        coeffs[v].get(n).cloned().unwrap_or_else(BigInt::zero)
                    };
                    let mut top = top_of(st.factors[0]);
                    for j in 1..st.factors.len() {
                        let f = &coeffs[st.factors[j]];
                        let prev = &st.prefix[j - 1];
                        let mut acc = match f.first() {
                            Some(f0) => &top * f0,
                            None => BigInt::zero(),
                        };
                        for (i, p) in prev.iter().enumerate().take(n) {
                            if p.is_zero() {
                                continue;
                            }
                            if let Some(fc) = f.get(n - i) {
                                if !fc.is_zero() {
                                    acc += p * fc;
                                }
                            }
                        }
                        top = acc;
                    }
                    top
                };
                if !contrib.is_zero() {
                    total += &mono.coeff * contrib;
                }
            }
            debug_assert_eq!(coeffs[vi].len(), n);
            coeffs[vi].push(total);
        }
    }

    debug_assert!(
        round_iteration_matches(system, &coeffs, n_max.min(12)),
        "coefficient DP disagrees with round-based fixed point"
    );
    Ok(coeffs)
}

/// Reference implementation: iterate the whole system from zero,
/// truncating at `n_max`, until a full round changes nothing. Used as a
/// cross-check; quadratic in the truncation order.
pub fn solve_by_rounds(
    system: &PolySystem,
    n_max: usize,
    max_rounds: usize,
) -> Result<Vec<Vec<BigInt>>, SeriesError> {
    let nvars = system.vars.len();
    let mut cur: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n_max + 1]; nvars];
    for round in 0..max_rounds {
        let mut next: Vec<Vec<BigInt>> = Vec::with_capacity(nvars);
        for eq in &system.equations {
            let mut acc = vec![BigInt::zero(); n_max + 1];
            for mono in &eq.0 {
                let xp = mono.xpow as usize;
                if xp > n_max {
                    continue;
                }
                let mut prod = vec![BigInt::zero(); n_max + 1];
                prod[0] = BigInt::one();
                for &(var, e) in &mono.vars {
                    for _ in 0..e {
                        prod = mul_trunc(&prod, &cur[var], n_max);
                    }
                }
                for d in 0..=(n_max - xp) {
                    if !prod[d].is_zero() {
                        let v = &prod[d] * &mono.coeff;
                        acc[d + xp] += v;
                    }
                }
            }
            next.push(acc);
        }
        if next == cur {
            return Ok(cur);
        }
        cur = next;
        let _ = round;
    }
    Err(SeriesError::NonConvergent {
        symbol: system.vars[system.start].clone(),
    })
}

fn round_iteration_matches(system: &PolySystem, dp: &[Vec<BigInt>], upto: usize) -> bool {
    // Unit-production chains propagate one variable per round, so full
    // stabilization can take about (chain depth)·N rounds, not N+1.
    let budget = (upto + 2) * (system.vars.len() + 1);
    match solve_by_rounds(system, upto, budget) {
        Ok(rounds) => dp
            .iter()
            .zip(&rounds)
            .all(|(a, b)| a.iter().take(upto + 1).eq(b.iter().take(upto + 1))),
        Err(_) => false,
    }
}

pub(crate) fn mul_trunc(a: &[BigInt], b: &[BigInt], n_max: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n_max + 1];
    for (i, ai) in a.iter().enumerate().take(n_max + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(n_max + 1 - i) {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

/// Finite-window growth diagnostic: max of `a_n^(1/n)` over the last
/// `window` coefficients, as a rational approximation. A diagnostic only,
/// never a bound.
pub fn ratio_diagnostic(series: &TruncatedSeries, window: usize) -> Result<BigRational, String> {
    let n = series.order();
    if window == 0 || window > n {
        return Err("window must be between 1 and the series order".into());
    }
    let mut best: Option<f64> = None;
    for i in (n + 1 - window)..=(n + 1 - 1) {
        let c = series.coeff(i);
        if c.is_zero() || c.is_negative() {
            return Err(format!("coefficient a_{i} is not positive"));
        }
        // a^(1/i) via bit length: exact enough for a diagnostic.
        let v = big_nth_root_approx(&c.to_integer(), i);
        best = Some(best.map_or(v, |b: f64| b.max(v)));
    }
    let v = best.unwrap();
    BigRational::from_float(v).ok_or_else(|| "diagnostic out of range".into())
}

fn big_nth_root_approx(a: &BigInt, n: usize) -> f64 {
    let bits = a.bits();
    let log2 = if bits <= 52 {
        (a.to_string().parse::<f64>().unwrap()).log2()
    } else {
        // high bits give the mantissa
        let shift = bits - 52;
        let hi: BigInt = a >> shift;
        let hif: f64 = hi.to_string().parse().unwrap();
        hif.log2() + shift as f64
    };
    (log2 / n as f64).exp2()
}

/// Checks `P(x, f(x)) ≡ 0` through the safely-exact degree window.
///
/// With f known to order N and v the maximal x-degree of P's
/// coefficients, the check covers degrees `0 ..= N - deg_S(P)·v`
/// (a conservative validity margin).
pub fn verify_annihilation(p: &crate::algebra::BiPoly, f: &TruncatedSeries) -> bool {
    let n = f.order();
    let coeffs: Vec<BigRational> = f.coeffs().to_vec();
    let degs = p.deg_s();
    let v = p.max_x_degree();
    let margin = degs.saturating_mul(v);
    if margin > n {
        return false; // not enough coefficients to attest anything
    }
    let upto = n - margin;

    // Horner in S over truncated series.
    let mut acc = vec![BigRational::zero(); n + 1];
    for qi in p.coeffs_s().iter().rev() {
        // acc = acc * f + q_i(x)
        let mut next = vec![BigRational::zero(); n + 1];
        for (i, a) in acc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    let prod = a * b;
                    next[i + j] += prod;
                }
            }
        }
        for (e, c) in qi.coeffs().iter().enumerate() {
            if e <= n && !c.is_zero() {
                next[e] += BigRational::from_integer(c.clone());
            }
        }
        acc = next;
    }
    acc.iter().take(upto + 1).all(|c| c.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::parse_grammar;

    const ITE: &str = "S -> M | U;\nM -> '0' M '1' M | ;\nU -> '0' S | '0' M '1' U;";

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn if_then_else_series() {
        let sys = parse_grammar(ITE)
            .unwrap()
            .commutative_image(crate::regex::SizeMeasure::Ordinary);
        let s = solve_series(&sys, "S", 7).unwrap();
        assert_eq!(s.integer_coeffs().unwrap(), ints(&[1, 1, 2, 3, 6, 10, 20, 35]));
        let m = solve_series(&sys, "M", 8).unwrap();
        assert_eq!(m.integer_coeffs().unwrap(), ints(&[1, 0, 1, 0, 2, 0, 5, 0, 14]));
        let u = solve_series(&sys, "U", 8).unwrap();
        assert_eq!(u.integer_coeffs().unwrap(), ints(&[0, 1, 1, 3, 4, 10, 15, 35, 56]));
    }

    #[test]
    fn catalan_series() {
        // f = x + f^2
        let g = "F -> 'x' | F F;";
        let sys = parse_grammar(g)
            .unwrap()
            .commutative_image(crate::regex::SizeMeasure::Ordinary);
        let f = solve_series(&sys, "F", 7).unwrap();
        assert_eq!(f.integer_coeffs().unwrap(), ints(&[0, 1, 1, 2, 5, 14, 42, 132]));
    }

    #[test]
    fn ratio_diagnostic_windows() {
        let g = "F -> 'x' | F F;";
        let sys = parse_grammar(g)
            .unwrap()
            .commutative_image(crate::regex::SizeMeasure::Ordinary);
        let f = solve_series(&sys, "F", 7).unwrap();
        let r = ratio_diagnostic(&f, 4).unwrap();
        let v = r.to_integer().to_string().parse::<f64>().unwrap()
            + (r.fract().numer().to_string().parse::<f64>().unwrap()
                / r.fract().denom().to_string().parse::<f64>().unwrap());
        assert!(v > 1.9 && v < 4.0, "diagnostic {v} out of range");

        // Geometric series 2^n approaches 2.
        let geo = TruncatedSeries::from_integers(
            (0..20u32).map(|i| BigInt::from(2).pow(i)).collect(),
        );
        let r = ratio_diagnostic(&geo, 3).unwrap();
        let v: f64 = r.numer().to_string().parse::<f64>().unwrap()
            / r.denom().to_string().parse::<f64>().unwrap();
        assert!((v - 2.0).abs() < 0.01);

        // Constant series 1 gives 1.
        let one = TruncatedSeries::from_integers(vec![BigInt::one(); 10]);
        let r = ratio_diagnostic(&one, 3).unwrap();
        let v: f64 = r.numer().to_string().parse::<f64>().unwrap()
            / r.denom().to_string().parse::<f64>().unwrap();
        assert!((v - 1.0).abs() < 1e-9);

        // Zero coefficient in window is an error.
        let z = TruncatedSeries::from_integers(ints(&[1, 0, 1, 0, 1]));
        assert!(ratio_diagnostic(&z, 2).is_err());
    }

    #[test]
    fn dp_matches_round_iteration_deeply() {
        let sys = parse_grammar(ITE)
            .unwrap()
            .commutative_image(crate::regex::SizeMeasure::Ordinary);
        let dp = solve_all(&sys, 25).unwrap();
        let rounds = solve_by_rounds(&sys, 25, 120).unwrap();
        assert_eq!(dp, rounds);
    }
}
