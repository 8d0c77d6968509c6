//! Exponential growth bounds from annihilating polynomials.
//!
//! Writing the annihilator `P = q_d S^d + ... + q_0`, every singularity of
//! the counting series lies among the positive real roots of
//! `q_d(x) · D(x)` where D is the discriminant of P with respect to S
//! (branch points plus leading-coefficient degenerations; for d = 1 the
//! discriminant is trivial and the poles of the rational solution are the
//! roots of `q_1`). The radius of convergence R is one of those roots by
//! positivity of the coefficients, and `a_n` grows like `(1/R)^n` up to a
//! subexponential factor. A previously known exponential bound picks the
//! right root when several candidates exist; with no prior, the smallest
//! positive root gives a safe answer in both directions.

use super::bipoly::{discriminant, BiPoly};
use super::eliminate::{eliminate, ElimOptions};
use super::sturm::{count_roots_in, decide_cmp, real_roots, RootInterval};
use super::unipoly::UniPoly;
use super::AlgebraError;
use crate::grammar::PolySystem;
use crate::regex::SizeMeasure;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Direction {
    Lower,
    Upper,
}

impl std::str::FromStr for Direction {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "lower" => Ok(Direction::Lower),
            "upper" => Ok(Direction::Upper),
            _ => Err(format!("unknown direction `{s}` (lower|upper)")),
        }
    }
}

/// An exponential-order bound `base^n` with its provenance.
#[derive(Debug, Clone)]
pub struct GrowthBound {
    pub direction: Direction,
    /// Midpoint of the computed base interval.
    pub base_mid: BigRational,
    /// Half-width of the base interval (0 when exact).
    pub base_radius: BigRational,
    /// The base exactly, when the singularity is rational.
    pub base_exact: Option<BigRational>,
    /// The selected singularity ρ (base = 1/ρ).
    pub root: RootInterval,
    /// Index of ρ among the positive candidate roots (1-based), and the
    /// candidate count.
    pub selected_index: usize,
    pub candidate_count: usize,
    /// Whether the dominant singularity is provably the only candidate
    /// root of its modulus (None when the check was skipped, Some(false)
    /// when another equal-modulus root exists or could not be excluded).
    pub unique_modulus: Option<bool>,
    /// The annihilating polynomial the bound came from.
    pub annihilator: BiPoly,
    pub grammar: String,
    pub measure: SizeMeasure,
    pub prior_base: Option<BigRational>,
}

impl GrowthBound {
    /// Decimal rendering of the base to `digits` fractional digits,
    /// correctly rounded (refined until the interval rounds to a single
    /// string).
    pub fn base_decimal(&self, digits: u32) -> String {
        decimal_round(&self.base_mid, digits)
    }
}

#[derive(Debug, Clone)]
pub struct GrowthOptions {
    pub direction: Direction,
    /// Known exponential prior: for upper bounds, `a_n ∈ O(prior^n)`; for
    /// lower bounds, `a_n ∈ Ω(prior^n)`.
    pub prior_base: Option<BigRational>,
    /// Half-width target for the reported base.
    pub precision: BigRational,
    pub elim: ElimOptions,
    /// Skip the equal-modulus uniqueness check (it can be slow).
    pub check_unique_modulus: bool,
}

impl Default for GrowthOptions {
    fn default() -> Self {
        GrowthOptions {
            direction: Direction::Upper,
            prior_base: None,
            precision: BigRational::new(BigInt::one(), BigInt::from(10u64).pow(12)),
            elim: ElimOptions::default(),
            check_unique_modulus: true,
        }
    }
}

/// Full pipeline: eliminate, take the candidate-singularity polynomial,
/// isolate its positive real roots, select by the bootstrap rule, invert.
pub fn growth_bound(
    system: &PolySystem,
    grammar_name: &str,
    measure: SizeMeasure,
    opts: &GrowthOptions,
) -> Result<GrowthBound, AlgebraError> {
    let annihilator = eliminate(system, &opts.elim)?;
    growth_bound_from_annihilator(&annihilator, grammar_name, measure, opts)
}

pub fn growth_bound_from_annihilator(
    annihilator: &BiPoly,
    grammar_name: &str,
    measure: SizeMeasure,
    opts: &GrowthOptions,
) -> Result<GrowthBound, AlgebraError> {
    let disc = discriminant(annihilator);
    let lead = annihilator.leading_s();
    let candidates_poly = disc.mul(&lead);
    if candidates_poly.is_zero() {
        return Err(AlgebraError::NoPositiveRoots);
    }

    let mut roots = real_roots(&candidates_poly);
    let mut positive = roots.positive();
    if positive.is_empty() {
        return Err(AlgebraError::NoPositiveRoots);
    }
    let selected = select_singularity(
        &roots.square_free,
        &mut positive,
        opts.prior_base.as_ref(),
        opts.direction,
    )?;

    // Refine the selected root until the reciprocal interval is tight.
    let mut rho = positive[selected].clone();
    let sf = roots.square_free.clone();
    let (base_mid, base_radius, base_exact) = loop {
        if let Some(r) = &rho.exact {
            let base = r.recip();
            break (base.clone(), BigRational::zero(), Some(base));
        }
        let inv_lo = rho.hi.recip();
        let inv_hi = rho.lo.recip();
        let width = &inv_hi - &inv_lo;
        if width <= &opts.precision * BigRational::from_integer(BigInt::from(2)) {
            let two = BigRational::from_integer(BigInt::from(2));
            break ((&inv_lo + &inv_hi) / &two, (&inv_hi - &inv_lo) / two, None);
        }
        super::sturm::bisect_interval(&sf, &mut rho);
    };

    let unique_modulus = if opts.check_unique_modulus {
        Some(unique_modulus_check(&disc, &rho, &sf))
    } else {
        None
    };

    Ok(GrowthBound {
        direction: opts.direction,
        base_mid,
        base_radius,
        base_exact,
        root: rho,
        selected_index: selected + 1,
        candidate_count: positive.len(),
        unique_modulus,
        annihilator: annihilator.clone(),
        grammar: grammar_name.to_string(),
        measure,
        prior_base: opts.prior_base.clone(),
    })
}

/// The bootstrap selection rule over the ascending positive candidate
/// roots ρ_1 < ... < ρ_m.
///
/// Upper direction with prior s (a_n known O(s^n)): minimal j with
/// ρ_j ≥ 1/s, falling back to j = 1. Lower direction with prior t
/// (a_n known Ω(t^n)): maximal j with ρ_j ≤ 1/t, falling back to j = 1.
/// No prior: j = 1.
pub fn select_singularity(
    square_free: &UniPoly,
    roots: &mut [RootInterval],
    prior_base: Option<&BigRational>,
    direction: Direction,
) -> Result<usize, AlgebraError> {
    if roots.is_empty() {
        return Err(AlgebraError::NoPositiveRoots);
    }
    let prior = match prior_base {
        None => return Ok(0),
        Some(p) => p,
    };
    if !prior.is_positive() {
        return Err(AlgebraError::BadPrior);
    }
    let threshold = prior.recip();
    match direction {
        Direction::Upper => {
            for (j, iv) in roots.iter_mut().enumerate() {
                match decide_cmp(square_free, iv, &threshold) {
                    std::cmp::Ordering::Greater | std::cmp::Ordering::Equal => return Ok(j),
                    std::cmp::Ordering::Less => {}
                }
            }
            Ok(0)
        }
        Direction::Lower => {
            let mut best = None;
            for (j, iv) in roots.iter_mut().enumerate() {
                match decide_cmp(square_free, iv, &threshold) {
                    std::cmp::Ordering::Less | std::cmp::Ordering::Equal => best = Some(j),
                    std::cmp::Ordering::Greater => break,
                }
            }
            Ok(best.unwrap_or(0))
        }
    }
}

/// Checks that no *other* root of the discriminant shares the modulus of
/// the selected positive root R. The real candidate -R is decided exactly
/// (via D(-x) and root counting in R's isolating interval); complex
/// candidates are screened with a Graeffe magnitude estimate (a
/// heuristic, reported conservatively).
fn unique_modulus_check(disc: &UniPoly, rho: &RootInterval, deflated: &UniPoly) -> bool {
    if disc.degree().unwrap_or(0) == 0 {
        return true; // D has no zeros at all
    }
    let dsf = disc.square_free_part();
    let dneg = compose_neg(&dsf);
    match &rho.exact {
        Some(r) => {
            // z0 = -R is a root of D?
            if dsf.sign_at_rational(&-r) == 0 {
                return false;
            }
        }
        None => {
            // R is irrational, hence a root of `deflated`; -R roots D iff
            // R roots gcd(deflated, D(-x)). A modular screen decides
            // coprimality cheaply; the exact gcd is only ever computed at
            // small degrees (the integer PRS blows up at large ones), so
            // a non-coprime screen at high degree reports "unverified".
            if !coprime_mod_screen(deflated, &dneg) {
                let small = deflated.degree().unwrap_or(0).max(dneg.degree().unwrap_or(0)) <= 64;
                if !small {
                    return false; // conservative: could not exclude -R
                }
                let h = deflated.gcd(&dneg);
                if h.degree().unwrap_or(0) >= 1 && count_roots_in(&h, &rho.lo, &rho.hi) > 0 {
                    return false;
                }
            }
        }
    }
    graeffe_unique_modulus(disc, rho)
}

/// True iff gcd(a, b) = 1 is certified by some prime (sound: a nontrivial
/// rational gcd stays nontrivial modulo every prime not dividing the
/// leading coefficients).
fn coprime_mod_screen(a: &UniPoly, b: &UniPoly) -> bool {
    const PRIMES: [u64; 3] = [2147483647, 2147483629, 2147483587];
    for p in PRIMES {
        let am = a.reduce_mod_p(p);
        let bm = b.reduce_mod_p(p);
        if am.len() != a.coeffs().len() || bm.len() != b.coeffs().len() {
            continue; // leading coefficient vanished; bad prime
        }
        if super::unipoly::gcd_mod_p(am, bm, p).len() <= 1 {
            return true;
        }
    }
    false
}



/// p(-x).
fn compose_neg(p: &UniPoly) -> UniPoly {
    UniPoly::new(
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
            .collect(),
    )
}

fn graeffe_unique_modulus(disc: &UniPoly, rho: &RootInterval) -> bool {
    let sf = disc.square_free_part();
    let deg = match sf.degree() {
        Some(d) if d >= 2 => d,
        _ => return true,
    };
    // Log-magnitude coefficients through a few root-squaring rounds.
    let mut logs: Vec<f64> = sf
        .coeffs()
        .iter()
        .map(|c| {
            if c.is_zero() {
                f64::NEG_INFINITY
            } else {
                big_log2_abs(c)
            }
        })
        .collect();
    let rounds = 6u32;
    for _ in 0..rounds {
        logs = graeffe_step(&logs);
    }
    // Newton-polygon slopes of the squared polynomial estimate the root
    // magnitudes: |root_i|^(2^rounds) ≈ hull slope. Count roots whose
    // estimated magnitude matches |R| within a loose tolerance.
    let scale = f64::powi(2.0, rounds as i32);
    let target = {
        let mid = rho.midpoint();
        rat_f64(&mid).abs().log2()
    };
    let slopes = newton_polygon_slopes(&logs);
    debug_assert_eq!(slopes.len(), deg);
    let tol = 0.02; // in log2 of the magnitude, after de-scaling
    let close = slopes
        .iter()
        .map(|s| s / scale)
        .filter(|m| (m - target).abs() < tol)
        .count();
    close <= 1
}

fn graeffe_step(logs: &[f64]) -> Vec<f64> {
    // g(x^2) = (-1)^deg e(x)^2 - o(x)^2 splits even/odd; work with
    // log-magnitudes and log-sum-exp, signs dropped (magnitudes only).
    let n = logs.len();
    let mut out = vec![f64::NEG_INFINITY; n];
    for (i, oi) in out.iter_mut().enumerate() {
        // coefficient of y^i gathers products logs[a] + logs[b], a+b = 2i
        let mut acc = f64::NEG_INFINITY;
        for a in 0..n {
            let b = match (2 * i).checked_sub(a) {
                Some(b) if b < n => b,
                _ => continue,
            };
            let t = logs[a] + logs[b];
            acc = log2_add(acc, t);
        }
        *oi = acc;
    }
    out
}

fn log2_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (1.0 + f64::exp2(lo - hi)).log2()
}

/// Slopes of the upper convex hull of (i, log|c_i|), one per root, as
/// log2 of reciprocal magnitude... returned as log2 |root| estimates.
fn newton_polygon_slopes(logs: &[f64]) -> Vec<f64> {
    // Lower convex hull of points (i, logs[i]) read from the right gives
    // -log|root| per unit; standard estimate: |root_j| magnitudes are the
    // slopes of the concave majorant traversed from high degree to low.
    let pts: Vec<(f64, f64)> = logs
        .iter()
        .enumerate()
        .filter(|(_, l)| l.is_finite())
        .map(|(i, &l)| (i as f64, l))
        .collect();
    // Upper hull.
    let mut hull: Vec<(f64, f64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            if (b.1 - a.1) * (p.0 - a.0) <= (p.1 - a.1) * (b.0 - a.0) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut slopes = Vec::new();
    for w in hull.windows(2) {
        let (a, b) = (w[0], w[1]);
        let slope = (b.1 - a.1) / (b.0 - a.0);
        let count = (b.0 - a.0) as usize;
        for _ in 0..count {
            // slope = log2(lead growth per degree); root magnitude
            // estimate is 2^{-slope}.
            slopes.push(-slope);
        }
    }
    slopes
}

fn big_log2_abs(c: &BigInt) -> f64 {
    let a = c.magnitude();
    let bits = a.bits();
    if bits <= 52 {
        let v: f64 = a.to_string().parse().unwrap();
        v.log2()
    } else {
        let shift = bits - 52;
        let hi: BigInt = BigInt::from(a.clone()) >> shift;
        let v: f64 = hi.magnitude().to_string().parse().unwrap();
        v.log2() + shift as f64
    }
}

fn rat_f64(r: &BigRational) -> f64 {
    let n: f64 = r.numer().to_string().parse().unwrap_or(f64::NAN);
    let d: f64 = r.denom().to_string().parse().unwrap_or(f64::NAN);
    n / d
}

/// Correctly rounded decimal string with `digits` fractional digits.
pub fn decimal_round(v: &BigRational, digits: u32) -> String {
    let scale = BigInt::from(10u64).pow(digits);
    let scaled = v * BigRational::from_integer(scale.clone());
    // Round half away from zero.
    let two = BigInt::from(2);
    let num = scaled.numer().clone();
    let den = scaled.denom().clone();
    let doubled = &num * &two;
    let q = &doubled / &den; // floor for positive
    let mut int = &q / &two;
    if (&q % &two).abs() == BigInt::one() {
        if q.is_negative() {
            int -= 1u8;
        } else {
            int += 1u8;
        }
    }
    let neg = int.is_negative();
    let int = int.abs();
    let whole = &int / &scale;
    let frac = &int % &scale;
    let mut s = String::new();
    if neg {
        s.push('-');
    }
    s.push_str(&whole.to_string());
    if digits > 0 {
        s.push('.');
        let f = frac.to_string();
        for _ in f.len()..digits as usize {
            s.push('0');
        }
        s.push_str(&f);
    }
    s
}

/// Exports a bound as JSON with a provenance block.
pub fn bound_to_json(b: &GrowthBound, order_used: usize, method: &str) -> serde_json::Value {
    serde_json::json!({
        "direction": match b.direction { Direction::Lower => "lower", Direction::Upper => "upper" },
        "base": b.base_decimal(9),
        "base_exact": b.base_exact.as_ref().map(|r| r.to_string()),
        "radius_at_most": format!("{:.1e}", rat_f64(&b.base_radius)),
        "singularity": {
            "lo": b.root.lo.to_string(),
            "hi": b.root.hi.to_string(),
            "exact": b.root.exact.as_ref().map(|r| r.to_string()),
            "selected_index": b.selected_index,
            "candidates": b.candidate_count,
        },
        "unique_modulus_verified": b.unique_modulus,
        "annihilator": annihilator_json(&b.annihilator),
        "provenance": {
            "grammar": b.grammar,
            "measure": b.measure.name(),
            "prior_base": b.prior_base.as_ref().map(|p| p.to_string()),
            "series_order": order_used,
            "method": method,
            "tool_version": env!("CARGO_PKG_VERSION"),
        },
    })
}

/// JSON form of a bivariate polynomial: rows of integer strings, rows
/// indexed by S-degree, entries by x-degree ascending.
pub fn annihilator_json(p: &BiPoly) -> serde_json::Value {
    serde_json::Value::Array(
        p.coeffs_s()
            .iter()
            .map(|q| {
                serde_json::Value::Array(
                    q.coeffs()
                        .iter()
                        .map(|c| serde_json::Value::String(c.to_string()))
                        .collect(),
                )
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn selection_rule_on_synthetic_roots() {
        // Roots {0.1, 0.3, 0.6} with upper prior 5 picks 0.3:
        // p = (10x-1)(10x-3)(10x-6).
        let p = UniPoly::from_i64(&[-1, 10])
            .mul(&UniPoly::from_i64(&[-3, 10]))
            .mul(&UniPoly::from_i64(&[-6, 10]));
        let mut roots = real_roots(&p);
        let mut pos = roots.positive();
        assert_eq!(pos.len(), 3);
        let j = select_singularity(
            &roots.square_free,
            &mut pos,
            Some(&rat(5, 1)),
            Direction::Upper,
        )
        .unwrap();
        assert_eq!(pos[j].exact, Some(rat(3, 10)));

        // Lower prior 4 picks the largest root ≤ 1/4: 0.1? 1/4 = 0.25:
        // roots ≤ 0.25: {0.1} -> picks 0.1.
        let j = select_singularity(
            &roots.square_free,
            &mut pos,
            Some(&rat(4, 1)),
            Direction::Lower,
        )
        .unwrap();
        assert_eq!(pos[j].exact, Some(rat(1, 10)));

        // No prior: smallest.
        let j = select_singularity(&roots.square_free, &mut pos, None, Direction::Upper).unwrap();
        assert_eq!(j, 0);
    }

    #[test]
    fn decimal_rounding() {
        assert_eq!(decimal_round(&rat(1, 2), 9), "0.500000000");
        assert_eq!(decimal_round(&rat(2, 1), 9), "2.000000000");
        assert_eq!(decimal_round(&rat(25676, 10000), 4), "2.5676");
        assert_eq!(decimal_round(&rat(-1, 3), 4), "-0.3333");
        assert_eq!(decimal_round(&rat(15, 10000), 3), "0.002"); // half up
        assert_eq!(decimal_round(&rat(999999999999i64, 1000000000000i64), 4), "1.0000");
    }
}
