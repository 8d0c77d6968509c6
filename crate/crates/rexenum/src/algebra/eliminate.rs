//! Elimination of a polynomial system to a single annihilating bivariate
//! polynomial in (x, S).
//!
//! The default route substitutes linear-in-themselves equations and takes
//! iterated univariate resultants for the rest, then extracts the unique
//! irreducible factor that annihilates the counting series. Factor
//! extraction finds the minimal-S-degree annihilator by exact linear
//! algebra on series coefficients (screened modulo word-size primes,
//! reconstructed by CRT and rational reconstruction), then confirms both
//! that it annihilates the series and that it divides the resultant
//! output. The alternative route (`Guess`) skips resultants entirely and
//! verifies the guessed polynomial at twice the matching order.

use super::bipoly::BiPoly;
use super::mpoly::{resultant_in, MPoly};
use super::unipoly::UniPoly;
use super::AlgebraError;
use crate::cancel::CancelToken;
use crate::grammar::PolySystem;
use crate::series;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElimMethod {
    /// Iterated resultants, then series-guided factor selection.
    Resultants,
    /// Pure minimal-polynomial guessing from series coefficients.
    Guess,
}

#[derive(Debug, Clone)]
pub struct ElimOptions {
    pub method: ElimMethod,
    /// Cap on the term count of any intermediate multivariate polynomial.
    pub max_terms: usize,
    /// Cap on the x-degree or S-degree of intermediate polynomials.
    pub max_degree: u32,
    /// Cap on the series order used for guessing.
    pub max_series_order: usize,
    pub cancel: CancelToken,
}

impl Default for ElimOptions {
    fn default() -> Self {
        ElimOptions {
            method: ElimMethod::Resultants,
            max_terms: 500_000,
            max_degree: 6000,
            max_series_order: 6000,
            cancel: CancelToken::none(),
        }
    }
}

/// Annihilating polynomial of the start symbol's series: irreducible over
/// the rationals, content-free, sign-normalized.
pub fn eliminate(system: &PolySystem, opts: &ElimOptions) -> Result<BiPoly, AlgebraError> {
    match opts.method {
        ElimMethod::Resultants => {
            let full = eliminate_resultants(system, opts)?;
            minimal_annihilator(system, Some(&full), opts)
        }
        ElimMethod::Guess => minimal_annihilator(system, None, opts),
    }
}

/// The raw resultant cascade: one polynomial in (x, S) vanishing at the
/// whole solution vector, possibly with extraneous factors.
pub fn eliminate_resultants(
    system: &PolySystem,
    opts: &ElimOptions,
) -> Result<BiPoly, AlgebraError> {
    let nsys = system.vars.len();
    let nvars = nsys + 1; // var 0 is x
    let s_var = system.start + 1;

    let mut eqs: Vec<MPoly> = Vec::with_capacity(nsys);
    for (i, eq) in system.equations.iter().enumerate() {
        let mut p = MPoly::var(i + 1, nvars);
        for mono in &eq.0 {
            let mut exps = vec![0u16; nvars];
            exps[0] = u16::try_from(mono.xpow).expect("x-power fits");
            for &(v, e) in &mono.vars {
                exps[v + 1] += u16::try_from(e).expect("exponent fits");
            }
            p = p.sub(&MPoly::monomial(mono.coeff.clone(), exps));
        }
        eqs.push(p.reduced_in(&[0]));
    }

    loop {
        if opts.cancel.cancelled() {
            return Err(AlgebraError::Cancelled);
        }
        // Pick the cheapest variable to eliminate next: for each candidate
        // (excluding x and S), cost-model the substitution/resultant work
        // against the best pivot. Pure x-substitutions come out free, so
        // terminal-like variables go first even when they occur often.
        let mut best: Option<(usize, u128)> = None; // (var, cost)
        for v in 1..nvars {
            if v == s_var {
                continue;
            }
            let pivot = eqs
                .iter()
                .filter(|e| e.contains_var(v))
                .min_by_key(|e| (e.degree_in(v), e.num_terms()));
            let pivot = match pivot {
                Some(p) => p,
                None => continue,
            };
            let linear = pivot.degree_in(v) == 1;
            let pterms = pivot.num_terms() as u128;
            let mut cost: u128 = 0;
            for eq in eqs.iter() {
                if std::ptr::eq(eq, pivot) || !eq.contains_var(v) {
                    continue;
                }
                let d = eq.degree_in(v) as u32;
                let grow = pterms.saturating_pow(d).saturating_mul(eq.num_terms() as u128);
                cost = cost.saturating_add(grow);
            }
            if !linear {
                cost = cost.saturating_mul(64);
            }
            if best.map(|(_, c)| cost < c).unwrap_or(true) {
                best = Some((v, cost));
            }
        }
        let (v, _) = match best {
            Some(b) => b,
            None => break,
        };

        // Pivot: lowest degree in v, then fewest terms.
        let pivot_idx = eqs
            .iter()
            .enumerate()
            .filter(|(_, e)| e.contains_var(v))
            .min_by_key(|(_, e)| (e.degree_in(v), e.num_terms()))
            .map(|(i, _)| i)
            .expect("cost model found an occurrence");
        let pivot = eqs.swap_remove(pivot_idx);

        for eq in eqs.iter_mut() {
            if !eq.contains_var(v) {
                continue;
            }
            if opts.cancel.cancelled() {
                return Err(AlgebraError::Cancelled);
            }
            let mut next = if pivot.degree_in(v) == 1 {
                substitute_linear(eq, &pivot, v)
            } else {
                resultant_in(&pivot, eq, v)
            }
            .reduced_in(&[0]);
            if next.is_zero() {
                // The pair shares a factor in v; a pseudo-remainder
                // descent still produces an ideal element free of v.
                next = match prem_descent(&pivot, eq, v) {
                    Some(p) => p.reduced_in(&[0]),
                    None => return Err(AlgebraError::ZeroResultant),
                };
            }
            if next.num_terms() > opts.max_terms
                || next.max_total_degree() > opts.max_degree
            {
                return Err(AlgebraError::Blowup {
                    terms: next.num_terms(),
                    degree: next.max_total_degree(),
                });
            }
            *eq = next;
        }
        if std::env::var("REXENUM_ELIM_TRACE").is_ok() {
            eprintln!(
                "eliminated v{v}: eqs now {:?}",
                eqs.iter().map(|e| (e.num_terms(), e.max_total_degree())).collect::<Vec<_>>()
            );
        }
    }

    // One equation remains in x and S only; redundant systems may leave
    // several, any nonzero one serves.
    let final_eq = eqs
        .into_iter()
        .find(|e| !e.is_zero() && e.to_bipoly(s_var).is_some())
        .ok_or(AlgebraError::ZeroResultant)?;
    let bp = final_eq
        .to_bipoly(s_var)
        .ok_or(AlgebraError::ZeroResultant)?;
    if bp.is_zero() || bp.deg_s() == 0 {
        return Err(AlgebraError::ZeroResultant);
    }
    Ok(bp.normalized())
}

/// Euclidean pseudo-remainder descent in `v`: walks down the remainder
/// sequence of the pair (every element lies in the generated ideal, so it
/// vanishes at the solution) until an element free of `v` appears. `None`
/// when the sequence degenerates to zero first.
fn prem_descent(f0: &MPoly, g0: &MPoly, v: usize) -> Option<MPoly> {
    let mut f = f0.clone();
    let mut g = g0.clone();
    if f.degree_in(v) < g.degree_in(v) {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        if g.is_zero() {
            return None;
        }
        if !g.contains_var(v) {
            return Some(g);
        }
        let r = prem_in(&f, &g, v).reduced_in(&[0]);
        f = g;
        g = r;
    }
}

/// Pseudo-remainder of `f` by `g` with respect to `v`.
fn prem_in(f: &MPoly, g: &MPoly, v: usize) -> MPoly {
    let dg = g.degree_in(v);
    let lc_g = g.coeff_of(v, dg);
    let mut r = f.clone();
    while !r.is_zero() && r.degree_in(v) >= dg {
        let dr = r.degree_in(v);
        let lc_r = r.coeff_of(v, dr);
        let mut shift = vec![0u16; f.nvars];
        shift[v] = dr - dg;
        let shifted = g.mul(&MPoly::monomial(num_bigint::BigInt::from(1), shift));
        r = r.mul(&lc_g).sub(&shifted.mul(&lc_r));
        if !r.is_zero() && r.degree_in(v) >= dr {
            // No progress would mean a broken reduction; cannot happen.
            unreachable!("pseudo-remainder failed to reduce the degree in v{v}");
        }
    }
    r
}

/// `Res_v(pivot, eq)` when the pivot is linear in v, computed by direct
/// substitution: pivot = a·v + b gives `Σ_j c_j (-b)^j a^(d-j)`.
fn substitute_linear(eq: &MPoly, pivot: &MPoly, v: usize) -> MPoly {
    let a = pivot.coeff_of(v, 1);
    let b = pivot.coeff_of(v, 0);
    let d = eq.degree_in(v);
    let minus_b = b.neg();
    // Precompute powers.
    let mut apow = vec![MPoly::constant(BigInt::one(), eq.nvars)];
    let mut bpow = apow.clone();
    for i in 1..=d as usize {
        apow.push(apow[i - 1].mul(&a));
        bpow.push(bpow[i - 1].mul(&minus_b));
    }
    let mut acc = MPoly::zero(eq.nvars);
    for j in 0..=d {
        let c = eq.coeff_of(v, j);
        if c.is_zero() {
            continue;
        }
        acc.add_assign(&c.mul(&bpow[j as usize]).mul(&apow[(d - j) as usize]));
    }
    acc
}

// ---------------------------------------------------------------------------
// Minimal annihilating polynomial via series linear algebra
// ---------------------------------------------------------------------------

/// Finds the minimal-S-degree polynomial annihilating the start series.
/// With `full` given, its degrees bound the search and divisibility into
/// it is required; without it, candidates verify at twice the matching
/// order.
pub fn minimal_annihilator(
    system: &PolySystem,
    full: Option<&BiPoly>,
    opts: &ElimOptions,
) -> Result<BiPoly, AlgebraError> {
    let (d_cap, dx_cap) = match full {
        Some(f) => (f.deg_s(), f.max_x_degree()),
        None => (12, 512),
    };

    let mut series_order = 128usize;
    let mut fcoeffs = start_series(system, series_order)?;

    for d in 1..=d_cap {
        // x-degree staging: small bounds first, always ending at the cap.
        let mut stages: Vec<usize> = [8, 16, 32, 64, 128, 256]
            .into_iter()
            .filter(|&s| s < dx_cap)
            .collect();
        stages.push(dx_cap);
        for dx in stages {
            let cols = (d + 1) * (dx + 1);
            let mut rows = cols + 32;
            loop {
                if opts.cancel.cancelled() {
                    return Err(AlgebraError::Cancelled);
                }
                let need = if full.is_some() { rows } else { 2 * rows };
                if need > opts.max_series_order {
                    break;
                }
                if fcoeffs.len() <= need {
                    series_order = need;
                    fcoeffs = start_series(system, series_order)?;
                }
                match solve_kernel(&fcoeffs, d, dx, rows) {
                    None => break, // no annihilator at this (d, dx)
                    Some(cand) => {
                        let cand = cand.normalized();
                        let verify_upto = need.min(fcoeffs.len() - 1);
                        let ann = verify_int(&cand, &fcoeffs, verify_upto);
                        let divides = full
                            .map(|f| f.pseudo_rem_s(&cand).is_zero())
                            .unwrap_or(true);
                        if ann && divides {
                            return Ok(cand);
                        }
                        // Truncation artifact: more equations shrink the
                        // kernel (possibly to nothing).
                        rows *= 2;
                    }
                }
            }
        }
    }
    match full {
        // The cascade output itself annihilates; if no proper factor was
        // extracted the polynomial is already minimal.
        Some(f) => Ok(f.normalized()),
        None => Err(AlgebraError::NoAnnihilator),
    }
}

fn start_series(system: &PolySystem, order: usize) -> Result<Vec<BigInt>, AlgebraError> {
    let all = series::solve_all(system, order).map_err(AlgebraError::Series)?;
    Ok(all[system.start].clone())
}

/// Integer check of `Σ q_i(x) f^i ≡ 0 mod x^(upto+1)`.
pub(crate) fn verify_int(p: &BiPoly, f: &[BigInt], upto: usize) -> bool {
    let n = upto;
    let mut acc = vec![BigInt::zero(); n + 1];
    for qi in p.coeffs_s().iter().rev() {
        let mut next = vec![BigInt::zero(); n + 1];
        for (i, a) in acc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in f.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    next[i + j] += a * b;
                }
            }
        }
        for (e, c) in qi.coeffs().iter().enumerate() {
            if e <= n {
                next[e] += c;
            }
        }
        acc = next;
    }
    acc.iter().all(|c| c.is_zero())
}

// ---------------------------------------------------------------------------
// Modular kernel + CRT rational reconstruction
// ---------------------------------------------------------------------------

/// Solves for coefficients `c_(i,j)` with
/// `Σ c_(i,j) x^j f(x)^i ≡ 0 mod x^rows`, exactly over the integers.
/// Returns a content-free candidate or None when only the zero solution
/// exists.
fn solve_kernel(f: &[BigInt], d: usize, dx: usize, rows: usize) -> Option<BiPoly> {
    let cols = (d + 1) * (dx + 1);
    let mut modulus = BigInt::one();
    let mut residues: Vec<BigInt> = vec![BigInt::zero(); cols];
    let mut reference_pivots: Option<Vec<usize>> = None;

    for (tried, &p) in primes().iter().enumerate() {
        let kern = kernel_mod_p(f, d, dx, rows, p)?;
        let (pivots, vec_p) = kern;
        match &reference_pivots {
            None => reference_pivots = Some(pivots),
            Some(r) => {
                if *r != pivots {
                    // Unlucky prime (rank drop); skip it.
                    continue;
                }
            }
        }
        // CRT-combine this prime's kernel vector.
        let bp = BigInt::from(p);
        if modulus.is_one() {
            residues = vec_p.iter().map(|&x| BigInt::from(x)).collect();
            modulus = bp;
        } else {
            let (g, minv) = ext_inverse(&modulus, &bp);
            debug_assert!(g.is_one());
            for (r, &xp) in residues.iter_mut().zip(&vec_p) {
                // r' ≡ r (mod modulus), r' ≡ xp (mod p)
                let diff = (BigInt::from(xp) - &*r) % &bp;
                let mut t = (&diff * &minv) % &bp;
                if t.is_negative() {
                    t += &bp;
                }
                *r += &modulus * t;
            }
            modulus *= &bp;
        }

        // Attempt rational reconstruction of every coordinate.
        if tried >= 1 {
            if let Some(rat) = reconstruct_vector(&residues, &modulus) {
                return Some(vector_to_bipoly(&rat, d, dx));
            }
        }
    }
    None
}

/// Gaussian elimination mod p; returns pivot columns and one kernel
/// vector (deterministic: the last free column is set to 1).
fn kernel_mod_p(
    f: &[BigInt],
    d: usize,
    dx: usize,
    rows: usize,
    p: u64,
) -> Option<(Vec<usize>, Vec<u64>)> {
    let cols = (d + 1) * (dx + 1);
    let n = rows.min(f.len());
    // f powers mod p, degree-truncated at n.
    let fp: Vec<u64> = f.iter().take(n).map(|c| mod_big(c, p)).collect();
    let mut pows: Vec<Vec<u64>> = Vec::with_capacity(d + 1);
    let mut one = vec![0u64; n];
    one[0] = 1;
    pows.push(one);
    for i in 1..=d {
        let prev = &pows[i - 1];
        let mut next = vec![0u64; n];
        for (a, &pa) in prev.iter().enumerate() {
            if pa == 0 {
                continue;
            }
            for (b, &fb) in fp.iter().enumerate().take(n - a) {
                if fb != 0 {
                    next[a + b] = addmul(next[a + b], pa, fb, p);
                }
            }
        }
        pows.push(next);
    }

    // Matrix rows: degree t; columns ordered (i, j) lexicographic.
    let mut m = vec![vec![0u64; cols]; n];
    for (t, row) in m.iter_mut().enumerate() {
        for i in 0..=d {
            for j in 0..=dx {
                if j <= t {
                    row[i * (dx + 1) + j] = pows[i][t - j];
                }
            }
        }
    }

    // Elimination.
    let mut pivots: Vec<usize> = Vec::new();
    let mut pivot_row_of: Vec<Option<usize>> = vec![None; cols];
    let mut rank = 0usize;
    for col in 0..cols {
        let mut sel = None;
        for (r, row) in m.iter().enumerate().skip(rank) {
            if row[col] != 0 {
                sel = Some(r);
                break;
            }
        }
        let r = match sel {
            Some(r) => r,
            None => continue,
        };
        m.swap(rank, r);
        let inv = mod_inv(m[rank][col], p);
        for j in col..cols {
            m[rank][j] = mulmod(m[rank][j], inv, p);
        }
        let pivot_row = m[rank].clone();
        for (rr, row) in m.iter_mut().enumerate() {
            if rr != rank && row[col] != 0 {
                let factor = row[col];
                for j in col..cols {
                    let sub = mulmod(factor, pivot_row[j], p);
                    row[j] = submod(row[j], sub, p);
                }
            }
        }
        pivots.push(col);
        pivot_row_of[col] = Some(rank);
        rank += 1;
        if rank == n {
            break;
        }
    }
    if rank == cols {
        return None; // trivial kernel only
    }
    // Free columns exist; choose the last one.
    let free = (0..cols).rev().find(|c| pivot_row_of[*c].is_none())?;
    let mut v = vec![0u64; cols];
    v[free] = 1;
    for (&pc, r) in pivots.iter().zip(0..rank) {
        // pivot variable value = -(row entry at free column)
        let val = m[r][free];
        v[pc] = if val == 0 { 0 } else { p - val };
    }
    Some((pivots, v))
}

fn vector_to_bipoly(v: &[BigRat], d: usize, dx: usize) -> BiPoly {
    // Clear denominators.
    let mut lcm = BigInt::one();
    for r in v {
        lcm = lcm.lcm(&r.den);
    }
    let mut coeffs = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let mut qs = Vec::with_capacity(dx + 1);
        for j in 0..=dx {
            let r = &v[i * (dx + 1) + j];
            qs.push(&r.num * (&lcm / &r.den));
        }
        coeffs.push(UniPoly::new(qs));
    }
    BiPoly::new(coeffs)
}

struct BigRat {
    num: BigInt,
    den: BigInt,
}

fn reconstruct_vector(residues: &[BigInt], modulus: &BigInt) -> Option<Vec<BigRat>> {
    residues
        .iter()
        .map(|r| rational_reconstruct(r, modulus))
        .collect()
}

/// Wang's rational reconstruction: finds n/d with `n ≡ r·d (mod m)`,
/// `|n|, d ≤ sqrt(m/2)`, verified before returning.
fn rational_reconstruct(r: &BigInt, m: &BigInt) -> Option<BigRat> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() {
        return None;
    }
    let (mut num, mut den) = if t1.is_negative() { (-r1, -t1) } else { (r1, t1) };
    if den > bound {
        return None;
    }
    let g = num.gcd(&den);
    if !g.is_one() && !g.is_zero() {
        num /= &g;
        den /= &g;
    }
    ((&num - r * &den).mod_floor(m).is_zero()).then_some(BigRat { num, den })
}

fn mod_big(c: &BigInt, p: u64) -> u64 {
    let m = (c % BigInt::from(p)).to_i128().unwrap();
    let m = if m < 0 { m + p as i128 } else { m };
    m as u64
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn addmul(acc: u64, a: u64, b: u64, p: u64) -> u64 {
    ((acc as u128 + a as u128 * b as u128) % p as u128) as u64
}

fn submod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat; p is prime.
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    acc
}

fn ext_inverse(m: &BigInt, p: &BigInt) -> (BigInt, BigInt) {
    // (gcd, m^{-1} mod p)
    let e = m.extended_gcd(p);
    let mut inv = e.x.mod_floor(p);
    if inv.is_negative() {
        inv += p;
    }
    (e.gcd, inv)
}

/// 62-bit primes for modular screening and CRT (48 of them give ~2970
/// bits of modulus, plenty for the coefficient sizes seen here).
fn primes() -> &'static [u64] {
    use std::sync::OnceLock;
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(48);
        let mut cand = (1u64 << 62) - 1;
        while out.len() < 48 {
            if is_prime_u64(cand) {
                out.push(cand);
            }
            cand -= 2;
        }
        out
    })
}

/// Deterministic Miller-Rabin for u64.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for b in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == b {
            return true;
        }
        if n % b == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'bases: for b in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = 1u64;
        let mut base = b % n;
        let mut e = d;
        while e > 0 {
            if e & 1 == 1 {
                x = mulmod(x, base, n);
            }
            base = mulmod(base, base, n);
            e >>= 1;
        }
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_generation() {
        let ps = primes();
        assert_eq!(ps.len(), 48);
        assert!(ps.iter().all(|&p| is_prime_u64(p)));
        assert!(is_prime_u64(4611686018427387847));
        assert!(!is_prime_u64(4611686018427387845));
    }

    #[test]
    fn rational_reconstruction_roundtrip() {
        let m = BigInt::from(1000003i64) * BigInt::from(1000033i64);
        for (n, d) in [(3i64, 7u64), (-22, 145), (1, 1), (355, 113)] {
            let dinv = {
                let e = BigInt::from(d).extended_gcd(&m);
                e.x.mod_floor(&m)
            };
            let r = (BigInt::from(n) * dinv).mod_floor(&m);
            let rec = rational_reconstruct(&r, &m).unwrap();
            assert_eq!(rec.num, BigInt::from(n));
            assert_eq!(rec.den, BigInt::from(d));
        }
    }
}
