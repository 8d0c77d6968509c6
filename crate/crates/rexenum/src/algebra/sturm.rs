//! Real-root isolation by Sturm sequences with rational bisection.
//!
//! Roots come back as ordered intervals `(lo, hi]` containing exactly one
//! real root of the input each; rational roots are detected exactly
//! (`exact` is set and equals `hi`). Isolation runs on the square-free
//! part, so each interval brackets a simple root of that part; the
//! `simple` flag records whether the root is simple in the *original*
//! polynomial.

use super::unipoly::{normalize_sign, UniPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
    /// Set when the root is known exactly (then `hi` equals the root).
    pub exact: Option<BigRational>,
    /// Multiplicity-free in the polynomial passed to `real_roots`.
    pub simple: bool,
}

impl RootInterval {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// Midpoint (the root itself when exact).
    pub fn midpoint(&self) -> BigRational {
        match &self.exact {
            Some(r) => r.clone(),
            None => (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2)),
        }
    }

    /// Compares the interval's root against a rational threshold once the
    /// interval no longer straddles it. Returns None when undecided.
    fn compare_to(&self, t: &BigRational) -> Option<std::cmp::Ordering> {
        if let Some(r) = &self.exact {
            return Some(r.cmp(t));
        }
        if &self.lo >= t {
            Some(std::cmp::Ordering::Greater)
        } else if &self.hi < t {
            Some(std::cmp::Ordering::Less)
        } else {
            None
        }
    }
}

/// Isolated real roots of a polynomial, with refinement state.
#[derive(Debug, Clone)]
pub struct RealRoots {
    /// The square-free part with every exactly-known rational root divided
    /// out: the polynomial whose sign changes bracket the non-exact
    /// intervals. Exact intervals never consult it.
    pub square_free: UniPoly,
    /// Ascending by root value.
    pub intervals: Vec<RootInterval>,
}

/// Default refinement width 10^-12.
pub fn default_width() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10u64).pow(12))
}

/// Isolates all real roots of `p` and refines each interval to the
/// default width.
pub fn real_roots(p: &UniPoly) -> RealRoots {
    real_roots_to_width(p, &default_width())
}

pub fn real_roots_to_width(p: &UniPoly, width: &BigRational) -> RealRoots {
    assert!(!p.is_zero(), "root isolation needs a nonzero polynomial");
    let sf = p.square_free_part();
    let multiple_part = p.primitive_part().gcd(&p.derivative());

    let mut intervals: Vec<RootInterval> = Vec::new();

    // Strip x = 0 roots.
    let mut work = sf.clone();
    if work.coeff(0).is_zero() {
        let coeffs = work.coeffs().to_vec();
        let nz = coeffs.iter().position(|c| !c.is_zero()).unwrap();
        work = UniPoly::new(coeffs[nz..].to_vec());
        intervals.push(exact_interval(BigRational::zero()));
    }

    // Exact rational roots p/q with p | a_0, q | a_d (divisors found by
    // small-prime trial division; roots with huge prime content fall back
    // to plain isolation without the exact flag).
    for r in rational_roots(&work) {
        loop {
            let quot = divide_linear(&work, &r);
            match quot {
                Some(q) => work = q,
                None => break,
            }
        }
        intervals.push(exact_interval(r));
    }

    // Isolation for what remains: Sturm bisection at small degrees, the
    // Descartes (Vincent–Collins–Akritas) scheme above — the Sturm
    // pseudo-remainder chain's coefficients blow up around degree 100,
    // while Descartes only Taylor-shifts the input polynomial.
    if work.degree().unwrap_or(0) >= 1 {
        if work.degree().unwrap() <= 64 {
            let chain = sturm_chain(&work);
            let bound = root_bound(&work);
            let neg = BigRational::from_integer(-bound.clone());
            let pos = BigRational::from_integer(bound);
            let mut stack = vec![(neg.clone(), pos.clone())];
            while let Some((a, b)) = stack.pop() {
                let count = variations(&chain, &a) - variations(&chain, &b);
                match count {
                    0 => {}
                    1 => intervals.push(RootInterval {
                        lo: a,
                        hi: b,
                        exact: None,
                        simple: true,
                    }),
                    _ => {
                        let mid = (&a + &b) / BigRational::from_integer(BigInt::from(2));
                        stack.push((a, mid.clone()));
                        stack.push((mid, b));
                    }
                }
            }
        } else {
            descartes_isolate(&work, &mut intervals);
        }
    }

    let mut roots = RealRoots { square_free: work, intervals };
    roots.sort_and_separate();
    for i in 0..roots.intervals.len() {
        roots.refine(i, width);
    }
    // Multiplicity flags from the repeated-roots part.
    if multiple_part.degree().unwrap_or(0) >= 1 {
        let rep = real_roots_shallow(&multiple_part);
        for iv in &mut roots.intervals {
            let dup = rep.iter().any(|r| overlaps(iv, r));
            if dup {
                iv.simple = false;
            }
        }
    }
    roots
}

/// Isolation without multiplicity analysis or fine refinement (internal).
fn real_roots_shallow(p: &UniPoly) -> Vec<RootInterval> {
    let w = BigRational::new(BigInt::one(), BigInt::from(1u64 << 30));
    let mut r = real_roots_to_width(&p.square_free_part(), &w);
    r.intervals.drain(..).collect()
}

fn overlaps(a: &RootInterval, b: &RootInterval) -> bool {
    match (&a.exact, &b.exact) {
        (Some(x), Some(y)) => x == y,
        _ => !(a.hi < b.lo || b.hi < a.lo),
    }
}

impl RealRoots {
    fn sort_and_separate(&mut self) {
        // Refine until intervals are pairwise disjoint, then sort.
        let sf = self.square_free.clone();
        loop {
            self.intervals.sort_by(|a, b| a.hi.cmp(&b.hi));
            let mut clash = None;
            for i in 1..self.intervals.len() {
                if self.intervals[i - 1].hi > self.intervals[i].lo {
                    clash = Some(i);
                    break;
                }
            }
            match clash {
                None => break,
                Some(i) => {
                    for j in [i - 1, i] {
                        let iv = &mut self.intervals[j];
                        match iv.exact.clone() {
                            None => bisect_once(&sf, iv),
                            Some(r) => {
                                // Exact intervals shrink toward the root.
                                iv.lo = (&iv.lo + &r)
                                    / BigRational::from_integer(BigInt::from(2));
                            }
                        }
                    }
                }
            }
        }
    }

    /// Shrinks interval `idx` until its width is at most `width`.
    pub fn refine(&mut self, idx: usize, width: &BigRational) {
        let iv = &mut self.intervals[idx];
        if iv.exact.is_some() {
            if iv.width() > *width {
                let r = iv.exact.clone().unwrap();
                iv.lo = &r - width;
                iv.hi = r;
            }
            return;
        }
        while iv.width() > *width {
            bisect_once(&self.square_free, iv);
            if iv.exact.is_some() {
                break;
            }
        }
    }

    /// Positive roots only (ρ > 0), ascending. Intervals straddling zero
    /// are refined until they decide (the bracketed root is never exactly
    /// zero: zero roots are extracted as exact intervals).
    pub fn positive(&mut self) -> Vec<RootInterval> {
        let zero = BigRational::zero();
        let sf = self.square_free.clone();
        let mut out = Vec::new();
        for iv in &mut self.intervals {
            match &iv.exact {
                Some(r) => {
                    if r.is_positive() {
                        out.push(iv.clone());
                    }
                }
                None => {
                    while iv.lo < zero && iv.hi > zero {
                        bisect_once(&sf, iv);
                        if iv.exact.is_some() {
                            break;
                        }
                    }
                    let pos = match &iv.exact {
                        Some(r) => r.is_positive(),
                        None => iv.lo >= zero,
                    };
                    if pos {
                        out.push(iv.clone());
                    }
                }
            }
        }
        out
    }
}

/// One bisection step, preserving "exactly one root in (lo, hi]".
pub fn bisect_interval(sf: &UniPoly, iv: &mut RootInterval) {
    bisect_once(sf, iv)
}

fn bisect_once(sf: &UniPoly, iv: &mut RootInterval) {
    let mid = (&iv.lo + &iv.hi) / BigRational::from_integer(BigInt::from(2));
    match sf.sign_at_rational(&mid) {
        0 => {
            iv.exact = Some(mid.clone());
            iv.hi = mid.clone();
            let w = iv.width();
            iv.lo = &mid - (w / BigRational::from_integer(BigInt::from(2)));
        }
        s => {
            let hi_sign = sf.sign_at_rational(&iv.hi);
            if hi_sign == 0 {
                // The root is exactly hi.
                iv.exact = Some(iv.hi.clone());
                iv.lo = mid;
                return;
            }
            if s == hi_sign {
                iv.hi = mid;
            } else {
                iv.lo = mid;
            }
        }
    }
}

fn exact_interval(r: BigRational) -> RootInterval {
    let w = BigRational::new(BigInt::one(), BigInt::from(1u64 << 20));
    RootInterval {
        lo: &r - &w,
        hi: r.clone(),
        exact: Some(r),
        simple: true,
    }
}

/// Descartes-rule isolation of all real roots of a square-free polynomial
/// with no rational roots (the caller deflates those first; subdivision
/// points are dyadic, hence never roots). Appends one interval per root.
fn descartes_isolate(p: &UniPoly, out: &mut Vec<RootInterval>) {
    let bound = root_bound(p);
    // Power-of-two bound so subdivision points stay dyadic.
    let mut b = BigInt::one();
    while b < bound {
        b *= 2;
    }
    // Positive roots: map (0, B) to (0, 1) via p(Bx).
    let scaled = scale_arg(p, &b);
    isolate_01(&scaled, &BigRational::zero(), &BigRational::from_integer(b.clone()), out);
    // Negative roots: mirror.
    let neg = UniPoly::new(
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
            .collect(),
    );
    let scaled = scale_arg(&neg, &b);
    let mut mirrored = Vec::new();
    isolate_01(
        &scaled,
        &BigRational::zero(),
        &BigRational::from_integer(b),
        &mut mirrored,
    );
    for iv in mirrored {
        out.push(RootInterval {
            lo: -iv.hi,
            hi: -iv.lo,
            exact: None,
            simple: true,
        });
    }
}

/// Roots of `q` in (0, 1) mapped back to the interval (lo, hi).
fn isolate_01(q: &UniPoly, lo: &BigRational, hi: &BigRational, out: &mut Vec<RootInterval>) {
    match descartes_variations_01(q) {
        0 => {}
        1 => out.push(RootInterval {
            lo: lo.clone(),
            hi: hi.clone(),
            exact: None,
            simple: true,
        }),
        _ => {
            let mid = (lo + hi) / BigRational::from_integer(BigInt::from(2));
            // Left half: q0(x) = 2^n q(x/2); right half: q0(x + 1).
            let n = q.degree().unwrap_or(0);
            let two = BigInt::from(2);
            let q0 = UniPoly::new(
                q.coeffs()
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c * two.pow((n - i) as u32))
                    .collect(),
            );
            let q1 = taylor_shift_1(&q0);
            debug_assert!(
                !q0.coeff(0).is_zero() || !q1.coeff(0).is_zero() || true,
                "dyadic subdivision points are never roots after deflation"
            );
            // A root exactly at the midpoint would appear as q0(1) = 0 =
            // q1(0); deflation of rational roots rules it out, but guard
            // anyway.
            if q1.coeff(0).is_zero() {
                out.push(exact_interval(mid.clone()));
                let deflated = UniPoly::new(q1.coeffs()[1..].to_vec());
                let _ = deflated; // roots of halves still found below
            }
            isolate_01(&q0, lo, &mid, out);
            isolate_01(&q1, &mid, hi, out);
        }
    }
}

/// Sign variations of `(1+x)^n q(1/(1+x))`: bounds (and for 0/1 decides)
/// the number of roots of q in (0, 1).
fn descartes_variations_01(q: &UniPoly) -> usize {
    let rev = UniPoly::new(q.coeffs().iter().rev().cloned().collect());
    let t = taylor_shift_1(&rev);
    let mut count = 0;
    let mut last = 0i32;
    for c in t.coeffs() {
        let s = match c.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// p(x + 1) by iterated Horner accumulation.
fn taylor_shift_1(p: &UniPoly) -> UniPoly {
    let mut c = p.coeffs().to_vec();
    let n = c.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            let (a, b) = c.split_at_mut(j + 1);
            a[j] += &b[0];
        }
    }
    UniPoly::new(c)
}

/// p(b·x).
fn scale_arg(p: &UniPoly, b: &BigInt) -> UniPoly {
    let mut pow = BigInt::one();
    UniPoly::new(
        p.coeffs()
            .iter()
            .map(|c| {
                let v = c * &pow;
                pow *= b;
                v
            })
            .collect(),
    )
}

/// Sturm chain of a square-free polynomial (positive-scaled remainders).
fn sturm_chain(p: &UniPoly) -> Vec<UniPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        let (a, b) = (&chain[n - 2], &chain[n - 1]);
        if b.is_zero() {
            chain.pop();
            break;
        }
        if b.degree() == Some(0) {
            break;
        }
        let r = signed_rem(a, b);
        if r.is_zero() {
            break;
        }
        chain.push(r.neg().primitive_part());
    }
    chain
}

/// Remainder of `a` by `b` scaled by a positive constant.
fn signed_rem(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let da = a.degree().unwrap_or(0);
    let db = b.degree().expect("nonzero divisor");
    if da < db {
        return a.clone();
    }
    let mut e = da - db + 1;
    if e % 2 == 1 {
        e += 1;
    }
    let lc = b.leading();
    let mut rem = a.scale(&lc.pow(e as u32));
    while let Some(dr) = rem.degree() {
        if dr < db {
            break;
        }
        let (f, r0) = rem.leading().div_rem(&lc);
        debug_assert!(r0.is_zero());
        rem = rem.sub(&b.scale(&f).shift(dr - db));
    }
    rem
}

fn variations(chain: &[UniPoly], t: &BigRational) -> usize {
    let mut count = 0;
    let mut last = 0;
    for p in chain {
        let s = p.sign_at_rational(t);
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Cauchy bound: all real roots lie in (-B, B].
fn root_bound(p: &UniPoly) -> BigInt {
    let lead = p.leading().abs();
    let max = p
        .coeffs()
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    max.div_ceil(&lead) + BigInt::from(2)
}

/// Exact rational roots of `p` (constant term nonzero), each reported once.
fn rational_roots(p: &UniPoly) -> Vec<BigRational> {
    let d = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return Vec::new(),
    };
    let a0 = p.coeff(0).abs();
    let ad = p.coeff(d).abs();
    debug_assert!(!a0.is_zero());
    let nums = small_divisors(&a0, 4000);
    let dens = small_divisors(&ad, 4000);
    let mut out = Vec::new();
    for q in &dens {
        for pnum in &nums {
            if pnum.gcd(q) != BigInt::one() {
                continue;
            }
            for sign in [1, -1] {
                let cand = BigRational::new(pnum * BigInt::from(sign), q.clone());
                if p.sign_at_rational(&cand) == 0 && !out.contains(&cand) {
                    out.push(cand);
                }
            }
        }
    }
    out
}

/// All positive divisors when `n` factors completely over primes below a
/// small bound; otherwise the divisors of the smooth part (sound but
/// possibly incomplete, which only costs exactness flags).
fn small_divisors(n: &BigInt, limit: usize) -> Vec<BigInt> {
    let mut n = n.clone();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n && p < BigInt::from(10_000) {
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            primes.push((p.clone(), e));
        }
        p += 1;
    }
    if n > BigInt::one() && n < BigInt::from(100_000_000i64) {
        primes.push((n.clone(), 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::new();
        for d in &divs {
            let mut pe = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pe);
                pe *= &p;
                if next.len() > limit {
                    return divs; // too many; keep the partial list
                }
            }
        }
        divs = next;
    }
    divs
}

fn divide_linear(p: &UniPoly, r: &BigRational) -> Option<UniPoly> {
    // Divide by (q x - p) for r = p/q if exact.
    let lin = UniPoly::new(vec![-r.numer().clone(), r.denom().clone()]);
    if p.degree()? < 1 {
        return None;
    }
    if p.sign_at_rational(r) != 0 {
        return None;
    }
    // p = lin * q with q over Q; stay integral via the primitive part.
    let scaled = p.scale(&lin.leading().pow(p.degree()? as u32));
    let quot = try_divexact(&scaled, &lin)?;
    Some(normalize_sign(quot.primitive_part()))
}

fn try_divexact(f: &UniPoly, g: &UniPoly) -> Option<UniPoly> {
    let df = f.degree()?;
    let dg = g.degree()?;
    if df < dg {
        return None;
    }
    let mut rem = f.coeffs().to_vec();
    let lead = g.leading();
    let mut q = vec![BigInt::zero(); df - dg + 1];
    for i in (0..q.len()).rev() {
        let (quot, r) = rem[i + dg].div_rem(&lead);
        if !r.is_zero() {
            return None;
        }
        if !quot.is_zero() {
            for (j, b) in g.coeffs().iter().enumerate() {
                let sub = &quot * b;
                rem[i + j] -= sub;
            }
        }
        q[i] = quot;
    }
    rem.iter().all(|c| c.is_zero()).then(|| UniPoly::new(q))
}

/// Number of real roots of `p` in `(a, b]`, counted without multiplicity.
pub fn count_roots_in(p: &UniPoly, a: &BigRational, b: &BigRational) -> usize {
    let sf = p.square_free_part();
    if sf.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let chain = sturm_chain(&sf);
    variations(&chain, a) - variations(&chain, b)
}

/// Decides `root(iv) cmp t` exactly, refining as needed.
pub fn decide_cmp(
    sf: &UniPoly,
    iv: &mut RootInterval,
    t: &BigRational,
) -> std::cmp::Ordering {
    loop {
        if let Some(o) = iv.compare_to(t) {
            return o;
        }
        if sf.sign_at_rational(t) == 0 && iv.lo < *t && *t <= iv.hi {
            // The threshold is itself the root.
            iv.exact = Some(t.clone());
            iv.hi = t.clone();
            return std::cmp::Ordering::Equal;
        }
        bisect_once(sf, iv);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn exact_halves() {
        // (2x+1)(2x-1) = 4x^2 - 1
        let p = UniPoly::from_i64(&[-1, 0, 4]);
        let mut roots = real_roots(&p);
        assert_eq!(roots.intervals.len(), 2);
        assert_eq!(roots.intervals[0].exact, Some(rat(-1, 2)));
        assert_eq!(roots.intervals[1].exact, Some(rat(1, 2)));
        assert!(roots.intervals.iter().all(|iv| iv.simple));
        let pos = roots.positive();
        assert_eq!(pos.len(), 1);
        assert_eq!(pos[0].exact, Some(rat(1, 2)));
    }

    #[test]
    fn quarter_root() {
        // 1 - 4x
        let p = UniPoly::from_i64(&[1, -4]);
        let roots = real_roots(&p);
        assert_eq!(roots.intervals.len(), 1);
        assert_eq!(roots.intervals[0].exact, Some(rat(1, 4)));
    }

    #[test]
    fn prefix_chain_roots() {
        // 1 - x - x^5: single real root near 0.754877666.
        let p = UniPoly::from_i64(&[1, -1, 0, 0, 0, -1]);
        let roots = real_roots(&p);
        assert_eq!(roots.intervals.len(), 1);
        let iv = &roots.intervals[0];
        assert!(iv.exact.is_none());
        let lo = rat(754877665, 1_000_000_000);
        let hi = rat(754877667, 1_000_000_000);
        assert!(iv.lo > lo && iv.hi < hi, "interval {:?}", iv);

        // 1 - 2x - 2x^5: root near 0.4756527435.
        let p = UniPoly::from_i64(&[1, -2, 0, 0, 0, -2]);
        let roots = real_roots(&p);
        assert_eq!(roots.intervals.len(), 1);
        let iv = &roots.intervals[0];
        let lo = rat(47565274345, 100_000_000_000);
        let hi = rat(47565274355, 100_000_000_000);
        assert!(iv.lo > lo && iv.hi < hi, "interval {:?}", iv);
    }

    #[test]
    fn multiplicity_flag() {
        // (x-1)^2 (x+3)
        let p = UniPoly::from_i64(&[3, -5, 1, 1]);
        let roots = real_roots(&p);
        assert_eq!(roots.intervals.len(), 2);
        let one = roots
            .intervals
            .iter()
            .find(|iv| iv.exact == Some(rat(1, 1)))
            .unwrap();
        assert!(!one.simple);
        let neg3 = roots
            .intervals
            .iter()
            .find(|iv| iv.exact == Some(rat(-3, 1)))
            .unwrap();
        assert!(neg3.simple);
    }

    #[test]
    fn refine_is_monotone() {
        let p = UniPoly::from_i64(&[1, -1, 0, 0, 0, -1]);
        let mut roots = real_roots_to_width(&p, &rat(1, 100));
        let before = roots.intervals[0].clone();
        roots.refine(0, &rat(1, 1_000_000));
        let after = &roots.intervals[0];
        assert!(after.lo >= before.lo && after.hi <= before.hi);
        assert!(after.width() <= rat(1, 1_000_000));
    }

    #[test]
    fn count_roots() {
        let p = UniPoly::from_i64(&[-1, 0, 4]); // roots ±1/2
        assert_eq!(count_roots_in(&p, &rat(0, 1), &rat(1, 1)), 1);
        assert_eq!(count_roots_in(&p, &rat(-1, 1), &rat(1, 1)), 2);
        assert_eq!(count_roots_in(&p, &rat(-1, 1), &rat(-3, 4)), 0);
    }
}
