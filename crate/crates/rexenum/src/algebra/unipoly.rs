//! Dense univariate polynomials over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Integer-coefficient polynomial, dense, ascending degree. The zero
/// polynomial is the empty coefficient list; otherwise the leading
/// coefficient is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> UniPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> UniPoly {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> UniPoly {
        UniPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> UniPoly {
        UniPoly::new(vec![c])
    }

    pub fn from_i64(cs: &[i64]) -> UniPoly {
        UniPoly::new(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Monomial `c·x^n`.
    pub fn monomial(c: BigInt, n: usize) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = c;
        UniPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        UniPoly::new(out)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] -= c;
        }
        UniPoly::new(out)
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        UniPoly::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by x^n.
    pub fn shift(&self, n: usize) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    /// Exact division; panics if the division is not exact (used only
    /// where exactness is a theorem, e.g. fraction-free elimination).
    pub fn divexact(&self, other: &UniPoly) -> UniPoly {
        assert!(!other.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut rem = self.coeffs.clone();
        let dd = other.coeffs.len() - 1;
        let dn = rem.len() - 1;
        assert!(dn >= dd, "not divisible: degree too small");
        let lead = &other.coeffs[dd];
        let mut q = vec![BigInt::zero(); dn - dd + 1];
        for i in (0..q.len()).rev() {
            let (quot, r) = rem[i + dd].div_rem(lead);
            assert!(r.is_zero(), "not divisible: leading coefficient");
            if quot.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let sub = &quot * b;
                rem[i + j] -= sub;
            }
            q[i] = quot;
        }
        assert!(rem.iter().all(|c| c.is_zero()), "not divisible: remainder");
        UniPoly::new(q)
    }

    /// GCD of all coefficients, non-negative.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content; the sign of the leading coefficient is
    /// preserved.
    pub fn primitive_part(&self) -> UniPoly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a / &c).collect(),
        }
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(i + 1))
                .collect(),
        )
    }

    /// Pseudo-remainder scaled by a positive power of the divisor's
    /// leading coefficient: returns `lc(g)^e · f mod g` with `e` even, so
    /// the sign of the true remainder is preserved.
    fn signed_pseudo_rem(&self, g: &UniPoly) -> UniPoly {
        let df = self.degree().expect("nonzero");
        let dg = g.degree().expect("nonzero");
        assert!(df >= dg);
        let mut e = df - dg + 1;
        if e % 2 == 1 {
            e += 1;
        }
        let lc = g.leading();
        let mut rem = self.scale(&lc.pow(e as u32));
        while let Some(dr) = rem.degree() {
            if dr < dg {
                break;
            }
            let factor = rem.leading().div_rem(&lc);
            debug_assert!(factor.1.is_zero());
            let sub = g.scale(&factor.0).shift(dr - dg);
            rem = rem.sub(&sub);
        }
        rem
    }

    /// GCD, primitive with positive leading coefficient. Small degrees go
    /// through the primitive remainder sequence; large ones through a
    /// modular (CRT) algorithm, since PRS coefficients blow up with the
    /// degree.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let big = self.degree().unwrap_or(0).max(other.degree().unwrap_or(0)) > 64;
        if big {
            if let Some(g) = modular_gcd(self, other) {
                return g;
            }
        }
        self.gcd_prs(other)
    }

    /// GCD via the primitive polynomial remainder sequence.
    fn gcd_prs(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.is_zero() {
            return normalize_sign(b);
        }
        if b.is_zero() {
            return normalize_sign(a);
        }
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            if b.is_zero() {
                return normalize_sign(a.primitive_part());
            }
            if b.degree() == Some(0) {
                return UniPoly::one();
            }
            let r = a.signed_pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
            if a.degree() < b.degree() {
                std::mem::swap(&mut a, &mut b);
            }
        }
    }

    /// Coefficients reduced modulo a word prime, trailing (leading) zeros
    /// trimmed.
    pub(crate) fn reduce_mod_p(&self, p: u64) -> Vec<u64> {
        use num_traits::ToPrimitive;
        let bp = BigInt::from(p);
        let mut v: Vec<u64> = self
            .coeffs
            .iter()
            .map(|c| {
                let m = (c % &bp).to_i64().unwrap();
                (if m < 0 { m + p as i64 } else { m }) as u64
            })
            .collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    /// The square-free part `p / gcd(p, p')`, primitive with positive
    /// leading coefficient.
    pub fn square_free_part(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let p = self.primitive_part();
        let g = p.gcd(&p.derivative());
        if g.degree() == Some(0) {
            return normalize_sign(p);
        }
        // Exact in Q[x]; clear the scale by re-taking the primitive part.
        let scaled = p.scale(&g.leading().pow(2));
        let q = exact_div_best_effort(&scaled, &g).unwrap_or_else(|| p.clone());
        normalize_sign(q.primitive_part())
    }

    /// Evaluates the sign of `p(a/b)` for `b > 0` via the homogeneous
    /// integer value `Σ c_i a^i b^(d-i)`.
    pub fn sign_at(&self, a: &BigInt, b: &BigInt) -> i32 {
        debug_assert!(b.is_positive());
        match self.eval_scaled(a, b).sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    /// `b^deg · p(a/b)` as an exact integer.
    pub fn eval_scaled(&self, a: &BigInt, b: &BigInt) -> BigInt {
        if self.is_zero() {
            return BigInt::zero();
        }
        // Horner from the top: v = v*a + c_i*b^(d-i)
        let mut v = BigInt::zero();
        let mut bpow = BigInt::one();
        let mut terms: Vec<BigInt> = Vec::with_capacity(self.coeffs.len());
        for c in self.coeffs.iter() {
            terms.push(c.clone());
        }
        for t in terms.iter_mut().rev() {
            *t *= &bpow;
            bpow *= b;
            let _ = t;
        }
        // terms now hold c_i * b^(d-i) in ascending i; Horner in a.
        for t in terms.iter().rev() {
            v = v * a + t;
        }
        v
    }

    pub fn sign_at_rational(&self, r: &BigRational) -> i32 {
        self.sign_at(r.numer(), r.denom())
    }

    /// Exact rational evaluation.
    pub fn eval_rational(&self, r: &BigRational) -> BigRational {
        let mut v = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            v = v * r + BigRational::from_integer(c.clone());
        }
        v
    }

    /// Display with `x` as the variable.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let body = match i {
                0 => c.to_string(),
                1 if c.is_one() => "x".into(),
                1 if (-c).is_one() => "-x".into(),
                1 => format!("{c}*x"),
                _ if c.is_one() => format!("x^{i}"),
                _ if (-c).is_one() => format!("-x^{i}"),
                _ => format!("{c}*x^{i}"),
            };
            parts.push(body);
        }
        let mut s = String::new();
        for (i, p) in parts.iter().enumerate() {
            if i == 0 {
                s.push_str(p);
            } else if let Some(stripped) = p.strip_prefix('-') {
                s.push_str(" - ");
                s.push_str(stripped);
            } else {
                s.push_str(" + ");
                s.push_str(p);
            }
        }
        s
    }
}

/// Makes the leading coefficient positive.
pub fn normalize_sign(p: UniPoly) -> UniPoly {
    if p.leading().is_negative() {
        p.neg()
    } else {
        p
    }
}

// ---------------------------------------------------------------------------
// Modular GCD (Brown's algorithm)
// ---------------------------------------------------------------------------

pub(crate) fn mulmod_u64(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod_u64(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod_u64(acc, base, p);
        }
        base = mulmod_u64(base, base, p);
        e >>= 1;
    }
    acc
}

/// Monic gcd of two dense coefficient vectors mod a prime.
pub(crate) fn gcd_mod_p(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    loop {
        if b.is_empty() {
            if let Some(&lead) = a.last() {
                let inv = powmod_u64(lead, p - 2, p);
                for c in &mut a {
                    *c = mulmod_u64(*c, inv, p);
                }
            }
            return a;
        }
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        let db = b.len() - 1;
        let lead_inv = powmod_u64(*b.last().unwrap(), p - 2, p);
        while a.len() > db {
            let da = a.len() - 1;
            let f = mulmod_u64(*a.last().unwrap(), lead_inv, p);
            if f != 0 {
                for i in 0..=db {
                    let sub = mulmod_u64(f, b[i], p);
                    let idx = da - db + i;
                    a[idx] = if a[idx] >= sub { a[idx] - sub } else { a[idx] + p - sub };
                }
            }
            while a.last() == Some(&0) {
                a.pop();
            }
            if a.len() <= db {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
}

/// CRT-based integer polynomial gcd; None when the prime supply runs out
/// before stabilization (the caller falls back to the remainder sequence).
fn modular_gcd(a0: &UniPoly, b0: &UniPoly) -> Option<UniPoly> {
    let a = a0.primitive_part();
    let b = b0.primitive_part();
    if a.is_zero() {
        return Some(normalize_sign(b));
    }
    if b.is_zero() {
        return Some(normalize_sign(a));
    }
    let lc_gcd = a.leading().abs().gcd(&b.leading().abs());

    let mut best_deg: Option<usize> = None;
    let mut modulus = BigInt::one();
    let mut combined: Vec<BigInt> = Vec::new();
    let mut last_candidate: Option<UniPoly> = None;

    for &p in gcd_primes() {
        let am = a.reduce_mod_p(p);
        let bm = b.reduce_mod_p(p);
        if am.len() != a.coeffs.len() || bm.len() != b.coeffs.len() {
            continue; // p divides a leading coefficient
        }
        let gp = gcd_mod_p(am, bm, p);
        let dg = gp.len().saturating_sub(1);
        if dg == 0 {
            return Some(UniPoly::one());
        }
        match best_deg {
            Some(d) if dg > d => continue, // unlucky prime
            Some(d) if dg < d => {
                best_deg = Some(dg);
                modulus = BigInt::one();
                combined.clear();
                last_candidate = None;
            }
            None => best_deg = Some(dg),
            _ => {}
        }
        // Scale to the expected leading coefficient and CRT-combine.
        let scale = {
            use num_traits::ToPrimitive;
            ((&lc_gcd % BigInt::from(p)).to_i64().unwrap().rem_euclid(p as i64)) as u64
        };
        let image: Vec<BigInt> = gp
            .iter()
            .map(|&c| BigInt::from(mulmod_u64(c, scale, p)))
            .collect();
        if modulus.is_one() {
            combined = image;
            modulus = BigInt::from(p);
        } else {
            let bp = BigInt::from(p);
            let e = modulus.extended_gcd(&bp);
            let minv = {
                let mut x = e.x % &bp;
                if x.is_negative() {
                    x += &bp;
                }
                x
            };
            for (c, ip) in combined.iter_mut().zip(&image) {
                let diff = (ip - &*c) % &bp;
                let mut t = (&diff * &minv) % &bp;
                if t.is_negative() {
                    t += &bp;
                }
                *c += &modulus * t;
            }
            modulus *= bp;
        }
        // Symmetric lift, primitive part, stabilization + division check.
        let half = &modulus / BigInt::from(2);
        let lifted: Vec<BigInt> = combined
            .iter()
            .map(|c| if c > &half { c - &modulus } else { c.clone() })
            .collect();
        let candidate = normalize_sign(UniPoly::new(lifted).primitive_part());
        if last_candidate.as_ref() == Some(&candidate) {
            if divides_exactly(&a, &candidate) && divides_exactly(&b, &candidate) {
                return Some(candidate);
            }
        }
        last_candidate = Some(candidate);
    }
    None
}

fn divides_exactly(f: &UniPoly, g: &UniPoly) -> bool {
    if g.degree().unwrap_or(0) == 0 {
        return true;
    }
    match (f.degree(), g.degree()) {
        (Some(df), Some(dg)) if df >= dg => {
            let scaled = f.scale(&g.leading().pow((df - dg + 1) as u32));
            exact_div_best_effort(&scaled, g).is_some()
        }
        _ => false,
    }
}

fn gcd_primes() -> &'static [u64] {
    use std::sync::OnceLock;
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        // 62-bit primes descending from 2^62; enough for coefficients of
        // several thousand bits.
        let mut out = Vec::with_capacity(96);
        let mut cand = (1u64 << 62) - 3;
        while out.len() < 96 {
            if crate::algebra::eliminate::is_prime_u64(cand) {
                out.push(cand);
            }
            cand -= 2;
        }
        out
    })
}

fn exact_div_best_effort(f: &UniPoly, g: &UniPoly) -> Option<UniPoly> {
    if g.is_zero() || f.is_zero() {
        return None;
    }
    let (df, dg) = (f.degree()?, g.degree()?);
    if df < dg {
        return None;
    }
    let mut rem = f.coeffs.clone();
    let lead = g.leading();
    let mut q = vec![BigInt::zero(); df - dg + 1];
    for i in (0..q.len()).rev() {
        let (quot, r) = rem[i + dg].div_rem(&lead);
        if !r.is_zero() {
            return None;
        }
        if !quot.is_zero() {
            for (j, b) in g.coeffs.iter().enumerate() {
                let sub = &quot * b;
                rem[i + j] -= sub;
            }
        }
        q[i] = quot;
    }
    if rem.iter().all(|c| c.is_zero()) {
        Some(UniPoly::new(q))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let p = UniPoly::from_i64(&[1, 2, 3]); // 1 + 2x + 3x^2
        let q = UniPoly::from_i64(&[0, 1]); // x
        assert_eq!(p.mul(&q), UniPoly::from_i64(&[0, 1, 2, 3]));
        assert_eq!(p.add(&q), UniPoly::from_i64(&[1, 3, 3]));
        assert_eq!(p.sub(&p), UniPoly::zero());
        assert_eq!(p.derivative(), UniPoly::from_i64(&[2, 6]));
    }

    #[test]
    fn divexact_works() {
        let p = UniPoly::from_i64(&[-1, 0, 1]); // (x-1)(x+1)
        let d = UniPoly::from_i64(&[-1, 1]);
        assert_eq!(p.divexact(&d), UniPoly::from_i64(&[1, 1]));
    }

    #[test]
    fn gcd_and_square_free() {
        // p = (x-1)^2 (x+2)
        let p = UniPoly::from_i64(&[2, -3, 0, 1]);
        let sf = p.square_free_part();
        assert_eq!(sf, UniPoly::from_i64(&[-2, 1, 1])); // (x-1)(x+2)
        let g = p.gcd(&p.derivative());
        assert_eq!(g, UniPoly::from_i64(&[-1, 1]));
    }

    #[test]
    fn sign_evaluation() {
        let p = UniPoly::from_i64(&[-1, 0, 4]); // 4x^2 - 1
        assert_eq!(p.sign_at(&BigInt::from(1), &BigInt::from(2)), 0);
        assert_eq!(p.sign_at(&BigInt::from(0), &BigInt::from(1)), -1);
        assert_eq!(p.sign_at(&BigInt::from(1), &BigInt::from(1)), 1);
        assert_eq!(p.sign_at(&BigInt::from(-1), &BigInt::from(1)), 1);
    }
}
