//! Sparse multivariate integer polynomials; just enough ring structure
//! for resultant-based variable elimination. Variable 0 is `x`, the
//! remaining indices are the system's nonterminals.

use super::bipoly::{bareiss_det, BiPoly, DetRing};
use super::unipoly::UniPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    /// Exponent vector -> coefficient; vectors all have the same length.
    pub terms: BTreeMap<Vec<u16>, BigInt>,
    pub nvars: usize,
}

impl MPoly {
    pub fn zero(nvars: usize) -> MPoly {
        MPoly { terms: BTreeMap::new(), nvars }
    }

    pub fn constant(c: BigInt, nvars: usize) -> MPoly {
        let mut p = MPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(v: usize, nvars: usize) -> MPoly {
        let mut e = vec![0u16; nvars];
        e[v] = 1;
        let mut p = MPoly::zero(nvars);
        p.terms.insert(e, BigInt::one());
        p
    }

    pub fn monomial(c: BigInt, exps: Vec<u16>) -> MPoly {
        let nvars = exps.len();
        let mut p = MPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_assign(&mut self, other: &MPoly) {
        for (e, c) in &other.terms {
            let entry = self.terms.entry(e.clone()).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                self.terms.remove(e);
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            let entry = out.terms.entry(e.clone()).or_insert_with(BigInt::zero);
            *entry -= c;
            if entry.is_zero() {
                out.terms.remove(e);
            }
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
            nvars: self.nvars,
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u16> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let entry = out.terms.entry(e).or_insert_with(BigInt::zero);
                *entry += ca * cb;
                if entry.is_zero() {
                    let e2: Vec<u16> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                    out.terms.remove(&e2);
                }
            }
        }
        out
    }

    pub fn degree_in(&self, v: usize) -> u16 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    pub fn contains_var(&self, v: usize) -> bool {
        self.terms.keys().any(|e| e[v] > 0)
    }

    pub fn max_total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u32).sum())
            .max()
            .unwrap_or(0)
    }

    /// Coefficient of `v^power` as a polynomial in the remaining
    /// variables (exponent of `v` zeroed).
    pub fn coeff_of(&self, v: usize, power: u16) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[v] == power {
                let mut e2 = e.clone();
                e2[v] = 0;
                out.terms.insert(e2, c.clone());
            }
        }
        out
    }

    /// Integer content (non-negative).
    pub fn int_content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides by the integer content and by the largest common power of
    /// the designated variables (the elimination cascade passes only `x`:
    /// a nonterminal's series can be identically zero, so dividing by a
    /// common nonterminal factor would not preserve vanishing at the
    /// solution, but x-powers vanish only at x = 0).
    pub fn reduced_in(&self, strip_vars: &[usize]) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        let g = self.int_content();
        let mut common = vec![u16::MAX; self.nvars];
        for e in self.terms.keys() {
            for (c, &x) in common.iter_mut().zip(e) {
                *c = (*c).min(x);
            }
        }
        for v in 0..self.nvars {
            if !strip_vars.contains(&v) {
                common[v] = 0;
            }
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let e2: Vec<u16> = e.iter().zip(&common).map(|(a, b)| a - b).collect();
                    (e2, c / &g)
                })
                .collect(),
            nvars: self.nvars,
        }
    }

    /// Integer content and every common variable power removed (only safe
    /// when no variable can vanish identically on the solution set).
    pub fn reduced(&self) -> MPoly {
        let all: Vec<usize> = (0..self.nvars).collect();
        self.reduced_in(&all)
    }

    /// Exact division, recursing on the highest variable present in the
    /// divisor. Panics when the division is not exact.
    pub fn divexact(&self, other: &MPoly) -> MPoly {
        assert!(!other.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return MPoly::zero(self.nvars);
        }
        // Constant divisor: divide coefficients.
        let main = (0..self.nvars).rev().find(|&v| other.contains_var(v));
        let v = match main {
            None => {
                let c = other.terms.values().next().unwrap();
                return MPoly {
                    terms: self
                        .terms
                        .iter()
                        .map(|(e, a)| {
                            let (q, r) = a.div_rem(c);
                            assert!(r.is_zero(), "not divisible (constant)");
                            (e.clone(), q)
                        })
                        .collect(),
                    nvars: self.nvars,
                };
            }
            Some(v) => v,
        };
        let dg = other.degree_in(v);
        let glead = other.coeff_of(v, dg);
        let mut rem = self.clone();
        let mut q = MPoly::zero(self.nvars);
        loop {
            if rem.is_zero() {
                break;
            }
            let dr = rem.degree_in(v);
            assert!(dr >= dg, "not divisible (degree drop in v{v})");
            let rlead = rem.coeff_of(v, dr);
            let qc = rlead.divexact(&glead);
            let mut shift = vec![0u16; self.nvars];
            shift[v] = dr - dg;
            let qterm = qc.mul(&MPoly::monomial(BigInt::one(), shift));
            rem = rem.sub(&qterm.mul(other));
            q.add_assign(&qterm);
            if rem.is_zero() {
                break;
            }
            assert!(
                rem.degree_in(v) < dr || dr == 0,
                "not divisible (no progress in v{v})"
            );
            if dr == 0 {
                assert!(rem.is_zero(), "not divisible (constant tail)");
            }
        }
        q
    }

    /// Conversion to a bivariate polynomial when only `x` (var 0) and
    /// `s_var` occur.
    pub fn to_bipoly(&self, s_var: usize) -> Option<BiPoly> {
        for v in 1..self.nvars {
            if v != s_var && self.contains_var(v) {
                return None;
            }
        }
        let ds = self.degree_in(s_var) as usize;
        let mut rows: Vec<Vec<BigInt>> = vec![Vec::new(); ds + 1];
        for (e, c) in &self.terms {
            let si = e[s_var] as usize;
            let xi = e[0] as usize;
            if rows[si].len() <= xi {
                rows[si].resize(xi + 1, BigInt::zero());
            }
            rows[si][xi] = c.clone();
        }
        Some(BiPoly::new(rows.into_iter().map(UniPoly::new).collect()))
    }
}

impl DetRing for MPoly {
    fn ring_zero() -> Self {
        // A zero with no variables; absorbing in mul/sub below.
        MPoly::zero(0)
    }
    fn ring_is_zero(&self) -> bool {
        MPoly::is_zero(self)
    }
    fn ring_mul(&self, other: &Self) -> Self {
        if self.nvars == 0 || other.nvars == 0 {
            return MPoly::zero(self.nvars.max(other.nvars));
        }
        MPoly::mul(self, other)
    }
    fn ring_sub(&self, other: &Self) -> Self {
        if self.nvars == 0 {
            return other.neg();
        }
        if other.nvars == 0 {
            return self.clone();
        }
        MPoly::sub(self, other)
    }
    fn ring_divexact(&self, other: &Self) -> Self {
        MPoly::divexact(self, other)
    }
}

/// Resultant of `f` and `g` with respect to variable `v`.
pub fn resultant_in(f: &MPoly, g: &MPoly, v: usize) -> MPoly {
    let nvars = f.nvars;
    let df = f.degree_in(v) as usize;
    let dg = g.degree_in(v) as usize;
    assert!(df > 0 || dg > 0, "resultant needs v in at least one input");
    if dg == 0 {
        let mut acc = MPoly::constant(BigInt::one(), nvars);
        for _ in 0..df {
            acc = acc.mul(g);
        }
        return acc;
    }
    if df == 0 {
        let mut acc = MPoly::constant(BigInt::one(), nvars);
        for _ in 0..dg {
            acc = acc.mul(f);
        }
        return acc;
    }
    let n = df + dg;
    let zero = MPoly::zero(nvars);
    let mut m = vec![vec![zero; n]; n];
    for row in 0..dg {
        for i in 0..=df {
            m[row][row + i] = f.coeff_of(v, (df - i) as u16);
        }
    }
    for row in 0..df {
        for i in 0..=dg {
            m[dg + row][row + i] = g.coeff_of(v, (dg - i) as u16);
        }
    }
    bareiss_det(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize) -> MPoly {
        MPoly::var(0, n)
    }

    #[test]
    fn mul_and_divexact_roundtrip() {
        let n = 3;
        let a = x(n)
            .mul(&MPoly::var(1, n))
            .add(&MPoly::constant(BigInt::from(3), n))
            .add(&MPoly::var(2, n));
        let b = MPoly::var(1, n).add(&MPoly::constant(BigInt::from(-2), n));
        let prod = a.mul(&b);
        assert_eq!(prod.divexact(&b), a);
        assert_eq!(prod.divexact(&a), b);
    }

    #[test]
    fn resultant_eliminates() {
        // f = v - x^2 (v := var 1), g = v^2 - 3: Res_v = (x^2)^2 - 3.
        let n = 2;
        let v = MPoly::var(1, n);
        let f = v.sub(&x(n).mul(&x(n)));
        let g = v.mul(&v).sub(&MPoly::constant(BigInt::from(3), n));
        let r = resultant_in(&f, &g, 1);
        let expect = x(n)
            .mul(&x(n))
            .mul(&x(n))
            .mul(&x(n))
            .sub(&MPoly::constant(BigInt::from(3), n));
        // Up to sign.
        assert!(r == expect || r == expect.neg(), "got {r:?}");
    }

    #[test]
    fn reduced_strips_content_and_monomials() {
        let n = 2;
        let p = MPoly::monomial(BigInt::from(6), vec![2, 1])
            .add(&MPoly::monomial(BigInt::from(9), vec![1, 2]));
        let r = p.reduced();
        let expect = MPoly::monomial(BigInt::from(2), vec![1, 0])
            .add(&MPoly::monomial(BigInt::from(3), vec![0, 1]));
        assert_eq!(r, expect);
    }
}
