//! Bivariate polynomials `q_0(x) + q_1(x)·S + ... + q_d(x)·S^d` and the
//! Sylvester-matrix resultant machinery on them.

use super::unipoly::UniPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Polynomial in S with integer-polynomial coefficients in x.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiPoly {
    /// Ascending S-degree; the last entry is nonzero.
    coeffs: Vec<UniPoly>,
}

impl BiPoly {
    pub fn new(mut coeffs: Vec<UniPoly>) -> BiPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        BiPoly { coeffs }
    }

    pub fn zero() -> BiPoly {
        BiPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in S (0 for a nonzero constant-in-S polynomial).
    pub fn deg_s(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs_s(&self) -> &[UniPoly] {
        &self.coeffs
    }

    pub fn coeff_s(&self, i: usize) -> UniPoly {
        self.coeffs.get(i).cloned().unwrap_or_else(UniPoly::zero)
    }

    /// Leading coefficient in S.
    pub fn leading_s(&self) -> UniPoly {
        self.coeffs.last().cloned().unwrap_or_else(UniPoly::zero)
    }

    pub fn max_x_degree(&self) -> usize {
        self.coeffs
            .iter()
            .filter_map(|c| c.degree())
            .max()
            .unwrap_or(0)
    }

    /// Derivative with respect to S.
    pub fn derivative_s(&self) -> BiPoly {
        if self.coeffs.len() <= 1 {
            return BiPoly::zero();
        }
        BiPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c.scale(&BigInt::from(i + 1)))
                .collect(),
        )
    }

    /// GCD of every integer coefficient.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(&c.content());
        }
        g
    }

    /// GCD of the S-coefficients as polynomials in x (primitive, positive
    /// leading coefficient).
    pub fn poly_content(&self) -> UniPoly {
        let mut g = UniPoly::zero();
        for c in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            g = if g.is_zero() { c.clone() } else { g.gcd(c) };
            if g.degree() == Some(0) {
                break;
            }
        }
        g
    }

    /// Content-free form (no common integer factor, no common polynomial
    /// factor in x) with the fixed sign convention: the leading
    /// x-coefficient of the leading S-coefficient is positive.
    pub fn normalized(&self) -> BiPoly {
        if self.is_zero() {
            return BiPoly::zero();
        }
        let pc = self.poly_content();
        let mut out: Vec<UniPoly> = if pc.degree().unwrap_or(0) >= 1 {
            self.coeffs
                .iter()
                .map(|q| if q.is_zero() { UniPoly::zero() } else { q.divexact(&pc) })
                .collect()
        } else {
            self.coeffs.clone()
        };
        let c = BiPoly::new(out.clone()).content();
        for q in &mut out {
            *q = UniPoly::new(q.coeffs().iter().map(|a| a / &c).collect());
        }
        if out.last().unwrap().leading().is_negative() {
            for q in &mut out {
                *q = q.neg();
            }
        }
        BiPoly::new(out)
    }

    pub fn sub(&self, other: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff_s(i).sub(&other.coeff_s(i)));
        }
        BiPoly::new(out)
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        if self.is_zero() || other.is_zero() {
            return BiPoly::zero();
        }
        let mut out = vec![UniPoly::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        BiPoly::new(out)
    }

    pub fn scale_uni(&self, c: &UniPoly) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly::new(self.coeffs.iter().map(|q| q.mul(c)).collect())
    }

    /// Multiplies the S^i coefficient slots up: `self * S^n`.
    pub fn shift_s(&self, n: usize) -> BiPoly {
        if self.is_zero() {
            return BiPoly::zero();
        }
        let mut out = vec![UniPoly::zero(); n];
        out.extend(self.coeffs.iter().cloned());
        BiPoly::new(out)
    }

    /// Pseudo-remainder of `self` by `g` in S over Z[x]:
    /// `lc_S(g)^(deg self - deg g + 1) · self mod g`. Zero iff `g`
    /// divides `self` in Q(x)[S].
    pub fn pseudo_rem_s(&self, g: &BiPoly) -> BiPoly {
        assert!(!g.is_zero());
        let dg = g.deg_s();
        if dg == 0 {
            // A nonzero element of Q(x) divides everything.
            return BiPoly::zero();
        }
        let lc = g.leading_s();
        let mut rem = self.clone();
        while !rem.is_zero() && rem.deg_s() >= dg {
            let dr = rem.deg_s();
            let top = rem.leading_s();
            rem = rem.scale_uni(&lc).sub(&g.scale_uni(&top).shift_s(dr - dg));
            assert!(
                rem.is_zero() || rem.deg_s() < dr,
                "pseudo-division failed to reduce the degree"
            );
        }
        rem
    }

    /// Human-readable rendering like `(2*x^2 - x)*S^2 + (2*x - 1)*S + 1`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let coeff_txt = c.to_text();
            let needs_parens = coeff_txt.contains(' ');
            let coeff_part = if needs_parens {
                format!("({coeff_txt})")
            } else {
                coeff_txt.clone()
            };
            let s = match i {
                0 => coeff_part,
                1 if coeff_txt == "1" => "S".to_string(),
                1 => format!("{coeff_part}*S"),
                _ if coeff_txt == "1" => format!("S^{i}"),
                _ => format!("{coeff_part}*S^{i}"),
            };
            parts.push(s);
        }
        parts.join(" + ")
    }
}

/// Fraction-free Bareiss determinant over an integral domain with exact
/// division. `mul`, `sub`, `divexact`, `is_zero` are provided by D.
pub(crate) trait DetRing: Clone {
    fn ring_zero() -> Self;
    fn ring_is_zero(&self) -> bool;
    fn ring_mul(&self, other: &Self) -> Self;
    fn ring_sub(&self, other: &Self) -> Self;
    fn ring_divexact(&self, other: &Self) -> Self;
}

impl DetRing for BigInt {
    fn ring_zero() -> Self {
        Zero::zero()
    }
    fn ring_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn ring_sub(&self, other: &Self) -> Self {
        self - other
    }
    fn ring_divexact(&self, other: &Self) -> Self {
        let (q, r) = self.div_rem(other);
        debug_assert!(Zero::is_zero(&r));
        q
    }
}

impl DetRing for UniPoly {
    fn ring_zero() -> Self {
        UniPoly::zero()
    }
    fn ring_is_zero(&self) -> bool {
        UniPoly::is_zero(self)
    }
    fn ring_mul(&self, other: &Self) -> Self {
        UniPoly::mul(self, other)
    }
    fn ring_sub(&self, other: &Self) -> Self {
        UniPoly::sub(self, other)
    }
    fn ring_divexact(&self, other: &Self) -> Self {
        UniPoly::divexact(self, other)
    }
}

pub(crate) fn bareiss_det<R: DetRing>(mut m: Vec<Vec<R>>) -> R {
    let n = m.len();
    if n == 0 {
        return R::ring_zero(); // callers never build an empty matrix
    }
    let mut sign_flip = false;
    let mut prev: Option<R> = None;
    for k in 0..n - 1 {
        if m[k][k].ring_is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].ring_is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return R::ring_zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[k][k]
                    .ring_mul(&m[i][j])
                    .ring_sub(&m[i][k].ring_mul(&m[k][j]));
                m[i][j] = match &prev {
                    Some(p) => t.ring_divexact(p),
                    None => t,
                };
            }
            m[i][k] = R::ring_zero();
        }
        prev = Some(m[k][k].clone());
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        R::ring_zero().ring_sub(&det)
    } else {
        det
    }
}

/// Resultant of two polynomials in S (coefficients in Z[x]) via the
/// Sylvester determinant. `Res(f, c) = c^deg(f)` for constant `c`.
pub fn resultant_s(f: &BiPoly, g: &BiPoly) -> UniPoly {
    assert!(!f.is_zero() && !g.is_zero());
    let (df, dg) = (f.deg_s(), g.deg_s());
    if df == 0 && dg == 0 {
        return UniPoly::one();
    }
    if dg == 0 {
        let mut acc = UniPoly::one();
        for _ in 0..df {
            acc = acc.mul(&g.coeff_s(0));
        }
        return acc;
    }
    if df == 0 {
        let mut acc = UniPoly::one();
        for _ in 0..dg {
            acc = acc.mul(&f.coeff_s(0));
        }
        // Res(f, g) = (-1)^(df·dg) Res(g, f); df = 0 makes the sign +.
        return acc;
    }
    let n = df + dg;
    let mut m = vec![vec![UniPoly::zero(); n]; n];
    for row in 0..dg {
        for i in 0..=df {
            m[row][row + i] = f.coeff_s(df - i);
        }
    }
    for row in 0..df {
        for i in 0..=dg {
            m[dg + row][row + i] = g.coeff_s(dg - i);
        }
    }
    bareiss_det(m)
}

/// Discriminant of P with respect to S:
/// `(-1)^(d(d-1)/2) · Res(P, ∂P/∂S) / lc_S(P)`, exact over Z[x].
pub fn discriminant(p: &BiPoly) -> UniPoly {
    let d = p.deg_s();
    assert!(d >= 1, "discriminant needs S-degree at least 1");
    if d == 1 {
        // Res(P, q1) = q1; divided by q1 gives 1: no branch collisions.
        return UniPoly::one();
    }
    let res = resultant_s(p, &p.derivative_s());
    let lead = p.leading_s();
    let q = res.divexact(&lead);
    if (d * (d - 1) / 2) % 2 == 1 {
        q.neg()
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(rows: &[&[i64]]) -> BiPoly {
        BiPoly::new(rows.iter().map(|r| UniPoly::from_i64(r)).collect())
    }

    #[test]
    fn worked_example_discriminant() {
        // P = x(2x-1) S^2 + (2x-1) S + 1
        let p = bp(&[&[1], &[-1, 2], &[0, -1, 2]]);
        let d = discriminant(&p);
        // ±(2x+1)(2x-1) = 4x^2 - 1 up to sign/content
        let expected = UniPoly::from_i64(&[-1, 0, 4]);
        let d = super::super::unipoly::normalize_sign(d.primitive_part());
        assert_eq!(d, expected);
    }

    #[test]
    fn catalan_discriminant() {
        // f^2 - f + x -> discriminant 1 - 4x
        let p = bp(&[&[0, 1], &[-1], &[1]]);
        let d = discriminant(&p);
        let d = super::super::unipoly::normalize_sign(d.primitive_part());
        assert_eq!(d, UniPoly::from_i64(&[-1, 4])); // 4x - 1 sign-normalized
    }

    #[test]
    fn linear_in_s_has_constant_discriminant() {
        let p = bp(&[&[0, -1], &[1]]); // S - x
        let d = discriminant(&p);
        assert_eq!(d, UniPoly::one());
    }

    #[test]
    fn resultant_detects_common_roots() {
        // f = (S - x)(S - 1), g = (S - x)(S + 2): Res vanishes identically
        // in x iff they always share a root; here Res = poly in x that
        // vanishes exactly at... they share S - x for every x, so Res = 0.
        let s_minus_x = bp(&[&[0, -1], &[1]]);
        let f = s_minus_x.mul(&bp(&[&[-1], &[1]]));
        let g = s_minus_x.mul(&bp(&[&[2], &[1]]));
        assert!(resultant_s(&f, &g).is_zero());
        // Disjoint roots: f = S - x, g = S - 1 -> Res = ±(1 - x).
        let f = bp(&[&[0, -1], &[1]]);
        let g = bp(&[&[-1], &[1]]);
        let r = resultant_s(&f, &g);
        assert_eq!(r.primitive_part().coeffs().len(), 2);
    }

    #[test]
    fn pseudo_remainder_divides() {
        let q = bp(&[&[1], &[-1, 2], &[0, -1, 2]]);
        let f = q.mul(&bp(&[&[3, 7], &[0, 0, 5], &[1, 1]]));
        assert!(f.pseudo_rem_s(&q).is_zero());
        let g = f.sub(&BiPoly::new(vec![UniPoly::one()]));
        assert!(!g.pseudo_rem_s(&q).is_zero());
    }

    #[test]
    fn bareiss_matches_small_determinants() {
        let m = vec![
            vec![BigInt::from(2), BigInt::from(3)],
            vec![BigInt::from(5), BigInt::from(7)],
        ];
        assert_eq!(bareiss_det(m), BigInt::from(-1));
        let m = vec![
            vec![BigInt::from(1), BigInt::from(2), BigInt::from(3)],
            vec![BigInt::from(4), BigInt::from(5), BigInt::from(6)],
            vec![BigInt::from(7), BigInt::from(8), BigInt::from(10)],
        ];
        assert_eq!(bareiss_det(m), BigInt::from(-3));
    }
}
