//! Closed-form tree counting: Lagrange inversion, k-ary tree counts and
//! leaf statistics, and the alphabetic-width lower-bound base.

use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `[x^n] w(x)` for the unique series with `w = x·φ(w)`, by Lagrange
/// inversion: `(1/n) [λ^(n-1)] φ(λ)^n`. The constant term of φ must be
/// nonzero (invertible).
pub fn lagrange_coefficient(
    phi: &crate::series::TruncatedSeries,
    n: usize,
) -> Result<BigRational, String> {
    if n == 0 {
        return Err("Lagrange inversion needs n ≥ 1".into());
    }
    if phi.coeff(0).is_zero() {
        return Err("φ must have an invertible constant term".into());
    }
    // φ(λ)^n truncated at degree n-1.
    let upto = n - 1;
    let coeffs: Vec<BigRational> = phi.coeffs().iter().take(upto + 1).cloned().collect();
    let mut pow = vec![BigRational::zero(); upto + 1];
    pow[0] = BigRational::one();
    for _ in 0..n {
        let mut next = vec![BigRational::zero(); upto + 1];
        for (i, a) in pow.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in coeffs.iter().enumerate().take(upto + 1 - i) {
                if !b.is_zero() {
                    next[i + j] += a * b;
                }
            }
        }
        pow = next;
    }
    Ok(&pow[upto] / BigRational::from_integer(BigInt::from(n)))
}

/// Number of k-ary rooted trees with n nodes: `(1/n)·C(kn, n-1)`, exact
/// (the division is integral).
pub fn kary_tree_count(k: u32, n: u32) -> BigInt {
    assert!(k >= 1 && n >= 1);
    let c = binomial(BigInt::from(k as u64 * n as u64), BigInt::from(n as u64 - 1));
    let (q, r) = c.div_rem(&BigInt::from(n));
    assert!(r.is_zero(), "(1/n) C(kn, n-1) must be an integer");
    q
}

/// Total number of leaves over all k-ary rooted trees with n nodes:
/// `C(k(n-1), n-1)`.
pub fn kary_leaf_total(k: u32, n: u32) -> BigInt {
    assert!(k >= 1 && n >= 2);
    binomial(
        BigInt::from(k as u64 * (n as u64 - 1)),
        BigInt::from(n as u64 - 1),
    )
}

/// High-precision value of `2^(1-1/e) · k^k / (k-1)^(k-1)`, the
/// alphabetic-width lower-bound base, rounded to `digits` fractional
/// digits from a 50-digit working interval.
pub fn alphabetic_bound_base(k: u32, digits: u32) -> Result<String, String> {
    if k < 2 {
        return Err("the bound needs k ≥ 2".into());
    }
    let work = 50u32;
    let (lo, hi) = two_pow_one_minus_inv_e(work);
    let factor = BigRational::new(
        BigInt::from(k as u64).pow(k),
        BigInt::from(k as u64 - 1).pow(k - 1),
    );
    let lo = lo * &factor;
    let hi = hi * &factor;
    let lo_s = crate::algebra::decimal_round(&lo, digits);
    let hi_s = crate::algebra::decimal_round(&hi, digits);
    if lo_s != hi_s {
        return Err(format!(
            "interval too wide at {digits} digits: [{lo_s}, {hi_s}]"
        ));
    }
    Ok(lo_s)
}

/// Exact rational value of the base to `digits` correct digits (midpoint
/// of the working interval; for tests and comparisons).
pub fn alphabetic_bound_base_rational(k: u32) -> BigRational {
    let (lo, hi) = two_pow_one_minus_inv_e(50);
    let factor = BigRational::new(
        BigInt::from(k as u64).pow(k),
        BigInt::from(k as u64 - 1).pow(k - 1),
    );
    (lo + hi) * factor / BigRational::from_integer(BigInt::from(2))
}

/// Feasibility margin of the convexity step: `1/e - (1 - 1/k)^k`, which
/// must be positive for a valid choice of the slack in the exponent.
pub fn jensen_margin(k: u32) -> BigRational {
    // Conservative: lower-bound 1/e by the reciprocal of an upper bound
    // of e, so a positive result is a proof.
    let (_, e_hi) = e_interval(40);
    let inv_e_lo = e_hi.recip();
    let ratio = BigRational::new(
        BigInt::from(k as u64 - 1).pow(k),
        BigInt::from(k as u64).pow(k),
    );
    inv_e_lo - ratio
}

/// Interval enclosing `2^(1-1/e)` with about `digits` decimal digits.
fn two_pow_one_minus_inv_e(digits: u32) -> (BigRational, BigRational) {
    // exponent t = (1 - 1/e) · ln 2, then 2^(1-1/e) = e^t.
    let (e_lo, e_hi) = e_interval(digits + 5);
    let one = BigRational::one();
    let t_lo = &one - e_lo.recip(); // 1 - 1/e_lo < 1 - 1/e_hi
    let t_hi = &one - e_hi.recip();
    let (ln2_lo, ln2_hi) = ln2_interval(digits + 5);
    let a_lo = t_lo.clone().min(t_hi.clone()) * &ln2_lo;
    let a_hi = t_lo.max(t_hi) * ln2_hi;
    let (x_lo, _) = exp_interval(&a_lo, digits + 5);
    let (_, x_hi) = exp_interval(&a_hi, digits + 5);
    (x_lo, x_hi)
}

/// e = Σ 1/n! with an explicit tail bound.
fn e_interval(digits: u32) -> (BigRational, BigRational) {
    let eps = BigRational::new(BigInt::one(), BigInt::from(10u32).pow(digits));
    let mut sum = BigRational::zero();
    let mut term = BigRational::one();
    let mut n = 0u32;
    loop {
        sum += &term;
        n += 1;
        term /= BigInt::from(n);
        // tail < 2·next term once n ≥ 2
        if n >= 2 && &term * BigInt::from(2) < eps {
            break;
        }
    }
    let tail = &term * BigRational::from_integer(BigInt::from(2));
    (sum.clone(), sum + tail)
}

/// ln 2 = 2·atanh(1/3) = 2 Σ (1/3)^(2k+1) / (2k+1).
fn ln2_interval(digits: u32) -> (BigRational, BigRational) {
    let eps = BigRational::new(BigInt::one(), BigInt::from(10u32).pow(digits));
    let third = BigRational::new(BigInt::one(), BigInt::from(3));
    let nine = BigRational::new(BigInt::one(), BigInt::from(9));
    let mut sum = BigRational::zero();
    let mut pow = third.clone();
    let mut k = 0u32;
    loop {
        sum += &pow / BigRational::from_integer(BigInt::from(2 * k + 1));
        pow *= &nine;
        k += 1;
        let next = &pow / BigRational::from_integer(BigInt::from(2 * k + 1));
        if &next * BigInt::from(2) < eps {
            let lo = &sum * BigRational::from_integer(BigInt::from(2));
            let hi = (&sum + &next * BigRational::from_integer(BigInt::from(2)))
                * BigRational::from_integer(BigInt::from(2));
            return (lo, hi);
        }
    }
}

/// e^t for rational t in [0, 1], by the Taylor series with tail bound.
fn exp_interval(t: &BigRational, digits: u32) -> (BigRational, BigRational) {
    assert!(!t.is_negative() && *t <= BigRational::one());
    let eps = BigRational::new(BigInt::one(), BigInt::from(10u32).pow(digits));
    let mut sum = BigRational::zero();
    let mut term = BigRational::one();
    let mut n = 0u32;
    loop {
        sum += &term;
        n += 1;
        term = term * t / BigRational::from_integer(BigInt::from(n));
        // For t ≤ 1 and n ≥ 2 the tail is below 2·term.
        if n >= 2 && &term * BigInt::from(2) < eps {
            break;
        }
    }
    let tail = &term * BigRational::from_integer(BigInt::from(2));
    (sum.clone(), sum + tail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::TruncatedSeries;

    /// Brute-force count of k-ary rooted trees with n nodes: each node has
    /// k ordered child slots, each empty or a subtree.
    pub(crate) fn brute_tree_count(k: u32, n: u32) -> BigInt {
        // t(n) = Σ over compositions of n-1 into k ordered parts (parts ≥ 0)
        // of Π t(part), with t(0) = 1.
        let n = n as usize;
        let mut t = vec![BigInt::zero(); n + 1];
        t[0] = BigInt::one();
        for m in 1..=n {
            // distribute m-1 nodes among k subtrees
            let mut ways = vec![BigInt::zero(); m]; // ways[j]: j nodes among i slots
            ways[0] = BigInt::one();
            for _slot in 0..k {
                let mut next = vec![BigInt::zero(); m];
                for (have, w) in ways.iter().enumerate() {
                    if w.is_zero() {
                        continue;
                    }
                    for take in 0..(m - have) {
                        let add = w * &t[take];
                        next[have + take] += add;
                    }
                }
                ways = next;
            }
            t[m] = ways[m - 1].clone();
        }
        t[n].clone()
    }

    /// Brute-force total leaves over all k-ary trees with n nodes.
    pub(crate) fn brute_leaf_total(k: u32, n: u32) -> BigInt {
        // Pair DP: (trees, leaves) for forests of i slots with j nodes.
        let n = n as usize;
        let mut trees = vec![BigInt::zero(); n + 1];
        let mut leaves = vec![BigInt::zero(); n + 1];
        trees[0] = BigInt::one();
        for m in 1..=n {
            let mut ft = vec![BigInt::zero(); m];
            let mut fl = vec![BigInt::zero(); m];
            ft[0] = BigInt::one();
            for _slot in 0..k {
                let mut nt = vec![BigInt::zero(); m];
                let mut nl = vec![BigInt::zero(); m];
                for have in 0..m {
                    if ft[have].is_zero() && fl[have].is_zero() {
                        continue;
                    }
                    for take in 0..(m - have) {
                        let t_add = &ft[have] * &trees[take];
                        let l_add = &ft[have] * &leaves[take] + &fl[have] * &trees[take];
                        nt[have + take] += t_add;
                        nl[have + take] += l_add;
                    }
                }
                ft = nt;
                fl = nl;
            }
            trees[m] = ft[m - 1].clone();
            leaves[m] = if m == 1 {
                BigInt::one() // a single node is a leaf
            } else {
                fl[m - 1].clone()
            };
        }
        leaves[n].clone()
    }

    #[test]
    fn tree_counts_match_brute_force() {
        for k in 1..=4u32 {
            for n in 1..=8u32 {
                assert_eq!(
                    kary_tree_count(k, n),
                    brute_tree_count(k, n),
                    "k={k} n={n}"
                );
            }
        }
        assert_eq!(kary_tree_count(2, 3), BigInt::from(5));
        assert_eq!(kary_tree_count(3, 4), BigInt::from(55));
        for n in 1..=10u32 {
            assert_eq!(kary_tree_count(1, n), BigInt::from(1));
        }
    }

    #[test]
    fn leaf_totals_match_brute_force() {
        for k in 1..=4u32 {
            for n in 2..=8u32 {
                assert_eq!(
                    kary_leaf_total(k, n),
                    brute_leaf_total(k, n),
                    "k={k} n={n}"
                );
            }
        }
        assert_eq!(kary_leaf_total(2, 3), BigInt::from(6));
        assert_eq!(kary_leaf_total(2, 2), BigInt::from(2));
        assert_eq!(kary_leaf_total(1, 5), BigInt::from(1));
    }

    #[test]
    fn integrality_of_tree_formula() {
        for k in 1..=6u32 {
            for n in 1..=30u32 {
                let _ = kary_tree_count(k, n); // panics if not integral
            }
        }
    }

    #[test]
    fn lagrange_matches_fixed_point() {
        use num_rational::BigRational;
        // φ = (1+λ)^2: w = x(1+w)^2 counts binary trees.
        let phi = TruncatedSeries::from_integers(
            [1i64, 2, 1, 0, 0, 0, 0, 0, 0]
                .iter()
                .map(|&c| BigInt::from(c))
                .collect(),
        );
        assert_eq!(
            lagrange_coefficient(&phi, 3).unwrap(),
            BigRational::from_integer(BigInt::from(5))
        );
        // φ = 1: w = x.
        let mut c = vec![BigInt::zero(); 9];
        c[0] = BigInt::one();
        let one = TruncatedSeries::from_integers(c);
        for n in 1..6 {
            let expect = if n == 1 { 1 } else { 0 };
            assert_eq!(
                lagrange_coefficient(&one, n).unwrap(),
                BigRational::from_integer(BigInt::from(expect)),
                "n={n}"
            );
        }
        // φ = (1+λ)^k matches the closed-form tree count.
        for k in 1..=4u32 {
            let mut cs = vec![BigInt::zero(); 9];
            for (j, c) in cs.iter_mut().enumerate().take(k as usize + 1) {
                *c = binomial(BigInt::from(k), BigInt::from(j));
            }
            let phi = TruncatedSeries::from_integers(cs);
            for n in 1..=8u32 {
                assert_eq!(
                    lagrange_coefficient(&phi, n as usize).unwrap(),
                    BigRational::from_integer(kary_tree_count(k, n)),
                    "k={k} n={n}"
                );
            }
        }
    }

    #[test]
    fn lagrange_agrees_with_direct_fixed_point() {
        use num_rational::BigRational;
        // Ten fixed polynomial φ's; solve w = xφ(w) by iteration and
        // compare coefficients.
        let phis: Vec<Vec<i64>> = vec![
            vec![1, 1],
            vec![2, 0, 1],
            vec![1, 3, 3, 1],
            vec![1, 0, 0, 2],
            vec![3, 1],
            vec![1, 2],
            vec![2, 2, 2],
            vec![1, 1, 1, 1],
            vec![4, 0, 1],
            vec![1, 5, 1],
        ];
        for phi_c in phis {
            let order = 10usize;
            let phi = TruncatedSeries::from_integers(
                (0..=order)
                    .map(|i| BigInt::from(*phi_c.get(i).unwrap_or(&0)))
                    .collect(),
            );
            // w = x φ(w) by fixed-point iteration on truncated series.
            let mut w = vec![BigRational::zero(); order + 1];
            for _ in 0..=order + 1 {
                // compute φ(w) then shift by x
                let mut val = vec![BigRational::zero(); order + 1];
                let mut pw = vec![BigRational::zero(); order + 1];
                pw[0] = BigRational::one();
                for (deg, c) in phi_c.iter().enumerate() {
                    if *c != 0 {
                        for (i, p) in pw.iter().enumerate() {
                            val[i] += p * BigRational::from_integer(BigInt::from(*c));
                        }
                    }
                    let _ = deg;
                    // pw *= w
                    let mut next = vec![BigRational::zero(); order + 1];
                    for (i, a) in pw.iter().enumerate() {
                        if a.is_zero() {
                            continue;
                        }
                        for (j, b) in w.iter().enumerate().take(order + 1 - i) {
                            if !b.is_zero() {
                                next[i + j] += a * b;
                            }
                        }
                    }
                    pw = next;
                }
                let mut shifted = vec![BigRational::zero(); order + 1];
                for i in 0..order {
                    shifted[i + 1] = val[i].clone();
                }
                w = shifted;
            }
            for n in 1..=order {
                assert_eq!(
                    lagrange_coefficient(&phi, n).unwrap(),
                    w[n],
                    "φ={phi_c:?} n={n}"
                );
            }
        }
    }

    #[test]
    fn alphabetic_base_values() {
        // Recomputed directly: 2^(1-1/e) ≈ 1.549857, so k=2 gives ≈ 6.1994.
        let b2 = alphabetic_bound_base(2, 4).unwrap();
        assert_eq!(b2, "6.1994");
        // Increasing in k for 2 ≤ k ≤ 10.
        let mut prev = alphabetic_bound_base_rational(2);
        for k in 3..=10 {
            let cur = alphabetic_bound_base_rational(k);
            assert!(cur > prev, "not increasing at k={k}");
            prev = cur;
        }
        // base(k)/k approaches 2^(1-1/e)·e as k grows (within 2% at k=50).
        let b50 = alphabetic_bound_base_rational(50);
        let ratio = b50 / BigRational::from_integer(BigInt::from(50));
        // 2^(1-1/e)·e ≈ 1.549857·2.718282 ≈ 4.2129
        let target = BigRational::new(BigInt::from(42129u64), BigInt::from(10000u64));
        let rel = (ratio.clone() - target.clone()).abs() / target;
        assert!(
            rel < BigRational::new(BigInt::from(2), BigInt::from(100)),
            "ratio {ratio} too far"
        );
    }

    #[test]
    fn jensen_margin_positive() {
        for k in 2..=10 {
            assert!(jensen_margin(k).is_positive(), "margin at k={k}");
        }
    }

    #[test]
    fn binary_trees_are_shifted_catalans() {
        // kary_tree_count(2, n) is the n-th Catalan number.
        let catalan = [1i64, 1, 2, 5, 14, 42, 132, 429];
        for (n, &c) in catalan.iter().enumerate().skip(1) {
            assert_eq!(kary_tree_count(2, n as u32), BigInt::from(c), "n={n}");
        }
    }
}
