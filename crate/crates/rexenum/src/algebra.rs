//! Exact polynomial algebra: elimination of a counting system to an
//! annihilating bivariate polynomial, discriminants, real-root isolation,
//! and exponential growth bounds.

mod bipoly;
mod eliminate;
mod growth;
mod mpoly;
mod sturm;
mod unipoly;

pub use bipoly::{discriminant, resultant_s, BiPoly};
pub use eliminate::{eliminate, eliminate_resultants, minimal_annihilator, ElimMethod, ElimOptions};
pub use growth::{
    annihilator_json, bound_to_json, decimal_round, growth_bound,
    growth_bound_from_annihilator, select_singularity, Direction, GrowthBound, GrowthOptions,
};
pub use mpoly::MPoly;
pub use sturm::{
    bisect_interval, count_roots_in, real_roots, real_roots_to_width, RealRoots, RootInterval,
};
pub use unipoly::{normalize_sign, UniPoly};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("elimination grew past the configured cap ({terms} terms, total degree {degree}); try the guessing method")]
    Blowup { terms: usize, degree: u32 },
    #[error("resultant vanished identically; the system is degenerate for this route")]
    ZeroResultant,
    #[error("no polynomial annihilating the series was found within the degree caps")]
    NoAnnihilator,
    #[error("no positive real candidate roots; the series has no finite positive singularity in range")]
    NoPositiveRoots,
    #[error("prior bound must be positive")]
    BadPrior,
    #[error("series computation failed: {0}")]
    Series(crate::series::SeriesError),
    #[error("cancelled by deadline or request")]
    Cancelled,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::parse_grammar;
    use crate::regex::SizeMeasure;

    const ITE: &str = "S -> M | U;\nM -> '0' M '1' M | ;\nU -> '0' S | '0' M '1' U;";

    #[test]
    fn eliminate_if_then_else() {
        let sys = parse_grammar(ITE)
            .unwrap()
            .commutative_image(SizeMeasure::Ordinary);
        for method in [ElimMethod::Resultants, ElimMethod::Guess] {
            let opts = ElimOptions { method, ..ElimOptions::default() };
            let p = eliminate(&sys, &opts).unwrap();
            // ±(x(2x-1) S^2 + (2x-1) S + 1)
            let expected = BiPoly::new(vec![
                UniPoly::from_i64(&[1]),
                UniPoly::from_i64(&[-1, 2]),
                UniPoly::from_i64(&[0, -1, 2]),
            ])
            .normalized();
            assert_eq!(p, expected, "method {method:?}");
        }
    }

    #[test]
    fn eliminate_catalan() {
        let sys = parse_grammar("F -> 'x' | F F;")
            .unwrap()
            .commutative_image(SizeMeasure::Ordinary);
        let p = eliminate(&sys, &ElimOptions::default()).unwrap();
        // f^2 - f + x
        let expected = BiPoly::new(vec![
            UniPoly::from_i64(&[0, 1]),
            UniPoly::from_i64(&[-1]),
            UniPoly::from_i64(&[1]),
        ])
        .normalized();
        assert_eq!(p, expected);
    }

    #[test]
    fn eliminate_prefix_chain() {
        use crate::grammar::{builtin_system, BuiltinFamily};
        for k in [1u32, 2] {
            let sys = builtin_system(BuiltinFamily::PrefixChain, k, SizeMeasure::Ordinary).unwrap();
            let p = eliminate(&sys, &ElimOptions::default()).unwrap();
            // (1 - kx - kx^5) S - kx, up to sign.
            let kk = k as i64;
            let expected = BiPoly::new(vec![
                UniPoly::from_i64(&[0, -kk]),
                UniPoly::from_i64(&[1, -kk, 0, 0, 0, -kk]),
            ])
            .normalized();
            assert_eq!(p, expected, "k={k}");
        }
    }

    #[test]
    fn verify_annihilation_catches_corruption() {
        use crate::series::{solve_series, verify_annihilation, TruncatedSeries};
        let sys = parse_grammar("F -> 'x' | F F;")
            .unwrap()
            .commutative_image(SizeMeasure::Ordinary);
        let f = solve_series(&sys, "F", 30).unwrap();
        let p = BiPoly::new(vec![
            UniPoly::from_i64(&[0, 1]),
            UniPoly::from_i64(&[-1]),
            UniPoly::from_i64(&[1]),
        ]);
        assert!(verify_annihilation(&p, &f));

        // Corrupt a_3 to 3: detection required.
        let mut coeffs = f.coeffs().to_vec();
        coeffs[3] = num_rational::BigRational::from_integer(3.into());
        let bad = TruncatedSeries::from_rationals(coeffs);
        assert!(!verify_annihilation(&p, &bad));

        // The if-then-else annihilator against its own S-series.
        let sys2 = parse_grammar(ITE)
            .unwrap()
            .commutative_image(SizeMeasure::Ordinary);
        let s = solve_series(&sys2, "S", 30).unwrap();
        let p2 = BiPoly::new(vec![
            UniPoly::from_i64(&[1]),
            UniPoly::from_i64(&[-1, 2]),
            UniPoly::from_i64(&[0, -1, 2]),
        ]);
        assert!(verify_annihilation(&p2, &s));
    }

    #[test]
    fn growth_bound_worked_example() {
        let sys = parse_grammar(ITE)
            .unwrap()
            .commutative_image(SizeMeasure::Ordinary);
        let opts = GrowthOptions { direction: Direction::Upper, ..GrowthOptions::default() };
        let b = growth_bound(&sys, "if-then-else", SizeMeasure::Ordinary, &opts).unwrap();
        use num_bigint::BigInt;
        use num_rational::BigRational;
        assert_eq!(b.base_exact, Some(BigRational::from_integer(BigInt::from(2))));
        assert_eq!(b.base_decimal(9), "2.000000000");
        assert_eq!(b.unique_modulus, Some(false)); // -1/2 mirrors +1/2
    }

    #[test]
    fn growth_bound_catalan() {
        let sys = parse_grammar("F -> 'x' | F F;")
            .unwrap()
            .commutative_image(SizeMeasure::Ordinary);
        let b = growth_bound(&sys, "catalan", SizeMeasure::Ordinary, &GrowthOptions::default())
            .unwrap();
        use num_bigint::BigInt;
        use num_rational::BigRational;
        assert_eq!(
            b.base_exact,
            Some(BigRational::from_integer(BigInt::from(4)))
        );
        assert_eq!(b.unique_modulus, Some(true));
    }
}
