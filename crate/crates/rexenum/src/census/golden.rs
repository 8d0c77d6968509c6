//! Bundled reference tables of exact language counts, used by
//! `--verify-against reference` and the acceptance suite. Every cell
//! carries its provenance: table (measure + class), row (size n), column
//! (alphabet size k).

use super::LanguageClass;
use crate::regex::SizeMeasure;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GoldenCell {
    pub measure: SizeMeasure,
    pub class: LanguageClass,
    pub k: u32,
    pub n: u64,
    pub count: u64,
}

const DATA: &str = include_str!("../../data/reference_counts.tsv");

/// All reference cells.
pub fn golden_cells() -> Vec<GoldenCell> {
    DATA.lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let mut it = l.split('\t');
            let measure: SizeMeasure = it.next().unwrap().parse().unwrap();
            let class: LanguageClass = it.next().unwrap().parse().unwrap();
            let k: u32 = it.next().unwrap().parse().unwrap();
            let n: u64 = it.next().unwrap().parse().unwrap();
            let count: u64 = it.next().unwrap().parse().unwrap();
            GoldenCell { measure, class, k, n, count }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn data_parses_and_spot_checks() {
        let cells = golden_cells();
        assert_eq!(cells.len(), 206);
        let find = |m: SizeMeasure, c: LanguageClass, k: u32, n: u64| {
            cells
                .iter()
                .find(|x| x.measure == m && x.class == c && x.k == k && x.n == n)
                .map(|x| x.count)
        };
        assert_eq!(find(SizeMeasure::Ordinary, LanguageClass::Finite, 1, 10), Some(14));
        assert_eq!(find(SizeMeasure::Ordinary, LanguageClass::General, 2, 10), Some(32731));
        assert_eq!(find(SizeMeasure::ReversePolish, LanguageClass::Finite, 1, 19), Some(118));
        assert_eq!(find(SizeMeasure::Alphabetic, LanguageClass::General, 2, 5), Some(114554));
        assert_eq!(find(SizeMeasure::Alphabetic, LanguageClass::General, 2, 6), Some(1768133));
        assert_eq!(find(SizeMeasure::Ordinary, LanguageClass::General, 4, 10), None);
    }
}
