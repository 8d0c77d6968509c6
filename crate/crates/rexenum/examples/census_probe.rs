use rexenum::census::{census, CensusGrammar, CensusOptions, LanguageClass};
use rexenum::regex::SizeMeasure;
use std::time::Instant;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let k: u32 = args.get(1).map(|s| s.parse().unwrap()).unwrap_or(2);
    let measure: SizeMeasure = args.get(2).map(|s| s.parse().unwrap()).unwrap_or(SizeMeasure::Ordinary);
    let class: LanguageClass = args.get(3).map(|s| s.parse().unwrap()).unwrap_or(LanguageClass::General);
    let max: u64 = args.get(4).map(|s| s.parse().unwrap()).unwrap_or(10);
    let t = Instant::now();
    let r = census(k, measure, class, max, CensusGrammar::Improved, &CensusOptions::default()).unwrap();
    println!("k={k} {measure} {class:?} rows={:?} in {:.1?}", r.table.rows, t.elapsed());
}
