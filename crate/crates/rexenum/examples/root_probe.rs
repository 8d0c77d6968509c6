use rexenum::algebra::*;
use rexenum::grammar::{builtin_system, BuiltinFamily};
use rexenum::regex::SizeMeasure;
use std::time::Instant;

fn main() {
    let sys = builtin_system(BuiltinFamily::Trie, 2, SizeMeasure::Ordinary).unwrap();
    let mu = eliminate(&sys, &ElimOptions::default()).unwrap();
    eprintln!("mu ok");
    let d = discriminant(&mu);
    eprintln!("disc: {}", d.to_text());
    let lead = mu.leading_s();
    eprintln!("lead: {}", lead.to_text());
    let cand = d.mul(&lead);
    let t = Instant::now();
    let mut roots = real_roots(&cand);
    eprintln!("isolated {} roots in {:.1?}", roots.intervals.len(), t.elapsed());
    for iv in &roots.intervals {
        eprintln!("  [{:.6}, {:.6}] exact={:?} simple={}",
            iv.lo.numer().to_string().parse::<f64>().unwrap_or(f64::NAN) / iv.lo.denom().to_string().parse::<f64>().unwrap_or(f64::NAN),
            iv.hi.numer().to_string().parse::<f64>().unwrap_or(f64::NAN) / iv.hi.denom().to_string().parse::<f64>().unwrap_or(f64::NAN),
            iv.exact.as_ref().map(|e| e.to_string()), iv.simple);
    }
    let pos = roots.positive();
    eprintln!("positive: {}", pos.len());
}
