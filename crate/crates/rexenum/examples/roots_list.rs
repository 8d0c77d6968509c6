use rexenum::algebra::*;
use rexenum::grammar::{builtin_system, BuiltinFamily};
use rexenum::regex::SizeMeasure;

fn f64_of(r: &num_rational::BigRational) -> f64 {
    r.numer().to_string().parse::<f64>().unwrap() / r.denom().to_string().parse::<f64>().unwrap()
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let fam: BuiltinFamily = args[1].parse().unwrap();
    let k: u32 = args[2].parse().unwrap();
    let measure: SizeMeasure = args[3].parse().unwrap();
    let sys = builtin_system(fam, k, measure).unwrap();
    let mu = eliminate(&sys, &ElimOptions::default()).unwrap();
    let cand = discriminant(&mu).mul(&mu.leading_s());
    let mut roots = real_roots(&cand);
    let pos = roots.positive();
    println!("{} k={} {}: positive roots and reciprocals:", fam.name(), k, measure);
    for iv in &pos {
        let m = f64_of(&iv.midpoint());
        println!("  rho={m:.9}  1/rho={:.6}", 1.0 / m);
    }
}
