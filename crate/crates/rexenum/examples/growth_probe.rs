use num_bigint::BigInt;
use num_rational::BigRational;
use rexenum::algebra::{growth_bound, Direction, ElimMethod, ElimOptions, GrowthOptions};
use rexenum::grammar::{builtin_system, BuiltinFamily};
use rexenum::regex::SizeMeasure;
use std::time::Instant;

fn rat(s: &str) -> BigRational {
    // decimal string to rational
    match s.split_once('.') {
        None => BigRational::from_integer(s.parse::<i64>().unwrap().into()),
        Some((w, f)) => {
            let scale = BigInt::from(10u32).pow(f.len() as u32);
            let v = BigInt::from(w.parse::<i64>().unwrap()) * &scale + BigInt::from(f.parse::<i64>().unwrap());
            BigRational::new(v, scale)
        }
    }
}

/// sqrt(k) as a rational, ~24 digits.
fn sqrt_rat(k: u32) -> BigRational {
    let scale = BigInt::from(10u32).pow(24);
    let target = BigInt::from(k) * &scale * &scale;
    let root = target.sqrt();
    BigRational::new(root, scale)
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let fam: BuiltinFamily = args[1].parse().unwrap();
    let k: u32 = args[2].parse().unwrap();
    let measure: SizeMeasure = args[3].parse().unwrap();
    let dir = if args[4] == "lower" { Direction::Lower } else { Direction::Upper };
    let prior = args.get(5).filter(|p| !p.is_empty() && p.as_str() != "none").map(|p| if p == "sqrt" { sqrt_rat(k) } else { rat(p) });
    let method = if args.get(6).map(|s| s.as_str()) == Some("guess") { ElimMethod::Guess } else { ElimMethod::Resultants };

    let t = Instant::now();
    let sys = builtin_system(fam, k, measure).unwrap();
    let opts = GrowthOptions {
        direction: dir,
        prior_base: prior,
        elim: ElimOptions { method, ..ElimOptions::default() },
        ..GrowthOptions::default()
    };
    match growth_bound(&sys, fam.name(), measure, &opts) {
        Ok(b) => println!(
            "{} k={} {} {:?}: base={} (idx {}/{} uniq={:?}) degS={} degX={} in {:.1?}",
            fam.name(), k, measure, dir, b.base_decimal(6), b.selected_index,
            b.candidate_count, b.unique_modulus, b.annihilator.deg_s(),
            b.annihilator.max_x_degree(), t.elapsed()
        ),
        Err(e) => println!("{} k={} {} {:?}: ERROR {e} in {:.1?}", fam.name(), k, measure, dir, t.elapsed()),
    }
}
