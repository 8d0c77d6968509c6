use rexenum::algebra::{discriminant, eliminate_resultants, minimal_annihilator, ElimOptions};
use rexenum::grammar::{builtin_system, BuiltinFamily};
use rexenum::regex::SizeMeasure;
use std::time::Instant;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let fam: BuiltinFamily = args[1].parse().unwrap();
    let k: u32 = args[2].parse().unwrap();
    let measure: SizeMeasure = args[3].parse().unwrap();
    let sys = builtin_system(fam, k, measure).unwrap();
    eprintln!("vars: {:?}", sys.vars);
    let t = Instant::now();
    let full = eliminate_resultants(&sys, &ElimOptions::default());
    match &full {
        Ok(f) => eprintln!("cascade: degS={} degX={} in {:.1?}", f.deg_s(), f.max_x_degree(), t.elapsed()),
        Err(e) => eprintln!("cascade ERROR: {e} in {:.1?}", t.elapsed()),
    }
    let t = Instant::now();
    let mu = minimal_annihilator(&sys, full.as_ref().ok(), &ElimOptions::default());
    match &mu {
        Ok(m) => {
            eprintln!("minimal: degS={} degX={} in {:.1?}", m.deg_s(), m.max_x_degree(), t.elapsed());
            eprintln!("mu = {}", m.to_text());
            let t2 = Instant::now();
            let d = discriminant(m);
            eprintln!("disc deg={:?} in {:.1?}", d.degree(), t2.elapsed());
        }
        Err(e) => eprintln!("minimal ERROR: {e} in {:.1?}", t.elapsed()),
    }
}
