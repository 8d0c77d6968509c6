use rexenum::algebra::*;
use rexenum::grammar::parse_grammar;
use rexenum::regex::SizeMeasure;

fn f64_of(r: &num_rational::BigRational) -> f64 {
    r.numer().to_string().parse::<f64>().unwrap() / r.denom().to_string().parse::<f64>().unwrap()
}

fn main() {
    // The unary-concatenation grammar with the table's literal bare-A
    // alternative in C_A (all terminals weigh 1: ordinary length).
    let g = "
S -> Q | A | T | C | K;
Q -> A '+' '@' | T '+' '@' | C '+' '@';
A -> T '+' A_T | C '+' A_C | K '+' A_K;
A_T -> T | T '+' A_T | A_C;
A_C -> C | C '+' A_C | A_K;
A_K -> K | K '+' A_K;
T -> 'a';
C -> '(' Q ')' C_Q | '(' A ')' C_A | T C_T | K C_K;
C_Q -> '(' Q ')' | '(' Q ')' C_Q | C_A;
C_A -> A | '(' A ')' C_A | C_T;
C_T -> T | T C_T | C_K;
C_K -> K | K C_K;
K -> '(' A ')' '*' | T '*' | '(' C ')' '*';
";
    let cfg = parse_grammar(g).unwrap();
    let sys = cfg.commutative_image(SizeMeasure::Ordinary);
    let mu = eliminate(&sys, &ElimOptions::default()).unwrap();
    let cand = discriminant(&mu).mul(&mu.leading_s());
    let mut roots = real_roots(&cand);
    for iv in roots.positive() {
        let m = f64_of(&iv.midpoint());
        println!("  rho={m:.9}  1/rho={:.6}", 1.0 / m);
    }
}
