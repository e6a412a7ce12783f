//! Mathematical constants, each computed two independent ways.

use fibcat::arbreal::{self, ArbReal};

fn main() {
    let digits = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(60u32);
    let pairs: [(&str, fn(u32) -> ArbReal, fn(u32) -> ArbReal); 4] = [
        ("pi", arbreal::pi, arbreal::pi_agm),
        ("G", arbreal::catalan_g, arbreal::catalan_g_clausen),
        ("zeta(3)", arbreal::zeta3, arbreal::zeta3_euler_maclaurin),
        ("ln alpha", arbreal::ln_alpha, arbreal::ln_alpha_asinh),
    ];
    for (name, a, b) in pairs {
        let (x, y) = (a(digits), b(digits));
        println!("{name:9} {}", x.to_decimal_string(digits as usize));
        println!("{:9} routes differ by {:.3}", "", (&x - &y).abs());
    }
    println!("{:9} {}", "sqrt5", arbreal::sqrt5(digits).to_decimal_string(digits as usize));
}
