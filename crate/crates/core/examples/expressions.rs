//! Parsing and evaluating expressions, exactly and numerically.

use fibcat::expr::{eval_exact_qsqrt5, eval_exact_rational, eval_numeric, Env};
use fibcat::seriesdsl::parse_expression;

fn main() {
    let env = Env::new().with("n", 7).with("s", 2);
    for src in ["C(n)*F(2*n + s)/4^(2*n + 2)", "binom(2*n, n)/(n + 1) - C(n)", "L(n)^2 - 5*F(n)^2"] {
        let e = parse_expression(src).unwrap();
        println!("{src:32} = {}", eval_exact_rational(&e, &env).unwrap());
    }

    let e = parse_expression("alpha^5 - beta^5").unwrap();
    println!("{:32} = {}", e.to_string(), eval_exact_qsqrt5(&e, &env).unwrap());

    for src in ["pi^2/18", "cos(pi/5)/sin(pi/5)", "quad(x/sin(x), 0, pi/2) - 2*catalanG", "Cl2(pi/2)"] {
        let e = parse_expression(src).unwrap();
        println!("{src:32} ≈ {:.30}", eval_numeric(&e, &env, 30).unwrap());
    }

    match parse_expression("C(n)/5^") {
        Ok(_) => unreachable!(),
        Err(err) => println!("syntax error: {err}"),
    }
}
