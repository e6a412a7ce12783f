//! Summing series under geometric and algebraic tail strategies.

use fibcat::engine::sum_series;
use fibcat::expr::Env;
use fibcat::seriesdsl::{parse_expression, SeriesSpec, TailStrategy};

fn show(term: &str, start: i64, tail: &str, digits: u32) {
    let spec = SeriesSpec { index: "n".into(), start, term: parse_expression(term).unwrap() };
    let tail: TailStrategy = tail.parse().unwrap();
    match sum_series(&spec, &Env::new(), &tail, digits) {
        Ok(s) => println!(
            "sum {term:24} = {}\n    {} terms, tail bound {:.3}",
            s.value.to_decimal_string(digits as usize),
            s.terms_used,
            s.tail_bound
        ),
        Err(e) => println!("sum {term:24}: {e}"),
    }
}

fn main() {
    show("C(n)/5^n", 0, "geometric ratio=4/5 from=1", 50);
    show("1/(n^2*(n+1)*C(n))", 1, "geometric ratio=1/3 from=1", 50);
    // radius-of-convergence boundary: terms decay like n^(-3/2)
    show("C(n)/4^n", 0, "algebraic ladder=-1/2 order=8", 12);
    // understated ratio
    show("C(n)/5^n", 0, "geometric ratio=7/10 from=1", 50);
}
