//! Catalan, Fibonacci and Lucas numbers, and exact arithmetic in Q(√5).

use fibcat::exactnum::{catalan, fibonacci, lucas, QuadRat};

fn main() {
    let c: Vec<String> = (0..10).map(|n| catalan(n).to_string()).collect();
    println!("C_0..C_9   = {}", c.join(" "));
    println!("F_-5..F_5  = {:?}", (-5..=5).map(|n| fibonacci(n).to_string()).collect::<Vec<_>>());
    println!("L_100      = {}", lucas(100));

    let alpha = QuadRat::alpha();
    let beta = QuadRat::beta();
    println!("alpha*beta = {}", &alpha * &beta);
    let a10 = alpha.pow(10).unwrap();
    // alpha^n = (L_n + F_n sqrt5)/2
    println!("alpha^10   = {a10}  (L_10 = {}, F_10 = {})", lucas(10), fibonacci(10));
    println!("1/alpha    = {}", alpha.inv().unwrap());
}
