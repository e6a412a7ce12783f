use std::fmt;

use num_traits::{One, Signed};

use super::{BinOp, Expr, UnaryOp};

// Binding strength: atoms 5, power 4, unary minus 3, product 2, sum 1.
fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Binary(BinOp::Add | BinOp::Sub, ..) => 1,
        Expr::Binary(BinOp::Mul | BinOp::Div, ..) => 2,
        Expr::Unary(UnaryOp::Neg, _) => 3,
        Expr::Binary(BinOp::Pow, ..) => 4,
        _ => 5,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if prec(e) < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) if n.is_negative() => write!(f, "({n})"),
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Rat(r) if r.denom().is_one() => write!(f, "({})", r.numer()),
            Expr::Rat(r) => write!(f, "({}/{})", r.numer(), r.denom()),
            Expr::Const(c) => f.write_str(c.name()),
            Expr::Var(v) => f.write_str(v),
            Expr::Unary(UnaryOp::Neg, a) => {
                f.write_str("-")?;
                write_at(f, a, 3)
            }
            Expr::Unary(op, a) => write!(f, "{}({a})", op.name()),
            Expr::Binary(op, a, b) => {
                let (sym, lmin, rmin) = match op {
                    BinOp::Add => (" + ", 1, 2),
                    BinOp::Sub => (" - ", 1, 2),
                    BinOp::Mul => ("*", 2, 3),
                    BinOp::Div => ("/", 2, 3),
                    BinOp::Pow => ("^", 5, 3),
                };
                write_at(f, a, lmin)?;
                f.write_str(sym)?;
                write_at(f, b, rmin)
            }
            Expr::Seq(func, args) => {
                write!(f, "{}(", func.name())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
            Expr::Quad(body, lo, hi) => write!(f, "quad({body}, {lo}, {hi})"),
            Expr::Clausen(a) => write!(f, "Cl2({a})"),
        }
    }
}
