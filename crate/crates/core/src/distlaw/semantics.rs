//! Evaluation of ring terms in 2×2 integer matrices with wrapping arithmetic.
//!
//! Matrices do not commute, so equal evaluations at random matrices are a
//! good independent test of noncommutative polynomial identities.

use std::ops::{Add, Mul, Neg};

use crate::term::ops::*;
use crate::term::Term;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mat2(pub [i64; 4]);

impl Mat2 {
    pub const ZERO: Mat2 = Mat2([0, 0, 0, 0]);
    pub const ONE: Mat2 = Mat2([1, 0, 0, 1]);
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        let [a, b, c, d] = self.0;
        let [e, f, g, h] = o.0;
        Mat2([a.wrapping_add(e), b.wrapping_add(f), c.wrapping_add(g), d.wrapping_add(h)])
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        let [a, b, c, d] = self.0;
        let [e, f, g, h] = o.0;
        let dot = |x: i64, y: i64, z: i64, w: i64| x.wrapping_mul(y).wrapping_add(z.wrapping_mul(w));
        Mat2([dot(a, e, b, g), dot(a, f, b, h), dot(c, e, d, g), dot(c, f, d, h)])
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        Mat2(self.0.map(i64::wrapping_neg))
    }
}

/// Evaluates a term built from ring operations (either multiplication,
/// unit, addition, zero, negation). Returns `None` on other operations or
/// unbound variables.
pub fn eval(t: &Term, env: &[Mat2]) -> Option<Mat2> {
    match t {
        Term::Var(i) => env.get(*i).copied(),
        Term::App(op, args) => {
            let v: Option<Vec<Mat2>> = args.iter().map(|a| eval(a, env)).collect();
            let v = v?;
            match *op {
                o if o == MUL || o == SEMI_MUL => Some(v[0] * v[1]),
                o if o == ADD => Some(v[0] + v[1]),
                o if o == NEG => Some(-v[0]),
                o if o == UNIT => Some(Mat2::ONE),
                o if o == ZERO => Some(Mat2::ZERO),
                _ => None,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrices_do_not_commute() {
        let x = Mat2([1, 1, 0, 1]);
        let y = Mat2([1, 0, 1, 1]);
        assert_ne!(x * y, y * x);
        let t = Term::binary(MUL, Term::Var(0), Term::Var(1));
        assert_eq!(eval(&t, &[x, y]), Some(x * y));
        assert_eq!(eval(&Term::constant(POINT), &[]), None);
    }
}
