use num_bigint::BigInt;
use num_rational::BigRational;

use super::{alt_sign, counts::foliation_sing_count};
use crate::catalog::{builtin, ModelSpec};
use crate::chow::ClassExpr;
use crate::error::{Error, Result};
use crate::exactalg::{rat, union_vars, MultiPoly, ScalarExpr};

fn binomial(n: usize, k: usize) -> BigRational {
    let mut c = BigInt::from(1);
    for i in 0..k {
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    BigRational::from_integer(c)
}

/// Closed form of the foliation count on the scroll `F(a_1..a_n)` for degree
/// `d1·L + d2·M`, valid for `n > 2`.
pub fn scroll_closed_form(a: &[i64], d1: &ScalarExpr, d2: &ScalarExpr) -> Result<ScalarExpr> {
    let n = a.len();
    if n <= 2 {
        return Err(Error::out_of_range("scroll closed form", format!("n = {n} must exceed 2")));
    }
    let vars = union_vars([d1.vars(), d2.vars()]);
    let d1 = d1.embed(&vars)?;
    let d2 = d2.embed(&vars)?;
    let konst = |x: BigRational| MultiPoly::constant(&vars, x);
    let sign_n = alt_sign(n);
    let size: i64 = a.iter().sum();

    // P(t) at t = −d2.
    let t = -&d2;
    let mut inner = MultiPoly::zero(&vars);
    for i in 0..=(n - 2) {
        let c = &alt_sign(i) * &binomial(n, i);
        inner = &inner + &t.pow((n - 2 - i) as u32).scale(&c);
    }
    let p = &(&t * &inner) + &konst(&sign_n * &rat(1 - n as i64));

    let lead = &(&d1.scale(&rat(n as i64)) + &d2.scale(&rat(size)))
        * &(&d2 + &konst(rat(1))).pow((n - 1) as u32);
    Ok(&(&lead.scale(&sign_n) - &p.scale(&rat(2))) + &konst(&sign_n * &rat(2)))
}

/// How the closed form relates to the tensor-evaluated count.
#[derive(Debug, Clone, PartialEq)]
pub struct ScrollRelation {
    /// `closed = sign · count` identically in `(d1, d2)`; observed to be `(−1)^n`.
    pub sign: i64,
    pub closed: ScalarExpr,
    pub count: ScalarExpr,
}

/// Compare [`scroll_closed_form`] with the symbolic count on `F(a)`. The
/// sign is read off at `(0, 0)`; the relation must then hold identically.
pub fn scroll_count_relation(a: &[i64]) -> Result<ScrollRelation> {
    let model = builtin(&ModelSpec::Scroll(a.to_vec()))?;
    let degree = ClassExpr::symbolic(&["d1", "d2"]);
    let count = foliation_sing_count(&model, &degree)?;
    let vars = count.vars().clone();
    let d1 = MultiPoly::var(&vars, 0);
    let d2 = MultiPoly::var(&vars, 1);
    let closed = scroll_closed_form(a, &d1, &d2)?.embed(&vars)?;
    let at_origin = |p: &ScalarExpr| p.constant_term();
    let (c0, k0) = (at_origin(&closed), at_origin(&count));
    let sign = if c0 == k0 { 1 } else if c0 == -k0 { -1 } else { 0 };
    if sign == 0 || closed != count.scale(&rat(sign)) {
        return Err(Error::validation(
            "scroll closed form",
            format!("closed form {closed} is not ± the count {count}"),
        ));
    }
    Ok(ScrollRelation { sign, closed, count })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn num(x: i64) -> ScalarExpr {
        MultiPoly::number(rat(x))
    }

    #[test]
    fn vanishing_points() {
        assert!(scroll_closed_form(&[1, 1, 1], &num(-2), &num(0)).unwrap().is_zero());
        for a in [[1, 1, 1, 1], [1, 2, 3, 4], [0, 0, 1, 3], [2, 2, 2, 2]] {
            let s: i64 = a.iter().sum();
            // n = 4, d2 = −2, d1 = −(1 − 1 − 2s)/4 = s/2.
            if s % 2 == 0 {
                let v = scroll_closed_form(&a, &num(s / 2), &num(-2)).unwrap();
                assert!(v.is_zero(), "{a:?}");
            }
        }
        assert!(scroll_closed_form(&[1, 1], &num(0), &num(0)).is_err());
    }

    #[test]
    fn euler_number_at_origin() {
        let r = scroll_count_relation(&[1, 1, 1]).unwrap();
        assert_eq!(r.count.constant_term(), rat(6));
        assert_eq!(r.closed.constant_term(), rat(-6));
    }

    #[test]
    fn matches_count() {
        for a in [vec![1, 1, 1], vec![1, 2, 3], vec![0, 0, 0], vec![-1, 2, 5, 1], vec![1, 1, 1, 1, 2]] {
            let r = scroll_count_relation(&a).unwrap();
            assert_eq!(r.sign, if a.len() % 2 == 0 { 1 } else { -1 }, "{a:?}");
        }
    }
}
