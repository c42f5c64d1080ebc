//! Exact rational arithmetic and sparse multivariate polynomials.
//!
//! Everything downstream (Chow elements, counts, local indices) is built on
//! [`MultiPoly`] with [`BigRational`] coefficients. Polynomials carry their
//! variable table; binary operations require identical tables and callers
//! align them first with [`MultiPoly::embed`] or [`union_vars`].

mod parse;
mod poly;
mod symmetric;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use parse::{parse_poly, parse_poly_auto, parse_rational};
pub use poly::{grlex_cmp, union_vars, vars_from, Exponents, MultiPoly, Vars};
pub use symmetric::{complete_homogeneous, elementary_symmetric};

/// Exact value or polynomial in formal degree symbols; the output type of every count.
pub type ScalarExpr = MultiPoly;

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a rational as `p` or `p/q`.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
