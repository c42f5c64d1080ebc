use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{alt_sign, Kind};
use crate::error::{Error, Result};
use crate::exactalg::{
    complete_homogeneous, elementary_symmetric, rat, union_vars, MultiPoly, ScalarExpr, Vars,
};

/// The pieces of the weighted complete-intersection count:
/// `numerator / denominator · Σ terms`.
#[derive(Debug, Clone, PartialEq)]
pub struct WciBreakdown {
    /// `a_1⋯a_m`.
    pub numerator: ScalarExpr,
    /// `ω_0⋯ω_n`.
    pub denominator: ScalarExpr,
    /// The `i`-th summand, sign and power of `d` included.
    pub terms: Vec<ScalarExpr>,
}

impl WciBreakdown {
    pub fn bracket(&self) -> ScalarExpr {
        let vars = self.numerator.vars().clone();
        self.terms.iter().fold(MultiPoly::zero(&vars), |acc, t| &acc + t)
    }

    /// The full count; needs a numeric denominator.
    pub fn total(&self) -> Result<ScalarExpr> {
        let den = self.denominator.constant_value().ok_or_else(|| {
            Error::InvalidInput("weights must be numeric to form the full count".into())
        })?;
        let factor = self.numerator.scale(&(BigRational::one() / den));
        Ok(&factor * &self.bracket())
    }
}

fn shared_vars<'a>(items: impl IntoIterator<Item = &'a ScalarExpr>) -> Vars {
    union_vars(items.into_iter().map(|p| p.vars()))
}

fn embed_all(items: &[ScalarExpr], vars: &Vars) -> Result<Vec<ScalarExpr>> {
    items.iter().map(|p| p.embed(vars)).collect()
}

fn check_codim(n_plus_one: usize, m: usize) -> Result<usize> {
    if n_plus_one < 2 {
        return Err(Error::InvalidInput("need at least two weights".into()));
    }
    let n = n_plus_one - 1;
    if m >= n {
        return Err(Error::out_of_range(
            "complete intersection codimension",
            format!("m = {m} must be below n = {n}"),
        ));
    }
    Ok(n)
}

/// `c_i(V)` for `i = 0..=top`, in the weight/class scalars.
fn ci_scalars(w: &[ScalarExpr], a: &[ScalarExpr], top: usize, vars: &Vars) -> Vec<ScalarExpr> {
    let c = elementary_symmetric(w, top, vars);
    let h = complete_homogeneous(a, top, vars);
    (0..=top)
        .map(|i| {
            (0..=i).fold(MultiPoly::zero(vars), |acc, j| {
                &acc + &(&c[i - j] * &h[j]).scale(&alt_sign(j))
            })
        })
        .collect()
}

/// Weighted complete-intersection count with scalar (possibly symbolic)
/// weights, classes and degree.
pub fn wci_terms(
    weights: &[ScalarExpr],
    classes: &[ScalarExpr],
    degree: &ScalarExpr,
    kind: Kind,
) -> Result<WciBreakdown> {
    let n = check_codim(weights.len(), classes.len())?;
    let vars = shared_vars(weights.iter().chain(classes).chain([degree]));
    let w = embed_all(weights, &vars)?;
    let a = embed_all(classes, &vars)?;
    let d = degree.embed(&vars)?;
    let top = n - classes.len();
    let c = ci_scalars(&w, &a, top, &vars);
    let terms = c
        .iter()
        .enumerate()
        .map(|(i, ci)| (ci * &d.pow((top - i) as u32)).scale(&kind.summand_sign(i)))
        .collect();
    let one = MultiPoly::one(&vars);
    Ok(WciBreakdown {
        numerator: a.iter().fold(one.clone(), |acc, x| &acc * x),
        denominator: w.iter().fold(one, |acc, x| &acc * x),
        terms,
    })
}

fn ints(v: &[i64]) -> Vec<ScalarExpr> {
    v.iter().map(|&x| MultiPoly::number(rat(x))).collect()
}

fn check_positive(what: &str, v: &[i64]) -> Result<()> {
    if v.iter().any(|&x| x <= 0) {
        return Err(Error::InvalidInput(format!("{what} must be positive integers")));
    }
    Ok(())
}

/// Integer-weight front end to [`wci_terms`].
pub fn wci_breakdown(
    weights: &[i64],
    classes: &[i64],
    degree: &ScalarExpr,
    kind: Kind,
) -> Result<WciBreakdown> {
    check_positive("weights", weights)?;
    check_positive("classes", classes)?;
    wci_terms(&ints(weights), &ints(classes), degree, kind)
}

pub fn wci_sing_count(
    weights: &[i64],
    classes: &[i64],
    degree: &ScalarExpr,
    kind: Kind,
) -> Result<ScalarExpr> {
    wci_breakdown(weights, classes, degree, kind)?.total()
}

/// `Πa/Πω · (d + C_1(ω) − W_1(a))²` on a surface complete intersection.
pub fn baum_bott_sum(weights: &[i64], classes: &[i64], degree: &ScalarExpr) -> Result<ScalarExpr> {
    check_positive("weights", weights)?;
    check_positive("classes", classes)?;
    let n = check_codim(weights.len(), classes.len())?;
    if classes.len() + 2 != n {
        return Err(Error::InvalidInput(format!(
            "surface case needs {} classes, got {}",
            n.saturating_sub(2),
            classes.len()
        )));
    }
    let shift: i64 = weights.iter().sum::<i64>() - classes.iter().sum::<i64>();
    let base = degree + &MultiPoly::constant(degree.vars(), rat(shift));
    let factor = BigRational::new(
        classes.iter().map(|&x| BigInt::from(x)).product(),
        weights.iter().map(|&x| BigInt::from(x)).product(),
    );
    Ok(base.pow(2).scale(&factor))
}

/// `Σa − Σω`.
pub fn general_type_index(weights: &[i64], classes: &[i64]) -> i64 {
    classes.iter().sum::<i64>() - weights.iter().sum::<i64>()
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlphaInvariant {
    pub alpha: BigRational,
    pub chi: BigRational,
}

impl AlphaInvariant {
    /// `d | alpha`; zero divides only zero.
    pub fn divides(&self, d: i64) -> bool {
        if d == 0 {
            return self.alpha.is_zero();
        }
        (&self.alpha / rat(d)).is_integer()
    }
}

pub fn alpha_invariant(weights: &[i64], classes: &[i64]) -> Result<AlphaInvariant> {
    check_positive("weights", weights)?;
    check_positive("classes", classes)?;
    if classes.is_empty() {
        return Err(Error::InvalidInput("alpha needs at least one class".into()));
    }
    let n = check_codim(weights.len(), classes.len())?;
    let top = n - classes.len();
    let vars: Vars = Vars::from(Vec::<String>::new());
    let c = ci_scalars(&ints(weights), &ints(classes), top, &vars);
    let alpha = c[top].constant_term();
    let factor = BigRational::new(
        classes.iter().map(|&x| BigInt::from(x)).product(),
        weights.iter().map(|&x| BigInt::from(x)).product(),
    );
    Ok(AlphaInvariant {
        chi: &factor * &alpha,
        alpha,
    })
}
