use num_traits::Signed;

use crate::chow::{ChowContext, ClassExpr, ToricModel};
use crate::error::{Error, Result};
use crate::exactalg::{rat, union_vars, MultiPoly, ScalarExpr};

/// `lhs ≤ rhs`, with `holds` decided only when the slack is numeric.
#[derive(Debug, Clone, PartialEq)]
pub struct InequalityVerdict {
    pub lhs: ScalarExpr,
    pub rhs: ScalarExpr,
    pub slack: ScalarExpr,
    pub holds: Option<bool>,
}

impl InequalityVerdict {
    fn new(lhs: ScalarExpr, rhs: ScalarExpr) -> Result<Self> {
        let vars = union_vars([lhs.vars(), rhs.vars()]);
        let lhs = lhs.embed(&vars)?;
        let rhs = rhs.embed(&vars)?;
        let slack = &rhs - &lhs;
        let holds = slack.constant_value().map(|s| !s.is_negative());
        Ok(InequalityVerdict { lhs, rhs, slack, holds })
    }
}

#[derive(Debug, Clone)]
pub enum PoincareInput {
    /// Invariant curve `V(a_1..a_{n−1})` in `P(ω)`.
    WciCurve { weights: Vec<i64>, classes: Vec<i64>, degree: ScalarExpr },
    /// Invariant complete intersection of any dimension in `P(ω)`.
    WciGeneral { weights: Vec<i64>, classes: Vec<i64>, degree: ScalarExpr },
    /// Invariant complete-intersection curve in a toric model.
    ToricCurve { model: ToricModel, classes: Vec<ClassExpr>, degree: ClassExpr },
}

/// Poincaré-type bound for an invariant complete intersection. `strict`
/// subtracts one from the right-hand side; on the toric variant it needs a
/// rank-one model and subtracts the degree `∫H·Πa` of the curve.
pub fn poincare_check(input: &PoincareInput, strict: bool) -> Result<InequalityVerdict> {
    match input {
        PoincareInput::WciCurve { weights, classes, degree }
        | PoincareInput::WciGeneral { weights, classes, degree } => {
            if weights.len() < 2 {
                return Err(Error::InvalidInput("need at least two weights".into()));
            }
            let n = weights.len() - 1;
            let m = classes.len();
            let curve = matches!(input, PoincareInput::WciCurve { .. });
            // The curve bound is pure arithmetic in the inputs, so only an
            // empty class list is rejected there.
            if curve && m == 0 {
                return Err(Error::InvalidInput("wci-curve needs at least one class".into()));
            }
            if !curve && m >= n {
                return Err(Error::out_of_range(
                    "complete intersection codimension",
                    format!("m = {m} must be below n = {n}"),
                ));
            }
            let mut lhs: i64 = classes.iter().sum();
            if !curve {
                lhs += (n - m) as i64 - 1;
            }
            let mut shift: i64 = weights.iter().sum();
            if strict {
                shift -= 1;
            }
            let vars = degree.vars();
            let rhs = degree + &MultiPoly::constant(vars, rat(shift));
            InequalityVerdict::new(MultiPoly::constant(vars, rat(lhs)), rhs)
        }
        PoincareInput::ToricCurve { model, classes, degree } => {
            let n = model.dim();
            if classes.len() + 1 != n {
                return Err(Error::InvalidInput(format!(
                    "toric-curve needs {} classes on a {n}-dimensional model, got {}",
                    n.saturating_sub(1),
                    classes.len()
                )));
            }
            if strict && model.rank() != 1 {
                return Err(Error::Inapplicable(
                    "strict toric-curve check needs a rank-one model".into(),
                ));
            }
            let ctx = ChowContext::for_exprs(
                model,
                classes.iter().chain([degree]).flat_map(|c| c.coords()),
            )?;
            let a = classes.iter().map(|c| ctx.class(c)).collect::<Result<Vec<_>>>()?;
            let dual = a.iter().fold(ctx.one(), |acc, x| &acc * x);
            let sum = a.iter().fold(ctx.zero(), |acc, x| &acc + x);
            let mut rhs_class = &ctx.class(degree)? + &ctx.chern(1)?;
            if strict {
                rhs_class = &rhs_class - &ctx.generator(0);
            }
            let lhs = ctx.integrate(&(&sum * &dual));
            let rhs = ctx.integrate(&(&rhs_class * &dual));
            InequalityVerdict::new(lhs, rhs)
        }
    }
}
