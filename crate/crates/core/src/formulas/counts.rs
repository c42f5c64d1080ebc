use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{alt_sign, Kind};
use crate::chow::{ChowContext, ChowElement, ClassExpr, ToricModel};
use crate::error::{Error, Result};
use crate::exactalg::ScalarExpr;

struct Setup<'m> {
    ctx: ChowContext<'m>,
    chern: Vec<ChowElement>,
}

impl<'m> Setup<'m> {
    fn new(model: &'m ToricModel, inputs: &[&ClassExpr]) -> Result<Self> {
        let ctx = ChowContext::for_exprs(model, inputs.iter().flat_map(|c| c.coords()))?;
        let chern = ctx.chern_classes()?;
        Ok(Setup { ctx, chern })
    }

    fn n(&self) -> usize {
        self.ctx.model().dim()
    }

    fn class(&self, c: &ClassExpr) -> Result<ChowElement> {
        self.ctx.class(c)
    }

    fn integrate(&self, e: &ChowElement) -> ScalarExpr {
        self.ctx.integrate(e)
    }
}

/// `Σ_{j=0..n} ∫ C_j(h)·d^{n−j}`: singular points of a foliation of degree `d`,
/// counted with multiplicity.
pub fn foliation_sing_count(model: &ToricModel, degree: &ClassExpr) -> Result<ScalarExpr> {
    let s = Setup::new(model, &[degree])?;
    let d = s.class(degree)?;
    let n = s.n();
    let mut total = s.ctx.zero();
    for (j, c) in s.chern.iter().enumerate() {
        total = &total + &(c * &d.pow((n - j) as u32));
    }
    Ok(s.integrate(&total))
}

/// `∫ C_n(h)`.
pub fn ambient_euler(model: &ToricModel) -> Result<ScalarExpr> {
    let s = Setup::new(model, &[])?;
    Ok(s.integrate(&s.chern[s.n()]))
}

#[derive(Debug, Clone, PartialEq)]
pub struct GcdVerdict {
    pub chi: BigInt,
    pub gcd: BigInt,
    /// The gcd of the divisor coefficients does not divide χ.
    pub forces_singular: bool,
}

/// Divisibility obstruction for regular foliations on smooth models.
pub fn gcd_obstruction(model: &ToricModel, divisor_coeffs: &[i64]) -> Result<GcdVerdict> {
    if !model.smooth() {
        return Err(Error::Inapplicable(format!(
            "`{}` is not smooth; the gcd obstruction needs an integral Euler number",
            model.name()
        )));
    }
    let expected = model.dim() + model.rank();
    if divisor_coeffs.len() != expected {
        return Err(Error::InvalidInput(format!(
            "{} divisor coefficients, expected {expected}",
            divisor_coeffs.len()
        )));
    }
    let chi = model.euler_number()?;
    if !chi.is_integer() {
        return Err(Error::Inapplicable(format!("Euler number {chi} is not an integer")));
    }
    let chi = chi.to_integer();
    let gcd = divisor_coeffs
        .iter()
        .fold(BigInt::zero(), |acc, &x| acc.gcd(&BigInt::from(x)));
    let forces_singular = if gcd.is_zero() {
        !chi.is_zero()
    } else {
        !(&chi % &gcd).is_zero()
    };
    Ok(GcdVerdict {
        chi,
        gcd: gcd.abs(),
        forces_singular,
    })
}

/// `Σ_{j=0..n−1} Σ_{k=0..j} (−1)^k ∫ C_{j−k}(h)·a^{k+1}·d^{n−1−j}`: singular
/// points of the restriction to an invariant hypersurface of class `a`.
pub fn restricted_sing_count(
    model: &ToricModel,
    degree: &ClassExpr,
    hyp: &ClassExpr,
) -> Result<ScalarExpr> {
    let s = Setup::new(model, &[degree, hyp])?;
    let d = s.class(degree)?;
    let a = s.class(hyp)?;
    let n = s.n();
    let mut total = s.ctx.zero();
    for j in 0..n {
        let dpow = d.pow((n - 1 - j) as u32);
        for k in 0..=j {
            let t = &(&s.chern[j - k] * &a.pow(k as u32 + 1)) * &dpow;
            total = &total + &t.scale(&alt_sign(k));
        }
    }
    Ok(s.integrate(&total))
}

/// Orbifold Euler characteristic of a hypersurface of class `a`.
pub fn hypersurface_euler(model: &ToricModel, hyp: &ClassExpr) -> Result<ScalarExpr> {
    let s = Setup::new(model, &[hyp])?;
    let a = s.class(hyp)?;
    let n = s.n();
    let mut total = s.ctx.zero();
    for k in 0..n {
        let t = &s.chern[n - 1 - k] * &a.pow(k as u32 + 1);
        total = &total + &t.scale(&alt_sign(k));
    }
    Ok(s.integrate(&total))
}

/// `Σ_{j=0..n} Σ_{i=0..n−j} (−1)^i ∫ C_{n−j−i}(h)·a^i·d^j`: singular points
/// off an invariant hypersurface.
pub fn complement_sing_count(
    model: &ToricModel,
    degree: &ClassExpr,
    hyp: &ClassExpr,
) -> Result<ScalarExpr> {
    let s = Setup::new(model, &[degree, hyp])?;
    let d = s.class(degree)?;
    let a = s.class(hyp)?;
    let n = s.n();
    let mut total = s.ctx.zero();
    for j in 0..=n {
        let dpow = d.pow(j as u32);
        for i in 0..=(n - j) {
            let t = &(&s.chern[n - j - i] * &a.pow(i as u32)) * &dpow;
            total = &total + &t.scale(&alt_sign(i));
        }
    }
    Ok(s.integrate(&total))
}

/// Euler characteristic of the complement of a smooth hypersurface.
pub fn complement_euler(model: &ToricModel, hyp: &ClassExpr) -> Result<ScalarExpr> {
    let s = Setup::new(model, &[hyp])?;
    let a = s.class(hyp)?;
    let n = s.n();
    let mut total = s.ctx.zero();
    for i in 0..=n {
        let t = &s.chern[n - i] * &a.pow(i as u32);
        total = &total + &t.scale(&alt_sign(i));
    }
    Ok(s.integrate(&total))
}

/// Chern classes `c_0..=c_{n−m}` of `V(a_1..a_m)` in ambient terms, with
/// the Poincaré dual `a_1⋯a_m`.
fn ci_chern<'m>(
    s: &Setup<'m>,
    classes: &[ClassExpr],
) -> Result<(Vec<ChowElement>, ChowElement)> {
    let n = s.n();
    let m = classes.len();
    if m >= n {
        return Err(Error::out_of_range(
            "complete intersection codimension",
            format!("m = {m} must be below dim {n}"),
        ));
    }
    let a: Vec<ChowElement> = classes.iter().map(|c| s.class(c)).collect::<Result<_>>()?;
    let top = n - m;
    let mut w = vec![s.ctx.zero(); top + 1];
    w[0] = s.ctx.one();
    for x in &a {
        for j in 1..=top {
            let t = &w[j - 1] * x;
            w[j] = &w[j] + &t;
        }
    }
    let mut cv = Vec::with_capacity(top + 1);
    for i in 0..=top {
        let mut ci = s.ctx.zero();
        for (j, wj) in w.iter().enumerate().take(i + 1) {
            let t = wj * &s.chern[i - j];
            ci = &ci + &t.scale(&alt_sign(j));
        }
        cv.push(ci);
    }
    let dual = a.iter().fold(s.ctx.one(), |acc, x| &acc * x);
    Ok((cv, dual))
}

/// Singular points of a foliation (or distribution) restricted to the
/// complete intersection `V(a_1..a_m)`. Models flagged non-smooth are
/// evaluated anyway; callers surface the hypothesis mismatch.
pub fn ci_sing_count(
    model: &ToricModel,
    classes: &[ClassExpr],
    degree: &ClassExpr,
    kind: Kind,
) -> Result<ScalarExpr> {
    let mut inputs: Vec<&ClassExpr> = classes.iter().collect();
    inputs.push(degree);
    let s = Setup::new(model, &inputs)?;
    let (cv, dual) = ci_chern(&s, classes)?;
    let d = s.class(degree)?;
    let top = cv.len() - 1;
    let mut total = s.ctx.zero();
    for (i, ci) in cv.iter().enumerate() {
        let t = ci * &d.pow((top - i) as u32);
        total = &total + &t.scale(&kind.summand_sign(i));
    }
    Ok(s.integrate(&(&total * &dual)))
}

/// Euler characteristic of a smooth complete intersection.
pub fn ci_euler(model: &ToricModel, classes: &[ClassExpr]) -> Result<ScalarExpr> {
    let inputs: Vec<&ClassExpr> = classes.iter().collect();
    let s = Setup::new(model, &inputs)?;
    let (cv, dual) = ci_chern(&s, classes)?;
    Ok(s.integrate(&(&cv[cv.len() - 1] * &dual)))
}

/// Which class the `k`-degree is measured against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeIndex {
    /// A Picard generator.
    Generator(usize),
    /// A toric divisor class `h_k`.
    Divisor(usize),
}

/// `∫ h_k^{n−m}·a_1⋯a_m`.
pub fn multidegree(model: &ToricModel, classes: &[ClassExpr], index: DegreeIndex) -> Result<ScalarExpr> {
    let inputs: Vec<&ClassExpr> = classes.iter().collect();
    let s = Setup::new(model, &inputs)?;
    let n = s.n();
    if classes.len() > n {
        return Err(Error::out_of_range(
            "complete intersection codimension",
            format!("{} classes on a {n}-dimensional model", classes.len()),
        ));
    }
    let h = match index {
        DegreeIndex::Generator(i) if i < model.rank() => s.ctx.generator(i),
        DegreeIndex::Divisor(i) => {
            let hs = s.ctx.divisor_elements()?;
            hs.get(i).cloned().ok_or_else(|| {
                Error::out_of_range("divisor index", format!("{i} of {}", hs.len()))
            })?
        }
        DegreeIndex::Generator(i) => {
            return Err(Error::out_of_range("generator index", format!("{i} of {}", model.rank())))
        }
    };
    let mut prod = h.pow((n - classes.len()) as u32);
    for c in classes {
        prod = &prod * &s.class(c)?;
    }
    Ok(s.integrate(&prod))
}
