//! Quasi-homogeneous polynomials, vector fields and 1-forms in the
//! homogeneous coordinates of a toric model, graded by its class group.

use crate::chow::ToricModel;
use crate::error::{Error, Result};
use crate::exactalg::{parse_poly, rat, vars_from, MultiPoly, Vars};

/// Coordinate table of `model`, in divisor order.
pub fn coord_vars(model: &ToricModel) -> Vars {
    vars_from(&model.coords())
}

/// Parse a polynomial in the model's coordinates.
pub fn parse_graded(model: &ToricModel, text: &str) -> Result<MultiPoly> {
    parse_poly(text, &coord_vars(model))
}

/// Class-group degree of every coordinate.
fn coord_degrees(model: &ToricModel) -> Result<Vec<Vec<i64>>> {
    let rows = model.radial_weights()?;
    let width = model.dim() + model.rank();
    Ok((0..width).map(|i| rows.iter().map(|r| r[i]).collect()).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuasiDegree {
    /// The zero polynomial.
    Any,
    Degree(Vec<i64>),
    Mixed,
}

impl QuasiDegree {
    fn merge(self, other: QuasiDegree) -> QuasiDegree {
        match (self, other) {
            (QuasiDegree::Any, x) | (x, QuasiDegree::Any) => x,
            (QuasiDegree::Degree(a), QuasiDegree::Degree(b)) if a == b => QuasiDegree::Degree(a),
            _ => QuasiDegree::Mixed,
        }
    }

    fn shifted(self, by: &[i64], sign: i64) -> QuasiDegree {
        match self {
            QuasiDegree::Degree(d) => {
                QuasiDegree::Degree(d.iter().zip(by).map(|(x, y)| x + sign * y).collect())
            }
            other => other,
        }
    }
}

fn check_table(model: &ToricModel, p: &MultiPoly) -> Result<()> {
    let want = coord_vars(model);
    if p.vars() != &want {
        return Err(Error::Alignment {
            left: p.vars().join(","),
            right: want.join(","),
        });
    }
    Ok(())
}

pub fn check_quasi_homogeneous(model: &ToricModel, p: &MultiPoly) -> Result<QuasiDegree> {
    check_table(model, p)?;
    let h = coord_degrees(model)?;
    let r = model.rank();
    Ok(p.terms().fold(QuasiDegree::Any, |acc, (e, _)| {
        let mut deg = vec![0i64; r];
        for (i, &k) in e.iter().enumerate() {
            for j in 0..r {
                deg[j] += k as i64 * h[i][j];
            }
        }
        acc.merge(QuasiDegree::Degree(deg))
    }))
}

#[derive(Debug, Clone, PartialEq)]
pub struct VectorFieldExpr {
    /// Coefficient of `∂/∂z_i`.
    pub components: Vec<MultiPoly>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OneFormExpr {
    /// Coefficient of `dz_i`.
    pub components: Vec<MultiPoly>,
}

fn check_components(model: &ToricModel, comps: &[MultiPoly]) -> Result<()> {
    let width = model.dim() + model.rank();
    if comps.len() != width {
        return Err(Error::InvalidInput(format!(
            "{} components, expected {width}",
            comps.len()
        )));
    }
    comps.iter().try_for_each(|p| check_table(model, p))
}

impl VectorFieldExpr {
    pub fn parse(model: &ToricModel, texts: &[&str]) -> Result<Self> {
        let components = texts.iter().map(|t| parse_graded(model, t)).collect::<Result<_>>()?;
        Ok(VectorFieldExpr { components })
    }

    /// `X(f) = Σ P_i ∂f/∂z_i`.
    pub fn apply(&self, f: &MultiPoly) -> Result<MultiPoly> {
        if self.components.len() != f.nvars() {
            return Err(Error::InvalidInput(format!(
                "{} components for {} variables",
                self.components.len(),
                f.nvars()
            )));
        }
        self.components
            .iter()
            .enumerate()
            .try_fold(MultiPoly::zero(f.vars()), |acc, (i, p)| {
                acc.try_add(&p.try_mul(&f.derivative(i))?)
            })
    }
}

impl OneFormExpr {
    pub fn parse(model: &ToricModel, texts: &[&str]) -> Result<Self> {
        let components = texts.iter().map(|t| parse_graded(model, t)).collect::<Result<_>>()?;
        Ok(OneFormExpr { components })
    }

    pub fn scale(&self, c: &crate::exactalg::BigRational) -> Self {
        OneFormExpr { components: self.components.iter().map(|p| p.scale(c)).collect() }
    }

    /// `i_X ω = Σ X_i ω_i`.
    pub fn contract(&self, x: &VectorFieldExpr) -> Result<MultiPoly> {
        let vars = match self.components.first() {
            Some(p) => p.vars().clone(),
            None => return Err(Error::InvalidInput("empty 1-form".into())),
        };
        self.components
            .iter()
            .zip(&x.components)
            .try_fold(MultiPoly::zero(&vars), |acc, (w, xi)| acc.try_add(&w.try_mul(xi)?))
    }
}

/// The radial (Euler-type) vector fields, one per Picard generator.
pub fn radial_fields(model: &ToricModel) -> Result<Vec<VectorFieldExpr>> {
    let rows = model.radial_weights()?;
    let vars = coord_vars(model);
    Ok(rows
        .iter()
        .map(|row| VectorFieldExpr {
            components: row
                .iter()
                .enumerate()
                .map(|(i, &w)| MultiPoly::var(&vars, i).scale(&rat(w)))
                .collect(),
        })
        .collect())
}

/// Whether every radial contraction of `form` vanishes.
pub fn check_descends(model: &ToricModel, form: &OneFormExpr) -> Result<bool> {
    check_components(model, &form.components)?;
    for r in radial_fields(model)? {
        if !form.contract(&r)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Invariance {
    pub invariant: bool,
    /// `g` with `X(f) = g·f`.
    pub cofactor: Option<MultiPoly>,
}

pub fn check_invariant_hypersurface(x: &VectorFieldExpr, f: &MultiPoly) -> Result<Invariance> {
    if f.is_zero() {
        return Err(Error::InvalidInput("the hypersurface equation is zero".into()));
    }
    let xf = x.apply(f)?;
    let (q, r) = xf.div_rem(f)?;
    Ok(if r.is_zero() {
        Invariance { invariant: true, cofactor: Some(q) }
    } else {
        Invariance { invariant: false, cofactor: None }
    })
}

/// Degree `d` with `deg P_i = d + h_i` for every nonzero component.
pub fn vector_field_degree(model: &ToricModel, x: &VectorFieldExpr) -> Result<QuasiDegree> {
    check_components(model, &x.components)?;
    let h = coord_degrees(model)?;
    x.components.iter().zip(&h).try_fold(QuasiDegree::Any, |acc, (p, hi)| {
        Ok(acc.merge(check_quasi_homogeneous(model, p)?.shifted(hi, -1)))
    })
}

/// Degree `d` with `deg P_i = d − h_i` for every nonzero component.
pub fn one_form_degree(model: &ToricModel, form: &OneFormExpr) -> Result<QuasiDegree> {
    check_components(model, &form.components)?;
    let h = coord_degrees(model)?;
    form.components.iter().zip(&h).try_fold(QuasiDegree::Any, |acc, (p, hi)| {
        Ok(acc.merge(check_quasi_homogeneous(model, p)?.shifted(hi, 1)))
    })
}

/// Largest coordinate count accepted by [`is_integrable`].
pub const MAX_INTEGRABILITY_COORDS: usize = 6;

/// Frobenius condition `ω ∧ dω = 0`, by expanding every `dz_i∧dz_j∧dz_k`
/// coefficient.
pub fn is_integrable(form: &OneFormExpr) -> Result<bool> {
    let w = &form.components;
    let n = w.len();
    if n > MAX_INTEGRABILITY_COORDS {
        return Err(Error::out_of_range(
            "integrability check",
            format!("{n} coordinates, at most {MAX_INTEGRABILITY_COORDS} supported"),
        ));
    }
    // curl[i][j] = ∂_i ω_j − ∂_j ω_i
    let curl = |i: usize, j: usize| -> Result<MultiPoly> { w[j].derivative(i).try_sub(&w[i].derivative(j)) };
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let t = w[i]
                    .try_mul(&curl(j, k)?)?
                    .try_sub(&w[j].try_mul(&curl(i, k)?)?)?
                    .try_add(&w[k].try_mul(&curl(i, j)?)?)?;
                if !t.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{builtin, ModelSpec};

    fn model(spec: ModelSpec) -> ToricModel {
        builtin(&spec).unwrap()
    }

    #[test]
    fn quasi_homogeneous_examples() {
        let m = model(ModelSpec::Weighted(vec![1, 1, 1, 3]));
        let p = parse_graded(&m, "z3 - 2*z0^3 - z1^3 + 5*z2^3").unwrap();
        assert_eq!(check_quasi_homogeneous(&m, &p).unwrap(), QuasiDegree::Degree(vec![3]));
        let q = model(ModelSpec::Multiprojective(vec![1, 1]));
        let p = parse_graded(&q, "z1_0*z2_0 + z1_1*z2_1").unwrap();
        assert_eq!(check_quasi_homogeneous(&q, &p).unwrap(), QuasiDegree::Degree(vec![1, 1]));
        let p2 = model(ModelSpec::Projective(2));
        let p = parse_graded(&p2, "z0^2 + z1").unwrap();
        assert_eq!(check_quasi_homogeneous(&p2, &p).unwrap(), QuasiDegree::Mixed);
        let zero = MultiPoly::zero(&coord_vars(&p2));
        assert_eq!(check_quasi_homogeneous(&p2, &zero).unwrap(), QuasiDegree::Any);
    }

    #[test]
    fn radial_examples() {
        let w = radial_fields(&model(ModelSpec::Weighted(vec![1, 7, 3, 5]))).unwrap();
        assert_eq!(w.len(), 1);
        let texts: Vec<String> = w[0].components.iter().map(|p| p.to_string()).collect();
        assert_eq!(texts, ["z0", "7*z1", "3*z2", "5*z3"]);

        let q = radial_fields(&model(ModelSpec::Multiprojective(vec![1, 1]))).unwrap();
        let texts: Vec<Vec<String>> =
            q.iter().map(|f| f.components.iter().map(|p| p.to_string()).collect()).collect();
        assert_eq!(texts, [["z1_0", "z1_1", "0", "0"], ["0", "0", "z2_0", "z2_1"]]);

        let s = radial_fields(&model(ModelSpec::Scroll(vec![2, 3]))).unwrap();
        let texts: Vec<Vec<String>> =
            s.iter().map(|f| f.components.iter().map(|p| p.to_string()).collect()).collect();
        assert_eq!(
            texts,
            [["z1_1", "z1_2", "-2*z2_1", "-3*z2_2"], ["0", "0", "z2_1", "z2_2"]]
        );
    }

    #[test]
    fn descends_examples() {
        let m = model(ModelSpec::Weighted(vec![2, 3, 5, 7]));
        let form = OneFormExpr::parse(&m, &["-9*z1", "6*z0", "-7*z3", "5*z2"]).unwrap();
        assert!(check_descends(&m, &form).unwrap());
        // Homogeneous only when ω0 + ω1 = ω2 + ω3.
        assert_eq!(one_form_degree(&m, &form).unwrap(), QuasiDegree::Mixed);
        let m = model(ModelSpec::Weighted(vec![1, 4, 2, 3]));
        let form = OneFormExpr::parse(&m, &["-12*z1", "3*z0", "-3*z3", "2*z2"]).unwrap();
        assert!(check_descends(&m, &form).unwrap());
        assert!(check_descends(&m, &form.scale(&rat(-4))).unwrap());
        assert_eq!(one_form_degree(&m, &form).unwrap(), QuasiDegree::Degree(vec![5]));

        let p2 = model(ModelSpec::Projective(2));
        let form = OneFormExpr::parse(&p2, &["0", "z0", "0"]).unwrap();
        assert!(!check_descends(&p2, &form).unwrap());
        assert!(check_descends(&p2, &OneFormExpr::parse(&p2, &["z0"]).unwrap()).is_err());
    }

    #[test]
    fn contact_form_descends() {
        let k = 4;
        let m = model(ModelSpec::Weighted(vec![1, 1, 1, 1, 1, 1, 1, k]));
        let w: Vec<i64> = vec![1, 1, 1, 1, 1, 1, 1, k];
        let c = [1, 2, -3, 5];
        let mut comps = vec![String::new(); 8];
        for (i, ci) in c.iter().enumerate() {
            let (a, b) = (2 * i, 2 * i + 1);
            comps[b] = format!("{}*z{a}", ci * w[a]);
            comps[a] = format!("{}*z{b}", -ci * w[b]);
        }
        let texts: Vec<&str> = comps.iter().map(String::as_str).collect();
        let form = OneFormExpr::parse(&m, &texts).unwrap();
        assert!(check_descends(&m, &form).unwrap());
    }

    #[test]
    fn invariance_examples() {
        let m = model(ModelSpec::Weighted(vec![1, 2, 3]));
        let x = VectorFieldExpr::parse(&m, &["4*z0", "-z1", "7*z2"]).unwrap();
        let f = parse_graded(&m, "z0").unwrap();
        let v = check_invariant_hypersurface(&x, &f).unwrap();
        assert!(v.invariant);
        assert_eq!(v.cofactor.unwrap().to_string(), "4");

        let p2 = model(ModelSpec::Projective(2));
        let euler = &radial_fields(&p2).unwrap()[0];
        let f = parse_graded(&p2, "z0^3 - z0*z1*z2 + 2*z2^3").unwrap();
        let v = check_invariant_hypersurface(euler, &f).unwrap();
        assert_eq!(v.cofactor.unwrap().to_string(), "3");

        let x = VectorFieldExpr::parse(&p2, &["z1", "0", "0"]).unwrap();
        let v = check_invariant_hypersurface(&x, &parse_graded(&p2, "z0").unwrap()).unwrap();
        assert!(!v.invariant && v.cofactor.is_none());
    }

    #[test]
    fn vector_field_degree_with_zero_components() {
        let s = model(ModelSpec::Scroll(vec![1, 1, 1]));
        let x = VectorFieldExpr::parse(&s, &["0", "0", "z1_1*z2_1", "z1_2*z2_2", "z1_1*z2_3"]).unwrap();
        // deg z1_i = L, deg z2_i = M − L: each component has degree M.
        assert_eq!(vector_field_degree(&s, &x).unwrap(), QuasiDegree::Degree(vec![1, 0]));
    }

    #[test]
    fn integrability() {
        let p3 = model(ModelSpec::Projective(3));
        let closed = OneFormExpr::parse(&p3, &["-z1", "z0", "0", "0"]).unwrap();
        assert!(is_integrable(&closed).unwrap());
        let contact = OneFormExpr::parse(&p3, &["-z1", "z0", "-z3", "z2"]).unwrap();
        assert!(!is_integrable(&contact).unwrap());
        let big = OneFormExpr { components: vec![MultiPoly::zero(&vars_from(&["x"])); 7] };
        assert!(is_integrable(&big).is_err());
    }
}
