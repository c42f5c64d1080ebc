//! Picard-graded intersection data of a compact toric orbifold.
//!
//! The ring used here is the free polynomial ring on the Picard generators
//! together with a linear functional on degree-`dim` monomials (the
//! intersection tensor). No middle-degree relations are imposed: every
//! count in this crate ends in a top-degree integral, where the tensor alone
//! decides the answer.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{
    complete_homogeneous, elementary_symmetric, rat, union_vars, vars_from, Exponents, MultiPoly,
    ScalarExpr, Vars,
};

/// Raw fields of a model, validated by [`ToricModel::new`].
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParts {
    pub name: String,
    pub dim: usize,
    pub rank: usize,
    pub gens: Vec<String>,
    /// `dim + rank` class vectors `h_i = [D_i]` in the Picard basis.
    pub divisor_classes: Option<Vec<Vec<i64>>>,
    /// Orbifold integral of each degree-`dim` generator monomial; omitted keys are zero.
    pub tensor: BTreeMap<Exponents, BigRational>,
    /// Chern classes supplied directly, keyed by degree, as polynomials in `gens`.
    pub chern_override: Option<BTreeMap<usize, MultiPoly>>,
    pub smooth: bool,
    /// Weights of the radial vector fields, one row per field. Derived from
    /// the divisor classes when absent.
    pub radial: Option<Vec<Vec<i64>>>,
    /// Homogeneous coordinate names; `z0, z1, ...` when absent.
    pub coords: Option<Vec<String>>,
}

impl ModelParts {
    pub fn new(name: &str, dim: usize, gens: &[&str]) -> Self {
        ModelParts {
            name: name.to_string(),
            dim,
            rank: gens.len(),
            gens: gens.iter().map(|s| s.to_string()).collect(),
            divisor_classes: None,
            tensor: BTreeMap::new(),
            chern_override: None,
            smooth: true,
            radial: None,
            coords: None,
        }
    }
}

/// A compact toric orbifold described by divisor classes and its top-degree
/// intersection tensor.
#[derive(Debug, Clone, PartialEq)]
pub struct ToricModel {
    parts: ModelParts,
    gen_vars: Vars,
}

fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Exponents> {
    fn rec(i: usize, left: u32, cur: &mut Exponents, out: &mut Vec<Exponents>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for x in (0..=left).rev() {
            cur[i] = x;
            rec(i + 1, left - x, cur, out);
        }
    }
    if nvars == 0 {
        return if degree == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(0, degree, &mut vec![0; nvars], &mut out);
    out
}

impl ToricModel {
    pub fn new(mut parts: ModelParts) -> Result<Self> {
        parts.tensor.retain(|_, v| !v.is_zero());
        let n = parts.dim;
        let r = parts.rank;
        if n == 0 {
            return Err(Error::validation("positive dimension", "dim must be at least 1"));
        }
        if r == 0 {
            return Err(Error::validation("positive rank", "rank must be at least 1"));
        }
        if parts.gens.len() != r {
            return Err(Error::validation(
                "one generator name per rank",
                format!("{} names for rank {r}", parts.gens.len()),
            ));
        }
        for (i, g) in parts.gens.iter().enumerate() {
            if parts.gens[..i].contains(g) {
                return Err(Error::validation("distinct generator names", g.clone()));
            }
        }
        if let Some(classes) = &parts.divisor_classes {
            if classes.len() != n + r {
                return Err(Error::validation(
                    "exactly dim+rank divisor classes",
                    format!("{} classes, expected {}", classes.len(), n + r),
                ));
            }
            if let Some(bad) = classes.iter().find(|c| c.len() != r) {
                return Err(Error::validation(
                    "divisor class length equals rank",
                    format!("{bad:?}"),
                ));
            }
        }
        for key in parts.tensor.keys() {
            if key.len() != r || key.iter().sum::<u32>() as usize != n {
                return Err(Error::validation(
                    "tensor keys have total degree dim",
                    format!("{key:?} for dim {n}, rank {r}"),
                ));
            }
        }
        let gen_vars = vars_from(&parts.gens);
        if let Some(over) = &parts.chern_override {
            for (&j, c) in over {
                if j == 0 || j > n {
                    return Err(Error::validation(
                        "chern override degree in 1..=dim",
                        format!("degree {j}"),
                    ));
                }
                if c.vars() != &gen_vars {
                    return Err(Error::validation(
                        "chern override uses generator names",
                        format!("degree {j}: [{}]", c.vars().join(",")),
                    ));
                }
                if c.terms().any(|(e, _)| e.iter().sum::<u32>() as usize != j) {
                    return Err(Error::validation(
                        "chern override homogeneous",
                        format!("degree {j}: {c}"),
                    ));
                }
            }
        }
        let covered = |j: usize| {
            parts.divisor_classes.is_some()
                || parts.chern_override.as_ref().is_some_and(|o| o.contains_key(&j))
        };
        if let Some(j) = (1..=n).find(|&j| !covered(j)) {
            return Err(Error::validation(
                "chern class route for every degree",
                format!("no divisor classes and no override for degree {j}"),
            ));
        }
        if let Some(coords) = &parts.coords {
            if coords.len() != n + r {
                return Err(Error::validation(
                    "one coordinate name per divisor",
                    format!("{} names, expected {}", coords.len(), n + r),
                ));
            }
        }
        if let Some(rows) = &parts.radial {
            if rows.len() != r || rows.iter().any(|row| row.len() != n + r) {
                return Err(Error::validation(
                    "radial data is rank rows of dim+rank weights",
                    format!("{rows:?}"),
                ));
            }
        }
        let model = ToricModel { parts, gen_vars };
        model.check_chern_routes()?;
        Ok(model)
    }

    /// When both Chern routes exist, they must integrate identically against
    /// every complementary monomial.
    fn check_chern_routes(&self) -> Result<()> {
        let (Some(_), Some(over)) = (&self.parts.divisor_classes, &self.parts.chern_override)
        else {
            return Ok(());
        };
        let ctx = ChowContext::new(self, &vars_from::<&str>(&[]))?;
        let h = ctx.divisor_elements()?;
        let e = elementary_symmetric(
            &h.iter().map(|x| x.poly.clone()).collect::<Vec<_>>(),
            self.dim(),
            &ctx.vars,
        );
        for (&j, c) in over {
            let c = ctx.wrap(c.embed(&ctx.vars)?);
            let from_classes = ctx.wrap(e[j].clone());
            for mono in monomials_of_degree(self.rank(), (self.dim() - j) as u32) {
                let m = ctx.monomial(&mono);
                let lhs = ctx.integrate(&(&c * &m));
                let rhs = ctx.integrate(&(&from_classes * &m));
                if lhs != rhs {
                    return Err(Error::validation(
                        "chern routes agree",
                        format!("degree {j} against {mono:?}: {lhs} vs {rhs}"),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Same model under another name.
    pub fn renamed(&self, name: &str) -> Self {
        let mut m = self.clone();
        m.parts.name = name.to_string();
        m
    }

    pub fn parts(&self) -> &ModelParts {
        &self.parts
    }

    pub fn name(&self) -> &str {
        &self.parts.name
    }

    pub fn dim(&self) -> usize {
        self.parts.dim
    }

    pub fn rank(&self) -> usize {
        self.parts.rank
    }

    pub fn gens(&self) -> &[String] {
        &self.parts.gens
    }

    pub fn gen_vars(&self) -> &Vars {
        &self.gen_vars
    }

    pub fn smooth(&self) -> bool {
        self.parts.smooth
    }

    pub fn divisor_classes(&self) -> Option<&[Vec<i64>]> {
        self.parts.divisor_classes.as_deref()
    }

    pub fn tensor(&self) -> &BTreeMap<Exponents, BigRational> {
        &self.parts.tensor
    }

    pub fn tensor_value(&self, key: &[u32]) -> BigRational {
        self.parts.tensor.get(key).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn chern_override(&self) -> Option<&BTreeMap<usize, MultiPoly>> {
        self.parts.chern_override.as_ref()
    }

    pub fn coords(&self) -> Vec<String> {
        match &self.parts.coords {
            Some(c) => c.clone(),
            None => (0..self.dim() + self.rank()).map(|i| format!("z{i}")).collect(),
        }
    }

    /// Radial weights, one row per Picard generator. Row `j` holds the
    /// `j`-th coordinate of every divisor class unless given explicitly.
    pub fn radial_weights(&self) -> Result<Vec<Vec<i64>>> {
        if let Some(rows) = &self.parts.radial {
            return Ok(rows.clone());
        }
        let classes = self.divisor_classes().ok_or_else(|| self.unsupported("no radial data"))?;
        Ok((0..self.rank())
            .map(|j| classes.iter().map(|h| h[j]).collect())
            .collect())
    }

    pub(crate) fn unsupported(&self, reason: &str) -> Error {
        Error::UnsupportedModel {
            model: self.name().to_string(),
            reason: reason.to_string(),
        }
    }

    /// Euler number `∫ C_n(h)`.
    pub fn euler_number(&self) -> Result<BigRational> {
        let ctx = ChowContext::new(self, &vars_from::<&str>(&[]))?;
        let c = ctx.chern(self.dim())?;
        Ok(ctx.integrate(&c).constant_term())
    }
}

/// Picard vector with symbolic or numeric entries; an element of `Pic ⊗ Q`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassExpr {
    coords: Vec<ScalarExpr>,
}

impl ClassExpr {
    /// Entries are re-expressed over the union of their variable tables.
    pub fn new(coords: Vec<ScalarExpr>) -> Result<Self> {
        let vars = union_vars(coords.iter().map(|c| c.vars()));
        let coords = coords
            .iter()
            .map(|c| c.embed(&vars))
            .collect::<Result<Vec<_>>>()?;
        Ok(ClassExpr { coords })
    }

    pub fn numeric(values: &[i64]) -> Self {
        let v = vars_from::<&str>(&[]);
        ClassExpr {
            coords: values.iter().map(|&x| MultiPoly::from_int(&v, x)).collect(),
        }
    }

    /// Fully symbolic vector `(names[0], names[1], ...)`.
    pub fn symbolic<S: AsRef<str>>(names: &[S]) -> Self {
        let v = vars_from(names);
        ClassExpr {
            coords: (0..names.len()).map(|i| MultiPoly::var(&v, i)).collect(),
        }
    }

    /// Default symbol names `d1..dr`.
    pub fn default_symbols(rank: usize) -> Vec<String> {
        (1..=rank).map(|i| format!("d{i}")).collect()
    }

    pub fn coords(&self) -> &[ScalarExpr] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn vars(&self) -> Vars {
        union_vars(self.coords.iter().map(|c| c.vars()))
    }

    pub fn scaled(&self, c: &BigRational) -> Self {
        ClassExpr {
            coords: self.coords.iter().map(|x| x.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

/// Element of the graded ring: a polynomial whose first `n_gens` variables
/// are Picard generators and whose remaining variables are degree symbols.
#[derive(Debug, Clone, PartialEq)]
pub struct ChowElement {
    poly: MultiPoly,
    n_gens: usize,
}

impl ChowElement {
    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn n_gens(&self) -> usize {
        self.n_gens
    }

    fn picard_degree(&self, e: &[u32]) -> u32 {
        e[..self.n_gens].iter().sum()
    }

    /// Part of pure Picard degree `k`.
    pub fn graded_part(&self, k: u32) -> ChowElement {
        let terms = self
            .poly
            .terms()
            .filter(|(e, _)| self.picard_degree(e) == k)
            .map(|(e, c)| (e.clone(), c.clone()));
        ChowElement {
            poly: MultiPoly::from_terms(self.poly.vars(), terms).expect("same table"),
            n_gens: self.n_gens,
        }
    }

    /// `Some(k)` when every term has Picard degree `k`; zero is homogeneous of degree 0.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.poly.terms().map(|(e, _)| self.picard_degree(e));
        let first = degs.next().unwrap_or(0);
        degs.all(|d| d == first).then_some(first)
    }

    pub fn pow(&self, k: u32) -> ChowElement {
        ChowElement {
            poly: self.poly.pow(k),
            n_gens: self.n_gens,
        }
    }

    pub fn scale(&self, c: &BigRational) -> ChowElement {
        ChowElement {
            poly: self.poly.scale(c),
            n_gens: self.n_gens,
        }
    }

    /// Renders the element with the symbols kept as coefficients.
    pub fn canonical_string(&self) -> String {
        self.poly.canonical_string()
    }
}

macro_rules! chow_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for &ChowElement {
            type Output = ChowElement;
            fn $m(self, rhs: &ChowElement) -> ChowElement {
                debug_assert_eq!(self.n_gens, rhs.n_gens);
                ChowElement {
                    poly: (&self.poly).$m(&rhs.poly),
                    n_gens: self.n_gens,
                }
            }
        }
    };
}
chow_binop!(Add, add);
chow_binop!(Sub, sub);
chow_binop!(Mul, mul);

impl Neg for &ChowElement {
    type Output = ChowElement;
    fn neg(self) -> ChowElement {
        ChowElement {
            poly: -&self.poly,
            n_gens: self.n_gens,
        }
    }
}

/// Shared variable table (generators then symbols) for one computation on one model.
#[derive(Debug, Clone)]
pub struct ChowContext<'m> {
    model: &'m ToricModel,
    vars: Vars,
    symbols: Vars,
}

impl<'m> ChowContext<'m> {
    pub fn new(model: &'m ToricModel, symbols: &Vars) -> Result<Self> {
        if let Some(clash) = symbols.iter().find(|s| model.gens().contains(s)) {
            return Err(Error::InvalidInput(format!(
                "degree symbol `{clash}` collides with a generator name"
            )));
        }
        let mut all: Vec<String> = model.gens().to_vec();
        all.extend(symbols.iter().cloned());
        Ok(ChowContext {
            model,
            vars: all.into(),
            symbols: symbols.clone(),
        })
    }

    /// Context whose symbols are the union of the tables of `exprs`.
    pub fn for_exprs<'a>(
        model: &'m ToricModel,
        exprs: impl IntoIterator<Item = &'a ScalarExpr>,
    ) -> Result<Self> {
        let symbols = union_vars(exprs.into_iter().map(|e| e.vars()));
        Self::new(model, &symbols)
    }

    pub fn model(&self) -> &'m ToricModel {
        self.model
    }

    pub fn symbols(&self) -> &Vars {
        &self.symbols
    }

    fn wrap(&self, poly: MultiPoly) -> ChowElement {
        ChowElement {
            poly,
            n_gens: self.model.rank(),
        }
    }

    pub fn zero(&self) -> ChowElement {
        self.wrap(MultiPoly::zero(&self.vars))
    }

    pub fn one(&self) -> ChowElement {
        self.wrap(MultiPoly::one(&self.vars))
    }

    pub fn generator(&self, i: usize) -> ChowElement {
        self.wrap(MultiPoly::var(&self.vars, i))
    }

    fn monomial(&self, e: &[u32]) -> ChowElement {
        let mut full = e.to_vec();
        full.resize(self.vars.len(), 0);
        self.wrap(
            MultiPoly::from_terms(&self.vars, [(full, rat(1))]).expect("length matches"),
        )
    }

    pub fn scalar(&self, s: &ScalarExpr) -> Result<ChowElement> {
        Ok(self.wrap(s.embed(&self.vars)?))
    }

    pub fn class(&self, c: &ClassExpr) -> Result<ChowElement> {
        if c.len() != self.model.rank() {
            return Err(Error::InvalidInput(format!(
                "class has {} entries, model rank is {}",
                c.len(),
                self.model.rank()
            )));
        }
        let mut acc = self.zero();
        for (i, x) in c.coords().iter().enumerate() {
            acc = &acc + &(&self.scalar(x)? * &self.generator(i));
        }
        Ok(acc)
    }

    /// Picard-basis element `Σ_i x_i g_i` for an integer vector.
    pub fn int_class(&self, v: &[i64]) -> ChowElement {
        let mut acc = self.zero();
        for (i, &x) in v.iter().enumerate() {
            acc = &acc + &self.generator(i).scale(&rat(x));
        }
        acc
    }

    /// The `dim + rank` degree-one elements `h_i`.
    pub fn divisor_elements(&self) -> Result<Vec<ChowElement>> {
        let classes = self
            .model
            .divisor_classes()
            .ok_or_else(|| self.model.unsupported("model has no divisor classes"))?;
        Ok(classes.iter().map(|h| self.int_class(h)).collect())
    }

    pub fn elementary_symmetric(&self, j: usize) -> Result<ChowElement> {
        if j > self.model.dim() {
            return Err(Error::out_of_range(
                "symmetric function degree",
                format!("{j} > dim {}", self.model.dim()),
            ));
        }
        let h: Vec<MultiPoly> = self.divisor_elements()?.into_iter().map(|x| x.poly).collect();
        let e = elementary_symmetric(&h, j, &self.vars);
        Ok(self.wrap(e[j].clone()))
    }

    pub fn chern(&self, j: usize) -> Result<ChowElement> {
        if j > self.model.dim() {
            return Err(Error::out_of_range(
                "chern class degree",
                format!("{j} > dim {}", self.model.dim()),
            ));
        }
        if j == 0 {
            return Ok(self.one());
        }
        if let Some(c) = self.model.chern_override().and_then(|o| o.get(&j)) {
            return Ok(self.wrap(c.embed(&self.vars)?));
        }
        self.elementary_symmetric(j)
    }

    /// `C_0..=C_dim`.
    pub fn chern_classes(&self) -> Result<Vec<ChowElement>> {
        (0..=self.model.dim()).map(|j| self.chern(j)).collect()
    }

    /// Evaluates the degree-`dim` part against the tensor; symbols pass through.
    pub fn integrate(&self, elem: &ChowElement) -> ScalarExpr {
        integrate(self.model, elem)
            .embed(&self.symbols)
            .expect("symbols come from this context")
    }
}

pub fn class_of_divisor_coeffs(model: &ToricModel, coeffs: &[ScalarExpr]) -> Result<ClassExpr> {
    let classes = model
        .divisor_classes()
        .ok_or_else(|| model.unsupported("model has no divisor classes"))?;
    if coeffs.len() != classes.len() {
        return Err(Error::InvalidInput(format!(
            "{} divisor coefficients, expected {}",
            coeffs.len(),
            classes.len()
        )));
    }
    let vars = union_vars(coeffs.iter().map(|c| c.vars()));
    let mut out = vec![MultiPoly::zero(&vars); model.rank()];
    for (c, h) in coeffs.iter().zip(classes) {
        let c = c.embed(&vars)?;
        for (slot, &x) in out.iter_mut().zip(h) {
            *slot = &*slot + &c.scale(&rat(x));
        }
    }
    ClassExpr::new(out)
}

/// `C_j(h)`: the `j`-th elementary symmetric function of the divisor classes.
pub fn elementary_symmetric_classes(model: &ToricModel, j: usize) -> Result<ChowElement> {
    ChowContext::new(model, &vars_from::<&str>(&[]))?.elementary_symmetric(j)
}

/// `c_j` of the tangent sheaf: the override when present, else `C_j(h)`.
pub fn chern_class(model: &ToricModel, j: usize) -> Result<ChowElement> {
    ChowContext::new(model, &vars_from::<&str>(&[]))?.chern(j)
}

/// Complete homogeneous symmetric function `W_j` of elements sharing one table.
pub fn wronski_classes(classes: &[ChowElement], j: usize) -> Result<ChowElement> {
    let Some(first) = classes.first() else {
        return Err(Error::InvalidInput("empty class list".into()));
    };
    for c in classes {
        if c.poly.vars() != first.poly.vars() || c.n_gens != first.n_gens {
            return Err(Error::Alignment {
                left: first.poly.vars().join(","),
                right: c.poly.vars().join(","),
            });
        }
    }
    let polys: Vec<MultiPoly> = classes.iter().map(|c| c.poly.clone()).collect();
    let w = complete_homogeneous(&polys, j, first.poly.vars());
    Ok(ChowElement {
        poly: w[j].clone(),
        n_gens: first.n_gens,
    })
}

/// Orbifold integral: the degree-`dim` part paired with the tensor. Other
/// degrees contribute zero.
pub fn integrate(model: &ToricModel, elem: &ChowElement) -> ScalarExpr {
    let r = elem.n_gens;
    let sym_vars: Vars = elem.poly.vars()[r..].to_vec().into();
    let mut out = MultiPoly::zero(&sym_vars);
    let n = model.dim() as u32;
    let mut acc: BTreeMap<Exponents, BigRational> = BTreeMap::new();
    for (e, c) in elem.poly.terms() {
        if e[..r].iter().sum::<u32>() != n {
            continue;
        }
        let t = model.tensor_value(&e[..r]);
        if t.is_zero() {
            continue;
        }
        *acc.entry(e[r..].to_vec()).or_insert_with(BigRational::zero) += c * t;
    }
    for (e, c) in acc {
        out.add_term(e, c);
    }
    out
}
