use num_integer::Integer;
use proptest::prelude::*;

use toricsing::catalog::{builtin, catalog_models, ModelSpec};
use toricsing::chow::{ChowContext, ClassExpr, ToricModel};
use toricsing::exactalg::{
    complete_homogeneous, elementary_symmetric, parse_poly, rat, ratio, vars_from, BigRational,
    MultiPoly, ScalarExpr,
};
use toricsing::formulas::{
    alpha_invariant, baum_bott_sum, ci_euler, ci_sing_count, complement_euler,
    complement_sing_count, foliation_sing_count, hypersurface_euler, restricted_sing_count,
    wci_sing_count, wci_terms, Kind,
};
use toricsing::polyfield::{check_descends, check_invariant_hypersurface, OneFormExpr, VectorFieldExpr};
use toricsing::residue::{local_multiplicity, IndexQuery};

fn config() -> ProptestConfig {
    ProptestConfig { cases: 256, ..ProptestConfig::default() }
}

fn coeff() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| ratio(n, d))
}

fn poly3() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0u32..4, 3), coeff()), 0..6).prop_map(|terms| {
        MultiPoly::from_terms(&vars_from(&["x", "y", "z"]), terms).unwrap()
    })
}

fn weights(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<i64>> {
    len.prop_flat_map(|n| prop::collection::vec(1i64..=6, n))
        .prop_filter("gcd 1", |w| w.iter().fold(0i64, |g, &x| g.gcd(&x)) == 1)
}

fn value(e: ScalarExpr) -> BigRational {
    e.constant_value().expect("numeric")
}

fn sym(name: &str) -> ScalarExpr {
    MultiPoly::var(&vars_from(&[name]), 0)
}

fn catalog_model() -> impl Strategy<Value = ToricModel> {
    let models = catalog_models();
    (0..models.len()).prop_map(move |i| models[i].clone())
}

fn aligned(a: &ScalarExpr, b: &ScalarExpr) -> (ScalarExpr, ScalarExpr) {
    let vars = toricsing::exactalg::union_vars([a.vars(), b.vars()]);
    (a.embed(&vars).unwrap(), b.embed(&vars).unwrap())
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn ring_axioms(a in poly3(), b in poly3(), c in poly3()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &MultiPoly::one(a.vars()), a.clone());
    }

    #[test]
    fn canonical_round_trip(a in poly3()) {
        let back = parse_poly(&a.canonical_string(), a.vars()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn e_w_generating_identity(items in prop::collection::vec(coeff(), 1..6)) {
        let vars = vars_from::<&str>(&[]);
        let xs: Vec<MultiPoly> = items.into_iter().map(MultiPoly::number).collect();
        let e = elementary_symmetric(&xs, 8, &vars);
        let w = complete_homogeneous(&xs, 8, &vars);
        for k in 1..=8 {
            let mut s = MultiPoly::zero(&vars);
            for j in 0..=k {
                let t = &e[j] * &w[k - j];
                s = if j % 2 == 0 { &s + &t } else { &s - &t };
            }
            prop_assert!(s.is_zero(), "degree {}", k);
        }
    }

    #[test]
    fn route_equality(w in weights(4..=6), a in 1i64..=6, d in 0i64..=10) {
        let model = builtin(&ModelSpec::Weighted(w.clone())).unwrap();
        let toric = restricted_sing_count(&model, &ClassExpr::numeric(&[d]), &ClassExpr::numeric(&[a])).unwrap();
        let weighted = wci_sing_count(&w, &[a], &MultiPoly::number(rat(d)), Kind::Foliation).unwrap();
        prop_assert_eq!(value(toric), value(weighted.clone()));
        let ci = ci_sing_count(&model, &[ClassExpr::numeric(&[a])], &ClassExpr::numeric(&[d]), Kind::Foliation).unwrap();
        prop_assert_eq!(value(ci), value(weighted));
    }

    #[test]
    fn sign_duality_toric(model in catalog_model(), seed in prop::collection::vec(-3i64..=4, 12), m_pick in 0usize..3) {
        let n = model.dim();
        let r = model.rank();
        let m = m_pick.min(n - 1);
        let classes: Vec<ClassExpr> = (0..m).map(|i| ClassExpr::numeric(&seed[i * r..(i + 1) * r])).collect();
        let d = ClassExpr::symbolic(&ClassExpr::default_symbols(r));
        let dist = ci_sing_count(&model, &classes, &d, Kind::Distribution).unwrap();
        let fol = ci_sing_count(&model, &classes, &d.scaled(&rat(-1)), Kind::Foliation).unwrap();
        let sign = if (n - m) % 2 == 0 { rat(1) } else { rat(-1) };
        let (x, y) = aligned(&dist, &fol.scale(&sign));
        prop_assert_eq!(x, y);
    }

    #[test]
    fn sign_duality_weighted(w in weights(3..=6), raw in prop::collection::vec(1i64..=5, 0..3)) {
        let n = w.len() - 1;
        let a: Vec<i64> = raw.into_iter().take(n - 1).collect();
        let d = sym("d");
        let dist = wci_sing_count(&w, &a, &d, Kind::Distribution).unwrap();
        let fol = wci_sing_count(&w, &a, &d.scale(&rat(-1)), Kind::Foliation).unwrap();
        let sign = if (n - a.len()).is_multiple_of(2) { rat(1) } else { rat(-1) };
        prop_assert_eq!(dist, fol.scale(&sign));
    }

    #[test]
    fn complement_identity(model in catalog_model(), seed in prop::collection::vec(-3i64..=4, 3)) {
        let r = model.rank();
        let a = ClassExpr::numeric(&seed[..r]);
        let d = ClassExpr::symbolic(&ClassExpr::default_symbols(r));
        let total = foliation_sing_count(&model, &d).unwrap();
        let restricted = restricted_sing_count(&model, &d, &a).unwrap();
        let complement = complement_sing_count(&model, &d, &a).unwrap();
        let (t, rs) = aligned(&total, &restricted);
        let (c, diff) = aligned(&complement, &(&t - &rs));
        prop_assert_eq!(c, diff);

        let chi = model.euler_number().unwrap();
        let hyp = value(hypersurface_euler(&model, &a).unwrap());
        prop_assert_eq!(value(complement_euler(&model, &a).unwrap()), chi - hyp);
    }

    #[test]
    fn integrate_linearity(model in catalog_model(), x in -5i64..=5, y in -5i64..=5, u in prop::collection::vec(-3i64..=3, 3), v in prop::collection::vec(-3i64..=3, 3)) {
        let ctx = ChowContext::new(&model, &vars_from::<&str>(&[])).unwrap();
        let n = model.dim() as u32;
        let r = model.rank();
        let p = ctx.int_class(&u[..r]).pow(n);
        let q = &ctx.int_class(&v[..r]).pow(n - 1) * &ctx.int_class(&u[..r]);
        let lhs = ctx.integrate(&(&p.scale(&rat(x)) + &q.scale(&rat(y))));
        let rhs = &ctx.integrate(&p).scale(&rat(x)) + &ctx.integrate(&q).scale(&rat(y));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn chern_generating_identity(spec in prop_oneof![
        weights(2..=6).prop_map(ModelSpec::Weighted),
        prop::collection::vec(1usize..=3, 1..=3).prop_map(ModelSpec::Multiprojective),
        prop::collection::vec(-3i64..=4, 2..=4).prop_map(ModelSpec::Scroll),
        (1usize..=5).prop_map(ModelSpec::Projective),
        (2usize..=4).prop_map(ModelSpec::BlowupPoint),
    ]) {
        let model = builtin(&spec).unwrap();
        check_generating_identity(&model)?;
    }

    #[test]
    fn hypersurface_euler_matches_weighted(w in weights(3..=6), a in 1i64..=6) {
        let model = builtin(&ModelSpec::Weighted(w.clone())).unwrap();
        let toric = hypersurface_euler(&model, &ClassExpr::numeric(&[a])).unwrap();
        let weighted = wci_sing_count(&w, &[a], &MultiPoly::number(rat(0)), Kind::Foliation).unwrap();
        prop_assert_eq!(value(toric), value(weighted));
    }

    #[test]
    fn alpha_chi_matches_ci_euler(w in weights(3..=6), raw in prop::collection::vec(1i64..=5, 1..3)) {
        let n = w.len() - 1;
        let a: Vec<i64> = raw.into_iter().take(n - 1).collect();
        let model = builtin(&ModelSpec::Weighted(w.clone())).unwrap();
        let classes: Vec<ClassExpr> = a.iter().map(|&x| ClassExpr::numeric(&[x])).collect();
        let alpha = alpha_invariant(&w, &a).unwrap();
        prop_assert_eq!(alpha.chi, value(ci_euler(&model, &classes).unwrap()));
    }

    #[test]
    fn baum_bott_nonnegative(w in weights(4..=6), raw in prop::collection::vec(1i64..=6, 4), d in -15i64..=15) {
        let n = w.len() - 1;
        let a = &raw[..n - 2];
        let v = value(baum_bott_sum(&w, a, &MultiPoly::number(rat(d))).unwrap());
        prop_assert!(v >= rat(0));
        let critical = a.iter().sum::<i64>() - w.iter().sum::<i64>();
        prop_assert_eq!(v == rat(0), d == critical);
    }

    #[test]
    fn wci_bracket_matches_symbolic(w in weights(3..=5), a in 1i64..=5, d in 0i64..=6) {
        let ints: Vec<ScalarExpr> = w.iter().map(|&x| MultiPoly::number(rat(x))).collect();
        let full = wci_terms(&ints, &[MultiPoly::number(rat(a))], &sym("d"), Kind::Foliation).unwrap();
        let at = full.total().unwrap().eval(&[rat(d)]).unwrap();
        let direct = value(wci_sing_count(&w, &[a], &MultiPoly::number(rat(d)), Kind::Foliation).unwrap());
        prop_assert_eq!(at, direct);
    }
}

fn check_generating_identity(model: &ToricModel) -> Result<(), TestCaseError> {
    let ctx = ChowContext::new(model, &vars_from(&["t"])).unwrap();
    let t = ctx.scalar(&sym("t")).unwrap();
    let hs = ctx.divisor_elements().unwrap();
    let product = hs.iter().fold(ctx.one(), |acc, h| &acc * &(&ctx.one() + &(&t * h)));
    for j in 0..=model.dim() {
        let expected = &ctx.chern(j).unwrap() * &t.pow(j as u32);
        prop_assert_eq!(product.graded_part(j as u32), expected, "C_{} on {}", j, model.name());
    }
    Ok(())
}

#[test]
fn chern_generating_identity_on_catalog() {
    for model in catalog_models() {
        if model.divisor_classes().is_some() {
            check_generating_identity(&model).unwrap();
        }
    }
}

fn germ(vars: &[&str], comps: &[&str]) -> Vec<MultiPoly> {
    let v = vars_from(vars);
    comps.iter().map(|c| parse_poly(c, &v).unwrap()).collect()
}

#[test]
fn residue_staircase() {
    for a in 1..=5u32 {
        for b in 1..=5u32 {
            let comps = germ(&["x", "y"], &[&format!("x^{a}"), &format!("y^{b}")]);
            let rep = local_multiplicity(&IndexQuery::new(comps, 1)).unwrap();
            assert_eq!(rep.multiplicity, (a * b) as u64, "({a}, {b})");
            assert!(rep.stabilized_at < 12);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 20, ..ProptestConfig::default() })]

    #[test]
    fn residue_linear_change(entries in prop::collection::vec(-2i64..=2, 4), which in 0usize..3) {
        // x ↦ ±x + s·y, then y ↦ t·x + y: determinant ±1.
        let (s, t) = (entries[0], entries[1]);
        let flip = if entries[2] < 0 { -1 } else { 1 };
        let vars = vars_from(&["x", "y"]);
        let x = MultiPoly::var(&vars, 0);
        let y = MultiPoly::var(&vars, 1);
        let x1 = &x.scale(&rat(flip)) + &y.scale(&rat(s));
        let y1 = &x1.scale(&rat(t)) + &y;
        let base = [
            (vec!["x^2", "y^3"], 6u64),
            (vec!["x^2 - y^3", "x*y"], 5),
            (vec!["x^3 + y^2", "x*y^2 + x^2"], 4),
        ];
        let (comps, expected) = &base[which];
        let original = germ(&["x", "y"], comps);
        let changed: Vec<MultiPoly> =
            original.iter().map(|p| p.substitute(&[x1.clone(), y1.clone()]).unwrap()).collect();
        let a = local_multiplicity(&IndexQuery::new(original, 1)).unwrap();
        let b = local_multiplicity(&IndexQuery::new(changed, 1)).unwrap();
        prop_assert_eq!(a.multiplicity, *expected);
        prop_assert_eq!(b.multiplicity, *expected);
        prop_assert!(b.stabilized_at < 12);
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn descends_is_scale_invariant(w in weights(4..=4), lam in 1i64..=9, c in -9i64..=9, nz in 1i64..=7) {
        let model = builtin(&ModelSpec::Weighted(w.clone())).unwrap();
        let vars = vars_from(&model.coords());
        let z = |i| MultiPoly::var(&vars, i);
        let form = OneFormExpr {
            components: vec![
                z(1).scale(&rat(-lam * w[1])),
                z(0).scale(&rat(lam * w[0])),
                z(3).scale(&rat(-c * w[3])),
                z(2).scale(&rat(c * w[2])),
            ],
        };
        prop_assert!(check_descends(&model, &form).unwrap());
        prop_assert!(check_descends(&model, &form.scale(&ratio(nz, 3))).unwrap());
        let mut broken = form.clone();
        broken.components[0] = &broken.components[0] + &z(0);
        prop_assert!(!check_descends(&model, &broken).unwrap());
    }

    #[test]
    fn invariance_leibniz(k in prop::collection::vec(-5i64..=5, 3), e in prop::collection::vec(0u32..3, 6), c in 1i64..=5) {
        let vars = vars_from(&["z0", "z1", "z2"]);
        let x = VectorFieldExpr {
            components: (0..3).map(|i| MultiPoly::var(&vars, i).scale(&rat(k[i]))).collect(),
        };
        let mono = |ex: &[u32]| MultiPoly::from_terms(&vars, [(ex.to_vec(), rat(c))]).unwrap();
        let f = &mono(&e[..3]) + &MultiPoly::one(&vars);
        let g = mono(&e[3..]);
        prop_assume!(!f.is_zero() && !g.is_zero());
        let weight = |ex: &[u32]| (0..3).map(|i| k[i] * ex[i] as i64).sum::<i64>();
        let fg = &f * &g;
        let vg = check_invariant_hypersurface(&x, &g).unwrap();
        prop_assert_eq!(vg.cofactor.clone(), Some(MultiPoly::constant(&vars, rat(weight(&e[3..])))));
        let vf = check_invariant_hypersurface(&x, &f).unwrap();
        if vf.invariant {
            let vfg = check_invariant_hypersurface(&x, &fg).unwrap();
            let expected = &vf.cofactor.unwrap() + &vg.cofactor.unwrap();
            prop_assert_eq!(vfg.cofactor, Some(expected));
        }
    }
}
