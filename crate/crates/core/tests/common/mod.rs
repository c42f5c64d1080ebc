#![allow(dead_code)]

use toricsing::exactalg::{parse_poly, rat, vars_from, BigRational, MultiPoly};
use toricsing::residue::IndexQuery;

/// Pairwise-coprime weight triples.
pub const COPRIME_TRIPLES: [[i64; 3]; 10] = [
    [1, 1, 1],
    [1, 1, 2],
    [1, 2, 3],
    [2, 3, 5],
    [1, 3, 4],
    [3, 4, 5],
    [2, 5, 7],
    [1, 5, 6],
    [3, 5, 7],
    [4, 5, 9],
];

/// Chart germs of the degree-`2k` distribution on `P(1,1,1,k)` restricted
/// to the plane `z_0 = 0`, one query per singular point.
///
/// On `{z_0 = 0} ≅ P(1,1,k)` the restricted form has `k` simple zeros on the
/// line `z_3 = 0`, at `z_2 = ζ z_1` with `ζ^k = 1`, plus the orbifold point
/// `[0:0:1]`. In the chart `z_1 = 1` with `z_2 = ζ(1 + u)`, rescaling one
/// component by `ζ^{k−1}` makes every simple zero the same germ at `u = 0`.
pub fn p111k_queries(k: i64) -> Vec<IndexQuery> {
    let simple_vars = vars_from(&["z3", "u"]);
    let one_plus_u = parse_poly("1 + u", &simple_vars).unwrap();
    let z3 = MultiPoly::var(&simple_vars, 0);
    let first = (&z3 * &one_plus_u.pow(k as u32 - 1)).scale(&rat(k));
    let second = &one_plus_u.pow(k as u32) - &MultiPoly::one(&simple_vars);
    let mut out: Vec<IndexQuery> =
        (0..k).map(|_| IndexQuery::new(vec![first.clone(), second.clone()], 1)).collect();

    let orb_vars = vars_from(&["z1", "z2"]);
    let comps = vec![
        MultiPoly::var(&orb_vars, 0).pow(k as u32 - 1).scale(&rat(k)),
        MultiPoly::var(&orb_vars, 1).pow(k as u32 - 1).scale(&rat(k)),
    ];
    out.push(IndexQuery::new(comps, k as u64));
    out
}

/// Chart germs of the diagonal field `Σ a_k z_k ∂_k` on `P(ω_0, ω_1, ω_2)`
/// at its three fixed points. At `z_i = 1` the field on the orbifold chart
/// is `Σ_{j≠i} (a_j − a_i ω_j/ω_i) z_j ∂_j`, with local group of order `ω_i`.
pub fn diagonal_field_queries(w: &[i64; 3], a: &[i64; 3]) -> Vec<IndexQuery> {
    (0..3)
        .map(|i| {
            let others: Vec<usize> = (0..3).filter(|&j| j != i).collect();
            let names: Vec<String> = others.iter().map(|j| format!("z{j}")).collect();
            let vars = vars_from(&names);
            let comps = others
                .iter()
                .enumerate()
                .map(|(slot, &j)| {
                    let c = rat(a[j]) - rat(a[i]) * BigRational::new(w[j].into(), w[i].into());
                    MultiPoly::var(&vars, slot).scale(&c)
                })
                .collect();
            IndexQuery::new(comps, w[i] as u64)
        })
        .collect()
}

/// Exponents `a` with `a_j − a_i ω_j/ω_i ≠ 0` for all `i ≠ j`.
pub fn generic_exponents(w: &[i64; 3]) -> [i64; 3] {
    for base in 1i64.. {
        let a = [base, 2 * base + 1, 5 * base + 3];
        let ok = (0..3).all(|i| (0..3).all(|j| i == j || a[j] * w[i] != a[i] * w[j]));
        if ok {
            return a;
        }
    }
    unreachable!()
}
