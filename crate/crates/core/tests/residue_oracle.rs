mod common;

use toricsing::catalog::{builtin, ModelSpec};
use toricsing::chow::ClassExpr;
use toricsing::exactalg::{rat, ratio};
use toricsing::formulas::{ci_sing_count, foliation_sing_count, Kind};
use toricsing::residue::{index_sum, local_multiplicity, LocalIndexReport};

fn reports(queries: &[toricsing::residue::IndexQuery]) -> Vec<LocalIndexReport> {
    queries.iter().map(|q| local_multiplicity(q).unwrap()).collect()
}

#[test]
fn p111k_points_match_restricted_count() {
    for k in 2..=5 {
        let reps = reports(&common::p111k_queries(k));
        assert_eq!(reps.len(), k as usize + 1);
        for r in &reps[..k as usize] {
            assert_eq!((r.multiplicity, r.orbifold_index.clone()), (1, rat(1)));
        }
        let last = reps.last().unwrap();
        assert_eq!(last.multiplicity, ((k - 1) * (k - 1)) as u64);
        assert_eq!(last.orbifold_index, ratio((k - 1) * (k - 1), k));

        let model = builtin(&ModelSpec::Weighted(vec![1, 1, 1, k])).unwrap();
        let count = ci_sing_count(
            &model,
            &[ClassExpr::numeric(&[1])],
            &ClassExpr::numeric(&[2 * k]),
            Kind::Distribution,
        )
        .unwrap();
        assert_eq!(index_sum(&reps), count.constant_value().unwrap(), "k = {k}");
    }
}

#[test]
fn diagonal_fields_match_formula() {
    for w in common::COPRIME_TRIPLES {
        let a = common::generic_exponents(&w);
        let reps = reports(&common::diagonal_field_queries(&w, &a));
        assert!(reps.iter().all(|r| r.multiplicity == 1));
        let model = builtin(&ModelSpec::Weighted(w.to_vec())).unwrap();
        let formula = foliation_sing_count(&model, &ClassExpr::numeric(&[0])).unwrap();
        assert_eq!(index_sum(&reps), formula.constant_value().unwrap(), "{w:?}");
    }
}

#[test]
fn stabilization_stays_low() {
    let mut all = Vec::new();
    for k in 2..=5 {
        all.extend(reports(&common::p111k_queries(k)));
    }
    for w in common::COPRIME_TRIPLES {
        all.extend(reports(&common::diagonal_field_queries(&w, &common::generic_exponents(&w))));
    }
    assert!(all.iter().all(|r| r.stabilized_at < 12));
}
