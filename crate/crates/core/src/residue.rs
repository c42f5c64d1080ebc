//! Local multiplicity of a polynomial map germ at the origin and the
//! orbifold Poincaré-Hopf index derived from it.
//!
//! The multiplicity is `dim O_0 / (f_1..f_n)`, computed as the stable value
//! of `c(D) = dim k[z]/(I + m^D)`. Each `c(D)` is the number of monomials of
//! degree below `D` minus the rank of the truncated products `z^α·f_i`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{BigRational, MultiPoly};

pub const DEFAULT_DEGREE_CAP: usize = 64;

#[derive(Debug, Clone)]
pub struct IndexQuery {
    /// One component per chart variable, all vanishing at the origin.
    pub components: Vec<MultiPoly>,
    pub group_order: u64,
    pub degree_cap: usize,
}

impl IndexQuery {
    pub fn new(components: Vec<MultiPoly>, group_order: u64) -> Self {
        IndexQuery { components, group_order, degree_cap: DEFAULT_DEGREE_CAP }
    }

    fn validate(&self) -> Result<()> {
        if self.group_order == 0 {
            return Err(Error::InvalidInput("group order must be positive".into()));
        }
        let n = match self.components.first() {
            Some(p) => p.nvars(),
            None => return Err(Error::InvalidInput("no components".into())),
        };
        if self.components.len() != n {
            return Err(Error::InvalidInput(format!(
                "{} components in {n} variables",
                self.components.len()
            )));
        }
        for (i, p) in self.components.iter().enumerate() {
            if p.vars() != self.components[0].vars() {
                return Err(Error::Alignment {
                    left: p.vars().join(","),
                    right: self.components[0].vars().join(","),
                });
            }
            if !p.constant_term().is_zero() {
                return Err(Error::InvalidInput(format!(
                    "component {} does not vanish at the origin",
                    i + 1
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocalIndexReport {
    pub multiplicity: u64,
    pub orbifold_index: BigRational,
    /// First truncation degree `D` with `c(D) = c(D + 1)`.
    pub stabilized_at: usize,
}

/// Exponent vectors of total degree `< d`, each mapped to a column.
fn monomials_below(n: usize, d: usize) -> HashMap<Vec<u32>, usize> {
    let mut out = HashMap::new();
    let mut cur = vec![0u32; n];
    fn rec(i: usize, left: usize, cur: &mut Vec<u32>, out: &mut HashMap<Vec<u32>, usize>) {
        if i == cur.len() {
            let k = out.len();
            out.insert(cur.clone(), k);
            return;
        }
        for e in 0..=left {
            cur[i] = e as u32;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if d > 0 {
        rec(0, d - 1, &mut cur, &mut out);
    }
    out
}

type SparseRow = BTreeMap<usize, BigInt>;

fn normalize(row: &mut SparseRow) {
    let g = row.values().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in row.values_mut() {
            *v /= &g;
        }
    }
}

/// Incremental fraction-free row echelon form; returns the rank.
fn rank(rows: impl IntoIterator<Item = SparseRow>) -> usize {
    let mut pivots: HashMap<usize, SparseRow> = HashMap::new();
    for mut row in rows {
        while let Some((c, v)) = row.iter().next() {
            let (col, lead) = (*c, v.clone());
            match pivots.get(&col) {
                None => {
                    normalize(&mut row);
                    pivots.insert(col, row);
                    break;
                }
                Some(p) => {
                    let plead = &p[&col];
                    let g = plead.gcd(&lead);
                    let (mp, ml) = (plead / &g, &lead / &g);
                    let mut next = SparseRow::new();
                    for (c, v) in &row {
                        next.insert(*c, v * &mp);
                    }
                    for (c, v) in p {
                        let e = next.entry(*c).or_insert_with(BigInt::zero);
                        *e -= v * &ml;
                    }
                    next.retain(|_, v| !v.is_zero());
                    normalize(&mut next);
                    row = next;
                }
            }
        }
    }
    pivots.len()
}

/// Integer coefficients of `p` up to a positive common factor.
fn integer_terms(p: &MultiPoly) -> Vec<(Vec<u32>, BigInt)> {
    let lcm = p.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    p.terms()
        .map(|(e, c)| (e.clone(), (c * BigRational::from_integer(lcm.clone())).to_integer()))
        .collect()
}

/// `c(D)`.
fn colength(n: usize, comps: &[Vec<(Vec<u32>, BigInt)>], d: usize) -> usize {
    let cols = monomials_below(n, d);
    let mut rows = Vec::new();
    for f in comps {
        for shift in cols.keys() {
            let mut row = SparseRow::new();
            for (e, c) in f {
                let prod: Vec<u32> = e.iter().zip(shift).map(|(a, b)| a + b).collect();
                if let Some(&col) = cols.get(&prod) {
                    row.insert(col, c.clone());
                }
            }
            if !row.is_empty() {
                rows.push(row);
            }
        }
    }
    // Deterministic order keeps the elimination reproducible.
    rows.sort();
    cols.len() - rank(rows)
}

pub fn local_multiplicity(q: &IndexQuery) -> Result<LocalIndexReport> {
    q.validate()?;
    let n = q.components[0].nvars();
    let comps: Vec<_> = q.components.iter().map(integer_terms).collect();
    let mut prev = colength(n, &comps, 1);
    for d in 1..q.degree_cap {
        let next = colength(n, &comps, d + 1);
        debug_assert!(next >= prev, "colength decreased at degree {d}");
        if next == prev {
            let multiplicity = prev as u64;
            return Ok(LocalIndexReport {
                multiplicity,
                orbifold_index: orbifold_index(multiplicity, q.group_order)?,
                stabilized_at: d,
            });
        }
        prev = next;
    }
    Err(Error::NonIsolatedZero { cap: q.degree_cap })
}

pub fn orbifold_index(multiplicity: u64, group_order: u64) -> Result<BigRational> {
    if group_order == 0 {
        return Err(Error::InvalidInput("group order must be positive".into()));
    }
    Ok(BigRational::new(multiplicity.into(), group_order.into()))
}

pub fn index_sum(reports: &[LocalIndexReport]) -> BigRational {
    reports.iter().fold(BigRational::zero(), |acc, r| acc + &r.orbifold_index)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_poly, ratio, vars_from};

    fn query(vars: &[&str], comps: &[&str], group: u64) -> IndexQuery {
        let v = vars_from(vars);
        IndexQuery::new(comps.iter().map(|c| parse_poly(c, &v).unwrap()).collect(), group)
    }

    #[test]
    fn nondegenerate() {
        let r = local_multiplicity(&query(&["z1", "z2"], &["z1", "z2"], 1)).unwrap();
        assert_eq!((r.multiplicity, r.orbifold_index), (1, ratio(1, 1)));
    }

    #[test]
    fn orbifold_point() {
        let r = local_multiplicity(&query(&["z1", "z2"], &["3*z1^2", "3*z2^2"], 3)).unwrap();
        assert_eq!((r.multiplicity, r.orbifold_index), (4, ratio(4, 3)));
    }

    #[test]
    fn separated_monomials() {
        let r = local_multiplicity(&query(&["z1", "z2"], &["z1^2", "z2^3"], 1)).unwrap();
        assert_eq!(r.multiplicity, 6);
    }

    #[test]
    fn other_zeros_are_ignored() {
        // z1(z1 − 1) has a second zero at z1 = 1, away from the origin.
        let r = local_multiplicity(&query(&["z1", "z2"], &["z1^2 - z1", "z2^2"], 1)).unwrap();
        assert_eq!(r.multiplicity, 2);
    }

    #[test]
    fn mixed_germ() {
        // (x² − y³, xy): Milnor-style colength 5.
        let r = local_multiplicity(&query(&["x", "y"], &["x^2 - y^3", "x*y"], 1)).unwrap();
        assert_eq!(r.multiplicity, 5);
    }

    #[test]
    fn errors() {
        let mut q = query(&["z1", "z2"], &["z1*z2", "z1^2"], 1);
        q.degree_cap = 8;
        assert!(matches!(local_multiplicity(&q), Err(Error::NonIsolatedZero { cap: 8 })));
        assert!(local_multiplicity(&query(&["z1", "z2"], &["z1 + 1", "z2"], 1)).is_err());
        assert!(local_multiplicity(&query(&["z1", "z2"], &["z1"], 1)).is_err());
        assert!(local_multiplicity(&query(&["z1", "z2"], &["z1", "z2"], 0)).is_err());
        assert!(orbifold_index(1, 0).is_err());
    }

    #[test]
    fn sums() {
        assert_eq!(index_sum(&[]), BigRational::zero());
        let reps: Vec<_> = [2u64, 3, 5]
            .iter()
            .map(|&w| LocalIndexReport {
                multiplicity: 1,
                orbifold_index: orbifold_index(1, w).unwrap(),
                stabilized_at: 1,
            })
            .collect();
        assert_eq!(index_sum(&reps), ratio(31, 30));
    }
}
