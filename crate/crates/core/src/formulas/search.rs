use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use super::counts::foliation_sing_count;
use super::weighted::wci_terms;
use super::Kind;
use crate::catalog::{builtin, ModelSpec};
use crate::chow::ClassExpr;
use crate::error::{Error, Result};
use crate::exactalg::{rat, vars_from, BigRational, MultiPoly, ScalarExpr};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchFamily {
    /// Hypersurfaces of degree `a` in `P(1,1,1,k)`.
    P111k,
    /// Hypersurfaces of degree `a` in `P(1,1,1,1,k)`.
    P1111k,
    /// The scroll `F(a_1..a_n)`, degrees `d1·L + d2·M`.
    Scroll(Vec<i64>),
}

impl fmt::Display for SearchFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchFamily::P111k => f.write_str("p111k"),
            SearchFamily::P1111k => f.write_str("p1111k"),
            SearchFamily::Scroll(a) => {
                let parts: Vec<String> = a.iter().map(|x| x.to_string()).collect();
                write!(f, "scroll:{}", parts.join(","))
            }
        }
    }
}

impl FromStr for SearchFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "p111k" => Ok(SearchFamily::P111k),
            "p1111k" => Ok(SearchFamily::P1111k),
            _ => {
                let rest = s
                    .strip_prefix("scroll:")
                    .ok_or_else(|| Error::InvalidInput(format!("unknown search family `{s}`")))?;
                let a = rest
                    .split(',')
                    .map(|t| t.trim().parse::<i64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| Error::InvalidInput(format!("bad scroll parameters `{rest}`")))?;
                Ok(SearchFamily::Scroll(a))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Annotation {
    Accepted,
    /// Ruled out by a cohomology vanishing the tool does not check.
    ExcludedByCohomology,
}

impl fmt::Display for Annotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Annotation::Accepted => "accepted",
            Annotation::ExcludedByCohomology => "excluded-by-cohomology",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchSolution {
    pub family: String,
    /// Named parameters in tuple order.
    pub params: Vec<(String, i64)>,
    pub annotation: Annotation,
}

impl SearchSolution {
    pub fn values(&self) -> Vec<i64> {
        self.params.iter().map(|(_, v)| *v).collect()
    }
}

impl fmt::Display for SearchSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "({}) {}", parts.join(", "), self.annotation)
    }
}

/// Degree-`a` hypersurface count polynomial on `P(1,…,1,k)` in the variables
/// `(a, d, k)`, up to the positive factor `a/k`.
fn weighted_family_poly(ones: usize) -> Result<ScalarExpr> {
    let vars = vars_from(&["a", "d", "k"]);
    let v = |i| MultiPoly::var(&vars, i);
    let mut weights = vec![MultiPoly::one(&vars); ones];
    weights.push(v(2));
    Ok(wci_terms(&weights, &[v(0)], &v(1), Kind::Distribution)?.bracket())
}

fn is_root(p: &ScalarExpr, values: &[i64]) -> Result<bool> {
    let vals: Vec<BigRational> = values.iter().map(|&x| rat(x)).collect();
    Ok(p.eval(&vals)?.is_zero())
}

/// Bounded enumeration of the parameters for which the family's count of
/// singular points vanishes. Results are sorted lexicographically.
pub fn regular_search(family: &SearchFamily, bound: i64) -> Result<Vec<SearchSolution>> {
    if bound < 1 {
        return Err(Error::InvalidInput(format!("bound must be positive, got {bound}")));
    }
    let tag = family.to_string();
    let mut out = Vec::new();
    match family {
        SearchFamily::P111k | SearchFamily::P1111k => {
            let (ones, k_min) = match family {
                SearchFamily::P111k => (3, 2),
                _ => (4, 1),
            };
            let p = weighted_family_poly(ones)?;
            for a in 1..=bound {
                for k in (k_min..=bound).filter(|k| a % k == 0) {
                    for d in 1..=bound {
                        if !is_root(&p, &[a, d, k])? {
                            continue;
                        }
                        let annotation = if ones == 4 && (a, d, k) == (2, 1, 1) {
                            Annotation::ExcludedByCohomology
                        } else {
                            Annotation::Accepted
                        };
                        out.push(SearchSolution {
                            family: tag.clone(),
                            params: vec![("a".into(), a), ("d".into(), d), ("k".into(), k)],
                            annotation,
                        });
                    }
                }
            }
        }
        SearchFamily::Scroll(a) => {
            let model = builtin(&ModelSpec::Scroll(a.clone()))?;
            let p = foliation_sing_count(&model, &ClassExpr::symbolic(&["d1", "d2"]))?;
            for d1 in -bound..=bound {
                for d2 in -bound..=bound {
                    if is_root(&p, &[d1, d2])? {
                        out.push(SearchSolution {
                            family: tag.clone(),
                            params: vec![("d1".into(), d1), ("d2".into(), d2)],
                            annotation: Annotation::Accepted,
                        });
                    }
                }
            }
        }
    }
    out.sort_by_key(|s| s.values());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_poly;

    #[test]
    fn family_polynomials() {
        let vars = vars_from(&["a", "d", "k"]);
        let quad = parse_poly("d^2 - (3+k-a)*d", &vars);
        // The parser has no parentheses; compare against the expanded form.
        assert!(quad.is_err());
        let expected =
            parse_poly("d^2 - 3*d - k*d + a*d + 3 + 3*k - 3*a - k*a + a^2", &vars).unwrap();
        assert_eq!(weighted_family_poly(3).unwrap(), expected);
        let cubic = parse_poly(
            "d^3 - 4*d^2 - k*d^2 + a*d^2 + 6*d + 4*k*d - 4*a*d - k*a*d + a^2*d \
             - 4 - 6*k + 6*a + 4*k*a - 4*a^2 - k*a^2 + a^3",
            &vars,
        )
        .unwrap();
        assert_eq!(weighted_family_poly(4).unwrap(), cubic);
    }

    #[test]
    fn small_bounds() {
        assert!(regular_search(&SearchFamily::P111k, 12).unwrap().is_empty());
        let s = regular_search(&SearchFamily::P1111k, 5).unwrap();
        let got: Vec<_> = s.iter().map(|x| (x.values(), x.annotation)).collect();
        let mut want = vec![(vec![2, 1, 1], Annotation::ExcludedByCohomology)];
        want.extend((1..=5).map(|k| (vec![k, 2, k], Annotation::Accepted)));
        want.sort();
        assert_eq!(got, want);
        assert!(regular_search(&SearchFamily::P111k, 0).is_err());
    }

    #[test]
    fn family_parse() {
        assert_eq!("scroll:1,1,1".parse::<SearchFamily>().unwrap(), SearchFamily::Scroll(vec![1, 1, 1]));
        assert_eq!(SearchFamily::Scroll(vec![1, 2]).to_string(), "scroll:1,2");
        assert!("p11k".parse::<SearchFamily>().is_err());
    }
}
