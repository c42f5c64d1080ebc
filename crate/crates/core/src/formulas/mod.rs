//! Closed-form singularity counts, Euler characteristics, Poincaré-type
//! inequalities and the bounded Diophantine searches built on them.
//!
//! Toric counts are evaluated as ambient integrals: an integral over a
//! complete intersection `V(a_1..a_m)` is the ambient integral of the
//! integrand times `a_1⋯a_m`. Weighted complete intersections use the
//! scalar closed form directly.

mod counts;
mod inequality;
mod scroll;
mod search;
mod weighted;

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

use crate::error::Error;
use crate::exactalg::rat;

pub use counts::{
    ambient_euler, ci_euler, ci_sing_count, complement_euler, complement_sing_count,
    foliation_sing_count, gcd_obstruction, hypersurface_euler, multidegree,
    restricted_sing_count, DegreeIndex, GcdVerdict,
};
pub use inequality::{poincare_check, InequalityVerdict, PoincareInput};
pub use scroll::{scroll_closed_form, scroll_count_relation, ScrollRelation};
pub use search::{regular_search, Annotation, SearchFamily, SearchSolution};
pub use weighted::{
    alpha_invariant, baum_bott_sum, general_type_index, wci_breakdown, wci_sing_count,
    wci_terms, AlphaInvariant, WciBreakdown,
};

/// Whether the object is a section of the twisted tangent sheaf (foliation)
/// or of the twisted cotangent sheaf (codimension-one distribution). The
/// distribution count flips the sign of every odd summand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Foliation,
    Distribution,
}

impl Kind {
    /// Sign applied to the `i`-th summand.
    pub(crate) fn summand_sign(self, i: usize) -> BigRational {
        match self {
            Kind::Distribution if i % 2 == 1 => rat(-1),
            _ => rat(1),
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Foliation => "foliation",
            Kind::Distribution => "distribution",
        })
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "foliation" => Ok(Kind::Foliation),
            "distribution" => Ok(Kind::Distribution),
            other => Err(Error::InvalidInput(format!("unknown kind `{other}`"))),
        }
    }
}

pub(crate) fn alt_sign(k: usize) -> BigRational {
    if k.is_multiple_of(2) {
        rat(1)
    } else {
        rat(-1)
    }
}
