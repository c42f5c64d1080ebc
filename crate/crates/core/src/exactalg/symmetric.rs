use super::poly::{MultiPoly, Vars};

/// `e_0..=e_upto` of `items`; every item shares the table `vars`.
pub fn elementary_symmetric(items: &[MultiPoly], upto: usize, vars: &Vars) -> Vec<MultiPoly> {
    let mut e = vec![MultiPoly::zero(vars); upto + 1];
    e[0] = MultiPoly::one(vars);
    for x in items {
        for j in (1..=upto).rev() {
            let t = &e[j - 1] * x;
            e[j] = &e[j] + &t;
        }
    }
    e
}

/// Complete homogeneous symmetric functions `W_0..=W_upto` of `items`.
pub fn complete_homogeneous(items: &[MultiPoly], upto: usize, vars: &Vars) -> Vec<MultiPoly> {
    let mut w = vec![MultiPoly::zero(vars); upto + 1];
    w[0] = MultiPoly::one(vars);
    for x in items {
        for j in 1..=upto {
            let t = &w[j - 1] * x;
            w[j] = &w[j] + &t;
        }
    }
    w
}
