//! Builtin varieties and the line-oriented model file format.
//!
//! ```text
//! # blow-up of the plane at a point
//! name blowup_point_2
//! dim 2
//! rank 2
//! gens H E
//! smooth true
//! divisor 1 -1
//! divisor 1 -1
//! divisor 1 0
//! divisor 0 1
//! tensor 2 0 = 1
//! tensor 0 2 = -1
//! ```
//!
//! Optional lines: `chern <j> : <polynomial in gens>`, `radial <int>...`
//! (one per generator) and `coords <ident>...`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::chow::{ModelParts, ToricModel};
use crate::error::{Error, Result};
use crate::exactalg::{format_rational, parse_poly, parse_rational, rat, ratio, vars_from};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelSpec {
    Projective(usize),
    Weighted(Vec<i64>),
    Multiprojective(Vec<usize>),
    Scroll(Vec<i64>),
    BlowupPoint(usize),
    BlowupTwoPointsP3,
    BlowupLineP3,
}

impl ModelSpec {
    /// One representative of every family, for listings.
    pub fn families() -> Vec<(&'static str, &'static str)> {
        vec![
            ("projective:<n>", "projective space P^n"),
            ("weighted:<w0>,...,<wn>", "weighted projective space P(w)"),
            ("multiprojective:<n1>,...,<nk>", "product P^n1 x ... x P^nk"),
            ("scroll:<a1>,...,<an>", "rational normal scroll F(a1,...,an)"),
            ("blowup_point:<n>", "blow-up of P^n at a point"),
            ("blowup_two_points_p3", "blow-up of P^3 at two points"),
            ("blowup_line_p3", "blow-up of P^3 along a line"),
        ]
    }
}

fn join<T: fmt::Display>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelSpec::Projective(n) => write!(f, "projective:{n}"),
            ModelSpec::Weighted(w) => write!(f, "weighted:{}", join(w)),
            ModelSpec::Multiprojective(ns) => write!(f, "multiprojective:{}", join(ns)),
            ModelSpec::Scroll(a) => write!(f, "scroll:{}", join(a)),
            ModelSpec::BlowupPoint(n) => write!(f, "blowup_point:{n}"),
            ModelSpec::BlowupTwoPointsP3 => write!(f, "blowup_two_points_p3"),
            ModelSpec::BlowupLineP3 => write!(f, "blowup_line_p3"),
        }
    }
}

impl FromStr for ModelSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (family, params) = match s.split_once(':') {
            Some((f, p)) => (f.trim(), Some(p.trim())),
            None => (s.trim(), None),
        };
        let ints = |p: Option<&str>| -> Result<Vec<i64>> {
            let p = p.ok_or_else(|| Error::InvalidInput(format!("`{family}` needs parameters")))?;
            p.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::InvalidInput(format!("bad parameter `{x}` in `{s}`")))
                })
                .collect()
        };
        let single = |p: Option<&str>| -> Result<usize> {
            let v = ints(p)?;
            match v.as_slice() {
                [n] if *n >= 0 => Ok(*n as usize),
                _ => Err(Error::InvalidInput(format!("`{family}` takes one natural number"))),
            }
        };
        let naturals = |p: Option<&str>| -> Result<Vec<usize>> {
            ints(p)?
                .into_iter()
                .map(|x| {
                    usize::try_from(x)
                        .map_err(|_| Error::InvalidInput(format!("negative parameter in `{s}`")))
                })
                .collect()
        };
        match family {
            "projective" => Ok(ModelSpec::Projective(single(params)?)),
            "weighted" => Ok(ModelSpec::Weighted(ints(params)?)),
            "multiprojective" => Ok(ModelSpec::Multiprojective(naturals(params)?)),
            "scroll" => Ok(ModelSpec::Scroll(ints(params)?)),
            "blowup_point" => Ok(ModelSpec::BlowupPoint(single(params)?)),
            "blowup_two_points_p3" if params.is_none() => Ok(ModelSpec::BlowupTwoPointsP3),
            "blowup_line_p3" if params.is_none() => Ok(ModelSpec::BlowupLineP3),
            _ => Err(Error::InvalidInput(format!("unknown model `{s}`"))),
        }
    }
}

fn name_part(x: i64) -> String {
    if x < 0 {
        format!("m{}", -x)
    } else {
        x.to_string()
    }
}

fn weighted_parts(name: String, weights: &[i64]) -> ModelParts {
    let n = weights.len() - 1;
    let mut parts = ModelParts::new(&name, n, &["H"]);
    parts.divisor_classes = Some(weights.iter().map(|&w| vec![w]).collect());
    let prod: i64 = weights.iter().product();
    parts.tensor.insert(vec![n as u32], ratio(1, prod));
    parts.smooth = weights.iter().all(|&w| w == 1);
    parts
}

/// Builds a catalog model and reports non-fatal warnings (currently only
/// weighted spaces whose weights are not pairwise coprime).
pub fn builtin_with_warnings(spec: &ModelSpec) -> Result<(ToricModel, Vec<String>)> {
    let mut warnings = Vec::new();
    let parts = match spec {
        ModelSpec::Projective(n) => {
            if *n == 0 {
                return Err(Error::validation("positive dimension", "projective:0"));
            }
            weighted_parts(format!("projective_{n}"), &vec![1; n + 1])
        }
        ModelSpec::Weighted(w) => {
            if w.len() < 2 {
                return Err(Error::validation("at least two weights", join(w)));
            }
            if w.iter().any(|&x| x <= 0) {
                return Err(Error::validation("positive weights", join(w)));
            }
            let g = w.iter().fold(0i64, |acc, &x| acc.gcd(&x));
            if g != 1 {
                return Err(Error::validation("weights have gcd 1", format!("gcd({}) = {g}", join(w))));
            }
            let pairwise = (0..w.len())
                .all(|i| (i + 1..w.len()).all(|j| w[i].gcd(&w[j]) == 1));
            if !pairwise {
                warnings.push(format!(
                    "weighted projective space P({}) is not well formed (weights not pairwise coprime)",
                    join(w)
                ));
            }
            let name = format!(
                "weighted_{}",
                w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("_")
            );
            weighted_parts(name, w)
        }
        ModelSpec::Multiprojective(ns) => {
            if ns.is_empty() || ns.contains(&0) {
                return Err(Error::validation("positive factor dimensions", join(ns)));
            }
            let k = ns.len();
            let gens: Vec<String> = if k == 1 {
                vec!["H".to_string()]
            } else {
                (1..=k).map(|i| format!("H{i}")).collect()
            };
            let gen_refs: Vec<&str> = gens.iter().map(|s| s.as_str()).collect();
            let dim: usize = ns.iter().sum();
            let name = format!(
                "multiprojective_{}",
                ns.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("_")
            );
            let mut parts = ModelParts::new(&name, dim, &gen_refs);
            let mut classes = Vec::new();
            let mut coords = Vec::new();
            for (i, &ni) in ns.iter().enumerate() {
                let mut unit = vec![0; k];
                unit[i] = 1;
                for j in 0..=ni {
                    classes.push(unit.clone());
                    coords.push(format!("z{}_{}", i + 1, j));
                }
            }
            parts.divisor_classes = Some(classes);
            if k > 1 {
                parts.coords = Some(coords);
            }
            parts.tensor.insert(ns.iter().map(|&x| x as u32).collect(), rat(1));
            parts
        }
        ModelSpec::Scroll(a) => {
            let n = a.len();
            if n == 0 {
                return Err(Error::validation("at least one scroll parameter", "scroll:"));
            }
            let name = format!(
                "scroll_{}",
                a.iter().map(|&x| name_part(x)).collect::<Vec<_>>().join("_")
            );
            let mut parts = ModelParts::new(&name, n, &["L", "M"]);
            let mut classes = vec![vec![1, 0], vec![1, 0]];
            classes.extend(a.iter().map(|&ai| vec![-ai, 1]));
            parts.divisor_classes = Some(classes);
            let mut coords = vec!["z1_1".to_string(), "z1_2".to_string()];
            coords.extend((1..=n).map(|i| format!("z2_{i}")));
            parts.coords = Some(coords);
            parts.tensor.insert(vec![0, n as u32], rat(a.iter().sum()));
            parts.tensor.insert(vec![1, n as u32 - 1], rat(1));
            parts
        }
        ModelSpec::BlowupPoint(n) => {
            let n = *n;
            if n < 2 {
                return Err(Error::validation("blow-up dimension at least 2", n.to_string()));
            }
            let mut parts = ModelParts::new(&format!("blowup_point_{n}"), n, &["H", "E"]);
            let mut classes = vec![vec![1, -1]; n];
            classes.push(vec![1, 0]);
            classes.push(vec![0, 1]);
            parts.divisor_classes = Some(classes);
            parts.tensor.insert(vec![n as u32, 0], rat(1));
            let sign = if n % 2 == 1 { 1 } else { -1 };
            parts.tensor.insert(vec![0, n as u32], rat(sign));
            parts
        }
        ModelSpec::BlowupTwoPointsP3 => {
            let mut parts = ModelParts::new("blowup_two_points_p3", 3, &["H", "E1", "E2"]);
            let gens = vars_from(&["H", "E1", "E2"]);
            let mut over = BTreeMap::new();
            over.insert(1, parse_poly("4*H - 2*E1 - 2*E2", &gens)?);
            over.insert(2, parse_poly("6*H^2", &gens)?);
            over.insert(3, parse_poly("8*H^3", &gens)?);
            parts.chern_override = Some(over);
            parts.tensor.insert(vec![3, 0, 0], rat(1));
            parts.tensor.insert(vec![0, 3, 0], rat(1));
            parts.tensor.insert(vec![0, 0, 3], rat(1));
            parts
        }
        ModelSpec::BlowupLineP3 => {
            let mut parts = ModelParts::new("blowup_line_p3", 3, &["H", "E"]);
            let gens = vars_from(&["H", "E"]);
            let mut over = BTreeMap::new();
            over.insert(1, parse_poly("4*H - E", &gens)?);
            over.insert(2, parse_poly("7*H^2 - 4*H*E", &gens)?);
            over.insert(3, parse_poly("6*H^3", &gens)?);
            parts.chern_override = Some(over);
            parts.tensor.insert(vec![3, 0], rat(1));
            parts.tensor.insert(vec![1, 2], rat(-1));
            parts.tensor.insert(vec![0, 3], rat(-2));
            parts
        }
    };
    Ok((ToricModel::new(parts)?, warnings))
}

pub fn builtin(spec: &ModelSpec) -> Result<ToricModel> {
    builtin_with_warnings(spec).map(|(m, _)| m)
}

/// Every family at the parameters used in the documentation and tests.
pub fn catalog_models() -> Vec<ToricModel> {
    let specs = [
        ModelSpec::Projective(1),
        ModelSpec::Projective(2),
        ModelSpec::Projective(3),
        ModelSpec::Projective(4),
        ModelSpec::Weighted(vec![1, 1, 2]),
        ModelSpec::Weighted(vec![1, 2, 3]),
        ModelSpec::Weighted(vec![1, 1, 1, 3]),
        ModelSpec::Weighted(vec![1, 7, 3, 5]),
        ModelSpec::Multiprojective(vec![1, 1]),
        ModelSpec::Multiprojective(vec![1, 2]),
        ModelSpec::Scroll(vec![1, 1]),
        ModelSpec::Scroll(vec![2, 5]),
        ModelSpec::Scroll(vec![1, 1, 1]),
        ModelSpec::Scroll(vec![0, 1, 3]),
        ModelSpec::BlowupPoint(2),
        ModelSpec::BlowupPoint(3),
        ModelSpec::BlowupTwoPointsP3,
        ModelSpec::BlowupLineP3,
    ];
    specs.iter().map(|s| builtin(s).expect("catalog parameters are valid")).collect()
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.')
}

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        message: message.into(),
    }
}

pub fn parse_model(text: &str) -> Result<ToricModel> {
    let mut name = None;
    let mut dim = None;
    let mut rank = None;
    let mut gens: Option<Vec<String>> = None;
    let mut smooth = None;
    let mut divisors = Vec::new();
    let mut tensor = BTreeMap::new();
    let mut cherns: Vec<(usize, usize, String)> = Vec::new();
    let mut radial = Vec::new();
    let mut coords = None;

    fn once<T>(slot: &mut Option<T>, v: T, line: usize, key: &str) -> Result<()> {
        if slot.is_some() {
            return Err(syntax(line, format!("duplicate `{key}` line")));
        }
        *slot = Some(v);
        Ok(())
    }
    let int = |s: &str, line: usize| -> Result<i64> {
        s.parse::<i64>().map_err(|_| syntax(line, format!("expected an integer, got `{s}`")))
    };
    let nat = |s: &str, line: usize| -> Result<usize> {
        s.parse::<usize>()
            .map_err(|_| syntax(line, format!("expected a natural number, got `{s}`")))
    };

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, rest) = match content.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (content, ""),
        };
        let words: Vec<&str> = rest.split_whitespace().collect();
        match key {
            "name" => {
                if words.len() != 1 || !is_ident(words[0]) {
                    return Err(syntax(line, "`name` takes one identifier"));
                }
                once(&mut name, words[0].to_string(), line, key)?;
            }
            "dim" | "rank" => {
                if words.len() != 1 {
                    return Err(syntax(line, format!("`{key}` takes one integer")));
                }
                let v = nat(words[0], line)?;
                once(if key == "dim" { &mut dim } else { &mut rank }, v, line, key)?;
            }
            "gens" | "coords" => {
                if words.is_empty() || !words.iter().all(|w| is_ident(w)) {
                    return Err(syntax(line, format!("`{key}` takes identifiers")));
                }
                let v = words.iter().map(|s| s.to_string()).collect();
                once(if key == "gens" { &mut gens } else { &mut coords }, v, line, key)?;
            }
            "smooth" => {
                let v = match words.as_slice() {
                    ["true"] => true,
                    ["false"] => false,
                    _ => return Err(syntax(line, "`smooth` takes true or false")),
                };
                once(&mut smooth, v, line, key)?;
            }
            "divisor" | "radial" => {
                let v = words.iter().map(|w| int(w, line)).collect::<Result<Vec<_>>>()?;
                if v.is_empty() {
                    return Err(syntax(line, format!("`{key}` needs integers")));
                }
                if key == "divisor" {
                    divisors.push((line, v));
                } else {
                    radial.push((line, v));
                }
            }
            "tensor" => {
                let (lhs, rhs) = rest
                    .split_once('=')
                    .ok_or_else(|| syntax(line, "expected `tensor <e1> ... <er> = <rational>`"))?;
                let key_v = lhs
                    .split_whitespace()
                    .map(|w| {
                        w.parse::<u32>()
                            .map_err(|_| syntax(line, format!("bad exponent `{w}`")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let value = parse_rational(rhs).map_err(|_| syntax(line, format!("bad rational `{}`", rhs.trim())))?;
                if tensor.insert(key_v.clone(), (line, value)).is_some() {
                    return Err(syntax(line, format!("duplicate tensor key {key_v:?}")));
                }
            }
            "chern" => {
                let (j, poly) = rest
                    .split_once(':')
                    .ok_or_else(|| syntax(line, "expected `chern <j> : <polynomial>`"))?;
                let j = nat(j.trim(), line)?;
                if cherns.iter().any(|(k, _, _)| *k == j) {
                    return Err(syntax(line, format!("duplicate chern degree {j}")));
                }
                cherns.push((j, line, poly.trim().to_string()));
            }
            other => return Err(syntax(line, format!("unknown directive `{other}`"))),
        }
    }

    let missing = |k: &str| syntax(text.lines().count().max(1), format!("missing `{k}` line"));
    let name = name.ok_or_else(|| missing("name"))?;
    let dim = dim.ok_or_else(|| missing("dim"))?;
    let rank = rank.ok_or_else(|| missing("rank"))?;
    let gens = gens.ok_or_else(|| missing("gens"))?;
    let smooth = smooth.ok_or_else(|| missing("smooth"))?;
    if gens.len() != rank {
        return Err(Error::validation(
            "one generator name per rank",
            format!("{} names for rank {rank}", gens.len()),
        ));
    }
    for (line, d) in &divisors {
        if d.len() != rank {
            return Err(syntax(*line, format!("divisor has {} entries, rank is {rank}", d.len())));
        }
    }
    for (line, d) in &radial {
        if d.len() != dim + rank {
            return Err(syntax(
                *line,
                format!("radial has {} entries, expected {}", d.len(), dim + rank),
            ));
        }
    }
    if tensor.is_empty() {
        return Err(missing("tensor"));
    }
    for (key, (line, _)) in &tensor {
        if key.len() != rank {
            return Err(syntax(*line, format!("tensor key has {} exponents, rank is {rank}", key.len())));
        }
    }
    let gen_vars = vars_from(&gens);
    let chern_override = if cherns.is_empty() {
        None
    } else {
        let mut over = BTreeMap::new();
        for (j, line, text) in cherns {
            let p = parse_poly(&text, &gen_vars).map_err(|e| match e {
                Error::Syntax { message, .. } => syntax(line, message),
                Error::UnknownVariable(v) => syntax(line, format!("unknown generator `{v}`")),
                other => other,
            })?;
            over.insert(j, p);
        }
        Some(over)
    };
    let mut parts = ModelParts::new(&name, dim, &gens.iter().map(|s| s.as_str()).collect::<Vec<_>>());
    parts.smooth = smooth;
    parts.divisor_classes = (!divisors.is_empty()).then(|| divisors.into_iter().map(|(_, d)| d).collect());
    parts.tensor = tensor.into_iter().map(|(k, (_, v))| (k, v)).collect();
    parts.chern_override = chern_override;
    parts.radial = (!radial.is_empty()).then(|| radial.into_iter().map(|(_, d)| d).collect());
    parts.coords = coords;
    ToricModel::new(parts)
}

pub fn serialize_model(model: &ToricModel) -> String {
    let p = model.parts();
    let mut out = String::new();
    let ints = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    out.push_str(&format!("name {}\n", p.name));
    out.push_str(&format!("dim {}\n", p.dim));
    out.push_str(&format!("rank {}\n", p.rank));
    out.push_str(&format!("gens {}\n", p.gens.join(" ")));
    out.push_str(&format!("smooth {}\n", p.smooth));
    if let Some(coords) = &p.coords {
        out.push_str(&format!("coords {}\n", coords.join(" ")));
    }
    for d in p.divisor_classes.iter().flatten() {
        out.push_str(&format!("divisor {}\n", ints(d)));
    }
    for (k, v) in p.tensor.iter().rev() {
        let key = k.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        out.push_str(&format!("tensor {key} = {}\n", format_rational(v)));
    }
    for (j, c) in p.chern_override.iter().flatten() {
        out.push_str(&format!("chern {j} : {}\n", c.canonical_string()));
    }
    for row in p.radial.iter().flatten() {
        out.push_str(&format!("radial {}\n", ints(row)));
    }
    out
}
