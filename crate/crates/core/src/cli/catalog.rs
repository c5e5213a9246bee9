//! Built-in functions, capacities, operators and checks addressable from configs.

use std::f64::consts::E;

use super::config::{parse_value, split_args, split_list, RawConfig};
use crate::analysis::BoundKind;
use crate::capacity::{Capacity, Distortion, UnimodalDistribution};
use crate::error::{Error, Result};
use crate::function::{Func1, Func2};
use crate::operators::Target;

pub const FUNCTIONS: &[(&str, &str)] = &[
    ("e0", "constant 1"),
    ("e1", "t"),
    ("t^2", "t squared"),
    ("exp", "e^t"),
    ("exp-normalized", "(e^t - 1)/(e - 1)"),
    ("abs-shift[c]", "|t - c|, default c = 1/2"),
    ("poly[c0 c1 ...]", "c0 + c1 t + ..."),
];

pub const SIMPLEX_FUNCTIONS: &[(&str, &str)] = &[
    ("one", "constant 1 on the triangle"),
    ("sum", "x1 + x2"),
    ("x1^2", "x1 squared"),
    ("dist[a b]", "Euclidean distance from (a, b)"),
];

pub const CAPACITIES: &[(&str, &str)] = &[
    ("sqrt-lebesgue", "sqrt of Lebesgue measure (area on the triangle)"),
    ("sin-lebesgue", "sin of Lebesgue measure"),
    ("power-lebesgue[p]", "Lebesgue measure to the power p in (0, 1]"),
    ("square-lebesgue", "squared Lebesgue measure; not submodular"),
    ("lebesgue", "Lebesgue measure"),
    ("possibility-bump[n k]", "possibility measure of the normalized t^k (1-t)^(n-k)"),
    ("possibility-tabulated[v0 v1 ...]", "possibility measure of tabulated node values"),
    ("dirac[x]", "unit point mass; two coordinates on the triangle"),
];

pub const OPERATORS: &[(&str, &str)] = &[
    ("mn-gamma", "general operator; operator.family = constant | possibility | all-dirac | mixed-dirac"),
    ("dn-possibility", "possibility-measure operator"),
    ("dbar", "ordinary delta terms, Choquet term at k = n"),
    ("dtilde", "ordinary delta terms, Choquet term at k = 0"),
    ("dstar", "ordinary delta terms, Choquet terms at k = 0 and k = n"),
    ("mstar", "M(f - m) + m for f >= m = operator.lower"),
    ("genuine-u", "genuine operator with Choquet end terms"),
    ("dn-single-mu", "one capacity in every term"),
    ("bernstein", "classical Bernstein operator"),
    ("durrmeyer", "classical Durrmeyer operator against operator.delta"),
    ("classical-genuine", "classical genuine Durrmeyer operator"),
];

pub const KINDS: &[(&str, &str)] = &[
    ("integrate", "Choquet integrals of functions over sets"),
    ("operator-eval", "operator values on an x grid"),
    ("bound-check", "error estimate checks; exit 1 on failure"),
    ("compare", "improvement over Bernstein or reduction to classical operators"),
    ("sweep", "operator errors |M(f) - f| over functions, degrees and points"),
    ("property-suite", "randomized Choquet-integral and capacity structure checks"),
];

fn check_description(k: BoundKind) -> &'static str {
    match k {
        BoundKind::PointwiseModulus => "|M(f)(x) - f(x)| <= 2 w(f; M(phi_x)(x))",
        BoundKind::UniformK => "||M(f) - f|| <= 2 K(f; Delta_n / 2)",
        BoundKind::LpDbar => "||f - Dbar(f)||_p,mu <= 2 Kbar(f; ||Dbar(phi_x)||_p,mu / 2)",
        BoundKind::LpDstar => "||f - D*(f)||_p,mu <= 3 Kbar(f; ||D*(phi_x)||_p,mu / 3)",
        BoundKind::PossibilityRate => "possibility operator, explicit modulus argument",
    }
}

/// Stable, human-readable listing of everything a config can name.
pub fn list_catalog() -> String {
    let mut out = String::new();
    let mut section = |title: &str, items: &[(&str, &str)]| {
        out.push_str(title);
        out.push('\n');
        for (name, desc) in items {
            out.push_str(&format!("  {name:<34} {desc}\n"));
        }
    };
    section("kinds:", KINDS);
    section("functions:", FUNCTIONS);
    section("simplex functions:", SIMPLEX_FUNCTIONS);
    section("capacities:", CAPACITIES);
    section("operators:", OPERATORS);
    out.push_str("checks:\n");
    for k in BoundKind::ALL {
        let names = std::iter::once(k.tag()).chain(k.aliases().iter().copied()).collect::<Vec<_>>().join(", ");
        out.push_str(&format!("  {names:<34} {}\n", check_description(k)));
    }
    out
}

fn floats(key: &str, args: &[String]) -> Result<Vec<f64>> {
    args.iter().map(|a| parse_value(key, a)).collect()
}

fn arity(key: &str, name: &str, args: &[String], allowed: &[usize]) -> Result<()> {
    if allowed.contains(&args.len()) {
        Ok(())
    } else {
        Err(Error::Config(format!("`{key}`: `{name}` takes {allowed:?} arguments, got {}", args.len())))
    }
}

pub fn function_1d(key: &str, item: &str) -> Result<Func1> {
    let (name, args) = split_args(item)?;
    let a = floats(key, &args)?;
    let none = |f: Func1| -> Result<Func1> {
        arity(key, &name, &args, &[0])?;
        Ok(f)
    };
    match name.as_str() {
        "e0" => none(Func1::e0()),
        "e1" => none(Func1::e1()),
        "t^2" => none(Func1::new("t^2", |t: f64| t * t)),
        "exp" => none(Func1::new("exp", |t: f64| t.exp())),
        "exp-normalized" => none(Func1::new("exp-normalized", |t: f64| (t.exp() - 1.0) / (E - 1.0))),
        "abs-shift" => {
            arity(key, &name, &args, &[0, 1])?;
            let c = a.first().copied().unwrap_or(0.5);
            Ok(Func1::new(format!("abs-shift[{c}]"), move |t: f64| (t - c).abs()))
        }
        "poly" => {
            if a.is_empty() {
                return Err(Error::Config(format!("`{key}`: poly needs coefficients")));
            }
            let label = format!("poly[{}]", args.join(" "));
            Ok(Func1::new(label, move |t: f64| a.iter().rev().fold(0.0, |acc, c| acc * t + c)))
        }
        other => Err(Error::Config(format!("`{key}`: unknown function `{other}`"))),
    }
}

pub fn function_2d(key: &str, item: &str) -> Result<Func2> {
    let (name, args) = split_args(item)?;
    let a = floats(key, &args)?;
    match name.as_str() {
        "one" => Ok(Func2::constant(1.0)),
        "sum" => Ok(Func2::new("sum", |p: [f64; 2]| p[0] + p[1])),
        "x1^2" => Ok(Func2::new("x1^2", |p: [f64; 2]| p[0] * p[0])),
        "dist" => {
            arity(key, &name, &args, &[2])?;
            Ok(Func2::distance_from([a[0], a[1]]))
        }
        other => Err(Error::Config(format!("`{key}`: unknown simplex function `{other}`"))),
    }
    .and_then(|f| {
        if name != "dist" && !args.is_empty() {
            Err(Error::Config(format!("`{key}`: `{name}` takes no arguments")))
        } else {
            Ok(f)
        }
    })
}

pub fn targets(key: &str, value: &str, dim: usize) -> Result<Vec<Target>> {
    let items = split_list(value);
    if items.is_empty() {
        return Err(Error::Config(format!("`{key}` is empty")));
    }
    items
        .iter()
        .map(|item| match dim {
            1 => function_1d(key, item).map(Target::Line),
            2 => function_2d(key, item).map(Target::Simplex),
            _ => Err(Error::Config(format!("dimension {dim} is not supported"))),
        })
        .collect()
}

pub fn capacity_shorthand(key: &str, item: &str) -> Result<Capacity> {
    let (name, args) = split_args(item)?;
    let a = floats(key, &args)?;
    let c = match name.as_str() {
        "sqrt-lebesgue" | "sqrt-area" => Capacity::sqrt_lebesgue(),
        "sin-lebesgue" | "sin-area" => Capacity::sin_lebesgue(),
        "square-lebesgue" => Capacity::DistortedLebesgue(Distortion::Square),
        "lebesgue" | "area" => Capacity::LebesgueBorel,
        "power-lebesgue" => {
            arity(key, &name, &args, &[1])?;
            Capacity::DistortedLebesgue(Distortion::power(a[0]).map_err(|e| Error::Config(format!("`{key}`: {e}")))?)
        }
        "possibility-bump" => {
            arity(key, &name, &args, &[2])?;
            let n: u32 = parse_value(key, &args[0])?;
            let k: u32 = parse_value(key, &args[1])?;
            Capacity::possibility_bump(n, k).map_err(|e| Error::Config(format!("`{key}`: {e}")))?
        }
        "possibility-tabulated" => Capacity::Possibility(
            UnimodalDistribution::tabulated(a.clone()).map_err(|e| Error::Config(format!("`{key}`: {e}")))?,
        ),
        "dirac" => {
            arity(key, &name, &args, &[1, 2])?;
            Capacity::Dirac(a.clone())
        }
        other => return Err(Error::Config(format!("`{key}`: unknown capacity `{other}`"))),
    };
    if !matches!(name.as_str(), "power-lebesgue" | "possibility-bump" | "possibility-tabulated" | "dirac")
        && !args.is_empty()
    {
        return Err(Error::Config(format!("`{key}`: `{name}` takes no arguments")));
    }
    c.validate().map_err(|e| Error::Config(format!("`{key}`: {e}")))?;
    Ok(c)
}

/// Tagged-record form: `<key>.kind = distorted-lebesgue`, `<key>.gamma = sqrt`, ...
fn capacity_record(cfg: &RawConfig, key: &str) -> Result<Capacity> {
    let field = |f: &str| format!("{key}.{f}");
    let kind = cfg.require(&field("kind"))?;
    let c = match kind {
        "distorted-lebesgue" => {
            let gamma = cfg.require(&field("gamma"))?;
            let d = match gamma {
                "sqrt" => Distortion::Sqrt,
                "sin" => Distortion::Sin,
                "identity" => Distortion::Identity,
                "square" => Distortion::Square,
                "power" => Distortion::power(cfg.parse_required(&field("p"))?)
                    .map_err(|e| Error::Config(format!("`{}`: {e}", field("p"))))?,
                other => return Err(Error::Config(format!("`{}`: unknown gamma `{other}`", field("gamma")))),
            };
            Capacity::DistortedLebesgue(d)
        }
        "lebesgue" => Capacity::LebesgueBorel,
        "possibility" => {
            let dist = cfg.require(&field("distribution"))?;
            match dist {
                "bump" => Capacity::possibility_bump(cfg.parse_required(&field("n"))?, cfg.parse_required(&field("k"))?)
                    .map_err(|e| Error::Config(format!("`{key}`: {e}")))?,
                "tabulated" => {
                    let vals = super::config::parse_float_list(&field("values"), cfg.require(&field("values"))?)?;
                    Capacity::Possibility(
                        UnimodalDistribution::tabulated(vals).map_err(|e| Error::Config(format!("`{key}`: {e}")))?,
                    )
                }
                other => return Err(Error::Config(format!("`{}`: unknown distribution `{other}`", field("distribution")))),
            }
        }
        "dirac" => Capacity::Dirac(super::config::parse_float_list(&field("at"), cfg.require(&field("at"))?)?),
        other => return Err(Error::Config(format!("`{}`: unknown capacity kind `{other}`", field("kind")))),
    };
    c.validate().map_err(|e| Error::Config(format!("`{key}`: {e}")))?;
    Ok(c)
}

fn apply_scale(cfg: &RawConfig, key: &str, c: Capacity) -> Result<Capacity> {
    let scale_key = format!("{key}.scale");
    match cfg.get(&scale_key) {
        None => Ok(c),
        Some(v) => c
            .scaled(parse_value(&scale_key, v)?)
            .map_err(|e| Error::Config(format!("`{scale_key}`: {e}"))),
    }
}

/// Capacities named by `key` (comma list of shorthands) or by a record under `key.*`.
pub fn capacities(cfg: &RawConfig, key: &str) -> Result<Vec<Capacity>> {
    let list = match cfg.get(key) {
        Some(v) => {
            let items = split_list(v);
            if items.is_empty() {
                return Err(Error::Config(format!("`{key}` is empty")));
            }
            items.iter().map(|i| capacity_shorthand(key, i)).collect::<Result<Vec<_>>>()?
        }
        None if cfg.has_prefix(key) && cfg.get(&format!("{key}.kind")).is_some() => {
            vec![capacity_record(cfg, key)?]
        }
        None => return Err(Error::Config(format!("missing required key `{key}`"))),
    };
    list.into_iter().map(|c| apply_scale(cfg, key, c)).collect()
}

pub fn capacity(cfg: &RawConfig, key: &str) -> Result<Capacity> {
    let mut all = capacities(cfg, key)?;
    if all.len() != 1 {
        return Err(Error::Config(format!("`{key}` must name exactly one capacity")));
    }
    Ok(all.remove(0))
}

pub fn capacity_or(cfg: &RawConfig, key: &str, default: Capacity) -> Result<Capacity> {
    if cfg.get(key).is_none() && !cfg.has_prefix(key) {
        return Ok(default);
    }
    capacity(cfg, key)
}
