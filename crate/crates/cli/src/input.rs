//! Parsing of initial configurations, bounds, size functions and symbolic
//! vectors from flags or a JSON config file.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use serde::Deserialize;
use ulam_core::algebra::{SymbolTable, SymbolicVector};
use ulam_core::{Bound, InitialConfig, LatticePoint, SizeFunction, UlamSet};

/// Splits `"(1,0),(2,0)"` into `[["1","0"],["2","0"]]`. Input without
/// parentheses, such as `"1,2,5"`, is read as one-element tuples.
pub fn split_tuples(s: &str) -> Result<Vec<Vec<String>>> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        bail!("empty initial configuration");
    }
    if !s.contains('(') {
        return Ok(s.split(',').map(|x| vec![x.to_string()]).collect());
    }
    let mut out = Vec::new();
    let mut rest = s.as_str();
    loop {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| anyhow!("expected `(` at `{rest}`"))?;
        let close = body.find(')').ok_or_else(|| anyhow!("unclosed `(` in `{s}`"))?;
        out.push(body[..close].split(',').map(str::to_string).collect());
        rest = &body[close + 1..];
        if rest.is_empty() {
            return Ok(out);
        }
        rest = rest
            .strip_prefix(',')
            .ok_or_else(|| anyhow!("expected `,` between vectors at `{rest}`"))?;
    }
}

/// Integer tuples; negative entries are kept so that validation can name them.
pub fn parse_int_tuples(s: &str) -> Result<Vec<Vec<i64>>> {
    split_tuples(s)?
        .into_iter()
        .map(|t| {
            t.iter()
                .map(|x| x.parse::<i64>().with_context(|| format!("`{x}` is not an integer")))
                .collect()
        })
        .collect()
}

/// Comma-separated unsigned integers, e.g. a box `"60,2000"`.
pub fn parse_u64_list(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|x| x.trim().parse::<u64>().with_context(|| format!("`{x}` is not a nonnegative integer")))
        .collect()
}

/// Parses `m,n`.
pub fn parse_pair(s: &str) -> Result<(u64, u64)> {
    match parse_u64_list(s)?.as_slice() {
        &[a, b] => Ok((a, b)),
        _ => bail!("expected two integers `m,n`, got `{s}`"),
    }
}

/// `coordinate-sum`, `euclidean-norm-squared` (or `euclidean`), or
/// `weighted:w1,w2,...` with positive rational weights.
pub fn parse_size(s: &str) -> Result<SizeFunction> {
    match s.trim() {
        "coordinate-sum" | "sum" => Ok(SizeFunction::CoordinateSum),
        "euclidean-norm-squared" | "euclidean" => Ok(SizeFunction::EuclideanSquared),
        other => {
            let w = other
                .strip_prefix("weighted:")
                .ok_or_else(|| anyhow!("unknown size function `{other}`"))?;
            let weights = w
                .split(',')
                .map(|x| {
                    let x = x.trim();
                    let r = match x.split_once('/') {
                        Some((a, b)) => Ratio::new(a.parse::<u64>()?, b.parse::<u64>()?),
                        None => Ratio::from_integer(x.parse::<u64>()?),
                    };
                    Ok(r)
                })
                .collect::<std::result::Result<Vec<_>, std::num::ParseIntError>>()
                .with_context(|| format!("bad weights `{w}`"))?;
            Ok(SizeFunction::WeightedSum(weights))
        }
    }
}

/// The `--config` JSON file.
#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub dim: Option<usize>,
    pub initials: Option<Vec<Vec<i64>>>,
    pub bound: Option<Bound>,
    pub size: Option<String>,
    pub modulus: Option<u64>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }
}

/// Everything needed to produce one set, merged from flags and file.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub dim: usize,
    pub initials: Vec<Vec<i64>>,
    pub bound: Option<Bound>,
    pub size: SizeFunction,
    pub modulus: Option<u64>,
}

impl RunConfig {
    /// Flag values take precedence over the file.
    pub fn resolve(
        file: Option<&Path>,
        init: Option<&str>,
        dim: Option<usize>,
        bound: Option<Bound>,
        size: Option<&str>,
        modulus: Option<u64>,
    ) -> Result<RunConfig> {
        let file = match file {
            Some(p) => ConfigFile::load(p)?,
            None => ConfigFile::default(),
        };
        let initials = match init {
            Some(s) => parse_int_tuples(s)?,
            None => file.initials.ok_or_else(|| anyhow!("no initial configuration: use --init or --config"))?,
        };
        let inferred = initials.first().map_or(0, Vec::len);
        let dim = dim.or(file.dim).unwrap_or(inferred);
        let size = match size.or(file.size.as_deref()) {
            Some(s) => parse_size(s)?,
            None => SizeFunction::CoordinateSum,
        };
        Ok(RunConfig { dim, initials, bound: bound.or(file.bound), size, modulus: modulus.or(file.modulus) })
    }

    pub fn lattice_config(&self) -> Result<InitialConfig> {
        Ok(ulam_core::validate_config(&self.initials, self.dim)?)
    }

    pub fn require_bound(&self) -> Result<&Bound> {
        self.bound.as_ref().ok_or_else(|| anyhow!("no bound: use --box, --level or a config file"))
    }
}

/// Builds a bound from `--box` / `--level`.
pub fn bound_from_flags(boxed: Option<&str>, level: Option<u64>) -> Result<Option<Bound>> {
    match (boxed, level) {
        (Some(_), Some(_)) => bail!("--box and --level are mutually exclusive"),
        (Some(b), None) => Ok(Some(Bound::Box(parse_u64_list(b)?))),
        (None, Some(l)) => Ok(Some(Bound::Level(l))),
        (None, None) => Ok(None),
    }
}

/// Reads a set exported as CSV. The header fixes the dimension; the
/// config, bound and size function come from the caller.
pub fn read_set_csv(path: &Path, config: InitialConfig, size: SizeFunction, bound: Bound) -> Result<UlamSet> {
    let mut rdr = csv::Reader::from_path(path).with_context(|| format!("reading {}", path.display()))?;
    let width = rdr.headers()?.len();
    if width != config.dim() {
        bail!("{} has {width} columns but the config is {}-dimensional", path.display(), config.dim());
    }
    let mut points = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let coords = rec
            .iter()
            .map(|x| x.trim().parse::<u64>().with_context(|| format!("bad coordinate `{x}`")))
            .collect::<Result<Vec<_>>>()?;
        points.push(LatticePoint::new(coords));
    }
    Ok(UlamSet::from_points(config, size, bound, points)?)
}

/// Parses `name=value,name=value` into a symbol table.
pub fn parse_symbols(s: Option<&str>) -> Result<SymbolTable> {
    let mut t = SymbolTable::new();
    let Some(s) = s else { return Ok(t) };
    for item in s.split(',').filter(|x| !x.trim().is_empty()) {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| anyhow!("symbol `{item}` needs a value, as in `pi=3.14159`"))?;
        let v: f64 = value.trim().parse().with_context(|| format!("bad value for symbol `{name}`"))?;
        t.declare(name, v)?;
    }
    Ok(t)
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let r = match s.split_once('/') {
        Some((a, b)) => {
            let d: BigInt = b.parse().with_context(|| format!("bad denominator in `{s}`"))?;
            if d == BigInt::from(0) {
                bail!("zero denominator in `{s}`");
            }
            BigRational::new(a.parse().with_context(|| format!("bad numerator in `{s}`"))?, d)
        }
        None => BigRational::from_integer(s.parse().with_context(|| format!("`{s}` is not a rational"))?),
    };
    Ok(r)
}

/// One coordinate: a sum of terms `q`, `q*name` or `name`, each optionally
/// signed, with `q` an integer or `a/b`.
fn parse_coord(s: &str, symbols: &SymbolTable) -> Result<Vec<BigRational>> {
    let mut coeffs = vec![BigRational::from_integer(0.into()); symbols.len() + 1];
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, c) in s.char_indices() {
        if (c == '+' || c == '-') && i > start {
            terms.push(&s[start..i]);
            start = i;
        }
    }
    terms.push(&s[start..]);
    for term in terms {
        let (neg, body) = match term.as_bytes().first() {
            Some(b'-') => (true, &term[1..]),
            Some(b'+') => (false, &term[1..]),
            _ => (false, term),
        };
        if body.is_empty() {
            bail!("empty term in `{s}`");
        }
        let (q, idx) = match body.split_once('*') {
            Some((q, name)) => (parse_rational(q)?, lookup(name, symbols)?),
            None if body.starts_with(|c: char| c.is_ascii_digit()) => (parse_rational(body)?, 0),
            None => (BigRational::from_integer(1.into()), lookup(body, symbols)?),
        };
        coeffs[idx] += if neg { -q } else { q };
    }
    Ok(coeffs)
}

fn lookup(name: &str, symbols: &SymbolTable) -> Result<usize> {
    symbols
        .index(name)
        .ok_or_else(|| anyhow!("undeclared symbol `{name}`; declare it with --symbols {name}=<value>"))
}

/// Vectors in symbolic notation, e.g. `"(1,0),(1,sqrt2),(1/2+pi,3)"`.
pub fn parse_symbolic(s: &str, symbols: &SymbolTable) -> Result<Vec<SymbolicVector>> {
    split_tuples(s)?
        .into_iter()
        .map(|t| Ok(SymbolicVector::new(t.iter().map(|c| parse_coord(c, symbols)).collect::<Result<_>>()?)))
        .collect()
}
