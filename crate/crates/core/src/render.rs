//! Text, LaTeX, piecewise-formula and JSON views of a series representation.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fps::{eval_representation, Correction, ResiduePart, SeriesRepresentation};
use crate::hyper::{ClassKey, HyperTerm};
use crate::poly::Poly;
use crate::rational::{denominator_lcm, parse_rational, Rational};

/// Largest common denominator pulled out in the formula view.
const COMPACT_LCM_LIMIT: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Latex,
    Json,
    Formula,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "latex" => Ok(Format::Latex),
            "json" => Ok(Format::Json),
            "formula" => Ok(Format::Formula),
            _ => Err(Error::parse(1, 1, format!("unknown format '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenderOptions {
    format: Format,
    var: String,
    idx: String,
}

impl RenderOptions {
    /// Variable names must be distinct identifiers.
    pub fn new(format: Format, var: &str, idx: &str) -> Result<Self> {
        for name in [var, idx] {
            if !is_identifier(name) {
                return Err(Error::parse(1, 1, format!("'{name}' is not an identifier")));
            }
        }
        if var == idx {
            return Err(Error::parse(1, 1, "series and index variables must differ"));
        }
        Ok(RenderOptions {
            format,
            var: var.to_string(),
            idx: idx.to_string(),
        })
    }

    pub fn format(&self) -> Format {
        self.format
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn idx(&self) -> &str {
        &self.idx
    }
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions::new(Format::Text, "x", "n").expect("valid defaults")
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn render(rep: &SeriesRepresentation, opts: &RenderOptions) -> String {
    match opts.format {
        Format::Text => render_series(rep, opts, &TEXT),
        Format::Latex => render_series(rep, opts, &LATEX),
        Format::Formula => render_formula(rep, opts),
        Format::Json => to_json(rep),
    }
}

// ---------------------------------------------------------------- series view

struct Style {
    rational: fn(&Rational) -> String,
    power: fn(&str, &str) -> String,
    base_power: fn(&Rational, &str) -> String,
    pochhammer: fn(&Rational, i64, &str) -> String,
    mul: &'static str,
    sum: fn(&str, &str) -> String,
}

const TEXT: Style = Style {
    rational: |r| r.to_string(),
    power: |v, e| {
        if e.chars().all(|c| c.is_ascii_alphanumeric()) {
            format!("{v}^{e}")
        } else {
            format!("{v}^({e})")
        }
    },
    base_power: |b, n| {
        if b.is_integer() && b.is_positive() {
            format!("{b}^{n}")
        } else {
            format!("({b})^{n}")
        }
    },
    pochhammer: |a, e, n| match e {
        1 => format!("pochhammer({a}, {n})"),
        _ => format!("pochhammer({a}, {n})^({e})"),
    },
    mul: "*",
    sum: |body, idx| format!("Sum({body}, {idx}=0..infinity)"),
};

const LATEX: Style = Style {
    rational: |r| {
        if r.is_integer() {
            r.to_string()
        } else {
            let sign = if r.is_negative() { "-" } else { "" };
            format!("{sign}\\frac{{{}}}{{{}}}", r.numer().abs(), r.denom())
        }
    },
    power: |v, e| format!("{v}^{{{e}}}"),
    base_power: |b, n| {
        if b.is_integer() && b.is_positive() {
            format!("{b}^{{{n}}}")
        } else {
            format!("\\left({}\\right)^{{{n}}}", (LATEX.rational)(b))
        }
    },
    pochhammer: |a, e, n| match e {
        1 => format!("\\left({}\\right)_{{{n}}}", (LATEX.rational)(a)),
        _ => format!("\\left({}\\right)_{{{n}}}^{{{e}}}", (LATEX.rational)(a)),
    },
    mul: " ",
    sum: |body, idx| format!("\\sum_{{{idx}=0}}^{{\\infty}} {body}"),
};

/// Signed summands joined with ` + ` / ` - `.
fn join_signed(items: Vec<(bool, String)>) -> String {
    let mut out = String::new();
    for (i, (neg, s)) in items.into_iter().enumerate() {
        let (neg, s) = match s.strip_prefix('-') {
            Some(rest) => (!neg, rest.to_string()),
            None => (neg, s),
        };
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&s);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `|c| * factors`, returning the sign separately.
fn signed_product(c: &Rational, factors: Vec<String>, style: &Style) -> (bool, String) {
    let abs = c.abs();
    let mut parts = Vec::new();
    if !abs.is_one() || factors.is_empty() {
        parts.push((style.rational)(&abs));
    }
    parts.extend(factors);
    (c.is_negative(), parts.join(style.mul))
}

fn term_factors(h: &HyperTerm, idx: &str, style: &Style) -> (Rational, Vec<String>) {
    let mut factors = Vec::new();
    if !h.base().is_one() {
        factors.push((style.base_power)(h.base(), idx));
    }
    let mut coeff = Rational::one();
    let poly = h.poly();
    let nonzero: Vec<usize> = (0..=poly.deg())
        .filter(|&i| !poly.coeff(i).is_zero())
        .collect();
    if nonzero.len() == 1 {
        let k = nonzero[0];
        coeff = poly.coeff(k);
        match k {
            0 => {}
            1 => factors.push(idx.to_string()),
            _ => factors.push((style.power)(idx, &k.to_string())),
        }
    } else if h.base().is_one() && h.is_pochhammer_free() {
        factors.push(poly_in(poly, idx, style));
    } else {
        factors.push(format!("({})", poly_in(poly, idx, style)));
    }
    for (a, e) in h.pochhammer() {
        factors.push((style.pochhammer)(a, *e, idx));
    }
    (coeff, factors)
}

fn poly_in(p: &Poly, idx: &str, style: &Style) -> String {
    let items = (0..=p.deg())
        .rev()
        .filter(|&i| !p.coeff(i).is_zero())
        .map(|i| {
            let f = match i {
                0 => vec![],
                1 => vec![idx.to_string()],
                _ => vec![(style.power)(idx, &i.to_string())],
            };
            signed_product(&p.coeff(i), f, style)
        })
        .collect();
    join_signed(items)
}

fn section_power(var: &str, idx: &str, m: usize, j: usize, style: &Style) -> String {
    let mul = if style.mul == "*" { "*" } else { " " };
    let e = match (m, j) {
        (1, 0) => idx.to_string(),
        (1, _) => format!("{idx}+{j}"),
        (_, 0) => format!("{m}{mul}{idx}"),
        _ => format!("{m}{mul}{idx}+{j}"),
    };
    (style.power)(var, &e)
}

fn render_series(rep: &SeriesRepresentation, opts: &RenderOptions, style: &Style) -> String {
    let (var, idx) = (opts.var.as_str(), opts.idx.as_str());
    let mut items: Vec<(bool, String)> = rep
        .corrections()
        .iter()
        .map(|c| {
            let f = match c.index {
                0 => vec![],
                1 => vec![var.to_string()],
                k => vec![(style.power)(var, &k.to_string())],
            };
            signed_product(&c.delta, f, style)
        })
        .collect();
    for part in rep.parts().iter().filter(|p| !p.terms.is_empty()) {
        let summands: Vec<(bool, String)> = part
            .terms
            .iter()
            .map(|(w, h)| {
                let (c, f) = term_factors(h, idx, style);
                signed_product(&(w * c), f, style)
            })
            .collect();
        let power = section_power(var, idx, rep.m(), part.residue, style);
        let body = if summands.len() == 1 && !summands[0].0 && summands[0].1 == "1" {
            power
        } else {
            let inner = join_signed(summands);
            if style.mul == "*" {
                format!("({inner})*{power}")
            } else {
                format!("\\left({inner}\\right) {power}")
            }
        };
        items.push((false, (style.sum)(&body, idx)));
    }
    join_signed(items)
}

// --------------------------------------------------------------- formula view

fn index_expr(m: usize, j: usize, idx: &str) -> String {
    match (m, j) {
        (1, 0) => idx.to_string(),
        (1, _) => format!("{idx}+{j}"),
        (_, 0) => format!("{m}{idx}"),
        _ => format!("{m}{idx}+{j}"),
    }
}

/// Piecewise lines: explicit values below each residue's start, then one
/// line per residue.
fn render_formula(rep: &SeriesRepresentation, opts: &RenderOptions) -> String {
    let m = rep.m();
    let idx = opts.idx.as_str();
    let starts: Vec<usize> = rep
        .parts()
        .iter()
        .map(|p| {
            rep.corrections()
                .iter()
                .filter(|c| c.index % m == p.residue)
                .map(|c| c.index / m + 1)
                .fold(p.start, usize::max)
        })
        .collect();
    let prefix = starts.iter().map(|s| s * m).max().unwrap_or(0) + m;
    let values = eval_representation(rep, prefix);
    let mut lines = Vec::new();
    for (k, v) in values.iter().enumerate() {
        if k / m < starts[k % m] {
            lines.push(format!("a({k}) = {v}"));
        }
    }
    for (part, start) in rep.parts().iter().zip(&starts) {
        lines.push(format!(
            "a({}) = {} for {idx} >= {start}",
            index_expr(m, part.residue, idx),
            compact_residue(part, idx)
        ));
    }
    lines.join("\n") + "\n"
}

/// Terms grouped by base and Pochhammer factors, over a common denominator
/// when it is small.
fn compact_residue(part: &ResiduePart, idx: &str) -> String {
    let mut classes: BTreeMap<(bool, ClassKey), Poly> = BTreeMap::new();
    for (w, h) in &part.terms {
        let key = (
            !h.is_pochhammer_free(),
            (h.base().clone(), h.pochhammer().to_vec()),
        );
        let entry = classes.entry(key).or_insert_with(Poly::zero);
        *entry = &*entry + &h.poly().scale(w);
    }
    classes.retain(|_, p| !p.is_zero());
    if classes.is_empty() {
        return "0".to_string();
    }
    let lcm: BigInt = denominator_lcm(classes.values().flat_map(|p| p.coeffs()));
    let scale = match lcm.to_u64() {
        Some(l) if l > 1 && l <= COMPACT_LCM_LIMIT => Some(Rational::from_integer(lcm.clone())),
        _ => None,
    };
    let items: Vec<(bool, String)> = classes
        .into_iter()
        .map(|((_, (base, poch)), p)| {
            let p = match &scale {
                Some(s) => p.scale(s),
                None => p,
            };
            let h = HyperTerm::new(base, p, poch).expect("nonzero class");
            let (c, f) = term_factors(&h, idx, &TEXT);
            signed_product(&c, f, &TEXT)
        })
        .collect();
    let single = items.len() == 1;
    let body = join_signed(items);
    match scale {
        Some(_) if single && !body.contains(' ') => format!("{body}/{lcm}"),
        Some(_) => format!("({body})/{lcm}"),
        None => body,
    }
}

// ----------------------------------------------------------------------- json

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonRep {
    m: usize,
    parts: Vec<JsonPart>,
    corrections: Vec<JsonCorrection>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonPart {
    residue: usize,
    start: usize,
    terms: Vec<JsonTerm>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonTerm {
    weight: String,
    base: String,
    poly: Vec<String>,
    pochhammer: Vec<JsonPochhammer>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonPochhammer {
    alpha: String,
    exp: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonCorrection {
    index: usize,
    delta: String,
}

pub fn to_json(rep: &SeriesRepresentation) -> String {
    let json = JsonRep {
        m: rep.m(),
        parts: rep
            .parts()
            .iter()
            .map(|p| JsonPart {
                residue: p.residue,
                start: p.start,
                terms: p
                    .terms
                    .iter()
                    .map(|(w, h)| JsonTerm {
                        weight: w.to_string(),
                        base: h.base().to_string(),
                        poly: h.poly().coeffs().iter().map(|c| c.to_string()).collect(),
                        pochhammer: h
                            .pochhammer()
                            .iter()
                            .map(|(a, e)| JsonPochhammer {
                                alpha: a.to_string(),
                                exp: *e,
                            })
                            .collect(),
                    })
                    .collect(),
            })
            .collect(),
        corrections: rep
            .corrections()
            .iter()
            .map(|c| JsonCorrection {
                index: c.index,
                delta: c.delta.to_string(),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&json).expect("plain data serializes");
    s.push('\n');
    s
}

/// Parse and validate the JSON produced by [`to_json`].
pub fn from_json(input: &str) -> Result<SeriesRepresentation> {
    let json: JsonRep = serde_json::from_str(input)
        .map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))?;
    let rat = |s: &str| {
        parse_rational(s)
            .ok_or_else(|| Error::InvalidRepresentation(format!("'{s}' is not a rational")))
    };
    let mut parts = Vec::with_capacity(json.parts.len());
    for p in json.parts {
        let mut terms = Vec::with_capacity(p.terms.len());
        for t in p.terms {
            let coeffs = t.poly.iter().map(|c| rat(c)).collect::<Result<Vec<_>>>()?;
            let poch = t
                .pochhammer
                .iter()
                .map(|q| Ok((rat(&q.alpha)?, q.exp)))
                .collect::<Result<Vec<_>>>()?;
            let h = HyperTerm::new(rat(&t.base)?, Poly::from_coeffs(coeffs), poch)?;
            terms.push((rat(&t.weight)?, h));
        }
        parts.push(ResiduePart {
            residue: p.residue,
            start: p.start,
            terms,
        });
    }
    let corrections = json
        .corrections
        .iter()
        .map(|c| {
            Ok(Correction {
                index: c.index,
                delta: rat(&c.delta)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    SeriesRepresentation::new(json.m, parts, corrections)
}

impl SeriesRepresentation {
    /// Convenience for [`render`] with the text format.
    pub fn to_text(&self) -> String {
        render(self, &RenderOptions::default())
    }
}
