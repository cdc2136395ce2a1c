//! JSON form of a catalog.
//!
//! ```json
//! { "sporadics": [ { "name": "G_2", "degrees": [4, 12],
//!                    "primes": { "modulus": 2, "residues": [1] } } ],
//!   "families":  [ { "name": "SU(n)", "constraints": "n>=2",
//!                    "degreeFormula": "4, 6, ..., 2n", "primeCondition": "all p" } ] }
//! ```
//!
//! Parameter-free rows (including `S^1` and the exceptional Lie groups) are
//! listed under `sporadics`. Family names select the degree formula, which
//! must match the family's formula text.

use serde::{Deserialize, Serialize};

use super::{
    Catalog, Constraint, DegreeMultiset, FamilyKind, FamilyTemplate, FixedEntry, Param, PrimeCondition, Template,
};
use crate::error::{Error, Result};
use crate::residue::ResidueSet;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogJson {
    sporadics: Vec<FixedJson>,
    families: Vec<FamilyJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FixedJson {
    name: String,
    degrees: Vec<u32>,
    primes: serde_json::Value,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct FamilyJson {
    name: String,
    constraints: String,
    degree_formula: String,
    prime_condition: String,
}

pub(super) fn export(cat: &Catalog) -> String {
    let mut doc = CatalogJson { sporadics: Vec::new(), families: Vec::new() };
    for t in cat.templates() {
        match t {
            Template::Fixed(e) => doc.sporadics.push(FixedJson {
                name: e.name.clone(),
                degrees: e.degrees.degrees().to_vec(),
                primes: serde_json::to_value(&e.primes).expect("residue sets serialize"),
            }),
            Template::Family(f) => doc.families.push(FamilyJson {
                name: f.kind.pattern().to_string(),
                constraints: f.constraint_text(),
                degree_formula: f.kind.degree_formula().to_string(),
                prime_condition: f.primes.to_string(),
            }),
        }
    }
    serde_json::to_string_pretty(&doc).expect("catalog serializes")
}

pub(super) fn import(text: &str) -> Result<Catalog> {
    let doc: CatalogJson = serde_json::from_str(text)
        .map_err(|e| Error::CatalogParse { entry: "<document>".to_string(), reason: e.to_string() })?;
    let builtin = Catalog::builtin();
    let rank_of = |label: &str| builtin.templates().iter().position(|t| t.label() == label);

    let mut ranked: Vec<(usize, Template)> = Vec::new();
    let unknown_base = builtin.templates().len();
    for (i, e) in doc.sporadics.into_iter().enumerate() {
        let t = Template::Fixed(parse_fixed(e)?);
        ranked.push((rank_of(t.label()).unwrap_or(unknown_base + i), t));
    }
    let family_base = unknown_base + ranked.len();
    for (i, f) in doc.families.into_iter().enumerate() {
        let t = Template::Family(parse_family(f)?);
        ranked.push((rank_of(t.label()).unwrap_or(family_base + i), t));
    }
    ranked.sort_by_key(|(rank, _)| *rank);
    Ok(Catalog::from_templates(ranked.into_iter().map(|(_, t)| t).collect()))
}

fn entry_error(entry: &str, reason: impl Into<String>) -> Error {
    Error::CatalogParse { entry: entry.to_string(), reason: reason.into() }
}

fn parse_fixed(e: FixedJson) -> Result<FixedEntry> {
    if e.name.trim().is_empty() {
        return Err(entry_error("<unnamed>", "empty name"));
    }
    if e.degrees.is_empty() {
        return Err(entry_error(&e.name, "empty degree list"));
    }
    let degrees =
        DegreeMultiset::new(e.degrees.iter().copied()).map_err(|err| entry_error(&e.name, err.to_string()))?;
    let primes: ResidueSet = serde_json::from_value(e.primes).map_err(|err| entry_error(&e.name, err.to_string()))?;
    Ok(FixedEntry { name: e.name, degrees, primes: primes.normalize() })
}

fn squash(s: &str) -> String {
    s.replace('…', "...").chars().filter(|c| !c.is_whitespace()).collect()
}

fn parse_family(f: FamilyJson) -> Result<FamilyTemplate> {
    let kind = FamilyKind::ALL
        .into_iter()
        .find(|k| squash(k.pattern()) == squash(&f.name))
        .ok_or_else(|| entry_error(&f.name, "unknown family"))?;
    if squash(&f.degree_formula) != squash(kind.degree_formula()) {
        return Err(entry_error(
            &f.name,
            format!("degree formula `{}` does not match `{}`", f.degree_formula, kind.degree_formula()),
        ));
    }
    let constraints = parse_constraints(kind, &f.constraints).map_err(|reason| entry_error(&f.name, reason))?;
    let primes = parse_prime_condition(kind, &f.prime_condition).map_err(|reason| entry_error(&f.name, reason))?;
    Ok(FamilyTemplate { kind, constraints, primes })
}

fn parse_param(kind: FamilyKind, c: char) -> std::result::Result<Param, String> {
    let p = match c {
        'm' => Param::M,
        'r' => Param::R,
        'n' => Param::N,
        _ => return Err(format!("unknown parameter `{c}`")),
    };
    if kind.params_used().contains(&p) {
        Ok(p)
    } else {
        Err(format!("{} has no parameter `{c}`", kind.pattern()))
    }
}

fn parse_constraints(kind: FamilyKind, text: &str) -> std::result::Result<Vec<Constraint>, String> {
    let text = squash(text);
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|atom| {
            if atom == "r|m" {
                parse_param(kind, 'r')?;
                return Ok(Constraint::RDividesM);
            }
            let mut chars = atom.chars();
            let param = parse_param(kind, chars.next().ok_or("empty constraint")?)?;
            let rest = chars.as_str();
            let (op, value) = ["≥", ">=", "≤", "<=", "≠", "!="]
                .iter()
                .find_map(|op| rest.strip_prefix(op).map(|v| (*op, v)))
                .ok_or_else(|| format!("malformed constraint `{atom}`"))?;
            let value: u32 = value.parse().map_err(|_| format!("malformed constraint `{atom}`"))?;
            Ok(match op {
                "≥" | ">=" => Constraint::AtLeast(param, value),
                "≤" | "<=" => Constraint::AtMost(param, value),
                _ => Constraint::NotEqual(param, value),
            })
        })
        .collect()
}

fn parse_prime_condition(kind: FamilyKind, text: &str) -> std::result::Result<PrimeCondition, String> {
    let t = squash(text).replace('≡', "=").replace("(mod", "mod").replace(')', "");
    let has_m = kind.params_used().contains(&Param::M);
    match t.as_str() {
        "allp" => Ok(PrimeCondition::All),
        "p=1modm" if has_m => Ok(PrimeCondition::OneModM),
        "p=+-1modm" | "p=±1modm" if has_m => Ok(PrimeCondition::PlusMinusOneModM),
        _ => {
            let k = t
                .strip_prefix("p>=")
                .or_else(|| t.strip_prefix("p≥"))
                .and_then(|k| k.parse::<u64>().ok())
                .ok_or_else(|| format!("malformed prime condition `{text}`"))?;
            if k < 2 {
                return Err(format!("prime bound {k} must be at least 2"));
            }
            ResidueSet::from_min_prime(k).map_err(|e| e.to_string())?;
            Ok(PrimeCondition::AtLeast(k))
        }
    }
}
