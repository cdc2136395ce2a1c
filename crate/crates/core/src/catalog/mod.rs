//! The tables of realizable building blocks.
//!
//! Each row is a [`Template`]: either a fixed entry (a single group with a
//! fixed degree multiset, like `G_2` or the sporadic `G_24`) or a parametric
//! family (`SU(n)`, `G(m,r,n)`, ...). Instantiating a template at concrete
//! parameters yields an [`EntryInstance`] carrying its degrees and the set of
//! primes at which it occurs. Degrees use the cohomological grading, twice
//! the classical invariant-theory degrees.

mod degrees;
mod schema;

use std::cmp::Ordering;
use std::fmt;

pub use degrees::DegreeMultiset;

use crate::error::{Error, Result};
use crate::residue::ResidueSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    SpecialUnitary,
    Symplectic,
    /// `Spin(2n)`; `Spin(2n+1)` is omitted since its mod-p cohomology at odd
    /// primes agrees with that of `Sp(n)`.
    SpinEven,
    /// The imprimitive reflection groups `G(m, r, n)`.
    Imprimitive,
    /// `D_{2m}`, the dihedral group of order `2m`.
    Dihedral,
    /// `C_m`, cyclic of order `m` acting on one complex dimension.
    Cyclic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Param {
    M,
    R,
    N,
}

impl Param {
    fn symbol(self) -> char {
        match self {
            Param::M => 'm',
            Param::R => 'r',
            Param::N => 'n',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Constraint {
    AtLeast(Param, u32),
    AtMost(Param, u32),
    NotEqual(Param, u32),
    /// `r | m`
    RDividesM,
}

/// The "occur for" column of a family row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PrimeCondition {
    All,
    AtLeast(u64),
    OneModM,
    PlusMinusOneModM,
}

/// Concrete parameters of an instance. Ordered field-wise so instance keys
/// are totally ordered.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Params {
    None,
    Rank(u32),
    Order(u32),
    Imprimitive { m: u32, r: u32, n: u32 },
}

impl Params {
    fn get(&self, p: Param) -> Option<u32> {
        match (*self, p) {
            (Params::Rank(n), Param::N) => Some(n),
            (Params::Order(m), Param::M) => Some(m),
            (Params::Imprimitive { m, .. }, Param::M) => Some(m),
            (Params::Imprimitive { r, .. }, Param::R) => Some(r),
            (Params::Imprimitive { n, .. }, Param::N) => Some(n),
            _ => None,
        }
    }
}

impl Constraint {
    fn holds(&self, params: &Params) -> bool {
        let val = |p: Param| params.get(p).unwrap_or(0);
        match *self {
            Constraint::AtLeast(p, k) => val(p) >= k,
            Constraint::AtMost(p, k) => val(p) <= k,
            Constraint::NotEqual(p, k) => val(p) != k,
            Constraint::RDividesM => {
                let r = val(Param::R);
                r != 0 && val(Param::M) % r == 0
            }
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Constraint::AtLeast(p, k) => write!(f, "{}>={k}", p.symbol()),
            Constraint::AtMost(p, k) => write!(f, "{}<={k}", p.symbol()),
            Constraint::NotEqual(p, k) => write!(f, "{}!={k}", p.symbol()),
            Constraint::RDividesM => write!(f, "r|m"),
        }
    }
}

impl fmt::Display for PrimeCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PrimeCondition::All => write!(f, "all p"),
            PrimeCondition::AtLeast(k) => write!(f, "p>={k}"),
            PrimeCondition::OneModM => write!(f, "p=1 mod m"),
            PrimeCondition::PlusMinusOneModM => write!(f, "p=+-1 mod m"),
        }
    }
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 6] = [
        FamilyKind::SpecialUnitary,
        FamilyKind::Symplectic,
        FamilyKind::SpinEven,
        FamilyKind::Imprimitive,
        FamilyKind::Dihedral,
        FamilyKind::Cyclic,
    ];

    pub fn pattern(self) -> &'static str {
        match self {
            FamilyKind::SpecialUnitary => "SU(n)",
            FamilyKind::Symplectic => "Sp(n)",
            FamilyKind::SpinEven => "Spin(2n)",
            FamilyKind::Imprimitive => "G(m,r,n)",
            FamilyKind::Dihedral => "D_2m",
            FamilyKind::Cyclic => "C_m",
        }
    }

    pub fn degree_formula(self) -> &'static str {
        match self {
            FamilyKind::SpecialUnitary => "4, 6, ..., 2n",
            FamilyKind::Symplectic => "4, 8, ..., 4n",
            FamilyKind::SpinEven => "4, 8, ..., 4(n-1), 2n",
            FamilyKind::Imprimitive => "2m, 4m, ..., 2(n-1)m, 2mn/r",
            FamilyKind::Dihedral => "4, 2m",
            FamilyKind::Cyclic => "2m",
        }
    }

    fn params_used(self) -> &'static [Param] {
        match self {
            FamilyKind::SpecialUnitary | FamilyKind::Symplectic | FamilyKind::SpinEven => &[Param::N],
            FamilyKind::Dihedral | FamilyKind::Cyclic => &[Param::M],
            FamilyKind::Imprimitive => &[Param::M, Param::R, Param::N],
        }
    }

    fn accepts(self, params: &Params) -> bool {
        matches!(
            (self, params),
            (FamilyKind::SpecialUnitary | FamilyKind::Symplectic | FamilyKind::SpinEven, Params::Rank(n)) if *n >= 1
        ) || matches!(
            (self, params),
            (FamilyKind::Dihedral | FamilyKind::Cyclic, Params::Order(m)) if *m >= 1
        ) || matches!(
            (self, params),
            (FamilyKind::Imprimitive, Params::Imprimitive { m, r, n }) if *m >= 1 && *n >= 1 && *r >= 1 && m % r == 0
        )
    }

    /// Degrees at valid parameters, unsorted.
    fn degrees(self, params: &Params) -> Vec<u32> {
        match (self, *params) {
            (FamilyKind::SpecialUnitary, Params::Rank(n)) => (2..=n).map(|k| 2 * k).collect(),
            (FamilyKind::Symplectic, Params::Rank(n)) => (1..=n).map(|k| 4 * k).collect(),
            (FamilyKind::SpinEven, Params::Rank(n)) => {
                let mut v: Vec<u32> = (1..n).map(|k| 4 * k).collect();
                v.push(2 * n);
                v
            }
            (FamilyKind::Imprimitive, Params::Imprimitive { m, r, n }) => {
                let mut v: Vec<u32> = (1..n).map(|k| 2 * k * m).collect();
                v.push(2 * m * n / r);
                v
            }
            (FamilyKind::Dihedral, Params::Order(m)) => vec![4, 2 * m],
            (FamilyKind::Cyclic, Params::Order(m)) => vec![2 * m],
            _ => unreachable!("parameters checked by accepts()"),
        }
    }

    fn display(self, params: &Params) -> String {
        match (self, *params) {
            (FamilyKind::SpecialUnitary, Params::Rank(n)) => format!("SU({n})"),
            (FamilyKind::Symplectic, Params::Rank(n)) => format!("Sp({n})"),
            (FamilyKind::SpinEven, Params::Rank(n)) => format!("Spin({})", 2 * n),
            (FamilyKind::Imprimitive, Params::Imprimitive { m, r, n }) => format!("G({m},{r},{n})"),
            (FamilyKind::Dihedral, Params::Order(m)) => format!("D_{}", 2 * m),
            (FamilyKind::Cyclic, Params::Order(m)) => format!("C_{m}"),
            _ => unreachable!("parameters checked by accepts()"),
        }
    }

    /// Every parameter choice whose degrees could fit inside a multiset with
    /// largest degree `max` and `count` elements.
    fn parameter_sweep(self, max: u32, count: u32) -> Vec<Params> {
        let half = max / 2;
        match self {
            FamilyKind::SpecialUnitary | FamilyKind::SpinEven => (1..=half).map(Params::Rank).collect(),
            FamilyKind::Symplectic => (1..=max / 4).map(Params::Rank).collect(),
            FamilyKind::Dihedral | FamilyKind::Cyclic => (1..=half).map(Params::Order).collect(),
            FamilyKind::Imprimitive => {
                let mut out = Vec::new();
                for m in 1..=half {
                    for n in 1..=count {
                        for r in (1..=m).filter(|r| m % r == 0) {
                            out.push(Params::Imprimitive { m, r, n });
                        }
                    }
                }
                out
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedEntry {
    pub name: String,
    pub degrees: DegreeMultiset,
    pub primes: ResidueSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyTemplate {
    pub kind: FamilyKind,
    pub constraints: Vec<Constraint>,
    pub primes: PrimeCondition,
}

impl FamilyTemplate {
    fn prime_set(&self, params: &Params) -> Result<ResidueSet> {
        let m = params.get(Param::M).unwrap_or(1) as i64;
        match self.primes {
            PrimeCondition::All => Ok(ResidueSet::all()),
            PrimeCondition::AtLeast(k) => ResidueSet::from_min_prime(k),
            PrimeCondition::OneModM => ResidueSet::class(1, m as u64),
            PrimeCondition::PlusMinusOneModM => Ok(ResidueSet::new(m as u64, [1, -1])?.normalize()),
        }
    }

    pub fn constraint_text(&self) -> String {
        let parts: Vec<String> = self.constraints.iter().map(Constraint::to_string).collect();
        parts.join(", ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Template {
    Fixed(FixedEntry),
    Family(FamilyTemplate),
}

impl Template {
    pub fn label(&self) -> &str {
        match self {
            Template::Fixed(e) => &e.name,
            Template::Family(f) => f.kind.pattern(),
        }
    }
}

/// One concrete row of the tables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EntryInstance {
    template: usize,
    params: Params,
    name: String,
    degrees: DegreeMultiset,
    primes: ResidueSet,
}

impl EntryInstance {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn params(&self) -> Params {
        self.params
    }

    /// Index of the template row this instance comes from.
    pub fn template(&self) -> usize {
        self.template
    }

    pub fn degrees(&self) -> &DegreeMultiset {
        &self.degrees
    }

    /// Primes at which this entry occurs, in canonical form.
    pub fn primes(&self) -> &ResidueSet {
        &self.primes
    }

    /// Table order first, then parameters.
    pub fn key(&self) -> (usize, Params) {
        (self.template, self.params)
    }
}

impl Ord for EntryInstance {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key()).then_with(|| self.name.cmp(&other.name))
    }
}

impl PartialOrd for EntryInstance {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for EntryInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

pub fn degrees_of(inst: &EntryInstance) -> &DegreeMultiset {
    inst.degrees()
}

pub fn prime_set_of(inst: &EntryInstance) -> &ResidueSet {
    inst.primes()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalog {
    templates: Vec<Template>,
}

fn fixed(name: &str, degrees: &[u32], primes: ResidueSet) -> Template {
    Template::Fixed(FixedEntry {
        name: name.to_string(),
        degrees: DegreeMultiset::new(degrees.iter().copied()).expect("builtin degrees are even"),
        primes: primes.normalize(),
    })
}

fn family(kind: FamilyKind, constraints: &[Constraint], primes: PrimeCondition) -> Template {
    Template::Family(FamilyTemplate { kind, constraints: constraints.to_vec(), primes })
}

fn classes(modulus: u64, residues: &[i64]) -> ResidueSet {
    ResidueSet::new(modulus, residues.iter().copied()).expect("builtin modulus is positive").normalize()
}

fn at_least(k: u64) -> ResidueSet {
    ResidueSet::from_min_prime(k).expect("builtin bound is small")
}

impl Catalog {
    /// The fixed tables: compact Lie groups, the exotic families, and the
    /// sporadic exotic reflection groups.
    pub fn builtin() -> Self {
        use Constraint::*;
        use Param::*;
        let g24 = classes(7, &[1, 2, 4]).exclude_prime(2).expect("2 is prime");
        let templates = vec![
            fixed("S^1", &[2], ResidueSet::all()),
            family(FamilyKind::SpecialUnitary, &[AtLeast(N, 2)], PrimeCondition::All),
            family(FamilyKind::Symplectic, &[AtLeast(N, 1)], PrimeCondition::All),
            family(FamilyKind::SpinEven, &[AtLeast(N, 3)], PrimeCondition::AtLeast(3)),
            fixed("G_2", &[4, 12], at_least(3)),
            fixed("F_4", &[4, 12, 16, 24], at_least(5)),
            fixed("E_6", &[4, 10, 12, 16, 18, 24], at_least(5)),
            fixed("E_7", &[4, 12, 16, 20, 24, 28, 36], at_least(5)),
            fixed("E_8", &[4, 16, 24, 28, 36, 40, 48, 60], at_least(7)),
            family(FamilyKind::Imprimitive, &[AtLeast(N, 2), AtLeast(M, 3), RDividesM], PrimeCondition::OneModM),
            family(FamilyKind::Dihedral, &[AtLeast(M, 5), NotEqual(M, 6)], PrimeCondition::PlusMinusOneModM),
            family(FamilyKind::Cyclic, &[AtLeast(M, 3)], PrimeCondition::OneModM),
            fixed("G_8", &[16, 24], classes(4, &[1])),
            fixed("G_9", &[16, 48], classes(8, &[1])),
            fixed("G_12", &[12, 16], classes(8, &[1, 3])),
            fixed("G_14", &[12, 48], classes(24, &[1, 19])),
            fixed("G_16", &[40, 60], classes(5, &[1])),
            fixed("G_17", &[40, 120], classes(20, &[1])),
            fixed("G_20", &[24, 60], classes(15, &[1, 4])),
            fixed("G_21", &[24, 120], classes(60, &[1, 49])),
            fixed("G_22", &[24, 40], classes(20, &[1, 9])),
            fixed("G_23", &[4, 12, 20], classes(5, &[1, 4])),
            fixed("G_24", &[8, 12, 28], g24),
            fixed("G_29", &[8, 16, 24, 40], classes(4, &[1])),
            fixed("G_30", &[4, 24, 40, 60], classes(5, &[1, 4])),
            fixed("G_31", &[16, 24, 40, 48], classes(4, &[1])),
            fixed("G_32", &[24, 36, 48, 60], classes(3, &[1])),
            fixed("G_33", &[8, 12, 20, 24, 36], classes(3, &[1])),
            fixed("G_34", &[12, 24, 36, 48, 60, 84], classes(3, &[1])),
        ];
        Self { templates }
    }

    pub fn from_templates(templates: Vec<Template>) -> Self {
        Self { templates }
    }

    pub fn templates(&self) -> &[Template] {
        &self.templates
    }

    /// Evaluates template `index` at `params`.
    pub fn instantiate(&self, index: usize, params: Params) -> Result<EntryInstance> {
        let template = self
            .templates
            .get(index)
            .ok_or_else(|| Error::InvalidParameters(format!("no template at index {index}")))?;
        match template {
            Template::Fixed(e) => {
                if params != Params::None {
                    return Err(Error::InvalidParameters(format!("{} takes no parameters", e.name)));
                }
                Ok(EntryInstance {
                    template: index,
                    params,
                    name: e.name.clone(),
                    degrees: e.degrees.clone(),
                    primes: e.primes.clone(),
                })
            }
            Template::Family(f) => {
                if !f.kind.accepts(&params) {
                    return Err(Error::InvalidParameters(format!(
                        "{params:?} is not a parameter choice for {}",
                        f.kind.pattern()
                    )));
                }
                if let Some(c) = f.constraints.iter().find(|c| !c.holds(&params)) {
                    return Err(Error::InvalidParameters(format!(
                        "{} violates {c} for {}",
                        f.kind.display(&params),
                        f.kind.pattern()
                    )));
                }
                Ok(EntryInstance {
                    template: index,
                    params,
                    name: f.kind.display(&params),
                    degrees: DegreeMultiset::new(f.kind.degrees(&params))?,
                    primes: f.prime_set(&params)?,
                })
            }
        }
    }

    /// Every instance whose degrees form a sub-multiset of `target`, in key
    /// order. A given degree multiset occurs only finitely often in the
    /// tables, so this list is finite.
    pub fn candidates(&self, target: &DegreeMultiset) -> Vec<EntryInstance> {
        let Some(max) = target.max() else {
            return Vec::new();
        };
        let mut out = Vec::new();
        for (index, template) in self.templates.iter().enumerate() {
            match template {
                Template::Fixed(e) => {
                    if e.degrees.is_submultiset_of(target) {
                        out.push(self.instantiate(index, Params::None).expect("fixed entry"));
                    }
                }
                Template::Family(f) => {
                    for params in f.kind.parameter_sweep(max, target.len() as u32) {
                        if !f.constraints.iter().all(|c| c.holds(&params)) {
                            continue;
                        }
                        let mut degrees = f.kind.degrees(&params);
                        degrees.sort_unstable();
                        let degrees = DegreeMultiset::from_sorted_unchecked(degrees);
                        if !degrees.is_submultiset_of(target) {
                            continue;
                        }
                        // prime sets of swept parameters are small; a failure
                        // here can only come from an imported "p>=k" with huge k
                        if let Ok(inst) = self.instantiate(index, params) {
                            out.push(inst);
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Resolves a display name such as `SU(5)`, `Spin(8)`, `G(6,3,2)`,
    /// `D_10`, `C_6`, `G_2` or `G_24`.
    pub fn lookup(&self, name: &str) -> Option<EntryInstance> {
        let name: String = name.chars().filter(|c| !c.is_whitespace()).collect();
        let squash = |s: &str| s.replace(['_', '^'], "");
        for (index, t) in self.templates.iter().enumerate() {
            if let Template::Fixed(e) = t {
                if e.name == name || squash(&e.name) == squash(&name) {
                    return self.instantiate(index, Params::None).ok();
                }
            }
        }
        let (kind, params) = parse_family_name(&name)?;
        self.templates.iter().enumerate().find_map(|(index, t)| match t {
            Template::Family(f) if f.kind == kind => self.instantiate(index, params).ok(),
            _ => None,
        })
    }

    pub fn to_json(&self) -> String {
        schema::export(self)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        schema::import(text)
    }
}

fn parse_uint(s: &str) -> Option<u32> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

fn parse_family_name(name: &str) -> Option<(FamilyKind, Params)> {
    let inner = |prefix: &str| name.strip_prefix(prefix).and_then(|s| s.strip_suffix(')'));
    if let Some(n) = inner("SU(") {
        return Some((FamilyKind::SpecialUnitary, Params::Rank(parse_uint(n)?)));
    }
    if let Some(n) = inner("Sp(") {
        return Some((FamilyKind::Symplectic, Params::Rank(parse_uint(n)?)));
    }
    if let Some(k) = inner("Spin(") {
        let k = parse_uint(k)?;
        return (k % 2 == 0).then_some((FamilyKind::SpinEven, Params::Rank(k / 2)));
    }
    if let Some(args) = inner("G(") {
        let v: Option<Vec<u32>> = args.split(',').map(parse_uint).collect();
        return match v?.as_slice() {
            &[m, r, n] => Some((FamilyKind::Imprimitive, Params::Imprimitive { m, r, n })),
            _ => None,
        };
    }
    let subscript = |prefix: char| {
        let rest = name.strip_prefix(prefix)?;
        parse_uint(rest.strip_prefix('_').unwrap_or(rest))
    };
    if let Some(k) = subscript('D') {
        return (k % 2 == 0).then_some((FamilyKind::Dihedral, Params::Order(k / 2)));
    }
    if let Some(m) = subscript('C') {
        return Some((FamilyKind::Cyclic, Params::Order(m)));
    }
    None
}
