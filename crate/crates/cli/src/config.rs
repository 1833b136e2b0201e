//! Experiment configuration: parsing, overrides, validation and cost
//! estimates.

use std::fmt;

use fqx_core::algebra::{irreducible::MAX_SIEVE_SIZE, irreducible_count};
use fqx_core::analytics::{Domain, KataiNormalization, PairSet};
use fqx_core::characters::HayesCharacter;
use fqx_core::descriptor::{Builtin, FunctionDescriptor, HayesDescriptor, ValueSet};
use fqx_core::multiplicative::MultiplicativeFunction;
use fqx_core::{Factorizer, Field, DEFAULT_BUDGET};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use toml::de::{DeTable, DeValue};
use toml::{Spanned, Table, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    DecayTable,
    DistanceGrowth,
    GowersDecay,
    ApDecay,
    KataiCheck,
    TkCheck,
    BiasRankDemo,
    ZeroCountCheck,
}

impl Kind {
    pub const ALL: [Kind; 8] = [
        Kind::DecayTable,
        Kind::DistanceGrowth,
        Kind::GowersDecay,
        Kind::ApDecay,
        Kind::KataiCheck,
        Kind::TkCheck,
        Kind::BiasRankDemo,
        Kind::ZeroCountCheck,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::DecayTable => "decay-table",
            Kind::DistanceGrowth => "distance-growth",
            Kind::GowersDecay => "gowers-decay",
            Kind::ApDecay => "ap-decay",
            Kind::KataiCheck => "katai-check",
            Kind::TkCheck => "tk-check",
            Kind::BiasRankDemo => "bias-rank-demo",
            Kind::ZeroCountCheck => "zero-count-check",
        }
    }

    pub fn from_name(s: &str) -> Option<Kind> {
        Kind::ALL.into_iter().find(|k| k.name() == s)
    }

    /// Sections this kind reads besides the common ones.
    fn sections(self) -> &'static [&'static str] {
        match self {
            Kind::DecayTable => &["function", "phase"],
            Kind::DistanceGrowth => &["function", "against"],
            Kind::GowersDecay | Kind::ApDecay | Kind::KataiCheck => &["function", "phase"],
            Kind::TkCheck | Kind::BiasRankDemo | Kind::ZeroCountCheck => &[],
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub p: u32,
    #[serde(default = "one")]
    pub r: u32,
    /// Coefficients of the defining polynomial, lowest first.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

fn one() -> u32 {
    1
}

impl FieldSpec {
    pub fn build(&self) -> fqx_core::Result<Field> {
        match &self.modulus {
            Some(m) => Field::with_modulus(self.p, m),
            None => Field::new(self.p, self.r),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NRange {
    pub min: usize,
    pub max: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Budget {
    /// Largest number of elementary evaluations allowed for one row.
    #[serde(default = "default_evaluations")]
    pub evaluations: u64,
    /// Degree bound of the irreducible table.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factor_degree: Option<usize>,
}

fn default_evaluations() -> u64 {
    DEFAULT_BUDGET as u64
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            evaluations: default_evaluations(),
            factor_degree: None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Output {
    /// `-` writes to standard output.
    #[serde(default = "stdout")]
    pub path: String,
    #[serde(default)]
    pub format: Format,
}

fn stdout() -> String {
    "-".into()
}

impl Default for Output {
    fn default() -> Self {
        Output {
            path: stdout(),
            format: Format::Csv,
        }
    }
}

pub const FUNCTION_NAMES: [&str; 5] = ["moebius", "liouville", "one", "random", "character"];

/// A multiplicative function: a builtin, a seeded random function or a
/// Hayes character. A `character` next to a builtin or random base twists
/// the base by it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<ValueSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub character: Option<HayesDescriptor>,
    #[serde(default)]
    pub conjugate: bool,
}

impl FunctionSpec {
    pub fn is_random(&self) -> bool {
        self.name == "random"
    }

    pub fn descriptor(&self, seed: Option<u64>) -> Result<FunctionDescriptor, String> {
        let base = match self.name.as_str() {
            "random" => FunctionDescriptor::Random {
                seed: seed.ok_or("a random function needs a seed")?,
                values: self.values.unwrap_or(ValueSet::Signs),
            },
            "character" => {
                let c = self
                    .character
                    .clone()
                    .ok_or("`character` functions need a [character] table")?;
                return Ok(FunctionDescriptor::Character(c));
            }
            other => FunctionDescriptor::Builtin(Builtin::from_name(other).ok_or_else(|| {
                format!(
                    "unknown function `{other}` (expected one of {})",
                    FUNCTION_NAMES.join(", ")
                )
            })?),
        };
        if self.values.is_some() && !self.is_random() {
            return Err("`values` only applies to random functions".into());
        }
        Ok(match &self.character {
            Some(c) => FunctionDescriptor::Twist {
                base: Box::new(base),
                character: c.clone(),
                conjugate: self.conjugate,
            },
            None => base,
        })
    }
}

/// `coeff * L_1 ... L_degree` with `L_j(g) = (beta_j g)_{-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhaseSpec {
    #[serde(default = "one_usize")]
    pub degree: usize,
    #[serde(default = "one")]
    pub coeff: u32,
    /// Coefficient indices of each `beta_j`, `beta_{-1}` first. Drawn from
    /// the seed when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub betas: Option<Vec<Vec<u32>>>,
}

fn one_usize() -> usize {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecayParams {
    #[serde(default)]
    pub domain: Domain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Minimize {
    pub modulus_degree: usize,
    pub length: usize,
    pub grid: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistanceParams {
    #[serde(default = "one_usize")]
    pub window_low: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minimize: Option<Minimize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GowersParams {
    #[serde(default = "two")]
    pub k: u32,
}

fn two() -> u32 {
    2
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ApParams {
    #[serde(default = "three")]
    pub k: usize,
}

fn three() -> usize {
    3
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KataiParams {
    pub k: usize,
    #[serde(default)]
    pub pair_set: PairSet,
    #[serde(default)]
    pub normalization: KataiNormalization,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TkParams {
    pub w: usize,
    pub h: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BiasRankParams {
    pub rank: usize,
    #[serde(default = "two_usize")]
    pub arity: usize,
}

fn two_usize() -> usize {
    2
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZeroCountParams {
    pub degrees: Vec<usize>,
    #[serde(default = "one_usize")]
    pub trials: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Params {
    Decay(DecayParams),
    Distance(DistanceParams),
    Gowers(GowersParams),
    Ap(ApParams),
    Katai(KataiParams),
    Tk(TkParams),
    BiasRank(BiasRankParams),
    ZeroCount(ZeroCountParams),
}

/// A validated configuration with every default filled in.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Config {
    pub kind: Kind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub field: FieldSpec,
    pub n: NRange,
    pub budget: Budget,
    pub output: Output,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub function: Option<FunctionSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub against: Option<FunctionSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phase: Option<PhaseSpec>,
    pub params: Params,
}

impl Config {
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("configs serialize")
    }

    pub fn field(&self) -> Field {
        self.field.build().expect("validated field")
    }

    pub fn function(&self) -> Option<MultiplicativeFunction> {
        self.function.as_ref().map(|s| self.build_function(s))
    }

    pub fn against(&self) -> MultiplicativeFunction {
        self.against
            .as_ref()
            .map(|s| self.build_function(s))
            .unwrap_or_else(MultiplicativeFunction::one)
    }

    fn build_function(&self, s: &FunctionSpec) -> MultiplicativeFunction {
        let d = s.descriptor(self.seed).expect("validated function");
        MultiplicativeFunction::from_descriptor(&self.field(), &d).expect("validated function")
    }

    /// The irreducible table bound used for the run.
    pub fn factor_degree(&self) -> usize {
        let q = self.field.p.pow(self.field.r);
        self.budget.factor_degree.unwrap_or_else(|| {
            Factorizer::default_bound(q)
                .max(needed_degree(self))
                .min(sieve_limit(q))
        })
    }

    pub fn budget(&self) -> u128 {
        self.budget.evaluations as u128
    }
}

fn sieve_limit(q: u32) -> usize {
    let mut d = 1;
    while (q as u64)
        .checked_pow(d as u32 + 1)
        .is_some_and(|s| s <= MAX_SIEVE_SIZE)
    {
        d += 1;
    }
    d
}

/// Largest degree the kind factors at `n.max`.
fn needed_degree(c: &Config) -> usize {
    let n = c.n.max;
    match c.kind {
        Kind::DecayTable | Kind::GowersDecay | Kind::ApDecay | Kind::KataiCheck => {
            n.saturating_sub(1)
        }
        Kind::DistanceGrowth => n,
        Kind::TkCheck => match &c.params {
            Params::Tk(t) => t.h.saturating_sub(1),
            _ => 1,
        },
        Kind::BiasRankDemo | Kind::ZeroCountCheck => 1,
    }
}

/// What a diagnostic is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Severity {
    Invalid,
    Budget,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub line: Option<usize>,
    pub path: String,
    pub message: String,
}

impl Diagnostic {
    /// `file:line: path: message`; keys set from the command line show as
    /// `file: --set path: message`.
    pub fn render(&self, file: &str) -> String {
        let path = if self.path.is_empty() {
            String::new()
        } else {
            format!("{}: ", self.path)
        };
        match self.line {
            Some(l) => format!("{file}:{l}: {path}{}", self.message),
            None => format!("{file}: --set {path}{}", self.message),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("config"))
    }
}

/// Key-path overrides (`a.b = value`) applied on top of the file, plus
/// the kind fixed by a subcommand.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub keys: Vec<(String, Value)>,
    pub kind: Option<Kind>,
}

impl Overrides {
    /// Parses `key.path=value`; the value is read as TOML, falling back to
    /// a bare string.
    pub fn push(&mut self, spec: &str) -> Result<(), String> {
        let (key, raw) = spec
            .split_once('=')
            .ok_or_else(|| format!("override `{spec}` is not of the form key=value"))?;
        let key = key.trim();
        if key.is_empty() || key.split('.').any(str::is_empty) {
            return Err(format!("override `{spec}` has an empty key segment"));
        }
        let raw = raw.trim();
        let value = toml::from_str::<Table>(&format!("v = {raw}"))
            .ok()
            .and_then(|mut t| t.remove("v"))
            .unwrap_or_else(|| Value::String(raw.to_string()));
        self.keys.push((key.to_string(), value));
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.keys.push((key.to_string(), value.into()));
    }

    fn apply(&self, table: &mut Table) -> Vec<String> {
        let mut overridden = Vec::new();
        for (key, value) in &self.keys {
            let parts: Vec<&str> = key.split('.').collect();
            let mut t = &mut *table;
            for part in &parts[..parts.len() - 1] {
                let entry = t
                    .entry(part.to_string())
                    .or_insert_with(|| Value::Table(Table::new()));
                if !entry.is_table() {
                    *entry = Value::Table(Table::new());
                }
                t = entry.as_table_mut().unwrap();
            }
            t.insert(parts[parts.len() - 1].to_string(), value.clone());
            overridden.push(key.clone());
        }
        overridden
    }
}

const TOP_KEYS: [&str; 10] = [
    "kind", "seed", "field", "n", "budget", "output", "function", "against", "phase", "params",
];

struct Locator<'a> {
    text: &'a str,
    doc: Option<Spanned<DeTable<'a>>>,
    overridden: Vec<String>,
}

impl Locator<'_> {
    fn line_of(&self, offset: usize) -> usize {
        self.text[..offset.min(self.text.len())]
            .matches('\n')
            .count()
            + 1
    }

    /// Line of the deepest key of `path` present in the file, or `None`
    /// when the key came from an override.
    fn line(&self, path: &[&str]) -> Option<usize> {
        let joined = path.join(".");
        if self
            .overridden
            .iter()
            .any(|o| joined == *o || joined.starts_with(&format!("{o}.")))
        {
            return None;
        }
        let doc = self.doc.as_ref()?;
        let mut table = doc.get_ref();
        let mut best = 1;
        for part in path {
            let Some((k, v)) = table.iter().find(|(k, _)| k.get_ref() == part) else {
                break;
            };
            best = self.line_of(k.span().start);
            match v.get_ref() {
                DeValue::Table(t) => table = t,
                _ => break,
            }
        }
        Some(best)
    }
}

struct Collector<'a> {
    loc: Locator<'a>,
    diags: Vec<Diagnostic>,
}

impl Collector<'_> {
    fn push(&mut self, severity: Severity, path: &[&str], message: impl Into<String>) {
        self.diags.push(Diagnostic {
            severity,
            line: self.loc.line(path),
            path: path.join("."),
            message: message.into(),
        });
    }

    fn invalid(&mut self, path: &[&str], message: impl Into<String>) {
        self.push(Severity::Invalid, path, message);
    }

    /// Deserializes one section, reporting each unknown key separately.
    fn section<T: DeserializeOwned>(
        &mut self,
        table: &Table,
        name: &str,
        known: &[&str],
    ) -> Option<T> {
        let value = table.get(name)?;
        let Some(inner) = value.as_table() else {
            self.invalid(&[name], "expected a table");
            return None;
        };
        let mut clean = true;
        for key in inner.keys() {
            if !known.contains(&key.as_str()) {
                self.invalid(
                    &[name, key],
                    format!("unknown key `{key}` (expected one of {})", known.join(", ")),
                );
                clean = false;
            }
        }
        if !clean {
            return None;
        }
        self.parse(value.clone(), &[name])
    }

    fn parse<T: DeserializeOwned>(&mut self, value: Value, path: &[&str]) -> Option<T> {
        match T::deserialize(value) {
            Ok(v) => Some(v),
            Err(e) => {
                let msg = e.message().trim().to_string();
                self.invalid(path, msg);
                None
            }
        }
    }
}

/// Parses and validates a config. Every problem found is returned at once.
pub fn validate_config(text: &str, overrides: &Overrides) -> Result<Config, Vec<Diagnostic>> {
    let (doc, syntax) = DeTable::parse_recoverable(text);
    let locator = |overridden| Locator {
        text,
        doc: Some(doc.clone()),
        overridden,
    };
    if !syntax.is_empty() {
        let loc = locator(Vec::new());
        return Err(syntax
            .iter()
            .map(|e| Diagnostic {
                severity: Severity::Invalid,
                line: e.span().map(|s| loc.line_of(s.start)),
                path: String::new(),
                message: e.message().trim().to_string(),
            })
            .collect());
    }
    let mut table: Table = match toml::from_str(text) {
        Ok(t) => t,
        Err(e) => {
            let loc = locator(Vec::new());
            return Err(vec![Diagnostic {
                severity: Severity::Invalid,
                line: e.span().map(|s| loc.line_of(s.start)),
                path: String::new(),
                message: e.message().trim().to_string(),
            }]);
        }
    };
    let overridden = overrides.apply(&mut table);
    let mut c = Collector {
        loc: locator(overridden),
        diags: Vec::new(),
    };
    // a misspelled section is reported once, with the likely intent
    let mut meant = Vec::new();
    for key in table.keys() {
        if TOP_KEYS.contains(&key.as_str()) {
            continue;
        }
        let guess = TOP_KEYS
            .iter()
            .filter(|k| !table.contains_key(**k) && strsim::levenshtein(k, key) <= 2)
            .min_by_key(|k| strsim::levenshtein(k, key));
        let msg = match guess {
            Some(g) => {
                meant.push(*g);
                format!("unknown key `{key}` (did you mean `{g}`?)")
            }
            None => format!(
                "unknown key `{key}` (expected one of {})",
                TOP_KEYS.join(", ")
            ),
        };
        c.invalid(&[key], msg);
    }
    let missing = |c: &mut Collector, name: &str, msg: String| {
        if !meant.contains(&name) {
            c.invalid(&[name], msg);
        }
    };

    if let Some(k) = overrides.kind {
        match table.get("kind") {
            Some(Value::String(s)) if s != k.name() => {
                c.invalid(
                    &["kind"],
                    format!("config declares `{s}` but the subcommand is {k}"),
                );
            }
            Some(Value::String(_)) => {}
            _ => {
                table.insert("kind".into(), Value::String(k.name().into()));
            }
        }
    }
    let kind = match table.get("kind") {
        None => {
            missing(&mut c, "kind", "missing experiment kind".into());
            None
        }
        Some(Value::String(s)) => {
            let k = Kind::from_name(s);
            if k.is_none() {
                let names: Vec<&str> = Kind::ALL.iter().map(|k| k.name()).collect();
                c.invalid(
                    &["kind"],
                    format!("unknown kind `{s}` (expected one of {})", names.join(", ")),
                );
            }
            k
        }
        Some(_) => {
            c.invalid(&["kind"], "expected a string");
            None
        }
    };
    let seed = match table.get("seed") {
        None => None,
        Some(Value::Integer(s)) if *s >= 0 => Some(*s as u64),
        Some(_) => {
            c.invalid(&["seed"], "expected a nonnegative integer");
            None
        }
    };
    let field: Option<FieldSpec> = if table.contains_key("field") {
        c.section(&table, "field", &["p", "r", "modulus"])
    } else {
        missing(&mut c, "field", "missing [field] section".into());
        None
    };
    let field_built = field.as_ref().and_then(|f| match f.build() {
        Ok(x) => Some(x),
        Err(e) => {
            c.invalid(&["field"], e.to_string());
            None
        }
    });
    let n: Option<NRange> = if table.contains_key("n") {
        c.section(&table, "n", &["min", "max"])
    } else {
        missing(&mut c, "n", "missing [n] section".into());
        None
    };
    if let Some(r) = n {
        if r.min == 0 {
            c.invalid(&["n", "min"], "n.min must be at least 1");
        }
        if r.min > r.max {
            c.invalid(
                &["n"],
                format!("empty range: min {} > max {}", r.min, r.max),
            );
        }
    }
    let budget: Budget = c
        .section(&table, "budget", &["evaluations", "factor_degree"])
        .unwrap_or_default();
    let output: Output = c
        .section(&table, "output", &["path", "format"])
        .unwrap_or_default();
    let fn_keys = ["name", "values", "character", "conjugate"];
    let function: Option<FunctionSpec> = c.section(&table, "function", &fn_keys);
    let against: Option<FunctionSpec> = c.section(&table, "against", &fn_keys);
    let phase: Option<PhaseSpec> = c.section(&table, "phase", &["degree", "coeff", "betas"]);

    let Some(kind) = kind else {
        return Err(c.diags);
    };
    for s in ["function", "against", "phase"] {
        if table.contains_key(s) && !kind.sections().contains(&s) {
            c.invalid(&[s], format!("section [{s}] is not used by {kind}"));
        }
    }
    let params_value = table
        .get("params")
        .cloned()
        .unwrap_or_else(|| Value::Table(Table::new()));
    let params = if !params_value.is_table() {
        c.invalid(&["params"], "expected a table");
        None
    } else {
        let keys: &[&str] = match kind {
            Kind::DecayTable => &["domain"],
            Kind::DistanceGrowth => &["window_low", "minimize"],
            Kind::GowersDecay | Kind::ApDecay => &["k"],
            Kind::KataiCheck => &["k", "pair_set", "normalization"],
            Kind::TkCheck => &["w", "h"],
            Kind::BiasRankDemo => &["rank", "arity"],
            Kind::ZeroCountCheck => &["degrees", "trials"],
        };
        let mut t = Table::new();
        t.insert("params".into(), params_value);
        match kind {
            Kind::DecayTable => c.section(&t, "params", keys).map(Params::Decay),
            Kind::DistanceGrowth => c.section(&t, "params", keys).map(Params::Distance),
            Kind::GowersDecay => c.section(&t, "params", keys).map(Params::Gowers),
            Kind::ApDecay => c.section(&t, "params", keys).map(Params::Ap),
            Kind::KataiCheck => c.section(&t, "params", keys).map(Params::Katai),
            Kind::TkCheck => c.section(&t, "params", keys).map(Params::Tk),
            Kind::BiasRankDemo => c.section(&t, "params", keys).map(Params::BiasRank),
            Kind::ZeroCountCheck => c.section(&t, "params", keys).map(Params::ZeroCount),
        }
    };

    // sections each kind requires
    match kind {
        Kind::DecayTable => {
            for s in ["function", "phase"] {
                if !table.contains_key(s) {
                    missing(&mut c, s, format!("{kind} needs a [{s}] section"));
                }
            }
        }
        Kind::DistanceGrowth => {
            if !table.contains_key("function") {
                missing(
                    &mut c,
                    "function",
                    format!("{kind} needs a [function] section"),
                );
            }
        }
        Kind::GowersDecay | Kind::ApDecay | Kind::KataiCheck
            if !table.contains_key("function") && !table.contains_key("phase") =>
        {
            c.invalid(
                &["function"],
                format!("{kind} needs a [function] or a [phase] section"),
            );
        }
        _ => {}
    }

    // seeds
    if !table.contains_key("seed") {
        let mut random: Vec<(&[&str], &str)> = Vec::new();
        if function.as_ref().is_some_and(FunctionSpec::is_random) {
            random.push((&["function", "name"], "the random function"));
        }
        if against.as_ref().is_some_and(FunctionSpec::is_random) {
            random.push((&["against", "name"], "the random function"));
        }
        if phase.as_ref().is_some_and(|p| p.betas.is_none()) {
            random.push((&["phase"], "a phase without `betas`"));
        }
        if matches!(kind, Kind::BiasRankDemo | Kind::ZeroCountCheck) {
            random.push((&["kind"], "random forms"));
        }
        for (path, what) in random {
            c.invalid(path, format!("seed is required for {what}"));
        }
    }

    if let Some(f) = &field_built {
        for (name, spec) in [("function", &function), ("against", &against)] {
            let Some(spec) = spec else { continue };
            match spec.descriptor(seed.or(Some(0))) {
                Err(e) => c.invalid(&[name], e),
                Ok(d) => {
                    if let Err(e) = MultiplicativeFunction::from_descriptor(f, &d) {
                        c.invalid(&[name], e.to_string());
                    }
                    if let Some(h) = &spec.character {
                        if let Err(e) = HayesCharacter::from_descriptor(f, h) {
                            c.invalid(&[name, "character"], e.to_string());
                        }
                    }
                }
            }
        }
        if let (Some(p), Some(r)) = (&phase, n) {
            if p.degree == 0 {
                c.invalid(&["phase", "degree"], "degree must be at least 1");
            }
            if p.coeff >= f.order() {
                c.invalid(
                    &["phase", "coeff"],
                    format!("{} is not an element of F_{}", p.coeff, f.order()),
                );
            }
            if let Some(b) = &p.betas {
                if b.len() != p.degree {
                    c.invalid(
                        &["phase", "betas"],
                        format!("{} betas for degree {}", b.len(), p.degree),
                    );
                }
                for (j, beta) in b.iter().enumerate() {
                    if beta.len() < r.max {
                        c.invalid(
                            &["phase", "betas"],
                            format!("beta {j} has depth {} below n.max = {}", beta.len(), r.max),
                        );
                    }
                    if let Some(bad) = beta.iter().find(|&&x| x >= f.order()) {
                        c.invalid(
                            &["phase", "betas"],
                            format!("{bad} is not an element of F_{}", f.order()),
                        );
                    }
                }
            }
        }
        if let (Some(params), Some(r)) = (&params, n) {
            check_params(&mut c, kind, params, f, r);
        }
    }

    let (Some(field), Some(n), Some(params)) = (field, n, params) else {
        return Err(c.diags);
    };
    if !c.diags.is_empty() {
        return Err(c.diags);
    }
    let config = Config {
        kind,
        seed,
        field,
        n,
        budget,
        output,
        function,
        against,
        phase,
        params,
    };
    let q = config.field.p.pow(config.field.r);
    if let Some(d) = config.budget.factor_degree {
        if d == 0 || d > sieve_limit(q) {
            c.push(
                Severity::Budget,
                &["budget", "factor_degree"],
                format!("irreducible table degree must be in 1..={}", sieve_limit(q)),
            );
        }
    }
    let need = needed_degree(&config);
    if need > config.factor_degree() {
        let path: &[&str] = match config.kind {
            Kind::TkCheck => &["params", "h"],
            _ if config.budget.factor_degree.is_some() => &["budget", "factor_degree"],
            _ => &["n", "max"],
        };
        c.push(
            Severity::Budget,
            path,
            format!(
                "n = {} needs irreducibles up to degree {need}, above the table bound {} (sieve limit {})",
                config.n.max,
                config.factor_degree(),
                sieve_limit(q)
            ),
        );
    }
    for m in config.n.min..=config.n.max {
        if let Some(cost) = estimate_cost(&config, m) {
            if cost > config.budget() {
                c.push(
                    Severity::Budget,
                    &["n", "max"],
                    format!(
                        "n = {m} needs about {cost} evaluations, above the budget of {}",
                        config.budget.evaluations
                    ),
                );
                break;
            }
        }
    }
    if c.diags.is_empty() {
        Ok(config)
    } else {
        Err(c.diags)
    }
}

fn check_params(c: &mut Collector, kind: Kind, params: &Params, f: &Field, r: NRange) {
    let p = f.characteristic() as usize;
    match params {
        Params::Gowers(g) if g.k == 0 => c.invalid(&["params", "k"], "k must be at least 1"),
        Params::Ap(a) if a.k < 2 || a.k >= p => c.invalid(
            &["params", "k"],
            format!("progression length must satisfy 2 <= k < p = {p}"),
        ),
        Params::Katai(k) if k.k + 1 > r.min && k.pair_set == PairSet::Pk => c.invalid(
            &["params", "k"],
            format!("P_k reaches degree {} above n.min = {}", k.k + 1, r.min),
        ),
        Params::Katai(k) if k.k > r.min => c.invalid(
            &["params", "k"],
            format!("k = {} exceeds n.min = {}", k.k, r.min),
        ),
        Params::Tk(t) if t.h <= t.w + 1 => c.invalid(
            &["params"],
            format!("empty window W = {} < deg p < H = {}", t.w, t.h),
        ),
        Params::BiasRank(b) => {
            if b.rank == 0 {
                c.invalid(&["params", "rank"], "rank must be at least 1");
            }
            if b.arity < 2 {
                c.invalid(&["params", "arity"], "arity must be at least 2");
            }
            if b.rank > r.min {
                c.invalid(
                    &["params", "rank"],
                    format!(
                        "a direct sum of rank {} needs slot dimension n >= {}",
                        b.rank, b.rank
                    ),
                );
            }
        }
        Params::ZeroCount(z) => {
            if z.degrees.is_empty() || z.degrees.contains(&0) {
                c.invalid(
                    &["params", "degrees"],
                    "degrees must be a nonempty list of positive integers",
                );
            }
            if z.trials == 0 {
                c.invalid(&["params", "trials"], "trials must be at least 1");
            }
        }
        Params::Distance(d) => {
            if let Some(m) = d.minimize {
                if m.grid == 0 {
                    c.invalid(&["params", "minimize", "grid"], "grid must be at least 1");
                }
            }
        }
        _ => {}
    }
    let _ = kind;
}

fn pow(q: u32, e: usize) -> u128 {
    (q as u128).checked_pow(e as u32).unwrap_or(u128::MAX)
}

/// Rough count of elementary evaluations for the row at `n`.
pub fn estimate_cost(c: &Config, n: usize) -> Option<u128> {
    let q = c.field.p.pow(c.field.r);
    Some(match &c.params {
        Params::Decay(_) => pow(q, n),
        Params::Distance(d) => match d.minimize {
            None => pow(q, n),
            Some(m) => {
                let primes: u128 = (1..=n)
                    .map(|d| irreducible_count(q, d).unwrap_or(u64::MAX) as u128)
                    .sum();
                pow(q, m.length)
                    * pow(q, 2 * m.modulus_degree).saturating_mul(primes + m.grid as u128)
            }
        },
        Params::Gowers(g) => pow(q, n).saturating_mul(pow(q, n * g.k as usize)),
        Params::Ap(a) => pow(q, 2 * n).saturating_mul(a.k as u128),
        Params::Katai(k) => {
            let s = match k.pair_set {
                PairSet::Pk => {
                    (irreducible_count(q, k.k).ok()? + irreducible_count(q, k.k + 1).ok()?) as u128
                }
                PairSet::Gk1 => pow(q, k.k + 1),
            };
            (s * s)
                .saturating_mul(pow(q, n.saturating_sub(k.k)))
                .max(pow(q, n))
        }
        Params::Tk(_) => pow(q, n),
        Params::BiasRank(b) => pow(q, n * b.arity),
        Params::ZeroCount(z) => pow(q, n).saturating_mul(z.trials as u128),
    })
}
