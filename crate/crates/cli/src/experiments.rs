//! One function per experiment kind, each producing a row per `n`.

use fqx_core::algebra::CodeSpace;
use fqx_core::analytics::{
    ap_correlation, correlate, gowers_norm, katai_statistic, min_distance_over_hayes,
    pretentious_distance, turan_kubilius, GnFunction, Multiplicative, PhaseCharacter, TestFunction,
};
use fqx_core::forms::{
    projective_common_zeros, BiasMode, FormTerm, MultilinearForm, PolynomialPhase,
};
use fqx_core::multiplicative::MultiplicativeFunction;
use fqx_core::{Complex64, Error, Factorizer, Fe, Field, LaurentTruncation, Polynomial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{Config, Kind, Params, PhaseSpec};

/// Slack for the bias and zero-count comparisons.
pub const CHECK_SLACK: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(u64),
    Float(f64),
    Bool(bool),
    Text(String),
    Empty,
}

impl Cell {
    pub fn to_csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => v.to_string(),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Cell::Int(v) => (*v).into(),
            Cell::Float(v) => serde_json::Number::from_f64(*v)
                .map(serde_json::Value::Number)
                .unwrap_or(serde_json::Value::Null),
            Cell::Bool(v) => (*v).into(),
            Cell::Text(s) => s.clone().into(),
            Cell::Empty => serde_json::Value::Null,
        }
    }
}

/// Fixed column set of each kind.
pub fn columns(kind: Kind) -> &'static [&'static str] {
    match kind {
        Kind::DecayTable => &["n", "count", "re", "im", "abs"],
        Kind::DistanceGrowth => &["n", "distance", "min_distance", "argmin", "candidates"],
        Kind::GowersDecay => &["n", "k", "norm"],
        Kind::ApDecay => &["n", "k", "re", "im", "abs", "bound", "holds"],
        Kind::KataiCheck => &["n", "k", "set_size", "value", "diagonal"],
        Kind::TkCheck => &["n", "primes", "a", "lhs", "ratio"],
        Kind::BiasRankDemo => &["n", "rank", "floor", "direct_bias", "block_bias", "holds"],
        Kind::ZeroCountCheck => &["n", "trial", "count", "points", "bound", "holds"],
    }
}

/// Why a run stopped.
#[derive(Debug)]
pub enum RunError {
    /// A guard refused the work at this `n`.
    Budget {
        n: usize,
        error: Error,
    },
    Core {
        n: usize,
        error: Error,
    },
    Output(std::io::Error),
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Budget { n, error } => write!(f, "refusing n = {n}: {error}"),
            RunError::Core { n, error } => write!(f, "n = {n}: {error}"),
            RunError::Output(e) => write!(f, "writing output: {e}"),
        }
    }
}

impl std::error::Error for RunError {}

fn at(n: usize) -> impl Fn(Error) -> RunError {
    move |error| match error {
        Error::BudgetExceeded { .. } | Error::BeyondFactorBound { .. } => {
            RunError::Budget { n, error }
        }
        error => RunError::Core { n, error },
    }
}

/// Everything derived from the config once, before the rows.
pub struct Prepared {
    pub field: Field,
    pub fz: Factorizer,
    pub function: Option<MultiplicativeFunction>,
    pub against: MultiplicativeFunction,
    /// Truncations of the phase, `beta_{-1}` first, reaching `n.max`.
    pub betas: Vec<LaurentTruncation>,
}

impl Prepared {
    pub fn new(c: &Config) -> Result<Self, RunError> {
        let field = c.field();
        let fz = Factorizer::new(&field, c.factor_degree()).map_err(at(c.n.min))?;
        let betas = match &c.phase {
            Some(p) => phase_betas(&field, p, c.seed, c.n.max),
            None => Vec::new(),
        };
        Ok(Prepared {
            function: c.function(),
            against: c.against(),
            field,
            fz,
            betas,
        })
    }

    fn phase(&self, c: &Config, n: usize) -> Result<Option<PolynomialPhase>, Error> {
        let Some(spec) = &c.phase else {
            return Ok(None);
        };
        let coeff = self.field.element(spec.coeff)?;
        PolynomialPhase::zero(&self.field, n)
            .with_term(coeff, self.betas.clone())
            .map(Some)
    }
}

/// Each `beta_j` comes from its own ChaCha stream, so widening the
/// n-range keeps the leading coefficients.
fn phase_betas(
    field: &Field,
    p: &PhaseSpec,
    seed: Option<u64>,
    depth: usize,
) -> Vec<LaurentTruncation> {
    if let Some(b) = &p.betas {
        return b
            .iter()
            .map(|idx| LaurentTruncation::from_indices(field, idx).expect("validated betas"))
            .collect();
    }
    let seed = seed.expect("validated seed");
    (0..p.degree)
        .map(|j| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(j as u64 + 1);
            let idx: Vec<u32> = (0..depth)
                .map(|_| rng.random_range(0..field.order()))
                .collect();
            LaurentTruncation::from_indices(field, &idx).expect("indices below q")
        })
        .collect()
}

/// Coefficient indices of each phase truncation, for the metadata.
pub fn beta_indices(p: &Prepared) -> Vec<Vec<u32>> {
    p.betas
        .iter()
        .map(|b| b.coeffs().iter().map(|c| c.index()).collect())
        .collect()
}

/// Streams `1..=degree` belong to the phase; per-n randomness uses
/// streams from here on.
const ROW_STREAM: u64 = 1 << 32;

fn row_rng(c: &Config, n: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed.expect("validated seed"));
    rng.set_stream(ROW_STREAM + n as u64);
    rng
}

/// `g -> f(g) alpha_1(P(g))` with either factor optional.
struct Product<'a> {
    f: Option<Multiplicative<'a>>,
    phase: Option<PhaseCharacter<'a>>,
}

impl TestFunction for Product<'_> {
    fn value(&self, g: &Polynomial) -> fqx_core::Result<Complex64> {
        let mut v = Complex64::new(1.0, 0.0);
        if let Some(f) = &self.f {
            v *= f.value(g)?;
        }
        if let Some(p) = &self.phase {
            v *= p.value(g)?;
        }
        Ok(v)
    }
}

/// Runs every `n` in order, handing each row to `emit` as soon as it is
/// computed.
pub fn run(
    c: &Config,
    prep: &Prepared,
    emit: &mut dyn FnMut(Vec<Cell>) -> std::io::Result<()>,
) -> Result<(), RunError> {
    let budget = c.budget();
    for n in c.n.min..=c.n.max {
        let fail = at(n);
        let phase = prep.phase(c, n).map_err(&fail)?;
        let test = Product {
            f: prep
                .function
                .as_ref()
                .map(|f| Multiplicative { f, fz: &prep.fz }),
            phase: phase.as_ref().map(PhaseCharacter),
        };
        let rows: Vec<Vec<Cell>> = match &c.params {
            Params::Decay(d) => {
                // the function enters as the weight, the phase as the test
                let nu = prep.function.as_ref().expect("validated function");
                let t = phase.as_ref().map(PhaseCharacter).expect("validated phase");
                let r = correlate(nu, &prep.fz, &t, n, d.domain, budget).map_err(&fail)?;
                vec![vec![
                    Cell::Int(n as u64),
                    Cell::Int(r.count),
                    Cell::Float(r.mean.re),
                    Cell::Float(r.mean.im),
                    Cell::Float(r.mean.norm()),
                ]]
            }
            Params::Distance(d) => {
                let f = prep.function.as_ref().expect("validated function");
                let dist = pretentious_distance(f, &prep.against, &prep.fz, n, d.window_low)
                    .map_err(&fail)?;
                let mut row = vec![Cell::Int(n as u64), Cell::Float(dist)];
                match d.minimize {
                    Some(m) => {
                        let r = min_distance_over_hayes(
                            f,
                            &prep.fz,
                            n,
                            m.modulus_degree,
                            m.length,
                            m.grid,
                            budget,
                        )
                        .map_err(&fail)?;
                        row.push(Cell::Float(r.distance));
                        row.push(Cell::Text(r.argmin.to_string()));
                        row.push(Cell::Int(r.candidates));
                    }
                    None => row.extend([Cell::Empty, Cell::Empty, Cell::Empty]),
                }
                vec![row]
            }
            Params::Gowers(g) => {
                let space = CodeSpace::new(&prep.field, n, budget).map_err(&fail)?;
                let f = GnFunction::from_test(space, &test).map_err(&fail)?;
                let norm = gowers_norm(&f, g.k, budget).map_err(&fail)?;
                vec![vec![
                    Cell::Int(n as u64),
                    Cell::Int(g.k as u64),
                    Cell::Float(norm),
                ]]
            }
            Params::Ap(a) => {
                let space = CodeSpace::new(&prep.field, n, budget).map_err(&fail)?;
                let f = GnFunction::from_test(space, &test).map_err(&fail)?;
                let fs = vec![&f; a.k];
                let r = ap_correlation(&fs, budget).map_err(&fail)?;
                vec![vec![
                    Cell::Int(n as u64),
                    Cell::Int(a.k as u64),
                    Cell::Float(r.mean.re),
                    Cell::Float(r.mean.im),
                    Cell::Float(r.mean.norm()),
                    Cell::Float(r.bound),
                    Cell::Bool(r.holds),
                ]]
            }
            Params::Katai(k) => {
                let r =
                    katai_statistic(&test, &prep.fz, n, k.k, k.pair_set, k.normalization, budget)
                        .map_err(&fail)?;
                vec![vec![
                    Cell::Int(n as u64),
                    Cell::Int(k.k as u64),
                    Cell::Int(r.set_size as u64),
                    Cell::Float(r.value),
                    Cell::Float(r.diagonal),
                ]]
            }
            Params::Tk(t) => {
                let r = turan_kubilius(&prep.fz, n, t.w, t.h, budget).map_err(&fail)?;
                vec![vec![
                    Cell::Int(n as u64),
                    Cell::Int(r.primes as u64),
                    Cell::Float(r.a),
                    Cell::Float(r.lhs),
                    Cell::Float(r.ratio),
                ]]
            }
            Params::BiasRank(b) => {
                let mut rng = row_rng(c, n);
                let f = &prep.field;
                let floor = (f.order() as f64).powi(-(b.rank as i32));
                let direct = direct_sum(f, n, b.rank, b.arity).map_err(&fail)?;
                let blocks = random_blocks(f, n, b.rank, b.arity, &mut rng).map_err(&fail)?;
                let d = direct.bias(BiasMode::Exhaustive, budget).map_err(&fail)?;
                let r = blocks.bias(BiasMode::Exhaustive, budget).map_err(&fail)?;
                let holds =
                    (d.mean - floor).norm() <= CHECK_SLACK && r.mean.re >= floor - CHECK_SLACK;
                vec![vec![
                    Cell::Int(n as u64),
                    Cell::Int(b.rank as u64),
                    Cell::Float(floor),
                    Cell::Float(d.mean.re),
                    Cell::Float(r.mean.re),
                    Cell::Bool(holds),
                ]]
            }
            Params::ZeroCount(z) => {
                let mut rng = row_rng(c, n);
                let mut rows = Vec::with_capacity(z.trials);
                for trial in 0..z.trials {
                    let system = z
                        .degrees
                        .iter()
                        .map(|&d| random_homogeneous(&prep.field, n, d, &mut rng))
                        .collect::<fqx_core::Result<Vec<_>>>()
                        .map_err(&fail)?;
                    let r =
                        projective_common_zeros(&prep.field, &system, n, budget).map_err(&fail)?;
                    rows.push(vec![
                        Cell::Int(n as u64),
                        Cell::Int(trial as u64),
                        Cell::Int(r.count),
                        Cell::Int(r.points),
                        Cell::Float(r.bound),
                        Cell::Bool(r.holds),
                    ]);
                }
                rows
            }
        };
        for row in rows {
            emit(row).map_err(RunError::Output)?;
        }
    }
    Ok(())
}

fn coordinate(i: usize, n: usize) -> LaurentTruncation {
    LaurentTruncation::coordinate(i, n).expect("coordinate below n")
}

/// `sum_{i < rank} x_{1,i} x_{2,i} ... x_{arity,i}` on `G_n^arity`.
fn direct_sum(f: &Field, n: usize, rank: usize, arity: usize) -> fqx_core::Result<MultilinearForm> {
    let blocks = (0..rank)
        .map(|i| {
            let a = MultilinearForm::new(
                f,
                vec![n],
                vec![FormTerm {
                    coeff: Fe::ONE,
                    slots: vec![coordinate(i, n)],
                }],
            )?;
            let b = MultilinearForm::new(
                f,
                vec![n; arity - 1],
                vec![FormTerm {
                    coeff: Fe::ONE,
                    slots: vec![coordinate(i, n); arity - 1],
                }],
            )?;
            Ok((vec![0], a, b))
        })
        .collect::<fqx_core::Result<Vec<_>>>()?;
    MultilinearForm::from_blocks(f, vec![n; arity], &blocks)
}

fn random_truncation(f: &Field, n: usize, rng: &mut ChaCha8Rng) -> LaurentTruncation {
    let idx: Vec<u32> = (0..n).map(|_| rng.random_range(0..f.order())).collect();
    LaurentTruncation::from_indices(f, &idx).expect("indices below q")
}

fn rank_one(
    f: &Field,
    n: usize,
    slots: usize,
    rng: &mut ChaCha8Rng,
) -> fqx_core::Result<MultilinearForm> {
    let term = FormTerm {
        coeff: Fe::ONE,
        slots: (0..slots).map(|_| random_truncation(f, n, rng)).collect(),
    };
    MultilinearForm::new(f, vec![n; slots], vec![term])
}

/// `rank` blocks `A_i(x_S) B_i(x_{S^c})` over random slot splits with
/// random rank-one factors.
fn random_blocks(
    f: &Field,
    n: usize,
    rank: usize,
    arity: usize,
    rng: &mut ChaCha8Rng,
) -> fqx_core::Result<MultilinearForm> {
    let blocks = (0..rank)
        .map(|_| {
            let mut slots: Vec<usize> = (0..arity).collect();
            for i in (1..arity).rev() {
                slots.swap(i, rng.random_range(0..=i));
            }
            let cut = rng.random_range(1..arity);
            let mut s = slots[..cut].to_vec();
            s.sort_unstable();
            let rest = arity - cut;
            let a = rank_one(f, n, cut, rng)?;
            let b = rank_one(f, n, rest, rng)?;
            Ok((s, a, b))
        })
        .collect::<fqx_core::Result<Vec<_>>>()?;
    MultilinearForm::from_blocks(f, vec![n; arity], &blocks)
}

/// Exponent vectors of total degree `d` in `vars` variables.
fn exponents(vars: usize, d: usize) -> Vec<Vec<u32>> {
    if vars == 1 {
        return vec![vec![d as u32]];
    }
    let mut out = Vec::new();
    for a in 0..=d {
        for mut rest in exponents(vars - 1, d - a) {
            rest.insert(0, a as u32);
            out.push(rest);
        }
    }
    out
}

/// A nonzero form of degree `d` in `g_0, ..., g_{dim-1}` with uniform
/// coefficients.
fn random_homogeneous(
    f: &Field,
    dim: usize,
    d: usize,
    rng: &mut ChaCha8Rng,
) -> fqx_core::Result<PolynomialPhase> {
    let monomials = exponents(dim, d);
    loop {
        let mut p = PolynomialPhase::zero(f, dim);
        for e in &monomials {
            let c = rng.random_range(0..f.order());
            if c != 0 {
                let powers: Vec<(usize, u32)> = e.iter().copied().enumerate().collect();
                p = p.with_monomial(f.element(c)?, &powers)?;
            }
        }
        if !p.is_zero() {
            return Ok(p);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponent_counts() {
        // C(d + v - 1, v - 1)
        assert_eq!(exponents(3, 2).len(), 6);
        assert_eq!(exponents(4, 3).len(), 20);
        assert!(exponents(3, 2).iter().all(|e| e.iter().sum::<u32>() == 2));
    }
}
