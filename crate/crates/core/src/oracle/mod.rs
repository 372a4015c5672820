//! Independent cross-checks that do not trust the symbolic kernel.
//!
//! Classical relations are evaluated with Taylor jets at exact radial
//! points, quantum relations by applying operator trees to test functions,
//! and independence counts by exact Jacobian ranks.

mod jet;
mod ops;
mod points;
mod rank;

pub use jet::{Jet, JetAlgebra};
pub use ops::{apply_weyl, operator_apply_check, Applier, Op, OpAlgebra, OpRef, TestFunction};
pub use points::{sample_radial_points, RadialPoint};
pub use rank::{bareiss_rank, independence_rank, max_rank, RankReport};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Algebra, PhaseAlgebra};
use crate::error::{Error, Result};
use crate::exec::par_map;
use crate::generators::{Frame, Generators, Model, ModelConfig};
use crate::phase::EvalPoint;
use crate::relations::{catalog, clip, collect, plan, timed, RelationSpec, SweepOptions, Term, VerifyReport};

/// Coordinate bound used when sampling oracle points.
pub const POINT_BOUND: i64 = 9;

#[derive(Clone, Copy, Debug)]
pub struct OracleOptions {
    pub points: usize,
    /// Test functions per quantum instance.
    pub test_functions: usize,
    pub seed: u64,
    pub sweep: SweepOptions,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { points: 25, test_functions: 3, seed: 0, sweep: SweepOptions::default() }
    }
}

fn check_points(points: usize) -> Result<()> {
    if points == 0 {
        Err(Error::Config("at least one oracle point is required".into()))
    } else {
        Ok(())
    }
}

/// Jet evaluators for one model at a fixed set of points.
pub struct ClassicalOracle {
    gens: Vec<(Generators<JetAlgebra>, Generators<JetAlgebra>)>,
}

impl ClassicalOracle {
    pub fn new(n: usize, model: Model, points: &[RadialPoint]) -> Result<Self> {
        let cfg = ModelConfig::new(n, Frame::Classical, model)?;
        let space = cfg.space()?;
        let gens = points
            .iter()
            .map(|p| {
                let g = Generators::new(JetAlgebra::new(space, p.clone())?, cfg)?;
                let z = g.with_zero_a();
                Ok((g, z))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ClassicalOracle { gens })
    }

    /// Index of the first point where `term` does not vanish.
    pub fn first_nonzero(&self, term: &Term, zero_a: bool) -> Result<Option<usize>> {
        for (k, (full, za)) in self.gens.iter().enumerate() {
            let g = if zero_a { za } else { full };
            let jet = term.eval(g)?;
            let v = jet.value().ok_or_else(|| Error::Config("jet order exhausted".into()))?;
            if !num_traits::Zero::is_zero(v) {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }

    pub fn point(&self, k: usize) -> &RadialPoint {
        self.gens[k].0.alg().point()
    }
}

/// Pointwise check of one classical relation instance.
pub fn numeric_identity_check(spec: &RelationSpec, n: usize, tuple: &[usize], points: &[RadialPoint]) -> Result<Option<RadialPoint>> {
    check_points(points.len())?;
    let oracle = ClassicalOracle::new(n, spec.model, points)?;
    let residual = spec.build(n, tuple).residual();
    Ok(oracle.first_nonzero(&residual, spec.zero_a)?.map(|k| points[k].clone()))
}

/// Operator trees for one model, applied to test functions.
pub struct QuantumOracle {
    full: Generators<OpAlgebra>,
    zero_a: Generators<OpAlgebra>,
    points: Vec<RadialPoint>,
    evals: Vec<EvalPoint>,
    testfns: Vec<TestFunction>,
}

impl QuantumOracle {
    pub fn new(n: usize, model: Model, points: Vec<RadialPoint>, testfns: Vec<TestFunction>) -> Result<Self> {
        let cfg = ModelConfig::new(n, Frame::Quantum, model)?;
        let full = Generators::new(OpAlgebra { space: cfg.space()? }, cfg)?;
        let zero_a = full.with_zero_a();
        let evals = points.iter().map(RadialPoint::to_eval).collect();
        Ok(QuantumOracle { full, zero_a, points, evals, testfns })
    }

    /// First `(test function, point)` where the operator `term` acts nontrivially.
    pub fn first_nonzero(&self, term: &Term, zero_a: bool) -> Result<Option<(TestFunction, RadialPoint)>> {
        let g = if zero_a { &self.zero_a } else { &self.full };
        let op = term.eval(g)?;
        let space = g.alg().space();
        let mut applier = Applier::new(space, &self.evals);
        for tf in &self.testfns {
            let out = applier.apply(&op, &tf.to_expr(space)?)?;
            for (pt, ev) in self.points.iter().zip(&self.evals) {
                if !out.eval(ev)?.is_zero() {
                    return Ok(Some((tf.clone(), pt.clone())));
                }
            }
        }
        Ok(None)
    }
}

/// A seeded selection of test functions `x^gamma r^s` with `s` in `-3..=3`.
pub fn pick_test_functions(n: usize, count: usize, seed: u64) -> Vec<TestFunction> {
    let mut all = TestFunction::grid(n, -3..=3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7e57);
    all.shuffle(&mut rng);
    all.truncate(count);
    all
}

fn describe_point(p: &RadialPoint) -> String {
    format!("nonzero at x={:?} p={:?} r={}", p.x, p.p, p.r)
}

/// Run the oracle over a whole catalog: jets for the classical frame,
/// operator application for the quantum frame.
pub fn oracle_sweep(frame: Frame, model: Model, n: usize, opts: &OracleOptions) -> Result<Vec<VerifyReport>> {
    check_points(opts.points)?;
    let specs = catalog(frame, model);
    let points = sample_radial_points(n, opts.points, opts.seed, POINT_BOUND)?;
    let heads: Vec<_> = specs.iter().map(|s| (format!("oracle.{}", s.id), s.anchor.to_string(), s.arity)).collect();
    let keys: Vec<_> = specs.iter().map(|s| (s.id.clone(), s.arity)).collect();
    let sweep = &opts.sweep;
    let (per_spec, jobs) = plan(&keys, n, sweep);
    let outcomes = match frame {
        Frame::Classical => {
            let oracle = ClassicalOracle::new(n, model, &points)?;
            par_map(&jobs, sweep.parallel, |job| {
                timed(sweep.timings, || {
                    let spec = &specs[job.spec];
                    let residual = spec.build(n, &job.tuple).residual();
                    Ok(oracle.first_nonzero(&residual, spec.zero_a)?.map(|k| describe_point(oracle.point(k))))
                })
            })
        }
        Frame::Quantum => {
            let testfns = pick_test_functions(n, opts.test_functions, opts.seed);
            let oracle = QuantumOracle::new(n, model, points, testfns)?;
            par_map(&jobs, sweep.parallel, |job| {
                timed(sweep.timings, || {
                    let spec = &specs[job.spec];
                    let residual = spec.build(n, &job.tuple).residual();
                    Ok(oracle
                        .first_nonzero(&residual, spec.zero_a)?
                        .map(|(tf, p)| clip(format!("{} on psi = x^{:?} r^{}", describe_point(&p), tf.gamma, tf.s))))
                })
            })
        }
    };
    Ok(collect(&heads, n, sweep, &per_spec, &jobs, outcomes))
}

#[derive(Clone, Debug, Serialize)]
pub struct Mutation {
    pub id: String,
    pub tuple: Vec<usize>,
    /// Index of the deleted summand of `lhs - rhs`.
    pub dropped: usize,
    pub caught: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MutationReport {
    pub attempted: usize,
    pub caught: usize,
    pub rate: f64,
    pub mutations: Vec<Mutation>,
}

/// Delete one summand from randomly chosen classical relation instances
/// and count how often the jet oracle notices.
pub fn mutation_control(n: usize, count: usize, points: usize, seed: u64, parallel: bool) -> Result<MutationReport> {
    check_points(points)?;
    let pts = sample_radial_points(n, points, seed, POINT_BOUND)?;
    let models = [Model::Generic, Model::Sw, Model::Kc];
    let oracles = models.iter().map(|&m| ClassicalOracle::new(n, m, &pts)).collect::<Result<Vec<_>>>()?;
    let mut pool = Vec::new();
    for (mi, &model) in models.iter().enumerate() {
        for spec in catalog(Frame::Classical, model) {
            if spec.arity > n {
                continue;
            }
            for tuple in crate::relations::all_tuples(n, spec.arity) {
                let parts = spec.build(n, &tuple).residual().summands().len();
                if parts >= 2 {
                    pool.push((mi, spec.clone(), tuple, parts));
                }
            }
        }
    }
    if pool.is_empty() {
        return Err(Error::Config(format!("no relation with two or more summands at n = {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6d75_7461);
    let picks: Vec<_> = (0..count)
        .map(|_| {
            let (mi, spec, tuple, parts) = &pool[rng.gen_range(0..pool.len())];
            (*mi, spec.clone(), tuple.clone(), rng.gen_range(0..*parts))
        })
        .collect();
    let results = par_map(&picks, parallel, |(mi, spec, tuple, drop)| -> Result<Mutation> {
        let mut parts = spec.build(n, tuple).residual().summands();
        parts.remove(*drop);
        let caught = oracles[*mi].first_nonzero(&Term::Sum(parts), spec.zero_a)?.is_some();
        Ok(Mutation { id: spec.id.clone(), tuple: tuple.clone(), dropped: *drop, caught })
    });
    let mutations = results.into_iter().collect::<Result<Vec<_>>>()?;
    let caught = mutations.iter().filter(|m| m.caught).count();
    let attempted = mutations.len();
    Ok(MutationReport { attempted, caught, rate: if attempted == 0 { 0.0 } else { caught as f64 / attempted as f64 }, mutations })
}

/// One family of integrals whose Jacobian rank is checked.
#[derive(Clone, Debug, Serialize)]
pub struct IndependenceReport {
    pub model: Model,
    pub n: usize,
    pub set: String,
    pub size: usize,
    #[serde(flatten)]
    pub rank: RankReport,
}

/// Left and right Casimirs, plus `H` and one extra integral for SW and KC.
pub fn integral_set(model: Model, n: usize) -> Result<(String, Vec<crate::phase::PhaseExpr>, usize)> {
    let cfg = ModelConfig::new(n, Frame::Classical, model)?;
    let g = Generators::new(PhaseAlgebra { space: cfg.space()? }, cfg)?;
    let mut set = Vec::new();
    for m in 1..=n {
        set.push(g.casimir_left(m)?);
        set.push(g.casimir_right(m)?);
    }
    Ok(match model {
        Model::Generic => ("left and right Casimirs".into(), set, 2 * n - 3),
        Model::Sw => {
            set.push(g.h()?);
            set.push(g.h_i(1)?);
            ("Casimirs, H, H_1".into(), set, 2 * n - 1)
        }
        Model::Kc => {
            set.push(g.h()?);
            set.push(g.r_i(1)?);
            ("Casimirs, H, R_1".into(), set, 2 * n - 1)
        }
    })
}

/// Jacobian rank of the model's integral set, maximised over sampled points.
pub fn independence(model: Model, n: usize, points: &[RadialPoint]) -> Result<IndependenceReport> {
    check_points(points.len())?;
    let (label, set, expected) = integral_set(model, n)?;
    let rank = max_rank(&set, points, expected)?;
    Ok(IndependenceReport { model, n, set: label, size: set.len(), rank })
}
