//! Exact verification sweeps over the relation catalog.

use std::time::Instant;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::catalog::{catalog, full_catalog, RelationSpec};
use super::term::{self, Term};
use crate::algebra::{LieAlgebra, PhaseAlgebra, WeylAlgebra};
use crate::error::{Error, Result};
use crate::exec::par_map;
use crate::generators::{Frame, Generators, Model, ModelConfig, Side};
use crate::phase::PhaseExpr;
use crate::weyl::WeylExpr;

/// Residuals longer than this are cut in reports.
const RESIDUAL_CHARS: usize = 2000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IndexMode {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Failure {
    pub tuple: Vec<usize>,
    /// Printed residual, or the error that stopped the instance.
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub id: String,
    pub anchor: String,
    pub n: usize,
    pub mode: IndexMode,
    pub instances: usize,
    pub passed: usize,
    pub status: Status,
    pub skipped: Option<String>,
    pub failures: Vec<Failure>,
    /// Summed instance time; `None` unless timings were requested.
    pub millis: Option<u64>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SweepOptions {
    /// `None` picks exhaustive for `n <= 4` and sampled otherwise.
    pub mode: Option<IndexMode>,
    /// Tuples per relation in sampled mode.
    pub samples: usize,
    pub seed: u64,
    pub parallel: bool,
    pub timings: bool,
    /// Override the potential tower depth.
    pub tower: Option<usize>,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions { mode: None, samples: 20, seed: 0, parallel: true, timings: false, tower: None }
    }
}

impl SweepOptions {
    pub fn resolve_mode(&self, n: usize) -> IndexMode {
        self.mode.unwrap_or(if n <= 4 { IndexMode::Exhaustive } else { IndexMode::Sampled })
    }
}

/// 64-bit FNV-1a, used to derive per-relation seeds.
pub(crate) fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// Number of ordered tuples of `k` distinct indices from `1..=n`.
pub fn tuple_count(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (n - k + 1..=n).product()
}

/// All ordered tuples of `k` distinct indices, lexicographically.
pub fn all_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in 1..=n {
            if !cur.contains(&i) {
                cur.push(i);
                go(n, k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// The `rank`-th tuple in a mixed-radix enumeration of distinct tuples.
fn decode_tuple(n: usize, k: usize, mut rank: usize) -> Vec<usize> {
    let mut free: Vec<usize> = (1..=n).collect();
    let mut out = Vec::with_capacity(k);
    for pos in 0..k {
        let base = n - pos;
        out.push(free.remove(rank % base));
        rank /= base;
    }
    out
}

/// Tuples to check for a relation of the given arity.
pub fn select_tuples(id: &str, n: usize, arity: usize, mode: IndexMode, samples: usize, seed: u64) -> Vec<Vec<usize>> {
    let total = tuple_count(n, arity);
    if mode == IndexMode::Exhaustive || total <= samples {
        return all_tuples(n, arity);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fnv1a(id));
    let mut picked: Vec<Vec<usize>> = sample(&mut rng, total, samples).into_iter().map(|r| decode_tuple(n, arity, r)).collect();
    picked.sort();
    picked
}

/// Exact zero test and printing for a symbolic kernel.
pub trait Exact: LieAlgebra + Clone {
    fn is_zero(&self, e: &Self::Elem) -> bool;
    fn render(&self, e: &Self::Elem) -> String;
}

impl Exact for PhaseAlgebra {
    fn is_zero(&self, e: &PhaseExpr) -> bool {
        e.is_zero()
    }
    fn render(&self, e: &PhaseExpr) -> String {
        e.to_string()
    }
}

impl Exact for WeylAlgebra {
    fn is_zero(&self, e: &WeylExpr) -> bool {
        e.wis_zero()
    }
    fn render(&self, e: &WeylExpr) -> String {
        e.to_string()
    }
}

pub(crate) fn clip(mut s: String) -> String {
    if s.len() > RESIDUAL_CHARS {
        let mut cut = RESIDUAL_CHARS;
        while !s.is_char_boundary(cut) {
            cut -= 1;
        }
        s.truncate(cut);
        s.push_str(" + ...");
    }
    s
}

/// A generator catalog together with its `a = 0` specialisation.
pub struct KernelGens<A: Exact> {
    pub full: Generators<A>,
    pub zero_a: Generators<A>,
}

impl<A: Exact> KernelGens<A> {
    pub fn new(alg: A, cfg: ModelConfig) -> Result<Self> {
        let full = Generators::new(alg, cfg)?;
        let zero_a = full.with_zero_a();
        Ok(KernelGens { full, zero_a })
    }

    pub fn pick(&self, zero_a: bool) -> &Generators<A> {
        if zero_a {
            &self.zero_a
        } else {
            &self.full
        }
    }

    /// `Ok(None)` when the residual is exactly zero.
    pub fn residual(&self, spec: &RelationSpec, tuple: &[usize]) -> Result<Option<String>> {
        let g = self.pick(spec.zero_a);
        let sides = spec.build(g.n(), tuple);
        let res = sides.residual().eval(g)?;
        let alg = g.alg();
        Ok(if alg.is_zero(&res) { None } else { Some(clip(alg.render(&res))) })
    }
}

fn config(n: usize, frame: Frame, model: Model, tower: Option<usize>) -> Result<ModelConfig> {
    let cfg = ModelConfig::new(n, frame, model)?;
    match tower {
        Some(k) => cfg.with_tower(k),
        None => Ok(cfg),
    }
}

enum Kernel {
    Classical(KernelGens<PhaseAlgebra>),
    Quantum(KernelGens<WeylAlgebra>),
}

impl Kernel {
    fn new(n: usize, frame: Frame, model: Model, tower: Option<usize>) -> Result<Kernel> {
        let cfg = config(n, frame, model, tower)?;
        let space = cfg.space()?;
        Ok(match frame {
            Frame::Classical => Kernel::Classical(KernelGens::new(PhaseAlgebra { space }, cfg)?),
            Frame::Quantum => Kernel::Quantum(KernelGens::new(WeylAlgebra { space }, cfg)?),
        })
    }

    fn residual(&self, spec: &RelationSpec, tuple: &[usize]) -> Result<Option<String>> {
        match self {
            Kernel::Classical(k) => k.residual(spec, tuple),
            Kernel::Quantum(k) => k.residual(spec, tuple),
        }
    }
}

pub(crate) type Outcome = (Result<Option<String>>, u64);

pub(crate) fn timed<F: FnOnce() -> Result<Option<String>>>(timings: bool, f: F) -> Outcome {
    let start = timings.then(Instant::now);
    let r = f();
    (r, start.map_or(0, |s| s.elapsed().as_millis() as u64))
}

pub(crate) struct Job {
    pub spec: usize,
    pub tuple: Vec<usize>,
}

pub(crate) fn plan(specs: &[(String, usize)], n: usize, opts: &SweepOptions) -> (Vec<Vec<Vec<usize>>>, Vec<Job>) {
    let mode = opts.resolve_mode(n);
    let mut per_spec = Vec::with_capacity(specs.len());
    let mut jobs = Vec::new();
    for (s, (id, arity)) in specs.iter().enumerate() {
        let tuples = select_tuples(id, n, *arity, mode, opts.samples, opts.seed);
        for t in &tuples {
            jobs.push(Job { spec: s, tuple: t.clone() });
        }
        per_spec.push(tuples);
    }
    (per_spec, jobs)
}

pub(crate) fn collect(
    heads: &[(String, String, usize)],
    n: usize,
    opts: &SweepOptions,
    per_spec: &[Vec<Vec<usize>>],
    jobs: &[Job],
    outcomes: Vec<Outcome>,
) -> Vec<VerifyReport> {
    let mode = opts.resolve_mode(n);
    let mut reports: Vec<VerifyReport> = heads
        .iter()
        .zip(per_spec)
        .map(|((id, anchor, arity), tuples)| VerifyReport {
            id: id.clone(),
            anchor: anchor.clone(),
            n,
            mode,
            instances: tuples.len(),
            passed: 0,
            status: Status::Pass,
            skipped: (*arity > n).then(|| format!("needs n >= {arity}")),
            failures: Vec::new(),
            millis: opts.timings.then_some(0),
        })
        .collect();
    for (job, (result, ms)) in jobs.iter().zip(outcomes) {
        let rep = &mut reports[job.spec];
        if let Some(t) = rep.millis.as_mut() {
            *t += ms;
        }
        match result {
            Ok(None) => rep.passed += 1,
            Ok(Some(residual)) => {
                if rep.status != Status::Error {
                    rep.status = Status::Fail;
                }
                rep.failures.push(Failure { tuple: job.tuple.clone(), residual });
            }
            Err(e) => {
                rep.status = Status::Error;
                rep.failures.push(Failure { tuple: job.tuple.clone(), residual: e.to_string() });
            }
        }
    }
    for rep in &mut reports {
        if rep.skipped.is_some() {
            rep.status = Status::Skipped;
        }
    }
    reports
}

/// Verify the given relations (all of one frame and model) at size `n`.
pub fn verify_specs(specs: &[RelationSpec], n: usize, opts: &SweepOptions) -> Result<Vec<VerifyReport>> {
    let Some(first) = specs.first() else { return Ok(Vec::new()) };
    if specs.iter().any(|s| s.frame != first.frame || s.model != first.model) {
        return Err(Error::Config("a sweep must stay within one frame and model".into()));
    }
    let kernel = Kernel::new(n, first.frame, first.model, opts.tower)?;
    let heads: Vec<_> = specs.iter().map(|s| (s.id.clone(), s.anchor.to_string(), s.arity)).collect();
    let keys: Vec<_> = specs.iter().map(|s| (s.id.clone(), s.arity)).collect();
    let (per_spec, jobs) = plan(&keys, n, opts);
    let outcomes = par_map(&jobs, opts.parallel, |job| timed(opts.timings, || kernel.residual(&specs[job.spec], &job.tuple)));
    Ok(collect(&heads, n, opts, &per_spec, &jobs, outcomes))
}

/// Verify the whole catalog of one frame and model.
pub fn verify_all(frame: Frame, model: Model, n: usize, opts: &SweepOptions) -> Result<Vec<VerifyReport>> {
    verify_specs(&catalog(frame, model), n, opts)
}

/// Look up a relation by id in every catalog.
pub fn find_spec(id: &str) -> Option<RelationSpec> {
    [Model::Generic, Model::Sw, Model::Kc].into_iter().flat_map(full_catalog).find(|s| s.id == id)
}

/// Verify one relation by id.
pub fn verify(id: &str, n: usize, opts: &SweepOptions) -> Result<VerifyReport> {
    let spec = find_spec(id).ok_or_else(|| Error::Config(format!("unknown relation id {id:?}")))?;
    Ok(verify_specs(&[spec], n, opts)?.remove(0))
}

type TermFn = fn(&[usize]) -> Term;

/// Generators compared under the classical limit: name, arity, quantum and
/// classical term.
fn limit_generators(model: Model) -> Vec<(&'static str, usize, TermFn, TermFn)> {
    let mut v: Vec<(&'static str, usize, TermFn, TermFn)> = vec![
        ("L", 2, |t| term::l(t[0], t[1]), |t| term::l(t[0], t[1])),
        ("P", 2, |t| term::p(t[0], t[1]), |t| term::p(t[0], t[1])),
        ("C", 1, |t| term::c(t[0]), |t| term::c(t[0])),
        ("Cij", 2, |t| term::cij(t[0], t[1]), |t| term::cij(t[0], t[1])),
        ("F", 3, |t| term::f(t[0], t[1], t[2]), |t| term::f(t[0], t[1], t[2])),
        ("J+", 1, |t| term::jp(t[0], Side::Left), |t| term::jp(t[0], Side::Left)),
        ("J-", 1, |t| term::jm(t[0], Side::Left), |t| term::jm(t[0], Side::Left)),
        ("J3", 1, |t| term::j3(t[0], Side::Left), |t| term::j3(t[0], Side::Left)),
        ("J3_right", 1, |t| term::j3(t[0], Side::Right), |t| term::j3(t[0], Side::Right)),
        ("casimir_left", 1, |t| term::cas(t[0], Side::Left), |t| term::cas(t[0], Side::Left)),
        ("casimir_right", 1, |t| term::cas(t[0], Side::Right), |t| term::cas(t[0], Side::Right)),
        ("L2", 0, |_| term::lsq(), |_| term::lsq()),
        ("H", 0, |_| term::h(), |_| term::h()),
    ];
    match model {
        Model::Generic => {}
        Model::Sw => {
            v.push(("H_i", 1, |t| term::hi(t[0]), |t| term::hi(t[0])));
            v.push(("G", 2, |t| term::g(t[0], t[1]), |t| term::g(t[0], t[1])));
        }
        Model::Kc => {
            v.push(("R", 1, |t| term::r(t[0]), |t| term::r(t[0])));
            v.push(("R_compact", 1, |t| term::rc(t[0]), |t| term::r(t[0])));
            v.push(("A", 1, |t| term::lrl(t[0]), |t| term::lrl(t[0])));
            v.push(("G", 2, |t| term::g(t[0], t[1]), |t| term::g(t[0], t[1])));
        }
    }
    v
}

struct LimitKernels {
    quantum: KernelGens<WeylAlgebra>,
    classical: KernelGens<PhaseAlgebra>,
}

impl LimitKernels {
    /// `lim(q / (i hbar)^div) - c`, or `None` if it vanishes.
    fn compare(&self, q: &Term, c: &Term, div: bool, zero_a: bool) -> Result<Option<String>> {
        let mut qv = q.eval(self.quantum.pick(zero_a))?;
        if div {
            qv = qv.div_ihbar()?;
        }
        let cv = c.eval(self.classical.pick(zero_a))?;
        let diff = qv.classical_limit().try_sub(&cv)?;
        Ok(if diff.is_zero() { None } else { Some(clip(diff.to_string())) })
    }
}

/// Check that every quantum generator and relation of a model reduces to
/// its classical counterpart as `hbar -> 0`.
pub fn limit_sweep(model: Model, n: usize, opts: &SweepOptions) -> Result<Vec<VerifyReport>> {
    let qcfg = config(n, Frame::Quantum, model, opts.tower)?;
    let ccfg = ModelConfig::new(n, Frame::Classical, model)?.with_tower(qcfg.tower)?;
    let kernels = LimitKernels {
        quantum: KernelGens::new(WeylAlgebra { space: qcfg.space()? }, qcfg)?,
        classical: KernelGens::new(PhaseAlgebra { space: ccfg.space()? }, ccfg)?,
    };

    let gens = limit_generators(model);
    let quantum = catalog(Frame::Quantum, model);
    let classical = catalog(Frame::Classical, model);
    let mut pairs = Vec::new();
    for q in &quantum {
        let cid = q.classical_id().expect("quantum spec");
        let c = classical
            .iter()
            .find(|c| c.id == cid)
            .ok_or_else(|| Error::Config(format!("{} has no classical counterpart", q.id)))?;
        pairs.push((q, c));
    }

    let mut heads = Vec::new();
    let mut keys = Vec::new();
    for (name, arity, _, _) in &gens {
        let id = format!("limit.generator.{name}");
        heads.push((id.clone(), format!("lim {name} = classical {name}"), *arity));
        keys.push((id, *arity));
    }
    for (q, c) in &pairs {
        let id = format!("limit.{}", q.id);
        let anchor = if q.kind.is_bracket() { format!("lim (quantum side)/(i hbar) = {}", c.id) } else { format!("lim (quantum side) = {}", c.id) };
        heads.push((id.clone(), anchor, q.arity));
        keys.push((id, q.arity));
    }
    let (per_spec, jobs) = plan(&keys, n, opts);
    let outcomes = par_map(&jobs, opts.parallel, |job| {
        timed(opts.timings, || {
            let t = &job.tuple;
            if job.spec < gens.len() {
                let (_, _, qf, cf) = gens[job.spec];
                return kernels.compare(&qf(t), &cf(t), false, false);
            }
            let (q, c) = pairs[job.spec - gens.len()];
            let (qs, cs) = (q.build(n, t), c.build(n, t));
            let div = q.kind.is_bracket();
            if let Some(r) = kernels.compare(&qs.lhs, &cs.lhs, div, q.zero_a)? {
                return Ok(Some(format!("lhs: {r}")));
            }
            Ok(kernels.compare(&qs.rhs, &cs.rhs, div, q.zero_a)?.map(|r| format!("rhs: {r}")))
        })
    });
    Ok(collect(&heads, n, opts, &per_spec, &jobs, outcomes))
}

/// Evaluate a relation's residual in a caller-supplied algebra.
pub fn residual_in<A: LieAlgebra>(spec: &RelationSpec, gens: &Generators<A>, tuple: &[usize]) -> Result<A::Elem> {
    spec.build(gens.n(), tuple).residual().eval(gens)
}
