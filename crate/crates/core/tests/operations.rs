//! Worked examples for generators, relations and oracles.

use racah_core::oracle::{
    independence_rank, numeric_identity_check, operator_apply_check, sample_radial_points, QuantumOracle, RadialPoint, TestFunction,
};
use racah_core::relations::{self, find_spec, IndexMode, Status, SweepOptions};
use racah_core::{
    Frame, Generators, Model, ModelConfig, Param, ParamScalar, PhaseAlgebra, PhaseExpr, Side, Space, WeylAlgebra, WeylExpr,
};

fn classical(n: usize, model: Model) -> Generators<PhaseAlgebra> {
    let cfg = ModelConfig::new(n, Frame::Classical, model).unwrap();
    Generators::new(PhaseAlgebra { space: cfg.space().unwrap() }, cfg).unwrap()
}

/// Classical generators on the same space as `q`, so limits compare directly.
fn classical_like(q: &Generators<WeylAlgebra>, model: Model) -> Generators<PhaseAlgebra> {
    let space = q.alg().space;
    let cfg = ModelConfig::new(space.n(), Frame::Classical, model).unwrap().with_tower(space.tower()).unwrap();
    Generators::new(PhaseAlgebra { space: cfg.space().unwrap() }, cfg).unwrap()
}

fn quantum(n: usize, model: Model) -> Generators<WeylAlgebra> {
    let cfg = ModelConfig::new(n, Frame::Quantum, model).unwrap();
    Generators::new(WeylAlgebra { space: cfg.space().unwrap() }, cfg).unwrap()
}

fn ihbar(space: Space) -> WeylExpr {
    WeylExpr::constant(space, &ParamScalar::i().mul(&ParamScalar::param(Param::Hbar)))
}

fn wzero(e: &WeylExpr) -> bool {
    e.wis_zero()
}

#[test]
fn central_elements_and_p_definition() {
    for n in [3, 4] {
        let c = classical(n, Model::Generic);
        let q = quantum(n, Model::Generic);
        for (i, j) in [(1, 2), (2, 3), (3, 1)] {
            let cl = c.c_ij(i, j).unwrap().try_sub(&c.c_const(i).unwrap()).unwrap().try_sub(&c.c_const(j).unwrap()).unwrap();
            assert!(c.p(i, j).unwrap().equivalent(&cl).unwrap());
            let qu = q.c_ij(i, j).unwrap().try_sub(&q.c_const(i).unwrap()).unwrap().try_sub(&q.c_const(j).unwrap()).unwrap();
            assert!(wzero(&q.p(i, j).unwrap().try_sub(&qu).unwrap()));
        }
    }
    let c = classical(3, Model::Generic);
    let s = c.alg().space;
    assert!(c.c_const(2).unwrap().equivalent(&PhaseExpr::parse(s, "-1/4 * a2").unwrap()).unwrap());
    let q = quantum(3, Model::Generic);
    let expected = WeylExpr::parse(q.alg().space, "3/16 * hbar^2 + -1/4 * a2").unwrap();
    assert!(wzero(&q.c_const(2).unwrap().try_sub(&expected).unwrap()));
}

#[test]
fn three_index_generators() {
    let c = classical(3, Model::Generic);
    assert!((&c.f(1, 2, 3).unwrap() + &c.f(2, 1, 3).unwrap()).is_zero());
    let q = quantum(3, Model::Generic);
    let space = q.alg().space;
    let lhs = q.f(1, 2, 3).unwrap().wmul(&ihbar(space)).unwrap().scale_int(2);
    let rhs = q.p(1, 2).unwrap().commutator(&q.p(2, 3).unwrap()).unwrap();
    assert!(wzero(&lhs.try_sub(&rhs).unwrap()));
    let c = classical_like(&q, Model::Generic);
    assert!(q.f(1, 2, 3).unwrap().classical_limit().equivalent(&c.f(1, 2, 3).unwrap()).unwrap());
}

#[test]
fn sl2_realisations() {
    let n = 4;
    let c = classical(n, Model::Generic);
    let br = c.j_minus(n, Side::Left).unwrap().poisson(&c.j_plus(n, Side::Left).unwrap()).unwrap();
    assert!(br.equivalent(&c.j3(n, Side::Left).unwrap().scale_int(2)).unwrap());
    let q = quantum(n, Model::Generic);
    let space = q.alg().space;
    let j3 = q.j3(n, Side::Left).unwrap();
    let jp = q.j_plus(n, Side::Left).unwrap();
    let lhs = j3.commutator(&jp).unwrap();
    assert!(wzero(&lhs.try_sub(&ihbar(space).wmul(&jp).unwrap()).unwrap()));
    let c1 = classical(3, Model::Generic);
    let expected = PhaseExpr::parse(c1.alg().space, "1/2 * x1 * p1").unwrap();
    assert!(c1.j3(1, Side::Left).unwrap().equivalent(&expected).unwrap());
}

#[test]
fn casimirs() {
    let c = classical(3, Model::Generic);
    let s = c.alg().space;
    assert!(c.casimir_left(1).unwrap().equivalent(&PhaseExpr::parse(s, "-1/4 * a1").unwrap()).unwrap());
    let q = quantum(3, Model::Generic);
    let one = WeylExpr::parse(q.alg().space, "3/16 * hbar^2 + -1/4 * a1").unwrap();
    assert!(wzero(&q.casimir_left(1).unwrap().try_sub(&one).unwrap()));
    for n in 3..=5 {
        let c = classical(n, Model::Generic);
        assert!(c.casimir_left(n).unwrap().equivalent(&c.casimir_right(n).unwrap()).unwrap());
        let q = quantum(n, Model::Generic);
        assert!(wzero(&q.casimir_left(n).unwrap().try_sub(&q.casimir_right(n).unwrap()).unwrap()));
    }
}

#[test]
fn hamiltonians_and_fourth_order_integrals() {
    let c = classical(3, Model::Sw);
    let total = (1..=3).fold(PhaseExpr::zero(c.alg().space), |acc, i| &acc + &c.h_i(i).unwrap());
    assert!(c.h().unwrap().equivalent(&total).unwrap());

    let kc = classical(3, Model::Kc).with_zero_a();
    for i in 1..=3 {
        let a = kc.lrl(i).unwrap();
        assert!(kc.r_i(i).unwrap().equivalent(&a.try_mul(&a).unwrap()).unwrap());
    }

    let g = classical(3, Model::Generic);
    assert!(g.p(1, 2).unwrap().poisson(&g.h().unwrap()).unwrap().is_zero());
}

#[test]
fn two_index_generators() {
    let sw = classical(3, Model::Sw);
    assert!((&sw.g(2, 1).unwrap() + &sw.g(1, 2).unwrap()).is_zero());
    let q = quantum(3, Model::Kc);
    let space = q.alg().space;
    let lhs = q.g(1, 2).unwrap().wmul(&ihbar(space)).unwrap().scale_int(2);
    let rhs = q.r_i(1).unwrap().commutator(&q.p(1, 2).unwrap()).unwrap();
    assert!(wzero(&lhs.try_sub(&rhs).unwrap()));
    let qsw = quantum(3, Model::Sw);
    let sw = classical_like(&qsw, Model::Sw);
    assert!(qsw.g(1, 2).unwrap().classical_limit().equivalent(&sw.g(1, 2).unwrap()).unwrap());
}

#[test]
fn catalog_operators_are_formally_hermitian() {
    for model in [Model::Generic, Model::Sw, Model::Kc] {
        let q = quantum(3, model);
        let mut ops = vec![
            ("L12", q.l(1, 2)),
            ("P12", q.p(1, 2)),
            ("F123", q.f(1, 2, 3)),
            ("C12", q.c_ij(1, 2)),
            ("H", q.h()),
            ("J+", q.j_plus(3, Side::Left)),
            ("J-", q.j_minus(3, Side::Left)),
            ("J3", q.j3(3, Side::Left)),
            ("C(3)", q.casimir_left(3)),
        ];
        match model {
            Model::Sw => ops.extend([("H1", q.h_i(1)), ("G12", q.g(1, 2))]),
            Model::Kc => ops.extend([("R1", q.r_i(1)), ("Rc1", q.r_compact(1)), ("G12", q.g(1, 2))]),
            Model::Generic => {}
        }
        for (name, op) in ops {
            assert!(op.unwrap().is_hermitian().unwrap(), "{model} {name}");
        }
    }
}

#[test]
fn commuting_quantum_pair() {
    let q = quantum(4, Model::Generic);
    assert!(wzero(&q.p(1, 2).unwrap().commutator(&q.p(3, 4).unwrap()).unwrap()));
}

#[test]
fn classical_limit_examples() {
    let q = quantum(3, Model::Generic);
    let c = classical_like(&q, Model::Generic);
    let lim = q.j_minus(1, Side::Left).unwrap().commutator(&q.j_plus(1, Side::Left).unwrap()).unwrap().div_ihbar().unwrap();
    let br = c.j_minus(1, Side::Left).unwrap().poisson(&c.j_plus(1, Side::Left).unwrap()).unwrap();
    assert!(lim.classical_limit().equivalent(&br).unwrap());

    let s = q.alg().space;
    let w = |t: &str| WeylExpr::parse(s, t).unwrap();
    let p = |t: &str| PhaseExpr::parse(s, t).unwrap();
    let anti = w("x1").anticommutator(&w("p1")).unwrap().classical_limit().scale(racah_core::Rational::new(1, 2));
    assert!(anti.equivalent(&p("x1 * p1")).unwrap());
    let sym = WeylExpr::symmetrize3(&w("x1"), &w("x2"), &w("p1")).unwrap().classical_limit().scale(racah_core::Rational::new(1, 6));
    assert!(sym.equivalent(&p("x1 * x2 * p1")).unwrap());
}

fn status_of(id: &str, n: usize, mode: IndexMode) -> relations::VerifyReport {
    relations::verify(id, n, &SweepOptions { mode: Some(mode), ..SweepOptions::default() }).unwrap()
}

#[test]
fn single_relation_verification() {
    let r = status_of("racah.classical.PP_F", 3, IndexMode::Exhaustive);
    assert_eq!((r.status, r.instances), (Status::Pass, 6));
    assert!(status_of("kc.classical.RR", 3, IndexMode::Exhaustive).passed());
    assert!(status_of("racah.quantum.ho1", 3, IndexMode::Exhaustive).passed());
}

#[test]
fn catalog_verification() {
    let sampled = SweepOptions { mode: Some(IndexMode::Sampled), samples: 20, seed: 1, ..SweepOptions::default() };
    let all = relations::verify_all(Frame::Classical, Model::Generic, 5, &sampled).unwrap();
    // Arity-6 relations need n >= 6 and are skipped here.
    let ran: Vec<_> = all.iter().filter(|r| r.status != Status::Skipped).collect();
    assert!(!ran.is_empty());
    assert!(ran.iter().all(|r| r.passed()), "{:?}", ran.iter().filter(|r| !r.passed()).collect::<Vec<_>>());
    assert!(all.iter().all(|r| r.status != Status::Skipped || find_spec(&r.id).unwrap().arity > 5));

    let all = relations::verify_all(Frame::Quantum, Model::Sw, 3, &SweepOptions::default()).unwrap();
    assert!(all.iter().all(|r| r.passed() || r.status == Status::Skipped));

    for r in relations::verify_all(Frame::Classical, Model::Kc, 2, &SweepOptions::default()).unwrap() {
        let spec = find_spec(&r.id).unwrap();
        let expected = if spec.arity > 2 { Status::Skipped } else { Status::Pass };
        assert_eq!(r.status, expected, "{}", r.id);
    }
}

#[test]
fn limit_examples() {
    for model in [Model::Generic, Model::Kc] {
        let reports = relations::limit_sweep(model, 3, &SweepOptions::default()).unwrap();
        for id in ["limit.generator.P", "limit.generator.C"] {
            let r = reports.iter().find(|r| r.id == id).unwrap();
            assert!(r.passed(), "{model} {id}");
        }
        if model == Model::Kc {
            assert!(reports.iter().find(|r| r.id == "limit.generator.R_compact").unwrap().passed());
        }
    }
    // Before truncation the quantum P differs from the classical one by hbar^2 terms.
    let q = quantum(3, Model::Generic);
    let c = classical_like(&q, Model::Generic);
    let diff = WeylExpr::from_phase(&c.p(1, 2).unwrap()).try_sub(&q.p(1, 2).unwrap()).unwrap();
    assert!(!diff.wis_zero());
    assert!(diff.terms().iter().all(|(m, _)| m.param_exp(Param::Hbar) > 0));
}

#[test]
fn numeric_identity_examples() {
    let points = sample_radial_points(3, 25, 0, 9).unwrap();
    let ho1 = find_spec("racah.classical.ho1").unwrap();
    assert_eq!(numeric_identity_check(&ho1, 3, &[1, 2, 3], &points).unwrap(), None);

    let points4 = sample_radial_points(4, 25, 0, 9).unwrap();
    let funrel = find_spec("kc.classical.funrel").unwrap();
    assert_eq!(numeric_identity_check(&funrel, 4, &[], &points4).unwrap(), None);
}

#[test]
fn operator_application_examples() {
    let s = Space::new(3, 0).unwrap();
    let w = |t: &str| WeylExpr::parse(s, t).unwrap();
    let grid = TestFunction::grid(3, -3..=3);
    let points = sample_radial_points(3, 5, 0, 9).unwrap();
    let a = w("p1").wmul(&w("r^-1")).unwrap();
    let b = w("r^-1 * p1 + i * hbar * x1 * r^-3");
    assert_eq!(operator_apply_check(&a, &b, &grid, &points).unwrap(), None);
    assert_eq!(operator_apply_check(&w("x1"), &w("x1"), &grid, &points).unwrap(), None);
    // A wrong sign is caught.
    let bad = w("r^-1 * p1 + -i * hbar * x1 * r^-3");
    assert!(operator_apply_check(&a, &bad, &grid, &points).unwrap().is_some());
}

#[test]
fn quantum_relation_on_every_test_function() {
    let spec = find_spec("racah.quantum.PF_jk").unwrap();
    let points = sample_radial_points(3, 3, 0, 9).unwrap();
    let oracle = QuantumOracle::new(3, Model::Generic, points, TestFunction::grid(3, -3..=3)).unwrap();
    let residual = spec.build(3, &[1, 2, 3]).residual();
    assert_eq!(oracle.first_nonzero(&residual, spec.zero_a).unwrap(), None);
}

fn rank_of(set: &[PhaseExpr], points: &[RadialPoint]) -> usize {
    points.iter().map(|p| independence_rank(set, p).unwrap()).max().unwrap()
}

#[test]
fn rank_examples_and_monotonicity() {
    for (model, n) in [(Model::Generic, 4), (Model::Sw, 3), (Model::Kc, 3), (Model::Sw, 4), (Model::Kc, 4)] {
        let g = classical(n, model);
        let points = sample_radial_points(n, 4, 5, 9).unwrap();
        let mut set: Vec<PhaseExpr> = (1..=n).flat_map(|m| [g.casimir_left(m).unwrap(), g.casimir_right(m).unwrap()]).collect();
        let base = rank_of(&set, &points);
        assert_eq!(base, 2 * n - 3, "{model} n={n}");
        if model == Model::Generic {
            continue;
        }
        set.push(g.h().unwrap());
        assert_eq!(rank_of(&set, &points), base + 1);
        set.push(if model == Model::Sw { g.h_i(1).unwrap() } else { g.r_i(1).unwrap() });
        let full = rank_of(&set, &points);
        assert_eq!(full, base + 2);
        assert!(full <= 2 * n);
    }
}

#[test]
fn normalised_expressions_keep_r_linear() {
    let g = quantum(4, Model::Kc);
    for e in [g.h().unwrap(), g.r_i(2).unwrap(), g.g(1, 3).unwrap()] {
        assert!(e.terms().iter().all(|(m, _)| m.r_exp() <= 1));
    }
    let c = classical(4, Model::Kc);
    assert!(c.r_i(1).unwrap().terms().iter().all(|(m, _)| m.r_exp() <= 1));
}
