//! Algebraic invariants checked on random small expressions.

use proptest::prelude::*;
use racah_core::oracle::{sample_radial_points, JetAlgebra};
use racah_core::relations::{self, select_tuples, tuple_count, IndexMode, SweepOptions};
use racah_core::{Algebra, Frame, Generators, LieAlgebra, Model, ModelConfig, PhaseAlgebra, PhaseExpr, Rational, Space, WeylAlgebra};

const N: usize = 3;

/// `c x_i^a p_j^b r^e`.
type Word = (i64, usize, i32, usize, u32, i32);

fn word() -> impl Strategy<Value = Word> {
    (-4i64..=4, 1..=N, -1i32..=2, 1..=N, 0u32..=2, -2i32..=1)
}

fn poly() -> impl Strategy<Value = Vec<Word>> {
    prop::collection::vec(word(), 1..=3)
}

/// The same word list in any algebra, multiplied left to right.
fn build<A: Algebra>(alg: &A, words: &[Word]) -> A::Elem {
    let mut acc = alg.zero();
    for &(c, i, a, j, b, e) in words {
        let mut t = alg.x_pow(i, a);
        for _ in 0..b {
            t = alg.mul(&t, &alg.momentum(j)).unwrap();
        }
        t = alg.mul(&t, &alg.r_pow(e)).unwrap();
        acc = alg.add(&acc, &alg.scale(&t, Rational::from_integer(c)));
    }
    acc
}

fn space() -> Space {
    Space::new(N, 0).unwrap()
}

fn phase(words: &[Word]) -> PhaseExpr {
    build(&PhaseAlgebra { space: space() }, words)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn poisson_jacobi(f in poly(), g in poly(), h in poly()) {
        let (f, g, h) = (phase(&f), phase(&g), phase(&h));
        let cyc = &(&f.poisson(&g.poisson(&h).unwrap()).unwrap() + &g.poisson(&h.poisson(&f).unwrap()).unwrap())
            + &h.poisson(&f.poisson(&g).unwrap()).unwrap();
        prop_assert!(cyc.is_zero(), "{cyc}");
    }

    #[test]
    fn poisson_antisymmetry_and_leibniz(f in poly(), g in poly(), h in poly()) {
        let (f, g, h) = (phase(&f), phase(&g), phase(&h));
        prop_assert!((&f.poisson(&g).unwrap() + &g.poisson(&f).unwrap()).is_zero());
        let lhs = f.poisson(&g.try_mul(&h).unwrap()).unwrap();
        let rhs = &f.poisson(&g).unwrap().try_mul(&h).unwrap() + &g.try_mul(&f.poisson(&h).unwrap()).unwrap();
        prop_assert!(lhs.equivalent(&rhs).unwrap());
    }

    #[test]
    fn weyl_product_is_associative(a in poly(), b in poly(), c in poly()) {
        let alg = WeylAlgebra { space: space() };
        let (a, b, c) = (build(&alg, &a), build(&alg, &b), build(&alg, &c));
        let left = a.wmul(&b).unwrap().wmul(&c).unwrap();
        let right = a.wmul(&b.wmul(&c).unwrap()).unwrap();
        prop_assert!(left.try_sub(&right).unwrap().wis_zero());
    }

    #[test]
    fn commutator_jacobi(a in poly(), b in poly(), c in poly()) {
        let alg = WeylAlgebra { space: space() };
        let (a, b, c) = (build(&alg, &a), build(&alg, &b), build(&alg, &c));
        let br = |x: &racah_core::WeylExpr, y: &racah_core::WeylExpr| x.commutator(y).unwrap();
        let cyc = &(&br(&a, &br(&b, &c)) + &br(&b, &br(&c, &a))) + &br(&c, &br(&a, &b));
        prop_assert!(cyc.wis_zero());
    }

    /// `[A, B] / (i hbar)` reduces to the Poisson bracket as `hbar -> 0`.
    #[test]
    fn commutator_limit_is_poisson(a in poly(), b in poly()) {
        let q = WeylAlgebra { space: space() };
        let c = PhaseAlgebra { space: space() };
        let quantum = q.lie(&build(&q, &a), &build(&q, &b)).unwrap().classical_limit();
        let classical = c.lie(&build(&c, &a), &build(&c, &b)).unwrap();
        prop_assert!(quantum.equivalent(&classical).unwrap());
    }

    #[test]
    fn adjoint_is_an_involution(a in poly(), b in poly()) {
        let alg = WeylAlgebra { space: space() };
        let (a, b) = (build(&alg, &a), build(&alg, &b));
        prop_assert!(a.adjoint().unwrap().adjoint().unwrap().try_sub(&a).unwrap().wis_zero());
        // (ab)^+ = b^+ a^+
        let lhs = a.wmul(&b).unwrap().adjoint().unwrap();
        let rhs = b.adjoint().unwrap().wmul(&a.adjoint().unwrap()).unwrap();
        prop_assert!(lhs.try_sub(&rhs).unwrap().wis_zero());
    }

    /// Point evaluation is a ring homomorphism, and the jet oracle agrees
    /// with the symbolic bracket.
    #[test]
    fn evaluation_and_jets_agree(f in poly(), g in poly(), seed in 0u64..1000) {
        let point = sample_radial_points(N, 1, seed, 9).unwrap().remove(0);
        let eval = point.to_eval();
        let (pf, pg) = (phase(&f), phase(&g));
        let prod = pf.try_mul(&pg).unwrap().eval(&eval).unwrap();
        prop_assert_eq!(prod, pf.eval(&eval).unwrap().mul(&pg.eval(&eval).unwrap()));
        let jets = JetAlgebra::new(space(), point).unwrap();
        let jet = jets.lie(&build(&jets, &f), &build(&jets, &g)).unwrap();
        let symbolic = pf.poisson(&pg).unwrap().eval(&eval).unwrap();
        prop_assert_eq!(&symbolic, &racah_core::GaussianRational::real(symbolic.re.clone()));
        prop_assert_eq!(jet.value().unwrap(), &symbolic.re);
    }

    #[test]
    fn index_symmetry(i in 1usize..=5, j in 1usize..=5, k in 1usize..=5) {
        prop_assume!(i != j && j != k && i != k);
        let cfg = ModelConfig::new(5, Frame::Classical, Model::Sw).unwrap();
        let g = Generators::new(PhaseAlgebra { space: cfg.space().unwrap() }, cfg).unwrap();
        prop_assert!((&g.l(i, j).unwrap() + &g.l(j, i).unwrap()).is_zero());
        prop_assert!(g.p(i, j).unwrap().equivalent(&g.p(j, i).unwrap()).unwrap());
        prop_assert!((&g.f(i, j, k).unwrap() + &g.f(j, i, k).unwrap()).is_zero());
        prop_assert!((&g.f(i, j, k).unwrap() + &g.f(i, k, j).unwrap()).is_zero());
        prop_assert!(g.f(i, j, k).unwrap().equivalent(&g.f(j, k, i).unwrap()).unwrap());
        prop_assert!((&g.g(i, j).unwrap() + &g.g(j, i).unwrap()).is_zero());

        let qcfg = ModelConfig::new(5, Frame::Quantum, Model::Sw).unwrap();
        let q = Generators::new(WeylAlgebra { space: qcfg.space().unwrap() }, qcfg).unwrap();
        prop_assert!(q.p(i, j).unwrap().try_sub(&q.p(j, i).unwrap()).unwrap().wis_zero());
        prop_assert!(q.l(i, j).unwrap().try_add(&q.l(j, i).unwrap()).unwrap().wis_zero());
    }

    #[test]
    fn sampled_tuples_are_seeded_distinct_and_in_range(n in 2usize..=8, arity in 0usize..=5, samples in 1usize..=30, seed: u64) {
        let a = select_tuples("racah.classical.ho1", n, arity, IndexMode::Sampled, samples, seed);
        prop_assert_eq!(&a, &select_tuples("racah.classical.ho1", n, arity, IndexMode::Sampled, samples, seed));
        prop_assert_eq!(a.len(), samples.min(tuple_count(n, arity)));
        let mut seen = std::collections::HashSet::new();
        for t in &a {
            prop_assert_eq!(t.len(), arity);
            prop_assert!(t.iter().all(|&v| (1..=n).contains(&v)));
            let set: std::collections::HashSet<_> = t.iter().collect();
            prop_assert_eq!(set.len(), arity);
            prop_assert!(seen.insert(t.clone()));
        }
    }

    #[test]
    fn radial_points_are_seeded(n in 2usize..=6, seed: u64) {
        let a = sample_radial_points(n, 4, seed, 9).unwrap();
        prop_assert_eq!(&a, &sample_radial_points(n, 4, seed, 9).unwrap());
        prop_assert!(a.iter().all(|p| p.is_valid()));
    }
}

/// Quantum KC is the costly catalog, so it runs at `n = 3`.
#[test]
fn parallel_and_sequential_reports_match() {
    for model in [Model::Generic, Model::Sw, Model::Kc] {
        for frame in [Frame::Classical, Frame::Quantum] {
            let n = if model == Model::Kc && frame == Frame::Quantum { 3 } else { 5 };
            let base = SweepOptions { mode: Some(IndexMode::Sampled), samples: 4, seed: 3, ..SweepOptions::default() };
            let par = relations::verify_all(frame, model, n, &SweepOptions { parallel: true, ..base }).unwrap();
            let seq = relations::verify_all(frame, model, n, &SweepOptions { parallel: false, ..base }).unwrap();
            assert_eq!(par, seq, "{model} {frame}");
            assert!(par.iter().all(|r| r.passed() || r.skipped.is_some()), "{model} {frame}");
        }
    }
}
