//! Every relation the kernel proves, as declarative [`RelationSpec`] entries.
//!
//! Index letters in the builders follow the tuple order: a relation of arity
//! 4 binds `(i, j, k, l)` to the tuple components.

use serde::Serialize;

use super::term::*;
use crate::generators::{Frame, Model, Side};

/// The two sides of a relation; the residual is `lhs - rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct Sides {
    pub lhs: Term,
    pub rhs: Term,
}

impl Sides {
    pub fn new(lhs: Term, rhs: Term) -> Sides {
        Sides { lhs, rhs }
    }

    /// An identity of the form `lhs = 0`.
    pub fn vanishing(lhs: Term) -> Sides {
        Sides { lhs, rhs: zero() }
    }

    pub fn residual(&self) -> Term {
        self.lhs.clone() - self.rhs.clone()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Sl2,
    Casimir,
    Conservation,
    Bracket,
    /// Index (anti)symmetry of a derived generator.
    Symmetry,
    Closure,
    Functional,
}

impl Kind {
    /// Whether the quantum form is the classical one multiplied by `i hbar`.
    pub fn is_bracket(self) -> bool {
        matches!(self, Kind::Sl2 | Kind::Conservation | Kind::Bracket)
    }
}

pub type Builder = fn(usize, &[usize]) -> Sides;

#[derive(Clone)]
pub struct RelationSpec {
    pub id: String,
    pub frame: Frame,
    pub model: Model,
    /// Number of distinct indices in an instance.
    pub arity: usize,
    pub kind: Kind,
    /// Evaluate with every `a_j` set to zero.
    pub zero_a: bool,
    /// Human-readable statement of the identity.
    pub anchor: &'static str,
    builder: Builder,
}

impl std::fmt::Debug for RelationSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RelationSpec").field("id", &self.id).field("arity", &self.arity).finish()
    }
}

impl RelationSpec {
    /// Instantiate at `tuple`; panics if the tuple length differs from the arity.
    pub fn build(&self, n: usize, tuple: &[usize]) -> Sides {
        assert_eq!(tuple.len(), self.arity, "tuple length must equal the arity of {}", self.id);
        (self.builder)(n, tuple)
    }

    /// Name without the block and frame prefix.
    pub fn name(&self) -> &str {
        self.id.rsplit('.').next().unwrap_or(&self.id)
    }

    /// Id of the classical relation this quantum relation reduces to.
    pub fn classical_id(&self) -> Option<String> {
        if self.frame != Frame::Quantum {
            return None;
        }
        let id = self.id.replacen(".quantum.", ".classical.", 1);
        Some(id.replacen(".raw.", ".", 1).replacen(".compact.", ".", 1))
    }
}

fn ix<const N: usize>(t: &[usize]) -> [usize; N] {
    t.try_into().expect("tuple length checked against arity")
}

struct Block<'a> {
    prefix: String,
    frame: Frame,
    model: Model,
    out: &'a mut Vec<RelationSpec>,
}

impl Block<'_> {
    fn add(&mut self, name: &str, arity: usize, kind: Kind, anchor: &'static str, builder: Builder) {
        self.push(name, arity, kind, false, anchor, builder);
    }

    fn add_a0(&mut self, name: &str, arity: usize, kind: Kind, anchor: &'static str, builder: Builder) {
        self.push(name, arity, kind, true, anchor, builder);
    }

    fn push(&mut self, name: &str, arity: usize, kind: Kind, zero_a: bool, anchor: &'static str, builder: Builder) {
        self.out.push(RelationSpec {
            id: format!("{}.{}", self.prefix, name),
            frame: self.frame,
            model: self.model,
            arity,
            kind,
            zero_a,
            anchor,
            builder,
        });
    }
}

/// The complete catalog for one frame and model, in a fixed order.
pub fn catalog(frame: Frame, model: Model) -> Vec<RelationSpec> {
    let mut out = Vec::new();
    let block = |name: &str, out: &mut Vec<RelationSpec>, f: fn(&mut Block)| {
        let mut b = Block { prefix: format!("{name}.{frame}"), frame, model, out };
        f(&mut b);
    };
    match (model, frame) {
        (Model::Generic, Frame::Classical) => {
            block("sl2", &mut out, sl2_classical);
            block("casimir", &mut out, casimir_classical);
            block("conservation", &mut out, conservation);
            block("racah", &mut out, racah_classical);
        }
        (Model::Generic, Frame::Quantum) => {
            block("sl2", &mut out, sl2_quantum);
            block("casimir", &mut out, casimir_quantum);
            block("conservation", &mut out, conservation);
            block("racah", &mut out, racah_quantum);
        }
        (Model::Sw, Frame::Classical) => block("sw", &mut out, sw_classical),
        (Model::Sw, Frame::Quantum) => block("sw", &mut out, sw_quantum),
        (Model::Kc, Frame::Classical) => block("kc", &mut out, kc_classical),
        (Model::Kc, Frame::Quantum) => {
            block("kc", &mut out, kc_quantum);
            let mut raw = Block { prefix: "kc.quantum.raw".into(), frame, model, out: &mut out };
            kc_quantum_raw(&mut raw);
            let mut compact = Block { prefix: "kc.quantum.compact".into(), frame, model, out: &mut out };
            kc_quantum_compact(&mut compact);
            let mut closure = Block { prefix: "kc.quantum".into(), frame, model, out: &mut out };
            kc_quantum_closure(&mut closure);
        }
    }
    out
}

/// Every relation of one model in both frames.
pub fn full_catalog(model: Model) -> Vec<RelationSpec> {
    let mut all = catalog(Frame::Classical, model);
    all.extend(catalog(Frame::Quantum, model));
    all
}

const LEFT: Side = Side::Left;
const RIGHT: Side = Side::Right;

fn sl2_classical(b: &mut Block) {
    b.add("JmJp", 1, Kind::Sl2, "{J-, J+} = 2 J3", |_, t| {
        let [m] = ix(t);
        Sides::new(br(jm(m, LEFT), jp(m, LEFT)), 2 * j3(m, LEFT))
    });
    b.add("J3Jp", 1, Kind::Sl2, "{J3, J+} = J+", |_, t| {
        let [m] = ix(t);
        Sides::new(br(j3(m, LEFT), jp(m, LEFT)), jp(m, LEFT))
    });
    b.add("J3Jm", 1, Kind::Sl2, "{J3, J-} = -J-", |_, t| {
        let [m] = ix(t);
        Sides::new(br(j3(m, LEFT), jm(m, LEFT)), -jm(m, LEFT))
    });
}

fn sl2_quantum(b: &mut Block) {
    b.add("JmJp", 1, Kind::Sl2, "[J-, J+] = 2 i hbar J3", |_, t| {
        let [m] = ix(t);
        Sides::new(br(jm(m, LEFT), jp(m, LEFT)), 2 * ihbar() * j3(m, LEFT))
    });
    b.add("J3Jp", 1, Kind::Sl2, "[J3, J+] = i hbar J+", |_, t| {
        let [m] = ix(t);
        Sides::new(br(j3(m, LEFT), jp(m, LEFT)), ihbar() * jp(m, LEFT))
    });
    b.add("J3Jm", 1, Kind::Sl2, "[J3, J-] = -i hbar J-", |_, t| {
        let [m] = ix(t);
        Sides::new(br(j3(m, LEFT), jm(m, LEFT)), -(ihbar() * jm(m, LEFT)))
    });
}

/// `-1/4 (sum_{i<j} Q_ij-core + sum a_i)`, plus the quantum shift when given.
fn total_from_q(n: usize, shift: Term) -> Term {
    let mut inner = zero();
    for i in 1..=n {
        for j in i + 1..=n {
            inner = inner + l(i, j) * l(i, j) + a(i) * x(j, 2) * x(i, -2) + a(j) * x(i, 2) * x(j, -2);
        }
        inner = inner + a(i);
    }
    frac(-1, 4) * (inner + shift)
}

fn total_from_l(n: usize, shift: Term) -> Term {
    let xsq = sum((1..=n).map(|j| x(j, 2)));
    let cent = sum((1..=n).map(|j| a(j) * x(j, -2)));
    frac(-1, 4) * (lsq() + xsq * cent + shift)
}

fn total_from_cij(n: usize) -> Term {
    let mut pairs = zero();
    for i in 1..=n {
        for j in i + 1..=n {
            pairs = pairs + cij(i, j);
        }
    }
    pairs - (n as i64 - 2) * sum((1..=n).map(c))
}

fn casimir_common(b: &mut Block, bracket_zero: &'static str) {
    b.add("left_realisation", 1, Kind::Casimir, "C^(m) from the sl(2) realisation = sum P_ij + sum C_i over 1..m", |_, t| {
        let [m] = ix(t);
        Sides::new(cas_sl2(m, LEFT), cas(m, LEFT))
    });
    b.add("right_realisation", 1, Kind::Casimir, "C_(m) from the sl(2) realisation = sum P_ij + sum C_i over n-m+1..n", |_, t| {
        let [m] = ix(t);
        Sides::new(cas_sl2(m, RIGHT), cas(m, RIGHT))
    });
    b.add("total_Cij", 0, Kind::Casimir, "C^(n) = sum C_ij - (n-2) sum C_i", |n, _| Sides::new(cas(n, LEFT), total_from_cij(n)));
    b.add("left_right", 0, Kind::Casimir, "C^(n) = C_(n)", |n, _| Sides::new(cas(n, LEFT), cas(n, RIGHT)));
    b.add("P_def", 2, Kind::Casimir, "P_ij = C_ij - C_i - C_j", |_, t| {
        let [i, j] = ix(t);
        Sides::new(p(i, j), cij(i, j) - c(i) - c(j))
    });
    b.add("left_involution", 2, Kind::Bracket, bracket_zero, |_, t| {
        let [m1, m2] = ix(t);
        Sides::vanishing(br(cas(m1, LEFT), cas(m2, LEFT)))
    });
    b.add("right_involution", 2, Kind::Bracket, bracket_zero, |_, t| {
        let [m1, m2] = ix(t);
        Sides::vanishing(br(cas(m1, RIGHT), cas(m2, RIGHT)))
    });
}

fn casimir_classical(b: &mut Block) {
    b.add("one_particle", 0, Kind::Casimir, "J3^2 - J+ J- = -a_1/4 in one dimension", |_, _| {
        Sides::new(cas_sl2(1, LEFT), frac(-1, 4) * a(1))
    });
    b.add("total_Q", 0, Kind::Casimir, "C^(n) = -1/4 (sum Q_ij + sum a_i)", |n, _| Sides::new(cas(n, LEFT), total_from_q(n, zero())));
    b.add("total_L", 0, Kind::Casimir, "C^(n) = -1/4 (L^2 + x^2 sum a_j / x_j^2)", |n, _| Sides::new(cas(n, LEFT), total_from_l(n, zero())));
    casimir_common(b, "Casimirs of one chain Poisson-commute");
}

fn hbar_shift(n: usize) -> Term {
    let n = n as i64;
    frac(n * (n - 4), 4) * hbar2()
}

fn casimir_quantum(b: &mut Block) {
    b.add("one_particle", 0, Kind::Casimir, "J3^2 - 1/2 {J+, J-} = (3 hbar^2 - 4 a_1)/16 in one dimension", |_, _| {
        Sides::new(cas_sl2(1, LEFT), frac(3, 16) * hbar2() - frac(1, 4) * a(1))
    });
    b.add("total_Q", 0, Kind::Casimir, "C^(n) = -1/4 (sum Q_ij-core + sum a_i + hbar^2 n(n-4)/4)", |n, _| {
        Sides::new(cas(n, LEFT), total_from_q(n, hbar_shift(n)))
    });
    b.add("total_L", 0, Kind::Casimir, "C^(n) = -1/4 (L^2 + x^2 sum a_j / x_j^2 + hbar^2 n(n-4)/4)", |n, _| {
        Sides::new(cas(n, LEFT), total_from_l(n, hbar_shift(n)))
    });
    casimir_common(b, "Casimirs of one chain commute");
}

fn conservation(b: &mut Block) {
    b.add("P_H", 2, Kind::Conservation, "P_ij is conserved", |_, t| {
        let [i, j] = ix(t);
        Sides::vanishing(br(p(i, j), h()))
    });
    b.add("F_H", 3, Kind::Conservation, "F_ijk is conserved", |_, t| {
        let [i, j, k] = ix(t);
        Sides::vanishing(br(f(i, j, k), h()))
    });
    b.add("casimir_left_H", 1, Kind::Conservation, "left Casimirs are conserved", |_, t| {
        let [m] = ix(t);
        Sides::vanishing(br(cas(m, LEFT), h()))
    });
    b.add("casimir_right_H", 1, Kind::Conservation, "right Casimirs are conserved", |_, t| {
        let [m] = ix(t);
        Sides::vanishing(br(cas(m, RIGHT), h()))
    });
}

/// Relations shared verbatim by both frames (zero brackets and symmetries).
fn racah_common(b: &mut Block) {
    b.add("PP_commute", 4, Kind::Bracket, "P_ij and P_kl commute", |_, t| {
        let [i, j, k, l] = ix(t);
        Sides::vanishing(br(p(i, j), p(k, l)))
    });
    b.add("PP_sum", 3, Kind::Bracket, "P_ij commutes with P_ik + P_jk", |_, t| {
        let [i, j, k] = ix(t);
        Sides::vanishing(br(p(i, j), p(i, k) + p(j, k)))
    });
    b.add("FF_disjoint", 6, Kind::Bracket, "F_ijk and F_lmr commute", |_, t| {
        let [i, j, k, l, m, r] = ix(t);
        Sides::vanishing(br(f(i, j, k), f(l, m, r)))
    });
    b.add("F_antisym_ij", 3, Kind::Symmetry, "F_jik = -F_ijk", |_, t| {
        let [i, j, k] = ix(t);
        Sides::new(f(j, i, k), -f(i, j, k))
    });
    b.add("F_antisym_jk", 3, Kind::Symmetry, "F_ikj = -F_ijk", |_, t| {
        let [i, j, k] = ix(t);
        Sides::new(f(i, k, j), -f(i, j, k))
    });
}

fn racah_classical(b: &mut Block) {
    b.add("PP_F", 3, Kind::Bracket, "{P_ij, P_jk} = 2 F_ijk", |_, t| {
        let [i, j, k] = ix(t);
        Sides::new(br(p(i, j), p(j, k)), 2 * f(i, j, k))
    });
    b.add("PF_jk", 3, Kind::Bracket, "{P_jk, F_ijk} = P_ik P_jk - P_jk P_ij + 2 P_ik C_j - 2 P_ij C_k", |_, t| {
        let [i, j, k] = ix(t);
        Sides::new(
            br(p(j, k), f(i, j, k)),
            p(i, k) * p(j, k) - p(j, k) * p(i, j) + 2 * p(i, k) * c(j) - 2 * p(i, j) * c(k),
        )
    });
    b.add("PF_kl", 4, Kind::Bracket, "{P_kl, F_ijk} = P_ik P_jl - P_il P_jk", |_, t| {
        let [i, j, k, l] = ix(t);
        Sides::new(br(p(k, l), f(i, j, k)), p(i, k) * p(j, l) - p(i, l) * p(j, k))
    });
    b.add("FF_jkl", 4, Kind::Bracket, "{F_ijk, F_jkl} = F_jkl P_ij - F_ikl (P_jk + 2 C_j) - F_ijk P_jl", |_, t| {
        let [i, j, k, l] = ix(t);
        Sides::new(
            br(f(i, j, k), f(j, k, l)),
            f(j, k, l) * p(i, j) - f(i, k, l) * (p(j, k) + 2 * c(j)) - f(i, j, k) * p(j, l),
        )
    });
    b.add("FF_klm", 5, Kind::Bracket, "{F_ijk, F_klm} = F_ilm P_jk - P_ik F_jlm", |_, t| {
        let [i, j, k, l, m] = ix(t);
        Sides::new(br(f(i, j, k), f(k, l, m)), f(i, l, m) * p(j, k) - p(i, k) * f(j, l, m))
    });
    racah_common(b);
    b.add("ho1", 3, Kind::Closure, "F_ijk^2 - C_i P_jk^2 - C_j P_ik^2 - C_k P_ij^2 + P_ij P_jk P_ik + 4 C_i C_j C_k = 0", |_, t| {
        let [i, j, k] = ix(t);
        Sides::vanishing(
            f(i, j, k) * f(i, j, k) - c(i) * p(j, k) * p(j, k) - c(j) * p(i, k) * p(i, k) - c(k) * p(i, j) * p(i, j)
                + p(i, j) * p(j, k) * p(i, k)
                + 4 * c(i) * c(j) * c(k),
        )
    });
    b.add("ho2", 4, Kind::Closure, "2 F_ijk F_jkl - P_il P_jk^2 + ... + 4 C_j C_k P_il = 0", |_, t| {
        let [i, j, k, l] = ix(t);
        Sides::vanishing(
            2 * f(i, j, k) * f(j, k, l) - p(i, l) * p(j, k) * p(j, k)
                + p(i, j) * p(j, k) * p(k, l)
                + p(i, k) * p(j, k) * p(j, l)
                - 2 * c(j) * p(i, k) * p(k, l)
                - 2 * c(k) * p(i, j) * p(j, l)
                + 4 * c(j) * c(k) * p(i, l),
        )
    });
    b.add("ho3", 5, Kind::Closure, "2 F_ijk F_klm - P_il P_jk P_km - ... + 2 C_k P_il P_jm = 0", |_, t| {
        let [i, j, k, l, m] = ix(t);
        Sides::vanishing(
            2 * f(i, j, k) * f(k, l, m) - p(i, l) * p(j, k) * p(k, m) - p(i, k) * p(j, m) * p(k, l)
                + p(i, m) * p(j, k) * p(k, l)
                + p(i, k) * p(j, l) * p(k, m)
                - 2 * c(k) * p(i, m) * p(j, l)
                + 2 * c(k) * p(i, l) * p(j, m),
        )
    });
    b.add("ho4", 6, Kind::Closure, "2 F_ijk F_lmr - P_il P_jr P_km - ... + P_il P_jm P_kr = 0", |_, t| {
        let [i, j, k, l, m, r] = ix(t);
        Sides::vanishing(
            2 * f(i, j, k) * f(l, m, r) - p(i, l) * p(j, r) * p(k, m) - p(i, r) * p(j, m) * p(k, l) - p(k, r) * p(i, m) * p(j, l)
                + p(i, m) * p(j, r) * p(k, l)
                + p(i, r) * p(j, l) * p(k, m)
                + p(i, l) * p(j, m) * p(k, r),
        )
    });
}

fn racah_quantum(b: &mut Block) {
    b.add("PP_F", 3, Kind::Bracket, "[P_ij, P_jk] = 2 i hbar F_ijk", |_, t| {
        let [i, j, k] = ix(t);
        Sides::new(br(p(i, j), p(j, k)), 2 * ihbar() * f(i, j, k))
    });
    b.add("PF_jk", 3, Kind::Bracket, "[P_jk, F_ijk] = i hbar (P_ik P_jk - P_jk P_ij + 2 P_ik C_j - 2 P_ij C_k)", |_, t| {
        let [i, j, k] = ix(t);
        Sides::new(
            br(p(j, k), f(i, j, k)),
            ihbar() * (p(i, k) * p(j, k) - p(j, k) * p(i, j) + 2 * p(i, k) * c(j) - 2 * p(i, j) * c(k)),
        )
    });
    b.add("PF_kl", 4, Kind::Bracket, "[P_kl, F_ijk] = i hbar (P_ik P_jl - P_il P_jk)", |_, t| {
        let [i, j, k, l] = ix(t);
        Sides::new(br(p(k, l), f(i, j, k)), ihbar() * (p(i, k) * p(j, l) - p(i, l) * p(j, k)))
    });
    b.add("FF_jkl", 4, Kind::Bracket, "[F_ijk, F_jkl] = i hbar (F_jkl P_ij - F_ikl (P_jk + 2 C_j) - F_ijk P_jl)", |_, t| {
        let [i, j, k, l] = ix(t);
        Sides::new(
            br(f(i, j, k), f(j, k, l)),
            ihbar() * (f(j, k, l) * p(i, j) - f(i, k, l) * (p(j, k) + 2 * c(j)) - f(i, j, k) * p(j, l)),
        )
    });
    b.add("FF_klm", 5, Kind::Bracket, "[F_ijk, F_klm] = i hbar (F_ilm P_jk - P_ik F_jlm)", |_, t| {
        let [i, j, k, l, m] = ix(t);
        Sides::new(br(f(i, j, k), f(k, l, m)), ihbar() * (f(i, l, m) * p(j, k) - p(i, k) * f(j, l, m)))
    });
    racah_common(b);
    b.add("ho1", 3, Kind::Closure, "F_ijk^2 - C_i P_jk^2 - ... + 1/6 {P_ij, P_jk, P_ik} + 4 C_i C_j C_k + hbar^2/3 (...) = 0", |_, t| {
        let [i, j, k] = ix(t);
        Sides::vanishing(
            f(i, j, k) * f(i, j, k) - c(i) * p(j, k) * p(j, k) - c(j) * p(i, k) * p(i, k) - c(k) * p(i, j) * p(i, j)
                + frac(1, 6) * sym3(p(i, j), p(j, k), p(i, k))
                + 4 * c(i) * c(j) * c(k)
                + frac(1, 3)
                    * hbar2()
                    * (anti2(p(i, j), p(j, k)) + anti2(p(i, j), p(i, k)) + anti2(p(i, k), p(j, k))
                        + 2 * c(i) * p(j, k)
                        + 2 * c(j) * p(i, k)
                        + 2 * c(k) * p(i, j)),
        )
    });
    b.add("ho2", 4, Kind::Closure, "{F_ijk, F_jkl} - 1/6 (...) - C_j {P_ik, P_kl} - ... + hbar^2/3 (...) = 0", |_, t| {
        let [i, j, k, l] = ix(t);
        Sides::vanishing(
            anti2(f(i, j, k), f(j, k, l))
                - frac(1, 6)
                    * (sym3(p(i, l), p(j, k), p(j, k)) - sym3(p(i, j), p(j, k), p(k, l)) - sym3(p(i, k), p(j, k), p(j, l)))
                - c(j) * anti2(p(i, k), p(k, l))
                - c(k) * anti2(p(i, j), p(j, l))
                + 4 * c(j) * c(k) * p(i, l)
                + frac(1, 3) * hbar2() * (anti2(p(i, j), p(k, l)) + anti2(p(i, k), p(j, l)) + anti2(p(i, l), p(j, k))),
        )
    });
    b.add("ho3", 5, Kind::Closure, "{F_ijk, F_klm} - 1/6 (...) - C_k {P_im, P_jl} + C_k {P_il, P_jm} = 0", |_, t| {
        let [i, j, k, l, m] = ix(t);
        Sides::vanishing(
            anti2(f(i, j, k), f(k, l, m))
                - frac(1, 6)
                    * (sym3(p(i, l), p(j, k), p(k, m)) + sym3(p(i, k), p(j, m), p(k, l))
                        - sym3(p(i, m), p(j, k), p(k, l))
                        - sym3(p(i, k), p(j, l), p(k, m)))
                - c(k) * anti2(p(i, m), p(j, l))
                + c(k) * anti2(p(i, l), p(j, m)),
        )
    });
    b.add("ho4", 6, Kind::Closure, "{F_ijk, F_lmr} - 1/6 (...) = 0", |_, t| {
        let [i, j, k, l, m, r] = ix(t);
        Sides::vanishing(
            anti2(f(i, j, k), f(l, m, r))
                - frac(1, 6)
                    * (sym3(p(i, l), p(j, r), p(k, m)) + sym3(p(i, r), p(j, m), p(k, l)) + sym3(p(i, m), p(j, l), p(k, r))
                        - sym3(p(i, m), p(j, r), p(k, l))
                        - sym3(p(i, r), p(j, l), p(k, m))
                        - sym3(p(i, l), p(j, m), p(k, r))),
        )
    });
}

fn sw_classical(b: &mut Block) {
    b.add("H_sum", 0, Kind::Functional, "H = sum H_i", |n, _| Sides::new(h(), sum((1..=n).map(hi))));
    b.add("Hi_H", 1, Kind::Conservation, "{H_i, H} = 0", |_, t| {
        let [i] = ix(t);
        Sides::vanishing(br(hi(i), h()))
    });
    sw_kc_shared_conservation(b);
    b.add("Hi_Hj", 2, Kind::Conservation, "{H_i, H_j} = 0", |_, t| {
        let [i, j] = ix(t);
        Sides::vanishing(br(hi(i), hi(j)))
    });
    b.add("Hi_Pjk", 3, Kind::Conservation, "{H_i, P_jk} = 0", |_, t| {
        let [i, j, k] = ix(t);
        Sides::vanishing(br(hi(i), p(j, k)))
    });
    b.add("HP_G", 2, Kind::Bracket, "{H_i, P_ij} = 2 G_ij", |_, t| {
        let [i, j] = ix(t);
        Sides::new(br(hi(i), p(i, j)), 2 * g(i, j))
    });
    b.add("HG_ij", 2, Kind::Bracket, "{H_i, G_ij} = -H_i H_j - 2 omega^2 P_ij", |_, t| {
        let [i, j] = ix(t);
        Sides::new(br(hi(i), g(i, j)), -(hi(i) * hi(j)) - 2 * omega2() * p(i, j))
    });
    b.add("HG_jk", 3, Kind::Bracket, "{H_i, G_jk} = 0", |_, t| {
        let [i, j, k] = ix(t);
        Sides::vanishing(br(hi(i), g(j, k)))
    });
    b.add("PG_ij", 2, Kind::Bracket, "{P_ij, G_ij} = H_j (P_ij + 2 C_i) - H_i (P_ij + 2 C_j)", |_, t| {
        let [i, j] = ix(t);
        Sides::new(br(p(i, j), g(i, j)), hi(j) * (p(i, j) + 2 * c(i)) - hi(i) * (p(i, j) + 2 * c(j)))
    });
    b.add("PG_ik", 3, Kind::Bracket, "{P_ij, G_ik} = H_j P_ik - H_i P_jk", |_, t| {
        let [i, j, k] = ix(t);
        Sides::new(br(p(i, j), g(i, k)), hi(j) * p(i, k) - hi(i) * p(j, k))
    });
    b.add("PG_kl", 4, Kind::Bracket, "{P_ij, G_kl} = 0", |_, t| {
        let [i, j, k, l] = ix(t);
        Sides::vanishing(br(p(i, j), g(k, l)))
    });
    b.add("HF_ijk", 3, Kind::Bracket, "{H_i, F_ijk} = H_k P_ij - H_j P_ik", |_, t| {
        let [i, j, k] = ix(t);
        Sides::new(br(hi(i), f(i, j, k)), hi(k) * p(i, j) - hi(j) * p(i, k))
    });
    b.add("GG_ik", 3, Kind::Bracket, "{G_ij, G_ik} = H_i G_jk", |_, t| {
        let [i, j, k] = ix(t);
        Sides::new(br(g(i, j), g(i, k)), hi(i) * g(j, k))
    });
    b.add("GG_kl", 4, Kind::Bracket, "{G_ij, G_kl} = 0", |_, t| {
        let [i, j, k, l] = ix(t);
        Sides::vanishing(br(g(i, j), g(k, l)))
    });
    gf_classical(b);
    g_antisym(b);
    b.add("choSW1", 2, Kind::Closure, "G_ij^2 - C_j H_i^2 - C_i H_j^2 + P_ij H_i H_j + omega^2 (P_ij^2 - 4 C_i C_j) = 0", |_, t| {
        let [i, j] = ix(t);
        Sides::vanishing(
            g(i, j) * g(i, j) - c(j) * hi(i) * hi(i) - c(i) * hi(j) * hi(j)
                + p(i, j) * hi(i) * hi(j)
                + omega2() * (p(i, j) * p(i, j) - 4 * c(i) * c(j)),
        )
    });
    b.add("choSW2", 3, Kind::Closure, "2 G_ij G_jk - P_ij H_j H_k - ... - 2 omega^2 (P_ij P_jk - 2 C_j P_ik) = 0", |_, t| {
        let [i, j, k] = ix(t);
        Sides::vanishing(
            2 * g(i, j) * g(j, k) - p(i, j) * hi(j) * hi(k) - p(j, k) * hi(i) * hi(j)
                + p(i, k) * hi(j) * hi(j)
                + 2 * c(j) * hi(i) * hi(k)
                - 2 * omega2() * (p(i, j) * p(j, k) - 2 * c(j) * p(i, k)),
        )
    });
    b.add("choSW3", 4, Kind::Closure, "2 G_ij G_kl - P_ik H_j H_l - ... - 2 omega^2 (P_jl P_ik - P_il P_jk) = 0", |_, t| {
        let [i, j, k, l] = ix(t);
        Sides::vanishing(
            2 * g(i, j) * g(k, l) - p(i, k) * hi(j) * hi(l) - p(j, l) * hi(i) * hi(k)
                + p(j, k) * hi(i) * hi(l)
                + p(i, l) * hi(j) * hi(k)
                - 2 * omega2() * (p(j, l) * p(i, k) - p(i, l) * p(j, k)),
        )
    });
    b.add("choSW4", 3, Kind::Closure, "2 G_ij F_ijk - H_k P_ij^2 + ... + 4 C_i C_j H_k = 0", |_, t| {
        let [i, j, k] = ix(t);
        Sides::vanishing(two_g_f_ijk(hi, i, j, k))
    });
    b.add("choSW5", 4, Kind::Closure, "2 G_ij F_jkl - H_k P_ij P_jl - ... + 2 C_j H_k P_il = 0", |_, t| {
        let [i, j, k, l] = ix(t);
        Sides::vanishing(two_g_f_jkl(hi, i, j, k, l))
    });
    b.add("choSW6", 5, Kind::Closure, "2 G_ij F_klm - H_k P_im P_jl - ... + H_m P_jl P_ik = 0", |_, t| {
        let [i, j, k, l, m] = ix(t);
        Sides::vanishing(two_g_f_klm(hi, i, j, k, l, m))
    });
}

fn two_g_f_ijk(x: fn(usize) -> Term, i: usize, j: usize, k: usize) -> Term {
    2 * g(i, j) * f(i, j, k) - x(k) * p(i, j) * p(i, j) + x(j) * p(i, j) * p(i, k) + x(i) * p(i, j) * p(j, k)
        - 2 * c(i) * x(j) * p(j, k)
        - 2 * c(j) * x(i) * p(i, k)
        + 4 * c(i) * c(j) * x(k)
}

fn two_g_f_jkl(x: fn(usize) -> Term, i: usize, j: usize, k: usize, l: usize) -> Term {
    2 * g(i, j) * f(j, k, l) - x(k) * p(i, j) * p(j, l) - x(j) * p(i, l) * p(j, k)
        + x(j) * p(j, l) * p(i, k)
        + x(l) * p(i, j) * p(j, k)
        - 2 * c(j) * x(l) * p(i, k)
        + 2 * c(j) * x(k) * p(i, l)
}

fn two_g_f_klm(x: fn(usize) -> Term, i: usize, j: usize, k: usize, l: usize, m: usize) -> Term {
    2 * g(i, j) * f(k, l, m) - x(k) * p(i, m) * p(j, l) - x(m) * p(i, l) * p(j, k) - x(l) * p(j, m) * p(i, k)
        + x(k) * p(i, l) * p(j, m)
        + x(l) * p(i, m) * p(j, k)
        + x(m) * p(j, l) * p(i, k)
}

/// `G` brackets with `F`, identical in the SW and KC models (classical).
fn gf_classical(b: &mut Block) {
    b.add("GF_ijk", 3, Kind::Bracket, "{G_ij, F_ijk} = -P_ij (G_ik + G_jk)", |_, t| {
        let [i, j, k] = ix(t);
        Sides::new(br(g(i, j), f(i, j, k)), -(p(i, j) * (g(i, k) + g(j, k))))
    });
    b.add("GF_jkl", 4, Kind::Bracket, "{G_ij, F_jkl} = P_jk G_il - P_jl G_ik", |_, t| {
        let [i, j, k, l] = ix(t);
        Sides::new(br(g(i, j), f(j, k, l)), p(j, k) * g(i, l) - p(j, l) * g(i, k))
    });
    b.add("GF_klm", 5, Kind::Bracket, "{G_ij, F_klm} = 0", |_, t| {
        let [i, j, k, l, m] = ix(t);
        Sides::vanishing(br(g(i, j), f(k, l, m)))
    });
}

fn gf_quantum(b: &mut Block) {
    b.add("GF_ijk", 3, Kind::Bracket, "[G_ij, F_ijk] = -i hbar/2 ({P_ij, G_ik} + {P_ij, G_jk})", |_, t| {
        let [i, j, k] = ix(t);
        Sides::new(br(g(i, j), f(i, j, k)), frac(-1, 2) * ihbar() * (anti2(p(i, j), g(i, k)) + anti2(p(i, j), g(j, k))))
    });
    b.add("GF_jkl", 4, Kind::Bracket, "[G_ij, F_jkl] = i hbar/2 ({P_jk, G_il} - {P_jl, G_ik})", |_, t| {
        let [i, j, k, l] = ix(t);
        Sides::new(br(g(i, j), f(j, k, l)), frac(1, 2) * ihbar() * (anti2(p(j, k), g(i, l)) - anti2(p(j, l), g(i, k))))
    });
    b.add("GF_klm", 5, Kind::Bracket, "[G_ij, F_klm] = 0", |_, t| {
        let [i, j, k, l, m] = ix(t);
        Sides::vanishing(br(g(i, j), f(k, l, m)))
    });
}

fn g_antisym(b: &mut Block) {
    b.add("G_antisym", 2, Kind::Symmetry, "G_ji = -G_ij", |_, t| {
        let [i, j] = ix(t);
        Sides::new(g(j, i), -g(i, j))
    });
}

/// `P_ij` and `G_ij` are conserved in both superintegrable models.
fn sw_kc_shared_conservation(b: &mut Block) {
    b.add("P_H", 2, Kind::Conservation, "P_ij is conserved", |_, t| {
        let [i, j] = ix(t);
        Sides::vanishing(br(p(i, j), h()))
    });
    b.add("G_H", 2, Kind::Conservation, "G_ij is conserved", |_, t| {
        let [i, j] = ix(t);
        Sides::vanishing(br(g(i, j), h()))
    });
}

fn sw_quantum(b: &mut Block) {
    b.add("H_sum", 0, Kind::Functional, "H = sum H_i", |n, _| Sides::new(h(), sum((1..=n).map(hi))));
    b.add("Hi_H", 1, Kind::Conservation, "[H_i, H] = 0", |_, t| {
        let [i] = ix(t);
        Sides::vanishing(br(hi(i), h()))
    });
    sw_kc_shared_conservation(b);
    b.add("Hi_Hj", 2, Kind::Conservation, "[H_i, H_j] = 0", |_, t| {
        let [i, j] = ix(t);
        Sides::vanishing(br(hi(i), hi(j)))
    });
    b.add("Hi_Pjk", 3, Kind::Conservation, "[H_i, P_jk] = 0", |_, t| {
        let [i, j, k] = ix(t);
        Sides::vanishing(br(hi(i), p(j, k)))
    });
    b.add("HP_G", 2, Kind::Bracket, "[H_i, P_ij] = 2 i hbar G_ij", |_, t| {
        let [i, j] = ix(t);
        Sides::new(br(hi(i), p(i, j)), 2 * ihbar() * g(i, j))
    });
    b.add("HG_ij", 2, Kind::Bracket, "[H_i, G_ij] = -i hbar (H_i H_j + 2 omega^2 P_ij)", |_, t| {
        let [i, j] = ix(t);
        Sides::new(br(hi(i), g(i, j)), -(ihbar() * (hi(i) * hi(j) + 2 * omega2() * p(i, j))))
    });
    b.add("HG_jk", 3, Kind::Bracket, "[H_i, G_jk] = 0", |_, t| {
        let [i, j, k] = ix(t);
        Sides::vanishing(br(hi(i), g(j, k)))
    });
    b.add("PG_ij", 2, Kind::Bracket, "[P_ij, G_ij] = i hbar/2 ({H_j, P_ij} - {H_i, P_ij} + 4 C_i H_j - 4 C_j H_i)", |_, t| {
        let [i, j] = ix(t);
        Sides::new(
            br(p(i, j), g(i, j)),
            frac(1, 2)
                * ihbar()
                * (anti2(hi(j), p(i, j)) - anti2(hi(i), p(i, j)) + 4 * c(i) * hi(j) - 4 * c(j) * hi(i)),
        )
    });
    b.add("PG_ik", 3, Kind::Bracket, "[P_ij, G_ik] = i hbar (H_j P_ik - H_i P_jk)", |_, t| {
        let [i, j, k] = ix(t);
        Sides::new(br(p(i, j), g(i, k)), ihbar() * (hi(j) * p(i, k) - hi(i) * p(j, k)))
    });
    b.add("PG_kl", 4, Kind::Bracket, "[P_ij, G_kl] = 0", |_, t| {
        let [i, j, k, l] = ix(t);
        Sides::vanishing(br(p(i, j), g(k, l)))
    });
    b.add("HF_ijk", 3, Kind::Bracket, "[H_i, F_ijk] = i hbar (H_k P_ij - H_j P_ik)", |_, t| {
        let [i, j, k] = ix(t);
        Sides::new(br(hi(i), f(i, j, k)), ihbar() * (hi(k) * p(i, j) - hi(j) * p(i, k)))
    });
    b.add("GG_ik", 3, Kind::Bracket, "[G_ij, G_ik] = i hbar H_i G_jk", |_, t| {
        let [i, j, k] = ix(t);
        Sides::new(br(g(i, j), g(i, k)), ihbar() * hi(i) * g(j, k))
    });
    b.add("GG_kl", 4, Kind::Bracket, "[G_ij, G_kl] = 0", |_, t| {
        let [i, j, k, l] = ix(t);
        Sides::vanishing(br(g(i, j), g(k, l)))
    });
    gf_quantum(b);
    g_antisym(b);
    b.add("choSW1", 2, Kind::Closure, "G_ij^2 - C_j H_i^2 - C_i H_j^2 + 1/6 {P_ij, H_i, H_j} + ... = 0", |_, t| {
        let [i, j] = ix(t);
        Sides::vanishing(
            g(i, j) * g(i, j) - c(j) * hi(i) * hi(i) - c(i) * hi(j) * hi(j)
                + frac(1, 6) * sym3(p(i, j), hi(i), hi(j))
                + omega2() * (p(i, j) * p(i, j) - 4 * c(i) * c(j))
                + frac(1, 3) * hbar2() * (anti2(hi(i), hi(j)) - 2 * omega2() * p(i, j)),
        )
    });
    b.add("choSW2", 3, Kind::Closure, "{G_ij, G_jk} - 1/6 (...) + 2 C_j H_i H_k - omega^2 ({P_ij, P_jk} - 4 C_j P_ik) = 0", |_, t| {
        let [i, j, k] = ix(t);
        Sides::vanishing(
            anti2(g(i, j), g(j, k))
                - frac(1, 6)
                    * (sym3(p(i, j), hi(j), hi(k)) + sym3(p(j, k), hi(i), hi(j)) - sym3(p(i, k), hi(j), hi(j)))
                + 2 * c(j) * hi(i) * hi(k)
                - omega2() * (anti2(p(i, j), p(j, k)) - 4 * c(j) * p(i, k)),
        )
    });
    b.add("choSW3", 4, Kind::Closure, "{G_ij, G_kl} - 1/6 (...) - omega^2 ({P_ik, P_jl} - {P_il, P_jk}) = 0", |_, t| {
        let [i, j, k, l] = ix(t);
        Sides::vanishing(
            anti2(g(i, j), g(k, l))
                - frac(1, 6)
                    * (sym3(p(i, k), hi(j), hi(l)) + sym3(p(j, l), hi(i), hi(k))
                        - sym3(p(j, k), hi(i), hi(l))
                        - sym3(p(i, l), hi(j), hi(k)))
                - omega2() * (anti2(p(i, k), p(j, l)) - anti2(p(i, l), p(j, k))),
        )
    });
    b.add("choSW4", 3, Kind::Closure, "{G_ij, F_ijk} - 1/6 (...) - C_i {H_j, P_jk} - ... + hbar^2/3 (...) = 0", |_, t| {
        let [i, j, k] = ix(t);
        Sides::vanishing(anti_g_f_ijk(hi, i, j, k))
    });
    b.add("choSW5", 4, Kind::Closure, "{G_ij, F_jkl} - 1/6 (...) - C_j {H_l, P_ik} + C_j {H_k, P_il} = 0", |_, t| {
        let [i, j, k, l] = ix(t);
        Sides::vanishing(anti_g_f_jkl(hi, i, j, k, l))
    });
    b.add("choSW6", 5, Kind::Closure, "{G_ij, F_klm} - 1/6 (...) = 0", |_, t| {
        let [i, j, k, l, m] = ix(t);
        Sides::vanishing(anti_g_f_klm(hi, i, j, k, l, m))
    });
}

fn anti_g_f_ijk(x: fn(usize) -> Term, i: usize, j: usize, k: usize) -> Term {
    anti2(g(i, j), f(i, j, k))
        - frac(1, 6) * (sym3(x(k), p(i, j), p(i, j)) - sym3(x(j), p(i, j), p(i, k)) - sym3(x(i), p(i, j), p(j, k)))
        - c(i) * anti2(x(j), p(j, k))
        - c(j) * anti2(x(i), p(i, k))
        + 4 * c(i) * c(j) * x(k)
        + frac(1, 3) * hbar2() * (anti2(x(i), p(j, k)) + anti2(x(j), p(i, k)) + anti2(x(k), p(i, j)))
}

fn anti_g_f_jkl(x: fn(usize) -> Term, i: usize, j: usize, k: usize, l: usize) -> Term {
    anti2(g(i, j), f(j, k, l))
        - frac(1, 6)
            * (sym3(x(j), p(i, l), p(j, k)) + sym3(x(k), p(i, j), p(j, l))
                - sym3(x(j), p(j, l), p(i, k))
                - sym3(x(l), p(i, j), p(j, k)))
        - c(j) * anti2(x(l), p(i, k))
        + c(j) * anti2(x(k), p(i, l))
}

fn anti_g_f_klm(x: fn(usize) -> Term, i: usize, j: usize, k: usize, l: usize, m: usize) -> Term {
    anti2(g(i, j), f(k, l, m))
        - frac(1, 6)
            * (sym3(x(k), p(i, m), p(j, l)) + sym3(x(l), p(j, m), p(i, k)) + sym3(x(m), p(i, l), p(j, k))
                - sym3(x(k), p(i, l), p(j, m))
                - sym3(x(l), p(i, m), p(j, k))
                - sym3(x(m), p(j, l), p(i, k)))
}

fn kc_conservation(b: &mut Block) {
    b.add("R_H", 1, Kind::Conservation, "R_i is conserved", |_, t| {
        let [i] = ix(t);
        Sides::vanishing(br(r(i), h()))
    });
    sw_kc_shared_conservation(b);
    b.add("R_Pjk", 3, Kind::Conservation, "R_i commutes with P_jk", |_, t| {
        let [i, j, k] = ix(t);
        Sides::vanishing(br(r(i), p(j, k)))
    });
}

fn kc_classical(b: &mut Block) {
    b.add("funrel", 0, Kind::Functional, "sum R_i = -8 H C^(n) + mu^2", |n, _| {
        Sides::new(sum((1..=n).map(r)), -8 * h() * cas(n, LEFT) + mu2())
    });
    b.add_a0("casimir_rot", 0, Kind::Functional, "with a = 0: C^(n) = -L^2/4", |n, _| Sides::new(cas(n, LEFT), frac(-1, 4) * lsq()));
    b.add_a0("R_is_A2", 1, Kind::Functional, "with a = 0: R_i = A_i^2", |_, t| {
        let [i] = ix(t);
        Sides::new(r(i), lrl(i) * lrl(i))
    });
    b.add_a0("funrel_rot", 0, Kind::Functional, "with a = 0: sum A_i^2 = 2 H L^2 + mu^2", |n, _| {
        Sides::new(sum((1..=n).map(|i| lrl(i) * lrl(i))), 2 * h() * lsq() + mu2())
    });
    kc_conservation(b);
    b.add("RP_G", 2, Kind::Bracket, "{R_i, P_ij} = 2 G_ij", |_, t| {
        let [i, j] = ix(t);
        Sides::new(br(r(i), p(i, j)), 2 * g(i, j))
    });
    b.add("RR", 2, Kind::Bracket, "{R_i, R_j} = -16 H G_ij", |_, t| {
        let [i, j] = ix(t);
        Sides::new(br(r(i), r(j)), -16 * h() * g(i, j))
    });
    b.add("RG_ij", 2, Kind::Bracket, "{R_i, G_ij} = -R_i R_j + 8 H (R_i P_ij - 2 C_i R_j)", |_, t| {
        let [i, j] = ix(t);
        Sides::new(br(r(i), g(i, j)), -(r(i) * r(j)) + 8 * h() * (r(i) * p(i, j) - 2 * c(i) * r(j)))
    });
    b.add("RG_jk", 3, Kind::Bracket, "{R_i, G_jk} = 8 H (P_ik R_j - P_ij R_k)", |_, t| {
        let [i, j, k] = ix(t);
        Sides::new(br(r(i), g(j, k)), 8 * h() * (p(i, k) * r(j) - p(i, j) * r(k)))
    });
    b.add("PG_ij", 2, Kind::Bracket, "{P_ij, G_ij} = R_j (P_ij + 2 C_i) - R_i (P_ij + 2 C_j)", |_, t| {
        let [i, j] = ix(t);
        Sides::new(br(p(i, j), g(i, j)), r(j) * (p(i, j) + 2 * c(i)) - r(i) * (p(i, j) + 2 * c(j)))
    });
    b.add("PG_ik", 3, Kind::Bracket, "{P_ij, G_ik} = R_j P_ik - R_i P_jk", |_, t| {
        let [i, j, k] = ix(t);
        Sides::new(br(p(i, j), g(i, k)), r(j) * p(i, k) - r(i) * p(j, k))
    });
    b.add("PG_kl", 4, Kind::Bracket, "{P_ij, G_kl} = 0", |_, t| {
        let [i, j, k, l] = ix(t);
        Sides::vanishing(br(p(i, j), g(k, l)))
    });
    b.add("RF_ijk", 3, Kind::Bracket, "{R_i, F_ijk} = R_k P_ij - R_j P_ik", |_, t| {
        let [i, j, k] = ix(t);
        Sides::new(br(r(i), f(i, j, k)), r(k) * p(i, j) - r(j) * p(i, k))
    });
    b.add("RF_jkl", 4, Kind::Bracket, "{R_i, F_jkl} = 0", |_, t| {
        let [i, j, k, l] = ix(t);
        Sides::vanishing(br(r(i), f(j, k, l)))
    });
    b.add("GG_ik", 3, Kind::Bracket, "{G_ij, G_ik} = G_jk R_i + 8 H F_ijk R_i", |_, t| {
        let [i, j, k] = ix(t);
        Sides::new(br(g(i, j), g(i, k)), g(j, k) * r(i) + 8 * h() * f(i, j, k) * r(i))
    });
    b.add("GG_kl", 4, Kind::Bracket, "{G_ij, G_kl} = 8 H (R_j F_ikl - R_i F_jkl)", |_, t| {
        let [i, j, k, l] = ix(t);
        Sides::new(br(g(i, j), g(k, l)), 8 * h() * (r(j) * f(i, k, l) - r(i) * f(j, k, l)))
    });
    gf_classical(b);
    g_antisym(b);
    b.add("hocKC1", 2, Kind::Closure, "G_ij^2 - C_i R_j^2 - C_j R_i^2 + P_ij R_i R_j = 0", |_, t| {
        let [i, j] = ix(t);
        Sides::vanishing(g(i, j) * g(i, j) - c(i) * r(j) * r(j) - c(j) * r(i) * r(i) + p(i, j) * r(i) * r(j))
    });
    b.add("hocKC2", 3, Kind::Closure, "2 G_ij G_jk - P_ij R_j R_k - P_jk R_i R_j + P_ik R_j^2 + 2 C_j R_i R_k = 0", |_, t| {
        let [i, j, k] = ix(t);
        Sides::vanishing(
            2 * g(i, j) * g(j, k) - p(i, j) * r(j) * r(k) - p(j, k) * r(i) * r(j)
                + p(i, k) * r(j) * r(j)
                + 2 * c(j) * r(i) * r(k),
        )
    });
    b.add("hocKC3", 4, Kind::Closure, "2 G_ij G_kl - P_ik R_j R_l - P_jl R_i R_k + P_jk R_i R_l + P_il R_j R_k = 0", |_, t| {
        let [i, j, k, l] = ix(t);
        Sides::vanishing(
            2 * g(i, j) * g(k, l) - p(i, k) * r(j) * r(l) - p(j, l) * r(i) * r(k)
                + p(j, k) * r(i) * r(l)
                + p(i, l) * r(j) * r(k),
        )
    });
    b.add("hocKC4", 3, Kind::Closure, "2 G_ij F_ijk - R_k P_ij^2 + ... + 4 C_i C_j R_k = 0", |_, t| {
        let [i, j, k] = ix(t);
        Sides::vanishing(two_g_f_ijk(r, i, j, k))
    });
    b.add("hocKC5", 4, Kind::Closure, "2 G_ij F_jkl - R_k P_ij P_jl - ... + 2 C_j R_k P_il = 0", |_, t| {
        let [i, j, k, l] = ix(t);
        Sides::vanishing(two_g_f_jkl(r, i, j, k, l))
    });
    b.add("hocKC6", 5, Kind::Closure, "2 G_ij F_klm - R_k P_im P_jl - ... + R_m P_jl P_ik = 0", |_, t| {
        let [i, j, k, l, m] = ix(t);
        Sides::vanishing(two_g_f_klm(r, i, j, k, l, m))
    });
}

fn kc_quantum(b: &mut Block) {
    b.add("funrel", 0, Kind::Functional, "sum R_i = -8 H (C^(n) - hbar^2 (2n+1)/16) + mu^2", |n, _| {
        let shift = frac(2 * n as i64 + 1, 16) * hbar2();
        Sides::new(sum((1..=n).map(r)), -8 * h() * (cas(n, LEFT) - shift) + mu2())
    });
    b.add_a0("casimir_rot", 0, Kind::Functional, "with a = 0: C^(n) = -1/4 (L^2 + hbar^2 n(n-4)/4)", |n, _| {
        Sides::new(cas(n, LEFT), frac(-1, 4) * (lsq() + hbar_shift(n)))
    });
    b.add_a0("R_is_A2", 1, Kind::Functional, "with a = 0: R_i = A_i^2", |_, t| {
        let [i] = ix(t);
        Sides::new(r(i), lrl(i) * lrl(i))
    });
    b.add_a0("funrel_rot", 0, Kind::Functional, "with a = 0: sum A_i^2 = 2 H (L^2 + hbar^2 (n-1)^2/4) + mu^2", |n, _| {
        let k = (n as i64 - 1) * (n as i64 - 1);
        Sides::new(sum((1..=n).map(|i| lrl(i) * lrl(i))), 2 * h() * (lsq() + frac(k, 4) * hbar2()) + mu2())
    });
    kc_conservation(b);
    g_antisym(b);
}

fn kc_quantum_raw(b: &mut Block) {
    b.add("RP_G", 2, Kind::Bracket, "[R_i, P_ij] = 2 i hbar G_ij", |_, t| {
        let [i, j] = ix(t);
        Sides::new(br(r(i), p(i, j)), 2 * ihbar() * g(i, j))
    });
    b.add("RR", 2, Kind::Bracket, "[R_i, R_j] = -16 i hbar H G_ij", |_, t| {
        let [i, j] = ix(t);
        Sides::new(br(r(i), r(j)), -16 * ihbar() * h() * g(i, j))
    });
    b.add("RG_ij", 2, Kind::Bracket, "[R_i, G_ij] = -i hbar/2 ({R_i, R_j} - 8 H {R_i, P_ij} + 32 H C_i R_j - 2 hbar^2 (...) + 2 hbar^4 H^2)", |_, t| {
        let [i, j] = ix(t);
        let tail = h() * r(i) + h() * r(j) + 16 * h() * h() * p(i, j) + 16 * h() * h() * c(i);
        Sides::new(
            br(r(i), g(i, j)),
            frac(-1, 2)
                * ihbar()
                * (anti2(r(i), r(j)) - 8 * h() * anti2(r(i), p(i, j)) + 32 * h() * c(i) * r(j) - 2 * hbar2() * tail
                    + 2 * hbar4() * h() * h()),
        )
    });
    b.add("RG_jk", 3, Kind::Bracket, "[R_i, G_jk] = 8 i hbar (H R_j P_ik - H R_k P_ij + hbar^2 (H^2 P_ij - H^2 P_ik))", |_, t| {
        let [i, j, k] = ix(t);
        Sides::new(
            br(r(i), g(j, k)),
            8 * ihbar()
                * (h() * r(j) * p(i, k) - h() * r(k) * p(i, j) + hbar2() * (h() * h() * p(i, j) - h() * h() * p(i, k))),
        )
    });
    b.add("PG_ij", 2, Kind::Bracket, "[P_ij, G_ij] = i hbar/2 ({R_j, P_ij} - {R_i, P_ij} + 4 C_i R_j - 4 C_j R_i - 4 hbar^2 (C_i - C_j) H)", |_, t| {
        let [i, j] = ix(t);
        Sides::new(
            br(p(i, j), g(i, j)),
            frac(1, 2)
                * ihbar()
                * (anti2(r(j), p(i, j)) - anti2(r(i), p(i, j)) + 4 * c(i) * r(j) - 4 * c(j) * r(i)
                    - 4 * hbar2() * (c(i) - c(j)) * h()),
        )
    });
    b.add("PG_ik", 3, Kind::Bracket, "[P_ij, G_ik] = i hbar (R_j P_ik - R_i P_jk + hbar^2 (H P_jk - H P_ik))", |_, t| {
        let [i, j, k] = ix(t);
        Sides::new(
            br(p(i, j), g(i, k)),
            ihbar() * (r(j) * p(i, k) - r(i) * p(j, k) + hbar2() * (h() * p(j, k) - h() * p(i, k))),
        )
    });
    b.add("PG_kl", 4, Kind::Bracket, "[P_ij, G_kl] = 0", |_, t| {
        let [i, j, k, l] = ix(t);
        Sides::vanishing(br(p(i, j), g(k, l)))
    });
    b.add("RF_ijk", 3, Kind::Bracket, "[R_i, F_ijk] = i hbar (R_k P_ij - R_j P_ik + hbar^2 (H P_ik - H P_ij))", |_, t| {
        let [i, j, k] = ix(t);
        Sides::new(
            br(r(i), f(i, j, k)),
            ihbar() * (r(k) * p(i, j) - r(j) * p(i, k) + hbar2() * (h() * p(i, k) - h() * p(i, j))),
        )
    });
    b.add("RF_jkl", 4, Kind::Bracket, "[R_i, F_jkl] = 0", |_, t| {
        let [i, j, k, l] = ix(t);
        Sides::vanishing(br(r(i), f(j, k, l)))
    });
    b.add("GG_ik", 3, Kind::Bracket, "[G_ij, G_ik] = i hbar/2 ({G_jk, R_i} + 8 H {F_ijk, R_i} - 2 hbar^2 H G_jk - 16 hbar^2 H^2 F_ijk)", |_, t| {
        let [i, j, k] = ix(t);
        Sides::new(
            br(g(i, j), g(i, k)),
            frac(1, 2)
                * ihbar()
                * (anti2(g(j, k), r(i)) + 8 * h() * anti2(f(i, j, k), r(i)) - 2 * hbar2() * h() * g(j, k)
                    - 16 * hbar2() * h() * h() * f(i, j, k)),
        )
    });
    b.add("GG_kl", 4, Kind::Bracket, "[G_ij, G_kl] = 8 i hbar (H R_j F_ikl - H R_i F_jkl - hbar^2 H^2 F_ikl + hbar^2 H^2 F_jkl)", |_, t| {
        let [i, j, k, l] = ix(t);
        Sides::new(
            br(g(i, j), g(k, l)),
            8 * ihbar()
                * (h() * r(j) * f(i, k, l) - h() * r(i) * f(j, k, l) - hbar2() * h() * h() * f(i, k, l)
                    + hbar2() * h() * h() * f(j, k, l)),
        )
    });
    gf_quantum(b);
}

fn kc_quantum_compact(b: &mut Block) {
    b.add("RP_G", 2, Kind::Bracket, "[Rc_i, P_ij] = 2 i hbar G_ij", |_, t| {
        let [i, j] = ix(t);
        Sides::new(br(rc(i), p(i, j)), 2 * ihbar() * g(i, j))
    });
    b.add("RR", 2, Kind::Bracket, "[Rc_i, Rc_j] = -16 i hbar H G_ij", |_, t| {
        let [i, j] = ix(t);
        Sides::new(br(rc(i), rc(j)), -16 * ihbar() * h() * g(i, j))
    });
    b.add("RG_ij", 2, Kind::Bracket, "[Rc_i, G_ij] = -i hbar/2 ({Rc_i, Rc_j} - 8 H {Rc_i, P_ij} + 32 H C_i Rc_j - 48 hbar^2 H^2 P_ij)", |_, t| {
        let [i, j] = ix(t);
        Sides::new(
            br(rc(i), g(i, j)),
            frac(-1, 2)
                * ihbar()
                * (anti2(rc(i), rc(j)) - 8 * h() * anti2(rc(i), p(i, j)) + 32 * h() * c(i) * rc(j)
                    - 48 * hbar2() * h() * h() * p(i, j)),
        )
    });
    b.add("RG_jk", 3, Kind::Bracket, "[Rc_i, G_jk] = 8 i hbar (H Rc_j P_ik - H Rc_k P_ij)", |_, t| {
        let [i, j, k] = ix(t);
        Sides::new(br(rc(i), g(j, k)), 8 * ihbar() * (h() * rc(j) * p(i, k) - h() * rc(k) * p(i, j)))
    });
    b.add("PG_ij", 2, Kind::Bracket, "[P_ij, G_ij] = i hbar/2 ({Rc_j, P_ij} - {Rc_i, P_ij} + 4 C_i Rc_j - 4 C_j Rc_i)", |_, t| {
        let [i, j] = ix(t);
        Sides::new(
            br(p(i, j), g(i, j)),
            frac(1, 2) * ihbar() * (anti2(rc(j), p(i, j)) - anti2(rc(i), p(i, j)) + 4 * c(i) * rc(j) - 4 * c(j) * rc(i)),
        )
    });
    b.add("PG_ik", 3, Kind::Bracket, "[P_ij, G_ik] = i hbar (Rc_j P_ik - Rc_i P_jk)", |_, t| {
        let [i, j, k] = ix(t);
        Sides::new(br(p(i, j), g(i, k)), ihbar() * (rc(j) * p(i, k) - rc(i) * p(j, k)))
    });
    b.add("PG_kl", 4, Kind::Bracket, "[P_ij, G_kl] = 0", |_, t| {
        let [i, j, k, l] = ix(t);
        Sides::vanishing(br(p(i, j), g(k, l)))
    });
    b.add("RF_ijk", 3, Kind::Bracket, "[Rc_i, F_ijk] = i hbar (Rc_k P_ij - Rc_j P_ik)", |_, t| {
        let [i, j, k] = ix(t);
        Sides::new(br(rc(i), f(i, j, k)), ihbar() * (rc(k) * p(i, j) - rc(j) * p(i, k)))
    });
    b.add("RF_jkl", 4, Kind::Bracket, "[Rc_i, F_jkl] = 0", |_, t| {
        let [i, j, k, l] = ix(t);
        Sides::vanishing(br(rc(i), f(j, k, l)))
    });
    b.add("GG_ik", 3, Kind::Bracket, "[G_ij, G_ik] = i hbar/2 ({G_jk, Rc_i} + 8 H {F_ijk, Rc_i})", |_, t| {
        let [i, j, k] = ix(t);
        Sides::new(
            br(g(i, j), g(i, k)),
            frac(1, 2) * ihbar() * (anti2(g(j, k), rc(i)) + 8 * h() * anti2(f(i, j, k), rc(i))),
        )
    });
    b.add("GG_kl", 4, Kind::Bracket, "[G_ij, G_kl] = 8 i hbar (H Rc_j F_ikl - H Rc_i F_jkl)", |_, t| {
        let [i, j, k, l] = ix(t);
        Sides::new(br(g(i, j), g(k, l)), 8 * ihbar() * (h() * rc(j) * f(i, k, l) - h() * rc(i) * f(j, k, l)))
    });
    gf_quantum(b);
}

fn kc_quantum_closure(b: &mut Block) {
    b.add("hocKC1", 2, Kind::Closure, "G_ij^2 - C_i Rc_j^2 - C_j Rc_i^2 + 1/6 {P_ij, Rc_i, Rc_j} + hbar^2/3 (...) + 8 hbar^4 H^2 P_ij = 0", |_, t| {
        let [i, j] = ix(t);
        let hh = h() * h();
        Sides::vanishing(
            g(i, j) * g(i, j) - c(i) * rc(j) * rc(j) - c(j) * rc(i) * rc(i)
                + frac(1, 6) * sym3(p(i, j), rc(i), rc(j))
                + frac(1, 3)
                    * hbar2()
                    * (anti2(rc(i), rc(j))
                        + 16 * h() * rc(i) * (p(i, j) + c(j))
                        + 16 * h() * rc(j) * (p(i, j) + c(i))
                        - 36 * hh.clone() * (p(i, j) * p(i, j) - 4 * c(i) * c(j)))
                + 8 * hbar4() * hh * p(i, j),
        )
    });
    b.add("hocKC2", 3, Kind::Closure, "{G_ij, G_jk} - 1/6 (...) + C_j {Rc_i, Rc_k} - 16/3 hbar^2 (...) + 12 hbar^2 (...) = 0", |_, t| {
        let [i, j, k] = ix(t);
        Sides::vanishing(
            anti2(g(i, j), g(j, k))
                - frac(1, 6)
                    * (sym3(p(i, j), rc(j), rc(k)) + sym3(p(j, k), rc(i), rc(j)) - sym3(p(i, k), rc(j), rc(j)))
                + c(j) * anti2(rc(i), rc(k))
                - frac(16, 3) * hbar2() * (h() * rc(i) * p(j, k) + h() * rc(j) * p(i, k) + h() * rc(k) * p(i, j))
                + 12 * hbar2() * (h() * h() * anti2(p(i, j), p(j, k)) - 4 * h() * h() * c(j) * p(i, k)),
        )
    });
    b.add("hocKC3", 4, Kind::Closure, "{G_ij, G_kl} - 1/6 (...) - 12 hbar^2 (H^2 {P_il, P_jk} - H^2 {P_ik, P_jl}) = 0", |_, t| {
        let [i, j, k, l] = ix(t);
        Sides::vanishing(
            anti2(g(i, j), g(k, l))
                - frac(1, 6)
                    * (sym3(p(i, k), rc(j), rc(l)) + sym3(p(j, l), rc(i), rc(k))
                        - sym3(p(j, k), rc(i), rc(l))
                        - sym3(p(i, l), rc(j), rc(k)))
                - 12 * hbar2() * (h() * h() * anti2(p(i, l), p(j, k)) - h() * h() * anti2(p(i, k), p(j, l))),
        )
    });
    b.add("hocKC4", 3, Kind::Closure, "{G_ij, F_ijk} - 1/6 (...) - C_i {Rc_j, P_jk} - ... + hbar^2/3 (...) = 0", |_, t| {
        let [i, j, k] = ix(t);
        Sides::vanishing(anti_g_f_ijk(rc, i, j, k))
    });
    b.add("hocKC5", 4, Kind::Closure, "{G_ij, F_jkl} - 1/6 (...) - C_j {Rc_l, P_ik} + C_j {Rc_k, P_il} = 0", |_, t| {
        let [i, j, k, l] = ix(t);
        Sides::vanishing(anti_g_f_jkl(rc, i, j, k, l))
    });
    b.add("hocKC6", 5, Kind::Closure, "{G_ij, F_klm} - 1/6 (...) = 0", |_, t| {
        let [i, j, k, l, m] = ix(t);
        Sides::vanishing(anti_g_f_klm(rc, i, j, k, l, m))
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_sizes() {
        let count = |f, m| catalog(f, m).len();
        assert_eq!(count(Frame::Classical, Model::Generic), 3 + 10 + 4 + 14);
        assert_eq!(count(Frame::Quantum, Model::Generic), 3 + 10 + 4 + 14);
        assert_eq!(count(Frame::Classical, Model::Sw), 1 + 5 + 12 + 1 + 6);
        assert_eq!(count(Frame::Quantum, Model::Sw), 1 + 5 + 12 + 1 + 6);
        assert_eq!(count(Frame::Classical, Model::Kc), 4 + 4 + 14 + 1 + 6);
        assert_eq!(count(Frame::Quantum, Model::Kc), 4 + 4 + 1 + 14 + 14 + 6);
    }

    #[test]
    fn ids_are_unique_and_arity_bounded() {
        for model in [Model::Generic, Model::Sw, Model::Kc] {
            let all = full_catalog(model);
            let mut ids: Vec<_> = all.iter().map(|s| s.id.clone()).collect();
            ids.sort();
            ids.dedup();
            assert_eq!(ids.len(), all.len());
            assert!(all.iter().all(|s| s.arity <= 6));
        }
    }

    #[test]
    fn quantum_relations_pair_with_classical() {
        for model in [Model::Generic, Model::Sw, Model::Kc] {
            let classical: Vec<String> = catalog(Frame::Classical, model).into_iter().map(|s| s.id).collect();
            for q in catalog(Frame::Quantum, model) {
                let id = q.classical_id().unwrap();
                assert!(classical.contains(&id), "{} has no classical partner {}", q.id, id);
            }
        }
    }
}
