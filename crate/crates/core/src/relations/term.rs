//! A small term language for relations.
//!
//! Relations are written once as [`Term`] trees over named generators and
//! interpreted in any [`LieAlgebra`]: the symbolic kernels and the oracles
//! evaluate the very same trees.

use std::ops::{Add, Mul, Neg, Sub};

use crate::algebra::LieAlgebra;
use crate::error::Result;
use crate::generators::{Generators, Side};
use crate::scalar::{Param, ParamScalar};

/// A named generator with concrete 1-based indices.
#[derive(Clone, Debug, PartialEq)]
pub enum Gen {
    L(usize, usize),
    Q(usize, usize),
    P(usize, usize),
    /// Central element `C_i`.
    C(usize),
    Cij(usize, usize),
    F(usize, usize, usize),
    JPlus(usize, Side),
    JMinus(usize, Side),
    J3(usize, Side),
    /// `J_3^2 - J_+ J_-`, symmetrised in the quantum frame.
    CasSl2(usize, Side),
    /// `sum P_ij + sum C_i` over a partial coordinate block.
    Cas(usize, Side),
    LSquared,
    H,
    Hi(usize),
    R(usize),
    Rc(usize),
    G(usize, usize),
    Lrl(usize),
    X(usize, i32),
    Mom(usize),
    RPow(i32),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Term {
    Gen(Gen),
    Const(ParamScalar),
    Sum(Vec<Term>),
    /// Ordered product.
    Prod(Vec<Term>),
    /// Poisson bracket classically, plain commutator `AB - BA` for operators.
    Br(Box<Term>, Box<Term>),
    /// `AB + BA`.
    Anti(Box<Term>, Box<Term>),
    /// Sum of the six orderings of `ABC`.
    Sym3(Box<Term>, Box<Term>, Box<Term>),
}

impl Term {
    /// Top-level summands, with nested sums flattened.
    pub fn summands(&self) -> Vec<Term> {
        match self {
            Term::Sum(items) => items.iter().flat_map(Term::summands).collect(),
            Term::Prod(items) if items.len() == 2 => match (&items[0], &items[1]) {
                (Term::Const(c), Term::Sum(inner)) => inner
                    .iter()
                    .flat_map(Term::summands)
                    .map(|t| Term::Prod(vec![Term::Const(c.clone()), t]))
                    .collect(),
                _ => vec![self.clone()],
            },
            t => vec![t.clone()],
        }
    }

    /// Evaluate against a generator catalog.
    pub fn eval<A: LieAlgebra>(&self, g: &Generators<A>) -> Result<A::Elem> {
        let alg = g.alg();
        Ok(match self {
            Term::Gen(gen) => eval_gen(gen, g)?,
            Term::Const(c) => alg.constant(c),
            Term::Sum(items) => {
                let mut acc = alg.zero();
                for t in items {
                    acc = alg.add(&acc, &t.eval(g)?);
                }
                acc
            }
            Term::Prod(items) => {
                let vals = items.iter().map(|t| t.eval(g)).collect::<Result<Vec<_>>>()?;
                alg.product(&vals.iter().collect::<Vec<_>>())?
            }
            Term::Br(a, b) => {
                let (a, b) = (a.eval(g)?, b.eval(g)?);
                if A::QUANTUM {
                    alg.sub(&alg.mul(&a, &b)?, &alg.mul(&b, &a)?)
                } else {
                    alg.lie(&a, &b)?
                }
            }
            Term::Anti(a, b) => {
                let (a, b) = (a.eval(g)?, b.eval(g)?);
                anti(g, &a, &b)?
            }
            Term::Sym3(a, b, c) => {
                let (a, b, c) = (a.eval(g)?, b.eval(g)?, c.eval(g)?);
                let t1 = alg.mul(&a, &anti(g, &b, &c)?)?;
                let t2 = alg.mul(&b, &anti(g, &a, &c)?)?;
                let t3 = alg.mul(&c, &anti(g, &a, &b)?)?;
                alg.add(&alg.add(&t1, &t2), &t3)
            }
        })
    }
}

fn anti<A: LieAlgebra>(g: &Generators<A>, a: &A::Elem, b: &A::Elem) -> Result<A::Elem> {
    let alg = g.alg();
    Ok(alg.add(&alg.mul(a, b)?, &alg.mul(b, a)?))
}

fn eval_gen<A: LieAlgebra>(gen: &Gen, g: &Generators<A>) -> Result<A::Elem> {
    let alg = g.alg();
    match *gen {
        Gen::L(i, j) => g.l(i, j),
        Gen::Q(i, j) => g.q(i, j),
        Gen::P(i, j) => g.p(i, j),
        Gen::C(i) => g.c_const(i),
        Gen::Cij(i, j) => g.c_ij(i, j),
        Gen::F(i, j, k) => g.f(i, j, k),
        Gen::JPlus(m, s) => g.j_plus(m, s),
        Gen::JMinus(m, s) => g.j_minus(m, s),
        Gen::J3(m, s) => g.j3(m, s),
        Gen::CasSl2(m, s) => g.casimir_sl2(m, s),
        Gen::Cas(m, s) => g.casimir(m, s),
        Gen::LSquared => g.l_squared(),
        Gen::H => g.h(),
        Gen::Hi(i) => g.h_i(i),
        Gen::R(i) => g.r_i(i),
        Gen::Rc(i) => g.r_compact(i),
        Gen::G(i, j) => g.g(i, j),
        Gen::Lrl(i) => g.lrl(i),
        Gen::X(i, e) => {
            g.check(&[i])?;
            Ok(alg.x_pow(i, e))
        }
        Gen::Mom(i) => {
            g.check(&[i])?;
            Ok(alg.momentum(i))
        }
        Gen::RPow(e) => Ok(alg.r_pow(e)),
    }
}

impl Add for Term {
    type Output = Term;
    fn add(self, o: Term) -> Term {
        let mut items = match self {
            Term::Sum(v) => v,
            t => vec![t],
        };
        match o {
            Term::Sum(v) => items.extend(v),
            t => items.push(t),
        }
        Term::Sum(items)
    }
}

impl Neg for Term {
    type Output = Term;
    fn neg(self) -> Term {
        int(-1) * self
    }
}

impl Sub for Term {
    type Output = Term;
    fn sub(self, o: Term) -> Term {
        self + -o
    }
}

impl Mul for Term {
    type Output = Term;
    fn mul(self, o: Term) -> Term {
        let mut items = match self {
            Term::Prod(v) => v,
            t => vec![t],
        };
        match o {
            Term::Prod(v) => items.extend(v),
            t => items.push(t),
        }
        Term::Prod(items)
    }
}

impl Mul<Term> for i64 {
    type Output = Term;
    fn mul(self, t: Term) -> Term {
        int(self) * t
    }
}

pub fn int(k: i64) -> Term {
    Term::Const(ParamScalar::from_int(k))
}

pub fn frac(num: i64, den: i64) -> Term {
    Term::Const(ParamScalar::from_ratio(num, den))
}

pub fn scalar(c: ParamScalar) -> Term {
    Term::Const(c)
}

pub fn hbar2() -> Term {
    Term::Const(ParamScalar::param_pow(Param::Hbar, 2))
}

pub fn hbar4() -> Term {
    Term::Const(ParamScalar::param_pow(Param::Hbar, 4))
}

/// `i hbar`.
pub fn ihbar() -> Term {
    Term::Const(ParamScalar::i().mul(&ParamScalar::param(Param::Hbar)))
}

pub fn omega2() -> Term {
    Term::Const(ParamScalar::param_pow(Param::Omega, 2))
}

pub fn mu() -> Term {
    Term::Const(ParamScalar::param(Param::Mu))
}

pub fn mu2() -> Term {
    Term::Const(ParamScalar::param_pow(Param::Mu, 2))
}

pub fn a(i: usize) -> Term {
    Term::Const(ParamScalar::param(Param::A(i)))
}

pub fn zero() -> Term {
    Term::Sum(Vec::new())
}

pub fn sum<I: IntoIterator<Item = Term>>(items: I) -> Term {
    items.into_iter().fold(zero(), |acc, t| acc + t)
}

pub fn br(a: Term, b: Term) -> Term {
    Term::Br(Box::new(a), Box::new(b))
}

pub fn anti2(a: Term, b: Term) -> Term {
    Term::Anti(Box::new(a), Box::new(b))
}

pub fn sym3(a: Term, b: Term, c: Term) -> Term {
    Term::Sym3(Box::new(a), Box::new(b), Box::new(c))
}

fn gen(g: Gen) -> Term {
    Term::Gen(g)
}

pub fn l(i: usize, j: usize) -> Term {
    gen(Gen::L(i, j))
}
pub fn q(i: usize, j: usize) -> Term {
    gen(Gen::Q(i, j))
}
pub fn p(i: usize, j: usize) -> Term {
    gen(Gen::P(i, j))
}
pub fn c(i: usize) -> Term {
    gen(Gen::C(i))
}
pub fn cij(i: usize, j: usize) -> Term {
    gen(Gen::Cij(i, j))
}
pub fn f(i: usize, j: usize, k: usize) -> Term {
    gen(Gen::F(i, j, k))
}
pub fn jp(m: usize, s: Side) -> Term {
    gen(Gen::JPlus(m, s))
}
pub fn jm(m: usize, s: Side) -> Term {
    gen(Gen::JMinus(m, s))
}
pub fn j3(m: usize, s: Side) -> Term {
    gen(Gen::J3(m, s))
}
pub fn cas_sl2(m: usize, s: Side) -> Term {
    gen(Gen::CasSl2(m, s))
}
pub fn cas(m: usize, s: Side) -> Term {
    gen(Gen::Cas(m, s))
}
pub fn lsq() -> Term {
    gen(Gen::LSquared)
}
pub fn h() -> Term {
    gen(Gen::H)
}
pub fn hi(i: usize) -> Term {
    gen(Gen::Hi(i))
}
pub fn r(i: usize) -> Term {
    gen(Gen::R(i))
}
pub fn rc(i: usize) -> Term {
    gen(Gen::Rc(i))
}
pub fn g(i: usize, j: usize) -> Term {
    gen(Gen::G(i, j))
}
pub fn lrl(i: usize) -> Term {
    gen(Gen::Lrl(i))
}
pub fn x(i: usize, e: i32) -> Term {
    gen(Gen::X(i, e))
}
pub fn mom(i: usize) -> Term {
    gen(Gen::Mom(i))
}
pub fn rpow(e: i32) -> Term {
    gen(Gen::RPow(e))
}
