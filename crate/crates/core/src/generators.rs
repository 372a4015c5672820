//! Named integrals of motion, built once against [`LieAlgebra`].
//!
//! Indices are 1-based. The classical and quantum constructions differ only
//! where the operator ordering matters; the frame is read from
//! [`LieAlgebra::QUANTUM`].

use std::fmt;
use std::str::FromStr;
use std::sync::RwLock;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::monomial::Space;
use crate::scalar::{Param, ParamScalar, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Frame {
    Classical,
    Quantum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// Arbitrary radial potential `V(r)`.
    Generic,
    /// Smorodinsky-Winternitz: `V = omega^2 r^2 / 2`.
    Sw,
    /// Generalized Kepler-Coulomb: `V = -mu / r`.
    Kc,
}

impl Frame {
    pub fn as_str(self) -> &'static str {
        match self {
            Frame::Classical => "classical",
            Frame::Quantum => "quantum",
        }
    }
}

impl Model {
    pub fn as_str(self) -> &'static str {
        match self {
            Model::Generic => "generic",
            Model::Sw => "sw",
            Model::Kc => "kc",
        }
    }
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Frame {
    type Err = Error;
    fn from_str(s: &str) -> Result<Frame> {
        match s {
            "classical" => Ok(Frame::Classical),
            "quantum" => Ok(Frame::Quantum),
            _ => Err(Error::Config(format!("unknown frame {s:?}"))),
        }
    }
}

impl FromStr for Model {
    type Err = Error;
    fn from_str(s: &str) -> Result<Model> {
        match s {
            "generic" => Ok(Model::Generic),
            "sw" => Ok(Model::Sw),
            "kc" => Ok(Model::Kc),
            _ => Err(Error::Config(format!("unknown model {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModelConfig {
    pub n: usize,
    pub frame: Frame,
    pub model: Model,
    /// Depth `K` of the radial-potential tower (generic model only).
    pub tower: usize,
}

impl ModelConfig {
    /// Defaults to the smallest tower that supports the conservation
    /// checks: `V'` classically, `V'''` for third-order operators.
    pub fn new(n: usize, frame: Frame, model: Model) -> Result<ModelConfig> {
        let tower = match (model, frame) {
            (Model::Generic, Frame::Classical) => 1,
            (Model::Generic, Frame::Quantum) => 3,
            _ => 0,
        };
        let cfg = ModelConfig { n, frame, model, tower };
        cfg.space()?;
        Ok(cfg)
    }

    pub fn with_tower(mut self, k: usize) -> Result<ModelConfig> {
        self.tower = k;
        self.space()?;
        Ok(self)
    }

    pub fn space(&self) -> Result<Space> {
        Space::new(self.n, self.tower)
    }
}

/// Which end of the coordinate list a partial realisation uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// Coordinates `1..=m`.
    Left,
    /// Coordinates `n-m+1..=n`.
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum GenKey {
    L(usize, usize),
    P(usize, usize),
    F(usize, usize, usize),
    H,
    Hi(usize),
    R(usize),
    Rc(usize),
    G(usize, usize),
    Lrl(usize),
    Casimir(usize, Side),
    Dilation,
}

pub struct Generators<A: LieAlgebra> {
    alg: A,
    cfg: ModelConfig,
    zero_a: bool,
    memo: RwLock<FxHashMap<GenKey, A::Elem>>,
}

fn r(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

impl<A: LieAlgebra + Clone> Generators<A> {
    /// The same catalog with every `a_j` set to zero.
    pub fn with_zero_a(&self) -> Generators<A> {
        Generators { alg: self.alg.clone(), cfg: self.cfg, zero_a: true, memo: RwLock::default() }
    }
}

impl<A: LieAlgebra> Generators<A> {
    pub fn new(alg: A, cfg: ModelConfig) -> Result<Generators<A>> {
        let frame = if A::QUANTUM { Frame::Quantum } else { Frame::Classical };
        if cfg.frame != frame {
            return Err(Error::Config(format!("configuration is {} but the algebra is {}", cfg.frame, frame)));
        }
        if alg.space() != cfg.space()? {
            return Err(Error::SpaceMismatch { left: alg.space(), right: cfg.space()? });
        }
        Ok(Generators { alg, cfg, zero_a: false, memo: RwLock::default() })
    }

    pub fn alg(&self) -> &A {
        &self.alg
    }

    pub fn config(&self) -> &ModelConfig {
        &self.cfg
    }

    pub fn n(&self) -> usize {
        self.cfg.n
    }

    pub fn is_zero_a(&self) -> bool {
        self.zero_a
    }

    fn memo(&self, key: GenKey, build: impl FnOnce() -> Result<A::Elem>) -> Result<A::Elem> {
        if let Some(v) = self.memo.read().expect("memo lock poisoned").get(&key) {
            return Ok(v.clone());
        }
        let v = build()?;
        self.memo.write().expect("memo lock poisoned").entry(key).or_insert_with(|| v.clone());
        Ok(v)
    }

    /// Validate 1-based, pairwise distinct indices.
    pub fn check(&self, idx: &[usize]) -> Result<()> {
        for &i in idx {
            if !(1..=self.n()).contains(&i) {
                return Err(Error::IndexOutOfRange { index: i, n: self.n() });
            }
        }
        for (a, i) in idx.iter().enumerate() {
            if idx[a + 1..].contains(i) {
                return Err(Error::RepeatedIndex(idx.to_vec()));
            }
        }
        Ok(())
    }

    fn check_m(&self, m: usize) -> Result<()> {
        if (1..=self.n()).contains(&m) {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: m, n: self.n() })
        }
    }

    fn require(&self, model: Model, generator: &'static str) -> Result<()> {
        if self.cfg.model == model {
            Ok(())
        } else {
            Err(Error::ModelMismatch { generator, model: self.cfg.model.to_string() })
        }
    }

    fn hbar_sq(&self) -> ParamScalar {
        ParamScalar::param_pow(Param::Hbar, 2)
    }

    /// `i * hbar * q`.
    fn ihbar(&self, q: Rational) -> ParamScalar {
        ParamScalar::i().mul(&ParamScalar::param(Param::Hbar)).mul(&ParamScalar::from_ratio(*q.numer(), *q.denom()))
    }

    fn mul(&self, a: &A::Elem, b: &A::Elem) -> Result<A::Elem> {
        self.alg.mul(a, b)
    }

    /// Symmetrised product `(ab + ba) / 2`.
    fn sym(&self, a: &A::Elem, b: &A::Elem) -> Result<A::Elem> {
        let ab = self.mul(a, b)?;
        if !A::QUANTUM {
            return Ok(ab);
        }
        let ba = self.mul(b, a)?;
        Ok(self.alg.scale(&self.alg.add(&ab, &ba), r(1, 2)))
    }

    /// Coupling constant `a_i`, or zero in the rotationally invariant case.
    pub fn a(&self, i: usize) -> A::Elem {
        if self.zero_a {
            self.alg.zero()
        } else {
            self.alg.param(Param::A(i))
        }
    }

    /// `a_i / x_i^2`.
    fn centrifugal(&self, i: usize) -> Result<A::Elem> {
        self.mul(&self.a(i), &self.alg.x_pow(i, -2))
    }

    pub fn l(&self, i: usize, j: usize) -> Result<A::Elem> {
        self.check(&[i, j])?;
        self.memo(GenKey::L(i, j), || {
            let a = self.mul(&self.alg.x_pow(i, 1), &self.alg.momentum(j))?;
            let b = self.mul(&self.alg.x_pow(j, 1), &self.alg.momentum(i))?;
            Ok(self.alg.sub(&a, &b))
        })
    }

    /// `sum_{i<j} L_ij^2`.
    pub fn l_squared(&self) -> Result<A::Elem> {
        let mut acc = self.alg.zero();
        for i in 1..=self.n() {
            for j in i + 1..=self.n() {
                let l = self.l(i, j)?;
                acc = self.alg.add(&acc, &self.mul(&l, &l)?);
            }
        }
        Ok(acc)
    }

    /// `L_ij^2 + a_i x_j^2/x_i^2 + a_j x_i^2/x_j^2`, without any shift.
    fn q_core(&self, i: usize, j: usize) -> Result<A::Elem> {
        let l = self.l(i, j)?;
        let t1 = self.alg.product(&[&self.a(i), &self.alg.x_pow(j, 2), &self.alg.x_pow(i, -2)])?;
        let t2 = self.alg.product(&[&self.a(j), &self.alg.x_pow(i, 2), &self.alg.x_pow(j, -2)])?;
        Ok(self.alg.add(&self.alg.add(&self.mul(&l, &l)?, &t1), &t2))
    }

    pub fn q(&self, i: usize, j: usize) -> Result<A::Elem> {
        self.check(&[i, j])?;
        let core = self.q_core(i, j)?;
        if A::QUANTUM {
            let shift = self.alg.constant(&self.hbar_sq().scale(&big_ratio(1, 2)));
            Ok(self.alg.add(&core, &shift))
        } else {
            Ok(core)
        }
    }

    pub fn p(&self, i: usize, j: usize) -> Result<A::Elem> {
        self.check(&[i, j])?;
        let key = GenKey::P(i.min(j), i.max(j));
        self.memo(key, || Ok(self.alg.scale(&self.q(i.min(j), i.max(j))?, r(-1, 4))))
    }

    pub fn c_const_scalar(&self, i: usize) -> ParamScalar {
        let a = if self.zero_a { ParamScalar::zero() } else { ParamScalar::param(Param::A(i)) };
        if A::QUANTUM {
            self.hbar_sq().scale(&big_ratio(3, 16)).sub(&a.scale(&big_ratio(1, 4)))
        } else {
            a.scale(&big_ratio(-1, 4))
        }
    }

    /// The central element `C_i`.
    pub fn c_const(&self, i: usize) -> Result<A::Elem> {
        self.check(&[i])?;
        Ok(self.alg.constant(&self.c_const_scalar(i)))
    }

    pub fn c_ij(&self, i: usize, j: usize) -> Result<A::Elem> {
        self.check(&[i, j])?;
        let mut inner = self.alg.add(&self.q_core(i, j)?, &self.alg.add(&self.a(i), &self.a(j)));
        if A::QUANTUM {
            inner = self.alg.sub(&inner, &self.alg.constant(&self.hbar_sq()));
        }
        Ok(self.alg.scale(&inner, r(-1, 4)))
    }

    /// `F_ijk`: half the bracket of `P_ij` with `P_jk`.
    pub fn f(&self, i: usize, j: usize, k: usize) -> Result<A::Elem> {
        self.check(&[i, j, k])?;
        self.memo(GenKey::F(i, j, k), || {
            let b = self.alg.lie(&self.p(i, j)?, &self.p(j, k)?)?;
            Ok(self.alg.scale(&b, r(1, 2)))
        })
    }

    fn coords(&self, m: usize, side: Side) -> Result<Vec<usize>> {
        self.check_m(m)?;
        Ok(match side {
            Side::Left => (1..=m).collect(),
            Side::Right => (self.n() - m + 1..=self.n()).collect(),
        })
    }

    /// `J_+` of the `m`-particle realisation.
    pub fn j_plus(&self, m: usize, side: Side) -> Result<A::Elem> {
        let mut acc = self.alg.zero();
        for j in self.coords(m, side)? {
            let pj = self.alg.momentum(j);
            acc = self.alg.add(&acc, &self.alg.add(&self.mul(&pj, &pj)?, &self.centrifugal(j)?));
        }
        Ok(self.alg.scale(&acc, r(1, 2)))
    }

    pub fn j_minus(&self, m: usize, side: Side) -> Result<A::Elem> {
        let terms: Vec<A::Elem> = self.coords(m, side)?.into_iter().map(|j| self.alg.x_pow(j, 2)).collect();
        Ok(self.alg.scale(&self.alg.sum(&terms), r(1, 2)))
    }

    /// `J_3`; in the quantum frame `(x p + p x) / 4` summed, i.e.
    /// `x.p / 2 - i hbar m / 4` in normal order.
    pub fn j3(&self, m: usize, side: Side) -> Result<A::Elem> {
        let mut acc = self.alg.zero();
        for j in self.coords(m, side)? {
            acc = self.alg.add(&acc, &self.mul(&self.alg.x_pow(j, 1), &self.alg.momentum(j))?);
        }
        let mut out = self.alg.scale(&acc, r(1, 2));
        if A::QUANTUM {
            out = self.alg.add(&out, &self.alg.constant(&self.ihbar(r(-(m as i64), 4))));
        }
        Ok(out)
    }

    /// Casimir of the `m`-particle sl(2) realisation, built from the `J`s.
    pub fn casimir_sl2(&self, m: usize, side: Side) -> Result<A::Elem> {
        let j3 = self.j3(m, side)?;
        let jp = self.j_plus(m, side)?;
        let jm = self.j_minus(m, side)?;
        Ok(self.alg.sub(&self.mul(&j3, &j3)?, &self.sym(&jp, &jm)?))
    }

    /// Left or right coalgebra Casimir as `sum P_ij + sum C_i`.
    pub fn casimir(&self, m: usize, side: Side) -> Result<A::Elem> {
        let coords = self.coords(m, side)?;
        self.memo(GenKey::Casimir(m, side), || {
            let mut acc = self.alg.zero();
            for (a, &i) in coords.iter().enumerate() {
                acc = self.alg.add(&acc, &self.c_const(i)?);
                for &j in &coords[a + 1..] {
                    acc = self.alg.add(&acc, &self.p(i, j)?);
                }
            }
            Ok(acc)
        })
    }

    pub fn casimir_left(&self, m: usize) -> Result<A::Elem> {
        self.casimir(m, Side::Left)
    }

    pub fn casimir_right(&self, m: usize) -> Result<A::Elem> {
        self.casimir(m, Side::Right)
    }

    /// The model Hamiltonian `J_+ + V`.
    pub fn h(&self) -> Result<A::Elem> {
        self.memo(GenKey::H, || {
            let kinetic = self.j_plus(self.n(), Side::Left)?;
            let v = match self.cfg.model {
                Model::Generic => self.alg.potential()?,
                Model::Sw => {
                    let w2 = self.alg.constant(&ParamScalar::param_pow(Param::Omega, 2));
                    self.alg.scale(&self.mul(&w2, &self.r_squared())?, r(1, 2))
                }
                Model::Kc => self.alg.neg(&self.mul(&self.alg.param(Param::Mu), &self.alg.r_pow(-1))?),
            };
            Ok(self.alg.add(&kinetic, &v))
        })
    }

    fn r_squared(&self) -> A::Elem {
        let terms: Vec<A::Elem> = (1..=self.n()).map(|j| self.alg.x_pow(j, 2)).collect();
        self.alg.sum(&terms)
    }

    /// One-dimensional oscillator Hamiltonians of the SW model.
    pub fn h_i(&self, i: usize) -> Result<A::Elem> {
        self.require(Model::Sw, "H_i")?;
        self.check(&[i])?;
        self.memo(GenKey::Hi(i), || {
            let p = self.alg.momentum(i);
            let w2 = self.alg.constant(&ParamScalar::param_pow(Param::Omega, 2));
            let osc = self.mul(&w2, &self.alg.x_pow(i, 2))?;
            let sum = self.alg.add(&self.alg.add(&self.mul(&p, &p)?, &self.centrifugal(i)?), &osc);
            Ok(self.alg.scale(&sum, r(1, 2)))
        })
    }

    /// `sum_j {x_j, p_j}` (twice `x.p` classically).
    fn dilation(&self) -> Result<A::Elem> {
        self.memo(GenKey::Dilation, || {
            let mut acc = self.alg.zero();
            for j in 1..=self.n() {
                let x = self.alg.x_pow(j, 1);
                let p = self.alg.momentum(j);
                acc = self.alg.add(&acc, &self.alg.scale(&self.sym(&x, &p)?, r(2, 1)));
            }
            Ok(acc)
        })
    }

    /// `sum_j L_ij p_j` (symmetrised in the quantum frame) minus `mu x_i / r`.
    fn lrl_core(&self, i: usize) -> Result<A::Elem> {
        let mut acc = self.alg.zero();
        for j in (1..=self.n()).filter(|&j| j != i) {
            acc = self.alg.add(&acc, &self.sym(&self.l(i, j)?, &self.alg.momentum(j))?);
        }
        let coulomb = self.alg.product(&[&self.alg.param(Param::Mu), &self.alg.x_pow(i, 1), &self.alg.r_pow(-1)])?;
        Ok(self.alg.sub(&acc, &coulomb))
    }

    /// Component `A_i` of the Laplace-Runge-Lenz vector.
    pub fn lrl(&self, i: usize) -> Result<A::Elem> {
        self.require(Model::Kc, "A_i")?;
        self.check(&[i])?;
        self.memo(GenKey::Lrl(i), || self.lrl_core(i))
    }

    /// Fourth-order integrals `R_i` of the generalized Kepler-Coulomb model.
    pub fn r_i(&self, i: usize) -> Result<A::Elem> {
        self.require(Model::Kc, "R_i")?;
        self.check(&[i])?;
        self.memo(GenKey::R(i), || {
            let mut inner = self.lrl_core(i)?;
            for j in 1..=self.n() {
                let t = self.mul(&self.alg.x_pow(i, 1), &self.centrifugal(j)?)?;
                inner = self.alg.add(&inner, &t);
            }
            let square = self.mul(&inner, &inner)?;
            let w = self.centrifugal(i)?;
            let d = self.dilation()?;
            let tail = if A::QUANTUM {
                let dd = self.mul(&d, &d)?;
                let t1 = self.alg.scale(&self.mul(&w, &dd)?, r(3, 64));
                let t2 = self.alg.scale(&self.alg.product(&[&d, &w, &d])?, r(5, 32));
                let t3 = self.alg.scale(&self.mul(&dd, &w)?, r(3, 64));
                self.alg.add(&self.alg.add(&t1, &t2), &t3)
            } else {
                let xp = self.alg.scale(&d, r(1, 2));
                self.alg.product(&[&w, &xp, &xp])?
            };
            Ok(self.alg.add(&square, &tail))
        })
    }

    /// `R_i - hbar^2 H` (quantum frame only).
    pub fn r_compact(&self, i: usize) -> Result<A::Elem> {
        if !A::QUANTUM {
            return Err(Error::Config("the compact fourth-order operators exist only in the quantum frame".into()));
        }
        self.memo(GenKey::Rc(i), || {
            let shift = self.mul(&self.alg.constant(&self.hbar_sq()), &self.h()?)?;
            Ok(self.alg.sub(&self.r_i(i)?, &shift))
        })
    }

    /// `G_ij`: half the bracket of `H_i` (SW) or `R_i` (KC) with `P_ij`.
    pub fn g(&self, i: usize, j: usize) -> Result<A::Elem> {
        self.check(&[i, j])?;
        self.memo(GenKey::G(i, j), || {
            let first = match self.cfg.model {
                Model::Sw => self.h_i(i)?,
                Model::Kc => self.r_i(i)?,
                Model::Generic => return Err(Error::ModelMismatch { generator: "G_ij", model: "generic".into() }),
            };
            Ok(self.alg.scale(&self.alg.lie(&first, &self.p(i, j)?)?, r(1, 2)))
        })
    }
}

pub(crate) fn big_ratio(num: i64, den: i64) -> num_rational::BigRational {
    num_rational::BigRational::new(num.into(), den.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Algebra, PhaseAlgebra, WeylAlgebra};
    use crate::phase::PhaseExpr;
    use crate::weyl::WeylExpr;

    fn classical(n: usize, model: Model) -> Generators<PhaseAlgebra> {
        let cfg = ModelConfig::new(n, Frame::Classical, model).unwrap();
        Generators::new(PhaseAlgebra { space: cfg.space().unwrap() }, cfg).unwrap()
    }

    fn quantum(n: usize, model: Model) -> Generators<WeylAlgebra> {
        let cfg = ModelConfig::new(n, Frame::Quantum, model).unwrap();
        Generators::new(WeylAlgebra { space: cfg.space().unwrap() }, cfg).unwrap()
    }

    #[test]
    fn central_elements() {
        let g = classical(3, Model::Generic);
        let s = g.alg().space();
        assert_eq!(g.c_const(2).unwrap(), PhaseExpr::parse(s, "-1/4 * a2").unwrap());
        let q = quantum(3, Model::Generic);
        assert_eq!(q.c_const(1).unwrap(), WeylExpr::parse(q.alg().space(), "3/16 * hbar^2 + -1/4 * a1").unwrap());
    }

    #[test]
    fn index_validation() {
        let g = classical(3, Model::Generic);
        assert_eq!(g.p(1, 1), Err(Error::RepeatedIndex(vec![1, 1])));
        assert_eq!(g.p(1, 4), Err(Error::IndexOutOfRange { index: 4, n: 3 }));
        assert!(matches!(g.h_i(1), Err(Error::ModelMismatch { .. })));
        assert!(matches!(g.g(1, 2), Err(Error::ModelMismatch { .. })));
    }

    #[test]
    fn p_at_a_point() {
        use num_rational::BigRational;
        let g = classical(3, Model::Generic);
        let v = |k: i64| BigRational::from_integer(k.into());
        let point = crate::phase::EvalPoint {
            x: vec![v(1), v(2), v(2)],
            p: vec![v(1), v(0), v(0)],
            r: v(3),
            v: vec![],
            params: crate::scalar::ParamValues { hbar: v(1), omega: v(1), mu: v(1), a: vec![v(0); 3] },
        };
        let val = g.p(1, 2).unwrap().eval(&point).unwrap();
        assert_eq!(val, crate::scalar::GaussianRational::from_int(-1));
    }

    #[test]
    fn j3_one_particle() {
        let g = classical(2, Model::Generic);
        assert_eq!(g.j3(1, Side::Left).unwrap(), PhaseExpr::parse(g.alg().space(), "1/2 * x1 * p1").unwrap());
        let q = quantum(2, Model::Generic);
        let s = q.alg().space();
        assert_eq!(q.j3(1, Side::Left).unwrap(), WeylExpr::parse(s, "1/2 * x1 * p1 + -i/4 * hbar").unwrap());
        let x = q.alg().x_pow(1, 1);
        let p = q.alg().momentum(1);
        let sym = x.anticommutator(&p).unwrap().scale(r(1, 4));
        assert_eq!(q.j3(1, Side::Left).unwrap(), sym);
    }
}
