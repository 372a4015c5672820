//! Textual form of expressions.
//!
//! Terms are joined by `" + "`; a term is a `*`-separated product of a
//! coefficient, parameter powers and variable powers, e.g.
//! `(1 - 2*i)/3 * hbar^2 * a1 * x1^-2 * p2 * r^-1 * V0`. Unit factors and
//! unit exponents are omitted and the zero expression prints as `0`.
//! Quantum expressions print momenta rightmost, matching their normal order.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, Space, MAX_V, N_PARAMS};
use crate::poly::Poly;
use crate::scalar::{GaussianRational, Param};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Layout {
    Phase,
    Weyl,
}

/// Render `(a + b i) / den` in lowest terms.
pub(crate) fn format_gaussian(a: &BigInt, b: &BigInt, den: &BigInt) -> String {
    let g = a.gcd(b).gcd(den);
    let (mut a, mut b, mut den) = if g.is_zero() { (a.clone(), b.clone(), den.clone()) } else { (a / &g, b / &g, den / &g) };
    if den.is_negative() {
        a = -a;
        b = -b;
        den = -den;
    }
    let tail = if den.is_one() { String::new() } else { format!("/{den}") };
    if b.is_zero() {
        return format!("{a}{tail}");
    }
    let imag = |b: &BigInt| {
        if b.is_one() {
            "i".to_string()
        } else if *b == -BigInt::one() {
            "-i".to_string()
        } else {
            format!("{b}*i")
        }
    };
    if a.is_zero() {
        return format!("{}{tail}", imag(&b));
    }
    let sign = if b.is_negative() { '-' } else { '+' };
    let mag = b.abs();
    let im = if mag.is_one() { "i".to_string() } else { format!("{mag}*i") };
    format!("({a} {sign} {im}){tail}")
}

fn power(name: &str, e: i32) -> String {
    if e == 1 {
        name.to_string()
    } else {
        format!("{name}^{e}")
    }
}

pub(crate) fn format_term(m: &Monomial, coef: &GaussianRational, space: Space, layout: Layout) -> String {
    let mut factors = Vec::new();
    for slot in 0..N_PARAMS {
        if m.s[slot] != 0 {
            factors.push(power(&Param::from_slot(slot).name(), m.s[slot] as i32));
        }
    }
    let n = space.n();
    let xs = (0..n).filter(|&i| m.x[i] != 0).map(|i| power(&format!("x{}", i + 1), m.x[i] as i32));
    let ps: Vec<String> = (0..n).filter(|&i| m.p[i] != 0).map(|i| power(&format!("p{}", i + 1), m.p[i] as i32)).collect();
    factors.extend(xs);
    if layout == Layout::Phase {
        factors.extend(ps.iter().cloned());
    }
    if m.r != 0 {
        factors.push(power("r", m.r as i32));
    }
    for k in 0..MAX_V {
        if m.v[k] != 0 {
            factors.push(power(&format!("V{k}"), m.v[k] as i32));
        }
    }
    if layout == Layout::Weyl {
        factors.extend(ps);
    }
    let c = coef.to_string();
    if factors.is_empty() {
        return c;
    }
    if c != "1" {
        factors.insert(0, c);
    }
    factors.join(" * ")
}

pub(crate) fn format_poly(p: &Poly, space: Space, layout: Layout) -> String {
    if p.terms.is_empty() {
        return "0".to_string();
    }
    p.terms
        .iter()
        .map(|(m, c)| format_term(m, &c.to_gaussian(p.den), space, layout))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn perr(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

/// Split at `sep` outside parentheses, returning (offset, piece) pairs.
fn split_top(s: &str, sep: char, base: usize) -> Result<Vec<(usize, &str)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (ix, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(perr(base + ix, "unbalanced ')'"));
                }
            }
            c if c == sep && depth == 0 => {
                out.push((base + start, &s[start..ix]));
                start = ix + c.len_utf8();
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(perr(base + s.len(), "unbalanced '('"));
    }
    out.push((base + start, &s[start..]));
    Ok(out)
}

fn parse_int(s: &str, pos: usize) -> Result<BigInt> {
    s.trim().parse::<BigInt>().map_err(|_| perr(pos, format!("expected an integer, found {:?}", s.trim())))
}

fn rat(k: BigInt) -> BigRational {
    BigRational::from_integer(k)
}

/// Parse the inside of `( a + b*i )` or `( a - i )`.
fn parse_paren_gaussian(inner: &str, pos: usize) -> Result<GaussianRational> {
    let compact: String = inner.chars().filter(|c| !c.is_whitespace()).collect();
    let split = compact[1..].find(['+', '-']).map(|ix| ix + 1).ok_or_else(|| perr(pos, "expected a complex number"))?;
    let (re, im) = compact.split_at(split);
    let re = parse_int(re, pos)?;
    let sign = if im.starts_with('-') { -1 } else { 1 };
    let im = &im[1..];
    let b = match im {
        "i" => BigInt::one(),
        _ => parse_int(im.strip_suffix("*i").ok_or_else(|| perr(pos, "imaginary part must end in i"))?, pos)?,
    };
    Ok(GaussianRational::new(rat(re), rat(b * sign)))
}

/// Multiply `m` by one variable/parameter power named `name`.
fn apply_symbol(m: &mut Monomial, name: &str, e: i32, space: Space, pos: usize) -> Result<()> {
    let index = |rest: &str| -> Result<usize> {
        let k: usize = rest.parse().map_err(|_| perr(pos, format!("unknown symbol {name:?}")))?;
        space.check_index(k).map_err(|_| perr(pos, format!("index in {name:?} out of range")))
    };
    let nonneg = |e: i32| -> Result<u8> { u8::try_from(e).map_err(|_| perr(pos, format!("{name} needs a nonnegative exponent"))) };
    let add_i8 = |a: i8| -> Result<i8> {
        i8::try_from(a as i32 + e).map_err(|_| perr(pos, "exponent out of range"))
    };
    match name {
        "hbar" => m.s[0] = m.s[0].saturating_add(nonneg(e)?),
        "omega" => m.s[1] = m.s[1].saturating_add(nonneg(e)?),
        "mu" => m.s[2] = m.s[2].saturating_add(nonneg(e)?),
        "r" => m.r = add_i8(m.r)?,
        _ => {
            let (head, rest) = name.split_at(1);
            match head {
                "a" => {
                    let i = index(rest)?;
                    m.s[3 + i] = m.s[3 + i].saturating_add(nonneg(e)?);
                }
                "x" => {
                    let i = index(rest)?;
                    m.x[i] = add_i8(m.x[i])?;
                }
                "p" => {
                    let i = index(rest)?;
                    m.p[i] = m.p[i].saturating_add(nonneg(e)?);
                }
                "V" => {
                    let k: usize = rest.parse().map_err(|_| perr(pos, format!("unknown symbol {name:?}")))?;
                    if k > space.tower() {
                        return Err(perr(pos, format!("{name} exceeds the potential tower")));
                    }
                    m.v[k] = m.v[k].saturating_add(nonneg(e)?);
                }
                _ => return Err(perr(pos, format!("unknown symbol {name:?}"))),
            }
        }
    }
    Ok(())
}

fn parse_factor(raw: &str, pos: usize, space: Space, m: &mut Monomial, coef: &mut GaussianRational) -> Result<()> {
    let s = raw.trim();
    if s.is_empty() {
        return Err(perr(pos, "empty factor"));
    }
    if let Some(rest) = s.strip_prefix('(') {
        let close = rest.rfind(')').ok_or_else(|| perr(pos, "missing ')'"))?;
        let mut c = parse_paren_gaussian(&rest[..close], pos + 1)?;
        let tail = rest[close + 1..].trim();
        if let Some(d) = tail.strip_prefix('/') {
            c = c.scale(&rat(parse_int(d, pos)?).recip());
        } else if !tail.is_empty() {
            return Err(perr(pos, format!("unexpected {tail:?}")));
        }
        *coef = coef.mul(&c);
        return Ok(());
    }
    let (body, den) = match s.split_once('/') {
        Some((b, d)) => (b.trim(), Some(parse_int(d, pos)?)),
        None => (s, None),
    };
    if let Some(d) = den {
        if d.is_zero() {
            return Err(perr(pos, "division by zero"));
        }
        *coef = coef.scale(&rat(d).recip());
    }
    let (neg, body) = match body.strip_prefix('-') {
        Some(b) if !b.starts_with(|c: char| c.is_ascii_digit()) => (true, b),
        _ => (false, body),
    };
    if neg {
        *coef = coef.neg();
    }
    if body == "i" {
        *coef = coef.mul(&GaussianRational::i());
        return Ok(());
    }
    if body.starts_with(|c: char| c.is_ascii_digit() || c == '-') {
        *coef = coef.scale(&rat(parse_int(body, pos)?));
        return Ok(());
    }
    let (name, e) = match body.split_once('^') {
        Some((n, e)) => (n.trim(), e.trim().parse::<i32>().map_err(|_| perr(pos, format!("bad exponent {e:?}")))?),
        None => (body, 1),
    };
    apply_symbol(m, name, e, space, pos)
}

/// Parse an expression into raw terms (duplicates are allowed and add up).
pub(crate) fn parse_terms(s: &str, space: Space) -> Result<Vec<(Monomial, GaussianRational)>> {
    if s.trim().is_empty() {
        return Err(perr(0, "empty expression"));
    }
    let mut out = Vec::new();
    for (pos, term) in split_top(s, '+', 0)? {
        if term.trim() == "0" {
            continue;
        }
        let mut m = Monomial::ONE;
        let mut c = GaussianRational::one();
        for (fpos, factor) in split_top(term, '*', pos)? {
            parse_factor(factor, fpos, space, &mut m, &mut c)?;
        }
        out.push((m, c));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: i64, b: i64, c: i64) -> String {
        format_gaussian(&BigInt::from(a), &BigInt::from(b), &BigInt::from(c))
    }

    #[test]
    fn gaussian_forms() {
        assert_eq!(g(3, 0, 1), "3");
        assert_eq!(g(2, 0, 4), "1/2");
        assert_eq!(g(0, 1, 1), "i");
        assert_eq!(g(0, -3, 4), "-3*i/4");
        assert_eq!(g(1, -1, 1), "(1 - i)");
        assert_eq!(g(2, 4, 6), "(1 + 2*i)/3");
        assert_eq!(g(0, 0, 5), "0");
    }

    #[test]
    fn parses_printed_factors() {
        let s = Space::new(3, 2).unwrap();
        let terms = parse_terms("(1 - 2*i)/3 * hbar^2 * a1 * x1^-2 * p2 * r^-1 * V0 + -i/2 * p3", s).unwrap();
        assert_eq!(terms.len(), 2);
        let (m, c) = &terms[0];
        assert_eq!((m.x_exp(1), m.p_exp(2), m.r_exp(), m.v_exp(0)), (-2, 1, -1, 1));
        assert_eq!(m.param_exp(Param::Hbar), 2);
        assert_eq!(c.to_string(), "(1 - 2*i)/3");
        assert_eq!(terms[1].1.to_string(), "-i/2");
        assert!(parse_terms("x9", s).is_err());
        assert!(parse_terms("x1 * (1 + i", s).is_err());
        assert!(parse_terms("", s).is_err());
        assert!(parse_terms("hbar^-1", s).is_err());
    }
}
