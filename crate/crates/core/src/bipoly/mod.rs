//! Exact bivariate polynomials in `x` and `y` over the rationals.
//!
//! Polynomials are viewed as elements of `Q[x][y]`: most operations (division,
//! resultants, expansions) treat `y` as the main variable and pure-`x`
//! polynomials as coefficients.

mod adic;
mod approx;
mod parse;
mod resultant;
mod zpoly;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

pub use adic::{adic_expand, AdicDigit, AdicExpansion};
pub use approx::{approximate_root, normalize_tschirnhausen, q_adic_coefficients};
pub use parse::{parse_poly, parse_poly_bounded};
pub use resultant::resultant_y;

/// Exact rational coefficient; always reduced with a positive denominator.
pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos} (only x and y are allowed)")]
    UnknownVariable { name: char, pos: usize },
    #[error("y-degree {degree} exceeds the limit {limit}")]
    DegreeLimit { degree: u64, limit: u32 },
    #[error("polynomial is not monic in y")]
    NotMonic,
    #[error("divisor must have positive y-degree")]
    ConstantDivisor,
    #[error("{d} does not divide the y-degree {n}")]
    NotADivisor { d: u32, n: u32 },
    #[error("invalid expansion basis: {0}")]
    Basis(String),
    #[error("malformed polynomial JSON: {0}")]
    Json(String),
}

/// An `x`-order: a nonnegative integer, or infinity for the zero polynomial.
/// `Infinite` compares above every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<u64> {
        match self {
            Order::Finite(v) => Some(v),
            Order::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Order::Infinite
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(v) => write!(f, "{v}"),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

/// Sparse polynomial in `x` and `y` with rational coefficients.
///
/// Terms are keyed by `(y exponent, x exponent)`, so iteration runs in
/// y-degree-major order and the y-degree is the first component of the last key.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn x() -> Self {
        Self::monomial(Rat::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(Rat::one(), 0, 1)
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// `c * x^xe * y^ye`
    pub fn monomial(c: Rat, xe: u32, ye: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((ye, xe), c);
        }
        Self { terms }
    }

    /// Integer-coefficient shortcut for `c * x^xe * y^ye`.
    pub fn int_monomial(c: i64, xe: u32, ye: u32) -> Self {
        Self::monomial(Rat::from_integer(BigInt::from(c)), xe, ye)
    }

    /// Sums the given `(coefficient, x exponent, y exponent)` terms.
    pub fn from_terms<I: IntoIterator<Item = (Rat, u32, u32)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (c, xe, ye) in iter {
            p.add_term(xe, ye, c);
        }
        p
    }

    fn add_term(&mut self, xe: u32, ye: u32, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((ye, xe)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms as `(x exponent, y exponent, coefficient)` in increasing y-major order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u32, u32, &Rat)> + '_ {
        self.terms.iter().map(|(&(ye, xe), c)| (xe, ye, c))
    }

    pub fn coeff(&self, xe: u32, ye: u32) -> Rat {
        self.terms.get(&(ye, xe)).cloned().unwrap_or_else(Rat::zero)
    }

    /// Degree in `y`; `None` for the zero polynomial.
    pub fn deg_y(&self) -> Option<u32> {
        self.terms.last_key_value().map(|(&(ye, _), _)| ye)
    }

    /// Degree in `x`; `None` for the zero polynomial.
    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, xe)| xe).max()
    }

    pub fn is_pure_x(&self) -> bool {
        self.deg_y().is_none_or(|d| d == 0)
    }

    /// The pure-`x` coefficient of `y^j`.
    pub fn coeff_y(&self, j: u32) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .range((j, 0)..=(j, u32::MAX))
                .map(|(&(_, xe), c)| ((0, xe), c.clone()))
                .collect(),
        }
    }

    /// Splits into pure-`x` coefficients indexed by the power of `y`.
    pub fn y_coefficients(&self) -> Vec<BiPoly> {
        let Some(n) = self.deg_y() else {
            return Vec::new();
        };
        let mut out = vec![BiPoly::zero(); n as usize + 1];
        for (&(ye, xe), c) in &self.terms {
            out[ye as usize].terms.insert((0, xe), c.clone());
        }
        out
    }

    pub fn is_monic_y(&self) -> bool {
        match self.deg_y() {
            Some(n) => self.coeff_y(n) == BiPoly::one(),
            None => false,
        }
    }

    /// The `x`-adic order: least `x` exponent among all terms, infinite for zero.
    pub fn x_order(&self) -> Order {
        self.terms
            .keys()
            .map(|&(_, xe)| xe as u64)
            .min()
            .map_or(Order::Infinite, Order::Finite)
    }

    pub fn scale(&self, c: &Rat) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&k, v)| (k, v * c))
                .collect(),
        }
    }

    /// Multiplies by `x^xe * y^ye`.
    pub fn shift(&self, xe: u32, ye: u32) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(y, x), v)| ((y + ye, x + xe), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> BiPoly {
        let mut base = self.clone();
        let mut acc = BiPoly::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative_x(&self) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(&(_, xe), _)| xe > 0)
                .map(|(&(ye, xe), c)| ((ye, xe - 1), c * Rat::from_integer(xe.into())))
                .collect(),
        }
    }

    pub fn derivative_y(&self) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(&(ye, _), _)| ye > 0)
                .map(|(&(ye, xe), c)| ((ye - 1, xe), c * Rat::from_integer(ye.into())))
                .collect(),
        }
    }

    /// Substitutes `q` for `y`.
    pub fn substitute_y(&self, q: &BiPoly) -> BiPoly {
        let coeffs = self.y_coefficients();
        let mut acc = BiPoly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * q) + c;
        }
        acc
    }

    /// Evaluates at `x = value`, leaving a polynomial in `y`.
    pub fn eval_x(&self, value: &Rat) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(ye, xe), c) in &self.terms {
            out.add_term(0, ye, c * num_traits::pow(value.clone(), xe as usize));
        }
        out
    }

    /// Division with remainder by a polynomial monic in `y`:
    /// `self = q * g + r` with `deg_y r < deg_y g`.
    pub fn y_divmod(&self, g: &BiPoly) -> Result<(BiPoly, BiPoly), PolyError> {
        let dg = match g.deg_y() {
            Some(d) if d >= 1 => d,
            _ => return Err(PolyError::ConstantDivisor),
        };
        if !g.is_monic_y() {
            return Err(PolyError::NotMonic);
        }
        let g_cols = g.y_coefficients();
        let mut rem = self.y_coefficients();
        let mut quot = BiPoly::zero();
        while rem.len() > dg as usize {
            let top = rem.len() - 1;
            let lead = rem.pop().unwrap();
            if lead.is_zero() {
                continue;
            }
            let shift = (top - dg as usize) as u32;
            quot = &quot + &lead.shift(0, shift);
            // subtract lead * y^shift * g (the leading column cancels exactly)
            for (j, col) in g_cols.iter().enumerate().take(dg as usize) {
                if col.is_zero() {
                    continue;
                }
                let idx = j + shift as usize;
                rem[idx] = &rem[idx] - &(&lead * col);
            }
        }
        let mut r = BiPoly::zero();
        for (j, col) in rem.into_iter().enumerate() {
            for (&(_, xe), c) in col.terms.iter() {
                r.terms.insert((j as u32, xe), c.clone());
            }
        }
        Ok((quot, r))
    }

    /// `{"terms":[{"c":"-1","x":11,"y":1},..]}` in canonical print order.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .rev()
            .map(|(&(ye, xe), c)| json!({"c": c.to_string(), "x": xe, "y": ye}))
            .collect();
        json!({ "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<BiPoly, PolyError> {
        let bad = |m: &str| PolyError::Json(m.to_string());
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing `terms` array"))?;
        let mut p = BiPoly::zero();
        for t in terms {
            let c = t
                .get("c")
                .and_then(Value::as_str)
                .ok_or_else(|| bad("term without string coefficient `c`"))?;
            let c: Rat = c
                .trim()
                .parse()
                .map_err(|_| bad(&format!("bad coefficient `{c}`")))?;
            let exp = |k: &str| -> Result<u32, PolyError> {
                match t.get(k) {
                    None => Ok(0),
                    Some(e) => e
                        .as_u64()
                        .and_then(|e| u32::try_from(e).ok())
                        .ok_or_else(|| bad(&format!("bad exponent `{k}`"))),
                }
            };
            p.add_term(exp("x")?, exp("y")?, c);
        }
        Ok(p)
    }
}

impl fmt::Display for BiPoly {
    /// Canonical form: descending y-degree, then descending x-degree; integer
    /// coefficients bare, rationals as `a/b`, factors joined by `*`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&(ye, xe), c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { "-" } else { "+" })?;
            }
            let abs = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || (xe == 0 && ye == 0) {
                factors.push(abs.to_string());
            }
            match xe {
                0 => {}
                1 => factors.push("x".into()),
                _ => factors.push(format!("x^{xe}")),
            }
            match ye {
                0 => {}
                1 => factors.push("y".into()),
                _ => factors.push(format!("y^{ye}")),
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl FromStr for BiPoly {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_poly(s)
    }
}

impl Add<&BiPoly> for &BiPoly {
    type Output = BiPoly;

    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(ye, xe), c) in &rhs.terms {
            out.add_term(xe, ye, c.clone());
        }
        out
    }
}

impl Sub<&BiPoly> for &BiPoly {
    type Output = BiPoly;

    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(ye, xe), c) in &rhs.terms {
            out.add_term(xe, ye, -c);
        }
        out
    }
}

impl Mul<&BiPoly> for &BiPoly {
    type Output = BiPoly;

    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut acc: BTreeMap<(u32, u32), Rat> = BTreeMap::new();
        for (&(ya, xa), ca) in &self.terms {
            for (&(yb, xb), cb) in &rhs.terms {
                let prod = ca * cb;
                acc.entry((ya + yb, xa + xb))
                    .and_modify(|v| *v += &prod)
                    .or_insert(prod);
            }
        }
        acc.retain(|_, v| !v.is_zero());
        BiPoly { terms: acc }
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;

    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(&k, v)| (k, -v)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: BiPoly) -> BiPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: &BiPoly) -> BiPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<BiPoly> for &BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: BiPoly) -> BiPoly {
                self.$m(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for BiPoly {
    type Output = BiPoly;

    fn neg(self) -> BiPoly {
        -&self
    }
}
