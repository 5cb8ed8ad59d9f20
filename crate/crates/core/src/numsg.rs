//! Numerical semigroups of plane branches.
//!
//! A branch semigroup is given by its minimal generators `r_0 < r_1 < ... < r_h`.
//! From them we derive the gcd sequence `d`, the ratios `e_k = d_k / d_{k+1}`,
//! the characteristic exponents `m` and the conductor, which is also the Milnor
//! number of every branch in the class.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::json_int;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumsgError {
    #[error("empty generator sequence")]
    Empty,
    #[error("generator r_{index} = {value} is not positive")]
    NonPositive { index: usize, value: BigInt },
    #[error("not a valid branch semigroup: {0}")]
    Invalid(ValidationReport),
    #[error("index k = {k} outside 1..={h}")]
    IndexOutOfRange { k: usize, h: usize },
    #[error("{target} has no bounded representation in the generators")]
    NoRepresentation { target: BigInt },
    #[error("conductor formulas disagree: {sum_formula} (sum over levels) vs {last_level_formula} (last level)")]
    ConductorMismatch {
        sum_formula: BigInt,
        last_level_formula: BigInt,
    },
    #[error("m_{k} = {m} is not divisible by d_{next} = {d}", next = k + 1)]
    NonIntegralPair { k: usize, m: BigInt, d: BigInt },
    #[error("cannot parse generator list: {0}")]
    Parse(String),
}

/// Characteristic data of a candidate generator sequence.
///
/// Indexing follows the usual conventions shifted to zero-based storage:
/// `r()[k]` is `r_k`, `d()[k]` is `d_{k+1}`, `e()[k]` is `e_{k+1}` and
/// `m()[k]` is `m_{k+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemigroupData {
    r: Vec<BigInt>,
    d: Vec<BigInt>,
    e: Vec<BigInt>,
    m: Vec<BigInt>,
    conductor: Option<BigInt>,
}

impl SemigroupData {
    pub fn r(&self) -> &[BigInt] {
        &self.r
    }

    pub fn d(&self) -> &[BigInt] {
        &self.d
    }

    pub fn e(&self) -> &[BigInt] {
        &self.e
    }

    pub fn m(&self) -> &[BigInt] {
        &self.m
    }

    /// Length of the semigroup: the number of generators minus one.
    pub fn h(&self) -> usize {
        self.r.len() - 1
    }

    /// Conductor, present only when the sequence is a valid branch semigroup.
    pub fn conductor(&self) -> Option<&BigInt> {
        self.conductor.as_ref()
    }

    pub fn is_valid(&self) -> bool {
        self.conductor.is_some()
    }

    /// Builds and validates in one step.
    pub fn new<I, T>(generators: I) -> Result<Self, NumsgError>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let r: Vec<BigInt> = generators.into_iter().map(Into::into).collect();
        let s = derive_char(&r)?;
        if !s.is_valid() {
            return Err(NumsgError::Invalid(validate(&r)));
        }
        Ok(s)
    }

    fn require_valid(&self) -> Result<&BigInt, NumsgError> {
        self.conductor
            .as_ref()
            .ok_or_else(|| NumsgError::Invalid(validate(&self.r)))
    }

    /// `{"generators":[..],"d":[..],"e":[..],"m":[..],"conductor":c}`;
    /// conductor is `null` for invalid data.
    pub fn to_json(&self) -> Value {
        let list = |v: &[BigInt]| Value::Array(v.iter().map(json_int).collect());
        json!({
            "generators": list(&self.r),
            "d": list(&self.d),
            "e": list(&self.e),
            "m": list(&self.m),
            "conductor": self.conductor.as_ref().map_or(Value::Null, json_int),
        })
    }
}

impl fmt::Display for SemigroupData {
    /// Space separated generators, the same text form accepted by [`parse_generators`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.r.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Parses "8 12 50 101" or "8,12,50,101".
pub fn parse_generators(text: &str) -> Result<Vec<BigInt>, NumsgError> {
    let out = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<BigInt>()
                .map_err(|_| NumsgError::Parse(format!("`{t}` is not an integer")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if out.is_empty() {
        return Err(NumsgError::Empty);
    }
    Ok(out)
}

fn check_positive(r: &[BigInt]) -> Result<(), NumsgError> {
    if r.is_empty() {
        return Err(NumsgError::Empty);
    }
    if let Some((index, value)) = r.iter().enumerate().find(|(_, v)| !v.is_positive()) {
        return Err(NumsgError::NonPositive {
            index,
            value: value.clone(),
        });
    }
    Ok(())
}

fn gcd_sequence(r: &[BigInt]) -> Vec<BigInt> {
    let mut d = Vec::with_capacity(r.len());
    d.push(r[0].clone());
    for rk in &r[1..] {
        let next = d.last().unwrap().gcd(rk);
        d.push(next);
    }
    d
}

/// Derives the d, e, m sequences. The conductor is filled in only when the
/// sequence validates.
pub fn derive_char(r: &[BigInt]) -> Result<SemigroupData, NumsgError> {
    check_positive(r)?;
    let d = gcd_sequence(r);
    let e: Vec<BigInt> = d.windows(2).map(|w| &w[0] / &w[1]).collect();
    let h = r.len() - 1;
    let mut m = Vec::with_capacity(h);
    if h >= 1 {
        m.push(r[1].clone());
        for k in 1..h {
            // m_{k+1} = r_{k+1} - r_k e_k + m_k
            let next = &r[k + 1] - &r[k] * &e[k - 1] + &m[k - 1];
            m.push(next);
        }
    }
    let mut s = SemigroupData {
        r: r.to_vec(),
        d,
        e,
        m,
        conductor: None,
    };
    if validate(r).valid {
        s.conductor = Some(conductor_formulas(&s)?);
    }
    Ok(s)
}

/// A reason a sequence fails to be the minimal generating system of a branch semigroup.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Failure {
    Empty,
    NonPositive(usize),
    /// `r_k <= r_{k-1}`
    NotIncreasing(usize),
    GcdNotOne,
    /// `r_{k+1} d_{k+1} <= r_k d_k`
    StarViolated(usize),
    /// `d_{k+1} = d_k`, i.e. `r_k` lies in the semigroup of its predecessors
    NotMinimal(usize),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Empty => f.write_str("empty"),
            Failure::NonPositive(k) => write!(f, "non-positive({k})"),
            Failure::NotIncreasing(k) => write!(f, "not-increasing({k})"),
            Failure::GcdNotOne => f.write_str("gcd-not-one"),
            Failure::StarViolated(k) => write!(f, "star-violated({k})"),
            Failure::NotMinimal(k) => write!(f, "not-minimal({k})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ValidationReport {
    pub valid: bool,
    pub failures: Vec<Failure>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.valid {
            return f.write_str("valid");
        }
        for (i, fail) in self.failures.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{fail}")?;
        }
        Ok(())
    }
}

impl ValidationReport {
    pub fn to_json(&self) -> Value {
        json!({
            "valid": self.valid,
            "failures": self.failures.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        })
    }
}

pub fn validate(r: &[BigInt]) -> ValidationReport {
    let mut failures = Vec::new();
    if r.is_empty() {
        failures.push(Failure::Empty);
    } else {
        for (k, v) in r.iter().enumerate() {
            if !v.is_positive() {
                failures.push(Failure::NonPositive(k));
            }
        }
    }
    if failures.is_empty() {
        let h = r.len() - 1;
        for k in 1..=h {
            if r[k] <= r[k - 1] {
                failures.push(Failure::NotIncreasing(k));
            }
        }
        let d = gcd_sequence(r);
        if !d[h].is_one() {
            failures.push(Failure::GcdNotOne);
        }
        for k in 1..h {
            // d[k - 1] is d_k
            if &r[k + 1] * &d[k] <= &r[k] * &d[k - 1] {
                failures.push(Failure::StarViolated(k));
            }
        }
        for k in 1..=h {
            if d[k] == d[k - 1] {
                failures.push(Failure::NotMinimal(k));
            }
        }
    }
    ValidationReport {
        valid: failures.is_empty(),
        failures,
    }
}

/// Evaluates both closed forms for the conductor and insists they agree.
fn conductor_formulas(s: &SemigroupData) -> Result<BigInt, NumsgError> {
    let h = s.h();
    let r0 = &s.r[0];
    // sum_{i=1}^h (e_i - 1) r_i - r_0 + 1
    let mut sum = BigInt::one() - r0;
    for i in 1..=h {
        sum += (&s.e[i - 1] - 1) * &s.r[i];
    }
    if h >= 1 {
        // r_h d_h - m_h - r_0 + 1
        let last = &s.r[h] * &s.d[h - 1] - &s.m[h - 1] - r0 + 1;
        if last != sum {
            return Err(NumsgError::ConductorMismatch {
                sum_formula: sum,
                last_level_formula: last,
            });
        }
    }
    Ok(sum)
}

/// The conductor (equivalently the Milnor number of the class), recomputed
/// from both closed forms.
pub fn conductor(s: &SemigroupData) -> Result<BigInt, NumsgError> {
    s.require_valid()?;
    conductor_formulas(s)
}

/// Standard representation of `target` in the weights `r_0/scale, ..., r_{top-1}/scale`:
/// returns `(theta_0, [theta_1, ..])` with `0 <= theta_j < e_j` for `j >= 1`. The first
/// component may be negative. `None` when a divisibility requirement fails.
fn reduce(
    s: &SemigroupData,
    top: usize,
    scale: &BigInt,
    target: BigInt,
) -> Option<(BigInt, Vec<BigInt>)> {
    let mut rem = target;
    let mut theta = vec![BigInt::zero(); top.saturating_sub(1)];
    for j in (1..top).rev() {
        let ej = &s.e[j - 1];
        // gcd of the lower weights times the current one
        let g = &s.d[j] / scale;
        let w = &s.r[j] / scale;
        if !rem.is_multiple_of(&g) {
            return None;
        }
        let a = (&w / &g).mod_floor(ej);
        let b = (&rem / &g).mod_floor(ej);
        let t = if ej.is_one() {
            BigInt::zero()
        } else {
            let ext = a.extended_gcd(ej);
            if !ext.gcd.is_one() {
                return None;
            }
            (b * ext.x).mod_floor(ej)
        };
        rem -= &t * &w;
        theta[j - 1] = t;
    }
    let w0 = &s.r[0] / scale;
    if !rem.is_multiple_of(&w0) {
        return None;
    }
    Some((rem / w0, theta))
}

/// `theta^k`: the unique `(theta_0, .., theta_{k-1})` with `0 <= theta_j < e_j` for
/// `j >= 1` and `sum theta_j r_j / d_{k+1} = e_k r_k / d_{k+1}`.
pub fn theta_rep(s: &SemigroupData, k: usize) -> Result<Vec<BigInt>, NumsgError> {
    s.require_valid()?;
    let h = s.h();
    if k == 0 || k > h {
        return Err(NumsgError::IndexOutOfRange { k, h });
    }
    let scale = &s.d[k];
    let target = &s.r[k] * &s.e[k - 1] / scale;
    match reduce(s, k, scale, target.clone()) {
        Some((t0, rest)) if !t0.is_negative() => {
            let mut out = Vec::with_capacity(k);
            out.push(t0);
            out.extend(rest);
            Ok(out)
        }
        _ => Err(NumsgError::NoRepresentation { target }),
    }
}

/// Whether `n` belongs to the semigroup.
pub fn is_member(s: &SemigroupData, n: &BigInt) -> Result<bool, NumsgError> {
    let c = s.require_valid()?;
    if n.is_negative() {
        return Ok(false);
    }
    if n >= c {
        return Ok(true);
    }
    let one = BigInt::one();
    Ok(match reduce(s, s.r.len(), &one, n.clone()) {
        Some((t0, _)) => !t0.is_negative(),
        None => false,
    })
}

/// All non-members, in increasing order. There are exactly `c/2` of them.
pub fn gaps(s: &SemigroupData) -> Result<Vec<BigInt>, NumsgError> {
    let c = s.require_valid()?.clone();
    let mut out = Vec::new();
    let mut n = BigInt::zero();
    while n < c {
        if !is_member(s, &n)? {
            out.push(n.clone());
        }
        n += 1;
    }
    Ok(out)
}

/// Newton-Puiseux pairs `(m_k / d_{k+1}, e_k)`.
pub fn puiseux_pairs(s: &SemigroupData) -> Result<Vec<(BigInt, BigInt)>, NumsgError> {
    s.require_valid()?;
    (1..=s.h())
        .map(|k| {
            let m = &s.m[k - 1];
            let d = &s.d[k];
            if !m.is_multiple_of(d) {
                return Err(NumsgError::NonIntegralPair {
                    k,
                    m: m.clone(),
                    d: d.clone(),
                });
            }
            Ok((m / d, s.e[k - 1].clone()))
        })
        .collect()
}
