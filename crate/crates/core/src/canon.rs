//! Canonical equations, generic forms and random members of an equisingularity class.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::abhyankar::semigroup_of;
use crate::bipoly::{BiPoly, Rat};
use crate::numsg::{theta_rep, NumsgError, SemigroupData};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonError {
    #[error(transparent)]
    Numsg(#[from] NumsgError),
    #[error("value {0} is too large to use as an exponent")]
    TooLarge(BigInt),
    #[error("level {k} out of range 1..={h}")]
    LevelOutOfRange { k: usize, h: usize },
    #[error("index i={i} out of range 2..={e}")]
    IndexOutOfRange { i: u64, e: u64 },
    #[error("sampled polynomial {poly} left the class: {detail}")]
    NotInClass { poly: String, detail: String },
}

fn small(n: &BigInt) -> Result<u64, CanonError> {
    n.to_u64()
        .filter(|&v| v <= u32::MAX as u64)
        .ok_or_else(|| CanonError::TooLarge(n.clone()))
}

/// Per-level integer data shared by the constructions below.
#[derive(Debug, Clone)]
struct Levels {
    h: usize,
    r: Vec<u64>,
    d: Vec<u64>,
    e: Vec<u64>,
    conductor: u64,
}

impl Levels {
    fn of(s: &SemigroupData) -> Result<Self, CanonError> {
        let conductor = s
            .conductor()
            .ok_or_else(|| NumsgError::Invalid(crate::numsg::validate(s.r())))?;
        let conv = |v: &[BigInt]| v.iter().map(small).collect::<Result<Vec<_>, _>>();
        Ok(Levels {
            h: s.h(),
            r: conv(s.r())?,
            d: conv(s.d())?,
            e: conv(s.e())?,
            conductor: small(conductor)?,
        })
    }

    /// Coefficients `r_j / d_{k+1}` for `j < k` and the right-hand side `r_k i / d_{k+1}`.
    fn constraint(&self, k: usize, i: u64) -> Constraint {
        let dk1 = self.d[k];
        Constraint {
            i,
            rhs: self.r[k] / dk1 * i,
            coeffs: self.r[..k].iter().map(|r| r / dk1).collect(),
        }
    }

    fn check_level(&self, k: usize) -> Result<(), CanonError> {
        if k == 0 || k > self.h {
            return Err(CanonError::LevelOutOfRange { k, h: self.h });
        }
        Ok(())
    }
}

fn forced_theta(s: &SemigroupData, k: usize) -> Result<Vec<u64>, CanonError> {
    theta_rep(s, k)?.iter().map(small).collect()
}

/// `G_1 = y` and `G_{k+1} = G_k^{e_k} - x^{t_0} G_1^{t_1} .. G_{k-1}^{t_{k-1}}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalElement {
    pub semigroup: SemigroupData,
    /// `G_1, .., G_{h+1}`.
    pub levels: Vec<BiPoly>,
    /// `theta^k` for `k = 1..h`, each of length `k`.
    pub thetas: Vec<Vec<u64>>,
}

impl CanonicalElement {
    /// The flat equation `G_{h+1}`.
    pub fn equation(&self) -> &BiPoly {
        self.levels.last().unwrap()
    }

    /// Nested form such as `((y^2-x^3)^2-x^11*y)^2-x^19*(y^2-x^3)`.
    pub fn nested_string(&self) -> String {
        let e: Vec<u64> = self.semigroup.e().iter().map(|v| small(v).unwrap()).collect();
        let mut names = vec!["y".to_string()];
        for (k, theta) in self.thetas.iter().enumerate() {
            let base = power(&names[k], e[k]);
            let m = monomial_string(theta, &names);
            names.push(format!("{base}-{m}"));
        }
        names.pop().unwrap()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "generators": self.semigroup.to_json()["generators"],
            "equation": self.equation().to_string(),
            "nested": self.nested_string(),
            "levels": self.levels.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "thetas": self.thetas,
        })
    }
}

fn wrap(name: &str) -> String {
    if name.contains(['+', '-']) {
        format!("({name})")
    } else {
        name.to_string()
    }
}

fn power(name: &str, e: u64) -> String {
    match e {
        1 => name.to_string(),
        _ => format!("{}^{e}", wrap(name)),
    }
}

/// `x^t0*g1^t1*..` with zero exponents dropped; `1` when every exponent is zero.
fn monomial_string(theta: &[u64], names: &[String]) -> String {
    let mut parts = Vec::new();
    if theta[0] > 0 {
        parts.push(power("x", theta[0]));
    }
    for (j, &t) in theta.iter().enumerate().skip(1) {
        if t == 1 {
            parts.push(wrap(&names[j - 1]));
        } else if t > 1 {
            parts.push(power(&names[j - 1], t));
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn monomial(theta: &[u64], g: &[BiPoly]) -> BiPoly {
    let mut m = BiPoly::monomial(Rat::from_integer(1.into()), theta[0] as u32, 0);
    for (j, &t) in theta.iter().enumerate().skip(1) {
        if t > 0 {
            m = &m * &g[j - 1].pow(t as u32);
        }
    }
    m
}

pub fn canonical_element(s: &SemigroupData) -> Result<CanonicalElement, CanonError> {
    let lv = Levels::of(s)?;
    let mut levels = vec![BiPoly::y()];
    let mut thetas = Vec::with_capacity(lv.h);
    for k in 1..=lv.h {
        let theta = forced_theta(s, k)?;
        let next = &levels[k - 1].pow(lv.e[k - 1] as u32) - &monomial(&theta, &levels);
        levels.push(next);
        thetas.push(theta);
    }
    Ok(CanonicalElement {
        semigroup: s.clone(),
        levels,
        thetas,
    })
}

/// `sum coeffs_j theta_j > rhs` over `theta_0..theta_{k-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub i: u64,
    pub rhs: u64,
    pub coeffs: Vec<u64>,
}

impl Constraint {
    pub fn holds(&self, theta: &[u64]) -> bool {
        weight(&self.coeffs, theta) > self.rhs
    }

    fn to_json(&self) -> Value {
        json!({"i": self.i, "rhs": self.rhs, "coeffs": self.coeffs})
    }
}

fn weight(coeffs: &[u64], theta: &[u64]) -> u64 {
    coeffs.iter().zip(theta).map(|(c, t)| c * t).sum()
}

/// One level `g_{k+1} = g_k^e + sum_{i=2}^{e} alpha_i g_k^{e-i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericLevel {
    pub k: usize,
    pub e: u64,
    /// Exponents of the monomial carried by `alpha_e` with a nonzero coefficient.
    pub forced: Vec<u64>,
    /// Bounds `theta_j < e_j` for `j = 1..k-1`.
    pub digit_bounds: Vec<u64>,
    /// One per `i = 2..=e`: the monomials allowed in `alpha_i` with free coefficients.
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericForm {
    pub levels: Vec<GenericLevel>,
}

impl GenericForm {
    pub fn to_json(&self) -> Value {
        json!({
            "levels": self.levels.iter().map(|l| json!({
                "e": l.e,
                "forced": {"theta": l.forced},
                "constraints": l.constraints.iter().map(Constraint::to_json).collect::<Vec<_>>(),
            })).collect::<Vec<_>>()
        })
    }

    /// Nested display in the style `((y^2+a1*x^3+F1)^2+a2*x^11*y+F2)^2+..`.
    pub fn nested_string(&self) -> String {
        let mut names = vec!["y".to_string()];
        for l in &self.levels {
            let base = power(&names[l.k - 1], l.e);
            let mut middle = String::new();
            for c in &l.constraints[..l.constraints.len() - 1] {
                middle.push_str(&format!("+F{}_{}*{}", l.k, c.i, power(&names[l.k - 1], l.e - c.i)));
            }
            let m = monomial_string(&l.forced, &names);
            names.push(format!("{base}{middle}+a{}*{m}+F{}", l.k, l.k));
        }
        names.pop().unwrap()
    }
}

impl fmt::Display for GenericForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.nested_string())?;
        match self.levels.len() {
            0 => {}
            1 => writeln!(f, "  a1 nonzero, other coefficients free")?,
            h => writeln!(f, "  a1..a{h} nonzero, other coefficients free")?,
        }
        for l in &self.levels {
            for c in &l.constraints {
                let name = if c.i == l.e {
                    format!("F{}", l.k)
                } else {
                    format!("F{}_{}", l.k, c.i)
                };
                let vars: Vec<String> = (0..l.k)
                    .map(|j| if j == 0 { "x^t0".to_string() } else { format!("g{j}^t{j}") })
                    .collect();
                let sum: Vec<String> = c
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(j, c)| format!("{c}*t{j}"))
                    .collect();
                let mut line = format!("  {name}: {} with {} > {}", vars.join("*"), sum.join("+"), c.rhs);
                for (j, b) in l.digit_bounds.iter().enumerate() {
                    line.push_str(&format!(", t{} < {b}", j + 1));
                }
                writeln!(f, "{line}")?;
            }
        }
        if self.levels.len() > 1 {
            writeln!(f, "  g1 = y, g(k+1) = level k polynomial")?;
        }
        Ok(())
    }
}

pub fn generic_form(s: &SemigroupData) -> Result<GenericForm, CanonError> {
    let lv = Levels::of(s)?;
    let mut levels = Vec::with_capacity(lv.h);
    for k in 1..=lv.h {
        let e = lv.e[k - 1];
        levels.push(GenericLevel {
            k,
            e,
            forced: forced_theta(s, k)?,
            digit_bounds: lv.e[..k - 1].to_vec(),
            constraints: (2..=e).map(|i| lv.constraint(k, i)).collect(),
        });
    }
    Ok(GenericForm { levels })
}

/// Exponent vectors of the monomials allowed in `alpha_i` at level `k` with
/// `theta_0 <= xdeg_bound`, in lexicographic order.
pub fn enumerate_e(s: &SemigroupData, k: usize, i: u64, xdeg_bound: u64) -> Result<Vec<Vec<u64>>, CanonError> {
    let lv = Levels::of(s)?;
    lv.check_level(k)?;
    let e = lv.e[k - 1];
    if i < 2 || i > e {
        return Err(CanonError::IndexOutOfRange { i, e });
    }
    let c = lv.constraint(k, i);
    let mut out = Vec::new();
    let mut theta = vec![0u64; k];
    for t0 in 0..=xdeg_bound {
        theta[0] = t0;
        digits_rec(&lv.e, &c, &mut theta, 1, &mut out);
    }
    Ok(out)
}

fn digits_rec(e: &[u64], c: &Constraint, theta: &mut Vec<u64>, j: usize, out: &mut Vec<Vec<u64>>) {
    if j == theta.len() {
        if c.holds(theta) {
            out.push(theta.clone());
        }
        return;
    }
    for t in 0..e[j - 1] {
        theta[j] = t;
        digits_rec(e, c, theta, j + 1, out);
    }
    theta[j] = 0;
}

/// The unique exponent vector of weight exactly `r_k e_k / d_{k+1}`.
pub fn forced_monomial(s: &SemigroupData, k: usize) -> Result<Vec<u64>, CanonError> {
    Levels::of(s)?.check_level(k)?;
    forced_theta(s, k)
}

/// A free monomial `coeff * x^t0 * g_1^t1 ..` added to `alpha_i` at level `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtraTerm {
    pub k: usize,
    pub i: u64,
    pub theta: Vec<u64>,
    pub coeff: Rat,
}

/// Builds `g_{h+1}` from the generic form with the given coefficients on the
/// forced monomials (one per level) and additional free terms. Extra terms must
/// satisfy their level's constraint.
pub fn member_from_coefficients(
    s: &SemigroupData,
    forced: &[Rat],
    extras: &[ExtraTerm],
) -> Result<BiPoly, CanonError> {
    let lv = Levels::of(s)?;
    assert_eq!(forced.len(), lv.h, "one forced coefficient per level");
    let mut g = vec![BiPoly::y()];
    for k in 1..=lv.h {
        let e = lv.e[k - 1];
        let mut alphas = vec![BiPoly::zero(); e as usize + 1];
        let theta = forced_theta(s, k)?;
        alphas[e as usize] = monomial(&theta, &g).scale(&forced[k - 1]);
        for t in extras.iter().filter(|t| t.k == k) {
            let c = lv.constraint(k, t.i);
            assert!(c.holds(&t.theta), "extra term violates its constraint");
            let m = monomial(&t.theta, &g).scale(&t.coeff);
            alphas[t.i as usize] = &alphas[t.i as usize] + &m;
        }
        let gk = &g[k - 1];
        let mut next = gk.pow(e as u32);
        for (i, a) in alphas.iter().enumerate().skip(2) {
            if !a.is_zero() {
                next = &next + &(a * &gk.pow((e - i as u64) as u32));
            }
        }
        g.push(next);
    }
    Ok(g.pop().unwrap())
}

/// A pseudo-random member of the class, deterministic in the arguments.
///
/// Forced coefficients are drawn from `[-coeff_bound, coeff_bound] \ {0}`; each
/// extra term picks a level, an index and digit exponents uniformly, then an
/// x-exponent between the least admissible one and the conductor.
pub fn sample_member(
    s: &SemigroupData,
    seed: u64,
    extra_terms: usize,
    coeff_bound: u64,
) -> Result<BiPoly, CanonError> {
    let lv = Levels::of(s)?;
    let bound = coeff_bound.max(1) as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nonzero = |rng: &mut ChaCha8Rng| {
        let v = rng.gen_range(1..=bound);
        let v = if rng.gen_bool(0.5) { v } else { -v };
        Rat::from_integer(v.into())
    };
    let forced: Vec<Rat> = (0..lv.h).map(|_| nonzero(&mut rng)).collect();
    let mut extras = Vec::new();
    if lv.h > 0 {
        for _ in 0..extra_terms {
            let k = rng.gen_range(1..=lv.h);
            let e = lv.e[k - 1];
            let i = rng.gen_range(2..=e);
            let c = lv.constraint(k, i);
            let mut theta = vec![0u64; k];
            for j in 1..k {
                theta[j] = rng.gen_range(0..lv.e[j - 1]);
            }
            let rest = weight(&c.coeffs[1..], &theta[1..]);
            let t0_min = if rest > c.rhs { 0 } else { (c.rhs - rest) / c.coeffs[0] + 1 };
            theta[0] = rng.gen_range(t0_min..=t0_min.max(lv.conductor));
            extras.push(ExtraTerm {
                k,
                i,
                theta,
                coeff: nonzero(&mut rng),
            });
        }
    }
    let p = member_from_coefficients(s, &forced, &extras)?;
    match semigroup_of(&p) {
        Ok(found) if found.r() == s.r() => Ok(p),
        Ok(found) => Err(CanonError::NotInClass {
            poly: p.to_string(),
            detail: format!("semigroup is <{found}>"),
        }),
        Err(err) => Err(CanonError::NotInClass {
            poly: p.to_string(),
            detail: err.to_string(),
        }),
    }
}
