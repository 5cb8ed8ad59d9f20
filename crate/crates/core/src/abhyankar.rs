//! Intersection multiplicities, formal intersection multiplicities, generalized
//! Newton polygons, and the approximate-root irreducibility criterion.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde_json::{json, Value};
use thiserror::Error;

use crate::bipoly::{
    adic_expand, approximate_root, normalize_tschirnhausen, q_adic_coefficients, resultant_y,
    BiPoly, Order, PolyError,
};
use crate::numsg::{NumsgError, SemigroupData};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbhyankarError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Numsg(#[from] NumsgError),
    #[error("{weights} weights do not fit a basis of {basis} elements")]
    Incoherent { weights: usize, basis: usize },
    #[error("polynomial must have positive y-degree")]
    Constant,
    #[error("y-degree of q ({q}) does not divide y-degree of p ({p})")]
    NotMultiple { p: u32, q: u32 },
    #[error("q must be the last element of the basis")]
    QNotInBasis,
    #[error("polynomial is reducible ({verdict})")]
    Reducible { verdict: Verdict },
    #[error("Milnor number mismatch: resultant gives {resultant}, conductor is {conductor}")]
    MilnorMismatch { resultant: Order, conductor: BigInt },
}

/// `int(f, g)`: the x-order of `Res_y(f, g)`; infinite when `f` and `g` share a factor.
pub fn int_mult(f: &BiPoly, g: &BiPoly) -> Order {
    resultant_y(f, g).x_order()
}

/// Result of a formal intersection multiplicity computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fint {
    /// Minimum weighted degree; `unique` reports whether exactly one digit attains it.
    Value { value: u64, unique: bool },
    /// No admissible digit: the last basis element divides the input.
    Divisible,
}

impl Fint {
    pub fn value(self) -> Option<u64> {
        match self {
            Fint::Value { value, .. } => Some(value),
            Fint::Divisible => None,
        }
    }
}

/// Formal intersection multiplicity of `p` with weights `r` over `basis`.
///
/// With one more weight than basis elements every digit is admissible and weighted
/// as `b_0 r_0 + sum b_i r_i`. With equally many, the last basis element plays the
/// role of the curve itself: only digits where its exponent is zero count.
pub fn fint(p: &BiPoly, r: &[u64], basis: &[BiPoly]) -> Result<Fint, AbhyankarError> {
    let full = if r.len() == basis.len() + 1 {
        true
    } else if r.len() == basis.len() && !basis.is_empty() {
        false
    } else {
        return Err(AbhyankarError::Incoherent {
            weights: r.len(),
            basis: basis.len(),
        });
    };
    let expansion = adic_expand(p, basis)?;
    let mut best: Option<(u64, usize)> = None;
    for digit in &expansion.digits {
        if !full && *digit.exponents.last().unwrap() != 0 {
            continue;
        }
        let w = digit.x_order() * r[0]
            + digit
                .exponents
                .iter()
                .zip(&r[1..])
                .map(|(&b, &w)| b as u64 * w)
                .sum::<u64>();
        best = match best {
            Some((v, c)) if v < w => Some((v, c)),
            Some((v, c)) if v == w => Some((v, c + 1)),
            _ => Some((w, 1)),
        };
    }
    Ok(match best {
        Some((value, count)) => Fint::Value {
            value,
            unique: count == 1,
        },
        None => Fint::Divisible,
    })
}

/// Points `(fint(alpha_k), (d-k) fint(q))` of the `q`-adic expansion of `p` and
/// the vertices of the compact lower-left hull, in increasing x order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenNewtonPolygon {
    pub points: Vec<(u64, u64)>,
    pub hull: Vec<(u64, u64)>,
}

impl GenNewtonPolygon {
    pub fn is_segment(&self, a: (u64, u64), b: (u64, u64)) -> bool {
        self.hull == [a, b]
    }

    pub fn to_json(&self) -> Value {
        json!({"points": self.points, "hull": self.hull})
    }
}

impl fmt::Display for GenNewtonPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.hull.iter().map(|(a, b)| format!("({a},{b})")).collect();
        f.write_str(&parts.join("-"))
    }
}

/// Generalized Newton polygon of `p` with respect to `q`; `q` must be the last
/// element of `g` and `r` carries one weight per basis element plus the x weight.
pub fn gnp(p: &BiPoly, q: &BiPoly, r: &[u64], g: &[BiPoly]) -> Result<GenNewtonPolygon, AbhyankarError> {
    if g.last() != Some(q) {
        return Err(AbhyankarError::QNotInBasis);
    }
    if r.len() != g.len() + 1 {
        return Err(AbhyankarError::Incoherent {
            weights: r.len(),
            basis: g.len(),
        });
    }
    let dp = p.deg_y().unwrap_or(0);
    let dq = q.deg_y().unwrap_or(0);
    if dq == 0 || dp % dq != 0 {
        return Err(AbhyankarError::NotMultiple { p: dp, q: dq });
    }
    let alphas = q_adic_coefficients(p, q)?;
    let d = alphas.len() as u64 - 1;
    let fq = fint(q, r, g)?.value().ok_or(AbhyankarError::QNotInBasis)?;
    let mut points = Vec::new();
    for (k, a) in alphas.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let fa = fint(a, r, g)?.value().expect("digits below q are never divisible");
        points.push((fa, (d - k as u64) * fq));
    }
    let hull = lower_left_hull(&points);
    Ok(GenNewtonPolygon { points, hull })
}

fn lower_left_hull(points: &[(u64, u64)]) -> Vec<(u64, u64)> {
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    let cross = |o: (u64, u64), a: (u64, u64), b: (u64, u64)| -> i128 {
        (a.0 as i128 - o.0 as i128) * (b.1 as i128 - o.1 as i128)
            - (a.1 as i128 - o.1 as i128) * (b.0 as i128 - o.0 as i128)
    };
    let mut lower: Vec<(u64, u64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    // keep the strictly descending part: the compact sides facing the origin
    let mut out = vec![lower[0]];
    for &p in &lower[1..] {
        if p.1 < out.last().unwrap().1 {
            out.push(p);
        } else {
            break;
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReducibleReason {
    /// `r_{k+1} d_{k+1} > r_k d_k` fails (including a gcd that does not drop).
    Condition2,
    /// The polygon at level `k` is not the single expected segment.
    Condition3,
    /// `int(p, g_k)` is infinite: `p` shares a factor with a lower-degree polynomial.
    InfiniteIntersection,
}

impl ReducibleReason {
    fn tag(self) -> &'static str {
        match self {
            ReducibleReason::Condition2 => "condition2",
            ReducibleReason::Condition3 => "condition3",
            ReducibleReason::InfiniteIntersection => "infinite-intersection",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Irreducible,
    Reducible { reason: ReducibleReason, k: usize },
}

impl Verdict {
    pub fn is_irreducible(self) -> bool {
        self == Verdict::Irreducible
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Irreducible => f.write_str("irreducible"),
            Verdict::Reducible { reason, k } => match reason {
                ReducibleReason::Condition2 => write!(f, "reducible: condition 2 fails at k={k}"),
                ReducibleReason::Condition3 => write!(f, "reducible: condition 3 fails at k={k}"),
                ReducibleReason::InfiniteIntersection => {
                    write!(f, "reducible: infinite intersection with g_{k}")
                }
            },
        }
    }
}

/// Outcome of the segment check at one level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageCheck {
    pub k: usize,
    pub passed: bool,
    /// First offending coefficient, `(i, fint(alpha_i))`, when the check fails.
    pub failure: Option<(u64, Order)>,
    pub polygon: GenNewtonPolygon,
}

impl StageCheck {
    fn to_json(&self) -> Value {
        let mut v = json!({
            "k": self.k,
            "fintChecks": if self.passed { "ok" } else { "failed" },
            "hull": self.polygon.hull,
        });
        if let Some((i, f)) = self.failure {
            v["failedAt"] = json!({"i": i, "fint": f.to_string()});
        }
        v
    }
}

/// Everything discovered by a run of the criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionTrace {
    /// The polynomial actually examined, after the Tschirnhausen shift.
    pub poly: BiPoly,
    pub normalized: bool,
    pub r: Vec<u64>,
    /// `d_1, d_2, ..`; ends with 1 for irreducible input.
    pub d: Vec<u64>,
    /// Approximate roots `g_1 = y, g_2, ..`.
    pub g: Vec<BiPoly>,
    pub stages: Vec<StageCheck>,
    pub verdict: Verdict,
}

impl CriterionTrace {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "verdict": if self.verdict.is_irreducible() { "irreducible" } else { "reducible" },
            "r": self.r,
            "d": self.d,
            "g": self.g.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "normalized": self.normalized,
            "stages": self.stages.iter().map(StageCheck::to_json).collect::<Vec<_>>(),
        });
        if let Verdict::Reducible { reason, k } = self.verdict {
            v["reason"] = json!(reason.tag());
            v["k"] = json!(k);
        }
        v
    }
}

/// Runs the criterion on a polynomial monic in `y` of positive degree.
pub fn is_irreducible(p: &BiPoly) -> Result<CriterionTrace, AbhyankarError> {
    if !p.is_monic_y() {
        return Err(PolyError::NotMonic.into());
    }
    let n = p.deg_y().unwrap();
    if n == 0 {
        return Err(AbhyankarError::Constant);
    }
    let poly = normalize_tschirnhausen(p)?;
    let mut trace = CriterionTrace {
        normalized: poly != *p,
        poly,
        r: vec![n as u64],
        d: vec![n as u64],
        g: vec![BiPoly::y()],
        stages: Vec::new(),
        verdict: Verdict::Irreducible,
    };
    if n == 1 {
        return Ok(trace);
    }
    let reducible = |mut t: CriterionTrace, reason, k| {
        t.verdict = Verdict::Reducible { reason, k };
        Ok(t)
    };
    let Order::Finite(r1) = int_mult(&trace.poly, &trace.g[0]) else {
        return reducible(trace, ReducibleReason::InfiniteIntersection, 1);
    };
    trace.r.push(r1);
    let mut k = 1;
    loop {
        let dk = trace.d[k - 1];
        let next = dk.gcd(&trace.r[k]);
        trace.d.push(next);
        if next == 1 {
            break;
        }
        if next == dk {
            return reducible(trace, ReducibleReason::Condition2, k);
        }
        let g = approximate_root(&trace.poly, next as u32)?;
        let Order::Finite(rk) = int_mult(&trace.poly, &g) else {
            trace.g.push(g);
            return reducible(trace, ReducibleReason::InfiniteIntersection, k + 1);
        };
        trace.g.push(g);
        trace.r.push(rk);
        if rk as u128 * next as u128 <= trace.r[k] as u128 * dk as u128 {
            return reducible(trace, ReducibleReason::Condition2, k);
        }
        k += 1;
    }
    let h = k;
    for k in 1..=h {
        let check = segment_check(&trace, k, h)?;
        let passed = check.passed;
        trace.stages.push(check);
        if !passed {
            return reducible(trace, ReducibleReason::Condition3, k);
        }
    }
    Ok(trace)
}

/// Expands `g_{k+1}` (with `g_{h+1} = p`) in powers of `g_k` and checks that
/// its polygon is the segment from `(0, rbar_k e_k)` to `(rbar_k e_k, 0)`.
fn segment_check(t: &CriterionTrace, k: usize, h: usize) -> Result<StageCheck, AbhyankarError> {
    let upper = if k == h { &t.poly } else { &t.g[k] };
    let lower = &t.g[k - 1];
    let dk1 = t.d[k];
    let e = t.d[k - 1] / dk1;
    let weights: Vec<u64> = t.r[..=k].iter().map(|r| r / dk1).collect();
    let basis = &t.g[..k];
    let rbar = weights[k];
    let alphas = q_adic_coefficients(upper, lower)?;
    let mut failure = None;
    for (i, a) in alphas.iter().enumerate().skip(1) {
        let i = i as u64;
        let f = if a.is_zero() {
            Order::Infinite
        } else {
            Order::Finite(fint(a, &weights, basis)?.value().expect("digits below g_k"))
        };
        let ok = if i < e {
            f > Order::Finite(rbar * i)
        } else {
            f == Order::Finite(rbar * e)
        };
        if !ok {
            failure = Some((i, f));
            break;
        }
    }
    let polygon = gnp(upper, lower, &weights, basis)?;
    Ok(StageCheck {
        k,
        passed: failure.is_none(),
        failure,
        polygon,
    })
}

/// The semigroup of an irreducible polynomial, from the r-sequence of the criterion.
pub fn semigroup_of(p: &BiPoly) -> Result<SemigroupData, AbhyankarError> {
    let trace = is_irreducible(p)?;
    if !trace.verdict.is_irreducible() {
        return Err(AbhyankarError::Reducible {
            verdict: trace.verdict,
        });
    }
    Ok(semigroup_from_sequence(&trace.r))
}

/// Reorders so the least element comes first, then keeps only the entries
/// that make the running gcd drop.
fn semigroup_from_sequence(r: &[u64]) -> SemigroupData {
    let mut seq: Vec<u64> = r.to_vec();
    if seq.len() >= 2 && seq[1] < seq[0] {
        seq.swap(0, 1);
    }
    let mut gens = vec![seq[0]];
    let mut g = seq[0];
    for &x in &seq[1..] {
        let next = g.gcd(&x);
        if next < g {
            gens.push(x);
            g = next;
        }
    }
    let s = SemigroupData::new(gens.iter().map(|&x| BigInt::from(x)))
        .expect("criterion sequence yields a semigroup");
    assert!(s.is_valid(), "criterion produced an invalid semigroup {s}");
    s
}

/// Milnor number `int(p_x, p_y)`, cross-checked against the conductor.
pub fn milnor(p: &BiPoly) -> Result<u64, AbhyankarError> {
    let trace = is_irreducible(p)?;
    if !trace.verdict.is_irreducible() {
        return Err(AbhyankarError::Reducible {
            verdict: trace.verdict,
        });
    }
    let s = semigroup_from_sequence(&trace.r);
    let conductor = s.conductor().expect("valid semigroup").clone();
    let q = &trace.poly;
    // a smooth branch normalizes to `y`, whose x-derivative vanishes
    let mu = if trace.r.len() == 1 {
        Order::Finite(0)
    } else {
        int_mult(&q.derivative_x(), &q.derivative_y())
    };
    match mu {
        Order::Finite(m) if BigInt::from(m) == conductor => Ok(m),
        _ => Err(AbhyankarError::MilnorMismatch {
            resultant: mu,
            conductor,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipoly::parse_poly;

    fn p(s: &str) -> BiPoly {
        parse_poly(s).unwrap()
    }

    fn gens(s: &SemigroupData) -> Vec<String> {
        s.r().iter().map(ToString::to_string).collect()
    }

    #[test]
    fn intersection_multiplicity() {
        assert_eq!(int_mult(&p("y^2-x^3"), &p("y")), Order::Finite(3));
        assert_eq!(int_mult(&p("y^2-x^3"), &p("y^2-x^3")), Order::Infinite);
        assert_eq!(int_mult(&p("(y^2-x^3)^2-x^5*y"), &p("x")), Order::Finite(4));
    }

    #[test]
    fn fint_examples() {
        let v = |f: Fint| f.value().unwrap();
        assert_eq!(v(fint(&p("x^2"), &[2, 3], &[p("y")]).unwrap()), 4);
        assert_eq!(v(fint(&p("x^2*y"), &[2, 3], &[p("y")]).unwrap()), 7);
        let basis = [p("y"), p("y^2-x^3")];
        assert_eq!(v(fint(&p("-x^5*y"), &[4, 6], &basis).unwrap()), 26);
        assert_eq!(fint(&p("y^2-x^3"), &[4, 6], &basis).unwrap(), Fint::Divisible);
        assert_eq!(
            fint(&p("y^2-x^3"), &[2, 3], &[p("y")]).unwrap(),
            Fint::Value { value: 6, unique: false }
        );
        assert!(fint(&p("y"), &[1, 2, 3, 4], &basis).is_err());
    }

    #[test]
    fn polygons() {
        let basis = [p("y"), p("y^2-x^3")];
        let q = p("y^2-x^3");
        let g = gnp(&p("(y^2-x^3)^2-x^5*y"), &q, &[4, 6, 13], &basis).unwrap();
        assert!(g.is_segment((0, 26), (26, 0)));
        let g = gnp(&p("(y^2-x^3)^2-x^11*y"), &q, &[4, 6, 25], &basis).unwrap();
        assert!(g.is_segment((0, 50), (50, 0)));
        let g = gnp(&p("(y^2-x^3)^2"), &q, &[4, 6, 13], &basis).unwrap();
        assert_eq!(g.hull, vec![(0, 26)]);
        assert!(gnp(&p("y^4"), &q, &[4, 6], &[p("y")]).is_err());
    }

    #[test]
    fn criterion_examples() {
        let t = is_irreducible(&p("(y^2-x^3)^2-x^11*y")).unwrap();
        assert_eq!(t.verdict, Verdict::Irreducible);
        assert_eq!(t.r, vec![4, 6, 25]);
        assert_eq!(t.d, vec![4, 2, 1]);
        assert_eq!(
            t.to_json().to_string(),
            r#"{"d":[4,2,1],"g":["y","y^2-x^3"],"normalized":false,"r":[4,6,25],"stages":[{"fintChecks":"ok","hull":[[0,6],[6,0]],"k":1},{"fintChecks":"ok","hull":[[0,50],[50,0]],"k":2}],"verdict":"irreducible"}"#
        );
        let t = is_irreducible(&p("y^2-x^2")).unwrap();
        assert_eq!(
            t.verdict,
            Verdict::Reducible { reason: ReducibleReason::Condition2, k: 1 }
        );
        assert_eq!(is_irreducible(&p("y^5-x^8")).unwrap().r, vec![5, 8]);
        assert_eq!(is_irreducible(&p("(y^2-x^3)^2-x^6*y")).unwrap().r, vec![4, 6, 15]);
        let t = is_irreducible(&p("(y^2-x^3)^2-x^9")).unwrap();
        assert_eq!(t.verdict, Verdict::Reducible { reason: ReducibleReason::Condition2, k: 2 });
        let t = is_irreducible(&p("(y^2-x^3)(y^2-x^3+x^5)")).unwrap();
        assert!(!t.verdict.is_irreducible());
        assert!(is_irreducible(&p("y+x^2")).unwrap().verdict.is_irreducible());
        assert!(is_irreducible(&p("2y")).is_err());
    }

    #[test]
    fn normalization_is_recorded() {
        let t = is_irreducible(&p("(y+x)^2-x^3")).unwrap();
        assert!(t.normalized);
        assert!(t.verdict.is_irreducible());
        assert_eq!(t.r, vec![2, 3]);
    }

    #[test]
    fn semigroups() {
        assert_eq!(gens(&semigroup_of(&p("(y^2-x^5)^2-x^8*y")).unwrap()), ["4", "10", "21"]);
        assert_eq!(gens(&semigroup_of(&p("y^2-x^29")).unwrap()), ["2", "29"]);
        assert_eq!(gens(&semigroup_of(&p("y^3-x^2")).unwrap()), ["2", "3"]);
        assert_eq!(gens(&semigroup_of(&p("y")).unwrap()), ["1"]);
        let g4 = p("((y^2-x^3)^2-x^11*y)^2-x^19*(y^2-x^3)");
        assert_eq!(gens(&semigroup_of(&g4).unwrap()), ["8", "12", "50", "101"]);
        assert!(matches!(semigroup_of(&p("y^2-x^2")), Err(AbhyankarError::Reducible { .. })));
    }

    #[test]
    fn milnor_numbers() {
        assert_eq!(milnor(&p("y^2-x^3")).unwrap(), 2);
        assert_eq!(milnor(&p("(y^2-x^3)^2-x^5*y")).unwrap(), 16);
        assert_eq!(milnor(&p("(y^2-x^3)^2-x^11*y")).unwrap(), 28);
        assert_eq!(milnor(&p("y-x^3")).unwrap(), 0);
    }
}
