//! Mixed-radix expansions in a tower of monic polynomials `g_1, .., g_m`.

use serde_json::{json, Value};

use super::{BiPoly, Order, PolyError};

/// One monomial `coeff(x) * g_1^b_1 * .. * g_m^b_m` of an expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdicDigit {
    pub exponents: Vec<u32>,
    /// Pure-`x` polynomial factor.
    pub coeff: BiPoly,
}

impl AdicDigit {
    /// The `x`-order of the coefficient (`b_0`); digits are never zero so it is finite.
    pub fn x_order(&self) -> u64 {
        self.coeff.x_order().finite().expect("nonzero digit")
    }

    pub fn to_json(&self) -> Value {
        json!({"b": self.exponents, "coeff": self.coeff.to_string()})
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdicExpansion {
    pub basis: Vec<BiPoly>,
    pub digits: Vec<AdicDigit>,
}

impl AdicExpansion {
    /// Multiplies the digits back out.
    pub fn reconstruct(&self) -> BiPoly {
        let mut acc = BiPoly::zero();
        for d in &self.digits {
            let mut term = d.coeff.clone();
            for (g, &e) in self.basis.iter().zip(&d.exponents) {
                if e > 0 {
                    term = &term * &g.pow(e);
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Least weighted degree `b_0 w_0 + sum b_i w_i` over the digits, if any.
    pub fn min_weight(&self, weights: &[u64]) -> Order {
        self.digits
            .iter()
            .map(|d| weighted(d, weights))
            .min()
            .map_or(Order::Infinite, Order::Finite)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "basis": self.basis.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "digits": self.digits.iter().map(AdicDigit::to_json).collect::<Vec<_>>(),
        })
    }
}

fn weighted(d: &AdicDigit, weights: &[u64]) -> u64 {
    d.x_order() * weights[0]
        + d.exponents
            .iter()
            .zip(&weights[1..])
            .map(|(&b, &w)| b as u64 * w)
            .sum::<u64>()
}

fn check_basis(basis: &[BiPoly]) -> Result<(), PolyError> {
    let Some(first) = basis.first() else {
        return Err(PolyError::Basis("empty basis".into()));
    };
    if first.deg_y() != Some(1) {
        return Err(PolyError::Basis(format!("first basis element {first} must have y-degree 1")));
    }
    let mut prev = 1;
    for (i, g) in basis.iter().enumerate() {
        if !g.is_monic_y() {
            return Err(PolyError::Basis(format!("basis element {} is not monic in y", i + 1)));
        }
        let n = g.deg_y().unwrap();
        if i > 0 && (n <= prev || n % prev != 0) {
            return Err(PolyError::Basis(format!(
                "basis degree {n} at position {} must be a proper multiple of {prev}",
                i + 1
            )));
        }
        prev = n;
    }
    Ok(())
}

/// Expands `p` in the basis: lower exponents are bounded by the degree ratios,
/// the exponent of the last element is unbounded.
pub fn adic_expand(p: &BiPoly, basis: &[BiPoly]) -> Result<AdicExpansion, PolyError> {
    check_basis(basis)?;
    let mut digits = Vec::new();
    let mut exps = vec![0; basis.len()];
    expand_into(p, basis, basis.len(), &mut exps, &mut digits)?;
    Ok(AdicExpansion {
        basis: basis.to_vec(),
        digits,
    })
}

fn expand_into(
    p: &BiPoly,
    basis: &[BiPoly],
    level: usize,
    exps: &mut Vec<u32>,
    out: &mut Vec<AdicDigit>,
) -> Result<(), PolyError> {
    if p.is_zero() {
        return Ok(());
    }
    if level == 0 {
        out.push(AdicDigit {
            exponents: exps.clone(),
            coeff: p.clone(),
        });
        return Ok(());
    }
    let g = &basis[level - 1];
    let mut rest = p.clone();
    let mut j = 0;
    while !rest.is_zero() {
        let (q, r) = rest.y_divmod(g)?;
        exps[level - 1] = j;
        expand_into(&r, basis, level - 1, exps, out)?;
        rest = q;
        j += 1;
    }
    exps[level - 1] = 0;
    Ok(())
}
