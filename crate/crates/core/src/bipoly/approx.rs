//! Tschirnhausen normalization, approximate roots and single-element adic coefficients.

use super::{BiPoly, PolyError, Rat};

/// Applies `y -> y - a_1(x)/n` so the `y^(n-1)` coefficient vanishes.
pub fn normalize_tschirnhausen(p: &BiPoly) -> Result<BiPoly, PolyError> {
    if !p.is_monic_y() {
        return Err(PolyError::NotMonic);
    }
    let n = p.deg_y().unwrap();
    if n == 0 {
        return Ok(p.clone());
    }
    let a1 = p.coeff_y(n - 1);
    if a1.is_zero() {
        return Ok(p.clone());
    }
    let shift = a1.scale(&Rat::new((-1).into(), n.into()));
    Ok(p.substitute_y(&(&BiPoly::y() + &shift)))
}

/// The `d`-th approximate root: the monic `g` of y-degree `n/d` such that the
/// second coefficient of the `g`-adic expansion of `f` vanishes.
pub fn approximate_root(f: &BiPoly, d: u32) -> Result<BiPoly, PolyError> {
    if !f.is_monic_y() {
        return Err(PolyError::NotMonic);
    }
    let n = f.deg_y().unwrap();
    if d == 0 || n % d != 0 {
        return Err(PolyError::NotADivisor { d, n });
    }
    if d == 1 {
        return Ok(f.clone());
    }
    let inv_d = Rat::new(1.into(), d.into());
    let mut g = BiPoly::monomial(Rat::from_integer(1.into()), 0, n / d);
    loop {
        let (q, _) = f.y_divmod(&g.pow(d - 1))?;
        let alpha1 = &q - &g;
        if alpha1.is_zero() {
            return Ok(g);
        }
        g = &g + &alpha1.scale(&inv_d);
    }
}

/// Coefficients `alpha_0, .., alpha_d` of `p = sum alpha_k q^(d-k)`, where
/// `d = floor(deg p / deg q)` and each `alpha_k` has y-degree below `deg q`.
pub fn q_adic_coefficients(p: &BiPoly, q: &BiPoly) -> Result<Vec<BiPoly>, PolyError> {
    let dq = q.deg_y().unwrap_or(0);
    if dq == 0 {
        return Err(PolyError::ConstantDivisor);
    }
    let d = p.deg_y().map_or(0, |n| n / dq) as usize;
    let mut low_first = Vec::with_capacity(d + 1);
    let mut rest = p.clone();
    for _ in 0..=d {
        let (qt, r) = rest.y_divmod(q)?;
        low_first.push(r);
        rest = qt;
    }
    debug_assert!(rest.is_zero());
    low_first.reverse();
    Ok(low_first)
}
