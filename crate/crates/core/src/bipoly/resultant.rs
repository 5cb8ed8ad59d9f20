//! Resultants with respect to `y` via the subresultant pseudo-remainder sequence
//! over `Z[x]`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::zpoly::ZPoly;
use super::{BiPoly, Rat};

type YPoly = Vec<ZPoly>;

/// `Res_y(a, b)`, a polynomial in `x` only. Zero when either input is zero.
pub fn resultant_y(a: &BiPoly, b: &BiPoly) -> BiPoly {
    if a.is_zero() || b.is_zero() {
        return BiPoly::zero();
    }
    let (za, la) = to_integral(a);
    let (zb, lb) = to_integral(b);
    let da = za.len() - 1;
    let db = zb.len() - 1;
    let res = subresultant(za, zb);
    let denom = num_traits::pow(la, db) * num_traits::pow(lb, da);
    let denom = Rat::from_integer(denom);
    BiPoly::from_terms(
        res.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (Rat::from_integer(c.clone()) / &denom, i as u32, 0)),
    )
}

/// Clears denominators: returns the integral y-coefficient list of `l * p` and `l`.
fn to_integral(p: &BiPoly) -> (YPoly, BigInt) {
    let l = p
        .terms()
        .fold(BigInt::one(), |acc, (_, _, c)| acc.lcm(c.denom()));
    let n = p.deg_y().unwrap_or(0) as usize;
    let mut cols: Vec<Vec<BigInt>> = vec![Vec::new(); n + 1];
    for (xe, ye, c) in p.terms() {
        let col = &mut cols[ye as usize];
        if col.len() <= xe as usize {
            col.resize(xe as usize + 1, BigInt::zero());
        }
        col[xe as usize] = c.numer() * (&l / c.denom());
    }
    (cols.into_iter().map(ZPoly::from_coeffs).collect(), l)
}

fn deg(p: &YPoly) -> usize {
    p.len() - 1
}

fn trim(p: &mut YPoly) {
    while p.last().is_some_and(ZPoly::is_zero) {
        p.pop();
    }
}

/// `lc(b)^(deg a - deg b + 1) * a mod b`.
fn pseudo_rem(a: &YPoly, b: &YPoly) -> YPoly {
    let db = deg(b);
    let lb = &b[db];
    let mut r = a.clone();
    let mut steps = deg(a) - db + 1;
    while !r.is_empty() && deg(&r) >= db {
        let dr = deg(&r);
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        let shift = dr - db;
        for (j, bj) in b.iter().enumerate() {
            r[j + shift] = &r[j + shift] - &(&lr * bj);
        }
        trim(&mut r);
        steps -= 1;
    }
    if steps > 0 {
        let f = lb.pow(steps as u64);
        for c in r.iter_mut() {
            *c = &*c * &f;
        }
    }
    r
}

fn subresultant(mut a: YPoly, mut b: YPoly) -> ZPoly {
    let mut sign_neg = false;
    if deg(&a) < deg(&b) {
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            sign_neg = true;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if deg(&b) == 0 {
        let r = b[0].pow(deg(&a) as u64);
        return if sign_neg { -&r } else { r };
    }
    let mut g = ZPoly::one();
    let mut h = ZPoly::one();
    loop {
        let delta = deg(&a) - deg(&b);
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            sign_neg = !sign_neg;
        }
        let r = pseudo_rem(&a, &b);
        if r.is_empty() {
            return ZPoly::zero();
        }
        a = b;
        let div = &g * &h.pow(delta as u64);
        b = r.iter().map(|c| c.div_exact(&div)).collect();
        g = a[deg(&a)].clone();
        if delta >= 1 {
            h = g.pow(delta as u64).div_exact(&h.pow(delta as u64 - 1));
        }
        if deg(&b) == 0 {
            let da = deg(&a) as u64;
            let num = b[0].pow(da);
            let res = if da == 0 { num } else { num.div_exact(&h.pow(da - 1)) };
            return if sign_neg { -&res } else { res };
        }
    }
}
