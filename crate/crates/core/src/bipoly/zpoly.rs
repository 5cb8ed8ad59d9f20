//! Dense univariate polynomials over the integers, used as the coefficient
//! ring `Z[x]` inside resultant computations.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Coefficients in increasing degree, with no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub(crate) struct ZPoly(Vec<BigInt>);

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly(Vec::new())
    }

    pub fn one() -> Self {
        ZPoly(vec![BigInt::one()])
    }

    pub fn from_coeffs(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        ZPoly(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pow(&self, mut e: u64) -> ZPoly {
        let mut base = self.clone();
        let mut acc = ZPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient `self / d`; panics when `d` does not divide `self`,
    /// which would mean a broken invariant in the caller.
    pub fn div_exact(&self, d: &ZPoly) -> ZPoly {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return ZPoly::zero();
        }
        // strip common powers of x so the constant term of the divisor is nonzero
        let shift = d.0.iter().position(|c| !c.is_zero()).unwrap();
        let dd = &d.0[shift..];
        assert!(
            self.0[..shift].iter().all(Zero::is_zero),
            "inexact polynomial division"
        );
        let mut rem: Vec<BigInt> = self.0[shift..].to_vec();
        let dlen = dd.len();
        assert!(rem.len() >= dlen, "inexact polynomial division");
        let qlen = rem.len() - dlen + 1;
        let mut q = vec![BigInt::zero(); qlen];
        let lead = &dd[dlen - 1];
        for i in (0..qlen).rev() {
            let top = &rem[i + dlen - 1];
            if top.is_zero() {
                continue;
            }
            let (qi, r) = top.div_rem(lead);
            assert!(r.is_zero(), "inexact polynomial division");
            for (j, dj) in dd.iter().enumerate() {
                rem[i + j] -= &qi * dj;
            }
            q[i] = qi;
        }
        assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
        ZPoly::from_coeffs(q)
    }
}

impl Add for &ZPoly {
    type Output = ZPoly;

    fn add(self, rhs: &ZPoly) -> ZPoly {
        let (long, short) = if self.0.len() >= rhs.0.len() { (self, rhs) } else { (rhs, self) };
        let mut out = long.0.clone();
        for (o, s) in out.iter_mut().zip(&short.0) {
            *o += s;
        }
        ZPoly::from_coeffs(out)
    }
}

impl Sub for &ZPoly {
    type Output = ZPoly;

    fn sub(self, rhs: &ZPoly) -> ZPoly {
        self + &(-rhs)
    }
}

impl Neg for &ZPoly {
    type Output = ZPoly;

    fn neg(self) -> ZPoly {
        ZPoly(self.0.iter().map(|c| -c).collect())
    }
}

impl Mul for &ZPoly {
    type Output = ZPoly;

    fn mul(self, rhs: &ZPoly) -> ZPoly {
        if self.is_zero() || rhs.is_zero() {
            return ZPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        ZPoly::from_coeffs(out)
    }
}
