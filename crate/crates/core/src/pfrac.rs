//! Parameter fractions: rational functions whose numerator is a multivariate
//! Laurent polynomial and whose denominator is a polynomial in the variable
//! space's designated scalar variable only.
//!
//! Every division the calculus performs on element coefficients and module
//! scalars is by quantum integers or other univariate expressions in the
//! base parameter (t, or its root u), so univariate gcd reduction keeps
//! these fractions fully reduced without a multivariate gcd engine.

use crate::poly::LaurentPoly;
use crate::scalar::{self, Scalar};
use crate::vars::VarSpace;
use num::traits::Zero;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PFrac {
    num: LaurentPoly,
    den: LaurentPoly, // scalar-var-only, min exponent 0, monic leading coefficient
}

// ---- univariate helpers (dense, degree-indexed, nonzero leading coeff) ----

fn uni_trim(v: &mut Vec<Scalar>) {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

fn uni_rem(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut r = a.to_vec();
    uni_trim(&mut r);
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let dr = r.len() - 1;
        let q = &r[dr] / lb;
        for i in 0..=db {
            let delta = &q * &b[i];
            r[dr - db + i] -= delta;
        }
        uni_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn uni_gcd(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    uni_trim(&mut x);
    uni_trim(&mut y);
    while !y.is_empty() {
        let r = uni_rem(&x, &y);
        x = y;
        y = r;
    }
    if !x.is_empty() {
        let lead = x.last().unwrap().clone();
        for c in &mut x {
            *c /= &lead;
        }
    }
    x
}

fn uni_div_exact(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut r = a.to_vec();
    uni_trim(&mut r);
    let mut q = vec![Scalar::zero(); r.len().saturating_sub(b.len()) + 1];
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let dr = r.len() - 1;
        let c = &r[dr] / lb;
        q[dr - db] = c.clone();
        for i in 0..=db {
            let delta = &c * &b[i];
            r[dr - db + i] -= delta;
        }
        uni_trim(&mut r);
    }
    assert!(r.is_empty(), "uni_div_exact: not divisible");
    q
}

/// Decompose `p` as (shift, dense coefficients in the scalar variable),
/// grouped by the monomial in the remaining variables.
fn base_groups(p: &LaurentPoly) -> (i64, BTreeMap<Vec<i64>, Vec<Scalar>>) {
    let shift = p.min_exp(p.space().scalar_var());
    let sv = p.space().scalar_var();
    let mut out: BTreeMap<Vec<i64>, Vec<Scalar>> = BTreeMap::new();
    for (e, c) in p.terms() {
        let mut rest = e.clone();
        let k = (rest[sv] - shift) as usize;
        rest[sv] = 0;
        let v = out.entry(rest).or_default();
        if v.len() <= k {
            v.resize(k + 1, Scalar::zero());
        }
        v[k] = c.clone();
    }
    (shift, out)
}

fn poly_from_uni(space: &Arc<VarSpace>, coeffs: &[Scalar], shift: i64, rest: &[i64]) -> LaurentPoly {
    let sv = space.scalar_var();
    let mut p = LaurentPoly::zero(space);
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut e = rest.to_vec();
        e[sv] += shift + k as i64;
        p.add_term(c.clone(), e);
    }
    p
}

impl PFrac {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        assert!(den.is_scalar_only(), "denominator must be univariate in the base parameter");
        let mut f = PFrac { num, den };
        f.normalize();
        f
    }

    pub fn from_poly(num: LaurentPoly) -> Self {
        let one = LaurentPoly::one(num.space());
        PFrac { num, den: one }
    }

    pub fn zero(space: &Arc<VarSpace>) -> Self {
        Self::from_poly(LaurentPoly::zero(space))
    }

    pub fn one(space: &Arc<VarSpace>) -> Self {
        Self::from_poly(LaurentPoly::one(space))
    }

    pub fn constant(space: &Arc<VarSpace>, c: Scalar) -> Self {
        Self::from_poly(LaurentPoly::constant(space, c))
    }

    pub fn space(&self) -> &Arc<VarSpace> {
        self.num.space()
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.as_constant().map_or(false, |c| scalar::is_one(&c))
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = LaurentPoly::one(self.num.space());
            return;
        }
        let space = self.num.space().clone();
        let sv = space.scalar_var();
        // Shift the denominator to a genuine polynomial with nonzero
        // constant term; the monomial moves into the numerator.
        let (dshift, dgroups) = base_groups(&self.den);
        assert_eq!(dgroups.len(), 1);
        let mut den_coeffs = dgroups.into_iter().next().unwrap().1;
        uni_trim(&mut den_coeffs);
        // Make monic.
        let lead = den_coeffs.last().unwrap().clone();
        if !scalar::is_one(&lead) {
            for c in &mut den_coeffs {
                *c /= &lead;
            }
            self.num = self.num.scale(&lead.recip());
        }
        if dshift != 0 {
            let mut e = vec![0i64; space.arity()];
            e[sv] = -dshift;
            self.num = self.num.mul_mono(&Scalar::from_integer(1.into()), &e);
        }
        // gcd of the denominator with the base-variable content of the
        // numerator.
        let (nshift, ngroups) = base_groups(&self.num);
        let mut g = den_coeffs.clone();
        for coeffs in ngroups.values() {
            if g.len() <= 1 {
                break;
            }
            g = uni_gcd(&g, coeffs);
        }
        if g.len() > 1 {
            den_coeffs = uni_div_exact(&den_coeffs, &g);
            let mut new_num = LaurentPoly::zero(&space);
            for (rest, coeffs) in &ngroups {
                let q = uni_div_exact(coeffs, &g);
                new_num = new_num.add(&poly_from_uni(&space, &q, nshift, rest));
            }
            self.num = new_num;
        }
        self.den = poly_from_uni(&space, &den_coeffs, 0, &vec![0; space.arity()]);
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        Self::new(num, self.den.mul(&other.den))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        PFrac {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        Self::new(self.num.mul(p), self.den.clone())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        PFrac {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Multiplicative inverse; the numerator must be univariate in the base
    /// parameter (which holds for all scalar-field usage in this crate).
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        assert!(
            self.num.is_scalar_only(),
            "inverse of a fraction with non-scalar numerator: {}",
            self.num
        );
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k >= 0 { self.clone() } else { self.inv() };
        let mut acc = Self::one(self.space());
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }
}

impl fmt::Display for PFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn sp() -> Arc<VarSpace> {
        VarSpace::new(vec!["t", "Y1"], 0)
    }

    #[test]
    fn reduction_cancels_common_content() {
        let s = sp();
        let t = LaurentPoly::var(&s, 0);
        let y = LaurentPoly::var(&s, 1);
        // (t^2 - 1)(Y1 + 1) / (t^4 - 1)  ==  (Y1 + 1) / (t^2 + 1)
        let num = t.pow(2).sub(&LaurentPoly::one(&s)).mul(&y.add(&LaurentPoly::one(&s)));
        let den = t.pow(4).sub(&LaurentPoly::one(&s));
        let f = PFrac::new(num, den);
        let expect = PFrac::new(
            y.add(&LaurentPoly::one(&s)),
            t.pow(2).add(&LaurentPoly::one(&s)),
        );
        assert_eq!(f, expect);
    }

    #[test]
    fn field_ops() {
        let s = sp();
        let t = LaurentPoly::var(&s, 0);
        let a = PFrac::new(LaurentPoly::one(&s), t.add(&LaurentPoly::one(&s)));
        let b = PFrac::from_poly(t.clone());
        let sum = a.add(&b);
        // 1/(t+1) + t = (t^2 + t + 1)/(t+1)
        let expect = PFrac::new(
            t.pow(2).add(&t).add(&LaurentPoly::one(&s)),
            t.add(&LaurentPoly::one(&s)),
        );
        assert_eq!(sum, expect);
        assert_eq!(a.mul(&a.inv()), PFrac::one(&s));
        assert_eq!(b.sub(&b), PFrac::zero(&s));
        // Laurent denominator normalization: 1 / t^-1 == t
        let c = PFrac::new(
            LaurentPoly::one(&s),
            LaurentPoly::monomial(&s, int(1), vec![-1, 0]),
        );
        assert_eq!(c, PFrac::from_poly(t));
    }
}
