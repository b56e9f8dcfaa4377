//! Sparse multivariate Laurent polynomials: finitely supported maps from
//! integer exponent vectors to rational scalars. Zero coefficients are never
//! stored.

use crate::scalar::{self, Scalar};
use crate::vars::{Mono, VarSpace};
use num::traits::Zero;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    space: Arc<VarSpace>,
    terms: BTreeMap<Vec<i64>, Scalar>,
}

impl LaurentPoly {
    pub fn zero(space: &Arc<VarSpace>) -> Self {
        LaurentPoly {
            space: space.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(space: &Arc<VarSpace>) -> Self {
        Self::constant(space, scalar::int(1))
    }

    pub fn constant(space: &Arc<VarSpace>, c: Scalar) -> Self {
        let mut p = Self::zero(space);
        if !c.is_zero() {
            p.terms.insert(vec![0; space.arity()], c);
        }
        p
    }

    pub fn monomial(space: &Arc<VarSpace>, c: Scalar, exps: Vec<i64>) -> Self {
        assert_eq!(exps.len(), space.arity());
        let mut p = Self::zero(space);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// A named symbol (variable or specialization rule) raised to a power.
    pub fn symbol(space: &Arc<VarSpace>, name: &str, k: i64) -> Self {
        let (c, e) = space.symbol_pow(name, k);
        Self::monomial(space, c, e)
    }

    pub fn var(space: &Arc<VarSpace>, idx: usize) -> Self {
        let mut e = vec![0; space.arity()];
        e[idx] = 1;
        Self::monomial(space, scalar::int(1), e)
    }

    pub fn space(&self) -> &Arc<VarSpace> {
        &self.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Scalar)> {
        self.terms.iter()
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            if e.iter().all(|&x| x == 0) {
                return Some(c.clone());
            }
        }
        None
    }

    /// The unique term, if this polynomial is a monomial.
    pub fn as_monomial(&self) -> Option<Mono> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            Some((c.clone(), e.clone()))
        } else {
            None
        }
    }

    fn assert_compat(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.space, &other.space) || self.space == other.space,
            "mixed variable spaces"
        );
    }

    pub fn add_term(&mut self, c: Scalar, exps: Vec<i64>) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let v = o.get_mut();
                *v += c;
                if v.is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_compat(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(c.clone(), e.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_compat(other);
        let mut out = Self::zero(&self.space);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(c1 * c2, e);
            }
        }
        out
    }

    pub fn mul_mono(&self, c: &Scalar, exps: &[i64]) -> Self {
        let mut out = Self::zero(&self.space);
        if c.is_zero() {
            return out;
        }
        for (e1, c1) in &self.terms {
            let e: Vec<i64> = e1.iter().zip(exps).map(|(a, b)| a + b).collect();
            out.terms.insert(e, c1 * c);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.mul_mono(c, &vec![0; self.space.arity()])
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.space);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitute each variable by a monomial of a (possibly different)
    /// target space. The whole-term image is `c * prod m_i^{e_i}`.
    pub fn map_monomials(
        &self,
        target: &Arc<VarSpace>,
        f: impl Fn(usize) -> Mono,
    ) -> LaurentPoly {
        // Images computed lazily: only variables that actually occur.
        let mut images: Vec<Option<Mono>> = vec![None; self.space.arity()];
        let mut out = LaurentPoly::zero(target);
        for (e, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exps = vec![0i64; target.arity()];
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let (ic, ie) = images[i].get_or_insert_with(|| f(i));
                coeff *= scalar::pow(ic, k);
                for (slot, v) in exps.iter_mut().zip(ie.iter()) {
                    *slot += v * k;
                }
            }
            out.add_term(coeff, exps);
        }
        out
    }

    /// Exponents of the designated scalar variable only, in every term?
    pub fn is_scalar_only(&self) -> bool {
        let sv = self.space.scalar_var();
        self.terms
            .keys()
            .all(|e| e.iter().enumerate().all(|(i, &x)| i == sv || x == 0))
    }

    /// Does variable `idx` occur with nonzero exponent anywhere?
    pub fn uses_var(&self, idx: usize) -> bool {
        self.terms.keys().any(|e| e[idx] != 0)
    }

    /// Minimum exponent of variable `idx` over all terms (0 if absent).
    pub fn min_exp(&self, idx: usize) -> i64 {
        self.terms.keys().map(|e| e[idx]).min().unwrap_or(0).min(0)
    }

    /// Leading monomial in the lexicographic order on the declared variable
    /// order (largest exponent vector).
    pub fn leading(&self) -> Option<Mono> {
        self.terms
            .iter()
            .next_back()
            .map(|(e, c)| (c.clone(), e.clone()))
    }

    /// The content of this polynomial with respect to the scalar variable:
    /// write `self = sum_m c_m(base) * m` over monomials `m` in the other
    /// variables; returns the list of distinct `m` with their univariate
    /// coefficient polynomials (as exponent/scalar pairs in the base var).
    pub fn base_var_decomposition(&self) -> BTreeMap<Vec<i64>, BTreeMap<i64, Scalar>> {
        let sv = self.space.scalar_var();
        let mut out: BTreeMap<Vec<i64>, BTreeMap<i64, Scalar>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            let k = rest[sv];
            rest[sv] = 0;
            out.entry(rest).or_default().insert(k, c.clone());
        }
        out
    }

    /// Evaluate, sending variable `idx` to the given monomials of `target`;
    /// convenience wrapper over `map_monomials` for full substitutions.
    pub fn eval_all(&self, target: &Arc<VarSpace>, images: &[Mono]) -> LaurentPoly {
        assert_eq!(images.len(), self.space.arity());
        self.map_monomials(target, |i| images[i].clone())
    }
}

/// Quantum integer `[k]_r = (r^k - 1)/(r - 1) = 1 + r + ... + r^{k-1}`,
/// expanded as a polynomial; `k` must be nonnegative.
pub fn qint(k: i64, r: &LaurentPoly) -> LaurentPoly {
    assert!(k >= 0, "qint: negative k is not needed and is rejected");
    let mut acc = LaurentPoly::zero(r.space());
    let mut pw = LaurentPoly::one(r.space());
    for _ in 0..k {
        acc = acc.add(&pw);
        pw = pw.mul(r);
    }
    acc
}

/// Quantum factorial `[n]_r!`.
pub fn qfact(n: i64, r: &LaurentPoly) -> LaurentPoly {
    let mut acc = LaurentPoly::one(r.space());
    for k in 1..=n {
        acc = acc.mul(&qint(k, r));
    }
    acc
}

/// Quantum binomial coefficient `[n choose k]_r`.
/// Computed as a quotient of factorials; the division is exact.
pub fn qbinom(n: i64, k: i64, r: &LaurentPoly) -> LaurentPoly {
    assert!((0..=n).contains(&k));
    let num = qfact(n, r);
    let den = qfact(k, r).mul(&qfact(n - k, r));
    exact_div(&num, &den).expect("quantum binomial division is exact")
}

/// Exact polynomial division `p / d`, or `None` when not divisible.
///
/// Lexicographic leading-term elimination. When `p = q*d` holds, the support
/// of `q` lies in an explicit per-variable box: the extremal-face polynomials
/// of a product multiply, so `min_v(q) = min_v(p) - min_v(d)` and
/// `max_v(q) = max_v(p) - max_v(d)` exactly. Any candidate quotient term
/// outside that box therefore certifies non-divisibility, and leading terms
/// strictly decrease within a finite box, so the loop terminates.
pub fn exact_div(p: &LaurentPoly, d: &LaurentPoly) -> Option<LaurentPoly> {
    assert!(!d.is_zero(), "division by zero polynomial");
    if p.is_zero() {
        return Some(LaurentPoly::zero(p.space()));
    }
    let arity = p.space().arity();
    let mut lo = vec![i64::MAX; arity];
    let mut hi = vec![i64::MIN; arity];
    for (e, _) in p.terms() {
        for v in 0..arity {
            lo[v] = lo[v].min(e[v]);
            hi[v] = hi[v].max(e[v]);
        }
    }
    for v in 0..arity {
        let dmin = d.terms().map(|(e, _)| e[v]).min().unwrap();
        let dmax = d.terms().map(|(e, _)| e[v]).max().unwrap();
        lo[v] -= dmin;
        hi[v] -= dmax;
        if lo[v] > hi[v] {
            return None;
        }
    }
    let mut rem = p.clone();
    let mut quo = LaurentPoly::zero(p.space());
    let (dc, de) = d.leading().unwrap();
    while !rem.is_zero() {
        let (rc, re) = rem.leading().unwrap();
        let qe: Vec<i64> = re.iter().zip(&de).map(|(a, b)| a - b).collect();
        if qe.iter().enumerate().any(|(v, &x)| x < lo[v] || x > hi[v]) {
            return None;
        }
        let qc = rc / &dc;
        let qterm = LaurentPoly::monomial(p.space(), qc, qe);
        rem = rem.sub(&qterm.mul(d));
        quo = quo.add(&qterm);
    }
    Some(quo)
}

impl fmt::Display for LaurentPoly {
    /// Canonical text form: terms sorted by exponent vector, each printed
    /// `coeff * v1^e1 * v2^e2 * ...` with zero exponents omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let mut parts: Vec<String> = Vec::new();
            for (i, &k) in e.iter().enumerate() {
                if k == 1 {
                    parts.push(self.space.name(i).to_string());
                } else if k != 0 {
                    parts.push(format!("{}^{}", self.space.name(i), k));
                }
            }
            let coeff = scalar::fmt_abs(c);
            let body = if parts.is_empty() {
                coeff
            } else if crate::scalar::is_one(&num::Signed::abs(c)) {
                parts.join("*")
            } else {
                format!("{}*{}", coeff, parts.join("*"))
            };
            if first {
                if c < &Scalar::zero() {
                    write!(f, "-{}", body)?;
                } else {
                    write!(f, "{}", body)?;
                }
                first = false;
            } else if c < &Scalar::zero() {
                write!(f, " - {}", body)?;
            } else {
                write!(f, " + {}", body)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn sp() -> Arc<VarSpace> {
        VarSpace::new(vec!["t", "Y1", "Y2"], 0)
    }

    #[test]
    fn qint_examples() {
        let s = sp();
        let t = LaurentPoly::var(&s, 0);
        // qint(3, t) = 1 + t + t^2
        let mut expect = LaurentPoly::one(&s);
        expect = expect.add(&t).add(&t.pow(2));
        assert_eq!(qint(3, &t), expect);
        // qint(1, t^2) = 1
        let t2 = t.pow(2);
        assert_eq!(qint(1, &t2), LaurentPoly::one(&s));
        // qint(2, t^-2) = 1 + t^-2
        let tm2 = LaurentPoly::monomial(&s, int(1), vec![-2, 0, 0]);
        assert_eq!(qint(2, &tm2), LaurentPoly::one(&s).add(&tm2));
    }

    #[test]
    fn qbinom_is_polynomial() {
        let s = sp();
        let t = LaurentPoly::var(&s, 0);
        let b = qbinom(4, 2, &t);
        // [4 choose 2]_t = 1 + t + 2t^2 + t^3 + t^4
        let mut expect = LaurentPoly::one(&s);
        expect = expect.add(&t);
        expect = expect.add(&t.pow(2).scale(&int(2)));
        expect = expect.add(&t.pow(3)).add(&t.pow(4));
        assert_eq!(b, expect);
    }

    #[test]
    fn ring_axioms_random() {
        // Commutativity/associativity/distributivity on pseudorandom inputs.
        let s = sp();
        let mut seed: u64 = 0x9e3779b97f4a7c15;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        let mut rand_poly = {
            let s = s.clone();
            move || {
                let mut p = LaurentPoly::zero(&s);
                for _ in 0..3 {
                    let e = vec![
                        (next() % 5) as i64 - 2,
                        (next() % 3) as i64 - 1,
                        (next() % 3) as i64 - 1,
                    ];
                    p.add_term(int((next() % 7) as i64 - 3), e);
                }
                p
            }
        };
        for _ in 0..25 {
            let a = rand_poly();
            let b = rand_poly();
            let c = rand_poly();
            assert_eq!(a.mul(&b), b.mul(&a));
            assert_eq!(a.add(&b), b.add(&a));
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        }
    }

    #[test]
    fn exact_div_roundtrip() {
        let s = sp();
        let y1 = LaurentPoly::var(&s, 1);
        let y2 = LaurentPoly::var(&s, 2);
        let p = y1.pow(2).sub(&y2.pow(2));
        let d = y1.sub(&y2);
        assert_eq!(exact_div(&p, &d), Some(y1.add(&y2)));
        assert_eq!(exact_div(&y1.sub(&y2), &y1.add(&y2)), None);
    }
}
