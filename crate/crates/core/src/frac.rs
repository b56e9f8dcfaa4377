//! Binomials and fractions with binomial-factored denominators.
//!
//! The entire intertwiner calculus only ever introduces denominators that
//! are products of irreducible two-term factors (f-factors and their
//! relatives), so keeping the denominator as a multiset of binomials makes
//! exact reduction a sequence of checked divisions: a binomial that is
//! linear in a variable occurring in only one of its terms is prime in the
//! Laurent ring, hence cancellation by divisibility is complete.

use crate::pfrac::PFrac;
use crate::poly::LaurentPoly;
use crate::scalar::{self, Scalar};
use crate::vars::{Mono, VarSpace};
use num::traits::Zero;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// A two-term Laurent polynomial `c1*X^e1 + c2*X^e2`, irreducible by the
/// construction-time invariant: some variable occurs in exactly one of the
/// two terms, with exponent one there.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Binomial {
    t1: (Vec<i64>, Scalar),
    t2: (Vec<i64>, Scalar),
    /// (variable index, true when the variable lives in `t1`)
    pivot: (usize, bool),
    /// Extended-index tag `(i, j)` when this binomial is the f-factor
    /// `t Y_i - t^{-1} Y_j`.
    ftag: Option<(i64, i64)>,
    space: Arc<VarSpace>,
}

fn find_pivot(e1: &[i64], e2: &[i64]) -> Option<(usize, bool)> {
    for v in 0..e1.len() {
        if e1[v] == 1 && e2[v] == 0 {
            return Some((v, true));
        }
        if e2[v] == 1 && e1[v] == 0 {
            return Some((v, false));
        }
    }
    None
}

impl Binomial {
    pub fn new(space: &Arc<VarSpace>, m1: Mono, m2: Mono) -> Self {
        Self::with_ftag(space, m1, m2, None)
    }

    pub fn with_ftag(space: &Arc<VarSpace>, m1: Mono, m2: Mono, ftag: Option<(i64, i64)>) -> Self {
        let (c1, e1) = m1;
        let (c2, e2) = m2;
        assert!(!c1.is_zero() && !c2.is_zero(), "binomial with zero coefficient");
        assert_ne!(e1, e2, "binomial terms must have distinct monomials");
        let pivot = find_pivot(&e1, &e2)
            .expect("binomial is not irreducible: no variable of degree one in exactly one term");
        // Deterministic term order: larger exponent vector first.
        let (t1, t2, pivot) = if e1 > e2 {
            ((e1, c1), (e2, c2), pivot)
        } else {
            ((e2, c2), (e1, c1), (pivot.0, !pivot.1))
        };
        Binomial {
            t1,
            t2,
            pivot,
            ftag,
            space: space.clone(),
        }
    }

    pub fn space(&self) -> &Arc<VarSpace> {
        &self.space
    }

    pub fn ftag(&self) -> Option<(i64, i64)> {
        self.ftag
    }

    pub fn terms(&self) -> ((Vec<i64>, Scalar), (Vec<i64>, Scalar)) {
        (self.t1.clone(), self.t2.clone())
    }

    pub fn to_poly(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero(&self.space);
        p.add_term(self.t1.1.clone(), self.t1.0.clone());
        p.add_term(self.t2.1.clone(), self.t2.0.clone());
        p
    }

    /// Write `self = c * X^e * canonical` where the canonical representative
    /// has leading scalar 1 and componentwise-minimal exponents 0.
    pub fn canonicalize(&self) -> (Mono, Binomial) {
        let min: Vec<i64> = self
            .t1
            .0
            .iter()
            .zip(&self.t2.0)
            .map(|(a, b)| *a.min(b))
            .collect();
        let c = self.t1.1.clone();
        let e1: Vec<i64> = self.t1.0.iter().zip(&min).map(|(a, b)| a - b).collect();
        let e2: Vec<i64> = self.t2.0.iter().zip(&min).map(|(a, b)| a - b).collect();
        let canon = Binomial {
            t1: (e1, scalar::int(1)),
            t2: (e2, &self.t2.1 / &c),
            pivot: self.pivot,
            ftag: self.ftag,
            space: self.space.clone(),
        };
        ((c, min), canon)
    }

    /// Evaluate under a full variable substitution into `target`.
    pub fn eval(&self, target: &Arc<VarSpace>, images: &[Mono]) -> LaurentPoly {
        self.to_poly().eval_all(target, images)
    }

    /// Apply a monomial substitution variable-wise, producing a new binomial
    /// in the same space (used for the symmetric-group twists of f-factors).
    pub fn map_monomials(&self, f: impl Fn(usize) -> Mono) -> Binomial {
        let img = |(e, c): &(Vec<i64>, Scalar)| -> Mono {
            let mut coeff = c.clone();
            let mut exps = vec![0i64; self.space.arity()];
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let (ic, ie) = f(i);
                coeff *= scalar::pow(&ic, k);
                for (slot, v) in exps.iter_mut().zip(&ie) {
                    *slot += v * k;
                }
            }
            (coeff, exps)
        };
        Binomial::with_ftag(&self.space, img(&self.t1), img(&self.t2), None)
    }
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

/// Exact division of `p` by the binomial `b`, or `None` if not divisible.
///
/// Writes `b = L + O` where `L` contains the pivot variable `v` with
/// exponent one and `O` is `v`-free, then solves the coefficient recurrence
/// of `q*b = p` in descending powers of `v`. Terminates in one pass over the
/// `v`-degree range of `p` and decides divisibility exactly.
pub fn binomial_divide(p: &LaurentPoly, b: &Binomial) -> Option<LaurentPoly> {
    if p.is_zero() {
        return Some(p.clone());
    }
    let space = p.space().clone();
    let (v, in_t1) = b.pivot;
    let ((e1, c1), (e2, c2)) = b.terms();
    let (lead, other) = if in_t1 { ((e1, c1), (e2, c2)) } else { ((e2, c2), (e1, c1)) };
    // L = cl * X^el with el[v] == 1; strip v to get the invertible monomial.
    let mut el = lead.0.clone();
    el[v] = 0;
    let linv_c = lead.1.recip();
    let linv_e: Vec<i64> = el.iter().map(|x| -x).collect();
    let opoly = LaurentPoly::monomial(&space, other.1.clone(), other.0.clone());

    // Group p by v-degree.
    let mut groups: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
    for (e, c) in p.terms() {
        let k = e[v];
        let mut rest = e.clone();
        rest[v] = 0;
        groups
            .entry(k)
            .or_insert_with(|| LaurentPoly::zero(&space))
            .add_term(c.clone(), rest);
    }
    let kmax = *groups.keys().next_back().unwrap();
    let kmin = *groups.keys().next().unwrap();

    let mut quo = LaurentPoly::zero(&space);
    let mut qk = LaurentPoly::zero(&space); // q_k, starting above the top
    for k in (kmin..=kmax).rev() {
        let pk = groups.remove(&k).unwrap_or_else(|| LaurentPoly::zero(&space));
        // p_k = q_{k-1} * L^ + q_k * O  =>  q_{k-1} = (p_k - q_k O) L^{-1}
        let qk1 = pk.sub(&qk.mul(&opoly)).mul_mono(&linv_c, &linv_e);
        let mut shift = vec![0i64; space.arity()];
        shift[v] = k - 1;
        quo = quo.add(&qk1.mul_mono(&scalar::int(1), &shift));
        qk = qk1;
    }
    // Residual constraint below the bottom degree.
    if qk.is_zero() {
        debug_assert_eq!(quo.mul(&b.to_poly()), *p);
        Some(quo)
    } else {
        None
    }
}

/// A rational function kept in the form `num / prod b_i^{m_i}` with the
/// denominator a multiset of canonical binomials.
#[derive(Debug, Clone)]
pub struct FactoredFraction {
    num: LaurentPoly,
    den: BTreeMap<Binomial, u32>,
}

impl FactoredFraction {
    pub fn from_poly(num: LaurentPoly) -> Self {
        FactoredFraction {
            num,
            den: BTreeMap::new(),
        }
    }

    pub fn zero(space: &Arc<VarSpace>) -> Self {
        Self::from_poly(LaurentPoly::zero(space))
    }

    pub fn one(space: &Arc<VarSpace>) -> Self {
        Self::from_poly(LaurentPoly::one(space))
    }

    pub fn space(&self) -> &Arc<VarSpace> {
        self.num.space()
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den_factors(&self) -> impl Iterator<Item = (&Binomial, u32)> {
        self.den.iter().map(|(b, m)| (b, *m))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the denominator is trivial.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn to_poly(&self) -> Option<&LaurentPoly> {
        if self.den.is_empty() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn den_poly(&self) -> LaurentPoly {
        let mut p = LaurentPoly::one(self.num.space());
        for (b, m) in &self.den {
            for _ in 0..*m {
                p = p.mul(&b.to_poly());
            }
        }
        p
    }

    /// Cancel denominator factors dividing the numerator until the reduced
    /// invariant holds. Idempotent.
    pub fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        loop {
            let mut cancelled = false;
            let keys: Vec<Binomial> = self.den.keys().cloned().collect();
            for b in keys {
                while self.den.get(&b).copied().unwrap_or(0) > 0 {
                    if let Some(q) = binomial_divide(&self.num, &b) {
                        self.num = q;
                        let m = self.den.get_mut(&b).unwrap();
                        *m -= 1;
                        if *m == 0 {
                            self.den.remove(&b);
                        }
                        cancelled = true;
                    } else {
                        break;
                    }
                }
            }
            if !cancelled {
                break;
            }
        }
    }

    pub fn div_binomial(&self, b: &Binomial) -> Self {
        let ((uc, ue), canon) = b.canonicalize();
        let inv_e: Vec<i64> = ue.iter().map(|x| -x).collect();
        let mut out = FactoredFraction {
            num: self.num.mul_mono(&uc.recip(), &inv_e),
            den: self.den.clone(),
        };
        *out.den.entry(canon).or_insert(0) += 1;
        out.reduce();
        out
    }

    pub fn mul_binomial(&self, b: &Binomial) -> Self {
        let mut out = FactoredFraction {
            num: self.num.mul(&b.to_poly()),
            den: self.den.clone(),
        };
        out.reduce();
        out
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        let mut out = FactoredFraction {
            num: self.num.mul(p),
            den: self.den.clone(),
        };
        out.reduce();
        out
    }

    pub fn mul_mono(&self, c: &Scalar, e: &[i64]) -> Self {
        FactoredFraction {
            num: self.num.mul_mono(c, e),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        FactoredFraction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        FactoredFraction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut den = self.den.clone();
        for (b, m) in &other.den {
            *den.entry(b.clone()).or_insert(0) += m;
        }
        let mut out = FactoredFraction {
            num: self.num.mul(&other.num),
            den,
        };
        out.reduce();
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        // Least common denominator by multiset max.
        let mut lcm: BTreeMap<Binomial, u32> = self.den.clone();
        for (b, m) in &other.den {
            let e = lcm.entry(b.clone()).or_insert(0);
            *e = (*e).max(*m);
        }
        let complement = |den: &BTreeMap<Binomial, u32>| -> LaurentPoly {
            let mut p = LaurentPoly::one(self.num.space());
            for (b, m) in &lcm {
                let have = den.get(b).copied().unwrap_or(0);
                for _ in 0..(m - have) {
                    p = p.mul(&b.to_poly());
                }
            }
            p
        };
        let num = self
            .num
            .mul(&complement(&self.den))
            .add(&other.num.mul(&complement(&other.den)));
        let mut out = FactoredFraction { num, den: lcm };
        out.reduce();
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Substitute every variable by a monomial of the same space; the
    /// denominators must stay genuine binomials (monomial substitutions
    /// preserve this).
    pub fn map_monomials(&self, f: impl Fn(usize) -> Mono + Copy) -> Self {
        let num = self.num.map_monomials(self.num.space(), f);
        let mut out = FactoredFraction::from_poly(num);
        for (b, m) in &self.den {
            let nb = b.map_monomials(f);
            for _ in 0..*m {
                out = out.div_binomial(&nb);
            }
        }
        out
    }

    /// Decidable equality by cross-multiplication.
    pub fn equals(&self, other: &Self) -> bool {
        self.num.mul(&other.den_poly()) == other.num.mul(&self.den_poly())
    }

    /// Evaluate at a point given by a monomial image for every variable.
    /// Returns the exact value as a parameter fraction, or the pole order
    /// (the count of vanishing denominator factors, with multiplicity).
    pub fn eval(&self, target: &Arc<VarSpace>, images: &[Mono]) -> Result<PFrac, usize> {
        let mut pole = 0usize;
        let mut den = LaurentPoly::one(target);
        for (b, m) in &self.den {
            let val = b.eval(target, images);
            if val.is_zero() {
                pole += *m as usize;
            } else {
                for _ in 0..*m {
                    den = den.mul(&val);
                }
            }
        }
        if pole > 0 {
            return Err(pole);
        }
        let num = self.num.eval_all(target, images);
        Ok(PFrac::new(num, den))
    }
}

impl PartialEq for FactoredFraction {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}
impl Eq for FactoredFraction {}

impl fmt::Display for FactoredFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        let dens: Vec<String> = self
            .den
            .iter()
            .map(|(b, m)| {
                if *m == 1 {
                    format!("({})", b)
                } else {
                    format!("({})^{}", b, m)
                }
            })
            .collect();
        write!(f, "({}) / {}", self.num, dens.join(" "))
    }
}

/// Reduced representative of a factored fraction (the reduction invariant is
/// maintained by all constructors; this is the explicit operation surface).
pub fn ff_reduce(x: &FactoredFraction) -> FactoredFraction {
    let mut out = x.clone();
    out.reduce();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    // space [t, Y1, Y2] with q = t^-2
    fn sp() -> Arc<VarSpace> {
        VarSpace::with_rules(vec!["t", "Y1", "Y2"], 0, vec![("q", int(1), vec![-2, 0, 0])])
    }

    fn f12(s: &Arc<VarSpace>) -> Binomial {
        // t Y1 - t^-1 Y2
        Binomial::with_ftag(
            s,
            (int(1), vec![1, 1, 0]),
            (int(-1), vec![-1, 0, 1]),
            Some((1, 2)),
        )
    }

    #[test]
    fn divide_constructed_product() {
        let s = sp();
        let y1 = LaurentPoly::var(&s, 1);
        let b = f12(&s);
        let p = b.to_poly().mul(&y1);
        assert_eq!(binomial_divide(&p, &b), Some(y1));
    }

    #[test]
    fn divide_not_divisible_generically() {
        let s = sp();
        let y1 = LaurentPoly::var(&s, 1);
        let y2 = LaurentPoly::var(&s, 2);
        let p = y1.sub(&y2);
        assert_eq!(binomial_divide(&p, &f12(&s)), None);
    }

    #[test]
    fn divide_difference_of_squares() {
        let s = sp();
        let y1 = LaurentPoly::var(&s, 1);
        let y2 = LaurentPoly::var(&s, 2);
        let p = y1.pow(2).sub(&y2.pow(2));
        let b = Binomial::new(&s, (int(1), vec![0, 1, 0]), (int(-1), vec![0, 0, 1]));
        assert_eq!(binomial_divide(&p, &b), Some(y1.add(&y2)));
    }

    #[test]
    fn divide_random_roundtrip() {
        let s = sp();
        let b = f12(&s);
        let mut seed: u64 = 12345;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        for _ in 0..30 {
            let mut p = LaurentPoly::zero(&s);
            for _ in 0..4 {
                let e = vec![
                    (next() % 5) as i64 - 2,
                    (next() % 4) as i64 - 2,
                    (next() % 4) as i64 - 2,
                ];
                p.add_term(int((next() % 9) as i64 - 4), e);
            }
            let prod = p.mul(&b.to_poly());
            assert_eq!(binomial_divide(&prod, &b), Some(p));
        }
    }

    #[test]
    fn ff_reduce_examples() {
        let s = sp();
        let b = f12(&s);
        let y1 = LaurentPoly::var(&s, 1);
        // f12 * Y1 / f12 -> Y1
        let x = FactoredFraction::from_poly(b.to_poly().mul(&y1)).div_binomial(&b);
        assert!(x.is_polynomial());
        assert_eq!(x.num(), &y1);
        // (Y1^2 - Y2^2) / {Y1 - Y2} -> Y1 + Y2
        let y2 = LaurentPoly::var(&s, 2);
        let d = Binomial::new(&s, (int(1), vec![0, 1, 0]), (int(-1), vec![0, 0, 1]));
        let x = FactoredFraction::from_poly(y1.pow(2).sub(&y2.pow(2))).div_binomial(&d);
        assert!(x.is_polynomial());
        assert_eq!(x.num(), &y1.add(&y2));
    }

    #[test]
    fn ff_reduce_idempotent_and_value_preserving() {
        let s = sp();
        let b = f12(&s);
        let y1 = LaurentPoly::var(&s, 1);
        let y2 = LaurentPoly::var(&s, 2);
        let x = FactoredFraction::from_poly(y1.add(&y2)).div_binomial(&b);
        let r = ff_reduce(&x);
        assert!(r.equals(&x));
        assert_eq!(ff_reduce(&r), r);
    }

    #[test]
    fn eval_examples() {
        let s = sp();
        let tsp = VarSpace::new(vec!["t"], 0);
        let b = f12(&s);
        // 1/f12 at (Y1, Y2) = (1, t^-2): 1/(t - t^-3)
        let x = FactoredFraction::one(&s).div_binomial(&b);
        let images = vec![(int(1), vec![1]), (int(1), vec![0]), (int(1), vec![-2])];
        let v = x.eval(&tsp, &images).unwrap();
        let t = LaurentPoly::var(&tsp, 0);
        let expect = PFrac::new(
            LaurentPoly::one(&tsp),
            t.clone().sub(&LaurentPoly::monomial(&tsp, int(1), vec![-3])),
        );
        assert_eq!(v, expect);
        // 1/f12 at (1, t^2): t*1 - t^-1 t^2 = 0 -> POLE(1)
        let images2 = vec![(int(1), vec![1]), (int(1), vec![0]), (int(1), vec![2])];
        assert_eq!(x.eval(&tsp, &images2), Err(1));
        // f12/f12 at any point -> 1 (reduction precedes evaluation)
        let y = FactoredFraction::from_poly(b.to_poly()).div_binomial(&b);
        assert_eq!(y.eval(&tsp, &images2), Ok(PFrac::one(&tsp)));
    }

    #[test]
    fn eval_multiplicative_when_finite() {
        let s = sp();
        let tsp = VarSpace::new(vec!["t"], 0);
        let b = f12(&s);
        let y1 = LaurentPoly::var(&s, 1);
        let y2 = LaurentPoly::var(&s, 2);
        let images = vec![(int(1), vec![1]), (int(2), vec![0]), (int(1), vec![-2])];
        let x = FactoredFraction::from_poly(y1.add(&y2)).div_binomial(&b);
        let y = FactoredFraction::from_poly(y2.clone()).div_binomial(&b);
        let lhs = x.mul(&y).eval(&tsp, &images).unwrap();
        let rhs = x
            .eval(&tsp, &images)
            .unwrap()
            .mul(&y.eval(&tsp, &images).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn field_axioms_random() {
        let s = sp();
        let b = f12(&s);
        let d = Binomial::new(&s, (int(1), vec![0, 1, 0]), (int(-1), vec![0, 0, 1]));
        let mut seed: u64 = 777;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        let mut rand_ff = {
            let s = s.clone();
            let b = b.clone();
            let d = d.clone();
            move |n: &mut dyn FnMut() -> u64| {
                let mut p = LaurentPoly::zero(&s);
                for _ in 0..3 {
                    let e = vec![
                        (n() % 3) as i64 - 1,
                        (n() % 3) as i64 - 1,
                        (n() % 3) as i64 - 1,
                    ];
                    p.add_term(int((n() % 7) as i64 - 3), e);
                }
                let mut f = FactoredFraction::from_poly(p);
                if n() % 2 == 0 {
                    f = f.div_binomial(&b);
                }
                if n() % 2 == 0 {
                    f = f.div_binomial(&d);
                }
                f
            }
        };
        for _ in 0..15 {
            let a = rand_ff(&mut next);
            let b2 = rand_ff(&mut next);
            let c = rand_ff(&mut next);
            assert!(a.add(&b2).equals(&b2.add(&a)));
            assert!(a.mul(&b2).equals(&b2.mul(&a)));
            assert!(a.add(&b2).add(&c).equals(&a.add(&b2.add(&c))));
            assert!(a.mul(&b2).mul(&c).equals(&a.mul(&b2.mul(&c))));
            assert!(a.mul(&b2.add(&c)).equals(&a.mul(&b2).add(&a.mul(&c))));
            assert!(a.sub(&a).is_zero());
        }
    }
}
