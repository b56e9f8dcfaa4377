//! The finite Hecke algebra and the extended affine Hecke algebra in normal
//! form.
//!
//! Elements are finitely supported maps from basis symbols (`T_w`, resp.
//! `T_w Y^beta`) to parameter-fraction coefficients. Multiplication pushes
//! Y-monomials through the generators with the commutation rule derived
//! from `T_i Y_i T_i = Y_{i+1}` and the quadratic relation; the geometric
//! correction terms always stay polynomial. The rule is certified by the
//! relation suites in the tests rather than imported from the literature.

use crate::perm::Perm;
use crate::pfrac::PFrac;
use crate::poly::{qfact, LaurentPoly};
use crate::vars::VarSpace;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Correction exponents for pushing `A^a B^b` past a simple reflection that
/// swaps the two variables:
/// `B (A^a B^b - A^b B^a) / (B - A) = sign * sum A^x B^y`.
/// Returns the list of `(x, y, sign)`.
pub(crate) fn dl_correction(a: i64, b: i64) -> Vec<(i64, i64, i64)> {
    use std::cmp::Ordering;
    match a.cmp(&b) {
        Ordering::Equal => Vec::new(),
        Ordering::Less => (0..(b - a)).map(|j| (a + j, b - j, 1)).collect(),
        Ordering::Greater => (0..(a - b)).map(|j| (b + j, a - j, -1)).collect(),
    }
}

/// Finite Hecke algebra element: a combination of `T_w`, `w` in `S_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinHeckeElt {
    n: usize,
    space: Arc<VarSpace>,
    terms: BTreeMap<Perm, PFrac>,
}

pub enum IdempotentKind {
    Sign,
    Triv,
}

impl FinHeckeElt {
    pub fn zero(n: usize, space: &Arc<VarSpace>) -> Self {
        FinHeckeElt {
            n,
            space: space.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize, space: &Arc<VarSpace>) -> Self {
        Self::basis(n, space, Perm::identity(n), PFrac::one(space))
    }

    pub fn basis(n: usize, space: &Arc<VarSpace>, w: Perm, c: PFrac) -> Self {
        let mut e = Self::zero(n, space);
        e.insert(w, c);
        e
    }

    pub fn t_gen(n: usize, space: &Arc<VarSpace>, i: usize) -> Self {
        Self::basis(n, space, Perm::s(n, i), PFrac::one(space))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn space(&self) -> &Arc<VarSpace> {
        &self.space
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Perm, &PFrac)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Perm) -> PFrac {
        self.terms
            .get(w)
            .cloned()
            .unwrap_or_else(|| PFrac::zero(&self.space))
    }

    fn insert(&mut self, w: Perm, c: PFrac) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let v = o.get().add(&c);
                if v.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.insert(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale_frac(&PFrac::constant(&self.space, crate::scalar::int(-1))))
    }

    pub fn scale_frac(&self, c: &PFrac) -> Self {
        let mut out = Self::zero(self.n, &self.space);
        for (w, v) in &self.terms {
            out.insert(w.clone(), v.mul(c));
        }
        out
    }

    /// `(t - t^{-1})` as a coefficient.
    fn tdiff(&self) -> PFrac {
        let t = LaurentPoly::symbol(&self.space, "t", 1);
        let tinv = LaurentPoly::symbol(&self.space, "t", -1);
        PFrac::from_poly(t.sub(&tinv))
    }

    pub fn right_mul_t(&self, i: usize) -> Self {
        let si = Perm::s(self.n, i);
        let mut out = Self::zero(self.n, &self.space);
        let tdiff = self.tdiff();
        for (w, c) in &self.terms {
            let wsi = w.compose(&si);
            if wsi.length() > w.length() {
                out.insert(wsi, c.clone());
            } else {
                out.insert(wsi, c.clone());
                out.insert(w.clone(), c.mul(&tdiff));
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "mismatched rank");
        let mut out = Self::zero(self.n, &self.space);
        for (w, c) in &other.terms {
            let mut acc = self.clone();
            for i in w.reduced_word() {
                acc = acc.right_mul_t(i);
            }
            out = out.add(&acc.scale_frac(c));
        }
        out
    }

    /// The trivial (`e+`) and sign (`e-`) idempotents.
    pub fn idempotent(n: usize, space: &Arc<VarSpace>, kind: IdempotentKind) -> Self {
        let t = LaurentPoly::symbol(space, "t", 1);
        let tinv = LaurentPoly::symbol(space, "t", -1);
        let (r, sgn_base) = match kind {
            IdempotentKind::Triv => (t.mul(&t), t.clone()),
            IdempotentKind::Sign => (tinv.mul(&tinv), tinv.neg()),
        };
        let norm = PFrac::new(LaurentPoly::one(space), qfact(n as i64, &r));
        let mut out = Self::zero(n, space);
        for w in Perm::all(n) {
            let len = w.length() as u32;
            let coeff = PFrac::from_poly(sgn_base.pow(len)).mul(&norm);
            out.insert(w, coeff);
        }
        out
    }
}

impl fmt::Display for FinHeckeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| format!("({}) * T{}", c, w))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Extended affine Hecke algebra element in the `T_w Y^beta` basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AhaElt {
    n: usize,
    space: Arc<VarSpace>,
    terms: BTreeMap<(Perm, Vec<i64>), PFrac>,
}

impl AhaElt {
    pub fn zero(n: usize, space: &Arc<VarSpace>) -> Self {
        AhaElt {
            n,
            space: space.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize, space: &Arc<VarSpace>) -> Self {
        Self::basis(n, space, Perm::identity(n), vec![0; n], PFrac::one(space))
    }

    pub fn basis(n: usize, space: &Arc<VarSpace>, w: Perm, beta: Vec<i64>, c: PFrac) -> Self {
        let mut e = Self::zero(n, space);
        e.insert((w, beta), c);
        e
    }

    pub fn t_gen(n: usize, space: &Arc<VarSpace>, i: usize) -> Self {
        Self::basis(n, space, Perm::s(n, i), vec![0; n], PFrac::one(space))
    }

    /// `Y^beta`.
    pub fn y_mono(n: usize, space: &Arc<VarSpace>, beta: Vec<i64>) -> Self {
        Self::basis(n, space, Perm::identity(n), beta, PFrac::one(space))
    }

    pub fn y_gen(n: usize, space: &Arc<VarSpace>, i: usize, exp: i64) -> Self {
        let mut beta = vec![0i64; n];
        beta[i - 1] = exp;
        Self::y_mono(n, space, beta)
    }

    pub fn from_finite(h: &FinHeckeElt) -> Self {
        let mut out = Self::zero(h.n(), h.space());
        for (w, c) in h.terms() {
            out.insert((w.clone(), vec![0; h.n()]), c.clone());
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn space(&self) -> &Arc<VarSpace> {
        &self.space
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Perm, Vec<i64>), &PFrac)> {
        self.terms.iter()
    }

    fn insert(&mut self, key: (Perm, Vec<i64>), c: PFrac) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let v = o.get().add(&c);
                if v.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert(k.clone(), c.clone());
        }
        out
    }

    pub fn scale_frac(&self, c: &PFrac) -> Self {
        let mut out = Self::zero(self.n, &self.space);
        for (k, v) in &self.terms {
            out.insert(k.clone(), v.mul(c));
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale_frac(&PFrac::constant(&self.space, crate::scalar::int(-1))))
    }

    fn tdiff(&self) -> PFrac {
        let t = LaurentPoly::symbol(&self.space, "t", 1);
        let tinv = LaurentPoly::symbol(&self.space, "t", -1);
        PFrac::from_poly(t.sub(&tinv))
    }

    /// Right multiplication by `T_i` (finite `i`, `1 <= i <= n-1`):
    /// `T_w Y^beta T_i = T_w T_i Y^{s_i beta} + T_w * corr(beta)`.
    pub fn right_mul_t(&self, i: usize) -> Self {
        assert!((1..self.n).contains(&i));
        let si = Perm::s(self.n, i);
        let tdiff = self.tdiff();
        let mut out = Self::zero(self.n, &self.space);
        for ((w, beta), c) in &self.terms {
            let mut bs = beta.clone();
            bs.swap(i - 1, i);
            // Hecke product T_w T_i.
            let wsi = w.compose(&si);
            if wsi.length() > w.length() {
                out.insert((wsi, bs.clone()), c.clone());
            } else {
                out.insert((wsi, bs.clone()), c.clone());
                out.insert((w.clone(), bs.clone()), c.mul(&tdiff));
            }
            // Correction terms: coefficients of (t - t^{-1}) * geometric sum.
            for (x, y, sign) in dl_correction(beta[i - 1], beta[i]) {
                let mut nb = beta.clone();
                nb[i - 1] = x;
                nb[i] = y;
                let s = PFrac::constant(&self.space, crate::scalar::int(sign));
                out.insert((w.clone(), nb), c.mul(&tdiff).mul(&s));
            }
        }
        out
    }

    pub fn right_mul_y(&self, beta: &[i64]) -> Self {
        let mut out = Self::zero(self.n, &self.space);
        for ((w, b), c) in &self.terms {
            let nb: Vec<i64> = b.iter().zip(beta).map(|(a, x)| a + x).collect();
            out.insert((w.clone(), nb), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "mismatched rank");
        let mut out = Self::zero(self.n, &self.space);
        for ((w, beta), c) in &other.terms {
            let mut acc = self.clone();
            for i in w.reduced_word() {
                acc = acc.right_mul_t(i);
            }
            acc = acc.right_mul_y(beta);
            out = out.add(&acc.scale_frac(c));
        }
        out
    }
}

impl fmt::Display for AhaElt {
    /// Text form `T[w] * Y^(b1,...,bn)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((w, b), c)| {
                let bs: Vec<String> = b.iter().map(|x| x.to_string()).collect();
                let base = format!("T{} * Y^({})", w, bs.join(","));
                if c == &PFrac::one(&self.space) {
                    base
                } else {
                    format!("({}) * {}", c, base)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
