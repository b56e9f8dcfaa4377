//! Cherednik's intertwiners and the renormalized intertwiners in the
//! localized algebra, with the f-factor bookkeeping.

use crate::affine::AffinePerm;
use crate::daha::{Coef, DahaElement, DahaParams, Kind, LocDahaElement};
use crate::poly::LaurentPoly;
use crate::scalar;
use std::sync::Arc;

pub use crate::daha::LocDahaElement as Localized;

/// `phi_i = T_i (Y_i - Y_{i+1}) + (t - t^{-1}) Y_{i+1}` with extended
/// subscripts (`T_{j+mn} = T_j`, `Y_{i+mn} = q^{-m} Y_i`); the displayed
/// formula is already in normal order.
pub fn phi(params: &Arc<DahaParams>, i: i64) -> LocDahaElement {
    let n = params.n() as i64;
    let letter = i.rem_euclid(n) as usize;
    let yi = params.y_ext(i);
    let yi1 = params.y_ext(i + 1);
    let diff = LaurentPoly::monomial(params.fspace(), yi.0, yi.1).sub(&LaurentPoly::monomial(
        params.fspace(),
        yi1.0.clone(),
        yi1.1.clone(),
    ));
    let tdiff = LaurentPoly::symbol(params.fspace(), "t", 1)
        .sub(&LaurentPoly::symbol(params.fspace(), "t", -1));
    let lead = DahaElement::basis(
        params,
        AffinePerm::s(params.n(), letter),
        Coef::from_poly(params, diff),
    );
    let tail = DahaElement::basis(
        params,
        AffinePerm::identity(params.n()),
        Coef::from_poly(
            params,
            tdiff.mul(&LaurentPoly::monomial(params.fspace(), yi1.0, yi1.1)),
        ),
    );
    lead.add(&tail)
}

/// `nu_i = phi_i f_{i,i+1}^{-1}`.
pub fn nu(params: &Arc<DahaParams>, i: i64) -> LocDahaElement {
    let f = params.f_factor(i, i + 1);
    let mut out = DahaElement::zero(params);
    for (w, c) in phi(params, i).terms() {
        out = out.add(&DahaElement::basis(params, w.clone(), c.div_binomial(&f)));
    }
    out
}

/// `phi_w = pi^k phi_{i_1} ... phi_{i_m}` for a reduced word of `w`, with
/// the convention `phi_pi = pi`.
pub fn phi_word(params: &Arc<DahaParams>, w: &AffinePerm) -> LocDahaElement {
    let (k, word) = w.reduced_word();
    let mut acc = DahaElement::pi_gen(params, k);
    for i in word {
        acc = acc.mul(&phi(params, i as i64));
    }
    acc
}

/// `nu_w`, reduced-word independent by the braid relations.
pub fn nu_word(params: &Arc<DahaParams>, w: &AffinePerm) -> LocDahaElement {
    let (k, word) = w.reduced_word();
    let mut acc = DahaElement::pi_gen(params, k);
    for i in word {
        acc = acc.mul(&nu(params, i as i64));
    }
    acc
}

/// The proof-normalization fractions
/// `a_{ij} = t f_{i-n,j} / f_{ij}` and `b_{ij} = (t - t^{-1}) Y_j / f_{ij}`,
/// satisfying `nu_i = T_i a_{i,i+1} + b_{i,i+1}` and periodicity
/// `a_{ij} = a_{i+n,j+n}`.
pub fn ab_decompose(params: &Arc<DahaParams>, i: i64, j: i64) -> (Coef, Coef) {
    let n = params.n() as i64;
    let f = params.f_factor(i, j);
    let fm = params.f_factor(i - n, j);
    let t = LaurentPoly::symbol(params.fspace(), "t", 1);
    let tdiff = t.sub(&LaurentPoly::symbol(params.fspace(), "t", -1));
    let a = Coef::from_poly(params, fm.to_poly().mul(&t)).div_binomial(&f);
    let yj = params.y_ext(j);
    let b = Coef::from_poly(
        params,
        tdiff.mul(&LaurentPoly::monomial(params.fspace(), yj.0, yj.1)),
    )
    .div_binomial(&f);
    (a, b)
}

/// Outcome of comparing `phi_w` against `nu_w q^alpha prod f_{ij}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PhiVsNu {
    Verified { alpha: i64 },
    NotEqual,
}

/// The exponent `alpha` arises from the relation `f_{ij} = q f_{i+n,j+n}`
/// used to normalize inversion indices into `1 <= i <= n`.
pub fn phi_vs_nu_check(params: &Arc<DahaParams>, w: &AffinePerm) -> PhiVsNu {
    let pw = phi_word(params, w);
    let nw = nu_word(params, w);
    // prod of f-factors over Inv(w), a polynomial coefficient
    let mut prod = Coef::one(params);
    for (i, j) in w.inversions() {
        prod = prod.mul_poly(&params.f_factor(i, j).to_poly());
    }
    let rhs0 = nw.scale_coef(&prod);
    if pw.is_zero() != rhs0.is_zero() {
        return PhiVsNu::NotEqual;
    }
    if pw.is_zero() {
        return PhiVsNu::Verified { alpha: 0 };
    }
    // Determine alpha from leading monomials of a shared basis coefficient,
    // then verify exactly.
    let qname = match params.kind() {
        Kind::Gl => "q",
        Kind::Sl => "s",
    };
    let (_, qe) = params.fspace().symbol_pow(qname, 1);
    let probe = pw
        .terms()
        .find(|(x, _)| !rhs0.coeff(x).is_zero())
        .map(|(x, _)| x.clone());
    let Some(x) = probe else {
        return PhiVsNu::NotEqual;
    };
    let c1 = pw.coeff(&x);
    let c2 = rhs0.coeff(&x);
    // alpha satisfies lead(c1.num * c2.dens) = q^alpha * lead(c2.num * c1.dens)
    let cross1 = c1.num().mul(&c2.den_param()).mul(&{
        let mut p = LaurentPoly::one(params.fspace());
        for (b, m) in c2.den_binomials() {
            for _ in 0..m {
                p = p.mul(&b.to_poly());
            }
        }
        p
    });
    let cross2 = c2.num().mul(&c1.den_param()).mul(&{
        let mut p = LaurentPoly::one(params.fspace());
        for (b, m) in c1.den_binomials() {
            for _ in 0..m {
                p = p.mul(&b.to_poly());
            }
        }
        p
    });
    let (Some((_, e1)), Some((_, e2))) = (cross1.leading(), cross2.leading()) else {
        return PhiVsNu::NotEqual;
    };
    let Some(slot) = qe.iter().position(|&v| v != 0) else {
        return PhiVsNu::NotEqual;
    };
    let diff = e1[slot] - e2[slot];
    if diff % qe[slot] != 0 {
        return PhiVsNu::NotEqual;
    }
    let alpha = diff / qe[slot];
    let qalpha = params.fspace().symbol_pow(qname, alpha);
    let rhs = rhs0.scale_coef(&Coef::from_poly(
        params,
        LaurentPoly::monomial(params.fspace(), qalpha.0, qalpha.1),
    ));
    if pw.equals(&rhs) {
        PhiVsNu::Verified { alpha }
    } else {
        PhiVsNu::NotEqual
    }
}
