//! The extended affine symmetric group in window notation.
//!
//! An element is determined by its window `(w(1), ..., w(n))`, extended to a
//! bijection of the integers by `w(i + mn) = w(i) + mn`. The values are
//! pairwise distinct mod n, and the pi-degree `(sum w(i) - sum i)/n` is an
//! integer.

use crate::perm::Perm;
use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffinePerm {
    n: usize,
    window: Vec<i64>,
}

impl AffinePerm {
    pub fn from_window(window: Vec<i64>) -> Self {
        let n = window.len();
        assert!(n >= 1);
        let mut residues = BTreeSet::new();
        for &v in &window {
            residues.insert(v.rem_euclid(n as i64));
        }
        assert_eq!(residues.len(), n, "window values must be distinct mod n");
        let sum: i64 = window.iter().sum();
        let base: i64 = (1..=n as i64).sum();
        assert_eq!((sum - base).rem_euclid(n as i64), 0);
        AffinePerm { n, window }
    }

    pub fn identity(n: usize) -> Self {
        AffinePerm {
            n,
            window: (1..=n as i64).collect(),
        }
    }

    /// Simple reflection `s_i`, `0 <= i <= n-1` (with `s_0` the affine one).
    pub fn s(n: usize, i: usize) -> Self {
        assert!(i < n && n >= 2);
        let mut w: Vec<i64> = (1..=n as i64).collect();
        if i == 0 {
            w[0] = 0;
            w[n - 1] = n as i64 + 1;
        } else {
            w.swap(i - 1, i);
        }
        AffinePerm { n, window: w }
    }

    pub fn pi(n: usize) -> Self {
        AffinePerm {
            n,
            window: (2..=n as i64 + 1).collect(),
        }
    }

    pub fn pi_pow(n: usize, k: i64) -> Self {
        AffinePerm {
            n,
            window: (1..=n as i64).map(|i| i + k).collect(),
        }
    }

    /// Translation by an integer vector: window `(1 + n b_1, ..., n + n b_n)`.
    pub fn translation(beta: &[i64]) -> Self {
        let n = beta.len();
        AffinePerm {
            n,
            window: (0..n).map(|i| (i as i64 + 1) + n as i64 * beta[i]).collect(),
        }
    }

    /// Translation by `-rho = (0, -1, ..., 1-n)`.
    pub fn gamma(n: usize) -> Self {
        let beta: Vec<i64> = (0..n as i64).map(|i| -i).collect();
        Self::translation(&beta)
    }

    pub fn from_perm(p: &Perm) -> Self {
        AffinePerm {
            n: p.n(),
            window: p.one_line().iter().map(|&v| v as i64).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    /// The extended bijection of the integers.
    pub fn apply(&self, j: i64) -> i64 {
        let n = self.n as i64;
        let j0 = (j - 1).rem_euclid(n) + 1;
        let m = (j - j0) / n;
        self.window[(j0 - 1) as usize] + m * n
    }

    /// `(self o other)(i) = self(other(i))`.
    pub fn compose(&self, other: &AffinePerm) -> AffinePerm {
        assert_eq!(self.n, other.n, "mismatched rank");
        AffinePerm {
            n: self.n,
            window: other.window.iter().map(|&v| self.apply(v)).collect(),
        }
    }

    pub fn inverse(&self) -> AffinePerm {
        let n = self.n as i64;
        let mut window = vec![0i64; self.n];
        for (k, &v) in self.window.iter().enumerate() {
            // self(k+1) = v  =>  inv(v) = k+1, extended to the residue of v.
            let v0 = (v - 1).rem_euclid(n) + 1;
            window[(v0 - 1) as usize] = (k as i64 + 1) - (v - v0);
        }
        AffinePerm { n: self.n, window }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    /// `(sum w(i) - sum i)/n`; the power of `pi` in the decomposition
    /// `w = pi^k u` with `u` in the (unextended) affine Weyl group.
    pub fn pi_degree(&self) -> i64 {
        let sum: i64 = self.window.iter().sum();
        let base: i64 = (1..=self.n as i64).sum();
        (sum - base) / self.n as i64
    }

    /// Is this a finite permutation (window a rearrangement of 1..n)?
    pub fn as_perm(&self) -> Option<Perm> {
        if self.window.iter().all(|&v| v >= 1 && v <= self.n as i64) {
            Some(Perm::from_one_line(
                &self.window.iter().map(|&v| v as usize).collect::<Vec<_>>(),
            ))
        } else {
            None
        }
    }

    /// Inversions `(i, j)` with `1 <= i <= n`, `i < j`, `w(i) > w(j)`.
    pub fn inversions(&self) -> Vec<(i64, i64)> {
        let n = self.n as i64;
        let mut out = Vec::new();
        for i in 1..=n {
            let wi = self.apply(i);
            for r in 1..=n {
                let wr = self.window[(r - 1) as usize];
                // j = r + m n > i and w(j) = wr + m n < wi
                let mut m = if r > i { 0 } else { (i - r) / n + 1 };
                loop {
                    let j = r + m * n;
                    if j <= i {
                        m += 1;
                        continue;
                    }
                    if wr + m * n >= wi {
                        break;
                    }
                    out.push((i, j));
                    m += 1;
                }
            }
        }
        out.sort();
        out
    }

    pub fn length(&self) -> usize {
        self.inversions().len()
    }

    /// Is right multiplication by `s_i` length-decreasing?
    pub fn right_descent(&self, i: usize) -> bool {
        assert!(i < self.n);
        self.apply(i as i64) > self.apply(i as i64 + 1)
    }

    /// `self = pi^k s_{i_1} ... s_{i_m}` with `m = length(self)`.
    pub fn reduced_word(&self) -> (i64, Vec<usize>) {
        let k = self.pi_degree();
        let mut u = AffinePerm::pi_pow(self.n, -k).compose(self);
        debug_assert_eq!(u.pi_degree(), 0);
        let mut rev = Vec::new();
        'outer: loop {
            for i in 0..self.n {
                if u.right_descent(i) {
                    u = u.compose(&AffinePerm::s(self.n, i));
                    rev.push(i);
                    continue 'outer;
                }
            }
            break;
        }
        assert!(u.is_identity(), "descent stripping must reach the identity");
        rev.reverse();
        (k, rev)
    }

    /// Additive action on integer vectors with dilation `p`: the window part
    /// permutes entries through the quasi-periodic extension
    /// `b_{i+mn} = b_i - m p`.
    pub fn act_int(&self, b: &[i64], p: i64) -> Vec<i64> {
        assert_eq!(b.len(), self.n);
        let n = self.n as i64;
        let inv = self.inverse();
        (1..=n)
            .map(|i| {
                let j = inv.apply(i);
                let j0 = (j - 1).rem_euclid(n) + 1;
                let m = (j - j0) / n;
                b[(j0 - 1) as usize] - m * p
            })
            .collect()
    }

    /// Bruhat order; elements of different pi-degree are incomparable and
    /// compare as false.
    pub fn bruhat_leq(&self, other: &AffinePerm) -> bool {
        assert_eq!(self.n, other.n);
        if self.pi_degree() != other.pi_degree() {
            return false;
        }
        let k = self.pi_degree();
        let x = AffinePerm::pi_pow(self.n, -k).compose(self);
        let y = AffinePerm::pi_pow(self.n, -k).compose(other);
        bruhat_leq_aff(&x, &y)
    }

    /// All `y <= self` in Bruhat order (the lower interval): the set of
    /// products of subwords of a reduced word, computed by a prefix sweep.
    pub fn bruhat_lower_interval(&self) -> Vec<AffinePerm> {
        let (k, word) = self.reduced_word();
        let mut reach: BTreeSet<AffinePerm> = BTreeSet::new();
        reach.insert(AffinePerm::pi_pow(self.n, k));
        for &i in &word {
            let si = AffinePerm::s(self.n, i);
            let extra: Vec<AffinePerm> = reach.iter().map(|w| w.compose(&si)).collect();
            reach.extend(extra);
        }
        reach.into_iter().collect()
    }
}

fn bruhat_leq_aff(x: &AffinePerm, y: &AffinePerm) -> bool {
    if x.length() > y.length() {
        return false;
    }
    if y.is_identity() {
        return x.is_identity();
    }
    let n = y.n();
    let i = (0..n).find(|&i| y.right_descent(i)).unwrap();
    let si = AffinePerm::s(n, i);
    let ys = y.compose(&si);
    if x.right_descent(i) {
        bruhat_leq_aff(&x.compose(&si), &ys)
    } else {
        bruhat_leq_aff(x, &ys)
    }
}

/// Partition of an inversion set into vanishing, singular, and neutral
/// classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvClass {
    pub vanishing: Vec<(i64, i64)>,
    pub singular: Vec<(i64, i64)>,
    pub neutral: Vec<(i64, i64)>,
}

/// Classify by arbitrary predicates (the weight layer supplies evaluation
/// at a general weight point).
pub fn classify_inversions_by(
    w: &AffinePerm,
    is_vanishing: impl Fn(i64, i64) -> bool,
    is_singular: impl Fn(i64, i64) -> bool,
) -> InvClass {
    let mut out = InvClass {
        vanishing: Vec::new(),
        singular: Vec::new(),
        neutral: Vec::new(),
    };
    for (i, j) in w.inversions() {
        if is_vanishing(i, j) {
            out.vanishing.push((i, j));
        } else if is_singular(i, j) {
            out.singular.push((i, j));
        } else {
            out.neutral.push((i, j));
        }
    }
    out
}

/// Classification relative to `rho` with `n = N` and `q = t^{-2}`:
/// vanishing iff `j - i = 0 mod (n+1)`, singular iff `j - i = n mod (n+1)`.
pub fn classify_inversions_rho(w: &AffinePerm) -> InvClass {
    let n1 = w.n() as i64 + 1;
    classify_inversions_by(
        w,
        |i, j| (j - i).rem_euclid(n1) == 0,
        |i, j| (j - i).rem_euclid(n1) == n1 - 1,
    )
}

/// The two bijections from inversions of a finite `w` onto the vanishing and
/// singular inversions of `gamma^{-1} w gamma`.
pub fn inversion_bijections(w: &Perm) -> (Vec<((i64, i64), (i64, i64))>, Vec<((i64, i64), (i64, i64))>) {
    let n = w.n() as i64;
    let aw = AffinePerm::from_perm(w);
    let alpha: Vec<_> = aw
        .inversions()
        .into_iter()
        .map(|(i, j)| ((i, j), (i, j + (j - i) * n)))
        .collect();
    let beta: Vec<_> = aw
        .inversions()
        .into_iter()
        .map(|(i, j)| ((i, j), (i, j + (j - i + 1) * n)))
        .collect();
    (alpha, beta)
}

pub fn parse_window(s: &str) -> AffinePerm {
    let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
    let window: Vec<i64> = inner
        .split(',')
        .map(|x| x.trim().parse::<i64>().expect("window entries must be integers"))
        .collect();
    AffinePerm::from_window(window)
}

impl fmt::Display for AffinePerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.window.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Reduced-word text form `pi^k . s1 s2 s0 ...`.
pub fn fmt_reduced_word(w: &AffinePerm) -> String {
    let (k, word) = w.reduced_word();
    let letters: Vec<String> = word.iter().map(|i| format!("s{}", i)).collect();
    if letters.is_empty() {
        format!("pi^{} .", k)
    } else {
        format!("pi^{} . {}", k, letters.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(n: usize, k: i64, letters: &[usize]) -> AffinePerm {
        let mut w = AffinePerm::pi_pow(n, k);
        for &i in letters {
            w = w.compose(&AffinePerm::s(n, i));
        }
        w
    }

    #[test]
    fn gamma_window() {
        assert_eq!(AffinePerm::gamma(3).window(), &[1, -1, -3]);
    }

    #[test]
    fn conjugated_braid_word_window() {
        // gamma^{-1} (s1 s2) gamma at n = 3 has window [5, 6, -5]
        let g = AffinePerm::gamma(3);
        let s1s2 = word(3, 0, &[1, 2]);
        let u = g.inverse().compose(&s1s2).compose(&g);
        assert_eq!(u.window(), &[5, 6, -5]);
        assert_eq!(u.length(), 8);
        assert_eq!(
            u.inversions(),
            vec![
                (1, 3),
                (1, 6),
                (1, 9),
                (1, 12),
                (2, 3),
                (2, 6),
                (2, 9),
                (2, 12)
            ]
        );
        let (k, w) = u.reduced_word();
        assert_eq!(k, 0);
        assert_eq!(w.len(), 8);
        // Any reduced word must multiply back to u; the paper's word is one
        // such, so check it gives the same element.
        assert_eq!(word(3, 0, &[1, 2, 0, 1, 2, 0, 1, 2]), u);
    }

    #[test]
    fn compose_inverse_identity() {
        let u = word(3, 1, &[0, 2, 1, 0]);
        assert!(u.compose(&u.inverse()).is_identity());
        assert!(u.inverse().compose(&u).is_identity());
    }

    #[test]
    fn pi_squared_window() {
        let p = AffinePerm::pi(2);
        let p2 = p.compose(&p);
        assert_eq!(p2.window(), &[3, 4]);
        assert_eq!(p2.pi_degree(), 2);
        assert_eq!(p2.length(), 0);
    }

    #[test]
    fn translation_examples() {
        assert!(AffinePerm::translation(&[0, 0, 0]).is_identity());
        let t = AffinePerm::translation(&[1, 0]);
        assert_eq!(t.window(), &[3, 2]);
        assert_eq!(t.length(), 1);
    }

    #[test]
    fn stabilizer_generator_length() {
        // len(gamma^{-1} s_i gamma) = 2n - 1, with the displayed window.
        for n in 2..=4usize {
            let g = AffinePerm::gamma(n);
            for i in 1..n {
                let c = g
                    .inverse()
                    .compose(&AffinePerm::s(n, i))
                    .compose(&g);
                assert_eq!(c.length(), 2 * n - 1, "n={n} i={i}");
                let mut expect: Vec<i64> = (1..=n as i64).collect();
                expect[i - 1] = i as i64 + 1 + n as i64;
                expect[i] = i as i64 - n as i64;
                assert_eq!(c.window(), &expect[..]);
            }
        }
    }

    #[test]
    fn s0_action_on_int_vectors() {
        // s_0 . (b1, b2) = (b2 + 1, b1 - 1) with p = 1
        let s0 = AffinePerm::s(2, 0);
        assert_eq!(s0.act_int(&[5, 9], 1), vec![10, 4]);
        // pi . (b1,...,bn) = (bn + 1, b1, ..., b_{n-1})
        let pi = AffinePerm::pi(3);
        assert_eq!(pi.act_int(&[1, 2, 3], 1), vec![4, 1, 2]);
        // identity law and compatibility on random pairs
        let u = word(3, 1, &[0, 1]);
        let v = word(3, 0, &[2, 1, 0]);
        let b = vec![3, -1, 4];
        assert_eq!(
            u.compose(&v).act_int(&b, 1),
            u.act_int(&v.act_int(&b, 1), 1)
        );
        assert_eq!(AffinePerm::identity(3).act_int(&b, 1), b);
    }

    #[test]
    fn length_additivity_bound() {
        let elts = [
            word(3, 0, &[0, 1, 2]),
            word(3, 1, &[2, 1]),
            word(3, -1, &[0, 0]),
            AffinePerm::gamma(3),
        ];
        for a in &elts {
            for b in &elts {
                assert!(a.compose(b).length() <= a.length() + b.length());
            }
        }
    }

    #[test]
    fn inversion_count_is_length_exhaustive() {
        // every element of length <= 6 at n = 3, generated by words
        let n = 3;
        let mut layer = vec![AffinePerm::identity(n)];
        let mut seen: BTreeSet<AffinePerm> = layer.iter().cloned().collect();
        for len in 1..=6usize {
            let mut next = Vec::new();
            for w in &layer {
                for i in 0..n {
                    let c = w.compose(&AffinePerm::s(n, i));
                    if c.length() == len && seen.insert(c.clone()) {
                        assert_eq!(c.inversions().len(), len);
                        next.push(c);
                    }
                }
            }
            layer = next;
        }
    }

    #[test]
    fn bruhat_examples() {
        let y = word(3, 0, &[1, 2, 1]);
        assert!(AffinePerm::identity(3).bruhat_leq(&y));
        assert!(word(3, 0, &[1]).bruhat_leq(&y));
        // pi vs s1: pi-degrees differ
        assert!(!AffinePerm::pi(3).bruhat_leq(&word(3, 0, &[1])));
        // subword property spot check
        assert!(word(3, 0, &[1, 2]).bruhat_leq(&word(3, 0, &[1, 0, 2])));
        assert!(!word(3, 0, &[0]).bruhat_leq(&word(3, 0, &[1, 2, 1])));
    }

    #[test]
    fn lower_interval_matches_bruhat() {
        let y = word(3, 0, &[1, 2, 0, 1]);
        let interval = y.bruhat_lower_interval();
        // interval members are exactly the elements <= y
        for m in &interval {
            assert!(m.bruhat_leq(&y));
        }
        // spot check completeness against a brute layer enumeration
        let mut all = vec![AffinePerm::identity(3)];
        let mut seen: BTreeSet<AffinePerm> = all.iter().cloned().collect();
        for _ in 1..=4usize {
            let mut next = Vec::new();
            for w in &all {
                for i in 0..3 {
                    let c = w.compose(&AffinePerm::s(3, i));
                    if seen.insert(c.clone()) {
                        next.push(c);
                    }
                }
            }
            all.extend(next);
        }
        for w in &all {
            if w.bruhat_leq(&y) {
                assert!(interval.contains(w), "missing {w}");
            }
        }
    }

    #[test]
    fn inversion_bijections_exhaustive_s3() {
        for n in 2..=3usize {
            let g = AffinePerm::gamma(n);
            for p in Perm::all(n) {
                let u = g
                    .inverse()
                    .compose(&AffinePerm::from_perm(&p))
                    .compose(&g);
                let cls = classify_inversions_rho(&u);
                let (alpha, beta) = inversion_bijections(&p);
                let mut av: Vec<(i64, i64)> = alpha.iter().map(|x| x.1).collect();
                let mut bv: Vec<(i64, i64)> = beta.iter().map(|x| x.1).collect();
                av.sort();
                bv.sort();
                let mut v0 = cls.vanishing.clone();
                let mut vi = cls.singular.clone();
                v0.sort();
                vi.sort();
                assert_eq!(av, v0, "alpha image mismatch for {p}");
                assert_eq!(bv, vi, "beta image mismatch for {p}");
            }
        }
    }

    #[test]
    fn example_inv0_infty() {
        // w = s1 s2 at n = 3: Inv0(u) = {(1,9),(2,6)}, Invinf(u) = {(1,12),(2,9)}
        let p = Perm::from_one_line(&[2, 3, 1]);
        let g = AffinePerm::gamma(3);
        let u = g.inverse().compose(&AffinePerm::from_perm(&p)).compose(&g);
        let cls = classify_inversions_rho(&u);
        assert_eq!(cls.vanishing, vec![(1, 9), (2, 6)]);
        assert_eq!(cls.singular, vec![(1, 12), (2, 9)]);
    }

    #[test]
    fn window_parse_roundtrip() {
        let w = parse_window("[5,6,-5]");
        assert_eq!(format!("{w}"), "[5,6,-5]");
        assert_eq!(fmt_reduced_word(&AffinePerm::pi(2)), "pi^1 .");
    }
}
