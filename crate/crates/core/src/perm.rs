//! Finite symmetric group elements in one-line notation.
//!
//! Windows are stored 0-indexed internally; the public constructors follow
//! the 1-indexed conventions of the affine layer.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    /// One-line notation with 1-indexed images, e.g. `[2,3,1]`.
    pub fn from_one_line(images: &[usize]) -> Self {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in images {
            assert!((1..=n).contains(&v) && !seen[v - 1], "not a permutation");
            seen[v - 1] = true;
        }
        Perm(images.iter().map(|v| v - 1).collect())
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.0.iter().map(|v| v + 1).collect()
    }

    /// Simple transposition `s_i` for `1 <= i <= n-1`.
    pub fn s(n: usize, i: usize) -> Self {
        assert!((1..n).contains(&i));
        let mut p: Vec<usize> = (0..n).collect();
        p.swap(i - 1, i);
        Perm(p)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// Image of `i` (1-indexed).
    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1] + 1
    }

    /// `(self o other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.n(), other.n());
        Perm(other.0.iter().map(|&v| self.0[v]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v] = i;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Coxeter length: the number of inversions.
    pub fn length(&self) -> usize {
        let mut inv = 0;
        for i in 0..self.n() {
            for j in (i + 1)..self.n() {
                if self.0[i] > self.0[j] {
                    inv += 1;
                }
            }
        }
        inv
    }

    /// Number of `i` with `sigma(i) > i` (the excedence statistic).
    pub fn excedence(&self) -> usize {
        self.0.iter().enumerate().filter(|(i, &v)| v > *i).count()
    }

    /// A reduced word in the generators `s_1..s_{n-1}` (1-indexed letters).
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut rev = Vec::new();
        'outer: loop {
            for i in 1..w.n() {
                if w.apply(i) > w.apply(i + 1) {
                    w = w.compose(&Perm::s(w.n(), i));
                    rev.push(i);
                    continue 'outer;
                }
            }
            break;
        }
        rev.reverse();
        rev
    }

    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        fn rec(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Perm>) {
            if k == cur.len() {
                out.push(Perm(cur.clone()));
                return;
            }
            for i in k..cur.len() {
                cur.swap(k, i);
                rec(k + 1, cur, out);
                cur.swap(k, i);
            }
        }
        rec(0, &mut cur, &mut out);
        out.sort();
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_line().iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}
