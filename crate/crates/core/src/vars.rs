//! Variable spaces: an ordered list of variable names together with
//! specialization rules mapping named symbols to Laurent monomials in the
//! listed variables.
//!
//! Rules only ever target actual variables of the space, so the rule set is
//! acyclic by construction and applying it is idempotent.

use crate::scalar::{self, Scalar};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct VarSpace {
    vars: Vec<String>,
    /// Index of the designated scalar (base parameter) variable; rational
    /// functions in module computations keep their denominators univariate
    /// in this variable.
    scalar_var: usize,
    /// name -> c * prod vars^exps
    rules: BTreeMap<String, (Scalar, Vec<i64>)>,
}

pub type Mono = (Scalar, Vec<i64>);

impl VarSpace {
    pub fn new(vars: Vec<&str>, scalar_var: usize) -> Arc<Self> {
        assert!(scalar_var < vars.len());
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        Arc::new(VarSpace {
            vars: names,
            scalar_var,
            rules: BTreeMap::new(),
        })
    }

    pub fn with_rules(vars: Vec<&str>, scalar_var: usize, rules: Vec<(&str, Scalar, Vec<i64>)>) -> Arc<Self> {
        let mut vs = VarSpace {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            scalar_var,
            rules: BTreeMap::new(),
        };
        for (name, c, exps) in rules {
            assert_eq!(exps.len(), vs.vars.len());
            assert!(
                !vs.vars.iter().any(|v| v == name),
                "rule target {name} shadows a variable"
            );
            vs.rules.insert(name.to_string(), (c, exps));
        }
        Arc::new(vs)
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn scalar_var(&self) -> usize {
        self.scalar_var
    }

    pub fn name(&self, i: usize) -> &str {
        &self.vars[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Resolve a symbol to a monomial: either a listed variable or a
    /// specialization rule.
    pub fn symbol(&self, name: &str) -> Mono {
        if let Some(i) = self.index_of(name) {
            let mut e = vec![0i64; self.arity()];
            e[i] = 1;
            return (scalar::int(1), e);
        }
        if let Some((c, e)) = self.rules.get(name) {
            return (c.clone(), e.clone());
        }
        panic!("unknown symbol {name} in variable space {:?}", self.vars);
    }

    /// Resolve a symbol raised to an integer power.
    pub fn symbol_pow(&self, name: &str, k: i64) -> Mono {
        let (c, e) = self.symbol(name);
        (scalar::pow(&c, k), e.iter().map(|x| x * k).collect())
    }

    pub fn has_symbol(&self, name: &str) -> bool {
        self.index_of(name).is_some() || self.rules.contains_key(name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn symbol_resolution() {
        let vs = VarSpace::with_rules(vec!["t", "Y1"], 0, vec![("q", int(1), vec![-2, 0])]);
        assert_eq!(vs.symbol("t"), (int(1), vec![1, 0]));
        assert_eq!(vs.symbol("q"), (int(1), vec![-2, 0]));
        assert_eq!(vs.symbol_pow("q", -3), (int(1), vec![6, 0]));
    }
}
