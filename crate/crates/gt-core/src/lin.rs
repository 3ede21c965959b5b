//! Finite formal linear combinations with ordered keys.

use std::collections::btree_map::{self, BTreeMap};

use crate::coeff::{Scalar, Q};

/// A finite map `K → S` that never stores a zero coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct LinComb<K: Ord, S> {
    terms: BTreeMap<K, S>,
}

impl<K: Ord, S> Default for LinComb<K, S> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone, S: Scalar> LinComb<K, S> {
    pub fn new() -> Self {
        Self::default()
    }

    /// The single term `c·k`.
    pub fn term(k: K, c: S) -> Self {
        let mut out = Self::new();
        out.add_term(k, c);
        out
    }

    /// The basis element `k` with coefficient one.
    pub fn basis(k: K) -> Self {
        Self::term(k, S::one())
    }

    pub fn add_term(&mut self, k: K, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &Self) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), -c.clone());
        }
    }

    /// `self + c·other`.
    pub fn add_scaled(&mut self, other: &Self, c: &S) {
        for (k, x) in &other.terms {
            self.add_term(k.clone(), x.clone() * c.clone());
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c.clone())
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map_coeffs(|x| x.clone() * c.clone())
    }

    pub fn scale_q(&self, x: &Q) -> Self {
        self.map_coeffs(|c| c.scale(x))
    }

    pub fn map_coeffs(&self, f: impl Fn(&S) -> S) -> Self {
        let mut out = Self::new();
        for (k, c) in &self.terms {
            out.add_term(k.clone(), f(c));
        }
        out
    }

    /// Linear extension of a key map; merged keys have their coefficients summed.
    pub fn map_keys<K2: Ord + Clone>(&self, f: impl Fn(&K) -> K2) -> LinComb<K2, S> {
        let mut out = LinComb::new();
        for (k, c) in &self.terms {
            out.add_term(f(k), c.clone());
        }
        out
    }

    /// Linear extension of `f : K → LinComb<K2, S>`.
    pub fn flat_map<K2: Ord + Clone>(&self, f: impl Fn(&K) -> LinComb<K2, S>) -> LinComb<K2, S> {
        let mut out = LinComb::new();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    pub fn coeff(&self, k: &K) -> S {
        self.terms.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, S> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, S> {
        self.terms.keys()
    }

    /// Keeps only the terms whose key satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&K) -> bool) -> Self {
        let mut out = Self::new();
        for (k, c) in &self.terms {
            if keep(k) {
                out.terms.insert(k.clone(), c.clone());
            }
        }
        out
    }
}

impl<K: Ord + Clone, S: Scalar> FromIterator<(K, S)> for LinComb<K, S> {
    fn from_iter<I: IntoIterator<Item = (K, S)>>(iter: I) -> Self {
        let mut out = Self::new();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<'a, K: Ord, S> IntoIterator for &'a LinComb<K, S> {
    type Item = (&'a K, &'a S);
    type IntoIter = btree_map::Iter<'a, K, S>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::q;

    #[test]
    fn cancellation_removes_key() {
        let mut x: LinComb<u8, Q> = LinComb::term(3, q(2));
        x.add_term(3, q(-2));
        assert!(x.is_zero());
    }

    #[test]
    fn zero_terms_are_not_stored() {
        let x: LinComb<u8, Q> = [(1, q(0)), (2, q(5))].into_iter().collect();
        assert_eq!(x.len(), 1);
    }
}
