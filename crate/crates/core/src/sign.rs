//! Koszul signs with symbolic degrees.
//!
//! A sign is `(-1)^P` where `P` is a polynomial over F2 in degree variables.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;

/// A monomial is a sorted, duplicate-free product of variables; empty means 1.
pub type Monomial = Vec<String>;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct SignPoly {
    terms: BTreeSet<Monomial>,
}

impl SignPoly {
    pub fn zero() -> Self {
        SignPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(true)
    }

    pub fn constant(odd: bool) -> Self {
        let mut p = Self::zero();
        if odd {
            p.terms.insert(Vec::new());
        }
        p
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(n.rem_euclid(2) == 1)
    }

    pub fn var(name: &str) -> Self {
        let mut p = Self::zero();
        p.terms.insert(alloc::vec![String::from(name)]);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter()
    }

    pub fn from_monomials<I: IntoIterator<Item = Monomial>>(ms: I) -> Self {
        let mut p = Self::zero();
        for mut m in ms {
            m.sort();
            m.dedup();
            p.toggle(m);
        }
        p
    }

    fn toggle(&mut self, m: Monomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for m in &other.terms {
            out.toggle(m.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for a in &self.terms {
            for b in &other.terms {
                let mut m: Vec<String> = a.iter().chain(b.iter()).cloned().collect();
                m.sort();
                m.dedup();
                out.toggle(m);
            }
        }
        out
    }

    /// The constant term.
    pub fn constant_part(&self) -> bool {
        self.terms.contains(&Vec::new())
    }

    pub fn without_constant(&self) -> Self {
        let mut out = self.clone();
        out.terms.remove(&Vec::new());
        out
    }

    pub fn variables(&self) -> BTreeSet<String> {
        self.terms.iter().flatten().cloned().collect()
    }

    /// Substitute parities for variables; unknown variables stay symbolic.
    pub fn substitute<F: Fn(&str) -> Option<bool>>(&self, f: &F) -> Self {
        let mut out = Self::zero();
        'mono: for m in &self.terms {
            let mut rest = Vec::new();
            for v in m {
                match f(v) {
                    Some(true) => {}
                    Some(false) => continue 'mono,
                    None => rest.push(v.clone()),
                }
            }
            out.toggle(rest);
        }
        out
    }

    /// Evaluate to a parity; fails on the first unbound variable.
    pub fn evaluate<F: Fn(&str) -> Option<bool>>(&self, f: &F) -> Result<bool, Error> {
        let mut acc = false;
        for m in &self.terms {
            let mut val = true;
            for v in m {
                val &= f(v).ok_or_else(|| Error::Unbound(v.clone()))?;
            }
            acc ^= val;
        }
        Ok(acc)
    }
}

impl fmt::Display for SignPoly {
    /// `|a||b|+|a|+1`; variables print as `|name|`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, m) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str("+")?;
            }
            if m.is_empty() {
                f.write_str("1")?;
            }
            for v in m {
                write!(f, "|{v}|")?;
            }
        }
        Ok(())
    }
}

/// The two gradings relevant to sign bookkeeping: `d` (always concrete) and
/// the super degree (possibly symbolic, as an affine F2 form).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Grading {
    pub d: i64,
    pub sup: SignPoly,
}

impl Grading {
    pub fn new(d: i64, sup: SignPoly) -> Self {
        Grading { d, sup }
    }

    pub fn element(sup: SignPoly) -> Self {
        Grading { d: -1, sup }
    }

    pub fn plus(&self, other: &Grading) -> Grading {
        Grading { d: self.d + other.d, sup: self.sup.add(&other.sup) }
    }

    /// `d + |u|` modulo 2.
    pub fn total(&self) -> SignPoly {
        self.sup.add(&SignPoly::from_int(self.d))
    }
}

/// How the sign of an interchange of two symbols is computed.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum SignRule {
    /// `(-1)^{d(u)d(v) + |u||v|}`.
    #[default]
    Bigraded,
    /// `(-1)^{(d(u)+|u|)(d(v)+|v|)}`, the single grading used together with
    /// the tilde modification.
    Total,
}

impl SignRule {
    pub fn swap(&self, u: &Grading, v: &Grading) -> SignPoly {
        match self {
            SignRule::Bigraded => SignPoly::from_int(u.d * v.d).add(&u.sup.mul(&v.sup)),
            SignRule::Total => u.total().mul(&v.total()),
        }
    }
}

/// Check that `order` is a permutation of `0..n`.
pub fn check_permutation(order: &[usize], n: usize) -> Result<(), Error> {
    if order.len() != n {
        return Err(Error::NotAPermutation);
    }
    let mut seen = alloc::vec![false; n];
    for &i in order {
        if i >= n || seen[i] {
            return Err(Error::NotAPermutation);
        }
        seen[i] = true;
    }
    Ok(())
}

/// Exponent of the Koszul sign for moving `items` (in their original order)
/// into the order where position `k` holds `items[order[k]]`.
pub fn koszul_exponent(rule: SignRule, items: &[Grading], order: &[usize]) -> Result<SignPoly, Error> {
    check_permutation(order, items.len())?;
    let mut acc = SignPoly::zero();
    for p in 0..order.len() {
        for q in p + 1..order.len() {
            if order[p] > order[q] {
                acc = acc.add(&rule.swap(&items[order[p]], &items[order[q]]));
            }
        }
    }
    Ok(acc)
}

/// Concrete Koszul sign `±1` for integer degrees `(d, |u|)`.
pub fn koszul_sign(rule: SignRule, items: &[(i64, i64)], order: &[usize]) -> Result<i8, Error> {
    check_permutation(order, items.len())?;
    let odd = |n: i64| n.rem_euclid(2) == 1;
    let mut neg = false;
    for p in 0..order.len() {
        for q in p + 1..order.len() {
            if order[p] > order[q] {
                let (du, su) = items[order[p]];
                let (dv, sv) = items[order[q]];
                neg ^= match rule {
                    SignRule::Bigraded => odd(du * dv) ^ odd(su * sv),
                    SignRule::Total => odd(du + su) && odd(dv + sv),
                };
            }
        }
    }
    Ok(if neg { -1 } else { 1 })
}
