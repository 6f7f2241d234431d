//! Formal symbols, application trees and normalized formal sums.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::partition::Partition;
use crate::sign::{Grading, SignPoly};

pub type Q = Ratio<i128>;

/// A super degree: either a known integer or left symbolic (named after the
/// symbol carrying it).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Degree {
    Known(i64),
    Symbolic,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Generator {
    pub name: String,
    pub degree: Degree,
}

impl Generator {
    pub fn new(name: &str, degree: Degree) -> Self {
        Generator { name: name.into(), degree }
    }

    pub fn symbolic(name: &str) -> Self {
        Self::new(name, Degree::Symbolic)
    }

    pub fn parity(&self) -> SignPoly {
        match self.degree {
            Degree::Known(n) => SignPoly::from_int(n),
            Degree::Symbolic => SignPoly::var(&self.name),
        }
    }

    pub fn grading(&self) -> Grading {
        Grading::element(self.parity())
    }
}

/// Lexicographic generator names: a, b, ..., z, a1, b1, ...
pub fn generator_name(k: usize) -> String {
    let letter = (b'a' + (k % 26) as u8) as char;
    if k < 26 {
        letter.to_string()
    } else {
        format!("{letter}{}", k / 26)
    }
}

/// A formal multilinear map of a given partition type.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MapSymbol {
    pub name: String,
    pub ty: Partition,
    pub degree: Degree,
    /// Identity maps collapse during normalization.
    pub identity: bool,
}

impl MapSymbol {
    pub fn new(name: &str, ty: Partition, degree: Degree) -> Self {
        MapSymbol { name: name.into(), ty, degree, identity: false }
    }

    pub fn symbolic(name: &str, ty: Partition) -> Self {
        Self::new(name, ty, Degree::Symbolic)
    }

    /// The G∞ structure map `m(π)`, whose total degree `d + d̄ + |m|` is odd.
    pub fn structure(ty: Partition) -> Self {
        let sup = (ty.d() + ty.dbar() + 1).rem_euclid(2);
        Self::new("m", ty, Degree::Known(sup))
    }

    /// Identity of type `(1)`, `(1|0)` or `(0|1)`.
    pub fn identity(ty: Partition) -> Self {
        MapSymbol { name: "id".into(), ty, degree: Degree::Known(0), identity: true }
    }

    /// `name(type)`, also the name of the symbolic degree variable.
    pub fn label(&self) -> String {
        format!("{}{}", self.name, self.ty)
    }

    pub fn parity(&self) -> SignPoly {
        match self.degree {
            Degree::Known(n) => SignPoly::from_int(n),
            Degree::Symbolic => SignPoly::var(&self.label()),
        }
    }

    pub fn grading(&self) -> Grading {
        Grading::new(self.ty.d(), self.parity())
    }

    /// `‖x‖ = d + d̄ + |x|` modulo 2.
    pub fn total_degree(&self) -> SignPoly {
        self.parity().add(&SignPoly::from_int(self.ty.d() + self.ty.dbar()))
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Expr {
    Gen(Generator),
    App(Box<App>),
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct App {
    pub head: MapSymbol,
    pub slots: Vec<Vec<Expr>>,
}

impl Expr {
    pub fn gen(g: Generator) -> Self {
        Expr::Gen(g)
    }

    pub fn app(head: MapSymbol, slots: Vec<Vec<Expr>>) -> Self {
        Expr::App(Box::new(App { head, slots }))
    }

    /// `d` and super degree of the whole tree (an element when well formed).
    pub fn grading(&self) -> Grading {
        match self {
            Expr::Gen(g) => g.grading(),
            Expr::App(a) => {
                let mut acc = a.head.grading();
                for c in a.slots.iter().flatten() {
                    acc = acc.plus(&c.grading());
                }
                acc
            }
        }
    }

    /// Every node's arity matches its symbol's type slot for slot.
    pub fn is_well_formed(&self) -> bool {
        match self {
            Expr::Gen(_) => true,
            Expr::App(a) => {
                a.slots.len() == a.head.ty.len()
                    && a.slots.iter().zip(a.head.ty.slots()).all(|(s, &i)| s.len() == i)
                    && a.slots.iter().flatten().all(Expr::is_well_formed)
            }
        }
    }

    /// Symbols in preorder.
    pub fn preorder(&self) -> Vec<Grading> {
        let mut out = Vec::new();
        fn go(e: &Expr, out: &mut Vec<Grading>) {
            match e {
                Expr::Gen(g) => out.push(g.grading()),
                Expr::App(a) => {
                    out.push(a.head.grading());
                    for c in a.slots.iter().flatten() {
                        go(c, out);
                    }
                }
            }
        }
        go(self, &mut out);
        out
    }

    pub fn generators(&self) -> Vec<&Generator> {
        let mut out = Vec::new();
        fn go<'a>(e: &'a Expr, out: &mut Vec<&'a Generator>) {
            match e {
                Expr::Gen(g) => out.push(g),
                Expr::App(a) => a.slots.iter().flatten().for_each(|c| go(c, out)),
            }
        }
        go(self, &mut out);
        out
    }

    pub fn symbols(&self) -> Vec<&MapSymbol> {
        let mut out = Vec::new();
        fn go<'a>(e: &'a Expr, out: &mut Vec<&'a MapSymbol>) {
            if let Expr::App(a) = e {
                out.push(&a.head);
                a.slots.iter().flatten().for_each(|c| go(c, out));
            }
        }
        go(self, &mut out);
        out
    }

    /// Replace `id(...)` nodes by their single argument.
    pub fn collapse_identities(&self) -> Expr {
        match self {
            Expr::Gen(_) => self.clone(),
            Expr::App(a) => {
                let slots: Vec<Vec<Expr>> = a
                    .slots
                    .iter()
                    .map(|s| s.iter().map(Expr::collapse_identities).collect())
                    .collect();
                if a.head.identity {
                    let mut args = slots.iter().flatten();
                    if let (Some(only), None) = (args.next(), args.next()) {
                        return only.clone();
                    }
                }
                Expr::app(a.head.clone(), slots)
            }
        }
    }

    pub fn render(&self, latex: bool) -> String {
        let mut s = String::new();
        self.write(&mut s, latex);
        s
    }

    fn write(&self, out: &mut String, latex: bool) {
        match self {
            Expr::Gen(g) => out.push_str(&g.name),
            Expr::App(a) => {
                out.push_str(&a.head.label());
                out.push_str(if latex { "\\{" } else { "{" });
                for (k, slot) in a.slots.iter().enumerate() {
                    if k > 0 {
                        out.push_str(if latex { " \\mid " } else { "|" });
                    }
                    for (j, c) in slot.iter().enumerate() {
                        if j > 0 {
                            out.push(',');
                        }
                        c.write(out, latex);
                    }
                }
                out.push_str(if latex { "\\}" } else { "}" });
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

/// One signed term: `coeff · (-1)^sign · expr`, with `sign` free of a constant.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Term {
    pub coeff: Q,
    pub sign: SignPoly,
    pub expr: Expr,
}

/// A normalized finite sum of terms.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FormalSum {
    terms: BTreeMap<(Expr, SignPoly), Q>,
}

impl FormalSum {
    pub fn zero() -> Self {
        FormalSum::default()
    }

    pub fn single(expr: Expr) -> Self {
        let mut s = Self::zero();
        s.add_term(Q::one(), &SignPoly::zero(), expr);
        s
    }

    pub fn from_terms<I: IntoIterator<Item = Term>>(terms: I) -> Self {
        let mut s = Self::zero();
        for t in terms {
            s.add_term(t.coeff, &t.sign, t.expr);
        }
        s
    }

    pub fn add_term(&mut self, coeff: Q, sign: &SignPoly, expr: Expr) {
        if coeff.is_zero() {
            return;
        }
        let coeff = if sign.constant_part() { -coeff } else { coeff };
        let key = (expr, sign.without_constant());
        let e = self.terms.entry(key.clone()).or_insert_with(Q::zero);
        *e += coeff;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = Term> + '_ {
        self.terms.iter().map(|((e, s), c)| Term { coeff: *c, sign: s.clone(), expr: e.clone() })
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Expr, &SignPoly, &Q)> {
        self.terms.iter().map(|((e, s), c)| (e, s, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &FormalSum) -> FormalSum {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &FormalSum) {
        for ((e, s), c) in &other.terms {
            self.add_term(*c, s, e.clone());
        }
    }

    pub fn sub(&self, other: &FormalSum) -> FormalSum {
        self.add(&other.scale(-Q::one()))
    }

    pub fn scale(&self, q: Q) -> FormalSum {
        self.scale_signed(q, &SignPoly::zero())
    }

    /// Multiply every term by `q · (-1)^sign`.
    pub fn scale_signed(&self, q: Q, sign: &SignPoly) -> FormalSum {
        let mut out = FormalSum::zero();
        for ((e, s), c) in &self.terms {
            out.add_term(*c * q, &s.add(sign), e.clone());
        }
        out
    }

    /// Collapse identity nodes and recombine.
    pub fn normalize(&self) -> FormalSum {
        let mut out = FormalSum::zero();
        for ((e, s), c) in &self.terms {
            out.add_term(*c, s, e.collapse_identities());
        }
        out
    }

    /// Same trees with the same coefficient magnitudes, signs ignored.
    pub fn equal_up_to_sign(&self, other: &FormalSum) -> bool {
        self.magnitudes() == other.magnitudes()
    }

    fn magnitudes(&self) -> BTreeMap<&Expr, Vec<Q>> {
        let mut m: BTreeMap<&Expr, Vec<Q>> = BTreeMap::new();
        for ((e, _), c) in &self.terms {
            m.entry(e).or_default().push(c.abs());
        }
        for v in m.values_mut() {
            v.sort();
        }
        m
    }

    /// Substitute parities for degree variables.
    pub fn specialize<F: Fn(&str) -> Option<bool>>(&self, f: &F) -> FormalSum {
        let mut out = FormalSum::zero();
        for ((e, s), c) in &self.terms {
            out.add_term(*c, &s.substitute(f), e.clone());
        }
        out
    }

    pub fn render(&self, latex: bool) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, ((e, s), c)) in self.terms.iter().enumerate() {
            if k > 0 {
                out.push(' ');
            }
            out.push_str(if c.is_negative() { "- " } else if k > 0 { "+ " } else { "" });
            let m = c.abs();
            if !m.is_one() {
                if latex && !m.is_integer() {
                    out.push_str(&format!("\\frac{{{}}}{{{}}} ", m.numer(), m.denom()));
                } else {
                    out.push_str(&format!("{m} "));
                }
            }
            if !s.is_zero() {
                out.push_str(&format!("(-1)^{{{s}}} "));
            }
            out.push_str(&e.render(latex));
        }
        out
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}
