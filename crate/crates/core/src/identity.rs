//! Components of the master equation `{m̃}{m̃} = 0`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::composition::{enumerate_subdivisions, formal_arguments, Operator};
use crate::error::Error;
use crate::partition::{regular_up_to, shuffles, star_raw, Partition};
use crate::sign::{koszul_exponent, Grading, SignRule};
use crate::terms::{Expr, FormalSum, MapSymbol, Q};

/// Sign convention used for every generated identity.
pub const RULE: SignRule = SignRule::Total;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FactorKind {
    /// Both factors regular (Type I pictures).
    Regular,
    /// Inner factor `(1|0)` or `(0|1)` (Type II pictures).
    UnitSplit,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Factorization {
    pub outer: Partition,
    pub inner: Partition,
    /// Multiplicity of the target in `star_raw(outer, inner)`.
    pub multiplicity: i64,
    /// Number of subdivisions (bubble pictures) realizing the target.
    pub subdivisions: usize,
    pub kind: FactorKind,
}

/// Which structure maps are allowed to be nonzero.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum SymbolFilter {
    #[default]
    All,
    /// Only `m(i)`: the A∞ part.
    Singletons,
    /// Only `m(1|...|1)`, plus the unit-split contributions.
    Ones,
}

impl SymbolFilter {
    pub fn admits(&self, p: &Partition) -> bool {
        match self {
            SymbolFilter::All => true,
            SymbolFilter::Singletons => p.len() == 1,
            SymbolFilter::Ones => p.slots().iter().all(|&i| i == 1),
        }
    }
}

fn candidates(max_d: i64) -> Vec<Partition> {
    let mut out = regular_up_to(max_d.max(0) as usize);
    out.push(Partition::from_slice(&[1, 0]));
    out.push(Partition::from_slice(&[0, 1]));
    out
}

/// Every `(π, π′)` with `τ̃` in `π ∗ π′`, both factors regular or `(1|0)`, `(0|1)`.
pub fn factorizations(target: &Partition) -> Result<Vec<Factorization>, Error> {
    if !target.is_regular() {
        return Err(Error::NotRegular(target.clone()));
    }
    let (d, dbar) = (target.d(), target.dbar());
    let cands = candidates(d);
    let mut out = Vec::new();
    for p in &cands {
        for q in &cands {
            if p.d() + q.d() != d || p.dbar() + q.dbar() != dbar {
                continue;
            }
            let multiplicity = star_raw(p, q).coeff(target);
            if multiplicity == 0 {
                continue;
            }
            let kind = if p.is_regular() && q.is_regular() { FactorKind::Regular } else { FactorKind::UnitSplit };
            let subdivisions = enumerate_subdivisions(target, p, core::slice::from_ref(q)).len();
            out.push(Factorization { outer: p.clone(), inner: q.clone(), multiplicity, subdivisions, kind });
        }
    }
    Ok(out)
}

fn m_tilde(p: &Partition) -> Operator {
    let sym = if p.is_unit_split() { MapSymbol::identity(p.clone()) } else { MapSymbol::structure(p.clone()) };
    Operator::tilde(Operator::symbol(sym))
}

/// The `τ̃` component of `{m̃(π)}{m̃(π′)}` on formal generators.
pub fn factor_terms(target: &Partition, f: &Factorization) -> Result<FormalSum, Error> {
    let op = Operator::compose(m_tilde(&f.outer), vec![m_tilde(&f.inner)], target.clone());
    Ok(op.apply(RULE, &formal_arguments(target))?.normalize())
}

pub fn type_i_terms(target: &Partition, filter: SymbolFilter) -> Result<FormalSum, Error> {
    let mut out = FormalSum::zero();
    for f in factorizations(target)? {
        if f.kind == FactorKind::Regular && filter.admits(&f.outer) && filter.admits(&f.inner) {
            out.add_assign(&factor_terms(target, &f)?);
        }
    }
    Ok(out)
}

/// One merge term `c · {m(merged)}{... | {a^(α)}{a^(α+1)} | ...}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TypeIIEntry {
    /// Index of the left slot of the merged pair.
    pub slot: usize,
    pub merged: Partition,
    pub coefficient: i64,
}

pub fn type_ii_entries(target: &Partition, include_coefficients: bool) -> Vec<TypeIIEntry> {
    let k = target.slots();
    (0..k.len().saturating_sub(1))
        .map(|alpha| TypeIIEntry {
            slot: alpha,
            merged: target.merge_adjacent(alpha),
            coefficient: if include_coefficients { (k[alpha] + k[alpha + 1]) as i64 } else { 1 },
        })
        .collect()
}

/// Type II terms from the closed formula: each merged slot receives every
/// order-preserving shuffle of the two original slots, with Koszul signs.
pub fn type_ii_terms(target: &Partition, include_coefficients: bool) -> Result<FormalSum, Error> {
    let args = formal_arguments(target);
    let flat: Vec<&Expr> = args.iter().flatten().collect();
    let items: Vec<Grading> = flat.iter().map(|a| a.grading()).collect();
    let offsets = target.offsets();
    let mut out = FormalSum::zero();
    for e in type_ii_entries(target, include_coefficients) {
        let alpha = e.slot;
        let left: Vec<usize> = (offsets[alpha]..offsets[alpha] + target.slots()[alpha]).collect();
        let right: Vec<usize> = (offsets[alpha + 1]..offsets[alpha + 1] + target.slots()[alpha + 1]).collect();
        for sh in shuffles(&[left, right]) {
            let mut order = Vec::new();
            let mut slots: Vec<Vec<Expr>> = Vec::new();
            for (b, slot) in args.iter().enumerate() {
                if b == alpha {
                    slots.push(sh.iter().map(|&i| flat[i].clone()).collect());
                    order.extend(sh.iter().copied());
                } else if b != alpha + 1 {
                    let base = offsets[b];
                    slots.push(slot.clone());
                    order.extend(base..base + slot.len());
                }
            }
            let sign = koszul_exponent(RULE, &items, &order)?;
            let res = m_tilde(&e.merged).apply(RULE, &slots)?;
            out.add_assign(&res.scale_signed(Q::from_integer(e.coefficient as i128), &sign));
        }
    }
    Ok(out)
}

/// Type II terms obtained by composing with the identities `m(1|0)`, `m(0|1)`.
pub fn type_ii_by_composition(target: &Partition) -> Result<FormalSum, Error> {
    let mut out = FormalSum::zero();
    for f in factorizations(target)? {
        if f.kind == FactorKind::UnitSplit {
            out.add_assign(&factor_terms(target, &f)?);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct IdentityOptions {
    pub include_type_ii_coefficients: bool,
    pub filter: SymbolFilter,
}

impl Default for IdentityOptions {
    fn default() -> Self {
        IdentityOptions { include_type_ii_coefficients: true, filter: SymbolFilter::All }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IdentityReport {
    pub target: Partition,
    pub factorizations: Vec<Factorization>,
    pub type_i: FormalSum,
    pub type_ii: FormalSum,
    pub type_ii_entries: Vec<TypeIIEntry>,
    pub options: IdentityOptions,
}

impl IdentityReport {
    pub fn total(&self) -> FormalSum {
        self.type_i.add(&self.type_ii)
    }

    pub fn render(&self, latex: bool) -> String {
        let mut s = String::new();
        let n = self.target.arity();
        let args = formal_arguments(&self.target);
        let bar = if latex { " \\mid " } else { "|" };
        let brace = |x: &str| if latex { format!("\\{{{x}\\}}") } else { format!("{{{x}}}") };
        s.push_str(&format!("component {} ({} arguments)\n", self.target, n));
        s.push_str("factorizations:\n");
        for f in &self.factorizations {
            let kind = match f.kind {
                FactorKind::Regular => "I",
                FactorKind::UnitSplit => "II",
            };
            s.push_str(&format!(
                "  {} * {}  type {kind}  subdivisions {}\n",
                f.outer, f.inner, f.subdivisions
            ));
        }
        s.push_str("type I:\n  ");
        s.push_str(&self.type_i.render(latex));
        s.push('\n');
        s.push_str("type II:\n");
        for e in &self.type_ii_entries {
            let slots: Vec<String> = args
                .iter()
                .enumerate()
                .filter(|(b, _)| *b != e.slot + 1)
                .map(|(b, slot)| {
                    let names = |sl: &Vec<Expr>| sl.iter().map(|a| a.render(latex)).collect::<Vec<_>>().join(",");
                    if b == e.slot {
                        format!("{}{}", brace(&names(slot)), brace(&names(&args[b + 1])))
                    } else {
                        names(slot)
                    }
                })
                .collect();
            s.push_str(&format!("  {} {}{}\n", e.coefficient, brace(&format!("m{}", e.merged)), brace(&slots.join(bar))));
        }
        s.push_str("  = ");
        s.push_str(&self.type_ii.render(latex));
        s.push('\n');
        s
    }
}

pub fn master_identity(target: &Partition, options: IdentityOptions) -> Result<IdentityReport, Error> {
    let factorizations: Vec<Factorization> = factorizations(target)?
        .into_iter()
        .filter(|f| {
            f.kind == FactorKind::UnitSplit || (options.filter.admits(&f.outer) && options.filter.admits(&f.inner))
        })
        .filter(|f| f.kind == FactorKind::Regular || options.filter != SymbolFilter::Singletons)
        .collect();
    let type_i = type_i_terms(target, options.filter)?;
    let (type_ii, type_ii_entries) = if options.filter == SymbolFilter::Singletons {
        (FormalSum::zero(), Vec::new())
    } else {
        (
            type_ii_terms(target, options.include_type_ii_coefficients)?,
            type_ii_entries(target, options.include_type_ii_coefficients),
        )
    };
    Ok(IdentityReport { target: target.clone(), factorizations, type_i, type_ii, type_ii_entries, options })
}

/// Symbols `m(π)` needed to realize the identity for `target`.
pub fn required_symbols(target: &Partition) -> Result<Vec<Partition>, Error> {
    let mut out: Vec<Partition> = Vec::new();
    for f in factorizations(target)? {
        for p in [f.outer, f.inner] {
            if !p.is_unit_split() && !out.contains(&p) {
                out.push(p);
            }
        }
    }
    for e in type_ii_entries(target, true) {
        if !out.contains(&e.merged) {
            out.push(e.merged);
        }
    }
    out.sort();
    Ok(out)
}
