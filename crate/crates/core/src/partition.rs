//! Ordered partitions and the `∗` product.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, ParseError};

/// An ordered tuple of slot sizes `(i1|...|ir)` with `r >= 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Partition {
    slots: Vec<usize>,
}

impl Partition {
    pub fn new(slots: Vec<usize>) -> Result<Self, Error> {
        if slots.is_empty() {
            return Err(Error::EmptyPartition);
        }
        Ok(Partition { slots })
    }

    pub fn from_slice(slots: &[usize]) -> Self {
        Partition::new(slots.to_vec()).expect("non-empty slot list")
    }

    pub fn singleton(i: usize) -> Self {
        Partition { slots: vec![i] }
    }

    /// `(1|...|1)` with `t` slots.
    pub fn ones(t: usize) -> Self {
        Partition::from_slice(&vec![1; t])
    }

    pub fn slots(&self) -> &[usize] {
        &self.slots
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Total number of arguments.
    pub fn arity(&self) -> usize {
        self.slots.iter().sum()
    }

    pub fn d(&self) -> i64 {
        self.arity() as i64 - 1
    }

    pub fn dbar(&self) -> i64 {
        self.slots.len() as i64 - 1
    }

    pub fn is_regular(&self) -> bool {
        self.slots.iter().all(|&i| i >= 1)
    }

    /// `(1|0)` or `(0|1)`: the only zero-slot types carrying a structure map.
    pub fn is_unit_split(&self) -> bool {
        self.slots == [1, 0] || self.slots == [0, 1]
    }

    /// Replace slot `l` by the slots of `tau`.
    pub fn substitute(&self, l: usize, tau: &Partition) -> Partition {
        let mut out = Vec::with_capacity(self.len() + tau.len() - 1);
        out.extend_from_slice(&self.slots[..l]);
        out.extend_from_slice(&tau.slots);
        out.extend_from_slice(&self.slots[l + 1..]);
        Partition { slots: out }
    }

    /// Merge slots `alpha` and `alpha + 1`.
    pub fn merge_adjacent(&self, alpha: usize) -> Partition {
        let mut out = self.slots.clone();
        let right = out.remove(alpha + 1);
        out[alpha] += right;
        Partition { slots: out }
    }

    /// Starting index in the flattened argument list of each slot.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.slots
            .iter()
            .map(|&i| {
                let o = acc;
                acc += i;
                o
            })
            .collect()
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.d()
            .cmp(&other.d())
            .then(self.dbar().cmp(&other.dbar()))
            .then_with(|| self.slots.cmp(&other.slots))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, i) in self.slots.iter().enumerate() {
            if k > 0 {
                f.write_str("|")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str(")")
    }
}

/// Parse a partition starting at byte `pos` of `s`, skipping whitespace.
/// Returns the partition and the byte position after the closing paren.
pub(crate) fn parse_partition_at(s: &str, mut pos: usize) -> Result<(Partition, usize), ParseError> {
    let b = s.as_bytes();
    let skip = |p: &mut usize| {
        while *p < b.len() && b[*p].is_ascii_whitespace() {
            *p += 1;
        }
    };
    skip(&mut pos);
    if pos >= b.len() || b[pos] != b'(' {
        return Err(ParseError::new(pos, "expected '('"));
    }
    pos += 1;
    let mut slots = Vec::new();
    loop {
        skip(&mut pos);
        let start = pos;
        while pos < b.len() && b[pos].is_ascii_digit() {
            pos += 1;
        }
        if start == pos {
            return Err(ParseError::new(pos, "expected a slot size"));
        }
        let n: usize = s[start..pos]
            .parse()
            .map_err(|_| ParseError::new(start, "slot size out of range"))?;
        slots.push(n);
        skip(&mut pos);
        match b.get(pos) {
            Some(b'|') => pos += 1,
            Some(b')') => {
                pos += 1;
                break;
            }
            _ => return Err(ParseError::new(pos, "expected '|' or ')'")),
        }
    }
    Ok((Partition { slots }, pos))
}

impl FromStr for Partition {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (p, mut pos) = parse_partition_at(s, 0)?;
        while pos < s.len() && s.as_bytes()[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if pos != s.len() {
            return Err(ParseError::new(pos, "trailing input"));
        }
        Ok(p)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VectorForm {
    /// Support-reduced: every coefficient is 1.
    Reduced,
    /// Arbitrary integer coefficients (multiplicities, defects, brackets).
    Raw,
}

/// A finite integer combination of partitions.
#[derive(Clone, Debug)]
pub struct PartitionVector {
    entries: BTreeMap<Partition, i64>,
    form: VectorForm,
}

impl PartialEq for PartitionVector {
    /// Equality compares coefficients only; the form tag is bookkeeping.
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

impl Eq for PartitionVector {}

impl PartitionVector {
    pub fn zero() -> Self {
        PartitionVector { entries: BTreeMap::new(), form: VectorForm::Reduced }
    }

    pub fn raw() -> Self {
        PartitionVector { entries: BTreeMap::new(), form: VectorForm::Raw }
    }

    pub fn basis(p: Partition) -> Self {
        let mut v = Self::zero();
        v.entries.insert(p, 1);
        v
    }

    pub fn from_terms<I: IntoIterator<Item = (Partition, i64)>>(terms: I) -> Self {
        let mut v = Self::raw();
        for (p, c) in terms {
            v.add_term(p, c);
        }
        v
    }

    pub fn form(&self) -> VectorForm {
        self.form
    }

    pub fn add_term(&mut self, p: Partition, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.entries.entry(p.clone()).or_insert(0);
        *e += c;
        if *e != 1 {
            self.form = VectorForm::Raw;
        }
        if *e == 0 {
            self.entries.remove(&p);
        }
    }

    pub fn coeff(&self, p: &Partition) -> i64 {
        self.entries.get(p).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, i64)> {
        self.entries.iter().map(|(p, &c)| (p, c))
    }

    pub fn support(&self) -> BTreeSet<Partition> {
        self.entries.keys().cloned().collect()
    }

    /// Collapse every nonzero coefficient to 1.
    pub fn reduce(&self) -> Self {
        PartitionVector {
            entries: self.entries.keys().map(|p| (p.clone(), 1)).collect(),
            form: VectorForm::Reduced,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in other.iter() {
            out.add_term(p.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = Self::raw();
        for (p, c) in self.iter() {
            out.add_term(p.clone(), c * k);
        }
        out
    }

    /// Bilinear extension of the reduced product.
    pub fn star(&self, other: &Self) -> Self {
        let mut out = Self::raw();
        for (p, a) in self.iter() {
            for (q, b) in other.iter() {
                for (r, _) in star(p, q).iter() {
                    out.add_term(r.clone(), a * b);
                }
            }
        }
        out
    }
}

impl fmt::Display for PartitionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("0");
        }
        for (k, (p, c)) in self.iter().enumerate() {
            let sign = if c < 0 { "-" } else if k > 0 { "+" } else { "" };
            f.write_str(sign)?;
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for PartitionVector {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let b = s.as_bytes();
        let mut pos = 0;
        let mut out = PartitionVector::raw();
        let skip = |p: &mut usize| {
            while *p < b.len() && b[*p].is_ascii_whitespace() {
                *p += 1;
            }
        };
        skip(&mut pos);
        if s[pos..].trim() == "0" {
            return Ok(PartitionVector::zero());
        }
        let mut first = true;
        while pos < b.len() {
            let mut sign = 1;
            match b[pos] {
                b'+' => pos += 1,
                b'-' => {
                    sign = -1;
                    pos += 1
                }
                _ if first => {}
                _ => return Err(ParseError::new(pos, "expected '+' or '-'")),
            }
            skip(&mut pos);
            let start = pos;
            while pos < b.len() && b[pos].is_ascii_digit() {
                pos += 1;
            }
            let c: i64 = if start == pos {
                1
            } else {
                s[start..pos]
                    .parse()
                    .map_err(|_| ParseError::new(start, "coefficient out of range"))?
            };
            let (p, next) = parse_partition_at(s, pos)?;
            pos = next;
            out.add_term(p, sign * c);
            skip(&mut pos);
            first = false;
        }
        if out.entries.values().all(|&c| c == 1) {
            out.form = VectorForm::Reduced;
        }
        Ok(out)
    }
}

/// All weak compositions of `total` into `parts` nonnegative summands, in lexicographic order.
pub fn weak_compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(total: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            cur.push(total);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for u in 0..=total {
            cur.push(u);
            go(total - u, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(total, parts, &mut Vec::new(), &mut out);
    out
}

/// `(i) ∗ π′` with multiplicities: one entry per composition `u1+...+us = i-1`.
pub fn star_simple_raw(i: usize, q: &Partition) -> PartitionVector {
    let mut out = PartitionVector::raw();
    if i == 0 {
        return out;
    }
    for u in weak_compositions(i - 1, q.len()) {
        let slots = q.slots.iter().zip(&u).map(|(j, u)| j + u).collect();
        out.add_term(Partition { slots }, 1);
    }
    out
}

pub fn star_simple(i: usize, q: &Partition) -> PartitionVector {
    star_simple_raw(i, q).reduce()
}

/// `π ∗ π′` before erasing duplicates.
pub fn star_raw(p: &Partition, q: &Partition) -> PartitionVector {
    let mut out = PartitionVector::raw();
    for (l, &i) in p.slots.iter().enumerate() {
        for (tau, c) in star_simple_raw(i, q).iter() {
            out.add_term(p.substitute(l, tau), c);
        }
    }
    out
}

pub fn star(p: &Partition, q: &Partition) -> PartitionVector {
    star_raw(p, q).reduce()
}

/// Basic `N(1|k)` on a singleton head: concatenate the inner partitions,
/// overlapping last and first slots, then distribute `i - k`.
pub fn n_singleton(i: usize, inners: &[&Partition]) -> PartitionVector {
    let k = inners.len();
    if k == 0 {
        return PartitionVector::basis(Partition::singleton(i));
    }
    if i < k {
        return PartitionVector::zero();
    }
    let mut base: Vec<usize> = Vec::new();
    for (l, q) in inners.iter().enumerate() {
        let s = q.slots();
        if l == 0 {
            base.extend_from_slice(s);
        } else {
            *base.last_mut().unwrap() += s[0];
            base.extend_from_slice(&s[1..]);
        }
    }
    let mut out = PartitionVector::raw();
    for u in weak_compositions(i - k, base.len()) {
        let slots = base.iter().zip(&u).map(|(j, u)| j + u).collect();
        out.add_term(Partition { slots }, 1);
    }
    out.reduce()
}

/// `N(1|k)` with a general head: inner partitions all land in one head slot.
pub fn n_basic(head: &Partition, inners: &[&Partition]) -> PartitionVector {
    let mut out = PartitionVector::raw();
    for (l, &i) in head.slots.iter().enumerate() {
        for (tau, _) in n_singleton(i, inners).iter() {
            out.add_term(head.substitute(l, tau), 1);
        }
    }
    out.reduce()
}

/// Higher product `N(shape)` with `shape = (1|λ1|...|λt)`.
///
/// Every symbol in group `g` is attached either to the head or to a symbol
/// of an earlier group; siblings are interleaved in all ways that keep the
/// order inside each group. Types are then computed bottom-up with `n_basic`.
pub fn higher_product(
    shape: &Partition,
    head: &Partition,
    groups: &[Vec<Partition>],
) -> Result<PartitionVector, Error> {
    if shape.slots.first() != Some(&1) {
        return Err(Error::BadShape(shape.clone()));
    }
    let lambdas = &shape.slots[1..];
    if lambdas.len() != groups.len() || lambdas.iter().zip(groups).any(|(l, g)| *l != g.len()) {
        return Err(Error::ShapeMismatch);
    }
    if !head.is_regular() {
        return Err(Error::NotRegular(head.clone()));
    }
    for p in groups.iter().flatten() {
        if !p.is_regular() {
            return Err(Error::NotRegular(p.clone()));
        }
    }
    // Node 0 is the head; nodes 1.. are the group symbols in order.
    let mut nodes: Vec<(usize, &Partition)> = vec![(0, head)];
    for (g, grp) in groups.iter().enumerate() {
        for p in grp {
            nodes.push((g + 1, p));
        }
    }
    let n = nodes.len();
    let mut out = PartitionVector::raw();
    let mut parent = vec![0usize; n];
    forest_types(&nodes, 1, &mut parent, &mut out);
    Ok(out.reduce())
}

fn forest_types(
    nodes: &[(usize, &Partition)],
    next: usize,
    parent: &mut Vec<usize>,
    out: &mut PartitionVector,
) {
    if next == nodes.len() {
        for (t, _) in subtree_types(nodes, parent, 0).iter() {
            out.add_term(t.clone(), 1);
        }
        return;
    }
    let group = nodes[next].0;
    for cand in 0..next {
        if nodes[cand].0 < group {
            parent[next] = cand;
            forest_types(nodes, next + 1, parent, out);
        }
    }
}

fn subtree_types(nodes: &[(usize, &Partition)], parent: &[usize], v: usize) -> PartitionVector {
    let children: Vec<usize> = (1..nodes.len()).filter(|&c| parent[c] == v).collect();
    if children.is_empty() {
        return PartitionVector::basis(nodes[v].1.clone());
    }
    // Children split into runs by group; each run keeps its order.
    let mut runs: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &c in &children {
        runs.entry(nodes[c].0).or_default().push(c);
    }
    let runs: Vec<Vec<usize>> = runs.into_values().collect();
    let child_types: BTreeMap<usize, PartitionVector> =
        children.iter().map(|&c| (c, subtree_types(nodes, parent, c))).collect();
    let mut out = PartitionVector::raw();
    for order in shuffles(&runs) {
        let mut combos: Vec<Vec<Partition>> = vec![Vec::new()];
        for c in &order {
            let mut next = Vec::new();
            for prefix in &combos {
                for (t, _) in child_types[c].iter() {
                    let mut p = prefix.clone();
                    p.push(t.clone());
                    next.push(p);
                }
            }
            combos = next;
        }
        for combo in combos {
            let refs: Vec<&Partition> = combo.iter().collect();
            for (t, _) in n_basic(nodes[v].1, &refs).iter() {
                out.add_term(t.clone(), 1);
            }
        }
    }
    out.reduce()
}

/// All interleavings of the given sequences preserving each sequence's order.
pub fn shuffles<T: Clone>(seqs: &[Vec<T>]) -> Vec<Vec<T>> {
    fn go<T: Clone>(seqs: &[Vec<T>], idx: &mut Vec<usize>, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        let mut done = true;
        for k in 0..seqs.len() {
            if idx[k] < seqs[k].len() {
                done = false;
                cur.push(seqs[k][idx[k]].clone());
                idx[k] += 1;
                go(seqs, idx, cur, out);
                idx[k] -= 1;
                cur.pop();
            }
        }
        if done {
            out.push(cur.clone());
        }
    }
    let mut out = Vec::new();
    go(seqs, &mut vec![0; seqs.len()], &mut Vec::new(), &mut out);
    out
}

/// Which slot of the intermediate partition a second factor was inserted into.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum SlotOrigin {
    Outer(usize),
    Inner,
}

/// `(p1 ∗ p2) ∗ p3 − p1 ∗ (p2 ∗ p3)`, resolved per slot of `p1`.
///
/// For a fixed slot `m` of `p1`, the terms where `p2` went into slot `m` are
/// grouped by where `p3` went afterwards (an untouched slot of `p1`, or the
/// region produced by `p2`); duplicates are erased inside each group and
/// against `p1 ∗ (p2 ∗ p3)` restricted to slot `m`. For a singleton `p1` this
/// is the plain reduced bilinear defect.
pub fn pre_lie_defect(p1: &Partition, p2: &Partition, p3: &Partition) -> PartitionVector {
    let mut out = PartitionVector::raw();
    let nested = star(p2, p3);
    for (m, &im) in p1.slots.iter().enumerate() {
        let mut classes: BTreeMap<SlotOrigin, BTreeSet<Partition>> = BTreeMap::new();
        for (tau, _) in star_simple(im, p2).iter() {
            let rho = p1.substitute(m, tau);
            for (b, &rb) in rho.slots.iter().enumerate() {
                let origin = if b < m {
                    SlotOrigin::Outer(b)
                } else if b < m + tau.len() {
                    SlotOrigin::Inner
                } else {
                    SlotOrigin::Outer(b - tau.len() + 1)
                };
                let class = classes.entry(origin).or_default();
                for (s, _) in star_simple(rb, p3).iter() {
                    class.insert(rho.substitute(b, s));
                }
            }
        }
        let mut z = BTreeSet::new();
        for (sigma, _) in nested.iter() {
            for (t, _) in star_simple(im, sigma).iter() {
                z.insert(p1.substitute(m, t));
            }
        }
        for class in classes.values() {
            for p in class {
                out.add_term(p.clone(), 1);
            }
        }
        for p in z {
            out.add_term(p, -1);
        }
    }
    out
}

/// `defect(p1,p2,p3) − defect(p1,p3,p2)`; zero on regular partitions.
pub fn pre_lie_asymmetry(p1: &Partition, p2: &Partition, p3: &Partition) -> PartitionVector {
    pre_lie_defect(p1, p2, p3).sub(&pre_lie_defect(p1, p3, p2))
}

pub fn bracket(p: &Partition, q: &Partition) -> PartitionVector {
    star(p, q).sub(&star(q, p))
}

/// Integer Jacobiator `[p1,[p2,p3]] + [p2,[p3,p1]] + [p3,[p1,p2]]` of the
/// reduced bracket, extended bilinearly.
pub fn jacobiator(p1: &Partition, p2: &Partition, p3: &Partition) -> PartitionVector {
    let b = |x: &PartitionVector, y: &PartitionVector| x.star(y).sub(&y.star(x));
    let v = |p: &Partition| PartitionVector::basis(p.clone());
    b(&v(p1), &b(&v(p2), &v(p3)))
        .add(&b(&v(p2), &b(&v(p3), &v(p1))))
        .add(&b(&v(p3), &b(&v(p1), &v(p2))))
}

fn set_star(xs: &BTreeSet<Partition>, ys: &BTreeSet<Partition>) -> BTreeSet<Partition> {
    let mut out = BTreeSet::new();
    for x in xs {
        for y in ys {
            out.extend(star(x, y).support());
        }
    }
    out
}

fn one(p: &Partition) -> BTreeSet<Partition> {
    let mut s = BTreeSet::new();
    s.insert(p.clone());
    s
}

/// Right pre-Lie identity read over the Boolean semiring (sums are unions):
/// `(p1p2)p3 + p1(p3p2) = (p1p3)p2 + p1(p2p3)`.
pub fn pre_lie_holds_up_to_repetition(p1: &Partition, p2: &Partition, p3: &Partition) -> bool {
    let (a, b, c) = (one(p1), one(p2), one(p3));
    let lhs: BTreeSet<_> = set_star(&set_star(&a, &b), &c)
        .union(&set_star(&a, &set_star(&c, &b)))
        .cloned()
        .collect();
    let rhs: BTreeSet<_> = set_star(&set_star(&a, &c), &b)
        .union(&set_star(&a, &set_star(&b, &c)))
        .cloned()
        .collect();
    lhs == rhs
}

/// Jacobi identity over the Boolean semiring: after expanding every bracket
/// `[x,y] = xy − yx`, the union of the positive products equals the union of
/// the negative ones.
pub fn jacobi_holds_up_to_repetition(p1: &Partition, p2: &Partition, p3: &Partition) -> bool {
    let mut pos = BTreeSet::new();
    let mut neg = BTreeSet::new();
    let cyc = [(p1, p2, p3), (p2, p3, p1), (p3, p1, p2)];
    for (x, y, z) in cyc {
        let (x, y, z) = (one(x), one(y), one(z));
        // [x,[y,z]] = x(yz) − x(zy) − (yz)x + (zy)x
        pos.extend(set_star(&x, &set_star(&y, &z)));
        pos.extend(set_star(&set_star(&z, &y), &x));
        neg.extend(set_star(&x, &set_star(&z, &y)));
        neg.extend(set_star(&set_star(&y, &z), &x));
    }
    pos == neg
}

/// Every regular partition with `d <= max_d`, canonical order.
pub fn regular_up_to(max_d: usize) -> Vec<Partition> {
    partitions_bounded(max_d + 1, max_d + 1, true)
}

/// Partitions with arity `<= max_arity` and at most `max_slots` slots.
pub fn partitions_bounded(max_arity: usize, max_slots: usize, regular: bool) -> Vec<Partition> {
    fn go(rem: usize, slots_left: usize, lo: usize, cur: &mut Vec<usize>, out: &mut BTreeSet<Partition>) {
        if !cur.is_empty() {
            out.insert(Partition { slots: cur.clone() });
        }
        if slots_left == 0 {
            return;
        }
        for i in lo..=rem {
            cur.push(i);
            go(rem - i, slots_left - 1, lo, cur, out);
            cur.pop();
        }
    }
    let mut out = BTreeSet::new();
    go(max_arity, max_slots, usize::from(regular), &mut Vec::new(), &mut out);
    out.into_iter().collect()
}

/// Render a partition list like `(1|2), (3)`.
pub fn join(ps: &[Partition]) -> String {
    let mut s = String::new();
    for (k, p) in ps.iter().enumerate() {
        if k > 0 {
            s.push_str(", ");
        }
        s.push_str(&alloc::format!("{p}"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn degrees() {
        assert_eq!((p("(1|2|3)").d(), p("(1|2|3)").dbar()), (5, 2));
        assert_eq!((p("(1)").d(), p("(1)").dbar()), (0, 0));
        assert_eq!((p("(1|0|3)").d(), p("(1|0|3)").dbar()), (3, 2));
    }

    #[test]
    fn parse_roundtrip_and_errors() {
        assert_eq!(p(" ( 1 | 2 ) ").to_string(), "(1|2)");
        let e = "(1|x)".parse::<Partition>().unwrap_err();
        assert_eq!(e.position, 3);
        assert!("()".parse::<Partition>().is_err());
        assert!("(1|2".parse::<Partition>().is_err());
    }

    #[test]
    fn compositions_count() {
        assert_eq!(weak_compositions(4, 2).len(), 5);
        assert_eq!(weak_compositions(0, 3), vec![vec![0, 0, 0]]);
        assert!(weak_compositions(2, 0).is_empty());
    }

    #[test]
    fn singleton_product() {
        for i in 1..6 {
            for j in 1..6 {
                assert_eq!(star(&Partition::singleton(i), &Partition::singleton(j)).to_string(), alloc::format!("({})", i + j - 1));
                assert!(bracket(&Partition::singleton(i), &Partition::singleton(j)).is_zero());
            }
        }
    }

    #[test]
    fn canonical_order() {
        let v: PartitionVector = "(4|4)+(2|6)+(3|5)+(1)".parse().unwrap();
        assert_eq!(v.to_string(), "(1)+(2|6)+(3|5)+(4|4)");
    }

    #[test]
    fn vector_parse() {
        let v: PartitionVector = "2(1|2) - (3)".parse().unwrap();
        assert_eq!(v.coeff(&p("(1|2)")), 2);
        assert_eq!(v.coeff(&p("(3)")), -1);
        assert_eq!(v.form(), VectorForm::Raw);
        assert_eq!(v.to_string(), "-(3)+2(1|2)");
        assert!("0".parse::<PartitionVector>().unwrap().is_zero());
    }

    #[test]
    fn shuffle_counts() {
        assert_eq!(shuffles(&[vec![1, 2], vec![3, 4, 5]]).len(), 10);
        assert_eq!(shuffles::<u8>(&[vec![], vec![]]).len(), 1);
    }

    #[test]
    fn family_sizes() {
        // compositions of n for n = 1..=5: 1+2+4+8+16
        assert_eq!(regular_up_to(4).len(), 31);
        assert_eq!(partitions_bounded(1, 2, false).len(), 5);
    }
}
