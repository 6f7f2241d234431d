//! Composition of partitioned multilinear maps.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use num_traits::One;

use crate::error::Error;
use crate::partition::{n_basic, shuffles, star, weak_compositions, Partition};
use crate::sign::{koszul_exponent, Grading, SignPoly, SignRule};
use crate::terms::{generator_name, Expr, FormalSum, Generator, MapSymbol, Q};

/// Where one slot of an inner map lands inside a target slot.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Block {
    pub inner: usize,
    pub inner_slot: usize,
    /// Offset of the block inside its target slot.
    pub start: usize,
    pub len: usize,
}

/// One way of placing the inner maps' consecutive argument blocks.
///
/// The outer map's slot `outer_slot` is replaced by a run of target slots;
/// `blocks[t]` lists the blocks inside run slot `t` in inner order. Leftover
/// elements of a run slot form segments: the one before the first block goes
/// in front of that block's inner map, the one after the block of inner `l`
/// goes after inner `l`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subdivision {
    pub outer_slot: usize,
    pub blocks: Vec<Vec<Block>>,
    sizes: Vec<usize>,
}

impl Subdivision {
    /// `(b, c, d)` ranges of run slot `t` when it holds a single block.
    pub fn bcd(&self, t: usize) -> Option<(Range<usize>, Range<usize>, Range<usize>)> {
        match self.blocks[t].as_slice() {
            [b] => Some((0..b.start, b.start..b.start + b.len, b.start + b.len..self.sizes[t])),
            _ => None,
        }
    }

    /// Leftover segments of every run slot, grouped by the gap they fill
    /// (gap `l` sits just before inner map `l`; gap `k` after the last).
    /// Each segment is tagged with its run slot.
    pub fn segments(&self, inner_count: usize) -> Vec<Vec<(usize, Range<usize>)>> {
        let mut gaps = vec![Vec::new(); inner_count + 1];
        for (t, blocks) in self.blocks.iter().enumerate() {
            let mut cursor = 0;
            let mut gap = blocks[0].inner;
            for b in blocks {
                gaps[gap].push((t, cursor..b.start));
                cursor = b.start + b.len;
                gap = b.inner + 1;
            }
            gaps[gap].push((t, cursor..self.sizes[t]));
        }
        gaps
    }

    /// Number of order-preserving merges of the leftover segments.
    pub fn interleavings(&self, inner_count: usize) -> usize {
        self.segments(inner_count)
            .iter()
            .map(|segs| multinomial(segs.iter().map(|(_, r)| r.len())))
            .product()
    }
}

fn multinomial<I: Iterator<Item = usize>>(parts: I) -> usize {
    let mut total = 0usize;
    let mut acc = 1usize;
    for p in parts {
        for j in 1..=p {
            total += 1;
            acc = acc * total / j;
        }
    }
    acc
}

/// All subdivisions realizing `target` as a component of `{outer}{inners...}`
/// with every inner map inserted into the same outer slot.
pub fn enumerate_subdivisions(target: &Partition, outer: &Partition, inners: &[Partition]) -> Vec<Subdivision> {
    let k = inners.len();
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    let run_len: usize = inners.iter().map(|p| p.len()).sum::<usize>() + 1 - k;
    let r = outer.len();
    let arity = outer.arity() + inners.iter().map(|p| p.arity()).sum::<usize>();
    if target.len() + 1 != r + run_len || target.arity() + k != arity {
        return out;
    }
    // run slot of inner l's slot q
    let mut placement: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); run_len];
    let mut off = 0;
    for (l, p) in inners.iter().enumerate() {
        for (q, &j) in p.slots().iter().enumerate() {
            placement[off + q].push((l, q, j));
        }
        off += p.len() - 1;
    }
    let ts = target.slots();
    let os = outer.slots();
    for alpha in 0..r {
        if ts[..alpha] != os[..alpha] || ts[alpha + run_len..] != os[alpha + 1..] {
            continue;
        }
        let sizes: Vec<usize> = ts[alpha..alpha + run_len].to_vec();
        let mut per_slot: Vec<Vec<Vec<Block>>> = Vec::new();
        let mut ok = true;
        for (t, blocks) in placement.iter().enumerate() {
            let used: usize = blocks.iter().map(|b| b.2).sum();
            if used > sizes[t] {
                ok = false;
                break;
            }
            let mut options = Vec::new();
            for gaps in weak_compositions(sizes[t] - used, blocks.len() + 1) {
                let mut cursor = 0;
                let mut bs = Vec::new();
                for ((l, q, j), g) in blocks.iter().zip(&gaps) {
                    cursor += g;
                    bs.push(Block { inner: *l, inner_slot: *q, start: cursor, len: *j });
                    cursor += j;
                }
                options.push(bs);
            }
            per_slot.push(options);
        }
        if !ok {
            continue;
        }
        for choice in cartesian(&per_slot) {
            out.push(Subdivision { outer_slot: alpha, blocks: choice, sizes: sizes.clone() });
        }
    }
    out
}

/// Subdivisions for a single-slot outer map `(i)` and one inner map.
pub fn subdivisions_for_slot(target: &Partition, i: usize, inner: &Partition) -> Result<Vec<Subdivision>, Error> {
    let outer = Partition::singleton(i);
    if star(&outer, inner).coeff(target) == 0 {
        return Err(Error::NotAComponent { target: target.clone(), outer, inner: inner.clone() });
    }
    Ok(enumerate_subdivisions(target, &outer, core::slice::from_ref(inner)))
}

fn cartesian<T: Clone>(lists: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut acc: Vec<Vec<T>> = vec![Vec::new()];
    for list in lists {
        let mut next = Vec::with_capacity(acc.len() * list.len());
        for prefix in &acc {
            for x in list {
                let mut p = prefix.clone();
                p.push(x.clone());
                next.push(p);
            }
        }
        acc = next;
    }
    acc
}

/// A formal operation that can be applied to slot-structured arguments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Operator {
    Symbol(MapSymbol),
    /// The sign-modified `x̃`.
    Tilde(Box<Operator>),
    /// The `target` component of `{outer}{inners...}`.
    Compose { outer: Box<Operator>, inners: Vec<Operator>, target: Partition },
}

impl Operator {
    pub fn symbol(s: MapSymbol) -> Self {
        Operator::Symbol(s)
    }

    pub fn tilde(op: Operator) -> Self {
        Operator::Tilde(Box::new(op))
    }

    pub fn compose(outer: Operator, inners: Vec<Operator>, target: Partition) -> Self {
        Operator::Compose { outer: Box::new(outer), inners, target }
    }

    pub fn ty(&self) -> Partition {
        match self {
            Operator::Symbol(s) => s.ty.clone(),
            Operator::Tilde(op) => op.ty(),
            Operator::Compose { target, .. } => target.clone(),
        }
    }

    pub fn grading(&self) -> Grading {
        match self {
            Operator::Symbol(s) => s.grading(),
            Operator::Tilde(op) => op.grading(),
            Operator::Compose { outer, inners, target } => {
                let sup = inners.iter().fold(outer.grading().sup, |acc, op| acc.add(&op.grading().sup));
                Grading::new(target.d(), sup)
            }
        }
    }

    pub fn apply(&self, rule: SignRule, args: &[Vec<Expr>]) -> Result<FormalSum, Error> {
        let ty = self.ty();
        if args.len() != ty.len() || args.iter().zip(ty.slots()).any(|(a, &i)| a.len() != i) {
            return Err(Error::Arity(alloc::format!("{ty} applied to {} slots", args.len())));
        }
        match self {
            Operator::Symbol(s) => {
                if s.identity {
                    let mut it = args.iter().flatten();
                    if let (Some(a), None) = (it.next(), it.next()) {
                        return Ok(FormalSum::single(a.clone()));
                    }
                }
                Ok(FormalSum::single(Expr::app(s.clone(), args.to_vec())))
            }
            Operator::Tilde(op) => {
                let inner = op.apply(rule, args)?;
                Ok(inner.scale_signed(Q::one(), &tilde_exponent(args)))
            }
            Operator::Compose { outer, inners, target } => compose_apply(rule, outer, inners, target, args),
        }
    }
}

/// `Σ_j (n-j)‖a_j‖` over the flattened arguments, `‖a‖ = d(a) + |a|`.
pub fn tilde_exponent(args: &[Vec<Expr>]) -> SignPoly {
    let flat: Vec<&Expr> = args.iter().flatten().collect();
    let n = flat.len();
    let mut acc = SignPoly::zero();
    for (j, a) in flat.iter().enumerate() {
        if (n - 1 - j) % 2 == 1 {
            acc = acc.add(&a.grading().total());
        }
    }
    acc
}

fn compose_apply(
    rule: SignRule,
    outer: &Operator,
    inners: &[Operator],
    target: &Partition,
    args: &[Vec<Expr>],
) -> Result<FormalSum, Error> {
    let k = inners.len();
    let outer_ty = outer.ty();
    let inner_tys: Vec<Partition> = inners.iter().map(Operator::ty).collect();
    let offsets = target.offsets();
    let flat: Vec<&Expr> = args.iter().flatten().collect();
    let mut items: Vec<Grading> = inners.iter().map(Operator::grading).collect();
    items.extend(flat.iter().map(|a| a.grading()));

    let mut out = FormalSum::zero();
    for sub in enumerate_subdivisions(target, &outer_ty, &inner_tys) {
        let alpha = sub.outer_slot;
        let run_len = sub.blocks.len();
        // global argument indices of each inner map's slots
        let mut c_args: Vec<Vec<Vec<usize>>> = inner_tys.iter().map(|p| vec![Vec::new(); p.len()]).collect();
        for (t, blocks) in sub.blocks.iter().enumerate() {
            let base = offsets[alpha + t];
            for b in blocks {
                c_args[b.inner][b.inner_slot] = (base + b.start..base + b.start + b.len).collect();
            }
        }
        let gap_seqs: Vec<Vec<Vec<usize>>> = sub
            .segments(k)
            .iter()
            .map(|segs| {
                segs.iter()
                    .map(|(t, r)| r.clone().map(|x| offsets[alpha + t] + x).collect())
                    .collect()
            })
            .collect();
        let gap_shuffles: Vec<Vec<Vec<usize>>> = gap_seqs.iter().map(|s| shuffles(s)).collect();

        let inner_sums: Vec<FormalSum> = inners
            .iter()
            .zip(&c_args)
            .map(|(op, slots)| {
                let a: Vec<Vec<Expr>> = slots.iter().map(|s| s.iter().map(|&i| flat[i].clone()).collect()).collect();
                op.apply(rule, &a)
            })
            .collect::<Result<_, _>>()?;
        let inner_terms: Vec<Vec<(Expr, SignPoly, Q)>> = inner_sums
            .iter()
            .map(|s| s.iter().map(|(e, p, c)| (e.clone(), p.clone(), *c)).collect())
            .collect();

        for gaps in cartesian(&gap_shuffles) {
            // Layout of the outer map's arguments as placeholders.
            enum Slot {
                Arg(usize),
                Inner(usize),
            }
            let mut layout: Vec<Vec<Slot>> = Vec::new();
            let mut order: Vec<usize> = Vec::new();
            for beta in 0..outer_ty.len() {
                let mut slot = Vec::new();
                if beta == alpha {
                    for l in 0..=k {
                        for &i in &gaps[l] {
                            slot.push(Slot::Arg(i));
                            order.push(k + i);
                        }
                        if l < k {
                            slot.push(Slot::Inner(l));
                            order.push(l);
                            order.extend(c_args[l].iter().flatten().map(|&i| k + i));
                        }
                    }
                } else {
                    let tslot = if beta < alpha { beta } else { beta + run_len - 1 };
                    for i in offsets[tslot]..offsets[tslot] + target.slots()[tslot] {
                        slot.push(Slot::Arg(i));
                        order.push(k + i);
                    }
                }
                layout.push(slot);
            }
            let exponent = koszul_exponent(rule, &items, &order)?;
            for combo in cartesian(&inner_terms) {
                let mut coeff = Q::one();
                let mut sign = exponent.clone();
                for (_, s, c) in &combo {
                    coeff *= *c;
                    sign = sign.add(s);
                }
                let outer_args: Vec<Vec<Expr>> = layout
                    .iter()
                    .map(|slot| {
                        slot.iter()
                            .map(|x| match x {
                                Slot::Arg(i) => flat[*i].clone(),
                                Slot::Inner(l) => combo[*l].0.clone(),
                            })
                            .collect()
                    })
                    .collect();
                let res = outer.apply(rule, &outer_args)?;
                out.add_assign(&res.scale_signed(coeff, &sign));
            }
        }
    }
    Ok(out)
}

/// Formal generators `a, b, c, ...` laid out in the slots of `target`.
pub fn formal_arguments(target: &Partition) -> Vec<Vec<Expr>> {
    let mut k = 0;
    target
        .slots()
        .iter()
        .map(|&i| {
            (0..i)
                .map(|_| {
                    let g = Generator::symbolic(&generator_name(k));
                    k += 1;
                    Expr::gen(g)
                })
                .collect()
        })
        .collect()
}

/// `{x(π)}{y(π′)}` split into its components, each applied to formal arguments.
pub fn compose_pair(rule: SignRule, x: &Operator, y: &Operator) -> Result<BTreeMap<Partition, FormalSum>, Error> {
    compose_multi(rule, x, core::slice::from_ref(y))
}

/// `{x}{y1,...,yk}` split into components; support is `N(1|k)`.
pub fn compose_multi(rule: SignRule, x: &Operator, ys: &[Operator]) -> Result<BTreeMap<Partition, FormalSum>, Error> {
    let inner_tys: Vec<Partition> = ys.iter().map(Operator::ty).collect();
    let refs: Vec<&Partition> = inner_tys.iter().collect();
    let mut out = BTreeMap::new();
    for (t, _) in n_basic(&x.ty(), &refs).iter() {
        let op = Operator::compose(x.clone(), ys.to_vec(), t.clone());
        out.insert(t.clone(), op.apply(rule, &formal_arguments(t))?);
    }
    Ok(out)
}

/// Component operators of `{outer}{inner}` grouped by type.
pub fn compose_operators(outers: &[Operator], inners: &[Operator]) -> BTreeMap<Partition, Vec<Operator>> {
    let mut out: BTreeMap<Partition, Vec<Operator>> = BTreeMap::new();
    for x in outers {
        for y in inners {
            for (t, _) in star(&x.ty(), &y.ty()).iter() {
                out.entry(t.clone())
                    .or_default()
                    .push(Operator::compose(x.clone(), vec![y.clone()], t.clone()));
            }
        }
    }
    out
}

/// Apply a sum of operators of one type.
pub fn apply_sum(rule: SignRule, ops: &[Operator], args: &[Vec<Expr>]) -> Result<FormalSum, Error> {
    let mut out = FormalSum::zero();
    for op in ops {
        out.add_assign(&op.apply(rule, args)?);
    }
    Ok(out)
}

/// An entry of a brace chain `{x}{...}{...}`.
#[derive(Clone, Debug)]
pub enum ChainItem {
    Map { symbol: MapSymbol, tilde: bool },
    Gen(Generator),
}

impl ChainItem {
    pub fn map(symbol: MapSymbol) -> Self {
        ChainItem::Map { symbol, tilde: false }
    }

    pub fn tilde(symbol: MapSymbol) -> Self {
        ChainItem::Map { symbol, tilde: true }
    }

    fn arity(&self) -> usize {
        match self {
            ChainItem::Map { symbol, .. } => symbol.ty.arity(),
            ChainItem::Gen(_) => 0,
        }
    }

    fn grading(&self) -> Grading {
        match self {
            ChainItem::Map { symbol, .. } => symbol.grading(),
            ChainItem::Gen(g) => g.grading(),
        }
    }
}

struct Node {
    item: usize,
    children: Vec<Node>,
}

/// Expand `{head}{group_1}...{group_n}`: each symbol is substituted into a
/// symbol of an earlier brace (or the head), in every possible way, keeping
/// the order inside each brace. Maps are treated through their flattened
/// arity. A substitution into a generator is inadmissible and contributes 0.
pub fn expand_chain(rule: SignRule, head: &ChainItem, groups: &[Vec<ChainItem>]) -> Result<FormalSum, Error> {
    let mut items: Vec<&ChainItem> = vec![head];
    let mut group_of: Vec<usize> = vec![0];
    let mut starts = Vec::new();
    for (g, grp) in groups.iter().enumerate() {
        starts.push(items.len());
        for it in grp {
            items.push(it);
            group_of.push(g + 1);
        }
    }
    let total = items.len();
    let gradings: Vec<Grading> = items.iter().map(|i| i.grading()).collect();
    let mut used: Vec<usize> = vec![0; groups.len()];
    let mut trees = Vec::new();
    fill(&items, &group_of, &starts, groups, 0, &mut used, &mut |children, used| {
        if used.iter().zip(groups).all(|(u, g)| *u == g.len()) {
            trees.push(Node { item: 0, children });
        }
    });
    let mut out = FormalSum::zero();
    for tree in trees {
        let mut order = Vec::with_capacity(total);
        preorder(&tree, &mut order);
        let mut sign = koszul_exponent(rule, &gradings, &order)?;
        let expr = build(&tree, &items, &mut sign);
        out.add_term(Q::one(), &sign, expr);
    }
    Ok(out)
}

fn fill(
    items: &[&ChainItem],
    group_of: &[usize],
    starts: &[usize],
    groups: &[Vec<ChainItem>],
    node: usize,
    used: &mut Vec<usize>,
    k: &mut dyn FnMut(Vec<Node>, &Vec<usize>),
) {
    fill_holes(items, group_of, starts, groups, group_of[node], items[node].arity(), Vec::new(), used, k);
}

#[allow(clippy::too_many_arguments)]
fn fill_holes(
    items: &[&ChainItem],
    group_of: &[usize],
    starts: &[usize],
    groups: &[Vec<ChainItem>],
    parent_group: usize,
    holes: usize,
    done: Vec<Node>,
    used: &mut Vec<usize>,
    k: &mut dyn FnMut(Vec<Node>, &Vec<usize>),
) {
    if holes == 0 {
        k(done, used);
        return;
    }
    for g in parent_group..groups.len() {
        if used[g] == groups[g].len() {
            continue;
        }
        let idx = starts[g] + used[g];
        used[g] += 1;
        let mut sub = |children: Vec<Node>, used2: &Vec<usize>| {
            let mut used3 = used2.clone();
            let mut d2: Vec<Node> = done.iter().map(clone_node).collect();
            d2.push(Node { item: idx, children });
            fill_holes(items, group_of, starts, groups, parent_group, holes - 1, d2, &mut used3, k);
        };
        fill(items, group_of, starts, groups, idx, used, &mut sub);
        used[g] -= 1;
    }
}

fn clone_node(n: &Node) -> Node {
    Node { item: n.item, children: n.children.iter().map(clone_node).collect() }
}

fn preorder(n: &Node, out: &mut Vec<usize>) {
    out.push(n.item);
    for c in &n.children {
        preorder(c, out);
    }
}

fn build(n: &Node, items: &[&ChainItem], sign: &mut SignPoly) -> Expr {
    match items[n.item] {
        ChainItem::Gen(g) => Expr::gen(g.clone()),
        ChainItem::Map { symbol, tilde } => {
            let flat: Vec<Expr> = n.children.iter().map(|c| build(c, items, sign)).collect();
            let mut slots = Vec::new();
            let mut it = flat.into_iter();
            for &i in symbol.ty.slots() {
                slots.push(it.by_ref().take(i).collect::<Vec<_>>());
            }
            if *tilde {
                *sign = sign.add(&tilde_exponent(&slots));
            }
            Expr::app(symbol.clone(), slots)
        }
    }
}
