//! Direct numeric evaluation of `({m̃}{m̃})(τ̃)` on concrete elements,
//! without going through formal sums.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::One;
use rand::Rng;

use super::{add_scaled, seeded, zero_vector, Binding, GradedBasis, StructureTensor, Vector};
use crate::error::Error;
use crate::partition::Partition;
use crate::sign::{koszul_sign, SignRule};
use crate::terms::{generator_name, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub value: Vector,
    pub degree: i64,
}

fn odd(n: i64) -> bool {
    n.rem_euclid(2) == 1
}

/// `(-1)^{Σ_j (n-1-j)(|x_j| - 1)}`.
fn tilde_sign(degrees: &[i64]) -> bool {
    let n = degrees.len();
    degrees.iter().enumerate().fold(false, |acc, (j, &g)| acc ^ (odd((n - 1 - j) as i64) && odd(g - 1)))
}

/// Compositions of `n` into positive parts.
fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Order-preserving interleavings of the given sequences.
fn interleave(seqs: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let total: usize = seqs.iter().map(Vec::len).sum();
    let mut out = Vec::new();
    let mut pos = vec![0; seqs.len()];
    let mut cur = Vec::with_capacity(total);
    fn go(seqs: &[Vec<usize>], pos: &mut [usize], cur: &mut Vec<usize>, total: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == total {
            out.push(cur.clone());
            return;
        }
        for s in 0..seqs.len() {
            if pos[s] < seqs[s].len() {
                cur.push(seqs[s][pos[s]]);
                pos[s] += 1;
                go(seqs, pos, cur, total, out);
                pos[s] -= 1;
                cur.pop();
            }
        }
    }
    go(seqs, &mut pos, &mut cur, total, &mut out);
    out
}

fn product<T: Clone>(lists: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for l in lists {
        let mut next = Vec::new();
        for prefix in &out {
            for x in l {
                let mut p = prefix.clone();
                p.push(x.clone());
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Evaluate `m(π)` on flattened arguments grouped by the slots of `π`.
fn apply(t: &StructureTensor, flat: &[&Vector]) -> Result<Vector, Error> {
    t.evaluate_flat(flat)
}

/// `Σ_{π,π′} {m̃(π)}{m̃(π′)}` evaluated on `args` laid out in the slots of
/// `target`, with `m(1|0)`, `m(0|1)` the identity. `maps` holds `m(π)` for
/// regular `π`; absent maps count as zero.
pub fn stepwise_identity(
    maps: &BTreeMap<Partition, StructureTensor>,
    target: &Partition,
    args: &[Vec<Element>],
    dim: usize,
) -> Result<Vector, Error> {
    if args.len() != target.len() || args.iter().zip(target.slots()).any(|(a, &i)| a.len() != i) {
        return Err(Error::Arity(format!("arguments do not fit {target}")));
    }
    let flat: Vec<&Element> = args.iter().flatten().collect();
    let n = flat.len();
    let t = target.slots();
    let mut starts = vec![0usize];
    for &k in t {
        starts.push(starts.last().unwrap() + k);
    }

    let mut shapes: Vec<Vec<usize>> = (1..=n).flat_map(compositions).collect();
    shapes.push(vec![1, 0]);
    shapes.push(vec![0, 1]);
    let unit = |s: &[usize]| s == [1, 0] || s == [0, 1];

    let mut out = zero_vector(dim);
    for outer in &shapes {
        for inner in &shapes {
            if unit(outer) {
                continue;
            }
            let (r, s) = (outer.len(), inner.len());
            if r + s - 1 != t.len() || outer.iter().sum::<usize>() + inner.iter().sum::<usize>() != n + 1 {
                continue;
            }
            let m_out = match maps.get(&Partition::from_slice(outer)) {
                Some(m) => m,
                None => continue,
            };
            let inner_map;
            let m_in = if unit(inner) {
                inner_map = StructureTensor::identity(Partition::from_slice(inner), dim);
                &inner_map
            } else {
                match maps.get(&Partition::from_slice(inner)) {
                    Some(m) => m,
                    None => continue,
                }
            };
            for alpha in 0..r {
                // slots away from the run must match the outer type
                if outer[..alpha] != t[..alpha] || outer[alpha + 1..] != t[alpha + s..] {
                    continue;
                }
                let run = &t[alpha..alpha + s];
                if run.iter().zip(inner).any(|(a, b)| a < b) {
                    continue;
                }
                let spare: usize = run.iter().zip(inner).map(|(a, b)| a - b).sum();
                if spare + 1 != outer[alpha] {
                    continue;
                }
                let offsets: Vec<Vec<usize>> = run.iter().zip(inner).map(|(a, b)| (0..=a - b).collect()).collect();
                for o in product(&offsets) {
                    let mut c_args: Vec<usize> = Vec::new();
                    let mut before: Vec<Vec<usize>> = Vec::new();
                    let mut after: Vec<Vec<usize>> = Vec::new();
                    for l in 0..s {
                        let base = starts[alpha + l];
                        before.push((base..base + o[l]).collect());
                        c_args.extend(base + o[l]..base + o[l] + inner[l]);
                        after.push((base + o[l] + inner[l]..base + run[l]).collect());
                    }
                    let c_deg: Vec<i64> = c_args.iter().map(|&i| flat[i].degree).collect();
                    let c_vals: Vec<&Vector> = c_args.iter().map(|&i| &flat[i].value).collect();
                    let mut v_in = apply(m_in, &c_vals)?;
                    if tilde_sign(&c_deg) {
                        v_in.iter_mut().for_each(|x| *x = -*x);
                    }
                    let in_deg = m_in.super_degree + c_deg.iter().sum::<i64>();

                    for g0 in interleave(&before) {
                        for g1 in interleave(&after) {
                            // item 0 is the inner map, item 1 + i the argument i
                            let mut order = Vec::with_capacity(n + 1);
                            let mut outer_args: Vec<(&Vector, i64)> = Vec::new();
                            for b in 0..r {
                                if b == alpha {
                                    for &i in &g0 {
                                        order.push(1 + i);
                                        outer_args.push((&flat[i].value, flat[i].degree));
                                    }
                                    order.push(0);
                                    order.extend(c_args.iter().map(|&i| 1 + i));
                                    outer_args.push((&v_in, in_deg));
                                    for &i in &g1 {
                                        order.push(1 + i);
                                        outer_args.push((&flat[i].value, flat[i].degree));
                                    }
                                } else {
                                    let ts = if b < alpha { b } else { b + s - 1 };
                                    for i in starts[ts]..starts[ts + 1] {
                                        order.push(1 + i);
                                        outer_args.push((&flat[i].value, flat[i].degree));
                                    }
                                }
                            }
                            let inner_d = inner.iter().sum::<usize>() as i64 - 1;
                            let mut items = vec![(inner_d, m_in.super_degree)];
                            items.extend(flat.iter().map(|e| (-1, e.degree)));
                            let ks = koszul_sign(SignRule::Total, &items, &order)?;
                            let degs: Vec<i64> = outer_args.iter().map(|(_, g)| *g).collect();
                            let vals: Vec<&Vector> = outer_args.iter().map(|(v, _)| *v).collect();
                            let value = apply(m_out, &vals)?;
                            let neg = (ks < 0) ^ tilde_sign(&degs);
                            add_scaled(&mut out, &value, if neg { -Q::one() } else { Q::one() });
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Random `m(π)` of parity `d + d̄ + 1` for each `π`, and random homogeneous
/// arguments named `a, b, c, ...` in the slots of `target`.
pub fn random_binding<R: Rng>(
    rng: &mut R,
    basis: &GradedBasis,
    symbols: &[Partition],
    target: &Partition,
) -> (Binding, BTreeMap<Partition, StructureTensor>, Vec<Vec<Element>>) {
    let mut binding = Binding::default();
    let mut maps = BTreeMap::new();
    for p in symbols {
        let parity = (p.d() + p.dbar() + 1).rem_euclid(2);
        let t = StructureTensor::random(rng, p.clone(), parity, basis, 0.5);
        binding.maps.insert(format!("m{p}"), t.clone());
        maps.insert(p.clone(), t);
    }
    let degrees = basis.degrees();
    let mut k = 0;
    let mut args = Vec::new();
    for &i in target.slots() {
        let mut slot = Vec::new();
        for _ in 0..i {
            let deg = degrees[rng.gen_range(0..degrees.len())];
            let value = basis.random_homogeneous(rng, deg);
            binding.elements.insert(generator_name(k), (value.clone(), deg));
            slot.push(Element { value, degree: deg });
            k += 1;
        }
        args.push(slot);
    }
    (binding, maps, args)
}

/// Outcome of comparing the symbolic and numeric routes on one target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coherence {
    pub target: Partition,
    pub seeds: Vec<u64>,
    pub mismatches: Vec<u64>,
}

/// Compare `realize(master identity)` with [`stepwise_identity`] on seeded
/// bindings over a Z/2-graded space of dimension 3.
pub fn coherence(target: &Partition, seeds: &[u64]) -> Result<Coherence, Error> {
    use crate::identity::{master_identity, required_symbols, IdentityOptions};
    let basis = GradedBasis::new(&[("u", 0), ("v", 1), ("w", 1)], Some(2))?;
    let report = master_identity(target, IdentityOptions::default())?;
    let total = report.total();
    let symbols = required_symbols(target)?;
    let mut mismatches = Vec::new();
    for &seed in seeds {
        let mut rng = seeded(seed);
        let (binding, maps, args) = random_binding(&mut rng, &basis, &symbols, target);
        let symbolic = super::realize(&total, &binding, basis.dim())?;
        let numeric = stepwise_identity(&maps, target, &args, basis.dim())?;
        if symbolic != numeric {
            mismatches.push(seed);
        }
    }
    Ok(Coherence { target: target.clone(), seeds: seeds.to_vec(), mismatches })
}
