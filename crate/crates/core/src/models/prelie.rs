//! Pre-Lie checks over a finite family of elements.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Debug;

use super::hochschild::{d, HochschildComplex};
use super::{seeded, StructureTensor, Vector};
use crate::partition::{pre_lie_defect, Partition};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    /// `(a⋆b)⋆c - a⋆(b⋆c)` graded-symmetric in `b, c`.
    Right,
    /// ... in `a, b`.
    Left,
}

pub trait PreLieFamily {
    type Elem: Debug;
    type Value: PartialEq;

    fn elements(&self) -> &[Self::Elem];
    /// `(a⋆b)⋆c - a⋆(b⋆c)`.
    fn associator(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Value;
    /// `v` times the Koszul sign of interchanging `x` and `y`.
    fn swap_sign(&self, v: Self::Value, x: &Self::Elem, y: &Self::Elem) -> Self::Value;
    fn describe(&self, e: &Self::Elem) -> String {
        format!("{e:?}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreLieReport {
    pub side: Side,
    pub triples: usize,
    /// Triples where the associator is not symmetric.
    pub failures: Vec<String>,
}

impl PreLieReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn check_pre_lie<F: PreLieFamily>(family: &F, side: Side) -> PreLieReport {
    let els = family.elements();
    let mut failures = Vec::new();
    let mut triples = 0;
    for a in els {
        for b in els {
            for c in els {
                triples += 1;
                let lhs = family.associator(a, b, c);
                let rhs = match side {
                    Side::Right => family.swap_sign(family.associator(a, c, b), b, c),
                    Side::Left => family.swap_sign(family.associator(b, a, c), a, b),
                };
                if lhs != rhs {
                    failures.push(format!(
                        "({}, {}, {})",
                        family.describe(a),
                        family.describe(b),
                        family.describe(c)
                    ));
                }
            }
        }
    }
    PreLieReport { side, triples, failures }
}

/// Partitions under `∗`, with the duplicate-erasing associator.
pub struct Partitions(pub Vec<Partition>);

impl PreLieFamily for Partitions {
    type Elem = Partition;
    type Value = crate::partition::PartitionVector;

    fn elements(&self) -> &[Partition] {
        &self.0
    }

    fn associator(&self, a: &Partition, b: &Partition, c: &Partition) -> Self::Value {
        pre_lie_defect(a, b, c)
    }

    fn swap_sign(&self, v: Self::Value, _: &Partition, _: &Partition) -> Self::Value {
        v
    }

    fn describe(&self, e: &Partition) -> String {
        format!("{e}")
    }
}

/// Hochschild cochains under `x∘y = x{y}`.
pub struct Cochains<'a> {
    pub complex: &'a HochschildComplex,
    pub maps: Vec<StructureTensor>,
}

impl<'a> Cochains<'a> {
    /// `count` seeded random cochains of arity `≤ arity_cap`.
    pub fn random(complex: &'a HochschildComplex, count: usize, seed: u64) -> Self {
        use rand::Rng;
        let mut rng = seeded(seed);
        let maps = (0..count)
            .map(|_| {
                let n = rng.gen_range(0..=complex.arity_cap);
                complex.random_cochain(&mut rng, n)
            })
            .collect();
        Cochains { complex, maps }
    }
}

impl PreLieFamily for Cochains<'_> {
    type Elem = StructureTensor;
    /// Nonzero entries; zero maps of different arities compare equal.
    type Value = Vec<(Vec<usize>, Vector)>;

    fn elements(&self) -> &[StructureTensor] {
        &self.maps
    }

    fn associator(&self, a: &StructureTensor, b: &StructureTensor, c: &StructureTensor) -> Self::Value {
        self.complex.associator(a, b, c).entries().map(|(k, v)| (k.clone(), v.clone())).collect()
    }

    fn swap_sign(&self, v: Self::Value, x: &StructureTensor, y: &StructureTensor) -> Self::Value {
        if (d(x) * d(y)).rem_euclid(2) == 1 {
            v.into_iter().map(|(k, w)| (k, w.iter().map(|c| -*c).collect())).collect()
        } else {
            v
        }
    }

    fn describe(&self, e: &StructureTensor) -> String {
        self.complex.render(e)
    }
}
