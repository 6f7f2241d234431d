//! Built-in small algebras.

use alloc::string::String;

use super::{add_scaled, tuples, zero_vector, GradedBasis, ModelAlgebra, StructureTensor};
use crate::error::Error;
use crate::partition::Partition;
use crate::terms::Q;

pub const NAMES: [&str; 4] = ["dual-numbers", "upper-triangular", "grassmann2", "nonassoc-witness"];

fn product(basis: GradedBasis, name: &str, table: &[(&str, &str, &str, i128)]) -> ModelAlgebra {
    let dim = basis.dim();
    let mut m = StructureTensor::new(Partition::singleton(2), 0, dim);
    for (a, b, c, k) in table {
        let idx = |n: &str| basis.index_of(n).expect("basis name");
        m.set(&[idx(a), idx(b)], idx(c), Q::from_integer(*k));
    }
    let mut alg = ModelAlgebra::new(name, basis);
    alg.insert("m", m).expect("homogeneous product");
    alg
}

/// `k[ε]/ε²`.
pub fn dual_numbers() -> ModelAlgebra {
    let basis = GradedBasis::new(&[("1", 0), ("eps", 0)], None).unwrap();
    product(basis, "dual-numbers", &[("1", "1", "1", 1), ("1", "eps", "eps", 1), ("eps", "1", "eps", 1)])
}

/// 2×2 upper-triangular matrices on the matrix units.
pub fn upper_triangular() -> ModelAlgebra {
    let basis = GradedBasis::new(&[("e11", 0), ("e12", 0), ("e22", 0)], None).unwrap();
    product(
        basis,
        "upper-triangular",
        &[("e11", "e11", "e11", 1), ("e11", "e12", "e12", 1), ("e12", "e22", "e12", 1), ("e22", "e22", "e22", 1)],
    )
}

/// Exterior algebra on `e1, e2`; only parities are used for signs.
pub fn grassmann2() -> ModelAlgebra {
    let basis = GradedBasis::new(&[("1", 0), ("e1", 1), ("e2", 1), ("e12", 2)], Some(2)).unwrap();
    product(
        basis,
        "grassmann2",
        &[
            ("1", "1", "1", 1),
            ("1", "e1", "e1", 1),
            ("1", "e2", "e2", 1),
            ("1", "e12", "e12", 1),
            ("e1", "1", "e1", 1),
            ("e2", "1", "e2", 1),
            ("e12", "1", "e12", 1),
            ("e1", "e2", "e12", 1),
            ("e2", "e1", "e12", -1),
        ],
    )
}

/// `e·e = f`, `e·f = e`, `f·x = 0`: `(e·e)·e = 0` but `e·(e·e) = e`.
pub fn nonassoc_witness() -> ModelAlgebra {
    let basis = GradedBasis::new(&[("e", 0), ("f", 0)], None).unwrap();
    product(basis, "nonassoc-witness", &[("e", "e", "f", 1), ("e", "f", "e", 1)])
}

pub fn by_name(name: &str) -> Result<ModelAlgebra, Error> {
    match name {
        "dual-numbers" => Ok(dual_numbers()),
        "upper-triangular" => Ok(upper_triangular()),
        "grassmann2" => Ok(grassmann2()),
        "nonassoc-witness" => Ok(nonassoc_witness()),
        _ => Err(Error::Model(alloc::format!("unknown model `{name}` (known: {})", NAMES.join(", ")))),
    }
}

/// Compose two arity-one tensors: `(s ∘ t)(a) = s(t(a))`.
pub fn compose_linear(s: &StructureTensor, t: &StructureTensor) -> StructureTensor {
    let mut out = StructureTensor::new(t.ty.clone(), s.super_degree + t.super_degree, t.dim);
    for i in 0..t.dim {
        let v = s.evaluate_flat(&[&t.value(&[i])]).expect("arity one");
        for (o, c) in v.iter().enumerate() {
            out.set(&[i], o, *c);
        }
    }
    out
}

/// First triple of basis indices where `m` fails to associate.
pub fn associativity_witness(m: &StructureTensor) -> Option<[usize; 3]> {
    let dim = m.dim;
    for t in tuples(dim, 3) {
        let ab = m.value(&[t[0], t[1]]);
        let bc = m.value(&[t[1], t[2]]);
        let mut lhs = zero_vector(dim);
        let mut rhs = zero_vector(dim);
        for i in 0..dim {
            add_scaled(&mut lhs, &m.value(&[i, t[2]]), ab[i]);
            add_scaled(&mut rhs, &m.value(&[t[0], i]), bc[i]);
        }
        if lhs != rhs {
            return Some([t[0], t[1], t[2]]);
        }
    }
    None
}

pub fn describe(alg: &ModelAlgebra) -> String {
    let mut s = alloc::format!("{} (dim {}):", alg.name, alg.dim());
    for e in &alg.basis.elements {
        s.push_str(&alloc::format!(" {}[{}]", e.name, e.degree));
    }
    for (name, t) in &alg.maps {
        s.push_str(&alloc::format!("; {name}{} |{}|", t.ty, t.super_degree));
    }
    s
}
