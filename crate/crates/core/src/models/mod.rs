//! Finite-dimensional graded models with exact arithmetic.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::partition::Partition;
use crate::terms::{Degree, Expr, FormalSum, Q};

pub mod checks;
pub mod hochschild;
pub mod library;
pub mod numeric;
pub mod phi;
pub mod prelie;

pub type Vector = Vec<Q>;

pub fn zero_vector(dim: usize) -> Vector {
    vec![Q::zero(); dim]
}

pub fn unit_vector(dim: usize, i: usize) -> Vector {
    let mut v = zero_vector(dim);
    v[i] = Q::one();
    v
}

pub fn add_scaled(acc: &mut Vector, v: &Vector, c: Q) {
    if c.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(v) {
        *a += *b * c;
    }
}

pub fn is_zero(v: &Vector) -> bool {
    v.iter().all(Q::is_zero)
}

/// Deterministic generator for every randomized check.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A nonzero integer in `[-3, 3]`.
pub fn small_coeff<R: Rng>(rng: &mut R) -> Q {
    let c: i128 = rng.gen_range(1..=3);
    Q::from_integer(if rng.gen_bool(0.5) { c } else { -c })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub name: String,
    pub degree: i64,
}

/// Named basis vectors with integer degrees. With `modulus = Some(2)` only
/// parities matter (a super vector space).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    pub elements: Vec<BasisElement>,
    pub modulus: Option<i64>,
}

impl GradedBasis {
    pub fn new(elements: &[(&str, i64)], modulus: Option<i64>) -> Result<Self, Error> {
        let elements: Vec<BasisElement> =
            elements.iter().map(|(n, d)| BasisElement { name: (*n).into(), degree: *d }).collect();
        for (k, e) in elements.iter().enumerate() {
            if elements[..k].iter().any(|f| f.name == e.name) {
                return Err(Error::Model(format!("duplicate basis name `{}`", e.name)));
            }
        }
        Ok(GradedBasis { elements, modulus })
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e.name == name)
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.elements[i].degree
    }

    pub fn same_degree(&self, a: i64, b: i64) -> bool {
        match self.modulus {
            Some(m) => (a - b).rem_euclid(m) == 0,
            None => a == b,
        }
    }

    /// Degree of a nonzero homogeneous vector.
    pub fn degree_of(&self, v: &Vector) -> Option<i64> {
        let mut deg = None;
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match deg {
                None => deg = Some(self.degree(i)),
                Some(d) if self.same_degree(d, self.degree(i)) => {}
                Some(_) => return None,
            }
        }
        deg
    }

    /// Random homogeneous vector of the given degree (zero if none exists).
    pub fn random_homogeneous<R: Rng>(&self, rng: &mut R, degree: i64) -> Vector {
        let mut v = zero_vector(self.dim());
        for i in 0..self.dim() {
            if self.same_degree(self.degree(i), degree) && rng.gen_bool(0.7) {
                v[i] = small_coeff(rng);
            }
        }
        v
    }

    /// Distinct degrees present (representatives).
    pub fn degrees(&self) -> Vec<i64> {
        let mut out: Vec<i64> = Vec::new();
        for e in &self.elements {
            if !out.iter().any(|&d| self.same_degree(d, e.degree)) {
                out.push(e.degree);
            }
        }
        out
    }
}

/// A multilinear map given by structure constants on basis tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureTensor {
    pub ty: Partition,
    pub super_degree: i64,
    pub dim: usize,
    entries: BTreeMap<Vec<usize>, Vector>,
}

impl StructureTensor {
    pub fn new(ty: Partition, super_degree: i64, dim: usize) -> Self {
        StructureTensor { ty, super_degree, dim, entries: BTreeMap::new() }
    }

    pub fn arity(&self) -> usize {
        self.ty.arity()
    }

    /// Add `coeff · e_out` to the value on the basis tuple `inputs`.
    pub fn set(&mut self, inputs: &[usize], out: usize, coeff: Q) {
        let e = self.entries.entry(inputs.to_vec()).or_insert_with(|| zero_vector(self.dim));
        e[out] += coeff;
        if is_zero(e) {
            self.entries.remove(inputs);
        }
    }

    pub fn value(&self, inputs: &[usize]) -> Vector {
        self.entries.get(inputs).cloned().unwrap_or_else(|| zero_vector(self.dim))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Vector)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// `self += c · other`.
    pub fn axpy(&mut self, c: Q, other: &StructureTensor) {
        for (inp, v) in &other.entries {
            for (o, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    self.set(inp, o, *x * c);
                }
            }
        }
    }

    pub fn scaled(&self, c: Q) -> StructureTensor {
        let mut out = StructureTensor::new(self.ty.clone(), self.super_degree, self.dim);
        out.axpy(c, self);
        out
    }

    pub fn identity(ty: Partition, dim: usize) -> Self {
        let mut t = StructureTensor::new(ty, 0, dim);
        for i in 0..dim {
            t.set(&[i], i, Q::one());
        }
        t
    }

    pub fn check_homogeneous(&self, basis: &GradedBasis) -> Result<(), Error> {
        for (inp, out) in &self.entries {
            let d: i64 = inp.iter().map(|&i| basis.degree(i)).sum::<i64>() + self.super_degree;
            for (o, c) in out.iter().enumerate() {
                if !c.is_zero() && !basis.same_degree(basis.degree(o), d) {
                    return Err(Error::Model(format!("tensor of type {} is not homogeneous", self.ty)));
                }
            }
        }
        Ok(())
    }

    /// Random homogeneous tensor with small integer coefficients.
    pub fn random<R: Rng>(rng: &mut R, ty: Partition, super_degree: i64, basis: &GradedBasis, density: f64) -> Self {
        let dim = basis.dim();
        let n = ty.arity();
        let mut t = StructureTensor::new(ty, super_degree, dim);
        for inp in tuples(dim, n) {
            let d: i64 = inp.iter().map(|&i| basis.degree(i)).sum::<i64>() + super_degree;
            for o in 0..dim {
                if basis.same_degree(basis.degree(o), d) && rng.gen_bool(density) {
                    t.set(&inp, o, small_coeff(rng));
                }
            }
        }
        t
    }

    /// Multilinear evaluation on arbitrary vectors (flattened slots).
    pub fn evaluate_flat(&self, args: &[&Vector]) -> Result<Vector, Error> {
        if args.len() != self.arity() {
            return Err(Error::Arity(format!("{} expects {} arguments, got {}", self.ty, self.arity(), args.len())));
        }
        let mut out = zero_vector(self.dim);
        for (inp, val) in &self.entries {
            let mut c = Q::one();
            for (a, &i) in args.iter().zip(inp) {
                c *= a[i];
                if c.is_zero() {
                    break;
                }
            }
            add_scaled(&mut out, val, c);
        }
        Ok(out)
    }

    pub fn evaluate(&self, args: &[Vec<Vector>]) -> Result<Vector, Error> {
        if args.len() != self.ty.len() || args.iter().zip(self.ty.slots()).any(|(a, &i)| a.len() != i) {
            return Err(Error::Arity(format!("{} applied to mismatched slots", self.ty)));
        }
        let flat: Vec<&Vector> = args.iter().flatten().collect();
        self.evaluate_flat(&flat)
    }
}

/// All tuples in `[0, dim)^n`, lexicographic.
pub fn tuples(dim: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * dim);
        for t in &out {
            for i in 0..dim {
                let mut u = t.clone();
                u.push(i);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

/// A basis plus named structure tensors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelAlgebra {
    pub name: String,
    pub basis: GradedBasis,
    pub maps: BTreeMap<String, StructureTensor>,
}

impl ModelAlgebra {
    pub fn new(name: &str, basis: GradedBasis) -> Self {
        ModelAlgebra { name: name.into(), basis, maps: BTreeMap::new() }
    }

    pub fn insert(&mut self, name: &str, t: StructureTensor) -> Result<(), Error> {
        if t.dim != self.basis.dim() {
            return Err(Error::Model(format!("tensor `{name}` has the wrong dimension")));
        }
        t.check_homogeneous(&self.basis)?;
        self.maps.insert(name.into(), t);
        Ok(())
    }

    pub fn map(&self, name: &str) -> Option<&StructureTensor> {
        self.maps.get(name)
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }
}

/// Concrete values for the symbols and generators of a formal sum.
#[derive(Clone, Debug, Default)]
pub struct Binding {
    /// Keyed by symbol label, e.g. `m(1|2)`.
    pub maps: BTreeMap<String, StructureTensor>,
    /// Generator name to (vector, degree).
    pub elements: BTreeMap<String, (Vector, i64)>,
    /// Symbol labels realized as the zero map.
    pub zero_maps: Vec<String>,
}

impl Binding {
    fn parity(&self, var: &str) -> Option<bool> {
        if let Some((_, d)) = self.elements.get(var) {
            return Some(d.rem_euclid(2) == 1);
        }
        self.maps.get(var).map(|t| t.super_degree.rem_euclid(2) == 1)
    }
}

fn eval_expr(e: &Expr, b: &Binding, dim: usize) -> Result<Option<Vector>, Error> {
    match e {
        Expr::Gen(g) => {
            let (v, d) = b.elements.get(&g.name).ok_or_else(|| Error::Unbound(g.name.clone()))?;
            if let Degree::Known(k) = g.degree {
                if (k - d).rem_euclid(2) != 0 {
                    return Err(Error::DegreeMismatch(g.name.clone()));
                }
            }
            Ok(Some(v.clone()))
        }
        Expr::App(a) => {
            let label = a.head.label();
            if b.zero_maps.contains(&label) {
                return Ok(None);
            }
            let mut args = Vec::new();
            for slot in &a.slots {
                let mut s = Vec::new();
                for c in slot {
                    match eval_expr(c, b, dim)? {
                        Some(v) => s.push(v),
                        None => return Ok(None),
                    }
                }
                args.push(s);
            }
            if a.head.identity {
                return Ok(args.into_iter().flatten().next());
            }
            let t = b.maps.get(&label).ok_or_else(|| Error::Unbound(label.clone()))?;
            if t.ty != a.head.ty {
                return Err(Error::Arity(label));
            }
            if let Degree::Known(k) = a.head.degree {
                if (k - t.super_degree).rem_euclid(2) != 0 {
                    return Err(Error::DegreeMismatch(label));
                }
            }
            Ok(Some(t.evaluate(&args)?))
        }
    }
}

/// Evaluate a formal sum; Koszul signs are read off the sign exponents
/// using the bound degrees.
pub fn realize(s: &FormalSum, b: &Binding, dim: usize) -> Result<Vector, Error> {
    let mut out = zero_vector(dim);
    for (e, sign, c) in s.iter() {
        let odd = sign.evaluate(&|v| b.parity(v))?;
        if let Some(v) = eval_expr(e, b, dim)? {
            add_scaled(&mut out, &v, if odd { -*c } else { *c });
        }
    }
    Ok(out)
}

pub fn residual_zero(s: &FormalSum, b: &Binding, dim: usize) -> Result<bool, Error> {
    Ok(is_zero(&realize(s, b, dim)?))
}

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub samples: usize,
    /// Failure witness, or the counterexample found by an expected-failure check.
    pub witness: Option<String>,
}

impl CheckResult {
    /// Passes when no witness was found.
    pub fn vanishing(name: &str, samples: usize, witness: Option<String>) -> Self {
        CheckResult { name: name.into(), passed: witness.is_none(), samples, witness }
    }

    /// Passes when a counterexample was found.
    pub fn failing(name: &str, samples: usize, witness: Option<String>) -> Self {
        CheckResult { name: name.into(), passed: witness.is_some(), samples, witness }
    }
}

/// A verification run: seed plus per-check outcomes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub suite: String,
    pub model: String,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render(&self) -> String {
        let mut s = format!("suite {} on {} (seed {})\n", self.suite, self.model, self.seed);
        for c in &self.checks {
            s.push_str(&format!(
                "  [{}] {} ({} samples)\n",
                if c.passed { "pass" } else { "FAIL" },
                c.name,
                c.samples
            ));
            if let Some(w) = &c.witness {
                s.push_str(&format!("        witness: {w}\n"));
            }
        }
        s
    }
}

pub fn fmt_vector(basis: &GradedBasis, v: &Vector) -> String {
    let mut s = String::new();
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !s.is_empty() {
            s.push_str(" + ");
        }
        s.push_str(&format!("{c}*{}", basis.elements[i].name));
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}
