//! Brace operations on multilinear maps and the Hochschild complex of an
//! associative algebra.
//!
//! A map `x` of arity `n` has `d(x) = n - 1`; its super degree is the tensor's
//! `super_degree`. Brace signs follow the bigraded rule: moving `y` past an
//! input `a` costs `(-1)^{d(y) + |y||a|}`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand::Rng;

use super::library::associativity_witness;
use super::{seeded, tuples, unit_vector, CheckResult, GradedBasis, ModelAlgebra, Report, StructureTensor, Vector};
use crate::error::Error;
use crate::partition::Partition;
use crate::terms::Q;

pub fn d(x: &StructureTensor) -> i64 {
    x.arity() as i64 - 1
}

fn sign(odd: bool) -> Q {
    if odd {
        -Q::one()
    } else {
        Q::one()
    }
}

fn parity(n: i64) -> bool {
    n.rem_euclid(2) == 1
}

/// Increasing `k`-subsets of `0..n`.
fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `x{y_1,...,y_N}`: insert the `y_i` into distinct inputs of `x`, in order.
pub fn brace(basis: &GradedBasis, x: &StructureTensor, ys: &[&StructureTensor]) -> StructureTensor {
    let dim = basis.dim();
    let n = x.arity();
    let total: usize = ys.iter().map(|y| y.arity()).sum();
    let arity = (n + total).saturating_sub(ys.len());
    let sup = ys.iter().fold(x.super_degree, |acc, y| acc + y.super_degree);
    let mut out = StructureTensor::new(Partition::singleton(arity), sup, dim);
    if ys.len() > n {
        return out;
    }
    let placements = choose(n, ys.len());
    for inputs in tuples(dim, arity) {
        let mut acc: Vector = super::zero_vector(dim);
        for q in &placements {
            let mut args: Vec<Vector> = Vec::with_capacity(n);
            let mut pos = 0;
            let mut deg_before = 0i64;
            let mut odd = false;
            let mut next = 0;
            for s in 0..n {
                if next < ys.len() && q[next] == s {
                    let y = ys[next];
                    let k = y.arity();
                    odd ^= parity(d(y) * pos as i64 + y.super_degree * deg_before);
                    args.push(y.value(&inputs[pos..pos + k]));
                    for &i in &inputs[pos..pos + k] {
                        deg_before += basis.degree(i);
                    }
                    pos += k;
                    next += 1;
                } else {
                    args.push(unit_vector(dim, inputs[pos]));
                    deg_before += basis.degree(inputs[pos]);
                    pos += 1;
                }
            }
            let refs: Vec<&Vector> = args.iter().collect();
            let v = x.evaluate_flat(&refs).expect("arity checked");
            super::add_scaled(&mut acc, &v, sign(odd));
        }
        for (o, c) in acc.iter().enumerate() {
            if !c.is_zero() {
                out.set(&inputs, o, *c);
            }
        }
    }
    out
}

/// `[x, y] = x{y} - (-1)^{d(x)d(y) + |x||y|} y{x}`.
pub fn bracket(basis: &GradedBasis, x: &StructureTensor, y: &StructureTensor) -> StructureTensor {
    let mut out = brace(basis, x, &[y]);
    let s = parity(d(x) * d(y) + x.super_degree * y.super_degree);
    out.axpy(-sign(s), &brace(basis, y, &[x]));
    out
}

pub fn sum(terms: &[(Q, StructureTensor)]) -> StructureTensor {
    let (_, first) = &terms[0];
    let mut out = StructureTensor::new(first.ty.clone(), first.super_degree, first.dim);
    for (c, t) in terms {
        out.axpy(*c, t);
    }
    out
}

/// The Hochschild complex of an ungraded associative algebra, with
/// `δx = [m, x]` and cup product `x·y = m{x, y}`.
#[derive(Clone, Debug)]
pub struct HochschildComplex {
    pub algebra: ModelAlgebra,
    pub arity_cap: usize,
}

impl HochschildComplex {
    pub fn new(algebra: ModelAlgebra, arity_cap: usize) -> Result<Self, Error> {
        let m = algebra.map("m").ok_or_else(|| Error::Model("model has no product `m`".into()))?;
        if m.arity() != 2 || m.super_degree != 0 {
            return Err(Error::Model("`m` must be an even binary product".into()));
        }
        if algebra.basis.elements.iter().any(|e| e.degree != 0) {
            return Err(Error::Model("the Hochschild model needs an ungraded algebra".into()));
        }
        if let Some(t) = associativity_witness(m) {
            let names: Vec<&str> = t.iter().map(|&i| algebra.basis.elements[i].name.as_str()).collect();
            return Err(Error::Model(format!("`m` is not associative on ({})", names.join(", "))));
        }
        Ok(HochschildComplex { algebra, arity_cap })
    }

    fn basis(&self) -> &GradedBasis {
        &self.algebra.basis
    }

    pub fn m(&self) -> &StructureTensor {
        self.algebra.map("m").expect("checked in new")
    }

    pub fn brace(&self, x: &StructureTensor, ys: &[&StructureTensor]) -> StructureTensor {
        brace(self.basis(), x, ys)
    }

    pub fn bracket(&self, x: &StructureTensor, y: &StructureTensor) -> StructureTensor {
        bracket(self.basis(), x, y)
    }

    /// `M(1)`.
    pub fn delta(&self, x: &StructureTensor) -> StructureTensor {
        self.bracket(self.m(), x)
    }

    /// `M(2)`.
    pub fn cup(&self, x: &StructureTensor, y: &StructureTensor) -> StructureTensor {
        self.brace(self.m(), &[x, y])
    }

    pub fn random_cochain<R: Rng>(&self, rng: &mut R, arity: usize) -> StructureTensor {
        StructureTensor::random(rng, Partition::singleton(arity), 0, self.basis(), 0.5)
    }

    /// Every cochain `e_inputs ↦ e_out` of arity `≤ arity_cap`.
    pub fn basis_cochains(&self) -> Vec<StructureTensor> {
        let dim = self.basis().dim();
        let mut out = Vec::new();
        for n in 0..=self.arity_cap {
            for inp in tuples(dim, n) {
                for o in 0..dim {
                    let mut t = StructureTensor::new(Partition::singleton(n), 0, dim);
                    t.set(&inp, o, Q::one());
                    out.push(t);
                }
            }
        }
        out
    }

    /// (i) `δδx`.
    pub fn identity_i(&self, x: &StructureTensor) -> StructureTensor {
        self.delta(&self.delta(x))
    }

    /// (ii) `δ(x·y) + δx·y + (-1)^{d(x)} x·δy`.
    pub fn identity_ii(&self, x: &StructureTensor, y: &StructureTensor) -> StructureTensor {
        sum(&[
            (Q::one(), self.delta(&self.cup(x, y))),
            (Q::one(), self.cup(&self.delta(x), y)),
            (sign(parity(d(x))), self.cup(x, &self.delta(y))),
        ])
    }

    /// (iii) the `(1|n)` component: `δ(x{Y}) - (δx){Y} - Σ ± x{.., δy_i, ..}
    /// - Σ ± x{.., y_i·y_{i+1}, ..} + (-1)^{d(x)d(y_1)} y_1·x{y_2..} + x{..y_{N-1}}·y_N`.
    pub fn identity_iii(&self, x: &StructureTensor, ys: &[&StructureTensor]) -> StructureTensor {
        let n = ys.len();
        let dx = d(x);
        let mut sigma = Vec::with_capacity(n + 1);
        sigma.push(0i64);
        for y in ys {
            sigma.push(sigma.last().unwrap() + d(y));
        }
        let mut terms = Vec::new();
        terms.push((Q::one(), self.delta(&self.brace(x, ys))));
        terms.push((-Q::one(), self.brace(&self.delta(x), ys)));
        for i in 0..n {
            let dy = self.delta(ys[i]);
            let mut v: Vec<&StructureTensor> = ys.to_vec();
            v[i] = &dy;
            terms.push((-sign(parity(dx + sigma[i])), self.brace(x, &v)));
        }
        for i in 0..n.saturating_sub(1) {
            let prod = self.cup(ys[i], ys[i + 1]);
            let mut v: Vec<&StructureTensor> = ys[..i].to_vec();
            v.push(&prod);
            v.extend_from_slice(&ys[i + 2..]);
            terms.push((-sign(parity(dx + sigma[i])), self.brace(x, &v)));
        }
        if n >= 1 {
            let rest = self.brace(x, &ys[1..]);
            terms.push((sign(parity(dx * d(ys[0]))), self.cup(ys[0], &rest)));
            let init = self.brace(x, &ys[..n - 1]);
            terms.push((Q::one(), self.cup(&init, ys[n - 1])));
        }
        sum(&terms)
    }

    /// (iv) `(x·y)·z + (-1)^{d(x)} x·(y·z)`.
    pub fn identity_iv(&self, x: &StructureTensor, y: &StructureTensor, z: &StructureTensor) -> StructureTensor {
        sum(&[
            (Q::one(), self.cup(&self.cup(x, y), z)),
            (sign(parity(d(x))), self.cup(x, &self.cup(y, z))),
        ])
    }

    /// (v) `(x1·x2){Y} + s1 (x1{Y})·x2 + s2 x1·(x2{Y})`.
    pub fn identity_v(
        &self,
        x1: &StructureTensor,
        x2: &StructureTensor,
        ys: &[&StructureTensor],
        s1: bool,
        s2: bool,
    ) -> StructureTensor {
        sum(&[
            (Q::one(), self.brace(&self.cup(x1, x2), ys)),
            (sign(s1), self.cup(&self.brace(x1, ys), x2)),
            (sign(s2), self.cup(x1, &self.brace(x2, ys))),
        ])
    }

    /// `(x∘y)∘z - x∘(y∘z)` for `x∘y = x{y}`.
    pub fn associator(&self, x: &StructureTensor, y: &StructureTensor, z: &StructureTensor) -> StructureTensor {
        let mut out = self.brace(&self.brace(x, &[y]), &[z]);
        out.axpy(-Q::one(), &self.brace(x, &[&self.brace(y, &[z])]));
        out
    }

    /// `[x,[y,z]] - [[x,y],z] - (-1)^{d(x)d(y)} [y,[x,z]]`.
    pub fn jacobiator(&self, x: &StructureTensor, y: &StructureTensor, z: &StructureTensor) -> StructureTensor {
        sum(&[
            (Q::one(), self.bracket(x, &self.bracket(y, z))),
            (-Q::one(), self.bracket(&self.bracket(x, y), z)),
            (-sign(parity(d(x) * d(y))), self.bracket(y, &self.bracket(x, z))),
        ])
    }

    fn describe(&self, ts: &[&StructureTensor]) -> String {
        let parts: Vec<String> = ts.iter().map(|t| self.render(t)).collect();
        parts.join("; ")
    }

    pub fn render(&self, t: &StructureTensor) -> String {
        let names = |inp: &[usize]| -> String {
            inp.iter().map(|&i| self.basis().elements[i].name.as_str()).collect::<Vec<_>>().join(",")
        };
        let mut s = format!("arity {}: ", t.arity());
        let mut first = true;
        for (inp, v) in t.entries() {
            if !first {
                s.push_str(", ");
            }
            first = false;
            s.push_str(&format!("({}) -> {}", names(inp), super::fmt_vector(self.basis(), v)));
        }
        if first {
            s.push('0');
        }
        s
    }

    /// The checks of the Hochschild G∞ structure: (i)-(iv) vanish, (v) has
    /// a counterexample, composition is right pre-Lie and the bracket is Lie.
    pub fn verify(&self, seed: u64, samples: usize) -> Report {
        let mut rng = seeded(seed);
        let cap = self.arity_cap;
        let mut checks = Vec::new();

        let basis_maps = self.basis_cochains();
        let w = basis_maps.iter().find(|x| !self.identity_i(x).is_zero()).map(|x| self.describe(&[x]));
        checks.push(CheckResult::vanishing("(i) differential squares to zero on basis cochains", basis_maps.len(), w));

        let draw = |rng: &mut rand_chacha::ChaCha8Rng| {
            let n = rng.gen_range(0..=cap);
            self.random_cochain(rng, n)
        };

        let mut w = None;
        for _ in 0..samples {
            let (x, y) = (draw(&mut rng), draw(&mut rng));
            if w.is_none() && !self.identity_ii(&x, &y).is_zero() {
                w = Some(self.describe(&[&x, &y]));
            }
        }
        checks.push(CheckResult::vanishing("(ii) differential is a derivation of the cup product", samples, w));

        for n in 1..=2usize {
            let mut w = None;
            for _ in 0..samples {
                let x = draw(&mut rng);
                let ys: Vec<StructureTensor> = (0..=n).map(|_| draw(&mut rng)).collect();
                let refs: Vec<&StructureTensor> = ys.iter().collect();
                if w.is_none() && !self.identity_iii(&x, &refs).is_zero() {
                    w = Some(self.describe(&vec_of(&x, &refs)));
                }
            }
            checks.push(CheckResult::vanishing(&format!("(iii) component (1|{})", n + 1), samples, w));
        }

        let mut w = None;
        for _ in 0..samples {
            let (x, y, z) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
            if w.is_none() && !self.identity_iv(&x, &y, &z).is_zero() {
                w = Some(self.describe(&[&x, &y, &z]));
            }
        }
        checks.push(CheckResult::vanishing("(iv) cup product is associative", samples, w));

        let (w, tried) = self.search_v(&mut rng, samples.max(20) * 5);
        checks.push(CheckResult::failing("(v) component (2|2) fails for every choice of signs", tried, w));

        let mut w = None;
        for _ in 0..samples {
            let (x, y, z) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
            let mut r = self.associator(&x, &y, &z);
            r.axpy(-sign(parity(d(&y) * d(&z))), &self.associator(&x, &z, &y));
            if w.is_none() && !r.is_zero() {
                w = Some(self.describe(&[&x, &y, &z]));
            }
        }
        checks.push(CheckResult::vanishing("composition is right pre-Lie", samples, w));

        let mut w = None;
        for _ in 0..samples {
            let (x, y, z) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
            if w.is_none() && !self.jacobiator(&x, &y, &z).is_zero() {
                w = Some(self.describe(&[&x, &y, &z]));
            }
        }
        checks.push(CheckResult::vanishing("Gerstenhaber bracket satisfies Jacobi", samples, w));

        Report { suite: "hochschild".into(), model: self.algebra.name.clone(), seed, checks }
    }

    /// Random `x1, x2, y1, y2` for which (v) is nonzero under all four sign
    /// choices.
    pub fn search_v<R: Rng>(&self, rng: &mut R, attempts: usize) -> (Option<String>, usize) {
        let cap = self.arity_cap.max(1);
        for k in 1..=attempts {
            let draw = |rng: &mut R| {
                let n = rng.gen_range(0..=cap);
                self.random_cochain(rng, n)
            };
            let (x1, x2, y1, y2) = (draw(rng), draw(rng), draw(rng), draw(rng));
            let ys = [&y1, &y2];
            let all_fail = [(false, false), (false, true), (true, false), (true, true)]
                .iter()
                .all(|&(s1, s2)| !self.identity_v(&x1, &x2, &ys, s1, s2).is_zero());
            if all_fail {
                return (Some(self.describe(&[&x1, &x2, &y1, &y2])), k);
            }
        }
        (None, attempts)
    }
}

fn vec_of<'a>(x: &'a StructureTensor, ys: &[&'a StructureTensor]) -> Vec<&'a StructureTensor> {
    let mut v = alloc::vec![x];
    v.extend_from_slice(ys);
    v
}
