//! The operators `Φ^r_Δ` of an odd operator on a (super)algebra and the
//! truncated G∞ structure `(Δ, Φ², Φ², Φ³)`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand::Rng;

use super::hochschild::bracket;
use super::library::{compose_linear, grassmann2};
use super::{seeded, small_coeff, tuples, unit_vector, CheckResult, GradedBasis, ModelAlgebra, Report, StructureTensor, Vector};
use crate::error::Error;
use crate::partition::Partition;
use crate::terms::Q;

fn odd(n: i64) -> bool {
    n.rem_euclid(2) == 1
}

fn sign(o: bool) -> Q {
    if o {
        -Q::one()
    } else {
        Q::one()
    }
}

/// An algebra with an arbitrary even product `m`.
#[derive(Clone, Debug)]
pub struct Superalgebra {
    pub basis: GradedBasis,
    pub m: StructureTensor,
}

impl Superalgebra {
    pub fn from_model(alg: &ModelAlgebra) -> Result<Self, Error> {
        let m = alg.map("m").ok_or_else(|| Error::Model("model has no product `m`".into()))?;
        if m.arity() != 2 || odd(m.super_degree) {
            return Err(Error::Model("`m` must be an even binary product".into()));
        }
        Ok(Superalgebra { basis: alg.basis.clone(), m: m.clone() })
    }

    /// Basis `u` (even), `v`, `w` (odd) with a random even product.
    pub fn random<R: Rng>(rng: &mut R) -> Self {
        let basis = GradedBasis::new(&[("u", 0), ("v", 1), ("w", 1)], Some(2)).unwrap();
        let m = StructureTensor::random(rng, Partition::singleton(2), 0, &basis, 0.5);
        Superalgebra { basis, m }
    }

    fn dim(&self) -> usize {
        self.basis.dim()
    }

    fn mul(&self, a: &Vector, b: &Vector) -> Vector {
        self.m.evaluate_flat(&[a, b]).expect("binary")
    }

    fn apply(t: &StructureTensor, args: &[&Vector]) -> Vector {
        t.evaluate_flat(args).expect("arity")
    }

    fn tensor(&self, arity: usize, sup: i64, f: impl Fn(&[usize]) -> Vector) -> StructureTensor {
        let mut out = StructureTensor::new(Partition::singleton(arity), sup, self.dim());
        for inp in tuples(self.dim(), arity) {
            for (o, c) in f(&inp).iter().enumerate() {
                if !c.is_zero() {
                    out.set(&inp, o, *c);
                }
            }
        }
        out
    }

    /// `Φ²_T(a,b) = T(ab) - T(a)b - (-1)^{|T||a|} a T(b)`.
    pub fn phi2(&self, t: &StructureTensor) -> StructureTensor {
        let e = |i| unit_vector(self.dim(), i);
        self.tensor(2, t.super_degree, |inp| {
            let (a, b) = (e(inp[0]), e(inp[1]));
            let da = self.basis.degree(inp[0]);
            let mut v = Self::apply(t, &[&self.mul(&a, &b)]);
            super::add_scaled(&mut v, &self.mul(&Self::apply(t, &[&a]), &b), -Q::one());
            super::add_scaled(&mut v, &self.mul(&a, &Self::apply(t, &[&b])), -sign(odd(t.super_degree * da)));
            v
        })
    }

    /// `Φ³_T(a,b,c) = Φ²_T(a,bc) - Φ²_T(a,b)c - (-1)^{|b|(|T|+|a|)} b Φ²_T(a,c)`.
    pub fn phi3(&self, t: &StructureTensor) -> StructureTensor {
        let p2 = self.phi2(t);
        let e = |i| unit_vector(self.dim(), i);
        self.tensor(3, t.super_degree, |inp| {
            let (a, b, c) = (e(inp[0]), e(inp[1]), e(inp[2]));
            let (da, db) = (self.basis.degree(inp[0]), self.basis.degree(inp[1]));
            let mut v = Self::apply(&p2, &[&a, &self.mul(&b, &c)]);
            super::add_scaled(&mut v, &self.mul(&Self::apply(&p2, &[&a, &b]), &c), -Q::one());
            super::add_scaled(
                &mut v,
                &self.mul(&b, &Self::apply(&p2, &[&a, &c])),
                -sign(odd(db * (t.super_degree + da))),
            );
            v
        })
    }

    /// `ad(φ){a}`: the map `b ↦ φ(a, b)`, for a basis element `a`.
    pub fn ad(&self, phi: &StructureTensor, a: usize) -> StructureTensor {
        let ea = unit_vector(self.dim(), a);
        self.tensor(1, phi.super_degree + self.basis.degree(a), |inp| {
            Self::apply(phi, &[&ea, &unit_vector(self.dim(), inp[0])])
        })
    }

    pub fn bracket(&self, x: &StructureTensor, y: &StructureTensor) -> StructureTensor {
        bracket(&self.basis, x, y)
    }

    /// Residuals of the three equations relating `Φ_{[T,U]}` to brackets of
    /// `Φ_T` and `Φ_U`; each must vanish.
    pub fn bracket_residuals(&self, t: &StructureTensor, u: &StructureTensor) -> [StructureTensor; 3] {
        let mut tu = compose_linear(t, u);
        tu.axpy(Q::one(), &compose_linear(u, t));
        let mut r1 = tu.clone();
        r1.axpy(-Q::one(), &self.bracket(t, u));

        let mut r2 = self.phi2(&tu);
        r2.axpy(-Q::one(), &self.bracket(t, &self.phi2(u)));
        r2.axpy(-Q::one(), &self.bracket(u, &self.phi2(t)));

        let mut r3 = self.phi3(&tu);
        r3.axpy(-Q::one(), &self.bracket(t, &self.phi3(u)));
        r3.axpy(-Q::one(), &self.bracket(u, &self.phi3(t)));
        r3.axpy(-Q::one(), &self.ad_bracket_term(&self.phi2(t), &self.phi2(u)));
        r3.axpy(-Q::one(), &self.ad_bracket_term(&self.phi2(u), &self.phi2(t)));
        [r1, r2, r3]
    }

    /// `(a,b,c) ↦ [p, ad(q){a}]{b,c}`.
    pub fn ad_bracket_term(&self, p: &StructureTensor, q: &StructureTensor) -> StructureTensor {
        let dim = self.dim();
        let mut out = StructureTensor::new(Partition::singleton(3), p.super_degree + q.super_degree, dim);
        for a in 0..dim {
            let br = self.bracket(p, &self.ad(q, a));
            for (inp, v) in br.entries() {
                let mut key = alloc::vec![a];
                key.extend_from_slice(inp);
                for (o, c) in v.iter().enumerate() {
                    if !c.is_zero() {
                        out.set(&key, o, *c);
                    }
                }
            }
        }
        out
    }

    pub fn odd_square_zero(&self, delta: &StructureTensor) -> Result<(), Error> {
        if delta.arity() != 1 || !odd(delta.super_degree) {
            return Err(Error::Model("Δ must be an odd linear operator".into()));
        }
        delta.check_homogeneous(&self.basis)?;
        if !compose_linear(delta, delta).is_zero() {
            return Err(Error::Model("Δ does not square to zero".into()));
        }
        Ok(())
    }

    /// A seeded odd operator with `Δ² = 0`: off-diagonal blocks `B = u vᵀ`
    /// and `C = p qᵀ` with `v ⟂ p` and `q ⟂ u`.
    pub fn random_square_zero<R: Rng>(&self, rng: &mut R) -> StructureTensor {
        let even: Vec<usize> = (0..self.dim()).filter(|&i| !odd(self.basis.degree(i))).collect();
        let oddb: Vec<usize> = (0..self.dim()).filter(|&i| odd(self.basis.degree(i))).collect();
        loop {
            let rand_vec = |rng: &mut R, n: usize| -> Vec<Q> {
                (0..n).map(|_| if rng.gen_bool(0.7) { small_coeff(rng) } else { Q::zero() }).collect()
            };
            let perp = |rng: &mut R, w: &Vec<Q>| -> Vec<Q> {
                let r = rand_vec(rng, w.len());
                let ww: Q = w.iter().map(|x| *x * *x).sum();
                if ww.is_zero() {
                    return r;
                }
                let rw: Q = r.iter().zip(w).map(|(x, y)| *x * *y).sum();
                r.iter().zip(w).map(|(x, y)| *x - rw / ww * *y).collect()
            };
            let u = rand_vec(rng, even.len());
            let v = rand_vec(rng, oddb.len());
            let p = perp(rng, &v);
            let q = perp(rng, &u);
            let mut delta = StructureTensor::new(Partition::singleton(1), 1, self.dim());
            for (j, &o) in oddb.iter().enumerate() {
                for (i, &e) in even.iter().enumerate() {
                    delta.set(&[o], e, u[i] * v[j]);
                    delta.set(&[e], o, p[j] * q[i]);
                }
            }
            if !delta.is_zero() && self.odd_square_zero(&delta).is_ok() {
                return delta;
            }
        }
    }
}

/// A superalgebra with an odd square-zero operator.
#[derive(Clone, Debug)]
pub struct PhiModel {
    pub algebra: Superalgebra,
    pub delta: StructureTensor,
}

impl PhiModel {
    pub fn new(algebra: Superalgebra, delta: StructureTensor) -> Result<Self, Error> {
        algebra.odd_square_zero(&delta)?;
        Ok(PhiModel { algebra, delta })
    }

    pub fn phi2(&self) -> StructureTensor {
        self.algebra.phi2(&self.delta)
    }

    pub fn phi3(&self) -> StructureTensor {
        self.algebra.phi3(&self.delta)
    }

    pub fn identity_i(&self) -> StructureTensor {
        compose_linear(&self.delta, &self.delta)
    }

    /// (ii) `ΔΦ²(a,b) + Φ²(Δa,b) + (-1)^{|a|} Φ²(a,Δb)`, written out.
    pub fn identity_ii(&self) -> StructureTensor {
        let alg = &self.algebra;
        let p2 = self.phi2();
        let dim = alg.dim();
        let d = |v: &Vector| self.delta.evaluate_flat(&[v]).expect("linear");
        alg.tensor(2, 0, |inp| {
            let (a, b) = (unit_vector(dim, inp[0]), unit_vector(dim, inp[1]));
            let mut v = d(&p2.evaluate_flat(&[&a, &b]).unwrap());
            super::add_scaled(&mut v, &p2.evaluate_flat(&[&d(&a), &b]).unwrap(), Q::one());
            super::add_scaled(&mut v, &p2.evaluate_flat(&[&a, &d(&b)]).unwrap(), sign(odd(alg.basis.degree(inp[0]))));
            v
        })
    }

    /// (iii) the same statement for `Φ(1|1)`, as the bracket `[Δ, Φ²]`.
    pub fn identity_iii(&self) -> StructureTensor {
        self.algebra.bracket(&self.delta, &self.phi2())
    }

    /// (iv) `[Δ, Φ³]{a,b,c} + [Φ², ad(Φ²){a}]{b,c}`.
    pub fn identity_iv(&self) -> StructureTensor {
        let p2 = self.phi2();
        let mut r = self.algebra.bracket(&self.delta, &self.phi3());
        r.axpy(Q::one(), &self.algebra.ad_bracket_term(&p2, &p2));
        r
    }

    /// `Φ²_Δ = [Δ, m]{a,b}`.
    pub fn bracket_form_residual(&self) -> StructureTensor {
        let mut r = self.phi2();
        r.axpy(-Q::one(), &self.algebra.bracket(&self.delta, &self.algebra.m));
        r
    }
}

/// `∂/∂e1` on the Grassmann algebra: an odd derivation.
pub fn grassmann_derivation() -> (Superalgebra, StructureTensor) {
    let alg = Superalgebra::from_model(&grassmann2()).unwrap();
    let idx = |n: &str| alg.basis.index_of(n).unwrap();
    let mut d = StructureTensor::new(Partition::singleton(1), 1, alg.dim());
    d.set(&[idx("e1")], idx("1"), Q::one());
    d.set(&[idx("e12")], idx("e2"), Q::one());
    (alg, d)
}

fn render(basis: &GradedBasis, t: &StructureTensor) -> String {
    let mut parts = Vec::new();
    for (inp, v) in t.entries() {
        let names: Vec<&str> = inp.iter().map(|&i| basis.elements[i].name.as_str()).collect();
        parts.push(format!("({}) -> {}", names.join(","), super::fmt_vector(basis, v)));
    }
    if parts.is_empty() {
        return "0".into();
    }
    parts.join(", ")
}

/// (i)-(iv) on `samples` seeded square-zero operators, the bracket identity
/// on random odd `T`, `U`, and the degenerate derivation case.
pub fn verify(alg: &Superalgebra, name: &str, seed: u64, samples: usize) -> Report {
    let mut rng = seeded(seed);
    let deltas: Vec<StructureTensor> = (0..samples).map(|_| alg.random_square_zero(&mut rng)).collect();
    let models: Vec<PhiModel> =
        deltas.into_iter().map(|d| PhiModel::new(alg.clone(), d).expect("square zero by construction")).collect();
    let mut checks = Vec::new();
    type Ident = fn(&PhiModel) -> StructureTensor;
    let idents: [(&str, Ident); 5] = [
        ("(i) Δ² = 0", PhiModel::identity_i),
        ("(ii) Δ is a derivation of Φ²", PhiModel::identity_ii),
        ("(iii) Δ is a derivation of Φ(1|1)", PhiModel::identity_iii),
        ("(iv) component (1|2)", PhiModel::identity_iv),
        ("Φ² = [Δ, m]", PhiModel::bracket_form_residual),
    ];
    for (label, f) in idents {
        let w = models.iter().find_map(|pm| {
            let r = f(pm);
            (!r.is_zero()).then(|| format!("Δ = {}; residual {}", render(&alg.basis, &pm.delta), render(&alg.basis, &r)))
        });
        checks.push(CheckResult::vanishing(label, models.len(), w));
    }
    let trivial = models.iter().all(|pm| pm.phi2().is_zero());
    checks.push(CheckResult::vanishing(
        "some Δ has Φ² ≠ 0",
        models.len(),
        trivial.then(|| "every sampled Δ is a derivation".into()),
    ));

    let mut w = None;
    for _ in 0..samples {
        let t = StructureTensor::random(&mut rng, Partition::singleton(1), 1, &alg.basis, 0.6);
        let u = StructureTensor::random(&mut rng, Partition::singleton(1), 1, &alg.basis, 0.6);
        if w.is_none() {
            if let Some(k) = alg.bracket_residuals(&t, &u).iter().position(|r| !r.is_zero()) {
                w = Some(format!(
                    "equation {}: T = {}; U = {}",
                    k + 1,
                    render(&alg.basis, &t),
                    render(&alg.basis, &u)
                ));
            }
        }
    }
    checks.push(CheckResult::vanishing("bracket identity for odd T, U", samples, w));

    let (galg, der) = grassmann_derivation();
    let deg = PhiModel::new(galg, der).expect("square zero");
    let w = (!deg.phi2().is_zero() || !deg.phi3().is_zero()).then(|| "Φ² or Φ³ nonzero for ∂/∂e1".into());
    checks.push(CheckResult::vanishing("Δ a derivation: Φ(2) = Φ(1|2) = 0", 1, w));

    Report { suite: "phi".into(), model: name.into(), seed, checks }
}
