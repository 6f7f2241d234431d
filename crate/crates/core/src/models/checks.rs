//! Checks on the A∞ and L∞ parts of the master equation.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use super::library::{associativity_witness, grassmann2};
use super::phi::grassmann_derivation;
use super::{is_zero, realize, seeded, Binding, CheckResult, ModelAlgebra, Report};
use crate::composition::{expand_chain, ChainItem};
use crate::error::Error;
use crate::identity::{master_identity, IdentityOptions, SymbolFilter, RULE};
use crate::partition::Partition;
use crate::sign::SignRule;
use crate::terms::{generator_name, Degree, FormalSum, Generator, MapSymbol};

fn product_symbol() -> MapSymbol {
    MapSymbol::new("m", Partition::singleton(2), Degree::Known(0))
}

/// `{m}{m}{a,b,c}` for an even binary `m` on ungraded arguments.
pub fn brace_associativity_sum() -> Result<FormalSum, Error> {
    let gens: Vec<ChainItem> =
        (0..3).map(|k| ChainItem::Gen(Generator::new(&generator_name(k), Degree::Known(0)))).collect();
    expand_chain(SignRule::Bigraded, &ChainItem::map(product_symbol()), &[vec![ChainItem::map(product_symbol())], gens])
}

/// `{m}{m}{a,b,c}` evaluated on every basis triple; `None` when it vanishes.
pub fn brace_associativity_witness(alg: &ModelAlgebra) -> Result<Option<String>, Error> {
    let s = brace_associativity_sum()?;
    let m = alg.map("m").ok_or_else(|| Error::Model("model has no product `m`".into()))?;
    let dim = alg.dim();
    for t in super::tuples(dim, 3) {
        let mut b = Binding::default();
        b.maps.insert("m(2)".into(), m.clone());
        for (k, &i) in t.iter().enumerate() {
            b.elements.insert(generator_name(k), (super::unit_vector(dim, i), alg.basis.degree(i)));
        }
        let v = realize(&s, &b, dim)?;
        if !is_zero(&v) {
            let names: Vec<&str> = t.iter().map(|&i| alg.basis.elements[i].name.as_str()).collect();
            return Ok(Some(format!("({}) -> {}", names.join(","), super::fmt_vector(&alg.basis, &v))));
        }
    }
    Ok(None)
}

/// The Grassmann algebra with `m(1) = ∂/∂e1`, `m(2)` the product and
/// `m(k) = 0` for `k ≥ 3`: a dg algebra, hence A∞.
pub fn dg_grassmann_binding() -> (ModelAlgebra, Binding) {
    let alg = grassmann2();
    let (_, der) = grassmann_derivation();
    let mut b = Binding::default();
    b.maps.insert("m(1)".into(), der);
    b.maps.insert("m(2)".into(), alg.map("m").unwrap().clone());
    for k in 3..=6 {
        b.zero_maps.push(format!("m({k})"));
    }
    (alg, b)
}

fn bind_random_args<R: Rng>(rng: &mut R, alg: &ModelAlgebra, b: &mut Binding, n: usize) {
    let degrees = alg.basis.degrees();
    b.elements.clear();
    for k in 0..n {
        let deg = degrees[rng.gen_range(0..degrees.len())];
        b.elements.insert(generator_name(k), (alg.basis.random_homogeneous(rng, deg), deg));
    }
}

/// `Σ_{i+j=n+1} {m̃(i)}{m̃(j)}{a_1}...{a_n}` with separate braces.
pub fn l_infinity_sum(n: usize) -> Result<FormalSum, Error> {
    let mut out = FormalSum::zero();
    for i in 1..=n {
        let j = n + 1 - i;
        let head = ChainItem::tilde(MapSymbol::structure(Partition::singleton(i)));
        let mut groups = vec![vec![ChainItem::tilde(MapSymbol::structure(Partition::singleton(j)))]];
        for k in 0..n {
            groups.push(vec![ChainItem::Gen(Generator::symbolic(&generator_name(k)))]);
        }
        out.add_assign(&expand_chain(RULE, &head, &groups)?);
    }
    Ok(out)
}

/// A∞ and L∞ consequences of the master equation on the dg Grassmann
/// algebra, plus `{m}{m} = 0` against associativity on the library.
pub fn verify(seed: u64, samples: usize, max_arity: usize) -> Result<Report, Error> {
    let mut rng = seeded(seed);
    let mut checks = Vec::new();

    for alg in [super::library::dual_numbers(), super::library::upper_triangular(), super::library::nonassoc_witness()] {
        let assoc = associativity_witness(alg.map("m").unwrap()).is_none();
        let w = brace_associativity_witness(&alg)?;
        let name = format!("{{m}}{{m}}{{a,b,c}} = 0 iff associative on {}", alg.name);
        let agree = assoc == w.is_none();
        checks.push(CheckResult {
            name,
            passed: agree,
            samples: alg.dim().pow(3),
            witness: w.or_else(|| (!agree).then(|| "vanishes on a non-associative product".into())),
        });
    }

    let (alg, mut b) = dg_grassmann_binding();
    let options = IdentityOptions { filter: SymbolFilter::Singletons, ..IdentityOptions::default() };
    for n in 1..=max_arity {
        let total = master_identity(&Partition::singleton(n), options)?.total();
        let mut w = None;
        for _ in 0..samples {
            bind_random_args(&mut rng, &alg, &mut b, n);
            let v = realize(&total, &b, alg.dim())?;
            if w.is_none() && !is_zero(&v) {
                w = Some(format!("residual {}", super::fmt_vector(&alg.basis, &v)));
            }
        }
        checks.push(CheckResult::vanishing(&format!("A∞ component ({n}) on dg Grassmann"), samples, w));
    }

    for n in 1..=max_arity.min(4) {
        let s = l_infinity_sum(n)?;
        let mut w = None;
        for _ in 0..samples {
            bind_random_args(&mut rng, &alg, &mut b, n);
            let v = realize(&s, &b, alg.dim())?;
            if w.is_none() && !is_zero(&v) {
                w = Some(format!("residual {}", super::fmt_vector(&alg.basis, &v)));
            }
        }
        checks.push(CheckResult::vanishing(&format!("L∞ relation {{m̃}}{{m̃}}{{a1}}...{{an}}, n = {n}"), samples, w));
    }

    Ok(Report { suite: "ainfinity".into(), model: alg.name, seed, checks })
}
