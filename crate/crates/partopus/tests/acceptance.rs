//! One line per acceptance criterion; exits non-zero if any criterion fails.

use std::collections::BTreeSet;

use num_traits::Signed;

use partopus::cli::run;
use partopus_core::composition::{
    compose_multi, compose_pair, expand_chain, formal_arguments, subdivisions_for_slot, ChainItem, Operator,
};
use partopus_core::identity::{factorizations, master_identity, FactorKind, IdentityOptions};
use partopus_core::models::hochschild::HochschildComplex;
use partopus_core::models::library::{dual_numbers, grassmann2, upper_triangular};
use partopus_core::models::numeric::coherence;
use partopus_core::models::phi::{self, grassmann_derivation, PhiModel, Superalgebra};
use partopus_core::partition::{
    higher_product, jacobi_holds_up_to_repetition, pre_lie_asymmetry, pre_lie_defect, regular_up_to, star,
};
use partopus_core::text::{parse_sum, StructureMaps, Symbolic};
use partopus_core::*;

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

fn v(s: &str) -> PartitionVector {
    s.parse().unwrap()
}

fn op(name: &str, ty: &str) -> Operator {
    Operator::symbol(MapSymbol::symbolic(name, p(ty)))
}

fn criterion_1() -> Outcome {
    let cases = [
        ("(1|1|4)", "(1|3)", "(1|3|1|4)+(1|1|3|4)+(1|1|4|3)+(1|1|2|5)+(1|1|1|6)", 5),
        ("(3)", "(2|4)", "(2|6)+(3|5)+(4|4)", 3),
        ("(1|2)", "(2|3)", "(2|3|2)+(1|3|3)+(1|2|4)", 3),
        ("(2)", "(1|0|3)", "(1|0|4)+(1|1|3)+(2|0|3)", 3),
        ("(1|0|3)", "(2)", "(2|0|3)+(1|0|4)", 2),
        ("(4)", "(1|0)", "(1|3)+(2|2)+(3|1)+(4|0)", 4),
    ];
    for (a, b, want, n) in cases {
        let got = star(&p(a), &p(b));
        ensure!(got == v(want) && got.len() == n, "{a} * {b} = {got}");
    }
    for q in ["(2|4)", "(1)", "(1|0|3)"] {
        ensure!(star(&p("(0)"), &p(q)).is_zero(), "(0) * {q} is not zero");
    }
    let n = higher_product(&p("(1|2)"), &p("(2|3)"), &[vec![p("(2)"), p("(3|4)")]]).map_err(|e| e.to_string())?;
    ensure!(n == v("(5|4|3)+(2|5|5)+(2|6|4)"), "N(1|2) = {n}");
    let o = run(["partopus", "product", "(3)", "(2|4)"]);
    ensure!(o.stdout == "(2|6)+(3|5)+(4|4)\n", "cli printed {}", o.stdout);
    Ok(())
}

fn criterion_2() -> Outcome {
    let four = regular_up_to(4);
    for a in &four {
        for b in &four {
            for c in &four {
                ensure!(pre_lie_asymmetry(a, b, c).is_zero(), "pre-Lie fails at {a} {b} {c}");
            }
        }
    }
    let three = regular_up_to(3);
    for a in &three {
        for b in &three {
            for c in &three {
                ensure!(jacobi_holds_up_to_repetition(a, b, c), "Jacobi fails at {a} {b} {c}");
            }
        }
    }
    for i in 2..=4 {
        for j in 1..=3 {
            let d = pre_lie_defect(&Partition::singleton(i), &p("(0)"), &Partition::singleton(j));
            ensure!(d == PartitionVector::basis(Partition::singleton(i + j - 2)), "(({i}),(0),({j})) gives {d}");
        }
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    let got = compose_pair(SignRule::Bigraded, &op("x", "(3)"), &op("y", "(2|4)")).map_err(|e| e.to_string())?;
    let counts: Vec<(String, usize)> = got.iter().map(|(t, s)| (t.to_string(), s.len())).collect();
    let want = [("(2|6)", 3), ("(3|5)", 6), ("(4|4)", 3)].map(|(t, n)| (t.to_string(), n));
    ensure!(counts == want, "{{x(3)}}{{y(2|4)}} components {counts:?}");

    let unit = Operator::symbol(MapSymbol::identity(p("(1|0)")));
    let subs = subdivisions_for_slot(&p("(2|2)"), 4, &p("(1|0)")).map_err(|e| e.to_string())?;
    let got = compose_pair(SignRule::Bigraded, &op("x", "(4)"), &unit).map_err(|e| e.to_string())?;
    let terms = got[&p("(2|2)")].normalize();
    ensure!(subs.len() == 6 && terms.len() == 6, "{{x(4)}}{{y(1|0)}} at (2|2): {} subdivisions, {} terms", subs.len(), terms.len());

    let id = Operator::symbol(MapSymbol::identity(p("(1)")));
    for i in 1..=5 {
        let x = op("x", &format!("({i})"));
        let t = Partition::singleton(i);
        let got = compose_pair(SignRule::Bigraded, &x, &id).map_err(|e| e.to_string())?;
        let plain = x.apply(SignRule::Bigraded, &formal_arguments(&t)).map_err(|e| e.to_string())?;
        ensure!(got[&t].normalize() == plain.scale(Q::from_integer(i as i128)), "{{x({i})}}{{id}} is not {i} x({i})");
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    let sym = |n: &str, t: &str| ChainItem::map(MapSymbol::symbolic(n, p(t)));
    let gens: Vec<ChainItem> = "abcdef".chars().map(|c| ChainItem::Gen(Generator::symbolic(&c.to_string()))).collect();
    let two = expand_chain(SignRule::Bigraded, &sym("x", "(3)"), &[vec![sym("y", "(2)"), sym("z", "(3)")], gens.clone()])
        .map_err(|e| e.to_string())?;
    let display = parse_sum(
        "(-1)^{|z(3)||a|+|z(3)||b|} x(3){y(2){a,b},z(3){c,d,e},f} \
         + (-1)^{|z(3)||a|+|z(3)||b|+|z(3)||c|} x(3){y(2){a,b},c,z(3){d,e,f}} \
         - (-1)^{|y(2)||a|+|z(3)||a|+|z(3)||b|+|z(3)||c|} x(3){a,y(2){b,c},z(3){d,e,f}}",
        &Symbolic,
    )
    .map_err(|e| e.to_string())?;
    ensure!(two == display, "{{x}}{{y,z}}{{a..f}} = {two}");
    let multi = compose_multi(SignRule::Bigraded, &op("x", "(3)"), &[op("y", "(2)"), op("z", "(3)")])
        .map_err(|e| e.to_string())?;
    ensure!(multi.get(&p("(6)")) == Some(&display), "composition route differs");
    let chain = expand_chain(SignRule::Bigraded, &sym("x", "(3)"), &[vec![sym("y", "(2)")], vec![sym("z", "(3)")], gens])
        .map_err(|e| e.to_string())?;
    ensure!(chain.len() == 12, "{{x}}{{y}}{{z}} has {} terms", chain.len());
    Ok(())
}

const TABLE: &[(&str, &str, usize)] = &[
    ("(1)", "(1|2|3)", 1),
    ("(1|2|3)", "(1)", 6),
    ("(2)", "(1|1|3)", 2),
    ("(1|1|3)", "(2)", 1),
    ("(2)", "(1|2|2)", 2),
    ("(1|2|2)", "(2)", 2),
    ("(3)", "(1|1|2)", 4),
    ("(3)", "(1|2|1)", 3),
    ("(1|2|1)", "(3)", 1),
    ("(4)", "(1|1|1)", 6),
    ("(1|1)", "(2|3)", 1),
    ("(2|3)", "(1|1)", 2),
    ("(1|2)", "(1|3)", 2),
    ("(1|3)", "(1|2)", 5),
    ("(1|2)", "(2|2)", 2),
    ("(1|3)", "(2|1)", 3),
    ("(1|4)", "(1|1)", 6),
];

fn criterion_5() -> Outcome {
    let t = p("(1|2|3)");
    let fs = factorizations(&t).map_err(|e| e.to_string())?;
    let regular: BTreeSet<(Partition, Partition, usize)> = fs
        .iter()
        .filter(|f| f.kind == FactorKind::Regular)
        .map(|f| (f.outer.clone(), f.inner.clone(), f.subdivisions))
        .collect();
    let want: BTreeSet<(Partition, Partition, usize)> = TABLE.iter().map(|(a, b, n)| (p(a), p(b), *n)).collect();
    ensure!(regular == want, "Type I table differs");
    ensure!(regular.iter().map(|r| r.2).sum::<usize>() == 49, "Type I total is not 49");

    let r = master_identity(&t, IdentityOptions::default()).map_err(|e| e.to_string())?;
    let coeffs: BTreeSet<i64> = r.type_ii_entries.iter().map(|e| e.coefficient).collect();
    ensure!(coeffs == BTreeSet::from([3, 5]), "Type II coefficients {coeffs:?}");
    let kvz = master_identity(&t, IdentityOptions { include_type_ii_coefficients: false, ..Default::default() })
        .map_err(|e| e.to_string())?;
    ensure!(kvz.type_ii.iter().all(|(_, _, c)| c.abs() == Q::from_integer(1)), "--kvz keeps coefficients");
    let o = run(["partopus", "identity", "(1|2|3)", "--kvz", "--format", "json"]);
    ensure!(o.status == 0 && o.stdout.contains("\"coefficient\":1") && !o.stdout.contains("\"coefficient\":5"), "cli --kvz");

    let r = master_identity(&p("(1|2)"), IdentityOptions::default()).map_err(|e| e.to_string())?;
    let display = parse_sum(
        "m(1){m(1|2){a|b,c}} + m(1|2){m(1){a}|b,c} + m(1|2){a|m(1){b},c} + m(1|2){a|b,m(1){c}} \
         + m(2){m(1|1){a|b},c} + m(2){b,m(1|1){a|c}} + m(1|1){a|m(2){b,c}}",
        &StructureMaps,
    )
    .map_err(|e| e.to_string())?;
    ensure!(r.type_i.equal_up_to_sign(&display), "(1|2) Type I differs: {}", r.type_i);
    let three = parse_sum(
        "- 3 (-1)^{|b|} m(3){a,b,c} + 3 (-1)^{|a||b|+|b|} m(3){b,a,c} - 3 (-1)^{|a||b|+|a||c|+|b|} m(3){b,c,a}",
        &StructureMaps,
    )
    .map_err(|e| e.to_string())?;
    ensure!(r.type_ii == three, "(1|2) Type II is {}", r.type_ii);
    let o = run(["partopus", "identity", "(1|2)", "--format", "latex"]);
    ensure!(o.stdout.contains("3 \\{m(3)\\}\\{\\{a\\}\\{b,c\\}\\}"), "latex output lacks the coefficient-3 term");
    Ok(())
}

fn criterion_6() -> Outcome {
    for i in 1..=6 {
        for f in factorizations(&Partition::singleton(i)).map_err(|e| e.to_string())? {
            ensure!(f.kind == FactorKind::Regular, "({i}) has a unit split");
            ensure!(f.outer.dbar() == 0 && f.inner.dbar() == 0, "({i}): {} * {}", f.outer, f.inner);
        }
    }
    for t in 1..=5 {
        let target = Partition::ones(t);
        let mut units = BTreeSet::new();
        for f in factorizations(&target).map_err(|e| e.to_string())? {
            match f.kind {
                FactorKind::Regular => {
                    ensure!(f.outer.d() == f.outer.dbar() && f.inner.d() == f.inner.dbar(), "{target}: {} * {}", f.outer, f.inner)
                }
                FactorKind::UnitSplit => {
                    units.insert((f.outer, f.inner));
                }
            }
        }
        let mut want = BTreeSet::new();
        for alpha in 0..t.saturating_sub(1) {
            for u in ["(1|0)", "(0|1)"] {
                want.insert((target.merge_adjacent(alpha), p(u)));
            }
        }
        ensure!(units == want, "unit splits of {target} differ");
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    for alg in [dual_numbers(), upper_triangular()] {
        let name = alg.name.clone();
        let h = HochschildComplex::new(alg, 3).map_err(|e| e.to_string())?;
        let r = h.verify(42, 20);
        ensure!(r.passed(), "{}", r.render());
        for id in ["(i)", "(ii)", "(iii)", "(iv)"] {
            ensure!(r.checks.iter().any(|c| c.name.starts_with(id) && c.passed && c.witness.is_none()), "{name}: {id}");
        }
        let v = r.checks.iter().find(|c| c.name.starts_with("(v)")).ok_or("no (v) check")?;
        ensure!(v.witness.is_some(), "{name}: no witness for (v)");
    }
    let o = run(["partopus", "verify", "--suite", "hochschild", "--model", "dual-numbers", "--seed", "42", "--arity-cap", "3"]);
    ensure!(o.status == 0 && o.stdout.contains("witness"), "cli verify exited {}", o.status);
    Ok(())
}

fn criterion_8() -> Outcome {
    let g = Superalgebra::from_model(&grassmann2()).map_err(|e| e.to_string())?;
    let r = phi::verify(&g, "grassmann2", 42, 5);
    ensure!(r.passed(), "{}", r.render());
    ensure!(r.checks.iter().all(|c| c.samples >= 1), "empty check");
    let (alg, der) = grassmann_derivation();
    let pm = PhiModel::new(alg, der).map_err(|e| e.to_string())?;
    ensure!(pm.phi2().is_zero() && pm.phi3().is_zero(), "derivation has nonzero Φ");
    Ok(())
}

fn criterion_9() -> Outcome {
    let seeds: Vec<u64> = (0..10).collect();
    for t in ["(1)", "(2)", "(3)", "(1|1)", "(1|2)"] {
        let c = coherence(&p(t), &seeds).map_err(|e| e.to_string())?;
        ensure!(c.mismatches.is_empty(), "{t}: mismatched seeds {:?}", c.mismatches);
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("partition-product golden suite", criterion_1),
        ("pre-Lie, Jacobi and the (0) defect", criterion_2),
        ("composition term counts", criterion_3),
        ("signed brace expansions", criterion_4),
        ("master identity for (1|2|3) and (1|2)", criterion_5),
        ("singleton and all-ones subalgebras", criterion_6),
        ("Hochschild verification", criterion_7),
        ("Φ-operator verification", criterion_8),
        ("symbolic and numeric coherence", criterion_9),
    ];
    let mut failed = Vec::new();
    for (k, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(()) => println!("criterion {}: PASS  {name}", k + 1),
            Err(why) => {
                println!("criterion {}: FAIL  {name}: {why}", k + 1);
                failed.push(k + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
