use itertools::Itertools;
use num_traits::{One, Signed};

use partopus_core::composition::*;
use partopus_core::models::checks::brace_associativity_sum;
use partopus_core::partition::{higher_product, regular_up_to, star, weak_compositions};
use partopus_core::text::{parse_sum, Symbolic};
use partopus_core::*;

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

fn sym(name: &str, ty: &str) -> MapSymbol {
    MapSymbol::symbolic(name, p(ty))
}

fn op(name: &str, ty: &str) -> Operator {
    Operator::symbol(sym(name, ty))
}

fn gens(names: &str) -> Vec<ChainItem> {
    names.chars().map(|c| ChainItem::Gen(Generator::symbolic(&c.to_string()))).collect()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

/// Number of expanded terms of the `target` component of `{x(i)}{y(inner)}`,
/// counted directly: choose the offset of each inner block inside its target
/// slot, then merge the leftover prefixes (and suffixes) in every
/// order-preserving way.
fn term_count_oracle(target: &[usize], i: usize, inner: &[usize]) -> usize {
    if target.len() != inner.len() || target.iter().zip(inner).any(|(t, j)| t < j) {
        return 0;
    }
    let spare: usize = target.iter().zip(inner).map(|(t, j)| t - j).sum();
    if spare + 1 != i {
        return 0;
    }
    let ranges: Vec<Vec<usize>> = target.iter().zip(inner).map(|(t, j)| (0..=t - j).collect()).collect();
    let mut total = 0;
    for offs in ranges.iter().multi_cartesian_product() {
        let before: Vec<usize> = offs.iter().map(|o| **o).collect();
        let after: Vec<usize> = target.iter().zip(inner).zip(&before).map(|((t, j), b)| t - j - b).collect();
        let merges = |parts: &[usize]| {
            let mut n = 0;
            let mut acc = 1;
            for &k in parts {
                n += k;
                acc *= binomial(n, k);
            }
            acc
        };
        total += merges(&before) * merges(&after);
    }
    total
}

#[test]
fn two_brace_signs() {
    let s = expand_chain(
        SignRule::Bigraded,
        &ChainItem::map(sym("x", "(3)")),
        &[vec![ChainItem::map(sym("y", "(2)")), ChainItem::map(sym("z", "(3)"))], gens("abcdef")],
    )
    .unwrap();
    let expected = parse_sum(
        "(-1)^{|z(3)||a|+|z(3)||b|} x(3){y(2){a,b},z(3){c,d,e},f} \
         + (-1)^{|z(3)||a|+|z(3)||b|+|z(3)||c|} x(3){y(2){a,b},c,z(3){d,e,f}} \
         - (-1)^{|y(2)||a|+|z(3)||a|+|z(3)||b|+|z(3)||c|} x(3){a,y(2){b,c},z(3){d,e,f}}",
        &Symbolic,
    )
    .unwrap();
    assert_eq!(s, expected, "got {s}");

    // the same three terms through the partition-level composition
    let ops = compose_multi(SignRule::Bigraded, &op("x", "(3)"), &[op("y", "(2)"), op("z", "(3)")]).unwrap();
    assert_eq!(ops.len(), 1);
    assert_eq!(ops[&p("(6)")], expected);
}

#[test]
fn three_brace_chain_has_twelve_terms() {
    let s = expand_chain(
        SignRule::Bigraded,
        &ChainItem::map(sym("x", "(3)")),
        &[vec![ChainItem::map(sym("y", "(2)"))], vec![ChainItem::map(sym("z", "(3)"))], gens("abcdef")],
    )
    .unwrap();
    assert_eq!(s.len(), 12);
    let listed = [
        "x(3){y(2){a,b},z(3){c,d,e},f}",
        "x(3){y(2){a,b},c,z(3){d,e,f}}",
        "x(3){a,y(2){b,c},z(3){d,e,f}}",
        "x(3){z(3){a,b,c},y(2){d,e},f}",
        "x(3){z(3){a,b,c},d,y(2){e,f}}",
        "x(3){a,z(3){b,c,d},y(2){e,f}}",
        "x(3){y(2){z(3){a,b,c},d},e,f}",
        "x(3){y(2){a,z(3){b,c,d}},e,f}",
        "x(3){a,y(2){z(3){b,c,d},e},f}",
        "x(3){a,y(2){b,z(3){c,d,e}},f}",
        "x(3){a,b,y(2){z(3){c,d,e},f}}",
        "x(3){a,b,y(2){c,z(3){d,e,f}}}",
    ];
    // listed in a different order than the normal form
    let display = parse_sum(&listed.iter().rev().join(" + "), &Symbolic).unwrap();
    assert!(s.equal_up_to_sign(&display));
}

#[test]
fn element_braces_antisymmetrize() {
    for n in 1..=4 {
        let x = MapSymbol::new("x", Partition::singleton(n), Degree::Known(0));
        let names: Vec<String> = (0..n).map(terms::generator_name).collect();
        let groups: Vec<Vec<ChainItem>> =
            names.iter().map(|a| vec![ChainItem::Gen(Generator::new(a, Degree::Known(0)))]).collect();
        let s = expand_chain(SignRule::Bigraded, &ChainItem::map(x.clone()), &groups).unwrap();
        let mut expected = FormalSum::zero();
        for sigma in (0..n).permutations(n) {
            let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| sigma[i] > sigma[j]).count();
            let args = sigma.iter().map(|&k| Expr::gen(Generator::new(&names[k], Degree::Known(0)))).collect();
            let coeff = if inversions % 2 == 0 { Q::one() } else { -Q::one() };
            expected.add_assign(&FormalSum::single(Expr::app(x.clone(), vec![args])).scale(coeff));
        }
        assert_eq!(s, expected, "n = {n}");
        assert_eq!(s.len(), (1..=n).product::<usize>());
    }
}

#[test]
fn associativity_brace() {
    // degrees are fixed to 0 here, so compare the rendered sums
    let s = brace_associativity_sum().unwrap();
    let expected = parse_sum("m(2){m(2){a,b},c} - m(2){a,m(2){b,c}}", &Symbolic).unwrap();
    assert_eq!(s.to_string(), expected.to_string());
}

#[test]
fn pair_components_and_counts() {
    let got = compose_pair(SignRule::Bigraded, &op("x", "(3)"), &op("y", "(2|4)")).unwrap();
    let counts: Vec<(String, usize)> = got.iter().map(|(t, s)| (t.to_string(), s.len())).collect();
    assert_eq!(counts, [("(2|6)".to_string(), 3), ("(3|5)".to_string(), 6), ("(4|4)".to_string(), 3)]);
    for (t, s) in &got {
        assert_eq!(subdivisions_for_slot(t, 3, &p("(2|4)")).unwrap().iter().map(|d| d.interleavings(1)).sum::<usize>(), s.len());
    }
    let sub = |t: &str| subdivisions_for_slot(&p(t), 3, &p("(2|4)")).unwrap().len();
    assert_eq!((sub("(2|6)"), sub("(3|5)"), sub("(4|4)")), (3, 4, 3));
    assert!(matches!(subdivisions_for_slot(&p("(5|3)"), 3, &p("(2|4)")), Err(Error::NotAComponent { .. })));

    let got = compose_pair(SignRule::Bigraded, &op("x", "(1|2)"), &op("y", "(2|3)")).unwrap();
    let counts: Vec<(String, usize)> = got.iter().map(|(t, s)| (t.to_string(), s.len())).collect();
    assert_eq!(counts, [("(1|2|4)".to_string(), 2), ("(1|3|3)".to_string(), 2), ("(2|3|2)".to_string(), 1)]);
    let single = &got[&p("(2|3|2)")];
    let (e, _, c) = single.iter().next().unwrap();
    assert_eq!(c.abs(), Q::one());
    assert_eq!(e.to_string(), "x(1|2){y(2|3){a,b|c,d,e}|f,g}");
}

#[test]
fn unit_split_subdivisions() {
    let subs = subdivisions_for_slot(&p("(2|2)"), 4, &p("(1|0)")).unwrap();
    assert_eq!(subs.len(), 6);
    let id = Operator::symbol(MapSymbol::identity(p("(1|0)")));
    let got = compose_pair(SignRule::Bigraded, &op("x", "(4)"), &id).unwrap();
    // twelve placements collapse onto the six shuffles of a,b with c,d
    let s = got[&p("(2|2)")].normalize();
    assert_eq!(subs.iter().map(|d| d.interleavings(1)).sum::<usize>(), 12);
    assert_eq!(s.len(), 6);
    assert!(s.iter().all(|(_, _, c)| c.abs() == Q::from_integer(2)));
}

#[test]
fn identity_insertion_multiplies() {
    let id = Operator::symbol(MapSymbol::identity(p("(1)")));
    for i in 1..=5 {
        let x = op("x", &format!("({i})"));
        let got = compose_pair(SignRule::Bigraded, &x, &id).unwrap();
        assert_eq!(got.len(), 1);
        let t = Partition::singleton(i);
        let lhs = got[&t].normalize();
        let rhs = x.apply(SignRule::Bigraded, &formal_arguments(&t)).unwrap().scale(Q::from_integer(i as i128));
        assert_eq!(lhs, rhs, "i = {i}");
    }
}

#[test]
fn arity_zero_insertion_is_an_element() {
    for n in 1..=4 {
        let x = op("x", &format!("({n})"));
        let got = compose_pair(SignRule::Bigraded, &x, &op("y", "(0)")).unwrap();
        let t = Partition::singleton(n - 1);
        let s = &got[&t];
        // read y(0){} as an element named y of degree |y(0)|
        let text = s.to_string().replace("y(0){}", "y").replace("|y(0)|", "|y|");
        let as_element = parse_sum(&text, &Symbolic).unwrap();
        let names: String = (0..n - 1).map(terms::generator_name).collect();
        let mut groups = vec![gens("y")];
        groups.push(gens(&names));
        let direct = expand_chain(SignRule::Bigraded, &ChainItem::map(sym("x", &format!("({n})"))), &groups).unwrap();
        assert_eq!(as_element, direct, "n = {n}");
        assert!(compose_pair(SignRule::Bigraded, &op("y", "(0)"), &x).unwrap().is_empty());
    }
}

#[test]
fn term_counts_match_direct_count() {
    for i in 1..=4 {
        for inner in partition::partitions_bounded(4, 3, true) {
            let got = compose_pair(SignRule::Bigraded, &op("x", &format!("({i})")), &op("y", &inner.to_string())).unwrap();
            for (t, s) in &got {
                assert_eq!(s.len(), term_count_oracle(t.slots(), i, inner.slots()), "({i}) {inner} at {t}");
            }
        }
    }
}

#[test]
fn component_support_is_the_partition_product() {
    let family = regular_up_to(3);
    for a in &family {
        for b in &family {
            let got = compose_pair(SignRule::Bigraded, &op("x", &a.to_string()), &op("y", &b.to_string())).unwrap();
            let support: Vec<&Partition> = got.keys().collect();
            let expected = star(a, b).support();
            assert_eq!(support, expected.iter().collect::<Vec<_>>(), "{a} {b}");
            assert!(got.values().all(|s| !s.is_empty()));
        }
    }
}

/// Brute force over head slots: all inners of one brace go into the same
/// slot of the head, in order, the remaining slots are copied.
fn multi_support_oracle(head: &[usize], inners: &[&[usize]]) -> std::collections::BTreeSet<Partition> {
    let mut out = std::collections::BTreeSet::new();
    let k = inners.len();
    for alpha in 0..head.len() {
        let slots = vec![alpha; k];
        // leftover head arguments distributed around the blocks
        let mut spares: Vec<usize> = head.to_vec();
        let mut ok = true;
        for &s in &slots {
            ok &= spares[s] > 0;
            if !ok {
                break;
            }
            spares[s] -= 1;
        }
        if !ok {
            continue;
        }
        let mut per_slot: Vec<Vec<Vec<usize>>> = Vec::new();
        for (s, &spare) in spares.iter().enumerate() {
            let here: Vec<&[usize]> = slots.iter().zip(inners).filter(|(x, _)| **x == s).map(|(_, y)| *y).collect();
            if here.is_empty() {
                per_slot.push(vec![vec![head[s]]]);
                continue;
            }
            // concatenate, overlapping the last slot of one block with the
            // first of the next, then distribute spare arguments
            let mut shape: Vec<usize> = here[0].to_vec();
            for y in &here[1..] {
                *shape.last_mut().unwrap() += y[0];
                shape.extend_from_slice(&y[1..]);
            }
            let mut options = Vec::new();
            for u in weak_compositions(spare, shape.len()) {
                options.push(shape.iter().zip(&u).map(|(a, b)| a + b).collect());
            }
            per_slot.push(options);
        }
        for choice in per_slot.iter().multi_cartesian_product() {
            let slots: Vec<usize> = choice.into_iter().flatten().copied().collect();
            out.insert(Partition::from_slice(&slots));
        }
    }
    out
}

#[test]
fn multi_brace_support() {
    let got = compose_multi(SignRule::Bigraded, &op("x", "(2|3)"), &[op("y", "(2)"), op("z", "(3|4)")]).unwrap();
    let n = higher_product(&p("(1|2)"), &p("(2|3)"), &[vec![p("(2)"), p("(3|4)")]]).unwrap();
    let keys: Vec<&Partition> = got.keys().collect();
    assert_eq!(keys, n.support().iter().collect::<Vec<_>>());
    assert_eq!(n.support(), multi_support_oracle(&[2, 3], &[&[2], &[3, 4]]));
    assert!(got.values().all(|s| !s.is_empty()));

    for head in regular_up_to(3) {
        for y in regular_up_to(1) {
            for z in regular_up_to(2) {
                let got = compose_multi(
                    SignRule::Bigraded,
                    &op("x", &head.to_string()),
                    &[op("y", &y.to_string()), op("z", &z.to_string())],
                )
                .unwrap();
                let keys: std::collections::BTreeSet<Partition> =
                    got.iter().filter(|(_, s)| !s.is_empty()).map(|(t, _)| t.clone()).collect();
                assert_eq!(keys, multi_support_oracle(head.slots(), &[y.slots(), z.slots()]), "{head} {y} {z}");
            }
        }
    }
}

#[test]
fn single_inner_multi_is_pair() {
    for a in regular_up_to(2) {
        for b in regular_up_to(2) {
            let x = op("x", &a.to_string());
            let y = op("y", &b.to_string());
            assert_eq!(compose_multi(SignRule::Bigraded, &x, &[y.clone()]).unwrap(), compose_pair(SignRule::Bigraded, &x, &y).unwrap());
        }
    }
}

#[test]
fn tilde_signs() {
    let m = MapSymbol::symbolic("m", p("(2)"));
    let args = formal_arguments(&p("(2)"));
    let s = Operator::tilde(Operator::symbol(m.clone())).apply(SignRule::Total, &args).unwrap();
    // (-1)^{‖a‖}, ‖a‖ = |a| + 1
    assert_eq!(s, parse_sum("- (-1)^{|a|} m(2){a,b}", &Symbolic).unwrap());
    let u = MapSymbol::symbolic("u", p("(1)"));
    let one = formal_arguments(&p("(1)"));
    assert_eq!(
        Operator::tilde(Operator::symbol(u.clone())).apply(SignRule::Total, &one).unwrap(),
        Operator::symbol(u).apply(SignRule::Total, &one).unwrap()
    );
    // applying the modification twice cancels, and leaves the grading alone
    for t in ["(3)", "(1|2)", "(2|0|1)"] {
        let x = Operator::symbol(MapSymbol::symbolic("x", p(t)));
        let args = formal_arguments(&p(t));
        let twice = Operator::tilde(Operator::tilde(x.clone()));
        assert_eq!(twice.apply(SignRule::Total, &args).unwrap(), x.apply(SignRule::Total, &args).unwrap());
        assert_eq!(Operator::tilde(x.clone()).grading(), x.grading());
    }
}

fn compose_ops(xs: &[Operator], ys: &[Operator]) -> Vec<Operator> {
    compose_operators(xs, ys).into_values().flatten().collect()
}

/// `({x}{y}){z} − {x}{{y}{z}}` grouped by type.
fn associator(x: &Operator, y: &Operator, z: &Operator) -> std::collections::BTreeMap<Partition, FormalSum> {
    let mut out = std::collections::BTreeMap::new();
    let left = compose_ops(&compose_ops(&[x.clone()], &[y.clone()]), &[z.clone()]);
    let right = compose_ops(&[x.clone()], &compose_ops(&[y.clone()], &[z.clone()]));
    for (ops, sign) in [(left, Q::one()), (right, -Q::one())] {
        for o in ops {
            let t = o.ty();
            let s = o.apply(SignRule::Bigraded, &formal_arguments(&t)).unwrap();
            let e: &mut FormalSum = out.entry(t).or_default();
            e.add_assign(&s.scale(sign));
        }
    }
    out
}

/// Residual of the right pre-Lie identity for symbolic `x, y, z`, sign
/// `(-1)^{d(y)d(z) + |y||z|}`.
fn pre_lie_residual(x: &Operator, y: &Operator, z: &Operator) -> Vec<(Partition, FormalSum)> {
    let a = associator(x, y, z);
    let b = associator(x, z, y);
    let (gy, gz) = (y.grading(), z.grading());
    let sign = SignPoly::from_int(gy.d * gz.d).add(&gy.sup.mul(&gz.sup));
    let mut types: std::collections::BTreeSet<Partition> = a.keys().cloned().collect();
    types.extend(b.keys().cloned());
    types
        .into_iter()
        .map(|t| {
            let l = a.get(&t).cloned().unwrap_or_default();
            let r = b.get(&t).cloned().unwrap_or_default();
            (t, l.sub(&r.scale_signed(Q::one(), &sign)))
        })
        .filter(|(_, s)| !s.is_empty())
        .collect()
}

#[test]
fn operator_pre_lie_for_ordinary_maps() {
    for i in 1..=3 {
        for j in 1..=3 {
            for k in 1..=2 {
                let (x, y, z) = (op("x", &format!("({i})")), op("y", &format!("({j})")), op("z", &format!("({k})")));
                assert!(pre_lie_residual(&x, &y, &z).is_empty(), "({i}) ({j}) ({k})");
            }
        }
    }
}

#[test]
fn operator_pre_lie_fails_for_partitioned_maps() {
    // component-wise composition of partitioned symbols is not pre-Lie on
    // the nose; (2), (2), (1|1) already leaves a residual in type (2|2)
    let r = pre_lie_residual(&op("x", "(2)"), &op("y", "(2)"), &op("z", "(1|1)"));
    assert!(r.iter().any(|(t, _)| *t == p("(2|2)")));
}

