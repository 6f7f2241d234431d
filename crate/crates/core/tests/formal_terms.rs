use itertools::Itertools;
use num_traits::One;
use proptest::prelude::*;

use partopus_core::composition::{expand_chain, ChainItem};
use partopus_core::sign::{koszul_exponent, koszul_sign, Grading};
use partopus_core::text::{parse_sum, Symbolic};
use partopus_core::*;

fn compose_orders(outer: &[usize], inner: &[usize]) -> Vec<usize> {
    inner.iter().map(|&k| outer[k]).collect()
}

#[test]
fn koszul_is_a_homomorphism_on_small_sets() {
    // exhaustive on n <= 4 for every degree pattern in {0,1}^2 per item
    for n in 0..=4usize {
        let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
        for pattern in 0..(1u32 << (2 * n)) {
            let items: Vec<(i64, i64)> =
                (0..n).map(|k| (((pattern >> (2 * k)) & 1) as i64, ((pattern >> (2 * k + 1)) & 1) as i64)).collect();
            for rule in [SignRule::Bigraded, SignRule::Total] {
                for tau in &perms {
                    let moved: Vec<(i64, i64)> = tau.iter().map(|&k| items[k]).collect();
                    let s_tau = koszul_sign(rule, &items, tau).unwrap();
                    for sigma in &perms {
                        let both = compose_orders(tau, sigma);
                        let lhs = koszul_sign(rule, &items, &both).unwrap();
                        let rhs = s_tau * koszul_sign(rule, &moved, sigma).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #[test]
    fn koszul_homomorphism_five(
        degs in proptest::collection::vec((-3i64..4, -3i64..4), 5),
        tau in perm_strategy(5),
        sigma in perm_strategy(5),
    ) {
        for rule in [SignRule::Bigraded, SignRule::Total] {
            let moved: Vec<(i64, i64)> = tau.iter().map(|&k| degs[k]).collect();
            let lhs = koszul_sign(rule, &degs, &compose_orders(&tau, &sigma)).unwrap();
            let rhs = koszul_sign(rule, &degs, &tau).unwrap() * koszul_sign(rule, &moved, &sigma).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn symbolic_sign_specializes(
        degs in proptest::collection::vec((-2i64..3, 0i64..2), 4),
        tau in perm_strategy(4),
    ) {
        let names = ["p", "q", "r", "s"];
        let items: Vec<Grading> = degs.iter().zip(names).map(|((d, _), n)| Grading::new(*d, SignPoly::var(n))).collect();
        let e = koszul_exponent(SignRule::Bigraded, &items, &tau).unwrap();
        let lookup = |v: &str| names.iter().position(|n| *n == v).map(|k| degs[k].1 == 1);
        let concrete = koszul_sign(SignRule::Bigraded, &degs, &tau).unwrap();
        prop_assert_eq!(e.evaluate(&lookup).unwrap(), concrete < 0);
    }
}

#[test]
fn basic_signs() {
    assert_eq!(koszul_sign(SignRule::Bigraded, &[(0, 1), (0, 1)], &[0, 1]).unwrap(), 1);
    assert_eq!(koszul_sign(SignRule::Bigraded, &[(0, 1), (0, 1)], &[1, 0]).unwrap(), -1);
    assert_eq!(koszul_sign(SignRule::Bigraded, &[(1, 0), (-1, 0)], &[1, 0]).unwrap(), -1);
    assert!(koszul_sign(SignRule::Bigraded, &[(0, 0), (0, 0)], &[0, 0]).is_err());
    assert!(koszul_sign(SignRule::Bigraded, &[(0, 0)], &[0, 1]).is_err());
}

#[test]
fn structure_maps_have_odd_total_degree() {
    for p in partition::regular_up_to(4) {
        let m = MapSymbol::structure(p.clone());
        assert_eq!(m.total_degree(), SignPoly::one(), "{p}");
        assert_eq!(m.grading().d, p.d());
    }
}

fn sample_sum() -> FormalSum {
    parse_sum(
        "2 (-1)^{|a||b|} x(2){a,y(1|1){b|c}} - 1/3 x(2){y(1|1){a|b},c} + (-1)^{|x(2)|} x(2){a,b}",
        &Symbolic,
    )
    .unwrap()
}

#[test]
fn normal_form() {
    let s = sample_sum();
    assert!(s.sub(&s).is_empty());
    assert_eq!(s.normalize().normalize(), s.normalize());
    assert_eq!(s.add(&s), s.scale(Q::from_integer(2)));
    // reordering the input text gives the same normal form
    let t = parse_sum(
        "(-1)^{|x(2)|} x(2){a,b} - 1/3 x(2){y(1|1){a|b},c} + 2 (-1)^{|b||a|} x(2){a,y(1|1){b|c}}",
        &Symbolic,
    )
    .unwrap();
    assert_eq!(s, t);
    assert!(s.equal_up_to_sign(&s.scale(-Q::one())));
    assert!(!s.equal_up_to_sign(&s.scale(Q::from_integer(2))));
}

#[test]
fn identities_collapse() {
    let s = parse_sum("x(2){id(1){a},id(1|0){b|}}", &Symbolic).unwrap().normalize();
    assert_eq!(s.to_string(), "x(2){a,b}");
}

#[test]
fn text_roundtrip_and_latex() {
    let s = sample_sum();
    assert_eq!(parse_sum(&s.to_string(), &Symbolic).unwrap(), s);
    let latex = s.render(true);
    assert!(latex.contains("\\frac{1}{3}"));
    assert!(latex.contains("y(1|1)\\{b \\mid c\\}"));
    assert_eq!(parse_sum("0", &Symbolic).unwrap(), FormalSum::zero());
}

#[test]
fn parse_errors() {
    assert!(parse_sum("x(2){a}", &Symbolic).is_err());
    assert!(parse_sum("x(2){a,b", &Symbolic).is_err());
    assert_eq!(parse_sum("x(2){a,b} + + y", &Symbolic).unwrap_err().position, 12);
}

#[test]
fn chain_terms_preserve_degrees() {
    let x = MapSymbol::symbolic("x", Partition::singleton(3));
    let y = MapSymbol::symbolic("y", Partition::singleton(2));
    let z = MapSymbol::symbolic("z", Partition::singleton(3));
    let gens: Vec<ChainItem> = "abcdef".chars().map(|c| ChainItem::Gen(Generator::symbolic(&c.to_string()))).collect();
    let s = expand_chain(
        SignRule::Bigraded,
        &ChainItem::map(x.clone()),
        &[vec![ChainItem::map(y.clone())], vec![ChainItem::map(z.clone())], gens],
    )
    .unwrap();
    let mut expected = x.grading().plus(&y.grading()).plus(&z.grading());
    for c in "abcdef".chars() {
        expected = expected.plus(&Generator::symbolic(&c.to_string()).grading());
    }
    assert_eq!(expected.d, -1);
    for (e, _, _) in s.iter() {
        assert!(e.is_well_formed());
        assert_eq!(e.grading(), expected, "{e}");
    }
}
