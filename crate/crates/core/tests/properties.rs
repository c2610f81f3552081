use proptest::prelude::*;

use wpolab_core::bound_ops::{theta_plus_op, theta_tilde_op};
use wpolab_core::construct::{prefix_audit, sierpinskisation};
use wpolab_core::harness::gen;
use wpolab_core::io::PosetFile;
use wpolab_core::poset::{combine, intersect, longcut_fin, Combine, FinPoset};
use wpolab_core::term::PosetTerm;
use wpolab_core::{bracket_plus, bracket_tilde, theta_plus, theta_tilde, CnfOrdinal, KOrdinal};

/// Cantor normal forms with exponents of nesting depth at most `depth`.
fn ordinal_of_depth(depth: u32) -> BoxedStrategy<CnfOrdinal> {
    if depth == 0 {
        return (0u64..20).prop_map(CnfOrdinal::from).boxed();
    }
    prop::collection::vec((ordinal_of_depth(depth - 1), 1u64..10), 0..4)
        .prop_map(|mut terms| {
            terms.sort_by(|a, b| b.0.cmp(&a.0));
            terms.dedup_by(|a, b| a.0 == b.0);
            CnfOrdinal::from_terms(terms).expect("strictly decreasing exponents")
        })
        .boxed()
}

fn ordinal() -> BoxedStrategy<CnfOrdinal> {
    ordinal_of_depth(2)
}

fn infinite() -> impl Strategy<Value = CnfOrdinal> {
    ordinal().prop_filter("infinite", |a| !a.is_finite())
}

fn poset(max: usize) -> impl Strategy<Value = FinPoset> {
    (0..=max).prop_flat_map(poset_on)
}

fn poset_on(n: usize) -> impl Strategy<Value = FinPoset> {
    any::<u64>().prop_map(move |seed| gen::poset(&mut gen::case_rng(seed, 0), n))
}

fn kordinal() -> impl Strategy<Value = KOrdinal> {
    any::<u64>().prop_map(|seed| gen::kordinal(&mut gen::case_rng(seed, 0)))
}

fn equipotent(n: usize) -> impl Strategy<Value = Vec<KOrdinal>> {
    any::<u64>().prop_map(move |seed| gen::equipotent_tuple(&mut gen::case_rng(seed, 0), n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn natural_operations_form_a_semiring(a in ordinal(), b in ordinal(), c in ordinal()) {
        prop_assert_eq!(a.nat_add(&b).nat_add(&c), a.nat_add(&b.nat_add(&c)));
        prop_assert_eq!(a.nat_add(&b), b.nat_add(&a));
        prop_assert_eq!(a.nat_mul(&b).nat_mul(&c), a.nat_mul(&b.nat_mul(&c)));
        prop_assert_eq!(a.nat_mul(&b), b.nat_mul(&a));
        prop_assert_eq!(a.nat_mul(&b.nat_add(&c)), a.nat_mul(&b).nat_add(&a.nat_mul(&c)));
    }

    #[test]
    fn indecomposables_distribute(e in ordinal(), b in ordinal(), c in ordinal()) {
        let a = CnfOrdinal::omega_pow(e);
        prop_assert_eq!(a.ul_nat_add(&a), a.clone());
        prop_assert_eq!(a.mul(&b.nat_add(&c)), a.mul(&b).nat_add(&a.mul(&c)));
    }

    #[test]
    fn ordinary_sum_and_product_are_associative(a in ordinal(), b in ordinal(), c in ordinal()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn euclidean_division_reconstructs(a in ordinal(), d in ordinal()) {
        prop_assume!(!d.is_zero());
        let (q, r) = a.euclid_div(&d).unwrap();
        prop_assert!(r < d);
        prop_assert_eq!(d.mul(&q).add(&r), a);
    }

    #[test]
    fn left_subtraction_reconstructs(a in ordinal(), b in ordinal()) {
        let s = a.add(&b);
        let z = a.left_subtract(&s).unwrap();
        prop_assert_eq!(a.add(&z), s);
        prop_assert_eq!(&z, &b);
        if b > a {
            prop_assert!(b.left_subtract(&a).is_err());
        }
    }

    #[test]
    fn natural_operations_are_strictly_monotone(a in ordinal(), b in ordinal(), c in ordinal()) {
        prop_assume!(a < b);
        prop_assert!(a.nat_add(&c) < b.nat_add(&c));
        if !c.is_zero() {
            prop_assert!(a.nat_mul(&c) < b.nat_mul(&c));
        }
    }

    #[test]
    fn rendering_round_trips(a in ordinal(), k in kordinal()) {
        prop_assert_eq!(a.to_string().parse::<CnfOrdinal>().unwrap(), a);
        prop_assert_eq!(k.to_string().parse::<KOrdinal>().unwrap(), k);
    }

    #[test]
    fn underlined_sum_is_below_natural_sum(a in ordinal(), b in ordinal()) {
        let u = a.ul_nat_add(&b);
        prop_assert!(u <= a.nat_add(&b));
        for n in 0..4 {
            if let (Ok(x), Ok(y)) = (a.fund_seq(n), b.fund_seq(n)) {
                prop_assert!(x.nat_add(&y) < u, "{} + {} reaches {}", x, y, u);
            }
        }
    }

    #[test]
    fn fundamental_sequences_climb(a in infinite()) {
        prop_assume!(a.is_limit());
        let xs: Vec<CnfOrdinal> = (0..6).map(|n| a.fund_seq(n).unwrap()).collect();
        prop_assert!(xs.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(xs.iter().all(|x| *x < a));
    }

    #[test]
    fn theta_plus_is_symmetric(args in equipotent(3)) {
        let v = theta_plus(&args).unwrap();
        let mut rev = args.clone();
        rev.reverse();
        prop_assert_eq!(theta_plus(&rev).unwrap(), v.clone());
        prop_assert_eq!(theta_plus(&[args[1].clone(), args[0].clone(), args[2].clone()]).unwrap(), v);
    }

    #[test]
    fn theta_plus_bounds(a in infinite(), b in infinite()) {
        let (ak, bk) = (KOrdinal::from(a.clone()), KOrdinal::from(b.clone()));
        let v = theta_plus(&[ak.clone(), bk.clone()]).unwrap();
        prop_assert!(v > ak.clone().max(bk.clone()));
        prop_assert!(v <= KOrdinal::from(a.nat_mul(&b).succ()));
    }

    #[test]
    fn theta_plus_is_monotone(a in infinite(), b in infinite(), c in infinite()) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let at = |x: &CnfOrdinal| theta_plus(&[x.clone().into(), c.clone().into()]).unwrap();
        prop_assert!(at(&lo) <= at(&hi));
    }

    #[test]
    fn brackets_recover_theta(args in equipotent(2)) {
        prop_assert_eq!(bracket_plus(&theta_tilde_op()).eval(&args).unwrap(), theta_plus(&args).unwrap());
        prop_assert_eq!(bracket_tilde(&theta_plus_op()).eval(&args).unwrap(), theta_tilde(&args).unwrap());
    }

    #[test]
    fn finite_lengths_agree(p in poset(7)) {
        prop_assert_eq!(p.length_fin(), p.n());
        prop_assert_eq!(p.length_recursive().unwrap(), p.n());
        prop_assert_eq!(p.bad_tree_height(), p.n());
    }

    #[test]
    fn intersection_is_a_greatest_lower_bound((p, q, r) in (0usize..=6).prop_flat_map(|n| (poset_on(n), poset_on(n), poset_on(n)))) {
        let i = intersect(&p, &q).unwrap();
        prop_assert!(p.extends(&i) && q.extends(&i));
        if p.extends(&r) && q.extends(&r) {
            prop_assert!(i.extends(&r));
        }
    }

    #[test]
    fn combinations_add_and_multiply_lengths(p in poset(3), q in poset(3)) {
        let (n, m) = (p.n(), q.n());
        for kind in [Combine::DirectSum, Combine::LexSum] {
            prop_assert_eq!(combine(kind, &p, &q).length_recursive().unwrap(), n + m);
        }
        prop_assert_eq!(combine(Combine::CartesianProduct, &p, &q).bad_tree_height(), n * m);
    }

    #[test]
    fn longcut_is_a_downward_closed_split(p in poset(6), a in 0usize..6, b in 0usize..6) {
        prop_assume!(a < p.n() && b < p.n());
        if let Ok((low, high)) = longcut_fin(&p, a, b) {
            prop_assert_eq!(low.len() + high.len(), p.n());
            for &y in &low {
                for x in 0..p.n() {
                    if p.lt(x, y) {
                        prop_assert!(low.contains(&x));
                    }
                }
            }
        }
    }

    #[test]
    fn poset_files_round_trip(p in poset(8)) {
        let file = PosetFile::from_poset(&p);
        prop_assert_eq!(PosetFile::from_json(&file.to_json()).unwrap().to_poset().unwrap(), p);
    }

    #[test]
    fn term_lengths_commute(a in ordinal(), b in ordinal()) {
        let (x, y) = (PosetTerm::Ord(a), PosetTerm::Ord(b));
        prop_assert_eq!(PosetTerm::dsum(x.clone(), y.clone()).length(), PosetTerm::dsum(y.clone(), x.clone()).length());
        prop_assert_eq!(PosetTerm::prod(x.clone(), y.clone()).length(), PosetTerm::prod(y.clone(), x.clone()).length());
        prop_assert_eq!(PosetTerm::lexsum(x.clone(), y.clone()).length(), x.length().add(&y.length()));
    }

    #[test]
    fn term_prefixes_grow_by_induced_subposets(a in ordinal(), p in poset(3), m in 0usize..30, extra in 0usize..30) {
        let t = PosetTerm::prod(PosetTerm::dsum(PosetTerm::Ord(a), PosetTerm::Fin(p)), PosetTerm::Ord(CnfOrdinal::omega()));
        let small = t.denote_prefix(m);
        let large = t.denote_prefix(m + extra);
        prop_assert_eq!(large.restrict(&(0..small.n()).collect::<Vec<_>>()), small);
    }

    #[test]
    fn sierpinskisation_prefixes_are_sound(a in infinite(), n in 1usize..120) {
        let report = prefix_audit(&sierpinskisation(&a).unwrap(), n, None);
        prop_assert!(report.passed_up_to_reach(), "{:?}", report.failures());
    }
}

#[test]
fn finite_terms_match_their_denotation() {
    let leaves = [
        PosetTerm::Fin(FinPoset::chain(2)),
        PosetTerm::Fin(FinPoset::antichain(2)),
        PosetTerm::Ord(CnfOrdinal::from(3)),
        PosetTerm::Fin(wpolab_core::poset::make_poset(3, &[(0, 1)]).unwrap()),
    ];
    for a in &leaves {
        for b in &leaves {
            for t in [
                PosetTerm::dsum(a.clone(), b.clone()),
                PosetTerm::lexsum(a.clone(), b.clone()),
                PosetTerm::prod(a.clone(), b.clone()),
            ] {
                let full = t.denote_prefix(1000);
                assert_eq!(
                    t.length(),
                    CnfOrdinal::from(full.length_recursive().unwrap() as u64),
                    "{t}"
                );
            }
        }
    }
}
