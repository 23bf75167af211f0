use proptest::prelude::*;
use sylow2_core::rigid::{reduce_left_normed, Expr};
use sylow2_core::{PuncturedForm, RigidCommutator};

fn rigid(max_rank: u32) -> impl Strategy<Value = (RigidCommutator, RigidCommutator)> {
    (1..=max_rank).prop_flat_map(|n| {
        let full = (1u64 << n) - 1;
        (0..=full, 0..=full).prop_map(move |(a, b)| {
            (RigidCommutator::new(a, n).unwrap(), RigidCommutator::new(b, n).unwrap())
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn commutation_is_symmetric((x, y) in rigid(63)) {
        prop_assert_eq!(x.commutator(y), y.commutator(x));
        prop_assert_eq!(x.star(y), x.commutator(y));
    }

    #[test]
    fn equal_bases_commute((x, y) in rigid(63)) {
        if x.base().is_some() && x.base() == y.base() {
            prop_assert!(x.commutator(y).is_identity());
        }
        prop_assert!(x.commutator(x).is_identity());
    }

    #[test]
    fn base_and_hang_of_a_nontrivial_commutator((x, y) in rigid(63)) {
        let c = x.commutator(y);
        if !c.is_identity() {
            let (a, b) = (x.base().unwrap(), y.base().unwrap());
            prop_assert_eq!(c.base(), Some(a.max(b)));
            prop_assert!(c.contains(a.min(b)));
            prop_assert!(c.hang().unwrap() <= a.min(b));
        }
    }

    #[test]
    fn identity_is_absorbing((x, _y) in rigid(63)) {
        let e = RigidCommutator::identity(x.rank()).unwrap();
        prop_assert!(x.commutator(e).is_identity());
        prop_assert!(e.commutator(x).is_identity());
    }

    #[test]
    fn punctured_round_trip((x, _y) in rigid(63)) {
        if x.is_identity() {
            prop_assert!(x.to_punctured().is_err());
        } else {
            let p = x.to_punctured().unwrap();
            prop_assert_eq!(Some(p.base()), x.base());
            prop_assert_eq!(RigidCommutator::from_punctured(p, x.rank()).unwrap(), x);
            let reparsed: PuncturedForm = p.to_string().parse().unwrap();
            prop_assert_eq!(reparsed, p);
        }
    }

    #[test]
    fn text_round_trip((x, _y) in rigid(63)) {
        prop_assert_eq!(RigidCommutator::parse(&x.to_string(), x.rank()).unwrap(), x);
        if let Ok(p) = x.to_punctured() {
            prop_assert_eq!(RigidCommutator::parse(&p.to_string(), x.rank()).unwrap(), x);
        }
    }

    #[test]
    fn reduction_stays_inside_the_word(n in 1u32..=20, word in prop::collection::vec(1u32..=20, 1..12)) {
        let word: Vec<u32> = word.into_iter().map(|k| (k - 1) % n + 1).collect();
        let c = reduce_left_normed(&word, n).unwrap();
        let letters = word.iter().fold(0u64, |m, &k| m | 1 << (k - 1));
        prop_assert_eq!(c.mask() & !letters, 0);
        if word.windows(2).any(|w| w[0] == w[1]) {
            prop_assert!(c.is_identity());
        }
    }

    #[test]
    fn reduction_agrees_with_bracket_folding(n in 1u32..=12, word in prop::collection::vec(1u32..=12, 1..8)) {
        let word: Vec<u32> = word.into_iter().map(|k| (k - 1) % n + 1).collect();
        let text = format!("[{}]", word.iter().map(|k| format!("[{k}]")).collect::<Vec<_>>().join(","));
        let expr: Expr = text.parse().unwrap();
        prop_assert_eq!(expr.eval(n).unwrap(), reduce_left_normed(&word, n).unwrap());
    }
}

#[test]
fn jordan_laws_exhaustive_up_to_rank_eight() {
    for n in 1..=8 {
        let all: Vec<_> = RigidCommutator::all(n).chain([RigidCommutator::identity(n).unwrap()]).collect();
        for &x in &all {
            assert!(x.star(x).is_identity());
            let xx = x.star(x);
            for &y in &all {
                assert_eq!(x.star(y), y.star(x));
                let lhs = xx.star(y).star(x);
                let rhs = xx.star(y.star(x));
                assert_eq!(lhs, rhs, "n = {n}, x = {x}, y = {y}");
            }
        }
    }
}

#[test]
fn all_enumerates_every_nonempty_subset_in_proper_order() {
    for n in 1..=10 {
        let all: Vec<_> = RigidCommutator::all(n).collect();
        assert_eq!(all.len(), (1usize << n) - 1);
        assert!(all.windows(2).all(|w| w[0] < w[1] && w[0].base() <= w[1].base()));
        let by_base: usize = (1..=n).map(|b| RigidCommutator::with_base(b, n).count()).sum();
        assert_eq!(by_base, all.len());
        for b in 1..=n {
            assert_eq!(RigidCommutator::with_base(b, n).count(), 1 << (b - 1));
            assert!(RigidCommutator::with_base(b, n).all(|c| c.base() == Some(b)));
        }
    }
}
