mod common;

use common::{game, mixture, rational};
use compsafe::{safety_level, safety_level_2x2, safety_level_lp, value_of, Player, Rational};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn optimality_certificate(
        g in (1usize..=3, 1usize..=3).prop_flat_map(|(r, c)| game(r, c)),
        seeds in prop::collection::vec(prop::collection::vec(0i64..=9, 3), 200),
    ) {
        for player in Player::BOTH {
            let rep = safety_level(&g, player).unwrap();
            prop_assert_eq!(value_of(&g, player, &rep.strategy).unwrap(), rep.value.clone());
            let n = g.strategy_count(player);
            for w in &seeds {
                let w = &w[..n];
                let total: i64 = w.iter().sum();
                if total == 0 {
                    continue;
                }
                let t = compsafe::MixedStrategy::new(
                    w.iter().map(|&x| Rational::new(x, total)).collect(),
                ).unwrap();
                prop_assert!(value_of(&g, player, &t).unwrap() <= rep.value);
            }
        }
    }

    #[test]
    fn closed_form_matches_lp(g in game(2, 2)) {
        for player in Player::BOTH {
            let closed = safety_level_2x2(&g, player).unwrap();
            let lp = safety_level_lp(&g, player).unwrap();
            prop_assert_eq!(closed.value, lp.value);
        }
    }

    #[test]
    fn shift_raises_value_by_constant(
        g in (2usize..=3, 2usize..=3).prop_flat_map(|(r, c)| game(r, c)),
        c in rational(1, 30),
    ) {
        for player in Player::BOTH {
            let base = safety_level(&g, player).unwrap();
            let moved = safety_level(&g.shifted(player, &c), player).unwrap();
            prop_assert_eq!(moved.value.clone(), base.value.clone() + &c);
            // Same set of optimal strategies: each optimum stays optimal after the shift.
            prop_assert_eq!(value_of(&g, player, &moved.strategy).unwrap(), base.value.clone());
            prop_assert_eq!(
                value_of(&g.shifted(player, &c), player, &base.strategy).unwrap(),
                moved.value
            );
        }
    }

    #[test]
    fn scaling_keeps_strategy(
        g in (2usize..=3, 2usize..=3).prop_flat_map(|(r, c)| game(r, c)),
        lambda in rational(1, 30),
    ) {
        for player in Player::BOTH {
            let base = safety_level(&g, player).unwrap();
            let scaled = safety_level(&g.scaled(player, &lambda), player).unwrap();
            prop_assert_eq!(&scaled.strategy, &base.strategy);
            prop_assert_eq!(scaled.value, base.value * &lambda);
        }
    }

    #[test]
    fn mixtures_never_beat_lp_on_3x3(g in game(3, 3), t in mixture(3)) {
        let rep = safety_level_lp(&g, Player::One).unwrap();
        prop_assert!(value_of(&g, Player::One, &t).unwrap() <= rep.value);
    }
}
