//! Every 2x2 game with payoffs in {0, 1, 2}.

mod common;

use compsafe::equilibria::{compare_safety_vs_nash, strictly_mixed_equilibrium};
use compsafe::oracles::{grid_maximin, verify_equilibrium, GridSpec};
use compsafe::{safety_level_2x2, safety_level_lp, BimatrixGame, Player, Rational, SafetyKind};

fn all_games() -> impl Iterator<Item = BimatrixGame> {
    (0..3i64.pow(8)).map(|mut code| {
        let mut v = [0i64; 8];
        for x in v.iter_mut() {
            *x = code % 3;
            code /= 3;
        }
        common_game(&v)
    })
}

fn common_game(v: &[i64; 8]) -> BimatrixGame {
    BimatrixGame::from_payoffs(
        common::ints(&[[v[0], v[1]], [v[2], v[3]]]),
        common::ints(&[[v[4], v[5]], [v[6], v[7]]]),
    )
    .unwrap()
}

fn brute_generic(g: &BimatrixGame) -> bool {
    let u1 = g.table(Player::One);
    let u2 = g.table(Player::Two);
    u1[0][0] != u1[1][0] && u1[0][1] != u1[1][1] && u2[0][0] != u2[0][1] && u2[1][0] != u2[1][1]
}

fn brute_non_reducible(g: &BimatrixGame) -> bool {
    let u1 = g.table(Player::One);
    let u2 = g.table(Player::Two);
    // Row e dominates f: weakly better in both columns, strictly in one.
    let dom = |x: [&Rational; 2], y: [&Rational; 2]| {
        x[0] >= y[0] && x[1] >= y[1] && (x[0] > y[0] || x[1] > y[1])
    };
    let r0 = [&u1[0][0], &u1[0][1]];
    let r1 = [&u1[1][0], &u1[1][1]];
    let c0 = [&u2[0][0], &u2[1][0]];
    let c1 = [&u2[0][1], &u2[1][1]];
    !(dom(r0, r1) || dom(r1, r0) || dom(c0, c1) || dom(c1, c0))
}

#[test]
fn structure_flags_match_brute_force() {
    for g in all_games() {
        assert_eq!(g.is_generic(), brute_generic(&g), "{:?}", g.to_json());
        assert_eq!(g.is_non_reducible(), brute_non_reducible(&g), "{:?}", g.to_json());
    }
}

#[test]
fn closed_form_lp_and_grid_agree() {
    let grid = GridSpec::new(12).unwrap();
    for g in all_games() {
        for player in Player::BOTH {
            let closed = safety_level_2x2(&g, player).unwrap();
            let lp = safety_level_lp(&g, player).unwrap();
            assert_eq!(closed.value, lp.value);
            let oracle = grid_maximin(&g, player, grid).unwrap();
            assert!(oracle.value <= closed.value);
            assert!(closed.value <= oracle.value.clone() + oracle.slack);
        }
    }
}

#[test]
fn mixed_equilibria_verify_and_match_safety_within_hypotheses() {
    let mut covered = 0;
    for g in all_games() {
        if let Ok(eq) = strictly_mixed_equilibrium(&g) {
            assert!(verify_equilibrium(&g, &eq.profile()).unwrap());
        }
        for player in Player::BOTH {
            let rep = compare_safety_vs_nash(&g, player).unwrap();
            if rep.within_hypotheses {
                covered += 1;
                assert_eq!(rep.safety_kind, SafetyKind::StrictlyMixed);
                assert!(rep.equal, "{:?} player {player}", g.to_json());
            }
        }
    }
    assert!(covered > 0);
}
