#![allow(dead_code)]

use compsafe::{BimatrixGame, MixedStrategy, Rational};
use proptest::prelude::*;

pub fn rational(lo: i64, hi: i64) -> impl Strategy<Value = Rational> {
    (lo..=hi, 1i64..=6).prop_map(|(n, d)| Rational::new(n, d))
}

pub fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..=40, 1i64..=7).prop_map(|(n, d)| Rational::new(n, d))
}

pub fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec(prop::collection::vec(rational(-12, 12), cols), rows)
}

pub fn game(rows: usize, cols: usize) -> impl Strategy<Value = BimatrixGame> {
    (matrix(rows, cols), matrix(rows, cols))
        .prop_map(|(u1, u2)| BimatrixGame::from_payoffs(u1, u2).unwrap())
}

pub fn any_small_game() -> impl Strategy<Value = BimatrixGame> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(r, c)| game(r, c))
}

/// Mixed strategy with small integer weights, normalized.
pub fn mixture(len: usize) -> impl Strategy<Value = MixedStrategy> {
    prop::collection::vec(0i64..=9, len)
        .prop_filter("non-zero weight", |w| w.iter().any(|&x| x > 0))
        .prop_map(|w| {
            let total: i64 = w.iter().sum();
            MixedStrategy::new(w.iter().map(|&x| Rational::new(x, total)).collect()).unwrap()
        })
}

/// Symmetric `l x l` table.
pub fn symmetric(l: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec(rational(1, 20), l * (l + 1) / 2).prop_map(move |vals| {
        let mut m = vec![vec![Rational::zero(); l]; l];
        let mut it = vals.into_iter();
        for s in 0..l {
            for t in s..l {
                let v = it.next().unwrap();
                m[s][t] = v.clone();
                m[t][s] = v;
            }
        }
        m
    })
}

pub fn ints(rows: &[[i64; 2]; 2]) -> Vec<Vec<Rational>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect())
        .collect()
}
