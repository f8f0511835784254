//! Dense exact simplex for `max c.y  s.t.  A y <= b, y >= 0` with `b >= 0`.
//!
//! The slack basis is feasible from the start, so there is no phase one.
//! Entering and leaving variables follow Bland's rule, which cannot cycle.

use crate::rational::Rational;

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub objective: Rational,
    /// Optimal values of the structural variables.
    pub primal: Vec<Rational>,
    /// Optimal dual prices, one per constraint row.
    pub dual: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Unbounded,
}

pub fn maximize(
    a: &[Vec<Rational>],
    b: &[Rational],
    c: &[Rational],
) -> Result<LpSolution, LpOutcome> {
    let m = a.len();
    let n = c.len();
    assert_eq!(b.len(), m);
    assert!(a.iter().all(|row| row.len() == n));
    assert!(b.iter().all(|x| !x.is_negative()), "b must be non-negative");

    let width = n + m;
    // Row i: [A_i | e_i | b_i]
    let mut tab: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let mut row = a[i].clone();
            row.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
            row.push(b[i].clone());
            row
        })
        .collect();
    // Reduced-cost row: -c for structurals, 0 for slacks, objective at the end.
    let mut obj: Vec<Rational> = c.iter().map(|x| -x).collect();
    obj.extend((0..=m).map(|_| Rational::zero()));
    let mut basis: Vec<usize> = (n..n + m).collect();

    loop {
        let Some(enter) = (0..width).find(|&j| obj[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if !tab[i][enter].is_positive() {
                continue;
            }
            let ratio = &tab[i][width] / &tab[i][enter];
            leave = match leave {
                None => Some((i, ratio)),
                Some((best, best_ratio)) => {
                    if ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[best]) {
                        Some((i, ratio))
                    } else {
                        Some((best, best_ratio))
                    }
                }
            };
        }
        let Some((pivot_row, _)) = leave else {
            return Err(LpOutcome::Unbounded);
        };

        let pivot = tab[pivot_row][enter].clone();
        for x in tab[pivot_row].iter_mut() {
            *x = &*x / &pivot;
        }
        let prow = tab[pivot_row].clone();
        for (i, row) in tab.iter_mut().enumerate() {
            if i == pivot_row || row[enter].is_zero() {
                continue;
            }
            let factor = row[enter].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                *x = &*x - &factor * p;
            }
        }
        if !obj[enter].is_zero() {
            let factor = obj[enter].clone();
            for (x, p) in obj.iter_mut().zip(&prow) {
                *x = &*x - &factor * p;
            }
        }
        basis[pivot_row] = enter;
    }

    let mut primal = vec![Rational::zero(); n];
    for (i, &var) in basis.iter().enumerate() {
        if var < n {
            primal[var] = tab[i][width].clone();
        }
    }
    let dual = obj[n..n + m].to_vec();
    Ok(LpSolution {
        objective: obj[width].clone(),
        primal,
        dual,
    })
}
