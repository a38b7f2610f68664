//! Phase-one simplex over the rationals, used only as a feasibility test.

use num_traits::{Signed, Zero};

use super::linalg::{q, Q};

/// Some `x >= 0` with `a x = b`, or `None` if there is none.
///
/// Artificial variables start in the basis and their sum is minimized;
/// Bland's rule on both the entering and the leaving variable rules out
/// cycling.
pub fn find_nonnegative(a: &[Vec<Q>], b: &[Q], vars: usize) -> Option<Vec<Q>> {
    let rows = a.len();
    let width = vars + rows + 1;
    let rhs = width - 1;
    let mut t: Vec<Vec<Q>> = Vec::with_capacity(rows);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        let flip = bi.is_negative();
        let mut r = vec![Q::zero(); width];
        for (j, x) in row.iter().enumerate() {
            r[j] = if flip { -x.clone() } else { x.clone() };
        }
        r[vars + i] = q(1);
        r[rhs] = bi.abs();
        t.push(r);
    }
    let mut basis: Vec<usize> = (vars..vars + rows).collect();
    // reduced costs of the phase-one objective; obj[rhs] holds minus its value
    let mut obj = vec![Q::zero(); width];
    for r in &t {
        for j in 0..vars {
            obj[j] -= &r[j];
        }
        obj[rhs] -= &r[rhs];
    }
    while let Some(enter) = (0..vars + rows).find(|&j| obj[j].is_negative()) {
        let mut leave: Option<(usize, Q)> = None;
        for i in 0..rows {
            if t[i][enter].is_positive() {
                let ratio = &t[i][rhs] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((l, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // phase one is bounded below by zero, so some row always qualifies
        let (p, _) = leave.expect("phase-one objective is bounded");
        pivot(&mut t, &mut obj, p, enter);
        basis[p] = enter;
    }
    if !obj[rhs].is_zero() {
        return None;
    }
    let mut x = vec![Q::zero(); vars];
    for (i, &v) in basis.iter().enumerate() {
        if v < vars {
            x[v] = t[i][rhs].clone();
        }
    }
    Some(x)
}

fn pivot(t: &mut [Vec<Q>], obj: &mut [Q], p: usize, c: usize) {
    let inv = q(1) / &t[p][c];
    for x in t[p].iter_mut() {
        *x = &*x * &inv;
    }
    let pivot_row = t[p].clone();
    let eliminate = |row: &mut [Q]| {
        if !row[c].is_zero() {
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
    };
    for (i, row) in t.iter_mut().enumerate() {
        if i != p {
            eliminate(row);
        }
    }
    eliminate(obj);
}
