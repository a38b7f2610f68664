//! Flow spaces of contractions and the positive-vector alternative.
//!
//! The flow space of `M / S` is the projection of `ker M` onto the columns
//! outside `S`. It contains a strictly positive vector, or else its
//! orthogonal complement contains a nonzero nonnegative vector, and never
//! both.

use num_traits::{Signed, Zero};

use super::linalg::{dot, mat_vec, nullspace, q, rank, Q};
use super::simplex::find_nonnegative;
use super::TuMatrix;
use crate::arcset::ArcSet;
use crate::error::{NlError, Result};

/// A basis of the flow space of a contraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowSpace {
    universe: usize,
    columns: Vec<usize>,
    /// basis vectors, coordinates indexed like `columns`
    basis: Vec<Vec<Q>>,
    /// kernel vectors of the full matrix projecting onto `basis`
    lifts: Vec<Vec<Q>>,
}

impl FlowSpace {
    pub fn columns(&self) -> &[usize] {
        &self.columns
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.basis
    }

    pub fn lifts(&self) -> &[Vec<Q>] {
        &self.lifts
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Coefficients `c` with `sum c_i b_i >= 1` on every coordinate.
    fn positive_combination(&self) -> Option<Vec<Q>> {
        let r = self.basis.len();
        let t = self.columns.len();
        // variables c+ (r), c- (r), surplus (t)
        let a: Vec<Vec<Q>> = (0..t)
            .map(|j| {
                let mut row = vec![Q::zero(); 2 * r + t];
                for i in 0..r {
                    row[i] = self.basis[i][j].clone();
                    row[r + i] = -self.basis[i][j].clone();
                }
                row[2 * r + j] = q(-1);
                row
            })
            .collect();
        let x = find_nonnegative(&a, &vec![q(1); t], 2 * r + t)?;
        Some((0..r).map(|i| &x[i] - &x[r + i]).collect())
    }

    /// `w >= 0` summing to 1 and orthogonal to the space.
    fn obstruction(&self) -> Option<Vec<Q>> {
        let t = self.columns.len();
        let mut a = self.basis.clone();
        a.push(vec![q(1); t]);
        let mut b = vec![Q::zero(); self.basis.len()];
        b.push(q(1));
        find_nonnegative(&a, &b, t)
    }

    /// Whether the space has a vector that is positive on every coordinate.
    pub fn is_totally_cyclic(&self) -> bool {
        self.columns.is_empty() || self.positive_combination().is_some()
    }
}

/// `M / S` as a projected kernel.
pub fn contract_matroid(m: &TuMatrix, s: &ArcSet) -> FlowSpace {
    assert_eq!(
        s.universe(),
        m.cols(),
        "element set over the wrong universe"
    );
    let kernel = nullspace(&m.to_rational(), m.cols());
    let columns: Vec<usize> = (0..m.cols()).filter(|&j| !s.contains(j)).collect();
    let mut basis: Vec<Vec<Q>> = Vec::new();
    let mut lifts = Vec::new();
    for v in kernel {
        let proj: Vec<Q> = columns.iter().map(|&j| v[j].clone()).collect();
        basis.push(proj);
        if rank(&basis, columns.len()) < basis.len() {
            basis.pop();
        } else {
            lifts.push(v);
        }
    }
    FlowSpace {
        universe: m.cols(),
        columns,
        basis,
        lifts,
    }
}

/// Whether the all-positive sign vector is a vector of the matroid.
pub fn is_totally_cyclic_matroid(m: &TuMatrix) -> bool {
    contract_matroid(m, &ArcSet::empty(m.cols())).is_totally_cyclic()
}

/// Exactly one side of the alternative for `M / S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FarkasCertificate {
    /// `x` with `M x = 0` and `x_j >= 1` for every `j` outside `S`
    Positive(Vec<Q>),
    /// `w >= 0` on the columns outside `S`, summing to 1, orthogonal to
    /// the flow space of `M / S`; zero on `S`
    Obstruction(Vec<Q>),
}

impl FarkasCertificate {
    /// Exact check of the certificate against `M` and `S`.
    pub fn check(&self, m: &TuMatrix, s: &ArcSet) -> bool {
        let outside: Vec<usize> = (0..m.cols()).filter(|&j| !s.contains(j)).collect();
        match self {
            FarkasCertificate::Positive(x) => {
                x.len() == m.cols()
                    && mat_vec(&m.to_rational(), x).iter().all(Zero::is_zero)
                    && outside.iter().all(|&j| x[j] >= q(1))
            }
            FarkasCertificate::Obstruction(w) => {
                if w.len() != m.cols() || w.iter().any(Signed::is_negative) {
                    return false;
                }
                if s.iter().any(|j| !w[j].is_zero()) || w.iter().sum::<Q>() != q(1) {
                    return false;
                }
                // orthogonal to the projection of every kernel vector
                nullspace(&m.to_rational(), m.cols())
                    .iter()
                    .all(|v| dot(v, w).is_zero())
            }
        }
    }
}

/// Solves both sides of the alternative independently and returns the
/// feasible one after checking it exactly. Fails if both or neither side
/// is feasible, or a certificate does not check.
pub fn farkas_certificate(m: &TuMatrix, s: &ArcSet) -> Result<FarkasCertificate> {
    let space = contract_matroid(m, s);
    let positive = space.positive_combination().map(|c| {
        let mut x = vec![Q::zero(); space.universe];
        for (ci, lift) in c.iter().zip(&space.lifts) {
            for (xj, lj) in x.iter_mut().zip(lift) {
                *xj += ci * lj;
            }
        }
        FarkasCertificate::Positive(x)
    });
    let obstruction = space.obstruction().map(|w| {
        let mut full = vec![Q::zero(); space.universe];
        for (&j, wj) in space.columns.iter().zip(w) {
            full[j] = wj;
        }
        FarkasCertificate::Obstruction(full)
    });
    let cert = match (positive, obstruction) {
        (Some(_), Some(_)) => {
            return Err(NlError::FarkasViolation(format!(
                "both alternatives feasible for S = {s:?}"
            )))
        }
        (None, None) => {
            return Err(NlError::FarkasViolation(format!(
                "neither alternative feasible for S = {s:?}"
            )))
        }
        (Some(c), None) | (None, Some(c)) => c,
    };
    if !cert.check(m, s) {
        return Err(NlError::FarkasViolation(format!(
            "certificate failed its check: {cert:?}"
        )));
    }
    Ok(cert)
}
