//! Finite posets given by an explicit element list and an order predicate,
//! with the Möbius function and inversion from above.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::HashMap;

pub struct FinitePoset<T, F>
where
    F: Fn(&T, &T) -> bool,
{
    elements: Vec<T>,
    leq: F,
}

impl<T, F> FinitePoset<T, F>
where
    F: Fn(&T, &T) -> bool,
{
    pub fn new(elements: Vec<T>, leq: F) -> Self {
        FinitePoset { elements, leq }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        x == y || (self.leq)(&self.elements[x], &self.elements[y])
    }

    fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    /// Exhaustive reflexivity, antisymmetry and transitivity check.
    pub fn is_partial_order(&self) -> bool {
        let n = self.len();
        let le = |x: usize, y: usize| (self.leq)(&self.elements[x], &self.elements[y]);
        (0..n).all(|x| le(x, x))
            && (0..n).all(|x| (0..n).all(|y| x == y || !(le(x, y) && le(y, x))))
            && (0..n).all(|x| (0..n).all(|y| !le(x, y) || (0..n).all(|z| !le(y, z) || le(x, z))))
    }

    /// The unique minimal element, if the poset has a least element.
    pub fn bottom(&self) -> Option<usize> {
        (0..self.len()).find(|&x| (0..self.len()).all(|y| self.leq(x, y)))
    }

    /// The unique maximal element, if the poset has a greatest element.
    pub fn top(&self) -> Option<usize> {
        (0..self.len()).find(|&x| (0..self.len()).all(|y| self.leq(y, x)))
    }

    /// `mu(x, y)` for every `y`, in element order.
    ///
    /// Elements above `x` are visited in order of their down-set size, a
    /// linear extension, so each value only depends on values already known.
    pub fn mobius_row(&self, x: usize) -> Vec<BigInt> {
        let n = self.len();
        let mut mu = vec![BigInt::zero(); n];
        let mut above: Vec<usize> = (0..n).filter(|&y| self.leq(x, y)).collect();
        let rank: Vec<usize> = (0..n)
            .map(|y| (0..n).filter(|&z| self.leq(z, y)).count())
            .collect();
        above.sort_by_key(|&y| rank[y]);
        for (i, &y) in above.iter().enumerate() {
            if y == x {
                mu[y] = BigInt::one();
                continue;
            }
            let mut s = BigInt::zero();
            for &z in &above[..i] {
                if self.lt(z, y) {
                    s += &mu[z];
                }
            }
            mu[y] = -s;
        }
        mu
    }

    pub fn mobius(&self, x: usize, y: usize) -> BigInt {
        if !self.leq(x, y) {
            return BigInt::zero();
        }
        self.mobius_row(x).swap_remove(y)
    }

    /// `f(x) = sum_{y >= x} g(y)`.
    pub fn sum_above(&self, g: &[BigInt]) -> Vec<BigInt> {
        (0..self.len())
            .map(|x| {
                (0..self.len())
                    .filter(|&y| self.leq(x, y))
                    .map(|y| &g[y])
                    .sum()
            })
            .collect()
    }

    /// `g(x) = sum_{y >= x} mu(x, y) f(y)`.
    pub fn invert_from_above(&self, f: &[BigInt]) -> Vec<BigInt> {
        let mut memo = MobiusMemo::new(self);
        (0..self.len())
            .map(|x| {
                let row = memo.row(x);
                (0..self.len()).map(|y| &row[y] * &f[y]).sum()
            })
            .collect()
    }

    /// Evaluates both sides of Möbius inversion from above for the given
    /// pair and reports whether they agree (both hold or both fail).
    pub fn mobius_inversion_check(&self, f: &[BigInt], g: &[BigInt]) -> bool {
        let lhs = self.sum_above(g) == f;
        let rhs = self.invert_from_above(f) == g;
        lhs == rhs
    }
}

/// Row cache for repeated `mu(x, _)` queries against one poset.
pub struct MobiusMemo<'p, T, F>
where
    F: Fn(&T, &T) -> bool,
{
    poset: &'p FinitePoset<T, F>,
    rows: HashMap<usize, Vec<BigInt>>,
}

impl<'p, T, F> MobiusMemo<'p, T, F>
where
    F: Fn(&T, &T) -> bool,
{
    pub fn new(poset: &'p FinitePoset<T, F>) -> Self {
        MobiusMemo {
            poset,
            rows: HashMap::new(),
        }
    }

    pub fn row(&mut self, x: usize) -> &[BigInt] {
        let poset = self.poset;
        self.rows.entry(x).or_insert_with(|| poset.mobius_row(x))
    }

    pub fn get(&mut self, x: usize, y: usize) -> BigInt {
        self.row(x)[y].clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boolean_lattice(r: u32) -> FinitePoset<u32, impl Fn(&u32, &u32) -> bool> {
        FinitePoset::new((0..1u32 << r).collect(), |a: &u32, b: &u32| a & !b == 0)
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn diagonal_is_one() {
        let p = boolean_lattice(3);
        for x in 0..p.len() {
            assert_eq!(p.mobius(x, x), BigInt::one());
        }
    }

    #[test]
    fn two_chain() {
        let p = FinitePoset::new(vec![0, 1], |a: &i32, b: &i32| a <= b);
        assert_eq!(p.mobius(0, 1), BigInt::from(-1));
        assert_eq!(p.mobius(1, 0), BigInt::zero());
    }

    #[test]
    fn boolean_lattice_alternates() {
        for r in 0..6 {
            let p = boolean_lattice(r);
            let top = p.top().unwrap();
            let expected = if r % 2 == 0 { 1 } else { -1 };
            assert_eq!(p.mobius(0, top), BigInt::from(expected));
            // mu(bottom, S) = (-1)^{|S|}
            let row = p.mobius_row(0);
            for (s, mu) in row.iter().enumerate() {
                let sign = if (s as u32).count_ones().is_multiple_of(2) {
                    1
                } else {
                    -1
                };
                assert_eq!(*mu, BigInt::from(sign));
            }
        }
    }

    #[test]
    fn defining_recurrence_sums_to_zero() {
        // divisor lattice of 60 is not boolean, so this exercises the general path
        let divisors: Vec<u32> = (1..=60).filter(|d| 60 % d == 0).collect();
        let p = FinitePoset::new(divisors, |a: &u32, b: &u32| b.is_multiple_of(*a));
        assert!(p.is_partial_order());
        for x in 0..p.len() {
            let row = p.mobius_row(x);
            for y in 0..p.len() {
                if x != y && p.leq(x, y) {
                    let s: BigInt = (0..p.len())
                        .filter(|&z| p.leq(x, z) && p.leq(z, y))
                        .map(|z| row[z].clone())
                        .sum();
                    assert!(s.is_zero());
                }
            }
        }
        // classical number-theoretic Möbius: mu(1, 30) = -1, mu(1, 4) = 0
        let idx = |v: u32| p.elements().iter().position(|&d| d == v).unwrap();
        assert_eq!(p.mobius(idx(1), idx(30)), BigInt::from(-1));
        assert_eq!(p.mobius(idx(1), idx(4)), BigInt::zero());
        assert_eq!(p.mobius(idx(2), idx(6)), BigInt::from(-1));
    }

    #[test]
    fn inversion_single_element() {
        let p = FinitePoset::new(vec![()], |_: &(), _: &()| true);
        assert!(p.mobius_inversion_check(&big(&[7]), &big(&[7])));
    }

    #[test]
    fn inversion_boolean_lattice_indicator_of_top() {
        let p = boolean_lattice(2);
        let top = p.top().unwrap();
        let mut g = big(&[0, 0, 0, 0]);
        g[top] = BigInt::one();
        let f = p.sum_above(&g);
        assert!(p.mobius_inversion_check(&f, &g));
        assert_eq!(p.invert_from_above(&f), g);
        // a mismatched pair fails both sides, which is still consistent
        assert!(p.mobius_inversion_check(&f, &big(&[1, 1, 1, 1])));
    }

    #[test]
    fn memo_agrees_with_direct() {
        let p = boolean_lattice(3);
        let mut memo = MobiusMemo::new(&p);
        for x in 0..p.len() {
            for y in 0..p.len() {
                assert_eq!(memo.get(x, y), p.mobius(x, y));
            }
        }
    }

    #[test]
    fn non_order_detected() {
        let p = FinitePoset::new(vec![0, 1, 2], |a: &i32, b: &i32| (b - a).rem_euclid(3) <= 1);
        assert!(!p.is_partial_order());
    }
}
