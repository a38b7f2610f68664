use std::fmt;
use std::str::FromStr;

use crate::error::{NlError, Result};

/// A finite abelian group `Z_{d1} x ... x Z_{dr}`.
///
/// Elements are residue tuples, encoded as mixed-radix indices in
/// `0..order` with the first factor least significant; index 0 is the
/// identity. The empty product is the trivial group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    factors: Vec<u64>,
}

impl AbelianGroup {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if factors.iter().any(|&d| d < 2) {
            return Err(NlError::Domain(format!(
                "cyclic factors must have order at least 2, got {factors:?}"
            )));
        }
        Ok(AbelianGroup { factors })
    }

    pub fn cyclic(k: u64) -> Self {
        match k {
            0 => panic!("the cyclic group of order 0 is infinite"),
            1 => Self::trivial(),
            _ => AbelianGroup { factors: vec![k] },
        }
    }

    pub fn trivial() -> Self {
        AbelianGroup {
            factors: Vec::new(),
        }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    /// Every way of writing `k` as a nondecreasing product of factors >= 2.
    /// This covers each abelian group of order `k` up to isomorphism, some
    /// of them more than once (`Z2 x Z3` and `Z6`).
    pub fn all_of_order(k: u64) -> Vec<AbelianGroup> {
        fn go(rest: u64, min: u64, acc: &mut Vec<u64>, out: &mut Vec<AbelianGroup>) {
            if rest == 1 {
                out.push(AbelianGroup {
                    factors: acc.clone(),
                });
                return;
            }
            for d in min..=rest {
                if rest.is_multiple_of(d) {
                    acc.push(d);
                    go(rest / d, d, acc, out);
                    acc.pop();
                }
            }
        }
        assert!(k >= 1, "group order must be positive");
        let mut out = Vec::new();
        go(k, 2, &mut Vec::new(), &mut out);
        out
    }

    pub fn encode(&self, residues: &[u64]) -> usize {
        assert_eq!(residues.len(), self.factors.len());
        let mut idx = 0u64;
        for (r, d) in residues.iter().zip(&self.factors).rev() {
            idx = idx * d + r % d;
        }
        idx as usize
    }

    pub fn decode(&self, mut idx: usize) -> Vec<u64> {
        self.factors
            .iter()
            .map(|&d| {
                let r = idx as u64 % d;
                idx /= d as usize;
                r
            })
            .collect()
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (ra, rb) = (self.decode(a), self.decode(b));
        let sum: Vec<u64> = ra
            .iter()
            .zip(&rb)
            .zip(&self.factors)
            .map(|((x, y), d)| (x + y) % d)
            .collect();
        self.encode(&sum)
    }

    pub fn neg(&self, a: usize) -> usize {
        let r: Vec<u64> = self
            .decode(a)
            .iter()
            .zip(&self.factors)
            .map(|(x, d)| (d - x) % d)
            .collect();
        self.encode(&r)
    }

    /// Addition and negation tables, for enumeration inner loops.
    pub fn tables(&self) -> GroupTables {
        let k = self.order() as usize;
        let mut add = vec![0usize; k * k];
        for a in 0..k {
            for b in 0..k {
                add[a * k + b] = self.add(a, b);
            }
        }
        let neg = (0..k).map(|a| self.neg(a)).collect();
        GroupTables { order: k, add, neg }
    }
}

pub struct GroupTables {
    pub order: usize,
    add: Vec<usize>,
    neg: Vec<usize>,
}

impl GroupTables {
    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b]
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("z1");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("z{d}")).collect();
        f.write_str(&parts.join("x"))
    }
}

impl FromStr for AbelianGroup {
    type Err = NlError;

    /// `z4`, `z2xz2`, `z3xz9`; `z1` is the trivial group.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || NlError::Domain(format!("bad group spec {s:?}; expected e.g. z4 or z2xz2"));
        let mut factors = Vec::new();
        for part in s.trim().to_ascii_lowercase().split('x') {
            let d: u64 = part
                .strip_prefix('z')
                .and_then(|d| d.parse().ok())
                .ok_or_else(bad)?;
            match d {
                0 => return Err(bad()),
                1 => {}
                d => factors.push(d),
            }
        }
        Ok(AbelianGroup { factors })
    }
}
