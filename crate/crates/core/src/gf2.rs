//! Gaussian elimination over GF(2) on packed rows.

use crate::bits::BitString;
use crate::error::Result;

/// Result of solving `A a = b` over GF(2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Solution {
    /// The unique solution, present only when the system is consistent and
    /// has full column rank.
    pub solution: Option<BitString>,
    pub rank: usize,
    pub inconsistent: bool,
}

/// An augmented linear system with `n` unknowns.
#[derive(Clone, Debug)]
pub struct Gf2System {
    n: usize,
    rows: Vec<Vec<u64>>,
    rhs: Vec<bool>,
}

impl Gf2System {
    pub fn new(n: usize) -> Self {
        Gf2System { n, rows: Vec::new(), rhs: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn push(&mut self, coefficients: &BitString, rhs: bool) -> Result<()> {
        coefficients.check_len(self.n)?;
        self.rows.push(coefficients.words().to_vec());
        self.rhs.push(rhs);
        Ok(())
    }

    /// Reduces to row echelon form and back-substitutes.
    pub fn solve(mut self) -> Gf2Solution {
        let n = self.n;
        let m = self.rows.len();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..n {
            if rank == m {
                break;
            }
            let (w, bit) = (col / 64, 1u64 << (col % 64));
            let Some(p) = (rank..m).find(|&r| self.rows[r][w] & bit != 0) else {
                continue;
            };
            self.rows.swap(rank, p);
            self.rhs.swap(rank, p);
            let pivot_row = self.rows[rank].clone();
            let pivot_rhs = self.rhs[rank];
            for r in 0..m {
                if r != rank && self.rows[r][w] & bit != 0 {
                    for (x, y) in self.rows[r].iter_mut().zip(&pivot_row) {
                        *x ^= y;
                    }
                    self.rhs[r] ^= pivot_rhs;
                }
            }
            pivots.push(col);
            rank += 1;
        }
        // rows below the rank are zero; a set right-hand side there is a contradiction
        let inconsistent = self.rhs[rank..].iter().any(|&b| b);
        let solution = if !inconsistent && rank == n {
            let mut a = BitString::zeros(n);
            for (r, &col) in pivots.iter().enumerate() {
                a.set(col, self.rhs[r]);
            }
            Some(a)
        } else {
            None
        };
        Gf2Solution { solution, rank, inconsistent }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn solves_identity_system() {
        let a = bits("1011");
        let mut sys = Gf2System::new(4);
        for i in 0..4 {
            let mut e = BitString::zeros(4);
            e.set(i, true);
            sys.push(&e, a.get(i)).unwrap();
        }
        let sol = sys.solve();
        assert_eq!(sol.solution, Some(a));
        assert_eq!(sol.rank, 4);
    }

    #[test]
    fn rank_deficient_returns_none() {
        let mut sys = Gf2System::new(3);
        sys.push(&bits("110"), true).unwrap();
        sys.push(&bits("011"), false).unwrap();
        sys.push(&bits("101"), true).unwrap();
        let sol = sys.solve();
        assert_eq!(sol.rank, 2);
        assert!(sol.solution.is_none());
        assert!(!sol.inconsistent);
    }

    #[test]
    fn detects_inconsistency() {
        let mut sys = Gf2System::new(2);
        sys.push(&bits("11"), true).unwrap();
        sys.push(&bits("11"), false).unwrap();
        sys.push(&bits("10"), false).unwrap();
        let sol = sys.solve();
        assert!(sol.inconsistent);
        assert!(sol.solution.is_none());
    }

    #[test]
    fn wide_system_over_word_boundary() {
        let n = 70;
        let mut a = BitString::zeros(n);
        for i in (0..n).step_by(3) {
            a.set(i, true);
        }
        let mut sys = Gf2System::new(n);
        // rows e_i + e_{i+1}, plus e_{n-1}
        for i in 0..n - 1 {
            let mut r = BitString::zeros(n);
            r.set(i, true);
            r.set(i + 1, true);
            sys.push(&r, a.get(i) ^ a.get(i + 1)).unwrap();
        }
        let mut last = BitString::zeros(n);
        last.set(n - 1, true);
        sys.push(&last, a.get(n - 1)).unwrap();
        assert_eq!(sys.solve().solution, Some(a));
    }
}
