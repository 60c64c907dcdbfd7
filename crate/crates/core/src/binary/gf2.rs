//! Gaussian elimination over GF(2) for the classical half of Simon's
//! algorithm.

use serde::{Deserialize, Serialize};

use super::BitString;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "period", rename_all = "lowercase")]
pub enum PeriodSolution {
    /// The single nonzero `s` with `m . s = 0` for every sample.
    Unique(BitString),
    /// Rank below `n - 1`; more samples needed.
    Underdetermined,
    /// Full rank: only `s = 0^n` solves the system.
    Inconsistent,
}

/// Row-echelon basis that accepts vectors one at a time and reports whether
/// each one raised the rank.
#[derive(Debug, Clone)]
pub struct Gf2Basis {
    n: usize,
    // rows[i] has its leading one at pivots[i]
    rows: Vec<BitString>,
    pivots: Vec<usize>,
}

impl Gf2Basis {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[BitString] {
        &self.rows
    }

    fn reduce(&self, v: &BitString) -> BitString {
        let mut v = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(row).expect("equal lengths");
            }
        }
        v
    }

    /// Inserts `v`; returns `true` if it was independent of the basis.
    pub fn insert(&mut self, v: &BitString) -> Result<bool> {
        if v.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: v.len(),
            });
        }
        let r = self.reduce(v);
        let Some(p) = r.first_one() else {
            return Ok(false);
        };
        // keep the basis fully reduced so back-substitution is trivial
        for (row, _) in self.rows.iter_mut().zip(&self.pivots) {
            if row.get(p) {
                row.xor_assign(&r).expect("equal lengths");
            }
        }
        self.rows.push(r);
        self.pivots.push(p);
        Ok(true)
    }

    /// Nonzero vector orthogonal to every row, if the nullspace is exactly
    /// one-dimensional.
    fn null_vector(&self) -> Option<BitString> {
        if self.rank() + 1 != self.n {
            return None;
        }
        let free = (0..self.n).find(|c| !self.pivots.contains(c))?;
        let mut s = BitString::zeros(self.n);
        s.set(free, true);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if row.get(free) {
                s.set(p, true);
            }
        }
        Some(s)
    }
}

/// Solves `m . s = 0` for all samples `m` of width `n`.
///
/// An empty sample list gives `Underdetermined` for `n >= 2`; for `n = 1`
/// no equations are needed and `s = 1` is returned.
pub fn solve_period(n: usize, samples: &[BitString]) -> Result<PeriodSolution> {
    let mut basis = Gf2Basis::new(n);
    for m in samples {
        basis.insert(m)?;
    }
    Ok(match basis.rank() {
        r if r == n => PeriodSolution::Inconsistent,
        r if r + 1 == n => PeriodSolution::Unique(basis.null_vector().expect("corank one")),
        _ => PeriodSolution::Underdetermined,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> BitString {
        s.parse().unwrap()
    }

    /// Brute-force oracle: every nonzero `s` orthogonal to all samples.
    fn brute(n: usize, samples: &[BitString]) -> Vec<BitString> {
        BitString::all(n)
            .skip(1)
            .filter(|s| samples.iter().all(|m| !m.dot(s).unwrap()))
            .collect()
    }

    #[test]
    fn documented_examples() {
        assert_eq!(brute(2, &[b("00"), b("11")]), vec![b("11")]);
        assert_eq!(
            solve_period(2, &[b("00"), b("11")]).unwrap(),
            PeriodSolution::Unique(b("11"))
        );
        assert_eq!(
            solve_period(2, &[b("00")]).unwrap(),
            PeriodSolution::Underdetermined
        );
        assert!(brute(2, &[b("01"), b("10")]).is_empty());
        assert_eq!(
            solve_period(2, &[b("01"), b("10")]).unwrap(),
            PeriodSolution::Inconsistent
        );
        assert_eq!(
            solve_period(2, &[]).unwrap(),
            PeriodSolution::Underdetermined
        );
        assert_eq!(
            solve_period(1, &[]).unwrap(),
            PeriodSolution::Unique(b("1"))
        );
    }

    #[test]
    fn agrees_with_brute_force_for_all_small_sample_sets() {
        for n in 1..=4usize {
            let size = 1usize << n;
            // all pairs and triples of samples
            for a in 0..size {
                for c in 0..size {
                    for d in [0, size - 1, a ^ c] {
                        let samples: Vec<_> = [a, c, d]
                            .iter()
                            .map(|&v| BitString::from_value(v, n))
                            .collect();
                        let expected = brute(n, &samples);
                        let got = solve_period(n, &samples).unwrap();
                        match got {
                            PeriodSolution::Unique(s) => {
                                assert_eq!(expected, vec![s.clone()]);
                                assert!(samples.iter().all(|m| !m.dot(&s).unwrap()));
                            }
                            PeriodSolution::Inconsistent => assert!(expected.is_empty()),
                            PeriodSolution::Underdetermined => assert!(expected.len() > 1),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn insert_reports_independence() {
        let mut basis = Gf2Basis::new(3);
        assert!(basis.insert(&b("110")).unwrap());
        assert!(!basis.insert(&b("110")).unwrap());
        assert!(basis.insert(&b("011")).unwrap());
        assert!(!basis.insert(&b("101")).unwrap());
        assert!(!basis.insert(&b("000")).unwrap());
        assert_eq!(basis.rank(), 2);
        assert!(basis.insert(&b("11")).is_err());
    }
}
