//! Numerical semigroups: submonoids of ℕ with finite complement.

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericalError {
    #[error("generator set is empty")]
    Empty,
    #[error("generators have gcd {0}, so the complement is infinite")]
    GcdNotOne(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericalSemigroup {
    generators: Vec<usize>,
    frobenius: i64,
    gaps: Vec<usize>,
}

impl NumericalSemigroup {
    /// Builds `⟨generators⟩`, sieving membership until a run of
    /// `min(generators)` consecutive members shows every larger integer is a
    /// member too.
    pub fn from_generators(generators: &[usize]) -> Result<Self, NumericalError> {
        let mut gens: Vec<usize> = generators.iter().copied().filter(|&a| a > 0).collect();
        gens.sort_unstable();
        gens.dedup();
        if gens.is_empty() {
            return if generators.is_empty() {
                Err(NumericalError::Empty)
            } else {
                Err(NumericalError::GcdNotOne(0))
            };
        }
        let g = gens.iter().fold(0usize, |acc, &a| acc.gcd(&a));
        if g != 1 {
            return Err(NumericalError::GcdNotOne(g));
        }

        let smallest = gens[0];
        let mut member = vec![true];
        let mut run = 1;
        let mut n = 0;
        while run < smallest {
            n += 1;
            let m = gens.iter().any(|&a| a <= n && member[n - a]);
            member.push(m);
            run = if m { run + 1 } else { 0 };
        }
        let gaps: Vec<usize> = (0..member.len()).filter(|&i| !member[i]).collect();
        let frobenius = gaps.last().map_or(-1, |&f| f as i64);
        Ok(NumericalSemigroup {
            generators: gens,
            frobenius,
            gaps,
        })
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Largest gap, or −1 for ℕ.
    pub fn frobenius(&self) -> i64 {
        self.frobenius
    }

    /// `max{F(S), 0}`, the axis contribution used by the gap bound of
    /// generalized semigroups.
    pub fn clamped_frobenius(&self) -> usize {
        self.frobenius.max(0) as usize
    }

    pub fn gaps(&self) -> &[usize] {
        &self.gaps
    }

    pub fn genus(&self) -> usize {
        self.gaps.len()
    }

    pub fn contains(&self, n: usize) -> bool {
        self.gaps.binary_search(&n).is_err()
    }
}
