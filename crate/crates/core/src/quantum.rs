//! Quantum-number bookkeeping for hydrogenic spin-1/2 states.
//!
//! Half-odd-integers (`j`, `m`) are stored doubled so that every label is an
//! exact integer.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{bail, Result};

/// Validated `(n, l, j, m)` labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuantumNumbers {
    n: u32,
    l: u32,
    two_j: u32,
    two_m: i32,
}

impl QuantumNumbers {
    pub fn new(n: u32, l: u32, two_j: u32, two_m: i32) -> Result<Self> {
        if n < 1 {
            bail!(Argument, "principal quantum number n must be >= 1, got {n}");
        }
        if l >= n {
            bail!(Argument, "orbital quantum number l = {l} must satisfy l <= n - 1 = {}", n - 1);
        }
        if two_j % 2 != 1 {
            bail!(Argument, "j must be half-odd-integer, got 2j = {two_j}");
        }
        if two_j != 2 * l + 1 && two_j + 1 != 2 * l {
            bail!(Argument, "j = {}/2 is not l +- 1/2 for l = {l}", two_j);
        }
        if two_m.unsigned_abs() > two_j || two_m.rem_euclid(2) != 1 {
            bail!(Argument, "m = {two_m}/2 invalid for j = {two_j}/2");
        }
        Ok(Self { n, l, two_j, two_m })
    }

    /// State with the stretched projection `m = j`.
    pub fn stretched(n: u32, l: u32, two_j: u32) -> Result<Self> {
        Self::new(n, l, two_j, two_j as i32)
    }

    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn l(&self) -> u32 {
        self.l
    }
    pub fn two_j(&self) -> u32 {
        self.two_j
    }
    pub fn two_m(&self) -> i32 {
        self.two_m
    }
    pub fn j(&self) -> f64 {
        f64::from(self.two_j) / 2.0
    }

    /// Index of the orbital channel within the `(l = j - 1/2, l = j + 1/2)` pair.
    pub fn branch(&self) -> Branch {
        Branch::of(self.l, self.two_j).expect("validated on construction")
    }

    /// Radial quantum number `n - l - 1`.
    pub fn radial(&self) -> u32 {
        self.n - self.l - 1
    }

    /// Every `(n, l, j)` with `n <= n_max`, in `(n, 2j, l)` order and with `m = j`.
    pub fn shells(n_max: u32) -> Vec<Self> {
        let mut out = Vec::new();
        for n in 1..=n_max {
            for two_j in (1..2 * n).step_by(2) {
                for l in [(two_j - 1) / 2, two_j.div_ceil(2)] {
                    if l < n {
                        out.push(Self::stretched(n, l, two_j).expect("enumerated valid"));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for QuantumNumbers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const SPEC: &[u8] = b"spdfghiklmnoqrtuv";
        let letter = SPEC.get(self.l as usize).map(|&c| c as char).unwrap_or('?');
        write!(f, "{}{}_{}/2 (m={}/2)", self.n, letter, self.two_j, self.two_m)
    }
}

/// Checks that `2j` is a positive odd integer.
pub(crate) fn check_two_j(two_j: u32) -> Result<()> {
    if two_j % 2 != 1 {
        bail!(Argument, "j must be a positive half-odd-integer, got 2j = {two_j}");
    }
    Ok(())
}

/// Which of the two orbital channels sharing a given `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Branch {
    /// `l = j - 1/2`
    Lower = 0,
    /// `l = j + 1/2`
    Upper = 1,
}

impl Branch {
    pub fn of(l: u32, two_j: u32) -> Result<Self> {
        check_two_j(two_j)?;
        if 2 * l + 1 == two_j {
            Ok(Branch::Lower)
        } else if 2 * l == two_j + 1 {
            Ok(Branch::Upper)
        } else {
            bail!(Argument, "l = {l} is not j +- 1/2 for j = {two_j}/2")
        }
    }

    pub fn from_index(index: usize) -> Result<Self> {
        match index {
            0 => Ok(Branch::Lower),
            1 => Ok(Branch::Upper),
            _ => bail!(Argument, "channel index must be 0 or 1, got {index}"),
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    /// Orbital quantum number of this channel.
    pub fn l(self, two_j: u32) -> u32 {
        match self {
            Branch::Lower => (two_j - 1) / 2,
            Branch::Upper => two_j.div_ceil(2),
        }
    }
}

/// Branch of the `±iα σ·ê_r` coupling.
///
/// `Plus` selects the upper sign of `±i e σ·E` in the Hamiltonian, which
/// puts `-iα σ·ê_r` into Λ and into the centrifugal numerator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
pub enum CouplingSign {
    #[default]
    Plus,
    Minus,
}

impl CouplingSign {
    pub const BOTH: [CouplingSign; 2] = [CouplingSign::Plus, CouplingSign::Minus];

    /// `+1` for the upper sign, `-1` for the lower one.
    pub fn factor(self) -> i64 {
        match self {
            CouplingSign::Plus => 1,
            CouplingSign::Minus => -1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CouplingSign::Plus => "PLUS",
            CouplingSign::Minus => "MINUS",
        }
    }
}

impl fmt::Display for CouplingSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_labels() {
        assert!(QuantumNumbers::new(0, 0, 1, 1).is_err());
        assert!(QuantumNumbers::new(2, 2, 5, 1).is_err());
        assert!(QuantumNumbers::new(2, 1, 5, 1).is_err());
        assert!(QuantumNumbers::new(2, 1, 2, 0).is_err());
        assert!(QuantumNumbers::new(2, 1, 3, 5).is_err());
        assert!(QuantumNumbers::new(2, 1, 3, 2).is_err());
        assert!(QuantumNumbers::new(1, 0, 1, -1).is_ok());
    }

    #[test]
    fn shells_enumerate_fine_structure_levels() {
        // 1s, 2s 2p 2p, 3s 3p 3p 3d 3d
        assert_eq!(QuantumNumbers::shells(3).len(), 9);
        let s = QuantumNumbers::shells(2);
        assert_eq!((s[1].n(), s[1].l(), s[1].two_j()), (2, 0, 1));
        assert_eq!((s[2].n(), s[2].l(), s[2].two_j()), (2, 1, 1));
    }

    #[test]
    fn branch_labels() {
        assert_eq!(Branch::of(0, 1).unwrap(), Branch::Lower);
        assert_eq!(Branch::of(1, 1).unwrap(), Branch::Upper);
        assert_eq!(Branch::Upper.l(3), 2);
        assert!(Branch::of(3, 1).is_err());
    }
}
