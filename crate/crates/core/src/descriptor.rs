//! Irreducible finite Coxeter types and their Coxeter matrices.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{CoxeterError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    D,
    I2,
    H3,
    H4,
    F4,
    E6,
    E7,
    E8,
}

impl Family {
    pub fn is_crystallographic(self) -> bool {
        !matches!(self, Family::I2 | Family::H3 | Family::H4)
    }

    /// Families whose elements have a signed-permutation model.
    pub fn has_permutation_model(self) -> bool {
        matches!(self, Family::A | Family::B | Family::D)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::D => "D",
            Family::I2 => "I2",
            Family::H3 => "H3",
            Family::H4 => "H4",
            Family::F4 => "F4",
            Family::E6 => "E6",
            Family::E7 => "E7",
            Family::E8 => "E8",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = CoxeterError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "A" => Family::A,
            "B" | "C" => Family::B,
            "D" => Family::D,
            "I2" | "I" => Family::I2,
            "H3" => Family::H3,
            "H4" => Family::H4,
            "F4" => Family::F4,
            "E6" => Family::E6,
            "E7" => Family::E7,
            "E8" => Family::E8,
            other => return Err(CoxeterError::InvalidDescriptor(format!("unknown family {other:?}"))),
        })
    }
}

/// An irreducible finite Coxeter type such as `B3` or `I2(5)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoxeterDescriptor {
    pub family: Family,
    pub rank: usize,
    /// Dihedral parameter; only meaningful for `I2`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
}

impl CoxeterDescriptor {
    /// Builds and validates a descriptor. `m` is required for `I2` and
    /// ignored otherwise.
    pub fn new(family: Family, rank: usize, m: Option<u32>) -> Result<Self> {
        let bad = |msg: String| Err(CoxeterError::InvalidDescriptor(msg));
        let fixed = match family {
            Family::H3 => Some(3),
            Family::H4 | Family::F4 => Some(4),
            Family::E6 => Some(6),
            Family::E7 => Some(7),
            Family::E8 => Some(8),
            Family::I2 => Some(2),
            _ => None,
        };
        if let Some(r) = fixed {
            if rank != r {
                return bad(format!("{family} has rank {r}, got {rank}"));
            }
        }
        let min_rank = match family {
            Family::A => 1,
            Family::B => 2,
            Family::D => 4,
            _ => 0,
        };
        if rank < min_rank {
            return bad(format!("{family}{rank}: rank must be at least {min_rank}"));
        }
        // Degree of the signed-permutation model stays within i32 points.
        if rank > 10_000 {
            return bad(format!("rank {rank} is unreasonably large"));
        }
        let m = match family {
            Family::I2 => match m {
                Some(m) if m >= 5 => Some(m),
                Some(m) => return bad(format!("I2({m}): m must be at least 5")),
                None => return bad("I2 requires the parameter m".into()),
            },
            _ => None,
        };
        Ok(CoxeterDescriptor { family, rank, m })
    }

    pub fn a(rank: usize) -> Self {
        Self::new(Family::A, rank, None).expect("valid A rank")
    }
    pub fn b(rank: usize) -> Self {
        Self::new(Family::B, rank, None).expect("valid B rank")
    }
    pub fn d(rank: usize) -> Self {
        Self::new(Family::D, rank, None).expect("valid D rank")
    }
    pub fn dihedral(m: u32) -> Self {
        Self::new(Family::I2, 2, Some(m)).expect("valid dihedral parameter")
    }
    pub fn exceptional(family: Family) -> Self {
        let rank = match family {
            Family::H3 => 3,
            Family::H4 | Family::F4 => 4,
            Family::E6 => 6,
            Family::E7 => 7,
            Family::E8 => 8,
            _ => panic!("{family} is not an exceptional family"),
        };
        Self::new(family, rank, None).expect("fixed rank")
    }

    /// Entry `m_{ij}` of the Coxeter matrix (0-based generator indices).
    pub fn coxeter_entry(&self, i: usize, j: usize) -> u32 {
        assert!(i < self.rank && j < self.rank, "generator index out of range");
        if i == j {
            return 1;
        }
        let (i, j) = (i.min(j), i.max(j));
        let n = self.rank;
        match self.family {
            Family::A => chain(i, j, 3),
            Family::B if j == n - 1 && i == n - 2 => 4,
            Family::B => chain(i, j, 3),
            Family::D if j == n - 1 => {
                // alpha_n = e_{n-1} + e_n hangs off alpha_{n-2}
                if i == n - 3 {
                    3
                } else {
                    2
                }
            }
            Family::D => chain(i, j, 3),
            Family::I2 => self.m.expect("validated"),
            Family::H3 | Family::H4 if i == 0 && j == 1 => 5,
            Family::H3 | Family::H4 => chain(i, j, 3),
            Family::F4 if i == 1 && j == 2 => 4,
            Family::F4 => chain(i, j, 3),
            Family::E6 | Family::E7 | Family::E8 => {
                // Bourbaki labelling: 1-3-4-5-6-7-8 with 2 attached to 4.
                let edge = matches!((i, j), (0, 2) | (1, 3)) || (i >= 2 && j == i + 1);
                if edge {
                    3
                } else {
                    2
                }
            }
        }
    }

    pub fn coxeter_matrix(&self) -> Vec<Vec<u32>> {
        (0..self.rank).map(|i| (0..self.rank).map(|j| self.coxeter_entry(i, j)).collect()).collect()
    }

    /// Number of reflections, which equals the number of positive roots.
    pub fn reflection_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B => n * n,
            Family::D => n * (n - 1),
            Family::I2 => self.m.expect("validated") as usize,
            Family::H3 => 15,
            Family::H4 => 60,
            Family::F4 => 24,
            Family::E6 => 36,
            Family::E7 => 63,
            Family::E8 => 120,
        }
    }

    /// `|W|`, saturating at `u128::MAX`.
    pub fn group_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).try_fold(1u128, |acc, x| acc.checked_mul(x));
        let pow2 = |k: u128| 1u128.checked_shl(k as u32).filter(|_| k < 128);
        let order = match self.family {
            Family::A => fact(n + 1),
            Family::B => fact(n).zip(pow2(n)).and_then(|(a, b)| a.checked_mul(b)),
            Family::D => fact(n).zip(pow2(n - 1)).and_then(|(a, b)| a.checked_mul(b)),
            Family::I2 => Some(2 * self.m.expect("validated") as u128),
            Family::H3 => Some(120),
            Family::H4 => Some(14_400),
            Family::F4 => Some(1_152),
            Family::E6 => Some(51_840),
            Family::E7 => Some(2_903_040),
            Family::E8 => Some(696_729_600),
        };
        order.unwrap_or(u128::MAX)
    }

    /// Degree of the signed-permutation model (`n+1` for `A_n`, `n` for
    /// `B_n` and `D_n`).
    pub fn permutation_degree(&self) -> Option<usize> {
        match self.family {
            Family::A => Some(self.rank + 1),
            Family::B | Family::D => Some(self.rank),
            _ => None,
        }
    }
}

fn chain(i: usize, j: usize, m: u32) -> u32 {
    if j == i + 1 {
        m
    } else {
        2
    }
}

impl fmt::Display for CoxeterDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::A | Family::B | Family::D => write!(f, "{}{}", self.family, self.rank),
            Family::I2 => write!(f, "I2({})", self.m.expect("validated")),
            _ => write!(f, "{}", self.family),
        }
    }
}

impl FromStr for CoxeterDescriptor {
    type Err = CoxeterError;

    /// Accepts `A4`, `B3`, `D12`, `I2(5)`, `H3`, `F4`, `E8`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let upper = s.to_ascii_uppercase();
        if let Some(rest) = upper.strip_prefix("I2") {
            let inner = rest
                .trim()
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| CoxeterError::InvalidDescriptor(format!("expected I2(m), got {s:?}")))?;
            let m: u32 = inner
                .trim()
                .parse()
                .map_err(|_| CoxeterError::InvalidDescriptor(format!("bad dihedral parameter in {s:?}")))?;
            return Self::new(Family::I2, 2, Some(m));
        }
        for fam in [Family::H3, Family::H4, Family::F4, Family::E6, Family::E7, Family::E8] {
            if upper == fam.to_string() {
                return Ok(Self::exceptional(fam));
            }
        }
        let split = upper
            .find(|c: char| c.is_ascii_digit())
            .ok_or_else(|| CoxeterError::InvalidDescriptor(format!("missing rank in {s:?}")))?;
        let family: Family = upper[..split].parse()?;
        let rank: usize =
            upper[split..].parse().map_err(|_| CoxeterError::InvalidDescriptor(format!("bad rank in {s:?}")))?;
        Self::new(family, rank, None)
    }
}

/// Parses a product of irreducible types such as `A2xA1`.
pub fn parse_components(s: &str) -> Result<Vec<CoxeterDescriptor>> {
    let parts: Vec<&str> = s.split(['x', 'X', '×']).filter(|p| !p.trim().is_empty()).collect();
    if parts.is_empty() {
        return Err(CoxeterError::InvalidDescriptor("empty descriptor".into()));
    }
    parts.into_iter().map(str::parse).collect()
}

pub fn format_components(components: &[CoxeterDescriptor]) -> String {
    components.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("x")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_constraints() {
        assert!(CoxeterDescriptor::new(Family::A, 0, None).is_err());
        assert!(CoxeterDescriptor::new(Family::B, 1, None).is_err());
        assert!(CoxeterDescriptor::new(Family::D, 3, None).is_err());
        assert!(CoxeterDescriptor::new(Family::D, 4, None).is_ok());
        assert!(CoxeterDescriptor::new(Family::H3, 4, None).is_err());
        assert!(CoxeterDescriptor::new(Family::I2, 2, Some(4)).is_err());
        assert!(CoxeterDescriptor::new(Family::I2, 2, None).is_err());
        assert!(CoxeterDescriptor::new(Family::I2, 3, Some(5)).is_err());
    }

    #[test]
    fn parse_and_display() {
        for s in ["A4", "B3", "D12", "I2(5)", "H3", "H4", "F4", "E6", "E7", "E8"] {
            let d: CoxeterDescriptor = s.parse().unwrap();
            assert_eq!(d.to_string(), s);
        }
        assert_eq!(format_components(&parse_components("A2xA1").unwrap()), "A2xA1");
        assert!("Q3".parse::<CoxeterDescriptor>().is_err());
        assert!("I2(x)".parse::<CoxeterDescriptor>().is_err());
    }

    #[test]
    fn coxeter_matrices_are_symmetric() {
        for s in ["A4", "B4", "D5", "I2(7)", "H4", "F4", "E8"] {
            let d: CoxeterDescriptor = s.parse().unwrap();
            let m = d.coxeter_matrix();
            for i in 0..d.rank {
                assert_eq!(m[i][i], 1);
                for j in 0..d.rank {
                    assert_eq!(m[i][j], m[j][i]);
                    if i != j {
                        assert!(m[i][j] >= 2);
                    }
                }
            }
        }
    }

    #[test]
    fn d_branch_node() {
        let d = CoxeterDescriptor::d(12);
        // generator 10 (1-based) is adjacent to 9, 11 and 12
        let adjacent: Vec<usize> = (0..12).filter(|&j| j != 9 && d.coxeter_entry(9, j) == 3).map(|j| j + 1).collect();
        assert_eq!(adjacent, vec![9, 11, 12]);
    }

    #[test]
    fn orders() {
        assert_eq!(CoxeterDescriptor::a(3).group_order(), 24);
        assert_eq!(CoxeterDescriptor::b(3).group_order(), 48);
        assert_eq!(CoxeterDescriptor::d(4).group_order(), 192);
        assert_eq!(CoxeterDescriptor::dihedral(7).group_order(), 14);
        assert_eq!(CoxeterDescriptor::b(40).group_order(), u128::MAX);
    }
}
