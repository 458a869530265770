//! Cartan types and Cartan matrices in Bourbaki/Humphreys labeling.
//!
//! Node conventions (1-based, as printed in reports):
//! - `B_n`: `1 - 2 - ... - (n-1) => n`, node `n` short.
//! - `C_n`: `1 - 2 - ... - (n-1) <= n`, node `n` long.
//! - `D_n`: chain `1 - ... - (n-2)`, with `n-1` and `n` both attached to `n-2`.
//! - `E_n`: chain `1 - 3 - 4 - 5 - ... - n`, with `2` attached to `4`.
//! - `F_4`: `1 - 2 => 3 - 4`, nodes 1, 2 long.
//! - `G_2`: node 1 short, node 2 long.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub const ALL: [Family; 7] = [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G];

    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn admits_rank(self, rank: usize) -> bool {
        match self {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        }
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            other => Err(Error::InvalidType(format!("unknown family {other:?}"))),
        }
    }
}

/// An irreducible Cartan type such as `E_8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimpleType {
    pub family: Family,
    pub rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self, Error> {
        if !family.admits_rank(rank) {
            return Err(Error::InvalidType(format!(
                "{}{rank} is not a valid type (A: rank>=1, B: >=2, C: >=3, D: >=4, E: 6-8, F: 4, G: 2)",
                family.letter()
            )));
        }
        Ok(SimpleType { family, rank })
    }

    /// Number of positive roots.
    pub fn positive_root_count(self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Family::F => 24,
            Family::G => 6,
        }
    }

    /// Coxeter number `h = |Phi| / rank`.
    pub fn coxeter_number(self) -> usize {
        2 * self.positive_root_count() / self.rank
    }

    /// Order of the Weyl group.
    pub fn weyl_order(self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u128 << n) * fact(n),
            Family::D => (1u128 << (n - 1)) * fact(n),
            Family::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1152,
            Family::G => 12,
        }
    }

    /// Cartan matrix `C[i][j] = <alpha_i, alpha_j^vee>`.
    pub fn cartan_matrix(self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |a: usize, b: usize| {
            c[a - 1][b - 1] = -1;
            c[b - 1][a - 1] = -1;
        };
        match self.family {
            Family::A | Family::B | Family::C => {
                for i in 1..n {
                    link(i, i + 1);
                }
            }
            Family::D => {
                for i in 1..n - 1 {
                    link(i, i + 1);
                }
                link(n - 2, n);
            }
            Family::E => {
                link(1, 3);
                link(2, 4);
                for i in 3..n {
                    link(i, i + 1);
                }
            }
            Family::F => {
                link(1, 2);
                link(2, 3);
                link(3, 4);
            }
            Family::G => link(1, 2),
        }
        match self.family {
            // <alpha_{n-1}, alpha_n^vee> = -2 with alpha_n short
            Family::B => c[n - 2][n - 1] = -2,
            Family::C => c[n - 1][n - 2] = -2,
            Family::F => c[1][2] = -2,
            Family::G => c[1][0] = -3,
            _ => {}
        }
        c
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// A possibly reducible Cartan type: a product of irreducible components,
/// laid out block-diagonally in the order given.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CartanType {
    pub components: Vec<SimpleType>,
}

impl CartanType {
    pub fn simple(family: Family, rank: usize) -> Result<Self, Error> {
        Ok(CartanType { components: vec![SimpleType::new(family, rank)?] })
    }

    pub fn product(components: Vec<SimpleType>) -> Result<Self, Error> {
        if components.is_empty() {
            return Err(Error::InvalidType("empty product of Cartan types".into()));
        }
        Ok(CartanType { components })
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.rank).sum()
    }

    pub fn is_irreducible(&self) -> bool {
        self.components.len() == 1
    }

    pub fn positive_root_count(&self) -> usize {
        self.components.iter().map(|c| c.positive_root_count()).sum()
    }

    pub fn weyl_order(&self) -> u128 {
        self.components.iter().map(|c| c.weyl_order()).product()
    }

    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut out = vec![vec![0i64; n]; n];
        let mut offset = 0;
        for comp in &self.components {
            let block = comp.cartan_matrix();
            for (i, row) in block.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    out[offset + i][offset + j] = v;
                }
            }
            offset += comp.rank;
        }
        out
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.components.iter().enumerate() {
            if k > 0 {
                write!(f, "x")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for CartanType {
    type Err = Error;

    /// Parses `"E8"`, `"B3"`, or products such as `"A1xA1"`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let comps = s
            .split(['x', 'X', '*'])
            .map(|part| {
                let part = part.trim();
                let mut chars = part.chars();
                let fam: Family = chars
                    .next()
                    .ok_or_else(|| Error::InvalidType("empty type label".into()))?
                    .to_string()
                    .parse()?;
                let rank: usize = chars
                    .as_str()
                    .parse()
                    .map_err(|_| Error::InvalidType(format!("bad rank in {part:?}")))?;
                SimpleType::new(fam, rank)
            })
            .collect::<Result<Vec<_>, _>>()?;
        CartanType::product(comps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_invalid_pairs() {
        assert!(SimpleType::new(Family::A, 0).is_err());
        assert!(SimpleType::new(Family::B, 1).is_err());
        assert!(SimpleType::new(Family::C, 2).is_err());
        assert!(SimpleType::new(Family::D, 3).is_err());
        assert!(SimpleType::new(Family::E, 5).is_err());
        assert!(SimpleType::new(Family::E, 9).is_err());
        assert!(SimpleType::new(Family::F, 3).is_err());
        assert!(SimpleType::new(Family::G, 3).is_err());
        assert!(SimpleType::new(Family::C, 3).is_ok());
    }

    #[test]
    fn parse_products() {
        let t: CartanType = "A1xA1".parse().unwrap();
        assert_eq!(t.rank(), 2);
        assert_eq!(t.to_string(), "A1xA1");
        assert!("Q3".parse::<CartanType>().is_err());
        assert!("D3".parse::<CartanType>().is_err());
    }

    #[test]
    fn coxeter_numbers() {
        let h = |f, n| SimpleType::new(f, n).unwrap().coxeter_number();
        assert_eq!(h(Family::A, 2), 3);
        assert_eq!(h(Family::B, 3), 6);
        assert_eq!(h(Family::D, 5), 8);
        assert_eq!(h(Family::E, 6), 12);
        assert_eq!(h(Family::E, 8), 30);
        assert_eq!(h(Family::F, 4), 12);
        assert_eq!(h(Family::G, 2), 6);
    }
}
