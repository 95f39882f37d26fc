use crate::{Error, Result};
use std::fmt;
use std::str::FromStr;

/// Cartan–Killing type of a simple Lie algebra, Bourbaki numbering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CartanType {
    pub letter: char,
    pub rank: usize,
}

impl CartanType {
    pub fn new(letter: char, rank: usize) -> Result<Self> {
        let letter = letter.to_ascii_uppercase();
        let ok = match letter {
            'A' => rank >= 1,
            'B' | 'C' => rank >= 2,
            'D' => rank >= 4,
            'E' => (6..=8).contains(&rank),
            'F' => rank == 4,
            'G' => rank == 2,
            _ => false,
        };
        if ok {
            Ok(CartanType { letter, rank })
        } else {
            Err(Error::UnsupportedType(format!("{letter}{rank}")))
        }
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.letter, 'A' | 'D' | 'E')
    }

    /// Relative squared lengths of the simple roots (before normalization) and
    /// the edges of the Dynkin diagram, 0-based.
    pub(crate) fn diagram(&self) -> (Vec<i64>, Vec<(usize, usize)>) {
        let n = self.rank;
        let chain = |k: usize| (0..k.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>();
        match self.letter {
            'A' => (vec![1; n], chain(n)),
            'B' => {
                let mut d = vec![2; n];
                d[n - 1] = 1;
                (d, chain(n))
            }
            'C' => {
                let mut d = vec![1; n];
                d[n - 1] = 2;
                (d, chain(n))
            }
            'D' => {
                let mut e = chain(n - 1);
                e.push((n - 3, n - 1));
                (vec![1; n], e)
            }
            'E' => {
                let all = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)];
                let e = all
                    .iter()
                    .filter(|(a, b)| *a <= n && *b <= n)
                    .map(|(a, b)| (a - 1, b - 1))
                    .collect();
                (vec![1; n], e)
            }
            'F' => (vec![2, 2, 1, 1], chain(4)),
            'G' => (vec![1, 3], chain(2)),
            _ => unreachable!(),
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.letter, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars
            .next()
            .ok_or_else(|| Error::UnsupportedType(s.to_string()))?;
        let rest: String = chars.filter(|c| *c != '_').collect();
        let rank = rest
            .parse::<usize>()
            .map_err(|_| Error::UnsupportedType(s.to_string()))?;
        CartanType::new(letter, rank)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_reject() {
        assert_eq!("D4".parse::<CartanType>().unwrap(), CartanType { letter: 'D', rank: 4 });
        assert_eq!("e_6".parse::<CartanType>().unwrap().to_string(), "E6");
        assert!("D3".parse::<CartanType>().is_err());
        assert!("E9".parse::<CartanType>().is_err());
        assert!("X2".parse::<CartanType>().is_err());
    }
}
