use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A fixed-width bit-vector. Bit 0 is line 0, which is the most significant
/// bit when the word is read as an integer.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<bool>);

impl Word {
    pub fn zeros(width: usize) -> Self {
        Word(vec![false; width])
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        Word(bits.into_iter().collect())
    }

    /// Word of `width` bits whose integer reading is `index`.
    pub fn from_index(index: u64, width: usize) -> Self {
        debug_assert!(width >= 64 || index >> width == 0);
        Word((0..width).map(|i| (index >> (width - 1 - i)) & 1 == 1).collect())
    }

    /// Integer reading with line 0 as MSB. Only meaningful for widths up to 64.
    pub fn index(&self) -> u64 {
        assert!(self.0.len() <= 64, "word of {} bits has no u64 index", self.0.len());
        self.0.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64)
    }

    pub fn width(&self) -> usize {
        self.0.len()
    }

    pub fn bit(&self, line: usize) -> bool {
        self.0[line]
    }

    pub fn set(&mut self, line: usize, value: bool) {
        self.0[line] = value;
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn bits_mut(&mut self) -> &mut [bool] {
        &mut self.0
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn into_bits(self) -> Vec<bool> {
        self.0
    }
}

impl From<Vec<bool>> for Word {
    fn from(bits: Vec<bool>) -> Self {
        Word(bits)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid bit character {0:?}")]
pub struct ParseWordError(pub char);

impl FromStr for Word {
    type Err = ParseWordError;

    /// Accepts `0`/`1` characters; whitespace, commas and underscores are ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                c if c.is_whitespace() || c == ',' || c == '_' => {}
                c => return Err(ParseWordError(c)),
            }
        }
        Ok(Word(bits))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip_msb_first() {
        let w = Word::from_index(0b1010, 4);
        assert_eq!(w.bits(), &[true, false, true, false]);
        assert_eq!(w.index(), 0b1010);
        assert_eq!(w.to_string(), "1010");
        assert_eq!(w.weight(), 2);
    }

    #[test]
    fn parse_ignores_separators() {
        assert_eq!("1 0,0".parse::<Word>().unwrap(), Word::from_index(4, 3));
        assert_eq!("".parse::<Word>().unwrap().width(), 0);
        assert_eq!("102".parse::<Word>(), Err(ParseWordError('2')));
    }
}
