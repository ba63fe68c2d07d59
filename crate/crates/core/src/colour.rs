//! Arc colours and small colour sets.

use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

/// One of the three arc colours.
///
/// The derived order (`Red < Blue < Green`) is the tie-breaking order used
/// throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Colour {
    Red = 0,
    Blue = 1,
    Green = 2,
}

impl Colour {
    pub const ALL: [Colour; 3] = [Colour::Red, Colour::Blue, Colour::Green];

    #[inline]
    pub const fn index(self) -> usize {
        self as usize
    }

    #[inline]
    pub fn from_index(i: usize) -> Colour {
        Colour::ALL[i]
    }

    /// Character used in the tournament file format.
    pub const fn symbol(self) -> char {
        match self {
            Colour::Red => 'r',
            Colour::Blue => 'b',
            Colour::Green => 'g',
        }
    }

    pub fn from_symbol(c: char) -> Option<Colour> {
        match c {
            'r' => Some(Colour::Red),
            'b' => Some(Colour::Blue),
            'g' => Some(Colour::Green),
            _ => None,
        }
    }

    /// The colour different from both `self` and `other`.
    ///
    /// Returns `None` when the two colours coincide.
    pub fn third(self, other: Colour) -> Option<Colour> {
        if self == other {
            return None;
        }
        Some(Colour::from_index(3 - self.index() - other.index()))
    }
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Colour::Red => "red",
            Colour::Blue => "blue",
            Colour::Green => "green",
        };
        f.write_str(name)
    }
}

/// A subset of `{red, blue, green}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ColourSet(u8);

impl ColourSet {
    pub const EMPTY: ColourSet = ColourSet(0);
    pub const FULL: ColourSet = ColourSet(0b111);

    #[inline]
    pub const fn from_bits(bits: u8) -> ColourSet {
        ColourSet(bits & 0b111)
    }

    #[inline]
    pub const fn bits(self) -> u8 {
        self.0
    }

    #[inline]
    pub const fn single(c: Colour) -> ColourSet {
        ColourSet(1 << c as u8)
    }

    #[inline]
    pub fn insert(&mut self, c: Colour) {
        self.0 |= 1 << c.index();
    }

    #[inline]
    pub const fn contains(self, c: Colour) -> bool {
        self.0 & (1 << c as u8) != 0
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn intersection(self, other: ColourSet) -> ColourSet {
        ColourSet(self.0 & other.0)
    }

    #[inline]
    pub const fn union(self, other: ColourSet) -> ColourSet {
        ColourSet(self.0 | other.0)
    }

    /// The unique member if the set is a singleton ("only in colour c").
    pub fn only(self) -> Option<Colour> {
        match self.0 {
            0b001 => Some(Colour::Red),
            0b010 => Some(Colour::Blue),
            0b100 => Some(Colour::Green),
            _ => None,
        }
    }

    pub fn iter(self) -> impl Iterator<Item = Colour> {
        Colour::ALL.into_iter().filter(move |c| self.contains(*c))
    }
}

impl FromIterator<Colour> for ColourSet {
    fn from_iter<I: IntoIterator<Item = Colour>>(iter: I) -> Self {
        let mut set = ColourSet::EMPTY;
        for c in iter {
            set.insert(c);
        }
        set
    }
}

impl fmt::Display for ColourSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, c) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for ColourSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn third_colour() {
        assert_eq!(Colour::Red.third(Colour::Blue), Some(Colour::Green));
        assert_eq!(Colour::Green.third(Colour::Red), Some(Colour::Blue));
        assert_eq!(Colour::Blue.third(Colour::Blue), None);
    }

    #[test]
    fn only_is_singleton_equality() {
        assert_eq!(ColourSet::single(Colour::Blue).only(), Some(Colour::Blue));
        let both: ColourSet = [Colour::Red, Colour::Green].into_iter().collect();
        assert_eq!(both.only(), None);
        assert_eq!(ColourSet::EMPTY.only(), None);
    }

    #[test]
    fn order_is_red_blue_green() {
        assert!(Colour::Red < Colour::Blue && Colour::Blue < Colour::Green);
        let v: Vec<_> = ColourSet::FULL.iter().collect();
        assert_eq!(v, Colour::ALL);
    }
}
