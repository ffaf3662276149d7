use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Inline storage for doubled coordinates.
pub type Coords = SmallVec<[i32; 8]>;

/// A half-integer stored as twice its value.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(i32);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub const fn from_twice(t: i32) -> Self {
        HalfInt(t)
    }

    pub const fn from_int(n: i32) -> Self {
        HalfInt(2 * n)
    }

    pub const fn twice(self) -> i32 {
        self.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub const fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }

    /// The value as an integer, if it is one.
    pub const fn to_int(self) -> Option<i32> {
        if self.0 % 2 == 0 {
            Some(self.0 / 2)
        } else {
            None
        }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let t = s.trim();
        if let Some((p, q)) = t.split_once('/') {
            if q.trim() != "2" {
                return Err(bad("denominator must be 2"));
            }
            let p: i32 = p.trim().parse().map_err(|_| bad("bad numerator"))?;
            if p % 2 == 0 {
                return Err(bad("numerator over 2 must be odd"));
            }
            Ok(HalfInt(p))
        } else {
            let n: i32 = t.parse().map_err(|_| bad("not an integer"))?;
            Ok(HalfInt(2 * n))
        }
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, o: HalfInt) -> HalfInt {
        HalfInt(self.0 + o.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, o: HalfInt) -> HalfInt {
        HalfInt(self.0 - o.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl Mul<i32> for HalfInt {
    type Output = HalfInt;
    fn mul(self, c: i32) -> HalfInt {
        HalfInt(self.0 * c)
    }
}

/// A weight (λ₀ | λ₁, …, λ_m): coordinate 0 is the δ-coordinate, the rest
/// are ε-coordinates. Stored doubled.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    twice: Coords,
}

impl Weight {
    pub fn from_twice<I: IntoIterator<Item = i32>>(coords: I) -> Self {
        Weight {
            twice: coords.into_iter().collect(),
        }
    }

    pub fn new(coords: &[HalfInt]) -> Self {
        Self::from_twice(coords.iter().map(|c| c.twice()))
    }

    /// Weight with integer coordinates.
    pub fn from_ints(coords: &[i32]) -> Self {
        Self::from_twice(coords.iter().map(|c| 2 * c))
    }

    pub fn zero(m: usize) -> Self {
        Self::from_twice(std::iter::repeat_n(0, m + 1))
    }

    /// Builds a weight from a δ-coordinate and ε-coordinates, all doubled.
    pub fn from_parts(delta_twice: i32, eps_twice: &[i32]) -> Self {
        let mut twice = Coords::with_capacity(eps_twice.len() + 1);
        twice.push(delta_twice);
        twice.extend_from_slice(eps_twice);
        Weight { twice }
    }

    /// Number of ε-coordinates.
    pub fn m(&self) -> usize {
        self.twice.len() - 1
    }

    pub fn len(&self) -> usize {
        self.twice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.twice.is_empty()
    }

    pub fn delta(&self) -> HalfInt {
        HalfInt(self.twice[0])
    }

    /// ε-coordinate `i`, 1-based.
    pub fn eps(&self, i: usize) -> HalfInt {
        HalfInt(self.twice[i])
    }

    pub fn coord(&self, i: usize) -> HalfInt {
        HalfInt(self.twice[i])
    }

    pub fn twice(&self) -> &[i32] {
        &self.twice
    }

    pub fn eps_twice(&self) -> &[i32] {
        &self.twice[1..]
    }

    pub fn coords(&self) -> Vec<HalfInt> {
        self.twice.iter().map(|&t| HalfInt(t)).collect()
    }

    pub fn with_delta_twice(&self, d: i32) -> Weight {
        let mut w = self.clone();
        w.twice[0] = d;
        w
    }

    pub(crate) fn twice_mut(&mut self) -> &mut Coords {
        &mut self.twice
    }

    pub fn scaled(&self, c: i32) -> Weight {
        Self::from_twice(self.twice.iter().map(|x| x * c))
    }
}

impl Add<&Weight> for &Weight {
    type Output = Weight;
    fn add(self, o: &Weight) -> Weight {
        debug_assert_eq!(self.len(), o.len());
        Weight::from_twice(self.twice.iter().zip(&o.twice).map(|(a, b)| a + b))
    }
}

impl Sub<&Weight> for &Weight {
    type Output = Weight;
    fn sub(self, o: &Weight) -> Weight {
        debug_assert_eq!(self.len(), o.len());
        Weight::from_twice(self.twice.iter().zip(&o.twice).map(|(a, b)| a - b))
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight::from_twice(self.twice.iter().map(|a| -a))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|", HalfInt(self.twice[0]))?;
        for (i, t) in self.twice[1..].iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", HalfInt(*t))?;
        }
        Ok(())
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Parses `"c0 | c1, ..., cm"`; whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let (head, tail) = s.split_once('|').ok_or_else(|| bad("missing `|`"))?;
        if tail.contains('|') {
            return Err(bad("more than one `|`"));
        }
        let mut twice = Coords::new();
        twice.push(
            head.parse::<HalfInt>()
                .map_err(|_| bad("bad δ-coordinate"))?
                .twice(),
        );
        if tail.trim().is_empty() {
            return Err(bad("no ε-coordinates"));
        }
        for part in tail.split(',') {
            twice.push(
                part.parse::<HalfInt>()
                    .map_err(|_| bad("bad ε-coordinate"))?
                    .twice(),
            );
        }
        Ok(Weight { twice })
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
