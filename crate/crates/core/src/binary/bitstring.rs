use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Fixed-length string of bits. Index 0 is the leftmost, most-significant
/// bit, so `"010"` has bit 1 set.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BitString {
    bits: Vec<bool>,
}

impl BitString {
    pub fn zeros(len: usize) -> Self {
        Self {
            bits: vec![false; len],
        }
    }

    pub fn ones(len: usize) -> Self {
        Self {
            bits: vec![true; len],
        }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    /// Big-endian encoding of `value` in `len` bits. Higher bits of `value`
    /// beyond `len` are dropped.
    pub fn from_value(value: usize, len: usize) -> Self {
        let bits = (0..len)
            .map(|i| (value >> (len - 1 - i)) & 1 == 1)
            .collect();
        Self { bits }
    }

    /// Big-endian integer value. Only meaningful for `len() <= usize::BITS`.
    pub fn value(&self) -> usize {
        self.bits.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn set(&mut self, i: usize, v: bool) {
        self.bits[i] = v;
    }

    pub fn flip(&mut self, i: usize) {
        self.bits[i] ^= true;
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&b| !b)
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn first_one(&self) -> Option<usize> {
        self.bits.iter().position(|&b| b)
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(())
    }

    pub fn xor(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        let bits = self
            .bits
            .iter()
            .zip(&other.bits)
            .map(|(a, b)| a ^ b)
            .collect();
        Ok(Self { bits })
    }

    pub fn xor_assign(&mut self, other: &Self) -> Result<()> {
        self.check_len(other)?;
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a ^= b;
        }
        Ok(())
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &Self) -> Result<bool> {
        self.check_len(other)?;
        Ok(self
            .bits
            .iter()
            .zip(&other.bits)
            .fold(false, |acc, (a, b)| acc ^ (a & b)))
    }

    /// Concatenation, `self` first.
    pub fn concat(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.extend_from_slice(&other.bits);
        Self { bits }
    }

    pub fn slice(&self, start: usize, len: usize) -> Self {
        Self {
            bits: self.bits[start..start + len].to_vec(),
        }
    }

    /// All `2^len` strings of the given length in increasing order.
    pub fn all(len: usize) -> impl Iterator<Item = BitString> {
        (0..1usize << len).map(move |v| BitString::from_value(v, len))
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::InvalidBits(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::from_bits)
    }
}

impl Serialize for BitString {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BitString {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn msb_first_value_encoding() {
        assert_eq!(b("010").value(), 2);
        assert_eq!(BitString::from_value(6, 3), b("110"));
        assert_eq!(BitString::from_value(1, 4).to_string(), "0001");
    }

    #[test]
    fn xor_and_dot() {
        assert_eq!(b("1011").xor(&b("0110")).unwrap(), b("1101"));
        assert!(!b("11").dot(&b("11")).unwrap());
        assert!(b("10").dot(&b("11")).unwrap());
        assert!(b("101").xor(&b("101")).unwrap().is_zero());
    }

    #[test]
    fn length_mismatch_is_an_error() {
        assert!(matches!(
            b("10").xor(&b("101")),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(b("10").dot(&b("1")).is_err());
    }

    #[test]
    fn rejects_non_binary_chars() {
        assert!("10a".parse::<BitString>().is_err());
    }

    #[test]
    fn serde_as_string() {
        let s = serde_json::to_string(&b("0110")).unwrap();
        assert_eq!(s, "\"0110\"");
        let back: BitString = serde_json::from_str(&s).unwrap();
        assert_eq!(back, b("0110"));
    }
}
