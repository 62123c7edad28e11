use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::scalar::{Scalar, Sign};

/// Largest ambient dimension a [`SignPattern`] can describe.
pub const MAX_COORDINATES: usize = 128;

/// A sign vector in `{+,0,-}^n`, stored as two disjoint bit masks.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignPattern {
    n: usize,
    plus: u128,
    minus: u128,
}

impl SignPattern {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_COORDINATES, "too many coordinates for a sign pattern");
        SignPattern { n, plus: 0, minus: 0 }
    }

    pub fn from_signs(signs: &[Sign]) -> Self {
        let mut p = Self::zero(signs.len());
        for (i, s) in signs.iter().enumerate() {
            p.set(i, *s);
        }
        p
    }

    pub fn of_vector<S: Scalar>(x: &[S]) -> Self {
        let mut p = Self::zero(x.len());
        for (i, v) in x.iter().enumerate() {
            p.set(i, v.sign());
        }
        p
    }

    pub fn set(&mut self, i: usize, s: Sign) {
        let bit = 1u128 << i;
        self.plus &= !bit;
        self.minus &= !bit;
        match s {
            Sign::Positive => self.plus |= bit,
            Sign::Negative => self.minus |= bit,
            Sign::Zero => {}
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize) -> Sign {
        if self.plus >> i & 1 == 1 {
            Sign::Positive
        } else if self.minus >> i & 1 == 1 {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn is_zero(&self) -> bool {
        self.plus == 0 && self.minus == 0
    }

    pub fn plus(&self) -> Vec<usize> {
        bits(self.plus)
    }

    pub fn minus(&self) -> Vec<usize> {
        bits(self.minus)
    }

    pub fn support(&self) -> Vec<usize> {
        bits(self.plus | self.minus)
    }

    pub fn zeros(&self) -> Vec<usize> {
        let all = if self.n == 128 { u128::MAX } else { (1u128 << self.n) - 1 };
        bits(all & !(self.plus | self.minus))
    }

    pub fn support_size(&self) -> usize {
        (self.plus | self.minus).count_ones() as usize
    }

    pub fn negate(&self) -> Self {
        SignPattern {
            n: self.n,
            plus: self.minus,
            minus: self.plus,
        }
    }

    /// `X ∘ Y`: signs of `X`, with zeros of `X` filled from `Y`.
    pub fn compose(&self, other: &Self) -> Self {
        let free = !(self.plus | self.minus);
        SignPattern {
            n: self.n,
            plus: self.plus | (other.plus & free),
            minus: self.minus | (other.minus & free),
        }
    }

    /// Pattern of a positive combination of vectors with patterns `self` and
    /// `other`, or `None` when some coordinate gets both signs.
    pub fn join(&self, other: &Self) -> Option<Self> {
        let plus = self.plus | other.plus;
        let minus = self.minus | other.minus;
        (plus & minus == 0).then_some(SignPattern { n: self.n, plus, minus })
    }

    pub fn plus_mask(&self) -> u128 {
        self.plus
    }

    pub fn minus_mask(&self) -> u128 {
        self.minus
    }

    /// `self` lies in the closure of the cone of `other`.
    pub fn conforms_to(&self, other: &Self) -> bool {
        self.plus & !other.plus == 0 && self.minus & !other.minus == 0
    }

    /// `self ⊆ ∂other`: conformal with at least one strict inclusion.
    pub fn is_proper_face_of(&self, other: &Self) -> bool {
        self.conforms_to(other) && self != other
    }
}

fn bits(mut mask: u128) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        let i = mask.trailing_zeros() as usize;
        out.push(i);
        mask &= mask - 1;
    }
    out
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            write!(f, "{}", self.get(i).symbol())?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignPattern({self})")
    }
}

impl FromStr for SignPattern {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let signs: Vec<Sign> = s
            .chars()
            .map(|c| match c {
                '+' => Ok(Sign::Positive),
                '-' => Ok(Sign::Negative),
                '0' => Ok(Sign::Zero),
                other => Err(format!("unexpected sign character {other:?}")),
            })
            .collect::<Result<_, _>>()?;
        if signs.len() > MAX_COORDINATES {
            return Err("pattern too long".into());
        }
        Ok(SignPattern::from_signs(&signs))
    }
}

impl Serialize for SignPattern {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        s.collect_str(self)
    }
}
