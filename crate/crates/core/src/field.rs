//! Characteristic-2 finite fields `F_{2^e}` in the polynomial basis.

use std::fmt;

use crate::error::FieldError;

/// Largest supported extension degree. Products of two elements must fit in a `u32`.
pub const MAX_DEGREE: u32 = 16;

/// An element of some `F_{2^e}`, stored as its coordinate bits in the basis
/// `1, x, ..., x^{e-1}` (bit `i` is the coefficient of `x^i`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar(u32);

impl Scalar {
    pub const ZERO: Scalar = Scalar(0);
    pub const ONE: Scalar = Scalar(1);

    pub const fn from_bits(bits: u32) -> Self {
        Scalar(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub const fn is_one(self) -> bool {
        self.0 == 1
    }
}

impl std::ops::Add for Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Scalar) -> Scalar {
        Scalar(self.0 ^ rhs.0)
    }
}

impl std::ops::AddAssign for Scalar {
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Scalar) {
        self.0 ^= rhs.0;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&bits_to_string(self.0))
    }
}

/// `F_{2^e}` presented as `F_2[x] / (modulus)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Field {
    degree: u32,
    modulus: u32,
}

impl Default for Field {
    fn default() -> Self {
        Field::F2
    }
}

impl Field {
    pub const F2: Field = Field {
        degree: 1,
        modulus: 0b11,
    };

    /// Builds `F_{2^degree}`. For `degree == 1` the modulus is ignored. For larger
    /// degrees a missing modulus falls back to [`Field::default_modulus`], and any
    /// modulus is checked for irreducibility before it is accepted.
    pub fn new(degree: u32, modulus: Option<u32>) -> Result<Self, FieldError> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(FieldError::UnsupportedDegree(degree));
        }
        if degree == 1 {
            return Ok(Field::F2);
        }
        let modulus = match modulus {
            Some(m) => m,
            None => Self::default_modulus(degree).ok_or(FieldError::MissingModulus(degree))?,
        };
        if poly_degree(modulus) != Some(degree) {
            return Err(FieldError::ModulusDegree {
                modulus: bits_to_string(modulus),
                degree,
            });
        }
        if !is_irreducible(modulus) {
            return Err(FieldError::Reducible(bits_to_string(modulus)));
        }
        Ok(Field { degree, modulus })
    }

    /// Conway-style default moduli for small degrees.
    pub fn default_modulus(degree: u32) -> Option<u32> {
        Some(match degree {
            1 => 0b11,
            2 => 0b111,
            3 => 0b1011,
            4 => 0b10011,
            5 => 0b100101,
            6 => 0b1000011,
            7 => 0b10000011,
            8 => 0b100011011,
            _ => return None,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Number of elements, `2^e`.
    pub fn order(&self) -> u32 {
        1 << self.degree
    }

    pub fn contains(&self, s: Scalar) -> bool {
        s.0 < self.order()
    }

    /// Rejects a scalar whose bits do not fit this field.
    pub fn check(&self, s: Scalar) -> Result<Scalar, FieldError> {
        if self.contains(s) {
            Ok(s)
        } else {
            Err(FieldError::NotInField {
                value: s.to_string(),
                degree: self.degree,
            })
        }
    }

    pub fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        a + b
    }

    pub fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        if a.0 == 0 || b.0 == 0 {
            return Scalar::ZERO;
        }
        if a.0 == 1 {
            return b;
        }
        if b.0 == 1 {
            return a;
        }
        let mut acc: u32 = 0;
        let mut x = a.0;
        let mut y = b.0;
        while y != 0 {
            if y & 1 == 1 {
                acc ^= x;
            }
            y >>= 1;
            x <<= 1;
            if x >> self.degree & 1 == 1 {
                x ^= self.modulus;
            }
        }
        Scalar(acc)
    }

    /// Checked multiplication: both operands must belong to this field.
    pub fn try_mul(&self, a: Scalar, b: Scalar) -> Result<Scalar, FieldError> {
        Ok(self.mul(self.check(a)?, self.check(b)?))
    }

    pub fn pow(&self, a: Scalar, mut n: u64) -> Scalar {
        let mut base = a;
        let mut acc = Scalar::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Scalar) -> Result<Scalar, FieldError> {
        let a = self.check(a)?;
        if a.is_zero() {
            return Err(FieldError::InverseOfZero);
        }
        // a^(2^e - 2) = a^{-1} in the multiplicative group of order 2^e - 1.
        Ok(self.pow(a, u64::from(self.order()) - 2))
    }

    pub fn div(&self, a: Scalar, b: Scalar) -> Result<Scalar, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// All field elements in increasing bit order.
    pub fn elements(&self) -> impl Iterator<Item = Scalar> {
        (0..self.order()).map(Scalar)
    }

    /// All nonzero elements in increasing bit order.
    pub fn units(&self) -> impl Iterator<Item = Scalar> {
        (1..self.order()).map(Scalar)
    }

    /// Parses a most-significant-bit-first bit string such as `"101"` (= x^2 + 1).
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar, FieldError> {
        let bits = parse_bits(text)?;
        self.check(Scalar(bits))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 1 {
            write!(f, "F_2")
        } else {
            write!(f, "F_{{2^{}}} mod {}", self.degree, bits_to_string(self.modulus))
        }
    }
}

/// Parses an MSB-first bit string.
pub fn parse_bits(text: &str) -> Result<u32, FieldError> {
    if text.is_empty() || text.len() > 32 || !text.bytes().all(|b| b == b'0' || b == b'1') {
        return Err(FieldError::BadBitString(text.to_string()));
    }
    Ok(text.bytes().fold(0u32, |acc, b| (acc << 1) | u32::from(b - b'0')))
}

/// Canonical MSB-first bit string with no leading zeros (`"0"` for zero).
pub fn bits_to_string(bits: u32) -> String {
    if bits == 0 {
        return "0".to_string();
    }
    let width = 32 - bits.leading_zeros();
    (0..width)
        .rev()
        .map(|i| if bits >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}

fn poly_degree(p: u32) -> Option<u32> {
    (p != 0).then(|| 31 - p.leading_zeros())
}

/// Remainder of `a` modulo `b` in `F_2[x]`.
fn poly_rem(mut a: u32, b: u32) -> u32 {
    let db = poly_degree(b).expect("division by the zero polynomial");
    while let Some(da) = poly_degree(a) {
        if da < db {
            break;
        }
        a ^= b << (da - db);
    }
    a
}

/// Trial division by every polynomial of degree `1..deg(p)`.
pub fn is_irreducible(p: u32) -> bool {
    let Some(d) = poly_degree(p) else {
        return false;
    };
    if d == 0 {
        return false;
    }
    (2u32..(1 << d)).all(|q| poly_rem(p, q) != 0)
}
