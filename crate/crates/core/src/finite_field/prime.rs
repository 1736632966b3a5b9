use crate::error::{Error, Result};

/// Trial-division primality test.
pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of F_p, always stored reduced into `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FpElement(u32);

impl FpElement {
    pub fn value(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FpOp {
    Add,
    Sub,
    Mul,
    /// Inverse of the first operand; the second is ignored.
    Inv,
    /// Negation of the first operand; the second is ignored.
    Neg,
}

/// The prime field F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn zero(&self) -> FpElement {
        FpElement(0)
    }

    pub fn one(&self) -> FpElement {
        FpElement(1)
    }

    /// Reduces an arbitrary integer into the field. This is g⁻¹ on integers.
    pub fn elem(&self, v: i64) -> FpElement {
        FpElement(v.rem_euclid(self.p as i64) as u32)
    }

    pub fn add(&self, a: FpElement, b: FpElement) -> FpElement {
        FpElement(((a.0 as u64 + b.0 as u64) % self.p as u64) as u32)
    }

    pub fn sub(&self, a: FpElement, b: FpElement) -> FpElement {
        FpElement(((a.0 as u64 + (self.p - b.0) as u64) % self.p as u64) as u32)
    }

    pub fn neg(&self, a: FpElement) -> FpElement {
        if a.0 == 0 {
            a
        } else {
            FpElement(self.p - a.0)
        }
    }

    pub fn mul(&self, a: FpElement, b: FpElement) -> FpElement {
        FpElement(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32)
    }

    /// Multiplicative inverse by Fermat: a^(p-2).
    pub fn inv(&self, a: FpElement) -> Result<FpElement> {
        if a.0 == 0 {
            return Err(Error::InverseOfZero);
        }
        Ok(self.pow(a, (self.p - 2) as u64))
    }

    pub fn pow(&self, a: FpElement, mut e: u64) -> FpElement {
        let p = self.p as u64;
        let mut base = a.0 as u64 % p;
        let mut acc = 1u64 % p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        FpElement(acc as u32)
    }

    pub fn arith(&self, a: FpElement, b: FpElement, op: FpOp) -> Result<FpElement> {
        Ok(match op {
            FpOp::Add => self.add(a, b),
            FpOp::Sub => self.sub(a, b),
            FpOp::Mul => self.mul(a, b),
            FpOp::Inv => self.inv(a)?,
            FpOp::Neg => self.neg(a),
        })
    }

    /// The natural map g: F_p → {0, …, p−1} ⊂ Z.
    pub fn g_map(&self, a: FpElement) -> i64 {
        a.0 as i64
    }

    /// g⁻¹ applied to any integer, reducing mod p first.
    pub fn g_inv(&self, v: i64) -> FpElement {
        self.elem(v)
    }
}
