use super::prime::{FpElement, PrimeField};
use crate::error::{Error, Result};

/// Fields up to this order get log/antilog tables.
const TABLE_LIMIT: u64 = 1 << 16;
/// Largest supported field order.
const MAX_ORDER: u64 = 1 << 20;
/// Enough digits for any field within `MAX_ORDER`.
const MAX_DIGITS: usize = 20;

/// Primitive moduli pinned for bit-exact designs, coefficient of x^0 first.
const PINNED_MODULI: &[(u32, u32, &[u32])] = &[(2, 3, &[1, 1, 0, 1]), (2, 9, &[1, 0, 0, 0, 1, 0, 0, 0, 0, 1])];

/// An element of GF(p^s) in packed polynomial-basis form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExtElement(u32);

impl ExtElement {
    pub const ZERO: ExtElement = ExtElement(0);

    pub fn packed(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Debug, Clone)]
struct Tables {
    /// exp[i] = α^i, stored twice over so log sums need no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// GF(p^s) with a designated primitive element α.
#[derive(Debug, Clone)]
pub struct ExtField {
    base: PrimeField,
    s: u32,
    q: u32,
    /// Monic modulus, s + 1 coefficients, x^0 first.
    modulus: Vec<u32>,
    /// p^i for i in 0..=s.
    radix: Vec<u32>,
    alpha: ExtElement,
    tables: Option<Tables>,
}

impl ExtField {
    /// Builds GF(p^s) with the default primitive modulus.
    ///
    /// The pinned table covers the fields used by the reference designs
    /// (x^9 + x^4 + 1 for GF(2^9)); anything else gets the smallest primitive
    /// polynomial in packed order.
    pub fn new(p: u32, s: u32) -> Result<Self> {
        let base = PrimeField::new(p)?;
        let q = checked_order(p, s)?;
        if let Some((_, _, m)) = PINNED_MODULI.iter().find(|(pp, ss, _)| *pp == p && *ss == s) {
            return Self::with_modulus(p, s, m);
        }
        for lower in 0..q {
            let mut modulus = unpack(lower, p, s as usize);
            modulus.push(1);
            if !is_irreducible(base, &modulus) {
                continue;
            }
            let field = Self::assemble(base, s, q, modulus, ExtElement(0))?;
            let x = field.x();
            if field.is_primitive(x) {
                return Self::with_modulus(p, s, &field.modulus);
            }
        }
        Err(Error::InvalidModulus(format!("no primitive polynomial found for GF({p}^{s})")))
    }

    /// Builds GF(p^s) from an explicit monic irreducible modulus.
    ///
    /// α is x when x is primitive, otherwise the smallest primitive element
    /// in packed order.
    pub fn with_modulus(p: u32, s: u32, modulus: &[u32]) -> Result<Self> {
        let base = PrimeField::new(p)?;
        let q = checked_order(p, s)?;
        if modulus.len() != s as usize + 1 {
            return Err(Error::LengthMismatch { expected: s as usize + 1, actual: modulus.len() });
        }
        if modulus[s as usize] != 1 {
            return Err(Error::InvalidModulus("modulus must be monic".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidModulus("coefficient out of range".into()));
        }
        if !is_irreducible(base, modulus) {
            return Err(Error::InvalidModulus(format!("{modulus:?} is reducible over F_{p}")));
        }
        let mut field = Self::assemble(base, s, q, modulus.to_vec(), ExtElement(0))?;
        let alpha = if field.is_primitive(field.x()) {
            field.x()
        } else {
            (2..q)
                .map(ExtElement)
                .find(|&a| field.is_primitive(a))
                .ok_or_else(|| Error::InvalidModulus("no primitive element".into()))?
        };
        field.alpha = alpha;
        if q as u64 <= TABLE_LIMIT {
            field.tables = Some(field.build_tables());
        }
        Ok(field)
    }

    fn assemble(base: PrimeField, s: u32, q: u32, modulus: Vec<u32>, alpha: ExtElement) -> Result<Self> {
        let p = base.p();
        let radix = (0..=s).map(|i| p.pow(i)).collect();
        Ok(Self { base, s, q, modulus, radix, alpha, tables: None })
    }

    fn build_tables(&self) -> Tables {
        let n = (self.q - 1) as usize;
        let mut exp = vec![0u32; 2 * n];
        let mut log = vec![0u32; self.q as usize];
        let mut acc = self.one();
        for i in 0..n {
            exp[i] = acc.0;
            exp[i + n] = acc.0;
            log[acc.0 as usize] = i as u32;
            acc = self.mul_poly(acc, self.alpha);
        }
        Tables { exp, log }
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    pub fn p(&self) -> u32 {
        self.base.p()
    }

    pub fn degree(&self) -> u32 {
        self.s
    }

    /// Field order q = p^s.
    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn alpha(&self) -> ExtElement {
        self.alpha
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    pub fn zero(&self) -> ExtElement {
        ExtElement(0)
    }

    pub fn one(&self) -> ExtElement {
        ExtElement(1)
    }

    /// The residue class of x itself.
    fn x(&self) -> ExtElement {
        if self.s == 1 {
            // x ≡ −m0 mod (x + m0)
            ExtElement(self.base.neg(self.base.elem(self.modulus[0] as i64)).value())
        } else {
            ExtElement(self.p())
        }
    }

    pub fn from_packed(&self, v: u32) -> Result<ExtElement> {
        if v >= self.q {
            return Err(Error::InvalidParameter(format!("{v} is not an element of GF({})", self.q)));
        }
        Ok(ExtElement(v))
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<ExtElement> {
        if coeffs.len() != self.s as usize {
            return Err(Error::LengthMismatch { expected: self.s as usize, actual: coeffs.len() });
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= self.p()) {
            return Err(Error::InvalidParameter(format!("coefficient {c} out of range")));
        }
        Ok(ExtElement(pack(coeffs, self.p())))
    }

    pub fn coeffs(&self, a: ExtElement) -> Vec<u32> {
        unpack(a.0, self.p(), self.s as usize)
    }

    /// The map h for one symbol: polynomial-basis coefficients, x^0 first.
    pub fn h_expand(&self, a: ExtElement) -> Vec<FpElement> {
        self.coeffs(a).into_iter().map(|c| self.base.elem(c as i64)).collect()
    }

    /// Inverse of [`h_expand`](Self::h_expand).
    pub fn h_pack(&self, word: &[FpElement]) -> Result<ExtElement> {
        if word.len() != self.s as usize {
            return Err(Error::LengthMismatch { expected: self.s as usize, actual: word.len() });
        }
        let coeffs: Vec<u32> = word.iter().map(|c| c.value()).collect();
        Ok(ExtElement(pack(&coeffs, self.p())))
    }

    /// Embeds F_p as the constant polynomials.
    pub fn embed(&self, c: FpElement) -> ExtElement {
        ExtElement(c.value())
    }

    /// Returns the F_p value if `a` lies in the prime subfield.
    pub fn to_subfield(&self, a: ExtElement) -> Option<FpElement> {
        (a.0 < self.p()).then(|| self.base.elem(a.0 as i64))
    }

    pub fn add(&self, a: ExtElement, b: ExtElement) -> ExtElement {
        if self.p() == 2 {
            return ExtElement(a.0 ^ b.0);
        }
        self.digitwise(a, b, |x, y, p| (x + y) % p)
    }

    pub fn sub(&self, a: ExtElement, b: ExtElement) -> ExtElement {
        if self.p() == 2 {
            return ExtElement(a.0 ^ b.0);
        }
        self.digitwise(a, b, |x, y, p| (x + p - y) % p)
    }

    pub fn neg(&self, a: ExtElement) -> ExtElement {
        self.sub(ExtElement(0), a)
    }

    fn digitwise(&self, a: ExtElement, b: ExtElement, op: impl Fn(u32, u32, u32) -> u32) -> ExtElement {
        let p = self.p();
        let (mut x, mut y, mut out) = (a.0, b.0, 0u32);
        for i in 0..self.s as usize {
            out += op(x % p, y % p, p) * self.radix[i];
            x /= p;
            y /= p;
        }
        ExtElement(out)
    }

    pub fn mul(&self, a: ExtElement, b: ExtElement) -> ExtElement {
        if a.0 == 0 || b.0 == 0 {
            return ExtElement(0);
        }
        match &self.tables {
            Some(t) => ExtElement(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => self.mul_poly(a, b),
        }
    }

    /// Shift-and-reduce multiplication; independent of the tables.
    pub fn mul_poly(&self, a: ExtElement, b: ExtElement) -> ExtElement {
        let p = self.p();
        let s = self.s as usize;
        let bd = unpack(b.0, p, s);
        let ad = unpack(a.0, p, s);
        let mut acc = [0u32; MAX_DIGITS];
        for i in (0..s).rev() {
            // acc ← acc·x mod modulus
            let top = acc[s - 1];
            acc.copy_within(0..s - 1, 1);
            acc[0] = 0;
            if top != 0 {
                for (c, &f) in acc.iter_mut().zip(&self.modulus[..s]) {
                    *c = (*c + (p - f) * top) % p;
                }
            }
            // acc ← acc + b_i·a
            if bd[i] != 0 {
                for (c, &a) in acc.iter_mut().zip(&ad) {
                    *c = (*c + bd[i] * a) % p;
                }
            }
        }
        ExtElement(pack(&acc[..s], p))
    }

    pub fn inv(&self, a: ExtElement) -> Result<ExtElement> {
        if a.0 == 0 {
            return Err(Error::InverseOfZero);
        }
        Ok(match &self.tables {
            Some(t) => {
                let n = self.q - 1;
                ExtElement(t.exp[((n - t.log[a.0 as usize]) % n) as usize])
            }
            None => self.pow(a, (self.q - 2) as u64),
        })
    }

    pub fn div(&self, a: ExtElement, b: ExtElement) -> Result<ExtElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: ExtElement, mut e: u64) -> ExtElement {
        if let Some(t) = &self.tables {
            if a.0 == 0 {
                return if e == 0 { self.one() } else { a };
            }
            let n = (self.q - 1) as u64;
            let l = (t.log[a.0 as usize] as u64 * (e % n)) % n;
            return ExtElement(t.exp[l as usize]);
        }
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_poly(acc, base);
            }
            base = self.mul_poly(base, base);
            e >>= 1;
        }
        acc
    }

    /// α^i for any integer exponent.
    pub fn alpha_pow(&self, i: i64) -> ExtElement {
        let n = (self.q - 1) as i64;
        let e = i.rem_euclid(n) as usize;
        match &self.tables {
            Some(t) => ExtElement(t.exp[e]),
            None => self.pow(self.alpha, e as u64),
        }
    }

    /// Discrete logarithm to base α.
    pub fn log(&self, a: ExtElement) -> Option<u32> {
        if a.0 == 0 {
            return None;
        }
        match &self.tables {
            Some(t) => Some(t.log[a.0 as usize]),
            None => {
                let mut acc = self.one();
                for i in 0..self.q - 1 {
                    if acc == a {
                        return Some(i);
                    }
                    acc = self.mul_poly(acc, self.alpha);
                }
                None
            }
        }
    }

    /// True when `a` generates the multiplicative group.
    pub fn is_primitive(&self, a: ExtElement) -> bool {
        if a.0 == 0 {
            return false;
        }
        let n = (self.q - 1) as u64;
        if self.pow_slow(a, n) != self.one() {
            return false;
        }
        prime_factors(n).into_iter().all(|r| self.pow_slow(a, n / r) != self.one())
    }

    fn pow_slow(&self, a: ExtElement, mut e: u64) -> ExtElement {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_poly(acc, base);
            }
            base = self.mul_poly(base, base);
            e >>= 1;
        }
        acc
    }
}

fn checked_order(p: u32, s: u32) -> Result<u32> {
    if s == 0 {
        return Err(Error::InvalidParameter("extension degree must be positive".into()));
    }
    let q = (p as u64).checked_pow(s).filter(|&q| q <= MAX_ORDER);
    q.map(|q| q as u32).ok_or_else(|| Error::InvalidParameter(format!("GF({p}^{s}) exceeds the supported size 2^20")))
}

fn pack(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn unpack(mut v: u32, p: u32, s: usize) -> Vec<u32> {
    let mut out = vec![0; s];
    for d in out.iter_mut() {
        *d = v % p;
        v /= p;
    }
    out
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Remainder of polynomial division over F_p (coefficients x^0 first).
fn poly_rem(f: PrimeField, num: &[u32], den: &[u32]) -> Vec<u32> {
    let mut r: Vec<u32> = num.to_vec();
    let dd = den.len() - 1;
    let lead_inv = f.inv(f.elem(den[dd] as i64)).expect("nonzero leading coefficient");
    while r.len() > dd {
        let top = *r.last().unwrap();
        if top != 0 {
            let c = f.mul(f.elem(top as i64), lead_inv);
            let shift = r.len() - 1 - dd;
            for (j, &dj) in den.iter().enumerate() {
                let prod = f.mul(c, f.elem(dj as i64));
                r[shift + j] = f.sub(f.elem(r[shift + j] as i64), prod).value();
            }
        }
        r.pop();
    }
    r
}

/// Irreducibility over F_p: root test for degree ≤ 3, trial division by every
/// monic polynomial of degree ≤ s/2 otherwise.
fn is_irreducible(f: PrimeField, modulus: &[u32]) -> bool {
    let s = modulus.len() - 1;
    let p = f.p();
    if s == 1 {
        return true;
    }
    let has_root = (0..p).any(|c| {
        let v = modulus.iter().rev().fold(0u64, |acc, &m| (acc * c as u64 + m as u64) % p as u64);
        v == 0
    });
    if has_root {
        return false;
    }
    if s <= 3 {
        return true;
    }
    for d in 2..=s / 2 {
        let count = (p as u64).pow(d as u32);
        for lower in 0..count {
            let mut den = unpack(lower as u32, p, d);
            den.push(1);
            if poly_rem(f, modulus, &den).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}
