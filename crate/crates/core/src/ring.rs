//! Exact arithmetic in `F_p` and `Z/p^k` for odd primes `p`.
//!
//! Elements are canonical residues in `[0, p^k)` stored as `u64`. The
//! maximal ideal of `Z/p^k` is `(p)`, so an element is a unit exactly when
//! its residue mod `p` is nonzero.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest modulus accepted; keeps `a + b` and `u128` products safe.
const MAX_MODULUS: u64 = 1 << 62;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingKind {
    PrimeField,
    LocalZpk,
}

/// Coefficient ring: `F_p` or `Z/p^k`.
///
/// Two descriptors compare equal when they describe the same ring, so
/// `fp:p` and `zpk:p,1` are interchangeable.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(try_from = "RingRepr", into = "RingRepr")]
pub struct RingDescriptor {
    kind: RingKind,
    p: u64,
    k: u32,
    modulus: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind")]
enum RingRepr {
    #[serde(rename = "fp")]
    Fp { p: u64 },
    #[serde(rename = "zpk")]
    Zpk { p: u64, k: u32 },
}

impl TryFrom<RingRepr> for RingDescriptor {
    type Error = Error;

    fn try_from(repr: RingRepr) -> Result<Self> {
        match repr {
            RingRepr::Fp { p } => RingDescriptor::prime_field(p),
            RingRepr::Zpk { p, k } => RingDescriptor::local(p, k),
        }
    }
}

impl From<RingDescriptor> for RingRepr {
    fn from(ring: RingDescriptor) -> Self {
        match ring.kind {
            RingKind::PrimeField => RingRepr::Fp { p: ring.p },
            RingKind::LocalZpk => RingRepr::Zpk { p: ring.p, k: ring.k },
        }
    }
}

impl PartialEq for RingDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k
    }
}

impl Eq for RingDescriptor {}

impl Hash for RingDescriptor {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.p.hash(state);
        self.k.hash(state);
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl RingDescriptor {
    pub fn prime_field(p: u64) -> Result<Self> {
        Self::build(RingKind::PrimeField, p, 1)
    }

    pub fn local(p: u64, k: u32) -> Result<Self> {
        Self::build(RingKind::LocalZpk, p, k)
    }

    fn build(kind: RingKind, p: u64, k: u32) -> Result<Self> {
        if p == 2 {
            return Err(Error::InvalidRing("characteristic 2 is not supported".into()));
        }
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not an odd prime")));
        }
        if k == 0 {
            return Err(Error::InvalidRing("exponent k must be at least 1".into()));
        }
        let modulus = p
            .checked_pow(k)
            .filter(|&m| m <= MAX_MODULUS)
            .ok_or_else(|| Error::InvalidRing(format!("{p}^{k} overflows the supported range")))?;
        Ok(RingDescriptor { kind, p, k, modulus })
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// True when the ring is a field, i.e. `k == 1`.
    pub fn is_field(&self) -> bool {
        self.k == 1
    }

    /// The residue field `F_p`.
    pub fn residue_field(&self) -> RingDescriptor {
        RingDescriptor {
            kind: RingKind::PrimeField,
            p: self.p,
            k: 1,
            modulus: self.p,
        }
    }

    pub fn ensure_same(&self, other: &RingDescriptor) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }

    pub fn elem(&self, value: i64) -> RingElem {
        RingElem {
            value: self.reduce(value),
            ring: *self,
        }
    }

    pub fn reduce(&self, value: i64) -> u64 {
        value.rem_euclid(self.modulus as i64) as u64
    }

    pub fn reduce_u(&self, value: u64) -> u64 {
        value % self.modulus
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.modulus as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.modulus;
        base %= self.modulus;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    #[inline]
    pub fn is_unit(&self, a: u64) -> bool {
        !a.is_multiple_of(self.p)
    }

    /// Inverse of a unit via the extended Euclidean algorithm.
    pub fn inv(&self, a: u64) -> Result<u64> {
        if !self.is_unit(a) {
            return Err(Error::NonUnitInverse(a));
        }
        let (mut r0, mut r1) = (self.modulus as i128, a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(t0.rem_euclid(self.modulus as i128) as u64)
    }

    /// `a / b` for a unit `b`.
    pub fn div(&self, a: u64, b: u64) -> Result<u64> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Image of `a` in the residue field.
    #[inline]
    pub fn residue(&self, a: u64) -> u64 {
        a % self.p
    }

    /// p-adic valuation of `a`, with `valuation(0) = k`.
    pub fn valuation(&self, a: u64) -> u32 {
        if a == 0 {
            return self.k;
        }
        let mut v = 0;
        let mut x = a;
        while x.is_multiple_of(self.p) {
            x /= self.p;
            v += 1;
        }
        v
    }

    /// Inverse of 2, which always exists since `p` is odd.
    pub fn half(&self) -> u64 {
        self.modulus.div_ceil(2)
    }

    /// Every element of the ring, in increasing order.
    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.modulus
    }

    /// Legendre-style square test in the residue field (`0` counts as a square).
    pub fn is_square_residue(&self, a: u64) -> bool {
        let a = self.residue(a);
        a == 0 || self.residue_field().pow(a, (self.p - 1) / 2) == 1
    }

    /// Square root in `F_p` by Tonelli–Shanks. Only meaningful on the
    /// residue field; returns `None` for non-squares.
    pub fn sqrt_residue(&self, a: u64) -> Option<u64> {
        let f = self.residue_field();
        let a = f.reduce_u(a);
        if a == 0 {
            return Some(0);
        }
        if !f.is_square_residue(a) {
            return None;
        }
        let p = f.p;
        if p % 4 == 3 {
            return Some(f.pow(a, (p + 1) / 4));
        }
        let mut q = p - 1;
        let mut s = 0;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let z = (2..p).find(|&z| !f.is_square_residue(z))?;
        let mut m = s;
        let mut c = f.pow(z, q);
        let mut t = f.pow(a, q);
        let mut r = f.pow(a, q.div_ceil(2));
        while t != 1 {
            let mut i = 0;
            let mut t2 = t;
            while t2 != 1 {
                t2 = f.mul(t2, t2);
                i += 1;
            }
            let b = f.pow(c, 1 << (m - i - 1));
            m = i;
            c = f.mul(b, b);
            t = f.mul(t, c);
            r = f.mul(r, b);
        }
        Some(r)
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            RingKind::PrimeField => write!(f, "fp:{}", self.p),
            RingKind::LocalZpk => write!(f, "zpk:{},{}", self.p, self.k),
        }
    }
}

/// Parses `fp:p` or `zpk:p,k`.
impl FromStr for RingDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed ring '{s}', expected fp:p or zpk:p,k"));
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        match kind.trim() {
            "fp" => {
                let p = rest.trim().parse().map_err(|_| bad())?;
                RingDescriptor::prime_field(p)
            }
            "zpk" => {
                let (p, k) = rest.split_once(',').ok_or_else(bad)?;
                let p = p.trim().parse().map_err(|_| bad())?;
                let k = k.trim().parse().map_err(|_| bad())?;
                RingDescriptor::local(p, k)
            }
            _ => Err(bad()),
        }
    }
}

/// A single ring element carrying its ring. Serializes as the bare
/// canonical residue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingElem {
    value: u64,
    ring: RingDescriptor,
}

impl Serialize for RingElem {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_u64(self.value)
    }
}

impl RingElem {
    pub fn new(ring: RingDescriptor, value: u64) -> Self {
        RingElem {
            value: ring.reduce_u(value),
            ring,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn ring(&self) -> RingDescriptor {
        self.ring
    }

    pub fn try_add(self, other: RingElem) -> Result<RingElem> {
        self.ring.ensure_same(&other.ring)?;
        Ok(RingElem::new(self.ring, self.ring.add(self.value, other.value)))
    }

    pub fn try_sub(self, other: RingElem) -> Result<RingElem> {
        self.ring.ensure_same(&other.ring)?;
        Ok(RingElem::new(self.ring, self.ring.sub(self.value, other.value)))
    }

    pub fn try_mul(self, other: RingElem) -> Result<RingElem> {
        self.ring.ensure_same(&other.ring)?;
        Ok(RingElem::new(self.ring, self.ring.mul(self.value, other.value)))
    }

    pub fn neg(self) -> RingElem {
        RingElem::new(self.ring, self.ring.neg(self.value))
    }

    pub fn inverse(self) -> Result<RingElem> {
        Ok(RingElem::new(self.ring, self.ring.inv(self.value)?))
    }

    pub fn is_unit(&self) -> bool {
        self.ring.is_unit(self.value)
    }

    /// Reduction modulo the maximal ideal.
    pub fn residue(&self) -> RingElem {
        RingElem::new(self.ring.residue_field(), self.ring.residue(self.value))
    }

    /// Canonical lift of a residue-field element into `target`.
    pub fn lift(&self, target: RingDescriptor) -> Result<RingElem> {
        if target.p() != self.ring.p() {
            return Err(Error::RingMismatch {
                left: self.ring.to_string(),
                right: target.to_string(),
            });
        }
        Ok(RingElem::new(target, self.value))
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
