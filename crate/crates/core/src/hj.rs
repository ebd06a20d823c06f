//! Hirzebruch–Jung continued fractions and the invariants of cyclic quotient
//! singularities `1/n(1,q)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The cyclic quotient singularity `1/n(1,q)`, with `0 < q < n` and
/// `gcd(n, q) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fraction {
    n: BigUint,
    q: BigUint,
}

impl Fraction {
    pub fn new(n: impl Into<BigUint>, q: impl Into<BigUint>) -> Result<Self> {
        let (n, q) = (n.into(), q.into());
        if n <= BigUint::one() {
            return Err(Error::InvalidFraction(format!(
                "order n = {n} must be at least 2"
            )));
        }
        if q.is_zero() || q >= n {
            return Err(Error::InvalidFraction(format!(
                "need 0 < q < n, got {n}/{q}"
            )));
        }
        if !n.gcd(&q).is_one() {
            return Err(Error::InvalidFraction(format!(
                "gcd(n, q) = {} for {n}/{q}",
                n.gcd(&q)
            )));
        }
        Ok(Fraction { n, q })
    }

    /// Normalizes `1/n(a,b)` to `1/n(1, b·a⁻¹ mod n)`.
    pub fn from_action(
        n: impl Into<BigUint>,
        a: impl Into<BigUint>,
        b: impl Into<BigUint>,
    ) -> Result<Self> {
        let (n, a, b) = (n.into(), a.into(), b.into());
        if n <= BigUint::one() {
            return Err(Error::InvalidFraction(format!(
                "order n = {n} must be at least 2"
            )));
        }
        if !n.gcd(&a).is_one() || !n.gcd(&b).is_one() {
            return Err(Error::InvalidFraction(format!(
                "1/{n}({a},{b}) needs gcd(n,a) = gcd(n,b) = 1"
            )));
        }
        let a_inv = mod_inverse(&(&a % &n), &n);
        Fraction::new(n.clone(), (b * a_inv) % &n)
    }

    pub fn n(&self) -> &BigUint {
        &self.n
    }

    pub fn q(&self) -> &BigUint {
        &self.q
    }

    /// Du Val `A_{n-1}`: `q = n - 1`.
    pub fn is_du_val(&self) -> bool {
        &self.q + 1u32 == self.n
    }

    /// `(q+1)² mod n`, the residue the T-condition asks to vanish.
    pub fn t_residue(&self) -> BigUint {
        let s = &self.q + 1u32;
        (&s * &s) % &self.n
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.n, self.q)
    }
}

impl FromStr for Fraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (n, q) = s
            .trim()
            .split_once('/')
            .ok_or_else(|| Error::InvalidFraction(format!("expected N/Q, got {s:?}")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<BigUint>()
                .map_err(|_| Error::InvalidFraction(format!("{t:?} is not a non-negative integer")))
        };
        Fraction::new(parse(n)?, parse(q)?)
    }
}

impl Serialize for Fraction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Fraction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A chain of weights `[b₁,…,b_ϱ]`, every `bᵢ ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain(Vec<u32>);

impl Chain {
    pub fn new(weights: Vec<u32>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidChain("chain is empty".into()));
        }
        if let Some((i, w)) = weights.iter().enumerate().find(|(_, &w)| w < 2) {
            return Err(Error::InvalidChain(format!(
                "weight {w} at position {} is below 2",
                i + 1
            )));
        }
        Ok(Chain(weights))
    }

    pub fn weights(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Chain {
        Chain(self.0.iter().rev().copied().collect())
    }

    pub fn into_weights(self) -> Vec<u32> {
        self.0
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

impl FromStr for Chain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']');
        let weights = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidChain(format!("{:?} is not a weight", t.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Chain::new(weights)
    }
}

impl Serialize for Chain {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Chain {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Chain::new(Vec::<u32>::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// The triple `(ι, β, γ)`: index, `gcd(n,q+1)²/n`, and `(q+1)/gcd(n,q+1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotInvariants {
    pub iota: BigUint,
    pub beta: BigRational,
    pub gamma: BigUint,
}

impl QuotInvariants {
    /// `(n, q) = (βι², βιγ − 1)` when β is integral.
    pub fn reconstruct(&self) -> Option<(BigUint, BigUint)> {
        if !self.beta.is_integer() {
            return None;
        }
        let beta = self.beta.to_integer().to_biguint()?;
        let n = &beta * &self.iota * &self.iota;
        let q = &beta * &self.iota * &self.gamma - 1u32;
        Some((n, q))
    }
}

pub fn hj_expand(f: &Fraction) -> Chain {
    let (mut n, mut q) = (f.n.clone(), f.q.clone());
    let mut weights = Vec::new();
    while !q.is_zero() {
        let b = n.div_ceil(&q);
        let next = &b * &q - &n;
        weights.push(b.to_u32().expect("HJ weight exceeds u32"));
        n = q;
        q = next;
    }
    Chain(weights)
}

/// `(n, q)` of a chain: the continuants of `[b₁,…,b_ϱ]` and `[b₂,…,b_ϱ]`.
pub fn hj_eval(c: &Chain) -> Fraction {
    let (n, q) = continuants(c.weights());
    Fraction { n, q }
}

pub(crate) fn continuants(weights: &[u32]) -> (BigUint, BigUint) {
    let mut n = BigUint::one();
    let mut q = BigUint::zero();
    for &b in weights.iter().rev() {
        let next = BigUint::from(b) * &n - &q;
        q = n;
        n = next;
    }
    (n, q)
}

pub fn conjugate(f: &Fraction) -> Fraction {
    Fraction {
        n: f.n.clone(),
        q: mod_inverse(&f.q, &f.n),
    }
}

fn mod_inverse(a: &BigUint, n: &BigUint) -> BigUint {
    let a = BigInt::from(a.clone());
    let m = BigInt::from(n.clone());
    let e = a.extended_gcd(&m);
    debug_assert!(e.gcd.is_one());
    let inv = e.x.mod_floor(&m);
    debug_assert!(!inv.is_negative());
    inv.to_biguint().unwrap()
}

pub fn invariants(f: &Fraction) -> QuotInvariants {
    let q1 = &f.q + 1u32;
    let g = f.n.gcd(&q1);
    QuotInvariants {
        iota: &f.n / &g,
        beta: BigRational::new(BigInt::from(&g * &g), BigInt::from(f.n.clone())),
        gamma: q1 / &g,
    }
}

/// Non-Du Val with `(q+1)² ≡ 0 mod n`.
pub fn is_t_fraction(f: &Fraction) -> bool {
    let divisible = f.t_residue().is_zero();
    assert_eq!(
        divisible,
        invariants(f).beta.is_integer(),
        "divisibility and beta-integrality disagree for {f}"
    );
    divisible && !f.is_du_val()
}

pub fn is_du_val_chain(c: &Chain) -> bool {
    c.0.iter().all(|&b| b == 2)
}
