//! Witt vectors of finite length over finite rings of characteristic p.

use std::fmt;

use serde::Serialize;

use super::universal::{evaluate, universal, CharPRing, UniversalOp};
use crate::base::FiniteRing;
use crate::error::{Error, Result};

/// Longest supported Witt length.
pub const MAX_LENGTH: usize = 4;
/// Supported primes.
pub const PRIMES: [u32; 3] = [2, 3, 5];

impl CharPRing for FiniteRing {
    type Elem = usize;

    fn zero(&self) -> usize {
        FiniteRing::zero(self)
    }

    fn one(&self) -> usize {
        FiniteRing::one(self)
    }

    fn add(&self, a: &usize, b: &usize) -> usize {
        FiniteRing::add(self, *a, *b)
    }

    fn mul(&self, a: &usize, b: &usize) -> usize {
        FiniteRing::mul(self, *a, *b)
    }

    fn scalar(&self, c: u64) -> usize {
        self.from_int(c as i64)
    }

    fn pow(&self, a: &usize, e: u64) -> usize {
        FiniteRing::pow(self, *a, e)
    }
}

/// `(x_0, ..., x_{n-1})` with coordinates as element indices of a ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct WittVector {
    pub p: u32,
    pub coords: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WittOp {
    Add,
    Mul,
}

fn check_ring(ring: &FiniteRing, p: u32) -> Result<()> {
    if !PRIMES.contains(&p) {
        return Err(Error::Invalid(format!("Witt vectors are supported for p in {PRIMES:?}, not {p}")));
    }
    if ring.characteristic() != p as u64 {
        return Err(Error::Characteristic(format!("{} does not have characteristic {p}", ring.name())));
    }
    Ok(())
}

fn check_length(n: usize) -> Result<()> {
    if n == 0 || n > MAX_LENGTH {
        return Err(Error::Length(format!("Witt length {n} outside 1..={MAX_LENGTH}")));
    }
    Ok(())
}

impl WittVector {
    pub fn new(ring: &FiniteRing, p: u32, coords: Vec<usize>) -> Result<Self> {
        check_ring(ring, p)?;
        check_length(coords.len())?;
        if let Some(c) = coords.iter().find(|&&c| c >= ring.cardinality()) {
            return Err(Error::Invalid(format!("{c} is not an element of {}", ring.name())));
        }
        Ok(WittVector { p, coords })
    }

    pub fn zero(ring: &FiniteRing, p: u32, n: usize) -> Result<Self> {
        Self::new(ring, p, vec![ring.zero(); n])
    }

    /// Teichmüller lift `[c] = (c, 0, ..., 0)`.
    pub fn teichmuller(ring: &FiniteRing, p: u32, c: usize, n: usize) -> Result<Self> {
        let mut coords = vec![ring.zero(); n];
        coords[0] = c;
        Self::new(ring, p, coords)
    }

    /// `k * 1` by repeated addition.
    pub fn from_int(ring: &FiniteRing, p: u32, k: u64, n: usize) -> Result<Self> {
        let one = Self::teichmuller(ring, p, ring.one(), n)?;
        let mut acc = Self::zero(ring, p, n)?;
        for _ in 0..k {
            acc = witt_arith(ring, WittOp::Add, &acc, &one)?;
        }
        Ok(acc)
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn display(&self, ring: &FiniteRing) -> String {
        let parts: Vec<String> = self.coords.iter().map(|&c| ring.display(c)).collect();
        format!("({})", parts.join(","))
    }
}

impl fmt::Display for WittVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn same_shape(ring: &FiniteRing, a: &WittVector, b: &WittVector) -> Result<()> {
    check_ring(ring, a.p)?;
    if a.p != b.p {
        return Err(Error::PrimeMismatch(a.p, b.p));
    }
    if a.len() != b.len() {
        return Err(Error::Length(format!("lengths {} and {} differ", a.len(), b.len())));
    }
    check_length(a.len())
}

pub fn witt_arith(ring: &FiniteRing, op: WittOp, a: &WittVector, b: &WittVector) -> Result<WittVector> {
    same_shape(ring, a, b)?;
    let n = a.len();
    let polys = universal(if op == WittOp::Add { UniversalOp::Add } else { UniversalOp::Mul }, a.p as u64, n);
    let inputs: Vec<usize> = a.coords.iter().chain(&b.coords).copied().collect();
    Ok(WittVector { p: a.p, coords: evaluate(ring, &polys, &inputs) })
}

pub fn witt_neg(ring: &FiniteRing, a: &WittVector) -> Result<WittVector> {
    check_ring(ring, a.p)?;
    check_length(a.len())?;
    let polys = universal(UniversalOp::Neg, a.p as u64, a.len());
    Ok(WittVector { p: a.p, coords: evaluate(ring, &polys, &a.coords) })
}

pub fn witt_sub(ring: &FiniteRing, a: &WittVector, b: &WittVector) -> Result<WittVector> {
    witt_arith(ring, WittOp::Add, a, &witt_neg(ring, b)?)
}

/// Frobenius `W_n -> W_{n-1}`, computed through the ghost map.
pub fn frobenius_witt(ring: &FiniteRing, a: &WittVector) -> Result<WittVector> {
    check_ring(ring, a.p)?;
    if a.len() < 2 {
        return Err(Error::Length("Frobenius needs length at least 2".into()));
    }
    let polys = universal(UniversalOp::Frobenius, a.p as u64, a.len() - 1);
    Ok(WittVector { p: a.p, coords: evaluate(ring, &polys, &a.coords) })
}

/// Verschiebung `W_n -> W_{n+1}`.
pub fn verschiebung(ring: &FiniteRing, a: &WittVector) -> Result<WittVector> {
    check_ring(ring, a.p)?;
    check_length(a.len() + 1)?;
    let mut coords = vec![ring.zero()];
    coords.extend(&a.coords);
    Ok(WittVector { p: a.p, coords })
}

/// Drops coordinates beyond `n`.
pub fn restrict(a: &WittVector, n: usize) -> WittVector {
    WittVector { p: a.p, coords: a.coords[..n.min(a.len())].to_vec() }
}

/// All of `W_n(R)` in lexicographic coordinate order.
pub fn all_vectors(ring: &FiniteRing, p: u32, n: usize) -> Result<Vec<WittVector>> {
    check_ring(ring, p)?;
    check_length(n)?;
    let q = ring.cardinality();
    let total = (q as u128).pow(n as u32);
    if total > 1 << 20 {
        return Err(Error::SearchBound(total, 1 << 20));
    }
    Ok((0..total as usize)
        .map(|mut i| {
            let mut coords = vec![0; n];
            for c in coords.iter_mut().rev() {
                *c = i % q;
                i /= q;
            }
            WittVector { p, coords }
        })
        .collect())
}
