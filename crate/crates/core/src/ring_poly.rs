//! Arithmetic in `F2[x]/(x^r - 1)`.
//!
//! A ring element is stored as its sorted support (the exponents with a
//! nonzero coefficient). Coefficients live in F2, so the support fully
//! determines the polynomial and its weight is the support size.

use std::fmt;

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingPoly {
    modulus: u32,
    support: Vec<u32>,
}

impl RingPoly {
    /// Builds a polynomial from a strictly increasing exponent list.
    pub fn new(modulus: u32, support: Vec<u32>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::ZeroModulus);
        }
        for w in support.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidArgument(format!(
                    "exponents must be strictly increasing, got {} before {}",
                    w[0], w[1]
                )));
            }
        }
        if let Some(&e) = support.last() {
            if e >= modulus {
                return Err(Error::ExponentOutOfRange {
                    exponent: e,
                    modulus,
                });
            }
        }
        Ok(RingPoly { modulus, support })
    }

    /// Builds a polynomial from arbitrary exponents, reducing them mod `r`
    /// and cancelling repeated terms in pairs.
    pub fn from_terms(modulus: u32, terms: impl IntoIterator<Item = u64>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::ZeroModulus);
        }
        let raw: Vec<u32> = terms
            .into_iter()
            .map(|e| (e % modulus as u64) as u32)
            .collect();
        Ok(RingPoly {
            modulus,
            support: cancel_pairs(raw),
        })
    }

    pub fn zero(modulus: u32) -> Self {
        assert!(modulus > 0, "modulus must be positive");
        RingPoly {
            modulus,
            support: Vec::new(),
        }
    }

    pub fn one(modulus: u32) -> Self {
        Self::monomial(modulus, 0)
    }

    /// `x^(e mod r)`.
    pub fn monomial(modulus: u32, exponent: u32) -> Self {
        assert!(modulus > 0, "modulus must be positive");
        RingPoly {
            modulus,
            support: vec![exponent % modulus],
        }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn support(&self) -> &[u32] {
        &self.support
    }

    pub fn weight(&self) -> usize {
        self.support.len()
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn try_add(&self, other: &RingPoly) -> Result<RingPoly> {
        self.check_modulus(other)?;
        Ok(self.add_same_modulus(other))
    }

    pub fn try_mul(&self, other: &RingPoly) -> Result<RingPoly> {
        self.check_modulus(other)?;
        Ok(self.mul_same_modulus(other))
    }

    /// Multiplication by `x^s`: a cyclic shift of the support.
    pub fn shift(&self, s: u32) -> RingPoly {
        let r = self.modulus;
        let mut support: Vec<u32> = self
            .support
            .iter()
            .map(|&e| ((e as u64 + s as u64) % r as u64) as u32)
            .collect();
        support.sort_unstable();
        RingPoly {
            modulus: r,
            support,
        }
    }

    /// Symmetric difference of supports; caller guarantees equal moduli.
    pub(crate) fn add_same_modulus(&self, other: &RingPoly) -> RingPoly {
        debug_assert_eq!(self.modulus, other.modulus);
        let (a, b) = (&self.support, &other.support);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        RingPoly {
            modulus: self.modulus,
            support: out,
        }
    }

    pub(crate) fn mul_same_modulus(&self, other: &RingPoly) -> RingPoly {
        debug_assert_eq!(self.modulus, other.modulus);
        let r = self.modulus as u64;
        if self.is_zero() || other.is_zero() {
            return RingPoly::zero(self.modulus);
        }
        if other.weight() == 1 {
            return self.shift(other.support[0]);
        }
        if self.weight() == 1 {
            return other.shift(self.support[0]);
        }
        let mut raw = Vec::with_capacity(self.weight() * other.weight());
        for &a in &self.support {
            for &b in &other.support {
                raw.push(((a as u64 + b as u64) % r) as u32);
            }
        }
        RingPoly {
            modulus: self.modulus,
            support: cancel_pairs(raw),
        }
    }

    fn check_modulus(&self, other: &RingPoly) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus,
                right: other.modulus,
            });
        }
        Ok(())
    }

    /// Parses a matrix-file entry: `-` for zero, else `e1,e2,...` strictly increasing.
    pub fn parse_entry(modulus: u32, token: &str) -> std::result::Result<RingPoly, String> {
        if token == "-" {
            return Ok(RingPoly::zero(modulus));
        }
        let mut support = Vec::new();
        for part in token.split(',') {
            let e: u32 = part
                .parse()
                .map_err(|_| format!("invalid exponent '{part}' in entry '{token}'"))?;
            if e >= modulus {
                return Err(format!("exponent {e} out of range for r = {modulus}"));
            }
            if let Some(&prev) = support.last() {
                if e == prev {
                    return Err(format!("duplicate exponent {e} in entry '{token}'"));
                }
                if e < prev {
                    return Err(format!(
                        "exponents must be strictly increasing in entry '{token}'"
                    ));
                }
            }
            support.push(e);
        }
        Ok(RingPoly { modulus, support })
    }

    /// Human-readable form such as `x^1 + x^2`, or `0`.
    pub fn to_algebraic(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.support
            .iter()
            .map(|e| format!("x^{e}"))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Entry syntax of the matrix file format.
impl fmt::Display for RingPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("-");
        }
        let parts: Vec<String> = self.support.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// Sorts and removes exponents of even multiplicity (characteristic 2).
fn cancel_pairs(mut raw: Vec<u32>) -> Vec<u32> {
    raw.sort_unstable();
    let mut out = Vec::with_capacity(raw.len());
    let mut i = 0;
    while i < raw.len() {
        let mut j = i;
        while j < raw.len() && raw[j] == raw[i] {
            j += 1;
        }
        if (j - i) % 2 == 1 {
            out.push(raw[i]);
        }
        i = j;
    }
    out
}
