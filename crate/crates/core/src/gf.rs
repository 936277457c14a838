//! Exact arithmetic in prime fields `F_p` and extension fields `F_{p^e}`.
//!
//! Elements are encoded as a single integer index in `[0, q)`: the element
//! with coefficient vector `(c_0, ..., c_{e-1})` over `F_p` has index
//! `sum_j c_j p^j`. Index 0 is the additive identity and index 1 the
//! multiplicative identity. All operations are pure functions on immutable
//! values and safe to share across threads.

use serde::Serialize;
use thiserror::Error;

/// Largest field order accepted by [`make_field`].
pub const ORDER_CAP: u64 = 1 << 32;

/// Largest supported extension degree. Every use at desk scale is tiny.
pub const MAX_EXTENSION_DEGREE: u32 = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0:?} is not irreducible over F_{1}")]
    NotIrreducible(Vec<u64>, u64),
    #[error("field order {p}^{e} exceeds the supported cap of 2^32")]
    OrderOverflow { p: u64, e: u32 },
    #[error("extension degree {0} not supported (must be 1..={MAX_EXTENSION_DEGREE})")]
    BadDegree(u32),
    #[error("modulus must be monic of degree {expected} with coefficients in [0, p): got {got:?}")]
    BadModulus { expected: u32, got: Vec<u64> },
    #[error("division by zero")]
    DivisionByZero,
    #[error("element index {index} out of range for field of order {q}")]
    IndexOutOfRange { index: u64, q: u64 },
}

/// An element of a finite field, stored as its canonical integer index.
///
/// The index is only meaningful relative to the [`FieldSpec`] it was created
/// for; arithmetic goes through the spec.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FieldElement(u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn index(self) -> u64 {
        self.0
    }
}

impl std::fmt::Display for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A validated finite field `F_{p^e}`.
///
/// For `e > 1` the field is `F_p[X]` modulo a monic irreducible polynomial of
/// degree `e`; for `e = 1` the modulus slot holds the unused placeholder `X`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldSpec {
    p: u64,
    e: u32,
    q: u64,
    /// Coefficients `m_0, ..., m_e` low degree first; `m_e = 1`.
    modulus: Vec<u64>,
}

/// Builds a validated field, selecting a default modulus when none is given.
///
/// The default modulus for `e > 1` is the lexicographically least monic
/// irreducible polynomial of degree `e` over `F_p`, comparing coefficient
/// vectors low degree first. The search is exhaustive, so two calls with the
/// same `(p, e)` always yield the same spec.
pub fn make_field(p: u64, e: u32, modulus: Option<&[u64]>) -> Result<FieldSpec, GfError> {
    if !is_prime(p) {
        return Err(GfError::NotPrime(p));
    }
    if e == 0 || e > MAX_EXTENSION_DEGREE {
        return Err(GfError::BadDegree(e));
    }
    let q = checked_pow(p, e).ok_or(GfError::OrderOverflow { p, e })?;
    if q > ORDER_CAP {
        return Err(GfError::OrderOverflow { p, e });
    }

    let modulus = if e == 1 {
        // Placeholder X - 0, never used by the arithmetic.
        vec![0, 1]
    } else {
        match modulus {
            Some(m) => {
                let ok = m.len() == e as usize + 1
                    && *m.last().unwrap() == 1
                    && m.iter().all(|&c| c < p);
                if !ok {
                    return Err(GfError::BadModulus {
                        expected: e,
                        got: m.to_vec(),
                    });
                }
                if !is_irreducible(m, p) {
                    return Err(GfError::NotIrreducible(m.to_vec(), p));
                }
                m.to_vec()
            }
            None => default_modulus(p, e),
        }
    };

    Ok(FieldSpec { p, e, q, modulus })
}

impl FieldSpec {
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.e
    }

    /// The field order q = p^e.
    pub fn order(&self) -> u64 {
        self.q
    }

    /// Modulus coefficients, low degree first (placeholder `X` for e = 1).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Checked element constructor.
    pub fn element(&self, index: u64) -> Result<FieldElement, GfError> {
        if index < self.q {
            Ok(FieldElement(index))
        } else {
            Err(GfError::IndexOutOfRange {
                index,
                q: self.q,
            })
        }
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a.0 < self.q
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(self.contains(a) && self.contains(b));
        if self.e == 1 {
            return FieldElement((a.0 + b.0) % self.p);
        }
        let da = self.digits(a.0);
        let db = self.digits(b.0);
        let mut out = [0u64; MAX_EXTENSION_DEGREE as usize];
        for j in 0..self.e as usize {
            out[j] = (da[j] + db[j]) % self.p;
        }
        FieldElement(self.undigits(&out))
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        debug_assert!(self.contains(a));
        if self.e == 1 {
            return FieldElement((self.p - a.0) % self.p);
        }
        let da = self.digits(a.0);
        let mut out = [0u64; MAX_EXTENSION_DEGREE as usize];
        for j in 0..self.e as usize {
            out[j] = (self.p - da[j]) % self.p;
        }
        FieldElement(self.undigits(&out))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(self.contains(a) && self.contains(b));
        if self.e == 1 {
            return FieldElement(a.0 * b.0 % self.p);
        }
        let e = self.e as usize;
        let da = self.digits(a.0);
        let db = self.digits(b.0);
        // Schoolbook product, degree at most 2e - 2.
        let mut prod = [0u64; 2 * MAX_EXTENSION_DEGREE as usize];
        for i in 0..e {
            if da[i] == 0 {
                continue;
            }
            for j in 0..e {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % self.p;
            }
        }
        // Reduce by the monic modulus: X^e = -(m_{e-1} X^{e-1} + ... + m_0).
        for k in (e..=2 * e - 2).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for j in 0..e {
                let m = self.modulus[j];
                if m != 0 {
                    prod[k - e + j] = (prod[k - e + j] + c * (self.p - m)) % self.p;
                }
            }
        }
        let mut out = [0u64; MAX_EXTENSION_DEGREE as usize];
        out[..e].copy_from_slice(&prod[..e]);
        FieldElement(self.undigits(&out))
    }

    /// Square-and-multiply exponentiation; `pow(a, 0) = 1` for every `a`.
    pub fn pow(&self, a: FieldElement, mut k: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(base, base);
            }
        }
        acc
    }

    /// Multiplicative inverse via `a^(q-2)`.
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, GfError> {
        if a == FieldElement::ZERO {
            return Err(GfError::DivisionByZero);
        }
        Ok(self.pow(a, self.q - 2))
    }

    /// All q elements in increasing index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(FieldElement)
    }

    /// The prime subfield `{0, 1, 2*1, ..., (p-1)*1}`.
    ///
    /// Each returned element is checked to be fixed by the Frobenius map
    /// `a -> a^p`.
    pub fn subfield_elements(&self) -> Vec<FieldElement> {
        let mut out = Vec::with_capacity(self.p as usize);
        let mut x = FieldElement::ZERO;
        for _ in 0..self.p {
            assert_eq!(self.pow(x, self.p), x, "subfield element not Frobenius-fixed");
            out.push(x);
            x = self.add(x, FieldElement::ONE);
        }
        out
    }

    fn digits(&self, mut index: u64) -> [u64; MAX_EXTENSION_DEGREE as usize] {
        let mut d = [0u64; MAX_EXTENSION_DEGREE as usize];
        for slot in d.iter_mut().take(self.e as usize) {
            *slot = index % self.p;
            index /= self.p;
        }
        d
    }

    fn undigits(&self, d: &[u64; MAX_EXTENSION_DEGREE as usize]) -> u64 {
        let mut index = 0u64;
        for j in (0..self.e as usize).rev() {
            index = index * self.p + d[j];
        }
        index
    }
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.e == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{}", self.p, self.e)
        }
    }
}

fn checked_pow(p: u64, e: u32) -> Option<u64> {
    let mut acc = 1u64;
    for _ in 0..e {
        acc = acc.checked_mul(p)?;
    }
    Some(acc)
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Remainder of `a` divided by the monic polynomial `b` over F_p.
/// Coefficients are low degree first; trailing zeros allowed in `a`.
fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    let mut r: Vec<u64> = a.to_vec();
    while r.len() > db {
        let lead = *r.last().unwrap();
        let k = r.len() - 1;
        if lead != 0 {
            for j in 0..db {
                let sub = lead * b[j] % p;
                let idx = k - db + j;
                r[idx] = (r[idx] + p - sub) % p;
            }
        }
        r.pop();
    }
    r
}

fn is_zero_poly(a: &[u64]) -> bool {
    a.iter().all(|&c| c == 0)
}

/// Irreducibility over F_p by exhaustive trial division: a reducible
/// polynomial of degree e has a monic factor of degree in [1, e/2].
fn is_irreducible(m: &[u64], p: u64) -> bool {
    let e = m.len() - 1;
    for k in 1..=e / 2 {
        let count = checked_pow(p, k as u32).expect("divisor space fits u64");
        for idx in 0..count {
            let mut div = Vec::with_capacity(k + 1);
            let mut v = idx;
            for _ in 0..k {
                div.push(v % p);
                v /= p;
            }
            div.push(1);
            if is_zero_poly(&poly_rem(m, &div, p)) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically least (low-degree coefficients compared first) monic
/// irreducible polynomial of degree e over F_p.
fn default_modulus(p: u64, e: u32) -> Vec<u64> {
    let e = e as usize;
    let total = checked_pow(p, e as u32).expect("search space fits u64");
    for rank in 0..total {
        // rank digit j (from the most significant end) is coefficient c_j,
        // so increasing rank enumerates (c_0, ..., c_{e-1}) lexicographically.
        let mut coeffs = vec![0u64; e + 1];
        let mut v = rank;
        for j in (0..e).rev() {
            coeffs[j] = v % p;
            v /= p;
        }
        coeffs[e] = 1;
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over F_p")
}
