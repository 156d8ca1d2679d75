//! Arithmetic in GF(p^m) for odd primes p.
//!
//! Elements are encoded as integers in `[0, p^m)` whose base-p digits are
//! the coefficients of the element in the polynomial basis 1, x, .., x^(m-1)
//! modulo the primitive modulus. Index 0 is zero and index 1 is one. The
//! context owns exp/log tables for multiplication and a trace table, so
//! multiplication and Tr_1^m are table lookups after construction.

mod character;
mod poly;

pub use character::{character, character_sum, eval_poly, phase_sum, root_of_unity};
pub use poly::PrimePoly;

use crate::{Error, Result};

/// Largest field order built unless a caller raises the cap (3^10).
pub const DEFAULT_FIELD_CAP: u64 = 59_049;

/// An element of some GF(p^m), by base-p coefficient index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: Self = FieldElement(0);
    pub const ONE: Self = FieldElement(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

pub fn is_odd_prime(n: u64) -> bool {
    if n < 3 || n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
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

fn checked_order(p: u32, m: u32, cap: u64) -> Result<u64> {
    if !is_odd_prime(p as u64) {
        return Err(Error::NotOddPrime(p as u64));
    }
    if m == 0 {
        return Err(Error::Precondition(
            "extension degree must be at least 1".into(),
        ));
    }
    let too_large = Error::FieldTooLarge {
        p: p as u64,
        m,
        cap,
    };
    let q = (p as u64).checked_pow(m).ok_or(too_large.clone())?;
    if q > cap {
        return Err(too_large);
    }
    Ok(q)
}

/// Checks that `g` is irreducible over F_p and that x has order p^m - 1
/// modulo `g`.
pub fn check_primitive(g: &PrimePoly) -> Result<()> {
    let p = g.p();
    let m = g.degree();
    let coeffs = g.coeffs();
    let x = [0u32, 1];

    // Ben-Or: g is irreducible iff gcd(x^(p^i) - x, g) = 1 for i <= m/2.
    let mut frob = x.to_vec();
    for _ in 0..m / 2 {
        frob = poly::pow_mod(&frob, p as u64, coeffs, p);
        let common = poly::gcd(&poly::sub(&frob, &x, p), coeffs, p);
        if common.len() > 1 {
            return Err(Error::Reducible(g.pretty()));
        }
    }
    if coeffs[0] == 0 {
        return Err(Error::Reducible(g.pretty()));
    }

    let group = (p as u64).pow(m as u32) - 1;
    let is_one = |e: u64| poly::pow_mod(&x, e, coeffs, p) == [1];
    let mut order = group;
    for q in prime_factors(group) {
        while order.is_multiple_of(q) && is_one(order / q) {
            order /= q;
        }
    }
    if order != group {
        return Err(Error::NotPrimitive {
            poly: g.pretty(),
            order,
            expected: group,
        });
    }
    Ok(())
}

pub fn find_primitive_polynomial(p: u32, m: u32) -> Result<PrimePoly> {
    find_primitive_polynomial_with_cap(p, m, DEFAULT_FIELD_CAP)
}

/// Smallest primitive monic polynomial of degree `m` over F_p, ordering
/// candidates lexicographically by their constant-first coefficient list.
pub fn find_primitive_polynomial_with_cap(p: u32, m: u32, cap: u64) -> Result<PrimePoly> {
    let q = checked_order(p, m, cap)?;
    let m = m as usize;
    // Candidate t encodes (g_0, .., g_{m-1}) with g_0 as the most significant digit.
    for t in 0..q {
        let mut coeffs = vec![0u32; m + 1];
        let mut rest = t;
        for i in (0..m).rev() {
            coeffs[i] = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        if coeffs[0] == 0 {
            continue;
        }
        coeffs[m] = 1;
        let g = PrimePoly::new(p, coeffs)?;
        if check_primitive(&g).is_ok() {
            return Ok(g);
        }
    }
    Err(Error::NoPrimitive {
        p: p as u64,
        m: m as u32,
    })
}

/// A fully tabulated GF(p^m) with primitive element α = x mod g.
#[derive(Clone, Debug)]
pub struct FieldContext {
    p: u32,
    m: u32,
    order: u32,
    modulus: PrimePoly,
    exp: Vec<u32>,
    log: Vec<u32>,
    trace: Vec<u32>,
    trace_of_power: Vec<u32>,
}

impl FieldContext {
    /// Builds GF(p^m). Without a modulus the default primitive polynomial
    /// from [`find_primitive_polynomial`] is used.
    pub fn new(p: u32, m: u32, modulus: Option<PrimePoly>) -> Result<Self> {
        Self::with_cap(p, m, modulus, DEFAULT_FIELD_CAP)
    }

    pub fn with_cap(p: u32, m: u32, modulus: Option<PrimePoly>, cap: u64) -> Result<Self> {
        let q = checked_order(p, m, cap)?;
        let modulus = match modulus {
            Some(g) => {
                if g.p() != p {
                    return Err(Error::Precondition(format!(
                        "modulus is over GF({}), field is over GF({p})",
                        g.p()
                    )));
                }
                if g.degree() != m as usize {
                    return Err(Error::WrongDegree {
                        expected: m as usize,
                        got: g.degree(),
                    });
                }
                check_primitive(&g)?;
                g
            }
            None => find_primitive_polynomial_with_cap(p, m, cap)?,
        };

        let q = q as u32;
        let m_us = m as usize;
        let g = modulus.coeffs();
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![u32::MAX; q as usize];
        let mut digits = vec![0u32; m_us];
        digits[0] = 1;
        for i in 0..q - 1 {
            let idx = digits.iter().rev().fold(0u32, |acc, &d| acc * p + d);
            if log[idx as usize] != u32::MAX {
                // Unreachable after check_primitive; kept as a hard guard.
                return Err(Error::NotPrimitive {
                    poly: modulus.pretty(),
                    order: i as u64,
                    expected: q as u64 - 1,
                });
            }
            exp.push(idx);
            log[idx as usize] = i;
            // multiply by x and reduce x^m = -(g_0 + .. + g_{m-1} x^{m-1})
            let top = digits[m_us - 1];
            for j in (1..m_us).rev() {
                digits[j] = digits[j - 1];
            }
            digits[0] = 0;
            for j in 0..m_us {
                digits[j] = (digits[j] + (p - g[j]) * top) % p;
            }
        }

        let mut ctx = FieldContext {
            p,
            m,
            order: q,
            modulus,
            exp,
            log,
            trace: Vec::new(),
            trace_of_power: Vec::new(),
        };
        ctx.trace = (0..q)
            .map(|i| ctx.trace_via_frobenius(FieldElement(i)))
            .collect();
        ctx.trace_of_power = ctx.exp.iter().map(|&e| ctx.trace[e as usize]).collect();
        Ok(ctx)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Number of field elements, p^m.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Order of the multiplicative group, p^m - 1.
    pub fn group_order(&self) -> u32 {
        self.order - 1
    }

    pub fn modulus(&self) -> &PrimePoly {
        &self.modulus
    }

    pub fn element(&self, index: u32) -> Result<FieldElement> {
        if index < self.order {
            Ok(FieldElement(index))
        } else {
            Err(Error::OutOfRange {
                what: "field element index",
                value: index as u64,
                limit: self.order as u64 - 1,
            })
        }
    }

    /// Embeds a residue of the prime field.
    pub fn from_prime(&self, c: u32) -> FieldElement {
        FieldElement(c % self.p)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order).map(FieldElement)
    }

    pub fn alpha(&self) -> FieldElement {
        self.exp(1)
    }

    /// α^i, with i reduced modulo p^m - 1.
    pub fn exp(&self, i: u64) -> FieldElement {
        FieldElement(self.exp[(i % self.group_order() as u64) as usize])
    }

    /// Discrete logarithm base α; `None` for zero.
    pub fn log(&self, x: FieldElement) -> Option<u32> {
        if x.is_zero() {
            None
        } else {
            Some(self.log[x.0 as usize])
        }
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.digitwise(a, b, |x, y| x + y)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.digitwise(a, b, |x, y| x + self.p - y)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.sub(FieldElement::ZERO, a)
    }

    fn digitwise(
        &self,
        a: FieldElement,
        b: FieldElement,
        op: impl Fn(u32, u32) -> u32,
    ) -> FieldElement {
        let (mut a, mut b) = (a.0, b.0);
        let mut out = 0u32;
        let mut weight = 1u32;
        for _ in 0..self.m {
            let d = op(a % self.p, b % self.p) % self.p;
            out += d * weight;
            weight = weight.wrapping_mul(self.p);
            a /= self.p;
            b /= self.p;
        }
        FieldElement(out)
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        let n = self.group_order();
        let e = (self.log[a.0 as usize] + self.log[b.0 as usize]) % n;
        FieldElement(self.exp[e as usize])
    }

    /// a^e; 0^0 is taken as 1.
    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        match self.log(a) {
            None => FieldElement::ZERO,
            Some(l) => {
                let n = self.group_order() as u128;
                let r = (l as u128 * e as u128 % n) as u64;
                FieldElement(self.exp[r as usize])
            }
        }
    }

    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        self.log(a).map(|l| {
            FieldElement(self.exp[((self.group_order() - l) % self.group_order()) as usize])
        })
    }

    /// x^p.
    pub fn frobenius(&self, x: FieldElement) -> FieldElement {
        self.pow(x, self.p as u64)
    }

    /// Tr_1^m(x) as a residue mod p (table lookup).
    pub fn trace(&self, x: FieldElement) -> u32 {
        self.trace[x.0 as usize]
    }

    /// Tr_1^m(α^i) (table lookup, i reduced mod p^m - 1).
    pub fn trace_of_power(&self, i: u64) -> u32 {
        self.trace_of_power[(i % self.group_order() as u64) as usize]
    }

    /// Tr_1^m(x) = x + x^p + .. + x^(p^(m-1)) evaluated by field arithmetic.
    pub fn trace_via_frobenius(&self, x: FieldElement) -> u32 {
        let mut acc = FieldElement::ZERO;
        let mut conj = x;
        for _ in 0..self.m {
            acc = self.add(acc, conj);
            conj = self.frobenius(conj);
        }
        debug_assert!(acc.0 < self.p, "trace left the prime field");
        acc.0
    }

    /// Minimal polynomial of a nonzero `x` over F_p, the product of
    /// (X - c) over the distinct conjugates c = x^(p^i).
    pub fn minimal_polynomial(&self, x: FieldElement) -> Result<PrimePoly> {
        if x.is_zero() {
            return Err(Error::Precondition("minimal polynomial of zero".into()));
        }
        let mut conjugates = vec![x];
        let mut c = self.frobenius(x);
        while c != x {
            conjugates.push(c);
            c = self.frobenius(c);
        }
        // coefficients over GF(p^m), constant first
        let mut acc = vec![FieldElement::ONE];
        for &root in &conjugates {
            let minus_root = self.neg(root);
            let mut next = vec![FieldElement::ZERO; acc.len() + 1];
            for (i, &a) in acc.iter().enumerate() {
                next[i + 1] = self.add(next[i + 1], a);
                next[i] = self.add(next[i], self.mul(a, minus_root));
            }
            acc = next;
        }
        let coeffs = acc
            .into_iter()
            .map(|c| {
                if c.0 < self.p {
                    Ok(c.0)
                } else {
                    Err(Error::Precondition(
                        "conjugate product left the prime field".into(),
                    ))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        PrimePoly::new(self.p, coeffs)
    }

    /// Evaluates a prime-field polynomial at a field element.
    pub fn eval_prime_poly(&self, g: &PrimePoly, x: FieldElement) -> FieldElement {
        g.coeffs().iter().rev().fold(FieldElement::ZERO, |acc, &c| {
            self.add(self.mul(acc, x), self.from_prime(c))
        })
    }
}
