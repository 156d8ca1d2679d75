//! Monic polynomials over GF(p) and the dense F_p[x] helpers used to
//! validate field moduli.

use std::fmt;

use crate::{Error, Result};

/// Monic polynomial over GF(p), coefficients stored constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimePoly {
    p: u32,
    coeffs: Vec<u32>,
}

impl PrimePoly {
    pub fn new(p: u32, coeffs: Vec<u32>) -> Result<Self> {
        if !super::is_odd_prime(p as u64) {
            return Err(Error::NotOddPrime(p as u64));
        }
        if coeffs.len() < 2 {
            return Err(Error::WrongDegree {
                expected: 1,
                got: coeffs.len().saturating_sub(1),
            });
        }
        if let Some(&bad) = coeffs.iter().find(|&&c| c >= p) {
            return Err(Error::BadCoefficient {
                value: bad as u64,
                p: p as u64,
            });
        }
        if *coeffs.last().unwrap() != 1 {
            return Err(Error::NotMonic);
        }
        Ok(Self { p, coeffs })
    }

    /// Parses the comma-separated form, constant term first
    /// (`"2,0,0,1,1"` is x^4 + x^3 + 2).
    pub fn parse(p: u32, text: &str) -> Result<Self> {
        let coeffs = text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("coefficient {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(p, coeffs)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficients g_0..g_m, constant term first.
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Human-readable form such as `x^4 + x^3 + 2`.
    pub fn pretty(&self) -> String {
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            terms.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}{mono}"),
            });
        }
        terms.join(" + ")
    }

    /// Evaluates at a residue of the prime field.
    pub fn eval_prime(&self, x: u32) -> u32 {
        let p = self.p as u64;
        self.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| (acc * x as u64 + c as u64) % p) as u32
    }
}

impl fmt::Display for PrimePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

// Dense F_p[x] arithmetic on constant-first coefficient vectors. Results are
// trimmed so that the empty vector is the zero polynomial.

pub(crate) fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u32, p: u32) -> u32 {
    pow_residue(a, p - 2, p)
}

pub(crate) fn pow_residue(base: u32, mut e: u32, p: u32) -> u32 {
    let p = p as u64;
    let mut b = base as u64 % p;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc as u32
}

/// Remainder of `a` modulo `g` (g nonzero).
pub(crate) fn rem(a: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let g = trim(g.to_vec());
    let dg = g.len() - 1;
    let lead_inv = inv_mod(g[dg], p) as u64;
    let mut r = trim(a.to_vec());
    let pp = p as u64;
    while r.len() > dg {
        let top = r.len() - 1;
        let factor = r[top] as u64 * lead_inv % pp;
        let shift = top - dg;
        for (i, &gi) in g.iter().enumerate() {
            let sub = factor * gi as u64 % pp;
            r[shift + i] = ((r[shift + i] as u64 + pp - sub) % pp) as u32;
        }
        r = trim(r);
    }
    r
}

pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let pp = p as u64;
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % pp;
        }
    }
    trim(out.into_iter().map(|v| v as u32).collect())
}

pub(crate) fn mul_mod(a: &[u32], b: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    rem(&mul(a, b, p), g, p)
}

pub(crate) fn pow_mod(base: &[u32], mut e: u64, g: &[u32], p: u32) -> Vec<u32> {
    let mut acc = rem(&[1], g, p);
    let mut b = rem(base, g, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &b, g, p);
        }
        b = mul_mod(&b, &b, g, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

pub(crate) fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_use_constant_first_order() {
        let g = PrimePoly::parse(3, "2,0,0,1,1").unwrap();
        assert_eq!(g.degree(), 4);
        assert_eq!(g.to_string(), "2,0,0,1,1");
        assert_eq!(g.pretty(), "x^4 + x^3 + 2");
    }

    #[test]
    fn rejects_malformed_polynomials() {
        assert_eq!(PrimePoly::parse(3, "1,2"), PrimePoly::new(3, vec![1, 2]));
        assert!(matches!(
            PrimePoly::new(3, vec![1, 2]),
            Err(Error::NotMonic)
        ));
        assert!(matches!(
            PrimePoly::new(3, vec![3, 1]),
            Err(Error::BadCoefficient { value: 3, p: 3 })
        ));
        assert!(matches!(
            PrimePoly::new(3, vec![1]),
            Err(Error::WrongDegree { .. })
        ));
        assert!(matches!(
            PrimePoly::new(4, vec![1, 1]),
            Err(Error::NotOddPrime(4))
        ));
        assert!(PrimePoly::parse(3, "1,x").is_err());
    }

    #[test]
    fn remainder_matches_long_division() {
        // x^2 mod (x^2 + x + 2) over F_3 is -x - 2 = 2x + 1
        assert_eq!(rem(&[0, 0, 1], &[2, 1, 1], 3), vec![1, 2]);
        // (x+1)(x+2) = x^2 + 3x + 2 = x^2 + 2 over F_3
        assert_eq!(mul(&[1, 1], &[2, 1], 3), vec![2, 0, 1]);
        assert_eq!(gcd(&[2, 0, 1], &[1, 1], 3), vec![1, 1]);
    }
}
