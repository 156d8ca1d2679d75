use std::sync::Arc;

use num_complex::Complex64;

use crate::galois::{is_odd_prime, root_of_unity, FieldContext, FieldElement};
use crate::lfsr::CombinedGenerator;
use crate::{Error, Result};

/// Parameters (p, m, r_1 < .. < r_h) of one additive character matrix.
/// K = p^m rows and N = K^h columns; h and d = r_h follow from the exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConstructionSpec {
    p: u32,
    m: u32,
    exponents: Vec<u64>,
}

impl ConstructionSpec {
    pub fn new(p: u32, m: u32, exponents: Vec<u64>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidConstruction(msg));
        if !is_odd_prime(p as u64) {
            return bad(format!("p = {p} must be an odd prime"));
        }
        if m == 0 {
            return bad("m must be at least 1".into());
        }
        let h = exponents.len();
        if h < 2 {
            return bad(format!("h = {h} must exceed 1"));
        }
        if exponents[0] != 1 {
            return bad(format!("r_1 = {} must equal 1", exponents[0]));
        }
        if let Some(w) = exponents.windows(2).find(|w| w[0] >= w[1]) {
            return bad(format!(
                "exponents must be strictly increasing ({} then {})",
                w[0], w[1]
            ));
        }
        if let Some(r) = exponents.iter().find(|&&r| r % p as u64 == 0) {
            return bad(format!("gcd({r}, {p}^{m}) != 1"));
        }
        let k = (p as u64).checked_pow(m);
        if k.and_then(|k| k.checked_pow(h as u32)).is_none() {
            return bad(format!("N = ({p}^{m})^{h} overflows"));
        }
        Ok(Self { p, m, exponents })
    }

    /// Fills the exponents as 1, then the smallest integers coprime to p,
    /// then `d`.
    pub fn with_default_exponents(p: u32, m: u32, h: usize, d: u64) -> Result<Self> {
        if h < 2 {
            return Err(Error::InvalidConstruction(format!("h = {h} must exceed 1")));
        }
        if d < h as u64 {
            return Err(Error::InvalidConstruction(format!(
                "d = {d} must be at least h = {h}"
            )));
        }
        let mut exps = vec![1u64];
        let mut r = 2u64;
        while exps.len() < h - 1 && r < d {
            if !r.is_multiple_of(p as u64) {
                exps.push(r);
            }
            r += 1;
        }
        if exps.len() < h - 1 {
            return Err(Error::InvalidConstruction(format!(
                "no {h} exponents coprime to {p} fit below d = {d}"
            )));
        }
        exps.push(d);
        Self::new(p, m, exps)
    }

    /// h = d = 2 with exponents (1, 2).
    pub fn construction_1a(p: u32, m: u32) -> Result<Self> {
        Self::new(p, m, vec![1, 2])
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn h(&self) -> usize {
        self.exponents.len()
    }

    pub fn d(&self) -> u64 {
        *self.exponents.last().unwrap()
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn rows(&self) -> u64 {
        (self.p as u64).pow(self.m)
    }

    pub fn cols(&self) -> u64 {
        self.rows().pow(self.h() as u32)
    }
}

/// Base-K digits u_1..u_h of a column index, least significant first.
pub fn decompose_index(n: u64, k: u64, h: usize) -> Result<Vec<u32>> {
    let limit = k.checked_pow(h as u32).unwrap_or(u64::MAX);
    if n >= limit {
        return Err(Error::OutOfRange {
            what: "column index",
            value: n,
            limit: limit - 1,
        });
    }
    let mut rest = n;
    Ok((0..h)
        .map(|_| {
            let d = rest % k;
            rest /= k;
            d as u32
        })
        .collect())
}

pub fn compose_index(u: &[u32], k: u64) -> u64 {
    u.iter().rev().fold(0u64, |acc, &d| acc * k + d as u64)
}

/// b_i = 0 for u_i = 0, else α^(u_i - 1).
pub fn coefficients_from_index(ctx: &FieldContext, u: &[u32]) -> Result<Vec<FieldElement>> {
    u.iter()
        .map(|&d| match d {
            0 => Ok(FieldElement::ZERO),
            d if d < ctx.order() => Ok(ctx.exp(d as u64 - 1)),
            d => Err(Error::OutOfRange {
                what: "column digit",
                value: d as u64,
                limit: ctx.order() as u64 - 1,
            }),
        })
        .collect()
}

/// A column index with its digits and field coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnSpec {
    pub n: u64,
    pub u: Vec<u32>,
    pub b: Vec<FieldElement>,
}

impl ColumnSpec {
    pub fn new(spec: &ConstructionSpec, ctx: &FieldContext, n: u64) -> Result<Self> {
        let u = decompose_index(n, spec.rows(), spec.h())?;
        let b = coefficients_from_index(ctx, &u)?;
        Ok(Self { n, u, b })
    }
}

/// A validated spec bound to its field, able to produce any column.
#[derive(Clone, Debug)]
pub struct Construction {
    spec: ConstructionSpec,
    field: Arc<FieldContext>,
    alphabet: Vec<Complex64>,
}

impl Construction {
    pub fn new(spec: ConstructionSpec, field: Arc<FieldContext>) -> Result<Self> {
        if field.p() != spec.p() || field.m() != spec.m() {
            return Err(Error::Precondition(format!(
                "field GF({}^{}) does not match construction over GF({}^{})",
                field.p(),
                field.m(),
                spec.p(),
                spec.m()
            )));
        }
        let scale = 1.0 / (spec.rows() as f64).sqrt();
        let alphabet = (0..spec.p())
            .map(|t| root_of_unity(t as u64, spec.p()) * scale)
            .collect();
        Ok(Self {
            spec,
            field,
            alphabet,
        })
    }

    pub fn spec(&self) -> &ConstructionSpec {
        &self.spec
    }

    pub fn field(&self) -> &FieldContext {
        &self.field
    }

    /// ω_p^t / √K for t in [0, p).
    pub fn alphabet(&self) -> &[Complex64] {
        &self.alphabet
    }

    /// Phase exponents t_k of column n: entry k is alphabet[t_k].
    pub fn column_phases(&self, n: u64, out: &mut [u16]) -> Result<()> {
        let col = ColumnSpec::new(&self.spec, &self.field, n)?;
        let k = self.spec.rows() as usize;
        assert_eq!(out.len(), k);
        let p = self.spec.p();
        let group = self.field.group_order() as u64;
        out.fill(0);
        // Tr(Σ b_i x^{r_i}) = Σ Tr(α^{u_i - 1 + r_i(k-1)}) with x = α^{k-1}
        for (&u, &r) in col.u.iter().zip(self.spec.exponents()) {
            if u == 0 {
                continue;
            }
            let step = r % group;
            let mut e = (u as u64 - 1) % group;
            for t in out[1..].iter_mut() {
                *t = ((*t as u32 + self.field.trace_of_power(e)) % p) as u16;
                e += step;
                if e >= group {
                    e -= group;
                }
            }
        }
        Ok(())
    }

    /// Column n by direct trace evaluation.
    pub fn column(&self, n: u64) -> Result<Vec<Complex64>> {
        let mut t = vec![0u16; self.spec.rows() as usize];
        self.column_phases(n, &mut t)?;
        Ok(t.iter().map(|&t| self.alphabet[t as usize]).collect())
    }

    /// Column n from the combined shift-register generator.
    pub fn column_via_lfsr(&self, n: u64) -> Result<Vec<Complex64>> {
        let col = ColumnSpec::new(&self.spec, &self.field, n)?;
        let gen = CombinedGenerator::for_coefficients(&self.field, self.spec.exponents(), &col.b)?;
        let seq = gen.generate(self.field.group_order() as usize)?;
        let mut out = Vec::with_capacity(seq.len() + 1);
        out.push(self.alphabet[0]);
        out.extend(seq.iter().map(|&t| self.alphabet[t as usize]));
        Ok(out)
    }
}
