//! Linear feedback shift registers for trace sequences.
//!
//! A register for exponent r runs the recurrence of the minimal polynomial
//! g(x) = x^e + g_{e-1} x^{e-1} + .. + g_0 of α^r:
//!
//! ```text
//! s_{k+e} = -(g_0 s_k + g_1 s_{k+1} + .. + g_{e-1} s_{k+e-1})  (mod p)
//! ```
//!
//! Seeding the registers with Tr(b·α^{rk}) for k < e makes the output the
//! trace sequence Tr(b·α^{rk}). A column of the additive character matrix
//! is the termwise sum of h such registers.

use std::fmt::Write as _;

use crate::galois::{FieldContext, FieldElement, PrimePoly};
use crate::{Error, Result};

/// Feedback connection for the trace sequence of α^r.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LfsrSpec {
    p: u32,
    exponent: u64,
    feedback: PrimePoly,
    taps: Vec<u32>,
}

/// Register contents, oldest value first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LfsrState {
    pub registers: Vec<u32>,
}

impl LfsrSpec {
    pub fn from_exponent(ctx: &FieldContext, r: u64) -> Result<Self> {
        if r == 0 || r.is_multiple_of(ctx.p() as u64) {
            return Err(Error::Precondition(format!(
                "exponent {r} must be positive and coprime to {}^{}",
                ctx.p(),
                ctx.m()
            )));
        }
        let feedback = ctx.minimal_polynomial(ctx.exp(r))?;
        let p = ctx.p();
        let e = feedback.degree();
        let taps = feedback.coeffs()[..e]
            .iter()
            .map(|&g| (p - g) % p)
            .collect();
        Ok(Self {
            p,
            exponent: r,
            feedback,
            taps,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Minimal polynomial of α^r that defines the feedback.
    pub fn feedback(&self) -> &PrimePoly {
        &self.feedback
    }

    /// Feedback weights: s_{k+e} = Σ taps[i]·s_{k+i}.
    pub fn taps(&self) -> &[u32] {
        &self.taps
    }

    pub fn len(&self) -> usize {
        self.taps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.taps.is_empty()
    }

    /// Registers Tr(b·α^{rk}) for k = 0..e-1.
    pub fn seed(&self, ctx: &FieldContext, b: FieldElement) -> LfsrState {
        let registers = match ctx.log(b) {
            None => vec![0; self.len()],
            Some(lb) => (0..self.len() as u64)
                .map(|k| ctx.trace_of_power(lb as u64 + self.exponent * k))
                .collect(),
        };
        LfsrState { registers }
    }

    /// Emits the oldest register and shifts in the feedback value.
    pub fn step(&self, state: &mut LfsrState) -> u32 {
        let p = self.p as u64;
        let next = self
            .taps
            .iter()
            .zip(&state.registers)
            .fold(0u64, |acc, (&t, &s)| (acc + t as u64 * s as u64) % p) as u32;
        let out = state.registers[0];
        state.registers.rotate_left(1);
        *state.registers.last_mut().unwrap() = next;
        out
    }
}

/// Shorthand for `LfsrSpec::from_exponent`.
pub fn lfsr_from_exponent(ctx: &FieldContext, r: u64) -> Result<LfsrSpec> {
    LfsrSpec::from_exponent(ctx, r)
}

/// Shorthand for building the spec for `r` and seeding it with `b`.
pub fn seed_for_coefficient(ctx: &FieldContext, r: u64, b: FieldElement) -> Result<LfsrState> {
    Ok(LfsrSpec::from_exponent(ctx, r)?.seed(ctx, b))
}

/// h registers stepped in lockstep whose outputs are summed mod p.
#[derive(Clone, Debug)]
pub struct CombinedGenerator {
    p: u32,
    period: usize,
    channels: Vec<(LfsrSpec, LfsrState)>,
}

impl CombinedGenerator {
    pub fn new(ctx: &FieldContext, channels: Vec<(LfsrSpec, LfsrState)>) -> Result<Self> {
        if channels
            .iter()
            .any(|(s, st)| s.p() != ctx.p() || st.registers.len() != s.len())
        {
            return Err(Error::Precondition(
                "channel does not match the field".into(),
            ));
        }
        Ok(Self {
            p: ctx.p(),
            period: ctx.group_order() as usize,
            channels,
        })
    }

    /// Generator for c(k) = Σ_i Tr(b_i·α^{r_i k}).
    pub fn for_coefficients(
        ctx: &FieldContext,
        exponents: &[u64],
        coeffs: &[FieldElement],
    ) -> Result<Self> {
        if exponents.len() != coeffs.len() {
            return Err(Error::Precondition(format!(
                "{} exponents but {} coefficients",
                exponents.len(),
                coeffs.len()
            )));
        }
        let channels = exponents
            .iter()
            .zip(coeffs)
            .map(|(&r, &b)| {
                let spec = LfsrSpec::from_exponent(ctx, r)?;
                let state = spec.seed(ctx, b);
                Ok((spec, state))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(ctx, channels)
    }

    pub fn channels(&self) -> &[(LfsrSpec, LfsrState)] {
        &self.channels
    }

    /// First `length` outputs. Does not advance the stored states.
    pub fn generate(&self, length: usize) -> Result<Vec<u32>> {
        let mut out = Vec::with_capacity(length);
        self.generate_into(length, &mut out)?;
        Ok(out)
    }

    pub fn generate_into(&self, length: usize, out: &mut Vec<u32>) -> Result<()> {
        if length > self.period {
            return Err(Error::OutOfRange {
                what: "sequence length",
                value: length as u64,
                limit: self.period as u64,
            });
        }
        out.clear();
        out.resize(length, 0);
        for (spec, state) in &self.channels {
            let mut state = state.clone();
            for o in out.iter_mut() {
                *o = (*o + spec.step(&mut state)) % self.p;
            }
        }
        Ok(())
    }
}

/// Plain-text dump: a `# p m r b` header, then one residue per line.
pub fn write_sequence_dump(ctx: &FieldContext, r: u64, b: FieldElement, seq: &[u32]) -> String {
    let mut s = format!("# {} {} {} {}\n", ctx.p(), ctx.m(), r, b.index());
    for v in seq {
        writeln!(s, "{v}").unwrap();
    }
    s
}

/// Header fields (p, m, r, b) and the residues of a sequence dump.
pub fn parse_sequence_dump(text: &str) -> Result<([u64; 4], Vec<u32>)> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .and_then(|l| l.strip_prefix('#'))
        .ok_or_else(|| Error::Parse("missing '# p m r b' header".into()))?;
    let fields: Vec<u64> = header
        .split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|e| Error::Parse(format!("header field {t:?}: {e}")))
        })
        .collect::<Result<_>>()?;
    let fields: [u64; 4] = fields
        .try_into()
        .map_err(|_| Error::Parse("header needs exactly 4 fields".into()))?;
    let seq = lines
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            l.trim()
                .parse()
                .map_err(|e| Error::Parse(format!("residue {l:?}: {e}")))
        })
        .collect::<Result<_>>()?;
    Ok((fields, seq))
}
