use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use super::{FieldContext, FieldElement};

/// exp(2πj·t/p), with t reduced into [0, p) before the angle is formed so
/// that equal phases give bit-identical values.
pub fn root_of_unity(t: u64, p: u32) -> Complex64 {
    let t = t % p as u64;
    Complex64::from_polar(1.0, 2.0 * PI * t as f64 / p as f64)
}

/// Σ_c counts[c]·ω_p^c, summed in increasing c.
pub fn phase_sum(counts: &[u64], p: u32) -> Complex64 {
    counts
        .iter()
        .enumerate()
        .fold(Complex64::new(0.0, 0.0), |acc, (c, &n)| {
            acc + root_of_unity(c as u64, p) * n as f64
        })
}

/// The canonical additive character χ(x) = ω_p^Tr(x).
pub fn character(ctx: &FieldContext, x: FieldElement) -> Complex64 {
    root_of_unity(ctx.trace(x) as u64, ctx.p())
}

/// f(x) for a sparse polynomial given as exponent -> coefficient.
pub fn eval_poly(
    ctx: &FieldContext,
    f: &BTreeMap<u64, FieldElement>,
    x: FieldElement,
) -> FieldElement {
    f.iter().fold(FieldElement::ZERO, |acc, (&e, &c)| {
        ctx.add(acc, ctx.mul(c, ctx.pow(x, e)))
    })
}

/// Σ_{x ∈ GF(p^m)} χ(f(x)) by direct summation over every element.
///
/// Phases are tallied as integers first, so the result is exact up to the
/// final p-term complex sum.
pub fn character_sum(ctx: &FieldContext, f: &BTreeMap<u64, FieldElement>) -> Complex64 {
    let mut counts = vec![0u64; ctx.p() as usize];
    for x in ctx.elements() {
        counts[ctx.trace(eval_poly(ctx, f, x)) as usize] += 1;
    }
    phase_sum(&counts, ctx.p())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::PrimePoly;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn linear_sum_vanishes_and_constant_sum_is_field_order() {
        let ctx = FieldContext::new(3, 4, PrimePoly::parse(3, "2,0,0,1,1").ok()).unwrap();
        let linear = BTreeMap::from([(1u64, FieldElement::ONE)]);
        assert!(character_sum(&ctx, &linear).norm() < 1e-12);
        let zero = BTreeMap::new();
        assert!((character_sum(&ctx, &zero) - Complex64::new(81.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn quadratic_gauss_sum_magnitude() {
        let ctx = FieldContext::new(3, 2, PrimePoly::parse(3, "2,1,1").ok()).unwrap();
        let sq = BTreeMap::from([(2u64, FieldElement::ONE)]);
        // brute force: Σ ω^Tr(x^2) written out term by term
        let brute: Complex64 = ctx
            .elements()
            .map(|x| root_of_unity(ctx.trace_via_frobenius(ctx.mul(x, x)) as u64, 3))
            .sum();
        let s = character_sum(&ctx, &sq);
        assert!((s - brute).norm() < 1e-12);
        assert!((s.norm() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn weil_bound_over_random_polynomials() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, m) in [(3u32, 2u32), (5, 2), (3, 3)] {
            let ctx = FieldContext::new(p, m, None).unwrap();
            let q = ctx.order() as u64;
            let bound_root = (q as f64).sqrt();
            let mut tested = 0;
            while tested < 300 {
                let r = rng.gen_range(1..=8u64);
                if gcd(r, q) != 1 {
                    continue;
                }
                let mut f = BTreeMap::new();
                for e in 0..r {
                    let c = FieldElement(rng.gen_range(0..ctx.order()));
                    if !c.is_zero() {
                        f.insert(e, c);
                    }
                }
                f.insert(r, FieldElement(rng.gen_range(1..ctx.order())));
                let s = character_sum(&ctx, &f).norm();
                assert!(
                    s <= (r - 1) as f64 * bound_root + 1e-9,
                    "p={p} m={m} r={r} |S|={s}"
                );
                tested += 1;
            }
        }
    }
}
