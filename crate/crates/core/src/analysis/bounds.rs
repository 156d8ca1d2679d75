use crate::sensing::ConstructionSpec;
use crate::{Error, Result};

/// √((N−K)/(K(N−1))), the lower bound on the coherence of any K×N frame.
pub fn welch_bound(k: u64, n: u64) -> Result<f64> {
    if k == 0 || n <= k {
        return Err(Error::Precondition(format!(
            "Welch bound needs N > K >= 1 (K={k}, N={n})"
        )));
    }
    let (k, n) = (k as f64, n as f64);
    Ok(((n - k) / (k * (n - 1.0))).sqrt())
}

/// Coherence-based sparsity guarantee s < ½(√K/(d−1) + 1).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SparsityBound {
    pub bound: f64,
    /// Largest s satisfying the strict inequality.
    pub guaranteed: u64,
}

pub fn sparsity_bound_for(k: u64, d: u64) -> SparsityBound {
    assert!(d >= 2, "sparsity bound needs d >= 2");
    let bound = 0.5 * ((k as f64).sqrt() / (d - 1) as f64 + 1.0);
    let nearest = bound.round();
    let guaranteed = if (bound - nearest).abs() < 1e-9 {
        nearest - 1.0
    } else {
        bound.floor()
    };
    SparsityBound {
        bound,
        guaranteed: guaranteed.max(0.0) as u64,
    }
}

pub fn sparsity_bound(spec: &ConstructionSpec) -> SparsityBound {
    sparsity_bound_for(spec.rows(), spec.d())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn welch_values() {
        let w = welch_bound(81, 6561).unwrap();
        assert!((w - 0.110432).abs() < 1e-6, "{w}");
        assert!((w - (6480.0f64 / (81.0 * 6560.0)).sqrt()).abs() < 1e-15);
        assert!((welch_bound(9, 10).unwrap() - 1.0 / 9.0).abs() < 1e-15);
        assert!(welch_bound(9, 9).is_err());
        assert!(welch_bound(0, 9).is_err());
    }

    #[test]
    fn sparsity_thresholds() {
        let s = sparsity_bound(&ConstructionSpec::construction_1a(3, 4).unwrap());
        assert_eq!((s.bound, s.guaranteed), (5.0, 4));
        let s = sparsity_bound(&ConstructionSpec::construction_1a(7, 2).unwrap());
        assert_eq!((s.bound, s.guaranteed), (4.0, 3));
        let s = sparsity_bound_for(27, 2);
        assert!((s.bound - 0.5 * (27f64.sqrt() + 1.0)).abs() < 1e-15);
        assert_eq!(s.guaranteed, 3);
        let s = sparsity_bound_for(81, 3);
        assert_eq!((s.bound, s.guaranteed), (2.75, 2));
    }
}
