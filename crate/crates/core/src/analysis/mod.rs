//! Computational checks of the matrix properties: coherence against the
//! Welch and Weil values, the sparsity guarantee, tightness of the frame,
//! and Monte-Carlo statistics of Gram spectra.

mod bounds;
mod coherence;
mod frame;
mod spectra;

pub use bounds::{sparsity_bound, sparsity_bound_for, welch_bound, SparsityBound};
pub use coherence::{coherence, coherence_dense, CoherenceReport};
pub use frame::{frame_test, FrameReport};
pub(crate) use spectra::family_tag;
pub use spectra::{
    compare_with_gaussian, condition_number, condition_stats, gram_eigenvalues, gram_spectrum,
    GramSpectrum, SpectralStats, SINGULAR_EIGENVALUE,
};

/// Pairwise (cascade) summation; result depends only on the input order.
pub(crate) fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 16 {
        xs.iter().sum()
    } else {
        let (a, b) = xs.split_at(xs.len() / 2);
        pairwise_sum(a) + pairwise_sum(b)
    }
}
