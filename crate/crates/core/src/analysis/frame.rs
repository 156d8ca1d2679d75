use num_complex::Complex64;

use crate::sensing::SensingMatrix;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrameReport {
    /// N/K, the redundancy of a tight frame.
    pub redundancy: f64,
    /// max |(A A^H)_{ij} − (N/K) δ_ij|.
    pub max_deviation: f64,
    /// Largest off-diagonal magnitude of A A^H.
    pub max_offdiag: f64,
}

/// Compares the row Gram matrix A·A^H with (N/K)·I.
pub fn frame_test(m: &SensingMatrix) -> FrameReport {
    let k = m.rows();
    let mut gram = vec![Complex64::new(0.0, 0.0); k * k];
    let mut col = vec![Complex64::new(0.0, 0.0); k];
    for n in 0..m.cols() {
        m.column_into(n, &mut col);
        for i in 0..k {
            let ai = col[i];
            for j in i..k {
                gram[i * k + j] += ai * col[j].conj();
            }
        }
    }
    let redundancy = m.cols() as f64 / k as f64;
    let mut max_deviation = 0.0f64;
    let mut max_offdiag = 0.0f64;
    for i in 0..k {
        for j in i..k {
            let g = gram[i * k + j];
            if i == j {
                max_deviation = max_deviation.max((g - redundancy).norm());
            } else {
                max_deviation = max_deviation.max(g.norm());
                max_offdiag = max_offdiag.max(g.norm());
            }
        }
    }
    FrameReport {
        redundancy,
        max_deviation,
        max_offdiag,
    }
}
