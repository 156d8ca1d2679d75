//! Small dense complex matrices and a cyclic Jacobi eigensolver for
//! Hermitian matrices.

use num_complex::Complex64;

use crate::{Error, Result};

/// Off-diagonal Frobenius norm at which Jacobi sweeps stop.
pub const JACOBI_TOLERANCE: f64 = 1e-10;
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Dense complex matrix, column-major.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn from_columns(rows: usize, columns: &[Vec<Complex64>]) -> Self {
        let mut data = Vec::with_capacity(rows * columns.len());
        for c in columns {
            assert_eq!(c.len(), rows, "ragged columns");
            data.extend_from_slice(c);
        }
        Self {
            rows,
            cols: columns.len(),
            data,
        }
    }

    pub fn from_col_major(rows: usize, cols: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[j * self.rows + i]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[j * self.rows + i] = v;
    }

    pub fn column(&self, j: usize) -> &[Complex64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    /// A^H A.
    pub fn gram(&self) -> CMatrix {
        let s = self.cols;
        let mut g = CMatrix::zeros(s, s);
        for i in 0..s {
            for j in i..s {
                let v = inner(self.column(i), self.column(j));
                g.set(i, j, v);
                g.set(j, i, v.conj());
            }
        }
        g
    }
}

/// Hermitian inner product Σ conj(a_k)·b_k.
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm_sqr(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.rows;
    let mut acc = 0.0;
    for j in 0..n {
        for i in 0..n {
            if i != j {
                acc += a.get(i, j).norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Eigenvalues of a Hermitian matrix in ascending order, by cyclic Jacobi
/// rotations. Each rotation first rotates the phase of a_pq to make it real
/// and then applies the classical real plane rotation that zeroes it.
pub fn hermitian_eigenvalues(a: &CMatrix) -> Result<Vec<f64>> {
    assert_eq!(a.rows, a.cols, "eigenvalues of a non-square matrix");
    let n = a.rows;
    let mut a = a.clone();
    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off < JACOBI_TOLERANCE {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, p, q);
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}

fn rotate(a: &mut CMatrix, p: usize, q: usize) {
    let apq = a.get(p, q);
    let b = apq.norm();
    if b < 1e-300 {
        return;
    }
    let phase = apq / b;
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    let tau = (aqq - app) / (2.0 * b);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    // U = diag(1, conj(phase)) · [[c, s], [-s, c]]
    let u_pp = Complex64::new(c, 0.0);
    let u_pq = Complex64::new(s, 0.0);
    let u_qp = -phase.conj() * s;
    let u_qq = phase.conj() * c;
    let n = a.rows;
    for r in 0..n {
        let x = a.get(r, p);
        let y = a.get(r, q);
        a.set(r, p, x * u_pp + y * u_qp);
        a.set(r, q, x * u_pq + y * u_qq);
    }
    for r in 0..n {
        let x = a.get(p, r);
        let y = a.get(q, r);
        a.set(p, r, u_pp.conj() * x + u_qp.conj() * y);
        a.set(q, r, u_pq.conj() * x + u_qq.conj() * y);
    }
    a.set(p, q, Complex64::new(0.0, 0.0));
    a.set(q, p, Complex64::new(0.0, 0.0));
    a.set(p, p, Complex64::new(a.get(p, p).re, 0.0));
    a.set(q, q, Complex64::new(a.get(q, q).re, 0.0));
}
