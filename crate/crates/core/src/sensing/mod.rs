//! Sensing matrices: the additive character construction and the Gaussian
//! and partial Fourier comparison ensembles.
//!
//! All storage is column-major since coherence scans and matching pursuit
//! both walk columns. Additive character matrices store one phase exponent
//! per entry (entries are ω_p^t/√K), or, past [`DENSE_ENTRY_CAP`] entries,
//! regenerate columns on demand.

mod construction;
mod export;
mod random;

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

pub use construction::{
    coefficients_from_index, compose_index, decompose_index, ColumnSpec, Construction,
    ConstructionSpec,
};
pub use export::{read_matrix, write_matrix, write_matrix_csv, MatrixFile};
pub use random::{gaussian_entries, gaussian_matrix, partial_fourier};

use crate::galois::FieldContext;
use crate::linalg::CMatrix;
use crate::{Error, Result};

/// Matrices with more entries than this are generated lazily by default.
pub const DENSE_ENTRY_CAP: usize = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MatrixKind {
    AdditiveCharacter,
    Gaussian,
    PartialFourier,
}

impl MatrixKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MatrixKind::AdditiveCharacter => "additive-character",
            MatrixKind::Gaussian => "gaussian",
            MatrixKind::PartialFourier => "partial-fourier",
        }
    }
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for MatrixKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "additive-character" => Ok(MatrixKind::AdditiveCharacter),
            "gaussian" => Ok(MatrixKind::Gaussian),
            "partial-fourier" => Ok(MatrixKind::PartialFourier),
            _ => Err(Error::Parse(format!("unknown matrix kind {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Layout {
    /// Phase storage up to [`DENSE_ENTRY_CAP`] entries, lazy beyond.
    #[default]
    Auto,
    Dense,
    Lazy,
}

#[derive(Clone, Debug)]
enum Storage {
    Phases {
        construction: Arc<Construction>,
        phases: Vec<u16>,
        packing: Packing,
        codes: Vec<u16>,
    },
    Lazy {
        construction: Arc<Construction>,
    },
    Dense {
        data: Vec<Complex64>,
    },
}

/// A K×N complex sensing matrix with unit-norm columns.
#[derive(Clone, Debug)]
pub struct SensingMatrix {
    rows: usize,
    cols: usize,
    kind: MatrixKind,
    storage: Storage,
}

/// Builds the additive character matrix of `spec` over `field`.
pub fn build_matrix(spec: &ConstructionSpec, field: &FieldContext) -> Result<SensingMatrix> {
    build_matrix_with_layout(spec, field, Layout::Auto)
}

pub fn build_matrix_with_layout(
    spec: &ConstructionSpec,
    field: &FieldContext,
    layout: Layout,
) -> Result<SensingMatrix> {
    let construction = Arc::new(Construction::new(spec.clone(), Arc::new(field.clone()))?);
    let rows = spec.rows() as usize;
    let cols = usize::try_from(spec.cols()).map_err(|_| {
        Error::InvalidConstruction(format!(
            "N = {} does not fit in memory indices",
            spec.cols()
        ))
    })?;
    let entries = rows.checked_mul(cols);
    let dense = match layout {
        Layout::Dense => true,
        Layout::Lazy => false,
        Layout::Auto => entries.is_some_and(|e| e <= DENSE_ENTRY_CAP),
    };
    let storage = if dense {
        let entries = entries.ok_or_else(|| {
            Error::InvalidConstruction("matrix too large for dense storage".into())
        })?;
        let mut phases = vec![0u16; entries];
        for (n, chunk) in phases.chunks_mut(rows).enumerate() {
            construction.column_phases(n as u64, chunk)?;
        }
        let packing = Packing::new(spec.p() as usize, rows);
        let codes = packing.pack(&phases);
        Storage::Phases {
            construction,
            phases,
            packing,
            codes,
        }
    } else {
        Storage::Lazy { construction }
    };
    Ok(SensingMatrix {
        rows,
        cols,
        kind: MatrixKind::AdditiveCharacter,
        storage,
    })
}

/// The K×K² matrix with exponents (1, 2) over the default field GF(p^m).
pub fn construction_1a(p: u32, m: u32) -> Result<SensingMatrix> {
    let spec = ConstructionSpec::construction_1a(p, m)?;
    let field = FieldContext::new(p, m, None)?;
    build_matrix(&spec, &field)
}

impl SensingMatrix {
    /// Wraps a dense column-major matrix. Columns must already be unit norm.
    pub fn from_dense(kind: MatrixKind, m: CMatrix) -> Self {
        let (rows, cols) = (m.rows(), m.cols());
        let data = (0..cols).flat_map(|j| m.column(j).to_vec()).collect();
        Self {
            rows,
            cols,
            kind,
            storage: Storage::Dense { data },
        }
    }

    pub(crate) fn dense_raw(
        kind: MatrixKind,
        rows: usize,
        cols: usize,
        data: Vec<Complex64>,
    ) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Self {
            rows,
            cols,
            kind,
            storage: Storage::Dense { data },
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    pub fn is_lazy(&self) -> bool {
        matches!(self.storage, Storage::Lazy { .. })
    }

    pub fn construction(&self) -> Option<&Construction> {
        match &self.storage {
            Storage::Phases { construction, .. } | Storage::Lazy { construction } => {
                Some(construction)
            }
            Storage::Dense { .. } => None,
        }
    }

    /// Prime p of the phase alphabet, for additive character matrices.
    pub fn phase_modulus(&self) -> Option<u32> {
        self.construction().map(|c| c.spec().p())
    }

    /// Phase exponents of column n into `out` (additive character only).
    pub fn column_phases_into(&self, n: usize, out: &mut [u16]) -> bool {
        match &self.storage {
            Storage::Phases { phases, .. } => {
                out.copy_from_slice(&phases[n * self.rows..(n + 1) * self.rows]);
                true
            }
            Storage::Lazy { construction } => {
                construction
                    .column_phases(n as u64, out)
                    .expect("column index in range");
                true
            }
            Storage::Dense { .. } => false,
        }
    }

    /// Borrowed view of the stored phases, when phase storage is dense.
    pub fn stored_phases(&self) -> Option<&[u16]> {
        match &self.storage {
            Storage::Phases { phases, .. } => Some(phases),
            _ => None,
        }
    }

    pub fn column_into(&self, n: usize, out: &mut [Complex64]) {
        assert!(n < self.cols, "column {n} out of range");
        match &self.storage {
            Storage::Dense { data } => {
                out.copy_from_slice(&data[n * self.rows..(n + 1) * self.rows])
            }
            Storage::Phases {
                construction,
                phases,
                ..
            } => {
                let a = construction.alphabet();
                for (o, &t) in out
                    .iter_mut()
                    .zip(&phases[n * self.rows..(n + 1) * self.rows])
                {
                    *o = a[t as usize];
                }
            }
            Storage::Lazy { construction } => {
                let mut t = vec![0u16; self.rows];
                construction
                    .column_phases(n as u64, &mut t)
                    .expect("column index in range");
                let a = construction.alphabet();
                for (o, &t) in out.iter_mut().zip(&t) {
                    *o = a[t as usize];
                }
            }
        }
    }

    pub fn column(&self, n: usize) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.rows];
        self.column_into(n, &mut out);
        out
    }

    pub fn entry(&self, k: usize, n: usize) -> Complex64 {
        match &self.storage {
            Storage::Dense { data } => data[n * self.rows + k],
            Storage::Phases {
                construction,
                phases,
                ..
            } => construction.alphabet()[phases[n * self.rows + k] as usize],
            Storage::Lazy { .. } => self.column(n)[k],
        }
    }

    /// K×s matrix of the selected columns.
    pub fn select_columns(&self, cols: &[usize]) -> CMatrix {
        let mut data = vec![Complex64::new(0.0, 0.0); self.rows * cols.len()];
        for (chunk, &n) in data.chunks_mut(self.rows).zip(cols) {
            self.column_into(n, chunk);
        }
        CMatrix::from_col_major(self.rows, cols.len(), data)
    }

    pub fn to_dense(&self) -> CMatrix {
        let all: Vec<usize> = (0..self.cols).collect();
        self.select_columns(&all)
    }

    /// out = A^H r.
    pub fn adjoint_apply(&self, r: &[Complex64], out: &mut [Complex64]) {
        assert_eq!(r.len(), self.rows);
        assert_eq!(out.len(), self.cols);
        let k = self.rows;
        match &self.storage {
            Storage::Dense { data } => {
                for (o, col) in out.iter_mut().zip(data.chunks_exact(k)) {
                    *o = col.iter().zip(r).map(|(a, x)| a.conj() * x).sum();
                }
            }
            Storage::Phases {
                construction,
                packing,
                codes,
                ..
            } => {
                let lut = packing.lut(construction.alphabet(), r);
                for (o, col) in out.iter_mut().zip(codes.chunks_exact(packing.groups())) {
                    *o = packing.column_sum(&lut, col);
                }
            }
            Storage::Lazy { construction } => {
                let packing = Packing::new(construction.spec().p() as usize, k);
                let lut = packing.lut(construction.alphabet(), r);
                let mut t = vec![0u16; k];
                let mut c = vec![0u16; packing.groups()];
                for (n, o) in out.iter_mut().enumerate() {
                    construction
                        .column_phases(n as u64, &mut t)
                        .expect("column index in range");
                    packing.pack_column(&t, &mut c);
                    *o = packing.column_sum(&lut, &c);
                }
            }
        }
    }

    /// r += c·a_n.
    pub fn add_scaled_column(&self, n: usize, c: Complex64, r: &mut [Complex64]) {
        match &self.storage {
            Storage::Dense { data } => {
                for (x, a) in r.iter_mut().zip(&data[n * self.rows..(n + 1) * self.rows]) {
                    *x += c * a;
                }
            }
            _ => {
                let col = self.column(n);
                for (x, a) in r.iter_mut().zip(&col) {
                    *x += c * a;
                }
            }
        }
    }

    /// y = A x for a dense coefficient vector.
    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.cols);
        let mut y = vec![Complex64::new(0.0, 0.0); self.rows];
        for (n, &c) in x.iter().enumerate() {
            if c != Complex64::new(0.0, 0.0) {
                self.add_scaled_column(n, c, &mut y);
            }
        }
        y
    }
}

/// Phase exponents of consecutive rows grouped into base-p codes so one
/// table lookup covers `group` rows of a correlation.
#[derive(Clone, Debug)]
struct Packing {
    rows: usize,
    group: usize,
    radix: usize,
    p: usize,
}

const PACKED_TABLE_LIMIT: usize = 128;

impl Packing {
    fn new(p: usize, rows: usize) -> Self {
        let mut group = 1;
        while p.pow(group as u32 + 1) <= PACKED_TABLE_LIMIT {
            group += 1;
        }
        Self {
            rows,
            group,
            radix: p.pow(group as u32),
            p,
        }
    }

    fn groups(&self) -> usize {
        self.rows.div_ceil(self.group)
    }

    /// code = Σ t_i p^i over the rows of a group.
    fn pack_column(&self, phases: &[u16], codes: &mut [u16]) {
        for (c, g) in codes.iter_mut().zip(phases.chunks(self.group)) {
            *c = g
                .iter()
                .rev()
                .fold(0usize, |acc, &t| acc * self.p + t as usize) as u16;
        }
    }

    fn pack(&self, phases: &[u16]) -> Vec<u16> {
        let groups = self.groups();
        let mut codes = vec![0u16; groups * (phases.len() / self.rows)];
        for (col, out) in phases
            .chunks_exact(self.rows)
            .zip(codes.chunks_exact_mut(groups))
        {
            self.pack_column(col, out);
        }
        codes
    }

    // lut[j*radix + code] = Σ_i conj(alphabet[t_i])·r[j*group + i]
    fn lut(&self, alphabet: &[Complex64], r: &[Complex64]) -> Vec<Complex64> {
        let mut lut = vec![Complex64::new(0.0, 0.0); self.groups() * self.radix];
        let mut next = Vec::with_capacity(self.radix);
        for (j, rows) in r.chunks(self.group).enumerate() {
            let mut tbl = vec![Complex64::new(0.0, 0.0)];
            for &x in rows.iter().rev() {
                next.clear();
                for &rest in &tbl {
                    for w in alphabet {
                        next.push(w.conj() * x + rest);
                    }
                }
                std::mem::swap(&mut tbl, &mut next);
            }
            lut[j * self.radix..j * self.radix + tbl.len()].copy_from_slice(&tbl);
        }
        lut
    }

    #[inline]
    fn column_sum(&self, lut: &[Complex64], codes: &[u16]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (tbl, &c) in lut.chunks_exact(self.radix).zip(codes) {
            acc += tbl[c as usize];
        }
        acc
    }
}
