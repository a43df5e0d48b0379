//! Dense linear algebra: LU and QR factorizations, structured solvers for
//! centrosymmetric systems, condition estimation, and matrix serialization.
//!
//! Everything is plain dense row-major storage. The only structural
//! exploitation is the centrosymmetric half-size split, and the structure is
//! always re-verified from the entries before it is used — node clouds that
//! look symmetric on paper are not always symmetric in floating point.

use std::io::{self, Read, Write};
use std::path::Path;

/// Row-major dense matrix of f64.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

/// Result of [`detect_structure`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixStructure {
    General,
    Centrosymmetric,
    SkewCentrosymmetric,
}

/// One dense system: a matrix, one or more right-hand sides, and a claim
/// about structure that is verified, never trusted, when exploited.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    pub matrix: DenseMatrix,
    pub rhs: Vec<Vec<f64>>,
    pub structure_hint: MatrixStructure,
}

#[derive(Debug, thiserror::Error)]
pub enum LinAlgError {
    #[error("matrix is numerically singular (pivot {pivot_index})")]
    Singular { pivot_index: usize },
    #[error("rank deficient: numerical rank {rank} of {cols} columns")]
    RankDeficient { rank: usize, cols: usize },
    #[error("shape mismatch: {what}")]
    Shape { what: String },
    #[error("structure check failed: {what}")]
    Structure { what: String },
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
}

/// Relative tolerance used when a caller does not pick one: node symmetry
/// that survives floating-point evaluation sits many orders below this.
pub const DEFAULT_STRUCTURE_TOL: f64 = 1e-12;

/// Pivots smaller than this times max|A| are treated as exact zeros.
const SINGULARITY_TOL: f64 = 1e-14;

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut a = DenseMatrix::zeros(n, n);
        for i in 0..n {
            a.set(i, i, 1.0);
        }
        a
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        DenseMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, LinAlgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinAlgError::Shape { what: "ragged row lengths".into() });
        }
        Ok(DenseMatrix { rows: r, cols: c, data: rows.concat() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.cols, "matrix-vector dimension mismatch");
        (0..self.rows).map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Induced 1-norm: largest absolute column sum.
    pub fn one_norm(&self) -> f64 {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.get(i, j).abs()).sum())
            .fold(0.0, f64::max)
    }

    fn first_non_finite(&self) -> Option<(usize, usize)> {
        self.data.iter().position(|v| !v.is_finite()).map(|p| (p / self.cols, p % self.cols))
    }

    /// Serialize as a 16-byte header (rows, cols as little-endian u64)
    /// followed by the row-major entries as little-endian f64.
    pub fn dump(&self, mut w: impl Write) -> io::Result<()> {
        w.write_all(&(self.rows as u64).to_le_bytes())?;
        w.write_all(&(self.cols as u64).to_le_bytes())?;
        for v in &self.data {
            w.write_all(&v.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn dump_to_path(&self, path: impl AsRef<Path>) -> io::Result<()> {
        let file = std::fs::File::create(path)?;
        self.dump(io::BufWriter::new(file))
    }

    /// Inverse of [`DenseMatrix::dump`].
    pub fn load(mut r: impl Read) -> io::Result<DenseMatrix> {
        let mut word = [0u8; 8];
        r.read_exact(&mut word)?;
        let rows = u64::from_le_bytes(word) as usize;
        r.read_exact(&mut word)?;
        let cols = u64::from_le_bytes(word) as usize;
        let count = rows
            .checked_mul(cols)
            .ok_or_else(|| io::Error::new(io::ErrorKind::InvalidData, "matrix header overflows"))?;
        let mut data = Vec::with_capacity(count);
        for _ in 0..count {
            r.read_exact(&mut word)?;
            data.push(f64::from_le_bytes(word));
        }
        Ok(DenseMatrix { rows, cols, data })
    }

    pub fn load_from_path(path: impl AsRef<Path>) -> io::Result<DenseMatrix> {
        let file = std::fs::File::open(path)?;
        DenseMatrix::load(io::BufReader::new(file))
    }
}

/// LU factors with partial pivoting. Immutable once built; solving against
/// a shared factorization from several threads is fine.
#[derive(Clone, Debug)]
pub struct LuFactorization {
    lu: DenseMatrix,
    /// Row swapped with row k at elimination step k.
    pivots: Vec<usize>,
    /// 1-norm of the original matrix, kept for condition estimation.
    one_norm: f64,
}

/// Factor a square matrix as P A = L U with partial pivoting.
pub fn lu_factor(a: &DenseMatrix) -> Result<LuFactorization, LinAlgError> {
    if a.rows != a.cols {
        return Err(LinAlgError::Shape {
            what: format!("lu_factor needs a square matrix, got {}x{}", a.rows, a.cols),
        });
    }
    if let Some((row, col)) = a.first_non_finite() {
        return Err(LinAlgError::NonFinite { row, col });
    }
    let n = a.rows;
    let one_norm = a.one_norm();
    let floor = SINGULARITY_TOL * a.max_abs();
    let mut lu = a.clone();
    let mut pivots = vec![0usize; n];

    for k in 0..n {
        // Partial pivoting: largest magnitude in column k at or below row k.
        let mut pivot_row = k;
        let mut pivot_mag = lu.get(k, k).abs();
        for i in k + 1..n {
            let mag = lu.get(i, k).abs();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = i;
            }
        }
        if pivot_mag <= floor {
            return Err(LinAlgError::Singular { pivot_index: k });
        }
        pivots[k] = pivot_row;
        if pivot_row != k {
            for j in 0..n {
                let tmp = lu.get(k, j);
                lu.set(k, j, lu.get(pivot_row, j));
                lu.set(pivot_row, j, tmp);
            }
        }
        let inv_pivot = 1.0 / lu.get(k, k);
        for i in k + 1..n {
            let factor = lu.get(i, k) * inv_pivot;
            lu.set(i, k, factor);
            if factor != 0.0 {
                // Split borrows: row k is read-only while row i is updated.
                let (above, below) = lu.data.split_at_mut((k + 1) * n);
                let row_k = &above[k * n..];
                let row_i = &mut below[(i - k - 1) * n..(i - k) * n];
                for j in k + 1..n {
                    row_i[j] -= factor * row_k[j];
                }
            }
        }
    }
    Ok(LuFactorization { lu, pivots, one_norm })
}

impl LuFactorization {
    pub fn dim(&self) -> usize {
        self.lu.rows
    }

    /// Solve A x = b.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>, LinAlgError> {
        let n = self.dim();
        if b.len() != n {
            return Err(LinAlgError::Shape {
                what: format!("rhs length {} against dimension {n}", b.len()),
            });
        }
        let mut x = b.to_vec();
        // Apply P, then L^{-1} (unit lower), then U^{-1}.
        for k in 0..n {
            x.swap(k, self.pivots[k]);
        }
        for i in 1..n {
            let row = self.lu.row(i);
            let dot: f64 = row[..i].iter().zip(&x[..i]).map(|(a, b)| a * b).sum();
            x[i] -= dot;
        }
        for i in (0..n).rev() {
            let row = self.lu.row(i);
            let dot: f64 = row[i + 1..].iter().zip(&x[i + 1..]).map(|(a, b)| a * b).sum();
            x[i] = (x[i] - dot) / row[i];
        }
        Ok(x)
    }

    /// Solve A^T x = b (needed by the 1-norm condition estimator).
    pub fn solve_transpose(&self, b: &[f64]) -> Result<Vec<f64>, LinAlgError> {
        let n = self.dim();
        if b.len() != n {
            return Err(LinAlgError::Shape {
                what: format!("rhs length {} against dimension {n}", b.len()),
            });
        }
        // P A = L U gives A^T x = U^T L^T P x = b: forward-substitute U^T,
        // back-substitute L^T, then undo the permutation.
        let mut x = b.to_vec();
        for i in 0..n {
            let dot: f64 = x[..i].iter().enumerate().map(|(j, xj)| self.lu.get(j, i) * xj).sum();
            x[i] = (x[i] - dot) / self.lu.get(i, i);
        }
        for i in (0..n).rev() {
            let dot: f64 = x[i + 1..]
                .iter()
                .enumerate()
                .map(|(off, xj)| self.lu.get(i + 1 + off, i) * xj)
                .sum();
            x[i] -= dot;
        }
        for k in (0..n).rev() {
            x.swap(k, self.pivots[k]);
        }
        Ok(x)
    }
}

/// Least-squares minimizer of |A x - b| for M x N systems with M >= N,
/// via Householder QR (never the normal equations, whose conditioning is
/// the square of the matrix's).
pub fn least_squares_solve(a: &DenseMatrix, b: &[f64]) -> Result<Vec<f64>, LinAlgError> {
    let (m, n) = (a.rows, a.cols);
    if m < n {
        return Err(LinAlgError::Shape {
            what: format!("least squares needs rows >= cols, got {m}x{n}"),
        });
    }
    if b.len() != m {
        return Err(LinAlgError::Shape {
            what: format!("rhs length {} against {m} rows", b.len()),
        });
    }
    if let Some((row, col)) = a.first_non_finite() {
        return Err(LinAlgError::NonFinite { row, col });
    }
    let mut r = a.clone();
    let mut y = b.to_vec();

    // Householder triangularization, applying each reflection to y as well.
    for k in 0..n {
        let mut norm2 = 0.0;
        for i in k..m {
            let v = r.get(i, k);
            norm2 += v * v;
        }
        let norm = norm2.sqrt();
        if norm == 0.0 {
            continue; // column already zero below and at the diagonal
        }
        let alpha = if r.get(k, k) >= 0.0 { -norm } else { norm };
        // v = x - alpha e_k, normalized so v_k carries the head.
        let head = r.get(k, k) - alpha;
        let mut v = vec![0.0; m - k];
        v[0] = head;
        for i in k + 1..m {
            v[i - k] = r.get(i, k);
        }
        let vtv = head * head + norm2 - r.get(k, k) * r.get(k, k);
        if vtv == 0.0 {
            continue;
        }
        let beta = 2.0 / vtv;
        for j in k..n {
            let dot: f64 = (k..m).map(|i| v[i - k] * r.get(i, j)).sum();
            let s = beta * dot;
            for i in k..m {
                let val = r.get(i, j) - s * v[i - k];
                r.set(i, j, val);
            }
        }
        let dot: f64 = (k..m).map(|i| v[i - k] * y[i]).sum();
        let s = beta * dot;
        for (i, vi) in v.iter().enumerate() {
            y[k + i] -= s * vi;
        }
    }

    // Rank check on the R diagonal before back substitution.
    let diag_max = (0..n).map(|k| r.get(k, k).abs()).fold(0.0, f64::max);
    let threshold = DEFAULT_STRUCTURE_TOL * diag_max;
    let rank = (0..n).filter(|&k| r.get(k, k).abs() > threshold).count();
    if rank < n {
        return Err(LinAlgError::RankDeficient { rank, cols: n });
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let row = r.row(i);
        let dot: f64 = row[i + 1..n].iter().zip(&x[i + 1..]).map(|(a, b)| a * b).sum();
        x[i] = (y[i] - dot) / row[i];
    }
    Ok(x)
}

/// Classify a square matrix by comparing each entry against its
/// exchange-conjugate partner, within `tol` times max|A|. Matrices passing
/// both tests (only possible when every paired entry vanishes) report as
/// centrosymmetric.
pub fn detect_structure(a: &DenseMatrix, tol: f64) -> MatrixStructure {
    assert_eq!(a.rows, a.cols, "structure detection needs a square matrix");
    let n = a.rows;
    let bound = tol * a.max_abs();
    let mut centro = true;
    let mut skew = true;
    for i in 0..n {
        for j in 0..n {
            let v = a.get(i, j);
            let w = a.get(n - 1 - i, n - 1 - j);
            if (v - w).abs() > bound {
                centro = false;
            }
            if (v + w).abs() > bound {
                skew = false;
            }
            if !centro && !skew {
                return MatrixStructure::General;
            }
        }
    }
    if centro {
        MatrixStructure::Centrosymmetric
    } else {
        MatrixStructure::SkewCentrosymmetric
    }
}

/// Solve a verified centrosymmetric system through the half-size split.
///
/// With J the exchange matrix and the blocks A = [[B, C], [JCJ, JBJ]]
/// (which is what centrosymmetry means), the combinations u = x1 + J x2 and
/// v = x1 - J x2 satisfy the independent systems (B + CJ) u = b1 + J b2 and
/// (B - CJ) v = b1 - J b2. Odd sizes keep the center row and column with
/// the symmetric half as a border.
pub fn centrosymmetric_solve(a: &DenseMatrix, b: &[f64]) -> Result<Vec<f64>, LinAlgError> {
    if a.rows != a.cols {
        return Err(LinAlgError::Shape {
            what: format!("structured solve needs a square matrix, got {}x{}", a.rows, a.cols),
        });
    }
    if b.len() != a.rows {
        return Err(LinAlgError::Shape {
            what: format!("rhs length {} against dimension {}", b.len(), a.rows),
        });
    }
    if detect_structure(a, DEFAULT_STRUCTURE_TOL) != MatrixStructure::Centrosymmetric {
        return Err(LinAlgError::Structure {
            what: "matrix is not centrosymmetric within tolerance".into(),
        });
    }
    let n = a.rows;
    let m = n / 2;
    let odd = n % 2 == 1;
    let center = m; // valid only when odd

    // Sum system: (B + CJ) u [+ 2p u_c] = b1 + J b2, bordered by the center
    // row q^T u + s u_c = b_c when n is odd.
    let sum_dim = m + usize::from(odd);
    let sum_matrix = DenseMatrix::from_fn(sum_dim, sum_dim, |i, j| match (i < m, j < m) {
        (true, true) => a.get(i, j) + a.get(i, n - 1 - j),
        (true, false) => 2.0 * a.get(i, center),
        (false, true) => a.get(center, j),
        (false, false) => a.get(center, center),
    });
    let mut sum_rhs = vec![0.0; sum_dim];
    for i in 0..m {
        sum_rhs[i] = b[i] + b[n - 1 - i];
    }
    if odd {
        sum_rhs[m] = b[center];
    }

    // Difference system: (B - CJ) v = b1 - J b2; the center decouples.
    let diff_matrix = DenseMatrix::from_fn(m, m, |i, j| a.get(i, j) - a.get(i, n - 1 - j));
    let diff_rhs: Vec<f64> = (0..m).map(|i| b[i] - b[n - 1 - i]).collect();

    let u = lu_factor(&sum_matrix)?.solve(&sum_rhs)?;
    let v = if m > 0 { lu_factor(&diff_matrix)?.solve(&diff_rhs)? } else { Vec::new() };

    let mut x = vec![0.0; n];
    for i in 0..m {
        x[i] = 0.5 * (u[i] + v[i]);
        x[n - 1 - i] = 0.5 * (u[i] - v[i]);
    }
    if odd {
        x[center] = u[m];
    }
    Ok(x)
}

/// 1-norm condition estimate |A|_1 |A^{-1}|_1, the inverse-norm factor by
/// Hager's method (a few solves against the factorization and its
/// transpose). Order-of-magnitude accurate, never an expensive exact norm.
pub fn condition_estimate(f: &LuFactorization) -> f64 {
    let n = f.dim();
    if n == 0 {
        return 1.0;
    }
    let mut x = vec![1.0 / n as f64; n];
    let mut estimate = 0.0;
    for _ in 0..5 {
        let y = match f.solve(&x) {
            Ok(y) => y,
            Err(_) => return f64::INFINITY,
        };
        estimate = y.iter().map(|v| v.abs()).sum();
        let xi: Vec<f64> = y.iter().map(|v| if *v >= 0.0 { 1.0 } else { -1.0 }).collect();
        let z = match f.solve_transpose(&xi) {
            Ok(z) => z,
            Err(_) => return f64::INFINITY,
        };
        let (mut best, mut best_mag) = (0, 0.0);
        for (j, v) in z.iter().enumerate() {
            if v.abs() > best_mag {
                best_mag = v.abs();
                best = j;
            }
        }
        let zx: f64 = z.iter().zip(&x).map(|(p, q)| p * q).sum();
        if best_mag <= zx {
            break;
        }
        x.iter_mut().for_each(|v| *v = 0.0);
        x[best] = 1.0;
    }
    f.one_norm * estimate
}

impl LinearSystem {
    /// Solve for every right-hand side, routing through the structured path
    /// when the (verified) hint allows it.
    pub fn solve(&self) -> Result<Vec<Vec<f64>>, LinAlgError> {
        match self.structure_hint {
            MatrixStructure::Centrosymmetric => {
                self.rhs.iter().map(|b| centrosymmetric_solve(&self.matrix, b)).collect()
            }
            _ => {
                let f = lu_factor(&self.matrix)?;
                self.rhs.iter().map(|b| f.solve(b)).collect()
            }
        }
    }
}
