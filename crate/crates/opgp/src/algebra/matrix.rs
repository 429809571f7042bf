use std::fmt;
use std::ops::Mul;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::OrePoly;
use super::ring::RingSpec;
use crate::Rational;

/// Rectangular matrix over an operator ring, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct OperatorMatrix {
    ring: RingSpec,
    rows: usize,
    cols: usize,
    entries: Vec<OrePoly>,
}

impl OperatorMatrix {
    pub fn new(ring: &RingSpec, rows: usize, cols: usize, entries: Vec<OrePoly>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry grid does not match dimensions");
        for e in &entries {
            assert!(e.ring() == ring, "all entries must share the matrix ring");
        }
        OperatorMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries,
        }
    }

    pub fn zero(ring: &RingSpec, rows: usize, cols: usize) -> Self {
        OperatorMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries: vec![OrePoly::zero(ring); rows * cols],
        }
    }

    pub fn identity(ring: &RingSpec, n: usize) -> Self {
        let mut m = Self::zero(ring, n, n);
        for i in 0..n {
            *m.entry_mut(i, i) = OrePoly::one(ring);
        }
        m
    }

    /// Build from rows of polynomials.
    pub fn from_rows(ring: &RingSpec, rows: Vec<Vec<OrePoly>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        for r in &rows {
            assert_eq!(r.len(), ncols, "ragged rows");
        }
        Self::new(ring, nrows, ncols, rows.into_iter().flatten().collect())
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &OrePoly {
        &self.entries[i * self.cols + j]
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut OrePoly {
        &mut self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> Vec<OrePoly> {
        (0..self.cols).map(|j| self.entry(i, j).clone()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<OrePoly> {
        (0..self.rows).map(|i| self.entry(i, j).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<OrePoly>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Plain transpose (no involution on the entries).
    pub fn transpose(&self) -> OperatorMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.entry(i, j).clone());
            }
        }
        OperatorMatrix::new(&self.ring, self.cols, self.rows, entries)
    }

    /// The involution θ applied entrywise followed by a transpose. θ fixes
    /// base variables, sends ∂ᵢ to −∂ᵢ and reverses products, so
    /// `involution(M·N) = involution(N)·involution(M)` and the map is
    /// self-inverse.
    pub fn involution(&self) -> OperatorMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.entry(i, j).involution());
            }
        }
        OperatorMatrix::new(&self.ring, self.cols, self.rows, entries)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hconcat(&self, other: &OperatorMatrix) -> OperatorMatrix {
        assert!(self.ring == other.ring, "ring mismatch");
        assert_eq!(self.rows, other.rows, "row count mismatch");
        let mut entries = Vec::with_capacity((self.cols + other.cols) * self.rows);
        for i in 0..self.rows {
            entries.extend(self.row(i));
            entries.extend(other.row(i));
        }
        OperatorMatrix::new(&self.ring, self.rows, self.cols + other.cols, entries)
    }

    /// Vertical concatenation.
    pub fn vconcat(&self, other: &OperatorMatrix) -> OperatorMatrix {
        assert!(self.ring == other.ring, "ring mismatch");
        assert_eq!(self.cols, other.cols, "column count mismatch");
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        OperatorMatrix::new(&self.ring, self.rows + other.rows, self.cols, entries)
    }

    /// Rows `lo..hi` as a new matrix.
    pub fn row_slice(&self, lo: usize, hi: usize) -> OperatorMatrix {
        assert!(lo <= hi && hi <= self.rows);
        OperatorMatrix::new(
            &self.ring,
            hi - lo,
            self.cols,
            self.entries[lo * self.cols..hi * self.cols].to_vec(),
        )
    }

    /// Drop identically-zero columns and scale each remaining column to
    /// integral entries with content 1 and positive coefficient in the
    /// topmost nonzero entry's leading term.
    pub fn normalize_columns(&self) -> OperatorMatrix {
        let mut cols: Vec<Vec<OrePoly>> = Vec::new();
        for j in 0..self.cols {
            let col = self.col(j);
            if col.iter().all(|p| p.is_zero()) {
                continue;
            }
            cols.push(normalize_column(&self.ring, col));
        }
        let ncols = cols.len();
        let mut entries = Vec::with_capacity(self.rows * ncols);
        for i in 0..self.rows {
            for c in &cols {
                entries.push(c[i].clone());
            }
        }
        OperatorMatrix::new(&self.ring, self.rows, ncols, entries)
    }

    /// Same normalization for rows.
    pub fn normalize_rows(&self) -> OperatorMatrix {
        self.transpose().normalize_columns().transpose()
    }

    /// Canonical text form `[[...],[...]]` with one row per line.
    pub fn to_text(&self) -> String {
        let mut s = String::from("[");
        for i in 0..self.rows {
            if i > 0 {
                s.push_str(",\n ");
            }
            s.push('[');
            for j in 0..self.cols {
                if j > 0 {
                    s.push_str(", ");
                }
                s.push_str(&self.entry(i, j).to_string());
            }
            s.push(']');
        }
        s.push(']');
        s
    }
}

/// Scale a nonzero column so all coefficients become integers with overall
/// content 1, signed so the first nonzero entry's leading coefficient is
/// positive.
fn normalize_column(_ring: &RingSpec, col: Vec<OrePoly>) -> Vec<OrePoly> {
    use num_bigint::BigInt;
    let mut den_lcm = BigInt::one();
    let mut num_gcd = BigInt::zero();
    for p in &col {
        for (_, c) in p.terms() {
            den_lcm = den_lcm.lcm(c.denom());
            num_gcd = num_gcd.gcd(c.numer());
        }
    }
    if num_gcd.is_zero() {
        return col;
    }
    let mut factor = Rational::new(den_lcm, num_gcd);
    let lead_sign = col
        .iter()
        .find(|p| !p.is_zero())
        .and_then(|p| p.leading())
        .map(|(_, c)| c.is_negative())
        .unwrap_or(false);
    if factor.is_negative() != lead_sign {
        // flip so that the leading coefficient of the first nonzero entry
        // ends up positive
        factor = -factor;
    }
    col.iter().map(|p| p.scale(&factor)).collect()
}

impl Mul for &OperatorMatrix {
    type Output = OperatorMatrix;
    /// Matrix product with noncommutative entry products: entry `(i,k)` is
    /// `Σ_j M[i,j]·N[j,k]` with the factor order preserved.
    fn mul(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        assert!(self.ring == rhs.ring, "ring mismatch");
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        let mut out = OperatorMatrix::zero(&self.ring, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..rhs.cols {
                let mut acc = OrePoly::zero(&self.ring);
                for j in 0..self.cols {
                    acc = &acc + &(self.entry(i, j) * rhs.entry(j, k));
                }
                *out.entry_mut(i, k) = acc;
            }
        }
        out
    }
}

impl fmt::Debug for OperatorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OperatorMatrix({}x{})\n{}", self.rows, self.cols, self.to_text())
    }
}

impl fmt::Display for OperatorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}
