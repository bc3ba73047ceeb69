//! Spin index sets and the elementary tensors of the state model.
//!
//! Spin pairs `(a, b)` index rows and columns lexicographically with spins in
//! ascending order, so `kron` places the first factor on the most significant
//! digit. This is the basis in which the crossing matrices are usually printed.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::laurent::LaurentPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TensorError {
    #[error("the spin model needs n >= 2, got {0}")]
    BadN(i64),
    #[error("dimension mismatch: {left_rows}x{left_cols} times {right_rows}x{right_cols}")]
    DimMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
}

fn check_n(n: usize) -> Result<(), TensorError> {
    if n < 2 {
        Err(TensorError::BadN(n as i64))
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Spin(pub i32);

/// `I_n = {1-n, 3-n, …, n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinSet {
    n: usize,
    members: Vec<Spin>,
}

impl SpinSet {
    pub fn new(n: usize) -> Result<Self, TensorError> {
        check_n(n)?;
        let members = (0..n).map(|i| Spin(spin_value(n, i))).collect();
        Ok(Self { n, members })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[Spin] {
        &self.members
    }

    pub fn contains(&self, s: Spin) -> bool {
        self.index_of(s).is_some()
    }

    pub fn index_of(&self, s: Spin) -> Option<usize> {
        let shifted = s.0 + self.n as i32 - 1;
        if shifted < 0 || shifted % 2 != 0 || shifted / 2 >= self.n as i32 {
            None
        } else {
            Some((shifted / 2) as usize)
        }
    }
}

pub fn spin_set(n: usize) -> Result<SpinSet, TensorError> {
    SpinSet::new(n)
}

/// The spin carried by basis index `i` of an `n`-dimensional leg.
pub fn spin_value(n: usize, i: usize) -> i32 {
    2 * i as i32 - (n as i32 - 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CrossingKind {
    Pos,
    Neg,
    Sing,
}

/// Turnbacks, named after the four `M` symbols. Cups create a pair of
/// strands, caps annihilate one. The weight of a counterclockwise turn on a
/// strand of spin `a` is `q^{a/2}`, a clockwise one `q^{-a/2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TurnKind {
    CupRight,
    CupLeft,
    CapRight,
    CapLeft,
}

impl TurnKind {
    pub const ALL: [TurnKind; 4] = [
        TurnKind::CupRight,
        TurnKind::CupLeft,
        TurnKind::CapRight,
        TurnKind::CapLeft,
    ];

    pub fn is_cup(self) -> bool {
        matches!(self, TurnKind::CupRight | TurnKind::CupLeft)
    }

    pub fn is_counterclockwise(self) -> bool {
        matches!(self, TurnKind::CupRight | TurnKind::CapLeft)
    }

    /// +1 for a counterclockwise half turn, -1 for clockwise.
    pub fn turn_sign(self) -> i64 {
        if self.is_counterclockwise() {
            1
        } else {
            -1
        }
    }

    /// Half-exponent of the weight on a strand carrying `spin`.
    pub fn half_exponent(self, spin: i32) -> i64 {
        self.turn_sign() * spin as i64
    }
}

/// Sparse matrix over `LaurentPoly`. Zero entries are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), LaurentPoly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.entries.insert((i, i), LaurentPoly::one());
        }
        m
    }

    pub fn diagonal(diag: Vec<LaurentPoly>) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, p) in diag.into_iter().enumerate() {
            m.set(i, i, p);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, r: usize, c: usize) -> LaurentPoly {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn entry(&self, r: usize, c: usize) -> Option<&LaurentPoly> {
        self.entries.get(&(r, c))
    }

    pub fn set(&mut self, r: usize, c: usize, p: LaurentPoly) {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of range");
        if p.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), p);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, p: &LaurentPoly) {
        let cur = self.get(r, c);
        self.set(r, c, cur + p);
    }

    /// Nonzero entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &LaurentPoly)> + '_ {
        self.entries.iter().map(|(&(r, c), p)| (r, c, p))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn scale(&self, p: &LaurentPoly) -> Self {
        let mut out = Self::zeros(self.rows, self.cols);
        for (r, c, x) in self.iter() {
            out.set(r, c, x * p);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch in add"
        );
        let mut out = self.clone();
        for (r, c, x) in other.iter() {
            out.add_to(r, c, x);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&LaurentPoly::constant(-1)))
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for (r, c, x) in self.iter() {
            out.entries.insert((c, r), x.clone());
        }
        out
    }

    pub fn map_entries(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        let mut out = Self::zeros(self.rows, self.cols);
        for (r, c, x) in self.iter() {
            out.set(r, c, f(x));
        }
        out
    }

    pub fn mat_mul(&self, other: &Self) -> Result<Self, TensorError> {
        if self.cols != other.rows {
            return Err(TensorError::DimMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let mut by_row: BTreeMap<usize, Vec<(usize, &LaurentPoly)>> = BTreeMap::new();
        for (r, c, x) in other.iter() {
            by_row.entry(r).or_default().push((c, x));
        }
        let mut acc: BTreeMap<(usize, usize), Vec<LaurentPoly>> = BTreeMap::new();
        for (i, k, a) in self.iter() {
            if let Some(row) = by_row.get(&k) {
                for (j, b) in row {
                    acc.entry((i, *j)).or_default().push(a * *b);
                }
            }
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for ((i, j), parts) in acc {
            out.set(i, j, parts.into_iter().sum());
        }
        Ok(out)
    }

    /// Block matrix `[a_ij · other]`.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for (i, j, a) in self.iter() {
            for (k, l, b) in other.iter() {
                out.entries.insert((i * other.rows + k, j * other.cols + l), a * b);
            }
        }
        out
    }

    /// Row-major bracketed text, one row per line.
    pub fn to_bracketed(&self) -> String {
        let mut s = String::from("[");
        for r in 0..self.rows {
            if r > 0 {
                s.push_str(",\n ");
            }
            s.push('[');
            for c in 0..self.cols {
                if c > 0 {
                    s.push_str(", ");
                }
                s.push_str(&self.get(r, c).to_string());
            }
            s.push(']');
        }
        s.push(']');
        s
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix {}x{}", self.rows, self.cols)?;
        for (r, c, x) in self.iter() {
            writeln!(f, "  ({r}, {c}) = {x}")?;
        }
        Ok(())
    }
}

pub fn kron(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    a.kron(b)
}

pub fn mat_mul(a: &PolyMatrix, b: &PolyMatrix) -> Result<PolyMatrix, TensorError> {
    a.mat_mul(b)
}

/// Weight of the crossing tensor at top spins `(a, b)` and bottom spins `(c, d)`.
pub fn crossing_entry(kind: CrossingKind, a: i32, b: i32, c: i32, d: i32) -> LaurentPoly {
    let q = LaurentPoly::q();
    let qi = LaurentPoly::q_inv();
    if c == a && d == b {
        match (kind, a.cmp(&b)) {
            (CrossingKind::Pos, std::cmp::Ordering::Less) => &q - &qi,
            (CrossingKind::Pos, std::cmp::Ordering::Equal) => q,
            (CrossingKind::Neg, std::cmp::Ordering::Greater) => &qi - &q,
            (CrossingKind::Neg, std::cmp::Ordering::Equal) => qi,
            (CrossingKind::Sing, std::cmp::Ordering::Less) => q,
            (CrossingKind::Sing, std::cmp::Ordering::Greater) => qi,
            (CrossingKind::Sing, std::cmp::Ordering::Equal) => &q + &qi,
            _ => LaurentPoly::zero(),
        }
    } else if d == a && c == b && a != b {
        LaurentPoly::one()
    } else {
        LaurentPoly::zero()
    }
}

/// The `n² × n²` matrix of a positive, negative or singular crossing.
pub fn crossing_matrix(kind: CrossingKind, n: usize) -> Result<PolyMatrix, TensorError> {
    check_n(n)?;
    let mut m = PolyMatrix::zeros(n * n, n * n);
    for ia in 0..n {
        for ib in 0..n {
            let (a, b) = (spin_value(n, ia), spin_value(n, ib));
            let row = ia * n + ib;
            // only (c, d) = (a, b) or (b, a) can be nonzero
            m.set(row, row, crossing_entry(kind, a, b, a, b));
            if ia != ib {
                m.set(row, ib * n + ia, crossing_entry(kind, a, b, b, a));
            }
        }
    }
    Ok(m)
}

/// Diagonal weights of a turnback as an `n × n` matrix; the pairing
/// `δ^{a,b}` is implicit.
pub fn turn_tensor(kind: TurnKind, n: usize) -> Result<PolyMatrix, TensorError> {
    check_n(n)?;
    Ok(PolyMatrix::diagonal(
        (0..n)
            .map(|i| LaurentPoly::q_half_pow(kind.half_exponent(spin_value(n, i))))
            .collect(),
    ))
}
