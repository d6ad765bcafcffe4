//! Bit-packed linear algebra over the two-element field.
//!
//! Vectors are [`BitVec`]s and matrices are row-major [`BitMatrix`]es. Linear
//! maps use the column convention: a matrix `A` sends `x` to `A·x`, so the
//! kernel of `A` is `{x : A·x = 0}` and the image is spanned by its columns.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::Error;

const WORD: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// A vector over GF(2) of fixed length.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec { len, words: vec![0; words_for(len)] }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = BitVec { len, words: vec![!0; words_for(len)] };
        v.mask_tail();
        v
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_indices(len: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in idx {
            v.toggle(i);
        }
        v
    }

    pub(crate) fn from_words(len: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), words_for(len));
        let mut v = BitVec { len, words };
        v.mask_tail();
        v
    }

    fn mask_tail(&mut self) {
        let r = self.len % WORD;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, b: bool) {
        debug_assert!(i < self.len);
        let m = 1u64 << (i % WORD);
        if b {
            self.words[i / WORD] |= m;
        } else {
            self.words[i / WORD] &= !m;
        }
    }

    #[inline]
    pub fn toggle(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the lowest set bit.
    pub fn leading(&self) -> Option<usize> {
        self.words.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Standard inner product `Σ x_i y_i`.
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        let mut acc = 0u64;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= a & b;
        }
        acc.count_ones() & 1 == 1
    }

    pub fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            core::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD + t)
                }
            })
        })
    }

    /// Concatenation `self ‖ other`.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.len + other.len);
        for i in self.ones_iter() {
            out.set(i, true);
        }
        for i in other.ones_iter() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Bits `start..start+len` as a new vector.
    pub fn slice(&self, start: usize, len: usize) -> BitVec {
        let mut out = BitVec::zeros(len);
        for i in 0..len {
            if self.get(start + i) {
                out.set(i, true);
            }
        }
        out
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[inline]
fn xor_words(dst: &mut [u64], src: &[u64]) {
    for (a, b) in dst.iter_mut().zip(src) {
        *a ^= b;
    }
}

/// Dense matrix over GF(2), row-major with each row padded to whole words.
///
/// Bits beyond `cols` in every row are kept zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        BitMatrix { rows, cols, stride, data: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn ones(rows: usize, cols: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        let one = BitVec::ones(cols);
        for i in 0..rows {
            m.row_words_mut(i).copy_from_slice(one.words());
        }
        m
    }

    /// Builds a matrix whose rows are the given vectors.
    pub fn from_rows(cols: usize, rows: &[BitVec]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row length mismatch");
            m.row_words_mut(i).copy_from_slice(r.words());
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(rows: usize, cols: &[BitVec]) -> Self {
        Self::from_rows(rows, cols).transpose()
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row(&self, i: usize) -> BitVec {
        BitVec::from_words(self.cols, self.row_words(i).to_vec())
    }

    pub fn row_iter(&self) -> impl Iterator<Item = BitVec> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn set_row(&mut self, i: usize, v: &BitVec) {
        assert_eq!(v.len(), self.cols);
        self.row_words_mut(i).copy_from_slice(v.words());
    }

    pub fn col(&self, j: usize) -> BitVec {
        let mut v = BitVec::zeros(self.rows);
        for i in 0..self.rows {
            if self.get(i, j) {
                v.set(i, true);
            }
        }
        v
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        (self.data[i * self.stride + j / WORD] >> (j % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, b: bool) {
        debug_assert!(i < self.rows && j < self.cols);
        let w = &mut self.data[i * self.stride + j / WORD];
        let m = 1u64 << (j % WORD);
        if b {
            *w |= m;
        } else {
            *w &= !m;
        }
    }

    #[inline]
    pub fn toggle(&mut self, i: usize, j: usize) {
        self.data[i * self.stride + j / WORD] ^= 1u64 << (j % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            let row = self.row_words(i);
            for (wi, &w) in row.iter().enumerate() {
                let mut w = w;
                while w != 0 {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    t.set(wi * WORD + b, i, true);
                }
            }
        }
        t
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows, "product shape mismatch");
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let (src, dst_range) = (i * self.stride, i * out.stride..(i + 1) * out.stride);
            for wi in 0..self.stride {
                let mut w = self.data[src + wi];
                while w != 0 {
                    let k = wi * WORD + w.trailing_zeros() as usize;
                    w &= w - 1;
                    let orow = &other.data[k * other.stride..(k + 1) * other.stride];
                    xor_words(&mut out.data[dst_range.clone()], orow);
                }
            }
        }
        out
    }

    /// `self · v`.
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        let mut out = BitVec::zeros(self.rows);
        for i in 0..self.rows {
            let mut acc = 0u64;
            for (a, b) in self.row_words(i).iter().zip(v.words()) {
                acc ^= a & b;
            }
            if acc.count_ones() & 1 == 1 {
                out.set(i, true);
            }
        }
        out
    }

    /// `vᵀ · self`, i.e. the linear combination of rows selected by `v`.
    pub fn vec_mul(&self, v: &BitVec) -> BitVec {
        assert_eq!(self.rows, v.len(), "vector length mismatch");
        let mut out = vec![0u64; self.stride];
        for i in v.ones_iter() {
            xor_words(&mut out, self.row_words(i));
        }
        BitVec::from_words(self.cols, out)
    }

    pub fn add(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &BitMatrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        xor_words(&mut self.data, &other.data);
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        BitMatrix { rows: self.rows + other.rows, cols: self.cols, stride: self.stride, data }
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.rows, other.rows);
        let rows: Vec<BitVec> = (0..self.rows).map(|i| self.row(i).concat(&other.row(i))).collect();
        BitMatrix::from_rows(self.cols + other.cols, &rows)
    }

    /// Reduced row-echelon form in place; returns the pivot columns.
    ///
    /// Columns are scanned left to right and the first remaining row with a
    /// one in the current column becomes the pivot row.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c)) else {
                continue;
            };
            if p != r {
                for w in 0..self.stride {
                    self.data.swap(p * self.stride + w, r * self.stride + w);
                }
            }
            let wi = c / WORD;
            let pivot_row: Vec<u64> = self.row_words(r)[wi..].to_vec();
            for i in 0..self.rows {
                if i != r && self.get(i, c) {
                    let base = i * self.stride + wi;
                    xor_words(&mut self.data[base..base + pivot_row.len()], &pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place();
        (m, p)
    }

    pub fn rank(&self) -> usize {
        let mut red = RowReducer::new(self.cols);
        for i in 0..self.rows {
            red.insert_words(self.row_words(i));
            if red.rank() == self.cols {
                break;
            }
        }
        red.rank()
    }

    /// Basis of `{x : self·x = 0}`.
    pub fn nullspace(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = BitVec::unit(self.cols, f);
            for (i, &p) in pivots.iter().enumerate() {
                if r.get(i, f) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        Subspace::from_vectors(self.cols, &basis)
    }

    /// Span of the rows.
    pub fn row_space(&self) -> Subspace {
        Subspace::from_matrix(self)
    }

    /// Span of the columns (the image of the map `x ↦ self·x`).
    pub fn column_space(&self) -> Subspace {
        Subspace::from_matrix(&self.transpose())
    }

    pub fn inverse(&self) -> Option<BitMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let (r, pivots) = self.hstack(&BitMatrix::identity(n)).rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = BitMatrix::zeros(n, n);
        for i in 0..n {
            inv.set_row(i, &r.row(i).slice(n, n));
        }
        Some(inv)
    }

    /// Any `x` with `self·x = b`.
    pub fn solve(&self, b: &BitVec) -> Result<Option<BitVec>, Error> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: b.len() });
        }
        let aug = self.hstack(&BitMatrix::from_cols(self.rows, core::slice::from_ref(b)));
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = BitVec::zeros(self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            if r.get(i, self.cols) {
                x.set(p, true);
            }
        }
        Ok(Some(x))
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "{:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// Streaming semi-echelon basis: rows are inserted one at a time and reduced
/// against the rows already kept, so large systems never need to be held in
/// memory at once.
///
/// Every kept row has its pivot (lowest set bit) cleared in all rows kept
/// after it.
#[derive(Clone, Debug)]
pub struct RowReducer {
    cols: usize,
    stride: usize,
    rows: Vec<u64>,
    pivots: Vec<usize>,
}

impl RowReducer {
    pub fn new(cols: usize) -> Self {
        RowReducer { cols, stride: words_for(cols), rows: Vec::new(), pivots: Vec::new() }
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    fn reduce_words(&self, w: &mut [u64]) {
        for (k, &p) in self.pivots.iter().enumerate() {
            if (w[p / WORD] >> (p % WORD)) & 1 == 1 {
                let start = p / WORD;
                let row = &self.rows[k * self.stride..(k + 1) * self.stride];
                xor_words(&mut w[start..], &row[start..]);
            }
        }
    }

    /// Inserts a row; returns `true` when it was independent of the rows so far.
    pub fn insert_words(&mut self, words: &[u64]) -> bool {
        let mut w = words.to_vec();
        self.reduce_words(&mut w);
        match w.iter().enumerate().find(|(_, &x)| x != 0) {
            None => false,
            Some((wi, x)) => {
                self.pivots.push(wi * WORD + x.trailing_zeros() as usize);
                self.rows.extend_from_slice(&w);
                true
            }
        }
    }

    pub fn insert(&mut self, v: &BitVec) -> bool {
        assert_eq!(v.len(), self.cols);
        self.insert_words(v.words())
    }

    /// Residue of `v` after reduction; zero iff `v` lies in the span.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut w = v.words().to_vec();
        self.reduce_words(&mut w);
        BitVec::from_words(self.cols, w)
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn into_subspace(self) -> Subspace {
        let m = BitMatrix { rows: self.pivots.len(), cols: self.cols, stride: self.stride, data: self.rows };
        Subspace::from_matrix(&m)
    }

    /// Kept rows as a matrix (semi-echelon, not reduced).
    pub fn matrix(&self) -> BitMatrix {
        BitMatrix { rows: self.pivots.len(), cols: self.cols, stride: self.stride, data: self.rows.clone() }
    }
}

/// A subspace of GF(2)^n held as a basis in reduced row-echelon form.
///
/// The echelon basis is canonical, so two subspaces are equal exactly when
/// their bases are.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: BitMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: BitMatrix::zeros(0, ambient_dim), pivots: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: BitMatrix::identity(ambient_dim), pivots: (0..ambient_dim).collect() }
    }

    pub fn from_matrix(m: &BitMatrix) -> Self {
        let (mut r, pivots) = m.rref();
        r.rows = pivots.len();
        r.data.truncate(pivots.len() * r.stride);
        Subspace { ambient_dim: m.cols(), basis: r, pivots }
    }

    pub fn from_vectors(ambient_dim: usize, vs: &[BitVec]) -> Self {
        Self::from_matrix(&BitMatrix::from_rows(ambient_dim, vs))
    }

    pub fn span_of(v: &BitVec) -> Self {
        Self::from_vectors(v.len(), core::slice::from_ref(v))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Echelon basis, one vector per row.
    pub fn basis(&self) -> &BitMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<BitVec> {
        self.basis.row_iter().collect()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Clears the pivot columns of `v`; the result is zero iff `v` lies in
    /// the subspace, and equal residues mean equal cosets.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.ambient_dim, "ambient dimension mismatch");
        let mut out = v.clone();
        for (i, &p) in self.pivots.iter().enumerate() {
            if out.get(p) {
                let start = p / WORD;
                xor_words(&mut out.words[start..], &self.basis.row_words(i)[start..]);
            }
        }
        out
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &BitVec) -> Option<BitVec> {
        let c = BitVec::from_indices(self.dim(), (0..self.dim()).filter(|&i| v.get(self.pivots[i])));
        (self.basis.vec_mul(&c) == *v).then_some(c)
    }

    fn check(&self, other: &Subspace) -> Result<(), Error> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: other.ambient_dim });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, Error> {
        self.check(other)?;
        Ok(Subspace::from_matrix(&self.basis.vstack(&other.basis)))
    }

    /// Intersection, computed from the kernel of `[Uᵀ | Vᵀ]`.
    pub fn meet(&self, other: &Subspace) -> Result<Subspace, Error> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient_dim));
        }
        let stacked = self.basis.vstack(&other.basis);
        let k = stacked.transpose().nullspace();
        let du = self.dim();
        let vs: Vec<BitVec> = k.basis_vectors().iter().map(|c| self.basis.vec_mul(&c.slice(0, du))).collect();
        Ok(Subspace::from_vectors(self.ambient_dim, &vs))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis.row_iter().all(|v| other.contains(&v))
    }

    /// `{x : ⟨x, u⟩ = 0 for all u}` for the standard form.
    pub fn orthogonal_complement(&self) -> Subspace {
        if self.is_zero() {
            return Subspace::full(self.ambient_dim);
        }
        self.basis.nullspace()
    }

    /// Image under `x ↦ m·x`.
    pub fn image(&self, m: &BitMatrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient_dim);
        let vs: Vec<BitVec> = self.basis.row_iter().map(|v| m.mul_vec(&v)).collect();
        Subspace::from_vectors(m.rows(), &vs)
    }

    /// Preimage `{x : m·x ∈ self}`.
    pub fn preimage(&self, m: &BitMatrix) -> Subspace {
        assert_eq!(m.rows(), self.ambient_dim);
        // x ↦ m·x mod self, read on non-pivot coordinates.
        let mut is_pivot = vec![false; self.ambient_dim];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.ambient_dim).filter(|&c| !is_pivot[c]).collect();
        let cols: Vec<BitVec> = (0..m.cols())
            .map(|j| {
                let r = self.reduce(&m.col(j));
                BitVec::from_indices(free.len(), free.iter().enumerate().filter(|(_, &c)| r.get(c)).map(|(i, _)| i))
            })
            .collect();
        BitMatrix::from_cols(free.len(), &cols).nullspace()
    }

    /// Whether every matrix maps the subspace into itself.
    pub fn is_invariant(&self, mats: &[&BitMatrix]) -> bool {
        mats.iter().all(|m| self.basis.row_iter().all(|v| self.contains(&m.mul_vec(&v))))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {})", self.dim(), self.ambient_dim)
    }
}

/// Coordinates with respect to an arbitrary list of independent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateBasis {
    span: Subspace,
    // Row i expresses echelon row i as a combination of the input vectors.
    to_input: BitMatrix,
}

impl CoordinateBasis {
    pub fn new(ambient_dim: usize, vectors: &[BitVec]) -> Result<Self, Error> {
        let k = vectors.len();
        let m = BitMatrix::from_rows(ambient_dim, vectors).hstack(&BitMatrix::identity(k));
        let (r, pivots) = m.rref();
        if pivots.len() < k || pivots[k - 1] >= ambient_dim {
            return Err(Error::InvalidArgument("vectors are linearly dependent".into()));
        }
        let mut ech = BitMatrix::zeros(k, ambient_dim);
        let mut to_input = BitMatrix::zeros(k, k);
        for i in 0..k {
            let row = r.row(i);
            ech.set_row(i, &row.slice(0, ambient_dim));
            to_input.set_row(i, &row.slice(ambient_dim, k));
        }
        Ok(CoordinateBasis { span: Subspace { ambient_dim, basis: ech, pivots: pivots[..k].to_vec() }, to_input })
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn span(&self) -> &Subspace {
        &self.span
    }

    /// `c` with `Σ c_i v_i = v`, or `None` when `v` is outside the span.
    pub fn coordinates(&self, v: &BitVec) -> Option<BitVec> {
        self.span.coordinates(v).map(|c| self.to_input.vec_mul(&c))
    }
}

/// Smallest subspace containing `seeds` and closed under every matrix.
pub fn spin(seeds: &[BitVec], mats: &[&BitMatrix]) -> Subspace {
    let Some(first) = seeds.first() else {
        return Subspace::zero(mats.first().map_or(0, |m| m.cols()));
    };
    let n = first.len();
    let mut red = RowReducer::new(n);
    let mut queue: Vec<BitVec> = Vec::new();
    for s in seeds {
        if red.insert(s) {
            queue.push(s.clone());
        }
    }
    let mut head = 0;
    while head < queue.len() && red.rank() < n {
        let v = queue[head].clone();
        head += 1;
        for m in mats {
            let w = m.mul_vec(&v);
            if red.insert(&w) {
                queue.push(w);
            }
        }
    }
    red.into_subspace()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, r: usize, c: usize, density: f64) -> BitMatrix {
        let mut m = BitMatrix::zeros(r, c);
        for i in 0..r {
            for j in 0..c {
                if rng.gen_bool(density) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    #[test]
    fn rank_of_trivial_matrices() {
        assert_eq!(BitMatrix::zeros(3, 3).rank(), 0);
        assert_eq!(BitMatrix::identity(5).rank(), 5);
        assert_eq!(BitMatrix::identity(5).nullspace().dim(), 0);
    }

    #[test]
    fn parity_kernel() {
        let k = BitMatrix::ones(1, 4).nullspace();
        assert_eq!(k.dim(), 3);
        assert!(k.basis_vectors().iter().all(|v| v.weight() % 2 == 0));
    }

    #[test]
    fn solve_identity_and_inconsistent() {
        let b = BitVec::from_bits(&[true, false, true, true]);
        assert_eq!(BitMatrix::identity(4).solve(&b).unwrap(), Some(b.clone()));
        let z = BitMatrix::zeros(4, 4);
        assert_eq!(z.solve(&b).unwrap(), None);
        assert!(z.solve(&BitVec::zeros(3)).is_err());
    }

    #[test]
    fn meet_and_sum_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let u = random_matrix(&mut rng, 5, 30, 0.3).row_space();
        assert_eq!(u.meet(&u).unwrap(), u);
        assert_eq!(u.sum(&Subspace::zero(30)).unwrap(), u);
        assert!(u.sum(&Subspace::zero(29)).is_err());
    }

    #[test]
    fn transpose_and_product_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_matrix(&mut rng, 70, 90, 0.5);
        let b = random_matrix(&mut rng, 90, 65, 0.5);
        let ab = a.mul(&b);
        assert_eq!(ab.transpose(), b.transpose().mul(&a.transpose()));
        let v = random_matrix(&mut rng, 1, 65, 0.5).row(0);
        assert_eq!(ab.mul_vec(&v), a.mul_vec(&b.mul_vec(&v)));
    }

    #[test]
    fn inverse_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut found = 0;
        while found < 5 {
            let a = random_matrix(&mut rng, 40, 40, 0.5);
            if let Some(inv) = a.inverse() {
                assert!(a.mul(&inv).is_identity());
                found += 1;
            } else {
                assert!(a.rank() < 40);
            }
        }
    }

    #[test]
    fn preimage_matches_definition() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let m = random_matrix(&mut rng, 12, 10, 0.3);
        let target = random_matrix(&mut rng, 4, 12, 0.4).row_space();
        let p = target.preimage(&m);
        for v in p.basis_vectors() {
            assert!(target.contains(&m.mul_vec(&v)));
        }
        // Brute force over all 2^10 vectors.
        let count = (0u32..1 << 10)
            .filter(|&bits| {
                let v = BitVec::from_indices(10, (0..10).filter(|i| bits >> i & 1 == 1));
                target.contains(&m.mul_vec(&v))
            })
            .count();
        assert_eq!(count, 1 << p.dim());
    }

    #[test]
    fn spin_closes_under_cycle() {
        // Cyclic shift on GF(2)^6: e_0 spins to everything.
        let mut c = BitMatrix::zeros(6, 6);
        for i in 0..6 {
            c.set((i + 1) % 6, i, true);
        }
        assert_eq!(spin(&[BitVec::unit(6, 0)], &[&c]).dim(), 6);
        assert_eq!(spin(&[BitVec::ones(6)], &[&c]).dim(), 1);
    }
}
