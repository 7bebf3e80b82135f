//! Bit-packed GF(2) linear algebra: reduced row echelon span with membership
//! queries.

/// A row space in reduced row echelon form. Rows are bit-packed little-endian
/// (bit c of word c/64 = column c); pivot columns increase down the rows.
#[derive(Clone, Debug)]
pub struct RowSpan {
    width: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

fn lowest_bit(row: &[u64]) -> Option<usize> {
    for (k, &w) in row.iter().enumerate() {
        if w != 0 {
            return Some(k * 64 + w.trailing_zeros() as usize);
        }
    }
    None
}

fn get_bit(row: &[u64], c: usize) -> bool {
    row[c >> 6] >> (c & 63) & 1 == 1
}

fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (a, b) in dst.iter_mut().zip(src) {
        *a ^= b;
    }
}

impl RowSpan {
    pub fn new(width: usize) -> Self {
        RowSpan { width, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_rows<'a, I: IntoIterator<Item = &'a [u64]>>(width: usize, rows: I) -> Self {
        let mut span = Self::new(width);
        for row in rows {
            span.insert(row);
        }
        span
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    /// XORs away every component along existing rows, in place.
    pub fn reduce(&self, row: &mut [u64]) {
        debug_assert_eq!(row.len(), self.width.div_ceil(64).max(1));
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if get_bit(row, p) {
                xor_into(row, r);
            }
        }
    }

    /// Adds a row to the span; returns false if it was already contained.
    pub fn insert(&mut self, row: &[u64]) -> bool {
        let mut row = row.to_vec();
        self.reduce(&mut row);
        let Some(p) = lowest_bit(&row) else { return false };
        debug_assert!(p < self.width);
        // Back-substitute to keep the basis fully reduced.
        for r in &mut self.rows {
            if get_bit(r, p) {
                xor_into(r, &row);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, row);
        true
    }

    pub fn contains(&self, row: &[u64]) -> bool {
        let mut row = row.to_vec();
        self.reduce(&mut row);
        lowest_bit(&row).is_none()
    }
}
