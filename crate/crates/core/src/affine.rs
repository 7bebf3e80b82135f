//! Invertible affine maps x -> Ax + b on F_2^n and the coordinate
//! permutations they induce through the point labeling of coordinates.

use crate::error::{Error, Result};
use crate::eval::EvalVector;
use crate::monomial::MonomialSet;
use crate::perm::Permutation;
use std::fmt;

/// x -> Ax + b with A invertible. Row i of A is stored as the bitmask of the
/// input variables feeding output bit i; b as a bitmask.
#[derive(Clone, PartialEq, Eq)]
pub struct AffineMap {
    n: usize,
    rows: Vec<u32>,
    b: u32,
}

fn parity(x: u32) -> u32 {
    x.count_ones() & 1
}

/// Rank of a list of n-bit rows.
fn rank(rows: &[u32]) -> usize {
    let mut basis: Vec<u32> = Vec::new();
    for &row in rows {
        let mut r = row;
        for &b in &basis {
            r = r.min(r ^ b);
        }
        if r != 0 {
            basis.push(r);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

impl AffineMap {
    pub fn new(n: usize, rows: Vec<u32>, b: u32) -> Result<Self> {
        if n == 0 || n > 20 {
            return Err(Error::InvalidParams(format!("affine map needs 1 <= n <= 20, got {n}")));
        }
        if rows.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: rows.len() });
        }
        let full = (1u32 << n) - 1;
        if b & !full != 0 || rows.iter().any(|r| r & !full != 0) {
            return Err(Error::InvalidParams("matrix entries outside the variable range".into()));
        }
        if rank(&rows) != n {
            return Err(Error::Singular);
        }
        Ok(AffineMap { n, rows, b })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(n, (0..n).map(|i| 1 << i).collect(), 0)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn translation(&self) -> u32 {
        self.b
    }

    /// Image of the point x (bit i = value of variable x_i).
    pub fn apply_point(&self, x: u32) -> u32 {
        let mut y = self.b;
        for (i, &row) in self.rows.iter().enumerate() {
            y ^= parity(row & x) << i;
        }
        y
    }

    /// self after other: x -> self(other(x)).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::NMismatch(self.n, other.n));
        }
        // Row i of the product: XOR of other's rows picked by our row mask.
        let rows: Vec<u32> = self
            .rows
            .iter()
            .map(|&mine| {
                let mut acc = 0u32;
                let mut bits = mine;
                while bits != 0 {
                    let k = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    acc ^= other.rows[k];
                }
                acc
            })
            .collect();
        let b = self.apply_point(other.b); // A*b_other + b_self
        Ok(AffineMap { n: self.n, rows, b })
    }

    pub fn inverse(&self) -> Self {
        // Gauss-Jordan on [A | I]; then b' = A^{-1} b.
        let n = self.n;
        let mut a = self.rows.clone();
        let mut inv: Vec<u32> = (0..n).map(|i| 1u32 << i).collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| a[r] >> col & 1 == 1)
                .expect("map was validated invertible");
            a.swap(col, pivot);
            inv.swap(col, pivot);
            for r in 0..n {
                if r != col && a[r] >> col & 1 == 1 {
                    a[r] ^= a[col];
                    inv[r] ^= inv[col];
                }
            }
        }
        let binv = {
            let mut y = 0u32;
            for (i, &row) in inv.iter().enumerate() {
                y |= parity(row & self.b) << i;
            }
            y
        };
        AffineMap { n, rows: inv, b: binv }
    }

    /// The induced coordinate permutation: coordinate c carries the point
    /// ~c, so c maps to the coordinate carrying the image of its point.
    pub fn to_permutation(&self) -> Permutation {
        let full = (1u32 << self.n) - 1;
        let images = (0..=full)
            .map(|c| full & !self.apply_point(full & !c))
            .collect();
        Permutation::from_images0(images).expect("affine maps act bijectively")
    }

    pub fn presentation(&self) -> AffinePresentation {
        let mut rows = Vec::with_capacity(self.n + 1);
        rows.push(1u32); // constant row: 1 followed by zeros
        for (i, &row) in self.rows.iter().enumerate() {
            rows.push((self.b >> i & 1) | row << 1);
        }
        AffinePresentation { n: self.n, rows }
    }
}

impl fmt::Debug for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AffineMap(n={}, rows={:?}, b={:#b})", self.n, self.rows, self.b)
    }
}

/// The (n+1) x (n+1) block presentation of an affine map: first row
/// (1, 0, ..., 0), then per output variable its constant bit followed by its
/// matrix row. Bit k of a stored row is column k.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffinePresentation {
    n: usize,
    rows: Vec<u32>,
}

impl AffinePresentation {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Rows as 0/1 entries, outer index row, inner index column.
    pub fn rows_bits(&self) -> Vec<Vec<u8>> {
        self.rows
            .iter()
            .map(|row| (0..=self.n).map(|k| (row >> k & 1) as u8).collect())
            .collect()
    }
}

impl fmt::Display for AffinePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, row) in self.rows.iter().enumerate() {
            if r > 0 {
                f.write_str("\n")?;
            }
            for k in 0..=self.n {
                f.write_str(if row >> k & 1 == 1 { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}

/// Generators of the group of lower-triangular affine substitutions: the
/// substitutions x_i -> x_i + x_j for j < i (ordered by i, then j) followed
/// by the translations x_i -> x_i + 1. All are involutions.
pub fn lower_triangular_generators(n: usize) -> Result<Vec<AffineMap>> {
    let mut out = Vec::new();
    for i in 1..n {
        for j in 0..i {
            let rows = (0..n).map(|r| if r == i { 1 << i | 1 << j } else { 1 << r }).collect();
            out.push(AffineMap::new(n, rows, 0)?);
        }
    }
    for i in 0..n {
        out.push(AffineMap::new(n, (0..n).map(|r| 1u32 << r).collect(), 1 << i)?);
    }
    Ok(out)
}

/// The permutation that swaps the coordinate pair differing only in x_{n-1}
/// exactly where f evaluates to 1. f must not involve x_{n-1} (equal halves);
/// this realizes the substitution x_{n-1} -> x_{n-1} + f.
pub fn fiber_swap(f: &EvalVector) -> Result<Permutation> {
    let n = f.n();
    if n == 0 {
        return Err(Error::InvalidParams("fiber_swap needs n >= 1".into()));
    }
    let half = 1usize << (n - 1);
    for c in 0..half {
        if f.get(c) != f.get(c + half) {
            return Err(Error::InvalidParams(format!(
                "prescribed shift involves x{} (halves differ at coordinate {})",
                n - 1,
                c + 1
            )));
        }
    }
    let images = (0..1u32 << n)
        .map(|c| if f.get(c as usize) { c ^ half as u32 } else { c })
        .collect();
    Permutation::from_images0(images)
}

/// Convenience: fiber swap along the sum of the given monomials.
pub fn fiber_swap_by(set: &MonomialSet) -> Result<Permutation> {
    fiber_swap(&set.anf_to_eval())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::eval_to_anf;

    #[test]
    fn apply_point_and_inverse() {
        // x -> Ax + b with A = [[1,1],[0,1]] rows as masks, b = 10.
        let f = AffineMap::new(2, vec![0b11, 0b10], 0b10).unwrap();
        // point (1,0): y0 = 1, y1 = 0; plus b -> (1, 1).
        assert_eq!(f.apply_point(0b01), 0b11);
        let inv = f.inverse();
        for x in 0..4 {
            assert_eq!(inv.apply_point(f.apply_point(x)), x);
            assert_eq!(f.apply_point(inv.apply_point(x)), x);
        }
        assert!(AffineMap::new(2, vec![0b11, 0b11], 0).is_err());
    }

    #[test]
    fn compose_matches_pointwise() {
        let f = AffineMap::new(3, vec![0b011, 0b010, 0b110], 0b101).unwrap();
        let g = AffineMap::new(3, vec![0b100, 0b011, 0b001], 0b010).unwrap();
        let fg = f.compose(&g).unwrap();
        for x in 0..8 {
            assert_eq!(fg.apply_point(x), f.apply_point(g.apply_point(x)));
        }
    }

    #[test]
    fn permutation_of_translation() {
        // Translation by e0 swaps coordinates that differ in bit 0.
        let t = AffineMap::new(2, vec![0b01, 0b10], 0b01).unwrap();
        assert_eq!(t.to_permutation().cycles_string(), "(1,2)(3,4)");
        // Identity map gives identity permutation.
        assert!(AffineMap::identity(4).unwrap().to_permutation().is_identity());
    }

    #[test]
    fn to_permutation_is_a_homomorphism() {
        let f = AffineMap::new(3, vec![0b011, 0b010, 0b110], 0b101).unwrap();
        let g = AffineMap::new(3, vec![0b100, 0b011, 0b001], 0b010).unwrap();
        let lhs = f.compose(&g).unwrap().to_permutation();
        let rhs = f.to_permutation().compose(&g.to_permutation()).unwrap();
        assert_eq!(lhs, rhs);
        assert!(f
            .to_permutation()
            .compose(&f.inverse().to_permutation())
            .unwrap()
            .is_identity());
    }

    #[test]
    fn presentation_layout() {
        let f = AffineMap::new(2, vec![0b01, 0b11], 0b10).unwrap();
        let rows = f.presentation().rows_bits();
        assert_eq!(rows, vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 1]]);
        assert_eq!(f.presentation().to_string(), "100\n010\n111");
    }

    #[test]
    fn lower_triangular_generator_count_and_involutions() {
        for n in 1..=4usize {
            let gens = lower_triangular_generators(n).unwrap();
            assert_eq!(gens.len(), n * (n - 1) / 2 + n);
            for g in &gens {
                let p = g.to_permutation();
                assert!(p.compose(&p).unwrap().is_identity(), "{g:?}");
            }
        }
    }

    #[test]
    fn fiber_swap_examples() {
        // f = x0 over n = 2: swap where x0 = 1, i.e. coordinates 1 and 3.
        let f = MonomialSet::parse("x0", 2).unwrap().anf_to_eval();
        assert_eq!(fiber_swap(&f).unwrap().cycles_string(), "(1,3)");
        // f = 1: swap everything, matching the translation by e_{n-1}.
        let ones = EvalVector::ones(2).unwrap();
        let t = AffineMap::new(2, vec![0b01, 0b10], 0b10).unwrap();
        assert_eq!(fiber_swap(&ones).unwrap(), t.to_permutation());
        // Dependence on x_{n-1} is rejected.
        let bad = MonomialSet::parse("x1", 2).unwrap().anf_to_eval();
        assert!(fiber_swap(&bad).is_err());
    }

    #[test]
    fn fiber_swap_is_additive() {
        let a = MonomialSet::parse("x0", 3).unwrap().anf_to_eval();
        let b = MonomialSet::parse("x0x1, 1", 3).unwrap().anf_to_eval();
        let mut aplusb = a.clone();
        aplusb.xor_assign(&b);
        let lhs = fiber_swap(&a).unwrap().compose(&fiber_swap(&b).unwrap()).unwrap();
        assert_eq!(lhs, fiber_swap(&aplusb).unwrap());
    }

    #[test]
    fn fiber_swap_realizes_substitution() {
        // Push-forward of x2 under fiber_swap(f) has ANF x2 + f.
        let f = MonomialSet::parse("x0x1", 3).unwrap();
        let p = fiber_swap_by(&f).unwrap();
        let x2 = MonomialSet::parse("x2", 3).unwrap().anf_to_eval();
        let image = p.apply_to_vector(&x2).unwrap();
        assert_eq!(eval_to_anf(&image).to_string(), "x2 + x0x1");
    }
}
