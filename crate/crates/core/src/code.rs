//! Binary codes spanned by monomial evaluations: Reed-Muller and related
//! families, the polar-style information-set construction, membership, and
//! weight enumeration.

use crate::error::{Error, Result};
use crate::eval::{EvalVector, MAX_N};
use crate::gf2::RowSpan;
use crate::monomial::{Monomial, MonomialSet};
use std::collections::{BTreeMap, BTreeSet};

/// The i-th row of the 2^n x 2^n lower-triangular kernel (rows and columns
/// 0-based) is the evaluation of this monomial: the product of the variables
/// whose bits are CLEAR in i.
pub fn kernel_row_monomial(i: usize, n: usize) -> Result<Monomial> {
    if n > MAX_N {
        return Err(Error::NTooLarge(n));
    }
    if i >= 1 << n {
        return Err(Error::InvalidParams(format!("row {i} out of range for n={n}")));
    }
    let full = (1u32 << n) - 1;
    Monomial::from_mask(n, !(i as u32) & full)
}

/// An information set for the length-2^n kernel: the rows kept by a polar
/// code construction.
#[derive(Clone, Debug)]
pub struct InformationSet {
    pub n: usize,
    pub rows: BTreeSet<usize>,
}

/// A linear code spanned by monomial evaluations.
#[derive(Clone)]
pub struct BinaryCode {
    n: usize,
    monomials: MonomialSet,
    generators: Vec<EvalVector>,
    span: RowSpan,
}

impl BinaryCode {
    /// Code spanned by the evaluations of the given monomials.
    pub fn from_monomials(set: &MonomialSet) -> Result<Self> {
        if set.is_empty() {
            return Err(Error::InvalidParams("a code needs at least one monomial".into()));
        }
        let n = set.n();
        let generators: Vec<EvalVector> = set.iter().map(|m| m.evaluate()).collect();
        let mut span = RowSpan::new(1 << n);
        for g in &generators {
            span.insert(g.words());
        }
        // Distinct monomials have linearly independent evaluations.
        debug_assert_eq!(span.rank(), set.len());
        Ok(BinaryCode { n, monomials: set.clone(), generators, span })
    }

    /// Code generated by the kernel rows of an information set.
    pub fn from_information_set(info: &InformationSet) -> Result<Self> {
        let set = MonomialSet::from_monomials(
            info.n,
            info.rows
                .iter()
                .map(|&i| kernel_row_monomial(i, info.n))
                .collect::<Result<Vec<_>>>()?,
        )?;
        Self::from_monomials(&set)
    }

    /// Reed-Muller code RM(r, n): all monomials of degree <= r.
    pub fn reed_muller(r: usize, n: usize) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::NTooLarge(n));
        }
        if n == 0 || r > n {
            return Err(Error::InvalidParams(format!("reed_muller needs 0 <= r <= n >= 1, got r={r} n={n}")));
        }
        let set = MonomialSet::from_monomials(
            n,
            (0..1u32 << n)
                .filter(|m| m.count_ones() as usize <= r)
                .map(|m| Monomial::from_mask(n, m).unwrap()),
        )?;
        Self::from_monomials(&set)
    }

    /// RM(r, n) extended by the single monomial x_0...x_r of degree r + 1.
    pub fn reed_muller_plus(r: usize, n: usize) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::NTooLarge(n));
        }
        if r == 0 || r >= n {
            return Err(Error::InvalidParams(format!("reed_muller_plus needs 1 <= r <= n-1, got r={r} n={n}")));
        }
        let mut set = MonomialSet::from_monomials(
            n,
            (0..1u32 << n)
                .filter(|m| (m.count_ones() as usize) <= r)
                .map(|m| Monomial::from_mask(n, m).unwrap()),
        )?;
        set.insert(Monomial::from_mask(n, (1 << (r + 1)) - 1)?)?;
        Self::from_monomials(&set)
    }

    /// The degree-restricted family over m variables: {1, x_0..x_{m-1}} plus
    /// the degree >= 2 part of the decreasing closure of a seed set S over
    /// x_0..x_{k-1}. Requires 2 <= k < m and x_0 x_{k-1} among the seeds.
    pub fn low_degree_family(m: usize, k: usize, seeds: &MonomialSet) -> Result<Self> {
        if m > MAX_N {
            return Err(Error::NTooLarge(m));
        }
        if !(2 <= k && k < m) {
            return Err(Error::InvalidParams(format!("low_degree_family needs 2 <= k < m, got k={k} m={m}")));
        }
        if seeds.n() != k {
            return Err(Error::NMismatch(seeds.n(), k));
        }
        if seeds.is_empty() || seeds.iter().any(|s| s.degree() < 2) {
            return Err(Error::InvalidParams(
                "seed set must be nonempty with every member of degree >= 2".into(),
            ));
        }
        let corner = Monomial::new(k, &[0, k - 1])?;
        if !seeds.contains(&corner) {
            return Err(Error::InvalidParams(format!("seed set must contain {corner}")));
        }
        let mut set = MonomialSet::new(m)?;
        set.insert(Monomial::constant(m)?)?;
        for i in 0..m {
            set.insert(Monomial::variable(m, i)?)?;
        }
        for s in seeds.decreasing_closure().iter() {
            if s.degree() >= 2 {
                set.insert(s.embed(m)?)?;
            }
        }
        Self::from_monomials(&set)
    }

    /// The same monomials read in a larger ambient variable count n > current.
    pub fn lift(&self, n: usize) -> Result<Self> {
        if n <= self.n {
            return Err(Error::InvalidParams(format!(
                "lift target {n} must exceed current variable count {}",
                self.n
            )));
        }
        Self::from_monomials(&self.monomials.embed(n)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Block length 2^n.
    pub fn len(&self) -> usize {
        1 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn monomials(&self) -> &MonomialSet {
        &self.monomials
    }

    /// Generator words in canonical monomial order.
    pub fn generators(&self) -> &[EvalVector] {
        &self.generators
    }

    /// A reduced basis of the row space (differs from the generator list).
    pub fn reduced_basis(&self) -> &RowSpan {
        &self.span
    }

    pub fn contains(&self, v: &EvalVector) -> Result<bool> {
        if v.n() != self.n {
            return Err(Error::LengthMismatch { expected: self.len(), got: v.len() });
        }
        Ok(self.span.contains(v.words()))
    }

    /// Full weight distribution, weight -> count. Walks the codebook with a
    /// Gray code, so the dimension is capped at 24.
    pub fn weight_enumerator(&self) -> Result<BTreeMap<usize, u64>> {
        let k = self.dim();
        if k > 24 {
            return Err(Error::Unsupported(format!("weight enumeration capped at dimension 24, got {k}")));
        }
        let mut dist: BTreeMap<usize, u64> = BTreeMap::new();
        *dist.entry(0).or_insert(0) += 1;
        if self.len() <= 64 {
            let basis: Vec<u64> = self.span.rows().iter().map(|r| r[0]).collect();
            let mut acc = 0u64;
            for idx in 1u64..1 << k {
                acc ^= basis[idx.trailing_zeros() as usize];
                *dist.entry(acc.count_ones() as usize).or_insert(0) += 1;
            }
        } else {
            let basis = self.span.rows();
            let mut acc = vec![0u64; basis[0].len()];
            for idx in 1u64..1 << k {
                let row = &basis[idx.trailing_zeros() as usize];
                for (a, b) in acc.iter_mut().zip(row) {
                    *a ^= b;
                }
                let w: usize = acc.iter().map(|x| x.count_ones() as usize).sum();
                *dist.entry(w).or_insert(0) += 1;
            }
        }
        Ok(dist)
    }
}

impl std::fmt::Debug for BinaryCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BinaryCode[{}, {}] <{}>", self.len(), self.dim(), self.monomials)
    }
}
