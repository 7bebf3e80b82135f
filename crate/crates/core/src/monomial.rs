//! Squarefree monomials x_{i1}...x_{is} over F2 in n variables, the
//! divisibility-with-index-shift partial order on them, decreasing sets, and
//! the transform between evaluation vectors and algebraic normal form.

use crate::error::{Error, Result};
use crate::eval::{EvalVector, MAX_N};
use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

/// A squarefree monomial, stored as the bitmask of its variable indices.
/// The constant monomial 1 has the empty mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    n: usize,
    mask: u32,
}

impl Monomial {
    pub fn constant(n: usize) -> Result<Self> {
        Self::from_mask(n, 0)
    }

    /// Single variable x_i.
    pub fn variable(n: usize, i: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::VarOutOfRange { index: i, n });
        }
        Self::from_mask(n, 1 << i)
    }

    /// Builds x_{v[0]}...x_{v[k-1]}; indices must be strictly increasing.
    pub fn new(n: usize, vars: &[usize]) -> Result<Self> {
        let mut mask = 0u32;
        for (pos, &i) in vars.iter().enumerate() {
            if i >= n {
                return Err(Error::VarOutOfRange { index: i, n });
            }
            if pos > 0 && vars[pos - 1] >= i {
                return Err(Error::Parse(format!(
                    "variable indices must be strictly increasing, got {vars:?}"
                )));
            }
            mask |= 1 << i;
        }
        Self::from_mask(n, mask)
    }

    pub fn from_mask(n: usize, mask: u32) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::NTooLarge(n));
        }
        if n < 32 && mask >> n != 0 {
            return Err(Error::VarOutOfRange { index: 31 - mask.leading_zeros() as usize, n });
        }
        Ok(Monomial { n, mask })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn degree(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_constant(&self) -> bool {
        self.mask == 0
    }

    /// Variable indices in increasing order.
    pub fn vars(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |i| self.mask >> i & 1 == 1)
    }

    /// Same variable set viewed in a larger ambient variable count.
    pub fn embed(&self, n: usize) -> Result<Self> {
        if n < self.n {
            return Err(Error::NMismatch(self.n, n));
        }
        Self::from_mask(n, self.mask)
    }

    /// Evaluation vector over all 2^n points in coordinate order: the bit at
    /// coordinate c is 1 exactly when every variable of the monomial is 1 at
    /// the point carried by c, i.e. when c & mask == 0.
    pub fn evaluate(&self) -> EvalVector {
        let mask = self.mask as usize;
        EvalVector::from_fn(self.n, |c| c & mask == 0).expect("n already validated")
    }

    /// The partial order: f <= g iff some divisor of g of the same degree as f
    /// dominates f indexwise. Checked by greedy matching of sorted indices.
    pub fn leq(&self, g: &Monomial) -> Result<bool> {
        if self.n != g.n {
            return Err(Error::NMismatch(self.n, g.n));
        }
        if self.degree() > g.degree() {
            return Ok(false);
        }
        let mut gvars = g.vars();
        'next: for fi in self.vars() {
            for gj in gvars.by_ref() {
                if gj >= fi {
                    continue 'next;
                }
            }
            return Ok(false);
        }
        Ok(true)
    }

    /// Parses "1", "x0", "x0x2x3" (also accepts "x_0" and '*' separators).
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
        if cleaned == "1" {
            return Self::constant(n);
        }
        let mut vars = Vec::new();
        for part in cleaned.split('x') {
            if part.is_empty() {
                continue;
            }
            let digits = part.strip_prefix('_').unwrap_or(part);
            let idx: usize = digits
                .parse()
                .map_err(|_| Error::Parse(format!("bad variable index {part:?} in {s:?}")))?;
            vars.push(idx);
        }
        if vars.is_empty() {
            return Err(Error::Parse(format!("empty monomial {s:?}")));
        }
        Self::new(n, &vars)
    }
}

/// Canonical order: by degree, then lexicographically on the increasing index
/// lists. Note this is not the mask order: x0x3 sorts before x1x2.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| {
                let mut a = self.vars();
                let mut b = other.vars();
                loop {
                    match (a.next(), b.next()) {
                        (Some(x), Some(y)) => match x.cmp(&y) {
                            Ordering::Equal => continue,
                            ord => return ord,
                        },
                        (None, None) => return Ordering::Equal,
                        (None, Some(_)) => return Ordering::Less,
                        (Some(_), None) => return Ordering::Greater,
                    }
                }
            })
            .then_with(|| self.n.cmp(&other.n))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_constant() {
            return f.write_str("1");
        }
        for i in self.vars() {
            write!(f, "x{i}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial({self}; n={})", self.n)
    }
}

/// A set of monomials over a common variable count, kept in canonical order.
#[derive(Clone, PartialEq, Eq)]
pub struct MonomialSet {
    n: usize,
    members: BTreeSet<Monomial>,
}

impl MonomialSet {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::NTooLarge(n));
        }
        Ok(MonomialSet { n, members: BTreeSet::new() })
    }

    pub fn from_monomials<I: IntoIterator<Item = Monomial>>(n: usize, iter: I) -> Result<Self> {
        let mut set = Self::new(n)?;
        for m in iter {
            set.insert(m)?;
        }
        Ok(set)
    }

    pub fn insert(&mut self, m: Monomial) -> Result<bool> {
        if m.n() != self.n {
            return Err(Error::NMismatch(m.n(), self.n));
        }
        Ok(self.members.insert(m))
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        m.n() == self.n && self.members.contains(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Monomial> {
        self.members.iter()
    }

    /// Largest member degree (0 for the empty set).
    pub fn degree(&self) -> usize {
        self.members.iter().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Same monomials viewed in a larger ambient variable count.
    pub fn embed(&self, n: usize) -> Result<Self> {
        let members = self
            .members
            .iter()
            .map(|m| m.embed(n))
            .collect::<Result<Vec<_>>>()?;
        Self::from_monomials(n, members)
    }

    /// All monomials g of the ambient algebra with g <= f for some member f.
    /// Computed by closing under the two covering moves (drop a variable;
    /// shift one index down by one where the slot below is free), which
    /// generate the order.
    pub fn decreasing_closure(&self) -> MonomialSet {
        let mut seen: BTreeSet<u32> = self.members.iter().map(|m| m.mask()).collect();
        let mut queue: Vec<u32> = seen.iter().copied().collect();
        while let Some(mask) = queue.pop() {
            let push = |next: u32, seen: &mut BTreeSet<u32>, queue: &mut Vec<u32>| {
                if seen.insert(next) {
                    queue.push(next);
                }
            };
            let mut bits = mask;
            while bits != 0 {
                let i = bits.trailing_zeros();
                bits &= bits - 1;
                push(mask & !(1 << i), &mut seen, &mut queue);
                if i > 0 && mask >> (i - 1) & 1 == 0 {
                    push(mask & !(1 << i) | 1 << (i - 1), &mut seen, &mut queue);
                }
            }
        }
        let members = seen
            .into_iter()
            .map(|mask| Monomial::from_mask(self.n, mask).expect("mask stays in range"))
            .collect();
        MonomialSet { n: self.n, members }
    }

    /// Whether the set already equals its decreasing closure.
    pub fn is_decreasing(&self) -> bool {
        self.decreasing_closure().members == self.members
    }

    /// Evaluation vector of the sum of the members (the zero vector for the
    /// empty set).
    pub fn anf_to_eval(&self) -> EvalVector {
        let size = 1usize << self.n;
        let mut h = vec![0u8; size];
        for m in &self.members {
            h[m.mask() as usize] = 1;
        }
        moebius(&mut h, self.n);
        let full = size - 1;
        EvalVector::from_fn(self.n, |c| h[full ^ c] == 1).expect("n already validated")
    }

    /// Parses a comma- or plus-separated list: "1,x0,x0x1".
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let mut set = Self::new(n)?;
        for part in s.split([',', '+']) {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            set.insert(Monomial::parse(part, n)?)?;
        }
        Ok(set)
    }
}

impl fmt::Display for MonomialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.members.is_empty() {
            return f.write_str("0");
        }
        for (k, m) in self.members.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for MonomialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonomialSet({self}; n={})", self.n)
    }
}

/// In-place binary Moebius transform (its own inverse).
fn moebius(h: &mut [u8], n: usize) {
    for i in 0..n {
        let bit = 1usize << i;
        for y in 0..h.len() {
            if y & bit != 0 {
                h[y] ^= h[y ^ bit];
            }
        }
    }
}

/// Algebraic normal form of an evaluation vector, as the set of monomials
/// with coefficient 1. Inverse of [`MonomialSet::anf_to_eval`].
pub fn eval_to_anf(v: &EvalVector) -> MonomialSet {
    let n = v.n();
    let size = 1usize << n;
    let full = size - 1;
    let mut h: Vec<u8> = (0..size).map(|y| v.get(full ^ y) as u8).collect();
    moebius(&mut h, n);
    let members = (0..size)
        .filter(|&w| h[w] == 1)
        .map(|w| Monomial::from_mask(n, w as u32).expect("mask in range"))
        .collect();
    MonomialSet { n, members }
}
