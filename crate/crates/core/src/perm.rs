//! Coordinate permutations with 1-based cycle notation at the boundary and
//! 0-based images inside.

use crate::error::{Error, Result};
use crate::eval::EvalVector;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    /// From 0-based images: images[c] is where coordinate c goes.
    pub fn from_images0(images: Vec<u32>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &im in &images {
            if im as usize >= images.len() || seen[im as usize] {
                return Err(Error::NotAPermutation(format!(
                    "images are not a bijection on 0..{}",
                    images.len()
                )));
            }
            seen[im as usize] = true;
        }
        Ok(Permutation { images })
    }

    /// From 1-based images.
    pub fn from_images1(images: &[usize]) -> Result<Self> {
        let shifted = images
            .iter()
            .map(|&j| {
                if j == 0 || j > images.len() {
                    Err(Error::NotAPermutation(format!("image {j} out of 1..={}", images.len())))
                } else {
                    Ok(j as u32 - 1)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_images0(shifted)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images0(&self) -> &[u32] {
        &self.images
    }

    /// Image of a 0-based coordinate.
    pub fn apply0(&self, c: usize) -> usize {
        self.images[c] as usize
    }

    /// Image of a 1-based coordinate.
    pub fn apply1(&self, j: usize) -> usize {
        self.images[j - 1] as usize + 1
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(c, &im)| c as u32 == im)
    }

    /// Smallest moved 0-based coordinate.
    pub fn first_moved(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|(c, &im)| *c as u32 != im).map(|(c, _)| c)
    }

    /// self after other: (self.compose(other))(c) = self(other(c)).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::LengthMismatch { expected: self.degree(), got: other.degree() });
        }
        let images = other.images.iter().map(|&c| self.images[c as usize]).collect();
        Ok(Permutation { images })
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0u32; self.images.len()];
        for (c, &im) in self.images.iter().enumerate() {
            images[im as usize] = c as u32;
        }
        Permutation { images }
    }

    /// Push-forward action on words: the output at coordinate p(c) is the
    /// input at c, so compose(p, q) acts as p after q.
    pub fn apply_to_vector(&self, v: &EvalVector) -> Result<EvalVector> {
        if self.degree() != v.len() {
            return Err(Error::LengthMismatch { expected: self.degree(), got: v.len() });
        }
        let mut out = EvalVector::zero(v.n())?;
        for (c, &im) in self.images.iter().enumerate() {
            if v.get(c) {
                out.set(im as usize, true);
            }
        }
        Ok(out)
    }

    /// Parses 1-based cycle notation: "(1,5)(2,6)" or "()" for the identity.
    /// Every entry must lie in 1..=degree and appear at most once.
    pub fn parse_cycles(s: &str, degree: usize) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty permutation; use () for the identity".into()));
        }
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut seen = vec![false; degree];
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let Some(inner) = rest.strip_prefix('(') else {
                return Err(Error::Parse(format!("expected '(' at {rest:?}")));
            };
            let Some(close) = inner.find(')') else {
                return Err(Error::Parse("unbalanced parenthesis".into()));
            };
            let body = &inner[..close];
            rest = &inner[close + 1..];
            if body.is_empty() {
                continue;
            }
            let entries = body
                .split(',')
                .map(|t| {
                    let j: usize = t
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad cycle entry {t:?}")))?;
                    if j == 0 || j > degree {
                        return Err(Error::Parse(format!("cycle entry {j} out of 1..={degree}")));
                    }
                    if seen[j - 1] {
                        return Err(Error::Parse(format!("coordinate {j} repeats across cycles")));
                    }
                    seen[j - 1] = true;
                    Ok(j - 1)
                })
                .collect::<Result<Vec<usize>>>()?;
            if entries.len() == 1 {
                return Err(Error::Parse("cycles need at least two entries".into()));
            }
            for (k, &c) in entries.iter().enumerate() {
                images[c] = entries[(k + 1) % entries.len()] as u32;
            }
        }
        Ok(Permutation { images })
    }

    /// Cycle notation, 1-based: cycles sorted by their smallest coordinate,
    /// each starting at it; fixed points omitted; identity rendered "()".
    pub fn cycles_string(&self) -> String {
        let mut out = String::new();
        let mut seen = vec![false; self.degree()];
        for start in 0..self.degree() {
            if seen[start] || self.apply0(start) == start {
                seen[start] = true;
                continue;
            }
            out.push('(');
            let mut c = start;
            loop {
                seen[c] = true;
                if c != start {
                    out.push(',');
                }
                out.push_str(&(c + 1).to_string());
                c = self.apply0(c);
                if c == start {
                    break;
                }
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycles_string())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({})", self.cycles_string())
    }
}
