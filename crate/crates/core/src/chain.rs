//! Deterministic Schreier-Sims stabilizer chains: exact group orders,
//! membership tests, and element enumeration for permutation groups given by
//! generators.

use crate::error::{Error, Result};
use crate::perm::Permutation;
use num_bigint::BigUint;
use num_traits::One;
use std::collections::HashMap;

struct Level {
    base: usize,
    /// Generators first attached at this level; the level's generating set is
    /// the union of `added` over this and all deeper levels.
    added: Vec<Permutation>,
    /// Orbit of `base` in BFS discovery order; orbit[0] == base.
    orbit: Vec<u32>,
    /// Coset representative per orbit point, mapping base to the point.
    transversal: HashMap<u32, Permutation>,
}

impl Level {
    fn new(base: usize) -> Self {
        Level { base, added: Vec::new(), orbit: Vec::new(), transversal: HashMap::new() }
    }
}

pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    /// Chain for the group generated by `gens`, choosing base points as
    /// needed (each new base is the first coordinate moved by the generator
    /// that forced it).
    pub fn new(degree: usize, gens: &[Permutation]) -> Result<Self> {
        Self::with_base(degree, &[], gens)
    }

    /// Chain with a forced initial base sequence (extended automatically if
    /// the group moves points beyond it).
    pub fn with_base(degree: usize, base: &[usize], gens: &[Permutation]) -> Result<Self> {
        let mut chain = StabilizerChain { degree, levels: Vec::new() };
        for &b in base {
            if b >= degree {
                return Err(Error::InvalidParams(format!("base point {b} out of range")));
            }
            chain.levels.push(Level::new(b));
        }
        for g in gens {
            if g.degree() != degree {
                return Err(Error::LengthMismatch { expected: degree, got: g.degree() });
            }
            chain.distribute(g.clone());
        }
        chain.rebuild();
        Ok(chain)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Files a generator at the first level whose base it moves, appending a
    /// level if it fixes every existing base point. Orbits are rebuilt later.
    fn distribute(&mut self, g: Permutation) {
        if g.is_identity() {
            return;
        }
        for l in 0..self.levels.len() {
            if g.apply0(self.levels[l].base) != self.levels[l].base {
                self.levels[l].added.push(g);
                return;
            }
        }
        let b = g.first_moved().expect("non-identity moves something");
        let mut level = Level::new(b);
        level.added.push(g);
        self.levels.push(level);
    }

    /// Recomputes orbits and closes the chain under Schreier generators,
    /// starting from `from` and climbing to the top. Levels deeper than any
    /// touched level stay valid throughout.
    fn rebuild(&mut self) {
        if self.levels.is_empty() {
            return;
        }
        // Start at the deepest level so every level's orbit gets built at
        // least once; additions reported by process_level send the climb
        // back down before it resumes.
        let mut l = self.levels.len() - 1;
        loop {
            match self.process_level(l) {
                Some(j) => l = j,
                None => {
                    if l == 0 {
                        break;
                    }
                    l -= 1;
                }
            }
        }
    }

    /// Rebuilds the orbit at level `l` and sifts its Schreier generators.
    /// Returns the level where a new generator was filed, or None if the
    /// level is closed.
    fn process_level(&mut self, l: usize) -> Option<usize> {
        // Generating set for this level: everything added at l or deeper.
        let gens: Vec<Permutation> = self.levels[l..]
            .iter()
            .flat_map(|lev| lev.added.iter().cloned())
            .collect();
        let base = self.levels[l].base;
        {
            let lev = &mut self.levels[l];
            lev.orbit.clear();
            lev.transversal.clear();
            lev.orbit.push(base as u32);
            lev.transversal.insert(base as u32, Permutation::identity(self.degree));
        }
        let mut head = 0;
        while head < self.levels[l].orbit.len() {
            let gamma = self.levels[l].orbit[head] as usize;
            head += 1;
            for g in &gens {
                let delta = g.apply0(gamma) as u32;
                if !self.levels[l].transversal.contains_key(&delta) {
                    let t_gamma = &self.levels[l].transversal[&(gamma as u32)];
                    let rep = g.compose(t_gamma).expect("same degree");
                    self.levels[l].orbit.push(delta);
                    self.levels[l].transversal.insert(delta, rep);
                }
            }
        }
        // Schreier generators, in deterministic orbit-then-generator order.
        for head in 0..self.levels[l].orbit.len() {
            let gamma = self.levels[l].orbit[head];
            for g in &gens {
                let delta = g.apply0(gamma as usize) as u32;
                let t_gamma = &self.levels[l].transversal[&gamma];
                let t_delta = &self.levels[l].transversal[&delta];
                let s = t_delta
                    .inverse()
                    .compose(&g.compose(t_gamma).expect("same degree"))
                    .expect("same degree");
                if let Some(j) = self.sift_in(s, l + 1) {
                    return Some(j);
                }
            }
        }
        None
    }

    /// Sifts `p` through levels `from..`, filing the residue if the chain
    /// does not absorb it. Returns the level where a residue was filed.
    fn sift_in(&mut self, p: Permutation, from: usize) -> Option<usize> {
        let mut h = p;
        let mut j = from;
        loop {
            if h.is_identity() {
                return None;
            }
            if j == self.levels.len() {
                let b = h.first_moved().expect("non-identity");
                let mut level = Level::new(b);
                level.added.push(h);
                self.levels.push(level);
                return Some(j);
            }
            let base = self.levels[j].base;
            let gamma = h.apply0(base) as u32;
            if gamma as usize == base {
                j += 1;
                continue;
            }
            match self.levels[j].transversal.get(&gamma) {
                Some(t) => {
                    h = t.inverse().compose(&h).expect("same degree");
                    j += 1;
                }
                None => {
                    self.levels[j].added.push(h);
                    return Some(j);
                }
            }
        }
    }

    pub fn order(&self) -> BigUint {
        let mut ord = BigUint::one();
        for lev in &self.levels {
            ord *= BigUint::from(lev.orbit.len());
        }
        ord
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::LengthMismatch { expected: self.degree, got: p.degree() });
        }
        let mut h = p.clone();
        for lev in &self.levels {
            let gamma = h.apply0(lev.base) as u32;
            if gamma as usize == lev.base {
                continue;
            }
            match lev.transversal.get(&gamma) {
                Some(t) => h = t.inverse().compose(&h).expect("same degree"),
                None => return Ok(false),
            }
        }
        Ok(h.is_identity())
    }

    /// Adds `p` to the group if not already a member; returns whether the
    /// group grew.
    pub fn extend(&mut self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::LengthMismatch { expected: self.degree, got: p.degree() });
        }
        match self.sift_in(p.clone(), 0) {
            None => Ok(false),
            Some(_) => {
                self.rebuild();
                Ok(true)
            }
        }
    }

    /// Orbit of the level's base point under the level's stabilizer subgroup
    /// (0-based points, discovery order). Levels past the chain are trivial.
    pub fn orbit_at(&self, level: usize) -> &[u32] {
        static EMPTY: [u32; 0] = [];
        self.levels.get(level).map(|l| l.orbit.as_slice()).unwrap_or(&EMPTY)
    }

    pub fn base_len(&self) -> usize {
        self.levels.len()
    }

    /// Every group element, as products of transversal representatives
    /// top-down. Guarded against blowup.
    pub fn elements(&self) -> Result<Vec<Permutation>> {
        let cap = BigUint::from(1u32 << 20);
        if self.order() > cap {
            return Err(Error::Unsupported(format!(
                "element enumeration capped at 2^20, group has order {}",
                self.order()
            )));
        }
        let mut out = vec![Permutation::identity(self.degree)];
        for lev in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * lev.orbit.len());
            for &point in &lev.orbit {
                let t = &lev.transversal[&point];
                for p in &out {
                    next.push(t.compose(p).expect("same degree"));
                }
            }
            out = next;
        }
        Ok(out)
    }
}

/// Order of the group generated by `gens` (the trivial group for no
/// generators).
pub fn group_order(degree: usize, gens: &[Permutation]) -> Result<BigUint> {
    Ok(StabilizerChain::new(degree, gens)?.order())
}
