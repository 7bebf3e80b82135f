//! Exact automorphism group computation: exhaustive search over all
//! coordinate permutations at tiny lengths, and a pruned backtrack over
//! refined coordinate classes up to length 16.

use crate::chain::StabilizerChain;
use crate::code::BinaryCode;
use crate::error::{Error, Result};
use crate::exec::{run_chunks, Exec};
use crate::perm::Permutation;
use num_bigint::BigUint;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMethod {
    Exhaustive,
    Backtrack,
}

#[derive(Debug)]
pub struct SearchResult {
    pub method: SearchMethod,
    pub order: BigUint,
    /// Reduced generating set in deterministic discovery order; every member
    /// re-checked against the code.
    pub generators: Vec<Permutation>,
    /// Coordinate classes (1-based) found by invariant refinement; None for
    /// the exhaustive search.
    pub partition: Option<Vec<Vec<usize>>>,
}

/// Code words packed into u64 for lengths <= 64.
struct PackedCode {
    gens: Vec<u64>,
    basis: Vec<(u32, u64)>,
}

impl PackedCode {
    fn new(code: &BinaryCode) -> Self {
        let gens = code.generators().iter().map(|g| g.as_word().unwrap()).collect();
        let basis = code
            .reduced_basis()
            .rows()
            .iter()
            .zip(code.reduced_basis().pivots())
            .map(|(row, &p)| (p as u32, row[0]))
            .collect();
        PackedCode { gens, basis }
    }

    fn member(&self, mut w: u64) -> bool {
        for &(piv, row) in &self.basis {
            if w >> piv & 1 == 1 {
                w ^= row;
            }
        }
        w == 0
    }

    fn preserves(&self, images: &[u32]) -> bool {
        self.gens.iter().all(|&g| {
            let mut out = 0u64;
            let mut bits = g;
            while bits != 0 {
                let c = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                out |= 1u64 << images[c];
            }
            self.member(out)
        })
    }
}

/// Tries all len! coordinate permutations. Supported at lengths 4 and 8
/// (40320 candidates); larger lengths need [`backtrack_group`].
pub fn exhaustive_group(code: &BinaryCode, exec: Exec) -> Result<SearchResult> {
    let len = code.len();
    if len != 4 && len != 8 {
        return Err(Error::Unsupported(format!(
            "exhaustive search covers lengths 4 and 8, got {len}"
        )));
    }
    let packed = PackedCode::new(code);

    // Chunks: the image of coordinate 0 (length 4) or of 0 and 1 (length 8).
    let chunks: Vec<Vec<u32>> = if len == 4 {
        (0..4u32).map(|a| vec![a]).collect()
    } else {
        let mut out = Vec::new();
        for a in 0..8u32 {
            for b in 0..8u32 {
                if a != b {
                    out.push(vec![a, b]);
                }
            }
        }
        out
    };

    struct ChunkOut {
        count: u64,
        kept: Vec<Permutation>,
    }

    let worker = |prefix: Vec<u32>| -> ChunkOut {
        let mut out = ChunkOut { count: 0, kept: Vec::new() };
        let mut chain = StabilizerChain::new(len, &[]).expect("empty chain");
        let mut images: Vec<u32> = prefix.clone();
        let mut used: u32 = prefix.iter().map(|&a| 1 << a).sum();
        fn go(
            images: &mut Vec<u32>,
            used: &mut u32,
            len: usize,
            packed: &PackedCode,
            out: &mut ChunkOut,
            chain: &mut StabilizerChain,
        ) {
            if images.len() == len {
                if packed.preserves(images) {
                    out.count += 1;
                    let p = Permutation::from_images0(images.clone()).expect("bijection");
                    if chain.extend(&p).expect("degree matches") {
                        out.kept.push(p);
                    }
                }
                return;
            }
            for y in 0..len as u32 {
                if *used >> y & 1 == 0 {
                    images.push(y);
                    *used |= 1 << y;
                    go(images, used, len, packed, out, chain);
                    images.pop();
                    *used &= !(1 << y);
                }
            }
        }
        go(&mut images, &mut used, len, &packed, &mut out, &mut chain);
        out
    };

    let results = run_chunks(chunks, exec, worker);
    let mut count = 0u64;
    let mut chain = StabilizerChain::new(len, &[]).expect("empty chain");
    let mut generators = Vec::new();
    for res in results {
        count += res.count;
        for p in res.kept {
            if chain.extend(&p)? {
                debug_assert!(crate::aut::is_automorphism(code, &p)?);
                generators.push(p);
            }
        }
    }
    assert_eq!(
        chain.order(),
        BigUint::from(count),
        "reduced generators must span every automorphism found"
    );
    Ok(SearchResult {
        method: SearchMethod::Exhaustive,
        order: BigUint::from(count),
        generators,
        partition: None,
    })
}

/// Per-coordinate and per-pair invariants of the codebook, used to refine
/// coordinate classes and prune the backtrack.
struct Invariants {
    len: usize,
    nweights: usize,
    /// joint[(w * len + c) * len + d]: codewords of the w-th weight class
    /// covering both c and d.
    joint: Vec<u16>,
    /// class id per coordinate, ids in first-touch order.
    classes: Vec<usize>,
    class_count: usize,
}

impl Invariants {
    fn new(words: &[u64], len: usize) -> Self {
        let mut weights: Vec<u32> = words.iter().map(|w| w.count_ones()).collect();
        weights.sort_unstable();
        weights.dedup();
        let nweights = weights.len();
        let mut joint = vec![0u16; nweights * len * len];
        for &word in words {
            let wi = weights.binary_search(&word.count_ones()).unwrap();
            let mut bits = word;
            while bits != 0 {
                let c = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let mut bits2 = word;
                while bits2 != 0 {
                    let d = bits2.trailing_zeros() as usize;
                    bits2 &= bits2 - 1;
                    joint[(wi * len + c) * len + d] += 1;
                }
            }
        }
        let mut inv = Invariants { len, nweights, joint, classes: vec![0; len], class_count: 1 };
        inv.refine();
        inv
    }

    fn joint_at(&self, wi: usize, c: usize, d: usize) -> u16 {
        self.joint[(wi * self.len + c) * self.len + d]
    }

    /// Iterated refinement: split classes by per-class multisets of joint
    /// counts until stable.
    fn refine(&mut self) {
        // Initial split by the diagonal profile.
        let keys: Vec<Vec<u16>> = (0..self.len)
            .map(|c| (0..self.nweights).map(|wi| self.joint_at(wi, c, c)).collect())
            .collect();
        self.assign_classes(&keys);
        loop {
            let before = self.class_count;
            let keys: Vec<Vec<u16>> = (0..self.len)
                .map(|c| {
                    let mut key: Vec<u16> = vec![self.classes[c] as u16];
                    for k in 0..self.class_count {
                        for wi in 0..self.nweights {
                            let mut counts: Vec<u16> = (0..self.len)
                                .filter(|&d| self.classes[d] == k && d != c)
                                .map(|d| self.joint_at(wi, c, d))
                                .collect();
                            counts.sort_unstable();
                            key.push(counts.len() as u16);
                            key.extend(counts);
                        }
                    }
                    key
                })
                .collect();
            self.assign_classes(&keys);
            if self.class_count == before {
                break;
            }
        }
    }

    fn assign_classes(&mut self, keys: &[Vec<u16>]) {
        let mut seen: Vec<(&Vec<u16>, usize)> = Vec::new();
        for c in 0..self.len {
            let id = match seen.iter().find(|(k, _)| **k == keys[c]) {
                Some(&(_, id)) => id,
                None => {
                    let id = seen.len();
                    seen.push((&keys[c], id));
                    id
                }
            };
            self.classes[c] = id;
        }
        self.class_count = seen.len();
    }

    fn class_members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.class_count];
        for (c, &k) in self.classes.iter().enumerate() {
            out[k].push(c + 1);
        }
        out
    }
}

/// One elimination pile: rows of 2K bits, pivots confined to the low K bits.
/// Detects linear dependencies among assigned source columns that fail to
/// hold among their image columns.
struct Pile {
    k: usize,
    rows: Vec<u32>,
}

enum PileStep {
    Pushed(bool),
    Inconsistent,
}

impl Pile {
    fn new(k: usize) -> Self {
        Pile { k, rows: Vec::new() }
    }

    fn push(&mut self, mut row: u32) -> PileStep {
        let low = (1u32 << self.k) - 1;
        loop {
            if row & low == 0 {
                return if row == 0 { PileStep::Pushed(false) } else { PileStep::Inconsistent };
            }
            let piv = (row & low).trailing_zeros();
            match self.rows.iter().find(|&&r| (r & low).trailing_zeros() == piv) {
                Some(&r) => row ^= r,
                None => {
                    self.rows.push(row);
                    return PileStep::Pushed(true);
                }
            }
        }
    }

    fn truncate(&mut self, to: usize) {
        self.rows.truncate(to);
    }

    fn len(&self) -> usize {
        self.rows.len()
    }
}

struct Backtracker {
    len: usize,
    inv: Invariants,
    cols: Vec<u32>,
    packed: PackedCode,
    chain: StabilizerChain,
    found: Vec<Permutation>,
    images: Vec<u32>,
    used: u32,
    fwd: Pile,
    bwd: Pile,
}

impl Backtracker {
    /// Candidate image y for the next coordinate c: class match, unused, all
    /// pairwise joint counts consistent, and no new linear contradiction.
    /// Pushes pile rows on success; the caller unwinds them.
    fn admit(&mut self, c: usize, y: usize) -> Option<(bool, bool)> {
        if self.used >> y & 1 == 1 || self.inv.classes[y] != self.inv.classes[c] {
            return None;
        }
        for d in 0..c {
            let yd = self.images[d] as usize;
            for wi in 0..self.inv.nweights {
                if self.inv.joint_at(wi, c, d) != self.inv.joint_at(wi, y, yd) {
                    return None;
                }
            }
        }
        let k = self.fwd.k;
        let row_f = self.cols[c] | self.cols[y] << k;
        let row_b = self.cols[y] | self.cols[c] << k;
        let fa = self.fwd.len();
        let pushed_f = match self.fwd.push(row_f) {
            PileStep::Inconsistent => return None,
            PileStep::Pushed(p) => p,
        };
        match self.bwd.push(row_b) {
            PileStep::Inconsistent => {
                self.fwd.truncate(fa);
                None
            }
            PileStep::Pushed(pushed_b) => Some((pushed_f, pushed_b)),
        }
    }

    fn unwind(&mut self, marks: (usize, usize)) {
        self.fwd.truncate(marks.0);
        self.bwd.truncate(marks.1);
    }

    /// Explores assignments for coordinates depth.. with the current prefix;
    /// returns the first full automorphism found, or None.
    fn find_first(&mut self, depth: usize) -> Option<Permutation> {
        if depth == self.len {
            debug_assert!(self.packed.preserves(&self.images));
            let p = Permutation::from_images0(self.images.clone()).expect("bijection");
            return Some(p);
        }
        for y in 0..self.len {
            let marks = (self.fwd.len(), self.bwd.len());
            if self.admit(depth, y).is_some() {
                self.images.push(y as u32);
                self.used |= 1 << y;
                let hit = self.find_first(depth + 1);
                self.images.pop();
                self.used &= !(1u32 << y);
                self.unwind(marks);
                if hit.is_some() {
                    return hit;
                }
            } else {
                self.unwind(marks);
            }
        }
        None
    }

    /// Walks the identity spine: at each depth, first continue the spine,
    /// then probe each non-identity image not already reachable by the known
    /// group, extending the group with the first automorphism of each probe.
    fn spine(&mut self, depth: usize) {
        if depth == self.len {
            return;
        }
        // Continue the spine with depth -> depth (always consistent).
        let marks = (self.fwd.len(), self.bwd.len());
        let admitted = self.admit(depth, depth);
        debug_assert!(admitted.is_some());
        self.images.push(depth as u32);
        self.used |= 1 << depth;
        self.spine(depth + 1);
        self.images.pop();
        self.used &= !(1u32 << depth);
        self.unwind(marks);

        for y in 0..self.len {
            if y == depth {
                continue;
            }
            // Skip images already reachable: some known automorphism fixing
            // 0..depth-1 already maps depth there.
            if self.chain.orbit_at(depth).contains(&(y as u32)) {
                continue;
            }
            let marks = (self.fwd.len(), self.bwd.len());
            if self.admit(depth, y).is_some() {
                self.images.push(y as u32);
                self.used |= 1 << y;
                let hit = self.find_first(depth + 1);
                self.images.pop();
                self.used &= !(1u32 << y);
                self.unwind(marks);
                if let Some(p) = hit {
                    let grew = self.chain.extend(&p).expect("degree matches");
                    debug_assert!(grew);
                    self.found.push(p);
                }
            } else {
                self.unwind(marks);
            }
        }
    }
}

/// Exact automorphism group by class-refined backtrack. Supported up to
/// length 16 and dimension 12 (the codebook is enumerated).
pub fn backtrack_group(code: &BinaryCode) -> Result<SearchResult> {
    let len = code.len();
    if len > 16 {
        return Err(Error::Unsupported(format!("backtrack search capped at length 16, got {len}")));
    }
    let k = code.dim();
    if k > 12 {
        return Err(Error::Unsupported(format!("backtrack search capped at dimension 12, got {k}")));
    }
    // Enumerate the codebook by Gray code over the reduced basis.
    let basis: Vec<u64> = code.reduced_basis().rows().iter().map(|r| r[0]).collect();
    let mut words = Vec::with_capacity(1 << k);
    let mut acc = 0u64;
    words.push(acc);
    for idx in 1u64..1 << k {
        acc ^= basis[idx.trailing_zeros() as usize];
        words.push(acc);
    }
    let inv = Invariants::new(&words, len);
    let partition = inv.class_members();
    // Column of each coordinate over the reduced basis rows.
    let cols: Vec<u32> = (0..len)
        .map(|c| {
            basis
                .iter()
                .enumerate()
                .fold(0u32, |acc, (r, row)| acc | (((row >> c & 1) as u32) << r))
        })
        .collect();
    let mut bt = Backtracker {
        len,
        inv,
        cols,
        packed: PackedCode::new(code),
        chain: StabilizerChain::with_base(len, &(0..len).collect::<Vec<_>>(), &[])?,
        found: Vec::new(),
        images: Vec::with_capacity(len),
        used: 0,
        fwd: Pile::new(k),
        bwd: Pile::new(k),
    };
    bt.spine(0);
    let generators = bt.found;
    for p in &generators {
        // The pruning layers are necessary conditions only by construction;
        // re-check each emitted generator against the code directly.
        if !crate::aut::is_automorphism(code, p)? {
            return Err(Error::InvalidParams(format!(
                "internal: backtrack emitted a non-automorphism {p}"
            )));
        }
    }
    Ok(SearchResult {
        method: SearchMethod::Backtrack,
        order: bt.chain.order(),
        generators,
        partition: Some(partition),
    })
}
