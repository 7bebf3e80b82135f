//! Testing coordinate permutations against a code, classifying automorphisms
//! as affine or not, building permutations from prescribed variable images,
//! and enumerating the full affine automorphism group at small lengths.

use crate::affine::AffineMap;
use crate::chain::StabilizerChain;
use crate::code::BinaryCode;
use crate::error::{Error, Result};
use crate::exec::{run_chunks, Exec};
use crate::monomial::{eval_to_anf, Monomial, MonomialSet};
use crate::perm::Permutation;
use num_bigint::BigUint;

/// ANF of the push-forward of a monomial's evaluation.
pub fn image_anf(p: &Permutation, m: &Monomial) -> Result<MonomialSet> {
    Ok(eval_to_anf(&p.apply_to_vector(&m.evaluate())?))
}

/// Whether the push-forward of every generator stays in the code.
pub fn is_automorphism(code: &BinaryCode, p: &Permutation) -> Result<bool> {
    if p.degree() != code.len() {
        return Err(Error::LengthMismatch { expected: code.len(), got: p.degree() });
    }
    for g in code.generators() {
        if !code.contains(&p.apply_to_vector(g)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of classifying a permutation against a code.
#[derive(Clone, Debug)]
pub enum Classification {
    /// Every variable image is degree <= 1; the map collects them as rows.
    Affine { map: AffineMap },
    /// An automorphism, but some variable image has degree >= 2.
    NonAffine { var: usize, image: MonomialSet },
    /// Some generator's push-forward leaves the code.
    NotAutomorphism { generator_index: usize, generator: Monomial },
}

/// Tests the permutation and, if it preserves the code, extracts the affine
/// description of its action on the variables when one exists. The returned
/// map lists the variable images: row i is the ANF of the push-forward of
/// x_i. Its inverse, fed through [`AffineMap::to_permutation`], reproduces
/// the input permutation.
pub fn classify(code: &BinaryCode, p: &Permutation) -> Result<Classification> {
    if p.degree() != code.len() {
        return Err(Error::LengthMismatch { expected: code.len(), got: p.degree() });
    }
    for (gi, (m, g)) in code.monomials().iter().zip(code.generators()).enumerate() {
        if !code.contains(&p.apply_to_vector(g)?)? {
            return Ok(Classification::NotAutomorphism { generator_index: gi, generator: *m });
        }
    }
    let n = code.n();
    let mut rows = Vec::with_capacity(n);
    let mut b = 0u32;
    for i in 0..n {
        let image = image_anf(p, &Monomial::variable(n, i)?)?;
        if image.degree() > 1 {
            return Ok(Classification::NonAffine { var: i, image });
        }
        let mut row = 0u32;
        for m in image.iter() {
            if m.is_constant() {
                b |= 1 << i;
            } else {
                row |= m.mask();
            }
        }
        rows.push(row);
    }
    let map = AffineMap::new(n, rows, b)
        .expect("variable images of a coordinate permutation form an invertible system");
    Ok(Classification::Affine { map })
}

/// The coordinate permutation whose push-forward sends each x_i to the
/// prescribed ANF. images[i] is the image of x_i; there must be one entry
/// per variable, and the prescription must act bijectively on coordinates.
pub fn permutation_from_images(images: &[MonomialSet]) -> Result<Permutation> {
    let n = images.len();
    if n == 0 || n > crate::eval::MAX_N {
        return Err(Error::InvalidParams(format!("need 1..=20 variable images, got {n}")));
    }
    for im in images {
        if im.n() != n {
            return Err(Error::NMismatch(im.n(), n));
        }
    }
    let words: Vec<crate::eval::EvalVector> = images.iter().map(|im| im.anf_to_eval()).collect();
    let size = 1usize << n;
    let full = size - 1;
    // q must align the image signature at q(c) with the variable signature
    // at c, which is the bit pattern of the point ~c.
    let mut inv_sig: Vec<Option<u32>> = vec![None; size];
    for cp in 0..size {
        let mut sig = 0usize;
        for (i, w) in words.iter().enumerate() {
            sig |= (w.get(cp) as usize) << i;
        }
        if inv_sig[sig].replace(cp as u32).is_some() {
            return Err(Error::NotAPermutation(
                "prescribed variable images do not act bijectively on coordinates".into(),
            ));
        }
    }
    let imgs = (0..size).map(|c| inv_sig[full ^ c].expect("all signatures hit")).collect();
    Permutation::from_images0(imgs)
}

/// One reduced generator of the affine automorphism group: the inducing
/// affine map together with its coordinate permutation.
#[derive(Clone, Debug)]
pub struct AffineGenerator {
    pub map: AffineMap,
    pub perm: Permutation,
}

/// Exact census of the affine permutations preserving the code.
#[derive(Debug)]
pub struct AffineAutomorphisms {
    pub count: u64,
    /// Reduced generating set in deterministic discovery order.
    pub generators: Vec<AffineGenerator>,
}

/// Packed variable images of one candidate map: row i and constant bit i
/// describe the image of x_i.
struct Candidate {
    rows: Vec<u32>,
    b: u32,
}

struct ChunkResult {
    count: u64,
    kept: Vec<(Candidate, Permutation)>,
}

/// Walks every invertible map over the variables (n <= 5, so up to |AGL(5,2)|
/// ~ 3.2e8 candidates) and tests whether the induced coordinate permutation
/// preserves the code. Work is split into chunks by the images of x_0 and
/// x_1; the chunk list and all per-chunk scans are ordered, so results are
/// identical for sequential and parallel execution.
pub fn enumerate_affine_automorphisms(
    code: &BinaryCode,
    exec: Exec,
) -> Result<AffineAutomorphisms> {
    let n = code.n();
    if n > 5 {
        return Err(Error::Unsupported(format!(
            "affine enumeration walks all of AGL(n,2); capped at n = 5, got n = {n}"
        )));
    }
    let size = 1usize << n;
    let full = (1u32 << n) - 1;
    let ones: u64 = if size == 64 { u64::MAX } else { (1u64 << size) - 1 };
    // Evaluation word per variable.
    let xeval: Vec<u64> = (0..n)
        .map(|i| Monomial::variable(n, i).unwrap().evaluate().as_word().unwrap())
        .collect();
    // Reduced membership basis, packed.
    let basis: Vec<(u32, u64)> = code
        .reduced_basis()
        .rows()
        .iter()
        .zip(code.reduced_basis().pivots())
        .map(|(row, &p)| (p as u32, row[0]))
        .collect();
    // Generator variable masks, highest degree first: the most binding test
    // runs first so failures exit early.
    let gen_masks: Vec<u32> = {
        let mut ms: Vec<&Monomial> = code.monomials().iter().collect();
        ms.sort_by(|a, b| b.degree().cmp(&a.degree()).then(a.cmp(b)));
        ms.iter().map(|m| m.mask()).collect()
    };

    // Chunks: images of x_0 (and x_1 when n >= 2).
    let chunks: Vec<Vec<u32>> = if n == 1 {
        vec![vec![1]]
    } else {
        let mut out = Vec::new();
        for r0 in 1..=full {
            for r1 in 1..=full {
                if r1 != r0 {
                    out.push(vec![r0, r1]);
                }
            }
        }
        out
    };

    let worker = |prefix: Vec<u32>| -> ChunkResult {
        let mut res = ChunkResult { count: 0, kept: Vec::new() };
        let mut chain = StabilizerChain::new(size, &[]).expect("empty chain");
        let mut rows = prefix;
        let mut forms = vec![0u64; n];
        search_rows(
            &mut rows,
            n,
            full,
            &mut |rows: &[u32]| {
                for (i, &row) in rows.iter().enumerate() {
                    let mut w = 0u64;
                    let mut bits = row;
                    while bits != 0 {
                        let j = bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        w ^= xeval[j];
                    }
                    forms[i] = w;
                }
                'b: for b in 0..=full {
                    for &mask in &gen_masks {
                        let mut img = ones;
                        let mut bits = mask;
                        while bits != 0 {
                            let i = bits.trailing_zeros() as usize;
                            bits &= bits - 1;
                            img &= forms[i] ^ if b >> i & 1 == 1 { ones } else { 0 };
                        }
                        for &(piv, row) in &basis {
                            if img >> piv & 1 == 1 {
                                img ^= row;
                            }
                        }
                        if img != 0 {
                            continue 'b;
                        }
                    }
                    res.count += 1;
                    let perm = candidate_permutation(rows, b, &forms, ones, size);
                    if chain.extend(&perm).expect("degree matches") {
                        res.kept.push((Candidate { rows: rows.to_vec(), b }, perm));
                    }
                }
            },
        );
        res
    };

    let results = run_chunks(chunks, exec, worker);

    let mut count = 0u64;
    let mut chain = StabilizerChain::new(size, &[]).expect("empty chain");
    let mut generators = Vec::new();
    for res in results {
        count += res.count;
        for (cand, perm) in res.kept {
            if chain.extend(&perm)? {
                let images_map = AffineMap::new(n, cand.rows, cand.b)
                    .expect("enumerated rows are invertible");
                let map = images_map.inverse();
                debug_assert_eq!(map.to_permutation(), perm);
                generators.push(AffineGenerator { map, perm });
            }
        }
    }
    assert_eq!(
        chain.order(),
        BigUint::from(count),
        "reduced generators must span every affine automorphism found"
    );
    Ok(AffineAutomorphisms { count, generators })
}

/// Extends `rows` to a full invertible matrix in lexicographic order,
/// invoking `visit` on each completion.
fn search_rows(rows: &mut Vec<u32>, n: usize, full: u32, visit: &mut impl FnMut(&[u32])) {
    // Reject dependent prefixes (only relevant for the forced first rows).
    let mut basis: Vec<u32> = Vec::new();
    for &r in rows.iter() {
        let mut x = r;
        for &bv in &basis {
            x = x.min(x ^ bv);
        }
        if x == 0 {
            return;
        }
        basis.push(x);
        basis.sort_unstable_by(|a, b| b.cmp(a));
    }
    fn go(
        rows: &mut Vec<u32>,
        basis: &mut Vec<u32>,
        n: usize,
        full: u32,
        visit: &mut impl FnMut(&[u32]),
    ) {
        if rows.len() == n {
            visit(rows);
            return;
        }
        for r in 1..=full {
            let mut x = r;
            for &bv in basis.iter() {
                x = x.min(x ^ bv);
            }
            if x == 0 {
                continue;
            }
            rows.push(r);
            basis.push(x);
            basis.sort_unstable_by(|a, b| b.cmp(a));
            go(rows, basis, n, full, visit);
            rows.pop();
            let pos = basis.iter().position(|&bv| bv == x).expect("just inserted");
            basis.remove(pos);
        }
    }
    go(rows, &mut basis, n, full, visit);
}

/// Builds the coordinate permutation of the map whose variable-image words
/// are forms[i] ^ b_i, by matching image signatures to point signatures.
fn candidate_permutation(rows: &[u32], b: u32, forms: &[u64], ones: u64, size: usize) -> Permutation {
    let _ = rows;
    let full = size - 1;
    let mut inv_sig = vec![0u32; size];
    for cp in 0..size {
        let mut sig = 0usize;
        for (i, &form) in forms.iter().enumerate() {
            let w = form ^ if b >> i & 1 == 1 { ones } else { 0 };
            sig |= (w as usize >> cp & 1) << i;
        }
        inv_sig[sig] = cp as u32;
    }
    let images = (0..size).map(|c| inv_sig[full ^ c]).collect();
    Permutation::from_images0(images).expect("affine maps act bijectively")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::fiber_swap_by;

    fn rm(r: usize, n: usize) -> BinaryCode {
        BinaryCode::reed_muller(r, n).unwrap()
    }

    fn perm(s: &str, d: usize) -> Permutation {
        Permutation::parse_cycles(s, d).unwrap()
    }

    #[test]
    fn image_anf_of_coordinate_swap() {
        // The swap of the halves is the translation x2 -> x2 + 1.
        let p = perm("(1,5)(2,6)(3,7)(4,8)", 8);
        let x2 = Monomial::variable(3, 2).unwrap();
        assert_eq!(image_anf(&p, &x2).unwrap().to_string(), "1 + x2");
        let x0 = Monomial::variable(3, 0).unwrap();
        assert_eq!(image_anf(&p, &x0).unwrap().to_string(), "x0");
    }

    #[test]
    fn automorphism_test_distinguishes_codes() {
        // The full cycle preserves the cyclic span of {1, x0, x1} inside
        // length 8, but not RM(1,3).
        let cycle = perm("(1,2,3,4,5,6,7,8)", 8);
        let small = BinaryCode::from_monomials(&MonomialSet::parse("1,x0,x1", 3).unwrap()).unwrap();
        assert!(is_automorphism(&small, &cycle).unwrap());
        assert!(!is_automorphism(&rm(1, 3), &cycle).unwrap());
        // Any coordinate transposition fixes RM(0,3) and the full space.
        assert!(is_automorphism(&rm(0, 3), &perm("(2,5)", 8)).unwrap());
        assert!(is_automorphism(&rm(3, 3), &perm("(2,5)", 8)).unwrap());
        // But not RM(1,3): transpositions break linearity there.
        assert!(!is_automorphism(&rm(1, 3), &perm("(2,5)", 8)).unwrap());
    }

    #[test]
    fn classify_affine_example() {
        let p = perm("(1,7,5,3)(2,8,6,4)", 8);
        match classify(&rm(1, 3), &p).unwrap() {
            Classification::Affine { map } => {
                assert_eq!(
                    map.presentation().rows_bits(),
                    vec![
                        vec![1, 0, 0, 0],
                        vec![0, 1, 0, 0],
                        vec![1, 0, 1, 0],
                        vec![1, 0, 1, 1],
                    ]
                );
                // The inverse map induces the original permutation.
                assert_eq!(map.inverse().to_permutation(), p);
            }
            other => panic!("expected affine, got {other:?}"),
        }
    }

    #[test]
    fn classify_non_affine_and_rejection() {
        // The fiber swap along x0x1 preserves RM(2,3) but moves x2 by a
        // quadratic.
        let p = fiber_swap_by(&MonomialSet::parse("x0x1", 3).unwrap()).unwrap();
        match classify(&rm(2, 3), &p).unwrap() {
            Classification::NonAffine { var, image } => {
                assert_eq!(var, 2);
                assert_eq!(image.to_string(), "x2 + x0x1");
            }
            other => panic!("expected non-affine, got {other:?}"),
        }
        // The same permutation is rejected by RM(1,3), blaming a generator.
        match classify(&rm(1, 3), &p).unwrap() {
            Classification::NotAutomorphism { generator, .. } => {
                assert_eq!(generator.to_string(), "x2");
            }
            other => panic!("expected rejection, got {other:?}"),
        }
        // An 8-cycle preserving a smaller code is still non-affine there.
        let small = BinaryCode::from_monomials(&MonomialSet::parse("1,x0,x1", 3).unwrap()).unwrap();
        let cycle = perm("(1,2,3,4,5,6,7,8)", 8);
        assert!(matches!(
            classify(&small, &cycle).unwrap(),
            Classification::NonAffine { .. }
        ));
    }

    #[test]
    fn classified_map_roundtrips_through_inversion() {
        // For every lower-triangular generator permutation p of RM(1,3),
        // classify extracts the variable images; rebuilding from the inverse
        // map returns p.
        for g in crate::affine::lower_triangular_generators(3).unwrap() {
            let p = g.to_permutation();
            match classify(&rm(1, 3), &p).unwrap() {
                Classification::Affine { map } => {
                    assert_eq!(map.inverse().to_permutation(), p);
                    // And the extracted images are the inverse of g's rows.
                    assert_eq!(map, g.inverse());
                }
                other => panic!("expected affine, got {other:?}"),
            }
        }
    }

    #[test]
    fn permutation_from_images_examples() {
        // Rebuild the classified example from its variable images.
        let images = vec![
            MonomialSet::parse("x0", 3).unwrap(),
            MonomialSet::parse("1, x1", 3).unwrap(),
            MonomialSet::parse("1, x1, x2", 3).unwrap(),
        ];
        let p = permutation_from_images(&images).unwrap();
        assert_eq!(p.cycles_string(), "(1,7,5,3)(2,8,6,4)");
        // A quadratic image matches the fiber swap construction.
        let images = vec![
            MonomialSet::parse("x0", 3).unwrap(),
            MonomialSet::parse("x1", 3).unwrap(),
            MonomialSet::parse("x2, x0x1", 3).unwrap(),
        ];
        let p = permutation_from_images(&images).unwrap();
        assert_eq!(p, fiber_swap_by(&MonomialSet::parse("x0x1", 3).unwrap()).unwrap());
        // Non-bijective prescriptions are rejected.
        let images = vec![
            MonomialSet::parse("x1", 2).unwrap(),
            MonomialSet::parse("x1", 2).unwrap(),
        ];
        assert!(permutation_from_images(&images).is_err());
        let images = vec![
            MonomialSet::parse("1", 2).unwrap(),
            MonomialSet::parse("x1", 2).unwrap(),
        ];
        assert!(permutation_from_images(&images).is_err());
    }

    #[test]
    fn identity_images_give_identity() {
        let images: Vec<MonomialSet> = (0..3)
            .map(|i| {
                MonomialSet::from_monomials(3, [Monomial::variable(3, i).unwrap()]).unwrap()
            })
            .collect();
        assert!(permutation_from_images(&images).unwrap().is_identity());
    }

    #[test]
    fn affine_group_of_rm12_is_agl2() {
        // Every affine permutation preserves RM(1,2): |AGL(2,2)| = 24.
        let res = enumerate_affine_automorphisms(&rm(1, 2), Exec::Seq).unwrap();
        assert_eq!(res.count, 24);
        for g in &res.generators {
            assert!(is_automorphism(&rm(1, 2), &g.perm).unwrap());
            assert_eq!(g.map.to_permutation(), g.perm);
        }
    }

    #[test]
    fn affine_group_of_rm13_is_agl3() {
        let res = enumerate_affine_automorphisms(&rm(1, 3), Exec::Seq).unwrap();
        assert_eq!(res.count, 1344);
    }

    #[test]
    fn affine_group_respects_code_structure() {
        // {1, x0, x1} in length 8: affine maps must fix the pencil through
        // x0, x1; count verified against an independent brute force.
        let code = BinaryCode::from_monomials(&MonomialSet::parse("1,x0,x1", 3).unwrap()).unwrap();
        let res = enumerate_affine_automorphisms(&code, Exec::Seq).unwrap();
        assert_eq!(res.count, 192);
    }

    #[test]
    fn affine_enumeration_parallel_matches_sequential() {
        let code = BinaryCode::reed_muller_plus(1, 3).unwrap();
        let seq = enumerate_affine_automorphisms(&code, Exec::Seq).unwrap();
        let par = enumerate_affine_automorphisms(&code, Exec::Par).unwrap();
        assert_eq!(seq.count, par.count);
        assert_eq!(seq.generators.len(), par.generators.len());
        for (a, b) in seq.generators.iter().zip(&par.generators) {
            assert_eq!(a.perm, b.perm);
            assert_eq!(a.map, b.map);
        }
    }

    #[test]
    fn affine_enumeration_n1() {
        let code = BinaryCode::reed_muller(0, 1).unwrap();
        let res = enumerate_affine_automorphisms(&code, Exec::Seq).unwrap();
        assert_eq!(res.count, 2);
    }
}
