//! JSON wire formats. Key order is the struct declaration order and maps are
//! sorted, so serialization is byte-deterministic; group orders are always
//! decimal strings since they overflow machine integers immediately.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::aut::{AffineAutomorphisms, Classification};
use crate::code::BinaryCode;
use crate::error::{Error, Result};
use crate::eval::EvalVector;
use crate::monomial::{eval_to_anf, Monomial, MonomialSet};
use crate::perm::Permutation;
use crate::search::{SearchMethod, SearchResult};
use crate::theorems::VerificationReport;

fn monomial_to_indices(m: &Monomial) -> Vec<usize> {
    m.vars().collect()
}

fn indices_to_monomial(n: usize, indices: &[usize]) -> Result<Monomial> {
    Monomial::new(n, indices)
}

/// A code as `{ n, monomials, generators, dim }`. The monomial list (each
/// entry the sorted variable indices, `[]` for the constant) is
/// authoritative; generators and dim are re-derived on load and must match
/// when present.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CodeJson {
    pub n: usize,
    #[serde(default)]
    pub monomials: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub generators: Option<Vec<String>>,
    #[serde(default)]
    pub dim: Option<usize>,
}

impl CodeJson {
    pub fn from_code(code: &BinaryCode) -> Self {
        CodeJson {
            n: code.n(),
            monomials: Some(code.monomials().iter().map(monomial_to_indices).collect()),
            generators: Some(code.generators().iter().map(|g| g.to_string()).collect()),
            dim: Some(code.dim()),
        }
    }

    pub fn to_code(&self) -> Result<BinaryCode> {
        let set = match &self.monomials {
            Some(lists) => {
                let mut set = MonomialSet::new(self.n)?;
                for indices in lists {
                    set.insert(indices_to_monomial(self.n, indices)?)?;
                }
                set
            }
            None => {
                // Without the monomial list each generator must evaluate a
                // single monomial.
                let gens = self.generators.as_ref().ok_or_else(|| {
                    Error::Parse("code JSON needs \"monomials\" or \"generators\"".into())
                })?;
                let mut set = MonomialSet::new(self.n)?;
                for bits in gens {
                    let v = EvalVector::parse(bits)?;
                    if v.n() != self.n {
                        return Err(Error::NMismatch(self.n, v.n()));
                    }
                    let anf = eval_to_anf(&v);
                    if anf.len() != 1 {
                        return Err(Error::Parse(format!(
                            "generator {bits} is not a monomial evaluation (ANF {anf})"
                        )));
                    }
                    set.insert(*anf.iter().next().unwrap())?;
                }
                set
            }
        };
        let code = BinaryCode::from_monomials(&set)?;
        if let Some(gens) = &self.generators {
            let derived: Vec<String> = code.generators().iter().map(|g| g.to_string()).collect();
            let given: Vec<String> =
                gens.iter().map(|s| s.chars().filter(|c| *c != ' ').collect()).collect();
            if derived != given {
                return Err(Error::Parse(
                    "generator bitstrings disagree with the monomial list".into(),
                ));
            }
        }
        if let Some(dim) = self.dim {
            if dim != code.dim() {
                return Err(Error::Parse(format!(
                    "stated dim {dim} disagrees with the derived dim {}",
                    code.dim()
                )));
            }
        }
        Ok(code)
    }
}

/// A permutation list as `{ degree, generators }` with cycle strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneratorListJson {
    pub degree: usize,
    pub generators: Vec<String>,
}

impl GeneratorListJson {
    pub fn from_permutations(degree: usize, perms: &[Permutation]) -> Self {
        GeneratorListJson {
            degree,
            generators: perms.iter().map(|p| p.cycles_string()).collect(),
        }
    }

    pub fn to_permutations(&self) -> Result<Vec<Permutation>> {
        self.generators.iter().map(|s| Permutation::parse_cycles(s, self.degree)).collect()
    }
}

/// One prescribed image in an image system: variable index and the ANF of
/// its image as a list of monomial index lists.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ImageEntryJson {
    pub var: usize,
    pub anf: Vec<Vec<usize>>,
}

/// An image system as `{ n, images: [{var, anf}] }`; every variable must
/// appear exactly once.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ImagesJson {
    pub n: usize,
    pub images: Vec<ImageEntryJson>,
}

impl ImagesJson {
    pub fn to_image_sets(&self) -> Result<Vec<MonomialSet>> {
        let mut out: Vec<Option<MonomialSet>> = vec![None; self.n];
        for entry in &self.images {
            if entry.var >= self.n {
                return Err(Error::VarOutOfRange { index: entry.var, n: self.n });
            }
            if out[entry.var].is_some() {
                return Err(Error::Parse(format!("variable x{} appears twice", entry.var)));
            }
            let mut set = MonomialSet::new(self.n)?;
            for indices in &entry.anf {
                set.insert(indices_to_monomial(self.n, indices)?)?;
            }
            out[entry.var] = Some(set);
        }
        out.into_iter()
            .enumerate()
            .map(|(i, s)| s.ok_or_else(|| Error::Parse(format!("no image given for x{i}"))))
            .collect()
    }

    pub fn from_image_sets(images: &[MonomialSet]) -> Self {
        ImagesJson {
            n: images.len(),
            images: images
                .iter()
                .enumerate()
                .map(|(var, set)| ImageEntryJson {
                    var,
                    anf: set.iter().map(monomial_to_indices).collect(),
                })
                .collect(),
        }
    }
}

/// A classification verdict as `{ verdict, witness, presentation? }`.
/// The witness is `null` for an affine map (the presentation says it all),
/// the offending variable (e.g. "x3") for a non-affine automorphism, and
/// the monomial whose image escapes the code otherwise.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassificationJson {
    pub verdict: String,
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub presentation: Option<Vec<Vec<u8>>>,
}

impl ClassificationJson {
    pub fn from_classification(c: &Classification) -> Self {
        match c {
            Classification::Affine { map } => ClassificationJson {
                verdict: "affine".into(),
                witness: None,
                presentation: Some(map.presentation().rows_bits()),
            },
            Classification::NonAffine { var, .. } => ClassificationJson {
                verdict: "non_affine".into(),
                witness: Some(format!("x{var}")),
                presentation: None,
            },
            Classification::NotAutomorphism { generator, .. } => ClassificationJson {
                verdict: "not_automorphism".into(),
                witness: Some(generator.to_string()),
                presentation: None,
            },
        }
    }
}

/// A search result as `{ method, order, generators, partition? }`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchResultJson {
    pub method: String,
    pub order: String,
    pub generators: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub partition: Option<Vec<Vec<usize>>>,
}

impl SearchResultJson {
    pub fn from_result(r: &SearchResult) -> Self {
        SearchResultJson {
            method: match r.method {
                SearchMethod::Exhaustive => "exhaustive".into(),
                SearchMethod::Backtrack => "backtrack".into(),
            },
            order: r.order.to_string(),
            generators: r.generators.iter().map(|p| p.cycles_string()).collect(),
            partition: r.partition.clone(),
        }
    }
}

/// An affine census as `{ count, generators }`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AffineCensusJson {
    pub count: String,
    pub generators: Vec<String>,
}

impl AffineCensusJson {
    pub fn from_census(a: &AffineAutomorphisms) -> Self {
        AffineCensusJson {
            count: a.count.to_string(),
            generators: a.generators.iter().map(|g| g.perm.cycles_string()).collect(),
        }
    }
}

/// A verification report as `{ theorem, params, predicted_order,
/// constructed_order, exact_order, affine_count, generator_failures,
/// verdict }`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportJson {
    pub theorem: String,
    pub params: BTreeMap<String, String>,
    pub predicted_order: String,
    pub constructed_order: String,
    pub exact_order: Option<String>,
    pub affine_count: Option<String>,
    pub generator_failures: Vec<String>,
    pub verdict: String,
}

impl ReportJson {
    pub fn from_report(r: &VerificationReport) -> Self {
        ReportJson {
            theorem: r.prediction.theorem.to_string(),
            params: r.prediction.params.iter().cloned().collect(),
            predicted_order: r.prediction.predicted_order.to_string(),
            constructed_order: r.constructed_order.to_string(),
            exact_order: r.exact_order.as_ref().map(|o| o.to_string()),
            affine_count: r.affine_count.as_ref().map(|o| o.to_string()),
            generator_failures: r.generator_failures.clone(),
            verdict: if r.pass { "pass".into() } else { "fail".into() },
        }
    }
}
