//! File formats: UTF-8 JSON-shaped documents for algebras, pair actions,
//! extension data and derivation pairs. Writers emit deterministic output
//! (tables are iterated in canonical key order, coefficients rendered as
//! exact rational strings).

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exactlin::{zero_vec, Matrix, Scalar};
use crate::extension::{ExtensionSpec, MixedAction, TriMapToH};
use crate::extendability::DerivationPair;
use crate::representation::PairAction;
use crate::trilie::{LinearMap, ThreeLieAlgebra};
use crate::Result;

/// Algebra document:
/// `{ "dim": n, "basis": [...], "brackets": [ { "args": [i,j,k], "value":
/// [ { "basis": l, "coeff": "p/q" }, ... ] }, ... ] }`
/// Indices are 0-based, `args` strictly increasing, omitted triples zero,
/// duplicate triples rejected.
#[derive(Debug, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub dim: usize,
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct BracketEntry {
    pub args: [usize; 3],
    pub value: Vec<CoeffEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CoeffEntry {
    pub basis: usize,
    pub coeff: Scalar,
}

fn coeffs_to_vec(dim: usize, entries: &[CoeffEntry], what: &str) -> Result<Vec<Scalar>> {
    let mut v = zero_vec(dim);
    let mut seen = Vec::new();
    for e in entries {
        if e.basis >= dim {
            return Err(Error::invalid(format!(
                "{what}: basis index {} out of range (dim {dim})",
                e.basis
            )));
        }
        if seen.contains(&e.basis) {
            return Err(Error::invalid(format!(
                "{what}: duplicate basis index {}",
                e.basis
            )));
        }
        seen.push(e.basis);
        v[e.basis] = e.coeff.clone();
    }
    Ok(v)
}

fn vec_to_coeffs(v: &[Scalar]) -> Vec<CoeffEntry> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(basis, coeff)| CoeffEntry {
            basis,
            coeff: coeff.clone(),
        })
        .collect()
}

impl AlgebraDoc {
    pub fn from_algebra(a: &ThreeLieAlgebra) -> Self {
        AlgebraDoc {
            dim: a.dim(),
            basis: a.basis_labels().to_vec(),
            brackets: a
                .structure_constants()
                .iter()
                .map(|(t, v)| BracketEntry {
                    args: *t,
                    value: vec_to_coeffs(v),
                })
                .collect(),
        }
    }

    pub fn into_algebra(self) -> Result<ThreeLieAlgebra> {
        let mut sc = BTreeMap::new();
        for entry in &self.brackets {
            let [i, j, k] = entry.args;
            if !(i < j && j < k) {
                return Err(Error::invalid(format!(
                    "bracket args {:?} must be strictly increasing",
                    entry.args
                )));
            }
            if sc
                .insert(entry.args, coeffs_to_vec(self.dim, &entry.value, "bracket value")?)
                .is_some()
            {
                return Err(Error::invalid(format!(
                    "duplicate bracket triple {:?}",
                    entry.args
                )));
            }
        }
        ThreeLieAlgebra::new(self.dim, self.basis, sc)
    }
}

/// Pair-action document: `{ "pairs": [ { "args": [i,j], "matrix":
/// [["p/q", ...], ...] }, ... ] }`, omitted pairs zero. The target
/// dimension is inferred from the matrices unless given explicitly.
#[derive(Debug, Serialize, Deserialize)]
pub struct PairActionDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_dim: Option<usize>,
    #[serde(default)]
    pub pairs: Vec<PairEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PairEntry {
    pub args: [usize; 2],
    pub matrix: Vec<Vec<Scalar>>,
}

fn matrix_from_rows(rows: &[Vec<Scalar>], what: &str) -> Result<Matrix> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|row| row.len() != c) {
        return Err(Error::invalid(format!("{what}: ragged matrix rows")));
    }
    Matrix::from_entries(r, c, rows.iter().flatten().cloned().collect())
}

fn matrix_to_rows(m: &Matrix) -> Vec<Vec<Scalar>> {
    (0..m.rows()).map(|r| m.row_vec(r)).collect()
}

impl PairActionDoc {
    pub fn from_action(rho: &PairAction) -> Self {
        PairActionDoc {
            target_dim: Some(rho.target_dim()),
            pairs: rho
                .table()
                .iter()
                .map(|(p, m)| PairEntry {
                    args: *p,
                    matrix: matrix_to_rows(m),
                })
                .collect(),
        }
    }

    /// `algebra_dim` comes from the companion algebra document.
    pub fn into_action(self, algebra_dim: usize) -> Result<PairAction> {
        let target_dim = match self.target_dim {
            Some(d) => d,
            None => match self.pairs.first() {
                Some(p) => p.matrix.len(),
                None => {
                    return Err(Error::invalid(
                        "cannot infer target dimension from an empty pair table; \
                         set \"target_dim\"",
                    ))
                }
            },
        };
        let mut table = BTreeMap::new();
        let mut seen = Vec::new();
        for entry in &self.pairs {
            if seen.contains(&entry.args) {
                return Err(Error::invalid(format!(
                    "duplicate action pair {:?}",
                    entry.args
                )));
            }
            seen.push(entry.args);
            table.insert(entry.args, matrix_from_rows(&entry.matrix, "pair action")?);
        }
        PairAction::new(algebra_dim, target_dim, table)
    }
}

/// Inline algebra or a path to an algebra document.
#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Path(String),
    Inline(AlgebraDoc),
}

impl AlgebraRef {
    fn resolve(self, base: Option<&Path>) -> Result<ThreeLieAlgebra> {
        match self {
            AlgebraRef::Inline(doc) => doc.into_algebra(),
            AlgebraRef::Path(p) => {
                let path = match base {
                    Some(dir) => dir.join(&p),
                    None => Path::new(&p).to_path_buf(),
                };
                read_algebra(&path)
            }
        }
    }
}

/// Extension document bundling the two factors (inline or by path) with the
/// three structure-map tables. Omitted tables are zero.
#[derive(Debug, Serialize, Deserialize)]
pub struct ExtensionDoc {
    pub m: AlgebraRef,
    pub h: AlgebraRef,
    #[serde(default)]
    pub mu: Vec<MuEntry>,
    #[serde(default)]
    pub rho: Option<PairActionDoc>,
    #[serde(default)]
    pub beta: Vec<MixedEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MuEntry {
    pub args: [usize; 3],
    pub value: Vec<CoeffEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MixedEntry {
    pub args: [usize; 2],
    pub matrix: Vec<Vec<Scalar>>,
}

impl ExtensionDoc {
    pub fn from_spec(spec: &ExtensionSpec) -> Self {
        ExtensionDoc {
            m: AlgebraRef::Inline(AlgebraDoc::from_algebra(spec.m())),
            h: AlgebraRef::Inline(AlgebraDoc::from_algebra(spec.h())),
            mu: spec
                .mu()
                .table()
                .iter()
                .map(|(t, v)| MuEntry {
                    args: *t,
                    value: vec_to_coeffs(v),
                })
                .collect(),
            rho: if spec.rho().is_zero() {
                None
            } else {
                Some(PairActionDoc::from_action(spec.rho()))
            },
            beta: spec
                .beta()
                .table()
                .iter()
                .map(|(p, m)| MixedEntry {
                    args: *p,
                    matrix: matrix_to_rows(m),
                })
                .collect(),
        }
    }

    /// `base` resolves relative algebra paths.
    pub fn into_spec(self, base: Option<&Path>) -> Result<ExtensionSpec> {
        let m = self.m.resolve(base)?;
        let h = self.h.resolve(base)?;
        let (md, hd) = (m.dim(), h.dim());
        let mut mu_table = BTreeMap::new();
        for entry in &self.mu {
            if mu_table
                .insert(entry.args, coeffs_to_vec(hd, &entry.value, "mu value")?)
                .is_some()
            {
                return Err(Error::invalid(format!(
                    "duplicate mu triple {:?}",
                    entry.args
                )));
            }
        }
        let mu = TriMapToH::new(md, hd, mu_table)?;
        let rho = match self.rho {
            Some(doc) => {
                let mut doc = doc;
                if doc.target_dim.is_none() {
                    doc.target_dim = Some(hd);
                }
                doc.into_action(md)?
            }
            None => PairAction::zero(md, hd),
        };
        let mut beta_table = BTreeMap::new();
        for entry in &self.beta {
            if beta_table
                .insert(entry.args, matrix_from_rows(&entry.matrix, "beta matrix")?)
                .is_some()
            {
                return Err(Error::invalid(format!(
                    "duplicate beta pair {:?}",
                    entry.args
                )));
            }
        }
        let beta = MixedAction::new(md, hd, beta_table)?;
        ExtensionSpec::new(m, h, mu, rho, beta)
    }
}

/// Derivation-pair document: `{ "sigma": [[..]], "tau": [[..]] }`.
#[derive(Debug, Serialize, Deserialize)]
pub struct PairDoc {
    pub sigma: Vec<Vec<Scalar>>,
    pub tau: Vec<Vec<Scalar>>,
}

impl PairDoc {
    pub fn from_pair(pair: &DerivationPair) -> Self {
        PairDoc {
            sigma: matrix_to_rows(pair.sigma().matrix()),
            tau: matrix_to_rows(pair.tau().matrix()),
        }
    }

    pub fn into_pair(self, spec: &ExtensionSpec) -> Result<DerivationPair> {
        let sigma = LinearMap::new(matrix_from_rows(&self.sigma, "sigma")?);
        let tau = LinearMap::new(matrix_from_rows(&self.tau, "tau")?);
        DerivationPair::new(spec.m(), spec.h(), sigma, tau)
    }
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

pub fn read_algebra(path: &Path) -> Result<ThreeLieAlgebra> {
    let text = std::fs::read_to_string(path)?;
    let doc: AlgebraDoc = parse_json(&text, &path.display().to_string())?;
    doc.into_algebra()
}

pub fn write_algebra_string(a: &ThreeLieAlgebra) -> String {
    serde_json::to_string_pretty(&AlgebraDoc::from_algebra(a)).expect("doc serializes")
}

pub fn read_extension(path: &Path) -> Result<ExtensionSpec> {
    let text = std::fs::read_to_string(path)?;
    let doc: ExtensionDoc = parse_json(&text, &path.display().to_string())?;
    doc.into_spec(path.parent())
}

pub fn write_extension_string(spec: &ExtensionSpec) -> String {
    serde_json::to_string_pretty(&ExtensionDoc::from_spec(spec)).expect("doc serializes")
}

pub fn read_pair(path: &Path, spec: &ExtensionSpec) -> Result<DerivationPair> {
    let text = std::fs::read_to_string(path)?;
    let doc: PairDoc = parse_json(&text, &path.display().to_string())?;
    doc.into_pair(spec)
}

pub fn read_pair_action(path: &Path, algebra_dim: usize) -> Result<PairAction> {
    let text = std::fs::read_to_string(path)?;
    let doc: PairActionDoc = parse_json(&text, &path.display().to_string())?;
    doc.into_action(algebra_dim)
}
