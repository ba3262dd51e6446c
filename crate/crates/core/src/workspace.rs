//! Workspace files: one JSON document declaring a prime, a group, named
//! modules, named complexes and named instances.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "name": "c2_gf2",
//!   "p": 2,
//!   "group": { "permutations": [[1, 0]] },
//!   "modules": { "k": { "action": [[[1]]] } },
//!   "complexes": { "k0": { "lo": 0, "terms": ["k"], "diffs": [] } },
//!   "instances": { "WkG": { "type": "tensor", "w": "k" } }
//! }
//! ```
//!
//! The group is given either by generating permutations or by a
//! multiplication table plus a list of generating elements. A module lists
//! one action matrix per generator, in that order. A complex either names
//! module terms (`terms`) or gives the dimensions of a complex of vector
//! spaces (`dims`), the objects of the graded-forgetful instance.
//! Matrices are arrays of rows of integers, reduced mod `p`.

use std::path::Path;
use std::sync::Arc;

use indexmap::IndexMap;
use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::complexes::{chain_map_basis, ChainMap, Complex};
use crate::error::{Error, Result};
use crate::field::Matrix;
use crate::modrep::{hom_space, GroupAlgebra, Module, ModuleMap};
use crate::triple::{validate_triple, GradedForgetful, TensorTriple, TripleReport};

pub const SCHEMA_VERSION: u32 = 1;

type Rows = Vec<Vec<i64>>;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkspaceFile {
    pub schema_version: u32,
    #[serde(default)]
    pub name: Option<String>,
    pub p: u32,
    pub group: GroupSpec,
    #[serde(default)]
    pub modules: IndexMap<String, ModuleSpec>,
    #[serde(default)]
    pub complexes: IndexMap<String, ComplexSpec>,
    #[serde(default)]
    pub instances: IndexMap<String, InstanceSpec>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    #[serde(default)]
    pub permutations: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub mult_table: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub generators: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    /// Needed only when the group has no generators.
    #[serde(default)]
    pub dim: Option<usize>,
    pub action: Vec<Rows>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSpec {
    pub lo: i64,
    #[serde(default)]
    pub terms: Option<Vec<String>>,
    #[serde(default)]
    pub dims: Option<Vec<usize>>,
    pub diffs: Vec<Rows>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum InstanceSpec {
    Tensor { w: String },
    GradedForgetful,
}

#[derive(Clone, Debug)]
pub enum Instance {
    Tensor { w: String, triple: TensorTriple },
    Graded(GradedForgetful),
}

/// A loaded and validated workspace.
#[derive(Clone, Debug)]
pub struct Workspace {
    pub name: String,
    pub p: u32,
    /// SHA-256 of the file bytes, hex encoded.
    pub digest: String,
    pub algebra: Arc<GroupAlgebra>,
    pub generators: Vec<usize>,
    pub modules: IndexMap<String, Module>,
    /// Complexes of modules over the workspace group.
    pub complexes: IndexMap<String, Complex>,
    /// Complexes of vector spaces, for the graded-forgetful instance.
    pub graded: IndexMap<String, Complex>,
    pub instances: IndexMap<String, Instance>,
    graded_triple: GradedForgetful,
}

fn ws_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Workspace(msg.into()))
}

fn matrix(p: u32, rows: &Rows, shape: (usize, usize), what: &str) -> Result<Matrix> {
    let (r, c) = shape;
    if r == 0 || c == 0 {
        if rows.iter().any(|row| !row.is_empty()) && r != rows.len() {
            return ws_err(format!("{what}: expected a {r}x{c} matrix"));
        }
        return Ok(Matrix::zeros(p, r, c));
    }
    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
        return ws_err(format!("{what}: expected a {r}x{c} matrix"));
    }
    Matrix::from_rows(p, rows)
}

fn square_dim(rows: &Rows, what: &str) -> Result<usize> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return ws_err(format!("{what}: action matrix is not square"));
    }
    Ok(n)
}

impl Workspace {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let bytes =
            std::fs::read(path).map_err(|e| Error::Workspace(format!("cannot read {}: {e}", path.display())))?;
        Self::from_bytes(&bytes)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let digest = hex::encode(Sha256::digest(bytes));
        let file: WorkspaceFile =
            serde_json::from_slice(bytes).map_err(|e| Error::Workspace(format!("malformed workspace: {e}")))?;
        Self::from_file(file, digest)
    }

    pub fn from_file(file: WorkspaceFile, digest: String) -> Result<Self> {
        if file.schema_version != SCHEMA_VERSION {
            return ws_err(format!(
                "schema version {} is not supported (expected {SCHEMA_VERSION})",
                file.schema_version
            ));
        }
        let p = file.p;
        let (algebra, generators) = match (&file.group.permutations, &file.group.mult_table) {
            (Some(perms), None) => {
                if file.group.generators.is_some() {
                    return ws_err("generators are implied by permutations");
                }
                GroupAlgebra::permutation_group(p, perms)?
            }
            (None, Some(table)) => {
                let alg = GroupAlgebra::from_table(p, table.clone())?;
                let gens = file.group.generators.clone().unwrap_or_else(|| alg.generators().to_vec());
                (alg, gens)
            }
            _ => return ws_err("group needs exactly one of permutations or mult_table"),
        };

        let mut modules = IndexMap::new();
        for (name, spec) in &file.modules {
            let what = format!("module {name}");
            if spec.action.len() != generators.len() {
                return ws_err(format!(
                    "{what}: {} action matrices for {} generators",
                    spec.action.len(),
                    generators.len()
                ));
            }
            let dim = match (spec.action.first(), spec.dim) {
                (Some(rows), _) => square_dim(rows, &what)?,
                (None, Some(d)) => d,
                (None, None) => return ws_err(format!("{what}: dim is required for a group without generators")),
            };
            let images =
                spec.action.iter().map(|rows| matrix(p, rows, (dim, dim), &what)).collect::<Result<Vec<_>>>()?;
            let m = if generators.is_empty() {
                Module::trivial_of_dim(algebra.clone(), dim)
            } else {
                Module::from_element_images(algebra.clone(), dim, &generators, &images)
                    .map_err(|e| Error::InvalidModule(format!("{name}: {e}")))?
            };
            modules.insert(name.clone(), m);
        }

        let graded_triple = GradedForgetful::new(p)?;
        let mut complexes = IndexMap::new();
        let mut graded = IndexMap::new();
        for (name, spec) in &file.complexes {
            let what = format!("complex {name}");
            match (&spec.terms, &spec.dims) {
                (Some(terms), None) => {
                    let mods = terms
                        .iter()
                        .map(|t| {
                            modules
                                .get(t)
                                .cloned()
                                .ok_or_else(|| Error::Workspace(format!("{what}: unknown module {t}")))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    let diffs = Self::diffs(p, spec, mods.iter().map(Module::dim).collect(), &what)?;
                    if mods.is_empty() {
                        complexes.insert(name.clone(), Complex::zero(algebra.clone()));
                        continue;
                    }
                    let c = Complex::new(spec.lo, mods, diffs)
                        .map_err(|e| Error::InvalidComplex(format!("{name}: {e}")))?;
                    complexes.insert(name.clone(), c);
                }
                (None, Some(dims)) => {
                    let diffs = Self::diffs(p, spec, dims.clone(), &what)?;
                    let c = graded_triple
                        .complex(spec.lo, diffs, dims)
                        .map_err(|e| Error::InvalidComplex(format!("{name}: {e}")))?;
                    graded.insert(name.clone(), c);
                }
                _ => return ws_err(format!("{what}: needs exactly one of terms or dims")),
            }
        }

        let mut instances = IndexMap::new();
        for (name, spec) in &file.instances {
            let inst = match spec {
                InstanceSpec::Tensor { w } => {
                    let module = modules
                        .get(w)
                        .ok_or_else(|| Error::Workspace(format!("instance {name}: unknown module {w}")))?;
                    Instance::Tensor { w: w.clone(), triple: TensorTriple::new(module)? }
                }
                InstanceSpec::GradedForgetful => Instance::Graded(graded_triple.clone()),
            };
            instances.insert(name.clone(), inst);
        }

        Ok(Workspace {
            name: file.name.unwrap_or_else(|| "workspace".into()),
            p,
            digest,
            algebra,
            generators,
            modules,
            complexes,
            graded,
            instances,
            graded_triple,
        })
    }

    fn diffs(p: u32, spec: &ComplexSpec, dims: Vec<usize>, what: &str) -> Result<Vec<Matrix>> {
        if spec.diffs.len() + 1 != dims.len().max(1) {
            return ws_err(format!("{what}: {} terms need {} differentials", dims.len(), dims.len().saturating_sub(1)));
        }
        spec.diffs.iter().enumerate().map(|(i, rows)| matrix(p, rows, (dims[i + 1], dims[i]), what)).collect()
    }

    pub fn module(&self, name: &str) -> Result<&Module> {
        self.modules.get(name).ok_or_else(|| Error::Workspace(format!("unknown module {name}")))
    }

    pub fn complex(&self, name: &str) -> Result<&Complex> {
        self.complexes.get(name).ok_or_else(|| Error::Workspace(format!("unknown complex {name}")))
    }

    pub fn graded_complex(&self, name: &str) -> Result<&Complex> {
        self.graded.get(name).ok_or_else(|| Error::Workspace(format!("unknown complex of vector spaces {name}")))
    }

    pub fn instance(&self, name: &str) -> Result<&Instance> {
        self.instances.get(name).ok_or_else(|| Error::Workspace(format!("unknown instance {name}")))
    }

    pub fn tensor(&self, name: &str) -> Result<&TensorTriple> {
        match self.instance(name)? {
            Instance::Tensor { triple, .. } => Ok(triple),
            Instance::Graded(_) => Err(Error::Precondition(format!("instance {name} is not a tensor instance"))),
        }
    }

    /// Run the structural checks of every instance: modules are checked
    /// against the tensor instances, with hom-space bases between them as
    /// sample maps; complexes of vector spaces against the graded ones.
    pub fn validate(&self) -> Result<Vec<(String, TripleReport)>> {
        let mut out = Vec::new();
        for (name, inst) in &self.instances {
            let report = match inst {
                Instance::Tensor { triple, .. } => {
                    let samples: Vec<(String, Module)> =
                        self.modules.iter().map(|(n, m)| (n.clone(), m.clone())).collect();
                    let mut maps: Vec<(String, ModuleMap)> = Vec::new();
                    for (a, x) in &self.modules {
                        for (b, y) in &self.modules {
                            for (i, f) in hom_space(x, y)?.into_iter().enumerate() {
                                maps.push((format!("{a}->{b}#{i}"), f));
                            }
                        }
                    }
                    validate_triple(triple, &samples, &maps)?
                }
                Instance::Graded(triple) => {
                    let samples: Vec<(String, Complex)> =
                        self.graded.iter().map(|(n, c)| (n.clone(), c.clone())).collect();
                    let mut maps: Vec<(String, ChainMap)> = Vec::new();
                    for (a, x) in &self.graded {
                        for (b, y) in &self.graded {
                            for (i, f) in chain_map_basis(x, y)?.into_iter().enumerate() {
                                maps.push((format!("{a}->{b}#{i}"), f));
                            }
                        }
                    }
                    validate_triple(triple, &samples, &maps)?
                }
            };
            out.push((name.clone(), report));
        }
        Ok(out)
    }

    pub fn graded_triple(&self) -> &GradedForgetful {
        &self.graded_triple
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const C2: &str = r#"{
        "schema_version": 1, "name": "t", "p": 2,
        "group": { "permutations": [[1, 0]] },
        "modules": { "k": { "action": [[[1]]] }, "kG": { "action": [[[0, 1], [1, 0]]] } },
        "complexes": {
            "norm": { "lo": 0, "terms": ["kG", "kG"], "diffs": [[[1, 1], [1, 1]]] },
            "line": { "lo": 0, "dims": [1, 1], "diffs": [[[1]]] }
        },
        "instances": { "W": { "type": "tensor", "w": "kG" }, "G": { "type": "graded_forgetful" } }
    }"#;

    #[test]
    fn loads_and_validates() {
        let ws = Workspace::from_bytes(C2.as_bytes()).unwrap();
        assert_eq!(ws.modules.len(), 2);
        assert_eq!(ws.complexes["norm"].dim_at(1), 2);
        assert_eq!(ws.graded["line"].dim_at(0), 1);
        assert_eq!(ws.digest.len(), 64);
        for (name, report) in ws.validate().unwrap() {
            assert!(report.passed(), "{name}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        let broken_table = r#"{ "schema_version": 1, "p": 2,
            "group": { "mult_table": [[0, 1, 2], [1, 0, 2], [2, 2, 0]] } }"#;
        assert!(matches!(Workspace::from_bytes(broken_table.as_bytes()), Err(Error::InvalidGroup(_))));
        let bad_ref = C2.replace(r#""w": "kG""#, r#""w": "nope""#);
        assert!(matches!(Workspace::from_bytes(bad_ref.as_bytes()), Err(Error::Workspace(_))));
        let not_rep = C2.replace("[[[0, 1], [1, 0]]]", "[[[1, 1], [0, 0]]]");
        assert!(matches!(Workspace::from_bytes(not_rep.as_bytes()), Err(Error::InvalidModule(_))));
        let not_complex = C2.replace("[[[1, 1], [1, 1]]]", "[[[1, 0], [0, 0]]]");
        assert!(Workspace::from_bytes(not_complex.as_bytes()).is_err());
        let version = C2.replace(r#""schema_version": 1"#, r#""schema_version": 9"#);
        assert!(matches!(Workspace::from_bytes(version.as_bytes()), Err(Error::Workspace(_))));
    }
}
