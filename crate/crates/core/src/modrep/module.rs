use std::fmt;
use std::sync::Arc;

use super::GroupAlgebra;
use crate::error::{dim_err, Error, Result};
use crate::field::Matrix;

/// A finite-dimensional left `kG`-module: one action matrix per group element.
#[derive(Clone)]
pub struct Module {
    algebra: Arc<GroupAlgebra>,
    dim: usize,
    action: Arc<Vec<Matrix>>,
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other) && self.dim == other.dim && self.action == other.action
    }
}

impl Eq for Module {}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module(dim {} over GF({}), |G| = {})", self.dim, self.p(), self.algebra.order())
    }
}

impl Module {
    /// Build a module from the full list of action matrices, checking that
    /// it is a representation of the group.
    pub fn new(algebra: Arc<GroupAlgebra>, action: Vec<Matrix>) -> Result<Self> {
        let n = algebra.order();
        if action.len() != n {
            return Err(Error::InvalidModule(format!("{} action matrices for a group of order {n}", action.len())));
        }
        let dim = action[0].rows();
        for (g, m) in action.iter().enumerate() {
            if m.p() != algebra.p() {
                return Err(Error::ModulusMismatch(m.p(), algebra.p()));
            }
            if m.shape() != (dim, dim) {
                return Err(Error::InvalidModule(format!(
                    "action of {g} has shape {:?}, expected {dim}x{dim}",
                    m.shape()
                )));
            }
        }
        if !action[0].is_identity() {
            return Err(Error::InvalidModule("identity does not act as the identity matrix".into()));
        }
        for g in 0..n {
            for h in 0..n {
                if &action[g] * &action[h] != action[algebra.mul(g, h)] {
                    return Err(Error::InvalidModule(format!("action(g)·action(h) != action(gh) at g = {g}, h = {h}")));
                }
            }
        }
        Ok(Self::new_unchecked(algebra, action))
    }

    /// Build a module from the images of the algebra's generators
    /// (in the order of [`GroupAlgebra::generators`]).
    pub fn from_generator_action(algebra: Arc<GroupAlgebra>, dim: usize, images: &[Matrix]) -> Result<Self> {
        let gens = algebra.generators();
        if images.len() != gens.len() {
            return Err(Error::InvalidModule(format!(
                "{} generator images for {} generators",
                images.len(),
                gens.len()
            )));
        }
        for m in images {
            if m.p() != algebra.p() {
                return Err(Error::ModulusMismatch(m.p(), algebra.p()));
            }
            if m.shape() != (dim, dim) {
                return Err(Error::InvalidModule(format!(
                    "generator image of shape {:?}, expected {dim}x{dim}",
                    m.shape()
                )));
            }
        }
        let p = algebra.p();
        let mut action = vec![Matrix::identity(p, dim); algebra.order()];
        for (g, link) in algebra.spanning_tree().iter().enumerate() {
            // the tree is breadth-first, so parents always precede children
            if let Some((parent, slot)) = *link {
                action[g] = &images[slot] * &action[parent];
            }
        }
        Self::new(algebra, action)
    }

    /// Build a module from the images of the given group elements, which
    /// must generate the group. The full action is checked afterwards.
    pub fn from_element_images(
        algebra: Arc<GroupAlgebra>,
        dim: usize,
        elements: &[usize],
        images: &[Matrix],
    ) -> Result<Self> {
        if elements.len() != images.len() {
            return Err(Error::InvalidModule(format!("{} images for {} elements", images.len(), elements.len())));
        }
        let p = algebra.p();
        for (&g, m) in elements.iter().zip(images) {
            if g >= algebra.order() {
                return Err(Error::InvalidGroup(format!("element {g} out of range")));
            }
            if m.p() != p {
                return Err(Error::ModulusMismatch(m.p(), p));
            }
            if m.shape() != (dim, dim) {
                return Err(Error::InvalidModule(format!(
                    "image of {g} has shape {:?}, expected {dim}x{dim}",
                    m.shape()
                )));
            }
        }
        let mut action: Vec<Option<Matrix>> = vec![None; algebra.order()];
        action[0] = Some(Matrix::identity(p, dim));
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for (&g, m) in elements.iter().zip(images) {
                let ge = algebra.mul(g, e);
                if action[ge].is_none() {
                    action[ge] = Some(m * action[e].as_ref().expect("visited"));
                    queue.push_back(ge);
                }
            }
        }
        let action: Option<Vec<Matrix>> = action.into_iter().collect();
        let action =
            action.ok_or_else(|| Error::InvalidGroup("the given elements do not generate the group".into()))?;
        Self::new(algebra, action)
    }

    pub(crate) fn new_unchecked(algebra: Arc<GroupAlgebra>, action: Vec<Matrix>) -> Self {
        let dim = action.first().map_or(0, Matrix::rows);
        Module { algebra, dim, action: Arc::new(action) }
    }

    fn scalar(algebra: Arc<GroupAlgebra>, dim: usize) -> Self {
        let action = vec![Matrix::identity(algebra.p(), dim); algebra.order()];
        Self::new_unchecked(algebra, action)
    }

    /// The trivial module `k`.
    pub fn trivial(algebra: Arc<GroupAlgebra>) -> Self {
        Self::scalar(algebra, 1)
    }

    pub fn zero(algebra: Arc<GroupAlgebra>) -> Self {
        Self::scalar(algebra, 0)
    }

    /// `dim`-dimensional module with trivial action.
    pub fn trivial_of_dim(algebra: Arc<GroupAlgebra>, dim: usize) -> Self {
        Self::scalar(algebra, dim)
    }

    /// The regular module `kG`, basis indexed by group elements.
    pub fn regular(algebra: Arc<GroupAlgebra>) -> Self {
        Self::permutation(algebra, &[0]).expect("the identity is a subgroup")
    }

    /// The permutation module `k[G/H]` on the left cosets of `subgroup`.
    pub fn permutation(algebra: Arc<GroupAlgebra>, subgroup: &[usize]) -> Result<Self> {
        let cosets = algebra.left_cosets(subgroup)?;
        let n = algebra.order();
        let mut which = vec![0; n];
        for (c, coset) in cosets.iter().enumerate() {
            for &x in coset {
                which[x] = c;
            }
        }
        let d = cosets.len();
        let p = algebra.p();
        let action = (0..n)
            .map(|g| {
                let mut m = Matrix::zeros(p, d, d);
                for (c, coset) in cosets.iter().enumerate() {
                    m.set(which[algebra.mul(g, coset[0])], c, 1);
                }
                m
            })
            .collect();
        Ok(Self::new_unchecked(algebra, action))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn p(&self) -> u32 {
        self.algebra.p()
    }

    pub fn algebra(&self) -> &Arc<GroupAlgebra> {
        &self.algebra
    }

    pub fn action(&self, g: usize) -> &Matrix {
        &self.action[g]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    /// Action matrices of the generators, in generator order.
    pub fn generator_action(&self) -> Vec<&Matrix> {
        self.algebra.generators().iter().map(|&g| &self.action[g]).collect()
    }

    pub fn same_algebra(&self, other: &Module) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra
    }

    pub(crate) fn check_algebra(&self, other: &Module) -> Result<()> {
        if self.same_algebra(other) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// `self ⊗ other` with diagonal action; basis `e_i ⊗ f_j` at index `i·dim(other) + j`.
    pub fn tensor(&self, other: &Module) -> Result<Module> {
        self.check_algebra(other)?;
        let action = self.action.iter().zip(other.action.iter()).map(|(a, b)| a.kron(b)).collect();
        Ok(Self::new_unchecked(self.algebra.clone(), action))
    }

    /// Contragredient module: `g` acts by the transpose of `action(g⁻¹)`.
    pub fn dual(&self) -> Module {
        let action = (0..self.algebra.order()).map(|g| self.action[self.algebra.inverse(g)].transpose()).collect();
        Self::new_unchecked(self.algebra.clone(), action)
    }

    pub fn direct_sum(&self, other: &Module) -> Result<DirectSum> {
        Self::direct_sum_of(&[self, other])
    }

    /// Direct sum of a list of modules with its embeddings and projections.
    pub fn direct_sum_of(parts: &[&Module]) -> Result<DirectSum> {
        let Some(first) = parts.first() else {
            return Err(Error::InvalidModule("direct sum of an empty list".into()));
        };
        for m in parts {
            first.check_algebra(m)?;
        }
        let p = first.p();
        let action = (0..first.algebra.order())
            .map(|g| Matrix::block_diag(p, &parts.iter().map(|m| &m.action[g]).collect::<Vec<_>>()))
            .collect();
        let sum = Self::new_unchecked(first.algebra.clone(), action);
        let total = sum.dim;
        let mut offset = 0;
        let mut inclusions = Vec::new();
        let mut projections = Vec::new();
        for m in parts {
            let mut inc = Matrix::zeros(p, total, m.dim);
            inc.set_block(offset, 0, &Matrix::identity(p, m.dim));
            let proj = inc.transpose();
            inclusions.push(ModuleMap::new_unchecked((*m).clone(), sum.clone(), inc));
            projections.push(ModuleMap::new_unchecked(sum.clone(), (*m).clone(), proj));
            offset += m.dim;
        }
        Ok(DirectSum { module: sum, inclusions, projections })
    }

    /// Submodule spanned by the columns of `basis` (assumed independent),
    /// with its inclusion.
    pub fn submodule(&self, basis: &Matrix) -> Result<(Module, ModuleMap)> {
        if basis.rows() != self.dim {
            return dim_err(format!("submodule basis has {} rows, module has dim {}", basis.rows(), self.dim));
        }
        if basis.rank() != basis.cols() {
            return Err(Error::InvalidModule("submodule basis is not linearly independent".into()));
        }
        let mut action = Vec::with_capacity(self.algebra.order());
        for g in 0..self.algebra.order() {
            match Matrix::coordinates(basis, &(&self.action[g] * basis))? {
                Some(c) => action.push(c),
                None => return Err(Error::InvalidModule(format!("subspace is not stable under element {g}"))),
            }
        }
        let sub = if basis.cols() == 0 {
            Module::zero(self.algebra.clone())
        } else {
            Self::new_unchecked(self.algebra.clone(), action)
        };
        let inc = ModuleMap::new_unchecked(sub.clone(), self.clone(), basis.clone());
        Ok((sub, inc))
    }

    /// Quotient by the submodule spanned by the columns of `basis`, with the
    /// projection. The quotient basis is the image of the lowest standard
    /// vectors completing `basis`.
    pub fn quotient(&self, basis: &Matrix) -> Result<(Module, ModuleMap)> {
        if basis.rows() != self.dim {
            return dim_err(format!("quotient basis has {} rows, module has dim {}", basis.rows(), self.dim));
        }
        let span = basis.column_space();
        for g in 0..self.algebra.order() {
            if !(&self.action[g] * &span).columns_in_span_of(&span)? {
                return Err(Error::InvalidModule(format!("subspace is not stable under element {g}")));
            }
        }
        let comp = span.complement_basis();
        let full = Matrix::hstack(self.p(), &[&span, &comp])?;
        let inv = full.inverse().expect("span and complement form a basis");
        let q = comp.cols();
        // coordinates on the complement part give the projection
        let proj = inv.submatrix(span.cols(), self.dim, 0, self.dim);
        let action: Vec<Matrix> = self.action.iter().map(|a| &(&proj * a) * &comp).collect();
        let quot =
            if q == 0 { Module::zero(self.algebra.clone()) } else { Self::new_unchecked(self.algebra.clone(), action) };
        let pi = ModuleMap::new_unchecked(self.clone(), quot.clone(), proj);
        Ok((quot, pi))
    }

    /// Fixed points `M^G` as a matrix whose columns are a basis.
    pub fn fixed_points(&self) -> Matrix {
        let p = self.p();
        let id = Matrix::identity(p, self.dim);
        let blocks: Vec<Matrix> = self.generator_action().into_iter().map(|a| a - &id).collect();
        let stacked = Matrix::vstack(p, &blocks.iter().collect::<Vec<_>>()).expect("square blocks");
        stacked.kernel_basis()
    }
}

/// A direct sum together with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: Module,
    pub inclusions: Vec<ModuleMap>,
    pub projections: Vec<ModuleMap>,
}

/// A `kG`-linear map; `matrix` has one column per source basis vector.
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleMap {
    source: Module,
    target: Module,
    matrix: Matrix,
}

impl fmt::Debug for ModuleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleMap({} -> {}) {:?}", self.source.dim, self.target.dim, self.matrix)
    }
}

impl ModuleMap {
    /// Checks shape and the intertwiner condition on generators, which
    /// implies it for every group element.
    pub fn new(source: Module, target: Module, matrix: Matrix) -> Result<Self> {
        let map = Self::new_unchecked(source, target, matrix);
        map.validate()?;
        Ok(map)
    }

    pub(crate) fn new_unchecked(source: Module, target: Module, matrix: Matrix) -> Self {
        ModuleMap { source, target, matrix }
    }

    /// Re-run the full intertwiner check against every group element.
    pub fn validate(&self) -> Result<()> {
        self.source.check_algebra(&self.target)?;
        if self.matrix.p() != self.source.p() {
            return Err(Error::ModulusMismatch(self.matrix.p(), self.source.p()));
        }
        if self.matrix.shape() != (self.target.dim, self.source.dim) {
            return dim_err(format!(
                "map matrix {:?} between modules of dim {} and {}",
                self.matrix.shape(),
                self.source.dim,
                self.target.dim
            ));
        }
        for &g in self.source.algebra.generators() {
            if &self.matrix * &self.source.action[g] != &self.target.action[g] * &self.matrix {
                return Err(Error::NotIntertwiner(format!("fails to commute with element {g}")));
            }
        }
        Ok(())
    }

    pub fn identity(m: &Module) -> Self {
        Self::new_unchecked(m.clone(), m.clone(), Matrix::identity(m.p(), m.dim))
    }

    pub fn zero(source: &Module, target: &Module) -> Result<Self> {
        source.check_algebra(target)?;
        Ok(Self::new_unchecked(source.clone(), target.clone(), Matrix::zeros(source.p(), target.dim, source.dim)))
    }

    pub fn p(&self) -> u32 {
        self.matrix.p()
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &ModuleMap) -> Result<ModuleMap> {
        if rhs.target != self.source {
            return dim_err(format!(
                "cannot compose: {} -> {} after {} -> {}",
                self.source.dim, self.target.dim, rhs.source.dim, rhs.target.dim
            ));
        }
        Ok(Self::new_unchecked(rhs.source.clone(), self.target.clone(), &self.matrix * &rhs.matrix))
    }

    fn check_parallel(&self, other: &ModuleMap) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return dim_err("maps are not parallel");
        }
        Ok(())
    }

    pub fn add(&self, other: &ModuleMap) -> Result<ModuleMap> {
        self.check_parallel(other)?;
        Ok(Self::new_unchecked(self.source.clone(), self.target.clone(), &self.matrix + &other.matrix))
    }

    pub fn sub(&self, other: &ModuleMap) -> Result<ModuleMap> {
        self.check_parallel(other)?;
        Ok(Self::new_unchecked(self.source.clone(), self.target.clone(), &self.matrix - &other.matrix))
    }

    pub fn scale(&self, c: u32) -> ModuleMap {
        Self::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.scale(c))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim
    }

    /// `f ⊗ g` between the tensor products of sources and targets.
    pub fn tensor(&self, other: &ModuleMap) -> Result<ModuleMap> {
        let source = self.source.tensor(&other.source)?;
        let target = self.target.tensor(&other.target)?;
        Ok(Self::new_unchecked(source, target, self.matrix.kron(&other.matrix)))
    }

    /// `ker f` as a submodule of the source, with its inclusion.
    pub fn kernel(&self) -> (Module, ModuleMap) {
        self.source.submodule(&self.matrix.kernel_basis()).expect("kernels are submodules")
    }

    /// `im f` as a submodule of the target, with its inclusion.
    pub fn image(&self) -> (Module, ModuleMap) {
        self.target.submodule(&self.matrix.column_space()).expect("images are submodules")
    }

    /// `coker f` with the projection from the target.
    pub fn cokernel(&self) -> (Module, ModuleMap) {
        self.target.quotient(&self.matrix).expect("images are submodules")
    }
}
