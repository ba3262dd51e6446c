use std::fmt;

use crate::complexes::{chain_map_basis, ChainMap, Complex};
use crate::error::Result;
use crate::field::{Matrix, Solution};
use crate::modrep::{hom_space, Module, ModuleMap};

/// Objects of a finite-dimensional GF(p)-linear category with computable
/// hom spaces.
pub trait Object: Clone + PartialEq + fmt::Debug {
    type Map: Morphism<Obj = Self>;
    fn p(&self) -> u32;
    fn total_dim(&self) -> usize;
    fn hom_basis(&self, target: &Self) -> Result<Vec<Self::Map>>;
    /// Some basis of the same space, possibly cheaper than the canonical one.
    fn hom_basis_unreduced(&self, target: &Self) -> Result<Vec<Self::Map>> {
        self.hom_basis(target)
    }
}

/// Morphisms, with enough structure for linear algebra on hom spaces.
pub trait Morphism: Clone + PartialEq + fmt::Debug {
    type Obj: Object<Map = Self>;
    fn source(&self) -> &Self::Obj;
    fn target(&self) -> &Self::Obj;
    fn identity(x: &Self::Obj) -> Self;
    fn zero(x: &Self::Obj, y: &Self::Obj) -> Self;
    /// `self ∘ rhs`.
    fn compose(&self, rhs: &Self) -> Result<Self>;
    fn add(&self, other: &Self) -> Result<Self>;
    fn scale(&self, c: u32) -> Self;
    /// Coordinates in a fixed basis of all linear maps between the underlying spaces.
    fn to_vector(&self) -> Vec<u32>;
    /// Sum of the ranks of the components.
    fn total_rank(&self) -> usize;
    fn validate(&self) -> Result<()>;
    fn kernel(&self) -> (Self::Obj, Self);
    fn cokernel(&self) -> (Self::Obj, Self);
}

/// `Σ coeffs[i] · basis[i]`.
pub fn combine_maps<M: Morphism>(basis: &[M], coeffs: &[u32], source: &M::Obj, target: &M::Obj) -> M {
    let mut acc = M::zero(source, target);
    for (b, &c) in basis.iter().zip(coeffs) {
        if c != 0 {
            acc = acc.add(&b.scale(c)).expect("parallel maps");
        }
    }
    acc
}

pub(crate) fn columns(p: u32, len: usize, vectors: &[Vec<u32>]) -> Matrix {
    let mut m = Matrix::zeros(p, len, vectors.len());
    for (j, v) in vectors.iter().enumerate() {
        for (i, &x) in v.iter().enumerate() {
            if x != 0 {
                m.set(i, j, x);
            }
        }
    }
    m
}

/// Find `c` with `op(Σ c_i basis_i) = goal` for linear `op`.
pub(crate) fn solve_in_span<M: Morphism>(
    basis: &[M],
    op: impl Fn(&M) -> Result<M>,
    goal: &M,
    source: &M::Obj,
    target: &M::Obj,
) -> Result<Option<M>> {
    let p = source.p();
    let g = goal.to_vector();
    if basis.is_empty() {
        return Ok(g.iter().all(|&x| x == 0).then(|| M::zero(source, target)));
    }
    let images: Vec<Vec<u32>> = basis.iter().map(|b| op(b).map(|m| m.to_vector())).collect::<Result<_>>()?;
    let system = columns(p, g.len(), &images);
    Ok(match system.solve(&columns(p, g.len(), &[g]))? {
        Solution::Inconsistent => None,
        Solution::Consistent { particular, .. } => {
            let c: Vec<u32> = (0..basis.len()).map(|i| particular.get(i, 0)).collect();
            Some(combine_maps(basis, &c, source, target))
        }
    })
}

/// A morphism `s` with `f ∘ s = id`, if one exists.
pub fn split_epi<M: Morphism>(f: &M) -> Result<Option<M>> {
    let basis = f.target().hom_basis(f.source())?;
    solve_in_span(&basis, |s| f.compose(s), &M::identity(f.target()), f.target(), f.source())
}

/// A morphism `r` with `r ∘ f = id`, if one exists.
pub fn split_mono<M: Morphism>(f: &M) -> Result<Option<M>> {
    let basis = f.target().hom_basis(f.source())?;
    solve_in_span(&basis, |r| r.compose(f), &M::identity(f.source()), f.target(), f.source())
}

impl Object for Module {
    type Map = ModuleMap;

    fn p(&self) -> u32 {
        Module::p(self)
    }

    fn total_dim(&self) -> usize {
        self.dim()
    }

    fn hom_basis(&self, target: &Self) -> Result<Vec<ModuleMap>> {
        hom_space(self, target)
    }

    fn hom_basis_unreduced(&self, target: &Self) -> Result<Vec<ModuleMap>> {
        crate::modrep::hom::hom_space_unreduced(self, target)
    }
}

impl Morphism for ModuleMap {
    type Obj = Module;

    fn source(&self) -> &Module {
        ModuleMap::source(self)
    }

    fn target(&self) -> &Module {
        ModuleMap::target(self)
    }

    fn identity(x: &Module) -> Self {
        ModuleMap::identity(x)
    }

    fn zero(x: &Module, y: &Module) -> Self {
        ModuleMap::new_unchecked(x.clone(), y.clone(), Matrix::zeros(x.p(), y.dim(), x.dim()))
    }

    fn compose(&self, rhs: &Self) -> Result<Self> {
        ModuleMap::compose(self, rhs)
    }

    fn add(&self, other: &Self) -> Result<Self> {
        ModuleMap::add(self, other)
    }

    fn scale(&self, c: u32) -> Self {
        ModuleMap::scale(self, c)
    }

    fn to_vector(&self) -> Vec<u32> {
        self.matrix().data().to_vec()
    }

    fn total_rank(&self) -> usize {
        self.rank()
    }

    fn validate(&self) -> Result<()> {
        ModuleMap::validate(self)
    }

    fn kernel(&self) -> (Module, Self) {
        ModuleMap::kernel(self)
    }

    fn cokernel(&self) -> (Module, Self) {
        ModuleMap::cokernel(self)
    }
}

impl Object for Complex {
    type Map = ChainMap;

    fn p(&self) -> u32 {
        Complex::p(self)
    }

    fn total_dim(&self) -> usize {
        Complex::total_dim(self)
    }

    fn hom_basis(&self, target: &Self) -> Result<Vec<ChainMap>> {
        chain_map_basis(self, target)
    }
}

impl Morphism for ChainMap {
    type Obj = Complex;

    fn source(&self) -> &Complex {
        ChainMap::source(self)
    }

    fn target(&self) -> &Complex {
        ChainMap::target(self)
    }

    fn identity(x: &Complex) -> Self {
        ChainMap::identity(x)
    }

    fn zero(x: &Complex, y: &Complex) -> Self {
        ChainMap::zero(x, y)
    }

    fn compose(&self, rhs: &Self) -> Result<Self> {
        ChainMap::compose(self, rhs)
    }

    fn add(&self, other: &Self) -> Result<Self> {
        ChainMap::add(self, other)
    }

    fn scale(&self, c: u32) -> Self {
        ChainMap::scale(self, c)
    }

    fn to_vector(&self) -> Vec<u32> {
        ChainMap::to_vector(self)
    }

    fn total_rank(&self) -> usize {
        self.source()
            .degrees()
            .chain(self.target().degrees())
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .map(|n| self.component(n).rank())
            .sum()
    }

    fn validate(&self) -> Result<()> {
        ChainMap::validate(self)
    }

    fn kernel(&self) -> (Complex, Self) {
        ChainMap::kernel(self)
    }

    fn cokernel(&self) -> (Complex, Self) {
        ChainMap::cokernel(self)
    }
}
