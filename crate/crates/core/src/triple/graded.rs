use std::sync::Arc;

use super::objects::{Morphism, Object};
use super::AdjointTriple;
use crate::complexes::{ChainMap, Complex};
use crate::error::{dim_err, Result};
use crate::field::Matrix;
use crate::modrep::{GroupAlgebra, Module};

/// A finite graded GF(p)-vector space: `dims[i]` is the dimension in degree `lo + i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSpace {
    p: u32,
    lo: i64,
    dims: Vec<usize>,
}

impl GradedSpace {
    pub fn new(p: u32, lo: i64, mut dims: Vec<usize>) -> Self {
        while dims.last() == Some(&0) {
            dims.pop();
        }
        let lead = dims.iter().take_while(|&&d| d == 0).count();
        dims.drain(..lead);
        let lo = if dims.is_empty() { 0 } else { lo + lead as i64 };
        GradedSpace { p, lo, dims }
    }

    pub fn dim_at(&self, n: i64) -> usize {
        let i = n - self.lo;
        if i >= 0 && (i as usize) < self.dims.len() {
            self.dims[i as usize]
        } else {
            0
        }
    }

    pub fn support(&self) -> Option<(i64, i64)> {
        (!self.dims.is_empty()).then(|| (self.lo, self.lo + self.dims.len() as i64 - 1))
    }

    /// `Y[k]^n = Y^{n+k}`.
    pub fn shift(&self, k: i64) -> GradedSpace {
        GradedSpace { p: self.p, lo: self.lo - k, dims: self.dims.clone() }
    }
}

fn union(a: &GradedSpace, b: &GradedSpace) -> (i64, i64) {
    match (a.support(), b.support()) {
        (Some((a0, a1)), Some((b0, b1))) => (a0.min(b0), a1.max(b1)),
        (Some(r), None) | (None, Some(r)) => r,
        (None, None) => (1, 0),
    }
}

/// Degree-preserving linear map of graded spaces, stored over the union of supports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    source: GradedSpace,
    target: GradedSpace,
    lo: i64,
    blocks: Vec<Matrix>,
}

impl GradedMap {
    pub fn new(source: GradedSpace, target: GradedSpace, lo: i64, blocks: Vec<Matrix>) -> Result<Self> {
        for (i, b) in blocks.iter().enumerate() {
            let n = lo + i as i64;
            let shape = (target.dim_at(n), source.dim_at(n));
            if b.shape() != shape || b.p() != source.p {
                return dim_err(format!("graded block in degree {n} has shape {:?}, expected {shape:?}", b.shape()));
            }
        }
        Ok(Self::from_fn(source, target, |n| {
            let i = n - lo;
            (i >= 0 && (i as usize) < blocks.len()).then(|| blocks[i as usize].clone())
        }))
    }

    pub(crate) fn from_fn(source: GradedSpace, target: GradedSpace, f: impl Fn(i64) -> Option<Matrix>) -> Self {
        let (a, b) = union(&source, &target);
        let p = source.p;
        let blocks =
            (a..=b).map(|n| f(n).unwrap_or_else(|| Matrix::zeros(p, target.dim_at(n), source.dim_at(n)))).collect();
        GradedMap { source, target, lo: a, blocks }
    }

    pub fn block(&self, n: i64) -> Matrix {
        let i = n - self.lo;
        if i >= 0 && (i as usize) < self.blocks.len() {
            self.blocks[i as usize].clone()
        } else {
            Matrix::zeros(self.source.p, self.target.dim_at(n), self.source.dim_at(n))
        }
    }
}

impl Object for GradedSpace {
    type Map = GradedMap;

    fn p(&self) -> u32 {
        self.p
    }

    fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Elementary matrices in each degree.
    fn hom_basis(&self, target: &Self) -> Result<Vec<GradedMap>> {
        let (a, b) = union(self, target);
        let mut out = Vec::new();
        for n in a..=b {
            let (r, c) = (target.dim_at(n), self.dim_at(n));
            for i in 0..r {
                for j in 0..c {
                    let mut e = Matrix::zeros(self.p, r, c);
                    e.set(i, j, 1);
                    out.push(GradedMap::from_fn(self.clone(), target.clone(), |m| (m == n).then(|| e.clone())));
                }
            }
        }
        Ok(out)
    }
}

impl Morphism for GradedMap {
    type Obj = GradedSpace;

    fn source(&self) -> &GradedSpace {
        &self.source
    }

    fn target(&self) -> &GradedSpace {
        &self.target
    }

    fn identity(x: &GradedSpace) -> Self {
        GradedMap::from_fn(x.clone(), x.clone(), |n| Some(Matrix::identity(x.p, x.dim_at(n))))
    }

    fn zero(x: &GradedSpace, y: &GradedSpace) -> Self {
        GradedMap::from_fn(x.clone(), y.clone(), |_| None)
    }

    fn compose(&self, rhs: &Self) -> Result<Self> {
        if rhs.target != self.source {
            return dim_err("graded maps are not composable");
        }
        Ok(GradedMap::from_fn(rhs.source.clone(), self.target.clone(), |n| Some(&self.block(n) * &rhs.block(n))))
    }

    fn add(&self, other: &Self) -> Result<Self> {
        if self.source != other.source || self.target != other.target {
            return dim_err("graded maps are not parallel");
        }
        Ok(GradedMap::from_fn(self.source.clone(), self.target.clone(), |n| Some(&self.block(n) + &other.block(n))))
    }

    fn scale(&self, c: u32) -> Self {
        GradedMap::from_fn(self.source.clone(), self.target.clone(), |n| Some(self.block(n).scale(c)))
    }

    fn to_vector(&self) -> Vec<u32> {
        self.blocks.iter().flat_map(|b| b.data().iter().copied()).collect()
    }

    fn total_rank(&self) -> usize {
        self.blocks.iter().map(Matrix::rank).sum()
    }

    fn validate(&self) -> Result<()> {
        Ok(())
    }

    fn kernel(&self) -> (GradedSpace, Self) {
        let (a, b) = union(&self.source, &self.target);
        let ks: Vec<Matrix> = (a..=b).map(|n| self.block(n).kernel_basis()).collect();
        let k = GradedSpace::new(self.source.p, a, ks.iter().map(Matrix::cols).collect());
        let inc = GradedMap::from_fn(k.clone(), self.source.clone(), |n| {
            (a..=b).contains(&n).then(|| ks[(n - a) as usize].clone())
        });
        (k, inc)
    }

    fn cokernel(&self) -> (GradedSpace, Self) {
        let (a, b) = union(&self.source, &self.target);
        // projection onto the coordinates of a complement of the image
        let projs: Vec<Matrix> = (a..=b)
            .map(|n| {
                let img = self.block(n).column_space();
                let comp = img.complement_basis();
                let full = Matrix::hstack(self.source.p, &[&img, &comp]).expect("same height");
                let inv = full.inverse().expect("basis");
                inv.submatrix(img.cols(), inv.rows(), 0, inv.cols())
            })
            .collect();
        let c = GradedSpace::new(self.source.p, a, projs.iter().map(Matrix::rows).collect());
        let proj = GradedMap::from_fn(self.target.clone(), c.clone(), |n| {
            (a..=b).contains(&n).then(|| projs[(n - a) as usize].clone())
        });
        (c, proj)
    }
}

/// Complexes of GF(p)-vector spaces, with `F` forgetting the differential.
///
/// `L(Y)^n = Y^n ⊕ Y^{n−1}` and `R(Y)^n = Y^{n+1} ⊕ Y^n`, both with
/// differential `(a, b) ↦ (0, a)`. With these placements `L ⊣ F ⊣ R`:
/// the counit is `(x_n, x_{n−1}) ↦ x_n + d x_{n−1}` and the unit is
/// `x ↦ (dx, x)`.
#[derive(Clone, Debug)]
pub struct GradedForgetful {
    algebra: Arc<GroupAlgebra>,
}

impl GradedForgetful {
    pub fn new(p: u32) -> Result<Self> {
        Ok(GradedForgetful { algebra: GroupAlgebra::trivial(p)? })
    }

    pub fn p(&self) -> u32 {
        self.algebra.p()
    }

    /// The ground field as the algebra of the trivial group.
    pub fn algebra(&self) -> &Arc<GroupAlgebra> {
        &self.algebra
    }

    pub fn space(&self, dim: usize) -> Module {
        Module::trivial_of_dim(self.algebra.clone(), dim)
    }

    /// Complex of vector spaces from dimensions and differential matrices.
    pub fn complex(&self, lo: i64, diffs: Vec<Matrix>, dims: &[usize]) -> Result<Complex> {
        Complex::new(lo, dims.iter().map(|&d| self.space(d)).collect(), diffs)
    }

    /// Both components of the two-summand terms `U^n ⊕ V^n` as one complex.
    fn two_summand(
        &self,
        lo: i64,
        hi: i64,
        first: impl Fn(i64) -> usize,
        second: impl Fn(i64) -> usize,
        d: impl Fn(i64) -> Matrix,
    ) -> Complex {
        Complex::from_fn(self.algebra.clone(), lo, hi, |n| self.space(first(n) + second(n)), d)
    }

    /// The isomorphism `cone(id_Y) → RFY`, `(a, b) ↦ (a + d b, b)`.
    pub fn cone_to_rf(&self, y: &Complex) -> ChainMap {
        let cone = ChainMap::identity(y).cone().complex;
        let rfy = self.r(&self.f(y));
        let p = self.p();
        ChainMap::from_fn(cone, rfy, |n| {
            let (a, b) = (y.dim_at(n + 1), y.dim_at(n));
            let mut m = Matrix::identity(p, a + b);
            m.set_block(0, a, &y.d_matrix(n));
            Some(m)
        })
    }

    /// Inverse of [`GradedForgetful::cone_to_rf`]: `(u, v) ↦ (u − d v, v)`.
    pub fn rf_to_cone(&self, y: &Complex) -> ChainMap {
        let cone = ChainMap::identity(y).cone().complex;
        let rfy = self.r(&self.f(y));
        let p = self.p();
        ChainMap::from_fn(rfy, cone, |n| {
            let (a, b) = (y.dim_at(n + 1), y.dim_at(n));
            let mut m = Matrix::identity(p, a + b);
            m.set_block(0, a, &y.d_matrix(n).scale(p - 1));
            Some(m)
        })
    }
}

fn support_or_empty(y: &GradedSpace) -> (i64, i64) {
    y.support().unwrap_or((1, 0))
}

impl AdjointTriple for GradedForgetful {
    type A = Complex;
    type B = GradedSpace;

    fn label(&self) -> String {
        "forget the differential".into()
    }

    fn f(&self, x: &Complex) -> GradedSpace {
        match x.support() {
            Some((a, b)) => GradedSpace::new(self.p(), a, (a..=b).map(|n| x.dim_at(n)).collect()),
            None => GradedSpace::new(self.p(), 0, Vec::new()),
        }
    }

    fn f_map(&self, h: &ChainMap) -> GradedMap {
        GradedMap::from_fn(self.f(h.source()), self.f(h.target()), |n| Some(h.component(n)))
    }

    fn l(&self, y: &GradedSpace) -> Complex {
        let (a, b) = support_or_empty(y);
        let p = self.p();
        self.two_summand(
            a,
            b + 1,
            |n| y.dim_at(n),
            |n| y.dim_at(n - 1),
            |n| {
                let mut m = Matrix::zeros(p, y.dim_at(n + 1) + y.dim_at(n), y.dim_at(n) + y.dim_at(n - 1));
                m.set_block(y.dim_at(n + 1), 0, &Matrix::identity(p, y.dim_at(n)));
                m
            },
        )
    }

    fn l_map(&self, h: &GradedMap) -> ChainMap {
        let p = self.p();
        ChainMap::from_fn(self.l(h.source()), self.l(h.target()), |n| {
            Some(Matrix::block_diag(p, &[&h.block(n), &h.block(n - 1)]))
        })
    }

    fn r(&self, y: &GradedSpace) -> Complex {
        let (a, b) = support_or_empty(y);
        let p = self.p();
        self.two_summand(
            a - 1,
            b,
            |n| y.dim_at(n + 1),
            |n| y.dim_at(n),
            |n| {
                let mut m = Matrix::zeros(p, y.dim_at(n + 2) + y.dim_at(n + 1), y.dim_at(n + 1) + y.dim_at(n));
                m.set_block(y.dim_at(n + 2), 0, &Matrix::identity(p, y.dim_at(n + 1)));
                m
            },
        )
    }

    fn r_map(&self, h: &GradedMap) -> ChainMap {
        let p = self.p();
        ChainMap::from_fn(self.r(h.source()), self.r(h.target()), |n| {
            Some(Matrix::block_diag(p, &[&h.block(n + 1), &h.block(n)]))
        })
    }

    fn counit(&self, x: &Complex) -> ChainMap {
        let lfx = self.l(&self.f(x));
        let p = self.p();
        ChainMap::from_fn(lfx, x.clone(), |n| {
            Matrix::hstack(p, &[&Matrix::identity(p, x.dim_at(n)), &x.d_matrix(n - 1)]).ok()
        })
    }

    fn unit(&self, x: &Complex) -> ChainMap {
        let rfx = self.r(&self.f(x));
        let p = self.p();
        ChainMap::from_fn(x.clone(), rfx, |n| {
            Matrix::vstack(p, &[&x.d_matrix(n), &Matrix::identity(p, x.dim_at(n))]).ok()
        })
    }

    fn left_unit(&self, y: &GradedSpace) -> GradedMap {
        let fly = self.f(&self.l(y));
        let p = self.p();
        GradedMap::from_fn(y.clone(), fly, |n| {
            let mut m = Matrix::zeros(p, y.dim_at(n) + y.dim_at(n - 1), y.dim_at(n));
            m.set_block(0, 0, &Matrix::identity(p, y.dim_at(n)));
            Some(m)
        })
    }

    fn right_counit(&self, y: &GradedSpace) -> GradedMap {
        let fry = self.f(&self.r(y));
        let p = self.p();
        GradedMap::from_fn(fry, y.clone(), |n| {
            let mut m = Matrix::zeros(p, y.dim_at(n), y.dim_at(n + 1) + y.dim_at(n));
            m.set_block(0, y.dim_at(n + 1), &Matrix::identity(p, y.dim_at(n)));
            Some(m)
        })
    }

    fn is_frobenius(&self) -> bool {
        false
    }
}
