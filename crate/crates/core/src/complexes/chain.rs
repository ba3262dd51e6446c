use std::fmt;

use super::complex::{union_range, Complex};
use crate::error::{dim_err, Error, Result};
use crate::field::Matrix;
use crate::modrep::ModuleMap;

/// Degree-preserving map of complexes. Components are stored over the union
/// of the two supports; they vanish elsewhere.
#[derive(Clone, PartialEq, Eq)]
pub struct ChainMap {
    source: Complex,
    target: Complex,
    lo: i64,
    comps: Vec<Matrix>,
}

impl fmt::Debug for ChainMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ChainMap")
            .field("source", &self.source)
            .field("target", &self.target)
            .field("lo", &self.lo)
            .field("comps", &self.comps)
            .finish()
    }
}

impl ChainMap {
    /// `comps[i]` is the component in degree `lo + i`; unlisted degrees are
    /// zero. Checks that each component is `kG`-linear and that the map
    /// commutes with the differentials.
    pub fn new(source: Complex, target: Complex, lo: i64, comps: Vec<Matrix>) -> Result<Self> {
        let (a, b) = union_range(&source, &target);
        for (i, c) in comps.iter().enumerate() {
            let n = lo + i as i64;
            let shape = (target.dim_at(n), source.dim_at(n));
            if c.shape() != shape {
                return dim_err(format!("component in degree {n} has shape {:?}, expected {shape:?}", c.shape()));
            }
        }
        let map = Self::from_fn(source, target, |n| {
            let i = n - lo;
            if i >= 0 && (i as usize) < comps.len() {
                Some(comps[i as usize].clone())
            } else {
                None
            }
        });
        debug_assert!(map.comps.len() == (b - a + 1).max(0) as usize);
        map.validate()?;
        Ok(map)
    }

    /// Components from a closure (`None` meaning zero), without validation.
    pub(crate) fn from_fn(source: Complex, target: Complex, comp: impl Fn(i64) -> Option<Matrix>) -> Self {
        let (a, b) = union_range(&source, &target);
        let p = source.p();
        let comps =
            (a..=b).map(|n| comp(n).unwrap_or_else(|| Matrix::zeros(p, target.dim_at(n), source.dim_at(n)))).collect();
        ChainMap { source, target, lo: a, comps }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.source.algebra().as_ref().eq(self.target.algebra().as_ref()) {
            return Err(Error::AlgebraMismatch);
        }
        let (a, b) = union_range(&self.source, &self.target);
        for n in a..=b {
            ModuleMap::new(self.source.term(n), self.target.term(n), self.component(n))
                .map_err(|e| Error::NotChainMap(format!("component in degree {n}: {e}")))?;
        }
        for n in a - 1..=b {
            let lhs = &self.target.d_matrix(n) * &self.component(n);
            let rhs = &self.component(n + 1) * &self.source.d_matrix(n);
            if lhs != rhs {
                return Err(Error::NotChainMap(format!("square in degree {n} does not commute")));
            }
        }
        Ok(())
    }

    pub fn identity(x: &Complex) -> Self {
        Self::from_fn(x.clone(), x.clone(), |n| Some(Matrix::identity(x.p(), x.dim_at(n))))
    }

    pub fn zero(x: &Complex, y: &Complex) -> Self {
        Self::from_fn(x.clone(), y.clone(), |_| None)
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn p(&self) -> u32 {
        self.source.p()
    }

    pub fn component(&self, n: i64) -> Matrix {
        let i = n - self.lo;
        if i >= 0 && (i as usize) < self.comps.len() {
            self.comps[i as usize].clone()
        } else {
            Matrix::zeros(self.p(), self.target.dim_at(n), self.source.dim_at(n))
        }
    }

    pub fn component_map(&self, n: i64) -> ModuleMap {
        ModuleMap::new_unchecked(self.source.term(n), self.target.term(n), self.component(n))
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &ChainMap) -> Result<ChainMap> {
        if rhs.target != self.source {
            return dim_err("chain maps are not composable");
        }
        Ok(Self::from_fn(rhs.source.clone(), self.target.clone(), |n| Some(&self.component(n) * &rhs.component(n))))
    }

    fn parallel(&self, other: &ChainMap) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return dim_err("chain maps are not parallel");
        }
        Ok(())
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap> {
        self.parallel(other)?;
        Ok(Self::from_fn(self.source.clone(), self.target.clone(), |n| Some(&self.component(n) + &other.component(n))))
    }

    pub fn sub(&self, other: &ChainMap) -> Result<ChainMap> {
        self.parallel(other)?;
        Ok(Self::from_fn(self.source.clone(), self.target.clone(), |n| Some(&self.component(n) - &other.component(n))))
    }

    pub fn scale(&self, c: u32) -> ChainMap {
        Self::from_fn(self.source.clone(), self.target.clone(), |n| Some(self.component(n).scale(c)))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Matrix::is_zero)
    }

    /// Concatenated row-major components over the union of supports.
    pub fn to_vector(&self) -> Vec<u32> {
        self.comps.iter().flat_map(|c| c.data().iter().copied()).collect()
    }

    /// `f[k]^n = f^{n+k}`.
    pub fn shift(&self, k: i64) -> ChainMap {
        Self::from_fn(self.source.shift(k), self.target.shift(k), |n| Some(self.component(n + k)))
    }

    /// Whether each component is an isomorphism.
    pub fn is_isomorphism(&self) -> bool {
        self.comps.iter().all(|c| c.rows() == c.cols() && c.rank() == c.rows())
    }

    /// Mapping cone `cone(f)^n = X^{n+1} ⊕ Y^n` with differential
    /// `[[−d_X, 0], [f, d_Y]]`, its inclusion of `Y` and projection onto `X[1]`.
    pub fn cone(&self) -> Cone {
        let (x, y) = (&self.source, &self.target);
        let p = self.p();
        let (a, b) = union_range(&x.shift(1), y);
        let term = |n: i64| x.term(n + 1).direct_sum(&y.term(n)).expect("same algebra").module;
        let complex = Complex::from_fn(x.algebra().clone(), a, b, term, |n| {
            let (x1, x2, y0, y1) = (x.dim_at(n + 1), x.dim_at(n + 2), y.dim_at(n), y.dim_at(n + 1));
            let mut m = Matrix::zeros(p, x2 + y1, x1 + y0);
            m.set_block(0, 0, &x.d_matrix(n + 1).scale(p - 1));
            m.set_block(x2, 0, &self.component(n + 1));
            m.set_block(x2, x1, &y.d_matrix(n));
            m
        });
        let inclusion = Self::from_fn(y.clone(), complex.clone(), |n| {
            let mut m = Matrix::zeros(p, x.dim_at(n + 1) + y.dim_at(n), y.dim_at(n));
            m.set_block(x.dim_at(n + 1), 0, &Matrix::identity(p, y.dim_at(n)));
            Some(m)
        });
        let projection = Self::from_fn(complex.clone(), x.shift(1), |n| {
            let mut m = Matrix::zeros(p, x.dim_at(n + 1), x.dim_at(n + 1) + y.dim_at(n));
            m.set_block(0, 0, &Matrix::identity(p, x.dim_at(n + 1)));
            Some(m)
        });
        Cone { complex, inclusion, projection }
    }
}

/// A mapping cone with its structure maps `Y → cone(f) → X[1]`.
#[derive(Clone, Debug)]
pub struct Cone {
    pub complex: Complex,
    pub inclusion: ChainMap,
    pub projection: ChainMap,
}

/// Maps `s^n: X^n → Y^{n−1}`, stored over the degrees where both ends can
/// be nonzero.
#[derive(Clone, PartialEq, Eq)]
pub struct Homotopy {
    source: Complex,
    target: Complex,
    lo: i64,
    comps: Vec<Matrix>,
}

impl fmt::Debug for Homotopy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Homotopy").field("lo", &self.lo).field("comps", &self.comps).finish()
    }
}

impl Homotopy {
    /// `comps[i]` is `s^{lo+i}`; unlisted degrees are zero. Components are
    /// checked to be `kG`-linear.
    pub fn new(source: Complex, target: Complex, lo: i64, comps: Vec<Matrix>) -> Result<Self> {
        for (i, c) in comps.iter().enumerate() {
            let n = lo + i as i64;
            ModuleMap::new(source.term(n), target.term(n - 1), c.clone())
                .map_err(|e| Error::Precondition(format!("homotopy component in degree {n}: {e}")))?;
        }
        Ok(Self::from_fn(source, target, |n| {
            let i = n - lo;
            (i >= 0 && (i as usize) < comps.len()).then(|| comps[i as usize].clone())
        }))
    }

    pub(crate) fn from_fn(source: Complex, target: Complex, comp: impl Fn(i64) -> Option<Matrix>) -> Self {
        let (a, b) = union_range(&source, &target.shift(-1));
        let p = source.p();
        let comps = (a..=b)
            .map(|n| comp(n).unwrap_or_else(|| Matrix::zeros(p, target.dim_at(n - 1), source.dim_at(n))))
            .collect();
        Homotopy { source, target, lo: a, comps }
    }

    pub fn zero(x: &Complex, y: &Complex) -> Self {
        Self::from_fn(x.clone(), y.clone(), |_| None)
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn component(&self, n: i64) -> Matrix {
        let i = n - self.lo;
        if i >= 0 && (i as usize) < self.comps.len() {
            self.comps[i as usize].clone()
        } else {
            Matrix::zeros(self.source.p(), self.target.dim_at(n - 1), self.source.dim_at(n))
        }
    }

    /// The null-homotopic chain map `s∘d + d∘s`.
    pub fn boundary(&self) -> ChainMap {
        let (x, y) = (&self.source, &self.target);
        ChainMap::from_fn(x.clone(), y.clone(), |n| {
            Some(&(&self.component(n + 1) * &x.d_matrix(n)) + &(&y.d_matrix(n - 1) * &self.component(n)))
        })
    }

    /// Whether `s∘d + d∘s` is the identity, i.e. `s` contracts its source.
    pub fn is_contraction(&self) -> bool {
        self.source == self.target && self.boundary() == ChainMap::identity(&self.source)
    }
}

impl ChainMap {
    /// Degreewise kernel, as a subcomplex of the source with its inclusion.
    pub fn kernel(&self) -> (Complex, ChainMap) {
        let x = &self.source;
        let Some((a, b)) = x.support() else {
            return (x.clone(), ChainMap::identity(x));
        };
        let bases: Vec<Matrix> = (a..=b).map(|n| self.component(n).kernel_basis()).collect();
        let basis = |n: i64| &bases[(n - a) as usize];
        let k = Complex::from_fn(
            x.algebra().clone(),
            a,
            b,
            |n| x.term(n).submodule(basis(n)).expect("kernels are submodules").0,
            |n| {
                Matrix::coordinates(basis(n + 1), &(&x.d_matrix(n) * basis(n)))
                    .expect("shapes agree")
                    .expect("kernels form a subcomplex")
            },
        );
        let inc = ChainMap::from_fn(k.clone(), x.clone(), |n| (a..=b).contains(&n).then(|| basis(n).clone()));
        (k, inc)
    }

    /// Degreewise cokernel with the projection from the target.
    pub fn cokernel(&self) -> (Complex, ChainMap) {
        let y = &self.target;
        let Some((a, b)) = y.support() else {
            return (y.clone(), ChainMap::identity(y));
        };
        let p = self.p();
        let quotients: Vec<(crate::modrep::Module, Matrix, Matrix)> = (a..=b)
            .map(|n| {
                let (q, pi) = y.term(n).quotient(&self.component(n)).expect("images are submodules");
                let lift = pi
                    .matrix()
                    .solve(&Matrix::identity(p, q.dim()))
                    .expect("shapes agree")
                    .into_particular()
                    .expect("projections are onto");
                (q, pi.into_matrix(), lift)
            })
            .collect();
        let at = |n: i64| &quotients[(n - a) as usize];
        let c = Complex::from_fn(
            y.algebra().clone(),
            a,
            b,
            |n| at(n).0.clone(),
            |n| {
                if n + 1 > b {
                    return Matrix::zeros(p, 0, at(n).0.dim());
                }
                &(&at(n + 1).1 * &y.d_matrix(n)) * &at(n).2
            },
        );
        let proj = ChainMap::from_fn(y.clone(), c.clone(), |n| (a..=b).contains(&n).then(|| at(n).1.clone()));
        (c, proj)
    }
}
