use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Matrix;
use crate::modrep::{GroupAlgebra, Module, ModuleMap};

/// A bounded cochain complex of `kG`-modules; `d^n: X^n → X^{n+1}`.
///
/// Zero terms at either end are trimmed, so two complexes with the same
/// nonzero data compare equal. The zero complex has no terms.
#[derive(Clone, PartialEq, Eq)]
pub struct Complex {
    algebra: Arc<GroupAlgebra>,
    lo: i64,
    terms: Vec<Module>,
    /// `diffs[i]` goes from `terms[i]` to `terms[i + 1]`.
    diffs: Vec<Matrix>,
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<String> = self.degrees().map(|n| format!("{n}:{}", self.term(n).dim())).collect();
        write!(f, "Complex[{}]", dims.join(" "))
    }
}

impl Complex {
    /// Terms in degrees `lo, lo+1, ...`; `diffs[i]` is the differential out
    /// of degree `lo + i` and there is one fewer differential than terms.
    pub fn new(lo: i64, terms: Vec<Module>, diffs: Vec<Matrix>) -> Result<Self> {
        let Some(first) = terms.first() else {
            return Err(Error::InvalidComplex("a complex needs at least one term (use Complex::zero)".into()));
        };
        let algebra = first.algebra().clone();
        if diffs.len() + 1 != terms.len() {
            return Err(Error::InvalidComplex(format!(
                "{} terms need {} differentials, got {}",
                terms.len(),
                terms.len() - 1,
                diffs.len()
            )));
        }
        for t in &terms {
            if !t.same_algebra(first) {
                return Err(Error::AlgebraMismatch);
            }
        }
        for (i, d) in diffs.iter().enumerate() {
            let n = lo + i as i64;
            ModuleMap::new(terms[i].clone(), terms[i + 1].clone(), d.clone())
                .map_err(|e| Error::InvalidComplex(format!("differential out of degree {n}: {e}")))?;
        }
        for i in 1..diffs.len() {
            if !(&diffs[i] * &diffs[i - 1]).is_zero() {
                let n = lo + i as i64 - 1;
                return Err(Error::InvalidComplex(format!("d^{} ∘ d^{n} != 0", n + 1)));
            }
        }
        Ok(Self::new_unchecked(algebra, lo, terms, diffs))
    }

    /// Re-run the checks of [`Complex::new`].
    pub fn validate(&self) -> Result<()> {
        if self.terms.is_empty() {
            return Ok(());
        }
        Self::new(self.lo, self.terms.clone(), self.diffs.clone()).map(|_| ())
    }

    pub(crate) fn new_unchecked(
        algebra: Arc<GroupAlgebra>,
        lo: i64,
        mut terms: Vec<Module>,
        mut diffs: Vec<Matrix>,
    ) -> Self {
        let mut lo = lo;
        while terms.last().is_some_and(|t| t.dim() == 0) {
            terms.pop();
            diffs.pop();
        }
        let lead = terms.iter().take_while(|t| t.dim() == 0).count();
        if lead == terms.len() {
            return Complex { algebra, lo: 0, terms: Vec::new(), diffs: Vec::new() };
        }
        terms.drain(..lead);
        diffs.drain(..lead.min(diffs.len()));
        lo += lead as i64;
        diffs.truncate(terms.len().saturating_sub(1));
        Complex { algebra, lo, terms, diffs }
    }

    /// Build from a per-degree description over `[lo, hi]`, trusting the caller.
    pub(crate) fn from_fn(
        algebra: Arc<GroupAlgebra>,
        lo: i64,
        hi: i64,
        term: impl Fn(i64) -> Module,
        diff: impl Fn(i64) -> Matrix,
    ) -> Self {
        if hi < lo {
            return Self::zero(algebra);
        }
        let terms = (lo..=hi).map(&term).collect();
        let diffs = (lo..hi).map(diff).collect();
        Self::new_unchecked(algebra, lo, terms, diffs)
    }

    pub fn zero(algebra: Arc<GroupAlgebra>) -> Self {
        Complex { algebra, lo: 0, terms: Vec::new(), diffs: Vec::new() }
    }

    /// The module `m` placed in degree `n`.
    pub fn concentrated(m: &Module, n: i64) -> Self {
        Self::new_unchecked(m.algebra().clone(), n, vec![m.clone()], Vec::new())
    }

    pub fn algebra(&self) -> &Arc<GroupAlgebra> {
        &self.algebra
    }

    pub fn p(&self) -> u32 {
        self.algebra.p()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest and highest nonzero degree, or `None` for the zero complex.
    pub fn support(&self) -> Option<(i64, i64)> {
        (!self.terms.is_empty()).then(|| (self.lo, self.lo + self.terms.len() as i64 - 1))
    }

    /// Nonzero degree range; empty for the zero complex.
    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        match self.support() {
            Some((a, b)) => a..=b,
            #[allow(clippy::reversed_empty_ranges)]
            None => 1..=0,
        }
    }

    pub fn term(&self, n: i64) -> Module {
        match self.index(n) {
            Some(i) => self.terms[i].clone(),
            None => Module::zero(self.algebra.clone()),
        }
    }

    pub fn dim_at(&self, n: i64) -> usize {
        self.index(n).map_or(0, |i| self.terms[i].dim())
    }

    pub fn total_dim(&self) -> usize {
        self.terms.iter().map(Module::dim).sum()
    }

    /// Matrix of `d^n`, zero outside the support.
    pub fn d_matrix(&self, n: i64) -> Matrix {
        match self.index(n) {
            Some(i) if i < self.diffs.len() => self.diffs[i].clone(),
            _ => Matrix::zeros(self.p(), self.dim_at(n + 1), self.dim_at(n)),
        }
    }

    pub fn d(&self, n: i64) -> ModuleMap {
        ModuleMap::new_unchecked(self.term(n), self.term(n + 1), self.d_matrix(n))
    }

    fn index(&self, n: i64) -> Option<usize> {
        let (a, b) = self.support()?;
        (a..=b).contains(&n).then(|| (n - a) as usize)
    }

    /// `X[k]^n = X^{n+k}` with differential `(−1)^k d`.
    pub fn shift(&self, k: i64) -> Complex {
        let sign = if k.rem_euclid(2) == 1 { self.p() - 1 } else { 1 };
        let diffs = self.diffs.iter().map(|d| d.scale(sign)).collect();
        Complex { algebra: self.algebra.clone(), lo: self.lo - k, terms: self.terms.clone(), diffs }
    }

    /// Apply `W ⊗ −` termwise.
    pub fn tensor_left(&self, w: &Module) -> Result<Complex> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            terms.push(w.tensor(t)?);
        }
        let id = Matrix::identity(w.p(), w.dim());
        let diffs = self.diffs.iter().map(|d| id.kron(d)).collect();
        Ok(Self::new_unchecked(self.algebra.clone(), self.lo, terms, diffs))
    }

    pub fn direct_sum(&self, other: &Complex) -> Result<Complex> {
        if !self.algebra.as_ref().eq(other.algebra.as_ref()) {
            return Err(Error::AlgebraMismatch);
        }
        let (lo, hi) = union_range(self, other);
        let p = self.p();
        Ok(Self::from_fn(
            self.algebra.clone(),
            lo,
            hi,
            |n| self.term(n).direct_sum(&other.term(n)).expect("same algebra").module,
            |n| Matrix::block_diag(p, &[&self.d_matrix(n), &other.d_matrix(n)]),
        ))
    }

    /// Dimension of `H^n` as a vector space.
    pub fn cohomology_dim(&self, n: i64) -> usize {
        let z = self.dim_at(n) - self.d_matrix(n).rank();
        z - self.d_matrix(n - 1).rank()
    }

    /// Whether every cohomology group vanishes.
    pub fn is_acyclic(&self) -> bool {
        self.degrees().all(|n| self.cohomology_dim(n) == 0)
    }

    /// Keep degrees `≥ from` (naive truncation).
    pub fn naive_truncate_below(&self, from: i64) -> Complex {
        let (lo, hi) = match self.support() {
            Some((a, b)) => (a.max(from), b),
            None => return self.clone(),
        };
        Self::from_fn(self.algebra.clone(), lo, hi, |n| self.term(n), |n| self.d_matrix(n))
    }

    /// Keep degrees `≤ to` (naive truncation).
    pub fn naive_truncate_above(&self, to: i64) -> Complex {
        let (lo, hi) = match self.support() {
            Some((a, b)) => (a, b.min(to)),
            None => return self.clone(),
        };
        Self::from_fn(self.algebra.clone(), lo, hi, |n| self.term(n), |n| self.d_matrix(n))
    }
}

/// Smallest range containing both supports (empty when both are zero).
pub(crate) fn union_range(a: &Complex, b: &Complex) -> (i64, i64) {
    match (a.support(), b.support()) {
        (Some((a0, a1)), Some((b0, b1))) => (a0.min(b0), a1.max(b1)),
        (Some(r), None) | (None, Some(r)) => r,
        (None, None) => (1, 0),
    }
}
