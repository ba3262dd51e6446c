use std::collections::BTreeMap;

use super::chain::{ChainMap, Homotopy};
use super::complex::{union_range, Complex};
use super::hom::contraction;
use crate::error::{dim_err, Error, Result};
use crate::field::Matrix;
use crate::modrep::{is_split_epi, ModuleMap};
use crate::triple::{split_mono, AdjointTriple, GradedForgetful, GradedMap, Morphism, TensorTriple};

/// A contraction of `F(X)` (termwise `W ⊗ −`), if `X` is F-split acyclic.
pub fn is_f_split_acyclic(t: &TensorTriple, x: &Complex) -> Result<Option<Homotopy>> {
    contraction(&t.f_complex(x))
}

/// A family of `kG`-linear maps `X^n → Y^n`, not required to commute with
/// the differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreewiseMap {
    source: Complex,
    target: Complex,
    comps: BTreeMap<i64, Matrix>,
}

impl DegreewiseMap {
    pub fn new(source: Complex, target: Complex, comps: BTreeMap<i64, Matrix>) -> Result<Self> {
        for (&n, c) in &comps {
            ModuleMap::new(source.term(n), target.term(n), c.clone())?;
        }
        Ok(DegreewiseMap { source, target, comps })
    }

    pub fn component(&self, n: i64) -> Matrix {
        self.comps
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.source.p(), self.target.dim_at(n), self.source.dim_at(n)))
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }
}

/// The map `cone(f) → Z`, `(x, y) ↦ g(y)`, induced by `X --f--> Y --g--> Z`.
pub fn cone_comparison(f: &ChainMap, g: &ChainMap) -> Result<ChainMap> {
    let cone = f.cone().complex;
    let (x, z) = (f.source(), g.target());
    let p = f.p();
    let map = ChainMap::from_fn(cone, z.clone(), |n| {
        let mut m = Matrix::zeros(p, z.dim_at(n), x.dim_at(n + 1) + f.target().dim_at(n));
        m.set_block(0, x.dim_at(n + 1), &g.component(n));
        Some(m)
    });
    map.validate()?;
    Ok(map)
}

fn check_degreewise_exact(f: &ChainMap, g: &ChainMap) -> Result<()> {
    if f.target() != g.source() {
        return dim_err("f and g are not composable");
    }
    let (a, b) = union_range(f.source(), g.target());
    let (a, b) = (a.min(f.target().support().map_or(a, |s| s.0)), b.max(f.target().support().map_or(b, |s| s.1)));
    for n in a..=b {
        let (fi, gd) = (f.component(n), g.component(n));
        let ok = fi.rank() == fi.cols()
            && gd.rank() == gd.rows()
            && (&gd * &fi).is_zero()
            && fi.cols() + gd.rows() == fi.rows();
        if !ok {
            return Err(Error::NotExactPair(format!("degree {n} is not a short exact sequence")));
        }
    }
    Ok(())
}

/// Contraction of `F(cone φ)` for a degreewise F-split short exact sequence
/// `X --f--> Y --g--> Z` of complexes, where `φ: cone(f) → Z`.
///
/// `F(cone φ)^n = FX^{n+2} ⊕ FY^{n+1} ⊕ FZ^n` has differential
/// `[[d, 0, 0], [−f, −d, 0], [0, g, d]]`, and the contraction is
/// `s = [[0, −f′, 0], [0, 0, g′], [0, 0, 0]]`. The witnesses must satisfy
/// `f′f = 1`, `gg′ = 1`, `ff′ + g′g = 1` after applying `F`, with `f′` a
/// chain map.
pub fn triangle_homotopy(
    t: &TensorTriple,
    f: &ChainMap,
    g: &ChainMap,
    f_ret: &ChainMap,
    g_sec: &DegreewiseMap,
) -> Result<Homotopy> {
    check_degreewise_exact(f, g)?;
    let (ff, fg) = (t.f_chain_map(f), t.f_chain_map(g));
    if f_ret.source() != ff.target() || f_ret.target() != ff.source() {
        return Err(Error::Precondition("f′ must be a chain map FY → FX".into()));
    }
    f_ret.validate()?;
    if g_sec.source() != fg.target() || g_sec.target() != fg.source() {
        return Err(Error::Precondition("g′ must go FZ → FY".into()));
    }
    let p = f.p();
    let (x, y, z) = (ff.source(), ff.target(), fg.target());
    let (a, b) = union_range(x, z);
    let (a, b) = (a.min(y.support().map_or(a, |s| s.0)), b.max(y.support().map_or(b, |s| s.1)));
    for n in a..=b {
        let (fn_, fr, gn, gs) = (ff.component(n), f_ret.component(n), fg.component(n), g_sec.component(n));
        if !(&fr * &fn_).is_identity() && fn_.cols() > 0 {
            return Err(Error::Precondition(format!("f′f != 1 in degree {n}")));
        }
        if !(&gn * &gs).is_identity() && gn.rows() > 0 {
            return Err(Error::Precondition(format!("gg′ != 1 in degree {n}")));
        }
        if y.dim_at(n) > 0 && !(&(&fn_ * &fr) + &(&gs * &gn)).is_identity() {
            return Err(Error::Precondition(format!("ff′ + g′g != 1 in degree {n}")));
        }
    }
    let phi = cone_comparison(&ff, &fg)?;
    let cone = phi.cone().complex;
    let s = Homotopy::from_fn(cone.clone(), cone.clone(), |n| {
        // C^n = X^{n+2} ⊕ Y^{n+1} ⊕ Z^n  →  C^{n−1} = X^{n+1} ⊕ Y^n ⊕ Z^{n−1}
        let x1 = x.dim_at(n + 1);
        let (x2, y1) = (x.dim_at(n + 2), y.dim_at(n + 1));
        let mut m = Matrix::zeros(p, cone.dim_at(n - 1), cone.dim_at(n));
        m.set_block(0, x2, &f_ret.component(n + 1).scale(p - 1));
        m.set_block(x1, x2 + y1, &g_sec.component(n));
        Some(m)
    });
    if !s.is_contraction() {
        return Err(Error::Precondition("sd + ds != id; the witnesses are inconsistent".into()));
    }
    Ok(s)
}

/// Witnesses for [`triangle_homotopy`]: a chain-map retraction `f′` of
/// `F(f)` and the section `g′ = s₀ − F(f) f′ s₀` built from any degreewise
/// section `s₀` of `F(g)`. `None` if `F(f)` has no chain-map retraction or
/// some `F(g^n)` does not split.
pub fn triangle_witnesses(t: &TensorTriple, f: &ChainMap, g: &ChainMap) -> Result<Option<(ChainMap, DegreewiseMap)>> {
    let (ff, fg) = (t.f_chain_map(f), t.f_chain_map(g));
    let Some(f_ret) = split_mono(&ff)? else {
        return Ok(None);
    };
    let mut comps = BTreeMap::new();
    for n in fg.target().degrees() {
        let Some(s0) = is_split_epi(&fg.component_map(n))? else {
            return Ok(None);
        };
        let s0 = s0.into_matrix();
        let correction = &(&ff.component(n) * &f_ret.component(n)) * &s0;
        comps.insert(n, &s0 - &correction);
    }
    let g_sec = DegreewiseMap::new(fg.target().clone(), fg.source().clone(), comps)?;
    Ok(Some((f_ret, g_sec)))
}

/// Smart truncation at `cutoff`: `M̂^i = M^i` for `i ≤ cutoff`,
/// `M̂^{cutoff+1} = im d^{cutoff}`, zero above; with the inclusion `M̂ → M`.
pub fn smart_truncate(m: &Complex, cutoff: i64) -> Result<(Complex, ChainMap)> {
    let Some((lo, hi)) = m.support() else {
        return Ok((m.clone(), ChainMap::identity(m)));
    };
    if cutoff >= hi {
        return Ok((m.clone(), ChainMap::identity(m)));
    }
    let p = m.p();
    let image = m.d_matrix(cutoff).column_space();
    let (top, _) = m.term(cutoff + 1).submodule(&image)?;
    let top_dim = top.dim();
    let coords = Matrix::coordinates(&image, &m.d_matrix(cutoff))?.expect("image of d");
    let lo = lo.min(cutoff + 1);
    let trunc = Complex::from_fn(
        m.algebra().clone(),
        lo,
        cutoff + 1,
        |n| if n == cutoff + 1 { top.clone() } else { m.term(n) },
        |n| if n == cutoff { coords.clone() } else { m.d_matrix(n) },
    );
    let g = ChainMap::from_fn(trunc.clone(), m.clone(), |n| {
        if n == cutoff + 1 {
            Some(image.clone())
        } else if n <= cutoff {
            Some(Matrix::identity(p, m.dim_at(n)))
        } else {
            None
        }
    });
    debug_assert_eq!(top_dim, image.cols());
    g.validate()?;
    Ok((trunc, g))
}

/// Output of [`truncate_factor`].
#[derive(Clone, Debug)]
pub struct TruncatedFactor {
    pub m_hat: Complex,
    pub g: ChainMap,
    pub f_hat: ChainMap,
}

/// For `f: M → N` with `cone(f)` F-split acyclic, truncate `M` just above
/// the top of `N` and factor `f̂ = f∘g`. All three postconditions are
/// checked before returning.
pub fn truncate_factor(t: &TensorTriple, f: &ChainMap) -> Result<TruncatedFactor> {
    if is_f_split_acyclic(t, &f.cone().complex)?.is_none() {
        return Err(Error::Precondition("cone(f) is not F-split acyclic".into()));
    }
    let top = f.target().support().map_or(0, |s| s.1);
    let (m_hat, g) = smart_truncate(f.source(), top)?;
    let f_hat = f.compose(&g)?;
    if is_f_split_acyclic(t, &f_hat.cone().complex)?.is_none() {
        return Err(Error::Precondition("cone(f̂) is not F-split acyclic".into()));
    }
    if is_f_split_acyclic(t, &g.cone().complex)?.is_none() {
        return Err(Error::Precondition("cone(g) is not F-split acyclic".into()));
    }
    Ok(TruncatedFactor { m_hat, g, f_hat })
}

/// The transfer `(FX, FY[−1]) → (X, Y)` of the graded-forgetful instance,
/// `π ∘ ψ⁻¹ ∘ R(s) ∘ η_X` with `ψ: cone(id) ≅ RF` and `π` the projection
/// of the cone onto `Y`. Its value is `s∘d + d∘s`.
pub fn graded_transfer(t: &GradedForgetful, x: &Complex, y: &Complex, s: &GradedMap) -> Result<ChainMap> {
    let z = y.shift(-1);
    if s.source() != &t.f(x) || s.target() != &t.f(&z) {
        return Err(Error::Precondition("s must be a degree-preserving map FX → F(Y[−1])".into()));
    }
    let psi_inv = t.rf_to_cone(&z);
    let pi = ChainMap::identity(&z).cone().projection;
    let out = pi.compose(&psi_inv)?.compose(&t.r_map(s))?.compose(&t.unit(x))?;
    debug_assert_eq!(out.target(), y);
    Ok(out)
}

/// The homotopy with components `s^n = s_n: X^n → Y^{n−1}` read off a
/// graded map `FX → F(Y[−1])`.
pub fn homotopy_from_graded(x: &Complex, y: &Complex, s: &GradedMap) -> Homotopy {
    Homotopy::from_fn(x.clone(), y.clone(), |n| Some(s.block(n)))
}
