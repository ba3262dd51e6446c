//! F-projective and F-injective resolutions of bounded complexes for the
//! tensor instance, their certification, and homs in the relative derived
//! category computed through them.
//!
//! A projective resolution is built after shifting `X` so that its top
//! nonzero degree is 0. With `P^1 = 0`, each step forms the pullback
//!
//! ```text
//! Q = ker(d_P^{n+1}) ×_{X^{n+1}} X^n
//! ```
//!
//! and sets `P^n = LF(Q)` with the counit as the cover. The injective side
//! is dual: pushouts of `coker(d_I^{n−2}) ← X^{n−1} → X^n` and `I^n = RF(Q)`.
//!
//! Every resolution is finite, so it only resolves `X` away from its last
//! term. [`Resolution::window`] is the range of degrees where the
//! certificate applies.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::complexes::{contraction_on, hom_k, ChainMap, Complex, HomK, Homotopy};
use crate::error::{Error, Result};
use crate::field::Matrix;
use crate::modrep::Module;
use crate::relexact::{omega_inv_pow, omega_pow, stable_hom_dim};
use crate::triple::{AdjointTriple, TensorTriple};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Projective,
    Injective,
}

/// The module whose canonical cover (or envelope) is the term in one
/// degree, with its embedding `Q → cone^n` for projective resolutions.
#[derive(Clone, Debug)]
struct Step {
    q: Module,
    embed: Option<Matrix>,
}

/// A finite piece of a resolution of `target`.
///
/// For [`Side::Projective`], `map: P → X`. For [`Side::Injective`],
/// `map: X → I`.
#[derive(Debug)]
pub struct Resolution {
    side: Side,
    target: Complex,
    complex: Complex,
    map: ChainMap,
    end: i64,
    /// The normalized data is `original.shift(shift)`.
    shift: i64,
    norm_target: Complex,
    norm_complex: Complex,
    norm_map: ChainMap,
    steps: BTreeMap<i64, Step>,
    certificate: OnceLock<Certificate>,
}

impl Resolution {
    pub fn side(&self) -> Side {
        self.side
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn map(&self) -> &ChainMap {
        &self.map
    }

    /// Lowest computed degree for projective resolutions, highest for
    /// injective ones.
    pub fn end(&self) -> i64 {
        self.end
    }

    /// Degrees where the resolution is certified: every computed degree
    /// except the last one.
    pub fn window(&self) -> (i64, i64) {
        let (lo, hi) = self.norm_window();
        (lo + self.shift, hi + self.shift)
    }

    fn norm_window(&self) -> (i64, i64) {
        let end = self.end - self.shift;
        match self.side {
            Side::Projective => (end + 1, 0),
            Side::Injective => (0, end - 1),
        }
    }

    /// The certificate, computed on first use.
    pub fn certificate(&self, t: &TensorTriple) -> Result<&Certificate> {
        if let Some(c) = self.certificate.get() {
            return Ok(c);
        }
        let c = certify_resolution(t, self)?;
        Ok(self.certificate.get_or_init(|| c))
    }

    /// Dimensions of the resolution terms from the top degree downwards
    /// (projective) or from the bottom upwards (injective).
    pub fn term_dims(&self) -> Vec<usize> {
        let degrees: Vec<i64> = match self.side {
            Side::Projective => (self.end..=self.end + self.steps.len() as i64 - 1).rev().collect(),
            Side::Injective => (self.end + 1 - self.steps.len() as i64..=self.end).collect(),
        };
        degrees.into_iter().map(|n| self.complex.dim_at(n)).collect()
    }
}

impl Resolution {
    /// A projective resolution assembled by hand: `covers[n]` is the module
    /// `Q` with `complex^n = LF(Q)`. Only the chain map is checked here;
    /// [`certify_resolution`] decides whether it is a resolution.
    pub fn from_covers(
        target: Complex,
        complex: Complex,
        map: ChainMap,
        covers: BTreeMap<i64, Module>,
    ) -> Result<Self> {
        map.validate()?;
        if map.source() != &complex || map.target() != &target {
            return Err(Error::NotChainMap("map must go from the resolution to the target".into()));
        }
        let Some(&end) = covers.keys().next() else {
            return Err(Error::Window("a resolution needs at least one term".into()));
        };
        let shift = normalize(&target, Side::Projective);
        let steps = covers.into_iter().map(|(n, q)| (n - shift, Step { q, embed: None })).collect();
        Ok(Resolution {
            side: Side::Projective,
            norm_target: target.shift(shift),
            norm_complex: complex.shift(shift),
            norm_map: map.shift(shift),
            target,
            complex,
            map,
            end,
            shift,
            steps,
            certificate: OnceLock::new(),
        })
    }
}

fn normalize(x: &Complex, side: Side) -> i64 {
    match (x.support(), side) {
        (None, _) => 0,
        (Some((_, hi)), Side::Projective) => hi,
        (Some((lo, _)), Side::Injective) => lo,
    }
}

fn stack_degrees(
    alg: &std::sync::Arc<crate::modrep::GroupAlgebra>,
    lo: i64,
    terms: &BTreeMap<i64, Module>,
    diffs: &BTreeMap<i64, Matrix>,
) -> Complex {
    let hi = lo + terms.len() as i64 - 1;
    Complex::from_fn(alg.clone(), lo, hi, |n| terms[&n].clone(), |n| diffs[&n].clone())
}

/// F-projective resolution `P → X` with `depth` terms below and including
/// the top degree of `X`.
pub fn f_projective_resolution(t: &TensorTriple, x: &Complex, depth: usize) -> Result<Resolution> {
    if depth == 0 {
        return Err(Error::Window("a resolution needs at least one term".into()));
    }
    if t.w().algebra().as_ref() != x.algebra().as_ref() {
        return Err(Error::AlgebraMismatch);
    }
    let shift = normalize(x, Side::Projective);
    let xn = x.shift(shift);
    let p = x.p();
    let alg = x.algebra();
    let lowest = 1 - depth as i64;

    let mut terms = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    let mut comps = BTreeMap::new();
    let mut steps = BTreeMap::new();
    // data about P^{n+1}: basis of the cycles, the cycles as a module, p^{n+1}
    let mut kb = Matrix::zeros(p, 0, 0);
    let mut k_mod = Module::zero(alg.clone());
    let mut p_above = Matrix::zeros(p, xn.dim_at(1), 0);
    for n in (lowest..=0).rev() {
        let f = &p_above * &kb;
        let pb = Matrix::pullback(&f, &xn.d_matrix(n))?;
        let sum = k_mod.direct_sum(&xn.term(n))?.module;
        let (q, _) = sum.submodule(&pb.basis)?;
        let term = t.l(&t.f(&q));
        let a = &kb * &pb.proj_a;
        let d = t.after_counit(&a);
        let pn = t.after_counit(&pb.proj_b);
        let embed = Matrix::vstack(p, &[&a, &-&pb.proj_b])?;
        steps.insert(n, Step { q, embed: Some(embed) });
        if n > lowest {
            kb = d.kernel_basis();
            k_mod = term.submodule(&kb)?.0;
        }
        if n < 0 {
            diffs.insert(n, d);
        }
        p_above = pn.clone();
        comps.insert(n, pn);
        terms.insert(n, term);
    }
    let complex = stack_degrees(alg, lowest, &terms, &diffs);
    let map = ChainMap::from_fn(complex.clone(), xn.clone(), |n| comps.get(&n).cloned());
    Ok(Resolution {
        side: Side::Projective,
        target: x.clone(),
        complex: complex.shift(-shift),
        map: map.shift(-shift),
        end: lowest + shift,
        shift,
        norm_target: xn,
        norm_complex: complex,
        norm_map: map,
        steps,
        certificate: OnceLock::new(),
    })
}

/// F-injective resolution `X → I` with `depth` terms above and including
/// the bottom degree of `X`.
pub fn f_injective_resolution(t: &TensorTriple, x: &Complex, depth: usize) -> Result<Resolution> {
    if depth == 0 {
        return Err(Error::Window("a resolution needs at least one term".into()));
    }
    if t.w().algebra().as_ref() != x.algebra().as_ref() {
        return Err(Error::AlgebraMismatch);
    }
    let shift = normalize(x, Side::Injective);
    let xn = x.shift(shift);
    let p = x.p();
    let alg = x.algebra();
    let highest = depth as i64 - 1;

    let mut terms = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    let mut comps = BTreeMap::new();
    let mut steps = BTreeMap::new();
    // data about I^{n−1}: projection onto coker d^{n−2}, that cokernel, i^{n−1}
    let mut c_proj = Matrix::zeros(p, 0, 0);
    let mut c_mod = Module::zero(alg.clone());
    let mut i_below = Matrix::zeros(p, 0, xn.dim_at(-1));
    for n in 0..=highest {
        let a = &c_proj * &i_below;
        let rel = Matrix::vstack(p, &[&a, &-&xn.d_matrix(n - 1)])?;
        let sum = c_mod.direct_sum(&xn.term(n))?.module;
        let (q, pi) = sum.quotient(&rel)?;
        let term = t.r(&t.f(&q));
        let c = c_mod.dim();
        let pi = pi.matrix();
        let from_c = pi.submatrix(0, q.dim(), 0, c);
        let from_x = pi.submatrix(0, q.dim(), c, sum.dim());
        let d = t.before_unit(&(&from_c * &c_proj));
        let inn = t.before_unit(&from_x);
        steps.insert(n, Step { q, embed: None });
        if n > 0 {
            diffs.insert(n - 1, d.clone());
        }
        if n < highest {
            let (cm, cp) = term.quotient(&d)?;
            c_mod = cm;
            c_proj = cp.into_matrix();
        }
        i_below = inn.clone();
        comps.insert(n, inn);
        terms.insert(n, term);
    }
    let complex = stack_degrees(alg, 0, &terms, &diffs);
    let map = ChainMap::from_fn(xn.clone(), complex.clone(), |n| comps.get(&n).cloned());
    Ok(Resolution {
        side: Side::Injective,
        target: x.clone(),
        complex: complex.shift(-shift),
        map: map.shift(-shift),
        end: highest + shift,
        shift,
        norm_target: xn,
        norm_complex: complex,
        norm_map: map,
        steps,
        certificate: OnceLock::new(),
    })
}

/// Outcome of [`certify_resolution`]. Degrees are in the original grading,
/// except `contraction_window`, which indexes the cone of the normalized map.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub window: (i64, i64),
    /// Per degree: the term is `LF(Q)` (resp. `RF(Q)`) for its recorded `Q`.
    pub terms: Vec<(i64, bool)>,
    /// `ε_{LY} ∘ L(Y → FLY) = id` and its dual hold, which splits every cover.
    pub zigzag: bool,
    pub map_valid: bool,
    pub cohomology_injective: Vec<(i64, bool)>,
    pub cohomology_surjective: Vec<(i64, bool)>,
    pub contraction_window: (i64, i64),
    pub contraction: Option<Homotopy>,
    pub failures: Vec<String>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Check that `r` is a resolution on its window:
///
/// - (a) every term is F-projective (resp. F-injective);
/// - (b) the map is injective and surjective on cohomology;
/// - (c) `F(cone(map))` has an explicit contraction.
pub fn certify_resolution(t: &TensorTriple, r: &Resolution) -> Result<Certificate> {
    let mut failures = Vec::new();
    let (wlo, whi) = r.norm_window();
    let shift = r.shift;

    let mut terms = Vec::new();
    for (&n, step) in &r.steps {
        let expected = match r.side {
            Side::Projective => t.l(&t.f(&step.q)),
            Side::Injective => t.r(&t.f(&step.q)),
        };
        let ok = r.norm_complex.term(n) == expected;
        if !ok {
            failures.push(format!("term in degree {} is not the canonical cover", n + shift));
        }
        terms.push((n + shift, ok));
    }
    let zigzag = t.zigzag_holds();
    if !zigzag {
        failures.push("triangle identities fail, covers are not split".into());
    }
    let map_valid = r.norm_map.validate().is_ok() && r.norm_complex.validate().is_ok();
    if !map_valid {
        failures.push("resolution map is not a chain map of complexes".into());
    }

    let (src, tgt) = (r.norm_map.source(), r.norm_map.target());
    let mut cohomology_injective = Vec::new();
    let mut cohomology_surjective = Vec::new();
    for n in wlo..=whi {
        let (inj, surj) = cohomology_iso(src, tgt, &r.norm_map.component(n), n)?;
        if !inj {
            failures.push(format!("H^{}(map) is not injective", n + shift));
        }
        if !surj {
            failures.push(format!("H^{}(map) is not surjective", n + shift));
        }
        cohomology_injective.push((n + shift, inj));
        cohomology_surjective.push((n + shift, surj));
    }

    let (contraction_window, contraction) = match r.side {
        Side::Projective => {
            let window = (wlo, whi);
            let s = if r.steps.values().all(|s| s.embed.is_some()) {
                projective_contraction(t, r, window)?
            } else {
                let (_, fcone) = truncated_cones(t, r, wlo)?;
                contraction_on(&fcone, wlo, whi)?.filter(|s| contracts_on(s, window))
            };
            (window, s)
        }
        Side::Injective => {
            // cone(i)^n = X^{n+1} ⊕ I^n is exact in degrees below the top
            // term; sections are found up to two degrees above the window
            let lo = tgt.support().map_or(0, |(a, _)| a) - 1;
            let window = (lo, whi - 2);
            let cone = r.norm_map.cone().complex.tensor_left(t.w())?;
            let s = if window.0 <= window.1 {
                contraction_on(&cone, window.0, window.1)?
            } else {
                Some(Homotopy::zero(&cone, &cone))
            };
            let s = s.filter(|s| contracts_on(s, window));
            (window, s)
        }
    };
    if contraction.is_none() {
        failures.push("no contraction of F(cone(map)) on the window".into());
    }

    Ok(Certificate {
        window: (wlo + shift, whi + shift),
        terms,
        zigzag,
        map_valid,
        cohomology_injective,
        cohomology_surjective,
        contraction_window,
        contraction,
        failures,
    })
}

/// Whether `H^n(f): H^n(X) → H^n(Y)` is injective and surjective, where `f`
/// is the degree `n` component of a chain map `X → Y`.
fn cohomology_iso(x: &Complex, y: &Complex, f: &Matrix, n: i64) -> Result<(bool, bool)> {
    let p = x.p();
    let zx = x.d_matrix(n).kernel_basis();
    let bx = x.d_matrix(n - 1).rank();
    let zy = y.d_matrix(n).kernel_basis();
    let by = y.d_matrix(n - 1).column_space();
    let image = f * &zx;
    // cycles of X landing in boundaries of Y, measured inside Z(X)
    let pre = Matrix::pullback(&image, &by)?;
    let injective = pre.proj_a.rank() == bx;
    let surjective = Matrix::hstack(p, &[&image, &by])?.rank() == zy.cols();
    Ok((injective, surjective))
}

fn contracts_on(s: &Homotopy, (lo, hi): (i64, i64)) -> bool {
    let x = s.source();
    let p = x.p();
    (lo..=hi).all(|n| {
        let sd = &s.component(n + 1) * &x.d_matrix(n);
        let ds = &x.d_matrix(n - 1) * &s.component(n);
        &sd + &ds == Matrix::identity(p, x.dim_at(n))
    })
}

/// Contraction of `F(cone(p))` on cone degrees `[lo, hi]` from the
/// structural sections. The cycles of the cone in degree `m` are the
/// pullback `Q_m` through the recorded embedding `E_m`, and the cone
/// differential on `P^m = LF(Q_m)` is `−E_m ∘ ε_{Q_m}`. With `ρ` any linear
/// left inverse of `E_m` and `η'` the map `FQ → FLFQ`,
/// `Σ = −F(incl_P) ∘ η' ∘ F(ρ)` is a section of `F(d)` over the cycles.
fn projective_contraction(t: &TensorTriple, r: &Resolution, (lo, hi): (i64, i64)) -> Result<Option<Homotopy>> {
    let p = t.w().p();
    let dw = t.w().dim();
    let (cone, fcone) = truncated_cones(t, r, lo)?;
    let trunc = r.norm_complex.naive_truncate_below(lo);

    // sigma[m]: F(cone^{m+1}) → F(cone^m)
    let mut sigma = BTreeMap::new();
    for m in lo - 1..=hi + 1 {
        let rows = fcone.dim_at(m);
        let cols = fcone.dim_at(m + 1);
        let mut s = Matrix::zeros(p, rows, cols);
        if let Some(step) = r.steps.get(&(m + 1)).filter(|_| m + 1 >= lo) {
            let e = step.embed.as_ref().expect("projective steps record embeddings");
            let q = step.q.dim();
            let c = cone.dim_at(m + 1);
            debug_assert_eq!(e.rows(), c);
            let Some(rho) = left_inverse(e)? else {
                return Ok(None);
            };
            let f_rho = Matrix::identity(p, dw).kron(&rho);
            let lifted = t.before_unit(&f_rho);
            let pm = trunc.dim_at(m + 1);
            let width = cone.dim_at(m);
            debug_assert_eq!(lifted.rows(), dw * pm);
            let neg = lifted.scale(p - 1);
            for w in 0..dw {
                s.set_block(w * width, 0, &neg.submatrix(w * pm, (w + 1) * pm, 0, dw * c));
            }
            debug_assert_eq!(q * dw * dw, pm);
        }
        sigma.insert(m, s);
    }
    let mut comps = BTreeMap::new();
    for m in lo..=hi + 1 {
        let id = Matrix::identity(p, fcone.dim_at(m));
        let pi = &id - &(&sigma[&m] * &fcone.d_matrix(m));
        comps.insert(m, &sigma[&(m - 1)] * &pi);
    }
    let s = Homotopy::from_fn(fcone.clone(), fcone, |n| comps.get(&n).cloned());
    Ok(contracts_on(&s, (lo, hi)).then_some(s))
}

/// `cone(p)` and `F(cone(p))` for `p` restricted to degrees `≥ lo` of the
/// normalized resolution; they agree with the full cones in degrees `≥ lo − 1`.
fn truncated_cones(t: &TensorTriple, r: &Resolution, lo: i64) -> Result<(Complex, Complex)> {
    let trunc = r.norm_complex.naive_truncate_below(lo);
    let pmap = ChainMap::from_fn(trunc, r.norm_target.clone(), |n| (n >= lo).then(|| r.norm_map.component(n)));
    let cone = pmap.cone().complex;
    let fcone = cone.tensor_left(t.w())?;
    Ok((cone, fcone))
}

fn left_inverse(e: &Matrix) -> Result<Option<Matrix>> {
    let p = e.p();
    let id = Matrix::identity(p, e.cols());
    match e.transpose().solve(&id)? {
        crate::field::Solution::Consistent { particular, .. } => Ok(Some(particular.transpose())),
        crate::field::Solution::Inconsistent => Ok(None),
    }
}

/// `Hom_{D_F}(X, Y[n])` as chain maps `P → Y[n]` modulo homotopy, where `P`
/// is the resolution of `X` cut down to degrees `[a − n − 1, b − n + 1]` for
/// `Y` supported in `[a, b]`. Terms outside that window meet no chain map
/// or homotopy.
pub fn derived_hom(t: &TensorTriple, r: &Resolution, y: &Complex, n: i64) -> Result<HomK> {
    if r.side != Side::Projective {
        return Err(Error::Precondition("derived_hom needs a projective resolution".into()));
    }
    let Some((a, b)) = y.support() else {
        return hom_k(&Complex::zero(y.algebra().clone()), y);
    };
    let need = a - n - 1;
    if r.end > need {
        return Err(Error::Window(format!(
            "resolution reaches degree {} but Hom into Y[{n}] needs degree {need}",
            r.end
        )));
    }
    let cert = r.certificate(t)?;
    if !cert.passed() {
        return Err(Error::Precondition(format!("resolution is not certified: {}", cert.failures.join("; "))));
    }
    hom_k(&window_with_small_bottom(r, need, b - n + 1)?, &y.shift(n))
}

/// The resolution on degrees `[m, top]`, with the term in degree `m`
/// replaced by the module `Q` it covers: `d^m = a ∘ ε_Q` for `a: Q → P^{m+1}`,
/// so both differentials have the same image. Maps into a complex starting
/// at `m + 1` only see that image, so `Hom_K` is unchanged.
fn window_with_small_bottom(r: &Resolution, m: i64, top: i64) -> Result<Complex> {
    let step = &r.steps[&(m - r.shift)];
    let Some(embed) = &step.embed else {
        return Ok(r.complex.naive_truncate_below(m).naive_truncate_above(top));
    };
    let top = top.max(m + 1);
    // `embed` stacks `a` over the component into the target
    let a = embed.submatrix(0, r.complex.dim_at(m + 1), 0, embed.cols());
    let mut terms = vec![step.q.clone()];
    let mut diffs = vec![a];
    for k in m + 1..=top {
        terms.push(r.complex.term(k));
        if k < top {
            diffs.push(r.complex.d_matrix(k));
        }
    }
    Complex::new(m, terms, diffs)
}

/// `dim Hom_{D_F}(M, N[n])` by two routes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtDims {
    pub n: usize,
    /// Through the projective resolution of `M` in degree 0.
    pub route_a: usize,
    /// As the stable hom `(Ω_F^n M, N)_F`.
    pub route_b: usize,
}

impl ExtDims {
    pub fn agree(&self) -> bool {
        self.route_a == self.route_b
    }
}

pub fn relative_ext(t: &TensorTriple, m: &Module, n_mod: &Module, n: usize) -> Result<ExtDims> {
    Ok(relative_ext_table(t, m, n_mod, n, n)?.remove(0))
}

/// [`relative_ext`] for `n` in `[from, to]`, sharing one resolution and one
/// chain of syzygies.
pub fn relative_ext_table(
    t: &TensorTriple,
    m: &Module,
    n_mod: &Module,
    from: usize,
    to: usize,
) -> Result<Vec<ExtDims>> {
    Ok(relative_ext_grid(t, m, std::slice::from_ref(n_mod), from, to)?.remove(0))
}

/// One [`relative_ext_table`] per target module, all from one resolution of `m`.
pub fn relative_ext_grid(
    t: &TensorTriple,
    m: &Module,
    targets: &[Module],
    from: usize,
    to: usize,
) -> Result<Vec<Vec<ExtDims>>> {
    if from == 0 || to < from {
        return Err(Error::Precondition("relative Ext needs 1 ≤ from ≤ to".into()));
    }
    let res = f_projective_resolution(t, &Complex::concentrated(m, 0), to + 2)?;
    let mut out = vec![Vec::new(); targets.len()];
    let mut syzygy = omega_pow(t, m, from);
    for n in from..=to {
        for (row, target) in out.iter_mut().zip(targets) {
            let y = Complex::concentrated(target, 0);
            let route_a = derived_hom(t, &res, &y, n as i64)?.dim();
            let route_b = stable_hom_dim(t, &syzygy, target)?;
            row.push(ExtDims { n, route_a, route_b });
        }
        if n < to {
            syzygy = omega_pow(t, &syzygy, 1);
        }
    }
    Ok(out)
}

/// A module standing for a bounded complex in the relative stable category.
#[derive(Clone, Debug)]
pub struct Representation {
    pub module: Module,
    /// Support `[lo, hi]` of `X` in the original grading.
    pub support: (i64, i64),
    /// `C = im(d_P^{r−1}) ⊆ P^r`, where `r = lo − hi` is the lowest degree
    /// after normalization; `module = Ω_F^{−(1−r)} C`.
    pub image: Module,
}

impl Representation {
    /// Smallest `n` with `Hom_{D_F}(X, N[n]) ≅ (Ω_F^{n+hi} M, N)_F` for every `N`.
    pub fn first_stable_degree(&self) -> i64 {
        1 - self.support.0
    }

    /// `(Ω_F^{n+hi} M, N)_F` computed directly from `M`.
    pub fn stable_hom_direct(&self, t: &TensorTriple, n: i64, target: &Module) -> Result<usize> {
        let e = n + self.support.1;
        if e < 1 {
            return Err(Error::Window(format!("shift {n} is below the stable range")));
        }
        stable_hom_dim(t, &omega_pow(t, &self.module, e as usize), target)
    }

    /// The same space as `(Ω_F^{n+lo−1} C, N)_F`, using `Ω_F^{n+hi} M ≅ Ω_F^{n+lo−1} C`.
    /// Much cheaper, since `C` is far smaller than `M`.
    pub fn stable_hom(&self, t: &TensorTriple, n: i64, target: &Module) -> Result<usize> {
        if n < self.first_stable_degree() {
            return Err(Error::Window(format!(
                "shift {n} is below the stable range starting at {}",
                self.first_stable_degree()
            )));
        }
        let e = (n + self.support.0 - 1) as usize;
        stable_hom_dim(t, &omega_pow(t, &self.image, e), target)
    }
}

/// A module `M` with `Hom_{D_F}(X, N[n]) ≅ (Ω_F^{n+hi} M, N)_F` for
/// `n ≥ 1 − lo`, where `X` is supported in `[lo, hi]`.
///
/// With `P → X` resolved below the lowest degree `r = lo − hi` of the
/// normalized complex, `P` is equivalent to `C → P^r → ⋯ → P^0` where
/// `C = im(d_P^{r−1})` sits in degree `r − 1`. The terms `P^i` vanish in the
/// stable category, so `X[hi]` corresponds to `Ω_F^{−(1−r)} C`. Below the
/// stated range the terms `P^i` still contribute to `Hom_{D_F}`.
pub fn represent_by_module(t: &TensorTriple, x: &Complex, depth: usize) -> Result<Representation> {
    let Some((lo, hi)) = x.support() else {
        return Err(Error::Precondition("the zero complex is represented by the zero module".into()));
    };
    let r = lo - hi;
    let need = (2 - r) as usize;
    if depth < need {
        return Err(Error::Window(format!(
            "a complex spanning {} degrees needs depth {need}, got {depth}",
            hi - lo + 1
        )));
    }
    let res = f_projective_resolution(t, x, depth)?;
    let d = res.norm_complex.d_matrix(r - 1);
    let (image, _) = res.norm_complex.term(r).submodule(&d.column_space())?;
    let module = omega_inv_pow(t, &image, (1 - r) as usize);
    Ok(Representation { module, support: (lo, hi), image })
}

/// One row comparing `Hom_{D_F}(X, N[n])` with the stable hom of the
/// representing module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantRow {
    pub target: usize,
    pub n: i64,
    pub derived: usize,
    pub stable: usize,
}

/// Compare both sides for each of `targets` and the first `count` shifts of
/// the stable range.
pub fn compare_invariants(
    t: &TensorTriple,
    x: &Complex,
    rep: &Representation,
    targets: &[Module],
    count: usize,
) -> Result<Vec<InvariantRow>> {
    let first = rep.first_stable_degree();
    let last = first + count as i64 - 1;
    let depth = (rep.support.1 + last + 2).max(1) as usize;
    let res = f_projective_resolution(t, x, depth)?;
    let mut rows = Vec::new();
    for n in first..=last {
        for (i, target) in targets.iter().enumerate() {
            let derived = derived_hom(t, &res, &Complex::concentrated(target, 0), n)?.dim();
            let stable = rep.stable_hom(t, n, target)?;
            rows.push(InvariantRow { target: i, n, derived, stable });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::contraction;
    use crate::modrep::GroupAlgebra;
    use crate::relexact::is_f_projective;

    fn c2() -> (TensorTriple, Module) {
        let alg = GroupAlgebra::cyclic(2, 2).unwrap();
        let t = TensorTriple::new(&Module::regular(alg.clone())).unwrap();
        (t, Module::trivial(alg))
    }

    #[test]
    fn fast_paths_match_structure_maps() {
        let (t, k) = c2();
        let y = Module::regular(k.algebra().clone()).direct_sum(&k).unwrap().module;
        let id = Matrix::identity(2, y.dim());
        assert_eq!(&t.after_counit(&id), t.counit(&y).matrix());
        assert_eq!(&t.before_unit(&id), t.unit(&y).matrix());
        assert_eq!(&t.before_unit(&id), t.left_unit(&y).matrix());
        assert!(t.zigzag_holds());
    }

    #[test]
    fn dims_follow_iterated_omega() {
        let (t, k) = c2();
        let res = f_projective_resolution(&t, &Complex::concentrated(&k, 0), 4).unwrap();
        assert_eq!(res.term_dims(), vec![4, 12, 36, 108]);
        let mut m = k.clone();
        for (i, dim) in res.term_dims().into_iter().enumerate() {
            assert_eq!(dim, t.l(&t.f(&m)).dim(), "degree -{i}");
            m = omega_pow(&t, &m, 1);
        }
        assert_eq!(res.end(), -3);
    }

    #[test]
    fn injective_dims_follow_iterated_omega_inv() {
        let (t, k) = c2();
        let res = f_injective_resolution(&t, &Complex::concentrated(&k, 0), 3).unwrap();
        let mut m = k.clone();
        for dim in res.term_dims() {
            assert_eq!(dim, t.r(&t.f(&m)).dim());
            m = omega_inv_pow(&t, &m, 1);
        }
    }

    #[test]
    fn certification_passes_both_sides() {
        let (t, k) = c2();
        for x in [Complex::concentrated(&k, 0), Complex::concentrated(&k, 3)] {
            let res = f_projective_resolution(&t, &x, 4).unwrap();
            let cert = res.certificate(&t).unwrap();
            assert!(cert.passed(), "{:?}", cert.failures);
            assert!(cert.contraction.is_some());
            let top = x.support().unwrap().1;
            assert_eq!(res.end(), top - 3);
            assert_eq!(res.complex().support(), Some((top - 3, top)));
            assert_eq!(res.window(), (top - 2, top));
            assert_eq!(cert.window, res.window());
            let inj = f_injective_resolution(&t, &x, 5).unwrap();
            let cert = inj.certificate(&t).unwrap();
            assert!(cert.passed(), "{:?}", cert.failures);
            assert_eq!(inj.end(), top + 4);
            assert_eq!(inj.window(), (top, top + 3));
        }
    }

    #[test]
    fn terms_are_f_projective_by_search() {
        let (t, k) = c2();
        let res = f_projective_resolution(&t, &Complex::concentrated(&k, 0), 2).unwrap();
        for n in [-1, 0] {
            assert!(is_f_projective(&t, &res.complex().term(n)).unwrap().is_some());
        }
    }

    #[test]
    fn structural_contraction_agrees_with_search() {
        let (t, k) = c2();
        let res = f_projective_resolution(&t, &Complex::concentrated(&k, 0), 3).unwrap();
        let (lo, hi) = res.norm_window();
        let trunc = res.norm_complex.naive_truncate_below(lo);
        let map = ChainMap::from_fn(trunc, res.norm_target.clone(), |n| Some(res.norm_map.component(n)));
        let fcone = map.cone().complex.tensor_left(t.w()).unwrap();
        assert!(contraction_on(&fcone, lo, hi).unwrap().is_some());
        assert!(projective_contraction(&t, &res, (lo, hi)).unwrap().is_some());
    }

    #[test]
    fn corrupted_differential_fails_cohomology() {
        let (t, k) = c2();
        let mut res = f_projective_resolution(&t, &Complex::concentrated(&k, 0), 3).unwrap();
        let c = &res.norm_complex;
        let broken = Complex::from_fn(
            c.algebra().clone(),
            -2,
            0,
            |n| c.term(n),
            |n| if n == -1 { Matrix::zeros(2, c.dim_at(0), c.dim_at(-1)) } else { c.d_matrix(n) },
        );
        res.norm_map = ChainMap::from_fn(broken.clone(), res.norm_target.clone(), |n| Some(res.norm_map.component(n)));
        res.norm_complex = broken;
        let cert = certify_resolution(&t, &res).unwrap();
        assert!(!cert.passed());
        assert!(cert.cohomology_injective.iter().any(|&(_, ok)| !ok));
    }

    #[test]
    fn hand_built_resolution_passes() {
        // P^0 = LF(k) → k by the counit, P^{-1} = LF(ker ε) through the inclusion
        let (t, k) = c2();
        let eps = t.counit(&k);
        let (omega, inc) = eps.kernel();
        let p0 = t.l(&t.f(&k));
        let p1 = t.l(&t.f(&omega));
        let d = inc.compose(&t.counit(&omega)).unwrap();
        let complex = Complex::new(-1, vec![p1, p0], vec![d.into_matrix()]).unwrap();
        let target = Complex::concentrated(&k, 0);
        let map = ChainMap::new(complex.clone(), target.clone(), 0, vec![eps.into_matrix()]).unwrap();
        let covers = BTreeMap::from([(-1, omega), (0, k)]);
        let res = Resolution::from_covers(target, complex, map, covers).unwrap();
        let cert = certify_resolution(&t, &res).unwrap();
        assert!(cert.passed(), "{:?}", cert.failures);
        assert_eq!(cert.window, (0, 0));
    }

    #[test]
    fn regular_module_resolves_to_a_stably_zero_syzygy() {
        let (t, k) = c2();
        let reg = Module::regular(k.algebra().clone());
        let res = f_projective_resolution(&t, &Complex::concentrated(&reg, 0), 2).unwrap();
        assert!(res.certificate(&t).unwrap().passed());
        let omega = omega_pow(&t, &reg, 1);
        assert_eq!(res.complex().dim_at(-1), t.l(&t.f(&omega)).dim());
        assert_eq!(stable_hom_dim(&t, &omega, &k).unwrap(), 0);
    }

    #[test]
    fn split_acyclic_input_has_acyclic_resolution() {
        let (t, _) = c2();
        let reg = Module::regular(t.w().algebra().clone());
        let id = Matrix::identity(2, reg.dim());
        let x = Complex::new(-1, vec![reg.clone(), reg], vec![id]).unwrap();
        let res = f_projective_resolution(&t, &x, 4).unwrap();
        let cert = res.certificate(&t).unwrap();
        assert!(cert.passed(), "{:?}", cert.failures);
        let (lo, hi) = res.window();
        for n in lo..=hi {
            assert_eq!(res.complex().cohomology_dim(n), 0);
        }
        assert!(contraction(&x).unwrap().is_some());
    }

    #[test]
    fn derived_hom_small_values() {
        let (t, k) = c2();
        let x = Complex::concentrated(&k, 0);
        let res = f_projective_resolution(&t, &x, 4).unwrap();
        assert_eq!(derived_hom(&t, &res, &x, 0).unwrap().dim(), 1);
        assert_eq!(derived_hom(&t, &res, &x, 1).unwrap().dim(), 1);
        // supports cannot meet
        assert_eq!(derived_hom(&t, &res, &x, -1).unwrap().dim(), 0);
        assert!(matches!(derived_hom(&t, &res, &x, 3), Err(Error::Window(_))));
    }

    #[test]
    fn ext_routes_agree_for_trivial_module() {
        let (t, k) = c2();
        let rows = relative_ext_table(&t, &k, &k, 1, 3).unwrap();
        let dims: Vec<(usize, usize)> = rows.iter().map(|r| (r.route_a, r.route_b)).collect();
        assert_eq!(dims, vec![(1, 1), (1, 1), (1, 1)]);
        let reg = Module::regular(k.algebra().clone());
        let rows = relative_ext_table(&t, &k, &reg, 1, 2).unwrap();
        assert!(rows.iter().all(|r| r.route_a == 0 && r.route_b == 0));
    }

    #[test]
    fn representation_of_a_module_matches() {
        let (t, k) = c2();
        let x = Complex::concentrated(&k, 0);
        let rep = represent_by_module(&t, &x, 2).unwrap();
        assert_eq!(rep.first_stable_degree(), 1);
        let targets = vec![k.clone(), Module::regular(k.algebra().clone())];
        for row in compare_invariants(&t, &x, &rep, &targets, 2).unwrap() {
            assert_eq!(row.derived, row.stable, "{row:?}");
            let direct = rep.stable_hom_direct(&t, row.n, &targets[row.target]).unwrap();
            assert_eq!(direct, row.stable, "{row:?}");
        }
        assert!(matches!(represent_by_module(&t, &x, 1), Err(Error::Window(_))));
        assert!(matches!(rep.stable_hom(&t, 0, &k), Err(Error::Window(_))));
    }

    #[test]
    fn representation_of_a_two_term_complex() {
        let (t, k) = c2();
        let reg = Module::regular(k.algebra().clone());
        // kG --(1+g)--> kG in degrees 1, 2: cohomology k in both degrees
        let norm = Matrix::from_rows(2, &[vec![1, 1], vec![1, 1]]).unwrap();
        let x = Complex::new(1, vec![reg.clone(), reg.clone()], vec![norm]).unwrap();
        let rep = represent_by_module(&t, &x, 3).unwrap();
        assert_eq!(rep.support, (1, 2));
        assert_eq!(rep.first_stable_degree(), 0);
        let targets = vec![k.clone(), reg];
        for row in compare_invariants(&t, &x, &rep, &targets, 2).unwrap() {
            assert_eq!(row.derived, row.stable, "{row:?}");
        }
    }
}
