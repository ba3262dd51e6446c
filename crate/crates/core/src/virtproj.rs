//! Virtual projectivity: stable homs `(G^n X, Y)_F` along iterates of an
//! endofunctor `G` of the relative stable category, evaluated on a finite
//! grid of exponents and test modules.
//!
//! A vanishing table is evidence on the tested range only. The defining
//! condition quantifies over all large `n` and all `Y`.

use std::collections::BTreeMap;
use std::fmt;

use crate::complexes::Complex;
use crate::error::{Error, Result};
use crate::field::Matrix;
use crate::modrep::{Module, ModuleMap};
use crate::relexact::{is_f_projective, is_f_split, omega, omega_inv, stable_hom_dim, ExactPair};
use crate::resolve::{derived_hom, f_projective_resolution};
use crate::triple::TensorTriple;

type ObjectFn = Box<dyn Fn(&Module) -> Result<Module> + Send + Sync>;
type MorphismFn = Box<dyn Fn(&ModuleMap) -> Result<ModuleMap> + Send + Sync>;

/// An endofunctor of the relative stable category, acting on module
/// representatives.
pub struct Endofunctor {
    label: String,
    object: ObjectFn,
    morphism: MorphismFn,
    /// A quasi-inverse `H` with `(G X, Y)_F ≅ (X, H Y)_F`, used to balance
    /// the sizes of the two arguments of a stable hom.
    inverse: Option<ObjectFn>,
}

impl fmt::Debug for Endofunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Endofunctor").field("label", &self.label).field("invertible", &self.inverse.is_some()).finish()
    }
}

impl Endofunctor {
    pub fn new(
        label: impl Into<String>,
        object: impl Fn(&Module) -> Result<Module> + Send + Sync + 'static,
        morphism: impl Fn(&ModuleMap) -> Result<ModuleMap> + Send + Sync + 'static,
    ) -> Self {
        Endofunctor { label: label.into(), object: Box::new(object), morphism: Box::new(morphism), inverse: None }
    }

    /// Declare a quasi-inverse `H` with `(G X, Y)_F ≅ (X, H Y)_F`.
    pub fn with_inverse(mut self, inverse: impl Fn(&Module) -> Result<Module> + Send + Sync + 'static) -> Self {
        self.inverse = Some(Box::new(inverse));
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn apply(&self, x: &Module) -> Result<Module> {
        (self.object)(x)
    }

    pub fn apply_map(&self, f: &ModuleMap) -> Result<ModuleMap> {
        (self.morphism)(f)
    }

    pub fn has_inverse(&self) -> bool {
        self.inverse.is_some()
    }

    pub fn apply_inverse(&self, y: &Module) -> Result<Option<Module>> {
        self.inverse.as_ref().map(|h| h(y)).transpose()
    }

    /// Whether `G` sends each F-projective sample to an F-projective module.
    pub fn preserves_projectives(&self, t: &TensorTriple, samples: &[Module]) -> Result<bool> {
        for x in samples {
            if is_f_projective(t, x)?.is_some() && is_f_projective(t, &self.apply(x)?)?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The Heller translate `X ↦ ker(ε^V_X)` of the `V`-tensor instance, as an
/// endofunctor of the stable category of `outer`. `V` must be F-projective
/// for `outer`.
pub fn omega_endofunctor(outer: &TensorTriple, v: &Module) -> Result<Endofunctor> {
    if is_f_projective(outer, v)?.is_none() {
        return Err(Error::Precondition("V is not F-projective for the outer instance".into()));
    }
    let inner = TensorTriple::new(v)?;
    let same = v == outer.w();
    let label = if same { "Omega_F".to_string() } else { format!("Omega_V(dim {})", v.dim()) };
    let obj = inner.clone();
    let mor = inner.clone();
    let functor =
        Endofunctor::new(label, move |x| Ok(omega(&obj, x).i.source().clone()), move |f| omega_on_map(&mor, f));
    if same {
        Ok(functor.with_inverse(move |y| Ok(omega_inv(&inner, y).d.target().clone())))
    } else {
        Ok(functor)
    }
}

/// `Ω(f)`: the restriction of `LF(f)` to the kernels of the counits.
fn omega_on_map(t: &TensorTriple, f: &ModuleMap) -> Result<ModuleMap> {
    use crate::triple::AdjointTriple;
    let ox = omega(t, f.source());
    let oy = omega(t, f.target());
    let lf = t.l_map(&t.f_map(f));
    let image = lf.matrix() * ox.i.matrix();
    let coords = Matrix::coordinates(oy.i.matrix(), &image)?
        .ok_or_else(|| Error::Precondition("LF(f) does not preserve the syzygies".into()))?;
    ModuleMap::new(ox.i.source().clone(), oy.i.source().clone(), coords)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Every entry of the table is zero. Evidence on the tested range only.
    VanishingOnTestedRange,
    /// The nonzero entry with the largest `n`, with the index of its test module.
    Witness { n: usize, y: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtualityReport {
    pub functor: String,
    pub n_min: usize,
    pub n_max: usize,
    /// `table[i][j] = dim (G^{n_min+i} X, Y_j)_F`.
    pub table: Vec<Vec<usize>>,
    pub verdict: Verdict,
}

impl VirtualityReport {
    pub fn entry(&self, n: usize, y: usize) -> usize {
        self.table[n - self.n_min][y]
    }

    pub fn vanishes(&self) -> bool {
        self.verdict == Verdict::VanishingOnTestedRange
    }

    /// Whether all entries with `n` in `[from, to]` vanish.
    pub fn vanishes_on(&self, from: usize, to: usize) -> bool {
        (from.max(self.n_min)..=to.min(self.n_max)).all(|n| self.table[n - self.n_min].iter().all(|&d| d == 0))
    }
}

/// Trivial module, regular module, then `extra`.
pub fn default_test_set(x: &Module, extra: &[Module]) -> Vec<Module> {
    let alg = x.algebra().clone();
    let mut ys = vec![Module::trivial(alg.clone()), Module::regular(alg)];
    ys.extend(extra.iter().cloned());
    ys
}

/// Table of `dim (G^n X, Y)_F` for `n` in `[n_min, n_max]` and `Y` in `ys`.
///
/// When `G` declares a quasi-inverse `H`, the entry for `n = a + b` is
/// computed as `(G^a X, H^b Y)_F` with `a = ⌈n/2⌉`. An F-projective `X` or
/// `Y` is zero in the stable category, so its row or column is zero without
/// iterating `G`.
pub fn classify(
    t: &TensorTriple,
    x: &Module,
    ys: &[Module],
    n_min: usize,
    n_max: usize,
    g: &Endofunctor,
) -> Result<VirtualityReport> {
    if n_max < n_min {
        return Err(Error::Precondition("classify needs n_min ≤ n_max".into()));
    }
    let x_zero = is_f_projective(t, x)?.is_some();
    let mut y_zero = Vec::with_capacity(ys.len());
    for y in ys {
        y_zero.push(is_f_projective(t, y)?.is_some());
    }
    let mut forward = Iterates::new(x.clone());
    let mut backward: Vec<Iterates> = ys.iter().map(|y| Iterates::new(y.clone())).collect();
    let mut table = Vec::with_capacity(n_max - n_min + 1);
    for n in n_min..=n_max {
        let mut row = vec![0; ys.len()];
        if !x_zero {
            let (a, b) = if g.has_inverse() { (n.div_ceil(2), n / 2) } else { (n, 0) };
            let gx = forward.get(a, |m| g.apply(m))?.clone();
            for ((entry, it), &zero) in row.iter_mut().zip(backward.iter_mut()).zip(&y_zero) {
                if !zero {
                    let hy = it.get(b, |m| Ok(g.apply_inverse(m)?.expect("inverse declared")))?;
                    *entry = stable_hom_dim(t, &gx, hy)?;
                }
            }
        }
        table.push(row);
    }
    let verdict = last_witness(&table, n_min);
    Ok(VirtualityReport { functor: g.label().to_string(), n_min, n_max, table, verdict })
}

fn last_witness(table: &[Vec<usize>], n_min: usize) -> Verdict {
    for (i, row) in table.iter().enumerate().rev() {
        if let Some(y) = row.iter().position(|&d| d != 0) {
            return Verdict::Witness { n: n_min + i, y };
        }
    }
    Verdict::VanishingOnTestedRange
}

/// Memoized iterates `x, G x, G² x, …`.
struct Iterates {
    seq: Vec<Module>,
}

impl Iterates {
    fn new(x: Module) -> Self {
        Iterates { seq: vec![x] }
    }

    fn get(&mut self, n: usize, step: impl Fn(&Module) -> Result<Module>) -> Result<&Module> {
        while self.seq.len() <= n {
            let next = step(self.seq.last().expect("nonempty"))?;
            self.seq.push(next);
        }
        Ok(&self.seq[n])
    }
}

/// The outcome of [`thick_closure_sample`] for one short exact sequence
/// `X → Y → Z`.
#[derive(Clone, Debug)]
pub struct ClosureCheck {
    /// Reports for `X`, `Y`, `Z` in order.
    pub reports: [VirtualityReport; 3],
    /// Whether exactly two terms vanished on the range, so the third was checked.
    pub checked: bool,
    pub violation: bool,
}

#[derive(Clone, Debug)]
pub struct ClosureReport {
    pub n_min: usize,
    pub n_max: usize,
    pub checks: Vec<ClosureCheck>,
}

impl ClosureReport {
    pub fn violations(&self) -> usize {
        self.checks.iter().filter(|c| c.violation).count()
    }
}

/// For each F-split sequence with two terms vanishing on `[n_min, n_max]`,
/// check that the third vanishes on `[n_min + 1, n_max − 1]`. The long
/// exact sequence shifts indices by one, so the edges of the range are
/// excluded.
pub fn thick_closure_sample(
    t: &TensorTriple,
    g: &Endofunctor,
    triangles: &[ExactPair<ModuleMap>],
    ys: &[Module],
    n_min: usize,
    n_max: usize,
) -> Result<ClosureReport> {
    let mut checks = Vec::with_capacity(triangles.len());
    for (idx, pair) in triangles.iter().enumerate() {
        if is_f_split(t, pair)?.is_none() {
            return Err(Error::Precondition(format!("sequence {idx} is not F-split")));
        }
        let terms = [pair.i.source(), pair.i.target(), pair.d.target()];
        let mut reports = Vec::with_capacity(3);
        for term in terms {
            reports.push(classify(t, term, ys, n_min, n_max, g)?);
        }
        let reports: [VirtualityReport; 3] = reports.try_into().expect("three terms");
        let vanishing: Vec<bool> = reports.iter().map(|r| r.vanishes()).collect();
        let count = vanishing.iter().filter(|&&v| v).count();
        let checked = count == 2;
        let violation = checked && {
            let third = vanishing.iter().position(|&v| !v).expect("one term is left");
            !reports[third].vanishes_on(n_min + 1, n_max.saturating_sub(1))
        };
        checks.push(ClosureCheck { reports, checked, violation });
    }
    Ok(ClosureReport { n_min, n_max, checks })
}

/// Shift-type endofunctors of the relative derived category, evaluated
/// through resolutions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftFunctor {
    /// `G = [−1]`, so `Hom(G^n X, Y) = Hom(X, Y[n])`.
    Shift,
    /// `G = id ⊕ [−1]`, so `G^n X = ⊕_k C(n, k) X[−k]`.
    SumOfShifts,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftTable {
    pub functor: ShiftFunctor,
    pub n_min: usize,
    pub n_max: usize,
    /// `table[i][j] = dim Hom_{D_F}(G^{n_min+i} X, Y_j)`.
    pub table: Vec<Vec<usize>>,
}

/// Table of `dim Hom_{D_F}(G^n X, Y)` for bounded complexes, with one
/// resolution of `X` deep enough for every entry.
pub fn shift_table(
    t: &TensorTriple,
    x: &Complex,
    ys: &[Complex],
    n_min: usize,
    n_max: usize,
    functor: ShiftFunctor,
) -> Result<ShiftTable> {
    if n_max < n_min {
        return Err(Error::Precondition("shift_table needs n_min ≤ n_max".into()));
    }
    let Some((_, top)) = x.support() else {
        return Ok(ShiftTable { functor, n_min, n_max, table: vec![vec![0; ys.len()]; n_max - n_min + 1] });
    };
    let lowest_needed = ys.iter().filter_map(|y| y.support()).map(|(a, _)| a - n_max as i64 - 1).min();
    let depth = lowest_needed.map_or(1, |need| (top - need + 1).max(1) as usize);
    let res = f_projective_resolution(t, x, depth)?;
    let from = match functor {
        ShiftFunctor::Shift => n_min,
        ShiftFunctor::SumOfShifts => 0,
    };
    let mut plain = BTreeMap::new();
    for k in from..=n_max {
        let row = ys.iter().map(|y| derived_hom(t, &res, y, k as i64).map(|h| h.dim())).collect::<Result<Vec<_>>>()?;
        plain.insert(k, row);
    }
    let table = (n_min..=n_max)
        .map(|n| match functor {
            ShiftFunctor::Shift => plain[&n].clone(),
            ShiftFunctor::SumOfShifts => {
                (0..ys.len()).map(|j| (0..=n).map(|k| binomial(n, k) * plain[&k][j]).sum()).collect()
            }
        })
        .collect();
    Ok(ShiftTable { functor, n_min, n_max, table })
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modrep::GroupAlgebra;
    use crate::relexact::omega_pow;

    fn c2() -> (TensorTriple, Module) {
        let alg = GroupAlgebra::cyclic(2, 2).unwrap();
        (TensorTriple::new(&Module::regular(alg.clone())).unwrap(), Module::trivial(alg))
    }

    fn v4_relative() -> (TensorTriple, Module) {
        let alg = GroupAlgebra::from_permutations(2, &[vec![1, 0, 3, 2], vec![2, 3, 0, 1]]).unwrap();
        let w = Module::permutation(alg.clone(), &[0, 1]).unwrap();
        (TensorTriple::new(&w).unwrap(), Module::trivial(alg))
    }

    #[test]
    fn balanced_entries_match_direct_iteration() {
        let (t, k) = v4_relative();
        let g = omega_endofunctor(&t, t.w()).unwrap();
        let ys = default_test_set(&k, &[t.w().clone()]);
        let report = classify(&t, &k, &ys, 0, 3, &g).unwrap();
        for n in 0..=3 {
            let gx = omega_pow(&t, &k, n);
            for (j, y) in ys.iter().enumerate() {
                assert_eq!(report.entry(n, j), stable_hom_dim(&t, &gx, y).unwrap(), "n={n} y={j}");
            }
        }
    }

    #[test]
    fn projective_subject_vanishes() {
        let (t, k) = c2();
        let g = omega_endofunctor(&t, t.w()).unwrap();
        let reg = Module::regular(k.algebra().clone());
        let report = classify(&t, &reg, &default_test_set(&k, &[]), 0, 3, &g).unwrap();
        assert!(report.vanishes());
        let report = classify(&t, &k, &default_test_set(&k, &[]), 0, 3, &g).unwrap();
        assert_eq!(report.verdict, Verdict::Witness { n: 3, y: 0 });
    }

    #[test]
    fn omega_endofunctor_requires_projective_v() {
        let (t, k) = v4_relative();
        assert!(omega_endofunctor(&t, &k).is_err());
        let (t, k) = c2();
        let reg = Module::regular(k.algebra().clone());
        let v = reg.direct_sum(&reg).unwrap().module;
        let g = omega_endofunctor(&t, &v).unwrap();
        assert!(!g.has_inverse());
        assert!(g.preserves_projectives(&t, &[reg, k]).unwrap());
    }

    #[test]
    fn omega_on_maps_is_functorial() {
        let (t, k) = c2();
        let g = omega_endofunctor(&t, t.w()).unwrap();
        let reg = Module::regular(k.algebra().clone());
        let basis = crate::modrep::hom_space(&reg, &reg).unwrap();
        for f in &basis {
            for h in &basis {
                let lhs = g.apply_map(&f.compose(h).unwrap()).unwrap();
                let rhs = g.apply_map(f).unwrap().compose(&g.apply_map(h).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        let id = ModuleMap::identity(&k);
        assert!(g.apply_map(&id).unwrap().matrix().is_identity());
    }

    #[test]
    fn closure_on_split_and_omega_sequences() {
        let (t, k) = v4_relative();
        let g = omega_endofunctor(&t, t.w()).unwrap();
        let ys = default_test_set(&k, &[]);
        let sum = k.direct_sum(t.w()).unwrap();
        let split = ExactPair::new(sum.inclusions[0].clone(), sum.projections[1].clone()).unwrap();
        let report = thick_closure_sample(&t, &g, &[split, omega(&t, &k)], &ys, 0, 3).unwrap();
        assert_eq!(report.violations(), 0);
    }

    #[test]
    fn shift_tables() {
        let (t, k) = c2();
        let x = Complex::concentrated(&k, 0);
        let plain = shift_table(&t, &x, std::slice::from_ref(&x), 0, 2, ShiftFunctor::Shift).unwrap();
        assert_eq!(plain.table, vec![vec![1], vec![1], vec![1]]);
        let sum = shift_table(&t, &x, &[x.clone()], 0, 2, ShiftFunctor::SumOfShifts).unwrap();
        assert_eq!(sum.table, vec![vec![1], vec![2], vec![4]]);
        assert_eq!(binomial(5, 2), 10);
    }
}
