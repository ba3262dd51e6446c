use super::chain::{ChainMap, Homotopy};
use super::complex::{union_range, Complex};
use crate::error::{Error, Result};
use crate::field::{Echelon, Matrix, Solution};
use crate::modrep::{hom_space, is_split_epi, ModuleMap};

/// Per-degree bases of `Hom_kG(X^n, Y^{n+shift})` over the degrees where
/// both ends can be nonzero.
fn graded_bases(x: &Complex, y: &Complex, shift: i64) -> Result<Vec<(i64, Vec<ModuleMap>)>> {
    let (a, b) = union_range(x, &y.shift(shift));
    let mut out = Vec::new();
    for n in a..=b {
        let (s, t) = (x.term(n), y.term(n + shift));
        if s.dim() > 0 && t.dim() > 0 {
            out.push((n, hom_space(&s, &t)?));
        }
    }
    Ok(out)
}

fn stack_columns(p: u32, rows: usize, cols: &[Vec<u32>]) -> Matrix {
    let mut m = Matrix::zeros(p, rows, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (i, &v) in c.iter().enumerate() {
            if v != 0 {
                m.set(i, j, v);
            }
        }
    }
    m
}

/// Basis of the space of chain maps `X → Y`.
pub fn chain_map_basis(x: &Complex, y: &Complex) -> Result<Vec<ChainMap>> {
    if !x.algebra().as_ref().eq(y.algebra().as_ref()) {
        return Err(Error::AlgebraMismatch);
    }
    let p = x.p();
    let bases = graded_bases(x, y, 0)?;
    let unknowns: usize = bases.iter().map(|(_, b)| b.len()).sum();
    if unknowns == 0 {
        return Ok(Vec::new());
    }
    // constraint for degree n: d_Y^n f^n − f^{n+1} d_X^n = 0
    let (a, b) = union_range(x, y);
    let mut offset = std::collections::BTreeMap::new();
    let mut rows = 0;
    for n in a - 1..=b {
        offset.insert(n, rows);
        rows += y.dim_at(n + 1) * x.dim_at(n);
    }
    let mut columns = Vec::with_capacity(unknowns);
    for (n, basis) in &bases {
        let n = *n;
        let (dy, dx) = (y.d_matrix(n), x.d_matrix(n - 1));
        for h in basis {
            let mut col = vec![0u32; rows];
            let out = &dy * h.matrix();
            col[offset[&n]..offset[&n] + out.data().len()].copy_from_slice(out.data());
            let inc = &(h.matrix() * &dx).scale(p - 1);
            let o = offset[&(n - 1)];
            col[o..o + inc.data().len()].copy_from_slice(inc.data());
            columns.push(col);
        }
    }
    let system = stack_columns(p, rows, &columns);
    let kernel = system.kernel_basis();
    Ok((0..kernel.cols()).map(|k| assemble_chain_map(x, y, &bases, &kernel, k)).collect())
}

fn assemble_chain_map(
    x: &Complex,
    y: &Complex,
    bases: &[(i64, Vec<ModuleMap>)],
    coeffs: &Matrix,
    col: usize,
) -> ChainMap {
    let p = x.p();
    let mut comps = std::collections::BTreeMap::new();
    let mut idx = 0;
    for (n, basis) in bases {
        let mut acc = Matrix::zeros(p, y.dim_at(*n), x.dim_at(*n));
        for h in basis {
            let c = coeffs.get(idx, col);
            if c != 0 {
                acc = &acc + &h.matrix().scale(c);
            }
            idx += 1;
        }
        comps.insert(*n, acc);
    }
    ChainMap::from_fn(x.clone(), y.clone(), |n| comps.get(&n).cloned())
}

/// Null-homotopic maps `s∘d + d∘s` for `s` running over a basis of
/// `kG`-linear degree `−1` maps, together with those `s`. The maps are given
/// as [`ChainMap::to_vector`] coordinates; only degrees `n − 1` and `n` of
/// the boundary of `s: X^n → Y^{n−1}` are nonzero.
fn boundary_generators(x: &Complex, y: &Complex) -> Result<Vec<(i64, ModuleMap, Vec<u32>)>> {
    let (a, b) = union_range(x, y);
    let mut offset = std::collections::BTreeMap::new();
    let mut len = 0;
    for m in a..=b {
        offset.insert(m, len);
        len += y.dim_at(m) * x.dim_at(m);
    }
    let mut out = Vec::new();
    for (n, basis) in graded_bases(x, y, -1)? {
        let (dx, dy) = (x.d_matrix(n - 1), y.d_matrix(n - 1));
        for s in basis {
            let mut v = vec![0u32; len];
            let top = &dy * s.matrix();
            v[offset[&n]..offset[&n] + top.data().len()].copy_from_slice(top.data());
            let bottom = s.matrix() * &dx;
            v[offset[&(n - 1)]..offset[&(n - 1)] + bottom.data().len()].copy_from_slice(bottom.data());
            out.push((n, s, v));
        }
    }
    Ok(out)
}

/// Chain maps `X → Y` modulo null-homotopic maps.
#[derive(Clone, Debug)]
pub struct HomK {
    /// Basis of all chain maps.
    pub chain_maps: Vec<ChainMap>,
    /// Dimension of the subspace of null-homotopic maps.
    pub null_dim: usize,
    /// Chain maps whose classes form a basis of the quotient.
    pub representatives: Vec<ChainMap>,
}

impl HomK {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }
}

/// `Hom_{K}(X, Y)`: chain maps modulo homotopy.
pub fn hom_k(x: &Complex, y: &Complex) -> Result<HomK> {
    let chain_maps = chain_map_basis(x, y)?;
    let p = x.p();
    let mut span = Echelon::new(p);
    for (_, _, v) in boundary_generators(x, y)? {
        span.insert(&v);
    }
    let null_dim = span.rank();
    let representatives: Vec<ChainMap> = chain_maps.iter().filter(|f| span.insert(&f.to_vector())).cloned().collect();
    debug_assert_eq!(representatives.len() + null_dim, chain_maps.len());
    Ok(HomK { chain_maps, null_dim, representatives })
}

/// A homotopy `s` with `f − g = s∘d + d∘s`, if one exists.
pub fn homotopy_solve(f: &ChainMap, g: &ChainMap) -> Result<Option<Homotopy>> {
    let diff = f.sub(g)?;
    let (x, y) = (f.source(), f.target());
    let p = x.p();
    let gens = boundary_generators(x, y)?;
    let len = diff.to_vector().len();
    let goal = stack_columns(p, len, &[diff.to_vector()]);
    if gens.is_empty() {
        return Ok(diff.is_zero().then(|| Homotopy::zero(x, y)));
    }
    let cols: Vec<Vec<u32>> = gens.iter().map(|(_, _, v)| v.clone()).collect();
    let system = stack_columns(p, len, &cols);
    let Solution::Consistent { particular, .. } = system.solve(&goal)? else {
        return Ok(None);
    };
    let mut comps = std::collections::BTreeMap::<i64, Matrix>::new();
    for (i, (n, s, _)) in gens.iter().enumerate() {
        let c = particular.get(i, 0);
        let entry = comps.entry(*n).or_insert_with(|| Matrix::zeros(p, y.dim_at(n - 1), x.dim_at(*n)));
        if c != 0 {
            *entry = &*entry + &s.matrix().scale(c);
        }
    }
    Ok(Some(Homotopy::from_fn(x.clone(), y.clone(), |n| comps.get(&n).cloned())))
}

/// A `kG`-linear contraction of `x`, built degree by degree from sections
/// of the differentials onto the cycles; `None` if `x` is not contractible.
pub fn contraction(x: &Complex) -> Result<Option<Homotopy>> {
    let Some((a, b)) = x.support() else {
        return Ok(Some(Homotopy::zero(x, x)));
    };
    contraction_on(x, a, b)
}

/// A homotopy `s` with `(s∘d + d∘s)^n = id` for every `n` in `[from, to]`,
/// built from `kG`-sections `σ_{m−1}: Z^m → X^{m−1}` of the differentials
/// onto the cycles, `s^m = σ_{m−1} ∘ (id − σ_m d^m)`. Returns `None` when the
/// complex is not exact somewhere in `[from, to + 2]` or a section fails to
/// exist, which for `[from, to]` covering the support means `x` is not
/// contractible.
pub fn contraction_on(x: &Complex, from: i64, to: i64) -> Result<Option<Homotopy>> {
    let p = x.p();
    let mut kernels = std::collections::BTreeMap::new();
    for m in from..=to + 2 {
        kernels.insert(m, x.d_matrix(m).kernel_basis());
    }
    // sections[m] = (σ_m, coordinates of d^m in the basis of Z^{m+1})
    let mut sections = std::collections::BTreeMap::new();
    for m in from..=to + 2 {
        let k = &kernels[&m];
        let d_prev = x.d_matrix(m - 1);
        if d_prev.rank() != k.cols() {
            return Ok(None);
        }
        let coords = Matrix::coordinates(k, &d_prev)?.expect("boundaries are cycles");
        let (z, _) = x.term(m).submodule(k)?;
        let onto = ModuleMap::new_unchecked(x.term(m - 1), z, coords.clone());
        let Some(sigma) = is_split_epi(&onto)? else {
            return Ok(None);
        };
        sections.insert(m - 1, (sigma.into_matrix(), coords));
    }
    let mut comps = std::collections::BTreeMap::new();
    for m in from..=to + 1 {
        let (sigma_m, coords_m) = &sections[&m];
        let id = Matrix::identity(p, x.dim_at(m));
        let retract = &id - &(sigma_m * coords_m);
        let pi = Matrix::coordinates(&kernels[&m], &retract)?.expect("retraction lands in cycles");
        comps.insert(m, &sections[&(m - 1)].0 * &pi);
    }
    Ok(Some(Homotopy::from_fn(x.clone(), x.clone(), |n| comps.get(&n).cloned())))
}
