use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Module, ModuleMap};
use crate::error::Result;
use crate::field::{Echelon, Matrix, Solution};

/// Seed for the randomized isomorphism search.
pub const ISO_SEARCH_SEED: u64 = 0x5EED_0F15;
/// Number of random combinations tried when exhaustive search is too large.
pub const ISO_SEARCH_TRIALS: usize = 256;

/// Basis of `Hom_kG(m, n)`, in canonical form: the row-major flattenings
/// of the returned matrices are the rows of a reduced echelon matrix.
pub fn hom_space(m: &Module, n: &Module) -> Result<Vec<ModuleMap>> {
    Ok(canonical(m, n, raw_homs(m, n)?))
}

/// A basis of `Hom_kG(m, n)` as it comes out of the solver, skipping the
/// reduction to canonical form.
pub(crate) fn hom_space_unreduced(m: &Module, n: &Module) -> Result<Vec<ModuleMap>> {
    Ok(raw_homs(m, n)?.into_iter().map(|t| ModuleMap::new_unchecked(m.clone(), n.clone(), t)).collect())
}

fn raw_homs(m: &Module, n: &Module) -> Result<Vec<Matrix>> {
    m.check_algebra(n)?;
    if m.dim() == 0 || n.dim() == 0 {
        return Ok(Vec::new());
    }
    let direct = Spin::new(m);
    let n_dual = n.dual();
    let dual = Spin::new(&n_dual);
    // a map M -> N is the transpose of a map N* -> M*
    Ok(if direct.seeds.len() * n.dim() <= dual.seeds.len() * m.dim() {
        direct.homs_into(n)
    } else {
        dual.homs_into(&m.dual()).into_iter().map(|t| t.transpose()).collect()
    })
}

/// Reference implementation solving `ρ_N(g)·T − T·ρ_M(g) = 0` for all
/// generators as one Kronecker-product system. Quadratic in `dim m · dim n`.
pub fn hom_space_kronecker(m: &Module, n: &Module) -> Result<Vec<ModuleMap>> {
    m.check_algebra(n)?;
    let p = m.p();
    let (dm, dn) = (m.dim(), n.dim());
    if dm == 0 || dn == 0 {
        return Ok(Vec::new());
    }
    // row-major vec(T): vec(A T B) = (A ⊗ Bᵀ) vec(T)
    let id_m = Matrix::identity(p, dm);
    let id_n = Matrix::identity(p, dn);
    let blocks: Vec<Matrix> = m
        .algebra()
        .generators()
        .iter()
        .map(|&g| &n.action(g).kron(&id_m) - &id_n.kron(&m.action(g).transpose()))
        .collect();
    let raw = if blocks.is_empty() {
        // trivial group: every linear map
        Matrix::identity(p, dm * dn)
    } else {
        Matrix::vstack(p, &blocks.iter().collect::<Vec<_>>())?.kernel_basis()
    };
    let maps = (0..raw.cols()).map(|j| raw.column(j).reshape(dn, dm)).collect();
    Ok(canonical(m, n, maps))
}

fn canonical(m: &Module, n: &Module, maps: Vec<Matrix>) -> Vec<ModuleMap> {
    let p = m.p();
    if maps.is_empty() {
        return Vec::new();
    }
    let rows: Vec<Matrix> = maps.iter().map(Matrix::flatten).collect();
    let stacked = Matrix::vstack(p, &rows.iter().collect::<Vec<_>>()).expect("equal lengths");
    let rref = stacked.rref();
    (0..rref.pivots.len())
        .map(|i| {
            let t = rref.reduced.submatrix(i, i + 1, 0, stacked.cols()).reshape(n.dim(), m.dim());
            ModuleMap::new_unchecked(m.clone(), n.clone(), t)
        })
        .collect()
}

#[derive(Clone, Copy)]
enum Origin {
    Seed,
    Child { parent: usize, slot: usize },
}

/// A basis of a module obtained by repeatedly applying generators to seed
/// vectors. A map out of the module is determined by the images of the seeds.
struct Spin {
    module: Module,
    basis: Matrix,
    basis_inv: Matrix,
    origin: Vec<Origin>,
    seed_of: Vec<usize>,
    seeds: Vec<usize>,
}

impl Spin {
    fn new(module: &Module) -> Spin {
        let p = module.p();
        let d = module.dim();
        let gens = module.generator_action();
        let mut span = Echelon::new(p);
        let mut vectors: Vec<Vec<u32>> = Vec::new();
        let mut origin = Vec::new();
        let mut seed_of = Vec::new();
        let mut seeds = Vec::new();
        for e in 0..d {
            if vectors.len() == d {
                break;
            }
            let mut v = vec![0; d];
            v[e] = 1;
            if !span.insert(&v) {
                continue;
            }
            let seed = seeds.len();
            seeds.push(vectors.len());
            vectors.push(v);
            origin.push(Origin::Seed);
            seed_of.push(seed);
            let mut head = vectors.len() - 1;
            while head < vectors.len() {
                for (slot, g) in gens.iter().enumerate() {
                    let w = apply(g, &vectors[head]);
                    if span.insert(&w) {
                        vectors.push(w);
                        origin.push(Origin::Child { parent: head, slot });
                        seed_of.push(seed);
                    }
                }
                head += 1;
            }
        }
        let mut basis = Matrix::zeros(p, d, d);
        for (j, v) in vectors.iter().enumerate() {
            for (i, &x) in v.iter().enumerate() {
                basis.set(i, j, x);
            }
        }
        let basis_inv = basis.inverse().expect("spin vectors are independent");
        Spin { module: module.clone(), basis, basis_inv, origin, seed_of, seeds }
    }

    /// Raw (non-canonical) basis of `Hom(self.module, n)`.
    fn homs_into(&self, n: &Module) -> Vec<Matrix> {
        let p = n.p();
        let d = self.module.dim();
        let dn = n.dim();
        let r = self.seeds.len();
        let gens_m = self.module.generator_action();
        let gens_n = n.generator_action();
        // T(b_j) = a[j] · y_{seed_of[j]}
        let mut a: Vec<Matrix> = Vec::with_capacity(d);
        for j in 0..d {
            let aj = match self.origin[j] {
                Origin::Seed => Matrix::identity(p, dn),
                Origin::Child { parent, slot } => gens_n[slot] * &a[parent],
            };
            a.push(aj);
        }
        let mut child = vec![None; d * gens_m.len()];
        for (l, o) in self.origin.iter().enumerate() {
            if let Origin::Child { parent, slot } = *o {
                child[parent * gens_m.len() + slot] = Some(l);
            }
        }
        let mut constraints: Vec<Matrix> = Vec::new();
        for (slot, g) in gens_m.iter().enumerate() {
            // coordinates of g·b_j in the spin basis
            let c = &self.basis_inv * &(*g * &self.basis);
            for j in 0..d {
                let col = c.column(j);
                if let Some(l) = child[j * gens_m.len() + slot] {
                    // g·b_j = b_l by construction; nothing to impose
                    if (0..d).all(|i| col.get(i, 0) == u32::from(i == l)) {
                        continue;
                    }
                }
                let mut blocks = vec![Matrix::zeros(p, dn, dn); r];
                for l in 0..d {
                    let coef = col.get(l, 0);
                    if coef != 0 {
                        let s = self.seed_of[l];
                        blocks[s] = &blocks[s] + &a[l].scale(coef);
                    }
                }
                let s = self.seed_of[j];
                blocks[s] = &blocks[s] - &(gens_n[slot] * &a[j]);
                constraints.push(Matrix::hstack(p, &blocks.iter().collect::<Vec<_>>()).expect("equal heights"));
            }
        }
        let kernel = if constraints.is_empty() {
            Matrix::identity(p, r * dn)
        } else {
            Matrix::vstack(p, &constraints.iter().collect::<Vec<_>>()).expect("equal widths").kernel_basis()
        };
        let count = kernel.cols();
        if count == 0 {
            return Vec::new();
        }
        // all solutions at once: row `k·dn + i`, column `j` holds entry `i` of `T_k(b_j)`
        let per_seed: Vec<Matrix> = (0..r).map(|s| kernel.submatrix(s * dn, (s + 1) * dn, 0, count)).collect();
        let mut spin = Matrix::zeros(p, count * dn, d);
        for j in 0..d {
            let block = &a[j] * &per_seed[self.seed_of[j]];
            for i in 0..dn {
                for (k, &v) in block.row(i).iter().enumerate() {
                    if v != 0 {
                        spin.set(k * dn + i, j, v);
                    }
                }
            }
        }
        let all = &spin * &self.basis_inv;
        (0..count).map(|k| all.submatrix(k * dn, (k + 1) * dn, 0, d)).collect()
    }
}

fn apply(m: &Matrix, v: &[u32]) -> Vec<u32> {
    let p = m.p() as u64;
    (0..m.rows())
        .map(|i| {
            let s: u64 = m.row(i).iter().zip(v).map(|(&a, &b)| a as u64 * b as u64).sum();
            (s % p) as u32
        })
        .collect()
}

/// A section `s` with `f ∘ s = id`, if one exists among module maps.
pub fn is_split_epi(f: &ModuleMap) -> Result<Option<ModuleMap>> {
    let candidates = hom_space(f.target(), f.source())?;
    let id = Matrix::identity(f.p(), f.target().dim());
    let zero = ModuleMap::zero(f.target(), f.source())?;
    solve_combination(&candidates, |s| f.matrix() * s.matrix(), &id, zero)
}

/// A retraction `r` with `r ∘ f = id`, if one exists among module maps.
pub fn is_split_mono(f: &ModuleMap) -> Result<Option<ModuleMap>> {
    let candidates = hom_space(f.target(), f.source())?;
    let id = Matrix::identity(f.p(), f.source().dim());
    let zero = ModuleMap::zero(f.target(), f.source())?;
    solve_combination(&candidates, |r| r.matrix() * f.matrix(), &id, zero)
}

/// Find a combination `Σ c_i b_i` of `basis` with `op(Σ c_i b_i) = goal`,
/// where `op` is linear. `zero` is the zero map of the right shape.
pub(crate) fn solve_combination(
    basis: &[ModuleMap],
    op: impl Fn(&ModuleMap) -> Matrix,
    goal: &Matrix,
    zero: ModuleMap,
) -> Result<Option<ModuleMap>> {
    let p = goal.p();
    let target = goal.flatten().transpose();
    if basis.is_empty() {
        return Ok(goal.is_zero().then_some(zero));
    }
    let cols: Vec<Matrix> = basis.iter().map(|b| op(b).flatten().transpose()).collect();
    let system = Matrix::hstack(p, &cols.iter().collect::<Vec<_>>())?;
    Ok(match system.solve(&target)? {
        Solution::Inconsistent => None,
        Solution::Consistent { particular, .. } => Some(combine(basis, &particular)),
    })
}

/// `Σ coeffs[i] · basis[i]` for a column of coefficients.
pub(crate) fn combine(basis: &[ModuleMap], coeffs: &Matrix) -> ModuleMap {
    let mut acc = basis[0].scale(coeffs.get(0, 0));
    for (i, b) in basis.iter().enumerate().skip(1) {
        let c = coeffs.get(i, 0);
        if c != 0 {
            acc = acc.add(&b.scale(c)).expect("parallel basis");
        }
    }
    acc
}

/// An isomorphism `m → n`, searched among combinations of the hom basis.
/// Exhaustive over GF(2)/GF(3) when the hom space has dimension at most 8,
/// otherwise a fixed-seed random search, so `None` is only conclusive in the
/// exhaustive regime or when the dimensions differ.
pub fn find_isomorphism(m: &Module, n: &Module) -> Result<Option<ModuleMap>> {
    m.check_algebra(n)?;
    if m.dim() != n.dim() {
        return Ok(None);
    }
    if m.dim() == 0 {
        return Ok(Some(ModuleMap::new_unchecked(m.clone(), n.clone(), Matrix::zeros(m.p(), 0, 0))));
    }
    let basis = hom_space(m, n)?;
    if basis.is_empty() {
        return Ok(None);
    }
    let p = m.p();
    let h = basis.len();
    let invertible = |c: &[u32]| {
        let coeffs = Matrix::column_vector(p, c);
        let f = combine(&basis, &coeffs);
        (f.rank() == m.dim()).then_some(f)
    };
    if p <= 3 && h <= 8 {
        let total = (p as usize).pow(h as u32);
        let mut c = vec![0u32; h];
        for mut k in 1..total {
            for x in c.iter_mut() {
                *x = (k % p as usize) as u32;
                k /= p as usize;
            }
            if let Some(f) = invertible(&c) {
                return Ok(Some(f));
            }
        }
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ISO_SEARCH_SEED);
    for _ in 0..ISO_SEARCH_TRIALS {
        let c: Vec<u32> = (0..h).map(|_| rng.gen_range(0..p)).collect();
        if let Some(f) = invertible(&c) {
            return Ok(Some(f));
        }
    }
    Ok(None)
}
