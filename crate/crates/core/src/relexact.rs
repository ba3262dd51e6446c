//! The relative exact structure of a triple: F-split pairs, F-projectives,
//! the Heller translates `Ω_F`, `Ω_F⁻¹`, stable hom spaces and the transfer.

use crate::error::{Error, Result};
use crate::field::{Echelon, Matrix};
use crate::modrep::{Module, ModuleMap};
use crate::triple::objects::solve_in_span;
use crate::triple::{split_epi, split_mono, AdjointTriple, MapOf, Morphism, Object};

/// A short exact sequence `0 → X --i--> Y --d--> Z → 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactPair<M> {
    pub i: M,
    pub d: M,
}

impl<M: Morphism> ExactPair<M> {
    /// Checks `i` mono, `d` epi, `d∘i = 0` and `dim Y = dim X + dim Z`,
    /// which together make `i` a kernel of `d`.
    pub fn new(i: M, d: M) -> Result<Self> {
        i.validate()?;
        d.validate()?;
        if i.target() != d.source() {
            return Err(Error::NotExactPair("i and d are not composable".into()));
        }
        let (x, y, z) = (i.source().total_dim(), i.target().total_dim(), d.target().total_dim());
        if i.total_rank() != x {
            return Err(Error::NotExactPair("inflation is not injective".into()));
        }
        if d.total_rank() != z {
            return Err(Error::NotExactPair("deflation is not surjective".into()));
        }
        if d.compose(&i)?.to_vector().iter().any(|&c| c != 0) {
            return Err(Error::NotExactPair("d ∘ i != 0".into()));
        }
        if x + z != y {
            return Err(Error::NotExactPair(format!("dimensions {x} + {z} != {y}")));
        }
        Ok(ExactPair { i, d })
    }
}

/// A section of `F(d)` if the pair splits after applying `F`.
pub fn is_f_split<T: AdjointTriple>(t: &T, pair: &ExactPair<MapOf<T::A>>) -> Result<Option<MapOf<T::B>>> {
    split_epi(&t.f_map(&pair.d))
}

/// A section of the counit `ε_X: LFX → X`, present exactly when `X` is F-projective.
pub fn is_f_projective<T: AdjointTriple>(t: &T, x: &T::A) -> Result<Option<MapOf<T::A>>> {
    split_epi(&t.counit(x))
}

/// A retraction of the unit `η_X: X → RFX`, present exactly when `X` is F-injective.
pub fn is_f_injective<T: AdjointTriple>(t: &T, x: &T::A) -> Result<Option<MapOf<T::A>>> {
    split_mono(&t.unit(x))
}

/// `Ω_F X = ker(ε_X)` with the exact pair `Ω_F X → LFX → X`.
pub fn omega<T: AdjointTriple>(t: &T, x: &T::A) -> ExactPair<MapOf<T::A>> {
    let eps = t.counit(x);
    let (_, inc) = eps.kernel();
    ExactPair { i: inc, d: eps }
}

/// `Ω_F⁻¹ X = coker(η_X)` with the exact pair `X → RFX → Ω_F⁻¹ X`.
pub fn omega_inv<T: AdjointTriple>(t: &T, x: &T::A) -> ExactPair<MapOf<T::A>> {
    let eta = t.unit(x);
    let (_, proj) = eta.cokernel();
    ExactPair { i: eta, d: proj }
}

/// `Ω_F^n X` for `n ≥ 0`.
pub fn omega_pow<T: AdjointTriple>(t: &T, x: &T::A, n: usize) -> T::A {
    (0..n).fold(x.clone(), |acc, _| omega(t, &acc).i.source().clone())
}

/// `Ω_F^{−n} X` for `n ≥ 0`.
pub fn omega_inv_pow<T: AdjointTriple>(t: &T, x: &T::A, n: usize) -> T::A {
    (0..n).fold(x.clone(), |acc, _| omega_inv(t, &acc).d.target().clone())
}

/// Maps that extend the span of `start` greedily; returns chosen indices.
fn independent<M: Morphism>(p: u32, maps: &[M], start: &[Vec<u32>]) -> Vec<usize> {
    let mut ech = Echelon::new(p);
    for v in start {
        ech.insert(v);
    }
    maps.iter().enumerate().filter_map(|(i, m)| ech.insert(&m.to_vector()).then_some(i)).collect()
}

/// Basis of the maps `X → Y` factoring through an F-projective: the image
/// of `Hom(X, LFY)` under composition with `ε_Y`.
pub fn projective_maps_subspace<T: AdjointTriple>(t: &T, x: &T::A, y: &T::A) -> Result<Vec<MapOf<T::A>>> {
    let eps = t.counit(y);
    let lfy = eps.source().clone();
    let composites: Vec<MapOf<T::A>> =
        x.hom_basis_unreduced(&lfy)?.iter().map(|b| eps.compose(b)).collect::<Result<_>>()?;
    let chosen = independent(x.p(), &composites, &[]);
    Ok(chosen.into_iter().map(|i| composites[i].clone()).collect())
}

/// `Hom(X, Y)` modulo maps factoring through F-projectives.
#[derive(Clone, Debug)]
pub struct StableHomSpace<M> {
    pub ambient: Vec<M>,
    pub projective: Vec<M>,
    /// Ambient basis elements whose classes form a basis of the quotient.
    pub representatives: Vec<M>,
}

impl<M> StableHomSpace<M> {
    pub fn quotient_dim(&self) -> usize {
        self.representatives.len()
    }
}

pub fn stable_hom<T: AdjointTriple>(t: &T, x: &T::A, y: &T::A) -> Result<StableHomSpace<MapOf<T::A>>> {
    let ambient = x.hom_basis(y)?;
    let projective = projective_maps_subspace(t, x, y)?;
    let start: Vec<Vec<u32>> = projective.iter().map(|m| m.to_vector()).collect();
    let representatives = independent(x.p(), &ambient, &start).into_iter().map(|i| ambient[i].clone()).collect();
    Ok(StableHomSpace { ambient, projective, representatives })
}

/// Only the dimension of the stable hom space.
pub fn stable_hom_dim<T: AdjointTriple>(t: &T, x: &T::A, y: &T::A) -> Result<usize> {
    let ambient = x.hom_basis(y)?;
    if ambient.is_empty() {
        return Ok(0);
    }
    let proj = projective_maps_subspace(t, x, y)?;
    Ok(ambient.len() - proj.len())
}

/// `Tr(s) = ε_Y ∘ φ ∘ R(s) ∘ η_X` for `s: FX → FY`, where `φ: RFY → LFY`
/// is the Frobenius identification.
pub fn transfer<T: AdjointTriple>(t: &T, x: &T::A, y: &T::A, s: &MapOf<T::B>) -> Result<MapOf<T::A>> {
    let fy = t.f(y);
    let Some(phi) = t.frobenius(&fy) else {
        return Err(Error::Precondition(format!("{} has no Frobenius identification L ≅ R", t.label())));
    };
    if s.source() != &t.f(x) || s.target() != &fy {
        return Err(Error::DimensionMismatch("transfer expects a map FX → FY".into()));
    }
    t.counit(y).compose(&phi)?.compose(&t.r_map(s))?.compose(&t.unit(x))
}

/// Basis of the image of the transfer `Hom(FX, FY) → Hom(X, Y)`.
pub fn transfer_image<T: AdjointTriple>(t: &T, x: &T::A, y: &T::A) -> Result<Vec<MapOf<T::A>>> {
    let images: Vec<MapOf<T::A>> =
        t.f(x).hom_basis(&t.f(y))?.iter().map(|s| transfer(t, x, y, s)).collect::<Result<_>>()?;
    let chosen = independent(x.p(), &images, &[]);
    Ok(chosen.into_iter().map(|i| images[i].clone()).collect())
}

/// Whether every map in `a` lies in the span of `b`.
pub fn span_contains<M: Morphism>(b: &[M], a: &[M]) -> Result<bool> {
    for m in a {
        if solve_in_span(b, |x| Ok(x.clone()), m, m.source(), m.target())?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Higman's criterion: whether `id_X` lies in the image of the transfer.
pub fn higman<T: AdjointTriple>(t: &T, x: &T::A) -> Result<bool> {
    let image = transfer_image(t, x, x)?;
    span_contains(&image, &[MapOf::<T::A>::identity(x)])
}

/// Result of pulling an F-split deflation back along a map.
#[derive(Clone, Debug)]
pub struct PullbackReport {
    pub pullback: Module,
    /// The pulled-back deflation `q: P → W`.
    pub q: ModuleMap,
    /// The pulled-back pair `X → P → W`.
    pub pair: ExactPair<ModuleMap>,
    /// Section of `F(q)`.
    pub section: ModuleMap,
}

/// Pull the F-split pair `X → Y --d--> Z` back along `w: W → Z` and check
/// the result is again an F-split exact pair.
pub fn check_pullback_closure<T: AdjointTriple<A = Module, B = Module>>(
    t: &T,
    pair: &ExactPair<ModuleMap>,
    w: &ModuleMap,
) -> Result<PullbackReport> {
    if is_f_split(t, pair)?.is_none() {
        return Err(Error::Precondition("pair is not F-split".into()));
    }
    if w.target() != pair.d.target() {
        return Err(Error::DimensionMismatch("w must land in the target of d".into()));
    }
    let (y, wm) = (pair.d.source(), w.source());
    let pb = Matrix::pullback(pair.d.matrix(), w.matrix())?;
    let sum = y.direct_sum(wm)?;
    let (p_mod, _) = sum.module.submodule(&pb.basis)?;
    let q = ModuleMap::new(p_mod.clone(), wm.clone(), pb.proj_b.clone())?;
    // x ↦ (i x, 0) in coordinates of the pullback basis
    let zero = Matrix::zeros(y.p(), wm.dim(), pair.i.source().dim());
    let into_sum = Matrix::vstack(y.p(), &[pair.i.matrix(), &zero])?;
    let coords = Matrix::coordinates(&pb.basis, &into_sum)?
        .ok_or_else(|| Error::Precondition("kernel does not lie in the pullback".into()))?;
    let j = ModuleMap::new(pair.i.source().clone(), p_mod.clone(), coords)?;
    let new_pair = ExactPair::new(j, q.clone())?;
    let section =
        is_f_split(t, &new_pair)?.ok_or_else(|| Error::Precondition("pulled-back pair is not F-split".into()))?;
    Ok(PullbackReport { pullback: p_mod, q, pair: new_pair, section })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{contraction, ChainMap, Complex};
    use crate::modrep::{hom_space, GroupAlgebra};
    use crate::triple::{GradedForgetful, TensorTriple};

    struct C2 {
        k: Module,
        kg: Module,
        t: TensorTriple,
        id_t: TensorTriple,
    }

    fn c2() -> C2 {
        let g = GroupAlgebra::cyclic(2, 2).unwrap();
        let k = Module::trivial(g.clone());
        let kg = Module::regular(g.clone());
        C2 { t: TensorTriple::new(&kg).unwrap(), id_t: TensorTriple::new(&k).unwrap(), k, kg }
    }

    fn nonsplit(c: &C2) -> ExactPair<ModuleMap> {
        let i = ModuleMap::new(c.k.clone(), c.kg.clone(), Matrix::from_rows(2, &[vec![1], vec![1]]).unwrap()).unwrap();
        let d = ModuleMap::new(c.kg.clone(), c.k.clone(), Matrix::from_rows(2, &[vec![1, 1]]).unwrap()).unwrap();
        ExactPair::new(i, d).unwrap()
    }

    fn gf2_matrices(rows: usize, cols: usize) -> impl Iterator<Item = Matrix> {
        (0u64..1 << (rows * cols)).map(move |bits| {
            Matrix::new(2, rows, cols, (0..rows * cols).map(|i| ((bits >> i) & 1) as u32).collect()).unwrap()
        })
    }

    /// Brute-force stable hom dimension over GF(2): enumerate all
    /// intertwiners and all composites through the canonical cover.
    fn brute_stable_dim(t: &TensorTriple, x: &Module, y: &Module) -> usize {
        let intertwiners = |a: &Module, b: &Module| -> Vec<Matrix> {
            gf2_matrices(b.dim(), a.dim()).filter(|m| ModuleMap::new(a.clone(), b.clone(), m.clone()).is_ok()).collect()
        };
        let all = intertwiners(x, y).len();
        let eps = t.counit(y);
        let through: std::collections::HashSet<Matrix> =
            intertwiners(x, eps.source()).iter().map(|m| eps.matrix() * m).collect();
        let ratio = all / through.len();
        assert_eq!(ratio * through.len(), all);
        ratio.trailing_zeros() as usize
    }

    #[test]
    fn f_split_pairs() {
        let c = c2();
        let sum = c.kg.direct_sum(&c.k).unwrap();
        let split = ExactPair::new(sum.inclusions[0].clone(), sum.projections[1].clone()).unwrap();
        assert!(is_f_split(&c.t, &split).unwrap().is_some());
        assert!(is_f_split(&c.id_t, &split).unwrap().is_some());

        let ses = nonsplit(&c);
        let s = is_f_split(&c.t, &ses).unwrap().expect("kG ⊗ − splits every sequence");
        assert!(c.t.f_map(&ses.d).compose(&s).unwrap().matrix().is_identity());
        assert!(is_f_split(&c.id_t, &ses).unwrap().is_none());
        // exhaustive: no linear map k → kC2 is an intertwining section of d
        let sections = gf2_matrices(2, 1)
            .filter(|m| ModuleMap::new(c.k.clone(), c.kg.clone(), m.clone()).is_ok())
            .filter(|m| (ses.d.matrix() * m).is_identity())
            .count();
        assert_eq!(sections, 0);

        assert!(ExactPair::new(ses.d.clone(), ses.i.clone()).is_err());
        assert!(ExactPair::new(ses.i.clone(), ModuleMap::zero(&c.kg, &c.k).unwrap()).is_err());
    }

    #[test]
    fn projectivity_and_omega() {
        let c = c2();
        assert!(is_f_projective(&c.t, &c.t.l(&c.k)).unwrap().is_some());
        assert!(is_f_projective(&c.t, &Module::zero(c.k.algebra().clone())).unwrap().is_some());
        assert!(is_f_projective(&c.t, &c.k).unwrap().is_none());
        assert!(is_f_projective(&c.t, &c.kg).unwrap().is_some());
        assert!(is_f_injective(&c.t, &c.kg).unwrap().is_some());
        assert!(is_f_injective(&c.t, &c.k).unwrap().is_none());
        assert!(is_f_projective(&c.id_t, &c.k).unwrap().is_some());

        let pair = omega(&c.t, &c.k);
        let om = pair.i.source().clone();
        assert_eq!(om.dim(), 3);
        let pair = ExactPair::new(pair.i, pair.d).unwrap();
        assert!(is_f_split(&c.t, &pair).unwrap().is_some());
        assert_eq!(stable_hom(&c.t, &om, &c.k).unwrap().quotient_dim(), 1);
        assert_eq!(brute_stable_dim(&c.t, &om, &c.k), 1);

        let inv = omega_inv(&c.t, &c.k);
        assert_eq!(inv.d.target().dim(), 3);
        let inv = ExactPair::new(inv.i, inv.d).unwrap();
        assert!(is_f_split(&c.t, &inv).unwrap().is_some());

        let om_kg = omega(&c.t, &c.kg).i.source().clone();
        assert!(is_f_projective(&c.t, &om_kg).unwrap().is_some());
    }

    #[test]
    fn stable_homs_over_c2() {
        let c = c2();
        let kk = stable_hom(&c.t, &c.k, &c.k).unwrap();
        assert_eq!((kk.ambient.len(), kk.projective.len(), kk.quotient_dim()), (1, 0, 1));
        assert_eq!(brute_stable_dim(&c.t, &c.k, &c.k), 1);
        let pp = projective_maps_subspace(&c.t, &c.kg, &c.kg).unwrap();
        assert_eq!(pp.len(), 2);
        assert!(span_contains(&hom_space(&c.kg, &c.kg).unwrap(), &pp).unwrap());
        let om = omega_pow(&c.t, &c.k, 1);
        let om_inv = omega_inv_pow(&c.t, &c.k, 1);
        for x in [&c.k, &c.kg, &om] {
            assert_eq!(stable_hom_dim(&c.t, &c.kg, x).unwrap(), 0);
            assert_eq!(stable_hom_dim(&c.t, x, &c.kg).unwrap(), 0);
            for y in [&c.k, &c.kg] {
                // keep the enumeration of maps into LFY below 2^16 candidates
                if x.dim() * 4 * y.dim() <= 16 {
                    assert_eq!(stable_hom_dim(&c.t, x, y).unwrap(), brute_stable_dim(&c.t, x, y));
                }
            }
        }
        // shifting both sides and shift adjointness
        let (ok, okg) = (omega_pow(&c.t, &c.k, 1), omega_pow(&c.t, &c.kg, 1));
        assert_eq!(stable_hom_dim(&c.t, &ok, &ok).unwrap(), stable_hom_dim(&c.t, &c.k, &c.k).unwrap());
        assert_eq!(stable_hom_dim(&c.t, &ok, &okg).unwrap(), 0);
        assert_eq!(stable_hom_dim(&c.t, &ok, &c.k).unwrap(), stable_hom_dim(&c.t, &c.k, &om_inv).unwrap());
    }

    #[test]
    fn coprime_dimension_kills_everything() {
        let g = GroupAlgebra::cyclic(3, 3).unwrap();
        let w = Module::trivial_of_dim(g.clone(), 2);
        let t = TensorTriple::new(&w).unwrap();
        let mods = [Module::trivial(g.clone()), Module::regular(g.clone())];
        for x in &mods {
            assert!(is_f_projective(&t, x).unwrap().is_some());
            for y in &mods {
                assert_eq!(stable_hom_dim(&t, x, y).unwrap(), 0);
            }
        }
    }

    #[test]
    fn transfer_image_is_projective_maps() {
        let c = c2();
        for x in [&c.k, &c.kg] {
            for y in [&c.k, &c.kg] {
                let image = transfer_image(&c.t, x, y).unwrap();
                let proj = projective_maps_subspace(&c.t, x, y).unwrap();
                assert!(span_contains(&image, &proj).unwrap() && span_contains(&proj, &image).unwrap());
            }
            assert_eq!(higman(&c.t, x).unwrap(), is_f_projective(&c.t, x).unwrap().is_some());
        }
        let zero = ModuleMap::zero(&c.t.f(&c.k), &c.t.f(&c.k)).unwrap();
        assert!(transfer(&c.t, &c.k, &c.k, &zero).unwrap().is_zero());
        let g = GradedForgetful::new(2).unwrap();
        let x = Complex::concentrated(&g.space(1), 0);
        let s = crate::triple::Morphism::identity(&g.f(&x));
        assert!(matches!(transfer(&g, &x, &x, &s), Err(Error::Precondition(_))));
    }

    #[test]
    fn pullbacks_of_f_split_pairs() {
        let c = c2();
        let ses = nonsplit(&c);
        let id = ModuleMap::identity(&c.k);
        let r = check_pullback_closure(&c.t, &ses, &id).unwrap();
        assert_eq!(r.pullback.dim(), 2);
        let zero_mod = Module::zero(c.k.algebra().clone());
        let r = check_pullback_closure(&c.t, &ses, &ModuleMap::zero(&zero_mod, &c.k).unwrap()).unwrap();
        assert_eq!(r.pullback.dim(), 1);
        assert!(r.pair.i.is_surjective());
        let aug = ses.d.clone();
        let sum = c.kg.direct_sum(&c.k).unwrap();
        let w = aug.compose(&sum.projections[0]).unwrap().add(&sum.projections[1].clone()).unwrap();
        let r = check_pullback_closure(&c.t, &ses, &w).unwrap();
        assert!(c.t.f_map(&r.q).compose(&r.section).unwrap().matrix().is_identity());
        assert!(check_pullback_closure(&c.id_t, &ses, &id).is_err());
    }

    #[test]
    fn graded_projectives_are_contractible() {
        let g = GradedForgetful::new(2).unwrap();
        let one = |rows: &[Vec<i64>]| Matrix::from_rows(2, rows).unwrap();
        let samples = [
            g.complex(0, vec![one(&[vec![1]])], &[1, 1]).unwrap(),
            g.complex(0, vec![one(&[vec![0]])], &[1, 1]).unwrap(),
            g.complex(0, vec![one(&[vec![1, 0]])], &[2, 1]).unwrap(),
            g.complex(-1, vec![one(&[vec![1], vec![0]]), one(&[vec![0, 1]])], &[1, 2, 1]).unwrap(),
            Complex::concentrated(&g.space(1), 3),
        ];
        for x in &samples {
            let proj = is_f_projective(&g, x).unwrap().is_some();
            assert_eq!(proj, contraction(x).unwrap().is_some(), "{x:?}");
            assert_eq!(is_f_injective(&g, x).unwrap().is_some(), proj);
            if !proj {
                let om = omega(&g, x);
                assert!(ExactPair::new(om.i.clone(), om.d.clone()).is_ok());
                assert!(is_f_split(&g, &om).unwrap().is_some());
            }
        }
        let x = &samples[1];
        assert_eq!(stable_hom_dim(&g, x, x).unwrap(), crate::complexes::hom_k(x, x).unwrap().dim());
        let _ = ChainMap::identity(x);
    }
}
