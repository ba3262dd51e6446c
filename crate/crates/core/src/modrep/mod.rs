//! Group algebras over GF(p), their modules as matrix representations, and
//! the linear algebra of module maps.

mod algebra;
pub(crate) mod hom;
mod module;

pub use algebra::GroupAlgebra;
#[cfg(test)]
use hom::combine;
pub use hom::{
    find_isomorphism, hom_space, hom_space_kronecker, is_split_epi, is_split_mono, ISO_SEARCH_SEED, ISO_SEARCH_TRIALS,
};
pub use module::{DirectSum, Module, ModuleMap};

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::field::Matrix;

    fn c2() -> Arc<GroupAlgebra> {
        GroupAlgebra::cyclic(2, 2).unwrap()
    }

    /// All 2^(r·c) matrices over GF(2) of the given shape.
    fn all_gf2(rows: usize, cols: usize) -> impl Iterator<Item = Matrix> {
        (0u32..1 << (rows * cols)).map(move |bits| {
            let data = (0..rows * cols).map(|i| (bits >> i) & 1).collect();
            Matrix::new(2, rows, cols, data).unwrap()
        })
    }

    fn brute_hom_count(m: &Module, n: &Module) -> usize {
        all_gf2(n.dim(), m.dim()).filter(|t| ModuleMap::new(m.clone(), n.clone(), t.clone()).is_ok()).count()
    }

    #[test]
    fn hom_dimensions_over_c2() {
        let g = c2();
        let k = Module::trivial(g.clone());
        let kg = Module::regular(g.clone());
        assert_eq!(hom_space(&k, &k).unwrap().len(), 1);
        assert!(hom_space(&k, &k).unwrap()[0].matrix().is_identity());
        assert_eq!(hom_space(&kg, &kg).unwrap().len(), 2);
        assert_eq!(brute_hom_count(&kg, &kg), 4);
        assert_eq!(hom_space(&k, &kg).unwrap().len(), 1);
        assert_eq!(brute_hom_count(&k, &kg), 2);
        assert_eq!(hom_space(&kg, &k).unwrap().len(), 1);
    }

    #[test]
    fn sum_with_trivial_has_five_dimensional_endomorphisms() {
        let g = c2();
        let k = Module::trivial(g.clone());
        let kg = Module::regular(g.clone());
        let s = kg.direct_sum(&k).unwrap().module;
        assert_eq!(s.dim(), 3);
        assert_eq!(hom_space(&s, &s).unwrap().len(), 5);
        assert_eq!(brute_hom_count(&s, &s), 32);
        assert_eq!(hom_space_kronecker(&s, &s).unwrap(), hom_space(&s, &s).unwrap());
    }

    #[test]
    fn tensor_and_dual_of_regular() {
        let g = c2();
        let k = Module::trivial(g.clone());
        let kg = Module::regular(g.clone());
        let t = kg.tensor(&kg).unwrap();
        assert_eq!(t.dim(), 4);
        let two = kg.direct_sum(&kg).unwrap().module;
        let iso = find_isomorphism(&t, &two).unwrap().expect("kC2 ⊗ kC2 ≅ kC2 ⊕ kC2");
        iso.validate().unwrap();
        assert!(find_isomorphism(&kg.dual(), &kg).unwrap().is_some());
        assert_eq!(k.dual(), k);
        assert_eq!(kg.dual().dual(), kg);
        assert_eq!(k.tensor(&kg).unwrap(), kg);
        assert_eq!(kg.tensor(&Module::zero(g.clone())).unwrap().dim(), 0);
        // kC2 ⊕ kC2 is not isomorphic to the trivial 4-dimensional module
        assert!(find_isomorphism(&two, &Module::trivial_of_dim(g, 4)).unwrap().is_none());
    }

    #[test]
    fn counit_onto_trivial_does_not_split() {
        let g = c2();
        let k = Module::trivial(g.clone());
        let kg = Module::regular(g.clone());
        let src = kg.tensor(&kg.dual()).unwrap().tensor(&k).unwrap();
        // evaluation W ⊗ W* → k pairs e_i with e_i^*
        let ev = Matrix::from_rows(2, &[vec![1, 0, 0, 1]]).unwrap();
        let eps = ModuleMap::new(src.clone(), k.clone(), ev).unwrap();
        assert!(eps.is_surjective());
        assert!(is_split_epi(&eps).unwrap().is_none());
        let candidates = hom_space(&k, &src).unwrap();
        assert_eq!(candidates.len(), 2);
        // exhaustive cross-check over the candidate space
        for c in all_gf2(candidates.len(), 1) {
            let s = combine(&candidates, &c);
            assert!(!(eps.matrix() * s.matrix()).is_identity());
        }
    }

    #[test]
    fn split_basics() {
        let g = c2();
        let kg = Module::regular(g.clone());
        let k = Module::trivial(g.clone());
        let id = ModuleMap::identity(&kg);
        assert!(is_split_epi(&id).unwrap().unwrap().matrix().is_identity());
        assert!(is_split_mono(&id).unwrap().unwrap().matrix().is_identity());
        let zero = ModuleMap::zero(&kg, &k).unwrap();
        assert!(is_split_epi(&zero).unwrap().is_none());
        // the norm map k → kC2 is injective but not split
        let norm = ModuleMap::new(k.clone(), kg.clone(), Matrix::from_rows(2, &[vec![1], vec![1]]).unwrap()).unwrap();
        assert!(norm.is_injective());
        assert!(is_split_mono(&norm).unwrap().is_none());
        let sum = kg.direct_sum(&k).unwrap();
        let r = is_split_mono(&sum.inclusions[0]).unwrap().unwrap();
        assert!(r.compose(&sum.inclusions[0]).unwrap().matrix().is_identity());
    }

    #[test]
    fn validation_rejects_bad_input() {
        let g = c2();
        let swap = Matrix::from_rows(2, &[vec![0, 1], vec![1, 0]]).unwrap();
        let bad = Matrix::from_rows(2, &[vec![1, 1], vec![1, 0]]).unwrap();
        assert!(Module::from_generator_action(g.clone(), 2, &[swap.clone()]).is_ok());
        // bad² != I, so this is not a representation of C2
        assert!(Module::from_generator_action(g.clone(), 2, &[bad]).is_err());
        let kg = Module::regular(g.clone());
        let k = Module::trivial(g.clone());
        let e = ModuleMap::new(kg.clone(), k.clone(), Matrix::from_rows(2, &[vec![1, 0]]).unwrap());
        assert!(matches!(e, Err(crate::Error::NotIntertwiner(_))));
        let other = GroupAlgebra::cyclic(2, 3).unwrap();
        assert!(matches!(hom_space(&kg, &Module::trivial(other)), Err(crate::Error::AlgebraMismatch)));
    }

    #[test]
    fn kernel_image_quotient() {
        let g = c2();
        let kg = Module::regular(g.clone());
        let k = Module::trivial(g.clone());
        let aug = ModuleMap::new(kg.clone(), k.clone(), Matrix::from_rows(2, &[vec![1, 1]]).unwrap()).unwrap();
        let (ker, inc) = aug.kernel();
        assert_eq!(ker, k);
        inc.validate().unwrap();
        let (q, pi) = kg.quotient(inc.matrix()).unwrap();
        assert_eq!(q, k);
        pi.validate().unwrap();
        let (coker, proj) = inc.cokernel();
        assert_eq!(coker.dim(), 1);
        proj.validate().unwrap();
    }

    #[test]
    fn klein_four_permutation_modules() {
        let v4 = GroupAlgebra::from_permutations(2, &[vec![1, 0, 3, 2], vec![2, 3, 0, 1]]).unwrap();
        let w = Module::permutation(v4.clone(), &[0, v4.generators()[0]]).unwrap();
        let kg = Module::regular(v4.clone());
        assert_eq!(w.dim(), 2);
        assert_eq!(hom_space(&kg, &kg).unwrap().len(), 4);
        assert_eq!(hom_space(&w, &w).unwrap(), hom_space_kronecker(&w, &w).unwrap());
        let wt = w.tensor(&w.dual()).unwrap();
        assert_eq!(hom_space(&wt, &kg).unwrap(), hom_space_kronecker(&wt, &kg).unwrap());
    }
}
