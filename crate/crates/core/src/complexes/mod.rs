//! Bounded cochain complexes of modules, chain maps, homotopies and cones.
//!
//! Conventions: `X[k]^n = X^{n+k}` with differential `(−1)^k d`;
//! `cone(f)^n = X^{n+1} ⊕ Y^n` with differential `[[−d_X, 0], [f, d_Y]]`;
//! a homotopy has components `s^n: X^n → Y^{n−1}`.

mod chain;
mod complex;
mod hom;
mod relative;

pub use chain::{ChainMap, Cone, Homotopy};
pub use complex::Complex;
pub use hom::{chain_map_basis, contraction, contraction_on, hom_k, homotopy_solve, HomK};
pub use relative::{
    cone_comparison, graded_transfer, homotopy_from_graded, is_f_split_acyclic, smart_truncate, triangle_homotopy,
    triangle_witnesses, truncate_factor, DegreewiseMap, TruncatedFactor,
};

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::field::Matrix;
    use crate::modrep::{GroupAlgebra, Module};

    fn vs(dim: usize) -> Module {
        Module::trivial_of_dim(GroupAlgebra::trivial(2).unwrap(), dim)
    }

    fn two_term(d: &[Vec<i64>], lo: i64) -> Complex {
        let m = Matrix::from_rows(2, d).unwrap();
        Complex::new(lo, vec![vs(m.cols()), vs(m.rows())], vec![m]).unwrap()
    }

    fn gf2_matrices(rows: usize, cols: usize) -> Vec<Matrix> {
        (0u32..1 << (rows * cols))
            .map(|bits| Matrix::new(2, rows, cols, (0..rows * cols).map(|i| (bits >> i) & 1).collect()).unwrap())
            .collect()
    }

    /// Brute-force `dim Hom_K(X, Y)` for complexes of GF(2)-spaces
    /// supported in degrees 0 and 1.
    fn brute_hom_k(x: &Complex, y: &Complex) -> usize {
        let maps0 = gf2_matrices(y.dim_at(0), x.dim_at(0));
        let maps1 = gf2_matrices(y.dim_at(1), x.dim_at(1));
        let mut chain = std::collections::HashSet::new();
        for f0 in &maps0 {
            for f1 in &maps1 {
                if &y.d_matrix(0) * f0 == f1 * &x.d_matrix(0) {
                    chain.insert((f0.clone(), f1.clone()));
                }
            }
        }
        // the only homotopy component that matters is s^1: X^1 → Y^0
        let mut null = std::collections::HashSet::new();
        for s in gf2_matrices(y.dim_at(0), x.dim_at(1)) {
            null.insert((&s * &x.d_matrix(0), &y.d_matrix(0) * &s));
        }
        let ratio = chain.len() / null.len();
        assert_eq!(ratio * null.len(), chain.len());
        ratio.trailing_zeros() as usize
    }

    #[test]
    fn validation() {
        let bad = Matrix::from_rows(2, &[vec![1]]).unwrap();
        let err = Complex::new(0, vec![vs(1), vs(1), vs(1)], vec![bad.clone(), bad]).unwrap_err();
        assert!(err.to_string().contains("d^1 ∘ d^0"), "{err}");
        let x = two_term(&[vec![1]], 0);
        let bad_map = ChainMap::new(x.clone(), x.clone(), 0, vec![Matrix::from_rows(2, &[vec![1]]).unwrap()]);
        assert!(matches!(bad_map, Err(crate::Error::NotChainMap(_))));
        let trimmed =
            Complex::new(-1, vec![vs(0), vs(2), vs(0)], vec![Matrix::zeros(2, 2, 0), Matrix::zeros(2, 0, 2)]).unwrap();
        assert_eq!(trimmed.support(), Some((0, 0)));
    }

    #[test]
    fn shift_and_cone_conventions() {
        let g = GroupAlgebra::cyclic(3, 3).unwrap();
        let k = Module::trivial(g.clone());
        let x = Complex::new(0, vec![k.clone(), k.clone()], vec![Matrix::from_rows(3, &[vec![1]]).unwrap()]).unwrap();
        let s = x.shift(1);
        assert_eq!(s.support(), Some((-1, 0)));
        assert_eq!(s.d_matrix(-1).get(0, 0), 2);
        assert_eq!(x.shift(2).d_matrix(-2).get(0, 0), 1);

        let id = ChainMap::identity(&x);
        let cone = id.cone();
        cone.inclusion.validate().unwrap();
        cone.projection.validate().unwrap();
        assert_eq!(cone.complex.support(), Some((-1, 1)));
        let h = contraction(&cone.complex).unwrap().expect("cone of the identity is contractible");
        assert!(h.is_contraction());

        let y = Complex::concentrated(&Module::regular(g.clone()), 2);
        let zero = ChainMap::zero(&Complex::zero(g), &y);
        assert_eq!(zero.cone().complex, y);
    }

    #[test]
    fn contractibility_of_small_complexes() {
        let g = GroupAlgebra::cyclic(2, 2).unwrap();
        let k = Module::trivial(g.clone());
        let two = two_term(&[vec![1]], 0);
        let h = homotopy_solve(&ChainMap::identity(&two), &ChainMap::zero(&two, &two)).unwrap().unwrap();
        assert!(h.boundary() == ChainMap::identity(&two));
        assert!(h.component(1).is_identity());

        // cone of the zero map k → k in degree 0: k in degrees −1 and 0, d = 0
        let kk = Complex::concentrated(&k, 0);
        let c = ChainMap::zero(&kk, &kk).cone().complex;
        assert_eq!(c.support(), Some((-1, 0)));
        assert!(c.d_matrix(-1).is_zero());
        assert!(homotopy_solve(&ChainMap::identity(&c), &ChainMap::zero(&c, &c)).unwrap().is_none());
        assert!(contraction(&c).unwrap().is_none());

        // 0 → k → kC2 → k → 0 is exact but not split over kC2
        let kg = Module::regular(g.clone());
        let ses = Complex::new(
            0,
            vec![k.clone(), kg, k],
            vec![Matrix::from_rows(2, &[vec![1], vec![1]]).unwrap(), Matrix::from_rows(2, &[vec![1, 1]]).unwrap()],
        )
        .unwrap();
        assert!(ses.is_acyclic());
        assert!(contraction(&ses).unwrap().is_none());
        assert!(homotopy_solve(&ChainMap::identity(&ses), &ChainMap::zero(&ses, &ses)).unwrap().is_none());
    }

    #[test]
    fn hom_k_matches_enumeration_for_two_term_complexes() {
        let samples = [
            two_term(&[vec![1]], 0),
            two_term(&[vec![0]], 0),
            two_term(&[vec![1, 0]], 0),
            two_term(&[vec![1, 1], vec![0, 0]], 0),
            two_term(&[vec![1], vec![1]], 0),
            Complex::concentrated(&vs(2), 0),
            Complex::concentrated(&vs(1), 1),
        ];
        for x in &samples {
            for y in &samples {
                let hk = hom_k(x, y).unwrap();
                assert_eq!(hk.dim(), brute_hom_k(x, y), "{x:?} -> {y:?}");
                assert_eq!(hk.chain_maps.len(), hk.dim() + hk.null_dim);
            }
        }
    }

    #[test]
    fn contraction_agrees_with_global_solve() {
        let alg: Arc<GroupAlgebra> = GroupAlgebra::cyclic(2, 2).unwrap();
        let kg = Module::regular(alg.clone());
        let k = Module::trivial(alg.clone());
        // split exact 0 → k → kC2 ⊕ k → kC2 → 0
        let sum = kg.direct_sum(&k).unwrap().module;
        let x = Complex::new(
            0,
            vec![k.clone(), sum, kg.clone()],
            vec![
                Matrix::from_rows(2, &[vec![0], vec![0], vec![1]]).unwrap(),
                Matrix::from_rows(2, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap(),
            ],
        )
        .unwrap();
        let h = contraction(&x).unwrap().unwrap();
        assert!(h.is_contraction());
        assert!(homotopy_solve(&ChainMap::identity(&x), &ChainMap::zero(&x, &x)).unwrap().is_some());
    }
}
