//! Exact faithful functors `F: A → B` with left and right adjoints `L, R`,
//! and the two concrete instances: tensoring with a module and forgetting
//! the differential of a complex.

mod graded;
pub(crate) mod objects;
mod tensor;

use std::fmt;

pub use graded::{GradedForgetful, GradedMap, GradedSpace};
pub use objects::{combine_maps, split_epi, split_mono, Morphism, Object};
pub use tensor::TensorTriple;

use crate::error::Result;

pub type MapOf<O> = <O as Object>::Map;

/// An exact faithful functor `F: A → B` with adjoints `L ⊣ F ⊣ R`.
pub trait AdjointTriple {
    type A: Object;
    type B: Object;

    fn label(&self) -> String;

    fn f(&self, x: &Self::A) -> Self::B;
    fn f_map(&self, h: &MapOf<Self::A>) -> MapOf<Self::B>;
    fn l(&self, y: &Self::B) -> Self::A;
    fn l_map(&self, h: &MapOf<Self::B>) -> MapOf<Self::A>;
    fn r(&self, y: &Self::B) -> Self::A;
    fn r_map(&self, h: &MapOf<Self::B>) -> MapOf<Self::A>;

    /// Counit of `L ⊣ F`: `ε_X: LFX → X`.
    fn counit(&self, x: &Self::A) -> MapOf<Self::A>;
    /// Unit of `F ⊣ R`: `η_X: X → RFX`.
    fn unit(&self, x: &Self::A) -> MapOf<Self::A>;
    /// Unit of `L ⊣ F`: `Y → FLY`.
    fn left_unit(&self, y: &Self::B) -> MapOf<Self::B>;
    /// Counit of `F ⊣ R`: `FRY → Y`.
    fn right_counit(&self, y: &Self::B) -> MapOf<Self::B>;

    /// For instances where `L ≅ R`, the natural isomorphism `RY → LY`.
    fn frobenius(&self, _y: &Self::B) -> Option<MapOf<Self::A>> {
        None
    }

    fn is_frobenius(&self) -> bool;
}

/// One assertion made by [`validate_triple`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub subject: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TripleReport {
    pub checks: Vec<Check>,
}

impl TripleReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn record(&mut self, name: &str, subject: impl fmt::Display, passed: bool) {
        self.checks.push(Check { name: name.into(), subject: subject.to_string(), passed });
    }
}

fn is_identity<M: Morphism>(m: &Result<M>) -> bool {
    m.as_ref().is_ok_and(|m| *m == M::identity(m.source()) && m.source() == m.target())
}

/// Check the standing hypotheses and adjunction identities of `t` on the
/// sample objects and sample maps (named for the report).
pub fn validate_triple<T: AdjointTriple>(
    t: &T,
    samples: &[(String, T::A)],
    maps: &[(String, MapOf<T::A>)],
) -> Result<TripleReport> {
    let mut report = TripleReport::default();
    for (name, x) in samples {
        let fx = t.f(x);
        let eps = t.counit(x);
        let eta = t.unit(x);
        report.record("counit is a morphism", name, eps.validate().is_ok());
        report.record("unit is a morphism", name, eta.validate().is_ok());
        report.record("counit is epi", name, eps.total_rank() == x.total_dim());
        report.record("unit is mono", name, eta.total_rank() == x.total_dim());
        report.record("F faithful on objects", name, fx.total_dim() > 0 || x.total_dim() == 0);

        let lu = t.left_unit(&fx);
        report.record("F(counit) split by the left unit", name, is_identity(&t.f_map(&eps).compose(&lu)));
        let lfx = t.l(&fx);
        report.record("counit at L triangle", name, is_identity(&t.counit(&lfx).compose(&t.l_map(&lu))));
        let rc = t.right_counit(&fx);
        report.record("F(unit) split by the right counit", name, is_identity(&rc.compose(&t.f_map(&eta))));
        let rfx = t.r(&fx);
        report.record("unit at R triangle", name, is_identity(&t.r_map(&rc).compose(&t.unit(&rfx))));

        if let Some(phi) = t.frobenius(&fx) {
            let ok = phi.validate().is_ok() && phi.total_rank() == lfx.total_dim() && phi.source() == &rfx;
            report.record("Frobenius identification is an isomorphism", name, ok);
        }

        for (other, x2) in samples {
            let y = t.f(x2);
            let pair = format!("{name}, {other}");
            let lhs = fx.hom_basis(&y)?.len();
            let rhs = x.hom_basis(&t.r(&y))?.len();
            report.record("dim (FX, Y) = dim (X, RY)", &pair, lhs == rhs);
            let lhs = t.l(&y).hom_basis(x)?.len();
            let rhs = y.hom_basis(&fx)?.len();
            report.record("dim (LY, X) = dim (Y, FX)", &pair, lhs == rhs);
        }
    }
    for (name, h) in maps {
        let (x, x2) = (h.source(), h.target());
        let lfh = t.l_map(&t.f_map(h));
        let square = t.counit(x2).compose(&lfh).ok() == h.compose(&t.counit(x)).ok();
        report.record("counit natural", name, square);
        let rfh = t.r_map(&t.f_map(h));
        let square = t.unit(x2).compose(h).ok() == rfh.compose(&t.unit(x)).ok();
        report.record("unit natural", name, square);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{contraction, ChainMap, Complex};
    use crate::field::Matrix;
    use crate::modrep::{GroupAlgebra, Module, ModuleMap};

    fn named<T: Clone>(items: &[(&str, T)]) -> Vec<(String, T)> {
        items.iter().map(|(n, x)| (n.to_string(), x.clone())).collect()
    }

    #[test]
    fn tensor_with_regular_module_over_c2() {
        let g = GroupAlgebra::cyclic(2, 2).unwrap();
        let k = Module::trivial(g.clone());
        let kg = Module::regular(g.clone());
        let t = TensorTriple::new(&kg).unwrap();
        let norm = ModuleMap::new(k.clone(), kg.clone(), Matrix::from_rows(2, &[vec![1], vec![1]]).unwrap()).unwrap();
        let aug = ModuleMap::new(kg.clone(), k.clone(), Matrix::from_rows(2, &[vec![1, 1]]).unwrap()).unwrap();
        let report = validate_triple(
            &t,
            &named(&[("k", k.clone()), ("kG", kg.clone())]),
            &named(&[("norm", norm), ("aug", aug)]),
        )
        .unwrap();
        assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
        assert!(report.checks.len() > 20);
        // structural section of ε at LY
        let s = t.counit_section_at_l(&k);
        assert!(t.counit(&t.l(&k)).compose(&s).unwrap().matrix().is_identity());
        s.validate().unwrap();
    }

    #[test]
    fn trivial_w_and_zero_w() {
        let g = GroupAlgebra::cyclic(3, 3).unwrap();
        let k = Module::trivial(g.clone());
        let t = TensorTriple::new(&k).unwrap();
        let kg = Module::regular(g.clone());
        assert!(t.counit(&kg).matrix().is_identity());
        assert!(TensorTriple::new(&Module::zero(g)).is_err());
    }

    #[test]
    fn other_shipped_shapes_validate() {
        let c3 = GroupAlgebra::cyclic(3, 3).unwrap();
        let w = Module::trivial_of_dim(c3.clone(), 2);
        let t = TensorTriple::new(&w).unwrap();
        let samples = named(&[("k", Module::trivial(c3.clone())), ("kG", Module::regular(c3.clone()))]);
        assert!(validate_triple(&t, &samples, &[]).unwrap().passed());

        let v4 = GroupAlgebra::from_permutations(2, &[vec![1, 0, 3, 2], vec![2, 3, 0, 1]]).unwrap();
        let w = Module::permutation(v4.clone(), &[0, 1]).unwrap();
        let t = TensorTriple::new(&w).unwrap();
        let samples = named(&[("k", Module::trivial(v4.clone())), ("W", w.clone())]);
        assert!(validate_triple(&t, &samples, &[]).unwrap().passed());
    }

    #[test]
    fn graded_forgetful_structure() {
        let t = GradedForgetful::new(2).unwrap();
        let zero = Complex::zero(t.algebra().clone());
        assert_eq!(t.f(&zero).total_dim(), 0);

        let point = GradedSpace::new(2, 0, vec![1]);
        let (l, r) = (t.l(&point), t.r(&point));
        assert_eq!(l.support(), Some((0, 1)));
        assert_eq!(r.support(), Some((-1, 0)));
        assert_ne!(l, r);
        assert!(contraction(&l).unwrap().is_some());
        assert!(contraction(&r).unwrap().is_some());

        let x = t.complex(0, vec![Matrix::from_rows(2, &[vec![1, 0]]).unwrap()], &[2, 1]).unwrap();
        let y = t.complex(-1, vec![Matrix::from_rows(2, &[vec![1]]).unwrap()], &[1, 1]).unwrap();
        let samples = named(&[("x", x.clone()), ("y", y.clone()), ("L(point)", l.clone())]);
        let h = crate::triple::split_epi(&t.counit(&l)).unwrap();
        assert!(h.is_some());
        let report = validate_triple(&t, &samples, &[("id".to_string(), ChainMap::identity(&x))]).unwrap();
        assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());

        for c in [&x, &y, &l] {
            let psi = t.cone_to_rf(c);
            psi.validate().unwrap();
            assert!(psi.is_isomorphism());
            let back = t.rf_to_cone(c);
            back.validate().unwrap();
            assert_eq!(back.compose(&psi).unwrap(), ChainMap::identity(psi.source()));
        }
    }
}
