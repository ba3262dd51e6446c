use super::AdjointTriple;
use crate::complexes::{ChainMap, Complex};
use crate::error::{Error, Result};
use crate::field::Matrix;
use crate::modrep::{Module, ModuleMap};

/// `F = W ⊗ −` on `kG`-modules with `L = R = W* ⊗ −`.
///
/// Tensor bases are ordered with the left factor major, so `LFX` has basis
/// `e_i* ⊗ e_j ⊗ x_k`. The pairing `W* ⊗ W → k` and the copairing
/// `k → W* ⊗ W` both have matrix `vec(I)`, as do their mirror images on
/// `W ⊗ W*`.
#[derive(Clone, Debug)]
pub struct TensorTriple {
    w: Module,
    w_dual: Module,
    /// `vec(I_{dim W})` as a row.
    pairing: Matrix,
}

impl TensorTriple {
    pub fn new(w: &Module) -> Result<Self> {
        if w.dim() == 0 {
            return Err(Error::Precondition("W = 0 gives a functor that is not faithful".into()));
        }
        let d = w.dim();
        let mut pairing = Matrix::zeros(w.p(), 1, d * d);
        for i in 0..d {
            pairing.set(0, i * d + i, 1);
        }
        Ok(TensorTriple { w: w.clone(), w_dual: w.dual(), pairing })
    }

    pub fn w(&self) -> &Module {
        &self.w
    }

    pub fn w_dual(&self) -> &Module {
        &self.w_dual
    }

    fn pairing_on(&self, x: &Module) -> Matrix {
        self.pairing.kron(&Matrix::identity(x.p(), x.dim()))
    }

    fn copairing_on(&self, x: &Module) -> Matrix {
        self.pairing.transpose().kron(&Matrix::identity(x.p(), x.dim()))
    }

    /// `W ⊗ −` applied termwise to a complex.
    pub fn f_complex(&self, x: &Complex) -> Complex {
        x.tensor_left(&self.w).expect("same algebra")
    }

    /// `W* ⊗ −` applied termwise to a complex.
    pub fn l_complex(&self, x: &Complex) -> Complex {
        x.tensor_left(&self.w_dual).expect("same algebra")
    }

    pub fn f_chain_map(&self, h: &ChainMap) -> ChainMap {
        let id = Matrix::identity(self.w.p(), self.w.dim());
        let (s, t) = (self.f_complex(h.source()), self.f_complex(h.target()));
        ChainMap::from_fn(s, t, |n| Some(id.kron(&h.component(n))))
    }

    /// Counit `LFX → X` for each term of a complex, as a chain map.
    pub fn counit_complex(&self, x: &Complex) -> ChainMap {
        let lfx = self.l_complex(&self.f_complex(x));
        ChainMap::from_fn(lfx, x.clone(), |n| Some(self.pairing_on(&x.term(n))))
    }

    /// Unit `X → RFX` termwise, as a chain map.
    pub fn unit_complex(&self, x: &Complex) -> ChainMap {
        let rfx = self.l_complex(&self.f_complex(x));
        ChainMap::from_fn(x.clone(), rfx, |n| Some(self.copairing_on(&x.term(n))))
    }

    /// The section `L(Y → FLY)` of the counit at `LY`; composing with
    /// `ε_{LY}` gives the identity.
    pub fn counit_section_at_l(&self, y: &Module) -> ModuleMap {
        let ly = self.l(y);
        let lfly = self.l(&self.f(&ly));
        let m = Matrix::identity(y.p(), self.w.dim()).kron(&self.copairing_on(y));
        ModuleMap::new_unchecked(ly, lfly, m)
    }
}

impl AdjointTriple for TensorTriple {
    type A = Module;
    type B = Module;

    fn label(&self) -> String {
        format!("W ⊗ − with dim W = {}", self.w.dim())
    }

    fn f(&self, x: &Module) -> Module {
        self.w.tensor(x).expect("same algebra")
    }

    fn f_map(&self, h: &ModuleMap) -> ModuleMap {
        let id = ModuleMap::identity(&self.w);
        id.tensor(h).expect("same algebra")
    }

    fn l(&self, y: &Module) -> Module {
        self.w_dual.tensor(y).expect("same algebra")
    }

    fn l_map(&self, h: &ModuleMap) -> ModuleMap {
        ModuleMap::identity(&self.w_dual).tensor(h).expect("same algebra")
    }

    fn r(&self, y: &Module) -> Module {
        self.l(y)
    }

    fn r_map(&self, h: &ModuleMap) -> ModuleMap {
        self.l_map(h)
    }

    fn counit(&self, x: &Module) -> ModuleMap {
        let lfx = self.l(&self.f(x));
        ModuleMap::new_unchecked(lfx, x.clone(), self.pairing_on(x))
    }

    fn unit(&self, x: &Module) -> ModuleMap {
        let rfx = self.r(&self.f(x));
        ModuleMap::new_unchecked(x.clone(), rfx, self.copairing_on(x))
    }

    fn left_unit(&self, y: &Module) -> ModuleMap {
        let fly = self.f(&self.l(y));
        ModuleMap::new_unchecked(y.clone(), fly, self.copairing_on(y))
    }

    fn right_counit(&self, y: &Module) -> ModuleMap {
        let fry = self.f(&self.r(y));
        ModuleMap::new_unchecked(fry, y.clone(), self.pairing_on(y))
    }

    fn frobenius(&self, y: &Module) -> Option<ModuleMap> {
        Some(ModuleMap::identity(&self.l(y)))
    }

    fn is_frobenius(&self) -> bool {
        true
    }
}

/// Products with `vec(I) ⊗ I_x` and its transpose, done by index
/// arithmetic instead of dense multiplication. `d` is `dim W`.
impl TensorTriple {
    /// `a · ε_X` where `ε_X = pairing ⊗ I_X` and `X` has dimension `a.cols()`.
    pub fn after_counit(&self, a: &Matrix) -> Matrix {
        let (d, x) = (self.w.dim(), a.cols());
        let mut out = Matrix::zeros(a.p(), a.rows(), d * d * x);
        for i in 0..d {
            out.set_block(0, (i * d + i) * x, a);
        }
        out
    }

    /// `η_X · a` where `η_X = copairing ⊗ I_X` and `X` has dimension `a.rows()`.
    pub fn before_unit(&self, a: &Matrix) -> Matrix {
        let (d, x) = (self.w.dim(), a.rows());
        let mut out = Matrix::zeros(a.p(), d * d * x, a.cols());
        for i in 0..d {
            out.set_block((i * d + i) * x, 0, a);
        }
        out
    }

    /// Whether `ε_{LY} ∘ L(Y → FLY) = id` holds. Both maps are
    /// `(map at Y = k) ⊗ I_Y`, so checking the trivial module checks every `Y`.
    pub fn zigzag_holds(&self) -> bool {
        let k = Module::trivial(self.w.algebra().clone());
        let lk = self.l(&k);
        let lhs = self.counit(&lk).compose(&self.counit_section_at_l(&k));
        lhs.is_ok_and(|m| m.matrix().is_identity())
            && self
                .r_map(&self.right_counit(&k))
                .compose(&self.unit(&self.r(&k)))
                .is_ok_and(|m| m.matrix().is_identity())
    }
}
