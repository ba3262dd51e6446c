//! Brute-force reference values over tiny prime fields.
//!
//! Nothing here uses the library's linear algebra: matrices are plain
//! nested vectors, spaces are enumerated element by element, and
//! dimensions are read off as `log_p` of a cardinality.

use std::collections::HashSet;

use relstab::field::Matrix;
use relstab::modrep::{GroupAlgebra, Module};
use serde_json::{json, Value};

pub type Mat = Vec<Vec<u32>>;

/// Enumeration gives up above this many candidates.
const LIMIT: u64 = 1 << 20;

pub fn plain(m: &Matrix) -> Mat {
    m.to_rows()
}

/// `a · b` where `b` has `cols` columns (explicit, since `b` may have no rows).
fn mul_c(p: u32, a: &Mat, b: &Mat, cols: usize) -> Mat {
    let inner = b.len();
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| row[k] as u64 * b[k][j] as u64).sum::<u64>() % p as u64)
                .map(|x| x as u32)
                .collect()
        })
        .collect()
}

fn mul(p: u32, a: &Mat, b: &Mat) -> Mat {
    mul_c(p, a, b, b.first().map_or(0, Vec::len))
}

fn add(p: u32, a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| (x + y) % p).collect()).collect()
}

/// Every `rows × cols` matrix over GF(p), in a fixed order.
fn all_matrices(p: u32, rows: usize, cols: usize) -> impl Iterator<Item = Mat> {
    let len = rows * cols;
    let total = (p as u64).checked_pow(len as u32).filter(|&n| n <= LIMIT).expect("space small enough to enumerate");
    (0..total).map(move |mut code| {
        let mut m = vec![vec![0u32; cols]; rows];
        for i in 0..len {
            m[i / cols][i % cols] = (code % p as u64) as u32;
            code /= p as u64;
        }
        m
    })
}

fn log_p(p: u32, n: usize) -> usize {
    let (mut k, mut x) = (0, 1usize);
    while x < n {
        x *= p as usize;
        k += 1;
    }
    assert_eq!(x, n, "{n} is not a power of {p}");
    k
}

/// A group representation as the matrices of every element, plus the
/// element inverses.
pub struct Rep {
    pub p: u32,
    pub dim: usize,
    pub elements: Vec<Mat>,
    pub inverse: Vec<usize>,
}

impl Rep {
    pub fn of(m: &Module) -> Self {
        let g = m.algebra();
        Rep {
            p: m.p(),
            dim: m.dim(),
            elements: (0..g.order()).map(|e| plain(m.action(e))).collect(),
            inverse: (0..g.order()).map(|e| g.inverse(e)).collect(),
        }
    }

    /// A representation given by hand on explicit element matrices.
    pub fn by_hand(p: u32, elements: Vec<Mat>, inverse: Vec<usize>) -> Self {
        let dim = elements[0].len();
        Rep { p, dim, elements, inverse }
    }
}

/// All intertwiners `T` with `ρ_Y(g) T = T ρ_X(g)` for every element.
pub fn intertwiners(x: &Rep, y: &Rep) -> Vec<Mat> {
    let p = x.p;
    all_matrices(p, y.dim, x.dim)
        .filter(|t| x.elements.iter().zip(&y.elements).all(|(a, b)| mul(p, b, t) == mul(p, t, a)))
        .collect()
}

/// `{ Σ_g ρ_Y(g) h ρ_X(g⁻¹) : h linear }`: the maps factoring through a
/// projective module, by Higman's criterion relative to the trivial group.
pub fn trace_image(x: &Rep, y: &Rep) -> HashSet<Mat> {
    let p = x.p;
    all_matrices(p, y.dim, x.dim)
        .map(|h| {
            let zero = vec![vec![0; x.dim]; y.dim];
            (0..x.elements.len()).fold(zero, |acc, g| {
                let term = mul(p, &mul(p, &y.elements[g], &h), &x.elements[x.inverse[g]]);
                add(p, &acc, &term)
            })
        })
        .collect()
}

pub fn hom_dim(x: &Rep, y: &Rep) -> usize {
    log_p(x.p, intertwiners(x, y).len())
}

/// `dim Hom(X, Y) − dim PHom(X, Y)` for the absolute stable category.
pub fn stable_dim(x: &Rep, y: &Rep) -> usize {
    hom_dim(x, y) - log_p(x.p, trace_image(x, y).len())
}

/// `Ω k` for `C₂` over GF(2) relative to `W = kC₂`, built by hand as the
/// kernel of `kC₂ ⊕ kC₂ → k` in the basis `e₁+ge₁, e₁+e₂, e₂+ge₂`.
pub fn c2_omega_k() -> Rep {
    let id = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
    let g = vec![vec![1, 1, 0], vec![0, 1, 0], vec![0, 1, 1]];
    Rep::by_hand(2, vec![id, g], vec![0, 1])
}

/// Reference values for `C₂` over GF(2): the fixture `c2_gf2_oracle.json`.
pub fn c2_fixture() -> Value {
    let alg = GroupAlgebra::cyclic(2, 2).expect("C2");
    let k = Rep::of(&Module::trivial(alg.clone()));
    let kg = Rep::of(&Module::regular(alg));
    let om = c2_omega_k();
    let named = [("k", &k), ("kG", &kg), ("omega_k", &om)];
    let mut rows = Vec::new();
    for (a, x) in named {
        for (b, y) in named {
            rows.push(json!({ "from": a, "to": b, "hom_dim": hom_dim(x, y), "stable_dim": stable_dim(x, y) }));
        }
    }
    json!({ "group": "C2", "p": 2, "omega_k_dim": om.dim, "pairs": rows })
}

/// Counts chain maps and null-homotopic maps between two-term complexes of
/// vector spaces `A⁰ → A¹`, `B⁰ → B¹`; returns `dim` of the quotient.
pub fn two_term_hom_k(p: u32, a: (usize, usize, &Mat), b: (usize, usize, &Mat)) -> usize {
    let (a0, a1, da) = a;
    let (b0, b1, db) = b;
    let mut chain = 0usize;
    for f0 in all_matrices(p, b0, a0) {
        for f1 in all_matrices(p, b1, a1) {
            if mul_c(p, db, &f0, a0) == mul_c(p, &f1, da, a0) {
                chain += 1;
            }
        }
    }
    // homotopies s: A¹ → B⁰ give (s d_A, d_B s)
    let null: HashSet<(Mat, Mat)> =
        all_matrices(p, b0, a1).map(|s| (mul_c(p, &s, da, a0), mul_c(p, db, &s, a1))).collect();
    log_p(p, chain) - log_p(p, null.len())
}
