//! Brute-force linear algebra over a single bidegree, used as an oracle
//! against the Gröbner machinery. Nothing here touches `groebner` or
//! `hilbert`.
#![allow(dead_code)]

use std::collections::BTreeMap;

use bisyz_core::module::ModuleElement;
use bisyz_core::{BiDegree, BiPoly, Monomial, Q};
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn mono(s: u16, u: u16, t: u16, v: u16) -> BiPoly {
    BiPoly::monomial(Monomial::new(s, u, t, v))
}

pub fn p(text: &str) -> BiPoly {
    bisyz_core::textio::parse_poly(text).unwrap()
}

/// All monomials of bidegree `d`, enumerated directly.
pub fn monomials(d: BiDegree) -> Vec<Monomial> {
    if d.first < 0 || d.second < 0 {
        return Vec::new();
    }
    let (a, b) = (d.first as u16, d.second as u16);
    let mut out = Vec::new();
    for i in 0..=a {
        for j in 0..=b {
            out.push(Monomial::new(i, a - i, j, b - j));
        }
    }
    out
}

/// Incremental row echelon form over ℚ.
#[derive(Default)]
pub struct Echelon {
    rows: Vec<(usize, Vec<Q>)>,
}

impl Echelon {
    fn reduce(&self, mut v: Vec<Q>) -> Vec<Q> {
        for (piv, row) in &self.rows {
            if !v[*piv].is_zero() {
                let c = v[*piv].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x -= &c * r;
                    }
                }
            }
        }
        v
    }

    /// Adds `v`; returns whether it was independent of the rows so far.
    pub fn insert(&mut self, v: Vec<Q>) -> bool {
        let v = self.reduce(v);
        match v.iter().position(|x| !x.is_zero()) {
            None => false,
            Some(piv) => {
                let inv = Q::one() / &v[piv];
                self.rows.push((piv, v.into_iter().map(|x| x * &inv).collect()));
                true
            }
        }
    }

    pub fn contains(&self, v: Vec<Q>) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Coordinates for the slice of `⊕ R(-twistᵢ)` at module bidegree `at`.
pub struct SliceCoords {
    index: BTreeMap<(usize, Monomial), usize>,
}

impl SliceCoords {
    pub fn new(twists: &[BiDegree], at: BiDegree) -> Self {
        let mut index = BTreeMap::new();
        for (slot, tw) in twists.iter().enumerate() {
            for m in monomials(at - *tw) {
                let n = index.len();
                index.insert((slot, m), n);
            }
        }
        SliceCoords { index }
    }

    pub fn dim(&self) -> usize {
        self.index.len()
    }

    pub fn vector(&self, comps: &[BiPoly]) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim()];
        for (slot, c) in comps.iter().enumerate() {
            for (m, a) in c.terms() {
                let i = self.index[&(slot, *m)];
                v[i] = a.clone();
            }
        }
        v
    }
}

/// Echelon form of the slice at `at` of the submodule generated by `gens`.
pub fn module_slice(gens: &[ModuleElement<Q>], twists: &[BiDegree], at: BiDegree) -> (SliceCoords, Echelon) {
    let coords = SliceCoords::new(twists, at);
    let mut ech = Echelon::default();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let d = g.bidegree().unwrap();
        for m in monomials(at - d) {
            let comps: Vec<BiPoly> = g.components.iter().map(|c| c.mul_monomial(&m)).collect();
            ech.insert(coords.vector(&comps));
        }
    }
    (coords, ech)
}

pub fn module_slice_dim(gens: &[ModuleElement<Q>], twists: &[BiDegree], at: BiDegree) -> usize {
    module_slice(gens, twists, at).1.rank()
}

pub fn in_module_slice(gens: &[ModuleElement<Q>], x: &ModuleElement<Q>) -> bool {
    if x.is_zero() {
        return true;
    }
    let (coords, ech) = module_slice(gens, &x.twists, x.bidegree().unwrap());
    ech.contains(coords.vector(&x.components))
}

fn as_rank_one(gens: &[BiPoly]) -> Vec<ModuleElement<Q>> {
    gens.iter()
        .map(|g| ModuleElement::new(vec![g.clone()], vec![BiDegree::new(0, 0)]).unwrap())
        .collect()
}

/// `dim I_d` for the ideal generated by `gens`.
pub fn ideal_slice_dim(gens: &[BiPoly], d: BiDegree) -> usize {
    module_slice_dim(&as_rank_one(gens), &[BiDegree::new(0, 0)], d)
}

/// `dim (R/I)_d`.
pub fn quotient_slice_dim(gens: &[BiPoly], d: BiDegree) -> usize {
    monomials(d).len() - ideal_slice_dim(gens, d)
}

pub fn in_ideal(gens: &[BiPoly], f: &BiPoly) -> bool {
    let x = ModuleElement::new(vec![f.clone()], vec![BiDegree::new(0, 0)]).unwrap();
    in_module_slice(&as_rank_one(gens), &x)
}

/// Pairwise products `gᵢ gⱼ`, generators of `I²`.
pub fn square(gens: &[BiPoly]) -> Vec<BiPoly> {
    let mut out = Vec::new();
    for i in 0..gens.len() {
        for j in i..gens.len() {
            out.push(&gens[i] * &gens[j]);
        }
    }
    out
}

/// `dim (I/I²)_d`.
pub fn conormal_slice_dim(gens: &[BiPoly], d: BiDegree) -> usize {
    ideal_slice_dim(gens, d) - ideal_slice_dim(&square(gens), d)
}

/// Value of `f` on the diagonal `(k,k)`, required to agree at `k0..k0+3`.
pub fn diagonal_constant(f: impl Fn(BiDegree) -> usize, k0: i64) -> Option<usize> {
    let vals: Vec<usize> = (k0..k0 + 3).map(|k| f(BiDegree::new(k, k))).collect();
    vals.windows(2).all(|w| w[0] == w[1]).then(|| vals[0])
}

pub fn random_poly(rng: &mut ChaCha8Rng, d: BiDegree, max_terms: usize) -> BiPoly {
    let mons = monomials(d);
    let n = rng.gen_range(1..=max_terms.min(mons.len()));
    let terms = (0..n).map(|_| {
        let m = mons[rng.gen_range(0..mons.len())];
        let mut c: i64 = rng.gen_range(-3..=3);
        if c == 0 {
            c = 1;
        }
        (m, Q::from_integer(c.into()))
    });
    let f = BiPoly::from_terms(terms);
    if f.is_zero() {
        BiPoly::monomial(mons[0])
    } else {
        f
    }
}

/// Random bihomogeneous generators with bidegrees at most `max`.
pub fn random_ideal(rng: &mut ChaCha8Rng, count: usize, max: BiDegree) -> Vec<BiPoly> {
    (0..count)
        .map(|_| {
            let d = BiDegree::new(rng.gen_range(0..=max.first), rng.gen_range(0..=max.second));
            let d = if d == BiDegree::new(0, 0) { BiDegree::new(1, 0) } else { d };
            random_poly(rng, d, 3)
        })
        .collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}
