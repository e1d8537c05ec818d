//! Elements and submodules of free bigraded modules `⊕ R(-dᵢ, -d'ᵢ)`.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::{BiDegree, Monomial};
use crate::poly::Poly;

/// One term `c · m · e_slot` of a module element.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct ModTerm<C: Field> {
    pub mon: Monomial,
    pub slot: usize,
    pub coeff: C,
}

/// Term-over-position comparison: monomial first, lower slot larger on ties.
#[inline]
pub(crate) fn top_cmp(am: &Monomial, aslot: usize, bm: &Monomial, bslot: usize) -> Ordering {
    am.cmp(bm).then_with(|| bslot.cmp(&aslot))
}

/// Sparse module vector with terms sorted ascending in the TOP order, so
/// the leading term is the last one.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct ModVec<C: Field> {
    pub terms: Vec<ModTerm<C>>,
}

impl<C: Field> ModVec<C> {
    pub fn zero() -> Self {
        ModVec { terms: Vec::new() }
    }

    pub fn unit(slot: usize) -> Self {
        ModVec {
            terms: vec![ModTerm {
                mon: Monomial::ONE,
                slot,
                coeff: C::one(),
            }],
        }
    }

    pub fn from_poly(p: &Poly<C>, slot: usize) -> Self {
        ModVec {
            terms: p
                .terms()
                .iter()
                .map(|(m, c)| ModTerm {
                    mon: *m,
                    slot,
                    coeff: c.clone(),
                })
                .collect(),
        }
    }

    pub fn from_components(comps: &[Poly<C>]) -> Self {
        let mut terms: Vec<ModTerm<C>> = comps
            .iter()
            .enumerate()
            .flat_map(|(slot, p)| {
                p.terms().iter().map(move |(m, c)| ModTerm {
                    mon: *m,
                    slot,
                    coeff: c.clone(),
                })
            })
            .collect();
        terms.sort_by(|a, b| top_cmp(&a.mon, a.slot, &b.mon, b.slot));
        ModVec { terms }
    }

    pub fn to_components(&self, rank: usize) -> Vec<Poly<C>> {
        let mut buckets: Vec<Vec<(Monomial, C)>> = vec![Vec::new(); rank];
        for t in &self.terms {
            buckets[t.slot].push((t.mon, t.coeff.clone()));
        }
        // within a fixed slot TOP order is the monomial order, so each
        // bucket is already ascending
        buckets.into_iter().map(Poly::from_sorted_unchecked).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&ModTerm<C>> {
        self.terms.last()
    }

    pub fn involves_aux(&self) -> bool {
        self.terms.iter().any(|t| t.mon.aux_exp() > 0)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ModVec {
            terms: self
                .terms
                .iter()
                .map(|t| ModTerm {
                    mon: t.mon,
                    slot: t.slot,
                    coeff: t.coeff.clone() * c.clone(),
                })
                .collect(),
        }
    }

    pub fn mul_poly(&self, p: &Poly<C>) -> Self {
        let mut acc = Self::zero();
        for (m, c) in p.terms() {
            acc.add_scaled(c, m, self);
        }
        acc
    }

    /// `self += c * m * other`
    pub fn add_scaled(&mut self, c: &C, m: &Monomial, other: &ModVec<C>) {
        if other.terms.is_empty() || c.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = std::mem::take(&mut self.terms).into_iter().peekable();
        let mut b = other.terms.iter().peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => {
                    let ym = y.mon * *m;
                    top_cmp(&x.mon, x.slot, &ym, y.slot)
                }
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (None, None) => break,
            };
            match ord {
                Ordering::Less => out.push(a.next().unwrap()),
                Ordering::Greater => {
                    let y = b.next().unwrap();
                    out.push(ModTerm {
                        mon: y.mon * *m,
                        slot: y.slot,
                        coeff: y.coeff.clone() * c.clone(),
                    });
                }
                Ordering::Equal => {
                    let mut x = a.next().unwrap();
                    let y = b.next().unwrap();
                    x.coeff = x.coeff + y.coeff.clone() * c.clone();
                    if !x.coeff.is_zero() {
                        out.push(x);
                    }
                }
            }
        }
        self.terms = out;
    }

}

/// An element of a free module, stored as one polynomial per slot.
///
/// Slot `i` is `R(-dᵢ, -d'ᵢ)` where `(dᵢ, d'ᵢ) = twists[i]`; a component of
/// polynomial bidegree `b` in slot `i` has module bidegree `b + twists[i]`.
#[derive(Clone, PartialEq)]
pub struct ModuleElement<C: Field> {
    pub components: Vec<Poly<C>>,
    pub twists: Vec<BiDegree>,
}

impl<C: Field> ModuleElement<C> {
    pub fn new(components: Vec<Poly<C>>, twists: Vec<BiDegree>) -> Result<Self> {
        if components.len() != twists.len() {
            return Err(Error::AmbientMismatch);
        }
        Ok(ModuleElement { components, twists })
    }

    pub fn zero(twists: &[BiDegree]) -> Self {
        ModuleElement {
            components: vec![Poly::zero(); twists.len()],
            twists: twists.to_vec(),
        }
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    /// The module bidegree shared by all nonzero components.
    pub fn bidegree(&self) -> Result<BiDegree> {
        let mut found: Option<BiDegree> = None;
        for (p, tw) in self.components.iter().zip(&self.twists) {
            if p.is_zero() {
                continue;
            }
            let d = p.bidegree()? + *tw;
            match found {
                None => found = Some(d),
                Some(f) if f != d => return Err(Error::NotBihomogeneous(f, d)),
                _ => {}
            }
        }
        found.ok_or(Error::ZeroPolynomial)
    }

    /// The common polynomial bidegree of the entries ("pure degree").
    /// Only meaningful when all twists agree.
    pub fn pure_degree(&self) -> Result<BiDegree> {
        let d = self.bidegree()?;
        let tw = self.twists.first().copied().unwrap_or_default();
        Ok(d - tw)
    }

    pub fn scale_poly(&self, p: &Poly<C>) -> Self {
        ModuleElement {
            components: self.components.iter().map(|c| c * p).collect(),
            twists: self.twists.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.twists != other.twists {
            return Err(Error::AmbientMismatch);
        }
        Ok(ModuleElement {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a + b)
                .collect(),
            twists: self.twists.clone(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.twists != other.twists {
            return Err(Error::AmbientMismatch);
        }
        Ok(ModuleElement {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a - b)
                .collect(),
            twists: self.twists.clone(),
        })
    }

    /// `Σ componentᵢ · gensᵢ`, the image under the presentation map.
    pub fn apply(&self, gens: &[Poly<C>]) -> Poly<C> {
        self.components
            .iter()
            .zip(gens)
            .fold(Poly::zero(), |acc, (a, g)| &acc + &(a * g))
    }

    pub(crate) fn to_vec(&self) -> ModVec<C> {
        ModVec::from_components(&self.components)
    }

    pub(crate) fn from_vec(v: &ModVec<C>, twists: &[BiDegree]) -> Self {
        ModuleElement {
            components: v.to_components(twists.len()),
            twists: twists.to_vec(),
        }
    }
}

impl<C: Field> std::fmt::Debug for ModuleElement<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}

/// A submodule of `⊕ R(-dᵢ, -d'ᵢ)` given by generators.
#[derive(Clone, Debug, PartialEq)]
pub struct SubmodulePresentation<C: Field> {
    pub ambient_twists: Vec<BiDegree>,
    pub generators: Vec<ModuleElement<C>>,
}


impl<C: Field> SubmodulePresentation<C> {
    pub fn new(ambient_twists: Vec<BiDegree>, generators: Vec<ModuleElement<C>>) -> Result<Self> {
        if generators.iter().any(|g| g.twists != ambient_twists) {
            return Err(Error::AmbientMismatch);
        }
        Ok(SubmodulePresentation {
            ambient_twists,
            generators,
        })
    }

    /// An ideal of `R` as a rank-one submodule.
    pub fn ideal(gens: &[Poly<C>]) -> Self {
        let tw = vec![BiDegree::default()];
        SubmodulePresentation {
            generators: gens
                .iter()
                .map(|g| ModuleElement {
                    components: vec![g.clone()],
                    twists: tw.clone(),
                })
                .collect(),
            ambient_twists: tw,
        }
    }

    /// The whole free module, generated by the unit vectors.
    pub fn free(twists: &[BiDegree]) -> Self {
        let gens = (0..twists.len())
            .map(|i| {
                let mut e = ModuleElement::zero(twists);
                e.components[i] = Poly::one();
                e
            })
            .collect();
        SubmodulePresentation {
            ambient_twists: twists.to_vec(),
            generators: gens,
        }
    }

    /// `⊕ I·e_i`: each slot filled with the given ideal generators.
    pub fn ideal_times_free(ideal: &[Poly<C>], twists: &[BiDegree]) -> Self {
        let mut gens = Vec::new();
        for i in 0..twists.len() {
            for g in ideal {
                let mut e = ModuleElement::zero(twists);
                e.components[i] = g.clone();
                gens.push(e);
            }
        }
        SubmodulePresentation {
            ambient_twists: twists.to_vec(),
            generators: gens,
        }
    }

    pub fn rank(&self) -> usize {
        self.ambient_twists.len()
    }

    /// Generators of a rank-one presentation as polynomials.
    pub fn as_ideal_generators(&self) -> Vec<Poly<C>> {
        debug_assert_eq!(self.rank(), 1);
        self.generators.iter().map(|g| g.components[0].clone()).collect()
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        if self.ambient_twists != other.ambient_twists {
            return Err(Error::AmbientMismatch);
        }
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ok(SubmodulePresentation {
            ambient_twists: self.ambient_twists.clone(),
            generators: gens,
        })
    }

    pub(crate) fn vecs(&self) -> Vec<ModVec<C>> {
        self.generators.iter().map(|g| g.to_vec()).collect()
    }
}
