//! Buchberger's algorithm for submodules of free modules over `R` (ideals
//! are the rank-one case), with optional cofactor tracking, Schreyer-style
//! syzygies, elimination of the auxiliary variable, and intersections.
//!
//! The module order is term-over-position on top of the monomial order in
//! [`Monomial`]'s `Ord`, with the lower slot winning ties.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::module::{top_cmp, ModTerm, ModVec, ModuleElement, SubmodulePresentation};
use crate::monomial::{BiDegree, Monomial};
use crate::poly::Poly;

#[derive(Clone, Debug)]
struct Elem<C: Field> {
    v: ModVec<C>,
    cof: Option<ModVec<C>>,
}

impl<C: Field> Elem<C> {
    fn monic(self) -> Self {
        let inv = self.v.lead().expect("nonzero").coeff.inv();
        Elem {
            v: self.v.scale(&inv),
            cof: self.cof.map(|c| c.scale(&inv)),
        }
    }

    fn add_scaled(&mut self, c: &C, m: &Monomial, other: &Elem<C>) {
        self.v.add_scaled(c, m, &other.v);
        if let (Some(a), Some(b)) = (&mut self.cof, &other.cof) {
            a.add_scaled(c, m, b);
        }
    }
}

fn find_reducer(leads: &[(Monomial, usize)], mon: &Monomial, slot: usize) -> Option<usize> {
    leads
        .iter()
        .position(|(lm, ls)| *ls == slot && lm.divides(mon))
}

/// Fully reduces `p` by `basis` (all monic). The cofactor of the result
/// still expresses it over the original inputs.
fn reduce_full<C: Field>(
    basis: &[Elem<C>],
    leads: &[(Monomial, usize)],
    skip: Option<usize>,
    mut p: Elem<C>,
) -> Elem<C> {
    let mut rem: Vec<ModTerm<C>> = Vec::new();
    while let Some(lt) = p.v.terms.last() {
        let hit = leads.iter().enumerate().position(|(i, (lm, ls))| {
            Some(i) != skip && *ls == lt.slot && lm.divides(&lt.mon)
        });
        match hit {
            Some(i) => {
                let q = lt.mon.checked_div(&leads[i].0).unwrap();
                let c = -lt.coeff.clone();
                p.add_scaled(&c, &q, &basis[i]);
            }
            None => rem.push(p.v.terms.pop().unwrap()),
        }
    }
    rem.reverse();
    Elem {
        v: ModVec { terms: rem },
        cof: p.cof,
    }
}

fn s_vector<C: Field>(a: &Elem<C>, b: &Elem<C>) -> Elem<C> {
    let la = a.v.lead().unwrap();
    let lb = b.v.lead().unwrap();
    let l = la.mon.lcm(&lb.mon);
    let ma = l.checked_div(&la.mon).unwrap();
    let mb = l.checked_div(&lb.mon).unwrap();
    let mut s = Elem {
        v: ModVec::zero(),
        cof: a.cof.as_ref().map(|_| ModVec::zero()),
    };
    s.add_scaled(&C::one(), &ma, a);
    s.add_scaled(&-C::one(), &mb, b);
    s
}

struct Run<C: Field> {
    track: bool,
    collect_syzygies: bool,
    product_criterion: bool,
    basis: Vec<Elem<C>>,
    leads: Vec<(Monomial, usize)>,
    pairs: BinaryHeap<Reverse<(u32, Monomial, usize, usize)>>,
    syzygies: Vec<ModVec<C>>,
}

impl<C: Field> Run<C> {
    fn push(&mut self, e: Elem<C>) {
        let e = e.monic();
        let lt = e.v.lead().unwrap();
        let (mon, slot) = (lt.mon, lt.slot);
        let k = self.basis.len();
        for (j, (lm, ls)) in self.leads.iter().enumerate() {
            if *ls != slot {
                continue;
            }
            if self.product_criterion && lm.is_coprime(&mon) {
                continue;
            }
            let l = lm.lcm(&mon);
            self.pairs.push(Reverse((l.full_degree(), l, j, k)));
        }
        self.leads.push((mon, slot));
        self.basis.push(e);
    }

    fn run(&mut self) {
        while let Some(Reverse((_, _, i, j))) = self.pairs.pop() {
            let s = s_vector(&self.basis[i], &self.basis[j]);
            let r = reduce_full(&self.basis, &self.leads, None, s);
            if r.v.is_zero() {
                if self.collect_syzygies {
                    if let Some(c) = r.cof {
                        if !c.is_zero() {
                            self.syzygies.push(c);
                        }
                    }
                }
            } else {
                self.push(r);
            }
        }
    }
}

fn lead_key<C: Field>(e: &Elem<C>) -> (Monomial, usize) {
    let t = e.v.terms.last().unwrap();
    (t.mon, t.slot)
}

fn interreduce<C: Field>(mut elems: Vec<Elem<C>>) -> Vec<Elem<C>> {
    elems.sort_by(|a, b| {
        let (am, asl) = lead_key(a);
        let (bm, bsl) = lead_key(b);
        top_cmp(&am, asl, &bm, bsl)
    });
    let mut kept: Vec<Elem<C>> = Vec::new();
    let mut leads: Vec<(Monomial, usize)> = Vec::new();
    for e in elems {
        let (m, s) = lead_key(&e);
        if find_reducer(&leads, &m, s).is_none() {
            leads.push((m, s));
            kept.push(e);
        }
    }
    for i in 0..kept.len() {
        let e = kept[i].clone();
        kept[i] = reduce_full(&kept, &leads, Some(i), e).monic();
    }
    kept
}

/// A reduced Gröbner basis of a submodule of `⊕ R(-dᵢ, -d'ᵢ)`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<C: Field> {
    twists: Vec<BiDegree>,
    elements: Vec<ModVec<C>>,
    leads: Vec<(Monomial, usize)>,
    /// Row `i` expresses `elements[i]` over the input generators.
    cofactors: Option<Vec<ModVec<C>>>,
    n_inputs: usize,
}

/// Result of dividing a module element by a Gröbner basis.
#[derive(Clone, Debug)]
pub struct Division<C: Field> {
    pub remainder: ModuleElement<C>,
    /// One quotient per basis element, if requested.
    pub quotients: Option<Vec<Poly<C>>>,
}

struct Raw<C: Field> {
    basis: Vec<Elem<C>>,
    syzygies: Vec<ModVec<C>>,
}

fn buchberger<C: Field>(
    rank: usize,
    inputs: &[ModVec<C>],
    track: bool,
    collect_syzygies: bool,
) -> Raw<C> {
    let mut run = Run {
        track,
        collect_syzygies,
        product_criterion: rank == 1 && !collect_syzygies,
        basis: Vec::new(),
        leads: Vec::new(),
        pairs: BinaryHeap::new(),
        syzygies: Vec::new(),
    };
    for (k, v) in inputs.iter().enumerate() {
        if v.is_zero() {
            if collect_syzygies {
                run.syzygies.push(ModVec::unit(k));
            }
            continue;
        }
        // inputs enter unreduced so that zero reductions of S-pairs alone
        // generate the syzygies of the inputs
        let cof = run.track.then(|| ModVec::unit(k));
        run.push(Elem { v: v.clone(), cof });
    }
    run.run();
    Raw {
        basis: run.basis,
        syzygies: run.syzygies,
    }
}

impl<C: Field> GroebnerBasis<C> {
    fn from_parts(twists: Vec<BiDegree>, n_inputs: usize, raw: Vec<Elem<C>>, track: bool) -> Self {
        let reduced = interreduce(raw);
        let leads = reduced.iter().map(lead_key).collect();
        let (elements, cofactors): (Vec<_>, Vec<_>) =
            reduced.into_iter().map(|e| (e.v, e.cof)).unzip();
        GroebnerBasis {
            twists,
            elements,
            leads,
            cofactors: if track {
                Some(cofactors.into_iter().map(|c| c.unwrap()).collect())
            } else {
                None
            },
            n_inputs,
        }
    }

    fn build(m: &SubmodulePresentation<C>, track: bool) -> Self {
        let inputs = m.vecs();
        let raw = buchberger(m.rank(), &inputs, track, false);
        Self::from_parts(m.ambient_twists.clone(), inputs.len(), raw.basis, track)
    }

    /// Reduced basis without cofactor bookkeeping.
    pub fn compute(m: &SubmodulePresentation<C>) -> Self {
        Self::build(m, false)
    }

    /// Reduced basis whose elements carry their expression over the inputs.
    pub fn compute_with_cofactors(m: &SubmodulePresentation<C>) -> Self {
        Self::build(m, true)
    }

    pub fn ideal(gens: &[Poly<C>]) -> Self {
        Self::compute(&SubmodulePresentation::ideal(gens))
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn twists(&self) -> &[BiDegree] {
        &self.twists
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> Vec<ModuleElement<C>> {
        self.elements
            .iter()
            .map(|v| ModuleElement::from_vec(v, &self.twists))
            .collect()
    }

    /// For rank-one bases, the elements as polynomials.
    pub fn polys(&self) -> Vec<Poly<C>> {
        self.elements
            .iter()
            .map(|v| v.to_components(1).pop().unwrap())
            .collect()
    }

    /// Leading `(monomial, slot)` of every element.
    pub fn leading_terms(&self) -> &[(Monomial, usize)] {
        &self.leads
    }

    /// `true` when the basis generates the whole free module.
    pub fn is_whole_module(&self) -> bool {
        (0..self.rank()).all(|slot| {
            self.leads
                .iter()
                .any(|(m, s)| *s == slot && m.is_one())
        })
    }

    pub fn to_presentation(&self) -> SubmodulePresentation<C> {
        SubmodulePresentation {
            ambient_twists: self.twists.clone(),
            generators: self.elements(),
        }
    }

    /// Cofactor matrix: row `i` holds the coefficients of basis element `i`
    /// over the input generators.
    pub fn cofactor_matrix(&self) -> Option<Vec<Vec<Poly<C>>>> {
        self.cofactors.as_ref().map(|rows| {
            rows.iter()
                .map(|r| r.to_components(self.n_inputs))
                .collect()
        })
    }

    pub(crate) fn divide_vec(&self, x: &ModVec<C>, want_q: bool) -> (ModVec<C>, Option<ModVec<C>>) {
        let mut p = x.clone();
        let mut q = want_q.then(ModVec::zero);
        let mut rem: Vec<ModTerm<C>> = Vec::new();
        while let Some(lt) = p.terms.last() {
            match find_reducer(&self.leads, &lt.mon, lt.slot) {
                Some(i) => {
                    let m = lt.mon.checked_div(&self.leads[i].0).unwrap();
                    let c = lt.coeff.clone();
                    if let Some(q) = q.as_mut() {
                        q.add_scaled(&c, &m, &ModVec::unit(i));
                    }
                    p.add_scaled(&-c, &m, &self.elements[i]);
                }
                None => rem.push(p.terms.pop().unwrap()),
            }
        }
        rem.reverse();
        (ModVec { terms: rem }, q)
    }

    fn check_ambient(&self, x: &ModuleElement<C>) -> Result<()> {
        if x.twists != self.twists {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }

    /// Division with remainder: `x = Σ qᵢ·gᵢ + r`, no term of `r` divisible
    /// by a leading term of the basis.
    pub fn reduce(&self, x: &ModuleElement<C>, want_quotients: bool) -> Result<Division<C>> {
        self.check_ambient(x)?;
        let (r, q) = self.divide_vec(&x.to_vec(), want_quotients);
        Ok(Division {
            remainder: ModuleElement::from_vec(&r, &self.twists),
            quotients: q.map(|q| q.to_components(self.elements.len())),
        })
    }

    pub fn normal_form(&self, x: &ModuleElement<C>) -> Result<ModuleElement<C>> {
        Ok(self.reduce(x, false)?.remainder)
    }

    pub fn contains(&self, x: &ModuleElement<C>) -> Result<bool> {
        self.check_ambient(x)?;
        Ok(self.divide_vec(&x.to_vec(), false).0.is_zero())
    }

    pub fn contains_poly(&self, p: &Poly<C>) -> bool {
        debug_assert_eq!(self.rank(), 1);
        self.divide_vec(&ModVec::from_poly(p, 0), false).0.is_zero()
    }

    /// Whether every generator of `m` lies in this submodule.
    pub fn contains_all(&self, m: &SubmodulePresentation<C>) -> Result<bool> {
        if m.ambient_twists != self.twists {
            return Err(Error::AmbientMismatch);
        }
        Ok(m.vecs().iter().all(|v| self.divide_vec(v, false).0.is_zero()))
    }

    /// Coefficients expressing `x` over the input generators, or `None` when
    /// `x` is not in the submodule.
    ///
    /// Panics if the basis was built without cofactors.
    pub fn lift(&self, x: &ModuleElement<C>) -> Result<Option<Vec<Poly<C>>>> {
        self.check_ambient(x)?;
        let rows = self
            .cofactors
            .as_ref()
            .expect("lift needs a basis computed with cofactors");
        let (r, q) = self.divide_vec(&x.to_vec(), true);
        if !r.is_zero() {
            return Ok(None);
        }
        let q = q.unwrap().to_components(self.elements.len());
        let mut acc = ModVec::zero();
        for (qi, row) in q.iter().zip(rows) {
            for (m, c) in qi.terms() {
                acc.add_scaled(c, m, row);
            }
        }
        Ok(Some(acc.to_components(self.n_inputs)))
    }

    /// Checks that every S-pair reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let elems: Vec<Elem<C>> = self
            .elements
            .iter()
            .map(|v| Elem { v: v.clone(), cof: None })
            .collect();
        for i in 0..elems.len() {
            for j in (i + 1)..elems.len() {
                if self.leads[i].1 != self.leads[j].1 {
                    continue;
                }
                let s = s_vector(&elems[i], &elems[j]);
                if !self.divide_vec(&s.v, false).0.is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// Reduced Gröbner basis with cofactors over the input generators.
pub fn groebner_basis<C: Field>(gens: &SubmodulePresentation<C>) -> GroebnerBasis<C> {
    GroebnerBasis::compute_with_cofactors(gens)
}

pub fn normal_form<C: Field>(
    x: &ModuleElement<C>,
    gb: &GroebnerBasis<C>,
    want_cofactors: bool,
) -> Result<Division<C>> {
    gb.reduce(x, want_cofactors)
}

fn module_degree_or_zero<C: Field>(g: &ModuleElement<C>) -> BiDegree {
    g.bidegree().unwrap_or_default()
}

/// Generators of the syzygy module of the given generators, as a reduced
/// basis inside `⊕ R(-degᵢ)` where `degᵢ` is the module bidegree of
/// generator `i` (or `(0,0)` when it is zero or inhomogeneous).
pub fn syzygy_module<C: Field>(gens: &SubmodulePresentation<C>) -> SubmodulePresentation<C> {
    let inputs = gens.vecs();
    let twists: Vec<BiDegree> = gens.generators.iter().map(module_degree_or_zero).collect();
    let raw = buchberger(gens.rank(), &inputs, true, true);
    let syz = SubmodulePresentation {
        ambient_twists: twists.clone(),
        generators: raw
            .syzygies
            .iter()
            .map(|v| ModuleElement::from_vec(v, &twists))
            .collect(),
    };
    if syz.generators.is_empty() {
        return syz;
    }
    GroebnerBasis::compute(&syz).to_presentation()
}

/// Contraction to `R` of a submodule over `R[w]`: the elements of its
/// elimination basis that are free of `w`.
pub fn eliminate<C: Field>(gens: &SubmodulePresentation<C>) -> SubmodulePresentation<C> {
    eliminate_vecs(&gens.ambient_twists, &gens.vecs())
}

pub(crate) fn eliminate_vecs<C: Field>(
    twists: &[BiDegree],
    inputs: &[ModVec<C>],
) -> SubmodulePresentation<C> {
    let raw = buchberger(twists.len(), inputs, false, false);
    let gb = GroebnerBasis::from_parts(twists.to_vec(), inputs.len(), raw.basis, false);
    let generators = gb
        .elements
        .iter()
        .filter(|v| !v.involves_aux())
        .map(|v| ModuleElement::from_vec(v, twists))
        .collect();
    SubmodulePresentation {
        ambient_twists: twists.to_vec(),
        generators,
    }
}

/// `M ∩ N`, from `w·M + (1-w)·N` by eliminating `w`.
pub fn submodule_intersect<C: Field>(
    m: &SubmodulePresentation<C>,
    n: &SubmodulePresentation<C>,
) -> Result<SubmodulePresentation<C>> {
    if m.ambient_twists != n.ambient_twists {
        return Err(Error::AmbientMismatch);
    }
    let w = Monomial::aux_var();
    let one_minus_w = &Poly::one() - &Poly::aux_var();
    let mut inputs = Vec::new();
    for v in m.vecs() {
        let mut x = ModVec::zero();
        x.add_scaled(&C::one(), &w, &v);
        inputs.push(x);
    }
    for v in n.vecs() {
        inputs.push(v.mul_poly(&one_minus_w));
    }
    Ok(eliminate_vecs(&m.ambient_twists, &inputs))
}
