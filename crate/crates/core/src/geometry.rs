//! Base points on P¹×P¹ and their local invariants.
//!
//! The base locus is studied in the four affine charts
//! `(s=1,t=1), (s=1,v=1), (u=1,t=1), (u=1,v=1)`, always in that order.
//! Local rings are never formed explicitly: a quotient supported at a
//! point `p` is measured as the colength of `J + m_p^N` for growing `N`,
//! which stabilizes at the local length (Nakayama).

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{submodule_intersect, syzygy_module, GroebnerBasis};
use crate::hilbert::{conormal_hilbert_constant, degree_of_z};
use crate::module::{ModuleElement, SubmodulePresentation};
use crate::monomial::{BiDegree, Monomial, Var};
use crate::poly::Poly;
use crate::saturation::saturate_by_element;
use crate::{BiPoly, Q};

/// An affine chart: `fixed` variables set to 1, `free` the coordinates
/// (first-factor variable first).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Chart {
    pub fixed: [Var; 2],
    pub free: [Var; 2],
}

pub const CHARTS: [Chart; 4] = [
    Chart { fixed: [Var::S, Var::T], free: [Var::U, Var::V] },
    Chart { fixed: [Var::S, Var::V], free: [Var::U, Var::T] },
    Chart { fixed: [Var::U, Var::T], free: [Var::S, Var::V] },
    Chart { fixed: [Var::U, Var::V], free: [Var::S, Var::T] },
];

impl Chart {
    pub fn dehomogenize<C: Field>(&self, p: &Poly<C>) -> Poly<C> {
        p.specialize(self.fixed[0], &C::one())
            .specialize(self.fixed[1], &C::one())
    }

    fn monomial(&self, i: u16, j: u16) -> Monomial {
        Monomial::ONE.with_exp(self.free[0], i).with_exp(self.free[1], j)
    }

    /// Monomials `x^i y^j` of total degree exactly `n`.
    fn degree_monomials(&self, n: u16) -> Vec<Monomial> {
        (0..=n).map(|i| self.monomial(i, n - i)).collect()
    }

    fn has_pure_power(&self, leads: &[(Monomial, usize)], v: Var) -> bool {
        leads.iter().any(|(m, _)| {
            m.exp(v) > 0 && Var::ALL.iter().all(|&o| o == v || m.exp(o) == 0)
        })
    }
}

fn chart_ideal<C: Field>(chart: &Chart, gens: &[Poly<C>]) -> Vec<Poly<C>> {
    gens.iter()
        .map(|g| chart.dehomogenize(g))
        .filter(|g| !g.is_zero())
        .collect()
}

/// `true` iff in every chart the dehomogenized ideal is the unit ideal or
/// has finite colength.
pub fn is_zero_dimensional<C: Field>(gens: &[Poly<C>]) -> bool {
    CHARTS.iter().all(|chart| {
        let gb = GroebnerBasis::ideal(&chart_ideal(chart, gens));
        gb.is_whole_module()
            || (chart.has_pure_power(gb.leading_terms(), chart.free[0])
                && chart.has_pure_power(gb.leading_terms(), chart.free[1]))
    })
}

/// `true` iff some chart ideal is proper, i.e. the locus is nonempty.
pub fn has_base_points<C: Field>(gens: &[Poly<C>]) -> bool {
    CHARTS
        .iter()
        .any(|chart| !GroebnerBasis::ideal(&chart_ideal(chart, gens)).is_whole_module())
}

/// A point `((s:u), (t:v))` with the last nonzero coordinate of each pair
/// normalized to 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointP1xP1 {
    pub first: [Q; 2],
    pub second: [Q; 2],
}

fn normalize_pair(a: Q, b: Q) -> Option<[Q; 2]> {
    if !b.is_zero() {
        Some([a / b.clone(), Q::one()])
    } else if !a.is_zero() {
        Some([Q::one(), Q::zero()])
    } else {
        None
    }
}

impl PointP1xP1 {
    /// Builds and normalizes `(s:u; t:v)`; `None` if a pair is `(0:0)`.
    pub fn new(s: Q, u: Q, t: Q, v: Q) -> Option<Self> {
        Some(PointP1xP1 {
            first: normalize_pair(s, u)?,
            second: normalize_pair(t, v)?,
        })
    }

    pub fn coords(&self) -> [Q; 4] {
        [
            self.first[0].clone(),
            self.first[1].clone(),
            self.second[0].clone(),
            self.second[1].clone(),
        ]
    }

    fn coord(&self, v: Var) -> Q {
        self.coords()[v.index()].clone()
    }

    pub fn in_chart(&self, chart: &Chart) -> bool {
        chart.fixed.iter().all(|&v| !self.coord(v).is_zero())
    }

    /// First chart (in the fixed order) containing the point.
    pub fn chart(&self) -> Chart {
        *CHARTS.iter().find(|c| self.in_chart(c)).expect("every point lies in a chart")
    }

    /// Affine coordinates `(x, y)` of the point in `chart`.
    pub fn chart_coords(&self, chart: &Chart) -> (Q, Q) {
        let x = self.coord(chart.free[0]) / self.coord(chart.fixed[0]);
        let y = self.coord(chart.free[1]) / self.coord(chart.fixed[1]);
        (x, y)
    }

    fn from_chart(chart: &Chart, x: Q, y: Q) -> Self {
        let mut c = [Q::zero(), Q::zero(), Q::zero(), Q::zero()];
        c[chart.fixed[0].index()] = Q::one();
        c[chart.fixed[1].index()] = Q::one();
        c[chart.free[0].index()] = x;
        c[chart.free[1].index()] = y;
        let [s, u, t, v] = c;
        PointP1xP1::new(s, u, t, v).unwrap()
    }

    pub fn lies_on(&self, gens: &[BiPoly]) -> bool {
        let c = self.coords();
        gens.iter().all(|g| g.evaluate(&c).is_zero())
    }
}

impl fmt::Display for PointP1xP1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}:{};{}:{})",
            self.first[0], self.first[1], self.second[0], self.second[1]
        )
    }
}

impl fmt::Debug for PointP1xP1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Rational base points; `complete` iff no other (non-rational) points
/// exist, certified by saturating each chart ideal at the found points.
#[derive(Clone, Debug, PartialEq)]
pub struct BasePointLocus {
    pub rational_points: Vec<PointP1xP1>,
    pub complete: bool,
}

/// Coefficients (ascending by degree) of a polynomial in one chart variable.
fn univariate(p: &BiPoly, v: Var) -> Vec<Q> {
    let deg = p.degree_in(v) as usize;
    let mut out = vec![Q::zero(); deg + 1];
    for (m, c) in p.terms() {
        out[m.exp(v) as usize] = c.clone();
    }
    out
}

fn divisors(n: &BigUint) -> Vec<BigUint> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigUint::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            let q = n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1u32;
    }
    small.extend(large.into_iter().rev());
    small
}

fn horner(coeffs: &[Q], x: &Q) -> Q {
    coeffs
        .iter()
        .rev()
        .fold(Q::zero(), |acc, c| acc * x.clone() + c.clone())
}

/// All rational roots of `Σ coeffs[i]·x^i` (nonzero polynomial), sorted.
pub fn rational_roots(coeffs: &[Q]) -> Vec<Q> {
    let mut coeffs: Vec<Q> = coeffs.to_vec();
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    let mut roots = Vec::new();
    if coeffs.len() <= 1 {
        return roots;
    }
    if coeffs[0].is_zero() {
        roots.push(Q::zero());
        let nz = coeffs.iter().position(|c| !c.is_zero()).unwrap();
        coeffs.drain(..nz);
    }
    if coeffs.len() > 1 {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = coeffs
            .iter()
            .map(|c| (c * Q::from_integer(den.clone())).to_integer())
            .collect();
        let ps = divisors(&ints[0].abs().to_biguint().unwrap());
        let qs = divisors(&ints.last().unwrap().abs().to_biguint().unwrap());
        for p in &ps {
            for q in &qs {
                for sign in [1, -1] {
                    let cand = Q::new(BigInt::from(p.clone()) * sign, BigInt::from(q.clone()));
                    if horner(&coeffs, &cand).is_zero() && !roots.contains(&cand) {
                        roots.push(cand);
                    }
                }
            }
        }
    }
    roots.sort();
    roots
}

/// Generator of an ideal of `k[v]` presented by a reduced basis, or `None`
/// for the unit ideal.
fn principal_generator(gb: &GroebnerBasis<Q>, v: Var) -> Option<Vec<Q>> {
    if gb.is_whole_module() {
        return None;
    }
    let polys = gb.polys();
    debug_assert_eq!(polys.len(), 1);
    Some(univariate(&polys[0], v))
}

fn chart_points(chart: &Chart, gens: &[BiPoly], all: &[BiPoly]) -> Vec<PointP1xP1> {
    let (x, y) = (chart.free[0], chart.free[1]);
    // eliminate x by moving it into the auxiliary slot
    let moved: Vec<BiPoly> = gens.iter().map(|g| g.var_to_aux(x)).collect();
    let gb = GroebnerBasis::ideal(&moved);
    let ys: Vec<BiPoly> = gb.polys().into_iter().filter(|p| !p.involves_aux()).collect();
    let Some(elim) = ys.first() else { return Vec::new() };
    let mut out = Vec::new();
    for b in rational_roots(&univariate(elim, y)) {
        let fibre: Vec<BiPoly> = gens.iter().map(|g| g.specialize(y, &b)).collect();
        let Some(xs) = principal_generator(&GroebnerBasis::ideal(&fibre), x) else { continue };
        for a in rational_roots(&xs) {
            let p = PointP1xP1::from_chart(chart, a, b.clone());
            if p.lies_on(all) {
                out.push(p);
            }
        }
    }
    out
}

/// Chart ideal with `p` removed: `J : m_p^∞`.
fn remove_point(j: &SubmodulePresentation<Q>, chart: &Chart, p: &PointP1xP1) -> SubmodulePresentation<Q> {
    let (a, b) = p.chart_coords(chart);
    let gx = &Poly::var(chart.free[0]) - &Poly::constant(a);
    let gy = &Poly::var(chart.free[1]) - &Poly::constant(b);
    let jx = saturate_by_element(j, &gx).expect("nonzero").module;
    let jy = saturate_by_element(j, &gy).expect("nonzero").module;
    submodule_intersect(&jx, &jy).expect("rank one")
}

/// Rational points of `Z = V(I)` with a completeness certificate.
pub fn base_points(gens: &[BiPoly]) -> Result<BasePointLocus> {
    if !is_zero_dimensional(gens) {
        return Err(Error::NotZeroDimensional);
    }
    let mut points: Vec<PointP1xP1> = Vec::new();
    let mut complete = true;
    for chart in &CHARTS {
        let local = chart_ideal(chart, gens);
        if GroebnerBasis::ideal(&local).is_whole_module() {
            continue;
        }
        let found = chart_points(chart, &local, gens);
        let mut j = SubmodulePresentation::ideal(&local);
        for p in &found {
            j = remove_point(&j, chart, p);
        }
        if !GroebnerBasis::compute(&j).is_whole_module() {
            complete = false;
        }
        points.extend(found);
    }
    points.sort();
    points.dedup();
    Ok(BasePointLocus {
        rational_points: points,
        complete,
    })
}

/// Local invariants of `I` at a rational base point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalReport {
    #[serde(skip)]
    pub point: PointP1xP1,
    /// `dim O_p / I_p`
    pub multiplicity: u64,
    /// `dim m_p / (m_p² + I_p)`
    pub tangent_dim: u64,
    /// `dim I_p / I_p²`
    pub conormal_dim: u64,
    pub curvilinear: bool,
    pub lci: bool,
}

/// Chart generators of `I` translated so that `p` sits at the origin.
fn localize(gens: &[BiPoly], chart: &Chart, p: &PointP1xP1) -> Vec<BiPoly> {
    let (a, b) = p.chart_coords(chart);
    let sx = &Poly::var(chart.free[0]) + &Poly::constant(a);
    let sy = &Poly::var(chart.free[1]) + &Poly::constant(b);
    chart_ideal(chart, gens)
        .iter()
        .map(|g| g.substitute(chart.free[0], &sx).substitute(chart.free[1], &sy))
        .collect()
}

/// `dim (F / N)` for a submodule `N ⊇ m^n·F` of a free module over the
/// chart ring, by counting standard monomials of degree `< n`.
fn truncated_colength(chart: &Chart, m: &SubmodulePresentation<Q>, n: u16) -> u64 {
    let rank = m.rank();
    let mut pres = m.clone();
    for slot in 0..rank {
        for mon in chart.degree_monomials(n) {
            let mut e = ModuleElement::zero(&m.ambient_twists);
            e.components[slot] = Poly::monomial(mon);
            pres.generators.push(e);
        }
    }
    let gb = GroebnerBasis::compute(&pres);
    let leads = gb.leading_terms();
    let mut count = 0;
    for slot in 0..rank {
        for d in 0..n {
            for mon in chart.degree_monomials(d) {
                if !leads.iter().any(|(l, s)| *s == slot && l.divides(&mon)) {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Colength of `N + m^n·F` stabilized in `n`: stop once two consecutive
/// values agree and `n` has passed the value itself.
fn stabilized_colength(chart: &Chart, m: &SubmodulePresentation<Q>) -> u64 {
    let mut prev = truncated_colength(chart, m, 1);
    let mut n: u16 = 2;
    loop {
        let cur = truncated_colength(chart, m, n);
        if cur == prev && (n as u64) > cur {
            return cur;
        }
        prev = cur;
        n += 1;
    }
}

/// Base locus of an ideal plus pointwise invariants at its rational points.
#[derive(Clone, Debug)]
pub struct BaseLocusAnalysis {
    gens: Vec<BiPoly>,
    pub locus: BasePointLocus,
}

impl BaseLocusAnalysis {
    pub fn new(gens: &[BiPoly]) -> Result<Self> {
        Ok(BaseLocusAnalysis {
            gens: gens.to_vec(),
            locus: base_points(gens)?,
        })
    }

    fn check(&self, p: &PointP1xP1) -> Result<()> {
        if !self.locus.complete {
            return Err(Error::RequiresRationalPoints);
        }
        if !p.lies_on(&self.gens) {
            return Err(Error::PointNotOnLocus(p.to_string()));
        }
        Ok(())
    }

    pub fn local_multiplicity(&self, p: &PointP1xP1) -> Result<u64> {
        self.check(p)?;
        Ok(multiplicity_in(&self.gens, &p.chart(), p))
    }

    pub fn tangent_dimension(&self, p: &PointP1xP1) -> Result<u64> {
        self.check(p)?;
        Ok(tangent_in(&self.gens, &p.chart(), p))
    }

    /// Curvilinear iff the tangent space of the fat point has dimension at
    /// most 1. An element of `I_p` with nonzero linear part `u'` lets one
    /// pass to `O_p/(u')`, a DVR in which the image of `I_p` is `(v^k)`, so
    /// `I_p = ⟨u', v^k⟩`; conversely `⟨u, v^k⟩` has tangent dimension ≤ 1.
    pub fn is_curvilinear_at(&self, p: &PointP1xP1) -> Result<bool> {
        Ok(self.tangent_dimension(p)? <= 1)
    }

    pub fn conormal_dimension(&self, p: &PointP1xP1) -> Result<u64> {
        self.check(p)?;
        Ok(conormal_in(&self.gens, &p.chart(), p))
    }

    /// LCI at `p` iff `dim I_p/I_p² = 2·dim O_p/I_p`.
    pub fn is_lci_at(&self, p: &PointP1xP1) -> Result<(bool, LocalReport)> {
        let r = self.local_report(p)?;
        Ok((r.lci, r))
    }

    pub fn local_report(&self, p: &PointP1xP1) -> Result<LocalReport> {
        self.check(p)?;
        Ok(report_in(&self.gens, &p.chart(), p))
    }

    /// Reports at every rational base point, in sorted point order.
    pub fn local_reports(&self) -> Result<Vec<LocalReport>> {
        if !self.locus.complete {
            return Err(Error::RequiresRationalPoints);
        }
        Ok(self
            .locus
            .rational_points
            .iter()
            .map(|p| report_in(&self.gens, &p.chart(), p))
            .collect())
    }
}

pub(crate) fn multiplicity_in(gens: &[BiPoly], chart: &Chart, p: &PointP1xP1) -> u64 {
    let local = SubmodulePresentation::ideal(&localize(gens, chart, p));
    stabilized_colength(chart, &local)
}

pub(crate) fn tangent_in(gens: &[BiPoly], chart: &Chart, p: &PointP1xP1) -> u64 {
    let local = SubmodulePresentation::ideal(&localize(gens, chart, p));
    truncated_colength(chart, &local, 2) - 1
}

pub(crate) fn conormal_in(gens: &[BiPoly], chart: &Chart, p: &PointP1xP1) -> u64 {
    let local = localize(gens, chart, p);
    let syz = syzygy_module(&SubmodulePresentation::ideal(&local));
    let flat: Vec<BiDegree> = vec![BiDegree::default(); local.len()];
    let syz = SubmodulePresentation {
        ambient_twists: flat.clone(),
        generators: syz
            .generators
            .into_iter()
            .map(|g| ModuleElement {
                components: g.components,
                twists: flat.clone(),
            })
            .collect(),
    };
    let n = syz
        .sum(&SubmodulePresentation::ideal_times_free(&local, &flat))
        .expect("same ambient module");
    stabilized_colength(chart, &n)
}

/// Local report computed in a specific chart containing `p`.
pub fn report_in(gens: &[BiPoly], chart: &Chart, p: &PointP1xP1) -> LocalReport {
    let multiplicity = multiplicity_in(gens, chart, p);
    let tangent_dim = tangent_in(gens, chart, p);
    let conormal_dim = conormal_in(gens, chart, p);
    LocalReport {
        point: p.clone(),
        multiplicity,
        tangent_dim,
        conormal_dim,
        curvilinear: tangent_dim <= 1,
        lci: conormal_dim == 2 * multiplicity,
    }
}

pub fn local_multiplicity(gens: &[BiPoly], p: &PointP1xP1) -> Result<u64> {
    BaseLocusAnalysis::new(gens)?.local_multiplicity(p)
}

pub fn tangent_dimension(gens: &[BiPoly], p: &PointP1xP1) -> Result<u64> {
    BaseLocusAnalysis::new(gens)?.tangent_dimension(p)
}

pub fn is_curvilinear_at(gens: &[BiPoly], p: &PointP1xP1) -> Result<bool> {
    BaseLocusAnalysis::new(gens)?.is_curvilinear_at(p)
}

pub fn is_lci_at(gens: &[BiPoly], p: &PointP1xP1) -> Result<(bool, LocalReport)> {
    BaseLocusAnalysis::new(gens)?.is_lci_at(p)
}

/// Global LCI test `H(I/I²) = 2·deg Z`; needs no point extraction.
pub fn is_lci_global<C: Field>(gens: &[Poly<C>]) -> Result<bool> {
    let deg = degree_of_z(gens)?;
    Ok(conormal_hilbert_constant(gens)? == 2 * deg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn normalization() {
        let p = PointP1xP1::new(q(0), q(3), q(2), q(0)).unwrap();
        assert_eq!(p.to_string(), "(0:1;1:0)");
        let p = PointP1xP1::new(q(2), q(4), q(1), q(1)).unwrap();
        assert_eq!(p.to_string(), "(1/2:1;1:1)");
        assert!(PointP1xP1::new(q(0), q(0), q(1), q(1)).is_none());
    }

    #[test]
    fn roots() {
        // (2x - 1)(x + 3) x = 2x^3 + 5x^2 - 3x
        let r = rational_roots(&[q(0), q(-3), q(5), q(2)]);
        assert_eq!(r, vec![q(-3), q(0), Q::new(1.into(), 2.into())]);
        assert!(rational_roots(&[q(-2), q(0), q(1)]).is_empty());
    }

    #[test]
    fn principal_ideal_is_not_zero_dimensional() {
        let f = Poly::<Q>::monomial(Monomial::new(0, 2, 1, 1));
        assert!(!is_zero_dimensional(&[f]));
        assert!(is_zero_dimensional(&[Poly::<Q>::one()]));
        assert!(!has_base_points(&[Poly::<Q>::one()]));
    }
}
