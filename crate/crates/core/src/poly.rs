//! Polynomials in `k[s, u, t, v]` (optionally involving the auxiliary
//! elimination variable).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::{BiDegree, Monomial, Var};

/// A polynomial with exact coefficients.
///
/// Terms are kept sorted ascending in the monomial order with no zero
/// coefficients, so structural equality is polynomial equality and the
/// leading term is the last one.
#[derive(Clone, PartialEq)]
pub struct Poly<C: Field> {
    terms: Vec<(Monomial, C)>,
}

impl<C: Field> Poly<C> {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::term(c, Monomial::ONE)
    }

    pub fn term(c: C, m: Monomial) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(C::one(), m)
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v))
    }

    pub fn aux_var() -> Self {
        Self::monomial(Monomial::aux_var())
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(terms: I) -> Self {
        let mut map: BTreeMap<Monomial, C> = BTreeMap::new();
        for (m, c) in terms {
            let e = map.entry(m).or_insert_with(C::zero);
            *e = e.clone() + c;
        }
        Poly {
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Trusts the caller: `terms` must be strictly ascending with nonzero
    /// coefficients.
    pub(crate) fn from_sorted_unchecked(terms: Vec<(Monomial, C)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, C)> {
        self.terms.last()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        match self.terms.binary_search_by(|(x, _)| x.cmp(m)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => C::zero(),
        }
    }

    pub fn involves_aux(&self) -> bool {
        self.terms.iter().any(|(m, _)| m.aux_exp() > 0)
    }

    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms.iter().map(|(m, _)| m.exp(v)).max().unwrap_or(0)
    }

    /// The common bidegree of all terms.
    pub fn bidegree(&self) -> Result<BiDegree> {
        let mut it = self.terms.iter();
        let first = it.next().ok_or(Error::ZeroPolynomial)?.0.bidegree();
        for (m, _) in it {
            let d = m.bidegree();
            if d != first {
                return Err(Error::NotBihomogeneous(first, d));
            }
        }
        Ok(first)
    }

    pub fn is_bihomogeneous(&self) -> bool {
        !self.is_zero() && self.bidegree().is_ok()
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, x)| (*m, x.clone() * c.clone())).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Poly {
            terms: self.terms.iter().map(|(x, c)| (*x * *m, c.clone())).collect(),
        }
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.inv()),
            None => Self::zero(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Replaces `v` by `repl`.
    pub fn substitute(&self, v: Var, repl: &Poly<C>) -> Self {
        let mut powers: Vec<Poly<C>> = vec![Self::one()];
        let mut acc: BTreeMap<Monomial, C> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            while powers.len() <= e {
                let next = &powers[powers.len() - 1] * repl;
                powers.push(next);
            }
            let rest = m.with_exp(v, 0);
            for (pm, pc) in powers[e].terms() {
                let key = rest * *pm;
                let entry = acc.entry(key).or_insert_with(C::zero);
                *entry = entry.clone() + c.clone() * pc.clone();
            }
        }
        Poly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Sets `v` to a constant.
    pub fn specialize(&self, v: Var, value: &C) -> Self {
        self.substitute(v, &Self::constant(value.clone()))
    }

    /// Evaluates at `(s, u, t, v)`; the auxiliary variable must be absent.
    pub fn evaluate(&self, point: &[C; 4]) -> C {
        let mut total = C::zero();
        for (m, c) in &self.terms {
            debug_assert_eq!(m.aux_exp(), 0);
            let mut term = c.clone();
            for v in Var::ALL {
                for _ in 0..m.exp(v) {
                    term = term * point[v.index()].clone();
                }
            }
            total = total + term;
        }
        total
    }

    /// Moves the exponent of `v` into the auxiliary slot.
    pub(crate) fn var_to_aux(&self, v: Var) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (m.with_exp(v, 0).with_aux_exp(m.exp(v)), c.clone())),
        )
    }

    /// `self + c * m * other`
    pub(crate) fn add_scaled(&self, c: &C, m: &Monomial, other: &Poly<C>) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other
            .terms
            .iter()
            .map(|(x, y)| (*x * *m, y.clone() * c.clone()))
            .peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => match x.0.cmp(&y.0) {
                    std::cmp::Ordering::Less => out.push(a.next().unwrap().clone()),
                    std::cmp::Ordering::Greater => out.push(b.next().unwrap()),
                    std::cmp::Ordering::Equal => {
                        let (mx, cx) = a.next().unwrap();
                        let (_, cy) = b.next().unwrap();
                        let s = cx.clone() + cy;
                        if !s.is_zero() {
                            out.push((*mx, s));
                        }
                    }
                },
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (None, None) => break,
            }
        }
        Poly { terms: out }
    }
}

impl<C: Field> Default for Poly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<'a, C: Field> Add<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn add(self, o: &Poly<C>) -> Poly<C> {
        self.add_scaled(&C::one(), &Monomial::ONE, o)
    }
}

impl<'a, C: Field> Sub<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn sub(self, o: &Poly<C>) -> Poly<C> {
        self.add_scaled(&-C::one(), &Monomial::ONE, o)
    }
}

impl<'a, C: Field> Mul<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn mul(self, o: &Poly<C>) -> Poly<C> {
        let mut acc: BTreeMap<Monomial, C> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let e = acc.entry(*ma * *mb).or_insert_with(C::zero);
                *e = e.clone() + ca.clone() * cb.clone();
            }
        }
        Poly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl<C: Field> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl<C: Field> Add for Poly<C> {
    type Output = Poly<C>;
    fn add(self, o: Poly<C>) -> Poly<C> {
        &self + &o
    }
}

impl<C: Field> Sub for Poly<C> {
    type Output = Poly<C>;
    fn sub(self, o: Poly<C>) -> Poly<C> {
        &self - &o
    }
}

impl<C: Field> Mul for Poly<C> {
    type Output = Poly<C>;
    fn mul(self, o: Poly<C>) -> Poly<C> {
        &self * &o
    }
}

impl<C: Field> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        -&self
    }
}

impl<C: Field> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.to_string().starts_with('-');
            let abs = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", abs, m)?;
            }
        }
        Ok(())
    }
}

impl<C: Field> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;

    fn mono(s: u16, u: u16, t: u16, v: u16) -> Poly<Q> {
        Poly::monomial(Monomial::new(s, u, t, v))
    }

    #[test]
    fn bidegrees() {
        assert_eq!(mono(0, 2, 1, 1).bidegree().unwrap(), BiDegree::new(2, 2));
        assert_eq!(Poly::<Q>::var(Var::S).bidegree().unwrap(), BiDegree::new(1, 0));
        let st = &Poly::<Q>::var(Var::S) + &Poly::var(Var::T);
        assert!(matches!(st.bidegree(), Err(Error::NotBihomogeneous(..))));
        assert!(matches!(Poly::<Q>::zero().bidegree(), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn arithmetic_examples() {
        let s = Poly::<Q>::var(Var::S);
        assert!((&s - &s).is_zero());
        assert_eq!(&mono(0, 2, 1, 1) * &mono(2, 0, 1, 1), mono(2, 2, 2, 2));
        let f2 = &mono(0, 2, 2, 0) + &mono(1, 1, 0, 2);
        assert_eq!(f2.len(), 2);
        assert_eq!(f2.bidegree().unwrap(), BiDegree::new(2, 2));
        assert_eq!(f2.leading_term().unwrap().0, Monomial::new(0, 2, 2, 0));
    }

    #[test]
    fn substitution_and_evaluation() {
        let s = Poly::<Q>::var(Var::S);
        let t = Poly::<Q>::var(Var::T);
        let f = &(&s * &s) - &t;
        let g = f.substitute(Var::S, &(&s + &Poly::one()));
        // (s+1)^2 - t
        let expect = &(&(&(&s * &s) + &s.scale(&Q::from_integer(2.into()))) + &Poly::one()) - &t;
        assert_eq!(g, expect);
        let q = |n: i64| Q::from_integer(n.into());
        assert_eq!(g.evaluate(&[q(2), q(0), q(5), q(0)]), q(4));
    }
}
