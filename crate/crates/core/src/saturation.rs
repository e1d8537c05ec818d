//! Saturation with respect to single elements and to the irrelevant ideal
//! `m = ⟨st, sv, ut, uv⟩` of P¹×P¹.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{eliminate_vecs, submodule_intersect, GroebnerBasis};
use crate::module::{ModVec, SubmodulePresentation};
use crate::monomial::{BiDegree, Monomial, Var};
use crate::poly::Poly;

/// Upper bound on certificate exponents before giving up.
const MAX_EXPONENT: u32 = 64;

/// The generators `st, sv, ut, uv` of the irrelevant ideal.
pub fn irrelevant_ideal<C: Field>() -> Vec<Poly<C>> {
    let p = |a: Var, b: Var| Poly::monomial(Monomial::var(a) * Monomial::var(b));
    vec![p(Var::S, Var::T), p(Var::S, Var::V), p(Var::U, Var::T), p(Var::U, Var::V)]
}

/// A saturated module together with, for each generator `x`, the least
/// exponent `N` verified to push `x` back into the original module.
#[derive(Clone, Debug)]
pub struct Saturation<C: Field> {
    pub module: SubmodulePresentation<C>,
    pub exponents: Vec<u32>,
}

/// `M : g^∞`, computed as `(M + (1 - w·g)·F) ∩ F` with `F` the ambient
/// free module. Each generator `x` comes with the least `N` such that
/// `g^N · x ∈ M`.
pub fn saturate_by_element<C: Field>(
    m: &SubmodulePresentation<C>,
    g: &Poly<C>,
) -> Result<Saturation<C>> {
    if g.is_zero() {
        return Err(Error::ZeroElement);
    }
    let module = colon_power(m, g);
    let gb = GroebnerBasis::compute(m);
    let exponents = module
        .vecs()
        .iter()
        .map(|x| element_exponent(&gb, x, g))
        .collect();
    Ok(Saturation { module, exponents })
}

fn colon_power<C: Field>(m: &SubmodulePresentation<C>, g: &Poly<C>) -> SubmodulePresentation<C> {
    let one_minus_wg = &Poly::one() - &(&Poly::aux_var() * g);
    let mut inputs = m.vecs();
    for slot in 0..m.rank() {
        inputs.push(ModVec::from_poly(&one_minus_wg, slot));
    }
    eliminate_vecs(&m.ambient_twists, &inputs)
}

fn element_exponent<C: Field>(gb: &GroebnerBasis<C>, x: &ModVec<C>, g: &Poly<C>) -> u32 {
    let mut cur = x.clone();
    for n in 0..=MAX_EXPONENT {
        if gb.divide_vec(&cur, false).0.is_zero() {
            return n;
        }
        cur = cur.mul_poly(g);
    }
    panic!("saturation generator has no certificate below g^{MAX_EXPONENT}");
}

/// Least `k` with `m^k · x ⊆ M`, where `m^k` is spanned by the monomials
/// of bidegree `(k, k)`.
fn irrelevant_exponent<C: Field>(gb: &GroebnerBasis<C>, x: &ModVec<C>) -> u32 {
    let x = crate::module::ModuleElement::from_vec(x, gb.twists());
    for k in 0..=MAX_EXPONENT {
        if irrelevant_power_kills(gb, &x, k) {
            return k;
        }
    }
    panic!("saturation generator has no certificate below m^{MAX_EXPONENT}");
}

/// `M^sat = M : m^∞ = ∩_{g ∈ {st, sv, ut, uv}} M : g^∞`.
///
/// Exponents certify `m^k · x ⊆ M` for every returned generator `x`.
pub fn saturate<C: Field>(m: &SubmodulePresentation<C>) -> Saturation<C> {
    let gens = irrelevant_ideal::<C>();
    let parts: Vec<SubmodulePresentation<C>> = std::thread::scope(|scope| {
        let handles: Vec<_> = gens
            .iter()
            .map(|g| scope.spawn(move || colon_power(m, g)))
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut acc = parts[0].clone();
    for p in &parts[1..] {
        acc = submodule_intersect(&acc, p).expect("same ambient module");
    }
    let gb = GroebnerBasis::compute(m);
    let exponents = acc.vecs().iter().map(|x| irrelevant_exponent(&gb, x)).collect();
    Saturation {
        module: acc,
        exponents,
    }
}

/// `true` iff `M = M^sat`, decided by membership of the generators of
/// `M^sat` in `M`.
pub fn is_saturated<C: Field>(m: &SubmodulePresentation<C>) -> bool {
    let sat = saturate(m);
    GroebnerBasis::compute(m)
        .contains_all(&sat.module)
        .expect("same ambient module")
}

/// `m^k · x ⊆ M`: a certificate that `x ∈ M^sat`, checked against a
/// Gröbner basis of `M` without any elimination.
pub fn irrelevant_power_kills<C: Field>(
    gb: &GroebnerBasis<C>,
    x: &crate::module::ModuleElement<C>,
    k: u32,
) -> bool {
    let v = x.to_vec();
    Monomial::of_bidegree(BiDegree::new(k as i64, k as i64))
        .iter()
        .all(|mon| {
            let mut y = ModVec::zero();
            y.add_scaled(&C::one(), mon, &v);
            gb.divide_vec(&y, false).0.is_zero()
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;

    fn mono(s: u16, u: u16, t: u16, v: u16) -> Poly<Q> {
        Poly::monomial(Monomial::new(s, u, t, v))
    }

    #[test]
    fn colon_by_variable() {
        let m = SubmodulePresentation::ideal(&[mono(1, 0, 1, 0)]);
        let sat = saturate_by_element(&m, &Poly::var(Var::S)).unwrap();
        assert_eq!(sat.module.as_ideal_generators(), vec![mono(0, 0, 1, 0)]);
        assert_eq!(sat.exponents, vec![1]);
    }

    #[test]
    fn colon_by_one_is_identity() {
        let m = SubmodulePresentation::ideal(&[mono(1, 0, 1, 0), mono(0, 2, 0, 1)]);
        let sat = saturate_by_element(&m, &Poly::one()).unwrap();
        let gb = GroebnerBasis::compute(&m);
        let gb2 = GroebnerBasis::compute(&sat.module);
        assert!(gb.contains_all(&sat.module).unwrap());
        assert!(gb2.contains_all(&m).unwrap());
        assert!(sat.exponents.iter().all(|&n| n == 0));
    }

    #[test]
    fn zero_element_rejected() {
        let m = SubmodulePresentation::ideal(&[mono(1, 0, 1, 0)]);
        assert!(matches!(saturate_by_element(&m, &Poly::<Q>::zero()), Err(Error::ZeroElement)));
    }

    #[test]
    fn irrelevant_ideal_saturates_to_unit() {
        let m = SubmodulePresentation::ideal(&irrelevant_ideal::<Q>());
        let sat = saturate(&m);
        assert!(GroebnerBasis::compute(&sat.module).is_whole_module());
        assert_eq!(sat.exponents, vec![1]);
        assert!(!is_saturated(&m));
    }
}
