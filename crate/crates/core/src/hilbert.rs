//! Bigraded Hilbert functions by counting standard monomials, and bigraded
//! Hilbert polynomials `c00 + c10·k + c01·k' + c11·k·k'` by interpolation
//! with a verification grid.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::geometry::{has_base_points, is_zero_dimensional};
use crate::groebner::{syzygy_module, GroebnerBasis};
use crate::module::SubmodulePresentation;
use crate::monomial::{BiDegree, Monomial};
use crate::poly::Poly;
use crate::saturation::saturate;

/// Which side of `M ⊆ F` to measure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    /// The submodule `M` itself.
    Submodule,
    /// The quotient `F / M`.
    Quotient,
}

/// `dim F_(k,k')` for `F = ⊕ R(-dᵢ, -d'ᵢ)`.
pub fn free_dimension(twists: &[BiDegree], at: BiDegree) -> u64 {
    twists
        .iter()
        .map(|tw| {
            let d = at - *tw;
            if d.is_nonnegative() {
                ((d.first + 1) * (d.second + 1)) as u64
            } else {
                0
            }
        })
        .sum()
}

/// Number of standard monomials of `F_(k,k')` with respect to the leading
/// terms of `gb`, i.e. `dim (F/M)_(k,k')` for bihomogeneous `M`.
fn standard_count<C: Field>(gb: &GroebnerBasis<C>, at: BiDegree) -> u64 {
    let leads = gb.leading_terms();
    let mut count = 0;
    for (slot, tw) in gb.twists().iter().enumerate() {
        let slot_leads: Vec<&Monomial> = leads
            .iter()
            .filter(|(_, s)| *s == slot)
            .map(|(m, _)| m)
            .collect();
        for mon in Monomial::of_bidegree(at - *tw) {
            if !slot_leads.iter().any(|l| l.divides(&mon)) {
                count += 1;
            }
        }
    }
    count
}

/// Hilbert function of `M` or `F/M` at a bidegree, given a Gröbner basis
/// of the bihomogeneous submodule `M`.
pub fn hilbert_function_gb<C: Field>(gb: &GroebnerBasis<C>, part: Part, at: BiDegree) -> u64 {
    let q = standard_count(gb, at);
    match part {
        Part::Quotient => q,
        Part::Submodule => free_dimension(gb.twists(), at) - q,
    }
}

pub fn hilbert_function<C: Field>(m: &SubmodulePresentation<C>, part: Part, at: BiDegree) -> u64 {
    hilbert_function_gb(&GroebnerBasis::compute(m), part, at)
}

/// `c00 + c10·k + c01·k' + c11·k·k'`, valid from `stabilization_corner` on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertPoly2 {
    pub c00: i64,
    pub c10: i64,
    pub c01: i64,
    pub c11: i64,
    pub stabilization_corner: BiDegree,
}

impl HilbertPoly2 {
    pub fn evaluate(&self, k: i64, kp: i64) -> i64 {
        self.c00 + self.c10 * k + self.c01 * kp + self.c11 * k * kp
    }

    pub fn is_constant(&self) -> bool {
        self.c10 == 0 && self.c01 == 0 && self.c11 == 0
    }

    /// Same coefficients, ignoring where stabilization was detected.
    pub fn same_polynomial(&self, other: &HilbertPoly2) -> bool {
        (self.c00, self.c10, self.c01, self.c11) == (other.c00, other.c10, other.c01, other.c11)
    }

    /// `Σᵢ (k-dᵢ+1)(k'-d'ᵢ+1)`, the Hilbert polynomial of `⊕ R(-dᵢ, -d'ᵢ)`.
    pub fn of_free(twists: &[BiDegree]) -> HilbertPoly2 {
        let mut p = HilbertPoly2 {
            c00: 0,
            c10: 0,
            c01: 0,
            c11: 0,
            stabilization_corner: BiDegree::default(),
        };
        for tw in twists {
            let (a, b) = (1 - tw.first, 1 - tw.second);
            // (k + a)(k' + b)
            p.c11 += 1;
            p.c10 += b;
            p.c01 += a;
            p.c00 += a * b;
        }
        p
    }

    pub fn add(&self, o: &HilbertPoly2) -> HilbertPoly2 {
        HilbertPoly2 {
            c00: self.c00 + o.c00,
            c10: self.c10 + o.c10,
            c01: self.c01 + o.c01,
            c11: self.c11 + o.c11,
            stabilization_corner: self.stabilization_corner,
        }
    }

    pub fn sub(&self, o: &HilbertPoly2) -> HilbertPoly2 {
        HilbertPoly2 {
            c00: self.c00 - o.c00,
            c10: self.c10 - o.c10,
            c01: self.c01 - o.c01,
            c11: self.c11 - o.c11,
            stabilization_corner: self.stabilization_corner,
        }
    }

    pub fn add_constant(&self, c: i64) -> HilbertPoly2 {
        HilbertPoly2 {
            c00: self.c00 + c,
            ..*self
        }
    }
}

fn interpolate(h: impl Fn(i64, i64) -> i64, c: i64, cp: i64) -> HilbertPoly2 {
    let (h00, h10, h01, h11) = (h(c, cp), h(c + 1, cp), h(c, cp + 1), h(c + 1, cp + 1));
    let c11 = h11 - h10 - h01 + h00;
    let c10 = (h10 - h00) - c11 * cp;
    let c01 = (h01 - h00) - c11 * c;
    let c00 = h00 - c10 * c - c01 * cp - c11 * c * cp;
    HilbertPoly2 {
        c00,
        c10,
        c01,
        c11,
        stabilization_corner: BiDegree::new(c, cp),
    }
}

/// Default corner bound: `Σ (dᵢ + d'ᵢ)` over the ambient twists plus the
/// largest generator bidegree, plus 8.
pub fn default_bound<C: Field>(gb: &GroebnerBasis<C>) -> i64 {
    let tw: i64 = gb.twists().iter().map(|t| t.first.abs() + t.second.abs()).sum();
    let gens = gb
        .elements()
        .iter()
        .filter_map(|e| e.bidegree().ok())
        .map(|d| d.first + d.second)
        .max()
        .unwrap_or(0);
    tw + gens + 8
}

/// Interpolates on the 2×2 grid at the corner `(c, c)`, verifies on the
/// 4×4 grid at `(c+2, c+2)`, and advances `c` until verification passes.
pub fn hilbert_polynomial_gb<C: Field>(
    gb: &GroebnerBasis<C>,
    part: Part,
    bound: i64,
) -> Result<HilbertPoly2> {
    let h = |k: i64, kp: i64| hilbert_function_gb(gb, part, BiDegree::new(k, kp)) as i64;
    for c in 0..=bound {
        let p = interpolate(h, c, c);
        let ok = (0..4).all(|i| (0..4).all(|j| {
            let (k, kp) = (c + 2 + i, c + 2 + j);
            p.evaluate(k, kp) == h(k, kp)
        }));
        if ok {
            return Ok(p);
        }
    }
    Err(Error::NoStabilization(BiDegree::new(bound, bound)))
}

pub fn hilbert_polynomial<C: Field>(m: &SubmodulePresentation<C>, part: Part) -> Result<HilbertPoly2> {
    let gb = GroebnerBasis::compute(m);
    hilbert_polynomial_gb(&gb, part, default_bound(&gb))
}

/// `Z = V(I)` must be a nonempty finite set.
pub fn check_codimension_two<C: Field>(gens: &[Poly<C>]) -> Result<()> {
    if is_zero_dimensional(gens) && has_base_points(gens) {
        Ok(())
    } else {
        Err(Error::NotZeroDimensional)
    }
}

/// `deg Z`: the constant Hilbert polynomial of `R / I^sat`.
pub fn degree_of_z<C: Field>(gens: &[Poly<C>]) -> Result<u64> {
    check_codimension_two(gens)?;
    let sat = saturate(&SubmodulePresentation::ideal(gens));
    let hp = hilbert_polynomial(&sat.module, Part::Quotient)?;
    debug_assert!(hp.is_constant());
    Ok(hp.c00 as u64)
}

/// Presentation of `I/I²` as `F / (S + I·F)` with `F = ⊕ R(-dᵢ, -d'ᵢ)` and
/// `S` the syzygies of the generators.
pub fn conormal_presentation<C: Field>(gens: &[Poly<C>]) -> SubmodulePresentation<C> {
    let syz = syzygy_module(&SubmodulePresentation::ideal(gens));
    let ifree = SubmodulePresentation::ideal_times_free(gens, &syz.ambient_twists);
    syz.sum(&ifree).expect("same ambient module")
}

/// Eventual constant value of `HF(I/I²)`.
pub fn conormal_hilbert_constant<C: Field>(gens: &[Poly<C>]) -> Result<u64> {
    check_codimension_two(gens)?;
    let hp = hilbert_polynomial(&conormal_presentation(gens), Part::Quotient)?;
    if !hp.is_constant() {
        return Err(Error::NotZeroDimensional);
    }
    Ok(hp.c00 as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::saturation::irrelevant_ideal;
    use crate::Q;

    #[test]
    fn ring_slices() {
        let r = SubmodulePresentation::<Q>::ideal(&[]);
        assert_eq!(hilbert_function(&r, Part::Quotient, BiDegree::new(2, 3)), 12);
        let hp = hilbert_polynomial(&r, Part::Quotient).unwrap();
        assert_eq!((hp.c00, hp.c10, hp.c01, hp.c11), (1, 1, 1, 1));
    }

    #[test]
    fn irrelevant_quotient() {
        let m = SubmodulePresentation::<Q>::ideal(&irrelevant_ideal());
        assert_eq!(hilbert_function(&m, Part::Quotient, BiDegree::new(1, 1)), 0);
        assert_eq!(hilbert_function(&m, Part::Quotient, BiDegree::new(3, 0)), 4);
        assert_eq!(hilbert_function(&m, Part::Submodule, BiDegree::new(1, 1)), 4);
    }

    #[test]
    fn free_polynomial_formula() {
        let tw = vec![BiDegree::new(2, 2); 3];
        let hp = HilbertPoly2::of_free(&tw);
        for k in 2..6 {
            for kp in 2..6 {
                assert_eq!(hp.evaluate(k, kp) as u64, free_dimension(&tw, BiDegree::new(k, kp)));
            }
        }
    }
}
