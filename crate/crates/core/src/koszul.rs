//! Koszul syzygies `K`, the full syzygy module `S` and the module `V` of
//! syzygies vanishing at the base points, for three bihomogeneous
//! generators `f₁, f₂, f₃`, together with the membership and slice checks
//! relating them to the local complete intersection property.

use crate::error::{Error, Result};
use crate::geometry::is_lci_global;
use crate::groebner::{submodule_intersect, syzygy_module, GroebnerBasis};
use crate::hilbert::{
    check_codimension_two, conormal_hilbert_constant, degree_of_z, hilbert_function_gb,
    hilbert_polynomial_gb, HilbertPoly2, Part,
};
use crate::module::{ModuleElement, SubmodulePresentation};
use crate::monomial::BiDegree;
use crate::poly::Poly;
use crate::saturation::{is_saturated, saturate};
use crate::{BiPoly, Q};

/// `K`, `S`, `V` and `I^sat` for `I = ⟨f₁, f₂, f₃⟩`, with Gröbner bases.
#[derive(Clone, Debug)]
pub struct KoszulData {
    pub generators: Vec<BiPoly>,
    /// `(dᵢ, d'ᵢ)`: the ambient module is `⊕ R(-dᵢ, -d'ᵢ)`.
    pub twists: Vec<BiDegree>,
    /// Generated by `(f₂,-f₁,0), (f₃,0,-f₁), (0,f₃,-f₂)` in this order.
    pub koszul: SubmodulePresentation<Q>,
    pub syzygies: SubmodulePresentation<Q>,
    pub vanishing: SubmodulePresentation<Q>,
    pub ideal_saturation: SubmodulePresentation<Q>,
    pub gb_koszul: GroebnerBasis<Q>,
    pub gb_syzygies: GroebnerBasis<Q>,
    pub gb_vanishing: GroebnerBasis<Q>,
    pub gb_ideal_saturation: GroebnerBasis<Q>,
}

/// Classification of one syzygy.
#[derive(Clone, Debug)]
pub struct KoszulVerdict {
    pub syzygy: ModuleElement<Q>,
    /// Module bidegree `(k, k')`.
    pub module_bidegree: BiDegree,
    pub in_range: bool,
    pub vanishes_at_base_points: bool,
    pub is_koszul: bool,
    /// `(q₁, q₂, q₃)` with `Σ qᵢ·Kᵢ` equal to the syzygy.
    pub certificate: Option<Vec<BiPoly>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SliceComparison {
    pub at: BiDegree,
    pub dim_koszul: u64,
    pub dim_vanishing: u64,
    pub equal: bool,
}

/// Outcome of checking `K^sat = V ⟺ I is LCI` on one ideal.
#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub ksat_equals_v: bool,
    pub lci_global: bool,
    pub biconditional_holds: bool,
    pub degree_of_z: u64,
    pub conormal_constant: u64,
    pub hp_ksat: HilbertPoly2,
    pub hp_ksat_expected: HilbertPoly2,
    pub hp_ksat_matches: bool,
    pub hp_v: HilbertPoly2,
    pub hp_v_expected: HilbertPoly2,
    pub hp_v_matches: bool,
    /// A generator of `V` outside `K^sat`, when the two differ.
    pub separating_element: Option<ModuleElement<Q>>,
    pub ksat: SubmodulePresentation<Q>,
}

/// Generators of `K` with the fixed sign convention.
pub fn koszul_generators(f: &[BiPoly], twists: &[BiDegree]) -> Vec<ModuleElement<Q>> {
    let z = Poly::zero();
    let col = |a: &BiPoly, b: &BiPoly, c: &BiPoly| ModuleElement {
        components: vec![a.clone(), b.clone(), c.clone()],
        twists: twists.to_vec(),
    };
    vec![
        col(&f[1], &-&f[0], &z),
        col(&f[2], &z, &-&f[0]),
        col(&z, &f[2], &-&f[1]),
    ]
}

impl KoszulData {
    pub fn build(gens: &[BiPoly]) -> Result<Self> {
        if gens.len() != 3 {
            return Err(Error::WrongGeneratorCount(gens.len()));
        }
        let twists = gens.iter().map(|g| g.bidegree()).collect::<Result<Vec<_>>>()?;
        check_codimension_two(gens)?;

        let koszul = SubmodulePresentation::new(twists.clone(), koszul_generators(gens, &twists))?;
        let (syzygies, ideal_saturation) = std::thread::scope(|scope| {
            let s = scope.spawn(|| syzygy_module(&SubmodulePresentation::ideal(gens)));
            let i = scope.spawn(|| saturate(&SubmodulePresentation::ideal(gens)).module);
            (s.join().unwrap(), i.join().unwrap())
        });
        debug_assert_eq!(syzygies.ambient_twists, twists);
        let sat_free =
            SubmodulePresentation::ideal_times_free(&ideal_saturation.as_ideal_generators(), &twists);
        let vanishing = submodule_intersect(&syzygies, &sat_free)?;

        Ok(KoszulData {
            generators: gens.to_vec(),
            gb_koszul: GroebnerBasis::compute_with_cofactors(&koszul),
            gb_syzygies: GroebnerBasis::compute(&syzygies),
            gb_vanishing: GroebnerBasis::compute(&vanishing),
            gb_ideal_saturation: GroebnerBasis::compute(&ideal_saturation),
            twists,
            koszul,
            syzygies,
            vanishing,
            ideal_saturation,
        })
    }

    /// Builds a vector in the ambient module from its three entries.
    pub fn vector(&self, comps: Vec<BiPoly>) -> Result<ModuleElement<Q>> {
        ModuleElement::new(comps, self.twists.clone())
    }

    fn check_syzygy(&self, x: &ModuleElement<Q>) -> Result<()> {
        if x.twists != self.twists {
            return Err(Error::AmbientMismatch);
        }
        if !x.apply(&self.generators).is_zero() {
            return Err(Error::NotASyzygy);
        }
        Ok(())
    }

    /// Every entry lies in `I^sat`.
    pub fn verify_vanishing(&self, x: &ModuleElement<Q>) -> Result<bool> {
        self.check_syzygy(x)?;
        Ok(x
            .components
            .iter()
            .all(|c| self.gb_ideal_saturation.contains_poly(c)))
    }

    /// `(k - Σdᵢ + 1)(k' - Σd'ᵢ + 1) ≥ 0` at module bidegree `at`.
    pub fn range_predicate(&self, at: BiDegree) -> bool {
        let sd: i64 = self.twists.iter().map(|t| t.first).sum();
        let sdp: i64 = self.twists.iter().map(|t| t.second).sum();
        (at.first - sd + 1) * (at.second - sdp + 1) >= 0
    }

    pub fn is_koszul(&self, x: &ModuleElement<Q>) -> Result<KoszulVerdict> {
        self.check_syzygy(x)?;
        let module_bidegree = x.bidegree()?;
        let certificate = self.gb_koszul.lift(x)?;
        Ok(KoszulVerdict {
            syzygy: x.clone(),
            module_bidegree,
            in_range: self.range_predicate(module_bidegree),
            vanishes_at_base_points: self.verify_vanishing(x)?,
            is_koszul: certificate.is_some(),
            certificate,
        })
    }

    pub fn slice_compare(&self, at: BiDegree) -> SliceComparison {
        let dim_koszul = hilbert_function_gb(&self.gb_koszul, Part::Submodule, at);
        let dim_vanishing = hilbert_function_gb(&self.gb_vanishing, Part::Submodule, at);
        SliceComparison {
            at,
            dim_koszul,
            dim_vanishing,
            equal: dim_koszul == dim_vanishing,
        }
    }

    /// `K ⊆ V`, checked generator by generator.
    pub fn koszul_in_vanishing(&self) -> bool {
        self.gb_vanishing.contains_all(&self.koszul).expect("same ambient module")
    }

    pub fn vanishing_is_saturated(&self) -> bool {
        is_saturated(&self.vanishing)
    }

    pub fn syzygies_are_saturated(&self) -> bool {
        is_saturated(&self.syzygies)
    }

    /// Computes `K^sat`, compares it with `V`, and checks the biconditional
    /// against the global LCI test, plus the closed forms of `H(K^sat)`
    /// and `H(V)`.
    pub fn theorem_check(&self) -> Result<TheoremReport> {
        let ksat = saturate(&self.koszul).module;
        let gb_ksat = GroebnerBasis::compute(&ksat);
        let forward = self.gb_vanishing.contains_all(&ksat)?;
        let separating_element = self
            .vanishing
            .generators
            .iter()
            .find(|g| !gb_ksat.contains(g).unwrap())
            .cloned();
        let ksat_equals_v = forward && separating_element.is_none();

        let degree_of_z = degree_of_z(&self.generators)?;
        let conormal_constant = conormal_hilbert_constant(&self.generators)?;
        let lci_global = is_lci_global(&self.generators)?;

        let free_minus_ring = HilbertPoly2::of_free(&self.twists)
            .sub(&HilbertPoly2::of_free(&[BiDegree::default()]));
        let hp_ksat = hilbert_polynomial_gb(&gb_ksat, Part::Submodule, self.hilbert_bound())?;
        let hp_v = hilbert_polynomial_gb(&self.gb_vanishing, Part::Submodule, self.hilbert_bound())?;
        let hp_v_expected =
            free_minus_ring.add_constant(conormal_constant as i64 - 2 * degree_of_z as i64);

        Ok(TheoremReport {
            ksat_equals_v,
            lci_global,
            biconditional_holds: ksat_equals_v == lci_global,
            degree_of_z,
            conormal_constant,
            hp_ksat_matches: hp_ksat.same_polynomial(&free_minus_ring),
            hp_ksat,
            hp_ksat_expected: free_minus_ring,
            hp_v_matches: hp_v.same_polynomial(&hp_v_expected),
            hp_v,
            hp_v_expected,
            separating_element,
            ksat,
        })
    }

    /// Corner bound for Hilbert polynomial stabilization:
    /// `Σdᵢ + Σd'ᵢ + 8`.
    pub fn hilbert_bound(&self) -> i64 {
        self.twists.iter().map(|t| t.first + t.second).sum::<i64>() + 8
    }
}

pub fn theorem_check(gens: &[BiPoly]) -> Result<TheoremReport> {
    KoszulData::build(gens)?.theorem_check()
}
