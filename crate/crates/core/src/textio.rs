//! Text formats: polynomials, ideal files, syzygy vectors, points, and the
//! JSON analysis report.
//!
//! Polynomial grammar (whitespace-insensitive):
//!
//! ```text
//! poly   := sign? term (('+' | '-') term)*
//! term   := coeff? factor*          (at least one of the two)
//! factor := var ('^' nat)?          ('*' optional between items)
//! coeff  := int | int '/' nat
//! var    := 's' | 'u' | 't' | 'v'
//! ```
//!
//! Ideal files hold one generator per line as `name = poly`, optionally
//! followed by `@ (a,b)` to declare its bidegree. `#` starts a comment.

use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{BasePointLocus, LocalReport, PointP1xP1};
use crate::hilbert::HilbertPoly2;
use crate::koszul::{KoszulVerdict, SliceComparison, TheoremReport};
use crate::module::{ModuleElement, SubmodulePresentation};
use crate::monomial::{BiDegree, Monomial, Var};
use crate::{BiPoly, Q};

pub const SCHEMA_VERSION: u32 = 1;

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
    base: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str, base: usize) -> Self {
        Cursor {
            src: text.as_bytes(),
            pos: 0,
            base,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            offset: self.base + self.pos,
            message: message.into(),
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn coeff(&mut self) -> Result<Q> {
        let num = self.digits()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let at = self.pos;
            let den = self.digits()?;
            if den.is_zero() {
                self.pos = at;
                return Err(self.err("zero denominator"));
            }
            return Ok(Q::new(num, den));
        }
        Ok(Q::from_integer(num))
    }

    fn factor(&mut self) -> Result<Monomial> {
        self.skip_ws();
        let at = self.pos;
        let c = self.src[self.pos] as char;
        let Some(var) = Var::from_char(c) else {
            return Err(Error::UnknownVariable {
                offset: self.base + at,
                name: c.to_string(),
            });
        };
        self.pos += 1;
        let mut e: u16 = 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let n = self.digits()?;
            e = u16::try_from(n).map_err(|_| self.err("exponent too large"))?;
        }
        Ok(Monomial::ONE.with_exp(var, e))
    }

    fn term(&mut self) -> Result<(Monomial, Q)> {
        let mut coeff = Q::one();
        let mut mon = Monomial::ONE;
        let mut seen = false;
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            coeff = self.coeff()?;
            seen = true;
        }
        loop {
            match self.peek() {
                Some(b'*') if seen => {
                    self.pos += 1;
                    match self.peek() {
                        Some(c) if c.is_ascii_alphabetic() => {}
                        _ => return Err(self.err("expected a variable after '*'")),
                    }
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    mon = mon * self.factor()?;
                    seen = true;
                }
                _ => break,
            }
        }
        if !seen {
            return Err(self.err("expected a term"));
        }
        Ok((mon, coeff))
    }

    fn poly(&mut self) -> Result<BiPoly> {
        let mut terms = Vec::new();
        let mut sign = Q::one();
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                sign = -sign;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let (m, c) = self.term()?;
            terms.push((m, c * sign.clone()));
            match self.peek() {
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    sign = Q::one();
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -Q::one();
                }
                Some(_) => return Err(self.err("expected '+', '-' or end of polynomial")),
            }
        }
        Ok(BiPoly::from_terms(terms))
    }
}

fn parse_poly_at(text: &str, base: usize) -> Result<BiPoly> {
    let mut c = Cursor::new(text, base);
    c.poly()
}

/// Parses a polynomial in `s, u, t, v` with rational coefficients.
pub fn parse_poly(text: &str) -> Result<BiPoly> {
    parse_poly_at(text, 0)
}

/// Canonical text of a polynomial: terms in descending monomial order.
pub fn serialize_poly(p: &BiPoly) -> String {
    p.to_string()
}

fn parse_rational(text: &str, base: usize) -> Result<Q> {
    let t = text.trim();
    let lead = text.len() - text.trim_start().len();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let mut c = Cursor::new(body, base + lead + neg as usize);
    let q = c.coeff()?;
    if c.peek().is_some() {
        return Err(c.err("trailing characters after number"));
    }
    Ok(if neg { -q } else { q })
}

/// Ideal generators as read from an ideal file.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealSpec {
    pub names: Vec<String>,
    pub generators: Vec<BiPoly>,
    pub declared_bidegrees: Vec<Option<BiDegree>>,
}

impl IdealSpec {
    /// Unnamed generators `f1, f2, ...`; each must be bihomogeneous.
    pub fn from_generators(generators: Vec<BiPoly>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::EmptyIdeal);
        }
        for g in &generators {
            g.bidegree()?;
        }
        Ok(IdealSpec {
            names: (1..=generators.len()).map(|i| format!("f{i}")).collect(),
            declared_bidegrees: vec![None; generators.len()],
            generators,
        })
    }

    pub fn bidegrees(&self) -> Vec<BiDegree> {
        self.generators
            .iter()
            .map(|g| g.bidegree().expect("checked on construction"))
            .collect()
    }
}

fn parse_bidegree_at(text: &str, base: usize) -> Result<BiDegree> {
    let t = text.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .unwrap_or(t);
    let parts: Vec<&str> = inner.split(',').collect();
    if parts.len() != 2 {
        return Err(Error::Syntax {
            offset: base,
            message: format!("expected a bidegree 'a,b', got '{t}'"),
        });
    }
    let num = |s: &str| -> Result<i64> {
        s.trim().parse().map_err(|_| Error::Syntax {
            offset: base,
            message: format!("bad integer '{}' in bidegree", s.trim()),
        })
    };
    Ok(BiDegree::new(num(parts[0])?, num(parts[1])?))
}

/// Parses `k,k'` or `(k,k')`.
pub fn parse_bidegree(text: &str) -> Result<BiDegree> {
    parse_bidegree_at(text, 0)
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses the contents of an ideal file.
pub fn parse_ideal(text: &str) -> Result<IdealSpec> {
    let mut names = Vec::new();
    let mut generators = Vec::new();
    let mut declared_bidegrees = Vec::new();
    let mut offset = 0;
    for raw in text.split_inclusive('\n') {
        let line_start = offset;
        offset += raw.len();
        let line = raw.split('#').next().unwrap().trim_end_matches(['\n', '\r']);
        if line.trim().is_empty() {
            continue;
        }
        let Some(eq) = line.find('=') else {
            return Err(Error::Syntax {
                offset: line_start,
                message: "expected 'name = polynomial'".into(),
            });
        };
        let name = line[..eq].trim();
        if !is_identifier(name) {
            return Err(Error::Syntax {
                offset: line_start,
                message: format!("bad generator name '{name}'"),
            });
        }
        let rest = &line[eq + 1..];
        let (poly_text, declared) = match rest.find('@') {
            Some(at) => (
                &rest[..at],
                Some(parse_bidegree_at(&rest[at + 1..], line_start + eq + 2 + at)?),
            ),
            None => (rest, None),
        };
        let poly = parse_poly_at(poly_text, line_start + eq + 1)?;
        let computed = poly.bidegree()?;
        if let Some(d) = declared {
            if d != computed {
                return Err(Error::BidegreeMismatch {
                    name: name.to_string(),
                    declared: d,
                    computed,
                });
            }
        }
        names.push(name.to_string());
        generators.push(poly);
        declared_bidegrees.push(declared);
    }
    if generators.is_empty() {
        return Err(Error::EmptyIdeal);
    }
    Ok(IdealSpec {
        names,
        generators,
        declared_bidegrees,
    })
}

pub fn parse_ideal_file(path: impl AsRef<Path>) -> Result<IdealSpec> {
    parse_ideal(&std::fs::read_to_string(path)?)
}

/// Ideal file text for `spec`; `parse_ideal` inverts it.
pub fn serialize_ideal(spec: &IdealSpec) -> String {
    let mut out = String::new();
    for ((name, g), d) in spec.names.iter().zip(&spec.generators).zip(&spec.declared_bidegrees) {
        out.push_str(&format!("{name} = {}", serialize_poly(g)));
        if let Some(d) = d {
            out.push_str(&format!(" @ ({},{})", d.first, d.second));
        }
        out.push('\n');
    }
    out
}

/// Parses `"p1, p2, p3"` into a vector of `⊕ R(-dᵢ, -d'ᵢ)`.
pub fn parse_syzygy(text: &str, twists: &[BiDegree]) -> Result<ModuleElement<Q>> {
    let mut comps = Vec::new();
    let mut offset = 0;
    for part in text.split(',') {
        comps.push(parse_poly_at(part, offset)?);
        offset += part.len() + 1;
    }
    if comps.len() != twists.len() {
        return Err(Error::Syntax {
            offset: text.len(),
            message: format!("expected {} entries, got {}", twists.len(), comps.len()),
        });
    }
    ModuleElement::new(comps, twists.to_vec())
}

pub fn serialize_vector(x: &ModuleElement<Q>) -> String {
    x.components
        .iter()
        .map(serialize_poly)
        .collect::<Vec<_>>()
        .join(", ")
}

/// Parses `s:u;t:v` (optionally parenthesized) with rational entries.
pub fn parse_point(text: &str) -> Result<PointP1xP1> {
    let t = text.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .unwrap_or(t);
    let bad = || Error::Syntax {
        offset: 0,
        message: format!("expected a point 's:u;t:v', got '{t}'"),
    };
    let (a, b) = inner.split_once(';').ok_or_else(bad)?;
    let (s, u) = a.split_once(':').ok_or_else(bad)?;
    let (tt, v) = b.split_once(':').ok_or_else(bad)?;
    let r = |x: &str| parse_rational(x, 0);
    PointP1xP1::new(r(s)?, r(u)?, r(tt)?, r(v)?).ok_or_else(|| Error::Syntax {
        offset: 0,
        message: "a coordinate pair is (0:0)".into(),
    })
}

// ---------------------------------------------------------------------------
// JSON report

/// `[["s","u"],["t","v"]]`
pub type PointJson = [[String; 2]; 2];

pub fn point_json(p: &PointP1xP1) -> PointJson {
    [
        [p.first[0].to_string(), p.first[1].to_string()],
        [p.second[0].to_string(), p.second[1].to_string()],
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorJson {
    pub name: String,
    pub poly: String,
    pub bidegree: [i64; 2],
}

#[derive(Clone, Debug, Serialize)]
pub struct IdealJson {
    pub generators: Vec<GeneratorJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalReportJson {
    pub point: PointJson,
    pub multiplicity: u64,
    pub tangent_dim: u64,
    pub conormal_dim: u64,
    pub curvilinear: bool,
    pub lci: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuleJson {
    pub slot_twists: Vec<[i64; 2]>,
    pub generators: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HilbertPolyJson {
    pub c00: i64,
    pub c10: i64,
    pub c01: i64,
    pub c11: i64,
    pub stabilization_corner: [i64; 2],
}

#[derive(Clone, Debug, Serialize)]
pub struct HilbertTableJson {
    pub module: String,
    /// Rows indexed by `k`, columns by `k'`, starting at 0.
    pub values: Vec<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<HilbertPolyJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SaturationJson {
    pub generators: Vec<String>,
    /// Least `k` with `m^k · g ⊆ I`, per generator.
    pub exponents: Vec<u32>,
    pub input_is_saturated: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictJson {
    pub syzygy: Vec<String>,
    pub module_bidegree: [i64; 2],
    pub in_range: bool,
    pub vanishes_at_base_points: bool,
    pub is_koszul: bool,
    /// Coefficients over the Koszul generators `K1, K2, K3`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SliceJson {
    pub at: [i64; 2],
    pub in_range: bool,
    pub dim_koszul: u64,
    pub dim_vanishing: u64,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremJson {
    pub ksat_equals_v: bool,
    pub lci_global: bool,
    pub biconditional_holds: bool,
    pub degree_of_z: u64,
    pub conormal_constant: u64,
    pub hp_ksat: HilbertPolyJson,
    pub hp_ksat_matches_formula: bool,
    pub hp_v: HilbertPolyJson,
    pub hp_v_matches_formula: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub separating_element: Option<Vec<String>>,
}

/// Analysis report. Sections that were not computed are omitted.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ideal: Option<IdealJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base_points: Option<Vec<PointJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub locus_complete: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub local_reports: Option<Vec<LocalReportJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_of_z: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conormal_constant: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lci_global: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hilbert: Option<Vec<HilbertTableJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub saturation: Option<SaturationJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub syzygies: Option<ModuleJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub koszul_verdicts: Option<Vec<VerdictJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slices: Option<Vec<SliceJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theorem: Option<TheoremJson>,
}

impl Default for Report {
    fn default() -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            ideal: None,
            base_points: None,
            locus_complete: None,
            local_reports: None,
            degree_of_z: None,
            conormal_constant: None,
            lci_global: None,
            hilbert: None,
            saturation: None,
            syzygies: None,
            koszul_verdicts: None,
            slices: None,
            theorem: None,
        }
    }
}

fn bd(d: BiDegree) -> [i64; 2] {
    [d.first, d.second]
}

pub fn hilbert_poly_json(p: &HilbertPoly2) -> HilbertPolyJson {
    HilbertPolyJson {
        c00: p.c00,
        c10: p.c10,
        c01: p.c01,
        c11: p.c11,
        stabilization_corner: bd(p.stabilization_corner),
    }
}

pub fn vector_json(x: &ModuleElement<Q>) -> Vec<String> {
    x.components.iter().map(serialize_poly).collect()
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_ideal(mut self, spec: &IdealSpec) -> Self {
        self.ideal = Some(IdealJson {
            generators: spec
                .names
                .iter()
                .zip(&spec.generators)
                .map(|(n, g)| GeneratorJson {
                    name: n.clone(),
                    poly: serialize_poly(g),
                    bidegree: bd(g.bidegree().unwrap_or_default()),
                })
                .collect(),
        });
        self
    }

    pub fn with_locus(mut self, locus: &BasePointLocus) -> Self {
        self.base_points = Some(locus.rational_points.iter().map(point_json).collect());
        self.locus_complete = Some(locus.complete);
        self
    }

    pub fn with_local_reports(mut self, reports: &[LocalReport]) -> Self {
        self.local_reports = Some(
            reports
                .iter()
                .map(|r| LocalReportJson {
                    point: point_json(&r.point),
                    multiplicity: r.multiplicity,
                    tangent_dim: r.tangent_dim,
                    conormal_dim: r.conormal_dim,
                    curvilinear: r.curvilinear,
                    lci: r.lci,
                })
                .collect(),
        );
        self
    }

    pub fn with_module(mut self, m: &SubmodulePresentation<Q>) -> Self {
        self.syzygies = Some(ModuleJson {
            slot_twists: m.ambient_twists.iter().map(|d| bd(*d)).collect(),
            generators: m.generators.iter().map(vector_json).collect(),
        });
        self
    }

    pub fn push_verdict(&mut self, v: &KoszulVerdict) {
        self.koszul_verdicts.get_or_insert_with(Vec::new).push(VerdictJson {
            syzygy: vector_json(&v.syzygy),
            module_bidegree: bd(v.module_bidegree),
            in_range: v.in_range,
            vanishes_at_base_points: v.vanishes_at_base_points,
            is_koszul: v.is_koszul,
            certificate: v
                .certificate
                .as_ref()
                .map(|c| c.iter().map(serialize_poly).collect()),
        });
    }

    pub fn push_slice(&mut self, s: &SliceComparison, in_range: bool) {
        self.slices.get_or_insert_with(Vec::new).push(SliceJson {
            at: bd(s.at),
            in_range,
            dim_koszul: s.dim_koszul,
            dim_vanishing: s.dim_vanishing,
            equal: s.equal,
        });
    }

    pub fn with_theorem(mut self, t: &TheoremReport) -> Self {
        self.theorem = Some(TheoremJson {
            ksat_equals_v: t.ksat_equals_v,
            lci_global: t.lci_global,
            biconditional_holds: t.biconditional_holds,
            degree_of_z: t.degree_of_z,
            conormal_constant: t.conormal_constant,
            hp_ksat: hilbert_poly_json(&t.hp_ksat),
            hp_ksat_matches_formula: t.hp_ksat_matches,
            hp_v: hilbert_poly_json(&t.hp_v),
            hp_v_matches_formula: t.hp_v_matches,
            separating_element: t.separating_element.as_ref().map(vector_json),
        });
        self
    }
}

/// Pretty JSON with a trailing newline. Key order follows the struct
/// declarations, so output is deterministic.
pub fn serialize_report(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report is serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let p = parse_poly("u^2*t*v").unwrap();
        assert_eq!(p, BiPoly::monomial(Monomial::new(0, 2, 1, 1)));
        assert!(parse_poly("0").unwrap().is_zero());
        let p = parse_poly("s^2t^2 + s u v^2 - s^2t^2").unwrap();
        assert_eq!(p, BiPoly::monomial(Monomial::new(1, 1, 0, 2)));
        let p = parse_poly("-2/3 s*t + 4").unwrap();
        assert_eq!(serialize_poly(&p), "-2/3*s*t + 4");
    }

    #[test]
    fn parse_errors_carry_offsets() {
        match parse_poly("s + x^2") {
            Err(Error::UnknownVariable { offset, name }) => {
                assert_eq!((offset, name.as_str()), (4, "x"));
            }
            other => panic!("unexpected {other:?}"),
        }
        match parse_poly("s^2 t 3") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 6),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_poly("s * * t"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("1/0 s"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly(""), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("s +"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn ideal_file_format() {
        let text = "# example\nf1 = s^2*v^2 @ (2,2)\nf2 = u^2 t^2   # inline\n\nf3 = s^2t^2\n";
        let spec = parse_ideal(text).unwrap();
        assert_eq!(spec.names, vec!["f1", "f2", "f3"]);
        assert_eq!(spec.bidegrees(), vec![BiDegree::new(2, 2); 3]);
        assert_eq!(spec.declared_bidegrees[0], Some(BiDegree::new(2, 2)));
        assert_eq!(parse_ideal(&serialize_ideal(&spec)).unwrap(), spec);

        assert!(matches!(parse_ideal("# nothing\n\n"), Err(Error::EmptyIdeal)));
        assert!(matches!(parse_ideal("f = s + t"), Err(Error::NotBihomogeneous(..))));
        assert!(matches!(
            parse_ideal("f = s*t @ (2,1)"),
            Err(Error::BidegreeMismatch { .. })
        ));
        match parse_ideal("f1 = s\nf2 = s + y\n") {
            Err(Error::UnknownVariable { offset, .. }) => assert_eq!(offset, 16),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn points_and_vectors() {
        let p = parse_point("0:1;0:1").unwrap();
        assert_eq!(point_json(&p), [["0", "1"], ["0", "1"]].map(|a| a.map(String::from)));
        let p = parse_point("(2:-4;3/2:0)").unwrap();
        assert_eq!(p.to_string(), "(-1/2:1;1:0)");
        assert!(parse_point("0:0;1:1").is_err());
        let tw = vec![BiDegree::new(2, 2); 3];
        let x = parse_syzygy("s^2t^2v, -s^2t v^2, s u v^3", &tw).unwrap();
        assert_eq!(x.bidegree().unwrap(), BiDegree::new(4, 5));
        assert_eq!(parse_syzygy(&serialize_vector(&x), &tw).unwrap(), x);
        assert!(parse_syzygy("s, t", &tw).is_err());
    }

    #[test]
    fn empty_report_is_a_skeleton() {
        let v: serde_json::Value = serde_json::from_str(&serialize_report(&Report::new())).unwrap();
        assert_eq!(v, serde_json::json!({ "schema_version": 1 }));
    }
}
