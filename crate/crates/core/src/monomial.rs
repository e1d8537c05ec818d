//! Monomials in `s, u, t, v` (plus one hidden auxiliary variable used for
//! elimination), bidegrees and the fixed monomial order.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

/// The four ring variables. `s, u` have bidegree (1,0) and `t, v` have (0,1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    S = 0,
    U = 1,
    T = 2,
    V = 3,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::S, Var::U, Var::T, Var::V];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> char {
        ['s', 'u', 't', 'v'][self as usize]
    }

    pub fn from_char(c: char) -> Option<Var> {
        match c {
            's' => Some(Var::S),
            'u' => Some(Var::U),
            't' => Some(Var::T),
            'v' => Some(Var::V),
            _ => None,
        }
    }

    /// `true` for `s, u` (first P¹ factor).
    pub fn is_first_factor(self) -> bool {
        matches!(self, Var::S | Var::U)
    }
}

const AUX: usize = 4;

/// A bidegree `(first, second)`. Negative entries occur for twists.
///
/// Only the componentwise partial order is provided (see [`BiDegree::le`]);
/// there is deliberately no `Ord` impl.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct BiDegree {
    pub first: i64,
    pub second: i64,
}

impl BiDegree {
    pub const fn new(first: i64, second: i64) -> Self {
        BiDegree { first, second }
    }

    pub fn le(&self, other: &BiDegree) -> bool {
        self.first <= other.first && self.second <= other.second
    }

    pub fn is_nonnegative(&self) -> bool {
        self.first >= 0 && self.second >= 0
    }
}

impl Add for BiDegree {
    type Output = BiDegree;
    fn add(self, o: BiDegree) -> BiDegree {
        BiDegree::new(self.first + o.first, self.second + o.second)
    }
}

impl Sub for BiDegree {
    type Output = BiDegree;
    fn sub(self, o: BiDegree) -> BiDegree {
        BiDegree::new(self.first - o.first, self.second - o.second)
    }
}

impl Neg for BiDegree {
    type Output = BiDegree;
    fn neg(self) -> BiDegree {
        BiDegree::new(-self.first, -self.second)
    }
}

impl fmt::Display for BiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.first, self.second)
    }
}

/// Supported monomial orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MonomialOrder {
    /// Degree reverse lexicographic with `s > u > t > v`.
    #[default]
    DegRevLex,
}

impl MonomialOrder {
    pub fn compare(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::DegRevLex => a.cmp(b),
        }
    }
}

/// Exponent vector `(e_s, e_u, e_t, e_v)` plus the auxiliary exponent.
///
/// `Ord` is the crate's single term order: the auxiliary exponent is compared
/// first (block elimination order), then degrevlex on `s > u > t > v`. On
/// monomials free of the auxiliary variable this is plain degrevlex.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u16; 5],
}

impl Monomial {
    pub const ONE: Monomial = Monomial { exps: [0; 5] };

    pub fn new(s: u16, u: u16, t: u16, v: u16) -> Self {
        Monomial { exps: [s, u, t, v, 0] }
    }

    pub fn var(v: Var) -> Self {
        let mut m = Self::ONE;
        m.exps[v.index()] = 1;
        m
    }

    /// The auxiliary elimination variable `w`.
    pub fn aux_var() -> Self {
        let mut m = Self::ONE;
        m.exps[AUX] = 1;
        m
    }

    pub fn exp(&self, v: Var) -> u16 {
        self.exps[v.index()]
    }

    pub fn aux_exp(&self) -> u16 {
        self.exps[AUX]
    }

    pub fn exps(&self) -> [u16; 4] {
        [self.exps[0], self.exps[1], self.exps[2], self.exps[3]]
    }

    pub fn with_exp(mut self, v: Var, e: u16) -> Self {
        self.exps[v.index()] = e;
        self
    }

    pub(crate) fn with_aux_exp(mut self, e: u16) -> Self {
        self.exps[AUX] = e;
        self
    }

    pub fn is_one(&self) -> bool {
        self.exps == [0; 5]
    }

    /// Total degree in `s, u, t, v`.
    pub fn degree(&self) -> u32 {
        self.exps[..4].iter().map(|&e| e as u32).sum()
    }

    pub(crate) fn full_degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn bidegree(&self) -> BiDegree {
        BiDegree::new(
            (self.exps[0] + self.exps[1]) as i64,
            (self.exps[2] + self.exps[3]) as i64,
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exps = [0; 5];
        for (i, e) in exps.iter_mut().enumerate() {
            *e = self.exps[i].max(other.exps[i]);
        }
        Monomial { exps }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// `self / other`, if `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = [0; 5];
        for (i, e) in exps.iter_mut().enumerate() {
            *e = self.exps[i].checked_sub(other.exps[i])?;
        }
        Some(Monomial { exps })
    }

    pub fn pow(&self, k: u16) -> Monomial {
        let mut exps = self.exps;
        for e in exps.iter_mut() {
            *e *= k;
        }
        Monomial { exps }
    }

    /// All monomials in `s, u, t, v` of the given (non-negative) bidegree,
    /// in ascending order.
    pub fn of_bidegree(d: BiDegree) -> Vec<Monomial> {
        if !d.is_nonnegative() {
            return Vec::new();
        }
        let (a, b) = (d.first as u16, d.second as u16);
        let mut out = Vec::with_capacity((a as usize + 1) * (b as usize + 1));
        for i in 0..=a {
            for j in 0..=b {
                out.push(Monomial::new(i, a - i, j, b - j));
            }
        }
        out.sort();
        out
    }
}

impl std::ops::Mul for Monomial {
    type Output = Monomial;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, o: Monomial) -> Monomial {
        let mut exps = self.exps;
        for (e, x) in exps.iter_mut().zip(o.exps.iter()) {
            *e += x;
        }
        Monomial { exps }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.exps[AUX]
            .cmp(&other.exps[AUX])
            .then_with(|| self.degree().cmp(&other.degree()))
            .then_with(|| {
                // reverse lexicographic tie-break: smaller exponent in the
                // last differing variable wins
                for i in (0..4).rev() {
                    if self.exps[i] != other.exps[i] {
                        return other.exps[i].cmp(&self.exps[i]);
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        let names = ['s', 'u', 't', 'v', 'w'];
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", names[i])?;
            } else {
                write!(f, "{}^{}", names[i], e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
