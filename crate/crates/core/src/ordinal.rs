//! Ordinal arithmetic.
//!
//! [`Cnf`] is a countable ordinal below ε₀ in Cantor normal form (base ω).
//! It indexes points of ω₁, of U and of the ω₂ blocks.
//!
//! [`WellOrder`] is the value of a well-ordered term built from finite
//! chains, ω, ω₁ and ω₂. Its exponents are `ω₂·a + ω₁·b + c`, which is the
//! additive closure of the exponents of the generating atoms.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use rand::Rng;

/// `Σ ω^eᵢ·cᵢ` with strictly decreasing exponents and positive coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Cnf {
    terms: Vec<(Cnf, u64)>,
}

impl Cnf {
    pub fn zero() -> Cnf {
        Cnf { terms: Vec::new() }
    }

    pub fn nat(n: u64) -> Cnf {
        if n == 0 {
            Cnf::zero()
        } else {
            Cnf {
                terms: alloc::vec![(Cnf::zero(), n)],
            }
        }
    }

    pub fn one() -> Cnf {
        Cnf::nat(1)
    }

    pub fn omega() -> Cnf {
        Cnf::omega_pow(Cnf::one())
    }

    /// `ω^e`.
    pub fn omega_pow(e: Cnf) -> Cnf {
        Cnf {
            terms: alloc::vec![(e, 1)],
        }
    }

    /// Builds from `(exponent, coefficient)` pairs; panics unless the
    /// exponents strictly decrease and coefficients are positive.
    pub fn from_terms(terms: Vec<(Cnf, u64)>) -> Cnf {
        for w in terms.windows(2) {
            assert!(w[0].0 > w[1].0, "exponents must strictly decrease");
        }
        assert!(
            terms.iter().all(|t| t.1 > 0),
            "coefficients must be positive"
        );
        Cnf { terms }
    }

    pub fn terms(&self) -> &[(Cnf, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_nat(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(e, c)] if e.is_zero() => Some(*c),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.as_nat().is_some()
    }

    /// Coefficient of `ω⁰`.
    pub fn finite_part(&self) -> u64 {
        match self.terms.last() {
            Some((e, c)) if e.is_zero() => *c,
            _ => 0,
        }
    }

    pub fn is_successor(&self) -> bool {
        self.finite_part() > 0
    }

    pub fn is_limit(&self) -> bool {
        !self.is_zero() && !self.is_successor()
    }

    pub fn succ(&self) -> Cnf {
        self.add(&Cnf::one())
    }

    pub fn pred(&self) -> Option<Cnf> {
        if !self.is_successor() {
            return None;
        }
        let mut terms = self.terms.clone();
        let last = terms.last_mut().expect("successor is nonzero");
        last.1 -= 1;
        if last.1 == 0 {
            terms.pop();
        }
        Some(Cnf { terms })
    }

    pub fn add(&self, rhs: &Cnf) -> Cnf {
        let Some((lead, lead_coef)) = rhs.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<(Cnf, u64)> = Vec::new();
        let mut carry = 0;
        for (e, c) in &self.terms {
            match e.cmp(lead) {
                Ordering::Greater => terms.push((e.clone(), *c)),
                Ordering::Equal => carry = *c,
                Ordering::Less => break,
            }
        }
        terms.push((lead.clone(), lead_coef + carry));
        terms.extend(rhs.terms[1..].iter().cloned());
        Cnf { terms }
    }

    pub fn mul(&self, rhs: &Cnf) -> Cnf {
        if self.is_zero() || rhs.is_zero() {
            return Cnf::zero();
        }
        let (lead, lead_coef) = &self.terms[0];
        let mut out = Cnf::zero();
        for (f, d) in &rhs.terms {
            let piece = if f.is_zero() {
                let mut terms = self.terms.clone();
                terms[0].1 = lead_coef * d;
                Cnf { terms }
            } else {
                Cnf {
                    terms: alloc::vec![(lead.add(f), *d)],
                }
            };
            out = out.add(&piece);
        }
        out
    }

    /// The `γ` with `self + γ = rhs`, if `self ≤ rhs`.
    pub fn left_sub(&self, rhs: &Cnf) -> Option<Cnf> {
        if self > rhs {
            return None;
        }
        let mut i = 0;
        loop {
            let (Some(a), Some(b)) = (self.terms.get(i), rhs.terms.get(i)) else {
                return Some(Cnf {
                    terms: rhs.terms[i..].to_vec(),
                });
            };
            if a.0 < b.0 {
                return Some(Cnf {
                    terms: rhs.terms[i..].to_vec(),
                });
            }
            // a.0 == b.0 because self <= rhs
            if a.1 < b.1 {
                let mut terms = alloc::vec![(b.0.clone(), b.1 - a.1)];
                terms.extend(rhs.terms[i + 1..].iter().cloned());
                return Some(Cnf { terms });
            }
            i += 1;
        }
    }

    /// Splits `self = ω·q + n` with `n` finite and returns `q`.
    pub fn div_omega(&self) -> Cnf {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| !e.is_zero())
            .map(|(e, c)| {
                let shifted = Cnf::one().left_sub(e).expect("exponent is at least 1");
                (shifted, *c)
            })
            .collect();
        Cnf { terms }
    }

    /// A small random ordinal below ω^ω, biased towards finite values.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Cnf {
        match rng.random_range(0..10u32) {
            0..=3 => Cnf::nat(rng.random_range(0..12)),
            4..=6 => Cnf::omega()
                .mul(&Cnf::nat(rng.random_range(1..4)))
                .add(&Cnf::nat(rng.random_range(0..6))),
            7..=8 => {
                let hi = Cnf::omega_pow(Cnf::nat(2)).mul(&Cnf::nat(rng.random_range(1..3)));
                hi.add(&Cnf::omega().mul(&Cnf::nat(rng.random_range(0..3))))
                    .add(&Cnf::nat(rng.random_range(0..4)))
            }
            _ => Cnf::omega_pow(Cnf::omega()).add(&Cnf::nat(rng.random_range(0..3))),
        }
    }
}

impl Ord for Cnf {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let ord = a.0.cmp(&b.0).then(a.1.cmp(&b.1));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Cnf {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Cnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if e.is_zero() {
                write!(f, "{c}")?;
                continue;
            }
            match e.as_nat() {
                Some(1) => write!(f, "w")?,
                Some(n) => write!(f, "w^{n}")?,
                None => write!(f, "w^({e})")?,
            }
            if *c > 1 {
                write!(f, "*{c}")?;
            }
        }
        Ok(())
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for Cnf {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Exponent `ω₂·w2 + ω₁·w1 + fin`. The derived order is the ordinal order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Exponent {
    pub w2: u32,
    pub w1: u32,
    pub fin: u32,
}

impl Exponent {
    pub const ZERO: Exponent = Exponent {
        w2: 0,
        w1: 0,
        fin: 0,
    };
    pub const OMEGA: Exponent = Exponent {
        w2: 0,
        w1: 0,
        fin: 1,
    };
    pub const OMEGA1: Exponent = Exponent {
        w2: 0,
        w1: 1,
        fin: 0,
    };
    pub const OMEGA2: Exponent = Exponent {
        w2: 1,
        w1: 0,
        fin: 0,
    };

    pub fn is_zero(self) -> bool {
        self == Exponent::ZERO
    }

    pub fn checked_add(self, rhs: Exponent) -> Option<Exponent> {
        Some(if rhs.w2 > 0 {
            Exponent {
                w2: self.w2.checked_add(rhs.w2)?,
                ..rhs
            }
        } else if rhs.w1 > 0 {
            Exponent {
                w2: self.w2,
                w1: self.w1.checked_add(rhs.w1)?,
                fin: rhs.fin,
            }
        } else {
            Exponent {
                fin: self.fin.checked_add(rhs.fin)?,
                ..self
            }
        })
    }

    /// The `e'` with `ω₁ + e' = self`, for `self ≥ ω₁`.
    fn after_omega1(self) -> Exponent {
        if self.w2 > 0 {
            self
        } else {
            Exponent {
                w1: self.w1 - 1,
                ..self
            }
        }
    }

    /// The `e'` with `1 + e' = self`, for `self ≥ 1`.
    fn after_one(self) -> Exponent {
        if self.w2 > 0 || self.w1 > 0 {
            self
        } else {
            Exponent {
                fin: self.fin - 1,
                ..self
            }
        }
    }
}

/// A well-order value `Σ ω^eᵢ·cᵢ` with exponents of shape [`Exponent`].
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct WellOrder {
    terms: Vec<(Exponent, u64)>,
}

impl WellOrder {
    pub fn zero() -> WellOrder {
        WellOrder { terms: Vec::new() }
    }

    pub fn nat(n: u64) -> WellOrder {
        WellOrder::monomial(Exponent::ZERO, n)
    }

    pub fn monomial(e: Exponent, c: u64) -> WellOrder {
        if c == 0 {
            WellOrder::zero()
        } else {
            WellOrder {
                terms: alloc::vec![(e, c)],
            }
        }
    }

    pub fn omega() -> WellOrder {
        WellOrder::monomial(Exponent::OMEGA, 1)
    }

    pub fn omega1() -> WellOrder {
        WellOrder::monomial(Exponent::OMEGA1, 1)
    }

    pub fn omega2() -> WellOrder {
        WellOrder::monomial(Exponent::OMEGA2, 1)
    }

    pub fn terms(&self) -> &[(Exponent, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn finite_part(&self) -> u64 {
        match self.terms.last() {
            Some((e, c)) if e.is_zero() => *c,
            _ => 0,
        }
    }

    pub fn checked_add(&self, rhs: &WellOrder) -> Option<WellOrder> {
        let Some((lead, lead_coef)) = rhs.terms.first() else {
            return Some(self.clone());
        };
        let mut terms = Vec::new();
        let mut carry = 0u64;
        for (e, c) in &self.terms {
            match e.cmp(lead) {
                Ordering::Greater => terms.push((*e, *c)),
                Ordering::Equal => carry = *c,
                Ordering::Less => break,
            }
        }
        terms.push((*lead, lead_coef.checked_add(carry)?));
        terms.extend_from_slice(&rhs.terms[1..]);
        Some(WellOrder { terms })
    }

    /// Ordinal product `self · rhs` (rhs copies of self).
    pub fn checked_mul(&self, rhs: &WellOrder) -> Option<WellOrder> {
        if self.is_zero() || rhs.is_zero() {
            return Some(WellOrder::zero());
        }
        let (lead, lead_coef) = self.terms[0];
        let mut out = WellOrder::zero();
        for &(f, d) in &rhs.terms {
            let piece = if f.is_zero() {
                let mut terms = self.terms.clone();
                terms[0].1 = lead_coef.checked_mul(d)?;
                WellOrder { terms }
            } else {
                WellOrder::monomial(lead.checked_add(f)?, d)
            };
            out = out.checked_add(&piece)?;
        }
        Some(out)
    }

    /// Writes `self = ω₁·δ + ρ` with `ρ < ω₁` and returns `(δ, ρ)`.
    pub fn split_omega1(&self) -> (WellOrder, WellOrder) {
        let (high, low): (Vec<_>, Vec<_>) =
            self.terms.iter().partition(|(e, _)| *e >= Exponent::OMEGA1);
        let delta = high
            .into_iter()
            .map(|(e, c)| (e.after_omega1(), c))
            .collect();
        (WellOrder { terms: delta }, WellOrder { terms: low })
    }

    /// Writes `self = ω·δ + n` with `n` finite and returns `(δ, n)`.
    pub fn split_omega(&self) -> (WellOrder, u64) {
        let delta = self
            .terms
            .iter()
            .filter(|(e, _)| !e.is_zero())
            .map(|&(e, c)| (e.after_one(), c))
            .collect();
        (WellOrder { terms: delta }, self.finite_part())
    }

    /// `None` if the ordinal is uncountable or its exponents are not finite.
    pub fn to_cnf(&self) -> Option<Cnf> {
        let mut terms = Vec::new();
        for &(e, c) in &self.terms {
            if e.w1 > 0 || e.w2 > 0 {
                return None;
            }
            terms.push((Cnf::nat(e.fin as u64), c));
        }
        Some(Cnf { terms })
    }

    /// `None` unless every exponent of `cnf` is finite.
    pub fn from_cnf(cnf: &Cnf) -> Option<WellOrder> {
        let mut terms = Vec::new();
        for (e, c) in cnf.terms() {
            let fin = u32::try_from(e.as_nat()?).ok()?;
            terms.push((Exponent { w2: 0, w1: 0, fin }, *c));
        }
        Some(WellOrder { terms })
    }
}

impl Ord for WellOrder {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let ord = a.0.cmp(&b.0).then(a.1.cmp(&b.1));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for WellOrder {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<alloc::string::String> = Vec::new();
        for (n, name) in [(self.w2, "w2"), (self.w1, "w1")] {
            match n {
                0 => {}
                1 => parts.push(name.into()),
                n => parts.push(alloc::format!("{name}*{n}")),
            }
        }
        if self.fin > 0 || parts.is_empty() {
            parts.push(alloc::format!("{}", self.fin));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Display for WellOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if e.is_zero() {
                write!(f, "{c}")?;
            } else {
                write!(f, "w^({e})*{c}")?;
            }
        }
        Ok(())
    }
}
