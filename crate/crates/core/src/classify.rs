//! Structural attributes of terms and the right-identity decision.

use core::fmt;

use crate::condense::cc;
use crate::rules::{atom_row, Atom};
use crate::term::{normalize, OrderTerm};
use crate::Result;

/// Which sets count as small: finite sets (`~F`) or countable sets (`~ω`).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize),
    serde(rename_all = "lowercase")
)]
pub enum Level {
    Finite,
    Countable,
}

impl Level {
    pub const BOTH: [Level; 2] = [Level::Finite, Level::Countable];

    pub fn is_small(self, card: CardClass) -> bool {
        match self {
            Level::Finite => matches!(card, CardClass::Fin(_)),
            Level::Countable => card <= CardClass::Aleph0,
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Finite => "finite",
            Level::Countable => "countable",
        })
    }
}

/// Cardinality, exact when finite.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum CardClass {
    Fin(u64),
    Aleph0,
    Aleph1,
    Aleph2Plus,
}

impl core::ops::Add for CardClass {
    type Output = CardClass;

    fn add(self, rhs: CardClass) -> CardClass {
        match (self, rhs) {
            (CardClass::Fin(a), CardClass::Fin(b)) => CardClass::Fin(a.saturating_add(b)),
            (a, b) => a.max(b),
        }
    }
}

impl core::ops::Mul for CardClass {
    type Output = CardClass;

    fn mul(self, rhs: CardClass) -> CardClass {
        match (self, rhs) {
            (CardClass::Fin(0), _) | (_, CardClass::Fin(0)) => CardClass::Fin(0),
            (CardClass::Fin(a), CardClass::Fin(b)) => CardClass::Fin(a.saturating_mul(b)),
            (a, b) => a.max(b),
        }
    }
}

impl fmt::Display for CardClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CardClass::Fin(n) => write!(f, "FIN({n})"),
            CardClass::Aleph0 => f.write_str("ALEPH0"),
            CardClass::Aleph1 => f.write_str("ALEPH1"),
            CardClass::Aleph2Plus => f.write_str("ALEPH2PLUS"),
        }
    }
}

/// Cofinality or coinitiality. `Zero` is used for the empty order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Cofinality {
    Zero,
    One,
    Omega,
    Omega1,
    Omega2,
}

impl fmt::Display for Cofinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Cofinality::Zero => "0",
            Cofinality::One => "1",
            Cofinality::Omega => "w",
            Cofinality::Omega1 => "w1",
            Cofinality::Omega2 => "w2",
        })
    }
}

#[cfg(feature = "serde")]
macro_rules! serialize_display {
    ($($t:ty),*) => {$(
        impl serde::Serialize for $t {
            fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }
    )*};
}

#[cfg(feature = "serde")]
serialize_display!(CardClass, Cofinality);

/// A value for each level.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct PerLevel<T> {
    pub finite: T,
    pub countable: T,
}

impl<T: Copy> PerLevel<T> {
    pub fn get(&self, level: Level) -> T {
        match level {
            Level::Finite => self.finite,
            Level::Countable => self.countable,
        }
    }

    fn from_fn(mut f: impl FnMut(Level) -> T) -> PerLevel<T> {
        PerLevel {
            finite: f(Level::Finite),
            countable: f(Level::Countable),
        }
    }
}

/// Attributes that follow from the term's structure alone.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) struct Shape {
    pub card: CardClass,
    pub cofin: Cofinality,
    pub coin: Cofinality,
    pub has_first: bool,
    pub has_last: bool,
    pub small_head: PerLevel<bool>,
    pub small_tail: PerLevel<bool>,
}

impl Shape {
    fn swapped(self) -> Shape {
        Shape {
            cofin: self.coin,
            coin: self.cofin,
            has_first: self.has_last,
            has_last: self.has_first,
            small_head: self.small_tail,
            small_tail: self.small_head,
            ..self
        }
    }
}

pub(crate) fn shape(t: &OrderTerm) -> Shape {
    if let Some(n) = t.finite_len() {
        let nonempty = n > 0;
        let end = if nonempty {
            Cofinality::One
        } else {
            Cofinality::Zero
        };
        return Shape {
            card: CardClass::Fin(n),
            cofin: end,
            coin: end,
            has_first: nonempty,
            has_last: nonempty,
            small_head: PerLevel::from_fn(|_| nonempty),
            small_tail: PerLevel::from_fn(|_| nonempty),
        };
    }
    if let Some(atom) = Atom::of(t) {
        let f = atom_row(atom, Level::Finite);
        let c = atom_row(atom, Level::Countable);
        return Shape {
            card: f.card,
            cofin: f.cofin,
            coin: f.coin,
            has_first: f.has_first,
            has_last: f.has_last,
            small_head: PerLevel {
                finite: f.small_head,
                countable: c.small_head,
            },
            small_tail: PerLevel {
                finite: f.small_tail,
                countable: c.small_tail,
            },
        };
    }
    match t {
        OrderTerm::Sum(parts) => {
            let shapes: alloc::vec::Vec<Shape> =
                parts.iter().filter(|p| !p.is_empty()).map(shape).collect();
            let (first, last) = (shapes[0], shapes[shapes.len() - 1]);
            Shape {
                card: shapes.iter().fold(CardClass::Fin(0), |acc, s| acc + s.card),
                cofin: last.cofin,
                coin: first.coin,
                has_first: first.has_first,
                has_last: last.has_last,
                small_head: first.small_head,
                small_tail: last.small_tail,
            }
        }
        OrderTerm::LexProd(a, b) => {
            let (a, b) = (shape(a), shape(b));
            let small_b = PerLevel::from_fn(|l| l.is_small(b.card));
            Shape {
                card: a.card * b.card,
                cofin: if a.has_last { b.cofin } else { a.cofin },
                coin: if a.has_first { b.coin } else { a.coin },
                has_first: a.has_first && b.has_first,
                has_last: a.has_last && b.has_last,
                small_head: PerLevel::from_fn(|l| {
                    if a.has_first {
                        b.small_head.get(l)
                    } else {
                        a.small_head.get(l) && small_b.get(l)
                    }
                }),
                small_tail: PerLevel::from_fn(|l| {
                    if a.has_last {
                        b.small_tail.get(l)
                    } else {
                        a.small_tail.get(l) && small_b.get(l)
                    }
                }),
            }
        }
        OrderTerm::Rev(x) => shape(x).swapped(),
        _ => unreachable!("atoms and finite terms are handled above"),
    }
}

/// Per-term classification.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize),
    serde(rename_all = "camelCase")
)]
pub struct Profile {
    pub card: CardClass,
    pub cofin: Cofinality,
    pub coin: Cofinality,
    pub has_first: bool,
    pub has_last: bool,
    pub small_head: PerLevel<bool>,
    pub small_tail: PerLevel<bool>,
    pub condenses_to_one: PerLevel<bool>,
    pub right_identity: PerLevel<bool>,
}

impl Profile {
    /// The profile of the reversed order.
    pub fn reversed(&self) -> Profile {
        Profile {
            cofin: self.coin,
            coin: self.cofin,
            has_first: self.has_last,
            has_last: self.has_first,
            small_head: self.small_tail,
            small_tail: self.small_head,
            ..*self
        }
    }
}

/// Computes the profile of `t` at both levels.
pub fn profile(t: &OrderTerm) -> Result<Profile> {
    let t = normalize(t);
    let s = shape(&t);
    let mut condenses_to_one = PerLevel::default();
    for level in Level::BOTH {
        let one = cc(&t, level)?.quotient == OrderTerm::Single;
        match level {
            Level::Finite => condenses_to_one.finite = one,
            Level::Countable => condenses_to_one.countable = one,
        }
    }
    let right_identity = PerLevel::from_fn(|l| condenses_to_one.get(l) && !l.is_small(s.card));
    Ok(Profile {
        card: s.card,
        cofin: s.cofin,
        coin: s.coin,
        has_first: s.has_first,
        has_last: s.has_last,
        small_head: s.small_head,
        small_tail: s.small_tail,
        condenses_to_one,
        right_identity,
    })
}

/// Three independently evaluated characterizations of right identities for
/// the countable condensation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize),
    serde(rename_all = "camelCase")
)]
pub struct ConsistencyReport {
    /// Condenses to 1 and has cofinality or coinitiality ω₁.
    pub cofinality_condition: bool,
    /// Condenses to 1 and lacks a countable tail or a countable head.
    pub tail_condition: bool,
    /// Condenses to 1 and is uncountable.
    pub cardinality_condition: bool,
    pub consistent: bool,
}

pub fn check_tfae(t: &OrderTerm) -> Result<ConsistencyReport> {
    let p = profile(t)?;
    let one = p.condenses_to_one.countable;
    let cofinality_condition =
        one && (p.cofin == Cofinality::Omega1 || p.coin == Cofinality::Omega1);
    let tail_condition = one && (!p.small_tail.countable || !p.small_head.countable);
    let cardinality_condition = one && p.card > CardClass::Aleph0;
    Ok(ConsistencyReport {
        cofinality_condition,
        tail_condition,
        cardinality_condition,
        consistent: cofinality_condition == tail_condition
            && tail_condition == cardinality_condition,
    })
}

#[cfg(test)]
fn reversed_shape(t: &OrderTerm) -> Shape {
    shape(&crate::term::mirror(t)).swapped()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::{fin, lex, sum};
    use OrderTerm::*;

    #[test]
    fn omega1_profile() {
        let p = profile(&Omega1).unwrap();
        assert_eq!(p.card, CardClass::Aleph1);
        assert_eq!(p.cofin, Cofinality::Omega1);
        assert!(p.small_head.countable && !p.small_tail.countable);
        assert!(p.condenses_to_one.countable && p.right_identity.countable);
    }

    #[test]
    fn rationals_and_successor() {
        let p = profile(&RatOrd).unwrap();
        assert!(p.condenses_to_one.countable && !p.right_identity.countable);
        let p = profile(&sum(alloc::vec![Omega1, Single])).unwrap();
        assert!(!p.condenses_to_one.countable);
    }

    #[test]
    fn tfae_examples() {
        for (t, expect) in [
            (ULine, true),
            (RatOrd, false),
            (sum(alloc::vec![Omega1, Single]), false),
        ] {
            let r = check_tfae(&t).unwrap();
            assert!(r.consistent);
            assert_eq!(r.cardinality_condition, expect);
        }
    }

    #[test]
    fn product_shapes() {
        // the last copy of 2 is a finite tail
        let s = shape(&lex(Omega1Rev, fin(2)));
        assert!(s.has_last && s.small_tail.countable && s.small_tail.finite);
        // ω copies of ω₁ has no last element and uncountable tails
        let s = shape(&lex(NatOrd, Omega1));
        assert_eq!(s.cofin, Cofinality::Omega);
        assert!(!s.small_tail.countable);
        for t in [
            lex(NatOrd, Omega1),
            sum(alloc::vec![ULine, Omega1Rev]),
            fin(3),
        ] {
            assert_eq!(reversed_shape(&t), shape(&t));
        }
    }
}
