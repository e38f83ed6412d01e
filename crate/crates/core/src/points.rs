//! Concrete elements of terms.
//!
//! A [`PointCode`] names one element of a term's denotation. Codes follow
//! the term's shape: naturals for finite chains, ω and ω* (ω* counts down
//! from its last element), integers for ζ, rationals for η, countable
//! ordinals for ω₁ and ω₁* (again counted from the top for ω₁*), pairs
//! `(δ, ρ)` standing for `ω₁·δ + ρ` in ω₂, [`UPoint`]s for U, and part /
//! pair codes for sums and products.
//!
//! Interval cardinalities are computed directly from codes and are the
//! independent oracle for the condensation engine. Class indices map a
//! point to its condensation class inside a [`ClassFrame`].

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::{shape, CardClass, Level};
use crate::condense::cc;
use crate::ordinal::Cnf;
use crate::rational::Rational;
use crate::rules::{atom_row, Atom};
use crate::term::{lex, OrderTerm};
use crate::{Error, Result};

/// Blocks of U, left to right.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize),
    serde(rename_all = "UPPERCASE")
)]
pub enum Side {
    Neg,
    Mid,
    Pos,
}

/// A spine point `±u_α` or an element of the rational block next to it.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum Slot {
    Spine,
    Rat(Rational),
}

/// An element of U.
///
/// On the positive side `u_α < ℚ(α) < u_{α+1}`; the negative side is the
/// mirror image, `-u_{α+1} < ℚ(-α) < -u_α`; the middle block `ℚ(mid)` sits
/// between `-u_0` and `u_0` and has index 0 and no spine point.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct UPoint {
    pub side: Side,
    pub index: Cnf,
    pub slot: Slot,
}

impl UPoint {
    pub fn spine(side: Side, index: Cnf) -> UPoint {
        UPoint {
            side,
            index,
            slot: Slot::Spine,
        }
    }

    pub fn rational(side: Side, index: Cnf, q: Rational) -> UPoint {
        UPoint {
            side,
            index,
            slot: Slot::Rat(q),
        }
    }

    pub fn is_valid(&self) -> bool {
        self.side != Side::Mid || (self.index.is_zero() && matches!(self.slot, Slot::Rat(_)))
    }
}

impl Ord for UPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        let slot_cmp = |a: &Slot, b: &Slot| match (a, b) {
            (Slot::Spine, Slot::Spine) => Ordering::Equal,
            (Slot::Spine, Slot::Rat(_)) => Ordering::Less,
            (Slot::Rat(_), Slot::Spine) => Ordering::Greater,
            (Slot::Rat(x), Slot::Rat(y)) => x.cmp(y),
        };
        self.side.cmp(&other.side).then_with(|| match self.side {
            Side::Pos | Side::Mid => self
                .index
                .cmp(&other.index)
                .then_with(|| slot_cmp(&self.slot, &other.slot)),
            Side::Neg => other.index.cmp(&self.index).then_with(|| {
                // rationals of ℚ(-α) lie left of -u_α
                match (&self.slot, &other.slot) {
                    (Slot::Rat(x), Slot::Rat(y)) => x.cmp(y),
                    (a, b) => slot_cmp(b, a),
                }
            }),
        })
    }
}

impl PartialOrd for UPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An element of a term; see the module documentation.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum PointCode {
    Unit,
    Nat(u64),
    Int(i64),
    Rat(Rational),
    Ord(Cnf),
    Ord2(Cnf, Cnf),
    U(UPoint),
    Part(usize, Box<PointCode>),
    Pair(Box<PointCode>, Box<PointCode>),
}

pub fn part(i: usize, p: PointCode) -> PointCode {
    PointCode::Part(i, Box::new(p))
}

pub fn pair(a: PointCode, b: PointCode) -> PointCode {
    PointCode::Pair(Box::new(a), Box::new(b))
}

fn invalid(t: &OrderTerm, p: &PointCode) -> Error {
    Error::InvalidCode(format!("{p:?} is not a point of {t}"))
}

/// Checks that `p` denotes an element of `t`.
pub fn validate(t: &OrderTerm, p: &PointCode) -> Result<()> {
    use OrderTerm as T;
    use PointCode as P;
    let ok = match (t, p) {
        (T::Single, P::Unit) => true,
        (T::FinChain(n), P::Nat(i)) => i < n,
        (T::NatOrd | T::NatOrdRev, P::Nat(_)) => true,
        (T::IntOrd, P::Int(_)) => true,
        (T::RatOrd, P::Rat(_)) => true,
        (T::Omega1 | T::Omega1Rev, P::Ord(_)) => true,
        (T::Omega2 | T::Omega2Rev, P::Ord2(..)) => true,
        (T::ULine, P::U(u)) => u.is_valid(),
        (T::Sum(parts), P::Part(i, x)) => {
            return match parts.get(*i) {
                Some(sub) => validate(sub, x),
                None => Err(invalid(t, p)),
            }
        }
        (T::LexProd(a, b), P::Pair(x, y)) => {
            validate(a, x)?;
            return validate(b, y);
        }
        (T::Rev(x), p) => return validate(x, p),
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(invalid(t, p))
    }
}

/// Compares two points of `t`.
pub fn compare_points(t: &OrderTerm, p: &PointCode, q: &PointCode) -> Result<Ordering> {
    validate(t, p)?;
    validate(t, q)?;
    Ok(cmp_valid(t, p, q))
}

fn cmp_valid(t: &OrderTerm, p: &PointCode, q: &PointCode) -> Ordering {
    use OrderTerm as T;
    use PointCode as P;
    match (t, p, q) {
        (T::NatOrdRev, P::Nat(a), P::Nat(b)) => b.cmp(a),
        (_, P::Nat(a), P::Nat(b)) => a.cmp(b),
        (_, P::Int(a), P::Int(b)) => a.cmp(b),
        (_, P::Rat(a), P::Rat(b)) => a.cmp(b),
        (T::Omega1Rev, P::Ord(a), P::Ord(b)) => b.cmp(a),
        (_, P::Ord(a), P::Ord(b)) => a.cmp(b),
        (T::Omega2Rev, P::Ord2(d1, r1), P::Ord2(d2, r2)) => (d2, r2).cmp(&(d1, r1)),
        (_, P::Ord2(d1, r1), P::Ord2(d2, r2)) => (d1, r1).cmp(&(d2, r2)),
        (_, P::U(a), P::U(b)) => a.cmp(b),
        (T::Sum(parts), P::Part(i, x), P::Part(j, y)) => {
            i.cmp(j).then_with(|| cmp_valid(&parts[*i], x, y))
        }
        (T::LexProd(a, b), P::Pair(x1, y1), P::Pair(x2, y2)) => {
            cmp_valid(a, x1, x2).then_with(|| cmp_valid(b, y1, y2))
        }
        (T::Rev(x), p, q) => cmp_valid(x, q, p),
        _ => Ordering::Equal,
    }
}

/// Number of elements of a closed ordinal interval `[α, α + γ]`.
fn ordinal_span(gamma: &Cnf) -> CardClass {
    match gamma.as_nat() {
        Some(n) => CardClass::Fin(n + 1),
        None => CardClass::Aleph0,
    }
}

/// Removes `k` elements from a cardinality known to be at least `k`.
fn minus(c: CardClass, k: u64) -> CardClass {
    match c {
        CardClass::Fin(n) => CardClass::Fin(n.saturating_sub(k)),
        c => c,
    }
}

/// Cardinality of `{x ∈ t : x ≤ p}`.
fn head(t: &OrderTerm, p: &PointCode) -> CardClass {
    use OrderTerm as T;
    use PointCode as P;
    match (t, p) {
        (T::Single, _) => CardClass::Fin(1),
        (T::FinChain(_) | T::NatOrd, P::Nat(i)) => CardClass::Fin(i + 1),
        (T::NatOrdRev | T::IntOrd | T::RatOrd, _) => CardClass::Aleph0,
        (T::Omega1, P::Ord(a)) => ordinal_span(a),
        (T::Omega1Rev | T::ULine, _) => CardClass::Aleph1,
        (T::Omega2, P::Ord2(d, r)) if d.is_zero() => ordinal_span(r),
        (T::Omega2, _) => CardClass::Aleph1,
        (T::Omega2Rev, _) => CardClass::Aleph2Plus,
        (T::Sum(parts), P::Part(i, x)) => parts[..*i]
            .iter()
            .fold(head(&parts[*i], x), |acc, s| acc + shape(s).card),
        (T::LexProd(a, b), P::Pair(x, y)) => {
            let below = minus(head(a, x), 1);
            below * shape(b).card + head(b, y)
        }
        (T::Rev(x), p) => tail(x, p),
        _ => unreachable!("validated code"),
    }
}

/// Cardinality of `{x ∈ t : x ≥ p}`.
fn tail(t: &OrderTerm, p: &PointCode) -> CardClass {
    use OrderTerm as T;
    use PointCode as P;
    match (t, p) {
        (T::Single, _) => CardClass::Fin(1),
        (T::FinChain(n), P::Nat(i)) => CardClass::Fin(n - i),
        (T::NatOrdRev, P::Nat(i)) => CardClass::Fin(i + 1),
        (T::NatOrd | T::IntOrd | T::RatOrd, _) => CardClass::Aleph0,
        (T::Omega1Rev, P::Ord(a)) => ordinal_span(a),
        (T::Omega1 | T::ULine, _) => CardClass::Aleph1,
        (T::Omega2Rev, P::Ord2(d, r)) if d.is_zero() => ordinal_span(r),
        (T::Omega2Rev, _) => CardClass::Aleph1,
        (T::Omega2, _) => CardClass::Aleph2Plus,
        (T::Sum(parts), P::Part(i, x)) => parts[i + 1..]
            .iter()
            .fold(tail(&parts[*i], x), |acc, s| acc + shape(s).card),
        (T::LexProd(a, b), P::Pair(x, y)) => {
            let above = minus(tail(a, x), 1);
            tail(b, y) + above * shape(b).card
        }
        (T::Rev(x), p) => head(x, p),
        _ => unreachable!("validated code"),
    }
}

/// Cardinality of the closed interval `[p, q]`, for `p ≤ q`.
fn span(t: &OrderTerm, p: &PointCode, q: &PointCode) -> CardClass {
    use OrderTerm as T;
    use PointCode as P;
    if p == q {
        return CardClass::Fin(1);
    }
    match (t, p, q) {
        (T::FinChain(_) | T::NatOrd | T::NatOrdRev, P::Nat(a), P::Nat(b)) => {
            CardClass::Fin(a.abs_diff(*b) + 1)
        }
        (T::IntOrd, P::Int(a), P::Int(b)) => CardClass::Fin(a.abs_diff(*b) + 1),
        (T::RatOrd, _, _) => CardClass::Aleph0,
        (T::Omega1, P::Ord(a), P::Ord(b)) => ordinal_span(&a.left_sub(b).expect("p <= q")),
        (T::Omega1Rev, P::Ord(a), P::Ord(b)) => ordinal_span(&b.left_sub(a).expect("p <= q")),
        (T::Omega2, P::Ord2(d1, r1), P::Ord2(d2, r2)) if d1 == d2 => {
            ordinal_span(&r1.left_sub(r2).expect("p <= q"))
        }
        (T::Omega2Rev, P::Ord2(d1, r1), P::Ord2(d2, r2)) if d1 == d2 => {
            ordinal_span(&r2.left_sub(r1).expect("p <= q"))
        }
        (T::Omega2 | T::Omega2Rev, _, _) => CardClass::Aleph1,
        (T::ULine, _, _) => CardClass::Aleph0,
        (T::Sum(parts), P::Part(i, x), P::Part(j, y)) => {
            if i == j {
                return span(&parts[*i], x, y);
            }
            let between = parts[i + 1..*j]
                .iter()
                .fold(tail(&parts[*i], x), |acc, s| acc + shape(s).card);
            between + head(&parts[*j], y)
        }
        (T::LexProd(a, b), P::Pair(x1, y1), P::Pair(x2, y2)) => {
            if x1 == x2 {
                return span(b, y1, y2);
            }
            let between = minus(span(a, x1, x2), 2);
            tail(b, y1) + between * shape(b).card + head(b, y2)
        }
        (T::Rev(x), p, q) => span(x, q, p),
        _ => unreachable!("validated code"),
    }
}

/// Cardinality of the closed interval between `p` and `q` (in either order).
pub fn interval_class(t: &OrderTerm, p: &PointCode, q: &PointCode) -> Result<CardClass> {
    validate(t, p)?;
    validate(t, q)?;
    Ok(match cmp_valid(t, p, q) {
        Ordering::Greater => span(t, q, p),
        _ => span(t, p, q),
    })
}

/// The least element, if any.
pub fn first_point(t: &OrderTerm) -> Option<PointCode> {
    use OrderTerm as T;
    use PointCode as P;
    match t {
        T::Single => Some(P::Unit),
        T::FinChain(_) | T::NatOrd => Some(P::Nat(0)),
        T::Omega1 => Some(P::Ord(Cnf::zero())),
        T::Omega2 => Some(P::Ord2(Cnf::zero(), Cnf::zero())),
        T::Sum(parts) => Some(part(0, first_point(&parts[0])?)),
        T::LexProd(a, b) => Some(pair(first_point(a)?, first_point(b)?)),
        T::Rev(x) => last_point(x),
        _ => None,
    }
}

/// The greatest element, if any.
pub fn last_point(t: &OrderTerm) -> Option<PointCode> {
    use OrderTerm as T;
    use PointCode as P;
    match t {
        T::Single => Some(P::Unit),
        T::FinChain(n) => Some(P::Nat(n - 1)),
        T::NatOrdRev => Some(P::Nat(0)),
        T::Omega1Rev => Some(P::Ord(Cnf::zero())),
        T::Omega2Rev => Some(P::Ord2(Cnf::zero(), Cnf::zero())),
        T::Sum(parts) => {
            let k = parts.len() - 1;
            Some(part(k, last_point(&parts[k])?))
        }
        T::LexProd(a, b) => Some(pair(last_point(a)?, last_point(b)?)),
        T::Rev(x) => first_point(x),
        _ => None,
    }
}

/// Which neighbour to look for.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Dir {
    Pred,
    Succ,
}

impl Dir {
    fn flip(self) -> Dir {
        match self {
            Dir::Pred => Dir::Succ,
            Dir::Succ => Dir::Pred,
        }
    }
}

/// Moves one step along a well-ordered code: down when `down`, up otherwise.
fn ord_step(a: &Cnf, down: bool) -> Option<Cnf> {
    if down {
        a.pred()
    } else {
        Some(a.succ())
    }
}

fn neighbour(t: &OrderTerm, p: &PointCode, dir: Dir) -> Option<PointCode> {
    use OrderTerm as T;
    use PointCode as P;
    let down = dir == Dir::Pred;
    match (t, p) {
        (T::FinChain(n), P::Nat(i)) => match dir {
            Dir::Pred => i.checked_sub(1).map(P::Nat),
            Dir::Succ => (i + 1 < *n).then(|| P::Nat(i + 1)),
        },
        (T::NatOrd, P::Nat(i)) => match dir {
            Dir::Pred => i.checked_sub(1).map(P::Nat),
            Dir::Succ => Some(P::Nat(i + 1)),
        },
        (T::NatOrdRev, P::Nat(i)) => match dir {
            Dir::Pred => Some(P::Nat(i + 1)),
            Dir::Succ => i.checked_sub(1).map(P::Nat),
        },
        (T::IntOrd, P::Int(i)) => Some(P::Int(if down { i - 1 } else { i + 1 })),
        (T::Omega1, P::Ord(a)) => ord_step(a, down).map(P::Ord),
        (T::Omega1Rev, P::Ord(a)) => ord_step(a, !down).map(P::Ord),
        (T::Omega2, P::Ord2(d, r)) => ord_step(r, down).map(|r| P::Ord2(d.clone(), r)),
        (T::Omega2Rev, P::Ord2(d, r)) => ord_step(r, !down).map(|r| P::Ord2(d.clone(), r)),
        (T::Sum(parts), P::Part(i, x)) => {
            if let Some(y) = neighbour(&parts[*i], x, dir) {
                return Some(part(*i, y));
            }
            match dir {
                Dir::Pred => {
                    let j = i.checked_sub(1)?;
                    (Some(x.as_ref()) == first_point(&parts[*i]).as_ref())
                        .then(|| last_point(&parts[j]).map(|y| part(j, y)))?
                }
                Dir::Succ => {
                    let j = i + 1;
                    let next = parts.get(j)?;
                    (Some(x.as_ref()) == last_point(&parts[*i]).as_ref())
                        .then(|| first_point(next).map(|y| part(j, y)))?
                }
            }
        }
        (T::LexProd(a, b), P::Pair(x, y)) => {
            if let Some(z) = neighbour(b, y, dir) {
                return Some(pair((**x).clone(), z));
            }
            let (edge, other_end) = match dir {
                Dir::Pred => (first_point(b), last_point(b)),
                Dir::Succ => (last_point(b), first_point(b)),
            };
            if Some(y.as_ref()) != edge.as_ref() {
                return None;
            }
            Some(pair(neighbour(a, x, dir)?, other_end?))
        }
        (T::Rev(x), p) => neighbour(x, p, dir.flip()),
        _ => None,
    }
}

/// The immediate predecessor of `p`, if it has one.
pub fn pred(t: &OrderTerm, p: &PointCode) -> Result<Option<PointCode>> {
    validate(t, p)?;
    Ok(neighbour(t, p, Dir::Pred))
}

/// The immediate successor of `p`, if it has one.
pub fn succ(t: &OrderTerm, p: &PointCode) -> Result<Option<PointCode>> {
    validate(t, p)?;
    Ok(neighbour(t, p, Dir::Succ))
}

/// The condensation classes of a term, laid out in a frame order.
///
/// The frame is the quotient before boundary classes are merged: merged
/// classes are addressed by the code of their leftmost piece, so the codes
/// that [`ClassFrame::index`] returns form a suborder of the frame that is
/// isomorphic to the quotient computed by [`cc`].
#[derive(Clone, Debug)]
pub struct ClassFrame {
    term: OrderTerm,
    node: Node,
    first: Option<PointCode>,
    last: Option<PointCode>,
}

#[derive(Clone, Debug)]
enum Node {
    Empty,
    Single,
    Atom(Atom, Level),
    Sum {
        parts: Vec<ClassFrame>,
        /// `merged[j]` joins the last class of part `j` with the first
        /// class of part `j + 1`.
        merged: Vec<bool>,
    },
    SmallInner(Box<ClassFrame>),
    Copies,
    Product {
        outer: OrderTerm,
        inner: Box<ClassFrame>,
        glued: bool,
    },
}

/// Builds the class frame of `t` (which must be normalized) at `level`.
pub fn class_frame(t: &OrderTerm, level: Level) -> Result<ClassFrame> {
    use OrderTerm as T;
    if t.is_empty() {
        return Ok(ClassFrame {
            term: T::Empty,
            node: Node::Empty,
            first: None,
            last: None,
        });
    }
    if level.is_small(shape(t).card) {
        return Ok(single_frame());
    }
    if let Some(atom) = Atom::of(t) {
        if !atom_row(atom, level).quotient_is_self {
            return Ok(single_frame());
        }
        let zero = || Cnf::zero();
        let (first, last) = match atom {
            Atom::Omega1 => (Some(PointCode::Ord(zero())), None),
            Atom::Omega1Rev => (None, Some(PointCode::Ord(zero()))),
            Atom::Omega2 => (Some(PointCode::Ord2(zero(), zero())), None),
            Atom::Omega2Rev => (None, Some(PointCode::Ord2(zero(), zero()))),
            _ => (None, None),
        };
        return Ok(ClassFrame {
            term: t.clone(),
            node: Node::Atom(atom, level),
            first,
            last,
        });
    }
    match t {
        T::Sum(ps) => {
            let mut parts = Vec::with_capacity(ps.len());
            let mut flags = Vec::with_capacity(ps.len());
            for p in ps {
                parts.push(class_frame(p, level)?);
                let r = cc(p, level)?;
                flags.push((r.merge_left, r.merge_right));
            }
            let merged: Vec<bool> = flags.windows(2).map(|w| w[0].1 && w[1].0).collect();
            let term = T::Sum(parts.iter().map(|f| f.term.clone()).collect());
            let first = parts[0].first.clone().map(|c| part(0, c));
            let k = parts.len() - 1;
            let mut frame = ClassFrame {
                term,
                node: Node::Sum { parts, merged },
                first,
                last: None,
            };
            frame.last = match &frame.node {
                Node::Sum { parts, merged } => match &parts[k].last {
                    Some(c) => Some(settle_sum(parts, merged, k, c.clone())?),
                    None => None,
                },
                _ => unreachable!(),
            };
            Ok(frame)
        }
        T::LexProd(a, b) => {
            if level.is_small(shape(b).card) {
                let inner = class_frame(a, level)?;
                return Ok(ClassFrame {
                    term: inner.term.clone(),
                    first: inner.first.clone(),
                    last: inner.last.clone(),
                    node: Node::SmallInner(Box::new(inner)),
                });
            }
            let rb = cc(b, level)?;
            if rb.quotient == T::Single {
                return Ok(ClassFrame {
                    term: (**a).clone(),
                    node: Node::Copies,
                    first: first_point(a),
                    last: last_point(a),
                });
            }
            let inner = class_frame(b, level)?;
            let first = match (first_point(a), &inner.first) {
                (Some(x), Some(c)) => Some(pair(x, c.clone())),
                _ => None,
            };
            let last = match (last_point(a), &inner.last) {
                (Some(x), Some(c)) => Some(pair(x, c.clone())),
                _ => None,
            };
            Ok(ClassFrame {
                term: lex((**a).clone(), inner.term.clone()),
                node: Node::Product {
                    outer: (**a).clone(),
                    glued: rb.merge_left && rb.merge_right,
                    inner: Box::new(inner),
                },
                first,
                last,
            })
        }
        other => Err(Error::Unsupported(format!("no class frame for {other}"))),
    }
}

fn single_frame() -> ClassFrame {
    ClassFrame {
        term: OrderTerm::Single,
        node: Node::Single,
        first: Some(PointCode::Unit),
        last: Some(PointCode::Unit),
    }
}

/// Moves a class code of part `j` left across merged seams.
fn settle_sum(
    parts: &[ClassFrame],
    merged: &[bool],
    mut j: usize,
    mut c: PointCode,
) -> Result<PointCode> {
    while j > 0 && merged[j - 1] && parts[j].first.as_ref() == Some(&c) {
        j -= 1;
        c = parts[j]
            .last
            .clone()
            .ok_or_else(|| Error::Unsupported("merged part without a last class".into()))?;
    }
    Ok(part(j, c))
}

impl ClassFrame {
    /// The frame order; class codes are points of this term.
    pub fn term(&self) -> &OrderTerm {
        &self.term
    }

    /// Code of the first class, if there is one.
    pub fn first_class(&self) -> Option<&PointCode> {
        self.first.as_ref()
    }

    /// Code of the last class, if there is one.
    pub fn last_class(&self) -> Option<&PointCode> {
        self.last.as_ref()
    }

    /// The class of `p`, a point of the term the frame was built from.
    pub fn index(&self, p: &PointCode) -> Result<PointCode> {
        use PointCode as P;
        Ok(match (&self.node, p) {
            (Node::Empty, _) => {
                return Err(Error::InvalidCode("the empty order has no points".into()))
            }
            (Node::Single, _) => P::Unit,
            (Node::Atom(atom, level), p) => atom_class(*atom, *level, p),
            (Node::Sum { parts, merged }, P::Part(j, x)) => {
                let c = parts
                    .get(*j)
                    .ok_or_else(|| Error::InvalidCode(format!("no part {j}")))?
                    .index(x)?;
                settle_sum(parts, merged, *j, c)?
            }
            (Node::SmallInner(inner), P::Pair(a, _)) => inner.index(a)?,
            (Node::Copies, P::Pair(a, _)) => (**a).clone(),
            (
                Node::Product {
                    outer,
                    inner,
                    glued,
                },
                P::Pair(a, x),
            ) => {
                let c = inner.index(x)?;
                if *glued && inner.first.as_ref() == Some(&c) {
                    if let Some(prev) = neighbour(outer, a, Dir::Pred) {
                        let last = inner.last.clone().expect("glued classes have a last class");
                        return Ok(pair(prev, last));
                    }
                }
                pair((**a).clone(), c)
            }
            (_, p) => {
                return Err(Error::InvalidCode(format!(
                    "{p:?} does not match the frame"
                )))
            }
        })
    }
}

fn atom_class(atom: Atom, level: Level, p: &PointCode) -> PointCode {
    use PointCode as P;
    match (atom, level, p) {
        (Atom::Omega1 | Atom::Omega1Rev, Level::Finite, P::Ord(a)) => P::Ord(a.div_omega()),
        (Atom::Omega2 | Atom::Omega2Rev, Level::Finite, P::Ord2(d, r)) => {
            P::Ord2(d.clone(), r.div_omega())
        }
        (Atom::Omega2 | Atom::Omega2Rev, Level::Countable, P::Ord2(d, _)) => {
            P::Ord2(Cnf::zero(), d.clone())
        }
        (_, _, p) => p.clone(),
    }
}

/// The class of `p` in the condensation of `t` at `level`, as a point of
/// [`class_frame`]`(t, level)`. `t` must be normalized.
pub fn class_index(t: &OrderTerm, p: &PointCode, level: Level) -> Result<PointCode> {
    validate(t, p)?;
    class_frame(t, level)?.index(p)
}

fn random_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    Rational::new(rng.random_range(-40..=40), rng.random_range(1..=8))
}

/// A random point of `t`, biased towards small codes. `None` for the empty
/// order.
pub fn random_point<R: Rng + ?Sized>(t: &OrderTerm, rng: &mut R) -> Option<PointCode> {
    use OrderTerm as T;
    use PointCode as P;
    let small_nat = |rng: &mut R| {
        if rng.random_bool(0.8) {
            rng.random_range(0..8)
        } else {
            rng.random_range(0..1000)
        }
    };
    Some(match t {
        T::Empty => return None,
        T::Single => P::Unit,
        T::FinChain(n) => P::Nat(rng.random_range(0..*n)),
        T::NatOrd | T::NatOrdRev => P::Nat(small_nat(rng)),
        T::IntOrd => P::Int(rng.random_range(-12..=12)),
        T::RatOrd => P::Rat(random_rational(rng)),
        T::Omega1 | T::Omega1Rev => P::Ord(Cnf::random(rng)),
        T::Omega2 | T::Omega2Rev => {
            let d = if rng.random_bool(0.5) {
                Cnf::nat(rng.random_range(0..3))
            } else {
                Cnf::random(rng)
            };
            P::Ord2(d, Cnf::random(rng))
        }
        T::ULine => {
            let side = [Side::Neg, Side::Mid, Side::Pos][rng.random_range(0..3)];
            let index = if side == Side::Mid {
                Cnf::zero()
            } else {
                Cnf::random(rng)
            };
            let slot = if side != Side::Mid && rng.random_bool(0.4) {
                Slot::Spine
            } else {
                Slot::Rat(random_rational(rng))
            };
            P::U(UPoint { side, index, slot })
        }
        T::Sum(parts) => {
            let i = rng.random_range(0..parts.len());
            part(i, random_point(&parts[i], rng)?)
        }
        T::LexProd(a, b) => pair(random_point(a, rng)?, random_point(b, rng)?),
        T::Rev(x) => random_point(x, rng)?,
    })
}

/// Points that every sample should contain when they exist in `t`: the
/// extreme points of limit-indexed blocks and the distinguished points of U.
fn landmarks(t: &OrderTerm, out: &mut Vec<PointCode>) {
    use OrderTerm as T;
    use PointCode as P;
    match t {
        T::Omega1 | T::Omega1Rev => {
            out.push(P::Ord(Cnf::omega()));
            out.push(P::Ord(Cnf::one()));
        }
        T::Omega2 | T::Omega2Rev => {
            out.push(P::Ord2(Cnf::one(), Cnf::zero()));
            out.push(P::Ord2(Cnf::zero(), Cnf::omega()));
        }
        T::ULine => {
            out.push(P::U(UPoint::spine(Side::Neg, Cnf::zero())));
            out.push(P::U(UPoint::rational(
                Side::Mid,
                Cnf::zero(),
                Rational::zero(),
            )));
            out.push(P::U(UPoint::spine(Side::Pos, Cnf::zero())));
        }
        T::Sum(parts) => {
            for (i, p) in parts.iter().enumerate() {
                let mut sub = Vec::new();
                landmarks(p, &mut sub);
                out.extend(sub.into_iter().map(|c| part(i, c)));
            }
        }
        T::LexProd(a, b) => {
            let mut sa = Vec::new();
            let mut sb = Vec::new();
            landmarks(a, &mut sa);
            landmarks(b, &mut sb);
            let anchor_a = first_point(a).or_else(|| last_point(a));
            let anchor_b = first_point(b).or_else(|| last_point(b));
            if let Some(y) = &anchor_b {
                out.extend(sa.iter().map(|x| pair(x.clone(), y.clone())));
            }
            if let Some(x) = &anchor_a {
                out.extend(sb.iter().map(|y| pair(x.clone(), y.clone())));
            }
        }
        _ => {}
    }
}

/// A deterministic sample of at most `budget` distinct points of `t`,
/// sorted in the order of `t`.
///
/// The sample starts with the first and last points, an adjacent pair and
/// a limit point when these exist, then the landmarks of U and ω₁-like
/// atoms, then seeded random points and their neighbours.
pub fn sample_points(t: &OrderTerm, budget: usize, seed: u64) -> Vec<PointCode> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked: Vec<PointCode> = Vec::new();
    let mut seen: BTreeSet<SortKey> = BTreeSet::new();
    let mut add = |p: PointCode, picked: &mut Vec<PointCode>| {
        if picked.len() < budget && validate(t, &p).is_ok() && seen.insert(SortKey::of(&p)) {
            picked.push(p);
        }
    };
    if t.is_empty() || budget == 0 {
        return Vec::new();
    }
    let first = first_point(t);
    if let Some(p) = first.clone() {
        add(p, &mut picked);
    }
    if let Some(p) = last_point(t) {
        add(p, &mut picked);
    }
    // an adjacent pair and a limit point
    let mut found_pair = false;
    let mut found_limit = false;
    let mut candidates: Vec<PointCode> = first.into_iter().collect();
    for _ in 0..64 {
        candidates.extend(random_point(t, &mut rng));
    }
    for p in candidates {
        if !found_pair {
            if let Some(q) = neighbour(t, &p, Dir::Succ) {
                add(p.clone(), &mut picked);
                add(q, &mut picked);
                found_pair = true;
            }
        }
        if !found_limit
            && neighbour(t, &p, Dir::Pred).is_none()
            && Some(&p) != first_point(t).as_ref()
        {
            add(p.clone(), &mut picked);
            found_limit = true;
        }
        if found_pair && found_limit {
            break;
        }
    }
    let mut marks = Vec::new();
    landmarks(t, &mut marks);
    for p in marks {
        add(p, &mut picked);
    }
    let mut attempts = 0;
    while picked.len() < budget && attempts < budget * 8 {
        attempts += 1;
        let Some(p) = random_point(t, &mut rng) else {
            break;
        };
        if rng.random_bool(0.3) {
            if let Some(q) = neighbour(t, &p, Dir::Succ) {
                add(q, &mut picked);
            }
        }
        add(p, &mut picked);
    }
    picked.sort_by(|p, q| cmp_valid(t, p, q));
    picked
}

/// Structural key used only to deduplicate codes.
#[derive(PartialEq, Eq, PartialOrd, Ord)]
struct SortKey(alloc::string::String);

impl SortKey {
    fn of(p: &PointCode) -> SortKey {
        SortKey(format!("{p:?}"))
    }
}
