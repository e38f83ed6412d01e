//! Quotients modulo the finite and countable condensations.

use alloc::format;
use alloc::vec;

use crate::classify::{shape, Level};
use crate::ordinal::{Cnf, WellOrder};
use crate::rules::{atom_row, Atom, Rule};
use crate::term::{detach_first, detach_last, lex, mirror, normalize, render_ordinal, OrderTerm};
use crate::{Error, Result};

/// A quotient together with its two boundary flags.
///
/// `merge_left` says the first class has a small head in the original order
/// (so it can merge with a class on its left); `merge_right` is the same for
/// the last class and tails.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize),
    serde(rename_all = "camelCase")
)]
pub struct CondResult {
    pub quotient: OrderTerm,
    pub merge_left: bool,
    pub merge_right: bool,
}

impl CondResult {
    fn new(quotient: OrderTerm, merge_left: bool, merge_right: bool) -> CondResult {
        CondResult {
            quotient,
            merge_left,
            merge_right,
        }
    }

    /// The result for the reversed order.
    pub fn reversed(&self) -> CondResult {
        CondResult::new(
            normalize(&mirror(&self.quotient)),
            self.merge_right,
            self.merge_left,
        )
    }
}

/// The condensation of `t` at `level`.
pub fn cc(t: &OrderTerm, level: Level) -> Result<CondResult> {
    cc_with_rule(t, level).map(|(r, _)| r)
}

/// Like [`cc`], also reporting the rule applied at the root.
pub fn cc_with_rule(t: &OrderTerm, level: Level) -> Result<(CondResult, Rule)> {
    condense(&normalize(t), level)
}

fn condense(t: &OrderTerm, level: Level) -> Result<(CondResult, Rule)> {
    use OrderTerm::*;
    if t.is_empty() {
        return Ok((CondResult::new(Empty, false, false), Rule::Small));
    }
    if level.is_small(shape(t).card) {
        return Ok((CondResult::new(Single, true, true), Rule::Small));
    }
    if let Some(atom) = Atom::of(t) {
        let row = atom_row(atom, level);
        let q = if row.quotient_is_self {
            t.clone()
        } else {
            Single
        };
        return Ok((
            CondResult::new(q, row.merge_left, row.merge_right),
            Rule::Atom,
        ));
    }
    if let Some(r) = ordinal_rule(t, level) {
        return Ok((r, Rule::Ordinal));
    }
    if let Some(r) = ordinal_rule(&mirror(t), level) {
        return Ok((r.reversed(), Rule::Ordinal));
    }
    match t {
        Sum(parts) => {
            let mut acc: Option<CondResult> = None;
            for p in parts {
                let r = condense(p, level)?.0;
                acc = Some(match acc {
                    None => r,
                    Some(a) => concat(a, r)?,
                });
            }
            Ok((acc.expect("normal sums have parts"), Rule::Sum))
        }
        LexProd(a, b) => {
            if level.is_small(shape(b).card) {
                return Ok((condense(a, level)?.0, Rule::SmallInner));
            }
            let rb = condense(b, level)?.0;
            let ml = a.has_first() && rb.merge_left;
            let mr = a.has_last() && rb.merge_right;
            if rb.quotient == Single {
                return Ok((
                    CondResult::new((**a).clone(), ml, mr),
                    Rule::RightIdentityInner,
                ));
            }
            let q = if rb.merge_left && rb.merge_right {
                glue(a, &rb.quotient)?
            } else {
                normalize(&lex((**a).clone(), rb.quotient))
            };
            Ok((CondResult::new(q, ml, mr), Rule::Classes))
        }
        other => Err(Error::Unsupported(format!("cannot condense {other}"))),
    }
}

/// Joins the results of two adjacent parts, merging the boundary classes
/// when both sides allow it.
fn concat(a: CondResult, b: CondResult) -> Result<CondResult> {
    let quotient = if a.merge_right && b.merge_left {
        normalize(&OrderTerm::Sum(vec![
            a.quotient,
            detach_first(&b.quotient)?,
        ]))
    } else {
        normalize(&OrderTerm::Sum(vec![a.quotient, b.quotient]))
    };
    Ok(CondResult::new(quotient, a.merge_left, b.merge_right))
}

/// `α = ω₁·δ + ρ` condenses to `δ + [ρ > 0]` at the countable level, and
/// `α = ω·δ + n` to `δ + [n > 0]` at the finite level.
fn ordinal_rule(t: &OrderTerm, level: Level) -> Option<CondResult> {
    let v = t.ordinal_value()?;
    let (delta, has_rest) = match level {
        Level::Countable => {
            let (d, r) = v.split_omega1();
            (d, !r.is_zero())
        }
        Level::Finite => {
            let (d, n) = v.split_omega();
            (d, n > 0)
        }
    };
    let q = if has_rest {
        delta.checked_add(&WellOrder::nat(1))?
    } else {
        delta
    };
    Some(CondResult::new(render_ordinal(&q), true, has_rest))
}

/// `δ + [ρ > 0]`: the quotient of `ω₁·δ + ρ` for countable `δ`, `ρ`.
pub fn cc_ordinal(delta: &Cnf, rho: &Cnf) -> Cnf {
    if rho.is_zero() {
        delta.clone()
    } else {
        delta.succ()
    }
}

/// `A` copies of `Q` where the last class of each copy is identified with
/// the first class of the next copy whenever the two copies are adjacent in
/// `A`. `Q` must have a first and a last element.
pub fn glue(a: &OrderTerm, q: &OrderTerm) -> Result<OrderTerm> {
    use OrderTerm::*;
    let a = normalize(a);
    let q = normalize(q);
    if !(q.has_first() && q.has_last()) {
        return Err(Error::NoEndpoint(format!("cannot glue copies of {q}")));
    }
    let out = match &a {
        Empty => Empty,
        Single => q,
        FinChain(n) => {
            let mid = detach_first(&detach_last(&q)?)?;
            let block = OrderTerm::Sum(vec![mid, Single]);
            normalize(&OrderTerm::Sum(vec![Single, lex(FinChain(*n), block)]))
        }
        NatOrd | IntOrd | Omega1 | Omega2 => normalize(&lex(a.clone(), detach_last(&q)?)),
        NatOrdRev | Omega1Rev | Omega2Rev => normalize(&lex(a.clone(), detach_first(&q)?)),
        RatOrd | ULine => normalize(&lex(a.clone(), q)),
        Sum(parts) => {
            let mut acc = glue(&parts[0], &q)?;
            for w in parts.windows(2) {
                let g = glue(&w[1], &q)?;
                let next = if w[0].has_last() && w[1].has_first() {
                    detach_first(&g)?
                } else {
                    g
                };
                acc = normalize(&OrderTerm::Sum(vec![acc, next]));
            }
            acc
        }
        LexProd(a1, a2) => {
            let inner = glue(a2, &q)?;
            if a2.has_first() && a2.has_last() {
                glue(a1, &inner)?
            } else {
                normalize(&lex((**a1).clone(), inner))
            }
        }
        Rev(_) => unreachable!("normal forms contain no Rev"),
    };
    Ok(out)
}
