//! Order-type terms, normalization and end-point surgery.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::ordinal::{Exponent, WellOrder};
use crate::{Error, Result};

/// A symbolic order type.
///
/// `LexProd(outer, inner)` is `outer` copies of `inner`, so the ordinal
/// product `α·β` is `LexProd(β, α)`.
///
/// In normal form (see [`normalize`]) sums are flat with at least two
/// nonempty parts, products have no `Empty`/`Single` factor, their outer
/// factor is an infinite atom (or a chain longer than [`COPY_LIMIT`]), and
/// `Rev` never occurs (`Omega2Rev` stands
/// for the reversed `ω₂`). The variant order is used to pick canonical
/// representatives, so do not reorder variants.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum OrderTerm {
    Empty,
    Single,
    FinChain(u64),
    NatOrd,
    NatOrdRev,
    IntOrd,
    RatOrd,
    Omega1,
    Omega1Rev,
    Omega2,
    Omega2Rev,
    ULine,
    Sum(Vec<OrderTerm>),
    LexProd(Box<OrderTerm>, Box<OrderTerm>),
    Rev(Box<OrderTerm>),
}

use OrderTerm::*;

/// The `n`-element chain.
pub fn fin(n: u64) -> OrderTerm {
    match n {
        0 => Empty,
        1 => Single,
        n => FinChain(n),
    }
}

pub fn sum(parts: Vec<OrderTerm>) -> OrderTerm {
    Sum(parts)
}

pub fn lex(outer: OrderTerm, inner: OrderTerm) -> OrderTerm {
    LexProd(Box::new(outer), Box::new(inner))
}

pub fn rev(t: OrderTerm) -> OrderTerm {
    Rev(Box::new(t))
}

impl OrderTerm {
    pub fn is_atom(&self) -> bool {
        !matches!(self, Sum(_) | LexProd(..) | Rev(_))
    }

    /// Number of elements, if finite.
    pub fn finite_len(&self) -> Option<u64> {
        match self {
            Empty => Some(0),
            Single => Some(1),
            FinChain(n) => Some(*n),
            Sum(parts) => parts
                .iter()
                .try_fold(0u64, |acc, p| acc.checked_add(p.finite_len()?)),
            LexProd(a, b) => match (a.finite_len(), b.finite_len()) {
                (Some(0), _) | (_, Some(0)) => Some(0),
                (Some(x), Some(y)) => x.checked_mul(y),
                _ => None,
            },
            Rev(t) => t.finite_len(),
            _ => None,
        }
    }

    pub fn has_first(&self) -> bool {
        match self {
            Empty | NatOrdRev | IntOrd | RatOrd | Omega1Rev | Omega2Rev | ULine => false,
            Single | FinChain(_) | NatOrd | Omega1 | Omega2 => true,
            Sum(parts) => parts
                .iter()
                .find(|p| !p.is_empty())
                .is_some_and(|p| p.has_first()),
            LexProd(a, b) => a.has_first() && b.has_first(),
            Rev(t) => t.has_last(),
        }
    }

    pub fn has_last(&self) -> bool {
        mirror(self).has_first()
    }

    pub fn is_empty(&self) -> bool {
        self.finite_len() == Some(0)
    }

    /// Ordinal value, for terms built from finite chains, ω, ω₁ and ω₂ with
    /// `+` and products. `None` for anything else or on overflow.
    pub fn ordinal_value(&self) -> Option<WellOrder> {
        match self {
            Empty => Some(WellOrder::zero()),
            Single => Some(WellOrder::nat(1)),
            FinChain(n) => Some(WellOrder::nat(*n)),
            NatOrd => Some(WellOrder::omega()),
            Omega1 => Some(WellOrder::omega1()),
            Omega2 => Some(WellOrder::omega2()),
            Sum(parts) => parts.iter().try_fold(WellOrder::zero(), |acc, p| {
                acc.checked_add(&p.ordinal_value()?)
            }),
            LexProd(a, b) => b.ordinal_value()?.checked_mul(&a.ordinal_value()?),
            _ => None,
        }
    }

    /// Value of the reversed term, if that is an ordinal.
    pub fn reversed_ordinal_value(&self) -> Option<WellOrder> {
        mirror(self).ordinal_value()
    }

    pub fn is_ordinal(&self) -> bool {
        self.ordinal_value().is_some()
    }
}

/// Structural reversal. Keeps normal forms in normal form up to the
/// canonical choices made by [`normalize`].
pub fn mirror(t: &OrderTerm) -> OrderTerm {
    match t {
        NatOrd => NatOrdRev,
        NatOrdRev => NatOrd,
        Omega1 => Omega1Rev,
        Omega1Rev => Omega1,
        Omega2 => Omega2Rev,
        Omega2Rev => Omega2,
        Sum(parts) => Sum(parts.iter().rev().map(mirror).collect()),
        LexProd(a, b) => lex(mirror(a), mirror(b)),
        Rev(x) => (**x).clone(),
        atom => atom.clone(),
    }
}

/// `ω^e`, as nested products with `ω` outermost and `ω₂` innermost.
fn render_power(e: Exponent) -> OrderTerm {
    let factors = core::iter::repeat_n(NatOrd, e.fin as usize)
        .chain(core::iter::repeat_n(Omega1, e.w1 as usize))
        .chain(core::iter::repeat_n(Omega2, e.w2 as usize));
    let mut factors: Vec<OrderTerm> = factors.collect();
    let mut acc = factors.pop().expect("nonzero exponent");
    while let Some(f) = factors.pop() {
        acc = lex(f, acc);
    }
    acc
}

/// Products `n * B` with `n` above this bound are kept as products instead
/// of being expanded into `n` summands.
pub const COPY_LIMIT: u64 = 256;

/// The normal form of an ordinal value.
pub fn render_ordinal(v: &WellOrder) -> OrderTerm {
    let mut parts = Vec::new();
    for &(e, c) in v.terms() {
        if e.is_zero() {
            parts.push(fin(c));
        } else if c > COPY_LIMIT {
            parts.push(lex(FinChain(c), render_power(e)));
        } else {
            let p = render_power(e);
            parts.extend(core::iter::repeat_n(p, c as usize));
        }
    }
    match parts.len() {
        0 => Empty,
        1 => parts.pop().unwrap(),
        _ => Sum(parts),
    }
}

/// Normal form of a reversed ordinal.
pub fn render_rev_ordinal(v: &WellOrder) -> OrderTerm {
    mirror(&render_ordinal(v))
}

/// Rewrites to the unique normal form used as the representative of the
/// term's order type. Idempotent.
pub fn normalize(t: &OrderTerm) -> OrderTerm {
    match t {
        FinChain(n) => fin(*n),
        Sum(parts) => norm_sum(parts.iter().map(normalize).collect()),
        LexProd(a, b) => norm_prod(normalize(a), normalize(b)),
        Rev(x) => normalize(&mirror(&normalize(x))),
        atom => atom.clone(),
    }
}

fn norm_prod(a: OrderTerm, b: OrderTerm) -> OrderTerm {
    if a == Empty || b == Empty {
        return Empty;
    }
    if a == Single {
        return b;
    }
    if b == Single {
        return a;
    }
    if let (Some(x), Some(y)) = (a.ordinal_value(), b.ordinal_value()) {
        if let Some(v) = y.checked_mul(&x) {
            return render_ordinal(&v);
        }
    }
    if let (Some(x), Some(y)) = (a.reversed_ordinal_value(), b.reversed_ordinal_value()) {
        if let Some(v) = y.checked_mul(&x) {
            return render_rev_ordinal(&v);
        }
    }
    match a {
        Sum(parts) => {
            let copies = parts.into_iter().map(|p| norm_prod(p, b.clone())).collect();
            norm_sum(copies)
        }
        FinChain(n) if n > COPY_LIMIT => lex(FinChain(n), b),
        FinChain(n) => norm_sum(vec![b; n as usize]),
        LexProd(a1, a2) => norm_prod(*a1, norm_prod(*a2, b)),
        a => norm_atom_prod(a, b),
    }
}

/// `a` is an infinite atom and `b` a normal form other than `Empty`/`Single`.
fn norm_atom_prod(a: OrderTerm, b: OrderTerm) -> OrderTerm {
    if b == RatOrd && matches!(a, NatOrd | NatOrdRev | IntOrd | RatOrd) {
        return RatOrd;
    }
    if a == IntOrd {
        if b.finite_len().is_some() {
            return IntOrd;
        }
        if let Sum(parts) = &b {
            return zeta_rotation(parts);
        }
    }
    lex(a, b)
}

/// ζ copies of `p₀ + … + pₖ` equal ζ copies of any rotation of the parts;
/// picks the least normalized rotation.
fn zeta_rotation(parts: &[OrderTerm]) -> OrderTerm {
    let mut current = parts.to_vec();
    for _ in 0..16 {
        // short chains are cut into points so rotations can split them
        let units: Vec<OrderTerm> = current
            .iter()
            .flat_map(|p| match p {
                FinChain(n) if *n <= 16 => vec![Single; *n as usize],
                p => vec![p.clone()],
            })
            .collect();
        let best = (0..units.len())
            .map(|i| {
                let mut r = units.clone();
                r.rotate_left(i);
                norm_sum(r)
            })
            .min_by_key(|t| (part_count(t), t.clone()))
            .expect("sum has parts");
        match best {
            Sum(ps) if ps == current => return lex(IntOrd, Sum(ps)),
            Sum(ps) => current = ps,
            other => return norm_prod(IntOrd, other),
        }
    }
    lex(IntOrd, Sum(current))
}

fn part_count(t: &OrderTerm) -> usize {
    match t {
        Sum(ps) => ps.len(),
        _ => 1,
    }
}

fn flatten_into(out: &mut Vec<OrderTerm>, t: OrderTerm) {
    match t {
        Empty => {}
        Sum(ps) => ps.into_iter().for_each(|p| flatten_into(out, p)),
        t => out.push(t),
    }
}

fn norm_sum(parts: Vec<OrderTerm>) -> OrderTerm {
    let mut cur = Vec::new();
    for p in parts {
        flatten_into(&mut cur, p);
    }
    loop {
        let next = sum_pass(&cur);
        if next == cur {
            break;
        }
        cur = next;
    }
    match cur.len() {
        0 => Empty,
        1 => cur.pop().unwrap(),
        _ => Sum(cur),
    }
}

/// Replaces a run of consecutive parts by the normal form of its value.
fn collapse_run(
    run: &[OrderTerm],
    value: fn(&OrderTerm) -> Option<WellOrder>,
    render: fn(&WellOrder) -> OrderTerm,
    out: &mut Vec<OrderTerm>,
) {
    match value(&Sum(run.to_vec())) {
        Some(v) => flatten_into(out, render(&v)),
        None => out.extend_from_slice(run),
    }
}

fn ordinal_of(t: &OrderTerm) -> Option<WellOrder> {
    t.ordinal_value()
}

fn rev_ordinal_of(t: &OrderTerm) -> Option<WellOrder> {
    t.reversed_ordinal_value()
}

fn sum_pass(parts: &[OrderTerm]) -> Vec<OrderTerm> {
    let parts = merge_runs(parts, ordinal_of, render_ordinal);
    let parts = merge_runs(&parts, rev_ordinal_of, render_rev_ordinal);
    let mut out: Vec<OrderTerm> = Vec::with_capacity(parts.len());
    for p in parts {
        match (out.as_slice(), &p) {
            ([.., RatOrd], RatOrd) => {}
            ([.., RatOrd, Single], RatOrd) => {
                out.pop();
            }
            ([.., NatOrdRev], NatOrd) => {
                out.pop();
                out.push(IntOrd);
            }
            _ => out.push(p),
        }
    }
    absorb_copies(out)
}

/// Longest run of extra parts tried around a product when absorbing.
const ABSORB_WINDOW: usize = 3;

/// Absorbs neighbouring parts into products that repeat them.
///
/// For `A` in {ω, ω₁, ω₂}, `A·X = X + A·X`, so parts `Y = Y' + X` before
/// `A·X` shrink to `Y'` and parts `Z` with `Z + X = X` are dropped. The
/// mirror rules apply after `A·X` for `A` in {ω*, ω₁*, ω₂*}.
fn absorb_copies(parts: Vec<OrderTerm>) -> Vec<OrderTerm> {
    let left = |a: &OrderTerm| matches!(a, NatOrd | Omega1 | Omega2);
    let right = |a: &OrderTerm| matches!(a, NatOrdRev | Omega1Rev | Omega2Rev);
    let mut out: Vec<OrderTerm> = Vec::with_capacity(parts.len());
    for p in parts {
        let cands = copies(&p, left);
        while let Some(j) = cands.iter().find_map(|x| absorbable(&out, x, false)) {
            out.truncate(out.len() - j);
        }
        out.push(p);
    }
    // the mirror image: run the same pass over the reversed sequence
    let mut res: Vec<OrderTerm> = Vec::with_capacity(out.len());
    for p in out.into_iter().rev() {
        let cands = copies(&p, right);
        while let Some(j) = cands.iter().find_map(|x| absorbable(&res, x, true)) {
            res.truncate(res.len() - j);
        }
        res.push(p);
    }
    res.reverse();
    res
}

/// Factors `X` with `X + t = t` (or `t + X = t`) visible in `t`.
fn copies(t: &OrderTerm, absorbs: fn(&OrderTerm) -> bool) -> Vec<&OrderTerm> {
    let mut out = Vec::new();
    let mut cur = t;
    while let LexProd(a, x) = cur {
        if !absorbs(a) {
            break;
        }
        out.push(&**x);
        cur = x;
    }
    out
}

/// How many parts at the end of `before` the product with copy `x` absorbs.
/// With `mirrored`, `before` holds the parts after the product in reverse.
fn absorbable(before: &[OrderTerm], x: &OrderTerm, mirrored: bool) -> Option<usize> {
    let mut f: Vec<OrderTerm> = match x {
        Sum(ps) => ps.clone(),
        t => vec![t.clone()],
    };
    if mirrored {
        f.reverse();
    }
    // joins parts given in `before` order
    let join = |a: &[OrderTerm], b: &[OrderTerm]| {
        let mut v: Vec<OrderTerm> = a.iter().chain(b).cloned().collect();
        if mirrored {
            v.reverse();
        }
        norm_sum(v)
    };
    let max = before.len().min(f.len() + ABSORB_WINDOW);
    for k in 1..=max {
        let y = &before[before.len() - k..];
        let whole = join(y, &[]);
        // `Y = Y' + X`
        for j in (1..=k).rev() {
            if join(&y[..k - j], &f) == whole {
                return Some(j);
            }
        }
        // `Z + X = X`
        if k <= ABSORB_WINDOW && join(y, &f) == *x {
            return Some(k);
        }
    }
    None
}

fn merge_runs(
    parts: &[OrderTerm],
    value: fn(&OrderTerm) -> Option<WellOrder>,
    render: fn(&WellOrder) -> OrderTerm,
) -> Vec<OrderTerm> {
    let mut out = Vec::with_capacity(parts.len());
    let mut i = 0;
    while i < parts.len() {
        if value(&parts[i]).is_none() {
            out.push(parts[i].clone());
            i += 1;
            continue;
        }
        let start = i;
        while i < parts.len() && value(&parts[i]).is_some() {
            i += 1;
        }
        collapse_run(&parts[start..i], value, render, &mut out);
    }
    out
}

/// Removes the last element.
///
/// Fails with [`Error::NoEndpoint`] if `t` has no last element. The result
/// is normalized.
pub fn detach_last(t: &OrderTerm) -> Result<OrderTerm> {
    let t = normalize(t);
    let out = match &t {
        Single => Empty,
        FinChain(n) => fin(n - 1),
        NatOrdRev | Omega1Rev | Omega2Rev => t.clone(),
        Sum(parts) if t.has_last() => {
            let (last, init) = parts.split_last().expect("sum has parts");
            let mut ps = init.to_vec();
            ps.push(detach_last(last)?);
            normalize(&Sum(ps))
        }
        LexProd(a, b) if t.has_last() => {
            let shortened = lex(detach_last(a)?, (**b).clone());
            normalize(&Sum(vec![shortened, detach_last(b)?]))
        }
        _ => return Err(Error::NoEndpoint(format!("{t} has no last element"))),
    };
    Ok(out)
}

/// Removes the first element; the mirror image of [`detach_last`].
pub fn detach_first(t: &OrderTerm) -> Result<OrderTerm> {
    let r = detach_last(&mirror(t))
        .map_err(|_| Error::NoEndpoint(format!("{t} has no first element")))?;
    Ok(normalize(&mirror(&r)))
}

impl fmt::Display for OrderTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Empty => write!(f, "0"),
            Single => write!(f, "1"),
            FinChain(n) => write!(f, "{n}"),
            NatOrd => write!(f, "w"),
            NatOrdRev => write!(f, "w*"),
            IntOrd => write!(f, "z"),
            RatOrd => write!(f, "q"),
            Omega1 => write!(f, "w1"),
            Omega1Rev => write!(f, "w1*"),
            Omega2 => write!(f, "w2"),
            Omega2Rev => write!(f, "rev(w2)"),
            ULine => write!(f, "U"),
            Sum(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
            LexProd(a, b) => {
                write_factor(f, a)?;
                write!(f, " * ")?;
                write_factor(f, b)
            }
            Rev(t) => write!(f, "rev({t})"),
        }
    }
}

fn write_factor(f: &mut fmt::Formatter<'_>, t: &OrderTerm) -> fmt::Result {
    match t {
        Sum(_) | LexProd(..) => write!(f, "({t})"),
        t => write!(f, "{t}"),
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for OrderTerm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_absorb_copies() {
        let x = Sum(vec![Single, RatOrd]);
        let wx = lex(NatOrd, x.clone());
        assert_eq!(normalize(&Sum(vec![Single, RatOrd, wx.clone()])), wx);
        assert_eq!(
            normalize(&Sum(vec![RatOrd, x.clone(), wx.clone()])),
            Sum(vec![RatOrd, wx.clone()])
        );
        // 1 + ω₁ = ω₁ starts every copy of ω₁ + η
        let y = lex(NatOrd, Sum(vec![Omega1, RatOrd]));
        assert_eq!(normalize(&Sum(vec![Single, y.clone()])), y);
        // 1 + ζ has a first element, so nothing is absorbed by ζ
        let z = Sum(vec![lex(IntOrd, Omega1), Omega1]);
        assert_eq!(normalize(&z), z);
        let back = lex(NatOrdRev, Sum(vec![RatOrd, Single]));
        assert_eq!(normalize(&Sum(vec![back.clone(), RatOrd, Single])), back);
    }

    #[test]
    fn reversal_pushdown() {
        // the reverse of ω + 1 is 1 + ω*, which has a first element
        let r = normalize(&rev(Sum(vec![NatOrd, Single])));
        assert_eq!(r, Sum(vec![Single, NatOrdRev]));
        assert_eq!(normalize(&Sum(vec![Single, NatOrd])), NatOrd);
        assert_eq!(normalize(&rev(ULine)), ULine);
        assert_eq!(normalize(&rev(rev(Omega2))), Omega2);
        assert_eq!(normalize(&rev(Omega2)), Omega2Rev);
    }

    #[test]
    fn ordinal_arithmetic_in_terms() {
        assert_eq!(normalize(&lex(fin(2), NatOrd)), Sum(vec![NatOrd, NatOrd]));
        assert_eq!(normalize(&lex(NatOrd, fin(2))), NatOrd);
        assert_eq!(normalize(&Sum(vec![fin(3), Omega1])), Omega1);
        assert_eq!(normalize(&lex(NatOrd, Omega1)), lex(NatOrd, Omega1));
        assert_eq!(normalize(&lex(Omega1, NatOrd)), Omega1);
        assert_eq!(
            normalize(&Sum(vec![Single, NatOrdRev])),
            Sum(vec![Single, NatOrdRev])
        );
        assert_eq!(normalize(&Sum(vec![NatOrdRev, Single])), NatOrdRev);
        assert_eq!(normalize(&Sum(vec![NatOrdRev, fin(4), NatOrd])), IntOrd);
    }

    #[test]
    fn dense_and_integer_absorption() {
        assert_eq!(normalize(&Sum(vec![RatOrd, Single, RatOrd])), RatOrd);
        assert_eq!(normalize(&lex(IntOrd, fin(3))), IntOrd);
        assert_eq!(normalize(&lex(NatOrd, RatOrd)), RatOrd);
        let rotated = normalize(&lex(IntOrd, Sum(vec![NatOrd, NatOrdRev])));
        assert_eq!(rotated, lex(IntOrd, IntOrd));
    }

    #[test]
    fn detaching_endpoints() {
        assert_eq!(detach_last(&fin(3)).unwrap(), fin(2));
        assert_eq!(detach_last(&NatOrdRev).unwrap(), NatOrdRev);
        assert_eq!(detach_last(&Sum(vec![NatOrd, Single])).unwrap(), NatOrd);
        assert_eq!(detach_first(&NatOrd).unwrap(), NatOrd);
        assert!(matches!(detach_last(&NatOrd), Err(Error::NoEndpoint(_))));
        assert!(detach_first(&ULine).is_err());
    }

    #[test]
    fn printing() {
        assert_eq!(
            lex(NatOrdRev, Sum(vec![Omega1, Single])).to_string(),
            "w* * (w1 + 1)"
        );
        assert_eq!(Sum(vec![Omega1Rev, Omega1]).to_string(), "w1* + w1");
    }
}
