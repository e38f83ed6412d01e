//! Three-valued order-type equality.

use crate::classify::{profile, Level};
use crate::condense::cc;
use crate::term::{mirror, normalize, OrderTerm};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize),
    serde(rename_all = "lowercase")
)]
pub enum Equality {
    Equal,
    NotEqual,
    Unknown,
}

/// Compares order types.
///
/// `Equal` means the normal forms coincide. `NotEqual` is reported when an
/// isomorphism invariant differs: the profile, being well-ordered (or
/// reversely well-ordered) and the ordinal value, or, recursively, a
/// condensation quotient. Everything else is `Unknown`.
pub fn eq_order_type(a: &OrderTerm, b: &OrderTerm) -> Equality {
    compare(&normalize(a), &normalize(b), 3)
}

fn compare(a: &OrderTerm, b: &OrderTerm, depth: u32) -> Equality {
    if a == b {
        return Equality::Equal;
    }
    match (profile(a), profile(b)) {
        (Ok(pa), Ok(pb)) if pa != pb => return Equality::NotEqual,
        (Ok(_), Ok(_)) => {}
        _ => return Equality::Unknown,
    }
    for (x, y) in [(a.clone(), b.clone()), (mirror(a), mirror(b))] {
        if well_ordered(&x) != well_ordered(&y) {
            return Equality::NotEqual;
        }
        if let (Some(vx), Some(vy)) = (x.ordinal_value(), y.ordinal_value()) {
            // distinct values already have distinct normal forms
            if vx != vy {
                return Equality::NotEqual;
            }
        }
    }
    if depth == 0 {
        return Equality::Unknown;
    }
    for level in Level::BOTH {
        let (Ok(qa), Ok(qb)) = (cc(a, level), cc(b, level)) else {
            continue;
        };
        if (qa.quotient != *a || qb.quotient != *b)
            && compare(&qa.quotient, &qb.quotient, depth - 1) == Equality::NotEqual
        {
            return Equality::NotEqual;
        }
    }
    Equality::Unknown
}

fn well_ordered(t: &OrderTerm) -> bool {
    use OrderTerm::*;
    match t {
        Empty | Single | FinChain(_) | NatOrd | Omega1 | Omega2 => true,
        Sum(parts) => parts.iter().all(well_ordered),
        LexProd(a, b) => well_ordered(a) && well_ordered(b),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::{fin, lex, sum};
    use alloc::vec;
    use OrderTerm::*;

    #[test]
    fn examples() {
        let two_w = lex(fin(2), NatOrd);
        assert_eq!(
            eq_order_type(&two_w, &sum(vec![NatOrd, NatOrd])),
            Equality::Equal
        );
        assert_eq!(eq_order_type(&Omega1, &RatOrd), Equality::NotEqual);
        assert_eq!(
            eq_order_type(&ULine, &sum(vec![Omega1Rev, Omega1])),
            Equality::Unknown
        );
    }

    #[test]
    fn ordinals_are_separated() {
        let a = sum(vec![NatOrd, Single]);
        let b = sum(vec![NatOrd, fin(2)]);
        assert_eq!(eq_order_type(&a, &b), Equality::NotEqual);
        assert_eq!(
            eq_order_type(&lex(NatOrd, NatOrd), &NatOrd),
            Equality::NotEqual
        );
    }
}
