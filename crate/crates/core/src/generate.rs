//! Term generators for exhaustive and seeded random testing.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use rand::Rng;

use crate::term::{fin, lex, normalize, rev, OrderTerm};

/// The generating atoms: 1, 2, ω, ω*, ζ, η, ω₁, ω₁*, U, ω₂.
pub fn atoms() -> Vec<OrderTerm> {
    use OrderTerm::*;
    alloc::vec![
        Single,
        fin(2),
        NatOrd,
        NatOrdRev,
        IntOrd,
        RatOrd,
        Omega1,
        Omega1Rev,
        ULine,
        Omega2,
    ]
}

/// All distinct normal forms of depth at most `depth`.
///
/// Depth 0 is the atoms. A term of depth `d + 1` is `rev(x)`, `x + a`,
/// `a + x`, `x * a` or `a * x` with `x` of depth `d` and `a` an atom. The
/// result is sorted.
pub fn enumerate(depth: u32) -> Vec<OrderTerm> {
    let atoms = atoms();
    let mut all: BTreeSet<OrderTerm> = atoms.iter().cloned().collect();
    let mut frontier: Vec<OrderTerm> = all.iter().cloned().collect();
    for _ in 0..depth {
        let mut next = Vec::new();
        for x in &frontier {
            let mut candidates = alloc::vec![rev(x.clone())];
            for a in &atoms {
                candidates.push(OrderTerm::Sum(alloc::vec![x.clone(), a.clone()]));
                candidates.push(OrderTerm::Sum(alloc::vec![a.clone(), x.clone()]));
                candidates.push(lex(x.clone(), a.clone()));
                candidates.push(lex(a.clone(), x.clone()));
            }
            for c in candidates {
                let n = normalize(&c);
                if all.insert(n.clone()) {
                    next.push(n);
                }
            }
        }
        frontier = next;
    }
    all.into_iter().collect()
}

/// A random normalized term whose expression tree has depth at most `depth`.
pub fn random_term<R: Rng + ?Sized>(rng: &mut R, depth: u32) -> OrderTerm {
    normalize(&random_expr(rng, depth))
}

fn random_expr<R: Rng + ?Sized>(rng: &mut R, depth: u32) -> OrderTerm {
    let atoms = atoms();
    if depth == 0 || rng.random_bool(0.3) {
        return atoms[rng.random_range(0..atoms.len())].clone();
    }
    match rng.random_range(0..5u32) {
        0 => rev(random_expr(rng, depth - 1)),
        1 | 2 => OrderTerm::Sum(alloc::vec![
            random_expr(rng, depth - 1),
            random_expr(rng, depth - 1)
        ]),
        _ => lex(random_expr(rng, depth - 1), random_expr(rng, depth - 1)),
    }
}

/// Random normalized ordinal terms (finite chains, ω, ω₁, ω₂ under `+` and
/// products).
pub fn random_ordinal<R: Rng + ?Sized>(rng: &mut R, depth: u32) -> OrderTerm {
    use OrderTerm::*;
    let t = if depth == 0 || rng.random_bool(0.3) {
        match rng.random_range(0..6u32) {
            0 => fin(rng.random_range(1..5)),
            1 | 2 => NatOrd,
            3 | 4 => Omega1,
            _ => Omega2,
        }
    } else if rng.random_bool(0.5) {
        Sum(alloc::vec![
            random_ordinal(rng, depth - 1),
            random_ordinal(rng, depth - 1)
        ])
    } else {
        lex(
            random_ordinal(rng, depth - 1),
            random_ordinal(rng, depth - 1),
        )
    };
    normalize(&t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn enumeration_is_normalized_and_deduplicated() {
        let terms = enumerate(1);
        assert!(terms.len() > atoms().len());
        for t in &terms {
            assert_eq!(normalize(t), *t);
        }
        let set: BTreeSet<_> = terms.iter().collect();
        assert_eq!(set.len(), terms.len());
    }

    #[test]
    fn random_terms_are_reproducible() {
        let mut a = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut b = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            assert_eq!(random_term(&mut a, 3), random_term(&mut b, 3));
            let x = random_ordinal(&mut a, 3);
            assert!(x.is_ordinal());
            assert_eq!(x, random_ordinal(&mut b, 3));
        }
    }
}
