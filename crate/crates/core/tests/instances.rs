//! Worked instances for each module, with expected values either taken
//! from the source results or recomputed here by independent means.

use std::cmp::Ordering;

use ordcond::points::{
    class_index, compare_points, interval_class, last_point, sample_points, Side,
};
use ordcond::term::{fin, lex, rev, sum};
use ordcond::{
    cantor_embed, cc, cc_ordinal, check_left_regular_band, check_semigroup, check_tfae,
    closure_table, embed_into_u, eq_order_type, glue, mul_omega, normalize, parse, profile,
    CardClass, Cnf, Cofinality, EmbedOutcome, Equality, Error, Level, OrderTerm, PointCode,
    Rational, UPoint,
};

use OrderTerm::*;

#[test]
fn parsing_and_normal_forms() {
    assert_eq!(parse("w1* + w1").unwrap(), sum(vec![Omega1Rev, Omega1]));
    assert_eq!(parse("rev(w)").unwrap(), NatOrdRev);
    // ω copies of 2 versus 2 copies of ω
    assert_eq!(parse("2 * w").unwrap(), sum(vec![NatOrd, NatOrd]));
    assert_eq!(normalize(&lex(fin(2), NatOrd)), sum(vec![NatOrd, NatOrd]));
    assert_eq!(normalize(&rev(ULine)), ULine);
    assert!(matches!(parse("w1 +"), Err(Error::Syntax { .. })));
}

#[test]
fn equality_verdicts() {
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
fn profiles() {
    let p = profile(&Omega1).unwrap();
    assert_eq!((p.card, p.cofin), (CardClass::Aleph1, Cofinality::Omega1));
    assert!(p.small_head.countable && !p.small_tail.countable);
    assert!(p.condenses_to_one.countable && p.right_identity.countable);
    let p = profile(&RatOrd).unwrap();
    assert_eq!(p.card, CardClass::Aleph0);
    assert!(p.condenses_to_one.countable && !p.right_identity.countable);
    assert!(
        !profile(&sum(vec![Omega1, Single]))
            .unwrap()
            .condenses_to_one
            .countable
    );

    let tfae = |t: OrderTerm| {
        let r = check_tfae(&t).unwrap();
        assert!(r.consistent);
        r.cardinality_condition
    };
    assert!(tfae(ULine));
    assert!(!tfae(RatOrd));
    assert!(!tfae(sum(vec![Omega1, Single])));
}

#[test]
fn condensation_instances() {
    let c = Level::Countable;
    let q = |t: OrderTerm, l| {
        let r = cc(&t, l).unwrap();
        (r.quotient, r.merge_left, r.merge_right)
    };
    assert_eq!(q(Omega1, c), (Single, true, false));
    assert_eq!(q(sum(vec![Omega1, Single]), c), (fin(2), true, true));
    assert_eq!(q(Omega2, c), (Omega2, true, false));
    assert_eq!(q(ULine, c), (Single, false, false));
    assert_eq!(q(sum(vec![Omega1Rev, Omega1]), c), (Single, false, false));
    assert_eq!(q(IntOrd, Level::Finite), (Single, false, false));

    assert_eq!(glue(&fin(3), &fin(2)).unwrap(), fin(4));
    assert_eq!(glue(&NatOrd, &fin(2)).unwrap(), NatOrd);
    assert_eq!(glue(&RatOrd, &fin(2)).unwrap(), lex(RatOrd, fin(2)));

    assert_eq!(cc_ordinal(&Cnf::one(), &Cnf::zero()), Cnf::one());
    assert_eq!(cc_ordinal(&Cnf::one(), &Cnf::one()), Cnf::nat(2));
}

#[test]
fn ordinal_quotient_against_the_point_oracle() {
    // ω₁·ω + 5: count the classes met by a walk over sampled points
    let t = normalize(&sum(vec![lex(NatOrd, Omega1), fin(5)]));
    let pts = sample_points(&t, 200, 5);
    let mut classes = 1;
    for w in pts.windows(2) {
        if !Level::Countable.is_small(interval_class(&t, &w[0], &w[1]).unwrap()) {
            classes += 1;
        }
    }
    // every sampled ω₁ block plus the final block of five points
    let blocks: std::collections::BTreeSet<_> = pts
        .iter()
        .filter_map(|p| match p {
            PointCode::Part(0, inner) => match &**inner {
                PointCode::Pair(n, _) => Some(format!("{n:?}")),
                _ => None,
            },
            _ => None,
        })
        .collect();
    assert_eq!(classes, blocks.len() + 1);
    assert_eq!(cc_ordinal(&Cnf::omega(), &Cnf::nat(5)), Cnf::omega().succ());
    assert_eq!(
        cc(&t, Level::Countable).unwrap().quotient,
        sum(vec![NatOrd, Single])
    );
}

#[test]
fn products_and_laws() {
    let w1p1 = sum(vec![Omega1, Single]);
    assert_eq!(mul_omega(&w1p1, &Omega1).unwrap(), w1p1);
    assert_eq!(mul_omega(&RatOrd, &IntOrd).unwrap(), Single);
    assert_eq!(mul_omega(&ULine, &RatOrd).unwrap(), Single);
    assert_eq!(mul_omega(&Omega1, &Omega1).unwrap(), Omega1);

    let band = check_left_regular_band(&[Omega1, Omega1Rev, ULine]).unwrap();
    assert!(band.passed() && band.unverified() == 0);
    assert!(check_left_regular_band(&[]).unwrap().passed());
    assert!(matches!(
        check_left_regular_band(&[Omega1, RatOrd]),
        Err(Error::InvalidSample(_))
    ));

    let s = check_semigroup(&[Omega1, RatOrd, ULine]).unwrap();
    assert!(s.passed());
    // the (S, X, S) pattern
    assert!(s.case_hits[2] > 0);
    assert!(check_semigroup(&[RatOrd, IntOrd, NatOrd]).unwrap().passed());
    assert!(matches!(
        check_semigroup(&[w1p1]),
        Err(Error::InvalidSample(_))
    ));

    let table = closure_table(&[RatOrd, Omega1], Level::Countable).unwrap();
    assert_eq!(
        table.cells,
        vec![vec![Single, RatOrd], vec![Single, Omega1]]
    );
    assert!(closure_table(&[], Level::Countable)
        .unwrap()
        .cells
        .is_empty());
    let gens = [Omega1, Omega1Rev, ULine];
    let table = closure_table(&gens, Level::Countable).unwrap();
    for (row, g) in table.cells.iter().zip(&gens) {
        assert!(row.iter().all(|cell| cell == g));
    }
}

#[test]
fn points_of_u_and_omega1() {
    let u = |side, i: u64, slot: Option<(i64, i64)>| {
        PointCode::U(match slot {
            None => UPoint::spine(side, Cnf::nat(i)),
            Some((n, d)) => UPoint::rational(side, Cnf::nat(i), Rational::new(n, d)),
        })
    };
    let cmp = |p, q| compare_points(&ULine, &p, &q).unwrap();
    assert_eq!(
        cmp(u(Side::Pos, 0, None), u(Side::Pos, 0, Some((1, 2)))),
        Ordering::Less
    );
    assert_eq!(
        cmp(u(Side::Neg, 1, None), u(Side::Neg, 0, None)),
        Ordering::Less
    );

    let zero = PointCode::Ord(Cnf::zero());
    let w = PointCode::Ord(Cnf::omega());
    assert_eq!(
        interval_class(&Omega1, &zero, &w).unwrap(),
        CardClass::Aleph0
    );
    assert_eq!(interval_class(&Omega1, &w, &w).unwrap(), CardClass::Fin(1));

    let t = sum(vec![Omega1, Single]);
    let first = ordcond::points::part(0, zero.clone());
    let last = last_point(&t).unwrap();
    assert_eq!(
        interval_class(&t, &first, &last).unwrap(),
        CardClass::Aleph1
    );
    let c = Level::Countable;
    // classes are addressed by frame codes: the 0th and 1st part of ω₁ + 1
    assert_eq!(
        class_index(&t, &first, c).unwrap(),
        ordcond::points::part(0, PointCode::Unit)
    );
    assert_eq!(
        class_index(&t, &last, c).unwrap(),
        ordcond::points::part(1, PointCode::Unit)
    );
    let p = PointCode::Ord2(Cnf::nat(3), Cnf::nat(17));
    assert_eq!(
        class_index(&Omega2, &p, c).unwrap(),
        PointCode::Ord2(Cnf::zero(), Cnf::nat(3))
    );
    assert_eq!(
        class_index(&RatOrd, &PointCode::Rat(Rational::integer(7)), c).unwrap(),
        PointCode::Unit
    );
}

#[test]
fn samples() {
    let s = sample_points(&fin(2), 10, 1);
    assert_eq!(s, vec![PointCode::Nat(0), PointCode::Nat(1)]);
    let s = sample_points(&Omega1, 4, 1);
    assert!(s.contains(&PointCode::Ord(Cnf::zero())));
    assert!(s
        .iter()
        .any(|p| matches!(p, PointCode::Ord(a) if a.is_limit())));
    let s = sample_points(&ULine, 6, 1);
    let has = |side, spine: bool| {
        s.iter().any(|p| matches!(p, PointCode::U(u) if u.side == side && (u.slot == ordcond::Slot::Spine) == spine))
    };
    assert!(has(Side::Neg, true) && has(Side::Mid, false) && has(Side::Pos, true));
}

#[test]
fn embeddings() {
    let v = cantor_embed(&[0, 1, 2], |a: &i32, b| a.cmp(b));
    assert!(v[0] < v[1] && v[1] < v[2]);
    assert!(cantor_embed(&[] as &[i32], |a, b| a.cmp(b)).is_empty());
    let zs: Vec<i64> = (0..100).map(|i| (i * 37) % 100 - 50).collect();
    let v = cantor_embed(&zs, |a, b| a.cmp(b));
    for i in 0..zs.len() {
        for j in 0..zs.len() {
            assert_eq!(zs[i].cmp(&zs[j]), v[i].cmp(&v[j]));
        }
    }

    let EmbedOutcome::Embedded(c) = embed_into_u(&Omega1, 500, 1).unwrap() else {
        panic!("ω₁ embeds");
    };
    assert!(c
        .spine
        .iter()
        .all(|e| e.target.side == Side::Pos && e.target.slot == ordcond::Slot::Spine));
    assert!(matches!(
        embed_into_u(&sum(vec![Omega1, Single]), 500, 1).unwrap(),
        EmbedOutcome::NotEmbeddable(_)
    ));
    assert!(matches!(
        embed_into_u(&Omega2, 500, 1).unwrap(),
        EmbedOutcome::NotEmbeddable(_)
    ));
    let EmbedOutcome::Embedded(c) = embed_into_u(&RatOrd, 500, 1).unwrap() else {
        panic!("η embeds");
    };
    assert_eq!(c.gaps.len(), 1);
    assert_eq!(c.gaps[0].side, Side::Mid);
}
