//! Acceptance suite. Runs every criterion, prints one line each and exits
//! non-zero if any failed.

use std::cmp::Ordering;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use ordcond::generate::{enumerate, random_ordinal};
use ordcond::points::{class_frame, interval_class, sample_points};
use ordcond::term::{fin, lex, rev, sum};
use ordcond::{
    cantor_embed, cc, check_left_regular_band, check_semigroup, check_tfae, embed_into_u,
    eq_order_type, mul_finite, mul_omega, normalize, profile, EmbedOutcome, Equality, Level,
    OrderTerm,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use OrderTerm::*;

type Criterion = (&'static str, fn() -> Outcome, Duration);

struct Outcome {
    detail: String,
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Outcome {
        Outcome {
            detail: String::new(),
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }
}

fn terms_to(depth: u32) -> Vec<OrderTerm> {
    let mut all: Vec<OrderTerm> = (0..=depth).flat_map(enumerate).collect();
    all.sort();
    all.dedup();
    all
}

fn catalog() -> Vec<OrderTerm> {
    vec![
        Single,
        fin(2),
        fin(5),
        NatOrd,
        NatOrdRev,
        IntOrd,
        RatOrd,
        Omega1,
        Omega1Rev,
        Omega2,
        Omega2Rev,
        ULine,
        sum(vec![NatOrd, Single]),
        sum(vec![Omega1, Single]),
        sum(vec![Omega1Rev, Omega1]),
        sum(vec![RatOrd, Omega1]),
        lex(NatOrd, NatOrd),
        lex(Omega1, IntOrd),
        lex(RatOrd, fin(2)),
        lex(IntOrd, Omega1),
        sum(vec![Omega2, RatOrd, NatOrdRev]),
        lex(ULine, NatOrd),
    ]
}

fn reference_instances() -> Outcome {
    let mut o = Outcome::new();
    let c = Level::Countable;
    let cases = [
        (Omega1, c, Single),
        (sum(vec![Omega1, Single]), c, fin(2)),
        (Omega2, c, Omega2),
        (ULine, c, Single),
        (IntOrd, Level::Finite, Single),
    ];
    for (t, level, want) in &cases {
        let got = cc(t, *level).unwrap().quotient;
        o.check(got == *want, || {
            format!("{t} at {level}: got {got}, want {want}")
        });
    }
    let ms = catalog();
    for m in ms.iter().take(10) {
        let got = mul_finite(m, &NatOrd).unwrap();
        o.check(eq_order_type(&got, m) == Equality::Equal, || {
            format!("mulF({m}, w) = {got}")
        });
    }
    o.detail = format!("{} quotients, 10 finite-level products", cases.len());
    o
}

fn absorption() -> Outcome {
    let mut o = Outcome::new();
    let ls = [
        Omega1,
        Omega1Rev,
        ULine,
        sum(vec![Omega1Rev, Omega1]),
        sum(vec![Omega1Rev, RatOrd]),
        sum(vec![RatOrd, Omega1]),
    ];
    let ms = catalog();
    for m in &ms {
        for l in &ls {
            let got = mul_omega(m, l).unwrap();
            let verdict = eq_order_type(&got, m);
            o.check(verdict == Equality::Equal, || {
                format!("mulw({m}, {l}) = {got}: {verdict:?}")
            });
        }
    }
    o.detail = format!("{} M x {} L", ms.len(), ls.len());
    o
}

fn tfae() -> Outcome {
    let mut o = Outcome::new();
    let terms = terms_to(3);
    let mut right_identities = 0;
    for t in &terms {
        let r = check_tfae(t).unwrap();
        right_identities += r.cardinality_condition as usize;
        o.check(r.consistent, || format!("{t}: {r:?}"));
    }
    o.detail = format!("{} terms, {right_identities} right identities", terms.len());
    o
}

fn oracle_agreement() -> Outcome {
    let mut o = Outcome::new();
    let terms = terms_to(2);
    let mut pairs_checked = 0usize;
    for (n, t) in terms.iter().enumerate() {
        let points = sample_points(t, 48, n as u64);
        if points.len() < 2 {
            continue;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        let mut pairs: Vec<(usize, usize)> = (1..points.len()).map(|i| (i - 1, i)).collect();
        while pairs.len() < 1000 {
            pairs.push((
                rng.random_range(0..points.len()),
                rng.random_range(0..points.len()),
            ));
        }
        for level in Level::BOTH {
            let frame = class_frame(t, level).unwrap();
            let classes: Vec<_> = points.iter().map(|p| frame.index(p).unwrap()).collect();
            for &(i, j) in &pairs {
                let small = level.is_small(interval_class(t, &points[i], &points[j]).unwrap());
                let same = classes[i] == classes[j];
                pairs_checked += 1;
                o.check(small == same, || {
                    format!(
                        "{t} at {level}: {:?} {:?} small={small} same={same}",
                        points[i], points[j]
                    )
                });
            }
        }
    }
    o.detail = format!("{} terms, {pairs_checked} pair checks", terms.len());
    o
}

fn band() -> Outcome {
    let mut o = Outcome::new();
    let sample: Vec<OrderTerm> = terms_to(1)
        .into_iter()
        .filter(|t| profile(t).unwrap().right_identity.countable)
        .take(12)
        .collect();
    o.check(sample.len() >= 10, || {
        format!("only {} right identities", sample.len())
    });
    let report = check_left_regular_band(&sample).unwrap();
    for c in &report.checks {
        o.check(c.passed(), || {
            format!(
                "{}: {} refuted, {} unknown",
                c.name,
                c.refuted.len(),
                c.unverified.len()
            )
        });
    }
    o.detail = format!("{} right identities", sample.len());
    o
}

fn semigroup() -> Outcome {
    let mut o = Outcome::new();
    let sample = vec![
        Single,
        NatOrd,
        IntOrd,
        RatOrd,
        sum(vec![NatOrdRev, RatOrd]),
        Omega1,
        Omega1Rev,
        ULine,
        sum(vec![Omega1Rev, Omega1]),
        lex(Omega1, IntOrd),
    ];
    let report = check_semigroup(&sample).unwrap();
    for c in &report.checks {
        o.check(c.passed(), || {
            format!(
                "{}: {} refuted, {} unknown",
                c.name,
                c.refuted.len(),
                c.unverified.len()
            )
        });
    }
    o.check(report.all_cases_hit(), || {
        format!("cases hit {:?}", report.case_hits)
    });
    o.detail = format!("{} terms, case hits {:?}", sample.len(), report.case_hits);
    o
}

fn monotonicity() -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut pairs = 0;
    while pairs < 100 {
        let a = normalize(&random_ordinal(&mut rng, 3));
        let b = normalize(&random_ordinal(&mut rng, 3));
        let (va, vb) = (a.ordinal_value().unwrap(), b.ordinal_value().unwrap());
        let (a, b) = match va.cmp(&vb) {
            Ordering::Less => (a, b),
            Ordering::Greater => (b, a),
            Ordering::Equal => continue,
        };
        pairs += 1;
        let qa = cc(&a, Level::Countable).unwrap().quotient.ordinal_value();
        let qb = cc(&b, Level::Countable).unwrap().quotient.ordinal_value();
        match (qa, qb) {
            (Some(qa), Some(qb)) => {
                o.check(qa <= qb, || format!("{a} < {b} but quotients {qa} > {qb}"))
            }
            _ => o.check(false, || {
                format!("quotient of {a} or {b} is not an ordinal")
            }),
        }
    }
    o.detail = format!("{pairs} ordinal pairs");
    o
}

fn duality() -> Outcome {
    let mut o = Outcome::new();
    let terms = terms_to(3);
    for t in &terms {
        for level in Level::BOTH {
            let r = cc(t, level).unwrap();
            let d = cc(&rev(t.clone()), level).unwrap();
            let want = normalize(&rev(r.quotient.clone()));
            let ok = d.quotient == want
                && d.merge_left == r.merge_right
                && d.merge_right == r.merge_left;
            o.check(ok, || format!("{t} at {level}: {r:?} vs reversed {d:?}"));
        }
    }
    o.detail = format!("{} terms, both levels", terms.len());
    o
}

fn cantor() -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for round in 0..100 {
        let n = rng.random_range(1..=200);
        let mut items: Vec<u32> = (0..n).map(|_| rng.random_range(0..1_000_000)).collect();
        items.sort();
        items.dedup();
        items.shuffle(&mut rng);
        let values = cantor_embed(&items, |a, b| a.cmp(b));
        for i in 0..items.len() {
            for j in 0..items.len() {
                let ok = items[i].cmp(&items[j]) == values[i].cmp(&values[j]);
                o.check(ok, || {
                    format!("round {round}: {} vs {}", items[i], items[j])
                });
            }
        }
    }
    o.detail = "100 orders of size <= 200".into();
    o
}

fn universality() -> Outcome {
    let mut o = Outcome::new();
    let terms = terms_to(2);
    let (mut embedded, mut rejected) = (0, 0);
    for (n, t) in terms.iter().enumerate() {
        let one = cc(t, Level::Countable).unwrap().quotient == Single;
        match embed_into_u(t, 500, n as u64) {
            Ok(EmbedOutcome::Embedded(c)) => {
                embedded += 1;
                o.check(one, || format!("{t} embedded but does not condense to 1"));
                o.check(c.verified_pairs >= 500, || {
                    format!("{t}: {} pairs", c.verified_pairs)
                });
            }
            Ok(EmbedOutcome::NotEmbeddable(_)) => {
                rejected += 1;
                o.check(!one, || format!("{t} condenses to 1 but was rejected"));
            }
            Err(e) => o.check(false, || format!("{t}: {e}")),
        }
    }
    o.detail = format!("{embedded} embedded, {rejected} rejected");
    o
}

fn finite_right_identities() -> Outcome {
    let mut o = Outcome::new();
    let terms = terms_to(2);
    let mut hits = 0;
    for t in &terms {
        let ri = profile(t).unwrap().right_identity.finite;
        let verdicts: Vec<Equality> = [NatOrd, NatOrdRev, IntOrd]
            .iter()
            .map(|r| eq_order_type(t, r))
            .collect();
        let unknown = verdicts.contains(&Equality::Unknown);
        let listed = verdicts.contains(&Equality::Equal);
        hits += ri as usize;
        o.check(!unknown && ri == listed, || {
            format!("{t}: rightIdentity={ri}, {verdicts:?}")
        });
    }
    o.detail = format!("{} terms, {hits} right identities", terms.len());
    o
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("reference instances", reference_instances, Duration::from_secs(1)),
        (
            "right-identity absorption",
            absorption,
            Duration::from_secs(5),
        ),
        ("TFAE consistency to depth 3", tfae, Duration::from_secs(10)),
        (
            "oracle agreement to depth 2",
            oracle_agreement,
            Duration::from_secs(60),
        ),
        ("left-regular band laws", band, Duration::from_secs(5)),
        (
            "semigroup laws, all 8 cases",
            semigroup,
            Duration::from_secs(5),
        ),
        ("ordinal monotonicity", monotonicity, Duration::MAX),
        ("duality to depth 3", duality, Duration::MAX),
        ("Cantor embedding", cantor, Duration::MAX),
        ("universality of U to depth 2", universality, Duration::MAX),
        (
            "finite-level right identities",
            finite_right_identities,
            Duration::MAX,
        ),
    ];
    let mut failed = 0;
    let suite = Instant::now();
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let slow = elapsed > *limit;
        let ok = outcome.failures.is_empty() && !slow;
        failed += !ok as usize;
        println!(
            "{} {:>2}. {name}: {} ({:.2?})",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            outcome.detail,
            elapsed
        );
        for f in outcome.failures.iter().take(5) {
            println!("       {f}");
        }
        if outcome.failures.len() > 5 {
            println!("       ... {} more", outcome.failures.len() - 5);
        }
        if slow {
            println!("       over the {limit:?} limit");
        }
    }
    println!(
        "acceptance: {} of 11 passed in {:.2?}",
        11 - failed,
        suite.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
