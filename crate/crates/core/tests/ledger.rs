//! The rule ledger in `data/rules.tsv` documents every rule the engine can
//! report, and every rule fires somewhere in the generated corpus.

use std::collections::BTreeSet;

use ordcond::condense::cc_with_rule;
use ordcond::generate::enumerate;
use ordcond::rules::{Rule, REWRITE_IDS};
use ordcond::Level;

fn ledger_ids() -> BTreeSet<String> {
    let text = include_str!("../data/rules.tsv");
    let mut rows = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty());
    let header = rows.next().expect("header row");
    assert_eq!(
        header.split('\t').collect::<Vec<_>>(),
        ["id", "kind", "statement", "justification"]
    );
    rows.map(|r| {
        let cols: Vec<&str> = r.split('\t').collect();
        assert_eq!(cols.len(), 4, "malformed row {r}");
        assert!(!cols[2].is_empty() && !cols[3].is_empty());
        cols[0].to_string()
    })
    .collect()
}

#[test]
fn every_rule_has_a_ledger_row() {
    let ids = ledger_ids();
    for rule in Rule::ALL {
        assert!(ids.contains(rule.id()), "{} missing", rule.id());
    }
    for id in REWRITE_IDS {
        assert!(ids.contains(id), "{id} missing");
    }
    assert_eq!(ids.len(), Rule::ALL.len() + REWRITE_IDS.len());
}

#[test]
fn every_rule_fires() {
    let mut seen = BTreeSet::new();
    for t in enumerate(2) {
        for level in Level::BOTH {
            seen.insert(cc_with_rule(&t, level).unwrap().1.id());
        }
    }
    for rule in Rule::ALL {
        assert!(seen.contains(rule.id()), "{} never fires", rule.id());
    }
}
