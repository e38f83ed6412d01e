//! Rule identifiers and the atom attribute table.
//!
//! The table is generated at build time from `data/atoms.tsv`; the rule
//! ledger `data/rules.tsv` documents every [`Rule`] and normalization
//! rewrite and is checked against this module by the test suite.

use crate::classify::{CardClass, Cofinality, Level};
use crate::term::OrderTerm;

/// The infinite atoms of the term language.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Atom {
    Nat,
    NatRev,
    Int,
    Rat,
    Omega1,
    Omega1Rev,
    Omega2,
    Omega2Rev,
    ULine,
}

impl Atom {
    pub const ALL: [Atom; 9] = [
        Atom::Nat,
        Atom::NatRev,
        Atom::Int,
        Atom::Rat,
        Atom::Omega1,
        Atom::Omega1Rev,
        Atom::Omega2,
        Atom::Omega2Rev,
        Atom::ULine,
    ];

    pub fn of(t: &OrderTerm) -> Option<Atom> {
        Some(match t {
            OrderTerm::NatOrd => Atom::Nat,
            OrderTerm::NatOrdRev => Atom::NatRev,
            OrderTerm::IntOrd => Atom::Int,
            OrderTerm::RatOrd => Atom::Rat,
            OrderTerm::Omega1 => Atom::Omega1,
            OrderTerm::Omega1Rev => Atom::Omega1Rev,
            OrderTerm::Omega2 => Atom::Omega2,
            OrderTerm::Omega2Rev => Atom::Omega2Rev,
            OrderTerm::ULine => Atom::ULine,
            _ => return None,
        })
    }

    pub fn term(self) -> OrderTerm {
        match self {
            Atom::Nat => OrderTerm::NatOrd,
            Atom::NatRev => OrderTerm::NatOrdRev,
            Atom::Int => OrderTerm::IntOrd,
            Atom::Rat => OrderTerm::RatOrd,
            Atom::Omega1 => OrderTerm::Omega1,
            Atom::Omega1Rev => OrderTerm::Omega1Rev,
            Atom::Omega2 => OrderTerm::Omega2,
            Atom::Omega2Rev => OrderTerm::Omega2Rev,
            Atom::ULine => OrderTerm::ULine,
        }
    }
}

/// One row of `data/atoms.tsv`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct AtomRow {
    pub atom: Atom,
    pub level: Level,
    pub card: CardClass,
    pub cofin: Cofinality,
    pub coin: Cofinality,
    pub has_first: bool,
    pub has_last: bool,
    pub small_head: bool,
    pub small_tail: bool,
    /// The quotient is the atom itself rather than `1`.
    pub quotient_is_self: bool,
    pub merge_left: bool,
    pub merge_right: bool,
}

include!(concat!(env!("OUT_DIR"), "/atom_table.rs"));

pub fn atom_row(atom: Atom, level: Level) -> &'static AtomRow {
    ATOM_TABLE
        .iter()
        .find(|r| r.atom == atom && r.level == level)
        .expect("atom table covers every atom at every level")
}

/// Condensation rules, in the order they are tried.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Rule {
    Small,
    Atom,
    Sum,
    SmallInner,
    RightIdentityInner,
    Classes,
    Ordinal,
}

impl Rule {
    pub const ALL: [Rule; 7] = [
        Rule::Small,
        Rule::Atom,
        Rule::Sum,
        Rule::SmallInner,
        Rule::RightIdentityInner,
        Rule::Classes,
        Rule::Ordinal,
    ];

    /// Identifier used in the rule ledger.
    pub fn id(self) -> &'static str {
        match self {
            Rule::Small => "R1",
            Rule::Atom => "R2",
            Rule::Sum => "R3",
            Rule::SmallInner => "R4",
            Rule::RightIdentityInner => "R5",
            Rule::Classes => "R6",
            Rule::Ordinal => "R7",
        }
    }
}

/// Identifiers of the normalization rewrites documented in the ledger.
pub const REWRITE_IDS: [&str; 8] = ["N1", "N2", "N3", "N4", "N5", "N6", "N7", "N8"];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_is_complete_and_consistent() {
        assert_eq!(ATOM_TABLE.len(), 18);
        for atom in Atom::ALL {
            let f = atom_row(atom, Level::Finite);
            let c = atom_row(atom, Level::Countable);
            assert_eq!(Atom::of(&atom.term()), Some(atom));
            assert_eq!((f.card, f.cofin, f.coin), (c.card, c.cofin, c.coin));
            assert_eq!((f.has_first, f.has_last), (c.has_first, c.has_last));
            assert_eq!(atom.term().has_first(), f.has_first);
            assert_eq!(atom.term().has_last(), f.has_last);
        }
    }
}
