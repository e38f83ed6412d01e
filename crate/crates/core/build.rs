use std::fmt::Write as _;
use std::path::PathBuf;
use std::{env, fs};

fn rows(path: &str) -> Vec<Vec<String>> {
    let text = fs::read_to_string(path).unwrap_or_else(|e| panic!("reading {path}: {e}"));
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split('\t').map(str::to_owned).collect())
        .collect()
}

fn atom(name: &str) -> &'static str {
    match name {
        "w" => "Atom::Nat",
        "w*" => "Atom::NatRev",
        "z" => "Atom::Int",
        "q" => "Atom::Rat",
        "w1" => "Atom::Omega1",
        "w1*" => "Atom::Omega1Rev",
        "w2" => "Atom::Omega2",
        "rev(w2)" => "Atom::Omega2Rev",
        "U" => "Atom::ULine",
        other => panic!("unknown atom {other}"),
    }
}

fn level(name: &str) -> &'static str {
    match name {
        "finite" => "Level::Finite",
        "countable" => "Level::Countable",
        other => panic!("unknown level {other}"),
    }
}

fn card(name: &str) -> &'static str {
    match name {
        "aleph0" => "CardClass::Aleph0",
        "aleph1" => "CardClass::Aleph1",
        "aleph2" => "CardClass::Aleph2Plus",
        other => panic!("unknown cardinality {other}"),
    }
}

fn cofinality(name: &str) -> &'static str {
    match name {
        "one" => "Cofinality::One",
        "omega" => "Cofinality::Omega",
        "omega1" => "Cofinality::Omega1",
        "omega2" => "Cofinality::Omega2",
        other => panic!("unknown cofinality {other}"),
    }
}

fn flag(name: &str) -> bool {
    match name {
        "yes" => true,
        "no" => false,
        other => panic!("expected yes/no, got {other}"),
    }
}

fn main() {
    println!("cargo::rerun-if-changed=data/atoms.tsv");
    let mut out = String::from("pub static ATOM_TABLE: &[AtomRow] = &[\n");
    for r in rows("data/atoms.tsv") {
        assert_eq!(r.len(), 13, "malformed row {r:?}");
        let quotient_is_self = match r[9].as_str() {
            "1" => false,
            "self" => true,
            other => panic!("unknown quotient {other}"),
        };
        writeln!(
            out,
            "    AtomRow {{ atom: {}, level: {}, card: {}, cofin: {}, coin: {}, has_first: {}, \
             has_last: {}, small_head: {}, small_tail: {}, quotient_is_self: {}, \
             merge_left: {}, merge_right: {} }},",
            atom(&r[0]),
            level(&r[1]),
            card(&r[2]),
            cofinality(&r[3]),
            cofinality(&r[4]),
            flag(&r[5]),
            flag(&r[6]),
            flag(&r[7]),
            flag(&r[8]),
            quotient_is_self,
            flag(&r[10]),
            flag(&r[11]),
        )
        .unwrap();
    }
    out.push_str("];\n");
    let dest = PathBuf::from(env::var("OUT_DIR").unwrap()).join("atom_table.rs");
    fs::write(dest, out).unwrap();
}
