//! Multiplication modulo a condensation and algebraic-law checks.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::classify::{profile, Level};
use crate::condense::cc;
use crate::equality::{eq_order_type, Equality};
use crate::term::{lex, normalize, OrderTerm};
use crate::{Error, Result};

/// `M ·_level L`: the quotient of `M` copies of `L`.
pub fn multiply(m: &OrderTerm, l: &OrderTerm, level: Level) -> Result<OrderTerm> {
    let product = normalize(&lex(m.clone(), l.clone()));
    Ok(cc(&product, level)?.quotient)
}

pub fn mul_omega(m: &OrderTerm, l: &OrderTerm) -> Result<OrderTerm> {
    multiply(m, l, Level::Countable)
}

pub fn mul_finite(m: &OrderTerm, l: &OrderTerm) -> Result<OrderTerm> {
    multiply(m, l, Level::Finite)
}

/// Inputs of a failed or undecided trial with both sides of the law.
#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Counterexample {
    pub inputs: Vec<OrderTerm>,
    pub lhs: OrderTerm,
    pub rhs: OrderTerm,
}

/// Outcome of one law over all trials. `refuted` trials compare
/// `NotEqual`; `unverified` ones compare `Unknown`.
#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct LawCheck {
    pub name: &'static str,
    pub trials: usize,
    pub refuted: Vec<Counterexample>,
    pub unverified: Vec<Counterexample>,
}

impl LawCheck {
    fn new(name: &'static str) -> LawCheck {
        LawCheck {
            name,
            trials: 0,
            refuted: Vec::new(),
            unverified: Vec::new(),
        }
    }

    fn record(&mut self, inputs: &[&OrderTerm], lhs: OrderTerm, rhs: OrderTerm) {
        self.trials += 1;
        let verdict = eq_order_type(&lhs, &rhs);
        let cx = || Counterexample {
            inputs: inputs.iter().map(|t| (*t).clone()).collect(),
            lhs: lhs.clone(),
            rhs: rhs.clone(),
        };
        match verdict {
            Equality::Equal => {}
            Equality::NotEqual => self.refuted.push(cx()),
            Equality::Unknown => self.unverified.push(cx()),
        }
    }

    /// Records a membership test; a failure is reported with the product
    /// on both sides.
    fn record_membership(&mut self, inputs: &[&OrderTerm], product: OrderTerm, holds: bool) {
        self.trials += 1;
        if !holds {
            self.refuted.push(Counterexample {
                inputs: inputs.iter().map(|t| (*t).clone()).collect(),
                lhs: product.clone(),
                rhs: product,
            });
        }
    }

    pub fn passed(&self) -> bool {
        self.refuted.is_empty()
    }
}

/// Membership pattern of a triple in the semigroup check: `S` for right
/// identities, `X` for the other orders condensing to 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum SemigroupCase {
    Sss,
    Ssx,
    Sxs,
    Xss,
    Sxx,
    Xsx,
    Xxs,
    Xxx,
}

impl SemigroupCase {
    pub const ALL: [SemigroupCase; 8] = [
        SemigroupCase::Sss,
        SemigroupCase::Ssx,
        SemigroupCase::Sxs,
        SemigroupCase::Xss,
        SemigroupCase::Sxx,
        SemigroupCase::Xsx,
        SemigroupCase::Xxs,
        SemigroupCase::Xxx,
    ];

    pub fn of(s: [bool; 3]) -> SemigroupCase {
        use SemigroupCase::*;
        match s {
            [true, true, true] => Sss,
            [true, true, false] => Ssx,
            [true, false, true] => Sxs,
            [false, true, true] => Xss,
            [true, false, false] => Sxx,
            [false, true, false] => Xsx,
            [false, false, true] => Xxs,
            [false, false, false] => Xxx,
        }
    }

    /// 1-based case number, `Sss` = 1 through `Xxx` = 8.
    pub fn number(self) -> usize {
        SemigroupCase::ALL.iter().position(|c| *c == self).unwrap() + 1
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct LawReport {
    pub structure: &'static str,
    pub sample: Vec<OrderTerm>,
    pub sample_description: String,
    pub checks: Vec<LawCheck>,
    /// Triples per membership case, indexed by `SemigroupCase::number() - 1`;
    /// empty for the band check.
    pub case_hits: Vec<usize>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(LawCheck::passed)
    }

    pub fn unverified(&self) -> usize {
        self.checks.iter().map(|c| c.unverified.len()).sum()
    }

    pub fn all_cases_hit(&self) -> bool {
        self.case_hits.len() == 8 && self.case_hits.iter().all(|&n| n > 0)
    }
}

fn describe(sample: &[OrderTerm]) -> String {
    let names: Vec<String> = sample.iter().map(|t| format!("{t}")).collect();
    format!("{} terms: {}", sample.len(), names.join(", "))
}

/// Checks closure, idempotence, associativity and `xyx = xy` for `·_ω` on
/// a sample of right identities.
pub fn check_left_regular_band(sample: &[OrderTerm]) -> Result<LawReport> {
    let sample: Vec<OrderTerm> = sample.iter().map(normalize).collect();
    for t in &sample {
        if !profile(t)?.right_identity.countable {
            return Err(Error::InvalidSample(format!("{t} is not a right identity")));
        }
    }
    let n = sample.len();
    let mut table = vec![vec![OrderTerm::Empty; n]; n];
    let mut closure = LawCheck::new("closure");
    let mut idempotence = LawCheck::new("idempotence");
    let mut assoc = LawCheck::new("associativity");
    let mut regular = LawCheck::new("xyx = xy");
    for (i, x) in sample.iter().enumerate() {
        for (j, y) in sample.iter().enumerate() {
            let p = mul_omega(x, y)?;
            let ok = profile(&p)?.right_identity.countable;
            closure.record_membership(&[x, y], p.clone(), ok);
            table[i][j] = p;
        }
        idempotence.record(&[x], table[i][i].clone(), x.clone());
    }
    for (i, x) in sample.iter().enumerate() {
        for (j, y) in sample.iter().enumerate() {
            regular.record(&[x, y], mul_omega(&table[i][j], x)?, table[i][j].clone());
            for (k, z) in sample.iter().enumerate() {
                let lhs = mul_omega(&table[i][j], z)?;
                let rhs = mul_omega(x, &table[j][k])?;
                assoc.record(&[x, y, z], lhs, rhs);
            }
        }
    }
    Ok(LawReport {
        structure: "left-regular band",
        sample_description: describe(&sample),
        sample,
        checks: vec![closure, idempotence, assoc, regular],
        case_hits: Vec::new(),
    })
}

/// Checks closure and associativity of `·_ω` on orders condensing to 1,
/// recording which membership case each triple falls in.
pub fn check_semigroup(sample: &[OrderTerm]) -> Result<LawReport> {
    let sample: Vec<OrderTerm> = sample.iter().map(normalize).collect();
    let mut in_s = Vec::with_capacity(sample.len());
    for t in &sample {
        let p = profile(t)?;
        if !p.condenses_to_one.countable {
            return Err(Error::InvalidSample(format!("{t} does not condense to 1")));
        }
        in_s.push(p.right_identity.countable);
    }
    let n = sample.len();
    let mut table = vec![vec![OrderTerm::Empty; n]; n];
    let mut closure = LawCheck::new("closure");
    let mut assoc = LawCheck::new("associativity");
    let mut case_hits = vec![0; 8];
    for (i, x) in sample.iter().enumerate() {
        for (j, y) in sample.iter().enumerate() {
            let p = mul_omega(x, y)?;
            let ok = profile(&p)?.condenses_to_one.countable;
            closure.record_membership(&[x, y], p.clone(), ok);
            table[i][j] = p;
        }
    }
    for (i, x) in sample.iter().enumerate() {
        for (j, y) in sample.iter().enumerate() {
            for (k, z) in sample.iter().enumerate() {
                case_hits[SemigroupCase::of([in_s[i], in_s[j], in_s[k]]).number() - 1] += 1;
                let lhs = mul_omega(&table[i][j], z)?;
                let rhs = mul_omega(x, &table[j][k])?;
                assoc.record(&[x, y, z], lhs, rhs);
            }
        }
    }
    Ok(LawReport {
        structure: "semigroup",
        sample_description: describe(&sample),
        sample,
        checks: vec![closure, assoc],
        case_hits,
    })
}

/// Full product table over the generators; `cells[i][j]` is
/// `gens[i] · gens[j]`.
#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ProductTable {
    pub level: Level,
    pub generators: Vec<OrderTerm>,
    pub cells: Vec<Vec<OrderTerm>>,
}

pub fn closure_table(gens: &[OrderTerm], level: Level) -> Result<ProductTable> {
    let generators: Vec<OrderTerm> = gens.iter().map(normalize).collect();
    for g in &generators {
        if cc(g, level)?.quotient != OrderTerm::Single {
            return Err(Error::InvalidSample(format!(
                "{g} does not condense to 1 at the {level} level"
            )));
        }
    }
    let cells = generators
        .iter()
        .map(|x| generators.iter().map(|y| multiply(x, y, level)).collect())
        .collect::<Result<_>>()?;
    Ok(ProductTable {
        level,
        generators,
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::{fin, sum};
    use OrderTerm::*;

    #[test]
    fn products() {
        let w1_plus_1 = sum(vec![Omega1, Single]);
        assert_eq!(mul_omega(&w1_plus_1, &Omega1).unwrap(), w1_plus_1);
        assert_eq!(mul_omega(&RatOrd, &IntOrd).unwrap(), Single);
        assert_eq!(mul_omega(&ULine, &RatOrd).unwrap(), Single);
        assert_eq!(mul_omega(&Omega1, &Omega1).unwrap(), Omega1);
        assert_eq!(mul_finite(&fin(3), &NatOrd).unwrap(), fin(3));
    }

    #[test]
    fn band() {
        let r = check_left_regular_band(&[Omega1, Omega1Rev, ULine]).unwrap();
        assert!(r.passed());
        assert_eq!(r.unverified(), 0);
        assert!(check_left_regular_band(&[]).unwrap().passed());
        assert!(matches!(
            check_left_regular_band(&[Omega1, RatOrd]),
            Err(Error::InvalidSample(_))
        ));
    }

    #[test]
    fn semigroup() {
        let r = check_semigroup(&[Omega1, RatOrd, ULine]).unwrap();
        assert!(r.passed());
        assert!(r.case_hits[SemigroupCase::Sxs.number() - 1] > 0);
        let r = check_semigroup(&[RatOrd, IntOrd, NatOrd]).unwrap();
        assert!(r.passed());
        assert_eq!(r.case_hits[7], 27);
        assert!(check_semigroup(&[sum(vec![Omega1, Single])]).is_err());
    }

    #[test]
    fn tables() {
        let t = closure_table(&[RatOrd, Omega1], Level::Countable).unwrap();
        assert_eq!(t.cells, vec![vec![Single, RatOrd], vec![Single, Omega1]]);
        assert!(closure_table(&[], Level::Countable)
            .unwrap()
            .cells
            .is_empty());
        let gens = [Omega1, Omega1Rev, ULine];
        let t = closure_table(&gens, Level::Countable).unwrap();
        for (i, row) in t.cells.iter().enumerate() {
            assert!(row.iter().all(|c| *c == gens[i]));
        }
    }
}
