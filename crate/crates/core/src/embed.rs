//! Embeddings into ℚ and into the ω₁-lengthened rational line U.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::{shape, Level};
use crate::condense::cc;
use crate::ordinal::Cnf;
use crate::points::{
    compare_points, first_point, last_point, sample_points, PointCode, Side, Slot, UPoint,
};
use crate::rational::Rational;
use crate::term::{normalize, OrderTerm};
use crate::{Error, Result};

/// Assigns rationals to `points` so that `cmp` order is preserved.
///
/// Points are inserted one at a time: the first goes to 0, a new minimum
/// or maximum one step beyond the current extreme, anything else to the
/// midpoint of its neighbours. Points comparing equal get equal values.
pub fn cantor_embed<T>(points: &[T], mut cmp: impl FnMut(&T, &T) -> Ordering) -> Vec<Rational> {
    let mut out: Vec<Option<Rational>> = alloc::vec![None; points.len()];
    // indices into `points`, kept sorted by `cmp`
    let mut sorted: Vec<usize> = Vec::with_capacity(points.len());
    for (i, p) in points.iter().enumerate() {
        let pos = sorted.binary_search_by(|&j| cmp(&points[j], p));
        let value = match pos {
            Ok(k) => {
                out[i] = out[sorted[k]].clone();
                continue;
            }
            Err(k) => {
                let lo = k.checked_sub(1).map(|j| out[sorted[j]].clone().unwrap());
                let hi = sorted.get(k).map(|&j| out[j].clone().unwrap());
                match (lo, hi) {
                    (None, None) => Rational::zero(),
                    (Some(a), None) => &a + &Rational::one(),
                    (None, Some(b)) => &b - &Rational::one(),
                    (Some(a), Some(b)) => a.midpoint(&b),
                }
            }
        };
        let k = pos.unwrap_err();
        sorted.insert(k, i);
        out[i] = Some(value);
    }
    out.into_iter().map(|v| v.expect("assigned")).collect()
}

/// Which part of U the construction uses.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum EmbedCase {
    /// Countable orders go into the middle rational block.
    Countable,
    /// Cofinality ω₁: an increasing ω₁-sequence is sent to the positive spine.
    Increasing,
    /// Coinitiality ω₁: the mirror image, on the negative spine.
    Decreasing,
    /// Both ends have length ω₁ and use both halves of U.
    TwoSided,
}

/// Source of a spine point of U.
#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum SpineSource {
    Point(PointCode),
    /// A point added to the order: the copy indexed by this spine point has
    /// no least (or, on the negative side, greatest) element.
    New,
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SpineEntry {
    pub source: SpineSource,
    pub target: UPoint,
}

/// The sampled points of one countable gap and their rationals in the
/// block `ℚ(index)` (or `ℚ(-index)`, or `ℚ(mid)`).
#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct GapMap {
    pub side: Side,
    pub index: Cnf,
    pub description: String,
    pub assignments: Vec<(PointCode, Rational)>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct EmbedCertificate {
    pub term: OrderTerm,
    pub case: EmbedCase,
    /// Spine entries in the order of U.
    pub spine: Vec<SpineEntry>,
    pub gaps: Vec<GapMap>,
    pub verified_pairs: usize,
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum EmbedOutcome {
    Embedded(EmbedCertificate),
    /// The order does not condense to 1; its quotient is given.
    NotEmbeddable(OrderTerm),
}

/// Where a point of the source order goes: a spine point or a rational
/// block of U.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct Loc {
    side: Side,
    index: Cnf,
    spine: bool,
}

impl Loc {
    fn mid() -> Loc {
        Loc {
            side: Side::Mid,
            index: Cnf::zero(),
            spine: false,
        }
    }
}

/// How a part of a sum or a whole term is laid out along U.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Layout {
    Mid,
    Pos,
    Neg,
    Line,
}

fn layout(t: &OrderTerm) -> Result<Layout> {
    use OrderTerm::*;
    if Level::Countable.is_small(shape(t).card) {
        return Ok(Layout::Mid);
    }
    let countable = |x: &OrderTerm| Level::Countable.is_small(shape(x).card);
    Ok(match t {
        Omega1 => Layout::Pos,
        Omega1Rev => Layout::Neg,
        ULine => Layout::Line,
        LexProd(a, x) if countable(x) => match **a {
            Omega1 => Layout::Pos,
            Omega1Rev => Layout::Neg,
            ULine => Layout::Line,
            _ => return Err(unsupported(t)),
        },
        _ => return Err(unsupported(t)),
    })
}

fn unsupported(t: &OrderTerm) -> Error {
    Error::Unsupported(format!("no embedding construction for {t}"))
}

/// The block of U that receives `p`.
fn locate(t: &OrderTerm, p: &PointCode) -> Result<Loc> {
    use OrderTerm::*;
    use PointCode as P;
    if let (Sum(parts), P::Part(i, x)) = (t, p) {
        if layout(t).is_ok() {
            return Ok(Loc::mid());
        }
        return locate_simple(&parts[*i], x);
    }
    locate_simple(t, p)
}

fn locate_simple(t: &OrderTerm, p: &PointCode) -> Result<Loc> {
    use OrderTerm::*;
    use PointCode as P;
    let loc = |side, index: &Cnf, spine| Loc {
        side,
        index: index.clone(),
        spine,
    };
    Ok(match (layout(t)?, t, p) {
        (Layout::Mid, _, _) => Loc::mid(),
        (_, Omega1, P::Ord(a)) => loc(Side::Pos, a, true),
        (_, Omega1Rev, P::Ord(a)) => loc(Side::Neg, a, true),
        (_, ULine, P::U(u)) => loc(u.side, &u.index, u.slot == Slot::Spine),
        (_, LexProd(a, x), P::Pair(outer, inner)) => {
            let first = first_point(x).as_ref() == Some(&**inner);
            let last = last_point(x).as_ref() == Some(&**inner);
            match (&**a, &**outer) {
                (Omega1, P::Ord(al)) => loc(Side::Pos, al, first),
                (Omega1Rev, P::Ord(al)) => loc(Side::Neg, al, last),
                (ULine, P::U(u)) => match u.side {
                    Side::Pos => loc(Side::Pos, &u.index, u.slot == Slot::Spine && first),
                    Side::Neg => loc(Side::Neg, &u.index, u.slot == Slot::Spine && last),
                    Side::Mid => Loc::mid(),
                },
                _ => return Err(unsupported(t)),
            }
        }
        _ => return Err(Error::InvalidCode(format!("{p:?} is not a point of {t}"))),
    })
}

/// The source point sent to the spine point `(side, index)`, or `New`.
fn spine_source(t: &OrderTerm, part_index: Option<usize>, side: Side, index: &Cnf) -> SpineSource {
    use OrderTerm::*;
    use PointCode as P;
    let wrap = |p: PointCode| match part_index {
        Some(i) => SpineSource::Point(crate::points::part(i, p)),
        None => SpineSource::Point(p),
    };
    match t {
        Omega1 | Omega1Rev => wrap(P::Ord(index.clone())),
        ULine => wrap(P::U(UPoint::spine(side, index.clone()))),
        LexProd(a, x) => {
            let end = if side == Side::Pos {
                first_point(x)
            } else {
                last_point(x)
            };
            let outer = match **a {
                ULine => P::U(UPoint::spine(side, index.clone())),
                _ => P::Ord(index.clone()),
            };
            match end {
                Some(e) => wrap(crate::points::pair(outer, e)),
                None => SpineSource::New,
            }
        }
        _ => SpineSource::New,
    }
}

fn case_of(t: &OrderTerm) -> EmbedCase {
    use crate::classify::Cofinality::Omega1;
    let s = shape(t);
    match (s.cofin == Omega1, s.coin == Omega1) {
        _ if Level::Countable.is_small(s.card) => EmbedCase::Countable,
        (true, true) => EmbedCase::TwoSided,
        (true, false) => EmbedCase::Increasing,
        (false, true) => EmbedCase::Decreasing,
        (false, false) => EmbedCase::TwoSided,
    }
}

fn target_cmp(a: &UPoint, b: &UPoint) -> Ordering {
    a.cmp(b)
}

/// Embeds `t` into U, or reports that `t` does not condense to 1.
///
/// The construction is exact per block: spine points come from the term's
/// structure and each countable gap is placed in its rational block. The
/// map is evaluated on a seeded sample of points and verified on `budget`
/// sampled pairs plus every pair of neighbours in the sample.
pub fn embed_into_u(t: &OrderTerm, budget: usize, seed: u64) -> Result<EmbedOutcome> {
    let t = normalize(t);
    let quotient = cc(&t, Level::Countable)?.quotient;
    if quotient != OrderTerm::Single {
        return Ok(EmbedOutcome::NotEmbeddable(quotient));
    }
    let points = sample_points(&t, 64, seed);
    let locs = points
        .iter()
        .map(|p| locate(&t, p))
        .collect::<Result<Vec<Loc>>>()?;

    // group the non-spine points by block, in source order
    let mut blocks: BTreeMap<(Side, Cnf), Vec<usize>> = BTreeMap::new();
    let mut spine_keys: BTreeMap<(Side, Cnf), Option<usize>> = BTreeMap::new();
    for (i, l) in locs.iter().enumerate() {
        if l.spine {
            spine_keys.insert((l.side, l.index.clone()), Some(i));
        } else {
            blocks.entry((l.side, l.index.clone())).or_default().push(i);
            if l.side != Side::Mid {
                spine_keys.entry((l.side, l.index.clone())).or_insert(None);
            }
        }
    }
    let mut image: Vec<Option<UPoint>> = alloc::vec![None; points.len()];
    let mut gaps = Vec::new();
    for ((side, index), members) in &blocks {
        let values = cantor_embed(members, |&a, &b| {
            compare_points(&t, &points[a], &points[b]).unwrap_or(Ordering::Equal)
        });
        let mut assignments = Vec::with_capacity(members.len());
        for (&m, v) in members.iter().zip(values) {
            image[m] = Some(UPoint::rational(*side, index.clone(), v.clone()));
            assignments.push((points[m].clone(), v));
        }
        gaps.push(GapMap {
            side: *side,
            index: index.clone(),
            description: format!("{} sampled points of a countable gap", members.len()),
            assignments,
        });
    }
    let mut spine = Vec::new();
    for ((side, index), owner) in &spine_keys {
        let target = UPoint::spine(*side, index.clone());
        let source = match owner {
            Some(i) => {
                image[*i] = Some(target.clone());
                SpineSource::Point(points[*i].clone())
            }
            None => spine_owner(&t, *side, index),
        };
        spine.push(SpineEntry { source, target });
    }
    spine.sort_by(|a, b| target_cmp(&a.target, &b.target));
    let image: Vec<UPoint> = image
        .into_iter()
        .map(|u| u.expect("every point placed"))
        .collect();

    // verification
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut pairs: Vec<(usize, usize)> = (1..points.len()).map(|i| (i - 1, i)).collect();
    if !points.is_empty() {
        for _ in 0..budget {
            pairs.push((
                rng.random_range(0..points.len()),
                rng.random_range(0..points.len()),
            ));
        }
    }
    for &(i, j) in &pairs {
        let src = compare_points(&t, &points[i], &points[j])?;
        let dst = target_cmp(&image[i], &image[j]);
        if src != dst {
            return Err(Error::VerificationFailed(format!(
                "{:?} vs {:?} map to {:?} vs {:?}",
                points[i], points[j], image[i], image[j]
            )));
        }
    }
    Ok(EmbedOutcome::Embedded(EmbedCertificate {
        case: case_of(&t),
        term: t,
        spine,
        gaps,
        verified_pairs: pairs.len(),
    }))
}

/// The spine source for a spine point no sampled point was sent to.
fn spine_owner(t: &OrderTerm, side: Side, index: &Cnf) -> SpineSource {
    match t {
        OrderTerm::Sum(parts) => {
            for (i, p) in parts.iter().enumerate() {
                let l = layout(p);
                let matches = matches!(
                    (l, side),
                    (Ok(Layout::Pos), Side::Pos) | (Ok(Layout::Neg), Side::Neg)
                );
                if matches {
                    return spine_source(p, Some(i), side, index);
                }
            }
            SpineSource::New
        }
        t => spine_source(t, None, side, index),
    }
}
