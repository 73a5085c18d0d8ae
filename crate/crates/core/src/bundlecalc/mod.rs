//! Bundle expression language and the long-exact-sequence spectrum engine.
//!
//! A [`BundleExpr`] describes a vector bundle built from line bundles, the
//! twisted cotangent bundle on P2, direct sums, twists, extensions
//! (`0 -> sub -> E -> quot -> 0`) and kernels of evaluation maps
//! (`0 -> E -> mid -> target -> 0`). The spectrum engine walks a twist window
//! and propagates exact values or intervals through the six-term long exact
//! sequences, with user-injected vanishing assumptions allowed to narrow (but
//! never widen) the result.

mod parse;
mod spectrum;

pub use parse::{parse_bundle_expr, print_bundle_expr};
pub use spectrum::{
    default_window, dual_rank2, ext_group_dim, refine_serre_selfdual, spectrum, DimValue,
    Spectrum, Window,
};

use crate::error::{Error, Result};
use crate::geometry::{special_multiple, DivisorClass, Surface, SurfaceKind};

/// Expression tree for a constructed bundle.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BundleExpr {
    /// The line bundle `O(d)`.
    Line(DivisorClass),
    /// The twisted cotangent bundle `Omega(t)`; only on P2.
    OmegaP2(i64),
    /// The inner bundle tensored with `O(d)`.
    Twist(Box<BundleExpr>, DivisorClass),
    /// Direct sum of the summands.
    Sum(Vec<BundleExpr>),
    /// The middle bundle of `0 -> sub -> E -> quot -> 0`.
    Ext(Box<BundleExpr>, Box<BundleExpr>),
    /// The kernel bundle of `0 -> E -> mid -> target -> 0`.
    Ker(Box<BundleExpr>, Box<BundleExpr>),
}

impl BundleExpr {
    pub fn line(coords: &[i64]) -> BundleExpr {
        BundleExpr::Line(DivisorClass(coords.to_vec()))
    }

    pub fn twist(self, d: DivisorClass) -> BundleExpr {
        BundleExpr::Twist(Box::new(self), d)
    }

    pub fn sum_of(expr: BundleExpr, copies: usize) -> BundleExpr {
        if copies == 1 {
            expr
        } else {
            BundleExpr::Sum(vec![expr; copies])
        }
    }

    pub fn ext(sub: BundleExpr, quot: BundleExpr) -> BundleExpr {
        BundleExpr::Ext(Box::new(sub), Box::new(quot))
    }

    pub fn ker(mid: BundleExpr, target: BundleExpr) -> BundleExpr {
        BundleExpr::Ker(Box::new(mid), Box::new(target))
    }

    /// Rank of the bundle the expression describes.
    pub fn rank(&self) -> Result<i64> {
        match self {
            BundleExpr::Line(_) => Ok(1),
            BundleExpr::OmegaP2(_) => Ok(2),
            BundleExpr::Twist(e, _) => e.rank(),
            BundleExpr::Sum(es) => {
                let mut r = 0;
                for e in es {
                    r += e.rank()?;
                }
                Ok(r)
            }
            BundleExpr::Ext(a, b) => Ok(a.rank()? + b.rank()?),
            BundleExpr::Ker(m, n) => {
                let r = m.rank()? - n.rank()?;
                if r < 1 {
                    return Err(Error::input(format!(
                        "kernel would have rank {r}; the middle term must outrank the target"
                    )));
                }
                Ok(r)
            }
        }
    }

    /// First Chern class; additive over sums and exact sequences.
    pub fn c1(&self, surface: &Surface) -> Result<DivisorClass> {
        match self {
            BundleExpr::Line(d) => Ok(d.clone()),
            BundleExpr::OmegaP2(t) => {
                if surface.kind != SurfaceKind::P2 {
                    return Err(Error::feature("omega(t) only lives on P2".to_string()));
                }
                Ok(surface.hyperplane.scale(2 * t - 3))
            }
            BundleExpr::Twist(e, d) => e.c1(surface)?.add(&d.scale(e.rank()?)),
            BundleExpr::Sum(es) => {
                let mut acc = surface.zero_divisor();
                for e in es {
                    acc = acc.add(&e.c1(surface)?)?;
                }
                Ok(acc)
            }
            BundleExpr::Ext(a, b) => a.c1(surface)?.add(&b.c1(surface)?),
            BundleExpr::Ker(m, n) => m.c1(surface)?.sub(&n.c1(surface)?),
        }
    }

    /// Euler characteristic of the expression twisted by `offset`.
    pub fn chi(&self, surface: &Surface, offset: &DivisorClass) -> Result<i128> {
        match self {
            BundleExpr::Line(d) => crate::geometry::chi_line(surface, &d.add(offset)?),
            BundleExpr::OmegaP2(t) => {
                if surface.kind != SurfaceKind::P2 {
                    return Err(Error::feature("omega(t) only lives on P2".to_string()));
                }
                let j = (*t as i128) + offset.0[0] as i128;
                Ok(j * j - 1)
            }
            BundleExpr::Twist(e, d) => e.chi(surface, &offset.add(d)?),
            BundleExpr::Sum(es) => {
                let mut acc = 0i128;
                for e in es {
                    acc = crate::arith::add(acc, e.chi(surface, offset)?)?;
                }
                Ok(acc)
            }
            BundleExpr::Ext(a, b) => {
                crate::arith::add(a.chi(surface, offset)?, b.chi(surface, offset)?)
            }
            BundleExpr::Ker(m, n) => {
                crate::arith::sub(m.chi(surface, offset)?, n.chi(surface, offset)?)
            }
        }
    }

    /// Check the expression is well-formed on the surface: every leaf has the
    /// right coordinate arity, `omega` only appears on P2, and kernels have
    /// positive rank.
    pub fn validate(&self, surface: &Surface) -> Result<()> {
        match self {
            BundleExpr::Line(d) => {
                if d.rank() != surface.rank {
                    return Err(Error::input(format!(
                        "line bundle with {} coordinates on {}",
                        d.rank(),
                        surface.kind
                    )));
                }
                Ok(())
            }
            BundleExpr::OmegaP2(_) => {
                if surface.kind != SurfaceKind::P2 {
                    return Err(Error::feature("omega(t) only lives on P2".to_string()));
                }
                Ok(())
            }
            BundleExpr::Twist(e, d) => {
                if d.rank() != surface.rank {
                    return Err(Error::input(format!(
                        "twist divisor with {} coordinates on {}",
                        d.rank(),
                        surface.kind
                    )));
                }
                e.validate(surface)
            }
            BundleExpr::Sum(es) => {
                for e in es {
                    e.validate(surface)?;
                }
                Ok(())
            }
            BundleExpr::Ext(a, b) => {
                a.validate(surface)?;
                b.validate(surface)
            }
            BundleExpr::Ker(m, n) => {
                m.validate(surface)?;
                n.validate(surface)?;
                self.rank().map(|_| ())
            }
        }
    }

    /// Flatten directly nested sums and collapse singletons so the printed
    /// canonical form reparses to an identical tree.
    pub fn normalize(self) -> BundleExpr {
        match self {
            BundleExpr::Sum(es) => {
                let mut flat = Vec::new();
                for e in es {
                    match e.normalize() {
                        BundleExpr::Sum(inner) => flat.extend(inner),
                        other => flat.push(other),
                    }
                }
                if flat.len() == 1 {
                    flat.pop().expect("singleton sum")
                } else {
                    BundleExpr::Sum(flat)
                }
            }
            BundleExpr::Twist(e, d) => BundleExpr::Twist(Box::new(e.normalize()), d),
            BundleExpr::Ext(a, b) => {
                BundleExpr::Ext(Box::new(a.normalize()), Box::new(b.normalize()))
            }
            BundleExpr::Ker(m, n) => {
                BundleExpr::Ker(Box::new(m.normalize()), Box::new(n.normalize()))
            }
            leaf => leaf,
        }
    }

    /// The twist c with `E^vee = E(-c h)` for a rank-2 bundle whose first
    /// Chern class is a multiple of the polarization.
    pub fn selfdual_twist(&self, surface: &Surface) -> Result<i64> {
        if self.rank()? != 2 {
            return Err(Error::feature(
                "rank-2 self-duality needs a rank-2 expression".to_string(),
            ));
        }
        let c1 = self.c1(surface)?;
        special_multiple(surface, &c1).ok_or_else(|| {
            Error::feature(format!(
                "c1 = {} is not a multiple of the polarization",
                surface.format_divisor(&c1)
            ))
        })
    }
}

/// Which cohomology index an assumption constrains.
pub const H0: usize = 0;
pub const H1: usize = 1;
pub const H2: usize = 2;

/// A set of twists, as a single integer interval (possibly half-infinite).
/// Finite unions are expressed by multiple assumptions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwistRange {
    At(i64),
    AtMost(i64),
    AtLeast(i64),
    Between(i64, i64),
}

impl TwistRange {
    pub fn contains(&self, t: i64) -> bool {
        match *self {
            TwistRange::At(a) => t == a,
            TwistRange::AtMost(a) => t <= a,
            TwistRange::AtLeast(a) => t >= a,
            TwistRange::Between(a, b) => a <= t && t <= b,
        }
    }

    fn intersects(&self, other: &TwistRange) -> bool {
        let (lo1, hi1) = self.bounds();
        let (lo2, hi2) = other.bounds();
        lo1.max(lo2) <= hi1.min(hi2)
    }

    fn bounds(&self) -> (i64, i64) {
        match *self {
            TwistRange::At(a) => (a, a),
            TwistRange::AtMost(a) => (i64::MIN, a),
            TwistRange::AtLeast(a) => (a, i64::MAX),
            TwistRange::Between(a, b) => (a, b),
        }
    }
}

/// An asserted cohomology dimension over a range of twists, with provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assumption {
    /// 0, 1 or 2.
    pub index: usize,
    pub range: TwistRange,
    pub value: i128,
    pub provenance: String,
}

impl Assumption {
    pub fn vanishing(index: usize, range: TwistRange, provenance: &str) -> Assumption {
        Assumption { index, range, value: 0, provenance: provenance.to_string() }
    }

    /// Parse the repeatable CLI form `h0:t<=-1:0:provenance`.
    pub fn parse_flag(text: &str) -> Result<Assumption> {
        let mut parts = text.splitn(4, ':');
        let idx = parts
            .next()
            .ok_or_else(|| Error::input("empty assumption".to_string()))?;
        let index = match idx {
            "h0" => H0,
            "h1" => H1,
            "h2" => H2,
            other => return Err(Error::input(format!("assumption index {other:?} (want h0|h1|h2)"))),
        };
        let range_text = parts
            .next()
            .ok_or_else(|| Error::input(format!("assumption {text:?} is missing a twist range")))?;
        let range = parse_twist_range(range_text)?;
        let value_text = parts
            .next()
            .ok_or_else(|| Error::input(format!("assumption {text:?} is missing a value")))?;
        let value: i128 = value_text
            .parse()
            .map_err(|_| Error::input(format!("assumption value {value_text:?} is not an integer")))?;
        if value < 0 {
            return Err(Error::input("assumption value must be non-negative".to_string()));
        }
        let provenance = parts.next().unwrap_or("").to_string();
        Ok(Assumption { index, range, value, provenance })
    }
}

fn parse_twist_range(text: &str) -> Result<TwistRange> {
    let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let int = |s: &str| -> Result<i64> {
        s.parse()
            .map_err(|_| Error::input(format!("bad integer {s:?} in twist range")))
    };
    if let Some(rest) = text.strip_prefix("t<=") {
        return Ok(TwistRange::AtMost(int(rest)?));
    }
    if let Some(rest) = text.strip_prefix("t>=") {
        return Ok(TwistRange::AtLeast(int(rest)?));
    }
    if let Some(rest) = text.strip_prefix("t==").or_else(|| text.strip_prefix("t=")) {
        return Ok(TwistRange::At(int(rest)?));
    }
    if let Some((a, b)) = text.split_once("..") {
        let (lo, hi) = (int(a)?, int(b)?);
        if lo > hi {
            return Err(Error::input(format!("empty twist range {text:?}")));
        }
        return Ok(TwistRange::Between(lo, hi));
    }
    Err(Error::input(format!(
        "twist range {text:?} (want t<=K, t>=K, t=K or A..B)"
    )))
}

/// A conflict-free collection of assumptions.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AssumptionSet {
    items: Vec<Assumption>,
}

impl AssumptionSet {
    pub fn new() -> AssumptionSet {
        AssumptionSet::default()
    }

    pub fn empty() -> AssumptionSet {
        AssumptionSet::default()
    }

    pub fn push(&mut self, a: Assumption) -> Result<()> {
        if a.index > 2 {
            return Err(Error::input(format!("assumption index h{} out of range", a.index)));
        }
        for prev in &self.items {
            if prev.index == a.index && prev.range.intersects(&a.range) && prev.value != a.value {
                return Err(Error::input(format!(
                    "conflicting assumptions on h{} (values {} and {})",
                    a.index, prev.value, a.value
                )));
            }
        }
        self.items.push(a);
        Ok(())
    }

    pub fn with(mut self, a: Assumption) -> Result<AssumptionSet> {
        self.push(a)?;
        Ok(self)
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Assumption> {
        self.items.iter()
    }

    /// The asserted value of `h{index}` at twist `t`, if any assumption covers it.
    pub fn lookup(&self, index: usize, t: i64) -> Option<i128> {
        self.items
            .iter()
            .find(|a| a.index == index && a.range.contains(t))
            .map(|a| a.value)
    }

    /// Per-index asserted values at twist `t`.
    pub fn at(&self, t: i64) -> [Option<i128>; 3] {
        [self.lookup(H0, t), self.lookup(H1, t), self.lookup(H2, t)]
    }
}
