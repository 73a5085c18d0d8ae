//! Per-twist cohomology evaluation with interval propagation.
//!
//! A spectrum records, for every twist `t` in a finite window, either the
//! exact triple (h0, h1, h2) of the bundle twisted by `t*h` or a closed
//! interval for each entry. Line bundles and the twisted cotangent bundle
//! evaluate exactly; sums add; extensions and kernels go through the six-term
//! long exact sequence, where the unknown ranks of the two connecting (or
//! induced) maps are the only degrees of freedom:
//!
//! ```text
//! ext(A, B):  h0 = h0A+h0B - u   h1 = h1A+h1B - u - v   h2 = h2A+h2B - v
//!             u = rk(H0B -> H1A), v = rk(H1B -> H2A)
//! ker(M, N):  h0 = h0M - u       h1 = h0N+h1M - u - v   h2 = h1N+h2M-h2N - v
//!             u = rk(H0M -> H0N), v = rk(H1M -> H1N)
//! ```
//!
//! (For kernels the map `H2M -> H2N` is onto because H3 vanishes on a
//! surface.) An entry is exact precisely when the feasible ranks pin it down;
//! assumptions narrow the feasible set and may force neighbours exact.

use serde::Serialize;

use crate::arith;
use crate::bundlecalc::{AssumptionSet, BundleExpr};
use crate::error::{Error, Result};
use crate::geometry::{intersect, DivisorClass, Surface};
use crate::linecoh::{cohom_line, cohom_omega_p2};

/// An exact dimension or a closed integer interval of candidates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum DimValue {
    Exact(i128),
    Range(i128, i128),
}

impl DimValue {
    /// Collapses a degenerate interval to an exact value.
    pub fn from_bounds(lo: i128, hi: i128) -> DimValue {
        debug_assert!(lo <= hi && lo >= 0);
        if lo == hi {
            DimValue::Exact(lo)
        } else {
            DimValue::Range(lo, hi)
        }
    }

    pub fn lo(&self) -> i128 {
        match *self {
            DimValue::Exact(n) => n,
            DimValue::Range(lo, _) => lo,
        }
    }

    pub fn hi(&self) -> i128 {
        match *self {
            DimValue::Exact(n) => n,
            DimValue::Range(_, hi) => hi,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, DimValue::Exact(_))
    }

    pub fn exact(&self) -> Option<i128> {
        match *self {
            DimValue::Exact(n) => Some(n),
            DimValue::Range(..) => None,
        }
    }

    /// Definitely nonzero (even the lower bound is positive).
    pub fn is_positive(&self) -> bool {
        self.lo() > 0
    }

    pub fn contains(&self, v: i128) -> bool {
        self.lo() <= v && v <= self.hi()
    }

    fn add(&self, other: &DimValue) -> Result<DimValue> {
        let lo = arith::add(self.lo(), other.lo())?;
        let hi = arith::add(self.hi(), other.hi())?;
        Ok(DimValue::from_bounds(lo, hi))
    }

    fn intersect(&self, other: &DimValue) -> Option<DimValue> {
        let lo = self.lo().max(other.lo());
        let hi = self.hi().min(other.hi());
        if lo > hi {
            None
        } else {
            Some(DimValue::from_bounds(lo, hi))
        }
    }
}

impl std::fmt::Display for DimValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DimValue::Exact(n) => write!(f, "{n}"),
            DimValue::Range(lo, hi) => write!(f, "{lo}..{hi}"),
        }
    }
}

/// A finite twist interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Result<Window> {
        if lo > hi {
            return Err(Error::input(format!("window {lo}..{hi} is empty")));
        }
        if (hi - lo) as u64 > 100_000 {
            return Err(Error::input(format!("window {lo}..{hi} is unreasonably large")));
        }
        Ok(Window { lo, hi })
    }

    /// Parse the CLI form `a..b`.
    pub fn parse(text: &str) -> Result<Window> {
        let (a, b) = text
            .split_once("..")
            .ok_or_else(|| Error::input(format!("window {text:?} should look like -4..0")))?;
        let lo = a.trim().parse::<i64>().map_err(|_| Error::input(format!("bad window bound {a:?}")))?;
        let hi = b.trim().parse::<i64>().map_err(|_| Error::input(format!("bad window bound {b:?}")))?;
        Window::new(lo, hi)
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo) as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, t: i64) -> bool {
        self.lo <= t && t <= self.hi
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

impl std::fmt::Display for Window {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

/// Cohomology entries across a twist window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Spectrum {
    pub window: Window,
    entries: Vec<[DimValue; 3]>,
}

impl Spectrum {
    pub fn get(&self, t: i64) -> Result<&[DimValue; 3]> {
        if !self.window.contains(t) {
            return Err(Error::input(format!(
                "twist {t} outside window {}",
                self.window
            )));
        }
        Ok(&self.entries[(t - self.window.lo) as usize])
    }

    pub fn value(&self, t: i64, index: usize) -> Result<DimValue> {
        Ok(self.get(t)?[index])
    }

    /// The exact entry, or an indeterminate error naming the spot.
    pub fn exact(&self, t: i64, index: usize) -> Result<i128> {
        self.value(t, index)?.exact().ok_or_else(|| {
            Error::indeterminate(format!("h{index} at twist {t} is only known as an interval"))
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &[DimValue; 3])> {
        self.window.iter().zip(self.entries.iter())
    }

    /// Spectrum of the bundle twisted by `k*h`: entry `t` becomes entry
    /// `t + k` of the original, so the window shrinks by shifting.
    pub fn shifted(&self, k: i64) -> Spectrum {
        Spectrum {
            window: Window { lo: self.window.lo - k, hi: self.window.hi - k },
            entries: self.entries.clone(),
        }
    }

    pub fn from_entries(window: Window, entries: Vec<[DimValue; 3]>) -> Result<Spectrum> {
        if entries.len() != window.len() {
            return Err(Error::input(format!(
                "{} entries for window {}",
                entries.len(),
                window
            )));
        }
        Ok(Spectrum { window, entries })
    }
}

fn exact_triple(h: [i128; 3]) -> [DimValue; 3] {
    [DimValue::Exact(h[0]), DimValue::Exact(h[1]), DimValue::Exact(h[2])]
}

/// Evaluate an expression at a fixed divisor offset, with no assumptions.
fn eval_triple(surface: &Surface, expr: &BundleExpr, offset: &DivisorClass) -> Result<[DimValue; 3]> {
    match expr {
        BundleExpr::Line(d) => {
            let triple = cohom_line(surface, &d.add(offset)?)?;
            Ok(exact_triple(triple.as_array()))
        }
        BundleExpr::OmegaP2(t) => {
            let j = t
                .checked_add(offset.0[0])
                .ok_or_else(|| Error::Arithmetic(format!("twist {t} + {}", offset.0[0])))?;
            Ok(exact_triple(cohom_omega_p2(j).as_array()))
        }
        BundleExpr::Twist(e, d) => eval_triple(surface, e, &offset.add(d)?),
        BundleExpr::Sum(es) => {
            let mut acc = exact_triple([0, 0, 0]);
            for e in es {
                let t = eval_triple(surface, e, offset)?;
                for i in 0..3 {
                    acc[i] = acc[i].add(&t[i])?;
                }
            }
            Ok(acc)
        }
        BundleExpr::Ext(a, b) => {
            let ta = eval_triple(surface, a, offset)?;
            let tb = eval_triple(surface, b, offset)?;
            les_combine(LesKind::Ext, &ta, &tb, [None; 3], 0)
        }
        BundleExpr::Ker(m, n) => {
            let tm = eval_triple(surface, m, offset)?;
            let tn = eval_triple(surface, n, offset)?;
            les_combine(LesKind::Ker, &tm, &tn, [None; 3], 0)
        }
    }
}

#[derive(Clone, Copy)]
enum LesKind {
    Ext,
    Ker,
}

#[derive(Clone, Copy)]
struct Iv {
    lo: i128,
    hi: i128,
}

fn inconsistency(twist: i64, index: usize, msg: impl Into<String>) -> Error {
    Error::Inconsistency { twist, index, msg: msg.into() }
}

/// Resolve the six-term LES at one twist.
///
/// `first`/`second` are (A, B) for an extension and (M, N) for a kernel;
/// `assume` holds asserted values of (h0, h1, h2) of the combined bundle.
fn les_combine(
    kind: LesKind,
    first: &[DimValue; 3],
    second: &[DimValue; 3],
    assume: [Option<i128>; 3],
    twist: i64,
) -> Result<[DimValue; 3]> {
    let all_exact = first.iter().chain(second.iter()).all(|v| v.is_exact());
    if all_exact {
        let f = [first[0].lo(), first[1].lo(), first[2].lo()];
        let s = [second[0].lo(), second[1].lo(), second[2].lo()];
        let (k0, k1, k2, u_cap, v_cap) = match kind {
            LesKind::Ext => (
                f[0] + s[0],
                f[1] + s[1],
                f[2] + s[2],
                s[0].min(f[1]),
                s[1].min(f[2]),
            ),
            LesKind::Ker => {
                if s[2] > f[2] {
                    return Err(inconsistency(
                        twist,
                        2,
                        format!("no exact sequence: target h2 = {} exceeds middle h2 = {}", s[2], f[2]),
                    ));
                }
                (f[0], s[0] + f[1], s[1] + f[2] - s[2], f[0].min(s[0]), f[1].min(s[1]))
            }
        };
        if k2 < 0 {
            return Err(inconsistency(twist, 2, "negative forced h2 in the LES"));
        }
        solve_two_ranks(k0, k1, k2, u_cap, v_cap, assume, twist)
    } else {
        let conservative = conservative_bounds(kind, first, second, twist)?;
        apply_assumptions(conservative, assume, twist)
    }
}

/// Exact-children case: bound the two unknown ranks and read the entries off.
fn solve_two_ranks(
    k0: i128,
    k1: i128,
    k2: i128,
    u_cap: i128,
    v_cap: i128,
    assume: [Option<i128>; 3],
    twist: i64,
) -> Result<[DimValue; 3]> {
    let mut u = Iv { lo: 0, hi: u_cap.min(k0) };
    let mut v = Iv { lo: 0, hi: v_cap.min(k2) };
    if u.lo > u.hi || v.lo > v.hi {
        return Err(inconsistency(twist, 1, "no feasible connecting ranks"));
    }
    let mut sum_uv: Option<i128> = None;
    if let Some(want) = assume[1] {
        let s = k1 - want;
        if s < 0 {
            return Err(inconsistency(
                twist,
                1,
                format!("assumed h1 = {want} exceeds the LES ceiling {k1}"),
            ));
        }
        sum_uv = Some(s);
    }
    if let Some(want) = assume[0] {
        let forced = k0 - want;
        if forced < u.lo || forced > u.hi {
            return Err(inconsistency(
                twist,
                0,
                format!("assumed h0 = {want} is outside the forced range"),
            ));
        }
        u = Iv { lo: forced, hi: forced };
    }
    if let Some(want) = assume[2] {
        let forced = k2 - want;
        if forced < v.lo || forced > v.hi {
            return Err(inconsistency(
                twist,
                2,
                format!("assumed h2 = {want} is outside the forced range"),
            ));
        }
        v = Iv { lo: forced, hi: forced };
    }
    for _ in 0..3 {
        match sum_uv {
            Some(s) => {
                u.lo = u.lo.max(s - v.hi);
                u.hi = u.hi.min(s - v.lo);
                if u.lo > u.hi {
                    return Err(inconsistency(twist, 1, "assumed h1 contradicts the LES"));
                }
                v.lo = v.lo.max(s - u.hi);
                v.hi = v.hi.min(s - u.lo);
                if v.lo > v.hi {
                    return Err(inconsistency(twist, 1, "assumed h1 contradicts the LES"));
                }
            }
            None => {
                // h1 >= 0 couples the ranks: u + v <= k1.
                u.hi = u.hi.min(k1 - v.lo);
                v.hi = v.hi.min(k1 - u.lo);
                if u.lo > u.hi || v.lo > v.hi {
                    return Err(inconsistency(twist, 1, "negative forced h1 in the LES"));
                }
            }
        }
    }
    let h0 = DimValue::from_bounds(k0 - u.hi, k0 - u.lo);
    let h2 = DimValue::from_bounds(k2 - v.hi, k2 - v.lo);
    let h1 = match sum_uv {
        Some(s) => DimValue::Exact(k1 - s),
        None => DimValue::from_bounds((k1 - u.hi - v.hi).max(0), k1 - u.lo - v.lo),
    };
    Ok([h0, h1, h2])
}

/// Interval-valued children: local bounds only, no rank bookkeeping.
fn conservative_bounds(
    kind: LesKind,
    first: &[DimValue; 3],
    second: &[DimValue; 3],
    twist: i64,
) -> Result<[DimValue; 3]> {
    let max0 = |x: i128| x.max(0);
    let (f, s) = (first, second);
    let (bounds0, bounds1, bounds2) = match kind {
        LesKind::Ext => (
            (
                f[0].lo() + max0(s[0].lo() - f[1].hi()),
                f[0].hi() + s[0].hi(),
            ),
            (
                max0(f[1].lo() - s[0].hi()) + max0(s[1].lo() - f[2].hi()),
                f[1].hi() + s[1].hi(),
            ),
            (
                max0(f[2].lo() - s[1].hi()) + s[2].lo(),
                f[2].hi() + s[2].hi(),
            ),
        ),
        LesKind::Ker => (
            (max0(f[0].lo() - s[0].hi()), f[0].hi()),
            (
                max0(s[0].lo() - f[0].hi()) + max0(f[1].lo() - s[1].hi()),
                s[0].hi() + f[1].hi(),
            ),
            (
                max0(max0(s[1].lo() - f[1].hi()) + f[2].lo() - s[2].hi()),
                s[1].hi() + max0(f[2].hi() - s[2].lo()),
            ),
        ),
    };
    for (index, (lo, hi)) in [bounds0, bounds1, bounds2].iter().enumerate() {
        if lo > hi {
            return Err(inconsistency(twist, index, "no exact sequence fits the bounds"));
        }
    }
    Ok([
        DimValue::from_bounds(max0(bounds0.0), bounds0.1),
        DimValue::from_bounds(max0(bounds1.0), bounds1.1),
        DimValue::from_bounds(max0(bounds2.0), bounds2.1),
    ])
}

/// Narrow a computed triple by asserted values; never widen.
fn apply_assumptions(
    triple: [DimValue; 3],
    assume: [Option<i128>; 3],
    twist: i64,
) -> Result<[DimValue; 3]> {
    let mut out = triple;
    for index in 0..3 {
        if let Some(v) = assume[index] {
            if !out[index].contains(v) {
                return Err(inconsistency(
                    twist,
                    index,
                    format!("assumed h{index} = {v} contradicts computed {}", out[index]),
                ));
            }
            out[index] = DimValue::Exact(v);
        }
    }
    Ok(out)
}

/// Evaluate the spectrum of `expr` over `window`, twisting by `t*h` at each
/// step. Assumptions constrain the outermost bundle and are pushed into its
/// long exact sequence when the expression (under any twists) is an `ext` or
/// `ker`, so one asserted vanishing can force neighbouring entries exact.
pub fn spectrum(
    surface: &Surface,
    expr: &BundleExpr,
    window: Window,
    assume: &AssumptionSet,
) -> Result<Spectrum> {
    expr.validate(surface)?;
    let mut base = expr;
    let mut extra = surface.zero_divisor();
    while let BundleExpr::Twist(inner, d) = base {
        extra = extra.add(d)?;
        base = inner;
    }
    let mut entries = Vec::with_capacity(window.len());
    for t in window.iter() {
        let offset = extra.add(&surface.hyperplane.scale(t))?;
        let at = assume.at(t);
        let triple = match base {
            BundleExpr::Ext(a, b) => {
                let ta = eval_triple(surface, a, &offset)?;
                let tb = eval_triple(surface, b, &offset)?;
                les_combine(LesKind::Ext, &ta, &tb, at, t)?
            }
            BundleExpr::Ker(m, n) => {
                let tm = eval_triple(surface, m, &offset)?;
                let tn = eval_triple(surface, n, &offset)?;
                les_combine(LesKind::Ker, &tm, &tn, at, t)?
            }
            other => apply_assumptions(eval_triple(surface, other, &offset)?, at, t)?,
        };
        entries.push(triple);
    }
    Ok(Spectrum { window, entries })
}

/// Narrow a spectrum of a rank-2 bundle with `c1 = c*h` using the
/// self-duality `E^vee = E(-c)`: Serre duality then mirrors the table,
/// `h_i(E(t)) = h_{2-i}(E(t'))` at `t' = -c - i_X - t`. Entries whose mirror
/// lies outside the window are left unchanged.
pub fn refine_serre_selfdual(surface: &Surface, sp: &Spectrum, c: i64) -> Result<Spectrum> {
    let mut entries = Vec::with_capacity(sp.window.len());
    for (t, entry) in sp.iter() {
        let mirror = -c - surface.index - t;
        if !sp.window.contains(mirror) {
            entries.push(*entry);
            continue;
        }
        let other = sp.get(mirror)?;
        let mut narrowed = *entry;
        for i in 0..3 {
            narrowed[i] = entry[i].intersect(&other[2 - i]).ok_or_else(|| {
                inconsistency(
                    t,
                    i,
                    format!(
                        "self-duality mirror at twist {mirror} gives {} against {}",
                        other[2 - i], entry[i]
                    ),
                )
            })?;
        }
        entries.push(narrowed);
    }
    Spectrum::from_entries(sp.window, entries)
}

/// `ext^i(O(from), O(to)) = h^i(O(to - from))`.
pub fn ext_group_dim(
    surface: &Surface,
    from: &DivisorClass,
    to: &DivisorClass,
    i: usize,
) -> Result<i128> {
    if i > 2 {
        return Err(Error::input(format!("ext index {i} out of range 0..=2")));
    }
    let triple = cohom_line(surface, &to.sub(from)?)?;
    Ok(triple.as_array()[i])
}

/// The dual of a special rank-2 bundle, expressed as a twist of the bundle
/// itself: with `c1 = c*h`, `E^vee = E(-c*h)`.
pub fn dual_rank2(surface: &Surface, expr: &BundleExpr) -> Result<BundleExpr> {
    let c = expr.selfdual_twist(surface)?;
    Ok(expr.clone().twist(surface.hyperplane.scale(-c)))
}

/// Default evaluation window: the interesting twists of a special bundle sit
/// between the self-duality centre and the origin, so take
/// `[-(|c| + l_max + 10), |c| + l_max + 10]` with `c = c1.h / h^2`.
pub fn default_window(surface: &Surface, expr: &BundleExpr, l_max: i64) -> Result<Window> {
    let c1 = expr.c1(surface)?;
    let h = &surface.hyperplane;
    let c1h = intersect(surface, &c1, h)?;
    let h2 = intersect(surface, h, h)?;
    let c = (c1h / h2) as i64;
    let w = c.abs() + l_max.abs() + 10;
    Window::new(-w, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundlecalc::{Assumption, TwistRange, H0};

    fn ex(n: i128) -> DimValue {
        DimValue::Exact(n)
    }

    fn p2_kernel(l: i64) -> BundleExpr {
        BundleExpr::ker(
            BundleExpr::sum_of(BundleExpr::OmegaP2(l + 1), l as usize),
            BundleExpr::sum_of(BundleExpr::line(&[l]), (2 * l - 2) as usize),
        )
    }

    fn vanishing_h0() -> AssumptionSet {
        AssumptionSet::new()
            .with(Assumption::vanishing(
                H0,
                TwistRange::AtMost(-1),
                "initialized rank-2 vanishing",
            ))
            .unwrap()
    }

    #[test]
    fn omega_two_spectrum_matches_single_h1() {
        let p2 = Surface::p2();
        let sp = spectrum(
            &p2,
            &BundleExpr::OmegaP2(2),
            Window::new(-4, 0).unwrap(),
            &AssumptionSet::empty(),
        )
        .unwrap();
        for t in -4..=0 {
            let want_h1 = if t == -2 { 1 } else { 0 };
            assert_eq!(sp.value(t, 1).unwrap(), ex(want_h1), "h1 at t={t}");
        }
        assert_eq!(sp.get(-4).unwrap(), &[ex(0), ex(0), ex(3)]);
        assert_eq!(sp.get(0).unwrap(), &[ex(3), ex(0), ex(0)]);
    }

    #[test]
    fn two_away_kernel_table_is_forced() {
        // ker(omega(3)^2 -> O(2)^2): h1 = 2 at t = -3 with no assumptions at
        // all, and at t = -2 once h0 is assumed to vanish.
        let p2 = Surface::p2();
        let expr = p2_kernel(2);
        let window = Window::new(-5, 1).unwrap();

        let plain = spectrum(&p2, &expr, window, &AssumptionSet::empty()).unwrap();
        assert_eq!(plain.get(-3).unwrap(), &[ex(0), ex(2), ex(0)]);
        assert_eq!(plain.get(-2).unwrap(), &[ex(0), ex(2), ex(0)]);
        assert_eq!(plain.get(-4).unwrap(), &[ex(0), ex(0), ex(0)]);
        // At t = -1 both middle and target have sections, so nothing is
        // forced without the vanishing assumption.
        assert!(!plain.value(-1, 1).unwrap().is_exact());

        let assumed = spectrum(&p2, &expr, window, &vanishing_h0()).unwrap();
        assert_eq!(assumed.get(-2).unwrap(), &[ex(0), ex(2), ex(0)]);
        assert_eq!(assumed.get(-1).unwrap(), &[ex(0), ex(0), ex(0)]);
    }

    #[test]
    fn assumptions_only_narrow() {
        let p2 = Surface::p2();
        let expr = p2_kernel(2);
        let window = Window::new(-8, 4).unwrap();
        let plain = spectrum(&p2, &expr, window, &AssumptionSet::empty()).unwrap();
        let assumed = spectrum(&p2, &expr, window, &vanishing_h0()).unwrap();
        for (t, entry) in assumed.iter() {
            let before = plain.get(t).unwrap();
            for i in 0..3 {
                assert!(
                    before[i].lo() <= entry[i].lo() && entry[i].hi() <= before[i].hi(),
                    "entry h{i} at t={t} widened: {} -> {}",
                    before[i],
                    entry[i]
                );
            }
        }
    }

    #[test]
    fn contradictory_assumption_is_an_inconsistency() {
        let p2 = Surface::p2();
        // h1(omega(2)(-2)) = 1 is forced; asserting 0 must fail loudly.
        let mut set = AssumptionSet::new();
        set.push(Assumption {
            index: 1,
            range: TwistRange::At(-2),
            value: 0,
            provenance: "deliberately wrong".to_string(),
        })
        .unwrap();
        let err = spectrum(
            &p2,
            &BundleExpr::OmegaP2(2),
            Window::new(-3, -1).unwrap(),
            &set,
        )
        .unwrap_err();
        match err {
            Error::Inconsistency { twist, index, .. } => {
                assert_eq!((twist, index), (-2, 1));
            }
            other => panic!("expected inconsistency, got {other:?}"),
        }
    }

    #[test]
    fn quadric_extension_support() {
        // ext(O(4,0), O(0,4)): h1 exact with support {-4, -3, -2}.
        let q = Surface::p1xp1();
        let l = 3i64;
        let expr = BundleExpr::ext(
            BundleExpr::line(&[l + 1, 0]),
            BundleExpr::line(&[0, l + 1]),
        );
        let sp = spectrum(&q, &expr, Window::new(-6, 1).unwrap(), &AssumptionSet::empty()).unwrap();
        for t in -6..=1i64 {
            let v = sp.value(t, 1).unwrap();
            assert!(v.is_exact(), "h1 at {t} should be exact");
            let want = if (-l - 1..=-2).contains(&t) {
                2 * ((t + l + 2) * (-t - 1)) as i128
            } else {
                0
            };
            assert_eq!(v, ex(want), "h1 at t={t}");
        }
        // h0(E) = 2l + 4 at t = 0.
        assert_eq!(sp.value(0, 0).unwrap(), ex((2 * l + 4) as i128));
    }

    #[test]
    fn serre_selfdual_refinement_forces_tails() {
        let p2 = Surface::p2();
        let l = 3i64;
        let expr = p2_kernel(l);
        let window = Window::new(-2 * l - 6, 6).unwrap();
        let sp = spectrum(&p2, &expr, window, &vanishing_h0()).unwrap();
        // h1 at t >= -1 is not forced by the LES alone...
        assert!(!sp.value(0, 1).unwrap().is_exact());
        // ...but the self-duality mirror pins it to zero.
        let refined = refine_serre_selfdual(&p2, &sp, l).unwrap();
        for t in -1..=4 {
            assert_eq!(refined.value(t, 1).unwrap(), ex(0), "h1 at t={t}");
        }
        // h0(E) = l + 2 at t = 0.
        assert_eq!(refined.value(0, 0).unwrap(), ex((l + 2) as i128));
        // Refinement narrows, never widens.
        for (t, entry) in refined.iter() {
            let before = sp.get(t).unwrap();
            for i in 0..3 {
                assert!(before[i].lo() <= entry[i].lo() && entry[i].hi() <= before[i].hi());
            }
        }
    }

    #[test]
    fn twist_equivariance() {
        let p2 = Surface::p2();
        let expr = p2_kernel(2);
        for shift in [-3i64, -1, 0, 2] {
            let twisted = expr.clone().twist(p2.hyperplane.scale(shift));
            let sp_tw = spectrum(&p2, &twisted, Window::new(-6, 2).unwrap(), &AssumptionSet::empty())
                .unwrap();
            let sp = spectrum(
                &p2,
                &expr,
                Window::new(-6 + shift, 2 + shift).unwrap(),
                &AssumptionSet::empty(),
            )
            .unwrap();
            for t in -6..=2i64 {
                assert_eq!(
                    sp_tw.get(t).unwrap(),
                    sp.get(t + shift).unwrap(),
                    "twist equivariance at t={t}, shift={shift}"
                );
            }
        }
    }

    #[test]
    fn shifted_spectrum_reindexes() {
        let p2 = Surface::p2();
        let sp = spectrum(
            &p2,
            &BundleExpr::OmegaP2(2),
            Window::new(-4, 0).unwrap(),
            &AssumptionSet::empty(),
        )
        .unwrap();
        let shifted = sp.shifted(-1); // spectrum of omega(2)(-1) = omega(1)
        assert_eq!(shifted.window, Window { lo: -3, hi: 1 });
        assert_eq!(shifted.value(-1, 1).unwrap(), ex(1)); // omega(1)(-1) = omega(0)
    }

    #[test]
    fn ext_group_dims() {
        let q = Surface::p1xp1();
        for l in 1..=10i64 {
            let from = DivisorClass(vec![0, l + 1]);
            let to = DivisorClass(vec![l + 1, 0]);
            assert_eq!(
                ext_group_dim(&q, &from, &to, 1).unwrap(),
                (l * l + 2 * l) as i128
            );
        }
        // ext^0 of a line bundle to itself is 1 on every surface.
        for s in Surface::all() {
            let d = s.zero_divisor();
            assert_eq!(ext_group_dim(&s, &d, &d, 0).unwrap(), 1);
        }
        let bl2 = Surface::blowup(2).unwrap();
        for l in 1..=10i64 {
            let from = DivisorClass(vec![0, 1, 0]);
            let to = DivisorClass(vec![l + 1, -(l + 1), -1]);
            assert_eq!(ext_group_dim(&bl2, &from, &to, 1).unwrap(), 1);
        }
    }

    #[test]
    fn dual_rank2_twists_by_minus_c() {
        let p2 = Surface::p2();
        let expr = p2_kernel(3);
        let dual = dual_rank2(&p2, &expr).unwrap();
        assert_eq!(dual, expr.clone().twist(DivisorClass(vec![-3])));
        // chi symmetry: chi(E^vee (t)) = chi(E(-c-t)).
        let zero = p2.zero_divisor();
        let _ = zero;
        for t in -4..=4i64 {
            let lhs = dual.chi(&p2, &DivisorClass(vec![t])).unwrap();
            let rhs = expr.chi(&p2, &DivisorClass(vec![-3 - t])).unwrap();
            assert_eq!(lhs, rhs);
        }
        // The extension of the rulings has c1 = (l+1) h, and chi is symmetric
        // about the self-duality centre -(c + index)/2.
        let q = Surface::p1xp1();
        let l = 4;
        let ext = BundleExpr::ext(BundleExpr::line(&[l + 1, 0]), BundleExpr::line(&[0, l + 1]));
        let dual = dual_rank2(&q, &ext).unwrap();
        assert_eq!(dual, ext.clone().twist(DivisorClass(vec![-(l + 1), -(l + 1)])));
        for t in -3..=3i64 {
            assert_eq!(
                dual.chi(&q, &q.hyperplane.scale(t)).unwrap(),
                ext.chi(&q, &q.hyperplane.scale(t - (l + 1))).unwrap()
            );
            assert_eq!(
                ext.chi(&q, &q.hyperplane.scale(t)).unwrap(),
                ext.chi(&q, &q.hyperplane.scale(-(l + 1) - q.index - t)).unwrap()
            );
        }
        // Non-special c1 has no self-dual twist on the quadric.
        let bad = BundleExpr::ext(BundleExpr::line(&[2, 0]), BundleExpr::line(&[1, 0]));
        assert!(dual_rank2(&q, &bad).is_err());
        // omega(2) twists by -1.
        let om = dual_rank2(&p2, &BundleExpr::OmegaP2(2)).unwrap();
        assert_eq!(om, BundleExpr::OmegaP2(2).twist(DivisorClass(vec![-1])));
    }

    #[test]
    fn default_window_centres_on_c() {
        let p2 = Surface::p2();
        let expr = p2_kernel(4); // c1 = 4h
        let w = default_window(&p2, &expr, 12).unwrap();
        assert_eq!(w, Window { lo: -26, hi: 26 });
    }

    #[test]
    fn chi_constraint_where_exact() {
        let q = Surface::p1xp1();
        let expr = BundleExpr::ker(
            BundleExpr::Sum(vec![
                BundleExpr::line(&[2, 1]),
                BundleExpr::line(&[2, 1]),
                BundleExpr::line(&[1, 2]),
                BundleExpr::line(&[1, 2]),
            ]),
            BundleExpr::sum_of(BundleExpr::line(&[2, 2]), 2),
        );
        let sp = spectrum(&q, &expr, Window::new(-6, 3).unwrap(), &AssumptionSet::empty()).unwrap();
        for (t, entry) in sp.iter() {
            let chi = expr.chi(&q, &q.hyperplane.scale(t)).unwrap();
            if entry.iter().all(|v| v.is_exact()) {
                assert_eq!(entry[0].lo() - entry[1].lo() + entry[2].lo(), chi, "chi at t={t}");
            } else {
                // Some selection inside the ranges must satisfy chi.
                let ok = (entry[0].lo()..=entry[0].hi()).any(|x| {
                    (entry[1].lo()..=entry[1].hi()).any(|y| {
                        (entry[2].lo()..=entry[2].hi()).contains(&(chi - x + y))
                    })
                });
                assert!(ok, "no chi-consistent selection at t={t}");
            }
        }
    }
}
