//! Intermediate-cohomology predicates and classification machinery.
//!
//! Everything here reads finished [`Spectrum`] values: where the h1 support
//! sits (and whether the window certifiably contains all of it), whether a
//! bundle is initialized, weakly Ulrich or supernatural, the k0/s/c
//! constraints satisfied by special rank-2 bundles, and the line-bundle
//! classification data on the blow-up of the plane in one point.

mod classify;
pub mod verify;

pub use classify::classify_laway_lines;

use crate::arith::isqrt;
use crate::bundlecalc::{BundleExpr, Spectrum};
use crate::error::{Error, Result};
use crate::geometry::{special_multiple, DivisorClass, Surface};

/// Shape of the nonzero h1 locus of a spectrum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H1Profile {
    /// Twists with definitely nonzero h1, sorted.
    pub support: Vec<i64>,
    /// Smallest support twist, absent when the support is empty.
    pub k0: Option<i64>,
    /// Spread `max - min` of the support, absent when empty.
    pub s: Option<i64>,
    /// Number of support twists.
    pub l: usize,
    /// Twists strictly inside `[k0, k0+s]` with h1 = 0.
    pub gaps: Vec<i64>,
    /// True when every h1 entry in the window is exact.
    pub definite: bool,
}

impl H1Profile {
    pub fn is_connected(&self) -> bool {
        self.gaps.is_empty()
    }
}

/// Extract the h1 profile of a spectrum.
///
/// The window must certify that no support escapes it: the two lowest and two
/// highest twists all need exact h1 = 0, otherwise this is a
/// window-insufficiency error.
pub fn h1_profile(sp: &Spectrum) -> Result<H1Profile> {
    let w = sp.window;
    if w.len() < 4 {
        return Err(Error::WindowInsufficiency(format!(
            "window {w} is too small to certify tail vanishing"
        )));
    }
    for t in [w.lo, w.lo + 1, w.hi - 1, w.hi] {
        let v = sp.value(t, 1)?;
        if v.exact() != Some(0) {
            return Err(Error::WindowInsufficiency(format!(
                "h1 at boundary twist {t} is {v}, not an exact 0"
            )));
        }
    }
    let mut support = Vec::new();
    let mut definite = true;
    for (t, entry) in sp.iter() {
        let h1 = entry[1];
        if h1.is_positive() {
            support.push(t);
        } else if !h1.is_exact() {
            definite = false;
        }
    }
    let (k0, s) = match (support.first(), support.last()) {
        (Some(&lo), Some(&hi)) => (Some(lo), Some(hi - lo)),
        _ => (None, None),
    };
    let mut gaps = Vec::new();
    if let (Some(lo), Some(spread)) = (k0, s) {
        for t in lo..=lo + spread {
            if sp.value(t, 1)?.exact() == Some(0) {
                gaps.push(t);
            }
        }
    }
    Ok(H1Profile { l: support.len(), support, k0, s, gaps, definite })
}

/// `h0(E) != 0` and `h0(E(-1)) = 0`, both read exactly from the spectrum.
pub fn is_initialized(sp: &Spectrum) -> Result<bool> {
    let at0 = sp.exact(0, 0)?;
    let at_minus1 = sp.exact(-1, 0)?;
    Ok(at0 > 0 && at_minus1 == 0)
}

/// The integer c with `c1 = c*h`, when there is one. On P2 every class is a
/// multiple of the polarization.
pub fn is_special(surface: &Surface, c1: &DivisorClass) -> Option<i64> {
    special_multiple(surface, c1)
}

/// The constraints a special l-away rank-2 bundle places on the first and
/// last nonzero h1 twists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct K0Bounds {
    /// `c = -2 k0 - i_X - s`.
    pub c: i64,
    /// `k0 >= -s - 2`.
    pub lower_ok: bool,
    /// `k0 <= -i_X + 1`; only binding for indecomposable bundles when the
    /// index exceeds 1, so callers decide whether to assert it.
    pub upper_ok: bool,
}

pub fn check_k0_bounds(index: i64, k0: i64, s: i64) -> Result<K0Bounds> {
    if s < 0 {
        return Err(Error::input(format!("spread s = {s} must be non-negative")));
    }
    Ok(K0Bounds {
        c: -2 * k0 - index - s,
        lower_ok: k0 >= -s - 2,
        upper_ok: k0 <= -index + 1,
    })
}

/// The four vanishing families of a weakly Ulrich bundle on a surface,
/// written in twist form: h1 vanishes for `t >= 0` and for `t <= -3`,
/// h2 vanishes for `t >= -1`, h0 vanishes for `t <= -2`.
///
/// Every condition twist inside the window is evaluated exactly; an interval
/// entry at a consulted twist is an indeterminate error. The window must
/// reach at least `[-4, 1]` so each family is actually exercised.
pub fn is_weakly_ulrich(sp: &Spectrum) -> Result<bool> {
    Ok(weakly_ulrich_violation(sp)?.is_none())
}

/// The first violated weakly-Ulrich condition, as `(twist, index)`.
pub fn weakly_ulrich_violation(sp: &Spectrum) -> Result<Option<(i64, usize)>> {
    let w = sp.window;
    if w.lo > -4 || w.hi < 1 {
        return Err(Error::WindowInsufficiency(format!(
            "window {w} does not cover the weakly Ulrich conditions"
        )));
    }
    for (t, _) in sp.iter() {
        let mut checks: Vec<usize> = Vec::new();
        if t >= 0 || t <= -3 {
            checks.push(1);
        }
        if t >= -1 {
            checks.push(2);
        }
        if t <= -2 {
            checks.push(0);
        }
        for index in checks {
            if sp.exact(t, index)? != 0 {
                return Ok(Some((t, index)));
            }
        }
    }
    Ok(None)
}

/// An integer-valued quadratic `chi(t)`, stored as the integer coefficients
/// of `2*chi(t) = a2 t^2 + a1 t + a0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChiPoly {
    pub a2: i128,
    pub a1: i128,
    pub a0: i128,
}

impl ChiPoly {
    /// Interpolate from the expression's Euler characteristics at -1, 0, 1.
    pub fn from_expr(surface: &Surface, expr: &BundleExpr) -> Result<ChiPoly> {
        let at = |t: i64| expr.chi(surface, &surface.hyperplane.scale(t));
        let (m, z, p) = (at(-1)?, at(0)?, at(1)?);
        Ok(ChiPoly { a2: p + m - 2 * z, a1: p - m, a0: 2 * z })
    }

    pub fn eval2(&self, t: i128) -> i128 {
        self.a2 * t * t + self.a1 * t + self.a0
    }

    /// Two distinct integer roots, sorted, when they exist.
    pub fn distinct_integer_roots(&self) -> Option<(i64, i64)> {
        if self.a2 == 0 {
            return None;
        }
        let disc = self.a1 * self.a1 - 4 * self.a2 * self.a0;
        if disc <= 0 {
            return None;
        }
        let s = isqrt(disc);
        if s * s != disc {
            return None;
        }
        let den = 2 * self.a2;
        let (n1, n2) = (-self.a1 - s, -self.a1 + s);
        if n1 % den != 0 || n2 % den != 0 {
            return None;
        }
        let (r1, r2) = ((n1 / den) as i64, (n2 / den) as i64);
        Some((r1.min(r2), r1.max(r2)))
    }
}

/// At most one nonzero cohomology index at every twist in the window, and a
/// Hilbert polynomial with two distinct integral roots.
pub fn is_supernatural(sp: &Spectrum, chi: &ChiPoly) -> Result<bool> {
    for (t, _) in sp.iter() {
        let entry = [sp.exact(t, 0)?, sp.exact(t, 1)?, sp.exact(t, 2)?];
        let nonzero = entry.iter().filter(|&&v| v != 0).count();
        if nonzero > 1 {
            return Ok(false);
        }
    }
    Ok(chi.distinct_integer_roots().is_some())
}

/// How the residue families in the rank-1 classification on the one-point
/// blow-up are read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyReading {
    /// The families exactly as stated, with the k-degree unrestricted.
    Statement,
    /// The residue families restricted to k-degree 0, 1 or 2, as the
    /// derivation actually produces them.
    Proof,
}

impl FamilyReading {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyReading::Statement => "statement",
            FamilyReading::Proof => "proof",
        }
    }

    pub fn from_name(name: &str) -> Result<FamilyReading> {
        match name {
            "strict" | "statement" => Ok(FamilyReading::Statement),
            "proof" => Ok(FamilyReading::Proof),
            other => Err(Error::input(format!(
                "unknown families reading {other:?} (want strict or proof)"
            ))),
        }
    }
}

/// Which classification family `O(a k + b1 e1)` belongs to for the given l,
/// if any. The four families are the two residue families
/// `a = 2l+2 (mod 3)` and `a = 2l+3 (mod 3)` with b1 determined, plus
/// `(a, b1) = (l+1, -(l+1))` and `(l+3, -(l+2))`.
pub fn bl1_family_member(
    l: i64,
    a: i64,
    b1: i64,
    reading: FamilyReading,
) -> Option<&'static str> {
    if a == l + 1 && b1 == -(l + 1) {
        return Some("a=l+1, b1=-(l+1)");
    }
    if a == l + 3 && b1 == -(l + 2) {
        return Some("a=l+3, b1=-(l+2)");
    }
    let residue_ok = match reading {
        FamilyReading::Statement => true,
        FamilyReading::Proof => (0..=2).contains(&a),
    };
    if residue_ok {
        if (a - (2 * l + 2)).rem_euclid(3) == 0 && 3 * b1 == 2 * l + 2 - a {
            return Some("a=2l+2 (mod 3)");
        }
        if (a - (2 * l + 3)).rem_euclid(3) == 0 && 3 * b1 == 2 * l + 3 - a {
            return Some("a=2l+3 (mod 3)");
        }
    }
    None
}

/// Twists with nonzero h1 for `O(a k + b1 e1)` on the one-point blow-up:
/// the integers strictly inside
/// `(min{b1, (-a-b1-1)/2}, max{b1-1, (-a-b1-1)/2})`,
/// compared as exact rationals.
pub fn h1_interval_bl1(a: i64, b1: i64) -> Vec<i64> {
    // Scale both endpoints by 2 to keep the half-integer endpoint exact.
    let mid2 = -a - b1 - 1;
    let lo2 = (2 * b1).min(mid2);
    let hi2 = (2 * (b1 - 1)).max(mid2);
    let mut out = Vec::new();
    let start = lo2.div_euclid(2);
    let end = hi2.div_euclid(2) + 1;
    for t in start..=end {
        if 2 * t > lo2 && 2 * t < hi2 {
            out.push(t);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundlecalc::{spectrum, AssumptionSet, Window};
    use crate::geometry::SurfaceKind;
    use crate::linecoh::cohom_line;

    fn line_spectrum(surface: &Surface, coords: &[i64], lo: i64, hi: i64) -> Spectrum {
        spectrum(
            surface,
            &BundleExpr::line(coords),
            Window::new(lo, hi).unwrap(),
            &AssumptionSet::empty(),
        )
        .unwrap()
    }

    #[test]
    fn profile_of_quadric_line() {
        let q = Surface::p1xp1();
        let l = 4i64;
        let sp = line_spectrum(&q, &[l + 1, 0], -12, 4);
        let profile = h1_profile(&sp).unwrap();
        assert_eq!(profile.support, vec![-5, -4, -3, -2]);
        assert_eq!(profile.k0, Some(-l - 1));
        assert_eq!(profile.s, Some(l - 1));
        assert_eq!(profile.l, 4);
        assert!(profile.is_connected());
        assert!(profile.definite);
    }

    #[test]
    fn profile_of_structure_sheaf_is_empty() {
        for s in Surface::all() {
            let sp = line_spectrum(&s, &vec![0; s.rank], -8, 8);
            let profile = h1_profile(&sp).unwrap();
            assert_eq!(profile.l, 0);
            assert_eq!(profile.k0, None);
            assert_eq!(profile.s, None);
            assert!(profile.support.is_empty());
        }
    }

    #[test]
    fn profile_of_bl1_line() {
        let bl1 = Surface::blowup(1).unwrap();
        let sp = line_spectrum(&bl1, &[2, -2], -8, 6);
        let profile = h1_profile(&sp).unwrap();
        assert_eq!(profile.support, vec![-1]);
        assert_eq!(profile.l, 1);
    }

    #[test]
    fn profile_requires_certified_window() {
        let q = Surface::p1xp1();
        // Window ends right on the support: insufficiency.
        let sp = line_spectrum(&q, &[5, 0], -5, 3);
        assert!(matches!(h1_profile(&sp), Err(Error::WindowInsufficiency(_))));
    }

    #[test]
    fn initialized_examples() {
        let p2 = Surface::p2();
        let omega2 = spectrum(
            &p2,
            &BundleExpr::OmegaP2(2),
            Window::new(-4, 2).unwrap(),
            &AssumptionSet::empty(),
        )
        .unwrap();
        assert!(is_initialized(&omega2).unwrap());

        let o_minus1 = line_spectrum(&p2, &[-1], -4, 2);
        assert!(!is_initialized(&o_minus1).unwrap());

        // Extension on the quadric at l = 1: h0 = 6.
        let q = Surface::p1xp1();
        let e = BundleExpr::ext(BundleExpr::line(&[2, 0]), BundleExpr::line(&[0, 2]));
        let sp = spectrum(&q, &e, Window::new(-6, 2).unwrap(), &AssumptionSet::empty()).unwrap();
        assert!(is_initialized(&sp).unwrap());
        assert_eq!(sp.exact(0, 0).unwrap(), 6);
    }

    #[test]
    fn special_examples() {
        let q = Surface::p1xp1();
        assert_eq!(is_special(&q, &DivisorClass(vec![3, 3])), Some(3));
        assert_eq!(is_special(&q, &DivisorClass(vec![2, 0])), None);
        let bl1 = Surface::blowup(1).unwrap();
        assert_eq!(is_special(&bl1, &DivisorClass(vec![6, -2])), Some(2));
        assert_eq!(is_special(&bl1, &DivisorClass(vec![6, -1])), None);
        let p2 = Surface::p2();
        assert_eq!(is_special(&p2, &DivisorClass(vec![-4])), Some(-4));
    }

    #[test]
    fn k0_bounds_examples() {
        let b = check_k0_bounds(3, -2, 0).unwrap();
        assert_eq!((b.c, b.lower_ok, b.upper_ok), (1, true, true));
        let b = check_k0_bounds(2, -2, 0).unwrap();
        assert_eq!((b.c, b.lower_ok, b.upper_ok), (2, true, true));
        let b = check_k0_bounds(3, -4, 1).unwrap();
        assert!(!b.lower_ok);
        assert!(check_k0_bounds(3, -2, -1).is_err());
    }

    #[test]
    fn weakly_ulrich_examples() {
        let p2 = Surface::p2();
        let omega2 = spectrum(
            &p2,
            &BundleExpr::OmegaP2(2),
            Window::new(-6, 3).unwrap(),
            &AssumptionSet::empty(),
        )
        .unwrap();
        assert!(is_weakly_ulrich(&omega2).unwrap());

        // Full evaluation of the four families: the structure sheaf passes
        // (all of h0(O(t)) for t <= -2, h2 for t >= -1 and h1 vanish), while
        // O(2) fails the h0 family at t = -2.
        let o0 = line_spectrum(&p2, &[0], -6, 3);
        assert!(is_weakly_ulrich(&o0).unwrap());
        let o2 = line_spectrum(&p2, &[2], -6, 3);
        assert_eq!(weakly_ulrich_violation(&o2).unwrap(), Some((-2, 0)));
    }

    #[test]
    fn chi_poly_roots() {
        let p2 = Surface::p2();
        // Kernel construction at l = 3: roots -5 and -1.
        let e = BundleExpr::ker(
            BundleExpr::sum_of(BundleExpr::OmegaP2(4), 3),
            BundleExpr::sum_of(BundleExpr::line(&[3]), 4),
        );
        let chi = ChiPoly::from_expr(&p2, &e).unwrap();
        assert_eq!(chi.distinct_integer_roots(), Some((-5, -1)));

        // O(0): chi = (t+1)(t+2)/2, roots -2 and -1.
        let chi = ChiPoly::from_expr(&p2, &BundleExpr::line(&[0])).unwrap();
        assert_eq!(chi.distinct_integer_roots(), Some((-2, -1)));

        // O(0) + O(-1): chi = (t+1)^2, a double root is not distinct.
        let chi = ChiPoly::from_expr(
            &p2,
            &BundleExpr::Sum(vec![BundleExpr::line(&[0]), BundleExpr::line(&[-1])]),
        )
        .unwrap();
        assert_eq!(chi.distinct_integer_roots(), None);
    }

    #[test]
    fn supernatural_examples() {
        let p2 = Surface::p2();
        let o0 = line_spectrum(&p2, &[0], -8, 4);
        let chi = ChiPoly::from_expr(&p2, &BundleExpr::line(&[0])).unwrap();
        assert!(is_supernatural(&o0, &chi).unwrap());

        let sum = BundleExpr::Sum(vec![BundleExpr::line(&[0]), BundleExpr::line(&[-1])]);
        let sp = spectrum(&p2, &sum, Window::new(-8, 4).unwrap(), &AssumptionSet::empty()).unwrap();
        let chi = ChiPoly::from_expr(&p2, &sum).unwrap();
        assert!(!is_supernatural(&sp, &chi).unwrap());
    }

    #[test]
    fn bl1_families_examples() {
        assert_eq!(
            bl1_family_member(1, 2, -2, FamilyReading::Proof),
            Some("a=l+1, b1=-(l+1)")
        );
        assert_eq!(
            bl1_family_member(1, 4, -3, FamilyReading::Proof),
            Some("a=l+3, b1=-(l+2)")
        );
        // l = 2, (0, 2): 2l+2 = 6 with a = 0 gives b1 = 2.
        assert_eq!(
            bl1_family_member(2, 0, 2, FamilyReading::Proof),
            Some("a=2l+2 (mod 3)")
        );
        assert_eq!(bl1_family_member(2, 0, 1, FamilyReading::Proof), None);
        // The statement reading admits large k-degrees the proof reading cuts.
        assert_eq!(
            bl1_family_member(3, 5, 1, FamilyReading::Statement),
            Some("a=2l+2 (mod 3)")
        );
        assert_eq!(bl1_family_member(3, 5, 1, FamilyReading::Proof), None);
    }

    #[test]
    fn h1_interval_examples() {
        assert_eq!(h1_interval_bl1(2, -2), vec![-1]);
        assert!(h1_interval_bl1(0, 0).is_empty());
        for l in 1..=10i64 {
            let expected: Vec<i64> = (-l..=-1).collect();
            assert_eq!(h1_interval_bl1(l + 1, -(l + 1)), expected, "at l={l}");
        }
        // O(e1) is 0-away.
        assert!(h1_interval_bl1(0, 1).is_empty());
    }

    #[test]
    fn h1_interval_matches_direct_scan() {
        let bl1 = Surface::blowup(1).unwrap();
        assert_eq!(bl1.kind, SurfaceKind::Bl1);
        for a in -12..=12i64 {
            for b1 in -10..=10i64 {
                let d = DivisorClass(vec![a, b1]);
                let mut scanned = Vec::new();
                for t in -40..=40i64 {
                    let tw = bl1.twist(&d, t).unwrap();
                    if cohom_line(&bl1, &tw).unwrap().h1 != 0 {
                        scanned.push(t);
                    }
                }
                assert_eq!(
                    h1_interval_bl1(a, b1),
                    scanned,
                    "interval mismatch at (a, b1) = ({a}, {b1})"
                );
            }
        }
    }
}
