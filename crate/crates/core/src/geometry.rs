//! Picard lattices of the five surfaces and Riemann-Roch.
//!
//! The supported surfaces are the projective plane, the quadric surface
//! P1 x P1, and the blow-up of the plane in one, two or three general points.
//! Divisor classes are integer vectors in the fixed basis
//! `(h)`, `(h1, h2)` or `(k, e1, .., en)`, in that coordinate order.

use std::fmt;

use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};

/// Which of the five del Pezzo surfaces we are on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SurfaceKind {
    P2,
    P1xP1,
    Bl1,
    Bl2,
    Bl3,
}

impl SurfaceKind {
    pub fn name(&self) -> &'static str {
        match self {
            SurfaceKind::P2 => "P2",
            SurfaceKind::P1xP1 => "P1xP1",
            SurfaceKind::Bl1 => "Bl1",
            SurfaceKind::Bl2 => "Bl2",
            SurfaceKind::Bl3 => "Bl3",
        }
    }
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Integer coordinate vector of a divisor class in the surface's Picard basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DivisorClass(pub Vec<i64>);

impl DivisorClass {
    pub fn new(coords: Vec<i64>) -> Self {
        DivisorClass(coords)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, other: &DivisorClass) -> Result<DivisorClass> {
        if self.0.len() != other.0.len() {
            return Err(Error::input(format!(
                "divisor rank mismatch: {} vs {}",
                self.0.len(),
                other.0.len()
            )));
        }
        Ok(DivisorClass(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn sub(&self, other: &DivisorClass) -> Result<DivisorClass> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> DivisorClass {
        DivisorClass(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, n: i64) -> DivisorClass {
        DivisorClass(self.0.iter().map(|a| a * n).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }
}

/// A surface together with its Picard data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Surface {
    pub kind: SurfaceKind,
    /// Picard rank: length of every divisor coordinate vector.
    pub rank: usize,
    /// Fano index: the largest i with K = -i * h.
    pub index: i64,
    /// The polarization class h.
    pub hyperplane: DivisorClass,
    /// The canonical class K.
    pub canonical: DivisorClass,
}

impl Surface {
    pub fn p2() -> Surface {
        Surface {
            kind: SurfaceKind::P2,
            rank: 1,
            index: 3,
            hyperplane: DivisorClass(vec![1]),
            canonical: DivisorClass(vec![-3]),
        }
    }

    pub fn p1xp1() -> Surface {
        Surface {
            kind: SurfaceKind::P1xP1,
            rank: 2,
            index: 2,
            hyperplane: DivisorClass(vec![1, 1]),
            canonical: DivisorClass(vec![-2, -2]),
        }
    }

    /// Blow-up of the plane in `n` general points, `1 <= n <= 3`.
    /// Here h = 3k - e1 - .. - en = -K.
    pub fn blowup(n: usize) -> Result<Surface> {
        if !(1..=3).contains(&n) {
            return Err(Error::input(format!("blow-up in {n} points not supported")));
        }
        let kind = match n {
            1 => SurfaceKind::Bl1,
            2 => SurfaceKind::Bl2,
            _ => SurfaceKind::Bl3,
        };
        let mut h = vec![3];
        h.extend(std::iter::repeat_n(-1, n));
        let k: Vec<i64> = h.iter().map(|c| -c).collect();
        Ok(Surface {
            kind,
            rank: n + 1,
            index: 1,
            hyperplane: DivisorClass(h),
            canonical: DivisorClass(k),
        })
    }

    pub fn by_kind(kind: SurfaceKind) -> Surface {
        match kind {
            SurfaceKind::P2 => Surface::p2(),
            SurfaceKind::P1xP1 => Surface::p1xp1(),
            SurfaceKind::Bl1 => Surface::blowup(1).unwrap(),
            SurfaceKind::Bl2 => Surface::blowup(2).unwrap(),
            SurfaceKind::Bl3 => Surface::blowup(3).unwrap(),
        }
    }

    pub fn from_name(name: &str) -> Result<Surface> {
        match name {
            "P2" | "p2" => Ok(Surface::p2()),
            "P1xP1" | "p1xp1" | "P1XP1" => Ok(Surface::p1xp1()),
            "Bl1" | "bl1" => Surface::blowup(1),
            "Bl2" | "bl2" => Surface::blowup(2),
            "Bl3" | "bl3" => Surface::blowup(3),
            other => Err(Error::input(format!(
                "unknown surface {other:?} (expected P2, P1xP1, Bl1, Bl2 or Bl3)"
            ))),
        }
    }

    pub fn all() -> Vec<Surface> {
        vec![
            Surface::p2(),
            Surface::p1xp1(),
            Surface::blowup(1).unwrap(),
            Surface::blowup(2).unwrap(),
            Surface::blowup(3).unwrap(),
        ]
    }

    pub fn is_blowup(&self) -> bool {
        matches!(self.kind, SurfaceKind::Bl1 | SurfaceKind::Bl2 | SurfaceKind::Bl3)
    }

    pub fn zero_divisor(&self) -> DivisorClass {
        DivisorClass(vec![0; self.rank])
    }

    fn check_rank(&self, d: &DivisorClass) -> Result<()> {
        if d.rank() != self.rank {
            return Err(Error::input(format!(
                "divisor has {} coordinates, surface {} has Picard rank {}",
                d.rank(),
                self.kind,
                self.rank
            )));
        }
        Ok(())
    }

    /// Twist by `t` copies of the polarization: `d + t*h`.
    pub fn twist(&self, d: &DivisorClass, t: i64) -> Result<DivisorClass> {
        self.check_rank(d)?;
        d.add(&self.hyperplane.scale(t))
    }

    /// Canonical textual form: `O(a)`, `O(a,b)` or `O(a;b1,...,bn)`.
    pub fn format_divisor(&self, d: &DivisorClass) -> String {
        match self.kind {
            SurfaceKind::P2 => format!("O({})", d.0[0]),
            SurfaceKind::P1xP1 => format!("O({},{})", d.0[0], d.0[1]),
            _ => {
                let rest: Vec<String> = d.0[1..].iter().map(|b| b.to_string()).collect();
                format!("O({};{})", d.0[0], rest.join(","))
            }
        }
    }

    /// Parse the per-surface divisor syntax. Whitespace is insignificant.
    pub fn parse_divisor(&self, text: &str) -> Result<DivisorClass> {
        let stripped: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = stripped
            .strip_prefix("O(")
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::input(format!("divisor {text:?} does not match O(...)")))?;
        let coords = parse_divisor_coords(inner)?;
        let d = DivisorClass(coords);
        self.check_rank(&d)?;
        if self.kind == SurfaceKind::P1xP1 && inner.contains(';') {
            return Err(Error::input("P1xP1 divisors are written O(a,b)".to_string()));
        }
        if self.is_blowup() && !inner.contains(';') && self.rank > 1 {
            return Err(Error::input(
                "blow-up divisors are written O(a;b1,...,bn)".to_string(),
            ));
        }
        Ok(d)
    }
}

/// Coordinates from the inside of `O(...)`: either `a`, `a,b` or `a;b1,..,bn`.
pub(crate) fn parse_divisor_coords(inner: &str) -> Result<Vec<i64>> {
    let parse_int = |s: &str| -> Result<i64> {
        s.parse::<i64>()
            .map_err(|_| Error::input(format!("invalid integer {s:?} in divisor")))
    };
    let mut coords = Vec::new();
    if let Some((a, rest)) = inner.split_once(';') {
        coords.push(parse_int(a)?);
        for part in rest.split(',') {
            coords.push(parse_int(part)?);
        }
    } else {
        for part in inner.split(',') {
            coords.push(parse_int(part)?);
        }
    }
    Ok(coords)
}

/// The integer c with `d = c * h`, if the class is a multiple of the
/// polarization. On P2 every class qualifies.
pub fn special_multiple(surface: &Surface, d: &DivisorClass) -> Option<i64> {
    if d.rank() != surface.rank {
        return None;
    }
    let h = &surface.hyperplane;
    if d.is_zero() {
        return Some(0);
    }
    // All coordinates must scale h by the same integer factor.
    let mut c: Option<i64> = None;
    for (&di, &hi) in d.0.iter().zip(&h.0) {
        if hi == 0 {
            if di != 0 {
                return None;
            }
            continue;
        }
        if di % hi != 0 {
            return None;
        }
        let q = di / hi;
        match c {
            None => c = Some(q),
            Some(prev) if prev != q => return None,
            _ => {}
        }
    }
    c
}

/// Intersection number of two divisor classes.
///
/// P2: a1*a2. P1xP1: a1*b2 + a2*b1. Blow-ups: k*k = 1, ei*ei = -1 and all
/// mixed products vanish.
pub fn intersect(surface: &Surface, d1: &DivisorClass, d2: &DivisorClass) -> Result<i128> {
    surface.check_rank(d1)?;
    surface.check_rank(d2)?;
    match surface.kind {
        SurfaceKind::P2 => arith::mul(d1.0[0] as i128, d2.0[0] as i128),
        SurfaceKind::P1xP1 => arith::add(
            arith::mul(d1.0[0] as i128, d2.0[1] as i128)?,
            arith::mul(d1.0[1] as i128, d2.0[0] as i128)?,
        ),
        _ => {
            let mut acc = arith::mul(d1.0[0] as i128, d2.0[0] as i128)?;
            for i in 1..surface.rank {
                acc = arith::sub(acc, arith::mul(d1.0[i] as i128, d2.0[i] as i128)?)?;
            }
            Ok(acc)
        }
    }
}

/// The Serre-dual class `K - d`.
pub fn serre_dual(surface: &Surface, d: &DivisorClass) -> Result<DivisorClass> {
    surface.check_rank(d)?;
    surface.canonical.sub(d)
}

/// Euler characteristic of the line bundle `O(d)`, as a polynomial in the
/// coordinates; valid for every integer input.
///
/// P2: (a+1)(a+2)/2. P1xP1: (a+1)(b+1).
/// Blow-ups: (a+1)(a+2)/2 + sum_i b_i(1-b_i)/2.
pub fn chi_line(surface: &Surface, d: &DivisorClass) -> Result<i128> {
    surface.check_rank(d)?;
    match surface.kind {
        SurfaceKind::P2 => {
            let a = d.0[0] as i128;
            arith::half(arith::mul(a + 1, a + 2)?)
        }
        SurfaceKind::P1xP1 => arith::mul(d.0[0] as i128 + 1, d.0[1] as i128 + 1),
        _ => {
            let a = d.0[0] as i128;
            let mut acc = arith::half(arith::mul(a + 1, a + 2)?)?;
            for &b in &d.0[1..] {
                let b = b as i128;
                acc = arith::add(acc, arith::half(arith::mul(b, 1 - b)?)?)?;
            }
            Ok(acc)
        }
    }
}

/// Euler characteristic of a rank-2 bundle with invariants `(c1, c2)`
/// twisted by `t*h`. Stated only on P2 and P1xP1.
pub fn chi_rank2(surface: &Surface, c1: &DivisorClass, c2: i128, t: i64) -> Result<i128> {
    match surface.kind {
        SurfaceKind::P2 | SurfaceKind::P1xP1 => {}
        _ => {
            return Err(Error::feature(format!(
                "rank-2 Riemann-Roch is not provided on {}",
                surface.kind
            )))
        }
    }
    surface.check_rank(c1)?;
    let t = t as i128;
    let h2 = intersect(surface, &surface.hyperplane, &surface.hyperplane)?;
    let c1h = intersect(surface, c1, &surface.hyperplane)?;
    let c1sq = intersect(surface, c1, c1)?;
    let ix = surface.index as i128;
    // (2 h^2 t^2 + (2 c1.h + 2 i h^2) t + c1^2 + i c1.h - 2 c2 + 4) / 2
    let quad = arith::mul(2 * h2, arith::mul(t, t)?)?;
    let lin = arith::mul(arith::add(2 * c1h, 2 * ix * h2)?, t)?;
    let cst = arith::add(arith::add(c1sq, ix * c1h)?, 4 - 2 * c2)?;
    arith::half(arith::add(arith::add(quad, lin)?, cst)?)
}

/// Euler characteristic of a rank-2 bundle on P1xP1 twisted by `O(a,b)`.
///
/// Same formula as [`chi_rank2`] but with an arbitrary bidegree twist;
/// `chi_rank2` is the diagonal `a = b = t`.
pub fn chi_rank2_bidegree(c1: &DivisorClass, c2: i128, a: i64, b: i64) -> Result<i128> {
    let surface = Surface::p1xp1();
    surface.check_rank(c1)?;
    let (a, b) = (a as i128, b as i128);
    let c1sq = intersect(&surface, c1, c1)?;
    // ((2a+2) h1 + (2b+2) h2) . c1 = (2a+2) c1_2 + (2b+2) c1_1
    let lin = arith::add(
        arith::mul(2 * a + 2, c1.0[1] as i128)?,
        arith::mul(2 * b + 2, c1.0[0] as i128)?,
    )?;
    let c2part = arith::sub(4 * arith::mul(a, b)? + 4 * a + 4 * b + 4, 2 * c2)?;
    arith::half(arith::add(arith::add(c1sq, lin)?, c2part)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(coords: &[i64]) -> DivisorClass {
        DivisorClass(coords.to_vec())
    }

    #[test]
    fn surface_invariants() {
        for s in Surface::all() {
            let expected_index = match s.kind {
                SurfaceKind::P2 => 3,
                SurfaceKind::P1xP1 => 2,
                _ => 1,
            };
            assert_eq!(s.index, expected_index);
            // K = -index * h on P2 and the quadric, K = -h on blow-ups.
            if s.is_blowup() {
                assert_eq!(s.canonical, s.hyperplane.neg());
            } else {
                assert_eq!(s.canonical, s.hyperplane.scale(-s.index));
            }
            let h2 = intersect(&s, &s.hyperplane, &s.hyperplane).unwrap();
            let expected_h2 = match s.kind {
                SurfaceKind::P2 => 1,
                SurfaceKind::P1xP1 => 2,
                SurfaceKind::Bl1 => 8,
                SurfaceKind::Bl2 => 7,
                SurfaceKind::Bl3 => 6,
            };
            assert_eq!(h2, expected_h2);
        }
    }

    #[test]
    fn intersect_defining_relations() {
        let q = Surface::p1xp1();
        assert_eq!(intersect(&q, &d(&[1, 0]), &d(&[0, 1])).unwrap(), 1);
        assert_eq!(intersect(&q, &d(&[1, 0]), &d(&[1, 0])).unwrap(), 0);

        let p2 = Surface::p2();
        assert_eq!(intersect(&p2, &d(&[1]), &d(&[1])).unwrap(), 1);

        // h.h on Bl3 expands to 9 - 1 - 1 - 1.
        let bl3 = Surface::blowup(3).unwrap();
        let h = d(&[3, -1, -1, -1]);
        assert_eq!(intersect(&bl3, &h, &h).unwrap(), 6);
    }

    #[test]
    fn intersect_rejects_rank_mismatch() {
        let q = Surface::p1xp1();
        assert!(matches!(
            intersect(&q, &d(&[1]), &d(&[0, 1])),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn serre_dual_examples() {
        let p2 = Surface::p2();
        assert_eq!(serre_dual(&p2, &d(&[0])).unwrap(), d(&[-3]));

        let q = Surface::p1xp1();
        assert_eq!(serre_dual(&q, &d(&[3, -1])).unwrap(), d(&[-5, -1]));

        // On Bl1: O(a k + b1 e1) maps to O((-3-a) k + (1-b1) e1).
        let bl1 = Surface::blowup(1).unwrap();
        for a in -6..=6 {
            for b1 in -6..=6 {
                assert_eq!(serre_dual(&bl1, &d(&[a, b1])).unwrap(), d(&[-3 - a, 1 - b1]));
            }
        }
    }

    #[test]
    fn chi_line_examples() {
        for n in 1..=3 {
            let bl = Surface::blowup(n).unwrap();
            assert_eq!(chi_line(&bl, &bl.zero_divisor()).unwrap(), 1);
        }
        let q = Surface::p1xp1();
        assert_eq!(chi_line(&q, &d(&[3, -2])).unwrap(), -4);
        let bl1 = Surface::blowup(1).unwrap();
        assert_eq!(chi_line(&bl1, &d(&[-1, -1])).unwrap(), -1);
    }

    #[test]
    fn chi_rank2_examples() {
        let p2 = Surface::p2();
        // c1 = h, c2 = 1: chi(E(-1)) = 0 pins c2 for the unique 1-away bundle.
        assert_eq!(chi_rank2(&p2, &d(&[1]), 1, -1).unwrap(), 0);
        assert_eq!(chi_rank2(&p2, &d(&[1]), 1, 0).unwrap(), 3);

        let q = Surface::p1xp1();
        assert_eq!(chi_rank2(&q, &d(&[2, 2]), 4, -1).unwrap(), 0);
        // Bidegree form agrees on the diagonal.
        for t in -5..=5 {
            assert_eq!(
                chi_rank2(&q, &d(&[2, 2]), 4, t).unwrap(),
                chi_rank2_bidegree(&d(&[2, 2]), 4, t, t).unwrap()
            );
        }
    }

    #[test]
    fn chi_rank2_unsupported_on_blowups() {
        let bl2 = Surface::blowup(2).unwrap();
        assert!(matches!(
            chi_rank2(&bl2, &d(&[1, 0, 0]), 1, 0),
            Err(Error::Feature(_))
        ));
    }

    #[test]
    fn divisor_text_round_trip() {
        let cases = [
            ("P2", "O(-7)"),
            ("P1xP1", "O(3,-2)"),
            ("Bl1", "O(2;-2)"),
            ("Bl2", "O(3;-3,-1)"),
            ("Bl3", "O(0;1,2,-3)"),
        ];
        for (sname, text) in cases {
            let s = Surface::from_name(sname).unwrap();
            let parsed = s.parse_divisor(text).unwrap();
            assert_eq!(s.format_divisor(&parsed), text);
        }
        // Whitespace is insignificant.
        let bl2 = Surface::from_name("Bl2").unwrap();
        assert_eq!(
            bl2.parse_divisor(" O( 3 ; -3 , -1 ) ").unwrap(),
            d(&[3, -3, -1])
        );
    }

    #[test]
    fn divisor_text_rejects_wrong_arity() {
        let q = Surface::p1xp1();
        assert!(q.parse_divisor("O(1)").is_err());
        assert!(q.parse_divisor("O(1;2)").is_err());
        let bl1 = Surface::blowup(1).unwrap();
        assert!(bl1.parse_divisor("O(1,2)").is_err());
    }
}
