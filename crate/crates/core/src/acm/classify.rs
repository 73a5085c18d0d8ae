//! Exhaustive classification of l-away line bundles by enumeration.

use crate::acm::{h1_profile, is_initialized};
use crate::bundlecalc::{spectrum, AssumptionSet, BundleExpr, Window};
use crate::error::{Error, Result};
use crate::geometry::{DivisorClass, Surface};
use crate::linecoh::cohom_line;

const GRID_CAP: u128 = 50_000_000;

/// All line bundles with `|coords_i| <= bounds_i` whose spectrum is
/// initialized with exactly `l` twists of nonzero h1, canonically sorted.
///
/// `bounds` is either a single bound for every coordinate or one bound per
/// coordinate. The first bound must be at least `3l + 8` and the others at
/// least `2l + 6` so the search box provably contains every classified
/// family and the evaluation window certifies its endpoints.
pub fn classify_laway_lines(
    surface: &Surface,
    l: i64,
    bounds: &[i64],
) -> Result<Vec<DivisorClass>> {
    if l < 1 {
        return Err(Error::input(format!("l = {l} must be at least 1")));
    }
    let bounds = expand_bounds(surface, l, bounds)?;

    let mut grid_size: u128 = 1;
    for &b in &bounds {
        grid_size = grid_size.saturating_mul(2 * b as u128 + 1);
    }
    if grid_size > GRID_CAP {
        return Err(Error::input(format!(
            "enumeration grid of {grid_size} classes is too large"
        )));
    }

    // Window wide enough that every candidate's h1 support sits strictly
    // inside with certified zero endpoints.
    let reach: i64 = bounds.iter().sum::<i64>() + 8;
    let window = Window::new(-reach, reach)?;
    let no_assumptions = AssumptionSet::empty();

    let mut found = Vec::new();
    let mut coords = vec![0i64; surface.rank];
    enumerate(&bounds, 0, &mut coords, &mut |coords| {
        let d = DivisorClass(coords.to_vec());
        // Cheap initialized pre-filter before building a whole spectrum.
        if cohom_line(surface, &d)?.h0 == 0 {
            return Ok(());
        }
        if cohom_line(surface, &surface.twist(&d, -1)?)?.h0 != 0 {
            return Ok(());
        }
        let sp = spectrum(surface, &BundleExpr::Line(d.clone()), window, &no_assumptions)?;
        let profile = h1_profile(&sp)?;
        if profile.l == l as usize && profile.definite && is_initialized(&sp)? {
            found.push(d);
        }
        Ok(())
    })?;
    found.sort();
    Ok(found)
}

fn expand_bounds(surface: &Surface, l: i64, bounds: &[i64]) -> Result<Vec<i64>> {
    let expanded: Vec<i64> = match bounds.len() {
        1 => vec![bounds[0]; surface.rank],
        n if n == surface.rank => bounds.to_vec(),
        n => {
            return Err(Error::input(format!(
                "{n} bounds for a surface of Picard rank {}",
                surface.rank
            )))
        }
    };
    if expanded[0] < 3 * l + 8 {
        return Err(Error::input(format!(
            "bound {} is too small to certify the classification (need at least {})",
            expanded[0],
            3 * l + 8
        )));
    }
    for &b in &expanded[1..] {
        if b < 2 * l + 6 {
            return Err(Error::input(format!(
                "secondary bound {b} is too small (need at least {})",
                2 * l + 6
            )));
        }
    }
    Ok(expanded)
}

fn enumerate(
    bounds: &[i64],
    at: usize,
    coords: &mut Vec<i64>,
    visit: &mut impl FnMut(&[i64]) -> Result<()>,
) -> Result<()> {
    if at == bounds.len() {
        return visit(coords);
    }
    for v in -bounds[at]..=bounds[at] {
        coords[at] = v;
        enumerate(bounds, at + 1, coords, visit)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadric_lines_are_the_two_rulings() {
        let q = Surface::p1xp1();
        for l in [1i64, 3, 5] {
            let found = classify_laway_lines(&q, l, &[3 * l + 8]).unwrap();
            assert_eq!(
                found,
                vec![
                    DivisorClass(vec![0, l + 1]),
                    DivisorClass(vec![l + 1, 0]),
                ],
                "at l={l}"
            );
        }
    }

    #[test]
    fn plane_has_no_laway_lines() {
        let p2 = Surface::p2();
        for l in [1i64, 2, 4] {
            assert!(classify_laway_lines(&p2, l, &[3 * l + 8]).unwrap().is_empty());
        }
    }

    #[test]
    fn bl1_lines_include_the_named_examples() {
        let bl1 = Surface::blowup(1).unwrap();
        let found = classify_laway_lines(&bl1, 1, &[12, 8]).unwrap();
        assert!(found.contains(&DivisorClass(vec![2, -2])));
        assert!(found.contains(&DivisorClass(vec![2, 1])));
    }

    #[test]
    fn bound_must_be_large_enough() {
        let q = Surface::p1xp1();
        assert!(matches!(
            classify_laway_lines(&q, 5, &[10]),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn output_stable_under_bigger_bounds() {
        let q = Surface::p1xp1();
        let l = 2;
        let a = classify_laway_lines(&q, l, &[3 * l + 8]).unwrap();
        let b = classify_laway_lines(&q, l, &[3 * l + 14]).unwrap();
        assert_eq!(a, b);

        let bl1 = Surface::blowup(1).unwrap();
        let a = classify_laway_lines(&bl1, l, &[3 * l + 9, 2 * l + 6]).unwrap();
        let b = classify_laway_lines(&bl1, l, &[3 * l + 15, 2 * l + 12]).unwrap();
        assert_eq!(a, b);
    }
}
