//! Registry of verifiers that recompute published classification data.
//!
//! Each verifier rebuilds one classification, table or dimension formula
//! from scratch through the cohomology engine and reports stated versus
//! computed values. Mismatches are first-class outcomes: nothing is patched,
//! both numbers are always recorded.

use crate::acm::{
    bl1_family_member, check_k0_bounds, classify_laway_lines, h1_interval_bl1, h1_profile,
    is_initialized, is_supernatural, is_weakly_ulrich, ChiPoly, FamilyReading,
};
use crate::bundlecalc::{
    refine_serre_selfdual, spectrum, Assumption, AssumptionSet, BundleExpr, Spectrum, TwistRange,
    Window, H0,
};
use crate::error::{Error, Result};
use crate::geometry::{DivisorClass, Surface};
use crate::linecoh::cohom_line;
use crate::quiver::{beilinson_dimvec, euler_form, moduli_dim, root_type, RootType};
use crate::report::Report;

/// Options shared by every verifier.
#[derive(Debug, Clone)]
pub struct VerifyParams {
    /// Largest l for the per-l families (default 12).
    pub l_max: i64,
    /// Preferred reading of the residue families on the one-point blow-up.
    pub families: FamilyReading,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams { l_max: 12, families: FamilyReading::Proof }
    }
}

/// Registry ids, in canonical order.
pub const REGISTRY: &[&str] = &[
    "P2-1AWAY", "P2-2AWAY", "P2-KERNEL", "P2-QUIVER", "Q-LINES", "Q-1AWAY", "Q-2AWAY", "Q-EXT",
    "Q-CONNECTED", "Q-QUIVER", "BL1-LINES", "BL1-RANK2", "BL23-M", "BL23-EXT", "WU-ALL", "SN-ALL",
];

/// Run one registry entry.
pub fn verify_theorem(id: &str, params: &VerifyParams) -> Result<Report> {
    if params.l_max < 1 || params.l_max > 40 {
        return Err(Error::input(format!("l-max = {} out of the supported range", params.l_max)));
    }
    match id {
        "P2-1AWAY" => p2_1away(params),
        "P2-2AWAY" => p2_2away(params),
        "P2-KERNEL" => p2_kernel_family(params),
        "P2-QUIVER" => p2_quiver(params),
        "Q-LINES" => q_lines(params),
        "Q-1AWAY" => q_1away(params),
        "Q-2AWAY" => q_2away(params),
        "Q-EXT" => q_ext(params),
        "Q-CONNECTED" => q_connected(params),
        "Q-QUIVER" => q_quiver(params),
        "BL1-LINES" => bl1_lines(params),
        "BL1-RANK2" => bl1_rank2(params),
        "BL23-M" => bl23_m(params),
        "BL23-EXT" => bl23_ext(params),
        "WU-ALL" => wu_all(params),
        "SN-ALL" => sn_all(params),
        other => Err(Error::input(format!("unknown verification id {other:?}"))),
    }
}

/// Run the whole registry in canonical order.
pub fn verify_all(params: &VerifyParams) -> Result<Vec<Report>> {
    REGISTRY.iter().map(|id| verify_theorem(id, params)).collect()
}

// --- construction catalogue -------------------------------------------------

pub fn p2_kernel_expr(l: i64) -> BundleExpr {
    BundleExpr::ker(
        BundleExpr::sum_of(BundleExpr::OmegaP2(l + 1), l as usize),
        BundleExpr::sum_of(BundleExpr::line(&[l]), (2 * l - 2) as usize),
    )
}

pub fn p2_2away_second_expr() -> BundleExpr {
    BundleExpr::ker(
        BundleExpr::Sum(vec![BundleExpr::OmegaP2(2), BundleExpr::line(&[0])]),
        BundleExpr::line(&[1]),
    )
}

pub fn q_ext_expr(l: i64) -> BundleExpr {
    BundleExpr::ext(BundleExpr::line(&[l + 1, 0]), BundleExpr::line(&[0, l + 1]))
}

pub fn q_1away_first_expr() -> BundleExpr {
    BundleExpr::ker(
        BundleExpr::Sum(vec![
            BundleExpr::line(&[2, 1]),
            BundleExpr::line(&[2, 1]),
            BundleExpr::line(&[1, 2]),
            BundleExpr::line(&[1, 2]),
        ]),
        BundleExpr::sum_of(BundleExpr::line(&[2, 2]), 2),
    )
}

pub fn q_1away_second_expr() -> BundleExpr {
    BundleExpr::ker(
        BundleExpr::Sum(vec![
            BundleExpr::line(&[0, 0]),
            BundleExpr::line(&[1, 0]),
            BundleExpr::line(&[0, 1]),
        ]),
        BundleExpr::line(&[1, 1]),
    )
}

pub fn q_2away_first_expr() -> BundleExpr {
    BundleExpr::ker(
        BundleExpr::Sum(vec![
            BundleExpr::sum_of(BundleExpr::line(&[3, 2]), 3),
            BundleExpr::sum_of(BundleExpr::line(&[2, 3]), 3),
        ])
        .normalize(),
        BundleExpr::sum_of(BundleExpr::line(&[3, 3]), 4),
    )
}

pub fn q_2away_second_expr(c2: i64) -> BundleExpr {
    let mut parts = Vec::new();
    parts.extend(vec![BundleExpr::line(&[1, 1]); (5 - c2) as usize]);
    parts.extend(vec![BundleExpr::line(&[2, 1]); (c2 - 2) as usize]);
    parts.extend(vec![BundleExpr::line(&[1, 2]); (c2 - 2) as usize]);
    BundleExpr::ker(
        BundleExpr::Sum(parts),
        BundleExpr::sum_of(BundleExpr::line(&[2, 2]), (c2 - 1) as usize),
    )
}

pub fn bl1_rank2_expr(l: i64) -> BundleExpr {
    if l == 1 {
        BundleExpr::ext(BundleExpr::line(&[0, 1]), BundleExpr::line(&[2, -2]))
    } else {
        BundleExpr::ext(BundleExpr::line(&[l, -l]), BundleExpr::line(&[0, 2]))
    }
}

pub fn bl23_m_class(n: usize, l: i64) -> DivisorClass {
    let mut coords = vec![l + 1, -(l + 1), -1];
    coords.resize(n + 1, 0);
    DivisorClass(coords)
}

fn e1_class(n: usize) -> DivisorClass {
    let mut coords = vec![0, 1];
    coords.resize(n + 1, 0);
    DivisorClass(coords)
}

/// The vanishing `h0(E(t)) = 0 for t <= -1` every initialized rank-2 bundle
/// on these surfaces satisfies.
pub fn initialized_vanishing() -> AssumptionSet {
    AssumptionSet::new()
        .with(Assumption::vanishing(
            H0,
            TwistRange::AtMost(-1),
            "h0 vanishing below the initial twist",
        ))
        .expect("single assumption cannot conflict")
}

/// Spectrum of a special rank-2 construction with every published forcing
/// applied: the h0-vanishing assumption (optional) and the rank-2
/// self-duality refinement.
fn forced_spectrum(
    surface: &Surface,
    expr: &BundleExpr,
    window: Window,
    assume_initialized: bool,
) -> Result<Spectrum> {
    let assumptions = if assume_initialized {
        initialized_vanishing()
    } else {
        AssumptionSet::empty()
    };
    let sp = spectrum(surface, expr, window, &assumptions)?;
    let c = expr.selfdual_twist(surface)?;
    refine_serre_selfdual(surface, &sp, c)
}

fn line_spectrum(surface: &Surface, d: &DivisorClass, window: Window) -> Result<Spectrum> {
    spectrum(surface, &BundleExpr::Line(d.clone()), window, &AssumptionSet::empty())
}

/// Cohomology of the expression at a bidegree (or other divisor) offset.
fn triple_at_offset(
    surface: &Surface,
    expr: &BundleExpr,
    offset: &DivisorClass,
) -> Result<[crate::bundlecalc::DimValue; 3]> {
    let twisted = expr.clone().twist(offset.clone());
    let sp = spectrum(surface, &twisted, Window::new(0, 0)?, &AssumptionSet::empty())?;
    Ok(*sp.get(0)?)
}

fn fmt_triple(t: [i128; 3]) -> String {
    format!("({}, {}, {})", t[0], t[1], t[2])
}

fn fmt_values(t: &[crate::bundlecalc::DimValue; 3]) -> String {
    format!("({}, {}, {})", t[0], t[1], t[2])
}

fn support_string(support: &[i64]) -> String {
    if support.is_empty() {
        "{}".to_string()
    } else {
        let parts: Vec<String> = support.iter().map(|t| t.to_string()).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// Check one h-twist table row: expected (h0, h1, h2) triples per twist.
fn check_table(
    report: &mut Report,
    sp: &Spectrum,
    cells: &[(i64, [i128; 3])],
    label: &str,
) -> Result<()> {
    for &(p, expected) in cells {
        let got = [sp.exact(p, 0)?, sp.exact(p, 1)?, sp.exact(p, 2)?];
        report.check(
            &format!("{label}: cohomology column at twist {p}"),
            &format!("{label}, p={p}"),
            fmt_triple(expected),
            fmt_triple(got),
        );
    }
    Ok(())
}

// --- individual verifiers ---------------------------------------------------

fn p2_1away(_params: &VerifyParams) -> Result<Report> {
    let p2 = Surface::p2();
    let mut report = Report::new(
        "P2-1AWAY",
        "classification: the unique 1-away rank-2 bundle on P2",
        "an initialized 1-away rank-2 bundle on P2 is the twisted cotangent bundle omega(2), \
         with a single h1 = 1 at twist -2",
    );
    let expr = BundleExpr::OmegaP2(2);
    let sp = spectrum(&p2, &expr, Window::new(-8, 4)?, &AssumptionSet::empty())?;

    check_table(
        &mut report,
        &sp,
        &[(-3, [0, 0, 0]), (-2, [0, 1, 0]), (-1, [0, 0, 0])],
        "omega(2)",
    )?;

    let profile = h1_profile(&sp)?;
    report.check("h1 support", "omega(2)", "{-2}".to_string(), support_string(&profile.support));
    report.check("k0", "omega(2)", -2i64, profile.k0.unwrap_or(i64::MAX));
    report.check("spread s", "omega(2)", 0i64, profile.s.unwrap_or(-1));

    let bounds = check_k0_bounds(p2.index, -2, 0)?;
    report.check("c = -2 k0 - i - s", "omega(2)", 1i64, bounds.c);
    report.check(
        "c agrees with c1 = c h",
        "omega(2)",
        bounds.c,
        expr.selfdual_twist(&p2)?,
    );
    report.expect("k0 bounds hold", "omega(2)", bounds.lower_ok && bounds.upper_ok, "bounds");

    report.expect("initialized", "omega(2)", is_initialized(&sp)?, "h0 pattern");
    report.expect("weakly Ulrich", "omega(2)", is_weakly_ulrich(&sp)?, "vanishing families");

    // The classification text asserts a nonzero h0 for the untwisted
    // cotangent bundle; the nonvanishing actually sits in h1.
    report.info(
        "stated nonvanishing of the untwisted cotangent bundle",
        "omega(2) at twist -2",
        "h0 = 1",
        "h0 = 0, h1 = 1 (the nonvanishing lives in h1; likely a typo)",
    );

    Ok(report.finish("single h1 = 1 at twist -2; initialized; weakly Ulrich"))
}

fn p2_2away(_params: &VerifyParams) -> Result<Report> {
    let p2 = Surface::p2();
    let mut report = Report::new(
        "P2-2AWAY",
        "classification: 2-away rank-2 bundles on P2 (two kernel shapes)",
        "the two kernel constructions reproduce the published cohomology tables, \
         and their stated shifts are weakly Ulrich",
    );

    // Shape (i): ker(omega(3)^2 -> O(2)^2), h1 support {-3, -2}.
    let first = p2_kernel_expr(2);
    let sp1 = forced_spectrum(&p2, &first, Window::new(-12, 6)?, true)?;
    check_table(
        &mut report,
        &sp1,
        &[(-4, [0, 0, 0]), (-3, [0, 2, 0]), (-2, [0, 2, 0])],
        "shape (i)",
    )?;
    let profile1 = h1_profile(&sp1)?;
    report.check("h1 support", "shape (i)", "{-3, -2}".to_string(), support_string(&profile1.support));
    let bounds1 = check_k0_bounds(p2.index, -3, 1)?;
    report.check("c from k0 = -3, s = 1", "shape (i)", 2i64, bounds1.c);
    report.check("c agrees with c1 = c h", "shape (i)", bounds1.c, first.selfdual_twist(&p2)?);
    report.expect("initialized", "shape (i)", is_initialized(&sp1)?, "h0 pattern");
    report.expect(
        "twisted by -1 it is weakly Ulrich",
        "shape (i)",
        is_weakly_ulrich(&sp1.shifted(-1))?,
        "vanishing families",
    );

    // Shape (ii): ker(omega(2) (+) O -> O(1)), h1 support {-2, -1}.
    let second = p2_2away_second_expr();
    let sp2 = forced_spectrum(&p2, &second, Window::new(-12, 6)?, true)?;
    check_table(
        &mut report,
        &sp2,
        &[(-3, [0, 0, 1]), (-2, [0, 1, 0]), (-1, [0, 1, 0])],
        "shape (ii)",
    )?;
    let profile2 = h1_profile(&sp2)?;
    report.check("h1 support", "shape (ii)", "{-2, -1}".to_string(), support_string(&profile2.support));
    let bounds2 = check_k0_bounds(p2.index, -2, 1)?;
    report.check("c from k0 = -2, s = 1", "shape (ii)", 0i64, bounds2.c);
    report.check("c agrees with c1 = c h", "shape (ii)", bounds2.c, second.selfdual_twist(&p2)?);
    report.expect("initialized", "shape (ii)", is_initialized(&sp2)?, "h0 pattern");
    report.expect(
        "weakly Ulrich as constructed",
        "shape (ii)",
        is_weakly_ulrich(&sp2)?,
        "vanishing families",
    );

    Ok(report.finish("both kernel tables reproduced exactly; stated shifts weakly Ulrich"))
}

fn p2_kernel_family(params: &VerifyParams) -> Result<Report> {
    let p2 = Surface::p2();
    let mut report = Report::new(
        "P2-KERNEL",
        "existence: mu-stable l-away kernel bundles on P2",
        "the kernel of omega(l+1)^l -> O(l)^(2l-2) is an initialized supernatural l-away \
         bundle with h1(E(t)) = (t+l+2)(-t-1) on [-l, -2] and h1(E(-l-1)) = l",
    );
    report.param("l", format!("2..={}", params.l_max.max(2)));

    for l in 2..=params.l_max.max(2) {
        let loc = format!("l={l}");
        let expr = p2_kernel_expr(l);
        // Mirror-closed window so the self-duality refinement reaches every
        // twist the criteria read.
        let lo = (-2 * l - 6).min(-l - 9);
        let sp = forced_spectrum(&p2, &expr, Window::new(lo, 6)?, true)?;

        report.check("h1 at the lowest support twist -l-1", &loc, l as i128, sp.exact(-l - 1, 1)?);
        let mut h1_ok = true;
        let mut first_bad = String::new();
        for t in -2 * l - 6..=6 {
            let expected = if (-l..=-2).contains(&t) {
                ((t + l + 2) * (-t - 1)) as i128
            } else if t == -l - 1 {
                l as i128
            } else {
                0
            };
            let got = sp.exact(t, 1)?;
            if got != expected && h1_ok {
                h1_ok = false;
                first_bad = format!("t={t}: expected {expected}, computed {got}");
            }
        }
        report.expect(
            "h1(E(t)) = (t+l+2)(-t-1) on [-l,-2] and 0 outside the support",
            &loc,
            h1_ok,
            if h1_ok { "all twists match".to_string() } else { first_bad },
        );
        report.check("h0(E) at twist 0", &loc, (l + 2) as i128, sp.exact(0, 0)?);
        report.expect("initialized", &loc, is_initialized(&sp)?, "h0 pattern");

        let chi = ChiPoly::from_expr(&p2, &expr)?;
        report.expect("supernatural", &loc, is_supernatural(&sp, &chi)?, "one index per twist");
        let roots = chi
            .distinct_integer_roots()
            .map(|(a, b)| format!("{{{a}, {b}}}"))
            .unwrap_or_else(|| "none".to_string());
        report.check("Hilbert polynomial roots", &loc, format!("{{{}, -1}}", -l - 2), roots);
    }

    Ok(report.finish("kernel spectra, supernaturality and section counts all reproduced"))
}

fn p2_quiver(params: &VerifyParams) -> Result<Report> {
    let p2 = Surface::p2();
    let mut report = Report::new(
        "P2-QUIVER",
        "existence: even-rank simple l-away bundles on P2 via the 3-arrow Kronecker quiver",
        "the kernel bundle maps to the dimension vector (l, l+2) whose Tits form is \
         -(l^2+2l-4), giving moduli of dimension m^2(l^2+2l-4)+1",
    );
    report.param("l", format!("2..={}", params.l_max.max(2)));

    for l in 2..=params.l_max.max(2) {
        let loc = format!("l={l}");
        let (quiver, d) = beilinson_dimvec(&p2, l)?;
        report.check("dimension vector", &loc, format!("({l}, {})", l + 2), d.to_string());

        let form = euler_form(&quiver, &d, &d)?;
        report.check("Tits form value", &loc, (-l * l - 2 * l + 4) as i128, form);
        report.expect(
            "imaginary root candidate",
            &loc,
            root_type(&quiver, &d)? == RootType::ImaginaryCandidate,
            root_type(&quiver, &d)?,
        );
        let mut moduli_ok = true;
        for m in 1..=5i64 {
            if moduli_dim(&quiver, &d, m)? != (m * m * (l * l + 2 * l - 4) + 1) as i128 {
                moduli_ok = false;
            }
        }
        report.expect("moduli dimension m^2(l^2+2l-4)+1 for m <= 5", &loc, moduli_ok, "formula");
        report.check(
            "rank-2 case matches the kernel moduli dimension",
            &loc,
            (l * l + 2 * l - 3) as i128,
            moduli_dim(&quiver, &d, 1)?,
        );

        // Cross-check the first coordinate against the spectrum: d_0 = h1(E(-2)).
        let expr = p2_kernel_expr(l);
        let sp = forced_spectrum(&p2, &expr, Window::new(-2 * l - 8, 4)?, true)?;
        report.check("first coordinate equals h1(E(-2))", &loc, d.0[0] as i128, sp.exact(-2, 1)?);
    }

    Ok(report.finish("Tits form values, root types and moduli dimensions reproduced"))
}

fn q_lines(params: &VerifyParams) -> Result<Report> {
    let q = Surface::p1xp1();
    let mut report = Report::new(
        "Q-LINES",
        "classification: l-away line bundles on the quadric surface",
        "the l-away line bundles are exactly O(l+1, 0) and O(0, l+1), with k0 = -l-1 and s = l-1",
    );
    report.param("l", format!("1..={}", params.l_max));

    for l in 1..=params.l_max {
        let loc = format!("l={l}");
        let bound = 3 * l + 8;
        let found = classify_laway_lines(&q, l, &[bound])?;
        let expected = vec![DivisorClass(vec![0, l + 1]), DivisorClass(vec![l + 1, 0])];
        let fmt = |v: &[DivisorClass]| {
            let parts: Vec<String> = v.iter().map(|d| q.format_divisor(d)).collect();
            format!("{{{}}}", parts.join(", "))
        };

        let reach = 2 * (l + 1) + 8;
        let sp = line_spectrum(&q, &DivisorClass(vec![l + 1, 0]), Window::new(-reach, reach)?)?;
        let profile = h1_profile(&sp)?;
        report.check(
            "classified line bundles and their profile",
            &loc,
            format!("{} with k0={}, s={}", fmt(&expected), -(l + 1), l - 1),
            format!(
                "{} with k0={}, s={}",
                fmt(&found),
                profile.k0.map(|v| v.to_string()).unwrap_or_else(|| "-".into()),
                profile.s.map(|v| v.to_string()).unwrap_or_else(|| "-".into()),
            ),
        );
    }

    Ok(report.finish("enumeration matches the two rulings at every l"))
}

fn q_1away(_params: &VerifyParams) -> Result<Report> {
    let q = Surface::p1xp1();
    let mut report = Report::new(
        "Q-1AWAY",
        "classification: special 1-away rank-2 bundles on the quadric",
        "the two kernel constructions reproduce the published bidegree tables and are \
         initialized 1-away bundles",
    );

    struct Shape {
        label: &'static str,
        expr: BundleExpr,
        k0: i64,
        cells: [([i64; 2], [i128; 3]); 4],
        expected_c: i64,
        h1_value: i128,
    }

    let items = [
        Shape {
            label: "shape (i)",
            expr: q_1away_first_expr(),
            k0: -2,
            cells: [
                ([-3, -3], [0, 0, 0]),
                ([-2, -3], [0, 2, 0]),
                ([-3, -2], [0, 2, 0]),
                ([-2, -2], [0, 2, 0]),
            ],
            expected_c: 2,
            h1_value: 2,
        },
        Shape {
            label: "shape (ii)",
            expr: q_1away_second_expr(),
            k0: -1,
            cells: [
                ([-2, -2], [0, 0, 1]),
                ([-1, -2], [0, 1, 0]),
                ([-2, -1], [0, 1, 0]),
                ([-1, -1], [0, 1, 0]),
            ],
            expected_c: 0,
            h1_value: 1,
        },
    ];

    for Shape { label, expr, k0, cells, expected_c, h1_value } in items {
        for (bidegree, expected) in cells {
            let offset = DivisorClass(bidegree.to_vec());
            let got = triple_at_offset(&q, &expr, &offset)?;
            report.check(
                &format!("{label}: cohomology at bidegree ({}, {})", bidegree[0], bidegree[1]),
                &format!("{label}, twist ({}, {})", bidegree[0], bidegree[1]),
                fmt_triple(expected),
                fmt_values(&got),
            );
        }

        let sp = forced_spectrum(&q, &expr, Window::new(-10, 6)?, true)?;
        let profile = h1_profile(&sp)?;
        report.check(
            "h1 support",
            label,
            support_string(&[k0]),
            support_string(&profile.support),
        );
        report.check("h1 value at k0", label, h1_value, sp.exact(k0, 1)?);
        report.expect("initialized", label, is_initialized(&sp)?, "h0 pattern");
        let bounds = check_k0_bounds(q.index, k0, 0)?;
        report.check("c from k0", label, expected_c, bounds.c);
        report.check("c agrees with c1 = c h", label, bounds.c, expr.selfdual_twist(&q)?);
    }

    Ok(report.finish("both bidegree tables and both 1-away spectra reproduced"))
}

fn q_2away(_params: &VerifyParams) -> Result<Report> {
    let q = Surface::p1xp1();
    let mut report = Report::new(
        "Q-2AWAY",
        "classification: special 2-away rank-2 bundles on the quadric",
        "the kernel shapes for k0 = -3 and k0 = -2 are initialized 2-away bundles with \
         connected support; the k0 = -1 monad is checked at Euler-characteristic level only",
    );

    // Shape (i): k0 = -3, c = 3.
    let first = q_2away_first_expr();
    let sp1 = forced_spectrum(&q, &first, Window::new(-12, 6)?, true)?;
    let profile1 = h1_profile(&sp1)?;
    report.check("h1 support", "shape (i)", "{-3, -2}".to_string(), support_string(&profile1.support));
    report.check("h1 values", "shape (i)", "(4, 4)".to_string(), {
        format!("({}, {})", sp1.exact(-3, 1)?, sp1.exact(-2, 1)?)
    });
    report.expect("initialized", "shape (i)", is_initialized(&sp1)?, "h0 pattern");
    report.check("h0(E)", "shape (i)", 8i128, sp1.exact(0, 0)?);
    report.check("c from k0 = -3, s = 1", "shape (i)", 3i64, first.selfdual_twist(&q)?);
    report.expect("connected support", "shape (i)", profile1.is_connected(), "gaps");

    // Shape (ii): k0 = -2, c = 1, 2 <= c2 <= 4.
    for c2 in 2..=4i64 {
        let label = format!("shape (ii), c2={c2}");
        let expr = q_2away_second_expr(c2);
        let sp = forced_spectrum(&q, &expr, Window::new(-12, 6)?, true)?;
        let profile = h1_profile(&sp)?;
        report.check("h1 support", &label, "{-2, -1}".to_string(), support_string(&profile.support));
        report.check(
            "h1 values (c2-1, c2-1)",
            &label,
            format!("({}, {})", c2 - 1, c2 - 1),
            format!("({}, {})", sp.exact(-2, 1)?, sp.exact(-1, 1)?),
        );
        report.check("h0(E) = 5 - c2", &label, (5 - c2) as i128, sp.exact(0, 0)?);
        report.expect("initialized", &label, is_initialized(&sp)?, "h0 pattern");
        report.check("c from k0 = -2, s = 1", &label, 1i64, expr.selfdual_twist(&q)?);
        report.expect("connected support", &label, profile.is_connected(), "gaps");
    }

    // Shape (iii): a monad with unspecified differentials. Only the Euler
    // characteristics of its terms are pinned down, so check that the
    // alternating sum matches rank-2 Riemann-Roch for sampled parameters.
    let mut chi_ok = true;
    let mut checked = 0usize;
    for c2 in 2..=4i64 {
        for (a, b, d) in [(3i64, 6i64, 1i64), (4, 8, 2), (5, 9, 0)] {
            if b - d - c2 < 0 || a + 1 - c2 < 0 {
                continue;
            }
            for t in -3..=2i64 {
                let chi_monad = monad_chi(&q, a, b, d, c2, t)?;
                let chi_rr =
                    crate::geometry::chi_rank2(&q, &DivisorClass(vec![-1, -1]), c2 as i128, t)?;
                if chi_monad != chi_rr {
                    chi_ok = false;
                }
                checked += 1;
            }
        }
    }
    report.expect(
        "monad Euler characteristics match rank-2 Riemann-Roch with c1 = -h",
        "shape (iii)",
        chi_ok && checked > 0,
        format!("{checked} sampled twists agree"),
    );
    report.indeterminate(
        "shape (iii) cohomology table",
        "shape (iii)",
        "monad with unspecified differentials",
        "only chi-level checks are possible; map ranks were not asserted",
    );

    Ok(report.finish("k0 = -3 and -2 shapes reproduced exactly; k0 = -1 shape chi-checked"))
}

/// Euler characteristic at twist t of the three-term monad for the k0 = -1
/// case, with multiplicities a = h1(E), b = h1(E(-h1)), d = h0(E(-h1)).
fn monad_chi(q: &Surface, a: i64, b: i64, d: i64, c2: i64, t: i64) -> Result<i128> {
    let line = |x: i64, y: i64, copies: i64| -> BundleExpr {
        BundleExpr::sum_of(BundleExpr::line(&[x, y]), copies.max(0) as usize)
    };
    let tier_minus = BundleExpr::Sum(vec![
        line(-1, -1, a),
        line(0, -1, b - d - c2),
        line(-1, 0, d),
    ])
    .normalize();
    let tier_zero = BundleExpr::Sum(vec![
        line(-1, -1, a + 1 - c2),
        line(0, -1, b),
        line(-1, 0, b),
        line(0, 0, a + 1 - c2),
    ])
    .normalize();
    let tier_plus = BundleExpr::Sum(vec![
        line(0, -1, d),
        line(-1, 0, b - d - c2),
        line(0, 0, a),
    ])
    .normalize();
    let offset = q.hyperplane.scale(t);
    Ok(tier_zero.chi(q, &offset)? - tier_minus.chi(q, &offset)? - tier_plus.chi(q, &offset)?)
}

fn q_ext(params: &VerifyParams) -> Result<Report> {
    let q = Surface::p1xp1();
    let mut report = Report::new(
        "Q-EXT",
        "existence: non-split special l-away extensions on the quadric",
        "the extension of the two ruling bundles is an initialized l-away bundle with \
         connected support [-l-1, -2]; its stated moduli dimension disagrees with the \
         Euler-characteristic computation, which is reported, not patched",
    );
    report.param("l", format!("1..={}", params.l_max));

    for l in 1..=params.l_max {
        let loc = format!("l={l}");
        let expr = q_ext_expr(l);

        let from = DivisorClass(vec![0, l + 1]);
        let to = DivisorClass(vec![l + 1, 0]);
        let ext1 = crate::bundlecalc::ext_group_dim(&q, &from, &to, 1)?;
        report.check("ext^1 between the rulings", &loc, (l * l + 2 * l) as i128, ext1);
        report.expect("a non-split extension exists", &loc, ext1 > 0, ext1);

        let sp = forced_spectrum(&q, &expr, Window::new(-2 * l - 9, 6)?, false)?;
        report.check("h0(E)", &loc, (2 * l + 4) as i128, sp.exact(0, 0)?);
        let profile = h1_profile(&sp)?;
        let expected_support: Vec<i64> = (-l - 1..=-2).collect();
        report.check(
            "h1 support",
            &loc,
            support_string(&expected_support),
            support_string(&profile.support),
        );
        report.expect("connected support", &loc, profile.is_connected(), "gaps");
        report.expect("initialized", &loc, is_initialized(&sp)?, "h0 pattern");
        let bounds = check_k0_bounds(q.index, -l - 1, l - 1)?;
        report.check("c from k0 = -l-1, s = l-1", &loc, expr.selfdual_twist(&q)?, bounds.c);

        // Semistability evidence at the level the construction uses: no
        // sections below the balanced slope line.
        let mut vanish_ok = true;
        for a in -(l + 4)..=(l + 4) {
            for b in -(l + 4)..=(l + 4) {
                if a + b < -l - 1 {
                    let triple = triple_at_offset(&q, &expr, &DivisorClass(vec![a, b]))?;
                    if triple[0].hi() != 0 {
                        vanish_ok = false;
                    }
                }
            }
        }
        report.expect("h0 vanishes for all bidegrees with a + b < -l - 1", &loc, vanish_ok, "scan");

        // Moduli dimension: stated 2l^2+2l-3, recomputed 1 - chi(End E).
        let stated = 2 * l * l + 2 * l - 3;
        let chi_end = expr.chi(&q, &DivisorClass(vec![0, -(l + 1)]))?
            + expr.chi(&q, &DivisorClass(vec![-(l + 1), 0]))?;
        let derived = 1 - chi_end;
        report.check("moduli dimension at the extension", &loc, stated as i128, derived);
        report.info(
            "per-summand chi of End(E)",
            &loc,
            &format!("{}", -l * l - l + 2),
            &format!("{}", chi_end / 2),
        );
        let (quiver, d) = beilinson_dimvec(&q, l)?;
        report.check(
            "Euler-characteristic moduli dimension agrees with the quiver form",
            &loc,
            moduli_dim(&quiver, &d, 1)?,
            derived,
        );
    }

    Ok(report.finish(
        "spectra and ext groups reproduced; the stated moduli dimension 2l^2+2l-3 disagrees \
         with the recomputed 2l^2+4l-1 at every l (expected, documented mismatch)",
    ))
}

fn q_connected(params: &VerifyParams) -> Result<Report> {
    let q = Surface::p1xp1();
    let mut report = Report::new(
        "Q-CONNECTED",
        "structure: the intermediate cohomology of special rank-2 bundles on the quadric is connected",
        "every special rank-2 construction in the registry has gap-free h1 support",
    );
    report.param("l", format!("1..={}", params.l_max));

    let mut cases: Vec<(String, BundleExpr, bool)> = vec![
        ("1-away shape (i)".to_string(), q_1away_first_expr(), true),
        ("1-away shape (ii)".to_string(), q_1away_second_expr(), true),
        ("2-away shape (i)".to_string(), q_2away_first_expr(), true),
    ];
    for c2 in 2..=4 {
        cases.push((format!("2-away shape (ii), c2={c2}"), q_2away_second_expr(c2), true));
    }
    for l in 1..=params.l_max {
        cases.push((format!("extension, l={l}"), q_ext_expr(l), false));
    }

    for (label, expr, assume) in cases {
        let reach = 2 * params.l_max + 12;
        let sp = forced_spectrum(&q, &expr, Window::new(-reach, 8)?, assume)?;
        let profile = h1_profile(&sp)?;
        report.expect(
            "gap-free h1 support",
            &label,
            profile.is_connected() && profile.definite,
            support_string(&profile.support),
        );
    }

    Ok(report.finish("no gaps in any special rank-2 construction"))
}

fn q_quiver(params: &VerifyParams) -> Result<Report> {
    let q = Surface::p1xp1();
    let mut report = Report::new(
        "Q-QUIVER",
        "existence: even-rank simple l-away bundles on the quadric via a three-vertex quiver",
        "the extension bundle maps to the dimension vector (2l, l+1, l+1), whose Tits form is \
         -(2l^2+4l-2), giving moduli of dimension m^2(2l^2+4l-2)+1",
    );
    report.param("l", format!("1..={}", params.l_max));

    for l in 1..=params.l_max {
        let loc = format!("l={l}");
        let (quiver, d) = beilinson_dimvec(&q, l)?;
        report.check(
            "dimension vector",
            &loc,
            format!("({}, {}, {})", 2 * l, l + 1, l + 1),
            d.to_string(),
        );
        let form = euler_form(&quiver, &d, &d)?;
        report.check("Tits form value", &loc, (-2 * l * l - 4 * l + 2) as i128, form);
        report.expect(
            "imaginary root candidate",
            &loc,
            root_type(&quiver, &d)? == RootType::ImaginaryCandidate,
            root_type(&quiver, &d)?,
        );
        let mut moduli_ok = true;
        for m in 1..=5i64 {
            if moduli_dim(&quiver, &d, m)? != (m * m * (2 * l * l + 4 * l - 2) + 1) as i128 {
                moduli_ok = false;
            }
        }
        report.expect("moduli dimension m^2(2l^2+4l-2)+1 for m <= 5", &loc, moduli_ok, "formula");

        // The coordinates are h1 of the extension at three bidegree twists.
        let expr = q_ext_expr(l);
        let reads = [
            ([-2i64, -2i64], d.0[0]),
            ([-2, -1], d.0[1]),
            ([-1, -2], d.0[2]),
        ];
        for (bidegree, expected) in reads {
            let got = triple_at_offset(&q, &expr, &DivisorClass(bidegree.to_vec()))?[1];
            report.check(
                &format!("h1 at bidegree ({}, {})", bidegree[0], bidegree[1]),
                &loc,
                expected.to_string(),
                got.to_string(),
            );
        }
    }

    Ok(report.finish("quiver data and spectrum cross-checks reproduced"))
}

fn bl1_lines(params: &VerifyParams) -> Result<Report> {
    let bl1 = Surface::blowup(1)?;
    let mut report = Report::new(
        "BL1-LINES",
        "classification: l-away line bundles on the one-point blow-up",
        "exhaustive enumeration matches the four stated families under at least one reading \
         of the residue families, and the h1-support interval formula matches direct spectra",
    );
    report.param("l", format!("1..={}", params.l_max.min(10)));
    report.param("preferred-reading", params.families.name());

    for l in 1..=params.l_max.min(10) {
        let loc = format!("l={l}");
        let (bound_a, bound_b) = (3 * l + 9, 2 * l + 6);
        let found = classify_laway_lines(&bl1, l, &[bound_a, bound_b])?;

        let family_set = |reading: FamilyReading| -> Vec<DivisorClass> {
            let mut v = Vec::new();
            for a in -bound_a..=bound_a {
                for b1 in -bound_b..=bound_b {
                    if bl1_family_member(l, a, b1, reading).is_some() {
                        v.push(DivisorClass(vec![a, b1]));
                    }
                }
            }
            v.sort();
            v
        };
        let proof_set = family_set(FamilyReading::Proof);
        let statement_set = family_set(FamilyReading::Statement);
        let mut matched: Vec<&str> = Vec::new();
        if found == proof_set {
            matched.push(FamilyReading::Proof.name());
        }
        if found == statement_set {
            matched.push(FamilyReading::Statement.name());
        }
        report.expect(
            "enumeration equals the families under at least one reading",
            &loc,
            !matched.is_empty(),
            format!(
                "enumerated {} classes; proof-reading families {}, statement-reading {}",
                found.len(),
                proof_set.len(),
                statement_set.len()
            ),
        );
        report.info(
            "which reading matches",
            &loc,
            "k-degree restricted to 0..2 in the residue families (proof) vs unrestricted (statement)",
            &if matched.is_empty() { "neither".to_string() } else { matched.join(" and ") },
        );

        // Interval formula versus direct spectra over the full grid.
        let reach = bound_a + bound_b + 8;
        let mut agree = true;
        let mut first_bad = String::new();
        for a in -bound_a..=bound_a {
            for b1 in -bound_b..=bound_b {
                let d = DivisorClass(vec![a, b1]);
                let mut scanned = Vec::new();
                for t in -reach..=reach {
                    if cohom_line(&bl1, &bl1.twist(&d, t)?)?.h1 != 0 {
                        scanned.push(t);
                    }
                }
                if scanned != h1_interval_bl1(a, b1) && agree {
                    agree = false;
                    first_bad = format!("(a, b1) = ({a}, {b1})");
                }
            }
        }
        report.expect(
            "support interval formula agrees with direct spectra on the grid",
            &loc,
            agree,
            if agree { "full grid".to_string() } else { first_bad },
        );
    }

    Ok(report.finish("enumeration matches the proof reading of the families at every l"))
}

fn bl1_rank2(params: &VerifyParams) -> Result<Report> {
    let bl1 = Surface::blowup(1)?;
    let mut report = Report::new(
        "BL1-RANK2",
        "existence: non-split l-away rank-2 bundles on the one-point blow-up",
        "for l = 1 the extension of O(2k-2e1) by O(e1) is 1-away; for l >= 2 the extension \
         of O(2e1) by O(lk-le1) is l-away with support [-(l-1), 0]",
    );
    report.param("l", format!("1..={}", params.l_max.min(10)));

    for l in 1..=params.l_max.min(10) {
        let loc = format!("l={l}");
        let expr = bl1_rank2_expr(l);
        let (sub, quot, ext_expected): (DivisorClass, DivisorClass, i128) = if l == 1 {
            (DivisorClass(vec![0, 1]), DivisorClass(vec![2, -2]), 3)
        } else {
            (DivisorClass(vec![l, -l]), DivisorClass(vec![0, 2]), (l + 2) as i128)
        };
        let ext1 = crate::bundlecalc::ext_group_dim(&bl1, &quot, &sub, 1)?;
        report.check("ext^1(quotient, sub)", &loc, ext_expected, ext1);
        report.expect("a non-split extension exists", &loc, ext1 > 0, ext1);

        let reach = 3 * l + 12;
        let sp = spectrum(&bl1, &expr, Window::new(-reach, reach)?, &AssumptionSet::empty())?;
        let profile = h1_profile(&sp)?;
        let expected_support: Vec<i64> = if l == 1 { vec![-1] } else { (-(l - 1)..=0).collect() };
        report.check(
            "h1 support",
            &loc,
            support_string(&expected_support),
            support_string(&profile.support),
        );
        report.check("l-away count", &loc, l as usize, profile.l);
        report.expect("initialized", &loc, is_initialized(&sp)?, "h0 pattern");
        if l == 1 {
            report.info(
                "speciality",
                &loc,
                "not required by the construction",
                &format!(
                    "c1 = {} is not a multiple of the polarization",
                    bl1.format_divisor(&expr.c1(&bl1)?)
                ),
            );
        }
    }

    Ok(report.finish("both extension families are l-away as stated"))
}

fn bl23_m(params: &VerifyParams) -> Result<Report> {
    let mut report = Report::new(
        "BL23-M",
        "existence: the l-away line bundle on two- and three-point blow-ups",
        "O((l+1)k - (l+1)e1 - e2) has l+1 sections, none after one negative twist, and \
         h1 support exactly [-l, -1]",
    );
    report.param("l", format!("1..={}", params.l_max.min(10)));

    for n in [2usize, 3] {
        let surface = Surface::blowup(n)?;
        for l in 1..=params.l_max.min(10) {
            let loc = format!("Bl{n}, l={l}");
            let m = bl23_m_class(n, l);
            report.check("h0(M) = l + 1", &loc, (l + 1) as i128, cohom_line(&surface, &m)?.h0);
            report.check(
                "h0(M(-1)) = 0",
                &loc,
                0i128,
                cohom_line(&surface, &surface.twist(&m, -1)?)?.h0,
            );
            let reach = 3 * l + 12;
            let sp = line_spectrum(&surface, &m, Window::new(-reach, reach)?)?;
            let profile = h1_profile(&sp)?;
            let expected: Vec<i64> = (-l..=-1).collect();
            report.check(
                "h1 support is [-l, -1]",
                &loc,
                support_string(&expected),
                support_string(&profile.support),
            );
        }
    }

    Ok(report.finish("section counts and supports reproduced on both surfaces"))
}

fn bl23_ext(params: &VerifyParams) -> Result<Report> {
    let mut report = Report::new(
        "BL23-EXT",
        "existence: non-split l-away rank-2 bundles on two- and three-point blow-ups",
        "ext^1(O(e1), M) = 1, so a non-split extension exists; its spectrum is l-away with \
         support [-l, -1]",
    );
    report.param("l", format!("1..={}", params.l_max.min(10)));

    for n in [2usize, 3] {
        let surface = Surface::blowup(n)?;
        let e1 = e1_class(n);

        // O(e1) itself has no intermediate cohomology in any twist.
        let reach = 14;
        let sp_l = line_spectrum(&surface, &e1, Window::new(-reach, reach)?)?;
        let profile_l = h1_profile(&sp_l)?;
        report.check(
            &format!("O(e1) on Bl{n} has empty h1 support"),
            &format!("Bl{n}"),
            0usize,
            profile_l.l,
        );

        for l in 1..=params.l_max.min(10) {
            let loc = format!("Bl{n}, l={l}");
            let m = bl23_m_class(n, l);
            let ext1 = crate::bundlecalc::ext_group_dim(&surface, &e1, &m, 1)?;
            report.check("ext^1(O(e1), M) = 1", &loc, 1i128, ext1);

            let expr = BundleExpr::ext(
                BundleExpr::Line(m.clone()),
                BundleExpr::Line(e1.clone()),
            );
            let reach = 3 * l + 12;
            let sp = spectrum(&surface, &expr, Window::new(-reach, reach)?, &AssumptionSet::empty())?;
            let profile = h1_profile(&sp)?;
            let expected: Vec<i64> = (-l..=-1).collect();
            report.check(
                "extension h1 support is [-l, -1]",
                &loc,
                support_string(&expected),
                support_string(&profile.support),
            );
            report.check("l-away count", &loc, l as usize, profile.l);
            report.expect("all entries forced exact", &loc, profile.definite, "LES");
        }
    }

    Ok(report.finish("extension spectra reproduced on both surfaces"))
}

fn wu_all(params: &VerifyParams) -> Result<Report> {
    let p2 = Surface::p2();
    let q = Surface::p1xp1();
    let mut report = Report::new(
        "WU-ALL",
        "weak Ulrich property of the classified and constructed bundles",
        "every stated shift of the classified bundles satisfies the four vanishing families",
    );
    let _ = params;

    let mut cases: Vec<(String, Surface, BundleExpr, i64, bool)> = vec![
        ("cotangent twist omega(2)".to_string(), p2.clone(), BundleExpr::OmegaP2(2), 0, false),
        ("P2 2-away shape (i), twisted by -1".to_string(), p2.clone(), p2_kernel_expr(2), -1, true),
        ("P2 2-away shape (ii)".to_string(), p2.clone(), p2_2away_second_expr(), 0, true),
        ("quadric 1-away shape (i)".to_string(), q.clone(), q_1away_first_expr(), 0, true),
        ("quadric 1-away shape (ii)".to_string(), q.clone(), q_1away_second_expr(), 0, true),
        ("quadric 2-away shape (i), twisted by -1".to_string(), q.clone(), q_2away_first_expr(), -1, true),
        ("quadric extension l=2, twisted by -1".to_string(), q.clone(), q_ext_expr(2), -1, false),
    ];
    for c2 in 2..=4 {
        cases.push((
            format!("quadric 2-away shape (ii), c2={c2}"),
            q.clone(),
            q_2away_second_expr(c2),
            0,
            true,
        ));
    }

    for (label, surface, expr, shift, assume) in cases {
        let sp = forced_spectrum(&surface, &expr, Window::new(-14, 8)?, assume)?;
        let shifted = sp.shifted(shift);
        report.expect(
            "weakly Ulrich",
            &label,
            is_weakly_ulrich(&shifted)?,
            "vanishing families",
        );
    }

    report.info(
        "even-rank families",
        "direct sums",
        "every even rank admits a weakly Ulrich bundle",
        "h^i of a direct sum of m copies scales by m, so the rank-2m families inherit every vanishing",
    );

    Ok(report.finish("all stated shifts are weakly Ulrich"))
}

fn sn_all(params: &VerifyParams) -> Result<Report> {
    let p2 = Surface::p2();
    let q = Surface::p1xp1();
    let mut report = Report::new(
        "SN-ALL",
        "supernaturality of the constructed l-away bundles",
        "the kernel bundles on P2 and the extensions on the quadric have at most one nonzero \
         cohomology per twist, with Hilbert polynomial roots -l-2 and -1",
    );
    report.param("l", format!("1..={}", params.l_max));

    for l in 2..=params.l_max.max(2) {
        let loc = format!("P2 kernel, l={l}");
        let expr = p2_kernel_expr(l);
        let lo = (-2 * l - 6).min(-l - 9);
        let sp = forced_spectrum(&p2, &expr, Window::new(lo, 6)?, true)?;
        let chi = ChiPoly::from_expr(&p2, &expr)?;
        report.expect("supernatural", &loc, is_supernatural(&sp, &chi)?, "one index per twist");
        report.check(
            "roots",
            &loc,
            format!("{{{}, -1}}", -l - 2),
            chi.distinct_integer_roots()
                .map(|(a, b)| format!("{{{a}, {b}}}"))
                .unwrap_or_else(|| "none".to_string()),
        );
    }

    for l in 1..=params.l_max {
        let loc = format!("quadric extension, l={l}");
        let expr = q_ext_expr(l);
        let lo = (-2 * l - 9).min(-l - 9);
        let sp = forced_spectrum(&q, &expr, Window::new(lo, 6)?, false)?;
        let chi = ChiPoly::from_expr(&q, &expr)?;
        report.expect("supernatural", &loc, is_supernatural(&sp, &chi)?, "one index per twist");
        report.check(
            "roots",
            &loc,
            format!("{{{}, -1}}", -l - 2),
            chi.distinct_integer_roots()
                .map(|(a, b)| format!("{{{a}, {b}}}"))
                .unwrap_or_else(|| "none".to_string()),
        );
    }

    Ok(report.finish("every constructed bundle is supernatural with the stated roots"))
}
