use std::fmt::Write;

use hdx_core::random::SweepResult;

const W: f64 = 640.0;
const H: f64 = 400.0;
const MARGIN: f64 = 56.0;

/// p̂ against the swept parameter with Wilson bars and, when given, a vertical threshold line.
pub fn sweep_plot(r: &SweepResult, threshold: Option<f64>) -> String {
    let mut xs: Vec<f64> = r.points.iter().map(|p| p.value).collect();
    if let Some(t) = threshold {
        xs.push(t);
    }
    let lo = xs.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = if hi > lo { hi - lo } else { 1.0 };
    let px = |v: f64| MARGIN + (v - lo) / span * (W - 2.0 * MARGIN);
    let py = |p: f64| H - MARGIN - p * (H - 2.0 * MARGIN);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    );
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<path d="M{:.2} {:.2} L{:.2} {:.2} L{:.2} {:.2}" fill="none" stroke="black"/>"#,
        MARGIN,
        MARGIN,
        MARGIN,
        H - MARGIN,
        W - MARGIN,
        H - MARGIN
    );
    for tick in [0.0, 0.5, 1.0] {
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-size="11" text-anchor="end">{tick}</text>"#,
            MARGIN - 6.0,
            py(tick) + 4.0
        );
    }
    for v in [lo, hi] {
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-size="11" text-anchor="middle">{v:.4}</text>"#,
            px(v),
            H - MARGIN + 16.0
        );
    }
    if let Some(t) = threshold {
        let _ = writeln!(
            s,
            r#"<path d="M{x:.2} {:.2} L{x:.2} {:.2}" stroke="firebrick" stroke-dasharray="4 3"/>"#,
            MARGIN,
            H - MARGIN,
            x = px(t)
        );
    }
    for p in &r.points {
        let x = px(p.value);
        let _ = writeln!(
            s,
            r#"<path d="M{x:.2} {:.2} L{x:.2} {:.2}" stroke="steelblue"/>"#,
            py(p.ci_low),
            py(p.ci_high)
        );
    }
    let mut d = String::new();
    for (i, p) in r.points.iter().enumerate() {
        let _ = write!(
            d,
            "{}{:.2} {:.2} ",
            if i == 0 { "M" } else { "L" },
            px(p.value),
            py(p.probability)
        );
    }
    let _ = writeln!(
        s,
        r#"<path d="{}" fill="none" stroke="navy" stroke-width="1.5"/>"#,
        d.trim_end()
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="20" font-size="13" text-anchor="middle">{} n={} d={}: {}</text>"#,
        W / 2.0,
        r.model,
        r.n,
        r.d,
        r.predicate
    );
    s.push_str("</svg>\n");
    s
}
