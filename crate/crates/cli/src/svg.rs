//! Self-contained SVG line plot of the Q and P curves.

use std::fmt::Write;

use permprob_core::MatrixFamily;

use crate::output::Series;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 60.0;
const RIGHT: f64 = 170.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;

fn color(f: MatrixFamily) -> &'static str {
    match f {
        MatrixFamily::A => "#1f77b4",
        MatrixFamily::B => "#d62728",
        MatrixFamily::C => "#2ca02c",
    }
}

fn x_px(r: f64) -> f64 {
    LEFT + r * (WIDTH - LEFT - RIGHT)
}

fn y_px(p: f64) -> f64 {
    HEIGHT - BOTTOM - p.clamp(0.0, 1.0) * (HEIGHT - TOP - BOTTOM)
}

/// Renders every series' Q (dashed) and P (solid) against r on [0, 1] x [0, 1].
pub fn render(n: usize, series: &[Series]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="24" text-anchor="middle" font-size="14">Q and P vs r, n = {n}</text>"#,
        (x_px(0.0) + x_px(1.0)) / 2.0
    );

    // axes and ticks
    let _ = writeln!(
        s,
        r#"<rect x="{:.1}" y="{:.1}" width="{:.1}" height="{:.1}" fill="none" stroke="black"/>"#,
        x_px(0.0),
        y_px(1.0),
        x_px(1.0) - x_px(0.0),
        y_px(0.0) - y_px(1.0)
    );
    for k in 0..=5 {
        let t = k as f64 / 5.0;
        let _ = writeln!(
            s,
            r#"<line x1="{x:.1}" y1="{y0:.1}" x2="{x:.1}" y2="{y1:.1}" stroke="black"/><text x="{x:.1}" y="{ty:.1}" text-anchor="middle">{t:.1}</text>"#,
            x = x_px(t),
            y0 = y_px(0.0),
            y1 = y_px(0.0) + 5.0,
            ty = y_px(0.0) + 18.0,
        );
        let _ = writeln!(
            s,
            r#"<line x1="{x0:.1}" y1="{y:.1}" x2="{x1:.1}" y2="{y:.1}" stroke="black"/><text x="{tx:.1}" y="{ty:.1}" text-anchor="end">{t:.1}</text>"#,
            x0 = x_px(0.0) - 5.0,
            x1 = x_px(0.0),
            y = y_px(t),
            tx = x_px(0.0) - 8.0,
            ty = y_px(t) + 4.0,
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">r</text>"#,
        (x_px(0.0) + x_px(1.0)) / 2.0,
        HEIGHT - 12.0
    );
    let _ = writeln!(
        s,
        r#"<text x="16" y="{:.1}" text-anchor="middle" transform="rotate(-90 16 {:.1})">probability</text>"#,
        (y_px(0.0) + y_px(1.0)) / 2.0,
        (y_px(0.0) + y_px(1.0)) / 2.0
    );

    let mut legend_y = TOP + 10.0;
    for series in series {
        let c = color(series.family);
        let u = series.family.target();
        for (label, dashed, pick) in [
            (
                "Q",
                true,
                (|g: &permprob_core::GridRow| g.q) as fn(&permprob_core::GridRow) -> f64,
            ),
            ("P", false, |g| g.p),
        ] {
            let points: Vec<String> = series
                .rows
                .iter()
                .map(|g| format!("{:.2},{:.2}", x_px(g.r), y_px(pick(g))))
                .collect();
            let dash = if dashed { r#" stroke-dasharray="6 4""# } else { "" };
            let _ = writeln!(
                s,
                r#"<polyline fill="none" stroke="{c}" stroke-width="1.5"{dash} points="{}"/>"#,
                points.join(" ")
            );
            let lx = WIDTH - RIGHT + 15.0;
            let _ = writeln!(
                s,
                r#"<line x1="{lx:.1}" y1="{legend_y:.1}" x2="{:.1}" y2="{legend_y:.1}" stroke="{c}" stroke-width="1.5"{dash}/><text x="{:.1}" y="{:.1}">{label}: per {} = {u}</text>"#,
                lx + 30.0,
                lx + 36.0,
                legend_y + 4.0,
                series.family,
            );
            legend_y += 20.0;
        }
    }
    s.push_str("</svg>\n");
    s
}
