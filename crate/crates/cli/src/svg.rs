//! Minimal SVG line plot of Δ against P.

use std::fmt::Write as _;

use spacetime_average::analysis::SweepResult;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 56.0;

pub fn delta_plot(result: &SweepResult) -> String {
    let (lo, hi) = y_range(result);
    let px = |p: f64| MARGIN + p * (WIDTH - 2.0 * MARGIN);
    let py = |d: f64| HEIGHT - MARGIN - (d - lo) / (hi - lo) * (HEIGHT - 2.0 * MARGIN);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="24" text-anchor="middle" font-size="14">n1 = {}, n2 = {}</text>"#,
        WIDTH / 2.0,
        result.n1,
        result.n2
    );

    // axes
    let (x0, x1) = (px(0.0), px(1.0));
    let (y0, y1) = (py(lo), py(hi));
    let _ = writeln!(
        s,
        r#"<path d="M{x0:.2},{y1:.2} L{x0:.2},{y0:.2} L{x1:.2},{y0:.2}" fill="none" stroke="black"/>"#
    );
    if lo < 0.0 && hi > 0.0 {
        let yz = py(0.0);
        let _ = writeln!(
            s,
            r#"<line x1="{x0:.2}" y1="{yz:.2}" x2="{x1:.2}" y2="{yz:.2}" stroke="gray" stroke-dasharray="4 3"/>"#
        );
    }
    for i in 0..=4 {
        let p = i as f64 / 4.0;
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{p}</text>"#,
            px(p),
            y0 + 18.0
        );
    }
    for (v, y) in [(lo, y0), (hi, y1)] {
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            x0 - 6.0,
            y + 4.0,
            crate::output::format_sig(v, 4)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">P</text>"#,
        WIDTH / 2.0,
        HEIGHT - 12.0
    );
    let _ = writeln!(
        s,
        r#"<text x="16" y="{:.2}" text-anchor="middle" transform="rotate(-90 16 {:.2})">Δ (%)</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0
    );

    let mut d = String::new();
    for (i, row) in result.rows.iter().enumerate() {
        let cmd = if i == 0 { 'M' } else { 'L' };
        let _ = write!(d, "{cmd}{:.2},{:.2} ", px(row.p), py(row.delta_percent));
    }
    let _ = writeln!(
        s,
        r#"<path d="{}" fill="none" stroke="steelblue" stroke-width="1.5"/>"#,
        d.trim_end()
    );
    s.push_str("</svg>\n");
    s
}

fn y_range(result: &SweepResult) -> (f64, f64) {
    let mut lo = 0.0_f64;
    let mut hi = 0.0_f64;
    for row in &result.rows {
        lo = lo.min(row.delta_percent);
        hi = hi.max(row.delta_percent);
    }
    if hi - lo < 1e-12 {
        (lo - 1.0, hi + 1.0)
    } else {
        (lo, hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use spacetime_average::analysis::{sweep_delta, uniform_grid};

    #[test]
    fn plot_is_well_formed() {
        let r = sweep_delta(1, 2, &uniform_grid(11)).unwrap();
        let svg = delta_plot(&r);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<path").count(), 2);
        assert!(!svg.contains("NaN"));
    }
}
