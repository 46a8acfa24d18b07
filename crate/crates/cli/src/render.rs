//! SVG drawing: integers on a horizontal line, arcs as upper semicircles.

use std::fmt::Write;

use infgon::diagram::ArcDiagram;

const MARGIN: f64 = 24.0;

pub fn svg(diagram: &ArcDiagram, lo: i64, hi: i64, width: u32, height: u32) -> String {
    let (w, h) = (f64::from(width), f64::from(height));
    let scale = (w - 2.0 * MARGIN) / (hi - lo) as f64;
    let x = |s: i64| MARGIN + (s - lo) as f64 * scale;
    let base = h - MARGIN;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(out, r#"<clipPath id="frame"><rect x="0" y="0" width="{width}" height="{height}"/></clipPath>"#);
    let _ = writeln!(
        out,
        r#"<line x1="{:.2}" y1="{base:.2}" x2="{:.2}" y2="{base:.2}" stroke="black"/>"#,
        x(lo) - MARGIN / 2.0,
        x(hi) + MARGIN / 2.0
    );
    for s in lo..=hi {
        let _ = writeln!(out, r#"<circle cx="{:.2}" cy="{base:.2}" r="2"/>"#, x(s));
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-size="10" text-anchor="middle">{s}</text>"#,
            x(s),
            base + 14.0
        );
    }

    let shown = diagram.arcs_in_window(lo, hi, hi - lo);
    let _ = writeln!(out, r#"<g clip-path="url(#frame)" fill="none" stroke="steelblue">"#);
    for a in &shown.arcs {
        let (x1, x2) = (x(a.t()), x(a.u()));
        let r = (x2 - x1) / 2.0;
        let _ = writeln!(out, r#"<path d="M {x1:.2} {base:.2} A {r:.2} {r:.2} 0 0 1 {x2:.2} {base:.2}"/>"#);
    }
    let _ = writeln!(out, "</g>");

    for p in [diagram.left_fountain(), diagram.right_fountain()].into_iter().flatten() {
        if (lo..=hi).contains(&p) {
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{:.2}" font-size="14" text-anchor="middle">∞</text>"#,
                x(p),
                base - 6.0
            );
        }
    }
    out.push_str("</svg>");
    out
}
