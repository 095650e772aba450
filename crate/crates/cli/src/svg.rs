//! SVG 1.1 rendering of a tiling window: source rectangles on the left,
//! translated rectangles on the right. x grows rightward with the
//! p1-exponent, y grows upward with the p2-exponent.

use std::fmt::Write;

use lattice_succ::tiling::Rectangle;

const CELL: u64 = 14;
const MARGIN: u64 = 24;
const GAP: u64 = 40;

const PALETTE: [&str; 8] = [
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7",
];

pub fn render(source: &[Rectangle], tilde: &[Rectangle], width: u64, height: u64) -> String {
    let panel_w = width * CELL;
    let panel_h = height * CELL;
    let total_w = 2 * panel_w + GAP + 2 * MARGIN;
    let total_h = panel_h + 2 * MARGIN;

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{total_w}" height="{total_h}" viewBox="0 0 {total_w} {total_h}">"#
    );
    svg.push_str(concat!(
        "<defs>\n",
        r#"<pattern id="hatch-source" width="6" height="6" patternUnits="userSpaceOnUse" patternTransform="rotate(45)">"#,
        r##"<line x1="0" y1="0" x2="0" y2="6" stroke="#000" stroke-opacity="0.35" stroke-width="1.5"/></pattern>"##,
        "\n",
        r#"<pattern id="hatch-tilde" width="6" height="6" patternUnits="userSpaceOnUse">"#,
        r##"<path d="M0,0 L6,6 M6,0 L0,6" stroke="#000" stroke-opacity="0.35" stroke-width="1"/></pattern>"##,
        "\n</defs>\n",
    ));
    let _ = writeln!(svg, r#"<rect width="{total_w}" height="{total_h}" fill="white"/>"#);

    for (panel, rects, hatch, title) in [
        (0, source, "hatch-source", "source"),
        (1, tilde, "hatch-tilde", "translated"),
    ] {
        let x0 = MARGIN + panel * (panel_w + GAP);
        let _ = writeln!(
            svg,
            r#"<g id="{title}"><text x="{x0}" y="{}" font-family="sans-serif" font-size="12">{title}</text>"#,
            MARGIN - 8
        );
        for r in rects {
            if r.x_min >= width || r.y_min >= height {
                continue;
            }
            let x_end = r.x_max.min(width - 1) + 1;
            let y_end = r.y_max.min(height - 1) + 1;
            let px = x0 + r.x_min * CELL;
            // flip so the p2-exponent grows upward
            let py = MARGIN + panel_h - y_end * CELL;
            let w = (x_end - r.x_min) * CELL;
            let h = (y_end - r.y_min) * CELL;
            let color = PALETTE[r.level % PALETTE.len()];
            let _ = writeln!(
                svg,
                r##"<g><title>{} level {} band {}</title><rect x="{px}" y="{py}" width="{w}" height="{h}" fill="{color}" fill-opacity="0.55" stroke="#222" stroke-width="1"/><rect x="{px}" y="{py}" width="{w}" height="{h}" fill="url(#{hatch})"/></g>"##,
                r.family, r.level, r.band
            );
        }
        let _ = writeln!(
            svg,
            r##"<rect x="{x0}" y="{MARGIN}" width="{panel_w}" height="{panel_h}" fill="none" stroke="#000" stroke-width="1.5"/></g>"##
        );
    }
    svg.push_str("</svg>\n");
    svg
}
