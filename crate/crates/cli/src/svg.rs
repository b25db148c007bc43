//! Static SVG rendering of an mTSP solution: one closed polyline per
//! tour, a marker on the depot, optional city labels. Output bytes are
//! a pure function of the input.

use mtsp_core::instance::Instance;
use mtsp_core::split::MtspSolution;

const CANVAS: f64 = 800.0;
const MARGIN: f64 = 40.0;

/// Stroke palette, reused cyclically across tours.
const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
];

/// Render `solution` over `instance` coordinates. With `labels`, every
/// city gets a small index label.
pub fn render_svg(instance: &Instance, solution: &MtspSolution, labels: bool) -> String {
    let coords = instance.coords();
    let min_x = coords.iter().map(|c| c.0).fold(f64::INFINITY, f64::min);
    let max_x = coords.iter().map(|c| c.0).fold(f64::NEG_INFINITY, f64::max);
    let min_y = coords.iter().map(|c| c.1).fold(f64::INFINITY, f64::min);
    let max_y = coords.iter().map(|c| c.1).fold(f64::NEG_INFINITY, f64::max);
    let span = (max_x - min_x).max(max_y - min_y).max(1e-12);
    let scale = (CANVAS - 2.0 * MARGIN) / span;
    let place = |(x, y): (f64, f64)| -> (f64, f64) {
        // SVG y grows downward; flip so north stays up.
        (MARGIN + (x - min_x) * scale, MARGIN + (max_y - y) * scale)
    };

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {CANVAS:.0} {CANVAS:.0}\">\n"
    ));
    for (t, tour) in solution.tours.iter().enumerate() {
        let color = PALETTE[t % PALETTE.len()];
        let (dx, dy) = place(coords[0]);
        let mut d = format!("M {dx:.3} {dy:.3}");
        for &c in tour {
            let (x, y) = place(coords[c]);
            d.push_str(&format!(" L {x:.3} {y:.3}"));
        }
        d.push_str(" Z");
        out.push_str(&format!(
            "  <path d=\"{d}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"2\"/>\n"
        ));
    }
    let (dx, dy) = place(coords[0]);
    out.push_str(&format!(
        "  <circle cx=\"{dx:.3}\" cy=\"{dy:.3}\" r=\"6\" fill=\"#000000\"/>\n"
    ));
    if labels {
        for (c, &coord) in coords.iter().enumerate().skip(1) {
            let (x, y) = place(coord);
            out.push_str(&format!(
                "  <text x=\"{:.3}\" y=\"{:.3}\" font-size=\"10\">{c}</text>\n",
                x + 4.0,
                y - 4.0
            ));
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Render to a file.
pub fn write_svg(
    instance: &Instance,
    solution: &MtspSolution,
    labels: bool,
    path: &std::path::Path,
) -> std::io::Result<()> {
    std::fs::write(path, render_svg(instance, solution, labels))
}
