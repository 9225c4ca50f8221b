//! Minimal static SVG plots (heatmap and line), purely presentational.
//! All assertions in the toolkit run on CSV numbers; these exist so `--plot`
//! can give a quick visual.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::Result;

const VIRIDIS_STOPS: [(f64, [u8; 3]); 5] = [
    (0.00, [68, 1, 84]),
    (0.25, [59, 82, 139]),
    (0.50, [33, 145, 140]),
    (0.75, [94, 201, 98]),
    (1.00, [253, 231, 37]),
];

fn color(v: f64) -> String {
    let v = v.clamp(0.0, 1.0);
    let mut lo = VIRIDIS_STOPS[0];
    let mut hi = VIRIDIS_STOPS[VIRIDIS_STOPS.len() - 1];
    for w in VIRIDIS_STOPS.windows(2) {
        if v >= w[0].0 && v <= w[1].0 {
            lo = w[0];
            hi = w[1];
            break;
        }
    }
    let f = if hi.0 > lo.0 { (v - lo.0) / (hi.0 - lo.0) } else { 0.0 };
    let mix = |a: u8, b: u8| (a as f64 + f * (b as f64 - a as f64)).round() as u8;
    format!(
        "#{:02x}{:02x}{:02x}",
        mix(lo.1[0], hi.1[0]),
        mix(lo.1[1], hi.1[1]),
        mix(lo.1[2], hi.1[2])
    )
}

/// Write `values` (row-major, `ys` outer) as a colored-cell heatmap.
pub fn heatmap(path: &Path, xs: &[f64], ys: &[f64], values: &[f64], title: &str) -> Result<()> {
    let cell = 6.0;
    let margin = 40.0;
    let width = margin * 2.0 + cell * xs.len() as f64;
    let height = margin * 2.0 + cell * ys.len() as f64;
    let vmax = values.iter().cloned().fold(f64::MIN, f64::max).max(1e-300);
    let vmin = values.iter().cloned().fold(f64::MAX, f64::min);

    let mut svg = String::new();
    let _ = write!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n\
         <text x=\"{margin}\" y=\"20\" font-family=\"monospace\" font-size=\"14\">{title}</text>\n"
    );
    for (iy, _) in ys.iter().enumerate() {
        for (ix, _) in xs.iter().enumerate() {
            let v = values[iy * xs.len() + ix];
            let norm = if vmax > vmin { (v - vmin) / (vmax - vmin) } else { 0.0 };
            // y axis points up
            let px = margin + ix as f64 * cell;
            let py = height - margin - (iy as f64 + 1.0) * cell;
            let _ = write!(
                svg,
                "<rect x=\"{px:.1}\" y=\"{py:.1}\" width=\"{cell}\" height=\"{cell}\" fill=\"{}\"/>\n",
                color(norm)
            );
        }
    }
    let _ = write!(
        svg,
        "<text x=\"{margin}\" y=\"{:.1}\" font-family=\"monospace\" font-size=\"11\">\
         x: [{:.3}, {:.3}]  y: [{:.3}, {:.3}]  max: {vmax:.4e}</text>\n</svg>\n",
        height - 12.0,
        xs.first().unwrap_or(&0.0),
        xs.last().unwrap_or(&0.0),
        ys.first().unwrap_or(&0.0),
        ys.last().unwrap_or(&0.0),
    );
    std::fs::write(path, svg)?;
    Ok(())
}

/// Write one polyline `y(x)`.
pub fn line(path: &Path, xs: &[f64], ys: &[f64], title: &str) -> Result<()> {
    let (width, height, margin) = (640.0, 400.0, 50.0);
    let x_lo = xs.iter().cloned().fold(f64::MAX, f64::min);
    let x_hi = xs.iter().cloned().fold(f64::MIN, f64::max);
    let y_lo = ys.iter().cloned().fold(f64::MAX, f64::min).min(0.0);
    let y_hi = ys.iter().cloned().fold(f64::MIN, f64::max);
    let sx = (width - 2.0 * margin) / (x_hi - x_lo).max(1e-300);
    let sy = (height - 2.0 * margin) / (y_hi - y_lo).max(1e-300);

    let mut pts = String::new();
    for (x, y) in xs.iter().zip(ys) {
        let px = margin + (x - x_lo) * sx;
        let py = height - margin - (y - y_lo) * sy;
        let _ = write!(pts, "{px:.2},{py:.2} ");
    }
    let svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n\
         <text x=\"{margin}\" y=\"24\" font-family=\"monospace\" font-size=\"14\">{title}</text>\n\
         <polyline points=\"{pts}\" fill=\"none\" stroke=\"#3b528b\" stroke-width=\"1.5\"/>\n\
         <text x=\"{margin}\" y=\"{:.1}\" font-family=\"monospace\" font-size=\"11\">\
         x: [{x_lo:.3}, {x_hi:.3}]  y: [{y_lo:.4}, {y_hi:.4}]</text>\n</svg>\n",
        height - 12.0,
    );
    std::fs::write(path, svg)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heatmap_writes_valid_svg() {
        let dir = std::env::temp_dir().join("stochain_svg_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("h.svg");
        let xs = vec![0.0, 1.0, 2.0];
        let ys = vec![0.0, 1.0];
        let values = vec![0.0, 0.5, 1.0, 1.0, 0.5, 0.0];
        heatmap(&path, &xs, &ys, &values, "test").unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("<svg"));
        assert!(text.ends_with("</svg>\n"));
        assert_eq!(text.matches("<rect").count(), 7); // 6 cells + background
    }

    #[test]
    fn line_writes_valid_svg() {
        let dir = std::env::temp_dir().join("stochain_svg_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("l.svg");
        line(&path, &[0.0, 1.0, 2.0], &[0.0, 1.0, 0.5], "test").unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.contains("<polyline"));
    }
}
