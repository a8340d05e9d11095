use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::stats::DensitySeries;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const LEFT: f64 = 64.0;
const RIGHT: f64 = 24.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 48.0;
const COLORS: [&str; 2] = ["#1f77b4", "#d62728"];

fn check(series: &DensitySeries, which: &str) -> Result<()> {
    if series.grid.is_empty() {
        return Err(Error::Domain(format!("{which} density series is empty")));
    }
    if series.grid.len() != series.density.len() {
        return Err(Error::Domain(format!(
            "{which} density series has {} grid points but {} densities",
            series.grid.len(),
            series.density.len()
        )));
    }
    if series.grid.iter().chain(&series.density).any(|v| !v.is_finite()) {
        return Err(Error::Domain(format!("{which} density series has non-finite values")));
    }
    Ok(())
}

/// Tick step from {1, 2, 5} × 10^k giving at most about five intervals.
fn tick_step(span: f64) -> f64 {
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    [1.0, 2.0, 5.0, 10.0]
        .into_iter()
        .map(|m| m * mag)
        .find(|&s| s >= raw)
        .unwrap_or(10.0 * mag)
}

fn tick_label(v: f64, step: f64) -> String {
    let decimals = (-step.log10().floor()).max(0.0) as usize;
    let s = format!("{v:.decimals$}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Self-contained SVG line chart of two overlaid density curves.
///
/// Output depends only on the inputs, so regenerating a chart is
/// byte-identical.
pub fn emit_density_svg(
    first: &DensitySeries,
    second: &DensitySeries,
    labels: [&str; 2],
    x_label: &str,
) -> Result<String> {
    check(first, "first")?;
    check(second, "second")?;
    let xs = first.grid.iter().chain(&second.grid);
    let x_min = xs.clone().copied().fold(f64::INFINITY, f64::min);
    let x_max = xs.copied().fold(f64::NEG_INFINITY, f64::max);
    let (x_min, x_max) = if x_max > x_min {
        (x_min, x_max)
    } else {
        (x_min - 0.5, x_max + 0.5)
    };
    let d_max = first.max_density().max(second.max_density());
    let y_step = tick_step(if d_max > 0.0 { d_max } else { 1.0 });
    let y_max = ((d_max / y_step).ceil() * y_step).max(y_step);
    let x_step = tick_step(x_max - x_min);

    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let px = |x: f64| LEFT + (x - x_min) / (x_max - x_min) * plot_w;
    let py = |y: f64| TOP + plot_h - y / y_max * plot_h;

    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\" font-size=\"11\">"
    );
    let _ = writeln!(s, "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>");
    let (x0, y0, x1, y1) = (LEFT, TOP + plot_h, LEFT + plot_w, TOP);
    let _ = writeln!(
        s,
        "<line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x1}\" y2=\"{y0}\" stroke=\"black\"/>"
    );
    let _ = writeln!(
        s,
        "<line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x0}\" y2=\"{y1}\" stroke=\"black\"/>"
    );

    let mut t = (x_min / x_step).ceil() * x_step;
    while t <= x_max + x_step * 1e-9 {
        let x = px(t);
        let _ = writeln!(
            s,
            "<line x1=\"{x:.2}\" y1=\"{y0}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"black\"/>",
            y0 + 4.0
        );
        let _ = writeln!(
            s,
            "<text x=\"{x:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>",
            y0 + 16.0,
            tick_label(t, x_step)
        );
        t += x_step;
    }
    let ticks = (y_max / y_step).round() as usize;
    for k in 0..=ticks {
        let v = k as f64 * y_step;
        let y = py(v);
        let _ = writeln!(
            s,
            "<line x1=\"{:.2}\" y1=\"{y:.2}\" x2=\"{x0}\" y2=\"{y:.2}\" stroke=\"black\"/>",
            x0 - 4.0
        );
        let _ = writeln!(
            s,
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{}</text>",
            x0 - 6.0,
            y + 4.0,
            tick_label(v, y_step)
        );
    }
    let _ = writeln!(
        s,
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>",
        LEFT + plot_w / 2.0,
        HEIGHT - 8.0,
        escape(x_label)
    );
    let _ = writeln!(
        s,
        "<text x=\"14\" y=\"{:.2}\" text-anchor=\"middle\" transform=\"rotate(-90 14 {:.2})\">density</text>",
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0
    );

    for (k, series) in [first, second].into_iter().enumerate() {
        let mut d = String::new();
        for (i, (x, y)) in series.grid.iter().zip(&series.density).enumerate() {
            let _ = write!(d, "{}{:.2},{:.2}", if i == 0 { "M" } else { " L" }, px(*x), py(*y));
        }
        let _ = writeln!(
            s,
            "<path d=\"{d}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>",
            COLORS[k]
        );
        let ly = TOP - 24.0 + 12.0 * k as f64;
        let lx = LEFT + plot_w - 140.0;
        let _ = writeln!(
            s,
            "<line x1=\"{lx:.2}\" y1=\"{ly:.2}\" x2=\"{:.2}\" y2=\"{ly:.2}\" stroke=\"{}\" stroke-width=\"1.5\"/>",
            lx + 18.0,
            COLORS[k]
        );
        let _ = writeln!(
            s,
            "<text x=\"{:.2}\" y=\"{:.2}\">{}</text>",
            lx + 22.0,
            ly + 4.0,
            escape(labels[k])
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bump(center: f64, height: f64) -> DensitySeries {
        let grid: Vec<f64> = (0..21).map(|i| i as f64 * 0.5).collect();
        let density = grid
            .iter()
            .map(|x| height * (-(x - center) * (x - center)).exp())
            .collect();
        DensitySeries {
            grid,
            density,
            bandwidth: 1.0,
        }
    }

    #[test]
    fn two_paths_and_axis_bound() {
        let svg = emit_density_svg(&bump(3.0, 0.37), &bump(6.0, 0.52), ["A", "B"], "x").unwrap();
        assert_eq!(svg.matches("<path").count(), 2);
        // Highest y tick must reach the larger peak.
        let top_tick: f64 = svg
            .lines()
            .filter(|l| l.contains("text-anchor=\"end\""))
            .filter_map(|l| l.split('>').nth(1)?.split('<').next()?.parse().ok())
            .fold(0.0, f64::max);
        assert!(top_tick >= 0.52);
        assert!(svg.contains(">A</text>") && svg.contains(">B</text>"));
    }

    #[test]
    fn deterministic() {
        let (a, b) = (bump(2.0, 0.2), bump(4.0, 0.3));
        assert_eq!(
            emit_density_svg(&a, &b, ["a", "b"], "t").unwrap(),
            emit_density_svg(&a, &b, ["a", "b"], "t").unwrap()
        );
    }

    #[test]
    fn bad_series() {
        let good = bump(1.0, 1.0);
        let empty = DensitySeries {
            grid: vec![],
            density: vec![],
            bandwidth: 1.0,
        };
        let ragged = DensitySeries {
            grid: vec![0.0, 1.0],
            density: vec![0.5],
            bandwidth: 1.0,
        };
        assert!(matches!(
            emit_density_svg(&good, &empty, ["a", "b"], ""),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            emit_density_svg(&ragged, &good, ["a", "b"], ""),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn ticks() {
        assert_eq!(tick_step(10.0), 2.0);
        assert_eq!(tick_step(0.37), 0.1);
        assert_eq!(tick_label(0.30000000000000004, 0.1), "0.3");
        assert_eq!(tick_label(-0.0, 1.0), "0");
    }
}
