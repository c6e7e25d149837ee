//! Dependency-free SVG boxplots: one box per sweep parameter, Tukey
//! whiskers at 1.5 IQR, outliers as dots. Rendering is a pure function of
//! the data, so files diff cleanly across runs.

use std::fmt::Write;

use hardness_core::stats::quantile_sorted;

#[derive(Debug, Clone, PartialEq)]
pub struct BoxStats {
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub whisker_lo: f64,
    pub whisker_hi: f64,
    pub outliers: Vec<f64>,
}

/// Quartiles by linear interpolation, whiskers at the most extreme data
/// points within 1.5 IQR of the box, everything beyond listed as outliers.
pub fn box_stats(values: &[f64]) -> BoxStats {
    assert!(!values.is_empty());
    let mut sorted = values.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    let q1 = quantile_sorted(&sorted, 0.25);
    let q3 = quantile_sorted(&sorted, 0.75);
    let median = quantile_sorted(&sorted, 0.5);
    let reach = 1.5 * (q3 - q1);
    let lo_fence = q1 - reach;
    let hi_fence = q3 + reach;
    let whisker_lo = sorted.iter().cloned().find(|&v| v >= lo_fence).unwrap_or(sorted[0]);
    let whisker_hi = sorted
        .iter()
        .cloned()
        .rev()
        .find(|&v| v <= hi_fence)
        .unwrap_or(sorted[sorted.len() - 1]);
    let outliers = sorted
        .iter()
        .cloned()
        .filter(|&v| v < lo_fence || v > hi_fence)
        .collect();
    BoxStats { q1, median, q3, whisker_lo, whisker_hi, outliers }
}

const WIDTH_PER_GROUP: f64 = 56.0;
const MARGIN_LEFT: f64 = 64.0;
const MARGIN_RIGHT: f64 = 16.0;
const MARGIN_TOP: f64 = 36.0;
const MARGIN_BOTTOM: f64 = 44.0;
const PLOT_HEIGHT: f64 = 280.0;

fn fmt2(v: f64) -> String {
    format!("{v:.2}")
}

/// One SVG document with one box per group. `group_labels` annotate the x
/// axis (typically the sweep parameter values).
pub fn render_boxplot(title: &str, group_labels: &[String], groups: &[Vec<f64>]) -> String {
    assert_eq!(group_labels.len(), groups.len());
    assert!(!groups.is_empty());
    let stats: Vec<BoxStats> = groups.iter().map(|g| box_stats(g)).collect();

    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for group in groups {
        for &v in group {
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }
    if hi <= lo {
        hi = lo + 1.0;
    }
    let pad = 0.05 * (hi - lo);
    let (lo, hi) = (lo - pad, hi + pad);

    let width = MARGIN_LEFT + MARGIN_RIGHT + WIDTH_PER_GROUP * groups.len() as f64;
    let height = MARGIN_TOP + PLOT_HEIGHT + MARGIN_BOTTOM;
    let y_of = |v: f64| MARGIN_TOP + PLOT_HEIGHT * (hi - v) / (hi - lo);
    let x_center = |g: usize| MARGIN_LEFT + WIDTH_PER_GROUP * (g as f64 + 0.5);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" \
         viewBox=\"0 0 {} {}\" font-family=\"sans-serif\" font-size=\"11\">",
        fmt2(width),
        fmt2(height),
        fmt2(width),
        fmt2(height)
    );
    let _ = writeln!(
        svg,
        "<rect width=\"{}\" height=\"{}\" fill=\"white\"/>",
        fmt2(width),
        fmt2(height)
    );
    let _ = writeln!(
        svg,
        "<text x=\"{}\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">{}</text>",
        fmt2(width / 2.0),
        title
    );

    // y axis with five ticks
    let _ = writeln!(
        svg,
        "<line x1=\"{l}\" y1=\"{t}\" x2=\"{l}\" y2=\"{b}\" stroke=\"black\"/>",
        l = fmt2(MARGIN_LEFT),
        t = fmt2(MARGIN_TOP),
        b = fmt2(MARGIN_TOP + PLOT_HEIGHT)
    );
    for tick in 0..=4 {
        let value = lo + (hi - lo) * tick as f64 / 4.0;
        let y = y_of(value);
        let _ = writeln!(
            svg,
            "<line x1=\"{}\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\" stroke=\"black\"/>\n\
             <text x=\"{}\" y=\"{ty}\" text-anchor=\"end\">{v}</text>",
            fmt2(MARGIN_LEFT - 4.0),
            fmt2(MARGIN_LEFT),
            fmt2(MARGIN_LEFT - 7.0),
            y = fmt2(y),
            ty = fmt2(y + 3.5),
            v = format!("{value:.3}")
        );
    }
    // x axis
    let _ = writeln!(
        svg,
        "<line x1=\"{l}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"black\"/>",
        l = fmt2(MARGIN_LEFT),
        r = fmt2(width - MARGIN_RIGHT),
        b = fmt2(MARGIN_TOP + PLOT_HEIGHT)
    );

    let half_box = WIDTH_PER_GROUP * 0.3;
    for (g, stat) in stats.iter().enumerate() {
        let cx = x_center(g);
        // whisker stems and caps
        for (from, to) in [(stat.whisker_lo, stat.q1), (stat.q3, stat.whisker_hi)] {
            let _ = writeln!(
                svg,
                "<line x1=\"{x}\" y1=\"{y1}\" x2=\"{x}\" y2=\"{y2}\" stroke=\"black\"/>",
                x = fmt2(cx),
                y1 = fmt2(y_of(from)),
                y2 = fmt2(y_of(to))
            );
        }
        for cap in [stat.whisker_lo, stat.whisker_hi] {
            let _ = writeln!(
                svg,
                "<line x1=\"{}\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\" stroke=\"black\"/>",
                fmt2(cx - half_box * 0.6),
                fmt2(cx + half_box * 0.6),
                y = fmt2(y_of(cap))
            );
        }
        // box and median
        let _ = writeln!(
            svg,
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"#cfe2f3\" stroke=\"black\"/>",
            fmt2(cx - half_box),
            fmt2(y_of(stat.q3)),
            fmt2(2.0 * half_box),
            fmt2((y_of(stat.q1) - y_of(stat.q3)).max(0.5))
        );
        let _ = writeln!(
            svg,
            "<line x1=\"{}\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\" stroke=\"black\" stroke-width=\"1.5\"/>",
            fmt2(cx - half_box),
            fmt2(cx + half_box),
            y = fmt2(y_of(stat.median))
        );
        for &outlier in &stat.outliers {
            let _ = writeln!(
                svg,
                "<circle cx=\"{}\" cy=\"{}\" r=\"2\" fill=\"none\" stroke=\"black\"/>",
                fmt2(cx),
                fmt2(y_of(outlier))
            );
        }
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>",
            fmt2(cx),
            fmt2(MARGIN_TOP + PLOT_HEIGHT + 16.0),
            group_labels[g]
        );
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quartiles_and_whiskers_on_a_known_sample() {
        // 0..8 plus one far outlier
        let values = [0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 50.0];
        let stats = box_stats(&values);
        assert_eq!(stats.q1, 2.25);
        assert_eq!(stats.median, 4.5);
        assert_eq!(stats.q3, 6.75);
        assert_eq!(stats.whisker_lo, 0.0);
        assert_eq!(stats.whisker_hi, 8.0);
        assert_eq!(stats.outliers, vec![50.0]);
    }

    #[test]
    fn rendering_is_deterministic_and_well_formed() {
        let groups = vec![vec![0.1, 0.2, 0.3, 0.4], vec![0.2, 0.5, 0.6, 0.9]];
        let labels = vec!["0.1".to_string(), "0.2".to_string()];
        let a = render_boxplot("kDN", &labels, &groups);
        let b = render_boxplot("kDN", &labels, &groups);
        assert_eq!(a, b);
        assert!(a.starts_with("<svg"));
        assert!(a.ends_with("</svg>\n"));
        assert_eq!(a.matches("<rect").count(), 3); // background + two boxes
    }

    #[test]
    fn constant_data_still_renders() {
        let groups = vec![vec![0.5, 0.5, 0.5]];
        let svg = render_boxplot("De", &["0.1".to_string()], &groups);
        assert!(svg.contains("</svg>"));
    }
}
