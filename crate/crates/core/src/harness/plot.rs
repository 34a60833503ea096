use std::collections::BTreeMap;
use std::path::Path;

use plotters::prelude::*;

use super::{HarnessError, PROFILE_HEADER};

type Series = BTreeMap<u64, Vec<(u64, f64)>>;

fn parse_profile(csv_text: &str) -> Result<Series, HarnessError> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(csv_text.as_bytes());
    let header = reader.headers().map_err(|e| csv_error(&e, 1))?.iter().collect::<Vec<_>>().join(",");
    if header != PROFILE_HEADER {
        return Err(HarnessError::Csv { line: 1, message: format!("expected header {PROFILE_HEADER:?}, found {header:?}") });
    }
    let mut series = Series::new();
    for record in reader.records() {
        let record = record.map_err(|e| csv_error(&e, 0))?;
        let line = record.position().map_or(0, |p| p.line());
        let field = |i: usize, name: &str| -> Result<i128, HarnessError> {
            record.get(i).and_then(|s| s.trim().parse().ok()).ok_or_else(|| HarnessError::Csv {
                line,
                message: format!("column `{name}` is not an integer"),
            })
        };
        let (m, n, num, den) = (field(0, "m")?, field(1, "n")?, field(2, "measure_num")?, field(3, "measure_den")?);
        if m <= 0 || n < 0 || den <= 0 {
            return Err(HarnessError::Csv { line, message: "m, n and measure_den must be positive".into() });
        }
        series.entry(m as u64).or_default().push((n as u64, num as f64 / den as f64));
    }
    Ok(series)
}

fn csv_error(e: &csv::Error, fallback: u64) -> HarnessError {
    let line = e.position().map_or(fallback, |p| p.line());
    HarnessError::Csv { line, message: e.to_string() }
}

fn plot_err<E: std::fmt::Display>(e: E) -> HarnessError {
    HarnessError::Plot(e.to_string())
}

/// Renders a profile CSV as an SVG line plot of measure against `n`, one series per `m`.
pub fn render_plot(csv_text: &str) -> Result<String, HarnessError> {
    let series = parse_profile(csv_text)?;
    let (lo, hi) = series
        .values()
        .flatten()
        .fold(None, |acc: Option<(u64, u64)>, &(n, _)| Some(acc.map_or((n, n), |(a, b)| (a.min(n), b.max(n)))))
        .unwrap_or((0, 1));
    let hi = hi.max(lo + 1);
    let mut svg = String::new();
    {
        let root = SVGBackend::with_string(&mut svg, (800, 480)).into_drawing_area();
        root.fill(&WHITE).map_err(plot_err)?;
        let mut chart = ChartBuilder::on(&root)
            .caption("recurrence profile", ("sans-serif", 22))
            .margin(12)
            .x_label_area_size(36)
            .y_label_area_size(48)
            .build_cartesian_2d(lo..hi, 0f64..1.05f64)
            .map_err(plot_err)?;
        chart.configure_mesh().x_desc("n").y_desc("measure of D(m, n, R, A)").draw().map_err(plot_err)?;
        for (i, (m, points)) in series.iter().enumerate() {
            let color = Palette99::pick(i).to_rgba();
            chart
                .draw_series(LineSeries::new(points.iter().copied(), color.stroke_width(2)))
                .map_err(plot_err)?
                .label(format!("m = {m}"))
                .legend(move |(x, y)| PathElement::new(vec![(x, y), (x + 20, y)], color));
            chart
                .draw_series(points.iter().map(|&p| Circle::new(p, 3, color.filled())))
                .map_err(plot_err)?;
        }
        if !series.is_empty() {
            chart
                .configure_series_labels()
                .background_style(WHITE.mix(0.8))
                .border_style(BLACK)
                .draw()
                .map_err(plot_err)?;
        }
        root.present().map_err(plot_err)?;
    }
    Ok(svg)
}

pub fn emit_plot(csv_text: &str, path: &Path) -> Result<(), HarnessError> {
    let svg = render_plot(csv_text)?;
    std::fs::write(path, svg).map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_rows_give_empty_axes() {
        let svg = render_plot("m,n,measure_num,measure_den\n").unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(!svg.contains("m = "));
    }

    #[test]
    fn single_row_single_point() {
        let svg = render_plot("m,n,measure_num,measure_den\n10,4,1,1\n").unwrap();
        assert_eq!(svg.lines().filter(|l| l.trim() == "m = 10").count(), 1);
        assert_eq!(svg.matches("<circle").count(), 1);
    }

    #[test]
    fn legend_in_m_order() {
        let csv = "m,n,measure_num,measure_den\n100,1,0,1\n100,2,1,2\n10,1,1,2\n10,2,1,1\n";
        let svg = render_plot(csv).unwrap();
        let labels: Vec<&str> = svg.lines().map(str::trim).filter(|l| l.starts_with("m = ")).collect();
        assert_eq!(labels, ["m = 10", "m = 100"]);
        assert_eq!(render_plot(csv).unwrap(), svg);
    }

    #[test]
    fn malformed_csv_names_the_line() {
        let bad = "m,n,measure_num,measure_den\n10,1,1,2\n10,x,1,2\n";
        match render_plot(bad) {
            Err(HarnessError::Csv { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        match render_plot("m,n,measure_num,measure_den\n10,1,1\n") {
            Err(HarnessError::Csv { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(render_plot("a,b\n"), Err(HarnessError::Csv { line: 1, .. })));
    }
}
