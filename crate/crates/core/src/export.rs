//! CSV, SVG and plain-text report writers.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::lcg::{AutoisopticReport, SlopeEstimate};
use crate::lac::CurveParams;
use crate::point::PlanePoint;

/// Sampled curve: parameter values with their points.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    params: Vec<f64>,
    points: Vec<PlanePoint>,
    label: String,
}

impl Polyline {
    /// Parameters must be monotone; repeated values are allowed so that a
    /// zero-length range can still be sampled.
    pub fn new(params: Vec<f64>, points: Vec<PlanePoint>, label: impl Into<String>) -> Result<Self> {
        if params.is_empty() {
            return Err(Error::InvalidPolyline("no samples".into()));
        }
        if params.len() != points.len() {
            return Err(Error::InvalidPolyline(format!(
                "{} parameters but {} points",
                params.len(),
                points.len()
            )));
        }
        if let Some(k) = params.iter().position(|t| !t.is_finite()) {
            return Err(Error::InvalidPolyline(format!("parameter {k} is not finite")));
        }
        if let Some(k) = points.iter().position(|p| !p.is_finite()) {
            return Err(Error::InvalidPolyline(format!("point {k} is not finite")));
        }
        let increasing = params.windows(2).all(|w| w[0] <= w[1]);
        let decreasing = params.windows(2).all(|w| w[0] >= w[1]);
        if !(increasing || decreasing) {
            return Err(Error::InvalidPolyline("parameters are not monotone".into()));
        }
        Ok(Polyline {
            params,
            points,
            label: label.into(),
        })
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn points(&self) -> &[PlanePoint] {
        &self.points
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.params.len()
    }

    pub fn is_empty(&self) -> bool {
        self.params.is_empty()
    }
}

/// Header line followed by one `param,x,y` row per sample, 17 significant digits.
pub fn write_csv<W: Write>(p: &Polyline, mut out: W) -> Result<()> {
    let mut buf = String::from("param,x,y\n");
    for (t, q) in p.params.iter().zip(&p.points) {
        buf.push_str(&format!("{t:.16e},{:.16e},{:.16e}\n", q.x, q.y));
    }
    out.write_all(buf.as_bytes())?;
    out.flush()?;
    Ok(())
}

/// Reads the format produced by [`write_csv`].
pub fn read_csv<R: BufRead>(input: R, label: impl Into<String>) -> Result<Polyline> {
    let mut lines = input.lines();
    match lines.next() {
        Some(Ok(h)) if h.trim() == "param,x,y" => {}
        Some(Err(e)) => return Err(e.into()),
        _ => return Err(Error::InvalidPolyline("missing header param,x,y".into())),
    }
    let mut params = Vec::new();
    let mut points = Vec::new();
    for (k, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<f64> = line
            .split(',')
            .map(|f| f.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::InvalidPolyline(format!("row {}: {e}", k + 1)))?;
        let [t, x, y] = fields[..] else {
            return Err(Error::InvalidPolyline(format!("row {} has {} fields", k + 1, fields.len())));
        };
        params.push(t);
        points.push(PlanePoint::new(x, y));
    }
    Polyline::new(params, points, label)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlotSpec {
    pub polylines: Vec<Polyline>,
    pub markers: Vec<(PlanePoint, String)>,
    pub width: u32,
    pub height: u32,
    /// Padding on each side as a fraction of the data extent, in `[0, 0.5)`.
    pub margin: f64,
}

impl PlotSpec {
    pub fn new(polylines: Vec<Polyline>) -> Self {
        PlotSpec {
            polylines,
            markers: Vec::new(),
            width: 800,
            height: 600,
            margin: 0.05,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.polylines.is_empty() {
            return Err(Error::InvalidParameter("plot needs at least one polyline".into()));
        }
        if self.width == 0 || self.height == 0 {
            return Err(Error::InvalidParameter("plot size must be positive".into()));
        }
        if !(0.0..0.5).contains(&self.margin) {
            return Err(Error::InvalidParameter(format!(
                "margin must lie in [0, 0.5), got {}",
                self.margin
            )));
        }
        Ok(())
    }

    /// `(min_x, min_y, width, height)` in plane coordinates.
    pub fn view_box(&self) -> (f64, f64, f64, f64) {
        let all = self
            .polylines
            .iter()
            .flat_map(|p| p.points.iter().copied())
            .chain(self.markers.iter().map(|m| m.0).filter(|p| p.is_finite()));
        let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in all {
            x0 = x0.min(p.x);
            x1 = x1.max(p.x);
            y0 = y0.min(p.y);
            y1 = y1.max(p.y);
        }
        let pad = |lo: f64, hi: f64| {
            let extent = if hi > lo { hi - lo } else { 1.0 };
            let (lo, hi) = if hi > lo { (lo, hi) } else { (lo - 0.5, hi + 0.5) };
            (lo - self.margin * extent, hi + self.margin * extent)
        };
        let (x0, x1) = pad(x0, x1);
        let (y0, y1) = pad(y0, y1);
        (x0, y0, x1 - x0, y1 - y0)
    }
}

const COLOURS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// One `<path>` per polyline, markers as a circle plus label. The plane's
/// y axis points up in the rendered image.
pub fn write_svg<W: Write>(spec: &PlotSpec, mut out: W) -> Result<()> {
    spec.validate()?;
    let (x0, y0, w, h) = spec.view_box();
    let stroke = w.max(h) / 500.0;
    let mut s = String::new();
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\" preserveAspectRatio=\"xMidYMid meet\">\n",
        spec.width,
        spec.height,
        x0,
        -(y0 + h),
        w,
        h
    ));
    for (k, p) in spec.polylines.iter().enumerate() {
        let mut d = String::new();
        for (i, q) in p.points.iter().enumerate() {
            d.push_str(if i == 0 { "M" } else { " L" });
            d.push_str(&format!("{} {}", q.x, -q.y));
        }
        s.push_str(&format!(
            "  <path d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\"><title>{}</title></path>\n",
            d,
            COLOURS[k % COLOURS.len()],
            stroke,
            escape(&p.label)
        ));
    }
    for (p, label) in &spec.markers {
        if !p.is_finite() {
            continue;
        }
        s.push_str(&format!(
            "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"black\"/>\n  <text x=\"{}\" y=\"{}\" font-size=\"{}\">{}</text>\n",
            p.x,
            -p.y,
            3.0 * stroke,
            p.x + 4.0 * stroke,
            -p.y - 4.0 * stroke,
            12.0 * stroke,
            escape(label)
        ));
    }
    s.push_str("</svg>\n");
    out.write_all(s.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn write_params(s: &mut String, params: &CurveParams) {
    s.push_str(&format!("alpha={}\nlambda={}\n", params.alpha(), params.lambda()));
}

fn write_samples(s: &mut String, samples: &[SlopeEstimate]) {
    s.push_str(&format!("samples={}\n", samples.len()));
    s.push_str("theta,phi,branch,alpha_hat\n");
    for e in samples {
        s.push_str(&format!("{},{},{},{}\n", e.theta, e.phi, e.branch, e.value));
    }
}

/// `key=value` lines followed by a CSV table of the slope samples.
pub fn write_report<W: Write>(report: &AutoisopticReport, mut out: W) -> Result<()> {
    let mut s = String::from("kind=autoisoptic\n");
    write_params(&mut s, &report.params);
    s.push_str(&format!(
        "delta={}\nphi={}\ntolerance={}\nlimit_estimate={}\nverdict={}\n",
        report.delta, report.phi, report.tolerance, report.limit_estimate, report.verdict
    ));
    write_samples(&mut s, &report.samples);
    out.write_all(s.as_bytes())?;
    out.flush()?;
    Ok(())
}

/// Evolute slope table against the target `−1/(α − 2)`.
pub fn write_evolute_report<W: Write>(
    params: &CurveParams,
    target: f64,
    samples: &[SlopeEstimate],
    mut out: W,
) -> Result<()> {
    let mut s = String::from("kind=autoevolute\n");
    write_params(&mut s, params);
    let worst = samples.iter().map(|e| (e.value - target).abs()).fold(0.0, f64::max);
    s.push_str(&format!("target={target}\nmax_deviation={worst}\n"));
    write_samples(&mut s, samples);
    out.write_all(s.as_bytes())?;
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{PI, TAU};

    use super::*;
    use crate::lcg::{Branch, Verdict};

    fn circle(n: usize) -> Polyline {
        let params: Vec<f64> = (0..n).map(|k| TAU * k as f64 / (n - 1) as f64).collect();
        let points = params.iter().map(|&t| PlanePoint::from_angle(t)).collect();
        Polyline::new(params, points, "circle").unwrap()
    }

    fn report(n: usize) -> AutoisopticReport {
        AutoisopticReport {
            params: CurveParams::new(2.0, 1.0).unwrap(),
            delta: 2.0 * PI / 3.0,
            phi: PI,
            tolerance: 1e-4,
            samples: (0..n)
                .map(|k| SlopeEstimate {
                    theta: k as f64,
                    phi: PI,
                    value: 1.9 + 0.01 * k as f64,
                    branch: Branch::Forward,
                })
                .collect(),
            limit_estimate: 2.0,
            verdict: Verdict::NotAutoisoptic,
        }
    }

    #[test]
    fn polyline_validation() {
        assert!(Polyline::new(vec![], vec![], "").is_err());
        assert!(Polyline::new(vec![0.0], vec![], "").is_err());
        assert!(Polyline::new(vec![0.0, 1.0, 0.5], vec![PlanePoint::ORIGIN; 3], "").is_err());
        assert!(Polyline::new(vec![0.0], vec![PlanePoint::new(f64::NAN, 0.0)], "").is_err());
        assert!(Polyline::new(vec![2.0, 1.0], vec![PlanePoint::ORIGIN; 2], "").is_ok());
    }

    #[test]
    fn csv_two_points() {
        let p = Polyline::new(vec![0.0, 1.0], vec![PlanePoint::ORIGIN, PlanePoint::new(1.0, -2.5)], "").unwrap();
        let mut buf = Vec::new();
        write_csv(&p, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 3);
        assert!(text.starts_with("param,x,y\n"));
        assert!(!text.contains('\r'));
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let params = vec![-1.0 / 3.0, 0.1, std::f64::consts::E, 1e300];
        let points = vec![
            PlanePoint::new(PI, -1e-310),
            PlanePoint::new(0.1 + 0.2, 5e-324),
            PlanePoint::new(-0.0, f64::MAX),
            PlanePoint::new(1.0 / 7.0, -2.0 / 9.0),
        ];
        let p = Polyline::new(params, points, "x").unwrap();
        let mut buf = Vec::new();
        write_csv(&p, &mut buf).unwrap();
        let q = read_csv(buf.as_slice(), "x").unwrap();
        for (a, b) in p.params().iter().zip(q.params()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
        for (a, b) in p.points().iter().zip(q.points()) {
            assert_eq!(a.x.to_bits(), b.x.to_bits());
            assert_eq!(a.y.to_bits(), b.y.to_bits());
        }
    }

    #[test]
    fn csv_rejects_garbage() {
        assert!(read_csv("a,b\n".as_bytes(), "").is_err());
        assert!(read_csv("param,x,y\n1,2\n".as_bytes(), "").is_err());
        assert!(read_csv("param,x,y\n1,2,zz\n".as_bytes(), "").is_err());
    }

    #[test]
    fn svg_view_box_of_unit_circle() {
        let mut spec = PlotSpec::new(vec![circle(401)]);
        spec.margin = 0.1;
        let (x0, y0, w, h) = spec.view_box();
        assert!((x0 + 1.2).abs() < 1e-9 && (y0 + 1.2).abs() < 1e-9);
        assert!((w - 2.4).abs() < 1e-9 && (h - 2.4).abs() < 1e-9);
    }

    #[test]
    fn svg_paths_in_order() {
        let a = circle(5);
        let b = Polyline::new(vec![0.0, 1.0], vec![PlanePoint::ORIGIN, PlanePoint::new(0.0, 3.0)], "second").unwrap();
        let mut spec = PlotSpec::new(vec![a, b]);
        spec.markers.push((PlanePoint::new(0.0, 1.0), "bound".into()));
        let mut buf = Vec::new();
        write_svg(&spec, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.matches("<path").count(), 2);
        assert!(text.find("<title>circle</title>").unwrap() < text.find("<title>second</title>").unwrap());
        assert_eq!(text.matches("<circle").count(), 1);
        assert!(text.contains(">bound</text>"));
        // y is flipped: the point (0, 3) is written as y = -3.
        assert!(text.contains("L0 -3"));
    }

    #[test]
    fn svg_rejects_bad_spec() {
        assert!(write_svg(&PlotSpec::new(vec![]), Vec::new()).is_err());
        let mut spec = PlotSpec::new(vec![circle(3)]);
        spec.margin = 0.5;
        assert!(write_svg(&spec, Vec::new()).is_err());
    }

    #[test]
    fn report_layout() {
        let mut buf = Vec::new();
        write_report(&report(3), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.matches("verdict=").count(), 1);
        assert!(text.contains("verdict=not_autoisoptic\n"));
        let table: Vec<&str> = text.lines().skip_while(|l| !l.starts_with("theta,")).skip(1).collect();
        assert_eq!(table.len(), 3);
        let mut again = Vec::new();
        write_report(&report(3), &mut again).unwrap();
        assert_eq!(text.as_bytes(), again.as_slice());
    }

    #[test]
    fn evolute_report_layout() {
        let r = report(2);
        let mut buf = Vec::new();
        write_evolute_report(&r.params, 1.0, &r.samples, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("target=1\n"));
        assert_eq!(text.lines().filter(|l| l.contains(",forward,")).count(), 2);
    }
}
