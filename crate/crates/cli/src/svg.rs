//! Static SVG plots of the conic a*X^2 + b*XY + c*Y^2 + X - nY = 0 with
//! its lattice points marked.
//!
//! The curve is sampled in f64 — good enough for a figure; every exact
//! statement lives in the reports, not the plot. For c != 0 the conic is
//! solved as a quadratic in Y per sampled X (two branches); for c = 0 it
//! degenerates to a rational graph Y = (a*X^2 + X) / (n - b*X).

use num_traits::ToPrimitive;
use num_traits::Zero;

use pvsieve_core::conic::LatticePoint;
use pvsieve_core::{Int, Polynomial};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 640.0;
const MARGIN: f64 = 48.0;
const SAMPLES: usize = 600;

struct Frame {
    x_lo: f64,
    x_hi: f64,
    y_lo: f64,
    y_hi: f64,
}

impl Frame {
    fn to_px(&self, x: f64, y: f64) -> (f64, f64) {
        let sx = (WIDTH - 2.0 * MARGIN) / (self.x_hi - self.x_lo);
        let sy = (HEIGHT - 2.0 * MARGIN) / (self.y_hi - self.y_lo);
        (
            MARGIN + (x - self.x_lo) * sx,
            // SVG y grows downward.
            HEIGHT - MARGIN - (y - self.y_lo) * sy,
        )
    }
}

fn big_f64(v: &Int) -> f64 {
    v.to_f64().unwrap_or(0.0)
}

/// Viewing window: the lattice points padded out, or a default window
/// around the origin when there are none; an explicit box wins.
fn frame_for(points: &[LatticePoint], bound: Option<&Int>) -> Frame {
    let (mut x_lo, mut x_hi, mut y_lo, mut y_hi) = (-6.0_f64, 6.0_f64, -6.0_f64, 6.0_f64);
    for p in points {
        x_lo = x_lo.min(big_f64(&p.x));
        x_hi = x_hi.max(big_f64(&p.x));
        y_lo = y_lo.min(big_f64(&p.y));
        y_hi = y_hi.max(big_f64(&p.y));
    }
    if let Some(b) = bound {
        let b = big_f64(b);
        x_lo = -b;
        x_hi = b;
        y_lo = -b;
        y_hi = b;
    }
    let pad_x = 0.15 * (x_hi - x_lo).max(1.0);
    let pad_y = 0.15 * (y_hi - y_lo).max(1.0);
    Frame { x_lo: x_lo - pad_x, x_hi: x_hi + pad_x, y_lo: y_lo - pad_y, y_hi: y_hi + pad_y }
}

/// Y-values of the conic above a given X, in curve order.
fn branches(a: f64, b: f64, c: f64, n: f64, x: f64) -> Vec<f64> {
    if c != 0.0 {
        // c*Y^2 + (b*x - n)*Y + (a*x^2 + x) = 0.
        let p = b * x - n;
        let q = a * x * x + x;
        let disc = p * p - 4.0 * c * q;
        if disc < 0.0 {
            return Vec::new();
        }
        let s = disc.sqrt();
        vec![(-p - s) / (2.0 * c), (-p + s) / (2.0 * c)]
    } else {
        let den = n - b * x;
        if den.abs() < 1e-9 {
            return Vec::new();
        }
        vec![(a * x * x + x) / den]
    }
}

fn polylines(poly: &Polynomial, n: &Int, frame: &Frame) -> Vec<Vec<(f64, f64)>> {
    let (a, b, c) = poly.quad_coeffs().expect("validated by caller");
    let (a, b, c, n) = (big_f64(a), big_f64(b), big_f64(c), big_f64(n));
    // One polyline per branch, broken where the branch leaves the frame
    // or the radicand goes negative.
    let mut lines: Vec<Vec<(f64, f64)>> = vec![Vec::new(), Vec::new()];
    let mut out = Vec::new();
    for i in 0..=SAMPLES {
        let x = frame.x_lo + (frame.x_hi - frame.x_lo) * (i as f64) / (SAMPLES as f64);
        let ys = branches(a, b, c, n, x);
        for (k, line) in lines.iter_mut().enumerate() {
            match ys.get(k) {
                Some(&y) if y.is_finite() && y >= frame.y_lo && y <= frame.y_hi => {
                    line.push(frame.to_px(x, y));
                }
                _ => {
                    if line.len() > 1 {
                        out.push(std::mem::take(line));
                    } else {
                        line.clear();
                    }
                }
            }
        }
    }
    for line in lines {
        if line.len() > 1 {
            out.push(line);
        }
    }
    out
}

fn fmt_pts(pts: &[(f64, f64)]) -> String {
    pts.iter()
        .map(|(x, y)| format!("{x:.2},{y:.2}"))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn render(poly: &Polynomial, n: &Int, points: &[LatticePoint], bound: Option<&Int>) -> String {
    let frame = frame_for(points, bound);
    let mut s = String::new();
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    s.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    // Axes through the origin when it is inside the frame.
    if frame.x_lo < 0.0 && frame.x_hi > 0.0 {
        let (px, _) = frame.to_px(0.0, 0.0);
        s.push_str(&format!(
            "<line x1=\"{px:.2}\" y1=\"{MARGIN}\" x2=\"{px:.2}\" y2=\"{:.2}\" \
             stroke=\"#999\" stroke-width=\"1\"/>\n",
            HEIGHT - MARGIN
        ));
    }
    if frame.y_lo < 0.0 && frame.y_hi > 0.0 {
        let (_, py) = frame.to_px(0.0, 0.0);
        s.push_str(&format!(
            "<line x1=\"{MARGIN}\" y1=\"{py:.2}\" x2=\"{:.2}\" y2=\"{py:.2}\" \
             stroke=\"#999\" stroke-width=\"1\"/>\n",
            WIDTH - MARGIN
        ));
    }

    for line in polylines(poly, n, &frame) {
        s.push_str(&format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"#2060c0\" stroke-width=\"1.5\"/>\n",
            fmt_pts(&line)
        ));
    }

    for p in points {
        let (px, py) = frame.to_px(big_f64(&p.x), big_f64(&p.y));
        let fill = if p.y.is_zero() { "#c03020" } else { "#208040" };
        s.push_str(&format!(
            "<circle cx=\"{px:.2}\" cy=\"{py:.2}\" r=\"4\" fill=\"{fill}\"/>\n"
        ));
        s.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" font-family=\"monospace\">({}, {})</text>\n",
            px + 6.0,
            py - 6.0,
            p.x,
            p.y
        ));
    }

    s.push_str(&format!(
        "<text x=\"{MARGIN}\" y=\"{:.2}\" font-size=\"13\" font-family=\"monospace\">{} points</text>\n",
        HEIGHT - MARGIN / 2.0,
        points.len()
    ));
    s.push_str("</svg>\n");
    s
}
