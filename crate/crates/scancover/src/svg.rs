//! Static SVG rendering of a solved instance.
//!
//! The top panel draws the point set with every edge colored by its scan
//! time (blue early, red late). The bottom panel has one row per vertex:
//! a dot for each scan the vertex takes part in and, when a trajectory is
//! known, a trace of its heading over time.

use std::fmt::Write;

use scancover_core::geom;
use scancover_core::{Dimension, EdgeId, Instance, ScanSchedule, Trajectory, VertexId};

const WIDTH: f64 = 800.0;
const MARGIN: f64 = 40.0;
const PLOT_HEIGHT: f64 = 360.0;
const ROW: f64 = 28.0;
const LABEL_WIDTH: f64 = 90.0;
const TRACE_SAMPLES: usize = 96;

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Hue runs from 240 (blue) at time 0 to 0 (red) at the makespan.
fn time_color(t: f64, span: f64) -> String {
    let hue = 240.0 * (1.0 - (t / span).clamp(0.0, 1.0));
    format!("hsl({hue:.1},80%,45%)")
}

fn layout(inst: &Instance) -> Vec<(f64, f64)> {
    let n = inst.vertex_count();
    if inst.dimension() == Dimension::Abstract {
        return (0..n)
            .map(|i| {
                let a = std::f64::consts::TAU * i as f64 / n.max(1) as f64;
                (a.cos(), a.sin())
            })
            .collect();
    }
    inst.vertices().map(|v| {
        let p = inst.point(v);
        (p[0], p[1])
    }).collect()
}

/// Map raw positions into the top panel, y pointing up.
fn fit(raw: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in raw {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-12);
    let scale = (WIDTH - 2.0 * MARGIN).min(PLOT_HEIGHT - 2.0 * MARGIN) / span;
    let cx = WIDTH / 2.0 - scale * (x0 + x1) / 2.0;
    let cy = PLOT_HEIGHT / 2.0 + scale * (y0 + y1) / 2.0;
    raw.iter().map(|&(x, y)| (cx + scale * x, cy - scale * y)).collect()
}

fn edge_title(inst: &Instance, e: EdgeId, t: f64) -> String {
    let edge = inst.edge(e);
    escape(&format!("{}-{} at {t:.3}", inst.label(edge.u), inst.label(edge.v)))
}

fn draw_points(svg: &mut String, inst: &Instance, schedule: &ScanSchedule, span: f64) {
    let pos = fit(&layout(inst));
    let line = inst.dimension() == Dimension::One;
    for e in inst.edge_ids() {
        let edge = inst.edge(e);
        let (a, b) = (pos[edge.u.0], pos[edge.v.0]);
        let t = schedule.time(e);
        let color = time_color(t, span);
        let title = edge_title(inst, e, t);
        if line {
            // Collinear edges would overlap, so arc them above the line.
            let r = (b.0 - a.0).abs() / 2.0;
            let (l, rr) = if a.0 < b.0 { (a, b) } else { (b, a) };
            let _ = writeln!(
                svg,
                r#"<path d="M {:.2} {:.2} A {r:.2} {r:.2} 0 0 1 {:.2} {:.2}" fill="none" stroke="{color}" stroke-width="2"><title>{title}</title></path>"#,
                l.0, l.1, rr.0, rr.1
            );
        } else {
            let _ = writeln!(
                svg,
                r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{color}" stroke-width="2"><title>{title}</title></line>"#,
                a.0, a.1, b.0, b.1
            );
        }
    }
    for v in inst.vertices() {
        let (x, y) = pos[v.0];
        let _ = writeln!(svg, r#"<circle cx="{x:.2}" cy="{y:.2}" r="4" fill="black"/>"#);
        let _ = writeln!(svg, r#"<text x="{:.2}" y="{:.2}" font-size="11">{}</text>"#, x + 6.0, y - 6.0, escape(inst.label(v)));
    }
}

/// Heading of `v` at `t` as a fraction of the row height: the planar angle
/// over 360 for line and plane instances, the turn away from the initial
/// heading over 180 in space.
fn heading_fraction(inst: &Instance, traj: &Trajectory, v: VertexId, t: f64) -> Option<f64> {
    let h = traj.heading_at(v, t)?;
    match inst.dimension() {
        Dimension::Three => {
            let start = traj.paths[v.0].first()?.heading;
            Some(geom::angle_between(start, h) / 180.0)
        }
        _ => Some(geom::heading_deg(h) / 360.0),
    }
}

fn draw_timeline(svg: &mut String, inst: &Instance, schedule: &ScanSchedule, traj: Option<&Trajectory>, span: f64) {
    let top = PLOT_HEIGHT + 20.0;
    let x0 = MARGIN + LABEL_WIDTH;
    let x1 = WIDTH - MARGIN;
    let x_of = |t: f64| x0 + (x1 - x0) * t / span;
    let _ = writeln!(svg, r#"<text x="{x0:.2}" y="{:.2}" font-size="11">0</text>"#, top - 6.0);
    let _ = writeln!(svg, r#"<text x="{x1:.2}" y="{:.2}" font-size="11" text-anchor="end">{:.3}</text>"#, top - 6.0, schedule.makespan());
    for v in inst.vertices() {
        let y = top + ROW * v.0 as f64;
        let mid = y + ROW / 2.0;
        let _ = writeln!(svg, r#"<g class="row">"#);
        let _ = writeln!(svg, r#"<text x="{MARGIN:.2}" y="{:.2}" font-size="11">{}</text>"#, mid + 4.0, escape(inst.label(v)));
        let _ = writeln!(svg, r##"<line x1="{x0:.2}" y1="{mid:.2}" x2="{x1:.2}" y2="{mid:.2}" stroke="#ccc"/>"##);
        if let Some(traj) = traj {
            let points: Vec<String> = (0..=TRACE_SAMPLES)
                .filter_map(|k| {
                    let t = span * k as f64 / TRACE_SAMPLES as f64;
                    let f = heading_fraction(inst, traj, v, t)?;
                    Some(format!("{:.2},{:.2}", x_of(t), y + ROW - 2.0 - f * (ROW - 4.0)))
                })
                .collect();
            if !points.is_empty() {
                let _ = writeln!(svg, r##"<polyline points="{}" fill="none" stroke="#888" stroke-width="1"/>"##, points.join(" "));
            }
        }
        for &e in inst.incident(v) {
            let t = schedule.time(e);
            let _ = writeln!(
                svg,
                r#"<circle cx="{:.2}" cy="{mid:.2}" r="4" fill="{}"><title>{}</title></circle>"#,
                x_of(t),
                time_color(t, span),
                edge_title(inst, e, t)
            );
        }
        let _ = writeln!(svg, "</g>");
    }
}

pub fn render(inst: &Instance, schedule: &ScanSchedule, traj: Option<&Trajectory>) -> String {
    let span = if schedule.makespan() > 0.0 { schedule.makespan() } else { 1.0 };
    let height = PLOT_HEIGHT + 40.0 + ROW * inst.vertex_count() as f64;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}" font-family="sans-serif">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(svg, r#"<text x="{MARGIN}" y="20" font-size="13">{} makespan {:.3}</text>"#, escape(&schedule.tag), schedule.makespan());
    draw_points(&mut svg, inst, schedule, span);
    draw_timeline(&mut svg, inst, schedule, traj, span);
    svg.push_str("</svg>\n");
    svg
}
