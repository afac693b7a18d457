//! Static positions-over-time plot of a log.
//!
//! Draws the first two coordinates only: the workspace box, one polyline per
//! agent, and a marker at each start (hollow) and end (filled). Normal agents
//! are blue, adversaries red.

use std::fmt::Write;

use crate::config::ScenarioConfig;
use crate::trajectory::TrajectoryLog;

const SIZE: f64 = 600.0;
const PAD: f64 = 20.0;

pub fn render(cfg: &ScenarioConfig, log: &TrajectoryLog) -> String {
    let ws = &cfg.workspace;
    let axis = |k: usize| -> (f64, f64) {
        match (ws.min.get(k), ws.max.get(k)) {
            (Some(&lo), Some(&hi)) => (lo, hi),
            _ => (-1.0, 1.0),
        }
    };
    let (x0, x1) = axis(0);
    let (y0, y1) = axis(1);
    let span = (x1 - x0).max(y1 - y0);
    let scale = (SIZE - 2.0 * PAD) / span;
    let width = (x1 - x0) * scale + 2.0 * PAD;
    let height = (y1 - y0) * scale + 2.0 * PAD;
    let map = |p: &[f64]| -> (f64, f64) {
        let x = p[0];
        let y = p.get(1).copied().unwrap_or(0.5 * (y0 + y1));
        (PAD + (x - x0) * scale, PAD + (y1 - y) * scale)
    };

    let n = log.rows.iter().map(|r| r.agent + 1).max().unwrap_or(0);
    let mut paths: Vec<Vec<(f64, f64)>> = vec![Vec::new(); n];
    let mut normal = vec![true; n];
    for r in &log.rows {
        paths[r.agent].push(map(&r.position));
        normal[r.agent] = r.normal;
    }

    let mut s = String::new();
    let _ = writeln!(
        s,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.2} {height:.2}">"##
    );
    let _ = writeln!(
        s,
        r##"<rect x="{PAD}" y="{PAD}" width="{:.2}" height="{:.2}" fill="none" stroke="#999"/>"##,
        (x1 - x0) * scale,
        (y1 - y0) * scale
    );
    for (i, path) in paths.iter().enumerate() {
        let (Some(first), Some(last)) = (path.first(), path.last()) else {
            continue;
        };
        let color = if normal[i] { "#1f5fbf" } else { "#c0392b" };
        let mut pts = String::new();
        for (x, y) in path {
            let _ = write!(pts, "{x:.2},{y:.2} ");
        }
        let _ = writeln!(
            s,
            r##"<polyline points="{}" fill="none" stroke="{color}" stroke-width="0.8" stroke-opacity="0.6"/>"##,
            pts.trim_end()
        );
        let _ = writeln!(
            s,
            r##"<circle cx="{:.2}" cy="{:.2}" r="3" fill="none" stroke="{color}"/>"##,
            first.0, first.1
        );
        let _ = writeln!(
            s,
            r##"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="{color}"/>"##,
            last.0, last.1
        );
    }
    s.push_str("</svg>\n");
    s
}
