use std::fmt::Write as _;
use std::path::Path;

use crate::error::Result;
use crate::geometry::{ArcIntervalSet, Point, PointSet, StackingOrder};
use crate::visibility::visible_arcs;

const STROKE: f64 = 0.01;
const MARGIN: f64 = 1.0;

/// Visible arcs of every disk, in disk-index order.
pub fn overlay_arcs(ps: &PointSet, f: &StackingOrder) -> Result<Vec<(usize, ArcIntervalSet)>> {
    (0..ps.len()).map(|i| Ok((i, visible_arcs(ps, f, i)?))).collect()
}

/// SVG drawing of the arrangement: disks painted back to front as white
/// circles with black outlines, so what shows of each outline is exactly its
/// visible boundary. With `overlay`, the visible arcs are traced again in
/// red, one `path` per arc, tagged with the disk index and angular range.
pub fn svg_document(ps: &PointSet, f: &StackingOrder, overlay: bool) -> Result<String> {
    f.check_len(ps.len())?;
    let (lo, hi) = ps.bounding_box();
    let pad = 1.0 + MARGIN;
    let width = hi.x - lo.x + 2.0 * pad;
    let height = hi.y - lo.y + 2.0 * pad;
    // World to canvas: shift into the margin and flip y.
    let map = |p: Point| (p.x - lo.x + pad, hi.y + pad - p.y);

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}" width="{w}" height="{h}">"#,
        w = width * 100.0,
        h = height * 100.0,
    )
    .unwrap();
    writeln!(out, r#"<rect width="{width}" height="{height}" fill="white"/>"#).unwrap();
    for &disk in f.sequence().iter().rev() {
        let (x, y) = map(ps.points()[disk]);
        writeln!(
            out,
            r#"<circle data-disk="{disk}" cx="{x}" cy="{y}" r="1" fill="white" stroke="black" stroke-width="{STROKE}"/>"#
        )
        .unwrap();
    }
    if overlay {
        for (disk, arcs) in overlay_arcs(ps, f)? {
            let c = ps.points()[disk];
            for &(start, end) in arcs.intervals() {
                let (x0, y0) = map(c + Point::from_polar(1.0, start));
                let (x1, y1) = map(c + Point::from_polar(1.0, end));
                let large = u8::from(end - start > std::f64::consts::PI);
                let d = if arcs.is_full() {
                    // A single arc cannot close on itself; go round in two halves.
                    let (xm, ym) = map(c + Point::from_polar(1.0, std::f64::consts::PI));
                    format!("M {x0} {y0} A 1 1 0 0 0 {xm} {ym} A 1 1 0 0 0 {x1} {y1}")
                } else {
                    format!("M {x0} {y0} A 1 1 0 {large} 0 {x1} {y1}")
                };
                writeln!(
                    out,
                    r#"<path class="visible" data-disk="{disk}" data-start="{start}" data-end="{end}" d="{d}" fill="none" stroke="red" stroke-width="{}"/>"#,
                    2.0 * STROKE
                )
                .unwrap();
            }
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Writes [`svg_document`] to `path`.
pub fn render_svg(ps: &PointSet, f: &StackingOrder, path: impl AsRef<Path>, overlay: bool) -> Result<()> {
    std::fs::write(path, svg_document(ps, f, overlay)?)?;
    Ok(())
}
