//! SVG rendering of a grid with overlaid paths, start/goal markers, and a
//! legend.

use safegrid_core::{GridIndex, OccupancyGrid};
use std::fmt::Write as _;

const PALETTE: [&str; 6] = ["#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#17becf"];

fn scale_for(grid: &OccupancyGrid) -> usize {
    let side = grid.width().max(grid.height());
    (768 / side).clamp(2, 16)
}

/// Render the map with each labeled path as a polyline. Paths are drawn in
/// cell centers; the first and last cells get start/goal markers.
pub fn render_svg(grid: &OccupancyGrid, paths: &[(String, Vec<GridIndex>)]) -> String {
    let s = scale_for(grid);
    let w = grid.width() * s;
    let h = grid.height() * s;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(out, r#"<rect width="{w}" height="{h}" fill="white"/>"#);

    // obstacle cells, merged into horizontal runs
    for row in 0..grid.height() {
        let mut col = 0;
        while col < grid.width() {
            if grid.is_obstacle(GridIndex::new(row, col)) {
                let start = col;
                while col < grid.width() && grid.is_obstacle(GridIndex::new(row, col)) {
                    col += 1;
                }
                let _ = writeln!(
                    out,
                    r##"<rect x="{}" y="{}" width="{}" height="{}" fill="#444"/>"##,
                    start * s,
                    row * s,
                    (col - start) * s,
                    s
                );
            } else {
                col += 1;
            }
        }
    }

    let center = |n: &GridIndex| (n.col * s + s / 2, n.row * s + s / 2);
    for (i, (label, path)) in paths.iter().enumerate() {
        if path.is_empty() {
            continue;
        }
        let color = PALETTE[i % PALETTE.len()];
        let points: Vec<String> = path
            .iter()
            .map(|n| {
                let (x, y) = center(n);
                format!("{x},{y}")
            })
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="{}" stroke-linejoin="round" opacity="0.85"/>"#,
            points.join(" "),
            (s as f64 / 3.0).max(1.0),
        );
        let (sx, sy) = center(&path[0]);
        let (gx, gy) = center(path.last().expect("non-empty"));
        let r = (s as f64 / 1.8).max(2.0);
        let _ = writeln!(out, r#"<circle cx="{sx}" cy="{sy}" r="{r}" fill="{color}" stroke="black"/>"#);
        let _ = writeln!(
            out,
            r#"<rect x="{:.1}" y="{:.1}" width="{:.1}" height="{:.1}" fill="white" stroke="{color}" stroke-width="2"/>"#,
            gx as f64 - r,
            gy as f64 - r,
            2.0 * r,
            2.0 * r
        );
        // legend entry
        let ly = 16 + i * 16;
        let _ = writeln!(
            out,
            r#"<line x1="6" y1="{ly}" x2="26" y2="{ly}" stroke="{color}" stroke-width="3"/>"#
        );
        let _ = writeln!(
            out,
            r#"<text x="30" y="{}" font-family="monospace" font-size="12" fill="black">{label}</text>"#,
            ly + 4
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use safegrid_core::parse_map;

    #[test]
    fn map_only_when_no_paths() {
        let g = parse_map("cell 1.0\n.#.\n...\n.#.").unwrap();
        let svg = render_svg(&g, &[]);
        assert!(svg.contains("<svg"));
        assert!(svg.contains("fill=\"#444\""));
        assert!(!svg.contains("polyline"));
    }

    #[test]
    fn one_path_one_polyline_two_markers() {
        let g = parse_map("cell 1.0\n...\n...\n...").unwrap();
        let path = vec![GridIndex::new(0, 0), GridIndex::new(1, 1), GridIndex::new(2, 2)];
        let svg = render_svg(&g, &[("upp".into(), path)]);
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert_eq!(svg.matches("<circle").count(), 1);
        assert!(svg.contains(">upp</text>"));
    }

    #[test]
    fn two_paths_distinguishable() {
        let g = parse_map("cell 1.0\n...\n...\n...").unwrap();
        let a = vec![GridIndex::new(0, 0), GridIndex::new(0, 1)];
        let b = vec![GridIndex::new(2, 0), GridIndex::new(2, 1)];
        let svg = render_svg(&g, &[("upp".into(), a), ("astar".into(), b)]);
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.contains(PALETTE[0]) && svg.contains(PALETTE[1]));
        assert!(svg.contains(">upp</text>") && svg.contains(">astar</text>"));
    }
}
