//! Static renderings of two-dimensional data: ascii grids and simple
//! vector-graphic documents.
//!
//! Grids print the row with the largest y first, matching the tableau
//! orientation the domain literature draws, with `.` for cells outside the
//! object and `(empty)` for objects with nothing to draw. Output is a pure
//! function of the instance, so renderings can serve as goldens.

use gerst_core::gluing::GluingDatum;
use gerst_core::lattice::{heights_from_diagram, HeightMap, Point, YoungDiagram};
use gerst_core::tower::{CompatibleFloorPlan, FloorPlan};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RenderFormat {
    Ascii,
    Svg,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RenderError {
    #[error("no rendering for {kind}: only planar data can be drawn")]
    UnsupportedKind { kind: String },
}

/// A cell of the drawing: its label and whether it is highlighted (a plan
/// point, a glued box) or background (plain support).
#[derive(Clone, Debug)]
struct Cell {
    label: String,
    highlight: bool,
}

/// The shared drawing surface: labeled cells on the nonnegative quadrant.
#[derive(Clone, Debug, Default)]
struct Grid {
    cells: BTreeMap<(i64, i64), Cell>,
}

impl Grid {
    fn put(&mut self, x: i64, y: i64, label: impl Into<String>, highlight: bool) {
        self.cells.insert((x, y), Cell { label: label.into(), highlight });
    }

    fn ascii(&self) -> String {
        if self.cells.is_empty() {
            return "(empty)\n".to_string();
        }
        let max_x = self.cells.keys().map(|&(x, _)| x).max().unwrap();
        let max_y = self.cells.keys().map(|&(_, y)| y).max().unwrap();
        let width = self.cells.values().map(|c| c.label.len()).max().unwrap().max(1);
        let mut out = String::new();
        for y in (0..=max_y).rev() {
            let row: Vec<String> = (0..=max_x)
                .map(|x| {
                    let label = self.cells.get(&(x, y)).map_or(".", |c| c.label.as_str());
                    format!("{label:>width$}")
                })
                .collect();
            out.push_str(row.join(" ").trim_end());
            out.push('\n');
        }
        out
    }

    fn svg(&self) -> String {
        const SIDE: i64 = 24;
        if self.cells.is_empty() {
            return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"24\" height=\"24\"/>\n"
                .to_string();
        }
        let max_x = self.cells.keys().map(|&(x, _)| x).max().unwrap();
        let max_y = self.cells.keys().map(|&(_, y)| y).max().unwrap();
        let mut out = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\">\n",
            (max_x + 1) * SIDE,
            (max_y + 1) * SIDE
        );
        for (&(x, y), cell) in &self.cells {
            let px = x * SIDE;
            let py = (max_y - y) * SIDE;
            let fill = if cell.highlight { "#4682b4" } else { "#d3d3d3" };
            out.push_str(&format!(
                "  <rect x=\"{px}\" y=\"{py}\" width=\"{SIDE}\" height=\"{SIDE}\" \
                 fill=\"{fill}\" stroke=\"#333\"/>\n"
            ));
            if !cell.label.is_empty() {
                out.push_str(&format!(
                    "  <text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\" \
                     fill=\"{}\">{}</text>\n",
                    px + SIDE / 2,
                    py + SIDE / 2 + 4,
                    if cell.highlight { "#fff" } else { "#000" },
                    cell.label
                ));
            }
        }
        out.push_str("</svg>\n");
        out
    }

    fn emit(&self, format: RenderFormat) -> String {
        match format {
            RenderFormat::Ascii => self.ascii(),
            RenderFormat::Svg => self.svg(),
        }
    }
}

fn xy(p: &Point) -> (i64, i64) {
    (p.coords()[0], p.coords()[1])
}

/// The plan's points labeled with their heights.
pub fn render_floor_plan(plan: &FloorPlan, format: RenderFormat) -> String {
    let mut grid = Grid::default();
    for (p, h) in plan.iter() {
        let (x, y) = xy(p);
        grid.put(x, y, h.to_string(), true);
    }
    grid.emit(format)
}

/// The support of a height map labeled with its values: the picture of a
/// three-dimensional diagram, or of a max-score table.
pub fn render_height_map(map: &HeightMap, format: RenderFormat) -> String {
    let mut grid = Grid::default();
    for (p, h) in map.iter() {
        let (x, y) = xy(p);
        grid.put(x, y, h.to_string(), false);
    }
    grid.emit(format)
}

/// A planar staircase diagram as plain boxes.
pub fn render_diagram(diagram: &YoungDiagram, format: RenderFormat) -> Result<String, RenderError> {
    match diagram.dim() {
        2 => {
            let mut grid = Grid::default();
            for p in diagram.iter() {
                let (x, y) = xy(p);
                grid.put(x, y, "#", false);
            }
            Ok(grid.emit(format))
        }
        3 => {
            let map = heights_from_diagram(diagram).expect("three-dimensional by the match");
            Ok(render_height_map(&map, format))
        }
        n => Err(RenderError::UnsupportedKind { kind: format!("a diagram in {n} dimensions") }),
    }
}

/// Both sides of a compatible plan, labeled.
pub fn render_compatible_plan(cp: &CompatibleFloorPlan, format: RenderFormat) -> String {
    format!(
        "P:\n{}Q:\n{}",
        render_floor_plan(&cp.p_plan(), format),
        render_floor_plan(&cp.q_plan(), format)
    )
}

/// A planar gluing: each side's diagram with the glued boxes labeled by
/// their component's number and the rest drawn as plain boxes.
pub fn render_gluing(datum: &GluingDatum, format: RenderFormat) -> Result<String, RenderError> {
    if datum.dim() != 2 {
        return Err(RenderError::UnsupportedKind {
            kind: format!("a gluing in {} dimensions", datum.dim()),
        });
    }
    let side = |diagram: &YoungDiagram, sited: &dyn Fn(usize) -> gerst_core::lattice::BoxSet| {
        let mut grid = Grid::default();
        for p in diagram.iter() {
            let (x, y) = xy(p);
            grid.put(x, y, "#", false);
        }
        for i in 0..datum.components().len() {
            for p in sited(i).iter() {
                let (x, y) = xy(p);
                grid.put(x, y, (i + 1).to_string(), true);
            }
        }
        grid.emit(format)
    };
    Ok(format!(
        "lambda:\n{}mu:\n{}",
        side(datum.lambda(), &|i| datum.sited_lambda(i)),
        side(datum.mu(), &|i| datum.sited_mu(i)),
    ))
}
