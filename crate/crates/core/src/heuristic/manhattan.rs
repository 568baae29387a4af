//! Manhattan distance and its axis components.

use crate::domain::tile::{CostMode, TileState, MAX_CELLS};
use crate::Cost;

use super::Heuristic;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Axes {
    Both,
    Columns,
    Rows,
}

/// Per-tile lookup of `weight(t) * distance(cell, goal(t))`.
#[derive(Debug, Clone)]
struct DistanceTable {
    width: usize,
    height: usize,
    table: Vec<Cost>,
}

impl DistanceTable {
    fn new(width: usize, height: usize, axes: Axes, mode: CostMode) -> Self {
        let n = width * height;
        let mut table = vec![0; MAX_CELLS * MAX_CELLS];
        for tile in 1..n {
            let weight = mode.move_cost(tile as u8);
            for cell in 0..n {
                let dx = (cell % width).abs_diff(tile % width) as Cost;
                let dy = (cell / width).abs_diff(tile / width) as Cost;
                let d = match axes {
                    Axes::Both => dx + dy,
                    Axes::Columns => dx,
                    Axes::Rows => dy,
                };
                table[tile * MAX_CELLS + cell] = weight * d;
            }
        }
        DistanceTable {
            width,
            height,
            table,
        }
    }

    fn sum(&self, state: &TileState) -> Cost {
        debug_assert_eq!((state.width(), state.height()), (self.width, self.height));
        let mut total = 0;
        for cell in 0..state.cells() {
            let tile = state.tile_at(cell) as usize;
            total += self.table[tile * MAX_CELLS + cell];
        }
        total
    }
}

/// Sum over non-blank tiles of `weight(t)` times the Manhattan distance to
/// the tile's goal cell. Unit weights give plain Manhattan distance.
///
/// Consistent for the cost mode it was built with.
#[derive(Debug, Clone)]
pub struct WeightedManhattan {
    mode: CostMode,
    table: DistanceTable,
}

impl WeightedManhattan {
    pub fn new(width: usize, height: usize, mode: CostMode) -> Self {
        WeightedManhattan {
            mode,
            table: DistanceTable::new(width, height, Axes::Both, mode),
        }
    }

    pub fn unit(width: usize, height: usize) -> Self {
        Self::new(width, height, CostMode::Unit)
    }

    pub fn tile_number(width: usize, height: usize) -> Self {
        Self::new(width, height, CostMode::TileNumber)
    }
}

impl Heuristic<TileState> for WeightedManhattan {
    fn evaluate(&self, state: &TileState) -> Cost {
        self.table.sum(state)
    }
    fn is_consistent(&self) -> bool {
        true
    }
    fn label(&self) -> String {
        match self.mode {
            CostMode::Unit => "md".into(),
            CostMode::TileNumber => "wmd".into(),
        }
    }
}

/// The horizontal (`columns`) or vertical (`rows`) part of Manhattan
/// distance. The two components sum to the full distance.
#[derive(Debug, Clone)]
pub struct AxisDistance {
    axes: Axes,
    mode: CostMode,
    table: DistanceTable,
}

impl AxisDistance {
    pub fn columns(width: usize, height: usize) -> Self {
        Self::build(width, height, Axes::Columns, CostMode::Unit)
    }

    pub fn rows(width: usize, height: usize) -> Self {
        Self::build(width, height, Axes::Rows, CostMode::Unit)
    }

    /// Same axis, each tile weighted by `mode`.
    pub fn weighted(self, mode: CostMode) -> Self {
        Self::build(self.table.width, self.table.height, self.axes, mode)
    }

    fn build(width: usize, height: usize, axes: Axes, mode: CostMode) -> Self {
        AxisDistance {
            axes,
            mode,
            table: DistanceTable::new(width, height, axes, mode),
        }
    }
}

impl Heuristic<TileState> for AxisDistance {
    fn evaluate(&self, state: &TileState) -> Cost {
        self.table.sum(state)
    }
    fn is_consistent(&self) -> bool {
        true
    }
    fn label(&self) -> String {
        let axis = if self.axes == Axes::Columns { "dx" } else { "dy" };
        match self.mode {
            CostMode::Unit => axis.into(),
            CostMode::TileNumber => format!("w{axis}"),
        }
    }
}
