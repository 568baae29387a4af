//! Sliding-tile puzzles with unit or tile-number operator costs.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::search::{Edge, StateSpace, Transitions};
use crate::Cost;

pub const MAX_CELLS: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TileError {
    #[error("board {0}x{1} unsupported: need 2 <= width, height and at most 16 cells")]
    BadDimensions(usize, usize),
    #[error("expected {expected} tiles, found {found}")]
    WrongCount { expected: usize, found: usize },
    #[error("tile {0} out of range")]
    OutOfRange(u8),
    #[error("tile {0} appears twice")]
    Duplicate(u8),
    #[error("permutation is not solvable")]
    Unsolvable,
}

/// Operator cost model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum CostMode {
    /// Every move costs 1.
    #[default]
    Unit,
    /// A move costs the number on the moved tile.
    TileNumber,
}

impl CostMode {
    pub fn move_cost(self, tile: u8) -> Cost {
        match self {
            CostMode::Unit => 1,
            CostMode::TileNumber => tile as Cost,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CostMode::Unit => "unit",
            CostMode::TileNumber => "weighted",
        }
    }
}

/// A board configuration, packed four bits per cell.
///
/// Cell `i` (row-major) holds the tile stored in nibble `i`; tile 0 is the
/// blank. The goal places tile `i` on cell `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TileState {
    width: u8,
    height: u8,
    blank: u8,
    packed: u64,
}

impl TileState {
    pub fn goal(width: usize, height: usize) -> Result<Self, TileError> {
        check_dims(width, height)?;
        let tiles: Vec<u8> = (0..(width * height) as u8).collect();
        Ok(Self::pack(width, height, &tiles))
    }

    /// Builds a state from the tiles listed cell by cell. Rejects
    /// non-permutations and unsolvable configurations.
    pub fn from_tiles(width: usize, height: usize, tiles: &[u8]) -> Result<Self, TileError> {
        let state = Self::from_tiles_unchecked_parity(width, height, tiles)?;
        if !state.is_solvable() {
            return Err(TileError::Unsolvable);
        }
        Ok(state)
    }

    /// Like [`TileState::from_tiles`] but accepts unsolvable permutations.
    pub fn from_tiles_unchecked_parity(
        width: usize,
        height: usize,
        tiles: &[u8],
    ) -> Result<Self, TileError> {
        check_dims(width, height)?;
        let n = width * height;
        if tiles.len() != n {
            return Err(TileError::WrongCount {
                expected: n,
                found: tiles.len(),
            });
        }
        let mut seen = [false; MAX_CELLS];
        for &t in tiles {
            if t as usize >= n {
                return Err(TileError::OutOfRange(t));
            }
            if seen[t as usize] {
                return Err(TileError::Duplicate(t));
            }
            seen[t as usize] = true;
        }
        Ok(Self::pack(width, height, tiles))
    }

    fn pack(width: usize, height: usize, tiles: &[u8]) -> Self {
        let mut packed = 0u64;
        let mut blank = 0;
        for (i, &t) in tiles.iter().enumerate() {
            packed |= (t as u64) << (4 * i);
            if t == 0 {
                blank = i as u8;
            }
        }
        TileState {
            width: width as u8,
            height: height as u8,
            blank,
            packed,
        }
    }

    pub fn width(&self) -> usize {
        self.width as usize
    }

    pub fn height(&self) -> usize {
        self.height as usize
    }

    pub fn cells(&self) -> usize {
        self.width() * self.height()
    }

    pub fn blank(&self) -> usize {
        self.blank as usize
    }

    pub fn tile_at(&self, cell: usize) -> u8 {
        ((self.packed >> (4 * cell)) & 0xF) as u8
    }

    pub fn tiles(&self) -> Vec<u8> {
        (0..self.cells()).map(|c| self.tile_at(c)).collect()
    }

    /// `positions()[t]` is the cell holding tile `t`.
    pub fn positions(&self) -> [u8; MAX_CELLS] {
        let mut pos = [0u8; MAX_CELLS];
        for c in 0..self.cells() {
            pos[self.tile_at(c) as usize] = c as u8;
        }
        pos
    }

    pub fn is_goal(&self) -> bool {
        (0..self.cells()).all(|c| self.tile_at(c) as usize == c)
    }

    /// Standard parity test against the goal with the blank on cell 0.
    pub fn is_solvable(&self) -> bool {
        let tiles: Vec<u8> = self.tiles().into_iter().filter(|&t| t != 0).collect();
        let mut inversions = 0usize;
        for i in 0..tiles.len() {
            for j in i + 1..tiles.len() {
                if tiles[i] > tiles[j] {
                    inversions += 1;
                }
            }
        }
        if self.width % 2 == 1 {
            inversions % 2 == 0
        } else {
            let blank_row = self.blank() / self.width();
            (inversions + blank_row) % 2 == 0
        }
    }

    /// Moves the blank onto `cell`, returning the new state and moved tile.
    fn slide(&self, cell: usize) -> (TileState, u8) {
        let tile = self.tile_at(cell);
        let b = self.blank();
        let mut packed = self.packed & !(0xFu64 << (4 * cell));
        packed |= (tile as u64) << (4 * b);
        (
            TileState {
                blank: cell as u8,
                packed,
                ..*self
            },
            tile,
        )
    }

    /// Cells adjacent to the blank, in up/down/left/right order.
    pub fn blank_neighbors(&self) -> impl Iterator<Item = usize> {
        let w = self.width();
        let h = self.height();
        let b = self.blank();
        let (r, c) = (b / w, b % w);
        [
            (r > 0).then(|| b - w),
            (r + 1 < h).then(|| b + w),
            (c > 0).then(|| b - 1),
            (c + 1 < w).then(|| b + 1),
        ]
        .into_iter()
        .flatten()
    }

    /// Every state reachable by one blank move, with the moved tile.
    pub fn moves(&self) -> impl Iterator<Item = (TileState, u8)> {
        let state = *self;
        self.blank_neighbors().map(move |cell| state.slide(cell))
    }
}

fn check_dims(width: usize, height: usize) -> Result<(), TileError> {
    if width < 2 || height < 2 || width * height > MAX_CELLS {
        return Err(TileError::BadDimensions(width, height));
    }
    Ok(())
}

impl fmt::Debug for TileState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TileState{:?}", self.tiles())
    }
}

impl fmt::Display for TileState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.tiles().iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// Move rules for a board size and cost mode; no fixed start state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TileRules {
    pub width: usize,
    pub height: usize,
    pub cost_mode: CostMode,
}

impl TileRules {
    pub fn new(width: usize, height: usize, cost_mode: CostMode) -> Self {
        TileRules {
            width,
            height,
            cost_mode,
        }
    }
}

impl Transitions for TileRules {
    type State = TileState;

    fn successors(&self, state: &TileState, out: &mut Vec<Edge<TileState>>) {
        for (next, tile) in state.moves() {
            out.push(Edge {
                state: next,
                cost: self.cost_mode.move_cost(tile),
                bidirectional: true,
            });
        }
    }

    fn is_goal(&self, state: &TileState) -> bool {
        state.is_goal()
    }

    fn branching_factor(&self, state: &TileState) -> usize {
        state.blank_neighbors().count()
    }
}

/// A puzzle instance: rules plus a start state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TilePuzzle {
    pub rules: TileRules,
    pub start: TileState,
}

impl TilePuzzle {
    pub fn new(start: TileState, cost_mode: CostMode) -> Self {
        TilePuzzle {
            rules: TileRules::new(start.width(), start.height(), cost_mode),
            start,
        }
    }
}

impl Transitions for TilePuzzle {
    type State = TileState;

    fn successors(&self, state: &TileState, out: &mut Vec<Edge<TileState>>) {
        self.rules.successors(state, out)
    }

    fn is_goal(&self, state: &TileState) -> bool {
        state.is_goal()
    }

    fn branching_factor(&self, state: &TileState) -> usize {
        self.rules.branching_factor(state)
    }
}

impl StateSpace for TilePuzzle {
    fn initial_state(&self) -> TileState {
        self.start
    }
}

/// Scrambles the goal with `walk` random blank moves, never undoing the
/// previous move.
pub fn random_instance(width: usize, height: usize, seed: u64, walk: usize) -> Result<TileState, TileError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = TileState::goal(width, height)?;
    let mut previous_blank: Option<usize> = None;
    for _ in 0..walk {
        let options: Vec<usize> = state
            .blank_neighbors()
            .filter(|&c| Some(c) != previous_blank)
            .collect();
        let cell = options[rng.gen_range(0..options.len())];
        previous_blank = Some(state.blank());
        state = state.slide(cell).0;
    }
    Ok(state)
}

/// Generates `count` instances with consecutive seeds starting at `seed`.
pub fn random_instances(
    width: usize,
    height: usize,
    seed: u64,
    count: usize,
    walk: usize,
) -> Result<Vec<TileState>, TileError> {
    (0..count as u64)
        .map(|i| random_instance(width, height, seed.wrapping_add(i), walk))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn succ(state: &TileState, mode: CostMode) -> Vec<Edge<TileState>> {
        let mut out = Vec::new();
        TileRules::new(state.width(), state.height(), mode).successors(state, &mut out);
        out
    }

    #[test]
    fn corner_blank_has_two_successors() {
        let g = TileState::goal(3, 3).unwrap();
        assert_eq!(succ(&g, CostMode::Unit).len(), 2);
        let g4 = TileState::goal(4, 4).unwrap();
        assert_eq!(succ(&g4, CostMode::Unit).len(), 2);
    }

    #[test]
    fn centre_blank_has_four_successors() {
        let s = TileState::from_tiles(3, 3, &[1, 4, 2, 3, 0, 5, 6, 7, 8]).unwrap();
        let edges = succ(&s, CostMode::Unit);
        assert_eq!(edges.len(), 4);
        assert!(edges.iter().all(|e| e.cost == 1 && e.bidirectional));
    }

    #[test]
    fn weighted_cost_is_tile_number() {
        // blank on cell 13, between tiles 12 and 14, below tile 9
        let mut tiles: Vec<u8> = (0..16).collect();
        tiles.swap(0, 13);
        let s = TileState::from_tiles_unchecked_parity(4, 4, &tiles).unwrap();
        let mut costs: Vec<Cost> = succ(&s, CostMode::TileNumber).iter().map(|e| e.cost).collect();
        costs.sort();
        assert_eq!(costs, vec![9, 12, 14]);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            TileState::from_tiles(3, 3, &[0, 1, 2]),
            Err(TileError::WrongCount { expected: 9, found: 3 })
        );
        assert_eq!(
            TileState::from_tiles(3, 3, &[0, 1, 2, 3, 4, 5, 6, 7, 7]),
            Err(TileError::Duplicate(7))
        );
        assert_eq!(
            TileState::from_tiles(3, 3, &[0, 1, 2, 3, 4, 5, 6, 8, 9]),
            Err(TileError::OutOfRange(9))
        );
        assert_eq!(
            TileState::from_tiles(3, 3, &[0, 2, 1, 3, 4, 5, 6, 7, 8]),
            Err(TileError::Unsolvable)
        );
        assert_eq!(TileState::goal(1, 4), Err(TileError::BadDimensions(1, 4)));
        assert_eq!(TileState::goal(5, 5), Err(TileError::BadDimensions(5, 5)));
    }

    #[test]
    fn random_walks() {
        assert!(random_instance(3, 3, 7, 0).unwrap().is_goal());
        assert_eq!(
            random_instance(4, 4, 11, 40).unwrap(),
            random_instance(4, 4, 11, 40).unwrap()
        );
        assert_ne!(
            random_instance(4, 4, 11, 40).unwrap(),
            random_instance(4, 4, 12, 40).unwrap()
        );
    }

    proptest! {
        #[test]
        fn edges_are_bidirectional_with_equal_cost(seed in 0u64..5000, walk in 0usize..40, weighted: bool) {
            let mode = if weighted { CostMode::TileNumber } else { CostMode::Unit };
            let s = random_instance(3, 3, seed, walk).unwrap();
            prop_assert!(s.is_solvable());
            for e in succ(&s, mode) {
                prop_assert!(e.cost >= 1 && e.cost <= 8);
                let back = succ(&e.state, mode);
                prop_assert!(back.iter().any(|r| r.state == s && r.cost == e.cost));
            }
        }

        #[test]
        fn solvability_matches_reachability_parity(perm in Just((0u8..9).collect::<Vec<_>>()).prop_shuffle()) {
            let s = TileState::from_tiles_unchecked_parity(3, 3, &perm).unwrap();
            // a move never changes solvability
            for (n, _) in s.moves() {
                prop_assert_eq!(n.is_solvable(), s.is_solvable());
            }
        }
    }
}
