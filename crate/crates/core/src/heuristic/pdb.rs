//! Additive pattern databases for sliding-tile puzzles.
//!
//! An abstract state records the blank cell and the cells of the pattern
//! tiles. Moving a pattern tile costs what it costs in the puzzle; moving any
//! other tile is free, so databases over disjoint patterns add up
//! admissibly.

use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use thiserror::Error;

use crate::domain::tile::{CostMode, TileState, MAX_CELLS};
use crate::Cost;

use super::Heuristic;

const MAGIC: &[u8; 4] = b"LPDB";
const VERSION: u16 = 1;
const UNREACHED: u16 = u16::MAX;

#[derive(Debug, Error)]
pub enum PdbError {
    #[error("pattern is empty")]
    EmptyPattern,
    #[error("tile {0} is not a non-blank tile of the board")]
    TileOutOfRange(u8),
    #[error("tile {0} appears in more than one pattern")]
    DuplicateTile(u8),
    #[error("patterns do not cover tile {0}")]
    NotPartition(u8),
    #[error("database needs {entries} entries, above the cap of {cap}")]
    TooLarge { entries: u64, cap: u64 },
    #[error("board {0}x{1} unsupported")]
    BadBoard(usize, usize),
    #[error("abstract distance {0} does not fit in 16 bits")]
    Overflow(u64),
    #[error("not a pattern database file")]
    BadMagic,
    #[error("unsupported file version {0}")]
    UnsupportedVersion(u16),
    #[error("corrupt file: {0}")]
    Corrupt(String),
    #[error("file is for a {found}-cell board, expected {expected}")]
    BoardMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PdbOptions {
    /// Largest table accepted, in entries.
    pub max_entries: u64,
}

impl Default for PdbOptions {
    fn default() -> Self {
        PdbOptions {
            max_entries: 64 << 20,
        }
    }
}

/// Ranks placements of `items` distinct cells out of `cells`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Ranker {
    cells: usize,
    items: usize,
}

impl Ranker {
    fn size(&self) -> u64 {
        (0..self.items).map(|i| (self.cells - i) as u64).product()
    }

    fn rank(&self, positions: &[u8]) -> usize {
        let mut used = 0u32;
        let mut rank = 0usize;
        for (i, &p) in positions.iter().enumerate() {
            let below = (!used & ((1u32 << p) - 1)).count_ones() as usize;
            rank = rank * (self.cells - i) + below;
            used |= 1 << p;
        }
        rank
    }

    fn unrank(&self, mut rank: usize, out: &mut [u8]) {
        let mut digits = [0usize; MAX_CELLS];
        for i in (0..self.items).rev() {
            let radix = self.cells - i;
            digits[i] = rank % radix;
            rank /= radix;
        }
        let mut used = 0u32;
        for i in 0..self.items {
            let mut remaining = digits[i];
            let mut cell = 0;
            loop {
                if used & (1 << cell) == 0 {
                    if remaining == 0 {
                        break;
                    }
                    remaining -= 1;
                }
                cell += 1;
            }
            out[i] = cell as u8;
            used |= 1 << cell;
        }
    }
}

/// Exact abstract distances for one pattern.
#[derive(Debug, Clone)]
pub struct PatternDb {
    width: usize,
    height: usize,
    mode: CostMode,
    pattern: Vec<u8>,
    table: Vec<u16>,
}

impl PatternDb {
    /// Builds the table by a uniform-cost sweep from the goal placement.
    pub fn build(
        width: usize,
        height: usize,
        mode: CostMode,
        pattern: &[u8],
        options: &PdbOptions,
    ) -> Result<Self, PdbError> {
        TileState::goal(width, height).map_err(|_| PdbError::BadBoard(width, height))?;
        validate_pattern(width * height, pattern)?;
        let ranker = Ranker {
            cells: width * height,
            items: pattern.len() + 1,
        };
        let entries = ranker.size();
        if entries > options.max_entries {
            return Err(PdbError::TooLarge {
                entries,
                cap: options.max_entries,
            });
        }
        let mut table = vec![UNREACHED; entries as usize];
        let weights: Vec<Cost> = pattern.iter().map(|&t| mode.move_cost(t)).collect();

        let mut goal = [0u8; MAX_CELLS];
        for (i, &t) in pattern.iter().enumerate() {
            goal[i + 1] = t;
        }
        let start = ranker.rank(&goal[..ranker.items]);

        // Dial's bucket queue; costs are small integers
        let mut buckets: Vec<Vec<u32>> = vec![vec![start as u32]];
        table[start] = 0;
        let mut cost = 0usize;
        let mut place = [0u8; MAX_CELLS];
        while cost < buckets.len() {
            while let Some(r) = buckets[cost].pop() {
                let r = r as usize;
                if table[r] as usize != cost {
                    continue;
                }
                ranker.unrank(r, &mut place);
                let blank = place[0] as usize;
                let (row, col) = (blank / width, blank % width);
                let neighbors = [
                    (row > 0).then(|| blank - width),
                    (row + 1 < height).then(|| blank + width),
                    (col > 0).then(|| blank - 1),
                    (col + 1 < width).then(|| blank + 1),
                ];
                for cell in neighbors.into_iter().flatten() {
                    let mut next = place;
                    next[0] = cell as u8;
                    let mut step = 0;
                    if let Some(i) = (1..ranker.items).find(|&i| place[i] as usize == cell) {
                        next[i] = blank as u8;
                        step = weights[i - 1] as usize;
                    }
                    let nr = ranker.rank(&next[..ranker.items]);
                    let nc = cost + step;
                    if nc >= UNREACHED as usize {
                        return Err(PdbError::Overflow(nc as u64));
                    }
                    if nc < table[nr] as usize {
                        table[nr] = nc as u16;
                        if buckets.len() <= nc {
                            buckets.resize_with(nc + 1, Vec::new);
                        }
                        buckets[nc].push(nr as u32);
                    }
                }
            }
            cost += 1;
        }
        Ok(PatternDb {
            width,
            height,
            mode,
            pattern: pattern.to_vec(),
            table,
        })
    }

    pub fn pattern(&self) -> &[u8] {
        &self.pattern
    }

    pub fn cost_mode(&self) -> CostMode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// Abstract distance for `state`.
    pub fn lookup(&self, state: &TileState) -> Cost {
        let pos = state.positions();
        let mut place = [0u8; MAX_CELLS];
        place[0] = pos[0];
        for (i, &t) in self.pattern.iter().enumerate() {
            place[i + 1] = pos[t as usize];
        }
        let ranker = self.ranker();
        let v = self.table[ranker.rank(&place[..ranker.items])];
        debug_assert_ne!(v, UNREACHED);
        v as Cost
    }

    fn ranker(&self) -> Ranker {
        Ranker {
            cells: self.width * self.height,
            items: self.pattern.len() + 1,
        }
    }

    /// Number of entries no abstract state reaches (unsolvable parity).
    pub fn unreached(&self) -> usize {
        self.table.iter().filter(|&&v| v == UNREACHED).count()
    }

    pub fn write_to(&self, mut w: impl Write) -> Result<(), PdbError> {
        let max = self.table.iter().filter(|&&v| v != UNREACHED).max().copied().unwrap_or(0);
        let entry_width: u8 = if max < u8::MAX as u16 { 1 } else { 2 };
        w.write_all(MAGIC)?;
        w.write_all(&VERSION.to_le_bytes())?;
        w.write_all(&[(self.width * self.height) as u8, self.pattern.len() as u8])?;
        w.write_all(&self.pattern)?;
        w.write_all(&[entry_width, cost_mode_byte(self.mode), self.width as u8])?;
        if entry_width == 1 {
            let bytes: Vec<u8> = self
                .table
                .iter()
                .map(|&v| if v == UNREACHED { u8::MAX } else { v as u8 })
                .collect();
            w.write_all(&bytes)?;
        } else {
            let mut bytes = Vec::with_capacity(self.table.len() * 2);
            for v in &self.table {
                bytes.extend_from_slice(&v.to_le_bytes());
            }
            w.write_all(&bytes)?;
        }
        Ok(())
    }

    pub fn read_from(mut r: impl Read) -> Result<Self, PdbError> {
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)?;
        if &magic != MAGIC {
            return Err(PdbError::BadMagic);
        }
        let mut b2 = [0u8; 2];
        r.read_exact(&mut b2)?;
        let version = u16::from_le_bytes(b2);
        if version != VERSION {
            return Err(PdbError::UnsupportedVersion(version));
        }
        r.read_exact(&mut b2)?;
        let (cells, k) = (b2[0] as usize, b2[1] as usize);
        let mut pattern = vec![0u8; k];
        r.read_exact(&mut pattern)?;
        let mut b3 = [0u8; 3];
        r.read_exact(&mut b3)?;
        let (entry_width, mode, width) = (b3[0], b3[1], b3[2] as usize);
        let mode = match mode {
            0 => CostMode::Unit,
            1 => CostMode::TileNumber,
            m => return Err(PdbError::Corrupt(format!("cost mode byte {m}"))),
        };
        if width == 0 || cells % width != 0 {
            return Err(PdbError::Corrupt(format!("width {width} for {cells} cells")));
        }
        let height = cells / width;
        TileState::goal(width, height).map_err(|_| PdbError::BadBoard(width, height))?;
        validate_pattern(cells, &pattern)?;
        let entries = Ranker { cells, items: k + 1 }.size() as usize;
        let mut raw = Vec::new();
        r.read_to_end(&mut raw)?;
        let table: Vec<u16> = match entry_width {
            1 if raw.len() == entries => raw
                .iter()
                .map(|&b| if b == u8::MAX { UNREACHED } else { b as u16 })
                .collect(),
            2 if raw.len() == entries * 2 => raw
                .chunks_exact(2)
                .map(|c| u16::from_le_bytes([c[0], c[1]]))
                .collect(),
            1 | 2 => {
                return Err(PdbError::Corrupt(format!(
                    "{} table bytes, expected {}",
                    raw.len(),
                    entries * entry_width as usize
                )))
            }
            w => return Err(PdbError::Corrupt(format!("entry width {w}"))),
        };
        Ok(PatternDb {
            width,
            height,
            mode,
            pattern,
            table,
        })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), PdbError> {
        let mut buf = Vec::new();
        self.write_to(&mut buf)?;
        fs::write(path, buf)?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, PdbError> {
        let bytes = fs::read(path)?;
        Self::read_from(&bytes[..])
    }

    /// Loads a file and checks it matches the expected board.
    pub fn load_for(path: impl AsRef<Path>, width: usize, height: usize) -> Result<Self, PdbError> {
        let pdb = Self::load(path)?;
        if pdb.width * pdb.height != width * height || pdb.width != width {
            return Err(PdbError::BoardMismatch {
                expected: width * height,
                found: pdb.width * pdb.height,
            });
        }
        Ok(pdb)
    }
}

fn cost_mode_byte(mode: CostMode) -> u8 {
    match mode {
        CostMode::Unit => 0,
        CostMode::TileNumber => 1,
    }
}

fn validate_pattern(cells: usize, pattern: &[u8]) -> Result<(), PdbError> {
    if pattern.is_empty() {
        return Err(PdbError::EmptyPattern);
    }
    let mut seen = 0u32;
    for &t in pattern {
        if t == 0 || t as usize >= cells {
            return Err(PdbError::TileOutOfRange(t));
        }
        if seen & (1 << t) != 0 {
            return Err(PdbError::DuplicateTile(t));
        }
        seen |= 1 << t;
    }
    Ok(())
}

impl Heuristic<TileState> for PatternDb {
    fn evaluate(&self, state: &TileState) -> Cost {
        self.lookup(state)
    }
    fn is_consistent(&self) -> bool {
        true
    }
    fn label(&self) -> String {
        format!("pdb:{}", join(&self.pattern))
    }
}

fn join(tiles: &[u8]) -> String {
    tiles.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(",")
}

/// Sum of pattern databases over disjoint patterns.
#[derive(Debug, Clone)]
pub struct AdditivePdb {
    parts: Vec<PatternDb>,
}

impl AdditivePdb {
    /// Builds one database per pattern. The patterns must be disjoint;
    /// `require_partition` additionally demands they cover every tile.
    pub fn build(
        width: usize,
        height: usize,
        mode: CostMode,
        patterns: &[Vec<u8>],
        options: &PdbOptions,
    ) -> Result<Self, PdbError> {
        check_disjoint(width * height, patterns, false)?;
        let parts = patterns
            .iter()
            .map(|p| PatternDb::build(width, height, mode, p, options))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(AdditivePdb { parts })
    }

    /// Combines prebuilt databases, checking they are disjoint.
    pub fn from_parts(parts: Vec<PatternDb>) -> Result<Self, PdbError> {
        if let Some(first) = parts.first() {
            let patterns: Vec<Vec<u8>> = parts.iter().map(|p| p.pattern.clone()).collect();
            check_disjoint(first.width * first.height, &patterns, false)?;
        }
        Ok(AdditivePdb { parts })
    }

    /// Checks that the patterns partition the non-blank tiles.
    pub fn is_partition(&self) -> bool {
        match self.parts.first() {
            None => false,
            Some(first) => {
                let patterns: Vec<Vec<u8>> = self.parts.iter().map(|p| p.pattern.clone()).collect();
                check_disjoint(first.width * first.height, &patterns, true).is_ok()
            }
        }
    }

    pub fn parts(&self) -> &[PatternDb] {
        &self.parts
    }
}

fn check_disjoint(cells: usize, patterns: &[Vec<u8>], cover: bool) -> Result<(), PdbError> {
    let mut seen = 0u32;
    for p in patterns {
        validate_pattern(cells, p)?;
        for &t in p {
            if seen & (1 << t) != 0 {
                return Err(PdbError::DuplicateTile(t));
            }
            seen |= 1 << t;
        }
    }
    if cover {
        if let Some(t) = (1..cells as u8).find(|&t| seen & (1 << t) == 0) {
            return Err(PdbError::NotPartition(t));
        }
    }
    Ok(())
}

impl Heuristic<TileState> for AdditivePdb {
    fn evaluate(&self, state: &TileState) -> Cost {
        self.parts.iter().map(|p| p.lookup(state)).sum()
    }
    fn is_consistent(&self) -> bool {
        true
    }
    fn label(&self) -> String {
        let parts: Vec<String> = self.parts.iter().map(|p| join(&p.pattern)).collect();
        format!("pdb:{}", parts.join("/"))
    }
    fn dominates(&self) -> Option<String> {
        let prefix = match self.parts.first().map(|p| p.mode) {
            Some(CostMode::TileNumber) => "wmd",
            _ => "md",
        };
        self.is_partition().then(|| prefix.to_string())
    }
}

/// Default disjoint partition: 4-4 on 3x3 boards, 5-5-5 on 4x4 boards, and
/// otherwise consecutive groups of at most four tiles.
pub fn default_partition(width: usize, height: usize) -> Vec<Vec<u8>> {
    let n = (width * height) as u8;
    let group = match (width, height) {
        (4, 4) => 5,
        _ => 4,
    };
    (1..n)
        .collect::<Vec<u8>>()
        .chunks(group)
        .map(|c| c.to_vec())
        .collect()
}

/// Parses `1,2,3/4,5,6` into patterns.
pub fn parse_partition(text: &str) -> Option<Vec<Vec<u8>>> {
    text.split('/')
        .map(|group| {
            group
                .split(',')
                .map(|t| t.trim().parse::<u8>().ok())
                .collect::<Option<Vec<u8>>>()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::tile::{random_instance, TileRules};
    use crate::heuristic::manhattan::WeightedManhattan;
    use crate::oracle::DistanceTable;
    use proptest::prelude::*;

    #[test]
    fn ranking_round_trips() {
        let ranker = Ranker { cells: 9, items: 4 };
        assert_eq!(ranker.size(), 9 * 8 * 7 * 6);
        let mut buf = [0u8; MAX_CELLS];
        for r in 0..ranker.size() as usize {
            ranker.unrank(r, &mut buf);
            assert_eq!(ranker.rank(&buf[..4]), r);
        }
    }

    #[test]
    fn goal_maps_to_zero() {
        let pdb = PatternDb::build(3, 3, CostMode::Unit, &[1, 2, 3], &PdbOptions::default()).unwrap();
        assert_eq!(pdb.lookup(&TileState::goal(3, 3).unwrap()), 0);
        assert_eq!(pdb.unreached(), 0);
    }

    #[test]
    fn full_pattern_is_exact() {
        let pdb = PatternDb::build(3, 3, CostMode::Unit, &[1, 2, 3, 4, 5, 6, 7, 8], &PdbOptions::default()).unwrap();
        let rules = TileRules::new(3, 3, CostMode::Unit);
        let exact = DistanceTable::to_goal(&rules, &TileState::goal(3, 3).unwrap());
        assert_eq!(exact.len(), 181_440);
        for (s, d) in exact.iter() {
            assert_eq!(pdb.lookup(s), d);
        }
        // only the solvable half of the placements is reachable
        assert_eq!(pdb.unreached(), pdb.len() / 2);
    }

    #[test]
    fn rejects_bad_patterns_and_caps() {
        let o = PdbOptions::default();
        assert!(matches!(PatternDb::build(3, 3, CostMode::Unit, &[], &o), Err(PdbError::EmptyPattern)));
        assert!(matches!(PatternDb::build(3, 3, CostMode::Unit, &[0], &o), Err(PdbError::TileOutOfRange(0))));
        assert!(matches!(PatternDb::build(3, 3, CostMode::Unit, &[9], &o), Err(PdbError::TileOutOfRange(9))));
        assert!(matches!(PatternDb::build(3, 3, CostMode::Unit, &[2, 2], &o), Err(PdbError::DuplicateTile(2))));
        let tiny = PdbOptions { max_entries: 100 };
        assert!(matches!(
            PatternDb::build(3, 3, CostMode::Unit, &[1, 2], &tiny),
            Err(PdbError::TooLarge { entries: 504, cap: 100 })
        ));
        assert!(matches!(
            AdditivePdb::build(3, 3, CostMode::Unit, &[vec![1, 2], vec![2, 3]], &o),
            Err(PdbError::DuplicateTile(2))
        ));
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        for mode in [CostMode::Unit, CostMode::TileNumber] {
            let pdb = PatternDb::build(3, 3, mode, &[5, 6, 7, 8], &PdbOptions::default()).unwrap();
            let path = dir.path().join("p.pdb");
            pdb.save(&path).unwrap();
            let bytes = fs::read(&path).unwrap();
            assert_eq!(&bytes[..4], b"LPDB");
            assert_eq!(u16::from_le_bytes([bytes[4], bytes[5]]), 1);
            assert_eq!(bytes[6], 9);
            let back = PatternDb::load_for(&path, 3, 3).unwrap();
            assert_eq!(back.pattern(), pdb.pattern());
            assert_eq!(back.cost_mode(), mode);
            assert_eq!(back.table, pdb.table);
            assert!(matches!(PatternDb::load_for(&path, 4, 4), Err(PdbError::BoardMismatch { .. })));
        }
        let bad = dir.path().join("bad");
        fs::write(&bad, b"NOPE....").unwrap();
        assert!(matches!(PatternDb::load(&bad), Err(PdbError::BadMagic)));
    }

    #[test]
    fn default_partitions() {
        assert_eq!(default_partition(3, 3), vec![vec![1, 2, 3, 4], vec![5, 6, 7, 8]]);
        assert_eq!(default_partition(4, 4).iter().map(|p| p.len()).collect::<Vec<_>>(), vec![5, 5, 5]);
        assert_eq!(parse_partition("1,2/3"), Some(vec![vec![1, 2], vec![3]]));
        assert_eq!(parse_partition("1,x"), None);
    }

    fn additive(mode: CostMode) -> AdditivePdb {
        AdditivePdb::build(3, 3, mode, &default_partition(3, 3), &PdbOptions::default()).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn additive_dominates_md_and_stays_admissible(seed in 0u64..1_000_000, weighted: bool) {
            let mode = if weighted { CostMode::TileNumber } else { CostMode::Unit };
            let h = additive(mode);
            prop_assert!(h.is_partition());
            let s = random_instance(3, 3, seed, 60).unwrap();
            let md = WeightedManhattan::new(3, 3, mode).evaluate(&s);
            prop_assert!(h.evaluate(&s) >= md);
            for (n, tile) in s.moves() {
                prop_assert!(h.evaluate(&s).abs_diff(h.evaluate(&n)) <= mode.move_cost(tile));
            }
        }
    }
}
