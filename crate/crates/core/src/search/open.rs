use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::tie::{SortKey, TieBreakRule};
use crate::Cost;

/// Ordering data for one OPEN entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OpenKey {
    pub f: Cost,
    pub h: Cost,
    pub g: Cost,
    /// Generation sequence number of the node, used by FIFO/LIFO tie-breaking.
    pub seq: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PushOutcome {
    /// The item was not in OPEN and now is.
    Inserted,
    /// The item was already in OPEN; its key was replaced.
    Updated,
}

/// Binary-heap OPEN list over dense item ids with lazy deletion.
///
/// Each item has at most one live entry. Re-pushing a live item replaces its
/// key; the old heap entry becomes stale and is discarded when it surfaces.
/// `len() == pushes() - pops()` holds at all times.
#[derive(Debug, Clone)]
pub struct OpenList {
    rule: TieBreakRule,
    heap: BinaryHeap<Reverse<(SortKey, u64, usize)>>,
    live_token: Vec<Option<u64>>,
    next_token: u64,
    live: usize,
    pushes: u64,
    pops: u64,
}

impl OpenList {
    pub fn new(rule: TieBreakRule) -> Self {
        OpenList {
            rule,
            heap: BinaryHeap::new(),
            live_token: Vec::new(),
            next_token: 0,
            live: 0,
            pushes: 0,
            pops: 0,
        }
    }

    pub fn rule(&self) -> &TieBreakRule {
        &self.rule
    }

    pub fn push(&mut self, item: usize, key: OpenKey) -> PushOutcome {
        if item >= self.live_token.len() {
            self.live_token.resize(item + 1, None);
        }
        let token = self.next_token;
        self.next_token += 1;
        let sort = self.rule.sort_key(key.f, key.h, key.g, key.seq);
        self.heap.push(Reverse((sort, token, item)));
        match self.live_token[item].replace(token) {
            Some(_) => PushOutcome::Updated,
            None => {
                self.live += 1;
                self.pushes += 1;
                PushOutcome::Inserted
            }
        }
    }

    /// Removes and returns the best live item together with its f-value.
    pub fn pop_best(&mut self) -> Option<(usize, Cost)> {
        self.discard_stale();
        let Reverse((sort, _, item)) = self.heap.pop()?;
        self.live_token[item] = None;
        self.live -= 1;
        self.pops += 1;
        Some((item, sort.f()))
    }

    /// Smallest f-value among live entries.
    pub fn best_f(&mut self) -> Option<Cost> {
        self.discard_stale();
        self.heap.peek().map(|Reverse((sort, _, _))| sort.f())
    }

    pub fn contains(&self, item: usize) -> bool {
        self.live_token.get(item).is_some_and(Option::is_some)
    }

    pub fn len(&self) -> usize {
        self.live
    }

    pub fn is_empty(&self) -> bool {
        self.live == 0
    }

    pub fn pushes(&self) -> u64 {
        self.pushes
    }

    pub fn pops(&self) -> u64 {
        self.pops
    }

    /// Ids of all live items, in no particular order.
    pub fn live_items(&self) -> impl Iterator<Item = usize> + '_ {
        self.live_token
            .iter()
            .enumerate()
            .filter_map(|(i, t)| t.map(|_| i))
    }

    fn discard_stale(&mut self) {
        while let Some(Reverse((_, token, item))) = self.heap.peek() {
            if self.live_token[*item] == Some(*token) {
                break;
            }
            self.heap.pop();
        }
    }
}
