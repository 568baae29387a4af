use std::fmt;

use crate::Cost;

/// One component of the OPEN ordering applied after the f-value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TieKey {
    /// Smaller heuristic part (`f - g`) first.
    SmallH,
    /// Larger heuristic part first.
    LargeH,
    /// Larger g first (deeper nodes).
    HighG,
    /// Smaller g first.
    LowG,
    /// Older nodes first, by generation order.
    Fifo,
    /// Newer nodes first, by generation order.
    Lifo,
}

impl TieKey {
    fn name(self) -> &'static str {
        match self {
            TieKey::SmallH => "h",
            TieKey::LargeH => "-h",
            TieKey::HighG => "-g",
            TieKey::LowG => "g",
            TieKey::Fifo => "fifo",
            TieKey::Lifo => "lifo",
        }
    }
}

/// Ordered list of tie-breaking comparators applied among equal f-values.
///
/// The generation sequence number of a node is unique, so the order is made
/// total by appending [`TieKey::Fifo`] whenever neither `Fifo` nor `Lifo` is
/// present.
///
/// The default is smaller h, then higher g, then FIFO.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TieBreakRule {
    keys: Vec<TieKey>,
}

impl Default for TieBreakRule {
    fn default() -> Self {
        TieBreakRule::new(vec![TieKey::SmallH, TieKey::HighG, TieKey::Fifo])
    }
}

impl TieBreakRule {
    pub fn new(mut keys: Vec<TieKey>) -> Self {
        let mut seen = Vec::with_capacity(keys.len());
        keys.retain(|k| {
            if seen.contains(k) {
                false
            } else {
                seen.push(*k);
                true
            }
        });
        if let Some(pos) = keys
            .iter()
            .position(|k| matches!(k, TieKey::Fifo | TieKey::Lifo))
        {
            keys.truncate(pos + 1);
        } else {
            keys.push(TieKey::Fifo);
        }
        TieBreakRule { keys }
    }

    pub fn keys(&self) -> &[TieKey] {
        &self.keys
    }

    /// Parses a comma-separated list such as `h,-g,fifo`.
    pub fn parse(text: &str) -> Option<Self> {
        let mut keys = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let key = match part {
                "h" => TieKey::SmallH,
                "-h" => TieKey::LargeH,
                "-g" => TieKey::HighG,
                "g" => TieKey::LowG,
                "fifo" => TieKey::Fifo,
                "lifo" => TieKey::Lifo,
                _ => return None,
            };
            keys.push(key);
        }
        Some(TieBreakRule::new(keys))
    }

    /// Packs `(f, h, g, seq)` into a key whose lexicographic order is the
    /// pop order: the smallest key is popped first.
    pub(crate) fn sort_key(&self, f: Cost, h: Cost, g: Cost, seq: u64) -> SortKey {
        let mut parts = [u64::MAX; 4];
        parts[0] = f;
        for (slot, key) in parts[1..].iter_mut().zip(&self.keys) {
            *slot = match key {
                TieKey::SmallH => h,
                TieKey::LargeH => u64::MAX - h,
                TieKey::HighG => u64::MAX - g,
                TieKey::LowG => g,
                TieKey::Fifo => seq,
                TieKey::Lifo => u64::MAX - seq,
            };
        }
        SortKey(parts)
    }
}

impl fmt::Display for TieBreakRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<_> = self.keys.iter().map(|k| k.name()).collect();
        write!(f, "{}", names.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct SortKey([u64; 4]);

impl SortKey {
    pub(crate) fn f(&self) -> Cost {
        self.0[0]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_prefers_small_h_then_deep_then_old() {
        let rule = TieBreakRule::default();
        assert!(rule.sort_key(7, 2, 5, 9) < rule.sort_key(7, 4, 3, 1));
        assert!(rule.sort_key(7, 2, 5, 9) < rule.sort_key(7, 2, 4, 1));
        assert!(rule.sort_key(7, 2, 5, 1) < rule.sort_key(7, 2, 5, 9));
        assert!(rule.sort_key(6, 9, 0, 9) < rule.sort_key(7, 0, 7, 0));
    }

    #[test]
    fn rule_is_always_total() {
        assert_eq!(
            TieBreakRule::new(vec![TieKey::SmallH]).keys(),
            &[TieKey::SmallH, TieKey::Fifo]
        );
        // anything after the sequence key can never matter
        assert_eq!(
            TieBreakRule::new(vec![TieKey::Lifo, TieKey::SmallH]).keys(),
            &[TieKey::Lifo]
        );
    }

    #[test]
    fn parse_round_trips_display() {
        let rule = TieBreakRule::parse("h,-g,fifo").unwrap();
        assert_eq!(rule, TieBreakRule::default());
        assert_eq!(rule.to_string(), "h,-g,fifo");
        assert!(TieBreakRule::parse("h,bogus").is_none());
    }
}
