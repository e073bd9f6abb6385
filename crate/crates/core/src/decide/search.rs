//! Depth-first search for a refuting diagram.
//!
//! Traces are simulated from the base point one letter at a time over a
//! growing chain of points. A step whose image is already defined is forced.
//! Otherwise the image must lie strictly between the images of the nearest
//! mapped points below and above, and is either an existing point outside
//! the map's range or a new point in one of the gaps of that interval. Any
//! genuine countermodel restricted to the orbit of its base point agrees
//! with one branch, so exhausting the branches proves validity.
//!
//! Refutable instances tend to have a few lucky branches buried in huge
//! barren subtrees, so the search first makes short randomized runs on a
//! Luby schedule, then falls back to one deterministic run.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::diagram::Diagram;
use super::Limits;
use crate::terms::{GroupWord, Var};
use crate::{Error, Result};

const NONE: u8 = u8::MAX;

/// Most points a search may create, whatever the configured limit.
pub const MAX_POINTS: usize = 254;

#[derive(Clone)]
struct State {
    /// Point ids in increasing order.
    chain: Vec<u8>,
    rank: Vec<u8>,
    /// `maps[2 * v]` is `x_v`, `maps[2 * v + 1]` its inverse, indexed by point id.
    maps: Vec<Vec<u8>>,
    cur: Vec<u8>,
    pos: Vec<usize>,
}

#[derive(Clone, Copy)]
enum Choice {
    Existing(u8),
    /// A new point at this rank.
    New(usize),
}

/// Letters as map indices: `2 * v` for `x_v`, `2 * v + 1` for `x_v^-1`.
type Code = Vec<usize>;

pub(crate) struct Outcome {
    pub diagram: Option<Diagram>,
    pub nodes: u64,
}

struct Search<'a> {
    words: &'a [Code],
    base: u8,
    cap: usize,
    node_limit: u64,
    nodes: u64,
    truncated: bool,
    /// Xorshift state for shuffling candidates; zero keeps them nearest first.
    rng: u64,
}

impl State {
    fn relink(&mut self) {
        for (r, &id) in self.chain.iter().enumerate() {
            self.rank[id as usize] = r as u8;
        }
    }

    fn set(&mut self, m: usize, from: u8, to: u8) {
        self.maps[m][from as usize] = to;
        self.maps[m ^ 1][to as usize] = from;
    }
}

impl Search<'_> {
    /// Candidate images for trace `i`'s next letter, nearest first.
    /// The flag is set when the point budget removed some candidate.
    fn choices(&mut self, st: &State, i: usize) -> (Vec<Choice>, bool) {
        let m = self.words[i][st.pos[i]];
        let (map, back) = (&st.maps[m], &st.maps[m ^ 1]);
        let p = st.cur[i];
        let pr = st.rank[p as usize] as usize;
        let n = st.chain.len();
        let lo = st.chain[..pr]
            .iter()
            .rev()
            .find(|&&id| map[id as usize] != NONE)
            .map_or(-1, |&id| st.rank[map[id as usize] as usize] as isize);
        let hi = st.chain[pr + 1..]
            .iter()
            .find(|&&id| map[id as usize] != NONE)
            .map_or(n as isize, |&id| {
                st.rank[map[id as usize] as usize] as isize
            });
        let can_add = n < self.cap;
        let mut out = Vec::new();
        for r in (lo + 1) as usize..=hi as usize {
            if can_add {
                out.push(Choice::New(r));
            }
            if (r as isize) < hi {
                let id = st.chain[r];
                if back[id as usize] == NONE {
                    out.push(Choice::Existing(id));
                }
            }
        }
        // Nearest to the current point first, in doubled ranks where a new
        // point at rank r sits between ranks r - 1 and r.
        out.sort_by_key(|c| match *c {
            Choice::Existing(id) => (2 * st.rank[id as usize] as isize - 2 * pr as isize).abs(),
            Choice::New(r) => (2 * r as isize - 1 - 2 * pr as isize).abs(),
        });
        if self.rng != 0 {
            for k in (1..out.len()).rev() {
                let x = self.next_random();
                out.swap(k, (x % (k as u64 + 1)) as usize);
            }
        }
        (out, !can_add)
    }

    fn next_random(&mut self) -> u64 {
        let mut x = self.rng;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.rng = x;
        x
    }

    fn apply(&self, st: &mut State, i: usize, c: Choice) {
        let from = st.cur[i];
        let m = self.words[i][st.pos[i]];
        let target = match c {
            Choice::Existing(id) => id,
            Choice::New(r) => {
                let id = st.chain.len() as u8;
                st.chain.insert(r, id);
                st.relink();
                id
            }
        };
        st.set(m, from, target);
        st.cur[i] = target;
        st.pos[i] += 1;
    }

    /// Can trace `i` still end below the base? Every extension of the maps is
    /// monotone, so pushing the current point through the nearest mapped
    /// point at or below it bounds the end of the trace from below.
    fn can_end_below(&self, st: &State, i: usize) -> bool {
        let base = st.rank[self.base as usize] as usize;
        // (rank, strict): the trace is at that point, or strictly above it.
        let (mut r, mut strict) = (st.rank[st.cur[i] as usize] as usize, false);
        for &m in &self.words[i][st.pos[i]..] {
            let map = &st.maps[m];
            if !strict && map[st.chain[r] as usize] != NONE {
                r = st.rank[map[st.chain[r] as usize] as usize] as usize;
                continue;
            }
            let floor = if strict { r + 1 } else { r };
            match st.chain[..floor]
                .iter()
                .rposition(|&id| map[id as usize] != NONE)
            {
                Some(k) => {
                    r = st.rank[map[st.chain[k] as usize] as usize] as usize;
                    strict = true;
                }
                None => return true,
            }
        }
        r < base
    }

    /// Advance every forced step. `false` when some trace can no longer end
    /// below the base.
    fn propagate(&self, st: &mut State) -> bool {
        loop {
            let mut moved = false;
            for (i, w) in self.words.iter().enumerate() {
                while st.pos[i] < w.len() {
                    let next = st.maps[w[st.pos[i]]][st.cur[i] as usize];
                    if next == NONE {
                        break;
                    }
                    st.cur[i] = next;
                    st.pos[i] += 1;
                    moved = true;
                    if st.pos[i] == w.len() && st.rank[next as usize] >= st.rank[self.base as usize]
                    {
                        return false;
                    }
                }
            }
            if !moved {
                return (0..self.words.len()).all(|i| self.can_end_below(st, i));
            }
        }
    }

    fn run(&mut self, st: State) -> Result<Option<State>> {
        // Branch on the pending step with the fewest candidates.
        let mut best: Option<(usize, Vec<Choice>, bool)> = None;
        for i in 0..self.words.len() {
            if st.pos[i] == self.words[i].len() {
                continue;
            }
            let (cs, cut) = self.choices(&st, i);
            if best.as_ref().map_or(true, |(_, b, _)| cs.len() < b.len()) {
                let empty = cs.is_empty();
                best = Some((i, cs, cut));
                if empty {
                    break;
                }
            }
        }
        let Some((i, cs, cut)) = best else {
            return Ok(Some(st));
        };

        self.truncated |= cut;
        for c in cs {
            self.nodes += 1;
            if self.nodes > self.node_limit {
                return Err(Error::Budget {
                    resource: "nodes",
                    limit: self.node_limit,
                });
            }
            let mut next = st.clone();
            self.apply(&mut next, i, c);
            let w = &self.words[i];
            if next.pos[i] == w.len()
                && next.rank[next.cur[i] as usize] >= next.rank[self.base as usize]
            {
                continue;
            }
            if !self.propagate(&mut next) {
                continue;
            }
            if let Some(found) = self.run(next)? {
                return Ok(Some(found));
            }
        }
        Ok(None)
    }
}

/// Restarts may spend this fraction of the node budget.
const RESTART_SHARE: u64 = 8;
const RESTART_UNIT: u64 = 64;
const RESTART_SEED: u64 = 0x2545_F491_4F6C_DD1D;

/// The Luby sequence 1, 1, 2, 1, 1, 2, 4, 1, ... (1-based).
fn luby(mut i: u64) -> u64 {
    loop {
        let mut k = 1;
        while (1 << k) - 1 < i {
            k += 1;
        }
        if (1 << k) - 1 == i {
            return 1 << (k - 1);
        }
        i -= (1 << (k - 1)) - 1;
    }
}

/// Search for a diagram refuting `e <= w_1 \/ ... \/ w_n`. The words must be
/// nonempty. `Err` on exhausting the node budget, or on finding no diagram
/// after some branch was cut by the point budget.
pub(crate) fn find_diagram(words: &[GroupWord], limits: &Limits) -> Result<Outcome> {
    let cap = limits.points.min(MAX_POINTS);
    let mut vars: Vec<Var> = Vec::new();
    for w in words {
        for l in w.letters() {
            if !vars.contains(&l.var) {
                vars.push(l.var.clone());
            }
        }
    }
    let codes: Vec<Code> = words
        .iter()
        .map(|w| {
            w.letters()
                .iter()
                .map(|l| {
                    2 * vars.iter().position(|v| *v == l.var).expect("listed") + l.inverse as usize
                })
                .collect()
        })
        .collect();
    assert!(
        codes.iter().all(|c| !c.is_empty()),
        "empty words are handled by the caller"
    );

    let slots = cap.max(1);
    let root = State {
        chain: alloc::vec![0],
        rank: alloc::vec![0; slots],
        maps: alloc::vec![alloc::vec![NONE; slots]; 2 * vars.len()],
        cur: alloc::vec![0; codes.len()],
        pos: alloc::vec![0; codes.len()],
    };
    if cap == 0 {
        return Err(Error::Budget {
            resource: "points",
            limit: 0,
        });
    }
    let search = |node_limit: u64, rng: u64| Search {
        words: &codes,
        base: 0,
        cap,
        node_limit,
        nodes: 0,
        truncated: false,
        rng,
    };

    let mut nodes = 0;
    let mut found = None;
    let mut settled = false;
    let restart_share = limits.nodes / RESTART_SHARE;
    let mut k = 1;
    while !settled && nodes < restart_share {
        let limit = (RESTART_UNIT * luby(k)).min(restart_share - nodes);
        let mut s = search(limit, RESTART_SEED ^ k.wrapping_mul(0x9E37_79B9_7F4A_7C15));
        match s.run(root.clone()) {
            Ok(Some(st)) => (found, settled) = (Some(st), true),
            // A run that finishes has seen every branch.
            Ok(None) if !s.truncated => settled = true,
            Ok(None) | Err(_) => {}
        }
        nodes += s.nodes.min(limit);
        k += 1;
    }
    if !settled {
        let mut s = search(limits.nodes - nodes, 0);
        let result = s.run(root);
        nodes += s.nodes.min(limits.nodes - nodes);
        match result {
            Err(e) => return Err(e),
            Ok(Some(st)) => found = Some(st),
            Ok(None) if s.truncated => {
                return Err(Error::Budget {
                    resource: "points",
                    limit: cap as u64,
                })
            }
            Ok(None) => {}
        }
    }
    let Some(st) = found else {
        return Ok(Outcome {
            diagram: None,
            nodes,
        });
    };

    let mut maps = BTreeMap::new();
    for (v, var) in vars.iter().enumerate() {
        let mut pairs = Vec::new();
        for &id in &st.chain {
            let img = st.maps[2 * v][id as usize];
            if img != NONE {
                pairs.push((
                    st.rank[id as usize] as usize,
                    st.rank[img as usize] as usize,
                ));
            }
        }
        maps.insert(var.clone(), pairs);
    }
    let base = st.rank[0] as usize;
    Ok(Outcome {
        diagram: Some(Diagram::from_maps(st.chain.len(), base, maps, words)),
        nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::luby;

    #[test]
    fn luby_sequence() {
        let head: alloc::vec::Vec<u64> = (1..=15).map(luby).collect();
        assert_eq!(head, [1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8]);
    }
}
