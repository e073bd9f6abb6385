//! Finite countermodels for ℓ-group inequations.
//!
//! A diagram is a finite chain of points `0 < 1 < ... < m-1` with a base
//! point `q` and, for every variable, a partial injective order-preserving
//! map on the points. Maps act on the right, so a word is traced from `q`
//! letter by letter. A diagram refutes `e <= w_1 \/ ... \/ w_n` when every
//! trace is defined and ends strictly below `q`; since partial
//! order-preserving injections of a finite chain extend to order
//! automorphisms of the rationals, this refutes the inequation in an
//! ℓ-group.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::terms::{GroupWord, Letter, Var};
use crate::translate::BasicInequation;

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Diagram {
    /// Number of points; point `i` lies below point `i + 1`.
    pub points: usize,
    pub base: usize,
    /// Each map as `(point, image)` pairs sorted by point.
    pub maps: BTreeMap<Var, Vec<(usize, usize)>>,
    /// One point path per joinand, starting at `base`.
    pub traces: Vec<Vec<usize>>,
}

impl Diagram {
    pub fn image(&self, var: &Var, p: usize) -> Option<usize> {
        let pairs = self.maps.get(var)?;
        pairs
            .binary_search_by_key(&p, |&(a, _)| a)
            .ok()
            .map(|i| pairs[i].1)
    }

    pub fn preimage(&self, var: &Var, p: usize) -> Option<usize> {
        self.maps
            .get(var)?
            .iter()
            .find(|&&(_, b)| b == p)
            .map(|&(a, _)| a)
    }

    /// Follow one letter from `p`.
    pub fn step(&self, p: usize, letter: &Letter) -> Option<usize> {
        if letter.inverse {
            self.preimage(&letter.var, p)
        } else {
            self.image(&letter.var, p)
        }
    }

    /// The path of `w` from the base point, if every step is defined.
    pub fn trace(&self, w: &GroupWord) -> Option<Vec<usize>> {
        let mut path = Vec::with_capacity(w.len() + 1);
        let mut p = self.base;
        path.push(p);
        for l in w.letters() {
            p = self.step(p, l)?;
            path.push(p);
        }
        Some(path)
    }

    /// Build a diagram from a map table over points already numbered in
    /// order, tracing `words` to fill in the paths.
    pub(crate) fn from_maps(
        points: usize,
        base: usize,
        maps: BTreeMap<Var, Vec<(usize, usize)>>,
        words: &[GroupWord],
    ) -> Diagram {
        let mut d = Diagram {
            points,
            base,
            maps,
            traces: Vec::new(),
        };
        for pairs in d.maps.values_mut() {
            pairs.sort_unstable();
            pairs.dedup();
        }
        d.maps.retain(|_, pairs| !pairs.is_empty());
        d.traces = words
            .iter()
            .map(|w| d.trace(w).expect("diagram covers every word"))
            .collect();
        d
    }
}

fn check_map(var: &Var, pairs: &[(usize, usize)], points: usize) -> Result<(), String> {
    for &(a, b) in pairs {
        if a >= points || b >= points {
            return Err(format!("map {var} mentions a point outside 0..{points}"));
        }
    }
    for w in pairs.windows(2) {
        let ((a1, b1), (a2, b2)) = (w[0], w[1]);
        if a1 == a2 {
            return Err(format!("map {var} is not functional at point {a1}"));
        }
        if a1 > a2 {
            return Err(format!("map {var} is not sorted by point"));
        }
        if b1 == b2 {
            return Err(format!("map {var} is not injective"));
        }
        if b1 > b2 {
            return Err(format!("map {var} is not order-preserving at {a1} < {a2}"));
        }
    }
    Ok(())
}

/// Check every diagram condition against `eps`; `Err` carries the first
/// failure found.
pub fn verify_diagram(d: &Diagram, eps: &BasicInequation) -> Result<(), String> {
    if d.base >= d.points {
        return Err(format!(
            "base {} is not one of the {} points",
            d.base, d.points
        ));
    }
    for (var, pairs) in &d.maps {
        check_map(var, pairs, d.points)?;
    }
    let words = eps.normalized_joinands();
    let bound = 1 + words.iter().map(GroupWord::len).sum::<usize>();
    if d.points > bound {
        return Err(format!("{} points exceed the bound {bound}", d.points));
    }
    if d.traces.len() != words.len() {
        return Err(format!(
            "{} traces for {} joinands",
            d.traces.len(),
            words.len()
        ));
    }
    for (i, (w, recorded)) in words.iter().zip(&d.traces).enumerate() {
        let path = d
            .trace(w)
            .ok_or_else(|| format!("trace {i} of `{w}` is undefined"))?;
        if &path != recorded {
            return Err(format!("trace {i} does not follow `{w}`"));
        }
        let end = *path.last().expect("paths start at the base");
        if end >= d.base {
            return Err(format!(
                "trace {i} of `{w}` ends at {end}, not below the base {}",
                d.base
            ));
        }
    }
    Ok(())
}
