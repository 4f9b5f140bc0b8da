use dashmap::DashMap;

use super::diagram::{Diagram, Passage};
use super::poly::IntPoly;
use crate::error::Error;

pub const DEFAULT_CROSSING_BOUND: usize = 16;

#[derive(Clone, Copy, Debug)]
pub struct SkeinOptions {
    pub memo: bool,
    pub parallel: bool,
    pub crossing_bound: usize,
}

impl Default for SkeinOptions {
    fn default() -> SkeinOptions {
        SkeinOptions { memo: true, parallel: false, crossing_bound: DEFAULT_CROSSING_BOUND }
    }
}

/// Conway polynomial by the descending-diagram skein recursion:
/// walk the components from their base points; at the first crossing met
/// under, ∇(D) = ∇(D switched) + sign·z·∇(D smoothed). A diagram with no
/// such crossing is an unlink.
///
/// The memo is keyed on a relabelling-invariant form of the signed Gauss
/// code and can be shared across calls.
pub struct SkeinEngine {
    opts: SkeinOptions,
    memo: DashMap<Vec<u32>, IntPoly>,
}

impl SkeinEngine {
    pub fn new(opts: SkeinOptions) -> SkeinEngine {
        SkeinEngine { opts, memo: DashMap::new() }
    }

    pub fn options(&self) -> SkeinOptions {
        self.opts
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn conway(&self, d: &Diagram) -> Result<IntPoly, Error> {
        if d.crossing_count() > self.opts.crossing_bound {
            return Err(Error::CrossingBound { found: d.crossing_count(), bound: self.opts.crossing_bound });
        }
        Ok(self.eval(d.clone()))
    }

    fn eval(&self, d: Diagram) -> IntPoly {
        let d = remove_curls(d);
        if d.mu() > 1 && !connected(&d) {
            return IntPoly::zero();
        }
        let Some(c) = first_descending_violation(&d) else {
            return if d.mu() == 1 { IntPoly::one() } else { IntPoly::zero() };
        };
        let key = if self.opts.memo { Some(canonical_key(&d)) } else { None };
        if let Some(k) = &key {
            if let Some(v) = self.memo.get(k) {
                return v.clone();
            }
        }
        let sign = d.sign(c) as i64;
        let switched = d.switch(c);
        let smoothed = d.smooth(c);
        let (a, b) = if self.opts.parallel && d.crossing_count() >= 6 {
            rayon::join(|| self.eval(switched), || self.eval(smoothed))
        } else {
            (self.eval(switched), self.eval(smoothed))
        };
        let out = &a + &b.shift().scale(sign);
        if let Some(k) = key {
            self.memo.insert(k, out.clone());
        }
        out
    }
}

impl Default for SkeinEngine {
    fn default() -> SkeinEngine {
        SkeinEngine::new(SkeinOptions::default())
    }
}

/// Remove crossings whose two passages are adjacent on a component (a curl
/// bounding a region free of other strands); repeat until none are left.
fn remove_curls(mut d: Diagram) -> Diagram {
    loop {
        let mut dead = Vec::new();
        for comp in d.components() {
            let n = comp.len();
            if n < 2 {
                continue;
            }
            for i in 0..n {
                let c = comp[i].crossing;
                if c == comp[(i + 1) % n].crossing && !dead.contains(&c) {
                    dead.push(c);
                }
            }
        }
        if dead.is_empty() {
            return d;
        }
        d = d.without_crossings(&dead);
    }
}

fn connected(d: &Diagram) -> bool {
    let n = d.mu();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (o, u) in d.crossing_components() {
        let (a, b) = (find(&mut parent, o), find(&mut parent, u));
        parent[a] = b;
    }
    let root = find(&mut parent, 0);
    (1..n).all(|i| find(&mut parent, i) == root)
}

fn first_descending_violation(d: &Diagram) -> Option<usize> {
    let mut seen = vec![false; d.crossing_count()];
    for p in d.components().iter().flatten() {
        if !seen[p.crossing] {
            if !p.over {
                return Some(p.crossing);
            }
            seen[p.crossing] = true;
        }
    }
    None
}

const SEP: u32 = u32::MAX;

/// Lexicographically least encoding over all choices of first component and
/// base point; later components are taken in order of their least already
/// numbered crossing. Assumes a connected diagram; otherwise the encoding is
/// still faithful, just not canonical.
pub(crate) fn canonical_key(d: &Diagram) -> Vec<u32> {
    let mut best: Option<Vec<u32>> = None;
    for (ci, comp) in d.components().iter().enumerate() {
        for start in 0..comp.len().max(1) {
            let enc = encode_from(d, ci, start);
            if best.as_ref().is_none_or(|b| enc < *b) {
                best = Some(enc);
            }
        }
    }
    best.unwrap_or_default()
}

fn encode_from(d: &Diagram, first: usize, start: usize) -> Vec<u32> {
    let comps = d.components();
    let mut label = vec![u32::MAX; d.crossing_count()];
    let mut next = 0u32;
    let mut used = vec![false; comps.len()];
    let mut out = Vec::with_capacity(2 * d.crossing_count() + comps.len());
    let mut emit = |comp: &[Passage], s: usize, out: &mut Vec<u32>, label: &mut Vec<u32>| {
        let n = comp.len();
        for i in 0..n {
            let p = comp[(s + i) % n];
            if label[p.crossing] == u32::MAX {
                label[p.crossing] = next;
                next += 1;
            }
            let sign = (d.sign(p.crossing) > 0) as u32;
            out.push(label[p.crossing] * 4 + (p.over as u32) * 2 + sign);
        }
        out.push(SEP);
    };
    emit(&comps[first], start, &mut out, &mut label);
    used[first] = true;
    for _ in 1..comps.len() {
        let mut pick: Option<(u32, usize, usize)> = None;
        for (ci, comp) in comps.iter().enumerate() {
            if used[ci] {
                continue;
            }
            for (pi, p) in comp.iter().enumerate() {
                let l = label[p.crossing];
                if l != u32::MAX && pick.is_none_or(|(b, _, _)| l < b) {
                    pick = Some((l, ci, pi));
                }
            }
        }
        let (ci, pi) = match pick {
            Some((_, ci, pi)) => (ci, pi),
            None => (used.iter().position(|u| !u).unwrap(), 0),
        };
        emit(&comps[ci], pi, &mut out, &mut label);
        used[ci] = true;
    }
    out
}
