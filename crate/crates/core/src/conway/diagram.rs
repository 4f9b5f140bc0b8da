use crate::error::Error;

/// One pass of a component through a crossing.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Passage {
    pub crossing: usize,
    pub over: bool,
}

/// An oriented link diagram as a signed Gauss code: each component is the
/// cyclic sequence of crossings it passes through, each crossing is passed
/// exactly twice (once over, once under) and carries a sign.
///
/// Every diagram here comes from a planar one, and the operations below
/// (switching, oriented smoothing, removing a curl, deleting components)
/// keep it planar.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Diagram {
    signs: Vec<i8>,
    components: Vec<Vec<Passage>>,
}

impl Diagram {
    /// Checks that every crossing is passed once over and once under.
    pub fn new(signs: Vec<i8>, components: Vec<Vec<Passage>>) -> Result<Diagram, Error> {
        if components.is_empty() {
            return Err(Error::Pd { crossing: 0, message: "a link needs at least one component".into() });
        }
        let mut seen = vec![(0u8, 0u8); signs.len()];
        for p in components.iter().flatten() {
            let slot = seen.get_mut(p.crossing).ok_or_else(|| Error::Pd {
                crossing: p.crossing,
                message: format!("crossing index out of range (diagram has {})", signs.len()),
            })?;
            if p.over {
                slot.0 += 1;
            } else {
                slot.1 += 1;
            }
        }
        for (k, &(o, u)) in seen.iter().enumerate() {
            if o != 1 || u != 1 {
                return Err(Error::Pd { crossing: k, message: format!("passed {o} times over and {u} times under") });
            }
            if signs[k] != 1 && signs[k] != -1 {
                return Err(Error::Pd { crossing: k, message: "sign must be +1 or -1".into() });
            }
        }
        Ok(Diagram { signs, components })
    }

    pub(crate) fn from_parts(signs: Vec<i8>, components: Vec<Vec<Passage>>) -> Diagram {
        Diagram { signs, components }
    }

    /// Number of components.
    pub fn mu(&self) -> usize {
        self.components.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.signs.len()
    }

    pub fn sign(&self, crossing: usize) -> i8 {
        self.signs[crossing]
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn components(&self) -> &[Vec<Passage>] {
        &self.components
    }

    pub fn writhe(&self) -> i64 {
        self.signs.iter().map(|&s| s as i64).sum()
    }

    /// Component index of the (over, under) passages of each crossing.
    pub fn crossing_components(&self) -> Vec<(usize, usize)> {
        let mut out = vec![(usize::MAX, usize::MAX); self.signs.len()];
        for (ci, comp) in self.components.iter().enumerate() {
            for p in comp {
                if p.over {
                    out[p.crossing].0 = ci;
                } else {
                    out[p.crossing].1 = ci;
                }
            }
        }
        out
    }

    /// Half the signed count of crossings between components i and j.
    pub fn linking_number(&self, i: usize, j: usize) -> i64 {
        let total: i64 = self
            .crossing_components()
            .iter()
            .zip(&self.signs)
            .filter(|((o, u), _)| (*o == i && *u == j) || (*o == j && *u == i))
            .map(|(_, &s)| s as i64)
            .sum();
        total / 2
    }

    pub fn linking_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.mu();
        (0..n).map(|i| (0..n).map(|j| if i == j { 0 } else { self.linking_number(i, j) }).collect()).collect()
    }

    /// All crossings switched: the diagram of the mirror image.
    pub fn mirror(&self) -> Diagram {
        Diagram {
            signs: self.signs.iter().map(|s| -s).collect(),
            components: self
                .components
                .iter()
                .map(|c| c.iter().map(|p| Passage { crossing: p.crossing, over: !p.over }).collect())
                .collect(),
        }
    }

    /// The crossing changed from over to under.
    pub fn switch(&self, crossing: usize) -> Diagram {
        let mut out = self.clone();
        out.signs[crossing] = -out.signs[crossing];
        for comp in &mut out.components {
            for p in comp.iter_mut().filter(|p| p.crossing == crossing) {
                p.over = !p.over;
            }
        }
        out
    }

    /// Oriented smoothing of a crossing. Two passages on one component split
    /// it in two; passages on different components merge them.
    pub fn smooth(&self, crossing: usize) -> Diagram {
        let mut hits = Vec::new();
        for (ci, comp) in self.components.iter().enumerate() {
            for (pi, p) in comp.iter().enumerate() {
                if p.crossing == crossing {
                    hits.push((ci, pi));
                }
            }
        }
        let ((c1, i1), (c2, i2)) = (hits[0], hits[1]);
        let mut components: Vec<Vec<Passage>> = Vec::with_capacity(self.components.len() + 1);
        if c1 == c2 {
            let comp = &self.components[c1];
            let a: Vec<Passage> = comp[i1 + 1..i2].to_vec();
            let b: Vec<Passage> = comp[i2 + 1..].iter().chain(&comp[..i1]).copied().collect();
            for (ci, c) in self.components.iter().enumerate() {
                if ci == c1 {
                    components.push(a.clone());
                    components.push(b.clone());
                } else {
                    components.push(c.clone());
                }
            }
        } else {
            let rot = |c: usize, i: usize| -> Vec<Passage> {
                let comp = &self.components[c];
                comp[i + 1..].iter().chain(&comp[..i]).copied().collect()
            };
            let mut merged = rot(c1, i1);
            merged.extend(rot(c2, i2));
            for (ci, c) in self.components.iter().enumerate() {
                if ci == c1 {
                    components.push(merged.clone());
                } else if ci != c2 {
                    components.push(c.clone());
                }
            }
        }
        Diagram::from_parts(self.signs.clone(), components).without_crossings(&[crossing])
    }

    /// Drop crossings that no longer appear and renumber the rest densely.
    /// Callers must remove both passages of each listed crossing themselves
    /// or list crossings whose passages are already gone.
    pub(crate) fn without_crossings(mut self, dead: &[usize]) -> Diagram {
        for comp in &mut self.components {
            comp.retain(|p| !dead.contains(&p.crossing));
        }
        let mut map = vec![usize::MAX; self.signs.len()];
        let mut signs = Vec::with_capacity(self.signs.len());
        for (k, &s) in self.signs.iter().enumerate() {
            if !dead.contains(&k) {
                map[k] = signs.len();
                signs.push(s);
            }
        }
        for comp in &mut self.components {
            for p in comp.iter_mut() {
                p.crossing = map[p.crossing];
            }
        }
        self.signs = signs;
        self
    }

    /// The sublink on the listed components, in the listed order.
    pub fn sublink(&self, keep: &[usize]) -> Diagram {
        let owners = self.crossing_components();
        let dead: Vec<usize> = owners
            .iter()
            .enumerate()
            .filter(|(_, (o, u))| !keep.contains(o) || !keep.contains(u))
            .map(|(k, _)| k)
            .collect();
        let components = keep.iter().map(|&i| self.components[i].clone()).collect();
        Diagram::from_parts(self.signs.clone(), components).without_crossings(&dead)
    }

    /// Insert a curl with the given sign into component `comp` before
    /// position `at`; `over_first` says whether the curl is entered over.
    pub fn add_curl(&self, comp: usize, at: usize, sign: i8, over_first: bool) -> Diagram {
        let mut out = self.clone();
        let k = out.signs.len();
        out.signs.push(sign);
        let c = &mut out.components[comp];
        c.insert(at, Passage { crossing: k, over: !over_first });
        c.insert(at, Passage { crossing: k, over: over_first });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(crossing: usize, over: bool) -> Passage {
        Passage { crossing, over }
    }

    fn hopf() -> Diagram {
        Diagram::new(vec![1, 1], vec![vec![p(0, true), p(1, false)], vec![p(0, false), p(1, true)]]).unwrap()
    }

    #[test]
    fn validation() {
        assert!(Diagram::new(vec![1], vec![vec![p(0, true), p(0, true)]]).is_err());
        assert!(Diagram::new(vec![1], vec![vec![p(0, true)]]).is_err());
        assert!(Diagram::new(vec![2], vec![vec![p(0, true), p(0, false)]]).is_err());
        assert!(Diagram::new(vec![], vec![]).is_err());
        assert!(Diagram::new(vec![], vec![vec![]]).is_ok());
    }

    #[test]
    fn hopf_operations() {
        let h = hopf();
        assert_eq!(h.linking_number(0, 1), 1);
        assert_eq!(h.mirror().linking_number(0, 1), -1);
        let s = h.smooth(0);
        assert_eq!(s.mu(), 1);
        assert_eq!(s.crossing_count(), 1);
        assert_eq!(s.components()[0].len(), 2);
        let sw = h.switch(1);
        assert_eq!(sw.linking_number(0, 1), 0);
        assert_eq!(h.sublink(&[1]).crossing_count(), 0);
    }

    #[test]
    fn smoothing_a_self_crossing_splits() {
        // unknot with one curl, smoothing the curl gives two circles
        let d = Diagram::new(vec![1], vec![vec![p(0, true), p(0, false)]]).unwrap();
        let s = d.smooth(0);
        assert_eq!(s.mu(), 2);
        assert!(s.components().iter().all(|c| c.is_empty()));
    }
}
