use std::fmt;

use super::diagram::{Diagram, Passage};
use crate::error::Error;

/// Planar diagram code. `X[a,b,c,d]` lists the four edge labels
/// counterclockwise starting at the incoming under-strand; the under strand
/// runs a→c. A crossing is positive when the over strand runs d→b.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PdCode {
    pub crossings: Vec<[u32; 4]>,
}

impl fmt::Display for PdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("PD[")?;
        for (i, x) in self.crossings.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "X[{},{},{},{}]", x[0], x[1], x[2], x[3])?;
        }
        f.write_str("]")
    }
}

fn parse_err(label: &str, msg: impl Into<String>) -> Error {
    Error::Parse(format!("{label}: {}", msg.into()))
}

impl PdCode {
    /// Accepts `X[..], X[..]`, optionally wrapped in `PD[...]`, or a JSON
    /// array of 4-element arrays. `label` names the input in error messages.
    pub fn parse(text: &str, label: &str) -> Result<PdCode, Error> {
        let t = text.trim();
        if t.starts_with('[') {
            let rows: Vec<Vec<i64>> =
                serde_json::from_str(t).map_err(|e| parse_err(label, format!("bad JSON PD code: {e}")))?;
            let mut crossings = Vec::with_capacity(rows.len());
            for (i, r) in rows.iter().enumerate() {
                if r.len() != 4 {
                    return Err(parse_err(label, format!("crossing {i} has {} labels, expected 4", r.len())));
                }
                let mut x = [0u32; 4];
                for (slot, &v) in x.iter_mut().zip(r) {
                    *slot = u32::try_from(v)
                        .ok()
                        .filter(|&v| v > 0)
                        .ok_or_else(|| parse_err(label, format!("crossing {i}: label {v} is not a positive integer")))?;
                }
                crossings.push(x);
            }
            return Ok(PdCode { crossings });
        }
        let mut body = t;
        if let Some(rest) = body.strip_prefix("PD[") {
            body = rest
                .strip_suffix(']')
                .ok_or_else(|| parse_err(label, "unterminated PD[...]"))?;
        }
        let mut crossings = Vec::new();
        let mut rest = body.trim();
        while !rest.is_empty() {
            let i = crossings.len();
            rest = rest
                .strip_prefix("X[")
                .ok_or_else(|| parse_err(label, format!("crossing {i}: expected X[")))?;
            let close = rest.find(']').ok_or_else(|| parse_err(label, format!("crossing {i}: missing ]")))?;
            let nums: Vec<&str> = rest[..close].split(',').map(str::trim).collect();
            if nums.len() != 4 {
                return Err(parse_err(label, format!("crossing {i} has {} labels, expected 4", nums.len())));
            }
            let mut x = [0u32; 4];
            for (slot, s) in x.iter_mut().zip(&nums) {
                *slot = s
                    .parse::<u32>()
                    .ok()
                    .filter(|&v| v > 0)
                    .ok_or_else(|| parse_err(label, format!("crossing {i}: label {s:?} is not a positive integer")))?;
            }
            crossings.push(x);
            rest = rest[close + 1..].trim_start();
            rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
        }
        if crossings.is_empty() {
            return Err(parse_err(label, "empty PD code"));
        }
        Ok(PdCode { crossings })
    }

    /// Orient each component and build the signed Gauss code. Under strands
    /// fix the orientation; a component that never passes under (necessarily
    /// split from the rest) follows increasing edge labels.
    pub fn to_diagram(&self) -> Result<Diagram, Error> {
        let n = self.crossings.len();
        let max = 2 * n as u32;
        let mut occ: Vec<Vec<(usize, usize)>> = vec![Vec::new(); max as usize + 1];
        for (k, x) in self.crossings.iter().enumerate() {
            for (pos, &l) in x.iter().enumerate() {
                if l == 0 || l > max {
                    return Err(Error::Pd { crossing: k, message: format!("label {l} outside 1..={max}") });
                }
                occ[l as usize].push((k, pos));
            }
        }
        for (l, o) in occ.iter().enumerate().skip(1) {
            if o.len() != 2 {
                let crossing = o.first().map(|c| c.0).unwrap_or(0);
                return Err(Error::Pd { crossing, message: format!("label {l} appears {} times, expected 2", o.len()) });
            }
        }
        let partner = |pos: usize| (pos + 2) % 4;
        let mut visited = vec![false; max as usize + 1];
        let mut components = Vec::new();
        let mut signs = vec![0i8; n];
        for start in 1..=max as usize {
            if visited[start] {
                continue;
            }
            // walk with the head of `start` at its second occurrence
            let mut heads: Vec<(usize, (usize, usize))> = Vec::new();
            let mut e = start;
            let mut head = occ[start][1];
            loop {
                visited[e] = true;
                heads.push((e, head));
                let (k, p) = head;
                let tail = (k, partner(p));
                let next = self.crossings[k][tail.1] as usize;
                let h = if occ[next][0] == tail { occ[next][1] } else { occ[next][0] };
                if next == start && h == occ[start][1] {
                    break;
                }
                e = next;
                head = h;
                if heads.len() > 2 * n {
                    return Err(Error::Pd { crossing: k, message: "edge walk does not close".into() });
                }
            }
            let (mut good, mut bad) = (0usize, 0usize);
            let mut witness = 0;
            for &(_, (k, p)) in &heads {
                match p {
                    0 => good += 1,
                    2 => {
                        bad += 1;
                        witness = k;
                    }
                    _ => {}
                }
            }
            if good > 0 && bad > 0 {
                return Err(Error::Pd {
                    crossing: witness,
                    message: "inconsistent orientation: under strand does not run a→c".into(),
                });
            }
            let reverse = if good + bad == 0 {
                // follow label order; the next edge after `start` should be start+1
                let nxt = heads.get(1).map(|h| h.0).unwrap_or(start);
                nxt != start + 1 && heads.len() > 2
            } else {
                bad > 0
            };
            let heads: Vec<(usize, usize)> = if reverse {
                // reversed: heads become the tails, i.e. partner positions, order reversed
                let mut v: Vec<(usize, usize)> = heads.iter().map(|&(_, (k, p))| (k, partner(p))).collect();
                v.reverse();
                v
            } else {
                heads.iter().map(|&(_, h)| h).collect()
            };
            let mut comp = Vec::with_capacity(heads.len());
            for (k, p) in heads {
                match p {
                    0 => comp.push(Passage { crossing: k, over: false }),
                    1 => {
                        signs[k] = -1;
                        comp.push(Passage { crossing: k, over: true });
                    }
                    3 => {
                        signs[k] = 1;
                        comp.push(Passage { crossing: k, over: true });
                    }
                    _ => {
                        return Err(Error::Pd { crossing: k, message: "under strand enters at c".into() });
                    }
                }
            }
            components.push(comp);
        }
        Diagram::new(signs, components)
    }
}

/// Parse PD text straight to a diagram.
pub fn parse_pd(text: &str, label: &str) -> Result<Diagram, Error> {
    PdCode::parse(text, label)?.to_diagram()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_accepted() {
        let a = PdCode::parse("X[1,2,2,1]", "k").unwrap();
        let b = PdCode::parse("PD[X[1, 2, 2, 1]]", "k").unwrap();
        let c = PdCode::parse("[[1,2,2,1]]", "k").unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a.to_string(), "PD[X[1,2,2,1]]");
        assert_eq!(PdCode::parse(&a.to_string(), "k").unwrap(), a);
    }

    #[test]
    fn errors_name_label_and_crossing() {
        let e = PdCode::parse("X[1,2,2]", "K7").unwrap_err().to_string();
        assert!(e.contains("K7") && e.contains("crossing 0"), "{e}");
        let e = PdCode::parse("X[1,2,2,1], X[a,1,1,1]", "L").unwrap_err().to_string();
        assert!(e.contains("crossing 1"), "{e}");
        match parse_pd("X[1,2,3,1]", "x") {
            Err(Error::Pd { .. }) => {}
            other => panic!("{other:?}"),
        }
        // under strand 1→2 at both crossings of a two-edge loop cannot be oriented
        match parse_pd("X[1,3,2,4], X[1,4,2,3]", "x") {
            Err(Error::Pd { .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn kink_orientation_and_sign() {
        let d = parse_pd("X[1,2,2,1]", "k").unwrap();
        assert_eq!(d.mu(), 1);
        assert_eq!(d.signs(), &[-1]);
        let d = parse_pd("X[1,1,2,2]", "k").unwrap();
        assert_eq!(d.signs(), &[1]);
    }

    #[test]
    fn trefoil_and_hopf() {
        let t = parse_pd("X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]", "3_1").unwrap();
        assert_eq!(t.mu(), 1);
        assert_eq!(t.writhe(), -3);
        let h = parse_pd("X[4,1,3,2], X[2,3,1,4]", "hopf").unwrap();
        assert_eq!(h.mu(), 2);
        assert_eq!(h.linking_number(0, 1).abs(), 1);
    }
}
