use super::pd::PdCode;
use crate::error::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Closure {
    /// position x on top joined to position x at the bottom
    Braid,
    /// neighbouring pairs (0,1), (2,3), … capped at both ends
    Plat,
}

#[derive(Clone, Copy)]
enum Attach {
    Port(usize, usize),
    Point(usize),
}

// crossing ports, counterclockwise
const BL: usize = 0;
const BR: usize = 1;
const TR: usize = 2;
const TL: usize = 3;

/// PD code of a braid word closed up. Strands run upward; generator `i`
/// (1-based, sign ±) crosses positions i and i+1, and `+i` is a positive
/// crossing when both strands point up. Edges are numbered consecutively
/// along each component.
pub fn braid_pd(strands: usize, word: &[i32], closure: Closure) -> PdCode {
    assert!(!word.is_empty(), "empty braid word");
    assert!(closure == Closure::Braid || strands % 2 == 0, "plat closure needs an even strand count");
    let levels = word.len();
    let pt = |t: usize, x: usize| t * strands + x;
    let mut att: Vec<Vec<Attach>> = vec![Vec::new(); (levels + 1) * strands];
    let link = |att: &mut Vec<Vec<Attach>>, a: usize, b: usize| {
        att[a].push(Attach::Point(b));
        att[b].push(Attach::Point(a));
    };
    for (t, &g) in word.iter().enumerate() {
        let i = g.unsigned_abs() as usize - 1;
        assert!(g != 0 && i + 1 < strands, "generator {g} out of range");
        att[pt(t, i)].push(Attach::Port(t, BL));
        att[pt(t, i + 1)].push(Attach::Port(t, BR));
        att[pt(t + 1, i)].push(Attach::Port(t, TL));
        att[pt(t + 1, i + 1)].push(Attach::Port(t, TR));
        for x in (0..strands).filter(|&x| x != i && x != i + 1) {
            link(&mut att, pt(t, x), pt(t + 1, x));
        }
    }
    match closure {
        Closure::Braid => {
            for x in 0..strands {
                link(&mut att, pt(levels, x), pt(0, x));
            }
        }
        Closure::Plat => {
            for x in (0..strands).step_by(2) {
                link(&mut att, pt(levels, x), pt(levels, x + 1));
                link(&mut att, pt(0, x), pt(0, x + 1));
            }
        }
    }
    let port_point = |k: usize, q: usize| match q {
        BL => pt(k, word[k].unsigned_abs() as usize - 1),
        BR => pt(k, word[k].unsigned_abs() as usize),
        TL => pt(k + 1, word[k].unsigned_abs() as usize - 1),
        _ => pt(k + 1, word[k].unsigned_abs() as usize),
    };
    // the port at the other end of the edge leaving (k, q)
    let follow = |k: usize, q: usize| -> (usize, usize) {
        let mut prev: Option<usize> = None;
        let mut here = port_point(k, q);
        let mut from_port = Some((k, q));
        loop {
            let next = att[here]
                .iter()
                .find(|a| match a {
                    Attach::Port(k2, q2) => Some((*k2, *q2)) != from_port,
                    Attach::Point(p) => Some(*p) != prev,
                })
                .copied()
                .expect("dangling strand");
            match next {
                Attach::Port(k2, q2) => return (k2, q2),
                Attach::Point(p) => {
                    prev = Some(here);
                    from_port = None;
                    here = p;
                }
            }
        }
    };
    let partner = |q: usize| (q + 2) % 4;
    let mut labels = vec![[0u32; 4]; levels];
    let mut head_port = vec![[false; 4]; levels];
    let mut used = vec![[false; 4]; levels];
    let mut label = 0u32;
    for k in 0..levels {
        for q in [TR, TL] {
            if used[k][q] {
                continue;
            }
            let (mut ek, mut eq) = (k, q);
            loop {
                label += 1;
                let (hk, hq) = follow(ek, eq);
                used[ek][eq] = true;
                used[hk][hq] = true;
                labels[ek][eq] = label;
                labels[hk][hq] = label;
                head_port[hk][hq] = true;
                ek = hk;
                eq = partner(hq);
                if (ek, eq) == (k, q) {
                    break;
                }
            }
        }
    }
    assert!(used.iter().flatten().all(|&u| u), "a component avoids every crossing");
    let crossings = (0..levels)
        .map(|k| {
            let under = if word[k] > 0 { [BR, TL] } else { [BL, TR] };
            let q_in = if head_port[k][under[0]] { under[0] } else { under[1] };
            [0, 1, 2, 3].map(|j| labels[k][(q_in + j) % 4])
        })
        .collect();
    PdCode { crossings }
}

/// Trivial diagram of μ circles, each drawn with one curl.
pub fn unlink_pd(mu: usize) -> PdCode {
    PdCode { crossings: (0..mu as u32).map(|i| [2 * i + 1, 2 * i + 2, 2 * i + 2, 2 * i + 1]).collect() }
}

/// The twisted Whitehead family as a 4-plat: one component's two
/// antiparallel strands pass through a box of `m` full twists. `m = 0` is
/// the unlink and ∇ = m z³.
pub fn twisted_whitehead_pd(m: i64) -> PdCode {
    let mut word = vec![2, -1];
    let g = if m > 0 { 2 } else { -2 };
    word.extend(std::iter::repeat_n(g, 2 * m.unsigned_abs() as usize));
    word.extend([3, -2]);
    braid_pd(4, &word, Closure::Plat)
}

/// Names accepted by `builtin`, with whether they take a parameter.
pub const BUILTIN_NAMES: &[(&str, &str)] = &[
    ("unknot", ""),
    ("unlink", "number of components (default 2)"),
    ("hopf", "linking sign ±1 (default 1)"),
    ("trefoil", ""),
    ("whitehead", ""),
    ("L_m", "number of full twists m (default 1)"),
    ("borromean", ""),
];

/// PD code of a named link.
pub fn builtin_pd(name: &str, param: Option<i64>) -> Result<PdCode, Error> {
    let key = name.to_ascii_lowercase();
    Ok(match key.as_str() {
        "unknot" => unlink_pd(1),
        "unlink" => {
            let mu = param.unwrap_or(2);
            if !(1..=16).contains(&mu) {
                return Err(Error::Precondition(format!("unlink needs 1..=16 components, got {mu}")));
            }
            unlink_pd(mu as usize)
        }
        "hopf" => match param.unwrap_or(1) {
            1 => braid_pd(2, &[1, 1], Closure::Braid),
            -1 => braid_pd(2, &[-1, -1], Closure::Braid),
            s => return Err(Error::Precondition(format!("hopf sign must be ±1, got {s}"))),
        },
        "trefoil" => braid_pd(2, &[1, 1, 1], Closure::Braid),
        "whitehead" => braid_pd(3, &[1, -2, 1, -2, -2], Closure::Braid),
        "l_m" | "lm" | "l" => twisted_whitehead_pd(param.unwrap_or(1)),
        "borromean" => braid_pd(3, &[1, -2, 1, -2, 1, -2], Closure::Braid),
        _ => return Err(Error::UnknownLink(name.to_string())),
    })
}
