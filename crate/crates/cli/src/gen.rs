//! Seeded random instances shared by `verify` and the acceptance suite.
//! Every case draws from its own ChaCha stream, so results do not depend on
//! how cases are spread over threads.

use cwl_core::surgery::{ComponentSubset, ConwayData, SurgeryPresentation, ThetaOverrides};
use cwl_core::{Rational, Slope};
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Generator for case `case` of check `check` under `seed`.
pub fn case_rng(seed: u64, check: u64, case: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed ^ check.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    r.set_stream(case);
    r
}

/// Coprime (p, q) with 1 <= p, q <= max.
pub fn coprime_positive(rng: &mut impl Rng, max: i64) -> (i64, i64) {
    loop {
        let (p, q) = (rng.gen_range(1..=max), rng.gen_range(1..=max));
        if p.gcd(&q) == 1 {
            return (p, q);
        }
    }
}

/// p/q with |p| <= pmax, 1 <= q <= qmax.
pub fn slope(rng: &mut impl Rng, pmax: i64, qmax: i64, allow_zero: bool) -> Slope {
    loop {
        let p = rng.gen_range(-pmax..=pmax);
        if p == 0 && !allow_zero {
            continue;
        }
        if let Ok(s) = Slope::new(p, rng.gen_range(1..=qmax)) {
            return s;
        }
    }
}

pub fn linking(rng: &mut impl Rng, n: usize, lmax: i64) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..i {
            let l = rng.gen_range(-lmax..=lmax);
            m[i][j] = l;
            m[j][i] = l;
        }
    }
    m
}

pub fn conway_data(rng: &mut impl Rng, n: usize, amax: i64) -> ConwayData {
    let mut cd = ConwayData::new();
    for j in ComponentSubset::all_nonempty(n) {
        cd.insert(j, rng.gen_range(-amax..=amax));
    }
    cd
}

/// Overrides for every sublink of three or more components.
pub fn theta_overrides(rng: &mut impl Rng, n: usize) -> ThetaOverrides {
    let mut t = ThetaOverrides::new();
    for j in ComponentSubset::all_nonempty(n).into_iter().filter(|j| j.len() >= 3) {
        let v = Rational::new(rng.gen_range(-20..=20), rng.gen_range(1..=6));
        t.insert(j, v).expect("size >= 3");
    }
    t
}

pub fn presentation(rng: &mut impl Rng, n: usize, lmax: i64, pmax: i64, qmax: i64) -> SurgeryPresentation {
    let slopes = (0..n).map(|_| slope(rng, pmax, qmax, true)).collect();
    SurgeryPresentation::new(linking(rng, n, lmax), slopes).expect("generated presentation is valid")
}

pub fn split(rng: &mut impl Rng, n: usize, pmax: i64, qmax: i64, allow_zero: bool) -> SurgeryPresentation {
    SurgeryPresentation::split((0..n).map(|_| slope(rng, pmax, qmax, allow_zero)).collect())
}

/// Inner link for the K_0-split theorems: linked when it has two
/// components, split otherwise (the correction term of three mutually
/// linked components is not computed), det A_N != 0.
pub fn inner_link(rng: &mut impl Rng) -> SurgeryPresentation {
    loop {
        let n = rng.gen_range(1..=3);
        let lk = if n == 2 { 2 } else { 0 };
        let slopes = (0..n).map(|_| slope(rng, 12, 8, true)).collect();
        let pres = SurgeryPresentation::new(linking(rng, n, lk), slopes).expect("valid");
        if !pres.linking_matrix().det().is_zero() {
            return pres;
        }
    }
}
