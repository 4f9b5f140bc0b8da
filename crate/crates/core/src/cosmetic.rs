//! Cosmetic-surgery obstructions from the Casson-Walker-Lescop invariant.
//!
//! Everything here is an equation in lambda: two surgeries can only be
//! orientation-preservingly homeomorphic if their lambda values agree, so a
//! nonzero difference rules a pair out. The converse is never claimed.
//!
//! The families with a split component K_0 take the *inner* presentation on
//! K_1..K_n (indices 0..n-1 there) together with Conway data for the whole
//! link, in which K_0 has index 0 and inner component i has index i + 1.

use num_bigint::BigInt;
use serde::Serialize;

use crate::arith::{Rational, Slope};
use crate::error::Error;
use crate::linalg::SymRatMatrix;
use crate::surgery::{ComponentSubset, ConwayData, SurgeryPresentation};

/// c2 x^2 + c1 x + c0.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct QuadraticPoly {
    pub c2: Rational,
    pub c1: Rational,
    pub c0: Rational,
}

impl QuadraticPoly {
    pub fn new(c2: Rational, c1: Rational, c0: Rational) -> QuadraticPoly {
        QuadraticPoly { c2, c1, c0 }
    }

    pub fn is_zero(&self) -> bool {
        self.c2.is_zero() && self.c1.is_zero() && self.c0.is_zero()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        (&self.c2 * x + &self.c1) * x + &self.c0
    }

    pub fn eval_int(&self, x: i64) -> Rational {
        self.eval(&Rational::from_integer(x))
    }

    /// (-c2, c1, -c0): the polynomial governing the opposite sign of surgery.
    pub fn mirrored(&self) -> QuadraticPoly {
        QuadraticPoly::new(-&self.c2, self.c1.clone(), -&self.c0)
    }

    /// Positive integer roots, exactly. `None` for the zero polynomial.
    pub fn positive_integer_roots(&self) -> Option<Vec<u64>> {
        if self.is_zero() {
            return None;
        }
        let mut roots: Vec<Rational> = Vec::new();
        if self.c2.is_zero() {
            if !self.c1.is_zero() {
                roots.push(-&self.c0 / &self.c1);
            }
        } else {
            let disc = &self.c1 * &self.c1 - &self.c2 * &self.c0 * 4;
            if let Some(sq) = rational_sqrt(&disc) {
                let two_a = &self.c2 * 2;
                roots.push((-&self.c1 + &sq) / &two_a);
                roots.push((-&self.c1 - sq) / two_a);
            }
        }
        let mut out: Vec<u64> = roots
            .into_iter()
            .filter(|r| r.is_integer() && r.is_positive())
            .filter_map(|r| r.to_i64())
            .map(|r| r as u64)
            .collect();
        out.sort_unstable();
        out.dedup();
        Some(out)
    }
}

fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    // sqrt(n/d) = sqrt(n d) / d
    let nd: BigInt = x.numer() * x.denom();
    let r = nd.sqrt();
    if &r * &r == nd {
        Some(Rational::from_bigints(r, x.denom().clone()))
    } else {
        None
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Admissible {
    /// Sorted positive integers for which the governing difference vanishes.
    Values(Vec<u64>),
    /// The governing difference vanishes identically; no bound follows.
    Unconstrained,
}

impl Admissible {
    pub fn values(&self) -> Option<&[u64]> {
        match self {
            Admissible::Values(v) => Some(v),
            Admissible::Unconstrained => None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    /// Every compared pair has different lambda.
    NoPurelyCosmetic,
    /// Only the listed parameters survive the obstruction.
    AtMost(usize),
    /// The difference vanishes identically.
    Inconclusive,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Outcome::NoPurelyCosmetic => f.write_str("no purely cosmetic surgeries"),
            Outcome::AtMost(k) => write!(f, "at most {k} candidate slopes"),
            Outcome::Inconclusive => f.write_str("inconclusive"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Witness {
    pub label: String,
    pub value: Rational,
}

fn witness(label: impl Into<String>, value: Rational) -> Witness {
    Witness { label: label.into(), value }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CosmeticVerdict {
    pub admissible: Admissible,
    pub polys: Vec<(String, QuadraticPoly)>,
    pub witnesses: Vec<Witness>,
    pub outcome: Outcome,
}

impl CosmeticVerdict {
    fn from_admissible(admissible: Admissible, polys: Vec<(String, QuadraticPoly)>, witnesses: Vec<Witness>) -> CosmeticVerdict {
        let outcome = match &admissible {
            Admissible::Unconstrained => Outcome::Inconclusive,
            Admissible::Values(v) if v.is_empty() => Outcome::NoPurelyCosmetic,
            Admissible::Values(v) => Outcome::AtMost(v.len()),
        };
        CosmeticVerdict { admissible, polys, witnesses, outcome }
    }

    /// Verdict for a linear form F: nonzero F obstructs every compared pair.
    fn from_form(form: Rational, witnesses: Vec<Witness>) -> CosmeticVerdict {
        let (admissible, outcome) = if form.is_zero() {
            (Admissible::Unconstrained, Outcome::Inconclusive)
        } else {
            (Admissible::Values(Vec::new()), Outcome::NoPurelyCosmetic)
        };
        let mut all = vec![witness("form", form)];
        all.extend(witnesses);
        CosmeticVerdict { admissible, polys: Vec::new(), witnesses: all, outcome }
    }
}

/// Union of the positive integer roots; unconstrained if any polynomial is zero.
pub fn admissible_union(polys: &[QuadraticPoly]) -> Admissible {
    let mut all = Vec::new();
    for p in polys {
        match p.positive_integer_roots() {
            None => return Admissible::Unconstrained,
            Some(v) => all.extend(v),
        }
    }
    all.sort_unstable();
    all.dedup();
    Admissible::Values(all)
}

/// The full link: K_0 (with `slope0`, unlinked from the rest) followed by
/// the inner presentation.
pub fn with_split_component(inner: &SurgeryPresentation, slope0: Slope) -> SurgeryPresentation {
    let n = inner.len() + 1;
    let mut linking = vec![vec![0; n]; n];
    for i in 0..inner.len() {
        for j in 0..inner.len() {
            linking[i + 1][j + 1] = inner.lk(i, j);
        }
    }
    let mut slopes = vec![slope0];
    slopes.extend_from_slice(inner.slopes());
    SurgeryPresentation::new(linking, slopes).expect("inner presentation is valid")
}

struct SplitData {
    a: SymRatMatrix,
    det_a: Rational,
    eps: i64,
    q_inner: Rational,
    /// Sum over J' in N (empty included) of det B_{N-J'} a1hat(L_{J' + 0}).
    s: Rational,
}

fn split_data(inner: &SurgeryPresentation, cd: &ConwayData) -> Result<SplitData, Error> {
    let full = with_split_component(inner, Slope::integral(1));
    let a = inner.linking_matrix();
    let det_a = a.det();
    let eps = a.inertia().parity_sign();
    let mut s = a.det() * cd.a1hat(&full, &ComponentSubset::single(0))?;
    for j in ComponentSubset::all_nonempty(inner.len()) {
        let shifted = ComponentSubset::new(j.indices().iter().map(|i| i + 1).collect()).with(0);
        let v = cd.a1hat(&full, &shifted)?;
        if v != 0 {
            s += a.bordered(j.indices()).det() * v;
        }
    }
    Ok(SplitData { a, det_a, eps, q_inner: inner.q_product(), s })
}

/// lambda(p/1, ...) - lambda(-p/1, ...) as a polynomial in p.
pub fn thm21_difference_poly(inner: &SurgeryPresentation, cd: &ConwayData) -> Result<QuadraticPoly, Error> {
    let d = split_data(inner, cd)?;
    if d.det_a.is_zero() {
        return Err(Error::Precondition("det A_N = 0: surgery on the inner link is not a rational homology sphere".into()));
    }
    let eq = &d.q_inner * d.eps;
    let c2 = -(&eq * &d.det_a) / 12;
    let c1 = &d.q_inner * d.det_a.abs() / 4;
    let c0 = &eq * &d.s * 2 - &eq * &d.det_a / 6;
    Ok(QuadraticPoly::new(c2, c1, c0))
}

/// Positive integers p for which p/1 and -p/1 surgery on K_0 could agree.
pub fn thm21_verdict(inner: &SurgeryPresentation, cd: &ConwayData) -> Result<CosmeticVerdict, Error> {
    let poly = thm21_difference_poly(inner, cd)?;
    let admissible = admissible_union(std::slice::from_ref(&poly));
    Ok(CosmeticVerdict::from_admissible(admissible, vec![("lambda(+p) - lambda(-p)".into(), poly)], Vec::new()))
}

/// The coefficients (c2, c1, c0) for +-1/q surgery on K_0, as printed
/// alongside the knot-complement bound.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Thm22Coefficients {
    pub c2: Rational,
    pub c1: Rational,
    pub c0: Rational,
    /// Sum over i of det A_{N-{i}} (p_i^2 + q_i^2 + 1) / q_i^2.
    pub theta_sum: Rational,
    /// (-1)^{b_-} det A_N - |det A_N|.
    pub sign_defect: Rational,
}

impl Thm22Coefficients {
    pub fn plus(&self) -> QuadraticPoly {
        QuadraticPoly::new(self.c2.clone(), self.c1.clone(), self.c0.clone())
    }

    pub fn minus(&self) -> QuadraticPoly {
        self.plus().mirrored()
    }

    /// At least one of the two nonvanishing conditions holds.
    pub fn constrained(&self) -> bool {
        !self.theta_sum.is_zero() || !self.sign_defect.is_zero()
    }
}

pub fn thm22_coefficients(inner: &SurgeryPresentation, cd: &ConwayData) -> Result<Thm22Coefficients, Error> {
    let d = split_data(inner, cd)?;
    let n = inner.len();
    let mut theta_sum = Rational::zero();
    for i in 0..n {
        let keep: Vec<usize> = (0..n).filter(|&k| k != i).collect();
        theta_sum += d.a.principal(&keep).det() * inner.slope(i).theta();
    }
    let sign_defect = &d.det_a * d.eps - d.det_a.abs();
    let c2 = &d.s * d.eps - &sign_defect / 24;
    let c1 = -(&theta_sum * d.eps) / 24;
    let c0 = -(&sign_defect / 12);
    Ok(Thm22Coefficients { c2, c1, c0, theta_sum, sign_defect })
}

/// Quadratics whose values at q, times (prod q_i) / q, are exactly
/// lambda(M_+) - lambda(M) and lambda(M_-) - lambda(M) under the surgery
/// formula. They share c2 and c0 with `thm22_coefficients`; the linear
/// coefficient is zero because the singleton correction terms of K_1..K_n
/// appear identically in lambda(M_+-) and lambda(M).
pub fn thm22_exact_quadratics(inner: &SurgeryPresentation, cd: &ConwayData) -> Result<(QuadraticPoly, QuadraticPoly), Error> {
    let c = thm22_coefficients(inner, cd)?;
    let plus = QuadraticPoly::new(c.c2, Rational::zero(), c.c0);
    let minus = plus.mirrored();
    Ok((plus, minus))
}

/// Positive integers q for which +-1/q surgery on K_0 could give back the
/// manifold of the inner link.
pub fn thm22_admissible_q(inner: &SurgeryPresentation, cd: &ConwayData) -> Result<CosmeticVerdict, Error> {
    let c = thm22_coefficients(inner, cd)?;
    let (plus, minus) = thm22_exact_quadratics(inner, cd)?;
    let admissible = if c.constrained() { admissible_union(&[plus.clone(), minus.clone()]) } else { Admissible::Unconstrained };
    let witnesses = vec![witness("theta_sum", c.theta_sum.clone()), witness("sign_defect", c.sign_defect.clone())];
    let polys = vec![
        ("published +".into(), c.plus()),
        ("published -".into(), c.minus()),
        ("lambda(M+) - lambda(M)".into(), plus),
        ("lambda(M-) - lambda(M)".into(), minus),
    ];
    Ok(CosmeticVerdict::from_admissible(admissible, polys, witnesses))
}

/// Number of knots with homeomorphic exterior, given k admissible slopes.
pub fn complement_bound(k: usize) -> usize {
    k
}

fn pair_witnesses(form: &Rational, q0: i64, q0p: i64, same_sign: bool) -> Vec<Witness> {
    let pair = if same_sign {
        witness(format!("lambda(p0/{q0}) - lambda(p0/{q0p}), p0 > 0"), form * (q0 - q0p))
    } else {
        witness(format!("lambda(p0/{q0}) - lambda(-p0/{q0p}), p0 > 0"), form * (q0 + q0p))
    };
    vec![
        pair,
        witness(format!("lambda(+1/{q0}) - lambda(M)"), form * q0),
        witness(format!("lambda(-1/{q0}) - lambda(M)"), -(form * q0)),
    ]
}

/// K_0 in 0-surgery on K_1, with lk(K_0, K_1) = 0.
pub fn thm3_verdict(a1hat_l: i64, q0: i64, q0p: i64, same_sign: bool) -> CosmeticVerdict {
    let form = Rational::from_integer(a1hat_l);
    let w = pair_witnesses(&form, q0, q0p, same_sign);
    CosmeticVerdict::from_form(form, w)
}

/// K_0 in (p1/q1, 0)-surgery on K_1 u K_2, algebraically split.
pub fn thm4_verdict(p1: i64, q1: i64, a1hat_02: i64, a1hat_012: i64, q0: i64, q0p: i64, same_sign: bool) -> Result<CosmeticVerdict, Error> {
    if p1 == 0 {
        return Err(Error::Precondition("the slope on K_1 must be nonzero".into()));
    }
    let form = Rational::from_integer(p1 * a1hat_02 + q1 * a1hat_012);
    // (-1)^{b_-} picks up sign(p1) from the K_1 entry of the linking matrix
    let w = pair_witnesses(&(&form * p1.signum()), q0, q0p, same_sign);
    Ok(CosmeticVerdict::from_form(form, w))
}

/// K_0 in (0, 0)-surgery on K_1 u K_2, algebraically split.
pub fn thm5_verdict(a1hat_012: i64, q0: i64, q0p: i64, same_sign: bool) -> CosmeticVerdict {
    let form = Rational::from_integer(a1hat_012);
    let w = pair_witnesses(&form, q0, q0p, same_sign);
    CosmeticVerdict::from_form(form, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surgery::{lescop_lambda, ThetaOverrides};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn s(p: i64, q: i64) -> Slope {
        Slope::new(p, q).unwrap()
    }

    fn random_slope(rng: &mut ChaCha8Rng, nonzero: bool) -> Slope {
        loop {
            let p = rng.gen_range(-12..=12);
            if nonzero && p == 0 {
                continue;
            }
            if let Ok(sl) = Slope::new(p, rng.gen_range(1..=8)) {
                return sl;
            }
        }
    }

    fn random_data(rng: &mut ChaCha8Rng, n: usize) -> ConwayData {
        let mut cd = ConwayData::new();
        for j in ComponentSubset::all_nonempty(n) {
            cd.insert(j, rng.gen_range(-4..=4));
        }
        cd
    }

    fn random_inner(rng: &mut ChaCha8Rng, n: usize, split: bool) -> SurgeryPresentation {
        // theta of three linked inner components is not computed
        let split = split || n >= 3;
        let mut linking = vec![vec![0; n]; n];
        if !split {
            for i in 0..n {
                for j in 0..i {
                    let l = rng.gen_range(-2..=2);
                    linking[i][j] = l;
                    linking[j][i] = l;
                }
            }
        }
        SurgeryPresentation::new(linking, (0..n).map(|_| random_slope(rng, false)).collect()).unwrap()
    }

    fn lambda(pres: &SurgeryPresentation, cd: &ConwayData) -> Rational {
        lescop_lambda(pres, cd, &ThetaOverrides::new()).unwrap()
    }

    #[test]
    fn roots() {
        assert_eq!(QuadraticPoly::new(r(1), r(-3), r(2)).positive_integer_roots(), Some(vec![1, 2]));
        assert_eq!(QuadraticPoly::new(r(1), r(0), r(1)).positive_integer_roots(), Some(vec![]));
        assert_eq!(QuadraticPoly::new(r(0), r(0), r(0)).positive_integer_roots(), None);
        assert_eq!(QuadraticPoly::new(r(1), r(-4), r(4)).positive_integer_roots(), Some(vec![2]));
        assert_eq!(QuadraticPoly::new(r(0), r(2), r(-6)).positive_integer_roots(), Some(vec![3]));
        assert_eq!(QuadraticPoly::new(r(0), r(0), r(5)).positive_integer_roots(), Some(vec![]));
        assert_eq!(QuadraticPoly::new(r(2), r(1), r(-1)).positive_integer_roots(), Some(vec![]));
        assert_eq!(QuadraticPoly::new(Rational::new(1, 4), r(-1), r(0)).positive_integer_roots(), Some(vec![4]));
        // irrational roots 1 +- sqrt 2
        assert_eq!(QuadraticPoly::new(r(1), r(-2), r(-1)).positive_integer_roots(), Some(vec![]));
    }

    #[test]
    fn thm21_hand_expansion() {
        // inner: unknot with slope 1/1; all a1hat zero
        let inner = SurgeryPresentation::knot(s(1, 1));
        let cd = ConwayData::new().with([0], 0).with([1], 0).with([0, 1], 0);
        let poly = thm21_difference_poly(&inner, &cd).unwrap();
        assert_eq!(poly, QuadraticPoly::new(Rational::new(-1, 12), Rational::new(1, 4), Rational::new(-1, 6)));
        // p^2 - 3p + 2 = 0
        assert_eq!(thm21_verdict(&inner, &cd).unwrap().admissible, Admissible::Values(vec![1, 2]));
        assert!(poly.c2.is_negative() && poly.c1.is_positive());
    }

    #[test]
    fn thm21_requires_rational_homology_sphere() {
        let inner = SurgeryPresentation::knot(s(0, 1));
        assert!(thm21_difference_poly(&inner, &ConwayData::new().with([0], 0).with([1], 0).with([0, 1], 0)).is_err());
    }

    #[test]
    fn thm21_matches_engine() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let mut done = 0;
        while done < 60 {
            let n = rng.gen_range(1..=3);
            let split = rng.gen_bool(0.5);
            let inner = random_inner(&mut rng, n, split);
            let cd = random_data(&mut rng, n + 1);
            let poly = match thm21_difference_poly(&inner, &cd) {
                Ok(p) => p,
                Err(Error::Precondition(_)) => continue,
                Err(e) => panic!("{e}"),
            };
            for p in 1..=10 {
                let plus = with_split_component(&inner, Slope::integral(p));
                let minus = with_split_component(&inner, Slope::integral(-p));
                assert_eq!(poly.eval_int(p), lambda(&plus, &cd) - lambda(&minus, &cd));
            }
            let v = thm21_verdict(&inner, &cd).unwrap();
            assert!(v.admissible.values().unwrap().len() <= 2);
            done += 1;
        }
    }

    #[test]
    fn thm22_exact_quadratics_match_engine() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for _ in 0..60 {
            let n = rng.gen_range(1..=3);
            let split = rng.gen_bool(0.5);
            let inner = random_inner(&mut rng, n, split);
            let cd = random_data(&mut rng, n + 1);
            let (plus, minus) = thm22_exact_quadratics(&inner, &cd).unwrap();
            let inner_data = cd.restrict(&ComponentSubset::new((1..=n).collect()));
            let base = lambda(&inner, &inner_data);
            let qprod = inner.q_product();
            for q in 1..=10 {
                let mp = lambda(&with_split_component(&inner, s(1, q)), &cd);
                let mm = lambda(&with_split_component(&inner, s(-1, q)), &cd);
                assert_eq!(&qprod * plus.eval_int(q) / q, mp - &base);
                assert_eq!(&qprod * minus.eval_int(q) / q, mm - &base);
            }
        }
    }

    #[test]
    fn published_linear_coefficient_disagrees_on_an_unlink() {
        // K_0 split unknot, K_1 unknot with slope 3/2: +-1/q surgery on K_0
        // changes nothing, so every difference is zero.
        let inner = SurgeryPresentation::knot(s(3, 2));
        let cd = ConwayData::new().with([0], 0).with([1], 0).with([0, 1], 0);
        let base = lambda(&inner, &ConwayData::from_knots(&[0]));
        for q in 1..=5 {
            assert_eq!(lambda(&with_split_component(&inner, s(1, q)), &cd), base);
        }
        let c = thm22_coefficients(&inner, &cd).unwrap();
        assert_eq!(c.c1, -(s(3, 2).theta() / 24));
        assert!(!c.c1.is_zero());
        let (plus, _) = thm22_exact_quadratics(&inner, &cd).unwrap();
        assert!(plus.is_zero());
        assert_eq!(thm22_admissible_q(&inner, &cd).unwrap().admissible, Admissible::Unconstrained);
    }

    #[test]
    fn thm22_special_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..50 {
            // positive slopes, split
            let n = rng.gen_range(1..=3);
            let slopes: Vec<Slope> = (0..n).map(|_| s(rng.gen_range(1..=9), 1)).collect();
            let inner = SurgeryPresentation::split(slopes);
            let cd = random_data(&mut rng, n + 1);
            let c = thm22_coefficients(&inner, &cd).unwrap();
            assert!(c.c0.is_zero());
            assert!(!c.c1.is_zero());

            // n = 1, any sign: second condition vanishes
            let one = SurgeryPresentation::knot(random_slope(&mut rng, false));
            let c = thm22_coefficients(&one, &random_data(&mut rng, 2)).unwrap();
            assert!(c.sign_defect.is_zero());
        }
        // n >= 2 with a 0/1 slope, others nonzero of mixed signs
        let inner = SurgeryPresentation::split(vec![s(0, 1), s(-3, 2), s(5, 1)]);
        let c = thm22_coefficients(&inner, &random_data(&mut rng, 4)).unwrap();
        assert!(c.c0.is_zero());
        assert_eq!(s(0, 1).theta(), r(2));
    }

    #[test]
    fn thm22_exact_verdicts() {
        // With det A_N != 0 its sign is (-1)^{b_-}, so the constant term
        // vanishes and lambda(M_+) - lambda(M) = (prod q_i) c2 q: either
        // every q is obstructed or none is.
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        let (mut unconstrained, mut obstructed) = (0, 0);
        for _ in 0..300 {
            let n = rng.gen_range(1..=2);
            let inner = random_inner(&mut rng, n, false);
            let cd = random_data(&mut rng, n + 1);
            let c = thm22_coefficients(&inner, &cd).unwrap();
            assert!(c.sign_defect.is_zero() && c.c0.is_zero());
            let v = thm22_admissible_q(&inner, &cd).unwrap();
            match v.admissible {
                Admissible::Unconstrained => {
                    assert!(c.c2.is_zero() || !c.constrained());
                    unconstrained += 1;
                }
                Admissible::Values(values) => {
                    assert!(values.is_empty());
                    let inner_data = cd.restrict(&ComponentSubset::new((1..=n).collect()));
                    let base = lambda(&inner, &inner_data);
                    let mp = lambda(&with_split_component(&inner, s(1, 3)), &cd);
                    assert_ne!(mp, base);
                    obstructed += 1;
                }
            }
        }
        assert!(unconstrained > 0 && obstructed > 0);
    }

    #[test]
    fn complement_bound_is_identity() {
        assert_eq!(complement_bound(0), 0);
        assert_eq!(complement_bound(2), 2);
        assert_eq!(complement_bound(4), 4);
    }

    fn named<'a>(v: &'a CosmeticVerdict, prefix: &str) -> &'a Rational {
        &v.witnesses.iter().find(|w| w.label.starts_with(prefix)).unwrap().value
    }

    #[test]
    fn thm3_witnesses_match_engine() {
        let cd_for = |a| ConwayData::from_knots(&[0, 2]).with([0, 1], a);
        for a in [-2, -1, 1, 3] {
            let cd = cd_for(a);
            for (q0, q0p) in [(1, 2), (3, 5), (7, 2)] {
                for same in [true, false] {
                    let v = thm3_verdict(a, q0, q0p, same);
                    assert_eq!(v.outcome, Outcome::NoPurelyCosmetic);
                    let p0 = 11;
                    let n = SurgeryPresentation::two_component(s(p0, q0), s(0, 1), 0);
                    let np = SurgeryPresentation::two_component(s(if same { p0 } else { -p0 }, q0p), s(0, 1), 0);
                    assert_eq!(named(&v, "lambda(p0/"), &(lambda(&n, &cd) - lambda(&np, &cd)));
                    let m = SurgeryPresentation::knot(s(0, 1));
                    let base = lambda(&m, &ConwayData::from_knots(&[2]));
                    let plus = SurgeryPresentation::two_component(s(1, q0), s(0, 1), 0);
                    let minus = SurgeryPresentation::two_component(s(-1, q0), s(0, 1), 0);
                    assert_eq!(named(&v, "lambda(+1/"), &(lambda(&plus, &cd) - &base));
                    assert_eq!(named(&v, "lambda(-1/"), &(lambda(&minus, &cd) - &base));
                }
            }
        }
        assert_eq!(thm3_verdict(0, 1, 2, true).outcome, Outcome::Inconclusive);
    }

    #[test]
    fn thm4_and_thm5_witnesses_match_engine() {
        let mut rng = ChaCha8Rng::seed_from_u64(35);
        for _ in 0..40 {
            let mut cd = random_data(&mut rng, 3);
            let (p1, q1) = loop {
                let sl = random_slope(&mut rng, true);
                break (sl.p(), sl.q());
            };
            let a02 = cd.get_raw(&ComponentSubset::from([0, 2])).unwrap();
            let a012 = cd.get_raw(&ComponentSubset::from([0, 1, 2])).unwrap();
            let q0 = rng.gen_range(1..=6);
            let v = thm4_verdict(p1, q1, a02, a012, q0, q0 + 1, true).unwrap();
            let m = SurgeryPresentation::split(vec![s(p1, q1), s(0, 1)]);
            let base = lambda(&m, &cd.restrict(&ComponentSubset::from([1, 2])));
            let plus = SurgeryPresentation::split(vec![s(1, q0), s(p1, q1), s(0, 1)]);
            assert_eq!(named(&v, "lambda(+1/"), &(lambda(&plus, &cd) - &base));
            let n = SurgeryPresentation::split(vec![s(7, q0 * 7 + 1), s(p1, q1), s(0, 1)]);
            let np = SurgeryPresentation::split(vec![s(-7, q0 * 7 + 2), s(p1, q1), s(0, 1)]);
            let w = thm4_verdict(p1, q1, a02, a012, q0 * 7 + 1, q0 * 7 + 2, false).unwrap();
            assert_eq!(named(&w, "lambda(p0/"), &(lambda(&n, &cd) - lambda(&np, &cd)));

            let v5 = thm5_verdict(a012, q0, q0 + 1, true);
            let m00 = SurgeryPresentation::split(vec![s(0, 1), s(0, 1)]);
            let base = lambda(&m00, &cd.restrict(&ComponentSubset::from([1, 2])));
            let minus = SurgeryPresentation::split(vec![s(-1, q0), s(0, 1), s(0, 1)]);
            assert_eq!(named(&v5, "lambda(-1/"), &(lambda(&minus, &cd) - &base));
            assert_eq!(v5.outcome == Outcome::NoPurelyCosmetic, a012 != 0);

            // zeroing the data never turns an inconclusive verdict into an obstruction
            cd.insert(ComponentSubset::from([0, 1, 2]), 0);
            assert_eq!(thm5_verdict(0, q0, q0 + 1, true).outcome, Outcome::Inconclusive);
        }
        assert!(thm4_verdict(0, 1, 1, 1, 1, 2, true).is_err());
    }
}
