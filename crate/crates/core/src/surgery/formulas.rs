//! Closed forms for special families. Each one is checked against
//! `lescop_lambda` in the tests below and in the cli verification battery.

use super::{theta, ComponentSubset, ConwayData, SurgeryPresentation, ThetaOverrides};
use crate::arith::{dedekind_sum_fast, Rational, Slope};
use crate::error::Error;

fn require_len(pres: &SurgeryPresentation, n: usize, what: &str) -> Result<(), Error> {
    if pres.len() != n {
        return Err(Error::Precondition(format!("{what} needs {n} components, got {}", pres.len())));
    }
    Ok(())
}

fn require_split(pres: &SurgeryPresentation, what: &str) -> Result<(), Error> {
    if !pres.is_algebraically_split() {
        return Err(Error::Precondition(format!("{what} needs an algebraically split link")));
    }
    Ok(())
}

fn require_zero_slope(pres: &SurgeryPresentation, i: usize, what: &str) -> Result<(), Error> {
    if pres.slope(i).p() != 0 {
        return Err(Error::Precondition(format!("{what} needs slope 0/1 on component {i}, got {}", pres.slope(i))));
    }
    Ok(())
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(n)
}

/// (-1)^{b_-} for a diagonal linking matrix: one factor per negative slope.
fn diagonal_sign(pres: &SurgeryPresentation) -> i64 {
    if pres.slopes().iter().filter(|s| s.p() < 0).count() % 2 == 0 {
        1
    } else {
        -1
    }
}

fn dedekind_total(pres: &SurgeryPresentation) -> Result<Rational, Error> {
    pres.slopes().iter().map(|s| dedekind_sum_fast(s.p(), s.q())).sum()
}

/// The surgery formula regrouped around a component K_0 that has zero
/// linking number with every other component.
///
/// Writes E(L) as p_0/q_0 plus the block A_N on the remaining components and
/// B_{N-J} for A_N with the linking numbers into J added on the diagonal.
pub fn lemma21_lambda(pres: &SurgeryPresentation, cd: &ConwayData, ov: &ThetaOverrides) -> Result<Rational, Error> {
    if !pres.is_unlinked_component(0) {
        return Err(Error::Precondition("component 0 must have zero linking number with every other component".into()));
    }
    let s0 = pres.slope(0);
    if s0.p() == 0 {
        return Err(Error::Precondition("slope on component 0 must be nonzero".into()));
    }
    let n = pres.len();
    let e = pres.linking_matrix();
    let inertia = e.inertia();
    let eps = inertia.parity_sign();
    let inner: Vec<usize> = (1..n).collect();
    let a = e.principal(&inner);
    let r0 = s0.value();
    let q_all = pres.q_product();
    let q_inner = Rational::from_integer(pres.slopes()[1..].iter().map(|s| s.q()).product());

    // det B_{N-J} is the bordered determinant of the full matrix restricted
    // to N, which is what `bordered` on A_N gives after renumbering.
    let local = |j: &ComponentSubset| -> Vec<usize> { j.indices().iter().map(|i| i - 1).collect() };
    let inner_subsets: Vec<ComponentSubset> = ComponentSubset::all_nonempty(n - 1)
        .into_iter()
        .map(|j| ComponentSubset::new(j.indices().iter().map(|i| i + 1).collect()))
        .collect();

    let mut conway = Rational::zero();
    let with_zero = cd.a1hat(pres, &ComponentSubset::single(0))?;
    conway += a.det() * with_zero;
    for j in &inner_subsets {
        let b = a.bordered(&local(j)).det();
        let v = cd.a1hat(pres, j)?;
        conway += &r0 * &b * v;
        let v0 = cd.a1hat(pres, &j.with(0))?;
        conway += b * v0;
    }

    let mut theta_block = -(a.det() * s0.theta());
    for j in &inner_subsets {
        let th = theta(pres, j, ov)?;
        let keep: Vec<usize> = inner.iter().map(|i| i - 1).filter(|i| !local(j).contains(i)).collect();
        let term = &r0 * a.principal(&keep).det() * th;
        if j.len() % 2 == 0 {
            theta_block += term;
        } else {
            theta_block -= term;
        }
    }

    let dedekind = Rational::from_integer(inertia.signature()) / 8 + dedekind_total(pres)? / 2;
    let third = q_inner * a.det().abs() * s0.p().abs() * dedekind;
    Ok((conway + theta_block / 24) * q_all * eps + third)
}

/// lambda of p/q-surgery on a knot with second Conway coefficient `a2`.
///
/// For p > 0 this is q a2 - (p/2) s(q, p). Negative p goes through the
/// mirror: p/q on K is -(|p|/q on the mirror of K), and a2 is mirror
/// invariant.
pub fn boyer_lines_lambda(a2: i64, slope: Slope) -> Result<Rational, Error> {
    let (p, q) = (slope.p(), slope.q());
    if p == 0 {
        return Err(Error::Precondition("slope 0/1 is outside the knot surgery formula".into()));
    }
    let positive = rat(q * a2) - dedekind_sum_fast(q, p.abs())? * p.abs() / 2;
    Ok(if p > 0 { positive } else { -positive })
}

/// b_- and sigma of a symmetric 2x2 matrix read off from det and trace.
/// The zero matrix has no negative eigenvalues and signature 0.
pub fn two_by_two_inertia(det: &Rational, trace: &Rational) -> (usize, i64) {
    match (det.signum(), trace.signum()) {
        (1, 1) => (0, 2),
        (1, _) => (2, -2),
        (-1, _) => (1, 0),
        (_, 1) => (0, 1),
        (_, -1) => (1, -1),
        _ => (0, 0),
    }
}

/// Closed form for a two-component link with linking number l.
pub fn two_component_lambda(pres: &SurgeryPresentation, cd: &ConwayData) -> Result<Rational, Error> {
    require_len(pres, 2, "the two-component formula")?;
    let (s0, s1) = (pres.slope(0), pres.slope(1));
    let l = pres.lk(0, 1);
    let (r0, r1) = (s0.value(), s1.value());
    let lr = rat(l);
    let det = &r0 * &r1 - &lr * &lr;
    let trace = &r0 + &r1;
    let (b_minus, sigma) = two_by_two_inertia(&det, &trace);
    let eps = if b_minus % 2 == 0 { 1 } else { -1 };
    let qq = rat(s0.q() * s1.q());

    let a0 = cd.a1hat(pres, &ComponentSubset::single(0))?;
    let a1 = cd.a1hat(pres, &ComponentSubset::single(1))?;
    let a01 = cd.a1hat(pres, &ComponentSubset::full(2))?;
    let conway = (&r1 + &lr) * a0 + (&r0 + &lr) * a1 + rat(a01);

    let theta01 = lr.pow(3) * 2 + lr.pow(2) * &trace * 2 - &lr * 2;
    let theta_block = &r1 * s0.theta() + &r0 * s1.theta() - theta01;

    let h = rat(s0.p() * s1.p() - l * l * s0.q() * s1.q()).abs();
    let dedekind = rat(sigma) / 8 + dedekind_sum_fast(s0.p(), s0.q())? / 2 + dedekind_sum_fast(s1.p(), s1.q())? / 2;
    Ok((conway * &qq - theta_block * qq / 24) * eps + h * dedekind)
}

/// Closed form for an algebraically split three-component link.
pub fn three_component_split_lambda(pres: &SurgeryPresentation, cd: &ConwayData) -> Result<Rational, Error> {
    require_len(pres, 3, "the three-component formula")?;
    require_split(pres, "the three-component formula")?;
    let (p, q): (Vec<i64>, Vec<i64>) = pres.slopes().iter().map(|s| (s.p(), s.q())).unzip();
    let a = |j: &[usize]| cd.a1hat(pres, &ComponentSubset::new(j.to_vec()));
    let eps = diagonal_sign(pres);

    let conway = rat(q[0] * p[1] * p[2] * a(&[0])?)
        + rat(p[0] * q[1] * p[2] * a(&[1])?)
        + rat(p[0] * p[1] * q[2] * a(&[2])?)
        + rat(q[0] * q[1] * p[2] * a(&[0, 1])?)
        + rat(q[0] * p[1] * q[2] * a(&[0, 2])?)
        + rat(p[0] * q[1] * q[2] * a(&[1, 2])?)
        + rat(q[0] * q[1] * q[2] * a(&[0, 1, 2])?);
    let t = |i: usize| rat(p[i] * p[i] + q[i] * q[i] + 1) / q[i];
    let theta_block = -(t(0) * (p[1] * p[2])) - t(1) * (p[0] * p[2]) - t(2) * (p[0] * p[1]);

    let sigma: i64 = p.iter().map(|x| x.signum()).sum();
    let dedekind = rat(sigma) / 8 + dedekind_total(pres)? / 2;
    Ok((conway + theta_block / 24) * eps + rat(p[0] * p[1] * p[2]).abs() * dedekind)
}

/// Split three-component link with slopes (p0/q0, p1/q1, 0/1).
pub fn m0_lambda(pres: &SurgeryPresentation, cd: &ConwayData) -> Result<Rational, Error> {
    require_len(pres, 3, "the M_0 formula")?;
    require_split(pres, "the M_0 formula")?;
    require_zero_slope(pres, 2, "the M_0 formula")?;
    let (s0, s1) = (pres.slope(0), pres.slope(1));
    let (p0, q0, p1, q1) = (s0.p(), s0.q(), s1.p(), s1.q());
    let a = |j: &[usize]| cd.a1hat(pres, &ComponentSubset::new(j.to_vec()));
    let v = rat(p0 * p1 * a(&[2])?) + rat(q0 * p1 * a(&[0, 2])?) + rat(p0 * q1 * a(&[1, 2])?) + rat(q0 * q1 * a(&[0, 1, 2])?)
        - Rational::new(p0 * p1, 12);
    Ok(v * diagonal_sign(pres))
}

/// Split three-component link with slopes (p0/q0, 0/1, 0/1).
pub fn m00_lambda(pres: &SurgeryPresentation, cd: &ConwayData) -> Result<Rational, Error> {
    require_len(pres, 3, "the M_00 formula")?;
    require_split(pres, "the M_00 formula")?;
    require_zero_slope(pres, 1, "the M_00 formula")?;
    require_zero_slope(pres, 2, "the M_00 formula")?;
    let s0 = pres.slope(0);
    let a = |j: &[usize]| cd.a1hat(pres, &ComponentSubset::new(j.to_vec()));
    let v = rat(s0.p() * a(&[1, 2])?) + rat(s0.q() * a(&[0, 1, 2])?);
    Ok(v * diagonal_sign(pres))
}

/// Casson-Walker invariant of surgery on a two-component link, from the
/// classical Conway coefficients a_2(K_1), a_2(K_2) and a_3(L).
pub fn ito_lambda_walker(pres: &SurgeryPresentation, a2_1: i64, a2_2: i64, a3: i64) -> Result<Rational, Error> {
    require_len(pres, 2, "the two-component Casson-Walker formula")?;
    let (s1, s2) = (pres.slope(0), pres.slope(1));
    let (p1, q1, p2, q2) = (s1.p(), s1.q(), s2.p(), s2.q());
    let l = rat(pres.lk(0, 1));
    let (r1, r2) = (s1.value(), s2.value());
    let d = &r1 * &r2 - &l * &l;
    if d.is_zero() {
        return Err(Error::ZeroOrderHomology);
    }
    let sigma = pres.linking_matrix().inertia().signature();
    let l2 = l.pow(2);

    let mut rhs = &r2 * a2_1 - &r2 / 24 - Rational::new(p2, 24 * q2 * q1 * q1) + &r2 * &l2 / 24;
    rhs += &r1 * a2_2 - &r1 / 24 - Rational::new(p1, 24 * q1 * q2 * q2) + &r1 * &l2 / 24;
    rhs += rat(-a3) + &l * (a2_1 + a2_2) + (l.pow(3) - &l) / 12;
    let lens = dedekind_sum_fast(p1, q1)? / 2 - &r1 / 24 + dedekind_sum_fast(p2, q2)? / 2 - &r2 / 24;
    rhs += &d * lens;

    Ok((rhs / &d + rat(sigma) / 8) * 2)
}
