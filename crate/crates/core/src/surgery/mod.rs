//! Rational surgery presentations and the general surgery formula for the
//! Casson-Walker-Lescop invariant.

mod formulas;

pub use formulas::*;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::arith::{dedekind_sum_fast, Rational, Slope};
use crate::error::Error;
use crate::linalg::{Inertia, SymRatMatrix};

/// A framed link in S^3 given by its pairwise linking numbers and one
/// rational slope per component.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SurgeryPresentation {
    linking: Vec<Vec<i64>>,
    slopes: Vec<Slope>,
}

impl SurgeryPresentation {
    pub fn new(linking: Vec<Vec<i64>>, slopes: Vec<Slope>) -> Result<SurgeryPresentation, Error> {
        let n = slopes.len();
        if n == 0 {
            return Err(Error::InvalidPresentation("a presentation needs at least one component".into()));
        }
        if linking.len() != n || linking.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidPresentation(format!("linking matrix must be {n}x{n}")));
        }
        for i in 0..n {
            if linking[i][i] != 0 {
                return Err(Error::InvalidPresentation(format!("linking matrix diagonal entry {i} is nonzero")));
            }
            for j in 0..i {
                if linking[i][j] != linking[j][i] {
                    return Err(Error::InvalidPresentation(format!("linking matrix is not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(SurgeryPresentation { linking, slopes })
    }

    /// A presentation on an algebraically split link.
    pub fn split(slopes: Vec<Slope>) -> SurgeryPresentation {
        let n = slopes.len();
        SurgeryPresentation { linking: vec![vec![0; n]; n], slopes }
    }

    pub fn knot(slope: Slope) -> SurgeryPresentation {
        SurgeryPresentation::split(vec![slope])
    }

    pub fn two_component(s0: Slope, s1: Slope, lk: i64) -> SurgeryPresentation {
        SurgeryPresentation { linking: vec![vec![0, lk], vec![lk, 0]], slopes: vec![s0, s1] }
    }

    pub fn len(&self) -> usize {
        self.slopes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slopes.is_empty()
    }

    pub fn lk(&self, i: usize, j: usize) -> i64 {
        self.linking[i][j]
    }

    pub fn linking(&self) -> &[Vec<i64>] {
        &self.linking
    }

    pub fn slope(&self, i: usize) -> Slope {
        self.slopes[i]
    }

    pub fn slopes(&self) -> &[Slope] {
        &self.slopes
    }

    pub fn with_slope(&self, i: usize, slope: Slope) -> SurgeryPresentation {
        let mut out = self.clone();
        out.slopes[i] = slope;
        out
    }

    /// Product of the slope denominators.
    pub fn q_product(&self) -> Rational {
        Rational::from_integer(self.slopes.iter().map(|s| s.q()).product())
    }

    /// True when component `i` has zero linking number with every other one.
    pub fn is_unlinked_component(&self, i: usize) -> bool {
        (0..self.len()).all(|k| k == i || self.linking[i][k] == 0)
    }

    pub fn is_algebraically_split(&self) -> bool {
        self.linking.iter().flatten().all(|&l| l == 0)
    }

    /// The sub-presentation on the components of `subset`, renumbered in order.
    pub fn restrict(&self, subset: &ComponentSubset) -> SurgeryPresentation {
        let idx = subset.indices();
        SurgeryPresentation {
            linking: idx.iter().map(|&i| idx.iter().map(|&j| self.linking[i][j]).collect()).collect(),
            slopes: idx.iter().map(|&i| self.slopes[i]).collect(),
        }
    }

    /// E(L): slopes on the diagonal, linking numbers off it.
    pub fn linking_matrix(&self) -> SymRatMatrix {
        let n = self.len();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { self.slopes[i].value() } else { Rational::from_integer(self.linking[i][j]) })
                    .collect()
            })
            .collect();
        SymRatMatrix::from_rows(rows).expect("linking matrix is symmetric by construction")
    }

    /// E(L_{N-J}; J).
    pub fn bordered_diag_matrix(&self, subset: &ComponentSubset) -> SymRatMatrix {
        self.linking_matrix().bordered(subset.indices())
    }

    /// E(L_{N-J}).
    pub fn complement_matrix(&self, subset: &ComponentSubset) -> SymRatMatrix {
        self.linking_matrix().principal(&subset.complement(self.len()).0)
    }

    pub fn validate_subset(&self, subset: &ComponentSubset) -> Result<(), Error> {
        match subset.indices().last() {
            Some(&i) if i >= self.len() => Err(Error::InvalidPresentation(format!(
                "sublink {{{subset}}} refers to component {i} of a {}-component link",
                self.len()
            ))),
            _ => Ok(()),
        }
    }
}

/// A sorted set of distinct 0-based component indices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct ComponentSubset(Vec<usize>);

impl ComponentSubset {
    pub fn new(mut indices: Vec<usize>) -> ComponentSubset {
        indices.sort_unstable();
        indices.dedup();
        ComponentSubset(indices)
    }

    pub fn single(i: usize) -> ComponentSubset {
        ComponentSubset(vec![i])
    }

    pub fn full(n: usize) -> ComponentSubset {
        ComponentSubset((0..n).collect())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn complement(&self, n: usize) -> ComponentSubset {
        ComponentSubset((0..n).filter(|i| !self.contains(*i)).collect())
    }

    pub fn with(&self, i: usize) -> ComponentSubset {
        let mut v = self.0.clone();
        v.push(i);
        ComponentSubset::new(v)
    }

    /// Comma-joined indices, e.g. "0,2".
    pub fn key(&self) -> String {
        self.to_string()
    }

    /// Every nonempty subset of {0..n-1}, by increasing size and
    /// lexicographically within a size.
    pub fn all_nonempty(n: usize) -> Vec<ComponentSubset> {
        let mut out = Vec::with_capacity((1usize << n) - 1);
        for k in 1..=n {
            let mut combo: Vec<usize> = (0..k).collect();
            loop {
                out.push(ComponentSubset(combo.clone()));
                let mut i = k;
                while i > 0 && combo[i - 1] == n - k + i - 1 {
                    i -= 1;
                }
                if i == 0 {
                    break;
                }
                combo[i - 1] += 1;
                for j in i..k {
                    combo[j] = combo[j - 1] + 1;
                }
            }
        }
        out
    }

    /// Nonempty subsets of this subset, in the same order as `all_nonempty`.
    pub fn nonempty_subsets(&self) -> Vec<ComponentSubset> {
        ComponentSubset::all_nonempty(self.len())
            .into_iter()
            .map(|s| ComponentSubset(s.0.iter().map(|&k| self.0[k]).collect()))
            .collect()
    }
}

impl fmt::Display for ComponentSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for ComponentSubset {
    type Err = Error;

    fn from_str(s: &str) -> Result<ComponentSubset, Error> {
        let mut v = Vec::new();
        for part in s.split(',') {
            let part = part.trim();
            v.push(part.parse::<usize>().map_err(|_| Error::Parse(format!("bad sublink key {s:?}")))?);
        }
        let out = ComponentSubset::new(v.clone());
        if out.len() != v.len() {
            return Err(Error::Parse(format!("sublink key {s:?} repeats a component")));
        }
        Ok(out)
    }
}

impl<const N: usize> From<[usize; N]> for ComponentSubset {
    fn from(v: [usize; N]) -> ComponentSubset {
        ComponentSubset::new(v.to_vec())
    }
}

/// The values a1hat(L_J) for sublinks of the surgery link.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ConwayData {
    a1hat: BTreeMap<ComponentSubset, i64>,
}

impl ConwayData {
    pub fn new() -> ConwayData {
        ConwayData::default()
    }

    /// Knot invariants only: a1hat of each single component (equal to a_2).
    pub fn from_knots(values: &[i64]) -> ConwayData {
        let mut cd = ConwayData::new();
        for (i, &v) in values.iter().enumerate() {
            cd.insert(ComponentSubset::single(i), v);
        }
        cd
    }

    pub fn insert(&mut self, subset: ComponentSubset, value: i64) -> Option<i64> {
        self.a1hat.insert(subset, value)
    }

    pub fn with(mut self, subset: impl Into<ComponentSubset>, value: i64) -> ConwayData {
        self.insert(subset.into(), value);
        self
    }

    pub fn get_raw(&self, subset: &ComponentSubset) -> Option<i64> {
        self.a1hat.get(subset).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ComponentSubset, &i64)> {
        self.a1hat.iter()
    }

    /// a1hat(L_J). Sublinks of at least four components of an algebraically
    /// split link default to zero; any other missing entry is an error.
    pub fn a1hat(&self, pres: &SurgeryPresentation, subset: &ComponentSubset) -> Result<i64, Error> {
        if let Some(v) = self.a1hat.get(subset) {
            return Ok(*v);
        }
        if subset.len() >= 4 && pres.is_algebraically_split() {
            return Ok(0);
        }
        Err(Error::MissingConwayData(subset.key()))
    }

    /// Renumber the data for the sub-presentation on `subset`.
    pub fn restrict(&self, subset: &ComponentSubset) -> ConwayData {
        let mut out = ConwayData::new();
        for (j, v) in &self.a1hat {
            if j.indices().iter().all(|i| subset.contains(*i)) {
                let renumbered = j.indices().iter().map(|i| subset.indices().iter().position(|k| k == i).unwrap()).collect();
                out.insert(ComponentSubset::new(renumbered), *v);
            }
        }
        out
    }

    /// Relabel through `map`: entry for J becomes entry for {map[j] : j in J}.
    pub fn relabel(&self, map: &[usize]) -> ConwayData {
        let mut out = ConwayData::new();
        for (j, v) in &self.a1hat {
            out.insert(ComponentSubset::new(j.indices().iter().map(|&i| map[i]).collect()), *v);
        }
        out
    }
}

/// Caller-supplied values of the correction term for sublinks of three or
/// more components where it is not computed from the presentation.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ThetaOverrides(BTreeMap<ComponentSubset, Rational>);

impl ThetaOverrides {
    pub fn new() -> ThetaOverrides {
        ThetaOverrides::default()
    }

    pub fn insert(&mut self, subset: ComponentSubset, value: Rational) -> Result<(), Error> {
        if subset.len() < 3 {
            return Err(Error::InvalidPresentation(format!(
                "theta override for {{{subset}}}: singleton and pair terms are always computed"
            )));
        }
        self.0.insert(subset, value);
        Ok(())
    }

    pub fn get(&self, subset: &ComponentSubset) -> Option<&Rational> {
        self.0.get(subset)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ComponentSubset, &Rational)> {
        self.0.iter()
    }
}

/// The correction term theta(L_J).
///
/// Singletons give (p^2 + q^2 + 1) / q^2 and pairs give
/// 2l^3 + 2l^2 (p_i/q_i + p_j/q_j) - 2l. A larger sublink containing a
/// component whose linking numbers with every other component of the whole
/// link vanish gives 0; otherwise an override must be supplied.
pub fn theta(pres: &SurgeryPresentation, subset: &ComponentSubset, overrides: &ThetaOverrides) -> Result<Rational, Error> {
    let idx = subset.indices();
    match idx.len() {
        0 => Err(Error::Precondition("theta of the empty sublink".into())),
        1 => Ok(pres.slope(idx[0]).theta()),
        2 => {
            let (i, j) = (idx[0], idx[1]);
            let l = Rational::from_integer(pres.lk(i, j));
            let slopes = pres.slope(i).value() + pres.slope(j).value();
            Ok(l.pow(3) * 2 + l.pow(2) * slopes * 2 - l * 2)
        }
        _ => {
            if idx.iter().any(|&i| pres.is_unlinked_component(i)) {
                Ok(Rational::zero())
            } else if let Some(v) = overrides.get(subset) {
                Ok(v.clone())
            } else {
                Err(Error::UnsupportedTheta(subset.key()))
            }
        }
    }
}

/// The pieces of the surgery formula, kept for reporting.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LambdaBreakdown {
    pub inertia: Inertia,
    pub det: Rational,
    pub q_product: Rational,
    /// Sum over J of det E(L_{N-J}; J) a1hat(L_J).
    pub conway_sum: Rational,
    /// Sum over J of det E(L_{N-J}) (-1)^{#J} theta(L_J) / 24.
    pub theta_sum: Rational,
    /// (prod q) |det E| (sigma / 8 + sum s(p_i, q_i) / 2).
    pub dedekind_term: Rational,
    pub lambda: Rational,
}

/// Casson-Walker-Lescop invariant of the manifold presented by `pres`.
pub fn lescop_lambda(pres: &SurgeryPresentation, cd: &ConwayData, overrides: &ThetaOverrides) -> Result<Rational, Error> {
    lescop_breakdown(pres, cd, overrides).map(|b| b.lambda)
}

pub fn lescop_breakdown(pres: &SurgeryPresentation, cd: &ConwayData, overrides: &ThetaOverrides) -> Result<LambdaBreakdown, Error> {
    let n = pres.len();
    let e = pres.linking_matrix();
    let inertia = e.inertia();
    let det = e.det();
    let q_product = pres.q_product();

    let mut conway_sum = Rational::zero();
    let mut theta_sum = Rational::zero();
    for j in ComponentSubset::all_nonempty(n) {
        let a1 = cd.a1hat(pres, &j)?;
        if a1 != 0 {
            conway_sum += e.bordered(j.indices()).det() * a1;
        }
        let th = theta(pres, &j, overrides)?;
        if !th.is_zero() {
            let term = e.principal(&j.complement(n).0).det() * th / 24;
            if j.len() % 2 == 0 {
                theta_sum += term;
            } else {
                theta_sum -= term;
            }
        }
    }

    let mut dedekind = Rational::from_integer(inertia.signature()) / 8;
    for s in pres.slopes() {
        dedekind += dedekind_sum_fast(s.p(), s.q())? / 2;
    }
    let dedekind_term = &q_product * &det.abs() * dedekind;

    let lambda = (&conway_sum + &theta_sum) * &q_product * inertia.parity_sign() + &dedekind_term;
    Ok(LambdaBreakdown { inertia, det, q_product, conway_sum, theta_sum, dedekind_term, lambda })
}

/// Order of H_1 of the surgered manifold, |prod q_i * det E(L)|.
pub fn homology_order(pres: &SurgeryPresentation) -> Rational {
    (pres.q_product() * pres.linking_matrix().det()).abs()
}

/// Casson-Walker invariant from lambda = |H_1| / 2 * lambda_w.
pub fn walker_from_lescop(pres: &SurgeryPresentation, lambda: &Rational) -> Result<Rational, Error> {
    let h = homology_order(pres);
    if h.is_zero() {
        return Err(Error::ZeroOrderHomology);
    }
    Ok(lambda * Rational::from_integer(2) / h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(p: i64, q: i64) -> Slope {
        Slope::new(p, q).unwrap()
    }

    #[test]
    fn subset_enumeration_order() {
        let all: Vec<String> = ComponentSubset::all_nonempty(3).iter().map(|j| j.key()).collect();
        assert_eq!(all, ["0", "1", "2", "0,1", "0,2", "1,2", "0,1,2"]);
        assert_eq!(ComponentSubset::all_nonempty(6).len(), 63);
        let sub = ComponentSubset::from([1, 3]);
        let keys: Vec<String> = sub.nonempty_subsets().iter().map(|j| j.key()).collect();
        assert_eq!(keys, ["1", "3", "1,3"]);
        assert_eq!("2, 0".parse::<ComponentSubset>().unwrap(), ComponentSubset::from([0, 2]));
        assert!("0,0".parse::<ComponentSubset>().is_err());
    }

    #[test]
    fn linking_matrix_shapes() {
        let unknot = SurgeryPresentation::knot(s(1, 1));
        assert_eq!(unknot.linking_matrix(), SymRatMatrix::diagonal(vec![Rational::one()]));
        let two = SurgeryPresentation::two_component(s(3, 2), s(-5, 3), 4);
        let e = two.linking_matrix();
        assert_eq!(e.get(0, 1), &Rational::from_integer(4));
        assert_eq!(e.get(1, 1), &Rational::new(-5, 3));
        let split = SurgeryPresentation::split(vec![s(1, 2), s(3, 1), s(-2, 5)]);
        assert_eq!(split.linking_matrix(), SymRatMatrix::diagonal(vec![Rational::new(1, 2), Rational::from_integer(3), Rational::new(-2, 5)]));
    }

    #[test]
    fn bordered_matrices() {
        let two = SurgeryPresentation::two_component(s(3, 2), s(-5, 3), 4);
        assert_eq!(two.bordered_diag_matrix(&ComponentSubset::single(0)).det(), Rational::new(-5, 3) + 4);
        assert_eq!(two.bordered_diag_matrix(&ComponentSubset::full(2)).det(), Rational::one());
        let split = SurgeryPresentation::split(vec![s(1, 2), s(3, 1), s(-2, 5)]);
        assert_eq!(
            split.bordered_diag_matrix(&ComponentSubset::single(1)),
            SymRatMatrix::diagonal(vec![Rational::new(1, 2), Rational::new(-2, 5)])
        );
    }

    #[test]
    fn rejects_bad_presentations() {
        assert!(SurgeryPresentation::new(vec![vec![0, 1], vec![2, 0]], vec![s(1, 1), s(1, 1)]).is_err());
        assert!(SurgeryPresentation::new(vec![vec![1]], vec![s(1, 1)]).is_err());
        assert!(SurgeryPresentation::new(vec![], vec![]).is_err());
    }

    #[test]
    fn theta_cases() {
        let ov = ThetaOverrides::new();
        let two = SurgeryPresentation::two_component(s(3, 2), s(-5, 3), 1);
        assert_eq!(theta(&two, &ComponentSubset::single(0), &ov).unwrap(), Rational::new(9 + 4 + 1, 4));
        // l = 1: 2 + 2 (p0/q0 + p1/q1) - 2
        let expected = Rational::from_integer(2) + (Rational::new(3, 2) + Rational::new(-5, 3)) * 2 - 2;
        assert_eq!(theta(&two, &ComponentSubset::full(2), &ov).unwrap(), expected);
        let unlinked = SurgeryPresentation::two_component(s(3, 2), s(-5, 3), 0);
        assert_eq!(theta(&unlinked, &ComponentSubset::full(2), &ov).unwrap(), Rational::zero());
    }

    #[test]
    fn theta_for_large_sublinks() {
        let linked = SurgeryPresentation::new(
            vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]],
            vec![s(1, 1), s(2, 1), s(3, 1)],
        )
        .unwrap();
        let j = ComponentSubset::full(3);
        let mut ov = ThetaOverrides::new();
        assert_eq!(theta(&linked, &j, &ov), Err(Error::UnsupportedTheta("0,1,2".into())));
        ov.insert(j.clone(), Rational::new(7, 5)).unwrap();
        assert_eq!(theta(&linked, &j, &ov).unwrap(), Rational::new(7, 5));
        assert!(ov.insert(ComponentSubset::from([0, 1]), Rational::one()).is_err());

        // component 0 unlinked from everything
        let partly = SurgeryPresentation::new(
            vec![vec![0, 0, 0], vec![0, 0, 2], vec![0, 2, 0]],
            vec![s(1, 1), s(2, 1), s(3, 1)],
        )
        .unwrap();
        assert_eq!(theta(&partly, &j, &ThetaOverrides::new()).unwrap(), Rational::zero());
    }

    #[test]
    fn missing_data_is_reported() {
        let two = SurgeryPresentation::two_component(s(1, 1), s(1, 1), 0);
        let cd = ConwayData::from_knots(&[0, 0]);
        assert_eq!(lescop_lambda(&two, &cd, &ThetaOverrides::new()), Err(Error::MissingConwayData("0,1".into())));
        let split4 = SurgeryPresentation::split(vec![s(1, 1); 4]);
        let mut cd = ConwayData::new();
        for j in ComponentSubset::all_nonempty(4).into_iter().filter(|j| j.len() < 4) {
            cd.insert(j, 0);
        }
        assert!(lescop_lambda(&split4, &cd, &ThetaOverrides::new()).is_ok());
    }

    #[test]
    fn golden_values() {
        let ov = ThetaOverrides::new();
        let unknot = ConwayData::from_knots(&[0]);
        assert_eq!(lescop_lambda(&SurgeryPresentation::knot(s(1, 1)), &unknot, &ov).unwrap(), Rational::zero());
        assert_eq!(lescop_lambda(&SurgeryPresentation::knot(s(0, 1)), &unknot, &ov).unwrap(), Rational::new(-1, 12));
        for a in -10..10 {
            let cd = ConwayData::from_knots(&[a]);
            assert_eq!(
                lescop_lambda(&SurgeryPresentation::knot(s(0, 1)), &cd, &ov).unwrap(),
                Rational::from_integer(a) - Rational::new(1, 12)
            );
        }
        // L(2,1) from 2-surgery on the unknot
        assert_eq!(lescop_lambda(&SurgeryPresentation::knot(s(2, 1)), &unknot, &ov).unwrap(), Rational::zero());
        // 1-surgery on the trefoil (a2 = 1)
        assert_eq!(
            lescop_lambda(&SurgeryPresentation::knot(s(1, 1)), &ConwayData::from_knots(&[1]), &ov).unwrap(),
            Rational::one()
        );
    }

    #[test]
    fn split_pair_with_zero_slope() {
        let ov = ThetaOverrides::new();
        for (p0, q0) in [(1, 1), (3, 2), (-5, 7), (-1, 4), (7, 3)] {
            for (k1, l) in [(0, 0), (2, -1), (-3, 5)] {
                let pres = SurgeryPresentation::two_component(s(p0, q0), s(0, 1), 0);
                let cd = ConwayData::from_knots(&[4, k1]).with([0, 1], l);
                let sign = p0.signum();
                let expected = (Rational::from_integer(p0 * k1 + q0 * l) - Rational::new(p0, 12)) * sign;
                assert_eq!(lescop_lambda(&pres, &cd, &ov).unwrap(), expected);
            }
        }
    }

    #[test]
    fn walker_relation() {
        let cd = ConwayData::from_knots(&[0]);
        let s3 = SurgeryPresentation::knot(s(1, 1));
        assert_eq!(walker_from_lescop(&s3, &Rational::zero()).unwrap(), Rational::zero());
        let s2s1 = SurgeryPresentation::knot(s(0, 1));
        let l = lescop_lambda(&s2s1, &cd, &ThetaOverrides::new()).unwrap();
        assert_eq!(walker_from_lescop(&s2s1, &l), Err(Error::ZeroOrderHomology));
        let two = SurgeryPresentation::two_component(s(3, 2), s(5, 3), 2);
        // |H_1| = |q1 q2 (p1 p2 / (q1 q2) - l^2)| = |15 - 24| = 9
        assert_eq!(homology_order(&two), Rational::from_integer(9));
    }
}
