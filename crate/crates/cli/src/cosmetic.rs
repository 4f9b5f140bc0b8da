use cwl_core::cosmetic::{
    thm21_verdict, thm22_admissible_q, thm22_exact_quadratics, thm3_verdict, thm4_verdict, thm5_verdict,
    with_split_component, Admissible, CosmeticVerdict, QuadraticPoly,
};
use cwl_core::surgery::{lescop_lambda, ComponentSubset, SurgeryPresentation, ThetaOverrides};
use cwl_core::{Error, Rational, Slope};
use rayon::prelude::*;
use serde_json::json;

use crate::input::Loaded;
use crate::CliError;

#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum Mode {
    Thm21,
    Thm22,
    Thm3,
    Thm4,
    Thm5,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Thm21 => "thm21",
            Mode::Thm22 => "thm22",
            Mode::Thm3 => "thm3",
            Mode::Thm4 => "thm4",
            Mode::Thm5 => "thm5",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CosmeticArgs {
    pub mode: Mode,
    pub q0: i64,
    pub q0p: i64,
    pub same_sign: bool,
    pub p1: i64,
    pub q1: i64,
    /// scan parameters 1..=grid
    pub grid: Option<i64>,
}

impl CosmeticArgs {
    pub fn new(mode: Mode) -> CosmeticArgs {
        CosmeticArgs { mode, q0: 1, q0p: 2, same_sign: true, p1: 1, q1: 1, grid: None }
    }
}

/// A claimed value next to the general engine's.
#[derive(Clone, Debug)]
pub struct EngineCheck {
    pub label: String,
    pub claimed: Rational,
    pub engine: Rational,
}

#[derive(Clone, Debug)]
pub struct GridRow {
    pub params: Vec<i64>,
    pub values: Vec<(String, Rational)>,
}

#[derive(Clone, Debug)]
pub struct CosmeticReport {
    pub mode: Mode,
    pub verdict: CosmeticVerdict,
    pub checks: Vec<EngineCheck>,
    /// why the engine checks could not run
    pub unchecked: Option<String>,
    pub grid_columns: Vec<String>,
    pub grid: Vec<GridRow>,
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

fn slope(p: i64, q: i64) -> Result<Slope, CliError> {
    Ok(Slope::new(p, q)?)
}

/// Overrides re-indexed for a sublink.
fn theta_on(theta: &ThetaOverrides, subset: &ComponentSubset) -> ThetaOverrides {
    let mut out = ThetaOverrides::new();
    for (j, v) in theta.iter() {
        if j.indices().iter().all(|&i| subset.contains(i)) {
            let local = j.indices().iter().map(|i| subset.indices().iter().position(|k| k == i).unwrap()).collect();
            out.insert(ComponentSubset::new(local), v.clone()).expect("size preserved");
        }
    }
    out
}

/// λ of the sublink on `subset` with new slopes.
fn lambda_on(l: &Loaded, subset: &ComponentSubset, slopes: Vec<Slope>) -> Result<Rational, Error> {
    let pres = l.pres.restrict(subset);
    let pres = SurgeryPresentation::new(pres.linking().to_vec(), slopes)?;
    lescop_lambda(&pres, &l.cd.restrict(subset), &theta_on(&l.theta, subset))
}

fn lambda_full(l: &Loaded, slopes: Vec<Slope>) -> Result<Rational, Error> {
    lambda_on(l, &ComponentSubset::full(l.pres.len()), slopes)
}

fn require_split_k0(l: &Loaded, need: Option<usize>, mode: Mode) -> Result<(), CliError> {
    let n = l.pres.len();
    match need {
        Some(k) if n != k => return Err(invalid(format!("{} needs a {k}-component link, got {n}", mode.name()))),
        None if n < 2 => return Err(invalid(format!("{} needs K_0 plus at least one more component", mode.name()))),
        _ => {}
    }
    if !l.pres.is_unlinked_component(0) {
        return Err(invalid(format!("{}: K_0 (component 0) must have zero linking number with the rest", mode.name())));
    }
    Ok(())
}

/// Run the verdict, check every reported difference against the general
/// engine (exit 4 on mismatch), and scan the grid if asked.
pub fn run_cosmetic(l: &Loaded, a: CosmeticArgs) -> Result<CosmeticReport, CliError> {
    if a.q0 < 1 || a.q0p < 1 || a.q1 < 1 {
        return Err(invalid("q0, q0' and q1 must be positive"));
    }
    let mut report = match a.mode {
        Mode::Thm21 => thm21(l, a)?,
        Mode::Thm22 => thm22(l, a)?,
        Mode::Thm3 | Mode::Thm4 | Mode::Thm5 => linear(l, a)?,
    };
    report.grid.sort_by(|x, y| x.params.cmp(&y.params));
    for c in &report.checks {
        if c.claimed != c.engine {
            return Err(CliError::CrossCheck(format!("{}: claimed {} but the engine gives {}", c.label, c.claimed, c.engine)));
        }
    }
    Ok(report)
}

fn inner_of(l: &Loaded) -> SurgeryPresentation {
    l.pres.restrict(&ComponentSubset::new((1..l.pres.len()).collect()))
}

fn full_slopes(s0: Slope, inner: &SurgeryPresentation) -> Vec<Slope> {
    let mut v = vec![s0];
    v.extend_from_slice(inner.slopes());
    v
}

fn thm21(l: &Loaded, a: CosmeticArgs) -> Result<CosmeticReport, CliError> {
    require_split_k0(l, None, Mode::Thm21)?;
    let inner = inner_of(l);
    let verdict = thm21_verdict(&inner, &l.cd)?;
    let poly = verdict.polys[0].1.clone();
    let diff = |p: i64| -> Result<Rational, CliError> {
        let plus = lambda_full(l, full_slopes(Slope::integral(p), &inner))?;
        let minus = lambda_full(l, full_slopes(Slope::integral(-p), &inner))?;
        Ok(plus - minus)
    };
    let upto = a.grid.unwrap_or(3).max(3);
    let rows: Vec<Result<GridRow, CliError>> = (1..=upto)
        .into_par_iter()
        .map(|p| {
            Ok(GridRow { params: vec![p], values: vec![("poly".into(), poly.eval_int(p)), ("engine".into(), diff(p)?)] })
        })
        .collect();
    let rows = rows.into_iter().collect::<Result<Vec<_>, _>>()?;
    let checks = rows
        .iter()
        .map(|r| EngineCheck {
            label: format!("lambda(+{p}) - lambda(-{p})", p = r.params[0]),
            claimed: r.values[0].1.clone(),
            engine: r.values[1].1.clone(),
        })
        .collect();
    let grid = if a.grid.is_some() { rows } else { Vec::new() };
    Ok(CosmeticReport {
        mode: Mode::Thm21,
        verdict,
        checks,
        unchecked: None,
        grid_columns: vec!["p".into(), "poly".into(), "engine".into()],
        grid,
    })
}

fn thm22(l: &Loaded, a: CosmeticArgs) -> Result<CosmeticReport, CliError> {
    require_split_k0(l, None, Mode::Thm22)?;
    let inner = inner_of(l);
    let verdict = thm22_admissible_q(&inner, &l.cd)?;
    let (plus, minus) = thm22_exact_quadratics(&inner, &l.cd)?;
    let published: (QuadraticPoly, QuadraticPoly) = (verdict.polys[0].1.clone(), verdict.polys[1].1.clone());
    let rest = ComponentSubset::new((1..l.pres.len()).collect());
    let base = lambda_on(l, &rest, inner.slopes().to_vec())?;
    let qq = inner.q_product();
    let upto = a.grid.unwrap_or(3).max(3);
    let rows: Vec<Result<GridRow, CliError>> = (1..=upto)
        .into_par_iter()
        .map(|q| {
            let scale = &qq / q;
            let ep = lambda_full(l, full_slopes(slope(1, q)?, &inner))? - &base;
            let em = lambda_full(l, full_slopes(slope(-1, q)?, &inner))? - &base;
            Ok(GridRow {
                params: vec![q],
                values: vec![
                    ("published+".into(), &scale * published.0.eval_int(q)),
                    ("published-".into(), &scale * published.1.eval_int(q)),
                    ("exact+".into(), &scale * plus.eval_int(q)),
                    ("exact-".into(), &scale * minus.eval_int(q)),
                    ("engine+".into(), ep),
                    ("engine-".into(), em),
                ],
            })
        })
        .collect();
    let rows = rows.into_iter().collect::<Result<Vec<_>, _>>()?;
    let mut checks = Vec::new();
    for r in &rows {
        let q = r.params[0];
        checks.push(EngineCheck { label: format!("lambda(M+) - lambda(M), q = {q}"), claimed: r.values[2].1.clone(), engine: r.values[4].1.clone() });
        checks.push(EngineCheck { label: format!("lambda(M-) - lambda(M), q = {q}"), claimed: r.values[3].1.clone(), engine: r.values[5].1.clone() });
    }
    let grid = if a.grid.is_some() { rows } else { Vec::new() };
    Ok(CosmeticReport {
        mode: Mode::Thm22,
        verdict,
        checks,
        unchecked: None,
        grid_columns: ["q", "published+", "published-", "exact+", "exact-", "engine+", "engine-"].map(String::from).to_vec(),
        grid,
    })
}

/// thm3/4/5: linear form, witnesses, engine check with p0 = 1.
fn linear(l: &Loaded, a: CosmeticArgs) -> Result<CosmeticReport, CliError> {
    let mode = a.mode;
    let (need, rest_slopes) = match mode {
        Mode::Thm3 => (2, vec![Slope::integral(0)]),
        Mode::Thm4 => (3, vec![slope(a.p1, a.q1)?, Slope::integral(0)]),
        _ => (3, vec![Slope::integral(0), Slope::integral(0)]),
    };
    require_split_k0(l, Some(need), mode)?;
    if need == 3 && !l.pres.is_algebraically_split() {
        return Err(invalid(format!("{} needs an algebraically split link", mode.name())));
    }
    let get = |j: &[usize]| l.cd.a1hat(&l.pres, &ComponentSubset::new(j.to_vec()));
    let verdict_for = |q0: i64, q0p: i64, same: bool| -> Result<CosmeticVerdict, CliError> {
        Ok(match mode {
            Mode::Thm3 => thm3_verdict(get(&[0, 1])?, q0, q0p, same),
            Mode::Thm4 => thm4_verdict(a.p1, a.q1, get(&[0, 2])?, get(&[0, 1, 2])?, q0, q0p, same)?,
            _ => thm5_verdict(get(&[0, 1, 2])?, q0, q0p, same),
        })
    };
    let verdict = verdict_for(a.q0, a.q0p, a.same_sign)?;
    let rest = ComponentSubset::new((1..need).collect());
    let with_k0 = |s0: Slope| {
        let mut v = vec![s0];
        v.extend(rest_slopes.iter().copied());
        v
    };
    // engine values for the three witnesses, p0 = 1
    let engine_for = |q0: i64, q0p: i64, same: bool| -> Result<[Rational; 3], Error> {
        let base = lambda_on(l, &rest, rest_slopes.clone())?;
        let at = |p: i64, q: i64| -> Result<Rational, Error> { lambda_full(l, with_k0(Slope::new(p, q)?)) };
        let first = at(1, q0)?;
        let pair = &first - at(if same { 1 } else { -1 }, q0p)?;
        Ok([pair, &first - &base, at(-1, q0)? - &base])
    };
    let (checks, unchecked) = match engine_for(a.q0, a.q0p, a.same_sign) {
        Ok(vals) => (
            verdict.witnesses[1..]
                .iter()
                .zip(vals)
                .map(|(w, e)| EngineCheck { label: w.label.clone(), claimed: w.value.clone(), engine: e })
                .collect(),
            None,
        ),
        Err(e) if e.is_unsupported_data() => (Vec::new(), Some(e.to_string())),
        Err(e) => return Err(e.into()),
    };
    let mut grid = Vec::new();
    if let Some(n) = a.grid {
        let params: Vec<(i64, i64, bool)> = (1..=n)
            .flat_map(|q0| (1..=n).flat_map(move |q0p| [(q0, q0p, true), (q0, q0p, false)]))
            .filter(|&(q0, q0p, same)| !(same && q0 == q0p))
            .collect();
        let rows: Vec<Result<GridRow, CliError>> = params
            .into_par_iter()
            .map(|(q0, q0p, same)| {
                let v = verdict_for(q0, q0p, same)?;
                let mut values = vec![("pair".into(), v.witnesses[1].value.clone())];
                if unchecked.is_none() {
                    values.push(("engine".into(), engine_for(q0, q0p, same)?[0].clone()));
                }
                Ok(GridRow { params: vec![q0, q0p, same as i64], values })
            })
            .collect();
        grid = rows.into_iter().collect::<Result<Vec<_>, _>>()?;
    }
    let mut checks: Vec<EngineCheck> = checks;
    for r in &grid {
        if r.values.len() == 2 {
            checks.push(EngineCheck {
                label: format!("pair q0 = {}, q0' = {}, same sign = {}", r.params[0], r.params[1], r.params[2] == 1),
                claimed: r.values[0].1.clone(),
                engine: r.values[1].1.clone(),
            });
        }
    }
    Ok(CosmeticReport {
        mode,
        verdict,
        checks,
        unchecked,
        grid_columns: ["q0", "q0'", "same_sign", "pair", "engine"].map(String::from).to_vec(),
        grid,
    })
}

fn poly_str(p: &QuadraticPoly) -> String {
    format!("({})x^2 + ({})x + ({})", p.c2, p.c1, p.c0)
}

fn admissible_str(a: &Admissible) -> String {
    match a {
        Admissible::Unconstrained => "unconstrained".into(),
        Admissible::Values(v) if v.is_empty() => "none".into(),
        Admissible::Values(v) => v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "),
    }
}

impl CosmeticReport {
    pub fn render(&self) -> String {
        let mut out = format!("mode        {}\n", self.mode.name());
        for (name, p) in &self.verdict.polys {
            out += &format!("poly        {name}: {}\n", poly_str(p));
        }
        for w in &self.verdict.witnesses {
            out += &format!("witness     {} = {}\n", w.label, w.value);
        }
        out += &format!("admissible  {}\n", admissible_str(&self.verdict.admissible));
        out += &format!("verdict     {}\n", self.verdict.outcome);
        match &self.unchecked {
            Some(why) => out += &format!("engine      not checked ({why})\n"),
            None => out += &format!("engine      {} differences agree\n", self.checks.len()),
        }
        if !self.grid.is_empty() {
            out += "\n";
            out += &self.grid_columns.join("\t");
            out += "\n";
            for r in &self.grid {
                let mut cells: Vec<String> = r.params.iter().map(|p| p.to_string()).collect();
                cells.extend(r.values.iter().map(|(_, v)| v.to_string()));
                out += &cells.join("\t");
                out += "\n";
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "mode": self.mode.name(),
            "verdict": serde_json::to_value(&self.verdict).expect("serializable"),
            "outcome": self.verdict.outcome.to_string(),
            "engine_checks": self.checks.iter().map(|c| json!({"label": c.label, "claimed": c.claimed.to_string(), "engine": c.engine.to_string()})).collect::<Vec<_>>(),
            "unchecked": self.unchecked,
            "grid": self.grid.iter().map(|r| json!({
                "params": r.params,
                "values": r.values.iter().map(|(k, v)| json!({"name": k, "value": v.to_string()})).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Full link for thm21/thm22 from an inner presentation: K_0 is prepended.
pub fn prepend_k0(inner: &SurgeryPresentation) -> SurgeryPresentation {
    with_split_component(inner, Slope::integral(1))
}
