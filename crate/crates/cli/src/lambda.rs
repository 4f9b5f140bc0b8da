use cwl_core::surgery::{
    boyer_lines_lambda, ito_lambda_walker, lemma21_lambda, lescop_lambda, m00_lambda, m0_lambda,
    three_component_split_lambda, two_component_lambda, walker_from_lescop, ComponentSubset,
};
use cwl_core::{Error, Rational};
use serde_json::json;

use crate::input::Loaded;
use crate::CliError;

#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum Formula {
    Auto,
    General,
    Lemma21,
    Two,
    ThreeSplit,
    M0,
    M00,
    BoyerLines,
}

impl Formula {
    pub fn name(self) -> &'static str {
        match self {
            Formula::Auto => "auto",
            Formula::General => "general",
            Formula::Lemma21 => "lemma21",
            Formula::Two => "two",
            Formula::ThreeSplit => "three-split",
            Formula::M0 => "m0",
            Formula::M00 => "m00",
            Formula::BoyerLines => "boyer-lines",
        }
    }

    const SPECIAL: [Formula; 6] =
        [Formula::Lemma21, Formula::Two, Formula::ThreeSplit, Formula::M0, Formula::M00, Formula::BoyerLines];
}

fn evaluate(f: Formula, l: &Loaded) -> Result<Rational, Error> {
    let (p, cd) = (&l.pres, &l.cd);
    match f {
        Formula::Auto | Formula::General => lescop_lambda(p, cd, &l.theta),
        Formula::Lemma21 => lemma21_lambda(p, cd, &l.theta),
        Formula::Two => two_component_lambda(p, cd),
        Formula::ThreeSplit => three_component_split_lambda(p, cd),
        Formula::M0 => m0_lambda(p, cd),
        Formula::M00 => m00_lambda(p, cd),
        Formula::BoyerLines => {
            if p.len() != 1 {
                return Err(Error::Precondition(format!("boyer-lines needs a knot, got {} components", p.len())));
            }
            boyer_lines_lambda(cd.a1hat(p, &ComponentSubset::single(0))?, p.slope(0))
        }
    }
}

#[derive(Clone, Debug)]
pub struct LambdaReport {
    pub lambda: Rational,
    /// Some(None) when requested but H_1 is infinite.
    pub walker: Option<Option<Rational>>,
    /// Evaluators that ran, with their values.
    pub evaluations: Vec<(String, Rational)>,
    /// Specializations that did not apply, with the reason.
    pub skipped: Vec<(String, String)>,
}

/// Evaluate with one formula, or with `auto` run every applicable one and
/// demand exact agreement.
pub fn run_lambda(l: &Loaded, formula: Formula, walker: bool) -> Result<LambdaReport, CliError> {
    let lambda = evaluate(formula, l)?;
    let mut evaluations = vec![(if formula == Formula::Auto { "general" } else { formula.name() }.to_string(), lambda.clone())];
    let mut skipped = Vec::new();
    if formula == Formula::Auto {
        for f in Formula::SPECIAL {
            match evaluate(f, l) {
                Ok(v) if v == lambda => evaluations.push((f.name().into(), v)),
                Ok(v) => {
                    return Err(CliError::CrossCheck(format!("{} gives {v} but the general formula gives {lambda}", f.name())))
                }
                Err(Error::Precondition(why)) => skipped.push((f.name().into(), why)),
                Err(e) => return Err(e.into()),
            }
        }
    }
    let w = match walker_from_lescop(&l.pres, &lambda) {
        Ok(w) => Some(w),
        Err(Error::ZeroOrderHomology) => None,
        Err(e) => return Err(e.into()),
    };
    if formula == Formula::Auto && l.pres.len() == 2 {
        if let Some(w) = &w {
            let a = |j: ComponentSubset| l.cd.a1hat(&l.pres, &j);
            let ito = ito_lambda_walker(&l.pres, a(ComponentSubset::single(0))?, a(ComponentSubset::single(1))?, -a(ComponentSubset::full(2))?)?;
            if &ito != w {
                return Err(CliError::CrossCheck(format!("ito gives lambda_w = {ito} but the general formula gives {w}")));
            }
            evaluations.push(("ito (lambda_w)".into(), ito));
        }
    }
    Ok(LambdaReport { lambda, walker: walker.then_some(w), evaluations, skipped })
}

impl LambdaReport {
    pub fn render(&self) -> String {
        let mut out = format!("lambda = {}\n", self.lambda);
        match &self.walker {
            Some(Some(w)) => out += &format!("lambda_w = {w}\n"),
            Some(None) => out += "lambda_w = undefined (H_1 is infinite)\n",
            None => {}
        }
        if self.evaluations.len() > 1 || !self.skipped.is_empty() {
            out += "\nevaluator        value\n";
            for (name, v) in &self.evaluations {
                out += &format!("{name:<16} {v}\n");
            }
            for (name, why) in &self.skipped {
                out += &format!("{name:<16} n/a ({why})\n");
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "lambda": self.lambda.to_string(),
            "lambda_w": match &self.walker {
                Some(Some(w)) => json!(w.to_string()),
                _ => serde_json::Value::Null,
            },
            "evaluations": self.evaluations.iter().map(|(n, v)| json!({"formula": n, "value": v.to_string()})).collect::<Vec<_>>(),
            "skipped": self.skipped.iter().map(|(n, why)| json!({"formula": n, "reason": why})).collect::<Vec<_>>(),
        })
    }
}
