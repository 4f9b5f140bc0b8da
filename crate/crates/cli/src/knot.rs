use cwl_core::conway::{builtin, parse_pd, Diagram, IntPoly, SkeinEngine};
use serde_json::json;

use crate::CliError;

/// Where the diagram comes from.
pub enum DiagramSource<'a> {
    Builtin { name: &'a str, param: Option<i64> },
    Pd(&'a str),
}

pub fn load_diagram(src: &DiagramSource) -> Result<Diagram, CliError> {
    Ok(match src {
        DiagramSource::Builtin { name, param } => builtin(name, *param)?,
        DiagramSource::Pd(text) => parse_pd(text, "pd")?,
    })
}

#[derive(Clone, Debug)]
pub struct ConwayReport {
    pub mu: usize,
    pub crossings: usize,
    pub nabla: IntPoly,
    pub hat: IntPoly,
    /// nonzero a_k
    pub a: Vec<(usize, i64)>,
    /// â_k = (−1)^{μ−1} a_{μ+2k−1}, k >= 1, up to the degree
    pub a_hat: Vec<(usize, i64)>,
    pub linking: Vec<(usize, usize, i64)>,
}

pub fn run_conway(d: &Diagram, engine: &SkeinEngine) -> Result<ConwayReport, CliError> {
    let nabla = engine.conway(d)?;
    let hat = engine.conway(&d.mirror())?;
    let mu = d.mu();
    let a = nabla.coeffs().iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, &c)| (k, c)).collect();
    let sign = if mu % 2 == 1 { 1 } else { -1 };
    let top = nabla.degree().unwrap_or(0);
    let a_hat = (1..)
        .map(|k| (k, mu + 2 * k - 1))
        .take_while(|&(k, deg)| k == 1 || deg <= top)
        .map(|(k, deg)| (k, sign * nabla.coeff(deg)))
        .collect();
    let mut linking = Vec::new();
    for i in 0..mu {
        for j in i + 1..mu {
            linking.push((i, j, d.linking_number(i, j)));
        }
    }
    Ok(ConwayReport { mu, crossings: d.crossing_count(), nabla, hat, a, a_hat, linking })
}

impl ConwayReport {
    pub fn a1hat(&self) -> i64 {
        self.a_hat[0].1
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out += &format!("components  {}\n", self.mu);
        out += &format!("crossings   {}\n", self.crossings);
        out += &format!("nabla       {}\n", self.nabla);
        out += &format!("nabla_hat   {}\n", self.hat);
        for (k, c) in &self.a {
            out += &format!("a_{k:<9} {c}\n");
        }
        for (k, c) in &self.a_hat {
            out += &format!("ahat_{k:<6} {c}\n");
        }
        for (i, j, l) in &self.linking {
            out += &format!("lk({i},{j})     {l}\n");
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "components": self.mu,
            "crossings": self.crossings,
            "nabla": self.nabla.to_string(),
            "nabla_coeffs": self.nabla.coeffs(),
            "nabla_hat": self.hat.to_string(),
            "a": self.a.iter().map(|(k, c)| json!({"k": k, "value": c})).collect::<Vec<_>>(),
            "a_hat": self.a_hat.iter().map(|(k, c)| json!({"k": k, "value": c})).collect::<Vec<_>>(),
            "linking": self.linking.iter().map(|(i, j, l)| json!({"i": i, "j": j, "lk": l})).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(name: &str, param: Option<i64>) -> ConwayReport {
        let d = load_diagram(&DiagramSource::Builtin { name, param }).unwrap();
        run_conway(&d, &SkeinEngine::default()).unwrap()
    }

    #[test]
    fn documented_examples() {
        let w = report("whitehead", None);
        assert_eq!(w.nabla.to_string(), "z^3");
        assert_eq!(w.a1hat(), -1);
        let b = report("borromean", None);
        assert_eq!(b.nabla.to_string(), "z^4");
        assert_eq!(b.a1hat(), 1);
        assert_eq!(report("L_m", Some(3)).nabla.to_string(), "3z^3");
        let t = report("trefoil", None);
        assert_eq!(t.a_hat, vec![(1, 1)]);
        assert!(t.render().contains("ahat_1"));
    }

    #[test]
    fn parse_errors_carry_location() {
        let e = load_diagram(&DiagramSource::Pd("X[1,2,2,1], X[3,4")).unwrap_err();
        assert!(e.to_string().contains("crossing 1"), "{e}");
    }
}
