use std::collections::BTreeMap;

use cwl_core::conway::{a1hat_of, parse_pd, Diagram, SkeinEngine};
use cwl_core::surgery::{ComponentSubset, ConwayData, SurgeryPresentation, ThetaOverrides};
use cwl_core::{Rational, Slope};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SlopeSpec {
    pub p: i64,
    pub q: i64,
}

/// JSON presentation file. Keys of `a1hat`, `theta` and `pd` are sorted
/// comma-joined component indices such as "0,2".
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    pub components: usize,
    pub linking: Vec<Vec<i64>>,
    pub slopes: Vec<SlopeSpec>,
    #[serde(default)]
    pub a1hat: BTreeMap<String, i64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub theta: BTreeMap<String, String>,
    /// PD code of the sublink on the key's components, listed in the key's
    /// order (the code's components are ordered by their least edge label).
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub pd: BTreeMap<String, String>,
}

/// Everything the evaluators need.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub pres: SurgeryPresentation,
    pub cd: ConwayData,
    pub theta: ThetaOverrides,
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

/// Parse a subset key and insist on the canonical spelling.
pub fn parse_key(key: &str, n: usize) -> Result<ComponentSubset, CliError> {
    let j: ComponentSubset = key.parse().map_err(|e: cwl_core::Error| invalid(format!("subset key {key:?}: {e}")))?;
    if j.is_empty() || j.indices().iter().any(|&i| i >= n) {
        return Err(invalid(format!("subset key {key:?} must name components in 0..{n}")));
    }
    if j.key() != key {
        return Err(invalid(format!("subset key {key:?} must be written sorted as {:?}", j.key())));
    }
    Ok(j)
}

impl PresentationFile {
    pub fn from_json(text: &str) -> Result<PresentationFile, CliError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn read(path: &str) -> Result<PresentationFile, CliError> {
        let text = if path == "-" {
            std::io::read_to_string(std::io::stdin())?
        } else {
            std::fs::read_to_string(path).map_err(|e| invalid(format!("{path}: {e}")))?
        };
        PresentationFile::from_json(&text)
    }

    pub fn load(&self) -> Result<Loaded, CliError> {
        let n = self.components;
        if self.linking.len() != n || self.slopes.len() != n {
            return Err(invalid(format!(
                "\"components\" is {n} but \"linking\" has {} rows and \"slopes\" has {} entries",
                self.linking.len(),
                self.slopes.len()
            )));
        }
        let slopes = self
            .slopes
            .iter()
            .map(|s| Slope::new(s.p, s.q))
            .collect::<Result<Vec<_>, _>>()?;
        let pres = SurgeryPresentation::new(self.linking.clone(), slopes)?;

        let mut cd = ConwayData::new();
        for (key, &v) in &self.a1hat {
            cd.insert(parse_key(key, n)?, v);
        }
        let derived = self.derive_from_pd(&pres)?;
        for (j, (v, source)) in derived {
            match cd.get_raw(&j) {
                Some(given) if given != v => {
                    return Err(invalid(format!(
                        "a1hat[{j}] = {given} disagrees with {v} computed from pd[{source}]"
                    )))
                }
                _ => {
                    cd.insert(j, v);
                }
            }
        }

        let mut theta = ThetaOverrides::new();
        for (key, v) in &self.theta {
            let r: Rational = v.parse().map_err(|e: cwl_core::Error| invalid(format!("theta[{key}]: {e}")))?;
            theta.insert(parse_key(key, n)?, r)?;
        }
        Ok(Loaded { pres, cd, theta })
    }

    fn derive_from_pd(&self, pres: &SurgeryPresentation) -> Result<BTreeMap<ComponentSubset, (i64, String)>, CliError> {
        let engine = SkeinEngine::default();
        let mut out: BTreeMap<ComponentSubset, (i64, String)> = BTreeMap::new();
        for (key, text) in &self.pd {
            let j = parse_key(key, pres.len())?;
            let d = parse_pd(text, &format!("pd[{key}]"))?;
            if d.mu() != j.len() {
                return Err(invalid(format!("pd[{key}] has {} components, expected {}", d.mu(), j.len())));
            }
            let idx = j.indices();
            for a in 0..idx.len() {
                for b in a + 1..idx.len() {
                    let (lk, want) = (d.linking_number(a, b), pres.lk(idx[a], idx[b]));
                    if lk != want {
                        return Err(invalid(format!(
                            "pd[{key}]: lk of components {} and {} is {lk}, the linking matrix says {want}",
                            idx[a], idx[b]
                        )));
                    }
                }
            }
            for local in ComponentSubset::all_nonempty(idx.len()) {
                let sub = d.sublink(local.indices());
                let v = a1hat_of(&engine.conway(&sub)?, sub.mu());
                let global = ComponentSubset::new(local.indices().iter().map(|&i| idx[i]).collect());
                if let Some((w, src)) = out.get(&global) {
                    if *w != v {
                        return Err(invalid(format!("a1hat[{global}] is {w} from pd[{src}] but {v} from pd[{key}]")));
                    }
                } else {
                    out.insert(global, (v, key.clone()));
                }
            }
        }
        Ok(out)
    }
}

impl Loaded {
    /// Presentation of a diagram's link with the given slopes, Conway data
    /// computed from the diagram.
    pub fn from_diagram(d: &Diagram, slopes: Vec<Slope>, engine: &SkeinEngine) -> Result<Loaded, CliError> {
        if slopes.len() != d.mu() {
            return Err(invalid(format!("{} slopes for a {}-component link", slopes.len(), d.mu())));
        }
        let pres = SurgeryPresentation::new(d.linking_matrix(), slopes)?;
        let cd = cwl_core::conway::conway_data_from_diagram(d, engine)?;
        Ok(Loaded { pres, cd, theta: ThetaOverrides::new() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn file(json: &str) -> Result<Loaded, CliError> {
        PresentationFile::from_json(json)?.load()
    }

    #[test]
    fn minimal_knot() {
        let l = file(r#"{"components":1,"linking":[[0]],"slopes":[{"p":0,"q":1}],"a1hat":{"0":0}}"#).unwrap();
        assert_eq!(l.pres.len(), 1);
        assert_eq!(l.cd.get_raw(&ComponentSubset::single(0)), Some(0));
    }

    #[test]
    fn validation_failures() {
        let bad = [
            r#"{"components":2,"linking":[[0]],"slopes":[{"p":0,"q":1}]}"#,
            r#"{"components":1,"linking":[[0]],"slopes":[{"p":2,"q":4}]}"#,
            r#"{"components":2,"linking":[[0,1],[2,0]],"slopes":[{"p":0,"q":1},{"p":0,"q":1}]}"#,
            r#"{"components":2,"linking":[[0,0],[0,0]],"slopes":[{"p":0,"q":1},{"p":0,"q":1}],"a1hat":{"1,0":3}}"#,
            r#"{"components":1,"linking":[[0]],"slopes":[{"p":0,"q":1}],"a1hat":{"1":0}}"#,
            r#"{"components":1,"linking":[[0]],"slopes":[{"p":0,"q":1}],"extra":1}"#,
            r#"{"components":3,"linking":[[0,0,0],[0,0,0],[0,0,0]],"slopes":[{"p":1,"q":1},{"p":1,"q":1},{"p":1,"q":1}],"theta":{"0,1,2":"1/0"}}"#,
        ];
        for b in bad {
            assert!(matches!(file(b), Err(CliError::Validation(_))), "{b}");
        }
    }

    #[test]
    fn pd_derives_and_checks() {
        let w = cwl_core::conway::builtin_pd("whitehead", None).unwrap().to_string();
        let ok = format!(
            r#"{{"components":2,"linking":[[0,0],[0,0]],"slopes":[{{"p":1,"q":1}},{{"p":0,"q":1}}],"pd":{{"0,1":"{w}"}}}}"#
        );
        let l = file(&ok).unwrap();
        assert_eq!(l.cd.get_raw(&ComponentSubset::full(2)), Some(-1));
        assert_eq!(l.cd.get_raw(&ComponentSubset::single(1)), Some(0));
        let clash = ok.replace(r#""pd""#, r#""a1hat":{"0,1":5},"pd""#);
        match file(&clash) {
            Err(CliError::Validation(m)) => assert!(m.contains("disagrees"), "{m}"),
            other => panic!("{other:?}"),
        }
        let agree = ok.replace(r#""pd""#, r#""a1hat":{"0,1":-1},"pd""#);
        assert!(file(&agree).is_ok());
        let h = cwl_core::conway::builtin_pd("hopf", None).unwrap().to_string();
        let wrong_lk = ok.replace(&w, &h);
        match file(&wrong_lk) {
            Err(CliError::Validation(m)) => assert!(m.contains("lk"), "{m}"),
            other => panic!("{other:?}"),
        }
    }
}
