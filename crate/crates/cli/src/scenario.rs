//! Line-oriented `key = value` scenario files, all angles in radians.
//!
//! Every module precondition that can be checked from the file alone is
//! checked at load time, with the offending line in the error.

use std::fmt;
use std::path::PathBuf;

use conemorse_core::cone::{ConePoint, ConeSurface};

/// One fully validated run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub alpha: f64,
    pub p_r: f64,
    pub p_theta: f64,
    pub q_r: f64,
    pub q_theta: f64,
    pub segments: usize,
    pub flow_tol: f64,
    pub max_sweeps: usize,
    pub samples: usize,
    pub seed: u64,
    pub amplitude: f64,
    pub rips_scale: Option<f64>,
    pub eps_cap: f64,
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioError {
    /// 1-based line number, 0 when the problem is file-wide.
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ScenarioError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "scenario: {}", self.message)
        } else {
            write!(f, "scenario line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ScenarioError {}

fn err(line: usize, message: impl Into<String>) -> ScenarioError {
    ScenarioError {
        line,
        message: message.into(),
    }
}

impl Scenario {
    pub fn surface(&self) -> ConeSurface {
        ConeSurface::new(self.alpha).expect("validated at load time")
    }

    pub fn endpoints(&self) -> (ConePoint, ConePoint) {
        let s = self.surface();
        let p = ConePoint::new(s, self.p_r, self.p_theta).expect("validated at load time");
        let q = ConePoint::new(s, self.q_r, self.q_theta).expect("validated at load time");
        (p, q)
    }

}

/// Parse and validate a scenario document.
pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioError> {
    let mut alpha = None;
    let mut p_r = None;
    let mut p_theta = None;
    let mut q_r = None;
    let mut q_theta = None;
    let mut segments = None;
    let mut flow_tol = None;
    let mut max_sweeps = None;
    let mut samples = None;
    let mut seed = None;
    let mut amplitude = None;
    let mut rips_scale = None;
    let mut eps_cap = None;
    let mut out_dir: Option<PathBuf> = None;
    let mut seen: Vec<String> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(err(lineno, format!("expected `key = value`, got `{raw}`")));
        };
        let key = key.trim();
        let value = value.trim();
        if value.is_empty() {
            return Err(err(lineno, format!("key `{key}` has no value")));
        }
        if seen.iter().any(|k| k == key) {
            return Err(err(lineno, format!("key `{key}` given twice")));
        }
        seen.push(key.to_string());

        let f = |slot: &mut Option<f64>| -> Result<(), ScenarioError> {
            let parsed: f64 = value
                .parse()
                .map_err(|_| err(lineno, format!("`{value}` is not a number for `{key}`")))?;
            if !parsed.is_finite() {
                return Err(err(lineno, format!("`{key}` must be finite, got {parsed}")));
            }
            *slot = Some(parsed);
            Ok(())
        };
        let u = |slot: &mut Option<u64>| -> Result<(), ScenarioError> {
            let parsed: u64 = value
                .parse()
                .map_err(|_| err(lineno, format!("`{value}` is not an integer for `{key}`")))?;
            *slot = Some(parsed);
            Ok(())
        };

        match key {
            "alpha" => f(&mut alpha)?,
            "p_r" => f(&mut p_r)?,
            "p_theta" => f(&mut p_theta)?,
            "q_r" => f(&mut q_r)?,
            "q_theta" => f(&mut q_theta)?,
            "flow_tol" => f(&mut flow_tol)?,
            "amplitude" => f(&mut amplitude)?,
            "rips_scale" => f(&mut rips_scale)?,
            "eps" => f(&mut eps_cap)?,
            "segments" => {
                let mut v = None;
                u(&mut v)?;
                segments = v.map(|x| x as usize);
            }
            "max_sweeps" => {
                let mut v = None;
                u(&mut v)?;
                max_sweeps = v.map(|x| x as usize);
            }
            "samples" => {
                let mut v = None;
                u(&mut v)?;
                samples = v.map(|x| x as usize);
            }
            "seed" => u(&mut seed)?,
            "out_dir" => out_dir = Some(PathBuf::from(value)),
            _ => return Err(err(lineno, format!("unknown key `{key}`"))),
        }

        // Field-level checks with the line still at hand.
        match key {
            "alpha" => {
                let a = alpha.unwrap();
                if a <= 0.0 {
                    return Err(err(lineno, format!("alpha must be positive, got {a}")));
                }
            }
            "p_r" | "q_r" => {
                let r = if key == "p_r" { p_r } else { q_r }.unwrap();
                if r <= 0.0 {
                    return Err(err(
                        lineno,
                        format!("{key} must be positive: the vertex is not a valid endpoint"),
                    ));
                }
            }
            "segments" => {
                let n = segments.unwrap();
                if n < 2 {
                    return Err(err(lineno, format!("segments must be at least 2, got {n}")));
                }
            }
            "flow_tol" => {
                let t = flow_tol.unwrap();
                if t <= 0.0 {
                    return Err(err(lineno, format!("flow_tol must be positive, got {t}")));
                }
            }
            "max_sweeps" => {
                if max_sweeps == Some(0) {
                    return Err(err(lineno, "max_sweeps must be at least 1"));
                }
            }
            "samples" => {
                if samples == Some(0) {
                    return Err(err(lineno, "samples must be at least 1"));
                }
            }
            "amplitude" => {
                let a = amplitude.unwrap();
                if !(0.0..=1.0).contains(&a) {
                    return Err(err(lineno, format!("amplitude must lie in [0, 1], got {a}")));
                }
            }
            "rips_scale" => {
                let s = rips_scale.unwrap();
                if s <= 0.0 {
                    return Err(err(lineno, format!("rips_scale must be positive, got {s}")));
                }
            }
            "eps" => {
                let e = eps_cap.unwrap();
                if e <= 0.0 {
                    return Err(err(lineno, format!("eps must be positive, got {e}")));
                }
            }
            _ => {}
        }
    }

    let need = |name: &str, present: bool| -> Result<(), ScenarioError> {
        if present {
            Ok(())
        } else {
            Err(err(0, format!("missing required key `{name}`")))
        }
    };
    need("alpha", alpha.is_some())?;
    need("p_r", p_r.is_some())?;
    need("p_theta", p_theta.is_some())?;
    need("q_r", q_r.is_some())?;
    need("q_theta", q_theta.is_some())?;

    Ok(Scenario {
        alpha: alpha.unwrap(),
        p_r: p_r.unwrap(),
        p_theta: p_theta.unwrap(),
        q_r: q_r.unwrap(),
        q_theta: q_theta.unwrap(),
        segments: segments.unwrap_or(64),
        flow_tol: flow_tol.unwrap_or(1e-10),
        max_sweeps: max_sweeps.unwrap_or(20_000),
        samples: samples.unwrap_or(200),
        seed: seed.unwrap_or(7),
        amplitude: amplitude.unwrap_or(0.4),
        rips_scale,
        eps_cap: eps_cap.unwrap_or(0.15),
        out_dir,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOOD: &str = "\
# quarter cone
alpha = 1.5707963267948966
p_r = 1.0
p_theta = 0.0
q_r = 1.0
q_theta = 0.6283185307179586  # pi/5
segments = 64
seed = 7
";

    #[test]
    fn parses_with_defaults() {
        let s = parse_scenario(GOOD).unwrap();
        assert_eq!(s.segments, 64);
        assert_eq!(s.samples, 200);
        assert_eq!(s.flow_tol, 1e-10);
        assert!(s.rips_scale.is_none());
        assert_eq!(s.eps_cap, 0.15);
        let (p, q) = s.endpoints();
        assert_eq!(p.r(), 1.0);
        assert_eq!(q.theta(), 0.6283185307179586);
    }

    #[test]
    fn reports_the_offending_line() {
        let bad = GOOD.replace("q_r = 1.0", "q_r = 0.0");
        let e = parse_scenario(&bad).unwrap_err();
        assert_eq!(e.line, 5);
        assert!(e.message.contains("vertex"));

        let e = parse_scenario("alpha = 1.0\nwat\n").unwrap_err();
        assert_eq!(e.line, 2);

        let e = parse_scenario("alpha = fast\n").unwrap_err();
        assert_eq!(e.line, 1);

        let e = parse_scenario("alpha = 1.0\nalpha = 2.0\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("twice"));
    }

    #[test]
    fn missing_keys_are_file_wide_errors() {
        let e = parse_scenario("alpha = 1.0\n").unwrap_err();
        assert_eq!(e.line, 0);
        assert!(e.message.contains("p_r"));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let e = parse_scenario(&format!("{GOOD}color = red\n")).unwrap_err();
        assert!(e.message.contains("unknown key"));
    }
}
