//! Scenario fixture files.
//!
//! A fixture is a line-oriented text file naming the points, curves,
//! lines, blow-up centers, divisor classes and linear-system conditions
//! a scenario starts from. Anything the fixture leaves out (seeded
//! points, pencil members, derived node labels) is the runner's job.
//!
//! ```text
//! scenario pgq0
//! point p5 = (3, 2*i, 1)            # Gaussian-rational coordinates
//! curve C6 = @f6.curve              # or an inline polynomial in x,y,z
//! line T1 = p0 p1                   # through two points
//! line T3 = p0 slope 3/5            # or point plus affine slope
//! center E0 = p0
//! center E1' = near E1 along T1     # infinitely near, out along a line
//! class D1 = T - E0 - 2E1' + E5     # T = a general line's class
//! catalog = T1s EE1 E5x
//! contract = 16
//! assume free text, one line
//! system C6 degree 6
//!   at p0 multiplicity 2
//!   at p1 multiplicity 2 tangent T1
//! end
//! ```

use std::path::Path;

use crate::exactfield::GaussianRational;
use crate::linsys::BaseCondition;
use crate::picard::{BlowupConfiguration, Center, DivisorClass};
use crate::poly::{parse_curve_file, parse_poly, MultiPoly, PlanePoint};
use crate::singularity::Direction;

use super::{direction_of_line, line_through, line_with_slope, ScenarioError};

#[derive(Clone, Debug)]
pub struct ScenarioSpec {
    pub name: String,
    pub points: Vec<(String, PlanePoint)>,
    pub curves: Vec<(String, MultiPoly)>,
    pub lines: Vec<(String, MultiPoly)>,
    pub centers: Vec<(String, CenterSpec)>,
    pub classes: Vec<(String, SymbolicClass)>,
    pub catalog: Vec<String>,
    pub contract: Option<u32>,
    pub assumptions: Vec<String>,
    pub systems: Vec<(String, SystemSpec)>,
}

#[derive(Clone, Debug)]
pub enum CenterSpec {
    At(String),
    Near { parent: String, line: String },
}

/// A divisor class over center labels, before any configuration exists.
/// `mults` follows the d·T − Σ m·E convention.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicClass {
    pub degree: i64,
    pub mults: Vec<(String, i64)>,
}

#[derive(Clone, Debug)]
pub struct SystemSpec {
    pub degree: u32,
    pub conditions: Vec<ConditionSpec>,
}

#[derive(Clone, Debug)]
pub struct ConditionSpec {
    pub point: String,
    pub multiplicity: u32,
    pub tangent: Option<TangentSpec>,
}

#[derive(Clone, Debug)]
pub enum TangentSpec {
    Line(String),
    Slope(GaussianRational),
    Vertical,
}

fn bundled(file: &str) -> Option<&'static str> {
    match file {
        "pgq0.scn" => Some(include_str!("../../fixtures/pgq0.scn")),
        "pgq1.scn" => Some(include_str!("../../fixtures/pgq1.scn")),
        "pgq2.scn" => Some(include_str!("../../fixtures/pgq2.scn")),
        "f6.curve" => Some(include_str!("../../fixtures/f6.curve")),
        "f7.curve" => Some(include_str!("../../fixtures/f7.curve")),
        _ => None,
    }
}

fn read_fixture(file: &str, dir: Option<&Path>) -> Result<String, ScenarioError> {
    match dir {
        Some(d) => Ok(std::fs::read_to_string(d.join(file))?),
        None => bundled(file)
            .map(str::to_string)
            .ok_or_else(|| ScenarioError::Fixture(format!("no bundled fixture {file}"))),
    }
}

/// Loads `NAME.scn`, from `dir` when given and from the bundled set
/// otherwise; `@file` curve references resolve the same way.
pub fn load_spec(name: &str, dir: Option<&Path>) -> Result<ScenarioSpec, ScenarioError> {
    let text = read_fixture(&format!("{name}.scn"), dir)?;
    parse_spec(&text, &|file| read_fixture(file, dir))
}

pub fn parse_spec(
    text: &str,
    resolve: &dyn Fn(&str) -> Result<String, ScenarioError>,
) -> Result<ScenarioSpec, ScenarioError> {
    let mut spec = ScenarioSpec {
        name: String::new(),
        points: Vec::new(),
        curves: Vec::new(),
        lines: Vec::new(),
        centers: Vec::new(),
        classes: Vec::new(),
        catalog: Vec::new(),
        contract: None,
        assumptions: Vec::new(),
        systems: Vec::new(),
    };
    let mut lines = text.lines().enumerate().peekable();
    while let Some((ln, raw)) = lines.next() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |m: String| ScenarioError::Fixture(format!("line {}: {m}", ln + 1));
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match kw {
            "scenario" => spec.name = rest.to_string(),
            "point" => {
                let (name, value) = split_def(rest).map_err(err)?;
                spec.points.push((name, parse_point(value).map_err(err)?));
            }
            "curve" => {
                let (name, value) = split_def(rest).map_err(err)?;
                let poly = if let Some(file) = value.strip_prefix('@') {
                    parse_curve_file(&resolve(file.trim())?)?
                } else {
                    parse_poly(value, &["x", "y", "z"])?
                };
                spec.curves.push((name, poly));
            }
            "line" => {
                let (name, value) = split_def(rest).map_err(err)?;
                spec.lines.push((name, parse_line(&spec, value).map_err(err)?));
            }
            "center" => {
                let (name, value) = split_def(rest).map_err(err)?;
                let center = if let Some(near) = value.strip_prefix("near ") {
                    let (parent, line) = near
                        .split_once(" along ")
                        .ok_or_else(|| err("expected `near PARENT along LINE`".into()))?;
                    CenterSpec::Near {
                        parent: parent.trim().to_string(),
                        line: line.trim().to_string(),
                    }
                } else {
                    CenterSpec::At(value.to_string())
                };
                spec.centers.push((name, center));
            }
            "class" => {
                let (name, value) = split_def(rest).map_err(err)?;
                spec.classes.push((name, parse_class(value).map_err(err)?));
            }
            "catalog" => {
                let value = rest
                    .strip_prefix('=')
                    .ok_or_else(|| err("expected `catalog = NAMES`".into()))?;
                spec.catalog = value.split_whitespace().map(str::to_string).collect();
            }
            "contract" => {
                let value = rest
                    .strip_prefix('=')
                    .ok_or_else(|| err("expected `contract = N`".into()))?;
                spec.contract = Some(
                    value
                        .trim()
                        .parse::<u32>()
                        .map_err(|e| err(format!("bad count: {e}")))?,
                );
            }
            "assume" => spec.assumptions.push(rest.to_string()),
            "system" => {
                let (name, degree) = rest
                    .split_once(" degree ")
                    .ok_or_else(|| err("expected `system NAME degree D`".into()))?;
                let degree = degree
                    .trim()
                    .parse::<u32>()
                    .map_err(|e| err(format!("bad degree: {e}")))?;
                let mut conditions = Vec::new();
                loop {
                    let Some((cln, craw)) = lines.next() else {
                        return Err(err("system block not closed by `end`".into()));
                    };
                    let cline = craw.trim();
                    if cline.is_empty() || cline.starts_with('#') {
                        continue;
                    }
                    if cline == "end" {
                        break;
                    }
                    conditions.push(parse_condition(cline).map_err(|m| {
                        ScenarioError::Fixture(format!("line {}: {m}", cln + 1))
                    })?);
                }
                spec.systems
                    .push((name.trim().to_string(), SystemSpec { degree, conditions }));
            }
            other => return Err(err(format!("unknown keyword {other}"))),
        }
    }
    if spec.name.is_empty() {
        return Err(ScenarioError::Fixture("missing `scenario NAME` line".into()));
    }
    for (kind, names) in [
        ("point", spec.points.iter().map(|p| &p.0).collect::<Vec<_>>()),
        ("curve", spec.curves.iter().map(|p| &p.0).collect()),
        ("line", spec.lines.iter().map(|p| &p.0).collect()),
        ("center", spec.centers.iter().map(|p| &p.0).collect()),
        ("class", spec.classes.iter().map(|p| &p.0).collect()),
    ] {
        let mut seen = std::collections::BTreeSet::new();
        for n in names {
            if !seen.insert(n.clone()) {
                return Err(ScenarioError::Fixture(format!("duplicate {kind} {n}")));
            }
        }
    }
    Ok(spec)
}

fn split_def(rest: &str) -> Result<(String, &str), String> {
    let (name, value) = rest
        .split_once('=')
        .ok_or_else(|| "expected `NAME = VALUE`".to_string())?;
    let name = name.trim();
    if name.is_empty() {
        return Err("empty name".into());
    }
    Ok((name.to_string(), value.trim()))
}

fn parse_scalar(text: &str) -> Result<GaussianRational, String> {
    let p = parse_poly(text, &[]).map_err(|e| e.to_string())?;
    Ok(p.constant_term())
}

pub(crate) fn parse_point(value: &str) -> Result<PlanePoint, String> {
    let inner = value
        .strip_prefix('(')
        .and_then(|v| v.strip_suffix(')'))
        .ok_or_else(|| "expected `(x, y, z)`".to_string())?;
    let parts: Vec<&str> = inner.split(',').collect();
    if parts.len() != 3 {
        return Err("expected three coordinates".into());
    }
    let x = parse_scalar(parts[0])?;
    let y = parse_scalar(parts[1])?;
    let z = parse_scalar(parts[2])?;
    PlanePoint::try_new(x, y, z).map_err(|e| e.to_string())
}

fn parse_line(spec: &ScenarioSpec, value: &str) -> Result<MultiPoly, String> {
    let lookup = |name: &str| -> Result<&PlanePoint, String> {
        spec.points
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, p)| p)
            .ok_or_else(|| format!("unknown point {name}"))
    };
    if let Some((base, slope)) = value.split_once(" slope ") {
        let p = lookup(base.trim())?;
        Ok(line_with_slope(p, &parse_scalar(slope)?))
    } else {
        let mut names = value.split_whitespace();
        let (Some(a), Some(b), None) = (names.next(), names.next(), names.next()) else {
            return Err("expected `P Q` or `P slope S`".into());
        };
        let (p, q) = (lookup(a)?, lookup(b)?);
        if p == q {
            return Err("line needs two distinct points".into());
        }
        Ok(line_through(p, q))
    }
}

/// `T - E0 - 2E1' + E5` → degree 1, m(E0) = 1, m(E1') = 2, m(E5) = −1.
fn parse_class(value: &str) -> Result<SymbolicClass, String> {
    let compact: String = value.chars().filter(|c| !c.is_whitespace()).collect();
    let mut degree = 0i64;
    let mut mults: Vec<(String, i64)> = Vec::new();
    let bytes = compact.as_bytes();
    let mut pos = 0;
    let mut first = true;
    while pos < bytes.len() {
        let sign = match bytes[pos] {
            b'+' => {
                pos += 1;
                1
            }
            b'-' => {
                pos += 1;
                -1
            }
            _ if first => 1,
            c => return Err(format!("expected + or -, found {}", c as char)),
        };
        first = false;
        let digits_start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        let coeff: i64 = if pos > digits_start {
            compact[digits_start..pos]
                .parse()
                .map_err(|e| format!("bad coefficient: {e}"))?
        } else {
            1
        };
        let label_start = pos;
        while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'\'') {
            pos += 1;
        }
        let label = &compact[label_start..pos];
        if label.is_empty() {
            if pos > digits_start && coeff == 0 {
                continue; // a literal 0 term, as in `class KL1 = 0`
            }
            return Err("expected T or a center label".into());
        }
        if label == "T" {
            degree += sign * coeff;
        } else {
            // A displayed −c·E term is multiplicity +c in d·T − Σ m·E.
            match mults.iter_mut().find(|(n, _)| n == label) {
                Some((_, m)) => *m += -sign * coeff,
                None => mults.push((label.to_string(), -sign * coeff)),
            }
        }
    }
    mults.retain(|(_, m)| *m != 0);
    Ok(SymbolicClass { degree, mults })
}

fn parse_condition(line: &str) -> Result<ConditionSpec, String> {
    let rest = line
        .strip_prefix("at ")
        .ok_or_else(|| "expected `at POINT multiplicity M [tangent ..]`".to_string())?;
    let (point, rest) = rest
        .trim()
        .split_once(" multiplicity ")
        .ok_or_else(|| "expected `multiplicity M`".to_string())?;
    let rest = rest.trim();
    let (mult_text, tangent_text) = match rest.split_once(" tangent ") {
        Some((m, t)) => (m.trim(), Some(t.trim())),
        None => (rest, None),
    };
    let multiplicity = mult_text
        .parse::<u32>()
        .map_err(|e| format!("bad multiplicity: {e}"))?;
    let tangent = match tangent_text {
        None => None,
        Some("vertical") => Some(TangentSpec::Vertical),
        Some(t) => match t.strip_prefix("slope ") {
            Some(s) => Some(TangentSpec::Slope(parse_scalar(s)?)),
            None => Some(TangentSpec::Line(t.to_string())),
        },
    };
    Ok(ConditionSpec {
        point: point.trim().to_string(),
        multiplicity,
        tangent,
    })
}

impl SymbolicClass {
    pub fn resolve(&self, cfg: &BlowupConfiguration) -> Result<DivisorClass, ScenarioError> {
        let mults: Vec<(&str, i64)> = self.mults.iter().map(|(n, m)| (n.as_str(), *m)).collect();
        Ok(cfg.class(self.degree, &mults)?)
    }
}

impl ScenarioSpec {
    fn named<'a, T>(list: &'a [(String, T)], kind: &str, name: &str) -> Result<&'a T, ScenarioError> {
        list.iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v)
            .ok_or_else(|| ScenarioError::Fixture(format!("unknown {kind} {name}")))
    }

    pub fn point(&self, name: &str) -> Result<&PlanePoint, ScenarioError> {
        Self::named(&self.points, "point", name)
    }

    pub fn curve(&self, name: &str) -> Result<&MultiPoly, ScenarioError> {
        Self::named(&self.curves, "curve", name)
    }

    pub fn line(&self, name: &str) -> Result<&MultiPoly, ScenarioError> {
        Self::named(&self.lines, "line", name)
    }

    pub fn symbolic_class(&self, name: &str) -> Result<&SymbolicClass, ScenarioError> {
        Self::named(&self.classes, "class", name)
    }

    pub fn class(
        &self,
        name: &str,
        cfg: &BlowupConfiguration,
    ) -> Result<DivisorClass, ScenarioError> {
        self.symbolic_class(name)?.resolve(cfg)
    }

    pub fn catalog_classes(
        &self,
        cfg: &BlowupConfiguration,
    ) -> Result<Vec<DivisorClass>, ScenarioError> {
        self.catalog.iter().map(|n| self.class(n, cfg)).collect()
    }

    pub fn system(&self, name: &str) -> Result<&SystemSpec, ScenarioError> {
        Self::named(&self.systems, "system", name)
    }

    /// Resolves the fixture's center declarations. Directions of
    /// infinitely near centers are read off the named line at the
    /// parent's plane point.
    pub fn build_centers(&self) -> Result<Vec<(String, Center)>, ScenarioError> {
        let mut out: Vec<(String, Center)> = Vec::new();
        for (name, cs) in &self.centers {
            let center = match cs {
                CenterSpec::At(point) => Center::Plane(self.point(point)?.clone()),
                CenterSpec::Near { parent, line } => {
                    let parent_idx = out
                        .iter()
                        .position(|(n, _)| n == parent)
                        .ok_or_else(|| {
                            ScenarioError::Fixture(format!("unknown parent center {parent}"))
                        })?;
                    let Center::Plane(pp) = &out[parent_idx].1 else {
                        return Err(ScenarioError::Fixture(format!(
                            "parent center {parent} is not a plane point"
                        )));
                    };
                    let direction = direction_of_line(self.line(line)?, &pp.clone())?;
                    Center::InfinitelyNear {
                        parent: parent_idx,
                        direction,
                    }
                }
            };
            out.push((name.clone(), center));
        }
        Ok(out)
    }

    /// Expands a condition spec into base conditions; a tangent turns
    /// multiplicity m into the (m, m) cluster along that direction.
    pub fn conditions(&self, sys: &SystemSpec) -> Result<Vec<BaseCondition>, ScenarioError> {
        let mut out = Vec::new();
        for c in &sys.conditions {
            let p = self.point(&c.point)?.clone();
            match &c.tangent {
                None => out.push(BaseCondition::at_point(p, c.multiplicity)),
                Some(t) => {
                    let dir = match t {
                        TangentSpec::Line(name) => direction_of_line(self.line(name)?, &p)?,
                        TangentSpec::Slope(s) => Direction::Slope(s.clone()),
                        TangentSpec::Vertical => Direction::Vertical,
                    };
                    out.push(BaseCondition::at_point(p.clone(), c.multiplicity));
                    out.push(BaseCondition::infinitely_near(
                        p,
                        vec![(dir, c.multiplicity)],
                        c.multiplicity,
                    ));
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn no_files(_: &str) -> Result<String, ScenarioError> {
        Err(ScenarioError::Fixture("no files in this test".into()))
    }

    #[test]
    fn parses_a_small_fixture() {
        let text = "\
# demo
scenario demo
point p0 = (0, 0, 1)
point p1 = (-2, 1, 1)
point p5 = (3, 2*i, 1)
curve Q = x^2 + y*z
line T1 = p0 p1
line S = p0 slope 3/5
center E0 = p0
center E1 = p1
center E1' = near E1 along T1
class D1 = T - E0 - 2E1' + E1
class Z = 0
catalog = D1 Z
contract = 16
assume stated, not re-proved
system C degree 2
  at p0 multiplicity 1
  at p1 multiplicity 2 tangent T1
end
";
        let spec = parse_spec(text, &no_files).unwrap();
        assert_eq!(spec.name, "demo");
        assert_eq!(spec.points.len(), 3);
        assert!(spec.point("p5").unwrap().coords()[1].im() == &crate::exactfield::Rational::from(num::BigInt::from(2)));
        assert_eq!(spec.curve("Q").unwrap().degree(), Some(2));
        assert!(spec.line("T1").unwrap().evaluate(spec.point("p1").unwrap().coords()).is_zero());
        assert!(spec
            .line("S")
            .unwrap()
            .evaluate(PlanePoint::from_ints(5, 3, 1).coords())
            .is_zero());
        assert_eq!(spec.contract, Some(16));
        assert_eq!(spec.assumptions, vec!["stated, not re-proved".to_string()]);

        let d1 = spec.symbolic_class("D1").unwrap();
        assert_eq!(d1.degree, 1);
        assert_eq!(
            d1.mults,
            vec![
                ("E0".to_string(), 1),
                ("E1'".to_string(), 2),
                ("E1".to_string(), -1)
            ]
        );
        assert_eq!(spec.symbolic_class("Z").unwrap(), &SymbolicClass { degree: 0, mults: vec![] });

        let centers = spec.build_centers().unwrap();
        assert_eq!(centers.len(), 3);
        assert!(matches!(centers[2].1, Center::InfinitelyNear { parent: 1, .. }));

        let cfg = BlowupConfiguration::new(centers).unwrap();
        let resolved = spec.class("D1", &cfg).unwrap();
        assert_eq!(resolved.degree(), 1);
        assert_eq!(resolved.mults(), &[1, -1, 2]);
        assert_eq!(spec.catalog_classes(&cfg).unwrap().len(), 2);

        let sys = spec.system("C").unwrap();
        assert_eq!(sys.degree, 2);
        let conds = spec.conditions(sys).unwrap();
        assert_eq!(conds.len(), 3);
        assert_eq!(conds.iter().map(|c| c.rows()).sum::<usize>(), 1 + 3 + 3);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_spec("scenario x\npoint p = (1, 2)\n", &no_files).is_err());
        assert!(parse_spec("scenario x\nclass D = 2Q +\n", &no_files).is_err());
        assert!(parse_spec("scenario x\nwobble = 3\n", &no_files).is_err());
        assert!(parse_spec("point p = (0,0,1)\n", &no_files).is_err());
        assert!(parse_spec("scenario x\npoint p = (0,0,1)\npoint p = (1,0,1)\n", &no_files).is_err());
        assert!(parse_spec("scenario x\nsystem C degree 2\n  at p multiplicity 1\n", &no_files).is_err());
    }
}
