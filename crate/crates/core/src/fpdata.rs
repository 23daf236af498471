//! Fixed-point descriptions of circle manifolds and their manifest format.
//!
//! Odd (three-dimensional) manifolds are described by their fixed circles
//! and the integrals `a_F` of an invariant class `alpha` over them; even
//! manifolds by isolated fixed points with rotation weights.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Orientation sign of a fixed component, `+1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl TryFrom<i64> for Sign {
    type Error = String;

    fn try_from(v: i64) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(format!("sigma must be 1 or -1, got {other}")),
        }
    }
}

impl From<Sign> for i64 {
    fn from(s: Sign) -> i64 {
        s.value()
    }
}

/// A fixed circle `F` with determinant weight `mu`, normal weight `n` and
/// orientation sign.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixedCircle {
    pub id: String,
    pub mu: i64,
    pub n: i64,
    pub sigma: Sign,
}

impl FixedCircle {
    pub fn new(id: impl Into<String>, mu: i64, n: i64, sigma: Sign) -> Self {
        Self { id: id.into(), mu, n, sigma }
    }
}

/// Integrals of `alpha` over fixed circles; an absent id means zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AlphaData(BTreeMap<String, i64>);

impl AlphaData {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, id: &str) -> i64 {
        self.0.get(id).copied().unwrap_or(0)
    }

    pub fn set(&mut self, id: impl Into<String>, a: i64) {
        self.0.insert(id.into(), a);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, i64)> + '_ {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// Pointwise sum over the union of keys.
    pub fn plus(&self, other: &AlphaData) -> AlphaData {
        let mut out = self.clone();
        for (k, v) in other.iter() {
            *out.0.entry(k.to_string()).or_insert(0) += v;
        }
        out
    }
}

impl<K: Into<String>> FromIterator<(K, i64)> for AlphaData {
    fn from_iter<I: IntoIterator<Item = (K, i64)>>(iter: I) -> Self {
        Self(iter.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }
}

/// Fixed-point data of a closed three-manifold with circle action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddManifoldData {
    name: String,
    circles: Vec<FixedCircle>,
    alpha: AlphaData,
}

impl OddManifoldData {
    pub fn new(name: impl Into<String>, circles: Vec<FixedCircle>, alpha: AlphaData) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for c in &circles {
            if !seen.insert(c.id.as_str()) {
                return Err(Error::Validation(format!("duplicate circle id {:?}", c.id)));
            }
            if c.n == 0 {
                return Err(Error::Validation(format!("circle {:?} has normal weight 0", c.id)));
            }
        }
        if let Some((k, _)) = alpha.iter().find(|(k, _)| !seen.contains(k)) {
            return Err(Error::Validation(format!("alpha refers to unknown circle {k:?}")));
        }
        Ok(Self { name: name.into(), circles, alpha })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn circles(&self) -> &[FixedCircle] {
        &self.circles
    }

    pub fn alpha(&self) -> &AlphaData {
        &self.alpha
    }

    pub fn circle(&self, id: &str) -> Option<&FixedCircle> {
        self.circles.iter().find(|c| c.id == id)
    }

    /// Same circles, different alpha.
    pub fn with_alpha(&self, alpha: AlphaData) -> Result<Self> {
        Self::new(self.name.clone(), self.circles.clone(), alpha)
    }

    /// Circles paired with their alpha integral.
    pub fn weighted_circles(&self) -> impl Iterator<Item = (&FixedCircle, i64)> + '_ {
        self.circles.iter().map(|c| (c, self.alpha.get(&c.id)))
    }
}

/// An isolated fixed point with determinant weight `mu` and one rotation
/// weight per complex normal plane.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IsolatedFixedPoint {
    pub id: String,
    pub mu: i64,
    pub weights: Vec<i64>,
    pub sigma: Sign,
}

impl IsolatedFixedPoint {
    pub fn new(id: impl Into<String>, mu: i64, weights: Vec<i64>, sigma: Sign) -> Result<Self> {
        let p = Self { id: id.into(), mu, weights, sigma };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        if self.weights.is_empty() {
            return Err(Error::Validation(format!("point {:?} has no weights", self.id)));
        }
        if self.weights.contains(&0) {
            return Err(Error::Validation(format!("point {:?} has a zero weight", self.id)));
        }
        let total: i64 = self.mu + self.weights.iter().sum::<i64>();
        if total % 2 != 0 {
            return Err(Error::Validation(format!(
                "point {:?} violates Spin^c parity: mu + sum(weights) = {total} is odd",
                self.id
            )));
        }
        Ok(())
    }
}

/// Fixed-point data of a closed `2n`-manifold with isolated fixed points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenManifoldData {
    name: String,
    half_dim: u32,
    points: Vec<IsolatedFixedPoint>,
}

impl EvenManifoldData {
    pub fn new(name: impl Into<String>, half_dim: u32, points: Vec<IsolatedFixedPoint>) -> Result<Self> {
        if half_dim == 0 {
            return Err(Error::Validation("half_dim must be positive".into()));
        }
        let mut seen = BTreeSet::new();
        for p in &points {
            p.validate()?;
            if p.weights.len() != half_dim as usize {
                return Err(Error::Validation(format!(
                    "point {:?} has {} weights, expected {half_dim}",
                    p.id,
                    p.weights.len()
                )));
            }
            if !seen.insert(p.id.as_str()) {
                return Err(Error::Validation(format!("duplicate point id {:?}", p.id)));
            }
        }
        Ok(Self { name: name.into(), half_dim, points })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn half_dim(&self) -> u32 {
        self.half_dim
    }

    pub fn points(&self) -> &[IsolatedFixedPoint] {
        &self.points
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Manifest {
    Odd(OddManifoldData),
    Even(EvenManifoldData),
}

impl Manifest {
    pub fn name(&self) -> &str {
        match self {
            Manifest::Odd(m) => m.name(),
            Manifest::Even(m) => m.name(),
        }
    }
}

impl From<OddManifoldData> for Manifest {
    fn from(m: OddManifoldData) -> Self {
        Manifest::Odd(m)
    }
}

impl From<EvenManifoldData> for Manifest {
    fn from(m: EvenManifoldData) -> Self {
        Manifest::Even(m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
enum Kind {
    #[serde(rename = "odd3")]
    Odd3,
    #[serde(rename = "even")]
    Even,
}

/// Wire form of a manifest. Field order here is the emitted order.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawManifest {
    name: String,
    kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    half_dim: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    circles: Option<Vec<FixedCircle>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    points: Option<Vec<IsolatedFixedPoint>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alpha: Option<AlphaData>,
}

/// Decodes and validates a JSON manifest.
pub fn parse_manifest(document: &str) -> Result<Manifest> {
    let raw: RawManifest = serde_json::from_str(document).map_err(|e| Error::Schema(e.to_string()))?;
    match raw.kind {
        Kind::Odd3 => {
            if raw.half_dim.is_some() || raw.points.is_some() {
                return Err(Error::Schema("odd3 manifest must not carry half_dim or points".into()));
            }
            let circles = raw.circles.ok_or_else(|| Error::Schema("odd3 manifest needs circles".into()))?;
            Ok(OddManifoldData::new(raw.name, circles, raw.alpha.unwrap_or_default())?.into())
        }
        Kind::Even => {
            if raw.circles.is_some() || raw.alpha.is_some() {
                return Err(Error::Schema("even manifest must not carry circles or alpha".into()));
            }
            let half_dim = raw.half_dim.ok_or_else(|| Error::Schema("even manifest needs half_dim".into()))?;
            let points = raw.points.ok_or_else(|| Error::Schema("even manifest needs points".into()))?;
            Ok(EvenManifoldData::new(raw.name, half_dim, points)?.into())
        }
    }
}

/// Pretty-printed JSON with a trailing newline; deterministic.
pub fn emit_manifest(m: &Manifest) -> String {
    let raw = match m {
        Manifest::Odd(m) => RawManifest {
            name: m.name.clone(),
            kind: Kind::Odd3,
            half_dim: None,
            circles: Some(m.circles.clone()),
            points: None,
            alpha: Some(m.alpha.clone()),
        },
        Manifest::Even(m) => RawManifest {
            name: m.name.clone(),
            kind: Kind::Even,
            half_dim: Some(m.half_dim),
            circles: None,
            points: Some(m.points.clone()),
            alpha: None,
        },
    };
    let mut out = serde_json::to_string_pretty(&raw).expect("manifest serialization is infallible");
    out.push('\n');
    out
}

/// Named example families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `S^2` rotated at speed `l`: params `(l, mu_N, mu_S)`.
    Sphere,
    /// `S^2 x S^1` with `alpha` integrating to `a` on both fixed circles:
    /// params `(l, mu_N, mu_S, a)`.
    S2xS1,
    /// `S^3` with action `(z^n1, z^n2)`: params `(n1, n2, mu)`.
    S3,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sphere" => Ok(Family::Sphere),
            "s2xs1" => Ok(Family::S2xS1),
            "s3" => Ok(Family::S3),
            other => Err(Error::BadParams(format!("unknown family {other:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Sphere => "sphere",
            Family::S2xS1 => "s2xs1",
            Family::S3 => "s3",
        })
    }
}

fn family_name(family: Family, params: &[i64]) -> String {
    let list: Vec<String> = params.iter().map(i64::to_string).collect();
    format!("{family}({})", list.join(","))
}

fn check_sphere_params(l: i64, mu_n: i64, mu_s: i64) -> Result<()> {
    if l < 1 {
        return Err(Error::BadParams(format!("speed l must be >= 1, got {l}")));
    }
    if (mu_n - l) % 2 != 0 || (mu_s - l) % 2 != 0 {
        return Err(Error::BadParams(format!(
            "mu_N = {mu_n} and mu_S = {mu_s} must both have the parity of l = {l}"
        )));
    }
    Ok(())
}

/// Builds the fixed-point data of a named family.
///
/// Spheres carry weight `+l` at the north pole and `-l` at the south pole,
/// both with orientation sign `+1`.
pub fn generate(family: Family, params: &[i64]) -> Result<Manifest> {
    let arity = match family {
        Family::Sphere | Family::S3 => 3,
        Family::S2xS1 => 4,
    };
    if params.len() != arity {
        return Err(Error::BadParams(format!("{family} takes {arity} parameters, got {}", params.len())));
    }
    let name = family_name(family, params);
    match family {
        Family::Sphere => {
            let (l, mu_n, mu_s) = (params[0], params[1], params[2]);
            check_sphere_params(l, mu_n, mu_s)?;
            let points = vec![
                IsolatedFixedPoint::new("N", mu_n, vec![l], Sign::Plus)?,
                IsolatedFixedPoint::new("S", mu_s, vec![-l], Sign::Plus)?,
            ];
            Ok(EvenManifoldData::new(name, 1, points)?.into())
        }
        Family::S2xS1 => {
            let (l, mu_n, mu_s, a) = (params[0], params[1], params[2], params[3]);
            check_sphere_params(l, mu_n, mu_s)?;
            let circles = vec![
                FixedCircle::new("N", mu_n, l, Sign::Plus),
                FixedCircle::new("S", mu_s, -l, Sign::Plus),
            ];
            let alpha = [("N", a), ("S", a)].into_iter().collect();
            Ok(OddManifoldData::new(name, circles, alpha)?.into())
        }
        Family::S3 => {
            let (n1, n2, mu) = (params[0], params[1], params[2]);
            let circles = match (n1, n2) {
                (0, 0) => return Err(Error::BadParams("s3 needs (n1, n2) != (0, 0)".into())),
                (0, n) | (n, 0) => vec![FixedCircle::new("F", mu, n, Sign::Plus)],
                _ => Vec::new(),
            };
            Ok(OddManifoldData::new(name, circles, AlphaData::new())?.into())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decodes_odd_manifest() {
        let doc = r#"{"name":"m","kind":"odd3","circles":[{"id":"F1","mu":1,"n":1,"sigma":1}],"alpha":{"F1":3}}"#;
        let Manifest::Odd(m) = parse_manifest(doc).unwrap() else { panic!("expected odd") };
        assert_eq!(m.alpha().get("F1"), 3);
        assert_eq!(m.circles()[0], FixedCircle::new("F1", 1, 1, Sign::Plus));
    }

    #[test]
    fn spin_c_parity() {
        let ok = r#"{"name":"p","kind":"even","half_dim":1,"points":[{"id":"p","mu":1,"weights":[1],"sigma":1}]}"#;
        assert!(parse_manifest(ok).is_ok());
        let bad = r#"{"name":"p","kind":"even","half_dim":1,"points":[{"id":"p","mu":0,"weights":[1],"sigma":1}]}"#;
        assert!(matches!(parse_manifest(bad), Err(Error::Validation(_))));
    }

    #[test]
    fn schema_errors() {
        let cases = [
            "not json",
            r#"{"name":"m","kind":"odd3","circles":[],"extra":1}"#,
            r#"{"name":"m","kind":"odd3","circles":[{"id":"F","mu":1,"n":1,"sigma":2}]}"#,
            r#"{"name":"m","kind":"odd3","circles":[{"id":"F","mu":1,"n":1,"sigma":1,"x":0}]}"#,
            r#"{"name":"m","kind":"odd4","circles":[]}"#,
            r#"{"name":"m","kind":"odd3"}"#,
            r#"{"name":"m","kind":"odd3","circles":[],"half_dim":1}"#,
            r#"{"name":"m","kind":"even","half_dim":1,"points":[],"alpha":{}}"#,
            r#"{"name":"m","kind":"even","points":[]}"#,
        ];
        for doc in cases {
            assert!(matches!(parse_manifest(doc), Err(Error::Schema(_))), "{doc}");
        }
    }

    #[test]
    fn validation_errors() {
        let cases = [
            r#"{"name":"m","kind":"odd3","circles":[{"id":"F","mu":1,"n":0,"sigma":1}]}"#,
            r#"{"name":"m","kind":"odd3","circles":[{"id":"F","mu":1,"n":1,"sigma":1},{"id":"F","mu":1,"n":1,"sigma":1}]}"#,
            r#"{"name":"m","kind":"odd3","circles":[],"alpha":{"G":1}}"#,
            r#"{"name":"m","kind":"even","half_dim":1,"points":[{"id":"p","mu":0,"weights":[0],"sigma":1}]}"#,
            r#"{"name":"m","kind":"even","half_dim":2,"points":[{"id":"p","mu":0,"weights":[2],"sigma":1}]}"#,
            r#"{"name":"m","kind":"even","half_dim":0,"points":[]}"#,
        ];
        for doc in cases {
            assert!(matches!(parse_manifest(doc), Err(Error::Validation(_))), "{doc}");
        }
    }

    #[test]
    fn emit_then_parse() {
        for m in [
            generate(Family::Sphere, &[1, 3, -3]).unwrap(),
            generate(Family::S2xS1, &[1, 3, -3, 1]).unwrap(),
            generate(Family::S3, &[0, 2, 5]).unwrap(),
        ] {
            assert_eq!(parse_manifest(&emit_manifest(&m)).unwrap(), m);
        }
    }

    #[test]
    fn generators() {
        let Manifest::Even(s) = generate(Family::Sphere, &[1, 3, -3]).unwrap() else { panic!() };
        assert_eq!(s.points()[0].weights, vec![1]);
        assert_eq!(s.points()[1].weights, vec![-1]);

        let Manifest::Odd(s3) = generate(Family::S3, &[2, 3, 0]).unwrap() else { panic!() };
        assert!(s3.circles().is_empty());

        let Manifest::Odd(one) = generate(Family::S3, &[0, -4, 1]).unwrap() else { panic!() };
        assert_eq!(one.circles(), &[FixedCircle::new("F", 1, -4, Sign::Plus)]);

        let Manifest::Odd(p) = generate(Family::S2xS1, &[1, 3, -3, 1]).unwrap() else { panic!() };
        assert_eq!(
            p.circles(),
            &[FixedCircle::new("N", 3, 1, Sign::Plus), FixedCircle::new("S", -3, -1, Sign::Plus)]
        );
        assert_eq!((p.alpha().get("N"), p.alpha().get("S")), (1, 1));
    }

    #[test]
    fn generator_params_are_checked() {
        assert!(matches!(generate(Family::Sphere, &[0, 0, 0]), Err(Error::BadParams(_))));
        assert!(matches!(generate(Family::Sphere, &[1, 2, -3]), Err(Error::BadParams(_))));
        assert!(matches!(generate(Family::S2xS1, &[2, 2, 1, 1]), Err(Error::BadParams(_))));
        assert!(matches!(generate(Family::S3, &[0, 0, 1]), Err(Error::BadParams(_))));
        assert!(matches!(generate(Family::S3, &[1, 1]), Err(Error::BadParams(_))));
        assert!("torus".parse::<Family>().is_err());
    }
}
