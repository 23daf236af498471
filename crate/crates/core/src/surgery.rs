//! Connected sums, cutting along free invariant tori, and reduction.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::charring::VirtualCharacter;
use crate::error::{Error, Result};
use crate::fpdata::{AlphaData, FixedCircle, OddManifoldData, Sign};
use crate::localize::{quantize_odd3, Convention};

/// Glue `M1` and `M2` along spheres `S^2_{+l}` and `S^2_{-l}` whose poles
/// lie on the designated fixed circles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConSumSpec {
    pub left: String,
    pub right: String,
    pub l: i64,
}

/// One component of the reduced space `Z/S^1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeamRecord {
    pub mu: i64,
    pub a: i64,
}

/// A splitting hypersurface: which fixed circles lie on each side, and the
/// seam components created by the cut.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CutSpec {
    pub plus: Vec<String>,
    pub minus: Vec<String>,
    #[serde(default)]
    pub seam: Vec<SeamRecord>,
}

impl CutSpec {
    /// Checks the two sides partition the circles of `m`.
    pub fn validate_for(&self, m: &OddManifoldData) -> Result<()> {
        let mut seen = BTreeSet::new();
        for id in self.plus.iter().chain(&self.minus) {
            if m.circle(id).is_none() {
                return Err(Error::Spec(format!("cut refers to unknown circle {id:?}")));
            }
            if !seen.insert(id.as_str()) {
                return Err(Error::Spec(format!("circle {id:?} listed twice in cut")));
            }
        }
        if let Some(c) = m.circles().iter().find(|c| !seen.contains(c.id.as_str())) {
            return Err(Error::Spec(format!("circle {:?} is on neither side of the cut", c.id)));
        }
        Ok(())
    }
}

/// `id`, or `id` with primes appended until it is not in `taken`.
fn fresh_id(id: &str, taken: &BTreeSet<String>) -> String {
    let mut out = id.to_string();
    while taken.contains(&out) {
        out.push('\'');
    }
    out
}

/// Equivariant connected sum.
///
/// Untouched circles of both sides are kept (right-hand ids are primed on
/// collision). The designated circles merge into one circle with
/// `mu = mu_1 + mu_2`, `n = l`, the left circle's sign, and
/// `a = a_1 + a_2`.
pub fn connected_sum(m1: &OddManifoldData, m2: &OddManifoldData, spec: &ConSumSpec) -> Result<OddManifoldData> {
    if spec.l == 0 {
        return Err(Error::Spec("gluing speed l must be nonzero".into()));
    }
    let left = m1
        .circle(&spec.left)
        .ok_or_else(|| Error::Spec(format!("{:?} has no circle {:?}", m1.name(), spec.left)))?;
    let right = m2
        .circle(&spec.right)
        .ok_or_else(|| Error::Spec(format!("{:?} has no circle {:?}", m2.name(), spec.right)))?;
    for c in [left, right] {
        if c.n != spec.l {
            return Err(Error::Spec(format!(
                "circle {:?} has normal weight {} but the gluing sphere spins at l = {}",
                c.id, c.n, spec.l
            )));
        }
    }
    if left.sigma != right.sigma {
        log::warn!(
            "connected sum {:?} # {:?}: orientation signs of {:?} and {:?} disagree; keeping the left one",
            m1.name(),
            m2.name(),
            left.id,
            right.id
        );
    }

    let mut circles = Vec::new();
    let mut alpha = AlphaData::new();
    let mut taken = BTreeSet::new();
    let mut keep = |c: &FixedCircle, a: i64, circles: &mut Vec<FixedCircle>| {
        let id = fresh_id(&c.id, &taken);
        taken.insert(id.clone());
        if a != 0 {
            alpha.set(id.clone(), a);
        }
        circles.push(FixedCircle { id, ..c.clone() });
    };

    let merged = FixedCircle::new(
        format!("{}#{}", left.id, right.id),
        left.mu + right.mu,
        spec.l,
        left.sigma,
    );
    let merged_a = m1.alpha().get(&left.id) + m2.alpha().get(&right.id);
    keep(&merged, merged_a, &mut circles);
    for (c, a) in m1.weighted_circles().filter(|(c, _)| c.id != left.id) {
        keep(c, a, &mut circles);
    }
    for (c, a) in m2.weighted_circles().filter(|(c, _)| c.id != right.id) {
        keep(c, a, &mut circles);
    }
    OddManifoldData::new(format!("{}#{}", m1.name(), m2.name()), circles, alpha)
}

/// The correction character of a connected sum:
/// `(z^((l+mu1+mu2)/2) - z^((l+mu1)/2)) a1 + (z^((l+mu1+mu2)/2) - z^((l+mu2)/2)) a2`.
pub fn correction_d(mu1: i64, mu2: i64, a1: i64, a2: i64, l: i64) -> VirtualCharacter {
    VirtualCharacter::from_terms([
        (l + mu1 + mu2, a1 + a2),
        (l + mu1, -a1),
        (l + mu2, -a2),
    ])
}

/// Splits `m` along a free invariant hypersurface.
///
/// Each seam record becomes a circle `(mu, n = 1, a)` on both pieces, with
/// sign `+1` on the plus piece and `-1` on the minus piece, so seam terms
/// cancel in `Q(M+) + Q(M-)`.
pub fn cut_split(m: &OddManifoldData, spec: &CutSpec) -> Result<(OddManifoldData, OddManifoldData)> {
    spec.validate_for(m)?;
    let taken: BTreeSet<String> = m.circles().iter().map(|c| c.id.clone()).collect();
    let mut seam_ids = Vec::with_capacity(spec.seam.len());
    let mut all = taken.clone();
    for i in 0..spec.seam.len() {
        let id = fresh_id(&format!("Z{}", i + 1), &all);
        all.insert(id.clone());
        seam_ids.push(id);
    }

    let side = |ids: &[String], sigma: Sign, suffix: &str| -> Result<OddManifoldData> {
        let mut circles = Vec::new();
        let mut alpha = AlphaData::new();
        for id in ids {
            let c = m.circle(id).expect("validated");
            let a = m.alpha().get(id);
            if a != 0 {
                alpha.set(id.clone(), a);
            }
            circles.push(c.clone());
        }
        for (id, rec) in seam_ids.iter().zip(&spec.seam) {
            circles.push(FixedCircle::new(id.clone(), rec.mu, 1, sigma));
            if rec.a != 0 {
                alpha.set(id.clone(), rec.a);
            }
        }
        OddManifoldData::new(format!("{}{suffix}", m.name()), circles, alpha)
    };

    Ok((side(&spec.plus, Sign::Plus, "+")?, side(&spec.minus, Sign::Minus, "-")?))
}

/// Quantization of the reduced space, a disjoint union of circles, in
/// `K^1(S^1) = Z`: the sum of the seam degrees.
pub fn reduce_circles(spec: &CutSpec) -> i64 {
    spec.seam.iter().map(|r| r.a).sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QrReport {
    pub q_invariant: BigInt,
    pub q_reduced: i64,
    pub equal: bool,
}

impl QrReport {
    /// Line-oriented `name: value` rendering.
    pub fn render(&self) -> String {
        format!(
            "q_invariant: {}\nq_reduced: {}\nequal: {}\n",
            self.q_invariant, self.q_reduced, self.equal
        )
    }
}

/// Compares the invariant part of `Q(M)` with `Q(M_red)`; reports, does not
/// assert.
pub fn qr_report(m: &OddManifoldData, spec: &CutSpec, conv: Convention) -> Result<QrReport> {
    spec.validate_for(m)?;
    let q_invariant = quantize_odd3(m, conv)?.invariant_part();
    let q_reduced = reduce_circles(spec);
    let equal = q_invariant == BigInt::from(q_reduced);
    Ok(QrReport { q_invariant, q_reduced, equal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpdata::{generate, Family, Manifest};
    use crate::localize::{quantize_odd3_rational, CodimSign, NormalFactor};

    fn vc(s: &str) -> VirtualCharacter {
        s.parse().unwrap()
    }

    fn single(name: &str, id: &str, mu: i64, n: i64, a: i64) -> OddManifoldData {
        OddManifoldData::new(name, vec![FixedCircle::new(id, mu, n, Sign::Plus)], [(id, a)].into_iter().collect())
            .unwrap()
    }

    fn s2xs1(params: &[i64]) -> OddManifoldData {
        match generate(Family::S2xS1, params).unwrap() {
            Manifest::Odd(m) => m,
            _ => unreachable!(),
        }
    }

    #[test]
    fn merge_rules() {
        let m1 = single("M1", "F1", 2, 2, 1);
        let m2 = single("M2", "G1", 4, 2, 1);
        let spec = ConSumSpec { left: "F1".into(), right: "G1".into(), l: 2 };
        let sum = connected_sum(&m1, &m2, &spec).unwrap();
        assert_eq!(sum.circles().len(), 1);
        let c = &sum.circles()[0];
        assert_eq!((c.mu, c.n, c.sigma), (6, 2, Sign::Plus));
        assert_eq!(sum.alpha().get(&c.id), 2);

        let lhs = quantize_odd3(&sum, Convention::LITERAL).unwrap();
        let rhs = quantize_odd3(&m1, Convention::LITERAL).unwrap()
            + quantize_odd3(&m2, Convention::LITERAL).unwrap()
            + correction_d(2, 4, 1, 1, 2);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn vanishing_right_alpha() {
        let m1 = single("M1", "F1", 1, 3, 2);
        let m2 = single("M2", "G1", 5, 3, 0);
        let spec = ConSumSpec { left: "F1".into(), right: "G1".into(), l: 3 };
        let sum = connected_sum(&m1, &m2, &spec).unwrap();
        assert!(quantize_odd3(&m2, Convention::LITERAL).unwrap().is_zero());
        let lhs = quantize_odd3(&sum, Convention::LITERAL).unwrap();
        let rhs = quantize_odd3(&m1, Convention::LITERAL).unwrap() + correction_d(1, 5, 2, 0, 3);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn consum_spec_errors() {
        let m1 = single("M1", "F1", 2, 2, 1);
        let m2 = single("M2", "G1", 4, 2, 1);
        let bad = [
            ConSumSpec { left: "X".into(), right: "G1".into(), l: 2 },
            ConSumSpec { left: "F1".into(), right: "X".into(), l: 2 },
            ConSumSpec { left: "F1".into(), right: "G1".into(), l: 3 },
            ConSumSpec { left: "F1".into(), right: "G1".into(), l: 0 },
        ];
        for spec in bad {
            assert!(matches!(connected_sum(&m1, &m2, &spec), Err(Error::Spec(_))), "{spec:?}");
        }
    }

    #[test]
    fn colliding_ids_are_primed() {
        let m = s2xs1(&[1, 3, -3, 1]);
        let spec = ConSumSpec { left: "N".into(), right: "N".into(), l: 1 };
        let sum = connected_sum(&m, &m, &spec).unwrap();
        let ids: Vec<&str> = sum.circles().iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids, ["N#N", "S", "S'"]);
    }

    #[test]
    fn correction_examples() {
        assert_eq!(correction_d(2, 4, 1, 1, 2), vc("2*z^4 - z^2 - z^3"));
        assert!(correction_d(3, 0, 5, 0, 1).is_zero());
        assert!(correction_d(7, -3, 0, 0, 2).is_zero());
    }

    #[test]
    fn t3_pattern_pieces_are_opposite() {
        let t3 = OddManifoldData::new("T3", vec![], AlphaData::new()).unwrap();
        let spec = CutSpec {
            plus: vec![],
            minus: vec![],
            seam: vec![SeamRecord { mu: 1, a: 2 }, SeamRecord { mu: -1, a: 3 }],
        };
        let (p, m) = cut_split(&t3, &spec).unwrap();
        assert_eq!(p.circles().len(), 2);
        assert!(p.circles().iter().all(|c| c.sigma == Sign::Plus));
        assert!(m.circles().iter().all(|c| c.sigma == Sign::Minus));
        for conv in Convention::ALL {
            let qp = quantize_odd3_rational(&p, conv);
            let qm = quantize_odd3_rational(&m, conv);
            assert_eq!(qp, -qm, "{conv}");
        }
        let literal = quantize_odd3(&p, Convention::LITERAL).unwrap();
        assert_eq!(literal, -quantize_odd3(&m, Convention::LITERAL).unwrap());
        assert!(!literal.is_zero());
    }

    #[test]
    fn additivity_on_s2xs1() {
        let m = s2xs1(&[1, 3, -3, 1]);
        let spec = CutSpec {
            plus: vec!["N".into()],
            minus: vec!["S".into()],
            seam: vec![SeamRecord { mu: 0, a: 4 }],
        };
        let (p, q) = cut_split(&m, &spec).unwrap();
        for conv in Convention::ALL {
            let whole = quantize_odd3_rational(&m, conv);
            assert_eq!(whole, quantize_odd3_rational(&p, conv) + quantize_odd3_rational(&q, conv));
        }
        // Without seams the pieces are plain sub-collections.
        let plain = CutSpec { plus: vec!["N".into()], minus: vec!["S".into()], seam: vec![] };
        let (p, q) = cut_split(&m, &plain).unwrap();
        let conv = Convention::new(NormalFactor::Literal, CodimSign::On);
        assert_eq!(
            quantize_odd3(&m, conv).unwrap(),
            quantize_odd3(&p, conv).unwrap() + quantize_odd3(&q, conv).unwrap()
        );
    }

    #[test]
    fn cut_spec_errors() {
        let m = s2xs1(&[1, 3, -3, 1]);
        let bad = [
            CutSpec { plus: vec!["N".into()], minus: vec![], seam: vec![] },
            CutSpec { plus: vec!["N".into(), "S".into()], minus: vec!["S".into()], seam: vec![] },
            CutSpec { plus: vec!["N".into(), "S".into(), "X".into()], minus: vec![], seam: vec![] },
        ];
        for spec in bad {
            assert!(matches!(cut_split(&m, &spec), Err(Error::Spec(_))));
        }
    }

    #[test]
    fn reduction() {
        let spec = CutSpec {
            plus: vec![],
            minus: vec![],
            seam: vec![SeamRecord { mu: 0, a: 3 }, SeamRecord { mu: 2, a: -1 }],
        };
        assert_eq!(reduce_circles(&spec), 2);
        assert_eq!(reduce_circles(&CutSpec::default()), 0);
    }

    #[test]
    fn qr_reports() {
        let empty = OddManifoldData::new("empty", vec![], AlphaData::new()).unwrap();
        let r = qr_report(&empty, &CutSpec::default(), Convention::LITERAL).unwrap();
        assert_eq!(r, QrReport { q_invariant: 0.into(), q_reduced: 0, equal: true });

        let m = s2xs1(&[1, 3, -3, 1]);
        for d in [-1, 0, 5] {
            let spec = CutSpec {
                plus: vec!["N".into(), "S".into()],
                minus: vec![],
                seam: vec![SeamRecord { mu: 1, a: d }],
            };
            let r = qr_report(&m, &spec, Convention::EULER).unwrap();
            assert_eq!(r.q_invariant, BigInt::from(-1));
            assert_eq!(r.q_reduced, d);
            assert_eq!(r.equal, d == -1);
        }
        assert_eq!(
            QrReport { q_invariant: 0.into(), q_reduced: 0, equal: true }.render(),
            "q_invariant: 0\nq_reduced: 0\nequal: true\n"
        );
    }
}
