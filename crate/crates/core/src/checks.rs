//! Seeded randomized suites for the structural identities.
//!
//! Every suite is deterministic in its seed: per-case sub-seeds are drawn
//! sequentially from one ChaCha stream, cases are evaluated in parallel,
//! and failures are reported in case order.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::charring::{RationalCharacter, VirtualCharacter};
use crate::error::Error;
use crate::fpdata::{
    generate, AlphaData, EvenManifoldData, Family, FixedCircle, IsolatedFixedPoint, Manifest, OddManifoldData, Sign,
};
use crate::localize::{
    even_rational_sum, quantize_even_isolated, quantize_odd3, quantize_odd3_rational, up_surface_to_3, Convention,
};
use crate::surgery::{connected_sum, correction_d, cut_split, qr_report, ConSumSpec, CutSpec, QrReport, SeamRecord};

pub const DEFAULT_SEED: u64 = 20_240_607;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Ring,
    Linearity,
    UpDown,
    ConSum,
    Additivity,
    Integrality,
    S3Zero,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Ring,
        Suite::Linearity,
        Suite::UpDown,
        Suite::ConSum,
        Suite::Additivity,
        Suite::Integrality,
        Suite::S3Zero,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Ring => "ring",
            Suite::Linearity => "linearity",
            Suite::UpDown => "updown",
            Suite::ConSum => "consum",
            Suite::Additivity => "additivity",
            Suite::Integrality => "integrality",
            Suite::S3Zero => "s3zero",
        }
    }

    pub fn default_cases(self) -> usize {
        match self {
            Suite::Ring => 200,
            Suite::Linearity | Suite::ConSum | Suite::Additivity => 100,
            Suite::UpDown | Suite::Integrality | Suite::S3Zero => 50,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    /// Short description of the case inputs.
    pub inputs: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub check_name: String,
    pub seed: u64,
    pub cases_run: usize,
    pub failures: Vec<Failure>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// `name: value` lines ending in `result: pass|fail`.
    pub fn render(&self) -> String {
        let mut out = format!(
            "check: {}\nseed: {}\ncases: {}\nfailures: {}\n",
            self.check_name,
            self.seed,
            self.cases_run,
            self.failures.len()
        );
        for f in &self.failures {
            out.push_str(&format!(
                "failure: inputs={} expected={} actual={}\n",
                f.inputs, f.expected, f.actual
            ));
        }
        out.push_str(if self.passed() { "result: pass\n" } else { "result: fail\n" });
        out
    }
}

/// Collects mismatches for one case.
struct Case {
    inputs: String,
    failures: Vec<Failure>,
}

impl Case {
    fn new(inputs: String) -> Self {
        Self { inputs, failures: Vec::new() }
    }

    fn expect_eq<T: PartialEq + fmt::Display>(&mut self, what: &str, expected: &T, actual: &T) {
        if expected != actual {
            self.fail(what, expected.to_string(), actual.to_string());
        }
    }

    fn fail(&mut self, what: &str, expected: String, actual: String) {
        self.failures.push(Failure { inputs: format!("{} [{what}]", self.inputs), expected, actual });
    }

    /// Unwraps `r`, recording the error as a failure.
    fn ok<T>(&mut self, what: &str, r: crate::Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.fail(what, "ok".into(), e.to_string());
                None
            }
        }
    }
}

struct Rational<'a>(&'a RationalCharacter);

impl fmt::Display for Rational<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.0.numerator(), self.0.denominator())
    }
}

impl PartialEq for Rational<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

pub fn run_suite(suite: Suite, seed: u64, cases: usize) -> CheckReport {
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let seeds: Vec<u64> = (0..cases).map(|_| master.gen()).collect();
    let case_fn: fn(usize, &mut ChaCha8Rng) -> Case = match suite {
        Suite::Ring => ring_case,
        Suite::Linearity => linearity_case,
        Suite::UpDown => updown_case,
        Suite::ConSum => consum_case,
        Suite::Additivity => additivity_case,
        Suite::Integrality => integrality_case,
        Suite::S3Zero => s3zero_case,
    };
    let per_case: Vec<Vec<Failure>> = seeds
        .par_iter()
        .enumerate()
        .map(|(i, s)| case_fn(i, &mut ChaCha8Rng::seed_from_u64(*s)).failures)
        .collect();
    CheckReport {
        check_name: suite.name().to_string(),
        seed,
        cases_run: cases,
        failures: per_case.into_iter().flatten().collect(),
    }
}

/// Random generators shared by the suites and by tests.
pub mod gen {
    use super::*;

    /// Up to 20 terms, `s`-exponents in `[-40, 40]`, coefficients in
    /// `[-100, 100]`.
    pub fn character(rng: &mut impl Rng) -> VirtualCharacter {
        let n = rng.gen_range(0..=20);
        VirtualCharacter::from_terms((0..n).map(|_| (rng.gen_range(-40..=40), rng.gen_range(-100i64..=100))))
    }

    pub fn sign(rng: &mut impl Rng) -> Sign {
        if rng.gen_bool(0.5) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn nonzero(rng: &mut impl Rng, bound: i64) -> i64 {
        let v = rng.gen_range(1..=bound);
        if rng.gen_bool(0.5) {
            v
        } else {
            -v
        }
    }

    pub fn circle(rng: &mut impl Rng, id: String) -> FixedCircle {
        FixedCircle::new(id, rng.gen_range(-20..=20), nonzero(rng, 6), sign(rng))
    }

    pub fn alpha_for(rng: &mut impl Rng, circles: &[FixedCircle]) -> AlphaData {
        let mut alpha = AlphaData::new();
        for c in circles {
            if rng.gen_bool(0.8) {
                alpha.set(c.id.clone(), rng.gen_range(-10..=10));
            }
        }
        alpha
    }

    /// One to six circles named `{prefix}1..`.
    pub fn odd_manifold(rng: &mut impl Rng, prefix: &str) -> OddManifoldData {
        let k = rng.gen_range(1..=6);
        let circles: Vec<FixedCircle> = (1..=k).map(|i| circle(rng, format!("{prefix}{i}"))).collect();
        let alpha = alpha_for(rng, &circles);
        OddManifoldData::new(format!("rand-{prefix}"), circles, alpha).expect("generated data is valid")
    }

    /// Sphere parameters `(l, mu_N, mu_S)` with `1 <= l <= 5`, `|mu| <= 15`,
    /// matching parity and `2l | mu_N - mu_S`.
    pub fn sphere_params(rng: &mut impl Rng) -> [i64; 3] {
        let l = rng.gen_range(1..=5);
        let choices: Vec<i64> = (-15..=15).filter(|m: &i64| (m - l) % 2 == 0).collect();
        let mu_s = choices[rng.gen_range(0..choices.len())];
        let targets: Vec<i64> = (-15..=15).filter(|m: &i64| (m - mu_s) % (2 * l) == 0).collect();
        let mu_n = targets[rng.gen_range(0..targets.len())];
        [l, mu_n, mu_s]
    }

    pub fn sphere(params: [i64; 3]) -> EvenManifoldData {
        match generate(Family::Sphere, &params).expect("sphere params are valid") {
            Manifest::Even(m) => m,
            Manifest::Odd(_) => unreachable!("sphere generator yields even data"),
        }
    }

    /// A manifold whose circle `{prefix}1` can be glued at speed `l`: normal
    /// weight `l`, sign `+1`, and `mu + l` even.
    pub fn gluable(rng: &mut impl Rng, prefix: &str, l: i64) -> OddManifoldData {
        let mut m = odd_manifold(rng, prefix);
        let mut circles = m.circles().to_vec();
        let mu = 2 * rng.gen_range(-10..=10) + l.rem_euclid(2);
        circles[0] = FixedCircle::new(format!("{prefix}1"), mu, l, Sign::Plus);
        let mut alpha = m.alpha().clone();
        alpha.set(format!("{prefix}1"), rng.gen_range(-10..=10));
        m = OddManifoldData::new(m.name().to_string(), circles, alpha).expect("generated data is valid");
        m
    }

    pub fn seam(rng: &mut impl Rng, max: usize) -> Vec<SeamRecord> {
        let k = rng.gen_range(0..=max);
        (0..k)
            .map(|_| SeamRecord { mu: rng.gen_range(-20..=20), a: rng.gen_range(-10..=10) })
            .collect()
    }

    pub fn cut(rng: &mut impl Rng, m: &OddManifoldData) -> CutSpec {
        let mut spec = CutSpec::default();
        for c in m.circles() {
            if rng.gen_bool(0.5) {
                spec.plus.push(c.id.clone());
            } else {
                spec.minus.push(c.id.clone());
            }
        }
        spec.seam = seam(rng, 3);
        spec
    }
}

fn describe_odd(m: &OddManifoldData) -> String {
    let circles: Vec<String> = m
        .weighted_circles()
        .map(|(c, a)| format!("{}:({},{},{:+},a={a})", c.id, c.mu, c.n, c.sigma.value()))
        .collect();
    format!("{{{}}}", circles.join(" "))
}

fn ring_case(i: usize, rng: &mut ChaCha8Rng) -> Case {
    let (a, b, c) = (gen::character(rng), gen::character(rng), gen::character(rng));
    let mut case = Case::new(format!("case {i}: a={a}; b={b}; c={c}"));
    let zero = VirtualCharacter::zero();
    let one = VirtualCharacter::one();
    case.expect_eq("add assoc", &(&(&a + &b) + &c), &(&a + &(&b + &c)));
    case.expect_eq("mul assoc", &(&(&a * &b) * &c), &(&a * &(&b * &c)));
    case.expect_eq("add comm", &(&a + &b), &(&b + &a));
    case.expect_eq("mul comm", &(&a * &b), &(&b * &a));
    case.expect_eq("distrib", &(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c)));
    case.expect_eq("add identity", &a, &(&a + &zero));
    case.expect_eq("mul identity", &a, &(&a * &one));
    case.expect_eq("add inverse", &zero, &(&a + &(-&a)));
    if !b.is_zero() {
        let q = case.ok("quotient", (&a * &b).exact_quotient(&b));
        if let Some(q) = q {
            case.expect_eq("quotient", &a, &q);
        }
    }
    case.expect_eq(
        "invariant part additive",
        &(a.invariant_part() + b.invariant_part()),
        &(&a + &b).invariant_part(),
    );
    let reparsed = case.ok("parse", a.to_string().parse::<VirtualCharacter>());
    if let Some(r) = reparsed {
        case.expect_eq("parse", &a, &r);
    }
    case
}

fn linearity_case(i: usize, rng: &mut ChaCha8Rng) -> Case {
    let m = gen::odd_manifold(rng, "F");
    let a1 = gen::alpha_for(rng, m.circles());
    let a2 = gen::alpha_for(rng, m.circles());
    let m1 = m.with_alpha(a1.clone()).expect("same circles");
    let m2 = m.with_alpha(a2.clone()).expect("same circles");
    let m12 = m.with_alpha(a1.plus(&a2)).expect("same circles");
    let mut case = Case::new(format!("case {i}: {} + {}", describe_odd(&m1), describe_odd(&m2)));
    for conv in Convention::ALL {
        let sum = quantize_odd3_rational(&m1, conv) + quantize_odd3_rational(&m2, conv);
        let whole = quantize_odd3_rational(&m12, conv);
        case.expect_eq(&format!("linearity {conv}"), &Rational(&sum), &Rational(&whole));
    }
    case
}

fn updown_case(i: usize, rng: &mut ChaCha8Rng) -> Case {
    let params = gen::sphere_params(rng);
    let [_, mu_n, mu_s] = params;
    let sphere = gen::sphere(params);
    let mut case = Case::new(format!("case {i}: {}", sphere.name()));
    let even = case.ok("even formula", quantize_even_isolated(&sphere));
    let odd = case
        .ok("up map", up_surface_to_3(&sphere))
        .and_then(|up| case.ok("odd formula", quantize_odd3(&up, Convention::EULER)));
    if let (Some(even), Some(odd)) = (even, odd) {
        case.expect_eq("even = odd(up)", &even, &odd);
        if mu_n != mu_s && even.is_zero() {
            case.fail("nontrivial", "nonzero".into(), even.to_string());
        }
    }
    case
}

fn integrality_case(i: usize, rng: &mut ChaCha8Rng) -> Case {
    let params = gen::sphere_params(rng);
    let [l, mu_n, _] = params;
    let sphere = gen::sphere(params);
    let mut case = Case::new(format!("case {i}: {}", sphere.name()));
    let sum = even_rational_sum(&sphere);
    if let Some(q) = case.ok("exact quotient", sum.to_virtual()) {
        if !q.is_integral() {
            case.fail("integral", "even s-exponents".into(), q.to_string());
        }
        case.expect_eq("quotient times denominator", &Rational(&sum), &Rational(&q.into()));
    }
    match IsolatedFixedPoint::new("N", mu_n + 1, vec![l], Sign::Plus) {
        Err(Error::Validation(_)) => {}
        other => case.fail("parity break", "validation error".into(), format!("{other:?}")),
    }
    let lone = EvenManifoldData::new("lone", 1, sphere.points()[..1].to_vec()).expect("subset of valid data");
    match quantize_even_isolated(&lone) {
        Err(Error::NotDivisible(_)) => {}
        other => case.fail("lone point", "NotDivisible".into(), format!("{other:?}")),
    }
    case
}

fn consum_case(i: usize, rng: &mut ChaCha8Rng) -> Case {
    let l = rng.gen_range(1..=6);
    let m1 = gen::gluable(rng, "F", l);
    let m2 = gen::gluable(rng, "G", l);
    let spec = ConSumSpec { left: "F1".into(), right: "G1".into(), l };
    let mut case = Case::new(format!("case {i}: l={l} {} # {}", describe_odd(&m1), describe_odd(&m2)));
    let conv = Convention::LITERAL;
    let (Some(sum), Some(swapped)) = (
        case.ok("connected sum", connected_sum(&m1, &m2, &spec)),
        case.ok(
            "connected sum swapped",
            connected_sum(&m2, &m1, &ConSumSpec { left: "G1".into(), right: "F1".into(), l }),
        ),
    ) else {
        return case;
    };
    let q = |m: &OddManifoldData| quantize_odd3(m, conv).expect("literal convention never divides");
    let (c1, c2) = (m1.circle("F1").unwrap(), m2.circle("G1").unwrap());
    let d = correction_d(c1.mu, c2.mu, m1.alpha().get("F1"), m2.alpha().get("G1"), l);
    let expected = q(&m1) + q(&m2) + d;
    case.expect_eq("Q(M1#M2) = Q(M1) + Q(M2) + D", &expected, &q(&sum));
    case.expect_eq("commutativity", &q(&sum), &q(&swapped));
    case
}

fn additivity_case(i: usize, rng: &mut ChaCha8Rng) -> Case {
    let m = gen::odd_manifold(rng, "F");
    let spec = gen::cut(rng, &m);
    let mut case = Case::new(format!("case {i}: {} cut {spec:?}", describe_odd(&m)));
    if let Some((p, q)) = case.ok("cut", cut_split(&m, &spec)) {
        for conv in Convention::ALL {
            let whole = quantize_odd3_rational(&m, conv);
            let parts = quantize_odd3_rational(&p, conv) + quantize_odd3_rational(&q, conv);
            case.expect_eq(&format!("additivity {conv}"), &Rational(&whole), &Rational(&parts));
        }
    }

    // Torus pattern: every fixed circle of the pieces comes from the seam.
    let empty = OddManifoldData::new("T3", vec![], AlphaData::new()).expect("empty data is valid");
    let seam = (0..2)
        .map(|_| SeamRecord { mu: rng.gen_range(-20..=20), a: rng.gen_range(-10..=10) })
        .collect();
    let t3 = CutSpec { plus: vec![], minus: vec![], seam };
    if let Some((p, q)) = case.ok("torus cut", cut_split(&empty, &t3)) {
        for conv in Convention::ALL {
            let qp = quantize_odd3_rational(&p, conv);
            let neg_qm = -quantize_odd3_rational(&q, conv);
            case.expect_eq(&format!("opposite pieces {conv}"), &Rational(&qp), &Rational(&neg_qm));
        }
    }
    case
}

fn s3zero_case(i: usize, rng: &mut ChaCha8Rng) -> Case {
    let (n1, n2, mu) = (gen::nonzero(rng, 9), gen::nonzero(rng, 9), rng.gen_range(-20..=20));
    let mut case = Case::new(format!("case {i}: s3({n1},{n2},{mu})"));
    let Some(Manifest::Odd(m)) = case.ok("generate", generate(Family::S3, &[n1, n2, mu])) else {
        return case;
    };
    for conv in Convention::ALL {
        if let Some(q) = case.ok("quantize", quantize_odd3(&m, conv)) {
            case.expect_eq(&format!("Q = 0 {conv}"), &VirtualCharacter::zero(), &q);
        }
    }
    // Any cut carries alpha restricting to zero on the reduced circles.
    let k = rng.gen_range(0..=2);
    let seam = (0..k).map(|_| SeamRecord { mu: rng.gen_range(-20..=20), a: 0 }).collect();
    let spec = CutSpec { plus: vec![], minus: vec![], seam };
    for conv in Convention::ALL {
        if let Some(r) = case.ok("qr", qr_report(&m, &spec, conv)) {
            let expected = QrReport { q_invariant: 0.into(), q_reduced: 0, equal: true };
            if r != expected {
                case.fail(&format!("qr {conv}"), expected.render(), r.render());
            }
        }
    }
    case
}
