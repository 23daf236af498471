//! Fixed-point character formulas.
//!
//! Characters are formal Laurent objects in `s = z^(1/2)`. A rotation weight
//! `w` contributes the local denominator `s^w - s^(-w)`; negative weights are
//! rewritten as `-(s^|w| - s^(-|w|))` so every denominator is a product of
//! binomials with positive exponents and the sign is carried in the
//! numerator.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::charring::{RationalCharacter, VirtualCharacter};
use crate::error::{Error, Result};
use crate::fpdata::{AlphaData, EvenManifoldData, FixedCircle, OddManifoldData};

/// How the normal bundle of a fixed circle enters the three-dimensional
/// formula.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum NormalFactor {
    /// The factor `z^(n/2)`.
    #[default]
    Literal,
    /// The factor `1 / (z^(n/2) - z^(-n/2))`.
    Euler,
}

/// Whether each fixed circle picks up the codimension sign `(-1)^m(F) = -1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum CodimSign {
    On,
    #[default]
    Off,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Convention {
    pub normal_factor: NormalFactor,
    pub codim_sign: CodimSign,
}

impl Convention {
    pub const LITERAL: Convention = Convention { normal_factor: NormalFactor::Literal, codim_sign: CodimSign::Off };
    pub const EULER: Convention = Convention { normal_factor: NormalFactor::Euler, codim_sign: CodimSign::On };

    pub const ALL: [Convention; 4] = [
        Convention { normal_factor: NormalFactor::Literal, codim_sign: CodimSign::Off },
        Convention { normal_factor: NormalFactor::Literal, codim_sign: CodimSign::On },
        Convention { normal_factor: NormalFactor::Euler, codim_sign: CodimSign::Off },
        Convention { normal_factor: NormalFactor::Euler, codim_sign: CodimSign::On },
    ];

    pub fn new(normal_factor: NormalFactor, codim_sign: CodimSign) -> Self {
        Self { normal_factor, codim_sign }
    }
}

impl fmt::Display for NormalFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NormalFactor::Literal => "literal",
            NormalFactor::Euler => "euler",
        })
    }
}

impl fmt::Display for CodimSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CodimSign::On => "on",
            CodimSign::Off => "off",
        })
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.normal_factor, self.codim_sign)
    }
}

impl FromStr for NormalFactor {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "literal" => Ok(NormalFactor::Literal),
            "euler" => Ok(NormalFactor::Euler),
            other => Err(format!("unknown normal factor {other:?}")),
        }
    }
}

impl FromStr for CodimSign {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "on" => Ok(CodimSign::On),
            "off" => Ok(CodimSign::Off),
            other => Err(format!("unknown codim sign {other:?}")),
        }
    }
}

/// `1 / (s^w - s^(-w))` as `(sign, s^|w| - s^(-|w|))`.
fn local_denominator(w: i64) -> (i64, VirtualCharacter) {
    (w.signum(), VirtualCharacter::weyl_binomial(w.abs()))
}

fn circle_term(c: &FixedCircle, a: i64, conv: Convention) -> RationalCharacter {
    let mut coeff = c.sigma.value() * a;
    if conv.codim_sign == CodimSign::On {
        coeff = -coeff;
    }
    match conv.normal_factor {
        NormalFactor::Literal => VirtualCharacter::monomial(c.mu + c.n, coeff).into(),
        NormalFactor::Euler => {
            let (sign, den) = local_denominator(c.n);
            RationalCharacter::new(VirtualCharacter::monomial(c.mu, coeff * sign), den)
                .expect("weyl binomial of a nonzero weight is nonzero")
        }
    }
}

/// The three-dimensional formula as an unreduced fraction.
///
/// Under the literal convention the denominator is `1`. Circles with
/// `a_F = 0` contribute nothing and are skipped.
pub fn quantize_odd3_rational(m: &OddManifoldData, conv: Convention) -> RationalCharacter {
    m.weighted_circles()
        .filter(|(_, a)| *a != 0)
        .map(|(c, a)| circle_term(c, a, conv))
        .sum()
}

/// `sum_F sigma_F a_F z^((mu_F + n_F)/2)` with the convention applied,
/// certified to be a virtual character.
pub fn quantize_odd3(m: &OddManifoldData, conv: Convention) -> Result<VirtualCharacter> {
    quantize_odd3_rational(m, conv)
        .to_virtual()
        .map_err(|e| annotate(e, m.name()))
}

fn annotate(e: Error, name: &str) -> Error {
    match e {
        Error::NotDivisible(msg) => Error::NotDivisible(format!("{name}: {msg}")),
        other => other,
    }
}

/// Local contributions of the isolated fixed point formula summed over a
/// common denominator, before division.
pub fn even_rational_sum(n: &EvenManifoldData) -> RationalCharacter {
    let global = if n.half_dim().is_multiple_of(2) { 1 } else { -1 };
    n.points()
        .iter()
        .map(|p| {
            let mut sign = global * p.sigma.value();
            let mut den = VirtualCharacter::one();
            for &w in &p.weights {
                let (s, d) = local_denominator(w);
                sign *= s;
                den = &den * &d;
            }
            RationalCharacter::new(VirtualCharacter::monomial(p.mu, sign), den)
                .expect("product of nonzero binomials is nonzero")
        })
        .sum()
}

/// Isolated fixed point formula
/// `sum_p sigma_p (-1)^n z^(mu_p/2) prod_j 1/(z^(w_j/2) - z^(-w_j/2))`.
pub fn quantize_even_isolated(n: &EvenManifoldData) -> Result<VirtualCharacter> {
    even_rational_sum(n).to_virtual().map_err(|e| annotate(e, n.name()))
}

/// Passes from a surface `N` to `N x S^1`: each fixed point becomes a fixed
/// circle on which `alpha` integrates to one.
pub fn up_surface_to_3(n: &EvenManifoldData) -> Result<OddManifoldData> {
    if n.half_dim() != 1 {
        return Err(Error::Validation(format!(
            "up map needs a surface (half_dim 1), got half_dim {}",
            n.half_dim()
        )));
    }
    let circles: Vec<FixedCircle> = n
        .points()
        .iter()
        .map(|p| FixedCircle::new(p.id.clone(), p.mu, p.weights[0], p.sigma))
        .collect();
    let alpha: AlphaData = circles.iter().map(|c| (c.id.clone(), 1)).collect();
    OddManifoldData::new(format!("{}xS1", n.name()), circles, alpha)
}

/// Multiplicity of the trivial representation in `Q(M)`.
pub fn invariant_multiplicity(m: &OddManifoldData, conv: Convention) -> Result<BigInt> {
    Ok(quantize_odd3(m, conv)?.invariant_part())
}
