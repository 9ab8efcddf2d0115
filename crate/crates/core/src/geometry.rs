//! Geodesics in the upper half-plane and the unit disk.
//!
//! A hyperbolic element or an indefinite form with nonzero leading
//! coefficient determines a half-circle orthogonal to the real axis. Centers,
//! squared radii and endpoints are kept exact; floats appear only when points
//! are sampled for plotting or mapped to the disk.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::modular_group::{ElementKind, GroupElement};
use crate::quadratic_forms::QuadForm;

/// `rational + coeff * sqrt(radicand)` with a positive radicand.
///
/// Two surds are equal when they denote the same real number, so
/// `1 + 2 sqrt(5)` equals `1 + sqrt(20)`.
#[derive(Debug, Clone)]
pub struct Surd {
    pub rational: BigRational,
    pub coeff: BigRational,
    pub radicand: BigInt,
}

impl Surd {
    pub fn new(rational: BigRational, coeff: BigRational, radicand: BigInt) -> Self {
        Surd {
            rational,
            coeff,
            radicand,
        }
    }

    fn irrational_square(&self) -> BigRational {
        &self.coeff * &self.coeff * BigRational::from_integer(self.radicand.clone())
    }

    pub fn to_f64(&self) -> f64 {
        let r = ratio_f64(&self.rational);
        let root = self.radicand.to_f64().unwrap_or(f64::INFINITY).sqrt();
        r + ratio_f64(&self.coeff) * root
    }
}

impl PartialEq for Surd {
    fn eq(&self, other: &Self) -> bool {
        self.rational == other.rational
            && self.coeff.signum() == other.coeff.signum()
            && self.irrational_square() == other.irrational_square()
    }
}

impl Eq for Surd {}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let root = if self.coeff.abs() == BigRational::one() {
            format!("sqrt({})", self.radicand)
        } else {
            format!("{}*sqrt({})", self.coeff.abs(), self.radicand)
        };
        let negative = self.coeff.is_negative();
        if self.rational.is_zero() {
            write!(f, "{}{root}", if negative { "-" } else { "" })
        } else {
            write!(
                f,
                "{} {} {root}",
                self.rational,
                if negative { '-' } else { '+' }
            )
        }
    }
}

/// Largest `k` with `k^2 | n` found by trial division up to `limit`, and
/// `n / k^2`.
fn split_square(n: &BigInt, limit: u64) -> (BigInt, BigInt) {
    let mut rest = n.clone();
    let mut k = BigInt::one();
    let mut p = 2u64;
    while p <= limit {
        let pp = BigInt::from(p * p);
        if pp > rest {
            break;
        }
        while (&rest % &pp).is_zero() {
            rest /= &pp;
            k *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (k, rest)
}

pub(crate) fn ratio_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // numerator and denominator both overflow; scale them down together
        let shift = r.denom().bits().max(r.numer().bits()).saturating_sub(1000);
        let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// A half-circle in the upper half-plane, endpoints ordered by real value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Geodesic {
    pub center: BigRational,
    pub radius_squared: BigRational,
    pub endpoints: (Surd, Surd),
}

impl Geodesic {
    /// Half-circle with center `center` and endpoints `center -+ half_width * sqrt(d)`.
    fn from_center(center: BigRational, half_width: BigRational, d: BigInt) -> Self {
        let radius_squared = &half_width * &half_width * BigRational::from_integer(d.clone());
        let (k, d) = split_square(&d, 10_000);
        let half_width = half_width * BigRational::from_integer(k);
        let low = Surd::new(center.clone(), -half_width.clone(), d.clone());
        let high = Surd::new(center.clone(), half_width, d);
        Geodesic {
            center,
            radius_squared,
            endpoints: (low, high),
        }
    }

    pub fn center_f64(&self) -> f64 {
        ratio_f64(&self.center)
    }

    pub fn radius_f64(&self) -> f64 {
        ratio_f64(&self.radius_squared).sqrt()
    }

    pub fn endpoints_f64(&self) -> (f64, f64) {
        (self.endpoints.0.to_f64(), self.endpoints.1.to_f64())
    }

    /// Whether the Cayley image is a diameter of the disk, which happens
    /// exactly when the half-circle passes through `i`.
    pub fn through_i(&self) -> bool {
        &self.center * &self.center + BigRational::from_integer(1.into()) == self.radius_squared
    }
}

/// Geodesic joining the two real fixed points of a hyperbolic element.
pub fn geodesic_of_element(w: &GroupElement) -> Result<Geodesic> {
    match w.classify() {
        ElementKind::Hyperbolic => {}
        ElementKind::Elliptic => return Err(Error::NotHyperbolic("elliptic")),
        ElementKind::Parabolic => return Err(Error::NotHyperbolic("parabolic")),
    }
    let [p, _, r, s] = w.entries();
    if r.is_zero() {
        return Err(Error::VerticalElementGeodesic);
    }
    let tr = w.trace();
    let d = &tr * &tr - 4;
    let two_r = BigInt::from(2) * r;
    let center = BigRational::new(p - s, two_r.clone());
    let half_width = BigRational::new(1.into(), two_r.abs());
    Ok(Geodesic::from_center(center, half_width, d))
}

/// Geodesic joining the two real roots of `a z^2 + b z + c`.
pub fn geodesic_of_form(f: &QuadForm) -> Result<Geodesic> {
    let d = f.require_indefinite("geodesic_of_form")?;
    if f.a.is_zero() {
        return Err(Error::VerticalFormGeodesic);
    }
    let two_a = BigInt::from(2) * &f.a;
    let center = BigRational::new(-f.b.clone(), two_a.clone());
    let half_width = BigRational::new(1.into(), two_a.abs());
    Ok(Geodesic::from_center(center, half_width, d))
}

/// Cayley transform `z -> (z - i) / (z + i)`.
pub fn to_disk(z: Complex64) -> Complex64 {
    let i = Complex64::i();
    (z - i) / (z + i)
}

/// Inverse Cayley transform `w -> i (1 + w) / (1 - w)`.
pub fn from_disk(w: Complex64) -> Complex64 {
    let i = Complex64::i();
    i * (1.0 + w) / (1.0 - w)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DiskShape {
    Circle { center: Complex64, radius: f64 },
    Diameter,
}

/// The image of a half-plane geodesic in the disk: an arc of a circle
/// orthogonal to the unit circle, or a diameter.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskGeodesic {
    pub shape: DiskShape,
    pub endpoints: (Complex64, Complex64),
}

pub fn geodesic_to_disk(g: &Geodesic) -> DiskGeodesic {
    let (e0, e1) = g.endpoints_f64();
    let u1 = to_disk(Complex64::new(e0, 0.0));
    let u2 = to_disk(Complex64::new(e1, 0.0));
    let shape = if g.through_i() {
        DiskShape::Diameter
    } else {
        let center = (u1 + u2) / (1.0 + (u1 * u2.conj()).re);
        DiskShape::Circle {
            center,
            radius: (center - u1).norm(),
        }
    };
    DiskGeodesic {
        shape,
        endpoints: (u1, u2),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    HalfPlane,
    Disk,
}

impl Model {
    pub fn as_str(self) -> &'static str {
        match self {
            Model::HalfPlane => "h",
            Model::Disk => "disk",
        }
    }
}

/// `n` points along the half-circle from the lower endpoint to the upper
/// one, evenly spaced in angle, optionally carried to the disk.
pub fn sample_geodesic(g: &Geodesic, n: usize, model: Model) -> Result<Vec<Complex64>> {
    if n < 2 {
        return Err(Error::TooFewSamples(n));
    }
    let c = g.center_f64();
    let radius = g.radius_f64();
    let (e0, e1) = g.endpoints_f64();
    let last = n - 1;
    let points = (0..n).map(|k| {
        // pin the ends to the exact endpoints instead of cos(pi) rounding
        if k == 0 {
            return Complex64::new(e0, 0.0);
        }
        if k == last {
            return Complex64::new(e1, 0.0);
        }
        let t = std::f64::consts::PI * (1.0 - k as f64 / last as f64);
        Complex64::new(c + radius * t.cos(), radius * t.sin())
    });
    Ok(match model {
        Model::HalfPlane => points.collect(),
        Model::Disk => points.map(to_disk).collect(),
    })
}
