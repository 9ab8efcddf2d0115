//! Integral binary quadratic forms `a x^2 + b x y + c y^2`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{gt_sqrt, is_perfect_square, lt_sqrt};
use crate::error::{Error, Result};
use crate::modular_group::{GroupElement, Letter};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormKind {
    Degenerate,
    PositiveDefinite,
    NegativeDefinite,
    Indefinite,
}

impl FormKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FormKind::Degenerate => "degenerate",
            FormKind::PositiveDefinite => "positive_definite",
            FormKind::NegativeDefinite => "negative_definite",
            FormKind::Indefinite => "indefinite",
        }
    }
}

/// The form `(a, b, c)`. Coefficients are stored as given; nothing is
/// primitivized or normalized behind the caller's back.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl QuadForm {
    pub fn new(a: BigInt, b: BigInt, c: BigInt) -> Self {
        QuadForm { a, b, c }
    }

    pub fn from_i64(a: i64, b: i64, c: i64) -> Self {
        QuadForm::new(a.into(), b.into(), c.into())
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    pub fn classify(&self) -> FormKind {
        let d = self.discriminant();
        if is_perfect_square(&d) {
            FormKind::Degenerate
        } else if d.is_negative() {
            if self.a.is_positive() {
                FormKind::PositiveDefinite
            } else {
                FormKind::NegativeDefinite
            }
        } else {
            FormKind::Indefinite
        }
    }

    pub fn is_indefinite(&self) -> bool {
        self.classify() == FormKind::Indefinite
    }

    pub fn evaluate(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.a * x * x + &self.b * x * y + &self.c * y * y
    }

    /// `gcd(a, b, c)`, zero only for the zero form.
    pub fn content(&self) -> BigInt {
        self.a.gcd(&self.b).gcd(&self.c)
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn negate(&self) -> QuadForm {
        QuadForm::new(-&self.a, -&self.b, -&self.c)
    }

    /// Right action `f . m`: the form with Gram matrix `m^T M_f m`, so that
    /// `(f . m)(v) = f(m v)` and `(f . m1) . m2 = f . (m1 m2)`.
    pub fn act(&self, m: &GroupElement) -> QuadForm {
        let [p, q, r, s] = m.entries();
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let two = BigInt::from(2);
        let na = a * p * p + b * p * r + c * r * r;
        let nb = &two * a * p * q + b * (p * s + q * r) + &two * c * r * s;
        let nc = a * q * q + b * q * s + c * s * s;
        QuadForm::new(na, nb, nc)
    }

    /// `f . L`, `f . L2` or `f . S` without a general matrix product.
    pub fn apply_letter(&self, letter: Letter) -> QuadForm {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        match letter {
            Letter::S => QuadForm::new(c.clone(), -b, a.clone()),
            Letter::L => QuadForm::new(a + b + c, -(a + a) - b, a.clone()),
            Letter::L2 => QuadForm::new(c.clone(), -b - (c + c), a + b + c),
        }
    }

    pub fn apply_letters(&self, letters: &[Letter]) -> QuadForm {
        letters.iter().fold(self.clone(), |f, l| f.apply_letter(*l))
    }

    pub(crate) fn require_indefinite(&self, op: &'static str) -> Result<BigInt> {
        let d = self.discriminant();
        if d.is_positive() && !is_perfect_square(&d) {
            Ok(d)
        } else {
            Err(Error::NotIndefinite {
                op,
                form: self.to_string(),
            })
        }
    }

    /// `|sqrt(D) - 2|a|| < b < sqrt(D)`.
    pub fn is_gauss_reduced(&self) -> Result<bool> {
        let d = self.require_indefinite("is_gauss_reduced")?;
        Ok(gauss_reduced_unchecked(self, &d))
    }

    /// `|b| <= a <= c`, with `b >= 0` when `a = c` or `|b| = a`.
    pub fn is_lagrange_reduced(&self) -> Result<bool> {
        if self.classify() != FormKind::PositiveDefinite {
            return Err(Error::NotPositiveDefinite {
                op: "is_lagrange_reduced",
                form: self.to_string(),
            });
        }
        Ok(lagrange_reduced_unchecked(self))
    }

    /// `sqrt(D) < b < sqrt(D) + 2a` and `sqrt(D) < b < sqrt(D) + 2c`.
    pub fn is_zagier_reduced(&self) -> Result<bool> {
        let d = self.require_indefinite("is_zagier_reduced")?;
        let two = BigInt::from(2);
        let b = &self.b;
        Ok(gt_sqrt(b, &d)
            && lt_sqrt(&(b - &two * &self.a), &d)
            && lt_sqrt(&(b - &two * &self.c), &d))
    }

    /// Semi-reduced: `a c < 0`. These forms label the spine edges of the çark.
    pub fn is_on_spine(&self) -> Result<bool> {
        self.require_indefinite("is_on_spine")?;
        Ok(self.on_spine_unchecked())
    }

    pub(crate) fn on_spine_unchecked(&self) -> bool {
        (&self.a * &self.c).is_negative()
    }
}

pub(crate) fn gauss_reduced_unchecked(f: &QuadForm, d: &BigInt) -> bool {
    let b = &f.b;
    if !b.is_positive() || !lt_sqrt(b, d) {
        return false;
    }
    // |sqrt(D) - 2|a|| < b  <=>  2|a| - b < sqrt(D) < 2|a| + b
    let twice_a = f.a.abs() * 2;
    lt_sqrt(&(&twice_a - b), d) && gt_sqrt(&(&twice_a + b), d)
}

pub(crate) fn lagrange_reduced_unchecked(f: &QuadForm) -> bool {
    let (a, b, c) = (&f.a, &f.b, &f.c);
    let babs = b.abs();
    if !(&babs <= a && a <= c) {
        return false;
    }
    if (a == c || &babs == a) && b.is_negative() {
        return false;
    }
    true
}

/// `f_W = (r, s - p, -q) / gcd(r, s - p, q)`, whose roots are the fixed
/// points of `W`.
pub fn form_of_element(w: &GroupElement) -> Result<QuadForm> {
    let [p, q, r, s] = w.entries();
    let b = s - p;
    let c = -q;
    let delta = r.gcd(&b).gcd(&c);
    if delta.is_zero() {
        return Err(Error::NoAssociatedForm);
    }
    Ok(QuadForm::new(r / &delta, b / &delta, c / &delta))
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

impl FromStr for QuadForm {
    type Err = String;

    /// Parses `a,b,c`, optionally wrapped in parentheses.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = t.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(format!("expected a form a,b,c, got {s:?}"));
        }
        let parse = |x: &str| {
            x.parse::<BigInt>()
                .map_err(|_| format!("invalid integer {x:?} in form {s:?}"))
        };
        Ok(QuadForm::new(
            parse(parts[0])?,
            parse(parts[1])?,
            parse(parts[2])?,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(a: i64, b: i64, c: i64) -> QuadForm {
        QuadForm::from_i64(a, b, c)
    }

    #[test]
    fn discriminants() {
        assert_eq!(f(1, 1, -1).discriminant(), 5.into());
        assert_eq!(f(1, 0, 1).discriminant(), (-4).into());
        assert_eq!(f(-14, 2, 1).discriminant(), 60.into());
    }

    #[test]
    fn classification() {
        assert_eq!(f(1, 0, 1).classify(), FormKind::PositiveDefinite);
        assert_eq!(f(-1, 0, -1).classify(), FormKind::NegativeDefinite);
        assert_eq!(f(0, 0, -1).classify(), FormKind::Degenerate);
        assert_eq!(f(1, 1, -1).classify(), FormKind::Indefinite);
        assert_eq!(f(1, 0, -4).classify(), FormKind::Degenerate);
    }

    #[test]
    fn evaluation() {
        let g = f(7, -3, 5);
        assert_eq!(g.evaluate(&1.into(), &0.into()), 7.into());
        assert_eq!(g.evaluate(&0.into(), &1.into()), 5.into());
        assert_eq!(f(1, 0, -2).evaluate(&3.into(), &2.into()), 1.into());
    }

    #[test]
    fn primitivity() {
        assert!(f(1, 1, -1).is_primitive());
        assert!(!f(2, 4, 6).is_primitive());
        assert!(f(0, 0, -1).is_primitive());
        assert!(!f(0, 0, 0).is_primitive());
    }

    #[test]
    fn forms_of_elements() {
        assert_eq!(form_of_element(&GroupElement::s()).unwrap(), f(1, 0, 1));
        let h = GroupElement::from_i64(2, 1, 1, 1).unwrap();
        assert_eq!(form_of_element(&h).unwrap(), f(1, -1, -1));
        assert_eq!(form_of_element(&GroupElement::t()).unwrap(), f(0, 0, -1));
        assert_eq!(
            form_of_element(&GroupElement::identity()),
            Err(Error::NoAssociatedForm)
        );
    }

    #[test]
    fn action_examples() {
        let g = f(1, 1, -1);
        assert_eq!(g.act(&GroupElement::identity()), g);
        assert_eq!(g.act(&GroupElement::s()), f(-1, -1, 1));
        assert_eq!(f(1, 0, 1).act(&GroupElement::l()), f(2, -2, 1));
    }

    #[test]
    fn letter_action_matches_matrix_action() {
        let g = f(3, -7, 2);
        for l in [Letter::S, Letter::L, Letter::L2] {
            assert_eq!(g.apply_letter(l), g.act(&l.matrix()));
        }
    }

    #[test]
    fn action_is_a_right_action() {
        // (f . m1) . m2 = f . (m1 m2), pinned on a non-commuting pair.
        let g = f(2, 5, -3);
        let m1 = GroupElement::l();
        let m2 = GroupElement::s();
        assert_eq!(g.act(&m1).act(&m2), g.act(&m1.multiply(&m2)));
        assert_ne!(g.act(&m1).act(&m2), g.act(&m2.multiply(&m1)));
    }

    #[test]
    fn gauss_reducedness() {
        assert!(f(1, 1, -1).is_gauss_reduced().unwrap());
        assert!(!f(1, -1, -1).is_gauss_reduced().unwrap());
        assert!(!f(-14, 2, 1).is_gauss_reduced().unwrap());
        assert!(f(1, 0, 1).is_gauss_reduced().is_err());
        assert!(f(1, 0, -4).is_gauss_reduced().is_err());
    }

    #[test]
    fn lagrange_reducedness() {
        assert!(f(1, 0, 1).is_lagrange_reduced().unwrap());
        assert!(!f(2, -2, 3).is_lagrange_reduced().unwrap());
        assert!(f(1, 1, 1).is_lagrange_reduced().unwrap());
        assert!(f(1, 1, -1).is_lagrange_reduced().is_err());
    }

    #[test]
    fn zagier_reducedness() {
        assert!(f(1, 3, 1).is_zagier_reduced().unwrap());
        assert!(!f(1, 1, -1).is_zagier_reduced().unwrap());
        assert!(!f(-1, 1, 1).is_zagier_reduced().unwrap());
        assert!(f(1, 2, 1).is_zagier_reduced().is_err());
    }

    #[test]
    fn spine_predicate() {
        assert!(f(-14, 2, 1).is_on_spine().unwrap());
        assert!(f(1, 1, -1).is_on_spine().unwrap());
        assert!(!f(2, 6, 1).is_on_spine().unwrap());
        assert!(f(1, 0, 1).is_on_spine().is_err());
    }

    #[test]
    fn parsing() {
        assert_eq!("-14,2,1".parse::<QuadForm>().unwrap(), f(-14, 2, 1));
        assert_eq!("(1, 0, -2)".parse::<QuadForm>().unwrap(), f(1, 0, -2));
        assert!("1,2".parse::<QuadForm>().is_err());
        assert!("1,x,2".parse::<QuadForm>().is_err());
    }
}
