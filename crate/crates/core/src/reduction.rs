//! Reduction of forms with full path recording.
//!
//! * [`gauss_reduce`] iterates the normalizing operator `rho(f) = f . U(f)`
//!   with `U(f) = (0 -1; 1 s(f))` until `|sqrt(D) - 2|a|| < b < sqrt(D)`.
//! * [`cark_reduce_path`] walks edge by edge through the çark, one generator
//!   letter at a time, until it reaches a spine edge (`a c < 0`).
//! * [`lagrange_reduce`] finds the unique Lagrange-reduced form of a definite
//!   class.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{isqrt, sign};
use crate::error::{Error, Result};
use crate::modular_group::{GroupElement, Letter};
use crate::quadratic_forms::{
    gauss_reduced_unchecked, lagrange_reduced_unchecked, FormKind, QuadForm,
};

/// One move of a reduction path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    Letter(Letter),
    Matrix(GroupElement),
}

impl Step {
    pub fn matrix(&self) -> GroupElement {
        match self {
            Step::Letter(l) => l.matrix(),
            Step::Matrix(m) => m.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    pub step: Step,
    /// Form after applying this step.
    pub form: QuadForm,
}

/// A recorded reduction. `start . total_matrix == end` always holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionPath {
    pub start: QuadForm,
    pub end: QuadForm,
    pub steps: Vec<ReductionStep>,
    pub total_matrix: GroupElement,
    /// Set when a negative definite form was reduced through its negation.
    pub negated: bool,
}

impl ReductionPath {
    fn empty(f: &QuadForm) -> Self {
        ReductionPath {
            start: f.clone(),
            end: f.clone(),
            steps: Vec::new(),
            total_matrix: GroupElement::identity(),
            negated: false,
        }
    }

    fn push(&mut self, step: Step, form: QuadForm) {
        self.total_matrix = self.total_matrix.multiply(&step.matrix());
        self.end = form.clone();
        self.steps.push(ReductionStep { step, form });
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The letter steps in order; matrix steps are skipped.
    pub fn letters(&self) -> Vec<Letter> {
        self.steps
            .iter()
            .filter_map(|s| match s.step {
                Step::Letter(l) => Some(l),
                Step::Matrix(_) => None,
            })
            .collect()
    }

    /// Forms visited, starting with `start`.
    pub fn forms(&self) -> impl Iterator<Item = &QuadForm> {
        std::iter::once(&self.start).chain(self.steps.iter().map(|s| &s.form))
    }
}

fn max_coefficient(f: &QuadForm) -> BigInt {
    f.a.abs().max(f.b.abs()).max(f.c.abs())
}

/// `64 + 4 * bitlen(max(|a|, |b|, |c|))`.
pub fn rho_step_limit(f: &QuadForm) -> u64 {
    64 + 4 * max_coefficient(f).bits()
}

/// Limit for the letter-by-letter çark walk. The walk along a face of value
/// `v` takes on the order of `sqrt(max / |v|)` steps, so the logarithmic
/// bound used for `rho` is extended by a square-root term.
pub fn cark_step_limit(f: &QuadForm) -> u64 {
    let m = max_coefficient(f);
    let root = isqrt(&m).to_u64().unwrap_or(u64::MAX / 8);
    (64 + 4 * m.bits()).saturating_add(root.saturating_mul(4))
}

/// The normalizing exponent `s(f)`: the unique integer for which
/// `-b + 2 s c` lies in `(-|c|, |c|]` when `|c| > sqrt(D)` and in
/// `(sqrt(D) - 2|c|, sqrt(D))` otherwise.
fn rho_exponent(f: &QuadForm, d: &BigInt) -> BigInt {
    let c_abs = f.c.abs();
    let two_c = &c_abs * 2;
    let k = if &(&c_abs * &c_abs) > d {
        (&f.b + &c_abs).div_floor(&two_c)
    } else {
        (&f.b + isqrt(d)).div_floor(&two_c)
    };
    if f.c.is_negative() {
        -k
    } else {
        k
    }
}

fn rho_unchecked(f: &QuadForm, d: &BigInt) -> (QuadForm, GroupElement) {
    let s = rho_exponent(f, d);
    let u = GroupElement::new(0.into(), (-1).into(), 1.into(), s.clone())
        .expect("U(f) has determinant 1");
    let (a, b, c) = (&f.a, &f.b, &f.c);
    let nb = -b + c * &s * 2;
    let nc = a - b * &s + c * &s * &s;
    (QuadForm::new(c.clone(), nb, nc), u)
}

/// One application of the reduction operator. Returns `(f . U(f), U(f))`.
pub fn rho_step(f: &QuadForm) -> Result<(QuadForm, GroupElement)> {
    let d = f.require_indefinite("rho_step")?;
    if f.c.is_zero() {
        return Err(Error::DegenerateDirection(f.to_string()));
    }
    Ok(rho_unchecked(f, &d))
}

/// Gauss reduction by iterating `rho`.
///
/// Along the sequence `rho(f), rho^2(f), ...` every form `g` for which `g`,
/// `rho(g)` and `rho^2(g)` are all non-reduced satisfies `|a(g)| >= 2|c(g)|`.
/// The bound is checked as the sequence is produced; a violation is an
/// internal error.
pub fn gauss_reduce(f: &QuadForm) -> Result<ReductionPath> {
    let d = f.require_indefinite("gauss_reduce")?;
    let limit = rho_step_limit(f);
    let mut path = ReductionPath::empty(f);
    let mut current = f.clone();
    // Non-reduced rho-images seen so far, most recent last.
    let mut pending: Vec<QuadForm> = Vec::new();
    while !gauss_reduced_unchecked(&current, &d) {
        if path.len() as u64 >= limit {
            return Err(Error::StepLimit {
                op: "gauss_reduce",
                limit,
                form: f.to_string(),
            });
        }
        let (next, u) = rho_unchecked(&current, &d);
        path.push(Step::Matrix(u), next.clone());
        current = next;
        if gauss_reduced_unchecked(&current, &d) {
            break;
        }
        pending.push(current.clone());
        if pending.len() >= 3 {
            let g = &pending[pending.len() - 3];
            if g.a.abs() < g.c.abs() * 2 {
                return Err(Error::Internal(format!(
                    "rho bound |a| >= 2|c| fails at {g} while reducing {f}"
                )));
            }
        }
    }
    Ok(path)
}

/// Walks from `f` to the spine of its çark.
///
/// An off-spine edge `(a, b, c)` separates two faces of values `a` and `c`
/// with equal signs. Its two trivalent ends carry third faces `a + b + c`
/// (reached by `L`) and `a - b + c` (reached by `S` then `L`). The end with
/// the smaller third face in absolute value lies toward the spine. From that
/// vertex with faces `a, c, w`, the next edge keeps the face of smaller
/// magnitude: `{a, w}` if `|a| + |w| < |c|`, `{c, w}` if `|c| + |w| < |a|`.
/// If `w` has the opposite sign the spine has been reached.
///
/// Along the walk `min(|a|, |c|)` never increases.
pub fn cark_reduce_path(f: &QuadForm) -> Result<ReductionPath> {
    f.require_indefinite("cark_reduce_path")?;
    let limit = cark_step_limit(f);
    let mut path = ReductionPath::empty(f);
    let mut current = f.clone();
    while !current.on_spine_unchecked() {
        if path.len() as u64 >= limit {
            return Err(Error::StepLimit {
                op: "cark_reduce_path",
                limit,
                form: f.to_string(),
            });
        }
        let side = sign(&current.a);
        let near = &current.a + &current.b + &current.c;
        let far = &current.a - &current.b + &current.c;
        let scaled = |x: &BigInt| if side > 0 { x.clone() } else { -x };
        if scaled(&far) < scaled(&near) {
            current = current.apply_letter(Letter::S);
            path.push(Step::Letter(Letter::S), current.clone());
        }
        let (a, c) = (current.a.abs(), current.c.abs());
        let w = &current.a + &current.b + &current.c;
        let letter = if sign(&w) != side {
            // both edges at this vertex are on the spine; keep the smaller face
            if a <= c {
                Letter::L
            } else {
                Letter::L2
            }
        } else if &a + w.abs() < c {
            Letter::L
        } else if &c + w.abs() < a {
            Letter::L2
        } else {
            return Err(Error::Internal(format!(
                "no descending edge at {current} while reducing {f}"
            )));
        };
        current = current.apply_letter(letter);
        path.push(Step::Letter(letter), current.clone());
    }
    Ok(path)
}

fn lagrange_positive(f: &QuadForm) -> Result<ReductionPath> {
    let limit = rho_step_limit(f);
    let mut path = ReductionPath::empty(f);
    let mut current = f.clone();
    while !lagrange_reduced_unchecked(&current) {
        if path.len() as u64 >= limit {
            return Err(Error::StepLimit {
                op: "lagrange_reduce",
                limit,
                form: f.to_string(),
            });
        }
        let (a, b) = (&current.a, &current.b);
        if &b.abs() > a || (b.is_negative() && &-b == a) {
            // translate b into (-a, a]
            let k = (a - b).div_floor(&(a * 2));
            let t = GroupElement::new(1.into(), k, 0.into(), 1.into())
                .expect("translation has determinant 1");
            current = current.act(&t);
            path.push(Step::Matrix(t), current.clone());
        } else {
            // a > c, or a == c with b < 0
            current = current.apply_letter(Letter::S);
            path.push(Step::Letter(Letter::S), current.clone());
        }
    }
    Ok(path)
}

/// Lagrange reduction of a definite form. Negative definite forms are
/// reduced through `-f`; the result has `negated` set and ends at the
/// negation of the reduced form of `-f`.
pub fn lagrange_reduce(f: &QuadForm) -> Result<ReductionPath> {
    match f.classify() {
        FormKind::PositiveDefinite => lagrange_positive(f),
        FormKind::NegativeDefinite => {
            let inner = lagrange_positive(&f.negate())?;
            Ok(ReductionPath {
                start: f.clone(),
                end: inner.end.negate(),
                steps: inner
                    .steps
                    .into_iter()
                    .map(|s| ReductionStep {
                        step: s.step,
                        form: s.form.negate(),
                    })
                    .collect(),
                total_matrix: inner.total_matrix,
                negated: true,
            })
        }
        _ => Err(Error::NotPositiveDefinite {
            op: "lagrange_reduce",
            form: f.to_string(),
        }),
    }
}
