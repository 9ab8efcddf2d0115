//! The representation problem `f(x, y) = n`.
//!
//! For an indefinite form the values `f(e1) = a` and `f(e2) = c` of an edge
//! are the labels of the two faces of the çark that the edge separates.
//! [`solve_form`] looks for a face labelled `n`: it starts from the
//! off-spine neighbours of the spine whose faces carry the sign of `n`, runs a
//! breadth-first search away from the spine while both face labels stay
//! below `|n|` in absolute value, and converts the route from the found edge
//! back to the query form into a matrix.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::isqrt;
use crate::cark::{path_on_spine, reverse_letters, revolve_around_spine};
use crate::error::{Error, Result};
use crate::modular_group::{letters_to_string, word_to_matrix, GroupElement, Letter};
use crate::quadratic_forms::{FormKind, QuadForm};
use crate::reduction::cark_reduce_path;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Solution {
    pub x: BigInt,
    pub y: BigInt,
}

impl Solution {
    pub fn new(x: BigInt, y: BigInt) -> Self {
        Solution { x, y }
    }

    pub fn from_i64(x: i64, y: i64) -> Self {
        Solution::new(x.into(), y.into())
    }
}

/// Everything the solver learned about one query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub solution: Option<Solution>,
    /// Route from the found edge to the query form. Empty without a solution.
    pub path_letters: Vec<Letter>,
    /// Frontier size per breadth-first generation of the last search run.
    pub frontier_sizes: Vec<usize>,
    /// Square factor `g` with `g^2 | n` used to reach a primitive value.
    pub scale: BigInt,
}

impl SolveReport {
    pub fn path_string(&self) -> String {
        letters_to_string(&self.path_letters)
    }
}

struct Node {
    form: QuadForm,
    /// Letters from the spine entry form to `form`.
    route: Vec<Letter>,
}

fn faces_hit(f: &QuadForm, n: &BigInt) -> bool {
    &f.a == n || &f.c == n
}

fn faces_below(f: &QuadForm, bound: &BigInt) -> bool {
    &f.a.abs() < bound && &f.c.abs() < bound
}

struct PrimitiveSearch {
    found: Option<(QuadForm, Vec<Letter>)>,
    frontier_sizes: Vec<usize>,
}

/// Breadth-first search for an edge with a face labelled `n`, starting at
/// the spine through `entry`. Routes are recorded from `entry`.
fn search_face(entry: &QuadForm, n: &BigInt) -> Result<PrimitiveSearch> {
    let cycle = revolve_around_spine(entry)?;
    let bound = n.abs();
    let mut frontier: Vec<Node> = Vec::new();
    let mut seen: HashSet<QuadForm> = HashSet::new();
    // Routes to spine forms, in cycle order.
    let mut spine_route: Vec<Letter> = Vec::new();
    for (i, g) in cycle.forms.iter().enumerate() {
        if i > 0 {
            spine_route = path_on_spine(entry, g)?.into_letters();
        }
        if faces_hit(g, n) {
            return Ok(PrimitiveSearch {
                found: Some((g.clone(), spine_route)),
                frontier_sizes: Vec::new(),
            });
        }
        for l in [Letter::L, Letter::L2] {
            let h = g.apply_letter(l);
            let same_sign = (&h.a * &h.c).is_positive();
            if same_sign && (&h.a * n).is_positive() && seen.insert(h.clone()) {
                let mut route = spine_route.clone();
                route.push(l);
                frontier.push(Node { form: h, route });
            }
        }
    }

    let mut frontier_sizes = Vec::new();
    while !frontier.is_empty() {
        frontier_sizes.push(frontier.len());
        if let Some(node) = frontier.iter().find(|nd| faces_hit(&nd.form, n)) {
            return Ok(PrimitiveSearch {
                found: Some((node.form.clone(), node.route.clone())),
                frontier_sizes,
            });
        }
        let mut next: Vec<Node> = Vec::new();
        let mut generation: HashSet<QuadForm> = HashSet::new();
        for node in &frontier {
            let flipped = node.form.apply_letter(Letter::S);
            for l in [Letter::L, Letter::L2] {
                let child = flipped.apply_letter(l);
                let mut route = node.route.clone();
                route.extend([Letter::S, l]);
                // A child whose new face equals n is reported before the
                // strict bound would discard it.
                if faces_hit(&child, n) {
                    frontier_sizes.push(1);
                    return Ok(PrimitiveSearch {
                        found: Some((child, route)),
                        frontier_sizes,
                    });
                }
                if faces_below(&child, &bound) && generation.insert(child.clone()) {
                    next.push(Node { form: child, route });
                }
            }
        }
        for node in &next {
            if !faces_below(&node.form, &bound) {
                return Err(Error::Internal(format!(
                    "frontier form {} exceeds |n| = {bound}",
                    node.form
                )));
            }
        }
        frontier = next;
    }
    Ok(PrimitiveSearch {
        found: None,
        frontier_sizes,
    })
}

type Found = Option<(Solution, Vec<Letter>)>;

/// Primitive representations only: `gcd(x, y) = 1`.
fn solve_primitive(
    f: &QuadForm,
    n: &BigInt,
    to_spine: &[Letter],
    entry: &QuadForm,
) -> Result<(Found, Vec<usize>)> {
    let search = search_face(entry, n)?;
    let Some((found, route)) = search.found else {
        return Ok((None, search.frontier_sizes));
    };
    // found -> entry -> f
    let mut path = reverse_letters(&route);
    path.extend(reverse_letters(to_spine));
    let m = word_to_matrix(&path);
    if found.act(&m) != *f {
        return Err(Error::Internal(format!(
            "route from {found} does not reach {f}"
        )));
    }
    // f(v) = found(m v), so v = m^-1 e_i where found(e_i) = n
    let inv = m.inverse();
    let one = BigInt::one();
    let zero = BigInt::zero();
    for (ex, ey) in [(&one, &zero), (&zero, &one)] {
        if &found.evaluate(ex, ey) != n {
            continue;
        }
        let (x, y) = inv.apply(ex, ey);
        if &f.evaluate(&x, &y) == n {
            return Ok((Some((Solution::new(x, y), path)), search.frontier_sizes));
        }
    }
    Err(Error::Internal(format!(
        "neither basis vector solves {f} = {n} after transport"
    )))
}

fn check_query(f: &QuadForm, n: &BigInt, op: &'static str) -> Result<()> {
    if n.is_zero() {
        return Err(Error::ZeroQuery);
    }
    f.require_indefinite(op)?;
    Ok(())
}

/// Full solver output, including the route and search telemetry.
///
/// Representations with `gcd(x, y) = g > 1` come from primitive
/// representations of `n / g^2`, so square factors of `n` are tried in
/// increasing order after the primitive search.
pub fn solve_form_report(f: &QuadForm, n: &BigInt) -> Result<SolveReport> {
    check_query(f, n, "solve_form")?;
    let reduction = cark_reduce_path(f)?;
    let to_spine = reduction.letters();
    let entry = reduction.end;

    let limit = isqrt(&n.abs());
    let mut g = BigInt::one();
    let mut last_sizes = Vec::new();
    while g <= limit {
        let sq = &g * &g;
        if (n % &sq).is_zero() {
            let reduced = n / &sq;
            let (hit, sizes) = solve_primitive(f, &reduced, &to_spine, &entry)?;
            last_sizes = sizes;
            if let Some((sol, path)) = hit {
                let scaled = Solution::new(&sol.x * &g, &sol.y * &g);
                if &f.evaluate(&scaled.x, &scaled.y) != n {
                    return Err(Error::Internal(format!("scaled solution fails {f} = {n}")));
                }
                return Ok(SolveReport {
                    solution: Some(scaled),
                    path_letters: path,
                    frontier_sizes: last_sizes,
                    scale: g,
                });
            }
        }
        g += 1;
    }
    Ok(SolveReport {
        solution: None,
        path_letters: Vec::new(),
        frontier_sizes: last_sizes,
        scale: BigInt::one(),
    })
}

/// One integer solution of `f(x, y) = n`, or `None` when there is none.
pub fn solve_form(f: &QuadForm, n: &BigInt) -> Result<Option<Solution>> {
    Ok(solve_form_report(f, n)?.solution)
}

/// A generator of the stabilizer of `f`: the word once around the spine,
/// conjugated back along the route to the spine when `f` is off it.
pub fn automorph(f: &QuadForm) -> Result<GroupElement> {
    f.require_indefinite("automorph")?;
    let reduction = cark_reduce_path(f)?;
    let entry = &reduction.end;
    let around = path_on_spine(entry, entry)?.to_matrix();
    let p = &reduction.total_matrix;
    let m = p.multiply(&around).multiply(&p.inverse());
    if m.is_identity() || f.act(&m) != *f {
        return Err(Error::Internal(format!("bad automorph {m} for {f}")));
    }
    Ok(m)
}

/// `count` distinct solutions `A^k v` for the automorph `A` and a seed `v`.
pub fn enumerate_solutions(f: &QuadForm, n: &BigInt, count: usize) -> Result<Vec<Solution>> {
    let Some(seed) = solve_form(f, n)? else {
        return Ok(Vec::new());
    };
    let a = automorph(f)?;
    let mut out = Vec::with_capacity(count);
    let mut v = seed;
    for _ in 0..count {
        if &f.evaluate(&v.x, &v.y) != n {
            return Err(Error::Internal(format!("orbit element fails {f} = {n}")));
        }
        let (x, y) = a.apply(&v.x, &v.y);
        out.push(v);
        v = Solution::new(x, y);
    }
    Ok(out)
}

/// Every solution of `f(x, y) = n` for a definite form, by bounded search.
///
/// `4 a f(x, y) = (2 a x + b y)^2 + |D| y^2` bounds `y^2 <= 4 |a n| / |D|`,
/// and symmetrically `x^2 <= 4 |c n| / |D|`.
pub fn solve_definite(f: &QuadForm, n: &BigInt) -> Result<Vec<Solution>> {
    if n.is_zero() {
        return Err(Error::ZeroQuery);
    }
    if !matches!(
        f.classify(),
        FormKind::PositiveDefinite | FormKind::NegativeDefinite
    ) {
        return Err(Error::NotDefinite {
            op: "solve_definite",
            form: f.to_string(),
        });
    }
    let d = f.discriminant().abs();
    let four_n = n.abs() * 4;
    let y_max = isqrt(&(&f.a.abs() * &four_n / &d));
    let x_max = isqrt(&(&f.c.abs() * &four_n / &d));
    let mut out = Vec::new();
    let mut x = -&x_max;
    while x <= x_max {
        let mut y = -&y_max;
        while y <= y_max {
            if &f.evaluate(&x, &y) == n {
                out.push(Solution::new(x.clone(), y.clone()));
            }
            y += 1;
        }
        x += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(a: i64, b: i64, c: i64) -> QuadForm {
        QuadForm::from_i64(a, b, c)
    }

    fn n(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn unit_values() {
        let g = f(1, 1, -1);
        let s = solve_form(&g, &n(1)).unwrap().unwrap();
        assert_eq!(g.evaluate(&s.x, &s.y), n(1));
    }

    #[test]
    fn pell() {
        let g = f(1, 0, -2);
        let s = solve_form(&g, &n(1)).unwrap().unwrap();
        assert_eq!(g.evaluate(&s.x, &s.y), n(1));
        assert_eq!(solve_form(&g, &n(3)).unwrap(), None);
        assert!(solve_form(&g, &n(0)).is_err());
        assert!(solve_form(&f(1, 0, 1), &n(1)).is_err());
    }

    #[test]
    fn non_primitive_value() {
        // x^2 - 2y^2 = 4 only has solutions with even x and y
        let g = f(1, 0, -2);
        let s = solve_form(&g, &n(4)).unwrap().unwrap();
        assert_eq!(g.evaluate(&s.x, &s.y), n(4));
    }

    #[test]
    fn automorphs_fix_forms() {
        for g in [f(1, 1, -1), f(1, 0, -2), f(2, 6, 1), f(-14, 2, 1)] {
            let a = automorph(&g).unwrap();
            assert!(!a.is_identity());
            assert_eq!(g.act(&a), g);
        }
        let a = automorph(&f(1, 0, -2)).unwrap();
        let (x, y) = a.apply(&n(3), &n(2));
        assert_eq!(f(1, 0, -2).evaluate(&x, &y), n(1));
    }

    #[test]
    fn orbits() {
        let g = f(1, 0, -2);
        let sols = enumerate_solutions(&g, &n(1), 3).unwrap();
        assert_eq!(sols.len(), 3);
        let distinct: HashSet<_> = sols.iter().collect();
        assert_eq!(distinct.len(), 3);
        assert!(enumerate_solutions(&g, &n(3), 5).unwrap().is_empty());
        let one = enumerate_solutions(&g, &n(1), 1).unwrap();
        assert_eq!(one, vec![solve_form(&g, &n(1)).unwrap().unwrap()]);
    }

    #[test]
    fn definite() {
        let g = f(1, 0, 1);
        let mut two = solve_definite(&g, &n(2)).unwrap();
        two.sort();
        assert_eq!(
            two,
            vec![
                Solution::from_i64(-1, -1),
                Solution::from_i64(-1, 1),
                Solution::from_i64(1, -1),
                Solution::from_i64(1, 1)
            ]
        );
        assert!(solve_definite(&g, &n(3)).unwrap().is_empty());
        assert_eq!(solve_definite(&g, &n(1)).unwrap().len(), 4);
        assert!(solve_definite(&g, &n(0)).is_err());
        assert!(solve_definite(&f(1, 1, -1), &n(1)).is_err());
        assert_eq!(solve_definite(&f(-1, 0, -1), &n(-2)).unwrap().len(), 4);
    }
}
