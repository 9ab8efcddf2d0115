//! Spines and çark graphs.
//!
//! Edges of the Farey tree are in bijection with group elements, so the edges
//! of the çark of an indefinite form `f` are in bijection with the forms
//! equivalent to `f`. Edge `g` joins a bivalent vertex, shared with `g . S`,
//! to a trivalent vertex, shared with `g . L` and `g . L2`. The spine is the
//! unique cycle; its edges are exactly the forms with `a c < 0`.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::modular_group::{Letter, Word};
use crate::quadratic_forms::QuadForm;
use crate::reduction::cark_reduce_path;

/// The cyclic sequence of `L` / `L2` turns taken at the trivalent vertices
/// of a spine, read in the direction in which forms with `a > 0` advance by
/// `g -> g . S . L^e`.
///
/// Written on the wire as tokens `L` and `L2` with no separator, e.g. `L2L`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature(Vec<Letter>);

impl Signature {
    pub fn turns(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Least rotation under `L < L2`.
    pub fn canonical(&self) -> Signature {
        let n = self.0.len();
        (0..n)
            .map(|k| {
                let mut v = self.0[k..].to_vec();
                v.extend_from_slice(&self.0[..k]);
                v
            })
            .min()
            .map(Signature)
            .unwrap_or_else(|| self.clone())
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            f.write_str(match l {
                Letter::L => "L",
                Letter::L2 => "L2",
                Letter::S => "S",
            })?;
        }
        Ok(())
    }
}

impl FromStr for Signature {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut out = Vec::new();
        let mut chars = s.trim().chars().peekable();
        while let Some(ch) = chars.next() {
            if ch != 'L' {
                return Err(Error::InvalidWord(format!("bad signature {s:?}")));
            }
            if chars.peek() == Some(&'2') {
                chars.next();
                out.push(Letter::L2);
            } else {
                out.push(Letter::L);
            }
        }
        Ok(Signature(out))
    }
}

/// All spine edges of one çark, in cyclic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpineCycle {
    /// Spine forms. Consecutive entries are related alternately by `S` and by
    /// `L` / `L2`; the form after the last is the first.
    pub forms: Vec<QuadForm>,
    /// Turns recorded at each trivalent spine vertex, one per `S L^e` step.
    pub turns: Signature,
    /// Position of the positive form (`a > 0`) whose step produced
    /// `turns[0]`: 0 when the cycle was entered at a positive form, else the
    /// last position.
    pub base_index: usize,
}

impl SpineCycle {
    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn contains(&self, f: &QuadForm) -> bool {
        self.forms.contains(f)
    }
}

/// Generates every spine form of the çark through `f`, starting at `f`.
///
/// From a spine form `g` with `a > 0` the loop applies `S L`, and a second
/// `L` when the result is off the spine (`a c > 0`), until it returns to its
/// starting form. The bivalent partners `g . S` (with `a < 0`) are spine
/// edges too and are interleaved after each `g`.
pub fn revolve_around_spine(f: &QuadForm) -> Result<SpineCycle> {
    if !f.is_on_spine()? {
        return Err(Error::NotOnSpine(f.to_string()));
    }
    let base = if f.a.is_positive() {
        f.clone()
    } else {
        f.apply_letter(Letter::S)
    };
    let mut forms = Vec::new();
    let mut turns = Vec::new();
    let mut g = base.clone();
    loop {
        let partner = g.apply_letter(Letter::S);
        let mut next = partner.apply_letter(Letter::L);
        let mut turn = Letter::L;
        if !next.on_spine_unchecked() {
            next = next.apply_letter(Letter::L);
            turn = Letter::L2;
        }
        if !next.on_spine_unchecked() {
            return Err(Error::Internal(format!("spine lost after {partner}")));
        }
        forms.push(g);
        forms.push(partner);
        turns.push(turn);
        g = next;
        if g == base {
            break;
        }
    }
    let base_index = if f.a.is_positive() {
        0
    } else {
        // list from f itself; the run that produced turns[0] is now last
        forms.rotate_left(1);
        forms.len() - 1
    };
    Ok(SpineCycle {
        forms,
        turns: Signature(turns),
        base_index,
    })
}

/// Rotation-canonical signature of a spine.
pub fn spine_signature(cycle: &SpineCycle) -> Signature {
    cycle.turns.canonical()
}

/// Word along the spine from `from` to `to`, moving `L` (or `LL` when `L`
/// leaves the spine) then `S`, and stopping as soon as `to` is reached.
/// `from . word == to`. For `to == from` the word goes once around.
pub fn path_on_spine(from: &QuadForm, to: &QuadForm) -> Result<Word> {
    if !from.is_on_spine()? {
        return Err(Error::NotOnSpine(from.to_string()));
    }
    let not_found = || Error::NotOnSameSpine {
        from: from.to_string(),
        to: to.to_string(),
    };
    if to.discriminant() != from.discriminant() {
        return Err(not_found());
    }
    let mut letters = Vec::new();
    let mut g = from.clone();
    loop {
        g = g.apply_letter(Letter::L);
        let mut turn = Letter::L;
        if !g.on_spine_unchecked() {
            g = g.apply_letter(Letter::L);
            turn = Letter::L2;
        }
        letters.push(turn);
        if &g == to {
            break;
        }
        if &g == from {
            return Err(not_found());
        }
        g = g.apply_letter(Letter::S);
        letters.push(Letter::S);
        if &g == to {
            break;
        }
        if &g == from {
            return Err(not_found());
        }
    }
    Word::new(letters)
}

/// Word of the inverse element: letters reversed, `L` and `L2` swapped.
pub fn reverse_path(w: &Word) -> Word {
    let letters = w.letters().iter().rev().map(|l| l.inverse()).collect();
    Word::new(letters).expect("reversal preserves normal form")
}

/// Reverses an arbitrary letter sequence.
pub fn reverse_letters(letters: &[Letter]) -> Vec<Letter> {
    letters.iter().rev().map(|l| l.inverse()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    /// Bivalent vertex.
    White,
    /// Trivalent vertex.
    Black,
}

impl NodeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            NodeKind::White => "white",
            NodeKind::Black => "black",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CarkNode {
    pub id: usize,
    pub kind: NodeKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CarkEdge {
    pub id: usize,
    /// Bivalent endpoint.
    pub from: usize,
    /// Trivalent endpoint.
    pub to: usize,
    pub form: QuadForm,
    pub on_spine: bool,
    /// Distance in edges from the spine.
    pub depth: usize,
    /// The edge of the queried form.
    pub marked: bool,
}

/// A finite piece of a çark: the whole spine plus Farey-component trees
/// expanded to some depth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CarkGraph {
    pub nodes: Vec<CarkNode>,
    pub edges: Vec<CarkEdge>,
    pub signature: Signature,
}

impl CarkGraph {
    pub fn degree(&self, node: usize) -> usize {
        self.edges
            .iter()
            .filter(|e| e.from == node || e.to == node)
            .count()
    }

    pub fn spine_len(&self) -> usize {
        self.edges.iter().filter(|e| e.on_spine).count()
    }
}

fn white_key(f: &QuadForm) -> QuadForm {
    f.clone().min(f.apply_letter(Letter::S))
}

fn black_key(f: &QuadForm) -> QuadForm {
    let l = f.apply_letter(Letter::L);
    let l2 = f.apply_letter(Letter::L2);
    f.clone().min(l).min(l2)
}

#[derive(Default)]
struct GraphBuilder {
    nodes: Vec<CarkNode>,
    node_ids: HashMap<(NodeKind, QuadForm), usize>,
    edges: Vec<CarkEdge>,
    edge_ids: HashMap<QuadForm, usize>,
}

impl GraphBuilder {
    fn node(&mut self, kind: NodeKind, key: QuadForm) -> usize {
        let next = self.nodes.len();
        *self.node_ids.entry((kind, key)).or_insert_with(|| {
            self.nodes.push(CarkNode { id: next, kind });
            next
        })
    }

    fn edge(&mut self, form: QuadForm, on_spine: bool, depth: usize) -> bool {
        if self.edge_ids.contains_key(&form) {
            return false;
        }
        let from = self.node(NodeKind::White, white_key(&form));
        let to = self.node(NodeKind::Black, black_key(&form));
        let id = self.edges.len();
        self.edge_ids.insert(form.clone(), id);
        self.edges.push(CarkEdge {
            id,
            from,
            to,
            form,
            on_spine,
            depth,
            marked: false,
        });
        true
    }
}

/// Spine of `f`'s class plus every off-spine edge within `depth` edges of
/// the spine. The edge of `f` is always included (together with its route to
/// the spine) and marked.
pub fn expand_cark(f: &QuadForm, depth: usize) -> Result<CarkGraph> {
    let route = cark_reduce_path(f)?;
    let cycle = revolve_around_spine(&route.end)?;
    let mut g = GraphBuilder::default();
    for form in &cycle.forms {
        g.edge(form.clone(), true, 0);
    }

    // Off-spine edges at odd depth hang from their trivalent end and grow
    // through the bivalent one; at even depth the other way round.
    let mut queue: VecDeque<(QuadForm, usize)> = VecDeque::new();
    if depth >= 1 {
        for form in &cycle.forms {
            for l in [Letter::L, Letter::L2] {
                let h = form.apply_letter(l);
                if !h.on_spine_unchecked() && g.edge(h.clone(), false, 1) {
                    queue.push_back((h, 1));
                }
            }
        }
    }
    while let Some((h, d)) = queue.pop_front() {
        if d >= depth {
            continue;
        }
        let children: Vec<QuadForm> = if d % 2 == 1 {
            vec![h.apply_letter(Letter::S)]
        } else {
            vec![h.apply_letter(Letter::L), h.apply_letter(Letter::L2)]
        };
        for child in children {
            if g.edge(child.clone(), false, d + 1) {
                queue.push_back((child, d + 1));
            }
        }
    }

    // route from f down to the spine: f at distance len, entry at 0
    let route_forms: Vec<&QuadForm> = route.forms().collect();
    let n = route.len();
    for (i, form) in route_forms.iter().enumerate().rev().skip(1) {
        g.edge((*form).clone(), false, n - i);
    }
    if let Some(&id) = g.edge_ids.get(f) {
        g.edges[id].marked = true;
    }

    Ok(CarkGraph {
        nodes: g.nodes,
        edges: g.edges,
        signature: spine_signature(&cycle),
    })
}

/// Groups spine forms of a discriminant into cycles. Each form with
/// `a c < 0` lies on exactly one spine.
pub fn spines_of(forms: &[QuadForm]) -> Result<Vec<SpineCycle>> {
    let mut seen: BTreeMap<QuadForm, ()> = BTreeMap::new();
    let mut out = Vec::new();
    for f in forms {
        if seen.contains_key(f) {
            continue;
        }
        let cycle = revolve_around_spine(f)?;
        for g in &cycle.forms {
            seen.insert(g.clone(), ());
        }
        out.push(cycle);
    }
    Ok(out)
}
