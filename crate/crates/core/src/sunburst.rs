//! The slit disk: one cell per element of the modular group.
//!
//! A central disk is cut into three sectors labelled `I`, `L`, `L2`. Each
//! further annulus continues the cells of the previous one: a cell whose word
//! ends in `S` gets two children `WL` and `WL2` splitting its angular
//! interval in half, every other cell gets the single child `WS`. Annuli
//! therefore hold 3, 3, 6, 6, 12, 12, ... cells.
//!
//! Angles are kept as integers in units of `1 / (3 * 2^32)` of a full turn so
//! that adjacency is decided exactly.

use std::collections::HashMap;
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::modular_group::{free_reduce, matrix_to_word, word_meet, GroupElement, Letter, Word};

/// A full turn in angle units.
pub const FULL_TURN: u64 = 3 << 32;
/// Depth used when a caller does not ask for one.
pub const DEFAULT_DEPTH: usize = 8;
/// Depth cap unless overridden by `CARKWORK_MAX_DEPTH`.
pub const DEFAULT_MAX_DEPTH: usize = 12;
/// Angles halve every second annulus; 32 halvings fit the angle unit.
const ANGLE_RESOLUTION_DEPTH: usize = 64;

/// The configured depth cap.
pub fn max_depth() -> usize {
    std::env::var("CARKWORK_MAX_DEPTH")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .unwrap_or(DEFAULT_MAX_DEPTH)
        .min(ANGLE_RESOLUTION_DEPTH)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    /// The element this cell displays.
    pub word: Word,
    /// Label from the construction, before any recentering.
    pub base: Word,
    pub annulus: usize,
    /// Angular interval `[start, end)` in units of [`FULL_TURN`].
    pub start: u64,
    pub end: u64,
    pub parent: Option<usize>,
}

impl Cell {
    pub fn angle_start(&self) -> f64 {
        self.start as f64 / FULL_TURN as f64 * TAU
    }

    pub fn angle_end(&self) -> f64 {
        self.end as f64 / FULL_TURN as f64 * TAU
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellGeometry {
    pub inner_radius: f64,
    pub outer_radius: f64,
    pub angle_start: f64,
    pub angle_end: f64,
}

const BASE_RADIUS: f64 = 1.0;
const THICKNESS: f64 = 1.0;

/// Radii and angles for drawing a cell. Annulus 0 is the central disk of
/// radius 1 and every further annulus is 1 thick.
pub fn cell_geometry(cell: &Cell) -> CellGeometry {
    let k = cell.annulus as f64;
    CellGeometry {
        inner_radius: if cell.annulus == 0 {
            0.0
        } else {
            BASE_RADIUS + (k - 1.0) * THICKNESS
        },
        outer_radius: BASE_RADIUS + k * THICKNESS,
        angle_start: cell.angle_start(),
        angle_end: cell.angle_end(),
    }
}

/// All cells out to some depth, in annulus order and by angle within each
/// annulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    pub center: Word,
    pub depth: usize,
    pub cells: Vec<Cell>,
    children: Vec<Vec<usize>>,
    /// `annuli[k]` is the index range of annulus `k` in `cells`.
    annuli: Vec<std::ops::Range<usize>>,
    by_word: HashMap<Word, usize>,
}

impl Layout {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn find(&self, word: &Word) -> Option<usize> {
        self.by_word.get(word).copied()
    }

    pub fn index_of(&self, word: &Word) -> Result<usize> {
        self.find(word)
            .ok_or_else(|| Error::UnknownCell(word.to_string()))
    }

    pub fn children(&self, idx: usize) -> &[usize] {
        &self.children[idx]
    }

    pub fn annulus_sizes(&self) -> Vec<usize> {
        self.annuli.iter().map(|r| r.len()).collect()
    }

    pub fn annulus(&self, k: usize) -> &[Cell] {
        &self.cells[self.annuli[k].clone()]
    }

    fn reindex(&mut self) {
        self.by_word = self
            .cells
            .iter()
            .enumerate()
            .map(|(i, c)| (c.word.clone(), i))
            .collect();
    }
}

fn check_depth(depth: usize) -> Result<()> {
    let max = max_depth();
    if depth > max {
        return Err(Error::DepthExceeded { depth, max });
    }
    Ok(())
}

/// The slit disk out to annulus `depth`, centered at the identity.
pub fn enumerate_cells(depth: usize) -> Result<Layout> {
    check_depth(depth)?;
    let sector = FULL_TURN / 3;
    let mut cells: Vec<Cell> = [vec![], vec![Letter::L], vec![Letter::L2]]
        .into_iter()
        .enumerate()
        .map(|(i, letters)| {
            let word = Word::new(letters).expect("single letters are normal");
            Cell {
                word: word.clone(),
                base: word,
                annulus: 0,
                start: i as u64 * sector,
                end: (i as u64 + 1) * sector,
                parent: None,
            }
        })
        .collect();
    let mut children = vec![Vec::new(); 3];
    let mut annuli: Vec<std::ops::Range<usize>> = Vec::new();
    annuli.push(0..3);

    for k in 1..=depth {
        let previous = annuli[k - 1].clone();
        let first = cells.len();
        for p in previous {
            let parent = cells[p].clone();
            let spawned: Vec<(Letter, u64, u64)> = if parent.word.last() == Some(Letter::S) {
                let mid = parent.start + (parent.end - parent.start) / 2;
                vec![
                    (Letter::L, parent.start, mid),
                    (Letter::L2, mid, parent.end),
                ]
            } else {
                vec![(Letter::S, parent.start, parent.end)]
            };
            for (letter, start, end) in spawned {
                let word = parent
                    .word
                    .push(letter)
                    .expect("construction keeps normal form");
                children[p].push(cells.len());
                children.push(Vec::new());
                cells.push(Cell {
                    word: word.clone(),
                    base: word,
                    annulus: k,
                    start,
                    end,
                    parent: Some(p),
                });
            }
        }
        annuli.push(first..cells.len());
    }

    let mut layout = Layout {
        center: Word::empty(),
        depth,
        cells,
        children,
        annuli,
        by_word: HashMap::new(),
    };
    layout.reindex();
    Ok(layout)
}

/// Relabel every cell `V` of a layout as `g V`.
pub fn translate(layout: &Layout, g: &GroupElement) -> Layout {
    let mut out = layout.clone();
    for cell in &mut out.cells {
        cell.word = matrix_to_word(&g.multiply(&cell.word.to_matrix()));
    }
    out.center = matrix_to_word(&g.multiply(&layout.center.to_matrix()));
    out.reindex();
    out
}

/// The slit disk with `center` at the middle: the cell built as `V`
/// displays `center V`.
pub fn recenter(center: &Word, depth: usize) -> Result<Layout> {
    let layout = enumerate_cells(depth)?;
    Ok(translate(&layout, &center.to_matrix()))
}

/// Cells sharing a boundary with `idx`: the parent, the children and the two
/// cells on either side in the same annulus.
pub fn neighbors(layout: &Layout, idx: usize) -> Result<Vec<usize>> {
    let cell = layout
        .cells
        .get(idx)
        .ok_or_else(|| Error::UnknownCell(format!("#{idx}")))?;
    let mut out = Vec::with_capacity(5);
    out.extend(cell.parent);
    out.extend_from_slice(&layout.children[idx]);
    let ring = layout.annuli[cell.annulus].clone();
    let n = ring.len();
    let pos = idx - ring.start;
    let left = ring.start + (pos + n - 1) % n;
    let right = ring.start + (pos + 1) % n;
    out.push(left);
    if right != left {
        out.push(right);
    }
    Ok(out)
}

/// The chain of ancestors from `idx` back to the central disk.
pub fn path_to_root(layout: &Layout, idx: usize) -> Vec<usize> {
    let mut out = vec![idx];
    let mut current = idx;
    while let Some(p) = layout.cells[current].parent {
        out.push(p);
        current = p;
    }
    out
}

/// A cell whose neighbours break the word-length laws.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawViolation {
    pub word: Word,
    pub detail: String,
}

/// Checks every cell of annulus at least 3 below the outermost annulus.
///
/// Three neighbours must be `WL`, `WL2` and `WS`, each sharing all but at
/// most one letter with `W`. The others must have the same length as `W`
/// and share at most `len(W) - 2` leading letters with it. A cell ending in
/// `S` has five neighbours, any other cell four.
pub fn length_law_violations(layout: &Layout) -> Vec<LawViolation> {
    let mut out = Vec::new();
    let last = layout.depth;
    for (idx, cell) in layout.cells.iter().enumerate() {
        if cell.annulus < 3 || cell.annulus >= last {
            continue;
        }
        let w = &cell.word;
        let n = w.len();
        let mut problems = Vec::new();
        let near: Vec<Word> = [Letter::L, Letter::L2, Letter::S]
            .iter()
            .map(|l| free_reduce(w.letters().iter().copied().chain([*l])))
            .collect();
        let around: Vec<Word> = neighbors(layout, idx)
            .expect("index comes from the layout")
            .into_iter()
            .map(|j| layout.cells[j].word.clone())
            .collect();
        let expected = if w.last() == Some(Letter::S) { 5 } else { 4 };
        if around.len() != expected {
            problems.push(format!("{} neighbours, expected {expected}", around.len()));
        }
        for v in &near {
            if !around.contains(v) {
                problems.push(format!("{v} is not adjacent"));
            } else if word_meet(w, v).len() + 1 < n {
                problems.push(format!("{v} shares fewer than len - 1 letters"));
            }
        }
        for v in around.iter().filter(|v| !near.contains(v)) {
            if v.len() != n {
                problems.push(format!("{v} has length {} instead of {n}", v.len()));
            }
            if word_meet(w, v).len() + 2 > n {
                problems.push(format!("{v} shares more than len - 2 letters"));
            }
        }
        if !problems.is_empty() {
            out.push(LawViolation {
                word: w.clone(),
                detail: problems.join("; "),
            });
        }
    }
    out
}
