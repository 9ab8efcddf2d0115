//! Exact arithmetic on PSL(2, Z).
//!
//! Elements are 2x2 integer matrices of determinant 1 taken modulo sign.
//! The group is the free product of `<S>` (order 2) and `<L>` (order 3) with
//!
//! ```text
//! L = (1 -1)    S = (0 -1)
//!     (1  0)        (1  0)
//! ```
//!
//! so every element has a unique normal-form word in which `S` alternates
//! with a block `L` or `L2`.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Trace classification of a group element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementKind {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl ElementKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ElementKind::Elliptic => "elliptic",
            ElementKind::Parabolic => "parabolic",
            ElementKind::Hyperbolic => "hyperbolic",
        }
    }
}

/// An element of PSL(2, Z), stored as the canonical lift `(p q; r s)`.
///
/// The lift is chosen with `r > 0`, or `r = 0` and `p > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    p: BigInt,
    q: BigInt,
    r: BigInt,
    s: BigInt,
}

impl GroupElement {
    /// Builds an element from a matrix, rejecting determinants other than 1.
    pub fn new(p: BigInt, q: BigInt, r: BigInt, s: BigInt) -> Result<Self> {
        let det = &p * &s - &q * &r;
        if !det.is_one() {
            return Err(Error::Determinant(det.to_string()));
        }
        Ok(Self::normalized(p, q, r, s))
    }

    pub fn from_i64(p: i64, q: i64, r: i64, s: i64) -> Result<Self> {
        Self::new(p.into(), q.into(), r.into(), s.into())
    }

    fn normalized(p: BigInt, q: BigInt, r: BigInt, s: BigInt) -> Self {
        let flip = r.is_negative() || (r.is_zero() && p.is_negative());
        if flip {
            GroupElement {
                p: -p,
                q: -q,
                r: -r,
                s: -s,
            }
        } else {
            GroupElement { p, q, r, s }
        }
    }

    pub fn identity() -> Self {
        GroupElement {
            p: BigInt::one(),
            q: BigInt::zero(),
            r: BigInt::zero(),
            s: BigInt::one(),
        }
    }

    /// `S = (0 -1; 1 0)`.
    pub fn s() -> Self {
        Self::normalized(0.into(), (-1).into(), 1.into(), 0.into())
    }

    /// `L = (1 -1; 1 0)`.
    pub fn l() -> Self {
        Self::normalized(1.into(), (-1).into(), 1.into(), 0.into())
    }

    /// `L2 = L * L = (0 -1; 1 -1)`.
    pub fn l2() -> Self {
        Self::normalized(0.into(), (-1).into(), 1.into(), (-1).into())
    }

    /// Translation `T = (1 1; 0 1)`, equal to `L * S`.
    pub fn t() -> Self {
        Self::normalized(1.into(), 1.into(), 0.into(), 1.into())
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }
    pub fn q(&self) -> &BigInt {
        &self.q
    }
    pub fn r(&self) -> &BigInt {
        &self.r
    }
    pub fn s_entry(&self) -> &BigInt {
        &self.s
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.p, &self.q, &self.r, &self.s]
    }

    pub fn is_identity(&self) -> bool {
        self == &Self::identity()
    }

    /// Trace of the canonical lift. Only `|trace|` is well defined on PSL(2, Z).
    pub fn trace(&self) -> BigInt {
        &self.p + &self.s
    }

    pub fn classify(&self) -> ElementKind {
        let t = self.trace().abs();
        let two = BigInt::from(2);
        match t.cmp(&two) {
            std::cmp::Ordering::Less => ElementKind::Elliptic,
            std::cmp::Ordering::Equal => ElementKind::Parabolic,
            std::cmp::Ordering::Greater => ElementKind::Hyperbolic,
        }
    }

    pub fn multiply(&self, other: &GroupElement) -> GroupElement {
        let p = &self.p * &other.p + &self.q * &other.r;
        let q = &self.p * &other.q + &self.q * &other.s;
        let r = &self.r * &other.p + &self.s * &other.r;
        let s = &self.r * &other.q + &self.s * &other.s;
        Self::normalized(p, q, r, s)
    }

    pub fn inverse(&self) -> GroupElement {
        Self::normalized(self.s.clone(), -&self.q, -&self.r, self.p.clone())
    }

    pub fn pow(&self, mut n: u64) -> GroupElement {
        let mut base = self.clone();
        let mut acc = GroupElement::identity();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.multiply(&base);
            }
            base = base.multiply(&base);
            n >>= 1;
        }
        acc
    }

    /// Column action `(x, y) -> M (x, y)^T`.
    pub fn apply(&self, x: &BigInt, y: &BigInt) -> (BigInt, BigInt) {
        (&self.p * x + &self.q * y, &self.r * x + &self.s * y)
    }

    /// Normal-form word for this element.
    pub fn to_word(&self) -> Word {
        matrix_to_word(self)
    }
}

impl Mul for &GroupElement {
    type Output = GroupElement;
    fn mul(self, rhs: &GroupElement) -> GroupElement {
        self.multiply(rhs)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.p, self.q, self.r, self.s)
    }
}

/// Trace classification as a free function.
pub fn classify_element(w: &GroupElement) -> ElementKind {
    w.classify()
}

/// A generator letter. `L2` stands for `L * L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    L,
    L2,
    S,
}

impl Letter {
    pub fn matrix(self) -> GroupElement {
        match self {
            Letter::S => GroupElement::s(),
            Letter::L => GroupElement::l(),
            Letter::L2 => GroupElement::l2(),
        }
    }

    pub fn inverse(self) -> Letter {
        match self {
            Letter::S => Letter::S,
            Letter::L => Letter::L2,
            Letter::L2 => Letter::L,
        }
    }

    pub fn is_rotation(self) -> bool {
        matches!(self, Letter::L | Letter::L2)
    }

    /// Wire token: `S`, `L`, or `LL`.
    pub fn token(self) -> &'static str {
        match self {
            Letter::S => "S",
            Letter::L => "L",
            Letter::L2 => "LL",
        }
    }

    fn l_power(self) -> u8 {
        match self {
            Letter::L => 1,
            Letter::L2 => 2,
            Letter::S => 0,
        }
    }
}

/// Parses a letter stream such as `"LSLLS"`. `LL` is read as a single `L2`
/// token; a third consecutive `L` starts a new token.
pub fn parse_letters(text: &str) -> Result<Vec<Letter>> {
    let bytes = text.trim().as_bytes();
    let mut out = Vec::with_capacity(bytes.len());
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'S' => {
                out.push(Letter::S);
                i += 1;
            }
            b'L' => {
                if bytes.get(i + 1) == Some(&b'L') {
                    out.push(Letter::L2);
                    i += 2;
                } else {
                    out.push(Letter::L);
                    i += 1;
                }
            }
            other => {
                return Err(Error::InvalidWord(format!(
                    "unexpected character {:?} in {text:?}",
                    other as char
                )))
            }
        }
    }
    Ok(out)
}

pub fn letters_to_string(letters: &[Letter]) -> String {
    letters.iter().map(|l| l.token()).collect()
}

/// A word in free-product normal form: `S` strictly alternates with single
/// `L` / `L2` letters. The empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        for pair in letters.windows(2) {
            if pair[0].is_rotation() == pair[1].is_rotation() {
                return Err(Error::InvalidWord(format!(
                    "{} is not in normal form",
                    letters_to_string(&letters)
                )));
            }
        }
        Ok(Word { letters })
    }

    pub fn empty() -> Self {
        Word::default()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    /// Number of letters, counting `L2` once.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    pub fn to_matrix(&self) -> GroupElement {
        word_to_matrix(&self.letters)
    }

    /// Drops the last letter.
    pub fn parent(&self) -> Option<Word> {
        if self.letters.is_empty() {
            return None;
        }
        Some(Word {
            letters: self.letters[..self.letters.len() - 1].to_vec(),
        })
    }

    /// Appends a letter, returning `None` when the result leaves normal form.
    pub fn push(&self, letter: Letter) -> Option<Word> {
        if let Some(last) = self.last() {
            if last.is_rotation() == letter.is_rotation() {
                return None;
            }
        }
        let mut letters = self.letters.clone();
        letters.push(letter);
        Some(Word { letters })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&letters_to_string(&self.letters))
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Word::new(parse_letters(s)?)
    }
}

/// Left-to-right product of generator matrices. Accepts any letter sequence.
pub fn word_to_matrix(letters: &[Letter]) -> GroupElement {
    letters
        .iter()
        .fold(GroupElement::identity(), |m, l| m.multiply(&l.matrix()))
}

/// Cancels `S S`, merges adjacent rotations mod 3, and repeats until the
/// sequence is in normal form.
pub fn free_reduce(letters: impl IntoIterator<Item = Letter>) -> Word {
    let mut stack: Vec<Letter> = Vec::new();
    for letter in letters {
        match (stack.last().copied(), letter) {
            (Some(Letter::S), Letter::S) => {
                stack.pop();
            }
            (Some(top), l) if top.is_rotation() && l.is_rotation() => {
                stack.pop();
                match (top.l_power() + l.l_power()) % 3 {
                    1 => stack.push(Letter::L),
                    2 => stack.push(Letter::L2),
                    _ => {}
                }
            }
            _ => stack.push(letter),
        }
    }
    Word { letters: stack }
}

fn push_translation(out: &mut Vec<Letter>, n: &BigInt) {
    // T = L S and T^-1 = S L2.
    let count = n.magnitude();
    let mut k = num_bigint::BigUint::zero();
    while &k < count {
        if n.is_positive() {
            out.extend([Letter::L, Letter::S]);
        } else {
            out.extend([Letter::S, Letter::L2]);
        }
        k += 1u32;
    }
}

/// Normal-form word of an element.
///
/// Runs the Euclidean algorithm on the first column to write
/// `m = T^n1 S T^n2 S ... T^nk`, rewrites `T = L S`, and freely reduces.
/// The free-product normal form is unique, so the result is the minimal word.
pub fn matrix_to_word(m: &GroupElement) -> Word {
    let (mut p, mut q, mut r, mut s) = (m.p.clone(), m.q.clone(), m.r.clone(), m.s.clone());
    let mut letters = Vec::new();
    while !r.is_zero() {
        let n = p.div_floor(&r);
        // m = T^n * S * m' with m' = S T^-n m
        let np = -&r;
        let nq = -&s;
        let nr = &p - &n * &r;
        let ns = &q - &n * &s;
        push_translation(&mut letters, &n);
        letters.push(Letter::S);
        p = np;
        q = nq;
        r = nr;
        s = ns;
    }
    // r = 0 and p = s = +-1, so m' = T^(p q)
    let n = &p * &q;
    push_translation(&mut letters, &n);
    free_reduce(letters)
}

/// Longest common prefix of two words.
pub fn word_meet(w: &Word, w2: &Word) -> Word {
    let n = w
        .letters
        .iter()
        .zip(&w2.letters)
        .take_while(|(a, b)| a == b)
        .count();
    Word {
        letters: w.letters[..n].to_vec(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn generator_orders() {
        let l = GroupElement::l();
        assert!(l.multiply(&l).multiply(&l).is_identity());
        let s = GroupElement::s();
        assert!(s.multiply(&s).is_identity());
        assert_eq!(l.multiply(&l), GroupElement::l2());
    }

    #[test]
    fn l_times_s_is_translation() {
        let ls = GroupElement::l().multiply(&GroupElement::s());
        assert_eq!(ls, GroupElement::from_i64(1, 1, 0, 1).unwrap());
        assert_eq!(word_to_matrix(&parse_letters("LS").unwrap()), ls);
    }

    #[test]
    fn inverses() {
        assert!(GroupElement::identity().inverse().is_identity());
        assert_eq!(GroupElement::s().inverse(), GroupElement::s());
        assert_eq!(GroupElement::l().inverse(), GroupElement::l2());
    }

    #[test]
    fn classification() {
        assert_eq!(GroupElement::s().classify(), ElementKind::Elliptic);
        assert_eq!(GroupElement::t().classify(), ElementKind::Parabolic);
        let h = GroupElement::from_i64(2, 1, 1, 1).unwrap();
        assert_eq!(h.classify(), ElementKind::Hyperbolic);
    }

    #[test]
    fn determinant_checked() {
        assert!(matches!(
            GroupElement::from_i64(2, 0, 0, 1),
            Err(Error::Determinant(_))
        ));
    }

    #[test]
    fn sign_normalization_is_idempotent() {
        let m = GroupElement::from_i64(-2, -1, -1, -1).unwrap();
        assert_eq!(m, GroupElement::from_i64(2, 1, 1, 1).unwrap());
        let again = GroupElement::new(m.p.clone(), m.q.clone(), m.r.clone(), m.s.clone()).unwrap();
        assert_eq!(again, m);
    }

    #[test]
    fn letter_parsing() {
        assert_eq!(parse_letters("SS").unwrap(), vec![Letter::S, Letter::S]);
        assert_eq!(parse_letters("LLL").unwrap(), vec![Letter::L2, Letter::L]);
        assert!(word_to_matrix(&parse_letters("SS").unwrap()).is_identity());
        assert!(word_to_matrix(&[]).is_identity());
        assert!("LLL".parse::<Word>().is_err());
        assert!("SSL".parse::<Word>().is_err());
        assert!("x".parse::<Word>().is_err());
        assert_eq!(w("SLLSL").to_string(), "SLLSL");
    }

    #[test]
    fn decomposition_examples() {
        assert!(matrix_to_word(&GroupElement::identity()).is_empty());
        assert_eq!(matrix_to_word(&GroupElement::t()), w("LS"));
        assert_eq!(matrix_to_word(&GroupElement::s()), w("S"));
        assert_eq!(matrix_to_word(&GroupElement::l2()), w("LL"));
    }

    #[test]
    fn free_reduction() {
        let r = free_reduce(parse_letters("LSSLL").unwrap());
        assert!(r.is_empty());
        let r = free_reduce(parse_letters("LSSLS").unwrap());
        assert_eq!(r, w("LLS"));
    }

    #[test]
    fn meet_examples() {
        // (LS)^2 (L2 S)^3 L S L  and  (LS)^2 (L2 S)^3 L2 S L S L2
        let a = w("LSLSLLSLLSLLSLSL");
        let b = w("LSLSLLSLLSLLSLLSLSLL");
        assert_eq!(word_meet(&a, &b), w("LSLSLLSLLSLLS"));
        assert_eq!(word_meet(&a, &a), a);
        assert!(word_meet(&w("SL"), &w("LS")).is_empty());
    }

    #[test]
    fn push_respects_normal_form() {
        assert!(w("LS").push(Letter::S).is_none());
        assert_eq!(w("LS").push(Letter::L2).unwrap(), w("LSLL"));
        assert_eq!(w("LSL").parent().unwrap(), w("LS"));
    }
}
