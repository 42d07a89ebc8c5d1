//! Truncated integer models of the free permutation on `k` generators (`Z × B` with
//! `(n, b) ↦ (n + 1, b)`) and of the free rack on one generator (`Z` with
//! `a ▷ b = b + 1`), together with the universal morphisms out of them.
//!
//! Both objects are infinite, so every value is confined to a window `|v| ≤ W` and
//! leaving the window is a hard error.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::functors::trivial_quandle;
use crate::perm::Permutation;
use crate::rack::FiniteRack;

pub const DEFAULT_WINDOW: i64 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeError {
    #[error("value {value} leaves the window |v| <= {window}")]
    WindowExceeded { value: i64, window: i64 },
    #[error("generator index {index} is outside 0..{generators}")]
    UnknownGenerator { index: usize, generators: usize },
    #[error("column {column}: {message}")]
    Parse { column: usize, message: String },
}

/// An element `v` of the free rack on one generator, standing for `F^v(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeRackElement(i64);

impl FreeRackElement {
    pub fn value(self) -> i64 {
        self.0
    }
}

/// Rack words over the single generator `x`. Text form: `x`, `(A > B)`, `(A <| B)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum RackWord {
    Generator,
    Op(Box<RackWord>, Box<RackWord>),
    InvOp(Box<RackWord>, Box<RackWord>),
}

impl RackWord {
    pub fn op(left: RackWord, right: RackWord) -> RackWord {
        RackWord::Op(Box::new(left), Box::new(right))
    }

    pub fn inv_op(left: RackWord, right: RackWord) -> RackWord {
        RackWord::InvOp(Box::new(left), Box::new(right))
    }

    /// The generator has depth 0.
    pub fn depth(&self) -> usize {
        match self {
            RackWord::Generator => 0,
            RackWord::Op(l, r) | RackWord::InvOp(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// Every word of depth at most `max_depth`.
    pub fn all_up_to_depth(max_depth: usize) -> Vec<RackWord> {
        let mut words = vec![RackWord::Generator];
        for _ in 0..max_depth {
            let mut next = vec![RackWord::Generator];
            for l in &words {
                for r in &words {
                    next.push(RackWord::op(l.clone(), r.clone()));
                    next.push(RackWord::inv_op(l.clone(), r.clone()));
                }
            }
            words = next;
        }
        words
    }
}

impl fmt::Display for RackWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RackWord::Generator => f.write_str("x"),
            RackWord::Op(l, r) => write!(f, "({l} > {r})"),
            RackWord::InvOp(l, r) => write!(f, "({l} <| {r})"),
        }
    }
}

impl fmt::Debug for RackWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

struct WordParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl WordParser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, FreeError> {
        Err(FreeError::Parse { column: self.pos + 1, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn word(&mut self) -> Result<RackWord, FreeError> {
        self.skip_ws();
        match self.src.get(self.pos) {
            Some(b'x') => {
                self.pos += 1;
                Ok(RackWord::Generator)
            }
            Some(b'(') => {
                self.pos += 1;
                let left = self.word()?;
                self.skip_ws();
                let inverse = if self.src[self.pos..].starts_with(b"<|") {
                    self.pos += 2;
                    true
                } else if self.src.get(self.pos) == Some(&b'>') {
                    self.pos += 1;
                    false
                } else {
                    return self.err("expected `>` or `<|`");
                };
                let right = self.word()?;
                self.skip_ws();
                if self.src.get(self.pos) != Some(&b')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(if inverse { RackWord::inv_op(left, right) } else { RackWord::op(left, right) })
            }
            Some(_) => self.err("expected `x` or `(`"),
            None => self.err("unexpected end of word"),
        }
    }
}

impl FromStr for RackWord {
    type Err = FreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = WordParser { src: s.as_bytes(), pos: 0 };
        let w = p.word()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return p.err("trailing input after word");
        }
        Ok(w)
    }
}

fn in_window(value: i64, window: i64) -> Result<i64, FreeError> {
    if value.abs() > window {
        Err(FreeError::WindowExceeded { value, window })
    } else {
        Ok(value)
    }
}

/// Evaluates `word` in the free rack `Z` with `a ▷ b = b + 1` and generator `0`.
///
/// The left operand does not influence the result but is still evaluated, so a left
/// subterm that leaves the window is reported.
pub fn free_rack_eval(word: &RackWord, window: i64) -> Result<FreeRackElement, FreeError> {
    fn go(word: &RackWord, window: i64) -> Result<i64, FreeError> {
        match word {
            RackWord::Generator => in_window(0, window),
            RackWord::Op(l, r) => {
                go(l, window)?;
                in_window(go(r, window)? + 1, window)
            }
            RackWord::InvOp(l, r) => {
                go(l, window)?;
                in_window(go(r, window)? - 1, window)
            }
        }
    }
    go(word, window).map(FreeRackElement)
}

/// An element `(shift, generator)` of the free permutation on `k` generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreePermElement {
    pub shift: i64,
    pub generator: usize,
}

/// The free permutation on `generators` generators, truncated to `|shift| ≤ window`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FreePermModel {
    pub generators: usize,
    pub window: i64,
}

impl FreePermModel {
    pub fn new(generators: usize, window: i64) -> Self {
        FreePermModel { generators, window }
    }

    pub fn element(&self, generator: usize, shift: i64) -> Result<FreePermElement, FreeError> {
        if generator >= self.generators {
            return Err(FreeError::UnknownGenerator { index: generator, generators: self.generators });
        }
        in_window(shift, self.window)?;
        Ok(FreePermElement { shift, generator })
    }

    /// `(n, b) ↦ (n + 1, b)`.
    pub fn step(&self, e: FreePermElement) -> Result<FreePermElement, FreeError> {
        self.element(e.generator, e.shift + 1)
    }

    pub fn step_inverse(&self, e: FreePermElement) -> Result<FreePermElement, FreeError> {
        self.element(e.generator, e.shift - 1)
    }

    pub fn elements(&self) -> impl Iterator<Item = FreePermElement> + '_ {
        (0..self.generators)
            .flat_map(move |generator| (-self.window..=self.window).map(move |shift| FreePermElement { shift, generator }))
    }

    /// Orbits of `step` inside the window, ordered by generator.
    pub fn orbits(&self) -> Vec<Vec<FreePermElement>> {
        let mut seen = std::collections::BTreeSet::new();
        let mut out = Vec::new();
        for e in self.elements() {
            if seen.contains(&e) {
                continue;
            }
            // walk down to the bottom of the truncated orbit, then up to the top
            let mut start = e;
            while let Ok(prev) = self.step_inverse(start) {
                start = prev;
            }
            let mut orbit = vec![start];
            let mut cur = start;
            while let Ok(next) = self.step(cur) {
                orbit.push(next);
                cur = next;
            }
            seen.extend(orbit.iter().copied());
            out.push(orbit);
        }
        out
    }
}

/// The unique permutation morphism out of the free permutation sending generator `b`
/// to `generator_images[b]`: `(n, b) ↦ f^n(generator_images[b])`.
pub fn free_perm_morphism(f: &Permutation, generator_images: &[usize], e: FreePermElement) -> usize {
    f.pow(e.shift).apply(generator_images[e.generator])
}

/// `F^n(s)`: the image of `n` under the rack morphism from the free rack on one
/// generator to `rack` that sends the generator to `s`.
pub fn free_rack_morphism(rack: &FiniteRack, s: usize, n: i64) -> usize {
    rack.canonical_automorphism().pow(n).apply(s)
}

/// Checks that `n ↦ F^n(s)` is a rack morphism on `[-radius, radius]` and commutes
/// with the shift. Returns the first failing `(a, b)` pair.
pub fn free_rack_morphism_violation(rack: &FiniteRack, s: usize, radius: i64) -> Option<(i64, i64)> {
    let f = rack.canonical_automorphism();
    let phi = |n: i64| f.pow(n).apply(s);
    for a in -radius..=radius {
        for b in -radius..=radius {
            // a ▷ b = b + 1 and a ▷⁻¹ b = b - 1 in the free rack
            if phi(b + 1) != rack.op(phi(a), phi(b)) {
                return Some((a, b));
            }
            if rack.op(phi(a), phi(b - 1)) != phi(b) {
                return Some((a, b));
            }
        }
        if phi(a + 1) != f.apply(phi(a)) {
            return Some((a, a + 1));
        }
    }
    None
}

/// The free quandle on one generator has exactly one element.
pub fn free_quandle_one_generator() -> FiniteRack {
    trivial_quandle(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rack::validate_rack;

    fn eval(s: &str) -> i64 {
        free_rack_eval(&s.parse().unwrap(), DEFAULT_WINDOW).unwrap().value()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(eval("x"), 0);
        assert_eq!(eval("(x > x)"), 1);
        assert_eq!(eval("((x > x) > x)"), 1);
        assert_eq!(eval("((x > x) > x)"), eval("(x > x)"));
        assert_eq!(eval("(x > (x > x))"), 2);
        assert_eq!(eval("(x <| x)"), -1);
        assert_eq!(eval("  ( x>( x <|x ) )  "), 0);
    }

    #[test]
    fn parse_errors_carry_columns() {
        assert_eq!(
            "(x ? x)".parse::<RackWord>(),
            Err(FreeError::Parse { column: 4, message: "expected `>` or `<|`".into() })
        );
        assert!(matches!("(x > x".parse::<RackWord>(), Err(FreeError::Parse { column: 7, .. })));
        assert!(matches!("x x".parse::<RackWord>(), Err(FreeError::Parse { column: 3, .. })));
        assert!(matches!("y".parse::<RackWord>(), Err(FreeError::Parse { column: 1, .. })));
        assert!(matches!("".parse::<RackWord>(), Err(FreeError::Parse { column: 1, .. })));
    }

    #[test]
    fn display_round_trips() {
        for w in RackWord::all_up_to_depth(2) {
            assert_eq!(w.to_string().parse::<RackWord>().unwrap(), w);
        }
        assert_eq!(RackWord::all_up_to_depth(1).len(), 3);
        assert_eq!(RackWord::all_up_to_depth(2).len(), 19);
    }

    #[test]
    fn window_is_enforced() {
        let mut w = RackWord::Generator;
        for _ in 0..3 {
            w = RackWord::op(RackWord::Generator, w);
        }
        assert_eq!(free_rack_eval(&w, 3).unwrap().value(), 3);
        assert_eq!(free_rack_eval(&w, 2), Err(FreeError::WindowExceeded { value: 3, window: 2 }));
        // an out-of-window left operand is still an error
        let left_heavy = RackWord::op(w, RackWord::Generator);
        assert_eq!(free_rack_eval(&left_heavy, 2), Err(FreeError::WindowExceeded { value: 3, window: 2 }));
    }

    #[test]
    fn free_perm_steps() {
        let m = FreePermModel::new(2, 5);
        let e = m.element(0, 0).unwrap();
        assert_eq!(m.step(e).unwrap(), FreePermElement { shift: 1, generator: 0 });
        assert_eq!(m.step_inverse(m.step(e).unwrap()).unwrap(), e);
        assert!(matches!(m.step(m.element(1, 5).unwrap()), Err(FreeError::WindowExceeded { value: 6, window: 5 })));
        assert!(m.element(2, 0).is_err());

        let orbits = m.orbits();
        assert_eq!(orbits.len(), 2);
        for (b, orbit) in orbits.iter().enumerate() {
            assert_eq!(orbit.len(), 11);
            assert!(orbit.iter().all(|e| e.generator == b));
        }
    }

    #[test]
    fn free_perm_morphism_commutes_with_step() {
        let f = Permutation::cycle(4);
        let m = FreePermModel::new(2, 6);
        for e in m.elements() {
            if let Ok(next) = m.step(e) {
                assert_eq!(free_perm_morphism(&f, &[0, 3], next), f.apply(free_perm_morphism(&f, &[0, 3], e)));
            }
        }
    }

    #[test]
    fn free_rack_morphism_examples() {
        let flip = validate_rack(vec![vec![1, 0], vec![1, 0]]).unwrap();
        assert_eq!(free_rack_morphism(&flip, 0, 0), 0);
        assert_eq!(free_rack_morphism(&flip, 0, 1), 1);
        let d = FiniteRack::dihedral(5);
        for s in 0..5 {
            for n in -6..=6 {
                assert_eq!(free_rack_morphism(&d, s, n), s);
            }
        }
        assert_eq!(free_rack_morphism_violation(&flip, 1, 6), None);
    }

    #[test]
    fn free_quandle() {
        let q = free_quandle_one_generator();
        assert_eq!(q.order(), 1);
        assert!(q.is_kei());
    }
}
