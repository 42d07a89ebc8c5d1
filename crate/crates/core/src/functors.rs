//! Theory morphisms realised as table-to-table constructions (the right adjoints):
//! permutations and racks, quandle-ification, trivial quandles and the power
//! operations `Ψ^m`.

use std::fmt;

use thiserror::Error;

use crate::perm::Permutation;
use crate::rack::FiniteRack;

/// A finite structure of one of the two carrier theories the functors move between.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Structure {
    Rack(FiniteRack),
    Perm(Permutation),
}

impl Structure {
    pub fn order(&self) -> usize {
        match self {
            Structure::Rack(r) => r.order(),
            Structure::Perm(p) => p.len(),
        }
    }
}

/// The functors between the theories of sets, permutations, racks and quandles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FunctorTag {
    /// `(S, f) ↦ (S, ▷_f)` with `x ▷_f y = f(y)`.
    PermToRack,
    /// `(R, ▷) ↦ (R, F)`.
    RackToPerm,
    /// `(R, ▷) ↦ (R, □)` with `x □ y = F⁻¹(x ▷ y)`.
    Quandleify,
    /// Quandles viewed as racks.
    Inclusion,
    /// The underlying set with `x ▷ y = y`.
    TrivialQuandle,
    /// `Ψ^m`, acting on racks by `x ▷^m y = ℓ_x^m(y)` and on permutations by `f ↦ f^m`.
    Power(i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{functor} cannot be applied to {found}")]
pub struct FunctorError {
    pub functor: FunctorTag,
    pub found: &'static str,
}

impl FunctorTag {
    pub fn apply(&self, input: &Structure) -> Result<Structure, FunctorError> {
        let wrong = |found| Err(FunctorError { functor: *self, found });
        match (self, input) {
            (FunctorTag::PermToRack, Structure::Perm(f)) => Ok(Structure::Rack(perm_to_rack(f))),
            (FunctorTag::RackToPerm, Structure::Rack(r)) => Ok(Structure::Perm(rack_to_perm(r))),
            (FunctorTag::Quandleify, Structure::Rack(r)) => Ok(Structure::Rack(quandleify(r))),
            (FunctorTag::Inclusion, Structure::Rack(r)) if r.is_quandle() => Ok(Structure::Rack(r.clone())),
            (FunctorTag::Inclusion, Structure::Rack(_)) => wrong("a rack that is not a quandle"),
            (FunctorTag::TrivialQuandle, s) => Ok(Structure::Rack(trivial_quandle(s.order()))),
            (FunctorTag::Power(m), Structure::Rack(r)) => Ok(Structure::Rack(power_op(r, *m))),
            (FunctorTag::Power(m), Structure::Perm(f)) => Ok(Structure::Perm(f.pow(*m))),
            (_, Structure::Rack(_)) => wrong("a rack"),
            (_, Structure::Perm(_)) => wrong("a permutation"),
        }
    }
}

impl fmt::Display for FunctorTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorTag::PermToRack => f.write_str("perm_to_rack"),
            FunctorTag::RackToPerm => f.write_str("rack_to_perm"),
            FunctorTag::Quandleify => f.write_str("quandleify"),
            FunctorTag::Inclusion => f.write_str("inclusion"),
            FunctorTag::TrivialQuandle => f.write_str("trivial_quandle"),
            FunctorTag::Power(m) => write!(f, "power({m})"),
        }
    }
}

pub fn perm_to_rack(f: &Permutation) -> FiniteRack {
    let n = f.len();
    let table = (0..n).flat_map(|_| f.images().iter().copied()).collect();
    FiniteRack::from_flat_unchecked(n, table)
}

pub fn rack_to_perm(rack: &FiniteRack) -> Permutation {
    rack.canonical_automorphism()
}

/// `x □ y = F⁻¹(x ▷ y)`; in debug builds also compared against `x ▷ F⁻¹(y)`.
pub fn quandleify(rack: &FiniteRack) -> FiniteRack {
    let n = rack.order();
    let f_inv = rack.canonical_automorphism().inverse();
    let table: Vec<usize> = rack.table().iter().map(|&v| f_inv.apply(v)).collect();
    let q = FiniteRack::from_flat_unchecked(n, table);
    debug_assert_eq!(q, quandleify_via_translation(rack));
    debug_assert!(q.is_quandle());
    q
}

/// The same quandle computed as `x □ y = x ▷ F⁻¹(y)`.
pub fn quandleify_via_translation(rack: &FiniteRack) -> FiniteRack {
    let n = rack.order();
    let f_inv = rack.canonical_automorphism().inverse();
    let table = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).map(|(x, y)| rack.op(x, f_inv.apply(y))).collect();
    FiniteRack::from_flat_unchecked(n, table)
}

/// `Ψ^m`: replaces every row `ℓ_x` by `ℓ_x^m`.
pub fn power_op(rack: &FiniteRack, m: i64) -> FiniteRack {
    let n = rack.order();
    let table = (0..n).flat_map(|x| rack.left_translation(x).pow(m).into_images()).collect();
    FiniteRack::from_flat_unchecked(n, table)
}

pub fn trivial_quandle(n: usize) -> FiniteRack {
    let table = (0..n).flat_map(|_| 0..n).collect();
    FiniteRack::from_flat_unchecked(n, table)
}

/// `Ψ^m Ψ^n = Ψ^{mn}` on `rack`, as literal table equality.
pub fn compose_check(m: i64, n: i64, rack: &FiniteRack) -> bool {
    power_op(&power_op(rack, n), m) == power_op(rack, m * n)
}

/// Outcome of the three commuting squares relating `Ψ^m` on permutations, racks and quandles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SquareReport {
    /// `F_{▷^m} = (F_▷)^m`.
    pub canonical_automorphism: bool,
    /// `▷_{f^m} = (▷_f)^m`.
    pub permutation_rack: bool,
    /// `□ ∘ Ψ^m = Ψ^m ∘ □`.
    pub quandleify: bool,
}

impl SquareReport {
    pub fn all(&self) -> bool {
        self.canonical_automorphism && self.permutation_rack && self.quandleify
    }
}

pub fn square_checks(rack: &FiniteRack, f: &Permutation, m: i64) -> SquareReport {
    let powered = power_op(rack, m);
    SquareReport {
        canonical_automorphism: rack_to_perm(&powered) == rack_to_perm(rack).pow(m),
        permutation_rack: perm_to_rack(&f.pow(m)) == power_op(&perm_to_rack(f), m),
        quandleify: quandleify(&powered) == power_op(&quandleify(rack), m),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rack::validate_rack;

    fn flip() -> FiniteRack {
        validate_rack(vec![vec![1, 0], vec![1, 0]]).unwrap()
    }

    #[test]
    fn perm_to_rack_examples() {
        assert_eq!(perm_to_rack(&Permutation::identity(3)), trivial_quandle(3));
        assert_eq!(perm_to_rack(&Permutation::transposition(2, 0, 1)), flip());
        let c = Permutation::cycle(3);
        let r = perm_to_rack(&c);
        assert!((0..3).all(|x| r.left_translation(x) == c));
    }

    #[test]
    fn rack_to_perm_retracts_perm_to_rack() {
        for n in 0..=5 {
            for f in Permutation::all(n) {
                assert_eq!(rack_to_perm(&perm_to_rack(&f)), f);
            }
        }
        assert!(rack_to_perm(&trivial_quandle(4)).is_identity());
        assert_eq!(rack_to_perm(&flip()), Permutation::transposition(2, 0, 1));
    }

    #[test]
    fn quandleify_examples() {
        let d = FiniteRack::dihedral(5);
        assert_eq!(quandleify(&d), d);
        assert_eq!(quandleify(&flip()), trivial_quandle(2));
        for f in Permutation::all(4) {
            assert_eq!(quandleify(&perm_to_rack(&f)), trivial_quandle(4));
        }
    }

    #[test]
    fn power_examples() {
        let d = FiniteRack::dihedral(3);
        assert_eq!(power_op(&d, 1), d);
        assert_eq!(power_op(&d, 0), trivial_quandle(3));
        assert_eq!(power_op(&flip(), 2), trivial_quandle(2));
        let c = Permutation::cycle(3);
        assert_eq!(power_op(&perm_to_rack(&c), -1), perm_to_rack(&c.inverse()));
        // large exponents take the squaring path
        assert_eq!(power_op(&perm_to_rack(&c), 7), perm_to_rack(&c));
        assert_eq!(power_op(&perm_to_rack(&c), -9), trivial_quandle(3));
    }

    #[test]
    fn trivial_quandle_examples() {
        assert_eq!(trivial_quandle(1).table(), &[0]);
        assert_eq!(trivial_quandle(2).rows(), vec![vec![0, 1], vec![0, 1]]);
        assert_eq!(trivial_quandle(0).order(), 0);
    }

    #[test]
    fn compose_examples() {
        assert!(compose_check(1, 1, &flip()));
        assert!(compose_check(2, 3, &FiniteRack::dihedral(3)));
        assert!(compose_check(-1, -1, &perm_to_rack(&Permutation::cycle(3))));
    }

    #[test]
    fn square_examples() {
        assert!(square_checks(&FiniteRack::dihedral(3), &Permutation::cycle(3), 1).all());
        assert!(square_checks(&flip(), &Permutation::transposition(2, 0, 1), 2).all());
        assert!(square_checks(&FiniteRack::dihedral(3), &Permutation::cycle(3), -1).all());
    }

    #[test]
    fn tags_dispatch() {
        let f = Structure::Perm(Permutation::cycle(3));
        let r = FunctorTag::PermToRack.apply(&f).unwrap();
        assert_eq!(FunctorTag::RackToPerm.apply(&r).unwrap(), f);
        assert_eq!(FunctorTag::Power(2).apply(&f).unwrap(), Structure::Perm(Permutation::cycle(3).pow(2)));
        assert_eq!(FunctorTag::TrivialQuandle.apply(&f).unwrap(), Structure::Rack(trivial_quandle(3)));
        assert!(FunctorTag::Inclusion.apply(&Structure::Rack(flip())).is_err());
        assert!(FunctorTag::Quandleify.apply(&f).is_err());
        assert_eq!(FunctorTag::Power(-2).to_string(), "power(-2)");
    }
}
