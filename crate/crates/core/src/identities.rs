//! Elementwise identities every finite rack must satisfy, each reported with its first
//! counterexample. Used by the `check` subcommand.

use crate::free::free_rack_morphism_violation;
use crate::functors::{
    compose_check, perm_to_rack, power_op, quandleify, quandleify_via_translation, rack_to_perm, square_checks,
    trivial_quandle,
};
use crate::homsearch::{check_f_naturality, homs, HOM_CAP};
use crate::rack::FiniteRack;

/// Exponents exercised by the power-operation identities.
pub const EXPONENTS: std::ops::RangeInclusive<i64> = -3..=3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityResult {
    pub name: &'static str,
    /// First counterexample, if any.
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub results: Vec<IdentityResult>,
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        self.results.iter().all(|r| r.failure.is_none())
    }

    pub fn first_failure(&self) -> Option<&IdentityResult> {
        self.results.iter().find(|r| r.failure.is_some())
    }

    pub fn get(&self, name: &str) -> Option<&IdentityResult> {
        self.results.iter().find(|r| r.name == name)
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)))
}

fn find<T>(mut it: impl Iterator<Item = T>, bad: impl Fn(&T) -> bool, show: impl Fn(T) -> String) -> Option<String> {
    it.find(|t| bad(t)).map(show)
}

pub const F_SURJECTIVE: &str = "every y is some x>x";
pub const ABSORPTION: &str = "(x>x)>y = x>y";
pub const F_LEFT: &str = "F(x)>y = x>y";
pub const F_ACT: &str = "F(x>y) = x>F(y)";
pub const F_AUTOMORPHISM: &str = "F is a bijective rack endomorphism";
pub const QUANDLE_IFF_F_ID: &str = "quandle iff F = id";
pub const INVOLUTARY_CHARACTERIZATIONS: &str = "involutary iff l_x^2 = id iff psi^2 is trivial";
pub const INVOLUTARY_F_SQUARED: &str = "involutary implies F^2 = id";
pub const QUANDLEIFY_QUANDLE: &str = "quandleify yields a quandle";
pub const QUANDLEIFY_FORMULAS: &str = "F^-1(x>y) = x>F^-1(y)";
pub const QUANDLEIFY_RETRACTION: &str = "quandleify is the identity on quandles";
pub const PER_CAN: &str = "per(can(F)) = F";
pub const PSI_ONE: &str = "psi^1 = id";
pub const PSI_ZERO: &str = "psi^0 = trivial quandle";
pub const PSI_VALID: &str = "psi^m is a rack and preserves quandles";
pub const PSI_COMPOSE: &str = "psi^m psi^n = psi^mn";
pub const SQUARE_A: &str = "F of psi^m = F^m";
pub const SQUARE_B: &str = "perm rack of f^m = psi^m of perm rack";
pub const SQUARE_C: &str = "quandleify commutes with psi^m";
pub const FREE_MORPHISM: &str = "n -> F^n(s) is a morphism from the free rack";
pub const ENDO_NATURALITY: &str = "F commutes with every endomorphism";

/// Runs every identity on `rack`.
pub fn check_rack(rack: &FiniteRack) -> IdentityReport {
    let n = rack.order();
    let f = rack.canonical_automorphism();
    let f_inv = f.inverse();
    let mut results = Vec::new();
    let mut push = |name, failure| results.push(IdentityResult { name, failure });

    push(
        F_SURJECTIVE,
        find(0..n, |&y| !(0..n).any(|x| rack.op(x, x) == y), |y| format!("y={y} is not of the form x>x")),
    );
    push(
        ABSORPTION,
        find(pairs(n), |&(x, y)| rack.op(rack.op(x, x), y) != rack.op(x, y), |(x, y)| format!("x={x}, y={y}")),
    );
    push(F_LEFT, find(pairs(n), |&(x, y)| rack.op(f.apply(x), y) != rack.op(x, y), |(x, y)| format!("x={x}, y={y}")));
    push(
        F_ACT,
        find(pairs(n), |&(x, y)| f.apply(rack.op(x, y)) != rack.op(x, f.apply(y)), |(x, y)| format!("x={x}, y={y}")),
    );
    push(
        F_AUTOMORPHISM,
        if !f.inverse().compose(&f).is_identity() {
            Some("F is not bijective".into())
        } else {
            find(
                pairs(n),
                |&(x, y)| f.apply(rack.op(x, y)) != rack.op(f.apply(x), f.apply(y)),
                |(x, y)| format!("x={x}, y={y}"),
            )
        },
    );
    push(
        QUANDLE_IFF_F_ID,
        (rack.is_quandle() != f.is_identity()).then(|| format!("is_quandle={} but F={f}", rack.is_quandle())),
    );
    let involutary = rack.is_involutary();
    let psi2_trivial = power_op(rack, 2) == trivial_quandle(n);
    push(
        INVOLUTARY_CHARACTERIZATIONS,
        (involutary != rack.is_power_trivial(2) || involutary != psi2_trivial).then(|| {
            format!(
                "involutary={involutary}, power_trivial(2)={}, psi^2 trivial={psi2_trivial}",
                rack.is_power_trivial(2)
            )
        }),
    );
    push(
        INVOLUTARY_F_SQUARED,
        (involutary && !f.pow(2).is_identity()).then(|| format!("F={f} has F^2 != id")),
    );

    let q = quandleify(rack);
    push(
        QUANDLEIFY_QUANDLE,
        match FiniteRack::from_flat(n, q.table().to_vec()) {
            Err(e) => Some(e.to_string()),
            Ok(q) if !q.is_quandle() => Some("result is not idempotent".into()),
            Ok(_) => None,
        },
    );
    push(
        QUANDLEIFY_FORMULAS,
        find(
            pairs(n),
            |&(x, y)| f_inv.apply(rack.op(x, y)) != rack.op(x, f_inv.apply(y)),
            |(x, y)| format!("x={x}, y={y}"),
        )
        .or_else(|| (q != quandleify_via_translation(rack)).then(|| "tables differ".into())),
    );
    push(QUANDLEIFY_RETRACTION, (rack.is_quandle() && q != *rack).then(|| "quandleify changed a quandle".into()));
    push(PER_CAN, (rack_to_perm(&perm_to_rack(&f)) != f).then(|| format!("F={f}")));

    push(PSI_ONE, (power_op(rack, 1) != *rack).then(|| "psi^1 changed the table".into()));
    push(PSI_ZERO, (power_op(rack, 0) != trivial_quandle(n)).then(|| "psi^0 is not trivial".into()));
    push(
        PSI_VALID,
        find(
            EXPONENTS,
            |&m| match FiniteRack::from_flat(n, power_op(rack, m).table().to_vec()) {
                Err(_) => true,
                Ok(p) => rack.is_quandle() && !p.is_quandle(),
            },
            |m| format!("m={m}"),
        ),
    );
    push(
        PSI_COMPOSE,
        find(
            EXPONENTS.flat_map(|m| EXPONENTS.map(move |k| (m, k))),
            |&(m, k)| !compose_check(m, k, rack),
            |(m, k)| format!("m={m}, n={k}"),
        ),
    );

    let perms: Vec<_> = std::iter::once(f.clone()).chain((0..n).map(|x| rack.left_translation(x))).collect();
    let squares: Vec<_> = EXPONENTS.flat_map(|m| perms.iter().map(move |p| (m, p))).collect();
    let report = |pick: fn(&crate::functors::SquareReport) -> bool| {
        find(squares.iter(), |(m, p)| !pick(&square_checks(rack, p, *m)), |(m, p)| format!("m={m}, f={p}"))
    };
    push(SQUARE_A, report(|r| r.canonical_automorphism));
    push(SQUARE_B, report(|r| r.permutation_rack));
    push(SQUARE_C, report(|r| r.quandleify));

    push(
        FREE_MORPHISM,
        find(
            (0..n).filter_map(|s| free_rack_morphism_violation(rack, s, 6).map(|v| (s, v))),
            |_| true,
            |(s, (a, b))| format!("s={s}, a={a}, b={b}"),
        ),
    );
    push(
        ENDO_NATURALITY,
        if n > HOM_CAP {
            None
        } else {
            let endos = homs(rack, rack).expect("within cap");
            find(endos.into_iter(), |phi| !check_f_naturality(phi), |phi| format!("map={:?}", phi.map()))
        },
    );

    IdentityReport { results }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;
    use crate::rack::validate_rack;

    #[test]
    fn holds_on_small_examples() {
        let racks = [
            trivial_quandle(0),
            trivial_quandle(3),
            validate_rack(vec![vec![1, 0], vec![1, 0]]).unwrap(),
            FiniteRack::dihedral(3),
            FiniteRack::dihedral(6),
            perm_to_rack(&Permutation::new(vec![1, 2, 0, 4, 3]).unwrap()),
        ];
        for r in &racks {
            let report = check_rack(r);
            assert!(report.all_hold(), "{r:?}: {:?}", report.first_failure());
            assert_eq!(report.results.len(), 21);
        }
    }
}
