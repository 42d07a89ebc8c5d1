//! Operation tables, axiom validation, the canonical automorphism and the
//! structural predicates (quandle, involutary, kei, power-trivial).

use std::fmt;
use std::str::FromStr;

use crate::error::{AxiomViolation, InputError, ValidationError};
use crate::perm::Permutation;

/// A finite rack on `{0, …, n-1}`, stored as a row-major table of `x ▷ y`.
///
/// Values of this type always satisfy the rack axioms: every row is a bijection and
/// the operation is left self-distributive.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteRack {
    n: usize,
    table: Vec<usize>,
}

/// The four theories handled throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StructureKind {
    Rack,
    Quandle,
    Involutary,
    Kei,
}

impl StructureKind {
    pub const ALL: [StructureKind; 4] =
        [StructureKind::Rack, StructureKind::Quandle, StructureKind::Involutary, StructureKind::Kei];

    pub fn name(self) -> &'static str {
        match self {
            StructureKind::Rack => "rack",
            StructureKind::Quandle => "quandle",
            StructureKind::Involutary => "involutary",
            StructureKind::Kei => "kei",
        }
    }

    pub fn requires_idempotence(self) -> bool {
        matches!(self, StructureKind::Quandle | StructureKind::Kei)
    }

    pub fn requires_involutions(self) -> bool {
        matches!(self, StructureKind::Involutary | StructureKind::Kei)
    }

    /// Whether every structure of kind `self` is also of kind `other`.
    pub fn implies(self, other: StructureKind) -> bool {
        (!other.requires_idempotence() || self.requires_idempotence())
            && (!other.requires_involutions() || self.requires_involutions())
    }

    pub fn admits(self, rack: &FiniteRack) -> bool {
        (!self.requires_idempotence() || rack.is_quandle())
            && (!self.requires_involutions() || rack.is_involutary())
    }
}

impl fmt::Display for StructureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StructureKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rack" => Ok(StructureKind::Rack),
            "quandle" => Ok(StructureKind::Quandle),
            "involutary" | "involutory" => Ok(StructureKind::Involutary),
            "kei" => Ok(StructureKind::Kei),
            other => Err(format!("unknown structure kind `{other}` (expected rack|quandle|involutary|kei)")),
        }
    }
}

/// Validates an operation table given as rows.
///
/// Range and shape problems are reported as [`ValidationError::Input`]; axiom failures
/// as [`ValidationError::Axiom`] naming the first failing instance (bijectivity of rows
/// first, then self-distributivity triples in lexicographic order).
pub fn validate_rack(rows: Vec<Vec<usize>>) -> Result<FiniteRack, ValidationError> {
    let n = rows.len();
    let mut table = Vec::with_capacity(n * n);
    for (r, row) in rows.into_iter().enumerate() {
        if row.len() != n {
            return Err(InputError::NotSquare { row: r, len: row.len(), order: n }.into());
        }
        for (c, &v) in row.iter().enumerate() {
            if v >= n {
                return Err(InputError::EntryOutOfRange { row: r, col: c, value: v, order: n }.into());
            }
        }
        table.extend(row);
    }
    FiniteRack::from_flat(n, table)
}

impl FiniteRack {
    /// Validates a row-major flattened table of order `n`.
    pub fn from_flat(n: usize, table: Vec<usize>) -> Result<FiniteRack, ValidationError> {
        if table.len() != n * n {
            return Err(InputError::SizeMismatch { expected: n * n, found: table.len() }.into());
        }
        if let Some(i) = table.iter().position(|&v| v >= n) {
            return Err(InputError::EntryOutOfRange { row: i / n, col: i % n, value: table[i], order: n }.into());
        }
        check_rows_bijective(n, &table)?;
        check_self_distributive(n, &table)?;
        Ok(FiniteRack { n, table })
    }

    /// For tables that are racks by construction.
    pub(crate) fn from_flat_unchecked(n: usize, table: Vec<usize>) -> FiniteRack {
        debug_assert!(
            FiniteRack::from_flat(n, table.clone()).is_ok(),
            "constructed table is not a rack: {table:?}"
        );
        FiniteRack { n, table }
    }

    /// Builds `x ▷ y = op(x, y)` and validates it.
    pub fn from_fn(n: usize, op: impl Fn(usize, usize) -> usize) -> Result<FiniteRack, ValidationError> {
        let table = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).map(|(x, y)| op(x, y)).collect();
        FiniteRack::from_flat(n, table)
    }

    /// The dihedral quandle `x ▷ y = 2x - y mod n`.
    pub fn dihedral(n: usize) -> FiniteRack {
        let table = (0..n).flat_map(|x| (0..n).map(move |y| (2 * x + n - y) % n)).collect();
        FiniteRack::from_flat_unchecked(n, table)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// `x ▷ y`.
    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x * self.n + y]
    }

    /// The row-major table.
    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn row(&self, x: usize) -> &[usize] {
        &self.table[x * self.n..(x + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|x| self.row(x).to_vec()).collect()
    }

    /// `ℓ_x : y ↦ x ▷ y`.
    pub fn left_translation(&self, x: usize) -> Permutation {
        Permutation::from_images_unchecked(self.row(x).to_vec())
    }

    /// `F(x) = x ▷ x`, always a bijective rack endomorphism.
    pub fn canonical_automorphism(&self) -> Permutation {
        let f = Permutation::from_images_unchecked((0..self.n).map(|x| self.op(x, x)).collect());
        debug_assert!(self.is_endomorphism(f.images()), "canonical automorphism is not an endomorphism");
        f
    }

    /// Whether `map` commutes with `▷`.
    pub fn is_endomorphism(&self, map: &[usize]) -> bool {
        map.len() == self.n
            && (0..self.n).all(|x| (0..self.n).all(|y| map[self.op(x, y)] == self.op(map[x], map[y])))
    }

    /// `x ▷ x = x` for all `x`, i.e. `F = id`.
    pub fn is_quandle(&self) -> bool {
        (0..self.n).all(|x| self.op(x, x) == x)
    }

    /// `x ▷ (x ▷ y) = y` for all `x, y`.
    pub fn is_involutary(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| self.op(x, self.op(x, y)) == y))
    }

    pub fn is_kei(&self) -> bool {
        self.is_quandle() && self.is_involutary()
    }

    /// `ℓ_x^m = id` for every `x`.
    pub fn is_power_trivial(&self, m: i64) -> bool {
        if m == 0 {
            return true;
        }
        (0..self.n).all(|x| self.left_translation(x).pow(m).is_identity())
    }

    /// The strongest kind this rack belongs to.
    pub fn kind(&self) -> StructureKind {
        match (self.is_quandle(), self.is_involutary()) {
            (true, true) => StructureKind::Kei,
            (true, false) => StructureKind::Quandle,
            (false, true) => StructureKind::Involutary,
            (false, false) => StructureKind::Rack,
        }
    }

    /// Transports the structure along `p`: `p(x) ▷' p(y) = p(x ▷ y)`.
    pub fn apply_relabeling(&self, p: &Permutation) -> Result<FiniteRack, InputError> {
        if p.len() != self.n {
            return Err(InputError::SizeMismatch { expected: self.n, found: p.len() });
        }
        let n = self.n;
        let mut table = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                table[p.apply(x) * n + p.apply(y)] = p.apply(self.op(x, y));
            }
        }
        Ok(FiniteRack::from_flat_unchecked(n, table))
    }
}

fn check_rows_bijective(n: usize, table: &[usize]) -> Result<(), AxiomViolation> {
    let mut seen = vec![false; n];
    for row in 0..n {
        seen.iter_mut().for_each(|s| *s = false);
        for &v in &table[row * n..(row + 1) * n] {
            if seen[v] {
                return Err(AxiomViolation::RowNotBijective { row, repeated: v });
            }
            seen[v] = true;
        }
    }
    Ok(())
}

fn check_self_distributive(n: usize, table: &[usize]) -> Result<(), AxiomViolation> {
    let op = |a: usize, b: usize| table[a * n + b];
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let left = op(x, op(y, z));
                let right = op(op(x, y), op(x, z));
                if left != right {
                    return Err(AxiomViolation::SelfDistributivity { x, y, z, left, right });
                }
            }
        }
    }
    Ok(())
}

/// Row form of self-distributivity on a table with bijective rows:
/// `ℓ_x ∘ ℓ_y = ℓ_{x▷y} ∘ ℓ_x` for all `x, y`. Returns the first failing pair.
pub fn row_form_violation(n: usize, table: &[usize]) -> Option<(usize, usize)> {
    let op = |a: usize, b: usize| table[a * n + b];
    for x in 0..n {
        for y in 0..n {
            let xy = op(x, y);
            if (0..n).any(|z| op(x, op(y, z)) != op(xy, op(x, z))) {
                return Some((x, y));
            }
        }
    }
    None
}

impl fmt::Debug for FiniteRack {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRack{:?}", self.rows())
    }
}
