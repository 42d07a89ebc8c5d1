//! Isomorph-rejecting enumeration of finite racks, quandles, involutary racks and kei.
//!
//! The search assigns whole rows `ℓ_x`. Rows are tied together by the row form of
//! self-distributivity, `ℓ_{x▷y} = ℓ_x ℓ_y ℓ_x⁻¹`: once `ℓ_x` and `ℓ_y` are known the
//! row at `x ▷ y` is forced, and once `ℓ_x` and `ℓ_{x▷y}` are known so is `ℓ_y`. After
//! closing under both rules a new free choice is only needed for a row whose whole
//! orbit under the known rows is still unassigned.
//!
//! Small orders generate every labeled table and deduplicate canonical forms. From
//! order 6 on, partial assignments are discarded as soon as some relabeling provably
//! makes every completion lexicographically smaller (orderly generation), so only
//! canonical tables reach the leaves.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use rayon::prelude::*;
use thiserror::Error;

use crate::error::CapError;
use crate::perm::Permutation;
use crate::rack::{FiniteRack, StructureKind};

/// Largest order the row-array representation supports.
pub const MAX_ORDER: usize = 8;
/// Largest order `canonical_form` will minimise over (`8! = 40320` relabelings).
pub const CANONICAL_FORM_CAP: usize = 8;
/// Largest order the brute-force oracle scans (`3^9 = 19683` tables).
pub const ORACLE_CAP: usize = 3;
/// From this order on, orderly generation replaces generate-then-deduplicate.
pub const ORDERLY_THRESHOLD: usize = 6;

pub fn default_order_cap(kind: StructureKind) -> usize {
    match kind {
        StructureKind::Rack | StructureKind::Involutary => 6,
        StructureKind::Quandle | StructureKind::Kei => 7,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error(transparent)]
    Cap(#[from] CapError),
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
    #[error("search interrupted after {completed_partitions} of {total_partitions} partitions")]
    Interrupted { completed_partitions: usize, total_partitions: usize },
}

/// How isomorphic copies are removed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rejection {
    /// Deduplicate below [`ORDERLY_THRESHOLD`], orderly generation from there on.
    Auto,
    /// Generate every labeled table, then deduplicate canonical forms.
    Deduplicate,
    /// Prune non-canonical partial assignments during the search.
    Orderly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub order: usize,
    pub kind: StructureKind,
    /// When false the census also lists every labeled table.
    pub up_to_iso: bool,
    pub worker_count: usize,
    /// Whether front ends should print the representatives.
    pub emit_tables: bool,
    pub order_cap: usize,
    pub rejection: Rejection,
}

impl SearchConfig {
    pub fn new(order: usize, kind: StructureKind) -> Self {
        SearchConfig {
            order,
            kind,
            up_to_iso: true,
            worker_count: 1,
            emit_tables: false,
            order_cap: default_order_cap(kind),
            rejection: Rejection::Auto,
        }
    }

    pub fn workers(mut self, worker_count: usize) -> Self {
        self.worker_count = worker_count;
        self
    }

    pub fn labeled(mut self) -> Self {
        self.up_to_iso = false;
        self
    }

    pub fn rejection(mut self, rejection: Rejection) -> Self {
        self.rejection = rejection;
        self
    }

    fn validate(&self) -> Result<(), EnumerateError> {
        if self.order == 0 {
            return Err(EnumerateError::InvalidConfig("order must be at least 1".into()));
        }
        if self.worker_count == 0 {
            return Err(EnumerateError::InvalidConfig("worker count must be at least 1".into()));
        }
        let cap = self.order_cap.min(MAX_ORDER);
        if self.order > cap {
            return Err(CapError { what: "census", order: self.order, cap }.into());
        }
        Ok(())
    }
}

/// Result of a census at one order and kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRecord {
    pub order: usize,
    pub kind: StructureKind,
    pub labeled_count: u64,
    pub iso_count: usize,
    /// Canonical representatives, sorted by their flattened tables.
    pub representatives: Vec<FiniteRack>,
    /// Every labeled table, sorted; only present for labeled searches.
    pub labeled_tables: Option<Vec<FiniteRack>>,
}

/// The lexicographically smallest flattened table among all relabelings of `rack`.
pub fn canonical_form(rack: &FiniteRack) -> Result<FiniteRack, CapError> {
    let n = rack.order();
    if n > CANONICAL_FORM_CAP {
        return Err(CapError { what: "canonical form", order: n, cap: CANONICAL_FORM_CAP });
    }
    let t = rack.table();
    let mut best = t.to_vec();
    let mut candidate = vec![0; n * n];
    let mut inv = vec![0; n];
    for p in Permutation::all(n) {
        let p = p.images();
        for (i, &v) in p.iter().enumerate() {
            inv[v] = i;
        }
        let mut smaller = false;
        'cells: for i in 0..n {
            for j in 0..n {
                let v = p[t[inv[i] * n + inv[j]]];
                let k = i * n + j;
                if !smaller {
                    match v.cmp(&best[k]) {
                        std::cmp::Ordering::Greater => break 'cells,
                        std::cmp::Ordering::Less => smaller = true,
                        std::cmp::Ordering::Equal => {}
                    }
                }
                candidate[k] = v;
            }
        }
        if smaller {
            best.copy_from_slice(&candidate);
        }
    }
    Ok(FiniteRack::from_flat_unchecked(n, best))
}

/// Number of relabelings fixing the table.
pub fn automorphism_count(rack: &FiniteRack) -> u64 {
    Permutation::all(rack.order())
        .filter(|p| rack.apply_relabeling(p).map(|r| &r == rack).unwrap_or(false))
        .count() as u64
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Exhaustive scan of all `n^(n²)` tables: validate, filter by kind, group by
/// canonical form. Shares nothing with the row search except `canonical_form`.
pub fn brute_force_oracle(order: usize, kind: StructureKind) -> Result<CensusRecord, EnumerateError> {
    if order == 0 {
        return Err(EnumerateError::InvalidConfig("order must be at least 1".into()));
    }
    if order > ORACLE_CAP {
        return Err(CapError { what: "brute-force oracle", order, cap: ORACLE_CAP }.into());
    }
    let cells = order * order;
    let mut digits = vec![0usize; cells];
    let mut labeled = Vec::new();
    loop {
        if let Ok(rack) = FiniteRack::from_flat(order, digits.clone()) {
            if kind.admits(&rack) {
                labeled.push(rack);
            }
        }
        // odometer increment
        let mut i = 0;
        while i < cells && digits[i] == order - 1 {
            digits[i] = 0;
            i += 1;
        }
        if i == cells {
            break;
        }
        digits[i] += 1;
    }
    let classes: BTreeSet<FiniteRack> = labeled.iter().map(canonical_form).collect::<Result<_, _>>()?;
    labeled.sort();
    Ok(CensusRecord {
        order,
        kind,
        labeled_count: labeled.len() as u64,
        iso_count: classes.len(),
        representatives: classes.into_iter().collect(),
        labeled_tables: Some(labeled),
    })
}

pub fn enumerate(config: &SearchConfig) -> Result<CensusRecord, EnumerateError> {
    enumerate_with_cancel(config, &AtomicBool::new(false))
}

/// Like [`enumerate`], but gives up with [`EnumerateError::Interrupted`] once `cancel`
/// is set. No census is produced from a partial search.
pub fn enumerate_with_cancel(config: &SearchConfig, cancel: &AtomicBool) -> Result<CensusRecord, EnumerateError> {
    config.validate()?;
    let n = config.order;
    let orderly = config.up_to_iso
        && match config.rejection {
            Rejection::Auto => n >= ORDERLY_THRESHOLD,
            Rejection::Deduplicate => false,
            Rejection::Orderly => true,
        };
    let search = Search::new(n, config.kind, orderly);
    let tasks = search.partitions();
    let total = tasks.len();
    let completed = AtomicUsize::new(0);

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.worker_count)
        .build()
        .map_err(|e| EnumerateError::InvalidConfig(e.to_string()))?;
    let results: Vec<Option<Vec<Leaf>>> = pool.install(|| {
        tasks
            .par_iter()
            .map(|state| {
                let mut leaves = Vec::new();
                let done = search.dfs(state.clone(), &mut leaves, cancel);
                if done {
                    completed.fetch_add(1, Ordering::Relaxed);
                    Some(leaves)
                } else {
                    None
                }
            })
            .collect()
    });
    if results.iter().any(Option::is_none) || cancel.load(Ordering::Relaxed) {
        return Err(EnumerateError::Interrupted {
            completed_partitions: completed.load(Ordering::Relaxed),
            total_partitions: total,
        });
    }
    let leaves: Vec<Leaf> = results.into_iter().flatten().flatten().collect();

    let to_rack = |t: &[u8]| FiniteRack::from_flat_unchecked(n, t.iter().map(|&v| v as usize).collect());
    let record = if orderly {
        let nfact = factorial(n);
        let labeled_count = leaves.iter().map(|l| nfact / l.automorphisms).sum();
        let mut reps: Vec<FiniteRack> = leaves.iter().map(|l| to_rack(&l.table)).collect();
        reps.sort();
        CensusRecord {
            order: n,
            kind: config.kind,
            labeled_count,
            iso_count: reps.len(),
            representatives: reps,
            labeled_tables: None,
        }
    } else {
        let mut labeled: Vec<FiniteRack> = leaves.iter().map(|l| to_rack(&l.table)).collect();
        let classes: BTreeSet<FiniteRack> = labeled.iter().map(canonical_form).collect::<Result<_, _>>()?;
        labeled.sort();
        CensusRecord {
            order: n,
            kind: config.kind,
            labeled_count: labeled.len() as u64,
            iso_count: classes.len(),
            representatives: classes.into_iter().collect(),
            labeled_tables: (!config.up_to_iso).then_some(labeled),
        }
    };
    Ok(record)
}

/// Every labeled structure of the given order and kind, sorted.
pub fn labeled_structures(order: usize, kind: StructureKind, workers: usize) -> Result<Vec<FiniteRack>, EnumerateError> {
    let record = enumerate(&SearchConfig::new(order, kind).labeled().workers(workers))?;
    Ok(record.labeled_tables.unwrap_or_default())
}

/// Census representatives for every order in `1..=max_order`.
pub fn representatives_up_to(max_order: usize, kind: StructureKind, workers: usize) -> Result<Vec<FiniteRack>, EnumerateError> {
    let mut out = Vec::new();
    for order in 1..=max_order {
        out.extend(enumerate(&SearchConfig::new(order, kind).workers(workers))?.representatives);
    }
    Ok(out)
}

type Row = [u8; MAX_ORDER];

#[derive(Clone)]
struct State {
    rows: [Row; MAX_ORDER],
    inv: [Row; MAX_ORDER],
    known: u16,
}

struct Leaf {
    table: Vec<u8>,
    /// Only meaningful for orderly searches.
    automorphisms: u64,
}

struct Search {
    n: usize,
    idempotent: bool,
    involutive: bool,
    orderly: bool,
    /// Candidate rows for each index (quandle kinds fix the index itself).
    candidates: Vec<Vec<Row>>,
    /// All relabelings with their inverses, for orderly pruning.
    relabelings: Vec<(Row, Row)>,
}

impl Search {
    fn new(n: usize, kind: StructureKind, orderly: bool) -> Self {
        let to_row = |p: &Permutation| {
            let mut r = [0u8; MAX_ORDER];
            for (i, &v) in p.images().iter().enumerate() {
                r[i] = v as u8;
            }
            r
        };
        let perms: Vec<Permutation> = Permutation::all(n).collect();
        let candidates = (0..n)
            .map(|u| {
                perms
                    .iter()
                    .filter(|p| !kind.requires_involutions() || p.is_involution())
                    .filter(|p| !kind.requires_idempotence() || p.apply(u) == u)
                    .map(to_row)
                    .collect()
            })
            .collect();
        let relabelings =
            if orderly { perms.iter().map(|p| (to_row(p), to_row(&p.inverse()))).collect() } else { Vec::new() };
        Search {
            n,
            idempotent: kind.requires_idempotence(),
            involutive: kind.requires_involutions(),
            orderly,
            candidates,
            relabelings,
        }
    }

    fn empty_state(&self) -> State {
        State { rows: [[0; MAX_ORDER]; MAX_ORDER], inv: [[0; MAX_ORDER]; MAX_ORDER], known: 0 }
    }

    fn all_known(&self, s: &State) -> bool {
        s.known.count_ones() as usize == self.n
    }

    fn assign(&self, s: &mut State, z: usize, row: &Row) -> bool {
        let n = self.n;
        if self.idempotent && row[z] as usize != z {
            return false;
        }
        if self.involutive && (0..n).any(|i| row[row[i] as usize] as usize != i) {
            return false;
        }
        s.rows[z] = *row;
        for i in 0..n {
            s.inv[z][row[i] as usize] = i as u8;
        }
        s.known |= 1 << z;
        true
    }

    /// Closes `s` under the two forcing rules; false on contradiction.
    fn close(&self, s: &mut State) -> bool {
        let n = self.n;
        let mut req = [0u8; MAX_ORDER];
        loop {
            let mut changed = false;
            for x in 0..n {
                if s.known & (1 << x) == 0 {
                    continue;
                }
                for y in 0..n {
                    let z = s.rows[x][y] as usize;
                    let y_known = s.known & (1 << y) != 0;
                    let z_known = s.known & (1 << z) != 0;
                    if y_known {
                        // ℓ_z = ℓ_x ℓ_y ℓ_x⁻¹
                        for i in 0..n {
                            req[i] = s.rows[x][s.rows[y][s.inv[x][i] as usize] as usize];
                        }
                        if z_known {
                            if s.rows[z][..n] != req[..n] {
                                return false;
                            }
                        } else {
                            if !self.assign(s, z, &req) {
                                return false;
                            }
                            changed = true;
                        }
                    } else if z_known {
                        // ℓ_y = ℓ_x⁻¹ ℓ_z ℓ_x
                        for i in 0..n {
                            req[i] = s.inv[x][s.rows[z][s.rows[x][i] as usize] as usize];
                        }
                        if !self.assign(s, y, &req) {
                            return false;
                        }
                        changed = true;
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    /// Orderly test. Returns `None` when some relabeling makes every completion of
    /// `s` strictly smaller; otherwise the number of relabelings that fix the known
    /// prefix completely (the automorphism count once all rows are known).
    fn canonical_prefix(&self, s: &State) -> Option<u64> {
        let n = self.n;
        let mut fixing = 0;
        'perms: for (p, pinv) in &self.relabelings {
            for i in 0..n {
                let src = pinv[i] as usize;
                if s.known & (1 << i) == 0 || s.known & (1 << src) == 0 {
                    continue 'perms;
                }
                for j in 0..n {
                    let relabeled = p[s.rows[src][pinv[j] as usize] as usize];
                    let current = s.rows[i][j];
                    if relabeled < current {
                        return None;
                    }
                    if relabeled > current {
                        continue 'perms;
                    }
                }
            }
            fixing += 1;
        }
        Some(fixing)
    }

    fn children(&self, s: &State) -> Vec<State> {
        let u = (0..self.n).find(|&u| s.known & (1 << u) == 0).expect("children of a complete state");
        let mut out = Vec::new();
        for row in &self.candidates[u] {
            let mut child = s.clone();
            if !self.assign(&mut child, u, row) || !self.close(&mut child) {
                continue;
            }
            if self.orderly && self.canonical_prefix(&child).is_none() {
                continue;
            }
            out.push(child);
        }
        out
    }

    /// Work units: the states after the choices of the first two free rows.
    fn partitions(&self) -> Vec<State> {
        let mut frontier = vec![self.empty_state()];
        for _ in 0..2 {
            frontier = frontier
                .into_iter()
                .flat_map(|s| if self.all_known(&s) { vec![s] } else { self.children(&s) })
                .collect();
        }
        frontier
    }

    /// Depth-first search below `s`; false if cancelled.
    fn dfs(&self, s: State, out: &mut Vec<Leaf>, cancel: &AtomicBool) -> bool {
        if cancel.load(Ordering::Relaxed) {
            return false;
        }
        if self.all_known(&s) {
            let automorphisms = if self.orderly {
                match self.canonical_prefix(&s) {
                    Some(a) => a,
                    None => return true,
                }
            } else {
                1
            };
            let n = self.n;
            let table = (0..n).flat_map(|x| s.rows[x][..n].to_vec()).collect();
            out.push(Leaf { table, automorphisms });
            return true;
        }
        for child in self.children(&s) {
            if !self.dfs(child, out, cancel) {
                return false;
            }
        }
        true
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
    fn canonical_form_examples() {
        let t = crate::functors::trivial_quandle(4);
        assert_eq!(canonical_form(&t).unwrap(), t);
        assert_eq!(canonical_form(&flip()).unwrap(), flip());
        let d = FiniteRack::dihedral(3);
        let relabeled = d.apply_relabeling(&Permutation::transposition(3, 0, 1)).unwrap();
        assert_eq!(canonical_form(&relabeled).unwrap(), canonical_form(&d).unwrap());
    }

    #[test]
    fn canonical_form_is_minimal_over_relabelings() {
        let d = FiniteRack::dihedral(5);
        let c = canonical_form(&d).unwrap();
        for p in Permutation::all(5) {
            assert!(c.table() <= d.apply_relabeling(&p).unwrap().table());
        }
    }

    #[test]
    fn canonical_form_refuses_large_orders() {
        let big = crate::functors::trivial_quandle(9);
        assert_eq!(canonical_form(&big), Err(CapError { what: "canonical form", order: 9, cap: 8 }));
    }

    #[test]
    fn small_census_examples() {
        let r1 = enumerate(&SearchConfig::new(1, StructureKind::Rack)).unwrap();
        assert_eq!((r1.labeled_count, r1.iso_count), (1, 1));
        let r2 = enumerate(&SearchConfig::new(2, StructureKind::Rack)).unwrap();
        assert_eq!(r2.iso_count, 2);
        assert_eq!(r2.representatives, vec![crate::functors::trivial_quandle(2), flip()]);
        let q2 = enumerate(&SearchConfig::new(2, StructureKind::Quandle)).unwrap();
        assert_eq!(q2.iso_count, 1);
    }

    #[test]
    fn oracle_examples() {
        let r2 = brute_force_oracle(2, StructureKind::Rack).unwrap();
        assert_eq!((r2.labeled_count, r2.iso_count), (2, 2));
        let k1 = brute_force_oracle(1, StructureKind::Kei).unwrap();
        assert_eq!(k1.iso_count, 1);
        assert!(matches!(brute_force_oracle(4, StructureKind::Rack), Err(EnumerateError::Cap(_))));
    }

    #[test]
    fn orderly_and_deduplicating_agree() {
        for kind in StructureKind::ALL {
            for order in 1..=5 {
                let d = enumerate(&SearchConfig::new(order, kind).rejection(Rejection::Deduplicate)).unwrap();
                let o = enumerate(&SearchConfig::new(order, kind).rejection(Rejection::Orderly)).unwrap();
                assert_eq!(d.representatives, o.representatives, "{kind} {order}");
                assert_eq!(d.labeled_count, o.labeled_count, "{kind} {order}");
            }
        }
    }

    #[test]
    fn config_errors() {
        assert!(matches!(enumerate(&SearchConfig::new(0, StructureKind::Rack)), Err(EnumerateError::InvalidConfig(_))));
        assert!(matches!(
            enumerate(&SearchConfig::new(7, StructureKind::Rack)),
            Err(EnumerateError::Cap(CapError { order: 7, cap: 6, .. }))
        ));
        assert!(matches!(
            enumerate(&SearchConfig::new(3, StructureKind::Rack).workers(0)),
            Err(EnumerateError::InvalidConfig(_))
        ));
    }

    #[test]
    fn cancelled_search_reports_progress() {
        let cancel = AtomicBool::new(true);
        match enumerate_with_cancel(&SearchConfig::new(4, StructureKind::Rack), &cancel) {
            Err(EnumerateError::Interrupted { completed_partitions, total_partitions }) => {
                assert_eq!(completed_partitions, 0);
                assert!(total_partitions > 0);
            }
            other => panic!("expected interruption, got {other:?}"),
        }
    }

    #[test]
    fn automorphisms() {
        assert_eq!(automorphism_count(&crate::functors::trivial_quandle(3)), 6);
        assert_eq!(automorphism_count(&FiniteRack::dihedral(3)), 6);
        assert_eq!(automorphism_count(&flip()), 2);
    }
}
