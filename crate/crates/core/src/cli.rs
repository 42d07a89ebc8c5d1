//! Command implementations behind the `racks` binary. Each command takes already-read
//! input and returns its full output and exit status, so it can be tested without a
//! process boundary.

use std::fmt::Write as _;
use std::sync::atomic::AtomicBool;

use crate::enumerate::{enumerate_with_cancel, representatives_up_to, EnumerateError, SearchConfig};
use crate::error::ValidationError;
use crate::free::{free_rack_eval, FreeError, RackWord};
use crate::functors::{perm_to_rack, rack_to_perm, square_checks, FunctorTag, Structure};
use crate::homsearch::{f_family, f_family_order, natural_center, CENTER_CAP};
use crate::identities::{check_rack, EXPONENTS};
use crate::io::{parse_raw, write_block, FileError, RackFile};
use crate::rack::StructureKind;

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    /// An axiom or identity does not hold.
    Failure = 1,
    InputError = 2,
    /// A search cap was exceeded, or a search was interrupted.
    ResourceCap = 3,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: ExitStatus,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { status: ExitStatus::Success, stdout, stderr: String::new() }
    }

    fn error(status: ExitStatus, stderr: impl Into<String>) -> Self {
        let mut stderr = stderr.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome { status, stdout: String::new(), stderr }
    }
}

fn file_error(e: FileError) -> Outcome {
    let status = match &e {
        FileError::Invalid { error: ValidationError::Axiom(_), .. } => ExitStatus::Failure,
        _ => ExitStatus::InputError,
    };
    Outcome::error(status, format!("error: {e}"))
}

/// The transformations offered by `racks transform`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformOp {
    /// `Ψ^m` on racks and permutations.
    Psi,
    Quandleify,
    /// A rack's canonical automorphism, as a `perm` block.
    CanonPerm,
    /// The permutation rack `x ▷ y = f(y)` of a `perm` block.
    PermRack,
}

impl std::str::FromStr for TransformOp {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "psi" => Ok(TransformOp::Psi),
            "quandleify" => Ok(TransformOp::Quandleify),
            "canon-perm" => Ok(TransformOp::CanonPerm),
            "perm-rack" => Ok(TransformOp::PermRack),
            other => Err(format!("unknown op `{other}` (expected psi|quandleify|canon-perm|perm-rack)")),
        }
    }
}

pub fn cmd_validate(text: &str, no_validate: bool) -> Outcome {
    let raw = match parse_raw(text) {
        Ok(raw) => raw,
        Err(e) => return Outcome::error(ExitStatus::InputError, format!("error: {e}")),
    };
    if raw.is_empty() {
        return Outcome::error(ExitStatus::InputError, "error: no blocks found");
    }
    let mut out = String::new();
    let mut status = ExitStatus::Success;
    let mut stderr = String::new();
    for (i, block) in raw.iter().enumerate() {
        let index = i + 1;
        if no_validate {
            let _ = writeln!(out, "block {index} (line {}): parsed order={}", block.line, block.order);
            continue;
        }
        match block.validate() {
            Ok(Structure::Rack(r)) => {
                let _ = writeln!(
                    out,
                    "block {index} (line {}): rack order={} quandle={} involutary={} kei={}",
                    block.line,
                    r.order(),
                    r.is_quandle(),
                    r.is_involutary(),
                    r.is_kei()
                );
            }
            Ok(Structure::Perm(p)) => {
                let _ = writeln!(out, "block {index} (line {}): perm order={}", block.line, p.len());
            }
            Err(e) => {
                let _ = writeln!(out, "block {index} (line {}): {e}", block.line);
                if status == ExitStatus::Success {
                    let _ = writeln!(stderr, "error: block {index} (line {}): {e}", block.line);
                    status = match e {
                        ValidationError::Axiom(_) => ExitStatus::Failure,
                        ValidationError::Input(_) => ExitStatus::InputError,
                    };
                }
            }
        }
    }
    Outcome { status, stdout: out, stderr }
}

/// Header line `order<TAB>kind<TAB>labeled<TAB>iso`, followed by one block per class
/// (or per labeled table) when `emit_tables` is set.
pub fn cmd_census(config: &SearchConfig, cancel: &AtomicBool) -> Outcome {
    match enumerate_with_cancel(config, cancel) {
        Ok(record) => {
            let mut out = format!("{}\t{}\t{}\t{}\n", record.order, record.kind, record.labeled_count, record.iso_count);
            if config.emit_tables {
                let tables = if config.up_to_iso {
                    &record.representatives
                } else {
                    record.labeled_tables.as_ref().expect("labeled search lists its tables")
                };
                for r in tables {
                    out.push('\n');
                    write_block(&mut out, &Structure::Rack(r.clone()));
                }
            }
            Outcome::ok(out)
        }
        Err(e @ EnumerateError::InvalidConfig(_)) => Outcome::error(ExitStatus::InputError, format!("error: {e}")),
        Err(e) => Outcome::error(ExitStatus::ResourceCap, format!("error: {e}")),
    }
}

pub fn cmd_transform(text: &str, op: TransformOp, m: Option<i64>) -> Outcome {
    let file = match RackFile::parse(text) {
        Ok(f) => f,
        Err(e) => return file_error(e),
    };
    let tag = match (op, m) {
        (TransformOp::Psi, Some(m)) => FunctorTag::Power(m),
        (TransformOp::Psi, None) => return Outcome::error(ExitStatus::InputError, "error: psi needs -m <M>"),
        (TransformOp::Quandleify, _) => FunctorTag::Quandleify,
        (TransformOp::CanonPerm, _) => FunctorTag::RackToPerm,
        (TransformOp::PermRack, _) => FunctorTag::PermToRack,
    };
    let mut blocks = Vec::with_capacity(file.blocks.len());
    for (i, block) in file.blocks.iter().enumerate() {
        match tag.apply(block) {
            Ok(b) => blocks.push(b),
            Err(e) => return Outcome::error(ExitStatus::InputError, format!("error: block {}: {e}", i + 1)),
        }
    }
    Outcome::ok(RackFile { blocks }.print())
}

pub fn cmd_eval(word: &str, window: i64) -> Outcome {
    let parsed: RackWord = match word.parse() {
        Ok(w) => w,
        Err(e) => return Outcome::error(ExitStatus::InputError, format!("error: {e}")),
    };
    match free_rack_eval(&parsed, window) {
        Ok(v) => Outcome::ok(format!("{}\n", v.value())),
        Err(e @ FreeError::WindowExceeded { .. }) => Outcome::error(ExitStatus::ResourceCap, format!("error: {e}")),
        Err(e) => Outcome::error(ExitStatus::InputError, format!("error: {e}")),
    }
}

/// Center probe over every census representative of `kind` with order `1..=max_order`.
pub fn cmd_center(max_order: usize, kind: StructureKind, composition: bool) -> Outcome {
    if max_order == 0 {
        return Outcome::error(ExitStatus::InputError, "error: --max-order must be at least 1");
    }
    if max_order > CENTER_CAP {
        return Outcome::error(
            ExitStatus::ResourceCap,
            format!("error: center probe: order {max_order} exceeds the cap of {CENTER_CAP}"),
        );
    }
    let objects = match representatives_up_to(max_order, kind, 1) {
        Ok(o) => o,
        Err(e) => return Outcome::error(ExitStatus::ResourceCap, format!("error: {e}")),
    };
    let center = match natural_center(&objects) {
        Ok(c) => c,
        Err(e) => return Outcome::error(ExitStatus::ResourceCap, format!("error: {e}")),
    };
    let f = f_family(&objects);
    let f_order = f_family_order(&objects);
    let powers_in_center = (0..f_order).all(|k| center.contains(&f.pow(k)));

    let mut out = String::new();
    let _ = writeln!(out, "objects\t{}", objects.len());
    let _ = writeln!(out, "families\t{}", center.families.len());
    let _ = writeln!(out, "f_order\t{f_order}");
    let _ = writeln!(out, "f_powers_in_center\t{powers_in_center}");
    for (i, family) in center.families.iter().enumerate() {
        let comps: Vec<String> = family
            .components()
            .iter()
            .map(|c| format!("[{}]", c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        let _ = writeln!(out, "family\t{i}\t{}", comps.join(" "));
    }
    if composition {
        for (i, row) in center.composition_table().iter().enumerate() {
            let _ = writeln!(out, "compose\t{i}\t{}", row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "));
        }
    }
    if powers_in_center {
        Outcome::ok(out)
    } else {
        Outcome { status: ExitStatus::Failure, stdout: out, stderr: "error: a power of F is not natural\n".into() }
    }
}

/// Runs the identity suite on every block of a file.
pub fn cmd_check(text: &str) -> Outcome {
    let file = match RackFile::parse(text) {
        Ok(f) => f,
        Err(e) => return file_error(e),
    };
    if file.blocks.is_empty() {
        return Outcome::error(ExitStatus::InputError, "error: no blocks found");
    }
    let mut out = String::new();
    let mut first_failure = None;
    for (i, block) in file.blocks.iter().enumerate() {
        let index = i + 1;
        let results: Vec<(&str, Option<String>)> = match block {
            Structure::Rack(r) => check_rack(r).results.into_iter().map(|r| (r.name, r.failure)).collect(),
            Structure::Perm(f) => {
                let retraction = (rack_to_perm(&perm_to_rack(f)) != *f).then(|| format!("f={f}"));
                let square = EXPONENTS
                    .clone()
                    .find(|&m| !square_checks(&perm_to_rack(f), f, m).permutation_rack)
                    .map(|m| format!("m={m}"));
                vec![
                    (crate::identities::PER_CAN, retraction),
                    (crate::identities::SQUARE_B, square),
                ]
            }
        };
        for (name, failure) in results {
            match failure {
                None => {
                    let _ = writeln!(out, "block {index}\t{name}\tok");
                }
                Some(detail) => {
                    let _ = writeln!(out, "block {index}\t{name}\tFAIL\t{detail}");
                    first_failure.get_or_insert(format!("block {index}: {name}: {detail}"));
                }
            }
        }
    }
    match first_failure {
        None => Outcome::ok(out),
        Some(diag) => Outcome { status: ExitStatus::Failure, stdout: out, stderr: format!("error: {diag}\n") },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FLIP: &str = "rack 2\n1 0\n1 0\n";

    #[test]
    fn eval_example() {
        assert_eq!(cmd_eval("(x > x)", 64), Outcome::ok("1\n".into()));
        assert_eq!(cmd_eval("(x > x", 64).status, ExitStatus::InputError);
        assert_eq!(cmd_eval("(x > (x > x))", 1).status, ExitStatus::ResourceCap);
    }

    #[test]
    fn census_example() {
        let out = cmd_census(&SearchConfig::new(2, StructureKind::Rack), &AtomicBool::new(false));
        assert_eq!(out.stdout, "2\track\t2\t2\n");
        let mut cfg = SearchConfig::new(2, StructureKind::Rack);
        cfg.emit_tables = true;
        let out = cmd_census(&cfg, &AtomicBool::new(false));
        assert_eq!(out.stdout, "2\track\t2\t2\n\nrack 2\n0 1\n0 1\n\nrack 2\n1 0\n1 0\n");
        let out = cmd_census(&SearchConfig::new(9, StructureKind::Rack), &AtomicBool::new(false));
        assert_eq!(out.status, ExitStatus::ResourceCap);
        let out = cmd_census(&SearchConfig::new(3, StructureKind::Rack), &AtomicBool::new(true));
        assert_eq!(out.status, ExitStatus::ResourceCap);
        assert!(out.stdout.is_empty());
        assert!(out.stderr.contains("interrupted"));
    }

    #[test]
    fn transform_example() {
        let out = cmd_transform(FLIP, TransformOp::Psi, Some(2));
        assert_eq!(out, Outcome::ok("rack 2\n0 1\n0 1\n".into()));
        let out = cmd_transform(FLIP, TransformOp::CanonPerm, None);
        assert_eq!(out.stdout, "perm 2\n1 0\n");
        let out = cmd_transform(&out.stdout, TransformOp::PermRack, None);
        assert_eq!(out.stdout, FLIP);
        assert_eq!(cmd_transform(FLIP, TransformOp::Psi, None).status, ExitStatus::InputError);
        assert_eq!(cmd_transform("perm 2\n1 0\n", TransformOp::Quandleify, None).status, ExitStatus::InputError);
        assert_eq!(cmd_transform("rack 2\n0 1\n1 0\n", TransformOp::Quandleify, None).status, ExitStatus::Failure);
    }

    #[test]
    fn validate_reports() {
        let out = cmd_validate(FLIP, false);
        assert_eq!(out.status, ExitStatus::Success);
        assert_eq!(out.stdout, "block 1 (line 1): rack order=2 quandle=false involutary=true kei=false\n");
        let out = cmd_validate("rack 2\n0 1\n1 0\n", false);
        assert_eq!(out.status, ExitStatus::Failure);
        assert!(out.stderr.contains("(x,y,z)=(1,0,0)"));
        assert_eq!(cmd_validate("rack 2\n0 1\n1 0\n", true).status, ExitStatus::Success);
        assert_eq!(cmd_validate("rack 2\n0 1\n", false).status, ExitStatus::InputError);
        assert_eq!(cmd_validate("", false).status, ExitStatus::InputError);
    }

    #[test]
    fn check_reports() {
        let out = cmd_check(FLIP);
        assert_eq!(out.status, ExitStatus::Success, "{}", out.stdout);
        assert!(out.stdout.lines().all(|l| l.ends_with("\tok")));
        let out = cmd_check("perm 3\n1 2 0\n");
        assert_eq!(out.status, ExitStatus::Success);
        assert_eq!(out.stdout.lines().count(), 2);
    }

    #[test]
    fn center_report() {
        let out = cmd_center(2, StructureKind::Rack, true);
        assert_eq!(out.status, ExitStatus::Success);
        assert!(out.stdout.starts_with("objects\t3\n"));
        assert!(out.stdout.contains("f_order\t2\n"));
        assert!(out.stdout.contains("f_powers_in_center\ttrue\n"));
        assert!(out.stdout.contains("compose\t0\t"));
        assert_eq!(cmd_center(5, StructureKind::Rack, false).status, ExitStatus::ResourceCap);
    }
}
