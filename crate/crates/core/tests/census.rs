use racks::cli::cmd_check;
use racks::enumerate::{
    brute_force_oracle, canonical_form, enumerate, labeled_structures, representatives_up_to, SearchConfig,
};
use racks::io::print_blocks;
use racks::{FiniteRack, Permutation, Structure, StructureKind};

fn iso_counts(kind: StructureKind, max: usize) -> Vec<usize> {
    (1..=max).map(|n| enumerate(&SearchConfig::new(n, kind)).unwrap().iso_count).collect()
}

#[test]
fn known_counts() {
    assert_eq!(iso_counts(StructureKind::Rack, 6), [1, 2, 6, 19, 74, 353]);
    assert_eq!(iso_counts(StructureKind::Quandle, 7), [1, 1, 3, 7, 22, 73, 298]);
    assert_eq!(iso_counts(StructureKind::Kei, 6), [1, 1, 3, 5, 13, 41]);
    assert_eq!(iso_counts(StructureKind::Involutary, 5), [1, 2, 5, 13, 42]);
}

#[test]
fn matches_the_oracle() {
    for kind in StructureKind::ALL {
        for n in 1..=3 {
            let mut found = enumerate(&SearchConfig::new(n, kind).labeled()).unwrap();
            let oracle = brute_force_oracle(n, kind).unwrap();
            assert_eq!(found.labeled_count, oracle.labeled_count, "{kind} {n}");
            assert_eq!(found.iso_count, oracle.iso_count, "{kind} {n}");
            assert_eq!(found.representatives, oracle.representatives, "{kind} {n}");
            found.labeled_tables = None;
            let plain = enumerate(&SearchConfig::new(n, kind)).unwrap();
            assert_eq!(found, plain);
        }
    }
}

/// Labeled counts follow from orbit-stabilizer over the class representatives.
#[test]
fn labeled_counts_from_automorphisms() {
    for kind in StructureKind::ALL {
        for n in 1..=4 {
            let labeled = labeled_structures(n, kind, 2).unwrap();
            let mut classes: Vec<FiniteRack> = labeled.iter().map(|r| canonical_form(r).unwrap()).collect();
            classes.sort();
            classes.dedup();
            let record = enumerate(&SearchConfig::new(n, kind)).unwrap();
            assert_eq!(classes, record.representatives);
            assert_eq!(labeled.len() as u64, record.labeled_count);
            let relabelings: usize = classes
                .iter()
                .map(|c| {
                    let mut orbit: Vec<FiniteRack> =
                        Permutation::all(n).map(|p| c.apply_relabeling(&p).unwrap()).collect();
                    orbit.sort();
                    orbit.dedup();
                    orbit.len()
                })
                .sum();
            assert_eq!(relabelings, labeled.len());
        }
    }
}

#[test]
fn kind_lattice() {
    for n in 1..=5 {
        let count = |k| enumerate(&SearchConfig::new(n, k)).unwrap().representatives;
        let racks = count(StructureKind::Rack);
        for kind in StructureKind::ALL {
            let reps = count(kind);
            assert!(reps.iter().all(|r| kind.admits(r) && racks.contains(r)));
            assert_eq!(reps.len(), racks.iter().filter(|r| kind.admits(r)).count());
        }
    }
}

#[test]
fn worker_counts_agree() {
    for kind in StructureKind::ALL {
        for n in [4, 5] {
            let base = enumerate(&SearchConfig::new(n, kind).labeled()).unwrap();
            for w in [2, 8] {
                assert_eq!(enumerate(&SearchConfig::new(n, kind).labeled().workers(w)).unwrap(), base);
            }
        }
    }
}

/// The power operations map each census into itself, and `m` and `-m` give the same
/// image classes and the same power-trivial classes.
#[test]
fn psi_closure() {
    use std::collections::BTreeSet;
    for n in 1..=4 {
        let racks = enumerate(&SearchConfig::new(n, StructureKind::Rack)).unwrap().representatives;
        let image = |m: i64| -> BTreeSet<FiniteRack> {
            racks.iter().map(|r| canonical_form(&racks::power_op(r, m)).unwrap()).collect()
        };
        for m in -2..=3 {
            for kind in StructureKind::ALL {
                for r in enumerate(&SearchConfig::new(n, kind)).unwrap().representatives {
                    let p = racks::power_op(&r, m);
                    assert!(racks.contains(&canonical_form(&p).unwrap()));
                    assert!(!kind.requires_idempotence() || p.is_quandle());
                    if kind.requires_involutions() && m % 2 == 0 {
                        assert_eq!(p, racks::trivial_quandle(n));
                    }
                }
            }
            assert_eq!(image(m), image(-m), "order {n}, m = {m}");
            let trivial = |m| racks.iter().filter(|r| r.is_power_trivial(m)).count();
            assert_eq!(trivial(m), trivial(-m));
        }
    }
}

#[test]
fn identity_suite_on_every_representative() {
    for kind in StructureKind::ALL {
        let reps = representatives_up_to(4, kind, 1).unwrap();
        let text = print_blocks(&reps.into_iter().map(Structure::Rack).collect::<Vec<_>>());
        let outcome = cmd_check(&text);
        assert_eq!(outcome.status as u8, 0, "{}", outcome.stdout);
    }
}
