//! Rack homomorphisms, inner groups, naturality of the canonical automorphism, and
//! exhaustive computation of the center (natural endotransformations of the identity
//! functor) of a finite full subcategory of racks.

use std::collections::{BTreeSet, VecDeque};

use rayon::prelude::*;

use crate::error::CapError;
use crate::perm::{lcm, Permutation};
use crate::rack::FiniteRack;

/// Cap on both orders for a single hom-set query.
pub const HOM_CAP: usize = 5;
/// Cap on the object orders of a center probe.
pub const CENTER_CAP: usize = 4;

/// A map between rack universes that commutes with `▷`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RackMorphism {
    source: FiniteRack,
    target: FiniteRack,
    map: Vec<usize>,
}

impl RackMorphism {
    /// Returns `None` unless `map` is a rack morphism `source → target`.
    pub fn new(source: FiniteRack, target: FiniteRack, map: Vec<usize>) -> Option<RackMorphism> {
        let n = source.order();
        let ok = map.len() == n
            && map.iter().all(|&v| v < target.order())
            && (0..n).all(|x| (0..n).all(|y| map[source.op(x, y)] == target.op(map[x], map[y])));
        ok.then_some(RackMorphism { source, target, map })
    }

    pub fn identity(rack: &FiniteRack) -> RackMorphism {
        RackMorphism { source: rack.clone(), target: rack.clone(), map: (0..rack.order()).collect() }
    }

    pub fn source(&self) -> &FiniteRack {
        &self.source
    }

    pub fn target(&self) -> &FiniteRack {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }
}

/// All rack morphisms `source → target`, sorted lexicographically by image sequence.
pub fn homs(source: &FiniteRack, target: &FiniteRack) -> Result<Vec<RackMorphism>, CapError> {
    check_cap("hom search", source, target, HOM_CAP)?;
    Ok(hom_maps(source, target)
        .into_iter()
        .map(|map| RackMorphism { source: source.clone(), target: target.clone(), map })
        .collect())
}

fn check_cap(what: &'static str, a: &FiniteRack, b: &FiniteRack, cap: usize) -> Result<(), CapError> {
    let order = a.order().max(b.order());
    if order > cap {
        return Err(CapError { what, order, cap });
    }
    Ok(())
}

/// Backtracking over `map(0), map(1), …`; after each choice every pair whose product is
/// already mapped is checked, and products not yet mapped get their image forced.
fn hom_maps(source: &FiniteRack, target: &FiniteRack) -> Vec<Vec<usize>> {
    fn extend(src: &FiniteRack, tgt: &FiniteRack, map: &mut Vec<Option<usize>>, out: &mut Vec<Vec<usize>>) {
        let Some(x) = map.iter().position(Option::is_none) else {
            out.push(map.iter().map(|v| v.unwrap()).collect());
            return;
        };
        for t in 0..tgt.order() {
            let saved = map.clone();
            map[x] = Some(t);
            if propagate(src, tgt, map) {
                extend(src, tgt, map, out);
            }
            *map = saved;
        }
    }

    fn propagate(src: &FiniteRack, tgt: &FiniteRack, map: &mut [Option<usize>]) -> bool {
        let n = src.order();
        loop {
            let mut changed = false;
            for a in 0..n {
                let Some(ia) = map[a] else { continue };
                for b in 0..n {
                    let Some(ib) = map[b] else { continue };
                    let want = tgt.op(ia, ib);
                    let c = src.op(a, b);
                    match map[c] {
                        Some(ic) if ic != want => return false,
                        Some(_) => {}
                        None => {
                            map[c] = Some(want);
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    let mut out = Vec::new();
    if source.order() == 0 {
        out.push(Vec::new());
        return out;
    }
    let mut map = vec![None; source.order()];
    extend(source, target, &mut map, &mut out);
    out.sort();
    out
}

/// `map ∘ F_source = F_target ∘ map`.
pub fn check_f_naturality(phi: &RackMorphism) -> bool {
    let fs = phi.source.canonical_automorphism();
    let ft = phi.target.canonical_automorphism();
    (0..phi.source.order()).all(|x| phi.map[fs.apply(x)] == ft.apply(phi.map[x]))
}

/// The group generated by the left translations, sorted.
pub fn inner_group(rack: &FiniteRack) -> Vec<Permutation> {
    let n = rack.order();
    let generators: Vec<Permutation> = (0..n).map(|x| rack.left_translation(x)).collect();
    let mut group = BTreeSet::from([Permutation::identity(n)]);
    let mut queue = VecDeque::from([Permutation::identity(n)]);
    // closure under right multiplication by generators; finite, so inverses come for free
    while let Some(g) = queue.pop_front() {
        for s in &generators {
            let h = g.compose(s);
            if group.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    group.into_iter().collect()
}

/// One endomorphism per object of a finite object list, commuting with every morphism
/// between listed objects.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NaturalFamily {
    components: Vec<Vec<usize>>,
}

impl NaturalFamily {
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn identity(objects: &[FiniteRack]) -> NaturalFamily {
        NaturalFamily { components: objects.iter().map(|r| (0..r.order()).collect()).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.components.iter().all(|c| c.iter().enumerate().all(|(i, &v)| i == v))
    }

    /// Objectwise `self ∘ other`.
    pub fn compose(&self, other: &NaturalFamily) -> NaturalFamily {
        NaturalFamily {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| b.iter().map(|&i| a[i]).collect())
                .collect(),
        }
    }

    pub fn pow(&self, k: u64) -> NaturalFamily {
        let mut acc = NaturalFamily {
            components: self.components.iter().map(|c| (0..c.len()).collect()).collect(),
        };
        for _ in 0..k {
            acc = self.compose(&acc);
        }
        acc
    }

    /// Smallest `k ≥ 1` with `self^k = id`, if the family is invertible.
    pub fn order(&self) -> Option<u64> {
        let bijective = self.components.iter().all(|c| Permutation::new(c.clone()).is_ok());
        if !bijective {
            return None;
        }
        let mut acc = self.clone();
        let mut k = 1;
        while !acc.is_identity() {
            acc = self.compose(&acc);
            k += 1;
        }
        Some(k)
    }
}

/// The natural center of a finite full subcategory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaturalCenter {
    pub objects: Vec<FiniteRack>,
    /// Sorted.
    pub families: Vec<NaturalFamily>,
}

impl NaturalCenter {
    pub fn contains(&self, family: &NaturalFamily) -> bool {
        self.families.binary_search(family).is_ok()
    }

    /// `table[i][j]` is the index of `families[i] ∘ families[j]`.
    pub fn composition_table(&self) -> Vec<Vec<usize>> {
        self.families
            .iter()
            .map(|a| {
                self.families
                    .iter()
                    .map(|b| self.families.binary_search(&a.compose(b)).expect("center is closed under composition"))
                    .collect()
            })
            .collect()
    }
}

/// All natural families over the full subcategory on `objects`.
///
/// Hom-sets for distinct object pairs are computed in parallel. The family search then
/// assigns one endomorphism per object, and every choice filters the candidate
/// endomorphisms of all later objects through every morphism connecting the two.
pub fn natural_center(objects: &[FiniteRack]) -> Result<NaturalCenter, CapError> {
    for r in objects {
        check_cap("center probe", r, r, CENTER_CAP)?;
    }
    let k = objects.len();
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).collect();
    let hom_sets: Vec<Vec<Vec<usize>>> =
        pairs.par_iter().map(|&(i, j)| hom_maps(&objects[i], &objects[j])).collect();
    let hom = |i: usize, j: usize| &hom_sets[i * k + j];

    let commutes = |phi: &[usize], e_src: &[usize], e_tgt: &[usize]| {
        (0..phi.len()).all(|x| phi[e_src[x]] == e_tgt[phi[x]])
    };

    // node consistency: an endomorphism must commute with every endomorphism of its object
    let domains: Vec<Vec<Vec<usize>>> = (0..k)
        .map(|i| {
            hom(i, i).iter().filter(|e| hom(i, i).iter().all(|phi| commutes(phi, e, e))).cloned().collect()
        })
        .collect();

    let mut families = Vec::new();
    let mut chosen: Vec<Vec<usize>> = Vec::with_capacity(k);
    search_families(0, &domains, &mut chosen, &mut families, &hom, &commutes);
    families.sort();
    Ok(NaturalCenter { objects: objects.to_vec(), families })
}

fn search_families<'a>(
    i: usize,
    domains: &[Vec<Vec<usize>>],
    chosen: &mut Vec<Vec<usize>>,
    out: &mut Vec<NaturalFamily>,
    hom: &impl Fn(usize, usize) -> &'a Vec<Vec<usize>>,
    commutes: &impl Fn(&[usize], &[usize], &[usize]) -> bool,
) {
    if i == domains.len() {
        out.push(NaturalFamily { components: chosen.clone() });
        return;
    }
    for e in &domains[i] {
        // forward filtering of every later object's domain through morphisms to and from object i
        let mut pruned: Vec<Vec<Vec<usize>>> = domains.to_vec();
        pruned[i] = vec![e.clone()];
        let mut dead = false;
        for (j, dom) in pruned.iter_mut().enumerate().skip(i + 1) {
            dom.retain(|f| {
                hom(i, j).iter().all(|phi| commutes(phi, e, f)) && hom(j, i).iter().all(|psi| commutes(psi, f, e))
            });
            if dom.is_empty() {
                dead = true;
                break;
            }
        }
        if dead {
            continue;
        }
        chosen.push(e.clone());
        search_families(i + 1, &pruned, chosen, out, hom, commutes);
        chosen.pop();
    }
}

/// The family of canonical automorphisms `(F_R)`.
pub fn f_family(objects: &[FiniteRack]) -> NaturalFamily {
    NaturalFamily {
        components: objects.iter().map(|r| r.canonical_automorphism().into_images()).collect(),
    }
}

/// Order of `(F_R)` in the center: the lcm of the orders of the `F_R`.
pub fn f_family_order(objects: &[FiniteRack]) -> u64 {
    objects.iter().fold(1, |acc, r| lcm(acc, r.canonical_automorphism().order()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functors::{perm_to_rack, trivial_quandle};
    use crate::rack::validate_rack;

    fn flip() -> FiniteRack {
        validate_rack(vec![vec![1, 0], vec![1, 0]]).unwrap()
    }

    /// Every map `source → target`, filtered by the morphism condition.
    fn brute_homs(source: &FiniteRack, target: &FiniteRack) -> Vec<Vec<usize>> {
        let (n, m) = (source.order(), target.order());
        let mut out = Vec::new();
        for code in 0..m.pow(n as u32) {
            let mut c = code;
            let mut map = vec![0; n];
            for slot in map.iter_mut().rev() {
                *slot = c % m;
                c /= m;
            }
            if RackMorphism::new(source.clone(), target.clone(), map.clone()).is_some() {
                out.push(map);
            }
        }
        out
    }

    #[test]
    fn hom_examples() {
        let one = trivial_quandle(1);
        assert_eq!(homs(&one, &flip()).unwrap().len(), 0);
        assert_eq!(homs(&one, &trivial_quandle(2)).unwrap().len(), 2);
        let ff: Vec<Vec<usize>> = homs(&flip(), &flip()).unwrap().iter().map(|h| h.map().to_vec()).collect();
        assert_eq!(ff, vec![vec![0, 1], vec![1, 0]]);
        let d = FiniteRack::dihedral(3);
        assert!(homs(&d, &d).unwrap().contains(&RackMorphism::identity(&d)));
    }

    #[test]
    fn homs_match_brute_force() {
        let racks = [
            trivial_quandle(2),
            flip(),
            FiniteRack::dihedral(3),
            perm_to_rack(&Permutation::cycle(3)),
            FiniteRack::dihedral(4),
            perm_to_rack(&Permutation::new(vec![1, 0, 3, 2]).unwrap()),
        ];
        for a in &racks {
            for b in &racks {
                let fast: Vec<Vec<usize>> = homs(a, b).unwrap().iter().map(|h| h.map().to_vec()).collect();
                assert_eq!(fast, brute_homs(a, b), "{a:?} -> {b:?}");
            }
        }
    }

    #[test]
    fn hom_cap() {
        let big = trivial_quandle(6);
        assert!(homs(&big, &flip()).is_err());
        assert!(natural_center(&[FiniteRack::dihedral(5)]).is_err());
    }

    #[test]
    fn naturality_examples() {
        assert!(check_f_naturality(&RackMorphism::identity(&flip())));
        for h in homs(&flip(), &flip()).unwrap() {
            assert!(check_f_naturality(&h));
        }
    }

    #[test]
    fn inner_group_examples() {
        assert_eq!(inner_group(&trivial_quandle(3)), vec![Permutation::identity(3)]);
        assert_eq!(inner_group(&flip()), vec![Permutation::identity(2), Permutation::transposition(2, 0, 1)]);
        let g = inner_group(&FiniteRack::dihedral(3));
        assert_eq!(g.len(), 3 * 2);
        // the subgroup of rotations is generated by products of two rows
        let d = FiniteRack::dihedral(3);
        let rotations: BTreeSet<Permutation> = (0..3)
            .flat_map(|x| (0..3).map(move |y| (x, y)))
            .map(|(x, y)| d.left_translation(x).compose(&d.left_translation(y)))
            .collect();
        assert_eq!(rotations.len(), 3);
    }

    #[test]
    fn center_examples() {
        let c = natural_center(&[trivial_quandle(1)]).unwrap();
        assert_eq!(c.families, vec![NaturalFamily::identity(&[trivial_quandle(1)])]);

        let objs = vec![trivial_quandle(1), trivial_quandle(2), flip()];
        let c = natural_center(&objs).unwrap();
        let f = f_family(&objs);
        assert_eq!(f.components(), &[vec![0], vec![0, 1], vec![1, 0]]);
        assert!(c.contains(&f));
        assert_eq!(f.order(), Some(2));
        assert_eq!(f_family_order(&objs), 2);

        let quandles = vec![trivial_quandle(1), trivial_quandle(2), FiniteRack::dihedral(3)];
        let c = natural_center(&quandles).unwrap();
        assert_eq!(c.families, vec![NaturalFamily::identity(&quandles)]);
    }

    #[test]
    fn composition_table_is_closed() {
        let objs = vec![trivial_quandle(1), trivial_quandle(2), flip()];
        let c = natural_center(&objs).unwrap();
        let table = c.composition_table();
        assert_eq!(table.len(), c.families.len());
        let id = c.families.binary_search(&NaturalFamily::identity(&objs)).unwrap();
        for i in 0..table.len() {
            assert_eq!(table[i][id], i);
            assert_eq!(table[id][i], i);
        }
    }
}
