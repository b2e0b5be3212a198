//! n-cycle census: counts, conjugacy classes of n-cycles, normalizers,
//! bound verdicts and the structure check for groups attaining the bound.
//!
//! Conjugacy test. The centralizer of an n-cycle `σ` in `Sym(n)` is `<σ>`,
//! so every `y` with `σ^y = τ` lies in the coset `<σ>x₀`, where `x₀` sends
//! `σ^i(0)` to `τ^i(0)`. When `σ ∈ G` that coset meets `G` iff `x₀ ∈ G`, so a
//! single membership test decides conjugacy.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use crate::arith::{gcd, is_prime};
use crate::blocks::{all_minimal_block_systems, block_action, block_stabilizer_constituent, derived_series};
use crate::group::{GroupError, PermGroup};
use crate::perm::{Permutation, Point};
use crate::rational::Ratio;

pub use crate::arith::euler_phi;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CensusError {
    Group(GroupError),
    NotTransitive,
    NotFullCycle,
    NotInGroup,
    /// The structure check only applies when the bound is attained.
    NoEquality,
    /// An n-cycle count not divisible by φ(n); impossible for a correct census.
    InexactDivision { count: u128, phi: u64 },
}

impl fmt::Display for CensusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CensusError::Group(e) => write!(f, "{e}"),
            CensusError::NotTransitive => f.write_str("group is not transitive"),
            CensusError::NotFullCycle => f.write_str("permutation is not an n-cycle"),
            CensusError::NotInGroup => f.write_str("permutation is not in the group"),
            CensusError::NoEquality => f.write_str("the group does not attain the bound"),
            CensusError::InexactDivision { count, phi } => {
                write!(f, "n-cycle count {count} is not divisible by phi(n) = {phi}")
            }
        }
    }
}

impl core::error::Error for CensusError {}

impl From<GroupError> for CensusError {
    fn from(e: GroupError) -> Self {
        CensusError::Group(e)
    }
}

fn require_transitive(g: &PermGroup) -> Result<(), CensusError> {
    if g.is_transitive() {
        Ok(())
    } else {
        Err(CensusError::NotTransitive)
    }
}

/// The permutation sending `σ^i(0)` to `τ^i(0)` for every `i`.
pub fn cycle_conjugator(sigma: &Permutation, tau: &Permutation) -> Permutation {
    let n = sigma.degree();
    let mut imgs = vec![0 as Point; n];
    let (mut s, mut t) = (0usize, 0usize);
    for _ in 0..n {
        imgs[s] = t as Point;
        s = sigma.apply(s);
        t = tau.apply(t);
    }
    Permutation::from_raw(imgs)
}

/// Conjugacy in `g` of two n-cycles that both lie in `g`.
pub fn cycles_conjugate(g: &PermGroup, sigma: &Permutation, tau: &Permutation) -> bool {
    g.contains_unchecked(&cycle_conjugator(sigma, tau))
}

/// Number of n-cycles among the elements with index in `range`.
pub fn count_n_cycles_range(g: &PermGroup, range: Range<u128>) -> u128 {
    let mut count = 0u128;
    g.element_range(range).for_each_ref(|x| {
        if x.is_full_cycle() {
            count += 1;
        }
    });
    count
}

pub fn count_n_cycles(g: &PermGroup, cap: u128) -> Result<u128, CensusError> {
    require_transitive(g)?;
    g.elements(cap)?;
    Ok(count_n_cycles_range(g, 0..g.order()))
}

/// One conjugacy class of n-cycles seen so far: its least member
/// (lexicographically by images) and how many members were counted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleClass {
    pub representative: Permutation,
    pub size: u128,
}

/// n-cycles found in part of a group, sorted into `G`-classes.
///
/// Tallies over disjoint index ranges merge into the tally of their union,
/// and the result does not depend on how the ranges were cut.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassTally {
    classes: Vec<CycleClass>,
}

impl ClassTally {
    pub fn new() -> Self {
        ClassTally::default()
    }

    pub fn count(&self) -> u128 {
        self.classes.iter().map(|c| c.size).sum()
    }

    /// Classes ordered by representative.
    pub fn classes(&self) -> &[CycleClass] {
        &self.classes
    }

    fn insert(&mut self, g: &PermGroup, tau: &Permutation, size: u128) {
        match self.classes.iter().position(|c| cycles_conjugate(g, &c.representative, tau)) {
            Some(i) => {
                let c = &mut self.classes[i];
                c.size += size;
                if *tau < c.representative {
                    c.representative = tau.clone();
                    self.classes.sort_unstable_by(|a, b| a.representative.cmp(&b.representative));
                }
            }
            None => {
                let at = self.classes.partition_point(|c| c.representative < *tau);
                self.classes.insert(at, CycleClass { representative: tau.clone(), size });
            }
        }
    }

    pub fn merge(&mut self, g: &PermGroup, other: ClassTally) {
        for c in other.classes {
            self.insert(g, &c.representative, c.size);
        }
    }
}

/// Class tally of the n-cycles with element index in `range`.
pub fn tally_range(g: &PermGroup, range: Range<u128>) -> ClassTally {
    let mut t = ClassTally::new();
    g.element_range(range).for_each_ref(|x| {
        if x.is_full_cycle() {
            t.insert(g, x, 1);
        }
    });
    t
}

pub fn tally(g: &PermGroup, cap: u128) -> Result<ClassTally, CensusError> {
    require_transitive(g)?;
    g.elements(cap)?;
    Ok(tally_range(g, 0..g.order()))
}

/// Number of `G`-classes of n-cycles and the least member of each.
/// A group without n-cycles yields `(0, [])`.
pub fn n_cycle_classes(g: &PermGroup, cap: u128) -> Result<(usize, Vec<Permutation>), CensusError> {
    let t = tally(g, cap)?;
    Ok((t.classes.len(), t.classes.into_iter().map(|c| c.representative).collect()))
}

fn exact_subgroup_count(count: u128, n: usize) -> Result<u128, CensusError> {
    let phi = euler_phi(n as u64);
    if !count.is_multiple_of(phi as u128) {
        return Err(CensusError::InexactDivision { count, phi });
    }
    Ok(count / phi as u128)
}

/// Number of cyclic subgroups generated by an n-cycle.
pub fn cyclic_transitive_count(g: &PermGroup, cap: u128) -> Result<u128, CensusError> {
    let count = count_n_cycles(g, cap)?;
    exact_subgroup_count(count, g.degree())
}

/// Size of the `G`-class of `sigma`, by conjugating with every element.
pub fn conjugacy_class_size(g: &PermGroup, sigma: &Permutation, cap: u128) -> Result<u128, CensusError> {
    let mut seen = BTreeSet::new();
    g.elements(cap)?.for_each_ref(|x| {
        seen.insert(sigma.conjugate_by(x));
    });
    Ok(seen.len() as u128)
}

fn check_cycle_in(g: &PermGroup, sigma: &Permutation) -> Result<(), CensusError> {
    if sigma.degree() != g.degree() || !sigma.is_full_cycle() {
        return Err(CensusError::NotFullCycle);
    }
    if !g.contains_unchecked(sigma) {
        return Err(CensusError::NotInGroup);
    }
    Ok(())
}

/// Units `u` modulo `n` with `σ^u` conjugate to `σ` in `g`, ascending.
pub fn power_conjugate_exponents(g: &PermGroup, sigma: &Permutation) -> Result<Vec<u64>, CensusError> {
    check_cycle_in(g, sigma)?;
    let n = g.degree() as u64;
    Ok((1..=n.max(1))
        .filter(|&u| gcd(u as u128, n as u128) == 1)
        .filter(|&u| cycles_conjugate(g, sigma, &sigma.pow(u as i64)))
        .collect())
}

/// `|N_G(<σ>)|`. The normalizer in `Sym(n)` consists of the `n·φ(n)` maps
/// `σ^k·m_u`, where `m_u` sends `σ^i(0)` to `σ^{ui}(0)`; since `σ ∈ G` it
/// suffices to test the `m_u`.
pub fn normalizer_order_of_cycle(g: &PermGroup, sigma: &Permutation) -> Result<u128, CensusError> {
    let units = power_conjugate_exponents(g, sigma)?;
    Ok(g.degree() as u128 * units.len() as u128)
}

/// True iff `<τ>` is conjugate in `g` to `<σ>`, for n-cycles in `g`.
pub fn generates_conjugate_subgroup(g: &PermGroup, tau: &Permutation, sigma: &Permutation) -> Result<bool, CensusError> {
    check_cycle_in(g, sigma)?;
    check_cycle_in(g, tau)?;
    let n = g.degree() as u64;
    Ok((1..=n.max(1))
        .filter(|&u| gcd(u as u128, n as u128) == 1)
        .any(|u| cycles_conjugate(g, &sigma.pow(u as i64), tau)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum StructureVerdict {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for StructureVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StructureVerdict::Pass => "pass",
            StructureVerdict::Fail => "fail",
            StructureVerdict::NotApplicable => "not_applicable",
        })
    }
}

/// Outcome of the structure check for a group attaining the bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureCertificate {
    pub verdict: StructureVerdict,
    pub solvable: bool,
    pub derived_orders: Vec<u128>,
    /// Primes `p₁, .., p_m` from the finest block system upwards; present
    /// when a tower was found.
    pub tower: Option<Vec<u64>>,
}

/// Transitive on `p` points, containing a `p`-cycle, order dividing `p(p-1)`.
fn affine_like(h: &PermGroup, p: usize) -> bool {
    let p128 = p as u128;
    if h.degree() != p || !(p128 * (p128 - 1)).is_multiple_of(h.order()) {
        return false;
    }
    let mut found = false;
    h.element_range(0..h.order()).for_each_ref(|x| found |= x.is_full_cycle());
    found
}

/// Depth-first search for a chain of invariant partitions with prime
/// ratios, trying minimal systems in sorted order.
fn prime_tower(g: &PermGroup) -> Option<Vec<u64>> {
    let r = g.degree();
    if r == 1 {
        return Some(Vec::new());
    }
    if is_prime(r as u64) {
        return affine_like(g, r).then(|| vec![r as u64]);
    }
    for sys in all_minimal_block_systems(g).ok()? {
        let p = sys.s();
        if !is_prime(p as u64) {
            continue;
        }
        let sub = block_stabilizer_constituent(g, &sys, 0).ok()?;
        if !affine_like(&sub, p) {
            continue;
        }
        let image = block_action(g, &sys).ok()?.image;
        if let Some(rest) = prime_tower(&image) {
            let mut tower = vec![p as u64];
            tower.extend(rest);
            return Some(tower);
        }
    }
    None
}

/// Structure check without confirming that the bound is attained.
pub fn structure_certificate(g: &PermGroup) -> StructureCertificate {
    let series = derived_series(g);
    let tower = if g.is_transitive() { prime_tower(g) } else { None };
    let verdict = if series.solvable && tower.is_some() { StructureVerdict::Pass } else { StructureVerdict::Fail };
    StructureCertificate { verdict, solvable: series.solvable, derived_orders: series.orders, tower }
}

/// For a group attaining the bound: solvability plus a prime tower of block
/// systems in which every step is induced by a subgroup of `AGL₁(p)`
/// containing `C_p`.
pub fn extremal_structure_check(g: &PermGroup, cap: u128) -> Result<StructureCertificate, CensusError> {
    let subgroups = cyclic_transitive_count(g, cap)?;
    if subgroups * g.degree() as u128 != g.order() {
        return Err(CensusError::NoEquality);
    }
    Ok(structure_certificate(g))
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CensusReport {
    pub degree: usize,
    pub order: u128,
    pub n_cycle_count: u128,
    pub class_count: usize,
    pub cyclic_transitive_count: u128,
    pub bound: Ratio,
    pub phi_n: u64,
    pub equality: bool,
    pub solvable: Option<bool>,
    pub structure_verdict: StructureVerdict,
    /// Whether the subgroup count divides `|G|`.
    pub divides_order: bool,
    pub tower: Option<Vec<u64>>,
    /// Least member of each class, 1-based cycle notation.
    pub class_representatives: Vec<String>,
    /// Size of each class, in the order of `class_representatives`.
    pub class_sizes: Vec<u128>,
}

impl CensusReport {
    /// Every stated relation that fails; empty for a consistent report.
    pub fn violations(&self) -> Vec<String> {
        let n = self.degree as u128;
        let mut out = Vec::new();
        let mut check = |ok: bool, what: &str| {
            if !ok {
                out.push(String::from(what));
            }
        };
        check(
            self.n_cycle_count == self.cyclic_transitive_count * self.phi_n as u128,
            "n-cycle count differs from subgroup count times phi(n)",
        );
        check(
            self.class_sizes.iter().all(|&s| s * n == self.order),
            "an n-cycle class has size other than |G|/n",
        );
        check(self.n_cycle_count * n == self.class_count as u128 * self.order, "class size identity fails");
        check(self.class_count as u64 <= self.phi_n, "more than phi(n) classes of n-cycles");
        check(self.cyclic_transitive_count * n <= self.order, "more than |G|/n cyclic transitive subgroups");
        check(
            self.equality == (self.cyclic_transitive_count * n == self.order),
            "equality flag inconsistent with the counts",
        );
        check(!self.equality || self.solvable == Some(true), "bound attained by a non-solvable group");
        check(self.structure_verdict != StructureVerdict::Fail, "bound attained without the prime tower structure");
        out
    }
}

/// Census report from a tally covering every element of `g`.
pub fn report_from_tally(g: &PermGroup, t: &ClassTally) -> Result<CensusReport, CensusError> {
    require_transitive(g)?;
    let n = g.degree();
    let order = g.order();
    let count = t.count();
    let subgroups = exact_subgroup_count(count, n)?;
    let equality = subgroups * n as u128 == order;
    let (solvable, structure_verdict, tower) = if equality {
        let cert = structure_certificate(g);
        (cert.solvable, cert.verdict, cert.tower)
    } else {
        (derived_series(g).solvable, StructureVerdict::NotApplicable, None)
    };
    Ok(CensusReport {
        degree: n,
        order,
        n_cycle_count: count,
        class_count: t.classes().len(),
        cyclic_transitive_count: subgroups,
        bound: Ratio::new(order, n as u128),
        phi_n: euler_phi(n as u64),
        equality,
        solvable: Some(solvable),
        structure_verdict,
        divides_order: subgroups != 0 && order.is_multiple_of(subgroups),
        tower,
        class_representatives: t.classes().iter().map(|c| c.representative.to_cycle_string()).collect(),
        class_sizes: t.classes().iter().map(|c| c.size).collect(),
    })
}

pub fn theorem_verdict(g: &PermGroup, cap: u128) -> Result<CensusReport, CensusError> {
    let t = tally(g, cap)?;
    report_from_tally(g, &t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::*;

    const CAP: u128 = 1 << 24;

    #[test]
    fn counts() {
        assert_eq!(count_n_cycles(&symmetric(4), CAP).unwrap(), 6);
        assert_eq!(count_n_cycles(&cyclic_regular(6), CAP).unwrap(), 2);
        assert_eq!(cyclic_transitive_count(&symmetric(4), CAP).unwrap(), 3);
        assert_eq!(cyclic_transitive_count(&holomorph_cyclic(7), CAP).unwrap(), 1);
        let c3 = cyclic_regular(3);
        assert_eq!(cyclic_transitive_count(&wreath_imprimitive(&c3, &c3), CAP).unwrap(), 6);
        assert_eq!(
            count_n_cycles(&symmetric(8), 100),
            Err(CensusError::Group(GroupError::CapExceeded { order: 40320, cap: 100 }))
        );
        let intrans = PermGroup::new(3, vec![Permutation::parse("(1,2)", 3).unwrap()]).unwrap();
        assert_eq!(count_n_cycles(&intrans, CAP), Err(CensusError::NotTransitive));
    }

    #[test]
    fn classes() {
        assert_eq!(n_cycle_classes(&symmetric(6), CAP).unwrap().0, 1);
        assert_eq!(n_cycle_classes(&pgammal(2, 8).unwrap(), CAP).unwrap().0, 3);
        let c3 = cyclic_regular(3);
        let (k, reps) = n_cycle_classes(&wreath_imprimitive(&c3, &c3), CAP).unwrap();
        assert_eq!(k, 4);
        for (i, a) in reps.iter().enumerate() {
            for b in &reps[i + 1..] {
                assert!(a < b);
            }
        }
        let no_cycles = alternating(4).unwrap();
        assert_eq!(n_cycle_classes(&no_cycles, CAP).unwrap(), (0, Vec::new()));
    }

    #[test]
    fn classes_agree_with_direct_conjugation() {
        for g in [symmetric(5), holomorph_cyclic(9), sharpness_group(1).unwrap(), pgl(2, 4).unwrap()] {
            let t = tally(&g, CAP).unwrap();
            for c in t.classes() {
                let size = conjugacy_class_size(&g, &c.representative, CAP).unwrap();
                assert_eq!(size, c.size);
                assert_eq!(size * g.degree() as u128, g.order());
            }
        }
    }

    #[test]
    fn tallies_merge_independently_of_split() {
        let g = pgammal(2, 8).unwrap();
        let whole = tally(&g, CAP).unwrap();
        for parts in [2u128, 3, 7] {
            let step = g.order().div_ceil(parts);
            let mut merged = ClassTally::new();
            for k in (0..parts).rev() {
                merged.merge(&g, tally_range(&g, k * step..(k + 1) * step));
            }
            assert_eq!(merged, whole);
        }
    }

    #[test]
    fn normalizers() {
        let s = singer_cycle(3, 2).unwrap();
        let g = pgl(3, 2).unwrap();
        assert_eq!(normalizer_order_of_cycle(&g, &s).unwrap(), 21);
        assert_eq!(power_conjugate_exponents(&g, &s).unwrap(), vec![1, 2, 4]);
        let s7 = symmetric(7);
        let c = Permutation::parse("(1,3,5,7,2,4,6)", 7).unwrap();
        assert_eq!(normalizer_order_of_cycle(&s7, &c).unwrap(), 42);
        let sharp = sharpness_group(1).unwrap();
        let orders: Vec<u128> = sharp
            .elements(CAP)
            .unwrap()
            .filter(|x| x.is_full_cycle())
            .map(|x| normalizer_order_of_cycle(&sharp, &x).unwrap())
            .collect();
        assert_eq!(orders.len(), 12);
        assert!(orders.contains(&12));
        assert!(orders.iter().all(|&o| 72 % o == 0 && o % 6 == 0));
        assert_eq!(
            normalizer_order_of_cycle(&g, &Permutation::parse("(1,2)", 7).unwrap()),
            Err(CensusError::NotFullCycle)
        );
        let outside = Permutation::parse("(1,2,3,4,5,6,7)", 7).unwrap();
        if !g.contains_unchecked(&outside) {
            assert_eq!(normalizer_order_of_cycle(&g, &outside), Err(CensusError::NotInGroup));
        }
    }

    #[test]
    fn singer_subgroups() {
        for (d, q) in [(2, 4), (2, 5), (3, 2), (2, 8)] {
            let g = pgl(d, q).unwrap();
            let s = singer_cycle(d, q).unwrap();
            g.elements(CAP).unwrap().filter(|x| x.is_full_cycle()).for_each(|x| {
                assert!(generates_conjugate_subgroup(&g, &x, &s).unwrap());
            });
            let n = g.degree() as u64;
            assert_eq!(n_cycle_classes(&g, CAP).unwrap().0 as u64, euler_phi(n) / d as u64);
        }
    }

    #[test]
    fn verdicts() {
        let c3 = cyclic_regular(3);
        let r = theorem_verdict(&wreath_imprimitive(&c3, &c3), CAP).unwrap();
        assert_eq!((r.order, r.n_cycle_count, r.class_count, r.cyclic_transitive_count), (81, 36, 4, 6));
        assert_eq!(r.bound, Ratio::integer(9));
        assert!(!r.equality && !r.divides_order);
        assert_eq!(r.structure_verdict, StructureVerdict::NotApplicable);
        assert!(r.violations().is_empty());

        let r = theorem_verdict(&sharpness_group(1).unwrap(), CAP).unwrap();
        assert!(r.equality);
        assert_eq!(r.solvable, Some(true));
        assert_eq!(r.structure_verdict, StructureVerdict::Pass);
        assert_eq!(r.tower, Some(vec![3, 2]));
        assert_eq!((r.class_count, r.phi_n), (2, 2));
        assert!(r.violations().is_empty());

        let r = theorem_verdict(&cyclic_regular(12), CAP).unwrap();
        let mut tower = r.tower.clone().unwrap();
        tower.sort_unstable();
        assert_eq!(tower, vec![2, 2, 3]);

        let r = theorem_verdict(&symmetric(4), CAP).unwrap();
        assert_eq!(r.structure_verdict, StructureVerdict::NotApplicable);
        assert_eq!(extremal_structure_check(&symmetric(4), CAP), Err(CensusError::NoEquality));
        assert_eq!(extremal_structure_check(&cyclic_regular(9), CAP).unwrap().tower, Some(vec![3, 3]));
    }

    #[test]
    fn violations_are_reported() {
        let mut r = theorem_verdict(&symmetric(4), CAP).unwrap();
        r.class_count = 7;
        assert!(!r.violations().is_empty());
        let mut r = theorem_verdict(&sharpness_group(1).unwrap(), CAP).unwrap();
        r.solvable = Some(false);
        assert_eq!(r.violations().len(), 1);
    }
}
