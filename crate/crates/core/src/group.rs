//! Permutation groups backed by a deterministic stabilizer chain.
//!
//! The chain is built by Schreier-Sims against the prescribed base
//! `0, 1, .., n-1`; levels whose basic orbit is trivial are dropped
//! afterwards. What remains is the base in which every base point is the
//! smallest point moved by the pointwise stabilizer of its predecessors, so
//! the base, the transversals and the element order only depend on the
//! generator list.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use crate::perm::{Permutation, Point};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    NoGenerators,
    DegreeMismatch { expected: usize, found: usize },
    /// The group is larger than the caller's enumeration cap.
    CapExceeded { order: u128, cap: u128 },
    OrderOverflow,
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::NoGenerators => f.write_str("at least one generator is required"),
            GroupError::DegreeMismatch { expected, found } => {
                write!(f, "degree mismatch: group has degree {expected}, permutation has {found}")
            }
            GroupError::CapExceeded { order, cap } => {
                write!(f, "group order {order} exceeds enumeration cap {cap}")
            }
            GroupError::OrderOverflow => f.write_str("group order does not fit in 128 bits"),
        }
    }
}

impl core::error::Error for GroupError {}

/// One level of a stabilizer chain.
#[derive(Clone, Debug)]
struct Level {
    base: usize,
    /// Strong generators fixing every earlier base point.
    gens: Vec<Permutation>,
    /// Basic orbit in discovery order; `orbit[0] == base`.
    orbit: Vec<usize>,
    /// `reps[x]` maps `base` to `x`.
    reps: Vec<Option<Permutation>>,
    inv_reps: Vec<Option<Permutation>>,
    /// `checked[k]`: Schreier generators for `orbit[k]` and `gens[..checked[k]]` have sifted.
    checked: Vec<usize>,
}

impl Level {
    fn new(degree: usize, base: usize) -> Self {
        let mut reps = vec![None; degree];
        let mut inv_reps = vec![None; degree];
        reps[base] = Some(Permutation::identity(degree));
        inv_reps[base] = Some(Permutation::identity(degree));
        Level { base, gens: Vec::new(), orbit: vec![base], reps, inv_reps, checked: vec![0] }
    }

    /// Appends a generator and extends the basic orbit (existing
    /// representatives are never replaced).
    fn push_gen(&mut self, g: Permutation) {
        self.gens.push(g);
        let new = self.gens.len() - 1;
        let old_len = self.orbit.len();
        let mut k = 0;
        while k < self.orbit.len() {
            let beta = self.orbit[k];
            let range = if k < old_len { new..new + 1 } else { 0..self.gens.len() };
            for s in range {
                let gamma = self.gens[s].apply(beta);
                if self.reps[gamma].is_none() {
                    let rep = self.reps[beta].as_ref().unwrap().then(&self.gens[s]);
                    self.inv_reps[gamma] = Some(rep.inverse());
                    self.reps[gamma] = Some(rep);
                    self.orbit.push(gamma);
                    self.checked.push(0);
                }
            }
            k += 1;
        }
    }
}

/// A permutation group given by generators, with a complete stabilizer chain.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
    order: u128,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, GroupError> {
        if generators.is_empty() {
            return Err(GroupError::NoGenerators);
        }
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(GroupError::DegreeMismatch { expected: degree, found: g.degree() });
        }
        let levels = schreier_sims(degree, &generators);
        let mut order: u128 = 1;
        for l in &levels {
            order = order.checked_mul(l.orbit.len() as u128).ok_or(GroupError::OrderOverflow)?;
        }
        Ok(PermGroup { degree, generators, levels, order })
    }

    /// The trivial group of the given degree.
    pub fn trivial(degree: usize) -> Self {
        Self::new(degree, vec![Permutation::identity(degree)]).expect("identity generates")
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    #[inline]
    pub fn order(&self) -> u128 {
        self.order
    }

    /// Base points (0-based, strictly increasing).
    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Sizes of the basic orbits; their product is the order.
    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Strong generators of the stabilizer of the first `level` base points.
    pub fn strong_generators(&self, level: usize) -> &[Permutation] {
        &self.levels[level].gens
    }

    /// Membership test by sifting.
    pub fn contains(&self, g: &Permutation) -> Result<bool, GroupError> {
        if g.degree() != self.degree {
            return Err(GroupError::DegreeMismatch { expected: self.degree, found: g.degree() });
        }
        Ok(self.contains_unchecked(g))
    }

    /// Membership test without the degree check (panics on mismatch).
    pub fn contains_unchecked(&self, g: &Permutation) -> bool {
        let mut h = g.clone();
        let mut tmp = g.clone();
        for l in &self.levels {
            match &l.inv_reps[h.apply(l.base)] {
                Some(u) => {
                    h.then_into(u, &mut tmp);
                    core::mem::swap(&mut h, &mut tmp);
                }
                None => return false,
            }
        }
        h.is_identity()
    }

    /// True iff every generator of `other` lies in `self`.
    pub fn contains_group(&self, other: &PermGroup) -> bool {
        other.degree == self.degree && other.generators.iter().all(|g| self.contains_unchecked(g))
    }

    /// All elements, refusing when the order exceeds `cap`.
    pub fn elements(&self, cap: u128) -> Result<Elements<'_>, GroupError> {
        if self.order > cap {
            return Err(GroupError::CapExceeded { order: self.order, cap });
        }
        Ok(self.element_range(0..self.order))
    }

    /// Elements whose enumeration index lies in `range`.
    ///
    /// Index `i` is read in mixed radix over the basic orbit sizes, level 0
    /// least significant, and names the product of transversal elements from
    /// the deepest level to level 0. Disjoint ranges give disjoint element
    /// sets, so workers can split `0..order()` freely.
    pub fn element_range(&self, range: Range<u128>) -> Elements<'_> {
        let end = range.end.min(self.order);
        let start = range.start.min(end);
        Elements::new(self, start, end)
    }

    /// The element with enumeration index `index` (`index < order()`).
    pub fn element_at(&self, index: u128) -> Permutation {
        assert!(index < self.order, "element index out of range");
        let mut g = Permutation::identity(self.degree);
        let digits = self.digits(index);
        for (l, &d) in self.levels.iter().zip(digits.iter()).rev() {
            g = g.then(l.reps[l.orbit[d]].as_ref().unwrap());
        }
        g
    }

    fn digits(&self, mut index: u128) -> Vec<usize> {
        self.levels
            .iter()
            .map(|l| {
                let r = l.orbit.len() as u128;
                let d = (index % r) as usize;
                index /= r;
                d
            })
            .collect()
    }

    /// Orbits of the group on points, each sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(self.degree, &self.generators)
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbits().len() == 1
    }

    /// Pointwise stabilizer of `points`.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> PermGroup {
        // relabel so that `points` become 0..k, then read the chain off
        let k = points.len();
        let mut relabel = vec![usize::MAX; self.degree];
        for (i, &p) in points.iter().enumerate() {
            relabel[p] = i;
        }
        let mut next = k;
        for slot in relabel.iter_mut() {
            if *slot == usize::MAX {
                *slot = next;
                next += 1;
            }
        }
        let x = Permutation::from_images(relabel).expect("relabelling is a bijection");
        let gens: Vec<Permutation> = self.generators.iter().map(|g| g.conjugate_by(&x)).collect();
        let conj = PermGroup::new(self.degree, gens).expect("same degree");
        let stab_gens: Vec<Permutation> = match conj.levels.iter().position(|l| l.base >= k) {
            Some(lv) => conj.levels[lv].gens.clone(),
            None => Vec::new(),
        };
        let xinv = x.inverse();
        let mut gens: Vec<Permutation> = stab_gens.iter().map(|g| g.conjugate_by(&xinv)).collect();
        if gens.is_empty() {
            gens.push(Permutation::identity(self.degree));
        }
        PermGroup::new(self.degree, gens).expect("same degree")
    }
}

/// Orbits of the group generated by `gens`.
pub(crate) fn orbits_of(degree: usize, gens: &[Permutation]) -> Vec<Vec<usize>> {
    let mut label = vec![usize::MAX; degree];
    let mut out = Vec::new();
    for start in 0..degree {
        if label[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        label[start] = id;
        let mut orbit = vec![start];
        let mut k = 0;
        while k < orbit.len() {
            let x = orbit[k];
            for g in gens {
                let y = g.apply(x);
                if label[y] == usize::MAX {
                    label[y] = id;
                    orbit.push(y);
                }
            }
            k += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

fn schreier_sims(degree: usize, generators: &[Permutation]) -> Vec<Level> {
    let mut levels: Vec<Level> = (0..degree).map(|b| Level::new(degree, b)).collect();
    for g in generators.iter().filter(|g| !g.is_identity()) {
        let j = g.first_moved().unwrap();
        for l in levels.iter_mut().take(j + 1) {
            l.push_gen(g.clone());
        }
    }
    if degree == 0 {
        return Vec::new();
    }
    let mut i = degree as isize - 1;
    while i >= 0 {
        let iu = i as usize;
        match next_residue(&mut levels, iu) {
            Some(h) => {
                // h fixes every point below j and moves j
                let j = h.first_moved().expect("residue is not the identity");
                for l in levels.iter_mut().take(j + 1).skip(iu + 1) {
                    l.push_gen(h.clone());
                }
                i = j as isize;
            }
            None => i -= 1,
        }
    }
    levels.retain(|l| l.orbit.len() > 1);
    for l in &mut levels {
        l.checked = Vec::new();
    }
    levels
}

/// Finds an unchecked Schreier generator at level `i` that does not sift
/// through the levels below it.
fn next_residue(levels: &mut [Level], i: usize) -> Option<Permutation> {
    let (upper, lower) = levels.split_at_mut(i + 1);
    let level = &mut upper[i];
    for k in 0..level.orbit.len() {
        while level.checked[k] < level.gens.len() {
            let s = level.checked[k];
            level.checked[k] += 1;
            let beta = level.orbit[k];
            let gamma = level.gens[s].apply(beta);
            let h = level.reps[beta]
                .as_ref()
                .unwrap()
                .then(&level.gens[s])
                .then(level.inv_reps[gamma].as_ref().unwrap());
            if h.is_identity() {
                continue;
            }
            let mut r = h;
            let mut stuck = false;
            for l in lower.iter() {
                match &l.inv_reps[r.apply(l.base)] {
                    Some(u) => r = r.then(u),
                    None => {
                        stuck = true;
                        break;
                    }
                }
            }
            if stuck || !r.is_identity() {
                return Some(r);
            }
        }
    }
    None
}

/// Iterator over a contiguous range of element indices.
pub struct Elements<'a> {
    group: &'a PermGroup,
    next: u128,
    end: u128,
    digits: Vec<usize>,
    /// `prefix[i]` is the product of the chosen transversal elements of
    /// levels `i..`; `prefix[len]` is the identity.
    prefix: Vec<Permutation>,
}

impl<'a> Elements<'a> {
    fn new(group: &'a PermGroup, start: u128, end: u128) -> Self {
        let k = group.levels.len();
        let mut digits = if start < group.order { group.digits(start) } else { vec![0; k] };
        if k == 0 {
            digits.clear();
        }
        let mut prefix = vec![Permutation::identity(group.degree); k + 1];
        let mut it = Elements { group, next: start, end, digits, prefix: Vec::new() };
        for lv in (0..k).rev() {
            prefix[lv] = prefix[lv + 1].then(it.rep(lv));
        }
        it.prefix = prefix;
        it
    }

    #[inline]
    fn rep(&self, lv: usize) -> &Permutation {
        let l = &self.group.levels[lv];
        l.reps[l.orbit[self.digits[lv]]].as_ref().unwrap()
    }

    /// Calls `f` on each remaining element without allocating per element.
    pub fn for_each_ref<F: FnMut(&Permutation)>(mut self, mut f: F) {
        while self.next < self.end {
            f(&self.prefix[0]);
            self.advance();
        }
    }

    fn advance(&mut self) {
        self.next += 1;
        let k = self.digits.len();
        if self.next >= self.end || k == 0 {
            return;
        }
        let mut lv = 0;
        while lv < k {
            self.digits[lv] += 1;
            if self.digits[lv] < self.group.levels[lv].orbit.len() {
                break;
            }
            self.digits[lv] = 0;
            lv += 1;
        }
        for j in (0..=lv.min(k - 1)).rev() {
            let (lo, hi) = self.prefix.split_at_mut(j + 1);
            let l = &self.group.levels[j];
            let rep = l.reps[l.orbit[self.digits[j]]].as_ref().unwrap();
            hi[0].then_into(rep, &mut lo[j]);
        }
    }
}

impl Iterator for Elements<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.next >= self.end {
            return None;
        }
        let out = self.prefix[0].clone();
        self.advance();
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.end - self.next) as usize;
        (n, Some(n))
    }
}

/// Naive breadth-first closure; only sensible for small groups. Used as an
/// oracle in tests and by callers that want to double-check a chain.
pub fn naive_closure(degree: usize, gens: &[Permutation], limit: usize) -> Option<Vec<Permutation>> {
    use alloc::collections::BTreeSet;
    let id = Permutation::identity(degree);
    let mut seen: BTreeSet<Vec<Point>> = BTreeSet::new();
    seen.insert(id.images().to_vec());
    let mut out = vec![id];
    let mut k = 0;
    while k < out.len() {
        for g in gens {
            let h = out[k].then(g);
            if seen.insert(h.images().to_vec()) {
                if out.len() >= limit {
                    return None;
                }
                out.push(h);
            }
        }
        k += 1;
    }
    Some(out)
}
