//! Block systems, primitivity, block actions and derived series.
//!
//! Block kernels and block stabilizers are computed exactly: the group is
//! made to act on the points together with the blocks, and the stabilizer of
//! the block points is read from a stabilizer chain of that action.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::group::PermGroup;
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlockError {
    NotTransitive,
    NotInvariant,
    InvalidPartition(String),
    SamePoint,
    BlockIndexOutOfRange { index: usize, blocks: usize },
}

impl fmt::Display for BlockError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockError::NotTransitive => f.write_str("group is not transitive"),
            BlockError::NotInvariant => f.write_str("partition is not invariant under the group"),
            BlockError::InvalidPartition(why) => write!(f, "invalid partition: {why}"),
            BlockError::SamePoint => f.write_str("the two points must differ"),
            BlockError::BlockIndexOutOfRange { index, blocks } => {
                write!(f, "block index {index} out of range (system has {blocks} blocks)")
            }
        }
    }
}

impl core::error::Error for BlockError {}

/// A partition of `{0, .., n-1}` into `r` blocks of equal size `s`.
///
/// Blocks are sorted internally and ordered by their least point.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockSystem {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl BlockSystem {
    pub fn new(degree: usize, blocks: Vec<Vec<usize>>) -> Result<Self, BlockError> {
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        if blocks.iter().any(|b| b.is_empty()) {
            return Err(BlockError::InvalidPartition("empty block".into()));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        let s = blocks.first().map_or(0, |b| b.len());
        if blocks.iter().any(|b| b.len() != s) {
            return Err(BlockError::InvalidPartition("blocks of unequal size".into()));
        }
        let mut block_of = vec![usize::MAX; degree];
        for (k, b) in blocks.iter().enumerate() {
            for &x in b {
                if x >= degree || block_of[x] != usize::MAX {
                    return Err(BlockError::InvalidPartition("blocks overlap or leave the domain".into()));
                }
                block_of[x] = k;
            }
        }
        if block_of.contains(&usize::MAX) {
            return Err(BlockError::InvalidPartition("blocks do not cover every point".into()));
        }
        Ok(BlockSystem { blocks, block_of })
    }

    fn from_labels(labels: &[usize]) -> Self {
        let mut first_seen: Vec<(usize, usize)> = Vec::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (x, &l) in labels.iter().enumerate() {
            match first_seen.iter().find(|(lab, _)| *lab == l) {
                Some(&(_, k)) => blocks[k].push(x),
                None => {
                    first_seen.push((l, blocks.len()));
                    blocks.push(vec![x]);
                }
            }
        }
        BlockSystem::new(labels.len(), blocks).expect("labels give an equal-size partition")
    }

    pub fn degree(&self) -> usize {
        self.block_of.len()
    }

    /// Number of blocks.
    pub fn r(&self) -> usize {
        self.blocks.len()
    }

    /// Block size.
    pub fn s(&self) -> usize {
        self.blocks[0].len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    pub fn is_trivial(&self) -> bool {
        self.r() == 1 || self.s() == 1
    }

    /// True iff every permutation maps blocks onto blocks.
    pub fn is_invariant_under(&self, gens: &[Permutation]) -> bool {
        gens.iter().all(|g| {
            self.blocks.iter().all(|b| {
                let target = self.block_of[g.apply(b[0])];
                b.iter().all(|&x| self.block_of[g.apply(x)] == target)
            })
        })
    }

    /// The permutation `g` induces on the blocks (assumes invariance).
    pub fn induced(&self, g: &Permutation) -> Permutation {
        let imgs = self.blocks.iter().map(|b| self.block_of[g.apply(b[0])]).collect();
        Permutation::from_images(imgs).expect("invariant partition")
    }

    /// True iff every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &BlockSystem) -> bool {
        self.blocks.iter().all(|b| b.iter().all(|&x| other.block_of[x] == other.block_of[b[0]]))
    }
}

/// Result of [`minimal_block_containing`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinimalBlock {
    System(BlockSystem),
    /// The only invariant partition joining the two points is the single block.
    Trivial,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn require_transitive(g: &PermGroup) -> Result<(), BlockError> {
    if g.is_transitive() {
        Ok(())
    } else {
        Err(BlockError::NotTransitive)
    }
}

/// The finest invariant partition in which `a` and `b` share a block.
///
/// Union-find closure: whenever two classes merge through a pair `(x, y)`,
/// the images `(x^g, y^g)` must merge too.
pub fn minimal_block_containing(g: &PermGroup, a: usize, b: usize) -> Result<MinimalBlock, BlockError> {
    require_transitive(g)?;
    if a == b {
        return Err(BlockError::SamePoint);
    }
    let n = g.degree();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut queue = vec![(a, b)];
    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
    parent[ra.max(rb)] = ra.min(rb);
    while let Some((x, y)) = queue.pop() {
        for gen in g.generators() {
            let u = find(&mut parent, gen.apply(x));
            let v = find(&mut parent, gen.apply(y));
            if u != v {
                parent[u.max(v)] = u.min(v);
                queue.push((u, v));
            }
        }
    }
    let labels: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
    let system = BlockSystem::from_labels(&labels);
    if system.r() == 1 {
        Ok(MinimalBlock::Trivial)
    } else {
        Ok(MinimalBlock::System(system))
    }
}

/// Every minimal nontrivial block system, each once, sorted.
pub fn all_minimal_block_systems(g: &PermGroup) -> Result<Vec<BlockSystem>, BlockError> {
    require_transitive(g)?;
    let mut found: BTreeSet<BlockSystem> = BTreeSet::new();
    for b in 1..g.degree() {
        if let MinimalBlock::System(sys) = minimal_block_containing(g, 0, b)? {
            found.insert(sys);
        }
    }
    let all: Vec<BlockSystem> = found.into_iter().collect();
    Ok(all
        .iter()
        .filter(|p| !all.iter().any(|q| q != *p && q.refines(p)))
        .cloned()
        .collect())
}

pub fn is_primitive(g: &PermGroup) -> Result<bool, BlockError> {
    require_transitive(g)?;
    for b in 1..g.degree() {
        if let MinimalBlock::System(_) = minimal_block_containing(g, 0, b)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_invariant(g: &PermGroup, sys: &BlockSystem) -> Result<(), BlockError> {
    if sys.degree() != g.degree() || !sys.is_invariant_under(g.generators()) {
        return Err(BlockError::NotInvariant);
    }
    Ok(())
}

/// The induced action on blocks together with the system it was taken from.
#[derive(Clone, Debug)]
pub struct BlockAction {
    pub system: BlockSystem,
    /// The permutation group induced on the `r` blocks.
    pub image: PermGroup,
}

impl BlockAction {
    /// True iff `p` fixes every block setwise.
    pub fn in_kernel(&self, p: &Permutation) -> bool {
        self.system.blocks().iter().enumerate().all(|(k, b)| self.system.block_of(p.apply(b[0])) == k)
    }
}

pub fn block_action(g: &PermGroup, sys: &BlockSystem) -> Result<BlockAction, BlockError> {
    check_invariant(g, sys)?;
    let gens = g.generators().iter().map(|x| sys.induced(x)).collect();
    let image = PermGroup::new(sys.r(), gens).expect("induced permutations share a degree");
    Ok(BlockAction { system: sys.clone(), image })
}

/// The action on blocks (points `0..r`) and points (`r..r+n`) combined.
fn combined_action(g: &PermGroup, sys: &BlockSystem) -> PermGroup {
    let (n, r) = (g.degree(), sys.r());
    let gens = g
        .generators()
        .iter()
        .map(|x| {
            let on_blocks = sys.induced(x);
            let imgs: Vec<usize> = (0..r)
                .map(|k| on_blocks.apply(k))
                .chain((0..n).map(|p| r + x.apply(p)))
                .collect();
            Permutation::from_images(imgs).expect("combined action is a bijection")
        })
        .collect();
    PermGroup::new(n + r, gens).expect("uniform degree")
}

fn drop_block_points(h: &PermGroup, r: usize, n: usize) -> PermGroup {
    let gens = h
        .generators()
        .iter()
        .map(|x| Permutation::from_images((0..n).map(|p| x.apply(r + p) - r).collect()).expect("restriction"))
        .collect();
    PermGroup::new(n, gens).expect("uniform degree")
}

/// The block kernel `K` (elements fixing every block setwise), exactly.
pub fn block_kernel(g: &PermGroup, sys: &BlockSystem) -> Result<PermGroup, BlockError> {
    check_invariant(g, sys)?;
    let r = sys.r();
    let comb = combined_action(g, sys);
    let blocks: Vec<usize> = (0..r).collect();
    Ok(drop_block_points(&comb.pointwise_stabilizer(&blocks), r, g.degree()))
}

/// Setwise stabilizer of block `index`.
pub fn block_stabilizer(g: &PermGroup, sys: &BlockSystem, index: usize) -> Result<PermGroup, BlockError> {
    check_invariant(g, sys)?;
    if index >= sys.r() {
        return Err(BlockError::BlockIndexOutOfRange { index, blocks: sys.r() });
    }
    let comb = combined_action(g, sys);
    Ok(drop_block_points(&comb.pointwise_stabilizer(&[index]), sys.r(), g.degree()))
}

/// The group induced on one block (points renumbered `0..s` in increasing
/// order) by a group stabilizing that block.
fn restrict_to_block(h: &PermGroup, block: &[usize]) -> PermGroup {
    let local = |x: usize| block.binary_search(&x).expect("block is stabilized");
    let gens = h
        .generators()
        .iter()
        .map(|g| Permutation::from_images(block.iter().map(|&x| local(g.apply(x))).collect()).expect("restriction"))
        .collect();
    PermGroup::new(block.len(), gens).expect("uniform degree")
}

/// The constituent of the block kernel on block `index`: the group `K`
/// induces on that block.
pub fn block_constituent(g: &PermGroup, sys: &BlockSystem, index: usize) -> Result<PermGroup, BlockError> {
    if index >= sys.r() {
        return Err(BlockError::BlockIndexOutOfRange { index, blocks: sys.r() });
    }
    let k = block_kernel(g, sys)?;
    Ok(restrict_to_block(&k, &sys.blocks()[index]))
}

/// The group induced on block `index` by its setwise stabilizer. Contains
/// [`block_constituent`].
pub fn block_stabilizer_constituent(g: &PermGroup, sys: &BlockSystem, index: usize) -> Result<PermGroup, BlockError> {
    let st = block_stabilizer(g, sys, index)?;
    Ok(restrict_to_block(&st, &sys.blocks()[index]))
}

fn commutator(a: &Permutation, b: &Permutation) -> Permutation {
    a.inverse().then(&b.inverse()).then(a).then(b)
}

/// Smallest normal subgroup of `g` containing `seeds`.
///
/// A candidate is kept as a generator only when it enlarges the group built
/// so far, so the generating set stays no longer than a subgroup chain.
pub fn normal_closure(g: &PermGroup, seeds: Vec<Permutation>) -> PermGroup {
    let n = g.degree();
    let mut kept: Vec<Permutation> = Vec::new();
    let mut h = PermGroup::trivial(n);
    let mut queue: VecDeque<Permutation> = seeds.into_iter().collect();
    while let Some(c) = queue.pop_front() {
        if h.contains_unchecked(&c) {
            continue;
        }
        queue.extend(g.generators().iter().map(|x| c.conjugate_by(x)));
        kept.push(c);
        h = PermGroup::new(n, kept.clone()).expect("uniform degree");
    }
    h
}

/// `[G, G]`: normal closure of the commutators of generator pairs.
pub fn commutator_subgroup(g: &PermGroup) -> PermGroup {
    let gens = g.generators();
    let mut seeds = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            seeds.push(commutator(a, b));
        }
    }
    normal_closure(g, seeds)
}

/// Orders of the derived series, starting with `|G|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedSeries {
    pub orders: Vec<u128>,
    pub solvable: bool,
}

/// Stops at the trivial group (solvable) or at the first term equal to its
/// predecessor (a perfect group, not solvable).
pub fn derived_series(g: &PermGroup) -> DerivedSeries {
    let mut orders = vec![g.order()];
    let mut cur = g.clone();
    while cur.order() > 1 {
        let next = commutator_subgroup(&cur);
        orders.push(next.order());
        if next.order() == cur.order() {
            return DerivedSeries { orders, solvable: false };
        }
        cur = next;
    }
    DerivedSeries { orders, solvable: true }
}
