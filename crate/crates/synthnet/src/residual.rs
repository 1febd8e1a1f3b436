//! Residual-degree distribution with snapshot-based weighted sampling.
//!
//! Nodes are sampled proportionally to their residual degree (the number of
//! edge endpoints they are still owed). Rebuilding the sampling table after
//! every mutation would dominate runtime on large graphs, so the table is a
//! *snapshot*: it is rebuilt only after `step` samples have been drawn from
//! it. Between snapshots, samples follow the frozen weights even
//! though the underlying residual degrees keep changing; `step = 1` recovers
//! exact always-fresh sampling. Callers that switch sampling regimes (for
//! example flipping the unit floor between phases) should force a fresh
//! [`ResidualDist::snapshot`] at the boundary.
//!
//! # Representations
//!
//! A snapshot draw is `P(v) = weight(v) / total` over the frozen weights,
//! served by a Walker alias table. What the table ranges over depends on the
//! degree sequence:
//!
//! * **Weight classes** (the common case): all nodes sharing a frozen weight
//!   are interchangeable, so the alias table ranges over the distinct weight
//!   values — at most the maximum initial degree — with class `c` carrying
//!   mass `c * |class c|`. A draw picks a class through the table and then a
//!   member uniformly, which is exactly `weight / total` per node. Class
//!   membership is maintained incrementally: decrements queue their node and
//!   the moves are applied at the next snapshot, so a refresh costs
//!   O(changed nodes + classes) instead of O(n). That difference dominates
//!   end-to-end generation time at millions of nodes.
//! * **Per-node table**: when degrees are so large that a class array would
//!   outgrow the node count (or the 2^16 cap), the table ranges over nodes
//!   directly and every refresh reconstructs it in O(n) — compact eight-byte
//!   buckets while the total weight fits `u32`, wide sixteen-byte buckets
//!   beyond that.

use crate::error::Error;
use crate::graph::NodeId;
use crate::Result;
use rand::Rng;

/// Largest class array the class representation will allocate.
const CLASS_LIMIT: u32 = 1 << 16;

/// Compact alias-table bucket: fits eight to a cache line. Usable whenever
/// the snapshot's total weight fits `u32`, which covers every realistic
/// degree sequence; final cutoffs never exceed the total.
#[derive(Debug, Clone, Copy, Default)]
struct Slot32 {
    cutoff: u32,
    alias: NodeId,
}

/// Wide alias-table bucket for snapshots whose total weight overflows
/// `u32`. Sixteen-aligned so a draw still touches a single cache line.
#[derive(Debug, Clone, Copy)]
#[repr(align(16))]
struct Slot {
    cutoff: u64,
    alias: NodeId,
}

#[derive(Debug, Clone)]
pub struct ResidualDist {
    rd: Vec<u32>,
    /// Which representation this instance uses (fixed at construction):
    /// class-based when the maximum initial weight stays below both the node
    /// count (so a refresh is never costlier than the per-node table) and
    /// [`CLASS_LIMIT`]; per-node otherwise.
    class_mode: bool,

    // -- Class representation ------------------------------------------
    /// `members[c]` lists the nodes whose *frozen* weight is `c`; nodes with
    /// weight zero appear nowhere. `class_alias` is the Walker table over
    /// classes, bucket `c` carrying mass `c * members[c].len()`.
    members: Vec<Vec<NodeId>>,
    class_alias: Vec<Slot>,
    /// Node -> (class, index within `members[class]`); class 0 means not a
    /// member. Lets a queued move run in O(1) via swap-remove.
    pos: Vec<(u32, u32)>,
    /// Nodes decremented since the last snapshot; their membership moves are
    /// deferred to the next refresh so the snapshot stays frozen. Duplicates
    /// are fine — moves are idempotent.
    pending: Vec<NodeId>,
    /// Floor setting the current membership was built under, to detect that
    /// a snapshot must recount everything rather than replay `pending`.
    floor_at_build: bool,

    // -- Per-node representation ----------------------------------------
    /// Walker alias table over nodes. Bucket `j` covers `total` units of
    /// probability mass: draws below bucket `j`'s cutoff yield `j` itself,
    /// the rest yield its alias. Compact eight-byte buckets while the total
    /// weight fits `u32` (`compact` says so), wide buckets beyond.
    table32: Vec<Slot32>,
    wide: Vec<Slot>,
    compact: bool,

    total: u64,
    /// Number of nodes with positive weight in the snapshot.
    positive: usize,
    /// Live aggregates maintained by the decrement methods so a rebuild
    /// never needs a summing pass: `sum_rd` is the sum of all residual
    /// degrees and `nonzero` counts nodes with a positive residual.
    sum_rd: u64,
    nonzero: u64,
    samples_since_snapshot: u64,
    step: u64,
    /// When set, snapshot weights are `max(rd, 1)` instead of `rd`, keeping
    /// every node reachable even after its residual degree hits zero.
    unit_floor: bool,
    /// `buckets * total` when that fits in a `u64` (buckets = classes or
    /// nodes per the representation): lets one uniform draw supply both the
    /// bucket index and the cutoff roll. 0 means draw twice.
    packed_span: u64,
    /// Rebuild scratch, kept allocated between snapshots: the small-bucket
    /// work stack, the large-node stack carrying each live scaled leftover,
    /// and the wide/class paths' stack and scaled-weight buffer.
    small: Vec<NodeId>,
    large2: Vec<(NodeId, u64)>,
    large: Vec<NodeId>,
    scratch: Vec<u128>,
}

impl ResidualDist {
    /// Builds the distribution from an initial degree sequence and takes the
    /// first snapshot. A sequence summing to zero is allowed; sampling from
    /// it errors until weights appear (via `unit_floor`).
    pub fn new(degrees: &[u32], step: u64) -> Result<Self> {
        if step == 0 {
            return Err(Error::InvalidParameter("step must be >= 1".into()));
        }
        let sum_rd = degrees.iter().map(|&d| d as u64).sum();
        let nonzero = degrees.iter().filter(|&&d| d > 0).count() as u64;
        // Weights never rise above the initial (floored) maximum, so the
        // representation can be fixed now. Small inputs always take the
        // class path — a short class array costs nothing to rescan.
        let max_w = degrees.iter().copied().max().unwrap_or(0).max(1);
        let n = degrees.len();
        let class_mode = max_w <= CLASS_LIMIT && (max_w as usize) < n.max(64);
        let mut dist = ResidualDist {
            rd: degrees.to_vec(),
            class_mode,
            members: if class_mode {
                vec![Vec::new(); max_w as usize + 1]
            } else {
                Vec::new()
            },
            class_alias: Vec::new(),
            pos: if class_mode { vec![(0, 0); n] } else { Vec::new() },
            pending: Vec::new(),
            floor_at_build: false,
            table32: if class_mode {
                Vec::new()
            } else {
                vec![Slot32::default(); n]
            },
            wide: Vec::new(),
            compact: true,
            total: 0,
            positive: 0,
            sum_rd,
            nonzero,
            samples_since_snapshot: 0,
            step,
            unit_floor: false,
            packed_span: 0,
            small: Vec::new(),
            large2: Vec::new(),
            large: Vec::new(),
            scratch: Vec::new(),
        };
        if class_mode {
            dist.recount_classes();
        }
        dist.rebuild_table();
        Ok(dist)
    }

    pub fn len(&self) -> usize {
        self.rd.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rd.is_empty()
    }

    pub fn step(&self) -> u64 {
        self.step
    }

    pub fn samples_since_snapshot(&self) -> u64 {
        self.samples_since_snapshot
    }

    /// Current residual degree of `v` (not the snapshot weight).
    ///
    /// Panics if `v` is out of range.
    pub fn residual(&self, v: NodeId) -> u64 {
        self.rd[v as usize] as u64
    }

    pub fn residuals(&self) -> &[u32] {
        &self.rd
    }

    /// Nodes with positive weight in the current snapshot.
    pub fn positive_support(&self) -> usize {
        self.positive
    }

    /// Switches between plain weights (`rd`) and unit-floored weights
    /// (`max(rd, 1)`). Takes effect at the next snapshot.
    pub fn set_unit_floor(&mut self, on: bool) {
        self.unit_floor = on;
    }

    /// Effective frozen weight of residual `r` under the current floor.
    /// `max(r, floor as u32)` is `max(r, 1)` with the unit floor on and a
    /// plain `r` with it off, keeping the per-node loops branch-free.
    #[inline]
    fn weight_of(&self, r: u32) -> u32 {
        r.max(self.unit_floor as u32)
    }

    /// Rebuilds class membership from scratch: O(n + classes). Needed at
    /// construction and whenever the floor flips, which remaps every
    /// zero-residual node at once.
    fn recount_classes(&mut self) {
        for list in &mut self.members {
            list.clear();
        }
        for i in 0..self.rd.len() {
            let c = self.weight_of(self.rd[i]);
            if c != 0 {
                self.pos[i] = (c, self.members[c as usize].len() as u32);
                self.members[c as usize].push(i as NodeId);
            } else {
                self.pos[i] = (0, 0);
            }
        }
        self.pending.clear();
        self.floor_at_build = self.unit_floor;
    }

    /// Moves one node to the class matching its current residual. Idempotent
    /// and O(1) via swap-remove, so replaying a queue with duplicates is fine.
    fn move_node(&mut self, v: NodeId) {
        let new_c = self.weight_of(self.rd[v as usize]);
        let (old_c, old_i) = self.pos[v as usize];
        if old_c == new_c {
            return;
        }
        if old_c != 0 {
            let list = &mut self.members[old_c as usize];
            list.swap_remove(old_i as usize);
            if let Some(&moved) = list.get(old_i as usize) {
                self.pos[moved as usize].1 = old_i;
            }
        }
        if new_c != 0 {
            let list = &mut self.members[new_c as usize];
            self.pos[v as usize] = (new_c, list.len() as u32);
            list.push(v);
        } else {
            self.pos[v as usize] = (0, 0);
        }
    }

    /// Brings class membership up to date with the live residuals: replays
    /// the queued moves, or recounts everything after a floor flip.
    fn refresh_classes(&mut self) {
        if self.unit_floor != self.floor_at_build {
            self.recount_classes();
            return;
        }
        let pending = std::mem::take(&mut self.pending);
        for &v in &pending {
            self.move_node(v);
        }
        self.pending = pending;
        self.pending.clear();
    }

    /// Walker alias construction over classes: bucket `c` carries mass
    /// `c * members[c].len()`. Same two-stack scheme as the per-node tables,
    /// in u128 since scaled class masses can overflow u64; the table is tiny,
    /// so the wider arithmetic costs nothing.
    fn rebuild_class_alias(&mut self) {
        let nc = self.members.len();
        self.packed_span = (nc as u128 * self.total as u128).try_into().unwrap_or(0);
        if self.class_alias.len() != nc {
            self.class_alias = vec![Slot { cutoff: 0, alias: 0 }; nc];
        }
        let w = self.total as u128;
        self.scratch.clear();
        self.scratch.extend(
            self.members
                .iter()
                .enumerate()
                .map(|(c, list)| c as u128 * list.len() as u128 * nc as u128),
        );
        self.small.clear();
        self.large.clear();
        for c in 0..nc {
            if self.scratch[c] < w {
                self.small.push(c as NodeId);
            } else {
                self.large.push(c as NodeId);
            }
        }
        while let (Some(&s), Some(&l)) = (self.small.last(), self.large.last()) {
            self.small.pop();
            let (s, li) = (s as usize, l as usize);
            self.class_alias[s] = Slot {
                cutoff: self.scratch[s] as u64,
                alias: l,
            };
            self.scratch[li] -= w - self.scratch[s];
            if self.scratch[li] < w {
                self.large.pop();
                self.small.push(l);
            }
        }
        // With exact integer mass the leftovers fill whole buckets.
        for stack in [&mut self.large, &mut self.small] {
            while let Some(c) = stack.pop() {
                self.class_alias[c as usize] = Slot {
                    cutoff: self.total,
                    alias: c,
                };
            }
        }
    }

    fn rebuild_table(&mut self) {
        let n = self.rd.len();
        let floor_w = self.unit_floor as u32;
        // The aggregates maintained by the decrement methods make the totals
        // O(1): flooring lifts exactly the zero-residual nodes to weight 1.
        let total = self.sum_rd + floor_w as u64 * (n as u64 - self.nonzero);
        self.total = total;
        self.positive = if self.unit_floor { n } else { self.nonzero as usize };
        self.samples_since_snapshot = 0;
        if self.class_mode {
            // Membership must track the live residuals even when the total
            // hits zero, so the next refresh starts from a consistent state.
            self.refresh_classes();
            if total == 0 {
                self.packed_span = 0;
                return;
            }
            self.rebuild_class_alias();
            return;
        }

        self.packed_span = (n as u128 * total as u128).try_into().unwrap_or(0);
        self.compact = total <= u32::MAX as u64;
        if total == 0 {
            return;
        }

        // Standard two-stack alias construction over integer weights scaled
        // by n, so bucket capacity is exactly `total` and no precision is
        // lost: P(i) comes out to weight(i) / total identically.
        self.small.clear();
        if self.compact {
            // Every *final* cutoff is at most `total`, so it fits u32; only
            // the interim leftover of a still-large node can exceed it, and
            // that value rides in the work stack instead of the table. (The
            // scaled weights themselves stay in u64: each is at most
            // total * n, which fits because total does.) A small node's
            // cutoff is final the moment it is classified, so the whole
            // rebuild is one streaming pass plus one stack-ordered touch
            // per demoted node — this pass is what a snapshot refresh costs
            // at scale, so it stays lean.
            self.large2.clear();
            let nt = n as u64;
            for i in 0..n {
                let w = self.rd[i].max(floor_w) as u64 * nt;
                if w < total {
                    self.table32[i].cutoff = w as u32;
                    self.small.push(i as NodeId);
                } else {
                    self.large2.push((i as NodeId, w));
                }
            }
            while let (Some(&s), Some(&(l, l_left))) = (self.small.last(), self.large2.last()) {
                self.small.pop();
                let si = s as usize;
                self.table32[si].alias = l;
                let leftover = l_left - (total - self.table32[si].cutoff as u64);
                if leftover < total {
                    self.large2.pop();
                    self.table32[l as usize].cutoff = leftover as u32;
                    self.small.push(l);
                } else {
                    self.large2.last_mut().expect("peeked above").1 = leftover;
                }
            }
            // With exact integer mass the leftovers fill whole buckets.
            while let Some((l, _)) = self.large2.pop() {
                self.table32[l as usize] = Slot32 {
                    cutoff: total as u32,
                    alias: l,
                };
            }
            while let Some(s) = self.small.pop() {
                self.table32[s as usize] = Slot32 {
                    cutoff: total as u32,
                    alias: s,
                };
            }
        } else {
            // Totals past u32 are rare; run the same construction through
            // wide slots, with scaled weights in u128 since they may
            // overflow u64.
            if self.wide.len() != n {
                self.wide = vec![Slot { cutoff: 0, alias: 0 }; n];
            }
            let w = total as u128;
            self.scratch.clear();
            self.scratch
                .extend(self.rd.iter().map(|&r| r.max(floor_w) as u128 * n as u128));
            self.large.clear();
            for i in 0..n {
                if self.scratch[i] < w {
                    self.small.push(i as NodeId);
                } else {
                    self.large.push(i as NodeId);
                }
            }
            while let (Some(&s), Some(&l)) = (self.small.last(), self.large.last()) {
                self.small.pop();
                let (s, li) = (s as usize, l as usize);
                self.wide[s] = Slot {
                    cutoff: self.scratch[s] as u64,
                    alias: l,
                };
                self.scratch[li] -= w - self.scratch[s];
                if self.scratch[li] < w {
                    self.large.pop();
                    self.small.push(l);
                }
            }
            for stack in [&mut self.large, &mut self.small] {
                while let Some(i) = stack.pop() {
                    self.wide[i as usize] = Slot {
                        cutoff: total,
                        alias: i,
                    };
                }
            }
        }
    }

    /// Rebuilds the snapshot from the current residual degrees. Errors if
    /// every weight is zero.
    pub fn snapshot(&mut self) -> Result<()> {
        self.rebuild_table();
        if self.total == 0 {
            return Err(Error::Exhausted { needed: 1 });
        }
        Ok(())
    }

    /// Maps a bucket index and cutoff roll to the sampled node. Zero-weight
    /// nodes have cutoff 0 and always defer to their alias, so they can
    /// never be hit.
    #[inline]
    fn resolve(&self, j: usize, r: u64) -> NodeId {
        if self.compact {
            let slot = self.table32[j];
            if r < slot.cutoff as u64 {
                j as NodeId
            } else {
                slot.alias
            }
        } else {
            let slot = self.wide[j];
            if r < slot.cutoff {
                j as NodeId
            } else {
                slot.alias
            }
        }
    }

    #[inline]
    fn draw_one<R: Rng + ?Sized>(&self, rng: &mut R) -> NodeId {
        let (j, r) = if self.packed_span > 0 {
            let x = rng.random_range(0..self.packed_span);
            ((x / self.total) as usize, x % self.total)
        } else {
            (
                rng.random_range(0..self.rd.len()),
                rng.random_range(0..self.total),
            )
        };
        self.resolve(j, r)
    }

    /// Fills `out` with `out.len()` *distinct* nodes drawn from the snapshot
    /// weights. Counts as one sample toward the snapshot refresh schedule.
    ///
    /// Distinctness is enforced by rejection. If `10 * k * step` consecutive
    /// rejections pile up (a sign the snapshot has drifted far from the live
    /// weights), an early snapshot is forced; if even the fresh distribution
    /// cannot supply `k` distinct positive-weight nodes, this errors with
    /// [`Error::Exhausted`].
    pub fn sample_distinct<R: Rng + ?Sized>(&mut self, out: &mut [NodeId], rng: &mut R) -> Result<()> {
        let k = out.len();
        debug_assert!(k >= 1, "sample_distinct needs at least one slot");
        if self.samples_since_snapshot >= self.step || self.total == 0 {
            self.rebuild_table();
        }
        if self.total == 0 || self.positive < k {
            return Err(Error::Exhausted { needed: k });
        }
        self.samples_since_snapshot += 1;
        let cap = 10 * k as u64 * self.step;
        let mut rejections = 0u64;
        let mut filled = 0usize;
        // Hot path: draw every slot's random value up front, then resolve
        // the buckets together so their (usually cache-missing) table reads
        // overlap instead of serializing. The draw sequence, acceptance
        // order, and rejection counting are identical to the loop below —
        // and the duplicates possible here (at most k - 1 < cap) can never
        // trigger the early-refresh path mid-batch.
        if self.packed_span > 0 && k <= 4 {
            let mut j = [0usize; 4];
            let mut r = [0u64; 4];
            for i in 0..k {
                let x = rng.random_range(0..self.packed_span);
                j[i] = (x / self.total) as usize;
                r[i] = x % self.total;
            }
            for i in 0..k {
                let id = self.resolve(j[i], r[i]);
                if out[..filled].contains(&id) {
                    rejections += 1;
                } else {
                    out[filled] = id;
                    filled += 1;
                }
            }
        }
        while filled < k {
            let id = self.draw_one(rng);
            if out[..filled].contains(&id) {
                rejections += 1;
                if rejections >= cap {
                    self.rebuild_table();
                    if self.total == 0 || self.positive < k {
                        return Err(Error::Exhausted { needed: k });
                    }
                    // Slots already filled keep their picks; only the
                    // remaining draws use the refreshed table.
                    rejections = 0;
                }
                continue;
            }
            out[filled] = id;
            filled += 1;
        }
        Ok(())
    }

    #[inline]
    fn check(&self, v: NodeId) -> Result<()> {
        if (v as usize) < self.rd.len() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange {
                id: v as u64,
                nodes: self.rd.len(),
            })
        }
    }

    /// Plain decrement; errors if the residual degree is already zero.
    pub fn decrement(&mut self, v: NodeId) -> Result<()> {
        self.check(v)?;
        let r = &mut self.rd[v as usize];
        if *r == 0 {
            return Err(Error::ResidualUnderflow(v));
        }
        *r -= 1;
        self.sum_rd -= 1;
        self.nonzero -= (*r == 0) as u64;
        Ok(())
    }

    /// Attenuated decrement: applies only if the result stays >= 1, so a
    /// node's weight never drains completely.
    pub fn decrement_attenuated(&mut self, v: NodeId) -> Result<()> {
        self.check(v)?;
        let r = &mut self.rd[v as usize];
        if *r > 1 {
            *r -= 1;
            self.sum_rd -= 1;
        }
        Ok(())
    }

    /// Guarded decrement: applies only if the residual degree is >= 1; a
    /// zero stays zero instead of underflowing.
    pub fn decrement_saturating(&mut self, v: NodeId) -> Result<()> {
        self.check(v)?;
        let r = &mut self.rd[v as usize];
        if *r >= 1 {
            *r -= 1;
            self.sum_rd -= 1;
            self.nonzero -= (*r == 0) as u64;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_weight_nodes_are_never_returned() {
        let mut dist = ResidualDist::new(&[5, 0, 7, 0, 2], 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut pair = [0u32; 2];
        for _ in 0..2000 {
            dist.sample_distinct(&mut pair, &mut rng).unwrap();
            for &v in &pair {
                assert!(v == 0 || v == 2 || v == 4, "sampled zero-weight node {v}");
            }
        }
    }

    #[test]
    fn exhausted_when_support_is_too_small() {
        // Three positive-weight nodes: triples work, quadruples cannot.
        let mut dist = ResidualDist::new(&[3, 1, 0, 2], 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut triple = [0u32; 3];
        dist.sample_distinct(&mut triple, &mut rng).unwrap();
        let mut quad = [0u32; 4];
        match dist.sample_distinct(&mut quad, &mut rng) {
            Err(Error::Exhausted { needed: 4 }) => {}
            other => panic!("expected exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn snapshot_errors_on_all_zero_weights() {
        let mut dist = ResidualDist::new(&[0, 0, 0], 4).unwrap();
        assert!(matches!(dist.snapshot(), Err(Error::Exhausted { .. })));
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut pair = [0u32; 2];
        assert!(matches!(
            dist.sample_distinct(&mut pair, &mut rng),
            Err(Error::Exhausted { needed: 2 })
        ));
    }

    #[test]
    fn snapshot_weights_stay_frozen_until_step_boundary() {
        // Only node 1 has weight in the snapshot. Draining it right away
        // changes nothing until the step boundary refreshes the table.
        let mut dist = ResidualDist::new(&[0, 1], 4).unwrap();
        dist.decrement(1).unwrap();
        assert_eq!(dist.residual(1), 0);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut one = [0u32; 1];
        for i in 1..=4 {
            dist.sample_distinct(&mut one, &mut rng).unwrap();
            assert_eq!(one[0], 1, "stale snapshot should still offer node 1");
            assert_eq!(dist.samples_since_snapshot(), i);
        }
        // The fifth call crosses the boundary, refreshes, and finds nothing.
        assert!(matches!(
            dist.sample_distinct(&mut one, &mut rng),
            Err(Error::Exhausted { needed: 1 })
        ));
    }

    #[test]
    fn step_one_is_always_fresh() {
        let mut dist = ResidualDist::new(&[2, 2], 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut one = [0u32; 1];
        dist.sample_distinct(&mut one, &mut rng).unwrap();
        // Drain node 0; every later call refreshes first (step = 1), so only
        // node 1 can come back.
        dist.decrement(0).unwrap();
        dist.decrement(0).unwrap();
        for _ in 0..20 {
            dist.sample_distinct(&mut one, &mut rng).unwrap();
            assert_eq!(one[0], 1);
        }
    }

    #[test]
    fn unit_floor_takes_effect_at_next_snapshot() {
        let mut dist = ResidualDist::new(&[0, 0, 3], 1).unwrap();
        dist.set_unit_floor(true);
        dist.snapshot().unwrap();
        assert_eq!(dist.positive_support(), 3);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut pair = [0u32; 2];
        let mut saw_zero_rd = false;
        for _ in 0..200 {
            dist.sample_distinct(&mut pair, &mut rng).unwrap();
            saw_zero_rd |= pair.contains(&0) || pair.contains(&1);
        }
        assert!(saw_zero_rd, "floored weights must keep drained nodes reachable");
    }

    #[test]
    fn decrement_variants() {
        let mut dist = ResidualDist::new(&[2, 1, 0], 1).unwrap();
        dist.decrement(0).unwrap();
        assert_eq!(dist.residual(0), 1);
        assert!(matches!(
            dist.decrement(2),
            Err(Error::ResidualUnderflow(2))
        ));

        // Attenuated: 2 -> 1, then parked at 1.
        let mut att = ResidualDist::new(&[2], 1).unwrap();
        att.decrement_attenuated(0).unwrap();
        assert_eq!(att.residual(0), 1);
        att.decrement_attenuated(0).unwrap();
        assert_eq!(att.residual(0), 1);

        // Saturating: 1 -> 0, then parked at 0.
        let mut sat = ResidualDist::new(&[1], 1).unwrap();
        sat.decrement_saturating(0).unwrap();
        assert_eq!(sat.residual(0), 0);
        sat.decrement_saturating(0).unwrap();
        assert_eq!(sat.residual(0), 0);
    }

    #[test]
    fn out_of_range_decrement_errors() {
        let mut dist = ResidualDist::new(&[1, 1], 1).unwrap();
        assert!(matches!(
            dist.decrement(2),
            Err(Error::NodeOutOfRange { id: 2, nodes: 2 })
        ));
    }

    #[test]
    fn zero_step_is_rejected() {
        assert!(ResidualDist::new(&[1], 0).is_err());
    }

    /// Exact alias-table invariant: bucket `j` assigns `[0, cutoff)` to `j`
    /// and the rest to its alias, so the integer mass landing on node `i`
    /// across all buckets must come out to exactly `weight(i) * n`,
    /// whichever slot representation the snapshot picked.
    fn assert_alias_mass_exact(dist: &ResidualDist) {
        let n = dist.rd.len();
        let floor_w = dist.unit_floor as u32;
        let slots: Vec<(u64, NodeId)> = if dist.compact {
            assert_eq!(dist.table32.len(), n);
            dist.table32
                .iter()
                .map(|s| (s.cutoff as u64, s.alias))
                .collect()
        } else {
            assert_eq!(dist.wide.len(), n);
            dist.wide.iter().map(|s| (s.cutoff, s.alias)).collect()
        };
        let mut mass = vec![0u128; n];
        for (i, &(cutoff, alias)) in slots.iter().enumerate() {
            mass[i] += cutoff as u128;
            mass[alias as usize] += (dist.total - cutoff) as u128;
        }
        for (i, &r) in dist.rd.iter().enumerate() {
            let expect = r.max(floor_w) as u128 * n as u128;
            assert_eq!(mass[i], expect, "node {i} has wrong probability mass");
        }
    }

    #[test]
    fn alias_mass_is_exact_for_assorted_weight_shapes() {
        let shapes: &[&[u32]] = &[
            &[5, 0, 7, 0, 2],
            &[1, 1, 1, 1],
            &[1_000_000, 1, 1],
            &[0, 0, 3],
            &[9],
            &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29],
        ];
        for &shape in shapes {
            for floor in [false, true] {
                let mut dist = ResidualDist::new(shape, 3).unwrap();
                dist.set_unit_floor(floor);
                dist.snapshot().unwrap();
                assert_alias_mass_exact(&dist);
            }
        }
    }

    #[test]
    fn alias_mass_is_exact_on_random_weights_after_decrements() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        use rand::Rng;
        for _ in 0..50 {
            let n = rng.random_range(1..40usize);
            let degrees: Vec<u32> = (0..n).map(|_| rng.random_range(0..30)).collect();
            let mut dist = ResidualDist::new(&degrees, 2).unwrap();
            for v in 0..n as NodeId {
                if rng.random_bool(0.5) {
                    dist.decrement_saturating(v).unwrap();
                }
                if rng.random_bool(0.3) {
                    dist.decrement_attenuated(v).unwrap();
                }
            }
            for floor in [false, true] {
                dist.set_unit_floor(floor);
                if dist.snapshot().is_ok() {
                    assert_alias_mass_exact(&dist);
                }
            }
        }
    }

    #[test]
    fn wide_weights_use_the_u128_path_and_stay_exact() {
        // Alternating huge/tiny weights push n * total past u64, forcing the
        // scratch-based construction and the two-draw sampling path.
        let degrees: Vec<u32> = (0..100_000)
            .map(|i| if i % 2 == 0 { u32::MAX } else { 1 })
            .collect();
        let mut dist = ResidualDist::new(&degrees, 5).unwrap();
        assert!(!dist.compact, "total past u32 must pick wide slots");
        assert_eq!(dist.packed_span, 0, "expected the packed draw to be unavailable");
        assert_alias_mass_exact(&dist);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut pair = [0u32; 2];
        for _ in 0..50 {
            dist.sample_distinct(&mut pair, &mut rng).unwrap();
            assert_ne!(pair[0], pair[1]);
            assert!((pair[0] as usize) < degrees.len());
            assert!((pair[1] as usize) < degrees.len());
        }
    }

    #[test]
    fn wide_slots_with_packed_draw_stay_exact() {
        // A small node count with huge degrees lands in between: the total
        // overflows u32 (wide slots) while n * total still fits u64 (packed
        // single-draw path).
        let degrees: Vec<u32> = (0..1000).map(|i| u32::MAX - i).collect();
        let mut dist = ResidualDist::new(&degrees, 5).unwrap();
        assert!(!dist.compact);
        assert!(dist.packed_span > 0);
        assert_alias_mass_exact(&dist);
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let mut triple = [0u32; 3];
        for _ in 0..50 {
            dist.sample_distinct(&mut triple, &mut rng).unwrap();
            assert_ne!(triple[0], triple[1]);
            assert_ne!(triple[1], triple[2]);
            assert_ne!(triple[0], triple[2]);
        }
    }

    /// The decrement methods maintain `sum_rd`/`nonzero` incrementally; a
    /// rebuild must agree with a from-scratch recount of the residuals.
    #[test]
    fn aggregates_match_recount_after_mixed_decrements() {
        let mut dist = ResidualDist::new(&[3, 1, 0, 2, 5], 4).unwrap();
        dist.decrement(0).unwrap();
        dist.decrement_saturating(1).unwrap();
        dist.decrement_saturating(1).unwrap(); // parked at zero
        dist.decrement_attenuated(3).unwrap();
        dist.decrement_attenuated(3).unwrap(); // parked at one
        dist.decrement_attenuated(2).unwrap(); // zero stays zero
        assert!(matches!(
            dist.decrement(2),
            Err(Error::ResidualUnderflow(2))
        ));
        for floor in [false, true] {
            dist.set_unit_floor(floor);
            dist.snapshot().unwrap();
            let resid: Vec<u64> = (0..5).map(|v| dist.residual(v)).collect();
            let weight = |r: u64| if floor { r.max(1) } else { r };
            let expect_total: u64 = resid.iter().map(|&r| weight(r)).sum();
            let expect_pos = resid.iter().filter(|&&r| weight(r) > 0).count();
            assert_eq!(dist.total, expect_total);
            assert_eq!(dist.positive_support(), expect_pos);
            assert_alias_mass_exact(&dist);
        }
    }
}
