//! The list-decoding engine: path forking, metric updates and pruning.

use crate::codec::hard_decision;

use super::tree::DecoderTree;

/// One list-decoding hypothesis: its accumulated penalty, decision history
/// and per-level partial-sum state.
#[derive(Debug, Clone)]
pub struct Path {
    metric: f64,
    parent: usize,
    decisions: Vec<u8>,
    pub(super) tree: DecoderTree,
}

impl Path {
    /// Accumulated path metric (sum of |LLR| over sign-contradicting
    /// decisions); never decreases as decoding advances.
    pub fn metric(&self) -> f64 {
        self.metric
    }

    /// Index of this path's parent in the previous generation.
    pub fn parent(&self) -> usize {
        self.parent
    }

    /// Leaf decisions made so far.
    pub fn decisions(&self) -> &[u8] {
        &self.decisions
    }

    /// Re-encoded codeword of the decisions; valid after the final leaf.
    pub fn codeword(&self) -> &[u8] {
        self.tree.codeword()
    }
}

/// A proposed continuation of path `parent` with leaf decision `bit`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForkCandidate {
    pub parent: usize,
    pub bit: u8,
    pub metric: f64,
}

/// Path-metric update: the metric is unchanged when the decision agrees
/// with the LLR sign (an LLR of exactly 0 counts as positive, agreeing with
/// bit 0) and grows by |alpha| otherwise.
#[inline]
pub fn metric_update(pm: f64, alpha: f64, u_hat: u8) -> f64 {
    if u_hat == hard_decision(alpha) {
        pm
    } else {
        pm + alpha.abs()
    }
}

/// Keeps the `list_size` smallest-metric candidates. Ties are broken by
/// smaller parent index, then by the bit-0 branch first, so pruning is fully
/// deterministic.
pub fn prune(candidates: &mut Vec<ForkCandidate>, list_size: usize) {
    candidates.sort_by(|a, b| {
        a.metric
            .total_cmp(&b.metric)
            .then(a.parent.cmp(&b.parent))
            .then(a.bit.cmp(&b.bit))
    });
    candidates.truncate(list_size);
}

/// Runs list decoding over one subtree: `chan` holds the 2^m LLRs at the
/// subtree root, `frozen` the local frozen mask. Returns the surviving paths
/// in their final generation order; every path's metric starts at zero.
///
/// `observe` is called once per leaf with the surviving generation; decoding
/// call sites pass a no-op.
pub(crate) fn list_decode_subtree<F>(
    chan: &[f64],
    frozen: &[bool],
    list_size: usize,
    mut observe: F,
) -> Vec<Path>
where
    F: FnMut(usize, &[Path]),
{
    let size = chan.len();
    assert!(size.is_power_of_two());
    assert_eq!(frozen.len(), size);
    assert!(list_size >= 1, "list size must be at least 1");
    let log_n = size.trailing_zeros() as usize;

    let mut paths = vec![Path {
        metric: 0.0,
        parent: 0,
        decisions: Vec::with_capacity(size),
        tree: DecoderTree::new(log_n),
    }];
    let mut candidates: Vec<ForkCandidate> = Vec::with_capacity(2 * list_size);

    for (leaf, &leaf_frozen) in frozen.iter().enumerate() {
        for path in paths.iter_mut() {
            path.tree.refine(chan, 0, leaf);
        }
        if leaf_frozen {
            for (index, path) in paths.iter_mut().enumerate() {
                let alpha = path.tree.leaf_llr(chan);
                path.metric = metric_update(path.metric, alpha, 0);
                path.parent = index;
                path.decisions.push(0);
                path.tree.absorb(0, leaf, &[0]);
            }
        } else {
            candidates.clear();
            for (index, path) in paths.iter().enumerate() {
                let alpha = path.tree.leaf_llr(chan);
                for bit in [0u8, 1] {
                    candidates.push(ForkCandidate {
                        parent: index,
                        bit,
                        metric: metric_update(path.metric, alpha, bit),
                    });
                }
            }
            prune(&mut candidates, list_size);
            paths = materialize(paths, &candidates, leaf);
        }
        observe(leaf, &paths);
    }
    paths
}

/// Builds the next generation from the selected candidates, cloning a parent
/// only when both of its branches survived.
fn materialize(parents: Vec<Path>, selected: &[ForkCandidate], leaf: usize) -> Vec<Path> {
    let mut uses = vec![0u8; parents.len()];
    for cand in selected {
        uses[cand.parent] += 1;
    }
    let mut pool: Vec<Option<Path>> = parents.into_iter().map(Some).collect();
    let mut next = Vec::with_capacity(selected.len());
    for cand in selected {
        let mut path = if uses[cand.parent] > 1 {
            uses[cand.parent] -= 1;
            pool[cand.parent]
                .as_ref()
                .expect("parent still pooled")
                .clone()
        } else {
            pool[cand.parent].take().expect("parent still pooled")
        };
        path.metric = cand.metric;
        path.parent = cand.parent;
        path.decisions.push(cand.bit);
        path.tree.absorb(0, leaf, &[cand.bit]);
        next.push(path);
    }
    next
}

/// Scans paths in ascending metric order (ties by lower index) and returns
/// the first one accepted by `crc_ok`; if none is accepted the best-metric
/// path wins.
pub(crate) fn select_path<F>(paths: &[Path], mut crc_ok: F) -> &Path
where
    F: FnMut(&Path) -> bool,
{
    let mut order: Vec<usize> = (0..paths.len()).collect();
    order.sort_by(|&a, &b| paths[a].metric.total_cmp(&paths[b].metric).then(a.cmp(&b)));
    for &i in &order {
        if crc_ok(&paths[i]) {
            return &paths[i];
        }
    }
    &paths[order[0]]
}
