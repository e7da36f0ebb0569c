//! Hopcroft partition refinement for letter-to-letter transducers.
//!
//! Two states are equivalent when they emit the same output letter on every
//! input letter and their successors on every letter are again equivalent.
//! The initial partition groups states by their output row (the map
//! `a -> output(q, a)`); refinement then splits blocks by predecessor sets,
//! always re-queueing the smaller half, for `O(|A| |Q| log |Q|)` overall.

use std::collections::{HashMap, VecDeque};

/// Computes the coarsest stable partition. `outputs` and `nexts` are flat
/// `n * k` tables indexed by `state * k + letter`. Returns a block id per
/// state; block ids are dense but otherwise arbitrary.
pub(crate) fn refine(n: usize, k: usize, outputs: &[u32], nexts: &[u32]) -> Vec<usize> {
    debug_assert_eq!(outputs.len(), n * k);
    debug_assert_eq!(nexts.len(), n * k);
    if n == 0 {
        return Vec::new();
    }

    // initial blocks by output row
    let mut block_of = vec![0usize; n];
    let mut rows: HashMap<&[u32], usize> = HashMap::new();
    let mut sizes: Vec<usize> = Vec::new();
    for s in 0..n {
        let row = &outputs[s * k..(s + 1) * k];
        let next_id = rows.len();
        let b = *rows.entry(row).or_insert(next_id);
        if b == sizes.len() {
            sizes.push(0);
        }
        sizes[b] += 1;
        block_of[s] = b;
    }

    // elems sorted by block, each block a contiguous range
    let mut start: Vec<usize> = Vec::with_capacity(sizes.len());
    let mut acc = 0;
    for &sz in &sizes {
        start.push(acc);
        acc += sz;
    }
    let mut end: Vec<usize> = start.clone();
    let mut elems = vec![0usize; n];
    let mut loc = vec![0usize; n];
    for s in 0..n {
        let b = block_of[s];
        elems[end[b]] = s;
        loc[s] = end[b];
        end[b] += 1;
    }
    let mut marked = vec![0usize; start.len()];

    // inverse transitions in CSR form, per letter
    let mut pred_start = vec![0usize; k * (n + 1)];
    for s in 0..n {
        for a in 0..k {
            pred_start[a * (n + 1) + nexts[s * k + a] as usize + 1] += 1;
        }
    }
    for a in 0..k {
        let base = a * (n + 1);
        for t in 0..n {
            pred_start[base + t + 1] += pred_start[base + t];
        }
    }
    let mut fill = pred_start.clone();
    let mut preds = vec![0usize; k * n];
    for s in 0..n {
        for a in 0..k {
            let slot = &mut fill[a * (n + 1) + nexts[s * k + a] as usize];
            preds[a * n + *slot] = s;
            *slot += 1;
        }
    }

    let mut queued: Vec<bool> = vec![true; start.len() * k];
    let mut work: VecDeque<(usize, usize)> = VecDeque::new();
    for b in 0..start.len() {
        for a in 0..k {
            work.push_back((b, a));
        }
    }

    let mut splitter: Vec<usize> = Vec::new();
    let mut touched: Vec<usize> = Vec::new();
    while let Some((b, a)) = work.pop_front() {
        queued[b * k + a] = false;
        splitter.clear();
        splitter.extend_from_slice(&elems[start[b]..end[b]]);
        touched.clear();
        let base = a * (n + 1);
        for &t in &splitter {
            for i in pred_start[base + t]..pred_start[base + t + 1] {
                let s = preds[a * n + i];
                let bb = block_of[s];
                if marked[bb] == 0 {
                    touched.push(bb);
                }
                // move s into the marked prefix of its block
                let dst = start[bb] + marked[bb];
                let other = elems[dst];
                let src = loc[s];
                elems.swap(dst, src);
                loc[other] = src;
                loc[s] = dst;
                marked[bb] += 1;
            }
        }
        for &bb in &touched {
            let m = marked[bb];
            marked[bb] = 0;
            if m == end[bb] - start[bb] {
                continue;
            }
            // marked prefix becomes a new block
            let nb = start.len();
            start.push(start[bb]);
            end.push(start[bb] + m);
            marked.push(0);
            start[bb] += m;
            for i in start[nb]..end[nb] {
                block_of[elems[i]] = nb;
            }
            queued.extend(std::iter::repeat_n(false, k));
            let small_new = end[nb] - start[nb] <= end[bb] - start[bb];
            for c in 0..k {
                if queued[bb * k + c] {
                    queued[nb * k + c] = true;
                    work.push_back((nb, c));
                } else {
                    let pick = if small_new { nb } else { bb };
                    queued[pick * k + c] = true;
                    work.push_back((pick, c));
                }
            }
        }
    }
    block_of
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Quadratic pair-marking oracle: two states differ iff some word
    /// distinguishes them.
    fn naive_classes(n: usize, k: usize, outputs: &[u32], nexts: &[u32]) -> Vec<Vec<bool>> {
        let mut diff = vec![vec![false; n]; n];
        for p in 0..n {
            for q in 0..n {
                diff[p][q] = (0..k).any(|a| outputs[p * k + a] != outputs[q * k + a]);
            }
        }
        loop {
            let mut changed = false;
            for p in 0..n {
                for q in 0..n {
                    if !diff[p][q]
                        && (0..k).any(|a| {
                            diff[nexts[p * k + a] as usize][nexts[q * k + a] as usize]
                        })
                    {
                        diff[p][q] = true;
                        changed = true;
                    }
                }
            }
            if !changed {
                return diff;
            }
        }
    }

    fn lcg(seed: &mut u64) -> u32 {
        *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (*seed >> 33) as u32
    }

    #[test]
    fn agrees_with_pair_marking_on_random_tables() {
        let mut seed = 7u64;
        for _ in 0..400 {
            let n = 1 + (lcg(&mut seed) % 12) as usize;
            let k = 1 + (lcg(&mut seed) % 3) as usize;
            let outs: Vec<u32> = (0..n * k).map(|_| lcg(&mut seed) % 2).collect();
            let nexts: Vec<u32> = (0..n * k).map(|_| lcg(&mut seed) % n as u32).collect();
            let blocks = refine(n, k, &outs, &nexts);
            let diff = naive_classes(n, k, &outs, &nexts);
            for p in 0..n {
                for q in 0..n {
                    assert_eq!(blocks[p] == blocks[q], !diff[p][q]);
                }
            }
        }
    }

    #[test]
    fn duplicated_states_merge() {
        // adding machine with t duplicated: t, 1, t'
        let outs = [1, 0, 0, 1, 1, 0];
        let nexts = [1, 2, 1, 1, 1, 0];
        let b = refine(3, 2, &outs, &nexts);
        assert_eq!(b[0], b[2]);
        assert_ne!(b[0], b[1]);
    }
}
