//! Partitions as multiplicity vectors, bounded compositions, and the index
//! set of the nested Hilbert scheme stratification.

use std::fmt;

/// A partition `1^{a_1} 2^{a_2} ... r^{a_r}` stored as `(a_1, ..., a_r)`
/// with `a_r > 0`; the empty vector is the partition of 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PartitionMultiplicity {
    mults: Vec<u32>,
}

impl PartitionMultiplicity {
    /// Trailing zeros are stripped.
    pub fn new(mut mults: Vec<u32>) -> Self {
        while mults.last() == Some(&0) {
            mults.pop();
        }
        PartitionMultiplicity { mults }
    }

    pub fn from_parts(parts: &[u32]) -> Self {
        let max = parts.iter().copied().max().unwrap_or(0) as usize;
        let mut mults = vec![0u32; max];
        for &p in parts {
            assert!(p > 0, "parts must be positive");
            mults[p as usize - 1] += 1;
        }
        PartitionMultiplicity::new(mults)
    }

    pub fn mults(&self) -> &[u32] {
        &self.mults
    }

    /// `a_k` (zero beyond the largest part).
    pub fn multiplicity(&self, k: u32) -> u32 {
        if k == 0 {
            return 0;
        }
        self.mults.get(k as usize - 1).copied().unwrap_or(0)
    }

    /// Largest part `r`.
    pub fn largest_part(&self) -> u32 {
        self.mults.len() as u32
    }

    /// `n = sum k a_k`.
    pub fn size(&self) -> u32 {
        self.mults
            .iter()
            .enumerate()
            .map(|(i, &a)| (i as u32 + 1) * a)
            .sum()
    }

    /// `|lambda| = sum a_k`.
    pub fn length(&self) -> u32 {
        self.mults.iter().sum()
    }

    /// Codimension `2(n - |lambda|)` of the corresponding stratum.
    pub fn codimension(&self) -> u32 {
        2 * (self.size() - self.length())
    }

    /// Parts in non-increasing order.
    pub fn parts(&self) -> Vec<u32> {
        let mut parts = Vec::with_capacity(self.length() as usize);
        for k in (1..=self.largest_part()).rev() {
            parts.extend(std::iter::repeat_n(k, self.multiplicity(k) as usize));
        }
        parts
    }
}

impl fmt::Display for PartitionMultiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mults.is_empty() {
            return write!(f, "()");
        }
        let body: Vec<String> = self
            .mults
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(i, a)| format!("{}^{}", i + 1, a))
            .collect();
        write!(f, "({})", body.join(" "))
    }
}

/// All partitions of `n`, in ascending lexicographic order of their
/// multiplicity vectors `(a_1, a_2, ...)`.
pub fn partitions(n: u32) -> Vec<PartitionMultiplicity> {
    fn rec(remaining: u32, max_part: u32, parts: &mut Vec<u32>, out: &mut Vec<PartitionMultiplicity>) {
        if remaining == 0 {
            out.push(PartitionMultiplicity::from_parts(parts));
            return;
        }
        for p in (1..=max_part.min(remaining)).rev() {
            parts.push(p);
            rec(remaining - p, p, parts, out);
            parts.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Iterator over `(i_1, ..., i_r)` with `0 <= i_k <= bounds[k]` and
/// `sum i_k = total`, in ascending lexicographic order.
#[derive(Debug, Clone)]
pub struct BoundedCompositions {
    bounds: Vec<u32>,
    // suffix_cap[k] = sum of bounds[k..]
    suffix_cap: Vec<u64>,
    current: Option<Vec<u32>>,
}

impl BoundedCompositions {
    fn fill_min(&self, prefix_len: usize, mut remaining: u64, tuple: &mut [u32]) -> bool {
        // smallest lexicographic completion: push mass as far right as possible
        for (k, slot) in tuple.iter_mut().enumerate().skip(prefix_len) {
            let rest_cap = self.suffix_cap[k + 1];
            let need = remaining.saturating_sub(rest_cap);
            if need > self.bounds[k] as u64 {
                return false;
            }
            *slot = need as u32;
            remaining -= need;
        }
        remaining == 0
    }

    fn advance(&self, tuple: &mut [u32]) -> bool {
        let r = tuple.len();
        // find rightmost position (excluding the last) that can grow while the suffix absorbs one less
        for k in (0..r.saturating_sub(1)).rev() {
            if tuple[k] >= self.bounds[k] {
                continue;
            }
            let suffix_sum: u64 = tuple[k + 1..].iter().map(|&v| v as u64).sum();
            if suffix_sum == 0 {
                continue;
            }
            tuple[k] += 1;
            if self.fill_min(k + 1, suffix_sum - 1, tuple) {
                return true;
            }
            tuple[k] -= 1;
        }
        false
    }
}

impl Iterator for BoundedCompositions {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let out = self.current.take()?;
        let mut succ = out.clone();
        if self.advance(&mut succ) {
            self.current = Some(succ);
        }
        Some(out)
    }
}

pub fn bounded_compositions(total: i64, bounds: &[u32]) -> BoundedCompositions {
    let r = bounds.len();
    let mut suffix_cap = vec![0u64; r + 1];
    for k in (0..r).rev() {
        suffix_cap[k] = suffix_cap[k + 1] + bounds[k] as u64;
    }
    let mut it = BoundedCompositions {
        bounds: bounds.to_vec(),
        suffix_cap,
        current: None,
    };
    if total >= 0 && (total as u64) <= it.suffix_cap[0] {
        let mut first = vec![0u32; r];
        if it.fill_min(0, total as u64, &mut first) {
            it.current = Some(first);
        }
    }
    it
}

/// Pairs `(lambda, j)` with `lambda |- n` and `j = 0` or `a_j > 0`; ordered by
/// `lambda` (as in [`partitions`]) then by `j`.
pub fn nested_index_set(n: u32) -> Vec<(PartitionMultiplicity, u32)> {
    let mut out = Vec::new();
    for lambda in partitions(n) {
        out.push((lambda.clone(), 0));
        for j in 1..=lambda.largest_part() {
            if lambda.multiplicity(j) > 0 {
                out.push((lambda.clone(), j));
            }
        }
    }
    out
}
