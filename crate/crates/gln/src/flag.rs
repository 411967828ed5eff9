//! Flag partitions 0 = d_0 ≤ d_1 ≤ … ≤ d_n = d and their Young subgroups.

use std::collections::BTreeSet;
use std::fmt;

use crate::GlnError;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FlagPartition {
    parts: Vec<usize>,
}

impl FlagPartition {
    /// `parts` = (d_0, …, d_n) with d_0 = 0.
    pub fn new(parts: Vec<usize>) -> Option<Self> {
        if parts.len() < 2 || parts[0] != 0 || parts.windows(2).any(|w| w[0] > w[1]) {
            return None;
        }
        Some(FlagPartition { parts })
    }

    pub fn n(&self) -> usize {
        self.parts.len() - 1
    }

    pub fn d(&self) -> usize {
        self.parts[self.n()]
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// d_j.
    pub fn part(&self, j: usize) -> usize {
        self.parts[j]
    }

    /// Positions (0-based) of the block I_j = [d_{j−1}+1, d_j], j = 1..n.
    pub fn block(&self, j: usize) -> std::ops::Range<usize> {
        self.parts[j - 1]..self.parts[j]
    }

    pub fn block_len(&self, j: usize) -> usize {
        self.parts[j] - self.parts[j - 1]
    }

    /// Block index (1-based) containing position `k`.
    pub fn block_of(&self, k: usize) -> usize {
        (1..=self.n()).find(|&j| self.block(j).contains(&k)).expect("position in range")
    }

    /// d_i^+: d_i raised by one, for 1 ≤ i ≤ n−1.
    pub fn up(&self, i: usize) -> Option<Self> {
        if self.parts[i] + 1 > self.parts[i + 1] {
            return None;
        }
        let mut p = self.parts.clone();
        p[i] += 1;
        Some(FlagPartition { parts: p })
    }

    /// d_i^-: d_i lowered by one.
    pub fn down(&self, i: usize) -> Option<Self> {
        if self.parts[i] == 0 || self.parts[i] - 1 < self.parts[i - 1] {
            return None;
        }
        let mut p = self.parts.clone();
        p[i] -= 1;
        Some(FlagPartition { parts: p })
    }

    /// Adjacent transpositions (k, k+1) generating the Young subgroup.
    pub fn adjacent_swaps(&self) -> Vec<(usize, usize)> {
        (1..=self.n()).flat_map(|j| self.block(j).skip(1).map(|k| (k - 1, k))).collect()
    }

    /// All elements of the Young subgroup as position maps.
    pub fn young_group(&self) -> Vec<Vec<usize>> {
        let mut out = vec![(0..self.d()).collect::<Vec<usize>>()];
        for j in 1..=self.n() {
            let b: Vec<usize> = self.block(j).collect();
            let perms = permutations(&b);
            let mut next = Vec::with_capacity(out.len() * perms.len());
            for base in &out {
                for p in &perms {
                    let mut t = base.clone();
                    for (a, c) in b.iter().zip(p) {
                        t[*a] = *c;
                    }
                    next.push(t);
                }
            }
            out = next;
        }
        out
    }
}

impl fmt::Display for FlagPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (k, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(k);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// All flag partitions for (n, d), in lexicographic order of (d_1, …, d_{n−1}).
pub fn flag_partitions(n: usize, d: usize) -> Result<Vec<FlagPartition>, GlnError> {
    if n < 2 || d < 1 {
        return Err(GlnError::BadShape(n, d));
    }
    let mut out = Vec::new();
    let mut cur = vec![0usize; n - 1];
    loop {
        let mut parts = vec![0];
        parts.extend(&cur);
        parts.push(d);
        out.push(FlagPartition { parts });
        // next non-decreasing sequence with entries ≤ d
        let mut k = n - 1;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            if cur[k] < d {
                let v = cur[k] + 1;
                for x in cur.iter_mut().skip(k) {
                    *x = v;
                }
                break;
            }
        }
    }
}

/// Representatives τ of S(dst)/(S(src) ∩ S(dst)), as position maps a ↦ τ(a).
pub fn coset_reps(src: &FlagPartition, dst: &FlagPartition) -> Vec<Vec<usize>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for t in dst.young_group() {
        let key: Vec<BTreeSet<usize>> = (1..=src.n()).map(|j| src.block(j).map(|a| t[a]).collect()).collect();
        if seen.insert(key) {
            out.push(t);
        }
    }
    out
}
