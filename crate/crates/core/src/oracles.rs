//! Brute-force fixed-point counts used as independent witnesses for the Euler
//! specializations of the product formulas.
//!
//! A surface with Euler number `N` is modelled by `N` torus-fixed points, each
//! carrying a partition; these counters never touch power series.

use std::fmt;

/// A weakly decreasing sequence of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn is_valid(&self) -> bool {
        self.parts.iter().all(|&p| p >= 1) && self.parts.windows(2).all(|w| w[0] >= w[1])
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All partitions of `m`, generated by recursion on the largest part.
pub fn partitions_of(m: u32) -> Vec<Partition> {
    fn extend(remaining: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: prefix.clone() });
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            prefix.push(part);
            extend(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(m, m, &mut Vec::new(), &mut out);
    out
}

/// All partitions of `m` in reverse lexicographic order, by the classical
/// successor rule (split the last part larger than one).
pub fn partitions_of_lexicographic(m: u32) -> Vec<Partition> {
    if m == 0 {
        return vec![Partition::empty()];
    }
    let mut out = Vec::new();
    let mut current = vec![m];
    loop {
        out.push(Partition { parts: current.clone() });
        let Some(pos) = current.iter().rposition(|&p| p > 1) else {
            break;
        };
        let ones = (current.len() - pos - 1) as u32;
        let part = current[pos] - 1;
        let mut rest = ones + current[pos];
        current.truncate(pos);
        while rest > 0 {
            let take = rest.min(part);
            current.push(take);
            rest -= take;
        }
    }
    out
}

/// Positions where one box can be added keeping a Young diagram, counted by
/// testing every row (including a new bottom row).
pub fn addable_boxes(p: &Partition) -> u64 {
    let parts = p.parts();
    (0..=parts.len())
        .filter(|&row| {
            let here = parts.get(row).copied().unwrap_or(0);
            row == 0 || parts[row - 1] > here
        })
        .count() as u64
}

/// Calls `visit` on every `n_colors`-tuple of partitions of total size `m`.
fn for_each_colored_tuple(n_colors: usize, m: u32, mut visit: impl FnMut(&[&Partition])) {
    let by_size: Vec<Vec<Partition>> = (0..=m).map(partitions_of).collect();
    let mut tuple: Vec<&Partition> = Vec::with_capacity(n_colors);

    fn recurse<'a>(
        color: usize,
        n_colors: usize,
        remaining: u32,
        by_size: &'a [Vec<Partition>],
        tuple: &mut Vec<&'a Partition>,
        visit: &mut dyn FnMut(&[&Partition]),
    ) {
        if color + 1 == n_colors {
            for p in &by_size[remaining as usize] {
                tuple.push(p);
                visit(tuple);
                tuple.pop();
            }
            return;
        }
        for size in 0..=remaining {
            for p in &by_size[size as usize] {
                tuple.push(p);
                recurse(color + 1, n_colors, remaining - size, by_size, tuple, visit);
                tuple.pop();
            }
        }
    }

    if n_colors == 0 {
        if m == 0 {
            visit(&[]);
        }
        return;
    }
    recurse(0, n_colors, m, &by_size, &mut tuple, &mut visit);
}

/// Number of `n_colors`-tuples of partitions with total size `m`.
pub fn colored_partitions_count(n_colors: usize, m: u32) -> u64 {
    let mut count = 0;
    for_each_colored_tuple(n_colors, m, |_| count += 1);
    count
}

/// Number of nested pairs `eta < xi`, `|xi| = |eta| + 1 = m + 1`, among
/// `n_colors`-tuples: sum over tuples of total size `m` of the addable boxes
/// of all components.
pub fn nested_colored_count(n_colors: usize, m: u32) -> u64 {
    let mut count = 0;
    for_each_colored_tuple(n_colors, m, |tuple| {
        count += tuple.iter().map(|p| addable_boxes(p)).sum::<u64>();
    });
    count
}
