//! Young diagrams, hook/content combinatorics and Littlewood–Richardson fusion for U(d).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{LazyLock, RwLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};

/// A partition stored in canonical form: weakly decreasing positive rows, no trailing zeros.
///
/// The empty partition is the trivial label and displays as `0`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    rows: Vec<u32>,
}

impl Partition {
    /// Builds a partition, trimming trailing zeros. Fails if the rows increase anywhere.
    pub fn new(mut rows: Vec<u32>) -> Result<Self> {
        while rows.last() == Some(&0) {
            rows.pop();
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse {
                input: format!("{rows:?}"),
                reason: "rows must be weakly decreasing".into(),
            });
        }
        Ok(Partition { rows })
    }

    /// The trivial label `0`.
    pub fn empty() -> Self {
        Partition { rows: Vec::new() }
    }

    /// The single-row partition `[k]` (empty when `k == 0`).
    pub fn row(k: u32) -> Self {
        if k == 0 {
            Self::empty()
        } else {
            Partition { rows: vec![k] }
        }
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    /// Length of row `i` (0-based); zero beyond the depth.
    pub fn part(&self, i: usize) -> u32 {
        self.rows.get(i).copied().unwrap_or(0)
    }

    /// Number of boxes.
    pub fn size(&self) -> u32 {
        self.rows.iter().sum()
    }

    /// Number of nonzero rows.
    pub fn depth(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Diagram containment `other ⊆ self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.depth() <= self.depth() && other.rows.iter().zip(&self.rows).all(|(a, b)| a <= b)
    }

    /// Transposed diagram.
    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        let rows = (1..=width)
            .map(|j| self.rows.iter().filter(|&&r| r >= j).count() as u32)
            .collect();
        Partition { rows }
    }

    /// Every row doubled, written `2κ`.
    pub fn doubled(&self) -> Partition {
        Partition { rows: self.rows.iter().map(|r| 2 * r).collect() }
    }

    /// Bracket form padded with zeros to at least `len` entries, e.g. `[2,1,0]`.
    pub fn display_padded(&self, len: usize) -> String {
        let mut rows: Vec<String> = self.rows.iter().map(u32::to_string).collect();
        while rows.len() < len {
            rows.push("0".into());
        }
        format!("[{}]", rows.join(","))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return f.write_str("0");
        }
        f.write_str("[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `[3,1]`, `3,1`, `[]` and `0`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')).unwrap_or(t).trim();
        if inner.is_empty() {
            return Ok(Partition::empty());
        }
        let rows = inner
            .split(',')
            .map(|p| {
                p.trim().parse::<u32>().map_err(|e| Error::Parse {
                    input: s.to_string(),
                    reason: e.to_string(),
                })
            })
            .collect::<Result<Vec<u32>>>()?;
        Partition::new(rows).map_err(|_| Error::Parse {
            input: s.to_string(),
            reason: "rows must be weakly decreasing".into(),
        })
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(rows: Vec<u32>) -> Result<Self> {
        Partition::new(rows)
    }
}

/// Shorthand for building partitions from literals; panics on non-decreasing input.
#[macro_export]
macro_rules! part {
    () => { $crate::partitions::Partition::empty() };
    ($($r:expr),+ $(,)?) => {
        $crate::partitions::Partition::new(vec![$($r),+]).expect("partition rows must be weakly decreasing")
    };
}

/// A multiset of labels with integer multiplicities, iterated in label order.
///
/// Public operations only return decompositions whose multiplicities are all positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition<L: Ord> {
    terms: BTreeMap<L, i64>,
}

impl<L: Ord> Default for Decomposition<L> {
    fn default() -> Self {
        Decomposition { terms: BTreeMap::new() }
    }
}

impl<L: Ord + Clone> Decomposition<L> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `mult` copies of `label`; entries that reach zero are dropped.
    pub fn add(&mut self, label: L, mult: i64) {
        if mult == 0 {
            return;
        }
        let entry = self.terms.entry(label.clone()).or_insert(0);
        *entry += mult;
        if *entry == 0 {
            self.terms.remove(&label);
        }
    }

    /// Adds every term of `other`, scaled by `factor`.
    pub fn add_scaled(&mut self, other: &Decomposition<L>, factor: i64) {
        for (l, m) in &other.terms {
            self.add(l.clone(), m * factor);
        }
    }

    pub fn get(&self, label: &L) -> i64 {
        self.terms.get(label).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&L, i64)> {
        self.terms.iter().map(|(l, &m)| (l, m))
    }

    pub fn labels(&self) -> impl Iterator<Item = &L> {
        self.terms.keys()
    }

    /// Number of distinct labels.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of multiplicities.
    pub fn total(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn map_labels<M: Ord + Clone>(&self, f: impl Fn(&L) -> M) -> Decomposition<M> {
        let mut out = Decomposition::new();
        for (l, &m) in &self.terms {
            out.add(f(l), m);
        }
        out
    }

    /// The first label whose multiplicity is negative, if any.
    pub fn first_negative(&self) -> Option<(&L, i64)> {
        self.terms.iter().find(|(_, &m)| m < 0).map(|(l, &m)| (l, m))
    }
}

impl<L: Ord + Clone + fmt::Display> Decomposition<L> {
    /// JSON object keyed by the label text, e.g. `{"[1]":1,"[2,1]":1}`.
    pub fn to_json(&self) -> serde_json::Value {
        let map = self
            .terms
            .iter()
            .map(|(l, &m)| (l.to_string(), serde_json::Value::from(m)))
            .collect::<serde_json::Map<_, _>>();
        serde_json::Value::Object(map)
    }
}

impl<L: Ord + Clone> FromIterator<(L, i64)> for Decomposition<L> {
    fn from_iter<I: IntoIterator<Item = (L, i64)>>(iter: I) -> Self {
        let mut d = Decomposition::new();
        for (l, m) in iter {
            d.add(l, m);
        }
        d
    }
}

/// All partitions of `n` with at most `max_rows` rows, in reverse-lexicographic order.
pub fn enumerate_partitions(n: u32, max_rows: usize) -> Vec<Partition> {
    fn rec(rem: u32, max_part: u32, rows_left: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { rows: cur.clone() });
            return;
        }
        if rows_left == 0 {
            return;
        }
        for p in (1..=rem.min(max_part)).rev() {
            if u64::from(p) * rows_left as u64 <= u64::from(rem).saturating_sub(1) {
                break;
            }
            cur.push(p);
            rec(rem - p, p, rows_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, max_rows.max(1), &mut Vec::new(), &mut out);
    out
}

/// Σ (j − i) over the cells (i, j) of the diagram.
pub fn content_sum(lambda: &Partition) -> i64 {
    lambda
        .rows
        .iter()
        .enumerate()
        .map(|(i, &r)| {
            let r = i64::from(r);
            let i = i as i64;
            // columns 0..r in row i
            r * (r - 1) / 2 - i * r
        })
        .sum()
}

/// Dimension of the symmetric-group irrep labelled by `lambda`, by the hook length formula.
pub fn hook_dim_sn(lambda: &Partition) -> u128 {
    let conj = lambda.conjugate();
    let mut hooks = BigUint::one();
    for (i, &r) in lambda.rows.iter().enumerate() {
        for j in 0..r as usize {
            let arm = r as usize - j - 1;
            let leg = conj.rows[j] as usize - i - 1;
            hooks *= BigUint::from(arm + leg + 1);
        }
    }
    let mut fact = BigUint::one();
    for k in 2..=lambda.size() {
        fact *= BigUint::from(k);
    }
    (fact / hooks).to_u128().expect("symmetric-group dimension exceeds u128")
}

/// Removes every column of height `d`; returns the remainder and the number of columns removed.
pub fn strip_full_columns(lambda: &Partition, d: usize) -> Result<(Partition, u32)> {
    if lambda.depth() > d {
        return Err(Error::DepthExceeded { label: lambda.to_string(), depth: lambda.depth(), limit: d });
    }
    if d == 0 || lambda.depth() < d {
        return Ok((lambda.clone(), 0));
    }
    let k = lambda.rows[d - 1];
    let rows = lambda.rows.iter().map(|r| r - k).collect();
    Ok((Partition::new(rows)?, k))
}

type LrKey = (Partition, Partition, Partition);

static LR_CACHE: LazyLock<RwLock<HashMap<LrKey, u64>>> = LazyLock::new(|| RwLock::new(HashMap::new()));

/// The Littlewood–Richardson coefficient c^λ_{μν}, memoized process-wide.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if lambda.size() != mu.size() + nu.size() || !lambda.contains(mu) || !lambda.contains(nu) {
        return 0;
    }
    if mu.is_empty() || nu.is_empty() {
        return 1;
    }
    let key = (lambda.clone(), mu.clone(), nu.clone());
    if let Some(&c) = LR_CACHE.read().expect("LR cache poisoned").get(&key) {
        return c;
    }
    let c = count_lr_tableaux(lambda, mu, nu);
    LR_CACHE.write().expect("LR cache poisoned").insert(key, c);
    c
}

/// Counts semistandard fillings of λ/μ with content ν whose reverse reading word is a lattice word.
///
/// Cells are filled row by row, right to left within a row, so the lattice condition can be
/// checked on every prefix.
fn count_lr_tableaux(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    let depth = lambda.depth();
    let mut cells = Vec::new();
    for i in 0..depth {
        for j in (mu.part(i)..lambda.part(i)).rev() {
            cells.push((i, j as usize));
        }
    }
    let width = lambda.part(0) as usize;
    let mut grid = vec![vec![0u32; width]; depth];
    let mut counts = vec![0u32; nu.depth() + 1];

    struct Ctx<'a> {
        cells: &'a [(usize, usize)],
        lambda: &'a Partition,
        mu: &'a Partition,
        nu: &'a Partition,
    }

    fn rec(ctx: &Ctx, idx: usize, grid: &mut [Vec<u32>], counts: &mut [u32]) -> u64 {
        if idx == ctx.cells.len() {
            return 1;
        }
        let (i, j) = ctx.cells[idx];
        let mut hi = ctx.nu.depth() as u32;
        if (j as u32) + 1 < ctx.lambda.part(i) {
            hi = hi.min(grid[i][j + 1]);
        }
        let mut lo = 1;
        if i > 0 && (j as u32) >= ctx.mu.part(i - 1) {
            lo = grid[i - 1][j] + 1;
        }
        let mut total = 0;
        for v in lo..=hi {
            let vi = v as usize;
            if counts[vi] >= ctx.nu.part(vi - 1) {
                continue;
            }
            if vi > 1 && counts[vi - 1] <= counts[vi] {
                continue;
            }
            counts[vi] += 1;
            grid[i][j] = v;
            total += rec(ctx, idx + 1, grid, counts);
            grid[i][j] = 0;
            counts[vi] -= 1;
        }
        total
    }

    let ctx = Ctx { cells: &cells, lambda, mu, nu };
    rec(&ctx, 0, &mut grid, &mut counts)
}

/// Snapshot of the LR memo as `"λ|μ|ν" → c`, in sorted key order.
pub fn lr_cache_export() -> BTreeMap<String, u64> {
    LR_CACHE
        .read()
        .expect("LR cache poisoned")
        .iter()
        .map(|((l, m, n), &c)| (format!("{l}|{m}|{n}"), c))
        .collect()
}

/// Loads memo entries produced by [`lr_cache_export`]; returns how many were read.
pub fn lr_cache_import(entries: &BTreeMap<String, u64>) -> Result<usize> {
    let mut parsed = Vec::with_capacity(entries.len());
    for (k, &c) in entries {
        let parts: Vec<&str> = k.split('|').collect();
        if parts.len() != 3 {
            return Err(Error::Parse { input: k.clone(), reason: "expected λ|μ|ν".into() });
        }
        let key = (parts[0].parse()?, parts[1].parse()?, parts[2].parse()?);
        parsed.push((key, c));
    }
    let n = parsed.len();
    let mut cache = LR_CACHE.write().expect("LR cache poisoned");
    cache.extend(parsed);
    Ok(n)
}

/// Number of memoized LR coefficients.
pub fn lr_cache_len() -> usize {
    LR_CACHE.read().expect("LR cache poisoned").len()
}

/// U(d) fusion μ ⊗ ν = ⊕ c^λ_{μν} λ over λ with depth ≤ d. Pass `usize::MAX` for no depth bound.
pub fn tensor_u(mu: &Partition, nu: &Partition, d: usize) -> Decomposition<Partition> {
    let n = mu.size() + nu.size();
    let max_rows = d.min(mu.depth() + nu.depth()).max(1);
    enumerate_partitions(n, max_rows)
        .into_iter()
        .filter(|l| l.contains(mu) && l.contains(nu))
        .map(|l| {
            let c = lr_coefficient(&l, mu, nu) as i64;
            (l, c)
        })
        .collect()
}

/// Pieri rule: add `k` boxes to μ, no two in the same column, keeping depth ≤ d.
pub fn pieri_u(mu: &Partition, k: u32, d: usize) -> Decomposition<Partition> {
    let mut out = Decomposition::new();
    for l in horizontal_strips_added(mu, k) {
        if l.depth() <= d {
            out.add(l, 1);
        }
    }
    out
}

/// Every λ ⊇ μ with λ/μ a horizontal strip of `k` boxes.
pub(crate) fn horizontal_strips_added(mu: &Partition, k: u32) -> Vec<Partition> {
    fn rec(mu: &Partition, i: usize, rem: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if i == mu.depth() + 1 {
            if rem == 0 {
                out.push(Partition::new(cur.clone()).expect("interlacing keeps rows decreasing"));
            }
            return;
        }
        let base = mu.part(i);
        let cap = if i == 0 { base + rem } else { mu.part(i - 1) };
        for row in base..=cap.min(base + rem) {
            cur.push(row);
            rec(mu, i + 1, rem - (row - base), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(mu, 0, k, &mut Vec::new(), &mut out);
    out
}

/// Every β ⊆ μ with μ/β a horizontal strip of `j` boxes.
pub(crate) fn horizontal_strips_removed(mu: &Partition, j: u32) -> Vec<Partition> {
    fn rec(mu: &Partition, i: usize, rem: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if i == mu.depth() {
            if rem == 0 {
                out.push(Partition::new(cur.clone()).expect("interlacing keeps rows decreasing"));
            }
            return;
        }
        let top = mu.part(i);
        let floor = mu.part(i + 1);
        for row in (floor..=top).rev() {
            let taken = top - row;
            if taken > rem {
                break;
            }
            cur.push(row);
            rec(mu, i + 1, rem - taken, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(mu, 0, j, &mut Vec::new(), &mut out);
    out
}

/// Skew expansion μ/α = Σ_β c^μ_{αβ} β.
pub fn skew(mu: &Partition, alpha: &Partition) -> Decomposition<Partition> {
    if !mu.contains(alpha) {
        return Decomposition::new();
    }
    enumerate_partitions(mu.size() - alpha.size(), mu.depth())
        .into_iter()
        .filter(|b| mu.contains(b))
        .map(|b| {
            let c = lr_coefficient(mu, alpha, &b) as i64;
            (b, c)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_partitions(2, 2), vec![part![2], part![1, 1]]);
        assert_eq!(enumerate_partitions(0, 5), vec![part![]]);
        assert_eq!(enumerate_partitions(4, 2), vec![part![4], part![3, 1], part![2, 2]]);
        assert_eq!(enumerate_partitions(5, 5).len(), 7);
        assert_eq!(enumerate_partitions(10, 10).len(), 42);
        assert_eq!(enumerate_partitions(10, 3).len(), 14);
    }

    #[test]
    fn content_and_hooks() {
        assert_eq!(content_sum(&part![2]), 1);
        assert_eq!(content_sum(&part![1, 1]), -1);
        assert_eq!(content_sum(&part![3, 1]), 2);
        assert_eq!(content_sum(&part![]), 0);
        assert_eq!(hook_dim_sn(&part![5]), 1);
        assert_eq!(hook_dim_sn(&part![2, 1]), 2);
        assert_eq!(hook_dim_sn(&part![2, 2]), 2);
        assert_eq!(hook_dim_sn(&part![3, 2, 1]), 16);
        assert_eq!(hook_dim_sn(&part![]), 1);
    }

    #[test]
    fn sum_of_squared_dimensions_is_factorial() {
        let mut fact = 1u128;
        for n in 1..=8u32 {
            fact *= u128::from(n);
            let s: u128 = enumerate_partitions(n, n as usize).iter().map(|l| hook_dim_sn(l).pow(2)).sum();
            assert_eq!(s, fact);
        }
    }

    #[test]
    fn strip_columns() {
        assert_eq!(strip_full_columns(&part![1, 1], 2).unwrap(), (part![], 1));
        assert_eq!(strip_full_columns(&part![3, 1], 2).unwrap(), (part![2], 1));
        assert_eq!(strip_full_columns(&part![2, 1], 3).unwrap(), (part![2, 1], 0));
        assert!(strip_full_columns(&part![1, 1, 1], 2).is_err());
    }

    #[test]
    fn lr_examples() {
        let l = part![3, 2, 1];
        assert_eq!(lr_coefficient(&l, &l, &part![]), 1);
        assert_eq!(lr_coefficient(&part![2, 1], &part![1, 1], &part![1]), 1);
        // s_2 · s_2 = s_4 + s_31 + s_22, while s_2 · s_11 = s_31 + s_211.
        assert_eq!(lr_coefficient(&part![2, 2], &part![2], &part![2]), 1);
        assert_eq!(lr_coefficient(&part![2, 2], &part![2], &part![1, 1]), 0);
        assert_eq!(lr_coefficient(&part![3, 3], &part![2, 1], &part![2, 1]), 1);
        assert_eq!(lr_coefficient(&part![4, 2, 1, 1], &part![2, 1], &part![2, 1, 1]), 0);
        assert_eq!(lr_coefficient(&part![3, 2, 1], &part![2, 1], &part![2, 1]), 2);
    }

    #[test]
    fn tensor_examples() {
        let one = part![1];
        let d: Decomposition<Partition> = [(part![2], 1), (part![1, 1], 1)].into_iter().collect();
        assert_eq!(tensor_u(&one, &one, 2), d);
        let d1: Decomposition<Partition> = [(part![2], 1)].into_iter().collect();
        assert_eq!(tensor_u(&one, &one, 1), d1);
        let expected: Decomposition<Partition> =
            [(part![4, 1], 1), (part![3, 2], 1), (part![3, 1, 1], 1), (part![2, 2, 1], 1)].into_iter().collect();
        assert_eq!(tensor_u(&part![2], &part![2, 1], 3), expected);
    }

    #[test]
    fn pieri_examples() {
        let e: Decomposition<Partition> = [(part![3], 1), (part![2, 1], 1)].into_iter().collect();
        assert_eq!(pieri_u(&part![2], 1, 2), e);
        assert_eq!(pieri_u(&part![1], 2, 2), e);
        let k: Decomposition<Partition> = [(part![4], 1)].into_iter().collect();
        assert_eq!(pieri_u(&part![], 4, 3), k);
    }

    #[test]
    fn parsing_and_display() {
        assert_eq!("[3,1]".parse::<Partition>().unwrap(), part![3, 1]);
        assert_eq!("[2,1,0]".parse::<Partition>().unwrap(), part![2, 1]);
        assert_eq!("0".parse::<Partition>().unwrap(), part![]);
        assert_eq!("[]".parse::<Partition>().unwrap(), part![]);
        assert!("[1,2]".parse::<Partition>().is_err());
        assert!("[a]".parse::<Partition>().is_err());
        assert_eq!(part![2, 1].to_string(), "[2,1]");
        assert_eq!(part![].to_string(), "0");
        assert_eq!(part![2, 1].display_padded(3), "[2,1,0]");
    }

    #[test]
    fn strip_removal_enumeration() {
        assert_eq!(horizontal_strips_removed(&part![2, 1], 1), vec![part![2], part![1, 1]]);
        assert_eq!(horizontal_strips_removed(&part![2, 2], 2), vec![part![2]]);
    }

    #[test]
    fn cache_round_trip() {
        lr_coefficient(&part![3, 2, 1], &part![2, 1], &part![2, 1]);
        let snap = lr_cache_export();
        assert!(snap.contains_key("[3,2,1]|[2,1]|[2,1]"));
        assert_eq!(lr_cache_import(&snap).unwrap(), snap.len());
        assert_eq!(lr_coefficient(&part![3, 2, 1], &part![2, 1], &part![2, 1]), 2);
    }
}
