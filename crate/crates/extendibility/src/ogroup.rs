//! O(d) labels: associate flags, modification rules, Newell–Littlewood fusion and
//! Littlewood branching from U(d).
//!
//! The two irreps of SO(d) sharing a label at even d with a nonzero last row are not
//! distinguished here. Every quantity computed downstream depends on the last row only
//! through its square.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::partitions::{
    enumerate_partitions, horizontal_strips_added, horizontal_strips_removed, lr_coefficient, skew,
    strip_full_columns, tensor_u, Decomposition, Partition,
};

/// An O(d) tensor irrep label: a shape plus the associate ("star") flag, `Φ_λ*` = det ⊗ `Φ_λ`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OLabel {
    pub shape: Partition,
    pub associate: bool,
}

impl OLabel {
    pub fn new(shape: Partition, associate: bool) -> Self {
        OLabel { shape, associate }
    }

    pub fn plain(shape: Partition) -> Self {
        OLabel { shape, associate: false }
    }

    /// Builds a label and applies the even-d rule: a shape whose (d/2)-th row is nonzero has
    /// only one associate class, stored unstarred.
    pub fn normalized(shape: Partition, associate: bool, d: usize) -> Self {
        let associate = associate && !(d % 2 == 0 && d > 0 && shape.depth() == d / 2);
        OLabel { shape, associate }
    }

    /// True when the shape fits in floor(d/2) rows.
    pub fn is_standard(&self, d: usize) -> bool {
        self.shape.depth() <= d / 2
    }
}

impl fmt::Display for OLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.shape, if self.associate { "*" } else { "" })
    }
}

impl FromStr for OLabel {
    type Err = Error;

    /// Partition syntax with an optional trailing `*`, e.g. `[2,2]*` or `0*`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t.strip_suffix('*') {
            Some(rest) => Ok(OLabel::new(rest.parse()?, true)),
            None => Ok(OLabel::new(t.parse()?, false)),
        }
    }
}

/// Applies the modification rule to a possibly non-standard label.
///
/// Returns `None` when the label vanishes, otherwise the sign and the standard label.
pub fn modify(shape: &Partition, associate: bool, d: usize) -> Option<(i64, OLabel)> {
    let mut rows = shape.rows().to_vec();
    let mut star = associate;
    let mut sign = 1i64;
    let n = d / 2;
    while rows.len() > n {
        let p = rows.len();
        let h = 2 * p - d;
        // Walk the rim from the bottom-left cell: right while possible, otherwise up.
        let (mut i, mut j) = (p - 1, 0usize);
        for _ in 1..h {
            if j + 1 < rows[i] as usize {
                j += 1;
            } else if i > 0 {
                i -= 1;
            } else {
                return None;
            }
        }
        // The remainder is a diagram with the same first column only if the strip ends a row.
        if j + 1 != rows[i] as usize {
            return None;
        }
        let mut next: Vec<u32> = rows[..i].to_vec();
        next.extend((i..p - 1).map(|r| rows[r + 1] - 1));
        while next.last() == Some(&0) {
            next.pop();
        }
        if j % 2 == 1 {
            sign = -sign;
        }
        star = !star;
        rows = next;
    }
    let shape = Partition::new(rows).expect("rim removal leaves a partition");
    Some((sign, OLabel::normalized(shape, star, d)))
}

/// The Newell–Littlewood number N^λ_{μν} = Σ c^μ_{αβ} c^ν_{αγ} c^λ_{βγ}.
pub fn newell_littlewood(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    let (l, m, n) = (lambda.size(), mu.size(), nu.size());
    if (l + m + n) % 2 == 1 || m + n < l {
        return 0;
    }
    let a = (m + n - l) / 2;
    if a > m || a > n {
        return 0;
    }
    let mut total = 0u64;
    for alpha in enumerate_partitions(a, mu.depth().min(nu.depth()).max(1)) {
        if !mu.contains(&alpha) || !nu.contains(&alpha) {
            continue;
        }
        let betas = skew(mu, &alpha);
        let gammas = skew(nu, &alpha);
        for (beta, cb) in betas.iter() {
            if !lambda.contains(beta) {
                continue;
            }
            for (gamma, cg) in gammas.iter() {
                let cl = lr_coefficient(lambda, beta, gamma);
                total += cb as u64 * cg as u64 * cl;
            }
        }
    }
    total
}

/// Unmodified Newell–Littlewood product of two shapes: Σ_λ N^λ_{μν} λ over all λ.
pub fn nl_product(mu: &Partition, nu: &Partition) -> Decomposition<Partition> {
    let mut out = Decomposition::new();
    for a in 0..=mu.size().min(nu.size()) {
        for alpha in enumerate_partitions(a, mu.depth().min(nu.depth()).max(1)) {
            if !mu.contains(&alpha) || !nu.contains(&alpha) {
                continue;
            }
            let betas = skew(mu, &alpha);
            let gammas = skew(nu, &alpha);
            for (beta, cb) in betas.iter() {
                for (gamma, cg) in gammas.iter() {
                    out.add_scaled(&tensor_u(beta, gamma, usize::MAX), cb * cg);
                }
            }
        }
    }
    out
}

fn finalize(acc: Decomposition<OLabel>) -> Result<Decomposition<OLabel>> {
    if let Some((label, mult)) = acc.first_negative() {
        return Err(Error::NegativeMultiplicity { label: label.to_string(), mult });
    }
    Ok(acc)
}

/// Adds `mult` copies of the modified image of `(shape, star)` into `acc`.
fn accumulate_modified(acc: &mut Decomposition<OLabel>, shape: &Partition, star: bool, d: usize, mult: i64) {
    if let Some((sign, label)) = modify(shape, star, d) {
        acc.add(label, sign * mult);
    }
}

/// O(d) tensor product via Newell–Littlewood fusion followed by modification.
pub fn tensor_o(a: &OLabel, b: &OLabel, d: usize) -> Result<Decomposition<OLabel>> {
    let star = a.associate ^ b.associate;
    let mut acc = Decomposition::new();
    for (lambda, m) in nl_product(&a.shape, &b.shape).iter() {
        accumulate_modified(&mut acc, lambda, star, d, m);
    }
    finalize(acc)
}

/// Orthogonal Pieri rule `a ⊗ Φ_[k]`: remove j boxes from distinct columns, then add k − j
/// boxes in distinct columns. Labels too deep for the direct rule go through [`tensor_o`].
pub fn pieri_o(a: &OLabel, k: u32, d: usize) -> Result<Decomposition<OLabel>> {
    if a.shape.depth() >= d / 2 {
        return tensor_o(a, &OLabel::plain(Partition::row(k)), d);
    }
    let mut acc = Decomposition::new();
    for j in 0..=k.min(a.shape.size()) {
        for beta in horizontal_strips_removed(&a.shape, j) {
            for lambda in horizontal_strips_added(&beta, k - j) {
                acc.add(OLabel::normalized(lambda, a.associate, d), 1);
            }
        }
    }
    Ok(acc)
}

/// Restriction of the U(d) irrep λ to O(d), via Littlewood's rule Σ c^λ_{2κ,μ} Φ_μ.
///
/// Full columns of height d are stripped first; each one contributes a determinant and
/// toggles the associate flag of every output label.
pub fn branch_u_to_o(lambda: &Partition, d: usize) -> Result<Decomposition<OLabel>> {
    let (core, columns) = strip_full_columns(lambda, d)?;
    let star = columns % 2 == 1;
    let mut acc = Decomposition::new();
    for k in 0..=core.size() / 2 {
        for kappa in enumerate_partitions(k, core.depth().max(1)) {
            let even = kappa.doubled();
            if !core.contains(&even) {
                continue;
            }
            for (mu, c) in skew(&core, &even).iter() {
                accumulate_modified(&mut acc, mu, star, d, c);
            }
        }
    }
    finalize(acc)
}

/// Decomposition of the n-th tensor power of the defining representation, by iterated Pieri.
pub fn defining_power(n: u32, d: usize) -> Result<Decomposition<OLabel>> {
    let mut acc: Decomposition<OLabel> = [(OLabel::default(), 1)].into_iter().collect();
    for _ in 0..n {
        let mut next = Decomposition::new();
        for (label, m) in acc.iter() {
            next.add_scaled(&pieri_o(label, 1, d)?, m);
        }
        acc = next;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;

    fn ol(s: &str) -> OLabel {
        s.parse().unwrap()
    }

    fn dec(items: &[(&str, i64)]) -> Decomposition<OLabel> {
        items.iter().map(|(s, m)| (ol(s), *m)).collect()
    }

    #[test]
    fn modification_examples() {
        assert_eq!(modify(&part![2, 2, 1], false, 5), Some((1, ol("[2,2]*"))));
        assert_eq!(modify(&part![2, 2, 1, 1], false, 5), None);
        assert_eq!(modify(&part![1, 1, 1], false, 3), Some((1, ol("0*"))));
        assert_eq!(modify(&part![1, 1], false, 2), Some((1, ol("0*"))));
        assert_eq!(modify(&part![5, 1, 1], false, 4), Some((1, ol("[5]*"))));
        assert_eq!(modify(&part![4, 3, 2], false, 4), Some((-1, ol("[4,3]"))));
        assert_eq!(modify(&part![3, 1], false, 3), Some((1, ol("[3]*"))));
        assert_eq!(modify(&part![3, 2], false, 3), None);
    }

    #[test]
    fn modification_is_identity_on_standard_labels() {
        for d in 2..=7 {
            for n in 0..=6 {
                for l in enumerate_partitions(n, d / 2) {
                    for star in [false, true] {
                        let label = OLabel::normalized(l.clone(), star, d);
                        assert_eq!(modify(&l, star, d), Some((1, label)));
                    }
                }
            }
        }
    }

    #[test]
    fn newell_littlewood_examples() {
        assert_eq!(newell_littlewood(&part![1], &part![1, 1], &part![1]), 1);
        assert_eq!(newell_littlewood(&part![2], &part![1], &part![1]), 1);
        assert_eq!(newell_littlewood(&part![], &part![1], &part![1]), 1);
        assert_eq!(newell_littlewood(&part![1], &part![1], &part![1]), 0);
        assert_eq!(newell_littlewood(&part![2, 1], &part![2, 1], &part![2, 1]), 0);
        assert_eq!(newell_littlewood(&part![2, 1], &part![2, 1], &part![1, 1]), 2);
    }

    #[test]
    fn tensor_examples() {
        assert_eq!(tensor_o(&ol("[2]"), &ol("[1]"), 5).unwrap(), dec(&[("[1]", 1), ("[2,1]", 1), ("[3]", 1)]));
        assert_eq!(tensor_o(&ol("[1]"), &ol("[1]"), 2).unwrap(), dec(&[("0*", 1), ("0", 1), ("[2]", 1)]));
        assert_eq!(tensor_o(&ol("[1]"), &ol("[1]"), 4).unwrap(), dec(&[("0", 1), ("[1,1]", 1), ("[2]", 1)]));
        // At d = 3 the antisymmetric square is the pseudovector [1]*.
        assert_eq!(tensor_o(&ol("[1]"), &ol("[1]"), 3).unwrap(), dec(&[("0", 1), ("[1]*", 1), ("[2]", 1)]));
    }

    #[test]
    fn star_rules() {
        let t = tensor_o(&ol("[1]*"), &ol("[1]"), 5).unwrap();
        assert_eq!(t, dec(&[("0*", 1), ("[1,1]*", 1), ("[2]*", 1)]));
        let t = tensor_o(&ol("[1]*"), &ol("[1]*"), 5).unwrap();
        assert_eq!(t, dec(&[("0", 1), ("[1,1]", 1), ("[2]", 1)]));
    }

    #[test]
    fn pieri_examples() {
        assert_eq!(pieri_o(&ol("[2]"), 1, 5).unwrap(), dec(&[("[1]", 1), ("[2,1]", 1), ("[3]", 1)]));
        assert_eq!(pieri_o(&ol("0"), 1, 4).unwrap(), dec(&[("[1]", 1)]));
        assert_eq!(pieri_o(&ol("[1]"), 1, 3).unwrap(), tensor_o(&ol("[1]"), &ol("[1]"), 3).unwrap());
        assert_eq!(pieri_o(&ol("[1]"), 1, 7).unwrap(), dec(&[("0", 1), ("[1,1]", 1), ("[2]", 1)]));
    }

    #[test]
    fn pieri_matches_tensor() {
        for d in 2..=8 {
            for n in 0..=4 {
                for l in enumerate_partitions(n, d / 2) {
                    for k in 1..=3 {
                        let a = OLabel::normalized(l.clone(), false, d);
                        let b = OLabel::plain(Partition::row(k));
                        assert_eq!(pieri_o(&a, k, d).unwrap(), tensor_o(&a, &b, d).unwrap(), "{a} x [{k}] at d={d}");
                    }
                }
            }
        }
    }

    #[test]
    fn branching_examples() {
        assert_eq!(branch_u_to_o(&part![2], 3).unwrap(), dec(&[("0", 1), ("[2]", 1)]));
        assert_eq!(branch_u_to_o(&part![2, 1], 5).unwrap(), dec(&[("[1]", 1), ("[2,1]", 1)]));
        assert_eq!(branch_u_to_o(&part![3], 3).unwrap(), dec(&[("[1]", 1), ("[3]", 1)]));
        assert_eq!(branch_u_to_o(&part![1, 1], 2).unwrap(), dec(&[("0*", 1)]));
        assert_eq!(branch_u_to_o(&part![2, 2], 2).unwrap(), dec(&[("0", 1)]));
        assert_eq!(branch_u_to_o(&part![2, 1], 2).unwrap(), dec(&[("[1]", 1)]));
        assert_eq!(branch_u_to_o(&part![2, 2], 8).unwrap(), dec(&[("0", 1), ("[2]", 1), ("[2,2]", 1)]));
    }

    #[test]
    fn label_syntax() {
        assert_eq!(ol("[2,2]*"), OLabel::new(part![2, 2], true));
        assert_eq!(ol("0*").to_string(), "0*");
        assert_eq!(OLabel::normalized(part![2], true, 2), ol("[2]"));
        assert_eq!(OLabel::normalized(part![2], true, 3), ol("[2]*"));
    }
}
