//! Quadratic Casimir eigenvalues of u(d) and so(d) irreps, labelled by partitions.
//!
//! Normalization: χ([1]) = d for u(d) and ξ([1]) = 2(d − 1) for so(d).

use crate::error::{Error, Result};
use crate::ogroup::modify;
use crate::partitions::Partition;

/// χ(λ) = Σ λ_i(λ_i + d + 1 − 2i), rows indexed from 1.
pub fn chi_u(lambda: &Partition, d: usize) -> Result<i64> {
    if lambda.depth() > d {
        return Err(Error::DepthExceeded { label: lambda.to_string(), depth: lambda.depth(), limit: d });
    }
    let rows: Vec<i64> = lambda.rows().iter().map(|&r| i64::from(r)).collect();
    Ok(chi_formal(&rows, d))
}

/// χ evaluated on arbitrary rows, with no depth check.
pub fn chi_formal(rows: &[i64], d: usize) -> i64 {
    let d = d as i64;
    rows.iter()
        .enumerate()
        .map(|(i, &r)| r * (r + d + 1 - 2 * (i as i64 + 1)))
        .sum()
}

/// ξ evaluated on arbitrary signed rows, with no depth check.
///
/// At even d the last row of an SO(d) highest weight may be negative; the value only
/// depends on its square.
pub fn xi_formal(rows: &[i64], d: usize) -> i64 {
    let d = d as i64;
    rows.iter()
        .enumerate()
        .map(|(i, &r)| 2 * r * (r + d - 2 * (i as i64 + 1)))
        .sum()
}

/// ξ(λ) = Σ 2λ_i(λ_i + d − 2i).
///
/// Labels deeper than floor(d/2) are first passed through the modification rule; a label
/// that vanishes under modification has no so(d) eigenvalue.
pub fn xi_so(lambda: &Partition, d: usize) -> Result<i64> {
    let shape = if lambda.depth() <= d / 2 {
        lambda.clone()
    } else {
        match modify(lambda, false, d) {
            Some((_, label)) => label.shape,
            None => {
                return Err(Error::DepthExceeded { label: lambda.to_string(), depth: lambda.depth(), limit: d / 2 })
            }
        }
    };
    let rows: Vec<i64> = shape.rows().iter().map(|&r| i64::from(r)).collect();
    Ok(xi_formal(&rows, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;
    use crate::partitions::enumerate_partitions;

    type Poly = fn(i64) -> i64;

    fn chi_table() -> Vec<(Partition, Poly)> {
        vec![
            (part![], |_| 0),
            (part![1], |d| d),
            (part![1, 1], |d| 2 * (d - 1)),
            (part![2], |d| 2 * (d + 1)),
            (part![1, 1, 1], |d| 3 * (d - 2)),
            (part![2, 1], |d| 3 * d),
            (part![3], |d| 3 * (d + 2)),
            (part![1, 1, 1, 1], |d| 4 * (d - 3)),
            (part![2, 1, 1], |d| 4 * (d - 1)),
            (part![2, 2], |d| 4 * d),
            (part![3, 1], |d| 4 * (d + 1)),
            (part![4], |d| 4 * (d + 3)),
        ]
    }

    fn xi_table() -> Vec<(Partition, Poly)> {
        vec![
            (part![], |_| 0),
            (part![1], |d| 2 * (d - 1)),
            (part![1, 1], |d| 4 * (d - 2)),
            (part![2], |d| 4 * d),
            (part![1, 1, 1], |d| 6 * (d - 3)),
            (part![2, 1], |d| 6 * (d - 1)),
            (part![3], |d| 6 * (d + 1)),
            (part![1, 1, 1, 1], |d| 8 * (d - 4)),
            (part![2, 1, 1], |d| 8 * (d - 2)),
            (part![2, 2], |d| 8 * (d - 1)),
            (part![3, 1], |d| 8 * d),
            (part![4], |d| 8 * (d + 2)),
        ]
    }

    #[test]
    fn chi_table_entries() {
        for d in 2..=10usize {
            for (l, p) in chi_table() {
                let rows: Vec<i64> = l.rows().iter().map(|&r| i64::from(r)).collect();
                assert_eq!(chi_formal(&rows, d), p(d as i64), "chi({l}) at d={d}");
                if l.depth() <= d {
                    assert_eq!(chi_u(&l, d).unwrap(), p(d as i64));
                }
            }
        }
        assert!(chi_u(&part![1, 1, 1], 2).is_err());
    }

    #[test]
    fn xi_table_entries_formal() {
        for d in 2..=10usize {
            for (l, p) in xi_table() {
                let rows: Vec<i64> = l.rows().iter().map(|&r| i64::from(r)).collect();
                assert_eq!(xi_formal(&rows, d), p(d as i64), "xi({l}) at d={d}");
            }
        }
    }

    #[test]
    fn xi_examples() {
        assert_eq!(xi_so(&part![3, 1], 6).unwrap(), 48);
        assert_eq!(xi_so(&part![1], 5).unwrap(), 8);
        assert_eq!(xi_so(&part![1, 1], 2).unwrap(), 0);
        assert_eq!(xi_so(&part![], 7).unwrap(), 0);
        assert!(xi_so(&part![2, 2, 1, 1], 5).is_err());
    }

    #[test]
    fn modification_preserves_xi() {
        for d in 2..=6 {
            for n in 0..=6 {
                for l in enumerate_partitions(n, n as usize) {
                    if l.depth() <= d / 2 {
                        continue;
                    }
                    if let Some((_, image)) = modify(&l, false, d) {
                        let rows: Vec<i64> = l.rows().iter().map(|&r| i64::from(r)).collect();
                        assert_eq!(xi_formal(&rows, d), xi_so(&image.shape, d).unwrap(), "{l} -> {image} at d={d}");
                    }
                }
            }
        }
    }

    #[test]
    fn even_d_last_row_sign() {
        for n in 1..=5usize {
            let d = 2 * n;
            for size in 1..=8 {
                for l in enumerate_partitions(size, n) {
                    if l.depth() != n {
                        continue;
                    }
                    let mut rows: Vec<i64> = l.rows().iter().map(|&r| i64::from(r)).collect();
                    let plus = xi_formal(&rows, d);
                    rows[n - 1] = -rows[n - 1];
                    assert_eq!(plus, xi_formal(&rows, d));
                }
            }
        }
    }

    #[test]
    fn trivial_label_is_the_only_zero_for_large_d() {
        for d in 6..=9 {
            for n in 0..=4 {
                for l in enumerate_partitions(n, d / 2) {
                    assert_eq!(xi_so(&l, d).unwrap() == 0, l.is_empty());
                    assert_eq!(chi_u(&l, d).unwrap() == 0, l.is_empty());
                }
            }
        }
    }
}
