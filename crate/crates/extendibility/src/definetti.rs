//! n-de-Finetti-extendible Brauer states.
//!
//! On each U(d) isotypic block λ ⊢ n the pair average of flips acts as a scalar fixed by
//! χ(λ); inside it, each O(d) block μ fixes the pair average of b̂ through ξ(μ). At fixed f
//! the b value is affine in ξ, so only the ξ-extremal restrictions can be hull vertices.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::casimir::{chi_u, xi_so};
use crate::error::{Error, Result};
use crate::geometry::{convex_hull_exact, convex_hull_tagged, ExactPoint, Point, Region, DEFAULT_TOL};
use crate::ogroup::branch_u_to_o;
use crate::partitions::{enumerate_partitions, strip_full_columns, Partition};
use crate::part;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn check_n(n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n = {n}; de Finetti extensions need n ≥ 2")));
    }
    Ok(())
}

fn check_d(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::OutOfRange(format!("dimension {d} < 2")));
    }
    Ok(())
}

fn check_size(lambda: &Partition, n: u32) -> Result<()> {
    if lambda.size() != n {
        return Err(Error::InvalidArgument(format!("{lambda} is not a partition of {n}")));
    }
    Ok(())
}

/// Eigenvalue of the pair-averaged flip on the λ-isotypic block of (ℂ^d)^⊗n.
pub fn f_scalar(lambda: &Partition, n: u32, d: usize) -> Result<BigRational> {
    check_n(n)?;
    check_d(d)?;
    check_size(lambda, n)?;
    let chi = q(chi_u(lambda, d)?);
    let chi1 = q(chi_u(&part![1], d)?);
    let chi2 = q(chi_u(&part![2], d)?);
    let chi11 = q(chi_u(&part![1, 1], d)?);
    let n_ = i64::from(n);
    let inner = frac(2, n_ * (n_ - 1)) * chi + frac(2 * (n_ - 2), n_ - 1) * chi1 - (&chi2 + &chi11) / q(2);
    Ok(q(2) / (chi2 - chi11) * inner)
}

/// Eigenvalue of the pair-averaged b̂ on the (λ, μ) block, μ an O(d) label inside λ.
pub fn b_scalar(lambda: &Partition, mu: &Partition, n: u32, d: usize) -> Result<BigRational> {
    let f = f_scalar(lambda, n, d)?;
    let xi = q(xi_so(mu, d)?);
    let xi1 = q(xi_so(&part![1], d)?);
    let xi2 = q(xi_so(&part![2], d)?);
    let xi11 = q(xi_so(&part![1, 1], d)?);
    let n_ = i64::from(n);
    let inner = frac(2, n_ * (n_ - 1)) * xi + frac(2 * (n_ - 2), n_ - 1) * xi1
        - (&xi2 + &xi11) / q(2)
        - (&xi2 - &xi11) / q(2) * f;
    Ok(-inner / xi2)
}

/// The O(d) labels of smallest and largest ξ in the restriction of λ, by the closed-form
/// rules for d = 2, 3, 4 and by full branching otherwise.
pub fn min_max_so(lambda: &Partition, d: usize) -> Result<(Partition, Partition)> {
    if lambda.depth() > d {
        return Err(Error::DepthExceeded { label: lambda.to_string(), depth: lambda.depth(), limit: d });
    }
    let (core, _) = strip_full_columns(lambda, d)?;
    let row = |i: usize| core.part(i);
    let p = |rows: Vec<u32>| Partition::new(rows).expect("closed-form labels are partitions");
    match d {
        2 => {
            let k = row(0);
            Ok((Partition::row(k % 2), Partition::row(k)))
        }
        3 => {
            let (a, b) = (row(0), row(1));
            let min = if a % 2 == 0 && b % 2 == 0 { Partition::empty() } else { part![1] };
            Ok((min, Partition::row(a)))
        }
        4 => {
            let (l1, l2, l3) = (row(0), row(1), row(2));
            let (z1, z2, z3) = (l1 % 2, l2 % 2, l3 % 2);
            let min = match (z1, z2) {
                (0, 0) => p(vec![z3]),
                (1, 1) => p(vec![1, 1 - z3]),
                _ => p(vec![1, z3]),
            };
            let max = p(vec![l1, l2 - l3]);
            Ok((min, max))
        }
        _ => min_max_so_general(lambda, d),
    }
}

/// Extremal-ξ labels found by scanning the full restriction of λ.
pub fn min_max_so_general(lambda: &Partition, d: usize) -> Result<(Partition, Partition)> {
    let branch = branch_u_to_o(lambda, d)?;
    let mut best: Option<((i64, Partition), (i64, Partition))> = None;
    for label in branch.labels() {
        let xi = xi_so(&label.shape, d)?;
        let entry = (xi, label.shape.clone());
        best = Some(match best {
            None => (entry.clone(), entry),
            Some((lo, hi)) => (if entry.0 < lo.0 { entry.clone() } else { lo }, if entry.0 > hi.0 { entry } else { hi }),
        });
    }
    let ((_, lo), (_, hi)) = best.expect("a restriction is never empty");
    Ok((lo, hi))
}

/// A candidate vertex: the (f, b) eigenvalue pair of one (λ, μ) block.
#[derive(Clone, Debug, PartialEq)]
pub struct CandidatePoint {
    pub point: ExactPoint,
    pub u_label: Partition,
    pub so_label: Partition,
}

impl CandidatePoint {
    fn tag(&self) -> String {
        format!("lambda={};mu={}", self.u_label, self.so_label)
    }
}

/// All candidate points for n copies in dimension d. With `exhaustive`, every label of each
/// restriction is evaluated; otherwise only the ξ-extremal ones.
pub fn candidates(n: u32, d: usize, exhaustive: bool) -> Result<Vec<CandidatePoint>> {
    check_n(n)?;
    check_d(d)?;
    let mut out = Vec::new();
    for lambda in enumerate_partitions(n, d) {
        let f = f_scalar(&lambda, n, d)?;
        let mus: Vec<Partition> = if exhaustive {
            let mut shapes: Vec<Partition> = branch_u_to_o(&lambda, d)?.labels().map(|l| l.shape.clone()).collect();
            shapes.dedup();
            shapes
        } else {
            let (lo, hi) = min_max_so(&lambda, d)?;
            if lo == hi {
                vec![lo]
            } else {
                vec![lo, hi]
            }
        };
        for mu in mus {
            let b = b_scalar(&lambda, &mu, n, d)?;
            out.push(CandidatePoint { point: ExactPoint::new(f.clone(), b), u_label: lambda.clone(), so_label: mu });
        }
    }
    Ok(out)
}

/// Exact hull vertices of the n-de-Finetti region, counter-clockwise, with their labels.
///
/// Only the lowest and highest candidate on each vertical line is kept before the hull, so
/// memory stays proportional to the number of distinct f values.
pub fn region_definetti_exact(n: u32, d: usize, exhaustive: bool) -> Result<Vec<CandidatePoint>> {
    let mut columns: BTreeMap<BigRational, (CandidatePoint, CandidatePoint)> = BTreeMap::new();
    for c in candidates(n, d, exhaustive)? {
        match columns.get_mut(&c.point.f) {
            None => {
                columns.insert(c.point.f.clone(), (c.clone(), c));
            }
            Some((lo, hi)) => {
                if c.point.b < lo.point.b {
                    *lo = c.clone();
                }
                if c.point.b > hi.point.b {
                    *hi = c;
                }
            }
        }
    }
    let mut pool: Vec<CandidatePoint> = Vec::with_capacity(2 * columns.len());
    for (_, (lo, hi)) in columns {
        if lo.point == hi.point {
            pool.push(lo);
        } else {
            pool.push(lo);
            pool.push(hi);
        }
    }
    let pts: Vec<ExactPoint> = pool.iter().map(|c| c.point.clone()).collect();
    let hull = convex_hull_exact(&pts);
    Ok(hull
        .into_iter()
        .map(|v| pool.iter().find(|c| c.point == v).expect("hull vertices come from the pool").clone())
        .collect())
}

/// The n-de-Finetti-extendible region as a floating-point [`Region`].
pub fn region_definetti(n: u32, d: usize) -> Result<Region> {
    region_definetti_with(n, d, false)
}

/// As [`region_definetti`], optionally evaluating every restriction label.
pub fn region_definetti_with(n: u32, d: usize, exhaustive: bool) -> Result<Region> {
    let verts = region_definetti_exact(n, d, exhaustive)?;
    let tagged: Vec<(Point, Option<String>)> = verts.iter().map(|c| (c.point.to_f64(), Some(c.tag()))).collect();
    let exact: Vec<serde_json::Value> =
        verts.iter().map(|c| serde_json::json!([c.point.f.to_string(), c.point.b.to_string()])).collect();
    Ok(convex_hull_tagged(&tagged, 0.0)
        .with_meta("mode", "definetti")
        .with_meta("n", n)
        .with_meta("d", d)
        .with_meta("exact_vertices", exact))
}

/// The lower boundary of the d = 3 limit shape, f = 6b − 2√(3b) + 1.
///
/// Accepts b ∈ [0, 1/3]; the boundary arc itself is b ∈ [0, 1/27], f ∈ [5/9, 1].
pub fn limit_curve_d3(b: f64) -> Result<f64> {
    if !(0.0..=1.0 / 3.0 + 1e-15).contains(&b) {
        return Err(Error::OutOfRange(format!("b = {b} outside [0, 1/3]")));
    }
    Ok(6.0 * b - 2.0 * (3.0 * b).sqrt() + 1.0)
}

type CMat = Vec<Complex64>;

fn gaussian_vector(rng: &mut ChaCha8Rng, d: usize, complex: bool) -> Vec<Complex64> {
    (0..d)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = if complex { rng.sample(StandardNormal) } else { 0.0 };
            Complex64::new(re, im)
        })
        .collect()
}

fn normalize(v: &mut [Complex64]) {
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in v {
        *z /= n;
    }
}

/// Orthonormal basis from Gram–Schmidt on Gaussian vectors.
fn random_basis(rng: &mut ChaCha8Rng, d: usize, complex: bool) -> Vec<Vec<Complex64>> {
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(d);
    while basis.len() < d {
        let mut v = gaussian_vector(rng, d, complex);
        for u in &basis {
            let overlap: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(u) {
                *x -= overlap * y;
            }
        }
        if v.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-10 {
            normalize(&mut v);
            basis.push(v);
        }
    }
    basis
}

/// Circularly polarized basis (e_{2k} ± i e_{2k+1})/√2, plus a real vector when d is odd.
fn circular_basis(d: usize) -> Vec<Vec<Complex64>> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut basis = Vec::with_capacity(d);
    for k in 0..d / 2 {
        for sign in [1.0, -1.0] {
            let mut v = vec![Complex64::new(0.0, 0.0); d];
            v[2 * k] = Complex64::new(s, 0.0);
            v[2 * k + 1] = Complex64::new(0.0, sign * s);
            basis.push(v);
        }
    }
    if d % 2 == 1 {
        let mut v = vec![Complex64::new(0.0, 0.0); d];
        v[d - 1] = Complex64::new(1.0, 0.0);
        basis.push(v);
    }
    basis
}

/// Random probability weights supported on a random nonempty subset.
fn random_weights(rng: &mut ChaCha8Rng, d: usize) -> Vec<f64> {
    let support = rng.random_range(1..=d);
    let mut idx: Vec<usize> = (0..d).collect();
    for i in 0..support {
        let j = rng.random_range(i..d);
        idx.swap(i, j);
    }
    let mut w = vec![0.0; d];
    for &i in &idx[..support] {
        w[i] = rng.sample::<f64, _>(Exp1);
    }
    let total: f64 = w.iter().sum();
    w.iter_mut().for_each(|x| *x /= total);
    w
}

fn density(basis: &[Vec<Complex64>], weights: &[f64], d: usize) -> CMat {
    let mut m = vec![Complex64::new(0.0, 0.0); d * d];
    for (v, &w) in basis.iter().zip(weights) {
        if w == 0.0 {
            continue;
        }
        for i in 0..d {
            for j in 0..d {
                m[i * d + j] += w * v[i] * v[j].conj();
            }
        }
    }
    m
}

/// (tr σ², tr(σσ̄)/d): the (f, b) point of the product state σ ⊗ σ̄ twirled onto Brauer states.
fn product_point(sigma: &CMat, d: usize) -> Point {
    let f = sigma.iter().map(|z| z.norm_sqr()).sum();
    let b = sigma.iter().map(|z| (z * z).re).sum::<f64>() / d as f64;
    Point::new(f, b)
}

/// Sampled d-dimensional limit shape: the hull of product-state points over several
/// families of single-copy states, plus the known extremes (1,0), (1,1/d), (1/d,1/d²).
pub fn region_limit(d: usize, samples: usize, seed: u64) -> Result<Region> {
    check_d(d)?;
    if samples < 1000 {
        return Err(Error::InvalidArgument(format!("samples = {samples}; at least 1000 required")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let df = d as f64;
    let circular = circular_basis(d);
    let grid = 101usize;
    let mut pts: Vec<(Point, Option<String>)> = Vec::with_capacity(samples + 3);
    for i in 0..samples {
        let sigma = match i % 6 {
            0 | 1 => {
                let mut v = gaussian_vector(&mut rng, d, i % 6 == 0);
                normalize(&mut v);
                density(&[v], &[1.0], d)
            }
            2 => {
                let step = i / 6;
                let t = (step % grid) as f64 / (grid - 1) as f64;
                let mut v = gaussian_vector(&mut rng, d, (step / grid) % 2 == 0);
                normalize(&mut v);
                let mut m = density(&[v], &[t], d);
                for k in 0..d {
                    m[k * d + k] += (1.0 - t) / df;
                }
                m
            }
            3 => {
                let basis = random_basis(&mut rng, d, true);
                density(&basis, &random_weights(&mut rng, d), d)
            }
            4 => density(&circular, &random_weights(&mut rng, d), d),
            _ => {
                let basis = random_basis(&mut rng, d, false);
                density(&basis, &random_weights(&mut rng, d), d)
            }
        };
        pts.push((product_point(&sigma, d), None));
    }
    pts.push((Point::new(1.0, 0.0), Some("complex-pure".into())));
    pts.push((Point::new(1.0, 1.0 / df), Some("real-pure".into())));
    pts.push((Point::new(1.0 / df, 1.0 / (df * df)), Some("maximally-mixed".into())));
    Ok(convex_hull_tagged(&pts, DEFAULT_TOL)
        .with_meta("mode", "limit")
        .with_meta("d", d)
        .with_meta("samples", samples)
        .with_meta("seed", seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brauer::brauer_triangle;
    use crate::geometry::{contains_exact, hausdorff};
    use crate::partitions::content_sum;

    #[test]
    fn f_scalar_examples() {
        for d in 2..=6 {
            assert_eq!(f_scalar(&part![2], 2, d).unwrap(), q(1));
            assert_eq!(f_scalar(&part![1, 1], 2, d).unwrap(), q(-1));
            assert_eq!(f_scalar(&part![2, 1], 3, d).unwrap(), q(0));
        }
        assert!(f_scalar(&part![1, 1, 1], 3, 2).is_err());
        assert!(f_scalar(&part![2], 3, 3).is_err());
    }

    #[test]
    fn f_scalar_is_normalized_content() {
        for n in 2..=8u32 {
            let pairs = i64::from(n * (n - 1) / 2);
            for lambda in enumerate_partitions(n, n as usize) {
                for d in lambda.depth().max(2)..=lambda.depth().max(2) + 3 {
                    assert_eq!(f_scalar(&lambda, n, d).unwrap(), frac(content_sum(&lambda), pairs), "{lambda} d={d}");
                }
            }
        }
    }

    #[test]
    fn b_scalar_examples() {
        for d in 3..=7 {
            assert_eq!(b_scalar(&part![2], &part![], 2, d).unwrap(), q(1));
            assert_eq!(b_scalar(&part![2], &part![2], 2, d).unwrap(), q(0));
        }
        assert_eq!(b_scalar(&part![3], &part![1], 3, 3).unwrap(), frac(5, 9));
        for d in 2..=8i64 {
            // (1, (d+2)/(3d)) is the top of the f = 1 edge for three copies.
            assert_eq!(b_scalar(&part![3], &part![1], 3, d as usize).unwrap(), frac(d + 2, 3 * d));
        }
    }

    #[test]
    fn min_max_examples() {
        assert_eq!(min_max_so(&part![2, 1], 3).unwrap(), (part![1], part![2]));
        for mu in 0..5 {
            assert_eq!(min_max_so(&part![2 * mu], 2).unwrap(), (part![], Partition::row(2 * mu)));
        }
        assert_eq!(min_max_so(&part![2, 2, 1], 4).unwrap(), (part![1], part![2, 1]));
        assert_eq!(min_max_so(&part![4, 4, 4], 4).unwrap().1, part![4]);
        assert_eq!(min_max_so(&part![2, 1, 1], 4).unwrap().1, part![2]);
    }

    fn xi_of(l: &Partition, d: usize) -> i64 {
        xi_so(l, d).unwrap()
    }

    #[test]
    fn fast_paths_agree_with_branching() {
        for d in 2..=4usize {
            for n in 0..=16 {
                for lambda in enumerate_partitions(n, d) {
                    let (lo, hi) = min_max_so(&lambda, d).unwrap();
                    let (glo, ghi) = min_max_so_general(&lambda, d).unwrap();
                    assert_eq!(xi_of(&lo, d), xi_of(&glo, d), "min for {lambda} at d={d}: {lo} vs {glo}");
                    assert_eq!(xi_of(&hi, d), xi_of(&ghi, d), "max for {lambda} at d={d}: {hi} vs {ghi}");
                    let shapes: Vec<Partition> =
                        branch_u_to_o(&lambda, d).unwrap().labels().map(|l| l.shape.clone()).collect();
                    assert!(shapes.contains(&lo) && shapes.contains(&hi), "{lambda} at d={d}");
                }
            }
        }
    }

    #[test]
    fn three_copies_in_three_dimensions() {
        let verts = region_definetti_exact(3, 3, false).unwrap();
        let pts: Vec<ExactPoint> = verts.iter().map(|c| c.point.clone()).collect();
        assert_eq!(
            pts,
            vec![
                ExactPoint::new(q(-1), q(0)),
                ExactPoint::new(q(1), q(0)),
                ExactPoint::new(q(1), frac(5, 9))
            ]
        );
        let all: Vec<ExactPoint> = candidates(3, 3, false).unwrap().into_iter().map(|c| c.point).collect();
        assert!(all.contains(&ExactPoint::new(q(0), frac(2, 9))));
        assert!(all.contains(&ExactPoint::new(q(0), q(0))));
    }

    #[test]
    fn two_copies_give_the_triangle() {
        for d in 2..=7 {
            let r = region_definetti(2, d).unwrap();
            assert_eq!(r.vertices(), brauer_triangle().vertices());
        }
    }

    #[test]
    fn exhaustive_mode_gives_the_same_hull() {
        for d in 2..=5 {
            for n in 2..=7 {
                let fast: Vec<ExactPoint> =
                    region_definetti_exact(n, d, false).unwrap().into_iter().map(|c| c.point).collect();
                let full: Vec<ExactPoint> =
                    region_definetti_exact(n, d, true).unwrap().into_iter().map(|c| c.point).collect();
                assert_eq!(fast, full, "n={n} d={d}");
            }
        }
    }

    #[test]
    fn regions_shrink_with_n() {
        for d in 2..=4 {
            let mut prev: Vec<ExactPoint> =
                region_definetti_exact(2, d, false).unwrap().into_iter().map(|c| c.point).collect();
            for n in 3..=8 {
                let cur: Vec<ExactPoint> =
                    region_definetti_exact(n, d, false).unwrap().into_iter().map(|c| c.point).collect();
                assert!(cur.iter().all(|p| contains_exact(&prev, p)), "n={n} d={d}");
                let mm = ExactPoint::new(frac(1, d as i64), frac(1, (d * d) as i64));
                assert!(contains_exact(&cur, &mm));
                prev = cur;
            }
        }
    }

    #[test]
    fn limit_curve_values() {
        assert!((limit_curve_d3(1.0 / 3.0).unwrap() - 1.0).abs() < 1e-12);
        assert!((limit_curve_d3(1.0 / 27.0).unwrap() - 5.0 / 9.0).abs() < 1e-12);
        let v = limit_curve_d3(1.0 / 9.0).unwrap();
        assert!((v - (5.0 / 3.0 - 2.0 / 3f64.sqrt())).abs() < 1e-12);
        assert!((v - 0.5119).abs() < 1e-4);
        assert!(limit_curve_d3(-0.1).is_err());
        assert!(limit_curve_d3(0.5).is_err());
    }

    #[test]
    fn limit_region_examples() {
        let r3 = region_limit(3, 6000, 7).unwrap();
        assert!(r3.contains(Point::new(1.0 / 3.0, 1.0 / 9.0), 1e-12));
        let r2 = region_limit(2, 3000, 7).unwrap();
        assert!(r2.contains(Point::new(1.0, 0.5), 1e-12));
        assert!(r2.contains(Point::new(1.0, 0.0), 1e-12));
        assert!(region_limit(3, 10, 1).is_err());
        let again = region_limit(3, 6000, 7).unwrap();
        assert_eq!(hausdorff(&r3, &again), 0.0);
    }

    #[test]
    fn circular_states_trace_the_limit_curve() {
        let basis = circular_basis(3);
        for k in 0..=20 {
            let s = k as f64 / 60.0;
            let p = product_point(&density(&basis, &[1.0 - s, 0.0, s], 3), 3);
            assert!((p.f - limit_curve_d3(p.b).unwrap()).abs() < 1e-12);
        }
    }
}
