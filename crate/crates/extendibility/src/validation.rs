//! The acceptance criteria and the cross-module invariant suites, each reported as one
//! pass/fail line with supporting measurements.

use std::collections::HashMap;
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::brauer::{brauer_triangle, maximally_mixed, separable_region};
use crate::casimir::{chi_formal, chi_u, xi_formal, xi_so};
use crate::definetti::{limit_curve_d3, min_max_so, min_max_so_general, region_definetti, region_definetti_exact, region_definetti_with, region_limit};
use crate::error::Result;
use crate::geometry::{contains_exact, convex_hull, excess, hausdorff, ExactPoint, Point, Region};
use crate::ogroup::{branch_u_to_o, defining_power, pieri_o, tensor_o, OLabel};
use crate::oracle::{oracle_range, Kind, Mode, NumericalRange, OracleConfig, Space};
use crate::partitions::{enumerate_partitions, hook_dim_sn, lr_coefficient, Decomposition, Partition};
use crate::twosided::{generators_with, region_closed_form, region_closed_form_with, Case, CurveForm, DEFAULT_RESOLUTION};

/// Seed used for the sampled d = 3 limit shape.
pub const LIMIT_SEED: u64 = 20_240_917;

/// Settings for an acceptance run.
#[derive(Clone, Debug, PartialEq)]
pub struct Options {
    /// Oracle angles for the de Finetti comparison.
    pub definetti_angles: usize,
    /// Oracle angles for the two-sided cases.
    pub twosided_angles: usize,
    pub limit_samples: usize,
    pub limit_seed: u64,
    /// Fail a criterion that exceeds its runtime budget.
    pub enforce_budgets: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { definetti_angles: 720, twosided_angles: 360, limit_samples: 100_000, limit_seed: LIMIT_SEED, enforce_budgets: true }
    }
}

/// Outcome of one criterion or suite.
#[derive(Clone, Debug)]
pub struct Report {
    pub id: String,
    pub title: &'static str,
    pub passed: bool,
    /// One-line summary of the decisive measurements.
    pub summary: String,
    /// Failed checks and diagnostics.
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{status}] {} {}: {} ({:.2} s)", self.id, self.title, self.summary, self.elapsed.as_secs_f64())
    }
}

#[derive(Default)]
struct Checks {
    failures: Vec<String>,
    notes: Vec<String>,
    summary: Vec<String>,
}

impl Checks {
    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }

    fn summary(&mut self, what: impl Into<String>) {
        self.summary.push(what.into());
    }

    fn finish(self, id: &str, title: &'static str, start: Instant, budget: Option<Duration>) -> Report {
        let elapsed = start.elapsed();
        let mut failures = self.failures;
        if let Some(b) = budget {
            if elapsed > b {
                failures.push(format!("runtime {:.1} s exceeds the {:.0} s budget", elapsed.as_secs_f64(), b.as_secs_f64()));
            }
        }
        let passed = failures.is_empty();
        let mut notes: Vec<String> = failures.into_iter().map(|f| format!("failed: {f}")).collect();
        notes.extend(self.notes);
        Report { id: id.to_string(), title, passed, summary: self.summary.join("; "), notes, elapsed }
    }
}

fn errored(id: &str, title: &'static str, start: Instant, e: crate::Error) -> Report {
    Report { id: id.into(), title, passed: false, summary: format!("error: {e}"), notes: vec![], elapsed: start.elapsed() }
}

fn run_checks(id: &str, title: &'static str, budget: Option<Duration>, body: impl FnOnce(&mut Checks) -> Result<()>) -> Report {
    let start = Instant::now();
    let mut c = Checks::default();
    match body(&mut c) {
        Ok(()) => c.finish(id, title, start, budget),
        Err(e) => errored(id, title, start, e),
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn label(s: &str) -> OLabel {
    s.parse().expect("label literals are well formed")
}

fn decomposition(items: &[&str]) -> Decomposition<OLabel> {
    items.iter().map(|s| (label(s), 1)).collect()
}

fn part(s: &str) -> Partition {
    s.parse().expect("partition literals are well formed")
}

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Quadratic Casimir eigenvalues of the twelve labels with at most four boxes.
pub fn criterion_1() -> Report {
    type Poly = fn(i64) -> i64;
    let chi: [(&str, Poly); 12] = [
        ("0", |_| 0),
        ("[1]", |d| d),
        ("[1,1]", |d| 2 * (d - 1)),
        ("[2]", |d| 2 * (d + 1)),
        ("[1,1,1]", |d| 3 * (d - 2)),
        ("[2,1]", |d| 3 * d),
        ("[3]", |d| 3 * (d + 2)),
        ("[1,1,1,1]", |d| 4 * (d - 3)),
        ("[2,1,1]", |d| 4 * (d - 1)),
        ("[2,2]", |d| 4 * d),
        ("[3,1]", |d| 4 * (d + 1)),
        ("[4]", |d| 4 * (d + 3)),
    ];
    let xi: [(&str, Poly); 12] = [
        ("0", |_| 0),
        ("[1]", |d| 2 * (d - 1)),
        ("[1,1]", |d| 4 * (d - 2)),
        ("[2]", |d| 4 * d),
        ("[1,1,1]", |d| 6 * (d - 3)),
        ("[2,1]", |d| 6 * (d - 1)),
        ("[3]", |d| 6 * (d + 1)),
        ("[1,1,1,1]", |d| 8 * (d - 4)),
        ("[2,1,1]", |d| 8 * (d - 2)),
        ("[2,2]", |d| 8 * (d - 1)),
        ("[3,1]", |d| 8 * d),
        ("[4]", |d| 8 * (d + 2)),
    ];
    run_checks("criterion 1", "Casimir tables", Some(secs(1)), |c| {
        let mut entries = 0;
        for d in 2..=10usize {
            let di = d as i64;
            for (s, expected) in chi {
                let lambda = part(s);
                let rows: Vec<i64> = lambda.rows().iter().map(|&r| i64::from(r)).collect();
                c.check(chi_formal(&rows, d) == expected(di), format!("χ({s}) at d={d}"));
                if lambda.depth() <= d {
                    c.check(chi_u(&lambda, d)? == expected(di), format!("chi_u({s}) at d={d}"));
                }
                entries += 1;
            }
            for (s, expected) in xi {
                let lambda = part(s);
                let rows: Vec<i64> = lambda.rows().iter().map(|&r| i64::from(r)).collect();
                c.check(xi_formal(&rows, d) == expected(di), format!("ξ({s}) at d={d}"));
                if let Ok(v) = xi_so(&lambda, d) {
                    c.check(v == expected(di), format!("xi_so({s}) at d={d}"));
                }
                entries += 1;
            }
        }
        c.summary(format!("{entries} table entries over d = 2..10"));
        Ok(())
    })
}

/// O(d) content of one left/right pair of symmetric-group blocks.
fn bracket(left: &Partition, right: &Partition, d: usize) -> Result<Decomposition<OLabel>> {
    let l = branch_u_to_o(left, d)?;
    let r = branch_u_to_o(right, d)?;
    let mut acc = Decomposition::new();
    for (a, ma) in l.iter() {
        for (b, mb) in r.iter() {
            acc.add_scaled(&tensor_o(a, b, d)?, ma * mb);
        }
    }
    Ok(acc)
}

/// D₄ irreps as (name, dimension) and the S₄ irreps whose restriction contains them.
const D4_RESTRICTIONS: [(&str, i64, &[&str]); 5] = [
    ("1", 1, &["[4]", "[2,2]"]),
    ("1*", 1, &["[3,1]"]),
    ("1bar", 1, &["[1,1,1,1]", "[2,2]"]),
    ("1bar*", 1, &["[2,1,1]"]),
    ("2", 2, &["[3,1]", "[2,1,1]"]),
];

/// Decompositions of the (1,2), (1,3) and (2,2) extensions and of the D₄ blocks of four copies.
pub fn criterion_2() -> Report {
    run_checks("criterion 2", "Schur–Weyl decompositions of the extensions", Some(secs(5)), |c| {
        let cases: [(&str, &str, usize, &[&str]); 10] = [
            ("[1]", "[1,1]", 6, &["[1]", "[1,1,1]", "[2,1]"]),
            ("[1]", "[2]", 6, &["[1]", "[1]", "[2,1]", "[3]"]),
            ("[1]", "[1,1,1]", 8, &["[1,1]", "[1,1,1,1]", "[2,1,1]"]),
            ("[1]", "[2,1]", 8, &["0", "[1,1]", "[1,1]", "[2]", "[2]", "[2,1,1]", "[2,2]", "[3,1]"]),
            ("[1]", "[3]", 8, &["0", "[1,1]", "[2]", "[2]", "[3,1]", "[4]"]),
            ("[1,1]", "[1,1]", 8, &["0", "[1,1]", "[2]", "[1,1,1,1]", "[2,1,1]", "[2,2]"]),
            ("[1,1]", "[2]", 8, &["[1,1]", "[1,1]", "[2]", "[2,1,1]", "[3,1]"]),
            ("[2]", "[1,1]", 8, &["[1,1]", "[1,1]", "[2]", "[2,1,1]", "[3,1]"]),
            ("[2]", "[2]", 8, &["0", "0", "[1,1]", "[2]", "[2]", "[2]", "[2,2]", "[3,1]", "[4]"]),
            ("[1]", "[1]", 8, &["0", "[1,1]", "[2]"]),
        ];
        for (l, r, d, expected) in cases {
            let got = bracket(&part(l), &part(r), d)?;
            c.check(got == decomposition(expected), format!("{l} ⊗ {r} at d={d}: got {}", got.to_json()));
        }
        let d = 8;
        let expected_blocks: [(&str, &[&str]); 5] = [
            ("1", &["0", "[2]", "[2,2]", "0", "[2]", "[4]"]),
            ("1*", &["[1,1]", "[2]", "[3,1]"]),
            ("1bar", &["[1,1,1,1]", "0", "[2]", "[2,2]"]),
            ("1bar*", &["[1,1]", "[2,1,1]"]),
            ("2", &["[1,1]", "[2,1,1]", "[1,1]", "[2]", "[3,1]"]),
        ];
        let mut union = Decomposition::new();
        for ((name, dim, sources), (block_name, block_labels)) in D4_RESTRICTIONS.iter().zip(expected_blocks) {
            debug_assert_eq!(*name, block_name);
            let mut block = Decomposition::new();
            for s in *sources {
                block.add_scaled(&branch_u_to_o(&part(s), d)?, 1);
            }
            c.check(block == decomposition(block_labels), format!("D₄ block {name}: got {}", block.to_json()));
            union.add_scaled(&decomposition(block_labels), *dim);
        }
        let power = defining_power(4, d)?;
        c.check(union == power, format!("weighted D₄ union {} vs Pieri power {}", union.to_json(), power.to_json()));
        c.summary(format!("10 brackets and 5 D₄ blocks exact; weighted union = Φ₁^⊗4 at d=8 ({} copies)", power.total()));
        Ok(())
    })
}

/// Σ_λ dim(S_λ)·Res(λ) equals the iterated-Pieri power of the defining representation.
pub fn criterion_3() -> Report {
    run_checks("criterion 3", "Schur–Weyl consistency", Some(secs(30)), |c| {
        let mut cases = 0;
        for d in 2..=8usize {
            for n in 0..=6u32 {
                let mut acc = Decomposition::new();
                for lambda in enumerate_partitions(n, d) {
                    let dim = i64::try_from(hook_dim_sn(&lambda)).expect("small symmetric-group dimension");
                    acc.add_scaled(&branch_u_to_o(&lambda, d)?, dim);
                }
                let power = defining_power(n, d)?;
                c.check(acc == power, format!("n={n} d={d}"));
                cases += 1;
            }
        }
        c.summary(format!("{cases} (n, d) pairs agree"));
        Ok(())
    })
}

/// Numerical ranges computed once and shared between criteria.
#[derive(Default)]
pub struct OracleCache {
    ranges: HashMap<(String, usize, usize), NumericalRange>,
}

impl OracleCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn range(&mut self, mode: Mode, d: usize, angles: usize) -> Result<&NumericalRange> {
        let key = (mode.to_string(), d, angles);
        if !self.ranges.contains_key(&key) {
            let config = OracleConfig { angles, ..OracleConfig::default() };
            let nr = oracle_range(mode, d, &config)?;
            self.ranges.insert(key.clone(), nr);
        }
        Ok(&self.ranges[&key])
    }
}

/// Exact de Finetti regions against the oracle.
pub fn criterion_4(opts: &Options, cache: &mut OracleCache) -> Report {
    run_checks("criterion 4", "de Finetti regions equal the oracle", Some(secs(300)), |c| {
        let mut worst: f64 = 0.0;
        for (n, d) in [(3u32, 2usize), (4, 2), (3, 3), (4, 3), (3, 4)] {
            let start = Instant::now();
            let exact = region_definetti(n, d)?;
            let nr = cache.range(Mode::Definetti { n: n as usize }, d, opts.definetti_angles)?;
            let h = hausdorff(&exact, &nr.inner);
            worst = worst.max(h);
            c.check(h <= 1e-6, format!("(n,d)=({n},{d}): Hausdorff {h:.2e}"));
            if opts.enforce_budgets {
                c.check(start.elapsed() < secs(60), format!("(n,d)=({n},{d}) took {:.1} s", start.elapsed().as_secs_f64()));
            }
            c.note(format!("({n},{d}): Hausdorff {h:.2e}, oracle gap {:.2e}", nr.gap));
        }
        c.summary(format!("max Hausdorff {worst:.2e} ≤ 1e-6 over 5 cases"));
        Ok(())
    })
}

/// Pair averages against their Casimir expressions, and de Finetti commutation.
pub fn criterion_5() -> Report {
    run_checks("criterion 5", "Casimir formula identities", Some(secs(60)), |c| {
        let mut worst_identity: f64 = 0.0;
        let mut worst_commutator: f64 = 0.0;
        let modes = [
            (Mode::Definetti { n: 3 }, 2),
            (Mode::Definetti { n: 3 }, 3),
            (Mode::Definetti { n: 2 }, 4),
            (Mode::Twosided { n: 1, m: 2 }, 2),
            (Mode::Twosided { n: 1, m: 2 }, 3),
            (Mode::Twosided { n: 2, m: 2 }, 2),
        ];
        for (mode, d) in modes {
            let space = Space::new(mode.sites(), d, 1024)?;
            let f = space.savg(mode, Kind::F)?;
            let b = space.savg(mode, Kind::B)?;
            for (kind, direct) in [(Kind::F, &f), (Kind::B, &b)] {
                let diff = direct.max_abs_diff(&space.savg_from_casimirs(mode, kind)?);
                worst_identity = worst_identity.max(diff);
                c.check(diff <= 1e-10, format!("{mode} d={d} {kind:?}: {diff:.2e}"));
            }
            if let Mode::Definetti { .. } = mode {
                let comm = f.commutator_norm(&b);
                worst_commutator = worst_commutator.max(comm);
                c.check(comm <= 1e-10, format!("{mode} d={d}: ‖[Ŝf, Ŝb]‖ = {comm:.2e}"));
            }
        }
        c.summary(format!("max entrywise deviation {worst_identity:.2e}, max de Finetti commutator {worst_commutator:.2e}"));
        Ok(())
    })
}

fn twosided_mode(n: usize, m: usize) -> Mode {
    Mode::Twosided { n, m }
}

/// Structural claims about the two-sided regions, checked on the oracle.
pub fn criterion_6(opts: &Options, cache: &mut OracleCache) -> Report {
    run_checks("criterion 6", "two-sided claims via the oracle", Some(secs(300)), |c| {
        let a = opts.twosided_angles;
        for d in 2..=4usize {
            for (n, m) in [(1, 2), (1, 3), (2, 2)] {
                cache.range(twosided_mode(n, m), d, a)?;
            }
        }
        let get = |cache: &mut OracleCache, n, m, d| cache.range(twosided_mode(n, m), d, a).cloned();

        // (a) (1,2) against (2,2).
        let mut coincide = Vec::new();
        for d in 2..=4usize {
            let h = hausdorff(&get(cache, 1, 2, d)?.inner, &get(cache, 2, 2, d)?.inner);
            if d == 3 {
                c.check(h > 1e-3, format!("(a) (1,2) and (2,2) should differ at d=3: Hausdorff {h:.2e}"));
            } else {
                c.check(h <= 1e-6, format!("(a) (1,2) and (2,2) should coincide at d={d}: Hausdorff {h:.2e}"));
            }
            coincide.push(format!("d={d} {h:.1e}"));
        }
        c.summary(format!("(a) H[(1,2),(2,2)]: {}", coincide.join(", ")));

        // (b) inner(A) ⊆ outer(B) certifies A ⊆ B.
        let mut worst: f64 = 0.0;
        for d in 2..=4usize {
            let outer12 = get(cache, 1, 2, d)?.outer;
            for (n, m) in [(1, 3), (2, 2)] {
                let e = excess(&get(cache, n, m, d)?.inner, &outer12);
                worst = worst.max(e);
                c.check(e <= 1e-9, format!("(b) ({n},{m}) ⊄ (1,2) at d={d}: excess {e:.2e}"));
            }
        }
        c.summary(format!("(b) max excess {worst:.1e}"));

        // (c) corner membership.
        for d in 2..=4usize {
            for (n, m, gate) in [(1, 2, 3), (1, 3, 4), (2, 2, 4)] {
                let nr = get(cache, n, m, d)?;
                let right = nr.inner.boundary_distance(Point::new(1.0, 0.0));
                c.check(right <= 1e-9, format!("(c) (1,0) off the ({n},{m}) boundary at d={d}: {right:.2e}"));
                let left = Point::new(-1.0, 0.0);
                if d >= gate {
                    c.check(nr.inner.contains(left, 1e-9), format!("(c) (−1,0) missing from ({n},{m}) at d={d}"));
                } else {
                    let dist = nr.outer.distance(left);
                    c.check(dist > 1e-9, format!("(c) (−1,0) should be outside ({n},{m}) at d={d}: outer distance {dist:.2e}"));
                }
            }
        }
        c.summary("(c) corners as gated".to_string());

        // (d) separable rectangle, within the certified inner/outer gap.
        let mut worst_sep: f64 = 0.0;
        for d in 2..=4usize {
            let sep = separable_region(d)?;
            for (n, m) in [(1, 2), (1, 3), (2, 2)] {
                let nr = get(cache, n, m, d)?;
                let outside_outer = excess(&sep, &nr.outer);
                let outside_inner = excess(&sep, &nr.inner);
                worst_sep = worst_sep.max(outside_inner);
                c.check(outside_outer <= 1e-9, format!("(d) separable ⊄ outer ({n},{m}) at d={d}: {outside_outer:.2e}"));
                c.check(outside_inner <= nr.gap + 1e-12, format!("(d) separable beyond inner ({n},{m}) at d={d} by {outside_inner:.2e} > gap {:.2e}", nr.gap));
            }
        }
        c.summary(format!("(d) separable excess over inner ≤ {worst_sep:.1e} (within oracle gap)"));
        Ok(())
    })
}

/// The (1,3) generator (0,(d−1)/(3d)) of the R[2,1]/0 block. It is a hull generator but lies
/// strictly inside the region for every d, so criterion 7's boundary check on it cannot pass.
pub const INTERIOR_GENERATOR: &str = "(0,(d−1)/(3d))";

/// Closed forms against the oracle.
pub fn criterion_7(opts: &Options, cache: &mut OracleCache) -> Report {
    run_checks("criterion 7", "closed forms vs oracle", Some(secs(300)), |c| {
        let a = opts.twosided_angles;
        let mut worst13: f64 = 0.0;
        for d in 2..=4usize {
            let nr = cache.range(twosided_mode(1, 3), d, a)?.clone();
            let closed = region_closed_form(Case::OneThree, d, DEFAULT_RESOLUTION)?;
            let h = hausdorff(&closed, &nr.inner);
            worst13 = worst13.max(h);
            c.check(h <= 1e-4, format!("(1,3) d={d}: Hausdorff {h:.2e}"));
            let df = d as f64;
            let anchors = [
                ("(1,(d+2)/(3d))", Point::new(1.0, (df + 2.0) / (3.0 * df))),
                (INTERIOR_GENERATOR, Point::new(0.0, (df - 1.0) / (3.0 * df))),
                ("(−1/3,0)", Point::new(-1.0 / 3.0, 0.0)),
            ];
            for (name, p) in anchors {
                let dist = nr.inner.boundary_distance(p);
                let inside = if nr.inner.contains(p, 1e-9) { "inside" } else { "outside" };
                c.check(dist <= 1e-6, format!("(1,3) d={d}: {name} is {inside}, {dist:.2e} from the boundary"));
            }
        }
        c.summary(format!("(1,3) max Hausdorff {worst13:.1e}"));
        for (case, gate) in [(Case::OneTwo, 3), (Case::TwoTwo, 4)] {
            let (n, m) = case.sizes();
            for d in 2..=4usize {
                let nr = cache.range(twosided_mode(n, m), d, a)?.clone();
                let df = d as f64;
                let mut anchors = vec![Point::new(1.0, 0.0), Point::new(1.0, (2.0 * (df + 2.0)).sqrt() / (6.0 * df))];
                if d >= gate {
                    anchors.push(Point::new(-1.0, 0.0));
                }
                for p in anchors {
                    let dist = nr.inner.boundary_distance(p);
                    c.check(dist <= 1e-4, format!("({case}) d={d}: ({:.4},{:.4}) is {dist:.2e} from the boundary", p.f, p.b));
                }
                let printed = hausdorff(&region_closed_form(case, d, DEFAULT_RESOLUTION)?, &nr.inner);
                let corrected = hausdorff(&region_closed_form_with(case, d, DEFAULT_RESOLUTION, CurveForm::Corrected)?, &nr.inner);
                c.note(format!("({case}) d={d}: closed form vs oracle Hausdorff, printed curve {printed:.2e}, corrected curve {corrected:.2e}"));
            }
        }
        c.summary("(1,2)/(2,2) anchors on the oracle boundary; curve agreement reported below".to_string());
        Ok(())
    })
}

fn exact_vertices(n: u32, d: usize) -> Result<Vec<ExactPoint>> {
    Ok(region_definetti_exact(n, d, false)?.into_iter().map(|c| c.point).collect())
}

/// Nesting, maximally mixed membership and the two-copy triangle, in exact arithmetic.
pub fn criterion_8() -> Report {
    run_checks("criterion 8", "de Finetti nesting", Some(secs(60)), |c| {
        for d in 2..=4usize {
            let di = d as i64;
            let mixed = ExactPoint::new(rational(1, di), rational(1, di * di));
            let triangle = vec![
                ExactPoint::new(rational(-1, 1), rational(0, 1)),
                ExactPoint::new(rational(1, 1), rational(0, 1)),
                ExactPoint::new(rational(1, 1), rational(1, 1)),
            ];
            let two = exact_vertices(2, d)?;
            c.check(two == triangle, format!("region(2,{d}) is not the Brauer triangle"));
            let mut prev = two;
            for n in 3..=11u32 {
                let cur = exact_vertices(n, d)?;
                c.check(cur.iter().all(|v| contains_exact(&prev, v)), format!("region({n},{d}) ⊄ region({},{d})", n - 1));
                c.check(contains_exact(&cur, &mixed), format!("(1/d,1/d²) ∉ region({n},{d})"));
                prev = cur;
            }
        }
        c.summary("exact nesting for n = 2..11, d = 2..4; maximally mixed point in every region; region(2,d) = triangle".to_string());
        Ok(())
    })
}

/// b on the lower limit arc at a given f ∈ [5/9, 1].
fn limit_arc_b(f: f64) -> f64 {
    let s = (1.0 - (2.0 * f - 1.0).sqrt()) / 2.0;
    s * s / 3.0
}

/// The sampled d = 3 limit shape.
pub fn criterion_9(opts: &Options) -> Report {
    run_checks("criterion 9", "d = 3 limit shape", Some(secs(120)), |c| {
        let limit = region_limit(3, opts.limit_samples, opts.limit_seed)?;
        let mut worst: f64 = 0.0;
        for k in 0..=200 {
            let f = 5.0 / 9.0 + (4.0 / 9.0) * k as f64 / 200.0;
            let b = limit_arc_b(f);
            debug_assert!((limit_curve_d3(b).unwrap_or(f) - f).abs() < 1e-9);
            let dist = limit.boundary_distance(Point::new(f, b));
            worst = worst.max(dist);
        }
        c.check(worst <= 1e-2, format!("arc deviation {worst:.2e}"));
        let mut hs = Vec::new();
        for n in [5u32, 10, 20, 50] {
            hs.push(hausdorff(&region_definetti(n, 3)?, &limit));
        }
        c.check(hs.windows(2).all(|w| w[1] <= w[0] + 1e-12), format!("Hausdorff sequence {hs:?} is not non-increasing"));
        for v in [Point::new(1.0, 1.0 / 3.0), Point::new(1.0 / 3.0, 1.0 / 9.0)] {
            let nearest = limit.vertices().iter().map(|p| p.dist(v)).fold(f64::INFINITY, f64::min);
            c.check(nearest <= 1e-3, format!("vertex ({:.4},{:.4}) missed by {nearest:.2e}", v.f, v.b));
        }
        c.summary(format!(
            "arc deviation {worst:.1e} ≤ 1e-2; H(n=5,10,20,50) = {}",
            hs.iter().map(|h| format!("{h:.3e}")).collect::<Vec<_>>().join(", ")
        ));
        Ok(())
    })
}

/// Runs the selected criteria (all when `only` is empty), handing each report to `sink` as
/// soon as it is ready.
pub fn run_acceptance(opts: &Options, only: &[u8], mut sink: impl FnMut(&Report)) -> Vec<Report> {
    let mut cache = OracleCache::new();
    let mut out = Vec::new();
    for id in 1..=9u8 {
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        let mut r = match id {
            1 => criterion_1(),
            2 => criterion_2(),
            3 => criterion_3(),
            4 => criterion_4(opts, &mut cache),
            5 => criterion_5(),
            6 => criterion_6(opts, &mut cache),
            7 => criterion_7(opts, &mut cache),
            8 => criterion_8(),
            _ => criterion_9(opts),
        };
        if !opts.enforce_budgets {
            r.notes.retain(|n| !n.contains("budget"));
            r.passed = !r.notes.iter().any(|n| n.starts_with("failed:"));
        }
        sink(&r);
        out.push(r);
    }
    out
}

/// Fast cross-module invariant suites.
pub fn invariant_suites() -> Vec<Report> {
    vec![
        run_checks("suite partitions", "LR symmetry", None, |c| {
            let mut count = 0;
            for n in 0..=8u32 {
                for lambda in enumerate_partitions(n, 8) {
                    for k in 0..=n {
                        for mu in enumerate_partitions(k, 8) {
                            for nu in enumerate_partitions(n - k, 8) {
                                c.check(lr_coefficient(&lambda, &mu, &nu) == lr_coefficient(&lambda, &nu, &mu), format!("c^{lambda}_{{{mu},{nu}}}"));
                                count += 1;
                            }
                        }
                    }
                }
            }
            c.summary(format!("{count} coefficients symmetric"));
            Ok(())
        }),
        run_checks("suite ogroup", "Pieri and tensor rules agree", None, |c| {
            let mut count = 0;
            for d in 4..=7usize {
                for n in 0..=3u32 {
                    for shape in enumerate_partitions(n, d / 2) {
                        let a = OLabel::plain(shape);
                        for k in 1..=2u32 {
                            c.check(pieri_o(&a, k, d)? == tensor_o(&a, &OLabel::plain(Partition::row(k)), d)?, format!("{a} ⊗ [{k}] at d={d}"));
                            count += 1;
                        }
                    }
                }
            }
            c.summary(format!("{count} products"));
            Ok(())
        }),
        run_checks("suite casimir", "ξ is constant on branching images", None, |c| {
            let mut count = 0;
            for d in 2..=7usize {
                for n in 0..=6u32 {
                    for lambda in enumerate_partitions(n, d) {
                        for l in branch_u_to_o(&lambda, d)?.labels() {
                            c.check(xi_so(&l.shape, d).is_ok(), format!("ξ undefined for {l} at d={d}"));
                            count += 1;
                        }
                    }
                }
            }
            c.summary(format!("{count} branching labels are standard"));
            Ok(())
        }),
        run_checks("suite definetti", "fast extremal rules and exhaustive hulls", None, |c| {
            let mut count = 0;
            for d in 2..=4usize {
                for n in 0..=12u32 {
                    for lambda in enumerate_partitions(n, d) {
                        c.check(min_max_so(&lambda, d)? == min_max_so_general(&lambda, d)?, format!("{lambda} at d={d}"));
                        count += 1;
                    }
                }
                for n in 2..=8u32 {
                    let fast = region_definetti(n, d)?;
                    let full = region_definetti_with(n, d, true)?;
                    c.check(hausdorff(&fast, &full) == 0.0, format!("exhaustive hull differs at n={n} d={d}"));
                }
            }
            c.summary(format!("{count} labels; extremal hulls equal exhaustive hulls for n ≤ 8"));
            Ok(())
        }),
        run_checks("suite geometry", "hull idempotence and metric axioms", None, |c| {
            let polys: Vec<Region> = (0..20)
                .map(|k| {
                    let pts: Vec<Point> = (0..12)
                        .map(|j| {
                            let t = (j * 7 + k * 3) as f64 * 0.61;
                            Point::new(t.cos() * (1.0 + 0.1 * k as f64), (1.3 * t).sin())
                        })
                        .collect();
                    convex_hull(&pts, 1e-12)
                })
                .collect();
            for r in &polys {
                let again = convex_hull(r.vertices(), 1e-12);
                c.check(again.vertices() == r.vertices(), "hull is not idempotent");
                c.check(r.vertices().iter().all(|&v| r.contains(v, 1e-12)), "vertex outside its own hull");
            }
            for x in &polys {
                for y in &polys {
                    c.check((hausdorff(x, y) - hausdorff(y, x)).abs() < 1e-15, "Hausdorff not symmetric");
                    for z in polys.iter().take(5) {
                        c.check(hausdorff(x, z) <= hausdorff(x, y) + hausdorff(y, z) + 1e-12, "triangle inequality");
                    }
                }
            }
            c.summary(format!("{} random hulls", polys.len()));
            Ok(())
        }),
        run_checks("suite brauer", "reference sets", None, |c| {
            let t = brauer_triangle();
            for d in 2..=10 {
                c.check(t.contains(maximally_mixed(d), 1e-12), format!("maximally mixed outside the triangle at d={d}"));
                c.check(excess(&separable_region(d)?, &t) < 1e-15, format!("separable rectangle outside the triangle at d={d}"));
            }
            c.summary("maximally mixed points and separable rectangles inside the triangle for d = 2..10".to_string());
            Ok(())
        }),
        run_checks("suite twosided", "generator sanity", None, |c| {
            let mut negative = 0;
            for case in Case::ALL {
                for d in 2..=10usize {
                    for g in generators_with(case, d, CurveForm::Corrected)? {
                        for p in g.sample(360) {
                            c.check(crate::brauer::is_physical(p, 1e-12), format!("{} at d={d} leaves the triangle", g.id));
                        }
                    }
                    for g in generators_with(case, d, CurveForm::Printed)? {
                        negative += g.sample(360).iter().filter(|p| p.b < -1e-12).count();
                    }
                }
            }
            c.summary(format!("corrected generators physical; printed curve samples with b < 0: {negative}"));
            Ok(())
        }),
    ]
}
