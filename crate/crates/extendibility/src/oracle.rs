//! Explicit operators on (ℂ^d)^⊗N in the computational basis, and extendibility regions
//! computed as joint numerical ranges of the pair-averaged flip and b̂.
//!
//! Sites are numbered from 1; site 1 is the most significant digit of a basis index.

use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use petgraph::unionfind::UnionFind;

use crate::casimir::{chi_formal, xi_formal};
use crate::error::{Error, Result};
use crate::geometry::{convex_hull_tagged, hausdorff, intersect_half_planes, HalfPlane, Point, Region, DEFAULT_TOL};

pub const DEFAULT_CAP: usize = 1024;
pub const DEFAULT_ANGLES: usize = 720;

/// A dense real symmetric matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix {
    m: DMatrix<f64>,
}

impl SymMatrix {
    pub fn zeros(dim: usize) -> Self {
        SymMatrix { m: DMatrix::zeros(dim, dim) }
    }

    pub fn identity(dim: usize) -> Self {
        SymMatrix { m: DMatrix::identity(dim, dim) }
    }

    /// Wraps a square matrix, rejecting it unless symmetric within 1e−12.
    pub fn from_dmatrix(m: DMatrix<f64>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::InvalidArgument(format!("{}×{} matrix is not square", m.nrows(), m.ncols())));
        }
        let asym = (&m - m.transpose()).amax();
        if asym > 1e-12 {
            return Err(Error::InvalidArgument(format!("matrix is not symmetric (max |A − Aᵀ| = {asym:e})")));
        }
        Ok(SymMatrix { m })
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        SymMatrix { m: DMatrix::from_diagonal(&DVector::from_column_slice(diag)) }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.m[(i, j)]
    }

    pub fn as_dmatrix(&self) -> &DMatrix<f64> {
        &self.m
    }

    pub fn trace(&self) -> f64 {
        self.m.trace()
    }

    /// Largest entrywise difference.
    pub fn max_abs_diff(&self, other: &SymMatrix) -> f64 {
        (&self.m - &other.m).amax()
    }

    /// vᵀAv.
    pub fn expectation(&self, v: &DVector<f64>) -> f64 {
        v.dot(&(&self.m * v))
    }

    /// Frobenius norm of AB − BA.
    pub fn commutator_norm(&self, other: &SymMatrix) -> f64 {
        (&self.m * &other.m - &other.m * &self.m).norm()
    }

    pub fn product(&self, other: &SymMatrix) -> DMatrix<f64> {
        &self.m * &other.m
    }
}

impl Add for &SymMatrix {
    type Output = SymMatrix;
    fn add(self, rhs: &SymMatrix) -> SymMatrix {
        SymMatrix { m: &self.m + &rhs.m }
    }
}

impl Sub for &SymMatrix {
    type Output = SymMatrix;
    fn sub(self, rhs: &SymMatrix) -> SymMatrix {
        SymMatrix { m: &self.m - &rhs.m }
    }
}

impl Mul<f64> for &SymMatrix {
    type Output = SymMatrix;
    fn mul(self, c: f64) -> SymMatrix {
        SymMatrix { m: &self.m * c }
    }
}

/// Which pairs are averaged.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// All pairs among n sites.
    Definetti { n: usize },
    /// Cross pairs between n left sites and m right sites.
    Twosided { n: usize, m: usize },
}

impl Mode {
    pub fn sites(&self) -> usize {
        match *self {
            Mode::Definetti { n } => n,
            Mode::Twosided { n, m } => n + m,
        }
    }

    /// The averaged pairs (i, j), i < j, 1-based.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        match *self {
            Mode::Definetti { n } => (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect(),
            Mode::Twosided { n, m } => (1..=n).flat_map(|i| (n + 1..=n + m).map(move |j| (i, j))).collect(),
        }
    }

    fn validate(self) -> Result<Self> {
        match self {
            Mode::Definetti { n } if n < 2 => Err(Error::OutOfRange(format!("de Finetti mode needs n ≥ 2, got {n}"))),
            Mode::Twosided { n, m } if n == 0 || m == 0 => {
                Err(Error::OutOfRange(format!("two-sided mode needs n, m ≥ 1, got ({n},{m})")))
            }
            mode => Ok(mode),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Definetti { n } => write!(f, "definetti:{n}"),
            Mode::Twosided { n, m } => write!(f, "twosided:{n},{m}"),
        }
    }
}

impl FromStr for Mode {
    type Err = Error;

    /// `definetti:N` or `twosided:N,M`.
    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |reason: &str| Error::Parse { input: s.to_string(), reason: reason.to_string() };
        let (kind, rest) = s.trim().split_once(':').ok_or_else(|| parse_err("expected definetti:N or twosided:N,M"))?;
        let nums: Vec<usize> = rest
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| parse_err("counts must be nonnegative integers"))?;
        let mode = match (kind.trim(), nums.as_slice()) {
            ("definetti", [n]) => Mode::Definetti { n: *n },
            ("twosided", [n, m]) => Mode::Twosided { n: *n, m: *m },
            _ => return Err(parse_err("expected definetti:N or twosided:N,M")),
        };
        mode.validate()
    }
}

/// Which pair operator is averaged.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    F,
    B,
}

/// Lie algebra of a Casimir operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algebra {
    U,
    So,
}

impl FromStr for Algebra {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "u" => Ok(Algebra::U),
            "so" => Ok(Algebra::So),
            other => Err(Error::Parse { input: other.to_string(), reason: "algebra must be u or so".into() }),
        }
    }
}

/// The space (ℂ^d)^⊗N with a dimension cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Space {
    sites: usize,
    d: usize,
    dim: usize,
}

impl Space {
    pub fn new(sites: usize, d: usize, cap: usize) -> Result<Space> {
        if d < 2 {
            return Err(Error::OutOfRange(format!("dimension {d} < 2")));
        }
        if sites == 0 {
            return Err(Error::OutOfRange("need at least one site".into()));
        }
        let dim = u32::try_from(sites)
            .ok()
            .and_then(|s| d.checked_pow(s))
            .ok_or(Error::CapExceeded { dim: usize::MAX, cap })?;
        if dim > cap {
            return Err(Error::CapExceeded { dim, cap });
        }
        Ok(Space { sites, d, dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn local_dim(&self) -> usize {
        self.d
    }

    fn weight(&self, site: usize) -> usize {
        self.d.pow((self.sites - site) as u32)
    }

    fn digit(&self, x: usize, site: usize) -> usize {
        (x / self.weight(site)) % self.d
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        if i == 0 || i >= j || j > self.sites {
            return Err(Error::OutOfRange(format!("site pair ({i},{j}) is not 1 ≤ i < j ≤ {}", self.sites)));
        }
        Ok(())
    }

    /// Swap of sites i and j.
    pub fn flip(&self, i: usize, j: usize) -> Result<SymMatrix> {
        self.check_pair(i, j)?;
        let (wi, wj) = (self.weight(i), self.weight(j));
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for x in 0..self.dim {
            let (a, b) = (self.digit(x, i), self.digit(x, j));
            let y = x - a * wi - b * wj + b * wi + a * wj;
            m[(y, x)] = 1.0;
        }
        Ok(SymMatrix { m })
    }

    /// b̂ on sites i and j: (1/d)·Σ_{a,b} |aa⟩⟨bb|.
    pub fn btilde(&self, i: usize, j: usize) -> Result<SymMatrix> {
        self.check_pair(i, j)?;
        let (wi, wj) = (self.weight(i), self.weight(j));
        let inv = 1.0 / self.d as f64;
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for x in 0..self.dim {
            let a = self.digit(x, i);
            if a != self.digit(x, j) {
                continue;
            }
            let base = x - a * (wi + wj);
            for c in 0..self.d {
                m[(base + c * (wi + wj), x)] += inv;
            }
        }
        Ok(SymMatrix { m })
    }

    /// Pair-averaged flip or b̂.
    pub fn savg(&self, mode: Mode, kind: Kind) -> Result<SymMatrix> {
        let mode = mode.validate()?;
        if mode.sites() != self.sites {
            return Err(Error::InvalidArgument(format!("mode {mode} needs {} sites, space has {}", mode.sites(), self.sites)));
        }
        let pairs = mode.pairs();
        let mut acc = SymMatrix::zeros(self.dim);
        for &(i, j) in &pairs {
            let op = match kind {
                Kind::F => self.flip(i, j)?,
                Kind::B => self.btilde(i, j)?,
            };
            acc = &acc + &op;
        }
        Ok(&acc * (1.0 / pairs.len() as f64))
    }

    /// ρ(e_pq) summed over `sites`, applied to a sparse vector.
    fn act(&self, sites: &[usize], p: usize, q: usize, v: &[(usize, f64)]) -> Vec<(usize, f64)> {
        let mut out = Vec::new();
        for &(x, c) in v {
            for &s in sites {
                if self.digit(x, s) == q {
                    out.push((x + p * self.weight(s) - q * self.weight(s), c));
                }
            }
        }
        out
    }

    /// Quadratic Casimir of the diagonal action on `sites`, built from the generators:
    /// Σ_ab ρ(E_ab)ρ(E_ba) for u(d) and −2·Σ_{a<b} ρ(Y_ab)² for so(d).
    pub fn casimir(&self, algebra: Algebra, sites: &[usize]) -> Result<SymMatrix> {
        if sites.is_empty() {
            return Err(Error::InvalidArgument("Casimir needs a nonempty site set".into()));
        }
        if let Some(&s) = sites.iter().find(|&&s| s == 0 || s > self.sites) {
            return Err(Error::OutOfRange(format!("site {s} is not in 1..={}", self.sites)));
        }
        let mut sorted = sites.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let d = self.d;
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for x in 0..self.dim {
            let start = [(x, 1.0)];
            match algebra {
                Algebra::U => {
                    for a in 0..d {
                        for b in 0..d {
                            let once = self.act(&sorted, b, a, &start);
                            for (y, c) in self.act(&sorted, a, b, &once) {
                                m[(y, x)] += c;
                            }
                        }
                    }
                }
                Algebra::So => {
                    for a in 0..d {
                        for b in a + 1..d {
                            let y_ab = |v: &[(usize, f64)]| {
                                let mut out = self.act(&sorted, a, b, v);
                                out.extend(self.act(&sorted, b, a, v).into_iter().map(|(y, c)| (y, -c)));
                                out
                            };
                            for (y, c) in y_ab(&y_ab(&start)) {
                                m[(y, x)] -= 2.0 * c;
                            }
                        }
                    }
                }
            }
        }
        Ok(SymMatrix { m })
    }

    /// The pair-averaged operator assembled from Casimir operators instead of pair operators.
    pub fn savg_from_casimirs(&self, mode: Mode, kind: Kind) -> Result<SymMatrix> {
        let mode = mode.validate()?;
        let d = self.d;
        let id = SymMatrix::identity(self.dim);
        let chi = |rows: &[i64]| chi_formal(rows, d) as f64;
        let xi = |rows: &[i64]| xi_formal(rows, d) as f64;
        let (chi1, chi2, chi11) = (chi(&[1]), chi(&[2]), chi(&[1, 1]));
        let (xi1, xi2, xi11) = (xi(&[1]), xi(&[2]), xi(&[1, 1]));
        match mode {
            Mode::Definetti { n } => {
                let all: Vec<usize> = (1..=n).collect();
                let nf = n as f64;
                let sf = {
                    let c = self.casimir(Algebra::U, &all)?;
                    let shift = 2.0 * (nf - 2.0) * chi1 / (nf - 1.0) - (chi2 + chi11) / 2.0;
                    &(&(&c * (2.0 / (nf * (nf - 1.0)))) + &(&id * shift)) * (2.0 / (chi2 - chi11))
                };
                if kind == Kind::F {
                    return Ok(sf);
                }
                let c = self.casimir(Algebra::So, &all)?;
                let shift = 2.0 * (nf - 2.0) * xi1 / (nf - 1.0) - (xi2 + xi11) / 2.0;
                let inner = &(&(&c * (2.0 / (nf * (nf - 1.0)))) + &(&id * shift)) - &(&sf * ((xi2 - xi11) / 2.0));
                Ok(&inner * (-1.0 / xi2))
            }
            Mode::Twosided { n, m } => {
                let left: Vec<usize> = (1..=n).collect();
                let right: Vec<usize> = (n + 1..=n + m).collect();
                let all: Vec<usize> = (1..=n + m).collect();
                let nm = (n * m) as f64;
                let split = |alg: Algebra| -> Result<SymMatrix> {
                    let tot = self.casimir(alg, &all)?;
                    Ok(&(&tot - &self.casimir(alg, &left)?) - &self.casimir(alg, &right)?)
                };
                let sf = &split(Algebra::U)? * (1.0 / (2.0 * nm));
                if kind == Kind::F {
                    return Ok(sf);
                }
                let cross = &split(Algebra::So)? * (-1.0 / (nm * xi2));
                let with_f = &cross + &(&sf * ((xi2 - xi11) / (2.0 * xi2)));
                Ok(&with_f + &(&id * ((xi2 + xi11 - 4.0 * xi1) / (2.0 * xi2))))
            }
        }
    }
}

/// Swap of sites i < j on N sites of dimension d, with the default cap.
pub fn op_flip(i: usize, j: usize, n: usize, d: usize) -> Result<SymMatrix> {
    Space::new(n, d, DEFAULT_CAP)?.flip(i, j)
}

/// b̂ on sites i < j on N sites of dimension d, with the default cap.
pub fn op_btilde(i: usize, j: usize, n: usize, d: usize) -> Result<SymMatrix> {
    Space::new(n, d, DEFAULT_CAP)?.btilde(i, j)
}

/// Pair-averaged operator for a mode, with the default cap.
pub fn op_savg(mode: Mode, kind: Kind, d: usize) -> Result<SymMatrix> {
    Space::new(mode.validate()?.sites(), d, DEFAULT_CAP)?.savg(mode, kind)
}

/// Casimir operator of the diagonal action on `sites` among `n` sites, with the default cap.
pub fn casimir_matrix(algebra: Algebra, sites: &[usize], n: usize, d: usize) -> Result<SymMatrix> {
    Space::new(n, d, DEFAULT_CAP)?.casimir(algebra, sites)
}

/// A spectral decomposition with eigenvalues ascending; column k of `vectors` belongs to
/// `values[k]`.
#[derive(Clone, Debug)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: DMatrix<f64>,
}

/// Sweep limit of the cyclic Jacobi iteration.
pub const MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi with the classical threshold strategy; deterministic for a given input.
fn jacobi(mut a: DMatrix<f64>) -> Result<(Vec<f64>, DMatrix<f64>)> {
    let n = a.nrows();
    let mut v = DMatrix::identity(n, n);
    let norm = a.norm();
    if n < 2 || norm == 0.0 {
        return Ok(((0..n).map(|i| a[(i, i)]).collect(), v));
    }
    let target = 1e-14 * norm;
    for sweep in 0..MAX_SWEEPS {
        let off: f64 = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| a[(i, j)] * a[(i, j)]).sum();
        if off.sqrt() <= target {
            return Ok(((0..n).map(|i| a[(i, i)]).collect(), v));
        }
        let threshold = if sweep < 3 { 0.2 * off.sqrt() / (n * n) as f64 } else { 0.0 };
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq.abs() <= threshold || apq == 0.0 {
                    continue;
                }
                let g = 100.0 * apq.abs();
                if sweep > 3 && a[(p, p)].abs() + g == a[(p, p)].abs() && a[(q, q)].abs() + g == a[(q, q)].abs() {
                    a[(p, q)] = 0.0;
                    a[(q, p)] = 0.0;
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    Err(Error::NoConvergence { sweeps: MAX_SWEEPS })
}

fn eig_dense(m: DMatrix<f64>, tol: f64) -> Result<Eigen> {
    let scale = m.amax();
    let original = m.clone();
    let (diag, vecs) = jacobi(m)?;
    let mut order: Vec<usize> = (0..diag.len()).collect();
    order.sort_by(|&a, &b| diag[a].total_cmp(&diag[b]));
    let values: Vec<f64> = order.iter().map(|&k| diag[k]).collect();
    let vectors = DMatrix::from_fn(original.nrows(), order.len(), |r, c| vecs[(r, order[c])]);
    for (k, &lambda) in values.iter().enumerate() {
        let v = vectors.column(k);
        if (&original * v - v * lambda).norm() > tol * scale.max(f64::MIN_POSITIVE) {
            return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
        }
    }
    Ok(Eigen { values, vectors })
}

/// Full spectral decomposition by cyclic Jacobi; every pair satisfies ‖Av − λv‖ ≤ tol·max|A_ij|.
pub fn sym_eig(a: &SymMatrix, tol: f64) -> Result<Eigen> {
    eig_dense(a.m.clone(), tol)
}

/// Numerical-range settings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleConfig {
    pub cap: usize,
    pub angles: usize,
    /// Rounds of support queries along the normals of inner-hull edges.
    pub refine_rounds: usize,
    /// Eigenvalues this close to the top one count as degenerate.
    pub degeneracy_tol: f64,
    pub eig_tol: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { cap: DEFAULT_CAP, angles: DEFAULT_ANGLES, refine_rounds: 3, degeneracy_tol: 1e-9, eig_tol: 1e-10 }
    }
}

/// Inner and outer approximations of a joint numerical range.
#[derive(Clone, Debug)]
pub struct NumericalRange {
    pub inner: Region,
    pub outer: Region,
    /// Hausdorff distance between `inner` and `outer`.
    pub gap: f64,
    /// Number of support directions queried.
    pub directions: usize,
}

struct BlockPair {
    a: DMatrix<f64>,
    b: DMatrix<f64>,
}

/// Restricts A and B to the connected components of their joint sparsity pattern.
fn split_blocks(a: &SymMatrix, b: &SymMatrix) -> Vec<BlockPair> {
    let n = a.dim();
    let mut uf = UnionFind::<usize>::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if a.m[(i, j)] != 0.0 || b.m[(i, j)] != 0.0 {
                uf.union(i, j);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let root = uf.find(i);
        if slot[root] == usize::MAX {
            slot[root] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[root]].push(i);
    }
    groups
        .into_iter()
        .map(|g| BlockPair {
            a: DMatrix::from_fn(g.len(), g.len(), |r, c| a.m[(g[r], g[c])]),
            b: DMatrix::from_fn(g.len(), g.len(), |r, c| b.m[(g[r], g[c])]),
        })
        .collect()
}

struct Face {
    value: f64,
    points: Vec<Point>,
}

fn point_of(block: &BlockPair, v: &DVector<f64>) -> Point {
    let v = v.normalize();
    Point::new(v.dot(&(&block.a * &v)), v.dot(&(&block.b * &v)))
}

/// The exposed face of the range in direction θ: the top eigenvalue of cosθ·A + sinθ·B and
/// boundary points spanning the face.
fn face(blocks: &[BlockPair], theta: f64, config: &OracleConfig) -> Result<Face> {
    let (s, c) = theta.sin_cos();
    let mut eigs = Vec::with_capacity(blocks.len());
    for blk in blocks {
        eigs.push(eig_dense(&blk.a * c + &blk.b * s, config.eig_tol)?);
    }
    let value = eigs.iter().map(|e| *e.values.last().expect("blocks are nonempty")).fold(f64::NEG_INFINITY, f64::max);
    let mut points = Vec::new();
    for (blk, e) in blocks.iter().zip(&eigs) {
        let top: Vec<usize> = (0..e.values.len()).filter(|&k| e.values[k] >= value - config.degeneracy_tol).collect();
        if top.is_empty() {
            continue;
        }
        let basis = DMatrix::from_fn(blk.a.nrows(), top.len(), |r, k| e.vectors[(r, top[k])]);
        for k in 0..top.len() {
            points.push(point_of(blk, &basis.column(k).into_owned()));
        }
        if top.len() > 1 {
            // The face is a segment; its ends extremize the perpendicular direction.
            let perp = basis.transpose() * (&blk.a * -s + &blk.b * c) * &basis;
            let pe = eig_dense(perp, config.eig_tol)?;
            let last = pe.values.len() - 1;
            for k in [0, last] {
                points.push(point_of(blk, &(&basis * pe.vectors.column(k))));
            }
        }
    }
    Ok(Face { value, points })
}

fn angle_known(known: &[(f64, f64)], phi: f64) -> bool {
    known.iter().any(|&(t, _)| {
        let diff = (t - phi).rem_euclid(TAU);
        diff.min(TAU - diff) < 1e-12
    })
}

/// Joint numerical range of (A, B) with inner/outer approximations.
pub fn numerical_range_with(a: &SymMatrix, b: &SymMatrix, config: &OracleConfig) -> Result<NumericalRange> {
    if a.dim() != b.dim() {
        return Err(Error::InvalidArgument(format!("operator dimensions differ: {} vs {}", a.dim(), b.dim())));
    }
    if config.angles < 64 {
        return Err(Error::OutOfRange(format!("need at least 64 angles, got {}", config.angles)));
    }
    let blocks = split_blocks(a, b);
    let mut queried: Vec<(f64, f64)> = Vec::new();
    let mut pts: Vec<(Point, Option<String>)> = Vec::new();
    let probe = |theta: f64, queried: &mut Vec<(f64, f64)>, pts: &mut Vec<(Point, Option<String>)>| -> Result<f64> {
        let fc = face(&blocks, theta, config)?;
        queried.push((theta, fc.value));
        let tag = format!("theta={theta:.9}");
        pts.extend(fc.points.into_iter().map(|p| (p, Some(tag.clone()))));
        Ok(fc.value)
    };
    for k in 0..config.angles {
        probe(TAU * k as f64 / config.angles as f64, &mut queried, &mut pts)?;
    }
    for _ in 0..config.refine_rounds {
        let hull = convex_hull_tagged(&pts, DEFAULT_TOL);
        let vs = hull.vertices().to_vec();
        if vs.len() < 3 {
            break;
        }
        let mut grew = false;
        for i in 0..vs.len() {
            let (p, q) = (vs[i], vs[(i + 1) % vs.len()]);
            let (nx, ny) = (q.b - p.b, p.f - q.f);
            let len = nx.hypot(ny);
            if len < 1e-12 {
                continue;
            }
            let phi = ny.atan2(nx).rem_euclid(TAU);
            if angle_known(&queried, phi) {
                continue;
            }
            let h = (nx * p.f + ny * p.b) / len;
            if probe(phi, &mut queried, &mut pts)? > h + 1e-10 {
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    let inner = convex_hull_tagged(&pts, DEFAULT_TOL);
    let planes: Vec<HalfPlane> = queried.iter().map(|&(t, v)| HalfPlane::new(t.cos(), t.sin(), v)).collect();
    let bound = 2.0 + a.as_dmatrix().amax() + b.as_dmatrix().amax();
    let outer = intersect_half_planes(&planes, bound)
        .region()
        .ok_or_else(|| Error::InvalidArgument("supporting half-planes have empty intersection".into()))?;
    let gap = hausdorff(&inner, &outer);
    Ok(NumericalRange { inner, outer, gap, directions: queried.len() })
}

/// Inner approximation of the joint numerical range, with the inner/outer gap attached.
pub fn numerical_range(a: &SymMatrix, b: &SymMatrix, angles: usize) -> Result<Region> {
    let nr = numerical_range_with(a, b, &OracleConfig { angles, ..OracleConfig::default() })?;
    let mut r = nr.inner.with_meta("angles", angles).with_meta("directions", nr.directions);
    r.set_gap(nr.gap);
    Ok(r)
}

/// Full numerical-range result for the pair-averaged (Ŝf, Ŝb) of a mode.
pub fn oracle_range(mode: Mode, d: usize, config: &OracleConfig) -> Result<NumericalRange> {
    let space = Space::new(mode.validate()?.sites(), d, config.cap)?;
    let f = space.savg(mode, Kind::F)?;
    let b = space.savg(mode, Kind::B)?;
    numerical_range_with(&f, &b, config)
}

/// The extendibility region of a mode as a numerical-range region.
pub fn region_oracle(mode: Mode, d: usize, config: &OracleConfig) -> Result<Region> {
    let nr = oracle_range(mode, d, config)?;
    let mut r = nr
        .inner
        .with_meta("set", "oracle")
        .with_meta("mode", mode.to_string())
        .with_meta("d", d)
        .with_meta("angles", config.angles)
        .with_meta("directions", nr.directions);
    r.set_gap(nr.gap);
    Ok(r)
}
