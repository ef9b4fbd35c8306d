//! Closed-form generators of the (1,2)-, (1,3)- and (2,2)-extendible regions, and the
//! regions they span.
//!
//! Every generator comes from one isotypic block of the extension. Multiplicity-one blocks
//! give points; multiplicity-two blocks give a curve traced by δ ∈ [0, 2π).

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::brauer::brauer_triangle;
use crate::error::{Error, Result};
use crate::geometry::{clip, convex_hull_tagged, Clipped, ExactPoint, HalfPlane, Point, Region, DEFAULT_TOL};
use crate::oracle::Mode;

pub const DEFAULT_RESOLUTION: usize = 720;

/// The three cases with known closed forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    OneTwo,
    OneThree,
    TwoTwo,
}

impl Case {
    pub const ALL: [Case; 3] = [Case::OneTwo, Case::OneThree, Case::TwoTwo];

    /// (n, m).
    pub fn sizes(self) -> (usize, usize) {
        match self {
            Case::OneTwo => (1, 2),
            Case::OneThree => (1, 3),
            Case::TwoTwo => (2, 2),
        }
    }

    pub fn from_sizes(n: usize, m: usize) -> Result<Case> {
        match (n, m) {
            (1, 2) => Ok(Case::OneTwo),
            (1, 3) => Ok(Case::OneThree),
            (2, 2) => Ok(Case::TwoTwo),
            _ => Err(Error::UnsupportedCase(format!("no closed form for ({n},{m})"))),
        }
    }

    pub fn mode(self) -> Mode {
        let (n, m) = self.sizes();
        Mode::Twosided { n, m }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, m) = self.sizes();
        write!(f, "{n},{m}")
    }
}

impl FromStr for Case {
    type Err = Error;

    /// `1,2`, `(1,3)` or `2,2`.
    fn from_str(s: &str) -> Result<Case> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        match parts.as_slice() {
            [n, m] => match (n.parse::<usize>(), m.parse::<usize>()) {
                (Ok(n), Ok(m)) => Case::from_sizes(n, m),
                _ => Err(Error::Parse { input: s.to_string(), reason: "expected two integers n,m".into() }),
            },
            _ => Err(Error::Parse { input: s.to_string(), reason: "expected n,m".into() }),
        }
    }
}

/// c0 + c_sin·sinδ + c_cos·cosδ + c_sin_sq·sin²δ + c_sin_2·sin2δ.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct TrigPoly {
    pub c0: f64,
    pub c_sin: f64,
    pub c_cos: f64,
    pub c_sin_sq: f64,
    pub c_sin_2: f64,
}

impl TrigPoly {
    pub fn eval(&self, delta: f64) -> f64 {
        let (s, c) = delta.sin_cos();
        self.c0 + self.c_sin * s + self.c_cos * c + self.c_sin_sq * s * s + self.c_sin_2 * (2.0 * delta).sin()
    }

    fn scaled(self, k: f64) -> TrigPoly {
        TrigPoly {
            c0: self.c0 * k,
            c_sin: self.c_sin * k,
            c_cos: self.c_cos * k,
            c_sin_sq: self.c_sin_sq * k,
            c_sin_2: self.c_sin_2 * k,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum GeneratorKind {
    Point(ExactPoint),
    Curve { f: TrigPoly, b: TrigPoly },
}

/// One closed-form generator.
#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    /// Names the block: the right-hand symmetric-group label (or the D₄ irrep for (2,2))
    /// and the O(d) label, with the multiplicity for curves.
    pub id: &'static str,
    pub min_d: usize,
    pub kind: GeneratorKind,
}

impl Generator {
    /// The point, or the curve at parameter δ.
    pub fn at(&self, delta: f64) -> Point {
        match &self.kind {
            GeneratorKind::Point(p) => p.to_f64(),
            GeneratorKind::Curve { f, b } => Point::new(f.eval(delta), b.eval(delta)),
        }
    }

    /// One point, or `resolution` curve samples at δ = 2πk/resolution.
    pub fn sample(&self, resolution: usize) -> Vec<Point> {
        match &self.kind {
            GeneratorKind::Point(p) => vec![p.to_f64()],
            GeneratorKind::Curve { .. } => (0..resolution).map(|k| self.at(TAU * k as f64 / resolution as f64)).collect(),
        }
    }

    pub fn is_point(&self) -> bool {
        matches!(self.kind, GeneratorKind::Point(_))
    }
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn point(id: &'static str, min_d: usize, f: BigRational, b: BigRational) -> Generator {
    Generator { id, min_d, kind: GeneratorKind::Point(ExactPoint::new(f, b)) }
}

fn curve(id: &'static str, min_d: usize, f: TrigPoly, b: TrigPoly) -> Generator {
    Generator { id, min_d, kind: GeneratorKind::Curve { f, b } }
}

/// Which form of the two-copy curve shared by (1,2) and (2,2) to use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum CurveForm {
    /// b(δ) = [√(2(d+2))·cosδ + √(d−1)·sinδ]/(6d). Not a quadratic form in (cosδ, sinδ),
    /// so it cannot be the image of a two-dimensional multiplicity space; it dips below b = 0.
    #[default]
    Printed,
    /// b(δ) = [√(2(d+2))·cosδ + √(d−1)·sinδ]²/(6d), the compression of b̂ to the
    /// two-copy block in the basis where F is diag(1, −1/2). For (2,2) this also adds the
    /// two-copy curve of the trivial D₄ block with O(d) label [2], which is missing from the
    /// reference list and matters at d = 3.
    Corrected,
}

impl fmt::Display for CurveForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CurveForm::Printed => "printed",
            CurveForm::Corrected => "corrected",
        })
    }
}

impl FromStr for CurveForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<CurveForm> {
        match s.trim() {
            "printed" => Ok(CurveForm::Printed),
            "corrected" => Ok(CurveForm::Corrected),
            _ => Err(Error::Parse { input: s.to_string(), reason: "expected printed or corrected".into() }),
        }
    }
}

/// The two-copy curve shared by (1,2) and (2,2).
fn two_copy_curve(id: &'static str, d: f64, form: CurveForm) -> Generator {
    let f = TrigPoly { c0: 1.0, c_sin_sq: -1.5, ..TrigPoly::default() };
    let b = match form {
        CurveForm::Printed => TrigPoly { c_cos: (2.0 * (d + 2.0)).sqrt(), c_sin: (d - 1.0).sqrt(), ..TrigPoly::default() },
        CurveForm::Corrected => TrigPoly {
            c0: 2.0 * (d + 2.0),
            c_sin_sq: -(d + 5.0),
            c_sin_2: (2.0 * (d + 2.0) * (d - 1.0)).sqrt(),
            ..TrigPoly::default()
        },
    };
    curve(id, 2, f, b.scaled(1.0 / (6.0 * d)))
}

fn inventory(case: Case, d: usize, form: CurveForm) -> Vec<Generator> {
    let di = d as i64;
    let df = d as f64;
    match case {
        Case::OneTwo => vec![
            point("R[2]/[3]", 2, q(1, 1), q(0, 1)),
            two_copy_curve("R[2]/2x[1]", df, form),
            point("R[1,1]/[1,1,1]", 3, q(-1, 1), q(0, 1)),
        ],
        Case::OneThree => vec![
            point("R[3]/[4]", 2, q(1, 1), q(0, 1)),
            point("R[3]/0", 2, q(1, 1), q(di + 2, 3 * di)),
            point("R[3]/[1,1]", 2, q(-1, 3), q(0, 1)),
            point("R[2,1]/0", 2, q(0, 1), q(di - 1, 3 * di)),
            curve(
                "R[3]/2x[2]",
                2,
                TrigPoly { c0: 1.0, c_sin_sq: -4.0 / 3.0, ..TrigPoly::default() },
                TrigPoly { c0: df + 4.0, c_sin_sq: -4.0, c_sin_2: (df * (df + 4.0)).sqrt(), ..TrigPoly::default() }
                    .scaled(1.0 / (6.0 * df)),
            ),
            curve(
                "R[2,1]/2x[1,1]",
                3,
                TrigPoly { c0: 2.0 / 3.0, c_sin_sq: -4.0 / 3.0, ..TrigPoly::default() },
                TrigPoly {
                    c0: 3.0 * df + 6.0,
                    c_sin_sq: -(2.0 * df + 8.0),
                    c_sin_2: (3.0 * (df + 2.0) * (df - 2.0)).max(0.0).sqrt(),
                    ..TrigPoly::default()
                }
                .scaled(1.0 / (12.0 * df)),
            ),
            point("R[1,1,1]/[1,1,1,1]", 4, q(-1, 1), q(0, 1)),
        ],
        Case::TwoTwo => {
            let root = (df * df - 4.0).max(0.0).sqrt();
            let mut gens = vec![
                point("1/[4]", 2, q(1, 1), q(0, 1)),
                two_copy_curve("1/2x0", df, form),
                curve(
                    "2/2x[1,1]",
                    3,
                    TrigPoly { c0: -2.0, c_sin_sq: 4.0, c_sin_2: root, ..TrigPoly::default() }.scaled(1.0 / (2.0 * df)),
                    TrigPoly { c0: df * df - 4.0, c_sin_sq: 8.0 - df * df, c_sin_2: 2.0 * root, ..TrigPoly::default() }
                        .scaled(1.0 / (4.0 * df * df)),
                ),
                point("1bar/[1,1,1,1]", 4, q(-1, 1), q(0, 1)),
            ];
            if form == CurveForm::Corrected {
                gens.push(curve(
                    "1/2x[2]",
                    3,
                    TrigPoly { c0: 1.0, c_sin_sq: -1.5, ..TrigPoly::default() },
                    TrigPoly {
                        c0: 2.0 * (df + 4.0),
                        c_sin_sq: -(df + 10.0),
                        c_sin_2: (2.0 * (df + 4.0) * (df - 2.0)).sqrt(),
                        ..TrigPoly::default()
                    }
                    .scaled(1.0 / (12.0 * df)),
                ));
            }
            gens
        }
    }
}

/// The reference generators of a case that exist at dimension d.
pub fn generators(case: Case, d: usize) -> Result<Vec<Generator>> {
    generators_with(case, d, CurveForm::Printed)
}

/// Like [`generators`], with a choice of two-copy curve.
pub fn generators_with(case: Case, d: usize, form: CurveForm) -> Result<Vec<Generator>> {
    if d < 2 {
        return Err(Error::OutOfRange(format!("dimension {d} < 2")));
    }
    Ok(inventory(case, d, form).into_iter().filter(|g| g.min_d <= d).collect())
}

/// Half-planes cutting out the Brauer triangle.
pub fn triangle_half_planes() -> [HalfPlane; 3] {
    [HalfPlane::new(0.0, -1.0, 0.0), HalfPlane::new(1.0, 0.0, 1.0), HalfPlane::new(-0.5, 1.0, 0.5)]
}

/// Hull of all generators, curves sampled at `resolution` points, clipped to the triangle.
pub fn region_closed_form(case: Case, d: usize, resolution: usize) -> Result<Region> {
    region_closed_form_with(case, d, resolution, CurveForm::Printed)
}

/// Like [`region_closed_form`], with a choice of two-copy curve.
pub fn region_closed_form_with(case: Case, d: usize, resolution: usize, form: CurveForm) -> Result<Region> {
    if resolution < 64 {
        return Err(Error::OutOfRange(format!("curve resolution {resolution} < 64")));
    }
    let gens = generators_with(case, d, form)?;
    let mut pts: Vec<(Point, Option<String>)> = Vec::new();
    for g in &gens {
        pts.extend(g.sample(resolution).into_iter().map(|p| (p, Some(g.id.to_string()))));
    }
    let hull = convex_hull_tagged(&pts, DEFAULT_TOL);
    let clipped = match clip(&hull, &triangle_half_planes()) {
        Clipped::Region(r) => r,
        Clipped::Empty => brauer_triangle(),
    };
    Ok(clipped
        .with_meta("set", "closed-form")
        .with_meta("case", case.to_string())
        .with_meta("d", d)
        .with_meta("resolution", resolution)
        .with_meta("curve", form.to_string()))
}
