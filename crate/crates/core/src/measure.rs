//! Self-affine measures on the generating set.
//!
//! For `μ = xa + yb + zc` the restriction to the vertex `0` is
//!
//! ```text
//! μ|₀ = y·a + z·b + (y x² / D)·c + ((1 − z) x² / D)·e,   D = z² − 2z + 1 − y²
//! ```
//!
//! and `Φ` strips the identity mass from `μ|₀` and renormalises. Its unique
//! interior fixed point is `(ζ, ζ² − 4ζ + 2, −1 + 3ζ − ζ²)` where `ζ` is the
//! real root of `Z³ − 6Z² + 11Z − 4`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::group::{equal_in_group, gamma_normal_form, sections, GroupWord, Letter};
use crate::{Error, Result};

/// Slack allowed on the total mass and on the zero identity weight.
pub const MASS_TOL: f64 = 1e-12;
/// Smallest `|D|` (and map denominator) accepted before reporting a singularity.
pub const SINGULAR_TOL: f64 = 1e-12;
/// Name of the random generator, recorded in walk reports.
pub const RNG_NAME: &str = "ChaCha8Rng (rand_chacha 0.9), stream = index";

/// Probability measure on `{e, a, b, c}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FiniteMeasure {
    pub e: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl FiniteMeasure {
    pub fn new(e: f64, a: f64, b: f64, c: f64) -> Result<Self> {
        let m = FiniteMeasure { e, a, b, c };
        let w = m.weights();
        if w.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::input(format!("weights must be nonnegative reals, got {w:?}")));
        }
        let total: f64 = w.iter().sum();
        if (total - 1.0).abs() > MASS_TOL {
            return Err(Error::input(format!("weights sum to {total}, not 1")));
        }
        Ok(m)
    }

    /// `xa + yb + zc`.
    pub fn on_generators(x: f64, y: f64, z: f64) -> Result<Self> {
        FiniteMeasure::new(0.0, x, y, z)
    }

    pub fn uniform() -> Self {
        FiniteMeasure { e: 0.0, a: 1.0 / 3.0, b: 1.0 / 3.0, c: 1.0 / 3.0 }
    }

    pub fn weights(&self) -> [f64; 4] {
        [self.e, self.a, self.b, self.c]
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.e.abs() <= MASS_TOL && self.a > 0.0 && self.b > 0.0 && self.c > 0.0
    }

    pub fn l1_distance(&self, other: &FiniteMeasure) -> f64 {
        self.weights().iter().zip(other.weights()).map(|(p, q)| (p - q).abs()).sum()
    }

    /// Half the L1 distance.
    pub fn total_variation(&self, other: &FiniteMeasure) -> f64 {
        0.5 * self.l1_distance(other)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("measure serialises")
    }
}

fn require_nondegenerate(m: &FiniteMeasure) -> Result<()> {
    if m.is_nondegenerate() {
        Ok(())
    } else {
        Err(Error::SingularAlgebra(format!(
            "measure {} is not supported on exactly the generators",
            m.to_json()
        )))
    }
}

fn d_form(y: f64, z: f64) -> f64 {
    z * z - 2.0 * z + 1.0 - y * y
}

/// `μ|₀` in closed form.
pub fn restrict0(m: &FiniteMeasure) -> Result<FiniteMeasure> {
    require_nondegenerate(m)?;
    let FiniteMeasure { a: x, b: y, c: z, .. } = *m;
    let d = d_form(y, z);
    if d.abs() < SINGULAR_TOL {
        return Err(Error::SingularAlgebra(format!("D = z² − 2z + 1 − y² vanishes ({d:e})")));
    }
    let x2 = x * x;
    Ok(FiniteMeasure { e: (1.0 - z) * x2 / d, a: y, b: z, c: y * x2 / d })
}

/// `Φ(μ) = (μ|₀ − μ|₀(e)·e) / (1 − μ|₀(e))`.
pub fn phi_transform(m: &FiniteMeasure) -> Result<FiniteMeasure> {
    let r = restrict0(m)?;
    let rest = 1.0 - r.e;
    if rest <= SINGULAR_TOL {
        return Err(Error::SingularAlgebra(format!("μ|₀ has identity mass {} ≥ 1", r.e)));
    }
    Ok(FiniteMeasure { e: 0.0, a: r.a / rest, b: r.b / rest, c: r.c / rest })
}

/// The explicit rational form of `Φ` on coefficients.
pub fn coefficient_map(x: f64, y: f64, z: f64) -> Result<(f64, f64, f64)> {
    let d = d_form(y, z);
    let den = d + (z - 1.0) * x * x;
    if den.abs() < SINGULAR_TOL {
        return Err(Error::SingularAlgebra(format!("denominator D + (z − 1)x² vanishes ({den:e})")));
    }
    Ok((y * d / den, z * d / den, y * x * x / den))
}

fn cubic(t: f64) -> f64 {
    ((t - 6.0) * t + 11.0) * t - 4.0
}

fn cubic_derivative(t: f64) -> f64 {
    (3.0 * t - 12.0) * t + 11.0
}

/// The fixed point of `Φ` with its residuals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FixedPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    /// Identity mass of `μ*|₀`.
    pub alpha: f64,
    pub cubic_residual: f64,
    /// `‖coefficient_map(p*) − p*‖∞`.
    pub map_residual: f64,
    /// Whether `map_residual ≤ 10·tol`.
    pub verified: bool,
}

impl FixedPoint {
    pub fn measure(&self) -> FiniteMeasure {
        FiniteMeasure { e: 0.0, a: self.x, b: self.y, c: self.z }
    }
}

/// Root of the cubic in `(0, 1)` by bisection, polished by Newton to `tol`.
pub fn fixed_point(tol: f64) -> FixedPoint {
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    while hi - lo > 1e-6 {
        let mid = 0.5 * (lo + hi);
        if cubic(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut t = 0.5 * (lo + hi);
    for _ in 0..50 {
        let step = cubic(t) / cubic_derivative(t);
        t -= step;
        if step.abs() <= tol.max(f64::EPSILON) {
            break;
        }
    }
    let x = t;
    let y = x * x - 4.0 * x + 2.0;
    let z = -1.0 + 3.0 * x - x * x;
    let alpha = (1.0 - z) * x * x / d_form(y, z);
    let map_residual = match coefficient_map(x, y, z) {
        Ok((x1, y1, z1)) => (x1 - x).abs().max((y1 - y).abs()).max((z1 - z).abs()),
        Err(_) => f64::INFINITY,
    };
    FixedPoint {
        x,
        y,
        z,
        alpha,
        cubic_residual: cubic(x).abs(),
        map_residual,
        verified: map_residual <= 10.0 * tol,
    }
}

/// Total-variation distance between `μ|₀` and `α·e + (1 − α)·μ`.
pub fn self_affinity_residual(m: &FiniteMeasure) -> Result<f64> {
    let r = restrict0(m)?;
    let alpha = r.e;
    let target = FiniteMeasure {
        e: alpha,
        a: (1.0 - alpha) * m.a,
        b: (1.0 - alpha) * m.b,
        c: (1.0 - alpha) * m.c,
    };
    Ok(r.total_variation(&target))
}

/// Strict: `tol = 0` never passes on floating input.
pub fn self_affinity_check(m: &FiniteMeasure, tol: f64) -> Result<bool> {
    let alpha = restrict0(m)?.e;
    Ok(alpha > 0.0 && alpha < 1.0 && self_affinity_residual(m)? < tol)
}

/// `y(x) = ¼(−x² + x + x√(x² − 10x + 9))`.
pub fn plus_branch(x: f64) -> f64 {
    0.25 * (-x * x + x + x * (x * x - 10.0 * x + 9.0).sqrt())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UniquenessReport {
    pub grid: usize,
    pub starts: usize,
    pub converged: usize,
    /// Distinct interior fixed points `(x, y, z)`.
    pub fixed_points: Vec<[f64; 3]>,
    pub matches_fixed_point: bool,
    pub plus_branch_at_root: f64,
    pub plus_branch_error: f64,
}

impl UniquenessReport {
    pub fn is_unique(&self) -> bool {
        self.fixed_points.len() == 1 && self.matches_fixed_point
    }
}

const NEWTON_STEPS: usize = 200;
const NEWTON_RESIDUAL: f64 = 1e-13;
const DEDUP_TOL: f64 = 1e-8;

fn simplex_residual(x: f64, y: f64) -> Option<[f64; 2]> {
    let (x1, y1, _) = coefficient_map(x, y, 1.0 - x - y).ok()?;
    let r = [x1 - x, y1 - y];
    r.iter().all(|v| v.is_finite()).then_some(r)
}

fn norm(r: [f64; 2]) -> f64 {
    r[0].abs().max(r[1].abs())
}

/// Damped Newton on the two free simplex coordinates with a
/// central-difference Jacobian.
fn newton_from(mut x: f64, mut y: f64) -> Option<[f64; 3]> {
    const H: f64 = 1e-7;
    let mut r = simplex_residual(x, y)?;
    for _ in 0..NEWTON_STEPS {
        if norm(r) <= NEWTON_RESIDUAL {
            return Some([x, y, 1.0 - x - y]);
        }
        let rx = [simplex_residual(x + H, y)?, simplex_residual(x - H, y)?];
        let ry = [simplex_residual(x, y + H)?, simplex_residual(x, y - H)?];
        let j = [
            [(rx[0][0] - rx[1][0]) / (2.0 * H), (ry[0][0] - ry[1][0]) / (2.0 * H)],
            [(rx[0][1] - rx[1][1]) / (2.0 * H), (ry[0][1] - ry[1][1]) / (2.0 * H)],
        ];
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if det.abs() < 1e-14 {
            return None;
        }
        let dx = (j[1][1] * r[0] - j[0][1] * r[1]) / det;
        let dy = (j[0][0] * r[1] - j[1][0] * r[0]) / det;
        let mut t = 1.0;
        loop {
            let (nx, ny) = (x - t * dx, y - t * dy);
            if let Some(nr) = simplex_residual(nx, ny) {
                if norm(nr) < norm(r) || t < 1e-6 {
                    x = nx;
                    y = ny;
                    r = nr;
                    break;
                }
            }
            t *= 0.5;
            if t < 1e-10 {
                return None;
            }
        }
    }
    (norm(r) <= NEWTON_RESIDUAL).then_some([x, y, 1.0 - x - y])
}

/// Multi-start search for interior fixed points of `Φ` from the open-simplex
/// lattice `(i/grid, j/grid)`, `i, j ≥ 1`, `i + j < grid`.
pub fn uniqueness_scan(grid: usize) -> Result<UniquenessReport> {
    if grid < 100 {
        return Err(Error::input(format!("uniqueness scan needs grid ≥ 100, got {grid}")));
    }
    let starts: Vec<(f64, f64)> = (1..grid)
        .flat_map(|i| (1..grid - i).map(move |j| (i as f64 / grid as f64, j as f64 / grid as f64)))
        .collect();
    let hits: Vec<[f64; 3]> = starts
        .par_iter()
        .filter_map(|&(x, y)| newton_from(x, y))
        .filter(|p| p.iter().all(|&v| v > DEDUP_TOL && v < 1.0 - DEDUP_TOL))
        .collect();
    let mut distinct: Vec<[f64; 3]> = Vec::new();
    for p in &hits {
        if !distinct.iter().any(|q| (0..3).all(|k| (p[k] - q[k]).abs() <= DEDUP_TOL)) {
            distinct.push(*p);
        }
    }
    let fp = fixed_point(1e-15);
    let matches = distinct.len() == 1 && {
        let p = distinct[0];
        (p[0] - fp.x).abs().max((p[1] - fp.y).abs()).max((p[2] - fp.z).abs()) <= DEDUP_TOL
    };
    let plus = plus_branch(fp.x);
    Ok(UniquenessReport {
        grid,
        starts: starts.len(),
        converged: hits.len(),
        fixed_points: distinct,
        matches_fixed_point: matches,
        plus_branch_at_root: plus,
        plus_branch_error: (plus - fp.y).abs(),
    })
}

/// State of the walk with an internal degree of freedom: the accumulated
/// section and the current first-level coordinate.
#[derive(Debug, Clone)]
pub struct WalkState {
    pub accumulator: GroupWord,
    pub coordinate: u8,
    rng: ChaCha8Rng,
}

/// Sections and root action of the three generators, indexed by letter.
struct GeneratorTable {
    section: [[GroupWord; 2]; 3],
    swaps: [bool; 3],
}

impl GeneratorTable {
    fn new() -> Self {
        let entry = |l: Letter| {
            let d = sections(&GroupWord::letter(l));
            ([d.left, d.right], GroupWord::letter(l).swaps_root())
        };
        let (sa, wa) = entry(Letter::A);
        let (sb, wb) = entry(Letter::B);
        let (sc, wc) = entry(Letter::C);
        GeneratorTable { section: [sa, sb, sc], swaps: [wa, wb, wc] }
    }
}

impl WalkState {
    /// Stream `stream` of the generator seeded by `seed`.
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        WalkState { accumulator: GroupWord::identity(), coordinate: 0, rng }
    }

    fn step(&mut self, m: &FiniteMeasure, table: &GeneratorTable) {
        let u: f64 = self.rng.random::<f64>() * (m.a + m.b + m.c);
        let h = if u < m.a {
            0
        } else if u < m.a + m.b {
            1
        } else {
            2
        };
        let x = self.coordinate as usize;
        self.accumulator = self.accumulator.multiply(&table.section[h][x]);
        if table.swaps[h] {
            self.coordinate ^= 1;
        }
    }

    /// Runs until the coordinate returns to `0` and yields the increment.
    fn excursion(&mut self, m: &FiniteMeasure, table: &GeneratorTable) -> GroupWord {
        loop {
            self.step(m, table);
            if self.coordinate == 0 {
                return std::mem::take(&mut self.accumulator);
            }
        }
    }
}

/// Index into `[e, a, b, c]` of the element represented by `g`.
fn classify(g: &GroupWord) -> Result<usize> {
    const CANDIDATES: [&str; 4] = ["e", "a", "b", "c"];
    let nf = gamma_normal_form(g).geodesic();
    let text = nf.to_string();
    if let Some(k) = CANDIDATES.iter().position(|c| *c == text) {
        return Ok(k);
    }
    for (k, c) in CANDIDATES.iter().enumerate() {
        if equal_in_group(&nf, &GroupWord::parse(c)?) {
            return Ok(k);
        }
    }
    Err(Error::SupportViolation(g.to_string()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WalkReport {
    pub seed: u64,
    pub streams: usize,
    pub returns: usize,
    pub rng: String,
    /// Counts of `e, a, b, c` increments.
    pub tally: [u64; 4],
    pub empirical: FiniteMeasure,
    pub closed_form: FiniteMeasure,
    pub l1_distance: f64,
}

impl WalkReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

/// Monte-Carlo estimate of `μ|₀` from the trace of the walk on coordinate `0`.
///
/// Returns are split over `streams` independent streams, stream `s` taking
/// every return with index `≡ s (mod streams)`; the tally depends only on
/// `(seed, streams, returns)`, not on the thread count.
pub fn walk_oracle(m: &FiniteMeasure, returns: usize, seed: u64, streams: usize) -> Result<WalkReport> {
    require_nondegenerate(m)?;
    if returns == 0 {
        return Err(Error::input("walk needs at least one return"));
    }
    if streams == 0 {
        return Err(Error::input("walk needs at least one stream"));
    }
    let closed_form = restrict0(m)?;
    let table = GeneratorTable::new();
    let per_stream: Vec<Result<[u64; 4]>> = (0..streams)
        .into_par_iter()
        .map(|s| {
            let count = returns / streams + usize::from(s < returns % streams);
            let mut state = WalkState::new(seed, s as u64);
            let mut tally = [0u64; 4];
            for _ in 0..count {
                let g = state.excursion(m, &table);
                tally[classify(&g)?] += 1;
            }
            Ok(tally)
        })
        .collect();
    let mut tally = [0u64; 4];
    for t in per_stream {
        for (acc, v) in tally.iter_mut().zip(t?) {
            *acc += v;
        }
    }
    let n = returns as f64;
    let empirical = FiniteMeasure {
        e: tally[0] as f64 / n,
        a: tally[1] as f64 / n,
        b: tally[2] as f64 / n,
        c: tally[3] as f64 / n,
    };
    Ok(WalkReport {
        seed,
        streams,
        returns,
        rng: RNG_NAME.to_string(),
        tally,
        empirical,
        l1_distance: empirical.l1_distance(&closed_form),
        closed_form,
    })
}
