//! Bulk experiments: random parameter sweeps, box counting over the
//! parameter cube, and slice rendering.
//!
//! All outputs are deterministic byte for byte: sampling uses a seeded
//! stream cipher generator, work is distributed by index, and results are
//! assembled in index order.

use num_rational::Ratio;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use itm_core::{DoubleRotation, Rat128};

use crate::classify::{classify_one, Outcome};

/// A dyadic fraction `num / 2^bits` in `[0, 1]`.
fn dyadic(num: u64, bits: u32) -> Rat128 {
    Ratio::new(num as i128, 1i128 << bits)
}

/// Classifies the triple, treating parameter range errors as `Error`.
fn classify_params(alpha: Rat128, beta: Rat128, c: Rat128, depth: usize, budget: usize) -> Outcome {
    match DoubleRotation::new(alpha, beta, c) {
        Ok(dr) => classify_one(&dr, depth, budget),
        Err(e) => Outcome::Error(e.to_string()),
    }
}

pub struct SweepConfig {
    pub samples: usize,
    pub depth: usize,
    pub seed: u64,
    /// Fractional bits of the sampled dyadic parameters.
    pub precision: u32,
    pub budget: usize,
    /// Depths at which survivor fractions are reported.
    pub checkpoints: Vec<usize>,
}

impl SweepConfig {
    pub fn new(samples: usize, depth: usize, seed: u64) -> SweepConfig {
        SweepConfig {
            samples,
            depth,
            seed,
            precision: 53,
            budget: 4096,
            checkpoints: vec![10, 50, 200],
        }
    }
}

/// Draws the parameter triples for a sweep. Sequential by construction so
/// the sample list depends only on the seed.
pub fn sweep_samples(cfg: &SweepConfig) -> Vec<(Rat128, Rat128, Rat128)> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let den = 1u64 << cfg.precision;
    (0..cfg.samples)
        .map(|_| {
            let alpha = dyadic(rng.gen_range(0..den), cfg.precision);
            let beta = dyadic(rng.gen_range(0..den), cfg.precision);
            let c = dyadic(rng.gen_range(1..den), cfg.precision);
            (alpha, beta, c)
        })
        .collect()
}

/// Runs a random sweep and returns the full CSV report.
pub fn sweep(cfg: &SweepConfig) -> String {
    let params = sweep_samples(cfg);
    let outcomes: Vec<Outcome> = params
        .par_iter()
        .map(|(a, b, c)| classify_params(a.clone(), b.clone(), c.clone(), cfg.depth, cfg.budget))
        .collect();

    let mut out = String::new();
    out.push_str("# itm sweep v1\n");
    out.push_str(&format!(
        "# seed={} samples={} depth={} precision={}\n",
        cfg.seed, cfg.samples, cfg.depth, cfg.precision
    ));
    out.push_str("index,alpha,beta,c,outcome,steps\n");
    for (i, ((a, b, c), o)) in params.iter().zip(&outcomes).enumerate() {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            i,
            a,
            b,
            c,
            o.tag(),
            o.steps(cfg.depth)
        ));
    }
    let mut depths: Vec<usize> = cfg
        .checkpoints
        .iter()
        .copied()
        .filter(|&d| d <= cfg.depth)
        .chain(std::iter::once(cfg.depth))
        .collect();
    depths.sort_unstable();
    depths.dedup();
    for d in depths {
        let survivors = outcomes.iter().filter(|o| o.survives(d, cfg.depth)).count();
        out.push_str(&format!(
            "# checkpoint depth={} survivors={} fraction={:.6}\n",
            d,
            survivors,
            survivors as f64 / cfg.samples.max(1) as f64
        ));
    }
    out
}

/// Survivor fractions parsed back out of a sweep report.
pub fn parse_checkpoints(report: &str) -> Vec<(usize, usize, f64)> {
    report
        .lines()
        .filter_map(|l| {
            let rest = l.strip_prefix("# checkpoint ")?;
            let mut depth = None;
            let mut survivors = None;
            let mut fraction = None;
            for part in rest.split_whitespace() {
                if let Some(v) = part.strip_prefix("depth=") {
                    depth = v.parse().ok();
                } else if let Some(v) = part.strip_prefix("survivors=") {
                    survivors = v.parse().ok();
                } else if let Some(v) = part.strip_prefix("fraction=") {
                    fraction = v.parse().ok();
                }
            }
            Some((depth?, survivors?, fraction?))
        })
        .collect()
}

pub struct BoxDimConfig {
    pub k_min: u32,
    pub k_max: u32,
    pub depth: usize,
    pub budget: usize,
}

/// Whether the box with corner indices `(i, j, l)` at scale `k` meets the
/// undecided set, probed at its eight corners and its center.
struct ScaleProbe {
    corners: Vec<bool>,
    centers: Vec<bool>,
    n: usize,
}

impl ScaleProbe {
    fn corner(&self, i: usize, j: usize, l: usize) -> bool {
        self.corners[(i * (self.n + 1) + j) * (self.n + 1) + l]
    }

    fn center(&self, i: usize, j: usize, l: usize) -> bool {
        self.centers[(i * self.n + j) * self.n + l]
    }

    fn box_survives(&self, i: usize, j: usize, l: usize) -> bool {
        if self.center(i, j, l) {
            return true;
        }
        for di in 0..2 {
            for dj in 0..2 {
                for dl in 0..2 {
                    if self.corner(i + di, j + dj, l + dl) {
                        return true;
                    }
                }
            }
        }
        false
    }
}

/// Probe precision in fractional bits. Grid-aligned dyadics are atypical:
/// every parameter with denominator 2^k resolves within about 2^k induction
/// steps, so raw corners and centers never survive a deep run. Probes are
/// therefore nudged off the grid by a deterministic hash of their position
/// and snapped to exact dyadics at this precision.
const PROBE_BITS: u32 = 53;

/// SplitMix64 finalizer, used as a deterministic position hash.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// An exact dyadic probe coordinate near `v / 2^bits` (grid point when
/// `offset` is false, box center when true), jittered by up to a quarter
/// box side in units of 2^-PROBE_BITS. Clamped inside (0, 1).
fn probe_coord(v: usize, bits: u32, offset: bool, salt: u64) -> Rat128 {
    let base = if offset {
        (2 * v as u64 + 1) << (PROBE_BITS - bits - 1)
    } else {
        (v as u64) << (PROBE_BITS - bits)
    };
    let quarter = 1u64 << (PROBE_BITS - bits - 2);
    let jitter = (mix(salt) % (2 * quarter)) as i64 - quarter as i64;
    let num = (base as i64 + jitter).clamp(1, (1i64 << PROBE_BITS) - 1);
    Ratio::new(num as i128, 1i128 << PROBE_BITS)
}

fn probe_grid(n: usize, bits: u32, depth: usize, budget: usize, offset: bool) -> Vec<bool> {
    let m = if offset { n } else { n + 1 };
    // at depth 0 every outcome survives, whatever the classification says
    if depth == 0 {
        return vec![true; m * m * m];
    }
    (0..m * m * m)
        .into_par_iter()
        .map(|idx| {
            let l = idx % m;
            let j = (idx / m) % m;
            let i = idx / (m * m);
            let salt =
                (bits as u64) << 56 | (offset as u64) << 55 | (idx as u64) << 2;
            let coord = |v: usize, axis: u64| probe_coord(v, bits, offset, salt | axis);
            classify_params(
                coord(i, 0),
                coord(j, 1),
                coord(l, 2),
                depth,
                budget,
            )
            .survives(depth, depth)
        })
        .collect()
}

/// Counts surviving boxes at one scale: the unit cube of `(alpha, beta, c)`
/// is cut into `8^k` boxes of side `2^-k`.
pub fn count_boxes(k: u32, depth: usize, budget: usize) -> (u64, u64) {
    let n = 1usize << k;
    let probe = ScaleProbe {
        corners: probe_grid(n, k, depth, budget, false),
        centers: probe_grid(n, k, depth, budget, true),
        n,
    };
    let mut surviving = 0u64;
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                if probe.box_survives(i, j, l) {
                    surviving += 1;
                }
            }
        }
    }
    (surviving, (n as u64).pow(3))
}

/// Least squares slope of `log2(count)` against `k`. Exact for counts that
/// are powers of two.
pub fn fit_slope(points: &[(u32, u64)]) -> f64 {
    let log2 = |n: u64| -> f64 {
        if n.is_power_of_two() {
            n.trailing_zeros() as f64
        } else {
            (n as f64).log2()
        }
    };
    let m = points.len() as f64;
    let kbar = points.iter().map(|&(k, _)| k as f64).sum::<f64>() / m;
    let ybar = points.iter().map(|&(_, n)| log2(n)).sum::<f64>() / m;
    let num: f64 = points
        .iter()
        .map(|&(k, n)| (k as f64 - kbar) * (log2(n) - ybar))
        .sum();
    let den: f64 = points
        .iter()
        .map(|&(k, _)| (k as f64 - kbar) * (k as f64 - kbar))
        .sum();
    num / den
}

/// Runs the box counting experiment and returns the CSV report.
pub fn boxdim(cfg: &BoxDimConfig) -> String {
    let mut out = String::new();
    out.push_str("# itm boxdim v1\n");
    out.push_str(&format!("# depth={} budget={}\n", cfg.depth, cfg.budget));
    out.push_str("k,boxes_total,boxes_surviving\n");
    let mut points = Vec::new();
    for k in cfg.k_min..=cfg.k_max {
        let (surviving, total) = count_boxes(k, cfg.depth, cfg.budget);
        out.push_str(&format!("{},{},{}\n", k, total, surviving));
        points.push((k, surviving));
    }
    out.push_str(&format!("# slope {:.6}\n", fit_slope(&points)));
    out
}

/// Parses the slope comment back out of a box counting report.
pub fn parse_slope(report: &str) -> Option<f64> {
    report
        .lines()
        .find_map(|l| l.strip_prefix("# slope "))?
        .trim()
        .parse()
        .ok()
}

/// Renders the `(alpha, beta)` square at fixed `c` as a binary PGM image.
///
/// Rows run top to bottom with beta decreasing, so the image is in the
/// usual mathematical orientation. Gray levels: survivors are black,
/// periodic states near black, plain rotations white, finite types shaded
/// by how long the induction ran.
pub fn render_slice(c: Rat128, resolution: u32, depth: usize, budget: usize) -> Vec<u8> {
    let res = resolution as usize;
    let pixels: Vec<u8> = (0..res * res)
        .into_par_iter()
        .map(|idx| {
            let i = idx % res;
            let j = res - 1 - idx / res;
            let alpha = Ratio::new(2 * i as i128 + 1, 2 * res as i128);
            let beta = Ratio::new(2 * j as i128 + 1, 2 * res as i128);
            match classify_params(alpha, beta, c.clone(), depth, budget) {
                Outcome::Survivor => 0,
                Outcome::Periodic { .. } => 16,
                Outcome::GapMiddle { .. } => 32,
                Outcome::Error(_) => 48,
                Outcome::Rotation => 255,
                Outcome::Finite { steps } | Outcome::Tie { steps } => {
                    let bits = (usize::BITS - (steps + 1).leading_zeros()) as usize;
                    (224 - 16 * bits.min(10)) as u8
                }
            }
        })
        .collect();
    let mut out = format!("P5\n{} {}\n255\n", resolution, resolution).into_bytes();
    out.extend_from_slice(&pixels);
    out
}
