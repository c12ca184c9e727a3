//! Reproducible random diagonally dominant matrices.
//!
//! The generator and the drawing order are fixed so that other
//! implementations can reproduce the same ensembles; see
//! `docs/ensemble.md` at the repository root.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Off-diagonal magnitudes and strict-row margins are multiples of this.
const GRID: u64 = 1 << 16;
/// Smallest strict-row margin, in grid units (about 0.1).
const MIN_MARGIN_UNITS: u64 = 6554;

/// The splitmix64 step function.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` from the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// `next_u64() % bound`.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleSpec {
    pub n: usize,
    /// Probability that an off-diagonal entry is nonzero.
    pub density: f64,
    /// Probability that a row is an equality row (`|a_ii| = r_i`).
    pub equality_rows: f64,
    pub seed: u64,
    pub complex_entries: bool,
}

impl EnsembleSpec {
    pub fn new(n: usize, density: f64, equality_rows: f64, seed: u64) -> Self {
        EnsembleSpec {
            n,
            density,
            equality_rows,
            seed,
            complex_entries: false,
        }
    }
}

fn phase(rng: &mut SplitMix64, complex: bool) -> Complex64 {
    match rng.next_below(if complex { 4 } else { 2 }) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(-1.0, 0.0),
        2 => Complex64::new(0.0, 1.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Draws a diagonally dominant matrix.
///
/// All magnitudes are multiples of `2^-16` below 16, so row sums, their
/// splits over index subsets and the products compared by the S-SDD test are
/// exact in double precision. Phases are `±1` (and `±i` for complex
/// ensembles), which keeps moduli exact as well.
pub fn random_dd_matrix(spec: &EnsembleSpec) -> Result<Matrix> {
    let n = spec.n;
    if n < 1 {
        return Err(Error::InvalidArgument(
            "ensemble order must be at least 1".into(),
        ));
    }
    if !(0.0..=1.0).contains(&spec.density) || !(0.0..=1.0).contains(&spec.equality_rows) {
        return Err(Error::InvalidArgument(
            "density and equality_rows must lie in [0, 1]".into(),
        ));
    }
    let grid = GRID as f64;
    let mut rng = SplitMix64::new(spec.seed);
    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        let mut row_sum = 0.0;
        for j in 0..n {
            if j == i || rng.next_f64() >= spec.density {
                continue;
            }
            let magnitude = (1 + rng.next_below(GRID)) as f64 / grid;
            entries[i * n + j] = phase(&mut rng, spec.complex_entries) * magnitude;
            row_sum += magnitude;
        }
        let equality = rng.next_f64() < spec.equality_rows;
        let diagonal = if equality {
            row_sum
        } else {
            let units = MIN_MARGIN_UNITS + rng.next_below(GRID - MIN_MARGIN_UNITS + 1);
            row_sum + units as f64 / grid
        };
        entries[i * n + i] = phase(&mut rng, spec.complex_entries) * diagonal;
    }
    Matrix::from_entries(n, entries)
}
