//! Generators for `(f, u)` pairs satisfying `Δu = f` with `u = 0` on the
//! boundary: six closed-form families and random smooth pairs built from a
//! tanh network times the boundary bump `x(1−x)y(1−y)`.

mod jet;

pub use jet::Jet2;

use ndarray::{Array1, Array2};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{GridSpec, PairSample, Provenance, ScalarField};
use crate::rng::{domain, substream};
use crate::scalar::Scalar;

/// The closed-form pair families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AnalyticalKind {
    Type1,
    Type2,
    Type3,
    Type4,
    Type5,
    Type6,
}

impl AnalyticalKind {
    pub const ALL: [AnalyticalKind; 6] = [
        AnalyticalKind::Type1,
        AnalyticalKind::Type2,
        AnalyticalKind::Type3,
        AnalyticalKind::Type4,
        AnalyticalKind::Type5,
        AnalyticalKind::Type6,
    ];
}

/// A fully parameterized closed-form pair.
///
/// All integer parameters are at least 1 and are kept at or below `N/2` so
/// the sampled pair stays band-limited below the grid Nyquist mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnalyticalSpec {
    /// `u = sin(nπx)·sin(kπy)`
    Type1 { n: u32, k: u32 },
    /// `u = sin(nπx)·sin(kπy)·sin(jπx)`
    Type2 { n: u32, k: u32, j: u32 },
    /// `u = sin(nπx)·sin(kπy)·cos(nπx)`
    Type3 { n: u32, k: u32 },
    /// `u = sin(nπx)·sin(kπy)·cos(jπx)`
    Type4 { n: u32, k: u32, j: u32 },
    /// `u = n·(x−1)x(y−1)y·e^{x−y}`
    Type5 { n: u32 },
    /// `u = n·(x−1)x(y−1)y·e^{y−x}`
    Type6 { n: u32 },
}

impl AnalyticalSpec {
    pub fn kind(&self) -> AnalyticalKind {
        match self {
            AnalyticalSpec::Type1 { .. } => AnalyticalKind::Type1,
            AnalyticalSpec::Type2 { .. } => AnalyticalKind::Type2,
            AnalyticalSpec::Type3 { .. } => AnalyticalKind::Type3,
            AnalyticalSpec::Type4 { .. } => AnalyticalKind::Type4,
            AnalyticalSpec::Type5 { .. } => AnalyticalKind::Type5,
            AnalyticalSpec::Type6 { .. } => AnalyticalKind::Type6,
        }
    }

    fn params(&self) -> Vec<u32> {
        match *self {
            AnalyticalSpec::Type1 { n, k } | AnalyticalSpec::Type3 { n, k } => vec![n, k],
            AnalyticalSpec::Type2 { n, k, j } | AnalyticalSpec::Type4 { n, k, j } => {
                vec![n, k, j]
            }
            AnalyticalSpec::Type5 { n } | AnalyticalSpec::Type6 { n } => vec![n],
        }
    }

    fn validate(&self, grid: GridSpec) -> Result<()> {
        let bound = (grid.n_interior() / 2) as u32;
        for p in self.params() {
            if p < 1 || p > bound {
                return Err(Error::invalid(
                    "analytical spec",
                    format!("parameter {p} outside 1..={bound} for N={}", grid.n_interior()),
                ));
            }
        }
        Ok(())
    }

    /// Evaluate the closed forms at a point, returning `(f, u)`.
    pub fn evaluate<F: Scalar>(&self, x: F, y: F) -> (F, F) {
        let pi = F::PI();
        let c = |v: u32| F::from_u32(v).expect("small integer");
        match *self {
            AnalyticalSpec::Type1 { n, k } => {
                let (n, k) = (c(n), c(k));
                let u = (n * pi * x).sin() * (k * pi * y).sin();
                let f = -pi * pi * (n * n + k * k) * u;
                (f, u)
            }
            AnalyticalSpec::Type2 { n, k, j } => {
                let (n, k, j) = (c(n), c(k), c(j));
                let sy = (k * pi * y).sin();
                let u = (n * pi * x).sin() * (j * pi * x).sin() * sy;
                let f = -pi
                    * pi
                    * (-(j + j) * n * (j * pi * x).cos() * (n * pi * x).cos()
                        + (j * j + k * k + n * n) * (j * pi * x).sin() * (n * pi * x).sin())
                    * sy;
                (f, u)
            }
            AnalyticalSpec::Type3 { n, k } => {
                let (n, k) = (c(n), c(k));
                let u = (n * pi * x).sin() * (n * pi * x).cos() * (k * pi * y).sin();
                let half = F::one() / F::from_index(2);
                let f = -half
                    * (k * k + F::from_index(4) * n * n)
                    * pi
                    * pi
                    * ((n + n) * pi * x).sin()
                    * (k * pi * y).sin();
                (f, u)
            }
            AnalyticalSpec::Type4 { n, k, j } => {
                let (n, k, j) = (c(n), c(k), c(j));
                let sy = (k * pi * y).sin();
                let u = (n * pi * x).sin() * (j * pi * x).cos() * sy;
                let f = -pi
                    * pi
                    * ((j + j) * n * (n * pi * x).cos() * (j * pi * x).sin()
                        + (j * j + k * k + n * n) * (j * pi * x).cos() * (n * pi * x).sin())
                    * sy;
                (f, u)
            }
            AnalyticalSpec::Type5 { n } => {
                let n = c(n);
                let e = (x - y).exp();
                let two = F::from_index(2);
                let u = n * (x - F::one()) * x * (y - F::one()) * y * e;
                let f = two * e * n * x * (y - F::one()) * (two + x * (y - two) + y);
                (f, u)
            }
            AnalyticalSpec::Type6 { n } => {
                let n = c(n);
                let e = (y - x).exp();
                let two = F::from_index(2);
                let u = n * (x - F::one()) * x * (y - F::one()) * y * e;
                let f = two * n * e * y * (x - F::one()) * (two + x - (y + y) + x * y);
                (f, u)
            }
        }
    }
}

/// Sample a closed-form pair on the grid.
pub fn gen_analytical<F: Scalar>(spec: AnalyticalSpec, grid: GridSpec) -> Result<PairSample<F>> {
    spec.validate(grid)?;
    let n = grid.n_interior();
    let mut f_vals = Array2::zeros((n, n));
    let mut u_vals = Array2::zeros((n, n));
    for i in 0..n {
        let x = grid.coord::<F>(i);
        for j in 0..n {
            let y = grid.coord::<F>(j);
            let (f, u) = spec.evaluate(x, y);
            f_vals[[i, j]] = f;
            u_vals[[i, j]] = u;
        }
    }
    PairSample::new(
        ScalarField::new(grid, f_vals)?,
        ScalarField::new(grid, u_vals)?,
        Provenance::Analytical(spec.kind()),
    )
}

/// Default hidden width of the random tanh networks.
pub const DEFAULT_HIDDEN_WIDTH: usize = 32;

/// A random network `g(x, y)` with three tanh hidden layers and a linear
/// output; layer widths `[2, w, w, w, 1]`.
#[derive(Debug, Clone)]
pub struct TanhNetSpec<F> {
    pub hidden_width: usize,
    /// One matrix per affine layer: shapes `(w,2), (w,w), (w,w), (1,w)`.
    pub weights: Vec<Array2<F>>,
    /// One vector per affine layer: lengths `w, w, w, 1`.
    pub biases: Vec<Array1<F>>,
    pub seed: u64,
}

/// Standard deviation of the hidden-layer parameters.
const HIDDEN_STD: f64 = 1.0;
/// Standard deviation of the output-layer parameters. Together with
/// [`HIDDEN_STD`] this fixes the amplitude and roughness of the random
/// pairs so the finite-difference baselines land at their reference
/// magnitudes (forward ≈ 1e-6, inverse ≈ 1e-2 on a 64-point grid).
const OUTPUT_STD: f64 = 0.05;

impl<F: Scalar> TanhNetSpec<F> {
    /// Draw all parameters i.i.d. normal: `N(0, 1)` on the hidden layers,
    /// `N(0, 0.05²)` on the linear output layer.
    pub fn random(hidden_width: usize, seed: u64) -> Self {
        let mut rng = substream(seed, domain::DATAGEN, u64::MAX, 0);
        let widths = [2, hidden_width, hidden_width, hidden_width, 1];
        let mut weights = Vec::with_capacity(4);
        let mut biases = Vec::with_capacity(4);
        for l in 0..4 {
            let (fan_in, fan_out) = (widths[l], widths[l + 1]);
            let std = if l == 3 {
                F::from_f64(OUTPUT_STD).expect("constant fits scalar")
            } else {
                F::from_f64(HIDDEN_STD).expect("constant fits scalar")
            };
            weights.push(Array2::from_shape_simple_fn((fan_out, fan_in), || {
                F::standard_normal(&mut rng) * std
            }));
            biases.push(Array1::from_shape_simple_fn(fan_out, || {
                F::standard_normal(&mut rng) * std
            }));
        }
        TanhNetSpec {
            hidden_width,
            weights,
            biases,
            seed,
        }
    }
}

/// Propagate second-order jets through the network: exact value, gradient,
/// and Hessian of `g(x, y)`.
pub fn tanh_net_jet<F: Scalar>(spec: &TanhNetSpec<F>, x: F, y: F) -> Jet2<F> {
    let mut acts: Vec<Jet2<F>> = vec![Jet2::x_var(x), Jet2::y_var(y)];
    for (l, (w, b)) in spec.weights.iter().zip(&spec.biases).enumerate() {
        let last = l == spec.weights.len() - 1;
        let mut next = Vec::with_capacity(w.nrows());
        for row in 0..w.nrows() {
            let mut z = Jet2::constant(b[row]);
            for (col, a) in acts.iter().enumerate() {
                z = z + a.scale(w[[row, col]]);
            }
            next.push(if last { z } else { z.tanh() });
        }
        acts = next;
    }
    acts[0]
}

/// The boundary bump `x(1−x)y(1−y)` as a jet.
fn bump_jet<F: Scalar>(x: F, y: F) -> Jet2<F> {
    let one = Jet2::constant(F::one());
    let jx = Jet2::x_var(x);
    let jy = Jet2::y_var(y);
    jx * (one - jx) * jy * (one - jy)
}

/// Random smooth pair `u = g(x,y)·x(1−x)y(1−y)`, `f = Δu` computed exactly
/// through the jets.
pub fn gen_nn_pair<F: Scalar>(spec: &TanhNetSpec<F>, grid: GridSpec) -> PairSample<F> {
    let n = grid.n_interior();
    let mut f_vals = Array2::zeros((n, n));
    let mut u_vals = Array2::zeros((n, n));
    for i in 0..n {
        let x = grid.coord::<F>(i);
        for j in 0..n {
            let y = grid.coord::<F>(j);
            let u_jet = tanh_net_jet(spec, x, y) * bump_jet(x, y);
            u_vals[[i, j]] = u_jet.value;
            f_vals[[i, j]] = u_jet.laplacian();
        }
    }
    PairSample {
        f: ScalarField::new(grid, f_vals).expect("finite by construction"),
        u: ScalarField::new(grid, u_vals).expect("finite by construction"),
        provenance: Provenance::NeuralNet,
    }
}

/// Proportions over the seven pair sources, in the order
/// `type1..type6, neural-net`.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetMix {
    weights: [f64; 7],
}

impl DatasetMix {
    pub const SOURCE_NAMES: [&'static str; 7] = [
        "type1", "type2", "type3", "type4", "type5", "type6", "nn",
    ];

    /// Weights must be non-negative and sum to 1 (to within 1e-9).
    pub fn new(weights: [f64; 7]) -> Result<Self> {
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidMix("negative or non-finite weight".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidMix(format!(
                "proportions sum to {total}, expected 1"
            )));
        }
        Ok(DatasetMix { weights })
    }

    /// Only neural-net pairs.
    pub fn neural_net_only() -> Self {
        DatasetMix {
            weights: [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0],
        }
    }

    /// Only one closed-form family.
    pub fn single_analytical(kind: AnalyticalKind) -> Self {
        let mut weights = [0.0; 7];
        let idx = AnalyticalKind::ALL.iter().position(|k| *k == kind).unwrap();
        weights[idx] = 1.0;
        DatasetMix { weights }
    }

    /// Equal weight on all seven sources.
    pub fn uniform() -> Self {
        DatasetMix {
            weights: [1.0 / 7.0; 7],
        }
    }

    pub fn weights(&self) -> &[f64; 7] {
        &self.weights
    }

    fn pick(&self, p: f64) -> usize {
        let mut acc = 0.0;
        for (idx, w) in self.weights.iter().enumerate() {
            acc += w;
            if p < acc {
                return idx;
            }
        }
        // p landed in the round-off tail; take the last non-zero source.
        self.weights.iter().rposition(|w| *w > 0.0).unwrap_or(6)
    }
}

/// Largest mode parameter drawn for the closed-form families.
const MAX_ANALYTICAL_PARAM: u32 = 8;

fn draw_spec<R: Rng>(kind_idx: usize, rng: &mut R, grid: GridSpec) -> AnalyticalSpec {
    let bound = MAX_ANALYTICAL_PARAM.min((grid.n_interior() / 2) as u32).max(1);
    let mut draw = |bound: u32| rng.gen_range(1..=bound);
    match kind_idx {
        0 => AnalyticalSpec::Type1 {
            n: draw(bound),
            k: draw(bound),
        },
        1 => AnalyticalSpec::Type2 {
            n: draw(bound),
            k: draw(bound),
            j: draw(bound),
        },
        2 => AnalyticalSpec::Type3 {
            // The x-factor collapses to mode 2n; keep it below Nyquist.
            n: draw(bound.min((grid.n_interior() / 4) as u32).max(1)),
            k: draw(bound),
        },
        3 => AnalyticalSpec::Type4 {
            n: draw(bound),
            k: draw(bound),
            j: draw(bound),
        },
        4 => AnalyticalSpec::Type5 { n: draw(bound) },
        5 => AnalyticalSpec::Type6 { n: draw(bound) },
        _ => unreachable!("analytical kind index"),
    }
}

/// Generate one sample of the dataset stream.
///
/// The output depends only on `(seed, index)`, never on scheduling.
pub fn gen_sample<F: Scalar>(
    mix: &DatasetMix,
    seed: u64,
    index: u64,
    grid: GridSpec,
) -> Result<PairSample<F>> {
    let mut rng = substream(seed, domain::DATAGEN, index, 0);
    let kind_idx = mix.pick(rng.gen::<f64>());
    if kind_idx == 6 {
        let net_seed = rng.gen::<u64>();
        let spec = TanhNetSpec::<F>::random(DEFAULT_HIDDEN_WIDTH, net_seed);
        Ok(gen_nn_pair(&spec, grid))
    } else {
        let spec = draw_spec(kind_idx, &mut rng, grid);
        gen_analytical(spec, grid)
    }
}

/// Generate `count` samples, in parallel, deterministically in `seed`.
pub fn gen_dataset<F: Scalar>(
    count: usize,
    mix: &DatasetMix,
    seed: u64,
    grid: GridSpec,
) -> Result<Vec<PairSample<F>>> {
    if count == 0 {
        return Err(Error::EmptyBatch);
    }
    (0..count as u64)
        .into_par_iter()
        .map(|index| gen_sample(mix, seed, index, grid))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fd::fd_laplacian;
    use crate::grid::mae;
    use crate::spectral::{eigenvalues, spectral_laplacian};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn grid(n: usize) -> GridSpec {
        GridSpec::new(n).unwrap()
    }

    #[test]
    fn closed_form_point_values() {
        // Evaluated by hand from the formulas.
        let (f, u) = AnalyticalSpec::Type1 { n: 1, k: 1 }.evaluate::<f64>(0.5, 0.5);
        assert_abs_diff_eq!(u, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(f, -2.0 * PI * PI, epsilon = 1e-12);

        let (f, u) = AnalyticalSpec::Type5 { n: 2 }.evaluate::<f64>(0.5, 0.5);
        assert_abs_diff_eq!(u, 0.125, epsilon = 1e-15);
        assert_abs_diff_eq!(f, -1.75, epsilon = 1e-13);

        // Type-3 at (0.25, 0.5): sin(2nπ/4) = 1, sin(3π/2) = −1.
        let (f, _) = AnalyticalSpec::Type3 { n: 1, k: 3 }.evaluate::<f64>(0.25, 0.5);
        assert_abs_diff_eq!(f, 6.5 * PI * PI, epsilon = 1e-12);
    }

    /// Band-limited families (1, 3, 4) satisfy Δu = f exactly under the
    /// spectral Laplacian.
    #[test]
    fn band_limited_families_are_spectrally_exact() {
        let g = grid(64);
        let eig = eigenvalues::<f64>(g);
        let specs = [
            AnalyticalSpec::Type1 { n: 3, k: 4 },
            AnalyticalSpec::Type3 { n: 2, k: 5 },
            AnalyticalSpec::Type4 { n: 2, k: 2, j: 3 },
        ];
        for spec in specs {
            let pair = gen_analytical::<f64>(spec, g).unwrap();
            let err = mae(&spectral_laplacian(&pair.u, &eig), &pair.f).unwrap();
            assert!(err < 1e-9, "{spec:?} residual {err}");
        }
    }

    /// The remaining families are smooth but not band-limited; the discrete
    /// Laplacian converges to f at second order.
    #[test]
    fn other_families_converge_second_order() {
        let specs = [
            AnalyticalSpec::Type2 { n: 2, k: 3, j: 5 },
            AnalyticalSpec::Type5 { n: 3 },
            AnalyticalSpec::Type6 { n: 1 },
        ];
        for spec in specs {
            let err = |n: usize| {
                let pair = gen_analytical::<f64>(spec, grid(n)).unwrap();
                mae(&fd_laplacian(&pair.u), &pair.f).unwrap()
            };
            let ratio = err(32) / err(64);
            assert!(
                (3.2..=4.8).contains(&ratio),
                "{spec:?} convergence ratio {ratio}"
            );
        }
    }

    #[test]
    fn analytical_params_are_validated() {
        let g = grid(8);
        assert!(gen_analytical::<f64>(AnalyticalSpec::Type1 { n: 5, k: 1 }, g).is_err());
        assert!(gen_analytical::<f64>(AnalyticalSpec::Type1 { n: 0, k: 1 }, g).is_err());
        assert!(gen_analytical::<f64>(AnalyticalSpec::Type1 { n: 4, k: 4 }, g).is_ok());
    }

    /// Central finite differences as the independent oracle for the jets.
    #[test]
    fn net_jets_match_finite_differences() {
        let step = 1e-5;
        for trial in 0..100u64 {
            let spec = TanhNetSpec::<f64>::random(8, 10_000 + trial);
            let mut rng = substream(500 + trial, 0xEE, 0, 0);
            let x: f64 = rng.gen_range(0.1..0.9);
            let y: f64 = rng.gen_range(0.1..0.9);
            let g = |x: f64, y: f64| -> f64 { tanh_net_jet(&spec, x, y).value };

            let j = tanh_net_jet(&spec, x, y);
            let gx = (g(x + step, y) - g(x - step, y)) / (2.0 * step);
            let gy = (g(x, y + step) - g(x, y - step)) / (2.0 * step);
            let hxx = (g(x + step, y) - 2.0 * g(x, y) + g(x - step, y)) / (step * step);
            let hyy = (g(x, y + step) - 2.0 * g(x, y) + g(x, y - step)) / (step * step);
            let hxy = (g(x + step, y + step) - g(x + step, y - step) - g(x - step, y + step)
                + g(x - step, y - step))
                / (4.0 * step * step);

            // Two-term tolerance: the absolute part covers the oracle's own
            // round-off floor (≈ 4ε/step² for the second differences).
            let grad_ok = |a: f64, b: f64| (a - b).abs() <= 1e-5 * b.abs() + 1e-8;
            let hess_ok = |a: f64, b: f64| (a - b).abs() <= 1e-4 * b.abs() + 2e-5;
            assert!(grad_ok(j.dx, gx), "dx {} vs {}", j.dx, gx);
            assert!(grad_ok(j.dy, gy), "dy {} vs {}", j.dy, gy);
            assert!(hess_ok(j.dxx, hxx), "dxx {} vs {}", j.dxx, hxx);
            assert!(hess_ok(j.dyy, hyy), "dyy {} vs {}", j.dyy, hyy);
            assert!(hess_ok(j.dxy, hxy), "dxy {} vs {}", j.dxy, hxy);
        }
    }

    /// With zero weights into the output and output bias 1 the network is
    /// constantly one, so u is the bump and f its closed-form Laplacian.
    #[test]
    fn constant_net_gives_bump_pair() {
        let mut spec = TanhNetSpec::<f64>::random(4, 99);
        spec.weights[3].fill(0.0);
        spec.biases[3].fill(1.0);
        let g = grid(32);
        let pair = gen_nn_pair(&spec, g);
        let bump = ScalarField::from_fn(g, |x: f64, y: f64| x * (1.0 - x) * y * (1.0 - y));
        let lap = ScalarField::from_fn(g, |x: f64, y: f64| {
            -2.0 * y * (1.0 - y) - 2.0 * x * (1.0 - x)
        });
        assert!(mae(&pair.u, &bump).unwrap() < 1e-14);
        assert!(mae(&pair.f, &lap).unwrap() < 1e-12);
    }

    #[test]
    fn nn_pairs_vanish_toward_boundary() {
        let spec = TanhNetSpec::<f64>::random(DEFAULT_HIDDEN_WIDTH, 123);
        let g = grid(64);
        let pair = gen_nn_pair(&spec, g);
        let n = 64;
        let global_max = pair.u.max_abs();
        let mut edge_max = 0.0f64;
        for i in 0..n {
            for &j in &[0, n - 1] {
                edge_max = edge_max.max(pair.u.values()[[i, j]].abs());
                edge_max = edge_max.max(pair.u.values()[[j, i]].abs());
            }
        }
        let h = 1.0 / 65.0;
        assert!(
            edge_max <= 8.0 * h * global_max,
            "edge {edge_max} vs global {global_max}"
        );
    }

    #[test]
    fn nn_laplacian_converges_second_order() {
        let spec = TanhNetSpec::<f64>::random(DEFAULT_HIDDEN_WIDTH, 2024);
        let err = |n: usize| {
            let pair = gen_nn_pair(&spec, grid(n));
            mae(&fd_laplacian(&pair.u), &pair.f).unwrap()
        };
        let ratio = err(32) / err(64);
        assert!((3.0..=5.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn dataset_is_deterministic_and_mixed() {
        let g = grid(16);
        let mix = DatasetMix::new([0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.5]).unwrap();
        let a = gen_dataset::<f64>(64, &mix, 77, g).unwrap();
        let b = gen_dataset::<f64>(64, &mix, 77, g).unwrap();
        for (pa, pb) in a.iter().zip(&b) {
            assert_eq!(pa.f.values(), pb.f.values());
            assert_eq!(pa.u.values(), pb.u.values());
            assert_eq!(pa.provenance, pb.provenance);
        }
        let t1 = a
            .iter()
            .filter(|p| p.provenance == Provenance::Analytical(AnalyticalKind::Type1))
            .count();
        let nn = a
            .iter()
            .filter(|p| p.provenance == Provenance::NeuralNet)
            .count();
        assert_eq!(t1 + nn, 64);
        // 4-sigma band around the 50/50 split.
        assert!((12..=52).contains(&t1), "type1 count {t1}");

        let c = gen_dataset::<f64>(4, &mix, 78, g).unwrap();
        assert_ne!(c[0].u.values(), a[0].u.values());
    }

    #[test]
    fn three_type1_samples_have_distinct_params() {
        let g = grid(64);
        let mix = DatasetMix::single_analytical(AnalyticalKind::Type1);
        let set = gen_dataset::<f64>(3, &mix, 41, g).unwrap();
        // Same seed reproduces bytes; this fixed seed happens to draw three
        // distinct (n,k) pairs, visible as pairwise-different fields.
        let again = gen_dataset::<f64>(3, &mix, 41, g).unwrap();
        for (pa, pb) in set.iter().zip(&again) {
            assert_eq!(pa.u.values(), pb.u.values());
        }
        for a in 0..3 {
            for b in (a + 1)..3 {
                assert_ne!(
                    set[a].u.values(),
                    set[b].u.values(),
                    "samples {a} and {b} coincide"
                );
            }
        }
    }

    #[test]
    fn mix_validation() {
        assert!(DatasetMix::new([0.2; 7]).is_err());
        assert!(DatasetMix::new([-0.1, 1.1, 0.0, 0.0, 0.0, 0.0, 0.0]).is_err());
        assert!(DatasetMix::new([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]).is_ok());
        assert!(gen_dataset::<f64>(0, &DatasetMix::uniform(), 1, grid(8)).is_err());
    }
}
