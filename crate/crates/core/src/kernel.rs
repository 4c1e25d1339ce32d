//! Base kernel bank, random kernel composition and Gram matrices.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::SampleStream;

/// Default upper bound on the number of leaves in a composed kernel.
pub const DEFAULT_K_MAX: usize = 5;

/// Number of entries in [`KernelBank::default_bank`].
pub const DEFAULT_BANK_SIZE: usize = 36;

/// One covariance function with fixed hyperparameters.
///
/// Conventions follow the usual scikit-learn parameterisations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum BaseKernel {
    /// `exp(-2 sin²(π|t - t'| / period) / length_scale²)`
    ExpSineSquared { length_scale: f64, period: f64 },
    /// `sigma0² + t·t'`
    DotProduct { sigma0: f64 },
    /// `exp(-|t - t'|² / (2 length_scale²))`
    Rbf { length_scale: f64 },
    /// `(1 + |t - t'|² / (2 alpha length_scale²))^(-alpha)`
    RationalQuadratic { alpha: f64, length_scale: f64 },
    /// `noise_level` on coincident points, zero elsewhere.
    White { noise_level: f64 },
    /// `value` everywhere.
    Constant { value: f64 },
}

impl BaseKernel {
    pub fn family(&self) -> &'static str {
        match self {
            BaseKernel::ExpSineSquared { .. } => "exp_sine_squared",
            BaseKernel::DotProduct { .. } => "dot_product",
            BaseKernel::Rbf { .. } => "rbf",
            BaseKernel::RationalQuadratic { .. } => "rational_quadratic",
            BaseKernel::White { .. } => "white",
            BaseKernel::Constant { .. } => "constant",
        }
    }

    /// True when the value depends on `|t - t'|` only.
    pub fn is_stationary(&self) -> bool {
        !matches!(self, BaseKernel::DotProduct { .. })
    }

    /// Checks that every hyperparameter is finite and strictly positive.
    /// The dot-product offset may be zero (a pure linear kernel).
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::Config(format!(
                    "{} kernel needs {name} > 0, got {v}",
                    self.family()
                )))
            }
        };
        match *self {
            BaseKernel::ExpSineSquared {
                length_scale,
                period,
            } => {
                positive("length_scale", length_scale)?;
                positive("period", period)
            }
            BaseKernel::DotProduct { sigma0 } => {
                if sigma0.is_finite() && sigma0 >= 0.0 {
                    Ok(())
                } else {
                    Err(Error::Config(format!(
                        "dot_product kernel needs sigma0 >= 0, got {sigma0}"
                    )))
                }
            }
            BaseKernel::Rbf { length_scale } => positive("length_scale", length_scale),
            BaseKernel::RationalQuadratic {
                alpha,
                length_scale,
            } => {
                positive("alpha", alpha)?;
                positive("length_scale", length_scale)
            }
            BaseKernel::White { noise_level } => positive("noise_level", noise_level),
            BaseKernel::Constant { value } => positive("value", value),
        }
    }

    /// Evaluates `κ(t, t2)`.
    pub fn eval(&self, t: f64, t2: f64) -> f64 {
        match *self {
            BaseKernel::DotProduct { sigma0 } => sigma0 * sigma0 + t * t2,
            BaseKernel::White { noise_level } => {
                if t == t2 {
                    noise_level
                } else {
                    0.0
                }
            }
            _ => self.eval_lag((t - t2).abs()),
        }
    }

    /// Stationary kernels as a function of the distance `d = |t - t'|`.
    fn eval_lag(&self, d: f64) -> f64 {
        match *self {
            BaseKernel::ExpSineSquared {
                length_scale,
                period,
            } => {
                let s = (PI * d / period).sin();
                (-2.0 * s * s / (length_scale * length_scale)).exp()
            }
            BaseKernel::Rbf { length_scale } => {
                (-d * d / (2.0 * length_scale * length_scale)).exp()
            }
            BaseKernel::RationalQuadratic {
                alpha,
                length_scale,
            } => (1.0 + d * d / (2.0 * alpha * length_scale * length_scale)).powf(-alpha),
            BaseKernel::White { noise_level } => {
                if d == 0.0 {
                    noise_level
                } else {
                    0.0
                }
            }
            BaseKernel::Constant { value } => value,
            BaseKernel::DotProduct { .. } => unreachable!("dot product is not stationary"),
        }
    }
}

impl fmt::Display for BaseKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BaseKernel::ExpSineSquared {
                length_scale,
                period,
            } => write!(f, "ExpSineSquared(l={length_scale}, p={period})"),
            BaseKernel::DotProduct { sigma0 } => write!(f, "DotProduct(s0={sigma0})"),
            BaseKernel::Rbf { length_scale } => write!(f, "RBF(l={length_scale})"),
            BaseKernel::RationalQuadratic {
                alpha,
                length_scale,
            } => write!(f, "RationalQuadratic(a={alpha}, l={length_scale})"),
            BaseKernel::White { noise_level } => write!(f, "White({noise_level})"),
            BaseKernel::Constant { value } => write!(f, "Constant({value})"),
        }
    }
}

/// Evaluates `k` at `(t, t2)`.
pub fn eval_kernel(k: &BaseKernel, t: f64, t2: f64) -> f64 {
    k.eval(t, t2)
}

/// Ordered, index-stable list of base kernels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct KernelBank {
    kernels: Vec<BaseKernel>,
}

impl KernelBank {
    /// Builds a bank from explicit entries; every entry is validated.
    pub fn new(kernels: Vec<BaseKernel>) -> Result<Self> {
        if kernels.is_empty() {
            return Err(Error::Config("kernel bank is empty".into()));
        }
        for k in &kernels {
            k.validate()?;
        }
        Ok(KernelBank { kernels })
    }

    /// The 36-entry bank: six families, six hyperparameter settings each.
    pub fn default_bank() -> Self {
        let mut kernels = Vec::with_capacity(DEFAULT_BANK_SIZE);
        for period in [
            1.0 / 3.0,
            1.0 / 5.0,
            1.0 / 10.0,
            1.0 / 20.0,
            1.0 / 50.0,
            1.0 / 100.0,
        ] {
            kernels.push(BaseKernel::ExpSineSquared {
                length_scale: 1.0,
                period,
            });
        }
        for sigma0 in [0.0, 0.1, 0.5, 1.0, 2.0, 5.0] {
            kernels.push(BaseKernel::DotProduct { sigma0 });
        }
        for length_scale in [0.02, 0.05, 0.1, 0.2, 0.5, 1.0] {
            kernels.push(BaseKernel::Rbf { length_scale });
        }
        for alpha in [0.1, 1.0, 10.0] {
            for length_scale in [0.05, 0.5] {
                kernels.push(BaseKernel::RationalQuadratic {
                    alpha,
                    length_scale,
                });
            }
        }
        for noise_level in [0.01, 0.05, 0.1, 0.5, 1.0, 2.0] {
            kernels.push(BaseKernel::White { noise_level });
        }
        for value in [0.1, 0.5, 1.0, 2.0, 5.0, 10.0] {
            kernels.push(BaseKernel::Constant { value });
        }
        KernelBank { kernels }
    }

    pub fn len(&self) -> usize {
        self.kernels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kernels.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<&BaseKernel> {
        self.kernels.get(index)
    }

    pub fn kernels(&self) -> &[BaseKernel] {
        &self.kernels
    }
}

impl Default for KernelBank {
    fn default() -> Self {
        KernelBank::default_bank()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CombineOp {
    Sum,
    Product,
}

impl CombineOp {
    pub fn apply(self, a: f64, b: f64) -> f64 {
        match self {
            CombineOp::Sum => a + b,
            CombineOp::Product => a * b,
        }
    }

    fn symbol(self) -> char {
        match self {
            CombineOp::Sum => '+',
            CombineOp::Product => '*',
        }
    }
}

/// Binary tree of bank kernels joined by sums and products.
#[derive(Debug, Clone, PartialEq)]
pub enum KernelExpr {
    Leaf {
        index: usize,
        kernel: BaseKernel,
    },
    Node {
        op: CombineOp,
        left: Box<KernelExpr>,
        right: Box<KernelExpr>,
    },
}

impl KernelExpr {
    pub fn leaf(index: usize, kernel: BaseKernel) -> Self {
        KernelExpr::Leaf { index, kernel }
    }

    pub fn combine(op: CombineOp, left: KernelExpr, right: KernelExpr) -> Self {
        KernelExpr::Node {
            op,
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    pub fn sum(left: KernelExpr, right: KernelExpr) -> Self {
        Self::combine(CombineOp::Sum, left, right)
    }

    pub fn product(left: KernelExpr, right: KernelExpr) -> Self {
        Self::combine(CombineOp::Product, left, right)
    }

    pub fn eval(&self, t: f64, t2: f64) -> f64 {
        match self {
            KernelExpr::Leaf { kernel, .. } => kernel.eval(t, t2),
            KernelExpr::Node { op, left, right } => op.apply(left.eval(t, t2), right.eval(t, t2)),
        }
    }

    /// Leaves in left-to-right order.
    pub fn leaves(&self) -> Vec<(usize, &BaseKernel)> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<(usize, &'a BaseKernel)>) {
        match self {
            KernelExpr::Leaf { index, kernel } => out.push((*index, kernel)),
            KernelExpr::Node { left, right, .. } => {
                left.collect_leaves(out);
                right.collect_leaves(out);
            }
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            KernelExpr::Leaf { .. } => 1,
            KernelExpr::Node { left, right, .. } => left.leaf_count() + right.leaf_count(),
        }
    }

    /// Operators in left-to-right order.
    pub fn operators(&self) -> Vec<CombineOp> {
        let mut out = Vec::new();
        fn walk(e: &KernelExpr, out: &mut Vec<CombineOp>) {
            if let KernelExpr::Node { op, left, right } = e {
                walk(left, out);
                out.push(*op);
                walk(right, out);
            }
        }
        walk(self, &mut out);
        out
    }
}

impl fmt::Display for KernelExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelExpr::Leaf { kernel, .. } => write!(f, "{kernel}"),
            KernelExpr::Node { op, left, right } => {
                write!(f, "({left} {} {right})", op.symbol())
            }
        }
    }
}

/// Draws `K ~ U{1..k_max}` distinct bank entries and `K - 1` operators, and
/// folds them left to right: `((k1 ⋆ k2) ⋆ k3) ⋆ ...`.
pub fn sample_kernel_expr(s: &mut SampleStream, bank: &KernelBank, k_max: usize) -> KernelExpr {
    let k_max = k_max.clamp(1, bank.len());
    let count = s.index_in(1, k_max);
    let picks = s
        .sample_without_replacement(bank.len(), count)
        .expect("count never exceeds bank size");
    let ops: Vec<CombineOp> = (1..count)
        .map(|_| {
            if s.index_in(0, 1) == 0 {
                CombineOp::Sum
            } else {
                CombineOp::Product
            }
        })
        .collect();
    let mut leaves = picks
        .into_iter()
        .map(|i| KernelExpr::leaf(i, bank.kernels[i]));
    let first = leaves.next().expect("at least one leaf");
    leaves
        .zip(ops)
        .fold(first, |acc, (leaf, op)| KernelExpr::combine(op, acc, leaf))
}

/// Dense symmetric matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        SymMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    /// Builds from row-major data without checking symmetry.
    pub fn from_row_major(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::SizeMismatch(format!(
                "{} values for a {n}x{n} matrix",
                data.len()
            )));
        }
        Ok(SymMatrix { n, data })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set_sym(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j).to_bits() == self.get(j, i).to_bits()))
    }
}

/// `n` evenly spaced points on `[0, 1]`; a single point sits at 0.
pub fn unit_grid(n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => {
            let step = 1.0 / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { 1.0 } else { i as f64 * step })
                .collect()
        }
    }
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidLength("time grid is empty".into()));
    }
    if grid.iter().any(|t| !t.is_finite()) || grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidArgument(
            "time grid must be finite and strictly increasing".into(),
        ));
    }
    Ok(())
}

/// True when consecutive spacings agree to within rounding, so that
/// stationary kernels depend on the index lag only.
fn is_evenly_spaced(grid: &[f64]) -> bool {
    let n = grid.len();
    if n < 3 {
        return true;
    }
    let span = grid[n - 1] - grid[0];
    let step = span / (n - 1) as f64;
    let tol = 1e-12 * span.abs().max(f64::MIN_POSITIVE);
    grid.iter()
        .enumerate()
        .all(|(k, &t)| ((t - grid[0]) - k as f64 * step).abs() <= tol)
}

/// Leaf Gram matrix, upper triangle including the diagonal, packed by row.
fn leaf_upper(kernel: &BaseKernel, grid: &[f64], even: bool) -> Vec<f64> {
    let n = grid.len();
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    if even && kernel.is_stationary() {
        // one evaluation per lag; lag k is measured from the first point
        let table: Vec<f64> = grid.iter().map(|&t| kernel.eval_lag(t - grid[0])).collect();
        for i in 0..n {
            out.extend_from_slice(&table[..n - i]);
        }
    } else {
        for i in 0..n {
            for j in i..n {
                out.push(kernel.eval(grid[i], grid[j]));
            }
        }
    }
    out
}

fn expr_upper(e: &KernelExpr, grid: &[f64], even: bool) -> Vec<f64> {
    match e {
        KernelExpr::Leaf { kernel, .. } => leaf_upper(kernel, grid, even),
        KernelExpr::Node { op, left, right } => {
            let mut acc = expr_upper(left, grid, even);
            let rhs = expr_upper(right, grid, even);
            for (a, b) in acc.iter_mut().zip(&rhs) {
                *a = op.apply(*a, *b);
            }
            acc
        }
    }
}

/// Gram matrix of `e` on `grid`: entry `(i, j) = κ*(grid[i], grid[j])`.
///
/// Each unordered pair is evaluated once and mirrored, so the result is exactly
/// symmetric. On evenly spaced grids stationary kernels are evaluated once per
/// lag, which agrees with pointwise evaluation up to rounding of `t - t'`.
pub fn gram_matrix(e: &KernelExpr, grid: &[f64]) -> Result<SymMatrix> {
    check_grid(grid)?;
    let n = grid.len();
    let upper = expr_upper(e, grid, is_evenly_spaced(grid));
    let mut m = SymMatrix::zeros(n);
    let mut k = 0;
    for i in 0..n {
        for j in i..n {
            let v = upper[k];
            k += 1;
            if !v.is_finite() {
                return Err(Error::NonFiniteEntry { row: i, col: j });
            }
            m.set_sym(i, j, v);
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{derive_stream, MasterSeed};
    use proptest::prelude::*;

    #[test]
    fn default_bank_shape() {
        let bank = KernelBank::default_bank();
        assert_eq!(bank.len(), 36);
        let mut families: Vec<_> = bank.kernels().iter().map(|k| k.family()).collect();
        families.dedup();
        assert_eq!(
            families,
            [
                "exp_sine_squared",
                "dot_product",
                "rbf",
                "rational_quadratic",
                "white",
                "constant"
            ]
        );
        assert_eq!(bank, KernelBank::default_bank());
        for k in bank.kernels() {
            k.validate().unwrap();
            for t in [0.0, 0.25, 1.0] {
                assert!(k.eval(t, t).is_finite());
            }
        }
    }

    #[test]
    fn rbf_closed_form() {
        let k = BaseKernel::Rbf { length_scale: 1.0 };
        assert_eq!(eval_kernel(&k, 0.3, 0.3), 1.0);
        assert!((eval_kernel(&k, 0.0, 1.0) - 0.606_530_659_712_633_4).abs() < 1e-15);
    }

    #[test]
    fn white_is_zero_off_diagonal() {
        let k = BaseKernel::White { noise_level: 1.0 };
        assert_eq!(eval_kernel(&k, 0.2, 0.7), 0.0);
        assert_eq!(eval_kernel(&k, 0.2, 0.2), 1.0);
    }

    #[test]
    fn periodic_kernel_repeats() {
        let k = BaseKernel::ExpSineSquared {
            length_scale: 1.0,
            period: 0.2,
        };
        assert!((k.eval(0.0, 0.4) - 1.0).abs() < 1e-12);
        assert!(k.eval(0.0, 0.1) < 1.0);
    }

    #[test]
    fn rejects_non_positive_hyperparameters() {
        assert!(BaseKernel::Rbf { length_scale: 0.0 }.validate().is_err());
        assert!(BaseKernel::Constant { value: -1.0 }.validate().is_err());
        assert!(BaseKernel::DotProduct { sigma0: 0.0 }.validate().is_ok());
        assert!(KernelBank::new(vec![]).is_err());
    }

    #[test]
    fn bank_round_trips_through_json() {
        let bank = KernelBank::default_bank();
        let text = serde_json::to_string(&bank).unwrap();
        assert!(text.contains("\"family\":\"rbf\""));
        let back: KernelBank = serde_json::from_str(&text).unwrap();
        assert_eq!(back, bank);
    }

    #[test]
    fn single_leaf_when_k_max_is_one() {
        let bank = KernelBank::default_bank();
        let mut s = derive_stream(MasterSeed(3), 0);
        for _ in 0..50 {
            let e = sample_kernel_expr(&mut s, &bank, 1);
            assert!(matches!(e, KernelExpr::Leaf { .. }));
        }
    }

    #[test]
    fn leaf_count_census() {
        let bank = KernelBank::default_bank();
        let mut s = derive_stream(MasterSeed(4), 0);
        let mut seen = [false; 6];
        for _ in 0..1000 {
            let e = sample_kernel_expr(&mut s, &bank, 5);
            let leaves = e.leaves();
            assert_eq!(e.operators().len(), leaves.len() - 1);
            seen[leaves.len()] = true;
            let mut idx: Vec<_> = leaves.iter().map(|(i, _)| *i).collect();
            idx.sort_unstable();
            idx.dedup();
            assert_eq!(idx.len(), leaves.len());
            for (i, k) in leaves {
                assert_eq!(bank.get(i), Some(k));
            }
        }
        assert!(seen[1..=5].iter().all(|&b| b));
    }

    #[test]
    fn sampling_is_deterministic() {
        let bank = KernelBank::default_bank();
        let mut a = derive_stream(MasterSeed(9), 2);
        let mut b = derive_stream(MasterSeed(9), 2);
        for _ in 0..20 {
            assert_eq!(
                sample_kernel_expr(&mut a, &bank, 5),
                sample_kernel_expr(&mut b, &bank, 5)
            );
        }
    }

    #[test]
    fn operators_fold_left() {
        let c = |v| KernelExpr::leaf(0, BaseKernel::Constant { value: v });
        // (2 + 3) * 4 = 20, whereas 2 + (3 * 4) = 14
        let e = KernelExpr::product(KernelExpr::sum(c(2.0), c(3.0)), c(4.0));
        assert_eq!(e.eval(0.0, 0.5), 20.0);
        assert_eq!(e.to_string(), "((Constant(2) + Constant(3)) * Constant(4))");
    }

    #[test]
    fn constant_sum_gram() {
        let e = KernelExpr::sum(
            KernelExpr::leaf(0, BaseKernel::Constant { value: 1.0 }),
            KernelExpr::leaf(1, BaseKernel::Constant { value: 2.0 }),
        );
        let g = gram_matrix(&e, &unit_grid(5)).unwrap();
        assert!(g.as_slice().iter().all(|&v| v == 3.0));
    }

    #[test]
    fn white_factor_annihilates_off_diagonal() {
        let e = KernelExpr::product(
            KernelExpr::leaf(0, BaseKernel::Rbf { length_scale: 0.3 }),
            KernelExpr::leaf(1, BaseKernel::White { noise_level: 0.5 }),
        );
        let g = gram_matrix(&e, &unit_grid(4)).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(g.get(i, j), if i == j { 0.5 } else { 0.0 });
            }
        }
    }

    #[test]
    fn gram_rejects_bad_grids() {
        let e = KernelExpr::leaf(0, BaseKernel::Constant { value: 1.0 });
        assert!(gram_matrix(&e, &[]).is_err());
        assert!(gram_matrix(&e, &[0.0, 0.5, 0.5]).is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let big = KernelExpr::leaf(0, BaseKernel::Constant { value: 1e200 });
        let e = KernelExpr::product(big.clone(), big);
        assert!(matches!(
            gram_matrix(&e, &unit_grid(3)),
            Err(Error::NonFiniteEntry { .. })
        ));
    }

    #[test]
    fn unit_grid_endpoints() {
        let g = unit_grid(1024);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[1023], 1.0);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    fn arb_expr() -> impl Strategy<Value = KernelExpr> {
        (any::<u64>(), 1usize..6).prop_map(|(seed, k)| {
            let mut s = derive_stream(MasterSeed(seed), 0);
            sample_kernel_expr(&mut s, &KernelBank::default_bank(), k)
        })
    }

    proptest! {
        #[test]
        fn gram_is_exactly_symmetric(e in arb_expr()) {
            let g = gram_matrix(&e, &unit_grid(17)).unwrap();
            prop_assert!(g.is_symmetric());
        }

        #[test]
        fn gram_matches_pointwise_eval(e in arb_expr(), uneven in any::<bool>()) {
            let mut grid = unit_grid(9);
            if uneven {
                grid[4] = 0.47;
            }
            let g = gram_matrix(&e, &grid).unwrap();
            for i in 0..9 {
                for j in 0..9 {
                    let want = e.eval(grid[i], grid[j]);
                    if uneven {
                        prop_assert_eq!(g.get(i, j).to_bits(), want.to_bits());
                    } else {
                        prop_assert!((g.get(i, j) - want).abs() <= 1e-12 * want.abs().max(1.0));
                    }
                }
            }
        }

        #[test]
        fn gram_respects_composition(a in arb_expr(), b in arb_expr()) {
            let grid = unit_grid(12);
            let ga = gram_matrix(&a, &grid).unwrap();
            let gb = gram_matrix(&b, &grid).unwrap();
            let sum = gram_matrix(&KernelExpr::sum(a.clone(), b.clone()), &grid).unwrap();
            let prod = gram_matrix(&KernelExpr::product(a, b), &grid).unwrap();
            for k in 0..grid.len() * grid.len() {
                let (x, y) = (ga.as_slice()[k], gb.as_slice()[k]);
                prop_assert_eq!(sum.as_slice()[k], x + y);
                prop_assert_eq!(prod.as_slice()[k], x * y);
            }
        }
    }
}
