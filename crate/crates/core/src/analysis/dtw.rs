use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generate::SeriesBatch;

/// Local cost between two aligned samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LocalCost {
    #[default]
    Absolute,
    Squared,
}

impl LocalCost {
    #[inline]
    fn eval(self, a: f64, b: f64) -> f64 {
        match self {
            LocalCost::Absolute => (a - b).abs(),
            LocalCost::Squared => (a - b) * (a - b),
        }
    }
}

/// DTW with absolute-difference cost; see [`dtw_with`].
pub fn dtw(x: &[f64], y: &[f64], band: Option<usize>) -> Result<f64> {
    dtw_with(x, y, band, LocalCost::Absolute)
}

/// Accumulated cost of the cheapest warping path between `x` and `y`, using
/// the symmetric match / insert / delete step pattern. With `band = Some(w)`
/// cells with `|i - j| > w` are excluded (Sakoe–Chiba).
pub fn dtw_with(x: &[f64], y: &[f64], band: Option<usize>, cost: LocalCost) -> Result<f64> {
    let (n, m) = (x.len(), y.len());
    if n == 0 || m == 0 {
        return Err(Error::InvalidLength("dtw needs non-empty series".into()));
    }
    let diff = n.abs_diff(m);
    let w = match band {
        Some(w) if w < diff => return Err(Error::BandTooNarrow { band: w, diff }),
        Some(w) => w,
        None => n.max(m),
    };

    let mut prev = vec![f64::INFINITY; m + 1];
    let mut curr = vec![f64::INFINITY; m + 1];
    prev[0] = 0.0;
    for i in 1..=n {
        curr.fill(f64::INFINITY);
        let lo = i.saturating_sub(w).max(1);
        let hi = (i + w).min(m);
        let xi = x[i - 1];
        for j in lo..=hi {
            let best = prev[j - 1].min(prev[j]).min(curr[j - 1]);
            curr[j] = cost.eval(xi, y[j - 1]) + best;
        }
        std::mem::swap(&mut prev, &mut curr);
    }
    Ok(prev[m])
}

/// Symmetric pairwise distance matrix with a zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DtwMatrix {
    n: usize,
    distances: Vec<f64>,
}

impl DtwMatrix {
    /// Wraps a full row-major matrix after checking symmetry, the zero
    /// diagonal and non-negativity.
    pub fn from_full(n: usize, distances: Vec<f64>) -> Result<Self> {
        if distances.len() != n * n {
            return Err(Error::SizeMismatch(format!(
                "{} entries for a {n}x{n} matrix",
                distances.len()
            )));
        }
        for i in 0..n {
            if distances[i * n + i] != 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "diagonal entry {i} is not zero"
                )));
            }
            for j in 0..i {
                let v = distances[i * n + j];
                if !(v >= 0.0) || v != distances[j * n + i] {
                    return Err(Error::InvalidArgument(format!(
                        "entry ({i}, {j}) is negative, NaN or asymmetric"
                    )));
                }
            }
        }
        Ok(DtwMatrix { n, distances })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.distances[i * self.n + j]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.distances
    }
}

/// Pairwise DTW between `rows`; only the upper triangle is computed.
pub fn pairwise_dtw_rows(
    rows: &[Vec<f64>],
    band: Option<usize>,
    cost: LocalCost,
) -> Result<DtwMatrix> {
    let n = rows.len();
    let upper: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (i + 1..n)
                .map(|j| dtw_with(&rows[i], &rows[j], band, cost))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<_>>()?;
    let mut distances = vec![0.0; n * n];
    for (i, row) in upper.iter().enumerate() {
        for (k, &v) in row.iter().enumerate() {
            let j = i + 1 + k;
            distances[i * n + j] = v;
            distances[j * n + i] = v;
        }
    }
    Ok(DtwMatrix { n, distances })
}

/// Pairwise DTW over the first `subset` rows of `batch`.
pub fn pairwise_dtw(batch: &SeriesBatch, subset: usize, band: Option<usize>) -> Result<DtwMatrix> {
    if subset > batch.n() {
        return Err(Error::InvalidArgument(format!(
            "subset {subset} exceeds the {} rows available",
            batch.n()
        )));
    }
    let rows: Vec<Vec<f64>> = (0..subset).map(|i| batch.row_f64(i)).collect();
    pairwise_dtw_rows(&rows, band, LocalCost::Absolute)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn self_distance_is_zero() {
        let x = [0.3, -1.0, 4.0, 2.5];
        assert_eq!(dtw(&x, &x, None).unwrap(), 0.0);
    }

    #[test]
    fn small_examples() {
        assert_eq!(dtw(&[0.0, 0.0], &[1.0, 1.0], None).unwrap(), 2.0);
        assert_eq!(
            dtw(&[0.0, 3.0, 6.0], &[0.0, 3.0, 3.0, 6.0], None).unwrap(),
            0.0
        );
        assert_eq!(
            dtw_with(&[0.0, 0.0], &[2.0, 2.0], None, LocalCost::Squared).unwrap(),
            8.0
        );
    }

    #[test]
    fn band_checks() {
        let x = [1.0, 2.0, 3.0, 4.0, 5.0];
        let y = [1.0, 2.0];
        assert!(matches!(
            dtw(&x, &y, Some(2)),
            Err(Error::BandTooNarrow { band: 2, diff: 3 })
        ));
        assert!(dtw(&x, &y, Some(3)).unwrap().is_finite());
        assert!(dtw(&[], &y, None).is_err());
    }

    #[test]
    fn narrow_band_can_only_raise_cost() {
        let x = [0.0, 5.0, 0.0, 0.0, 0.0, 0.0];
        let y = [0.0, 0.0, 0.0, 0.0, 5.0, 0.0];
        assert_eq!(dtw(&x, &y, None).unwrap(), 0.0);
        assert_eq!(dtw(&x, &y, Some(3)).unwrap(), 0.0);
        assert_eq!(dtw(&x, &y, Some(2)).unwrap(), 10.0);
        assert_eq!(dtw(&x, &y, Some(0)).unwrap(), 10.0);
    }

    #[test]
    fn pairwise_composition() {
        let rows = vec![
            vec![0.0, 1.0, 2.0],
            vec![2.0, 1.0, 0.0],
            vec![0.0, 0.0, 5.0],
        ];
        let d = pairwise_dtw_rows(&rows, None, LocalCost::Absolute).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(d.get(i, j), dtw(&rows[i], &rows[j], None).unwrap());
            }
        }
        let one = pairwise_dtw_rows(&rows[..1], None, LocalCost::Absolute).unwrap();
        assert_eq!(one.as_slice(), &[0.0]);
    }

    #[test]
    fn subset_bound() {
        let b = SeriesBatch::from_rows(&[vec![0.0, 1.0]]).unwrap();
        assert!(pairwise_dtw(&b, 2, None).is_err());
        assert_eq!(pairwise_dtw(&b, 1, None).unwrap().n(), 1);
    }

    #[test]
    fn from_full_checks_shape() {
        assert!(DtwMatrix::from_full(2, vec![0.0, 1.0, 1.0, 0.0]).is_ok());
        assert!(DtwMatrix::from_full(2, vec![0.0, 1.0, 2.0, 0.0]).is_err());
        assert!(DtwMatrix::from_full(2, vec![1.0, 1.0, 1.0, 0.0]).is_err());
    }

    proptest! {
        #[test]
        fn symmetric_and_non_negative(
            x in prop::collection::vec(-10.0f64..10.0, 1..20),
            y in prop::collection::vec(-10.0f64..10.0, 1..20),
        ) {
            let a = dtw(&x, &y, None).unwrap();
            prop_assert!(a >= 0.0);
            prop_assert_eq!(a, dtw(&y, &x, None).unwrap());
        }

        #[test]
        fn wide_band_equals_unbanded(
            x in prop::collection::vec(-10.0f64..10.0, 1..20),
            y in prop::collection::vec(-10.0f64..10.0, 1..20),
            extra in 0usize..5,
        ) {
            let w = x.len().max(y.len()) + extra;
            prop_assert_eq!(
                dtw(&x, &y, Some(w)).unwrap().to_bits(),
                dtw(&x, &y, None).unwrap().to_bits()
            );
        }
    }
}
