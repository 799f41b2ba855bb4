//! The nested OLS model suite M1-M8, fitted on lag-one predictors, plus
//! Pearson correlation matrices.
//!
//! Every model regresses the day-t log-volatility on day t-1 values of its
//! regressor set (intercept always included). The solver is Householder QR
//! with column pivoting; rank is judged against 1e-10 times the largest
//! initial column norm, and rank deficiency reports which columns are
//! linearly dependent.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::signals::DailySignalRow;

#[derive(Debug, Error)]
pub enum RegressError {
    #[error("insufficient data: need at least {needed} rows for {model}, got {got}")]
    InsufficientData {
        model: String,
        needed: usize,
        got: usize,
    },
    #[error("collinear design: column(s) {} linearly dependent", columns.join(", "))]
    Collinear { columns: Vec<String> },
    #[error("degenerate column {0}: fewer than 2 distinct values")]
    DegenerateColumn(String),
    #[error("target is constant; R^2 undefined")]
    ConstantTarget,
}

/// A regressor available to the model suite; all enter at lag one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regressor {
    VLag,
    MLag,
    VixLag,
    Yolo1Lag,
    Yolo2Lag,
    Moon1Lag,
    Moon2Lag,
}

impl Regressor {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regressor::VLag => "V_lag",
            Regressor::MLag => "M_lag",
            Regressor::VixLag => "VIX_lag",
            Regressor::Yolo1Lag => "YOLO1_lag",
            Regressor::Yolo2Lag => "YOLO2_lag",
            Regressor::Moon1Lag => "MOON1_lag",
            Regressor::Moon2Lag => "MOON2_lag",
        }
    }

    fn value(&self, row: &DailySignalRow) -> f64 {
        match self {
            Regressor::VLag => row.v,
            Regressor::MLag => row.m,
            Regressor::VixLag => row.vix,
            Regressor::Yolo1Lag => row.yolo1,
            Regressor::Yolo2Lag => row.yolo2,
            Regressor::Moon1Lag => row.moon1,
            Regressor::Moon2Lag => row.moon2,
        }
    }
}

impl std::fmt::Display for Regressor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Named regressor subset. The intercept is implicit and always present.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelSpec {
    pub name: &'static str,
    pub regressors: Vec<Regressor>,
}

pub const MODEL_NAMES: [&str; 8] = ["M1", "M2", "M3", "M4", "M5", "M6", "M7", "M8"];

impl ModelSpec {
    /// The eight nested models. M1 is the baseline {V, M, VIX}; the others
    /// extend it with YOLO and/or MOON regressors.
    pub fn suite() -> Vec<ModelSpec> {
        use Regressor::*;
        let base = vec![VLag, MLag, VixLag];
        let extend = |extra: &[Regressor]| {
            let mut r = base.clone();
            r.extend_from_slice(extra);
            r
        };
        vec![
            ModelSpec { name: "M1", regressors: base.clone() },
            ModelSpec { name: "M2", regressors: extend(&[Yolo1Lag]) },
            ModelSpec { name: "M3", regressors: extend(&[Yolo2Lag]) },
            ModelSpec { name: "M4", regressors: extend(&[Yolo1Lag, Yolo2Lag]) },
            ModelSpec { name: "M5", regressors: extend(&[Moon1Lag]) },
            ModelSpec { name: "M6", regressors: extend(&[Moon2Lag]) },
            ModelSpec { name: "M7", regressors: extend(&[Moon1Lag, Moon2Lag]) },
            ModelSpec {
                name: "M8",
                regressors: extend(&[Moon1Lag, Moon2Lag, Yolo1Lag, Yolo2Lag]),
            },
        ]
    }

    pub fn by_name(name: &str) -> Option<ModelSpec> {
        Self::suite().into_iter().find(|s| s.name == name)
    }

    /// Minimum signal rows for a well-posed fit: p regressors need p + 1
    /// coefficients, one row is consumed by the lag, plus one residual
    /// degree of freedom.
    pub fn min_rows(&self) -> usize {
        self.regressors.len() + 2
    }
}

/// Column-major dense matrix, sized for small regression designs.
#[derive(Debug, Clone)]
pub struct DesignMatrix {
    n_rows: usize,
    columns: Vec<Vec<f64>>,
    names: Vec<String>,
}

impl DesignMatrix {
    pub fn from_columns(columns: Vec<Vec<f64>>, names: Vec<String>) -> Self {
        assert_eq!(columns.len(), names.len());
        let n_rows = columns.first().map_or(0, Vec::len);
        assert!(columns.iter().all(|c| c.len() == n_rows));
        DesignMatrix { n_rows, columns, names }
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[f64] {
        &self.columns[j]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

/// Lagged design for one model: target V_t for t = 2..n paired with the
/// previous row's regressor values, intercept first.
pub fn build_design_matrix(
    rows: &[DailySignalRow],
    spec: &ModelSpec,
) -> Result<(Vec<f64>, DesignMatrix), RegressError> {
    let needed = spec.min_rows();
    if rows.len() < needed {
        return Err(RegressError::InsufficientData {
            model: spec.name.to_string(),
            needed,
            got: rows.len(),
        });
    }
    let n = rows.len() - 1;
    let targets: Vec<f64> = rows[1..].iter().map(|r| r.v).collect();
    let mut columns = Vec::with_capacity(spec.regressors.len() + 1);
    let mut names = Vec::with_capacity(spec.regressors.len() + 1);
    columns.push(vec![1.0; n]);
    names.push("intercept".to_string());
    for reg in &spec.regressors {
        columns.push(rows[..n].iter().map(|r| reg.value(r)).collect());
        names.push(reg.as_str().to_string());
    }
    Ok((targets, DesignMatrix::from_columns(columns, names)))
}

/// Solution of one least-squares problem.
#[derive(Debug, Clone)]
pub struct OlsSolution {
    /// Coefficients in input column order.
    pub beta: Vec<f64>,
    pub residuals: Vec<f64>,
    pub fitted: Vec<f64>,
    pub r_squared: f64,
    pub n_obs: usize,
}

/// Least squares via Householder QR with column pivoting. Rank tolerance is
/// 1e-10 times the largest initial column norm; exact rank deficiency
/// reports the dependent columns by name.
pub fn fit_ols(targets: &[f64], design: &DesignMatrix) -> Result<OlsSolution, RegressError> {
    let n = design.n_rows();
    let p = design.n_cols();
    assert_eq!(targets.len(), n, "target length must match design rows");
    assert!(p > 0 && n >= p, "design must be tall");

    // Working copy, column major.
    let mut a: Vec<Vec<f64>> = (0..p).map(|j| design.column(j).to_vec()).collect();
    let mut qty: Vec<f64> = targets.to_vec();
    let mut perm: Vec<usize> = (0..p).collect();

    let col_norm = |col: &[f64], from: usize| -> f64 {
        col[from..].iter().map(|v| v * v).sum::<f64>().sqrt()
    };
    let max_initial_norm = (0..p)
        .map(|j| col_norm(&a[j], 0))
        .fold(0.0f64, f64::max);
    let tol = 1e-10 * max_initial_norm;

    let mut r_diag = vec![0.0; p];
    let mut rank = p;
    for k in 0..p {
        // Pivot: bring the remaining column with the largest trailing norm
        // to position k.
        let (best, best_norm) = (k..p)
            .map(|j| (j, col_norm(&a[j], k)))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .expect("non-empty column range");
        if best != k {
            a.swap(k, best);
            perm.swap(k, best);
        }
        if best_norm <= tol {
            rank = k;
            break;
        }
        // Householder vector for column k.
        let alpha = if a[k][k] >= 0.0 { -best_norm } else { best_norm };
        let mut v: Vec<f64> = a[k][k..].to_vec();
        v[0] -= alpha;
        let v_norm2: f64 = v.iter().map(|x| x * x).sum();
        a[k][k] = alpha;
        for x in a[k][k + 1..].iter_mut() {
            *x = 0.0;
        }
        r_diag[k] = alpha;
        if v_norm2 > 0.0 {
            // Reflect the remaining columns and the target.
            for col in a.iter_mut().skip(k + 1) {
                let dot: f64 = v.iter().zip(&col[k..]).map(|(vi, ci)| vi * ci).sum();
                let scale = 2.0 * dot / v_norm2;
                for (vi, ci) in v.iter().zip(col[k..].iter_mut()) {
                    *ci -= scale * vi;
                }
            }
            let dot: f64 = v.iter().zip(&qty[k..]).map(|(vi, yi)| vi * yi).sum();
            let scale = 2.0 * dot / v_norm2;
            for (vi, yi) in v.iter().zip(qty[k..].iter_mut()) {
                *yi -= scale * vi;
            }
        }
    }

    if rank < p {
        let mut columns: Vec<String> = perm[rank..]
            .iter()
            .map(|&j| design.names()[j].clone())
            .collect();
        columns.sort();
        return Err(RegressError::Collinear { columns });
    }

    // Back substitution: R beta_perm = Q^T y (first p rows).
    let mut beta_perm = vec![0.0; p];
    for k in (0..p).rev() {
        let mut sum = qty[k];
        for j in k + 1..p {
            sum -= a[j][k] * beta_perm[j];
        }
        beta_perm[k] = sum / r_diag[k];
    }
    let mut beta = vec![0.0; p];
    for (k, &orig) in perm.iter().enumerate() {
        beta[orig] = beta_perm[k];
    }

    let fitted: Vec<f64> = (0..n)
        .map(|i| (0..p).map(|j| design.column(j)[i] * beta[j]).sum())
        .collect();
    let residuals: Vec<f64> = targets.iter().zip(&fitted).map(|(y, f)| y - f).collect();
    let ssr: f64 = residuals.iter().map(|r| r * r).sum();
    let mean = targets.iter().sum::<f64>() / n as f64;
    let sst: f64 = targets.iter().map(|y| (y - mean) * (y - mean)).sum();
    if sst == 0.0 {
        return Err(RegressError::ConstantTarget);
    }

    Ok(OlsSolution {
        beta,
        residuals,
        fitted,
        r_squared: 1.0 - ssr / sst,
        n_obs: n,
    })
}

/// A fitted model: spec, intercept + per-regressor coefficients, R^2,
/// sample size, residuals.
#[derive(Debug, Clone)]
pub struct FitResult {
    pub model: ModelSpec,
    pub intercept: f64,
    pub coefficients: Vec<(Regressor, f64)>,
    pub r_squared: f64,
    pub n_obs: usize,
    pub residuals: Vec<f64>,
}

/// Fit one model on the signal rows.
pub fn fit_model(rows: &[DailySignalRow], spec: &ModelSpec) -> Result<FitResult, RegressError> {
    let (targets, design) = build_design_matrix(rows, spec)?;
    let sol = fit_ols(&targets, &design)?;
    let coefficients = spec
        .regressors
        .iter()
        .zip(sol.beta[1..].iter())
        .map(|(&r, &b)| (r, b))
        .collect();
    Ok(FitResult {
        model: spec.clone(),
        intercept: sol.beta[0],
        coefficients,
        r_squared: sol.r_squared,
        n_obs: sol.n_obs,
        residuals: sol.residuals,
    })
}

/// Fit all eight models on the identical row set, so every R^2 shares the
/// same n_obs and the values are comparable.
pub fn fit_suite(rows: &[DailySignalRow]) -> Result<BTreeMap<&'static str, FitResult>, RegressError> {
    let mut out = BTreeMap::new();
    for spec in ModelSpec::suite() {
        let fit = fit_model(rows, &spec)?;
        out.insert(spec.name, fit);
    }
    Ok(out)
}

/// Contemporaneous column of the signal table usable in correlations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Column {
    V,
    Moon1,
    Moon2,
    Yolo1,
    Yolo2,
    M,
    Vix,
}

impl Column {
    pub fn as_str(&self) -> &'static str {
        match self {
            Column::V => "V",
            Column::Moon1 => "MOON1",
            Column::Moon2 => "MOON2",
            Column::Yolo1 => "YOLO1",
            Column::Yolo2 => "YOLO2",
            Column::M => "M",
            Column::Vix => "VIX",
        }
    }

    pub fn value(&self, row: &DailySignalRow) -> f64 {
        match self {
            Column::V => row.v,
            Column::Moon1 => row.moon1,
            Column::Moon2 => row.moon2,
            Column::Yolo1 => row.yolo1,
            Column::Yolo2 => row.yolo2,
            Column::M => row.m,
            Column::Vix => row.vix,
        }
    }

    /// The Table-2 style correlation set.
    pub fn correlation_set() -> [Column; 5] {
        [Column::V, Column::Moon1, Column::Moon2, Column::Yolo1, Column::Yolo2]
    }
}

/// Pearson correlation of two equal-length slices.
pub fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (&xi, &yi) in x.iter().zip(y) {
        let dx = xi - mx;
        let dy = yi - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    sxy / (sxx * syy).sqrt()
}

/// Symmetric contemporaneous Pearson matrix over the requested columns;
/// unit diagonal. Constant columns are an error.
pub fn pearson_matrix(
    rows: &[DailySignalRow],
    columns: &[Column],
) -> Result<Vec<Vec<f64>>, RegressError> {
    let data: Vec<Vec<f64>> = columns
        .iter()
        .map(|c| rows.iter().map(|r| c.value(r)).collect())
        .collect();
    for (col, series) in columns.iter().zip(&data) {
        let first = series[0];
        if series.iter().all(|&v| v == first) {
            return Err(RegressError::DegenerateColumn(col.as_str().to_string()));
        }
    }
    let k = columns.len();
    let mut matrix = vec![vec![0.0; k]; k];
    for i in 0..k {
        matrix[i][i] = 1.0;
        for j in i + 1..k {
            let r = pearson(&data[i], &data[j]);
            matrix[i][j] = r;
            matrix[j][i] = r;
        }
    }
    Ok(matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use chrono::{Days, NaiveDate};
    use proptest::prelude::*;

    fn rows_from(values: &[(f64, f64, f64, f64, f64, f64, f64)]) -> Vec<DailySignalRow> {
        let base = NaiveDate::from_ymd_opt(2021, 1, 4).unwrap();
        values
            .iter()
            .enumerate()
            .map(|(i, &(v, m1, m2, y1, y2, m, vix))| DailySignalRow {
                date: base + Days::new(i as u64),
                v,
                moon1: m1,
                moon2: m2,
                yolo1: y1,
                yolo2: y2,
                m,
                vix,
            })
            .collect()
    }

    fn simple_design(xs: &[Vec<f64>], names: &[&str]) -> DesignMatrix {
        DesignMatrix::from_columns(
            xs.to_vec(),
            names.iter().map(|s| s.to_string()).collect(),
        )
    }

    #[test]
    fn exact_line_recovers_parameters() {
        let x: Vec<f64> = (0..10).map(|i| i as f64).collect();
        let y: Vec<f64> = x.iter().map(|&xi| 1.0 + 2.0 * xi).collect();
        let design = simple_design(&[vec![1.0; 10], x], &["intercept", "x"]);
        let sol = fit_ols(&y, &design).unwrap();
        assert!((sol.beta[0] - 1.0).abs() < 1e-10);
        assert!((sol.beta[1] - 2.0).abs() < 1e-10);
        assert!((sol.r_squared - 1.0).abs() < 1e-12);
    }

    #[test]
    fn three_point_closed_form() {
        // x = [0,1,2], y = [0,1,3]: slope 3/2, intercept -1/6, R^2 = 27/28
        let design = simple_design(
            &[vec![1.0, 1.0, 1.0], vec![0.0, 1.0, 2.0]],
            &["intercept", "x"],
        );
        let sol = fit_ols(&[0.0, 1.0, 3.0], &design).unwrap();
        assert!((sol.beta[1] - 1.5).abs() < 1e-12);
        assert!((sol.beta[0] - (-1.0 / 6.0)).abs() < 1e-12);
        assert!((sol.r_squared - 27.0 / 28.0).abs() < 1e-12);
    }

    #[test]
    fn duplicated_column_is_collinear() {
        let x = vec![1.0, 2.0, 3.0, 4.0];
        let design = simple_design(
            &[vec![1.0; 4], x.clone(), x],
            &["intercept", "a", "b"],
        );
        let err = fit_ols(&[1.0, 2.0, 3.0, 4.0], &design).unwrap_err();
        match err {
            RegressError::Collinear { columns } => {
                assert_eq!(columns.len(), 1);
                assert!(columns[0] == "a" || columns[0] == "b");
            }
            other => panic!("expected collinearity, got {other:?}"),
        }
    }

    #[test]
    fn residuals_sum_to_zero_with_intercept() {
        let design = simple_design(
            &[vec![1.0; 5], vec![0.1, 0.9, 2.2, 2.8, 4.1]],
            &["intercept", "x"],
        );
        let sol = fit_ols(&[1.0, 2.9, 5.2, 6.8, 9.1], &design).unwrap();
        let sum: f64 = sol.residuals.iter().sum();
        assert!(sum.abs() < 1e-9 * sol.n_obs as f64);
    }

    #[test]
    fn design_matrix_shapes() {
        let rows = rows_from(&[(1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0); 10]);
        let spec = ModelSpec::by_name("M1").unwrap();
        let (targets, design) = build_design_matrix(&rows, &spec).unwrap();
        assert_eq!(targets.len(), 9);
        assert_eq!(design.n_rows(), 9);
        assert_eq!(design.n_cols(), 4); // intercept + 3 regressors
    }

    #[test]
    fn design_matrix_lag_pairing() {
        let rows = rows_from(&[
            (10.0, 1.0, 0.1, 5.0, 6.0, 1.0, 20.0),
            (11.0, 2.0, 0.2, 5.5, 6.5, 2.0, 21.0),
            (12.0, 3.0, 0.3, 5.7, 6.7, 3.0, 22.0),
            (13.0, 4.0, 0.4, 5.9, 6.9, 4.0, 23.0),
            (14.0, 5.0, 0.5, 6.1, 7.1, 5.0, 24.0),
        ]);
        let spec = ModelSpec::by_name("M1").unwrap();
        let (targets, design) = build_design_matrix(&rows, &spec).unwrap();
        // target t pairs with predictors from t-1
        assert_eq!(targets, vec![11.0, 12.0, 13.0, 14.0]);
        assert_eq!(design.column(1), &[10.0, 11.0, 12.0, 13.0]); // V_lag
        assert_eq!(design.column(2), &[1.0, 2.0, 3.0, 4.0]); // M_lag
    }

    #[test]
    fn insufficient_rows_errors_with_minimum() {
        let rows = rows_from(&[(1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0); 3]);
        let spec = ModelSpec::by_name("M8").unwrap();
        let err = build_design_matrix(&rows, &spec).unwrap_err();
        match err {
            RegressError::InsufficientData { needed, got, .. } => {
                assert_eq!(needed, 9); // 7 regressors + 2
                assert_eq!(got, 3);
            }
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn suite_regressor_sets() {
        use Regressor::*;
        let suite = ModelSpec::suite();
        assert_eq!(suite.len(), 8);
        assert_eq!(suite[0].regressors, vec![VLag, MLag, VixLag]);
        assert_eq!(
            suite[7].regressors,
            vec![VLag, MLag, VixLag, Moon1Lag, Moon2Lag, Yolo1Lag, Yolo2Lag]
        );
        for s in &suite[1..] {
            assert!(s.regressors.starts_with(&[VLag, MLag, VixLag]));
        }
    }

    fn noisy_rows(seed: u64, n: usize) -> Vec<DailySignalRow> {
        // Small deterministic LCG; good enough to fill test fixtures.
        let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let base = NaiveDate::from_ymd_opt(2021, 1, 4).unwrap();
        (0..n)
            .map(|i| DailySignalRow {
                date: base + Days::new(i as u64),
                v: 10.0 + next() * 2.0,
                moon1: 5.0 + next(),
                moon2: 0.5 + next() * 0.3,
                yolo1: 7.0 + next(),
                yolo2: 3.0 + next(),
                m: 4.0 + next(),
                vix: 20.0 + next() * 5.0,
            })
            .collect()
    }

    #[test]
    fn suite_shares_n_obs_and_nests() {
        let rows = noisy_rows(7, 40);
        let fits = fit_suite(&rows).unwrap();
        assert_eq!(fits.len(), 8);
        let n0 = fits["M1"].n_obs;
        assert!(fits.values().all(|f| f.n_obs == n0));
        // noise MOON columns still cannot hurt in-sample R^2
        assert!(fits["M5"].r_squared >= fits["M1"].r_squared - 1e-10);
    }

    #[test]
    fn pearson_examples() {
        let x = [1.0, 2.0, 3.0];
        assert!((pearson(&x, &x) - 1.0).abs() < 1e-15);
        let y = [6.0, 4.0, 2.0];
        assert!((pearson(&x, &y) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn pearson_matrix_shape_and_symmetry() {
        let rows = noisy_rows(3, 30);
        let cols = Column::correlation_set();
        let m = pearson_matrix(&rows, &cols).unwrap();
        for i in 0..cols.len() {
            assert_eq!(m[i][i], 1.0);
            for j in 0..cols.len() {
                assert_eq!(m[i][j], m[j][i]);
                assert!(m[i][j].abs() <= 1.0 + 1e-12);
            }
        }
    }

    #[test]
    fn pearson_constant_column_errors() {
        let mut rows = noisy_rows(4, 20);
        for r in &mut rows {
            r.moon2 = 0.5;
        }
        let err = pearson_matrix(&rows, &Column::correlation_set()).unwrap_err();
        assert!(matches!(err, RegressError::DegenerateColumn(c) if c == "MOON2"));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn nesting_monotonicity(seed in 0u64..5000, n in 15usize..60) {
            let rows = noisy_rows(seed, n);
            let fits = fit_suite(&rows).unwrap();
            let r2 = |name: &str| fits[name].r_squared;
            let tol = 1e-10;
            prop_assert!(r2("M2") >= r2("M1") - tol);
            prop_assert!(r2("M3") >= r2("M1") - tol);
            prop_assert!(r2("M4") >= r2("M2").max(r2("M3")) - tol);
            prop_assert!(r2("M5") >= r2("M1") - tol);
            prop_assert!(r2("M6") >= r2("M1") - tol);
            prop_assert!(r2("M7") >= r2("M5").max(r2("M6")) - tol);
            prop_assert!(r2("M8") >= r2("M4").max(r2("M7")) - tol);
        }

        #[test]
        fn affine_invariance_of_fit(seed in 0u64..5000, a in 0.1f64..10.0, b in -5.0f64..5.0) {
            let rows = noisy_rows(seed, 30);
            let spec = ModelSpec::by_name("M5").unwrap();
            let base = fit_model(&rows, &spec).unwrap();
            let mut scaled = rows.clone();
            for r in &mut scaled {
                r.moon1 = a * r.moon1 + b;
            }
            let transformed = fit_model(&scaled, &spec).unwrap();
            prop_assert!((base.r_squared - transformed.r_squared).abs() < 1e-9);
            for (r1, r2) in base.residuals.iter().zip(&transformed.residuals) {
                prop_assert!((r1 - r2).abs() < 1e-8);
            }
        }

        #[test]
        fn residuals_orthogonal_to_predictors(seed in 0u64..5000, n in 10usize..50) {
            let rows = noisy_rows(seed, n);
            let spec = ModelSpec::by_name("M4").unwrap();
            let (targets, design) = build_design_matrix(&rows, &spec).unwrap();
            let sol = fit_ols(&targets, &design).unwrap();
            for j in 0..design.n_cols() {
                let col = design.column(j);
                let dot: f64 = col.iter().zip(&sol.residuals).map(|(c, r)| c * r).sum();
                let norm: f64 = col.iter().map(|c| c * c).sum::<f64>().sqrt();
                prop_assert!(dot.abs() < 1e-8 * sol.n_obs as f64 * norm.max(1.0));
            }
        }

        #[test]
        fn pearson_affine_invariance(seed in 0u64..5000, a in 0.1f64..10.0, b in -10.0f64..10.0) {
            let rows = noisy_rows(seed, 25);
            let x: Vec<f64> = rows.iter().map(|r| r.moon1).collect();
            let y: Vec<f64> = rows.iter().map(|r| r.v).collect();
            let xs: Vec<f64> = x.iter().map(|&v| a * v + b).collect();
            prop_assert!((pearson(&x, &y) - pearson(&xs, &y)).abs() < 1e-12);
        }
    }
}
