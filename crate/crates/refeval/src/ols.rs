//! Exact least squares over the rationals.
//!
//! Every finite f64 converts losslessly to a `BigRational`, the normal
//! equations X'X b = X'y are formed and solved by fraction-free Gaussian
//! elimination, and the unique minimizer comes back exactly. This is a
//! different algorithm and a different arithmetic from the orthogonal
//! decomposition used by the library, which is the point of an oracle.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

#[derive(Debug, Clone)]
pub struct ExactOls {
    /// One coefficient per input column, in column order.
    pub coefficients: Vec<f64>,
    pub r_squared: f64,
    pub ssr: f64,
}

/// Solve min ||y - X b||^2 exactly. `columns` are the design matrix columns
/// (including any intercept column the caller wants). Returns `None` when
/// X'X is exactly singular.
pub fn exact_ols(y: &[f64], columns: &[Vec<f64>]) -> Option<ExactOls> {
    let n = y.len();
    let p = columns.len();
    assert!(p > 0 && columns.iter().all(|c| c.len() == n));

    let rat = |v: f64| BigRational::from_float(v).expect("finite");
    let xs: Vec<Vec<BigRational>> = columns
        .iter()
        .map(|col| col.iter().map(|&v| rat(v)).collect())
        .collect();
    let yr: Vec<BigRational> = y.iter().map(|&v| rat(v)).collect();

    // Normal equations.
    let dot = |a: &[BigRational], b: &[BigRational]| -> BigRational {
        a.iter()
            .zip(b)
            .map(|(x, y)| x * y)
            .fold(BigRational::zero(), |acc, v| acc + v)
    };
    let mut aug: Vec<Vec<BigRational>> = (0..p)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..p).map(|j| dot(&xs[i], &xs[j])).collect();
            row.push(dot(&xs[i], &yr));
            row
        })
        .collect();

    // Gaussian elimination with exact pivoting.
    for col in 0..p {
        let pivot_row = (col..p).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot_row);
        let pivot = aug[col][col].clone();
        for r in 0..p {
            if r == col {
                continue;
            }
            if aug[r][col].is_zero() {
                continue;
            }
            let factor = &aug[r][col] / &pivot;
            for c in col..=p {
                let delta = &factor * &aug[col][c];
                aug[r][c] = &aug[r][c] - delta;
            }
        }
    }
    let beta: Vec<BigRational> = (0..p).map(|i| &aug[i][p] / &aug[i][i]).collect();

    // Residuals and R^2, still exact.
    let mut ssr = BigRational::zero();
    let mut mean = BigRational::zero();
    for v in &yr {
        mean += v;
    }
    mean /= BigRational::from(BigInt::from(n as i64));
    let mut sst = BigRational::zero();
    for i in 0..n {
        let mut fitted = BigRational::zero();
        for (j, b) in beta.iter().enumerate() {
            fitted += b * &xs[j][i];
        }
        let resid = &yr[i] - fitted;
        ssr += &resid * &resid;
        let dev = &yr[i] - &mean;
        sst += &dev * &dev;
    }
    let r_squared = if sst.is_zero() {
        f64::NAN
    } else {
        (BigRational::from(BigInt::from(1)) - &ssr / &sst)
            .to_f64()
            .expect("representable")
    };

    Some(ExactOls {
        coefficients: beta
            .iter()
            .map(|b| b.to_f64().expect("representable"))
            .collect(),
        r_squared,
        ssr: ssr.to_f64().expect("representable"),
    })
}
