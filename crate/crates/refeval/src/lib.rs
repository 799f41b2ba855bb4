//! High-precision reference evaluators used as independent test oracles.
//!
//! Nothing in this crate shares code with the main library: the range
//! estimators are re-evaluated in 192-bit fixed-point arithmetic with a
//! series-based logarithm, and least-squares coefficients are recomputed
//! exactly over the rationals. Test suites compare `f64` pipeline output
//! against these evaluations.

mod fix;
mod ols;

pub use fix::Fix;
pub use ols::{exact_ols, ExactOls};

/// Reference evaluation of the daily range quantities and estimators for a
/// single OHLC bar, carried out entirely in fixed-point arithmetic.
#[derive(Debug, Clone)]
pub struct RefBar {
    pub h: f64,
    pub l: f64,
    pub c: f64,
    pub j: f64,
    pub parkinson: f64,
    pub garman_klass: f64,
    pub rogers_satchell_plus: f64,
    pub rogers_satchell_minus: f64,
    pub composite: f64,
    pub log_vol: f64,
}

/// Evaluate h, l, c, J and the three range estimators plus the composite
/// log-volatility for one bar. `prev_close` feeds the overnight term; the
/// composite excludes it (callers wanting the overnight variant add `j`).
pub fn ref_bar(open: f64, high: f64, low: f64, close: f64, prev_close: Option<f64>) -> RefBar {
    let o = Fix::from_f64(open);
    let h = Fix::from_f64(high).div(&o).ln();
    let l = Fix::from_f64(low).div(&o).ln();
    let c = Fix::from_f64(close).div(&o).ln();
    let j = match prev_close {
        Some(pc) => {
            let r = o.div(&Fix::from_f64(pc)).ln();
            r.mul(&r)
        }
        None => Fix::zero(),
    };

    let range = h.sub(&l);
    let four_ln2 = Fix::from_u64(4).mul(&Fix::from_u64(2).ln());
    let parkinson = range.mul(&range).div(&four_ln2);

    let k1 = Fix::from_f64(0.511);
    let k2 = Fix::from_f64(0.383);
    let k3 = Fix::from_f64(0.019);
    let cross = c.mul(&h.add(&l)).sub(&Fix::from_u64(2).mul(&h).mul(&l));
    let garman_klass = k1
        .mul(&range)
        .mul(&range)
        .sub(&k2.mul(&c).mul(&c))
        .sub(&k3.mul(&cross));

    let t1 = h.mul(&h.sub(&c));
    let t2 = l.mul(&l.sub(&c));
    let rs_plus = t1.add(&t2);
    let rs_minus = t1.sub(&t2);

    let composite = parkinson
        .add(&garman_klass)
        .add(&rs_plus)
        .div(&Fix::from_u64(3));
    let annualization = Fix::from_u64(100 * 100 * 252);
    let log_vol = if composite.is_positive() {
        annualization.mul(&composite).ln().to_f64()
    } else {
        f64::NAN
    };

    RefBar {
        h: h.to_f64(),
        l: l.to_f64(),
        c: c.to_f64(),
        j: j.to_f64(),
        parkinson: parkinson.to_f64(),
        garman_klass: garman_klass.to_f64(),
        rogers_satchell_plus: rs_plus.to_f64(),
        rogers_satchell_minus: rs_minus.to_f64(),
        composite: composite.to_f64(),
        log_vol,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Frozen with mpmath at 40 significant digits.
    const LN2: f64 = 0.6931471805599453;

    fn rel_err(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn ln_matches_known_constants() {
        assert!(rel_err(Fix::from_u64(2).ln().to_f64(), LN2) < 1e-15);
        assert!(rel_err(
            Fix::from_f64(1.1).ln().to_f64(),
            0.09531017980432486,
        ) < 1e-15);
        assert!(rel_err(
            Fix::from_f64(22817.0).ln().to_f64(),
            10.03526115114557, // mpmath log(22817)
        ) < 1e-15);
        assert!(rel_err(
            Fix::from_f64(1e-9).ln().to_f64(),
            -20.72326583694641, // mpmath log(1e-9), nearest f64 input
        ) < 1e-12);
    }

    #[test]
    fn worked_bar_matches_mpmath() {
        let r = ref_bar(100.0, 110.0, 95.0, 105.0, None);
        assert!(rel_err(r.h, 0.09531017980432486) < 1e-14);
        assert!(rel_err(r.l, -0.05129329438755053) < 1e-14);
        assert!(rel_err(r.c, 0.048790164169432003) < 1e-14);
        assert!(rel_err(r.parkinson, 0.007751809156810505) < 1e-13);
        assert!(rel_err(r.garman_klass, 0.009844406193362660) < 1e-13);
        assert!(rel_err(r.rogers_satchell_plus, 0.009567441357749161) < 1e-13);
        assert!(rel_err(r.rogers_satchell_minus, -0.0006997792484258768) < 1e-12);
        assert!(rel_err(r.composite, 0.009054552235974109) < 1e-13);
        assert!(rel_err(r.log_vol, 10.035281821250334) < 1e-13);
    }

    #[test]
    fn overnight_term() {
        let r = ref_bar(102.0, 102.0, 102.0, 102.0, Some(100.0));
        assert!(rel_err(r.j, 0.00039214404783140185) < 1e-13);
    }

    #[test]
    fn exact_ols_three_points() {
        // x = [0,1,2], y = [0,1,3]: slope 3/2, intercept -1/6, R^2 = 27/28.
        let fit = exact_ols(&[0.0, 1.0, 3.0], &[vec![1.0, 1.0, 1.0], vec![0.0, 1.0, 2.0]])
            .expect("full rank");
        assert!((fit.coefficients[0] - (-1.0 / 6.0)).abs() < 1e-15);
        assert!((fit.coefficients[1] - 1.5).abs() < 1e-15);
        assert!((fit.r_squared - 27.0 / 28.0).abs() < 1e-15);
    }

    #[test]
    fn exact_ols_detects_singular() {
        assert!(exact_ols(&[1.0, 2.0, 3.0], &[vec![1.0, 1.0, 1.0], vec![2.0, 2.0, 2.0]]).is_none());
    }
}
