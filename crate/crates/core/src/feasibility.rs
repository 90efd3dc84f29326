//! Exact rational linear feasibility for the leading-monomial weight test.
//!
//! A support monomial `M` can be the leading monomial of a polynomial under
//! some monomial ordering exactly when a strictly positive weight vector `w`
//! separates it: `w . exp(M) > w . exp(N)` for every other support monomial
//! `N`. Because the system is homogeneous, strict feasibility is equivalent
//! to feasibility of the closed system `w . (exp(M) - exp(N)) >= 1`,
//! `w_i >= 1`, which Fourier-Motzkin elimination decides exactly over the
//! rationals. No floating point is involved anywhere.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// One inequality `sum(coeffs[i] * w_i) >= rhs`.
#[derive(Clone, PartialEq, Eq, Hash)]
struct Row {
    coeffs: Vec<BigRational>,
    rhs: BigRational,
}

impl Row {
    /// Scales so the first nonzero entry has absolute value 1, giving a
    /// canonical representative of the positive-scaling class for dedup.
    fn normalized(&self) -> Row {
        let pivot = self
            .coeffs
            .iter()
            .chain(std::iter::once(&self.rhs))
            .find(|c| !c.is_zero());
        match pivot {
            None => self.clone(),
            Some(p) => {
                let scale = p.abs();
                Row {
                    coeffs: self.coeffs.iter().map(|c| c / &scale).collect(),
                    rhs: &self.rhs / &scale,
                }
            }
        }
    }

    fn is_constant(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// Decides whether some strictly positive rational `w` satisfies
/// `w . d >= 1` for every difference vector in `diffs`.
pub(crate) fn positive_weight_separates(diffs: &[Vec<i64>], num_vars: usize) -> bool {
    let one = BigRational::one();
    let mut rows: Vec<Row> = Vec::with_capacity(diffs.len() + num_vars);
    for d in diffs {
        rows.push(Row {
            coeffs: d
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
            rhs: one.clone(),
        });
    }
    for i in 0..num_vars {
        let mut coeffs = vec![BigRational::zero(); num_vars];
        coeffs[i] = one.clone();
        rows.push(Row { coeffs, rhs: one.clone() });
    }
    fourier_motzkin_feasible(rows, num_vars)
}

fn fourier_motzkin_feasible(mut rows: Vec<Row>, num_vars: usize) -> bool {
    for var in (0..num_vars).rev() {
        let mut lower = Vec::new(); // positive coefficient on `var`
        let mut upper = Vec::new(); // negative coefficient on `var`
        let mut next = Vec::new();
        for row in rows {
            let c = &row.coeffs[var];
            if c.is_zero() {
                next.push(row);
            } else if c.is_positive() {
                lower.push(row);
            } else {
                upper.push(row);
            }
        }
        // Rows bounding `var` from below only are always satisfiable by a
        // large enough value and drop out of the projection.
        for lo in &lower {
            for hi in &upper {
                // Cancel `var`: scale `lo` by -hi_c > 0 and `hi` by lo_c > 0.
                let lo_c = lo.coeffs[var].clone();
                let hi_c = hi.coeffs[var].clone();
                let a = -&hi_c;
                let coeffs: Vec<BigRational> = lo
                    .coeffs
                    .iter()
                    .zip(&hi.coeffs)
                    .map(|(l, h)| l * &a + h * &lo_c)
                    .collect();
                let rhs = &lo.rhs * &a + &hi.rhs * &lo_c;
                next.push(Row { coeffs, rhs });
            }
        }
        let mut seen = HashSet::new();
        rows = Vec::new();
        for row in next {
            let row = row.normalized();
            if row.is_constant() {
                if row.rhs.is_positive() {
                    return false;
                }
                continue;
            }
            if seen.insert((row.coeffs.clone(), row.rhs.clone())) {
                rows.push(row);
            }
        }
    }
    rows.iter().all(|r| !r.rhs.is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dominating_monomial_always_separates() {
        // exp(M) - exp(N) componentwise nonnegative and nonzero.
        assert!(positive_weight_separates(&[vec![1, 0], vec![0, 2]], 2));
        assert!(positive_weight_separates(&[], 2));
    }

    #[test]
    fn incomparable_pairs_both_separate() {
        // X1^2 vs X2: w = (1,1) favors X1^2, w = (1,3) favors X2.
        assert!(positive_weight_separates(&[vec![2, -1]], 2));
        assert!(positive_weight_separates(&[vec![-2, 1]], 2));
    }

    #[test]
    fn dominated_monomial_never_separates() {
        // X1 against X1^2: difference (-1, 0) needs w_1 <= -1.
        assert!(!positive_weight_separates(&[vec![-1, 0]], 2));
        // The unit against anything nonconstant.
        assert!(!positive_weight_separates(&[vec![-1, -1]], 2));
    }

    #[test]
    fn middle_of_a_line_never_separates() {
        // X1*X2 against X1^2 and X2^2: (1,1) is inside the segment from
        // (2,0) to (0,2), so no weight puts it strictly on top.
        assert!(!positive_weight_separates(&[vec![-1, 1], vec![1, -1]], 2));
        // The endpoints do separate.
        assert!(positive_weight_separates(&[vec![1, -1], vec![2, -2]], 2));
    }

    #[test]
    fn three_variable_cone() {
        // X1*X2*X3 against X1^3, X2^3, X3^3: the barycenter is inside the
        // triangle, so it cannot lead.
        assert!(!positive_weight_separates(
            &[vec![-2, 1, 1], vec![1, -2, 1], vec![1, 1, -2]],
            3
        ));
        // X1^3 against the rest separates with equal weights.
        assert!(positive_weight_separates(
            &[vec![2, -1, -1], vec![3, 0, -3], vec![3, -3, 0]],
            3
        ));
    }
}
