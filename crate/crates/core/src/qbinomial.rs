//! Coefficient vectors of Gaussian binomials `binom(l+m, m)_q`.
//!
//! Coefficient `k` is `p_k(l, m)`, the number of partitions of `k` inside an
//! `l x m` box. The expansion runs the q-Pascal recurrence
//!
//! ```text
//! G(j, c) = G(j - 1, c) + q^j * G(j, c - 1)
//! ```
//!
//! one row `j` at a time, so every intermediate value is a non-negative
//! integer and no polynomial division is needed. When the binomial
//! `C(l+m, m)` (which bounds every coefficient) fits in `u128` the recurrence
//! runs on machine integers and is widened at the end.

use alloc::vec::Vec;
use core::ops::AddAssign;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::partition::{enumerate_in_box, BoxShape};

/// Largest box area accepted by [`gaussian_by_enumeration`].
pub const ENUMERATION_LIMIT: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QBinomialError {
    #[error("enumeration oracle limited to l*m <= {limit}, got {ell}x{m}")]
    TooLarge { ell: usize, m: usize, limit: usize },
}

/// Dense polynomial in `q` with non-negative exact coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QPolynomial {
    coeffs: Vec<BigUint>,
}

impl QPolynomial {
    /// Trailing zeros are trimmed; the zero polynomial keeps a single `0`.
    pub fn from_coeffs(mut coeffs: Vec<BigUint>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigUint::zero());
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `coeffs[k]`, and zero outside `0..=degree` (so `p_{-1} = 0`).
    pub fn coefficient(&self, k: i64) -> BigUint {
        usize::try_from(k)
            .ok()
            .and_then(|k| self.coeffs.get(k))
            .cloned()
            .unwrap_or_default()
    }

    /// `d_k = coeffs[k] - coeffs[k-1]` for `k = 0..=degree`.
    pub fn difference_profile(&self) -> Vec<BigInt> {
        let mut prev = BigInt::zero();
        self.coeffs
            .iter()
            .map(|c| {
                let c = BigInt::from(c.clone());
                let d = &c - &prev;
                prev = c;
                d
            })
            .collect()
    }

    pub fn sum(&self) -> BigUint {
        self.coeffs.iter().sum()
    }

    pub fn is_palindromic(&self) -> bool {
        let n = self.coeffs.len();
        (0..n / 2).all(|k| self.coeffs[k] == self.coeffs[n - 1 - k])
    }
}

/// Ordinary binomial coefficient `C(n, k)`.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Expands `binom(ell+m, m)_q`. A zero dimension gives the constant `1`.
pub fn gaussian(ell: usize, m: usize) -> QPolynomial {
    if ell == 0 || m == 0 {
        return QPolynomial::from_coeffs(alloc::vec![BigUint::one()]);
    }
    // Rows indexed by the smaller side keep the rolling buffer short.
    let (rows, cols) = if ell <= m { (ell, m) } else { (m, ell) };
    if binomial(rows + cols, rows).to_u128().is_some() {
        let small: Vec<u128> = pascal(rows, cols);
        QPolynomial::from_coeffs(small.into_iter().map(BigUint::from).collect())
    } else {
        QPolynomial::from_coeffs(pascal::<BigUint>(rows, cols))
    }
}

/// q-Pascal over a box with `rows` parts of size at most `cols`.
fn pascal<T>(rows: usize, cols: usize) -> Vec<T>
where
    T: Clone + Zero + One + for<'a> AddAssign<&'a T>,
{
    // prev[c] = G(j - 1, c), which has degree (j - 1) * c.
    let mut prev: Vec<Vec<T>> = (0..=cols).map(|_| alloc::vec![T::one()]).collect();
    for j in 1..=rows {
        let mut cur: Vec<Vec<T>> = Vec::with_capacity(cols + 1);
        cur.push(alloc::vec![T::one()]);
        for c in 1..=cols {
            let mut poly = core::mem::take(&mut prev[c]);
            poly.resize(j * c + 1, T::zero());
            for (k, v) in cur[c - 1].iter().enumerate() {
                poly[k + j] += v;
            }
            cur.push(poly);
        }
        prev = cur;
    }
    prev.pop().unwrap_or_default()
}

/// Independent oracle: counts box partitions of every size directly.
pub fn gaussian_by_enumeration(ell: usize, m: usize) -> Result<QPolynomial, QBinomialError> {
    if ell * m > ENUMERATION_LIMIT {
        return Err(QBinomialError::TooLarge {
            ell,
            m,
            limit: ENUMERATION_LIMIT,
        });
    }
    let Ok(shape) = BoxShape::new(ell, m) else {
        return Ok(QPolynomial::from_coeffs(alloc::vec![BigUint::one()]));
    };
    let coeffs = (0..=shape.area())
        .map(|k| BigUint::from(enumerate_in_box(shape, k).len()))
        .collect();
    Ok(QPolynomial::from_coeffs(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn big(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    fn signed(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Product formula `prod (1 - q^{m+i}) / (1 - q^i)` with exact division.
    fn gaussian_by_product(ell: usize, m: usize) -> Vec<BigInt> {
        let mut poly = vec![BigInt::one()];
        for i in 1..=ell {
            let shift = m + i;
            poly.resize(poly.len() + shift, BigInt::zero());
            for k in (shift..poly.len()).rev() {
                let t = poly[k - shift].clone();
                poly[k] -= t;
            }
            // Divide by (1 - q^i): prefix sums with stride i.
            for k in i..poly.len() {
                let t = poly[k - i].clone();
                poly[k] += t;
            }
            // The quotient has degree i*m; the tail must vanish.
            assert!(poly[i * m + 1..].iter().all(Zero::is_zero));
            poly.truncate(i * m + 1);
        }
        poly
    }

    #[test]
    fn small_expansions() {
        assert_eq!(gaussian(1, 1).coeffs(), big(&[1, 1]));
        assert_eq!(gaussian(2, 2).coeffs(), big(&[1, 1, 2, 1, 1]));
        assert_eq!(gaussian(2, 3).coeffs(), big(&[1, 1, 2, 2, 2, 1, 1]));
        assert_eq!(gaussian(0, 7).coeffs(), big(&[1]));
        assert_eq!(gaussian(1, 4).coeffs(), big(&[1, 1, 1, 1, 1]));
    }

    #[test]
    fn enumeration_oracle() {
        assert_eq!(
            gaussian_by_enumeration(2, 2).unwrap().coeffs(),
            big(&[1, 1, 2, 1, 1])
        );
        assert_eq!(
            gaussian_by_enumeration(1, 4).unwrap().coeffs(),
            big(&[1, 1, 1, 1, 1])
        );
        assert_eq!(gaussian_by_enumeration(3, 3).unwrap(), gaussian(3, 3));
        assert!(matches!(
            gaussian_by_enumeration(5, 13),
            Err(QBinomialError::TooLarge { .. })
        ));
        for ell in 1..=8 {
            for m in 1..=(ENUMERATION_LIMIT / ell) {
                assert_eq!(gaussian_by_enumeration(ell, m).unwrap(), gaussian(ell, m));
            }
        }
    }

    #[test]
    fn coefficient_lookup() {
        let p = QPolynomial::from_coeffs(big(&[1, 1, 2, 1, 1]));
        assert_eq!(p.coefficient(-1), BigUint::zero());
        assert_eq!(p.coefficient(2), BigUint::from(2u8));
        assert_eq!(p.coefficient(9), BigUint::zero());
    }

    #[test]
    fn difference_profiles() {
        let p = QPolynomial::from_coeffs(big(&[1, 1, 2, 1, 1]));
        assert_eq!(p.difference_profile(), signed(&[1, 0, 1, -1, 0]));
        assert_eq!(
            QPolynomial::from_coeffs(big(&[1])).difference_profile(),
            signed(&[1])
        );
        assert_eq!(
            gaussian(2, 3).difference_profile(),
            signed(&[1, 0, 1, 0, 0, -1, 0])
        );
    }

    #[test]
    fn symmetric_in_ell_and_m() {
        for ell in 1..=12 {
            for m in 1..=12 {
                assert_eq!(gaussian(ell, m), gaussian(m, ell));
            }
        }
    }

    #[test]
    fn palindromic_with_binomial_sum() {
        for ell in 1..=20 {
            for m in 1..=20 {
                let p = gaussian(ell, m);
                assert_eq!(p.degree(), ell * m);
                assert!(p.is_palindromic(), "{ell}x{m}");
                assert_eq!(p.sum(), binomial(ell + m, m), "{ell}x{m}");
            }
        }
    }

    #[test]
    fn pascal_consistency() {
        // G(l, m) = G(l-1, m) + q^l G(l, m-1)
        for ell in 1..=10 {
            for m in 1..=10 {
                let lhs = gaussian(ell, m);
                let mut rhs = gaussian(ell - 1, m).coeffs().to_vec();
                rhs.resize(ell * m + 1, BigUint::zero());
                for (k, c) in gaussian(ell, m - 1).coeffs().iter().enumerate() {
                    rhs[k + ell] += c;
                }
                assert_eq!(lhs.coeffs(), rhs);
            }
        }
    }

    #[test]
    fn agrees_with_product_formula() {
        for (ell, m) in [(1, 1), (3, 5), (7, 7), (9, 4), (20, 20), (25, 31)] {
            let expected = gaussian_by_product(ell, m);
            let got: Vec<BigInt> = gaussian(ell, m)
                .coeffs()
                .iter()
                .cloned()
                .map(BigInt::from)
                .collect();
            assert_eq!(got, expected, "{ell}x{m}");
        }
    }

    #[test]
    fn big_path_exceeds_u64() {
        // C(40, 20) still fits in u64; the 40 x 40 middle coefficient does not.
        assert!(gaussian(20, 20).coefficient(200).to_u64().is_some());
        assert!(gaussian(40, 40).coefficient(800).to_u64().is_none());
        // C(140, 70) > u128::MAX, so this runs the BigUint recurrence.
        assert!(binomial(140, 70).to_u128().is_none());
        let q = gaussian(70, 70);
        assert_eq!(q.sum(), binomial(140, 70));
        assert!(q.is_palindromic());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigUint::from(10u8));
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(binomial(0, 0), BigUint::one());
    }
}
