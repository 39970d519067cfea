//! Truncated q-series with a rational exponent offset, graded-trace
//! characters on the Fock space, and Eisenstein series.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fock::{grade_basis, HeisenbergState};
use crate::modes::{Heisenberg, VertexAlgebra};
use crate::scalar::{bernoulli, check_odd_prime, divisor_power_sum, format_rational, int, norm_exponent, rat};
use crate::scalar::{NormExponent, Rational};

/// `q^offset * sum_{n <= order} coeffs[n] q^n`
#[derive(Clone, PartialEq, Eq)]
pub struct QSeries {
    offset: Rational,
    coeffs: Vec<Rational>,
}

impl QSeries {
    pub fn new(offset: Rational, coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a q-series keeps at least the q^0 coefficient");
        QSeries { offset, coeffs }
    }

    pub fn zero(offset: Rational, order: usize) -> Self {
        QSeries::new(offset, vec![Rational::zero(); order + 1])
    }

    pub fn one(order: usize) -> Self {
        let mut s = QSeries::zero(Rational::zero(), order);
        s.coeffs[0] = Rational::one();
        s
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Largest `n` whose coefficient is known.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> Option<&Rational> {
        self.coeffs.get(n)
    }

    pub fn truncate(&self, order: usize) -> QSeries {
        QSeries::new(self.offset.clone(), self.coeffs[..=order.min(self.order())].to_vec())
    }

    fn check_offsets(&self, other: &QSeries) -> Result<()> {
        if self.offset == other.offset {
            Ok(())
        } else {
            Err(Error::OffsetMismatch(format_rational(&self.offset), format_rational(&other.offset)))
        }
    }

    /// Sum to the smaller of the two orders.
    pub fn add(&self, other: &QSeries) -> Result<QSeries> {
        self.check_offsets(other)?;
        let n = self.order().min(other.order());
        Ok(QSeries::new(self.offset.clone(), (0..=n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect()))
    }

    pub fn sub(&self, other: &QSeries) -> Result<QSeries> {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Product to the smaller of the two orders; offsets add.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let n = self.order().min(other.order());
        let mut coeffs = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                coeffs[i + j] += a * b;
            }
        }
        QSeries::new(&self.offset + &other.offset, coeffs)
    }

    pub fn scale(&self, c: &Rational) -> QSeries {
        QSeries::new(self.offset.clone(), self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inverse(&self) -> Result<QSeries> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::ZeroState);
        }
        let inv0 = a0.recip();
        let n = self.order();
        let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &out[k - j];
            }
            out.push(-acc * &inv0);
        }
        Ok(QSeries::new(-&self.offset, out))
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q^({}) * [", format_rational(&self.offset))?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&format_rational(c))?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QSeries({self})")
    }
}

/// `Tr_{S(n)} o(v)`, read off the diagonal one basis monomial at a time.
pub fn grade_trace(v: &HeisenbergState, n: u32) -> Rational {
    let alg = Heisenberg::shared();
    grade_basis(n)
        .into_par_iter()
        .map(|b| {
            let image = alg.zero_mode(v, &HeisenbergState::monomial(b.clone()));
            image.coefficient(&b)
        })
        .reduce(Rational::zero, |a, b| a + b)
}

/// `Z(v, q) = q^(-1/24) sum_n Tr_{S(n)} o(v) q^n`
pub fn character(v: &HeisenbergState, n_max: usize) -> QSeries {
    let coeffs = (0..=n_max).into_par_iter().map(|n| grade_trace(v, n as u32)).collect();
    QSeries::new(rat(-1, 24), coeffs)
}

/// `eta = q^(1/24) prod_{n >= 1} (1 - q^n)`, via the pentagonal number theorem.
pub fn eta_series(n_max: usize) -> QSeries {
    let mut coeffs = vec![Rational::zero(); n_max + 1];
    coeffs[0] = Rational::one();
    for k in 1i64.. {
        let sign = if k % 2 == 0 { int(1) } else { int(-1) };
        let g1 = (k * (3 * k - 1) / 2) as usize;
        let g2 = (k * (3 * k + 1) / 2) as usize;
        if g1 > n_max {
            break;
        }
        coeffs[g1] += &sign;
        if g2 <= n_max {
            coeffs[g2] += &sign;
        }
    }
    QSeries::new(rat(1, 24), coeffs)
}

/// `f(v) = eta * Z(v, q)`, with integral exponents.
pub fn normalized_character(v: &HeisenbergState, n_max: usize) -> QSeries {
    eta_series(n_max).mul(&character(v, n_max))
}

/// `G_k = -B_k / 2k + sum_n sigma_{k-1}(n) q^n`
pub fn eisenstein_g(k: i64, n_max: usize) -> Result<QSeries> {
    if k < 2 || k % 2 != 0 {
        return Err(Error::InvalidEisensteinWeight(k));
    }
    let mut coeffs = Vec::with_capacity(n_max + 1);
    coeffs.push(-bernoulli(k as usize) / int(2 * k));
    for n in 1..=n_max {
        coeffs.push(Rational::from_integer(divisor_power_sum(n as u64, (k - 1) as u32, None)));
    }
    Ok(QSeries::new(Rational::zero(), coeffs))
}

fn coprime_divisor_series(p: u64, constant: Rational, n_max: usize) -> QSeries {
    let mut coeffs = Vec::with_capacity(n_max + 1);
    coeffs.push(constant);
    for n in 1..=n_max {
        coeffs.push(Rational::from_integer(divisor_power_sum(n as u64, 1, Some(p))));
    }
    QSeries::new(Rational::zero(), coeffs)
}

/// `G2*(q) = (p^2 - 1)/24 + sum_n sigma*(n) q^n`, where `sigma*` sums the
/// divisors prime to `p`.
pub fn eisenstein_g2_star(p: u64, n_max: usize) -> Result<QSeries> {
    check_odd_prime(p)?;
    let p = p as i64;
    Ok(coprime_divisor_series(p as u64, rat(p * p - 1, 24), n_max))
}

/// `G2(q) - p G2(q^p) = (p - 1)/24 + sum_n sigma*(n) q^n`.
///
/// Same q-coefficients as [`eisenstein_g2_star`], but the constant term is
/// the one forced by the higher coefficients.
pub fn eisenstein_g2_stabilized(p: u64, n_max: usize) -> Result<QSeries> {
    check_odd_prime(p)?;
    Ok(coprime_divisor_series(p, rat(p as i64 - 1, 24), n_max))
}

/// `max_{n <= n_max} -v_p(A_n - B_n)`; `NegInfinity` when they agree.
pub fn qseries_padic_distance(a: &QSeries, b: &QSeries, p: u64, n_max: usize) -> Result<NormExponent> {
    a.check_offsets(b)?;
    let top = n_max.min(a.order()).min(b.order());
    Ok((0..=top)
        .map(|n| norm_exponent(&(&a.coeffs[n] - &b.coeffs[n]), p))
        .max()
        .unwrap_or(NormExponent::NegInfinity))
}

/// Coefficients as exact integers, when they all are.
pub fn integer_coeffs(s: &QSeries) -> Option<Vec<BigInt>> {
    s.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
}
