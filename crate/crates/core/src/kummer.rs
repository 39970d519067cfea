//! Square-bracket states `h[-r]h[-1]|0>`, the rescaled family `u_r`, and
//! Kummer congruences between its members.

use num_bigint::BigInt;
use num_traits::{One, Pow};
use rayon::prelude::*;

use crate::axioms::DefectReport;
use crate::error::{Error, Result};
use crate::fock::{HeisenbergState, Partition};
use crate::qseries::{eisenstein_g2_star, normalized_character, qseries_padic_distance, QSeries};
use crate::scalar::{bernoulli, c_row, check_odd_prime, int, rat, NormExponent, Rational};

fn check_bracket_index(r: i64) -> Result<u32> {
    if r < 1 || r % 2 == 0 {
        return Err(Error::InvalidBracketIndex(r));
    }
    Ok(r as u32)
}

/// `(r-1)! h[-r]h[-1]|0> = sum_m c(r,m) h(-m-1)h(-1)|0> - B_{r+1}/(r+1) |0>`
pub fn square_bracket_state(r: i64) -> Result<HeisenbergState> {
    let r = check_bracket_index(r)?;
    let mut out = HeisenbergState::term(Partition::empty(), -bernoulli(r as usize + 1) / int(r as i64 + 1));
    for (m, c) in c_row(r).into_iter().enumerate() {
        out.add_term(Partition::new(vec![m as u32 + 1, 1]), Rational::from_integer(c));
    }
    Ok(out)
}

/// `v_r = 1/2 (r-1)! h[-r]h[-1]|0>`, whose normalized character is `G_{r+1}`.
pub fn v_state(r: i64) -> Result<HeisenbergState> {
    Ok(square_bracket_state(r)?.scale(&rat(1, 2)))
}

/// `u_r = 2 (1 - p^r) v_r`
pub fn u_state(r: i64, p: u64) -> Result<HeisenbergState> {
    check_odd_prime(p)?;
    let state = square_bracket_state(r)?;
    let factor = Rational::one() - Rational::from_integer(Pow::pow(BigInt::from(p), r as u64));
    Ok(state.scale(&factor))
}

/// `1 + p^a (p - 1)`
pub fn family_index(p: u64, a: u32) -> i64 {
    1 + (p as i64).pow(a) * (p as i64 - 1)
}

/// The bound `-(a+1)` on Kummer defects of depth `a`.
pub fn kummer_bound(a: u32) -> i64 {
    -(a as i64 + 1)
}

/// `u_{1 + p^a (p-1)}` for `a = 0..=depth`.
#[derive(Clone, Debug)]
pub struct KummerFamily {
    pub prime: u64,
    pub depth: u32,
    pub states: Vec<HeisenbergState>,
}

impl KummerFamily {
    pub fn new(prime: u64, depth: u32) -> Result<Self> {
        check_odd_prime(prime)?;
        let states = (0..=depth)
            .into_par_iter()
            .map(|a| u_state(family_index(prime, a), prime))
            .collect::<Result<Vec<_>>>()?;
        Ok(KummerFamily { prime, depth, states })
    }

    pub fn index(&self, a: u32) -> i64 {
        family_index(self.prime, a)
    }

    pub fn state(&self, a: u32) -> &HeisenbergState {
        &self.states[a as usize]
    }

    /// `u_r - u_s` for depths `a <= b`.
    pub fn defect(&self, a: u32, b: u32) -> DefectReport<Partition> {
        let (r, s) = (self.index(a), self.index(b));
        DefectReport::new(
            self.state(a) - self.state(b),
            self.prime,
            vec![("p", self.prime as i64), ("a", a as i64), ("b", b as i64), ("r", r), ("s", s)],
            vec![format!("u_{r}"), format!("u_{s}")],
        )
    }
}

/// `u_r - u_s` with `r = 1 + p^a (p-1)`, `s = 1 + p^b (p-1)`; the congruence
/// asks for norm exponent at most [`kummer_bound`]`(a)`.
pub fn kummer_check(p: u64, a: u32, b: u32) -> Result<DefectReport<Partition>> {
    check_odd_prime(p)?;
    let (r, s) = (family_index(p, a), family_index(p, b));
    let defect = &u_state(r, p)? - &u_state(s, p)?;
    Ok(DefectReport::new(
        defect,
        p,
        vec![("p", p as i64), ("a", a as i64), ("b", b as i64), ("r", r), ("s", s)],
        vec![format!("u_{r}"), format!("u_{s}")],
    ))
}

/// `f(u_r)` for `r = 1 + p^a (p-1)`.
pub fn family_character(p: u64, a: u32, n_max: usize) -> Result<QSeries> {
    Ok(normalized_character(&u_state(family_index(p, a), p)?, n_max))
}

/// Distance exponent between `f(u_{1 + p^a (p-1)})` and `target`.
pub fn limit_character_distance(p: u64, a: u32, n_max: usize, target: &QSeries) -> Result<NormExponent> {
    qseries_padic_distance(&family_character(p, a, n_max)?, target, p, n_max)
}

/// Distance exponent between `f(u_{1 + p^a (p-1)})` and `2 G2*`.
pub fn limit_character_check(p: u64, a: u32, n_max: usize) -> Result<NormExponent> {
    let target = eisenstein_g2_star(p, n_max)?.scale(&int(2));
    limit_character_distance(p, a, n_max, &target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::monomial;
    use crate::linear::Monomial;
    use crate::qseries::{eisenstein_g, eisenstein_g2_stabilized};
    use crate::scalar::factorial;

    #[test]
    fn bracket_state_examples() {
        let s1 = square_bracket_state(1).unwrap();
        assert_eq!(s1, &monomial(&[1, 1]) - &monomial(&[]).scale(&rat(1, 12)));
        let s3 = square_bracket_state(3).unwrap();
        let expected = HeisenbergState::from_terms([
            (Partition::new(vec![1, 1]), int(1)),
            (Partition::new(vec![2, 1]), int(3)),
            (Partition::new(vec![3, 1]), int(2)),
            (Partition::empty(), rat(1, 120)),
        ]);
        assert_eq!(s3, expected);
        for r in [5i64, 7, 9, 11] {
            let s = square_bracket_state(r).unwrap();
            let top = Partition::new(vec![r as u32, 1]);
            assert_eq!(s.coefficient(&top), Rational::from_integer(factorial(r as u64 - 1)));
            assert!(s.iter().all(|(k, _)| k.weight() == 0 || k.len() == 2));
        }
        assert_eq!(square_bracket_state(2), Err(Error::InvalidBracketIndex(2)));
        assert_eq!(square_bracket_state(-1), Err(Error::InvalidBracketIndex(-1)));
    }

    #[test]
    fn u_is_rescaled_v() {
        for (r, p) in [(1i64, 3u64), (3, 5), (5, 7)] {
            let lhs = u_state(r, p).unwrap();
            let factor = int(2) * (Rational::one() - Rational::from_integer(Pow::pow(BigInt::from(p), r as u64)));
            assert_eq!(lhs, v_state(r).unwrap().scale(&factor));
        }
        assert_eq!(u_state(1, 4), Err(Error::NotOddPrime(4)));
    }

    #[test]
    fn u_states_are_integral_where_expected() {
        for p in [5u64, 7] {
            for a in 0..=1 {
                let u = u_state(family_index(p, a), p).unwrap();
                assert!(u.sup_norm_exponent(p).at_most(0), "p={p} a={a}");
            }
        }
    }

    #[test]
    fn small_kummer_examples() {
        assert!(kummer_check(5, 0, 1).unwrap().norm_exponent.at_most(-1));
        assert!(kummer_check(7, 0, 0).unwrap().is_zero());
        let family = KummerFamily::new(5, 1).unwrap();
        assert_eq!(family.defect(0, 1), kummer_check(5, 0, 1).unwrap());
    }

    #[test]
    fn v_characters_are_eisenstein() {
        for r in [1i64, 3] {
            let f = normalized_character(&v_state(r).unwrap(), 10);
            assert_eq!(f, eisenstein_g(r + 1, 10).unwrap());
        }
    }

    #[test]
    fn limit_against_stabilized_g2() {
        let target = eisenstein_g2_stabilized(5, 8).unwrap().scale(&int(2));
        assert!(limit_character_distance(5, 0, 8, &target).unwrap().at_most(-1));
    }
}
