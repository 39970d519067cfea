//! Defects of the vertex-algebra identities, returned as states together
//! with their p-adic sup-norm exponents.
//!
//! On the algebraic (finitely supported) lattice every identity holds
//! exactly, so a correct engine produces defects with exponent −∞; a nonzero
//! defect's exponent says how far off it is.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fock::{grade_basis, HeisenbergState, Partition};
use crate::linear::{Combination, Monomial};
use crate::modes::{h_mode, virasoro_mode, VertexAlgebra};
use crate::scalar::{gen_binomial, int, rat, NormExponent, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct DefectReport<K: Monomial> {
    pub defect: Combination<K>,
    pub norm_exponent: NormExponent,
    pub parameters: Vec<(&'static str, i64)>,
    pub inputs: Vec<String>,
}

impl<K: Monomial> DefectReport<K> {
    pub fn new(defect: Combination<K>, prime: u64, parameters: Vec<(&'static str, i64)>, inputs: Vec<String>) -> Self {
        let norm_exponent = defect.sup_norm_exponent(prime);
        DefectReport { defect, norm_exponent, parameters, inputs }
    }

    pub fn is_zero(&self) -> bool {
        self.defect.is_zero()
    }

    pub fn parameter(&self, name: &str) -> Option<i64> {
        self.parameters.iter().find(|(k, _)| *k == name).map(|(_, v)| *v)
    }
}

fn signed_binomial(t: i64, i: i64) -> Rational {
    // (-1)^i C(t, i)
    let c = gen_binomial(t, i as u32);
    Rational::from_integer(if i % 2 == 0 { c } else { -c })
}

fn parity_sign(t: i64) -> Rational {
    if t.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn weight_of<K: Monomial>(s: &Combination<K>) -> i64 {
    s.max_weight().map_or(0, |w| w as i64)
}

/// Identity checks over a vertex algebra, reporting norms at a fixed prime.
pub struct AxiomLab<'a, A: VertexAlgebra> {
    algebra: &'a A,
    prime: u64,
}

impl<'a, A: VertexAlgebra> AxiomLab<'a, A> {
    pub fn new(algebra: &'a A, prime: u64) -> Self {
        AxiomLab { algebra, prime }
    }

    pub fn algebra(&self) -> &'a A {
        self.algebra
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    fn report(
        &self,
        defect: Combination<A::Basis>,
        parameters: Vec<(&'static str, i64)>,
        inputs: &[&Combination<A::Basis>],
    ) -> DefectReport<A::Basis> {
        DefectReport::new(defect, self.prime, parameters, inputs.iter().map(|s| s.to_string()).collect())
    }

    /// `sum_i C(r,i) (u(t+i)v)(r+s-i)w`
    pub fn jacobi_lhs(
        &self,
        u: &Combination<A::Basis>,
        v: &Combination<A::Basis>,
        w: &Combination<A::Basis>,
        r: i64,
        s: i64,
        t: i64,
    ) -> Combination<A::Basis> {
        let alg = self.algebra;
        let mut out = Combination::zero();
        if u.is_zero() || v.is_zero() || w.is_zero() {
            return out;
        }
        // u(t+i)v = 0 once t + i >= wt(u) + wt(v)
        let stop = weight_of(u) + weight_of(v) - t;
        for i in 0..stop.max(0) {
            let c = gen_binomial(r, i as u32);
            if c.is_zero() {
                continue;
            }
            let uv = alg.mode(u, t + i, v);
            out.add_scaled(&alg.mode(&uv, r + s - i, w), &Rational::from_integer(c));
        }
        out
    }

    /// `sum_i (-1)^i C(t,i) { u(r+t-i)v(s+i)w - (-1)^t v(s+t-i)u(r+i)w }`
    pub fn jacobi_rhs(
        &self,
        u: &Combination<A::Basis>,
        v: &Combination<A::Basis>,
        w: &Combination<A::Basis>,
        r: i64,
        s: i64,
        t: i64,
    ) -> Combination<A::Basis> {
        let alg = self.algebra;
        let mut out = Combination::zero();
        if u.is_zero() || v.is_zero() || w.is_zero() {
            return out;
        }
        let (wu, wv, ww) = (weight_of(u), weight_of(v), weight_of(w));
        let first_stop = wv + ww - s;
        let second_stop = wu + ww - r;
        let mut stop = first_stop.max(second_stop).max(0);
        if t >= 0 {
            stop = stop.min(t + 1);
        }
        let sign_t = parity_sign(t);
        for i in 0..stop {
            let c = signed_binomial(t, i);
            if i < first_stop {
                let vw = alg.mode(v, s + i, w);
                out.add_scaled(&alg.mode(u, r + t - i, &vw), &c);
            }
            if i < second_stop {
                let uw = alg.mode(u, r + i, w);
                out.add_scaled(&alg.mode(v, s + t - i, &uw), &-(&c * &sign_t));
            }
        }
        out
    }

    pub fn jacobi_defect(
        &self,
        u: &Combination<A::Basis>,
        v: &Combination<A::Basis>,
        w: &Combination<A::Basis>,
        r: i64,
        s: i64,
        t: i64,
    ) -> DefectReport<A::Basis> {
        let defect = &self.jacobi_lhs(u, v, w, r, s, t) - &self.jacobi_rhs(u, v, w, r, s, t);
        self.report(defect, vec![("r", r), ("s", s), ("t", t)], &[u, v, w])
    }

    /// `[u(r), v(s)]w - sum_i C(r,i) (u(i)v)(r+s-i)w`
    pub fn commutator_defect(
        &self,
        u: &Combination<A::Basis>,
        v: &Combination<A::Basis>,
        w: &Combination<A::Basis>,
        r: i64,
        s: i64,
    ) -> DefectReport<A::Basis> {
        let alg = self.algebra;
        let bracket = &alg.mode(u, r, &alg.mode(v, s, w)) - &alg.mode(v, s, &alg.mode(u, r, w));
        let defect = &bracket - &self.jacobi_lhs(u, v, w, r, s, 0);
        self.report(defect, vec![("r", r), ("s", s)], &[u, v, w])
    }

    /// `(u(t)v)(s)w - sum_i (-1)^i C(t,i) { u(t-i)v(s+i)w - (-1)^t v(s+t-i)u(i)w }`
    pub fn associator_defect(
        &self,
        u: &Combination<A::Basis>,
        v: &Combination<A::Basis>,
        w: &Combination<A::Basis>,
        t: i64,
        s: i64,
    ) -> DefectReport<A::Basis> {
        let alg = self.algebra;
        let lhs = alg.mode(&alg.mode(u, t, v), s, w);
        let defect = &lhs - &self.jacobi_rhs(u, v, w, 0, s, t);
        self.report(defect, vec![("t", t), ("s", s)], &[u, v, w])
    }

    /// Residue-product route against the composed route `(a(t)b)(n)w`.
    pub fn residue_product_defect(
        &self,
        a: &Combination<A::Basis>,
        b: &Combination<A::Basis>,
        t: i64,
        n: i64,
        w: &Combination<A::Basis>,
    ) -> DefectReport<A::Basis> {
        let alg = self.algebra;
        let composed = alg.mode(&alg.mode(a, t, b), n, w);
        let defect = &alg.residue_product_mode(a, b, t, n, w) - &composed;
        self.report(defect, vec![("t", t), ("n", n)], &[a, b, w])
    }

    /// `T(a)(n)b + n a(n-1)b`
    pub fn translation_defect(&self, a: &Combination<A::Basis>, n: i64, b: &Combination<A::Basis>) -> DefectReport<A::Basis> {
        let alg = self.algebra;
        let ta = alg.translation(a);
        let mut defect = alg.mode(&ta, n, b);
        defect.add_scaled(&alg.mode(a, n - 1, b), &int(n));
        self.report(defect, vec![("n", n)], &[a, b])
    }

    /// Coefficient indexed by `(r, s)` of `(x-y)^t [Y(u,x), Y(v,y)] w`, for `t >= 0`.
    pub fn locality_coefficient(
        &self,
        u: &Combination<A::Basis>,
        v: &Combination<A::Basis>,
        w: &Combination<A::Basis>,
        r: i64,
        s: i64,
        t: i64,
    ) -> Combination<A::Basis> {
        assert!(t >= 0, "locality coefficients need t >= 0");
        self.jacobi_rhs(u, v, w, r, s, t)
    }

    /// For each `t` in `0..=t_max`, the largest norm exponent of a locality
    /// coefficient over `|r|, |s| <= window`.
    ///
    /// Indices with `r + s + t > wt(u) + wt(v) + wt(w) - 2` are skipped: every
    /// term there lands in negative weight.
    pub fn locality_profile(
        &self,
        u: &Combination<A::Basis>,
        v: &Combination<A::Basis>,
        w: &Combination<A::Basis>,
        t_max: i64,
        window: i64,
    ) -> Vec<(i64, NormExponent)> {
        let total = weight_of(u) + weight_of(v) + weight_of(w);
        (0..=t_max)
            .map(|t| {
                let mut worst = NormExponent::NegInfinity;
                for r in -window..=window {
                    for s in -window..=window {
                        if r + s + t > total - 2 {
                            continue;
                        }
                        let c = self.locality_coefficient(u, v, w, r, s, t);
                        worst = worst.max(c.sup_norm_exponent(self.prime));
                    }
                }
                (t, worst)
            })
            .collect()
    }

    /// `(sup_{n, b} |a(n)b| / |b|, |a|)` as norm exponents, with `n` over
    /// `index_window` and `b` over the monomial basis up to `basis`'s grades.
    pub fn isometry_probe(
        &self,
        a: &Combination<A::Basis>,
        basis: &[A::Basis],
        index_window: std::ops::RangeInclusive<i64>,
    ) -> Result<(NormExponent, NormExponent)> {
        if a.is_zero() {
            return Err(Error::ZeroState);
        }
        let lhs = basis
            .par_iter()
            .map(|b| {
                let b = Combination::monomial(b.clone());
                index_window
                    .clone()
                    .map(|n| {
                        // monomials have unit norm, so the ratio is the norm of a(n)b
                        self.algebra.mode(a, n, &b).sup_norm_exponent(self.prime)
                    })
                    .max()
                    .unwrap_or(NormExponent::NegInfinity)
            })
            .max()
            .unwrap_or(NormExponent::NegInfinity);
        Ok((lhs, a.sup_norm_exponent(self.prime)))
    }
}

/// Basis monomials of the Heisenberg Fock space with grade at most `max_grade`.
pub fn heisenberg_basis_upto(max_grade: u32) -> Vec<Partition> {
    (0..=max_grade).flat_map(grade_basis).collect()
}

/// `[h_m, h_n]b - m delta_{m+n,0} b`
pub fn ccr_defect(m: i64, n: i64, b: &HeisenbergState) -> HeisenbergState {
    let bracket = &h_mode(m, &h_mode(n, b)) - &h_mode(n, &h_mode(m, b));
    if m + n == 0 {
        &bracket - &b.scale(&int(m))
    } else {
        bracket
    }
}

/// `[L_m, L_n]b - (m-n) L_{m+n} b - delta_{m+n,0} (m^3-m)/12 b` for the
/// central-charge-one Virasoro action on the Fock space.
pub fn heisenberg_virasoro_defect(m: i64, n: i64, b: &HeisenbergState) -> HeisenbergState {
    let bracket = &virasoro_mode(m, &virasoro_mode(n, b)) - &virasoro_mode(n, &virasoro_mode(m, b));
    let mut defect = &bracket - &virasoro_mode(m + n, b).scale(&int(m - n));
    if m + n == 0 {
        let central = Rational::from_integer(BigInt::from(m * m * m - m)) * rat(1, 12);
        defect = &defect - &b.scale(&central);
    }
    defect
}
