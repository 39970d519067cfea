//! Mode actions `v(n)b` on the Heisenberg Fock space.
//!
//! Generator modes act directly: `h(-k)` multiplies by `h(-k)` and `h(k)`
//! differentiates as `k d/dh(-k)`. A general monomial `h(-k) u` with `k` its
//! largest part is peeled off with the associator formula
//!
//! ```text
//! (h(-k)u)(n)b = sum_i (-1)^i C(-k,i) [ h(-k-i) u(n+i) b - (-1)^k u(n-k-i) h(i) b ]
//! ```
//!
//! and both sums stop at the grading bounds: `u(j)b = 0` once
//! `j >= wt(u) + wt(b)`, and `h(i)b = 0` once `i > wt(b)`.

use std::sync::OnceLock;

use dashmap::DashMap;
use num_traits::{One, Zero};

use crate::fock::{HeisenbergState, Partition};
use crate::linear::{Combination, Monomial};
use crate::scalar::{binomial, gen_binomial, int, rat, Rational};

/// A vertex algebra presented on a graded monomial basis.
///
/// Implementors supply `u(n)w` on basis monomials; everything else is the
/// bilinear extension.
pub trait VertexAlgebra: Sync {
    type Basis: Monomial;

    fn mode_monomial(&self, u: &Self::Basis, n: i64, w: &Self::Basis) -> Combination<Self::Basis>;

    fn vacuum(&self) -> Combination<Self::Basis> {
        Combination::vacuum()
    }

    /// `u(n)w`, bilinear in `u` and `w`.
    fn mode(&self, u: &Combination<Self::Basis>, n: i64, w: &Combination<Self::Basis>) -> Combination<Self::Basis> {
        let mut out = Combination::zero();
        for (a, ca) in u.iter() {
            let wa = a.weight() as i64;
            for (b, cb) in w.iter() {
                if n >= wa + b.weight() as i64 {
                    continue;
                }
                let piece = self.mode_monomial(a, n, b);
                out.add_scaled(&piece, &(ca * cb));
            }
        }
        out
    }

    /// The grade-preserving mode `o(v) = v(wt v - 1)`, extended over the
    /// homogeneous components of `v`.
    fn zero_mode(&self, v: &Combination<Self::Basis>, b: &Combination<Self::Basis>) -> Combination<Self::Basis> {
        let mut out = Combination::zero();
        for (k, component) in v.homogeneous_components() {
            out.add_scaled(&self.mode(&component, k as i64 - 1, b), &Rational::one());
        }
        out
    }

    /// The `n`-th mode of the `t`-th residue product of `Y(a,z)` and `Y(b,z)`, applied to `w`.
    fn residue_product_mode(
        &self,
        a: &Combination<Self::Basis>,
        b: &Combination<Self::Basis>,
        t: i64,
        n: i64,
        w: &Combination<Self::Basis>,
    ) -> Combination<Self::Basis> {
        let (Some(wa), Some(wb), Some(ww)) = (a.max_weight(), b.max_weight(), w.max_weight()) else {
            return Combination::zero();
        };
        let (wa, wb, ww) = (wa as i64, wb as i64, ww as i64);
        // b(n+i)w vanishes for i >= wb+ww-n and a(i)w for i >= wa+ww
        let stop = (wb + ww - n).max(wa + ww).max(0);
        let sign_t = if t.rem_euclid(2) == 0 { int(1) } else { int(-1) };
        let mut out = Combination::zero();
        for i in 0..stop {
            let c = gen_binomial(t, i as u32);
            if c.is_zero() {
                continue;
            }
            let c = Rational::from_integer(if i % 2 == 0 { c } else { -c });
            if n + i < wb + ww {
                let inner = self.mode(b, n + i, w);
                out.add_scaled(&self.mode(a, t - i, &inner), &c);
            }
            if i < wa + ww {
                let inner = self.mode(a, i, w);
                out.add_scaled(&self.mode(b, t + n - i, &inner), &-(&c * &sign_t));
            }
        }
        out
    }

    /// `T(a) = a(-2)|0>`.
    fn translation(&self, a: &Combination<Self::Basis>) -> Combination<Self::Basis> {
        self.mode(a, -2, &self.vacuum())
    }
}

/// Generator mode `h_m` on a basis monomial.
pub fn h_mode_monomial(m: i64, b: &Partition) -> HeisenbergState {
    match m {
        0 => HeisenbergState::zero(),
        m if m < 0 => HeisenbergState::monomial(b.with_part((-m) as u32)),
        m => {
            let part = m as u32;
            let mult = b.multiplicity(part);
            match b.without_part(part) {
                Some(rest) => HeisenbergState::term(rest, int(m * mult as i64)),
                None => HeisenbergState::zero(),
            }
        }
    }
}

/// Generator mode `h_m`: multiplication for `m < 0`, `m d/dh(-m)` for
/// `m > 0`, and zero for `m = 0`.
pub fn h_mode(m: i64, b: &HeisenbergState) -> HeisenbergState {
    let mut out = HeisenbergState::zero();
    for (mono, c) in b.iter() {
        out.add_scaled(&h_mode_monomial(m, mono), c);
    }
    out
}

/// The Heisenberg vertex algebra with a concurrency-safe memo of
/// monomial mode products.
#[derive(Default)]
pub struct Heisenberg {
    cache: DashMap<(Partition, i64, Partition), HeisenbergState>,
}

impl Heisenberg {
    pub fn new() -> Self {
        Self::default()
    }

    /// A process-wide instance, shared by the free functions below.
    pub fn shared() -> &'static Heisenberg {
        static ENGINE: OnceLock<Heisenberg> = OnceLock::new();
        ENGINE.get_or_init(Heisenberg::new)
    }

    pub fn cache_len(&self) -> usize {
        self.cache.len()
    }

    fn peel(&self, v: &Partition, n: i64, b: &Partition) -> HeisenbergState {
        let (k, u) = v.split_first().expect("peel needs a nonempty monomial");
        let k = k as i64;
        let wu = u.weight() as i64;
        let wb = b.weight() as i64;
        let mut out = HeisenbergState::zero();
        // (-1)^i C(-k, i) = C(k+i-1, i)
        let coeff = |i: i64| Rational::from_integer(binomial((k + i - 1) as u64, i as u64));
        let mut i = 0;
        while n + i < wu + wb {
            let inner = self.mode_monomial(&u, n + i, b);
            if !inner.is_zero() {
                out.add_scaled(&h_mode(-k - i, &inner), &coeff(i));
            }
            i += 1;
        }
        let sign = if k % 2 == 0 { int(-1) } else { int(1) };
        for i in 1..=wb {
            let hb = h_mode_monomial(i, b);
            if hb.is_zero() {
                continue;
            }
            for (mono, c) in hb.iter() {
                let piece = self.mode_monomial(&u, n - k - i, mono);
                out.add_scaled(&piece, &(&coeff(i) * &sign * c));
            }
        }
        out
    }
}

impl VertexAlgebra for Heisenberg {
    type Basis = Partition;

    fn mode_monomial(&self, v: &Partition, n: i64, b: &Partition) -> HeisenbergState {
        if n >= (v.weight() + b.weight()) as i64 {
            return HeisenbergState::zero();
        }
        match v.parts() {
            [] => {
                if n == -1 {
                    HeisenbergState::monomial(b.clone())
                } else {
                    HeisenbergState::zero()
                }
            }
            [1] => h_mode_monomial(n, b),
            _ => {
                let key = (v.clone(), n, b.clone());
                if let Some(hit) = self.cache.get(&key) {
                    return hit.clone();
                }
                let value = self.peel(v, n, b);
                self.cache.insert(key, value.clone());
                value
            }
        }
    }
}

/// `v(n)b` on the shared engine.
pub fn mode_action(v: &HeisenbergState, n: i64, b: &HeisenbergState) -> HeisenbergState {
    Heisenberg::shared().mode(v, n, b)
}

/// `o(v)b`.
pub fn zero_mode(v: &HeisenbergState, b: &HeisenbergState) -> HeisenbergState {
    Heisenberg::shared().zero_mode(v, b)
}

pub fn residue_product_mode(
    a: &HeisenbergState,
    b: &HeisenbergState,
    t: i64,
    n: i64,
    w: &HeisenbergState,
) -> HeisenbergState {
    Heisenberg::shared().residue_product_mode(a, b, t, n, w)
}

pub fn translation(a: &HeisenbergState) -> HeisenbergState {
    Heisenberg::shared().translation(a)
}

/// Conformal vector `omega = 1/2 h(-1)^2 |0>`, central charge 1.
pub fn conformal_vector() -> HeisenbergState {
    HeisenbergState::term(Partition::new(vec![1, 1]), rat(1, 2))
}

/// Virasoro generator `L_n = 1/2 sum_j :h_j h_{n-j}:` acting on the Fock space.
pub fn virasoro_mode(n: i64, b: &HeisenbergState) -> HeisenbergState {
    let mut out = HeisenbergState::zero();
    for (mono, c) in b.iter() {
        let wb = mono.weight() as i64;
        let single = HeisenbergState::monomial(mono.clone());
        if n == 0 {
            for j in 1..=wb {
                out.add_scaled(&h_mode(-j, &h_mode(j, &single)), c);
            }
        } else {
            let half = c * rat(1, 2);
            // h_{n-j} b vanishes unless n - j <= wt(b); the factors commute,
            // so j <= wt(b) as well
            for j in (n - wb)..=wb {
                if j == 0 || j == n {
                    continue;
                }
                out.add_scaled(&h_mode(j, &h_mode(n - j, &single)), &half);
            }
        }
    }
    out
}
