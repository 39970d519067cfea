//! The Virasoro vertex algebra `W / W1` on its PBW basis
//! `L(-n1) ... L(-nr) v0` with `n1 >= ... >= nr >= 2`.
//!
//! The central charge is carried as the quasicentral charge `c' = c/2`, so
//! the bracket reads `[L(m), L(n)] = (m-n) L(m+n) + C(m+1, 3) c' delta_{m+n,0}`.

use std::fmt;

use dashmap::DashMap;

use crate::axioms::DefectReport;
use crate::fock::{fmt_word, partitions_with_min_part};
use crate::linear::{Combination, Monomial};
use crate::scalar::{gen_binomial, int, Rational};
use crate::modes::VertexAlgebra;

/// A weakly decreasing word of parts `>= 2`; `[3, 2]` is `L(-3) L(-2) v0`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PbwWord(Vec<u32>);

impl PbwWord {
    /// Sorts the parts; panics on a part below 2.
    pub fn new(mut parts: Vec<u32>) -> Self {
        assert!(parts.iter().all(|&p| p >= 2), "PBW parts must be at least 2");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        PbwWord(parts)
    }

    pub fn empty() -> Self {
        PbwWord(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn split_first(&self) -> Option<(u32, PbwWord)> {
        let (&k, rest) = self.0.split_first()?;
        Some((k, PbwWord(rest.to_vec())))
    }

    fn prepend(&self, part: u32) -> PbwWord {
        let mut parts = Vec::with_capacity(self.0.len() + 1);
        parts.push(part);
        parts.extend_from_slice(&self.0);
        PbwWord(parts)
    }
}

impl Monomial for PbwWord {
    fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    fn vacuum() -> Self {
        PbwWord::empty()
    }
}

impl fmt::Display for PbwWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_word(f, 'L', &self.0)
    }
}

impl fmt::Debug for PbwWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L{:?}", self.0)
    }
}

pub type VirasoroState = Combination<PbwWord>;

/// `L(-k1) ... L(-kr) v0` with unit coefficient.
pub fn pbw_monomial(parts: &[u32]) -> VirasoroState {
    VirasoroState::monomial(PbwWord::new(parts.to_vec()))
}

/// PBW words of grade `n`, lexicographically sorted.
pub fn pbw_grade_basis(n: u32) -> Vec<PbwWord> {
    partitions_with_min_part(n, 2).into_iter().map(PbwWord).collect()
}

pub fn pbw_basis_upto(max_grade: u32) -> Vec<PbwWord> {
    (0..=max_grade).flat_map(pbw_grade_basis).collect()
}

/// `omega = L(-2) v0`
pub fn virasoro_conformal_vector() -> VirasoroState {
    pbw_monomial(&[2])
}

/// Mode engine at a fixed quasicentral charge.
pub struct Virasoro {
    cprime: Rational,
    l_cache: DashMap<(i64, PbwWord), VirasoroState>,
    mode_cache: DashMap<(PbwWord, i64, PbwWord), VirasoroState>,
}

impl Virasoro {
    pub fn new(cprime: Rational) -> Self {
        Virasoro { cprime, l_cache: DashMap::new(), mode_cache: DashMap::new() }
    }

    pub fn cprime(&self) -> &Rational {
        &self.cprime
    }

    /// The conventional central charge `c = 2 c'`.
    pub fn central_charge(&self) -> Rational {
        &self.cprime * int(2)
    }

    /// `C(m+1, 3) c'`
    pub fn central_term(&self, m: i64) -> Rational {
        Rational::from_integer(gen_binomial(m + 1, 3)) * &self.cprime
    }

    fn l_word(&self, n: i64, word: &PbwWord) -> VirasoroState {
        let Some((n1, rest)) = word.split_first() else {
            return if n <= -2 { VirasoroState::monomial(PbwWord(vec![(-n) as u32])) } else { VirasoroState::zero() };
        };
        if -n >= n1 as i64 {
            return VirasoroState::monomial(word.prepend((-n) as u32));
        }
        let key = (n, word.clone());
        if let Some(hit) = self.l_cache.get(&key) {
            return hit.clone();
        }
        let n1 = n1 as i64;
        let tail = VirasoroState::monomial(rest);
        // L(n) L(-n1) X = L(-n1) L(n) X + (n+n1) L(n-n1) X + delta_{n,n1} C(n+1,3) c' X
        let mut out = self.l_action(-n1, &self.l_action(n, &tail));
        out.add_scaled(&self.l_action(n - n1, &tail), &int(n + n1));
        if n == n1 {
            out.add_scaled(&tail, &self.central_term(n));
        }
        self.l_cache.insert(key, out.clone());
        out
    }

    /// `L(n) s`, in PBW normal form.
    pub fn l_action(&self, n: i64, s: &VirasoroState) -> VirasoroState {
        let mut out = VirasoroState::zero();
        for (word, c) in s.iter() {
            if n > word.weight() as i64 {
                continue;
            }
            out.add_scaled(&self.l_word(n, word), c);
        }
        out
    }

    /// `[L(m), L(n)]s - (m-n) L(m+n)s - delta_{m+n,0} C(m+1,3) c' s`
    pub fn bracket_defect(&self, m: i64, n: i64, s: &VirasoroState, prime: u64) -> DefectReport<PbwWord> {
        let bracket = &self.l_action(m, &self.l_action(n, s)) - &self.l_action(n, &self.l_action(m, s));
        let mut defect = &bracket - &self.l_action(m + n, s).scale(&int(m - n));
        if m + n == 0 {
            defect.add_scaled(s, &-self.central_term(m));
        }
        DefectReport::new(defect, prime, vec![("m", m), ("n", n)], vec![s.to_string()])
    }

    /// `v(n) b` through the vertex-algebra structure.
    pub fn mode_action(&self, v: &VirasoroState, n: i64, b: &VirasoroState) -> VirasoroState {
        self.mode(v, n, b)
    }

    fn peel(&self, v: &PbwWord, n: i64, b: &PbwWord) -> VirasoroState {
        // v = omega(1-k) u with omega(j) = L(j-1):
        // (omega(1-k)u)(n)b = sum_i C(k-2+i, i) [ L(-k-i) u(n+i) b - (-1)^(k-1) u(1-k+n-i) L(i-1) b ]
        let (k, u) = v.split_first().expect("peel needs a nonempty word");
        let k = k as i64;
        let wu = u.weight() as i64;
        let wb = b.weight() as i64;
        let u_state = VirasoroState::monomial(u);
        let b_state = VirasoroState::monomial(b.clone());
        let mut out = VirasoroState::zero();
        let mut i = 0i64;
        while n + i < wu + wb {
            let c = Rational::from_integer(gen_binomial(k - 2 + i, i as u32));
            let inner = self.mode(&u_state, n + i, &b_state);
            out.add_scaled(&self.l_action(-k - i, &inner), &c);
            i += 1;
        }
        let sign = if k % 2 == 1 { int(1) } else { int(-1) };
        for i in 0..=wb + 1 {
            let c = Rational::from_integer(gen_binomial(k - 2 + i, i as u32));
            let lb = self.l_action(i - 1, &b_state);
            if lb.is_zero() {
                continue;
            }
            out.add_scaled(&self.mode(&u_state, 1 - k + n - i, &lb), &-(c * &sign));
        }
        out
    }
}

impl VertexAlgebra for Virasoro {
    type Basis = PbwWord;

    fn mode_monomial(&self, v: &PbwWord, n: i64, b: &PbwWord) -> VirasoroState {
        match v.parts() {
            [] => {
                if n == -1 {
                    VirasoroState::monomial(b.clone())
                } else {
                    VirasoroState::zero()
                }
            }
            [2] => self.l_word(n - 1, b),
            _ => {
                let key = (v.clone(), n, b.clone());
                if let Some(hit) = self.mode_cache.get(&key) {
                    return hit.clone();
                }
                let value = self.peel(v, n, b);
                self.mode_cache.insert(key, value.clone());
                value
            }
        }
    }
}
