//! Closed-form counting and dimension formulas, and the streamed
//! enumeration of multiplicity vectors they are checked against.
//!
//! An `n`-degree representation is, up to isomorphism, a multiplicity
//! vector `(k_1, ..., k_r)` with `sum d_i k_i = n`. Everything here is
//! exact big-integer arithmetic: the binomial sums reach `C(38, 26)`-scale
//! within the test range alone. Boundary conventions: empty sums are 0,
//! `C(a, b) = 0` when `a < b`, and `n = 0` is admitted with exactly one
//! (empty) representation.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::cyclo::OddPrime;
use crate::error::Error;
use crate::groups::GroupFamily;
use crate::irreps::DualPairing;

/// Exact binomial coefficient; 0 when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut res = BigUint::one();
    for i in 0..k {
        res = res * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    res
}

/// A multiplicity vector `(k_1, ..., k_r)` for one group family; the
/// degree `n = sum d_i k_i` is derived, never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultVec {
    family: GroupFamily,
    p: OddPrime,
    k: Vec<u64>,
}

impl MultVec {
    pub fn new(family: GroupFamily, p: OddPrime, k: Vec<u64>) -> Result<Self, Error> {
        let expected = family.class_count(p);
        if k.len() != expected {
            return Err(Error::InvalidMultVec {
                expected,
                got: k.len(),
            });
        }
        Ok(MultVec { family, p, k })
    }

    pub fn family(&self) -> GroupFamily {
        self.family
    }

    pub fn prime(&self) -> OddPrime {
        self.p
    }

    pub fn k(&self) -> &[u64] {
        &self.k
    }

    /// Total degree `sum d_i k_i`.
    pub fn degree(&self) -> u64 {
        let degrees = self.family.degrees(self.p);
        self.k.iter().zip(&degrees).map(|(k, d)| k * d).sum()
    }
}

/// Number of `n`-degree representations up to isomorphism.
///
/// `C(n + p^3 - 1, p^3 - 1)` for the abelian families, and
/// `sum_mu C(mu + p - 2, p - 2) * C(n - mu p + p^2 - 1, p^2 - 1)`
/// otherwise. Pure counting; valid for any odd prime.
pub fn count_reps(family: GroupFamily, p: OddPrime, n: u64) -> BigUint {
    let pv = p.get();
    if family.is_abelian() {
        binomial(n + p.cubed() - 1, p.cubed() - 1)
    } else {
        let mut total = BigUint::zero();
        for mu in 0..=(n / pv) {
            total += binomial(mu + pv - 2, pv - 2)
                * binomial(n - mu * pv + p.squared() - 1, p.squared() - 1);
        }
        total
    }
}

/// Number of `n`-degree representations admitting a non-degenerate
/// invariant bilinear form: those whose dual-pair multiplicities match.
///
/// Non-abelian:
/// `sum_l C(l + (p-3)/2, (p-3)/2) * sum_s C(s + (p^2-3)/2, (p^2-3)/2)`
/// with `l` up to `n / 2p` and `s` up to `(n - 2pl) / 2`; abelian:
/// `sum_l C(l + (p^3-3)/2, (p^3-3)/2)` with `l` up to `n / 2`.
pub fn count_nondegenerate(family: GroupFamily, p: OddPrime, n: u64) -> BigUint {
    let pv = p.get();
    if family.is_abelian() {
        let half = (p.cubed() - 3) / 2;
        let mut total = BigUint::zero();
        for l in 0..=(n / 2) {
            total += binomial(l + half, half);
        }
        total
    } else {
        let outer_half = (pv - 3) / 2;
        let inner_half = (p.squared() - 3) / 2;
        let mut total = BigUint::zero();
        for l in 0..=(n / (2 * pv)) {
            let outer = binomial(l + outer_half, outer_half);
            let mut inner = BigUint::zero();
            for s in 0..=((n - 2 * pv * l) / 2) {
                inner += binomial(s + inner_half, inner_half);
            }
            total += outer * inner;
        }
        total
    }
}

/// Per-degree census: total representations, those admitting a
/// non-degenerate invariant form, and the degenerate-only remainder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub n: u64,
    pub total: BigUint,
    pub nondegenerate_admitting: BigUint,
    pub degenerate_only: BigUint,
}

pub fn census(family: GroupFamily, p: OddPrime, n: u64) -> Census {
    let total = count_reps(family, p, n);
    let nondegenerate_admitting = count_nondegenerate(family, p, n);
    let degenerate_only = &total - &nondegenerate_admitting;
    Census {
        n,
        total,
        nondegenerate_admitting,
        degenerate_only,
    }
}

/// `dim Xi_G = sum_{(i,j) in A_G} k_i k_j` over ordered dual pairs.
pub fn invariant_dim(k: &MultVec, pairing: &DualPairing) -> BigUint {
    let mut dim = BigUint::zero();
    for &(i, j) in pairing.pairs() {
        dim += BigUint::from(k.k()[i - 1]) * BigUint::from(k.k()[j - 1]);
    }
    dim
}

/// Dimension of the symmetric part: `k_1 (k_1 + 1) / 2` plus half the
/// off-diagonal dual-pair sum (an integer: ordered pairs count twice).
pub fn symmetric_dim(k: &MultVec) -> BigUint {
    let k1 = BigUint::from(k.k()[0]);
    let mut dim = &k1 * (&k1 + BigUint::one()) / BigUint::from(2u32);
    for i in (1..k.k().len()).step_by(2) {
        dim += BigUint::from(k.k()[i]) * BigUint::from(k.k()[i + 1]);
    }
    dim
}

/// Dimension of the skew-symmetric part: `k_1 (k_1 - 1) / 2` plus half
/// the off-diagonal dual-pair sum.
pub fn skew_dim(k: &MultVec) -> BigUint {
    let k1 = k.k()[0];
    let mut dim = if k1 == 0 {
        BigUint::zero()
    } else {
        BigUint::from(k1) * BigUint::from(k1 - 1) / BigUint::from(2u32)
    };
    for i in (1..k.k().len()).step_by(2) {
        dim += BigUint::from(k.k()[i]) * BigUint::from(k.k()[i + 1]);
    }
    dim
}

/// True when every irreducible and its dual have equal multiplicity
/// (`k_{2i} = k_{2i+1}` in the frozen adjacent-pair ordering): exactly the
/// representations carrying a non-degenerate invariant form.
pub fn admits_nondegenerate(k: &MultVec) -> bool {
    k.k()[1..].chunks(2).all(|pair| pair[0] == pair[1])
}

/// Streamed enumeration state over solutions of `sum d_i k_i = n` in
/// ascending lexicographic order.
///
/// The vector is mutated in place; `current` borrows it between steps, so
/// counting sweeps allocate nothing per solution.
pub struct MultVecStepper {
    degrees: Vec<u64>,
    k: Vec<u64>,
    exhausted: bool,
}

impl MultVecStepper {
    /// Positioned at the lexicographically smallest solution, or
    /// exhausted when none exists.
    pub fn new(degrees: Vec<u64>, n: u64) -> Self {
        let mut s = MultVecStepper {
            k: vec![0; degrees.len()],
            degrees,
            exhausted: false,
        };
        if s.degrees.is_empty() {
            s.exhausted = n != 0;
            return s;
        }
        if !s.fill_min(0, n) {
            s.exhausted = true;
        }
        s
    }

    pub fn is_exhausted(&self) -> bool {
        self.exhausted
    }

    pub fn current(&self) -> &[u64] {
        &self.k
    }

    /// Writes the lexicographically smallest completion of weight `w`
    /// into positions `start..`; false when impossible.
    fn fill_min(&mut self, start: usize, mut w: u64) -> bool {
        let r = self.degrees.len();
        for i in start..r {
            let d = self.degrees[i];
            let v = if i + 1 == r {
                if !w.is_multiple_of(d) {
                    return false;
                }
                w / d
            } else if self.degrees[i + 1] == 1 {
                0
            } else {
                // Pure degree-p tail: leave a multiple of p behind.
                let p = self.degrees[i + 1];
                if d == 1 {
                    w % p
                } else if w.is_multiple_of(p) {
                    0
                } else {
                    return false;
                }
            };
            self.k[i] = v;
            w -= d * v;
        }
        w == 0
    }

    /// Steps to the lexicographic successor; false at the end.
    ///
    /// The successor raises the rightmost coordinate that admits a
    /// feasible completion, by the smallest feasible increment (which is
    /// larger than 1 when only a pure degree-p tail remains to absorb
    /// the slack), then minimizes the suffix.
    pub fn advance(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        let r = self.degrees.len();
        if r < 2 {
            self.exhausted = true;
            return false;
        }
        // s = weight currently held strictly after position j.
        let mut s = 0u64;
        for j in (0..r - 1).rev() {
            s += self.degrees[j + 1] * self.k[j + 1];
            let d = self.degrees[j];
            let inc = if self.degrees[j + 1] == 1 {
                // Mixed suffix: absorbs any non-negative remainder.
                if s >= d {
                    Some(1)
                } else {
                    None
                }
            } else {
                let p = self.degrees[j + 1];
                if d == 1 {
                    // Remainder must stay a multiple of p.
                    let inc = if s.is_multiple_of(p) { p } else { s % p };
                    if inc <= s {
                        Some(inc)
                    } else {
                        None
                    }
                } else {
                    // d == p and s is already a multiple of p.
                    if s >= d {
                        Some(1)
                    } else {
                        None
                    }
                }
            };
            if let Some(inc) = inc {
                self.k[j] += inc;
                let filled = self.fill_min(j + 1, s - d * inc);
                debug_assert!(filled);
                return true;
            }
        }
        self.exhausted = true;
        false
    }
}

/// Iterator over all `n`-degree multiplicity vectors of a family in
/// ascending lexicographic order.
pub fn enumerate_multvecs(
    family: GroupFamily,
    p: OddPrime,
    n: u64,
) -> impl Iterator<Item = MultVec> {
    let stepper = MultVecStepper::new(family.degrees(p), n);
    MultVecIter {
        family,
        p,
        stepper,
        done: false,
    }
}

struct MultVecIter {
    family: GroupFamily,
    p: OddPrime,
    stepper: MultVecStepper,
    done: bool,
}

impl Iterator for MultVecIter {
    type Item = MultVec;

    fn next(&mut self) -> Option<MultVec> {
        if self.done || self.stepper.is_exhausted() {
            return None;
        }
        let item = MultVec {
            family: self.family,
            p: self.p,
            k: self.stepper.current().to_vec(),
        };
        if !self.stepper.advance() {
            self.done = true;
        }
        Some(item)
    }
}

/// Allocation-free visitor over the same stream as [`enumerate_multvecs`].
pub fn visit_multvecs(family: GroupFamily, p: OddPrime, n: u64, mut f: impl FnMut(&[u64])) {
    let mut stepper = MultVecStepper::new(family.degrees(p), n);
    if stepper.is_exhausted() {
        return;
    }
    loop {
        f(stepper.current());
        if !stepper.advance() {
            break;
        }
    }
}

/// Count by literally walking the stream.
pub fn count_by_enumeration(family: GroupFamily, p: OddPrime, n: u64) -> BigUint {
    let mut count = BigUint::zero();
    visit_multvecs(family, p, n, |_| count += BigUint::one());
    count
}

/// Suffix-count table: `ways[i][w]` solutions of `sum_{j >= i} d_j k_j = w`.
///
/// Addition-only recurrence (`ways[i][w] = ways[i+1][w] + ways[i][w - d_i]`),
/// so it shares nothing with the binomial formulas it cross-checks; also
/// the backbone of exact unranking.
pub struct SuffixCounts {
    degrees: Vec<u64>,
    ways: Vec<Vec<BigUint>>,
}

impl SuffixCounts {
    pub fn new(family: GroupFamily, p: OddPrime, n: u64) -> Self {
        Self::from_degrees(family.degrees(p), n)
    }

    /// Same table over an arbitrary degree list.
    pub fn from_degrees(degrees: Vec<u64>, n: u64) -> Self {
        let r = degrees.len();
        let w = n as usize;
        let mut ways = vec![vec![BigUint::zero(); w + 1]; r + 1];
        ways[r][0] = BigUint::one();
        for i in (0..r).rev() {
            let d = degrees[i] as usize;
            for weight in 0..=w {
                let mut total = ways[i + 1][weight].clone();
                if weight >= d {
                    total += ways[i][weight - d].clone();
                }
                ways[i][weight] = total;
            }
        }
        SuffixCounts { degrees, ways }
    }

    pub fn total(&self) -> &BigUint {
        &self.ways[0][self.ways[0].len() - 1]
    }

    /// The vector at position `rank` (0-based) of the ascending
    /// lexicographic stream.
    pub fn unrank(&self, rank: &BigUint) -> Option<Vec<u64>> {
        if rank >= self.total() {
            return None;
        }
        let r = self.degrees.len();
        let mut k = vec![0u64; r];
        let mut w = self.ways[0].len() - 1;
        let mut rank = rank.clone();
        for (i, slot) in k.iter_mut().enumerate() {
            let d = self.degrees[i] as usize;
            let mut v = 0u64;
            loop {
                let rem = w - d * v as usize;
                let below = &self.ways[i + 1][rem];
                if &rank < below {
                    break;
                }
                rank -= below.clone();
                v += 1;
            }
            *slot = v;
            w -= d * v as usize;
        }
        Some(k)
    }
}

/// `count_reps` recomputed by the addition-only recurrence.
pub fn count_by_recurrence(family: GroupFamily, p: OddPrime, n: u64) -> BigUint {
    SuffixCounts::new(family, p, n).total().clone()
}
