//! Unstructured-search simulators over real amplitude vectors.
//!
//! The classical procedure halves a bag of numbers and tests membership of
//! the target with an indicator inner product. The state-vector procedures
//! act on `N = 2^n` basis indices: a bitwise search that fixes one target
//! bit per inner product, a one-step amplification by the scaled reflection
//! `M_k` composed with the sign-flip oracle, and a one-step non-unitary
//! projector that maps the uniform state straight onto the target.

use serde::Serialize;

use crate::error::{Error, Result};

/// Dense states are capped here; prefix states have no such limit.
pub const MAX_DENSE_QUBITS: u32 = 20;

/// Membership oracle for a single target index.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SearchOracle {
    n: u32,
    target: u64,
}

impl SearchOracle {
    pub fn new(n: u32, target: u64) -> Result<Self> {
        if n == 0 || n > 63 {
            return Err(Error::BadParameter(format!("qubit count {n} out of range 1..=63")));
        }
        if target >= 1u64 << n {
            return Err(Error::BadParameter(format!("target {target} outside [0, 2^{n})")));
        }
        Ok(SearchOracle { n, target })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn target(&self) -> u64 {
        self.target
    }

    /// `1` exactly at the target index.
    pub fn query(&self, x: u64) -> u64 {
        (x == self.target) as u64
    }
}

/// Real amplitude state over `2^n` basis indices. Uniform-over-a-prefix
/// states keep the implicit `(prefix, amplitude)` form so inner products
/// with other prefix states cost constant time.
#[derive(Debug, Clone, Serialize)]
pub enum AmplitudeState {
    Dense { n: u32, amps: Vec<f64> },
    Prefix { n: u32, bits: Vec<u8>, amp: f64 },
}

impl AmplitudeState {
    /// Equal amplitude `2^{-n/2}` on every index.
    pub fn uniform(n: u32) -> Result<Self> {
        AmplitudeState::prefix(n, &[])
    }

    /// Uniform over the indices whose top bits equal `bits`, zero elsewhere.
    pub fn prefix(n: u32, bits: &[u8]) -> Result<Self> {
        if n == 0 || n > 63 {
            return Err(Error::BadParameter(format!("qubit count {n} out of range 1..=63")));
        }
        if bits.len() > n as usize {
            return Err(Error::BadPrefix);
        }
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::BadPrefix);
        }
        let k = bits.len() as u32;
        let amp = 2f64.powi(-((n - k) as i32)).sqrt();
        Ok(AmplitudeState::Prefix { n, bits: bits.to_vec(), amp })
    }

    /// The basis state `|index>`.
    pub fn basis(n: u32, index: u64) -> Result<Self> {
        if n == 0 || n > 63 {
            return Err(Error::BadParameter(format!("qubit count {n} out of range 1..=63")));
        }
        if index >= 1u64 << n {
            return Err(Error::BadParameter(format!("index {index} outside [0, 2^{n})")));
        }
        let bits: Vec<u8> = (0..n).rev().map(|b| ((index >> b) & 1) as u8).collect();
        AmplitudeState::prefix(n, &bits)
    }

    /// Unnormalized sum of basis states, one per listed index.
    pub fn indicator(n: u32, indices: &[u64]) -> Result<Self> {
        if n == 0 || n > MAX_DENSE_QUBITS {
            return Err(Error::BadParameter(format!(
                "qubit count {n} out of range 1..={MAX_DENSE_QUBITS} for dense states"
            )));
        }
        let mut amps = vec![0.0; 1 << n];
        for &ix in indices {
            if ix >= 1u64 << n {
                return Err(Error::BadParameter(format!("index {ix} outside [0, 2^{n})")));
            }
            amps[ix as usize] += 1.0;
        }
        Ok(AmplitudeState::Dense { n, amps })
    }

    pub fn n(&self) -> u32 {
        match self {
            AmplitudeState::Dense { n, .. } | AmplitudeState::Prefix { n, .. } => *n,
        }
    }

    /// Amplitude at a basis index.
    pub fn amplitude(&self, index: u64) -> f64 {
        match self {
            AmplitudeState::Dense { amps, .. } => amps[index as usize],
            AmplitudeState::Prefix { n, bits, amp } => {
                if prefix_contains(*n, bits, index) {
                    *amp
                } else {
                    0.0
                }
            }
        }
    }

    pub fn norm(&self) -> f64 {
        match self {
            AmplitudeState::Dense { amps, .. } => amps.iter().map(|a| a * a).sum::<f64>().sqrt(),
            AmplitudeState::Prefix { n, bits, amp } => {
                let count = 1u64 << (*n as usize - bits.len());
                (amp * amp * count as f64).sqrt()
            }
        }
    }

    pub fn to_dense(&self) -> Result<AmplitudeState> {
        match self {
            AmplitudeState::Dense { .. } => Ok(self.clone()),
            AmplitudeState::Prefix { n, bits, amp } => {
                if *n > MAX_DENSE_QUBITS {
                    return Err(Error::TooLarge { p: *n as usize, max: MAX_DENSE_QUBITS as usize });
                }
                let mut amps = vec![0.0; 1usize << n];
                let lo = prefix_range_start(*n, bits);
                let len = 1u64 << (*n as usize - bits.len());
                for ix in lo..lo + len {
                    amps[ix as usize] = *amp;
                }
                Ok(AmplitudeState::Dense { n: *n, amps })
            }
        }
    }

    /// Index with the largest absolute amplitude (smallest index on ties).
    pub fn argmax(&self) -> u64 {
        match self {
            AmplitudeState::Dense { amps, .. } => amps
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()).then(b.0.cmp(&a.0)))
                .map(|(ix, _)| ix as u64)
                .unwrap_or(0),
            AmplitudeState::Prefix { n, bits, .. } => prefix_range_start(*n, bits),
        }
    }
}

fn prefix_range_start(n: u32, bits: &[u8]) -> u64 {
    let mut v = 0u64;
    for &b in bits {
        v = (v << 1) | b as u64;
    }
    v << (n as usize - bits.len())
}

fn prefix_contains(n: u32, bits: &[u8], index: u64) -> bool {
    let k = bits.len();
    if k == 0 {
        return true;
    }
    index >> (n as usize - k) == prefix_range_start(n, bits) >> (n as usize - k)
}

/// `<a|b>` over real amplitudes; constant time for two prefix states.
pub fn inner_product(a: &AmplitudeState, b: &AmplitudeState) -> Result<f64> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch { a: a.n(), b: b.n() });
    }
    use AmplitudeState::{Dense, Prefix};
    Ok(match (a, b) {
        (Prefix { n, bits: ba, amp: aa }, Prefix { bits: bb, amp: ab, .. }) => {
            let (short, long) = if ba.len() <= bb.len() { (ba, bb) } else { (bb, ba) };
            if long[..short.len()] == short[..] {
                let overlap = 1u64 << (*n as usize - long.len());
                aa * ab * overlap as f64
            } else {
                0.0
            }
        }
        (Dense { amps: xa, .. }, Dense { amps: xb, .. }) => {
            xa.iter().zip(xb).map(|(x, y)| x * y).sum()
        }
        (Dense { amps, n }, Prefix { bits, amp, .. })
        | (Prefix { bits, amp, .. }, Dense { amps, n }) => {
            let lo = prefix_range_start(*n, bits);
            let len = 1u64 << (*n as usize - bits.len());
            amps[lo as usize..(lo + len) as usize].iter().sum::<f64>() * amp
        }
    })
}

/// Sign flip at the oracle's target: `O|x> = (-1)^{f(x)} |x>`.
pub fn apply_oracle(state: &AmplitudeState, oracle: &SearchOracle) -> Result<AmplitudeState> {
    if state.n() != oracle.n() {
        return Err(Error::DimensionMismatch { a: state.n(), b: oracle.n() });
    }
    let dense = state.to_dense()?;
    match dense {
        AmplitudeState::Dense { n, mut amps } => {
            amps[oracle.target() as usize] = -amps[oracle.target() as usize];
            Ok(AmplitudeState::Dense { n, amps })
        }
        _ => unreachable!(),
    }
}

/// `M_k s = 2^k <psi|s> psi - (2^k - 1) s`, a scaled reflection about `psi`.
/// Norm-preserving only at `k = 1`.
pub fn apply_mk(state: &AmplitudeState, psi: &AmplitudeState, k: u32) -> Result<AmplitudeState> {
    if state.n() != psi.n() {
        return Err(Error::DimensionMismatch { a: state.n(), b: psi.n() });
    }
    let scale = 2f64.powi(k as i32);
    let ip = inner_product(psi, state)?;
    let (sd, pd) = (state.to_dense()?, psi.to_dense()?);
    match (sd, pd) {
        (AmplitudeState::Dense { n, amps: s }, AmplitudeState::Dense { amps: p, .. }) => {
            let amps =
                s.iter().zip(&p).map(|(sv, pv)| scale * ip * pv - (scale - 1.0) * sv).collect();
            Ok(AmplitudeState::Dense { n, amps })
        }
        _ => unreachable!(),
    }
}

/// One step of a bitwise trace: the accepted prefix and its inner product
/// with the target state.
#[derive(Debug, Clone, Serialize)]
pub struct BitwiseStep {
    pub k: u32,
    pub prefix: String,
    pub inner_product: f64,
}

/// Fixes the target's bits most significant first: at step `k` the halves of
/// the current prefix are tested against the target state, and the half with
/// nonzero overlap supplies the next bit. Takes exactly `n` steps.
pub fn qsearch_bitwise(n: u32, oracle: &SearchOracle) -> Result<(u64, Vec<BitwiseStep>)> {
    if n != oracle.n() {
        return Err(Error::DimensionMismatch { a: n, b: oracle.n() });
    }
    let target_state = AmplitudeState::basis(n, oracle.target())?;
    let mut bits: Vec<u8> = Vec::with_capacity(n as usize);
    let mut trace = Vec::with_capacity(n as usize);
    for k in 1..=n {
        bits.push(0);
        let zero_half = AmplitudeState::prefix(n, &bits)?;
        let ip_zero = inner_product(&target_state, &zero_half)?;
        let ip = if ip_zero != 0.0 {
            ip_zero
        } else {
            *bits.last_mut().unwrap() = 1;
            let one_half = AmplitudeState::prefix(n, &bits)?;
            inner_product(&target_state, &one_half)?
        };
        trace.push(BitwiseStep {
            k,
            prefix: bits.iter().map(|b| char::from(b'0' + b)).collect(),
            inner_product: ip,
        });
    }
    let found = prefix_range_start(n, &bits);
    Ok((found, trace))
}

/// One application of `T_{n-1} = M_{n-1} O` to the uniform state. All
/// non-target amplitudes cancel; the target keeps `2 (2^{n-1} - 1) / sqrt(2^n)`,
/// so the map is not norm-preserving for `n >= 2`.
pub fn qsearch_one_step(n: u32, oracle: &SearchOracle) -> Result<AmplitudeState> {
    let psi = AmplitudeState::uniform(n)?;
    let flipped = apply_oracle(&psi, oracle)?;
    apply_mk(&flipped, &psi, n - 1)
}

/// One application of the non-unitary `A = (sqrt(N)/2)(I - O)` to the
/// uniform state, which is exactly the target basis state.
pub fn qsearch_nonunitary(n: u32, oracle: &SearchOracle) -> Result<AmplitudeState> {
    let psi = AmplitudeState::uniform(n)?;
    let flipped = apply_oracle(&psi, oracle)?;
    let scale = 2f64.powi(n as i32).sqrt() / 2.0;
    match (psi.to_dense()?, flipped) {
        (AmplitudeState::Dense { n, amps: a }, AmplitudeState::Dense { amps: b, .. }) => {
            let amps = a.iter().zip(&b).map(|(x, y)| scale * (x - y)).collect();
            Ok(AmplitudeState::Dense { n, amps })
        }
        _ => unreachable!(),
    }
}

/// A bag of numbers in a fixed stored order.
#[derive(Debug, Clone, Serialize)]
pub struct BagState {
    items: Vec<u64>,
}

impl BagState {
    pub fn new(items: Vec<u64>) -> Self {
        BagState { items }
    }

    pub fn items(&self) -> &[u64] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// `<t|psi>` for the bag's indicator superposition, evaluated over the
    /// sparse index set so the basis dimension never materializes.
    pub fn indicator_overlap(&self, target: u64) -> u64 {
        self.items.iter().filter(|&&x| x == target).count() as u64
    }

    /// Splits off the first half, rounding up, in stored order.
    pub fn halves(&self) -> (BagState, BagState) {
        let half = self.items.len().div_ceil(2);
        (BagState::new(self.items[..half].to_vec()), BagState::new(self.items[half..].to_vec()))
    }
}

/// One halving step of the classical search: the tested half and whether the
/// indicator inner product hit the target.
#[derive(Debug, Clone, Serialize)]
pub struct BagSplit {
    pub tested: Vec<u64>,
    pub inner_product: u64,
}

/// Binary search on an unsorted bag. Each round tests the first half (in the
/// bag's stored order) by membership — the inner product of the target's
/// indicator vector with the half's indicator sum — and keeps the half
/// containing the target. A bag of `2^k` numbers takes exactly `k` splits.
pub fn classical_bag_search(items: &[u64], target: u64) -> Result<(u64, Vec<BagSplit>)> {
    let mut bag = BagState::new(items.to_vec());
    if bag.indicator_overlap(target) == 0 {
        return Err(Error::TargetAbsent { target });
    }
    let mut splits = Vec::new();
    while bag.len() > 1 {
        let (first, rest) = bag.halves();
        let ip = first.indicator_overlap(target);
        splits.push(BagSplit { tested: first.items().to_vec(), inner_product: ip });
        bag = if ip > 0 { first } else { rest };
    }
    Ok((bag.items()[0], splits))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indicator_inner_products() {
        // four indices in a 16-dimensional space, target absent then present
        let psi = AmplitudeState::indicator(4, &[2, 11, 7, 5]).unwrap();
        let t3 = AmplitudeState::basis(4, 3).unwrap();
        assert_eq!(inner_product(&t3, &psi).unwrap(), 0.0);
        let t7 = AmplitudeState::basis(4, 7).unwrap();
        assert_eq!(inner_product(&t7, &psi).unwrap(), 1.0);
    }

    #[test]
    fn basis_states_are_normalized() {
        for n in [1u32, 3, 6] {
            let t = AmplitudeState::basis(n, (1 << n) - 1).unwrap();
            assert_eq!(inner_product(&t, &t).unwrap(), 1.0);
        }
    }

    #[test]
    fn uniform_overlap_with_basis() {
        for n in 1..=12u32 {
            let psi = AmplitudeState::uniform(n).unwrap();
            let t = AmplitudeState::basis(n, 1).unwrap();
            let ip = inner_product(&t, &psi).unwrap();
            assert!((ip - 2f64.powi(-(n as i32)).sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn uniform_state_values() {
        let psi = AmplitudeState::uniform(2).unwrap();
        for ix in 0..4 {
            assert!((psi.amplitude(ix) - 0.5).abs() < 1e-15);
        }
        for n in 1..=20u32 {
            assert!((AmplitudeState::uniform(n).unwrap().norm() - 1.0).abs() < 1e-12);
        }
        let psi4 = AmplitudeState::uniform(4).unwrap();
        let t = AmplitudeState::basis(4, 0b1011).unwrap();
        assert!((inner_product(&t, &psi4).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn prefix_state_ranges() {
        let top = AmplitudeState::prefix(4, &[1]).unwrap();
        for ix in 0..16 {
            let a = top.amplitude(ix);
            if ix >= 8 {
                assert!((a - 2f64.powf(-1.5)).abs() < 1e-15);
            } else {
                assert_eq!(a, 0.0);
            }
        }
        // empty prefix is the uniform state; full prefix is a basis state
        let empty = AmplitudeState::prefix(3, &[]).unwrap();
        assert_eq!(empty.amplitude(5), AmplitudeState::uniform(3).unwrap().amplitude(5));
        let full = AmplitudeState::prefix(3, &[1, 0, 1]).unwrap();
        assert_eq!(full.amplitude(0b101), 1.0);
        assert_eq!(full.norm(), 1.0);
    }

    #[test]
    fn prefix_amplitudes_follow_the_halving_schedule() {
        let n = 10u32;
        for k in 0..=n {
            let bits: Vec<u8> = (0..k).map(|i| (i % 2) as u8).collect();
            let st = AmplitudeState::prefix(n, &bits).unwrap();
            let expect = (2f64.powi(k as i32) / 2f64.powi(n as i32)).sqrt();
            let lo = prefix_range_start(n, &bits);
            assert!((st.amplitude(lo) - expect).abs() < 1e-12, "k = {k}");
        }
    }

    #[test]
    fn bad_prefix_is_rejected() {
        assert!(matches!(AmplitudeState::prefix(3, &[0; 4]), Err(Error::BadPrefix)));
        assert!(matches!(AmplitudeState::prefix(3, &[2]), Err(Error::BadPrefix)));
    }

    #[test]
    fn oracle_flips_only_the_target() {
        let oracle = SearchOracle::new(3, 3).unwrap();
        let psi = AmplitudeState::uniform(3).unwrap();
        let flipped = apply_oracle(&psi, &oracle).unwrap();
        let amp = 1.0 / 8f64.sqrt();
        for ix in 0..8 {
            let expect = if ix == 3 { -amp } else { amp };
            assert!((flipped.amplitude(ix) - expect).abs() < 1e-15);
        }
        // involution and norm preservation
        let back = apply_oracle(&flipped, &oracle).unwrap();
        for ix in 0..8 {
            assert!((back.amplitude(ix) - psi.amplitude(ix)).abs() < 1e-15);
        }
        assert!((flipped.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn oracle_ignores_zero_target_amplitude() {
        let oracle = SearchOracle::new(3, 0).unwrap();
        let st = AmplitudeState::prefix(3, &[1]).unwrap();
        let flipped = apply_oracle(&st, &oracle).unwrap();
        for ix in 0..8 {
            assert_eq!(flipped.amplitude(ix), st.amplitude(ix));
        }
    }

    #[test]
    fn mk_fixes_its_defining_state() {
        for k in 1..=8u32 {
            let psi = AmplitudeState::uniform(4).unwrap();
            let once = apply_mk(&psi, &psi, k).unwrap();
            let twice = apply_mk(&once, &psi, k).unwrap();
            for ix in 0..16 {
                assert!((twice.amplitude(ix) - psi.amplitude(ix)).abs() < 1e-9, "k = {k}");
            }
        }
    }

    #[test]
    fn m1_preserves_norm_but_m2_does_not() {
        let psi = AmplitudeState::uniform(3).unwrap();
        let probe = AmplitudeState::basis(3, 5).unwrap();
        let reflected = apply_mk(&probe, &psi, 1).unwrap();
        assert!((reflected.norm() - 1.0).abs() < 1e-12);

        // a state orthogonal to psi is scaled by -(2^k - 1)
        let mut amps = vec![0.0; 8];
        amps[0] = 1.0 / 2f64.sqrt();
        amps[1] = -1.0 / 2f64.sqrt();
        let orth = AmplitudeState::Dense { n: 3, amps };
        for k in 2..=6u32 {
            let out = apply_mk(&orth, &psi, k).unwrap();
            let factor = -(2f64.powi(k as i32) - 1.0);
            for ix in 0..8 {
                assert!((out.amplitude(ix) - factor * orth.amplitude(ix)).abs() < 1e-9);
            }
            assert!((out.norm() - orth.norm()).abs() > 1e-9);
        }
    }

    #[test]
    fn bitwise_search_trace() {
        let oracle = SearchOracle::new(4, 11).unwrap();
        let (found, trace) = qsearch_bitwise(4, &oracle).unwrap();
        assert_eq!(found, 11);
        let prefixes: Vec<&str> = trace.iter().map(|s| s.prefix.as_str()).collect();
        assert_eq!(prefixes, vec!["1", "10", "101", "1011"]);
        assert!((trace[3].inner_product - 1.0).abs() < 1e-15);
        assert!((trace[0].inner_product - (2f64 / 16.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn bitwise_search_single_qubit() {
        let oracle = SearchOracle::new(1, 0).unwrap();
        let (found, trace) = qsearch_bitwise(1, &oracle).unwrap();
        assert_eq!(found, 0);
        assert_eq!(trace.len(), 1);
    }

    #[test]
    fn bitwise_search_is_exhaustively_correct() {
        for n in 1..=8u32 {
            for t in 0..(1u64 << n) {
                let oracle = SearchOracle::new(n, t).unwrap();
                let (found, trace) = qsearch_bitwise(n, &oracle).unwrap();
                assert_eq!(found, t);
                assert_eq!(trace.len(), n as usize);
            }
        }
    }

    #[test]
    fn one_step_amplifies_exactly_the_target() {
        let o3 = SearchOracle::new(3, 3).unwrap();
        let s3 = qsearch_one_step(3, &o3).unwrap();
        assert!((s3.amplitude(3) - 3.0 / 2f64.sqrt()).abs() < 1e-12);
        for ix in (0..8).filter(|&ix| ix != 3) {
            assert!(s3.amplitude(ix).abs() < 1e-9);
        }

        let o4 = SearchOracle::new(4, 11).unwrap();
        let s4 = qsearch_one_step(4, &o4).unwrap();
        assert!((s4.amplitude(11) - 3.5).abs() < 1e-12);
        for ix in (0..16).filter(|&ix| ix != 11) {
            assert!(s4.amplitude(ix).abs() < 1e-9);
        }
        // the map stretches the unit-norm input for n >= 2
        assert!(s4.norm() > 1.0);

        // degenerate single-qubit case: the coefficient vanishes
        let o1 = SearchOracle::new(1, 0).unwrap();
        let s1 = qsearch_one_step(1, &o1).unwrap();
        assert!(s1.norm() < 1e-12);
    }

    #[test]
    fn one_step_output_norm_formula() {
        // |T Psi| = 2 (2^{n-1} - 1) / sqrt(2^n): exactly 1 at n = 2 and
        // strictly greater after, so the map stretches the unit input
        for n in 2..=8u32 {
            let oracle = SearchOracle::new(n, 1).unwrap();
            let s = qsearch_one_step(n, &oracle).unwrap();
            let expect = 2.0 * (2f64.powi(n as i32 - 1) - 1.0) / 2f64.powi(n as i32).sqrt();
            assert!((s.norm() - expect).abs() < 1e-9, "n = {n}");
            if n >= 3 {
                assert!(s.norm() > 1.0);
            }
        }
    }

    #[test]
    fn nonunitary_step_lands_on_the_basis_target() {
        let o4 = SearchOracle::new(4, 11).unwrap();
        let s = qsearch_nonunitary(4, &o4).unwrap();
        for ix in 0..16 {
            let expect = if ix == 11 { 1.0 } else { 0.0 };
            assert!((s.amplitude(ix) - expect).abs() < 1e-9);
        }

        let o1 = SearchOracle::new(1, 0).unwrap();
        let s1 = qsearch_nonunitary(1, &o1).unwrap();
        assert!((s1.amplitude(0) - 1.0).abs() < 1e-12);
        assert!(s1.amplitude(1).abs() < 1e-12);
    }

    #[test]
    fn nonunitary_operator_changes_other_norms() {
        // A preserves the uniform state's norm but stretches a basis probe
        let oracle = SearchOracle::new(3, 2).unwrap();
        let probe = AmplitudeState::basis(3, 2).unwrap();
        let flipped = apply_oracle(&probe, &oracle).unwrap();
        let scale = 8f64.sqrt() / 2.0;
        let out: Vec<f64> =
            (0..8).map(|ix| scale * (probe.amplitude(ix) - flipped.amplitude(ix))).collect();
        let norm: f64 = out.iter().map(|a| a * a).sum::<f64>().sqrt();
        assert!((norm - 2.0 * scale).abs() < 1e-12);
    }

    #[test]
    fn bag_search_reproduces_the_worked_trace() {
        let (found, splits) = classical_bag_search(&[2, 11, 7, 5, 3, 6, 9, 4], 3).unwrap();
        assert_eq!(found, 3);
        assert_eq!(splits.len(), 3);
        assert_eq!(splits[0].tested, vec![2, 11, 7, 5]);
        assert_eq!(splits[0].inner_product, 0);
        assert_eq!(splits[1].tested, vec![3, 6]);
        assert_eq!(splits[1].inner_product, 1);
        assert_eq!(splits[2].tested, vec![3]);
        assert_eq!(splits[2].inner_product, 1);
    }

    #[test]
    fn bag_search_edge_cases() {
        let (found, splits) = classical_bag_search(&[42], 42).unwrap();
        assert_eq!(found, 42);
        assert!(splits.is_empty());

        assert!(matches!(
            classical_bag_search(&[1, 2, 3], 9),
            Err(Error::TargetAbsent { target: 9 })
        ));

        let big: Vec<u64> = (0..1024).collect();
        let (_, splits) = classical_bag_search(&big, 777).unwrap();
        assert_eq!(splits.len(), 10);
    }

    /// Every procedure locates every target, exhaustively up to ten qubits.
    /// The one-step amplifier is skipped at n = 1 where its coefficient
    /// degenerates to zero.
    #[test]
    fn all_searchers_agree_on_the_target() {
        for n in 1..=10u32 {
            let bag: Vec<u64> = (0..(1u64 << n)).collect();
            for t in 0..(1u64 << n) {
                let oracle = SearchOracle::new(n, t).unwrap();
                let (bitwise, _) = qsearch_bitwise(n, &oracle).unwrap();
                let nonunit = qsearch_nonunitary(n, &oracle).unwrap().argmax();
                let (classical, _) = classical_bag_search(&bag, t).unwrap();
                assert_eq!(bitwise, t);
                assert_eq!(nonunit, t);
                assert_eq!(classical, t);
                if n >= 2 {
                    assert_eq!(qsearch_one_step(n, &oracle).unwrap().argmax(), t);
                }
            }
        }
    }
}
