//! Graded normal rulings, counted by a transfer-matrix sweep across the front.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::front::{Letter, MaslovAssignment, OrientedFront};
use crate::polyring::{LaurentPoly, Mono};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RulingError {
    #[error("grading {p} does not divide 2r = {twice_r} of component c{component}")]
    Divisibility { component: usize, twice_r: i64, p: u32 },
    #[error("slice {slice} has an odd number of strands")]
    OddStrandCount { slice: usize },
    #[error("potential does not fit the front")]
    PotentialMismatch,
}

/// A fixed-point-free involution on the strand positions of one slice
/// (0-based internally, shown 1-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RulingState {
    pairing: Vec<usize>,
}

impl RulingState {
    pub fn new(pairing: Vec<usize>) -> Option<Self> {
        let n = pairing.len();
        let ok = pairing.iter().enumerate().all(|(i, &j)| j < n && j != i && pairing[j] == i);
        ok.then_some(RulingState { pairing })
    }

    pub fn empty() -> Self {
        RulingState { pairing: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.pairing.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairing.is_empty()
    }

    pub fn partner(&self, i: usize) -> usize {
        self.pairing[i]
    }

    /// Pairs `(upper, lower)` in order of the upper strand.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.pairing.iter().enumerate().filter(|(i, &j)| *i < j).map(|(i, &j)| (i, j)).collect()
    }

    fn admissible(&self, pots: &[i64], p: u32) -> bool {
        self.pairs().iter().all(|&(u, l)| graded(pots[u], pots[l], p))
    }

    fn swapped(&self, m: usize) -> RulingState {
        let t = |i: usize| if i == m { m + 1 } else if i == m + 1 { m } else { i };
        let mut pairing = vec![0; self.pairing.len()];
        for (i, &j) in self.pairing.iter().enumerate() {
            pairing[t(i)] = t(j);
        }
        RulingState { pairing }
    }

    fn with_pair_inserted(&self, m: usize) -> RulingState {
        let shift = |i: usize| if i < m { i } else { i + 2 };
        let mut pairing = vec![0; self.pairing.len() + 2];
        for (i, &j) in self.pairing.iter().enumerate() {
            pairing[shift(i)] = shift(j);
        }
        pairing[m] = m + 1;
        pairing[m + 1] = m;
        RulingState { pairing }
    }

    fn with_pair_removed(&self, m: usize) -> RulingState {
        let shift = |i: usize| if i < m { i } else { i - 2 };
        let pairing = self
            .pairing
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != m && *i != m + 1)
            .map(|(_, &j)| shift(j))
            .collect();
        RulingState { pairing }
    }
}

impl fmt::Display for RulingState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.pairs().iter().map(|(u, l)| format!("{}-{}", u + 1, l + 1)).collect();
        write!(f, "{{{}}}", ps.join(","))
    }
}

/// `upper ≡ lower + 1 (mod p)`, with `p = 0` meaning equality.
pub fn graded(upper: i64, lower: i64, p: u32) -> bool {
    let d = upper - lower - 1;
    if p == 0 {
        d == 0
    } else {
        d.rem_euclid(p as i64) == 0
    }
}

/// All pairings of `pots.len()` strands whose pairs satisfy the grading.
pub fn admissible_states(n: usize, pots: &[i64], p: u32) -> Vec<RulingState> {
    assert_eq!(n, pots.len(), "one potential per strand");
    let mut out = Vec::new();
    if n % 2 == 1 {
        return out;
    }
    let mut pairing = vec![usize::MAX; n];
    fn go(pairing: &mut Vec<usize>, pots: &[i64], p: u32, out: &mut Vec<RulingState>) {
        let Some(i) = pairing.iter().position(|&x| x == usize::MAX) else {
            out.push(RulingState { pairing: pairing.clone() });
            return;
        };
        for j in i + 1..pairing.len() {
            if pairing[j] == usize::MAX && graded(pots[i], pots[j], p) {
                pairing[i] = j;
                pairing[j] = i;
                go(pairing, pots, p, out);
                pairing[i] = usize::MAX;
                pairing[j] = usize::MAX;
            }
        }
    }
    go(&mut pairing, pots, p, &mut out);
    out
}

/// Companion intervals at a switch must be disjoint or nested.
fn normal_at(state: &RulingState, m: usize) -> bool {
    let iv = |i: usize| {
        let j = state.partner(i);
        (i.min(j), i.max(j))
    };
    let (a0, a1) = iv(m);
    let (b0, b1) = iv(m + 1);
    let disjoint = a1 < b0 || b1 < a0;
    let nested = (a0 < b0 && b1 < a1) || (b0 < a0 && a1 < b1);
    disjoint || nested
}

/// Successors of `state` across `letter`, each with its switch count.
pub fn transfer(letter: Letter, state: &RulingState, after: &[i64], p: u32) -> Vec<(RulingState, u32)> {
    let m = letter.index() as usize - 1;
    match letter {
        Letter::Sigma(_) => {
            if state.partner(m) == m + 1 {
                return Vec::new();
            }
            let mut out = Vec::with_capacity(2);
            let pass = state.swapped(m);
            if pass.admissible(after, p) {
                out.push((pass, 0));
            }
            if normal_at(state, m) && state.admissible(after, p) {
                out.push((state.clone(), 1));
            }
            out
        }
        Letter::Left(_) => {
            let next = state.with_pair_inserted(m);
            if next.admissible(after, p) {
                vec![(next, 0)]
            } else {
                Vec::new()
            }
        }
        Letter::Right(_) => {
            if state.partner(m) == m + 1 {
                vec![(state.with_pair_removed(m), 0)]
            } else {
                Vec::new()
            }
        }
    }
}

fn check_inputs(f: &OrientedFront, p: u32, potential: &MaslovAssignment) -> Result<(), RulingError> {
    let counts = f.word().slice_counts();
    if potential.values.len() != counts.len() || potential.values.iter().zip(&counts).any(|(v, &c)| v.len() != c) {
        return Err(RulingError::PotentialMismatch);
    }
    for (component, r) in f.classical_invariants().component_rotation.iter().enumerate() {
        let twice_r = 2 * r;
        let ok = if p == 0 { twice_r == 0 } else { twice_r % p as i64 == 0 };
        if !ok {
            return Err(RulingError::Divisibility { component: component + 1, twice_r, p });
        }
    }
    if let Some(slice) = counts.iter().position(|c| c % 2 == 1) {
        return Err(RulingError::OddStrandCount { slice });
    }
    Ok(())
}

/// Histogram of switch counts over all closed sweeps, keyed by switches.
fn sweep(f: &OrientedFront, p: u32, potential: &MaslovAssignment) -> BTreeMap<u32, BigInt> {
    let w = f.word();
    let n = w.len();
    let mut hist = BTreeMap::new();
    let seam_states = admissible_states(w.base(), potential.slice(0), p);
    if n == 0 {
        if !seam_states.is_empty() {
            hist.insert(0, BigInt::from(seam_states.len()));
        }
        return hist;
    }
    // (initial, current) -> switches -> paths
    type Paths = HashMap<(usize, RulingState), BTreeMap<u32, BigInt>>;
    let mut cur: Paths = HashMap::new();
    for (k, s) in seam_states.iter().enumerate() {
        cur.entry((k, s.clone())).or_default().insert(0, BigInt::from(1));
    }
    for (i, letter) in w.letters().iter().enumerate() {
        let after = potential.slice((i + 1) % n);
        let mut next: Paths = HashMap::new();
        for ((k, s), h) in cur {
            for (t, sw) in transfer(*letter, &s, after, p) {
                let slot = next.entry((k, t)).or_default();
                for (j, c) in &h {
                    *slot.entry(j + sw).or_default() += c;
                }
            }
        }
        cur = next;
    }
    for ((k, s), h) in cur {
        if s == seam_states[k] {
            for (j, c) in h {
                *hist.entry(j).or_default() += c;
            }
        }
    }
    hist
}

/// `Σ_ρ z^(switches(ρ) − #right cusps)` over `p`-graded normal rulings.
pub fn ruling_polynomial(f: &OrientedFront, p: u32, potential: &MaslovAssignment) -> Result<LaurentPoly, RulingError> {
    check_inputs(f, p, potential)?;
    let c = f.word().right_cusp_count() as i32;
    let mut out = LaurentPoly::zero();
    for (j, mult) in sweep(f, p, potential) {
        out.add_term(Mono::new(0, j as i32 - c, 0), mult);
    }
    Ok(out)
}

/// Rulings enumerated one by one, grouped by switch count.
pub fn ruling_count_report(f: &OrientedFront, p: u32, potential: &MaslovAssignment) -> Result<Vec<(u32, u64)>, RulingError> {
    check_inputs(f, p, potential)?;
    let w = f.word();
    let n = w.len();
    let mut hist: BTreeMap<u32, u64> = BTreeMap::new();
    for start in admissible_states(w.base(), potential.slice(0), p) {
        if n == 0 {
            *hist.entry(0).or_default() += 1;
            continue;
        }
        // depth-first over letter choices
        let mut stack = vec![(0usize, start.clone(), 0u32)];
        while let Some((i, s, sw)) = stack.pop() {
            if i == n {
                if s == start {
                    *hist.entry(sw).or_default() += 1;
                }
                continue;
            }
            for (t, k) in transfer(w.letters()[i], &s, potential.slice((i + 1) % n), p) {
                stack.push((i + 1, t, sw + k));
            }
        }
    }
    Ok(hist.into_iter().collect())
}
