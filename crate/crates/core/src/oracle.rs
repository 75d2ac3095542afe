//! Brute-force belief functions over explicit world sets.
//!
//! Every subset of Θ is a bitmask over the `2^n` worlds of the frame. Nothing
//! here shares code with the cube algebra in [`crate::evidence`]; the two
//! implementations are meant to be checked against each other.

use std::collections::BTreeMap;

use crate::evidence::{
    Clause, ClauseKind, EvidenceError, Frame, MassFunction, Polarity, CONFLICT_LIMIT, SUM_TOLERANCE,
};
use crate::knowledge::KnowledgeSource;

/// A subset of the frame's worlds. World `w` assigns atom `i` the value of bit `i` of `w`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct WorldSet {
    bits: Vec<u64>,
    worlds: usize,
}

impl WorldSet {
    pub fn empty(frame: &Frame) -> Self {
        let worlds = frame.world_count();
        Self {
            bits: vec![0; worlds.div_ceil(64)],
            worlds,
        }
    }

    pub fn full(frame: &Frame) -> Self {
        let mut set = Self::empty(frame);
        for w in 0..set.worlds {
            set.insert(w);
        }
        set
    }

    pub fn from_fn(frame: &Frame, mut member: impl FnMut(usize) -> bool) -> Self {
        let mut set = Self::empty(frame);
        for w in 0..set.worlds {
            if member(w) {
                set.insert(w);
            }
        }
        set
    }

    pub fn insert(&mut self, world: usize) {
        self.bits[world / 64] |= 1 << (world % 64);
    }

    pub fn contains(&self, world: usize) -> bool {
        self.bits[world / 64] & (1 << (world % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.worlds
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Self {
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| a & b)
                .collect(),
            worlds: self.worlds,
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }
}

/// Worlds satisfying a clause.
pub fn to_worlds(frame: &Frame, clause: &Clause) -> Result<WorldSet, EvidenceError> {
    let clause = clause.rebase(frame)?;
    let lits: Vec<(usize, bool)> = clause
        .literals()
        .iter()
        .map(|l| {
            frame
                .index_of(&l.atom)
                .map(|i| (i, l.polarity == Polarity::Positive))
        })
        .collect::<Result<_, _>>()?;
    let holds = |w: usize, (i, value): (usize, bool)| (w >> i & 1 == 1) == value;
    Ok(match clause.kind() {
        ClauseKind::Conjunction => {
            WorldSet::from_fn(frame, |w| lits.iter().all(|&lit| holds(w, lit)))
        }
        ClauseKind::Disjunction => {
            WorldSet::from_fn(frame, |w| lits.iter().any(|&lit| holds(w, lit)))
        }
    })
}

/// Mass over arbitrary subsets of Θ.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleMass {
    frame: Frame,
    focals: BTreeMap<WorldSet, f64>,
}

impl OracleMass {
    pub fn new<I>(frame: &Frame, focals: I) -> Result<Self, EvidenceError>
    where
        I: IntoIterator<Item = (WorldSet, f64)>,
    {
        let mut acc: BTreeMap<WorldSet, f64> = BTreeMap::new();
        for (set, mass) in focals {
            if set.is_empty() && mass != 0.0 {
                return Err(EvidenceError::Contradiction("∅".into()));
            }
            if mass != 0.0 {
                *acc.entry(set).or_insert(0.0) += mass;
            }
        }
        let total: f64 = acc.values().sum();
        if (total - 1.0).abs() > SUM_TOLERANCE {
            return Err(EvidenceError::Normalization(total));
        }
        Ok(Self {
            frame: frame.clone(),
            focals: acc,
        })
    }

    pub fn vacuous(frame: &Frame) -> Self {
        Self {
            frame: frame.clone(),
            focals: BTreeMap::from([(WorldSet::full(frame), 1.0)]),
        }
    }

    pub fn from_mass(m: &MassFunction) -> Result<Self, EvidenceError> {
        let frame = m.frame();
        let focals = m
            .focals()
            .map(|(c, mass)| to_worlds(frame, &c).map(|w| (w, mass)))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(frame, focals)
    }

    pub fn from_knowledge(ks: &KnowledgeSource) -> Result<Self, EvidenceError> {
        let frame = ks.frame();
        let mut focals = ks
            .focals()
            .iter()
            .map(|(c, mass)| to_worlds(frame, c).map(|w| (w, *mass)))
            .collect::<Result<Vec<_>, _>>()?;
        focals.push((WorldSet::full(frame), ks.theta_mass()));
        Self::new(frame, focals)
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn focals(&self) -> impl Iterator<Item = (&WorldSet, f64)> {
        self.focals.iter().map(|(s, m)| (s, *m))
    }

    pub fn mass(&self, set: &WorldSet) -> f64 {
        self.focals.get(set).copied().unwrap_or(0.0)
    }
}

/// Dempster's rule over raw subsets, returning the conflict alongside.
pub fn oracle_combine(
    m1: &OracleMass,
    m2: &OracleMass,
) -> Result<(OracleMass, f64), EvidenceError> {
    if m1.frame != m2.frame {
        return Err(EvidenceError::FrameMismatch);
    }
    let mut raw: BTreeMap<WorldSet, f64> = BTreeMap::new();
    let mut conflict = 0.0;
    for (a, ma) in m1.focals() {
        for (b, mb) in m2.focals() {
            let c = a.intersection(b);
            if c.is_empty() {
                conflict += ma * mb;
            } else {
                *raw.entry(c).or_insert(0.0) += ma * mb;
            }
        }
    }
    if conflict >= 1.0 - CONFLICT_LIMIT {
        return Err(EvidenceError::TotalConflict(conflict));
    }
    let focals = raw
        .into_iter()
        .map(|(set, mass)| (set, mass / (1.0 - conflict)))
        .collect();
    Ok((
        OracleMass {
            frame: m1.frame.clone(),
            focals,
        },
        conflict,
    ))
}

pub fn oracle_belief(m: &OracleMass, a: &WorldSet) -> f64 {
    m.focals()
        .filter(|(b, _)| b.is_subset(a))
        .map(|(_, mass)| mass)
        .sum()
}

/// `Σ m_e(A) m_s(B)` over `A ⊆ B`, `B ≠ Θ`.
pub fn oracle_verify(evidence: &OracleMass, knowledge: &OracleMass) -> f64 {
    let mut bel = 0.0;
    for (a, ma) in evidence.focals() {
        for (b, mb) in knowledge.focals() {
            if !b.is_full() && a.is_subset(b) {
                bel += ma * mb;
            }
        }
    }
    bel
}
