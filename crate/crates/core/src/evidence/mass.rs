use std::collections::BTreeMap;
use std::fmt;

use super::clause::Cube;
use super::{Clause, ClauseKind, EvidenceError, Frame};

/// Allowed deviation of a mass total from 1.
pub const SUM_TOLERANCE: f64 = 1e-9;

/// Combination fails once the conflict reaches `1 - CONFLICT_LIMIT`.
pub const CONFLICT_LIMIT: f64 = 1e-12;

/// A finding reported by [`validate`].
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    SumDeviation { sum: f64 },
    NonPositiveMass { focal: String, mass: f64 },
    ForeignAtom { atom: String },
    NotAConjunction { focal: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SumDeviation { sum } => write!(f, "masses sum to {sum}"),
            Violation::NonPositiveMass { focal, mass } => {
                write!(f, "focal `{focal}` has non-positive mass {mass}")
            }
            Violation::ForeignAtom { atom } => write!(f, "atom `{atom}` is not in the frame"),
            Violation::NotAConjunction { focal } => {
                write!(f, "focal `{focal}` is not a conjunction")
            }
        }
    }
}

/// Checks a proposed assignment of masses to focal clauses over `frame`.
///
/// Zero masses are tolerated (they are dropped on construction); negative
/// masses, clauses with atoms outside the frame, disjunctive focals and totals
/// further than [`SUM_TOLERANCE`] from 1 are reported.
pub fn validate(frame: &Frame, focals: &[(Clause, f64)]) -> Vec<Violation> {
    let mut findings = Vec::new();
    let mut sum = 0.0;
    for (clause, mass) in focals {
        if clause.frame() != frame {
            for lit in clause.literals() {
                if frame.index_of(&lit.atom).is_err() {
                    findings.push(Violation::ForeignAtom { atom: lit.atom });
                }
            }
        }
        if clause.cube().is_none() {
            findings.push(Violation::NotAConjunction {
                focal: clause.to_string(),
            });
        }
        if *mass < 0.0 || !mass.is_finite() {
            findings.push(Violation::NonPositiveMass {
                focal: clause.to_string(),
                mass: *mass,
            });
        }
        sum += mass;
    }
    if (sum - 1.0).abs() > SUM_TOLERANCE {
        findings.push(Violation::SumDeviation { sum });
    }
    findings
}

/// Basic probability assignment over literal cubes.
///
/// Focals are kept in canonical cube order with strictly positive masses.
#[derive(Clone, PartialEq)]
pub struct MassFunction {
    frame: Frame,
    focals: Vec<(Cube, f64)>,
}

impl MassFunction {
    /// Validated construction. Repeated focals accumulate.
    pub fn new<I>(frame: &Frame, focals: I) -> Result<Self, EvidenceError>
    where
        I: IntoIterator<Item = (Clause, f64)>,
    {
        let focals: Vec<(Clause, f64)> = focals.into_iter().collect();
        let findings = validate(frame, &focals);
        if !findings.is_empty() {
            return Err(EvidenceError::Invalid(findings));
        }
        Self::collect(frame, &focals)
    }

    /// Like [`MassFunction::new`] but rescales the masses to sum to 1.
    pub fn normalized<I>(frame: &Frame, focals: I) -> Result<Self, EvidenceError>
    where
        I: IntoIterator<Item = (Clause, f64)>,
    {
        let focals: Vec<(Clause, f64)> = focals.into_iter().collect();
        let total: f64 = focals.iter().map(|(_, m)| m).sum();
        if total.is_nan() || total <= 0.0 {
            return Err(EvidenceError::Normalization(total));
        }
        Self::new(frame, focals.into_iter().map(|(c, m)| (c, m / total)))
    }

    /// All mass on Θ.
    pub fn vacuous(frame: &Frame) -> Self {
        Self {
            frame: frame.clone(),
            focals: vec![(Cube::THETA, 1.0)],
        }
    }

    fn collect(frame: &Frame, focals: &[(Clause, f64)]) -> Result<Self, EvidenceError> {
        let mut acc: BTreeMap<Cube, f64> = BTreeMap::new();
        for (clause, mass) in focals {
            let clause = clause.rebase(frame)?;
            let cube = clause
                .cube()
                .ok_or_else(|| EvidenceError::NotAConjunction(clause.to_string()))?;
            *acc.entry(cube).or_insert(0.0) += mass;
        }
        Ok(Self::from_map(frame, acc))
    }

    pub(crate) fn from_map(frame: &Frame, acc: BTreeMap<Cube, f64>) -> Self {
        Self {
            frame: frame.clone(),
            focals: acc.into_iter().filter(|(_, m)| *m > 0.0).collect(),
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn len(&self) -> usize {
        self.focals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.focals.is_empty()
    }

    pub fn is_vacuous(&self) -> bool {
        self.focals.len() == 1 && self.focals[0].0.is_theta()
    }

    pub fn focals(&self) -> impl Iterator<Item = (Clause, f64)> + '_ {
        self.focals
            .iter()
            .map(|(cube, m)| (Clause::from_cube(&self.frame, *cube), *m))
    }

    pub(crate) fn cubes(&self) -> &[(Cube, f64)] {
        &self.focals
    }

    /// Mass assigned to exactly this focal element (0 when absent).
    pub fn mass(&self, clause: &Clause) -> f64 {
        let Some(cube) = clause.rebase(&self.frame).ok().and_then(|c| c.cube()) else {
            return 0.0;
        };
        self.focals
            .iter()
            .find(|(c, _)| *c == cube)
            .map_or(0.0, |(_, m)| *m)
    }

    pub fn total(&self) -> f64 {
        self.focals.iter().map(|(_, m)| m).sum()
    }

    /// Re-runs [`validate`] on the stored focals.
    pub fn check(&self) -> Result<(), Vec<Violation>> {
        let focals: Vec<(Clause, f64)> = self.focals().collect();
        let findings = validate(&self.frame, &focals);
        if findings.is_empty() {
            Ok(())
        } else {
            Err(findings)
        }
    }

    /// Parses the `frame` / `focal` text format.
    pub fn parse(text: &str) -> Result<Self, EvidenceError> {
        let mut frame = None;
        let mut focals = Vec::new();
        for (line, words) in directive_lines(text) {
            match words.as_slice() {
                ["frame", atoms @ ..] => {
                    if frame.is_some() {
                        return Err(parse_err(line, "duplicate `frame` line"));
                    }
                    frame = Some(Frame::new(atoms.iter().copied()).map_err(|e| at_line(line, e))?);
                }
                ["focal", clause, mass] => {
                    let frame = frame
                        .as_ref()
                        .ok_or_else(|| parse_err(line, "`focal` before `frame`"))?;
                    let clause = Clause::parse(frame, clause).map_err(|e| at_line(line, e))?;
                    focals.push((clause, parse_mass(line, mass)?));
                }
                _ => {
                    return Err(parse_err(
                        line,
                        "expected `frame ...` or `focal <clause> <mass>`",
                    ))
                }
            }
        }
        let frame = frame.ok_or_else(|| parse_err(0, "missing `frame` line"))?;
        Self::new(&frame, focals)
    }

    /// Text form accepted by [`MassFunction::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("frame {}\n", self.frame);
        for (clause, mass) in self.focals() {
            out.push_str(&format!("focal {clause} {mass}\n"));
        }
        out
    }
}

impl fmt::Debug for MassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut map = f.debug_map();
        for (clause, mass) in self.focals() {
            map.entry(&clause.to_string(), &mass);
        }
        map.finish()
    }
}

/// Blank-free, comment-stripped lines split on whitespace, with 1-based numbers.
pub(crate) fn directive_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let content = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = content.split_whitespace().collect();
        (!words.is_empty()).then_some((i + 1, words))
    })
}

pub(crate) fn parse_err(line: usize, message: impl Into<String>) -> EvidenceError {
    EvidenceError::Parse {
        line,
        message: message.into(),
    }
}

pub(crate) fn at_line(line: usize, err: EvidenceError) -> EvidenceError {
    match err {
        EvidenceError::Parse { message, .. } => EvidenceError::Parse { line, message },
        other => EvidenceError::Parse {
            line,
            message: other.to_string(),
        },
    }
}

pub(crate) fn parse_mass(line: usize, text: &str) -> Result<f64, EvidenceError> {
    let mass: f64 = text
        .parse()
        .map_err(|_| parse_err(line, format!("`{text}` is not a number")))?;
    if !(0.0..=1.0).contains(&mass) {
        return Err(parse_err(line, format!("mass {mass} is outside [0, 1]")));
    }
    Ok(mass)
}

/// Mass `s` on `focal`, the remainder on Θ.
pub fn simple_support(
    frame: &Frame,
    focal: &Clause,
    s: f64,
) -> Result<MassFunction, EvidenceError> {
    if !(0.0..=1.0).contains(&s) {
        return Err(EvidenceError::MassOutOfRange(s));
    }
    let focal = focal.rebase(frame)?;
    let cube = focal
        .cube()
        .ok_or_else(|| EvidenceError::NotAConjunction(focal.to_string()))?;
    let mut acc = BTreeMap::new();
    acc.insert(cube, s);
    *acc.entry(Cube::THETA).or_insert(0.0) += 1.0 - s;
    Ok(MassFunction::from_map(frame, acc))
}

/// World-set containment `a ⊆ b`.
pub fn clause_subset(a: &Clause, b: &Clause) -> Result<bool, EvidenceError> {
    a.frame().ensure_same(b.frame())?;
    Ok(match a.cube() {
        Some(cube) => cube_within(cube, b),
        // a positive disjunction is the union of its single-atom cubes
        None => {
            let (pos, _) = a.masks();
            (0..32).filter(|i| pos & (1 << i) != 0).all(|i| {
                cube_within(
                    Cube {
                        pos: 1 << i,
                        neg: 0,
                    },
                    b,
                )
            })
        }
    })
}

pub(crate) fn cube_within(a: Cube, b: &Clause) -> bool {
    let (pos, neg) = b.masks();
    match b.kind() {
        ClauseKind::Conjunction => a.within(Cube { pos, neg }),
        ClauseKind::Disjunction => a.within_any(pos),
    }
}

/// Intersection of two conjunctions; `None` is the empty set.
pub fn clause_intersect(a: &Clause, b: &Clause) -> Result<Option<Clause>, EvidenceError> {
    a.frame().ensure_same(b.frame())?;
    let ca = a
        .cube()
        .ok_or_else(|| EvidenceError::NotAConjunction(a.to_string()))?;
    let cb = b
        .cube()
        .ok_or_else(|| EvidenceError::NotAConjunction(b.to_string()))?;
    Ok(ca.intersect(cb).map(|c| Clause::from_cube(a.frame(), c)))
}

/// `Bel(a)`: total mass of the focals contained in `a`.
pub fn belief(m: &MassFunction, a: &Clause) -> Result<f64, EvidenceError> {
    m.frame().ensure_same(a.frame())?;
    if a.is_theta() {
        return Ok(1.0);
    }
    Ok(m.cubes()
        .iter()
        .filter(|(cube, _)| cube_within(*cube, a))
        .map(|(_, mass)| mass)
        .sum())
}

/// Dempster's orthogonal sum with its conflict `K`.
#[derive(Debug, Clone, PartialEq)]
pub struct CombineOutcome {
    pub result: MassFunction,
    pub conflict: f64,
}

pub fn combine(m1: &MassFunction, m2: &MassFunction) -> Result<CombineOutcome, EvidenceError> {
    m1.frame().ensure_same(m2.frame())?;
    let mut conflict = 0.0;
    let mut acc: BTreeMap<Cube, f64> = BTreeMap::new();
    for &(a, ma) in m1.cubes() {
        for &(b, mb) in m2.cubes() {
            match a.intersect(b) {
                Some(c) => *acc.entry(c).or_insert(0.0) += ma * mb,
                None => conflict += ma * mb,
            }
        }
    }
    if conflict >= 1.0 - CONFLICT_LIMIT {
        return Err(EvidenceError::TotalConflict(conflict));
    }
    let norm = 1.0 - conflict;
    for mass in acc.values_mut() {
        *mass /= norm;
    }
    Ok(CombineOutcome {
        result: MassFunction::from_map(m1.frame(), acc),
        conflict,
    })
}

/// Left fold of [`combine`]. The reported conflict is `1 - Π(1 - K_step)`.
pub fn combine_all(ms: &[MassFunction]) -> Result<CombineOutcome, EvidenceError> {
    let (first, rest) = ms.split_first().ok_or(EvidenceError::EmptyCombination)?;
    let mut result = first.clone();
    let mut kept = 1.0;
    for m in rest {
        let step = combine(&result, m)?;
        kept *= 1.0 - step.conflict;
        result = step.result;
    }
    Ok(CombineOutcome {
        result,
        conflict: 1.0 - kept,
    })
}
