//! Knowledge sources and hypothesis verification.
//!
//! A knowledge source is the stored mass distribution describing which
//! features (or conjunctions / disjunctions of features) speak for an object.
//! Verification maps accumulated evidence onto a simple belief in the object:
//! every evidence focal contained in a non-Θ knowledge focal contributes the
//! product of the two masses.

use crate::evidence::mass::{at_line, directive_lines, parse_err, parse_mass};
use crate::evidence::{simple_support, Clause, EvidenceError, Frame, MassFunction, SUM_TOLERANCE};

#[derive(Debug, Clone, PartialEq)]
pub struct KnowledgeSource {
    name: String,
    frame: Frame,
    focals: Vec<(Clause, f64)>,
    theta_mass: f64,
}

impl KnowledgeSource {
    /// Builds a knowledge source; `Θ` entries in `focals` are folded into the
    /// residual mass.
    pub fn new<I>(name: impl Into<String>, frame: &Frame, focals: I) -> Result<Self, EvidenceError>
    where
        I: IntoIterator<Item = (Clause, f64)>,
    {
        let mut kept: Vec<(Clause, f64)> = Vec::new();
        let mut theta_mass = 0.0;
        let mut total = 0.0;
        for (clause, mass) in focals {
            let clause = clause.rebase(frame)?;
            if !(0.0..=1.0).contains(&mass) {
                return Err(EvidenceError::MassOutOfRange(mass));
            }
            if clause.has_negative() {
                return Err(EvidenceError::NegativeLiteralInKnowledge(
                    clause.to_string(),
                ));
            }
            total += mass;
            if clause.is_theta() {
                theta_mass += mass;
            } else if mass > 0.0 {
                match kept.iter_mut().find(|(c, _)| *c == clause) {
                    Some((_, m)) => *m += mass,
                    None => kept.push((clause, mass)),
                }
            }
        }
        if (total - 1.0).abs() > SUM_TOLERANCE {
            return Err(EvidenceError::Normalization(total));
        }
        Ok(Self {
            name: name.into(),
            frame: frame.clone(),
            focals: kept,
            theta_mass,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// Non-Θ focals in declaration order.
    pub fn focals(&self) -> &[(Clause, f64)] {
        &self.focals
    }

    pub fn theta_mass(&self) -> f64 {
        self.theta_mass
    }

    /// Parses the knowledge config format:
    ///
    /// ```text
    /// hypothesis shutter
    /// frame long low next-to
    /// focal long 0.25
    /// focal long&low 0.15
    /// focal THETA 0.2
    /// ```
    pub fn parse(text: &str) -> Result<Self, EvidenceError> {
        let mut name = None;
        let mut frame = None;
        let mut focals = Vec::new();
        for (line, words) in directive_lines(text) {
            match words.as_slice() {
                ["hypothesis", n] => {
                    if name.replace(n.to_string()).is_some() {
                        return Err(parse_err(line, "duplicate `hypothesis` line"));
                    }
                }
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
                    if clause.has_negative() {
                        return Err(EvidenceError::NegativeLiteralInKnowledge(
                            clause.to_string(),
                        ));
                    }
                    focals.push((clause, parse_mass(line, mass)?));
                }
                _ => {
                    return Err(parse_err(
                        line,
                        "expected `hypothesis <name>`, `frame ...` or `focal <clause> <mass>`",
                    ))
                }
            }
        }
        let name = name.ok_or_else(|| parse_err(0, "missing `hypothesis` line"))?;
        let frame = frame.ok_or_else(|| parse_err(0, "missing `frame` line"))?;
        Self::new(name, &frame, focals)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("hypothesis {}\nframe {}\n", self.name, self.frame);
        for (clause, mass) in &self.focals {
            out.push_str(&format!("focal {clause} {mass}\n"));
        }
        if self.theta_mass > 0.0 {
            out.push_str(&format!("focal THETA {}\n", self.theta_mass));
        }
        out
    }
}

/// Belief committed to a hypothesis by verification.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationResult {
    pub hypothesis: String,
    pub bel: f64,
    pub theta: f64,
}

pub fn verify(
    evidence: &MassFunction,
    ks: &KnowledgeSource,
) -> Result<VerificationResult, EvidenceError> {
    evidence.frame().ensure_same(ks.frame())?;
    let mut bel = 0.0;
    for &(a, ma) in evidence.cubes() {
        for (b, mb) in ks.focals() {
            if crate::evidence::mass::cube_within(a, b) {
                bel += ma * mb;
            }
        }
    }
    Ok(VerificationResult {
        hypothesis: ks.name().to_string(),
        bel,
        theta: 1.0 - bel,
    })
}

/// Re-injects a verified hypothesis as evidence for the next stage.
pub fn to_simple_support(
    v: &VerificationResult,
    target: &Clause,
    frame: &Frame,
) -> Result<MassFunction, EvidenceError> {
    let target = target.rebase(frame)?;
    let lits = target.literals();
    if !target.is_conjunction() || lits.len() != 1 || target.has_negative() {
        return Err(EvidenceError::NotSingleAtom(target.to_string()));
    }
    simple_support(frame, &target, v.bel)
}
