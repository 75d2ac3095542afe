use std::cmp::Ordering;
use std::fmt;

use super::{EvidenceError, Frame};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarity {
    Positive,
    Negative,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Literal {
    pub atom: String,
    pub polarity: Polarity,
}

impl Literal {
    pub fn pos(atom: impl Into<String>) -> Self {
        Self {
            atom: atom.into(),
            polarity: Polarity::Positive,
        }
    }

    pub fn neg(atom: impl Into<String>) -> Self {
        Self {
            atom: atom.into(),
            polarity: Polarity::Negative,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClauseKind {
    Conjunction,
    Disjunction,
}

/// Literal cube as two bitmasks over atom indices. `pos & neg == 0` always.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) struct Cube {
    pub pos: u32,
    pub neg: u32,
}

impl Cube {
    pub const THETA: Cube = Cube { pos: 0, neg: 0 };

    pub fn is_theta(self) -> bool {
        self.pos == 0 && self.neg == 0
    }

    pub fn literal_count(self) -> u32 {
        self.pos.count_ones() + self.neg.count_ones()
    }

    /// `None` when the two cubes share no world.
    pub fn intersect(self, other: Cube) -> Option<Cube> {
        let pos = self.pos | other.pos;
        let neg = self.neg | other.neg;
        (pos & neg == 0).then_some(Cube { pos, neg })
    }

    /// World-set containment for cubes: every literal of `other` is in `self`.
    pub fn within(self, other: Cube) -> bool {
        other.pos & !self.pos == 0 && other.neg & !self.neg == 0
    }

    /// Containment in the disjunction of the positive atoms in `any`.
    pub fn within_any(self, any: u32) -> bool {
        self.pos & any != 0
    }
}

// Longer cubes first, Θ last; ties broken by the masks.
impl Ord for Cube {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .literal_count()
            .cmp(&self.literal_count())
            .then(self.pos.cmp(&other.pos))
            .then(self.neg.cmp(&other.neg))
    }
}

impl PartialOrd for Cube {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A focal element: a conjunction of literals (Θ when empty) or a
/// disjunction of positive atoms.
#[derive(Clone, PartialEq, Eq)]
pub struct Clause {
    frame: Frame,
    kind: ClauseKind,
    pos: u32,
    neg: u32,
}

impl Clause {
    pub fn theta(frame: &Frame) -> Self {
        Self::from_cube(frame, Cube::THETA)
    }

    pub fn atom(frame: &Frame, name: &str) -> Result<Self, EvidenceError> {
        Self::conjunction(frame, [Literal::pos(name)])
    }

    pub fn negated(frame: &Frame, name: &str) -> Result<Self, EvidenceError> {
        Self::conjunction(frame, [Literal::neg(name)])
    }

    /// Positive conjunction of the named atoms.
    pub fn all_of(frame: &Frame, names: &[&str]) -> Result<Self, EvidenceError> {
        Self::conjunction(frame, names.iter().map(|n| Literal::pos(*n)))
    }

    pub fn conjunction<I>(frame: &Frame, literals: I) -> Result<Self, EvidenceError>
    where
        I: IntoIterator<Item = Literal>,
    {
        let mut cube = Cube::THETA;
        for lit in literals {
            let bit = 1u32 << frame.index_of(&lit.atom)?;
            match lit.polarity {
                Polarity::Positive => cube.pos |= bit,
                Polarity::Negative => cube.neg |= bit,
            }
        }
        let clause = Self::from_cube(frame, cube);
        if cube.pos & cube.neg != 0 {
            return Err(EvidenceError::Contradiction(clause.to_string()));
        }
        Ok(clause)
    }

    /// Disjunction of positive atoms. A single atom yields the same world set
    /// as the one-literal conjunction but keeps the disjunctive kind.
    pub fn any_of(frame: &Frame, names: &[&str]) -> Result<Self, EvidenceError> {
        if names.is_empty() {
            return Err(EvidenceError::EmptyDisjunction);
        }
        let mut pos = 0;
        for name in names {
            pos |= 1u32 << frame.index_of(name)?;
        }
        Ok(Self {
            frame: frame.clone(),
            kind: ClauseKind::Disjunction,
            pos,
            neg: 0,
        })
    }

    /// Parses the text form: `THETA`, `a&!b`, or `a|b`.
    pub fn parse(frame: &Frame, text: &str) -> Result<Self, EvidenceError> {
        let text = text.trim();
        if text == "THETA" {
            return Ok(Self::theta(frame));
        }
        let has_and = text.contains('&');
        let has_or = text.contains('|');
        if has_and && has_or {
            return Err(EvidenceError::Parse {
                line: 0,
                message: format!("clause `{text}` mixes `&` and `|`"),
            });
        }
        if has_or {
            let mut names = Vec::new();
            for part in text.split('|') {
                let part = part.trim();
                if part.starts_with('!') {
                    return Err(EvidenceError::NegatedDisjunct);
                }
                if part.is_empty() {
                    return Err(EvidenceError::EmptyName);
                }
                names.push(part);
            }
            return Self::any_of(frame, &names);
        }
        let mut literals = Vec::new();
        for part in text.split('&') {
            let part = part.trim();
            let lit = match part.strip_prefix('!') {
                Some(atom) => Literal::neg(atom.trim()),
                None => Literal::pos(part),
            };
            if lit.atom.is_empty() {
                return Err(EvidenceError::EmptyName);
            }
            literals.push(lit);
        }
        Self::conjunction(frame, literals)
    }

    pub(crate) fn from_cube(frame: &Frame, cube: Cube) -> Self {
        Self {
            frame: frame.clone(),
            kind: ClauseKind::Conjunction,
            pos: cube.pos,
            neg: cube.neg,
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn kind(&self) -> ClauseKind {
        self.kind
    }

    pub fn is_conjunction(&self) -> bool {
        self.kind == ClauseKind::Conjunction
    }

    pub fn is_theta(&self) -> bool {
        self.is_conjunction() && self.pos == 0 && self.neg == 0
    }

    pub fn has_negative(&self) -> bool {
        self.neg != 0
    }

    /// Literals in atom-index order.
    pub fn literals(&self) -> Vec<Literal> {
        (0..self.frame.len())
            .filter_map(|i| {
                let bit = 1u32 << i;
                let atom = self.frame.atom(i);
                if self.pos & bit != 0 {
                    Some(Literal::pos(atom))
                } else if self.neg & bit != 0 {
                    Some(Literal::neg(atom))
                } else {
                    None
                }
            })
            .collect()
    }

    /// The cube form of a conjunction; single-atom disjunctions also qualify.
    pub(crate) fn cube(&self) -> Option<Cube> {
        match self.kind {
            ClauseKind::Conjunction => Some(Cube {
                pos: self.pos,
                neg: self.neg,
            }),
            ClauseKind::Disjunction if self.pos.count_ones() == 1 => Some(Cube {
                pos: self.pos,
                neg: 0,
            }),
            ClauseKind::Disjunction => None,
        }
    }

    pub(crate) fn masks(&self) -> (u32, u32) {
        (self.pos, self.neg)
    }

    /// Re-expresses the clause over `frame`, matching atoms by name.
    pub fn rebase(&self, frame: &Frame) -> Result<Self, EvidenceError> {
        if &self.frame == frame {
            return Ok(Self {
                frame: frame.clone(),
                ..self.clone()
            });
        }
        match self.kind {
            ClauseKind::Conjunction => Self::conjunction(frame, self.literals()),
            ClauseKind::Disjunction => {
                let lits = self.literals();
                let names: Vec<&str> = lits.iter().map(|l| l.atom.as_str()).collect();
                Self::any_of(frame, &names)
            }
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_theta() {
            return f.write_str("THETA");
        }
        let sep = match self.kind {
            ClauseKind::Conjunction => "&",
            ClauseKind::Disjunction => "|",
        };
        let parts: Vec<String> = self
            .literals()
            .into_iter()
            .map(|l| match l.polarity {
                Polarity::Positive => l.atom,
                Polarity::Negative => format!("!{}", l.atom),
            })
            .collect();
        f.write_str(&parts.join(sep))
    }
}

impl fmt::Debug for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Clause({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frame() -> Frame {
        Frame::new(["long", "low", "next-to"]).unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        let f = frame();
        for text in ["THETA", "long", "long&low", "!long&next-to", "long|next-to"] {
            assert_eq!(Clause::parse(&f, text).unwrap().to_string(), text);
        }
        // canonical order is atom order
        assert_eq!(
            Clause::parse(&f, "next-to&long").unwrap().to_string(),
            "long&next-to"
        );
    }

    #[test]
    fn duplicate_literals_collapse() {
        let f = frame();
        let c = Clause::parse(&f, "long&long").unwrap();
        assert_eq!(c, Clause::atom(&f, "long").unwrap());
    }

    #[test]
    fn rejects_contradiction_and_bad_disjunctions() {
        let f = frame();
        assert!(matches!(
            Clause::parse(&f, "long&!long"),
            Err(EvidenceError::Contradiction(_))
        ));
        assert_eq!(
            Clause::parse(&f, "long|!low").unwrap_err(),
            EvidenceError::NegatedDisjunct
        );
        assert_eq!(
            Clause::any_of(&f, &[]).unwrap_err(),
            EvidenceError::EmptyDisjunction
        );
        assert_eq!(
            Clause::parse(&f, "wide").unwrap_err(),
            EvidenceError::UnknownAtom("wide".into())
        );
        assert!(matches!(
            Clause::parse(&f, "long&low|next-to"),
            Err(EvidenceError::Parse { .. })
        ));
    }

    #[test]
    fn cube_algebra() {
        let a = Cube { pos: 0b01, neg: 0 };
        let b = Cube { pos: 0b10, neg: 0 };
        let not_a = Cube { pos: 0, neg: 0b01 };
        assert_eq!(a.intersect(b), Some(Cube { pos: 0b11, neg: 0 }));
        assert_eq!(a.intersect(not_a), None);
        assert_eq!(Cube::THETA.intersect(a), Some(a));
        assert!(Cube { pos: 0b11, neg: 0 }.within(a));
        assert!(!a.within(Cube { pos: 0b11, neg: 0 }));
        assert!(Cube::THETA.within(Cube::THETA));
        assert!(!Cube::THETA.within_any(0b11));
    }

    #[test]
    fn rebase_by_name() {
        let f = frame();
        let g = Frame::new(["next-to", "long"]).unwrap();
        let c = Clause::parse(&f, "long&!next-to").unwrap();
        let r = c.rebase(&g).unwrap();
        assert_eq!(r.to_string(), "!next-to&long");
        assert!(Clause::parse(&f, "low").unwrap().rebase(&g).is_err());
    }
}
