use std::fmt;
use std::sync::Arc;

use super::EvidenceError;

/// Largest frame accepted. World masks in the oracle need `2^n` bits.
pub const MAX_ATOMS: usize = 16;

/// Frame of discernment: an ordered vocabulary of binary feature atoms.
///
/// Cloning is cheap; the atom list is shared.
#[derive(Clone)]
pub struct Frame {
    atoms: Arc<[String]>,
}

impl Frame {
    /// Builds a frame keeping the input order of atoms.
    pub fn new<I, S>(names: I) -> Result<Self, EvidenceError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let atoms: Vec<String> = names.into_iter().map(Into::into).collect();
        if atoms.is_empty() {
            return Err(EvidenceError::EmptyFrame);
        }
        if atoms.len() > MAX_ATOMS {
            return Err(EvidenceError::TooManyAtoms(atoms.len()));
        }
        for (i, name) in atoms.iter().enumerate() {
            if name.is_empty() {
                return Err(EvidenceError::EmptyName);
            }
            if atoms[..i].contains(name) {
                return Err(EvidenceError::DuplicateAtom(name.clone()));
            }
        }
        Ok(Self {
            atoms: atoms.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn atom(&self, index: usize) -> &str {
        &self.atoms[index]
    }

    pub fn index_of(&self, name: &str) -> Result<usize, EvidenceError> {
        self.atoms
            .iter()
            .position(|a| a == name)
            .ok_or_else(|| EvidenceError::UnknownAtom(name.to_string()))
    }

    /// Number of worlds, `2^n`.
    pub fn world_count(&self) -> usize {
        1usize << self.atoms.len()
    }

    pub(crate) fn ensure_same(&self, other: &Frame) -> Result<(), EvidenceError> {
        if self == other {
            Ok(())
        } else {
            Err(EvidenceError::FrameMismatch)
        }
    }
}

impl PartialEq for Frame {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.atoms, &other.atoms) || self.atoms == other.atoms
    }
}

impl Eq for Frame {}

impl fmt::Debug for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.atoms.iter()).finish()
    }
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.atoms.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keeps_input_order() {
        let frame = Frame::new(["long", "low", "next-to"]).unwrap();
        assert_eq!(frame.len(), 3);
        assert_eq!(frame.index_of("next-to").unwrap(), 2);
        assert_eq!(frame.world_count(), 8);
    }

    #[test]
    fn minimal_frame() {
        assert_eq!(Frame::new(["a"]).unwrap().len(), 1);
    }

    #[test]
    fn rejects_bad_names() {
        assert_eq!(
            Frame::new(["a", "a"]).unwrap_err(),
            EvidenceError::DuplicateAtom("a".into())
        );
        assert_eq!(Frame::new(["a", ""]).unwrap_err(), EvidenceError::EmptyName);
        let many: Vec<String> = (0..17).map(|i| format!("f{i}")).collect();
        assert_eq!(
            Frame::new(many).unwrap_err(),
            EvidenceError::TooManyAtoms(17)
        );
        assert_eq!(
            Frame::new(Vec::<String>::new()).unwrap_err(),
            EvidenceError::EmptyFrame
        );
    }

    #[test]
    fn equality_is_by_atoms() {
        let a = Frame::new(["x", "y"]).unwrap();
        let b = Frame::new(["x", "y"]).unwrap();
        let c = Frame::new(["y", "x"]).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
