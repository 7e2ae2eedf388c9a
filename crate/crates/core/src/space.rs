//! The fixed phase space R^2n with named global coordinates.

use std::fmt;
use std::sync::Arc;

use crate::error::{CoreError, Result};

#[derive(Debug, PartialEq, Eq)]
struct SpaceInner {
    n: usize,
    names: Vec<String>,
}

/// Phase space R^2n with a fixed, ordered coordinate list
/// (q_1, ..., q_n, p_1, ..., p_n).
///
/// Cheap to clone (shared under an `Arc`); the coordinate order is fixed for
/// the lifetime of the value and equality compares the full name list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseSpace(Arc<SpaceInner>);

impl PhaseSpace {
    /// Creates a phase space with `n` degrees of freedom and the given 2n
    /// coordinate names (position names first, then momentum names).
    pub fn new(n: usize, names: Vec<String>) -> Result<Self> {
        if n == 0 {
            return Err(CoreError::DimensionError { expected: 1, got: 0 });
        }
        if names.len() != 2 * n {
            return Err(CoreError::DimensionError { expected: 2 * n, got: names.len() });
        }
        for (i, a) in names.iter().enumerate() {
            if a.is_empty() || names[i + 1..].contains(a) {
                return Err(CoreError::SpaceMismatch(format!(
                    "coordinate names must be distinct and nonempty; offending name {a:?}"
                )));
            }
        }
        Ok(PhaseSpace(Arc::new(SpaceInner { n, names })))
    }

    /// The standard space with coordinates q,p (n = 1) or q1..qn,p1..pn.
    pub fn standard(n: usize) -> Self {
        let names = if n == 1 {
            vec!["q".to_string(), "p".to_string()]
        } else {
            (1..=n)
                .map(|i| format!("q{i}"))
                .chain((1..=n).map(|i| format!("p{i}")))
                .collect()
        };
        PhaseSpace::new(n, names).expect("standard names are distinct")
    }

    /// Degrees of freedom n.
    pub fn n(&self) -> usize {
        self.0.n
    }

    /// Total coordinate count 2n.
    pub fn dim(&self) -> usize {
        2 * self.0.n
    }

    /// Coordinate name at `index` (0-based, positions before momenta).
    pub fn name(&self, index: usize) -> &str {
        &self.0.names[index]
    }

    /// All coordinate names in order.
    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    /// Index of the coordinate called `name`, if any.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|c| c == name)
    }

    /// Index of the i-th position coordinate q_i (0-based i < n).
    pub fn q(&self, i: usize) -> usize {
        debug_assert!(i < self.0.n);
        i
    }

    /// Index of the i-th momentum coordinate p_i (0-based i < n).
    pub fn p(&self, i: usize) -> usize {
        debug_assert!(i < self.0.n);
        self.0.n + i
    }

    /// Errors unless `self` and `other` are the same space.
    pub fn check_same(&self, other: &PhaseSpace) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(CoreError::SpaceMismatch(format!("{self} vs {other}")))
        }
    }
}

impl fmt::Display for PhaseSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R^{} ({})", 2 * self.0.n, self.0.names.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_space_layout() {
        let s = PhaseSpace::standard(2);
        assert_eq!(s.dim(), 4);
        assert_eq!(s.names(), &["q1", "q2", "p1", "p2"]);
        assert_eq!(s.q(0), 0);
        assert_eq!(s.p(0), 2);
        assert_eq!(s.index_of("p2"), Some(3));
    }

    #[test]
    fn rejects_duplicate_names() {
        assert!(PhaseSpace::new(1, vec!["q".into(), "q".into()]).is_err());
        assert!(PhaseSpace::new(2, vec!["q".into(), "p".into()]).is_err());
    }

    #[test]
    fn distinct_spaces_compare_unequal() {
        let a = PhaseSpace::standard(1);
        let b = PhaseSpace::new(1, vec!["x".into(), "y".into()]).unwrap();
        assert_ne!(a, b);
        assert!(a.check_same(&b).is_err());
        assert!(a.check_same(&a.clone()).is_ok());
    }
}
