//! Generator identifiers and their total order.

use std::cmp::Ordering;
use std::fmt;

/// One abstract generator. The normal order sorts all translations before
/// all rotations/boosts, and the central symbols Y (a formal square root)
/// and Z last:
///
/// ```text
/// P_0 < P_1 < ... < L_01 < L_02 < ... (lexicographic in (i,j)) < Y < Z
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorId {
    /// Translation P_k.
    P(u8),
    /// Rotation/boost L_ij, stored with i < j.
    L(u8, u8),
    /// Central square-root symbol (e.g. of +-P^2).
    Y,
    /// Central symbol reserved for an inverse-square; carried but inert.
    Z,
}

impl GeneratorId {
    pub fn p(k: u8) -> Self {
        GeneratorId::P(k)
    }

    /// L with canonical index order enforced.
    pub fn l(i: u8, j: u8) -> Self {
        assert!(i < j, "L indices must satisfy i < j, got ({i},{j})");
        GeneratorId::L(i, j)
    }

    fn sort_key(&self) -> (u8, u8, u8) {
        match self {
            GeneratorId::P(k) => (0, *k, 0),
            GeneratorId::L(i, j) => (1, *i, *j),
            GeneratorId::Y => (2, 0, 0),
            GeneratorId::Z => (3, 0, 0),
        }
    }

    pub fn is_central_symbol(&self) -> bool {
        matches!(self, GeneratorId::Y | GeneratorId::Z)
    }
}

impl Ord for GeneratorId {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for GeneratorId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorId::P(k) => write!(f, "P{k}"),
            GeneratorId::L(i, j) => write!(f, "L{i}{j}"),
            GeneratorId::Y => write!(f, "Y"),
            GeneratorId::Z => write!(f, "Z"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_puts_translations_first() {
        let mut gens = vec![
            GeneratorId::Y,
            GeneratorId::l(0, 1),
            GeneratorId::p(3),
            GeneratorId::p(0),
            GeneratorId::l(1, 2),
            GeneratorId::Z,
            GeneratorId::l(0, 2),
        ];
        gens.sort();
        assert_eq!(
            gens,
            vec![
                GeneratorId::p(0),
                GeneratorId::p(3),
                GeneratorId::l(0, 1),
                GeneratorId::l(0, 2),
                GeneratorId::l(1, 2),
                GeneratorId::Y,
                GeneratorId::Z,
            ]
        );
    }

    #[test]
    #[should_panic(expected = "i < j")]
    fn l_rejects_bad_index_order() {
        GeneratorId::l(2, 1);
    }
}
