use super::PresetError;

/// Metric signature data for the algebras on indices `0..=p+q`.
///
/// Index `i` carries metric entry +1 for `i <= p` and -1 otherwise, so the
/// rotation algebra built on these indices is so(p+1, q). The translation
/// extension uses the same index range for its momenta.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature {
    p: u8,
    q: u8,
}

/// Everything is meant for desk-scale exact computation; the index count
/// `p + q + 1` is capped here.
pub const MAX_DIMENSION: u8 = 8;

impl Signature {
    pub fn new(p: u8, q: u8) -> Result<Self, PresetError> {
        if q == 0 {
            return Err(PresetError::InvalidSignature {
                p,
                q,
                reason: "at least one minus-metric index is required".into(),
            });
        }
        let n = p
            .checked_add(q)
            .and_then(|s| s.checked_add(1))
            .ok_or_else(|| PresetError::InvalidSignature {
                p,
                q,
                reason: "index count overflows".into(),
            })?;
        if n > MAX_DIMENSION {
            return Err(PresetError::InvalidSignature {
                p,
                q,
                reason: format!("index count {n} exceeds the cap {MAX_DIMENSION}"),
            });
        }
        Ok(Signature { p, q })
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    /// Number of indices, `p + q + 1`.
    pub fn n(&self) -> u8 {
        self.p + self.q + 1
    }

    /// Largest index, `p + q`.
    pub fn last(&self) -> u8 {
        self.p + self.q
    }

    /// Diagonal metric entry at index `i`.
    pub fn metric(&self, i: u8) -> i64 {
        assert!(i < self.n(), "index {i} out of range for {self:?}");
        if i <= self.p {
            1
        } else {
            -1
        }
    }

    /// The full diagonal as a vector, in index order.
    pub fn metric_diagonal(&self) -> Vec<i64> {
        (0..self.n()).map(|i| self.metric(i)).collect()
    }

    pub fn indices(&self) -> std::ops::Range<u8> {
        0..self.n()
    }
}

impl std::fmt::Display for Signature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn metric_layout() {
        let sig = Signature::new(1, 3).unwrap();
        assert_eq!(sig.n(), 5);
        assert_eq!(sig.metric_diagonal(), vec![1, 1, -1, -1, -1]);
        let sig = Signature::new(0, 3).unwrap();
        assert_eq!(sig.metric_diagonal(), vec![1, -1, -1, -1]);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(matches!(
            Signature::new(3, 0),
            Err(PresetError::InvalidSignature { .. })
        ));
        assert!(matches!(
            Signature::new(6, 2),
            Err(PresetError::InvalidSignature { .. })
        ));
        assert!(Signature::new(6, 1).is_ok());
    }

    #[test]
    fn index_bounds_are_enforced() {
        let sig = Signature::new(0, 1).unwrap();
        assert_eq!(sig.metric(0), 1);
        assert_eq!(sig.metric(1), -1);
        let caught = std::panic::catch_unwind(|| sig.metric(2));
        assert!(caught.is_err());
    }
}
