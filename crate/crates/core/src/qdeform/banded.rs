//! Banded operators on a truncated mode basis.
//!
//! An operator maps `e_m` to `sum_s entry(s, m) * e_{m+s}` with finitely many
//! shifts `s`. Entries are stored only when both the source and the target
//! mode lie in the window. Each operator tracks a validity radius: the action
//! on `e_m` is exactly the untruncated action (restricted to in-window
//! targets) whenever `|m|` is at most that radius. Compositions shrink the
//! radius by the bandwidth of the inner factor, because outer entries are
//! consulted at shifted intermediate modes.

use std::collections::BTreeMap;

use super::{QScalar, QdeformError};

/// Symmetric window of Fourier modes `[-M, M]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModeBasis {
    half_width: i64,
}

impl ModeBasis {
    /// Smallest half-width with a usable interior after the round-trip
    /// compositions.
    pub const MIN_HALF_WIDTH: i64 = 4;

    pub fn new(half_width: i64) -> Result<Self, QdeformError> {
        if half_width < Self::MIN_HALF_WIDTH {
            return Err(QdeformError::WindowTooSmall {
                required: Self::MIN_HALF_WIDTH,
                got: half_width,
            });
        }
        Ok(ModeBasis { half_width })
    }

    pub fn half_width(&self) -> i64 {
        self.half_width
    }

    pub fn contains(&self, m: i64) -> bool {
        m.abs() <= self.half_width
    }

    pub fn modes(&self) -> impl Iterator<Item = i64> {
        -self.half_width..=self.half_width
    }
}

/// Iterator over the modes `[-r, r]`; empty when `r` is negative.
pub fn modes_within(r: i64) -> impl Iterator<Item = i64> {
    -r..=r
}

#[derive(Debug, Clone, PartialEq)]
pub struct BandedOperator<S> {
    basis: ModeBasis,
    valid_radius: i64,
    /// shift -> source mode -> entry; zero entries are never stored.
    bands: BTreeMap<i64, BTreeMap<i64, S>>,
}

impl<S: QScalar> BandedOperator<S> {
    pub fn zero(basis: ModeBasis) -> Self {
        BandedOperator {
            basis,
            valid_radius: basis.half_width(),
            bands: BTreeMap::new(),
        }
    }

    pub fn identity(basis: ModeBasis) -> Self {
        Self::diagonal(basis, |_| S::one())
    }

    /// Diagonal operator with entry `f(m)` at every window mode.
    pub fn diagonal(basis: ModeBasis, mut f: impl FnMut(i64) -> S) -> Self {
        let mut out = Self::zero(basis);
        for m in basis.modes() {
            out.set_entry(m, 0, f(m));
        }
        out
    }

    /// Single-shift operator `e_m -> f(m) e_{m+s}`, stored for in-window
    /// targets. The validity radius accounts for sources whose target falls
    /// off the window.
    pub fn shift(basis: ModeBasis, s: i64, mut f: impl FnMut(i64) -> S) -> Self {
        let mut out = Self::zero(basis);
        for m in basis.modes() {
            if basis.contains(m + s) {
                out.set_entry(m, s, f(m));
            }
        }
        out.valid_radius = basis.half_width() - s.abs();
        out
    }

    pub fn basis(&self) -> ModeBasis {
        self.basis
    }

    pub fn half_width(&self) -> i64 {
        self.basis.half_width()
    }

    /// Largest `r` such that the stored action on every `|m| <= r` equals the
    /// untruncated action restricted to in-window targets. Negative when
    /// nothing is assertable.
    pub fn valid_radius(&self) -> i64 {
        self.valid_radius
    }

    /// Shrinks the validity radius; used when a caller knows additional
    /// entries are unreliable.
    pub fn restrict_valid(&mut self, r: i64) {
        self.valid_radius = self.valid_radius.min(r);
    }

    /// Maximum absolute shift carrying any entry.
    pub fn bandwidth(&self) -> i64 {
        self.bands.keys().map(|s| s.abs()).max().unwrap_or(0)
    }

    pub fn entry(&self, source: i64, shift: i64) -> Option<&S> {
        self.bands.get(&shift).and_then(|b| b.get(&source))
    }

    /// All stored entries as `(source, shift, value)`.
    pub fn entries(&self) -> impl Iterator<Item = (i64, i64, &S)> {
        self.bands
            .iter()
            .flat_map(|(s, b)| b.iter().map(move |(m, v)| (*m, *s, v)))
    }

    /// Inserts or overwrites one entry. Zero values erase instead.
    pub fn set_entry(&mut self, source: i64, shift: i64, v: S) {
        debug_assert!(self.basis.contains(source), "source off the window");
        debug_assert!(self.basis.contains(source + shift), "target off the window");
        let band = self.bands.entry(shift).or_default();
        if v.is_zero() {
            band.remove(&source);
        } else {
            band.insert(source, v);
        }
        if self.bands.get(&shift).is_some_and(BTreeMap::is_empty) {
            self.bands.remove(&shift);
        }
    }

    fn accumulate(&mut self, source: i64, shift: i64, v: &S) {
        let cur = match self.entry(source, shift) {
            Some(e) => e.add_ref(v),
            None => v.clone(),
        };
        self.set_entry(source, shift, cur);
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.basis, rhs.basis, "window mismatch");
        let mut out = self.clone();
        out.valid_radius = self.valid_radius.min(rhs.valid_radius);
        for (m, s, v) in rhs.entries() {
            out.accumulate(m, s, v);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for band in out.bands.values_mut() {
            for v in band.values_mut() {
                *v = v.neg_ref();
            }
        }
        out
    }

    /// Multiplies every entry by a fixed scalar.
    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.basis);
        out.valid_radius = self.valid_radius;
        for (m, s, v) in self.entries() {
            out.set_entry(m, s, v.mul_ref(c));
        }
        out
    }

    /// Operator product `self . rhs`: apply `rhs` first. Bandwidths add; the
    /// validity radius shrinks by the inner bandwidth because outer entries
    /// are read at the shifted intermediate modes.
    pub fn compose(&self, rhs: &Self) -> Self {
        assert_eq!(self.basis, rhs.basis, "window mismatch");
        let mut out = Self::zero(self.basis);
        out.valid_radius = rhs
            .valid_radius
            .min(self.valid_radius - rhs.bandwidth());
        for (sb, band_b) in &rhs.bands {
            for (m, b) in band_b {
                let mid = m + sb;
                for (sa, band_a) in &self.bands {
                    if let Some(a) = band_a.get(&mid) {
                        if self.basis.contains(mid + sa) {
                            out.accumulate(*m, sa + sb, &a.mul_ref(b));
                        }
                    }
                }
            }
        }
        out
    }

    /// `[self, rhs] = self . rhs - rhs . self`.
    pub fn commutator(&self, rhs: &Self) -> Self {
        self.compose(rhs).sub(&rhs.compose(self))
    }

    /// Entrywise equality over the given source modes; absent entries count
    /// as zero.
    pub fn equal_on<I: IntoIterator<Item = i64>>(&self, rhs: &Self, sources: I) -> bool {
        self.mismatches(rhs, sources) == 0
    }

    /// Number of differing entries over the given source modes.
    pub fn mismatches<I: IntoIterator<Item = i64>>(&self, rhs: &Self, sources: I) -> usize {
        let mut bad = 0;
        for m in sources {
            let shifts: std::collections::BTreeSet<i64> = self
                .bands
                .keys()
                .chain(rhs.bands.keys())
                .copied()
                .collect();
            for s in shifts {
                if !self.basis.contains(m + s) {
                    continue;
                }
                let a = self.entry(m, s);
                let b = rhs.entry(m, s);
                let same = match (a, b) {
                    (Some(x), Some(y)) => x == y,
                    (Some(x), None) => x.is_zero(),
                    (None, Some(y)) => y.is_zero(),
                    (None, None) => true,
                };
                if !same {
                    bad += 1;
                }
            }
        }
        bad
    }

    /// True when the operator acts as multiplication by `c` on the given
    /// source modes.
    pub fn is_scalar_on<I: IntoIterator<Item = i64>>(&self, c: &S, sources: I) -> bool {
        let scalar = Self::diagonal(self.basis, |_| c.clone());
        self.equal_on(&scalar, sources)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::GaussianRational;

    fn basis() -> ModeBasis {
        ModeBasis::new(6).unwrap()
    }

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn window_floor_is_enforced() {
        assert!(matches!(
            ModeBasis::new(3),
            Err(QdeformError::WindowTooSmall { required: 4, got: 3 })
        ));
        assert_eq!(ModeBasis::new(4).unwrap().half_width(), 4);
    }

    #[test]
    fn constant_shifts_commute() {
        let b = basis();
        let up = BandedOperator::shift(b, 1, |_| g(3));
        let down = BandedOperator::shift(b, -1, |_| g(5));
        let comm = up.commutator(&down);
        assert!(comm.equal_on(&BandedOperator::zero(b), modes_within(comm.valid_radius())));
    }

    #[test]
    fn composition_adds_bandwidths_and_shrinks_validity() {
        let b = basis();
        let up = BandedOperator::shift(b, 1, |m| g(m + 10));
        let two = up.compose(&up);
        assert_eq!(two.bandwidth(), 2);
        assert_eq!(two.valid_radius(), b.half_width() - 2);
        // e_m -> (m+10)(m+11) e_{m+2}
        assert_eq!(two.entry(0, 2), Some(&g(110)));
        // no entry escapes the declared band
        assert!(two.entries().all(|(_, s, _)| s.abs() <= 2));
        // every stored target is in the window
        assert!(two.entries().all(|(m, s, _)| b.contains(m + s)));
    }

    #[test]
    fn diagonal_times_shift_evaluates_at_the_target() {
        let b = basis();
        let d = BandedOperator::diagonal(b, g);
        let up = BandedOperator::shift(b, 1, |_| g(1));
        let left = d.compose(&up);
        // d(up(e_m)) = d(e_{m+1}) = (m+1) e_{m+1}
        assert_eq!(left.entry(2, 1), Some(&g(3)));
        let right = up.compose(&d);
        // up(d(e_m)) = m e_{m+1}
        assert_eq!(right.entry(2, 1), Some(&g(2)));
    }

    #[test]
    fn cancelling_entries_are_pruned() {
        let b = basis();
        let up = BandedOperator::shift(b, 1, |_| g(7));
        let diff = up.sub(&up);
        assert_eq!(diff.bandwidth(), 0);
        assert_eq!(diff.entries().count(), 0);
        assert!(diff.equal_on(&BandedOperator::zero(b), b.modes()));
    }

    #[test]
    fn missing_entries_compare_as_zero() {
        let b = basis();
        let mut a = BandedOperator::zero(b);
        a.set_entry(0, 0, g(0));
        assert!(a.equal_on(&BandedOperator::zero(b), b.modes()));
        a.set_entry(1, 0, g(4));
        assert_eq!(a.mismatches(&BandedOperator::zero(b), b.modes()), 1);
    }

    #[test]
    fn scalar_test_sees_off_diagonal_entries() {
        let b = basis();
        let mut a = BandedOperator::identity(b);
        assert!(a.is_scalar_on(&g(1), b.modes()));
        a.set_entry(2, 1, g(9));
        assert!(!a.is_scalar_on(&g(1), b.modes()));
    }
}
