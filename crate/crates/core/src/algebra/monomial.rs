//! PBW normal words.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use super::GeneratorId;

/// A normal-ordered monomial: ascending generator powers plus central symbol
/// exponents. The empty word with zero exponents is the unit monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    /// Ascending by generator, exponents >= 1; never contains Y or Z.
    word: SmallVec<[(GeneratorId, u32); 6]>,
    y_exp: u32,
    z_exp: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { word: SmallVec::new(), y_exp: 0, z_exp: 0 }
    }

    pub fn from_gen(g: GeneratorId) -> Self {
        let mut m = Monomial::one();
        match g {
            GeneratorId::Y => m.y_exp = 1,
            GeneratorId::Z => m.z_exp = 1,
            _ => m.word.push((g, 1)),
        }
        m
    }

    /// Build from ascending (generator, exponent) pairs; asserts canonical
    /// input since callers construct programmatically.
    pub fn from_powers(powers: &[(GeneratorId, u32)], y_exp: u32, z_exp: u32) -> Self {
        let mut word: SmallVec<[(GeneratorId, u32); 6]> = SmallVec::new();
        for &(g, e) in powers {
            assert!(!g.is_central_symbol(), "central symbols use the exponent fields");
            assert!(e >= 1, "exponents must be positive");
            if let Some(last) = word.last() {
                assert!(last.0 < g, "powers must be strictly ascending");
            }
            word.push((g, e));
        }
        Monomial { word, y_exp, z_exp }
    }

    pub fn is_unit(&self) -> bool {
        self.word.is_empty() && self.y_exp == 0 && self.z_exp == 0
    }

    pub fn degree(&self) -> u32 {
        self.word.iter().map(|(_, e)| e).sum::<u32>() + self.y_exp + self.z_exp
    }

    pub fn word(&self) -> &[(GeneratorId, u32)] {
        &self.word
    }

    pub fn y_exp(&self) -> u32 {
        self.y_exp
    }

    pub fn z_exp(&self) -> u32 {
        self.z_exp
    }

    pub fn with_y_exp(&self, y_exp: u32) -> Self {
        let mut m = self.clone();
        m.y_exp = y_exp;
        m
    }

    pub fn bump_central(&self, y: u32, z: u32) -> Self {
        let mut m = self.clone();
        m.y_exp += y;
        m.z_exp += z;
        m
    }

    /// Largest word generator, if any.
    pub fn last_gen(&self) -> Option<GeneratorId> {
        self.word.last().map(|&(g, _)| g)
    }

    /// Remove one instance of the largest word generator.
    /// Panics on the unit word.
    pub fn split_last(&self) -> (Monomial, GeneratorId) {
        let mut m = self.clone();
        let (g, e) = *m.word.last().expect("split_last on unit word");
        if e > 1 {
            m.word.last_mut().unwrap().1 = e - 1;
        } else {
            m.word.pop();
        }
        (m, g)
    }

    /// Append one instance of g, which must be >= the last word generator.
    pub fn append_gen(&self, g: GeneratorId) -> Monomial {
        debug_assert!(!g.is_central_symbol());
        let mut m = self.clone();
        match m.word.last_mut() {
            Some(last) if last.0 == g => last.1 += 1,
            Some(last) => {
                debug_assert!(last.0 < g, "append_gen would break ordering");
                m.word.push((g, 1));
            }
            None => m.word.push((g, 1)),
        }
        m
    }

    /// Word generators flattened with multiplicity, ascending.
    pub fn flat_word(&self) -> impl Iterator<Item = GeneratorId> + '_ {
        self.word
            .iter()
            .flat_map(|&(g, e)| std::iter::repeat(g).take(e as usize))
    }
}

impl Ord for Monomial {
    /// Graded order: total degree first, then central exponents, then the
    /// word lexicographically. Gives scalars first and, within a degree,
    /// generator words before their central-symbol multiples, which reads
    /// naturally in reports.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.y_exp.cmp(&other.y_exp))
            .then_with(|| self.z_exp.cmp(&other.z_exp))
            .then_with(|| self.word.cmp(&other.word))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut put = |s: String, f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{s}")
        };
        for (g, e) in &self.word {
            if *e == 1 {
                put(format!("{g}"), f)?;
            } else {
                put(format!("{g}^{e}"), f)?;
            }
        }
        for (sym, e) in [("Y", self.y_exp), ("Z", self.z_exp)] {
            if e == 1 {
                put(sym.to_string(), f)?;
            } else if e > 1 {
                put(format!("{sym}^{e}"), f)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_degree() {
        let m = Monomial::from_powers(
            &[(GeneratorId::p(0), 2), (GeneratorId::l(0, 1), 1)],
            1,
            0,
        );
        assert_eq!(m.to_string(), "P0^2*L01*Y");
        assert_eq!(m.degree(), 4);
        assert_eq!(Monomial::one().to_string(), "1");
    }

    #[test]
    fn graded_order() {
        let one = Monomial::one();
        let p0 = Monomial::from_gen(GeneratorId::p(0));
        let l01 = Monomial::from_gen(GeneratorId::l(0, 1));
        let p0p1 = Monomial::from_powers(&[(GeneratorId::p(0), 1), (GeneratorId::p(1), 1)], 0, 0);
        assert!(one < p0);
        assert!(p0 < l01);
        assert!(l01 < p0p1);
    }

    #[test]
    fn split_and_append_roundtrip() {
        let m = Monomial::from_powers(&[(GeneratorId::p(1), 1), (GeneratorId::l(0, 1), 2)], 0, 0);
        let (m0, g) = m.split_last();
        assert_eq!(g, GeneratorId::l(0, 1));
        assert_eq!(m0.append_gen(g), m);
    }
}
