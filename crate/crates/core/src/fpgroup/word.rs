//! Elements of a free group as freely reduced words.

use alloc::vec::Vec;
use core::fmt;

use super::GroupError;

/// A generator reference with an exponent of `+1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub const fn pos(generator: usize) -> Self {
        Letter { generator, inverse: false }
    }

    pub const fn neg(generator: usize) -> Self {
        Letter { generator, inverse: true }
    }

    #[must_use]
    pub const fn inv(self) -> Self {
        Letter { generator: self.generator, inverse: !self.inverse }
    }

    pub const fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }
}

/// A freely reduced word. The empty word is the identity.
///
/// Every constructor reduces, so two words are equal as group elements of the
/// free group exactly when they are equal as values.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

/// Freely reduces a raw letter sequence, checking every letter against a
/// generator count.
pub fn free_reduce(raw: &[Letter], generator_count: usize) -> Result<Word, GroupError> {
    if let Some(bad) = raw.iter().find(|l| l.generator >= generator_count) {
        return Err(GroupError::UnknownGenerator {
            index: bad.generator,
            generator_count,
        });
    }
    Ok(Word::from_letters(raw.iter().copied()))
}

impl Word {
    pub const fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(g: usize) -> Self {
        Word(alloc::vec![Letter::pos(g)])
    }

    /// Reduces with a stack; the result is the unique reduced representative.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            match out.last() {
                Some(&top) if top.cancels(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Word(out)
    }

    /// `g^k` for a signed exponent.
    pub fn power_of(g: usize, k: i64) -> Self {
        let l = if k < 0 { Letter::neg(g) } else { Letter::pos(g) };
        Word(alloc::vec![l; k.unsigned_abs() as usize])
    }

    /// The commutator `x y x^-1 y^-1`.
    pub fn commutator(x: &Word, y: &Word) -> Self {
        x.mul(y).mul(&x.inverse()).mul(&y.inverse())
    }

    /// Product of commutators `[a_1,b_1]...[a_g,b_g]` over consecutive
    /// generator pairs starting at `first`.
    pub fn surface_relator(first: usize, genus: usize) -> Self {
        let mut w = Word::identity();
        for i in 0..genus {
            let a = Word::generator(first + 2 * i);
            let b = Word::generator(first + 2 * i + 1);
            w = w.mul(&Word::commutator(&a, &b));
        }
        w
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    #[must_use]
    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    #[must_use]
    pub fn mul(&self, rhs: &Word) -> Self {
        Word::from_letters(self.0.iter().chain(rhs.0.iter()).copied())
    }

    #[must_use]
    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Strips inverse pairs from the two ends. The result is a conjugate.
    #[must_use]
    pub fn cyclically_reduced(&self) -> Self {
        let s = &self.0;
        let (mut i, mut j) = (0usize, s.len());
        while j >= i + 2 && s[i].cancels(s[j - 1]) {
            i += 1;
            j -= 1;
        }
        Word(s[i..j].to_vec())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.0.first(), self.0.last()) {
            (Some(a), Some(b)) if self.0.len() > 1 => !a.cancels(*b),
            _ => true,
        }
    }

    /// Number of letters (of either sign) on generator `g`.
    pub fn occurrences(&self, g: usize) -> usize {
        self.0.iter().filter(|l| l.generator == g).count()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.generator).max()
    }

    /// Exponent-sum vector over `generator_count` generators.
    pub fn exponent_sums(&self, generator_count: usize) -> Vec<i64> {
        let mut v = alloc::vec![0i64; generator_count];
        for l in &self.0 {
            v[l.generator] += l.exponent();
        }
        v
    }

    /// Replaces every letter through `f`, which maps a generator to its image
    /// word. The result is reduced.
    #[must_use]
    pub fn substitute<F: Fn(usize) -> Word>(&self, f: F) -> Self {
        let mut out = Vec::with_capacity(self.0.len());
        for l in &self.0 {
            let img = f(l.generator);
            if l.inverse {
                out.extend(img.0.iter().rev().map(|x| x.inv()));
            } else {
                out.extend(img.0.iter().copied());
            }
        }
        Word::from_letters(out)
    }

    /// Renumbers generators through an index table.
    #[must_use]
    pub fn reindex(&self, table: &[usize]) -> Self {
        Word::from_letters(self.0.iter().map(|l| Letter {
            generator: table[l.generator],
            inverse: l.inverse,
        }))
    }

    /// Renders with generator names, compressing runs into powers.
    pub fn display<'a, S: AsRef<str>>(&'a self, names: &'a [S]) -> WordDisplay<'a, S> {
        WordDisplay { word: self, names }
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word::from_letters(iter)
    }
}

pub struct WordDisplay<'a, S> {
    word: &'a Word,
    names: &'a [S],
}

impl<S: AsRef<str>> fmt::Display for WordDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = self.word.letters();
        if letters.is_empty() {
            return f.write_str("1");
        }
        let mut i = 0;
        let mut first = true;
        while i < letters.len() {
            let l = letters[i];
            let mut run = 1;
            while i + run < letters.len() && letters[i + run] == l {
                run += 1;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let name = self
                .names
                .get(l.generator)
                .map(|s| s.as_ref())
                .unwrap_or("?");
            f.write_str(name)?;
            let exp = run as i64 * l.exponent();
            if exp != 1 {
                write!(f, "^{exp}")?;
            }
            i += run;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const A: usize = 0;
    const B: usize = 1;
    const T1: usize = 2;

    #[test]
    fn cancellation_to_identity() {
        let w = free_reduce(&[Letter::pos(A), Letter::neg(A)], 1).unwrap();
        assert!(w.is_identity());
    }

    #[test]
    fn inner_cancellation() {
        let w = free_reduce(
            &[Letter::pos(A), Letter::pos(B), Letter::neg(B), Letter::pos(A)],
            2,
        )
        .unwrap();
        assert_eq!(w.letters(), &[Letter::pos(A), Letter::pos(A)]);
    }

    #[test]
    fn commutator_relator_is_already_reduced() {
        // b t1 b^-1 t1^-1 a^-1
        let raw = [
            Letter::pos(B),
            Letter::pos(T1),
            Letter::neg(B),
            Letter::neg(T1),
            Letter::neg(A),
        ];
        let brute_force_reduced = raw.windows(2).all(|p| !p[0].cancels(p[1]));
        assert!(brute_force_reduced);
        let w = free_reduce(&raw, 3).unwrap();
        assert_eq!(w.len(), 5);
        assert_eq!(w.letters(), &raw);
    }

    #[test]
    fn unknown_generator_rejected() {
        let err = free_reduce(&[Letter::pos(3)], 2).unwrap_err();
        assert!(matches!(err, GroupError::UnknownGenerator { index: 3, .. }));
    }

    #[test]
    fn cyclic_reduction() {
        let w = Word::from_letters([Letter::pos(A), Letter::pos(B), Letter::neg(A)]);
        assert_eq!(w.cyclically_reduced(), Word::generator(B));
        assert!(!w.is_cyclically_reduced());
    }

    #[test]
    fn substitution_respects_inverse_letters() {
        // a b^-1 with b := a a
        let w = Word::from_letters([Letter::pos(A), Letter::neg(B)]);
        let s = w.substitute(|g| if g == B { Word::power_of(A, 2) } else { Word::generator(g) });
        assert_eq!(s, Word::power_of(A, -1));
    }

    #[test]
    fn display_compresses_runs() {
        let names = ["a", "b"];
        let w = Word::from_letters([
            Letter::pos(A),
            Letter::pos(A),
            Letter::neg(B),
            Letter::pos(A),
        ]);
        assert_eq!(alloc::format!("{}", w.display(&names)), "a^2 b^-1 a");
        assert_eq!(alloc::format!("{}", Word::identity().display(&names)), "1");
    }
}
