use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{abelianization, GroupError, Word};

/// A finite presentation: named generators and cyclically reduced relators.
///
/// Generators are referenced by index inside [`Word`]s; names only matter
/// for display, parsing and cross-presentation renaming.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

/// Where the generators of the right factor went in a free product.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Renaming {
    /// `right_index[i]` is the result index of generator `i` of the right factor.
    pub right_index: Vec<usize>,
    /// `(old, new)` for every right generator whose name collided.
    pub renamed: Vec<(String, String)>,
}

impl Renaming {
    pub fn map_word(&self, w: &Word) -> Word {
        w.reindex(&self.right_index)
    }
}

impl Presentation {
    /// Validates generator names, checks relator ranges, and stores relators
    /// cyclically reduced with identities dropped.
    pub fn new<S: Into<String>>(
        generators: impl IntoIterator<Item = S>,
        relators: impl IntoIterator<Item = Word>,
    ) -> Result<Self, GroupError> {
        let generators: Vec<String> = generators.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for g in &generators {
            if g.is_empty() {
                return Err(GroupError::EmptyGeneratorName);
            }
            if !seen.insert(g.as_str()) {
                return Err(GroupError::DuplicateGenerator(g.clone()));
            }
        }
        let mut p = Presentation {
            generators,
            relators: Vec::new(),
        };
        p.push_relators(relators)?;
        Ok(p)
    }

    pub fn trivial() -> Self {
        Presentation::default()
    }

    pub fn free<S: Into<String>>(generators: impl IntoIterator<Item = S>) -> Result<Self, GroupError> {
        Presentation::new(generators, [])
    }

    /// `< a1, b1, ..., ag, bg | [a1,b1]...[ag,bg] >` with the given name prefixes.
    pub fn surface_group(a: &str, b: &str, genus: usize) -> Self {
        let mut gens = Vec::with_capacity(2 * genus);
        for i in 1..=genus {
            gens.push(format!("{a}{i}"));
            gens.push(format!("{b}{i}"));
        }
        Presentation::new(gens, [Word::surface_relator(0, genus)])
            .expect("prefixes yield distinct names")
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn relator_count(&self) -> usize {
        self.relators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn check_word(&self, w: &Word) -> Result<(), GroupError> {
        match w.max_generator() {
            Some(g) if g >= self.generators.len() => Err(GroupError::UnknownGenerator {
                index: g,
                generator_count: self.generators.len(),
            }),
            _ => Ok(()),
        }
    }

    fn push_relators(&mut self, relators: impl IntoIterator<Item = Word>) -> Result<(), GroupError> {
        for r in relators {
            self.check_word(&r)?;
            let r = r.cyclically_reduced();
            if !r.is_identity() {
                self.relators.push(r);
            }
        }
        Ok(())
    }

    /// Renders a word using this presentation's generator names.
    pub fn show(&self, w: &Word) -> String {
        format!("{}", w.display(&self.generators))
    }

    /// Index in `self` of each generator of `other`, matched by name.
    pub fn translation_table(&self, other: &Presentation) -> Result<Vec<usize>, GroupError> {
        let index: BTreeMap<&str, usize> = self.generators.iter().enumerate().map(|(i, g)| (g.as_str(), i)).collect();
        other
            .generators
            .iter()
            .map(|name| index.get(name.as_str()).copied().ok_or_else(|| GroupError::UnknownName(name.clone())))
            .collect()
    }

    /// Translates a word over `other`'s generators into this presentation by
    /// matching names.
    pub fn translate_from(&self, other: &Presentation, w: &Word) -> Result<Word, GroupError> {
        let table = self.translation_table(other)?;
        other.check_word(w)?;
        Ok(w.reindex(&table))
    }

    /// Assembles a presentation whose relators are already over
    /// `generators`, cyclically reduced and nonempty.
    pub(crate) fn from_parts(generators: Vec<String>, relators: Vec<Word>) -> Self {
        Presentation { generators, relators }
    }
}

fn fresh_name(taken: &BTreeSet<String>, base: &str) -> String {
    let mut candidate = String::from(base);
    loop {
        candidate.push('\'');
        if !taken.contains(&candidate) {
            return candidate;
        }
    }
}

/// Free product of two presentations. Left generators keep their indices
/// and names; colliding right names get primes appended.
pub fn free_product(p: &Presentation, q: &Presentation) -> (Presentation, Renaming) {
    let mut taken: BTreeSet<String> = p.generators.iter().cloned().collect();
    // Right-hand names must also stay clear of each other after renaming.
    for g in &q.generators {
        taken.insert(g.clone());
    }
    let mut generators = p.generators.clone();
    let mut renaming = Renaming::default();
    let left: BTreeSet<&str> = p.generators.iter().map(String::as_str).collect();
    for g in &q.generators {
        let name = if left.contains(g.as_str()) {
            let fresh = fresh_name(&taken, g);
            taken.insert(fresh.clone());
            renaming.renamed.push((g.clone(), fresh.clone()));
            fresh
        } else {
            g.clone()
        };
        renaming.right_index.push(generators.len());
        generators.push(name);
    }
    let mut relators = p.relators.clone();
    relators.extend(q.relators.iter().map(|r| renaming.map_word(r)));
    (Presentation { generators, relators }, renaming)
}

/// Adds the killer words as relators, presenting `p / N(killers)`.
pub fn quotient_by_normal_closure(p: &Presentation, killers: &[Word]) -> Result<Presentation, GroupError> {
    let mut out = p.clone();
    out.push_relators(killers.iter().cloned())?;
    Ok(out)
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        if !self.generators.is_empty() {
            write!(f, " {}", self.generators.join(", "))?;
        }
        f.write_str(" |")?;
        for (i, r) in self.relators.iter().enumerate() {
            f.write_str(if i == 0 { " " } else { ", " })?;
            write!(f, "{}", r.display(&self.generators))?;
        }
        f.write_str(" >")
    }
}

/// A homomorphism given by generator images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: Presentation,
    target: Presentation,
    images: Vec<Word>,
}

impl GroupHom {
    pub fn new(source: Presentation, target: Presentation, images: Vec<Word>) -> Result<Self, GroupError> {
        if images.len() != source.generator_count() {
            return Err(GroupError::ImageCount {
                expected: source.generator_count(),
                found: images.len(),
            });
        }
        for w in &images {
            target.check_word(w)?;
        }
        Ok(GroupHom { source, target, images })
    }

    pub fn source(&self) -> &Presentation {
        &self.source
    }

    pub fn target(&self) -> &Presentation {
        &self.target
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn apply(&self, w: &Word) -> Word {
        w.substitute(|g| self.images[g].clone())
    }

    /// Index of the first source relator whose image is nontrivial in the
    /// abelianization of the target, if any.
    pub fn abelian_inconsistency(&self) -> Option<usize> {
        self.source
            .relators()
            .iter()
            .position(|r| !abelianization::is_abelian_trivial(&self.target, &self.apply(r)))
    }
}
