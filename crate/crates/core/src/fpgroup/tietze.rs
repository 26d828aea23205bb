//! Greedy, budgeted Tietze simplification.
//!
//! Moves, tried in this order at every step:
//! 1. drop the first relator that has become trivial;
//! 2. among the shortest relators containing some generator exactly once,
//!    take the earliest; solve it for its lowest-index such generator,
//!    substitute the solution into every other relator, then delete the
//!    relator and the generator.
//!
//! Free and cyclic reduction happen on every rewrite, so they never appear
//! as separate moves. The procedure is deterministic in the input.

use alloc::string::String;
use alloc::vec::Vec;

use super::{abelianization, AbelianInvariants, Presentation, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TietzeMove {
    DropTrivialRelator { index: usize },
    Eliminate {
        generator: String,
        relator: usize,
        /// Length of the word substituted for the generator.
        replacement_len: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TietzeOutcome {
    pub presentation: Presentation,
    pub trace: Vec<TietzeMove>,
    /// True when the step budget ran out while a move was still applicable.
    pub exhausted: bool,
}

/// Working copy that deletes generators lazily, so eliminations do not
/// renumber every relator. Surviving generators keep their relative order.
struct Work {
    names: Vec<String>,
    alive: Vec<bool>,
    relators: Vec<Word>,
}

impl Work {
    fn new(p: &Presentation) -> Self {
        Work {
            names: p.generators().to_vec(),
            alive: alloc::vec![true; p.generator_count()],
            relators: p.relators().to_vec(),
        }
    }

    fn into_presentation(self) -> Presentation {
        let mut table = alloc::vec![0usize; self.names.len()];
        let mut generators = Vec::new();
        for (i, name) in self.names.into_iter().enumerate() {
            if self.alive[i] {
                table[i] = generators.len();
                generators.push(name);
            }
        }
        let relators = self.relators.iter().map(|r| r.reindex(&table)).collect();
        Presentation::from_parts(generators, relators)
    }

    fn step(&mut self) -> Option<TietzeMove> {
        if let Some(index) = self.relators.iter().position(Word::is_identity) {
            self.relators.remove(index);
            return Some(TietzeMove::DropTrivialRelator { index });
        }
        let (ri, g) = elimination_candidate(&self.relators, self.names.len())?;
        let relator = self.relators.remove(ri);
        let letters = relator.letters();
        let pos = letters.iter().position(|l| l.generator == g).expect("candidate occurs in relator");
        let before = Word::from_letters(letters[..pos].iter().copied());
        let after = Word::from_letters(letters[pos + 1..].iter().copied());
        // u g^e v = 1  =>  g^e = u^-1 v^-1
        let solved = before.inverse().mul(&after.inverse());
        let replacement = if letters[pos].inverse { solved.inverse() } else { solved };
        for r in &mut self.relators {
            if r.occurrences(g) > 0 {
                *r = r
                    .substitute(|h| if h == g { replacement.clone() } else { Word::generator(h) })
                    .cyclically_reduced();
            }
        }
        self.alive[g] = false;
        Some(TietzeMove::Eliminate {
            generator: self.names[g].clone(),
            relator: ri,
            replacement_len: replacement.len(),
        })
    }
}

/// Applies one move, or returns `None` when none applies.
pub fn tietze_step(p: &Presentation) -> Option<(Presentation, TietzeMove)> {
    let mut w = Work::new(p);
    let mv = w.step()?;
    Some((w.into_presentation(), mv))
}

fn elimination_candidate(relators: &[Word], generator_count: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    let mut counts = alloc::vec![0usize; generator_count];
    for (ri, r) in relators.iter().enumerate() {
        if best.is_some_and(|(len, _, _)| r.len() >= len) {
            continue;
        }
        for l in r.letters() {
            counts[l.generator] += 1;
        }
        let single = r
            .letters()
            .iter()
            .map(|l| l.generator)
            .filter(|&g| counts[g] == 1)
            .min();
        for l in r.letters() {
            counts[l.generator] = 0;
        }
        if let Some(g) = single {
            best = Some((r.len(), ri, g));
        }
    }
    best.map(|(_, ri, g)| (ri, g))
}

/// Runs [`tietze_step`] until no move applies or `budget` moves were made.
pub fn tietze_simplify(p: &Presentation, budget: usize) -> TietzeOutcome {
    let mut work = Work::new(p);
    let mut trace = Vec::new();
    let mut exhausted = false;
    loop {
        if trace.len() == budget {
            // Probe on a copy so the returned presentation is the one reached
            // after exactly `budget` moves.
            let mut probe = Work { names: work.names.clone(), alive: work.alive.clone(), relators: work.relators.clone() };
            exhausted = probe.step().is_some();
            break;
        }
        match work.step() {
            Some(mv) => trace.push(mv),
            None => break,
        }
    }
    TietzeOutcome { presentation: work.into_presentation(), trace, exhausted }
}

/// Why a presentation could not be certified trivial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// The abelianization is nontrivial, so the group is too.
    Abelian(AbelianInvariants),
    /// Simplification stalled with generators left and trivial abelianization.
    Residual { generators: usize, relators: usize, exhausted: bool },
}

/// A triviality verdict. There is no "nontrivial" variant: nontrivial
/// abelianization is reported as a witness instead.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Triviality {
    CertifiedTrivial { moves: usize },
    Unknown(Witness),
}

impl Triviality {
    pub fn is_certified(&self) -> bool {
        matches!(self, Triviality::CertifiedTrivial { .. })
    }
}

/// Tietze moves preserve the abelianization, so it is taken on the
/// simplified presentation.
pub fn is_presentation_trivial(p: &Presentation, budget: usize) -> Triviality {
    let out = tietze_simplify(p, budget);
    if out.presentation.generator_count() == 0 {
        return Triviality::CertifiedTrivial { moves: out.trace.len() };
    }
    let ab = abelianization(&out.presentation);
    if !ab.is_trivial() {
        return Triviality::Unknown(Witness::Abelian(ab));
    }
    Triviality::Unknown(Witness::Residual {
        generators: out.presentation.generator_count(),
        relators: out.presentation.relator_count(),
        exhausted: out.exhausted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Presentation {
        s.parse().unwrap()
    }

    #[test]
    fn eliminate_then_reduce_to_z2() {
        let out = tietze_simplify(&p("<a, b | b, a b a b>"), 100);
        assert_eq!(out.presentation, p("<a | a^2>"));
        assert!(!out.exhausted);
        assert_eq!(
            out.trace,
            [TietzeMove::Eliminate { generator: "b".into(), relator: 0, replacement_len: 0 }]
        );
    }

    #[test]
    fn single_generator_killed() {
        let out = tietze_simplify(&p("<a | a>"), 10);
        assert_eq!(out.presentation, Presentation::trivial());
    }

    #[test]
    fn commutator_is_stuck() {
        let g = p("<a, b | [a,b]>");
        let out = tietze_simplify(&g, 10);
        assert_eq!(out.presentation, g);
        assert!(out.trace.is_empty());
    }

    #[test]
    fn budget_exhaustion_flagged() {
        let out = tietze_simplify(&p("<a, b, c | a, b, c>"), 2);
        assert!(out.exhausted);
        assert_eq!(out.trace.len(), 2);
        assert_eq!(out.presentation.generator_count(), 1);
        let zero = tietze_simplify(&p("<a | a>"), 0);
        assert!(zero.exhausted);
        assert!(zero.trace.is_empty());
    }

    #[test]
    fn solving_for_inverse_letter() {
        // a^2 b^-1 c = 1 gives b = c a^2
        let out = tietze_simplify(&p("<a, b, c | a^2 b^-1 c, b^3>"), 1);
        assert_eq!(out.presentation, p("<a, c | c a^2 c a^2 c a^2>"));
    }

    #[test]
    fn triviality_verdicts() {
        assert!(is_presentation_trivial(&p("<a,b | a b, a>"), 100).is_certified());
        assert_eq!(
            is_presentation_trivial(&p("<a | a^2>"), 100),
            Triviality::Unknown(Witness::Abelian(AbelianInvariants {
                free_rank: 0,
                torsion: alloc::vec![2]
            }))
        );
        assert_eq!(
            is_presentation_trivial(&p("<a, b | [a,b]>"), 100),
            Triviality::Unknown(Witness::Abelian(AbelianInvariants::free(2)))
        );
    }

    #[test]
    fn perfect_residual_is_unknown() {
        // Binary icosahedral group: perfect, nontrivial, and no generator
        // appears once in a relator.
        let g = p("<s, t | s t s t s^-3, s^3 t^-5>");
        match is_presentation_trivial(&g, 100) {
            Triviality::Unknown(Witness::Residual { generators: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }
}
