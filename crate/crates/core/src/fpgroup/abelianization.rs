use alloc::vec::Vec;
use core::fmt;

use super::snf::{smith_normal_form, IntMatrix};
use super::{Presentation, Word};

/// `Z^free_rank + Z/d_1 + ... + Z/d_k` with `d_1 | d_2 | ...` and every `d_i >= 2`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        AbelianInvariants::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianInvariants { free_rank: rank, torsion: Vec::new() }
    }

    /// Assembles from Smith diagonal entries of a relation matrix over
    /// `generator_count` generators.
    pub fn from_diagonal(generator_count: usize, diagonal: &[i64]) -> Self {
        let rank = diagonal.iter().filter(|&&d| d != 0).count();
        AbelianInvariants {
            free_rank: generator_count - rank,
            torsion: diagonal
                .iter()
                .filter(|&&d| d > 1)
                .map(|&d| d as u64)
                .collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_valid(&self) -> bool {
        self.torsion.iter().all(|&d| d >= 2) && self.torsion.windows(2).all(|w| w[1] % w[0] == 0)
    }

    /// Direct sum, renormalizing the merged torsion into a divisibility chain.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let all: Vec<u64> = self.torsion.iter().chain(&other.torsion).copied().collect();
        let mut m = IntMatrix::zeros(all.len(), all.len());
        for (i, &d) in all.iter().enumerate() {
            m.set(i, i, d as i64);
        }
        let diag = smith_normal_form(&m);
        AbelianInvariants {
            free_rank: self.free_rank + other.free_rank,
            torsion: diag.into_iter().filter(|&d| d > 1).map(|d| d as u64).collect(),
        }
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut first = true;
        if self.free_rank > 0 {
            f.write_str("Z")?;
            if self.free_rank > 1 {
                write!(f, "^{}", self.free_rank)?;
            }
            first = false;
        }
        for d in &self.torsion {
            if !first {
                f.write_str(" + ")?;
            }
            write!(f, "Z/{d}")?;
            first = false;
        }
        Ok(())
    }
}

/// The relators-by-generators exponent-sum matrix.
pub fn relation_matrix(p: &Presentation) -> IntMatrix {
    let n = p.generator_count();
    IntMatrix::from_rows(n, p.relators().iter().map(|r| r.exponent_sums(n)))
}

/// Abelianization via the Smith normal form of the relation matrix.
pub fn abelianization(p: &Presentation) -> AbelianInvariants {
    let m = relation_matrix(p);
    AbelianInvariants::from_diagonal(p.generator_count(), &smith_normal_form(&m))
}

/// Whether `w` lies in the commutator subgroup modulo the relators, i.e. its
/// exponent-sum vector is in the row lattice of the relation matrix.
pub fn is_abelian_trivial(p: &Presentation, w: &Word) -> bool {
    let v = w.exponent_sums(p.generator_count());
    if v.iter().all(|&x| x == 0) {
        return true;
    }
    let base = relation_matrix(p);
    let mut rows: Vec<Vec<i64>> = (0..base.rows()).map(|r| base.row(r).to_vec()).collect();
    let before = smith_normal_form(&base);
    rows.push(v);
    let after = smith_normal_form(&IntMatrix::from_rows(p.generator_count(), rows));
    // Appending a lattice member leaves every invariant factor unchanged.
    let nz = |d: &[i64]| d.iter().copied().filter(|&x| x != 0).collect::<Vec<_>>();
    nz(&before) == nz(&after)
}

#[cfg(test)]
mod tests {
    use alloc::string::ToString;
    use super::*;

    fn ab(s: &str) -> AbelianInvariants {
        abelianization(&s.parse::<Presentation>().unwrap())
    }

    #[test]
    fn elbow_two_has_rank_five() {
        let p = "< a, b, t1, s1, t2, s2 | [a,b], [a,t1], [a,s1], [a,t2], [a,s2], \
                 [b,t1] = a, [b,t2], [b,s1], [b,s2], [t1,s1][t2,s2] >";
        assert_eq!(ab(p), AbelianInvariants::free(5));
    }

    #[test]
    fn rank_one_from_dependent_relators() {
        assert_eq!(ab("<a,b | a^2 b^2, a^3 b^3>"), AbelianInvariants::free(1));
    }

    #[test]
    fn empty_presentation() {
        assert_eq!(ab("< | >"), AbelianInvariants::trivial());
    }

    #[test]
    fn torsion_chain() {
        let g = ab("<x, y | x^2, y^3>");
        assert_eq!(g, AbelianInvariants { free_rank: 0, torsion: alloc::vec![6] });
        assert!(g.is_valid());
    }

    #[test]
    fn direct_sum_normalizes() {
        let a = AbelianInvariants { free_rank: 1, torsion: alloc::vec![2] };
        let b = AbelianInvariants { free_rank: 0, torsion: alloc::vec![3] };
        assert_eq!(a.direct_sum(&b), AbelianInvariants { free_rank: 1, torsion: alloc::vec![6] });
    }

    #[test]
    fn lattice_membership() {
        let p: Presentation = "<a | a^4>".parse().unwrap();
        assert!(is_abelian_trivial(&p, &Word::power_of(0, 8)));
        assert!(!is_abelian_trivial(&p, &Word::power_of(0, 2)));
    }

    #[test]
    fn display() {
        assert_eq!(AbelianInvariants { free_rank: 2, torsion: alloc::vec![2, 4] }.to_string(), "Z^2 + Z/2 + Z/4");
        assert_eq!(AbelianInvariants::trivial().to_string(), "0");
    }
}
