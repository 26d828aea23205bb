mod common;

use fibersum_core::blocks::{block, CatalogKind};
use fibersum_core::fpgroup::{
    abelianization, free_product, free_reduce, smith_normal_form, tietze_step, AbelianInvariants, IntMatrix, Letter,
    Presentation, Word,
};
use fibersum_core::sumcalc::{fiber_sum, resolve_intersections, BasisIdentification, GluingSpec, IntersectionConfig};
use proptest::prelude::*;

fn letter(gens: usize) -> impl Strategy<Value = Letter> {
    (0..gens, any::<bool>()).prop_map(|(generator, inverse)| Letter { generator, inverse })
}

fn word(gens: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(letter(gens), 0..=max_len).prop_map(Word::from_letters)
}

fn presentation(max_gens: usize, max_rels: usize) -> impl Strategy<Value = Presentation> {
    (1..=max_gens).prop_flat_map(move |g| {
        prop::collection::vec(word(g, 8), 0..=max_rels).prop_map(move |rels| {
            let names: Vec<String> = (0..g).map(|i| format!("g{i}")).collect();
            Presentation::new(names, rels).unwrap()
        })
    })
}

fn matrix(rows: usize, cols: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(prop::collection::vec(-bound..=bound, cols), rows)
        .prop_map(move |r| IntMatrix::from_rows(cols, r))
}

fn freely_reduced(letters: &[Letter]) -> bool {
    letters.windows(2).all(|w| w[0].generator != w[1].generator || w[0].inverse == w[1].inverse)
}

proptest! {
    #[test]
    fn free_reduce_matches_stack_oracle(raw in prop::collection::vec(letter(3), 0..=24)) {
        let w = free_reduce(&raw, 3).unwrap();
        prop_assert!(freely_reduced(w.letters()));
        let oracle = common::reduce_by_stack(&raw);
        prop_assert_eq!(w.letters(), oracle.as_slice());
        prop_assert_eq!(free_reduce(w.letters(), 3).unwrap(), w.clone());
        prop_assert!(w.mul(&w.inverse()).is_identity());
    }

    #[test]
    fn exponent_sums_are_multiplicative(u in word(3, 10), v in word(3, 10)) {
        let s: Vec<i64> = u.exponent_sums(3).iter().zip(v.exponent_sums(3)).map(|(a, b)| a + b).collect();
        prop_assert_eq!(u.mul(&v).exponent_sums(3), s);
    }

    #[test]
    fn abelianization_of_free_product_is_direct_sum(p in presentation(3, 3), q in presentation(3, 3)) {
        let (fp, _) = free_product(&p, &q);
        prop_assert_eq!(abelianization(&fp), abelianization(&p).direct_sum(&abelianization(&q)));
    }

    #[test]
    fn tietze_moves_preserve_abelianization(p in presentation(4, 4)) {
        let ab = abelianization(&p);
        let mut cur = p;
        for _ in 0..16 {
            match tietze_step(&cur) {
                Some((next, _)) => {
                    prop_assert_eq!(abelianization(&next), ab.clone());
                    cur = next;
                }
                None => break,
            }
        }
    }

    #[test]
    fn snf_matches_minor_oracle(m in matrix(4, 4, 6)) {
        let snf = smith_normal_form(&m);
        prop_assert_eq!(snf.clone(), common::invariant_factors_by_minors(&m));
        for w in snf.windows(2) {
            prop_assert!(w[1] == 0 || (w[0] != 0 && w[1] % w[0] == 0));
        }
    }

    #[test]
    fn presentation_text_round_trips(p in presentation(4, 4)) {
        let text = p.to_string();
        let q: Presentation = text.parse().unwrap();
        prop_assert_eq!(q, p);
    }

    #[test]
    fn abelian_invariants_are_normalized(p in presentation(4, 5)) {
        prop_assert!(abelianization(&p).is_valid());
    }

    #[test]
    fn elliptic_sums_add(m in 1u32..20, n in 1u32..20) {
        let s = fiber_sum(&block(&CatalogKind::Elliptic(m)).unwrap(), &block(&CatalogKind::Elliptic(n)).unwrap(), &GluingSpec::new("F", "F")).unwrap();
        prop_assert_eq!((s.chi, s.sigma), (12 * i64::from(m + n), -8 * i64::from(m + n)));
    }
}

#[test]
fn mirror_sum_agrees_for_every_signed_permutation() {
    let x = block(&CatalogKind::ProductTorus(1)).unwrap();
    let y = block(&CatalogKind::ProductTorus(2)).unwrap();
    let perms = BasisIdentification::all(2);
    assert_eq!(perms.len(), 8);
    for b in perms {
        let g = GluingSpec::new("F", "F").basis(b);
        let s = fiber_sum(&x, &y, &g).unwrap();
        let t = fiber_sum(&y, &x, &g.mirror()).unwrap();
        assert_eq!((s.chi, s.sigma), (t.chi, t.sigma));
        assert_eq!(abelianization(&s.pi1), abelianization(&t.pi1));
        // One fiber torus plus both base surfaces.
        assert_eq!(abelianization(&s.pi1), AbelianInvariants::free(2 + 2 + 4));
    }
}

#[test]
#[allow(clippy::needless_range_loop)]
fn resolve_matches_euler_characteristic_oracle() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    let mut checked = 0;
    while checked < 200 {
        let c = rng.gen_range(1..=6);
        let components: Vec<(u32, i64)> = (0..c).map(|_| (rng.gen_range(0..4), rng.gen_range(-6..=6))).collect();
        let mut pairings = vec![vec![0u32; c]; c];
        for i in 0..c {
            for j in i + 1..c {
                let v = if rng.gen_bool(0.5) { rng.gen_range(1..=3) } else { 0 };
                pairings[i][j] = v;
                pairings[j][i] = v;
            }
        }
        let cfg = IntersectionConfig::new(components.clone(), pairings.clone()).unwrap();
        match resolve_intersections(&cfg) {
            Ok((g, s)) => {
                let d: i64 = (0..c).flat_map(|i| (i + 1..c).map(move |j| (i, j))).map(|(i, j)| i64::from(pairings[i][j])).sum();
                assert_eq!(2 - 2 * i64::from(g), common::smoothed_euler_characteristic(&components, &pairings));
                assert_eq!(s, components.iter().map(|x| x.1).sum::<i64>() + 2 * d);
                checked += 1;
            }
            Err(_) => assert!(!cfg.is_connected()),
        }
    }
}
