//! The `M(G, n)` pipeline as engine programs.
//!
//! ```text
//! A      = S11 #[F,F] S11                       carries T1, T2
//! Z(n)   = Elb(15n+1) #[D,F] X(n)               connects T, T into K; carries T'
//! J(n)   = resolve(n+3 fibers + section) in E(n+5)
//! W(n)   = (A #[T1,T'] Z(n)) #[K,J] E(n+5)      carries T2
//! M(G,n) = M(G) #[T0,T2] W(n)
//! ```
//!
//! The fundamental group of `M(G, n)` is also computed by the free-product
//! rule, `pi1(M(G))/N(T0) * pi1(V)/N(T')` with `V = Z(n) #[K,J] E(n+5)`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::blocks::{group_term, Block, Catalog, CatalogError, CatalogKind, LinkComplement, MarkedSurface, StandardCatalog};
use crate::fpgroup::{free_product, tietze_simplify, Presentation};
use crate::sumcalc::{
    fiber_sum, resolve_intersections, torus_quotient, GluingSpec, IntersectionConfig, Side, SumError,
};

/// Tietze budget used for the free-product-rule cleanup.
pub const CLEANUP_BUDGET: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    #[error("catalog: {0}")]
    Catalog(#[from] CatalogError),
    #[error("step {step}: {error}")]
    Step { step: String, error: SumError },
}

/// One recorded pipeline step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub name: String,
    pub chi: i64,
    pub sigma: i64,
    pub pi1_source: crate::blocks::Source,
    pub notes: Vec<String>,
}

impl Step {
    fn of(b: &Block) -> Self {
        Step {
            name: b.name.clone(),
            chi: b.chi,
            sigma: b.sigma,
            pi1_source: b.provenance.pi1,
            notes: b.notes.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionReport {
    pub block: Block,
    pub n: u32,
    /// `g + r + 1` of the input presentation.
    pub group_term: i64,
    pub formula_chi: i64,
    pub formula_sigma: i64,
    pub matches: bool,
    /// `n > 1`.
    pub in_valid_range: bool,
    pub steps: Vec<Step>,
    /// Free-product-rule group after Tietze cleanup of the `V` factor.
    pub rule_pi1: Presentation,
    /// Whether the `V` factor was certified trivial and dropped.
    pub rule_factor_trivial: bool,
}

/// Everything of `M(G, n)` that does not depend on `G`.
#[derive(Clone, Debug)]
pub struct PipelineBase {
    pub n: u32,
    pub w: Block,
    pub steps: Vec<Step>,
    /// `pi1(V)/N(T')` after Tietze simplification.
    pub rule_factor: Presentation,
    pub rule_factor_exhausted: bool,
}

pub fn formula_chi(n: i64, k: i64) -> i64 {
    75 * n * n + 256 * n + 130 + 12 * k
}

pub fn formula_sigma(n: i64, k: i64) -> i64 {
    25 * n * n - 68 * n - 78 - 8 * k
}

/// `(chi, sigma)` of `E(n+5)` back-solved from the closed forms of `W(n)`,
/// `A` and `Z(n)` through fiber-sum arithmetic: the torus sum contributes
/// nothing and the genus-`(n+3)` sum contributes `4(n+3) - 4`.
pub fn elliptic_from_totals(n: i64) -> (i64, i64) {
    let (w_chi, w_sigma) = (75 * n * n + 256 * n + 130, 25 * n * n - 68 * n - 78);
    let (a_chi, a_sigma) = (50, -30);
    let (z_chi, z_sigma) = (75 * n * n + 240 * n + 12, 25 * n * n - 60 * n - 8);
    (w_chi - a_chi - z_chi - (4 * n + 8), w_sigma - a_sigma - z_sigma)
}

fn step<T>(name: &str, r: Result<T, SumError>) -> Result<T, ConstructionError> {
    r.map_err(|error| ConstructionError::Step { step: name.to_string(), error })
}

/// The pipeline over a catalog.
#[derive(Clone, Debug, Default)]
pub struct Pipeline<C: Catalog = StandardCatalog> {
    pub catalog: C,
}

impl Pipeline<StandardCatalog> {
    pub fn standard() -> Self {
        Pipeline { catalog: StandardCatalog }
    }
}

impl<C: Catalog> Pipeline<C> {
    pub fn new(catalog: C) -> Self {
        Pipeline { catalog }
    }

    fn get(&self, k: CatalogKind) -> Result<Block, ConstructionError> {
        Ok(self.catalog.block(&k)?)
    }

    pub fn build_a(&self) -> Result<Block, ConstructionError> {
        let s = self.get(CatalogKind::S11)?;
        let g = GluingSpec::new("F", "F")
            .carry(Side::Left, "T", Some("T1"))
            .carry(Side::Right, "T", Some("T2"))
            .named("A");
        step("A", fiber_sum(&s, &s, &g))
    }

    pub fn build_z(&self, n: u32) -> Result<Block, ConstructionError> {
        let e = self.get(CatalogKind::Elbow(15 * n + 1))?;
        let x = self.get(CatalogKind::Stipsicz(n))?;
        let g = GluingSpec::new("D", "F")
            .connect("T", "T", "K")
            .carry(Side::Left, "T'", None)
            .named(&format!("Z({n})"));
        step("Z", fiber_sum(&e, &x, &g))
    }

    /// `E(n+5)` with the resolved surface `J` added.
    pub fn elliptic_with_j(&self, n: u32) -> Result<Block, ConstructionError> {
        let mut e = self.get(CatalogKind::Elliptic(n + 5))?;
        let j = build_j(n);
        e.complements.push(LinkComplement {
            removed: alloc::vec!["J".into()],
            group: Presentation::trivial(),
            images: [("J".to_string(), j.inclusion.clone().expect("null-homotopic"))].into(),
            meridians: [("J".to_string(), crate::fpgroup::Word::identity())].into(),
            model_dependent: false,
        });
        e.add_surface(j);
        e.notes.push(format!("J: {} fibers and a section resolved; complement simply connected", n + 3));
        Ok(e)
    }

    /// `V(n) = Z(n) #[K,J] E(n+5)`, carrying `T'`.
    pub fn build_v(&self, n: u32) -> Result<Block, ConstructionError> {
        let z = self.build_z(n)?;
        let e = self.elliptic_with_j(n)?;
        let g = GluingSpec::new("K", "J").carry(Side::Left, "T'", None).named(&format!("V({n})"));
        step("V", fiber_sum(&z, &e, &g))
    }

    pub fn build_w(&self, n: u32) -> Result<Block, ConstructionError> {
        Ok(self.w_with_steps(n)?.0)
    }

    fn w_with_steps(&self, n: u32) -> Result<(Block, Vec<Step>), ConstructionError> {
        let a = self.build_a()?;
        let z = self.build_z(n)?;
        let e = self.elliptic_with_j(n)?;
        let g1 = GluingSpec::new("T1", "T'")
            .carry(Side::Left, "T2", None)
            .carry(Side::Right, "K", None)
            .named(&format!("A#Z({n})"));
        let az = step("A#Z", fiber_sum(&a, &z, &g1))?;
        let g2 = GluingSpec::new("K", "J").carry(Side::Left, "T2", None).named(&format!("W({n})"));
        let w = step("W", fiber_sum(&az, &e, &g2))?;
        let steps = [&a, &z, &e, &az, &w].into_iter().map(Step::of).collect();
        Ok((w, steps))
    }

    pub fn base(&self, n: u32) -> Result<PipelineBase, ConstructionError> {
        let (w, mut steps) = self.w_with_steps(n)?;
        let v = self.build_v(n)?;
        steps.push(Step::of(&v));
        let right = step("rule", torus_quotient(&v, "T'"))?;
        let out = tietze_simplify(&right, CLEANUP_BUDGET);
        Ok(PipelineBase {
            n,
            w,
            steps,
            rule_factor: out.presentation,
            rule_factor_exhausted: out.exhausted,
        })
    }

    pub fn finish(&self, base: &PipelineBase, p: &Presentation) -> Result<ConstructionReport, ConstructionError> {
        let mg = self.get(CatalogKind::PrescribedGroup(p.clone()))?;
        let g = GluingSpec::new("T0", "T2").named(&format!("M(G,{})", base.n));
        let m = step("M(G,n)", fiber_sum(&mg, &base.w, &g))?;
        let left = step("rule", torus_quotient(&mg, "T0"))?;
        let rule_factor_trivial = base.rule_factor.generator_count() == 0;
        let rule_pi1 = if rule_factor_trivial {
            left
        } else {
            free_product(&left, &base.rule_factor).0
        };
        let k = group_term(p);
        let n = i64::from(base.n);
        let (fc, fs) = (formula_chi(n, k), formula_sigma(n, k));
        let mut steps = base.steps.clone();
        steps.push(Step::of(&m));
        Ok(ConstructionReport {
            matches: m.chi == fc && m.sigma == fs,
            block: m,
            n: base.n,
            group_term: k,
            formula_chi: fc,
            formula_sigma: fs,
            in_valid_range: base.n > 1,
            steps,
            rule_pi1,
            rule_factor_trivial,
        })
    }

    pub fn build_mgn(&self, p: &Presentation, n: u32) -> Result<ConstructionReport, ConstructionError> {
        self.finish(&self.base(n)?, p)
    }
}

/// The surface `J` in `E(n+5)`: `n+3` fibers and a section, resolved.
pub fn build_j(n: u32) -> MarkedSurface {
    let cfg = IntersectionConfig::fibers_and_section(n as usize + 3, 1, -(i64::from(n) + 5));
    let (genus, square) = resolve_intersections(&cfg).expect("fibers meet the section");
    MarkedSurface::new("J", genus, square).null_homotopic()
}

pub fn build_a() -> Result<Block, ConstructionError> {
    Pipeline::standard().build_a()
}

pub fn build_z(n: u32) -> Result<Block, ConstructionError> {
    Pipeline::standard().build_z(n)
}

pub fn build_w(n: u32) -> Result<Block, ConstructionError> {
    Pipeline::standard().build_w(n)
}

pub fn build_mgn(p: &Presentation, n: u32) -> Result<ConstructionReport, ConstructionError> {
    Pipeline::standard().build_mgn(p, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::{block, validate};
    use crate::fpgroup::{abelianization, is_presentation_trivial, AbelianInvariants};

    #[test]
    fn block_a() {
        let a = build_a().unwrap();
        assert_eq!((a.chi, a.sigma), (50, -30));
        assert!(validate(&a).passed());
    }

    #[test]
    fn z_small() {
        let z = build_z(1).unwrap();
        assert_eq!((z.chi, z.sigma), (327, -43));
        let z0 = build_z(0).unwrap();
        assert_eq!((z0.chi, z0.sigma), (12, -8));
        assert_eq!(build_z(2).unwrap().surface("K").unwrap().self_intersection, -3);
    }

    #[test]
    fn z_group_is_free_product_with_surface_group() {
        for n in 0..2 {
            let z = build_z(n).unwrap();
            let out = tietze_simplify(&z.pi1, 10_000);
            assert!(!out.exhausted);
            let expect = format!("< b, {} | {} >", surface_names(n + 2), surface_relator_text(n + 2));
            assert_eq!(out.presentation.to_string(), expect);
        }
    }

    fn surface_names(g: u32) -> String {
        (1..=g).map(|i| format!("x{i}, y{i}")).collect::<Vec<_>>().join(", ")
    }

    fn surface_relator_text(g: u32) -> String {
        (1..=g)
            .map(|i| format!("x{i} y{i} x{i}^-1 y{i}^-1"))
            .collect::<Vec<_>>()
            .join(" ")
    }

    #[test]
    fn j_surface() {
        let j = build_j(0);
        assert_eq!((j.genus, j.self_intersection), (3, 1));
        let j = build_j(10);
        assert_eq!((j.genus, j.self_intersection), (13, 11));
    }

    #[test]
    fn w_small() {
        let w = build_w(1).unwrap();
        assert_eq!((w.chi, w.sigma), (461, -121));
        let w0 = build_w(0).unwrap();
        assert_eq!((w0.chi, w0.sigma), (130, -78));
        assert_eq!(abelianization(&w0.pi1), AbelianInvariants::trivial());
        assert!(is_presentation_trivial(&w0.pi1, 10_000).is_certified());
    }

    #[test]
    fn elliptic_back_solve() {
        for n in 0..=25u32 {
            let (c, s) = elliptic_from_totals(i64::from(n));
            let e = block(&CatalogKind::Elliptic(n + 5)).unwrap();
            assert_eq!((c, s), (e.chi, e.sigma));
        }
    }

    #[test]
    fn mgn_trivial_group() {
        let r = build_mgn(&Presentation::trivial(), 2).unwrap();
        assert!(r.matches);
        assert_eq!((r.block.chi, r.block.sigma), (954, -122));
        assert!(r.in_valid_range);
        assert!(r.rule_factor_trivial);
        assert_eq!(r.rule_pi1, Presentation::trivial());
    }

    #[test]
    fn mgn_infinite_cyclic() {
        let p: Presentation = "<x | >".parse().unwrap();
        let r = build_mgn(&p, 2).unwrap();
        assert_eq!((r.block.chi, r.block.sigma), (966, -130));
        assert_eq!(r.rule_pi1, p);
        assert_eq!(abelianization(&r.block.pi1), AbelianInvariants::free(1));
    }

    #[test]
    fn low_n_flagged_out_of_range() {
        let r = build_mgn(&Presentation::trivial(), 1).unwrap();
        assert!(r.matches);
        assert!(!r.in_valid_range);
    }
}
