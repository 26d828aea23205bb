//! Registry of building blocks: invariants, fundamental groups, marked
//! surfaces and complement data.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::fpgroup::{quotient_by_normal_closure, GroupHom, Presentation, Word};

/// Largest catalog parameter accepted.
pub const MAX_PARAMETER: u32 = 10_000;

/// Where a recorded value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Source {
    /// Stated for the block in the literature it was taken from.
    Given,
    /// Computed from other recorded data, with an oracle test behind it.
    Derived,
    /// Minimal consistent model chosen where the literature is silent.
    Modeled,
    /// Produced by the fiber-sum engine.
    Engine,
    /// Produced by the engine from modeled data or a missing-complement fallback.
    ModelDependent,
}

impl Source {
    pub fn as_str(self) -> &'static str {
        match self {
            Source::Given => "given",
            Source::Derived => "derived",
            Source::Modeled => "modeled",
            Source::Engine => "engine",
            Source::ModelDependent => "model-dependent",
        }
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub invariants: Source,
    pub pi1: Source,
}

/// An embedded surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedSurface {
    pub label: String,
    pub genus: u32,
    pub self_intersection: i64,
    pub symplectic: bool,
    pub normal_bundle_trivial: bool,
    /// Images of the standard basis `a1, b1, ..., ag, bg` as words over
    /// the block's `pi1` generators.
    pub inclusion: Option<Vec<Word>>,
    /// Transverse intersection counts with other surfaces of the block.
    pub meets: BTreeMap<String, u32>,
}

impl MarkedSurface {
    pub fn new(label: impl Into<String>, genus: u32, self_intersection: i64) -> Self {
        MarkedSurface {
            label: label.into(),
            genus,
            self_intersection,
            symplectic: true,
            normal_bundle_trivial: self_intersection == 0,
            inclusion: None,
            meets: BTreeMap::new(),
        }
    }

    #[must_use]
    pub fn with_images(mut self, images: Vec<Word>) -> Self {
        self.inclusion = Some(images);
        self
    }

    /// Images all trivial.
    #[must_use]
    pub fn null_homotopic(self) -> Self {
        let n = 2 * self.genus as usize;
        self.with_images(vec![Word::identity(); n])
    }

    #[must_use]
    pub fn meeting(mut self, other: &str, count: u32) -> Self {
        self.meets.insert(other.to_string(), count);
        self
    }

    pub fn meets(&self, other: &str) -> u32 {
        self.meets.get(other).copied().unwrap_or(0)
    }

    /// `< a1, b1, ..., ag, bg | [a1,b1]...[ag,bg] >`.
    pub fn surface_group(&self) -> Presentation {
        Presentation::surface_group("a", "b", self.genus as usize)
    }
}

/// Complement of a family of pairwise disjoint surfaces.
///
/// Filling a removed surface back in kills its meridian, so the complement
/// of any subfamily, and the closed group, are quotients of `group`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkComplement {
    pub removed: Vec<String>,
    pub group: Presentation,
    /// Basis images of each removed surface pushed into the boundary.
    pub images: BTreeMap<String, Vec<Word>>,
    pub meridians: BTreeMap<String, Word>,
    /// Set when the data is modeled or inherits a modeled input.
    pub model_dependent: bool,
}

impl LinkComplement {
    pub fn contains(&self, label: &str) -> bool {
        self.removed.iter().any(|r| r == label)
    }

    /// The group with every removed surface outside `keep` filled back in.
    pub fn filled_except(&self, keep: &[&str]) -> Presentation {
        let killers: Vec<Word> = self
            .removed
            .iter()
            .filter(|r| !keep.contains(&r.as_str()))
            .map(|r| self.meridians[r].clone())
            .collect();
        quotient_by_normal_closure(&self.group, &killers).expect("meridians are over group")
    }
}

/// Complement data of a single surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplementData {
    pub group: Presentation,
    pub surface_images: Vec<Word>,
    pub meridian: Word,
    pub model_dependent: bool,
}

/// A closed 4-manifold record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub name: String,
    pub chi: i64,
    pub sigma: i64,
    pub pi1: Presentation,
    pub surfaces: BTreeMap<String, MarkedSurface>,
    pub complements: Vec<LinkComplement>,
    pub provenance: Provenance,
    pub notes: Vec<String>,
}

impl Block {
    pub fn surface(&self, label: &str) -> Option<&MarkedSurface> {
        self.surfaces.get(label)
    }

    pub fn add_surface(&mut self, s: MarkedSurface) {
        self.surfaces.insert(s.label.clone(), s);
    }

    /// The inclusion-induced map of a surface group, when images are recorded.
    pub fn inclusion(&self, label: &str) -> Option<GroupHom> {
        let s = self.surface(label)?;
        let images = s.inclusion.clone()?;
        GroupHom::new(s.surface_group(), self.pi1.clone(), images).ok()
    }

    /// The recorded link complement containing `label` that also removes the
    /// most surfaces from `prefer`; ties go to the first recorded.
    pub fn link_containing(&self, label: &str, prefer: &[&str]) -> Option<&LinkComplement> {
        let mut best: Option<(usize, &LinkComplement)> = None;
        for l in self.complements.iter().filter(|l| l.contains(label)) {
            let score = prefer.iter().filter(|p| l.contains(p)).count();
            if best.is_none_or(|(b, _)| score > b) {
                best = Some((score, l));
            }
        }
        best.map(|(_, l)| l)
    }

    /// Complement data of one surface, derived from the recorded links.
    pub fn complement(&self, label: &str) -> Option<ComplementData> {
        let link = self.link_containing(label, &[])?;
        Some(ComplementData {
            group: link.filled_except(&[label]),
            surface_images: link.images[label].clone(),
            meridian: link.meridians[label].clone(),
            model_dependent: link.model_dependent,
        })
    }

    pub fn chi_plus_sigma(&self) -> i64 {
        self.chi + self.sigma
    }
}

/// Catalog keys.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogKind {
    /// Elliptic surface E(n), n >= 1.
    Elliptic(u32),
    /// Stipsicz's Lefschetz fibration X(n), n >= 0.
    Stipsicz(u32),
    /// Torus bundle Elb(n) over a genus-n surface, n >= 1.
    Elbow(u32),
    /// Gompf's simply connected manifold with a disjoint torus and genus-2 surface.
    S11,
    /// T^2 x Sigma_g, g >= 0.
    ProductTorus(u32),
    /// Thurston's manifold Y x S^1, identical to `Elbow(1)` with its own name.
    Thurston,
    /// M(G) for a presentation of G with g generators and r relators.
    PrescribedGroup(Presentation),
}

impl fmt::Display for CatalogKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogKind::Elliptic(n) => write!(f, "elliptic({n})"),
            CatalogKind::Stipsicz(n) => write!(f, "stipsicz({n})"),
            CatalogKind::Elbow(n) => write!(f, "elbow({n})"),
            CatalogKind::S11 => f.write_str("s11()"),
            CatalogKind::ProductTorus(g) => write!(f, "product_torus({g})"),
            CatalogKind::Thurston => f.write_str("thurston()"),
            CatalogKind::PrescribedGroup(p) => write!(f, "mg({p})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("{kind}: parameter {value} outside {range}")]
    OutOfRange { kind: &'static str, value: u32, range: &'static str },
}

/// A source of catalog blocks. Constructions are generic over it so test
/// fixtures can substitute altered data.
pub trait Catalog {
    fn block(&self, kind: &CatalogKind) -> Result<Block, CatalogError>;
}

/// The standard registry.
#[derive(Clone, Copy, Debug, Default)]
pub struct StandardCatalog;

impl Catalog for StandardCatalog {
    fn block(&self, kind: &CatalogKind) -> Result<Block, CatalogError> {
        block(kind)
    }
}

fn check_range(kind: &'static str, value: u32, min: u32, range: &'static str) -> Result<(), CatalogError> {
    if value < min || value > MAX_PARAMETER {
        Err(CatalogError::OutOfRange { kind, value, range })
    } else {
        Ok(())
    }
}

fn gen(i: usize) -> Word {
    Word::generator(i)
}

fn comm(x: usize, y: usize) -> Word {
    Word::commutator(&gen(x), &gen(y))
}

/// Looks up a catalog block.
pub fn block(kind: &CatalogKind) -> Result<Block, CatalogError> {
    match kind {
        CatalogKind::Elliptic(n) => {
            check_range("elliptic", *n, 1, "n >= 1")?;
            Ok(elliptic(*n))
        }
        CatalogKind::Stipsicz(n) => {
            check_range("stipsicz", *n, 0, "n >= 0")?;
            Ok(stipsicz(*n))
        }
        CatalogKind::Elbow(n) => {
            check_range("elbow", *n, 1, "n >= 1")?;
            Ok(elbow(*n))
        }
        CatalogKind::S11 => Ok(s11()),
        CatalogKind::ProductTorus(g) => {
            check_range("product_torus", *g, 0, "g >= 0")?;
            Ok(product_torus(*g))
        }
        CatalogKind::Thurston => {
            let mut b = elbow(1);
            b.name = "Thurston".into();
            Ok(b)
        }
        CatalogKind::PrescribedGroup(p) => Ok(prescribed_group(p)),
    }
}

fn elliptic(n: u32) -> Block {
    let n64 = i64::from(n);
    let mut b = Block {
        name: format!("E({n})"),
        chi: 12 * n64,
        sigma: -8 * n64,
        pi1: Presentation::trivial(),
        surfaces: BTreeMap::new(),
        complements: Vec::new(),
        provenance: Provenance { invariants: Source::Derived, pi1: Source::Given },
        notes: vec!["chi = 12n, sigma = -8n certified against construction totals".into()],
    };
    b.add_surface(MarkedSurface::new("F", 1, 0).null_homotopic().meeting("S", 1));
    b.add_surface(MarkedSurface::new("S", 0, -n64).null_homotopic().meeting("F", 1));
    b.complements.push(simply_connected_link(&[("F", 1)], false));
    b
}

/// A link complement with trivial group, images and meridians.
fn simply_connected_link(surfaces: &[(&str, u32)], model_dependent: bool) -> LinkComplement {
    LinkComplement {
        removed: surfaces.iter().map(|(l, _)| l.to_string()).collect(),
        group: Presentation::trivial(),
        images: surfaces
            .iter()
            .map(|(l, g)| (l.to_string(), vec![Word::identity(); 2 * *g as usize]))
            .collect(),
        meridians: surfaces.iter().map(|(l, _)| (l.to_string(), Word::identity())).collect(),
        model_dependent,
    }
}

fn stipsicz(n: u32) -> Block {
    let n64 = i64::from(n);
    let base_genus = (n + 2) as usize;
    let fiber_genus = 15 * n + 1;
    let pi1 = Presentation::surface_group("x", "y", base_genus);
    let free = Presentation::free(pi1.generators().iter().cloned()).expect("distinct names");
    let mut b = Block {
        name: format!("X({n})"),
        chi: 75 * n64 * n64 + 180 * n64 + 12,
        sigma: 25 * n64 * n64 - 60 * n64 - 8,
        pi1,
        surfaces: BTreeMap::new(),
        complements: Vec::new(),
        provenance: Provenance { invariants: Source::Given, pi1: Source::Given },
        notes: vec!["fiber complement modeled: free on base generators, meridian = product of base commutators".into()],
    };
    b.add_surface(MarkedSurface::new("F", fiber_genus, 0).null_homotopic().meeting("T", 1));
    let section_images = (0..2 * base_genus).map(gen).collect();
    b.add_surface(
        MarkedSurface::new("T", n + 2, -(n64 + 1))
            .with_images(section_images)
            .meeting("F", 1),
    );
    b.complements.push(LinkComplement {
        removed: vec!["F".into()],
        group: free,
        images: [("F".to_string(), vec![Word::identity(); 2 * fiber_genus as usize])].into(),
        meridians: [("F".to_string(), Word::surface_relator(0, base_genus))].into(),
        model_dependent: true,
    });
    b
}

/// Generator layout of the elbow: a, b, t1, s1, ..., tn, sn.
struct ElbowGens {
    n: usize,
}

impl ElbowGens {
    const A: usize = 0;
    const B: usize = 1;

    fn t(&self, i: usize) -> usize {
        debug_assert!((1..=self.n).contains(&i));
        2 * i
    }

    fn s(&self, i: usize) -> usize {
        2 * i + 1
    }

    fn names(&self) -> Vec<String> {
        let mut v = vec!["a".to_string(), "b".to_string()];
        for i in 1..=self.n {
            v.push(format!("t{i}"));
            v.push(format!("s{i}"));
        }
        v
    }

    /// Relators in order; `skip_ab` drops `[a,b]`, `skip_base` drops the
    /// base surface relation.
    fn relators(&self, skip_ab: bool, skip_base: bool) -> Vec<Word> {
        let (a, b) = (Self::A, Self::B);
        let mut r = Vec::new();
        if !skip_ab {
            r.push(comm(a, b));
        }
        for i in 1..=self.n {
            r.push(comm(a, self.t(i)));
            r.push(comm(a, self.s(i)));
        }
        r.push(comm(b, self.t(1)).mul(&gen(a).inverse()));
        for i in 2..=self.n {
            r.push(comm(b, self.t(i)));
        }
        for i in 1..=self.n {
            r.push(comm(b, self.s(i)));
        }
        if !skip_base {
            r.push(self.base_relator());
        }
        r
    }

    fn base_relator(&self) -> Word {
        Word::surface_relator(self.t(1), self.n)
    }

    fn presentation(&self, skip_ab: bool, skip_base: bool) -> Presentation {
        Presentation::new(self.names(), self.relators(skip_ab, skip_base)).expect("valid elbow presentation")
    }
}

fn elbow(n: u32) -> Block {
    let g = ElbowGens { n: n as usize };
    let (a, b) = (ElbowGens::A, ElbowGens::B);
    let section_images: Vec<Word> = (1..=g.n).flat_map(|i| [gen(g.t(i)), gen(g.s(i))]).collect();
    let mut blk = Block {
        name: format!("Elb({n})"),
        chi: 0,
        sigma: 0,
        pi1: g.presentation(false, false),
        surfaces: BTreeMap::new(),
        complements: Vec::new(),
        provenance: Provenance { invariants: Source::Given, pi1: Source::Given },
        notes: vec!["fiber-torus complement modeled: base relation dropped, meridian = base relation".into()],
    };
    blk.add_surface(MarkedSurface::new("T", 1, 0).with_images(vec![gen(a), gen(b)]).meeting("D", 1));
    blk.add_surface(MarkedSurface::new("T'", 1, 0).with_images(vec![gen(b), gen(g.s(1))]));
    blk.add_surface(
        MarkedSurface::new("D", n, 0)
            .with_images(section_images.clone())
            .meeting("T", 1),
    );
    // Punctured-torus bundle: everything survives except [a,b]; the
    // meridian of the section is the puncture loop [a,b].
    blk.complements.push(LinkComplement {
        removed: vec!["D".into()],
        group: g.presentation(true, false),
        images: [("D".to_string(), section_images)].into(),
        meridians: [("D".to_string(), comm(a, b))].into(),
        model_dependent: false,
    });
    blk.complements.push(LinkComplement {
        removed: vec!["T".into()],
        group: g.presentation(false, true),
        images: [("T".to_string(), vec![gen(a), gen(b)])].into(),
        meridians: [("T".to_string(), g.base_relator())].into(),
        model_dependent: true,
    });
    blk
}

fn s11() -> Block {
    let mut b = Block {
        name: "S11".into(),
        chi: 23,
        sigma: -15,
        pi1: Presentation::trivial(),
        surfaces: BTreeMap::new(),
        complements: Vec::new(),
        provenance: Provenance { invariants: Source::Given, pi1: Source::Given },
        notes: Vec::new(),
    };
    b.add_surface(MarkedSurface::new("T", 1, 0).null_homotopic());
    b.add_surface(MarkedSurface::new("F", 2, 0).null_homotopic());
    b.complements.push(simply_connected_link(&[("T", 1), ("F", 2)], false));
    b
}

fn product_torus(genus: u32) -> Block {
    let g = genus as usize;
    let (u, v) = (0usize, 1usize);
    let c = |i: usize| 2 * i;
    let d = |i: usize| 2 * i + 1;
    let mut names = vec!["u".to_string(), "v".to_string()];
    for i in 1..=g {
        names.push(format!("c{i}"));
        names.push(format!("d{i}"));
    }
    let base = Word::surface_relator(c(1), g);
    let relators = |skip_uv: bool, skip_base: bool| {
        let mut r = Vec::new();
        if !skip_uv {
            r.push(comm(u, v));
        }
        for i in 1..=g {
            for f in [u, v] {
                r.push(comm(f, c(i)));
                r.push(comm(f, d(i)));
            }
        }
        if !skip_base {
            r.push(base.clone());
        }
        r
    };
    let pres = |skip_uv, skip_base| Presentation::new(names.clone(), relators(skip_uv, skip_base)).expect("valid");
    let section_images: Vec<Word> = (1..=g).flat_map(|i| [gen(c(i)), gen(d(i))]).collect();
    let mut b = Block {
        name: format!("T2xS({genus})"),
        chi: 0,
        sigma: 0,
        pi1: pres(false, false),
        surfaces: BTreeMap::new(),
        complements: Vec::new(),
        provenance: Provenance { invariants: Source::Derived, pi1: Source::Derived },
        notes: Vec::new(),
    };
    b.add_surface(MarkedSurface::new("F", 1, 0).with_images(vec![gen(u), gen(v)]).meeting("S", 1));
    b.add_surface(MarkedSurface::new("S", genus, 0).with_images(section_images.clone()).meeting("F", 1));
    b.complements.push(LinkComplement {
        removed: vec!["F".into()],
        group: pres(false, true),
        images: [("F".to_string(), vec![gen(u), gen(v)])].into(),
        meridians: [("F".to_string(), base.clone())].into(),
        model_dependent: false,
    });
    b.complements.push(LinkComplement {
        removed: vec!["S".into()],
        group: pres(true, false),
        images: [("S".to_string(), section_images)].into(),
        meridians: [("S".to_string(), comm(u, v))].into(),
        model_dependent: false,
    });
    b
}

/// `g + r + 1` for a presentation.
pub fn group_term(p: &Presentation) -> i64 {
    (p.generator_count() + p.relator_count() + 1) as i64
}

fn prescribed_group(p: &Presentation) -> Block {
    let k = group_term(p);
    let mut b = Block {
        name: "M(G)".into(),
        chi: 12 * k,
        sigma: -8 * k,
        pi1: p.clone(),
        surfaces: BTreeMap::new(),
        complements: Vec::new(),
        provenance: Provenance { invariants: Source::Given, pi1: Source::Given },
        notes: vec!["torus T0 complement modeled: group G, trivial images and meridian".into()],
    };
    b.add_surface(MarkedSurface::new("T0", 1, 0).null_homotopic());
    b.complements.push(LinkComplement {
        removed: vec!["T0".into()],
        group: p.clone(),
        images: [("T0".to_string(), vec![Word::identity(); 2])].into(),
        meridians: [("T0".to_string(), Word::identity())].into(),
        model_dependent: true,
    });
    b
}

/// Per-field provenance of a catalog entry, for data-file export.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldProvenance {
    pub field: &'static str,
    pub source: Source,
}

pub fn provenance_table(b: &Block) -> Vec<FieldProvenance> {
    let mut v = vec![
        FieldProvenance { field: "chi", source: b.provenance.invariants },
        FieldProvenance { field: "sigma", source: b.provenance.invariants },
        FieldProvenance { field: "pi1", source: b.provenance.pi1 },
    ];
    if !b.complements.is_empty() {
        let model = b.complements.iter().any(|l| l.model_dependent);
        v.push(FieldProvenance {
            field: "complements",
            source: if model { Source::Modeled } else { b.provenance.pi1 },
        });
    }
    v
}

/// One failed invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    ChiSigmaNotDivisible { sum: i64 },
    LabelMismatch { key: String, label: String },
    NormalBundleFlag { label: String },
    ImageCount { label: String, expected: usize, found: usize },
    ImageOutOfRange { label: String },
    InclusionInconsistent { label: String },
    MeetsUnknown { label: String, other: String },
    MeetsAsymmetric { label: String, other: String },
    ComplementUnknownSurface { label: String },
    ComplementSurfacesMeet { first: String, second: String },
    ComplementData { label: String, reason: &'static str },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ChiSigmaNotDivisible { sum } => write!(f, "chi + sigma = {sum} is not divisible by 4"),
            Violation::LabelMismatch { key, label } => write!(f, "surface stored under '{key}' is labeled '{label}'"),
            Violation::NormalBundleFlag { label } => {
                write!(f, "surface {label}: normal-bundle flag disagrees with self-intersection")
            }
            Violation::ImageCount { label, expected, found } => {
                write!(f, "surface {label}: {found} inclusion images, expected {expected}")
            }
            Violation::ImageOutOfRange { label } => write!(f, "surface {label}: image word uses unknown generator"),
            Violation::InclusionInconsistent { label } => {
                write!(f, "surface {label}: surface relation not trivial in abelianization")
            }
            Violation::MeetsUnknown { label, other } => write!(f, "surface {label} meets unknown surface {other}"),
            Violation::MeetsAsymmetric { label, other } => {
                write!(f, "intersection count {label}/{other} is not symmetric")
            }
            Violation::ComplementUnknownSurface { label } => write!(f, "complement removes unknown surface {label}"),
            Violation::ComplementSurfacesMeet { first, second } => {
                write!(f, "complement removes intersecting surfaces {first} and {second}")
            }
            Violation::ComplementData { label, reason } => write!(f, "complement of {label}: {reason}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub block: String,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "{}: ok", self.block);
        }
        write!(f, "{}:", self.block)?;
        for v in &self.violations {
            write!(f, " [{v}]")?;
        }
        Ok(())
    }
}

/// Checks the block invariants.
pub fn validate(b: &Block) -> ValidationReport {
    let mut out = Vec::new();
    if b.chi_plus_sigma().rem_euclid(4) != 0 {
        out.push(Violation::ChiSigmaNotDivisible { sum: b.chi_plus_sigma() });
    }
    for (key, s) in &b.surfaces {
        if key != &s.label {
            out.push(Violation::LabelMismatch { key: key.clone(), label: s.label.clone() });
        }
        if s.normal_bundle_trivial != (s.self_intersection == 0) {
            out.push(Violation::NormalBundleFlag { label: s.label.clone() });
        }
        if let Some(images) = &s.inclusion {
            let expected = 2 * s.genus as usize;
            if images.len() != expected {
                out.push(Violation::ImageCount { label: s.label.clone(), expected, found: images.len() });
            } else if images.iter().any(|w| b.pi1.check_word(w).is_err()) {
                out.push(Violation::ImageOutOfRange { label: s.label.clone() });
            } else if b.inclusion(&s.label).and_then(|h| h.abelian_inconsistency()).is_some() {
                out.push(Violation::InclusionInconsistent { label: s.label.clone() });
            }
        }
        for (other, &count) in &s.meets {
            match b.surfaces.get(other) {
                None => out.push(Violation::MeetsUnknown { label: s.label.clone(), other: other.clone() }),
                Some(o) if o.meets(&s.label) != count => {
                    out.push(Violation::MeetsAsymmetric { label: s.label.clone(), other: other.clone() })
                }
                _ => {}
            }
        }
    }
    for link in &b.complements {
        for (i, r) in link.removed.iter().enumerate() {
            let Some(s) = b.surfaces.get(r) else {
                out.push(Violation::ComplementUnknownSurface { label: r.clone() });
                continue;
            };
            for other in &link.removed[i + 1..] {
                if s.meets(other) > 0 {
                    out.push(Violation::ComplementSurfacesMeet { first: r.clone(), second: other.clone() });
                }
            }
            let complaint = |reason| Violation::ComplementData { label: r.clone(), reason };
            match (link.images.get(r), link.meridians.get(r)) {
                (Some(images), Some(meridian)) => {
                    if images.len() != 2 * s.genus as usize {
                        out.push(complaint("wrong number of images"));
                    } else if images.iter().chain([meridian]).any(|w| link.group.check_word(w).is_err()) {
                        out.push(complaint("word uses unknown generator"));
                    } else {
                        let rel = Word::surface_relator(0, s.genus as usize).substitute(|g| images[g].clone());
                        if !crate::fpgroup::is_abelian_trivial(&link.group, &rel) {
                            out.push(complaint("surface relation not trivial in abelianization"));
                        }
                    }
                }
                _ => out.push(complaint("missing images or meridian")),
            }
        }
    }
    ValidationReport { block: b.name.clone(), violations: out }
}

/// Checks that filling every removed surface of each link recovers the
/// abelianization of the closed group. Runs a Smith normal form per link,
/// so it is kept out of [`validate`].
pub fn validate_complement_groups(b: &Block) -> Vec<String> {
    let closed = crate::fpgroup::abelianization(&b.pi1);
    b.complements
        .iter()
        .filter_map(|link| {
            let filled = crate::fpgroup::abelianization(&link.filled_except(&[]));
            (filled != closed).then(|| format!("link {:?}: filled {} but closed {}", link.removed, filled, closed))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroup::{abelianization, AbelianInvariants};

    fn all_kinds() -> Vec<CatalogKind> {
        vec![
            CatalogKind::Elliptic(3),
            CatalogKind::Stipsicz(0),
            CatalogKind::Stipsicz(2),
            CatalogKind::Elbow(1),
            CatalogKind::Elbow(4),
            CatalogKind::S11,
            CatalogKind::ProductTorus(0),
            CatalogKind::ProductTorus(3),
            CatalogKind::Thurston,
            CatalogKind::PrescribedGroup("<x, y | x^2, y^3>".parse().unwrap()),
        ]
    }

    #[test]
    fn stipsicz_zero_invariants() {
        let b = block(&CatalogKind::Stipsicz(0)).unwrap();
        assert_eq!((b.chi, b.sigma), (12, -8));
    }

    #[test]
    fn s11_invariants() {
        let b = block(&CatalogKind::S11).unwrap();
        assert_eq!((b.chi, b.sigma), (23, -15));
    }

    #[test]
    fn elliptic_five() {
        let b = block(&CatalogKind::Elliptic(5)).unwrap();
        assert_eq!((b.chi, b.sigma), (60, -40));
        assert_eq!(b.surface("S").unwrap().self_intersection, -5);
    }

    #[test]
    fn elbow_three_validates() {
        let b = block(&CatalogKind::Elbow(3)).unwrap();
        let r = validate(&b);
        assert!(r.passed(), "{r}");
        assert_eq!(b.chi_plus_sigma(), 0);
    }

    #[test]
    fn bad_block_fails_validation() {
        let mut b = block(&CatalogKind::S11).unwrap();
        b.chi = 1;
        b.sigma = 0;
        let r = validate(&b);
        assert_eq!(r.violations, [Violation::ChiSigmaNotDivisible { sum: 1 }]);
    }

    #[test]
    fn prescribed_free_cyclic() {
        let p: Presentation = "<x|>".parse().unwrap();
        let b = block(&CatalogKind::PrescribedGroup(p.clone())).unwrap();
        assert!(validate(&b).passed());
        assert_eq!((b.chi, b.sigma, b.chi_plus_sigma()), (24, -16, 8));
        assert_eq!(b.pi1, p);
    }

    #[test]
    fn out_of_range_parameters() {
        assert!(block(&CatalogKind::Elliptic(0)).is_err());
        assert!(block(&CatalogKind::Elbow(0)).is_err());
        assert!(block(&CatalogKind::Stipsicz(MAX_PARAMETER + 1)).is_err());
    }

    #[test]
    fn every_sample_block_is_valid_and_consistent() {
        for k in all_kinds() {
            let b = block(&k).unwrap();
            let r = validate(&b);
            assert!(r.passed(), "{r}");
            let bad = validate_complement_groups(&b);
            assert!(bad.is_empty(), "{}: {bad:?}", b.name);
        }
    }

    #[test]
    fn normal_bundle_flag_checked() {
        let mut b = block(&CatalogKind::Stipsicz(1)).unwrap();
        b.surfaces.get_mut("T").unwrap().normal_bundle_trivial = true;
        assert!(matches!(validate(&b).violations[..], [Violation::NormalBundleFlag { .. }]));
    }

    #[test]
    fn elbow_abelianization() {
        for n in 1..=10 {
            let b = block(&CatalogKind::Elbow(n)).unwrap();
            assert_eq!(abelianization(&b.pi1), AbelianInvariants::free(2 * n as usize + 1));
        }
    }

    #[test]
    fn elbow_section_complement_keeps_a_central_except_b() {
        let b = block(&CatalogKind::Elbow(2)).unwrap();
        let c = b.complement("D").unwrap();
        assert_eq!(c.group.relator_count(), b.pi1.relator_count() - 1);
        assert_eq!(c.group.show(&c.meridian), "a b a^-1 b^-1");
        assert_eq!(c.surface_images.len(), 4);
    }

    #[test]
    fn stipsicz_divisibility_exhaustive() {
        for n in 0..=30u32 {
            let b = block(&CatalogKind::Stipsicz(n)).unwrap();
            let n = i64::from(n);
            assert_eq!(b.chi_plus_sigma(), 100 * n * n + 120 * n + 4);
            assert_eq!(b.chi_plus_sigma() % 4, 0);
        }
    }
}
