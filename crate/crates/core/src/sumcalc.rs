//! The fiber-sum engine.
//!
//! `X #_{F,G} Y` removes tubular neighbourhoods of `F` and `G` and glues
//! the boundaries `F x S^1`. Invariants: `chi = chi(X) + chi(Y) - 2 chi(F)`
//! and `sigma = sigma(X) + sigma(Y)` (signature treated as additive for
//! every gluing, with no correction term).
//!
//! The fundamental group comes from a presentation-level Seifert–Van Kampen
//! step over the two complement groups: the free product, plus one relator
//! identifying each pair of boundary basis loops and one making the two
//! meridians mutually inverse.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::blocks::{Block, LinkComplement, MarkedSurface, Provenance, Source};
use crate::fpgroup::{free_product, quotient_by_normal_closure, GroupError, Presentation, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    fn flip(self) -> Self {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// A surface disjoint from the gluing surface that persists in the sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Carry {
    pub side: Side,
    pub label: String,
    pub rename: Option<String>,
}

impl Carry {
    pub fn result_label(&self) -> &str {
        self.rename.as_deref().unwrap_or(&self.label)
    }
}

/// Two surfaces, each meeting its gluing surface once, joined into one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connect {
    pub left: String,
    pub right: String,
    pub label: String,
}

/// Signed permutation of the surface basis `a1, b1, ..., ag, bg`.
/// Entry `i` is `+-(j+1)`: basis element `i` of the left surface is glued
/// to basis element `j` of the right surface, inverted when negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisIdentification(pub Vec<i32>);

impl BasisIdentification {
    pub fn identity(rank: usize) -> Self {
        BasisIdentification((1..=rank as i32).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| v == i as i32 + 1)
    }

    fn check(&self, rank: usize) -> Result<(), SumError> {
        if self.0.len() != rank {
            return Err(SumError::BadBasis(format!("expected {rank} entries, got {}", self.0.len())));
        }
        let mut seen = BTreeSet::new();
        for &v in &self.0 {
            let j = v.unsigned_abs() as usize;
            if v == 0 || j > rank || !seen.insert(j) {
                return Err(SumError::BadBasis(format!("{:?} is not a signed permutation", self.0)));
            }
        }
        Ok(())
    }

    #[must_use]
    pub fn inverse(&self) -> Self {
        let mut out = alloc::vec![0i32; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            let j = v.unsigned_abs() as usize - 1;
            out[j] = v.signum() * (i as i32 + 1);
        }
        BasisIdentification(out)
    }

    /// All `2^n n!` signed permutations of rank `n`.
    pub fn all(rank: usize) -> Vec<Self> {
        fn perms(rest: &mut Vec<i32>, acc: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
            if rest.is_empty() {
                out.push(acc.clone());
                return;
            }
            for i in 0..rest.len() {
                let v = rest.remove(i);
                for s in [1, -1] {
                    acc.push(s * v);
                    perms(rest, acc, out);
                    acc.pop();
                }
                rest.insert(i, v);
            }
        }
        let mut out = Vec::new();
        perms(&mut (1..=rank as i32).collect(), &mut Vec::new(), &mut out);
        out.into_iter().map(BasisIdentification).collect()
    }
}

impl fmt::Display for BasisIdentification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("identity");
        }
        f.write_str("[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingSpec {
    pub left: String,
    pub right: String,
    /// `None` is the identity.
    pub basis: Option<BasisIdentification>,
    pub connect: Option<Connect>,
    pub carry: Vec<Carry>,
    pub name: Option<String>,
}

impl GluingSpec {
    pub fn new(left: impl Into<String>, right: impl Into<String>) -> Self {
        GluingSpec {
            left: left.into(),
            right: right.into(),
            basis: None,
            connect: None,
            carry: Vec::new(),
            name: None,
        }
    }

    #[must_use]
    pub fn carry(mut self, side: Side, label: &str, rename: Option<&str>) -> Self {
        self.carry.push(Carry {
            side,
            label: label.to_string(),
            rename: rename.map(ToString::to_string),
        });
        self
    }

    #[must_use]
    pub fn connect(mut self, left: &str, right: &str, label: &str) -> Self {
        self.connect = Some(Connect {
            left: left.to_string(),
            right: right.to_string(),
            label: label.to_string(),
        });
        self
    }

    #[must_use]
    pub fn basis(mut self, b: BasisIdentification) -> Self {
        self.basis = Some(b);
        self
    }

    #[must_use]
    pub fn named(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    /// The same gluing with the two sides exchanged.
    #[must_use]
    pub fn mirror(&self) -> Self {
        GluingSpec {
            left: self.right.clone(),
            right: self.left.clone(),
            basis: self.basis.as_ref().map(BasisIdentification::inverse),
            connect: self.connect.as_ref().map(|c| Connect {
                left: c.right.clone(),
                right: c.left.clone(),
                label: c.label.clone(),
            }),
            carry: self
                .carry
                .iter()
                .map(|c| Carry { side: c.side.flip(), ..c.clone() })
                .collect(),
            name: self.name.clone(),
        }
    }

    fn carried(&self, side: Side) -> impl Iterator<Item = &Carry> {
        self.carry.iter().filter(move |c| c.side == side)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SumError {
    #[error("{side} block {block} has no surface '{label}'")]
    MissingSurface { side: Side, block: String, label: String },
    #[error("genus mismatch: {left} has genus {left_genus}, {right} has genus {right_genus}")]
    GenusMismatch { left: String, right: String, left_genus: u32, right_genus: u32 },
    #[error("squares not opposite: {left}^2 = {left_square}, {right}^2 = {right_square}")]
    SquaresNotOpposite { left: String, right: String, left_square: i64, right_square: i64 },
    #[error("surface {0} is not symplectic")]
    NotSymplectic(String),
    #[error("connect surface {label} meets the gluing surface {count} times, expected once")]
    ConnectNotTransverse { label: String, count: u32 },
    #[error("carried surface {label} meets the gluing surface")]
    CarriedMeetsGluing { label: String },
    #[error("carried surface {label} is the gluing surface")]
    CarriedIsGluing { label: String },
    #[error("duplicate surface label {0} in the result")]
    DuplicateLabel(String),
    #[error("basis identification: {0}")]
    BadBasis(String),
    #[error("surface {0} has no inclusion data")]
    MissingInclusion(String),
    #[error("surface {label} must be a torus with trivial normal bundle")]
    NotTorus { label: String },
    #[error("intersection configuration: {0}")]
    BadConfiguration(String),
    #[error("intersection configuration is disconnected")]
    Disconnected,
    #[error("group data: {0}")]
    Group(#[from] GroupError),
}

/// One side of a sum: the complement group with boundary data.
struct Piece {
    group: Presentation,
    glue_images: Vec<Word>,
    glue_meridian: Word,
    /// Label, images (if known), meridian when the surface is still removed.
    carried: Vec<(String, Option<Vec<Word>>, Option<Word>)>,
    connect_images: Option<Vec<Word>>,
    note: String,
    model_dependent: bool,
}

fn translate_all(group: &Presentation, pi1: &Presentation, words: &[Word]) -> Result<Vec<Word>, SumError> {
    let table = group.translation_table(pi1)?;
    words
        .iter()
        .map(|w| {
            pi1.check_word(w)?;
            Ok(w.reindex(&table))
        })
        .collect()
}

fn piece(b: &Block, glue: &str, carried: &[&str], connect: Option<&str>) -> Result<Piece, SumError> {
    let surface = b.surface(glue).expect("checked by caller");
    let mut model_dependent = b.provenance.pi1 == Source::ModelDependent;
    let (group, link, glue_images, glue_meridian, note): (Presentation, Option<&LinkComplement>, _, _, _) =
        match b.link_containing(glue, carried) {
            Some(link) => {
                model_dependent |= link.model_dependent;
                let keep: Vec<&str> = core::iter::once(glue)
                    .chain(carried.iter().copied().filter(|c| link.contains(c)))
                    .collect();
                (
                    link.filled_except(&keep),
                    Some(link),
                    link.images[glue].clone(),
                    link.meridians[glue].clone(),
                    format!("complement of {{{}}} in {}", keep.join(", "), b.name),
                )
            }
            None => {
                model_dependent = true;
                let images = surface
                    .inclusion
                    .clone()
                    .ok_or_else(|| SumError::MissingInclusion(glue.to_string()))?;
                // Keep whatever carried surfaces some recorded link still removes.
                let alt = b
                    .complements
                    .iter()
                    .map(|l| (carried.iter().filter(|c| l.contains(c)).count(), l))
                    .filter(|(score, _)| *score > 0)
                    .max_by_key(|(score, _)| *score);
                match alt {
                    Some((_, l)) => {
                        model_dependent |= l.model_dependent;
                        let keep: Vec<&str> = carried.iter().copied().filter(|c| l.contains(c)).collect();
                        let group = l.filled_except(&keep);
                        let images = translate_all(&group, &b.pi1, &images)?;
                        (
                            group,
                            Some(l),
                            images,
                            Word::identity(),
                            format!("no complement data for {glue} in {}: complement of {{{}}} used, meridian of {glue} set trivial", b.name, keep.join(", ")),
                        )
                    }
                    None => (
                        b.pi1.clone(),
                        None,
                        images,
                        Word::identity(),
                        format!("no complement data for {glue} in {}: closed group used, meridian set trivial", b.name),
                    ),
                }
            }
        };

    let mut carried_out = Vec::new();
    for &c in carried {
        match link.filter(|l| l.contains(c)) {
            Some(l) => carried_out.push((c.to_string(), Some(l.images[c].clone()), Some(l.meridians[c].clone()))),
            None => {
                let images = match &b.surface(c).expect("checked").inclusion {
                    Some(w) => Some(translate_all(&group, &b.pi1, w)?),
                    None => None,
                };
                carried_out.push((c.to_string(), images, None));
            }
        }
    }
    let connect_images = match connect {
        Some(e) => {
            let s = b.surface(e).expect("checked");
            let w = s.inclusion.as_ref().ok_or_else(|| SumError::MissingInclusion(e.to_string()))?;
            Some(translate_all(&group, &b.pi1, w)?)
        }
        None => None,
    };
    Ok(Piece {
        group,
        glue_images,
        glue_meridian,
        carried: carried_out,
        connect_images,
        note,
        model_dependent,
    })
}

fn check_gluing<'a>(x: &'a Block, y: &'a Block, g: &GluingSpec) -> Result<(&'a MarkedSurface, &'a MarkedSurface), SumError> {
    let get = |b: &'a Block, side, label: &str| {
        b.surface(label).ok_or_else(|| SumError::MissingSurface {
            side,
            block: b.name.clone(),
            label: label.to_string(),
        })
    };
    let fl = get(x, Side::Left, &g.left)?;
    let fr = get(y, Side::Right, &g.right)?;
    if fl.genus != fr.genus {
        return Err(SumError::GenusMismatch {
            left: fl.label.clone(),
            right: fr.label.clone(),
            left_genus: fl.genus,
            right_genus: fr.genus,
        });
    }
    if fl.self_intersection + fr.self_intersection != 0 {
        return Err(SumError::SquaresNotOpposite {
            left: fl.label.clone(),
            right: fr.label.clone(),
            left_square: fl.self_intersection,
            right_square: fr.self_intersection,
        });
    }
    for s in [fl, fr] {
        if !s.symplectic {
            return Err(SumError::NotSymplectic(s.label.clone()));
        }
    }
    if let Some(b) = &g.basis {
        b.check(2 * fl.genus as usize)?;
    }
    let mut labels = BTreeSet::new();
    for c in &g.carry {
        let (b, glue) = match c.side {
            Side::Left => (x, fl),
            Side::Right => (y, fr),
        };
        let s = get(b, c.side, &c.label)?;
        if s.label == glue.label {
            return Err(SumError::CarriedIsGluing { label: s.label.clone() });
        }
        if s.meets(&glue.label) > 0 {
            return Err(SumError::CarriedMeetsGluing { label: s.label.clone() });
        }
        if !labels.insert(c.result_label().to_string()) {
            return Err(SumError::DuplicateLabel(c.result_label().to_string()));
        }
    }
    if let Some(c) = &g.connect {
        for (side, b, label, glue) in [(Side::Left, x, &c.left, fl), (Side::Right, y, &c.right, fr)] {
            let s = get(b, side, label)?;
            let count = s.meets(&glue.label);
            if count != 1 {
                return Err(SumError::ConnectNotTransverse { label: s.label.clone(), count });
            }
        }
        if !labels.insert(c.label.clone()) {
            return Err(SumError::DuplicateLabel(c.label.clone()));
        }
    }
    Ok((fl, fr))
}

/// Symplectic fiber sum of `x` and `y` along the surfaces named in `g`.
pub fn fiber_sum(x: &Block, y: &Block, g: &GluingSpec) -> Result<Block, SumError> {
    let (fl, fr) = check_gluing(x, y, g)?;
    let genus = fl.genus;
    let rank = 2 * genus as usize;
    let left_carry: Vec<&str> = g.carried(Side::Left).map(|c| c.label.as_str()).collect();
    let right_carry: Vec<&str> = g.carried(Side::Right).map(|c| c.label.as_str()).collect();
    let lp = piece(x, &g.left, &left_carry, g.connect.as_ref().map(|c| c.left.as_str()))?;
    let rp = piece(y, &g.right, &right_carry, g.connect.as_ref().map(|c| c.right.as_str()))?;

    let (fp, ren) = free_product(&lp.group, &rp.group);
    let basis = g.basis.clone().unwrap_or_else(|| BasisIdentification::identity(rank));
    let mut glue = Vec::with_capacity(rank + 1);
    for (i, &v) in basis.0.iter().enumerate() {
        let j = v.unsigned_abs() as usize - 1;
        let mut rhs = ren.map_word(&rp.glue_images[j]);
        if v < 0 {
            rhs = rhs.inverse();
        }
        glue.push(lp.glue_images[i].mul(&rhs.inverse()));
    }
    glue.push(lp.glue_meridian.mul(&ren.map_word(&rp.glue_meridian)));
    let link_group = quotient_by_normal_closure(&fp, &glue)?;

    let mut surfaces = BTreeMap::new();
    let mut removed = Vec::new();
    let mut images = BTreeMap::new();
    let mut meridians = BTreeMap::new();
    let mut label_map: BTreeMap<(Side, String), String> = BTreeMap::new();
    for (side, p, src) in [(Side::Left, &lp, x), (Side::Right, &rp, y)] {
        let map = |w: &Word| if side == Side::Left { w.clone() } else { ren.map_word(w) };
        for ((label, imgs, meridian), c) in p.carried.iter().zip(g.carried(side)) {
            let new_label = c.result_label().to_string();
            label_map.insert((side, label.clone()), new_label.clone());
            let old = src.surface(label).expect("checked");
            let mut s = MarkedSurface {
                label: new_label.clone(),
                meets: BTreeMap::new(),
                inclusion: imgs.as_ref().map(|ws| ws.iter().map(map).collect()),
                ..old.clone()
            };
            s.meets = old.meets.clone();
            if let Some(m) = meridian {
                removed.push(new_label.clone());
                images.insert(new_label.clone(), s.inclusion.clone().expect("link images recorded"));
                meridians.insert(new_label.clone(), map(m));
            }
            surfaces.insert(new_label, s);
        }
    }
    // Keep intersection counts only between carried surfaces from the same side.
    let snapshot: Vec<(String, BTreeMap<String, u32>, Side)> = g
        .carry
        .iter()
        .map(|c| (c.result_label().to_string(), surfaces[c.result_label()].meets.clone(), c.side))
        .collect();
    for (label, meets, side) in snapshot {
        let s = surfaces.get_mut(&label).expect("inserted");
        s.meets = meets
            .into_iter()
            .filter_map(|(other, n)| label_map.get(&(side, other)).map(|o| (o.clone(), n)))
            .collect();
    }
    if let Some(c) = &g.connect {
        let el = x.surface(&c.left).expect("checked");
        let er = y.surface(&c.right).expect("checked");
        let mut imgs = lp.connect_images.clone().expect("connect images");
        imgs.extend(rp.connect_images.as_ref().expect("connect images").iter().map(|w| ren.map_word(w)));
        let mut s = MarkedSurface::new(c.label.clone(), el.genus + er.genus, el.self_intersection + er.self_intersection);
        s.symplectic = el.symplectic && er.symplectic;
        s.inclusion = Some(imgs);
        surfaces.insert(c.label.clone(), s);
    }

    let model_dependent = lp.model_dependent || rp.model_dependent;
    let mut complements = Vec::new();
    let pi1 = if removed.is_empty() {
        link_group
    } else {
        let killers: Vec<Word> = removed.iter().map(|r| meridians[r].clone()).collect();
        let closed = quotient_by_normal_closure(&link_group, &killers)?;
        complements.push(LinkComplement {
            removed,
            group: link_group,
            images,
            meridians,
            model_dependent,
        });
        closed
    };

    let mut notes = Vec::new();
    notes.push(format!("basis identification: {basis}"));
    notes.push(format!("left: {}", lp.note));
    notes.push(format!("right: {}", rp.note));
    if fl.self_intersection != 0 {
        notes.push(format!(
            "signature taken additive across gluing surfaces of square {}/{}; no correction term modeled",
            fl.self_intersection, fr.self_intersection
        ));
    }
    if !ren.renamed.is_empty() {
        let pairs: Vec<String> = ren.renamed.iter().map(|(a, b)| format!("{a}->{b}")).collect();
        notes.push(format!("renamed right generators: {}", pairs.join(", ")));
    }

    let name = g
        .name
        .clone()
        .unwrap_or_else(|| format!("{} #[{},{}] {}", x.name, g.left, g.right, y.name));
    Ok(Block {
        name,
        chi: x.chi + y.chi - 2 * (2 - 2 * i64::from(genus)),
        sigma: x.sigma + y.sigma,
        pi1,
        surfaces,
        complements,
        provenance: Provenance {
            invariants: Source::Engine,
            pi1: if model_dependent { Source::ModelDependent } else { Source::Engine },
        },
        notes,
    })
}

fn torus_killers(b: &Block, label: &str) -> Result<Vec<Word>, SumError> {
    let s = b.surface(label).ok_or_else(|| SumError::MissingSurface {
        side: Side::Left,
        block: b.name.clone(),
        label: label.to_string(),
    })?;
    if s.genus != 1 || s.self_intersection != 0 {
        return Err(SumError::NotTorus { label: label.to_string() });
    }
    s.inclusion.clone().ok_or_else(|| SumError::MissingInclusion(label.to_string()))
}

/// `pi1(B)/N(T)` for a square-zero torus `T` in `B`.
pub fn torus_quotient(b: &Block, label: &str) -> Result<Presentation, SumError> {
    let k = torus_killers(b, label)?;
    Ok(quotient_by_normal_closure(&b.pi1, &k)?)
}

/// The two factors `pi1(B)/N(T_B)` and `pi1(C)/N(T_C)` of a sum routed
/// through a middle piece whose two-torus complement is simply connected.
pub fn free_product_rule_factors(b: &Block, c: &Block, tb: &str, tc: &str) -> Result<(Presentation, Presentation), SumError> {
    Ok((torus_quotient(b, tb)?, torus_quotient(c, tc)?))
}

/// Free product of the two factors of [`free_product_rule_factors`].
pub fn free_product_rule(b: &Block, c: &Block, tb: &str, tc: &str) -> Result<Presentation, SumError> {
    let (l, r) = free_product_rule_factors(b, c, tb, tc)?;
    Ok(free_product(&l, &r).0)
}

/// A configuration of surfaces meeting transversally in double points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionConfig {
    /// `(genus, self_intersection)` per component.
    components: Vec<(u32, i64)>,
    pairings: Vec<Vec<u32>>,
}

#[allow(clippy::needless_range_loop)]
impl IntersectionConfig {
    pub fn new(components: Vec<(u32, i64)>, pairings: Vec<Vec<u32>>) -> Result<Self, SumError> {
        let c = components.len();
        if c == 0 {
            return Err(SumError::BadConfiguration("no components".into()));
        }
        if pairings.len() != c || pairings.iter().any(|r| r.len() != c) {
            return Err(SumError::BadConfiguration(format!("pairing matrix must be {c}x{c}")));
        }
        for i in 0..c {
            if pairings[i][i] != 0 {
                return Err(SumError::BadConfiguration("nonzero diagonal".into()));
            }
            for j in 0..i {
                if pairings[i][j] != pairings[j][i] {
                    return Err(SumError::BadConfiguration("pairing matrix not symmetric".into()));
                }
            }
        }
        Ok(IntersectionConfig { components, pairings })
    }

    /// Fibers of genus `fiber_genus` each meeting one section once.
    pub fn fibers_and_section(fibers: usize, fiber_genus: u32, section_square: i64) -> Self {
        let c = fibers + 1;
        let mut components = alloc::vec![(fiber_genus, 0); fibers];
        components.push((0, section_square));
        let mut pairings = alloc::vec![alloc::vec![0; c]; c];
        for i in 0..fibers {
            pairings[i][fibers] = 1;
            pairings[fibers][i] = 1;
        }
        IntersectionConfig { components, pairings }
    }

    pub fn components(&self) -> &[(u32, i64)] {
        &self.components
    }

    pub fn pairing(&self, i: usize, j: usize) -> u32 {
        self.pairings[i][j]
    }

    /// Total number of double points.
    pub fn double_points(&self) -> u64 {
        let c = self.components.len();
        (0..c)
            .flat_map(|i| (i + 1..c).map(move |j| (i, j)))
            .map(|(i, j)| u64::from(self.pairings[i][j]))
            .sum()
    }

    pub fn is_connected(&self) -> bool {
        let c = self.components.len();
        let mut seen = alloc::vec![false; c];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(i) = queue.pop_front() {
            for j in 0..c {
                if self.pairings[i][j] > 0 && !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Smooths every double point: `(genus, self_intersection)` of the result.
pub fn resolve_intersections(cfg: &IntersectionConfig) -> Result<(u32, i64), SumError> {
    if !cfg.is_connected() {
        return Err(SumError::Disconnected);
    }
    let c = cfg.components.len() as i64;
    let d = cfg.double_points() as i64;
    let genus_sum: i64 = cfg.components.iter().map(|&(g, _)| i64::from(g)).sum();
    let square_sum: i64 = cfg.components.iter().map(|&(_, s)| s).sum();
    let genus = genus_sum + d - c + 1;
    Ok((u32::try_from(genus).expect("connected configuration has genus >= 0"), square_sum + 2 * d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::{block, validate, CatalogKind};
    use crate::fpgroup::{abelianization, AbelianInvariants};

    fn cat(k: CatalogKind) -> Block {
        block(&k).unwrap()
    }

    #[test]
    fn s11_double_is_block_a() {
        let s = cat(CatalogKind::S11);
        let g = GluingSpec::new("F", "F")
            .carry(Side::Left, "T", Some("T1"))
            .carry(Side::Right, "T", Some("T2"));
        let a = fiber_sum(&s, &s, &g).unwrap();
        assert_eq!((a.chi, a.sigma), (50, -30));
        assert!(validate(&a).passed());
        let link = &a.complements[0];
        assert_eq!(link.removed, ["T1", "T2"]);
        assert_eq!(link.group, Presentation::trivial());
        assert_eq!(a.provenance.pi1, Source::Engine);
    }

    #[test]
    fn thurston_plus_product_is_elbow() {
        for n in 1..=6u32 {
            let y = cat(CatalogKind::Thurston);
            let p = cat(CatalogKind::ProductTorus(n - 1));
            let g = GluingSpec::new("T", "F").connect("D", "S", "D").carry(Side::Left, "T'", None);
            let e = fiber_sum(&y, &p, &g).unwrap();
            assert_eq!((e.chi, e.sigma), (0, 0));
            assert_eq!(e.surface("D").unwrap().genus, n);
            assert_eq!(abelianization(&e.pi1), AbelianInvariants::free(2 * n as usize + 1));
        }
    }

    #[test]
    fn elbow_sixteen_with_stipsicz_one() {
        let e = cat(CatalogKind::Elbow(16));
        let x = cat(CatalogKind::Stipsicz(1));
        let z = fiber_sum(&e, &x, &GluingSpec::new("D", "F")).unwrap();
        assert_eq!(z.chi, 327);
        assert_eq!(z.chi, 75 + 240 + 12);
    }

    #[test]
    fn connected_surface_genus_and_square() {
        for n in 0..4u32 {
            let e = cat(CatalogKind::Elbow(15 * n + 1));
            let x = cat(CatalogKind::Stipsicz(n));
            let z = fiber_sum(&e, &x, &GluingSpec::new("D", "F").connect("T", "T", "K")).unwrap();
            let k = z.surface("K").unwrap();
            assert_eq!(k.genus, n + 3);
            assert_eq!(k.self_intersection, -(i64::from(n) + 1));
        }
    }

    #[test]
    fn genus_mismatch_rejected() {
        let s = cat(CatalogKind::S11);
        let err = fiber_sum(&s, &s, &GluingSpec::new("T", "F")).unwrap_err();
        assert_eq!(
            err,
            SumError::GenusMismatch { left: "T".into(), right: "F".into(), left_genus: 1, right_genus: 2 }
        );
    }

    #[test]
    fn squares_must_be_opposite() {
        let x = cat(CatalogKind::Stipsicz(1));
        let err = fiber_sum(&x, &x, &GluingSpec::new("T", "T")).unwrap_err();
        assert!(matches!(err, SumError::SquaresNotOpposite { left_square: -2, .. }));
    }

    #[test]
    fn connect_requires_single_transverse_point() {
        let s = cat(CatalogKind::S11);
        let err = fiber_sum(&s, &s, &GluingSpec::new("F", "F").connect("T", "T", "K")).unwrap_err();
        assert_eq!(err, SumError::ConnectNotTransverse { label: "T".into(), count: 0 });
    }

    #[test]
    fn carried_surface_must_miss_gluing_surface() {
        let e = cat(CatalogKind::Elliptic(2));
        let err = fiber_sum(&e, &e, &GluingSpec::new("F", "F").carry(Side::Left, "S", None)).unwrap_err();
        assert_eq!(err, SumError::CarriedMeetsGluing { label: "S".into() });
        let err = fiber_sum(&e, &e, &GluingSpec::new("F", "F").carry(Side::Left, "Q", None)).unwrap_err();
        assert!(matches!(err, SumError::MissingSurface { .. }));
    }

    #[test]
    fn elliptic_fiber_sum_adds() {
        let e1 = cat(CatalogKind::Elliptic(1));
        let e2 = cat(CatalogKind::Elliptic(2));
        let e3 = fiber_sum(&e1, &e2, &GluingSpec::new("F", "F")).unwrap();
        assert_eq!((e3.chi, e3.sigma), (36, -24));
    }

    #[test]
    fn basis_validation() {
        assert!(BasisIdentification(alloc::vec![1, 1]).check(2).is_err());
        assert!(BasisIdentification(alloc::vec![2, -1]).check(2).is_ok());
        assert_eq!(BasisIdentification::all(2).len(), 8);
        let b = BasisIdentification(alloc::vec![-2, 1]);
        assert_eq!(b.inverse(), BasisIdentification(alloc::vec![2, -1]));
        assert_eq!(b.inverse().inverse(), b);
    }

    #[test]
    fn fallback_is_flagged() {
        let t = cat(CatalogKind::ProductTorus(1));
        let mut noncomp = t.clone();
        noncomp.complements.clear();
        let s = fiber_sum(&noncomp, &t, &GluingSpec::new("F", "F")).unwrap();
        assert_eq!(s.provenance.pi1, Source::ModelDependent);
        assert!(s.notes.iter().any(|n| n.contains("meridian set trivial")));
    }

    #[test]
    fn free_product_rule_with_prescribed_group() {
        let p: Presentation = "<x, y | x^2, y^3>".parse().unwrap();
        let mg = cat(CatalogKind::PrescribedGroup(p.clone()));
        let e = cat(CatalogKind::Elliptic(1));
        assert_eq!(free_product_rule(&mg, &e, "T0", "F").unwrap(), p);
    }

    #[test]
    fn free_product_rule_simply_connected_sides() {
        let e = cat(CatalogKind::Elliptic(1));
        assert_eq!(free_product_rule(&e, &e, "F", "F").unwrap(), Presentation::trivial());
    }

    #[test]
    fn free_product_rule_product_torus() {
        let e = cat(CatalogKind::Elliptic(1));
        // T^2 x S^2: the fiber carries all of pi1.
        let t0 = cat(CatalogKind::ProductTorus(0));
        let q = free_product_rule(&t0, &e, "F", "F").unwrap();
        assert_eq!(abelianization(&q), AbelianInvariants::trivial());
        // T^4: the base torus survives.
        let t1 = cat(CatalogKind::ProductTorus(1));
        let q = free_product_rule(&t1, &e, "F", "F").unwrap();
        assert_eq!(abelianization(&q), AbelianInvariants::free(2));
    }

    #[test]
    fn free_product_rule_rejects_non_torus() {
        let s = cat(CatalogKind::S11);
        assert_eq!(
            free_product_rule(&s, &s, "F", "T").unwrap_err(),
            SumError::NotTorus { label: "F".into() }
        );
    }

    #[test]
    fn resolve_three_fibers_and_section() {
        let cfg = IntersectionConfig::fibers_and_section(3, 1, -5);
        assert_eq!(resolve_intersections(&cfg).unwrap(), (3, 1));
    }

    #[test]
    fn resolve_single_component_is_identity() {
        let cfg = IntersectionConfig::new(alloc::vec![(4, -7)], alloc::vec![alloc::vec![0]]).unwrap();
        assert_eq!(resolve_intersections(&cfg).unwrap(), (4, -7));
    }

    #[test]
    fn resolve_two_tori() {
        let cfg = IntersectionConfig::new(alloc::vec![(1, 0), (1, 0)], alloc::vec![alloc::vec![0, 1], alloc::vec![1, 0]]).unwrap();
        let (g, s) = resolve_intersections(&cfg).unwrap();
        // Euler characteristic of the smoothed union: 0 + 0 - 2 = 2 - 2g.
        assert_eq!(2 - 2 * i64::from(g), -2);
        assert_eq!((g, s), (2, 2));
    }

    #[test]
    fn resolve_rejects_disconnected() {
        let cfg = IntersectionConfig::new(alloc::vec![(1, 0), (1, 0)], alloc::vec![alloc::vec![0, 0], alloc::vec![0, 0]]).unwrap();
        assert_eq!(resolve_intersections(&cfg), Err(SumError::Disconnected));
        assert!(IntersectionConfig::new(alloc::vec![(0, 0), (0, 0)], alloc::vec![alloc::vec![0, 1], alloc::vec![2, 0]]).is_err());
    }
}
