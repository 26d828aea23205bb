//! Evaluation of construction files.

use std::collections::BTreeMap;

use fibersum_core::blocks::{Block, Catalog, CatalogKind, MarkedSurface, StandardCatalog};
use fibersum_core::constructions::Pipeline;
use fibersum_core::geography::point;
use fibersum_core::sumcalc::{fiber_sum, resolve_intersections, BasisIdentification, GluingSpec, IntersectionConfig, Side};
use fibersum_core::Presentation;

use crate::dsl::{Call, ConstructionFile, Pos, ReportKind, Statement, Value};
use crate::family::{csv_string, geography_rows};
use crate::report::{block_report, group_report};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{pos}: step '{step}': {message}")]
pub struct EvalError {
    pub pos: Pos,
    pub step: String,
    pub message: String,
}

type Res<T> = Result<T, String>;

fn int(v: &Value, what: &str) -> Res<i64> {
    match v {
        Value::Int(i) => Ok(*i),
        other => Err(format!("{what}: expected integer, found {other}")),
    }
}

fn nat(v: &Value, what: &str) -> Res<u32> {
    let i = int(v, what)?;
    u32::try_from(i).map_err(|_| format!("{what}: {i} is not a nonnegative integer"))
}

fn ident<'a>(v: &'a Value, what: &str) -> Res<&'a str> {
    match v {
        Value::Ident(s) => Ok(s),
        other => Err(format!("{what}: expected name, found {other}")),
    }
}

fn pres<'a>(v: &'a Value, what: &str) -> Res<&'a Presentation> {
    match v {
        Value::Pres(p) => Ok(p),
        other => Err(format!("{what}: expected presentation, found {other}")),
    }
}

fn arity(c: &Call, n: usize) -> Res<()> {
    if c.args.len() == n {
        Ok(())
    } else {
        Err(format!("{} takes {n} arguments, got {}", c.op, c.args.len()))
    }
}

pub struct Evaluator<C: Catalog = StandardCatalog> {
    pipeline: Pipeline<C>,
    blocks: BTreeMap<String, Block>,
}

impl Default for Evaluator<StandardCatalog> {
    fn default() -> Self {
        Evaluator::new(Pipeline::standard())
    }
}

impl<C: Catalog> Evaluator<C> {
    pub fn new(pipeline: Pipeline<C>) -> Self {
        Evaluator { pipeline, blocks: BTreeMap::new() }
    }

    pub fn block(&self, name: &str) -> Option<&Block> {
        self.blocks.get(name)
    }

    fn lookup(&self, v: &Value) -> Res<&Block> {
        let name = ident(v, "block")?;
        self.blocks.get(name).ok_or_else(|| format!("unknown block '{name}'"))
    }

    fn catalog(&self, kind: CatalogKind) -> Res<Block> {
        self.pipeline.catalog.block(&kind).map_err(|e| e.to_string())
    }

    fn call(&self, name: &str, c: &Call) -> Res<Block> {
        let a = &c.args;
        let one = |what| -> Res<u32> {
            arity(c, 1)?;
            nat(&a[0], what)
        };
        let pe = |e: fibersum_core::constructions::ConstructionError| e.to_string();
        match c.op.as_str() {
            "elliptic" => self.catalog(CatalogKind::Elliptic(one("n")?)),
            "stipsicz" => self.catalog(CatalogKind::Stipsicz(one("n")?)),
            "elbow" => self.catalog(CatalogKind::Elbow(one("n")?)),
            "product_torus" => self.catalog(CatalogKind::ProductTorus(one("g")?)),
            "s11" => {
                arity(c, 0)?;
                self.catalog(CatalogKind::S11)
            }
            "thurston" => {
                arity(c, 0)?;
                self.catalog(CatalogKind::Thurston)
            }
            "mg" => {
                arity(c, 1)?;
                self.catalog(CatalogKind::PrescribedGroup(pres(&a[0], "group")?.clone()))
            }
            "build_a" => {
                arity(c, 0)?;
                self.pipeline.build_a().map_err(pe)
            }
            "build_z" => self.pipeline.build_z(one("n")?).map_err(pe),
            "build_v" => self.pipeline.build_v(one("n")?).map_err(pe),
            "build_w" => self.pipeline.build_w(one("n")?).map_err(pe),
            "elliptic_with_j" => self.pipeline.elliptic_with_j(one("n")?).map_err(pe),
            "build_mgn" => {
                arity(c, 2)?;
                let r = self.pipeline.build_mgn(pres(&a[0], "group")?, nat(&a[1], "n")?).map_err(pe)?;
                if !r.matches {
                    return Err(format!(
                        "engine ({}, {}) differs from closed form ({}, {})",
                        r.block.chi, r.block.sigma, r.formula_chi, r.formula_sigma
                    ));
                }
                Ok(r.block)
            }
            "fiber_sum" => self.fiber_sum(name, c),
            "resolve" => self.resolve(name, c),
            other => Err(format!("unknown operation '{other}'")),
        }
    }

    fn fiber_sum(&self, name: &str, c: &Call) -> Res<Block> {
        if c.args.len() < 4 {
            return Err("fiber_sum needs two blocks and two surface labels".into());
        }
        let x = self.lookup(&c.args[0])?;
        let y = self.lookup(&c.args[1])?;
        let mut g = GluingSpec::new(ident(&c.args[2], "left surface")?, ident(&c.args[3], "right surface")?).named(name);
        for opt in &c.args[4..] {
            let Value::Call(o) = opt else {
                return Err(format!("unexpected argument {opt}"));
            };
            match o.op.as_str() {
                "carry" => {
                    if !(2..=3).contains(&o.args.len()) {
                        return Err("carry takes a side, a label and an optional new label".into());
                    }
                    let side = match ident(&o.args[0], "side")? {
                        "left" => Side::Left,
                        "right" => Side::Right,
                        s => return Err(format!("side must be left or right, found {s}")),
                    };
                    let rename = o.args.get(2).map(|v| ident(v, "new label")).transpose()?;
                    g = g.carry(side, ident(&o.args[1], "label")?, rename);
                }
                "connect" => {
                    arity(o, 3)?;
                    g = g.connect(ident(&o.args[0], "left")?, ident(&o.args[1], "right")?, ident(&o.args[2], "label")?);
                }
                "basis" => {
                    let v = o
                        .args
                        .iter()
                        .map(|v| int(v, "basis").and_then(|i| i32::try_from(i).map_err(|_| "basis entry too large".to_string())))
                        .collect::<Res<Vec<i32>>>()?;
                    g = g.basis(BasisIdentification(v));
                }
                "name" => {
                    arity(o, 1)?;
                    g = g.named(ident(&o.args[0], "name")?);
                }
                other => return Err(format!("unknown fiber_sum option '{other}'")),
            }
        }
        fiber_sum(x, y, &g).map_err(|e| e.to_string())
    }

    fn resolve(&self, name: &str, c: &Call) -> Res<Block> {
        if c.args.len() < 3 {
            return Err("resolve needs a block, a new label and at least one surface".into());
        }
        let mut b = self.lookup(&c.args[0])?.clone();
        let label = ident(&c.args[1], "label")?.to_string();
        if b.surface(&label).is_some() {
            return Err(format!("surface '{label}' already exists"));
        }
        let mut parts: Vec<(&MarkedSurface, u32)> = Vec::new();
        for v in &c.args[2..] {
            let (s, k) = match v {
                Value::Ident(s) => (s.as_str(), 1),
                Value::Call(o) if o.op == "copies" => {
                    arity(o, 2)?;
                    (ident(&o.args[0], "surface")?, nat(&o.args[1], "copies")?)
                }
                other => return Err(format!("unexpected argument {other}")),
            };
            let surf = b.surface(s).ok_or_else(|| format!("no surface '{s}' in {}", b.name))?;
            if k > 1 && surf.self_intersection != 0 {
                return Err(format!("parallel copies of {s} need square 0"));
            }
            parts.push((surf, k));
        }
        let mut components = Vec::new();
        let mut owner = Vec::new();
        for (i, (s, k)) in parts.iter().enumerate() {
            for _ in 0..*k {
                components.push((s.genus, s.self_intersection));
                owner.push(i);
            }
        }
        let m = components.len();
        let mut pairings = vec![vec![0u32; m]; m];
        for i in 0..m {
            for j in 0..m {
                if owner[i] != owner[j] {
                    pairings[i][j] = parts[owner[i]].0.meets(&parts[owner[j]].0.label);
                }
            }
        }
        let cfg = IntersectionConfig::new(components, pairings).map_err(|e| e.to_string())?;
        let (genus, square) = resolve_intersections(&cfg).map_err(|e| e.to_string())?;
        let null = parts.iter().all(|(s, _)| s.inclusion.as_ref().is_some_and(|w| w.iter().all(|w| w.is_identity())));
        let mut surface = MarkedSurface::new(label.clone(), genus, square);
        if null {
            surface = surface.null_homotopic();
        }
        let used: Vec<String> = parts.iter().map(|(s, k)| format!("{}x{k}", s.label)).collect();
        b.add_surface(surface);
        b.notes.push(format!("{label}: resolved from {}", used.join(" + ")));
        b.name = name.to_string();
        Ok(b)
    }

    fn report(&self, kind: ReportKind, args: &[Value]) -> Res<String> {
        match kind {
            ReportKind::Invariants => {
                arity_slice(args, 1)?;
                Ok(block_report(self.lookup(&args[0])?))
            }
            ReportKind::Group => {
                arity_slice(args, 1)?;
                let b = self.lookup(&args[0])?;
                Ok(group_report(&b.name, &b.pi1))
            }
            ReportKind::Geography => {
                arity_slice(args, 1)?;
                let p = point(self.lookup(&args[0])?).map_err(|e| e.to_string())?;
                Ok(format!("{p}\n"))
            }
            ReportKind::Csv => {
                if !(3..=4).contains(&args.len()) || ident(&args[0], "family")? != "theorem1" {
                    return Err("usage: report csv theorem1 <n_min> <n_max> [<presentation>]".into());
                }
                let (n_min, n_max) = (nat(&args[1], "n_min")?, nat(&args[2], "n_max")?);
                let group = match args.get(3) {
                    Some(v) => pres(v, "group")?.clone(),
                    None => Presentation::trivial(),
                };
                let name = if group.generator_count() == 0 { "trivial".to_string() } else { group.to_string() };
                let rows = geography_rows(&self.pipeline, n_min, n_max, &[(name, group)]).map_err(|e| e.to_string())?;
                Ok(csv_string(&rows))
            }
        }
    }

    /// Runs every statement in order, returning the concatenated reports.
    pub fn run(&mut self, file: &ConstructionFile) -> Result<String, EvalError> {
        let mut out = String::new();
        for s in &file.statements {
            match &s.statement {
                Statement::Let { name, call } => {
                    let b = self.call(name, call).map_err(|message| EvalError { pos: s.pos, step: name.clone(), message })?;
                    self.blocks.insert(name.clone(), b);
                }
                Statement::Report { kind, args } => {
                    let text = self.report(*kind, args).map_err(|message| EvalError {
                        pos: s.pos,
                        step: "report".into(),
                        message,
                    })?;
                    out.push_str(&text);
                }
            }
        }
        Ok(out)
    }
}

fn arity_slice(args: &[Value], n: usize) -> Res<()> {
    if args.len() == n {
        Ok(())
    } else {
        Err(format!("expected {n} arguments, got {}", args.len()))
    }
}

pub fn evaluate(file: &ConstructionFile) -> Result<String, EvalError> {
    Evaluator::default().run(file)
}
