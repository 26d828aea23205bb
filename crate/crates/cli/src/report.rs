//! Plain-text block and group reports.

use std::fmt::Write;

use fibersum_core::blocks::Block;
use fibersum_core::fpgroup::{abelianization, is_presentation_trivial, tietze_simplify, Presentation, Triviality, Witness};
use fibersum_core::geography::point;

/// Presentations with at most this many generators are printed in full.
pub const INLINE_GENERATORS: usize = 12;

/// Tietze budget for group reports.
pub const GROUP_BUDGET: usize = 10_000;

fn summarize(p: &Presentation) -> String {
    if p.generator_count() <= INLINE_GENERATORS {
        p.to_string()
    } else {
        format!("{} generators, {} relators", p.generator_count(), p.relator_count())
    }
}

pub fn block_report(b: &Block) -> String {
    let mut out = String::new();
    let src = b.provenance;
    writeln!(out, "block {}", b.name).unwrap();
    writeln!(out, "  chi    {} [{}]", b.chi, src.invariants).unwrap();
    writeln!(out, "  sigma  {} [{}]", b.sigma, src.invariants).unwrap();
    match point(b) {
        Ok(p) => writeln!(out, "  chi_h  {}\n  c1^2   {}", p.chi_h, p.c1sq).unwrap(),
        Err(e) => writeln!(out, "  chi_h  not integral ({e})").unwrap(),
    }
    writeln!(out, "  pi1    {} [{}]", summarize(&b.pi1), src.pi1).unwrap();
    writeln!(out, "  H1     {}", abelianization(&b.pi1)).unwrap();
    for s in b.surfaces.values() {
        let images = match &s.inclusion {
            None => "unknown".to_string(),
            Some(w) if w.iter().all(|w| w.is_identity()) => "trivial".to_string(),
            Some(w) => w.iter().map(|w| b.pi1.show(w)).collect::<Vec<_>>().join(", "),
        };
        write!(out, "  surface {}: genus {}, square {}, inclusion {}", s.label, s.genus, s.self_intersection, images).unwrap();
        if !s.symplectic {
            out.push_str(", not symplectic");
        }
        for (other, count) in &s.meets {
            write!(out, ", meets {other} x{count}").unwrap();
        }
        out.push('\n');
    }
    for l in &b.complements {
        write!(out, "  complement {{{}}}: {}", l.removed.join(", "), summarize(&l.group)).unwrap();
        if l.model_dependent {
            out.push_str(" [model-dependent]");
        }
        out.push('\n');
    }
    for n in &b.notes {
        writeln!(out, "  note: {n}").unwrap();
    }
    out
}

pub fn triviality_line(t: &Triviality) -> String {
    match t {
        Triviality::CertifiedTrivial { moves } => format!("certified trivial ({moves} moves)"),
        Triviality::Unknown(Witness::Abelian(ab)) => format!("nontrivial: abelianization {ab}"),
        Triviality::Unknown(Witness::Residual { generators, relators, exhausted }) => format!(
            "unknown: {generators} generators and {relators} relators remain{}",
            if *exhausted { " (budget exhausted)" } else { "" }
        ),
    }
}

pub fn group_report(name: &str, p: &Presentation) -> String {
    let out = tietze_simplify(p, GROUP_BUDGET);
    let mut s = String::new();
    writeln!(s, "group {name}").unwrap();
    writeln!(s, "  input       {}", summarize(p)).unwrap();
    writeln!(s, "  simplified  {}", out.presentation).unwrap();
    writeln!(s, "  moves       {}{}", out.trace.len(), if out.exhausted { " (budget exhausted)" } else { "" }).unwrap();
    writeln!(s, "  H1          {}", abelianization(p)).unwrap();
    writeln!(s, "  triviality  {}", triviality_line(&is_presentation_trivial(p, GROUP_BUDGET))).unwrap();
    s
}
