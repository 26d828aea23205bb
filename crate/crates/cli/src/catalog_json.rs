//! JSON export of catalog entries with per-field provenance.

use fibersum_core::blocks::{block, provenance_table, validate, Block, CatalogError, CatalogKind};
use fibersum_core::fpgroup::abelianization;
use fibersum_core::Presentation;
use serde_json::{json, Value};

use crate::report::INLINE_GENERATORS;

pub fn kinds(n: u32) -> Vec<CatalogKind> {
    vec![
        CatalogKind::Elliptic(n.max(1)),
        CatalogKind::Stipsicz(n),
        CatalogKind::Elbow(n.max(1)),
        CatalogKind::S11,
        CatalogKind::ProductTorus(n),
        CatalogKind::Thurston,
        CatalogKind::PrescribedGroup(Presentation::trivial()),
    ]
}

pub fn block_json(kind: &CatalogKind, b: &Block) -> Value {
    let pi1 = if b.pi1.generator_count() <= INLINE_GENERATORS {
        json!(b.pi1.to_string())
    } else {
        json!({ "generators": b.pi1.generator_count(), "relators": b.pi1.relator_count() })
    };
    let provenance: serde_json::Map<String, Value> =
        provenance_table(b).into_iter().map(|f| (f.field.to_string(), json!(f.source.as_str()))).collect();
    let surfaces: Vec<Value> = b
        .surfaces
        .values()
        .map(|s| {
            json!({
                "label": s.label,
                "genus": s.genus,
                "square": s.self_intersection,
                "symplectic": s.symplectic,
                "inclusion": s.inclusion.as_ref().map(|w| w.iter().map(|w| b.pi1.show(w)).collect::<Vec<_>>()),
                "meets": s.meets,
            })
        })
        .collect();
    let complements: Vec<Value> = b
        .complements
        .iter()
        .map(|l| json!({ "removed": l.removed, "model_dependent": l.model_dependent }))
        .collect();
    json!({
        "kind": kind.to_string(),
        "name": b.name,
        "chi": b.chi,
        "sigma": b.sigma,
        "pi1": pi1,
        "h1": abelianization(&b.pi1).to_string(),
        "provenance": provenance,
        "surfaces": surfaces,
        "complements": complements,
        "notes": b.notes,
        "valid": validate(b).passed(),
    })
}

pub fn export(n: u32) -> Result<Value, CatalogError> {
    let mut out = Vec::new();
    for k in kinds(n) {
        let b = block(&k)?;
        out.push(block_json(&k, &b));
    }
    Ok(Value::Array(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn export_lists_every_kind() {
        let v = export(1).unwrap();
        let arr = v.as_array().unwrap();
        assert_eq!(arr.len(), 7);
        assert_eq!(arr[0]["chi"], 12);
        assert_eq!(arr[0]["provenance"]["chi"], "derived");
        assert_eq!(arr[1]["provenance"]["complements"], "modeled");
        assert!(arr.iter().all(|b| b["valid"] == true));
    }
}
