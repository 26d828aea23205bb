//! Group arguments: builtin names, inline presentations, or files.

use std::fs;

use fibersum_core::Presentation;

/// The sample groups, by builtin name.
pub const BUILTINS: [(&str, &str); 5] = [
    ("trivial", "< | >"),
    ("cyclic", "<x | >"),
    ("z2", "<x, y | [x,y]>"),
    ("modular", "<x, y | x^2, y^3>"),
    ("surface2", "<a1, b1, a2, b2 | [a1,b1][a2,b2]>"),
];

pub fn builtins() -> Vec<(String, Presentation)> {
    BUILTINS
        .iter()
        .map(|(n, s)| (n.to_string(), s.parse().expect("builtin presentation")))
        .collect()
}

/// Resolves `all`, a builtin name, an inline `<...>` presentation, or a
/// file holding one presentation per line (`#` comments allowed).
pub fn resolve(spec: &str) -> Result<Vec<(String, Presentation)>, String> {
    if spec == "all" {
        return Ok(builtins());
    }
    if let Some((name, text)) = BUILTINS.iter().find(|(n, _)| *n == spec) {
        return Ok(vec![(name.to_string(), text.parse().expect("builtin presentation"))]);
    }
    if spec.trim_start().starts_with('<') {
        let p: Presentation = spec.parse().map_err(|e| format!("presentation: {e}"))?;
        return Ok(vec![(p.to_string(), p)]);
    }
    let text = fs::read_to_string(spec).map_err(|e| format!("{spec}: {e}"))?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let p: Presentation = line.parse().map_err(|e| format!("{spec}:{}: {e}", i + 1))?;
        out.push((p.to_string(), p));
    }
    if out.is_empty() {
        return Err(format!("{spec}: no presentations"));
    }
    Ok(out)
}

pub fn resolve_all(specs: &[String]) -> Result<Vec<(String, Presentation)>, String> {
    let mut out = Vec::new();
    for s in specs {
        out.extend(resolve(s)?);
    }
    Ok(out)
}
