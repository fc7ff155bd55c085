//! Built-in algebras by name, and resolution of `--algebra` / fixture values.
//!
//! Names: `bs:n,r,p` (only `n = 2` has relations), `square`, `bipartite-a3`
//! (alias `bipartite`), `linear:n`, `field`, `concealed:<target>`. Anything
//! ending in `.dsl` or containing a path separator is read as a DSL file.

use std::path::{Path, PathBuf};

use crate::borel_schur::borel_schur_presentation_n2;
use crate::certificate::{concealed_target, CONCEALED_TARGETS};
use crate::dsl::parse_presentation;
use crate::error::{Error, Result};
use crate::quiver::Presentation;

pub const SQUARE: &str = "\
vertices: 1 2 3 4
arrow a: 1 -> 2
arrow b: 1 -> 3
arrow m: 2 -> 4
arrow n: 3 -> 4
rel a*m - b*n
";

pub const BIPARTITE_A3: &str = "\
vertices: 1 2 3 4
arrow a1: 1 -> 2
arrow a2: 3 -> 2
arrow a3: 3 -> 4
";

/// Linearly oriented `A_n` without relations: `1 -> 2 -> ... -> n`.
pub fn linear_presentation(n: usize) -> Result<Presentation> {
    if n == 0 {
        return Err(Error::Invalid("linear:n needs n >= 1".into()));
    }
    let mut text = String::from("vertices:");
    for v in 1..=n {
        text.push_str(&format!(" {v}"));
    }
    text.push('\n');
    for v in 1..n {
        text.push_str(&format!("arrow a{v}: {v} -> {}\n", v + 1));
    }
    parse_presentation(&text)
}

fn parse_usizes(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|x| x.trim().parse::<u64>().map_err(|_| Error::Invalid(format!("bad number `{x}`"))))
        .collect()
}

pub fn named_presentation(name: &str) -> Result<Presentation> {
    let name = name.trim();
    if let Some(rest) = name.strip_prefix("bs:") {
        let v = parse_usizes(rest)?;
        return match v.as_slice() {
            [2, r, p] => borel_schur_presentation_n2(*r as usize, *p),
            [_, _, _] => Err(Error::Invalid("relations are only available for n = 2".into())),
            _ => Err(Error::Invalid("expected bs:n,r,p".into())),
        };
    }
    if let Some(rest) = name.strip_prefix("linear:") {
        let v = parse_usizes(rest)?;
        return match v.as_slice() {
            [n] => linear_presentation(*n as usize),
            _ => Err(Error::Invalid("expected linear:n".into())),
        };
    }
    if let Some(rest) = name.strip_prefix("concealed:") {
        let (_, text) = concealed_target(rest).ok_or_else(|| {
            let known: Vec<&str> = CONCEALED_TARGETS.iter().map(|t| t.0).collect();
            Error::Invalid(format!("unknown concealed target `{rest}` (known: {})", known.join(", ")))
        })?;
        return parse_presentation(text);
    }
    match name {
        "square" => parse_presentation(SQUARE),
        "bipartite-a3" | "bipartite" => parse_presentation(BIPARTITE_A3),
        "field" => parse_presentation("vertices: 0\n"),
        _ => Err(Error::Invalid(format!("unknown algebra `{name}`"))),
    }
}

pub fn is_path_like(name: &str) -> bool {
    name.ends_with(".dsl") || name.contains('/') || name.contains(std::path::MAIN_SEPARATOR)
}

/// A name or a DSL path; relative paths are taken from `base`.
pub fn resolve_presentation(name: &str, base: Option<&Path>) -> Result<Presentation> {
    if is_path_like(name) {
        let p = PathBuf::from(name);
        let p = match base {
            Some(b) if p.is_relative() => b.join(p),
            _ => p,
        };
        let text = std::fs::read_to_string(&p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
        parse_presentation(&text)
    } else {
        named_presentation(name)
    }
}

/// `(r, p)` when the name is `bs:2,r,p`.
pub fn borel_schur_params(name: &str) -> Option<(usize, u64)> {
    let v = parse_usizes(name.trim().strip_prefix("bs:")?).ok()?;
    match v.as_slice() {
        [2, r, p] => Some((*r as usize, *p)),
        _ => None,
    }
}
