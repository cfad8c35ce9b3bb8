//! Input resolution: bundled fixtures and knot/group/representation
//! specifications given as file paths or well-known names.

use std::fs;
use std::path::Path;

use serde::Deserialize;

use rtorsion::error::{Error, Result};
use rtorsion::groups::{Perm, PermGroup};
use rtorsion::knot::{wirtinger, MarkedPresentation, PDCode, Representation};

/// The inputs shipped with the binary.
pub const FIXTURES: &[(&str, &str)] = &[
    ("kt.json", include_str!("../fixtures/kt.json")),
    ("trefoil.json", include_str!("../fixtures/trefoil.json")),
    ("unknot.json", include_str!("../fixtures/unknot.json")),
    ("A4.json", include_str!("../fixtures/A4.json")),
    ("A5.json", include_str!("../fixtures/A5.json")),
    ("seifert-example.json", include_str!("../fixtures/seifert-example.json")),
];

pub fn fixture(name: &str) -> Option<&'static str> {
    FIXTURES
        .iter()
        .find(|(n, _)| *n == name || n.trim_end_matches(".json") == name)
        .map(|(_, c)| *c)
}

/// A file on disk wins over a bundled fixture of the same name.
fn read_spec(spec: &str) -> Result<String> {
    if Path::new(spec).is_file() {
        return fs::read_to_string(spec).map_err(|e| Error::Parse(format!("{spec}: {e}")));
    }
    fixture(spec)
        .map(str::to_string)
        .ok_or_else(|| Error::Parse(format!("no such file or bundled fixture: {spec}")))
}

#[derive(Deserialize)]
struct KnotFile {
    name: Option<String>,
    pd: String,
}

pub fn load_knot(spec: &str) -> Result<(String, MarkedPresentation)> {
    let text = read_spec(spec)?;
    let file: KnotFile =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{spec}: {e}")))?;
    let d = PDCode::parse(&file.pd)?;
    let name = file.name.unwrap_or_else(|| spec.to_string());
    Ok((name, wirtinger(&d)))
}

#[derive(Deserialize)]
struct GroupFile {
    name: Option<String>,
    degree: usize,
    generators: Vec<String>,
}

pub fn load_group(spec: &str) -> Result<(String, PermGroup)> {
    if spec == "trivial" {
        return Ok(("trivial".into(), PermGroup::trivial(1)));
    }
    let text = read_spec(spec)?;
    let file: GroupFile =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{spec}: {e}")))?;
    let gens = file
        .generators
        .iter()
        .map(|s| Perm::parse_cycles(s, file.degree))
        .collect::<Result<Vec<_>>>()?;
    let name = file.name.unwrap_or_else(|| spec.to_string());
    Ok((name, PermGroup::new(file.degree, gens)))
}

/// Named representations: `trivial-N` for any group, `A5-standard` for
/// the alternating group on five letters.
pub fn resolve_rep(name: &str, group: &PermGroup) -> Result<Representation> {
    if let Some(n) = name.strip_prefix("trivial-") {
        let n: usize = n
            .parse()
            .map_err(|_| Error::Parse(format!("bad representation dimension in {name}")))?;
        return Ok(Representation::trivial(group, n));
    }
    if name == "A5-standard" {
        if group.degree() != 5 || group.order() != 60 {
            return Err(Error::Parse(
                "A5-standard needs the alternating group on 5 letters".into(),
            ));
        }
        return Ok(Representation::a5_standard());
    }
    Err(Error::Parse(format!("unknown representation: {name}")))
}

/// The default representation compared in the obstruction search.
pub fn builtin_rep(group: &PermGroup) -> Option<Representation> {
    if group.degree() == 5 && group.order() == 60 {
        Some(Representation::a5_standard())
    } else {
        None
    }
}

pub fn parse_slope(s: &str) -> Result<(i64, i64)> {
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let p = p
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad slope: {s}")))?;
    let q = q
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad slope: {s}")))?;
    Ok((p, q))
}

pub fn parse_params(s: &str) -> Result<Vec<(i64, i64)>> {
    s.split(',').map(|f| parse_slope(f.trim())).collect()
}

pub fn parse_exponents(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad character exponents: {s}")))
        })
        .collect()
}
