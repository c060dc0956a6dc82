//! TOML documents for finite i-posets and update spaces.
//!
//! ```toml
//! kind = "iposet"
//! elements = ["Ω", "False", "True"]
//! le = [["Ω", "False"], ["Ω", "True"]]
//! identical = [["Ω", "False"], ["Ω", "True"]]
//! merge = "join"
//! ```
//!
//! Reflexive pairs are implied. `merge` is either `"join"` or a complete
//! list of `[a, b, a ⊕ b]` triples (symmetric entries implied); without it
//! the i-poset has no merge.
//!
//! ```toml
//! kind = "update-space"
//! states = ["s", "t"]
//! updates = ["o", "a"]
//! le = [["o", "a"]]
//! merge = "join"
//! interp = [["o", "s", "s"], ["a", "s", "t"], ["a", "t", "t"]]
//! ```
//!
//! `interp` lists `[u, s, ⟦u⟧(s)]`; missing pairs are undefined. Without
//! `merge` only `u ⊕ u = u` is defined.

use pslens_core::iposet::{FiniteIPoset, IPoset, IPosetError, Point};
use pslens_core::recipe::{SpaceError, UpdateSpace};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum PosetFormatError {
    #[error("{0}")]
    Toml(#[from] toml::de::Error),
    #[error("`kind` must be \"iposet\" or \"update-space\"")]
    UnknownKind,
    #[error("merge must be \"join\" or a list of triples")]
    BadMerge,
    #[error("{0}")]
    IPoset(#[from] IPosetError),
    #[error("{0}")]
    Space(#[from] SpaceError),
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(untagged)]
enum MergeSpec {
    Named(String),
    Table(Vec<[String; 3]>),
}

#[derive(Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct Doc {
    kind: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    elements: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    states: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    updates: Vec<String>,
    #[serde(default)]
    le: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    identical: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    merge: Option<MergeSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    interp: Vec<[String; 3]>,
}

/// A parsed structure.
#[derive(Clone, Debug)]
pub enum Structure {
    IPoset(FiniteIPoset),
    Space(UpdateSpace),
}

pub fn parse_structure(text: &str) -> Result<Structure, PosetFormatError> {
    let doc: Doc = toml::from_str(text)?;
    match doc.kind.as_str() {
        "iposet" => parse_iposet(doc).map(Structure::IPoset),
        "update-space" => parse_space(doc).map(Structure::Space),
        _ => Err(PosetFormatError::UnknownKind),
    }
}

fn parse_iposet(doc: Doc) -> Result<FiniteIPoset, PosetFormatError> {
    let mut b = FiniteIPoset::builder(doc.elements);
    for [x, y] in &doc.le {
        b = b.le(x, y);
    }
    for [x, y] in &doc.identical {
        b = b.identical(x, y);
    }
    match doc.merge {
        None => {}
        Some(MergeSpec::Named(n)) if n == "join" => b = b.join_merge(),
        Some(MergeSpec::Named(_)) => return Err(PosetFormatError::BadMerge),
        Some(MergeSpec::Table(rows)) => {
            b = b.with_merge();
            for [x, y, z] in &rows {
                b = b.merge(x, y, z);
            }
        }
    }
    Ok(b.build()?)
}

fn parse_space(doc: Doc) -> Result<UpdateSpace, PosetFormatError> {
    let mut b = UpdateSpace::builder(doc.states, doc.updates.clone());
    for [x, y] in &doc.le {
        b = b.le(x, y);
    }
    match doc.merge {
        None => {}
        Some(MergeSpec::Named(n)) if n == "join" => b = b.join_merge(),
        Some(MergeSpec::Named(_)) => return Err(PosetFormatError::BadMerge),
        Some(MergeSpec::Table(rows)) => {
            for u in &doc.updates {
                b = b.no_merge(u, u);
            }
            for [x, y, z] in &rows {
                b = b.merge(x, y, z);
            }
        }
    }
    for [u, s, t] in &doc.interp {
        b = b.interp(u, s, t);
    }
    Ok(b.build()?)
}

fn render(doc: &Doc) -> String {
    toml::to_string(doc).expect("documents are plain tables")
}

fn strict_pairs(pairs: impl Iterator<Item = (Point, Point)>, label: impl Fn(Point) -> String) -> Vec<[String; 2]> {
    pairs.filter(|(a, b)| a != b).map(|(a, b)| [label(a), label(b)]).collect()
}

pub fn write_iposet(p: &FiniteIPoset) -> String {
    let label = |x: Point| p.label(x).to_string();
    let merge = p.has_merge().then(|| {
        MergeSpec::Table(p.merge_triples().filter(|(a, b, _)| a.0 <= b.0).map(|(a, b, c)| [label(a), label(b), label(c)]).collect())
    });
    render(&Doc {
        kind: "iposet".into(),
        elements: p.labels().to_vec(),
        le: strict_pairs(p.le_pairs(), label),
        identical: strict_pairs(p.identical_pairs(), label),
        merge,
        ..Doc::default()
    })
}

pub fn write_space(us: &UpdateSpace) -> String {
    let (n, m) = (us.n_updates(), us.n_states());
    let u = |i: usize| us.updates()[i].clone();
    let s = |i: usize| us.states()[i].clone();
    let le = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| a != b && us.le_u(a, b)).map(|(a, b)| [u(a), u(b)]).collect();
    let merge = (0..n)
        .flat_map(|a| (a..n).map(move |b| (a, b)))
        .filter_map(|(a, b)| us.merge_u(a, b).map(|c| [u(a), u(b), u(c)]))
        .collect();
    let interp = (0..n)
        .flat_map(|a| (0..m).map(move |x| (a, x)))
        .filter_map(|(a, x)| us.interp(a, x).map(|y| [u(a), s(x), s(y)]))
        .collect();
    render(&Doc {
        kind: "update-space".into(),
        states: us.states().to_vec(),
        updates: us.updates().to_vec(),
        le,
        merge: Some(MergeSpec::Table(merge)),
        interp,
        ..Doc::default()
    })
}
