//! JSON documents for posets, groups and presheaves.
//!
//! A poset is `{"elements": [...], "relations": [[low, high], ...]}`. A
//! presheaf is
//!
//! ```json
//! {"base": "c2.json", "mode": "presheaf",
//!  "groups": {"{p2}": {"rank": 1, "torsion": []}, ...},
//!  "maps": {"{p2,p3}->{p2}": [[1, 0]], ...}}
//! ```
//!
//! keyed by intersection-poset node names (mode `presheaf`) or by element
//! names (mode `diagram`, read as the sheaf the diagram generates). Maps sit
//! on Hasse edges `A->B` from the larger node or element to the smaller one,
//! as integer matrices with one row per target generator.

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::diagram::{Diagram, Presheaf};
use crate::error::{Error, Result};
use crate::homology::{CanonicalGroup, PresentedAbGroup};
use crate::poset::Poset;
use crate::{Int, Matrix};

#[derive(Deserialize, Serialize)]
struct PosetDoc {
    elements: Vec<String>,
    relations: Vec<(String, String)>,
}

pub fn parse_poset(text: &str) -> Result<Poset> {
    let doc: PosetDoc = serde_json::from_str(text)?;
    poset_from_doc(doc)
}

fn poset_from_doc(doc: PosetDoc) -> Result<Poset> {
    if doc.elements.is_empty() {
        return Err(Error::EmptyPoset);
    }
    Poset::from_named(&doc.elements, &doc.relations)
}

/// Canonical form: elements sorted by name, Hasse covers only.
pub fn poset_value(p: &Poset) -> Value {
    let mut elements: Vec<String> = p.names().to_vec();
    elements.sort();
    let mut relations: Vec<(String, String)> = p
        .covers()
        .into_iter()
        .map(|(hi, lo)| (p.name(lo).to_string(), p.name(hi).to_string()))
        .collect();
    relations.sort();
    serde_json::to_value(PosetDoc {
        elements,
        relations,
    })
    .expect("plain data serializes")
}

pub fn serialize_poset(p: &Poset) -> String {
    serde_json::to_string_pretty(&poset_value(p)).expect("plain data serializes")
}

#[derive(Deserialize)]
#[serde(untagged, deny_unknown_fields)]
enum GroupLiteral {
    Canonical {
        rank: usize,
        torsion: Vec<i64>,
    },
    Presented {
        generators: usize,
        relators: Vec<Vec<i64>>,
    },
}

/// Reads `{"rank", "torsion"}` or `{"generators", "relators"}`.
pub fn parse_group(v: &Value) -> Result<PresentedAbGroup> {
    let lit: GroupLiteral = serde_json::from_value(v.clone())
        .map_err(|_| Error::Document(format!("not a group literal: {v}")))?;
    match lit {
        GroupLiteral::Canonical { rank, torsion } => {
            if torsion.iter().any(|&d| d < 2) {
                return Err(Error::Document(format!(
                    "torsion orders must be at least 2: {v}"
                )));
            }
            Ok(PresentedAbGroup::from_canonical(
                &CanonicalGroup::from_diagonal(rank, torsion.into_iter().map(Int::from)),
            ))
        }
        GroupLiteral::Presented {
            generators,
            relators,
        } => {
            let cols: Vec<Vec<Int>> = relators
                .into_iter()
                .map(|r| r.into_iter().map(Int::from).collect())
                .collect();
            if cols.iter().any(|c| c.len() != generators) {
                return Err(Error::Document(format!(
                    "each relator needs {generators} entries: {v}"
                )));
            }
            PresentedAbGroup::new(generators, Matrix::from_columns(&cols, generators)?)
        }
    }
}

pub fn group_value(g: &PresentedAbGroup) -> Value {
    let relators: Vec<Vec<String>> = g
        .relations()
        .columns()
        .map(|c| c.iter().map(ToString::to_string).collect())
        .collect();
    let relators: Vec<Vec<Value>> = relators
        .into_iter()
        .map(|c| c.into_iter().map(|x| number(&x)).collect())
        .collect();
    json!({"generators": g.generators(), "relators": relators})
}

fn number(x: &str) -> Value {
    x.parse::<i64>()
        .map(Value::from)
        .unwrap_or_else(|_| Value::String(x.to_string()))
}

pub fn canonical_value(c: &CanonicalGroup) -> Value {
    serde_json::to_value(c).expect("canonical groups serialize")
}

/// Reads a matrix literal `rows × cols`; `[]` stands for any empty matrix.
pub fn parse_matrix(v: &Value, rows: usize, cols: usize) -> Result<Matrix> {
    let data: Vec<Vec<i64>> = serde_json::from_value(v.clone())
        .map_err(|_| Error::Document(format!("not an integer matrix: {v}")))?;
    if data.is_empty() && (rows == 0 || cols == 0) {
        return Ok(Matrix::zeros(rows, cols));
    }
    if data.len() != rows || data.iter().any(|r| r.len() != cols) {
        return Err(Error::Dimension(format!(
            "expected a {rows}x{cols} matrix, got {v}"
        )));
    }
    Matrix::from_rows(
        data.into_iter()
            .map(|r| r.into_iter().map(Int::from).collect())
            .collect(),
        cols,
    )
}

pub fn matrix_value(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|x| number(&x.to_string())).collect()))
            .collect(),
    )
}

fn edge_key(p: &Poset, a: usize, b: usize) -> String {
    format!("{}->{}", p.name(a), p.name(b))
}

fn object<'a>(doc: &'a Value, field: &str) -> Result<&'a Map<String, Value>> {
    doc.get(field)
        .and_then(Value::as_object)
        .ok_or_else(|| Error::Document(format!("field \"{field}\" must be an object")))
}

fn read_diagram(p: &Poset, doc: &Value) -> Result<Diagram> {
    let groups = object(doc, "groups")?;
    let maps = object(doc, "maps")?;
    for key in groups.keys() {
        if p.index_of(key).is_none() {
            return Err(Error::UnknownElement(key.clone()));
        }
    }
    let mut values = Vec::with_capacity(p.len());
    for name in p.names() {
        match groups.get(name) {
            None | Some(Value::Null) => return Err(Error::Missing(format!("group for {name}"))),
            Some(v) => values.push(parse_group(v)?),
        }
    }
    let covers = p.covers();
    let expected: Vec<String> = covers.iter().map(|&(a, b)| edge_key(p, a, b)).collect();
    if let Some(extra) = maps.keys().find(|k| !expected.contains(k)) {
        return Err(Error::Document(format!("{extra} is not a Hasse edge")));
    }
    let mut edges = Vec::with_capacity(covers.len());
    for (&(a, b), key) in covers.iter().zip(&expected) {
        match maps.get(key) {
            None | Some(Value::Null) => return Err(Error::Missing(format!("map {key}"))),
            Some(v) => {
                let m = parse_matrix(v, values[b].generators(), values[a].generators())
                    .map_err(|e| Error::Document(format!("{key}: {e}")))?;
                edges.push(((a, b), m));
            }
        }
    }
    Diagram::new(p.clone(), values, edges)
}

/// Reads a presheaf document over `base`. An inline `"base"` object must
/// describe the same poset; a string is taken as a reference only.
pub fn parse_presheaf(base: &Poset, text: &str) -> Result<Presheaf> {
    let doc: Value = serde_json::from_str(text)?;
    if let Some(inline) = doc.get("base").filter(|b| b.is_object()) {
        let p = poset_from_doc(serde_json::from_value(inline.clone())?)?;
        if poset_value(&p) != poset_value(base) {
            return Err(Error::Document(
                "inline base differs from the given poset".into(),
            ));
        }
    }
    match doc
        .get("mode")
        .and_then(Value::as_str)
        .unwrap_or("presheaf")
    {
        "presheaf" => {
            let cover = base.intersection_poset()?;
            let d = read_diagram(cover.node_poset(), &doc)?;
            Presheaf::new(cover, d)
        }
        "diagram" => Presheaf::from_sheaf(&read_diagram(base, &doc)?),
        other => Err(Error::Document(format!("unknown mode \"{other}\""))),
    }
}

/// A diagram document keyed by element names.
pub fn parse_diagram(base: &Poset, text: &str) -> Result<Diagram> {
    read_diagram(base, &serde_json::from_str(text)?)
}

fn template(p: &Poset, base: Value, mode: &str) -> Value {
    let groups: Map<String, Value> = p.names().iter().map(|n| (n.clone(), Value::Null)).collect();
    let maps: Map<String, Value> = p
        .covers()
        .into_iter()
        .map(|(a, b)| (edge_key(p, a, b), Value::Null))
        .collect();
    json!({"base": base, "mode": mode, "groups": groups, "maps": maps})
}

/// A presheaf document with every required key set to `null`.
pub fn skeleton(base: &Poset, base_ref: Value) -> Result<Value> {
    let cover = base.intersection_poset()?;
    Ok(template(cover.node_poset(), base_ref, "presheaf"))
}

/// Like [`skeleton`], keyed by elements for a sheaf given as a diagram.
pub fn diagram_skeleton(base: &Poset, base_ref: Value) -> Value {
    template(base, base_ref, "diagram")
}

fn filled(p: &Poset, d: &Diagram, base_ref: Value, mode: &str) -> Value {
    let mut doc = template(p, base_ref, mode);
    for (i, name) in p.names().iter().enumerate() {
        doc["groups"][name] = group_value(d.value(i));
    }
    for ((a, b), m) in d.edges() {
        doc["maps"][edge_key(p, a, b)] = matrix_value(&m);
    }
    doc
}

/// The document [`parse_presheaf`] reads back into `p`.
pub fn presheaf_value(p: &Presheaf, base_ref: Value) -> Value {
    filled(p.cover().node_poset(), p.diagram(), base_ref, "presheaf")
}

pub fn diagram_value(d: &Diagram, base_ref: Value) -> Value {
    filled(d.base(), d, base_ref, "diagram")
}
