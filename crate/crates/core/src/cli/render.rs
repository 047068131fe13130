//! Text, CSV and DOT renderings of a [`Document`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};

use super::document::{CountRow, Document, COLOR_KEY};

const PALETTE: [&str; 12] = [
    "red",
    "blue",
    "darkgreen",
    "orange",
    "purple",
    "brown",
    "deeppink",
    "cyan4",
    "gold3",
    "navy",
    "olivedrab",
    "gray40",
];

fn yes_no(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "yes",
        Some(false) => "NO",
        None => "-",
    }
}

fn opt(v: Option<u64>) -> String {
    v.map_or_else(|| "-".to_string(), |v| v.to_string())
}

pub fn counts_text(n: usize, q: u32, counts: &BTreeMap<String, CountRow>) -> String {
    let mut out = format!("n = {n}, q = {q}\n");
    let _ = writeln!(
        out,
        "{:<20} {:>12} {:>12} {:>6}",
        "quantity", "formula", "enumerated", "match"
    );
    for (name, r) in counts {
        let _ = writeln!(
            out,
            "{:<20} {:>12} {:>12} {:>6}",
            name,
            opt(r.formula),
            opt(r.enumerated),
            yes_no(r.matches)
        );
    }
    out
}

fn csv_string(rows: Vec<Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.write_record(&r).map_err(|e| Error::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Format(e.to_string()))
}

pub fn counts_csv(counts: &BTreeMap<String, CountRow>) -> Result<String> {
    let mut rows = vec![vec![
        "quantity".to_string(),
        "formula".into(),
        "enumerated".into(),
        "match".into(),
    ]];
    for (name, r) in counts {
        let cell = |v: Option<u64>| v.map(|v| v.to_string()).unwrap_or_default();
        rows.push(vec![
            name.clone(),
            cell(r.formula),
            cell(r.enumerated),
            r.matches.map(|m| m.to_string()).unwrap_or_default(),
        ]);
    }
    csv_string(rows)
}

/// Entities one per row, then structures as (structure, line, points) rows.
pub fn document_csv(doc: &Document) -> Result<String> {
    let mut rows = vec![vec![
        "record".to_string(),
        "id".into(),
        "role".into(),
        "structure".into(),
        "point_ids".into(),
        "description".into(),
    ]];
    for e in &doc.entities {
        rows.push(vec![
            "entity".into(),
            e.id.to_string(),
            e.role.clone(),
            String::new(),
            String::new(),
            e.labels.get("description").cloned().unwrap_or_default(),
        ]);
    }
    for s in &doc.structures {
        for l in &s.lines {
            rows.push(vec![
                "line".into(),
                l.id.to_string(),
                s.kind.clone(),
                s.id.clone(),
                join(&l.point_ids),
                String::new(),
            ]);
        }
    }
    csv_string(rows)
}

fn join(ids: &[u32]) -> String {
    ids.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

pub fn document_text(doc: &Document) -> String {
    let mut out = format!("n = {}, q = {}, kind = {}\n", doc.n, doc.q, doc.kind);
    if doc.structures.is_empty() {
        for e in &doc.entities {
            let desc = e.labels.get("description").map_or("", String::as_str);
            let _ = writeln!(out, "{:>8}  {desc}", e.id);
        }
    }
    for s in &doc.structures {
        let r = &s.axiom_report;
        let _ = writeln!(
            out,
            "{}: {} points, {} lines, order {}, axioms {}",
            s.id,
            s.points.len(),
            s.lines.len(),
            r.order.map_or_else(|| "-".to_string(), |o| o.to_string()),
            if s.axioms_hold() { "hold" } else { "FAIL" }
        );
        for l in &s.lines {
            let _ = writeln!(out, "  line {}: {}", l.id, join(&l.point_ids));
        }
    }
    out.push('\n');
    out.push_str(&counts_text(doc.n, doc.q, &doc.counts));
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// One node per entity in ID order, one edge per line-point incidence, and
/// one colour per plane or parallel class.
pub fn document_dot(doc: &Document) -> String {
    let keys: BTreeSet<&str> = doc
        .entities
        .iter()
        .filter_map(|e| e.labels.get(COLOR_KEY).map(String::as_str))
        .collect();
    let color_of = |key: Option<&String>| -> &'static str {
        match key {
            Some(k) if k == "at infinity" => "black",
            Some(k) => {
                let i = keys.iter().position(|c| c == k).unwrap_or(0);
                PALETTE[i % PALETTE.len()]
            }
            None => "gray70",
        }
    };
    let is_line: BTreeSet<u32> = doc
        .structures
        .iter()
        .flat_map(|s| s.lines.iter().map(|l| l.id))
        .collect();

    let mut out = format!(
        "graph trimat_geom {{\n  label=\"n = {}, q = {}, {}\";\n  node [style=filled, fontcolor=white];\n",
        doc.n, doc.q, doc.kind
    );
    for e in &doc.entities {
        let label = e
            .labels
            .get("figure1")
            .cloned()
            .unwrap_or_else(|| e.id.to_string());
        let shape = if is_line.contains(&e.id) {
            "box"
        } else {
            "ellipse"
        };
        let _ = writeln!(
            out,
            "  \"{}\" [label=\"{}\", shape={shape}, color={}, tooltip=\"{}\"];",
            e.id,
            escape(&label),
            color_of(e.labels.get(COLOR_KEY)),
            escape(e.labels.get("description").map_or("", String::as_str))
        );
    }
    let mut edges: BTreeSet<(u32, u32)> = BTreeSet::new();
    for s in &doc.structures {
        for l in &s.lines {
            edges.extend(l.point_ids.iter().map(|&p| (l.id, p)));
        }
    }
    for (l, p) in edges {
        let color = color_of(doc.entity(l).and_then(|e| e.labels.get(COLOR_KEY)));
        let _ = writeln!(out, "  \"{l}\" -- \"{p}\" [color={color}];");
    }
    out.push_str("}\n");
    out
}
