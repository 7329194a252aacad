//! Text formats: DIMACS-style edge lists (1-based ids), mark lists,
//! decomposition certificates, monotone CNF, and the reduction map report.

use anyhow::{anyhow, bail, Context, Result};
use decomp_core::reduce::{CnfFormula, GadgetMap, ReductionMap, Stage};
use decomp_core::{Decomposition, Edge, Graph, Part};
use std::collections::BTreeSet;

fn is_comment(line: &str) -> bool {
    line.is_empty() || line.starts_with('#') || line.starts_with('c')
}

/// Parses the edge format: one `p edge N M` header, then `M` lines `e u v`
/// with 1-based vertex ids. Lines starting with `c` or `#` are comments.
pub fn parse_edg(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if is_comment(line) {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.as_slice() {
            ["p", "edge", n, m] => {
                if header.is_some() {
                    bail!("line {}: duplicate problem line", lineno + 1);
                }
                header = Some((n.parse()?, m.parse()?));
            }
            ["e", u, v] => {
                if header.is_none() {
                    bail!("line {}: edge before problem line", lineno + 1);
                }
                let u: usize = u.parse()?;
                let v: usize = v.parse()?;
                if u == 0 || v == 0 {
                    bail!("line {}: vertex ids are 1-based", lineno + 1);
                }
                pairs.push((u - 1, v - 1));
            }
            _ => bail!("line {}: unrecognized line {line:?}", lineno + 1),
        }
    }
    let (n, m) = header.ok_or_else(|| anyhow!("missing `p edge N M` line"))?;
    if pairs.len() != m {
        bail!("header announces {m} edges but {} are listed", pairs.len());
    }
    Graph::build(n, &pairs).context("edge list is not a simple graph")
}

pub fn emit_edg(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.edge_count());
    for e in g.edges() {
        out.push_str(&format!("e {} {}\n", e.u() + 1, e.v() + 1));
    }
    out
}

/// Parses a mark list: lines `m u v`, every pair an existing edge of `g`.
pub fn parse_marks(text: &str, g: &Graph) -> Result<BTreeSet<Edge>> {
    let mut marks = BTreeSet::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if is_comment(line) {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let ["m", u, v] = fields.as_slice() else {
            bail!("line {}: expected `m u v`, got {line:?}", lineno + 1);
        };
        let u: usize = u.parse()?;
        let v: usize = v.parse()?;
        if u == 0 || v == 0 {
            bail!("line {}: vertex ids are 1-based", lineno + 1);
        }
        let edge = Edge::new(u - 1, v - 1);
        if g.edge_index(edge).is_none() {
            bail!("line {}: marked pair {u} {v} is not an edge", lineno + 1);
        }
        marks.insert(edge);
    }
    Ok(marks)
}

pub fn emit_marks(marks: &BTreeSet<Edge>) -> String {
    marks
        .iter()
        .map(|e| format!("m {} {}\n", e.u() + 1, e.v() + 1))
        .collect()
}

/// Parses a decomposition: one part per line, `K13 c l1 l2 l3`, `K3 a b c`
/// or `P4 a b c d`, all ids 1-based.
pub fn parse_decomposition(text: &str) -> Result<Decomposition> {
    let mut parts = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if is_comment(line) {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let ids = |xs: &[&str]| -> Result<Vec<usize>> {
            xs.iter()
                .map(|x| {
                    let v: usize = x.parse()?;
                    if v == 0 {
                        bail!("line {}: vertex ids are 1-based", lineno + 1);
                    }
                    Ok(v - 1)
                })
                .collect()
        };
        let part = match fields.as_slice() {
            ["K13", rest @ ..] if rest.len() == 4 => {
                let v = ids(rest)?;
                Part::claw(v[0], [v[1], v[2], v[3]])
            }
            ["K3", rest @ ..] if rest.len() == 3 => {
                let v = ids(rest)?;
                Part::triangle([v[0], v[1], v[2]])
            }
            ["P4", rest @ ..] if rest.len() == 4 => {
                let v = ids(rest)?;
                Part::path([v[0], v[1], v[2], v[3]])
            }
            _ => bail!("line {}: unrecognized part {line:?}", lineno + 1),
        };
        parts.push(part.map_err(|e| anyhow!("line {}: {e}", lineno + 1))?);
    }
    Ok(Decomposition::new(parts))
}

pub fn emit_decomposition(d: &Decomposition) -> String {
    let mut out = String::new();
    for part in &d.parts {
        match part {
            Part::Claw { center, leaves } => out.push_str(&format!(
                "K13 {} {} {} {}\n",
                center + 1,
                leaves[0] + 1,
                leaves[1] + 1,
                leaves[2] + 1
            )),
            Part::Triangle { vertices } => out.push_str(&format!(
                "K3 {} {} {}\n",
                vertices[0] + 1,
                vertices[1] + 1,
                vertices[2] + 1
            )),
            Part::Path { vertices } => out.push_str(&format!(
                "P4 {} {} {} {}\n",
                vertices[0] + 1,
                vertices[1] + 1,
                vertices[2] + 1,
                vertices[3] + 1
            )),
        }
    }
    out
}

/// Parses DIMACS CNF restricted to monotone 3-clauses: positive literals
/// only, exactly three per clause.
pub fn parse_cnf(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<[usize; 3]> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if let ["p", "cnf", m, n] = fields.as_slice() {
            if header.is_some() {
                bail!("line {}: duplicate problem line", lineno + 1);
            }
            header = Some((m.parse()?, n.parse()?));
            continue;
        }
        if header.is_none() {
            bail!("line {}: clause before problem line", lineno + 1);
        }
        let lits: Vec<i64> = fields
            .iter()
            .map(|x| x.parse::<i64>().map_err(Into::into))
            .collect::<Result<_>>()?;
        match lits.as_slice() {
            &[a, b, c, 0] => {
                if a <= 0 || b <= 0 || c <= 0 {
                    bail!("line {}: only positive literals are allowed", lineno + 1);
                }
                clauses.push([(a - 1) as usize, (b - 1) as usize, (c - 1) as usize]);
            }
            _ => bail!(
                "line {}: clauses must hold exactly three positive literals and a closing 0",
                lineno + 1
            ),
        }
    }
    let (m, n) = header.ok_or_else(|| anyhow!("missing `p cnf VARS CLAUSES` line"))?;
    if clauses.len() != n {
        bail!("header announces {n} clauses but {} are listed", clauses.len());
    }
    CnfFormula::new(m, clauses).map_err(|e| anyhow!("{e}"))
}

/// Renders a reduction map as a line-oriented report (1-based ids).
pub fn emit_map(map: &ReductionMap) -> String {
    let mut out = String::new();
    let stage = match map.stage {
        Stage::Marked => "marked",
        Stage::CubicMarked => "cubic-marked",
        Stage::Final => "final",
    };
    out.push_str(&format!("stage {stage}\n"));
    let one = |v: usize| v + 1;
    match &map.gadgets {
        GadgetMap::OneInThree { variables, clauses } => {
            for (i, g) in variables.iter().enumerate() {
                out.push_str(&format!(
                    "variable {} center {} leaves {} {} {}\n",
                    i + 1,
                    one(g.center),
                    one(g.leaves[0]),
                    one(g.leaves[1]),
                    one(g.leaves[2])
                ));
            }
            for (j, g) in clauses.iter().enumerate() {
                let c: Vec<String> = g.cycle.iter().map(|&v| one(v).to_string()).collect();
                out.push_str(&format!("clause {} cycle {}\n", j + 1, c.join(" ")));
            }
        }
        GadgetMap::Nae { variables, clauses } => {
            for (i, g) in variables.iter().enumerate() {
                let a: Vec<String> = g.a_vertices.iter().map(|&v| one(v).to_string()).collect();
                let b: Vec<String> = g.b_vertices.iter().map(|&v| one(v).to_string()).collect();
                let borders: Vec<String> = g
                    .borders
                    .iter()
                    .map(|&(p, v)| format!("{}-{}", one(p), one(v)))
                    .collect();
                out.push_str(&format!(
                    "variable {} a {} b {} borders {}\n",
                    i + 1,
                    a.join(" "),
                    b.join(" "),
                    borders.join(" ")
                ));
            }
            for (j, g) in clauses.iter().enumerate() {
                let p: Vec<String> = g.vertices.iter().map(|&v| one(v).to_string()).collect();
                out.push_str(&format!("clause {} path {}\n", j + 1, p.join(" ")));
            }
        }
    }
    for (k, net) in map.nets.iter().enumerate() {
        out.push_str(&format!(
            "net {} anchors {} {} {} triangle {} {} {}\n",
            k + 1,
            one(net.anchors[0]),
            one(net.anchors[1]),
            one(net.anchors[2]),
            one(net.triangle[0]),
            one(net.triangle[1]),
            one(net.triangle[2])
        ));
    }
    for (k, cf) in map.cofish.iter().enumerate() {
        let interior: Vec<String> = cf.interior.iter().map(|&v| one(v).to_string()).collect();
        out.push_str(&format!(
            "cofish {} edge {} {} hub {} interior {}\n",
            k + 1,
            one(cf.marked_edge.u()),
            one(cf.marked_edge.v()),
            one(cf.hub),
            interior.join(" ")
        ));
    }
    out
}
