//! Short textual graph descriptions used on the command line.
//!
//! | text        | graph                              |
//! |-------------|------------------------------------|
//! | `K3`        | complete graph                     |
//! | `Kbar4`     | edgeless graph                     |
//! | `P5`, `P0`  | path (`P0` has no vertices)        |
//! | `P3+P2+P1`  | disjoint union of paths            |
//! | `g6:Cr`     | a graph6 record                    |
//!
//! Multipartite parts are `SIZE` (independent), `GRAPH` (spanning) or
//! `SIZE:GRAPH` (graph on the first vertices of the part).

use spexlab::graph::graph6;
use spexlab::join_series::Part;
use spexlab::lemmas::NamedGraph;

fn number(s: &str, what: &str) -> Result<usize, String> {
    s.parse().map_err(|_| format!("bad {what} {s:?}"))
}

pub fn parse_graph(s: &str) -> Result<NamedGraph, String> {
    let s = s.trim();
    if let Some(rec) = s.strip_prefix("g6:") {
        let g = graph6::decode_str(rec).map_err(|e| e.to_string())?;
        return Ok(NamedGraph::new(s, g));
    }
    if let Some(m) = s.strip_prefix("Kbar") {
        return Ok(NamedGraph::edgeless(number(m, "order")?));
    }
    if let Some(m) = s.strip_prefix('K') {
        return Ok(NamedGraph::complete(number(m, "order")?));
    }
    if s.starts_with('P') {
        let parts = s
            .split('+')
            .map(|p| {
                p.strip_prefix('P')
                    .ok_or_else(|| format!("bad path term {p:?}"))
                    .and_then(|m| number(m, "path order"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(if parts.len() == 1 {
            NamedGraph::path(parts[0])
        } else {
            NamedGraph::paths(&parts)
        });
    }
    Err(format!("unrecognized graph {s:?}; expected K<m>, Kbar<m>, P<m>, P<a>+P<b>.. or g6:<record>"))
}

pub fn parse_part(s: &str) -> Result<Part, String> {
    let s = s.trim();
    let part = if let Ok(size) = s.parse::<usize>() {
        Part::independent(size)
    } else if let Some((size, g)) = s.split_once(':').filter(|(a, _)| a.parse::<usize>().is_ok()) {
        Part::new(number(size, "part size")?, parse_graph(g)?.graph)
    } else {
        Part::spanning(parse_graph(s)?.graph)
    };
    part.map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graphs() {
        assert_eq!(parse_graph("K3").unwrap().graph.edge_count(), 3);
        assert_eq!(parse_graph("Kbar4").unwrap().graph.edge_count(), 0);
        assert_eq!(parse_graph("P0").unwrap().order(), 0);
        let f = parse_graph("P3+P2").unwrap();
        assert_eq!((f.order(), f.graph.edge_count(), f.name.as_str()), (5, 3, "P3+P2"));
        assert_eq!(parse_graph("g6:Cr").unwrap().order(), 4);
        assert!(parse_graph("Q3").is_err());
        assert!(parse_graph("Kx").is_err());
    }

    #[test]
    fn parts() {
        let p = parse_part("4").unwrap();
        assert_eq!((p.size, p.graph.edge_count()), (4, 0));
        let p = parse_part("K2").unwrap();
        assert_eq!((p.size, p.graph.edge_count()), (2, 1));
        let p = parse_part("5:P2").unwrap();
        assert_eq!((p.size, p.graph.edge_count()), (5, 1));
        assert!(parse_part("0").is_err());
        assert!(parse_part("1:P3").is_err());
    }
}
