use std::io::Read;

use germkit::catalog::Catalog;
use germkit::graph::Graph;
use germkit::invsemi::InverseSemigroup;
use germkit::paction::PartialAction;
use germkit::schema::{parse_input, Document, Parsed};

use crate::output::{input, Failure};

/// Reads `catalog:NAME`, `-` for stdin, or a file path.
pub fn load(src: &str, lenient: bool) -> Result<Parsed, Failure> {
    if let Some(name) = src.strip_prefix("catalog:") {
        let doc = Catalog::builtin().get(name).ok_or_else(|| Failure::Input(format!("no catalog instance named {name}")))?;
        return Ok(Parsed { doc, warnings: Vec::new() });
    }
    let text = if src == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(src).map_err(|e| Failure::Input(format!("{src}: {e}")))?
    };
    parse_input(&text, lenient).map_err(|e| Failure::Input(format!("{src}: {e}")))
}

fn kind(doc: &Document) -> &str {
    doc.schema()
}

pub fn semigroup(doc: &Document) -> Result<InverseSemigroup, Failure> {
    match doc {
        Document::Semigroup(d) => Ok(d.build()?),
        Document::Action(d) => Ok(d.build()?.semigroup().clone()),
        other => Err(input(format!("expected a semigroup or action document, got {}", kind(other)))),
    }
}

pub fn action(doc: &Document) -> Result<PartialAction, Failure> {
    match doc {
        Document::Action(d) => Ok(d.build()?),
        other => Err(input(format!("expected an action document, got {}", kind(other)))),
    }
}

pub fn graph(doc: &Document) -> Result<Graph, Failure> {
    match doc {
        Document::Graph(d) => Ok(d.build()?),
        other => Err(input(format!("expected a graph document, got {}", kind(other)))),
    }
}
