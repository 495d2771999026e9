use serde_json::{json, Value};

use germkit::graph::{
    boundary_enumerate, boundary_groupoid, condition_l, graph_coe_search, graph_semigroup, isolated_periodic_points,
    leavitt_relations_check, parse_leavitt, psi_check, verify_graph_coe, Graph, LeavittElement,
};
use germkit::scalar::{Ring, RingSpec};
use germkit::schema::{Document, GraphCoeDoc, Parsed};
use germkit::with_ring;

use crate::input::graph;
use crate::output::{input, to_json, Failure, Report};

const MAX_ELEMENTS: usize = 100_000;

pub fn analyze(p: &Parsed) -> Result<Report, Failure> {
    let g = graph(&p.doc)?;
    let l = condition_l(&g);
    let periodic = isolated_periodic_points(&g);
    let principal = periodic.is_empty();
    let mut passed = l.holds == principal;
    let mut json = json!({
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "acyclic": g.is_acyclic(),
        "conditionL": l.holds,
        "simpleCycles": l.simple_cycles,
        "cycleWithoutExit": l.witness,
        "topPrincipal": principal,
        "isolatedPeriodicPoints": to_json(&periodic),
    });
    if g.is_acyclic() {
        let boundary = boundary_enumerate(&g).expect("acyclic");
        let (sg, _) = graph_semigroup(&g, MAX_ELEMENTS).map_err(input)?;
        let (bg, _) = boundary_groupoid(&g).map_err(input)?;
        let psi = psi_check(&g, MAX_ELEMENTS).map_err(input)?;
        passed &= psi.well_defined && psi.isomorphism;
        json["boundary"] = boundary.iter().map(|x| x.label(&g)).collect::<Vec<_>>().into();
        json["semigroupElements"] = sg.len().into();
        json["boundaryGroupoidArrows"] = bg.len().into();
        json["psi"] = to_json(&psi);
    }
    let summary = format!("condition (L) {}, topologically principal {principal}", l.holds);
    Ok(Report::verdict(json, passed, summary))
}

pub struct LeavittArgs<'a> {
    pub expr: Option<String>,
    pub equals: Option<String>,
    pub depth: Option<usize>,
    pub ring: RingSpec,
    pub doc: Option<&'a Parsed>,
}

pub fn leavitt(p: &Parsed, args: LeavittArgs) -> Result<Report, Failure> {
    let g = graph(&p.doc)?;
    let (expr, equals) = match args.doc.map(|d| &d.doc) {
        Some(Document::Leavitt(d)) => (Some(d.expr.clone()), d.equals.clone()),
        Some(other) => return Err(input(format!("expected a leavitt document, got {}", other.schema()))),
        None => (args.expr, args.equals),
    };
    with_ring!(args.ring, R => leavitt_in::<R>(&g, expr, equals, args.depth))
}

fn leavitt_in<R: Ring>(g: &Graph, expr: Option<String>, equals: Option<String>, depth: Option<usize>) -> Result<Report, Failure> {
    let Some(expr) = expr else {
        let checks = leavitt_relations_check::<R>(g);
        let passed = checks.iter().all(|c| c.holds);
        let json = json!({"ring": R::name(), "relations": to_json(&checks), "passed": passed});
        return Ok(Report::verdict(json, passed, format!("relations over {}: {}", R::name(), if passed { "hold" } else { "fail" })));
    };
    let eval = |src: &str| -> Result<LeavittElement<R>, Failure> {
        let e = parse_leavitt(src).map_err(|e| input(format!("{src}: {e}")))?;
        let v = LeavittElement::<R>::eval(&e, g).map_err(input)?;
        match depth {
            Some(d) => v.at_depth(g, d).map_err(input),
            None => Ok(v),
        }
    };
    let lhs = eval(&expr)?;
    let mut json = json!({"ring": R::name(), "expr": expr, "normalForm": lhs.display(g), "depth": lhs.depth()});
    let Some(rhs_src) = equals else {
        return Ok(Report::pass(json, lhs.display(g)));
    };
    let rhs = eval(&rhs_src)?;
    let equal = lhs.equals(&rhs, g).map_err(input)?;
    json["equals"] = Value::String(rhs_src);
    json["equalsNormalForm"] = rhs.display(g).into();
    json["equal"] = equal.into();
    Ok(Report::verdict(json, equal, if equal { "equal" } else { "not equal" }))
}

pub fn coe_verify(e: &Parsed, f: &Parsed, data: &Parsed, depth: Option<usize>) -> Result<Report, Failure> {
    let (ge, gf) = (graph(&e.doc)?, graph(&f.doc)?);
    let Document::GraphCoe(doc) = &data.doc else {
        return Err(input(format!("expected a graph-coe document, got {}", data.doc.schema())));
    };
    let mut d = doc.data.clone();
    if let Some(depth) = depth {
        d.depth = depth;
    }
    let r = verify_graph_coe(&ge, &gf, &d).map_err(input)?;
    let summary = format!("{} atoms, {} exact, passed {}", r.atoms_checked, r.atoms_exact, r.passed);
    Ok(Report::verdict(to_json(&r), r.passed, summary))
}

pub fn coe_search(e: &Parsed, f: &Parsed, max_bijections: usize, nodes: u64) -> Result<Report, Failure> {
    let (ge, gf) = (graph(&e.doc)?, graph(&f.doc)?);
    let r = graph_coe_search(&ge, &gf, max_bijections, nodes).map_err(input)?;
    let mut json = to_json(&r);
    // Emit found data as a document that `graph coe-verify` accepts.
    json["data"] = match &r.data {
        Some(d) => serde_json::to_value(GraphCoeDoc::new(d.clone())).expect("documents serialize"),
        None => Value::Null,
    };
    let summary = match r.data {
        Some(_) => format!("orbit equivalence found after {} bijections", r.bijections_tried),
        None => format!("none found in {} bijections", r.bijections_tried),
    };
    Ok(Report::verdict(json, r.consistent, summary))
}
