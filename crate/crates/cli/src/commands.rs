use serde_json::{json, Value};

use germkit::algebra::{theorem_iso_verify, AlgebraError};
use germkit::catalog::Catalog;
use germkit::germs::{groupoid_iso_search, groupoid_of_germs, isotropy_report};
use germkit::invsemi::{canonical_self_action, exel_semigroup, exel_size, word_closure, InverseSemigroup};
use germkit::paction::{
    coe_from_groupoid_iso, dynamics_report, iso_from_coe, join_over_group_image, verify_orbit_equivalence, CoeError,
    PartialAction,
};
use germkit::scalar::{Ring, RingSpec};
use germkit::schema::{CoeDoc, Document, Parsed};
use germkit::suite::catalog_run;
use germkit::with_ring;

use crate::input::{action, semigroup};
use crate::output::{input, math, to_json, Failure, Report};

const MAX_ELEMENTS: usize = 100_000;

pub fn validate(p: &Parsed) -> Result<Report, Failure> {
    let shape = match &p.doc {
        Document::Semigroup(d) => {
            let s = d.build()?;
            json!({"elements": s.len(), "idempotents": s.idempotents().len()})
        }
        Document::Action(d) => {
            let a = d.build()?;
            json!({"elements": a.semigroup().len(), "points": a.points()})
        }
        Document::Graph(d) => {
            let g = d.build()?;
            json!({"vertices": g.vertex_count(), "edges": g.edge_count(), "acyclic": g.is_acyclic()})
        }
        Document::Leavitt(d) => {
            for e in std::iter::once(&d.expr).chain(&d.equals) {
                germkit::graph::parse_leavitt(e).map_err(input)?;
            }
            json!({})
        }
        // References to other documents are resolved by the commands using them.
        Document::Coe(_) | Document::GraphCoe(_) => json!({}),
    };
    let json = json!({"schema": p.doc.schema(), "valid": true, "warnings": p.warnings, "shape": shape});
    Ok(Report::pass(json, format!("valid {}", p.doc.schema())))
}

fn names(s: &InverseSemigroup, v: impl IntoIterator<Item = usize>) -> Vec<String> {
    v.into_iter().map(|i| s.name(i).to_string()).collect()
}

fn points(theta: &PartialAction, v: &[usize]) -> Vec<String> {
    v.iter().map(|&x| theta.carrier()[x].clone()).collect()
}

pub fn analyze(p: &Parsed) -> Result<Report, Failure> {
    match &p.doc {
        Document::Action(d) => analyze_action(&d.build()?),
        Document::Graph(_) => crate::graph_cmds::analyze(p),
        _ => analyze_semigroup(&semigroup(&p.doc)?),
    }
}

fn analyze_semigroup(s: &InverseSemigroup) -> Result<Report, Failure> {
    let eu = s.e_unitary_witness();
    let lb = s.lower_bound_compatibility();
    let factors = join_over_group_image(&canonical_self_action(s));
    let consistent = eu.is_ok() == lb.is_ok() && eu.is_ok() == factors.is_ok();
    let json = json!({
        "elements": s.len(),
        "idempotents": names(s, s.idempotents()),
        "isGroup": s.is_group(),
        "zero": s.zero().map(|z| s.name(z).to_string()),
        "identity": s.identity().map(|z| s.name(z).to_string()),
        "eUnitary": eu.is_ok(),
        "eUnitaryWitness": eu.as_ref().err().map(|w| json!({"idempotent": s.name(w.idempotent), "element": s.name(w.element)})),
        "lowerBoundsCompatible": lb.is_ok(),
        "incompatiblePair": lb.err().map(|(a, b)| [s.name(a), s.name(b)]),
        "selfActionFactors": factors.is_ok(),
        "weakSemilattice": s.is_weak_semilattice(),
        "maxGroupImage": s.max_group_image().group.len(),
        "consistent": consistent,
    });
    let summary = format!("{} elements, e-unitary {}", s.len(), eu.is_ok());
    Ok(Report::verdict(json, consistent, summary))
}

fn analyze_action(theta: &PartialAction) -> Result<Report, Failure> {
    let d = dynamics_report(theta);
    let germs = groupoid_of_germs(theta);
    let iso = isotropy_report(germs.base());
    let mut trivial: Vec<usize> = iso.trivial_points.iter().filter_map(|&u| germs.point_of(u)).collect();
    trivial.sort_unstable();
    let agree = trivial == d.lambda && iso.effective == d.effective;
    let json = json!({
        "elements": theta.semigroup().len(),
        "points": theta.points(),
        "lambda": points(theta, &d.lambda),
        "free": d.free,
        "effective": d.effective,
        "topPrincipal": d.top_principal,
        "germArrows": germs.len(),
        "trivialIsotropy": points(theta, &trivial),
        "consistent": d.consistent && agree,
    });
    let summary = format!("{} germs, topologically principal {}", germs.len(), d.top_principal);
    Ok(Report::verdict(json, d.consistent && agree, summary))
}

pub fn germs(p: &Parsed) -> Result<Report, Failure> {
    let theta = action(&p.doc)?;
    let sg = theta.semigroup();
    let g = groupoid_of_germs(&theta);
    let base = g.base();
    let arrows: Vec<Value> = (0..g.len())
        .map(|a| {
            let (s, x) = g.representative(a);
            let pt = |u: usize| g.point_of(u).map(|x| theta.carrier()[x].clone());
            json!({
                "germ": [sg.name(s), theta.carrier()[x]],
                "source": pt(base.source(a)),
                "range": pt(base.range(a)),
                "unit": base.is_unit(a),
            })
        })
        .collect();
    let iso = isotropy_report(base);
    let json = json!({"arrows": arrows, "units": base.units().len(), "effective": iso.effective, "topPrincipal": iso.top_principal});
    Ok(Report::pass(json, format!("{} arrows over {} units", g.len(), base.units().len())))
}

pub fn maxgroup(p: &Parsed) -> Result<Report, Failure> {
    let s = semigroup(&p.doc)?;
    let gi = s.max_group_image();
    let classes: Vec<Vec<String>> =
        (0..gi.group.len()).map(|c| names(&s, (0..s.len()).filter(|&x| gi.class_of[x] == c))).collect();
    let json = json!({"order": gi.group.len(), "classes": classes, "representatives": names(&s, gi.representative.clone())});
    Ok(Report::pass(json, format!("group image of order {}", gi.group.len())))
}

pub fn exel(p: &Parsed, depth: Option<usize>) -> Result<Report, Failure> {
    let g = semigroup(&p.doc)?;
    let (s, elems) = exel_semigroup(&g, MAX_ELEMENTS).map_err(input)?;
    let n = g.len();
    let max_len = depth.unwrap_or(n + 2);
    let closure = word_closure(&g, max_len, max_len.saturating_sub(1)).map_err(input)?;
    let gi = s.max_group_image();
    let image_is_g = gi.group.len() == n
        && (0..s.len()).all(|x| (0..s.len()).all(|y| (gi.class_of[x] == gi.class_of[y]) == (elems[x].g == elems[y].g)));
    let passed = closure.sound && closure.complete && s.is_e_unitary() && image_is_g && s.len() == exel_size(n);
    let json = json!({
        "order": n,
        "size": s.len(),
        "elements": elems.iter().map(|e| e.label(&g)).collect::<Vec<_>>(),
        "eUnitary": s.is_e_unitary(),
        "groupImageIsG": image_is_g,
        "closure": to_json(&closure),
    });
    Ok(Report::verdict(json, passed, format!("S(G) has {} elements", s.len())))
}

pub fn steinberg_crossed(p: &Parsed, ring: RingSpec, seed: u64) -> Result<Report, Failure> {
    let theta = action(&p.doc)?;
    with_ring!(ring, R => crossed_in::<R>(&theta, seed))
}

fn crossed_in<R: Ring>(theta: &PartialAction, seed: u64) -> Result<Report, Failure> {
    let r = match theorem_iso_verify::<R>(theta, seed, 8) {
        Ok(r) => r,
        Err(e @ AlgebraError::NotAField(_)) => return Err(input(e)),
        Err(e) => return Err(math(e)),
    };
    let cp = &r.crossed_product;
    let json = json!({
        "ring": r.ring,
        "arrows": r.arrows,
        "dims": {"L": cp.dim_l, "N": cp.dim_n, "quotient": cp.quotient_dim},
        "generators": cp.n_generators,
        "checks": {
            "dimensionsAgree": r.dimensions_agree,
            "phiVanishesOnN": r.phi_vanishes_on_n,
            "phiMultiplicative": r.phi_multiplicative,
            "psiWellDefined": r.psi_well_defined,
            "psiPhiIdentity": r.psi_phi_identity,
            "phiPsiIdentity": r.phi_psi_identity,
            "diagonal": r.diagonal,
            "membershipCrossCheck": r.membership_cross_check,
            "vanishingCombinations": r.vanishing_combinations,
            "vanishingOk": r.vanishing_ok,
        },
        "failures": r.failures,
        "passed": r.passed,
    });
    let summary = format!("dims L={} N={} quotient={} arrows={}", cp.dim_l, cp.dim_n, cp.quotient_dim, r.arrows);
    Ok(Report::verdict(json, r.passed, summary))
}

fn coe_failure(e: CoeError) -> Failure {
    match e {
        CoeError::Shape(_) => input(e),
        e => math(e),
    }
}

pub fn coe_verify(a: &Parsed, b: &Parsed, c: &Parsed) -> Result<Report, Failure> {
    let (theta, gamma) = (action(&a.doc)?, action(&b.doc)?);
    let Document::Coe(doc) = &c.doc else {
        return Err(input(format!("expected a coe document, got {}", c.doc.schema())));
    };
    let coe = doc.build(&theta, &gamma)?;
    let rep = verify_orbit_equivalence(&theta, &gamma, &coe).map_err(coe_failure)?;
    let passed = rep.pointwise && rep.germ_identities;
    Ok(Report::verdict(to_json(&rep), passed, format!("orbit equivalence {}", if passed { "verified" } else { "fails" })))
}

pub fn coe_extract(a: &Parsed, b: &Parsed, nodes: u64) -> Result<Report, Failure> {
    let (theta, gamma) = (action(&a.doc)?, action(&b.doc)?);
    let (gt, gg) = (groupoid_of_germs(&theta), groupoid_of_germs(&gamma));
    let iso = match groupoid_iso_search(gt.base(), gg.base(), nodes) {
        Ok(Some(iso)) => iso,
        Ok(None) => return Err(math("groupoids of germs are not isomorphic")),
        Err(e) => return Err(math(e)),
    };
    let coe = coe_from_groupoid_iso(&theta, &gamma, &gt, &gg, &iso).map_err(coe_failure)?;
    let rep = verify_orbit_equivalence(&theta, &gamma, &coe).map_err(coe_failure)?;
    let back = iso_from_coe(&theta, &gamma, &gt, &gg, &coe);
    let round_trip = back.as_ref().is_ok_and(|b| *b == iso);
    let doc = CoeDoc::from_coe(&theta, &gamma, &coe);
    let passed = rep.pointwise && rep.germ_identities && round_trip;
    let json = json!({
        "coe": serde_json::to_value(&doc).expect("documents serialize"),
        "verification": to_json(&rep),
        "roundTrip": round_trip,
        "roundTripError": back.err().map(|e| e.to_string()),
    });
    Ok(Report::verdict(json, passed, format!("extracted orbit equivalence, round trip {round_trip}")))
}

pub fn catalog_run_cmd(seed: u64) -> Result<Report, Failure> {
    let r = catalog_run(&Catalog::builtin(), seed);
    let failed: Vec<String> = r.criteria.iter().filter(|c| !c.passed).map(|c| c.id.to_string()).collect();
    let summary = if r.passed {
        format!("all {} criteria pass", r.criteria.len())
    } else {
        format!("failing criteria: {}; validation failures: {}", failed.join(", "), r.validation.len())
    };
    Ok(Report::verdict(to_json(&r), r.passed, summary))
}

pub fn catalog_list() -> Result<Report, Failure> {
    let entries: Vec<Value> =
        Catalog::builtin().names().into_iter().map(|(kind, name)| json!({"kind": kind, "name": name})).collect();
    let n = entries.len();
    Ok(Report::pass(Value::Array(entries), format!("{n} instances")))
}

pub fn catalog_show(name: &str) -> Result<Report, Failure> {
    let doc = Catalog::builtin().get(name).ok_or_else(|| input(format!("no catalog document named {name}")))?;
    let json: Value = serde_json::from_str(&doc.to_json()).expect("documents serialize");
    Ok(Report::pass(json, doc.schema().to_string()))
}
