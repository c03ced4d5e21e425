use grzh_core::extremal::{
    alpha_bounds, clique_number, ekr_bound, search_code, verify_ekr, BoundsReport, Classification, CodeBudget,
    CodeMethod, FamilyDescriptor,
};
use grzh_core::graph::{
    build_graph, max_clique, max_independent_set, materialize_vertices, vertex_degree, GraphSpec,
};
use grzh_core::matrix::{self, MatrixZh};
use grzh_core::subspace::{count_containing, count_inside, count_subspaces, materialize_subspaces, parse_family, write_family};
use grzh_core::RingContext;
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{Caps, GraphParams};
use crate::report::{big, with_schema};
use crate::{CliError, CliResult};

fn ring(h: u64) -> CliResult<RingContext> {
    Ok(RingContext::new(h)?)
}

pub fn count(h: u64, n: usize, k: usize, m: Option<usize>) -> CliResult<Value> {
    let ctx = ring(h)?;
    if k > n {
        return Err(CliError::Invalid(format!("need k <= n, got k={k} n={n}")));
    }
    let mut report = json!({ "h": h, "n": n, "k": k, "count": big(&count_subspaces(&ctx, n, k)) });
    if let Some(m) = m {
        if m > k {
            return Err(CliError::Invalid(format!("need m <= k, got m={m} k={k}")));
        }
        report["m"] = json!(m);
        // m-subspaces of a fixed k-subspace, k-subspaces through a fixed m-subspace
        report["inside"] = big(&count_inside(&ctx, k, m));
        report["containing"] = big(&count_containing(&ctx, n, k, m));
    }
    Ok(with_schema(report))
}

pub struct EnumeratedFamily {
    pub text: String,
    pub summary: Value,
}

pub fn enumerate(h: u64, n: usize, m: usize, caps: &Caps) -> CliResult<EnumeratedFamily> {
    let ctx = ring(h)?;
    if m > n {
        return Err(CliError::Invalid(format!("need m <= n, got m={m} n={n}")));
    }
    let members = materialize_subspaces(&ctx, n, m, caps.enumeration_cap)?;
    Ok(EnumeratedFamily {
        text: write_family(h, n, m, &members),
        summary: with_schema(json!({ "h": h, "n": n, "m": m, "count": members.len() })),
    })
}

fn graph_spec(p: &GraphParams) -> CliResult<GraphSpec> {
    Ok(GraphSpec::new(ring(p.h)?, p.n, p.m, p.r)?)
}

#[derive(Serialize)]
struct ExactResults {
    omega: usize,
    alpha: usize,
    /// Both searches finished within the node budget.
    complete: bool,
    omega_matches_formula: bool,
}

#[derive(Serialize)]
struct GraphStats {
    h: u64,
    n: usize,
    m: usize,
    r: usize,
    vertices: Value,
    /// Every vertex has this many neighbours.
    degree: Option<u64>,
    edges: Option<Value>,
    complete_graph: bool,
    omega: Value,
    alpha: Option<Value>,
    bounds: BoundsReport,
    exact: Option<ExactResults>,
}

/// Graph statistics, plus the edge list when `with_edges`.
pub fn graph_stats(p: &GraphParams, exact: bool, with_edges: bool, caps: &Caps) -> CliResult<(Value, Option<String>)> {
    let spec = graph_spec(p)?;
    let count = spec.vertex_count();
    let bounds = alpha_bounds(&spec, None, caps.vertex_cap, Some(caps.node_budget))?;
    let omega = clique_number(&spec);
    let fits = |cap: u64| count.to_u64().is_some_and(|v| v <= cap);

    let vertices = if fits(caps.enumeration_cap) { Some(materialize_vertices(&spec, caps.enumeration_cap)?) } else { None };
    let degree = vertices.as_ref().map(|v| vertex_degree(&spec, v)).transpose()?;
    // the graph is regular, so |E| = |V| deg / 2
    let edges = degree.map(|d| count.clone() * d / 2u32);

    let mut exact_results = None;
    let mut edge_list = None;
    if exact || with_edges {
        let vertices = vertices.as_ref().ok_or_else(|| CliError::Cap(format!("{count} vertices exceed the enumeration cap")))?;
        if exact && !fits(caps.vertex_cap) {
            return Err(CliError::Cap(format!("exact solvers: {count} vertices, cap is {}", caps.vertex_cap)));
        }
        if with_edges && edges.as_ref().is_some_and(|e| *e > BigUint::from(caps.edge_cap)) {
            return Err(CliError::Cap(format!("edge list: {} edges, cap is {}", edges.as_ref().unwrap(), caps.edge_cap)));
        }
        let g = build_graph(&spec, vertices)?;
        if exact {
            let c = max_clique(&g, Some(caps.node_budget));
            let a = max_independent_set(&g, Some(caps.node_budget));
            exact_results = Some(ExactResults {
                omega: c.clique.len(),
                alpha: a.clique.len(),
                complete: c.complete && a.complete,
                omega_matches_formula: BigUint::from(c.clique.len()) == omega,
            });
        }
        if with_edges {
            let mut text = String::new();
            for (i, j) in g.edges() {
                text.push_str(&format!("{i} {j}\n"));
            }
            edge_list = Some(text);
        }
    }

    let alpha = match &exact_results {
        Some(e) if e.complete => Some(json!(e.alpha)),
        _ => bounds.alpha_exact.as_ref().map(big),
    };
    let stats = GraphStats {
        h: p.h,
        n: p.n,
        m: p.m,
        r: p.r,
        vertices: big(&count),
        degree,
        edges: edges.as_ref().map(big),
        complete_graph: spec.is_complete(),
        omega: big(&omega),
        alpha,
        bounds,
        exact: exact_results,
    };
    Ok((with_schema(stats), edge_list))
}

fn family_type(c: &Classification) -> &'static str {
    match c {
        Classification::Maximum { family: FamilyDescriptor::Star { .. } } => "star",
        Classification::Maximum { family: FamilyDescriptor::Within { .. } } => "within",
        Classification::Maximum { family: FamilyDescriptor::Mixed { .. } } => "mixed",
        Classification::NotMaximum { .. } => "not maximum",
        Classification::Unclassified { .. } => "unclassified",
    }
}

/// Bound only, or a family check when `family` holds a family file.
pub fn ekr(p: &GraphParams, family: Option<&str>) -> CliResult<(Value, bool)> {
    let ctx = ring(p.h)?;
    let bound = ekr_bound(&ctx, p.n, p.m, p.r)?;
    let params = json!({ "h": p.h, "n": p.n, "m": p.m, "r": p.r });
    let Some(text) = family else {
        return Ok((with_schema(json!({ "params": params, "bound": big(&bound) })), false));
    };
    let fam = parse_family(text)?;
    if (fam.modulus, fam.n, fam.m) != (p.h, p.n, p.m) {
        return Err(CliError::Invalid(format!(
            "family file holds {}-subspaces of Z_{}^{}, expected {}-subspaces of Z_{}^{}",
            fam.m, fam.modulus, fam.n, p.m, p.h, p.n
        )));
    }
    let rep = verify_ekr(&ctx, p.n, p.m, p.r, &fam.members)?;
    let verdict = if !rep.r_intersecting {
        "not r-intersecting"
    } else if rep.attains_bound {
        "meets bound"
    } else if rep.within_bound {
        "below bound"
    } else {
        "exceeds bound"
    };
    let report = json!({
        "params": params,
        "bound": big(&bound),
        "achieved": rep.size,
        "r_intersecting": rep.r_intersecting,
        "verdict": verdict,
        "family_type": rep.classification.as_ref().map(family_type),
        "classification": rep.classification,
    });
    Ok((with_schema(report), !rep.within_bound))
}

pub fn code(h: u64, n: usize, m: usize, d: usize, node_budget: u64, caps: &Caps) -> CliResult<(Value, bool)> {
    if !d.is_multiple_of(2) || d < 4 {
        return Err(CliError::Invalid(format!("minimum distance must be even and at least 4, got {d}")));
    }
    let r = d / 2;
    let spec = GraphSpec::new(ring(h)?, n, m, r)?;
    let budget = CodeBudget {
        exact_vertex_cap: caps.vertex_cap,
        node_budget: Some(node_budget),
        enumeration_cap: caps.enumeration_cap,
    };
    let res = search_code(&spec, &budget)?;
    let upper = res.bounds.best_upper();
    let report = json!({
        "params": { "h": h, "n": n, "m": m, "d": d, "r": r },
        "size": res.size,
        "method": res.method,
        "search_complete": res.search_complete || res.method == CodeMethod::Trivial,
        "verified_independent": res.verified_independent,
        "optimal": res.optimal,
        "best_upper_bound": big(&upper),
        "meets_exact_value": res.bounds.alpha_exact.as_ref().map(|e| *e == BigUint::from(res.size)),
        "bounds": res.bounds,
        "code": res.code,
    });
    Ok((with_schema(report), !res.verified_independent))
}

pub fn rank(text: &str) -> CliResult<Value> {
    let a = MatrixZh::parse(text)?;
    let ctx = ring(a.modulus())?;
    let nf = matrix::normal_form(&ctx, &a)?;
    let diagonal: Vec<u64> = nf.omega.iter().map(|e| ctx.ideal_generator(e)).collect();
    let square = a.rows() == a.cols();
    Ok(with_schema(json!({
        "h": a.modulus(),
        "rows": a.rows(),
        "cols": a.cols(),
        "inner_rank": matrix::inner_rank(&ctx, &a)?,
        "mccoy_rank": matrix::mccoy_rank(&ctx, &a)?,
        "diagonal": diagonal,
        "determinant": if square { Some(matrix::determinant(&ctx, &a)?) } else { None },
        "invertible": if square { Some(matrix::is_invertible(&ctx, &a)?) } else { None },
    })))
}
