use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;
use twisted_pairing::cover::{build_double_cover, to_dot};
use twisted_pairing::graph::MultiGraph;
use twisted_pairing::homology::{
    graph_pairing, homology_basis, is_perfect_pairing, is_simple_cycle, Chain1, Cochain1,
};
use twisted_pairing::linalg::Gf2Matrix;
use twisted_pairing::sweep::{
    cover_equivalence_sweep, enumerate_connected, model_sweep, perfect_pairing_sweep,
    tropical_sweep, Execution, Faults, SweepOutcome,
};
use twisted_pairing::tropical::{verify_torsion_on_subdivision, SubdivisionMode};
use twisted_pairing::twisted::BlockLayout;

use crate::document::{digest_of, InputDocument};
use crate::error::CliError;
use crate::report::{table, Outcome, Report};

/// Largest edge count the model sweep runs at, whatever `--max-edges` says.
pub const MODEL_SWEEP_MAX_EDGES: usize = 5;
/// Vertex genera range over `0..=MODEL_SWEEP_MAX_GENUS` in the model sweep.
pub const MODEL_SWEEP_MAX_GENUS: usize = 1;

fn gram_rows(m: &Gf2Matrix) -> Vec<Vec<u8>> {
    (0..m.row_count())
        .map(|i| (0..m.col_count()).map(|j| m.get(i, j) as u8).collect())
        .collect()
}

fn render_matrix(rows: &[Vec<u8>]) -> String {
    if rows.is_empty() {
        return "  (empty)\n".to_string();
    }
    rows.iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(u8::to_string).collect();
            format!("  [{}]\n", cells.join(" "))
        })
        .collect()
}

fn list(xs: &[usize]) -> String {
    let parts: Vec<String> = xs.iter().map(usize::to_string).collect();
    format!("[{}]", parts.join(","))
}

fn core_error(e: twisted_pairing::Error) -> CliError {
    CliError::Input(e.to_string())
}

#[derive(Serialize)]
struct HomologyPayload {
    vertices: usize,
    edges: usize,
    components: usize,
    genus: usize,
    spanning_forest: Vec<usize>,
    cycles: Vec<Vec<usize>>,
    cocycles: Vec<Vec<usize>>,
    gram: Vec<Vec<u8>>,
    perfect: bool,
}

pub fn homology(doc: &InputDocument) -> Result<Outcome, CliError> {
    let g = doc.graph()?;
    let basis = homology_basis(&g);
    let check = is_perfect_pairing(&g);
    let payload = HomologyPayload {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        components: g.component_count(),
        genus: g.genus(),
        spanning_forest: basis.forest.as_slice().to_vec(),
        cycles: basis.cycles.iter().map(Chain1::support).collect(),
        cocycles: basis.cocycles.iter().map(Cochain1::support).collect(),
        gram: gram_rows(&check.gram),
        perfect: check.perfect,
    };

    let mut text = String::new();
    let _ = writeln!(
        text,
        "vertices {}  edges {}  components {}  genus {}",
        payload.vertices, payload.edges, payload.components, payload.genus
    );
    let _ = writeln!(
        text,
        "spanning forest edges {}",
        list(&payload.spanning_forest)
    );
    let rows: Vec<Vec<String>> = basis
        .chords
        .iter()
        .enumerate()
        .map(|(i, chord)| {
            vec![
                i.to_string(),
                chord.to_string(),
                list(&payload.cycles[i]),
                list(&payload.cocycles[i]),
            ]
        })
        .collect();
    text.push_str(&table(
        &["#", "chord", "cycle edges", "cocycle edges"],
        &rows,
    ));
    let _ = writeln!(text, "gram matrix:");
    text.push_str(&render_matrix(&payload.gram));
    let _ = writeln!(text, "perfect pairing: {}", payload.perfect);

    Ok(Outcome {
        counterexample: !payload.perfect,
        report: Report::new("homology", doc.digest(), &payload),
        text,
    })
}

#[derive(Serialize)]
struct CoverPayload {
    gamma: Vec<usize>,
    alpha: Vec<usize>,
    cycle_length: usize,
    components: usize,
    lengths: Vec<usize>,
    lifted_edges: Vec<Vec<usize>>,
    pairing: u8,
    graph_pairing: u8,
    agree: bool,
    /// Absent when the base graph is disconnected.
    cover_connected: Option<bool>,
}

pub fn cover(
    doc: &InputDocument,
    gamma: &[usize],
    alpha: &[usize],
    dot: Option<&Path>,
) -> Result<Outcome, CliError> {
    let g = doc.graph()?;
    let gamma = Cochain1::from_support(&g, gamma).map_err(core_error)?;
    let alpha = Chain1::from_support(&g, alpha).map_err(core_error)?;
    if !is_simple_cycle(&g, &alpha) {
        return Err(CliError::Precondition(format!(
            "alpha = {} is not a simple cycle",
            list(&alpha.support())
        )));
    }
    let cover = build_double_cover(&g, &gamma).map_err(core_error)?;
    let lift = cover.lift_cycle(&alpha).map_err(core_error)?;
    let via_cover = lift.component_count() == 1;
    let expected = graph_pairing(&g, &gamma, &alpha).map_err(core_error)?;
    if let Some(path) = dot {
        fs::write(path, to_dot(&cover))?;
    }
    let payload = CoverPayload {
        gamma: gamma.support(),
        alpha: alpha.support(),
        cycle_length: lift.base_length,
        components: lift.component_count(),
        lengths: lift.lengths(),
        lifted_edges: lift
            .components
            .iter()
            .map(|c| c.as_slice().to_vec())
            .collect(),
        pairing: via_cover as u8,
        graph_pairing: expected as u8,
        agree: via_cover == expected,
        cover_connected: cover.is_connected().ok(),
    };

    let mut text = String::new();
    let _ = writeln!(
        text,
        "gamma {}  alpha {}  (length {})",
        list(&payload.gamma),
        list(&payload.alpha),
        payload.cycle_length
    );
    let rows: Vec<Vec<String>> = payload
        .lifted_edges
        .iter()
        .enumerate()
        .map(|(i, c)| vec![i.to_string(), c.len().to_string(), list(c)])
        .collect();
    text.push_str(&table(&["component", "length", "cover edges"], &rows));
    let _ = writeln!(
        text,
        "pairing via cover {}  graph pairing {}  agree {}",
        payload.pairing, payload.graph_pairing, payload.agree
    );
    if let Some(c) = payload.cover_connected {
        let _ = writeln!(text, "cover connected: {c}");
    }
    if let Some(path) = dot {
        let _ = writeln!(text, "wrote {}", path.display());
    }

    Ok(Outcome {
        counterexample: !payload.agree,
        report: Report::new("cover", doc.digest(), &payload),
        text,
    })
}

#[derive(Serialize)]
struct TorsionPayload {
    arithmetic_genus: usize,
    graph_genus: usize,
    reduced_genus: usize,
    component_genus_total: usize,
    two_torsion_log2: usize,
    two_torsion_order: String,
    nondegenerate: bool,
    layout: BlockLayout,
    gram: Vec<Vec<u8>>,
}

pub fn torsion(doc: &InputDocument) -> Result<Outcome, CliError> {
    let model = doc.model()?;
    let w = model.weil_form();
    let payload = TorsionPayload {
        arithmetic_genus: model.arithmetic_genus(),
        graph_genus: model.graph().genus(),
        reduced_genus: model.reduced_genus(),
        component_genus_total: model.component_genus_total(),
        two_torsion_log2: model.two_torsion_log2(),
        two_torsion_order: model.two_torsion_order().to_string(),
        nondegenerate: model.is_nondegenerate(),
        layout: w.layout,
        gram: gram_rows(&w.gram),
    };
    // The two sides of the criterion disagreeing would be a bug.
    let consistent = payload.nondegenerate == w.is_nondegenerate();

    let mut text = table(
        &["g", "g'", "g''", "|Pic[2]|", "log2", "non-degenerate"],
        &[vec![
            payload.arithmetic_genus.to_string(),
            payload.graph_genus.to_string(),
            payload.reduced_genus.to_string(),
            payload.two_torsion_order.clone(),
            payload.two_torsion_log2.to_string(),
            payload.nondegenerate.to_string(),
        ]],
    );
    let _ = writeln!(
        text,
        "Weil form blocks: h {}  component {}  q {}",
        w.layout.h, w.layout.component, w.layout.q
    );
    text.push_str(&render_matrix(&payload.gram));
    if !consistent {
        let _ = writeln!(
            text,
            "Gram invertibility disagrees with the even-order criterion"
        );
    }

    Ok(Outcome {
        counterexample: !consistent,
        report: Report::new("torsion", doc.digest(), &payload),
        text,
    })
}

#[derive(Serialize)]
struct TropicalPayload {
    r: u64,
    mode: SubdivisionMode,
    genus: usize,
    subdivided_vertices: usize,
    subdivided_edges: usize,
    invariant_factors: Vec<String>,
    torsion_count: String,
    expected: String,
    doubled_exponent_count: String,
    verdict: bool,
    /// `(vertex, coefficient)` pairs of each generator's support.
    generator_supports: Vec<Vec<(usize, i64)>>,
}

pub fn tropical(doc: &InputDocument, r: u64, mode: SubdivisionMode) -> Result<Outcome, CliError> {
    let g = doc.graph()?;
    if !g.is_connected() {
        return Err(CliError::Precondition("the graph is not connected".into()));
    }
    if r == 0 {
        return Err(CliError::Precondition("r must be at least 1".into()));
    }
    let report = verify_torsion_on_subdivision(&g, r, mode).map_err(core_error)?;
    let payload = TropicalPayload {
        r,
        mode,
        genus: report.genus,
        subdivided_vertices: report.child_vertices,
        subdivided_edges: report.child_edges,
        invariant_factors: report
            .critical_group
            .invariant_factors
            .iter()
            .map(ToString::to_string)
            .collect(),
        torsion_count: report.torsion_count.to_string(),
        expected: report.expected.to_string(),
        doubled_exponent_count: report.doubled_exponent_count.to_string(),
        verdict: report.verdict,
        generator_supports: report.generators.iter().map(|d| d.support()).collect(),
    };

    let mut text = String::new();
    let _ = writeln!(
        text,
        "r {}  mode {}  genus {}  subdivision {} vertices / {} edges",
        r,
        mode_name(mode),
        payload.genus,
        payload.subdivided_vertices,
        payload.subdivided_edges
    );
    let _ = writeln!(
        text,
        "critical group factors ({})",
        payload.invariant_factors.join(", ")
    );
    text.push_str(&table(
        &["r-torsion", "expected r^g", "r^(2g)", "verdict"],
        &[vec![
            payload.torsion_count.clone(),
            payload.expected.clone(),
            payload.doubled_exponent_count.clone(),
            payload.verdict.to_string(),
        ]],
    ));
    for (i, s) in payload.generator_supports.iter().enumerate() {
        let terms: Vec<String> = s.iter().map(|(v, c)| format!("{c}*v{v}")).collect();
        let _ = writeln!(text, "generator {i}: {}", terms.join(" + "));
    }

    // The unsubdivided mode exists to show a mismatch; it is not a failure.
    let counterexample = !payload.verdict && mode != SubdivisionMode::Unsubdivided;
    Ok(Outcome {
        counterexample,
        report: Report::new("tropical", doc.digest(), &payload),
        text,
    })
}

pub fn mode_name(mode: SubdivisionMode) -> &'static str {
    match mode {
        SubdivisionMode::AllEdges => "all",
        SubdivisionMode::NonSeparating => "nonsep",
        SubdivisionMode::Unsubdivided => "none",
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyParams {
    pub max_edges: usize,
    pub rs: Vec<u64>,
    pub inject_fault: bool,
}

#[derive(Serialize)]
struct VerifyPayload {
    max_edges: usize,
    model_max_edges: usize,
    model_max_vertex_genus: usize,
    rs: Vec<u64>,
    inject_fault: bool,
    graphs: usize,
    sweeps: Vec<SweepOutcome>,
    passed: bool,
}

/// Shown per sweep in the text rendering; the JSON report lists all.
const SHOWN_COUNTEREXAMPLES: usize = 5;

pub fn verify(params: &VerifyParams, exec: Execution) -> Result<Outcome, CliError> {
    if params.rs.contains(&0) {
        return Err(CliError::Precondition("r must be at least 1".into()));
    }
    let graphs = enumerate_connected(params.max_edges, None);
    let model_bound = params.max_edges.min(MODEL_SWEEP_MAX_EDGES);
    let model_graphs: Vec<MultiGraph> = graphs
        .iter()
        .filter(|g| g.edge_count() <= model_bound)
        .cloned()
        .collect();
    let faults = Faults {
        flip_gram_bit: params.inject_fault,
    };
    let mut sweeps = vec![
        perfect_pairing_sweep(&graphs, exec, faults),
        cover_equivalence_sweep(&graphs, exec),
        model_sweep(&model_graphs, MODEL_SWEEP_MAX_GENUS, exec),
    ];
    for mode in [SubdivisionMode::AllEdges, SubdivisionMode::NonSeparating] {
        let mut o = tropical_sweep(&graphs, &params.rs, &[mode], exec);
        o.name = format!("{}/{}", o.name, mode_name(mode));
        sweeps.push(o);
    }
    let passed = sweeps.iter().all(SweepOutcome::passed);
    let payload = VerifyPayload {
        max_edges: params.max_edges,
        model_max_edges: model_bound,
        model_max_vertex_genus: MODEL_SWEEP_MAX_GENUS,
        rs: params.rs.clone(),
        inject_fault: params.inject_fault,
        graphs: graphs.len(),
        sweeps,
        passed,
    };

    let rows: Vec<Vec<String>> = payload
        .sweeps
        .iter()
        .map(|s| {
            vec![
                s.name.clone(),
                s.graphs.to_string(),
                s.instances.to_string(),
                s.failures.len().to_string(),
                if s.passed() { "pass" } else { "FAIL" }.to_string(),
            ]
        })
        .collect();
    let mut text = format!(
        "connected multigraphs with <= {} edges: {} (model sweep <= {} edges)\n",
        payload.max_edges, payload.graphs, payload.model_max_edges
    );
    text.push_str(&table(
        &["sweep", "graphs", "instances", "failures", "status"],
        &rows,
    ));
    for s in &payload.sweeps {
        for f in s.failures.iter().take(SHOWN_COUNTEREXAMPLES) {
            let _ = writeln!(text, "counterexample [{}] {f}", s.name);
        }
        if s.failures.len() > SHOWN_COUNTEREXAMPLES {
            let _ = writeln!(
                text,
                "... {} more in {}",
                s.failures.len() - SHOWN_COUNTEREXAMPLES,
                s.name
            );
        }
    }
    let _ = writeln!(
        text,
        "{}",
        if passed {
            "all sweeps passed"
        } else {
            "verification FAILED"
        }
    );

    let digest = digest_of(
        serde_json::to_string(params)
            .expect("parameters serialize")
            .as_bytes(),
    );
    Ok(Outcome {
        counterexample: !passed,
        report: Report::new("verify", digest, &payload),
        text,
    })
}
