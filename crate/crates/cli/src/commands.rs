use std::fmt::Write as _;

use serde_json::{json, Value};
use vfrep_core::loop_algebra::LoopCertificate;
use vfrep_core::oracle::{
    compare_enumeration, enumeration_sweep, indecomposable_gcms, probe_sweep, raw_grid,
    scaled_grid, DiscrepancyReport,
};
use vfrep_core::render::{latex_scalar, render_latex, render_text};
use vfrep_core::scalar::ScalarMatrix;
use vfrep_core::{
    build_cartan_data, certify, kernel_check, normalized_solution_matrices, verify_relations,
    CartanKind, Gcm, KernelReport, LoopError, Relation, RelationReport, Representation,
};

use crate::args::{
    ClassifyArgs, Format, LoopCheckArgs, MatrixArgs, RepArgs, RepresentArgs, SearchArgs,
    SolutionsArgs, VerifyArgs,
};
use crate::input::{
    load_gcm, load_representation, parse_diag, parse_list, representation_from_file,
};
use crate::CliError;

/// Rendered output and whether every check in it passed.
pub struct Report {
    pub body: String,
    pub passed: bool,
}

impl Report {
    fn ok(body: String) -> Self {
        Report { body, passed: true }
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report is serializable");
    s.push('\n');
    s
}

fn no_latex(cmd: &str) -> CliError {
    CliError::Input(format!("`{cmd}` has no LaTeX output; use text or json"))
}

fn kind_name(kind: CartanKind) -> String {
    format!("{kind:?}")
}

fn matrix_text(m: &[Vec<i64>]) -> String {
    serde_json::to_string(m).expect("integer matrix")
}

fn scalar_rows(m: &ScalarMatrix) -> Vec<Vec<String>> {
    m.iter()
        .map(|row| row.iter().map(ToString::to_string).collect())
        .collect()
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

pub fn classify(args: &ClassifyArgs) -> Result<Report, CliError> {
    let g = load_gcm(&args.matrix)?;
    let ty = g.classify()?;
    let affine_node = match ty.kind {
        CartanKind::AffineA(_) => build_cartan_data(&g)?.affine_node(),
        _ => None,
    };
    let solutions = normalized_solution_matrices(&g)?.len();
    let edges: Vec<Value> = ty
        .diagram
        .edges
        .iter()
        .map(|e| json!({"i": e.i + 1, "j": e.j + 1, "n_ij": e.n_ij, "n_ji": e.n_ji}))
        .collect();
    let body = match args.output.format {
        Format::Json => pretty(&json!({
            "cartan_matrix": g.entries(),
            "kind": kind_name(ty.kind),
            "label": ty.kind.to_string(),
            "rank": g.rank(),
            "corank": g.corank(),
            "symmetric": g.is_symmetric(),
            "affine_node": affine_node.map(|i| i + 1),
            "traversal": ty.traversal.as_deref().map(one_based),
            "edges": edges,
            "solution_matrices": solutions,
        })),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "matrix: {}", matrix_text(g.entries())).unwrap();
            writeln!(s, "type: {} ({})", kind_name(ty.kind), ty.kind).unwrap();
            writeln!(s, "rank: {}", g.rank()).unwrap();
            writeln!(s, "corank: {}", g.corank()).unwrap();
            if let Some(a) = affine_node {
                writeln!(s, "affine node: {} (labelled 0 in LaTeX output)", a + 1).unwrap();
            }
            if let Some(t) = &ty.traversal {
                let t: Vec<String> = one_based(t).iter().map(ToString::to_string).collect();
                writeln!(s, "traversal: {}", t.join(" ")).unwrap();
            }
            for e in &ty.diagram.edges {
                writeln!(s, "edge: {}-{} ({}, {})", e.i + 1, e.j + 1, e.n_ij, e.n_ji).unwrap();
            }
            writeln!(s, "solution matrices: {solutions}").unwrap();
            s
        }
        Format::Latex => return Err(no_latex("classify")),
    };
    Ok(Report::ok(body))
}

fn latex_matrix(m: &ScalarMatrix) -> String {
    let rows: Vec<String> = m
        .iter()
        .map(|row| row.iter().map(latex_scalar).collect::<Vec<_>>().join(" & "))
        .collect();
    format!(
        "\\begin{{pmatrix}}\n{}\n\\end{{pmatrix}}",
        rows.join(" \\\\\n")
    )
}

pub fn solutions(args: &SolutionsArgs) -> Result<Report, CliError> {
    let g = load_gcm(&args.matrix)?;
    let diag = parse_diag(args.diag.as_deref(), g.rank())?;
    let mut sms = normalized_solution_matrices(&g)?;
    if let Some(d) = &diag {
        sms = sms.iter().map(|s| s.scale(d)).collect::<Result<_, _>>()?;
    }
    let body = match args.output.format {
        Format::Json => pretty(&json!({
            "cartan_matrix": g.entries(),
            "kind": g.classify().map(|t| kind_name(t.kind)).unwrap_or_else(|_| "Other".into()),
            "solutions": sms,
        })),
        Format::Text => {
            let mut s = format!(
                "matrix: {}\nsolution matrices: {}\n",
                matrix_text(g.entries()),
                sms.len()
            );
            for (k, sm) in sms.iter().enumerate() {
                let orientation = sm
                    .orientation()
                    .map(|o| format!("{o:?}"))
                    .unwrap_or_default();
                writeln!(s, "\n[{k}] orientation: {orientation}").unwrap();
                for row in scalar_rows(sm.matrix()) {
                    writeln!(s, "  [{}]", row.join(", ")).unwrap();
                }
                let inc: Vec<String> = sm
                    .incidence()
                    .iter()
                    .map(|(i, j)| format!("({},{})", i + 1, j + 1))
                    .collect();
                writeln!(s, "  incidence: {}", inc.join(" ")).unwrap();
            }
            s
        }
        Format::Latex => {
            let blocks: Vec<String> = sms.iter().map(|sm| latex_matrix(sm.matrix())).collect();
            format!("{}\n", blocks.join("\n"))
        }
    };
    Ok(Report::ok(body))
}

pub fn represent(args: &RepresentArgs) -> Result<Report, CliError> {
    let rep = load_representation(&args.matrix, &args.rep)?;
    let body = match args.output.format {
        Format::Text => render_text(&rep),
        Format::Json => pretty(&rep.to_json()),
        Format::Latex => render_latex(&rep),
    };
    Ok(Report::ok(body))
}

fn source_given(m: &MatrixArgs, r: &RepArgs) -> bool {
    m.r#type.is_some()
        || m.matrix.is_some()
        || m.file.is_some()
        || r.sm.is_some()
        || r.a.is_some()
        || r.diag.is_some()
        || r.n.is_some()
}

fn rep_from(
    m: &MatrixArgs,
    r: &RepArgs,
    input: Option<&std::path::Path>,
) -> Result<Representation, CliError> {
    match input {
        Some(_) if source_given(m, r) => Err(CliError::Input(
            "--input cannot be combined with matrix or parameter flags".into(),
        )),
        Some(path) => representation_from_file(path),
        None => load_representation(m, r),
    }
}

const RELATIONS: [Relation; 5] = [
    Relation::A,
    Relation::B,
    Relation::C,
    Relation::D,
    Relation::E,
];

fn verify_text(rep: &Representation, report: &RelationReport, kernel: &KernelReport) -> String {
    let mut s = String::new();
    let n: Vec<String> = rep.n().iter().map(ToString::to_string).collect();
    writeln!(s, "type: {}", rep.cartan().kind()).unwrap();
    writeln!(s, "n: {}", n.join(",")).unwrap();
    for rel in RELATIONS {
        let (p, t) = report.tally(rel);
        writeln!(s, "relation {rel}: {p}/{t} passed").unwrap();
    }
    for f in report.failures() {
        let idx: Vec<String> = f.indices.iter().map(ToString::to_string).collect();
        let residual = f
            .residual
            .as_ref()
            .map(ToString::to_string)
            .unwrap_or_default();
        writeln!(
            s,
            "  FAIL {} [{}]: residual {residual}",
            f.relation,
            idx.join(",")
        )
        .unwrap();
    }
    writeln!(
        s,
        "kernel: dim {} (centre dim {}){}",
        kernel.kernel_dim,
        kernel.centre_dim,
        match kernel.centre_image_vanishes {
            Some(true) => ", F(H_1+...+H_r) = 0",
            Some(false) => ", F(H_1+...+H_r) != 0",
            None => "",
        }
    )
    .unwrap();
    let ok = report.all_passed() && kernel.passed();
    writeln!(s, "result: {}", if ok { "PASS" } else { "FAIL" }).unwrap();
    s
}

pub fn verify(args: &VerifyArgs) -> Result<Report, CliError> {
    let rep = rep_from(&args.matrix, &args.rep, args.input.as_deref())?;
    let report = verify_relations(&rep);
    let kernel = kernel_check(&rep);
    let passed = report.all_passed() && kernel.passed();
    let body = match args.output.format {
        Format::Text => verify_text(&rep, &report, &kernel),
        Format::Json => {
            let tallies: serde_json::Map<String, Value> = RELATIONS
                .iter()
                .map(|&rel| {
                    let (p, t) = report.tally(rel);
                    (rel.to_string(), json!({"passed": p, "total": t}))
                })
                .collect();
            pretty(&json!({
                "kind": kind_name(rep.cartan().kind()),
                "n": rep.n(),
                "matrix": scalar_rows(rep.matrix()),
                "passed": passed,
                "tallies": tallies,
                "kernel": kernel,
                "checks": report.checks,
            }))
        }
        Format::Latex => return Err(no_latex("verify")),
    };
    Ok(Report { body, passed })
}

fn parse_range(text: &str) -> Result<(i64, i64), CliError> {
    let t = text.trim();
    let parts: Vec<i64> = match t.split_once("..") {
        Some((a, b)) => vec![a, b]
            .into_iter()
            .map(|s| s.trim().parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|e| CliError::Input(format!("bad --m-range `{t}`: {e}")))?,
        None => parse_list(t, "--m-range", str::parse::<i64>)?,
    };
    match parts[..] {
        [lo, hi] if lo <= hi => Ok((lo, hi)),
        _ => Err(CliError::Input(format!(
            "bad --m-range `{t}`: expected LO..HI with LO <= HI"
        ))),
    }
}

fn loop_text(rep: &Representation, cert: &LoopCertificate) -> String {
    let mut s = String::new();
    writeln!(s, "type: {}", rep.cartan().kind()).unwrap();
    if let Some(a) = rep.cartan().affine_node() {
        writeln!(s, "affine node: {}", a + 1).unwrap();
    }
    writeln!(s, "T = {}", cert.t).unwrap();
    writeln!(s, "X_phi = {}", cert.phi_plus).unwrap();
    writeln!(s, "X_-phi = {}", cert.phi_minus).unwrap();
    writeln!(s, "finite part dimension: {}", cert.sl_basis.len()).unwrap();
    writeln!(s, "m range: {}..{}", cert.m_range.0, cert.m_range.1).unwrap();
    let total = cert.checks.checks.len();
    let passed = cert.checks.checks.iter().filter(|c| c.passed).count();
    writeln!(s, "checks: {passed}/{total} passed").unwrap();
    for c in cert.checks.checks.iter().filter(|c| !c.passed) {
        writeln!(
            s,
            "  FAIL {}: {}",
            c.name,
            c.detail.as_deref().unwrap_or("")
        )
        .unwrap();
    }
    writeln!(s, "result: {}", if cert.passed() { "PASS" } else { "FAIL" }).unwrap();
    s
}

pub fn loop_check(args: &LoopCheckArgs) -> Result<Report, CliError> {
    let m_range = parse_range(&args.m_range)?;
    let rep = rep_from(&args.matrix, &args.rep, args.input.as_deref())?;
    let cert = match certify(&rep, m_range) {
        Ok(c) => c,
        Err(LoopError::NotAffine) => {
            return Err(CliError::Input("loop-check needs an affine type".into()))
        }
        // the images of tampered input may fail to produce X_phi or T
        Err(e) if args.input.is_some() => {
            return Ok(Report {
                body: format!("result: FAIL\n{e}\n"),
                passed: false,
            })
        }
        Err(e) => return Err(CliError::Internal(e.to_string())),
    };
    let body = match args.output.format {
        Format::Text => loop_text(&rep, &cert),
        Format::Json => pretty(&json!({
            "kind": kind_name(rep.cartan().kind()),
            "n": rep.n(),
            "passed": cert.passed(),
            "certificate": cert,
        })),
        Format::Latex => return Err(no_latex("loop-check")),
    };
    Ok(Report {
        body,
        passed: cert.passed(),
    })
}

fn probe_rank_two(g: &Gcm, report: &mut DiscrepancyReport) -> Result<(), CliError> {
    probe_sweep(g, &scaled_grid(2), report)?;
    probe_sweep(g, &raw_grid(2), report)?;
    Ok(())
}

pub fn search(args: &SearchArgs) -> Result<Report, CliError> {
    let m = &args.matrix;
    let single = m.r#type.is_some() || m.matrix.is_some() || m.file.is_some();
    let mut report = if single {
        let g = load_gcm(&args.matrix)?;
        g.classify()?;
        let mut r = DiscrepancyReport {
            gcms_checked: 1,
            gcms_with_solutions: usize::from(!normalized_solution_matrices(&g)?.is_empty()),
            ..Default::default()
        };
        r.enumeration.extend(compare_enumeration(&g)?);
        if g.rank() == 2 && !args.no_probe {
            probe_rank_two(&g, &mut r)?;
        }
        r
    } else {
        if args.max_rank == 0 || args.min_entry > -1 {
            return Err(CliError::Input(
                "need --max-rank >= 1 and --min-entry <= -1".into(),
            ));
        }
        let mut r = enumeration_sweep(args.max_rank, args.min_entry)?;
        if args.max_rank >= 2 && !args.no_probe {
            for g in indecomposable_gcms(2, args.min_entry)
                .iter()
                .filter(|g| g.rank() == 2)
            {
                probe_rank_two(g, &mut r)?;
            }
        }
        r
    };
    report
        .enumeration
        .sort_by(|a, b| a.cartan_matrix.cmp(&b.cartan_matrix));
    let passed = report.is_clean();
    let body = match args.output.format {
        Format::Json => pretty(&report),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "GCMs checked: {}", report.gcms_checked).unwrap();
            writeln!(s, "with solution matrices: {}", report.gcms_with_solutions).unwrap();
            writeln!(s, "probe candidates: {}", report.candidates_probed).unwrap();
            writeln!(s, "probe accepted: {}", report.candidates_accepted).unwrap();
            for d in &report.enumeration {
                writeln!(
                    s,
                    "  enumeration mismatch at {}",
                    matrix_text(&d.cartan_matrix)
                )
                .unwrap();
            }
            for d in &report.probe {
                writeln!(
                    s,
                    "  probe mismatch at {} for {:?}: probe {}, validator {}",
                    matrix_text(&d.cartan_matrix),
                    d.candidate,
                    d.probe,
                    d.validator
                )
                .unwrap();
            }
            writeln!(
                s,
                "discrepancies: {}",
                report.enumeration.len() + report.probe.len()
            )
            .unwrap();
            s
        }
        Format::Latex => return Err(no_latex("search")),
    };
    Ok(Report { body, passed })
}
