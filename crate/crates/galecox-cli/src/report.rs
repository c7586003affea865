//! Text and JSON renderings of verification reports.
//!
//! Every human-readable report has a structured mirror with the same
//! content, selected by `--format json`. Rendering is pure formatting:
//! verdicts and certificates come from the library untouched.

use galecox::condstar::{StarFailure, StarReport};
use galecox::rational::format_rational;
use galecox::series::{SeriesInstance, SeriesReport};
use galecox::sl3::TableReport;
use galecox::spanning::SpanningVerdict;
use serde_json::{json, Value};

fn rational_list(xs: &[galecox::rational::Rational]) -> Vec<String> {
    xs.iter().map(format_rational).collect()
}

fn int_list(xs: &[galecox::rational::Int]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

pub fn spanning_json(v: &SpanningVerdict) -> Value {
    json!({
        "holds": v.holds,
        "failure": v.failure.as_ref().map(|w| json!({
            "deleted": w.deleted,
            "functional": rational_list(&w.functional),
        })),
        "certificates": v.certificates.as_ref().map(|cs| cs.iter().map(|c| json!({
            "deleted": c.deleted,
            "coefficients": rational_list(&c.coefficients),
        })).collect::<Vec<_>>()),
    })
}

pub fn spanning_text(v: &SpanningVerdict) -> String {
    let mut out = String::new();
    if v.holds {
        out.push_str("positively 2-spanning: yes\n");
        if let Some(cs) = &v.certificates {
            out.push_str(&format!(
                "certificates: {} strictly positive dependences, one per deletable member\n",
                cs.len()
            ));
        }
    } else {
        out.push_str("positively 2-spanning: no\n");
        match &v.failure {
            Some(w) => out.push_str(&format!(
                "witness: delete member {}; the rest satisfy h >= 0 for h = ({})\n",
                w.deleted,
                rational_list(&w.functional).join(", ")
            )),
            None => out.push_str("witness: the configuration is empty\n"),
        }
    }
    out
}

pub fn star_json(r: &StarReport) -> Value {
    json!({
        "holds": r.holds,
        "spanning": spanning_json(&r.spanning),
        "generation": r.generation.iter().map(|c| json!({
            "weight_index": c.weight_index,
            "generates": c.generates,
        })).collect::<Vec<_>>(),
        "failure": r.failure.as_ref().map(|f| match f {
            StarFailure::NotPositively2Spanning { witness } => json!({
                "kind": "not-positively-2-spanning",
                "witness": witness.as_ref().map(|w| json!({
                    "deleted": w.deleted,
                    "functional": rational_list(&w.functional),
                })),
            }),
            StarFailure::GenerationFails { weight_index } => json!({
                "kind": "generation-fails",
                "weight_index": weight_index,
            }),
        }),
    })
}

pub fn star_text(r: &StarReport) -> String {
    let mut out = String::new();
    out.push_str(if r.holds {
        "condition *: holds\n"
    } else {
        "condition *: fails\n"
    });
    out.push_str(&format!(
        "  free images 2-spanning: {}\n",
        if r.spanning.holds { "yes" } else { "no" }
    ));
    let failing: Vec<usize> = r
        .generation
        .iter()
        .filter(|c| !c.generates)
        .map(|c| c.weight_index)
        .collect();
    if failing.is_empty() {
        out.push_str(&format!(
            "  generation after each deletion: all pass ({} checks)\n",
            r.generation.len()
        ));
    } else {
        out.push_str(&format!(
            "  generation fails when deleting weight(s) {:?}\n",
            failing
        ));
    }
    if let Some(StarFailure::NotPositively2Spanning { witness: Some(w) }) = &r.failure {
        out.push_str(&format!(
            "  halfspace witness: delete copy {}, functional ({})\n",
            w.deleted,
            rational_list(&w.functional).join(", ")
        ));
    }
    out
}

pub fn table_json(t: &TableReport) -> Value {
    json!({
        "pass": t.pass(),
        "rows": t.rows.iter().map(|row| json!({
            "case": row.case,
            "pass": row.pass(),
            "checks": row.reports.iter().map(|rep| json!({
                "label": rep.label.to_string(),
                "condition_star": rep.condition_star.holds,
                "open_orbit": rep.open_orbit,
                "dim_q_expected": rep.dim_q_expected,
                "dim_q_actual": rep.dim_q_actual,
                "theta_weights": rep.theta_weights.iter()
                    .map(|e| int_list(e.free_part()))
                    .collect::<Vec<_>>(),
                "pass": rep.pass(),
            })).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

pub fn table_text(t: &TableReport) -> String {
    let mut out = String::new();
    out.push_str("case    condition-*  open-orbit  dim-Q  result\n");
    for row in &t.rows {
        let star = row.reports.iter().all(|r| r.condition_star.holds);
        let orbit = row.reports.iter().all(|r| r.open_orbit);
        let dim = row.reports.iter().all(|r| r.dim_q_matches());
        let mark = |b: bool| if b { "ok" } else { "FAIL" };
        let variants = if row.reports.len() > 1 {
            format!("  (r=0 and r=1)")
        } else {
            String::new()
        };
        out.push_str(&format!(
            "{:<8}{:<13}{:<12}{:<7}{}{}\n",
            row.case,
            mark(star),
            mark(orbit),
            mark(dim),
            if row.pass() { "PASS" } else { "FAIL" },
            variants,
        ));
    }
    let passed = t.rows.iter().filter(|r| r.pass()).count();
    out.push_str(&format!("result: {}/{} rows pass\n", passed, t.rows.len()));
    out
}

pub fn series_json(inst: &SeriesInstance, r: &SeriesReport) -> Value {
    json!({
        "n": inst.n,
        "d": inst.d,
        "pass": r.pass(),
        "condition_star": star_json(&r.condition_star),
        "invariants_independent": r.invariants_independent,
        "rank_matches": r.rank_matches,
        "determinant_weight": int_list(
            galecox::series::determinant_weight(inst).free_part()
        ),
    })
}

pub fn series_text(inst: &SeriesInstance, r: &SeriesReport) -> String {
    let det = galecox::series::determinant_weight(inst);
    let mut out = format!(
        "series instance n={} d={}: {}\n",
        inst.n,
        inst.d,
        if r.pass() { "PASS" } else { "FAIL" }
    );
    out.push_str(&format!(
        "  condition *: {}\n",
        if r.condition_star.holds { "holds" } else { "fails" }
    ));
    out.push_str(&format!(
        "  invariant weights independent (det weight ({})): {}\n",
        int_list(det.free_part()).join(", "),
        if r.invariants_independent { "yes" } else { "no" }
    ));
    out.push_str(&format!(
        "  class-group rank = d: {}\n",
        if r.rank_matches { "yes" } else { "no" }
    ));
    out
}
