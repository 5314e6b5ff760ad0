use graphstate::entanglement::{bounds_row, BoundsRow};
use graphstate::graphs::to_graph6;
use graphstate::measurement::{render_byproduct, TranscriptEntry};
use graphstate::oracle::verify_suite;
use graphstate::{apply_sequence, classify, lc_orbit_labeled, ClassRecord, Graph, OrbitConfig, PersistencyConfig, Step};
use rayon::prelude::*;
use serde::Serialize;

use crate::{CliError, Format};

fn csv_string<T: Serialize>(rows: &[T]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(|e| CliError::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
}

fn json_string<T: Serialize + ?Sized>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn dot_all<'a>(graphs: impl IntoIterator<Item = (String, &'a Graph)>) -> String {
    graphs.into_iter().map(|(name, g)| g.to_dot(&name)).collect()
}

pub fn bounds(graphs: &[Graph], cfg: &PersistencyConfig, format: Format) -> Result<String, CliError> {
    let rows: Vec<BoundsRow> = graphs
        .par_iter()
        .map(|g| bounds_row(g, cfg))
        .collect::<Result<_, _>>()?;
    match format {
        Format::Csv => csv_string(&rows),
        Format::Json => json_string(&rows),
        Format::Dot => Ok(dot_all(graphs.iter().zip(&rows).map(|(g, r)| {
            let label = if r.tight { r.lower.to_string() } else { format!("{}<{}", r.lower, r.upper) };
            (format!("{} E_S={label}", r.graph6), g)
        }))),
    }
}

/// Table-style CSV row; column order is fixed.
#[derive(Serialize)]
struct ClassRow<'a> {
    no: usize,
    class_size: usize,
    n_vertices: usize,
    n_edges: usize,
    lower: usize,
    upper: usize,
    #[serde(rename = "RI_3")]
    ri_3: String,
    #[serde(rename = "RI_2")]
    ri_2: String,
    two_colorable: &'static str,
    representative: &'a str,
}

fn class_rows(records: &[ClassRecord]) -> Vec<ClassRow<'_>> {
    let cell = |ri: &Option<graphstate::RankIndex>| ri.as_ref().map_or("-".to_string(), |r| r.to_string());
    records
        .iter()
        .map(|r| ClassRow {
            no: r.class_id,
            class_size: r.member_count,
            n_vertices: r.n_vertices,
            n_edges: r.n_edges,
            lower: r.lower,
            upper: r.upper,
            ri_3: cell(&r.rank_index_3),
            ri_2: cell(&r.rank_index_2),
            two_colorable: if r.two_colorable_member_exists { "yes" } else { "no" },
            representative: &r.representative,
        })
        .collect()
}

pub fn classify_table(n_max: usize, cfg: &PersistencyConfig, format: Format) -> Result<String, CliError> {
    let records = classify(n_max, cfg)?;
    match format {
        Format::Csv => csv_string(&class_rows(&records)),
        Format::Json => json_string(&records),
        Format::Dot => {
            let graphs: Vec<Graph> = records
                .iter()
                .map(|r| graphstate::graphs::parse_graph6(&r.representative))
                .collect::<Result<_, _>>()?;
            Ok(dot_all(
                records
                    .iter()
                    .zip(&graphs)
                    .map(|(r, g)| (format!("class {} E_S={}", r.class_id, r.bounds_label()), g)),
            ))
        }
    }
}

#[derive(Serialize)]
struct MeasureReport {
    input: String,
    transcript: Vec<TranscriptEntry>,
    final_graph6: String,
    /// Remaining vertices, by original label.
    survivors: Vec<usize>,
    byproduct: String,
    probability: f64,
}

pub fn measure(g: &Graph, steps: &[Step], format: Format) -> Result<String, CliError> {
    let result = apply_sequence(g, steps)?;
    let report = MeasureReport {
        input: to_graph6(g),
        transcript: result.transcript(),
        final_graph6: to_graph6(&result.graph),
        survivors: result.survivors.clone(),
        byproduct: render_byproduct(&result.byproduct, &result.survivors),
        probability: result.probability,
    };
    match format {
        Format::Json => json_string(&report),
        Format::Csv => csv_string(&report.transcript),
        Format::Dot => {
            let mut out = g.to_dot("input");
            for r in &result.records {
                let name = format!("after {}:{}:{}", r.step.vertex, r.step.basis.letter().to_ascii_lowercase(), r.step.outcome);
                out.push_str(&r.graph_after.to_dot(&name));
            }
            Ok(out)
        }
    }
}

#[derive(Serialize)]
struct OrbitRow {
    graph6: String,
    n_edges: usize,
    two_colorable: bool,
}

#[derive(Serialize)]
struct OrbitReport {
    input: String,
    size: usize,
    graphs: Vec<OrbitRow>,
}

pub fn orbit(g: &Graph, cfg: &OrbitConfig, format: Format) -> Result<String, CliError> {
    let orbit = lc_orbit_labeled(g, cfg)?;
    let rows: Vec<OrbitRow> = orbit
        .iter()
        .map(|h| OrbitRow {
            graph6: to_graph6(h),
            n_edges: h.n_edges(),
            two_colorable: h.is_two_colorable(),
        })
        .collect();
    match format {
        Format::Csv => csv_string(&rows),
        Format::Json => json_string(&OrbitReport {
            input: to_graph6(g),
            size: rows.len(),
            graphs: rows,
        }),
        Format::Dot => Ok(dot_all(orbit.iter().map(|h| (to_graph6(h), h)))),
    }
}

/// Returns the rendered report and whether every check passed.
pub fn verify(seed: u64, max_vertices: usize, trials: usize, format: Format) -> Result<(String, bool), CliError> {
    let report = verify_suite(seed, max_vertices, trials)?;
    let ok = report.all_passed();
    let text = match format {
        Format::Json => json_string(&report)?,
        Format::Csv => {
            #[derive(Serialize)]
            struct Row<'a> {
                check: &'a str,
                cases: usize,
                failures: usize,
                worst_deviation: String,
                passed: bool,
            }
            let rows: Vec<Row> = report
                .checks
                .iter()
                .map(|c| Row {
                    check: &c.name,
                    cases: c.cases,
                    failures: c.failures,
                    worst_deviation: format!("{:.3e}", c.worst_deviation),
                    passed: c.passed(),
                })
                .collect();
            csv_string(&rows)?
        }
        Format::Dot => return Err(CliError::Usage("verify does not support --format dot".into())),
    };
    Ok((text, ok))
}
