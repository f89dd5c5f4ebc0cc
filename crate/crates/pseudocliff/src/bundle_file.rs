//! The bundle description format.
//!
//! ```text
//! [chart]
//! id = V1
//! base_dim = 1
//! fibre_dim = 1
//! dual_profile = 0; (0):1     # default rank, then point:rank exceptions
//! metric = x0*x0 + 1          # one row per line, entries separated by commas
//!
//! [gluing]
//! source = V1
//! target = V0
//! locus = (0) -> ()
//! lift = 1                    # rows of the lift at the most recent locus point
//! lift = 0
//! ```
//!
//! `#` starts a comment. `dual_profile` defaults to the fibre dimension and
//! `metric` is optional. Metric entries are polynomials in `x0 … x{base_dim-1}`.

use pseudocliff_core::linalg::Matrix;
use pseudocliff_core::pseudobundle::{Chart, DualProfile, Gluing, LocusPoint, PseudoBundle, PseudoMetricChart};
use pseudocliff_core::Rational;
use serde_json::{json, Value};

use crate::expr::{parse_polynomial, parse_rational, ParseError, Variables};
use crate::json;

/// Default rank, exceptions, and the line it was declared on.
type ProfileDraft = (usize, Vec<(Vec<Rational>, usize)>, usize);

#[derive(Default)]
struct ChartDraft {
    line: usize,
    id: Option<String>,
    base_dim: Option<usize>,
    fibre_dim: Option<usize>,
    profile: Option<ProfileDraft>,
    metric: Vec<(usize, usize, String)>,
}

struct LocusDraft {
    line: usize,
    source: Vec<Rational>,
    target: Vec<Rational>,
    lift: Vec<Vec<Rational>>,
}

#[derive(Default)]
struct GluingDraft {
    line: usize,
    source: Option<String>,
    target: Option<String>,
    locus: Vec<LocusDraft>,
}

enum Section {
    Chart(ChartDraft),
    Gluing(GluingDraft),
}

fn err(line: usize, column: usize, msg: impl Into<String>) -> ParseError {
    ParseError::new(line, column, msg)
}

fn parse_count(value: &str, line: usize, col: usize) -> Result<usize, ParseError> {
    value
        .parse()
        .map_err(|_| err(line, col, format!("expected a non-negative integer, found `{value}`")))
}

/// Splits on commas, trimming; an empty string has no entries.
fn entries(value: &str) -> Vec<&str> {
    if value.trim().is_empty() {
        Vec::new()
    } else {
        value.split(',').map(str::trim).collect()
    }
}

fn parse_row(value: &str, line: usize, col: usize) -> Result<Vec<Rational>, ParseError> {
    entries(value)
        .into_iter()
        .map(|e| parse_rational(e).map_err(|pe| err(line, col, format!("bad number `{e}`: {}", pe.message))))
        .collect()
}

/// `(a, b, …)`.
fn parse_point(text: &str, line: usize, col: usize) -> Result<Vec<Rational>, ParseError> {
    let t = text.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| err(line, col, format!("expected a parenthesised point, found `{t}`")))?;
    parse_row(inner, line, col)
}

fn parse_profile(
    value: &str,
    line: usize,
    col: usize,
) -> Result<ProfileDraft, ParseError> {
    let mut parts = value.split(';');
    let default = parse_count(parts.next().unwrap_or("").trim(), line, col)?;
    let mut exceptions = Vec::new();
    for part in parts {
        let (pt, rank) = part
            .rsplit_once(':')
            .ok_or_else(|| err(line, col, format!("expected `(point):rank`, found `{}`", part.trim())))?;
        exceptions.push((parse_point(pt, line, col)?, parse_count(rank.trim(), line, col)?));
    }
    Ok((default, exceptions, line))
}

fn finish_chart(d: ChartDraft) -> Result<Chart, ParseError> {
    let missing = |k: &str| err(d.line, 1, format!("chart section is missing `{k}`"));
    let id = d.id.clone().ok_or_else(|| missing("id"))?;
    let base_dim = d.base_dim.ok_or_else(|| missing("base_dim"))?;
    let fibre_dim = d.fibre_dim.ok_or_else(|| missing("fibre_dim"))?;
    let mut chart = Chart::new(id, base_dim, fibre_dim);
    if let Some((default, exceptions, line)) = d.profile {
        let profile = exceptions
            .into_iter()
            .fold(DualProfile::constant(default), |p, (pt, r)| p.with_exception(pt, r));
        chart = chart
            .with_dual_profile(profile)
            .map_err(|e| err(line, 1, e.to_string()))?;
    }
    if !d.metric.is_empty() {
        let vars = Variables::Indexed(base_dim);
        let mut rows = Vec::new();
        for (line, col, text) in &d.metric {
            let row = entries(text)
                .into_iter()
                .map(|e| {
                    let offset = col + text.find(e).unwrap_or(0);
                    parse_polynomial(e, &vars).map_err(|pe| pe.at_line(*line, offset))
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        let first = d.metric[0].0;
        let metric = PseudoMetricChart::new(base_dim, rows).map_err(|e| err(first, 1, e.to_string()))?;
        chart = chart.with_metric(metric).map_err(|e| err(first, 1, e.to_string()))?;
    }
    Ok(chart)
}

fn finish_gluing(d: GluingDraft, charts: &[Chart]) -> Result<Gluing, ParseError> {
    let missing = |k: &str| err(d.line, 1, format!("gluing section is missing `{k}`"));
    let source = d.source.clone().ok_or_else(|| missing("source"))?;
    let target = d.target.clone().ok_or_else(|| missing("target"))?;
    let dim = |id: &str| {
        charts
            .iter()
            .find(|c| c.id() == id)
            .map(Chart::fibre_dim)
            .ok_or_else(|| err(d.line, 1, format!("unknown chart `{id}`")))
    };
    let (k1, k2) = (dim(&source)?, dim(&target)?);
    let mut locus = Vec::new();
    for lp in d.locus {
        let rows = if k1 == 0 && lp.lift.is_empty() { vec![Vec::new(); k2] } else { lp.lift };
        if rows.len() != k2 || rows.iter().any(|r| r.len() != k1) {
            return Err(err(
                lp.line,
                1,
                format!("lift must be {k2}x{k1} (target fibre x source fibre)"),
            ));
        }
        let lift = Matrix::from_rows(rows, k1).map_err(|e| err(lp.line, 1, e.to_string()))?;
        locus.push(LocusPoint::new(lp.source, lp.target, lift));
    }
    Ok(Gluing::new(source, target, locus))
}

/// Parses and validates a bundle description.
pub fn parse_bundle(src: &str) -> Result<PseudoBundle, ParseError> {
    let mut sections: Vec<Section> = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        let text = raw.split('#').next().unwrap_or("");
        let trimmed = text.trim();
        if trimmed.is_empty() {
            continue;
        }
        match trimmed {
            "[chart]" => {
                sections.push(Section::Chart(ChartDraft { line, ..Default::default() }));
                continue;
            }
            "[gluing]" => {
                sections.push(Section::Gluing(GluingDraft { line, ..Default::default() }));
                continue;
            }
            s if s.starts_with('[') => return Err(err(line, 1, format!("unknown section `{s}`"))),
            _ => {}
        }
        let (key, value) = text
            .split_once('=')
            .ok_or_else(|| err(line, 1, "expected `key = value`"))?;
        let value_start = text.len() - value.trim_start().len();
        let col = value_start + 1;
        let (key, value) = (key.trim(), value.trim());
        match sections.last_mut() {
            None => return Err(err(line, 1, "key outside of a section")),
            Some(Section::Chart(c)) => match key {
                "id" => c.id = Some(value.to_string()),
                "base_dim" => c.base_dim = Some(parse_count(value, line, col)?),
                "fibre_dim" => c.fibre_dim = Some(parse_count(value, line, col)?),
                "dual_profile" => c.profile = Some(parse_profile(value, line, col)?),
                "metric" => c.metric.push((line, value_start, value.to_string())),
                _ => return Err(err(line, 1, format!("unknown chart key `{key}`"))),
            },
            Some(Section::Gluing(g)) => match key {
                "source" => g.source = Some(value.to_string()),
                "target" => g.target = Some(value.to_string()),
                "locus" => {
                    let (s, t) = value
                        .split_once("->")
                        .ok_or_else(|| err(line, col, "expected `(source point) -> (target point)`"))?;
                    g.locus.push(LocusDraft {
                        line,
                        source: parse_point(s, line, col)?,
                        target: parse_point(t, line, col)?,
                        lift: Vec::new(),
                    });
                }
                "lift" => g
                    .locus
                    .last_mut()
                    .ok_or_else(|| err(line, 1, "`lift` before any `locus`"))?
                    .lift
                    .push(parse_row(value, line, col)?),
                _ => return Err(err(line, 1, format!("unknown gluing key `{key}`"))),
            },
        }
    }

    let mut charts = Vec::new();
    let mut drafts = Vec::new();
    for s in sections {
        match s {
            Section::Chart(c) => charts.push(finish_chart(c)?),
            Section::Gluing(g) => drafts.push(g),
        }
    }
    PseudoBundle::new(charts.clone(), Vec::new()).map_err(|e| err(1, 1, e.to_string()))?;
    let mut gluings = Vec::new();
    for d in drafts {
        let line = d.line;
        gluings.push(finish_gluing(d, &charts)?);
        PseudoBundle::new(charts.clone(), gluings.clone()).map_err(|e| err(line, 1, e.to_string()))?;
    }
    PseudoBundle::new(charts, gluings).map_err(|e| err(1, 1, e.to_string()))
}

fn point_text(p: &[Rational]) -> String {
    let parts: Vec<String> = p.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Writes `b` back in the description format.
pub fn write_bundle(b: &PseudoBundle) -> String {
    let mut out = String::new();
    for c in b.charts() {
        out.push_str(&format!(
            "[chart]\nid = {}\nbase_dim = {}\nfibre_dim = {}\n",
            c.id(),
            c.base_dim(),
            c.fibre_dim()
        ));
        let p = c.dual_profile();
        let mut profile = p.default_rank().to_string();
        for (pt, r) in p.exceptions() {
            profile.push_str(&format!("; {}:{r}", point_text(pt)));
        }
        out.push_str(&format!("dual_profile = {profile}\n"));
        if let Some(m) = c.metric() {
            for row in m.rows() {
                let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                out.push_str(&format!("metric = {}\n", cells.join(", ")));
            }
        }
        out.push('\n');
    }
    for g in b.gluings() {
        out.push_str(&format!("[gluing]\nsource = {}\ntarget = {}\n", g.source, g.target));
        for lp in &g.locus {
            out.push_str(&format!("locus = {} -> {}\n", point_text(&lp.source), point_text(&lp.target)));
            for i in 0..lp.lift.rows() {
                let cells: Vec<String> = lp.lift.row(i).iter().map(ToString::to_string).collect();
                out.push_str(&format!("lift = {}\n", cells.join(", ")));
            }
        }
        out.push('\n');
    }
    out
}

/// Normalized JSON form of a bundle.
pub fn bundle_json(b: &PseudoBundle) -> Value {
    let charts: Vec<Value> = b
        .charts()
        .iter()
        .map(|c| {
            let p = c.dual_profile();
            let exceptions: Vec<Value> = p
                .exceptions()
                .map(|(pt, r)| json!({ "point": json::rationals(pt), "rank": r }))
                .collect();
            let metric = c.metric().map_or(Value::Null, |m| {
                Value::Array(
                    m.rows()
                        .iter()
                        .map(|row| Value::Array(row.iter().map(json::polynomial).collect()))
                        .collect(),
                )
            });
            json!({
                "id": c.id(),
                "base_dim": c.base_dim(),
                "fibre_dim": c.fibre_dim(),
                "dual_profile": { "default": p.default_rank(), "exceptions": exceptions },
                "metric": metric,
            })
        })
        .collect();
    let gluings: Vec<Value> = b
        .gluings()
        .iter()
        .map(|g| {
            let locus: Vec<Value> = g
                .locus
                .iter()
                .map(|lp| {
                    json!({
                        "source": json::rationals(&lp.source),
                        "target": json::rationals(&lp.target),
                        "lift": json::matrix(&lp.lift),
                    })
                })
                .collect();
            json!({ "source": g.source, "target": g.target, "locus": locus })
        })
        .collect();
    json!({ "charts": charts, "gluings": gluings })
}
