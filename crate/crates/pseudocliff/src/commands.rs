//! The subcommands as plain functions: each takes its inputs as text and
//! returns a report, or an input error with a location.

use std::fmt;

use pseudocliff_core::absring::AbsRing;
use pseudocliff_core::cliffbundle::{
    check_action_compat, check_generator_relations, clifford_bundle, exterior_lift, induced_action,
    standard_action, verify_phi_iso, CliffordAction,
};
use pseudocliff_core::clifford::{BilinearForm, CliffordAlgebra, MAX_DIM};
use pseudocliff_core::linalg::Matrix;
use pseudocliff_core::matdiff::{
    algebra_closure_within, max_smooth_action_pattern, AbsMatrix, EntryPattern, MatrixFunction, MatrixPattern,
    VectorPattern,
};
use pseudocliff_core::multilinear::blade_name;
use pseudocliff_core::pseudobundle::{
    check_compatible, dual, induced_pseudometric, rank_profile_realizable, realizing_metric, validate_pseudometric,
    BasePoint, DualProfile, PseudoBundle,
};
use pseudocliff_core::{Error, Rational, Verdict};
use serde_json::{json, Value};

use crate::bundle_file::{bundle_json, parse_bundle};
use crate::expr::{abs_variable, parse_abs, parse_rational, ParseError};
use crate::json;
use crate::reproduce;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn of(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

pub struct Report {
    pub status: Status,
    pub body: Value,
}

impl Report {
    fn new(command: &str, status: Status, mut body: Value) -> Report {
        body["command"] = json!(command);
        body["status"] = json!(status.name());
        Report { status, body }
    }

    pub fn render(&self) -> String {
        json::render(&self.body)
    }
}

/// Bad input: which input, and where in it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub input: String,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl InputError {
    pub fn new(input: impl Into<String>, e: ParseError) -> InputError {
        InputError {
            input: input.into(),
            line: e.line,
            column: e.column,
            message: e.message,
        }
    }

    fn arg(input: &str, message: impl Into<String>) -> InputError {
        InputError::new(input, ParseError::new(1, 1, message))
    }

    pub fn json(&self, command: &str) -> Value {
        json!({
            "command": command,
            "status": "input-error",
            "error": { "input": self.input, "line": self.line, "column": self.column, "message": self.message },
        })
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}: {}", self.input, self.line, self.column, self.message)
    }
}

impl std::error::Error for InputError {}

type Outcome = Result<Report, InputError>;

/// `r1,r2;r3,r4` style rows of rationals.
fn parse_matrix_rows(text: &str, input: &str) -> Result<Vec<Vec<Rational>>, InputError> {
    text.split(';')
        .map(|row| {
            row.split(',')
                .map(|c| parse_rational(c).map_err(|e| InputError::new(input, e)))
                .collect()
        })
        .collect()
}

/// `I`, `0`, `diag:a,b,…` or rows `a,b;c,d`.
pub fn parse_form(text: &str, dim: usize) -> Result<BilinearForm, InputError> {
    let input = "--form";
    let t = text.trim();
    let m = match t {
        "I" => Matrix::identity(dim),
        "0" => Matrix::zeros(dim, dim),
        _ => {
            if let Some(d) = t.strip_prefix("diag:") {
                let entries = parse_matrix_rows(d, input)?.concat();
                Matrix::diagonal(&entries)
            } else {
                let rows = parse_matrix_rows(t, input)?;
                Matrix::from_rows(rows, dim).map_err(|e| InputError::arg(input, e.to_string()))?
            }
        }
    };
    if m.rows() != dim {
        return Err(InputError::arg(input, format!("form has size {}, expected {dim}", m.rows())));
    }
    BilinearForm::new(m).map_err(|e| InputError::arg(input, e.to_string()))
}

/// Multiplication table as `[{left, right, result: [{blade, coeff}]}]`.
pub fn table_json(alg: &CliffordAlgebra) -> Value {
    Value::Array(
        alg.multiplication_table()
            .into_iter()
            .map(|t| {
                json!({
                    "left": blade_name(t.left),
                    "right": blade_name(t.right),
                    "result": json::blade_terms(&t.product.to_dense()),
                })
            })
            .collect(),
    )
}

pub fn clifford_table(dim: usize, form: &str, lambda: &str) -> Outcome {
    if dim > MAX_DIM {
        return Err(InputError::arg("--dim", format!("dimension {dim} exceeds the maximum {MAX_DIM}")));
    }
    let q = parse_form(form, dim)?;
    let lambda = parse_rational(lambda).map_err(|e| InputError::new("--lambda", e))?;
    let alg = CliffordAlgebra::with_lambda(q.clone(), lambda.clone()).map_err(|e| InputError::arg("--lambda", e.to_string()))?;
    let body = json!({
        "dim": dim,
        "form": json::matrix(q.matrix()),
        "lambda": json::rational(&lambda),
        "table": table_json(&alg),
    });
    Ok(Report::new("clifford-table", Status::Pass, body))
}

/// `V1(1); V0()`: chart points separated by semicolons.
pub fn parse_base_points(text: &str) -> Result<Vec<BasePoint>, InputError> {
    let input = "--sample-points";
    text.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            let s = s.trim();
            let (id, rest) = s
                .split_once('(')
                .ok_or_else(|| InputError::arg(input, format!("expected `chart(coordinates)`, found `{s}`")))?;
            let coords = rest
                .strip_suffix(')')
                .ok_or_else(|| InputError::arg(input, format!("missing `)` in `{s}`")))?;
            let point = if coords.trim().is_empty() {
                Vec::new()
            } else {
                coords
                    .split(',')
                    .map(|c| parse_rational(c).map_err(|e| InputError::new(input, e)))
                    .collect::<Result<_, _>>()?
            };
            Ok(BasePoint::new(id.trim(), point))
        })
        .collect()
}

/// Comma-separated rationals.
pub fn parse_values(text: &str) -> Result<Vec<Rational>, InputError> {
    text.split(',')
        .map(|c| parse_rational(c).map_err(|e| InputError::new("--sample-points", e)))
        .collect()
}

fn load_bundle(src: &str, input: &str) -> Result<PseudoBundle, InputError> {
    parse_bundle(src).map_err(|e| InputError::new(input, e))
}

fn samples_for(b: &PseudoBundle, spec: Option<&str>) -> Result<Vec<BasePoint>, InputError> {
    let samples = match spec {
        Some(s) => parse_base_points(s)?,
        None => b.sample_points(10),
    };
    for bp in &samples {
        b.chart(&bp.chart)
            .and_then(|c| c.check_point(&bp.point))
            .map_err(|e| InputError::arg("--sample-points", e.to_string()))?;
    }
    Ok(samples)
}

fn verdict_json<W>(v: &Verdict<W>, witness: impl Fn(&W) -> Value) -> Value {
    match v {
        Verdict::Holds => json!({ "holds": true }),
        Verdict::Fails(w) => json!({ "holds": false, "witness": witness(w) }),
    }
}

fn all_have_metrics(b: &PseudoBundle) -> bool {
    b.charts().iter().all(|c| c.metric().is_some())
}

fn metric_checks(b: &PseudoBundle) -> (bool, Vec<Value>) {
    let mut ok = true;
    let mut out = Vec::new();
    for (gi, g) in b.gluings().iter().enumerate() {
        let (c1, c2) = (b.chart(&g.source), b.chart(&g.target));
        let (Some(m1), Some(m2)) = (
            c1.ok().and_then(|c| c.metric()),
            c2.ok().and_then(|c| c.metric()),
        ) else {
            continue;
        };
        let v = check_compatible(m1, m2, g).expect("shapes validated with the bundle");
        ok &= v.holds();
        out.push(json!({
            "gluing": gi,
            "compatible": verdict_json(&v, |w| json!({
                "locus_index": w.locus_index,
                "row": w.row,
                "col": w.col,
                "source_value": json::rational(&w.source_value),
                "target_value": json::rational(&w.target_value),
            })),
        }));
    }
    (ok, out)
}

pub fn glue_check(src: &str, input: &str, sample_spec: Option<&str>, lambda: &str) -> Outcome {
    let b = load_bundle(src, input)?;
    let samples = samples_for(&b, sample_spec)?;
    let lambda = parse_rational(lambda).map_err(|e| InputError::new("--lambda", e))?;
    let convention = pseudocliff_core::clifford::CliffordConvention::new(lambda.clone())
        .map_err(|e| InputError::arg("--lambda", e.to_string()))?;

    let fibres: Vec<Value> = samples
        .iter()
        .map(|bp| {
            let r = b.resolve(bp).expect("validated sample");
            json!({
                "point": json::base_point(bp),
                "terminal": json::base_point(&r.terminal),
                "fibre_dim": b.fibre_dim_at(bp).expect("validated sample"),
                "dual_rank": b.dual_rank_at(bp).expect("validated sample"),
            })
        })
        .collect();

    let dual_json = match dual(&b) {
        Ok(d) => json!({ "defined": true, "bundle": bundle_json(&d) }),
        Err(e @ (Error::DualGluingObstructed { .. } | Error::NonConstantDual(_))) => {
            json!({ "defined": false, "reason": e.to_string() })
        }
        Err(e) => return Err(InputError::arg(input, e.to_string())),
    };

    let mut ok = true;
    let mut body = json!({
        "bundle": bundle_json(&b),
        "lambda": json::rational(&lambda),
        "fibres": fibres,
        "dual": dual_json,
    });
    if all_have_metrics(&b) {
        let (compatible, checks) = metric_checks(&b);
        ok &= compatible;
        body["metric_compatibility"] = Value::Array(checks);
        if compatible {
            let g = induced_pseudometric(&b).expect("compatible metrics");
            let values: Vec<Value> = samples
                .iter()
                .map(|bp| json!({ "point": json::base_point(bp), "metric": json::matrix(&g.at(bp).expect("sample")) }))
                .collect();
            body["induced_metric"] = Value::Array(values);
            let valid = validate_pseudometric(&b, &samples).expect("metrics present");
            ok &= valid.holds();
            body["pseudometric"] = verdict_json(&valid, |d| {
                json!({
                    "point": json::base_point(&d.point),
                    "expected_rank": d.expected_rank,
                    "actual_rank": d.actual_rank,
                })
            });
            let cb = clifford_bundle(&b, convention).expect("metrics present");
            let phi = verify_phi_iso(&cb, &g, &samples).map_err(|e| InputError::arg(input, e.to_string()))?;
            ok &= phi.holds();
            body["phi_iso"] = verdict_json(&phi, |w| {
                json!({ "point": json::base_point(&w.point), "mismatch": format!("{:?}", w.mismatch) })
            });
        }
    } else {
        body["metric_compatibility"] = Value::Null;
    }
    Ok(Report::new("glue-check", Status::of(ok), body))
}

/// `GLUING:LOCUS:a,b;c,d` overrides of module lifts.
pub fn parse_module_lift(text: &str) -> Result<(usize, usize, Vec<Vec<Rational>>), InputError> {
    let input = "--module-lift";
    let mut parts = text.splitn(3, ':');
    let mut index = |what: &str| {
        parts
            .next()
            .and_then(|p| p.trim().parse::<usize>().ok())
            .ok_or_else(|| InputError::arg(input, format!("expected `gluing:locus:rows`, bad {what}")))
    };
    let (g, l) = (index("gluing index")?, index("locus index")?);
    let rows = parts
        .next()
        .ok_or_else(|| InputError::arg(input, "missing matrix rows"))?;
    Ok((g, l, parse_matrix_rows(rows, input)?))
}

/// Action compatibility of the standard actions of each gluing's source and
/// target charts, with exterior module lifts unless overridden; then the
/// generator relations of the induced action.
pub fn compat_check(src: &str, input: &str, sample_spec: Option<&str>, overrides: &[String]) -> Outcome {
    let b = load_bundle(src, input)?;
    if !all_have_metrics(&b) {
        return Err(InputError::arg(input, "every chart needs a metric for compat-check"));
    }
    let samples = samples_for(&b, sample_spec)?;
    let mut lifts: Vec<Vec<Matrix>> = b
        .gluings()
        .iter()
        .map(|g| g.locus.iter().map(|lp| exterior_lift(&lp.lift)).collect())
        .collect();
    for o in overrides {
        let (gi, li, rows) = parse_module_lift(o)?;
        let slot = lifts
            .get_mut(gi)
            .and_then(|g| g.get_mut(li))
            .ok_or_else(|| InputError::arg("--module-lift", format!("no locus point {li} in gluing {gi}")))?;
        let cols = slot.cols();
        let m = Matrix::from_rows(rows, cols).map_err(|e| InputError::arg("--module-lift", e.to_string()))?;
        m.check_shape(slot.rows(), cols).map_err(|e| InputError::arg("--module-lift", e.to_string()))?;
        *slot = m;
    }

    let (metrics_ok, metric_json) = metric_checks(&b);
    let conv = pseudocliff_core::clifford::CliffordConvention::action();
    let action_of = |id: &str| {
        let chart = b.chart(id).expect("validated").clone();
        clifford_bundle(&PseudoBundle::single(chart), conv.clone()).and_then(|cb| standard_action(&cb))
    };
    let mut ok = metrics_ok;
    let mut actions = Vec::new();
    for (gi, g) in b.gluings().iter().enumerate() {
        let (c1, c2) = (
            action_of(&g.source).map_err(|e| InputError::arg(input, e.to_string()))?,
            action_of(&g.target).map_err(|e| InputError::arg(input, e.to_string()))?,
        );
        let v = check_action_compat(&c1, &c2, g, &lifts[gi]).map_err(|e| InputError::arg(input, e.to_string()))?;
        ok &= v.holds();
        actions.push(json!({
            "gluing": gi,
            "module_lifts": lifts[gi].iter().map(json::matrix).collect::<Vec<_>>(),
            "compatible": verdict_json(&v, |w| json!({
                "locus_index": w.locus_index,
                "generator": w.generator,
                "lhs": json::matrix(&w.lhs),
                "rhs": json::matrix(&w.rhs),
            })),
        }));
    }
    let mut body = json!({
        "bundle": bundle_json(&b),
        "metric_compatibility": metric_json,
        "action_compatibility": actions,
    });
    // The induced action is assembled one gluing at a time, which needs each
    // gluing's target to be a chart no later gluing moves.
    if ok && b.gluings().len() == 1 {
        let g = &b.gluings()[0];
        let glued = induced_action(
            action_of(&g.source).expect("checked"),
            action_of(&g.target).expect("checked"),
            g,
            &lifts[0],
        )
        .map_err(|e| InputError::arg(input, e.to_string()))?;
        let rel = check_generator_relations(&glued, &Rational::from_integer(1.into()), &samples)
            .map_err(|e| InputError::arg(input, e.to_string()))?;
        ok &= rel.holds();
        let gens: Vec<Value> = samples
            .iter()
            .map(|bp| {
                let gs = glued.generators_at(bp).expect("sample");
                json!({ "point": json::base_point(bp), "generators": gs.iter().map(json::matrix).collect::<Vec<_>>() })
            })
            .collect();
        body["induced_action"] = json!({
            "relations": verdict_json(&rel, |w| json!({ "point": json::base_point(&w.point), "i": w.i, "j": w.j })),
            "generators": gens,
        });
    }
    Ok(Report::new("compat-check", Status::of(ok), body))
}

pub fn reproduce_sec7(sample_spec: Option<&str>) -> Outcome {
    let values = match sample_spec {
        Some(s) => parse_values(s)?,
        None => reproduce::default_sample_values(),
    };
    let r = reproduce::reproduce(&values);
    let status = Status::of(r.reproduced());
    Ok(Report::new("reproduce-sec7", status, r.json()))
}

/// Grids of `Z`, `P`, `A`, `B` separated by blank lines.
pub fn parse_patterns(src: &str, input: &str) -> Result<Vec<MatrixPattern>, InputError> {
    let mut out = Vec::new();
    let mut rows: Vec<Vec<EntryPattern>> = Vec::new();
    let mut start = 1;
    let flush = |rows: &mut Vec<Vec<EntryPattern>>, start: usize, out: &mut Vec<MatrixPattern>| {
        if rows.is_empty() {
            return Ok(());
        }
        let m = MatrixPattern::from_rows(std::mem::take(rows))
            .map_err(|e| InputError::new(input, ParseError::new(start, 1, e.to_string())))?;
        out.push(m);
        Ok(())
    };
    for (i, raw) in src.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            flush(&mut rows, start, &mut out)?;
            continue;
        }
        if rows.is_empty() {
            start = i + 1;
        }
        let row = line
            .split_whitespace()
            .map(|tok| parse_entry(tok).ok_or_else(|| {
                let col = raw.find(tok).map_or(1, |c| c + 1);
                InputError::new(input, ParseError::new(i + 1, col, format!("unknown entry `{tok}` (use Z, P, A or B)")))
            }))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    flush(&mut rows, start, &mut out)?;
    if out.is_empty() {
        return Err(InputError::arg(input, "no patterns found"));
    }
    Ok(out)
}

fn parse_entry(tok: &str) -> Option<EntryPattern> {
    match tok {
        "Z" => Some(EntryPattern::ZERO),
        "P" => Some(EntryPattern::POLY),
        "A" => Some(EntryPattern::ABS_ALLOWED),
        "B" => Some(EntryPattern::ABS),
        _ => None,
    }
}

fn pattern_json(p: &MatrixPattern) -> Value {
    Value::Array(
        p.rows()
            .iter()
            .map(|r| Value::String(r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")))
            .collect(),
    )
}

fn single_pattern(src: &str, input: &str) -> Result<MatrixPattern, InputError> {
    let mut ps = parse_patterns(src, input)?;
    if ps.len() != 1 {
        return Err(InputError::arg(input, format!("expected one pattern, found {}", ps.len())));
    }
    Ok(ps.remove(0))
}

pub fn matdiff_closure(src: &str, input: &str, ambient: Option<(&str, &str)>) -> Outcome {
    let gens = parse_patterns(src, input)?;
    let n = gens[0].size();
    if let Some(bad) = gens.iter().find(|g| g.size() != n) {
        return Err(InputError::arg(input, format!("generators of sizes {n} and {}", bad.size())));
    }
    let ambient = match ambient {
        Some((text, name)) => single_pattern(text, name)?,
        None => MatrixPattern::all_poly(n),
    };
    let closure = algebra_closure_within(&gens, &ambient).map_err(|e| InputError::arg(input, e.to_string()))?;
    let body = json!({
        "generators": gens.iter().map(pattern_json).collect::<Vec<_>>(),
        "ambient": pattern_json(&ambient),
        "closure": pattern_json(&closure),
    });
    Ok(Report::new("matdiff", Status::Pass, body))
}

/// `--constraint` is `full`, `lower` or a pattern file's contents.
pub fn matdiff_action(vector: &str, constraint: (&str, &str)) -> Outcome {
    let entries = vector
        .split(',')
        .map(|t| parse_entry(t.trim()).ok_or_else(|| InputError::arg("--vector", format!("unknown entry `{}`", t.trim()))))
        .collect::<Result<Vec<_>, _>>()?;
    let v = VectorPattern::new(entries);
    let c = match constraint.0.trim() {
        "full" => MatrixPattern::all_poly(v.len()),
        "lower" => MatrixPattern::lower_triangular(v.len()),
        text => single_pattern(text, constraint.1)?,
    };
    let p = max_smooth_action_pattern(&v, &c).map_err(|e| InputError::arg("--vector", e.to_string()))?;
    let body = json!({
        "vector": v.entries().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "constraint": pattern_json(&c),
        "action": pattern_json(&p),
    });
    Ok(Report::new("matdiff", Status::Pass, body))
}

/// Rows of comma-separated expressions in `x0 … x{n-1}`.
pub fn matdiff_smooth(src: &str, input: &str, function: MatrixFunction, num_vars: usize) -> Outcome {
    let mut cells: Vec<(usize, usize, Vec<String>)> = Vec::new();
    let mut abs_var: Option<usize> = None;
    for (i, raw) in src.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let row: Vec<String> = line.split(',').map(|s| s.trim().to_string()).collect();
        let mut offset = 0;
        for cell in &row {
            let col = line[offset..].find(cell.as_str()).map_or(offset, |c| c + offset);
            let k = abs_variable(cell, num_vars).map_err(|e| InputError::new(input, e.at_line(i + 1, col)))?;
            match (abs_var, k) {
                (Some(a), Some(b)) if a != b => {
                    return Err(InputError::new(
                        input,
                        ParseError::new(i + 1, col + 1, format!("plot uses both |x{a}| and |x{b}|")),
                    ))
                }
                (None, Some(b)) => abs_var = Some(b),
                _ => {}
            }
            offset = col + cell.len();
        }
        cells.push((i + 1, 0, row));
    }
    if num_vars == 0 {
        return Err(InputError::arg("--vars", "need at least one variable"));
    }
    let ring = AbsRing::new(num_vars, abs_var.unwrap_or(0)).map_err(|e| InputError::arg("--vars", e.to_string()))?;
    let rows = cells
        .iter()
        .map(|(line, _, row)| {
            row.iter()
                .map(|c| parse_abs(c, &ring).map_err(|e| InputError::new(input, e.at_line(*line, 0))))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let plot = AbsMatrix::from_rows(ring, rows).map_err(|e| InputError::arg(input, e.to_string()))?;
    let value = match function {
        MatrixFunction::Trace => plot.trace(),
        MatrixFunction::Det => plot.det(),
    };
    let body = json!({
        "function": match function { MatrixFunction::Trace => "trace", MatrixFunction::Det => "det" },
        "value": value.to_string(),
        "smooth": pseudocliff_core::matdiff::check_function_smooth(function, &plot),
    });
    Ok(Report::new("matdiff", Status::Pass, body))
}

/// `0:1` or `(0, 1):2`.
pub fn parse_exception(text: &str) -> Result<(Vec<Rational>, usize), InputError> {
    let input = "--exception";
    let (pt, rank) = text
        .rsplit_once(':')
        .ok_or_else(|| InputError::arg(input, format!("expected `point:rank`, found `{text}`")))?;
    let rank = rank
        .trim()
        .parse()
        .map_err(|_| InputError::arg(input, format!("bad rank `{}`", rank.trim())))?;
    let pt = pt.trim();
    let inner = pt.strip_prefix('(').and_then(|p| p.strip_suffix(')')).unwrap_or(pt);
    let point = if inner.trim().is_empty() {
        Vec::new()
    } else {
        inner
            .split(',')
            .map(|c| parse_rational(c).map_err(|e| InputError::new(input, e)))
            .collect::<Result<_, _>>()?
    };
    Ok((point, rank))
}

pub fn rank_profile(default: usize, exceptions: &[String], base_dim: Option<usize>) -> Outcome {
    let parsed = exceptions.iter().map(|e| parse_exception(e)).collect::<Result<Vec<_>, _>>()?;
    let base_dim = match base_dim {
        Some(d) => d,
        None => parsed.first().map_or(1, |(p, _)| p.len()),
    };
    if let Some((p, _)) = parsed.iter().find(|(p, _)| p.len() != base_dim) {
        return Err(InputError::arg(
            "--exception",
            format!("point with {} coordinates in a {base_dim}-dimensional base", p.len()),
        ));
    }
    let profile = parsed
        .into_iter()
        .fold(DualProfile::constant(default), |p, (pt, r)| p.with_exception(pt, r));
    let realizable = rank_profile_realizable(&profile, base_dim);
    let exceptions_json: Vec<Value> = profile
        .exceptions()
        .map(|(p, r)| json!({ "point": json::rationals(p), "rank": r }))
        .collect();
    let mut body = json!({
        "base_dim": base_dim,
        "default": default,
        "exceptions": exceptions_json,
        "realizable": realizable,
    });
    if let Some(m) = realizing_metric(&profile, base_dim) {
        body["witness_metric"] = Value::Array(
            m.rows()
                .iter()
                .map(|r| Value::Array(r.iter().map(json::polynomial).collect()))
                .collect(),
        );
    } else {
        let jump = profile.exceptions().find(|(_, r)| *r > profile.default_rank());
        if let Some((p, r)) = jump {
            body["obstruction"] = json!({
                "point": json::rationals(p),
                "rank": r,
                "nearby_rank": profile.default_rank(),
                "reason": "the rank of a continuous field of symmetric matrices cannot jump up at a point",
            });
        }
    }
    Ok(Report::new("rank-profile", Status::Pass, body))
}
