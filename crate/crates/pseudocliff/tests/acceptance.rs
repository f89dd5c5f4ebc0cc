//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line, then exits non-zero if any
//! failed.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pseudocliff::reproduce::{self, default_sample_values};
use pseudocliff_core::absring::{AbsRing, Polynomial};
use pseudocliff_core::cliffbundle::{
    check_action_compat, check_generator_relations, clifford_bundle, exterior_lift, induced_action,
    verify_phi_iso,
};
use pseudocliff_core::clifford::{
    action_operator, grade_split, sigma_matrix, BilinearForm, CliffordAlgebra, CliffordConvention, Multivector,
};
use pseudocliff_core::crossed_lines;
use pseudocliff_core::linalg::Matrix;
use pseudocliff_core::matdiff::{
    algebra_closure, algebra_closure_within, check_function_smooth, max_smooth_action_pattern, AbsMatrix,
    EntryPattern, MatrixFunction, MatrixPattern, VectorPattern,
};
use pseudocliff_core::pseudobundle::{
    compare_glued, glue, glue_then_op, induced_pseudometric, op_then_glue, rank_profile_realizable, realizing_metric,
    verify_operation_gluing_commutes, BundlePair, Chart, DualProfile, Gluing, LocusPoint, OperationKind, PseudoBundle,
    PseudoMetricChart,
};
use pseudocliff_core::rational::{frac, int};
use pseudocliff_core::Rational;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn rational(r: &mut ChaCha8Rng, span: i64) -> Rational {
    frac(r.gen_range(-span..=span), r.gen_range(1..=3))
}

fn nonzero(r: &mut ChaCha8Rng, span: i64) -> Rational {
    loop {
        let x = rational(r, span);
        if !x.is_zero() {
            return x;
        }
    }
}

fn random_matrix(r: &mut ChaCha8Rng, rows: usize, cols: usize, span: i64) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| rational(r, span))
}

/// Symmetric forms of three kinds: dense, `A D Aᵀ` with some `D` entries
/// zeroed (rank-deficient, non-diagonal), and diagonal.
fn random_form(r: &mut ChaCha8Rng, n: usize, kind: usize) -> BilinearForm {
    let q = match kind % 3 {
        0 => {
            let m = random_matrix(r, n, n, 3);
            m.add(&m.transpose())
        }
        1 => {
            let a = random_matrix(r, n, n, 2);
            let zeros = r.gen_range(1..=n);
            let d = Matrix::diagonal(
                &(0..n).map(|i| if i < zeros { Rational::zero() } else { rational(r, 3) }).collect::<Vec<_>>(),
            );
            a.mul(&d).mul(&a.transpose())
        }
        _ => Matrix::diagonal(&(0..n).map(|_| rational(r, 2)).collect::<Vec<_>>()),
    };
    BilinearForm::new(q).expect("symmetric by construction")
}

fn random_vector(r: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| rational(r, 3)).collect()
}

fn random_multivector(r: &mut ChaCha8Rng, alg: &CliffordAlgebra) -> Multivector {
    let dense: Vec<Rational> = (0..alg.total_dim())
        .map(|_| if r.gen_bool(0.4) { Rational::zero() } else { rational(r, 3) })
        .collect();
    Multivector::from_dense(alg, &dense)
}

/// `vᵀ Q w` straight from the matrix.
fn form_value(q: &Matrix, v: &[Rational], w: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (i, vi) in v.iter().enumerate() {
        for (j, wj) in w.iter().enumerate() {
            acc += vi * q.get(i, j) * wj;
        }
    }
    acc
}

fn c1_sec7_tables() -> Outcome {
    let report = reproduce::reproduce(&default_sample_values());
    let mismatches = report.clifford_mismatches();
    ensure!(mismatches.len() == 1, "expected one distinct table deviation, found {}", mismatches.len());
    let (m, places) = mismatches.iter().next().unwrap();
    ensure!(
        m.monomial == "u2'*u2''" && m.computed == int(-4) && m.printed == int(-1),
        "unexpected deviation {m:?}"
    );
    let flagged = report.deviations.iter().filter(|d| d.id == "scalar-term-of-e12-squared").count();
    ensure!(flagged == 1, "deviation flagged {flagged} times");
    ensure!(
        report.deviations.iter().all(|d| d.id != "clifford-table-term"),
        "other table terms flagged"
    );
    for c in &report.clifford_charts {
        if c.formula != "Cl(V0,g0)" {
            ensure!(c.matches(), "{} at ({}, {}) differs", c.formula, c.point.x, c.point.y);
        }
    }
    ensure!(report.reproduced(), "report does not reproduce the tables");
    Ok(format!("1 deviation (-4 vs -1, {} places)", places.len()))
}

fn c2_sec7_actions() -> Outcome {
    let report = reproduce::reproduce(&default_sample_values());
    let n = report.actions.len();
    for c in &report.actions {
        ensure!(c.matches(), "{} at ({}, {}) differs: {:?}", c.formula, c.point.x, c.point.y, c.mismatches);
    }
    let glued = report.actions.iter().filter(|c| c.formula.contains("branch")).count();
    ensure!(glued > 0, "no glued comparisons");
    Ok(format!("{n} comparisons, {glued} on the glued action"))
}

fn c3_algebra_properties() -> Outcome {
    let mut r = rng(3);
    let mut cases = 0;
    for n in 1..=4 {
        for case in 0..1000 {
            let form = random_form(&mut r, n, case);
            let lambda = if case % 2 == 0 { int(1) } else { int(2) };
            let alg = CliffordAlgebra::with_lambda(form.clone(), lambda.clone()).map_err(|e| e.to_string())?;
            let (a, b, c) = (
                random_multivector(&mut r, &alg),
                random_multivector(&mut r, &alg),
                random_multivector(&mut r, &alg),
            );
            let mul = |x: &Multivector, y: &Multivector| x.mul(y).expect("same algebra");
            ensure!(mul(&mul(&a, &b), &c) == mul(&a, &mul(&b, &c)), "associativity fails, n={n} case={case}");

            let s = rational(&mut r, 4);
            let lhs = mul(&a.scale(&s).add(&c).unwrap(), &b);
            let rhs = mul(&a, &b).scale(&s).add(&mul(&c, &b)).unwrap();
            ensure!(lhs == rhs, "left linearity fails, n={n} case={case}");
            let lhs = mul(&b, &a.scale(&s).add(&c).unwrap());
            let rhs = mul(&b, &a).scale(&s).add(&mul(&b, &c)).unwrap();
            ensure!(lhs == rhs, "right linearity fails, n={n} case={case}");

            let (v, w) = (random_vector(&mut r, n), random_vector(&mut r, n));
            let (mv, mw) = (Multivector::vector(&alg, &v).unwrap(), Multivector::vector(&alg, &w).unwrap());
            let anti = mul(&mv, &mw).add(&mul(&mw, &mv)).unwrap();
            let expected = Multivector::scalar(&alg, -(int(2) * &lambda * form_value(form.matrix(), &v, &w)));
            ensure!(anti == expected, "anticommutator fails, n={n} case={case}");

            let (ae, ao) = grade_split(&a);
            let (be, bo) = grade_split(&b);
            for (x, px) in [(&ae, 0), (&ao, 1)] {
                for (y, py) in [(&be, 0), (&bo, 1)] {
                    let p = mul(x, y);
                    ensure!(
                        p.is_zero() || p.parity() == Some((px + py) % 2),
                        "grading fails, n={n} case={case}"
                    );
                }
            }

            let ka = r.gen_range(0..=n as u32);
            let kb = r.gen_range(0..=n as u32);
            let (ta, tb) = (truncate(&a, ka), truncate(&b, kb));
            ensure!(mul(&ta, &tb).filtration_degree() <= ka + kb, "filtration fails, n={n} case={case}");
            cases += 1;
        }
    }
    Ok(format!("{cases} cases"))
}

fn truncate(a: &Multivector, k: u32) -> Multivector {
    (0..=k).fold(Multivector::zero(a.algebra()), |acc, g| acc.add(&a.grade(g)).unwrap())
}

fn c4_dimensions() -> Outcome {
    let mut pascal = vec![vec![1usize]];
    for n in 1..=6 {
        let prev = &pascal[n - 1];
        let row = (0..=n)
            .map(|k| if k == 0 || k == n { 1 } else { prev[k - 1] + prev[k] })
            .collect();
        pascal.push(row);
    }
    let mut r = rng(4);
    for n in 1..=6 {
        for form in [BilinearForm::identity(n), BilinearForm::zero(n), random_form(&mut r, n, 1)] {
            let alg = CliffordAlgebra::with_lambda(form, int(2)).map_err(|e| e.to_string())?;
            ensure!(alg.total_dim() == 1 << n, "dim Cl = {} for n={n}", alg.total_dim());
            let ranks = alg.filtration_ranks();
            for k in 0..=n {
                let quotient = ranks[k] - if k == 0 { 0 } else { ranks[k - 1] };
                ensure!(quotient == pascal[n][k], "n={n} k={k}: quotient {quotient}, C = {}", pascal[n][k]);
            }
            ensure!(ranks[n] == 1 << n, "filtration does not exhaust, n={n}");
        }
    }
    Ok("n ≤ 6, three forms each".into())
}

fn c5_module_identity() -> Outcome {
    let mut r = rng(5);
    for case in 0..500 {
        let n = 1 + case % 4;
        let form = random_form(&mut r, n, case);
        let (v, w) = (random_vector(&mut r, n), random_vector(&mut r, n));
        let cv = action_operator(&v, &form).map_err(|e| e.to_string())?;
        let cw = action_operator(&w, &form).map_err(|e| e.to_string())?;
        let lhs = cv.mul(&cw).add(&cw.mul(&cv));
        let rhs = Matrix::identity(1 << n).scale(&-(int(2) * form_value(form.matrix(), &v, &w)));
        ensure!(lhs == rhs, "c(v)c(w)+c(w)c(v) fails, case {case}");
    }
    let (mut tested, mut drawn) = (0, 0);
    while tested < 100 {
        let n = 1 + tested % 4;
        drawn += 1;
        let form = random_form(&mut r, n, if drawn % 2 == 0 { 0 } else { 2 });
        if form.is_degenerate() {
            continue;
        }
        let alg = CliffordAlgebra::with_lambda(form, int(1)).map_err(|e| e.to_string())?;
        ensure!(sigma_matrix(&alg).map_err(|e| e.to_string())?.bijective, "σ not bijective");
        tested += 1;
    }
    Ok("500 identities, 100 σ".into())
}

fn sec7_pairs() -> Vec<BundlePair> {
    vec![
        BundlePair {
            source: PseudoBundle::single(crossed_lines::chart_v1()),
            target: PseudoBundle::single(crossed_lines::chart_v0()),
            gluing: crossed_lines::first_gluing(),
        },
        BundlePair {
            source: PseudoBundle::single(crossed_lines::chart_v2()),
            target: PseudoBundle::single(crossed_lines::chart_v0()),
            gluing: crossed_lines::second_gluing(),
        },
    ]
}

fn random_pair(r: &mut ChaCha8Rng, points: &[(i64, i64)], f1: usize, f2: usize) -> BundlePair {
    let locus = points
        .iter()
        .map(|&(s, t)| LocusPoint::new(vec![int(s)], vec![int(t)], random_matrix(r, f2, f1, 3)))
        .collect();
    BundlePair {
        source: PseudoBundle::single(Chart::new("A", 1, f1)),
        target: PseudoBundle::single(Chart::new("B", 1, f2)),
        gluing: Gluing::new("A", "B", locus),
    }
}

fn c6_gluing_commutes() -> Outcome {
    let kinds = [OperationKind::Sum, OperationKind::Tensor];
    let pairs = sec7_pairs();
    for p in &pairs {
        for kind in kinds {
            let v = verify_operation_gluing_commutes(kind, p, p, None).map_err(|e| e.to_string())?;
            ensure!(v.holds(), "crossed-lines configuration fails for {kind:?}: {:?}", v.witness());
        }
    }
    let mut r = rng(6);
    let mut detected = 0;
    for trial in 0..50 {
        let m = r.gen_range(1..=3);
        let points: Vec<(i64, i64)> = (0..m).map(|k| (k, 10 + 2 * k)).collect();
        let (f1, f2) = (r.gen_range(1..=3), r.gen_range(1..=3));
        let (g1, g2) = (r.gen_range(1..=2), r.gen_range(1..=2));
        let a = random_pair(&mut r, &points, f1, f2);
        let b = random_pair(&mut r, &points, g1, g2);
        for kind in kinds {
            let v = verify_operation_gluing_commutes(kind, &a, &b, None).map_err(|e| e.to_string())?;
            ensure!(v.holds(), "trial {trial} {kind:?}: {:?}", v.witness());
        }
        let kind = kinds[trial % 2];
        let lhs = glue_then_op(kind, &a, &b).map_err(|e| e.to_string())?;
        let rhs = op_then_glue(kind, &a, &b).map_err(|e| e.to_string())?;
        let g = rhs.gluings().len() - 1;
        let k = r.gen_range(0..m as usize);
        let mut bad = rhs.gluings()[g].locus[k].lift.clone();
        let (i, j) = (r.gen_range(0..bad.rows()), r.gen_range(0..bad.cols()));
        bad.set(i, j, bad.get(i, j) + nonzero(&mut r, 3));
        let rhs = rhs.with_lift(g, k, bad).map_err(|e| e.to_string())?;
        if !compare_glued(&lhs, &rhs, &lhs.sample_points(10)).map_err(|e| e.to_string())?.holds() {
            detected += 1;
        }
    }
    ensure!(detected == 50, "corruption detected in {detected}/50 trials");
    Ok("crossed lines + 50 random configurations, corruption 50/50".into())
}

fn positive_definite(r: &mut ChaCha8Rng, n: usize) -> Matrix {
    loop {
        let m = random_matrix(r, n, n, 2);
        if m.rank() == n {
            return m.transpose().mul(&m);
        }
    }
}

fn c7_phi_iso() -> Outcome {
    let b = crossed_lines::bundle();
    let cb = clifford_bundle(&b, CliffordConvention::tensor_ideal()).map_err(|e| e.to_string())?;
    let g = induced_pseudometric(&b).map_err(|e| e.to_string())?;
    ensure!(verify_phi_iso(&cb, &g, &b.sample_points(10)).map_err(|e| e.to_string())?.holds(), "crossed lines fail");

    let mut r = rng(7);
    let mut singular = 0;
    for trial in 0..50 {
        let k2 = r.gen_range(1..=3);
        let k1 = if trial % 3 == 0 { r.gen_range(1..=k2) } else { k2 };
        let g2 = positive_definite(&mut r, k2);
        let mut lift = random_matrix(&mut r, k2, k1, 2);
        if trial % 5 == 1 && k1 > 1 {
            for i in 0..k2 {
                let v = lift.get(i, 0).clone();
                lift.set(i, k1 - 1, v);
            }
        }
        let g1 = lift.transpose().mul(&g2).mul(&lift);
        if lift.rows() != lift.cols() || lift.rank() < k1 {
            singular += 1;
        }
        let source = Chart::new("A", 1, k1)
            .with_metric(PseudoMetricChart::constant(1, &g1).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let target = Chart::new("B", 1, k2)
            .with_metric(PseudoMetricChart::constant(1, &g2).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let locus = (0..r.gen_range(1..=2))
            .map(|k| LocusPoint::new(vec![int(k)], vec![int(5 + k)], lift.clone()))
            .collect();
        let glued = glue(&PseudoBundle::single(source), &PseudoBundle::single(target), Gluing::new("A", "B", locus))
            .map_err(|e| e.to_string())?;
        let cb = clifford_bundle(&glued, CliffordConvention::tensor_ideal()).map_err(|e| e.to_string())?;
        let metric = induced_pseudometric(&glued).map_err(|e| e.to_string())?;
        let v = verify_phi_iso(&cb, &metric, &glued.sample_points(5)).map_err(|e| e.to_string())?;
        ensure!(v.holds(), "trial {trial}: {:?}", v.witness());
    }
    ensure!(singular >= 10, "only {singular} non-invertible lifts");
    Ok(format!("crossed lines + 50 random gluings, {singular} non-invertible lifts"))
}

fn c8_induced_action() -> Outcome {
    let c0 = crossed_lines::chart_action(crossed_lines::chart_v0()).map_err(|e| e.to_string())?;
    let c1 = crossed_lines::chart_action(crossed_lines::chart_v1()).map_err(|e| e.to_string())?;
    let gl = crossed_lines::first_gluing();
    let lifts: Vec<Matrix> = gl.locus.iter().map(|lp| exterior_lift(&lp.lift)).collect();
    let v = check_action_compat(&c1, &c0, &gl, &lifts).map_err(|e| e.to_string())?;
    ensure!(v.holds(), "standard actions incompatible: {:?}", v.witness());

    let glued = crossed_lines::glued_action().map_err(|e| e.to_string())?;
    let samples = crossed_lines::bundle().sample_points(10);
    let rel = check_generator_relations(&glued, &Rational::one(), &samples).map_err(|e| e.to_string())?;
    ensure!(rel.holds(), "generator relations fail: {:?}", rel.witness());

    let uniform: Vec<Matrix> = lifts.iter().map(|m| m.scale(&int(2))).collect();
    ensure!(
        check_action_compat(&c1, &c0, &gl, &uniform).map_err(|e| e.to_string())?.holds(),
        "uniformly scaled lift rejected"
    );
    let doubled: Vec<Matrix> = lifts
        .iter()
        .map(|m| {
            let mut d = m.clone();
            for row in 0..d.rows() {
                if (row as u32).count_ones() == 1 {
                    d.set(row, 1, m.get(row, 1) * int(2));
                }
            }
            d
        })
        .collect();
    let v = check_action_compat(&c1, &c0, &gl, &doubled).map_err(|e| e.to_string())?;
    let w = v.witness().ok_or("doubled lift accepted")?;
    ensure!(w.lhs != w.rhs, "witness sides agree");
    ensure!(
        induced_action(c1, c0, &gl, &doubled).is_err(),
        "induced_action accepted the doubled lift"
    );
    Ok(format!("doubled lift rejected at locus {} generator {}", w.locus_index, w.generator))
}

fn c9_matdiff() -> Outcome {
    use EntryPattern as E;
    let (z, p, a, b) = (E::ZERO, E::POLY, E::ABS_ALLOWED, E::ABS);
    let pat = |rows: &[&[E]]| MatrixPattern::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap();

    let closure = algebra_closure(&[pat(&[&[z, z], &[z, b]])], 2).map_err(|e| e.to_string())?;
    ensure!(closure == MatrixPattern::filled(2, a), "closure is {:?}", closure.rows());

    let std = max_smooth_action_pattern(&VectorPattern::new(vec![p, p]), &MatrixPattern::all_poly(2))
        .map_err(|e| e.to_string())?;
    ensure!(std == MatrixPattern::all_poly(2), "standard action is {:?}", std.rows());
    let tri = max_smooth_action_pattern(&VectorPattern::new(vec![p, a]), &MatrixPattern::lower_triangular(2))
        .map_err(|e| e.to_string())?;
    ensure!(tri == pat(&[&[p, z], &[p, p]]), "triangular action is {:?}", tri.rows());

    let block = pat(&[&[p, p, z], &[p, p, z], &[z, z, p]]);
    let expected = pat(&[&[p, p, z], &[p, p, z], &[z, z, a]]);
    let act = max_smooth_action_pattern(&VectorPattern::new(vec![p, p, a]), &block).map_err(|e| e.to_string())?;
    ensure!(act == expected, "block action is {:?}", act.rows());
    let inside = algebra_closure_within(&[MatrixPattern::zeros(3).with(2, 2, b)], &block).map_err(|e| e.to_string())?;
    ensure!(inside == expected, "block closure is {:?}", inside.rows());

    let ring = AbsRing::new(1, 0).map_err(|e| e.to_string())?;
    let m = |rows: Vec<Vec<_>>| AbsMatrix::from_rows(ring, rows).unwrap();
    let abs_corner = m(vec![vec![ring.zero(), ring.zero()], vec![ring.zero(), ring.abs_generator()]]);
    let abs_diag = m(vec![vec![ring.one(), ring.zero()], vec![ring.zero(), ring.abs_generator()]]);
    ensure!(!check_function_smooth(MatrixFunction::Trace, &abs_corner), "trace judged smooth");
    ensure!(!check_function_smooth(MatrixFunction::Det, &abs_diag), "det judged smooth");

    let mut r = rng(9);
    for _ in 0..50 {
        let n = r.gen_range(1..=3);
        let rows = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        let x = Polynomial::var(1, 0);
                        let c0 = Polynomial::constant(1, rational(&mut r, 3));
                        let c1 = Polynomial::constant(1, rational(&mut r, 3));
                        let c2 = Polynomial::constant(1, rational(&mut r, 3));
                        ring.smooth(&(&c0 + &(&c1 * &x)) + &(&(&c2 * &x) * &x))
                    })
                    .collect()
            })
            .collect();
        let poly = m(rows);
        ensure!(check_function_smooth(MatrixFunction::Trace, &poly), "polynomial trace judged non-smooth");
        ensure!(check_function_smooth(MatrixFunction::Det, &poly), "polynomial det judged non-smooth");
    }
    Ok("closure, three action patterns, trace/det".into())
}

fn c10_rank_profiles() -> Outcome {
    let origin = vec![int(0)];
    let jump = DualProfile::constant(0).with_exception(origin.clone(), 1);
    ensure!(!rank_profile_realizable(&jump, 1), "upward jump judged realizable");
    ensure!(realizing_metric(&jump, 1).is_none(), "upward jump has a witness");

    let mut profiles = vec![];
    for rank in 0..=3 {
        profiles.push(DualProfile::constant(rank));
    }
    profiles.push(DualProfile::constant(1).with_exception(origin.clone(), 0));
    profiles.push(DualProfile::constant(2).with_exception(origin.clone(), 1));
    profiles.push(DualProfile::constant(3).with_exception(origin, 0).with_exception(vec![int(2)], 1));
    let probes: Vec<Rational> = [-3, 0, 1, 2, 5].iter().map(|&k| int(k)).chain([frac(1, 2)]).collect();
    for profile in &profiles {
        ensure!(rank_profile_realizable(profile, 1), "{profile:?} judged unrealizable");
        let g = realizing_metric(profile, 1).ok_or(format!("{profile:?} has no witness"))?;
        for x in &probes {
            let m = g.eval(std::slice::from_ref(x));
            let want = profile.rank_at(std::slice::from_ref(x));
            ensure!(m.psd_rank() == Some(want), "{profile:?}: witness rank at {x} is {:?}", m.psd_rank());
        }
    }
    Ok(format!("1 obstruction, {} realizable profiles with witnesses", profiles.len()))
}

struct Criterion {
    id: usize,
    name: &'static str,
    budget: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion { id: 1, name: "crossed-lines Clifford tables", budget: secs(1), run: c1_sec7_tables },
        Criterion { id: 2, name: "crossed-lines action tables", budget: secs(1), run: c2_sec7_actions },
        Criterion { id: 3, name: "algebra properties", budget: secs(30), run: c3_algebra_properties },
        Criterion { id: 4, name: "dimensions and filtration", budget: None, run: c4_dimensions },
        Criterion { id: 5, name: "module identity and sigma", budget: None, run: c5_module_identity },
        Criterion { id: 6, name: "gluing commutes with sum and tensor", budget: secs(10), run: c6_gluing_commutes },
        Criterion { id: 7, name: "Phi^Cl isomorphism", budget: None, run: c7_phi_iso },
        Criterion { id: 8, name: "induced action", budget: None, run: c8_induced_action },
        Criterion { id: 9, name: "matrix plot patterns", budget: secs(1), run: c9_matdiff },
        Criterion { id: 10, name: "rank-profile obstruction", budget: None, run: c10_rank_profiles },
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.budget) {
            (Ok(_), Some(b)) if elapsed > b => Err(format!("over budget ({b:?})")),
            (o, _) => o,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d.clone()),
            Err(d) => {
                failed += 1;
                ("FAIL", d.clone())
            }
        };
        println!("{tag} criterion {:>2} {} [{:.2?}]: {detail}", c.id, c.name, elapsed);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
