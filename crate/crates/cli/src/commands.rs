use std::fs;

use serde_json::json;
use thiserror::Error;

use qgauge_core::abgrp::{is_surjective, solve_sixterm, MapSlot, SixTermFailure};
use qgauge_core::ncalg::{reduce, ReductionStatus, DEFAULT_STEP_LIMIT};
use qgauge_core::qpres::{self, QpresError};
use qgauge_core::towers::{self, KTowers, MilnorResult, ProGroupClass, TowerError};

use crate::doc::{DocError, GroupTowerDoc, KTowerDoc, PresentationDoc, SixTermDoc, TowerDoc};
use crate::parse::{parse_expression_checked, ParseError};
use crate::report::{table, Item, Report, Status};
use crate::{BuildTarget, Command, HsAction, KTarget, LinkArg, Suite, SuiteArgs};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Doc { path: String, source: DocError },
    #[error("{path}: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error("expression: {0}")]
    Expr(#[from] ParseError),
    #[error(transparent)]
    Qpres(#[from] QpresError),
    #[error(transparent)]
    Tower(#[from] TowerError),
}

pub(crate) struct Output {
    pub text: String,
    pub report: Report,
}

/// Largest `n` handled without `--allow-large`.
const THETA_DEFAULT_MAX: usize = 5;

pub(crate) fn dispatch(cmd: Command) -> Result<Output, CliError> {
    let started = std::time::Instant::now();
    log::debug!("running {:?}", cmd);
    let out = dispatch_inner(cmd);
    log::info!("finished in {:.3}s", started.elapsed().as_secs_f64());
    out
}

fn dispatch_inner(cmd: Command) -> Result<Output, CliError> {
    match cmd {
        Command::Build { target: BuildTarget::SuQ { n, out, explicit } } => build_suq(n, out, explicit),
        Command::Verify { suite } => verify(suite),
        Command::Hs { action: HsAction::Check { n, element, link, step_limit } } => {
            hs_check(n, &element, link, step_limit.unwrap_or(DEFAULT_STEP_LIMIT))
        }
        Command::K { target } => k(target),
        Command::Reduce(a) => reduce_cmd(&a.pres, &a.expr, a.step_limit.unwrap_or(DEFAULT_STEP_LIMIT)),
    }
}

fn read(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_string(), source })
}

fn with_jobs<R: Send>(jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R, CliError> {
    match jobs {
        None => Ok(f()),
        Some(0) => Err(CliError::Usage("--jobs must be at least 1".into())),
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build()
                .map_err(|e| CliError::Usage(format!("cannot start {} workers: {}", j, e)))?;
            Ok(pool.install(f))
        }
    }
}

fn build_suq(n: usize, out: Option<String>, explicit: bool) -> Result<Output, CliError> {
    if n < 2 {
        return Err(CliError::Usage("su_q needs --n >= 2".into()));
    }
    let pres = qpres::build_suq(n)?;
    let compact = n > 4 && !explicit;
    let doc = PresentationDoc::from_presentation(&pres, !compact);
    let text = doc.render();
    let item = Item::new(pres.name(), Status::Computed)
        .with("generators", pres.generators().len())
        .with("relations", pres.relation_count())
        .with("form", if compact { "family" } else { "explicit" });
    let mut report = Report::new("build su_q", json!({ "n": n, "out": out, "explicit": explicit }), vec![item]);
    let shown = match &out {
        Some(path) => {
            fs::write(path, &text).map_err(|source| CliError::Io { path: path.clone(), source })?;
            format!("wrote {} to {} ({} relations)\n", pres.name(), path, pres.relation_count())
        }
        None => {
            report.results = json!({ "document": text });
            text
        }
    };
    Ok(Output { text: shown, report })
}

fn verify(suite: Suite) -> Result<Output, CliError> {
    let (v, inputs) = match suite {
        Suite::Coassoc(SuiteArgs { n, jobs, .. }) => {
            (with_jobs(jobs, || qpres::verify_coassoc(n))??, json!({ "n": n }))
        }
        Suite::Square(SuiteArgs { n, jobs, .. }) => (with_jobs(jobs, || qpres::verify_square(n))??, json!({ "n": n })),
        Suite::ThetaIdeal(a) => {
            let SuiteArgs { n, step_limit, jobs } = a.common;
            if n > THETA_DEFAULT_MAX && !a.allow_large {
                return Err(CliError::Usage(format!(
                    "theta-ideal at n = {} expands {} rows; pass --allow-large to run it",
                    n,
                    n.pow(n as u32)
                )));
            }
            let limit = step_limit.unwrap_or(DEFAULT_STEP_LIMIT);
            let v = with_jobs(jobs, || qpres::verify_theta_ideal(n, limit, true))??;
            (v, json!({ "n": n, "step_limit": limit }))
        }
        Suite::HypothesisB(a) => {
            let doc =
                TowerDoc::parse(&read(&a.tower)?).map_err(|source| CliError::Doc { path: a.tower.clone(), source })?;
            let (lo, hi) = a.window;
            if lo < 1 {
                return Err(CliError::Usage("the window must start at level 1 or above".into()));
            }
            let tower = doc.build(lo, hi)?;
            log::debug!("tower {} built over {}..{}", doc.name, lo, hi);
            let limit = a.step_limit.unwrap_or(DEFAULT_STEP_LIMIT);
            let v = with_jobs(a.jobs, || qpres::check_hypothesis_b(&tower, (lo, hi), limit))??;
            (v, json!({ "tower": doc.name, "window": [lo, hi], "step_limit": limit }))
        }
    };
    let report = Report::from_verification(&v, inputs);
    let text = format!("{}\n", v);
    Ok(Output { text, report })
}

fn hs_check(n: usize, element: &str, link: LinkArg, limit: usize) -> Result<Output, CliError> {
    if n < 2 {
        return Err(CliError::Usage("hs check needs --n >= 2".into()));
    }
    let level = qpres::suq_level(n);
    let f = parse_expression_checked(element, true, &|g| level.has_generator(g))?;
    let (tl, kind) = match link {
        LinkArg::Sphere => (qpres::sphere_link(n, n)?, "sphere"),
        LinkArg::Cp => (qpres::cp_link(n, n)?, "cp"),
    };
    let (outcome, steps) = qpres::coaction_invariant(&f, &tl, n, limit)?;
    let mut item = Item::new(f.to_string(), outcome.into());
    item.steps = steps;
    let report =
        Report::new("hs check", json!({ "n": n, "element": element, "link": kind, "step_limit": limit }), vec![item]);
    let text = format!("{} in level {} ({} link): {} (steps={})\n", f, n, kind, outcome, steps);
    Ok(Output { text, report })
}

fn reduce_cmd(path: &str, expr: &str, limit: usize) -> Result<Output, CliError> {
    let doc =
        PresentationDoc::parse(&read(path)?).map_err(|source| CliError::Doc { path: path.to_string(), source })?;
    let pres = doc.to_presentation()?;
    let p = parse_expression_checked(expr, doc.ring == crate::doc::Ring::Laurent, &|g| pres.has_generator(g))?;
    let rules = pres.rules()?;
    let out = reduce(&p, rules, limit);
    let (status, label) = match &out.status {
        ReductionStatus::ReducedToZero => (Status::Computed, "ReducedToZero"),
        ReductionStatus::NormalForm(_) => (Status::Computed, "NormalForm"),
        ReductionStatus::StepLimit(_) => (Status::Unknown, "StepLimit"),
    };
    let rem = out.remainder(p.degree());
    let mut item = Item::new(p.to_string(), status).with("reduction", label).with("normal_form", rem.to_string());
    item.steps = out.steps;
    let report =
        Report::new("reduce", json!({ "presentation": pres.name(), "expr": expr, "step_limit": limit }), vec![item]);
    let text = format!("{}\n{} after {} steps: {}\n", p, label, out.steps, rem);
    Ok(Output { text, report })
}

fn k(target: KTarget) -> Result<Output, CliError> {
    match target {
        KTarget::Sphere { n_max } => {
            if n_max < 2 {
                return Err(CliError::Usage("k sphere needs --n-max >= 2".into()));
            }
            k_towers("k sphere", "S^inf", n_max, towers::sphere_tower::<i64>(n_max)?)
        }
        KTarget::Cp { n_max } => {
            if n_max < 1 {
                return Err(CliError::Usage("k cp needs --n-max >= 1".into()));
            }
            k_towers("k cp", "CP^inf", n_max, towers::cp_tower::<i64>(n_max)?)
        }
        KTarget::Su { n_max } => {
            if n_max < 2 {
                return Err(CliError::Usage("k su needs --n-max >= 2".into()));
            }
            k_towers("k su", "SU_q(inf)", n_max, towers::su_tower::<i64>(n_max)?)
        }
        KTarget::Tower { file } => {
            let doc: KTowerDoc =
                serde_json::from_str(&read(&file)?).map_err(|source| CliError::Json { path: file.clone(), source })?;
            let k0 = doc.k0.to_tower().map_err(|source| CliError::Doc { path: file.clone(), source })?;
            let k1 = doc.k1.to_tower().map_err(|source| CliError::Doc { path: file.clone(), source })?;
            let hi = k0.levels().1;
            let kt = KTowers { k0, k1, hexagons: Vec::new(), provenance: Vec::new() };
            k_towers("k tower", "lim", hi, kt)
        }
        KTarget::Sixterm { file } => sixterm(&file),
    }
}

fn class_status(c: &ProGroupClass) -> Status {
    match c {
        ProGroupClass::Unclassified { .. } => Status::Unknown,
        _ => Status::Computed,
    }
}

fn k_towers(task: &str, limit_name: &str, n_max: usize, kt: KTowers<i64>) -> Result<Output, CliError> {
    let (lo, hi) = kt.k0.levels();
    let su = task == "k su";
    let mut items = Vec::new();
    let mut rows = Vec::new();
    for n in lo..=hi {
        let (g0, g1) = (kt.k0.group(n).expect("level"), kt.k1.group(n).expect("level"));
        let mut item =
            Item::new(format!("n={}", n), Status::Computed).with("K0", g0.to_string()).with("K1", g1.to_string());
        let mut row = vec![n.to_string(), g0.to_string(), g1.to_string()];
        if su {
            let s0 = kt.k0.map(n).map(is_surjective);
            let s1 = kt.k1.map(n).map(is_surjective);
            item = item.with("rank", g0.rank() + g1.rank()).with("rank_even", g0.rank()).with("rank_odd", g1.rank());
            if let (Some(a), Some(b)) = (s0, s1) {
                item = item.with("surjective_even", a).with("surjective_odd", b);
                if !(a && b) {
                    item.status = Status::RefutedAtNormalForm;
                }
            }
            let yn = |s: Option<bool>| s.map_or("-".to_string(), |b| if b { "yes".into() } else { "NO".into() });
            row.extend([(g0.rank() + g1.rank()).to_string(), yn(s0), yn(s1)]);
        }
        if let Some((_, sol)) = kt.hexagons.iter().find(|(m, _)| *m == n) {
            let zeros: Vec<usize> = (0..6).filter(|&k| matches!(sol.maps[k], MapSlot::Zero)).map(|k| k + 1).collect();
            item = item
                .with("hexagon_euler", sol.euler_characteristic())
                .with("hexagon_exact_checked", sol.exact_checked.len())
                .with("hexagon_zero_maps", zeros);
            row.push(format!("chi={}", sol.euler_characteristic()));
        } else if !kt.hexagons.is_empty() {
            row.push("base".into());
        }
        items.push(item);
        rows.push(row);
    }
    let MilnorResult { rk0, rk1 } = towers::milnor_assemble(&kt.k0, &kt.k1, (lo, hi))?;
    for (name, d) in [("RK0", &rk0), ("RK1", &rk1)] {
        items.push(
            Item::new(name, class_status(&d.value))
                .with("value", d.value.to_string())
                .with("lim", d.lim.to_string())
                .with("lim1", d.lim1.to_string()),
        );
    }
    let mut report = Report::ordered(task, json!({ "n_max": n_max, "levels": [lo, hi] }), items);
    report.provenance = kt.provenance.clone();
    report.results = json!({
        "milnor": { "RK0": rk0, "RK1": rk1 },
        "towers": { "k0": GroupTowerDoc::from_tower(&kt.k0), "k1": GroupTowerDoc::from_tower(&kt.k1) },
    });
    let header: Vec<&str> = if su {
        vec!["n", "K0", "K1", "rank", "onto(even)", "onto(odd)"]
    } else if kt.hexagons.is_empty() {
        vec!["n", "K0", "K1"]
    } else {
        vec!["n", "K0", "K1", "hexagon"]
    };
    let mut text = format!("task: {}  levels: {}..{}\n", task, lo, hi);
    text.push_str(&table(&header, &rows));
    text.push_str(&format!("RK0({}) = {}    lim1 K1 = {}\n", limit_name, rk0.value, rk0.lim1));
    text.push_str(&format!("RK1({}) = {}    lim1 K0 = {}\n", limit_name, rk1.value, rk1.lim1));
    if su {
        text.push_str("RK_* = lim Lambda_Z(rho_1, ..., rho_{n-1}) as Z/2-graded groups\n");
    }
    if !report.provenance.is_empty() {
        text.push_str(&format!("provenance: {}\n", report.provenance.join("; ")));
    }
    Ok(Output { text, report })
}

fn sixterm(file: &str) -> Result<Output, CliError> {
    let doc: SixTermDoc =
        serde_json::from_str(&read(file)?).map_err(|source| CliError::Json { path: file.to_string(), source })?;
    let st = doc.to_sixterm().map_err(|source| CliError::Doc { path: file.to_string(), source })?;
    let inputs = json!({ "file": file });
    match solve_sixterm(&st) {
        Ok(sol) => {
            let items: Vec<Item> = (0..6)
                .map(|k| {
                    Item::new(sol.labels[k].clone(), Status::Computed)
                        .with("group", sol.nodes[k].to_string())
                        .with("outgoing", sol.properties[k].to_string())
                })
                .collect();
            let mut report = Report::ordered("k sixterm", inputs, items);
            report.results = json!({
                "euler_characteristic": sol.euler_characteristic(),
                "deductions": sol.deductions,
                "families": sol.families,
                "exact_checked": sol.exact_checked,
            });
            let mut text = format!("{}", sol);
            for d in &sol.deductions {
                text.push_str(&format!("  - {}\n", d));
            }
            text.push_str(&format!("euler characteristic: {}\n", sol.euler_characteristic()));
            Ok(Output { text, report })
        }
        Err(SixTermFailure::Inconsistent(reason)) => {
            let item = Item::new("sequence", Status::RefutedAtNormalForm).with("reason", reason.clone());
            let report = Report::ordered("k sixterm", inputs, vec![item]);
            Ok(Output { text: format!("inconsistent: {}\n", reason), report })
        }
        Err(SixTermFailure::Underdetermined(rep)) => {
            let items = rep.unresolved.iter().map(|u| Item::new(u.clone(), Status::Unknown)).collect();
            let mut report = Report::ordered("k sixterm", inputs, items);
            report.results = json!({ "underdetermined": rep });
            let mut text = format!("underdetermined: unresolved {}\n", rep.unresolved.join(", "));
            for a in &rep.ambiguous {
                text.push_str(&format!("  ambiguous: {}\n", a.reason));
            }
            for d in &rep.deductions {
                text.push_str(&format!("  - {}\n", d));
            }
            Ok(Output { text, report })
        }
    }
}
