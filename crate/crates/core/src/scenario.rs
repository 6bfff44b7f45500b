//! Batch scenarios: JSON task lists in, deterministic JSON reports out.

use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::budget::Budget;
use crate::cohomology::{h1_classes, h2_abelian, obstruction_report, TwoCohomologyGroup};
use crate::error::{Error, ErrorCategory};
use crate::extensions::{
    complements_of_kernel, decompose_with, is_model_galois, minimal_descent, sections_up_to,
    verify_normal_core_identity, GroupExtension, Section,
};
use crate::group::catalog::{self, listing_names};
use crate::group::{
    automorphism_group, enumerate_homs, FiniteGroup, GroupAction, GroupRef, Homomorphism, Subgroup,
};
use crate::twisting::{
    all_points, classify_models, count_with, crux_check, is_twist_galois, minimal_galois_subgroup,
    model_independence_check, restrict_model, specialization_report, specialization_subgroup,
    twist_action, PointClass, TwistModel,
};

/// Sections examined per descent or sections task.
pub const SECTION_LIMIT: usize = 500;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default)]
    pub budget: Option<Budget>,
    pub tasks: Vec<Task>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Name(String),
    Table {
        #[serde(default)]
        label: Option<String>,
        order: usize,
        table: Vec<Vec<usize>>,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ActionSpec {
    Keyword(String),
    Permutations(Vec<Vec<usize>>),
}

impl Default for ActionSpec {
    fn default() -> Self {
        ActionSpec::Keyword("trivial".into())
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ExtensionSpec {
    Explicit {
        kernel: GroupSpec,
        total: GroupSpec,
        quotient: GroupSpec,
        iota: Vec<usize>,
        pi: Vec<usize>,
    },
    Split {
        kernel: GroupSpec,
        quotient: GroupSpec,
        #[serde(default)]
        action: ActionSpec,
    },
}

/// `"all"`, `"canonical"` (split extensions only), or explicit images.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum SectionChoice {
    Keyword(String),
    Images(Vec<usize>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Task {
    Descent {
        extension: ExtensionSpec,
        #[serde(default)]
        section: Option<SectionChoice>,
    },
    Sections {
        extension: ExtensionSpec,
    },
    TwistCount {
        #[serde(rename = "G")]
        g: GroupSpec,
        #[serde(rename = "Q")]
        q: GroupSpec,
        alpha: Vec<usize>,
        #[serde(default)]
        points: Option<Vec<Vec<usize>>>,
        #[serde(default)]
        restrict_to: Option<Vec<usize>>,
    },
    ClassifyModels {
        #[serde(rename = "G")]
        g: GroupSpec,
        #[serde(rename = "Q")]
        q: GroupSpec,
    },
    Specialization {
        #[serde(rename = "G")]
        g: GroupSpec,
        #[serde(rename = "Q")]
        q: GroupSpec,
        alpha: Vec<usize>,
        #[serde(default)]
        points: Option<Vec<Vec<usize>>>,
        #[serde(default)]
        alpha0: Option<Vec<Vec<usize>>>,
    },
    Cohomology {
        #[serde(rename = "Q")]
        q: GroupSpec,
        #[serde(rename = "G", default)]
        g: Option<GroupSpec>,
        #[serde(rename = "A", default)]
        a: Option<GroupSpec>,
        #[serde(default)]
        action: ActionSpec,
    },
    Obstruction {
        #[serde(rename = "G")]
        g: GroupSpec,
        #[serde(rename = "Q")]
        q: GroupSpec,
        #[serde(default)]
        action: ActionSpec,
    },
}

impl Task {
    pub fn kind(&self) -> &'static str {
        match self {
            Task::Descent { .. } => "descent",
            Task::Sections { .. } => "sections",
            Task::TwistCount { .. } => "twist-count",
            Task::ClassifyModels { .. } => "classify-models",
            Task::Specialization { .. } => "specialization",
            Task::Cohomology { .. } => "cohomology",
            Task::Obstruction { .. } => "obstruction",
        }
    }
}

/// A scenario file that could not be parsed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at line {}, column {}: {}",
            self.line, self.column, self.message
        )
    }
}

impl std::error::Error for ParseError {}

pub fn parse_scenario(text: &str) -> Result<Scenario, ParseError> {
    serde_json::from_str(text).map_err(|e| ParseError {
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    })
}

fn strip_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(i) => message[..i].to_string(),
        None => message.to_string(),
    }
}

/// A failed task: the offending field (if any) and the underlying error.
#[derive(Debug, Clone)]
pub struct TaskError {
    pub field: Option<&'static str>,
    pub error: Error,
}

impl TaskError {
    pub fn category(&self) -> ErrorCategory {
        self.error.category()
    }
}

impl From<Error> for TaskError {
    fn from(error: Error) -> Self {
        TaskError { field: None, error }
    }
}

type TaskResult<T> = Result<T, TaskError>;

fn at<T>(field: &'static str, r: crate::Result<T>) -> TaskResult<T> {
    r.map_err(|error| TaskError {
        field: Some(field),
        error,
    })
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    pub parallel: bool,
    pub timings: bool,
}

#[derive(Debug, Clone)]
pub struct TaskOutcome {
    pub index: usize,
    pub kind: &'static str,
    pub result: TaskResult<Value>,
    pub millis: f64,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub outcomes: Vec<TaskOutcome>,
    pub timings: bool,
}

impl Report {
    pub fn succeeded(&self) -> bool {
        self.outcomes.iter().all(|o| o.result.is_ok())
    }

    /// 0 on success, otherwise the exit code of the first failed task.
    pub fn exit_code(&self) -> i32 {
        self.outcomes
            .iter()
            .find_map(|o| o.result.as_ref().err())
            .map_or(0, |e| e.category().exit_code())
    }

    pub fn to_json(&self) -> Value {
        let tasks: Vec<Value> = self
            .outcomes
            .iter()
            .map(|o| {
                let mut entry = Map::new();
                entry.insert("index".into(), json!(o.index));
                entry.insert("kind".into(), json!(o.kind));
                match &o.result {
                    Ok(result) => {
                        entry.insert("status".into(), json!("ok"));
                        entry.insert("result".into(), result.clone());
                    }
                    Err(e) => {
                        entry.insert("status".into(), json!("error"));
                        entry.insert("category".into(), json!(e.category()));
                        if let Some(field) = e.field {
                            entry.insert("field".into(), json!(field));
                        }
                        entry.insert("error".into(), json!(describe(o.index, o.kind, e)));
                    }
                }
                Value::Object(entry)
            })
            .collect();
        let mut report = Map::new();
        report.insert(
            "status".into(),
            json!(if self.succeeded() { "ok" } else { "failed" }),
        );
        report.insert("tasks".into(), Value::Array(tasks));
        if self.timings {
            let ms: Vec<Value> = self
                .outcomes
                .iter()
                .map(|o| json!((o.millis * 1000.0).round() / 1000.0))
                .collect();
            report.insert("timings_ms".into(), Value::Array(ms));
        }
        Value::Object(report)
    }

    pub fn to_pretty_string(&self) -> String {
        render(&self.to_json())
    }
}

fn describe(index: usize, kind: &str, e: &TaskError) -> String {
    match e.field {
        Some(field) => format!("task {index} ({kind}): field `{field}`: {}", e.error),
        None => format!("task {index} ({kind}): {}", e.error),
    }
}

/// Indented JSON with arrays of scalars kept on one line.
pub fn render(value: &Value) -> String {
    let mut out = String::new();
    write_value(value, 0, &mut out);
    out
}

fn write_value(value: &Value, depth: usize, out: &mut String) {
    let pad = |d: usize| "  ".repeat(d);
    match value {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (k, v)) in map.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(v, depth + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        Value::Array(items) if items.iter().any(|v| v.is_object() || v.is_array()) => {
            out.push_str("[\n");
            for (i, v) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_value(v, depth + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(Value::to_string).collect();
            out.push('[');
            out.push_str(&parts.join(", "));
            out.push(']');
        }
        other => out.push_str(&other.to_string()),
    }
}

/// Runs every task; a failing task is recorded and the rest still run.
pub fn run_scenario(scenario: &Scenario, budget: Budget, options: RunOptions) -> Report {
    let run = |(index, task): (usize, &Task)| {
        let start = Instant::now();
        let result = run_task(task, &budget);
        TaskOutcome {
            index,
            kind: task.kind(),
            result,
            millis: start.elapsed().as_secs_f64() * 1000.0,
        }
    };
    let outcomes = if options.parallel {
        scenario.tasks.par_iter().enumerate().map(run).collect()
    } else {
        scenario.tasks.iter().enumerate().map(run).collect()
    };
    Report {
        outcomes,
        timings: options.timings,
    }
}

pub fn run_task(task: &Task, budget: &Budget) -> TaskResult<Value> {
    match task {
        Task::Descent { extension, section } => {
            let ext = resolve_extension(extension, budget)?;
            descent(&ext, extension, section.as_ref(), budget)
        }
        Task::Sections { extension } => {
            let ext = resolve_extension(extension, budget)?;
            sections(&ext, budget)
        }
        Task::TwistCount {
            g,
            q,
            alpha,
            points,
            restrict_to,
        } => {
            let (g, q) = (resolve_group("G", g)?, resolve_group("Q", q)?);
            at("G", budget.check_total_order(g.order() * q.order()))?;
            let model = TwistModel::new(at(
                "alpha",
                Homomorphism::new(q.clone(), g.clone(), alpha.clone()),
            )?);
            let points = resolve_points(&q, &g, points.as_deref(), budget)?;
            twist_count(&model, &points, restrict_to.as_deref(), budget)
        }
        Task::ClassifyModels { g, q } => {
            let (g, q) = (resolve_group("G", g)?, resolve_group("Q", q)?);
            at("G", budget.check_total_order(g.order() * q.order()))?;
            let classes = classify_models(&g, &q, budget)?;
            let hom_count: usize = classes.iter().map(|c| c.size).sum();
            Ok(json!({
                "G": group_summary(&g),
                "Q": group_summary(&q),
                "hom_count": hom_count,
                "class_count": classes.len(),
                "classes": classes.iter().map(|c| json!({
                    "canonical": c.canonical,
                    "size": c.size,
                    "galois": c.galois,
                    "centralizer_order": c.centralizer_order,
                })).collect::<Vec<_>>(),
            }))
        }
        Task::Specialization {
            g,
            q,
            alpha,
            points,
            alpha0,
        } => {
            let (g, q) = (resolve_group("G", g)?, resolve_group("Q", q)?);
            at("G", budget.check_total_order(g.order() * q.order()))?;
            let model = TwistModel::new(at(
                "alpha",
                Homomorphism::new(q.clone(), g.clone(), alpha.clone()),
            )?);
            let points = resolve_points(&q, &g, points.as_deref(), budget)?;
            specialization(&model, &points, alpha0.as_deref(), budget)
        }
        Task::Cohomology { q, g, a, action } => {
            let q = resolve_group("Q", q)?;
            match (g, a) {
                (Some(g), None) => {
                    let g = resolve_group("G", g)?;
                    let theta = resolve_action("action", &q, &g, action)?;
                    h1_report(&theta, budget)
                }
                (None, Some(a)) => {
                    let a = resolve_group("A", a)?;
                    let theta = resolve_action("action", &q, &a, action)?;
                    let h2 = at("A", h2_abelian(&theta))?;
                    Ok(h2_json(&h2))
                }
                _ => Err(TaskError {
                    field: Some("A"),
                    error: Error::Precondition(
                        "exactly one of `G` (degree 1) or `A` (degree 2) is required".into(),
                    ),
                }),
            }
        }
        Task::Obstruction { g, q, action } => {
            let (g, q) = (resolve_group("G", g)?, resolve_group("Q", q)?);
            let perms = match action {
                ActionSpec::Keyword(k) if k == "trivial" => None,
                ActionSpec::Keyword(k) => {
                    return Err(TaskError {
                        field: Some("action"),
                        error: Error::InvalidAction(format!("unknown keyword `{k}`")),
                    })
                }
                ActionSpec::Permutations(p) => Some(p.clone()),
            };
            let report = at("action", obstruction_report(&g, &q, perms))?;
            Ok(json!({
                "G": group_summary(&g),
                "Q": group_summary(&q),
                "center": report.center,
                "center_order": report.center.len(),
                "obstruction_group": report.group.as_ref().map(h2_json),
            }))
        }
    }
}

fn resolve_group(field: &'static str, spec: &GroupSpec) -> TaskResult<GroupRef> {
    match spec {
        GroupSpec::Name(name) => at(field, catalog::build(name)),
        GroupSpec::Table {
            label,
            order,
            table,
        } => {
            if table.len() != *order {
                return at(
                    field,
                    Err(Error::InvalidTable(format!(
                        "declared order {order} but the table has {} rows",
                        table.len()
                    ))),
                );
            }
            let label = label.clone().unwrap_or_else(|| format!("G{order}"));
            at(
                field,
                FiniteGroup::from_table(label, table).map(std::sync::Arc::new),
            )
        }
    }
}

fn resolve_action(
    field: &'static str,
    q: &GroupRef,
    target: &GroupRef,
    spec: &ActionSpec,
) -> TaskResult<GroupAction> {
    match spec {
        ActionSpec::Keyword(k) if k == "trivial" => Ok(GroupAction::trivial(q, target)),
        ActionSpec::Keyword(k) => at(
            field,
            Err(Error::InvalidAction(format!("unknown keyword `{k}`"))),
        ),
        ActionSpec::Permutations(p) => at(
            field,
            GroupAction::new(q.clone(), target.clone(), p.clone()),
        ),
    }
}

fn resolve_extension(spec: &ExtensionSpec, budget: &Budget) -> TaskResult<GroupExtension> {
    match spec {
        ExtensionSpec::Explicit {
            kernel,
            total,
            quotient,
            iota,
            pi,
        } => {
            let kernel = resolve_group("kernel", kernel)?;
            let total = resolve_group("total", total)?;
            let quotient = resolve_group("quotient", quotient)?;
            at("total", budget.check_total_order(total.order()))?;
            let iota = at(
                "iota",
                Homomorphism::new(kernel, total.clone(), iota.clone()),
            )?;
            let pi = at("pi", Homomorphism::new(total, quotient, pi.clone()))?;
            at("extension", GroupExtension::new(iota, pi))
        }
        ExtensionSpec::Split {
            kernel,
            quotient,
            action,
        } => {
            let kernel = resolve_group("kernel", kernel)?;
            let quotient = resolve_group("quotient", quotient)?;
            at(
                "quotient",
                budget.check_total_order(kernel.order() * quotient.order()),
            )?;
            let theta = resolve_action("action", &quotient, &kernel, action)?;
            at(
                "extension",
                GroupExtension::semidirect(&kernel, &quotient, &theta),
            )
        }
    }
}

fn resolve_points(
    q: &GroupRef,
    g: &GroupRef,
    points: Option<&[Vec<usize>]>,
    budget: &Budget,
) -> TaskResult<Vec<PointClass>> {
    match points {
        None => Ok(all_points(q, g, budget)?),
        Some(list) => list
            .iter()
            .map(|images| {
                at(
                    "points",
                    Homomorphism::new(q.clone(), g.clone(), images.clone()),
                )
                .map(PointClass::new)
            })
            .collect(),
    }
}

fn group_summary(g: &GroupRef) -> Value {
    json!({ "label": g.label(), "order": g.order() })
}

fn subgroup_json(h: &Subgroup) -> Value {
    json!({ "order": h.order(), "elements": h.elements() })
}

/// A catalog name of a group isomorphic to `g`, if one of the listed entries
/// or a product of two of them matches.
pub fn identify(g: &FiniteGroup) -> Option<String> {
    // Dihedral names last, so D3 is reported as S3 and D2 never shadows V4.
    let (mut names, dihedral): (Vec<String>, Vec<String>) = listing_names()
        .into_iter()
        .partition(|n| !n.starts_with('D'));
    names.extend(dihedral);
    let mut candidates: Vec<String> = names.clone();
    for (i, a) in names.iter().enumerate() {
        for b in &names[i..] {
            if a != "C1" && b != "C1" {
                candidates.push(format!("{a}x{b}"));
            }
        }
    }
    candidates.into_iter().find(|name| {
        catalog::build(name)
            .map(|h| h.order() == g.order() && h.is_isomorphic(g))
            .unwrap_or(false)
    })
}

fn descent(
    ext: &GroupExtension,
    spec: &ExtensionSpec,
    choice: Option<&SectionChoice>,
    budget: &Budget,
) -> TaskResult<Value> {
    let (sections, truncated) = match choice {
        None => all_sections(ext, budget)?,
        Some(SectionChoice::Keyword(k)) if k == "all" => all_sections(ext, budget)?,
        Some(SectionChoice::Keyword(k)) if k == "canonical" => {
            if !matches!(spec, ExtensionSpec::Split { .. }) {
                return at(
                    "section",
                    Err(Error::Precondition(
                        "`canonical` needs an extension given by kernel, quotient and action"
                            .into(),
                    )),
                );
            }
            let images: Vec<usize> = ext.quotient_group().elements().collect();
            (vec![at("section", ext.section(images))?], false)
        }
        Some(SectionChoice::Keyword(k)) => {
            return at(
                "section",
                Err(Error::Precondition(format!("unknown keyword `{k}`"))),
            )
        }
        Some(SectionChoice::Images(images)) => {
            (vec![at("section", ext.section(images.clone()))?], false)
        }
    };
    let mut entries = Vec::with_capacity(sections.len());
    for s in &sections {
        entries.push(descent_entry(ext, s, budget)?);
    }
    Ok(json!({
        "extension": extension_summary(ext),
        "section_count": sections.len(),
        "truncated": truncated,
        "sections": entries,
    }))
}

fn all_sections(ext: &GroupExtension, budget: &Budget) -> TaskResult<(Vec<Section>, bool)> {
    let sections = sections_up_to(ext, budget, SECTION_LIMIT + 1)?;
    let truncated = sections.len() > SECTION_LIMIT;
    Ok((
        sections.into_iter().take(SECTION_LIMIT).collect(),
        truncated,
    ))
}

fn extension_summary(ext: &GroupExtension) -> Value {
    json!({
        "kernel": group_summary(ext.kernel_group()),
        "total": group_summary(ext.total_group()),
        "quotient": group_summary(ext.quotient_group()),
    })
}

fn descent_entry(ext: &GroupExtension, s: &Section, budget: &Budget) -> TaskResult<Value> {
    let galois = is_model_galois(ext, s)?;
    let core_identity = verify_normal_core_identity(ext, s)?;
    if !core_identity {
        return Err(
            Error::TheoremViolation("V differs from the normal core of img(s)".into()).into(),
        );
    }
    let report = minimal_descent(ext, s, budget)?;
    let decomposition = decompose_with(ext, &report, budget)?;
    let h = &report.galois_group_e;
    Ok(json!({
        "section": s.images(),
        "galois": galois,
        "V": subgroup_json(&report.v),
        "GV": subgroup_json(&report.gv),
        "E": subgroup_json(&report.e_subgroup),
        "galois_group": {
            "order": h.order(),
            "abelian": h.is_abelian(),
            "isomorphic_to": identify(h),
        },
        "aut_embedding": report.aut_embedding.images(),
        "subgroups_scanned": report.subgroups_scanned,
        "normal_core_identity": core_identity,
        "decomposition": {
            "quotient_order": decomposition.quotient.order(),
            "semidirect_order": decomposition.semidirect.group.order(),
            "map": decomposition.map.images(),
        },
    }))
}

fn sections(ext: &GroupExtension, budget: &Budget) -> TaskResult<Value> {
    let (sections, truncated) = all_sections(ext, budget)?;
    let mut entries = Vec::with_capacity(sections.len());
    for s in &sections {
        entries.push(json!({ "images": s.images(), "galois": is_model_galois(ext, s)? }));
    }
    let mut result = Map::new();
    result.insert("extension".into(), extension_summary(ext));
    result.insert("count".into(), json!(sections.len()));
    result.insert("truncated".into(), json!(truncated));
    result.insert("sections".into(), Value::Array(entries));
    if !truncated {
        let complements = complements_of_kernel(ext, budget)?;
        let mut images: Vec<Vec<usize>> = sections
            .iter()
            .map(|s| s.image().elements().to_vec())
            .collect();
        images.sort();
        images.dedup();
        let mut listed: Vec<Vec<usize>> =
            complements.iter().map(|c| c.elements().to_vec()).collect();
        listed.sort();
        if images != listed {
            return Err(
                Error::TheoremViolation("section images and complements disagree".into()).into(),
            );
        }
        result.insert("complements".into(), json!(listed));
    }
    Ok(Value::Object(result))
}

fn twist_count(
    model: &TwistModel,
    points: &[PointClass],
    restrict_to: Option<&[usize]>,
    budget: &Budget,
) -> TaskResult<Value> {
    let action = twist_action(model)?;
    let galois = is_twist_galois(model)?;
    let minimal = minimal_galois_subgroup(model)?;
    let mut entries = Vec::with_capacity(points.len());
    for p in points {
        let count = count_with(model, &action, p)?;
        let mut entry = Map::new();
        entry.insert("phi".into(), json!(p.phi().images()));
        entry.insert("count".into(), json!(count.count));
        entry.insert("is_lift".into(), json!(count.is_lift));
        entry.insert("centralizer_order".into(), json!(count.centralizer_order));
        entry.insert(
            "specialization_subgroup".into(),
            subgroup_json(&specialization_subgroup(p)),
        );
        if count.is_lift {
            let crux = crux_check(model, p, budget)?;
            entry.insert(
                "crux".into(),
                json!({
                    "minimal_galois": subgroup_json(&crux.minimal_galois),
                    "joint_specialization": subgroup_json(&crux.joint_specialization),
                    "central_models": crux.central_models,
                    "trivializing_element": crux.trivializing_element,
                }),
            );
        }
        entries.push(Value::Object(entry));
    }
    let mut result = Map::new();
    result.insert(
        "model".into(),
        json!({
            "G": group_summary(model.g()),
            "Q": group_summary(model.q()),
            "alpha": model.alpha().images(),
            "galois": galois,
            "transitive": action.transitive,
            "minimal_galois_subgroup": subgroup_json(&minimal),
        }),
    );
    result.insert("points".into(), Value::Array(entries));
    if let Some(elements) = restrict_to {
        let h = at("restrict_to", model.q().subgroup(elements))?;
        let restricted = restrict_model(model, &h)?;
        result.insert(
            "restricted".into(),
            json!({
                "alpha": restricted.alpha().images(),
                "galois": is_twist_galois(&restricted)?,
            }),
        );
    }
    Ok(Value::Object(result))
}

fn specialization(
    model: &TwistModel,
    points: &[PointClass],
    alpha0: Option<&[Vec<usize>]>,
    budget: &Budget,
) -> TaskResult<Value> {
    let report = specialization_report(model, points)?;
    let (g, q) = (model.g(), model.q());
    let translations: Vec<Homomorphism> = match alpha0 {
        Some(list) => list
            .iter()
            .map(|images| {
                at(
                    "alpha0",
                    Homomorphism::new(q.clone(), g.clone(), images.clone()),
                )
            })
            .collect::<TaskResult<_>>()?,
        None => {
            let center = g.center();
            enumerate_homs(q, g, budget)?
                .into_iter()
                .filter(|h| h.images().iter().all(|&x| center.contains(x)))
                .collect()
        }
    };
    let mut independence = Vec::with_capacity(translations.len());
    for a0 in &translations {
        let preserved = at("alpha0", model_independence_check(a0, points))?;
        independence.push(json!({ "alpha0": a0.images(), "preserved": preserved }));
    }
    Ok(json!({
        "model": { "G": group_summary(g), "Q": group_summary(q), "alpha": model.alpha().images() },
        "center_order": report.center_order,
        "conjugate_models": report.conjugate_models,
        "lifted_count": report.lifted_count,
        "classes": report.classes.iter().map(|c| json!({
            "canonical": c.canonical,
            "members": c.members,
            "count": c.count,
        })).collect::<Vec<_>>(),
        "model_independence": independence,
    }))
}

fn h1_report(theta: &GroupAction, budget: &Budget) -> TaskResult<Value> {
    let h1 = h1_classes(theta, budget)?;
    Ok(json!({
        "degree": 1,
        "Q": group_summary(theta.actor()),
        "G": group_summary(theta.target()),
        "trivial_action": theta.is_trivial(),
        "cocycle_count": h1.cocycles.len(),
        "class_count": h1.classes.len(),
        "classes": h1.classes.iter().map(|c| json!({
            "canonical": c.canonical,
            "size": c.members.len(),
        })).collect::<Vec<_>>(),
    }))
}

fn h2_json(h2: &TwoCohomologyGroup) -> Value {
    let order = h2.order();
    let order = u64::try_from(order).map_or_else(|_| json!(order.to_string()), |o| json!(o));
    json!({
        "degree": 2,
        "Q": group_summary(h2.q()),
        "A": group_summary(h2.a()),
        "order": order,
        "invariant_factors": h2.invariant_factors,
        "generators": h2.generators,
        "representatives_listed": h2.representatives.len(),
        "representatives": h2.representatives,
    })
}

/// Text table of catalog entries: order, center order, automorphism group order.
pub fn catalog_listing(budget: &Budget) -> crate::Result<String> {
    let mut out = format!(
        "{:<6} {:>6} {:>7} {:>6}\n",
        "name", "order", "center", "aut"
    );
    for name in listing_names() {
        let g = catalog::build(&name)?;
        let aut = automorphism_group(&g, budget)?;
        out.push_str(&format!(
            "{:<6} {:>6} {:>7} {:>6}\n",
            name,
            g.order(),
            g.center().order(),
            aut.group.order()
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(text: &str) -> Report {
        let scenario = parse_scenario(text).unwrap();
        run_scenario(&scenario, Budget::default(), RunOptions::default())
    }

    #[test]
    fn empty_scenario_succeeds() {
        let report = run(r#"{"tasks": []}"#);
        assert!(report.succeeded());
        assert_eq!(report.exit_code(), 0);
        assert_eq!(report.to_json(), json!({"status": "ok", "tasks": []}));
    }

    #[test]
    fn canonical_section_of_s3() {
        let inversion = r#"{"tasks": [{"kind": "descent",
            "extension": {"kernel": "C3", "quotient": "C2", "action": [[0,1,2],[0,2,1]]},
            "section": "canonical"}]}"#;
        let report = run(inversion);
        let result = &report.to_json()["tasks"][0]["result"]["sections"][0];
        assert_eq!(result["V"]["order"], 1);
        assert_eq!(result["galois_group"]["order"], 2);
        assert_eq!(result["galois_group"]["isomorphic_to"], "C2");
        assert_eq!(result["galois"], false);
    }

    #[test]
    fn unknown_catalog_name_names_the_task() {
        let report = run(r#"{"tasks": [
            {"kind": "classify-models", "G": "S3", "Q": "C2"},
            {"kind": "classify-models", "G": "S9", "Q": "C2"}]}"#);
        let json = report.to_json();
        assert_eq!(json["tasks"][0]["status"], "ok");
        assert_eq!(json["tasks"][1]["status"], "error");
        assert_eq!(json["tasks"][1]["field"], "G");
        assert!(json["tasks"][1]["error"]
            .as_str()
            .unwrap()
            .starts_with("task 1"));
        assert_eq!(report.exit_code(), 1);
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err =
            parse_scenario("{\n  \"tasks\": [\n    {\"kind\": \"nope\"}\n  ]\n}").unwrap_err();
        assert_eq!(err.line, 3);
        let err = parse_scenario("{\"tasks\": [}").unwrap_err();
        assert_eq!((err.line, err.column), (1, 12));
    }

    #[test]
    fn budget_errors_are_reported_per_task() {
        let scenario = parse_scenario(
            r#"{"budget": {"max_total_order": 10}, "tasks": [
                {"kind": "sections", "extension": {"kernel": "S3", "quotient": "C2"}},
                {"kind": "sections", "extension": {"kernel": "C3", "quotient": "C2"}}]}"#,
        )
        .unwrap();
        let report = run_scenario(&scenario, scenario.budget.unwrap(), RunOptions::default());
        assert_eq!(report.exit_code(), 3);
        assert!(report.outcomes[1].result.is_ok());
    }

    #[test]
    fn render_round_trips() {
        let value =
            json!({"a": [1, 2], "b": [[0, 1], []], "c": {}, "d": "x\"y", "e": [{"f": null}]});
        let text = render(&value);
        assert!(text.contains("\"a\": [1, 2]"));
        assert_eq!(serde_json::from_str::<Value>(&text).unwrap(), value);
    }

    #[test]
    fn identify_small_groups() {
        assert_eq!(
            identify(&catalog::build("C3xC2").unwrap()).as_deref(),
            Some("C6")
        );
        assert_eq!(
            identify(&catalog::build("D3").unwrap()).as_deref(),
            Some("S3")
        );
    }

    #[test]
    fn catalog_listing_rows() {
        let text = catalog_listing(&Budget::default()).unwrap();
        let row = |name: &str| {
            text.lines()
                .find(|l| l.split_whitespace().next() == Some(name))
                .unwrap()
                .split_whitespace()
                .map(str::to_string)
                .collect::<Vec<_>>()
        };
        assert_eq!(row("S3"), ["S3", "6", "1", "6"]);
        assert_eq!(row("C2"), ["C2", "2", "2", "1"]);
        assert_eq!(row("Q8")[2], "2");
    }
}
