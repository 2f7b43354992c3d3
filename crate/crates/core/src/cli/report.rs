use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::emit::{render_rows, sphere_cell, TableRow};
use super::{to_json, CliError, JobSpec, OutputFormat};
use crate::adjunction::{default_bound, h_bruteforce, HWitness};
use crate::algebra::{AlgebraDescriptor, AlgebraJson, CaseTag};
use crate::closedform::{c_zero, h_closed, h_lower_bound, sign_class, HSign};
use crate::error::GenusError;
use crate::lattice::{FormTag, LatticeClass};
use crate::reduction::{reduce, ReductionTrace};
use crate::search::classes_in_box;
use crate::sphere::{sphere_check, SphereVerdict};

/// Where an `h` value came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HSource {
    /// The case's closed formula: the exact maximum over adjunction classes.
    Closed,
    /// `h_{c0}` in an extended case: a lower bound only.
    LowerBound,
    /// Exhaustive box search: exact within the box.
    Oracle,
}

impl fmt::Display for HSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HSource::Closed => "closed",
            HSource::LowerBound => "lower_bound",
            HSource::Oracle => "oracle",
        })
    }
}

fn key_values(format: OutputFormat, pairs: Vec<(&str, String)>) -> Result<String, CliError> {
    match format {
        OutputFormat::Text => Ok(pairs
            .into_iter()
            .map(|(k, v)| format!("{k}: {v}\n"))
            .collect()),
        _ => {
            let rows: Vec<Vec<String>> = pairs
                .into_iter()
                .map(|(k, v)| vec![k.to_string(), v])
                .collect();
            render_rows(format, &["field", "value"], &rows)
        }
    }
}

fn show<T: fmt::Display>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "-".into(), |v| v.to_string())
}

fn describe(alg: &AlgebraDescriptor, x: &LatticeClass) -> String {
    format!("{x} = {}", alg.form().describe(x))
}

fn non_negative(alg: &AlgebraDescriptor, a: &LatticeClass) -> Result<i64, CliError> {
    let aa = alg.form().norm(a)?;
    if aa < 0 {
        return Err(GenusError::NegativeSquare(aa).into());
    }
    Ok(aa)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComputeReport {
    pub algebra: AlgebraJson,
    pub case: CaseTag,
    pub class: LatticeClass,
    pub square: i64,
    pub reduced: Option<LatticeClass>,
    pub c0: Option<LatticeClass>,
    pub h: i64,
    pub source: HSource,
    pub oracle: Option<HWitness>,
}

impl ComputeReport {
    pub fn render(&self, format: OutputFormat) -> Result<String, CliError> {
        if format == OutputFormat::Json {
            return to_json(self);
        }
        let alg = AlgebraDescriptor::from_json(&self.algebra)?;
        let mut pairs = vec![
            ("algebra", self.algebra.form.to_string()),
            ("case", self.case.to_string()),
            ("class", describe(&alg, &self.class)),
            ("square", self.square.to_string()),
            ("reduced", self.reduced.as_ref().map_or("-".into(), |r| describe(&alg, r))),
            ("c0", show(&self.c0)),
            ("h", self.h.to_string()),
            ("source", self.source.to_string()),
        ];
        if let Some(w) = &self.oracle {
            pairs.push(("oracle", format!("{} (witness {}, bound {})", w.value, w.witness, w.bound)));
        }
        key_values(format, pairs)
    }
}

/// `h(A)` by the best available method; `--bound` adds an oracle run.
pub fn run_compute(spec: &JobSpec) -> Result<ComputeReport, CliError> {
    let alg = &spec.algebra;
    let a = spec.class()?;
    let square = non_negative(alg, a)?;
    let case = alg.classify_case();
    let oracle = |bound: i64| h_bruteforce(alg, a, bound);
    let report = if case.is_supported() {
        let (h, source) = if case.has_closed_form() {
            (h_closed(alg, a)?, HSource::Closed)
        } else {
            (h_lower_bound(alg, a)?, HSource::LowerBound)
        };
        ComputeReport {
            algebra: alg.to_json(),
            case,
            class: a.clone(),
            square,
            reduced: Some(reduce(alg, a)?.output),
            c0: Some(c_zero(alg)?),
            h,
            source,
            oracle: spec.bound.map(oracle).transpose()?.flatten(),
        }
    } else {
        let bound = spec.bound.unwrap_or_else(|| default_bound(a));
        let w = oracle(bound)?.ok_or_else(|| {
            CliError::precondition(format!("no adjunction class within bound {bound}"))
        })?;
        ComputeReport {
            algebra: alg.to_json(),
            case,
            class: a.clone(),
            square,
            reduced: None,
            c0: None,
            h: w.value,
            source: HSource::Oracle,
            oracle: Some(w),
        }
    };
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReduceReport {
    pub case: CaseTag,
    pub square: i64,
    pub trace: ReductionTrace,
}

#[derive(Serialize)]
struct ReduceSummary<'a> {
    case: CaseTag,
    square: i64,
    input: &'a LatticeClass,
    output: &'a LatticeClass,
    move_count: usize,
}

impl ReduceReport {
    /// With `trace`, JSON output is the bare [`ReductionTrace`].
    pub fn render(&self, format: OutputFormat, trace: bool) -> Result<String, CliError> {
        let t = &self.trace;
        match format {
            OutputFormat::Json if trace => to_json(t),
            OutputFormat::Json => to_json(&ReduceSummary {
                case: self.case,
                square: self.square,
                input: &t.input,
                output: &t.output,
                move_count: t.moves.len(),
            }),
            _ => {
                let mut pairs = vec![
                    ("case", self.case.to_string()),
                    ("input", t.input.to_string()),
                    ("output", t.output.to_string()),
                    ("square", self.square.to_string()),
                    ("moves", t.moves.len().to_string()),
                ];
                if trace {
                    for m in &t.moves {
                        let s = serde_json::to_string(m).unwrap_or_default();
                        pairs.push(("move", s));
                    }
                }
                key_values(format, pairs)
            }
        }
    }
}

pub fn run_reduce(spec: &JobSpec) -> Result<ReduceReport, CliError> {
    let alg = &spec.algebra;
    let a = spec.class()?;
    let square = non_negative(alg, a)?;
    Ok(ReduceReport {
        case: alg.classify_case(),
        square,
        trace: reduce(alg, a)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphereReport {
    pub case: CaseTag,
    pub class: LatticeClass,
    pub verdict: SphereVerdict,
}

impl SphereReport {
    pub fn render(&self, format: OutputFormat) -> Result<String, CliError> {
        if format == OutputFormat::Json {
            return to_json(self);
        }
        let v = &self.verdict;
        let mut pairs = vec![
            ("case", self.case.to_string()),
            ("class", self.class.to_string()),
            ("verdict", sphere_cell(v)),
            ("reduced", show(&v.reduced)),
            ("h", show(&v.h)),
        ];
        if let Some(n) = &v.note {
            pairs.push(("note", n.clone()));
        }
        if let Some(w) = &v.evidence {
            pairs.push(("oracle", format!("{} (bound {})", w.value, w.bound)));
        }
        key_values(format, pairs)
    }
}

pub fn run_sphere(spec: &JobSpec) -> Result<SphereReport, CliError> {
    let alg = &spec.algebra;
    let a = spec.class()?;
    Ok(SphereReport {
        case: alg.classify_case(),
        class: a.clone(),
        verdict: sphere_check(alg, a)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub class: LatticeClass,
    pub closed: i64,
    pub oracle: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub algebra: FormTag,
    pub case: CaseTag,
    pub grid: i64,
    pub bound: i64,
    pub checked: usize,
    pub passed: usize,
    pub failed: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl VerifyReport {
    pub fn render(&self, format: OutputFormat) -> Result<String, CliError> {
        if format == OutputFormat::Json {
            return to_json(self);
        }
        if format == OutputFormat::Text {
            let verdict = if self.failed == 0 { "PASS" } else { "FAIL" };
            let mut out = format!(
                "{verdict}: {} {}: {}/{} classes agree (grid {}, bound {})\n",
                self.algebra, self.case, self.passed, self.checked, self.grid, self.bound
            );
            for c in &self.counterexamples {
                out += &format!(
                    "  {}: closed {} oracle {}\n",
                    c.class,
                    c.closed,
                    show(&c.oracle)
                );
            }
            return Ok(out);
        }
        let rows: Vec<Vec<String>> = self
            .counterexamples
            .iter()
            .map(|c| vec![c.class.to_string(), c.closed.to_string(), show(&c.oracle)])
            .collect();
        render_rows(format, &["class", "closed", "oracle"], &rows)
    }
}

/// Classes of non-negative square in the grid box, in lexicographic order.
fn grid_classes(alg: &AlgebraDescriptor, grid: i64) -> Result<Vec<LatticeClass>, CliError> {
    Ok(classes_in_box(alg.form(), grid, 0)?)
}

/// Checks `h_closed = h_bruteforce` on every class of the grid.
pub fn run_verify(spec: &JobSpec, warnings: &mut Vec<String>) -> Result<VerifyReport, CliError> {
    let alg = &spec.algebra;
    let grid = spec.checked_grid(warnings)?;
    let bound = spec
        .bound
        .ok_or_else(|| CliError::input("verify needs --bound"))?;
    let case = alg.classify_case();
    if !case.has_closed_form() {
        return Err(CliError::precondition(format!(
            "{case} has no closed form to verify"
        )));
    }
    let classes = grid_classes(alg, grid)?;
    let results: Vec<Result<Option<Counterexample>, GenusError>> = classes
        .par_iter()
        .map(|a| {
            let closed = h_closed(alg, a)?;
            let oracle = h_bruteforce(alg, a, bound)?.map(|w| w.value);
            Ok((oracle != Some(closed)).then(|| Counterexample {
                class: a.clone(),
                closed,
                oracle,
            }))
        })
        .collect();
    let mut counterexamples = Vec::new();
    for r in results {
        if let Some(c) = r? {
            counterexamples.push(c);
        }
    }
    Ok(VerifyReport {
        algebra: alg.form().tag(),
        case,
        grid,
        bound,
        checked: classes.len(),
        passed: classes.len() - counterexamples.len(),
        failed: counterexamples.len(),
        counterexamples,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub algebra: FormTag,
    pub case: CaseTag,
    pub grid: i64,
    pub rows: Vec<TableRow>,
}

impl TableReport {
    pub fn render(&self, format: OutputFormat) -> Result<String, CliError> {
        if format == OutputFormat::Json {
            return to_json(self);
        }
        let rows: Vec<Vec<String>> = self.rows.iter().map(TableRow::cells).collect();
        render_rows(format, &TableRow::HEADERS, &rows)
    }
}

/// First nonzero coefficient positive (or zero class): one row per `{A, -A}`.
fn is_representative(a: &LatticeClass) -> bool {
    a.coeffs().iter().find(|&&c| c != 0).is_none_or(|&c| c > 0)
}

fn table_row(
    alg: &AlgebraDescriptor,
    a: &LatticeClass,
    bound: Option<i64>,
) -> Result<TableRow, GenusError> {
    let case = alg.classify_case();
    let square = alg.form().norm(a)?;
    let (reduced, h, source, sign) = if case.has_closed_form() {
        let h = h_closed(alg, a)?;
        let r = reduce(alg, a)?.output;
        (Some(r), Some(h), Some(HSource::Closed), Some(sign_class(alg, a)?))
    } else if case.is_extended() {
        let h = h_lower_bound(alg, a)?;
        let r = reduce(alg, a)?.output;
        (Some(r), Some(h), Some(HSource::LowerBound), Some(HSign::of(h)))
    } else {
        let w = h_bruteforce(alg, a, bound.unwrap_or_else(|| default_bound(a)))?;
        let h = w.map(|w| w.value);
        (None, h, h.map(|_| HSource::Oracle), h.map(HSign::of))
    };
    let sphere = if a.is_zero() {
        None
    } else {
        Some(sphere_check(alg, a)?)
    };
    Ok(TableRow {
        class: a.clone(),
        square,
        reduced,
        h,
        source,
        sign,
        sphere,
    })
}

/// One row per `{A, -A}` in the grid with `A.A >= 0`; `h` is even in `A`.
pub fn run_table(spec: &JobSpec, warnings: &mut Vec<String>) -> Result<TableReport, CliError> {
    let alg = &spec.algebra;
    let grid = spec.checked_grid(warnings)?;
    let classes: Vec<LatticeClass> = grid_classes(alg, grid)?
        .into_iter()
        .filter(is_representative)
        .collect();
    let rows = classes
        .par_iter()
        .map(|a| table_row(alg, a, spec.bound))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TableReport {
        algebra: alg.form().tag(),
        case: alg.classify_case(),
        grid,
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisReport {
    pub algebra: FormTag,
    pub basis: Vec<String>,
    pub gram: Vec<Vec<i64>>,
    #[serde(rename = "F")]
    pub f: Option<LatticeClass>,
}

impl BasisReport {
    pub fn new(alg: &AlgebraDescriptor) -> Self {
        BasisReport {
            algebra: alg.form().tag(),
            basis: alg.form().basis_labels(),
            gram: alg.form().gram_rows(),
            f: alg.im_t_generator().cloned(),
        }
    }

    pub fn render(&self, format: OutputFormat) -> Result<String, CliError> {
        if format == OutputFormat::Json {
            return to_json(self);
        }
        let mut header = vec![""];
        header.extend(self.basis.iter().map(String::as_str));
        let rows: Vec<Vec<String>> = self
            .basis
            .iter()
            .zip(&self.gram)
            .map(|(label, row)| {
                let mut r = vec![label.clone()];
                r.extend(row.iter().map(i64::to_string));
                r
            })
            .collect();
        let mut out = String::new();
        if format == OutputFormat::Text {
            out += &format!("{}: coefficients in order {}\n", self.algebra, self.basis.join(", "));
            if let Some(f) = &self.f {
                out += &format!("Im T generated by F = {f}\n");
            }
        }
        out += &render_rows(format, &header, &rows)?;
        Ok(out)
    }
}
