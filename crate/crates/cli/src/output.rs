use std::io::Write;

use carlitz::Check;
use serde::Serialize;

use crate::config::RunConfig;

/// Bumped whenever a field is renamed, removed or changes meaning.
pub const SCHEMA: &str = "carlitz-report/1";

/// A computed quantity that is reported but not itself a verdict.
#[derive(Clone, Debug, Serialize)]
pub struct Value {
    pub name: String,
    pub inputs: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    #[serde(flatten)]
    pub check: Check,
    /// Wall time of the computation that produced the check; only with `--timings`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<f64>,
}

#[derive(Clone, Debug, Default)]
pub struct Output {
    pub values: Vec<Value>,
    pub records: Vec<Record>,
}

impl Output {
    pub fn value(&mut self, name: &str, inputs: impl Into<String>, value: impl ToString) {
        self.values.push(Value { name: name.into(), inputs: inputs.into(), value: value.to_string() });
    }
    pub fn check(&mut self, check: Check) {
        self.records.push(Record { check, runtime_ms: None });
    }
    pub fn checks(&mut self, report: carlitz::Report) {
        report.checks.into_iter().for_each(|c| self.check(c));
    }
    pub fn append(&mut self, other: Output) {
        self.values.extend(other.values);
        self.records.extend(other.records);
    }
    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.check.pass)
    }
}

#[derive(Serialize)]
struct Summary {
    checks: usize,
    passed: usize,
    failed: usize,
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema: &'static str,
    config: &'a RunConfig,
    summary: Summary,
    values: &'a [Value],
    checks: &'a [Record],
}

pub fn write_json(w: &mut impl Write, config: &RunConfig, out: &Output) -> std::io::Result<()> {
    let passed = out.records.iter().filter(|r| r.check.pass).count();
    let env = Envelope {
        schema: SCHEMA,
        config,
        summary: Summary { checks: out.records.len(), passed, failed: out.records.len() - passed },
        values: &out.values,
        checks: &out.records,
    };
    serde_json::to_writer_pretty(&mut *w, &env)?;
    writeln!(w)
}

#[derive(Serialize)]
struct Row<'a> {
    kind: &'static str,
    name: &'a str,
    inputs: &'a str,
    expected: &'a str,
    computed: &'a str,
    pass: Option<bool>,
    runtime_ms: Option<f64>,
}

/// One row per value and per check; the schema tag is the first row.
pub fn write_csv(w: &mut impl Write, out: &Output) -> std::io::Result<()> {
    let mut csv = csv::Writer::from_writer(w);
    let tag = Row { kind: "schema", name: SCHEMA, inputs: "", expected: "", computed: "", pass: None, runtime_ms: None };
    csv.serialize(tag)?;
    for v in &out.values {
        csv.serialize(Row {
            kind: "value",
            name: &v.name,
            inputs: &v.inputs,
            expected: "",
            computed: &v.value,
            pass: None,
            runtime_ms: None,
        })?;
    }
    for r in &out.records {
        let c = &r.check;
        csv.serialize(Row {
            kind: "check",
            name: &c.name,
            inputs: &c.inputs,
            expected: &c.expected,
            computed: &c.computed,
            pass: Some(c.pass),
            runtime_ms: r.runtime_ms,
        })?;
    }
    csv.flush()
}
