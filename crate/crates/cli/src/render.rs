//! JSON and CSV layouts for every command.
//!
//! Matrix CSV is one row per entry with header `row,col,exact,re,im`, indices
//! 0-based in the `f_l` basis order; the `exact` column is empty unless
//! `--exact` was given.

use std::io::Write;

use eposic::channels::{ChannelReport, EposicChannel};
use eposic::clebsch::{CgIndex, EpsilonTable};
use eposic::covariant::{CovariantClass, CovariantDecomposition, PositivityVerdict};
use eposic::scalar::ExactScalar;
use eposic::space::{LinOp, SpaceLabel};
use serde::Serialize;

use crate::selftest::SelftestReport;
use crate::{rational_string, CliError, Format};

pub struct Renderer {
    pub format: Format,
    pub digits: u8,
}

/// A CSV body: header plus rows of already formatted cells.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct Entry {
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<String>,
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct Matrix {
    domain: SpaceLabel,
    codomain: SpaceLabel,
    entries: Vec<Vec<Entry>>,
}

#[derive(Serialize)]
struct Indexed<T: Serialize> {
    index: CgIndex,
    #[serde(flatten)]
    body: T,
}

#[derive(Serialize)]
struct Lambda {
    l: u32,
    channel: CgIndex,
    exact: String,
    float: f64,
}

impl Renderer {
    /// Rounds to `digits` significant digits; 17 is lossless.
    fn float(&self, x: f64) -> f64 {
        if self.digits >= 17 || x == 0.0 || !x.is_finite() {
            return x;
        }
        format!("{:.*e}", self.digits as usize - 1, x).parse().expect("formatted float")
    }

    fn matrix(&self, a: &LinOp, exact: bool) -> Matrix {
        let entries = (0..a.rows())
            .map(|i| (0..a.cols()).map(|j| self.entry(a.get(i, j), exact)).collect())
            .collect();
        Matrix { domain: a.domain().clone(), codomain: a.codomain().clone(), entries }
    }

    fn entry(&self, x: &ExactScalar, exact: bool) -> Entry {
        let z = x.to_complex();
        Entry { exact: exact.then(|| x.to_string()), re: self.float(z.re), im: self.float(z.im) }
    }

    fn matrix_rows(&self, a: &LinOp, exact: bool, prefix: &[String]) -> Vec<Vec<String>> {
        let mut rows = Vec::with_capacity(a.rows() * a.cols());
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                let e = self.entry(a.get(i, j), exact);
                let mut row = prefix.to_vec();
                row.extend([i.to_string(), j.to_string(), e.exact.unwrap_or_default(), e.re.to_string(), e.im.to_string()]);
                rows.push(row);
            }
        }
        rows
    }

    fn emit<T: Serialize>(&self, out: &mut dyn Write, json: &T, csv: impl FnOnce() -> Table) -> Result<(), CliError> {
        match self.format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, json).map_err(std::io::Error::from)?;
                writeln!(out)?;
            }
            Format::Csv => {
                let table = csv();
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&table.header)?;
                for row in &table.rows {
                    w.write_record(row)?;
                }
                w.flush()?;
            }
        }
        Ok(())
    }

    pub fn kraus(&self, out: &mut dyn Write, ix: CgIndex, ops: &[LinOp], exact: bool) -> Result<(), CliError> {
        #[derive(Serialize)]
        struct Body {
            operators: Vec<Matrix>,
        }
        let json = Indexed { index: ix, body: Body { operators: ops.iter().map(|t| self.matrix(t, exact)).collect() } };
        self.emit(out, &json, || Table {
            header: vec!["j", "row", "col", "exact", "re", "im"],
            rows: ops.iter().enumerate().flat_map(|(j, t)| self.matrix_rows(t, exact, &[j.to_string()])).collect(),
        })
    }

    pub fn choi(&self, out: &mut dyn Write, ix: CgIndex, c: &LinOp, exact: bool) -> Result<(), CliError> {
        #[derive(Serialize)]
        struct Body {
            trace: String,
            #[serde(flatten)]
            matrix: Matrix,
        }
        let json = Indexed { index: ix, body: Body { trace: c.trace().to_string(), matrix: self.matrix(c, exact) } };
        self.emit(out, &json, || Table { header: vec!["row", "col", "exact", "re", "im"], rows: self.matrix_rows(c, exact, &[]) })
    }

    pub fn alpha(&self, out: &mut dyn Write, ix: CgIndex, a: &LinOp, exact: bool) -> Result<(), CliError> {
        let json = Indexed { index: ix, body: self.matrix(a, exact) };
        self.emit(out, &json, || Table { header: vec!["row", "col", "exact", "re", "im"], rows: self.matrix_rows(a, exact, &[]) })
    }

    pub fn epsilon(&self, out: &mut dyn Write, t: &EpsilonTable, exact: bool) -> Result<(), CliError> {
        #[derive(Serialize)]
        struct Value {
            i: u32,
            j: u32,
            #[serde(skip_serializing_if = "Option::is_none")]
            exact: Option<String>,
            float: f64,
        }
        #[derive(Serialize)]
        struct Body {
            values: Vec<Value>,
        }
        let values: Vec<Value> = t
            .iter()
            .map(|(i, j, v)| Value { i, j, exact: exact.then(|| v.to_string()), float: self.float(v.to_f64()) })
            .collect();
        let rows = values
            .iter()
            .map(|v| vec![v.i.to_string(), v.j.to_string(), v.exact.clone().unwrap_or_default(), v.float.to_string()])
            .collect();
        let json = Indexed { index: t.index(), body: Body { values } };
        self.emit(out, &json, || Table { header: vec!["i", "j", "exact", "float"], rows })
    }

    pub fn enumerate(&self, out: &mut dyn Write, r: u32, m: u32, ec: &[EposicChannel]) -> Result<(), CliError> {
        #[derive(Serialize)]
        struct Body {
            r: u32,
            m: u32,
            channels: Vec<CgIndex>,
        }
        let channels: Vec<CgIndex> = ec.iter().map(EposicChannel::index).collect();
        let rows = channels.iter().map(|ix| [ix.m(), ix.n(), ix.h(), ix.r()].map(|x| x.to_string()).to_vec()).collect();
        self.emit(out, &Body { r, m, channels }, || Table { header: vec!["m", "n", "h", "r"], rows })
    }

    pub fn verify(
        &self,
        out: &mut dyn Write,
        index: Option<CgIndex>,
        report: &ChannelReport,
        checks: &[(&'static str, bool)],
    ) -> Result<(), CliError> {
        #[derive(Serialize)]
        struct Body<'a> {
            #[serde(skip_serializing_if = "Option::is_none")]
            index: Option<CgIndex>,
            passed: bool,
            checks: std::collections::BTreeMap<&'static str, bool>,
            report: &'a ChannelReport,
        }
        let passed = checks.iter().all(|&(_, ok)| ok);
        let mut report = report.clone();
        report.min_eigenvalue = self.float(report.min_eigenvalue);
        let json = Body { index, passed, checks: checks.iter().cloned().collect(), report: &report };
        self.emit(out, &json, || Table {
            header: vec!["check", "passed"],
            rows: checks.iter().map(|(name, ok)| vec![name.to_string(), ok.to_string()]).collect(),
        })
    }

    pub fn decomposition(
        &self,
        out: &mut dyn Write,
        d: &CovariantDecomposition,
        class: Option<(CovariantClass, bool)>,
    ) -> Result<(), CliError> {
        #[derive(Serialize)]
        struct Body {
            #[serde(skip_serializing_if = "Option::is_none")]
            class: Option<CovariantClass>,
            #[serde(skip_serializing_if = "Option::is_none")]
            extreme: Option<bool>,
            r: u32,
            m: u32,
            covariant: bool,
            residual_norm_sq: String,
            lambdas: Vec<Lambda>,
        }
        let lambdas: Vec<Lambda> = d
            .lambdas
            .iter()
            .enumerate()
            .map(|(l, x)| Lambda { l: l as u32, channel: d.channel_index(l as u32), exact: x.to_string(), float: self.float(x.to_f64()) })
            .collect();
        let class_name = class.map(|(c, _)| serde_json::to_value(c).expect("enum").as_str().unwrap_or_default().to_string());
        let rows = lambdas
            .iter()
            .map(|x| {
                let mut row = Vec::new();
                if let (Some(name), Some((_, extreme))) = (&class_name, class) {
                    row.extend([name.clone(), extreme.to_string()]);
                }
                row.extend([x.l.to_string(), x.channel.m().to_string(), x.channel.n().to_string(), x.channel.h().to_string()]);
                row.extend([x.exact.clone(), x.float.to_string()]);
                row
            })
            .collect();
        let header = match class {
            Some(_) => vec!["class", "extreme", "l", "m", "n", "h", "exact", "float"],
            None => vec!["l", "m", "n", "h", "exact", "float"],
        };
        let json = Body {
            class: class.map(|(c, _)| c),
            extreme: class.map(|(_, e)| e),
            r: d.r,
            m: d.m,
            covariant: d.is_covariant(),
            residual_norm_sq: d.residual_norm_sq.to_string(),
            lambdas,
        };
        self.emit(out, &json, || Table { header, rows })
    }

    pub fn positivity(&self, out: &mut dyn Write, v: &PositivityVerdict) -> Result<(), CliError> {
        #[derive(Serialize)]
        struct Diagonal {
            /// 1-based index of `E_{kk}`.
            e_index: usize,
            f_index: usize,
            exact: String,
            float: f64,
        }
        #[derive(Serialize)]
        struct Body {
            m: u32,
            alpha: String,
            threshold: String,
            is_positive: bool,
            is_cp: bool,
            not_n_positive_for_n_gt_1: bool,
            diagonal: Vec<Diagonal>,
            witness_eigenvalue: Option<String>,
            witness_vector: Option<Vec<String>>,
        }
        let json = Body {
            m: v.m,
            alpha: rational_string(&v.alpha),
            threshold: rational_string(&v.threshold),
            is_positive: v.is_positive,
            is_cp: v.is_cp,
            not_n_positive_for_n_gt_1: v.not_n_positive_for_n_gt_1,
            diagonal: v
                .diagonal
                .iter()
                .enumerate()
                .map(|(p, x)| Diagonal { e_index: p + 1, f_index: p, exact: x.to_string(), float: self.float(x.to_f64()) })
                .collect(),
            witness_eigenvalue: v.witness.as_ref().map(|(e, _)| e.to_string()),
            witness_vector: v.witness.as_ref().map(|(_, w)| w.coeffs.iter().map(ExactScalar::to_string).collect()),
        };
        let mut rows = vec![
            vec!["m".into(), json.m.to_string()],
            vec!["alpha".into(), json.alpha.clone()],
            vec!["threshold".into(), json.threshold.clone()],
            vec!["is_positive".into(), json.is_positive.to_string()],
            vec!["is_cp".into(), json.is_cp.to_string()],
            vec!["not_n_positive_for_n_gt_1".into(), json.not_n_positive_for_n_gt_1.to_string()],
            vec!["witness_eigenvalue".into(), json.witness_eigenvalue.clone().unwrap_or_default()],
        ];
        rows.extend(json.diagonal.iter().map(|d| vec![format!("diagonal_{}", d.e_index), d.exact.clone()]));
        self.emit(out, &json, || Table { header: vec!["field", "value"], rows })
    }

    pub fn selftest(&self, out: &mut dyn Write, report: &SelftestReport) -> Result<(), CliError> {
        self.emit(out, report, || Table {
            header: vec!["name", "checked", "failed", "detail"],
            rows: report
                .results
                .iter()
                .map(|r| vec![r.name.to_string(), r.checked.to_string(), r.failed.to_string(), r.detail.clone().unwrap_or_default()])
                .collect(),
        })
    }
}
