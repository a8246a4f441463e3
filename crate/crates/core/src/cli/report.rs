//! Report rendering: aligned text tables, CSV and JSON.
//!
//! Table output rounds for display only. CSV and JSON carry every number
//! at full precision regardless of `--digits`.

use std::io::Write;

use serde_json::{json, Value};

use super::format::{format_sig, full};
use super::{io_err, CliError, OutputFormat, EXIT_OK, EXIT_PARTIAL};
use crate::mc::CoverageReport;
use crate::normality::JarqueBeraResult;
use crate::onesample::{ConfidenceInterval, Target};

const RULE: &str = "======================";

pub(super) struct Row {
    pub label: &'static str,
    pub alpha: f64,
    pub outcome: crate::Result<ConfidenceInterval>,
    pub df: Option<f64>,
    pub compat: bool,
}

impl Row {
    pub fn new(label: &'static str, alpha: f64, outcome: crate::Result<ConfidenceInterval>) -> Self {
        Row {
            label,
            alpha,
            outcome,
            df: None,
            compat: false,
        }
    }

    pub fn with_df(mut self, df: f64) -> Self {
        self.df = Some(df);
        self
    }

    pub fn compat(mut self) -> Self {
        self.compat = true;
        self
    }

    fn status(&self) -> &'static str {
        match &self.outcome {
            Ok(ci) if ci.truncated_at_zero => "truncated",
            Ok(_) => "ok",
            Err(_) => "inapplicable",
        }
    }

    fn markers(&self, digits: usize) -> String {
        let mut tokens = Vec::new();
        match &self.outcome {
            Ok(ci) if ci.truncated_at_zero => tokens.push(format!(
                "[truncated-at-zero raw-lower={}]",
                format_sig(ci.raw_lower, digits)
            )),
            Ok(_) => {}
            Err(e) => tokens.push(format!("[inapplicable: {e}]")),
        }
        if let Some(df) = self.df {
            tokens.push(format!("df={}", format_sig(df, digits.max(4))));
        }
        if self.compat {
            tokens.push("[r-code]".into());
        }
        tokens.join(" ")
    }
}

pub(super) struct Section {
    pub title: &'static str,
    pub target: Target,
    pub rows: Vec<Row>,
}

fn any_inapplicable(sections: &[Section]) -> bool {
    sections.iter().flat_map(|s| &s.rows).any(|r| r.outcome.is_err())
}

pub(super) fn emit(
    sections: &[Section],
    extras: &[(&str, f64)],
    format: OutputFormat,
    digits: usize,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    match format {
        OutputFormat::Table => write_table(sections, extras, digits, out),
        OutputFormat::Csv => write_csv(sections, out),
        OutputFormat::Json => write_json(sections, extras, out),
    }
    .map_err(io_err)?;
    Ok(if any_inapplicable(sections) {
        EXIT_PARTIAL
    } else {
        EXIT_OK
    })
}

fn write_table(
    sections: &[Section],
    extras: &[(&str, f64)],
    digits: usize,
    out: &mut dyn Write,
) -> std::io::Result<()> {
    let label_w = sections
        .iter()
        .flat_map(|s| &s.rows)
        .map(|r| r.label.len())
        .max()
        .unwrap_or(0)
        + 2;
    for section in sections {
        writeln!(out, "{RULE}")?;
        writeln!(out, "{}", section.title)?;
        writeln!(
            out,
            "{:<label_w$}{:>14}{:>8}{:>14}{:>14}",
            "", "estimate", "alpha", "lower", "upper"
        )?;
        for row in &section.rows {
            let (est, lo, hi) = match &row.outcome {
                Ok(ci) => (
                    format_sig(ci.point, digits),
                    format_sig(ci.lower, digits),
                    format_sig(ci.upper, digits),
                ),
                Err(_) => ("-".into(), "-".into(), "-".into()),
            };
            let line = format!(
                "{:<label_w$}{:>14}{:>8}{:>14}{:>14}  {}",
                row.label,
                est,
                format_sig(row.alpha, digits),
                lo,
                hi,
                row.markers(digits)
            );
            writeln!(out, "{}", line.trim_end())?;
        }
    }
    for (name, value) in extras {
        writeln!(out, "{RULE}")?;
        writeln!(out, "{name}: {}", format_sig(*value, digits.max(4)))?;
    }
    Ok(())
}

fn opt(x: Option<f64>) -> String {
    x.map(full).unwrap_or_default()
}

fn write_csv(sections: &[Section], out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(
        out,
        "target,method,alpha,estimate,lower,upper,raw_lower,df,status,compat"
    )?;
    for section in sections {
        for row in &section.rows {
            let ci = row.outcome.as_ref().ok();
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                section.target,
                row.label,
                full(row.alpha),
                opt(ci.map(|c| c.point)),
                opt(ci.map(|c| c.lower)),
                opt(ci.map(|c| c.upper)),
                opt(ci.map(|c| c.raw_lower)),
                opt(row.df),
                row.status(),
                row.compat
            )?;
        }
    }
    Ok(())
}

fn write_json(
    sections: &[Section],
    extras: &[(&str, f64)],
    out: &mut dyn Write,
) -> std::io::Result<()> {
    let mut rows = Vec::new();
    for section in sections {
        for row in &section.rows {
            let mut v = json!({
                "target": section.target.to_string(),
                "method": row.label,
                "alpha": row.alpha,
                "status": row.status(),
                "compat": row.compat,
            });
            match &row.outcome {
                Ok(ci) => {
                    v["estimate"] = json!(ci.point);
                    v["lower"] = json!(ci.lower);
                    v["upper"] = json!(ci.upper);
                    v["raw_lower"] = json!(ci.raw_lower);
                }
                Err(e) => v["reason"] = json!(e.to_string()),
            }
            if let Some(df) = row.df {
                v["df"] = json!(df);
            }
            rows.push(v);
        }
    }
    let mut doc = json!({ "intervals": rows });
    for (name, value) in extras {
        doc[*name] = json!(value);
    }
    writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable"))
}

pub(super) fn emit_jb(
    jb: &JarqueBeraResult,
    level: f64,
    format: OutputFormat,
    digits: usize,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let accepted = jb.accepts_normality(level);
    let verdict = if accepted { "accepted" } else { "rejected" };
    match format {
        OutputFormat::Table => {
            writeln!(out, "n: {}", jb.n)
                .and_then(|_| writeln!(out, "skewness: {}", format_sig(jb.skewness, digits)))
                .and_then(|_| writeln!(out, "kurtosis: {}", format_sig(jb.kurtosis, digits)))
                .and_then(|_| {
                    writeln!(out, "Jarque Berra Statistic: {}", format_sig(jb.statistic, digits))
                })
                .and_then(|_| {
                    writeln!(out, "p-value: {} %", format_sig(100.0 * jb.p_value, digits))
                })
                .and_then(|_| {
                    writeln!(
                        out,
                        "normality {verdict} at level {}%",
                        format_sig(100.0 * level, digits)
                    )
                })
        }
        OutputFormat::Csv => writeln!(out, "n,skewness,kurtosis,statistic,p_value,level,normality")
            .and_then(|_| {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{verdict}",
                    jb.n,
                    full(jb.skewness),
                    full(jb.kurtosis),
                    full(jb.statistic),
                    full(jb.p_value),
                    full(level)
                )
            }),
        OutputFormat::Json => {
            let doc = json!({
                "n": jb.n,
                "skewness": jb.skewness,
                "kurtosis": jb.kurtosis,
                "statistic": jb.statistic,
                "p_value": jb.p_value,
                "level": level,
                "normality": verdict,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable"))
        }
    }
    .map_err(io_err)
}

pub(super) fn coverage_csv(reports: &[CoverageReport]) -> String {
    let mut csv = String::from(
        "scenario,target,method,generator,generator2,n1,n2,alpha,replications,seed,true_value,\
         applicable,failures,truncated,coverage,mean_width,width_std,mean_lower,mean_upper\n",
    );
    for r in reports {
        let c = &r.config;
        let g2 = if c.is_two_sample() {
            c.second_generator().to_string()
        } else {
            String::new()
        };
        for m in &r.methods {
            csv.push_str(&format!(
                "{},{},{},\"{}\",\"{}\",{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                c.name,
                c.target,
                m.label,
                c.generator,
                g2,
                c.n1,
                c.n2.map(|n| n.to_string()).unwrap_or_default(),
                full(c.alpha),
                r.replications_run,
                r.seed,
                opt(r.true_value),
                m.applicable,
                m.failures,
                m.truncated,
                opt(m.coverage),
                full(m.mean_width),
                full(m.width_std),
                full(m.mean_lower),
                full(m.mean_upper),
            ));
        }
    }
    csv
}

pub(super) fn coverage_table(
    reports: &[CoverageReport],
    digits: usize,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let mut write = || -> std::io::Result<()> {
        for r in reports {
            let c = &r.config;
            writeln!(out, "{RULE}")?;
            let mut header = format!(
                "scenario {}: target={} generator={} n1={}",
                c.name, c.target, c.generator, c.n1
            );
            if c.is_two_sample() {
                header.push_str(&format!(
                    " generator2={} n2={}",
                    c.second_generator(),
                    c.n2.unwrap_or_default()
                ));
            }
            header.push_str(&format!(
                " alpha={} reps={} seed={}",
                full(c.alpha),
                r.replications_run,
                r.seed
            ));
            if let Some(t) = r.true_value {
                header.push_str(&format!(" true={}", format_sig(t, digits)));
            }
            writeln!(out, "{header}")?;
            writeln!(
                out,
                "{:<10}{:>10}{:>14}{:>14}{:>14}{:>14}{:>10}{:>10}",
                "method", "coverage", "mean lower", "mean upper", "mean width", "width sd", "failures", "truncated"
            )?;
            for m in &r.methods {
                writeln!(
                    out,
                    "{:<10}{:>10}{:>14}{:>14}{:>14}{:>14}{:>10}{:>10}",
                    m.label,
                    m.coverage.map(|v| format_sig(v, digits)).unwrap_or_else(|| "-".into()),
                    format_sig(m.mean_lower, digits),
                    format_sig(m.mean_upper, digits),
                    format_sig(m.mean_width, digits),
                    format_sig(m.width_std, digits),
                    m.failures,
                    m.truncated
                )?;
            }
        }
        Ok(())
    };
    write().map_err(io_err)
}

pub(super) fn coverage_json(reports: &[CoverageReport], out: &mut dyn Write) -> Result<(), CliError> {
    let docs: Vec<Value> = reports
        .iter()
        .map(|r| {
            let c = &r.config;
            json!({
                "scenario": c.name,
                "target": c.target.to_string(),
                "generator": c.generator.to_string(),
                "generator2": c.is_two_sample().then(|| c.second_generator().to_string()),
                "n1": c.n1,
                "n2": c.n2,
                "alpha": c.alpha,
                "replications": r.replications_run,
                "seed": r.seed,
                "true_value": r.true_value,
                "methods": r.methods.iter().map(|m| json!({
                    "method": m.label,
                    "applicable": m.applicable,
                    "failures": m.failures,
                    "truncated": m.truncated,
                    "coverage": m.coverage,
                    "mean_width": m.mean_width,
                    "width_std": m.width_std,
                    "mean_lower": m.mean_lower,
                    "mean_upper": m.mean_upper,
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    writeln!(out, "{}", serde_json::to_string_pretty(&docs).expect("serializable")).map_err(io_err)
}
