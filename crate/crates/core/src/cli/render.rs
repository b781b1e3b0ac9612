use std::fmt::Write;

use super::{json, num, OutputFormat};
use crate::certify::{Certificate, RootEnclosure};
use crate::expr::{Interval, Jet2};
use crate::solve::{IterationTrace, Method, Termination};

fn sci(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        "nan".to_string()
    }
}

fn termination_line(t: &Termination) -> String {
    match t {
        Termination::CycleDetected { period, points } => {
            let pts: Vec<String> = points.iter().map(|p| num(*p)).collect();
            format!("CycleDetected (period {period}: {})", pts.join(", "))
        }
        Termination::DomainError(msg) => format!("DomainError ({msg})"),
        other => other.kind().to_string(),
    }
}

/// Renders a trace. JSON and CSV are meant for scripts and plotting, the
/// table for reading. Output depends only on the trace.
pub fn emit_trace(trace: &IterationTrace, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => json(trace),
        OutputFormat::Csv => {
            let mut s = String::from("n,x,f\n");
            for (n, (x, r)) in trace.iterates.iter().zip(&trace.residuals).enumerate() {
                writeln!(s, "{n},{},{}", num(*x), num(*r)).unwrap();
            }
            s
        }
        OutputFormat::Table => {
            let residual = match trace.method {
                Method::Newton => "f(x)",
                Method::MeanIterate => "g(x)-x",
            };
            let mut s = format!("{:>4}  {:>24}  {:>24}\n", "n", "x", residual);
            for (n, (x, r)) in trace.iterates.iter().zip(&trace.residuals).enumerate() {
                writeln!(s, "{n:>4}  {:>24}  {:>24}", sci(*x), sci(*r)).unwrap();
            }
            writeln!(
                s,
                "# {} after {} iterations, final x = {}",
                termination_line(&trace.termination),
                trace.iterations,
                num(trace.final_x)
            )
            .unwrap();
            s
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn emit_certificate(cert: &Certificate, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => json(cert),
        OutputFormat::Csv => {
            let mut s = String::from("name,statement,relation,verdict,witness\n");
            for c in &cert.conditions {
                writeln!(
                    s,
                    "{},{},{},{:?},{}",
                    c.name,
                    csv_field(&c.statement),
                    c.relation.symbol(),
                    c.verdict,
                    c.witness.map(num).unwrap_or_default()
                )
                .unwrap();
            }
            s
        }
        OutputFormat::Table => {
            let mut s = format!(
                "{:?} ({:?} side) on [{}, {}]: {:?}\n",
                cert.theorem,
                cert.side,
                num(cert.interval.lo()),
                num(cert.interval.hi()),
                cert.verdict
            );
            for c in &cert.conditions {
                write!(s, "  {:<3} {:<16} {:?}", c.name, c.statement, c.verdict).unwrap();
                if let Some(w) = c.witness {
                    write!(s, " (witness x = {})", num(w)).unwrap();
                }
                s.push('\n');
            }
            writeln!(
                s,
                "  root in [{}, {}], blind spot width {}, {} leaves",
                num(cert.root.lo()),
                num(cert.root.hi()),
                num(cert.blind_spot_width),
                cert.effort
            )
            .unwrap();
            s
        }
    }
}

pub(super) fn root(root: &RootEnclosure, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => json(root),
        OutputFormat::Csv => format!(
            "lo,hi,sign_left,sign_right,width\n{},{},{},{},{}\n",
            num(root.lo()),
            num(root.hi()),
            root.sign_left,
            root.sign_right,
            num(root.width)
        ),
        OutputFormat::Table => format!(
            "root in [{}, {}] (width {}, signs {:+} / {:+})\n",
            num(root.lo()),
            num(root.hi()),
            num(root.width),
            root.sign_left,
            root.sign_right
        ),
    }
}

pub(super) fn jet(x: f64, jet: &Jet2, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            json(&serde_json::json!({"x": x, "value": jet.value, "d1": jet.d1, "d2": jet.d2}))
        }
        OutputFormat::Csv => {
            format!("x,value,d1,d2\n{},{},{},{}\n", num(x), num(jet.value), num(jet.d1), num(jet.d2))
        }
        OutputFormat::Table => format!(
            "f({x})   = {}\nf'({x})  = {}\nf''({x}) = {}\n",
            num(jet.value),
            num(jet.d1),
            num(jet.d2),
            x = num(x)
        ),
    }
}

pub(super) fn enclosure(iv: Interval, enc: Interval, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => json(&serde_json::json!({"interval": iv, "enclosure": enc})),
        OutputFormat::Csv => format!(
            "lo,hi,f_lo,f_hi\n{},{},{},{}\n",
            num(iv.lo()),
            num(iv.hi()),
            num(enc.lo()),
            num(enc.hi())
        ),
        OutputFormat::Table => format!(
            "f([{}, {}]) within [{}, {}]\n",
            num(iv.lo()),
            num(iv.hi()),
            num(enc.lo()),
            num(enc.hi())
        ),
    }
}
